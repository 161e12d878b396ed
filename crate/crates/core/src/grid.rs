//! Parameter grids over Kneser-type families and per-cell verification records.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chromatic::{solve, SolverOptions};
use crate::defect::colorability_defect;
use crate::error::{Error, Result};
use crate::kneser::{afl_formula, build_kneser};
use crate::setsystem::{
    filter_almost_2_stable, filter_s_stable, filter_transversal, k_subsets, GroundPartition, SetSystem,
};

/// Which subfamily of the `k`-subsets a cell uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Plain,
    SStable,
    AlmostStable,
    /// Transversal sets for the partition of `[n]` into runs of `r - 1` consecutive elements.
    Transversal,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plain => "plain",
            Variant::SStable => "s-stable",
            Variant::AlmostStable => "almost-stable",
            Variant::Transversal => "transversal",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "plain" => Ok(Variant::Plain),
            "s-stable" | "stable" => Ok(Variant::SStable),
            "almost-stable" => Ok(Variant::AlmostStable),
            "transversal" => Ok(Variant::Transversal),
            _ => Err(Error::Parse(format!(
                "unknown variant {s:?}; expected plain, s-stable, almost-stable or transversal"
            ))),
        }
    }
}

/// The subfamily of `k_subsets(n, k)` selected by `variant`.
pub fn variant_family(r: usize, k: usize, n: usize, s: usize, variant: Variant) -> Result<SetSystem> {
    let all = k_subsets(n, k)?;
    match variant {
        Variant::Plain => Ok(all),
        Variant::SStable => filter_s_stable(&all, s),
        Variant::AlmostStable => Ok(filter_almost_2_stable(&all)),
        Variant::Transversal => filter_transversal(&all, &GroundPartition::consecutive(n, r - 1)?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r: Vec<usize>,
    pub k: Vec<usize>,
    pub n: Vec<usize>,
    pub s: Vec<usize>,
    pub variant: Variant,
}

/// One grid cell: `(r, k, n, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub s: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("r", &self.r), ("k", &self.k), ("n", &self.n), ("s", &self.s)] {
            if v.is_empty() {
                return Err(Error::InvalidRange(format!("{name} range is empty")));
            }
        }
        Ok(())
    }

    /// Cells with `n >= rk`, in lexicographic `(r, k, n, s)` order.
    ///
    /// The `s` range only matters for the s-stable variant; other variants use its first entry.
    pub fn cells(&self) -> Vec<Cell> {
        let svals: &[usize] = if self.variant == Variant::SStable {
            &self.s
        } else {
            &self.s[..self.s.len().min(1)]
        };
        let mut out = Vec::new();
        for &r in &self.r {
            for &k in &self.k {
                for &n in &self.n {
                    if r < 2 || k < 1 || n < r * k {
                        continue;
                    }
                    for &s in svals {
                        out.push(Cell { r, k, n, s });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    SkippedBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::SkippedBudget => "skipped-budget",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub s: usize,
    pub variant: Variant,
    pub vertices: usize,
    pub hyperedges: usize,
    pub formula: usize,
    pub chi: Option<usize>,
    /// Colorability defect of the family actually used; `None` past the defect search cap.
    pub cd: Option<usize>,
    pub kriz: Option<usize>,
    pub status: Status,
    pub millis: u128,
}

/// CSV header; the column order is part of the report format.
pub const CSV_COLUMNS: [&str; 13] = [
    "r", "k", "n", "s", "variant", "vertices", "hyperedges", "formula", "chi", "cd", "kriz", "status", "millis",
];

impl VerificationRecord {
    pub fn csv_header() -> String {
        CSV_COLUMNS.join(",")
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.r,
            self.k,
            self.n,
            self.s,
            self.variant,
            self.vertices,
            self.hyperedges,
            self.formula,
            opt(self.chi),
            opt(self.cd),
            opt(self.kriz),
            self.status,
            self.millis
        )
    }
}

/// Build the cell's hypergraph, solve it exactly and compare with the closed formula.
pub fn run_cell(cell: Cell, variant: Variant, budget: u64) -> Result<VerificationRecord> {
    let start = Instant::now();
    let Cell { r, k, n, s } = cell;
    let formula = afl_formula(r, k, n)?;
    let family = variant_family(r, k, n, s, variant)?;
    let h = build_kneser(&family, r)?;
    let cd = colorability_defect(&family, r).ok().map(|w| w.value);
    let kriz = cd.map(|c| c.div_ceil(r - 1));
    let opts = SolverOptions {
        budget,
        lower_bound: None,
    };
    let (chi, status) = match solve(&h, &opts) {
        Ok(res) if res.chi == formula => (Some(res.chi), Status::Match),
        Ok(res) => (Some(res.chi), Status::Mismatch),
        Err(Error::BudgetExceeded { .. }) => (None, Status::SkippedBudget),
        Err(e) => return Err(e),
    };
    Ok(VerificationRecord {
        r,
        k,
        n,
        s,
        variant,
        vertices: h.num_vertices(),
        hyperedges: h.hyperedges().len(),
        formula,
        chi,
        cd,
        kriz,
        status,
        millis: start.elapsed().as_millis(),
    })
}

/// Run every cell of `spec`; records come back in cell order.
pub fn run_grid(spec: &GridSpec, budget: u64) -> Result<Vec<VerificationRecord>> {
    spec.validate()?;
    spec.cells()
        .into_par_iter()
        .map(|cell| run_cell(cell, spec.variant, budget))
        .collect()
}
