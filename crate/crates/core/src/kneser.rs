//! Generalized Kneser hypergraphs, weak colorings and the closed-form bounds.

use serde::{Deserialize, Serialize};

use crate::defect::colorability_defect;
use crate::error::{Error, Result};
use crate::setsystem::{k_subsets, mask_to_elements, Mask, SetSystem};

/// An `r`-uniform hypergraph on vertices `0..num_vertices`.
///
/// Hyperedges are strictly increasing `r`-tuples, stored sorted and
/// deduplicated. Kneser hypergraphs keep the originating sets as labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    num_vertices: usize,
    r: usize,
    hyperedges: Vec<Vec<usize>>,
    labels: Option<Vec<Mask>>,
}

impl Hypergraph {
    pub fn new(num_vertices: usize, r: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity must be >= 2, got {r}")));
        }
        let mut edges = Vec::with_capacity(hyperedges.len());
        for mut e in hyperedges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::InvalidHypergraph(format!("{e:?} does not have {r} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!("{e:?} repeats a vertex")));
            }
            if e.iter().any(|&v| v >= num_vertices) {
                return Err(Error::InvalidHypergraph(format!(
                    "{e:?} uses a vertex outside 0..{num_vertices}"
                )));
            }
            edges.push(e);
        }
        edges.sort();
        edges.dedup();
        Ok(Hypergraph {
            num_vertices,
            r,
            hyperedges: edges,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Mask>) -> Result<Self> {
        if labels.len() != self.num_vertices {
            return Err(Error::InvalidHypergraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.num_vertices
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Complete `r`-uniform hypergraph on `n` vertices.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        let edges = crate::setsystem::k_masks(n, r)
            .map(|m| mask_to_elements(m).into_iter().map(|v| v - 1).collect())
            .collect();
        Hypergraph::new(n, r, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    pub fn labels(&self) -> Option<&[Mask]> {
        self.labels.as_deref()
    }

    /// Hyperedges incident to each vertex, as indices into [`Self::hyperedges`].
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.hyperedges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Subhypergraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Hypergraph> {
        let mut index = vec![usize::MAX; self.num_vertices];
        for (new, &old) in vertices.iter().enumerate() {
            if old >= self.num_vertices {
                return Err(Error::InvalidHypergraph(format!("vertex {old} out of range")));
            }
            if index[old] != usize::MAX {
                return Err(Error::InvalidHypergraph(format!("vertex {old} listed twice")));
            }
            index[old] = new;
        }
        let edges = self
            .hyperedges
            .iter()
            .filter(|e| e.iter().all(|&v| index[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| index[v]).collect())
            .collect();
        let h = Hypergraph::new(vertices.len(), self.r, edges)?;
        match &self.labels {
            Some(l) => h.with_labels(vertices.iter().map(|&v| l[v]).collect()),
            None => Ok(h),
        }
    }

    /// Apply a vertex permutation: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        if perm.len() != self.num_vertices {
            return Err(Error::InvalidHypergraph("permutation has the wrong length".into()));
        }
        let edges = self
            .hyperedges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        let h = Hypergraph::new(self.num_vertices, self.r, edges)?;
        match &self.labels {
            Some(l) => {
                let mut nl = vec![0; l.len()];
                for (old, &new) in perm.iter().enumerate() {
                    nl[new] = l[old];
                }
                h.with_labels(nl)
            }
            None => Ok(h),
        }
    }
}

/// Assignment of a color in `1..=c` to every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn restrict(&self, vertices: &[usize]) -> Coloring {
        Coloring::new(vertices.iter().map(|&v| self.colors[v]).collect())
    }
}

/// Kneser hypergraph `KG^r(F)`: members of `F` as vertices, `r` pairwise
/// disjoint members as hyperedges.
pub fn build_kneser(family: &SetSystem, r: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::InvalidRange(format!("uniformity must be >= 2, got {r}")));
    }
    let sets = family.sets();
    let mut edges = Vec::new();
    let mut stack = Vec::with_capacity(r);
    disjoint_tuples(sets, r, 0, 0, &mut stack, &mut edges);
    let h = Hypergraph::new(sets.len(), r, edges)?;
    h.with_labels(sets.to_vec())
}

fn disjoint_tuples(
    sets: &[Mask],
    r: usize,
    start: usize,
    used: Mask,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == r {
        out.push(stack.clone());
        return;
    }
    // Need r - stack.len() more indices from start..; stop early when too few remain.
    let remaining = r - stack.len();
    for i in start..sets.len() {
        if sets.len() - i < remaining {
            break;
        }
        if sets[i] & used == 0 {
            stack.push(i);
            disjoint_tuples(sets, r, i + 1, used | sets[i], stack, out);
            stack.pop();
        }
    }
}

/// Whether no hyperedge is monochromatic.
pub fn is_proper(h: &Hypergraph, coloring: &Coloring) -> Result<bool> {
    if coloring.colors.len() != h.num_vertices() {
        return Err(Error::SizeMismatch {
            colors: coloring.colors.len(),
            vertices: h.num_vertices(),
        });
    }
    Ok(h.hyperedges().iter().all(|e| {
        let c = coloring.colors[e[0]];
        e[1..].iter().any(|&v| coloring.colors[v] != c)
    }))
}

fn check_afl_range(r: usize, k: usize, n: usize) -> Result<()> {
    if r < 2 || k < 1 {
        return Err(Error::InvalidRange(format!("need r >= 2 and k >= 1, got r={r}, k={k}")));
    }
    if n < r * k {
        return Err(Error::InvalidRange(format!("need n >= rk, got r={r}, k={k}, n={n}")));
    }
    Ok(())
}

/// `ceil((n - r(k-1)) / (r-1))`, the chromatic number of `KG^r(k, n)`.
pub fn afl_formula(r: usize, k: usize, n: usize) -> Result<usize> {
    check_afl_range(r, k, n)?;
    Ok((n - r * (k - 1)).div_ceil(r - 1))
}

/// The block coloring of `KG^r(k, n)` with exactly `afl_formula(r, k, n)` colors.
///
/// Colors follow the vertex order of `build_kneser(k_subsets(n, k), r)`.
/// A set whose minimum lies in the `i`-th run of `r - 1` consecutive elements
/// gets color `i` for `i < t`; everything else gets color `t`.
pub fn greedy_coloring(r: usize, k: usize, n: usize) -> Result<Coloring> {
    let t = afl_formula(r, k, n)?;
    let family = k_subsets(n, k)?;
    let colors = family
        .sets()
        .iter()
        .map(|&s| {
            let min = s.trailing_zeros() as usize; // 0-based
            (min / (r - 1) + 1).min(t)
        })
        .collect();
    Ok(Coloring::new(colors))
}

/// `ceil(cd^r(F) / (r-1))`, the lower bound on `chi(KG^r(F))` from the colorability defect.
pub fn kriz_bound(family: &SetSystem, r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidRange(format!("uniformity must be >= 2, got {r}")));
    }
    let cd = colorability_defect(family, r)?.value;
    Ok(cd.div_ceil(r - 1))
}

/// JSON form: `{"num_vertices", "r", "hyperedges", "labels"}`; labels are 1-based sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub num_vertices: usize,
    pub r: usize,
    pub hyperedges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<usize>>>,
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson {
            num_vertices: h.num_vertices,
            r: h.r,
            hyperedges: h.hyperedges.clone(),
            labels: h
                .labels
                .as_ref()
                .map(|l| l.iter().map(|&m| mask_to_elements(m)).collect()),
        }
    }
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Self> {
        let h = Hypergraph::new(j.num_vertices, j.r, j.hyperedges)?;
        match j.labels {
            Some(l) => {
                let masks = l
                    .iter()
                    .map(|s| crate::setsystem::elements_to_mask(64, s))
                    .collect::<Result<Vec<_>>>()?;
                h.with_labels(masks)
            }
            None => Ok(h),
        }
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Hypergraph::try_from(HypergraphJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
