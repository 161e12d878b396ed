//! The `r`-colorability defect and affine certificates bounding its topological analogue.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{no_rfold_intersection_on_complex, PointConfig, DEFAULT_TUPLE_CAP};
use crate::setsystem::{inclusion_minimal, mask_to_elements, Mask, SetSystem};
use crate::topology::{complex_with_missing_faces, join, SimplicialComplex};

/// Largest ground set the exact defect search accepts by default.
pub const DEFAULT_DEFECT_CAP: usize = 16;

/// `r` pairwise disjoint parts containing no member, with `value = n - Σ|A_i|` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectWitness {
    pub value: usize,
    pub parts: Vec<Mask>,
}

impl DefectWitness {
    /// Parts as 1-based element lists.
    pub fn part_lists(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|&p| mask_to_elements(p)).collect()
    }

    /// Direct check of the witness invariants against `family`.
    pub fn is_valid_for(&self, family: &SetSystem) -> bool {
        let disjoint = self
            .parts
            .iter()
            .enumerate()
            .all(|(i, &a)| self.parts[i + 1..].iter().all(|&b| a & b == 0));
        let covered: u32 = self.parts.iter().map(|p| p.count_ones()).sum();
        disjoint
            && self.parts.iter().all(|&p| !family.has_member_within(p))
            && family.n() == self.value + covered as usize
    }
}

/// `cd^r(F)` by branch and bound, with the default ground-set cap.
pub fn colorability_defect(family: &SetSystem, r: usize) -> Result<DefectWitness> {
    colorability_defect_capped(family, r, DEFAULT_DEFECT_CAP)
}

pub fn colorability_defect_capped(family: &SetSystem, r: usize, cap: usize) -> Result<DefectWitness> {
    if r < 2 {
        return Err(Error::InvalidRange(format!("need r >= 2, got {r}")));
    }
    let n = family.n();
    if n > cap {
        return Err(Error::SizeLimit(format!("ground set {n} exceeds defect search cap {cap}")));
    }
    let minimal = inclusion_minimal(family);
    let degrees = minimal.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(degrees[e]), e));
    let members_of: Vec<Vec<Mask>> = (0..n)
        .map(|e| minimal.sets().iter().copied().filter(|&m| m & (1u64 << e) != 0).collect())
        .collect();
    let mut search = DefectSearch {
        r,
        order,
        members_of,
        parts: vec![0; r],
        best_used: 0,
        best_parts: vec![0; r],
    };
    search.run(0, 0, 0);
    Ok(DefectWitness {
        value: n - search.best_used,
        parts: search.best_parts,
    })
}

struct DefectSearch {
    r: usize,
    order: Vec<usize>,
    members_of: Vec<Vec<Mask>>,
    parts: Vec<Mask>,
    best_used: usize,
    best_parts: Vec<Mask>,
}

impl DefectSearch {
    fn run(&mut self, depth: usize, used: usize, opened: usize) {
        if used + (self.order.len() - depth) <= self.best_used {
            return;
        }
        if depth == self.order.len() {
            self.best_used = used;
            self.best_parts = self.parts.clone();
            return;
        }
        let e = self.order[depth];
        let bit = 1u64 << e;
        // Parts are interchangeable, so at most one empty part is tried.
        let limit = (opened + 1).min(self.r);
        for i in 0..limit {
            let next = self.parts[i] | bit;
            if self.members_of[e].iter().any(|&m| m & !next == 0) {
                continue;
            }
            self.parts[i] = next;
            self.run(depth + 1, used + 1, opened.max(i + 1));
            self.parts[i] &= !bit;
        }
        self.run(depth + 1, used, opened);
    }
}

/// A certified lower bound `N - (r-1)(d+1)` on the topological defect.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedBound {
    pub value: i64,
    #[serde(skip)]
    pub config: PointConfig,
    pub checked_tuples: usize,
}

/// Verify that `config` maps the complex with missing faces `F`, joined with a
/// simplex on `extra_vertices` further vertices, without `r`-fold
/// intersections among pairwise disjoint faces.
///
/// Elements forming singleton members belong to no face; their points are
/// ignored but they still count toward `N`.
pub fn tcd_certificate(
    family: &SetSystem,
    extra_vertices: usize,
    config: &PointConfig,
    r: usize,
) -> Result<CertifiedBound> {
    let n = family.n();
    let total = n + extra_vertices;
    if config.len() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: config.len(),
        });
    }
    let (complex, vertices) = certifying_complex(family, extra_vertices)?;
    let used = config.select(&vertices);
    let checked = match no_rfold_intersection_on_complex(&complex, &used, r, DEFAULT_TUPLE_CAP)? {
        Ok(count) => count,
        Err(mut witness) => {
            for face in &mut witness.faces {
                for v in face.iter_mut() {
                    *v = vertices[*v] + 1;
                }
            }
            return Err(witness.into());
        }
    };
    let d = config.d() as i64;
    Ok(CertifiedBound {
        value: total as i64 - (r as i64 - 1) * (d + 1),
        config: config.clone(),
        checked_tuples: checked,
    })
}

/// The certifying complex on the non-ghost vertices, with their indices in `0..n + extra`.
fn certifying_complex(family: &SetSystem, extra: usize) -> Result<(SimplicialComplex, Vec<usize>)> {
    let n = family.n();
    let minimal = inclusion_minimal(family);
    let ghosts: Mask = minimal.sets().iter().filter(|s| s.count_ones() == 1).fold(0, |a, &s| a | s);
    let kept: Vec<usize> = (0..n).filter(|&v| ghosts & (1u64 << v) == 0).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let reduced = minimal
        .sets()
        .iter()
        .filter(|s| s.count_ones() > 1)
        .map(|&s| {
            mask_to_elements(s)
                .into_iter()
                .fold(0u64, |acc, e| acc | (1u64 << index[e - 1]))
        })
        .collect::<Vec<_>>();
    let base = complex_with_missing_faces(&SetSystem::from_masks(kept.len(), reduced)?)?;
    let complex = join(&base, &SimplicialComplex::simplex(extra)?)?;
    let mut vertices = kept;
    vertices.extend(n..n + extra);
    Ok((complex, vertices))
}

/// Parameters of the affine construction: target dimension and extra vertex count.
pub fn tcd_parameters(n: usize, cd: usize, r: usize) -> (usize, usize) {
    let covered = n - cd;
    let d = covered.div_ceil(r - 1).saturating_sub(1);
    let m = (r - 1) * (d + 1) + 1 - covered;
    (d, m - 1)
}

/// Outcome of comparing `cd^r(F)` against an affine certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TcdCheckReport {
    pub cd: usize,
    pub certified: Option<i64>,
    pub d: usize,
    pub extra_vertices: usize,
    pub checked_tuples: usize,
    pub trials_used: usize,
    pub passed: bool,
}

/// Certify `cd^r(F) <= tcd^r(F)` with random integer points, rerolling degenerate draws.
pub fn cd_le_tcd_check(family: &SetSystem, r: usize, trials: usize, seed: u64) -> Result<TcdCheckReport> {
    let cd = colorability_defect(family, r)?.value;
    let (d, extra) = tcd_parameters(family.n(), cd, r);
    let total = family.n() + extra;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let points: Vec<Vec<i64>> = (0..total)
            .map(|_| (0..d).map(|_| rng.gen_range(-1000..=1000)).collect())
            .collect();
        let config = PointConfig::from_integers(d, &points)?;
        match tcd_certificate(family, extra, &config, r) {
            Ok(bound) => {
                return Ok(TcdCheckReport {
                    cd,
                    certified: Some(bound.value),
                    d,
                    extra_vertices: extra,
                    checked_tuples: bound.checked_tuples,
                    trials_used: trial,
                    passed: bound.value >= cd as i64,
                })
            }
            Err(Error::VerificationFailure { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(TcdCheckReport {
        cd,
        certified: None,
        d,
        extra_vertices: extra,
        checked_tuples: 0,
        trials_used: trials,
        passed: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::k_subsets;

    /// Exhaustive search over all `(r+1)^n` assignments.
    fn oracle(family: &SetSystem, r: usize) -> usize {
        let n = family.n();
        let mut best = 0;
        let total = (r + 1).pow(n as u32);
        for code in 0..total {
            let mut parts = vec![0u64; r];
            let mut c = code;
            for e in 0..n {
                let slot = c % (r + 1);
                c /= r + 1;
                if slot < r {
                    parts[slot] |= 1 << e;
                }
            }
            if parts.iter().all(|&p| !family.has_member_within(p)) {
                best = best.max(parts.iter().map(|p| p.count_ones() as usize).sum());
            }
        }
        n - best
    }

    fn cycle5() -> SetSystem {
        SetSystem::from_lists(5, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 1]]).unwrap()
    }

    #[test]
    fn five_cycle() {
        let w = colorability_defect(&cycle5(), 2).unwrap();
        assert_eq!(w.value, 1);
        assert!(w.is_valid_for(&cycle5()));
    }

    #[test]
    fn singletons_force_everything_out() {
        let f = k_subsets(6, 1).unwrap();
        let w = colorability_defect(&f, 3).unwrap();
        assert_eq!(w.value, 6);
        assert_eq!(w.parts, vec![0; 3]);
    }

    #[test]
    fn matches_oracle_on_small_families() {
        for n in 1..=6 {
            for k in 1..=3.min(n) {
                for r in 2..=3 {
                    let f = k_subsets(n, k).unwrap();
                    let w = colorability_defect(&f, r).unwrap();
                    assert_eq!(w.value, oracle(&f, r), "n={n} k={k} r={r}");
                    assert!(w.is_valid_for(&f));
                }
            }
        }
        assert_eq!(colorability_defect(&cycle5(), 3).unwrap().value, oracle(&cycle5(), 3));
    }

    #[test]
    fn cap_and_range() {
        let big = SetSystem::from_lists(17, &[vec![1, 2]]).unwrap();
        assert!(matches!(colorability_defect(&big, 2), Err(Error::SizeLimit(_))));
        assert!(colorability_defect(&cycle5(), 1).is_err());
        assert_eq!(colorability_defect_capped(&big, 2, 20).unwrap().value, 0);
    }

    #[test]
    fn parameters_certify_the_defect() {
        for r in 2..=4 {
            for n in 1..=10 {
                for cd in 0..=n {
                    let (d, extra) = tcd_parameters(n, cd, r);
                    let value = (n + extra) as i64 - ((r - 1) * (d + 1)) as i64;
                    assert_eq!(value, cd as i64, "n={n} cd={cd} r={r}");
                    assert!(extra < r);
                }
            }
        }
    }

    #[test]
    fn path_embedding_certifies() {
        // Missing faces of the path 1-2-3-4 on the line.
        let f = SetSystem::from_lists(4, &[vec![1, 3], vec![1, 4], vec![2, 4]]).unwrap();
        let config = PointConfig::from_integers(1, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let bound = tcd_certificate(&f, 0, &config, 2).unwrap();
        assert_eq!(bound.value, 2);
        assert!(bound.checked_tuples > 0);
    }

    #[test]
    fn crossing_members_fail() {
        // K_4 minus nothing on four points in convex position: diagonals cross.
        let f = k_subsets(4, 3).unwrap();
        let square = PointConfig::from_integers(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        match tcd_certificate(&f, 0, &square, 2) {
            Err(Error::VerificationFailure { faces, .. }) => {
                let mut faces = faces;
                faces.sort();
                assert_eq!(faces, vec![vec![1, 3], vec![2, 4]]);
            }
            other => panic!("expected a crossing, got {other:?}"),
        }
        let wrong = PointConfig::from_integers(2, &[vec![0, 0]]).unwrap();
        assert!(matches!(tcd_certificate(&f, 0, &wrong, 2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn certificate_construction_examples() {
        let report = cd_le_tcd_check(&k_subsets(6, 2).unwrap(), 2, 10, 7).unwrap();
        assert!(report.passed);
        assert_eq!(report.certified, Some(4));
        let report = cd_le_tcd_check(&cycle5(), 2, 10, 7).unwrap();
        assert!(report.passed && report.certified >= Some(1));
        let report = cd_le_tcd_check(&k_subsets(5, 1).unwrap(), 3, 10, 7).unwrap();
        assert!(report.passed);
        assert_eq!(report.checked_tuples, 0);
    }
}
