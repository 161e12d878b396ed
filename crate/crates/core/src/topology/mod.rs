//! Simplicial complexes on at most 64 vertices, stored by their facets.
//!
//! Vertex `v` (0-based) is bit `v` of a face mask, so a face mask of a
//! complex on `[n]` is the same bitmask as the corresponding [`SetSystem`]
//! member.

mod boxcx;
mod homology;

pub use boxcx::{box_complex, BoxQuantifier};
pub use homology::{betti_numbers, equivariant_chi_bound, rank, BettiVector, EquivariantBound, Field};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kneser::{build_kneser, Hypergraph};
use crate::setsystem::{full_mask, mask_to_elements, Mask, SetSystem, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Mask>,
}

impl SimplicialComplex {
    /// Complex generated by `faces`; non-maximal generators are dropped.
    ///
    /// Every vertex in `0..n` must lie in some generator. The complex on zero
    /// vertices is `{∅}`.
    pub fn new(n: usize, faces: Vec<Mask>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let full = full_mask(n);
        let mut used = 0;
        for &f in &faces {
            if f & !full != 0 {
                return Err(Error::InvalidComplex(format!(
                    "face {:?} uses a vertex outside 1..={n}",
                    mask_to_elements(f)
                )));
            }
            used |= f;
        }
        if used != full {
            let ghost = (!used & full).trailing_zeros() as usize + 1;
            return Err(Error::InvalidComplex(format!("vertex {ghost} is in no face")));
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal_masks(faces),
        })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::new(n, vec![full_mask(n)])
    }

    /// The boundary of the simplex on `n >= 2` vertices.
    pub fn simplex_boundary(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidComplex("boundary needs at least two vertices".into()));
        }
        let full = full_mask(n);
        Self::new(n, (0..n).map(|v| full & !(1u64 << v)).collect())
    }

    /// All faces of dimension `<= dim` of the simplex on `n` vertices.
    pub fn skeleton(n: usize, dim: usize) -> Result<Self> {
        let k = (dim + 1).min(n);
        if n == 0 {
            return Self::new(0, vec![]);
        }
        Self::new(n, crate::setsystem::k_masks(n, k).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Mask] {
        &self.facets
    }

    pub fn is_face(&self, mask: Mask) -> bool {
        mask == 0 || self.facets.iter().any(|&f| mask & !f == 0)
    }

    /// Largest face size minus one; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.count_ones() as isize).max().unwrap_or(0) - 1
    }

    /// Every face including the empty one, ordered by size then mask.
    pub fn faces(&self) -> Vec<Mask> {
        let mut seen: HashSet<Mask> = HashSet::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut faces: Vec<Mask> = seen.into_iter().collect();
        faces.sort_by_key(|&m| (m.count_ones(), m));
        faces
    }

    /// Face counts `f_0, f_1, ...` by dimension (the empty face is not counted).
    pub fn f_vector(&self) -> Vec<usize> {
        let len = (self.dim() + 1).max(0) as usize;
        let mut f = vec![0; len];
        for m in self.faces() {
            if m != 0 {
                f[m.count_ones() as usize - 1] += 1;
            }
        }
        f
    }

    /// Euler characteristic `f_0 - f_1 + f_2 - ...`.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Whether every face of `self` is a face of `other` (same vertex count).
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.n == other.n && self.facets.iter().all(|&f| other.is_face(f))
    }

    /// Relabel vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        if perm.len() != self.n {
            return Err(Error::InvalidComplex("permutation has the wrong length".into()));
        }
        let facets = self
            .facets
            .iter()
            .map(|&f| {
                mask_to_elements(f)
                    .into_iter()
                    .fold(0u64, |acc, e| acc | (1u64 << perm[e - 1]))
            })
            .collect();
        SimplicialComplex::new(self.n, facets)
    }
}

/// Keep only the inclusion-maximal masks, sorted and deduplicated.
fn maximal_masks(mut masks: Vec<Mask>) -> Vec<Mask> {
    masks.sort_by_key(|&m| std::cmp::Reverse((m.count_ones(), m)));
    masks.dedup();
    let mut kept: Vec<Mask> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    if kept.is_empty() {
        kept.push(0);
    }
    kept
}

/// Maximal faces among an explicit downward-closed face set.
fn facets_of_face_set(faces: &HashSet<Mask>, n: usize) -> Vec<Mask> {
    faces
        .iter()
        .copied()
        .filter(|&f| (0..n).all(|v| f & (1u64 << v) != 0 || !faces.contains(&(f | (1u64 << v)))))
        .collect()
}

/// The complex on `[n]` whose minimal nonfaces are exactly the members of `family`.
pub fn complex_with_missing_faces(family: &SetSystem) -> Result<SimplicialComplex> {
    if let Some(&s) = family.sets().iter().find(|s| s.count_ones() == 1) {
        return Err(Error::SingletonMissingFace(s.trailing_zeros() as usize + 1));
    }
    if let Some(&a) = family
        .sets()
        .iter()
        .find(|&&a| family.sets().iter().any(|&b| b != a && b & !a == 0))
    {
        return Err(Error::NotAnAntichain(mask_to_elements(a)));
    }
    let n = family.n();
    let mut facets = Vec::new();
    maximal_independent(family, n, 0, 0, 0, &mut facets);
    SimplicialComplex::new(n, facets)
}

fn maximal_independent(family: &SetSystem, n: usize, v: usize, set: Mask, excluded: Mask, out: &mut Vec<Mask>) {
    if v == n {
        let blocked = mask_to_elements(excluded)
            .into_iter()
            .all(|e| family.has_member_within(set | (1u64 << (e - 1))));
        if blocked {
            out.push(set);
        }
        return;
    }
    let bit = 1u64 << v;
    if !family.has_member_within(set | bit) {
        maximal_independent(family, n, v + 1, set | bit, excluded, out);
    }
    maximal_independent(family, n, v + 1, set, excluded | bit, out);
}

/// Minimal nonfaces of `complex`.
pub fn missing_faces(complex: &SimplicialComplex) -> SetSystem {
    let n = complex.n();
    let mut found: HashSet<Mask> = HashSet::new();
    for tau in complex.faces() {
        for v in 0..n {
            let bit = 1u64 << v;
            if tau & bit != 0 {
                continue;
            }
            let sigma = tau | bit;
            if complex.is_face(sigma) || found.contains(&sigma) {
                continue;
            }
            let minimal = mask_to_elements(sigma)
                .into_iter()
                .all(|e| complex.is_face(sigma & !(1u64 << (e - 1))));
            if minimal {
                found.insert(sigma);
            }
        }
    }
    SetSystem::from_masks(n, found).expect("nonfaces are nonempty subsets of [n]")
}

/// Join: vertices of `l` are shifted past those of `k`.
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex> {
    let n = k.n() + l.n();
    if n > MAX_GROUND {
        return Err(Error::GroundTooLarge(n));
    }
    let mut facets = Vec::with_capacity(k.facets().len() * l.facets().len());
    for &a in k.facets() {
        for &b in l.facets() {
            facets.push(a | (b << k.n()));
        }
    }
    SimplicialComplex::new(n, facets)
}

/// The `s`-wise deleted `r`-fold join: copy `i` of vertex `v` is vertex `i * n + v`.
pub fn deleted_join(k: &SimplicialComplex, r: usize, s: usize) -> Result<SimplicialComplex> {
    if r < 2 || s < 2 || s > r {
        return Err(Error::InvalidRange(format!("need r >= 2 and 2 <= s <= r, got r={r}, s={s}")));
    }
    let n = k.n();
    if r * n > MAX_GROUND {
        return Err(Error::GroundTooLarge(r * n));
    }
    let faces = k.faces();
    let mut out: HashSet<Mask> = HashSet::new();
    let mut counts = vec![0usize; n];
    deleted_join_rec(&faces, n, r, s, 0, 0, &mut counts, &mut out);
    let facets = facets_of_face_set(&out, r * n);
    SimplicialComplex::new(r * n, facets)
}

#[allow(clippy::too_many_arguments)]
fn deleted_join_rec(
    faces: &[Mask],
    n: usize,
    r: usize,
    s: usize,
    copy: usize,
    acc: Mask,
    counts: &mut Vec<usize>,
    out: &mut HashSet<Mask>,
) {
    if copy == r {
        out.insert(acc);
        return;
    }
    for &f in faces {
        let elems = mask_to_elements(f);
        if elems.iter().any(|&e| counts[e - 1] + 1 >= s) {
            continue;
        }
        for &e in &elems {
            counts[e - 1] += 1;
        }
        deleted_join_rec(faces, n, r, s, copy + 1, acc | (f << (copy * n)), counts, out);
        for &e in &elems {
            counts[e - 1] -= 1;
        }
    }
}

/// `KG^r(K, L)`: missing faces of `k` that are faces of `l`, with `r` pairwise
/// disjoint ones forming hyperedges.
pub fn kg_relative(k: &SimplicialComplex, l: &SimplicialComplex, r: usize) -> Result<Hypergraph> {
    if !k.is_subcomplex_of(l) {
        return Err(Error::NotASubcomplex);
    }
    let mf = missing_faces(k);
    let vertices = mf.filter(|m| l.is_face(m));
    build_kneser(&vertices, r)
}

/// JSON form: `{"n": int, "facets": [[int, ...], ...]}` with 1-based vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> Self {
        ComplexJson {
            n: k.n,
            facets: k
                .facets
                .iter()
                .filter(|&&f| f != 0)
                .map(|&f| mask_to_elements(f))
                .collect(),
        }
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        if j.n > MAX_GROUND {
            return Err(Error::GroundTooLarge(j.n));
        }
        let facets = j
            .facets
            .iter()
            .map(|f| crate::setsystem::elements_to_mask(j.n, f))
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::new(j.n, facets)
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SimplicialComplex::try_from(ComplexJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
