use std::collections::HashSet;

use super::{facets_of_face_set, SimplicialComplex};
use crate::error::{Error, Result};
use crate::kneser::Hypergraph;
use crate::setsystem::{Mask, MAX_GROUND};

/// Which transversal sets `σ` must lie in a hyperedge for a tuple to be a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoxQuantifier {
    /// Every `σ ⊆ A_1 ∪ … ∪ A_r` meeting each `A_i` at most once.
    #[default]
    AtMostOnce,
    /// Only `σ` meeting every nonempty `A_i` exactly once.
    ExactlyOnce,
}

/// The box complex on `r` copies of the vertex set; copy `i` of vertex `v` is `i * nv + v`.
pub fn box_complex(h: &Hypergraph, quantifier: BoxQuantifier) -> Result<SimplicialComplex> {
    let nv = h.num_vertices();
    let r = h.r();
    if r * nv > MAX_GROUND {
        return Err(Error::GroundTooLarge(r * nv));
    }
    let inc = h.incidence();
    if let Some(v) = (0..nv).find(|&v| inc[v].is_empty()) {
        return Err(Error::IsolatedVertex(v + 1));
    }
    let edges: Vec<Mask> = h
        .hyperedges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
        .collect();
    let mut search = BoxSearch {
        r,
        nv,
        edges,
        quantifier,
        parts: vec![0; r],
        faces: HashSet::new(),
    };
    search.run(0);
    let faces = search.faces;
    SimplicialComplex::new(r * nv, facets_of_face_set(&faces, r * nv))
}

struct BoxSearch {
    r: usize,
    nv: usize,
    edges: Vec<Mask>,
    quantifier: BoxQuantifier,
    parts: Vec<Mask>,
    faces: HashSet<Mask>,
}

impl BoxSearch {
    fn run(&mut self, v: usize) {
        if v == self.nv {
            if self.admissible() {
                let face = self
                    .parts
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &a)| acc | (a << (i * self.nv)));
                self.faces.insert(face);
            }
            return;
        }
        self.run(v + 1);
        for i in 0..self.r {
            self.parts[i] |= 1u64 << v;
            // The face condition is inherited by sub-tuples, so prune early.
            if self.admissible() {
                self.run(v + 1);
            }
            self.parts[i] &= !(1u64 << v);
        }
    }

    fn admissible(&self) -> bool {
        self.check(0, 0)
    }

    /// Recursively picks at most one vertex per part and tests the union.
    fn check(&self, part: usize, sigma: Mask) -> bool {
        if part == self.r {
            return self.edges.iter().any(|&e| sigma & !e == 0);
        }
        let a = self.parts[part];
        if (a == 0 || self.quantifier == BoxQuantifier::AtMostOnce) && !self.check(part + 1, sigma) {
            return false;
        }
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.check(part + 1, sigma | (1u64 << v)) {
                return false;
            }
        }
        true
    }
}
