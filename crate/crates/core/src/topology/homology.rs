use std::collections::HashMap;
use std::fmt;

use num::{BigRational, One};
use serde::{Deserialize, Serialize};

use super::{box_complex, BoxQuantifier, SimplicialComplex};
use crate::error::{Error, Result};
use crate::kneser::Hypergraph;
use crate::setsystem::Mask;

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidRange(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        let p = inner
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}; use Q or GF(p)")))?;
        Field::prime(p)
    }
}

/// Reduced Betti numbers `b_0, …, b_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub field: Field,
    pub betti: Vec<usize>,
}

impl BettiVector {
    /// Largest `κ` with `b_0 = … = b_κ = 0`; `-1` when `b_0 != 0`.
    ///
    /// For an acyclic complex this is capped at the last listed degree.
    pub fn connectivity(&self) -> isize {
        match self.betti.iter().position(|&b| b != 0) {
            Some(i) => i as isize - 1,
            None => self.betti.len() as isize - 1,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    field: String,
    betti: Vec<usize>,
}

impl Serialize for BettiVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiJson {
            field: self.field.to_string(),
            betti: self.betti.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BettiJson::deserialize(d)?;
        let field = j.field.parse().map_err(serde::de::Error::custom)?;
        Ok(BettiVector { field, betti: j.betti })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

/// `Some(p)` when `n = p^a` for a prime `p` and `a >= 1`.
pub fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

trait Coeff: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_sign(neg: bool, field: Field) -> Self;
    /// `a / b`.
    fn ratio(a: &Self, b: &Self, field: Field) -> Self;
    /// `a - f * b`.
    fn sub_mul(a: &Self, f: &Self, b: &Self, field: Field) -> Self;
}

impl Coeff for u64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_sign(neg: bool, field: Field) -> Self {
        let Field::Prime(p) = field else { unreachable!() };
        if neg {
            p - 1
        } else {
            1
        }
    }
    fn ratio(a: &Self, b: &Self, field: Field) -> Self {
        let Field::Prime(p) = field else { unreachable!() };
        mul_mod(*a, pow_mod(*b, p - 2, p), p)
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self, field: Field) -> Self {
        let Field::Prime(p) = field else { unreachable!() };
        (a + p - mul_mod(*f, *b, p)) % p
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn from_sign(neg: bool, _: Field) -> Self {
        if neg {
            -BigRational::one()
        } else {
            BigRational::one()
        }
    }
    fn ratio(a: &Self, b: &Self, _: Field) -> Self {
        a / b
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self, _: Field) -> Self {
        a - f * b
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

type SparseRow<T> = Vec<(usize, T)>;

/// Rank of a sparse matrix given by rows of `(column, value)` sorted by column.
fn sparse_rank<T: Coeff>(rows: Vec<SparseRow<T>>, field: Field) -> usize {
    let mut pivots: HashMap<usize, SparseRow<T>> = HashMap::new();
    for mut row in rows {
        while let Some((lead, _)) = row.first().cloned() {
            let Some(prow) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let f = T::ratio(&row[0].1, &prow[0].1, field);
            row = combine(&row, &f, prow, field);
        }
    }
    pivots.len()
}

/// `a - f * b` on sorted sparse rows, dropping zeros.
fn combine<T: Coeff>(a: &SparseRow<T>, f: &T, b: &SparseRow<T>, field: Field) -> SparseRow<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        let entry = match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = T::sub_mul(&a[i].1, f, &b[j].1, field);
                i += 1;
                j += 1;
                (x, v)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (x, a[i - 1].1.clone())
            }
            (Some(x), None) => {
                i += 1;
                (x, a[i - 1].1.clone())
            }
            (_, Some(y)) => {
                let v = T::sub_mul(&T::zero(), f, &b[j].1, field);
                j += 1;
                (y, v)
            }
            (None, None) => unreachable!(),
        };
        if !entry.1.is_zero() {
            out.push(entry);
        }
    }
    out
}

/// Rank of the boundary map from faces of size `size` to faces of size `size - 1`.
fn boundary_rank<T: Coeff>(by_size: &[Vec<Mask>], size: usize, field: Field) -> usize {
    if size == 0 || size >= by_size.len() {
        return 0;
    }
    let index: HashMap<Mask, usize> = by_size[size - 1].iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let rows: Vec<SparseRow<T>> = by_size[size]
        .iter()
        .map(|&face| {
            let mut row = Vec::with_capacity(size);
            let mut rest = face;
            let mut pos = 0;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                row.push((index[&(face & !bit)], T::from_sign(pos % 2 == 1, field)));
                pos += 1;
            }
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    sparse_rank(rows, field)
}

fn faces_by_size(k: &SimplicialComplex) -> Vec<Vec<Mask>> {
    let top = (k.dim() + 1) as usize;
    let mut by_size = vec![Vec::new(); top + 1];
    for f in k.faces() {
        by_size[f.count_ones() as usize].push(f);
    }
    by_size
}

/// Rank of the boundary map out of faces of dimension `dim` (`dim = 0` maps to the empty face).
pub fn rank(k: &SimplicialComplex, dim: usize, field: Field) -> usize {
    let by_size = faces_by_size(k);
    match field {
        Field::Rationals => boundary_rank::<BigRational>(&by_size, dim + 1, field),
        Field::Prime(_) => boundary_rank::<u64>(&by_size, dim + 1, field),
    }
}

/// Reduced Betti numbers of `k` over `field`.
pub fn betti_numbers(k: &SimplicialComplex, field: Field) -> BettiVector {
    let by_size = faces_by_size(k);
    let ranks: Vec<usize> = (0..=by_size.len())
        .map(|size| match field {
            Field::Rationals => boundary_rank::<BigRational>(&by_size, size, field),
            Field::Prime(_) => boundary_rank::<u64>(&by_size, size, field),
        })
        .collect();
    let betti = (1..by_size.len())
        .map(|size| by_size[size].len() - ranks[size] - ranks[size + 1])
        .collect();
    BettiVector { field, betti }
}

/// Outcome of the homological lower bound on `χ(H)` via the box complex.
///
/// This is a heuristic proxy: vanishing homology bounds connectivity only
/// for simply connected complexes, which is not checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivariantBound {
    pub value: usize,
    pub connectivity: isize,
    pub prime: u64,
    pub acyclic: bool,
    pub heuristic: bool,
}

/// Lower bound `⌊(κ+1)/(r-1)⌋ + 1` from the homological connectivity `κ` of `B(H)` over `GF(p)`.
pub fn equivariant_chi_bound(h: &Hypergraph, require_prime_power: bool) -> Result<EquivariantBound> {
    let r = h.r() as u64;
    let prime = match prime_of_power(r) {
        Some(p) => p,
        None if require_prime_power => return Err(Error::NotPrimePower(h.r())),
        None => smallest_prime_factor(r),
    };
    let b = box_complex(h, BoxQuantifier::AtMostOnce)?;
    let betti = betti_numbers(&b, Field::Prime(prime));
    let kappa = betti.connectivity();
    let value = ((kappa + 1) as usize) / (h.r() - 1) + 1;
    Ok(EquivariantBound {
        value,
        connectivity: kappa,
        prime,
        acyclic: betti.is_acyclic(),
        heuristic: true,
    })
}
