//! Exact feasibility of `A x = b, x >= 0` by phase-one simplex with Bland's rule.
//!
//! The tableau is generic over [`Scalar`] so that small instances run on
//! checked `i128` fractions and fall back to big rationals on overflow.

use num::rational::Ratio;
use num::traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Scalar: Clone + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
    fn lt(&self, o: &Self) -> bool;
}

impl Scalar for Ratio<i128> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        // Keep headroom so that one product of two entries cannot overflow.
        let n = q.numer().to_i64()?;
        let d = q.denom().to_i64()?;
        Some(Ratio::new(n as i128, d as i128))
    }
    fn to_rational(&self) -> Rational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

/// Find a nonnegative solution of `a x = b`, or `None` when none exists.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    if let Some(small) = convert::<Ratio<i128>>(a, b) {
        if let Some(res) = phase_one(small) {
            return res.map(|x| x.iter().map(Scalar::to_rational).collect());
        }
    }
    let big = convert::<BigRational>(a, b).expect("big rationals always convert");
    phase_one(big)
        .expect("big rational arithmetic cannot overflow")
        .map(|x| x.to_vec())
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    vars: usize,
}

fn convert<T: Scalar>(a: &[Vec<Rational>], b: &[Rational]) -> Option<Tableau<T>> {
    let vars = a.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(a.len());
    let mut rhs = Vec::with_capacity(b.len());
    for (row, bi) in a.iter().zip(b) {
        let mut r = row.iter().map(T::from_rational).collect::<Option<Vec<T>>>()?;
        let mut bi = T::from_rational(bi)?;
        if bi.is_negative() {
            r.iter_mut().for_each(|x| *x = x.neg());
            bi = bi.neg();
        }
        rows.push(r);
        rhs.push(bi);
    }
    Some(Tableau { rows, rhs, vars })
}

/// Outer `None`: arithmetic overflow. Inner `None`: infeasible.
fn phase_one<T: Scalar>(t: Tableau<T>) -> Option<Option<Vec<T>>> {
    let m = t.rows.len();
    let nv = t.vars;
    let cols = nv + m;
    // Tableau rows: [original | artificial identity | rhs].
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for (i, row) in t.rows.into_iter().enumerate() {
        let mut full = row;
        full.extend((0..m).map(|j| if i == j { T::one() } else { T::zero() }));
        full.push(t.rhs[i].clone());
        tab.push(full);
    }
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut obj = vec![T::zero(); cols + 1];
    for j in 0..nv {
        let mut s = T::zero();
        for row in tab.iter().take(m) {
            s = s.sub(&row[j])?;
        }
        obj[j] = s;
    }
    let mut s = T::zero();
    for row in tab.iter().take(m) {
        s = s.sub(&row[cols])?;
    }
    obj[cols] = s;
    tab.push(obj);
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    while let Some(enter) = (0..cols).find(|&j| tab[m][j].is_negative()) {
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = tab[i][cols].div(&tab[i][enter])?;
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio.lt(lr) || (!lr.lt(&ratio) && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, p, enter)?;
        basis[p] = enter;
    }

    if !tab[m][cols].is_zero() {
        return Some(None);
    }
    let mut x = vec![T::zero(); nv];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < nv {
            x[bv] = tab[i][cols].clone();
        }
    }
    Some(Some(x))
}

fn pivot<T: Scalar>(tab: &mut [Vec<T>], p: usize, col: usize) -> Option<()> {
    let pv = tab[p][col].clone();
    for x in tab[p].iter_mut() {
        if !x.is_zero() {
            *x = x.div(&pv)?;
        }
    }
    let prow = tab[p].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == p || row[col].is_zero() {
            continue;
        }
        let f = row[col].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x = x.sub(&f.mul(y)?)?;
            }
        }
    }
    Some(())
}
