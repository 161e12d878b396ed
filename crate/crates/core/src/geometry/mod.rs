//! Exact rational point configurations and convex-hull intersection tests.

pub mod lp;
mod tverberg;

pub use lp::Rational;
pub use tverberg::{
    colorful_partitions, enumerate_tverberg_partitions, is_colorful, maximal_disjoint_face_tuples,
    no_rfold_intersection_on_complex,
    set_partitions, tverberg_support_size, validated_stretched_config, verify_colorful_property,
    BlockPartition, ColorfulReport, FaceTupleWitness, DEFAULT_TUPLE_CAP, MAX_ESCALATIONS,
};

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered points in `R^d` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    d: usize,
    points: Vec<Vec<Rational>>,
}

impl PointConfig {
    pub fn new(d: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        for p in &points {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
        }
        Ok(PointConfig { d, points })
    }

    pub fn from_integers(d: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            d,
            points
                .iter()
                .map(|p| p.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points[i]
    }

    /// Sub-configuration on the given indices, in that order.
    pub fn select(&self, indices: &[usize]) -> PointConfig {
        PointConfig {
            d: self.d,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Concatenate the points of `other` after those of `self`.
    pub fn extend(&self, other: &PointConfig) -> Result<PointConfig> {
        if other.d != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        Ok(PointConfig { d: self.d, points })
    }

    /// Image under `x -> m x + t`.
    pub fn affine_image(&self, m: &[Vec<Rational>], t: &[Rational]) -> PointConfig {
        let points = self
            .points
            .iter()
            .map(|p| {
                (0..self.d)
                    .map(|i| {
                        let s: Rational = (0..self.d).map(|j| &m[i][j] * &p[j]).sum();
                        s + &t[i]
                    })
                    .collect()
            })
            .collect();
        PointConfig { d: self.d, points }
    }

    pub fn has_coincident_points(&self) -> bool {
        (0..self.points.len()).any(|i| (i + 1..self.points.len()).any(|j| self.points[i] == self.points[j]))
    }
}

/// Points `(t, t^2, ..., t^d)` for strictly increasing parameters `ts`.
pub fn moment_curve_config(d: usize, ts: &[Rational]) -> Result<PointConfig> {
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasingParameters);
    }
    let points = ts
        .iter()
        .map(|t| {
            let mut p = Vec::with_capacity(d);
            let mut pow = t.clone();
            for _ in 0..d {
                p.push(pow.clone());
                pow = &pow * t;
            }
            p
        })
        .collect();
    PointConfig::new(d, points)
}

/// Parameters `B^(2^i)` for `i = 1..=count`.
pub fn stretch_schedule(count: usize, base: &BigInt) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut t = base.clone();
    for _ in 0..count {
        t = &t * &t;
        out.push(Rational::from_integer(t.clone()));
    }
    out
}

/// Moment-curve points with rapidly growing parameters `t_i = B^(2^i)`.
///
/// The result is only a candidate; callers validate it with
/// [`verify_colorful_property`] or use [`validated_stretched_config`].
pub fn stretched_config(d: usize, count: usize, base: &BigInt) -> Result<PointConfig> {
    if count < 1 {
        return Err(Error::InvalidRange("need at least one point".into()));
    }
    if *base < BigInt::from(2) {
        return Err(Error::InvalidRange("stretch base must be >= 2".into()));
    }
    moment_curve_config(d, &stretch_schedule(count, base))
}

/// Common point of the convex hulls of the given index blocks, if any.
///
/// Decided by an exact LP with one convex weight per (block, point) pair.
pub fn hulls_intersect(config: &PointConfig, blocks: &[Vec<usize>]) -> Result<Option<Vec<Rational>>> {
    if blocks.is_empty() {
        return Err(Error::InvalidRange("need at least one block".into()));
    }
    for b in blocks {
        for &i in b {
            if i >= config.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: config.len(),
                });
            }
        }
    }
    if blocks.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let d = config.d();
    let vars: usize = blocks.iter().map(Vec::len).sum();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in blocks {
        offsets.push(acc);
        acc += b.len();
    }
    let mut a = Vec::new();
    let mut rhs = Vec::new();
    for (j, b) in blocks.iter().enumerate() {
        let mut row = vec![Rational::zero(); vars];
        for k in 0..b.len() {
            row[offsets[j] + k] = Rational::one();
        }
        a.push(row);
        rhs.push(Rational::one());
    }
    for (j, b) in blocks.iter().enumerate().skip(1) {
        for coord in 0..d {
            let mut row = vec![Rational::zero(); vars];
            for (k, &p) in blocks[0].iter().enumerate() {
                row[k] = config.point(p)[coord].clone();
            }
            for (k, &p) in b.iter().enumerate() {
                row[offsets[j] + k] = -config.point(p)[coord].clone();
            }
            a.push(row);
            rhs.push(Rational::zero());
        }
    }
    let Some(x) = lp::feasible_point(&a, &rhs) else {
        return Ok(None);
    };
    let mut witness = vec![Rational::zero(); d];
    for (k, &p) in blocks[0].iter().enumerate() {
        for (c, w) in witness.iter_mut().enumerate() {
            *w += &x[k] * &config.point(p)[c];
        }
    }
    Ok(Some(witness))
}

/// Whether `q` is a convex combination of the points in `block`.
pub fn in_hull(config: &PointConfig, block: &[usize], q: &[Rational]) -> Result<bool> {
    if q.len() != config.d() {
        return Err(Error::DimensionMismatch {
            expected: config.d(),
            found: q.len(),
        });
    }
    let single = PointConfig::new(config.d(), vec![q.to_vec()])?;
    let joined = config.extend(&single)?;
    let last = config.len();
    Ok(hulls_intersect(&joined, &[block.to_vec(), vec![last]])?.is_some())
}

/// Rationals as `"num/den"` strings (or plain integers).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// JSON form: `{"d": int, "points": [["num/den", ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfigJson {
    pub d: usize,
    pub points: Vec<Vec<String>>,
}

impl From<&PointConfig> for PointConfigJson {
    fn from(c: &PointConfig) -> Self {
        PointConfigJson {
            d: c.d,
            points: c
                .points
                .iter()
                .map(|p| p.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl TryFrom<PointConfigJson> for PointConfig {
    type Error = Error;

    fn try_from(j: PointConfigJson) -> Result<Self> {
        let points = j
            .points
            .iter()
            .map(|p| p.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PointConfig::new(j.d, points)
    }
}

impl Serialize for PointConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointConfigJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PointConfig::try_from(PointConfigJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
