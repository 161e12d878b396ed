use num::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{format_rational, hulls_intersect, stretched_config, PointConfig};
use crate::error::{Error, Result};
use crate::setsystem::mask_to_elements;
use crate::topology::SimplicialComplex;

/// Maximum number of base squarings tried by [`validated_stretched_config`].
pub const MAX_ESCALATIONS: usize = 8;

/// Default cap on face tuples examined by [`no_rfold_intersection_on_complex`].
pub const DEFAULT_TUPLE_CAP: usize = 5_000_000;

/// A partition of a support of point indices into `r` blocks.
///
/// `support` holds 0-based point indices in increasing order; `blocks` hold
/// 0-based positions within the support, each block sorted, blocks ordered by
/// their smallest position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockPartition {
    pub support: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockPartition {
    /// Blocks expressed as point indices rather than positions.
    pub fn point_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&p| self.support[p]).collect())
            .collect()
    }
}

/// `(r - 1)(d + 1) + 1`, the support size of a Tverberg partition.
pub fn tverberg_support_size(r: usize, d: usize) -> usize {
    (r - 1) * (d + 1) + 1
}

/// All partitions of `0..m` into exactly `r` nonempty blocks, in
/// restricted-growth order.
pub fn set_partitions(m: usize, r: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, m: usize, r: usize, label: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if m - i < r - used {
            return;
        }
        if i == m {
            let mut blocks = vec![Vec::new(); r];
            for (p, &l) in label.iter().enumerate() {
                blocks[l].push(p);
            }
            out.push(blocks);
            return;
        }
        for l in 0..(used + 1).min(r) {
            label.push(l);
            rec(i + 1, m, r, label, used.max(l + 1), out);
            label.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 || r > m {
        return out;
    }
    rec(0, m, r, &mut Vec::with_capacity(m), 0, &mut out);
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::setsystem::k_masks(n, k)
        .map(|m| mask_to_elements(m).into_iter().map(|e| e - 1).collect())
        .collect()
}

fn check_point_count(config: &PointConfig, r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidRange(format!("need r >= 2, got {r}")));
    }
    let m = tverberg_support_size(r, config.d());
    if config.len() < m {
        return Err(Error::TooFewPoints {
            needed: m,
            got: config.len(),
        });
    }
    Ok(m)
}

/// Every partition of every `(r-1)(d+1)+1`-point support into `r` blocks
/// whose convex hulls share a point.
pub fn enumerate_tverberg_partitions(config: &PointConfig, r: usize) -> Result<Vec<BlockPartition>> {
    let m = check_point_count(config, r)?;
    let partitions = set_partitions(m, r);
    let supports = combinations(config.len(), m);
    let found: Vec<Vec<BlockPartition>> = supports
        .par_iter()
        .map(|support| {
            partitions
                .iter()
                .filter_map(|blocks| {
                    let bp = BlockPartition {
                        support: support.clone(),
                        blocks: blocks.clone(),
                    };
                    match hulls_intersect(config, &bp.point_blocks()) {
                        Ok(Some(_)) => Some(bp),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect();
    let mut out: Vec<BlockPartition> = found.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// Whether each window `Y_k` of `r` consecutive positions (consecutive windows
/// sharing one position) meets every block exactly once.
pub fn is_colorful(bp: &BlockPartition, r: usize, d: usize) -> Result<bool> {
    let m = tverberg_support_size(r, d);
    if bp.support.len() != m {
        return Err(Error::WrongSupportSize {
            expected: m,
            got: bp.support.len(),
        });
    }
    if bp.blocks.len() != r {
        return Ok(false);
    }
    let mut block_of = vec![usize::MAX; m];
    for (j, b) in bp.blocks.iter().enumerate() {
        for &p in b {
            if p >= m || block_of[p] != usize::MAX {
                return Ok(false);
            }
            block_of[p] = j;
        }
    }
    if block_of.contains(&usize::MAX) {
        return Ok(false);
    }
    for k in 0..=d {
        let start = (r - 1) * k;
        let mut seen = vec![false; r];
        for &b in &block_of[start..=start + r - 1] {
            if seen[b] {
                return Ok(false);
            }
            seen[b] = true;
        }
    }
    Ok(true)
}

/// Colorful partitions of the positions `0..(r-1)(d+1)+1`.
pub fn colorful_partitions(r: usize, d: usize) -> Vec<Vec<Vec<usize>>> {
    let m = tverberg_support_size(r, d);
    let support: Vec<usize> = (0..m).collect();
    set_partitions(m, r)
        .into_iter()
        .filter(|blocks| {
            is_colorful(
                &BlockPartition {
                    support: support.clone(),
                    blocks: blocks.clone(),
                },
                r,
                d,
            )
            .unwrap_or(false)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ColorfulReport {
    /// Occurring partitions equal colorful partitions on every support.
    pub holds: bool,
    pub occurring: usize,
    pub colorful: usize,
    /// Colorful but not occurring.
    pub missing: Vec<BlockPartition>,
    /// Occurring but not colorful.
    pub unexpected: Vec<BlockPartition>,
}

/// Compare occurring Tverberg partitions with colorful ones over all supports.
pub fn verify_colorful_property(config: &PointConfig, r: usize) -> Result<ColorfulReport> {
    let m = check_point_count(config, r)?;
    let occurring = enumerate_tverberg_partitions(config, r)?;
    let pattern = colorful_partitions(r, config.d());
    let mut expected: Vec<BlockPartition> = combinations(config.len(), m)
        .into_iter()
        .flat_map(|support| {
            pattern.iter().map(move |blocks| BlockPartition {
                support: support.clone(),
                blocks: blocks.clone(),
            })
        })
        .collect();
    expected.sort();
    let missing: Vec<BlockPartition> = expected
        .iter()
        .filter(|bp| occurring.binary_search(bp).is_err())
        .cloned()
        .collect();
    let unexpected: Vec<BlockPartition> = occurring
        .iter()
        .filter(|bp| expected.binary_search(bp).is_err())
        .cloned()
        .collect();
    Ok(ColorfulReport {
        holds: missing.is_empty() && unexpected.is_empty(),
        occurring: occurring.len(),
        colorful: expected.len(),
        missing,
        unexpected,
    })
}

/// A stretched moment-curve configuration that passes
/// [`verify_colorful_property`] for `r`; the base is squared on each failure.
///
/// Returns the configuration and the base that produced it.
pub fn validated_stretched_config(d: usize, count: usize, r: usize, base: &BigInt) -> Result<(PointConfig, BigInt)> {
    let mut b = base.clone();
    for _ in 0..=MAX_ESCALATIONS {
        let config = stretched_config(d, count, &b)?;
        if verify_colorful_property(&config, r)?.holds {
            return Ok((config, b));
        }
        b = &b * &b;
    }
    Err(Error::EscalationFailed(MAX_ESCALATIONS))
}

/// A tuple of pairwise disjoint faces whose images share a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceTupleWitness {
    /// Faces as 0-based vertex lists.
    pub faces: Vec<Vec<usize>>,
    pub point: Vec<String>,
}

impl From<FaceTupleWitness> for Error {
    fn from(w: FaceTupleWitness) -> Self {
        Error::VerificationFailure {
            faces: w.faces,
            point: w.point,
        }
    }
}

/// Check that no `r` pairwise disjoint nonempty faces of `complex` have
/// intersecting hulls under vertex `i -> config.point(i)`.
///
/// Only tuples in which no face can be enlarged by an unused vertex are
/// tested; enlarging faces can only grow the intersection. Returns the number
/// of tuples checked, or a witness.
pub fn no_rfold_intersection_on_complex(
    complex: &SimplicialComplex,
    config: &PointConfig,
    r: usize,
    tuple_cap: usize,
) -> Result<std::result::Result<usize, FaceTupleWitness>> {
    if config.len() != complex.n() {
        return Err(Error::DimensionMismatch {
            expected: complex.n(),
            found: config.len(),
        });
    }
    if r < 2 {
        return Err(Error::InvalidRange(format!("need r >= 2, got {r}")));
    }
    let tuples = maximal_disjoint_face_tuples(complex, r, tuple_cap)?;
    let witness = tuples.par_iter().find_map_first(|tuple| {
        let blocks: Vec<Vec<usize>> = tuple
            .iter()
            .map(|&m| mask_to_elements(m).into_iter().map(|v| v - 1).collect())
            .collect();
        match hulls_intersect(config, &blocks) {
            Ok(Some(p)) => Some(FaceTupleWitness {
                faces: blocks,
                point: p.iter().map(format_rational).collect(),
            }),
            _ => None,
        }
    });
    Ok(match witness {
        Some(w) => Err(w),
        None => Ok(tuples.len()),
    })
}

/// Unordered `r`-tuples of pairwise disjoint nonempty faces, none of which can
/// absorb a vertex unused by the tuple.
pub fn maximal_disjoint_face_tuples(complex: &SimplicialComplex, r: usize, cap: usize) -> Result<Vec<Vec<u64>>> {
    struct Ctx<'a> {
        k: &'a SimplicialComplex,
        r: usize,
        cap: usize,
        out: Vec<Vec<u64>>,
        overflow: bool,
    }
    fn rec(ctx: &mut Ctx, v: usize, parts: &mut Vec<u64>, unused: u64) {
        if ctx.overflow {
            return;
        }
        let n = ctx.k.n();
        if n - v < ctx.r - parts.len() {
            return;
        }
        if v == n {
            let maximal = mask_to_elements(unused).into_iter().all(|u| {
                let bit = 1u64 << (u - 1);
                parts.iter().all(|&p| !ctx.k.is_face(p | bit))
            });
            if maximal {
                if ctx.out.len() >= ctx.cap {
                    ctx.overflow = true;
                    return;
                }
                ctx.out.push(parts.clone());
            }
            return;
        }
        let bit = 1u64 << v;
        for j in 0..parts.len() {
            if ctx.k.is_face(parts[j] | bit) {
                parts[j] |= bit;
                rec(ctx, v + 1, parts, unused);
                parts[j] &= !bit;
            }
        }
        if parts.len() < ctx.r && ctx.k.is_face(bit) {
            parts.push(bit);
            rec(ctx, v + 1, parts, unused);
            parts.pop();
        }
        rec(ctx, v + 1, parts, unused | bit);
    }
    let mut ctx = Ctx {
        k: complex,
        r,
        cap,
        out: Vec::new(),
        overflow: false,
    };
    rec(&mut ctx, 0, &mut Vec::with_capacity(r), 0);
    if ctx.overflow {
        return Err(Error::SizeLimit(format!("more than {cap} face tuples")));
    }
    Ok(ctx.out)
}
