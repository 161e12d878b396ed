//! Families of subsets of a ground set `[n] = {1, ..., n}`.
//!
//! Every subset is a `u64` bitmask with element `i` stored at bit `i - 1`.
//! Members of a [`SetSystem`] are kept in colexicographic order, which for
//! bitmasks coincides with plain numeric order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a bitmask can hold.
pub const MAX_GROUND: usize = 64;

/// Bitmask over `[n]`.
pub type Mask = u64;

/// Mask of the full ground set `[n]`.
pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Elements (1-based) of a mask in increasing order.
pub fn mask_to_elements(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let bit = m.trailing_zeros() as usize;
        out.push(bit + 1);
        m &= m - 1;
    }
    out
}

/// Mask of 1-based elements. Elements outside `1..=n` are rejected.
pub fn elements_to_mask(n: usize, elements: &[usize]) -> Result<Mask> {
    let mut mask = 0;
    for &e in elements {
        if e == 0 || e > n {
            return Err(Error::InvalidSet(format!("element {e} outside [1, {n}]")));
        }
        mask |= 1u64 << (e - 1);
    }
    Ok(mask)
}

/// Cyclic distance between elements `i` and `j` of `[n]`.
pub fn cyclic_distance(n: usize, i: usize, j: usize) -> usize {
    let diff = i.abs_diff(j);
    diff.min(n - diff)
}

/// Iterator over all `k`-element submasks of `[n]` in increasing numeric order
/// (Gosper's hack).
pub fn k_masks(n: usize, k: usize) -> impl Iterator<Item = Mask> {
    let limit = if n >= 64 { None } else { Some(1u64 << n) };
    let mut next = if k == 0 || k > n {
        None
    } else if k == 64 {
        Some(u64::MAX)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        let c = cur & cur.wrapping_neg();
        let r = cur.wrapping_add(c);
        next = if r == 0 {
            None
        } else {
            let nxt = (((r ^ cur) >> 2) / c) | r;
            match limit {
                Some(l) if nxt >= l => None,
                _ => Some(nxt),
            }
        };
        Some(cur)
    })
}

/// A family of distinct nonempty subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n: usize,
    sets: Vec<Mask>,
}

impl SetSystem {
    /// Build a family from masks; duplicates are merged and the list sorted.
    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = Mask>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let full = full_mask(n);
        let mut sets: Vec<Mask> = masks.into_iter().collect();
        for &s in &sets {
            if s == 0 {
                return Err(Error::InvalidSet("the empty set is not a valid member".into()));
            }
            if s & !full != 0 {
                return Err(Error::InvalidSet(format!(
                    "{:?} is not a subset of [{n}]",
                    mask_to_elements(s)
                )));
            }
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(SetSystem { n, sets })
    }

    /// Build a family from lists of 1-based elements.
    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let masks = lists
            .iter()
            .map(|l| elements_to_mask(n, l))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(n, masks)
    }

    /// The empty family over `[n]`.
    pub fn empty(n: usize) -> Self {
        SetSystem { n, sets: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Mask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: Mask) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    /// Members as sorted lists of 1-based elements.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&s| mask_to_elements(s)).collect()
    }

    /// Keep the members satisfying `pred`. Order is preserved.
    pub fn filter(&self, mut pred: impl FnMut(Mask) -> bool) -> SetSystem {
        SetSystem {
            n: self.n,
            sets: self.sets.iter().copied().filter(|&s| pred(s)).collect(),
        }
    }

    /// Whether some member is contained in `set`.
    pub fn has_member_within(&self, set: Mask) -> bool {
        self.sets.iter().any(|&f| f & !set == 0)
    }

    /// Whether no member strictly contains another.
    pub fn is_antichain(&self) -> bool {
        self.sets
            .iter()
            .all(|&a| !self.sets.iter().any(|&b| b != a && b & !a == 0))
    }

    /// Number of members containing each element, indexed by `element - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &s in &self.sets {
            for e in mask_to_elements(s) {
                deg[e - 1] += 1;
            }
        }
        deg
    }
}

/// All `k`-element subsets of `[n]`.
pub fn k_subsets(n: usize, k: usize) -> Result<SetSystem> {
    if k < 1 || k > n {
        return Err(Error::InvalidRange(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if n > MAX_GROUND {
        return Err(Error::GroundTooLarge(n));
    }
    Ok(SetSystem {
        n,
        sets: k_masks(n, k).collect(),
    })
}

/// Whether every pair of elements of `set` is at cyclic distance `>= s`.
pub fn is_s_stable(n: usize, set: Mask, s: usize) -> bool {
    let elems = mask_to_elements(set);
    for (a, &i) in elems.iter().enumerate() {
        for &j in &elems[a + 1..] {
            if cyclic_distance(n, i, j) < s {
                return false;
            }
        }
    }
    true
}

/// Whether `set` avoids successive elements `i, i + 1` of the linear order on `[n]`.
pub fn is_almost_2_stable(set: Mask) -> bool {
    set & (set >> 1) == 0
}

/// Members that are `s`-stable in the cyclic order of `[n]`.
pub fn filter_s_stable(family: &SetSystem, s: usize) -> Result<SetSystem> {
    if s < 2 {
        return Err(Error::InvalidRange(format!("stability parameter must be >= 2, got {s}")));
    }
    let n = family.n();
    Ok(family.filter(|m| is_s_stable(n, m, s)))
}

/// Members without two successive elements in the linear order; `{1, n}` is allowed.
pub fn filter_almost_2_stable(family: &SetSystem) -> SetSystem {
    family.filter(is_almost_2_stable)
}

/// A partition of `[n]` into disjoint nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundPartition {
    n: usize,
    blocks: Vec<Mask>,
}

impl GroundPartition {
    pub fn new(n: usize, blocks: Vec<Mask>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        let mut seen = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if b & seen != 0 {
                return Err(Error::InvalidPartition("blocks overlap".into()));
            }
            seen |= b;
        }
        if seen != full_mask(n) {
            return Err(Error::InvalidPartition(format!("blocks do not cover [{n}]")));
        }
        Ok(GroundPartition { n, blocks })
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let blocks = lists
            .iter()
            .map(|l| elements_to_mask(n, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, blocks)
    }

    /// Blocks of `size` consecutive elements; the last block may be shorter.
    pub fn consecutive(n: usize, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidPartition("block size must be positive".into()));
        }
        let blocks = (0..n)
            .step_by(size)
            .map(|start| full_mask((start + size).min(n)) & !full_mask(start))
            .collect();
        Self::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Mask] {
        &self.blocks
    }
}

/// Members meeting every block of `partition` in at most one element.
pub fn filter_transversal(family: &SetSystem, partition: &GroundPartition) -> Result<SetSystem> {
    if partition.n() != family.n() {
        return Err(Error::PartitionMismatch {
            partition: partition.n(),
            family: family.n(),
        });
    }
    Ok(family.filter(|m| partition.blocks().iter().all(|&b| (m & b).count_ones() <= 1)))
}

/// Drop every member that strictly contains another member.
pub fn inclusion_minimal(family: &SetSystem) -> SetSystem {
    // Sorting by size lets each candidate be checked against the kept sets only.
    let mut by_size: Vec<Mask> = family.sets().to_vec();
    by_size.sort_by_key(|m| (m.count_ones(), *m));
    let mut kept: Vec<Mask> = Vec::new();
    for m in by_size {
        if !kept.iter().any(|&k| k & !m == 0) {
            kept.push(m);
        }
    }
    SetSystem::from_masks(family.n(), kept).expect("subfamily of a valid family")
}

/// JSON form: `{"n": int, "sets": [[int, ...], ...]}` with 1-based elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystemJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl From<&SetSystem> for SetSystemJson {
    fn from(f: &SetSystem) -> Self {
        SetSystemJson {
            n: f.n(),
            sets: f.to_lists(),
        }
    }
}

impl TryFrom<SetSystemJson> for SetSystem {
    type Error = Error;

    fn try_from(j: SetSystemJson) -> Result<Self> {
        SetSystem::from_lists(j.n, &j.sets)
    }
}

impl Serialize for SetSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetSystemJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SetSystemJson::deserialize(d)?;
        SetSystem::try_from(j).map_err(serde::de::Error::custom)
    }
}
