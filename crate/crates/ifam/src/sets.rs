//! k-element subsets of a ground segment and uniform families of them.
//!
//! Sets are kept as 128-bit masks (bit e set when element e is a member),
//! which makes intersection tests in the enumeration oracles single
//! instructions; the element-sequence view is derived at the interface.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::{binom, BigCount};
use crate::error::{Error, Result};

/// A subset of the ground set [1, n] with a canonical bitset representation.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    n: u32,
    mask: u128,
}

impl KSet {
    /// Builds a set from distinct elements of [1, n]; order is irrelevant.
    pub fn new(n: u32, elements: &[u32]) -> Result<Self> {
        if n > 127 {
            return Err(Error::GroundTooLarge(n));
        }
        let mut mask = 0u128;
        for &e in elements {
            if e < 1 || e > n {
                return Err(Error::ElementOutOfGround { element: e, lo: 1, n });
            }
            let bit = 1u128 << e;
            if mask & bit != 0 {
                return Err(Error::DuplicateMember);
            }
            mask |= bit;
        }
        Ok(KSet { n, mask })
    }

    /// Trusted constructor from a mask whose bits all lie in [1, n].
    pub fn from_mask(n: u32, mask: u128) -> Self {
        debug_assert!(n <= 127);
        debug_assert_eq!(mask & !ground_mask(1, n), 0, "mask outside [1, {n}]");
        KSet { n, mask }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, e: u32) -> bool {
        e <= 127 && self.mask & (1u128 << e) != 0
    }

    pub fn intersects(&self, other: &KSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.mask & other.mask != 0
    }

    pub fn is_subset_of(&self, other: &KSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn min_element(&self) -> Option<u32> {
        (self.mask != 0).then(|| self.mask.trailing_zeros())
    }

    pub fn max_element(&self) -> Option<u32> {
        (self.mask != 0).then(|| 127 - self.mask.leading_zeros())
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Vec<u32> {
        mask_elements(self.mask)
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Element-sequence order: sets compare as their increasing element lists.
/// For equal-size sets this coincides with "smaller minimum of the
/// symmetric difference first"; the full lexicographic order of the `lex`
/// module (with its containment clause) is a different relation.
impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_mask_seq(self.mask, other.mask)
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two element masks as increasing element sequences.
pub(crate) fn cmp_mask_seq(a: u128, b: u128) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let diff = a ^ b;
    let low = diff & diff.wrapping_neg();
    if a & low != 0 {
        // `a` owns the smallest differing element; `a` precedes unless `b`
        // is a proper prefix of `a` (all of b's elements below that point).
        if b & !a == 0 && b & !(low - 1) == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else {
        if a & !b == 0 && a & !(low - 1) == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

pub(crate) fn mask_elements(mask: u128) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let e = m.trailing_zeros();
        out.push(e);
        m &= m - 1;
    }
    out
}

/// Mask with bits lo..=hi set.
pub(crate) fn ground_mask(lo: u32, hi: u32) -> u128 {
    debug_assert!(lo >= 1 && hi <= 127);
    if lo > hi {
        return 0;
    }
    let ones = |b: u32| -> u128 {
        if b >= 127 {
            !0u128
        } else {
            (1u128 << (b + 1)) - 1
        }
    };
    ones(hi) & !ones(lo - 1)
}

/// A finite collection of distinct k-sets over a common ground [1, n],
/// kept sorted in element-sequence order.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: u32,
    k: u32,
    members: Vec<KSet>,
}

impl SetFamily {
    pub fn new(n: u32, k: u32, mut members: Vec<KSet>) -> Result<Self> {
        if n > 127 {
            return Err(Error::GroundTooLarge(n));
        }
        for m in &members {
            if m.n() != n {
                return Err(Error::GroundMismatch(m.n(), n));
            }
            if m.len() != k {
                return Err(Error::WrongCardinality { expected: k, found: m.len() });
            }
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember);
        }
        Ok(SetFamily { n, k, members })
    }

    pub fn empty(n: u32, k: u32) -> Self {
        SetFamily { n, k, members: Vec::new() }
    }

    /// Trusted constructor from member masks; sorts and dedups.
    pub(crate) fn from_masks(n: u32, k: u32, masks: impl IntoIterator<Item = u128>) -> Self {
        let mut members: Vec<KSet> =
            masks.into_iter().map(|m| KSet::from_mask(n, m)).collect();
        debug_assert!(members.iter().all(|m| m.len() == k));
        members.sort_unstable();
        members.dedup();
        SetFamily { n, k, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn masks(&self) -> impl Iterator<Item = u128> + '_ {
        self.members.iter().map(|m| m.mask())
    }

    /// Canonical nested-list view: members in sequence order, elements
    /// increasing.
    pub fn element_lists(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|m| m.elements()).collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}, k={}, {} members)", self.n, self.k, self.members.len())
    }
}

/// Iterator over all k-subsets of [lo, hi] in element-sequence order.
pub struct KSubsets {
    lo: u32,
    hi: u32,
    k: u32,
    current: Option<Vec<u32>>,
}

impl KSubsets {
    pub fn new(lo: u32, hi: u32, k: u32) -> Self {
        let width = if hi >= lo { hi - lo + 1 } else { 0 };
        let current = (k <= width).then(|| (lo..lo + k).collect());
        KSubsets { lo, hi, k, current }
    }
}

impl Iterator for KSubsets {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        let cur = self.current.as_mut()?;
        let mut mask = 0u128;
        for &e in cur.iter() {
            mask |= 1u128 << e;
        }
        let out = KSet::from_mask(self.hi, mask);
        // advance: rightmost position that can still move up
        let k = self.k as usize;
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            let cap = self.hi - (self.k - 1 - i as u32);
            if cur[i] < cap {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        let _ = self.lo;
        Some(out)
    }
}

/// All k-subsets of [1, n], each exactly once, in the order in which equal
/// size sets compare lexicographically (sets with smaller minimum of the
/// symmetric difference first).
pub fn enumerate_ksets(n: u32, k: u32) -> KSubsets {
    KSubsets::new(1, n, k)
}

/// Number of items `enumerate_ksets(n, k)` yields.
pub fn enumerate_count(n: u32, k: u32) -> BigCount {
    binom(n as i64, k as i64)
}
