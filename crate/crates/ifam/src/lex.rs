//! The lexicographic order on subsets of a ground segment, initial
//! segments L(m, a) and L(S, a), exact segment sizes, strong intersection
//! of characteristic sets, and completion to maximal cross-intersecting
//! pairs.
//!
//! Throughout, `A <= B` means `A` is a superset of `B` or the minimal
//! element of `A \ B` is smaller than the minimal element of `B \ A`;
//! supersets come first, so the segment of sets preceding a boundary is
//! downward closed in this order. The containment clause is read
//! non-strictly: a set precedes itself, and `L(S, a)` with `|S| = a`
//! contains the boundary set.

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};

use crate::arith::{binom, BigCount};
use crate::error::{Error, Result};
use crate::sets::{ground_mask, mask_elements, KSet, KSubsets, SetFamily};

/// Ground segment convention: the full ground [1, n] or its tail [2, n].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ground {
    Full,
    Tail,
}

impl Ground {
    pub fn lo(self) -> u32 {
        match self {
            Ground::Full => 1,
            Ground::Tail => 2,
        }
    }

    pub fn mask(self, n: u32) -> u128 {
        ground_mask(self.lo(), n)
    }

    /// Number of elements in the ground segment.
    pub fn width(self, n: u32) -> u32 {
        n + 1 - self.lo()
    }
}

/// A characteristic set: the boundary of a lexicographic initial segment.
///
/// An "A-side" set in the convention of the diversity analysis contains
/// the element 1 and is declared on the full ground; its effective part on
/// [2, n] is what the segment is compared against.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharSet {
    n: u32,
    ground: Ground,
    mask: u128,
}

impl CharSet {
    pub fn new(n: u32, ground: Ground, elements: &[u32]) -> Result<Self> {
        if n > 127 {
            return Err(Error::GroundTooLarge(n));
        }
        let lo = ground.lo();
        let mut mask = 0u128;
        for &e in elements {
            if e < lo || e > n {
                return Err(Error::ElementOutOfGround { element: e, lo, n });
            }
            mask |= 1u128 << e;
        }
        Ok(CharSet { n, ground, mask })
    }

    pub(crate) fn from_mask(n: u32, ground: Ground, mask: u128) -> Self {
        debug_assert_eq!(mask & !ground.mask(n), 0);
        CharSet { n, ground, mask }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ground(&self) -> Ground {
        self.ground
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

    pub fn elements(&self) -> Vec<u32> {
        mask_elements(self.mask)
    }

    pub fn contains(&self, e: u32) -> bool {
        e <= 127 && self.mask & (1u128 << e) != 0
    }

    /// The part of the set lying in the given family ground.
    pub fn effective_mask(&self, family_ground: Ground) -> u128 {
        self.mask & family_ground.mask(self.n)
    }

    pub fn max_element(&self) -> Option<u32> {
        (self.mask != 0).then(|| 127 - self.mask.leading_zeros())
    }
}

impl std::fmt::Debug for CharSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CharSet{:?}", self.elements())
    }
}

/// Core comparison on element masks: `a` precedes-or-equals `b` when
/// `a` contains `b` or the smallest element owned by only one of them
/// belongs to `a`.
pub fn lex_le_masks(a: u128, b: u128) -> bool {
    if b & !a == 0 {
        return true; // a is a (non-strict) superset of b
    }
    let a_only = a & !b;
    if a_only == 0 {
        return false; // a is a proper subset: it follows b
    }
    let b_only = b & !a;
    a_only.trailing_zeros() < b_only.trailing_zeros()
}

/// Lexicographic precedes-or-equals on sets over a common ground.
/// Panics when the grounds differ; that is a usage error.
pub fn lex_less_eq(a: &KSet, b: &KSet) -> bool {
    assert_eq!(a.n(), b.n(), "lex comparison across different grounds");
    lex_le_masks(a.mask(), b.mask())
}

/// Lexicographic precedes-or-equals of a set against a characteristic-set
/// boundary, with the boundary first restricted to the family ground.
pub fn lex_le_boundary(a: &KSet, s: &CharSet, family_ground: Ground) -> bool {
    assert_eq!(a.n(), s.n(), "lex comparison across different grounds");
    lex_le_masks(a.mask(), s.effective_mask(family_ground))
}

/// Strict total order used to sort characteristic sets; ties only on
/// equal masks.
pub fn lex_cmp_masks(a: u128, b: u128) -> Ordering {
    if a == b {
        Ordering::Equal
    } else if lex_le_masks(a, b) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// The first `m` a-sets of the ground segment in lexicographic order.
pub fn lex_family_size(m: &BigCount, a: u32, n: u32, ground: Ground) -> Result<SetFamily> {
    let total = binom(ground.width(n) as i64, a as i64);
    if *m > total {
        return Err(Error::range(format!(
            "requested segment of {m} sets, only {total} {a}-sets exist"
        )));
    }
    let m = m.to_usize().expect("segment size fits usize after range check");
    let masks = KSubsets::new(ground.lo(), n, a).take(m).map(|s| s.mask());
    Ok(SetFamily::from_masks(n, a, masks))
}

/// All a-sets of the ground segment preceding the boundary `S` (restricted
/// to the ground). Boundaries larger than `a` are allowed: the containment
/// clause is then vacuous and only the min-rule contributes.
pub fn lex_family_boundary(s: &CharSet, a: u32, family_ground: Ground) -> Result<SetFamily> {
    let eff = s.effective_mask(family_ground);
    if eff == 0 {
        return Err(Error::EmptyCharSet);
    }
    let n = s.n();
    let masks = KSubsets::new(family_ground.lo(), n, a)
        .map(|x| x.mask())
        .filter(|&x| lex_le_masks(x, eff));
    Ok(SetFamily::from_masks(n, a, masks))
}

/// Exact size of `lex_family_boundary(s, a, ground)` without enumeration:
/// one binomial term per ground element missing from the boundary below
/// its maximum, plus the final containment term.
pub fn size_of_lex(s: &CharSet, a: u32, family_ground: Ground) -> Result<BigCount> {
    let n = s.n();
    let eff = s.effective_mask(family_ground);
    if eff == 0 {
        return Err(Error::EmptyCharSet);
    }
    Ok(size_of_lex_mask(eff, a, n, family_ground))
}

pub(crate) fn size_of_lex_mask(eff: u128, a: u32, n: u32, family_ground: Ground) -> BigCount {
    debug_assert!(eff != 0);
    let lo = family_ground.lo();
    let max_e = 127 - eff.leading_zeros();
    let mut total = BigCount::zero();
    let mut in_prefix = 0i64; // |S ∩ [lo, e]|
    for e in lo..max_e {
        if eff & (1u128 << e) != 0 {
            in_prefix += 1;
        } else {
            total += binom((n - e) as i64, a as i64 - in_prefix - 1);
        }
    }
    total += binom((n - max_e) as i64, a as i64 - eff.count_ones() as i64);
    total
}

/// Whether `S` and `T` strongly intersect on [2, n]: some j has
/// S ∩ T ∩ [2, j] = {j} and S ∪ T ⊇ [2, j]. Element 1 of an A-side set is
/// dropped before the test.
pub fn strongly_intersect(s: &CharSet, t: &CharSet) -> bool {
    assert_eq!(s.n(), t.n(), "strong intersection across different grounds");
    strongly_intersect_masks(s.effective_mask(Ground::Tail), t.effective_mask(Ground::Tail), 2)
}

/// Strong intersection on masks with the segment starting at `lo`; only
/// the smallest common element can witness it.
pub(crate) fn strongly_intersect_masks(s: u128, t: u128, lo: u32) -> bool {
    let common = s & t;
    if common == 0 {
        return false;
    }
    let j = common.trailing_zeros();
    let seg = ground_mask(lo, j);
    (s | t) & seg == seg
}

/// The partner characteristic set ([j] \ T) ∪ {j} for j = max(T); on the
/// tail ground this adjoins 1, matching the A-side convention.
pub(crate) fn partner_mask(t_mask: u128) -> u128 {
    debug_assert!(t_mask != 0);
    let j = 127 - t_mask.leading_zeros();
    (ground_mask(1, j) & !t_mask) | (1u128 << j)
}

/// Completes a characteristic set T ⊆ [2, n] to the partner S with
/// S ∩ T = {j} and S ∪ T = [j], so that L(S, a) and L(T, b) form a maximal
/// cross-intersecting pair.
pub fn complete_to_maximal(t: &CharSet, a: u32, b: u32) -> Result<CharSet> {
    let eff = t.effective_mask(Ground::Tail);
    if eff == 0 {
        return Err(Error::EmptyCharSet);
    }
    if t.len() > b {
        return Err(Error::range(format!("|T| = {} exceeds the arity b = {b}", t.len())));
    }
    let s = partner_mask(eff);
    if (s & ground_mask(2, t.n())).count_ones() > a {
        return Err(Error::range(format!(
            "partner of T has {} tail elements, exceeding the arity a = {a}",
            (s & ground_mask(2, t.n())).count_ones()
        )));
    }
    Ok(CharSet::from_mask(t.n(), Ground::Full, s))
}

/// Replaces a cross-intersecting pair by the equal-sized initial segments
/// (L(|A|, a), L(|B|, b)), which are again cross-intersecting.
pub fn lex_compress_pair(
    fa: &SetFamily,
    fb: &SetFamily,
    ground: Ground,
) -> Result<(SetFamily, SetFamily)> {
    if fa.n() != fb.n() {
        return Err(Error::GroundMismatch(fa.n(), fb.n()));
    }
    let lo = ground.lo();
    let in_ground = |f: &SetFamily| {
        f.members().iter().all(|m| m.min_element().map_or(true, |e| e >= lo))
    };
    if !in_ground(fa) || !in_ground(fb) {
        return Err(Error::range("family member outside the declared ground".into()));
    }
    for x in fa.members() {
        for y in fb.members() {
            if !x.intersects(y) {
                return Err(Error::NotCrossIntersecting);
            }
        }
    }
    let la = lex_family_size(&BigCount::from(fa.len()), fa.k(), fa.n(), ground)?;
    let lb = lex_family_size(&BigCount::from(fb.len()), fb.k(), fb.n(), ground)?;
    Ok((la, lb))
}

/// Kruskal–Katona lower bound for the shadow of a family of `m` k-sets:
/// write m in the standard k-cascade form and sum the terms with the lower
/// index dropped by one.
pub fn shadow_lower_bound(m: &BigCount, k: u32) -> BigCount {
    let mut bound = BigCount::zero();
    if k == 0 {
        return bound;
    }
    let mut rem = m.clone();
    let mut arity = k as i64;
    let mut prev_upper = i64::MAX;
    while !rem.is_zero() && arity >= 1 {
        // largest upper index whose binomial still fits the remainder
        let mut upper = arity;
        while upper + 1 < prev_upper && binom(upper + 1, arity) <= rem {
            upper += 1;
        }
        rem -= binom(upper, arity);
        bound += binom(upper, arity - 1);
        prev_upper = upper;
        arity -= 1;
    }
    debug_assert!(rem.is_zero(), "cascade decomposition must terminate exactly");
    bound
}
