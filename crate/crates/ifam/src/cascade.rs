//! Cascade representations of diversity values, the derived characteristic
//! sets, resistant numbers, resistant pairs (uniform and general variants),
//! and neutral chains — the breakpoints of the diversity-versus-size
//! frontier of intersecting families.

use std::cmp::Ordering;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{binom, BigCount};
use crate::error::{Error, Result};
use crate::lex::{lex_cmp_masks, partner_mask, size_of_lex_mask, CharSet, Ground};
use crate::sets::ground_mask;

/// One cascade term C(n - b, arity).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CascadeTerm {
    pub b: u32,
    pub arity: u32,
}

/// The unique greedy decomposition of a diversity value gamma as
/// sum_i C(n - b_i, n - k - i) with strictly increasing b_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeForm {
    pub n: u32,
    pub k: u32,
    pub terms: Vec<CascadeTerm>,
    pub value: BigCount,
}

/// Greedy (n-k-1)-cascade form of `gamma`; each prefix is maximal, which
/// makes the decomposition unique.
pub fn cascade_form(gamma: &BigCount, n: u32, k: u32) -> Result<CascadeForm> {
    if n <= 2 * k || k < 3 {
        return Err(Error::range(format!("cascade form needs n > 2k >= 6, got n={n} k={k}")));
    }
    if gamma.is_zero() {
        return Err(Error::range("cascade form of zero".into()));
    }
    let cap = binom((n - 1) as i64, (n - k - 1) as i64);
    if *gamma > cap {
        return Err(Error::range(format!("gamma exceeds the largest representable prefix {cap}")));
    }
    let mut terms = Vec::new();
    let mut rem = gamma.clone();
    let mut prev_b = 0u32;
    let mut i = 1u32;
    while !rem.is_zero() {
        let arity = (n - k).checked_sub(i).ok_or_else(|| {
            Error::range("cascade arity exhausted; gamma out of representable range".into())
        })?;
        // smallest b > prev_b whose term still fits the remainder
        let mut b = prev_b + 1;
        while binom((n - b) as i64, arity as i64) > rem {
            b += 1;
        }
        rem -= binom((n - b) as i64, arity as i64);
        terms.push(CascadeTerm { b, arity });
        prev_b = b;
        i += 1;
    }
    Ok(CascadeForm { n, k, terms, value: gamma.clone() })
}

impl CascadeForm {
    /// Recomputes the value from the terms; always equals `value`.
    pub fn reconstruct(&self) -> BigCount {
        self.terms
            .iter()
            .map(|t| binom((self.n - t.b) as i64, t.arity as i64))
            .fold(BigCount::zero(), |acc, x| acc + x)
    }

    pub fn b_set(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.b).collect()
    }

    pub fn last_b(&self) -> u32 {
        self.terms.last().expect("cascade form is never empty").b
    }
}

/// The derived pair (T_gamma, S_gamma): T_gamma collects the cascade
/// indices b_i, and S_gamma = {b_last} ∪ ([2, b_last] \ T_gamma), so the
/// two cover [2, b_last] and meet exactly in b_last.
pub fn derive_ts(cf: &CascadeForm) -> (CharSet, CharSet) {
    let mut t_mask = 0u128;
    for term in &cf.terms {
        t_mask |= 1u128 << term.b;
    }
    let last = cf.last_b();
    let s_mask = (ground_mask(2, last) & !t_mask) | (1u128 << last);
    let ground = if cf.terms[0].b >= 2 { Ground::Tail } else { Ground::Full };
    (
        CharSet::from_mask(cf.n, ground, t_mask),
        CharSet::from_mask(cf.n, ground, s_mask),
    )
}

/// Whether `gamma` is a resistant number: its cascade indices satisfy
/// b_i > 2i + 2 with |S_gamma| <= k and |T_gamma| <= k - 1, or gamma
/// equals C(n-4, k-3), which is declared resistant.
pub fn is_resistant_number(gamma: &BigCount, n: u32, k: u32) -> bool {
    if gamma.is_zero() {
        return false;
    }
    if *gamma == binom((n - 4) as i64, (k - 3) as i64) {
        return true;
    }
    let Ok(cf) = cascade_form(gamma, n, k) else {
        return false;
    };
    let s_b = cf.terms.len() as u32;
    if s_b > k - 1 {
        return false;
    }
    // |S_gamma| = b_last - |T_gamma|
    if cf.last_b() - s_b > k {
        return false;
    }
    cf.terms
        .iter()
        .enumerate()
        .all(|(idx, t)| t.b > 2 * (idx as u32 + 1) + 2)
}

/// All resistant numbers for (n, k) in increasing order, starting at 1 and
/// ending at C(n-4, k-3).
pub fn resistant_sequence(n: u32, k: u32) -> Result<Vec<BigCount>> {
    if n <= 2 * k || k < 3 {
        return Err(Error::range(format!("resistant numbers need n > 2k >= 6, got n={n} k={k}")));
    }
    let chain = ResistantChain::new(n, Variant::KUniform { k })?;
    let seq: Vec<BigCount> =
        chain.resistant_pairs().iter().map(|p| p.b_size.clone()).collect();
    debug_assert!(seq.windows(2).all(|w| w[0] < w[1]));
    Ok(seq)
}

/// Which resistant-pair definition applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// The intersecting-family setting: A-side arity k-1, B-side arity k,
    /// families on [2, n], A-side characteristic sets containing 1.
    KUniform { k: u32 },
    /// Cross-intersecting a-sets and b-sets on the full ground [n], a <= b.
    General { a: u32, b: u32 },
}

impl Variant {
    /// (A-side arity, B-side arity).
    pub fn arities(self) -> (u32, u32) {
        match self {
            Variant::KUniform { k } => (k - 1, k),
            Variant::General { a, b } => (a, b),
        }
    }

    pub fn ground(self) -> Ground {
        match self {
            Variant::KUniform { .. } => Ground::Tail,
            Variant::General { .. } => Ground::Full,
        }
    }

    /// First index of the prefix-balance range.
    fn balance_start(self) -> u32 {
        match self {
            Variant::KUniform { .. } => 4,
            Variant::General { a, b } => b - a + 2,
        }
    }

    /// Mask of the declared exceptional final pair (T, S).
    fn exceptional(self) -> (u128, u128) {
        match self {
            Variant::KUniform { .. } => {
                (ground_mask(2, 4), (1u128 << 1) | (1u128 << 4))
            }
            Variant::General { a, b } => {
                let j = b - a + 2;
                (ground_mask(1, j), (1u128 << 1) | (1u128 << j))
            }
        }
    }

    /// Mask of the post-chain sentinel set ({2,3}, or [b+1-a]).
    fn post_sentinel(self) -> u128 {
        match self {
            Variant::KUniform { .. } => ground_mask(2, 3),
            Variant::General { a, b } => ground_mask(1, b + 1 - a),
        }
    }
}

/// Whether (S, T) is a resistant pair under the given variant.
///
/// Structural part: S ∩ T = {j} and S ∪ T = [j] for j = max(T), with the
/// variant's arity caps. Balance part: for every i in the variant's index
/// range, the prefix of S stays strictly lighter than its complement
/// (shifted by the arities in the general variant). The variant's declared
/// exceptional pair passes unconditionally; pairs whose maximum lies below
/// the balance range are not resistant.
pub fn is_resistant_pair(s: &CharSet, t: &CharSet, variant: Variant) -> bool {
    let (a_cap, b_cap) = variant.arities();
    let s_mask = s.mask();
    let t_mask = t.mask();
    let (ex_t, ex_s) = variant.exceptional();
    if s_mask == ex_s && t_mask == ex_t {
        return true;
    }
    if t_mask == 0 {
        return false;
    }
    let j = 127 - t_mask.leading_zeros();
    if j < variant.balance_start() {
        return false;
    }
    if s_mask & t_mask != 1u128 << j {
        return false;
    }
    if s_mask | t_mask != ground_mask(1, j) {
        return false;
    }
    let s_size = match variant {
        // the A-side cap counts the full set including the element 1
        Variant::KUniform { .. } => s_mask.count_ones(),
        Variant::General { .. } => s_mask.count_ones(),
    };
    if s_size > a_cap + u32::from(matches!(variant, Variant::KUniform { .. })) {
        return false;
    }
    if t_mask.count_ones() > b_cap {
        return false;
    }
    let (shift_a, shift_b) = match variant {
        Variant::KUniform { .. } => (0i64, 0i64),
        Variant::General { a, b } => (a as i64, b as i64),
    };
    let mut in_s = 0i64;
    for i in 1..=j {
        if s_mask & (1u128 << i) != 0 {
            in_s += 1;
        }
        if i >= variant.balance_start() && !(in_s - shift_a < (i as i64 - in_s) - shift_b) {
            return false;
        }
    }
    true
}

/// How a pair entered the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// T_0 = [2, n] (or [n]): corresponds to the empty B-side family.
    Sentinel,
    Regular,
    Exceptional,
}

/// A resistant pair with its segment sizes cached.
#[derive(Clone, Debug)]
pub struct ResistantPair {
    pub s: CharSet,
    pub t: CharSet,
    pub j: u32,
    pub kind: PairKind,
    /// |L(S, a)| on the variant ground.
    pub a_size: BigCount,
    /// |L(T, b)| on the variant ground; for the k-uniform variant these
    /// are exactly the resistant numbers.
    pub b_size: BigCount,
}

/// All resistant pairs for a ground size, ordered by the lexicographic
/// order on T, preceded by the sentinel pair for the empty family.
#[derive(Clone, Debug)]
pub struct ResistantChain {
    pub n: u32,
    pub variant: Variant,
    pairs: Vec<ResistantPair>,
}

impl ResistantChain {
    pub fn new(n: u32, variant: Variant) -> Result<Self> {
        let (a, b) = variant.arities();
        match variant {
            Variant::KUniform { k } => {
                if k < 3 || n <= 2 * k {
                    return Err(Error::range(format!(
                        "resistant pairs need n > 2k >= 6, got n={n} k={k}"
                    )));
                }
            }
            Variant::General { a, b } => {
                if a == 0 || b == 0 || a > b || n <= a + b {
                    return Err(Error::range(format!(
                        "resistant pairs need 0 < a <= b and n > a + b, got n={n} a={a} b={b}"
                    )));
                }
            }
        }
        let ground = variant.ground();
        let lo = ground.lo();
        // every resistant T lies in a bounded prefix: j = max(T) satisfies
        // |T| <= b and |S| = j - |T| + 1 bounded by the A-side cap
        let j_max = match variant {
            Variant::KUniform { k } => 2 * k - 1,
            Variant::General { a, b } => a + b - 1,
        }
        .min(n);
        let width = j_max + 1 - lo;
        let mut pairs = Vec::new();
        for bits in 1u128..(1 << width) {
            let t_mask = bits << lo;
            let s_mask = partner_mask(t_mask);
            let t = CharSet::from_mask(n, ground, t_mask);
            let s_ground = match variant {
                Variant::KUniform { .. } => Ground::Full,
                Variant::General { .. } => Ground::Full,
            };
            let s = CharSet::from_mask(n, s_ground, s_mask);
            if is_resistant_pair(&s, &t, variant) {
                let j = 127 - t_mask.leading_zeros();
                let (ex_t, _) = variant.exceptional();
                let kind =
                    if t_mask == ex_t { PairKind::Exceptional } else { PairKind::Regular };
                let a_size = size_of_lex_mask(s_mask & ground.mask(n), a, n, ground);
                let b_size = size_of_lex_mask(t_mask, b, n, ground);
                pairs.push(ResistantPair { s, t, j, kind, a_size, b_size });
            }
        }
        pairs.sort_by(|x, y| lex_cmp_masks(x.t.mask(), y.t.mask()));

        // sentinel: T_0 is the whole ground, pairing with {1, n}
        let t0_mask = ground.mask(n);
        let s0_mask = partner_mask(t0_mask);
        let sentinel = ResistantPair {
            s: CharSet::from_mask(n, Ground::Full, s0_mask),
            t: CharSet::from_mask(n, ground, t0_mask),
            j: n,
            kind: PairKind::Sentinel,
            a_size: size_of_lex_mask(s0_mask & ground.mask(n), a, n, ground),
            b_size: BigCount::zero(),
        };
        let mut all = vec![sentinel];
        all.extend(pairs);
        Ok(ResistantChain { n, variant, pairs: all })
    }

    /// All pairs including the leading sentinel; index l gives T_l.
    pub fn pairs(&self) -> &[ResistantPair] {
        &self.pairs
    }

    /// The genuine resistant pairs T_1 < ... < T_m.
    pub fn resistant_pairs(&self) -> &[ResistantPair] {
        &self.pairs[1..]
    }

    /// Number of genuine resistant pairs.
    pub fn m(&self) -> usize {
        self.pairs.len() - 1
    }

    /// |L(S_l, a)| + |L(T_l, b)|: the extremal sum at window l.
    pub fn cap(&self, l: usize) -> BigCount {
        self.pairs[l].a_size.clone() + self.pairs[l].b_size.clone()
    }

    /// Window index l with b_size(T_{l-1}) < gamma <= b_size(T_l);
    /// `None` when gamma is zero or beyond the last pair.
    pub fn window_of(&self, gamma: &BigCount) -> Option<usize> {
        if gamma.is_zero() {
            return Some(0);
        }
        (1..self.pairs.len()).find(|&l| *gamma <= self.pairs[l].b_size)
    }

    /// Window index for a set T by lexicographic position:
    /// T_{l-1} < T <= T_l.
    pub fn window_of_set(&self, t: &CharSet) -> Option<usize> {
        let mask = t.effective_mask(self.variant.ground());
        for (l, p) in self.pairs.iter().enumerate() {
            match lex_cmp_masks(mask, p.t.mask()) {
                Ordering::Equal => return Some(l),
                Ordering::Less => {
                    return (l > 0).then_some(l);
                }
                Ordering::Greater => {}
            }
        }
        None
    }

    /// The post-chain sentinel T_{m+1}.
    pub fn post_sentinel(&self) -> CharSet {
        CharSet::from_mask(self.n, self.variant.ground(), self.variant.post_sentinel())
    }
}

/// Whether `t` is reachable from the resistant set `t_l` by repeatedly
/// adjoining the element 2 * (current size).
pub fn is_neutral(t: &CharSet, t_l: &CharSet) -> bool {
    let target = t.mask();
    let mut cur = t_l.mask();
    let n = t.n();
    loop {
        if cur == target {
            return true;
        }
        if cur.count_ones() >= target.count_ones() {
            return false;
        }
        let x = 2 * cur.count_ones();
        if x > n || cur & (1u128 << x) != 0 {
            return false;
        }
        cur |= 1u128 << x;
    }
}

/// Convenience: the resistant window bound for a diversity value, as the
/// pair (l, cap).
pub fn window_cap(gamma: &BigCount, n: u32, k: u32) -> Result<Option<(usize, BigCount)>> {
    let chain = ResistantChain::new(n, Variant::KUniform { k })?;
    Ok(chain.window_of(gamma).map(|l| (l, chain.cap(l))))
}

/// Largest diversity covered by the resistant chain, C(n-4, k-3).
pub fn max_resistant(n: u32, k: u32) -> BigCount {
    binom((n - 4) as i64, (k - 3) as i64)
}
