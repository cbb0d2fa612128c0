//! Explicit builders for the named extremal families: the full star, the
//! Hilton–Milner family, the sharpness families H_u, the two-base families
//! J_i, the lexicographic maximal families F_l, the matching-number
//! families A_0 and A_k, the majority family on three elements, and
//! generic builders from characteristic-set pairs and prescribed non-star
//! parts.

use num_traits::ToPrimitive;

use crate::analysis::is_intersecting;
use crate::arith::{binom, BigCount};
use crate::error::{Error, Result};
use crate::lex::{lex_family_boundary, lex_family_size, strongly_intersect, CharSet, Ground};
use crate::sets::{ground_mask, KSubsets, SetFamily};

/// A construction request; parameters are validated by `build_family`.
#[derive(Clone, Debug)]
pub enum Construction {
    /// All k-sets through a fixed element.
    Star { center: u32 },
    /// [2, k+1] plus all sets through 1 meeting it.
    HiltonMilner,
    /// Sets containing [2, u] plus sets through 1 meeting [2, u]; 3 <= u <= k.
    HU { u: u32 },
    /// [2, k+1] and [i+1, k+i] plus all sets through 1 meeting both.
    JI { i: u32 },
    /// The maximal intersecting family whose non-star part is the
    /// lexicographic segment L(l, k) on [2, n].
    FL { l: BigCount },
    /// All k-sets meeting [s].
    A0 { s: u32 },
    /// The complete k-th layer of [k(s+1) - 1].
    AK { s: u32 },
    /// All k-sets containing at least two of {1, 2, 3}.
    Majority3,
    /// Star side L(S, k-1) lifted through the element 1, plus L(T, k).
    FromPair { s: CharSet, t: CharSet },
    /// The maximal intersecting family whose non-star part is `g`.
    FromB { g: SetFamily },
}

pub fn build_family(n: u32, k: u32, spec: &Construction) -> Result<SetFamily> {
    if n > 127 || k == 0 || k > n {
        return Err(Error::range(format!("family parameters out of range: n={n} k={k}")));
    }
    match spec {
        Construction::Star { center } => {
            if *center < 1 || *center > n {
                return Err(Error::range(format!("star center {center} outside [1, {n}]")));
            }
            let bit = 1u128 << center;
            Ok(collect(n, k, |m| m & bit != 0))
        }
        Construction::HiltonMilner => {
            if n < k + 2 {
                return Err(Error::range(format!("needs n >= k + 2, got n={n} k={k}")));
            }
            let base = ground_mask(2, k + 1);
            let one = 1u128 << 1;
            Ok(collect(n, k, |m| m & base == base || (m & one != 0 && m & base != 0)))
        }
        Construction::HU { u } => {
            // the u-indexed sharpness family keeps [2, u+1] as its core, so
            // its size meets the diversity bound at gamma = C(n-u-1, n-k-1)
            // and u = k recovers the Hilton-Milner family
            if *u < 3 || *u > k {
                return Err(Error::range(format!("H_u needs 3 <= u <= k, got u={u} k={k}")));
            }
            if n <= 2 * k {
                return Err(Error::range(format!("H_u needs n > 2k, got n={n} k={k}")));
            }
            let base = ground_mask(2, u + 1);
            let one = 1u128 << 1;
            Ok(collect(n, k, |m| m & base == base || (m & one != 0 && m & base != 0)))
        }
        Construction::JI { i } => {
            if *i < 1 || *i > k {
                return Err(Error::range(format!("J_i needs 1 <= i <= k, got i={i}")));
            }
            if n < k + i {
                return Err(Error::range(format!("J_i needs n >= k + i, got n={n} k={k} i={i}")));
            }
            let b1 = ground_mask(2, k + 1);
            let b2 = ground_mask(i + 1, k + i);
            let one = 1u128 << 1;
            Ok(collect(n, k, |m| {
                m == b1 || m == b2 || (m & one != 0 && m & b1 != 0 && m & b2 != 0)
            }))
        }
        Construction::FL { l } => {
            let g = lex_family_size(l, k, n, Ground::Tail)?;
            max_family_with_b(&g)
        }
        Construction::A0 { s } => {
            if *s < 1 || n < k * (s + 1) {
                return Err(Error::range(format!(
                    "A_0 needs s >= 1 and n >= k(s+1), got n={n} k={k} s={s}"
                )));
            }
            let head = ground_mask(1, *s);
            Ok(collect(n, k, |m| m & head != 0))
        }
        Construction::AK { s } => {
            if *s < 1 || n < k * (s + 1) {
                return Err(Error::range(format!(
                    "A_k needs s >= 1 and n >= k(s+1), got n={n} k={k} s={s}"
                )));
            }
            let window = ground_mask(1, k * (s + 1) - 1);
            Ok(collect(n, k, |m| m & !window == 0))
        }
        Construction::Majority3 => {
            if n < 3 || k < 2 {
                return Err(Error::range("majority family needs n >= 3 and k >= 2".into()));
            }
            let head = ground_mask(1, 3);
            Ok(collect(n, k, |m| (m & head).count_ones() >= 2))
        }
        Construction::FromPair { s, t } => {
            if s.n() != n || t.n() != n {
                return Err(Error::GroundMismatch(s.n(), n));
            }
            if !strongly_intersect(s, t) {
                return Err(Error::NotCrossIntersecting);
            }
            let a_side = lex_family_boundary(s, k - 1, Ground::Tail)?;
            let b_side = lex_family_boundary(t, k, Ground::Tail)?;
            let one = 1u128 << 1;
            let masks = a_side.masks().map(|m| m | one).chain(b_side.masks());
            Ok(SetFamily::from_masks(n, k, masks))
        }
        Construction::FromB { g } => max_family_with_b(g),
    }
}

/// The unique maximal intersecting family whose part avoiding 1 equals
/// `g`: adjoins {1} ∪ A for every (k-1)-set A of [2, n] meeting all of
/// `g`. `g` itself must be intersecting and avoid the element 1.
pub fn max_family_with_b(g: &SetFamily) -> Result<SetFamily> {
    let n = g.n();
    let k = g.k();
    if g.members().iter().any(|m| m.contains(1)) {
        return Err(Error::range("non-star part must avoid the element 1".into()));
    }
    if !is_intersecting(g) {
        return Err(Error::NotIntersecting);
    }
    let g_masks: Vec<u128> = g.masks().collect();
    let one = 1u128 << 1;
    let star_side = KSubsets::new(2, n, k - 1)
        .map(|a| a.mask())
        .filter(|a| g_masks.iter().all(|b| a & b != 0))
        .map(|a| a | one);
    let masks: Vec<u128> = star_side.chain(g_masks.iter().copied()).collect();
    Ok(SetFamily::from_masks(n, k, masks))
}

fn collect(n: u32, k: u32, pred: impl Fn(u128) -> bool) -> SetFamily {
    SetFamily::from_masks(n, k, KSubsets::new(1, n, k).map(|s| s.mask()).filter(|&m| pred(m)))
}

/// Expected cardinality of a construction where a closed form exists,
/// as a cross-check against the bounds module.
pub fn expected_size(n: u32, k: u32, spec: &Construction) -> Option<BigCount> {
    let n_ = n as i64;
    let k_ = k as i64;
    match spec {
        Construction::Star { .. } => Some(binom(n_ - 1, k_ - 1)),
        Construction::HiltonMilner => {
            Some(binom(n_ - 1, k_ - 1) - binom(n_ - k_ - 1, k_ - 1) + 1u32)
        }
        Construction::JI { i } => {
            let i_ = *i as i64;
            if *i == 1 {
                return expected_size(n, k, &Construction::HiltonMilner);
            }
            Some(
                binom(n_ - 1, k_ - 1) + 2u32 + binom(n_ - k_ - i_, k_ - 1)
                    - binom(n_ - k_ - 1, k_ - 1) * 2u32,
            )
        }
        Construction::A0 { s } => Some(binom(n_, k_) - binom(n_ - *s as i64, k_)),
        Construction::AK { s } => Some(binom((k * (s + 1) - 1) as i64, k_)),
        Construction::Majority3 => {
            Some(binom(n_ - 2, k_ - 2) + binom(n_ - 3, k_ - 2) * 2u32)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{covering_number, family_stats, matching_number};
    use num_traits::{One, Zero};

    #[test]
    fn star_is_trivial() {
        let f = build_family(10, 4, &Construction::Star { center: 1 }).unwrap();
        assert_eq!(f.len(), 84);
        let st = family_stats(&f);
        assert!(st.trivial && st.gamma.is_zero());
        assert_eq!(covering_number(&f), 1);
        assert_eq!(matching_number(&f), 1);
    }

    #[test]
    fn hilton_milner_shape() {
        let f = build_family(10, 4, &Construction::HiltonMilner).unwrap();
        assert_eq!(f.len(), 75);
        assert!(is_intersecting(&f));
        let st = family_stats(&f);
        assert_eq!(st.gamma, BigCount::one());
        assert!(!st.trivial);
        assert_eq!(
            BigCount::from(f.len()),
            expected_size(10, 4, &Construction::HiltonMilner).unwrap()
        );
    }

    #[test]
    fn hm_small_k() {
        // C(6,2) - C(3,2) + 1 = 13
        let f = build_family(7, 3, &Construction::HiltonMilner).unwrap();
        assert_eq!(f.len(), 13);
    }

    #[test]
    fn ji_sizes_and_diversity() {
        let f = build_family(12, 4, &Construction::JI { i: 2 }).unwrap();
        assert_eq!(f.len(), 117);
        assert!(is_intersecting(&f));
        let st = family_stats(&f);
        assert_eq!(st.gamma, BigCount::from(2u32));

        for i in 2..=4u32 {
            let f = build_family(12, 4, &Construction::JI { i }).unwrap();
            assert_eq!(
                BigCount::from(f.len()),
                expected_size(12, 4, &Construction::JI { i }).unwrap(),
                "i={i}"
            );
            assert_eq!(family_stats(&f).gamma, BigCount::from(2u32));
        }

        // J_1 degenerates to the Hilton–Milner family
        let j1 = build_family(12, 4, &Construction::JI { i: 1 }).unwrap();
        let hm = build_family(12, 4, &Construction::HiltonMilner).unwrap();
        assert_eq!(j1, hm);
    }

    #[test]
    fn ji_shrinks_with_i() {
        // J_2 is the strict maximum; the tail is non-increasing and
        // strictly decreasing while the inclusion-exclusion term is live
        for (n, k) in [(11u32, 4u32), (12, 4), (11, 5), (14, 5)] {
            let sizes: Vec<usize> = (2..=k)
                .map(|i| build_family(n, k, &Construction::JI { i }).unwrap().len())
                .collect();
            assert!(sizes.windows(2).all(|w| w[0] >= w[1]), "n={n} k={k}: {sizes:?}");
            for w in sizes.windows(2) {
                assert!(w[0] > w[1] || w[0] == w[1], "{sizes:?}");
            }
            for (idx, w) in sizes.windows(2).enumerate() {
                let i = idx as u32 + 2;
                if n as i64 - (k + i) as i64 >= (k - 1) as i64 {
                    assert!(w[0] > w[1], "n={n} k={k} i={i}: {sizes:?}");
                }
            }
            assert!(sizes[0] > *sizes.last().unwrap() || k == 2);
        }
    }

    #[test]
    fn hu_matches_eq1_rhs() {
        for (n, k) in [(10u32, 4u32), (12, 5)] {
            for u in 3..=k {
                let f = build_family(n, k, &Construction::HU { u }).unwrap();
                let expect = binom(n as i64 - 1, k as i64 - 1)
                    + binom((n - u - 1) as i64, (n - k - 1) as i64)
                    - binom((n - u - 1) as i64, (k - 1) as i64);
                assert_eq!(BigCount::from(f.len()), expect, "u={u}");
                assert!(is_intersecting(&f));
            }
            // u = k recovers the Hilton-Milner family itself
            let hk = build_family(n, k, &Construction::HU { u: k }).unwrap();
            let hm = build_family(n, k, &Construction::HiltonMilner).unwrap();
            assert_eq!(hk, hm);
        }
    }

    #[test]
    fn majority_family() {
        let f = build_family(10, 4, &Construction::Majority3).unwrap();
        assert_eq!(f.len(), 70);
        let st = family_stats(&f);
        assert_eq!(st.gamma, BigCount::from(21u32)); // C(7, 2)
        assert!(is_intersecting(&f));
    }

    #[test]
    fn a0_and_ak() {
        let a0 = build_family(13, 3, &Construction::A0 { s: 2 }).unwrap();
        assert_eq!(
            BigCount::from(a0.len()),
            expected_size(13, 3, &Construction::A0 { s: 2 }).unwrap()
        );
        assert_eq!(matching_number(&a0), 2);
        assert_eq!(covering_number(&a0), 2);

        let ak = build_family(13, 3, &Construction::AK { s: 2 }).unwrap();
        assert_eq!(ak.len(), 56); // C(8, 3)
        assert_eq!(matching_number(&ak), 2);
        assert!(covering_number(&ak) > 2);
        assert!(build_family(8, 3, &Construction::A0 { s: 2 }).is_err());
    }

    #[test]
    fn fl_families() {
        let (n, k) = (9u32, 4u32);
        // F_0 is the full star
        let f0 = build_family(n, k, &Construction::FL { l: BigCount::zero() }).unwrap();
        let star = build_family(n, k, &Construction::Star { center: 1 }).unwrap();
        assert_eq!(f0, star);
        // F_1 is the Hilton–Milner family
        let f1 = build_family(n, k, &Construction::FL { l: BigCount::one() }).unwrap();
        let hm = build_family(n, k, &Construction::HiltonMilner).unwrap();
        assert_eq!(f1, hm);
        // F_2 is isomorphic to J_2; at these parameters literally equal
        // sizes
        let f2 = build_family(n, k, &Construction::FL { l: BigCount::from(2u32) }).unwrap();
        let j2 = build_family(n, k, &Construction::JI { i: 2 }).unwrap();
        assert_eq!(f2.len(), j2.len());
        // non-star part of F_l is the lex segment
        let (_, rest) = crate::analysis::decompose(&f2, 1);
        let seg = lex_family_size(&BigCount::from(2u32), k, n, Ground::Tail).unwrap();
        assert_eq!(rest, seg);
    }

    #[test]
    fn from_b_unwinds_to_hm() {
        let (n, k) = (10u32, 4u32);
        let base = SetFamily::new(n, k, vec![crate::sets::KSet::new(n, &[2, 3, 4, 5]).unwrap()])
            .unwrap();
        let f = max_family_with_b(&base).unwrap();
        let hm = build_family(n, k, &Construction::HiltonMilner).unwrap();
        assert_eq!(f, hm);

        // rejects a non-intersecting non-star part
        let bad = SetFamily::new(
            n,
            k,
            vec![
                crate::sets::KSet::new(n, &[2, 3, 4, 5]).unwrap(),
                crate::sets::KSet::new(n, &[6, 7, 8, 9]).unwrap(),
            ],
        )
        .unwrap();
        assert!(max_family_with_b(&bad).is_err());
    }

    #[test]
    fn from_pair_diversity_matches_segment() {
        use crate::lex::size_of_lex;
        let (n, k) = (10u32, 4u32);
        let s = CharSet::new(n, Ground::Full, &[1, 5]).unwrap();
        let t = CharSet::new(n, Ground::Tail, &[2, 3, 4, 5]).unwrap();
        let f = build_family(n, k, &Construction::FromPair { s, t }).unwrap();
        assert!(is_intersecting(&f));
        let st = family_stats(&f);
        assert_eq!(st.gamma, size_of_lex(&t, k, Ground::Tail).unwrap());

        // a non-strongly-intersecting pair is rejected
        let s2 = CharSet::new(n, Ground::Full, &[1, 3]).unwrap();
        let t2 = CharSet::new(n, Ground::Tail, &[4, 5]).unwrap();
        assert!(build_family(n, k, &Construction::FromPair { s: s2, t: t2 }).is_err());
    }
}
