//! Family metrics and transformations: intersection predicates, degree and
//! diversity statistics, subset degrees, exact matching and covering
//! numbers, shadows, shifting, and the typical-minimal predicate.

use std::collections::HashSet;

use crate::arith::BigCount;
use crate::error::{Error, Result};
use crate::sets::{ground_mask, KSet, KSubsets, SetFamily};

/// Size, maximum degree and diversity of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyStats {
    pub size: BigCount,
    /// Smallest element attaining the maximum degree.
    pub max_degree_element: u32,
    pub delta: BigCount,
    pub gamma: BigCount,
    /// Whether all members share a common element.
    pub trivial: bool,
}

/// Per-element degrees indexed by element (index 0 unused).
pub fn degrees(f: &SetFamily) -> Vec<u64> {
    let mut deg = vec![0u64; f.n() as usize + 1];
    for m in f.members() {
        for e in m.elements() {
            deg[e as usize] += 1;
        }
    }
    deg
}

pub fn family_stats(f: &SetFamily) -> FamilyStats {
    let deg = degrees(f);
    // ties break toward the smallest element, so diversity is deterministic
    let (max_degree_element, delta) = deg
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, &d)| (e as u32, d))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .unwrap_or((1, 0));
    let size = f.len() as u64;
    let common = f
        .members()
        .iter()
        .fold(ground_mask(1, f.n()), |acc, m| acc & m.mask());
    FamilyStats {
        size: BigCount::from(size),
        max_degree_element,
        delta: BigCount::from(delta),
        gamma: BigCount::from(size - delta),
        trivial: common != 0,
    }
}

/// Pairwise intersection within one family.
pub fn is_intersecting(f: &SetFamily) -> bool {
    let ms: Vec<u128> = f.masks().collect();
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if a & b == 0 {
                return false;
            }
        }
    }
    true
}

/// Cross variant: every member of `f` meets every member of `g`.
pub fn is_cross_intersecting(f: &SetFamily, g: &SetFamily) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::GroundMismatch(f.n(), g.n()));
    }
    for a in f.members() {
        for b in g.members() {
            if !a.intersects(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimum degree over t-subsets, with a witness subset. Subsets outside
/// the union of the members have degree zero and are reported directly.
pub fn subset_degree_min(f: &SetFamily, t: u32) -> Result<(BigCount, KSet)> {
    min_t_degree(f, t, 0)
}

/// Minimum t-degree over subsets avoiding one element (pass 0 to allow
/// all); used by the averaging bound, which looks away from the most
/// popular element.
pub fn min_t_degree(f: &SetFamily, t: u32, avoid: u32) -> Result<(BigCount, KSet)> {
    let n = f.n();
    if t == 0 || t >= f.k() {
        return Err(Error::range(format!("subset degree needs 0 < t < k, got t={t}")));
    }
    let allowed = ground_mask(1, n) & !(if avoid == 0 { 0 } else { 1u128 << avoid });
    let union = f.members().iter().fold(0u128, |acc, m| acc | m.mask());
    let uncovered = allowed & !union;
    if uncovered != 0 {
        // a t-set through an uncovered element has degree 0
        let mut mask = 1u128 << uncovered.trailing_zeros();
        let mut rest = allowed & !mask;
        while mask.count_ones() < t {
            let e = rest.trailing_zeros();
            mask |= 1u128 << e;
            rest &= rest - 1;
        }
        return Ok((BigCount::zero(), KSet::from_mask(n, mask)));
    }
    let mut best: Option<(u64, u128)> = None;
    let lo = if avoid == 1 { 2 } else { 1 };
    for sub in KSubsets::new(lo, n, t) {
        let sm = sub.mask();
        if sm & !allowed != 0 {
            continue;
        }
        let d = f.masks().filter(|m| sm & !m == 0).count() as u64;
        match best {
            Some((bd, _)) if bd <= d => {}
            _ => best = Some((d, sm)),
        }
        if best.map(|(bd, _)| bd) == Some(0) {
            break;
        }
    }
    let (d, m) = best.expect("ground has at least t allowed elements");
    Ok((BigCount::from(d), KSet::from_mask(n, m)))
}

/// All (k-1)-sets contained in at least one member.
pub fn shadow(f: &SetFamily) -> SetFamily {
    assert!(f.k() >= 1, "shadow of a family of empty sets");
    let mut out: HashSet<u128> = HashSet::new();
    for m in f.members() {
        let mask = m.mask();
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros();
            out.insert(mask & !(1u128 << e));
            rest &= rest - 1;
        }
    }
    SetFamily::from_masks(f.n(), f.k() - 1, out)
}

/// Maximum number of pairwise disjoint members, by exact branch and bound.
pub fn matching_number(f: &SetFamily) -> u32 {
    let masks: Vec<u128> = f.masks().collect();
    let k = f.k().max(1);
    let n = f.n();
    fn rec(masks: &[u128], start: usize, used: u128, depth: u32, n: u32, k: u32, best: &mut u32) {
        *best = (*best).max(depth);
        let free = n - used.count_ones();
        let cap = depth + (free / k).min((masks.len() - start) as u32);
        if cap <= *best {
            return;
        }
        for i in start..masks.len() {
            if masks[i] & used == 0 {
                rec(masks, i + 1, used | masks[i], depth + 1, n, k, best);
            }
        }
    }
    let mut best = 0;
    rec(&masks, 0, 0, 0, n, k, &mut best);
    best
}

/// Minimum size of a set meeting every member, by iterative deepening on
/// the elements of the first unmet member.
pub fn covering_number(f: &SetFamily) -> u32 {
    if f.is_empty() {
        return 0;
    }
    let masks: Vec<u128> = f.masks().collect();
    fn feasible(masks: &[u128], chosen: u128, budget: u32) -> bool {
        let Some(&miss) = masks.iter().find(|&&m| m & chosen == 0) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let mut rest = miss;
        while rest != 0 {
            let e = rest.trailing_zeros();
            if feasible(masks, chosen | (1u128 << e), budget - 1) {
                return true;
            }
            rest &= rest - 1;
        }
        false
    }
    (0..=f.n()).find(|&s| feasible(&masks, 0, s)).expect("full ground always covers")
}

/// The (i, j)-shift: replace j by i in every member where the result does
/// not collide with an existing member.
pub fn shift(f: &SetFamily, i: u32, j: u32) -> Result<SetFamily> {
    if i < 1 || j <= i || j > f.n() {
        return Err(Error::range(format!("shift needs 1 <= i < j <= n, got i={i} j={j}")));
    }
    let present: HashSet<u128> = f.masks().collect();
    let bi = 1u128 << i;
    let bj = 1u128 << j;
    let shifted = f.masks().map(|m| {
        if m & bj != 0 && m & bi == 0 {
            let moved = (m & !bj) | bi;
            if present.contains(&moved) {
                m
            } else {
                moved
            }
        } else {
            m
        }
    });
    Ok(SetFamily::from_masks(f.n(), f.k(), shifted))
}

/// Applies all (i, j)-shifts until the family is a fixpoint.
pub fn shift_closure(f: &SetFamily) -> SetFamily {
    let mut cur = f.clone();
    loop {
        let mut changed = false;
        for j in 2..=cur.n() {
            for i in 1..j {
                let next = shift(&cur, i, j).expect("indices in range");
                if next != cur {
                    cur = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return cur;
        }
    }
}

/// Whether every (i, j)-shift leaves the family unchanged.
pub fn is_shifted(f: &SetFamily) -> bool {
    let present: HashSet<u128> = f.masks().collect();
    for m in f.masks() {
        let mut rest = m;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            for i in 1..j {
                if m & (1u128 << i) == 0 {
                    let moved = (m & !(1u128 << j)) | (1u128 << i);
                    if !present.contains(&moved) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Splits by membership of x: (sets through x with x removed, sets
/// avoiding x). Both halves keep the ground size; element x is unused in
/// them.
pub fn decompose(f: &SetFamily, x: u32) -> (SetFamily, SetFamily) {
    assert!(x >= 1 && x <= f.n(), "decompose element out of ground");
    let bx = 1u128 << x;
    let through = f.masks().filter(|m| m & bx != 0).map(|m| m & !bx);
    let through = SetFamily::from_masks(f.n(), f.k() - 1, through);
    let avoiding = f.masks().filter(|m| m & bx == 0);
    let avoiding = SetFamily::from_masks(f.n(), f.k(), avoiding);
    (through, avoiding)
}

/// Typical minimal: removing any one member strictly grows the common
/// intersection, and (unless |G| = 2) the number of elements covered at
/// least twice exceeds |G|.
pub fn is_typical_minimal(g: &SetFamily) -> Result<bool> {
    let z = g.len();
    if z < 2 {
        return Err(Error::range("typical minimality needs at least 2 members".into()));
    }
    let masks: Vec<u128> = g.masks().collect();
    let total: u128 = masks.iter().fold(!0u128, |acc, m| acc & m);
    for skip in 0..z {
        let rest = masks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .fold(!0u128, |acc, (_, m)| acc & m);
        if rest.count_ones() <= total.count_ones() {
            return Ok(false);
        }
    }
    if z == 2 {
        return Ok(true);
    }
    let mut once = 0u128;
    let mut twice = 0u128;
    for m in &masks {
        twice |= once & m;
        once |= m;
    }
    Ok(twice.count_ones() as usize > z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_family, Construction};
    use num_traits::Zero;

    fn ks(n: u32, e: &[u32]) -> KSet {
        KSet::new(n, e).unwrap()
    }

    fn fam(n: u32, k: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(n, k, sets.iter().map(|e| ks(n, e)).collect()).unwrap()
    }

    #[test]
    fn intersecting_basics() {
        let star = build_family(10, 4, &Construction::Star { center: 1 }).unwrap();
        assert!(is_intersecting(&star));
        let f = fam(4, 2, &[&[1, 2], &[3, 4]]);
        assert!(!is_intersecting(&f));
        assert!(is_intersecting(&SetFamily::empty(5, 2)));
    }

    #[test]
    fn cross_intersecting_basics() {
        let a = fam(6, 2, &[&[1, 2], &[1, 3]]);
        let b = fam(6, 3, &[&[1, 4, 5], &[1, 2, 6]]);
        assert!(is_cross_intersecting(&a, &b).unwrap());
        let c = fam(6, 3, &[&[4, 5, 6]]);
        assert!(!is_cross_intersecting(&a, &c).unwrap());
        let other = fam(7, 2, &[&[1, 2]]);
        assert!(is_cross_intersecting(&a, &other).is_err());
    }

    #[test]
    fn stats_star_and_hm() {
        let star = build_family(10, 4, &Construction::Star { center: 1 }).unwrap();
        let st = family_stats(&star);
        assert_eq!(st.size, BigCount::from(84u32));
        assert_eq!(st.delta, BigCount::from(84u32));
        assert!(st.gamma.is_zero());
        assert!(st.trivial);
        assert_eq!(st.max_degree_element, 1);

        let hm = build_family(10, 4, &Construction::HiltonMilner).unwrap();
        let st = family_stats(&hm);
        assert_eq!(st.size, BigCount::from(75u32));
        assert_eq!(st.delta, BigCount::from(74u32));
        assert_eq!(st.gamma, BigCount::from(1u32));
        assert!(!st.trivial);
    }

    #[test]
    fn stats_size_is_delta_plus_gamma() {
        for (n, k) in [(9u32, 4u32), (10, 4), (11, 5)] {
            for c in [
                Construction::Star { center: 1 },
                Construction::HiltonMilner,
                Construction::Majority3,
            ] {
                let f = build_family(n, k, &c).unwrap();
                let st = family_stats(&f);
                assert_eq!(st.size, st.delta.clone() + st.gamma.clone());
            }
        }
    }

    #[test]
    fn shadow_examples() {
        let f = fam(5, 3, &[&[1, 2, 3]]);
        let sh = shadow(&f);
        assert_eq!(sh.element_lists(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);

        // full layer maps to full layer
        let all: Vec<KSet> = crate::sets::enumerate_ksets(6, 3).collect();
        let full = SetFamily::new(6, 3, all).unwrap();
        assert_eq!(shadow(&full).len(), 15);
    }

    #[test]
    fn shadow_meets_kruskal_katona_bound_and_lex_attains() {
        use crate::lex::{lex_family_size, shadow_lower_bound, Ground};
        for n in 5..=9u32 {
            for k in 2..=4.min(n - 1) {
                let total: u64 = crate::arith::binom(n as i64, k as i64)
                    .try_into()
                    .unwrap();
                for m in 0..=total {
                    let seg =
                        lex_family_size(&BigCount::from(m), k, n, Ground::Full).unwrap();
                    let bound = shadow_lower_bound(&BigCount::from(m), k);
                    let got = BigCount::from(shadow(&seg).len());
                    assert!(got >= bound.clone(), "n={n} k={k} m={m}");
                    // initial segments attain the bound
                    assert_eq!(got, bound, "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn shift_examples() {
        let f = fam(5, 2, &[&[2, 3]]);
        let s = shift(&f, 1, 2).unwrap();
        assert_eq!(s.element_lists(), vec![vec![1, 3]]);

        let f = fam(5, 2, &[&[2, 3], &[1, 3]]);
        let s = shift(&f, 1, 2).unwrap();
        assert_eq!(s, f); // collision keeps both

        assert!(shift(&f, 2, 2).is_err());
        assert!(shift(&f, 3, 2).is_err());
    }

    #[test]
    fn shift_preserves_cardinality_and_matching() {
        let f = build_family(9, 3, &Construction::HiltonMilner).unwrap();
        for j in 2..=9 {
            for i in 1..j {
                let s = shift(&f, i, j).unwrap();
                assert_eq!(s.len(), f.len());
                assert!(matching_number(&s) <= matching_number(&f));
            }
        }
    }

    #[test]
    fn closure_is_shifted_fixpoint() {
        let f = fam(7, 3, &[&[2, 4, 6], &[3, 5, 7], &[2, 5, 7]]);
        let c = shift_closure(&f);
        assert_eq!(c.len(), f.len());
        assert!(is_shifted(&c));
        assert!(!is_shifted(&f));
    }

    #[test]
    fn matching_and_covering() {
        let star = build_family(10, 4, &Construction::Star { center: 1 }).unwrap();
        assert_eq!(matching_number(&star), 1);
        assert_eq!(covering_number(&star), 1);

        let a0 = build_family(13, 3, &Construction::A0 { s: 2 }).unwrap();
        assert_eq!(matching_number(&a0), 2);
        assert_eq!(covering_number(&a0), 2);

        assert_eq!(covering_number(&SetFamily::empty(5, 2)), 0);
        assert_eq!(matching_number(&SetFamily::empty(5, 2)), 0);

        // nonempty family: matching number 1 iff intersecting
        let tri = fam(5, 2, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(matching_number(&tri), 1);
        assert!(is_intersecting(&tri));
    }

    #[test]
    fn subset_degree_basics() {
        let star = build_family(10, 4, &Construction::Star { center: 1 }).unwrap();
        // the pair {1, e} lies in C(8, 2) members, but pairs avoiding 1
        // have smaller degree: C(7, 1) via {e, f} both != 1
        let (d1, _) = subset_degree_min(&star, 1).unwrap();
        assert_eq!(d1, BigCount::from(28u32)); // min over single elements
        let (d2, _) = subset_degree_min(&star, 2).unwrap();
        assert_eq!(d2, BigCount::from(7u32));
        assert!(subset_degree_min(&star, 4).is_err());
        assert!(subset_degree_min(&star, 0).is_err());
        // monotone: delta_{t+1} <= delta_t
        assert!(d2 <= d1);
    }

    #[test]
    fn subset_degree_uncovered_element() {
        let f = fam(6, 2, &[&[1, 2], &[1, 3]]);
        let (d, w) = subset_degree_min(&f, 1).unwrap();
        assert!(d.is_zero());
        assert!(w.elements()[0] > 3 || w.elements()[0] == 2 || w.elements()[0] == 3);
    }

    #[test]
    fn decompose_star_and_hm() {
        let (n, k) = (10u32, 4u32);
        let star = build_family(n, k, &Construction::Star { center: 1 }).unwrap();
        let (link, rest) = decompose(&star, 1);
        assert_eq!(link.len(), 84);
        assert_eq!(link.k(), 3);
        assert!(rest.is_empty());

        let hm = build_family(n, k, &Construction::HiltonMilner).unwrap();
        let (link, rest) = decompose(&hm, 1);
        assert_eq!(rest.len(), 1);
        assert_eq!(rest.members()[0].elements(), vec![2, 3, 4, 5]);
        assert_eq!(link.len() + rest.len(), hm.len());
        // diversity equals the part missing the top-degree element
        let st = family_stats(&hm);
        assert_eq!(st.gamma, BigCount::from(rest.len()));
        // decomposing an intersecting family yields a cross pair
        let link_k = SetFamily::new(
            n,
            k - 1,
            link.members().to_vec(),
        )
        .unwrap();
        assert!(is_cross_intersecting(&link_k, &rest).unwrap());
    }

    #[test]
    fn typical_minimal_cases() {
        let n = 10;
        // any two distinct k-sets
        let g = fam(n, 4, &[&[2, 3, 4, 5], &[2, 3, 4, 6]]);
        assert!(is_typical_minimal(&g).unwrap());
        // removing the third member leaves the intersection unchanged
        let g = fam(n, 4, &[&[2, 3, 4, 5], &[2, 3, 4, 6], &[2, 3, 4, 7]]);
        assert!(!is_typical_minimal(&g).unwrap());
        // brute-force check of the definition on a mixed example
        let g = fam(n, 4, &[&[2, 3, 4, 5], &[2, 3, 4, 6], &[3, 4, 5, 6]]);
        let expect = {
            let masks: Vec<u128> = g.masks().collect();
            let inter = |skip: Option<usize>| -> u128 {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| Some(*i) != skip)
                    .fold(!0u128, |a, (_, m)| a & m)
            };
            let total = inter(None).count_ones();
            let cond1 = (0..3).all(|i| inter(Some(i)).count_ones() > total);
            let covered2 = {
                let mut once = 0u128;
                let mut twice = 0u128;
                for m in &masks {
                    twice |= once & m;
                    once |= m;
                }
                twice.count_ones()
            };
            cond1 && covered2 > 3
        };
        assert_eq!(is_typical_minimal(&g).unwrap(), expect);
        assert!(is_typical_minimal(&fam(n, 4, &[&[2, 3, 4, 5]])).is_err());
    }
}
