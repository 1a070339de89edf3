//! Order isomorphism search for small structures.

use alloc::vec;
use alloc::vec::Vec;

use crate::limits::{DEFAULT_ISO_GUARD, SizeGuard};
use crate::poset::{ElementId, Poset};

/// Finds an order isomorphism from `a` onto `b`, returned as the image of
/// each element of `a` in element order, or `None` when the two orders are
/// not isomorphic.
///
/// Backtracking search pruned by the pair (down-set size, up-set size),
/// which any isomorphism must preserve. Exponential in the worst case,
/// hence the [`DEFAULT_ISO_GUARD`] bound on the element count.
pub fn find_isomorphism(a: &Poset, b: &Poset) -> Result<Option<Vec<ElementId>>, SizeGuard> {
    find_isomorphism_with_guard(a, b, DEFAULT_ISO_GUARD)
}

pub fn find_isomorphism_with_guard(
    a: &Poset,
    b: &Poset,
    limit: usize,
) -> Result<Option<Vec<ElementId>>, SizeGuard> {
    let biggest = a.n().max(b.n());
    if biggest > limit {
        return Err(SizeGuard { n: biggest, limit });
    }
    if a.n() != b.n() {
        return Ok(None);
    }
    let n = a.n();
    let degrees = |p: &Poset| -> Vec<(usize, usize)> {
        p.elements()
            .map(|e| (p.down_set(e).len(), p.up_set(e).len()))
            .collect()
    };
    let deg_a = degrees(a);
    let deg_b = degrees(b);
    let mut sorted_a = deg_a.clone();
    let mut sorted_b = deg_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(None);
    }
    let mut map: Vec<ElementId> = vec![ElementId::new(0); n];
    let mut used = 0u64;
    if extend(a, b, &deg_a, &deg_b, &mut map, &mut used, 0) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn extend(
    a: &Poset,
    b: &Poset,
    deg_a: &[(usize, usize)],
    deg_b: &[(usize, usize)],
    map: &mut Vec<ElementId>,
    used: &mut u64,
    i: usize,
) -> bool {
    let n = a.n();
    if i == n {
        return true;
    }
    let ai = ElementId::new(i);
    for j in 0..n {
        if *used >> j & 1 == 1 || deg_a[i] != deg_b[j] {
            continue;
        }
        let bj = ElementId::new(j);
        let consistent = (0..i).all(|k| {
            let ak = ElementId::new(k);
            let bk = map[k];
            a.leq(ak, ai) == b.leq(bk, bj) && a.leq(ai, ak) == b.leq(bj, bk)
        });
        if !consistent {
            continue;
        }
        map[i] = bj;
        *used |= 1 << j;
        if extend(a, b, deg_a, deg_b, map, used, i + 1) {
            return true;
        }
        *used &= !(1 << j);
    }
    false
}

/// True when the two orders are isomorphic; see [`find_isomorphism`].
pub fn are_isomorphic(a: &Poset, b: &Poset) -> Result<bool, SizeGuard> {
    Ok(find_isomorphism(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn relabeled_pentagon_is_isomorphic() {
        // The pentagon with the incomparable element moved to another
        // position and fresh labels.
        let other = Poset::from_relation(
            &["bot", "p", "q", "lone", "top"],
            |i, j| {
                i == j
                    || matches!(
                        (i, j),
                        (0, 1) | (0, 2) | (0, 3) | (0, 4) | (1, 2) | (1, 4) | (2, 4) | (3, 4)
                    )
            },
        )
        .unwrap();
        let n5 = samples::n5();
        let map = find_isomorphism(&n5, &other).unwrap().expect("isomorphic");
        for x in n5.elements() {
            for y in n5.elements() {
                assert_eq!(n5.leq(x, y), other.leq(map[x.index()], map[y.index()]));
            }
        }
        assert!(are_isomorphic(&other, &n5).unwrap());
    }

    #[test]
    fn non_isomorphic_orders_of_equal_size() {
        let n5 = samples::n5();
        assert!(!are_isomorphic(&n5, &samples::chain(5)).unwrap());
        assert!(!are_isomorphic(&samples::antichain(3), &samples::chain(3)).unwrap());
    }

    #[test]
    fn size_mismatch_and_guard() {
        assert!(!are_isomorphic(&samples::chain(3), &samples::chain(4)).unwrap());
        assert!(are_isomorphic(&samples::chain(13), &samples::chain(13)).is_err());
    }

    #[test]
    fn lattice_isomorphism_classes_in_the_catalog() {
        // Distinct lattices up to isomorphism: 1, 1, 1, 2, 5, 15 for one
        // through six elements.
        let mut class_counts = Vec::new();
        for n in 1..=6 {
            let lattices = crate::catalog::all_lattices(n).unwrap();
            let mut reps: Vec<Poset> = Vec::new();
            for l in lattices {
                if !reps
                    .iter()
                    .any(|r| are_isomorphic(r, &l).unwrap())
                {
                    reps.push(l);
                }
            }
            class_counts.push(reps.len());
        }
        assert_eq!(class_counts, [1, 1, 1, 2, 5, 15]);
    }
}
