//! Bounded search for nonzero point-constrained invariants.

use num_traits::Zero;

use super::{gw_invariant, virtual_dimension, InvariantQuery};
use crate::rational::Rational;
use crate::ring::{RingElement, Space, SpaceKind};

/// A nonzero invariant found by the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub query: InvariantQuery,
    pub value: Rational,
}

/// First nonzero `⟨pt, …, pt, extras⟩_d` with at least `k_points` point
/// insertions, `1 ≤ d ≤ max_degree`, and no descendents.
///
/// Extra insertions are drawn from basis classes of real degree at least 4:
/// identity insertions kill positive-degree invariants and divisor insertions
/// only rescale by `d`, so neither can turn a zero into a nonzero. Queries the
/// oracle refuses are skipped.
pub fn rc_certificate(space: &Space, k_points: usize, max_degree: u32) -> Option<Witness> {
    (1..=max_degree).find_map(|d| certificate_in_degree(space, k_points, d))
}

/// Same search restricted to one degree; with `k_points = 0` this decides
/// whether the degree is stably effective within the oracle's reach.
pub fn certificate_in_degree(space: &Space, k_points: usize, d: u32) -> Option<Witness> {
    if space.kind() == SpaceKind::Point || d == 0 {
        return None;
    }
    let pt_deg = 2 * space.complex_dimension() as i64;
    // Σ over extras of (deg - 2) that the dimension rule demands.
    let slack = virtual_dimension(space, d, k_points) - k_points as i64 * pt_deg;
    if slack < 0 || slack % 2 != 0 {
        return None;
    }
    let candidates: Vec<usize> = space.basis().iter().filter(|b| b.real_degree >= 4).map(|b| b.index).collect();
    let max_extras = (slack / 2) as usize;
    for count in 0..=max_extras {
        let mut found = None;
        multisets(&candidates, count, &mut Vec::new(), 0, &mut |extras| {
            if found.is_some() {
                return;
            }
            let used: i64 = extras.iter().map(|&i| space.basis()[i].real_degree as i64 - 2).sum();
            if used != slack {
                return;
            }
            let mut ins = vec![space.point_class(); k_points];
            ins.extend(extras.iter().map(|&i| RingElement::basis(space, i)));
            let query = InvariantQuery::new(space, d, ins).expect("basis insertions are homogeneous");
            if let Ok(value) = gw_invariant(&query) {
                if !value.is_zero() {
                    found = Some(Witness { query, value });
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn multisets(items: &[usize], count: usize, prefix: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if prefix.len() == count {
        f(prefix);
        return;
    }
    for i in start..items.len() {
        prefix.push(items[i]);
        multisets(items, count, prefix, i, f);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn projective_line_and_plane() {
        let p1 = Space::projective(1).unwrap();
        let w = rc_certificate(&p1, 2, 1).unwrap();
        assert_eq!(w.query.insertions().len(), 2);
        assert_eq!(w.value, int(1));

        let p2 = Space::projective(2).unwrap();
        let w = rc_certificate(&p2, 2, 1).unwrap();
        assert_eq!(w.query.degree(), 1);
        assert_eq!(w.query.insertions(), &[p2.point_class(), p2.point_class()]);
        assert_eq!(w.value, int(1));
    }

    #[test]
    fn grassmannian_three_points() {
        let g = Space::grassmannian(2, 4).unwrap();
        let w = rc_certificate(&g, 3, 2).unwrap();
        assert_eq!(w.query.degree(), 2);
        assert_eq!(w.query.insertions().len(), 3);
        assert_eq!(w.value, int(1));
        assert!(rc_certificate(&g, 3, 1).is_none());
    }

    #[test]
    fn point_has_no_certificate() {
        assert!(rc_certificate(&Space::point(), 0, 3).is_none());
        assert!(rc_certificate(&Space::point(), 1, 3).is_none());
    }

    #[test]
    fn stably_effective_degree_one() {
        for s in [Space::projective(1).unwrap(), Space::projective(2).unwrap(), Space::grassmannian(2, 4).unwrap()] {
            assert!(certificate_in_degree(&s, 0, 1).is_some(), "{s}");
        }
    }
}
