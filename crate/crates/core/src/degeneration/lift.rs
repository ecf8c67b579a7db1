//! Lifting a point-constrained invariant of a positive divisor `Z` to `X`.
//!
//! Given a nonzero `⟨ι^*α…, pt×k, β…⟩^Z_A` with `r ≤ V + 1` insertions in a
//! minimal class (`c_1(N)·A = V`), the mixed absolute query on `X` with the
//! `Z`-insertions pushed forward by `ι^!` is either nonzero, and then it is
//! the witness, or the comparison identity exhibits a nonzero relative
//! invariant, and the minimal one under the key order is the witness.

use std::cmp::Ordering;

use num_traits::Zero;

use super::comparison::mobius_solve;
use super::CutSpec;
use crate::error::{GwError, Result};
use crate::partitions::{key_compare, InvariantKey};
use crate::quantum::rc::certificate_in_degree;
use crate::quantum::{gw_invariant, InvariantQuery};
use crate::rational::{format, Rational};
use crate::relative::NormalBound;
use crate::ring::{RingElement, Space};

/// A nonzero invariant of the divisor: `k` points and further classes `betas`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorWitness {
    /// Degree in `Z`.
    pub degree: u32,
    pub points: usize,
    pub betas: Vec<RingElement>,
    pub value: Rational,
}

impl DivisorWitness {
    pub fn query(&self, z: &Space) -> Result<InvariantQuery> {
        let mut ins = vec![z.point_class(); self.points];
        ins.extend(self.betas.iter().cloned());
        InvariantQuery::new(z, self.degree, ins)
    }

    /// `r`, the number of insertions.
    pub fn r(&self) -> usize {
        self.points + self.betas.len()
    }
}

/// Searches the minimal degree of `Z` for a nonzero `k`-point invariant.
pub fn find_divisor_witness(cut: &CutSpec, k: usize) -> Result<DivisorWitness> {
    let NormalBound::Finite(v) = cut.v() else {
        return Err(GwError::Inapplicable(format!("{cut} has no stably effective class")));
    };
    let nd = cut.divisor().normal_degree();
    if nd <= 0 || v as i64 % nd != 0 {
        return Err(GwError::Inapplicable(format!("no class of {cut} has normal Chern number {v}")));
    }
    let degree = (v as i64 / nd) as u32;
    let w = certificate_in_degree(cut.base(), k, degree)
        .ok_or_else(|| GwError::Inapplicable(format!("no nonzero {k}-point invariant of {} in degree {degree}", cut.base())))?;
    let betas = w.query.insertions()[k..].to_vec();
    Ok(DivisorWitness { degree, points: k, betas, value: w.value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftRoute {
    /// The mixed absolute invariant is itself nonzero.
    Direct,
    /// Read off the minimal nonzero relative invariant.
    ViaRelative,
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub witness: DivisorWitness,
    pub route: LiftRoute,
    /// The `k`-point query on `X`.
    pub query: InvariantQuery,
    pub value: Rational,
    /// The same query evaluated by the absolute oracle.
    pub oracle: Rational,
    /// Relative key chosen on the fallback route.
    pub relative: Option<InvariantKey>,
}

impl LiftReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "query": self.query.to_json(),
            "lhs": format(&self.value),
            "rhs": format(&self.oracle),
            "equal": self.value == self.oracle,
            "route": match self.route { LiftRoute::Direct => "direct", LiftRoute::ViaRelative => "relative" },
            "divisor_witness": {
                "degree": self.witness.degree,
                "points": self.witness.points,
                "betas": self.witness.betas.iter().map(RingElement::to_json).collect::<Vec<_>>(),
                "value": format(&self.witness.value),
            },
            "relative": self.relative.as_ref().map(InvariantKey::to_json),
            "terms": [],
        })
    }
}

/// Lifts `witness` to a nonzero `k`-point invariant of `X`.
pub fn rc_lift(cut: &CutSpec, witness: &DivisorWitness, k: usize) -> Result<LiftReport> {
    let z = cut.base();
    if witness.value.is_zero() || gw_invariant(&witness.query(z)?)?.is_zero() {
        return Err(GwError::Precondition("the divisor witness is zero".into()));
    }
    if witness.points != k {
        return Err(GwError::Parameter(format!("witness has {} points, asked for {k}", witness.points)));
    }
    let NormalBound::Finite(v) = cut.v() else {
        return Err(GwError::Inapplicable(format!("{cut} has no stably effective class")));
    };
    if cut.divisor().normal_degree() * witness.degree as i64 != v as i64 {
        return Err(GwError::Inapplicable("the witness class is not minimal".into()));
    }
    let target = v as usize + 1;
    if witness.r() > target {
        return Err(GwError::Inapplicable(format!("r = {} exceeds V + 1 = {target}", witness.r())));
    }
    // Divisor insertions rescale a positive-degree invariant by the degree,
    // so padding to r = V + 1 keeps the witness nonzero.
    let h = z
        .divisor_index()
        .map(|i| RingElement::basis(z, i))
        .ok_or_else(|| GwError::Inapplicable(format!("{z} has no divisor class")))?;
    let mut betas = witness.betas.clone();
    betas.extend(std::iter::repeat_n(h, target - witness.r()));
    let d_x = witness.degree * cut.divisor().pushforward_degree() as u32;
    let points = vec![cut.ambient().point_class(); k];

    let query = cut.absolute_query(d_x, &points, &betas)?;
    let value = gw_invariant(&query)?;
    if !value.is_zero() {
        return Ok(LiftReport {
            witness: witness.clone(),
            route: LiftRoute::Direct,
            query,
            oracle: value.clone(),
            value,
            relative: None,
        });
    }
    let table = mobius_solve(cut, d_x, &points, &betas)?;
    let keys: Vec<(InvariantKey, Rational)> = table
        .rows
        .iter()
        .filter(|r| !r.value.is_zero())
        .map(|r| (InvariantKey::new(d_x, points.clone(), r.part.partition.clone()), r.value.clone()))
        .collect();
    let (key, value) = minimal(keys).ok_or_else(|| GwError::Internal("the relative sum vanishes".into()))?;
    let oracle = gw_invariant(&query)?;
    Ok(LiftReport { witness: witness.clone(), route: LiftRoute::ViaRelative, query, value, oracle, relative: Some(key) })
}

/// The entry no other entry precedes.
fn minimal(keys: Vec<(InvariantKey, Rational)>) -> Option<(InvariantKey, Rational)> {
    keys.iter()
        .find(|(a, _)| keys.iter().all(|(b, _)| key_compare(b, a) != Some(Ordering::Less)))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::WeightedPartition;
    use crate::rational::int;

    #[test]
    fn line_lifts() {
        let cut = CutSpec::testbed("p2-line").unwrap();
        for k in [1, 2] {
            let w = find_divisor_witness(&cut, k).unwrap();
            assert_eq!(w.degree, 1);
            let r = rc_lift(&cut, &w, k).unwrap();
            assert_eq!(r.route, LiftRoute::Direct);
            assert!(!r.value.is_zero());
            assert_eq!(r.value, r.oracle);
            assert!(r.query.insertions().iter().filter(|c| **c == cut.ambient().point_class()).count() >= k);
        }
        let w = find_divisor_witness(&cut, 2).unwrap();
        assert_eq!(w.value, int(1));
    }

    #[test]
    fn zero_witness_refused() {
        let cut = CutSpec::testbed("p2-line").unwrap();
        let w = DivisorWitness { degree: 1, points: 1, betas: vec![], value: int(0) };
        assert!(matches!(rc_lift(&cut, &w, 1), Err(GwError::Precondition(_))));
        let w = DivisorWitness { degree: 1, points: 3, betas: vec![], value: int(1) };
        assert!(matches!(rc_lift(&cut, &w, 3), Err(GwError::Inapplicable(_))));
    }

    #[test]
    fn no_curves_in_a_point() {
        let cut = CutSpec::testbed("p1-pt").unwrap();
        assert!(matches!(find_divisor_witness(&cut, 1), Err(GwError::Inapplicable(_))));
    }

    #[test]
    fn minimal_entry() {
        let p1 = Space::projective(1).unwrap();
        let a = InvariantKey::new(1, vec![], WeightedPartition::parse(&p1, "(1,pt)").unwrap());
        let b = InvariantKey::new(1, vec![], WeightedPartition::parse(&p1, "(1,1)").unwrap());
        let (m, _) = minimal(vec![(b, int(2)), (a.clone(), int(1))]).unwrap();
        assert_eq!(m, a);
    }
}
