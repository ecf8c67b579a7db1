//! Degenerating `X` along a divisor `Z` into `X ∪_Z P(N ⊕ O)`.
//!
//! On the testbeds `H_2` has rank one, so the sum over classes that push
//! forward to the same class of `X` has a single element and vanishing cycles
//! play no role.

pub mod comparison;
pub mod lift;
pub mod terms;

use std::fmt;

use crate::error::{GwError, Result};
use crate::quantum::{gw_invariant, InvariantQuery};
use crate::rational::Rational;
use crate::relative::{min_normal_chern, BundleSpec, NormalBound, DEFAULT_SEARCH_BOUND};
use crate::ring::{DivisorDescriptor, RingElement, Space};

pub use comparison::{
    comparison_partitions, comparison_rhs, comparison_sum, mobius_solve, solve_relative, verify_comparison,
    ClosedForms, ComparisonPartition, ComparisonReport, RelativeSource, SolvedRow, SolvedTable, TermReport,
};
pub use lift::{find_divisor_witness, rc_lift, DivisorWitness, LiftReport, LiftRoute};
pub use terms::{enumerate_terms, DegenerationTerm, PrunedTerm, TermEnumeration, YComponent};

/// A cut along a divisor together with the bundle glued in on the other side.
///
/// Insertions split as follows: an ambient class `α` stays on the `X` side
/// and restricts to `π^*ι^*α` on the bundle side; a class `ι^!β` is supported
/// near `Z`, so it is zero on the `X` side and becomes `β·[Z]` on the bundle.
#[derive(Debug, Clone)]
pub struct CutSpec {
    divisor: DivisorDescriptor,
    bundle: BundleSpec,
    v: NormalBound,
}

impl fmt::Display for CutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.divisor.name())
    }
}

impl CutSpec {
    pub fn new(divisor: DivisorDescriptor) -> Result<CutSpec> {
        let bundle = BundleSpec::from_divisor(&divisor);
        if !divisor.is_positive() {
            return Err(GwError::Inapplicable(format!("{} is not asserted positive", divisor.name())));
        }
        let v = min_normal_chern(&divisor, DEFAULT_SEARCH_BOUND);
        Ok(CutSpec { divisor, bundle, v })
    }

    /// `p1-pt`, `p2-line`, `p2-conic` or `p<n>-hyperplane`.
    pub fn testbed(name: &str) -> Result<CutSpec> {
        let divisor = match name {
            "p1-pt" => DivisorDescriptor::hyperplane(1)?,
            "p2-line" => DivisorDescriptor::hyperplane(2)?,
            "p2-conic" => DivisorDescriptor::plane_conic()?,
            _ => {
                let n = name
                    .strip_prefix('p')
                    .and_then(|r| r.strip_suffix("-hyperplane"))
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| GwError::Parse(format!("unknown testbed {name:?}")))?;
                DivisorDescriptor::hyperplane(n)?
            }
        };
        CutSpec::new(divisor)
    }

    pub fn testbed_names() -> &'static [&'static str] {
        &["p1-pt", "p2-line", "p2-conic"]
    }

    pub fn divisor(&self) -> &DivisorDescriptor {
        &self.divisor
    }

    pub fn ambient(&self) -> &Space {
        self.divisor.ambient()
    }

    pub fn base(&self) -> &Space {
        self.divisor.divisor()
    }

    pub fn bundle(&self) -> &BundleSpec {
        &self.bundle
    }

    /// Minimal normal Chern number of the divisor.
    pub fn v(&self) -> NormalBound {
        self.v
    }

    /// `W = Z·A` for `A` of degree `degree` in `X`.
    pub fn contact_weight(&self, degree: u32) -> u32 {
        (self.divisor.intersection_degree() * degree as i64) as u32
    }

    /// Refuses families with more than `V` divisor insertions.
    pub fn check_hypothesis(&self, l: usize) -> Result<()> {
        if self.v.admits(l) {
            Ok(())
        } else {
            Err(GwError::HypothesisViolated(format!("{} divisor insertions exceed V = {} on {}", l, self.v, self)))
        }
    }

    /// `⟨α_1, …, α_μ, ι^!β_1, …, ι^!β_l⟩^X_A`.
    pub fn absolute_query(&self, degree: u32, alphas: &[RingElement], betas: &[RingElement]) -> Result<InvariantQuery> {
        let mut ins = alphas.to_vec();
        for b in betas {
            ins.push(self.divisor.shriek(b)?);
        }
        InvariantQuery::new(self.ambient(), degree, ins)
    }

    pub fn absolute(&self, degree: u32, alphas: &[RingElement], betas: &[RingElement]) -> Result<Rational> {
        gw_invariant(&self.absolute_query(degree, alphas, betas)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn testbeds() {
        let c = CutSpec::testbed("p1-pt").unwrap();
        assert_eq!(c.v(), NormalBound::Infinite);
        assert_eq!(c.contact_weight(3), 3);
        let c = CutSpec::testbed("p2-line").unwrap();
        assert_eq!(c.v(), NormalBound::Finite(1));
        assert!(c.check_hypothesis(1).is_ok());
        assert!(matches!(c.check_hypothesis(2), Err(GwError::HypothesisViolated(_))));
        let c = CutSpec::testbed("p2-conic").unwrap();
        assert_eq!(c.v(), NormalBound::Finite(4));
        assert_eq!(c.contact_weight(1), 2);
        assert_eq!(CutSpec::testbed("p3-hyperplane").unwrap().v(), NormalBound::Finite(1));
        assert!(CutSpec::testbed("gr-thing").is_err());
    }

    #[test]
    fn absolute_side() {
        let c = CutSpec::testbed("p2-line").unwrap();
        let pt = c.ambient().point_class();
        let one = c.base().unit();
        assert_eq!(c.absolute(1, &[pt.clone(), pt], &[one]).unwrap(), int(1));
    }
}
