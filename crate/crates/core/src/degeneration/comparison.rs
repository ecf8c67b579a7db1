//! The comparison identity between absolute invariants with divisor-supported
//! insertions and relative invariants of `(X, Z)`:
//!
//! `⟨α…, ι^!β_1, …, ι^!β_l⟩^X_A = Σ_𝒯 ⟨α… | 𝒯⟩^{X,Z}_A`,
//!
//! where `𝒯 = {(1,γ_B)}_B ∪ {(1,1_Z)}^{W-q}` runs over set partitions of the
//! `β`s into `q ≤ W = Z·A` blocks and `γ_B = ∏_{j∈B} β_j`.
//!
//! Normalization. A term of this sum is a relative invariant whose `q`
//! block-tails are labeled by their blocks and whose `W - q` unit tails are
//! not; it equals `W!/(W-q)!` times the invariant normalized by `1/|Aut|`.
//! Both conventions are exposed: [`RelativeSource::relative`] speaks the
//! automorphism-normalized one, the comparison sum the labeled one.
//!
//! Applying the identity to every coarsening of a family gives a system that
//! is unitriangular for refinement, which Möbius inversion on the set
//! partition lattice solves exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::CutSpec;
use crate::error::{GwError, Result};
use crate::partitions::{mobius, refines, set_partitions, SetPartition, WeightedPartition};
use crate::quantum::InvariantQuery;
use crate::rational::{falling_factorial, format, Rational};
use crate::relative::{evaluate, BundleClass, BundleSpec, RelInsertion, RelQuery};
use crate::ring::{cup_all, RingElement, Space, SpaceKind};

/// One summand shape of the comparison identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonPartition {
    pub blocks: SetPartition,
    /// `γ_B` for each block, in block order.
    pub gammas: Vec<RingElement>,
    /// Number `W - q` of unit-weight tails.
    pub fill: usize,
    /// The weighted partition with every `γ_B` replaced by its basis class.
    pub partition: WeightedPartition,
    /// Product of the coefficients of the `γ_B` on their basis classes.
    pub scale: Rational,
}

impl ComparisonPartition {
    pub fn q(&self) -> usize {
        self.blocks.len()
    }

    /// `W!/(W-q)!`, the ratio between labeled and automorphism-normalized values.
    pub fn labeling_factor(&self) -> Rational {
        let w = (self.q() + self.fill) as u64;
        Rational::from_integer(falling_factorial(w, self.q() as u64))
    }
}

/// Every `𝒯` for `betas` and contact weight `w`, dropping those with a
/// vanishing block product.
pub fn comparison_partitions(base: &Space, betas: &[RingElement], w: u32) -> Result<Vec<ComparisonPartition>> {
    if !betas.is_empty() && w < 1 {
        return Err(GwError::Parameter("divisor insertions need Z·A >= 1".into()));
    }
    for b in betas {
        if b.space() != base {
            return Err(GwError::SpaceMismatch(b.space().to_string(), base.to_string()));
        }
        if !b.is_homogeneous() {
            return Err(GwError::Parameter(format!("divisor insertion {b} is not homogeneous")));
        }
    }
    let mut out = Vec::new();
    'outer: for blocks in set_partitions(betas.len()) {
        if blocks.len() > w as usize {
            continue;
        }
        let mut gammas = Vec::new();
        let mut pairs = Vec::new();
        let mut scale = Rational::one();
        for b in &blocks {
            let g = cup_all(base, b.iter().map(|&j| &betas[j]))?;
            if g.is_zero() {
                continue 'outer;
            }
            let (idx, c) = g
                .as_monomial()
                .ok_or_else(|| GwError::Unsupported(format!("block product {g} is not a multiple of a basis class")))?;
            pairs.push((1, idx));
            scale *= c;
            gammas.push(g);
        }
        let fill = w as usize - blocks.len();
        pairs.extend(std::iter::repeat_n((1, base.unit_index()), fill));
        let partition = WeightedPartition::new(base, pairs)?;
        out.push(ComparisonPartition { blocks, gammas, fill, partition, scale });
    }
    Ok(out)
}

/// Supplier of relative invariants of `(X, Z)`.
pub trait RelativeSource: Sync {
    /// `⟨alphas | μ⟩^{X,Z}` normalized by `1/|Aut|`, for basis weights.
    fn relative(&self, degree: u32, alphas: &[RingElement], partition: &WeightedPartition) -> Result<Rational>;

    /// Value of one summand of the comparison identity.
    fn comparison_term(&self, degree: u32, alphas: &[RingElement], part: &ComparisonPartition) -> Result<Rational> {
        Ok(self.relative(degree, alphas, &part.partition)? * &part.scale * part.labeling_factor())
    }
}

/// Relative invariants of `(P^1, pt)` read off the bundle closed forms: `P^1`
/// is the bundle over a point, a point class of `P^1` is the zero section and
/// the unit is a pullback.
#[derive(Debug, Clone)]
pub struct ClosedForms {
    bundle: BundleSpec,
    ambient: Space,
}

impl ClosedForms {
    pub fn new(cut: &CutSpec) -> Result<ClosedForms> {
        if cut.ambient().kind() != SpaceKind::ProjectiveSpace(1) || cut.base().kind() != SpaceKind::Point {
            return Err(GwError::Unsupported(format!("{cut} is not itself a bundle testbed")));
        }
        Ok(ClosedForms { bundle: cut.bundle().clone(), ambient: cut.ambient().clone() })
    }
}

impl RelativeSource for ClosedForms {
    fn relative(&self, degree: u32, alphas: &[RingElement], partition: &WeightedPartition) -> Result<Rational> {
        let base = self.bundle.base();
        let mut scale = Rational::one();
        let mut ins = Vec::new();
        for a in alphas {
            if a.space() != &self.ambient {
                return Err(GwError::SpaceMismatch(a.space().to_string(), self.ambient.to_string()));
            }
            for (i, c) in a.terms() {
                scale *= c;
                ins.push(if i == self.ambient.unit_index() {
                    RelInsertion::Pullback(base.unit())
                } else {
                    RelInsertion::ZeroSection(base.unit())
                });
            }
            if a.terms().count() != 1 {
                return Err(GwError::Unsupported(format!("insertion {a} is not a basis multiple")));
            }
        }
        let q = RelQuery::new(&self.bundle, BundleClass::fiber(degree), ins, partition.clone())?;
        Ok(evaluate(&q)?.value() * scale)
    }
}

/// One row of a solved system: the relative invariant for a set partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedRow {
    pub part: ComparisonPartition,
    /// Labeled value, the summand of the comparison identity.
    pub value: Rational,
    /// Automorphism-normalized value per unit weight coefficient.
    pub aut_normalized: Rational,
}

/// The identity applied to one coarsening of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub blocks: SetPartition,
    pub query: InvariantQuery,
    pub lhs: Rational,
}

/// Relative invariants recovered from absolute ones.
#[derive(Debug, Clone)]
pub struct SolvedTable {
    pub degree: u32,
    pub alphas: Vec<RingElement>,
    pub betas: Vec<RingElement>,
    pub rows: Vec<SolvedRow>,
    pub equations: Vec<Equation>,
}

impl SolvedTable {
    /// The family obtained by multiplying the `β`s inside each block.
    pub fn merged_family(&self, blocks: &SetPartition) -> Result<Vec<RingElement>> {
        let base = self.betas.first().map(|b| b.space().clone());
        match base {
            None => Ok(Vec::new()),
            Some(base) => blocks.iter().map(|b| cup_all(&base, b.iter().map(|&j| &self.betas[j]))).collect(),
        }
    }

    fn matching(&self, degree: u32, alphas: &[RingElement]) -> Result<()> {
        if degree != self.degree || alphas != self.alphas.as_slice() {
            return Err(GwError::Unsupported("query lies outside the solved table".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "alphas": self.alphas.iter().map(RingElement::to_json).collect::<Vec<_>>(),
            "betas": self.betas.iter().map(RingElement::to_json).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "blocks": r.part.blocks,
                "partition": r.part.partition.to_json(),
                "value": format(&r.value),
                "aut_normalized": format(&r.aut_normalized),
            })).collect::<Vec<_>>(),
        })
    }
}

impl RelativeSource for SolvedTable {
    fn relative(&self, degree: u32, alphas: &[RingElement], partition: &WeightedPartition) -> Result<Rational> {
        self.matching(degree, alphas)?;
        self.rows
            .iter()
            .find(|r| &r.part.partition == partition)
            .map(|r| r.aut_normalized.clone())
            .ok_or_else(|| GwError::Unsupported(format!("partition {partition} is not in the solved table")))
    }

    fn comparison_term(&self, degree: u32, alphas: &[RingElement], part: &ComparisonPartition) -> Result<Rational> {
        self.matching(degree, alphas)?;
        self.rows
            .iter()
            .find(|r| r.part.partition == part.partition && r.part.q() == part.q())
            .map(|r| &r.value / &r.part.scale * &part.scale)
            .ok_or_else(|| GwError::Unsupported(format!("partition {} is not in the solved table", part.partition)))
    }
}

/// Recovers every relative invariant of the family by Möbius inversion,
/// without checking `V ≥ l`. The identity is then an algebraic statement
/// about the solved values only.
pub fn mobius_solve(cut: &CutSpec, degree: u32, alphas: &[RingElement], betas: &[RingElement]) -> Result<SolvedTable> {
    let w = cut.contact_weight(degree);
    let parts = comparison_partitions(cut.base(), betas, w)?;
    let all = set_partitions(betas.len());
    let equations: Vec<Equation> = all
        .par_iter()
        .map(|blocks| {
            let merged = blocks
                .iter()
                .map(|b| cup_all(cut.base(), b.iter().map(|&j| &betas[j])))
                .collect::<Result<Vec<_>>>()?;
            let query = cut.absolute_query(degree, alphas, &merged)?;
            let lhs = crate::quantum::gw_invariant(&query).map_err(|e| match e {
                GwError::Unsupported(m) => GwError::Unsupported(format!("{m}; blocking query {query}")),
                other => other,
            })?;
            Ok(Equation { blocks: blocks.clone(), query, lhs })
        })
        .collect::<Result<_>>()?;
    let rows = parts
        .into_iter()
        .map(|part| {
            let mut value = Rational::zero();
            for eq in equations.iter().filter(|e| refines(&part.blocks, &e.blocks)) {
                value += Rational::from_integer(mobius(&part.blocks, &eq.blocks)) * &eq.lhs;
            }
            let aut_normalized = &value / part.labeling_factor() / &part.scale;
            SolvedRow { part, value, aut_normalized }
        })
        .collect();
    Ok(SolvedTable { degree, alphas: alphas.to_vec(), betas: betas.to_vec(), rows, equations })
}

/// [`mobius_solve`] after checking `V ≥ l`.
pub fn solve_relative(cut: &CutSpec, degree: u32, alphas: &[RingElement], betas: &[RingElement]) -> Result<SolvedTable> {
    cut.check_hypothesis(betas.len())?;
    mobius_solve(cut, degree, alphas, betas)
}

/// One summand of a comparison report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermReport {
    pub part: ComparisonPartition,
    pub delta: BigInt,
    pub value: Rational,
}

impl TermReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "partition": self.part.partition.to_json(),
            "delta": self.delta.to_string(),
            "value": format(&self.value),
        })
    }
}

/// The right-hand side with its summands, without the `V ≥ l` check.
pub fn comparison_sum(
    source: &dyn RelativeSource,
    cut: &CutSpec,
    degree: u32,
    alphas: &[RingElement],
    betas: &[RingElement],
) -> Result<(Rational, Vec<TermReport>)> {
    let parts = comparison_partitions(cut.base(), betas, cut.contact_weight(degree))?;
    let terms: Vec<TermReport> = parts
        .into_par_iter()
        .map(|part| {
            let value = source.comparison_term(degree, alphas, &part)?;
            Ok(TermReport { delta: part.partition.delta_factor(), part, value })
        })
        .collect::<Result<_>>()?;
    let total = terms.iter().fold(Rational::zero(), |acc, t| acc + &t.value);
    Ok((total, terms))
}

/// `Σ_𝒯 ⟨α | 𝒯⟩`, refusing families with more than `V` divisor insertions.
pub fn comparison_rhs(
    source: &dyn RelativeSource,
    cut: &CutSpec,
    degree: u32,
    alphas: &[RingElement],
    betas: &[RingElement],
) -> Result<Rational> {
    cut.check_hypothesis(betas.len())?;
    Ok(comparison_sum(source, cut, degree, alphas, betas)?.0)
}

/// Both sides of the identity for one query.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub query: InvariantQuery,
    pub lhs: Rational,
    pub rhs: Rational,
    pub terms: Vec<TermReport>,
}

impl ComparisonReport {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "query": self.query.to_json(),
            "lhs": format(&self.lhs),
            "rhs": format(&self.rhs),
            "terms": self.terms.iter().map(TermReport::to_json).collect::<Vec<_>>(),
            "equal": self.equal(),
        })
    }
}

pub fn verify_comparison(
    cut: &CutSpec,
    degree: u32,
    alphas: &[RingElement],
    betas: &[RingElement],
    source: &dyn RelativeSource,
) -> Result<ComparisonReport> {
    cut.check_hypothesis(betas.len())?;
    let query = cut.absolute_query(degree, alphas, betas)?;
    let (rhs, terms) = comparison_sum(source, cut, degree, alphas, betas)?;
    let lhs = crate::quantum::gw_invariant(&query).map_err(|e| match e {
        GwError::Unsupported(m) => GwError::Unsupported(format!("{m}; rhs = {}", format(&rhs))),
        other => other,
    })?;
    Ok(ComparisonReport { query, lhs, rhs, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use num_traits::Zero as _;

    #[test]
    fn partition_shapes() {
        let p1 = Space::projective(1).unwrap();
        let pt = p1.point_class();
        let one = p1.unit();
        let single = comparison_partitions(&p1, std::slice::from_ref(&pt), 1).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].partition, WeightedPartition::parse(&p1, "(1,pt)").unwrap());
        let pair = comparison_partitions(&p1, &[pt.clone(), pt.clone()], 2).unwrap();
        assert_eq!(pair.len(), 1);
        assert_eq!(pair[0].q(), 2);
        let empty = comparison_partitions(&p1, &[], 2).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].partition, WeightedPartition::parse(&p1, "(1,1)+(1,1)").unwrap());
        assert_eq!(comparison_partitions(&p1, &[one.clone(), pt], 2).unwrap().len(), 2);
        assert!(comparison_partitions(&p1, &[one], 0).is_err());
    }

    struct Zero;
    impl RelativeSource for Zero {
        fn relative(&self, _: u32, _: &[RingElement], _: &WeightedPartition) -> Result<Rational> {
            Ok(Rational::zero())
        }
    }

    #[test]
    fn zero_source() {
        let cut = CutSpec::testbed("p2-line").unwrap();
        let one = cut.base().unit();
        assert_eq!(comparison_rhs(&Zero, &cut, 1, &[], &[one]).unwrap(), int(0));
    }

    #[test]
    fn p1_point_identity() {
        let cut = CutSpec::testbed("p1-pt").unwrap();
        let src = ClosedForms::new(&cut).unwrap();
        let pt = cut.ambient().point_class();
        let one = cut.base().unit();
        for m in 2..=6 {
            let alphas = vec![pt.clone(); m - 1];
            let r = verify_comparison(&cut, 1, &alphas, std::slice::from_ref(&one), &src).unwrap();
            assert_eq!(r.lhs, int(1));
            assert!(r.equal());
            assert_eq!(r.terms.len(), 1);
        }
    }

    #[test]
    fn line_round_trip() {
        let cut = CutSpec::testbed("p2-line").unwrap();
        let pt = cut.ambient().point_class();
        let one = cut.base().unit();
        let table = solve_relative(&cut, 1, &[pt.clone(), pt.clone()], std::slice::from_ref(&one)).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].value, int(1));
        let r = verify_comparison(&cut, 1, &[pt.clone(), pt.clone()], std::slice::from_ref(&one), &table).unwrap();
        assert!(r.equal());
        assert_eq!(r.lhs, int(1));
        let err = solve_relative(&cut, 1, &[pt], &[one.clone(), one]);
        assert!(matches!(err, Err(GwError::HypothesisViolated(_))));
    }

    #[test]
    fn conic_normalizations_agree() {
        // With W = 2 the families {} and {1_Z} describe the same relative
        // invariant ⟨pt^5 | (1,1),(1,1)⟩ in the automorphism normalization.
        let cut = CutSpec::testbed("p2-conic").unwrap();
        let pt = cut.ambient().point_class();
        let alphas = vec![pt; 5];
        let a = mobius_solve(&cut, 2, &alphas, &[]).unwrap();
        let b = mobius_solve(&cut, 2, &alphas, &[cut.base().unit()]).unwrap();
        assert_eq!(a.rows[0].aut_normalized, b.rows[0].aut_normalized);
        assert_eq!(a.rows[0].aut_normalized, int(1));
    }
}
