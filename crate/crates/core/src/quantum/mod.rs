//! Genus-zero absolute invariants of the testbed spaces.
//!
//! The oracle is partial on purpose. A query is reduced by the dimension rule,
//! the fundamental class axiom and the divisor axiom; what is left must be a
//! shape with a known closed answer (the line count on `P^1`, plane-curve
//! counts on `P^2`, three-point structure constants of small quantum
//! cohomology elsewhere). Anything else is refused.

pub mod rc;
pub mod rim_hook;
pub mod wdvv;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{GwError, Result};
use crate::rational::Rational;
use crate::ring::{RingElement, Space, SpaceKind};

pub use rc::{rc_certificate, Witness};
pub use rim_hook::{rim_hook_product, QuantumClass};
pub use wdvv::{wdvv_nd, wdvv_table};

/// `d` times the curve generator of `space`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub space: Space,
    pub degree: u32,
}

impl CurveClass {
    pub fn new(space: &Space, degree: u32) -> Result<CurveClass> {
        if degree > 0 && space.kind() == SpaceKind::Point {
            return Err(GwError::Parameter("a point carries no curve classes".into()));
        }
        Ok(CurveClass { space: space.clone(), degree })
    }

    /// `c_1(TX)` evaluated on the class.
    pub fn chern_number(&self) -> u64 {
        self.degree as u64 * self.space.first_chern_number() as u64
    }
}

/// `⟨α_1, …, α_k⟩_{0,A}` with homogeneous insertions.
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantQuery {
    class: CurveClass,
    insertions: Vec<RingElement>,
}

impl fmt::Debug for InvariantQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for InvariantQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ins: Vec<String> = self.insertions.iter().map(|a| a.to_string()).collect();
        write!(f, "<{}>^{{{}}}_{}", ins.join(", "), self.class.space, self.class.degree)
    }
}

impl InvariantQuery {
    pub fn new(space: &Space, degree: u32, insertions: Vec<RingElement>) -> Result<InvariantQuery> {
        let class = CurveClass::new(space, degree)?;
        for a in &insertions {
            if a.space() != space {
                return Err(GwError::SpaceMismatch(a.space().to_string(), space.to_string()));
            }
            if !a.is_homogeneous() {
                return Err(GwError::Parameter(format!("insertion {a} is not homogeneous")));
            }
        }
        Ok(InvariantQuery { class, insertions })
    }

    /// Parses comma-separated class labels, e.g. `pt,pt,h`.
    pub fn parse(space: &Space, degree: u32, insertions: &str) -> Result<InvariantQuery> {
        let ins = insertions
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| space.parse_class(s))
            .collect::<Result<Vec<_>>>()?;
        InvariantQuery::new(space, degree, ins)
    }

    pub fn space(&self) -> &Space {
        &self.class.space
    }

    pub fn degree(&self) -> u32 {
        self.class.degree
    }

    pub fn insertions(&self) -> &[RingElement] {
        &self.insertions
    }

    /// Sum of the real degrees of the nonzero insertions.
    pub fn insertion_degree(&self) -> i64 {
        self.insertions.iter().map(|a| a.degree().unwrap_or(0) as i64).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space().to_string(),
            "degree": self.degree(),
            "insertions": self.insertions.iter().map(RingElement::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Real virtual dimension `2 c_1(A) + 2(n - 3) + 2k` in genus zero.
pub fn virtual_dimension(space: &Space, degree: u32, k: usize) -> i64 {
    2 * (degree as i64) * space.first_chern_number() as i64 + 2 * (space.complex_dimension() as i64 - 3) + 2 * k as i64
}

pub fn gw_invariant(q: &InvariantQuery) -> Result<Rational> {
    if q.insertions.iter().any(RingElement::is_zero) {
        return Ok(Rational::zero());
    }
    let space = q.space();
    if q.insertion_degree() != virtual_dimension(space, q.degree(), q.insertions.len()) {
        return Ok(Rational::zero());
    }
    // Multilinear expansion over basis monomials; homogeneity keeps every
    // monomial in the same dimension.
    let mut total = Rational::zero();
    let mut stack: Vec<(usize, Rational, Vec<usize>)> = vec![(0, Rational::one(), Vec::new())];
    while let Some((pos, coeff, chosen)) = stack.pop() {
        if pos == q.insertions.len() {
            total += coeff * basis_invariant(space, q.degree(), &chosen)?;
            continue;
        }
        for (i, c) in q.insertions[pos].terms() {
            let mut next = chosen.clone();
            next.push(i);
            stack.push((pos + 1, &coeff * c, next));
        }
    }
    Ok(total)
}

/// Invariant with basis insertions, dimension already matched.
fn basis_invariant(space: &Space, d: u32, idx: &[usize]) -> Result<Rational> {
    if d == 0 {
        // Constant maps: only the three-point class survives.
        if idx.len() != 3 {
            return Ok(Rational::zero());
        }
        let prod = idx.iter().map(|&i| RingElement::basis(space, i)).try_fold(space.unit(), |acc, e| acc.cup(&e))?;
        return Ok(prod.integrate());
    }
    if idx.contains(&space.unit_index()) {
        return Ok(Rational::zero());
    }
    let h = space
        .divisor_index()
        .ok_or_else(|| GwError::Parameter("a point carries no curve classes".into()))?;
    let dq = Rational::from_integer(d.into());
    let mut factor = Rational::one();
    let mut rest = Vec::new();
    for &i in idx {
        if i == h {
            factor *= &dq;
        } else {
            rest.push(i);
        }
    }
    match space.kind() {
        SpaceKind::ProjectiveSpace(1) => {
            // ⟨⟩_1 = 1: one line, no constraints.
            Ok(if d == 1 && rest.is_empty() { factor } else { Rational::zero() })
        }
        SpaceKind::ProjectiveSpace(2) => {
            debug_assert!(rest.iter().all(|&i| i == space.point_index()));
            if rest.len() as u32 != 3 * d - 1 {
                return Ok(Rational::zero());
            }
            Ok(factor * Rational::from_integer(wdvv_nd(d)?))
        }
        _ => {
            if rest.len() > 3 {
                return Err(GwError::Unsupported(format!(
                    "{} non-divisor insertions on {space} exceed the three-point oracle",
                    rest.len()
                )));
            }
            while rest.len() < 3 {
                rest.push(h);
                factor /= &dq;
            }
            Ok(factor * three_point(space, d, rest[0], rest[1], rest[2])?)
        }
    }
}

/// `⟨σ_a, σ_b, σ_c⟩_d` as the coefficient of `q^d σ_{c^∨}` in `σ_a ⋆ σ_b`.
pub fn three_point(space: &Space, d: u32, a: usize, b: usize, c: usize) -> Result<Rational> {
    let basis = space.basis();
    let prod = rim_hook_product(&basis[a].partition, &basis[b].partition, space)?;
    Ok(prod.q_coefficient(d).coefficient(space.dual_index(c)))
}
