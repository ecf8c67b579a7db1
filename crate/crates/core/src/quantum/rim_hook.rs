//! Small quantum products of Schubert classes by the rim-hook rule.
//!
//! `σ_λ ⋆ σ_μ` is obtained by multiplying `s_λ s_μ` in symmetric functions in
//! `k` variables and then stripping `n`-rim hooks from every partition that
//! does not fit the `k × (n-k)` box. Each removed hook contributes one power
//! of `q` and the sign `(-1)^(k - height)`; a partition that cannot be reduced
//! contributes nothing. Hook removal is done on beta-numbers `ν_i + k - i`,
//! where removing an `n`-hook is subtracting `n` from one of them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{GwError, Result};
use crate::rational::Rational;
use crate::ring::schubert::{self, Partition};
use crate::ring::{RingElement, Space};

/// A polynomial in `q` with coefficients in `H*(space)`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuantumClass {
    space: Space,
    terms: BTreeMap<u32, RingElement>,
}

impl fmt::Debug for QuantumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("q^{e}·({c})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl QuantumClass {
    pub fn zero(space: &Space) -> QuantumClass {
        QuantumClass { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn classical(c: RingElement) -> QuantumClass {
        let mut q = QuantumClass::zero(c.space());
        q.add_term(0, c).expect("same space");
        q
    }

    /// Sums `q^e c` over the given terms.
    pub fn from_terms(space: &Space, terms: impl IntoIterator<Item = (u32, RingElement)>) -> Result<QuantumClass> {
        let mut out = QuantumClass::zero(space);
        for (e, c) in terms {
            if c.space() != space {
                return Err(GwError::SpaceMismatch(c.space().to_string(), space.to_string()));
            }
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RingElement)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `q^power`.
    pub fn q_coefficient(&self, power: u32) -> RingElement {
        self.terms.get(&power).cloned().unwrap_or_else(|| self.space.zero())
    }

    fn add_term(&mut self, power: u32, c: RingElement) -> Result<()> {
        let next = match self.terms.get(&power) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&power);
        } else {
            self.terms.insert(power, next);
        }
        Ok(())
    }

    /// Total real degree, counting `q` with real degree `2 c_1(L)`; `None` if
    /// the terms disagree.
    pub fn degree(&self) -> Option<u32> {
        let c1 = self.space.first_chern_number();
        let mut degs = self.terms.iter().map(|(e, c)| c.degree().map(|d| d + 2 * e * c1));
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }

    /// Extends `⋆` bilinearly from basis classes.
    pub fn star(&self, other: &QuantumClass) -> Result<QuantumClass> {
        let mut out = QuantumClass::zero(&self.space);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                for (i, ca) in a.terms() {
                    for (j, cb) in b.terms() {
                        let prod = basis_product(&self.space, i, j)?;
                        for (e, c) in prod.terms {
                            out.add_term(e1 + e2 + e, c.scale(&(ca * cb)))?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Beta-number reduction of `ν` (at most `k` rows). Returns the sign, the
/// number of removed hooks and the reduced partition, or `None` when the term
/// vanishes.
pub fn reduce_rim_hooks(nu: &[u32], k: u32, n: u32) -> Option<(i32, u32, Partition)> {
    let k_us = k as usize;
    if nu.len() > k_us {
        return None;
    }
    let mut beta: Vec<i64> = (0..k_us)
        .map(|i| nu.get(i).copied().unwrap_or(0) as i64 + (k_us - 1 - i) as i64)
        .collect();
    let mut sign = 1i32;
    let mut hooks = 0u32;
    loop {
        let (pos, &top) = beta.iter().enumerate().max_by_key(|(_, b)| **b)?;
        if top < n as i64 {
            break;
        }
        let lowered = top - n as i64;
        if beta.contains(&lowered) {
            return None;
        }
        let between = beta.iter().filter(|&&b| b > lowered && b < top).count() as u32;
        let height = between + 1;
        if (k - height) % 2 == 1 {
            sign = -sign;
        }
        hooks += 1;
        beta[pos] = lowered;
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<u32> = beta.iter().enumerate().map(|(i, b)| (b - (k_us - 1 - i) as i64) as u32).collect();
    Some((sign, hooks, schubert::normalize(parts)))
}

fn basis_product(space: &Space, i: usize, j: usize) -> Result<QuantumClass> {
    let lambda = space.basis()[i].partition.clone();
    let mu = space.basis()[j].partition.clone();
    rim_hook_product(&lambda, &mu, space)
}

/// `σ_λ ⋆ σ_μ` in the small quantum cohomology of `Gr(k, n)` (or `P^m` as `Gr(1, m+1)`).
pub fn rim_hook_product(lambda: &[u32], mu: &[u32], space: &Space) -> Result<QuantumClass> {
    let (k, n) = space
        .schubert_shape()
        .ok_or_else(|| GwError::Unsupported(format!("no Schubert model for {space}")))?;
    for p in [lambda, mu] {
        if !schubert::is_partition(p) || !schubert::fits(p, k as usize, n - k) {
            return Err(GwError::Parameter(format!("partition {p:?} does not fit the {k}x{} box", n - k)));
        }
    }
    let mut raw: BTreeMap<(u32, Partition), Rational> = BTreeMap::new();
    for (nu, c) in schubert::schur_product(lambda, mu, k as usize, None) {
        if let Some((sign, hooks, reduced)) = reduce_rim_hooks(&nu, k, n) {
            *raw.entry((hooks, reduced)).or_insert_with(Rational::zero) += Rational::from_integer(c * sign);
        }
    }
    let mut out = QuantumClass::zero(space);
    for ((hooks, p), c) in raw {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() || !c.is_integer() {
            return Err(GwError::Internal(format!("rim-hook coefficient {c} of q^{hooks}σ_{p:?} is not a nonnegative integer")));
        }
        let idx = space
            .index_of_partition(&p)
            .ok_or_else(|| GwError::Internal(format!("reduced partition {p:?} outside the box")))?;
        out.add_term(hooks, RingElement::basis(space, idx).scale(&c))?;
    }
    Ok(out)
}
