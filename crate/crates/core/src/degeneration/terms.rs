//! Terms of the degeneration formula for `⟨α…, ι^!β…⟩^X_A` under the cut
//! `X ⇝ X ∪_Z Y`.
//!
//! A term glues one connected relative curve in `(X, Z)` of degree `d_X` to
//! relative curves in `(Y, D)`, one per tail, so the dual graph is a star and
//! has genus zero. When `d_X = 0` the whole curve lies in `Y` and carries the
//! empty partition. Gluings with several `X` components are not produced;
//! in degree one they do not exist.
//!
//! Marked points carrying an `α` may land on either side, on the `Y` side as
//! `π^*ι^*α`; a point carrying `ι^!β` always lands on the `Y` side as
//! `β·[Z_0]`. A `Y` component is pruned exactly when the vanishing predicate
//! holds for it. Sides failing the dimension rule are kept with value zero.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::comparison::RelativeSource;
use super::CutSpec;
use crate::error::{GwError, Result};
use crate::partitions::{InvariantKey, WeightedPartition};
use crate::quantum::{virtual_dimension, InvariantQuery};
use crate::rational::{factorial, format, Rational};
use crate::relative::{evaluate, fiber_vanishing, BundleClass, RelInsertion, RelQuery, VanishingReason};
use crate::ring::RingElement;

/// One connected relative curve on the `Y` side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YComponent {
    /// Contact order with `D`, zero for the `Y`-only term.
    pub contact: u32,
    /// Basis index of the `X`-side weight this tail is glued to.
    pub x_weight: Option<usize>,
    /// Indices into the query's `α`s placed on this component.
    pub alphas: Vec<usize>,
    /// Indices into the query's `β`s placed on this component.
    pub betas: Vec<usize>,
    pub query: RelQuery,
}

#[derive(Debug, Clone)]
pub struct DegenerationTerm {
    /// `None` for the term living entirely in `Y`.
    pub x_key: Option<InvariantKey>,
    pub x_alphas: Vec<usize>,
    pub components: Vec<YComponent>,
    /// `Δ` of the `X`-side partition; 1 for the `Y`-only term.
    pub delta: BigInt,
    /// Permutations of identical `Y` components.
    pub symmetry: BigInt,
    pub value: Option<Rational>,
    /// Why `value` is missing.
    pub note: Option<String>,
}

impl DegenerationTerm {
    pub fn partition(&self) -> Option<&WeightedPartition> {
        self.x_key.as_ref().map(|k| &k.partition)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "x": self.x_key.as_ref().map(InvariantKey::to_json),
            "y": self.components.iter().map(|c| c.query.to_json()).collect::<Vec<_>>(),
            "partition": self.partition().map(WeightedPartition::to_json),
            "delta": self.delta.to_string(),
            "value": self.value.as_ref().map(format),
            "note": self.note,
        })
    }
}

/// A term dropped because one of its `Y` components vanishes.
#[derive(Debug, Clone)]
pub struct PrunedTerm {
    pub term: DegenerationTerm,
    pub component: usize,
    pub reason: VanishingReason,
}

#[derive(Debug, Clone)]
pub struct TermEnumeration {
    pub query: InvariantQuery,
    pub kept: Vec<DegenerationTerm>,
    pub pruned: Vec<PrunedTerm>,
}

impl TermEnumeration {
    /// Sum of the kept terms; fails if some value is missing.
    pub fn total(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for t in &self.kept {
            match &t.value {
                Some(v) => acc += v,
                None => {
                    return Err(GwError::Unsupported(t.note.clone().unwrap_or_else(|| "term without a value".into())))
                }
            }
        }
        Ok(acc)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &DegenerationTerm> {
        self.kept.iter().filter(|t| t.value.as_ref().is_some_and(|v| !v.is_zero()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "query": self.query.to_json(),
            "kept": self.kept.iter().map(DegenerationTerm::to_json).collect::<Vec<_>>(),
            "pruned": self.pruned.iter().map(|p| serde_json::json!({
                "term": p.term.to_json(),
                "component": p.component,
                "reason": p.reason.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Half the real degree of a homogeneous class.
fn cdeg(c: &RingElement) -> i64 {
    c.degree().unwrap_or(0) as i64 / 2
}

/// Component data before the relative query is built: contact, `X` weight,
/// base degree, `α` and `β` indices.
type YQuery<'a> = dyn Fn(u32, u32, Option<usize>, &[usize], &[usize]) -> Result<RelQuery> + 'a;

type Shape = (u32, usize, u32, Vec<usize>, Vec<usize>);

/// All terms for `⟨alphas, ι^!betas⟩^X_degree`. Without a source the `X`-side
/// factors, and hence the values, are left empty.
pub fn enumerate_terms(
    cut: &CutSpec,
    degree: u32,
    alphas: &[RingElement],
    betas: &[RingElement],
    source: Option<&dyn RelativeSource>,
) -> Result<TermEnumeration> {
    let query = cut.absolute_query(degree, alphas, betas)?;
    let mut out = TermEnumeration { query: query.clone(), kept: Vec::new(), pruned: Vec::new() };
    if degree == 0 {
        return Err(GwError::Unsupported("degenerating a constant map".into()));
    }
    if virtual_dimension(cut.ambient(), degree, query.insertions().len()) != query.insertion_degree() {
        return Ok(out);
    }
    let base = cut.base();
    let restricted: Vec<RingElement> = alphas.iter().map(|a| cut.divisor().restrict(a)).collect::<Result<_>>()?;
    let movable: Vec<usize> = (0..alphas.len()).filter(|&i| !restricted[i].is_zero()).collect();
    let pf = cut.divisor().pushforward_degree() as u32;

    let y_query = |b: u32, contact: u32, weight: Option<usize>, al: &[usize], be: &[usize]| -> Result<RelQuery> {
        let mut ins: Vec<RelInsertion> = al.iter().map(|&i| RelInsertion::Pullback(restricted[i].clone())).collect();
        ins.extend(be.iter().map(|&j| RelInsertion::ZeroSection(betas[j].clone())));
        let partition = match weight {
            Some(w) => WeightedPartition::new(base, [(contact, base.dual_index(w))])?,
            None => WeightedPartition::empty(base),
        };
        RelQuery::new(cut.bundle(), BundleClass { base_degree: b, fiber: contact }, ins, partition)
    };

    // Everything in Y: one component, empty partition, every α restricted.
    if pf > 0 && degree.is_multiple_of(pf) && movable.len() == alphas.len() {
        let all_a: Vec<usize> = (0..alphas.len()).collect();
        let all_b: Vec<usize> = (0..betas.len()).collect();
        let q = y_query(degree / pf, 0, None, &all_a, &all_b)?;
        let comp = YComponent { contact: 0, x_weight: None, alphas: all_a, betas: all_b, query: q };
        let term = DegenerationTerm {
            x_key: None,
            x_alphas: Vec::new(),
            components: vec![comp],
            delta: BigInt::one(),
            symmetry: BigInt::one(),
            value: None,
            note: None,
        };
        push_term(cut, source, degree, alphas, term, &mut out)?;
    }

    let mut seen = BTreeSet::new();
    for d_x in 1..=degree {
        let rest = degree - d_x;
        if rest > 0 && (pf == 0 || !rest.is_multiple_of(pf)) {
            continue;
        }
        let b_total = if rest == 0 { 0 } else { rest / pf };
        let w_x = cut.contact_weight(d_x);
        for k in 1..=w_x as usize {
            for contacts in compositions(w_x, k, 1) {
                for bs in compositions(b_total, k, 0) {
                    for weights in tuples(base.rank(), k) {
                        for a_place in tuples(k + 1, movable.len()) {
                            for b_place in tuples(k, betas.len()) {
                                let mut shapes: Vec<Shape> =
                                    (0..k).map(|i| (contacts[i], weights[i], bs[i], Vec::new(), Vec::new())).collect();
                                let mut x_alphas: Vec<usize> =
                                    (0..alphas.len()).filter(|i| !movable.contains(i)).collect();
                                for (m, &slot) in movable.iter().zip(&a_place) {
                                    if slot == k {
                                        x_alphas.push(*m);
                                    } else {
                                        shapes[slot].3.push(*m);
                                    }
                                }
                                for (j, &slot) in b_place.iter().enumerate() {
                                    shapes[slot].4.push(j);
                                }
                                x_alphas.sort_unstable();
                                shapes.sort();
                                if !seen.insert((d_x, x_alphas.clone(), shapes.clone())) {
                                    continue;
                                }
                                let term = star_term(cut, d_x, alphas, &x_alphas, &shapes, &y_query)?;
                                push_term(cut, source, d_x, alphas, term, &mut out)?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn star_term(
    cut: &CutSpec,
    d_x: u32,
    alphas: &[RingElement],
    x_alphas: &[usize],
    shapes: &[Shape],
    y_query: &YQuery,
) -> Result<DegenerationTerm> {
    let base = cut.base();
    let partition = WeightedPartition::new(base, shapes.iter().map(|s| (s.0, s.1)))?;
    let components = shapes
        .iter()
        .map(|(t, w, b, al, be)| {
            Ok(YComponent { contact: *t, x_weight: Some(*w), alphas: al.clone(), betas: be.clone(), query: y_query(*b, *t, Some(*w), al, be)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut symmetry = BigInt::one();
    let mut i = 0;
    while i < shapes.len() {
        let run = shapes[i..].iter().take_while(|s| **s == shapes[i]).count();
        symmetry *= factorial(run as u64);
        i += run;
    }
    let key = InvariantKey::new(d_x, x_alphas.iter().map(|&i| alphas[i].clone()).collect(), partition.clone());
    Ok(DegenerationTerm {
        x_key: Some(key),
        x_alphas: x_alphas.to_vec(),
        components,
        delta: partition.delta_factor(),
        symmetry,
        value: None,
        note: None,
    })
}

/// Prunes by the vanishing predicate, then evaluates what it can.
fn push_term(
    cut: &CutSpec,
    source: Option<&dyn RelativeSource>,
    d_x: u32,
    alphas: &[RingElement],
    mut term: DegenerationTerm,
    out: &mut TermEnumeration,
) -> Result<()> {
    for (i, c) in term.components.iter().enumerate() {
        if let Some(reason) = fiber_vanishing(&c.query)? {
            out.pruned.push(PrunedTerm { term, component: i, reason });
            return Ok(());
        }
    }
    let mut value = Rational::from_integer(term.delta.clone()) / Rational::from_integer(term.symmetry.clone());
    for c in &term.components {
        if !y_dimension_ok(&c.query) {
            term.value = Some(Rational::zero());
            out.kept.push(term);
            return Ok(());
        }
    }
    if let Some(key) = &term.x_key {
        if !x_dimension_ok(cut, key) {
            term.value = Some(Rational::zero());
            out.kept.push(term);
            return Ok(());
        }
    }
    for c in &term.components {
        match evaluate(&c.query) {
            Ok(e) => value *= e.value(),
            Err(e) => {
                term.note = Some(e.to_string());
                out.kept.push(term);
                return Ok(());
            }
        }
    }
    if let Some(key) = &term.x_key {
        let xs: Vec<RingElement> = term.x_alphas.iter().map(|&i| alphas[i].clone()).collect();
        match source.map(|s| s.relative(d_x, &xs, &key.partition)) {
            Some(Ok(v)) => value *= v,
            Some(Err(e)) => {
                term.note = Some(e.to_string());
                out.kept.push(term);
                return Ok(());
            }
            None => {
                term.note = Some("no source for X-side relative invariants".into());
                out.kept.push(term);
                return Ok(());
            }
        }
    }
    term.value = Some(value);
    out.kept.push(term);
    Ok(())
}

fn x_dimension_ok(cut: &CutSpec, key: &InvariantKey) -> bool {
    let x = cut.ambient();
    let mu = &key.partition;
    let vdim = x.first_chern_number() as i64 * key.degree as i64 + x.complex_dimension() as i64 - 3
        + key.insertions.len() as i64
        + mu.len() as i64
        - mu.total_weight() as i64;
    let used: i64 = key.insertions.iter().map(cdeg).sum::<i64>() + mu.degree() as i64 / 2;
    vdim == used
}

fn y_dimension_ok(q: &RelQuery) -> bool {
    let z = q.bundle.base();
    let b = q.class.base_degree as i64;
    let c1 = (z.first_chern_number() as i64 + q.bundle.c1l()) * b + 2 * q.class.fiber as i64;
    let vdim = c1 + z.complex_dimension() as i64 + 1 - 3 + q.insertions.len() as i64 + q.partition.len() as i64
        - q.partition.total_weight() as i64;
    let used: i64 = q
        .insertions
        .iter()
        .map(|i| match i {
            RelInsertion::Pullback(a) => cdeg(a),
            other => cdeg(other.class()) + 1,
        })
        .sum::<i64>()
        + q.partition.degree() as i64 / 2;
    vdim == used
}

/// Ordered `k`-tuples with entries `≥ min` summing to `total`.
fn compositions(total: u32, k: usize, min: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut first = min;
    while first as u64 + (k as u64 - 1) * min as u64 <= total as u64 {
        for mut rest in compositions(total - first, k - 1, min) {
            rest.insert(0, first);
            out.push(rest);
        }
        first += 1;
    }
    out
}

/// All `len`-tuples over `0..n`.
fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..n).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::comparison::{solve_relative, ClosedForms};
    use super::*;
    use crate::rational::int;

    #[test]
    fn small_combinatorics() {
        assert_eq!(compositions(3, 2, 1), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(1, 2, 0).len(), 2);
        assert_eq!(tuples(3, 2).len(), 9);
        assert_eq!(tuples(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn p1_single_term() {
        let cut = CutSpec::testbed("p1-pt").unwrap();
        let src = ClosedForms::new(&cut).unwrap();
        let pt = cut.ambient().point_class();
        for m in 2..=6 {
            let alphas = vec![pt.clone(); m - 1];
            let e = enumerate_terms(&cut, 1, &alphas, &[cut.base().unit()], Some(&src)).unwrap();
            let nz: Vec<_> = e.nonzero().collect();
            assert_eq!(nz.len(), 1);
            assert_eq!(nz[0].delta, BigInt::one());
            assert_eq!(nz[0].value, Some(int(1)));
            assert_eq!(e.total().unwrap(), int(1));
        }
    }

    #[test]
    fn line_terms_match_lhs() {
        let cut = CutSpec::testbed("p2-line").unwrap();
        let pt = cut.ambient().point_class();
        let one = cut.base().unit();
        let alphas = vec![pt.clone(), pt];
        let table = solve_relative(&cut, 1, &alphas, std::slice::from_ref(&one)).unwrap();
        let e = enumerate_terms(&cut, 1, &alphas, &[one], Some(&table)).unwrap();
        assert_eq!(e.total().unwrap(), int(1));
        for t in e.nonzero() {
            assert_eq!(t.partition().unwrap().len(), 1);
            assert!(t.components.iter().all(|c| c.query.class.is_fiber()));
        }
    }

    #[test]
    fn pruned_means_vanishing() {
        let cut = CutSpec::testbed("p2-line").unwrap();
        let h = cut.ambient().parse_class("h").unwrap();
        let pt = cut.ambient().point_class();
        let e = enumerate_terms(&cut, 1, &[pt.clone(), pt, h], &[], None).unwrap();
        for p in &e.pruned {
            assert!(fiber_vanishing(&p.term.components[p.component].query).unwrap().is_some());
        }
        for t in &e.kept {
            for c in &t.components {
                assert!(fiber_vanishing(&c.query).unwrap().is_none());
            }
        }
        assert!(!e.pruned.is_empty());
    }

    #[test]
    fn dimension_mismatch_is_empty() {
        let cut = CutSpec::testbed("p2-line").unwrap();
        let pt = cut.ambient().point_class();
        let e = enumerate_terms(&cut, 1, &[pt], &[], None).unwrap();
        assert!(e.kept.is_empty() && e.pruned.is_empty());
    }
}
