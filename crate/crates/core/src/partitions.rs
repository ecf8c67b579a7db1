//! Cohomology-weighted partitions, their symmetry factors and the partial order
//! on relative invariant keys. Set partitions of insertion labels, with the
//! Möbius function of their refinement lattice, live here as well.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{GwError, Result};
use crate::rational::factorial;
use crate::ring::{BasisClass, RingElement, Space};

/// A contact point of order `m` constrained by the divisor class `weight`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedPair {
    pub m: u32,
    pub weight: BasisClass,
}

impl WeightedPair {
    fn sort_key(&self) -> (u32, u32, usize) {
        (self.m, self.weight.real_degree, self.weight.index)
    }
}

/// Greater if `m > m'`, or `m = m'` and `deg δ > deg δ'`. Distinct weights of
/// equal degree compare equal.
pub fn size_compare(p: &WeightedPair, q: &WeightedPair) -> Ordering {
    p.m.cmp(&q.m).then(p.weight.real_degree.cmp(&q.weight.real_degree))
}

/// A multiset of weighted pairs over a divisor space, kept sorted decreasing
/// by size (ties broken by basis index so that equal multisets are equal).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedPartition {
    space: Space,
    pairs: Vec<WeightedPair>,
}

impl fmt::Debug for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeightedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.pairs.iter().map(|p| format!("({},{})", p.m, p.weight.label)).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl WeightedPartition {
    pub fn new(space: &Space, pairs: impl IntoIterator<Item = (u32, usize)>) -> Result<WeightedPartition> {
        let mut out = Vec::new();
        for (m, idx) in pairs {
            if m == 0 {
                return Err(GwError::Parameter("contact multiplicities must be positive".into()));
            }
            let weight = space
                .basis()
                .get(idx)
                .ok_or_else(|| GwError::Parameter(format!("no basis class {idx} on {space}")))?
                .clone();
            out.push(WeightedPair { m, weight });
        }
        out.sort_by_key(|p| std::cmp::Reverse(p.sort_key()));
        Ok(WeightedPartition { space: space.clone(), pairs: out })
    }

    pub fn empty(space: &Space) -> WeightedPartition {
        WeightedPartition { space: space.clone(), pairs: Vec::new() }
    }

    /// Parses `(2,1)+(1,pt)`; `∅`, `()` or an empty string give the empty partition.
    pub fn parse(space: &Space, s: &str) -> Result<WeightedPartition> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "()" || s == "empty" {
            return Ok(WeightedPartition::empty(space));
        }
        let mut pairs = Vec::new();
        for part in s.split(")+(") {
            let inner = part.trim().trim_start_matches('(').trim_end_matches(')');
            let (m, label) = inner
                .split_once(',')
                .ok_or_else(|| GwError::Parse(format!("expected (m,class) in {s:?}")))?;
            let m: u32 = m.trim().parse().map_err(|_| GwError::Parse(format!("bad multiplicity {m:?}")))?;
            let class = space.parse_class(label.trim())?;
            let (idx, c) = class
                .as_monomial()
                .ok_or_else(|| GwError::Parse(format!("weight {label:?} is not a basis class")))?;
            if !c.is_one() {
                return Err(GwError::Parse(format!("weight {label:?} is not a basis class")));
            }
            pairs.push((m, idx));
        }
        WeightedPartition::new(space, pairs)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn pairs(&self) -> &[WeightedPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `Σ m_i`, which must equal `Z·A`.
    pub fn total_weight(&self) -> u32 {
        self.pairs.iter().map(|p| p.m).sum()
    }

    /// `deg(μ) = Σ deg δ_i` in real degrees.
    pub fn degree(&self) -> u32 {
        self.pairs.iter().map(|p| p.weight.real_degree).sum()
    }

    /// Order of the symmetry group of the weighted multiset.
    pub fn aut_order(&self) -> BigInt {
        let mut counts: BTreeMap<(u32, usize), u64> = BTreeMap::new();
        for p in &self.pairs {
            *counts.entry((p.m, p.weight.index)).or_default() += 1;
        }
        counts.values().map(|&c| factorial(c)).product()
    }

    /// Order of the symmetry group of the underlying unweighted partition.
    pub fn unweighted_aut_order(&self) -> BigInt {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for p in &self.pairs {
            *counts.entry(p.m).or_default() += 1;
        }
        counts.values().map(|&c| factorial(c)).product()
    }

    /// Gluing factor `Δ = (∏ m_i)·|Aut|` with the weighted automorphism group.
    pub fn delta_factor(&self) -> BigInt {
        let prod: BigInt = self.pairs.iter().map(|p| BigInt::from(p.m)).product();
        prod * self.aut_order()
    }

    /// The same multiset with every weight replaced by its Poincaré dual.
    pub fn dual(&self) -> WeightedPartition {
        let pairs = self.pairs.iter().map(|p| (p.m, self.space.dual_index(p.weight.index)));
        WeightedPartition::new(&self.space, pairs).expect("dual indices are valid")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.pairs
                .iter()
                .map(|p| serde_json::json!({"m": p.m, "label": p.weight.label}))
                .collect(),
        )
    }

    /// Every weighted partition of `total` over `space`, in a fixed order.
    pub fn enumerate(space: &Space, total: u32) -> Vec<WeightedPartition> {
        let mut kinds: Vec<(u32, usize)> = Vec::new();
        for m in 1..=total {
            for b in space.basis() {
                kinds.push((m, b.index));
            }
        }
        let mut out = Vec::new();
        fn rec(kinds: &[(u32, usize)], start: usize, left: u32, cur: &mut Vec<(u32, usize)>, out: &mut Vec<Vec<(u32, usize)>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..kinds.len() {
                if kinds[i].0 <= left {
                    cur.push(kinds[i]);
                    rec(kinds, i, left - kinds[i].0, cur, out);
                    cur.pop();
                }
            }
        }
        let mut raw = Vec::new();
        rec(&kinds, 0, total, &mut Vec::new(), &mut raw);
        for pairs in raw {
            out.push(WeightedPartition::new(space, pairs).expect("enumerated indices are valid"));
        }
        out
    }
}

/// Compares size-sorted pair lists; the first index where sizes differ
/// decides, and when one side runs out the longer partition is greater.
pub fn lex_compare(a: &WeightedPartition, b: &WeightedPartition) -> Ordering {
    for (p, q) in a.pairs.iter().zip(&b.pairs) {
        match size_compare(p, q) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.pairs.len().cmp(&b.pairs.len())
}

/// `⟨ϖ | μ⟩_{g,A}`: curve degree, genus, absolute insertions and contact data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantKey {
    pub degree: u32,
    pub genus: u32,
    pub insertions: Vec<RingElement>,
    pub partition: WeightedPartition,
}

impl InvariantKey {
    pub fn new(degree: u32, insertions: Vec<RingElement>, partition: WeightedPartition) -> InvariantKey {
        InvariantKey { degree, genus: 0, insertions, partition }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "genus": self.genus,
            "insertions": self.insertions.iter().map(RingElement::to_json).collect::<Vec<_>>(),
            "partition": self.partition.to_json(),
        })
    }
}

/// The partial order on relative keys: `Some(Less)` means `a` comes strictly
/// before `b`. Smaller class, smaller genus and fewer absolute insertions come
/// first; then a larger `deg μ`, then a lexicographically larger `μ`. `None`
/// only for keys over different divisor spaces.
pub fn key_compare(a: &InvariantKey, b: &InvariantKey) -> Option<Ordering> {
    if a.partition.space() != b.partition.space() {
        return None;
    }
    Some(
        a.degree
            .cmp(&b.degree)
            .then(a.genus.cmp(&b.genus))
            .then(a.insertions.len().cmp(&b.insertions.len()))
            .then(b.partition.degree().cmp(&a.partition.degree()))
            .then(lex_compare(&b.partition, &a.partition)),
    )
}

/// A set partition of `0..n` as sorted blocks, blocks ordered by least element.
pub type SetPartition = Vec<Vec<usize>>;

/// All set partitions of `0..n` in restricted-growth order (finest last).
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<SetPartition>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// True when every block of `finer` lies inside a block of `coarser`.
pub fn refines(finer: &SetPartition, coarser: &SetPartition) -> bool {
    finer.iter().all(|b| coarser.iter().any(|c| b.iter().all(|x| c.contains(x))))
}

/// Möbius function `μ(finer, coarser)` of the refinement lattice:
/// `∏ (-1)^(b-1) (b-1)!` over blocks of `coarser`, `b` counting the blocks of
/// `finer` inside it. Zero when `finer` does not refine `coarser`.
pub fn mobius(finer: &SetPartition, coarser: &SetPartition) -> BigInt {
    if !refines(finer, coarser) {
        return BigInt::from(0);
    }
    let mut out = BigInt::one();
    for c in coarser {
        let b = finer.iter().filter(|f| c.contains(&f[0])).count() as u64;
        let term = factorial(b - 1);
        out *= if (b - 1) % 2 == 1 { -term } else { term };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> Space {
        Space::projective(1).unwrap()
    }

    fn wp(s: &Space, text: &str) -> WeightedPartition {
        WeightedPartition::parse(s, text).unwrap()
    }

    #[test]
    fn size_relation() {
        let s = p1();
        let a = wp(&s, "(2,1)");
        let b = wp(&s, "(1,pt)");
        assert_eq!(size_compare(&a.pairs()[0], &b.pairs()[0]), Ordering::Greater);
        let c = wp(&s, "(1,1)");
        assert_eq!(size_compare(&b.pairs()[0], &c.pairs()[0]), Ordering::Greater);
        let p2 = Space::projective(2).unwrap();
        let h = wp(&p2, "(1,h)");
        assert_eq!(size_compare(&h.pairs()[0], &h.pairs()[0]), Ordering::Equal);
    }

    #[test]
    fn lexicographic() {
        let s = p1();
        assert_eq!(lex_compare(&wp(&s, "(2,1)"), &wp(&s, "(1,pt)+(1,1)")), Ordering::Greater);
        assert_eq!(wp(&s, "(1,pt)+(1,1)"), wp(&s, "(1,1)+(1,pt)"));
        let p2 = Space::projective(2).unwrap();
        assert_eq!(lex_compare(&wp(&p2, "(1,h)+(1,h)"), &wp(&p2, "(1,h)")), Ordering::Greater);
    }

    #[test]
    fn degrees() {
        let s = p1();
        assert_eq!(wp(&s, "(1,pt)+(1,1)").degree(), 2);
        assert_eq!(WeightedPartition::empty(&s).degree(), 0);
        let p2 = Space::projective(2).unwrap();
        assert_eq!(wp(&p2, "(2,h)+(1,h^2)").degree(), 6);
    }

    #[test]
    fn symmetry_factors() {
        let s = p1();
        let a = wp(&s, "(1,pt)+(1,pt)");
        assert_eq!(a.aut_order(), BigInt::from(2));
        assert_eq!(a.delta_factor(), BigInt::from(2));
        let b = wp(&s, "(2,1)");
        assert_eq!(b.aut_order(), BigInt::from(1));
        assert_eq!(b.delta_factor(), BigInt::from(2));
        let c = wp(&s, "(1,1)+(1,pt)");
        assert_eq!(c.aut_order(), BigInt::from(1));
        assert_eq!(c.unweighted_aut_order(), BigInt::from(2));
        assert_eq!(c.delta_factor(), BigInt::from(1));
    }

    #[test]
    fn key_clauses() {
        let s = p1();
        let x = Space::projective(2).unwrap();
        let mu = wp(&s, "(1,pt)");
        let k = |d: u32, n: usize, m: &WeightedPartition| InvariantKey::new(d, vec![x.point_class(); n], m.clone());
        assert_eq!(key_compare(&k(1, 0, &mu), &k(2, 0, &mu)), Some(Ordering::Less));
        assert_eq!(key_compare(&k(2, 1, &mu), &k(2, 2, &mu)), Some(Ordering::Less));
        let fine = wp(&s, "(1,pt)+(1,1)");
        let coarse = wp(&s, "(2,1)");
        assert_eq!(key_compare(&k(2, 1, &fine), &k(2, 1, &coarse)), Some(Ordering::Less));
        assert_eq!(key_compare(&k(2, 1, &fine), &k(2, 1, &fine)), Some(Ordering::Equal));
        let other = InvariantKey::new(1, vec![], WeightedPartition::empty(&x));
        assert_eq!(key_compare(&k(1, 0, &mu), &other), None);
    }

    #[test]
    fn parse_round_trip() {
        let s = Space::projective(2).unwrap();
        let m = wp(&s, "(2,h)+(1,pt)");
        assert_eq!(m.to_string(), "(2,h)+(1,h^2)");
        assert_eq!(wp(&s, &m.to_string()), m);
        assert!(WeightedPartition::parse(&s, "(0,h)").is_err());
        assert!(WeightedPartition::parse(&s, "(1,2*h)").is_err());
        assert_eq!(m.to_json(), serde_json::json!([{"m": 2, "label": "h"}, {"m": 1, "label": "h^2"}]));
    }

    #[test]
    fn enumeration_counts() {
        // Over P^1 the pair kinds of size m are (m,1), (m,pt).
        let s = p1();
        assert_eq!(WeightedPartition::enumerate(&s, 1).len(), 2);
        assert_eq!(WeightedPartition::enumerate(&s, 2).len(), 5);
        assert_eq!(WeightedPartition::enumerate(&s, 0).len(), 1);
        assert!(WeightedPartition::enumerate(&s, 3).iter().all(|m| m.total_weight() == 3));
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn mobius_inverts_zeta() {
        // Σ_{σ ≤ τ ≤ π} μ(σ, τ) = δ(σ, π).
        let all = set_partitions(4);
        for s in &all {
            for p in &all {
                if !refines(s, p) {
                    continue;
                }
                let sum: BigInt = all.iter().filter(|t| refines(s, t) && refines(t, p)).map(|t| mobius(s, t)).sum();
                let expected = if s == p { 1 } else { 0 };
                assert_eq!(sum, BigInt::from(expected));
            }
        }
        let finest: SetPartition = vec![vec![0], vec![1], vec![2]];
        let top: SetPartition = vec![vec![0, 1, 2]];
        assert_eq!(mobius(&finest, &top), BigInt::from(2));
    }
}
