//! Finite graded cohomology rings of the testbed spaces.
//!
//! Every space carries a distinguished basis (powers of the hyperplane class
//! for projective spaces, Schubert classes for Grassmannians), an eager
//! multiplication table and the Poincaré pairing. Only even-degree classes are
//! modelled, so no signs appear anywhere.

pub mod divisor;
pub mod schubert;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{GwError, Result};
use crate::rational::{self, Rational};
use schubert::Partition;

pub use divisor::DivisorDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    Point,
    ProjectiveSpace(u32),
    Grassmannian { k: u32, n: u32 },
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Point => write!(f, "pt"),
            SpaceKind::ProjectiveSpace(n) => write!(f, "pn:{n}"),
            SpaceKind::Grassmannian { k, n } => write!(f, "gr:{k}:{n}"),
        }
    }
}

impl FromStr for SpaceKind {
    type Err = GwError;

    /// Accepts `pt`, `pn:<n>`, `gr:<k>:<n>` and the shorthand `p<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || GwError::Parse(format!("unknown space descriptor {s:?}"));
        let num = |x: &str| x.parse::<u32>().map_err(|_| bad());
        let parts: Vec<&str> = t.split(':').collect();
        match parts.as_slice() {
            ["pt"] | ["point"] => Ok(SpaceKind::Point),
            ["pn", n] => Ok(SpaceKind::ProjectiveSpace(num(n)?)),
            ["gr", k, n] => Ok(SpaceKind::Grassmannian { k: num(k)?, n: num(n)? }),
            [p] if p.starts_with('p') && p.len() > 1 => Ok(SpaceKind::ProjectiveSpace(num(&p[1..])?)),
            _ => Err(bad()),
        }
    }
}

/// One element of the distinguished basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisClass {
    pub index: usize,
    pub real_degree: u32,
    pub label: String,
    /// Schubert index; `[i]` stands for `h^i` on projective space.
    pub partition: Partition,
}

#[derive(Debug)]
struct SpaceData {
    kind: SpaceKind,
    complex_dimension: u32,
    basis: Vec<BasisClass>,
    /// `table[i][j]` is `e_i ∪ e_j` as sparse coefficients.
    table: Vec<Vec<BTreeMap<usize, Rational>>>,
    dual: Vec<usize>,
}

/// A testbed space together with its cohomology ring. Cheap to clone.
#[derive(Clone)]
pub struct Space(Arc<SpaceData>);

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind
    }
}
impl Eq for Space {}

impl std::hash::Hash for Space {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space({})", self.0.kind)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.kind.fmt(f)
    }
}

fn schubert_label(p: &[u32]) -> String {
    match p.len() {
        0 => "σ_∅".to_string(),
        1 => format!("σ_{}", p[0]),
        _ => {
            let inner: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            format!("σ_{{{}}}", inner.join(","))
        }
    }
}

fn power_label(i: u32) -> String {
    match i {
        0 => "1".to_string(),
        1 => "h".to_string(),
        _ => format!("h^{i}"),
    }
}

impl Space {
    pub fn new(kind: SpaceKind) -> Result<Space> {
        let (dim, basis) = match kind {
            SpaceKind::Point => (
                0,
                vec![BasisClass { index: 0, real_degree: 0, label: "1".into(), partition: vec![] }],
            ),
            SpaceKind::ProjectiveSpace(n) => {
                if n < 1 {
                    return Err(GwError::Parameter("projective space needs n >= 1".into()));
                }
                let basis = (0..=n)
                    .map(|i| BasisClass {
                        index: i as usize,
                        real_degree: 2 * i,
                        label: power_label(i),
                        partition: if i == 0 { vec![] } else { vec![i] },
                    })
                    .collect();
                (n, basis)
            }
            SpaceKind::Grassmannian { k, n } => {
                if k < 1 || k >= n {
                    return Err(GwError::Parameter(format!("Grassmannian needs 1 <= k < n, got ({k},{n})")));
                }
                let basis = schubert::rectangle_partitions(k as usize, n - k)
                    .into_iter()
                    .enumerate()
                    .map(|(index, p)| BasisClass {
                        index,
                        real_degree: 2 * schubert::size(&p),
                        label: schubert_label(&p),
                        partition: p,
                    })
                    .collect();
                (k * (n - k), basis)
            }
        };
        let table = build_table(kind, &basis);
        let mut data = SpaceData { kind, complex_dimension: dim, basis, table, dual: Vec::new() };
        data.dual = compute_dual(&data)?;
        Ok(Space(Arc::new(data)))
    }

    pub fn point() -> Space {
        Space::new(SpaceKind::Point).expect("point is always valid")
    }

    pub fn projective(n: u32) -> Result<Space> {
        Space::new(SpaceKind::ProjectiveSpace(n))
    }

    pub fn grassmannian(k: u32, n: u32) -> Result<Space> {
        Space::new(SpaceKind::Grassmannian { k, n })
    }

    pub fn parse(s: &str) -> Result<Space> {
        Space::new(s.parse()?)
    }

    pub fn kind(&self) -> SpaceKind {
        self.0.kind
    }

    pub fn complex_dimension(&self) -> u32 {
        self.0.complex_dimension
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.0.basis
    }

    pub fn rank(&self) -> usize {
        self.0.basis.len()
    }

    /// Label of the degree-2 homology generator; `None` for a point.
    pub fn h2_generator_name(&self) -> Option<&'static str> {
        match self.0.kind {
            SpaceKind::Point => None,
            _ => Some("L"),
        }
    }

    /// `c_1(TX)` evaluated on the homology generator.
    pub fn first_chern_number(&self) -> u32 {
        match self.0.kind {
            SpaceKind::Point => 0,
            SpaceKind::ProjectiveSpace(n) => n + 1,
            SpaceKind::Grassmannian { n, .. } => n,
        }
    }

    /// `(k, n)` such that the space is `Gr(k, n)`; projective space `P^m` is `Gr(1, m+1)`.
    pub fn schubert_shape(&self) -> Option<(u32, u32)> {
        match self.0.kind {
            SpaceKind::Point => None,
            SpaceKind::ProjectiveSpace(m) => Some((1, m + 1)),
            SpaceKind::Grassmannian { k, n } => Some((k, n)),
        }
    }

    pub fn unit_index(&self) -> usize {
        0
    }

    pub fn point_index(&self) -> usize {
        self.rank() - 1
    }

    /// Index of the unique degree-2 basis class (the generator dual).
    pub fn divisor_index(&self) -> Option<usize> {
        self.0.basis.iter().position(|b| b.real_degree == 2)
    }

    pub fn index_of_partition(&self, p: &[u32]) -> Option<usize> {
        self.0.basis.iter().position(|b| b.partition == p)
    }

    /// The basis class pairing to 1 with `index`.
    pub fn dual_index(&self, index: usize) -> usize {
        self.0.dual[index]
    }

    /// `dual_basis`: the involution `a ↦ a'` with `∫ β_a ∪ β_a' = 1`.
    pub fn dual_basis(&self) -> Vec<(usize, usize)> {
        self.0.dual.iter().copied().enumerate().collect()
    }

    pub fn unit(&self) -> RingElement {
        RingElement::basis(self, self.unit_index())
    }

    pub fn point_class(&self) -> RingElement {
        RingElement::basis(self, self.point_index())
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(self)
    }

    /// Parses a class label: `1`/`id`, `pt`, `0`, `h`, `h^k`, Schubert labels
    /// (`s21`, `s_{2,1}`, `σ_{2,1}`), optionally scaled (`2*h`) and summed
    /// (`h+pt`).
    pub fn parse_class(&self, s: &str) -> Result<RingElement> {
        let mut total = self.zero();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(GwError::Parse(format!("empty term in class {s:?}")));
            }
            let (coeff, label) = match term.split_once('*') {
                Some((c, l)) => (rational::parse(c)?, l.trim()),
                None => (Rational::one(), term),
            };
            let basis = self.parse_basis_label(label)?;
            total = total.add(&basis.map(|b| b.scale(&coeff)).unwrap_or_else(|| self.zero()))?;
        }
        Ok(total)
    }

    fn parse_basis_label(&self, label: &str) -> Result<Option<RingElement>> {
        let bad = || GwError::Parse(format!("unknown class {label:?} on {self}"));
        let l = label.trim();
        match l {
            "0" => return Ok(None),
            "1" | "id" | "unit" | "σ_∅" | "s" | "s0" => return Ok(Some(self.unit())),
            "pt" | "point" => return Ok(Some(self.point_class())),
            _ => {}
        }
        if let Some(i) = self.0.basis.iter().position(|b| b.label == l) {
            return Ok(Some(RingElement::basis(self, i)));
        }
        let partition: Partition = if l == "h" {
            vec![1]
        } else if let Some(exp) = l.strip_prefix("h^") {
            let e: u32 = exp.parse().map_err(|_| bad())?;
            if e == 0 {
                vec![]
            } else {
                vec![e]
            }
        } else if let Some(rest) = l.strip_prefix("s_").or_else(|| l.strip_prefix("σ_")) {
            let inner = rest.trim_start_matches('{').trim_end_matches('}');
            inner
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else if let Some(digits) = l.strip_prefix('s') {
            digits.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
        } else {
            return Err(bad());
        };
        let partition = schubert::normalize(partition);
        if matches!(self.0.kind, SpaceKind::ProjectiveSpace(_)) && partition.len() > 1 {
            return Err(bad());
        }
        if partition.first().is_some_and(|&p| p > self.complex_dimension())
            && matches!(self.0.kind, SpaceKind::ProjectiveSpace(_))
        {
            // h^k with k above the dimension is the zero class.
            return Ok(None);
        }
        self.index_of_partition(&partition)
            .map(|i| Some(RingElement::basis(self, i)))
            .ok_or_else(bad)
    }

    /// The degree-`real_degree` by complementary-degree pairing matrix.
    pub fn pairing_matrix(&self, real_degree: u32) -> Vec<Vec<Rational>> {
        let top = 2 * self.complex_dimension();
        let rows: Vec<usize> = self.indices_of_degree(real_degree);
        let cols: Vec<usize> = if real_degree <= top { self.indices_of_degree(top - real_degree) } else { vec![] };
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.pairing(i, j)).collect())
            .collect()
    }

    pub fn indices_of_degree(&self, real_degree: u32) -> Vec<usize> {
        self.0.basis.iter().filter(|b| b.real_degree == real_degree).map(|b| b.index).collect()
    }

    /// `∫ e_i ∪ e_j`.
    pub fn pairing(&self, i: usize, j: usize) -> Rational {
        self.0.table[i][j].get(&self.point_index()).cloned().unwrap_or_else(Rational::zero)
    }

    fn product_of_basis(&self, i: usize, j: usize) -> &BTreeMap<usize, Rational> {
        &self.0.table[i][j]
    }
}

fn build_table(kind: SpaceKind, basis: &[BasisClass]) -> Vec<Vec<BTreeMap<usize, Rational>>> {
    let n = basis.len();
    let mut table = vec![vec![BTreeMap::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut entry = BTreeMap::new();
            match kind {
                SpaceKind::Point => {
                    entry.insert(0, Rational::one());
                }
                SpaceKind::ProjectiveSpace(m) => {
                    if i + j <= m as usize {
                        entry.insert(i + j, Rational::one());
                    }
                }
                SpaceKind::Grassmannian { k, n: nn } => {
                    let prod = schubert::schur_product(
                        &basis[i].partition,
                        &basis[j].partition,
                        k as usize,
                        Some(nn - k),
                    );
                    for (p, c) in prod {
                        let idx = basis
                            .iter()
                            .position(|b| b.partition == p)
                            .expect("truncated product stays inside the box");
                        entry.insert(idx, Rational::from_integer(c));
                    }
                }
            }
            table[i][j] = entry;
        }
    }
    table
}

fn compute_dual(data: &SpaceData) -> Result<Vec<usize>> {
    let top = data.basis.len() - 1;
    let mut dual = Vec::with_capacity(data.basis.len());
    for i in 0..data.basis.len() {
        let partners: Vec<usize> = (0..data.basis.len())
            .filter(|&j| data.table[i][j].get(&top).is_some_and(|c| !c.is_zero()))
            .collect();
        match partners.as_slice() {
            [j] if data.table[i][*j][&top].is_one() => dual.push(*j),
            _ => {
                return Err(GwError::Internal(format!(
                    "pairing on {} is not a permutation matrix at basis index {i}",
                    data.kind
                )))
            }
        }
    }
    Ok(dual)
}

/// A class in `H*(space)`: sparse exact coefficients on the distinguished basis.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    space: Space,
    coeffs: BTreeMap<usize, Rational>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| {
                let label = &self.space.basis()[*i].label;
                if c.is_one() {
                    label.clone()
                } else {
                    format!("{}*{}", rational::format(c), label)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl RingElement {
    pub fn zero(space: &Space) -> RingElement {
        RingElement { space: space.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis(space: &Space, index: usize) -> RingElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, Rational::one());
        RingElement { space: space.clone(), coeffs }
    }

    pub fn from_coefficients(space: &Space, coeffs: impl IntoIterator<Item = (usize, Rational)>) -> RingElement {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in coeffs {
            assert!(i < space.rank(), "basis index {i} out of range on {space}");
            *map.entry(i).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        RingElement { space: space.clone(), coeffs: map }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.coeffs.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    /// Real degree when homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(|&i| self.space.basis()[i].real_degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// `(c, i)` when the element is `c · e_i`.
    pub fn as_monomial(&self) -> Option<(usize, Rational)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(i, c)| (*i, c.clone()))
        } else {
            None
        }
    }

    fn check_space(&self, other: &RingElement) -> Result<()> {
        if self.space != other.space {
            return Err(GwError::SpaceMismatch(self.space.to_string(), other.space.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_space(other)?;
        Ok(RingElement::from_coefficients(
            &self.space,
            self.coeffs.iter().chain(other.coeffs.iter()).map(|(i, c)| (*i, c.clone())),
        ))
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        RingElement::from_coefficients(&self.space, self.coeffs.iter().map(|(i, x)| (*i, x * c)))
    }

    /// Classical cup product.
    pub fn cup(&self, other: &RingElement) -> Result<RingElement> {
        self.check_space(other)?;
        let mut out: Vec<(usize, Rational)> = Vec::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                for (k, c) in self.space.product_of_basis(*i, *j) {
                    out.push((*k, a * b * c));
                }
            }
        }
        Ok(RingElement::from_coefficients(&self.space, out))
    }

    /// Coefficient of the point class; zero without a top-degree part.
    pub fn integrate(&self) -> Rational {
        self.coefficient(self.space.point_index())
    }

    /// JSON object `{label: "p/q"}` with keys in basis order.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(i, c)| (self.space.basis()[*i].label.clone(), serde_json::Value::String(rational::format(c))))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Cup product of a list; the unit for an empty list.
pub fn cup_all<'a>(space: &Space, items: impl IntoIterator<Item = &'a RingElement>) -> Result<RingElement> {
    items.into_iter().try_fold(space.unit(), |acc, x| acc.cup(x))
}
