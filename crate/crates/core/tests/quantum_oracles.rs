//! Independent checks of the quantum engine.

use gw_core::quantum::{rim_hook_product, wdvv_table, QuantumClass};
use gw_core::rational::{factorial, int, Rational};
use gw_core::ring::{RingElement, Space};
use gw_core::{gw_invariant, InvariantQuery};
use num_bigint::BigInt;

fn fact(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// `N_d` from the associativity equation `Γ_222 = Γ_112² - Γ_111 Γ_122` for
/// `Γ = Σ N_d e^{d t_1} t_2^{3d-1} / (3d-1)!`, comparing coefficients of
/// `e^{d t_1} t_2^{3d-4}`.
fn series_nd(max: usize) -> Vec<Rational> {
    let mut n: Vec<Rational> = vec![int(0), int(1)];
    for d in 2..=max as i64 {
        let mut rhs = int(0);
        for d1 in 1..d {
            let d2 = d - d1;
            let p = &n[d1 as usize] * &n[d2 as usize];
            let a = int(d1 * d1 * d2 * d2) / (fact(3 * d1 - 2) * fact(3 * d2 - 2));
            let b = int(d1 * d1 * d1 * d2) / (fact(3 * d1 - 1) * fact(3 * d2 - 3));
            rhs += p * (a - b);
        }
        n.push(rhs * fact(3 * d - 4));
    }
    n
}

#[test]
fn wdvv_matches_power_series() {
    let table = wdvv_table(8).unwrap();
    let series = series_nd(8);
    for d in 1..=8 {
        assert_eq!(Rational::from_integer(table[d - 1].clone()), series[d], "N_{d}");
        assert!(series[d].is_integer());
    }
    assert_eq!(table[3], BigInt::from(620));
}

#[test]
fn plane_curves_through_points() {
    let p2 = Space::projective(2).unwrap();
    let pt = p2.point_class();
    for (d, nd) in [(1u32, 1), (2, 1), (3, 12), (4, 620)] {
        let q = InvariantQuery::new(&p2, d, vec![pt.clone(); 3 * d as usize - 1]).unwrap();
        assert_eq!(gw_invariant(&q).unwrap(), int(nd));
    }
}

/// `σ_1 ⋆ σ_λ`: add a box inside the `k × (n-k)` rectangle, plus `q σ_ν` with
/// `ν = (λ_2 - 1, …, λ_k - 1)` when `λ` has a full first row and `k` rows.
fn quantum_pieri(lambda: &[u32], k: usize, n: u32) -> Vec<(u32, Vec<u32>)> {
    let cols = n - k as u32;
    let mut out = Vec::new();
    let mut padded = lambda.to_vec();
    padded.resize(k, 0);
    for i in 0..k {
        let mut p = padded.clone();
        p[i] += 1;
        if p[i] <= cols && (i == 0 || p[i] <= p[i - 1]) {
            out.push((0, p.into_iter().filter(|&x| x > 0).collect()));
        }
    }
    if padded[0] == cols && padded[k - 1] > 0 {
        out.push((1, padded[1..].iter().map(|x| x - 1).filter(|&x| x > 0).collect()));
    }
    out
}

#[test]
fn quantum_pieri_on_grassmannians() {
    for (k, n) in [(2u32, 5u32), (3, 6), (2, 4)] {
        let g = Space::grassmannian(k, n).unwrap();
        for b in g.basis() {
            let got = rim_hook_product(&[1], &b.partition, &g).unwrap();
            let terms = quantum_pieri(&b.partition, k as usize, n)
                .into_iter()
                .map(|(e, p)| (e, RingElement::basis(&g, g.index_of_partition(&p).unwrap())));
            let expected = QuantumClass::from_terms(&g, terms).unwrap();
            assert_eq!(got, expected, "σ1 ⋆ {:?} in Gr({k},{n})", b.partition);
        }
    }
}

#[test]
fn three_point_example_gr24() {
    let g = Space::grassmannian(2, 4).unwrap();
    let q = InvariantQuery::parse(&g, 2, "pt,pt,pt").unwrap();
    assert_eq!(gw_invariant(&q).unwrap(), int(1));
}
