//! Partition combinatorics for Schubert calculus.
//!
//! Products are computed by expanding the left factor with the Jacobi-Trudi
//! determinant `s_λ = det(h_{λ_i + j - i})` and applying each complete
//! symmetric function to the right factor with the Pieri rule. Truncating to a
//! rectangle after every Pieri step is the quotient map onto the cohomology of
//! a Grassmannian, so the same routine serves both classical products (bounded
//! columns) and the unbounded products the rim-hook rule starts from.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Nonincreasing list of positive parts.
pub type Partition = Vec<u32>;

pub fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

pub fn normalize(mut p: Partition) -> Partition {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn is_partition(p: &[u32]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1]) && p.iter().all(|&x| x > 0)
}

pub fn fits(p: &[u32], rows: usize, cols: u32) -> bool {
    p.len() <= rows && p.first().is_none_or(|&c| c <= cols)
}

/// All partitions inside a `rows x cols` box, ordered by size and then
/// lexicographically decreasing (`σ_2` before `σ_{1,1}`).
pub fn rectangle_partitions(rows: usize, cols: u32) -> Vec<Partition> {
    fn rec(rows: usize, max_part: u32, prefix: &mut Partition, out: &mut Vec<Partition>) {
        out.push(prefix.clone());
        if prefix.len() == rows {
            return;
        }
        for part in 1..=max_part {
            prefix.push(part);
            rec(rows, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| size(a).cmp(&size(b)).then_with(|| b.cmp(a)));
    out
}

/// Complement of `p` in the `rows x cols` box, i.e. the Poincaré dual index.
pub fn complement(p: &[u32], rows: usize, cols: u32) -> Partition {
    let padded: Vec<u32> = (0..rows).map(|i| p.get(i).copied().unwrap_or(0)).collect();
    normalize(padded.iter().rev().map(|&x| cols - x).collect())
}

/// Pieri rule: every ν obtained from λ by adding a horizontal strip of `boxes`
/// cells, with at most `rows` rows and (if given) at most `cols` columns.
pub fn pieri(boxes: u32, lambda: &[u32], rows: usize, cols: Option<u32>) -> Vec<Partition> {
    let len = (lambda.len() + 1).min(rows);
    if lambda.len() > rows {
        return Vec::new();
    }
    let old: Vec<u32> = (0..len).map(|i| lambda.get(i).copied().unwrap_or(0)).collect();
    let mut out = Vec::new();
    let mut cur = old.clone();
    fn rec(
        i: usize,
        left: u32,
        old: &[u32],
        cur: &mut Vec<u32>,
        cols: Option<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == old.len() {
            if left == 0 {
                out.push(normalize(cur.clone()));
            }
            return;
        }
        // ν_i is bounded by the previous old row (horizontal strip) and the box.
        let mut upper = if i == 0 { old[0] + left } else { old[i - 1] };
        if let Some(c) = cols {
            upper = upper.min(c);
        }
        let lo = old[i];
        if upper < lo {
            return;
        }
        for v in lo..=upper.min(lo + left) {
            cur[i] = v;
            rec(i + 1, left - (v - lo), old, cur, cols, out);
        }
        cur[i] = old[i];
    }
    rec(0, boxes, &old, &mut cur, cols, &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm would be faster; n never exceeds the number of rows.
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                prefix.push(j);
                rec(prefix, used, out);
                prefix.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, inversions % 2 == 1)
        })
        .collect()
}

/// Product `s_λ · s_μ` in symmetric functions restricted to `rows` rows and,
/// optionally, `cols` columns. Coefficients are Littlewood-Richardson numbers.
pub fn schur_product(
    lambda: &[u32],
    mu: &[u32],
    rows: usize,
    cols: Option<u32>,
) -> BTreeMap<Partition, BigInt> {
    let mut total: BTreeMap<Partition, BigInt> = BTreeMap::new();
    let l = lambda.len();
    for (perm, odd) in permutations(l) {
        // Row a of the Jacobi-Trudi matrix contributes h_{λ_a + σ(a) - a}.
        let mut degrees = Vec::with_capacity(l);
        let mut vanishes = false;
        for (a, &col) in perm.iter().enumerate() {
            let d = lambda[a] as i64 + col as i64 - a as i64;
            if d < 0 {
                vanishes = true;
                break;
            }
            degrees.push(d as u32);
        }
        if vanishes {
            continue;
        }
        let mut current: BTreeMap<Partition, BigInt> = BTreeMap::new();
        current.insert(normalize(mu.to_vec()), BigInt::one());
        for &d in &degrees {
            let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
            for (p, c) in &current {
                for q in pieri(d, p, rows, cols) {
                    *next.entry(q).or_insert_with(BigInt::zero) += c;
                }
            }
            current = next;
        }
        for (p, c) in current {
            let e = total.entry(p).or_insert_with(BigInt::zero);
            if odd {
                *e -= c;
            } else {
                *e += c;
            }
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}
