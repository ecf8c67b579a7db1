//! Counts `N_d` of rational plane curves of degree `d` through `3d - 1` points.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{GwError, Result};
use crate::rational::binomial;

/// `[N_1, …, N_max]` from the associativity recursion seeded by `N_1 = 1`.
pub fn wdvv_table(max: u32) -> Result<Vec<BigInt>> {
    if max == 0 {
        return Err(GwError::Parameter("N_d needs d >= 1".into()));
    }
    let mut n: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for d in 2..=max as i64 {
        let mut acc = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let bracket = BigInt::from(d2) * binomial(3 * d - 4, 3 * d1 - 2)
                - BigInt::from(d1) * binomial(3 * d - 4, 3 * d1 - 1);
            acc += &n[d1 as usize] * &n[d2 as usize] * BigInt::from(d1 * d1 * d2) * bracket;
        }
        n.push(acc);
    }
    n.remove(0);
    Ok(n)
}

pub fn wdvv_nd(d: u32) -> Result<BigInt> {
    let table = wdvv_table(d)?;
    Ok(table[d as usize - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(wdvv_nd(1).unwrap(), BigInt::from(1));
        assert_eq!(wdvv_nd(2).unwrap(), BigInt::from(1));
        assert_eq!(wdvv_nd(3).unwrap(), BigInt::from(12));
        assert!(wdvv_nd(0).is_err());
    }

    #[test]
    fn integral_and_positive() {
        for v in wdvv_table(5).unwrap() {
            assert!(v > BigInt::zero());
        }
    }
}
