//! Binomial coefficients from a shared, growable Pascal triangle.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

static PASCAL: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();

fn table() -> &'static RwLock<Vec<Vec<BigInt>>> {
    PASCAL.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

fn ensure_rows(n: usize) {
    if table().read().unwrap().len() > n {
        return;
    }
    let mut rows = table().write().unwrap();
    while rows.len() <= n {
        let prev = rows.last().unwrap();
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigInt::one());
        for w in prev.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        rows.push(next);
    }
}

/// `C(n, k)`, zero whenever `k < 0` or `k > n`. Only nonnegative `n` occurs
/// in this crate; negative `n` yields zero as well.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    ensure_rows(n);
    table().read().unwrap()[n][k].clone()
}

/// `C(n, k)` as `u64`; panics only if the value does not fit, which cannot
/// happen for `n <= 67`.
pub fn binom_u64(n: i64, k: i64) -> u64 {
    u64::try_from(binom(n, k)).expect("binomial coefficient exceeds u64")
}

/// Row `n` of Pascal's triangle, `C(n, 0..=n)`.
pub fn pascal_row(n: usize) -> Vec<BigInt> {
    ensure_rows(n);
    table().read().unwrap()[n].clone()
}

/// `(-1)^e` for any integer exponent.
pub fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub fn kronecker(a: i64, b: i64) -> BigInt {
    if a == b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(0, 0), BigInt::from(1));
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(3, 4), BigInt::zero());
        assert_eq!(binom_u64(10, 5), 252);
    }

    #[test]
    fn rows_sum_to_powers_of_two() {
        for n in 0..30usize {
            let s: BigInt = pascal_row(n).iter().sum();
            assert_eq!(s, BigInt::from(2u8).pow(n as u32));
        }
    }

    #[test]
    fn concurrent_growth() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || binom(40 + t, 20)))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            let v = h.join().unwrap();
            assert_eq!(v, binom(40 + t as i64, 20));
        }
    }
}
