use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::character::QuadChar;
use crate::poly::{int, Rational};

/// Largest `n` accepted by [`gen_bernoulli`] and [`l_negative`].
pub const MAX_BERNOULLI_INDEX: u32 = 64;

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `B_0, …, B_n` with `B_1 = -1/2`, from `Σ_{k≤n} C(n+1,k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut cache = CACHE.lock().expect("bernoulli cache");
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n {
        let m = cache.len() as u64;
        let s = cache
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (k, b)| acc + Rational::from_integer(binomial(m + 1, k as u64)) * b);
        cache.push(-s / int(m as i64 + 1));
    }
    cache[..=n].to_vec()
}

pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

/// `B_n(x) = Σ_k C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly(n: usize, x: &Rational) -> Rational {
    let b = bernoulli_numbers(n);
    let mut acc = Rational::zero();
    for (k, bk) in b.iter().enumerate() {
        if bk.is_zero() {
            continue;
        }
        acc += Rational::from_integer(binomial(n as u64, k as u64)) * bk * num_traits::pow(x.clone(), n - k);
    }
    acc
}

/// `B_{n,χ} = N^{n-1} Σ_{a=1}^{N} χ(a) B_n(a/N)`.
pub fn gen_bernoulli(n: u32, chi: &QuadChar) -> Rational {
    assert!((1..=MAX_BERNOULLI_INDEX).contains(&n), "n must lie in 1..={MAX_BERNOULLI_INDEX}");
    let big_n = chi.modulus() as i64;
    let mut acc = Rational::zero();
    for a in 1..=big_n {
        let c = chi.value(a);
        if c != 0 {
            acc += int(i64::from(c)) * bernoulli_poly(n as usize, &Rational::new(a.into(), big_n.into()));
        }
    }
    acc * num_traits::pow(int(big_n), n as usize - 1)
}

/// `L(1-n, χ) = -B_{n,χ}/n`.
pub fn l_negative(n: u32, chi: &QuadChar) -> Rational {
    -gen_bernoulli(n, chi) / int(i64::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::kronecker_chi;
    use crate::poly::rat;

    #[test]
    fn numbers() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
        assert!(b[3].is_zero() && b[11].is_zero());
    }

    #[test]
    fn generalized() {
        let m4 = kronecker_chi(-4).unwrap();
        assert_eq!(gen_bernoulli(1, &m4), rat(-1, 2));
        assert_eq!(gen_bernoulli(2, &m4), int(0));
        assert_eq!(gen_bernoulli(2, &kronecker_chi(1).unwrap()), rat(1, 6));
        assert_eq!(l_negative(1, &m4), rat(1, 2));
        assert_eq!(l_negative(1, &kronecker_chi(5).unwrap()), int(0));
        assert_eq!(l_negative(1, &kronecker_chi(1).unwrap()), rat(-1, 2));
        // Euler numbers: L(-2k, χ₋₄) = E_{2k}/2.
        assert_eq!(l_negative(3, &m4), rat(-1, 2));
        assert_eq!(l_negative(5, &m4), rat(5, 2));
    }

    #[test]
    fn quadratic_field_values() {
        // L(-1, χ₅) = -B_{2,χ₅}/2 = ζ_{Q(√5)}(-1)/ζ(-1) = (1/30)/(-1/12) = -2/5.
        assert_eq!(l_negative(2, &kronecker_chi(5).unwrap()), rat(-2, 5));
        // L(0, χ_D) = h/(w/2) for D < 0: h(-23) = 3, h(-3) = 1 with w = 6.
        assert_eq!(l_negative(1, &kronecker_chi(-23).unwrap()), int(3));
        assert_eq!(l_negative(1, &kronecker_chi(-3).unwrap()), rat(1, 3));
    }

    #[test]
    fn parity_vanishing() {
        for d in [-4, -3, -8, 5, 8, 12, -20, 40] {
            let chi = kronecker_chi(d).unwrap();
            for n in 2..=20u32 {
                let mismatch = i32::from(chi.parity()) != if n % 2 == 0 { 1 } else { -1 };
                assert_eq!(gen_bernoulli(n, &chi).is_zero(), mismatch, "D={d} n={n}");
            }
        }
    }
}
