use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::real::BigReal;
use crate::poly::Rational;

pub const MAX_RECONSTRUCT_DEN: u64 = 1_000_000_000_000;

/// Smallest-denominator continued-fraction convergent `p/q` of `x` with
/// `q ≤ max_den` and `|x - p/q| < tol`. `max_den` is capped at 10^12.
pub fn rational_reconstruct(x: &BigReal, max_den: u64, tol: &BigReal) -> Option<Rational> {
    let max_den = BigInt::from(max_den.min(MAX_RECONSTRUCT_DEN));
    let xr = x.to_rational();
    let tol = tol.to_rational().abs();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = xr.clone();
    loop {
        let a = r.floor().to_integer();
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        if k > max_den {
            return None;
        }
        let candidate = Rational::new(h.clone(), k.clone());
        if (&xr - &candidate).abs() < tol {
            return Some(candidate);
        }
        let frac = r - Rational::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        r = frac.recip();
        (h0, h1) = (h1, h);
        (k0, k1) = (k1, k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::RealContext;
    use crate::poly::rat;

    #[test]
    fn examples() {
        let mut ctx = RealContext::new(50).unwrap();
        let tol = ctx.epsilon(40);
        let tol = ctx.wrap(tol);
        let half = ctx.rational(&rat(1, 2));
        assert_eq!(rational_reconstruct(&ctx.wrap(half), 1000, &tol), Some(rat(1, 2)));
        let sixth = ctx.rational(&rat(1, 6));
        assert_eq!(rational_reconstruct(&ctx.wrap(sixth), 1000, &tol), Some(rat(1, 6)));
        let neg = ctx.rational(&rat(-355, 113));
        assert_eq!(rational_reconstruct(&ctx.wrap(neg), 1000, &tol), Some(rat(-355, 113)));
        let pi = ctx.pi();
        assert_eq!(rational_reconstruct(&ctx.wrap(pi), MAX_RECONSTRUCT_DEN, &tol), None);
        let big = ctx.rational(&rat(-100_822_507, 672_000_000_000));
        assert_eq!(rational_reconstruct(&ctx.wrap(big), MAX_RECONSTRUCT_DEN, &tol), Some(rat(-100_822_507, 672_000_000_000)));
    }

    #[test]
    fn loose_tolerance_prefers_small_denominators() {
        let mut ctx = RealContext::new(30).unwrap();
        let pi = ctx.pi();
        let tol = ctx.epsilon(2);
        assert_eq!(rational_reconstruct(&ctx.wrap(pi), 1000, &ctx.wrap(tol)), Some(rat(22, 7)));
    }
}
