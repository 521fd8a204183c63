use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{Signed, Zero};

use super::bernoulli::bernoulli_number;
use super::DirichletError;
use crate::poly::Rational;

pub const DEFAULT_DIGITS: u32 = 50;
pub const MAX_DIGITS: u32 = 200;
/// Extra decimal digits carried internally beyond the requested accuracy.
const GUARD_DIGITS: u32 = 20;
const RM: RoundingMode = RoundingMode::ToEven;

/// Binary float tagged with the decimal accuracy it was computed for.
#[derive(Debug, Clone)]
pub struct BigReal {
    value: BigFloat,
    digits: u32,
}

impl BigReal {
    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Exact rational value of the stored binary float.
    pub fn to_rational(&self) -> Rational {
        float_to_rational(&self.value)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.to_rational();
        num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded to `places` fractional digits.
    pub fn to_decimal(&self, places: u32) -> String {
        let r = self.to_rational();
        let scale = BigInt::from(10u32).pow(places);
        let scaled = (r.abs() * Rational::from_integer(scale) + Rational::new(1.into(), 2.into())).floor().to_integer();
        let mut digits = scaled.to_string();
        if digits.len() <= places as usize {
            digits = "0".repeat(places as usize + 1 - digits.len()) + &digits;
        }
        let split = digits.len() - places as usize;
        let sign = if r.is_negative() && !scaled.is_zero() { "-" } else { "" };
        if places == 0 {
            format!("{sign}{digits}")
        } else {
            format!("{sign}{}.{}", &digits[..split], &digits[split..])
        }
    }

    /// `|self - other| < 10^{-places}`, compared exactly.
    pub fn close_to(&self, other: &Rational, places: u32) -> bool {
        (self.to_rational() - other).abs() < ten_pow_neg(places)
    }
}

pub(crate) fn ten_pow_neg(places: u32) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(10u32).pow(places))
}

fn float_to_rational(x: &BigFloat) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let (words, _, sign, e, _) = x.as_raw_parts().expect("finite value");
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let m = BigInt::from_biguint(
        if sign == astro_float::Sign::Neg { BigSign::Minus } else { BigSign::Plus },
        BigUint::from_bytes_le(&bytes),
    );
    let shift = i64::from(e) - 8 * bytes.len() as i64;
    let two = BigInt::from(2);
    if shift >= 0 {
        Rational::from_integer(m * two.pow(shift as u32))
    } else {
        Rational::new(m, two.pow((-shift) as u32))
    }
}

/// Working precision, rounding mode and constant cache for one task.
pub struct RealContext {
    digits: u32,
    p: usize,
    cc: Consts,
    /// `B_{2j}/(2j)!` for `j = 1, 2, …`, filled on demand.
    em_coeffs: Vec<BigFloat>,
}

impl RealContext {
    /// Context giving results accurate to `digits` decimal places.
    pub fn new(digits: u32) -> Result<Self, DirichletError> {
        if digits == 0 || digits > MAX_DIGITS {
            return Err(DirichletError::PrecisionUnreachable(format!("{digits} digits requested, supported range is 1..={MAX_DIGITS}")));
        }
        let working = f64::from(digits + GUARD_DIGITS);
        let p = (working * std::f64::consts::LOG2_10).ceil() as usize + 64;
        let cc = Consts::new().map_err(|e| DirichletError::PrecisionUnreachable(format!("{e:?}")))?;
        Ok(RealContext { digits, p, cc, em_coeffs: Vec::new() })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working digits including the guard.
    pub fn working_digits(&self) -> u32 {
        self.digits + GUARD_DIGITS
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn wrap(&self, value: BigFloat) -> BigReal {
        BigReal { value, digits: self.digits }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        n.div(&d, self.p, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc)
    }

    /// `10^{-places}` as a float.
    pub fn epsilon(&mut self, places: u32) -> BigFloat {
        let r = ten_pow_neg(places);
        self.rational(&r)
    }

    /// `B_{2j}/(2j)!`, one-based `j`.
    pub(crate) fn em_coeff(&mut self, j: usize) -> BigFloat {
        while self.em_coeffs.len() < j {
            let k = self.em_coeffs.len() + 1;
            let mut fact = BigInt::from(1);
            for i in 2..=(2 * k) as u64 {
                fact *= i;
            }
            let c = bernoulli_number(2 * k) / Rational::from_integer(fact);
            let f = self.rational(&c);
            self.em_coeffs.push(f);
        }
        self.em_coeffs[j - 1].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn exact_round_trip_of_dyadics() {
        let mut ctx = RealContext::new(30).unwrap();
        for r in [rat(1, 2), rat(-3, 8), int(12345), rat(7, 1024)] {
            let f = ctx.rational(&r);
            assert_eq!(ctx.wrap(f).to_rational(), r);
        }
        assert_eq!(ctx.wrap(ctx.int(0)).to_rational(), int(0));
    }

    #[test]
    fn decimal_rendering() {
        let mut ctx = RealContext::new(30).unwrap();
        let third = ctx.rational(&rat(1, 3));
        assert_eq!(ctx.wrap(third).to_decimal(5), "0.33333");
        let x = ctx.rational(&rat(-5, 4));
        assert_eq!(ctx.wrap(x).to_decimal(3), "-1.250");
        let pi = ctx.pi();
        assert_eq!(ctx.wrap(pi).to_decimal(20), "3.14159265358979323846");
    }

    #[test]
    fn precision_limits() {
        assert!(RealContext::new(0).is_err());
        assert!(matches!(RealContext::new(201), Err(DirichletError::PrecisionUnreachable(_))));
        assert!(RealContext::new(200).is_ok());
    }
}
