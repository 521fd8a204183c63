use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::bernoulli::bernoulli_number;
use super::character::QuadChar;
use super::lvalues::l_value_in;
use super::real::{BigReal, RealContext};
use super::reconstruct::{rational_reconstruct, MAX_RECONSTRUCT_DEN};
use super::DirichletError;
use crate::poly::{rational_string, Rational};

pub const PROBE_MAX_DEN: u64 = MAX_RECONSTRUCT_DEN;
/// Digits given up between the computed value and the reconstruction check.
const PROBE_MARGIN: u32 = 10;

fn check_critical(chi: &QuadChar, n: u32) -> Result<(), DirichletError> {
    let want = if n % 2 == 0 { 1 } else { -1 };
    if n == 0 || chi.parity() != want {
        return Err(DirichletError::NotCriticalPoint { n: i64::from(n), parity: chi.parity() });
    }
    Ok(())
}

/// `L(n, χ)·√N/π^n` at a critical point `n`.
pub fn normalized_value(chi: &QuadChar, n: u32, digits: u32) -> Result<BigReal, DirichletError> {
    check_critical(chi, n)?;
    let mut ctx = RealContext::new(digits)?;
    let l = l_value_in(&mut ctx, n, chi)?;
    let root = ctx.sqrt(&ctx.int(chi.modulus() as i64));
    let pi = ctx.pi();
    let pi_n = ctx.powi(&pi, n as usize);
    let v = ctx.div(&ctx.mul(&l, &root), &pi_n);
    Ok(ctx.wrap(v))
}

fn reconstruct(value: &BigReal, digits: u32) -> Result<Option<Rational>, DirichletError> {
    if digits <= PROBE_MARGIN {
        return Err(DirichletError::InvalidArgument(format!("probes need more than {PROBE_MARGIN} digits")));
    }
    let mut ctx = RealContext::new(digits)?;
    let tol = ctx.epsilon(digits - PROBE_MARGIN);
    Ok(rational_reconstruct(value, PROBE_MAX_DEN, &ctx.wrap(tol)))
}

/// Rational reconstruction of [`normalized_value`], re-verified to
/// `10^{-(digits-10)}`.
pub fn probe_algebraicity(chi: &QuadChar, n: u32, digits: u32) -> Result<Option<Rational>, DirichletError> {
    let v = normalized_value(chi, n, digits)?;
    reconstruct(&v, digits)
}

/// `|ζ(2n)·2·(2n)!/(2π)^{2n} − |B_{2n}||`.
pub fn euler_zeta_residual(n: u32, digits: u32) -> Result<BigReal, DirichletError> {
    if n == 0 {
        return Err(DirichletError::InvalidArgument("n must be positive".into()));
    }
    let mut ctx = RealContext::new(digits)?;
    let trivial = super::kronecker_chi(1).expect("trivial character");
    let z = l_value_in(&mut ctx, 2 * n, &trivial)?;
    let mut fact = BigInt::from(1);
    for i in 2..=u64::from(2 * n) {
        fact *= i;
    }
    let two_fact = ctx.rational(&Rational::from_integer(fact * 2));
    let pi = ctx.pi();
    let two_pi = ctx.mul(&ctx.int(2), &pi);
    let lhs = ctx.div(&ctx.mul(&z, &two_fact), &ctx.powi(&two_pi, 2 * n as usize));
    let b = ctx.rational(&bernoulli_number(2 * n as usize).abs());
    let diff = ctx.sub(&lhs, &b).abs();
    Ok(ctx.wrap(diff))
}

/// One row of a tensor probe table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(rename = "D_prime")]
    pub d_prime: Option<i64>,
    pub m: u32,
    pub normalized_value_digits: String,
    pub rational: Option<String>,
    pub pass: bool,
}

/// Probes `χχ′` at each critical `m ≤ m_max`.
pub fn rank1_tensor_probe(chi: &QuadChar, chi_prime: &QuadChar, m_max: u32, digits: u32) -> Result<Vec<ProbeRow>, DirichletError> {
    let product = chi.product(chi_prime)?;
    probe_rows(&product, chi.disc(), Some(chi_prime.disc()), m_max, digits)
}

/// Probes `χ` itself at each critical `m ≤ m_max`.
pub fn probe_table(chi: &QuadChar, m_max: u32, digits: u32) -> Result<Vec<ProbeRow>, DirichletError> {
    probe_rows(chi, chi.disc(), None, m_max, digits)
}

fn probe_rows(chi: &QuadChar, d: i64, d_prime: Option<i64>, m_max: u32, digits: u32) -> Result<Vec<ProbeRow>, DirichletError> {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        if check_critical(chi, m).is_err() {
            continue;
        }
        let v = normalized_value(chi, m, digits)?;
        let r = reconstruct(&v, digits)?;
        rows.push(ProbeRow {
            d,
            d_prime,
            m,
            normalized_value_digits: v.to_decimal(digits),
            pass: r.is_some(),
            rational: r.as_ref().map(rational_string),
        });
    }
    Ok(rows)
}
