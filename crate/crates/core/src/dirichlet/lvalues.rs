use astro_float::BigFloat;

use super::character::QuadChar;
use super::real::{BigReal, RealContext};
use super::DirichletError;

/// Euler–Maclaurin needs the tail start beyond roughly `0.37·digits`; this
/// is comfortably past it.
fn tail_start(ctx: &RealContext) -> i64 {
    i64::from(ctx.working_digits()) + 10
}

fn below(term: &BigFloat, eps: &BigFloat) -> bool {
    matches!(term.abs().cmp(eps), Some(c) if c < 0)
}

fn unreachable(what: &str, ctx: &RealContext) -> DirichletError {
    DirichletError::PrecisionUnreachable(format!("{what} did not converge to {} digits", ctx.digits()))
}

/// Hurwitz zeta `ζ(s, num/den)` for `s ≥ 2`, by Euler–Maclaurin summation
/// carried until the first correction term drops below the working epsilon.
pub fn hurwitz_zeta(ctx: &mut RealContext, s: u32, num: i64, den: i64) -> Result<BigFloat, DirichletError> {
    if s < 2 || num <= 0 || den <= 0 {
        return Err(DirichletError::InvalidArgument(format!("ζ({s}, {num}/{den})")));
    }
    let m = tail_start(ctx);
    let eps = ctx.epsilon(ctx.working_digits());
    let denf = ctx.int(den);
    let mut sum = ctx.int(0);
    for k in 0..m {
        let xk = ctx.div(&ctx.int(num + k * den), &denf);
        let t = ctx.div(&ctx.int(1), &ctx.powi(&xk, s as usize));
        sum = ctx.add(&sum, &t);
    }
    let x = ctx.div(&ctx.int(num + m * den), &denf);
    let x_pow_s = ctx.powi(&x, s as usize);
    let inv_x_s = ctx.div(&ctx.int(1), &x_pow_s);
    // x^{1-s}/(s-1) + x^{-s}/2
    let integral = ctx.div(&ctx.mul(&inv_x_s, &x), &ctx.int(i64::from(s) - 1));
    sum = ctx.add(&sum, &integral);
    sum = ctx.add(&sum, &ctx.div(&inv_x_s, &ctx.int(2)));
    let x2 = ctx.mul(&x, &x);
    // r_j = s(s+1)…(s+2j-2) · x^{-s-2j+1}
    let mut r = ctx.div(&ctx.mul(&ctx.int(i64::from(s)), &inv_x_s), &x);
    let max_j = 4 * ctx.working_digits() as usize;
    for j in 1..=max_j {
        let c = ctx.em_coeff(j);
        let term = ctx.mul(&c, &r);
        sum = ctx.add(&sum, &term);
        if below(&term, &eps) {
            return Ok(sum);
        }
        let a = i64::from(s) + 2 * j as i64 - 1;
        r = ctx.div(&ctx.mul(&r, &ctx.int(a * (a + 1))), &x2);
    }
    Err(unreachable("Hurwitz zeta", ctx))
}

/// Digamma `ψ(num/den)` by the same summation.
fn digamma(ctx: &mut RealContext, num: i64, den: i64) -> Result<BigFloat, DirichletError> {
    let m = tail_start(ctx);
    let eps = ctx.epsilon(ctx.working_digits());
    let denf = ctx.int(den);
    let mut sum = ctx.int(0);
    for k in 0..m {
        let xk = ctx.div(&ctx.int(num + k * den), &denf);
        sum = ctx.sub(&sum, &ctx.div(&ctx.int(1), &xk));
    }
    let x = ctx.div(&ctx.int(num + m * den), &denf);
    let lnx = ctx.ln(&x);
    sum = ctx.add(&sum, &lnx);
    sum = ctx.sub(&sum, &ctx.div(&ctx.int(1), &ctx.mul(&ctx.int(2), &x)));
    let x2 = ctx.mul(&x, &x);
    // B_{2j}/(2j) x^{-2j} = em_coeff(j) · (2j-1)! x^{-2j}
    let mut r = ctx.div(&ctx.int(1), &x2);
    let max_j = 4 * ctx.working_digits() as usize;
    for j in 1..=max_j {
        let c = ctx.em_coeff(j);
        let term = ctx.mul(&c, &r);
        sum = ctx.sub(&sum, &term);
        if below(&term, &eps) {
            return Ok(sum);
        }
        let a = 2 * j as i64;
        r = ctx.div(&ctx.mul(&r, &ctx.int(a * (a + 1))), &x2);
    }
    Err(unreachable("digamma", ctx))
}

pub(crate) fn l_value_in(ctx: &mut RealContext, n: u32, chi: &QuadChar) -> Result<BigFloat, DirichletError> {
    if n == 0 {
        return Err(DirichletError::InvalidArgument("L(s, χ) is computed here for s ≥ 1 only".into()));
    }
    if n == 1 && chi.is_trivial() {
        return Err(DirichletError::InvalidArgument("ζ(s) has a pole at s = 1".into()));
    }
    let big_n = chi.modulus() as i64;
    let mut acc = ctx.int(0);
    for a in 1..=big_n {
        let c = chi.value(a);
        if c == 0 {
            continue;
        }
        let v = if n == 1 { digamma(ctx, a, big_n)? } else { hurwitz_zeta(ctx, n, a, big_n)? };
        acc = if c > 0 { ctx.add(&acc, &v) } else { ctx.sub(&acc, &v) };
    }
    let scale = ctx.powi(&ctx.int(big_n), n as usize);
    let mut l = ctx.div(&acc, &scale);
    if n == 1 {
        // L(1, χ) = -(1/N) Σ χ(a) ψ(a/N)
        l = l.neg();
    }
    Ok(l)
}

/// `L(n, χ) = N^{-n} Σ_a χ(a) ζ(n, a/N)`, or via digamma at `n = 1`;
/// absolute error below `10^{-digits}`.
pub fn l_numeric(n: u32, chi: &QuadChar, digits: u32) -> Result<BigReal, DirichletError> {
    let mut ctx = RealContext::new(digits)?;
    let v = l_value_in(&mut ctx, n, chi)?;
    Ok(ctx.wrap(v))
}

/// `g(χ) = Σ_{a mod N} χ(a) e^{2πia/N}` as `(re, im)`.
pub fn gauss_sum(chi: &QuadChar, digits: u32) -> Result<(BigReal, BigReal), DirichletError> {
    let mut ctx = RealContext::new(digits)?;
    let big_n = chi.modulus() as i64;
    let pi = ctx.pi();
    let two_pi = ctx.mul(&ctx.int(2), &pi);
    let (mut re, mut im) = (ctx.int(0), ctx.int(0));
    for a in 0..big_n {
        let c = chi.value(a);
        if c == 0 {
            continue;
        }
        let t = ctx.div(&ctx.mul(&two_pi, &ctx.int(a)), &ctx.int(big_n));
        let (cs, sn) = (ctx.cos(&t), ctx.sin(&t));
        if c > 0 {
            re = ctx.add(&re, &cs);
            im = ctx.add(&im, &sn);
        } else {
            re = ctx.sub(&re, &cs);
            im = ctx.sub(&im, &sn);
        }
    }
    Ok((ctx.wrap(re), ctx.wrap(im)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::kronecker_chi;
    use crate::poly::{int, parse_rational, Rational};

    fn dec(s: &str) -> Rational {
        let (i, f) = s.split_once('.').unwrap();
        parse_rational(&format!("{i}{f}/1{}", "0".repeat(f.len()))).unwrap()
    }

    #[test]
    fn leibniz_value() {
        let l = l_numeric(1, &kronecker_chi(-4).unwrap(), 30).unwrap();
        assert!(l.close_to(&dec("0.785398163397448309615660845819875721"), 30));
    }

    #[test]
    fn zeta_two() {
        let z = l_numeric(2, &kronecker_chi(1).unwrap(), 40).unwrap();
        assert!(z.close_to(&dec("1.6449340668482264364724151666460251892189499"), 40));
    }

    #[test]
    fn catalan_constant() {
        let g = l_numeric(2, &kronecker_chi(-4).unwrap(), 40).unwrap();
        assert!(g.close_to(&dec("0.915965594177219015054603514932384110774149374"), 40));
    }

    #[test]
    fn l_one_of_real_quadratic() {
        // L(1, χ₅) = 2 ln((1+√5)/2)/√5
        let l = l_numeric(1, &kronecker_chi(5).unwrap(), 30).unwrap();
        assert!(l.close_to(&dec("0.43040894096400403888943323295060542"), 30));
    }

    #[test]
    fn gauss_sums_small() {
        let (re, im) = gauss_sum(&kronecker_chi(-4).unwrap(), 40).unwrap();
        assert!(re.close_to(&int(0), 38) && im.close_to(&int(2), 38));
        let (re, im) = gauss_sum(&kronecker_chi(5).unwrap(), 40).unwrap();
        assert!(re.close_to(&dec("2.2360679774997896964091736687312762354406"), 38));
        assert!(im.close_to(&int(0), 38));
    }

    #[test]
    fn invalid_points() {
        assert!(l_numeric(1, &kronecker_chi(1).unwrap(), 20).is_err());
        assert!(matches!(l_numeric(2, &kronecker_chi(-4).unwrap(), 500), Err(DirichletError::PrecisionUnreachable(_))));
    }
}
