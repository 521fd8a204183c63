//! Admissibility types of equivariant polynomials on period matrices.
//!
//! A polynomial `f` on `d x d` matrices has type `{(a_μ), (k⁺, k⁻)}` when
//! `f(p·x·γ) = Π det(p_μμ)^{a_μ} · f(x) · det(γ⁺)^{k⁺} det(γ⁻)^{k⁻}` for every
//! block-lower-triangular `p` (blocks given by the filtration ranks) and
//! block-diagonal `γ = diag(γ⁺, γ⁻)`.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hodge::{
    betti_signature, criticality, filtration_profile, tensor_hodge, BettiSignature, FiltrationProfile, HodgeError,
    PureHodgeData, Sign, TensorData,
};
use crate::poly::{determinant, int, GenericMatrix, Rational, SparsePolynomial, Var};
use crate::seed::derive_seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("partitions {0:?} and {1:?} differ")]
    PartitionMismatch(Vec<usize>, Vec<usize>),
    #[error("block index {index} outside 0..={blocks}")]
    IndexOutOfRange { index: usize, blocks: usize },
    #[error("{0} is not critical")]
    NotCritical(String),
    #[error("no period relation applies: {0}")]
    NoTheoremApplies(String),
    #[error("could not draw an invertible sample after {0} attempts")]
    DegenerateSample(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibilityType {
    pub partition: Vec<usize>,
    pub a: Vec<i64>,
    pub k_plus: i64,
    pub k_minus: i64,
}

impl AdmissibilityType {
    pub fn new(partition: Vec<usize>, a: Vec<i64>, k_plus: i64, k_minus: i64) -> Self {
        assert_eq!(partition.len(), a.len(), "one exponent per block");
        AdmissibilityType { partition, a, k_plus, k_minus }
    }

    pub fn zero(partition: &[usize]) -> Self {
        Self::new(partition.to_vec(), vec![0; partition.len()], 0, 0)
    }

    /// Type of the full determinant: `{(1,…,1), (1,1)}`.
    pub fn determinant(partition: &[usize]) -> Self {
        Self::new(partition.to_vec(), vec![1; partition.len()], 1, 1)
    }

    pub fn k(&self, sign: Sign) -> i64 {
        match sign {
            Sign::Plus => self.k_plus,
            Sign::Minus => self.k_minus,
        }
    }
}

/// Type of a product of polynomials: exponents add componentwise.
pub fn type_product(t1: &AdmissibilityType, t2: &AdmissibilityType) -> Result<AdmissibilityType, AdmissibilityError> {
    if t1.partition != t2.partition {
        return Err(AdmissibilityError::PartitionMismatch(t1.partition.clone(), t2.partition.clone()));
    }
    Ok(AdmissibilityType {
        partition: t1.partition.clone(),
        a: t1.a.iter().zip(&t2.a).map(|(x, y)| x + y).collect(),
        k_plus: t1.k_plus + t2.k_plus,
        k_minus: t1.k_minus + t2.k_minus,
    })
}

/// Type of `f^±`: ones on the first `frak_p` blocks, `(1,0)` or `(0,1)`.
///
/// `frak_p = 0` is accepted; it is the type of an empty minor.
pub fn f_pm_type(profile: &FiltrationProfile, frak_p: usize, sign: Sign) -> Result<AdmissibilityType, AdmissibilityError> {
    let m = profile.len();
    if frak_p > m {
        return Err(AdmissibilityError::IndexOutOfRange { index: frak_p, blocks: m });
    }
    let a = (0..m).map(|i| i64::from(i < frak_p)).collect();
    let (kp, km) = match sign {
        Sign::Plus => (1, 0),
        Sign::Minus => (0, 1),
    };
    Ok(AdmissibilityType::new(profile.mults.clone(), a, kp, km))
}

/// Type of the period minor `f^±` of a critical motive.
pub fn minor_type(h: &PureHodgeData, sign: Sign) -> Result<AdmissibilityType, AdmissibilityError> {
    let c = criticality(h);
    let frak_p = c.frak_p(sign).ok_or_else(|| AdmissibilityError::NotCritical(h.label().to_string()))?;
    f_pm_type(&filtration_profile(h), frak_p, sign)
}

fn critical_tensor(h: &PureHodgeData, hp: &PureHodgeData) -> Result<TensorData, AdmissibilityError> {
    let td = tensor_hodge(h, hp)?;
    if !td.is_critical() {
        return Err(AdmissibilityError::NotCritical(td.product_hodge.label().to_string()));
    }
    Ok(td)
}

fn selected_count(level: i64, others: &[i64], threshold: Option<i64>) -> i64 {
    match threshold {
        Some(k) => others.iter().filter(|&&l| level + l <= k).count() as i64,
        None => 0,
    }
}

/// `a^±_μ`: number of de Rham rows `l` of `M′` (with multiplicity) such
/// that `p_μ + level(l) ≤ k_{q^±}`; one entry per filtration block of `M`.
pub fn compute_a(h: &PureHodgeData, hp: &PureHodgeData, sign: Sign) -> Result<Vec<i64>, AdmissibilityError> {
    let td = critical_tensor(h, hp)?;
    let k = td.threshold(sign).expect("critical");
    let others = filtration_profile(hp).row_levels();
    Ok(filtration_profile(h).jumps.iter().map(|&p| selected_count(p, &others, k)).collect())
}

/// `a^±_r` for every de Rham row `r` of `M` (blocks expanded).
pub fn compute_a_rows(h: &PureHodgeData, hp: &PureHodgeData, sign: Sign) -> Result<Vec<i64>, AdmissibilityError> {
    let td = critical_tensor(h, hp)?;
    let k = td.threshold(sign).expect("critical");
    let others = filtration_profile(hp).row_levels();
    Ok(filtration_profile(h).row_levels().iter().map(|&p| selected_count(p, &others, k)).collect())
}

/// Dual counts `a^{*,±}_s = #{r : a^±_r ≥ s}` for `1 ≤ s ≤ d(M′)`.
pub fn compute_dual_a(h: &PureHodgeData, hp: &PureHodgeData, sign: Sign) -> Result<Vec<i64>, AdmissibilityError> {
    let rows = compute_a_rows(h, hp, sign)?;
    Ok((1..=hp.rank() as i64).map(|s| rows.iter().filter(|&&a| a >= s).count() as i64).collect())
}

/// Type of `x ↦ det Z^±(x, y)` for fixed `y`.
pub fn tensor_left_type(h: &PureHodgeData, hp: &PureHodgeData, sign: Sign) -> Result<AdmissibilityType, AdmissibilityError> {
    let a = compute_a(h, hp, sign)?;
    let sp = betti_signature(hp);
    Ok(AdmissibilityType::new(
        filtration_profile(h).mults,
        a,
        sp.get(sign) as i64,
        sp.get(sign.flip()) as i64,
    ))
}

/// Type of `y ↦ det Z^±(x, y)` for fixed `x`, on the blocks of `M′`.
pub fn tensor_right_type(h: &PureHodgeData, hp: &PureHodgeData, sign: Sign) -> Result<AdmissibilityType, AdmissibilityError> {
    tensor_left_type(hp, h, sign)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum CaseTag {
    /// Even rank ⊗ odd rank with `ε(M′) = +1`.
    EvenOddI,
    /// Even rank ⊗ odd rank with `ε(M′) = −1`.
    EvenOddII,
    BothEven,
    BothOdd { epsilon: Sign, epsilon_prime: Sign },
    /// Even rank ⊗ odd-rank critical motive with a `k`-dimensional middle type.
    Variation { k: u32 },
    /// `M` against a direct sum of critical motives.
    DirectSum { summands: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotiveExponent {
    pub motive: String,
    pub exponent: i64,
}

/// Governing case and the predicted relation
/// `c⁺/c⁻(M⊗M′) = (c⁺/c⁻(M))^{e_M} · (c⁺/c⁻(M′))^{e_M′}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCase {
    pub case_tag: CaseTag,
    /// `[e_M, e_M′]`.
    pub exponents: [MotiveExponent; 2],
    /// One-based `(r₀, s₀)` where `a^±` and the dual data differ (odd ⊗ odd).
    pub localization: Option<(usize, usize)>,
}

impl RelationCase {
    pub fn new(
        case_tag: CaseTag,
        left: &str,
        right: &str,
        left_exponent: i64,
        right_exponent: i64,
        localization: Option<(usize, usize)>,
    ) -> Self {
        RelationCase {
            case_tag,
            exponents: [
                MotiveExponent { motive: left.to_string(), exponent: left_exponent },
                MotiveExponent { motive: right.to_string(), exponent: right_exponent },
            ],
            localization,
        }
    }

    pub fn left_exponent(&self) -> i64 {
        self.exponents[0].exponent
    }

    pub fn right_exponent(&self) -> i64 {
        self.exponents[1].exponent
    }
}

fn case(h: &PureHodgeData, hp: &PureHodgeData, tag: CaseTag, e: i64, ep: i64, loc: Option<(usize, usize)>) -> RelationCase {
    RelationCase::new(tag, h.label(), hp.label(), e, ep, loc)
}

/// `d^-(M) + (ε(M) + 1)/2`, the row at which the odd ⊗ odd counts differ.
pub fn localization_index(sig: BettiSignature, eps: Sign) -> usize {
    sig.minus + usize::from(eps == Sign::Plus)
}

pub fn predict_case(h: &PureHodgeData, hp: &PureHodgeData) -> Result<RelationCase, AdmissibilityError> {
    critical_tensor(h, hp)?;
    let (d, dp) = (h.rank(), hp.rank());
    let (sig, sigp) = (betti_signature(h), betti_signature(hp));
    let small = h.hodge_numbers_at_most_one() && hp.hodge_numbers_at_most_one();
    if small {
        return match (d % 2 == 0, dp % 2 == 0) {
            (true, false) => {
                let eps_p = hp.epsilon().expect("odd rank with Hodge numbers ≤ 1 has a scalar middle");
                let tag = if eps_p == Sign::Plus { CaseTag::EvenOddI } else { CaseTag::EvenOddII };
                Ok(case(h, hp, tag, eps_p.as_i64(), 0, None))
            }
            (true, true) => Ok(case(h, hp, CaseTag::BothEven, 0, 0, None)),
            (false, false) => {
                let eps = h.epsilon().expect("scalar middle");
                let eps_p = hp.epsilon().expect("scalar middle");
                let loc = (localization_index(sig, eps), localization_index(sigp, eps_p));
                Ok(case(
                    h,
                    hp,
                    CaseTag::BothOdd { epsilon: eps, epsilon_prime: eps_p },
                    eps_p.as_i64(),
                    eps.as_i64(),
                    Some(loc),
                ))
            }
            (false, true) => Err(AdmissibilityError::NoTheoremApplies(format!(
                "{} has odd rank and {} even rank; put the even-rank motive first",
                h.label(),
                hp.label()
            ))),
        };
    }
    if d % 2 == 0 && h.hodge_numbers_at_most_one() && sig.plus == sig.minus && dp % 2 == 1 {
        if let Some(eps_p) = hp.epsilon() {
            let k = hp.middle_dimension();
            return Ok(case(h, hp, CaseTag::Variation { k }, eps_p.as_i64() * k as i64, 0, None));
        }
    }
    Err(AdmissibilityError::NoTheoremApplies(format!(
        "{} ⊗ {} matches none of the even/odd, even/even, odd/odd or middle-variation shapes",
        h.label(),
        hp.label()
    )))
}

const MAX_RETRIES: usize = 100;
const SAMPLE_BOUND: i64 = 9;

fn random_entry<R: Rng>(rng: &mut R) -> Rational {
    int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND))
}

fn invertible_block<R: Rng>(n: usize, rng: &mut R) -> Result<(GenericMatrix<Rational>, Rational), AdmissibilityError> {
    for _ in 0..MAX_RETRIES {
        let m = GenericMatrix::from_fn(n, n, |_, _| random_entry(rng));
        let det = determinant(&m).expect("small square block");
        if !num_traits::Zero::is_zero(&det) {
            return Ok((m, det));
        }
    }
    Err(AdmissibilityError::DegenerateSample(MAX_RETRIES))
}

/// Random block-lower-triangular matrix with invertible diagonal blocks,
/// together with the determinants of those blocks.
pub fn random_parabolic<R: Rng>(partition: &[usize], rng: &mut R) -> Result<(GenericMatrix<Rational>, Vec<Rational>), AdmissibilityError> {
    let d: usize = partition.iter().sum();
    let starts: Vec<usize> = partition.iter().scan(0, |acc, &s| {
        let start = *acc;
        *acc += s;
        Some(start)
    }).collect();
    let block_of: Vec<usize> = partition.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat(b).take(s)).collect();
    let mut diag = Vec::new();
    let mut dets = Vec::new();
    for &s in partition {
        let (m, det) = invertible_block(s, rng)?;
        diag.push(m);
        dets.push(det);
    }
    let p = GenericMatrix::from_fn(d, d, |i, j| {
        let (bi, bj) = (block_of[i], block_of[j]);
        if bi == bj {
            diag[bi].get(i - starts[bi], j - starts[bj]).clone()
        } else if bj < bi {
            random_entry(rng)
        } else {
            int(0)
        }
    });
    Ok((p, dets))
}

/// Random `diag(γ⁺, γ⁻)` with invertible blocks and their determinants.
pub fn random_levi<R: Rng>(split: BettiSignature, rng: &mut R) -> Result<(GenericMatrix<Rational>, Rational, Rational), AdmissibilityError> {
    let (a, det_a) = invertible_block(split.plus, rng)?;
    let (b, det_b) = invertible_block(split.minus, rng)?;
    let d = split.total();
    let g = GenericMatrix::from_fn(d, d, |i, j| {
        if i < split.plus && j < split.plus {
            a.get(i, j).clone()
        } else if i >= split.plus && j >= split.plus {
            b.get(i - split.plus, j - split.plus).clone()
        } else {
            int(0)
        }
    });
    Ok((g, det_a, det_b))
}

pub(crate) fn ipow(r: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 { num_traits::Inv::inv(p) } else { p }
}

fn assignment(tag: &str, m: &GenericMatrix<Rational>) -> BTreeMap<Var, Rational> {
    let mut a = BTreeMap::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            a.insert(Var::entry(tag, i, j), m.get(i, j).clone());
        }
    }
    a
}

/// Randomized check of the equivariance law for `poly` in the entries
/// `tag[i,j]` of a `d x d` matrix, `d = Σ partition = d⁺ + d⁻`.
pub fn check_equivariance(
    poly: &SparsePolynomial,
    tag: &str,
    claimed: &AdmissibilityType,
    split: BettiSignature,
    trials: usize,
    seed: u64,
) -> Result<bool, AdmissibilityError> {
    let d: usize = claimed.partition.iter().sum();
    if d != split.total() {
        return Err(AdmissibilityError::InvalidInput(format!(
            "partition sums to {d} but the Betti split has size {}",
            split.total()
        )));
    }
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &format!("equivariance/{trial}")));
        let mut x = None;
        for _ in 0..MAX_RETRIES {
            let cand = GenericMatrix::from_fn(d, d, |_, _| random_entry(&mut rng));
            let fx = poly.evaluate(&assignment(tag, &cand)).map_err(|e| AdmissibilityError::InvalidInput(e.to_string()))?;
            if !num_traits::Zero::is_zero(&fx) {
                x = Some((cand, fx));
                break;
            }
        }
        let (x, fx) = x.ok_or(AdmissibilityError::DegenerateSample(MAX_RETRIES))?;
        let (p, block_dets) = random_parabolic(&claimed.partition, &mut rng)?;
        let (g, det_a, det_b) = random_levi(split, &mut rng)?;
        let moved = p.mul(&x).mul(&g);
        let lhs = poly.evaluate(&assignment(tag, &moved)).map_err(|e| AdmissibilityError::InvalidInput(e.to_string()))?;
        let mut factor = ipow(&det_a, claimed.k_plus) * ipow(&det_b, claimed.k_minus);
        for (det, &a) in block_dets.iter().zip(&claimed.a) {
            factor *= ipow(det, a);
        }
        if lhs != factor * fx {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::period::{c_pm_tensor, symbolic_period_matrix_tagged};

    fn ty(partition: &[usize], a: &[i64], kp: i64, km: i64) -> AdmissibilityType {
        AdmissibilityType::new(partition.to_vec(), a.to_vec(), kp, km)
    }

    #[test]
    fn products_of_types() {
        let fp = ty(&[1, 1], &[1, 0], 1, 0);
        let fm = ty(&[1, 1], &[1, 0], 0, 1);
        assert_eq!(type_product(&fp, &fm).unwrap(), ty(&[1, 1], &[2, 0], 1, 1));
        assert_eq!(type_product(&fp, &AdmissibilityType::zero(&[1, 1])).unwrap(), fp);
        let det = AdmissibilityType::determinant(&[1, 1, 1]);
        assert_eq!(type_product(&det, &det).unwrap(), ty(&[1, 1, 1], &[2, 2, 2], 2, 2));
        assert!(matches!(
            type_product(&fp, &AdmissibilityType::zero(&[2])),
            Err(AdmissibilityError::PartitionMismatch(..))
        ));
    }

    #[test]
    fn minor_types() {
        let ell = filtration_profile(&catalog::ell());
        assert_eq!(f_pm_type(&ell, 1, Sign::Plus).unwrap(), ty(&[1, 1], &[1, 0], 1, 0));
        let sym = filtration_profile(&catalog::sym(Sign::Plus));
        assert_eq!(f_pm_type(&sym, 1, Sign::Minus).unwrap(), ty(&[1, 1, 1], &[1, 0, 0], 0, 1));
        assert_eq!(f_pm_type(&sym, 2, Sign::Plus).unwrap(), ty(&[1, 1, 1], &[1, 1, 0], 1, 0));
        assert!(matches!(f_pm_type(&sym, 4, Sign::Plus), Err(AdmissibilityError::IndexOutOfRange { .. })));
    }

    #[test]
    fn a_vectors() {
        use Sign::*;
        let (ell, sym) = (catalog::ell(), catalog::sym(Plus));
        assert_eq!(compute_a(&ell, &sym, Plus).unwrap(), [2, 1]);
        let spread = catalog::spread(Plus);
        assert_eq!(compute_a(&spread, &sym, Plus).unwrap(), [3, 2, 0]);
        assert_eq!(compute_a(&spread, &sym, Minus).unwrap(), [3, 1, 0]);
        for s in Sign::BOTH {
            assert_eq!(compute_a(&catalog::h4(), &sym, s).unwrap(), [3, 2, 1, 0]);
        }
        assert!(matches!(compute_a(&ell, &ell, Plus), Err(AdmissibilityError::NotCritical(_))));
    }

    #[test]
    fn dual_vectors() {
        use Sign::*;
        let (ell, sym) = (catalog::ell(), catalog::sym(Plus));
        for s in Sign::BOTH {
            assert_eq!(compute_dual_a(&ell, &sym, s).unwrap(), [2, 1, 0]);
            assert_eq!(compute_dual_a(&ell, &sym, s).unwrap(), compute_a(&sym, &ell, s).unwrap());
        }
        let spread = catalog::spread(Plus);
        assert_eq!(compute_dual_a(&spread, &sym, Plus).unwrap(), [2, 2, 1]);
        assert_eq!(compute_dual_a(&spread, &sym, Minus).unwrap(), [2, 1, 1]);
        assert_eq!(compute_dual_a(&ell, &catalog::artin(Plus), Plus).unwrap().len(), 1);
    }

    #[test]
    fn cases() {
        use Sign::*;
        let c = predict_case(&catalog::ell(), &catalog::sym(Plus)).unwrap();
        assert_eq!(c.case_tag, CaseTag::EvenOddI);
        assert_eq!((c.left_exponent(), c.right_exponent()), (1, 0));
        let c = predict_case(&catalog::ell(), &catalog::sym(Minus)).unwrap();
        assert_eq!((c.case_tag, c.left_exponent()), (CaseTag::EvenOddII, -1));
        let c = predict_case(&catalog::ell(), &catalog::ell3()).unwrap();
        assert_eq!((c.case_tag, c.left_exponent(), c.right_exponent()), (CaseTag::BothEven, 0, 0));
        let c = predict_case(&catalog::spread(Plus), &catalog::sym(Plus)).unwrap();
        assert_eq!(c.case_tag, CaseTag::BothOdd { epsilon: Plus, epsilon_prime: Plus });
        assert_eq!(c.localization, Some((2, 2)));
        let c = predict_case(&catalog::ell(), &catalog::fat(Plus)).unwrap();
        assert_eq!((c.case_tag, c.left_exponent()), (CaseTag::Variation { k: 3 }, 3));
        assert!(matches!(
            predict_case(&catalog::sym(Plus), &catalog::ell()),
            Err(AdmissibilityError::NoTheoremApplies(_))
        ));
        assert!(matches!(predict_case(&catalog::ell(), &catalog::ell()), Err(AdmissibilityError::NotCritical(_))));
    }

    #[test]
    fn equivariance_of_minors() {
        let x = symbolic_period_matrix_tagged(&catalog::ell(), "x").unwrap();
        let split = x.layout.col_split;
        let fp = x.f_plus();
        assert!(check_equivariance(&fp, "x", &ty(&[1, 1], &[1, 0], 1, 0), split, 10, 1).unwrap());
        assert!(!check_equivariance(&fp, "x", &ty(&[1, 1], &[0, 1], 1, 0), split, 10, 1).unwrap());
        let s = symbolic_period_matrix_tagged(&catalog::sym(Sign::Plus), "x").unwrap();
        assert!(check_equivariance(&s.delta(), "x", &AdmissibilityType::determinant(&[1, 1, 1]), s.layout.col_split, 10, 2).unwrap());
    }

    #[test]
    fn tensor_slices_have_predicted_types() {
        let (m, mp) = (catalog::ell(), catalog::sym(Sign::Plus));
        let td = tensor_hodge(&m, &mp).unwrap();
        let x = symbolic_period_matrix_tagged(&m, "x").unwrap();
        let y = symbolic_period_matrix_tagged(&mp, "y").unwrap();
        for sign in Sign::BOTH {
            let h = c_pm_tensor(&x, &y, sign, &td).unwrap();
            let y0: BTreeMap<Var, Rational> = (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .map(|(i, j)| (Var::entry("y", i, j), int((i * 3 + j) as i64 * 7 % 11 - 4)))
                .collect();
            let hx = h.substitute(&y0);
            let t = tensor_left_type(&m, &mp, sign).unwrap();
            assert!(check_equivariance(&hx, "x", &t, x.layout.col_split, 10, 3).unwrap(), "{sign}");
        }
    }
}
