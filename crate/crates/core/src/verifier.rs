//! Verification of period relations for tensor products.
//!
//! Every relation has the shape `c⁺/c⁻(M⊗M′) ∝ (f⁺/f⁻)^e (g⁺/g⁻)^{e′}` and is
//! checked cross-multiplied as a polynomial identity in the entries of generic
//! period matrices `X` (for `M`) and `Y` (for `M′`): either by symbolic
//! expansion or by evaluating both sides at random integer points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_traits::{One, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::admissibility::{predict_case, AdmissibilityError, CaseTag, RelationCase};
use crate::hodge::{betti_signature, criticality, tensor_hodge, HodgeError, PureHodgeData, Sign, TensorData};
use crate::period::{build_z, period_minor, random_matrix, symbolic_period_matrix_tagged, PeriodError, PeriodLayout, PeriodMatrix};
use crate::poly::{int, proportionality, rational_string, GenericMatrix, Rational, SparsePolynomial, Var};
use crate::seed::derive_seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("{0} is not critical")]
    NotCritical(String),
    #[error("summand {0} is not critical")]
    SummandNotCritical(String),
    #[error("tensor product with summand {0} is not critical")]
    SummandTensorNotCritical(String),
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("sample points kept vanishing after {0} attempts")]
    DegenerateSample(usize),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Period(#[from] PeriodError),
}

impl From<AdmissibilityError> for VerifyError {
    fn from(e: AdmissibilityError) -> Self {
        match e {
            AdmissibilityError::NotCritical(l) => VerifyError::NotCritical(l),
            AdmissibilityError::NoTheoremApplies(m) => VerifyError::HypothesisViolation(m),
            AdmissibilityError::DegenerateSample(n) => VerifyError::DegenerateSample(n),
            AdmissibilityError::Hodge(h) => VerifyError::Hodge(h),
            other => VerifyError::HypothesisViolation(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Exact,
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyMode {
    pub kind: ModeKind,
    pub trials: usize,
    pub coeff_bound: u64,
    pub seed: u64,
}

pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_COEFF_BOUND: u64 = 1000;
pub const MIN_TRIALS: usize = 8;

impl VerifyMode {
    pub fn exact() -> Self {
        VerifyMode { kind: ModeKind::Exact, trials: DEFAULT_TRIALS, coeff_bound: DEFAULT_COEFF_BOUND, seed: 0 }
    }

    pub fn probabilistic(trials: usize, coeff_bound: u64, seed: u64) -> Result<Self, VerifyError> {
        let m = VerifyMode { kind: ModeKind::Probabilistic, trials, coeff_bound, seed };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.coeff_bound == 0 || self.coeff_bound > i64::MAX as u64 / 2 {
            return Err(VerifyError::InvalidMode(format!("coefficient bound {} out of range", self.coeff_bound)));
        }
        if self.kind == ModeKind::Probabilistic && self.trials < MIN_TRIALS {
            return Err(VerifyError::InvalidMode(format!("{} trials, need at least {MIN_TRIALS}", self.trials)));
        }
        Ok(())
    }

    fn with_seed(self, seed: u64) -> Self {
        VerifyMode { seed, ..self }
    }
}

impl Default for VerifyMode {
    fn default() -> Self {
        VerifyMode { kind: ModeKind::Probabilistic, trials: DEFAULT_TRIALS, coeff_bound: DEFAULT_COEFF_BOUND, seed: 0 }
    }
}

/// A factor of one side of a period identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeriodFactor {
    /// `det Z^±(X, Y_i)`.
    Tensor { summand: usize, sign: Sign },
    /// `f^±(X)`.
    Left(Sign),
    /// `g^±(Y_i)`.
    Right { summand: usize, sign: Sign },
}

/// `Π lhs ∝ Π rhs`, factors with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodIdentity {
    pub lhs: Vec<(PeriodFactor, u32)>,
    pub rhs: Vec<(PeriodFactor, u32)>,
}

fn push_ratio(lhs: &mut Vec<(PeriodFactor, u32)>, rhs: &mut Vec<(PeriodFactor, u32)>, make: impl Fn(Sign) -> PeriodFactor, e: i64) {
    let n = e.unsigned_abs() as u32;
    if n == 0 {
        return;
    }
    let (l, r) = if e > 0 { (Sign::Minus, Sign::Plus) } else { (Sign::Plus, Sign::Minus) };
    lhs.push((make(l), n));
    rhs.push((make(r), n));
}

impl PeriodIdentity {
    /// `Π_i det Z⁺_i · (f⁻)^e (g⁻)^{e′} ∝ Π_i det Z⁻_i · (f⁺)^e (g⁺)^{e′}`;
    /// a negative exponent swaps the two minors. `e′` refers to summand 0.
    pub fn ratio_relation(summands: usize, e: i64, e_prime: i64) -> Self {
        let mut lhs: Vec<_> = (0..summands).map(|i| (PeriodFactor::Tensor { summand: i, sign: Sign::Plus }, 1)).collect();
        let mut rhs: Vec<_> = (0..summands).map(|i| (PeriodFactor::Tensor { summand: i, sign: Sign::Minus }, 1)).collect();
        push_ratio(&mut lhs, &mut rhs, PeriodFactor::Left, e);
        push_ratio(&mut lhs, &mut rhs, |s| PeriodFactor::Right { summand: 0, sign: s }, e_prime);
        PeriodIdentity { lhs, rhs }
    }

    pub fn render(&self, summands: usize) -> String {
        format!("{} ∝ {}", render_side(&self.lhs, summands), render_side(&self.rhs, summands))
    }
}

fn render_side(side: &[(PeriodFactor, u32)], summands: usize) -> String {
    let y = |i: usize| if summands > 1 { format!("Y{}", i + 1) } else { "Y".to_string() };
    side.iter()
        .map(|&(f, n)| {
            let base = match f {
                PeriodFactor::Tensor { summand, sign } if summands > 1 => {
                    format!("det Z{}(X,{})", sign.superscript(), y(summand))
                }
                PeriodFactor::Tensor { sign, .. } => format!("det Z{}", sign.superscript()),
                PeriodFactor::Left(sign) => format!("f{}(X)", sign.superscript()),
                PeriodFactor::Right { summand, sign } => format!("g{}({})", sign.superscript(), y(summand)),
            };
            if n == 1 { base } else { format!("{base}^{n}") }
        })
        .collect::<Vec<_>>()
        .join("·")
}

fn ser_rational_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    crate::poly::serde_rational::option::serialize(r, s)
}

fn ser_ratios<S: Serializer>(r: &[Option<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|x| x.as_ref().map(rational_string)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Evidence {
    /// Both sides expanded; `proportional` is the outcome of the term-wise test.
    Symbolic { proportional: bool, lhs_terms: usize, rhs_terms: usize },
    /// `lhs/rhs` at each sample point; `None` where only the right side vanished.
    Sampled {
        #[serde(serialize_with = "ser_ratios")]
        ratios: Vec<Option<Rational>>,
        degree: u64,
        /// Schwartz–Zippel bound `(degree/(2B+1))^(trials-1)` on a false pass.
        false_pass_bound: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub motive: String,
    pub partner: String,
    pub case: RelationCase,
    pub identity_checked: String,
    pub passed: bool,
    #[serde(serialize_with = "ser_rational_opt")]
    pub constant: Option<Rational>,
    pub mode: VerifyMode,
    pub evidence: Evidence,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub summands: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ⊗ {}: {}", self.motive, self.partner, self.identity_checked)?;
        if let Some(c) = &self.constant {
            write!(f, " (constant {})", rational_string(c))?;
        }
        Ok(())
    }
}

impl RelationReport {
    /// Multi-line text rendering including summand reports.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{self}");
        let e = &self.case.exponents;
        let _ = writeln!(out, "  case {:?}, exponents {}={} {}={}", self.case.case_tag, e[0].motive, e[0].exponent, e[1].motive, e[1].exponent);
        match &self.evidence {
            Evidence::Symbolic { proportional, lhs_terms, rhs_terms } => {
                let _ = writeln!(out, "  symbolic: proportional={proportional} terms={lhs_terms}/{rhs_terms}");
            }
            Evidence::Sampled { ratios, degree, false_pass_bound } => {
                let _ = writeln!(out, "  sampled: {} trials, degree {degree}, false-pass bound {false_pass_bound:.3e}", ratios.len());
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for s in &self.summands {
            for line in s.to_text().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

/// Generic period matrices for `M` and a list of partners `M′_i`, with a
/// cache of expanded factors.
pub struct PeriodSystem {
    x: PeriodMatrix,
    ys: Vec<PeriodMatrix>,
    tensors: Vec<TensorData>,
    transform: Option<(GenericMatrix<Rational>, GenericMatrix<Rational>)>,
    cache: BTreeMap<PeriodFactor, SparsePolynomial>,
}

impl PeriodSystem {
    pub fn new(h: &PureHodgeData, partners: &[PureHodgeData]) -> Result<Self, VerifyError> {
        let tags: Vec<String> = if partners.len() == 1 {
            vec!["y".to_string()]
        } else {
            (1..=partners.len()).map(|i| format!("y{i}")).collect()
        };
        Self::with_tags(h, partners, "x", &tags)
    }

    pub fn with_tags(h: &PureHodgeData, partners: &[PureHodgeData], x_tag: &str, y_tags: &[String]) -> Result<Self, VerifyError> {
        assert_eq!(partners.len(), y_tags.len(), "one tag per partner");
        let x = symbolic_period_matrix_tagged(h, x_tag)?;
        let mut ys = Vec::new();
        let mut tensors = Vec::new();
        for (hp, tag) in partners.iter().zip(y_tags) {
            ys.push(symbolic_period_matrix_tagged(hp, tag)?);
            let td = tensor_hodge(h, hp)?;
            if !td.is_critical() {
                return Err(VerifyError::NotCritical(td.product_hodge.label().to_string()));
            }
            tensors.push(td);
        }
        Ok(PeriodSystem { x, ys, tensors, transform: None, cache: BTreeMap::new() })
    }

    /// Replace `X` by `p·X·γ` in every factor.
    pub fn with_transform(mut self, p: GenericMatrix<Rational>, gamma: GenericMatrix<Rational>) -> Self {
        let lift = |m: &GenericMatrix<Rational>| m.map(|c| SparsePolynomial::constant(c.clone()));
        self.x.entries = lift(&p).mul(&self.x.entries).mul(&lift(&gamma));
        self.transform = Some((p, gamma));
        self.cache.clear();
        self
    }

    pub fn summands(&self) -> usize {
        self.ys.len()
    }

    fn factor_value<T: crate::poly::Scalar>(
        &self,
        f: PeriodFactor,
        x: &GenericMatrix<T>,
        ys: &[GenericMatrix<T>],
    ) -> Result<T, VerifyError> {
        Ok(match f {
            PeriodFactor::Tensor { summand, sign } => {
                let z = build_z(x, &self.x.layout, &ys[summand], &self.ys[summand].layout, sign, &self.tensors[summand])?;
                T::det(&z).map_err(PeriodError::from)?
            }
            PeriodFactor::Left(sign) => period_minor(x, &self.x.layout, sign),
            PeriodFactor::Right { summand, sign } => period_minor(&ys[summand], &self.ys[summand].layout, sign),
        })
    }

    /// Expanded polynomial of a factor.
    pub fn symbolic(&mut self, f: PeriodFactor) -> Result<SparsePolynomial, VerifyError> {
        if let Some(p) = self.cache.get(&f) {
            return Ok(p.clone());
        }
        let ys: Vec<_> = self.ys.iter().map(|y| y.entries.clone()).collect();
        let p = self.factor_value(f, &self.x.entries, &ys)?;
        self.cache.insert(f, p.clone());
        Ok(p)
    }

    /// Total degree of a factor in all matrix entries.
    pub fn degree(&self, f: PeriodFactor) -> u64 {
        match f {
            PeriodFactor::Tensor { summand, sign } => 2 * self.tensors[summand].d(sign) as u64,
            PeriodFactor::Left(sign) => self.x.layout.col_split.get(sign) as u64,
            PeriodFactor::Right { summand, sign } => self.ys[summand].layout.col_split.get(sign) as u64,
        }
    }

    fn side_symbolic(&mut self, side: &[(PeriodFactor, u32)]) -> Result<SparsePolynomial, VerifyError> {
        let mut acc = SparsePolynomial::one();
        for &(f, n) in side {
            acc = &acc * &self.symbolic(f)?.pow(n);
        }
        Ok(acc)
    }

    fn side_sample(&self, side: &[(PeriodFactor, u32)], x: &GenericMatrix<Rational>, ys: &[GenericMatrix<Rational>]) -> Result<Rational, VerifyError> {
        let mut acc = Rational::one();
        for &(f, n) in side {
            acc *= num_traits::pow(self.factor_value(f, x, ys)?, n as usize);
        }
        Ok(acc)
    }

    fn side_degree(&self, side: &[(PeriodFactor, u32)]) -> u64 {
        side.iter().map(|&(f, n)| self.degree(f) * u64::from(n)).sum()
    }

    /// Checks `identity` and returns `(passed, constant, evidence)`.
    pub fn check(&mut self, identity: &PeriodIdentity, mode: VerifyMode, key: &str) -> Result<(bool, Option<Rational>, Evidence), VerifyError> {
        mode.validate()?;
        match mode.kind {
            ModeKind::Exact => {
                let lhs = self.side_symbolic(&identity.lhs)?;
                let rhs = self.side_symbolic(&identity.rhs)?;
                let c = proportionality(&lhs, &rhs).filter(|c| !c.is_zero());
                let evidence = Evidence::Symbolic { proportional: c.is_some(), lhs_terms: lhs.num_terms(), rhs_terms: rhs.num_terms() };
                Ok((c.is_some(), c, evidence))
            }
            ModeKind::Probabilistic => {
                let bound = mode.coeff_bound as i64;
                let mut ratios = Vec::with_capacity(mode.trials);
                for t in 0..mode.trials {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(mode.seed, &format!("{key}/trial{t}")));
                    let mut ratio = None;
                    for _ in 0..MAX_RESAMPLES {
                        let mut x = random_matrix(self.x.layout.dim(), self.x.layout.dim(), bound, &mut rng);
                        if let Some((p, g)) = &self.transform {
                            x = p.mul(&x).mul(g);
                        }
                        let ys: Vec<_> = self.ys.iter().map(|y| random_matrix(y.layout.dim(), y.layout.dim(), bound, &mut rng)).collect();
                        let l = self.side_sample(&identity.lhs, &x, &ys)?;
                        let r = self.side_sample(&identity.rhs, &x, &ys)?;
                        match (l.is_zero(), r.is_zero()) {
                            (true, true) => continue,
                            (_, true) => ratio = Some(None),
                            _ => ratio = Some(Some(l / r)),
                        }
                        break;
                    }
                    ratios.push(ratio.ok_or(VerifyError::DegenerateSample(MAX_RESAMPLES))?);
                }
                let first = ratios[0].clone();
                let passed = matches!(&first, Some(c) if !c.is_zero()) && ratios.iter().all(|r| *r == first);
                let degree = self.side_degree(&identity.lhs).max(self.side_degree(&identity.rhs));
                let per_trial = (degree as f64 / (2.0 * mode.coeff_bound as f64 + 1.0)).min(1.0);
                let evidence = Evidence::Sampled {
                    ratios,
                    degree,
                    false_pass_bound: per_trial.powi(mode.trials as i32 - 1),
                };
                Ok((passed, if passed { first } else { None }, evidence))
            }
        }
    }
}

const MAX_RESAMPLES: usize = 100;

fn check_small_hodge(h: &PureHodgeData) -> Result<(), VerifyError> {
    if !h.hodge_numbers_at_most_one() {
        return Err(VerifyError::HypothesisViolation(format!("{} has a Hodge number above 1", h.label())));
    }
    Ok(())
}

fn check_tensor(h: &PureHodgeData, hp: &PureHodgeData) -> Result<TensorData, VerifyError> {
    let td = tensor_hodge(h, hp)?;
    if !td.is_critical() {
        return Err(VerifyError::NotCritical(td.product_hodge.label().to_string()));
    }
    Ok(td)
}

fn parity_check(h: &PureHodgeData, even: bool) -> Result<(), VerifyError> {
    if (h.rank() % 2 == 0) != even {
        let want = if even { "even" } else { "odd" };
        return Err(VerifyError::HypothesisViolation(format!("{} must have {want} rank", h.label())));
    }
    Ok(())
}

/// Verifies the relation recorded in `case` for the pair `(h, hp)`.
pub fn verify_custom(h: &PureHodgeData, hp: &PureHodgeData, case: RelationCase, mode: VerifyMode) -> Result<RelationReport, VerifyError> {
    verify_custom_tagged(h, hp, case, mode, "x", "y")
}

/// [`verify_custom`] with explicit variable tags for `X` and `Y`.
pub fn verify_custom_tagged(
    h: &PureHodgeData,
    hp: &PureHodgeData,
    case: RelationCase,
    mode: VerifyMode,
    x_tag: &str,
    y_tag: &str,
) -> Result<RelationReport, VerifyError> {
    let mut system = PeriodSystem::with_tags(h, std::slice::from_ref(hp), x_tag, &[y_tag.to_string()])?;
    let identity = PeriodIdentity::ratio_relation(1, case.left_exponent(), case.right_exponent());
    let rendered = identity.render(1);
    let key = format!("{}|{}|{}", h.label(), hp.label(), rendered);
    let (passed, constant, evidence) = system.check(&identity, mode, &key)?;
    Ok(RelationReport {
        motive: h.label().to_string(),
        partner: hp.label().to_string(),
        case,
        identity_checked: rendered,
        passed,
        constant,
        mode,
        evidence,
        summands: Vec::new(),
        notes: Vec::new(),
    })
}

fn single_case(h: &PureHodgeData, hp: &PureHodgeData, accept: impl Fn(&CaseTag) -> bool, what: &str) -> Result<RelationCase, VerifyError> {
    let case = predict_case(h, hp)?;
    if !accept(&case.case_tag) {
        return Err(VerifyError::HypothesisViolation(format!(
            "{} ⊗ {} is governed by {:?}, not the {what} relation",
            h.label(),
            hp.label(),
            case.case_tag
        )));
    }
    Ok(case)
}

/// Even rank ⊗ odd rank, Hodge numbers at most one:
/// `det Z⁺·f^{−ε′}(X) ∝ det Z⁻·f^{ε′}(X)`.
pub fn verify_even_odd(h: &PureHodgeData, hp: &PureHodgeData, mode: VerifyMode) -> Result<RelationReport, VerifyError> {
    verify_custom(h, hp, even_odd_case(h, hp)?, mode)
}

/// Checks the even/odd hypotheses and returns the governing case.
pub fn even_odd_case(h: &PureHodgeData, hp: &PureHodgeData) -> Result<RelationCase, VerifyError> {
    parity_check(h, true)?;
    parity_check(hp, false)?;
    check_small_hodge(h)?;
    check_small_hodge(hp)?;
    check_tensor(h, hp)?;
    single_case(h, hp, |t| matches!(t, CaseTag::EvenOddI | CaseTag::EvenOddII), "even/odd")
}

/// Both ranks even, Hodge numbers at most one: `det Z⁺ ∝ det Z⁻`.
pub fn verify_both_even(h: &PureHodgeData, hp: &PureHodgeData, mode: VerifyMode) -> Result<RelationReport, VerifyError> {
    parity_check(h, true)?;
    parity_check(hp, true)?;
    check_small_hodge(h)?;
    check_small_hodge(hp)?;
    check_tensor(h, hp)?;
    let case = single_case(h, hp, |t| *t == CaseTag::BothEven, "even/even")?;
    verify_custom(h, hp, case, mode)
}

/// Both ranks odd with scalar middles, Hodge numbers at most one:
/// exponents `ε(M′)` on `f^±(X)` and `ε(M)` on `g^±(Y)`.
pub fn verify_both_odd(h: &PureHodgeData, hp: &PureHodgeData, mode: VerifyMode) -> Result<RelationReport, VerifyError> {
    parity_check(h, false)?;
    parity_check(hp, false)?;
    check_small_hodge(h)?;
    check_small_hodge(hp)?;
    check_tensor(h, hp)?;
    let case = single_case(h, hp, |t| matches!(t, CaseTag::BothOdd { .. }), "odd/odd")?;
    verify_custom(h, hp, case, mode)
}

/// Even rank with `d⁺ = d⁻` against an odd-rank critical motive whose middle
/// type has dimension `k`: `f^∓(X)^k` and `f^±(X)^k` as in the even/odd case.
pub fn verify_variation(h: &PureHodgeData, hp: &PureHodgeData, mode: VerifyMode) -> Result<RelationReport, VerifyError> {
    parity_check(h, true)?;
    parity_check(hp, false)?;
    check_small_hodge(h)?;
    let sig = betti_signature(h);
    if sig.plus != sig.minus {
        return Err(VerifyError::HypothesisViolation(format!("{} needs d⁺ = d⁻", h.label())));
    }
    if !criticality(hp).critical {
        return Err(VerifyError::NotCritical(hp.label().to_string()));
    }
    let eps = hp
        .epsilon()
        .ok_or_else(|| VerifyError::HypothesisViolation(format!("{} has no middle type", hp.label())))?;
    check_tensor(h, hp)?;
    let k = hp.middle_dimension();
    let case = RelationCase::new(CaseTag::Variation { k }, h.label(), hp.label(), eps.as_i64() * i64::from(k), 0, None);
    verify_custom(h, hp, case, mode)
}

/// Dispatches to the relation predicted for the pair.
pub fn verify_predicted(h: &PureHodgeData, hp: &PureHodgeData, mode: VerifyMode) -> Result<RelationReport, VerifyError> {
    let case = predict_case(h, hp)?;
    verify_custom(h, hp, case, mode)
}

/// `M` against `⊕ M′_i`: verifies every summand relation, then the combined
/// relation `Π det Z⁺_i · f^∓(X)^{|e|} ∝ Π det Z⁻_i · f^±(X)^{|e|}` with a
/// shared `X`, where `e = Σ (d⁺(M′_i) − d⁻(M′_i))`.
pub fn verify_direct_sum(h: &PureHodgeData, summands: &[PureHodgeData], mode: VerifyMode) -> Result<RelationReport, VerifyError> {
    mode.validate()?;
    if summands.is_empty() {
        return Err(VerifyError::HypothesisViolation("empty direct sum".into()));
    }
    let sig = betti_signature(h);
    if sig.plus != sig.minus {
        return Err(VerifyError::HypothesisViolation(format!("{} needs d⁺ = d⁻", h.label())));
    }
    for s in summands {
        if !criticality(s).critical {
            return Err(VerifyError::SummandNotCritical(s.label().to_string()));
        }
        if !tensor_hodge(h, s)?.is_critical() {
            return Err(VerifyError::SummandTensorNotCritical(s.label().to_string()));
        }
    }
    let mut reports = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let sub_mode = mode.with_seed(derive_seed(mode.seed, &format!("summand/{i}/{}", s.label())));
        reports.push(verify_predicted(h, s, sub_mode)?);
    }
    let exponent: i64 = summands.iter().map(|s| betti_signature(s).trace()).sum();
    for (r, s) in reports.iter().zip(summands) {
        debug_assert_eq!(r.case.left_exponent(), betti_signature(s).trace());
    }
    let mut system = PeriodSystem::new(h, summands)?;
    let identity = PeriodIdentity::ratio_relation(summands.len(), exponent, 0);
    let rendered = identity.render(summands.len());
    let partner = summands.iter().map(|s| s.label()).collect::<Vec<_>>().join("⊕");
    let (combined, constant, evidence) = system.check(&identity, mode, &format!("{}|{partner}|{rendered}", h.label()))?;
    let passed = combined && reports.iter().all(|r| r.passed);
    let case = RelationCase::new(CaseTag::DirectSum { summands: summands.len() }, h.label(), &partner, exponent, 0, None);
    Ok(RelationReport {
        motive: h.label().to_string(),
        partner,
        case,
        identity_checked: rendered,
        passed,
        constant,
        mode,
        evidence,
        summands: reports,
        notes: vec![format!("exponent {exponent} is the trace of conjugation on the Betti realization of the sum")],
    })
}

fn random_assignment(vars: &BTreeSet<Var>, rng: &mut ChaCha8Rng) -> BTreeMap<Var, Rational> {
    use rand::Rng;
    vars.iter().map(|v| (v.clone(), int(rng.gen_range(-9..=9)))).collect()
}

/// Rank-one test: `p(x,y)·p(x₀,y₀) = p(x,y₀)·p(x₀,y)` as polynomials for
/// `trials` random anchors, where `x` are the variables tagged `left_tag`.
pub fn is_separable(poly: &SparsePolynomial, left_tag: &str, trials: usize, seed: u64) -> Result<bool, VerifyError> {
    let (xs, ys): (BTreeSet<Var>, BTreeSet<Var>) = poly.variables().into_iter().partition(|v| v.tag() == left_tag);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &format!("anchor/{t}")));
        let mut anchor = None;
        for _ in 0..MAX_RESAMPLES {
            let a = random_assignment(&xs, &mut rng);
            let b = random_assignment(&ys, &mut rng);
            let mut both = a.clone();
            both.extend(b.clone());
            let v = poly.evaluate(&both).expect("all variables assigned");
            if !v.is_zero() {
                anchor = Some((a, b, v));
                break;
            }
        }
        let (a, b, v) = anchor.ok_or(VerifyError::DegenerateSample(MAX_RESAMPLES))?;
        let lhs = poly.scale(&v);
        let rhs = &poly.substitute(&b) * &poly.substitute(&a);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest `d^±(M⊗M′)` for which separability is decided on the expanded
/// polynomial; larger blocks are tested at random points.
pub const SYMBOLIC_SEPARABILITY_SIDE: usize = 6;

/// Random probe points tested per anchor on the sampled path.
const SEPARABILITY_PROBES: usize = 4;

const SEPARABILITY_BOUND: i64 = 1000;

/// Whether `det Z^±(X, Y)` factors as `φ(X)·ψ(Y)`.
///
/// Up to [`SYMBOLIC_SEPARABILITY_SIDE`] the rank-one identity is checked as
/// polynomials. Beyond that `h(x,y)·h(x₀,y₀) = h(x,y₀)·h(x₀,y)` is checked at
/// random integer points with entries in `[-1000, 1000]` for every anchor.
pub fn separability_check(h: &PureHodgeData, hp: &PureHodgeData, sign: Sign, trials: usize, seed: u64) -> Result<bool, VerifyError> {
    let mut system = PeriodSystem::new(h, std::slice::from_ref(hp))?;
    let f = PeriodFactor::Tensor { summand: 0, sign };
    if system.tensors[0].d(sign) <= SYMBOLIC_SEPARABILITY_SIDE {
        let poly = system.symbolic(f)?;
        return is_separable(&poly, "x", trials, seed);
    }
    let (dx, dy) = (system.x.layout.dim(), system.ys[0].layout.dim());
    let eval = |x: &GenericMatrix<Rational>, y: &GenericMatrix<Rational>| system.factor_value(f, x, std::slice::from_ref(y));
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &format!("anchor/{t}")));
        let mut anchor = None;
        for _ in 0..MAX_RESAMPLES {
            let x0 = random_matrix(dx, dx, SEPARABILITY_BOUND, &mut rng);
            let y0 = random_matrix(dy, dy, SEPARABILITY_BOUND, &mut rng);
            let v = eval(&x0, &y0)?;
            if !v.is_zero() {
                anchor = Some((x0, y0, v));
                break;
            }
        }
        let (x0, y0, v) = anchor.ok_or(VerifyError::DegenerateSample(MAX_RESAMPLES))?;
        for _ in 0..SEPARABILITY_PROBES {
            let x = random_matrix(dx, dx, SEPARABILITY_BOUND, &mut rng);
            let y = random_matrix(dy, dy, SEPARABILITY_BOUND, &mut rng);
            if eval(&x, &y)? * &v != eval(&x, &y0)? * eval(&x0, &y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Period layout of the `M` side, for callers building transforms.
pub fn left_layout(system: &PeriodSystem) -> &PeriodLayout {
    &system.x.layout
}
