//! Period bookkeeping for motives over a totally real field `F`.
//!
//! Restriction of scalars to `Q` turns the periods of `M/F` into
//! `(1⊗D_F^{1/2})^{d^±(M)} Π_σ c^±(σ, M)`. Only exponents are tracked; the
//! symbols are free generators of an abelian group.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hodge::{betti_signature, criticality, tensor_hodge, PureHodgeData, Sign};
use crate::seed::derive_seed;
use crate::verifier::{even_odd_case, verify_custom_tagged, RelationReport, VerifyError, VerifyMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TotRealError {
    #[error("{0} is not critical")]
    NotCritical(String),
    #[error("at least one embedding is required")]
    NoEmbeddings,
    #[error("embedding {0} listed twice")]
    DuplicateEmbedding(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("embedding {embedding}: {source}")]
    Embedding { embedding: String, source: VerifyError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    CPlus,
    CMinus,
    DiscSqrt,
}

/// `c^±(σ, M)` or the discriminant factor `1⊗D_F^{1/2}` of the field `motive`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PeriodSymbol {
    pub kind: SymbolKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<String>,
    pub motive: String,
}

impl PeriodSymbol {
    pub fn c(sign: Sign, embedding: &str, motive: &str) -> Self {
        let kind = match sign {
            Sign::Plus => SymbolKind::CPlus,
            Sign::Minus => SymbolKind::CMinus,
        };
        PeriodSymbol { kind, embedding: Some(embedding.to_string()), motive: motive.to_string() }
    }

    pub fn disc_sqrt(field: &str) -> Self {
        PeriodSymbol { kind: SymbolKind::DiscSqrt, embedding: None, motive: field.to_string() }
    }
}

impl fmt::Display for PeriodSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, &self.embedding) {
            (SymbolKind::DiscSqrt, _) => write!(f, "D({})^1/2", self.motive),
            (SymbolKind::CPlus, Some(s)) => write!(f, "c⁺({s},{})", self.motive),
            (SymbolKind::CMinus, Some(s)) => write!(f, "c⁻({s},{})", self.motive),
            (_, None) => write!(f, "c({})", self.motive),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    symbol: PeriodSymbol,
    exponent: i64,
}

#[derive(Serialize, Deserialize)]
struct Entries {
    entries: Vec<Entry>,
}

/// Element of the free abelian group on [`PeriodSymbol`]s; zero exponents
/// are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Entries", from = "Entries")]
pub struct FormalProduct {
    exponents: BTreeMap<PeriodSymbol, i64>,
}

impl From<FormalProduct> for Entries {
    fn from(p: FormalProduct) -> Self {
        Entries { entries: p.exponents.into_iter().map(|(symbol, exponent)| Entry { symbol, exponent }).collect() }
    }
}

impl From<Entries> for FormalProduct {
    fn from(e: Entries) -> Self {
        let mut p = FormalProduct::identity();
        for Entry { symbol, exponent } in e.entries {
            p.add(symbol, exponent);
        }
        p
    }
}

impl FormalProduct {
    pub fn identity() -> Self {
        FormalProduct::default()
    }

    pub fn symbol(s: PeriodSymbol) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: PeriodSymbol, e: i64) -> Self {
        let mut p = Self::identity();
        p.add(s, e);
        p
    }

    fn add(&mut self, s: PeriodSymbol, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.exponents.entry(s.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exponents.remove(&s);
        }
    }

    pub fn exponent(&self, s: &PeriodSymbol) -> i64 {
        self.exponents.get(s).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PeriodSymbol, i64)> {
        self.exponents.iter().map(|(s, &e)| (s, e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (s, e) in other.iter() {
            p.add(s.clone(), e);
        }
        p
    }

    pub fn pow(&self, n: i64) -> Self {
        FormalProduct { exponents: self.exponents.iter().filter(|_| n != 0).map(|(s, &e)| (s.clone(), e * n)).collect() }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Replaces every occurrence `s^n` by `replacement^n`.
    pub fn substitute(&self, s: &PeriodSymbol, replacement: &Self) -> Self {
        let n = self.exponent(s);
        let mut rest = self.clone();
        rest.exponents.remove(s);
        rest.mul(&replacement.pow(n))
    }
}

impl fmt::Display for FormalProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(s, e)| if e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// `c^±(R_{F/Q} M) = (1⊗D_F^{1/2})^{d^±(M)} Π_σ c^±(σ, M)`.
pub fn restriction_periods(h: &PureHodgeData, embeddings: &[String], sign: Sign, field: &str) -> Result<FormalProduct, TotRealError> {
    if !criticality(h).critical {
        return Err(TotRealError::NotCritical(h.label().to_string()));
    }
    if embeddings.is_empty() {
        return Err(TotRealError::NoEmbeddings);
    }
    let mut p = FormalProduct::power(PeriodSymbol::disc_sqrt(field), betti_signature(h).get(sign) as i64);
    for s in embeddings {
        p = p.mul(&FormalProduct::symbol(PeriodSymbol::c(sign, s, h.label())));
    }
    Ok(p)
}

fn period_ratio(sigma: &str, motive: &str) -> FormalProduct {
    FormalProduct::symbol(PeriodSymbol::c(Sign::Plus, sigma, motive)).div(&FormalProduct::symbol(PeriodSymbol::c(Sign::Minus, sigma, motive)))
}

pub const FIELD_LABEL: &str = "F";

pub const PANCHISHKIN_NOTE: &str =
    "informational: Panchishkin's conjectured refinement of the restriction-of-scalars factorization is not checked";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TotRealReport {
    pub motive: String,
    pub partner: String,
    /// One relation check per embedding, in the order given.
    pub embeddings: Vec<RelationReport>,
    /// `c⁺/c⁻` of the restriction of `M⊗M′`.
    pub tensor_ratio: FormalProduct,
    pub disc_exponent: i64,
    /// `tensor_ratio` after applying every per-embedding relation.
    pub derived: FormalProduct,
    /// `Π_σ (c⁺(σ,M)/c⁻(σ,M))^{ε(σ,M′)}`.
    pub expected: FormalProduct,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// Derives the relation for `R_{F/Q}(M⊗M′)` from per-embedding even/odd
/// relations, `signs` giving `ε(σ, M′)` for each real embedding `σ`.
pub fn verify_totreal(
    h: &PureHodgeData,
    hp: &PureHodgeData,
    signs: &[(String, Sign)],
    mode: VerifyMode,
) -> Result<TotRealReport, TotRealError> {
    if signs.is_empty() {
        return Err(TotRealError::NoEmbeddings);
    }
    let mut seen = std::collections::BTreeSet::new();
    for (s, _) in signs {
        if !seen.insert(s) {
            return Err(TotRealError::DuplicateEmbedding(s.clone()));
        }
    }
    let mut reports = Vec::new();
    let mut per_sigma = Vec::new();
    for (sigma, eps) in signs {
        let hp_sigma = hp
            .with_middle_sign(*eps)
            .ok_or_else(|| TotRealError::HypothesisViolation(format!("{} has no scalar middle type", hp.label())))?;
        let wrap = |source| TotRealError::Embedding { embedding: sigma.clone(), source };
        let case = even_odd_case(h, &hp_sigma).map_err(wrap)?;
        let sub_mode = VerifyMode { seed: derive_seed(mode.seed, &format!("embedding/{sigma}")), ..mode };
        let report = verify_custom_tagged(h, &hp_sigma, case, sub_mode, &format!("x@{sigma}"), &format!("y@{sigma}")).map_err(wrap)?;
        per_sigma.push((sigma.clone(), report.case.left_exponent(), report.passed));
        reports.push(report);
    }
    let td = tensor_hodge(h, hp).map_err(|e| TotRealError::HypothesisViolation(e.to_string()))?;
    let t_label = td.product_hodge.label().to_string();
    let names: Vec<String> = signs.iter().map(|(s, _)| s.clone()).collect();
    let tensor_ratio = restriction_periods(&td.product_hodge, &names, Sign::Plus, FIELD_LABEL)?
        .div(&restriction_periods(&td.product_hodge, &names, Sign::Minus, FIELD_LABEL)?);
    let disc_exponent = tensor_ratio.exponent(&PeriodSymbol::disc_sqrt(FIELD_LABEL));
    let mut derived = tensor_ratio.clone();
    let mut expected = FormalProduct::identity();
    for (sigma, e, passed) in &per_sigma {
        let contribution = period_ratio(sigma, h.label()).pow(*e);
        expected = expected.mul(&contribution);
        if *passed {
            // c⁺(σ, M⊗M′) = c⁻(σ, M⊗M′) · (c⁺(σ,M)/c⁻(σ,M))^e
            let rhs = FormalProduct::symbol(PeriodSymbol::c(Sign::Minus, sigma, &t_label)).mul(&contribution);
            derived = derived.substitute(&PeriodSymbol::c(Sign::Plus, sigma, &t_label), &rhs);
        }
    }
    let passed = disc_exponent == 0 && derived == expected && per_sigma.iter().all(|p| p.2);
    Ok(TotRealReport {
        motive: h.label().to_string(),
        partner: hp.label().to_string(),
        embeddings: reports,
        tensor_ratio,
        disc_exponent,
        derived,
        expected,
        passed,
        notes: vec![PANCHISHKIN_NOTE.to_string()],
    })
}
