//! Pure Hodge data with the real-Frobenius (complex conjugation) signature.
//!
//! A motive is modelled by its weight, its Hodge numbers `h^{p,q}` and, when
//! the weight is even, the split `(k⁺, k⁻)` of the middle type into
//! conjugation eigenspaces. Everything else here (Betti signature, Hodge
//! filtration jumps, criticality, tensor products) is derived from that.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("Hodge type ({p},{q}) does not have weight {weight}")]
    MixedWeight { p: i64, q: i64, weight: i64 },
    #[error("h^({p},{q}) = {h} but h^({q},{p}) = {h_conj}")]
    AsymmetricHodgeNumbers { p: i64, q: i64, h: u32, h_conj: u32 },
    #[error("middle type h^({m},{m}) = {h} present but no middle split given")]
    MissingMiddleSplit { m: i64, h: u32 },
    #[error("middle split ({plus},{minus}) does not sum to h^({m},{m}) = {h}")]
    BadMiddleSplit { m: i64, h: u32, plus: u32, minus: u32 },
    #[error("invalid motive data: {0}")]
    InvalidInput(String),
}

/// Conjugation eigenvalue sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(e: i64) -> Option<Sign> {
        match e {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn superscript(self) -> &'static str {
        match self {
            Sign::Plus => "⁺",
            Sign::Minus => "⁻",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeType {
    pub p: i64,
    pub q: i64,
    pub h: u32,
}

/// Eigenspace split `(k⁺, k⁻)` of conjugation on the middle Hodge type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleSplit {
    pub plus: u32,
    pub minus: u32,
}

/// Unvalidated motive description, as read from a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMotive {
    pub label: String,
    pub weight: i64,
    pub types: Vec<(i64, i64, u32)>,
    pub middle_split: Option<(u32, u32)>,
}

/// Validated pure Hodge data; types sorted by `p` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PureHodgeData {
    label: String,
    weight: i64,
    types: Vec<HodgeType>,
    middle_split: Option<MiddleSplit>,
}

impl PureHodgeData {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn types(&self) -> &[HodgeType] {
        &self.types
    }

    pub fn middle_split(&self) -> Option<MiddleSplit> {
        self.middle_split
    }

    pub fn rank(&self) -> usize {
        self.types.iter().map(|t| t.h as usize).sum()
    }

    pub fn hodge_number(&self, p: i64) -> u32 {
        self.types.iter().find(|t| t.p == p).map_or(0, |t| t.h)
    }

    pub fn max_hodge_number(&self) -> u32 {
        self.types.iter().map(|t| t.h).max().unwrap_or(0)
    }

    pub fn hodge_numbers_at_most_one(&self) -> bool {
        self.max_hodge_number() <= 1
    }

    /// Dimension of the middle type (0 when absent).
    pub fn middle_dimension(&self) -> u32 {
        self.middle_split.map_or(0, |s| s.plus + s.minus)
    }

    /// Scalar by which conjugation acts on the middle type, when it is a scalar.
    pub fn epsilon(&self) -> Option<Sign> {
        match self.middle_split? {
            MiddleSplit { plus, minus: 0 } if plus > 0 => Some(Sign::Plus),
            MiddleSplit { plus: 0, minus } if minus > 0 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn with_label(&self, label: impl Into<String>) -> PureHodgeData {
        PureHodgeData { label: label.into(), ..self.clone() }
    }

    /// Same Hodge numbers with conjugation acting by `eps` on the whole
    /// middle type. `None` when there is no middle type.
    pub fn with_middle_sign(&self, eps: Sign) -> Option<PureHodgeData> {
        let k = self.middle_dimension();
        if k == 0 {
            return None;
        }
        let split = match eps {
            Sign::Plus => MiddleSplit { plus: k, minus: 0 },
            Sign::Minus => MiddleSplit { plus: 0, minus: k },
        };
        Some(PureHodgeData { middle_split: Some(split), ..self.clone() })
    }

    pub fn to_raw(&self) -> RawMotive {
        RawMotive {
            label: self.label.clone(),
            weight: self.weight,
            types: self.types.iter().map(|t| (t.p, t.q, t.h)).collect(),
            middle_split: self.middle_split.map(|s| (s.plus, s.minus)),
        }
    }
}

/// Checks purity, conjugation symmetry and the middle split.
pub fn validate(raw: &RawMotive) -> Result<PureHodgeData, HodgeError> {
    let w = raw.weight;
    let mut types: Vec<HodgeType> = Vec::new();
    for &(p, q, h) in &raw.types {
        if p + q != w {
            return Err(HodgeError::MixedWeight { p, q, weight: w });
        }
        if h == 0 {
            return Err(HodgeError::InvalidInput(format!("h^({p},{q}) must be positive")));
        }
        if types.iter().any(|t| t.p == p) {
            return Err(HodgeError::InvalidInput(format!("Hodge type ({p},{q}) listed twice")));
        }
        types.push(HodgeType { p, q, h });
    }
    if types.is_empty() {
        return Err(HodgeError::InvalidInput("rank must be at least 1".into()));
    }
    types.sort_by_key(|t| t.p);
    for t in &types {
        let h_conj = types.iter().find(|u| u.p == t.q).map_or(0, |u| u.h);
        if h_conj != t.h {
            return Err(HodgeError::AsymmetricHodgeNumbers { p: t.p, q: t.q, h: t.h, h_conj });
        }
    }
    let middle = if w % 2 == 0 { types.iter().find(|t| 2 * t.p == w) } else { None };
    let middle_split = match (middle, raw.middle_split) {
        (Some(t), None) => return Err(HodgeError::MissingMiddleSplit { m: t.p, h: t.h }),
        (Some(t), Some((plus, minus))) => {
            if plus + minus != t.h {
                return Err(HodgeError::BadMiddleSplit { m: t.p, h: t.h, plus, minus });
            }
            Some(MiddleSplit { plus, minus })
        }
        (None, Some(_)) => {
            return Err(HodgeError::InvalidInput("middle split given but there is no middle Hodge type".into()))
        }
        (None, None) => None,
    };
    Ok(PureHodgeData { label: raw.label.clone(), weight: w, types, middle_split })
}

/// Dimensions `(d⁺, d⁻)` of the conjugation eigenspaces on the Betti realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiSignature {
    pub plus: usize,
    pub minus: usize,
}

impl BettiSignature {
    pub fn get(&self, sign: Sign) -> usize {
        match sign {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }

    pub fn total(&self) -> usize {
        self.plus + self.minus
    }

    /// `d⁺ − d⁻`, the trace of conjugation.
    pub fn trace(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }
}

/// Conjugation swaps `H^{p,q}` and `H^{q,p}`, so each off-middle pair
/// contributes equally to both eigenspaces.
pub fn betti_signature(h: &PureHodgeData) -> BettiSignature {
    let half: usize = h.types.iter().filter(|t| t.p > t.q).map(|t| t.h as usize).sum();
    let split = h.middle_split.unwrap_or(MiddleSplit { plus: 0, minus: 0 });
    BettiSignature { plus: half + split.plus as usize, minus: half + split.minus as usize }
}

/// Jumps `p₁ < … < p_m` of the Hodge filtration with multiplicities `s_μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationProfile {
    pub jumps: Vec<i64>,
    pub mults: Vec<usize>,
}

impl FiltrationProfile {
    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn total(&self) -> usize {
        self.mults.iter().sum()
    }

    /// Hodge level of every de Rham basis row, rows grouped by block.
    pub fn row_levels(&self) -> Vec<i64> {
        self.jumps
            .iter()
            .zip(&self.mults)
            .flat_map(|(&p, &s)| std::iter::repeat(p).take(s))
            .collect()
    }

    /// Block index of every row (zero-based).
    pub fn row_blocks(&self) -> Vec<usize> {
        self.mults
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat(b).take(s))
            .collect()
    }

    /// The `t` with `s₁ + … + s_t = target`, if any (`t = 0` for target 0).
    pub fn prefix_index(&self, target: usize) -> Option<usize> {
        let mut acc = 0;
        if target == 0 {
            return Some(0);
        }
        for (t, &s) in self.mults.iter().enumerate() {
            acc += s;
            if acc == target {
                return Some(t + 1);
            }
            if acc > target {
                return None;
            }
        }
        None
    }
}

pub fn filtration_profile(h: &PureHodgeData) -> FiltrationProfile {
    FiltrationProfile {
        jumps: h.types.iter().map(|t| t.p).collect(),
        mults: h.types.iter().map(|t| t.h as usize).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub critical: bool,
    /// Number of leading filtration blocks whose ranks sum to `d⁺`.
    pub frak_p_plus: Option<usize>,
    pub frak_p_minus: Option<usize>,
    pub epsilon: Option<Sign>,
}

impl CriticalityReport {
    pub fn frak_p(&self, sign: Sign) -> Option<usize> {
        match sign {
            Sign::Plus => self.frak_p_plus,
            Sign::Minus => self.frak_p_minus,
        }
    }
}

/// Critical iff both `d⁺` and `d⁻` are prefix sums of the filtration ranks.
pub fn criticality(h: &PureHodgeData) -> CriticalityReport {
    let sig = betti_signature(h);
    let profile = filtration_profile(h);
    let frak_p_plus = profile.prefix_index(sig.plus);
    let frak_p_minus = profile.prefix_index(sig.minus);
    let critical = frak_p_plus.is_some() && frak_p_minus.is_some();
    let epsilon = h.epsilon();
    debug_assert!(h.middle_split.is_none() || critical == epsilon.is_some());
    CriticalityReport { critical, frak_p_plus, frak_p_minus, epsilon }
}

/// Hodge data of `M ⊗ M′` together with the critical indices `q^±`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorData {
    pub product_hodge: PureHodgeData,
    /// Jumps `k_t` and ranks `u_t` of the product filtration.
    pub profile: FiltrationProfile,
    pub d_plus: usize,
    pub d_minus: usize,
    pub q_plus: Option<usize>,
    pub q_minus: Option<usize>,
}

impl TensorData {
    pub fn is_critical(&self) -> bool {
        self.q_plus.is_some() && self.q_minus.is_some()
    }

    pub fn d(&self, sign: Sign) -> usize {
        match sign {
            Sign::Plus => self.d_plus,
            Sign::Minus => self.d_minus,
        }
    }

    pub fn q(&self, sign: Sign) -> Option<usize> {
        match sign {
            Sign::Plus => self.q_plus,
            Sign::Minus => self.q_minus,
        }
    }

    /// Level threshold `k_{q^±}` selecting de Rham rows of `Z^±`.
    /// `Some(None)` means `q^± = 0`: no row is selected.
    pub fn threshold(&self, sign: Sign) -> Option<Option<i64>> {
        let q = self.q(sign)?;
        Some(if q == 0 { None } else { Some(self.profile.jumps[q - 1]) })
    }
}

pub fn tensor_hodge(a: &PureHodgeData, b: &PureHodgeData) -> Result<TensorData, HodgeError> {
    let w = a.weight + b.weight;
    let mut conv: Vec<(i64, u32)> = Vec::new();
    for s in &a.types {
        for t in &b.types {
            let p = s.p + t.p;
            let h = s.h * t.h;
            match conv.iter_mut().find(|(pp, _)| *pp == p) {
                Some((_, hh)) => *hh += h,
                None => conv.push((p, h)),
            }
        }
    }
    let middle_split = if w % 2 == 0 && conv.iter().any(|(p, _)| 2 * p == w) {
        let mut plus = 0u32;
        let mut minus = 0u32;
        let mut swapped = 0u32;
        for s in &a.types {
            for t in &b.types {
                if 2 * (s.p + t.p) != w {
                    continue;
                }
                if 2 * s.p == a.weight {
                    let (x, y) = (a.middle_split.unwrap(), b.middle_split.unwrap());
                    plus += x.plus * y.plus + x.minus * y.minus;
                    minus += x.plus * y.minus + x.minus * y.plus;
                } else {
                    swapped += s.h * t.h;
                }
            }
        }
        debug_assert!(swapped % 2 == 0);
        Some((plus + swapped / 2, minus + swapped / 2))
    } else {
        None
    };
    let raw = RawMotive {
        label: format!("{}⊗{}", a.label, b.label),
        weight: w,
        types: conv.into_iter().map(|(p, h)| (p, w - p, h)).collect(),
        middle_split,
    };
    let product_hodge = validate(&raw)?;
    let profile = filtration_profile(&product_hodge);
    let (sa, sb) = (betti_signature(a), betti_signature(b));
    let d_plus = sa.plus * sb.plus + sa.minus * sb.minus;
    let d_minus = sa.plus * sb.minus + sa.minus * sb.plus;
    debug_assert_eq!(betti_signature(&product_hodge), BettiSignature { plus: d_plus, minus: d_minus });
    let q_plus = profile.prefix_index(d_plus);
    let q_minus = profile.prefix_index(d_minus);
    Ok(TensorData { product_hodge, profile, d_plus, d_minus, q_plus, q_minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn raw(weight: i64, types: &[(i64, i64, u32)], split: Option<(u32, u32)>) -> RawMotive {
        RawMotive { label: "t".into(), weight, types: types.to_vec(), middle_split: split }
    }

    #[test]
    fn validate_examples() {
        let ell = catalog::ell();
        assert_eq!(ell.rank(), 2);
        let sym = catalog::sym(Sign::Plus);
        assert_eq!(sym.rank(), 3);
        assert_eq!(sym.types().iter().map(|t| t.p).collect::<Vec<_>>(), [0, 1, 2]);
    }

    #[test]
    fn validate_errors() {
        assert!(matches!(
            validate(&raw(1, &[(1, 0, 1), (0, 1, 2)], None)),
            Err(HodgeError::AsymmetricHodgeNumbers { .. })
        ));
        assert!(matches!(validate(&raw(1, &[(1, 1, 1)], None)), Err(HodgeError::MixedWeight { .. })));
        assert!(matches!(
            validate(&raw(2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1)], None)),
            Err(HodgeError::MissingMiddleSplit { .. })
        ));
        assert!(matches!(
            validate(&raw(2, &[(2, 0, 1), (1, 1, 2), (0, 2, 1)], Some((1, 0)))),
            Err(HodgeError::BadMiddleSplit { .. })
        ));
        assert!(matches!(validate(&raw(1, &[(1, 0, 1), (0, 1, 1)], Some((1, 0)))), Err(HodgeError::InvalidInput(_))));
        assert!(matches!(validate(&raw(0, &[], None)), Err(HodgeError::InvalidInput(_))));
    }

    #[test]
    fn signatures() {
        let sig = |h: &PureHodgeData| {
            let s = betti_signature(h);
            (s.plus, s.minus)
        };
        assert_eq!(sig(&catalog::ell()), (1, 1));
        assert_eq!(sig(&catalog::sym(Sign::Plus)), (2, 1));
        assert_eq!(sig(&catalog::sym(Sign::Minus)), (1, 2));
        assert_eq!(sig(&catalog::fat(Sign::Plus)), (4, 1));
        assert_eq!(sig(&catalog::artin(Sign::Minus)), (0, 1));
    }

    #[test]
    fn profiles() {
        let p = filtration_profile(&catalog::ell());
        assert_eq!((p.jumps, p.mults), (vec![0, 1], vec![1, 1]));
        let p = filtration_profile(&catalog::sym(Sign::Minus));
        assert_eq!((p.jumps, p.mults), (vec![0, 1, 2], vec![1, 1, 1]));
        let p = filtration_profile(&catalog::fat(Sign::Plus));
        assert_eq!((p.jumps.clone(), p.mults.clone()), (vec![0, 1, 2], vec![1, 3, 1]));
        assert_eq!(p.row_levels(), [0, 1, 1, 1, 2]);
    }

    #[test]
    fn criticality_examples() {
        let c = criticality(&catalog::ell());
        assert!(c.critical);
        assert_eq!((c.frak_p_plus, c.frak_p_minus, c.epsilon), (Some(1), Some(1), None));
        let c = criticality(&catalog::sym(Sign::Plus));
        assert_eq!((c.frak_p_plus, c.frak_p_minus, c.epsilon), (Some(2), Some(1), Some(Sign::Plus)));
        let split = validate(&raw(2, &[(1, 1, 2)], Some((1, 1)))).unwrap();
        let c = criticality(&split);
        assert!(!c.critical);
        assert_eq!(c.epsilon, None);
        let c = criticality(&catalog::artin(Sign::Plus));
        assert_eq!((c.frak_p_plus, c.frak_p_minus), (Some(1), Some(0)));
    }

    #[test]
    fn tensor_ell_sym() {
        for eps in Sign::BOTH {
            let td = tensor_hodge(&catalog::ell(), &catalog::sym(eps)).unwrap();
            assert_eq!(td.profile.jumps, [0, 1, 2, 3]);
            assert_eq!(td.profile.mults, [1, 2, 2, 1]);
            assert_eq!((td.d_plus, td.d_minus), (3, 3));
            assert_eq!((td.q_plus, td.q_minus), (Some(2), Some(2)));
        }
    }

    #[test]
    fn tensor_ell_ell_not_critical() {
        let td = tensor_hodge(&catalog::ell(), &catalog::ell()).unwrap();
        assert_eq!(td.profile.mults, [1, 2, 1]);
        assert_eq!((td.d_plus, td.d_minus), (2, 2));
        assert!(!td.is_critical());
        assert_eq!(td.product_hodge.middle_split(), Some(MiddleSplit { plus: 1, minus: 1 }));
    }

    #[test]
    fn tensor_spread_sym() {
        let td = tensor_hodge(&catalog::spread(Sign::Plus), &catalog::sym(Sign::Plus)).unwrap();
        assert_eq!(td.profile.jumps, (0..=6).collect::<Vec<_>>());
        assert_eq!(td.profile.mults, [1, 1, 2, 1, 2, 1, 1]);
        assert_eq!((td.d_plus, td.d_minus), (5, 4));
        assert_eq!((td.q_plus, td.q_minus), (Some(4), Some(3)));
        assert_eq!(td.threshold(Sign::Plus), Some(Some(3)));
    }
}
