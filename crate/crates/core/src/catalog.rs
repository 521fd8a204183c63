//! Reference motives used throughout the examples and the test suites.

use crate::hodge::{validate, PureHodgeData, RawMotive, Sign};

fn build(label: &str, weight: i64, types: &[(i64, i64, u32)], split: Option<(u32, u32)>) -> PureHodgeData {
    validate(&RawMotive { label: label.into(), weight, types: types.to_vec(), middle_split: split })
        .expect("catalog motives are valid")
}

fn scalar_split(eps: Sign, k: u32) -> (u32, u32) {
    match eps {
        Sign::Plus => (k, 0),
        Sign::Minus => (0, k),
    }
}

fn suffix(eps: Sign) -> &'static str {
    match eps {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

/// Weight 1, `h^{1,0} = h^{0,1} = 1` (an elliptic curve).
pub fn ell() -> PureHodgeData {
    build("H_ell", 1, &[(1, 0, 1), (0, 1, 1)], None)
}

/// Weight 3, `h^{3,0} = h^{0,3} = 1`.
pub fn ell3() -> PureHodgeData {
    build("H_ell3", 3, &[(3, 0, 1), (0, 3, 1)], None)
}

/// Weight 3, rank 4, all Hodge numbers 1.
pub fn h4() -> PureHodgeData {
    build("H_4", 3, &[(3, 0, 1), (2, 1, 1), (1, 2, 1), (0, 3, 1)], None)
}

/// Weight 2, `h^{2,0} = h^{1,1} = h^{0,2} = 1`, conjugation `eps` on the middle.
pub fn sym(eps: Sign) -> PureHodgeData {
    build(&format!("H_sym{}", suffix(eps)), 2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1)], Some(scalar_split(eps, 1)))
}

/// Weight 4, `h^{4,0} = h^{2,2} = h^{0,4} = 1`.
pub fn spread(eps: Sign) -> PureHodgeData {
    build(&format!("H_spread{}", suffix(eps)), 4, &[(4, 0, 1), (2, 2, 1), (0, 4, 1)], Some(scalar_split(eps, 1)))
}

/// Weight 2, `h^{2,0} = h^{0,2} = 1` and a three-dimensional scalar middle.
pub fn fat(eps: Sign) -> PureHodgeData {
    build(&format!("H_fat{}", suffix(eps)), 2, &[(2, 0, 1), (1, 1, 3), (0, 2, 1)], Some(scalar_split(eps, 3)))
}

/// Rank-1 Artin motive of weight 0.
pub fn artin(eps: Sign) -> PureHodgeData {
    build(&format!("H_artin{}", suffix(eps)), 0, &[(0, 0, 1)], Some(scalar_split(eps, 1)))
}

/// The full catalog: ell, ell3, H_4 and both signs of sym, spread, fat, artin.
pub fn all() -> Vec<PureHodgeData> {
    let mut v = vec![ell(), ell3(), h4()];
    for eps in Sign::BOTH {
        v.extend([sym(eps), spread(eps), fat(eps), artin(eps)]);
    }
    v
}

/// Looks a catalog motive up by label (`H_sym+`, `H_artin-`, …).
pub fn by_label(label: &str) -> Option<PureHodgeData> {
    all().into_iter().find(|h| h.label() == label)
}
