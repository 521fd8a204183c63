//! Generic period matrices and the period minors built from them.
//!
//! Rows of a period matrix are de Rham coordinates, grouped by Hodge level
//! in increasing order (trailing blocks span the deeper filtration steps);
//! columns are Betti basis vectors, the `d⁺` conjugation-invariant ones first.

use rand::Rng;
use thiserror::Error;

use crate::hodge::{betti_signature, criticality, filtration_profile, BettiSignature, PureHodgeData, Sign, TensorData};
use crate::poly::{determinant, int, GenericMatrix, MatrixError, Rational, Scalar, SparsePolynomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodError {
    #[error("{0} is not critical")]
    NotCritical(String),
    #[error("tensor period matrix is {rows}x{cols}, expected square")]
    InternalSizeMismatch { rows: usize, cols: usize },
    #[error("period matrix shape does not match its motive")]
    ShapeMismatch,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Row and column metadata of a period matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodLayout {
    pub row_levels: Vec<i64>,
    pub partition: Vec<usize>,
    pub col_split: BettiSignature,
}

impl PeriodLayout {
    pub fn of(h: &PureHodgeData) -> Self {
        let profile = filtration_profile(h);
        PeriodLayout {
            row_levels: profile.row_levels(),
            partition: profile.mults,
            col_split: betti_signature(h),
        }
    }

    pub fn dim(&self) -> usize {
        self.row_levels.len()
    }

    /// Betti column indices of the given sign.
    pub fn columns(&self, sign: Sign) -> std::ops::Range<usize> {
        match sign {
            Sign::Plus => 0..self.col_split.plus,
            Sign::Minus => self.col_split.plus..self.dim(),
        }
    }
}

/// Period matrix with independent indeterminates `tag[i,j]` as entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    pub motive_label: String,
    pub tag: String,
    pub entries: GenericMatrix<SparsePolynomial>,
    pub layout: PeriodLayout,
}

impl PeriodMatrix {
    pub fn var(&self, i: usize, j: usize) -> Var {
        Var::entry(&self.tag, i, j)
    }

    pub fn f_plus(&self) -> SparsePolynomial {
        period_minor(&self.entries, &self.layout, Sign::Plus)
    }

    pub fn f_minus(&self) -> SparsePolynomial {
        period_minor(&self.entries, &self.layout, Sign::Minus)
    }

    pub fn f(&self, sign: Sign) -> SparsePolynomial {
        period_minor(&self.entries, &self.layout, sign)
    }

    pub fn delta(&self) -> SparsePolynomial {
        Scalar::det(&self.entries).expect("period matrices are square and small")
    }
}

pub fn symbolic_period_matrix(h: &PureHodgeData) -> Result<PeriodMatrix, PeriodError> {
    symbolic_period_matrix_tagged(h, h.label())
}

pub fn symbolic_period_matrix_tagged(h: &PureHodgeData, tag: &str) -> Result<PeriodMatrix, PeriodError> {
    if !criticality(h).critical {
        return Err(PeriodError::NotCritical(h.label().to_string()));
    }
    let layout = PeriodLayout::of(h);
    let d = layout.dim();
    let entries = GenericMatrix::from_fn(d, d, |i, j| SparsePolynomial::var(Var::entry(tag, i, j)));
    Ok(PeriodMatrix { motive_label: h.label().to_string(), tag: tag.to_string(), entries, layout })
}

/// Random integer matrix with entries uniform in `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rows: usize, cols: usize, bound: i64, rng: &mut R) -> GenericMatrix<Rational> {
    GenericMatrix::from_fn(rows, cols, |_, _| int(rng.gen_range(-bound..=bound)))
}

/// `f⁺`: rows `1..d⁺` against the `+` columns; `f⁻`: rows `1..d⁻` against
/// the `−` columns. An empty minor is 1.
pub fn period_minor<T: Scalar>(m: &GenericMatrix<T>, layout: &PeriodLayout, sign: Sign) -> T {
    let cols: Vec<usize> = layout.columns(sign).collect();
    let rows: Vec<usize> = (0..cols.len()).collect();
    T::det(&m.select(&rows, &cols)).expect("minor of a square period matrix")
}

/// The square block `Z^±` of `X ⊗ Y` whose determinant is `c^±(M ⊗ M′)`.
///
/// Rows are pairs `(i, l)` with `level(i) + level(l) ≤ k_{q^±}` in
/// lexicographic order; columns are Betti pairs of total sign `±`: for `+`
/// the `(+,+)` pairs then the `(−,−)` pairs, for `−` the `(+,−)` then the
/// `(−,+)` pairs.
pub fn build_z<T: Scalar>(
    x: &GenericMatrix<T>,
    x_layout: &PeriodLayout,
    y: &GenericMatrix<T>,
    y_layout: &PeriodLayout,
    sign: Sign,
    td: &TensorData,
) -> Result<GenericMatrix<T>, PeriodError> {
    if x.rows() != x_layout.dim() || y.rows() != y_layout.dim() {
        return Err(PeriodError::ShapeMismatch);
    }
    let threshold = td
        .threshold(sign)
        .ok_or_else(|| PeriodError::NotCritical(td.product_hodge.label().to_string()))?;
    let mut rows = Vec::new();
    if let Some(k) = threshold {
        for (i, li) in x_layout.row_levels.iter().enumerate() {
            for (l, ll) in y_layout.row_levels.iter().enumerate() {
                if li + ll <= k {
                    rows.push((i, l));
                }
            }
        }
    }
    let blocks = match sign {
        Sign::Plus => [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus)],
        Sign::Minus => [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)],
    };
    let mut cols = Vec::new();
    for (sx, sy) in blocks {
        for j in x_layout.columns(sx) {
            for jj in y_layout.columns(sy) {
                cols.push((j, jj));
            }
        }
    }
    if rows.len() != cols.len() || rows.len() != td.d(sign) {
        return Err(PeriodError::InternalSizeMismatch { rows: rows.len(), cols: cols.len() });
    }
    Ok(GenericMatrix::from_fn(rows.len(), cols.len(), |r, c| {
        let (i, l) = rows[r];
        let (j, jj) = cols[c];
        x.get(i, j).mul_ref(y.get(l, jj))
    }))
}

/// `c^±(M ⊗ M′) = det Z^±` as a polynomial in the entries of `X` and `Y`.
pub fn c_pm_tensor(x: &PeriodMatrix, y: &PeriodMatrix, sign: Sign, td: &TensorData) -> Result<SparsePolynomial, PeriodError> {
    let z = build_z(&x.entries, &x.layout, &y.entries, &y.layout, sign, td)?;
    Ok(determinant(&z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hodge::tensor_hodge;

    fn v(tag: &str, i: usize, j: usize) -> SparsePolynomial {
        SparsePolynomial::var(Var::entry(tag, i, j))
    }

    #[test]
    fn shapes() {
        let x = symbolic_period_matrix(&catalog::ell()).unwrap();
        assert_eq!(x.layout.row_levels, [0, 1]);
        assert_eq!((x.layout.col_split.plus, x.layout.col_split.minus), (1, 1));
        let s = symbolic_period_matrix(&catalog::sym(Sign::Plus)).unwrap();
        assert_eq!(s.layout.row_levels, [0, 1, 2]);
        assert_eq!((s.layout.col_split.plus, s.layout.col_split.minus), (2, 1));
        for eps in Sign::BOTH {
            let a = symbolic_period_matrix(&catalog::artin(eps)).unwrap();
            assert_eq!(a.entries.rows(), 1);
            assert_eq!(a.layout.col_split.get(eps), 1);
        }
    }

    #[test]
    fn not_critical_rejected() {
        let h = crate::hodge::validate(&crate::hodge::RawMotive {
            label: "split".into(),
            weight: 2,
            types: vec![(1, 1, 2)],
            middle_split: Some((1, 1)),
        })
        .unwrap();
        assert_eq!(symbolic_period_matrix(&h), Err(PeriodError::NotCritical("split".into())));
    }

    #[test]
    fn minors() {
        let x = symbolic_period_matrix_tagged(&catalog::ell(), "x").unwrap();
        assert_eq!(x.f_plus(), v("x", 0, 0));
        assert_eq!(x.f_minus(), v("x", 0, 1));
        let a = symbolic_period_matrix_tagged(&catalog::artin(Sign::Plus), "x").unwrap();
        assert_eq!(a.f_plus(), v("x", 0, 0));
        assert_eq!(a.f_minus(), SparsePolynomial::one());
        let h = symbolic_period_matrix_tagged(&catalog::h4(), "x").unwrap();
        assert_eq!(h.f_plus(), &(&v("x", 0, 0) * &v("x", 1, 1)) - &(&v("x", 0, 1) * &v("x", 1, 0)));
        assert_eq!(h.f_minus(), &(&v("x", 0, 2) * &v("x", 1, 3)) - &(&v("x", 0, 3) * &v("x", 1, 2)));
        assert_eq!(h.delta().num_terms(), 24);
    }

    #[test]
    fn z_plus_for_ell_sym() {
        let (m, mp) = (catalog::ell(), catalog::sym(Sign::Plus));
        let td = tensor_hodge(&m, &mp).unwrap();
        let x = symbolic_period_matrix_tagged(&m, "x").unwrap();
        let y = symbolic_period_matrix_tagged(&mp, "y").unwrap();
        let z = build_z(&x.entries, &x.layout, &y.entries, &y.layout, Sign::Plus, &td).unwrap();
        assert_eq!((z.rows(), z.cols()), (3, 3));
        // rows (1,1),(1,2),(2,1); columns (1,1),(1,2) then (2,3)
        let e = |i, j, l, jj| &v("x", i, j) * &v("y", l, jj);
        let expected = GenericMatrix::new(
            3,
            3,
            vec![e(0, 0, 0, 0), e(0, 0, 0, 1), e(0, 1, 0, 2), e(0, 0, 1, 0), e(0, 0, 1, 1), e(0, 1, 1, 2), e(1, 0, 0, 0), e(1, 0, 0, 1), e(1, 1, 0, 2)],
        );
        assert_eq!(z, expected);
        let c = c_pm_tensor(&x, &y, Sign::Plus, &td).unwrap();
        assert_eq!(c.variables().len(), 4 + 5);
        assert_eq!(c.degree(), 6);
        assert_eq!(c.degree_in(|v| v.tag() == "x"), 3);
        assert_eq!(c.degree_in(|v| v.tag() == "y"), 3);
        let cm = c_pm_tensor(&x, &y, Sign::Minus, &td).unwrap();
        assert!(!cm.is_zero());
    }

    #[test]
    fn z_sizes_spread_sym() {
        let (m, mp) = (catalog::spread(Sign::Plus), catalog::sym(Sign::Plus));
        let td = tensor_hodge(&m, &mp).unwrap();
        let x = symbolic_period_matrix_tagged(&m, "x").unwrap();
        let y = symbolic_period_matrix_tagged(&mp, "y").unwrap();
        let zp = build_z(&x.entries, &x.layout, &y.entries, &y.layout, Sign::Plus, &td).unwrap();
        let zm = build_z(&x.entries, &x.layout, &y.entries, &y.layout, Sign::Minus, &td).unwrap();
        assert_eq!(zp.rows(), 5);
        assert_eq!(zm.rows(), 4);
    }

    #[test]
    fn rank_one_tensor() {
        let (m, mp) = (catalog::ell(), catalog::artin(Sign::Plus));
        let td = tensor_hodge(&m, &mp).unwrap();
        let x = symbolic_period_matrix_tagged(&m, "x").unwrap();
        let y = symbolic_period_matrix_tagged(&mp, "y").unwrap();
        assert_eq!(c_pm_tensor(&x, &y, Sign::Plus, &td).unwrap(), &v("x", 0, 0) * &v("y", 0, 0));
        assert_eq!(c_pm_tensor(&x, &y, Sign::Minus, &td).unwrap(), &v("x", 0, 1) * &v("y", 0, 0));
    }

    #[test]
    fn tensor_not_critical() {
        let (m, mp) = (catalog::ell(), catalog::ell());
        let td = tensor_hodge(&m, &mp).unwrap();
        let x = symbolic_period_matrix_tagged(&m, "x").unwrap();
        let y = symbolic_period_matrix_tagged(&mp, "y").unwrap();
        assert!(matches!(c_pm_tensor(&x, &y, Sign::Plus, &td), Err(PeriodError::NotCritical(_))));
    }
}
