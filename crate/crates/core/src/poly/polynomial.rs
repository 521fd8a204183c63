use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::monomial::{Monomial, Var};
use super::rational::{rational_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
}

/// Sparse multivariate polynomial over the rationals in canonical form:
/// terms keyed by monomial, no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        SparsePolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SparsePolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree; the zero polynomial has degree −1.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Degree in the variables selected by `pred`.
    pub fn degree_in(&self, pred: impl Fn(&Var) -> bool) -> i64 {
        self.terms
            .keys()
            .map(|m| m.powers().filter(|(v, _)| pred(v)).map(|(_, e)| e as i64).sum())
            .max()
            .unwrap_or(-1)
    }

    /// Leading term under the global monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value under a full assignment.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                let x = assignment
                    .get(v)
                    .ok_or_else(|| PolyError::MissingVariable(v.to_string()))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes the assigned variables by values, leaving the rest symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Rational>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.powers() {
                match assignment.get(v) {
                    Some(x) => coeff *= num_traits::pow(x.clone(), e as usize),
                    None => rest.push((v.clone(), e)),
                }
            }
            out.add_term(Monomial::from_powers(rest), coeff);
        }
        out
    }

    /// Replaces variables by polynomials; unmapped variables stay as they are.
    pub fn compose(&self, images: &BTreeMap<Var, SparsePolynomial>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (v, e) in m.powers() {
                let factor = match images.get(v) {
                    Some(p) => p.pow(e),
                    None => Self::term(Monomial::from_powers([(v.clone(), e)]), Rational::one()),
                };
                t = &t * &factor;
            }
            out = &out + &t;
        }
        out
    }
}

/// Returns `c` with `a = c·b`, or `None` when no nonzero rational works
/// (including when either side is zero).
pub fn proportionality(a: &SparsePolynomial, b: &SparsePolynomial) -> Option<Rational> {
    let (_, la) = a.leading_term()?;
    let (_, lb) = b.leading_term()?;
    if a.num_terms() != b.num_terms() {
        return None;
    }
    // a·lc(b) = b·lc(a) term by term
    for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
        if ma != mb || ca * lb != cb * la {
            return None;
        }
    }
    Some(la / lb)
}

impl<'a> Add<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $f(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        -&self
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", rational_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational_string(&abs))?;
            }
        }
        Ok(())
    }
}
