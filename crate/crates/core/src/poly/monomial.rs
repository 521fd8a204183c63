use std::fmt;
use std::sync::Arc;

/// Polynomial indeterminate.
///
/// Matrix-entry variables carry a tag (which matrix they belong to) and a
/// zero-based `(row, col)` position; free-standing variables have no position.
/// The derived order (tag, then position) is the global variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    tag: Arc<str>,
    pos: Option<(u32, u32)>,
}

impl Var {
    pub fn named(name: &str) -> Self {
        Var { tag: Arc::from(name), pos: None }
    }

    pub fn entry(tag: &str, row: usize, col: usize) -> Self {
        Var { tag: Arc::from(tag), pos: Some((row as u32, col as u32)) }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Zero-based matrix position, if this is a matrix-entry variable.
    pub fn position(&self) -> Option<(usize, usize)> {
        self.pos.map(|(r, c)| (r as usize, c as usize))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some((r, c)) => write!(f, "{}[{},{}]", self.tag, r + 1, c + 1),
            None => write!(f, "{}", self.tag),
        }
    }
}

/// Power product of variables, sorted by variable with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Self {
        let mut v: Vec<(Var, u32)> = powers.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn exponent(&self, var: &Var) -> u32 {
        self.0
            .binary_search_by(|(v, _)| v.cmp(var))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_drop_zero_exponents() {
        let x = Var::named("x");
        let y = Var::named("y");
        let m = Monomial::from_powers([(y.clone(), 1), (x.clone(), 2), (y.clone(), 0), (x.clone(), 1)]);
        assert_eq!(m.exponent(&x), 3);
        assert_eq!(m.exponent(&y), 1);
        assert_eq!(m.degree(), 4);
        let one = Monomial::from_powers([(x, 0)]);
        assert!(one.is_one());
    }

    #[test]
    fn product_is_sorted_merge() {
        let a = Monomial::from_powers([(Var::entry("x", 0, 0), 1), (Var::entry("y", 0, 0), 1)]);
        let b = Monomial::var(Var::entry("x", 1, 0));
        let p = a.mul(&b);
        let vars: Vec<String> = p.powers().map(|(v, _)| v.to_string()).collect();
        assert_eq!(vars, ["x[1,1]", "x[2,1]", "y[1,1]"]);
    }
}
