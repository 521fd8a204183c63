use serde::Serialize;

use super::DirichletError;

pub const MAX_ABS_DISC: i64 = 10_000;

fn squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `D ≡ 1 (mod 4)` squarefree, or `D = 4m` with `m ≡ 2, 3 (mod 4)` squarefree.
/// `D = 1` (the trivial character) is included.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d.abs() > MAX_ABS_DISC {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return squarefree(d);
    }
    if d % 4 == 0 {
        let m = d / 4;
        return matches!(m.rem_euclid(4), 2 | 3) && squarefree(m);
    }
    false
}

/// Fundamental discriminants with `|D| ≤ max_abs`, excluding 1, in increasing order.
pub fn fundamental_discriminants(max_abs: i64) -> Vec<i64> {
    (-max_abs..=max_abs).filter(|&d| d != 1 && is_fundamental(d)).collect()
}

fn legendre(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let mut acc = 1u64;
    let mut base = r;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 { 1 } else { -1 }
}

/// Kronecker symbol `(d/n)` for `n ≥ 0`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    if n == 0 {
        return i8::from(d.abs() == 1);
    }
    let mut n = n;
    let mut acc = 1i8;
    let mut p = 2u64;
    while n > 1 {
        if p * p > n {
            p = n;
        }
        while n % p == 0 {
            n /= p;
            let v = if p == 2 {
                match d.rem_euclid(8) {
                    1 | 7 => 1,
                    3 | 5 => -1,
                    _ => 0,
                }
            } else {
                legendre(d, p)
            };
            acc *= v;
            if acc == 0 {
                return 0;
            }
        }
        p += 1;
    }
    acc
}

/// Primitive quadratic character of conductor `|D|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadChar {
    disc: i64,
    modulus: u64,
    values: Vec<i8>,
    parity: i8,
}

pub fn kronecker_chi(d: i64) -> Result<QuadChar, DirichletError> {
    if !is_fundamental(d) {
        return Err(DirichletError::NotFundamental(d));
    }
    let modulus = d.unsigned_abs();
    let values = (0..modulus).map(|a| kronecker(d, a)).collect();
    Ok(QuadChar { disc: d, modulus, values, parity: if d > 0 { 1 } else { -1 } })
}

impl QuadChar {
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `χ(-1)`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, a: i64) -> i8 {
        self.values[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// `χχ′` on the product modulus, from the two value tables.
    pub fn product(&self, other: &QuadChar) -> Result<QuadChar, DirichletError> {
        if num_integer::gcd(self.modulus, other.modulus) != 1 {
            return Err(DirichletError::NotCoprime(self.disc, other.disc));
        }
        let modulus = self.modulus * other.modulus;
        let values = (0..modulus as i64).map(|a| self.value(a) * other.value(a)).collect();
        Ok(QuadChar { disc: self.disc * other.disc, modulus, values, parity: self.parity * other.parity })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = kronecker_chi(-4).unwrap();
        assert_eq!((c.value(1), c.value(2), c.value(3), c.parity()), (1, 0, -1, -1));
        let c = kronecker_chi(5).unwrap();
        assert_eq!((c.value(2), c.value(4), c.parity()), (-1, 1, 1));
        assert!(kronecker_chi(12).is_ok());
        assert_eq!(kronecker_chi(9), Err(DirichletError::NotFundamental(9)));
        assert_eq!(kronecker_chi(0), Err(DirichletError::NotFundamental(0)));
        assert!(kronecker_chi(1).unwrap().is_trivial());
    }

    #[test]
    fn counts_of_fundamentals() {
        let small = fundamental_discriminants(30);
        assert_eq!(small, [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 28, 29]);
    }

    fn squares_mod(p: i64) -> Vec<i64> {
        (1..p).map(|x| x * x % p).collect()
    }

    #[test]
    fn odd_prime_values_count_squares() {
        for d in fundamental_discriminants(200) {
            let c = kronecker_chi(d).unwrap();
            for p in [3i64, 5, 7, 11, 13] {
                if d % p == 0 {
                    assert_eq!(c.value(p), 0);
                } else {
                    let is_sq = squares_mod(p).contains(&d.rem_euclid(p));
                    assert_eq!(c.value(p), if is_sq { 1 } else { -1 }, "D={d} p={p}");
                }
            }
        }
    }

    #[test]
    fn primitive_and_multiplicative() {
        for d in fundamental_discriminants(100) {
            let c = kronecker_chi(d).unwrap();
            let n = c.modulus() as i64;
            assert_eq!(c.value(-1), c.parity());
            for a in 0..n {
                assert_eq!(c.value(a) == 0, num_integer::gcd(a, n) > 1, "D={d} a={a}");
                for b in 0..n {
                    assert_eq!(c.value(a * b), c.value(a) * c.value(b));
                }
            }
            let sum: i64 = c.values().iter().map(|&v| i64::from(v)).sum();
            assert_eq!(sum, 0);
        }
    }

    #[test]
    fn products() {
        let p = kronecker_chi(-4).unwrap().product(&kronecker_chi(5).unwrap()).unwrap();
        assert_eq!(p, kronecker_chi(-20).unwrap());
        let p = kronecker_chi(5).unwrap().product(&kronecker_chi(8).unwrap()).unwrap();
        assert_eq!(p, kronecker_chi(40).unwrap());
        let m = kronecker_chi(-4).unwrap();
        assert_eq!(m.product(&m), Err(DirichletError::NotCoprime(-4, -4)));
    }
}
