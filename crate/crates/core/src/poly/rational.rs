use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Reduced fraction with positive denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `p/q`, or just `p` for integers.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{parse_rational, rational_string, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&rational_string(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let s = Option::<String>::deserialize(d)?;
            s.map(|s| parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rational_string(&int(0)), "0");
        assert_eq!(rational_string(&rat(2, 3)), "2/3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "5/7", "-12/5"] {
            assert_eq!(rational_string(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
