use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The exact ground field of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Checks that a prime field really has prime characteristic.
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Input(format!("{p} is not a prime")))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp {
                v: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        match self {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| {
                    let m = BigInt::from(p);
                    (((x % &m) + &m) % &m).to_u32().unwrap()
                };
                let n = Scalar::Fp { v: reduce(num), p };
                let d = Scalar::Fp { v: reduce(den), p };
                let inv = d.inv().ok_or_else(|| {
                    Error::Input(format!("denominator {den} vanishes mod {p}"))
                })?;
                Ok(&n * &inv)
            }
        }
    }

    /// Parses `"7"`, `"-3"` or `"a/b"`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Input(format!("bad scalar `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (
                BigInt::from_str(a.trim()).map_err(|_| bad())?,
                BigInt::from_str(b.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&num, &den)
    }

    pub fn spec_string(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn parse_spec(s: &str) -> Result<Field> {
        match s.trim() {
            "Q" => Ok(Field::Rational),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::Input(format!("unknown field spec `{other}`")))?;
                if p as u64 > (1u64 << 31) {
                    return Err(Error::Input(format!("prime {p} exceeds 2^31")));
                }
                Field::prime(p)
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// An exact field element. Mixing elements of different fields is a bug and
/// panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            },
        })
    }

    /// Numerator and denominator with positive denominator; prime-field
    /// elements are reported as their canonical representative over 1.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Q(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Fp { v, .. } => (BigInt::from(*v), BigInt::one()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn mixed() -> ! {
    panic!("scalars from different fields were combined")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mixed(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mixed(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_exactly() {
        for field in [Field::Rational, Field::Prime(7), Field::Prime(2147483647)] {
            for a in -5..=5 {
                let a = field.from_i64(a);
                assert!((&a + &(-&a)).is_zero());
                if let Some(ai) = a.inv() {
                    assert!((&a * &ai).is_one());
                } else {
                    assert!(a.is_zero());
                }
            }
        }
    }

    #[test]
    fn parses_rationals() {
        let q = Field::Rational.parse_scalar("-3/6").unwrap();
        assert_eq!(q, Field::Rational.from_ratio(&BigInt::from(-1), &BigInt::from(2)).unwrap());
        let x = Field::Prime(7).parse_scalar("1/2").unwrap();
        assert_eq!(x, Field::Prime(7).from_i64(4));
        assert!(Field::Prime(7).parse_scalar("1/7").is_err());
        assert!(Field::Rational.parse_scalar("1/0").is_err());
        assert!(Field::Rational.parse_scalar("x").is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!(Field::parse_spec("Q").unwrap(), Field::Rational);
        assert_eq!(Field::parse_spec("Fp:5").unwrap(), Field::Prime(5));
        assert!(Field::parse_spec("Fp:4").is_err());
        assert!(Field::parse_spec("Fp:1").is_err());
        assert!(Field::parse_spec("R").is_err());
        assert_eq!(Field::parse_spec(&Field::Prime(13).spec_string()).unwrap(), Field::Prime(13));
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(3).one();
    }
}
