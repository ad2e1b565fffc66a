//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field every scalar of a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// Integers modulo a prime below 2^32.
    Prime(u64),
}

impl Field {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    /// `num / den` as a field element.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parses the canonical string form: `"a"` or `"a/b"` for rationals,
    /// a representative in `[0, p)` for prime fields (any integer is reduced).
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?} for field {self}"));
        match self {
            Field::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let value = u64::try_from(r).map_err(|_| bad())?;
                Ok(Scalar::Prime { value, modulus: p })
            }
        }
    }

    /// Parses `Q` or `Fp:<p>`.
    pub fn from_descriptor(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" => Ok(Field::Rational),
            other => match other.strip_prefix("Fp:") {
                Some(p) => {
                    let p: u64 = p.parse().map_err(|_| Error::Parse(format!("invalid prime in field {other:?}")))?;
                    Field::prime(p)
                }
                None => Err(Error::Parse(format!("unknown field descriptor {other:?}"))),
            },
        }
    }

    pub fn descriptor(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of a [`Field`].
///
/// Binary operators panic when the operands come from different fields; the
/// fallible entry points (`checked_div`, `inv`, matrix constructors) report
/// that as an [`Error`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(self * &other.inv()?)
    }

    /// Canonical string form (see [`Field::parse`]).
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    // BigRational is kept normalized: lowest terms, positive denominator.
                    debug_assert!(r.denom().is_positive());
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_inverse() {
        let f = Field::prime(101).unwrap();
        for n in 1..101 {
            let x = f.from_i64(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn division_by_zero() {
        let q = Field::Rational;
        assert!(matches!(q.one().checked_div(&q.zero()), Err(Error::DivisionByZero)));
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn canonical_strings() {
        let q = Field::Rational;
        assert_eq!(q.parse("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse("10/5").unwrap().to_string(), "2");
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("-1").unwrap().to_string(), "6");
        assert_eq!(f.from_i64(15).to_string(), "1");
    }

    #[test]
    fn descriptors() {
        assert_eq!(Field::from_descriptor("Q").unwrap(), Field::Rational);
        assert_eq!(Field::from_descriptor("Fp:101").unwrap(), Field::Prime(101));
        assert!(Field::from_descriptor("Fp:100").is_err());
        assert!(Field::from_descriptor("R").is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixed_modes_panic_in_operators() {
        let _ = &Field::Rational.one() + &Field::Prime(5).one();
    }
}
