//! Exact rational scalars over arbitrary-precision integers.
//!
//! Every coefficient in the engine is a reduced fraction p/q with q > 0;
//! zero is always 0/1. There is no floating point anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

/// A rational number, kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds p/q. Panics on q = 0; the fraction is reduced on construction.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 - &rhs.0)
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 * &rhs.0)
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar(self.0 / rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `p`, `-p`, or `p/q` with optional sign on the numerator.
impl FromStr for Scalar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let p = BigInt::from_str(num_str).map_err(|e| format!("bad numerator {num_str:?}: {e}"))?;
        let q = BigInt::from_str(den_str).map_err(|e| format!("bad denominator {den_str:?}: {e}"))?;
        if q.is_zero() {
            return Err("zero denominator".to_string());
        }
        Ok(Scalar(BigRational::new(p, q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::integer::Integer;

    fn invariants_hold(s: &Scalar) -> bool {
        let n = s.numerator();
        let d = s.denominator();
        d.is_positive() && n.abs().gcd(d).is_one() || (n.is_zero() && d.is_one())
    }

    #[test]
    fn reduced_on_construction() {
        let s = Scalar::ratio(6, -4);
        assert_eq!(s, Scalar::ratio(-3, 2));
        assert_eq!(s.to_string(), "-3/2");
        assert!(invariants_hold(&s));
    }

    #[test]
    fn zero_is_canonical() {
        let z = Scalar::ratio(0, 7);
        assert!(z.is_zero());
        assert_eq!(z.denominator(), &BigInt::from(1));
    }

    // hand oracle: 2/3 * 3 = 2
    #[test]
    fn hand_rational_arithmetic() {
        assert_eq!(&Scalar::ratio(2, 3) * &Scalar::from_int(3), Scalar::from_int(2));
        assert_eq!(
            &Scalar::ratio(1, 2) + &Scalar::ratio(1, 3),
            Scalar::ratio(5, 6)
        );
    }

    #[test]
    fn parse_round_trip() {
        for txt in ["0", "1", "-7", "2/3", "-11/4"] {
            let s: Scalar = txt.parse().unwrap();
            assert_eq!(s.to_string(), txt);
        }
        assert!("1/0".parse::<Scalar>().is_err());
    }
}
