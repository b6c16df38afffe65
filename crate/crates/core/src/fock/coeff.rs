//! Exact rational coefficients with a machine-word fast path.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};

/// Bound on small numerators and denominators; keeps negation and reduction overflow-free.
const LIMIT: u64 = 1 << 62;

/// An exact rational. Values representable by bounded `i64` fractions are always stored
/// that way, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Rational64),
    Big(BigRational),
}

fn fits(r: &Rational64) -> bool {
    r.numer().unsigned_abs() < LIMIT && r.denom().unsigned_abs() < LIMIT
}

fn widen(r: &Rational64) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Coeff {
    pub fn from_integer(n: i64) -> Self {
        Self::small(Rational64::from_integer(n))
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        Self::small(Rational64::new(numer, denom))
    }

    fn small(r: Rational64) -> Self {
        if fits(&r) {
            Coeff(Repr::Small(r))
        } else {
            Coeff(Repr::Big(widen(&r)))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => widen(r),
            Repr::Big(b) => b.clone(),
        }
    }

    fn binary(
        &self,
        rhs: &Coeff,
        small: impl Fn(&Rational64, &Rational64) -> Option<Rational64>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Coeff {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = small(a, b) {
                return Coeff::small(r);
            }
        }
        Coeff::from(big(self.to_big(), rhs.to_big()))
    }
}

impl From<BigRational> for Coeff {
    fn from(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n.unsigned_abs() < LIMIT && d.unsigned_abs() < LIMIT => {
                Coeff(Repr::Small(Rational64::new_raw(n, d)))
            }
            _ => Coeff(Repr::Big(b)),
        }
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_integer(n)
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff(Repr::Small(Rational64::zero()))
    }

    fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Small(r) if r.is_zero())
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff(Repr::Small(Rational64::one()))
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.binary(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Coeff {
    fn add_assign(&mut self, rhs: Coeff) {
        *self = &*self + &rhs;
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self.binary(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.binary(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

/// Panics on division by zero.
impl Div for &Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        assert!(!rhs.is_zero(), "division by zero");
        self.binary(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self.0 {
            Repr::Small(r) => Coeff(Repr::Small(-r)),
            Repr::Big(b) => Coeff::from(-b),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -self.clone()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{r}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
