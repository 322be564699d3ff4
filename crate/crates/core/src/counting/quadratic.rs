//! Exact arithmetic in Q(√D).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The number `a + b·√D` with rational `a`, `b` and a positive integer `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticValue {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl QuadraticValue {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(d.is_positive(), "discriminant must be positive");
        Self { a, b, d }
    }

    pub fn from_integer(value: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self::new(
            BigRational::from_integer(value.into()),
            BigRational::zero(),
            d.into(),
        )
    }

    pub fn one(d: impl Into<BigInt>) -> Self {
        Self::from_integer(1, d)
    }

    /// √D itself.
    pub fn sqrt_d(d: impl Into<BigInt>) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), d.into())
    }

    /// The discriminant `(m + 2)² − 8` governing arity `m`.
    pub fn discriminant(m: usize) -> BigInt {
        let k = BigInt::from(m) + 2u32;
        &k * &k - 8u32
    }

    /// τ = (m + 2 + R) / 2 with R = √((m + 2)² − 8).
    pub fn tau(m: usize) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2u32));
        Self::new(
            BigRational::from_integer(BigInt::from(m) + 2u32) * &half,
            half,
            Self::discriminant(m),
        )
    }

    /// τ̂ = (m + 2 − R) / 2.
    pub fn tau_hat(m: usize) -> Self {
        Self::tau(m).conjugate()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// a² − D·b², the product with the conjugate.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    /// The value as a rational, if its √D part vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.a * k, &self.b * k, self.d.clone())
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.d.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact ⌊a + b√D⌋.
    pub fn floor(&self) -> BigInt {
        // Over the common denominator s: (p + q√D) / s.
        let s = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&s / self.a.denom());
        let q = self.b.numer() * (&s / self.b.denom());
        let q_sqrt_d_floor = floor_sqrt_product(&q, &self.d);
        (p + q_sqrt_d_floor).div_floor(&s)
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "values from different quadratic fields");
    }
}

/// ⌊q·√d⌋ for integer q and positive d, via the integer square root of q²d.
fn floor_sqrt_product(q: &BigInt, d: &BigInt) -> BigInt {
    let square = q * q * d;
    let root = square.sqrt();
    match q.sign() {
        Sign::Minus if &root * &root != square => -root - 1,
        Sign::Minus => -root,
        _ => root,
    }
}

impl Add for &QuadraticValue {
    type Output = QuadraticValue;

    fn add(self, rhs: &QuadraticValue) -> QuadraticValue {
        self.check_same_field(rhs);
        QuadraticValue::new(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone())
    }
}

impl Sub for &QuadraticValue {
    type Output = QuadraticValue;

    fn sub(self, rhs: &QuadraticValue) -> QuadraticValue {
        self.check_same_field(rhs);
        QuadraticValue::new(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone())
    }
}

impl Mul for &QuadraticValue {
    type Output = QuadraticValue;

    fn mul(self, rhs: &QuadraticValue) -> QuadraticValue {
        self.check_same_field(rhs);
        let d = BigRational::from_integer(self.d.clone());
        QuadraticValue::new(
            &self.a * &rhs.a + d * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.d.clone(),
        )
    }
}

impl Neg for &QuadraticValue {
    type Output = QuadraticValue;

    fn neg(self) -> QuadraticValue {
        QuadraticValue::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }
}

impl Add for QuadraticValue {
    type Output = QuadraticValue;
    fn add(self, rhs: QuadraticValue) -> QuadraticValue {
        &self + &rhs
    }
}

impl Sub for QuadraticValue {
    type Output = QuadraticValue;
    fn sub(self, rhs: QuadraticValue) -> QuadraticValue {
        &self - &rhs
    }
}

impl Mul for QuadraticValue {
    type Output = QuadraticValue;
    fn mul(self, rhs: QuadraticValue) -> QuadraticValue {
        &self * &rhs
    }
}

impl fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.a, self.b, self.d)
    }
}
