//! Elements of ℚ(√D).
//!
//! Every element carries its radicand. A rational element (zero √D part) is
//! normalised to radicand `0`, so ℚ embeds canonically and rational values
//! combine with elements of any field. Nonzero radicands are square-free
//! integers, fixed when the field is constructed.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::rat::split_square_factor;
use super::{Field, Rat};
use crate::error::{Error, Result};

/// Trial-division bound used when extracting square factors of a radicand.
const SQUARE_FREE_TRIAL_BOUND: u32 = 1 << 14;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    d: Rat,
}

/// A quadratic field ℚ(√D) with `D` a square-free integer other than 0, 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    radicand: Rat,
}

impl QuadField {
    /// The field ℚ(√r). Fails when `r` is the square of a rational.
    pub fn new(r: &Rat) -> Result<Self> {
        let (_, d) = square_free_parts(r);
        if r.is_zero() || d.is_one() {
            return Err(Error::SquareRadicand(r.to_string()));
        }
        Ok(QuadField { radicand: d })
    }

    pub fn radicand(&self) -> &Rat {
        &self.radicand
    }

    pub fn sqrt_radicand(&self) -> QuadExt {
        QuadExt::new(Rat::zero(), Rat::one(), self.radicand.clone())
    }
}

/// Writes `r = m^2 * d` with `m` rational and `d` a (trial-divided) square-free integer.
fn square_free_parts(r: &Rat) -> (Rat, Rat) {
    // r = p/q = (p*q) / q^2
    let pq: BigInt = r.numer() * r.denom();
    let (m, s) = split_square_factor(&pq, SQUARE_FREE_TRIAL_BOUND);
    let m = Rat::from_bigints(m, r.denom().clone()).expect("nonzero denominator");
    (m, Rat::from_bigints(s, BigInt::one()).expect("unit denominator"))
}

impl QuadExt {
    fn new(a: Rat, b: Rat, d: Rat) -> Self {
        if b.is_zero() || d.is_zero() {
            QuadExt { a, b: Rat::zero(), d: Rat::zero() }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn rational(a: Rat) -> Self {
        QuadExt::new(a, Rat::zero(), Rat::zero())
    }

    /// Exact √r: rational when `r` is a rational square, otherwise `m·√D`
    /// with `D` the square-free part of `r`.
    pub fn sqrt(r: &Rat) -> Self {
        if r.is_zero() {
            return QuadExt::rational(Rat::zero());
        }
        if let Some(s) = r.sqrt_exact() {
            return QuadExt::rational(s);
        }
        let (m, d) = square_free_parts(r);
        if d.is_one() {
            return QuadExt::rational(m);
        }
        QuadExt::new(Rat::zero(), m, d)
    }

    pub fn base(&self) -> &Rat {
        &self.a
    }

    pub fn coeff(&self) -> &Rat {
        &self.b
    }

    /// Radicand `D`, or `0` for a rational element.
    pub fn radicand(&self) -> &Rat {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt::new(self.a.clone(), -&self.b, self.d.clone())
    }

    /// `z · conj(z) = a² − b²D`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    fn common_radicand(&self, other: &Self) -> Rat {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixed quadratic fields");
                self.d.clone()
            }
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        QuadExt::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        QuadExt::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        if self.b.is_zero() {
            return QuadExt::new(&self.a * &rhs.a, &self.a * &rhs.b, d);
        }
        if rhs.b.is_zero() {
            return QuadExt::new(&self.a * &rhs.a, &self.b * &rhs.a, d);
        }
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt::new(a, b, d)
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.inv().expect("division by zero in ℚ(√D)")
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a, -self.b, self.d)
    }
}

impl Field for QuadExt {
    fn from_rat(r: Rat) -> Self {
        QuadExt::rational(r)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if self.b.is_zero() {
            return Some(QuadExt::rational(self.a.recip()?));
        }
        let n = self.norm().recip()?;
        Some(QuadExt::new(&self.a * &n, -(&self.b * &n), self.d.clone()))
    }

    fn scale(&self, r: &Rat) -> Self {
        QuadExt::new(&self.a * r, &self.b * r, self.d.clone())
    }

    fn as_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.a.clone())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The two roots of `A y² + B y + C` in ℚ(√(B² − 4AC)).
///
/// Rational discriminant squares give rational roots. The `+√` root comes first.
pub fn quad_field_solve(a: &Rat, b: &Rat, c: &Rat) -> Result<(QuadExt, QuadExt)> {
    if a.is_zero() {
        return Err(Error::DegenerateQuadratic);
    }
    let disc = b * b - Rat::from_int(4) * a * c;
    let root = QuadExt::sqrt(&disc);
    let two_a = Rat::from_int(2) * a;
    let inv = two_a.recip().expect("a != 0");
    let minus_b = QuadExt::rational(-b);
    let r1 = (minus_b.clone() + root.clone()).scale(&inv);
    let r2 = (minus_b - root).scale(&inv);
    Ok((r1, r2))
}
