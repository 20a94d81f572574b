use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rat;

/// An exact field the curve machinery can compute over.
///
/// Constants are field-independent: ℚ embeds in every implementor without
/// extra context.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rat(r: Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    fn scale(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r.clone())
    }

    /// The value as a rational, if it lies in ℚ.
    fn as_rat(&self) -> Option<Rat>;
}

impl Field for Rat {
    fn from_rat(r: Rat) -> Self {
        r
    }

    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        self.recip()
    }

    fn scale(&self, r: &Rat) -> Self {
        self * r
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}
