use std::fmt;

use super::{Field, Rat};
use crate::error::{Error, Result};

/// A point `[c0 : c1]` of P¹ in canonical form.
///
/// The last nonzero coordinate is scaled to 1, so `[1:0]` is ∞ and every
/// finite point reads `[x:1]`. Equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint<F: Field> {
    c0: F,
    c1: F,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(c0: F, c1: F) -> Result<Self> {
        if c1.is_zero() {
            if c0.is_zero() {
                return Err(Error::ZeroProjectivePoint);
            }
            return Ok(ProjPoint { c0: F::one(), c1: F::zero() });
        }
        let inv = c1.inv().expect("nonzero");
        Ok(ProjPoint { c0: c0 * inv, c1: F::one() })
    }

    pub fn finite(x: F) -> Self {
        ProjPoint { c0: x, c1: F::one() }
    }

    pub fn infinity() -> Self {
        ProjPoint { c0: F::one(), c1: F::zero() }
    }

    pub fn c0(&self) -> &F {
        &self.c0
    }

    pub fn c1(&self) -> &F {
        &self.c1
    }

    pub fn is_infinity(&self) -> bool {
        self.c1.is_zero()
    }

    /// Affine value `c0/c1`, or `None` at ∞.
    pub fn affine(&self) -> Option<&F> {
        (!self.is_infinity()).then_some(&self.c0)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ProjPoint<G> {
        ProjPoint::new(f(&self.c0), f(&self.c1)).expect("field embedding keeps nonzero")
    }
}

impl ProjPoint<Rat> {
    /// `[p0 : p1]` from integers; panics on `[0:0]`.
    pub fn ints(p0: i64, p1: i64) -> Self {
        ProjPoint::new(Rat::from_int(p0), Rat::from_int(p1)).expect("nonzero point")
    }

    pub fn rats(p0: Rat, p1: Rat) -> Self {
        ProjPoint::new(p0, p1).expect("nonzero point")
    }

    /// Coordinates as `["p/q", "p/q"]` strings.
    pub fn to_strings(&self) -> [String; 2] {
        [self.c0.to_string(), self.c1.to_string()]
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.c0, self.c1)
    }
}

impl<F: Field> fmt::Debug for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(ProjPoint::ints(-1, 5), ProjPoint::rats(Rat::new(-1, 5), Rat::one()));
        assert_eq!(ProjPoint::ints(7, 0), ProjPoint::<Rat>::infinity());
        assert_eq!(ProjPoint::ints(-1, 0).to_strings(), ["1".to_string(), "0".to_string()]);
        assert!(ProjPoint::new(Rat::zero(), Rat::zero()).is_err());
        assert_eq!(ProjPoint::ints(0, -3), ProjPoint::finite(Rat::zero()));
    }

    proptest! {
        #[test]
        fn canonicalisation_is_scale_invariant_and_idempotent(
            a in -50i64..50, b in -50i64..50, ln in -30i64..30, ld in 1i64..20,
        ) {
            prop_assume!(a != 0 || b != 0);
            prop_assume!(ln != 0);
            let lambda = Rat::new(ln, ld);
            let p = ProjPoint::new(Rat::from_int(a), Rat::from_int(b)).unwrap();
            let q = ProjPoint::new(&lambda * Rat::from_int(a), &lambda * Rat::from_int(b)).unwrap();
            prop_assert_eq!(&p, &q);
            let again = ProjPoint::new(p.c0().clone(), p.c1().clone()).unwrap();
            prop_assert_eq!(p, again);
        }
    }
}
