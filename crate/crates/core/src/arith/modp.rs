//! Reduction of ℚ(√D) modulo a prime `p` that is inert in it, landing in
//! `F_{p²} = F_p[s]/(s² − D)`.
//!
//! Used to sieve orbit-closure candidates: an identity between points that
//! holds exactly also holds after reduction at a prime of good reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Field, QuadExt, Rat};

/// Primes just below powers of two, all under 2⁶².
pub const SIEVE_PRIMES: [u64; 16] = [
    (1 << 61) - 1,
    (1 << 62) - 57,
    (1 << 60) - 93,
    (1 << 59) - 55,
    (1 << 58) - 27,
    (1 << 57) - 13,
    (1 << 56) - 5,
    (1 << 55) - 55,
    (1 << 54) - 33,
    (1 << 53) - 111,
    (1 << 52) - 47,
    (1 << 51) - 129,
    (1 << 50) - 27,
    (1 << 49) - 81,
    (1 << 48) - 59,
    (1 << 47) - 115,
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a != 0).then(|| pow_mod(a, p - 2, p))
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue below p")
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let den = big_mod(r.denom(), p);
    Some(mul_mod(big_mod(r.numer(), p), inv_mod(den, p)?, p))
}

/// Whether `d` is a nonzero quadratic non-residue mod `p`.
pub fn is_non_residue(d: &Rat, p: u64) -> bool {
    match rat_mod(d, p) {
        Some(v) if v != 0 => pow_mod(v, (p - 1) / 2, p) == p - 1,
        _ => false,
    }
}

/// An element `a + b·s` of `F_{p²}` with `s² = d`; base-field elements carry `d = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2<const P: u64> {
    a: u64,
    b: u64,
    d: u64,
}

impl<const P: u64> Fp2<P> {
    fn new(a: u64, b: u64, d: u64) -> Self {
        if b == 0 {
            Fp2 { a, b: 0, d: 0 }
        } else {
            Fp2 { a, b, d }
        }
    }

    /// Reduction of `z ∈ ℚ(√D)`; `None` if `p` divides a denominator or is not inert.
    pub fn reduce(z: &QuadExt) -> Option<Self> {
        let a = rat_mod(z.base(), P)?;
        if z.is_rational() {
            return Some(Fp2::new(a, 0, 0));
        }
        if !is_non_residue(z.radicand(), P) {
            return None;
        }
        Some(Fp2::new(a, rat_mod(z.coeff(), P)?, rat_mod(z.radicand(), P)?))
    }

    fn common_d(&self, o: &Self) -> u64 {
        match (self.d, o.d) {
            (0, d) | (d, 0) => d,
            (d, e) => {
                assert_eq!(d, e, "mixed quadratic extensions");
                d
            }
        }
    }
}

impl<const P: u64> Add for Fp2<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.common_d(&o);
        Fp2::new((self.a + o.a) % P, (self.b + o.b) % P, d)
    }
}

impl<const P: u64> Neg for Fp2<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp2::new((P - self.a) % P, (P - self.b) % P, self.d)
    }
}

impl<const P: u64> Sub for Fp2<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> Mul for Fp2<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.common_d(&o);
        let a = (mul_mod(self.a, o.a, P) + mul_mod(mul_mod(self.b, o.b, P), d, P)) % P;
        let b = (mul_mod(self.a, o.b, P) + mul_mod(self.b, o.a, P)) % P;
        Fp2::new(a, b, d)
    }
}

impl<const P: u64> Field for Fp2<P> {
    /// Panics if `p` divides the denominator; callers check denominators first.
    fn from_rat(r: Rat) -> Self {
        Fp2::new(rat_mod(&r, P).expect("denominator divisible by sieve prime"), 0, 0)
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.b == 0 {
            return Some(Fp2::new(inv_mod(self.a, P)?, 0, 0));
        }
        // (a + bs)⁻¹ = (a − bs)/(a² − d b²); the norm is nonzero when d is a non-residue
        let norm = (mul_mod(self.a, self.a, P) + P - mul_mod(mul_mod(self.b, self.b, P), self.d, P)) % P;
        let n = inv_mod(norm, P)?;
        Some(Fp2::new(mul_mod(self.a, n, P), mul_mod((P - self.b) % P, n, P), self.d))
    }

    fn as_rat(&self) -> Option<Rat> {
        None
    }
}

impl<const P: u64> fmt::Display for Fp2<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{} (mod {P})", self.a)
        } else {
            write!(f, "{}+{}*s (mod {P}, s^2={})", self.a, self.b, self.d)
        }
    }
}

impl<const P: u64> fmt::Debug for Fp2<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Something to run once the sieve prime is fixed as a const parameter.
pub trait WithPrime {
    type Output;
    fn run<const P: u64>(self) -> Self::Output;
}

/// Runs `job` with `P = SIEVE_PRIMES[idx]`.
pub fn with_sieve_prime<J: WithPrime>(idx: usize, job: J) -> J::Output {
    macro_rules! dispatch {
        ($($i:literal)*) => {
            match idx {
                $($i => job.run::<{ SIEVE_PRIMES[$i] }>(),)*
                _ => panic!("sieve prime index {idx} out of range"),
            }
        };
    }
    dispatch!(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15)
}
