//! Sparse Laurent polynomials in `x, y` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rat};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Monomial = (i64, i64);

/// Invariant: no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: i64, j: i64, c: Rat) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = LaurentPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i64, j: i64) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect() }
    }

    /// Multiply by `x^di y^dj`.
    pub fn shift(&self, di: i64, dj: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&(i, j), v)| ((i + di, j + dj), v.clone())).collect(),
        }
    }

    /// Substitute monomials: `x^i y^j ↦ x^{f(i,j).0} y^{f(i,j).1}`.
    pub fn map_monomials(&self, f: impl Fn(i64, i64) -> Monomial) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(&(i, j), v)| (f(i, j), v.clone())))
    }

    /// Swap the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        self.map_monomials(|i, j| (j, i))
    }

    /// Largest `max(|i|, |j|)` over the support (0 for the zero polynomial).
    pub fn support_radius(&self) -> i64 {
        self.terms.keys().map(|&(i, j)| i.abs().max(j.abs())).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * x.pow(i as i32) * y.pow(j as i32))
            .sum()
    }

    /// Evaluation over any exact field; `None` if a negative power meets a zero.
    pub fn eval_in<F: Field>(&self, x: &F, y: &F) -> Option<F> {
        let mut acc = F::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + F::from_rat(c.clone()) * field_pow(x, i)? * field_pow(y, j)?;
        }
        Some(acc)
    }
}

fn field_pow<F: Field>(base: &F, e: i64) -> Option<F> {
    let b = if e < 0 { base.inv()? } else { base.clone() };
    let mut out = F::one();
    for _ in 0..e.unsigned_abs() {
        out = out * b.clone();
    }
    Some(out)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Rat::from_int(-1))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first reads more naturally
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one() && (i, j) != (0, 0);
            if !unit {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            let mut wrote = !unit;
            for (var, e) in [("x", i), ("y", j)] {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_zero_coefficients_survive() {
        let mut p = LaurentPoly::monomial(1, -1, Rat::new(1, 2));
        p.add_term(1, -1, Rat::new(-1, 2));
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn product_adds_exponents() {
        let a = LaurentPoly::from_terms([((1, 0), Rat::one()), ((0, -1), Rat::one())]);
        let b = LaurentPoly::from_terms([((-1, 0), Rat::one()), ((0, 1), Rat::from_int(-1))]);
        // (x + 1/y)(1/x - y) = 1 - xy + 1/(xy) - 1
        let p = &a * &b;
        assert_eq!(p, LaurentPoly::from_terms([((1, 1), Rat::from_int(-1)), ((-1, -1), Rat::one())]));
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly::from_terms([
            ((2, 1), Rat::new(1, 8)),
            ((1, 1), Rat::from_int(-1)),
            ((0, 0), Rat::from_int(3)),
        ]);
        assert_eq!(p.to_string(), "(1/8)*x^2*y - x*y + 3");
    }
}
