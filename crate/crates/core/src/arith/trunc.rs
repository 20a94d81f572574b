//! Truncated power series in one formal variable with Laurent coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LaurentPoly, Rat};

/// `∑_{n ≤ order} coeffs[n] · tⁿ`; everything above `order` is dropped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

/// One nonzero coefficient `coeff · x^i y^j tⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub n: usize,
    pub i: i64,
    pub j: i64,
    pub coeff: Rat,
}

/// File form of a series: `{order, terms: [{n, i, j, coeff}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub terms: Vec<SeriesTerm>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries { order, coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn from_coeffs(order: usize, mut coeffs: Vec<LaurentPoly>) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        TruncSeries { order, coeffs }
    }

    /// The polynomial `p · tⁿ` (zero when `n > order`).
    pub fn term(order: usize, n: usize, p: LaurentPoly) -> Self {
        let mut s = TruncSeries::zero(order);
        if n <= order {
            s.coeffs[n] = p;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut LaurentPoly {
        &mut self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.order, rhs.order, "truncation orders differ");
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.order, rhs.order, "truncation orders differ");
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        series_mul(self, rhs)
    }

    pub fn scale(&self, c: &Rat) -> TruncSeries {
        TruncSeries { order: self.order, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> TruncSeries {
        TruncSeries { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Lowest-order nonzero term, scanning `n` upward then monomials in order.
    pub fn first_nonzero(&self) -> Option<SeriesTerm> {
        self.iter_terms().next()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = SeriesTerm> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(n, p)| {
            p.terms().map(move |(&(i, j), c)| SeriesTerm { n, i, j, coeff: c.clone() })
        })
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson { order: self.order, terms: self.iter_terms().collect() }
    }

    pub fn from_json(js: &SeriesJson) -> TruncSeries {
        let mut s = TruncSeries::zero(js.order);
        for t in &js.terms {
            if t.n <= js.order {
                s.coeffs[t.n].add_term(t.i, t.j, t.coeff.clone());
            }
        }
        s
    }
}

/// Cauchy product of two series of the same order; Laurent exponents add.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    assert_eq!(a.order, b.order, "truncation orders differ");
    let order = a.order;
    let mut out = TruncSeries::zero(order);
    for (n1, p1) in a.coeffs.iter().enumerate() {
        if p1.is_zero() {
            continue;
        }
        for (n2, p2) in b.coeffs.iter().enumerate().take(order + 1 - n1) {
            if p2.is_zero() {
                continue;
            }
            let prod = p1 * p2;
            let slot = &mut out.coeffs[n1 + n2];
            *slot = &*slot + &prod;
        }
    }
    out
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (n, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if any {
                write!(f, " + ")?;
            }
            any = true;
            write!(f, "({p})*t^{n}")?;
        }
        if !any {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x_pow(k: i64, c: Rat) -> LaurentPoly {
        LaurentPoly::monomial(k, 0, c)
    }

    #[test]
    fn difference_of_squares() {
        let n = 3;
        let one = TruncSeries::term(n, 0, LaurentPoly::constant(Rat::one()));
        let tx = TruncSeries::term(n, 1, x_pow(1, Rat::one()));
        let p = one.add(&tx).mul(&one.sub(&tx));
        let expected = one.sub(&TruncSeries::term(n, 2, x_pow(2, Rat::one())));
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_annihilates() {
        let n = 4;
        let s = TruncSeries::from_coeffs(n, (0..=n).map(|k| x_pow(k as i64, Rat::one())).collect());
        assert!(s.mul(&TruncSeries::zero(n)).is_zero());
    }

    #[test]
    fn geometric_square_coefficient() {
        // (∑ tⁿxⁿ)² has coefficient (n+1)xⁿ at tⁿ; at t⁴ that is 5x⁴
        let n = 5;
        let s = TruncSeries::from_coeffs(n, (0..=n).map(|k| x_pow(k as i64, Rat::one())).collect());
        let sq = series_mul(&s, &s);
        assert_eq!(sq.coeff(4), &x_pow(4, Rat::from_int(5)));
        for k in 0..=n {
            assert_eq!(sq.coeff(k), &x_pow(k as i64, Rat::from_int(k as i64 + 1)));
        }
    }

    #[test]
    fn json_round_trip() {
        let s = TruncSeries::from_coeffs(
            2,
            vec![
                LaurentPoly::constant(Rat::one()),
                LaurentPoly::monomial(-1, 2, Rat::new(-3, 7)),
            ],
        );
        let js = serde_json::to_string(&s.to_json()).unwrap();
        assert!(js.contains("\"-3/7\""));
        let back: SeriesJson = serde_json::from_str(&js).unwrap();
        assert_eq!(TruncSeries::from_json(&back), s);
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec(
            (0..=order, -2i64..=2, -2i64..=2, -5i64..=5, 1i64..=4),
            0..8,
        )
        .prop_map(move |terms| {
            let mut s = TruncSeries::zero(order);
            for (n, i, j, p, q) in terms {
                s.coeff_mut(n).add_term(i, j, Rat::new(p, q));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(4), b in arb_series(4), c in arb_series(4)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }
    }
}
