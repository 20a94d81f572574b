//! Zero-residual checks of the functional equations at truncation order `N`.
//!
//! Each equation is polynomial in `t`. Substituting `t ↦ t₀·s` with `t₀` the
//! sampled rational turns every term into a series in `s` whose coefficient
//! of `sⁿ` is the `tⁿ` coefficient times `t₀ⁿ`, so a residual vanishes iff the
//! equation holds identically in `t` up to order `N`.

use crate::arith::{LaurentPoly, Rat, TruncSeries};
use crate::error::Result;
use crate::kernel::{build_kernel, f_poly, g_poly};
use crate::model::{phi_transform, StepWeights};
use crate::series::{enumerate, Section, WalkTable};

pub const DEFAULT_ORDER: usize = 8;

/// A section with `c(n)` rescaled to `c(n)·t₀ⁿ`.
fn lifted(table: &WalkTable, which: Section, t: &Rat) -> TruncSeries {
    let s = table.section(which);
    let mut pow = Rat::one();
    let mut out = TruncSeries::zero(s.order());
    for n in 0..=s.order() {
        *out.coeff_mut(n) = s.coeff(n).scale(&pow);
        pow = &pow * t;
    }
    out
}

/// `p₀ + (p_t − p₀)·s` for a polynomial that is affine in `t`.
fn affine(order: usize, at_zero: LaurentPoly, at_t: &LaurentPoly) -> TruncSeries {
    let slope = at_t - &at_zero;
    TruncSeries::term(order, 0, at_zero).add(&TruncSeries::term(order, 1, slope))
}

fn linear(order: usize, at_t: LaurentPoly) -> TruncSeries {
    TruncSeries::term(order, 1, at_t)
}

fn constant(order: usize, p: LaurentPoly) -> TruncSeries {
    TruncSeries::term(order, 0, p)
}

fn xy(c: Rat) -> LaurentPoly {
    LaurentPoly::monomial(1, 1, c)
}

/// `K·C − c(x)C₋₀(x⁻¹) − ĉ(y)C₀₋(y⁻¹) − t·d₋₁,₋₁·C₀₀ + xy`.
///
/// Walks are killed exactly when a step leaves the plane; the boundary terms
/// account for this only when no anti-diagonal step is present.
pub fn plane_residual(w: &StepWeights, t: &Rat, table: &WalkTable) -> Result<TruncSeries> {
    let n = table.order();
    let k = build_kernel(w, t, false)?;
    let kk = affine(n, xy(Rat::from_int(-1)), &k.laurent());
    let lhs = kk.mul(&lifted(table, Section::C, t));
    let cx = linear(n, k.c.to_laurent(0)).mul(&lifted(table, Section::CMinus0, t));
    let cy = linear(n, k.c_hat.to_laurent(1)).mul(&lifted(table, Section::C0Minus, t));
    let origin = linear(n, LaurentPoly::constant(t * w.get((-1, -1))))
        .mul(&lifted(table, Section::C00, t));
    Ok(lhs
        .sub(&cx)
        .sub(&cy)
        .sub(&origin)
        .add(&constant(n, xy(Rat::one()))))
}

/// The coefficient of `D` in the symmetric equation, `xy(−1/2 + t(…))`.
fn diagonal_factor(w: &StepWeights, t: &Rat) -> LaurentPoly {
    let half = Rat::new(1, 2);
    let th = t * &half;
    LaurentPoly::from_terms([
        ((1, 1), -half.clone()),
        ((2, 2), &th * w.get((1, 1))),
        ((1, 1), &th * w.get((0, 0))),
        ((0, 0), &th * w.get((-1, -1))),
        ((1, 0), t * w.get((0, -1))),
        ((2, 1), t * w.get((1, 0))),
    ])
}

/// `K·L + xy/2 − ĉ(y)C₀₋(y⁻¹) − (t/2)d₋₁,₋₁C₀₀ + xy(−1/2 + t(…))·D`.
pub fn sym_residual(w: &StepWeights, t: &Rat, table: &WalkTable) -> Result<TruncSeries> {
    phi_transform(w)?;
    let n = table.order();
    let k = build_kernel(w, t, false)?;
    let kk = affine(n, xy(Rat::from_int(-1)), &k.laurent());
    let lhs = kk.mul(&lifted(table, Section::L, t));
    let cy = linear(n, k.c_hat.to_laurent(1)).mul(&lifted(table, Section::C0Minus, t));
    let origin = linear(n, LaurentPoly::constant(t * w.get((-1, -1)) * Rat::new(1, 2)))
        .mul(&lifted(table, Section::C00, t));
    let h = affine(n, diagonal_factor(w, &Rat::zero()), &diagonal_factor(w, t));
    let diag = h.mul(&lifted(table, Section::D, t));
    Ok(lhs
        .add(&constant(n, xy(Rat::new(1, 2))))
        .sub(&cy)
        .sub(&origin)
        .add(&diag))
}

/// `K_φ·L_φ − f(x)C₀₋(x) − x·g(x,y)·D_φ(y) − (t/2)d₋₁,₋₁·x·C₀₀ + xy/2`.
pub fn octant_residual(w: &StepWeights, t: &Rat, table: &WalkTable) -> Result<TruncSeries> {
    let n = table.order();
    let kp = build_kernel(w, t, true)?;
    let kk = affine(n, xy(Rat::from_int(-1)), &kp.laurent());
    let lhs = kk.mul(&lifted(table, Section::LPhi, t));
    let boundary = linear(n, f_poly(w, t).to_laurent(0)).mul(&lifted(table, Section::C0MinusX, t));
    let g = affine(n, g_poly(w, &Rat::zero()), &g_poly(w, t)).map_coeffs(|p| p.shift(1, 0));
    let diag = g.mul(&lifted(table, Section::DPhi, t));
    let origin = linear(n, LaurentPoly::monomial(1, 0, t * w.get((-1, -1)) * Rat::new(1, 2)))
        .mul(&lifted(table, Section::C00, t));
    Ok(lhs
        .sub(&boundary)
        .sub(&diag)
        .sub(&origin)
        .add(&constant(n, xy(Rat::new(1, 2)))))
}

pub fn check_plane_equation(w: &StepWeights, t: &Rat, order: usize) -> Result<TruncSeries> {
    plane_residual(w, t, &enumerate(w, order))
}

pub fn check_sym_equation(w: &StepWeights, t: &Rat, order: usize) -> Result<TruncSeries> {
    sym_residual(w, t, &enumerate(w, order))
}

pub fn check_octant_equation(w: &StepWeights, t: &Rat, order: usize) -> Result<TruncSeries> {
    octant_residual(w, t, &enumerate(w, order))
}

/// `x·r(xy, 1/x)`: carries the symmetric equation to the octant one.
pub fn phi_image(r: &TruncSeries) -> TruncSeries {
    r.map_coeffs(|p| p.map_monomials(|k, l| (k - l + 1, k)))
}

/// Residuals of all three equations for one model and `t`.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub order: usize,
    pub t: Rat,
    pub residuals: Vec<(&'static str, TruncSeries)>,
}

impl VerifyReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// Runs the plane, symmetric and octant checks on one shared enumeration.
pub fn verify_all(w: &StepWeights, t: &Rat, order: usize) -> Result<VerifyReport> {
    let table = enumerate(w, order);
    Ok(VerifyReport {
        order,
        t: t.clone(),
        residuals: vec![
            ("plane", plane_residual(w, t, &table)?),
            ("symmetric", sym_residual(w, t, &table)?),
            ("octant", octant_residual(w, t, &table)?),
        ],
    })
}
