//! The kernel `K(x,y) = xy(t·∑ d_{i,j} xⁱ yʲ − 1)` at a fixed rational `t`.
//!
//! `K` is biquadratic: `K = a(x)y² + b(x)y + c(x) = â(y)x² + b̂(y)x + ĉ(y)`.
//! Its closure in P¹×P¹ is cut out by the bihomogeneous form
//! `K̄(x₀,x₁,y₀,y₁) = t·∑ d_{i−1,j−1} x₀ⁱ x₁^{2−i} y₀ʲ y₁^{2−j} − x₀x₁y₀y₁`.

use std::fmt;

use crate::arith::{Field, LaurentPoly, ProjPoint, Rat};
use crate::error::{Error, Result};
use crate::model::{check_a2, phi_transform, StepWeights};

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval<F: Field>(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + F::from_rat(c.clone()))
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// As a Laurent polynomial in `x` (`var = 0`) or `y` (`var = 1`).
    pub fn to_laurent(&self, var: usize) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| {
            let e = k as i64;
            (if var == 0 { (e, 0) } else { (0, e) }, c.clone())
        }))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent(0))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficient grid of `K̄`: `grid[i][j]` multiplies `x₀ⁱ x₁^{2−i} y₀ʲ y₁^{2−j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BihomKernel {
    grid: [[Rat; 3]; 3],
}

/// A binary quadratic `A·u₀² + B·u₀u₁ + C·u₁²` restricted to one ruling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberQuadratic<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: Field> FiberQuadratic<F> {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn discriminant(&self) -> F {
        self.b.clone() * self.b.clone() - F::from_rat(Rat::from_int(4)) * self.a.clone() * self.c.clone()
    }

    pub fn eval(&self, u: &ProjPoint<F>) -> F {
        let (u0, u1) = (u.c0().clone(), u.c1().clone());
        self.a.clone() * u0.clone() * u0.clone() + self.b.clone() * u0.clone() * u1.clone() + self.c.clone() * u1.clone() * u1
    }

    /// The other root, given one root `[r₀ : r₁]`.
    ///
    /// Writing the form as `(r₁u₀ − r₀u₁)(s₁u₀ − s₀u₁)`:
    /// `[C·r₁ : A·r₀] = r₀r₁·[s₀ : s₁]`,
    /// `[−B·r₁ − A·r₀ : A·r₁] = r₁²·[s₀ : s₁]`,
    /// `[C·r₀ : −B·r₀ − C·r₁] = r₀²·[s₀ : s₁]`.
    /// The first is tried first; the last two cover every root between them.
    pub fn partner(&self, root: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        let (r0, r1) = (root.c0().clone(), root.c1().clone());
        let (a, b, c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let product = (c.clone() * r1.clone(), a.clone() * r0.clone());
        if let Ok(p) = ProjPoint::new(product.0, product.1) {
            return Ok(p);
        }
        let sum = (-(b.clone() * r1.clone()) - a.clone() * r0.clone(), a * r1.clone());
        if let Ok(p) = ProjPoint::new(sum.0, sum.1) {
            return Ok(p);
        }
        let mirrored = (c.clone() * r0.clone(), -(b * r0) - c * r1);
        ProjPoint::new(mirrored.0, mirrored.1).map_err(|_| Error::DegenerateFiber)
    }
}

impl BihomKernel {
    pub fn from_weights(w: &StepWeights, t: &Rat) -> Self {
        let mut grid: [[Rat; 3]; 3] = Default::default();
        for (i, row) in grid.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = t * w.get((i as i8 - 1, j as i8 - 1));
            }
        }
        grid[1][1] -= &Rat::one();
        BihomKernel { grid }
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rat {
        &self.grid[i][j]
    }

    fn form<F: Field>(c: [&Rat; 3], u0: &F, u1: &F) -> F {
        // c[k] multiplies u0^k u1^(2-k)
        F::from_rat(c[0].clone()) * u1.clone() * u1.clone()
            + F::from_rat(c[1].clone()) * u0.clone() * u1.clone()
            + F::from_rat(c[2].clone()) * u0.clone() * u0.clone()
    }

    /// `K̄` at the given representatives.
    pub fn eval<F: Field>(&self, x: &ProjPoint<F>, y: &ProjPoint<F>) -> F {
        let q = self.y_fiber(x);
        q.eval(y)
    }

    /// `K̄(x₀, x₁, ·, ·)` as a quadratic form in `(y₀, y₁)`.
    pub fn y_fiber<F: Field>(&self, x: &ProjPoint<F>) -> FiberQuadratic<F> {
        let (x0, x1) = (x.c0(), x.c1());
        let col = |j: usize| Self::form([&self.grid[0][j], &self.grid[1][j], &self.grid[2][j]], x0, x1);
        FiberQuadratic { a: col(2), b: col(1), c: col(0) }
    }

    /// `K̄(·, ·, y₀, y₁)` as a quadratic form in `(x₀, x₁)`.
    pub fn x_fiber<F: Field>(&self, y: &ProjPoint<F>) -> FiberQuadratic<F> {
        let (y0, y1) = (y.c0(), y.c1());
        let row = |i: usize| Self::form([&self.grid[i][0], &self.grid[i][1], &self.grid[i][2]], y0, y1);
        FiberQuadratic { a: row(2), b: row(1), c: row(0) }
    }
}

/// Free-standing evaluation of `K̄` at a point of P¹×P¹.
pub fn eval_bihom<F: Field>(k: &BihomKernel, x: &ProjPoint<F>, y: &ProjPoint<F>) -> F {
    k.eval(x, y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    source: StepWeights,
    weights: StepWeights,
    t: Rat,
    transformed: bool,
    pub a: UniPoly,
    pub b: UniPoly,
    pub c: UniPoly,
    pub a_hat: UniPoly,
    pub b_hat: UniPoly,
    pub c_hat: UniPoly,
    /// `b² − 4ac`
    pub dx: UniPoly,
    /// `b̂² − 4âĉ`
    pub dy: UniPoly,
}

/// The kernel of `w` at `t`; with `transformed`, the kernel of the remapped
/// weights, i.e. `x·K(xy, 1/x)`.
pub fn build_kernel(w: &StepWeights, t: &Rat, transformed: bool) -> Result<Kernel> {
    if !t.is_positive() || !(t < &Rat::one()) {
        return Err(Error::TOutOfRange(t.to_string()));
    }
    let weights = if transformed { phi_transform(w)? } else { w.clone() };
    let d = |i: i8, j: i8| t * weights.get((i, j));
    // coefficient of y^(j+1), as a polynomial in x
    let in_y = |j: i8| {
        let mut c = vec![d(-1, j), d(0, j), d(1, j)];
        if j == 0 {
            c[1] -= &Rat::one();
        }
        UniPoly::new(c)
    };
    let in_x = |i: i8| {
        let mut c = vec![d(i, -1), d(i, 0), d(i, 1)];
        if i == 0 {
            c[1] -= &Rat::one();
        }
        UniPoly::new(c)
    };
    let four = Rat::from_int(4);
    let (a, b, c) = (in_y(1), in_y(0), in_y(-1));
    let (a_hat, b_hat, c_hat) = (in_x(1), in_x(0), in_x(-1));
    let dx = b.mul(&b).sub(&a.mul(&c).scale(&four));
    let dy = b_hat.mul(&b_hat).sub(&a_hat.mul(&c_hat).scale(&four));
    Ok(Kernel {
        source: w.clone(),
        weights,
        t: t.clone(),
        transformed,
        a,
        b,
        c,
        a_hat,
        b_hat,
        c_hat,
        dx,
        dy,
    })
}

impl Kernel {
    /// The model the kernel was built from.
    pub fn source(&self) -> &StepWeights {
        &self.source
    }

    /// Weights of this kernel (remapped when transformed).
    pub fn weights(&self) -> &StepWeights {
        &self.weights
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    pub fn is_transformed(&self) -> bool {
        self.transformed
    }

    pub fn bihom(&self) -> BihomKernel {
        BihomKernel::from_weights(&self.weights, &self.t)
    }

    pub fn laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::monomial(1, 1, Rat::from_int(-1));
        for (i, j) in crate::model::all_positions() {
            p.add_term(i as i64 + 1, j as i64 + 1, &self.t * self.weights.get((i, j)));
        }
        p
    }

    /// `f(x) = t·d_{−1,0} + t·d_{−1,−1}·x`, in the weights of the source model.
    pub fn f_poly(&self) -> UniPoly {
        f_poly(&self.source, &self.t)
    }

    /// The polynomial `g(x, y)` multiplying `D_φ(y)` in the octant equation.
    pub fn g_poly(&self) -> LaurentPoly {
        g_poly(&self.source, &self.t)
    }
}

pub fn f_poly(w: &StepWeights, t: &Rat) -> UniPoly {
    UniPoly::new(vec![t * w.get((-1, 0)), t * w.get((-1, -1))])
}

/// `g(x,y) = −y(−1/2 + t(½(d₁₁y + d₀₀ + d₋₁₋₁/y) + d₀₋₁x + d₁₀xy))`, expanded.
pub fn g_poly(w: &StepWeights, t: &Rat) -> LaurentPoly {
    let half = Rat::new(1, 2);
    let th = t * &half;
    LaurentPoly::from_terms([
        ((0, 1), half.clone()),
        ((0, 2), -(&th * w.get((1, 1)))),
        ((0, 1), -(&th * w.get((0, 0)))),
        ((0, 0), -(&th * w.get((-1, -1)))),
        ((1, 1), -(t * w.get((0, -1)))),
        ((1, 2), -(t * w.get((1, 0)))),
    ])
}

/// Discriminant of `∑ cₖxᵏ` as a binary quartic form, so a degree drop counts
/// as roots at ∞. Zero iff the form has a repeated root in P¹.
pub fn quartic_discriminant(q: &UniPoly) -> Rat {
    let (a, b, c, d, e) = (q.coeff(4), q.coeff(3), q.coeff(2), q.coeff(1), q.coeff(0));
    let k = Rat::from_int;
    let i = k(12) * &a * &e - k(3) * &b * &d + &c * &c;
    let j = k(72) * &a * &c * &e + k(9) * &b * &c * &d
        - k(27) * &a * &d * &d
        - k(27) * &e * &b * &b
        - k(2) * &c * &c * &c;
    (k(4) * &i * &i * &i - &j * &j) / k(27)
}

/// The kernel curve is elliptic iff the step set lies in no closed half-plane.
pub fn is_elliptic(w: &StepWeights) -> bool {
    check_a2(w).unwrap_or(false)
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "K(x,y) = {}", self.laurent())?;
        writeln!(f, "a(x) = {}", self.a)?;
        writeln!(f, "b(x) = {}", self.b)?;
        writeln!(f, "c(x) = {}", self.c)?;
        writeln!(f, "a^(y) = {}", self.a_hat.to_laurent(1))?;
        writeln!(f, "b^(y) = {}", self.b_hat.to_laurent(1))?;
        writeln!(f, "c^(y) = {}", self.c_hat.to_laurent(1))?;
        writeln!(f, "d(x) = {}", self.dx)?;
        write!(f, "d^(y) = {}", self.dy.to_laurent(1))
    }
}
