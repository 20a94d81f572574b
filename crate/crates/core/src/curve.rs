//! Points of the kernel curve in P¹×P¹, the involutions `ι₁`, `ι₂`, the QRT
//! map `σ = ι₂∘ι₁`, the poles of `y`, and orbit searches.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::modp::{rat_mod, with_sieve_prime, Fp2, WithPrime, SIEVE_PRIMES};
use crate::arith::{quad_field_solve, Field, ProjPoint, QuadExt, Rat};
use crate::error::{Error, Result};
use crate::kernel::{quartic_discriminant, BihomKernel, Kernel};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurvePoint<F: Field> {
    pub px: ProjPoint<F>,
    pub py: ProjPoint<F>,
}

impl<F: Field> CurvePoint<F> {
    pub fn new(px: ProjPoint<F>, py: ProjPoint<F>) -> Self {
        CurvePoint { px, py }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CurvePoint<G> {
        CurvePoint { px: self.px.map(&f), py: self.py.map(&f) }
    }

    /// Coordinates as text: `(["x0","x1"], ["y0","y1"])`.
    pub fn to_strings(&self) -> ([String; 2], [String; 2]) {
        (
            [self.px.c0().to_string(), self.px.c1().to_string()],
            [self.py.c0().to_string(), self.py.c1().to_string()],
        )
    }
}

impl CurvePoint<Rat> {
    pub fn ints(x: (i64, i64), y: (i64, i64)) -> Self {
        CurvePoint { px: ProjPoint::ints(x.0, x.1), py: ProjPoint::ints(y.0, y.1) }
    }
}

impl<F: Field> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.px, self.py)
    }
}

impl<F: Field> fmt::Debug for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoleCase {
    /// `y` has two simple poles `P₁ ≠ P₂`.
    Simple,
    /// `y` has a double pole at `P₁`.
    Double,
}

impl fmt::Display for PoleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoleCase::Simple => "simple",
            PoleCase::Double => "double",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleData {
    pub case: PoleCase,
    pub p1: CurvePoint<Rat>,
    pub p2: Option<CurvePoint<Rat>>,
    /// `σ⁻¹(Pᵢ)` and `σ⁻²(Pᵢ)`, labelled.
    pub preimages: Vec<(String, CurvePoint<Rat>)>,
}

/// One node of an orbit walk. `map` names the map that produced the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitNode<F: Field> {
    pub step: usize,
    pub map: &'static str,
    pub point: CurvePoint<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitNodeJson {
    pub step: usize,
    pub map: String,
    pub x: [String; 2],
    pub y: [String; 2],
}

impl<F: Field> OrbitNode<F> {
    pub fn to_json(&self) -> OrbitNodeJson {
        let (x, y) = self.point.to_strings();
        OrbitNodeJson { step: self.step, map: self.map.to_string(), x, y }
    }
}

/// The zero set of `K̄` together with the maps acting on it.
#[derive(Clone, Debug)]
pub struct Curve {
    kernel: Kernel,
    bihom: BihomKernel,
}

impl Curve {
    pub fn new(kernel: &Kernel) -> Self {
        Curve { kernel: kernel.clone(), bihom: kernel.bihom() }
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn bihom(&self) -> &BihomKernel {
        &self.bihom
    }

    pub fn contains<F: Field>(&self, p: &CurvePoint<F>) -> bool {
        self.bihom.eval(&p.px, &p.py).is_zero()
    }

    pub fn point<F: Field>(&self, px: ProjPoint<F>, py: ProjPoint<F>) -> Result<CurvePoint<F>> {
        let p = CurvePoint::new(px, py);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Second intersection with the vertical line through `p` (keeps `x`).
    pub fn iota1<F: Field>(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let q = self.bihom.y_fiber(&p.px);
        if q.is_zero() {
            return Err(Error::DegenerateFiber);
        }
        Ok(CurvePoint::new(p.px.clone(), q.partner(&p.py)?))
    }

    /// Second intersection with the horizontal line through `p` (keeps `y`).
    pub fn iota2<F: Field>(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        let q = self.bihom.x_fiber(&p.py);
        if q.is_zero() {
            return Err(Error::DegenerateFiber);
        }
        Ok(CurvePoint::new(q.partner(&p.px)?, p.py.clone()))
    }

    pub fn sigma<F: Field>(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.iota2(&self.iota1(p)?)
    }

    pub fn sigma_inv<F: Field>(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.iota1(&self.iota2(p)?)
    }

    /// `σⁿ(p)` for any signed `n`.
    pub fn sigma_pow<F: Field>(&self, p: &CurvePoint<F>, n: i64) -> Result<CurvePoint<F>> {
        let mut q = p.clone();
        for _ in 0..n.unsigned_abs() {
            q = if n > 0 { self.sigma(&q)? } else { self.sigma_inv(&q)? };
        }
        Ok(q)
    }

    /// The two points over a rational `x`, in ℚ(√D) with `D` the fiber discriminant.
    pub fn fiber_points(&self, x: &ProjPoint<Rat>) -> Result<[CurvePoint<QuadExt>; 2]> {
        let q = self.bihom.y_fiber(x);
        if q.is_zero() {
            return Err(Error::DegenerateFiber);
        }
        let px = x.map(|c| QuadExt::rational(c.clone()));
        let lift = |r: Rat| ProjPoint::finite(QuadExt::rational(r));
        let pts = if !q.a.is_zero() {
            let (y1, y2) = quad_field_solve(&q.a, &q.b, &q.c)?;
            [ProjPoint::finite(y1), ProjPoint::finite(y2)]
        } else if !q.b.is_zero() {
            // y₁(B·y₀ + C·y₁): one root at ∞, the other at −C/B
            [ProjPoint::infinity(), lift(-(&q.c / &q.b))]
        } else {
            [ProjPoint::infinity(), ProjPoint::infinity()]
        };
        Ok(pts.map(|py| CurvePoint::new(px.clone(), py)))
    }

    /// Poles of the coordinate `y`: the points of the curve with `y = ∞`.
    pub fn poles(&self) -> Result<PoleData> {
        let w = self.kernel.weights();
        let d01 = w.get((0, 1)).clone();
        let d11 = w.get((1, 1)).clone();
        let p1 = CurvePoint::ints((0, 1), (1, 0));
        let (case, p2) = if d01.is_zero() {
            (PoleCase::Double, None)
        } else {
            let px = ProjPoint::new(-d01, d11).expect("d01 != 0");
            (PoleCase::Simple, Some(CurvePoint::new(px, ProjPoint::infinity())))
        };
        let mut preimages = Vec::new();
        for (label, p) in std::iter::once(("P1", &p1)).chain(p2.as_ref().map(|p| ("P2", p))) {
            debug_assert!(self.contains(p));
            let m1 = self.sigma_inv(p)?;
            let m2 = self.sigma_inv(&m1)?;
            preimages.push((format!("sigma^-1({label})"), m1));
            preimages.push((format!("sigma^-2({label})"), m2));
        }
        Ok(PoleData { case, p1, p2, preimages })
    }

    /// The signed `k` of least `|k| ≤ k_max` with `σ^{2k}(b) = a`, preferring `+k`.
    pub fn orbit_relation<F: Field>(
        &self,
        a: &CurvePoint<F>,
        b: &CurvePoint<F>,
        k_max: u32,
    ) -> Result<Option<i64>> {
        if a == b {
            return Ok(Some(0));
        }
        let (mut fwd, mut bwd) = (b.clone(), b.clone());
        for k in 1..=k_max as i64 {
            fwd = self.sigma_pow(&fwd, 2)?;
            if &fwd == a {
                return Ok(Some(k));
            }
            bwd = self.sigma_pow(&bwd, -2)?;
            if &bwd == a {
                return Ok(Some(-k));
            }
        }
        Ok(None)
    }

    /// The signed odd `n` of least `|n| ≤ 2·k_max + 1` with `σⁿ(b) = a`.
    pub fn odd_orbit_relation<F: Field>(
        &self,
        a: &CurvePoint<F>,
        b: &CurvePoint<F>,
        k_max: u32,
    ) -> Result<Option<i64>> {
        let mut fwd = self.sigma(b)?;
        let mut bwd = self.sigma_inv(b)?;
        for m in 0..=k_max as i64 {
            if m > 0 {
                fwd = self.sigma_pow(&fwd, 2)?;
                bwd = self.sigma_pow(&bwd, -2)?;
            }
            if &fwd == a {
                return Ok(Some(2 * m + 1));
            }
            if &bwd == a {
                return Ok(Some(-(2 * m + 1)));
            }
        }
        Ok(None)
    }

    /// `count` points over the rational abscissae 2, 3/2, 5/3, 8/5, …,
    /// skipping fibers with a vanishing leading coefficient or discriminant.
    pub fn generic_points(&self, count: usize) -> Vec<CurvePoint<QuadExt>> {
        let mut out = Vec::with_capacity(count);
        let (mut p, mut q) = (2i64, 1i64);
        while out.len() < count {
            let x = ProjPoint::ints(p, q);
            let fiber = self.bihom.y_fiber(&x);
            if !fiber.a.is_zero() && !fiber.discriminant().is_zero() {
                if let Ok([first, _]) = self.fiber_points(&x) {
                    out.push(first);
                }
            }
            (p, q) = (p + q, p);
            assert!(p < i64::MAX / 4, "ran out of abscissae");
        }
        out
    }

    /// Least `n ≤ n_max` with `σⁿ(q) = q`.
    ///
    /// The orbit is first run modulo a prime of good reduction inert in the
    /// field of `q`. Exact closure at `n` forces closure mod p at `n`, so the
    /// exact orbit only has to be followed up to the last modular candidate.
    pub fn closure_order(&self, q: &CurvePoint<QuadExt>, n_max: u32) -> Result<Option<u32>> {
        let limit = match self.closure_candidates(q, n_max) {
            Some(c) => c.last().copied().unwrap_or(0),
            None => n_max,
        };
        let mut p = q.clone();
        for n in 1..=limit {
            p = self.sigma(&p)?;
            if &p == q {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// All `n ≤ n_max` with `σⁿ(q) ≡ q` at the first usable sieve prime.
    pub fn closure_candidates(&self, q: &CurvePoint<QuadExt>, n_max: u32) -> Option<Vec<u32>> {
        (0..SIEVE_PRIMES.len()).find_map(|i| with_sieve_prime(i, Sieve { curve: self, q, n_max }))
    }

    /// Whether the curve keeps its shape and stays smooth mod `p`.
    fn good_reduction(&self, p: u64) -> bool {
        let coeffs_ok = (0..3).all(|i| (0..3).all(|j| rat_mod(self.bihom.coeff(i, j), p).is_some()));
        let smooth = |q| rat_mod(&quartic_discriminant(q), p).is_some_and(|v| v != 0);
        coeffs_ok && smooth(&self.kernel.dx) && smooth(&self.kernel.dy)
    }

    /// Closure order of σ at the first generic point.
    pub fn group_order_probe(&self, n_max: u32) -> Result<Option<u32>> {
        let q = self.generic_points(1).remove(0);
        self.closure_order(&q, n_max)
    }

    /// The `ι₁`/`ι₂` walk from `start` over `steps` applications of `σ`:
    /// the start node, then an `iota1` and an `iota2` node per step.
    pub fn orbit<F: Field>(&self, start: &CurvePoint<F>, steps: usize) -> Result<Vec<OrbitNode<F>>> {
        let mut nodes = vec![OrbitNode { step: 0, map: "sigma", point: start.clone() }];
        let mut p = start.clone();
        for s in 1..=steps {
            p = self.iota1(&p)?;
            nodes.push(OrbitNode { step: s, map: "iota1", point: p.clone() });
            p = self.iota2(&p)?;
            nodes.push(OrbitNode { step: s, map: "iota2", point: p.clone() });
        }
        Ok(nodes)
    }

    /// `g(x, y)` at a finite point; `None` at a point with an infinite coordinate.
    pub fn g_at<F: Field>(&self, p: &CurvePoint<F>) -> Option<F> {
        let (x, y) = (p.px.affine()?, p.py.affine()?);
        self.kernel.g_poly().eval_in(x, y)
    }
}

struct Sieve<'a> {
    curve: &'a Curve,
    q: &'a CurvePoint<QuadExt>,
    n_max: u32,
}

impl WithPrime for Sieve<'_> {
    type Output = Option<Vec<u32>>;

    fn run<const P: u64>(self) -> Option<Vec<u32>> {
        if !self.curve.good_reduction(P) {
            return None;
        }
        let red = |c: &ProjPoint<QuadExt>| -> Option<ProjPoint<Fp2<P>>> {
            ProjPoint::new(Fp2::reduce(c.c0())?, Fp2::reduce(c.c1())?).ok()
        };
        let start = CurvePoint::new(red(&self.q.px)?, red(&self.q.py)?);
        let mut p = start.clone();
        let mut hits = Vec::new();
        for n in 1..=self.n_max {
            p = self.curve.sigma(&p).ok()?;
            if p == start {
                hits.push(n);
            }
        }
        Some(hits)
    }
}

/// The two points of the curve of `k` over `x`.
pub fn fiber_points(k: &Kernel, x: &ProjPoint<Rat>) -> Result<[CurvePoint<QuadExt>; 2]> {
    Curve::new(k).fiber_points(x)
}

pub fn poles_of_y(k: &Kernel) -> Result<PoleData> {
    Curve::new(k).poles()
}

pub fn orbit_relation<F: Field>(
    k: &Kernel,
    a: &CurvePoint<F>,
    b: &CurvePoint<F>,
    k_max: u32,
) -> Result<Option<i64>> {
    Curve::new(k).orbit_relation(a, b, k_max)
}

pub fn group_order_probe(k: &Kernel, n_max: u32) -> Result<Option<u32>> {
    Curve::new(k).group_order_probe(n_max)
}
