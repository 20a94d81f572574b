//! Weighted enumeration of walks confined to the three-quarter plane
//! `{i ≥ 0 or j ≥ 0}` and the sectional generating series built from it.
//!
//! Walk weights do not involve `t`: the series below are formal in `t`, with
//! `c_{i,j}(n)` as the coefficient of `tⁿ`.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::arith::{LaurentPoly, Monomial, Rat, TruncSeries};
use crate::error::{Error, Result};
use crate::model::StepWeights;

pub fn in_three_quarter_plane(i: i64, j: i64) -> bool {
    i >= 0 || j >= 0
}

/// `c_{i,j}(n)` for `n ≤ order`, one sparse level per step count.
#[derive(Clone, PartialEq, Eq)]
pub struct WalkTable {
    levels: Vec<BTreeMap<Monomial, Rat>>,
}

/// Exact weighted counts of walks from the origin, killed on leaving the plane.
pub fn enumerate(w: &StepWeights, order: usize) -> WalkTable {
    let steps: Vec<(i64, i64, Rat)> = crate::model::all_positions()
        .filter(|&s| !w.get(s).is_zero())
        .map(|s| (s.0 as i64, s.1 as i64, w.get(s).clone()))
        .collect();
    let mut levels = Vec::with_capacity(order + 1);
    levels.push(BTreeMap::from([((0, 0), Rat::one())]));
    for n in 0..order {
        let mut next: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (&(i, j), c) in &levels[n] {
            for (p, q, d) in &steps {
                let (a, b) = (i + p, j + q);
                if in_three_quarter_plane(a, b) {
                    *next.entry((a, b)).or_default() += c * d;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        levels.push(next);
    }
    WalkTable { levels }
}

impl WalkTable {
    pub fn order(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn get(&self, n: usize, i: i64, j: i64) -> Rat {
        self.levels[n].get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn level(&self, n: usize) -> &BTreeMap<Monomial, Rat> {
        &self.levels[n]
    }

    /// Total weight of walks of length `n`.
    pub fn mass(&self, n: usize) -> Rat {
        self.levels[n].values().sum()
    }

    /// A copy with `delta` added to `c_{i,j}(n)`; used to check that
    /// residuals detect a single wrong count.
    pub fn perturbed(&self, n: usize, i: i64, j: i64, delta: &Rat) -> WalkTable {
        let mut t = self.clone();
        let slot = t.levels[n].entry((i, j)).or_default();
        *slot += delta;
        t.levels[n].retain(|_, c| !c.is_zero());
        t
    }

    /// Rows `n,i,j,"p/q"` in `(n, i, j)` order, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (n, level) in self.levels.iter().enumerate() {
            for (&(i, j), c) in level {
                writeln!(out, "{n},{i},{j},\"{c}\"").expect("write to string");
            }
        }
        out
    }

    pub fn section(&self, which: Section) -> TruncSeries {
        let order = self.order();
        let coeffs = self
            .levels
            .iter()
            .map(|level| {
                LaurentPoly::from_terms(
                    level.iter().filter_map(|(&(i, j), c)| which.place(i, j).map(|m| (m, c.clone()))),
                )
            })
            .collect();
        TruncSeries::from_coeffs(order, coeffs)
    }
}

impl fmt::Debug for WalkTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.levels.iter()).finish()
    }
}

/// The sectional series of the functional equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Section {
    /// All walks.
    C,
    /// Endpoints with `i ≥ 0`, `j ≤ i − 1`.
    L,
    /// Endpoints on the diagonal.
    D,
    /// Endpoints with `j ≥ 0`, `i ≤ j − 1`.
    U,
    /// `∑ c_{0,−j} y^{−j}`, `j > 0`.
    C0Minus,
    /// `∑ c_{−i,0} x^{−i}`, `i > 0`.
    CMinus0,
    /// Returns to the origin.
    C00,
    /// `∑ c_{i,i} yⁱ`.
    DPhi,
    /// `∑ c_{j,j−i} xⁱ yʲ`, `i ≥ 1`, `j ≥ 0`.
    LPhi,
    /// `∑ c_{0,−j} xʲ`, `j > 0`.
    C0MinusX,
}

impl Section {
    pub const ALL: [Section; 10] = [
        Section::C,
        Section::L,
        Section::D,
        Section::U,
        Section::C0Minus,
        Section::CMinus0,
        Section::C00,
        Section::DPhi,
        Section::LPhi,
        Section::C0MinusX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::C => "C",
            Section::L => "L",
            Section::D => "D",
            Section::U => "U",
            Section::C0Minus => "C0minus",
            Section::CMinus0 => "Cminus0",
            Section::C00 => "C00",
            Section::DPhi => "Dphi",
            Section::LPhi => "Lphi",
            Section::C0MinusX => "C0minus_x",
        }
    }

    /// The monomial that `c_{i,j}` multiplies in this section, if it contributes.
    fn place(self, i: i64, j: i64) -> Option<Monomial> {
        match self {
            Section::C => Some((i, j)),
            Section::L => (i >= 0 && j < i).then_some((i, j)),
            Section::D => (i == j).then_some((i, j)),
            Section::U => (j >= 0 && i < j).then_some((i, j)),
            Section::C0Minus => (i == 0 && j < 0).then_some((0, j)),
            Section::CMinus0 => (j == 0 && i < 0).then_some((i, 0)),
            Section::C00 => (i == 0 && j == 0).then_some((0, 0)),
            Section::DPhi => (i == j).then_some((0, i)),
            // (i, j) = (b, b − a) for a ≥ 1, b ≥ 0, placed at x^a y^b
            Section::LPhi => (i >= 0 && j < i).then_some((i - j, i)),
            Section::C0MinusX => (i == 0 && j < 0).then_some((-j, 0)),
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Section {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSection(s.to_string()))
    }
}

pub fn section(table: &WalkTable, which: &str) -> Result<TruncSeries> {
    Ok(table.section(which.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin_model, BUILTINS, NE};

    /// All step strings of length `n`, multiplied out, dropping any that leave the plane.
    fn brute_force(w: &StepWeights, n: usize) -> BTreeMap<Monomial, Rat> {
        let steps: Vec<_> = crate::model::all_positions().filter(|&s| !w.get(s).is_zero()).collect();
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        let total = steps.len().pow(n as u32);
        for mut code in 0..total {
            let (mut i, mut j, mut weight, mut alive) = (0i64, 0i64, Rat::one(), true);
            for _ in 0..n {
                let s = steps[code % steps.len()];
                code /= steps.len();
                i += s.0 as i64;
                j += s.1 as i64;
                weight = weight * w.get(s);
                if !in_three_quarter_plane(i, j) {
                    alive = false;
                    break;
                }
            }
            if alive {
                *out.entry((i, j)).or_default() += &weight;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    #[test]
    fn first_levels() {
        let t = enumerate(&builtin_model("simple-ne").unwrap(), 1);
        assert_eq!(t.level(0), &BTreeMap::from([((0, 0), Rat::one())]));
        assert_eq!(t.level(1).len(), 5);
        assert!(t.level(1).values().all(|c| *c == Rat::new(1, 5)));
        assert_eq!(t.get(1, 1, 1), Rat::new(1, 5));
    }

    #[test]
    fn matches_brute_force() {
        for b in BUILTINS {
            let w = builtin_model(b.name).unwrap();
            let t = enumerate(&w, 5);
            for n in 0..=5 {
                assert_eq!(t.level(n), &brute_force(&w, n), "{} n={n}", b.name);
            }
        }
    }

    #[test]
    fn mass_and_symmetry() {
        let w = builtin_model("ne-kite").unwrap();
        let t = enumerate(&w, 10);
        for n in 0..10 {
            assert!(t.mass(n + 1) <= t.mass(n));
            for (&(i, j), c) in t.level(n) {
                assert_eq!(&t.get(n, j, i), c);
                assert!(i.abs() <= n as i64 && j.abs() <= n as i64);
            }
        }
        // steps that never leave the plane keep the mass at 1
        let t = enumerate(&StepWeights::uniform(&[NE, (1, 0)]).unwrap(), 6);
        assert!((0..=6).all(|n| t.mass(n) == Rat::one()));
    }

    #[test]
    fn sections_decompose() {
        let t = enumerate(&builtin_model("example-4.14").unwrap(), 7);
        let c = t.section(Section::C);
        let sum = t.section(Section::L).add(&t.section(Section::D)).add(&t.section(Section::U));
        assert_eq!(c, sum);
        let swapped = t.section(Section::L).map_coeffs(LaurentPoly::swap_xy);
        assert_eq!(swapped, t.section(Section::U));
        assert_eq!(t.section(Section::C00).coeff(0), &LaurentPoly::constant(Rat::one()));
    }

    #[test]
    fn phi_sections_are_literal_substitutions() {
        let t = enumerate(&builtin_model("simple-sw").unwrap(), 6);
        // L(xy, 1/x) and D(xy, 1/x)
        let phi = |s: &TruncSeries| s.map_coeffs(|p| p.map_monomials(|k, l| (k - l, k)));
        assert_eq!(phi(&t.section(Section::L)), t.section(Section::LPhi));
        assert_eq!(phi(&t.section(Section::D)), t.section(Section::DPhi));
        let c0 = t.section(Section::C0Minus).map_coeffs(|p| p.map_monomials(|i, j| (-j, i)));
        assert_eq!(c0, t.section(Section::C0MinusX));
        for (n, p) in t.section(Section::LPhi).coeffs().iter().enumerate() {
            assert!(p.terms().all(|(&(i, j), _)| i >= 1 && j >= 0), "n={n}");
        }
    }

    #[test]
    fn csv_and_names() {
        let t = enumerate(&builtin_model("simple-ne").unwrap(), 0);
        assert_eq!(t.to_csv(), "0,0,0,\"1\"\n");
        for s in Section::ALL {
            assert_eq!(s.name().parse::<Section>().unwrap(), s);
        }
        assert!(section(&t, "Q").is_err());
    }
}
