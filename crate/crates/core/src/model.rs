//! Weighted small-step models, the standing assumptions on them, and the
//! change of coordinates `(x, y) ↦ (xy, 1/x)` that folds the lower cone onto
//! the quadrant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};

/// A unit step `(i, j)` with `i, j ∈ {−1, 0, 1}`.
pub type Step = (i8, i8);

pub const N: Step = (0, 1);
pub const S: Step = (0, -1);
pub const E: Step = (1, 0);
pub const W: Step = (-1, 0);
pub const NE: Step = (1, 1);
pub const NW: Step = (-1, 1);
pub const SE: Step = (1, -1);
pub const SW: Step = (-1, -1);

/// All nine grid positions, row-major from `(-1,-1)`.
pub fn all_positions() -> impl Iterator<Item = Step> {
    (-1i8..=1).flat_map(|i| (-1i8..=1).map(move |j| (i, j)))
}

/// Weights `d_{i,j}` on the 3×3 grid: each in `[0, 1]`, summing to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StepWeights {
    d: [[Rat; 3]; 3],
}

fn idx(s: Step) -> (usize, usize) {
    assert!((-1..=1).contains(&s.0) && (-1..=1).contains(&s.1), "not a small step: {s:?}");
    ((s.0 + 1) as usize, (s.1 + 1) as usize)
}

impl StepWeights {
    pub fn new(entries: impl IntoIterator<Item = (Step, Rat)>) -> Result<Self> {
        let mut d: [[Rat; 3]; 3] = Default::default();
        for (s, w) in entries {
            if !(-1..=1).contains(&s.0) || !(-1..=1).contains(&s.1) {
                return Err(Error::InvalidWeights(format!("({},{}) is not a small step", s.0, s.1)));
            }
            let (a, b) = idx(s);
            d[a][b] += w;
        }
        let w = StepWeights { d };
        w.validate()?;
        Ok(w)
    }

    /// The unweighted model: each listed step gets `1/|steps|`.
    pub fn uniform(steps: &[Step]) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::NoSteps);
        }
        let mut seen = steps.to_vec();
        seen.sort();
        seen.dedup();
        if seen.len() != steps.len() || seen.contains(&(0, 0)) {
            return Err(Error::InvalidWeights("steps must be distinct and nonzero".into()));
        }
        let w = Rat::new(1, steps.len() as i64);
        StepWeights::new(steps.iter().map(|&s| (s, w.clone())))
    }

    fn validate(&self) -> Result<()> {
        for s in all_positions() {
            if !self.get(s).in_unit_interval() {
                return Err(Error::InvalidWeights(format!(
                    "d_{{{},{}}} = {} is outside [0, 1]",
                    s.0,
                    s.1,
                    self.get(s)
                )));
            }
        }
        let total = self.total();
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        Ok(())
    }

    pub fn get(&self, s: Step) -> &Rat {
        let (a, b) = idx(s);
        &self.d[a][b]
    }

    pub fn total(&self) -> Rat {
        all_positions().map(|s| self.get(s)).sum()
    }

    /// The step set: nonzero-weight positions other than `(0,0)`.
    pub fn support(&self) -> Vec<Step> {
        all_positions().filter(|&s| s != (0, 0) && !self.get(s).is_zero()).collect()
    }

    /// `(i, j) ↦ (j, i)` applied to the model.
    pub fn reflect_diagonal(&self) -> StepWeights {
        StepWeights::new(all_positions().map(|(i, j)| ((j, i), self.get((i, j)).clone())))
            .expect("reflection preserves validity")
    }

    /// Every nonzero weight is `1/|S|` and `d_{0,0} = 0`.
    pub fn is_unweighted(&self) -> bool {
        let s = self.support();
        if s.is_empty() || !self.get((0, 0)).is_zero() {
            return false;
        }
        let w = Rat::new(1, s.len() as i64);
        s.iter().all(|&p| *self.get(p) == w)
    }

    pub fn to_json(&self, name: Option<&str>) -> ModelFile {
        let d = all_positions()
            .filter(|&s| !self.get(s).is_zero())
            .map(|(i, j)| (format!("{i},{j}"), self.get((i, j)).clone()))
            .collect();
        ModelFile { d, name: name.map(str::to_string) }
    }
}

impl fmt::Display for StepWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for s in all_positions() {
            let w = self.get(s);
            if w.is_zero() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}: {}", step_name(s), w)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for StepWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn step_name(s: Step) -> &'static str {
    match s {
        N => "N",
        S => "S",
        E => "E",
        W => "W",
        NE => "NE",
        NW => "NW",
        SE => "SE",
        SW => "SW",
        _ => "0",
    }
}

/// JSON model file: `{"d": {"i,j": "p/q", ...}, "name": ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub d: BTreeMap<String, Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ModelFile {
    pub fn weights(&self) -> Result<StepWeights> {
        let mut entries = Vec::new();
        for (k, v) in &self.d {
            let (i, j) = k
                .split_once(',')
                .ok_or_else(|| Error::ModelFile(format!("bad key {k:?}, expected \"i,j\"")))?;
            let parse = |s: &str| -> Result<i8> {
                s.trim()
                    .parse::<i8>()
                    .ok()
                    .filter(|v| (-1..=1).contains(v))
                    .ok_or_else(|| Error::ModelFile(format!("bad key {k:?}, coordinates must be -1, 0 or 1")))
            };
            entries.push(((parse(i)?, parse(j)?), v.clone()));
        }
        StepWeights::new(entries)
    }
}

impl FromStr for ModelFile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::ModelFile(e.to_string()))
    }
}

/// Diagonal symmetry `d_{i,j} = d_{j,i}` with both anti-diagonal weights zero.
pub fn check_a1(w: &StepWeights) -> bool {
    let symmetric = all_positions().all(|(i, j)| w.get((i, j)) == w.get((j, i)));
    symmetric && w.get(SE).is_zero() && w.get(NW).is_zero()
}

/// Index of a compass direction counter-clockwise from E, in units of π/4.
fn angle_index(s: Step) -> u8 {
    match s {
        E => 0,
        NE => 1,
        N => 2,
        NW => 3,
        W => 4,
        SW => 5,
        S => 6,
        SE => 7,
        _ => unreachable!("(0,0) has no direction"),
    }
}

/// `true` iff the step set lies in no closed half-plane through the origin.
///
/// Checked on the circular order of the occupied compass directions: the set
/// sits in a closed half-plane iff two cyclically consecutive directions are
/// at least π apart.
pub fn check_a2(w: &StepWeights) -> Result<bool> {
    let mut angles: Vec<u8> = w.support().into_iter().map(angle_index).collect();
    if angles.is_empty() {
        return Err(Error::NoSteps);
    }
    angles.sort_unstable();
    let n = angles.len();
    let max_gap = (0..n)
        .map(|k| {
            let a = angles[k];
            let b = angles[(k + 1) % n];
            if n == 1 {
                8
            } else {
                (b + 8 - a) % 8
            }
        })
        .max()
        .unwrap_or(8);
    Ok(max_gap < 4)
}

/// `true` when no walk can ever leave the three-quarter plane: the step set
/// lies in a closed half-plane `αi + βj ≥ 0` with `α, β ≥ 0`.
pub fn is_unconstrained(w: &StepWeights) -> bool {
    let steps = w.support();
    // extreme rays of the admissible normal cone inside the closed quadrant
    [(1i32, 0i32), (0, 1), (1, 1)].iter().any(|&(a, b)| {
        steps.iter().all(|&(i, j)| a * i as i32 + b * j as i32 >= 0)
    })
}

/// Assumption summary attached to reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub a1: bool,
    pub a2: bool,
    pub diagnostic: String,
}

pub fn assumptions(w: &StepWeights) -> AssumptionReport {
    let a1 = check_a1(w);
    let a2 = check_a2(w).unwrap_or(false);
    let mut notes = Vec::new();
    if !a1 {
        if !w.get(SE).is_zero() || !w.get(NW).is_zero() {
            notes.push("anti-diagonal steps present".to_string());
        }
        if all_positions().any(|(i, j)| w.get((i, j)) != w.get((j, i))) {
            notes.push("weights not symmetric under (i,j) -> (j,i)".to_string());
        }
    }
    if !a2 {
        if w.support().is_empty() {
            notes.push("no steps".to_string());
        } else {
            notes.push("step set lies in a closed half-plane through the origin".to_string());
        }
    }
    let diagnostic = if notes.is_empty() { "ok".to_string() } else { notes.join("; ") };
    AssumptionReport { a1, a2, diagnostic }
}

/// Weights of the kernel `x·K(xy, 1/x)`.
///
/// Requires diagonal symmetry without anti-diagonal steps; an anti-diagonal
/// weight would otherwise turn into a large step.
pub fn phi_transform(w: &StepWeights) -> Result<StepWeights> {
    if !w.get(SE).is_zero() || !w.get(NW).is_zero() {
        return Err(Error::AntiDiagonalStep);
    }
    if !check_a1(w) {
        return Err(Error::NotDiagonallySymmetric);
    }
    Ok(phi_remap(w))
}

/// The raw weight remap; `x^i y^j ↦ x^{i-j} y^i` read backwards.
pub(crate) fn phi_remap(w: &StepWeights) -> StepWeights {
    let g = |s: Step| w.get(s).clone();
    StepWeights::new([
        ((0, 1), g(NE)),
        ((1, 1), g(E)),
        ((-1, 0), g(N)),
        ((0, 0), g((0, 0))),
        ((1, 0), g(S)),
        ((-1, -1), g(W)),
        ((0, -1), g(SW)),
    ])
    .expect("remap preserves validity")
}

/// A named built-in model.
#[derive(Clone, Debug)]
pub struct BuiltinInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo { name: "simple", description: "N, S, E, W each 1/4 (finite group control)" },
    BuiltinInfo { name: "simple-ne", description: "N, S, E, W, NE each 1/5" },
    BuiltinInfo { name: "simple-sw", description: "N, S, E, W, SW each 1/5" },
    BuiltinInfo { name: "ne-kite", description: "N, NE, E, SW each 1/4" },
    BuiltinInfo { name: "sw-corner", description: "W, NE, S, SW each 1/4" },
    BuiltinInfo {
        name: "example-4.7",
        description: "axis steps mu, NE lambda, lambda + 4 mu = 1; default lambda = 1/5, or example-4.7(p/q)",
    },
    BuiltinInfo { name: "example-4.10", description: "axis steps 1/6, SW 1/3" },
    BuiltinInfo { name: "example-4.14", description: "E, N, NE each 1/5, SW 2/5" },
];

/// The four unweighted, diagonally symmetric, infinite-group step sets.
pub const FOUR_MODELS: [&str; 4] = ["ne-kite", "sw-corner", "simple-sw", "simple-ne"];

/// Axis steps weighted `μ`, NE weighted `λ`, with `λ + 4μ = 1`.
pub fn axis_plus_northeast(lambda: &Rat) -> Result<StepWeights> {
    if !lambda.is_positive() || !(lambda < &Rat::one()) {
        return Err(Error::InvalidWeights(format!("lambda = {lambda} must lie in (0, 1)")));
    }
    let mu = (Rat::one() - lambda) / Rat::from_int(4);
    StepWeights::new([(N, mu.clone()), (S, mu.clone()), (E, mu.clone()), (W, mu), (NE, lambda.clone())])
}

pub fn builtin_model(name: &str) -> Result<StepWeights> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("example-4.7") {
        let lambda = match rest.trim() {
            "" => Rat::new(1, 5),
            r => {
                let inner = r
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| r.strip_prefix(':'))
                    .ok_or_else(|| Error::UnknownModel(name.to_string()))?;
                inner.parse()?
            }
        };
        return axis_plus_northeast(&lambda);
    }
    let r = Rat::new;
    match name {
        "simple" => StepWeights::uniform(&[N, S, E, W]),
        "simple-ne" => StepWeights::uniform(&[N, S, E, W, NE]),
        "simple-sw" => StepWeights::uniform(&[N, S, E, W, SW]),
        "ne-kite" => StepWeights::uniform(&[N, NE, E, SW]),
        "sw-corner" => StepWeights::uniform(&[W, NE, S, SW]),
        "example-4.10" => {
            StepWeights::new([(N, r(1, 6)), (S, r(1, 6)), (E, r(1, 6)), (W, r(1, 6)), (SW, r(1, 3))])
        }
        "example-4.14" => StepWeights::new([(E, r(1, 5)), (N, r(1, 5)), (NE, r(1, 5)), (SW, r(2, 5))]),
        _ => Err(Error::UnknownModel(name.to_string())),
    }
}
