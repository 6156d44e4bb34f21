//! Three-node scenarios behind the characterizing axioms, evaluated by
//! building the networks and comparing `P_α` before and after.
//!
//! * A1 merge: two equal small groups `y, z` at mass `q` join at the midpoint
//!   of their distances to a larger group `x` at mass `p`.
//! * A2 shift: a middle group `y` moves toward the smaller extreme group.
//! * A3 dissolve: a middle group `x` at equal distance `d` from two equal
//!   groups `y, z` (with `d_yz = c̄·d`) sends `Δ` to each of them.
//! * A3c: as A3 but only required when `c̄` reaches a fixed threshold `c`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alpha_bounds::f_eval;
use crate::error::{Error, Result};
use crate::graph::{geodesic_distances, Network, ValidateOptions};
use crate::measures::{polarization, MeasureParams};

/// Central finite-difference step used for local derivative checks.
pub const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxiomKind {
    A1,
    A2,
    A3,
    A3c,
}

impl std::fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AxiomKind::A1 => "A1",
            AxiomKind::A2 => "A2",
            AxiomKind::A3 => "A3",
            AxiomKind::A3c => "A3c",
        })
    }
}

impl std::str::FromStr for AxiomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A1" | "a1" => Ok(AxiomKind::A1),
            "A2" | "a2" => Ok(AxiomKind::A2),
            "A3" | "a3" => Ok(AxiomKind::A3),
            "A3c" | "a3c" | "A3C" => Ok(AxiomKind::A3c),
            other => Err(Error::InvalidScenario(format!("unknown axiom `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MergeScenario {
    pub p: f64,
    pub q: f64,
    pub d_xy: f64,
    pub d_xz: f64,
    pub d_yz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftScenario {
    /// Mass of the larger extreme group `x`.
    pub p: f64,
    /// Mass of the moving middle group `y`.
    pub q: f64,
    /// Mass of the smaller extreme group `z`.
    pub r: f64,
    pub d_xy: f64,
    pub d_xz: f64,
    pub d_yz: f64,
    pub shift: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DissolveScenario {
    /// Middle mass at `x`.
    pub p: f64,
    /// Mass at each of `y` and `z`.
    pub q: f64,
    pub d: f64,
    pub c_bar: f64,
    pub delta: f64,
    /// Threshold `c` for the A3c variant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AxiomScenario {
    A1(MergeScenario),
    A2(ShiftScenario),
    A3(DissolveScenario),
}

impl AxiomScenario {
    pub fn kind(&self) -> AxiomKind {
        match self {
            AxiomScenario::A1(_) => AxiomKind::A1,
            AxiomScenario::A2(_) => AxiomKind::A2,
            AxiomScenario::A3(s) if s.threshold.is_some() => AxiomKind::A3c,
            AxiomScenario::A3(_) => AxiomKind::A3,
        }
    }

    /// Same scenario with every mass multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        match *self {
            AxiomScenario::A1(s) => AxiomScenario::A1(MergeScenario {
                p: s.p * lambda,
                q: s.q * lambda,
                ..s
            }),
            AxiomScenario::A2(s) => AxiomScenario::A2(ShiftScenario {
                p: s.p * lambda,
                q: s.q * lambda,
                r: s.r * lambda,
                ..s
            }),
            AxiomScenario::A3(s) => AxiomScenario::A3(DissolveScenario {
                p: s.p * lambda,
                q: s.q * lambda,
                delta: s.delta * lambda,
                ..s
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub before: f64,
    pub after: f64,
    pub satisfied: bool,
    pub margin: f64,
    /// A1 only: truth of `(2^α−1)(d_xy+d_xz)p > 2q·d_yz`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<bool>,
    /// A3 only: `f(q/p, α, c̄)`; negative means outward moves raise `P_α`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
}

impl AxiomVerdict {
    fn new(before: f64, after: f64) -> Self {
        let margin = after - before;
        AxiomVerdict {
            before,
            after,
            satisfied: margin > 0.0,
            margin,
            closed_form: None,
            f: None,
        }
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidScenario(format!("{name} must be positive, got {x}")))
    }
}

/// `P_α` of the complete graph on `x, y, z` with the given direct
/// distances, refusing distances that are not geodesics.
fn triangle_value(
    masses: [f64; 3],
    d_xy: f64,
    d_xz: f64,
    d_yz: f64,
    params: &MeasureParams,
) -> Result<f64> {
    let net = Network::new(
        vec![
            ("x".into(), masses[0]),
            ("y".into(), masses[1]),
            ("z".into(), masses[2]),
        ],
        vec![(0, 1, d_xy), (0, 2, d_xz), (1, 2, d_yz)],
        ValidateOptions::default(),
    )
    .map_err(|e| Error::InvalidScenario(e.to_string()))?;
    let dm = geodesic_distances(&net);
    if dm.get(0, 1) < d_xy || dm.get(0, 2) < d_xz || dm.get(1, 2) < d_yz {
        return Err(Error::InvalidScenario(format!(
            "distances ({d_xy}, {d_xz}, {d_yz}) violate the triangle inequality"
        )));
    }
    Ok(polarization(&net, params, &dm)?.value)
}

fn pair_value(masses: [f64; 2], d: f64, params: &MeasureParams) -> Result<f64> {
    let net = Network::new(
        vec![("x".into(), masses[0]), ("w".into(), masses[1])],
        vec![(0, 1, d)],
        ValidateOptions::default(),
    )
    .map_err(|e| Error::InvalidScenario(e.to_string()))?;
    Ok(polarization(&net, params, &geodesic_distances(&net))?.value)
}

/// Largest `d_yz` for which the A1 closed form still holds.
pub fn axiom1_threshold(s: &MergeScenario, alpha: f64) -> f64 {
    (2f64.powf(alpha) - 1.0) * (s.d_xy + s.d_xz) * s.p / (2.0 * s.q)
}

pub fn axiom1_closed_form(s: &MergeScenario, alpha: f64) -> bool {
    (2f64.powf(alpha) - 1.0) * (s.d_xy + s.d_xz) * s.p > 2.0 * s.q * s.d_yz
}

pub fn check_axiom1(s: &MergeScenario, params: &MeasureParams) -> Result<AxiomVerdict> {
    params.validate()?;
    positive("q", s.q)?;
    for (name, d) in [("d_xy", s.d_xy), ("d_xz", s.d_xz), ("d_yz", s.d_yz)] {
        positive(name, d)?;
    }
    if !(s.p > s.q) || !s.p.is_finite() {
        return Err(Error::InvalidScenario(format!(
            "need p > q, got p = {}, q = {}",
            s.p, s.q
        )));
    }
    if s.d_xy > s.d_xz {
        return Err(Error::InvalidScenario("need d_xy <= d_xz".into()));
    }
    let before = triangle_value([s.p, s.q, s.q], s.d_xy, s.d_xz, s.d_yz, params)?;
    let after = pair_value([s.p, 2.0 * s.q], (s.d_xy + s.d_xz) / 2.0, params)?;
    Ok(AxiomVerdict {
        closed_form: Some(axiom1_closed_form(s, params.alpha)),
        ..AxiomVerdict::new(before, after)
    })
}

/// `after − before` predicted for A2 without building any network.
pub fn axiom2_margin_formula(s: &ShiftScenario, params: &MeasureParams) -> f64 {
    let e = 1.0 + params.alpha;
    params.k
        * (s.q.powf(e) * (s.p - s.r) * s.shift + s.q * (s.p.powf(e) - s.r.powf(e)) * s.shift)
}

pub fn check_axiom2(s: &ShiftScenario, params: &MeasureParams) -> Result<AxiomVerdict> {
    params.validate()?;
    for (name, x) in [("q", s.q), ("r", s.r), ("shift", s.shift)] {
        positive(name, x)?;
    }
    if !(s.p > s.r) || !s.p.is_finite() {
        return Err(Error::InvalidScenario(format!(
            "need p > r, got p = {}, r = {}",
            s.p, s.r
        )));
    }
    positive("d_yz", s.d_yz)?;
    if !(s.d_xz > s.d_xy && s.d_xy > s.d_yz) || !s.d_xz.is_finite() {
        return Err(Error::InvalidScenario(
            "need d_xz > d_xy > d_yz".into(),
        ));
    }
    if !(s.d_xy + s.shift < s.d_xz && s.d_yz - s.shift > 0.0) {
        return Err(Error::InvalidScenario(format!(
            "shift {} leaves the admissible window",
            s.shift
        )));
    }
    let m = [s.p, s.q, s.r];
    let before = triangle_value(m, s.d_xy, s.d_xz, s.d_yz, params)?;
    let after = triangle_value(m, s.d_xy + s.shift, s.d_xz, s.d_yz - s.shift, params)?;
    Ok(AxiomVerdict::new(before, after))
}

fn validate_dissolve(s: &DissolveScenario) -> Result<()> {
    for (name, x) in [("p", s.p), ("q", s.q), ("d", s.d)] {
        positive(name, x)?;
    }
    if !(s.c_bar > 1.0 && s.c_bar <= 2.0) {
        return Err(Error::InvalidScenario(format!(
            "c_bar must lie in (1, 2], got {}",
            s.c_bar
        )));
    }
    if let Some(c) = s.threshold {
        if !(c > 1.0 && c <= 2.0) {
            return Err(Error::InvalidScenario(format!(
                "threshold must lie in (1, 2], got {c}"
            )));
        }
        if s.c_bar < c {
            return Err(Error::ThresholdNotMet {
                c_bar: s.c_bar,
                threshold: c,
            });
        }
    }
    Ok(())
}

fn dissolve_value(s: &DissolveScenario, delta: f64, params: &MeasureParams) -> Result<f64> {
    triangle_value(
        [s.p - 2.0 * delta, s.q + delta, s.q + delta],
        s.d,
        s.d,
        s.c_bar * s.d,
        params,
    )
}

pub fn check_axiom3(s: &DissolveScenario, params: &MeasureParams) -> Result<AxiomVerdict> {
    params.validate()?;
    validate_dissolve(s)?;
    if !(s.delta > 0.0 && s.delta <= s.p / 2.0) {
        return Err(Error::InvalidScenario(format!(
            "delta must lie in (0, p/2], got {}",
            s.delta
        )));
    }
    let before = dissolve_value(s, 0.0, params)?;
    let after = dissolve_value(s, s.delta, params)?;
    Ok(AxiomVerdict {
        f: Some(f_eval(s.q / s.p, params.alpha, s.c_bar)?),
        ..AxiomVerdict::new(before, after)
    })
}

/// Central difference of `P_α` in `Δ` at `Δ = 0` with step [`FD_STEP`].
pub fn axiom3_derivative(s: &DissolveScenario, params: &MeasureParams) -> Result<f64> {
    params.validate()?;
    validate_dissolve(s)?;
    if s.q <= FD_STEP || s.p <= 2.0 * FD_STEP {
        return Err(Error::InvalidScenario(
            "masses too small for the finite-difference step".into(),
        ));
    }
    let up = dissolve_value(s, FD_STEP, params)?;
    let down = dissolve_value(s, -FD_STEP, params)?;
    Ok((up - down) / (2.0 * FD_STEP))
}

pub fn check(s: &AxiomScenario, params: &MeasureParams) -> Result<AxiomVerdict> {
    match s {
        AxiomScenario::A1(s) => check_axiom1(s, params),
        AxiomScenario::A2(s) => check_axiom2(s, params),
        AxiomScenario::A3(s) => check_axiom3(s, params),
    }
}

/// Sampling box for [`run_suite`]. Masses and distances are drawn
/// log-uniformly, `c̄` log-uniformly, and `Δ` (or the A2 shift) as a uniform
/// fraction of its admissible window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRanges {
    pub mass: (f64, f64),
    pub distance: (f64, f64),
    pub c_bar: (f64, f64),
    pub delta_fraction: (f64, f64),
}

impl Default for SampleRanges {
    fn default() -> Self {
        SampleRanges {
            mass: (0.1, 10.0),
            distance: (0.1, 10.0),
            c_bar: (1.0, 2.0),
            delta_fraction: (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sampler {
    pub count: usize,
    pub seed: u64,
    pub ranges: SampleRanges,
    /// A1 only: keep only scenarios where the closed-form inequality holds.
    pub closed_form_region: bool,
}

impl Sampler {
    pub fn new(count: usize, seed: u64) -> Self {
        Sampler {
            count,
            seed,
            ranges: SampleRanges::default(),
            closed_form_region: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteWitness {
    pub index: usize,
    pub scenario: AxiomScenario,
    pub verdict: AxiomVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: AxiomKind,
    pub alpha: f64,
    pub c: Option<f64>,
    pub samples: usize,
    pub failures: usize,
    pub passes: usize,
    pub seed: u64,
    pub witness: Option<SuiteWitness>,
    /// A1 only: samples where the verdict and the closed form disagree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_mismatches: Option<usize>,
}

const MAX_REJECTIONS: usize = 100_000;

struct Draw<'a> {
    rng: ChaCha8Rng,
    ranges: &'a SampleRanges,
}

impl Draw<'_> {
    fn log_uniform(&mut self, (lo, hi): (f64, f64)) -> f64 {
        if lo == hi {
            return lo;
        }
        let u: f64 = self.rng.random();
        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
    }

    fn mass(&mut self) -> f64 {
        self.log_uniform(self.ranges.mass)
    }

    fn distance(&mut self) -> f64 {
        self.log_uniform(self.ranges.distance)
    }

    /// Uniform fraction in the delta range, never 0.
    fn fraction(&mut self) -> f64 {
        let (lo, hi) = self.ranges.delta_fraction;
        let u: f64 = self.rng.random();
        let x = lo + u * (hi - lo);
        if x > 0.0 {
            x
        } else {
            hi
        }
    }

    fn c_bar(&mut self, floor: f64) -> f64 {
        let (lo, hi) = self.ranges.c_bar;
        self.log_uniform((lo.max(floor), hi))
    }

    fn merge(&mut self, alpha: f64, closed_form_region: bool) -> Result<MergeScenario> {
        for _ in 0..MAX_REJECTIONS {
            let (a, b) = (self.mass(), self.mass());
            let (d1, d2) = (self.distance(), self.distance());
            let d_yz = self.distance();
            let s = MergeScenario {
                p: a.max(b),
                q: a.min(b),
                d_xy: d1.min(d2),
                d_xz: d1.max(d2),
                d_yz,
            };
            let metric = s.d_xz <= s.d_xy + s.d_yz && s.d_yz <= s.d_xy + s.d_xz;
            if s.p > s.q && metric && (!closed_form_region || axiom1_closed_form(&s, alpha)) {
                return Ok(s);
            }
        }
        Err(Error::EmptyRange("A1 scenarios"))
    }

    fn shift(&mut self) -> Result<ShiftScenario> {
        for _ in 0..MAX_REJECTIONS {
            let (a, b, q) = (self.mass(), self.mass(), self.mass());
            let mut d = [self.distance(), self.distance(), self.distance()];
            d.sort_by(f64::total_cmp);
            let [d_yz, d_xy, d_xz] = d;
            if !(a != b && d_xz > d_xy && d_xy > d_yz && d_xz <= d_xy + d_yz) {
                continue;
            }
            let window = (d_xz - d_xy).min(d_yz);
            let shift = window * self.fraction();
            let s = ShiftScenario {
                p: a.max(b),
                q,
                r: a.min(b),
                d_xy,
                d_xz,
                d_yz,
                shift,
            };
            if s.d_xy + shift < s.d_xz && s.d_yz - shift > 0.0 {
                return Ok(s);
            }
        }
        Err(Error::EmptyRange("A2 scenarios"))
    }

    fn dissolve(&mut self, threshold: Option<f64>) -> Result<DissolveScenario> {
        for _ in 0..MAX_REJECTIONS {
            let p = self.mass();
            let q = self.mass();
            let d = self.distance();
            let c_bar = self.c_bar(threshold.unwrap_or(1.0));
            let delta = p / 2.0 * self.fraction();
            if c_bar > 1.0 && delta > 0.0 && delta <= p / 2.0 {
                return Ok(DissolveScenario {
                    p,
                    q,
                    d,
                    c_bar,
                    delta,
                    threshold,
                });
            }
        }
        Err(Error::EmptyRange("A3 scenarios"))
    }
}

fn check_range(name: &'static str, (lo, hi): (f64, f64), min: f64, max: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo >= min && hi <= max && lo <= hi {
        Ok(())
    } else {
        Err(Error::EmptyRange(name))
    }
}

/// The scenarios a suite with this sampler would check, in order.
pub fn sample_scenarios(
    axiom: AxiomKind,
    alpha: f64,
    c: Option<f64>,
    sampler: &Sampler,
) -> Result<Vec<AxiomScenario>> {
    let r = &sampler.ranges;
    check_range("mass", r.mass, f64::MIN_POSITIVE, f64::MAX)?;
    check_range("distance", r.distance, f64::MIN_POSITIVE, f64::MAX)?;
    check_range("c_bar", r.c_bar, 1.0, 2.0)?;
    check_range("delta_fraction", r.delta_fraction, 0.0, 1.0)?;
    if r.c_bar.1 <= 1.0 {
        return Err(Error::EmptyRange("c_bar"));
    }
    if r.delta_fraction.1 <= 0.0 {
        return Err(Error::EmptyRange("delta_fraction"));
    }
    let threshold = suite_threshold(axiom, c, r)?;
    let mut draw = Draw {
        rng: ChaCha8Rng::seed_from_u64(sampler.seed),
        ranges: r,
    };
    (0..sampler.count)
        .map(|_| {
            Ok(match axiom {
                AxiomKind::A1 => AxiomScenario::A1(draw.merge(alpha, sampler.closed_form_region)?),
                AxiomKind::A2 => AxiomScenario::A2(draw.shift()?),
                AxiomKind::A3 | AxiomKind::A3c => AxiomScenario::A3(draw.dissolve(threshold)?),
            })
        })
        .collect()
}

fn suite_threshold(axiom: AxiomKind, c: Option<f64>, r: &SampleRanges) -> Result<Option<f64>> {
    if axiom != AxiomKind::A3c {
        return Ok(None);
    }
    let c = c.ok_or_else(|| Error::InvalidScenario("A3c needs a threshold c".into()))?;
    if !(c > 1.0 && c <= 2.0) {
        return Err(Error::InvalidScenario(format!(
            "threshold must lie in (1, 2], got {c}"
        )));
    }
    if c > r.c_bar.1 {
        return Err(Error::EmptyRange("c_bar"));
    }
    Ok(Some(c))
}

/// Check `sampler.count` seeded random scenarios of one axiom. The witness
/// is the lowest-index failure.
pub fn run_suite(
    axiom: AxiomKind,
    alpha: f64,
    c: Option<f64>,
    sampler: &Sampler,
) -> Result<AxiomReport> {
    let params = MeasureParams::with_alpha(alpha)?;
    let scenarios = sample_scenarios(axiom, alpha, c, sampler)?;
    let mut failures = 0;
    let mut witness = None;
    let mut mismatches = 0;
    for (index, scenario) in scenarios.into_iter().enumerate() {
        let verdict = check(&scenario, &params)?;
        if verdict.closed_form.is_some_and(|cf| cf != verdict.satisfied) {
            mismatches += 1;
        }
        if !verdict.satisfied {
            failures += 1;
            if witness.is_none() {
                witness = Some(SuiteWitness {
                    index,
                    scenario,
                    verdict,
                });
            }
        }
    }
    Ok(AxiomReport {
        axiom,
        alpha,
        c: suite_threshold(axiom, c, &sampler.ranges)?,
        samples: sampler.count,
        failures,
        passes: sampler.count - failures,
        seed: sampler.seed,
        witness,
        closed_form_mismatches: (axiom == AxiomKind::A1).then_some(mismatches),
    })
}
