//! Bipolar distributions and checks of their maximality.
//!
//! For `α = 1` splitting the total mass over a diameter pair maximizes
//! polarization. The merge step below is the constructive half of that
//! argument; the grid search checks it exhaustively on small graphs and
//! probes the same question for other exponents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{geodesic_distances, DistanceMatrix, Network, ValidateOptions};
use crate::measures::{antagonism_sum, bipolar_value, polarization, MeasureParams};

/// Node limit for exhaustive simplex enumeration.
pub const MAX_EXHAUSTIVE_NODES: usize = 6;
/// Finest accepted grid: `1/step` may not exceed this many units.
pub const MAX_GRID_UNITS: usize = 4096;
pub const DEFAULT_EPS_GRID: [f64; 4] = [1e-3, 1e-2, 0.05, 0.1];
pub const DEFAULT_MASS_STEP: f64 = 1.0 / 64.0;

/// Half the total mass on each end of the diameter pair, zero elsewhere.
pub fn bipolar_distribution(net: &Network) -> Result<Network> {
    if net.len() < 2 {
        return Err(Error::SingleNode);
    }
    let total = net.total_mass();
    if total <= 0.0 {
        return Err(Error::ZeroTotalMass);
    }
    let dm = geodesic_distances(net);
    let (a, b) = dm.diameter_pair().expect("n >= 2");
    let mut masses = vec![0.0; net.len()];
    masses[a] = total / 2.0;
    masses[b] = total / 2.0;
    net.with_masses(masses)
}

/// Replace every distance by the diameter (a complete graph on the same
/// nodes) and merge the two smallest positive masses. Each step strictly
/// raises `P_1`; repeating it reaches three mass points.
pub fn merge_reduction(net: &Network) -> Result<Network> {
    let positive: Vec<usize> = (0..net.len()).filter(|&i| net.masses()[i] > 0.0).collect();
    if positive.len() < 4 {
        return Err(Error::FewerThanFourMassPoints(positive.len()));
    }
    let d = geodesic_distances(net).diameter();
    let mut by_mass = positive.clone();
    by_mass.sort_by(|&i, &j| net.masses()[i].total_cmp(&net.masses()[j]).then(i.cmp(&j)));
    let (small, other) = (by_mass[0], by_mass[1]);
    // the larger of the two absorbs the smaller
    let mut masses = net.masses().to_vec();
    masses[other] += masses[small];
    masses[small] = 0.0;

    let n = net.len();
    let nodes = net.ids().iter().cloned().zip(masses).collect();
    let edges = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j, d)))
        .collect();
    Network::new(nodes, edges, ValidateOptions::default())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub ids: Vec<String>,
    pub edges: usize,
    pub diameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub graph: GraphSummary,
    pub alpha: f64,
    pub grid_step: f64,
    /// Best non-bipolar distribution on the grid, in node order, total 1.
    pub best: Vec<f64>,
    pub best_value: f64,
    pub bipolar_value: f64,
    /// `bipolar_value - best_value`.
    pub margin: f64,
    pub is_bipolar_max: bool,
    pub witness: Option<Vec<f64>>,
}

fn grid_units(step: f64) -> Result<usize> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::StepTooSmall(step));
    }
    let units = (1.0 / step).round();
    if (units * step - 1.0).abs() > 1e-9 || units as usize > MAX_GRID_UNITS {
        return Err(Error::StepTooSmall(step));
    }
    Ok(units as usize)
}

/// Call `visit` on every weak composition of `total` into `parts.len()`
/// parts, in lexicographic order.
fn for_each_composition(parts: &mut [usize], total: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(parts: &mut [usize], at: usize, left: usize, visit: &mut impl FnMut(&[usize])) {
        if at + 1 == parts.len() {
            parts[at] = left;
            visit(parts);
            return;
        }
        for k in 0..=left {
            parts[at] = k;
            rec(parts, at + 1, left - k, visit);
        }
    }
    if !parts.is_empty() {
        rec(parts, 0, total, visit);
    }
}

/// Two halves on a pair of nodes at diameter distance.
fn is_bipolar_equivalent(units: &[usize], total: usize, dm: &DistanceMatrix) -> bool {
    if !total.is_multiple_of(2) {
        return false;
    }
    let support: Vec<usize> = (0..units.len()).filter(|&i| units[i] > 0).collect();
    support.len() == 2
        && units[support[0]] * 2 == total
        && dm.get(support[0], support[1]) == dm.diameter()
}

/// Best grid distribution other than the bipolar ones.
fn grid_best(dm: &DistanceMatrix, alpha: f64, units: usize) -> (Vec<f64>, f64) {
    let mut parts = vec![0; dm.len()];
    let mut best = (Vec::new(), f64::NEG_INFINITY);
    let scale = units as f64;
    let mut masses = vec![0.0; dm.len()];
    for_each_composition(&mut parts, units, &mut |c| {
        if is_bipolar_equivalent(c, units, dm) {
            return;
        }
        for (m, &k) in masses.iter_mut().zip(c) {
            *m = k as f64 / scale;
        }
        let value = antagonism_sum(&masses, alpha, dm);
        if value > best.1 {
            best = (masses.clone(), value);
        }
    });
    best
}

/// Exhaustive check that no grid distribution of total mass 1 other than a
/// bipolar one reaches the bipolar value of `P_α`.
pub fn verify_bipolar_max(net: &Network, alpha: f64, grid_step: f64) -> Result<ExtremalReport> {
    let params = MeasureParams::with_alpha(alpha)?;
    if net.len() > MAX_EXHAUSTIVE_NODES {
        return Err(Error::TooManyNodes {
            nodes: net.len(),
            limit: MAX_EXHAUSTIVE_NODES,
        });
    }
    if net.len() < 2 {
        return Err(Error::SingleNode);
    }
    let units = grid_units(grid_step)?;
    let dm = geodesic_distances(net);
    let (best, best_value) = grid_best(&dm, alpha, units);
    let bip = bipolar_value(1.0, dm.diameter(), &params);
    let margin = bip - best_value;
    let is_max = margin > 0.0;
    Ok(ExtremalReport {
        graph: GraphSummary {
            ids: net.ids().to_vec(),
            edges: net.edges().len(),
            diameter: dm.diameter(),
        },
        alpha,
        grid_step,
        witness: (!is_max).then(|| best.clone()),
        best,
        best_value,
        bipolar_value: bip,
        margin,
        is_bipolar_max: is_max,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleWitness {
    pub eps: f64,
    /// Masses on `x, y, z`, total 1.
    pub masses: [f64; 3],
    pub value: f64,
    pub bipolar_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub alpha: f64,
    pub eps_grid: Vec<f64>,
    pub mass_step: f64,
    pub witness: Option<CounterexampleWitness>,
    /// Largest `value / bipolar_value` seen over the whole search.
    pub best_ratio: f64,
}

/// The three-node network with `g_xy = g_xz = 1` and `g_yz = 1 + eps`.
pub fn near_isosceles(eps: f64, masses: [f64; 3]) -> Result<Network> {
    Network::new(
        vec![
            ("x".into(), masses[0]),
            ("y".into(), masses[1]),
            ("z".into(), masses[2]),
        ],
        vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0 + eps)],
        ValidateOptions::default(),
    )
}

/// Look for a distribution beating the bipolar one on the three-node family
/// `g_xy = g_xz = 1`, `g_yz = 1 + ε`. Candidates must exceed the bipolar
/// value by a relative `1e-12`; the first one in grid order is returned.
pub fn counterexample_search(
    alpha: f64,
    eps_grid: &[f64],
    mass_step: f64,
) -> Result<CounterexampleReport> {
    let params = MeasureParams::with_alpha(alpha)?;
    if alpha == 1.0 {
        return Err(Error::DomainError(
            "alpha = 1 has no counterexample to search for".into(),
        ));
    }
    if let Some(&e) = eps_grid.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(Error::DomainError(format!("eps = {e} must be positive")));
    }
    let units = grid_units(mass_step)?;
    let mut best_ratio = f64::NEG_INFINITY;
    for &eps in eps_grid {
        let dm = geodesic_distances(&near_isosceles(eps, [1.0, 1.0, 1.0])?);
        let bip = bipolar_value(1.0, dm.diameter(), &params);
        let (best, value) = grid_best(&dm, alpha, units);
        best_ratio = best_ratio.max(value / bip);
        if value > bip * (1.0 + 1e-12) {
            return Ok(CounterexampleReport {
                alpha,
                eps_grid: eps_grid.to_vec(),
                mass_step,
                witness: Some(CounterexampleWitness {
                    eps,
                    masses: [best[0], best[1], best[2]],
                    value,
                    bipolar_value: bip,
                }),
                best_ratio,
            });
        }
    }
    Ok(CounterexampleReport {
        alpha,
        eps_grid: eps_grid.to_vec(),
        mass_step,
        witness: None,
        best_ratio,
    })
}

/// Whether `d(g1) > d(g2)` implies a larger bipolar `P_1` for `g1`
/// (vacuously true otherwise). Both networks must carry the same total mass.
pub fn diameter_dominance_check(g1: &Network, g2: &Network) -> Result<bool> {
    let (m1, m2) = (g1.total_mass(), g2.total_mass());
    if (m1 - m2).abs() > 1e-12 * m1.abs().max(m2.abs()) {
        return Err(Error::UnequalTotalMass(m1, m2));
    }
    let (d1, d2) = (
        geodesic_distances(g1).diameter(),
        geodesic_distances(g2).diameter(),
    );
    if d1 <= d2 {
        return Ok(true);
    }
    let params = MeasureParams::default();
    let value = |g: &Network| -> Result<f64> {
        let b = bipolar_distribution(g)?;
        Ok(polarization(&b, &params, &geodesic_distances(&b))?.value)
    };
    Ok(value(g1)? > value(g2)?)
}
