//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

mod common;

use std::fs::File;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use netpolar::alpha_bounds::DEFAULT_TOLERANCE;
use netpolar::axioms::Sampler;
use netpolar::extremal::{DEFAULT_EPS_GRID, DEFAULT_MASS_STEP};
use netpolar::io::{read_preferences, read_votes};
use netpolar::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn c1_alpha_bound() -> Outcome {
    match alpha_upper(2.0, DEFAULT_TOLERANCE) {
        Ok(u) => outcome((1.55..=1.70).contains(&u), format!("upper(2) = {u:.6}")),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c2_nesting() -> Outcome {
    let cs = [1.05, 1.1, 1.3, 1.5, 1.8, 2.0];
    let mut ivs = Vec::new();
    for c in cs {
        match admissible_interval(c, DEFAULT_TOLERANCE) {
            Ok(iv) => ivs.push(iv),
            Err(e) => return outcome(false, format!("c = {c}: {e}")),
        }
    }
    let tol = 1e-6;
    for w in ivs.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let lower_ok = b.lower.unwrap_or(0.0) <= a.lower.unwrap_or(0.0) + tol;
        if !lower_ok || b.upper < a.upper - tol {
            return outcome(false, format!("interval at c = {} not inside c = {}", a.c, b.c));
        }
    }
    if let Some(iv) = ivs.iter().find(|iv| !iv.contains(1.0)) {
        return outcome(false, format!("1 outside the interval at c = {}", iv.c));
    }
    let shown: Vec<String> = ivs
        .iter()
        .map(|iv| match iv.lower {
            Some(l) => format!("{}:[{l:.4},{:.4}]", iv.c, iv.upper),
            None => format!("{}:[-,{:.4}]", iv.c, iv.upper),
        })
        .collect();
    outcome(true, shown.join(" "))
}

fn c3_sufficiency() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for kind in [AxiomKind::A1, AxiomKind::A2, AxiomKind::A3] {
        let mut sampler = Sampler::new(10_000, 20_240_601);
        sampler.closed_form_region = kind == AxiomKind::A1;
        match run_suite(kind, 1.0, None, &sampler) {
            Ok(r) => {
                pass &= r.failures == 0;
                details.push(format!("{kind}: {}/{} failures", r.failures, r.samples));
            }
            Err(e) => {
                pass = false;
                details.push(format!("{kind}: {e}"));
            }
        }
    }
    outcome(pass, details.join(", "))
}

fn c4_necessity() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for alpha in [0.5, 0.8, 1.2, 1.5] {
        let w = match lemma1_witness(alpha) {
            Ok(w) => w,
            Err(e) => return outcome(false, format!("alpha {alpha}: {e}")),
        };
        let s = DissolveScenario {
            p: 1.0,
            q: w.z,
            d: 1.0,
            c_bar: w.c,
            delta: 1e-3,
            threshold: None,
        };
        let params = MeasureParams::with_alpha(alpha).unwrap();
        match check_axiom3(&s, &params) {
            Ok(v) => {
                let ok = w.f > 0.0 && w.c > 1.0 && !v.satisfied;
                pass &= ok;
                details.push(format!(
                    "{alpha}: z={:.3} c={:.4} margin={:.2e}",
                    w.z, w.c, v.margin
                ));
            }
            Err(e) => return outcome(false, format!("alpha {alpha}: {e}")),
        }
    }
    outcome(pass, details.join(", "))
}

fn c5_bipolar_max() -> Outcome {
    let corpus = common::small_graph_corpus(5);
    let mut worst = f64::INFINITY;
    for net in &corpus {
        match verify_bipolar_max(net, 1.0, 1.0 / 6.0) {
            Ok(r) => {
                worst = worst.min(r.margin);
                if !r.is_bipolar_max || r.margin <= 1e-12 {
                    return outcome(
                        false,
                        format!("graph {:?} edges {:?}: margin {}", r.graph.ids, net.edges(), r.margin),
                    );
                }
            }
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(
        true,
        format!("{} graphs, smallest margin {worst:.3e}", corpus.len()),
    )
}

fn c6_counterexample() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for alpha in [0.5, 1.5] {
        match counterexample_search(alpha, &DEFAULT_EPS_GRID, DEFAULT_MASS_STEP) {
            Ok(r) => match r.witness {
                Some(w) => details.push(format!(
                    "{alpha}: eps={} masses={:?} ratio={:.6}",
                    w.eps,
                    w.masses,
                    w.value / w.bipolar_value
                )),
                None => {
                    pass = false;
                    details.push(format!(
                        "{alpha}: no witness, best/bipolar = {:.6}",
                        r.best_ratio
                    ));
                }
            },
            Err(e) => return outcome(false, format!("alpha {alpha}: {e}")),
        }
    }
    outcome(pass, details.join(", "))
}

fn c7_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=7);
        let net = common::random_network(&mut rng, n, false);
        let alpha = [0.5, 1.0, 1.5][rng.random_range(0..3)];
        let params = MeasureParams::new(rng.random_range(0.1..3.0), alpha).unwrap();
        let fast = polarization(&net, &params, &geodesic_distances(&net))
            .unwrap()
            .value;
        let slow = polarization_naive_oracle(&net, &params);
        let err = if fast == slow {
            0.0
        } else {
            (fast - slow).abs() / fast.abs().max(slow.abs())
        };
        worst = worst.max(err);
    }
    outcome(worst <= 1e-12, format!("max relative error {worst:.2e}"))
}

fn c8_homotheticity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(2..=7);
        let net = common::random_network(&mut rng, n, false);
        let dm = geodesic_distances(&net);
        for alpha in [0.5, 1.0, 1.5] {
            let params = MeasureParams::with_alpha(alpha).unwrap();
            let base = polarization(&net, &params, &dm).unwrap().value;
            for lambda in [0.5, 2.0, 10.0] {
                let scaled = scale_masses(&net, lambda).unwrap();
                let v = polarization(&scaled, &params, &dm).unwrap().value;
                let expected = lambda.powf(2.0 + alpha) * base;
                if !rel_close(v, expected, 1e-12) {
                    return outcome(false, format!("lambda {lambda} alpha {alpha}: {v} vs {expected}"));
                }
                if expected != 0.0 {
                    worst = worst.max((v - expected).abs() / expected.abs());
                }
            }
        }
    }
    outcome(true, format!("max relative error {worst:.2e}"))
}

fn data(name: &str) -> File {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    File::open(path).unwrap()
}

fn c9_golden() -> Outcome {
    let votes = read_votes(data("matrix1_votes.csv")).unwrap();
    let cube = build_vote_hypercube(&votes).unwrap();
    let cube_ok = cube.len() == 8
        && cube.total_mass() == 8.0
        && [("100", 3.0), ("010", 1.0), ("011", 2.0), ("101", 1.0), ("111", 1.0)]
            .iter()
            .all(|&(id, m)| cube.mass_of(id) == Some(m));

    let prefs = read_preferences(data("matrix2_prefs.csv")).unwrap();
    let cycle = build_preference_kemeny(&prefs).unwrap();
    let cycle_ok = cycle.len() == 6
        && cycle.edges().len() == 6
        && cycle.total_mass() == 11.0
        && [("a>b>c", 2.0), ("b>a>c", 3.0), ("c>a>b", 2.0), ("c>b>a", 4.0)]
            .iter()
            .all(|&(id, m)| cycle.mass_of(id) == Some(m));

    let reps = build_representatives(&votes).unwrap();
    let (r1, r4, r7) = (
        reps.index_of("R1").unwrap(),
        reps.index_of("R4").unwrap(),
        reps.index_of("R7").unwrap(),
    );
    let reps_ok = reps.edge_weight(r1, r4) == Some(2.0 / 3.0) && reps.edge_weight(r4, r7).is_none();

    outcome(
        cube_ok && cycle_ok && reps_ok,
        format!("hypercube {cube_ok}, kemeny {cycle_ok}, representatives {reps_ok}"),
    )
}

fn c10_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let params = MeasureParams::default();

    let mut cases = 0;
    while cases < 1000 {
        let n = rng.random_range(3..=7);
        let net = common::random_network(&mut rng, n, false);
        let e = net.edges()[rng.random_range(0..net.edges().len())];
        let (u, v) = (&net.ids()[e.u], &net.ids()[e.v]);
        let Ok(cut) = delete_edge(&net, u, v) else {
            continue;
        };
        cases += 1;
        let before = polarization(&net, &params, &geodesic_distances(&net)).unwrap().value;
        let after = polarization(&cut, &params, &geodesic_distances(&cut)).unwrap().value;
        if after < before {
            return outcome(false, format!("deleting {u}-{v} lowered P: {before} -> {after}"));
        }
    }

    for _ in 0..200 {
        let n = rng.random_range(2..=7);
        let net = common::random_network(&mut rng, n, true);
        let uniform = net.with_masses(vec![1.0; n]).unwrap();
        let p = polarization(&uniform, &params, &geodesic_distances(&uniform))
            .unwrap()
            .value;
        let apl = average_path_length(&uniform).unwrap();
        // both sides are integer path sums divided by n(n-1)
        if p / params.k / (n * (n - 1)) as f64 != apl {
            return outcome(false, format!("uniform identity broke: {p} vs n(n-1)*{apl}"));
        }
    }

    let mut worst: f64 = 0.0;
    for k in 0..=10_000 {
        let z = k as f64 * 1e-3;
        let f = f_eval(z, 1.0, 1.0).unwrap();
        worst = worst.max((f + (z - 1.0) * (z - 1.0) / 2.0).abs());
    }
    outcome(
        worst <= 1e-12,
        format!("1000 deletions monotone, uniform identity exact, f grid error {worst:.1e}"),
    )
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("alpha-bound reproduction", Duration::from_secs(1), c1_alpha_bound),
        ("interval nesting", Duration::from_secs(5), c2_nesting),
        ("sufficiency at alpha = 1", Duration::from_secs(10), c3_sufficiency),
        ("necessity witnesses", Duration::from_secs(2), c4_necessity),
        ("bipolar maximality on small graphs", Duration::from_secs(60), c5_bipolar_max),
        ("counterexample for alpha != 1", Duration::from_secs(30), c6_counterexample),
        ("oracle equivalence", Duration::from_secs(60), c7_oracle),
        ("homotheticity", Duration::from_secs(60), c8_homotheticity),
        ("golden builders", Duration::from_secs(60), c9_golden),
        ("structural properties", Duration::from_secs(60), c10_structure),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let timing = if in_time {
            format!("{:.2}s", elapsed.as_secs_f64())
        } else {
            format!("{:.2}s, over the {}s budget", elapsed.as_secs_f64(), budget.as_secs())
        };
        println!(
            "{} [{:>2}] {name}: {} ({timing})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
