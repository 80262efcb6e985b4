//! Built-in reproduction suite: every numeric claim that can be checked on a
//! desk, recomputed and compared against its stated value.
//!
//! Reports are deterministic for a given seed; no timing or host data is
//! recorded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bscbec::{
    classify_pair, critical_point, d_curve, d_derivative, d_func, degrading_channel, BscBecPair, PairTag,
};
use crate::channels::{bec, bsc, cascade, detect_c_symmetry, split_input_pair, symmetrize, Dmc, SufficiencyReport};
use crate::classify::{
    gap_functional, search_less_noisy_counterexample, test_degraded, test_dominant_c_symmetry,
    test_essentially_more_capable, test_less_noisy, test_more_capable,
};
use crate::error::{Error, Result};
use crate::probcore::{aux_info, binary_entropy, AuxDecomposition, Dist, Joint2};
use crate::regions::{
    frontier_distance, outer_bound_eq_ob, outer_bound_vx, polyline_distance, superposition_region, theorem1_region,
    RatePoint, SweepConfig,
};
use crate::simplex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// The claim this check reproduces.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Replaces the default tolerance of every selected check.
    pub tolerance: Option<f64>,
    /// Names of the checks to run; `None` runs all of them.
    pub checks: Option<Vec<String>>,
}

type CheckFn = fn(u64, Option<f64>) -> Result<CheckResult>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("aux-mi-values", check_aux_mi_values),
    ("less-noisy-counterexample-search", check_counterexample_search),
    ("pair-classification", check_pair_classification),
    ("threshold-agreement", check_threshold_agreement),
    ("d-curve-shape", check_d_curve_shape),
    ("derivative-vs-differences", check_derivative),
    ("degrading-construction", check_degrading_construction),
    ("symmetrization", check_symmetrization),
    ("eps-decomposition", check_eps_decomposition),
    ("split-input-example", check_split_input),
    ("capacity-coincidence", check_coincidence),
    ("region-containment", check_containment),
    ("hierarchy", check_hierarchy),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs the selected checks in their fixed order. Unknown names are an
/// error; failures inside a check are reported in its row.
pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if let Some(names) = &opts.checks {
        if let Some(bad) = names.iter().find(|n| !CHECKS.iter().any(|(c, _)| c == n)) {
            return Err(Error::UnknownCheck(bad.clone()));
        }
    }
    let selected: Vec<&(&str, CheckFn)> =
        CHECKS.iter().filter(|(n, _)| opts.checks.as_ref().is_none_or(|s| s.iter().any(|x| x == n))).collect();
    let checks: Vec<CheckResult> = selected
        .iter()
        .map(|(name, f)| {
            f(opts.seed, opts.tolerance).unwrap_or_else(|e| CheckResult {
                name: name.to_string(),
                anchor: String::new(),
                expected: String::new(),
                computed: format!("error: {e}"),
                tolerance: opts.tolerance.unwrap_or(0.0),
                pass: false,
            })
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { seed: opts.seed, checks, pass })
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:width$}  expected {}  computed {}  (tol {:e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.computed,
                c.tolerance,
            ));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        s.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        s
    }
}

fn result(
    name: &str,
    anchor: &str,
    expected: String,
    computed: String,
    tolerance: f64,
    pass: bool,
) -> Result<CheckResult> {
    Ok(CheckResult { name: name.into(), anchor: anchor.into(), expected, computed, tolerance, pass })
}

fn h(x: f64) -> f64 {
    binary_entropy(x).expect("probability argument")
}

fn bsc_rows(p: f64) -> Dist {
    Dist::binary(1.0 - p).expect("probability argument")
}

fn check_aux_mi_values(_seed: u64, tol: Option<f64>) -> Result<CheckResult> {
    let tol = tol.unwrap_or(5e-4);
    let (y1, y2) = (bec(0.5)?, bsc(0.1101)?);
    let aux = AuxDecomposition::new(Dist::uniform(2), vec![bsc_rows(0.05), bsc_rows(0.95)])?;
    let (i1, i2) = (aux_info(&aux, &y1).u_y, aux_info(&aux, &y2).u_y);
    let pass = (i1 - 0.3568).abs() <= tol && (i2 - 0.3924).abs() <= tol && i1 < i2;
    result(
        "aux-mi-values",
        "BEC(0.5) vs BSC(0.1101), U uniform, X|U = BSC(0.05): 0.3568 ~ I(U;Y1) < I(U;Y2) ~ 0.3924",
        "I(U;Y1)=0.3568 < I(U;Y2)=0.3924".into(),
        format!("I(U;Y1)={i1:.9} I(U;Y2)={i2:.9}"),
        tol,
        pass,
    )
}

fn check_counterexample_search(seed: u64, _tol: Option<f64>) -> Result<CheckResult> {
    let (y1, y2) = (bec(0.5)?, bsc(0.1101)?);
    let found = search_less_noisy_counterexample(&y1, &y2, seed, 2000)?;
    let violation = found.as_ref().map(|aux| aux_info(aux, &y2).u_y - aux_info(aux, &y1).u_y);
    let mc = test_more_capable(&y1, &y2, 50)?;
    result(
        "less-noisy-counterexample-search",
        "BEC(0.5) is more capable than BSC(0.1101) yet not less noisy",
        "more capable holds; a U with I(U;Y2) > I(U;Y1) exists".into(),
        format!(
            "more capable {:?}; best violation {}",
            mc.outcome,
            violation.map_or("none".into(), |v| format!("{v:.9}"))
        ),
        crate::classify::SEARCH_TOL,
        mc.holds() && violation.is_some_and(|v| v > crate::classify::SEARCH_TOL),
    )
}

fn check_pair_classification(_seed: u64, _tol: Option<f64>) -> Result<CheckResult> {
    use PairTag::*;
    let cases = [
        (0.1, 0.15, DegradedBscSide),
        (0.1, 0.3, LessNoisyBecSide),
        (0.1, 0.4, MoreCapableBecSide),
        (0.1, 0.5, EssentiallyLessNoisyBscSide),
        (0.25, 0.74, LessNoisyBecSide),
        (0.25, 0.76, MoreCapableBecSide),
    ];
    let mut wrong = Vec::new();
    for (p, e, want) in cases {
        let got = classify_pair(&BscBecPair::new(p, e)?).tag;
        if got != want {
            wrong.push(format!("({p},{e}) gave {got:?}"));
        }
    }
    result(
        "pair-classification",
        "BSC/BEC regimes split at e = 2p, 4p(1-p), H(p)",
        format!("{} sample pairs tagged per thresholds", cases.len()),
        if wrong.is_empty() { "all match".into() } else { wrong.join("; ") },
        0.0,
        wrong.is_empty(),
    )
}

/// Predicted outcomes of (degraded, less noisy, more capable, dominant
/// c-symmetry) for `(p, e)` from the closed-form thresholds.
fn predicted(p: f64, e: f64) -> [bool; 4] {
    [e <= 2.0 * p, e <= 4.0 * p * (1.0 - p), e <= h(p), e > h(p)]
}

fn numerical(p: f64, e: f64, divisions: usize) -> Result<[bool; 4]> {
    let (s, b) = (bsc(p)?, bec(e)?);
    Ok([
        test_degraded(&b, &s)?.holds(),
        test_less_noisy(&b, &s, divisions)?.holds(),
        test_more_capable(&b, &s, divisions)?.holds(),
        test_dominant_c_symmetry(&s, &b, divisions)?.holds(),
    ])
}

/// Whether a threshold curve passes through the `(p, e)` cell.
fn near_boundary(p: f64, e: f64, dp: f64, de: f64) -> bool {
    let curves: [fn(f64) -> f64; 3] = [|p| 2.0 * p, |p| 4.0 * p * (1.0 - p), h];
    let (lo, hi) = ((p - dp).max(0.0), (p + dp).min(0.5));
    curves.iter().any(|t| t(lo) <= e + de && t(hi) >= e - de)
}

/// `(p, e)` cell centers of the `n x n` grid on `[0, 1/2] x [0, 1]`.
pub fn threshold_grid(n: usize) -> Vec<(f64, f64)> {
    let (dp, de) = (0.5 / n as f64, 1.0 / n as f64);
    (0..n).flat_map(|i| (0..n).map(move |j| ((i as f64 + 0.5) * dp, (j as f64 + 0.5) * de))).collect()
}

fn check_threshold_agreement(_seed: u64, _tol: Option<f64>) -> Result<CheckResult> {
    let n = 50;
    let (dp, de) = (0.5 / n as f64, 1.0 / n as f64);
    let cells: Vec<(f64, f64)> = threshold_grid(n).into_iter().filter(|&(p, e)| !near_boundary(p, e, dp, de)).collect();
    let outcomes: Vec<Result<bool>> =
        cells.par_iter().map(|&(p, e)| numerical(p, e, 50).map(|got| got == predicted(p, e))).collect();
    let mut agree = 0;
    let mut first_bad = None;
    for (cell, ok) in cells.iter().zip(outcomes) {
        if ok? {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(*cell);
        }
    }
    result(
        "threshold-agreement",
        "numerical order tests reproduce the e = 2p, 4p(1-p), H(p) thresholds",
        format!("{} of {} non-boundary cells", cells.len(), cells.len()),
        format!(
            "{agree} of {} ({} boundary cells skipped){}",
            cells.len(),
            n * n - cells.len(),
            first_bad.map_or(String::new(), |(p, e)| format!("; first mismatch at ({p}, {e})"))
        ),
        de,
        agree == cells.len(),
    )
}

fn check_d_curve_shape(_seed: u64, tol: Option<f64>) -> Result<CheckResult> {
    let tol = tol.unwrap_or(1e-6);
    let pair = BscBecPair::new(0.1, 0.5)?;
    let curve = d_curve(&pair, 1001)?;
    let (d0, d1) = (curve[0].1, curve[1000].1);
    let (argmax, max) =
        curve.iter().copied().fold((0.0, f64::NEG_INFINITY), |best, (x, d)| if d > best.1 { (x, d) } else { best });
    let root = critical_point(&pair)?;
    let (slope, depth) = match root {
        Some(r) => (d_derivative(&pair, r)?, d_func(&pair, r)?),
        None => (f64::NAN, f64::NAN),
    };
    let r = root.unwrap_or(f64::NAN);
    let pass = d0.abs() <= 1e-12
        && d1.abs() <= 1e-12
        && (argmax - 0.5).abs() < 1e-12
        && (max - 0.031004).abs() <= tol
        && r > 0.0
        && r < 0.5
        && slope.abs() < 1e-10
        && depth < 0.0;
    result(
        "d-curve-shape",
        "D(x) = I(X;Y1) - I(X;Y2) for BSC(0.1) and BEC(0.5)",
        "D(0)=D(1)=0, max 0.031004 at x=0.5, interior critical point r<0.5 with D(r)<0".into(),
        format!("D(0)={d0:.3e} D(1)={d1:.3e} max {max:.9} at {argmax}; r={r:.9} D'(r)={slope:.3e} D(r)={depth:.9}"),
        tol,
        pass,
    )
}

/// Seeded `(p, e)` pairs with `p` in (0.01, 0.49) and `e` in (0.01, 0.99).
pub fn random_pairs(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(0.01..0.49), rng.gen_range(0.01..0.99))).collect()
}

fn check_derivative(seed: u64, tol: Option<f64>) -> Result<CheckResult> {
    let tol = tol.unwrap_or(1e-6);
    let step = 1e-6;
    let mut worst: f64 = 0.0;
    for (p, e) in random_pairs(seed, 20) {
        let pair = BscBecPair::new(p, e)?;
        for k in 1..=97 {
            let x = k as f64 / 98.0;
            let fd = (d_func(&pair, x + step)? - d_func(&pair, x - step)?) / (2.0 * step);
            worst = worst.max((fd - d_derivative(&pair, x)?).abs());
        }
    }
    result(
        "derivative-vs-differences",
        "closed-form D'(x) = (1-2p) log((1-x*p)/(x*p)) - (1-e) log((1-x)/x)",
        "max |D' - centered difference| on 97 points x 20 pairs".into(),
        format!("{worst:.3e}"),
        tol,
        worst <= tol,
    )
}

fn check_degrading_construction(seed: u64, _tol: Option<f64>) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    let mut holds = 0;
    let mut fails = 0;
    for _ in 0..20 {
        let p: f64 = rng.gen_range(0.0..0.5);
        let e = rng.gen_range(0.0..=(2.0 * p).min(1.0));
        let pair = BscBecPair::new(p, e)?;
        let w = degrading_channel(&pair).ok_or_else(|| Error::Consistency(format!("no W for ({p}, {e})")))?;
        let (s, b) = (bsc(p)?, bec(e)?);
        max_err = max_err.max(cascade(&b, &w)?.max_abs_diff(&s));
        holds += test_degraded(&b, &s)?.holds() as usize;
    }
    for _ in 0..20 {
        let p: f64 = rng.gen_range(0.0..0.45);
        let e = rng.gen_range(2.0 * p..1.0);
        if e <= 2.0 * p {
            continue;
        }
        fails += test_degraded(&bec(e)?, &bsc(p)?)?.fails() as usize;
    }
    result(
        "degrading-construction",
        "e <= 2p: BSC(p) = BEC(e) followed by an explicit 3x2 channel",
        "cascade error <= 1e-12; 20/20 degraded; 20/20 not degraded when e > 2p".into(),
        format!("cascade error {max_err:.3e}; {holds}/20 degraded; {fails}/20 not degraded"),
        1e-12,
        max_err <= 1e-12 && holds == 20 && fails == 20,
    )
}

/// Seeded random `(U, X)` joint with binary `X` and `|U|` in 1..=3.
pub fn random_binary_joint(rng: &mut ChaCha8Rng) -> Joint2 {
    let nu = rng.gen_range(1..=3);
    let flat = simplex::random_point(rng, 2 * nu);
    Joint2::new(flat.chunks(2).map(<[f64]>::to_vec).collect()).expect("dirichlet table")
}

fn check_symmetrization(seed: u64, tol: Option<f64>) -> Result<CheckResult> {
    let tol = tol.unwrap_or(1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_marginal: f64 = 0.0;
    let mut worst_violation = f64::NEG_INFINITY;
    for _ in 0..100 {
        let joint = random_binary_joint(&mut rng);
        let (c1, c2) = (bsc(rng.gen_range(0.0..0.5))?, bec(rng.gen_range(0.0..1.0))?);
        let w1 = detect_c_symmetry(&c1)?.ok_or_else(|| Error::NotCSymmetric("BSC".into()))?;
        let w2 = detect_c_symmetry(&c2)?.ok_or_else(|| Error::NotCSymmetric("BEC".into()))?;
        let sym = symmetrize(&joint, (&c1, &w1), (&c2, &w2))?;
        for x in sym.x_marginal() {
            worst_marginal = worst_marginal.max((x - 0.5).abs());
        }
        for c in [&c1, &c2] {
            worst_violation = worst_violation.max(SufficiencyReport::new(&joint, &sym, c).max_violation());
        }
    }
    result(
        "symmetrization",
        "the uniform input law forms a sufficient class for c-symmetric pairs",
        "uniform X marginal; every sufficiency relation within tolerance".into(),
        format!("marginal deviation {worst_marginal:.3e}; worst violation {worst_violation:.3e}"),
        tol,
        worst_marginal <= 1e-15 && worst_violation <= tol,
    )
}

/// `U` uniform on {0, 1} with `P(X=0|U=0) = eps`, `P(X=0|U=1) = 1 - eps`.
pub fn eps_decomposition(eps: f64) -> Result<AuxDecomposition> {
    AuxDecomposition::new(Dist::uniform(2), vec![Dist::binary(eps)?, Dist::binary(1.0 - eps)?])
}

fn check_eps_decomposition(seed: u64, _tol: Option<f64>) -> Result<CheckResult> {
    let (y1, y2) = (bsc(0.1)?, bec(0.5)?);
    let aux = eps_decomposition(0.01)?;
    let value = aux_info(&aux, &y2).x_y_given_u - aux_info(&aux, &y1).x_y_given_u;
    let emc = test_essentially_more_capable(&y1, &y2, &[Dist::uniform(2)], 50, seed)?;
    result(
        "eps-decomposition",
        "BSC(0.1) is not essentially more capable than BEC(0.5): I(X;Y2|U) > I(X;Y1|U) for small eps",
        "positive gap at eps = 0.01; class {uniform} refuted".into(),
        format!("I(X;Y2|U) - I(X;Y1|U) = {value:.9}; verdict {:?}", emc.outcome),
        0.0,
        value > 0.0 && emc.fails(),
    )
}

fn check_split_input(seed: u64, tol: Option<f64>) -> Result<CheckResult> {
    let tol = tol.unwrap_or(1e-9);
    let (y1, y2) = split_input_pair();
    let upper = Dist::uniform_on(4, &[2, 3])?;
    let gap = gap_functional(&y2, &y1, &upper)?;
    let y1_mi = y1.mi_of(upper.probs());
    let expected = 1.0 - h(0.4);
    let emc = test_essentially_more_capable(&y1, &y2, &[Dist::uniform_on(4, &[0, 1])?], 50, seed)?;
    let mc = test_more_capable(&y1, &y2, 50)?;
    result(
        "split-input-example",
        "four-input pair: essentially more capable on {uniform on {0,1}} but not more capable",
        format!("gap {expected:.9} with I(X;Y1)=0; EMC Holds; MC Fails"),
        format!("gap {gap:.9} I(X;Y1)={y1_mi:.3e}; EMC {:?}; MC {:?}", emc.outcome, mc.outcome),
        tol,
        (gap - expected).abs() <= tol && y1_mi.abs() <= 1e-12 && emc.holds() && mc.fails(),
    )
}

fn check_coincidence(_seed: u64, tol: Option<f64>) -> Result<CheckResult> {
    let cfg = SweepConfig::default();
    let tol = tol.unwrap_or(2.0 * cfg.step());
    let (a, b) = (bsc(0.1)?, bec(0.5)?);
    let t1 = theorem1_region(&a, &b, &[Dist::uniform(2)], &cfg)?;
    let ob = outer_bound_eq_ob(&a, &b, &cfg)?;
    let dist = frontier_distance(&t1, &ob);
    let corners = [RatePoint::new(1.0 - h(0.1), 0.0), RatePoint::new(0.0, 0.5)];
    let corner_gap = [&t1, &ob]
        .iter()
        .flat_map(|f| corners.iter().map(|c| polyline_distance(*c, &f.boundary())))
        .fold(0.0, f64::max);
    result(
        "capacity-coincidence",
        "BSC(0.1)/BEC(0.5): the achievable region on {uniform} meets the outer bound",
        format!("distance <= {tol}; corners (1-H(0.1), 0), (0, 0.5) within {}", cfg.step()),
        format!("distance {dist:.6}; corner gap {corner_gap:.6}"),
        tol,
        dist <= tol && corner_gap <= cfg.step(),
    )
}

/// Ten seeded BSC/BEC pairs cycling through the four regimes.
pub fn regime_pairs(seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10)
        .map(|k| {
            let p: f64 = rng.gen_range(0.05..0.45);
            let t = [0.0, 2.0 * p, 4.0 * p * (1.0 - p), h(p), 1.0];
            let r = k % 4;
            let e = t[r] + (t[r + 1] - t[r]) * rng.gen_range(0.1..0.9);
            (p, e)
        })
        .collect()
}

fn check_containment(seed: u64, tol: Option<f64>) -> Result<CheckResult> {
    let tol = tol.unwrap_or(1e-9);
    let cfg = SweepConfig::with_divisions(25);
    let mut bad = Vec::new();
    for (p, e) in regime_pairs(seed) {
        let (a, b) = (bsc(p)?, bec(e)?);
        let ib = superposition_region(&a, &b, None, &cfg)?;
        let ob = outer_bound_eq_ob(&a, &b, &cfg)?;
        let vx = outer_bound_vx(&a, &b, &cfg)?;
        if !ib
            .points
            .iter()
            .all(|q| crate::regions::frontier_contains(&ob, *q, tol) && crate::regions::frontier_contains(&vx, *q, tol))
        {
            bad.push(format!("({p:.4}, {e:.4})"));
        }
    }
    result(
        "region-containment",
        "the superposition region lies inside both outer bounds",
        "10 of 10 pairs".into(),
        if bad.is_empty() { "10 of 10 pairs".into() } else { format!("violated at {}", bad.join(", ")) },
        tol,
        bad.is_empty(),
    )
}

/// Ordered channel pairs used by the hierarchy check.
pub fn hierarchy_instances(seed: u64) -> Result<Vec<(Dmc, Dmc)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (p, e) in regime_pairs(seed) {
        out.push((bec(e)?, bsc(p)?));
        out.push((bsc(p)?, bec(e)?));
    }
    for (p, q) in [(0.1, 0.2), (0.0, 0.3), (0.25, 0.25)] {
        out.push((bsc(p)?, bsc(q)?));
    }
    for _ in 0..10 {
        let a = Dmc::from_rows((0..2).map(|_| simplex::random_point(&mut rng, 3)).collect())?;
        let w = Dmc::from_rows((0..3).map(|_| simplex::random_point(&mut rng, 2)).collect())?;
        let b = cascade(&a, &w)?;
        out.push((a.clone(), b.clone()));
        out.push((b, a));
    }
    let (y1, y2) = split_input_pair();
    out.push((y1.clone(), y2.clone()));
    out.push((y2, y1));
    Ok(out)
}

fn check_hierarchy(seed: u64, _tol: Option<f64>) -> Result<CheckResult> {
    let instances = hierarchy_instances(seed)?;
    let mut degraded = 0;
    let mut broken = Vec::new();
    for (k, (a, b)) in instances.iter().enumerate() {
        if test_degraded(a, b)?.holds() {
            degraded += 1;
            if !(test_less_noisy(a, b, 50)?.holds() && test_more_capable(a, b, 50)?.holds()) {
                broken.push(k.to_string());
            }
        }
    }
    result(
        "hierarchy",
        "degraded implies less noisy implies more capable",
        "every degraded instance is less noisy and more capable".into(),
        format!(
            "{degraded} degraded of {} instances; {}",
            instances.len(),
            if broken.is_empty() { "no exceptions".into() } else { format!("exceptions at {}", broken.join(",")) }
        ),
        0.0,
        degraded > 0 && broken.is_empty(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[ignore]
    fn print_full_report() {
        let r = run(&VerifyOptions::default()).unwrap();
        print!("{}", r.to_table());
    }

    #[test]
    fn unknown_check_rejected() {
        let opts = VerifyOptions { checks: Some(vec!["nope".into()]), ..Default::default() };
        assert!(run(&opts).is_err());
    }

    #[test]
    fn tight_tolerance_fails_rounded_values() {
        let opts = VerifyOptions { seed: 0, tolerance: Some(1e-12), checks: Some(vec!["aux-mi-values".into()]) };
        let r = run(&opts).unwrap();
        assert!(!r.pass);
        let opts = VerifyOptions { tolerance: None, ..opts };
        assert!(run(&opts).unwrap().pass);
    }

    #[test]
    fn names_are_unique() {
        let mut names = check_names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }

    #[test]
    fn boundary_cells_detected() {
        assert!(near_boundary(0.1, 0.2, 0.005, 0.01));
        assert!(!near_boundary(0.1, 0.3, 0.005, 0.01));
        assert!(threshold_grid(50).len() == 2500);
    }
}
