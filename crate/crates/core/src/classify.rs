//! Ordering tests between the two receivers of a broadcast channel.
//!
//! Every test takes the candidate "stronger" receiver first: `a` is tested
//! for being degraded-over / less noisy than / more capable than `b`.
//!
//! Universal statements ("for every input", "for every auxiliary") cannot
//! be proven by sampling, so a [`Outcome::Holds`] from a grid search means
//! no counterexample was found at the recorded resolution. A
//! [`Outcome::Fails`] always carries a witness that re-checks through
//! [`ClassVerdict::recheck`].

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channels::{detect_c_symmetry, Dmc};
use crate::error::{Error, Result};
use crate::probcore::{aux_info, AuxDecomposition, Dist};
use crate::simplex;

/// Violation threshold of the grid searches.
pub const SEARCH_TOL: f64 = 1e-9;

/// Feasibility tolerance of the degradedness program.
pub const FEASIBILITY_TOL: f64 = 1e-9;

const REFINE_MIN_STEP: f64 = 1e-7;

/// Random auxiliary decompositions tried per cardinality of `U`.
pub const DEFAULT_RESTARTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderingTest {
    Degraded,
    LessNoisy,
    MoreCapable,
    DominantCSymmetry,
    EssentiallyLessNoisy,
    EssentiallyMoreCapable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `W` with `cascade(a, W) = b`.
    DegradingChannel { channel: Dmc },
    /// Best-fitting `W` and its largest violated matching constraint.
    Residual { best_fit: Dmc, input: usize, output: usize, residual: f64 },
    /// Input law violating the tested inequality.
    Input { dist: Dist },
    /// Auxiliary decomposition violating the tested inequality.
    Aux { aux: AuxDecomposition },
    /// Sufficient class used by the positive verdict.
    SufficientClass { class: Vec<Dist> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub route: String,
    pub grid_divisions: Option<usize>,
    pub evaluations: usize,
    /// Extreme value of the searched objective (minimum or maximum).
    pub extremum: Option<f64>,
    pub tolerance: f64,
    pub notes: Vec<String>,
}

impl Diagnostics {
    fn new(route: &str, tolerance: f64) -> Self {
        Diagnostics {
            route: route.to_string(),
            grid_divisions: None,
            evaluations: 0,
            extremum: None,
            tolerance,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub test: OrderingTest,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub diagnostics: Diagnostics,
}

impl ClassVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    /// Recomputes the defining inequality at the witness of a failed verdict
    /// and returns by how much it is violated (positive means violated).
    /// `None` when there is nothing to re-check.
    pub fn recheck(&self, a: &Dmc, b: &Dmc) -> Option<f64> {
        if self.outcome != Outcome::Fails {
            return None;
        }
        match (&self.test, self.witness.as_ref()?) {
            (OrderingTest::Degraded, Witness::Residual { best_fit, .. }) => {
                crate::channels::cascade(a, best_fit).ok().map(|c| c.max_abs_diff(b))
            }
            (OrderingTest::MoreCapable, Witness::Input { dist }) => Some(-gap(a, b, dist.probs())),
            (OrderingTest::DominantCSymmetry | OrderingTest::EssentiallyLessNoisy, Witness::Input { dist }) => {
                let uniform = Dist::uniform(a.input_size());
                Some(gap(a, b, dist.probs()) - gap(a, b, uniform.probs()))
            }
            (OrderingTest::LessNoisy, Witness::Aux { aux }) => Some(aux_info(aux, b).u_y - aux_info(aux, a).u_y),
            (OrderingTest::EssentiallyMoreCapable, Witness::Aux { aux }) => {
                Some(aux_info(aux, b).x_y_given_u - aux_info(aux, a).x_y_given_u)
            }
            _ => None,
        }
    }
}

fn same_input(a: &Dmc, b: &Dmc) -> Result<()> {
    if a.input_size() != b.input_size() {
        return Err(Error::DimensionMismatch {
            context: "input alphabets of the two receivers",
            expected: a.input_size(),
            found: b.input_size(),
        });
    }
    Ok(())
}

/// `I(X;Y_a) - I(X;Y_b)` for a raw input law.
fn gap(a: &Dmc, b: &Dmc, px: &[f64]) -> f64 {
    a.mi_of(px) - b.mi_of(px)
}

/// `I(X;Y_a) - I(X;Y_b)` under `px`.
pub fn gap_functional(a: &Dmc, b: &Dmc, px: &Dist) -> Result<f64> {
    same_input(a, b)?;
    if px.len() != a.input_size() {
        return Err(Error::DimensionMismatch { context: "input law", expected: a.input_size(), found: px.len() });
    }
    Ok(gap(a, b, px.probs()))
}

/// Decides whether `b` is a degraded version of `a`: is there a
/// row-stochastic `W` with `cascade(a, W) = b`?
///
/// Solved as a linear program minimizing the L1 mismatch of
/// `a W = b` over row-stochastic `W`; zero optimum means feasible.
pub fn test_degraded(a: &Dmc, b: &Dmc) -> Result<ClassVerdict> {
    same_input(a, b)?;
    let (m, ka, kb) = (a.input_size(), a.output_size(), b.output_size());
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let w: Vec<Vec<_>> = (0..ka).map(|_| (0..kb).map(|_| lp.add_var(0.0, (0.0, 1.0))).collect()).collect();
    for row in &w {
        lp.add_constraint(row.iter().map(|&v| (v, 1.0)).collect::<Vec<_>>(), ComparisonOp::Eq, 1.0);
    }
    for x in 0..m {
        for l in 0..kb {
            let plus = lp.add_var(1.0, (0.0, f64::INFINITY));
            let minus = lp.add_var(1.0, (0.0, f64::INFINITY));
            let mut expr: Vec<_> = (0..ka).filter(|&k| a.entry(x, k) > 0.0).map(|k| (w[k][l], a.entry(x, k))).collect();
            expr.push((plus, 1.0));
            expr.push((minus, -1.0));
            lp.add_constraint(expr, ComparisonOp::Eq, b.entry(x, l));
        }
    }
    let solution = lp.solve().map_err(|e| Error::Solver(e.to_string()))?;
    let rows: Vec<Vec<f64>> = w.iter().map(|row| row.iter().map(|&v| solution[v].max(0.0)).collect()).collect();
    let fit = Dmc::normalized(rows, b.output_labels().to_vec())?;
    let cascaded = crate::channels::cascade(a, &fit)?;

    let mut worst = (0, 0, 0.0f64);
    for x in 0..m {
        for l in 0..kb {
            let r = (cascaded.entry(x, l) - b.entry(x, l)).abs();
            if r > worst.2 {
                worst = (x, l, r);
            }
        }
    }
    let mut diagnostics = Diagnostics::new("linear feasibility", FEASIBILITY_TOL);
    diagnostics.extremum = Some(solution.objective());
    diagnostics.notes.push(format!("minimum L1 mismatch {:.3e}", solution.objective()));
    let (outcome, witness) = if worst.2 <= FEASIBILITY_TOL {
        (Outcome::Holds, Witness::DegradingChannel { channel: fit })
    } else {
        (Outcome::Fails, Witness::Residual { best_fit: fit, input: worst.0, output: worst.1, residual: worst.2 })
    };
    Ok(ClassVerdict { test: OrderingTest::Degraded, outcome, witness: Some(witness), diagnostics })
}

/// Grid minimum of `f` over the simplex followed by descent from the best
/// grid point. Ties go to the first grid point in enumeration order.
fn minimize_over_simplex(
    n: usize,
    divisions: usize,
    mut f: impl FnMut(&[f64]) -> f64,
) -> (Vec<f64>, f64, usize, usize) {
    let divisions = simplex::effective_divisions(n, divisions);
    let points = simplex::grid(n, divisions);
    let mut best_i = 0;
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        let v = f(p);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let support: Vec<usize> = (0..n).collect();
    let (x, v, evals) =
        simplex::refine_min(&mut f, points[best_i].clone(), &support, 1.0 / divisions as f64, REFINE_MIN_STEP);
    (x, v.min(best), points.len() + evals, divisions)
}

fn dist_from_raw(x: Vec<f64>) -> Dist {
    Dist::normalized(x.into_iter().map(|v| v.max(0.0)).collect()).expect("grid point on the simplex")
}

/// Is `a` more capable than `b`, i.e. `I(X;Y_b) <= I(X;Y_a)` for every input?
pub fn test_more_capable(a: &Dmc, b: &Dmc, divisions: usize) -> Result<ClassVerdict> {
    same_input(a, b)?;
    let (x, min, evals, used) = minimize_over_simplex(a.input_size(), divisions, |p| gap(a, b, p));
    let mut diagnostics = Diagnostics::new("simplex grid + pairwise descent", SEARCH_TOL);
    diagnostics.grid_divisions = Some(used);
    diagnostics.evaluations = evals;
    diagnostics.extremum = Some(min);
    let (outcome, witness) = if min < -SEARCH_TOL {
        (Outcome::Fails, Some(Witness::Input { dist: dist_from_raw(x) }))
    } else {
        (Outcome::Holds, None)
    };
    Ok(ClassVerdict { test: OrderingTest::MoreCapable, outcome, witness, diagnostics })
}

/// Is `a` less noisy than `b`, i.e. `I(U;Y_b) <= I(U;Y_a)` for every
/// auxiliary `U -> X`?
///
/// Tested through the equivalent condition that `I(X;Y_b) - I(X;Y_a)` is
/// convex in the input law. A midpoint violation between grid points `p`
/// and `q` is turned into the witness `U` uniform on `{0, 1}` with rows
/// `p` and `q`.
pub fn test_less_noisy(a: &Dmc, b: &Dmc, divisions: usize) -> Result<ClassVerdict> {
    same_input(a, b)?;
    let n = a.input_size();
    let used = simplex::effective_divisions(n, divisions);
    let points = simplex::grid(n, used);
    let delta: Vec<f64> = points.iter().map(|p| gap(b, a, p)).collect();
    let mut worst = (0usize, 0usize, f64::NEG_INFINITY);
    let mut evals = points.len();
    let mut mid = vec![0.0; n];
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for (k, m) in mid.iter_mut().enumerate() {
                *m = 0.5 * (points[i][k] + points[j][k]);
            }
            let excess = gap(b, a, &mid) - 0.5 * (delta[i] + delta[j]);
            evals += 1;
            if excess > worst.2 {
                worst = (i, j, excess);
            }
        }
    }
    let mut diagnostics = Diagnostics::new("midpoint convexity of the information gap", SEARCH_TOL);
    diagnostics.grid_divisions = Some(used);
    diagnostics.evaluations = evals;
    diagnostics.extremum = Some(worst.2.max(0.0));
    if n > 2 {
        diagnostics.notes.push("convexity characterization applied beyond binary inputs; treat as heuristic".into());
    }
    let (outcome, witness) = if worst.2 > SEARCH_TOL {
        let aux = AuxDecomposition::new(
            Dist::uniform(2),
            vec![dist_from_raw(points[worst.0].clone()), dist_from_raw(points[worst.1].clone())],
        )?;
        (Outcome::Fails, Some(Witness::Aux { aux }))
    } else {
        (Outcome::Holds, None)
    };
    Ok(ClassVerdict { test: OrderingTest::LessNoisy, outcome, witness, diagnostics })
}

/// Does the uniform input maximize `I(X;Y_a) - I(X;Y_b)`? Both channels
/// must be c-symmetric.
pub fn test_dominant_c_symmetry(a: &Dmc, b: &Dmc, divisions: usize) -> Result<ClassVerdict> {
    same_input(a, b)?;
    for (name, c) in [("first", a), ("second", b)] {
        if detect_c_symmetry(c)?.is_none() {
            return Err(Error::NotCSymmetric(format!("{name} channel")));
        }
    }
    let n = a.input_size();
    let at_uniform = gap(a, b, Dist::uniform(n).probs());
    let (x, neg_max, evals, used) = minimize_over_simplex(n, divisions, |p| -gap(a, b, p));
    let max = -neg_max;
    let mut diagnostics = Diagnostics::new("simplex grid + pairwise descent", SEARCH_TOL);
    diagnostics.grid_divisions = Some(used);
    diagnostics.evaluations = evals;
    diagnostics.extremum = Some(max);
    diagnostics.notes.push(format!("gap at uniform input {at_uniform:.9}"));
    let (outcome, witness) = if max > at_uniform + SEARCH_TOL {
        (Outcome::Fails, Some(Witness::Input { dist: dist_from_raw(x) }))
    } else {
        (Outcome::Holds, None)
    };
    Ok(ClassVerdict { test: OrderingTest::DominantCSymmetry, outcome, witness, diagnostics })
}

/// Is `a` essentially less noisy than `b`? Decided only for c-symmetric
/// pairs: the uniform input is then a sufficient class, and dominance of
/// `a` at the uniform input implies the ordering on that class.
pub fn test_essentially_less_noisy(a: &Dmc, b: &Dmc, divisions: usize) -> Result<ClassVerdict> {
    same_input(a, b)?;
    let mut missing = Vec::new();
    for (name, c) in [("first", a), ("second", b)] {
        match detect_c_symmetry(c) {
            Ok(Some(_)) => {}
            Ok(None) => missing.push(format!("{name} channel is not c-symmetric")),
            Err(e) => missing.push(format!("{name} channel: {e}")),
        }
    }
    if !missing.is_empty() {
        let mut diagnostics = Diagnostics::new("c-symmetric dominance", SEARCH_TOL);
        diagnostics.notes = missing;
        return Ok(ClassVerdict {
            test: OrderingTest::EssentiallyLessNoisy,
            outcome: Outcome::Inconclusive,
            witness: None,
            diagnostics,
        });
    }
    let mut verdict = test_dominant_c_symmetry(a, b, divisions)?;
    verdict.test = OrderingTest::EssentiallyLessNoisy;
    verdict.diagnostics.route = "c-symmetric dominance".into();
    if verdict.holds() {
        verdict.witness = Some(Witness::SufficientClass { class: vec![Dist::uniform(a.input_size())] });
    } else {
        verdict
            .diagnostics
            .notes
            .push("uniform input does not maximize the gap; this route cannot certify the ordering".into());
    }
    Ok(verdict)
}

/// Conditional gap `sum_u p(u) [I(X;Y_a|U=u) - I(X;Y_b|U=u)]`.
fn conditional_gap(a: &Dmc, b: &Dmc, aux: &AuxDecomposition) -> f64 {
    aux.pu
        .probs()
        .iter()
        .zip(&aux.px_given_u)
        .filter(|(w, _)| **w > 0.0)
        .map(|(w, row)| w * gap(a, b, row.probs()))
        .sum()
}

/// Random decomposition with `k` rows whose induced marginal is `p`:
/// rows are `p + scale * d_u` with `sum_u w_u d_u = 0`, each `d_u` supported
/// on the support of `p`, and the scale kept inside the simplex.
fn random_decomposition(rng: &mut ChaCha8Rng, p: &[f64], support: &[usize], k: usize) -> Option<AuxDecomposition> {
    let w = simplex::random_point(rng, k);
    let mut dirs: Vec<Vec<f64>> = (0..k)
        .map(|_| {
            let mut d = vec![0.0; p.len()];
            let raw = simplex::random_point(rng, support.len());
            for (&i, r) in support.iter().zip(raw) {
                d[i] = r;
            }
            d
        })
        .collect();
    let mean: Vec<f64> = (0..p.len()).map(|i| dirs.iter().zip(&w).map(|(d, wu)| wu * d[i]).sum()).collect();
    for d in &mut dirs {
        for (v, m) in d.iter_mut().zip(&mean) {
            *v -= m;
        }
    }
    // largest t with p + t d >= 0 for every row
    let mut t_max = f64::INFINITY;
    for d in &dirs {
        for &i in support {
            if d[i] < 0.0 {
                t_max = t_max.min(-p[i] / d[i]);
            }
        }
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return None;
    }
    let t = t_max * rng.gen::<f64>().max(1e-3);
    let rows = dirs
        .iter()
        .map(|d| Dist::normalized(p.iter().zip(d).map(|(pi, di)| (pi + t * di).max(0.0)).collect()))
        .collect::<Result<Vec<_>>>()
        .ok()?;
    AuxDecomposition::new(Dist::new(w).ok()?, rows).ok()
}

/// Grid over binary-`U` decompositions with marginal `p`: a grid row `r0`,
/// a weight `lambda`, and the row `r1 = (p - lambda r0) / (1 - lambda)` when
/// it is a distribution.
pub(crate) fn constrained_binary_decompositions(p: &Dist, divisions: usize) -> Vec<AuxDecomposition> {
    let n = p.len();
    let support = p.support();
    let used = simplex::effective_divisions(support.len(), divisions);
    let mut out = Vec::new();
    for r0 in simplex::grid_on(n, &support, used) {
        for k in 1..divisions {
            let lambda = k as f64 / divisions as f64;
            let r1: Vec<f64> = p.probs().iter().zip(&r0).map(|(pi, ri)| (pi - lambda * ri) / (1.0 - lambda)).collect();
            if r1.iter().any(|v| *v < -1e-12) {
                continue;
            }
            let r1 = match Dist::new(r1.into_iter().map(|v| v.max(0.0)).collect()) {
                Ok(d) => d,
                Err(_) => continue,
            };
            let pu = Dist::new(vec![lambda, 1.0 - lambda]).expect("grid weight");
            out.push(AuxDecomposition { pu, px_given_u: vec![dist_from_raw(r0.clone()), r1] });
        }
    }
    out
}

/// Is `a` essentially more capable than `b` on the candidate class, i.e.
/// `I(X;Y_b|U) <= I(X;Y_a|U)` for every `U -> X` whose input law lies in
/// the class? Sufficiency of the class itself is assumed, not checked.
pub fn test_essentially_more_capable(
    a: &Dmc,
    b: &Dmc,
    candidate_class: &[Dist],
    divisions: usize,
    seed: u64,
) -> Result<ClassVerdict> {
    same_input(a, b)?;
    if candidate_class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let n = a.input_size();
    if let Some(bad) = candidate_class.iter().find(|d| d.len() != n) {
        return Err(Error::DimensionMismatch { context: "candidate class member", expected: n, found: bad.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diagnostics = Diagnostics::new("auxiliary search over the candidate class", SEARCH_TOL);
    diagnostics.grid_divisions = Some(divisions);
    diagnostics.notes.push("sufficiency of the candidate class is assumed, not verified".into());
    let mut overall_min = f64::INFINITY;

    for p in candidate_class {
        let mut best: Option<(f64, AuxDecomposition)> = None;
        let consider = |aux: AuxDecomposition, best: &mut Option<(f64, AuxDecomposition)>| {
            let v = conditional_gap(a, b, &aux);
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                *best = Some((v, aux));
            }
        };
        consider(AuxDecomposition::trivial(p.clone()), &mut best);
        let grid = constrained_binary_decompositions(p, divisions);
        diagnostics.evaluations += grid.len() + 1;
        for aux in grid {
            consider(aux, &mut best);
        }
        let support = p.support();
        if support.len() > 1 {
            for k in 2..=n + 1 {
                for _ in 0..DEFAULT_RESTARTS {
                    if let Some(aux) = random_decomposition(&mut rng, p.probs(), &support, k) {
                        diagnostics.evaluations += 1;
                        consider(aux, &mut best);
                    }
                }
            }
        }
        let (v, aux) = best.expect("trivial decomposition always considered");
        overall_min = overall_min.min(v);
        if v < -SEARCH_TOL {
            diagnostics.extremum = Some(v);
            return Ok(ClassVerdict {
                test: OrderingTest::EssentiallyMoreCapable,
                outcome: Outcome::Fails,
                witness: Some(Witness::Aux { aux }),
                diagnostics,
            });
        }
    }
    diagnostics.extremum = Some(overall_min);
    Ok(ClassVerdict {
        test: OrderingTest::EssentiallyMoreCapable,
        outcome: Outcome::Holds,
        witness: Some(Witness::SufficientClass { class: candidate_class.to_vec() }),
        diagnostics,
    })
}

/// Looks for an auxiliary `U -> X` with `I(U;Y_a) < I(U;Y_b)`, i.e. a proof
/// that `a` is not less noisy than `b`. Returns the most violating
/// decomposition found, or `None`.
///
/// Two sources are scanned: two-point uniform `U` over a coarse grid of
/// input laws, then `budget` random decompositions with `|U|` between 2 and
/// `|X| + 1`.
pub fn search_less_noisy_counterexample(
    a: &Dmc,
    b: &Dmc,
    seed: u64,
    budget: usize,
) -> Result<Option<AuxDecomposition>> {
    same_input(a, b)?;
    let n = a.input_size();
    let violation = |aux: &AuxDecomposition| aux_info(aux, b).u_y - aux_info(aux, a).u_y;
    let mut best: Option<(f64, AuxDecomposition)> = None;
    let mut consider = |aux: AuxDecomposition| {
        let v = violation(&aux);
        if v > SEARCH_TOL && best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, aux));
        }
    };
    let points = simplex::grid(n, simplex::effective_divisions(n, 20).min(20));
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let rows = vec![dist_from_raw(points[i].clone()), dist_from_raw(points[j].clone())];
            consider(AuxDecomposition { pu: Dist::uniform(2), px_given_u: rows });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..budget {
        let k = 2 + s % n;
        let pu = Dist::new(simplex::random_point(&mut rng, k)).expect("dirichlet sample");
        let rows = (0..k).map(|_| Dist::new(simplex::random_point(&mut rng, n)).expect("dirichlet sample")).collect();
        consider(AuxDecomposition { pu, px_given_u: rows });
    }
    Ok(best.map(|(_, aux)| aux))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bscbec::{degrading_channel, BscBecPair};
    use crate::channels::{bec, bsc, cascade};

    fn z_channel() -> Dmc {
        Dmc::from_rows(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap()
    }

    #[test]
    fn degraded_examples() {
        let v = test_degraded(&bec(0.15).unwrap(), &bsc(0.1).unwrap()).unwrap();
        assert!(v.holds());
        let Some(Witness::DegradingChannel { channel }) = &v.witness else { panic!() };
        assert!(cascade(&bec(0.15).unwrap(), channel).unwrap().max_abs_diff(&bsc(0.1).unwrap()) < 1e-9);
        let reference = degrading_channel(&BscBecPair::new(0.1, 0.15).unwrap()).unwrap();
        assert!(cascade(&bec(0.15).unwrap(), &reference).unwrap().max_abs_diff(&bsc(0.1).unwrap()) < 1e-12);

        let v = test_degraded(&bsc(0.1).unwrap(), &bsc(0.2).unwrap()).unwrap();
        assert!(v.holds());
        let Some(Witness::DegradingChannel { channel }) = &v.witness else { panic!() };
        assert!(channel.max_abs_diff(&bsc(0.125).unwrap()) < 1e-9);

        let v = test_degraded(&bec(0.5).unwrap(), &bsc(0.1).unwrap()).unwrap();
        assert!(v.fails());
        assert!(v.recheck(&bec(0.5).unwrap(), &bsc(0.1).unwrap()).unwrap() > FEASIBILITY_TOL);
    }

    #[test]
    fn gap_examples() {
        let (a, b) = (bsc(0.1).unwrap(), bec(0.5).unwrap());
        assert_eq!(gap_functional(&a, &a, &Dist::binary(0.3).unwrap()).unwrap(), 0.0);
        let g = gap_functional(&a, &b, &Dist::uniform(2)).unwrap();
        assert!((g - 0.031_004_406_410_718_8).abs() < 1e-12);
        assert!(gap_functional(&a, &b, &Dist::binary(0.05).unwrap()).unwrap() < 0.0);
        assert!(gap_functional(&a, &b, &Dist::uniform(3)).is_err());
    }

    #[test]
    fn more_capable_examples() {
        assert!(test_more_capable(&bec(0.4).unwrap(), &bsc(0.1101).unwrap(), 50).unwrap().holds());
        let v = test_more_capable(&bsc(0.1).unwrap(), &bec(0.5).unwrap(), 50).unwrap();
        assert!(v.fails());
        let Some(Witness::Input { dist }) = &v.witness else { panic!() };
        assert!(dist.probs()[0] < 0.3 || dist.probs()[0] > 0.7);
        assert!(v.recheck(&bsc(0.1).unwrap(), &bec(0.5).unwrap()).unwrap() > SEARCH_TOL / 2.0);
        let v = test_more_capable(&bec(0.5).unwrap(), &bsc(0.1).unwrap(), 50).unwrap();
        assert!(v.fails());
        let Some(Witness::Input { dist }) = &v.witness else { panic!() };
        assert!((dist.probs()[0] - 0.5).abs() < 1e-6);
        assert!(test_more_capable(&z_channel(), &z_channel(), 50).unwrap().holds());
    }

    #[test]
    fn less_noisy_examples() {
        assert!(test_less_noisy(&bec(0.3).unwrap(), &bsc(0.1).unwrap(), 50).unwrap().holds());
        let (a, b) = (bec(0.4).unwrap(), bsc(0.1).unwrap());
        let v = test_less_noisy(&a, &b, 50).unwrap();
        assert!(v.fails());
        assert!(v.recheck(&a, &b).unwrap() > SEARCH_TOL / 2.0);
        assert!(test_less_noisy(&b, &b, 50).unwrap().holds());
    }

    #[test]
    fn dominance_examples() {
        assert!(test_dominant_c_symmetry(&bsc(0.1).unwrap(), &bec(0.5).unwrap(), 50).unwrap().holds());
        let (a, b) = (bsc(0.1).unwrap(), bec(0.4).unwrap());
        let v = test_dominant_c_symmetry(&a, &b, 50).unwrap();
        assert!(v.fails());
        assert!(v.recheck(&a, &b).unwrap() > 0.0);
        assert!(test_dominant_c_symmetry(&a, &a, 50).unwrap().holds());
        assert!(matches!(test_dominant_c_symmetry(&z_channel(), &a, 50), Err(Error::NotCSymmetric(_))));
    }

    #[test]
    fn essentially_less_noisy_examples() {
        let v = test_essentially_less_noisy(&bsc(0.1).unwrap(), &bec(0.5).unwrap(), 50).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness, Some(Witness::SufficientClass { class: vec![Dist::uniform(2)] }));
        assert!(test_essentially_less_noisy(&bsc(0.1).unwrap(), &bec(0.15).unwrap(), 50).unwrap().fails());
        let v = test_essentially_less_noisy(&z_channel(), &z_channel(), 50).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);
    }

    #[test]
    fn essentially_more_capable_needs_class() {
        let a = bsc(0.1).unwrap();
        assert!(matches!(test_essentially_more_capable(&a, &a, &[], 10, 0), Err(Error::EmptyClass)));
        assert!(test_essentially_more_capable(&a, &a, &[Dist::uniform(2)], 10, 0).unwrap().holds());
    }

    #[test]
    fn essentially_more_capable_bsc_bec_fails() {
        let (a, b) = (bsc(0.1).unwrap(), bec(0.5).unwrap());
        let v = test_essentially_more_capable(&a, &b, &[Dist::uniform(2)], 50, 0).unwrap();
        assert!(v.fails());
        let Some(Witness::Aux { aux }) = &v.witness else { panic!() };
        assert!(aux.marginal().max_abs_diff(&Dist::uniform(2)) < 1e-9);
        assert!(v.recheck(&a, &b).unwrap() > SEARCH_TOL / 2.0);
    }

    #[test]
    fn random_decompositions_keep_marginal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = [0.2, 0.3, 0.0, 0.5];
        for k in 2..6 {
            for _ in 0..50 {
                let aux = random_decomposition(&mut rng, &p, &[0, 1, 3], k).unwrap();
                let m = aux.marginal();
                for (x, y) in m.probs().iter().zip(&p) {
                    assert!((x - y).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn counterexample_search() {
        let (a, b) = (bec(0.5).unwrap(), bsc(0.1101).unwrap());
        let aux = search_less_noisy_counterexample(&a, &b, 3, 500).unwrap().unwrap();
        assert!(aux_info(&aux, &b).u_y > aux_info(&aux, &a).u_y);
        assert!(search_less_noisy_counterexample(&bec(0.3).unwrap(), &bsc(0.1).unwrap(), 3, 2000).unwrap().is_none());
        assert!(search_less_noisy_counterexample(&a, &a, 3, 200).unwrap().is_none());
    }
}
