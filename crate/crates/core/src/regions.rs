//! Rate regions of superposition coding and the matching outer bounds.
//!
//! Every region here is a union, over auxiliary decompositions `U -> X`, of
//! polygons cut out by a few mutual-information constraints. A sweep
//! evaluates the polygon corners for every decomposition on a grid and
//! returns the upper-right boundary of their convex hull; time sharing
//! makes that hull achievable whenever the individual polygons are.
//!
//! Receiver 1 (`a`, the "dominant" side) decodes both messages; receiver 2
//! (`b`, the weak side) decodes only the cloud center `U`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::Dmc;
use crate::classify::constrained_binary_decompositions;
use crate::error::{Error, Result};
use crate::probcore::{aux_info, AuxDecomposition, Dist};
use crate::simplex;

/// Slack of the Pareto and concavity checks on a frontier.
pub const FRONTIER_TOL: f64 = 1e-9;

/// Cap on the number of decompositions of an unconstrained sweep.
pub const MAX_SWEEP_DECOMPOSITIONS: usize = 2_500_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub r1: f64,
    pub r2: f64,
}

impl RatePoint {
    pub fn new(r1: f64, r2: f64) -> Self {
        RatePoint { r1, r2 }
    }
}

/// Resolution actually used by a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepInfo {
    pub row_divisions: usize,
    pub weight_divisions: usize,
    pub decompositions: usize,
    /// Distance the frontier moved when the random `|U| = 3` pass was added.
    pub ternary_shift: Option<f64>,
}

/// Upper-right boundary of a rate region: hull vertices with `r1`
/// increasing and `r2` strictly decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionFrontier {
    pub points: Vec<RatePoint>,
    /// Decomposition that produced each point.
    pub provenance: Vec<AuxDecomposition>,
    pub sweep: SweepInfo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Grid steps per unit on each free parameter (50 means step 0.02).
    pub divisions: usize,
    /// Random three-letter auxiliaries added after the binary sweep.
    pub ternary_samples: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { divisions: 50, ternary_samples: 0, seed: 0 }
    }
}

impl SweepConfig {
    pub fn with_divisions(divisions: usize) -> Self {
        SweepConfig { divisions, ..Default::default() }
    }

    pub fn step(&self) -> f64 {
        1.0 / self.divisions as f64
    }
}

/// Which set of constraints a sweep applies to each decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Constraints {
    /// `R2 <= I(U;Y2)`, `R1+R2 <= I(U;Y2) + I(X;Y1|U)`, `R1+R2 <= I(X;Y1)`.
    SumCapped,
    /// The first two constraints only.
    TwoSided,
    /// The first two plus `R1 <= I(X;Y1)`.
    R1Capped,
}

fn corners(kind: Constraints, a: &Dmc, b: &Dmc, aux: &AuxDecomposition) -> Vec<RatePoint> {
    let strong = aux_info(aux, a);
    let weak = aux_info(aux, b);
    let cloud = weak.u_y;
    let sum = cloud + strong.x_y_given_u;
    let cap = strong.x_y;
    match kind {
        Constraints::SumCapped | Constraints::TwoSided => {
            let s = if kind == Constraints::SumCapped { sum.min(cap) } else { sum };
            let r2 = cloud.min(s);
            vec![RatePoint::new(s - r2, r2), RatePoint::new(s, 0.0)]
        }
        Constraints::R1Capped => {
            let r1_max = cap.min(sum);
            vec![
                RatePoint::new(cap.min(sum - cloud), cloud),
                RatePoint::new(r1_max, sum - r1_max),
                RatePoint::new(r1_max, 0.0),
            ]
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

fn raw_dist(x: &[f64]) -> Dist {
    Dist::normalized(x.iter().map(|v| v.max(0.0)).collect()).expect("grid point on the simplex")
}

/// Binary-`U` decompositions with rows on a simplex grid and weights on a
/// grid of `divisions` steps, plus every constant `U`.
fn unconstrained_decompositions(n: usize, divisions: usize) -> (Vec<AuxDecomposition>, usize) {
    let weights = divisions.saturating_sub(1).max(1);
    let mut rows_div = simplex::effective_divisions(n, divisions);
    while rows_div > 1 {
        let g = simplex::grid_size(n, rows_div);
        if g * (g - 1) / 2 * weights <= MAX_SWEEP_DECOMPOSITIONS {
            break;
        }
        rows_div -= 1;
    }
    let points = simplex::grid(n, rows_div);
    let dists: Vec<Dist> = points.iter().map(|p| raw_dist(p)).collect();
    let mut out: Vec<AuxDecomposition> = dists.iter().cloned().map(AuxDecomposition::trivial).collect();
    for i in 0..dists.len() {
        for j in i + 1..dists.len() {
            for k in 1..divisions {
                let lambda = k as f64 / divisions as f64;
                out.push(AuxDecomposition {
                    pu: Dist::new(vec![lambda, 1.0 - lambda]).expect("grid weight"),
                    px_given_u: vec![dists[i].clone(), dists[j].clone()],
                });
            }
        }
    }
    (out, rows_div)
}

fn constrained_decompositions(class: &[Dist], divisions: usize) -> Vec<AuxDecomposition> {
    class
        .iter()
        .flat_map(|p| {
            std::iter::once(AuxDecomposition::trivial(p.clone())).chain(constrained_binary_decompositions(p, divisions))
        })
        .collect()
}

/// Random three-letter auxiliaries; with a class, the third row is solved
/// from the marginal and samples that leave the simplex are dropped.
fn ternary_decompositions(n: usize, class: Option<&[Dist]>, samples: usize, seed: u64) -> Vec<AuxDecomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for s in 0..samples {
        let pu = simplex::random_point(&mut rng, 3);
        match class {
            None => {
                let rows = (0..3).map(|_| Dist::new(simplex::random_point(&mut rng, n)).expect("dirichlet")).collect();
                out.push(AuxDecomposition { pu: Dist::new(pu).expect("dirichlet"), px_given_u: rows });
            }
            Some(class) => {
                let p = &class[s % class.len()];
                let support = p.support();
                let mut rows: Vec<Vec<f64>> = (0..2)
                    .map(|_| {
                        let mut r = vec![0.0; n];
                        for (&i, v) in support.iter().zip(simplex::random_point(&mut rng, support.len())) {
                            r[i] = v;
                        }
                        r
                    })
                    .collect();
                let last: Vec<f64> =
                    (0..n).map(|i| (p.probs()[i] - pu[0] * rows[0][i] - pu[1] * rows[1][i]) / pu[2]).collect();
                if last.iter().any(|v| *v < -1e-12) {
                    continue;
                }
                rows.push(last);
                out.push(AuxDecomposition {
                    pu: Dist::new(pu).expect("dirichlet"),
                    px_given_u: rows.iter().map(|r| raw_dist(r)).collect(),
                });
            }
        }
    }
    out
}

fn cross(o: RatePoint, a: RatePoint, b: RatePoint) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Upper-right concave boundary of the down-closed hull of `candidates`.
/// Each candidate carries the index of its decomposition.
fn pareto_hull(mut candidates: Vec<(RatePoint, usize)>) -> Vec<(RatePoint, usize)> {
    candidates.retain(|(p, _)| p.r1.is_finite() && p.r2.is_finite());
    for (p, _) in &mut candidates {
        p.r1 = p.r1.max(0.0);
        p.r2 = p.r2.max(0.0);
    }
    if candidates.is_empty() {
        return vec![(RatePoint::new(0.0, 0.0), 0)];
    }
    // the region is down-closed, so both axis projections belong to it
    let top = *candidates.iter().max_by(|x, y| x.0.r2.total_cmp(&y.0.r2).then(y.1.cmp(&x.1))).expect("nonempty");
    let right = *candidates.iter().max_by(|x, y| x.0.r1.total_cmp(&y.0.r1).then(y.1.cmp(&x.1))).expect("nonempty");
    candidates.push((RatePoint::new(0.0, top.0.r2), top.1));
    candidates.push((RatePoint::new(right.0.r1, 0.0), right.1));

    // sort by r1, then r2 descending, then provenance for determinism
    candidates.sort_by(|x, y| x.0.r1.total_cmp(&y.0.r1).then(y.0.r2.total_cmp(&x.0.r2)).then(x.1.cmp(&y.1)));
    candidates.dedup_by(|later, earlier| later.0.r1 == earlier.0.r1);

    let mut hull: Vec<(RatePoint, usize)> = Vec::new();
    for c in candidates {
        while hull.len() >= 2 && cross(hull[hull.len() - 2].0, hull[hull.len() - 1].0, c.0) >= 0.0 {
            hull.pop();
        }
        hull.push(c);
    }
    // keep only the strictly decreasing part
    let mut out: Vec<(RatePoint, usize)> = Vec::with_capacity(hull.len());
    for c in hull {
        while let Some(last) = out.last() {
            if last.0.r2 <= c.0.r2 + 1e-12 {
                out.pop();
            } else {
                break;
            }
        }
        out.push(c);
    }
    out
}

fn sweep(a: &Dmc, b: &Dmc, kind: Constraints, class: Option<&[Dist]>, cfg: &SweepConfig) -> Result<RegionFrontier> {
    same_input(a, b)?;
    let n = a.input_size();
    let divisions = cfg.divisions.max(2);
    let (decomps, row_divisions) = match class {
        None => unconstrained_decompositions(n, divisions),
        Some(class) => {
            if class.is_empty() {
                return Err(Error::EmptyClass);
            }
            if let Some(bad) = class.iter().find(|d| d.len() != n) {
                return Err(Error::DimensionMismatch { context: "class member", expected: n, found: bad.len() });
            }
            let rows = class
                .iter()
                .map(|p| simplex::effective_divisions(p.support().len(), divisions))
                .min()
                .unwrap_or(divisions);
            (constrained_decompositions(class, divisions), rows)
        }
    };
    if decomps.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let evaluate = |decomps: &[AuxDecomposition], offset: usize| -> Vec<(RatePoint, usize)> {
        decomps
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, aux)| corners(kind, a, b, aux).into_iter().map(move |p| (p, i + offset)))
            .collect()
    };
    let mut candidates = evaluate(&decomps, 0);
    let mut all = decomps;
    let mut hull = pareto_hull(candidates.clone());
    let mut ternary_shift = None;
    if cfg.ternary_samples > 0 {
        let extra = ternary_decompositions(n, class, cfg.ternary_samples, cfg.seed);
        candidates.extend(evaluate(&extra, all.len()));
        all.extend(extra);
        let refined = pareto_hull(candidates);
        let before = to_frontier(&hull, &all, SweepInfo::default_for(row_divisions, divisions, 0));
        let after = to_frontier(&refined, &all, SweepInfo::default_for(row_divisions, divisions, 0));
        ternary_shift = Some(frontier_distance(&before, &after));
        hull = refined;
    }
    let info = SweepInfo { row_divisions, weight_divisions: divisions, decompositions: all.len(), ternary_shift };
    Ok(to_frontier(&hull, &all, info))
}

impl SweepInfo {
    fn default_for(row_divisions: usize, weight_divisions: usize, decompositions: usize) -> Self {
        SweepInfo { row_divisions, weight_divisions, decompositions, ternary_shift: None }
    }
}

fn to_frontier(hull: &[(RatePoint, usize)], decomps: &[AuxDecomposition], sweep: SweepInfo) -> RegionFrontier {
    RegionFrontier {
        points: hull.iter().map(|(p, _)| *p).collect(),
        provenance: hull.iter().map(|(_, i)| decomps[*i].clone()).collect(),
        sweep,
    }
}

/// Superposition-coding region with `dominant` decoding both messages:
/// `R2 <= I(U;Y2)`, `R1+R2 <= I(U;Y2) + I(X;Y1|U)`, `R1+R2 <= I(X;Y1)`.
/// With a marginal constraint only decompositions inducing that input law
/// are swept.
pub fn superposition_region(
    dominant: &Dmc,
    weak: &Dmc,
    marginal_constraint: Option<&Dist>,
    cfg: &SweepConfig,
) -> Result<RegionFrontier> {
    match marginal_constraint {
        Some(p) => sweep(dominant, weak, Constraints::SumCapped, Some(std::slice::from_ref(p)), cfg),
        None => sweep(dominant, weak, Constraints::SumCapped, None, cfg),
    }
}

/// Capacity region when `a` is essentially less noisy than `b` on the
/// given sufficient class: the two constraints without the `I(X;Y1)` cap,
/// input laws restricted to the class.
pub fn theorem1_region(a: &Dmc, b: &Dmc, sufficient_class: &[Dist], cfg: &SweepConfig) -> Result<RegionFrontier> {
    if sufficient_class.is_empty() {
        return Err(Error::EmptyClass);
    }
    sweep(a, b, Constraints::TwoSided, Some(sufficient_class), cfg)
}

/// Capacity region when `a` is essentially more capable than `b` on the
/// given sufficient class: all three superposition constraints, input laws
/// restricted to the class.
pub fn theorem2_region(a: &Dmc, b: &Dmc, sufficient_class: &[Dist], cfg: &SweepConfig) -> Result<RegionFrontier> {
    if sufficient_class.is_empty() {
        return Err(Error::EmptyClass);
    }
    sweep(a, b, Constraints::SumCapped, Some(sufficient_class), cfg)
}

/// Outer bound `R2 <= I(U;Y2)`, `R1+R2 <= I(U;Y2) + I(X;Y1|U)`,
/// `R1 <= I(X;Y1)` over all decompositions.
pub fn outer_bound_eq_ob(a: &Dmc, b: &Dmc, cfg: &SweepConfig) -> Result<RegionFrontier> {
    sweep(a, b, Constraints::R1Capped, None, cfg)
}

/// Outer bound with the second auxiliary set equal to `X`, which turns its
/// extra constraints into `R1+R2 <= I(X;Y1)`.
pub fn outer_bound_vx(a: &Dmc, b: &Dmc, cfg: &SweepConfig) -> Result<RegionFrontier> {
    sweep(a, b, Constraints::SumCapped, None, cfg)
}

impl RegionFrontier {
    /// Boundary polyline including the horizontal run to the `R2` axis and
    /// the vertical drop to the `R1` axis.
    pub fn boundary(&self) -> Vec<RatePoint> {
        let mut out = Vec::with_capacity(self.points.len() + 2);
        if let Some(first) = self.points.first() {
            if first.r1 > 0.0 {
                out.push(RatePoint::new(0.0, first.r2));
            }
        }
        out.extend_from_slice(&self.points);
        if let Some(last) = self.points.last() {
            if last.r2 > 0.0 {
                out.push(RatePoint::new(last.r1, 0.0));
            }
        }
        out
    }

    /// Upper boundary value at `r1`, or `None` beyond the region.
    fn height_at(&self, r1: f64, tol: f64) -> Option<f64> {
        let first = self.points.first()?;
        let last = self.points.last()?;
        if r1 > last.r1 + tol {
            return None;
        }
        if r1 <= first.r1 {
            return Some(first.r2);
        }
        if r1 >= last.r1 {
            return Some(last.r2);
        }
        let k = self.points.partition_point(|p| p.r1 <= r1);
        let (p, q) = (self.points[k - 1], self.points[k]);
        let t = (r1 - p.r1) / (q.r1 - p.r1);
        Some(p.r2 + t * (q.r2 - p.r2))
    }

    /// Checks the Pareto and concavity invariants.
    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::Consistency("empty frontier".into()));
        }
        for w in self.points.windows(2) {
            if !(w[1].r1 > w[0].r1 && w[1].r2 < w[0].r2 + 1e-12) {
                return Err(Error::Consistency(format!("frontier not Pareto at {:?} -> {:?}", w[0], w[1])));
            }
        }
        for w in self.points.windows(3) {
            if cross(w[0], w[1], w[2]) > FRONTIER_TOL {
                return Err(Error::Consistency(format!("frontier not concave at {:?}", w[1])));
            }
        }
        Ok(())
    }

    /// CSV with header `r1,r2` and nine decimals per value.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r1,r2\n");
        for p in &self.points {
            s.push_str(&format!("{},{}\n", fixed9(p.r1), fixed9(p.r2)));
        }
        s
    }

    pub fn max_r1(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.r1)
    }

    pub fn max_r2(&self) -> f64 {
        self.points.first().map_or(0.0, |p| p.r2)
    }
}

/// Nine fixed decimals, without a sign on values that round to zero.
pub fn fixed9(v: f64) -> String {
    let s = format!("{v:.9}");
    if s.trim_start_matches('-').bytes().all(|c| c == b'0' || c == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Whether `p` lies in the down-closed region bounded by `f`, with `tol`
/// slack on both coordinates.
pub fn frontier_contains(f: &RegionFrontier, p: RatePoint, tol: f64) -> bool {
    if p.r1 < -tol || p.r2 < -tol {
        return false;
    }
    match f.height_at(p.r1.max(0.0), tol) {
        Some(h) => p.r2 <= h + tol,
        None => false,
    }
}

fn segment_distance(p: RatePoint, a: RatePoint, b: RatePoint) -> f64 {
    let (dx, dy) = (b.r1 - a.r1, b.r2 - a.r2);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 { (((p.r1 - a.r1) * dx + (p.r2 - a.r2) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let (qx, qy) = (a.r1 + t * dx, a.r2 + t * dy);
    ((p.r1 - qx).powi(2) + (p.r2 - qy).powi(2)).sqrt()
}

/// Distance from `p` to the polyline `line`.
pub fn polyline_distance(p: RatePoint, line: &[RatePoint]) -> f64 {
    match line.len() {
        0 => f64::INFINITY,
        1 => segment_distance(p, line[0], line[0]),
        _ => line.windows(2).map(|w| segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min),
    }
}

const HAUSDORFF_SAMPLE: f64 = 1e-3;

fn directed_hausdorff(from: &[RatePoint], to: &[RatePoint]) -> f64 {
    let mut worst = from.iter().map(|&p| polyline_distance(p, to)).fold(0.0, f64::max);
    for w in from.windows(2) {
        let len = ((w[1].r1 - w[0].r1).powi(2) + (w[1].r2 - w[0].r2).powi(2)).sqrt();
        let pieces = (len / HAUSDORFF_SAMPLE).ceil() as usize;
        for k in 1..pieces {
            let t = k as f64 / pieces as f64;
            let p = RatePoint::new(w[0].r1 + t * (w[1].r1 - w[0].r1), w[0].r2 + t * (w[1].r2 - w[0].r2));
            worst = worst.max(polyline_distance(p, to));
        }
    }
    worst
}

/// Symmetric Hausdorff distance between the two region boundaries, each
/// closed against the axes. Segments are sampled at spacing `1e-3`.
pub fn frontier_distance(f1: &RegionFrontier, f2: &RegionFrontier) -> f64 {
    let (b1, b2) = (f1.boundary(), f2.boundary());
    directed_hausdorff(&b1, &b2).max(directed_hausdorff(&b2, &b1))
}
