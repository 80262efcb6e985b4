//! Regular grids on the probability simplex and local refinement over it.

use rand::Rng;
use rand_distr::Exp1;

/// Upper bound on grid points a search enumerates before the resolution is
/// coarsened; see [`effective_divisions`].
pub const MAX_GRID_POINTS: usize = 5_000;

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of points of the grid with `divisions` steps on a simplex with
/// `dim` free coordinates plus one.
pub fn grid_size(dim: usize, divisions: usize) -> usize {
    if dim == 0 {
        return 0;
    }
    binomial(divisions + dim - 1, dim - 1)
}

/// Largest resolution not above `requested` whose grid over `dim`
/// coordinates stays within [`MAX_GRID_POINTS`].
pub fn effective_divisions(dim: usize, requested: usize) -> usize {
    let mut n = requested.max(1);
    while n > 1 && grid_size(dim, n) > MAX_GRID_POINTS {
        n -= 1;
    }
    n
}

/// All points of `{ x : x_i = k_i / divisions, sum x_i = 1 }` with mass only
/// on `support`, as full-length vectors over an alphabet of size `n`.
/// Points come out in lexicographic order of `(k_0, k_1, ...)` descending.
pub fn grid_on(n: usize, support: &[usize], divisions: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(grid_size(support.len(), divisions));
    let mut counts = vec![0usize; support.len()];
    fill(&mut counts, 0, divisions, &mut |c: &[usize]| {
        let mut x = vec![0.0; n];
        for (&i, &k) in support.iter().zip(c) {
            x[i] = k as f64 / divisions as f64;
        }
        out.push(x);
    });
    out
}

/// Full-support grid on an alphabet of size `n`.
pub fn grid(n: usize, divisions: usize) -> Vec<Vec<f64>> {
    let support: Vec<usize> = (0..n).collect();
    grid_on(n, &support, divisions)
}

fn fill(counts: &mut [usize], pos: usize, remaining: usize, emit: &mut impl FnMut(&[usize])) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        emit(counts);
        return;
    }
    for k in (0..=remaining).rev() {
        counts[pos] = k;
        fill(counts, pos + 1, remaining - k, emit);
    }
}

/// Uniformly distributed point of the simplex on `n` letters.
pub fn random_point(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Pairwise mass-transfer descent: repeatedly moves `step` of mass between
/// two coordinates of `support` while that lowers `f`, halving the step
/// when no move helps, down to `min_step`.
pub fn refine_min(
    f: &mut impl FnMut(&[f64]) -> f64,
    start: Vec<f64>,
    support: &[usize],
    initial_step: f64,
    min_step: f64,
) -> (Vec<f64>, f64, usize) {
    let mut x = start;
    let mut best = f(&x);
    let mut evals = 1;
    let mut step = initial_step;
    let mut budget = 20_000usize;
    while step >= min_step && budget > 0 {
        let mut improved = false;
        for &i in support {
            for &j in support {
                if i == j || x[j] <= 0.0 {
                    continue;
                }
                let mv = step.min(x[j]);
                let mut cand = x.clone();
                cand[i] += mv;
                cand[j] -= mv;
                let v = f(&cand);
                evals += 1;
                budget = budget.saturating_sub(1);
                if v < best {
                    best = v;
                    x = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best, evals)
}
