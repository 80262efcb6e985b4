//! Information-theoretic primitives over finite alphabets.
//!
//! Everything is measured in bits. Cells whose probability falls below
//! [`ZERO_CELL`] are skipped, which realizes the `0 log 0 = 0` convention.

use serde::{Deserialize, Serialize};

use crate::channels::Dmc;
use crate::error::{Error, Result};

/// Slack allowed on the simplex sum of a distribution.
pub const SUM_TOL: f64 = 1e-12;

/// Probabilities below this are treated as exact zeros in log terms.
pub const ZERO_CELL: f64 = 1e-15;

/// Tolerance of the Markov check performed by [`Joint3::new`].
pub const MARKOV_TOL: f64 = 1e-10;

fn check_unit(what: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || !(-SUM_TOL..=1.0 + SUM_TOL).contains(&value) {
        return Err(Error::Domain { what, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

#[inline]
fn plogp(p: f64) -> f64 {
    if p < ZERO_CELL {
        0.0
    } else {
        -p * p.log2()
    }
}

/// A probability vector on a finite alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Dist {
    probs: Vec<f64>,
}

impl Dist {
    /// Validates `probs` without renormalizing. Entries within [`SUM_TOL`]
    /// below zero are clamped to zero.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDist("empty alphabet".into()));
        }
        let mut probs = probs;
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -SUM_TOL || *p > 1.0 + SUM_TOL {
                return Err(Error::InvalidDist(format!("entry {i} = {p} outside [0, 1]")));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDist(format!("entries sum to {sum}")));
        }
        Ok(Dist { probs })
    }

    /// Scales nonnegative weights onto the simplex. This is the only
    /// constructor that renormalizes.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDist("weights must be finite and nonnegative".into()));
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidDist("weights sum to zero".into()));
        }
        Dist::new(weights.into_iter().map(|w| w / sum).collect())
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution on an empty alphabet");
        Dist { probs: vec![1.0 / n as f64; n] }
    }

    /// Uniform distribution on `support`, zero elsewhere.
    pub fn uniform_on(n: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() || support.iter().any(|&i| i >= n) {
            return Err(Error::InvalidDist(format!("support {support:?} not inside alphabet of size {n}")));
        }
        let mut probs = vec![0.0; n];
        for &i in support {
            probs[i] = 1.0;
        }
        Dist::normalized(probs)
    }

    pub fn point(n: usize, index: usize) -> Self {
        assert!(index < n, "point mass outside the alphabet");
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Dist { probs }
    }

    /// Binary distribution with `P(0) = x`.
    pub fn binary(x: f64) -> Result<Self> {
        let x = check_unit("P(X=0) must lie in [0, 1]", x)?;
        Ok(Dist { probs: vec![x, 1.0 - x] })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Indices carrying positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.probs[i] > 0.0).collect()
    }

    pub fn max_abs_diff(&self, other: &Dist) -> f64 {
        self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for Dist {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Dist::new(probs)
    }
}

impl From<Dist> for Vec<f64> {
    fn from(d: Dist) -> Self {
        d.probs
    }
}

/// Joint distribution of two finite random variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Joint2 {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Joint2 {
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        let rows = table.len();
        let cols = table.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDist("empty joint table".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in &table {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { context: "joint table row", expected: cols, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::from_flat(rows, cols, data)
    }

    fn from_flat(rows: usize, cols: usize, mut data: Vec<f64>) -> Result<Self> {
        for p in &mut data {
            if !p.is_finite() || *p < -SUM_TOL {
                return Err(Error::InvalidDist(format!("negative joint entry {p}")));
            }
            *p = p.max(0.0);
        }
        let sum: f64 = data.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDist(format!("joint entries sum to {sum}")));
        }
        Ok(Joint2 { rows, cols, data })
    }

    /// Joint of an input distribution pushed through a channel.
    pub fn from_input(input: &Dist, channel: &Dmc) -> Result<Self> {
        if input.len() != channel.input_size() {
            return Err(Error::DimensionMismatch {
                context: "input distribution vs channel",
                expected: channel.input_size(),
                found: input.len(),
            });
        }
        let cols = channel.output_size();
        let mut data = Vec::with_capacity(input.len() * cols);
        for (x, &px) in input.probs().iter().enumerate() {
            data.extend(channel.row(x).iter().map(|w| px * w));
        }
        Self::from_flat(input.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.data[a * self.cols + b]
    }

    pub fn row(&self, a: usize) -> &[f64] {
        &self.data[a * self.cols..(a + 1) * self.cols]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        (0..self.rows).map(|a| self.row(a).iter().sum()).collect()
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for a in 0..self.rows {
            for (o, p) in out.iter_mut().zip(self.row(a)) {
                *o += p;
            }
        }
        out
    }

    /// Splits the table into the row marginal and per-row conditionals. Rows
    /// with zero mass get a uniform conditional.
    pub fn to_aux(&self) -> AuxDecomposition {
        let pu = self.row_marginal();
        let rows = pu
            .iter()
            .enumerate()
            .map(|(a, &m)| {
                if m <= 0.0 {
                    Dist::uniform(self.cols)
                } else {
                    Dist { probs: self.row(a).iter().map(|p| p / m).collect() }
                }
            })
            .collect();
        AuxDecomposition { pu: Dist { probs: pu }, px_given_u: rows }
    }
}

/// Joint distribution of `(U, X, Y)` obeying `U -> X -> Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Joint3 {
    nu: usize,
    nx: usize,
    ny: usize,
    data: Vec<f64>,
}

impl Joint3 {
    /// Validates the table, including the Markov property
    /// `p(u,x,y) p(x) = p(u,x) p(x,y)`.
    pub fn new(table: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let nu = table.len();
        let nx = table.first().map_or(0, Vec::len);
        let ny = table.first().and_then(|t| t.first()).map_or(0, Vec::len);
        if nu == 0 || nx == 0 || ny == 0 {
            return Err(Error::InvalidDist("empty joint table".into()));
        }
        let mut data = Vec::with_capacity(nu * nx * ny);
        for slab in &table {
            if slab.len() != nx {
                return Err(Error::DimensionMismatch { context: "joint slab", expected: nx, found: slab.len() });
            }
            for row in slab {
                if row.len() != ny {
                    return Err(Error::DimensionMismatch { context: "joint row", expected: ny, found: row.len() });
                }
                data.extend_from_slice(row);
            }
        }
        if data.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDist("negative joint entry".into()));
        }
        let sum: f64 = data.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDist(format!("joint entries sum to {sum}")));
        }
        let joint = Joint3 { nu, nx, ny, data };
        joint.check_markov()?;
        Ok(joint)
    }

    fn check_markov(&self) -> Result<()> {
        let px = self.x_marginal();
        let pux = self.ux_marginal();
        let pxy = self.xy_marginal();
        for u in 0..self.nu {
            for x in 0..self.nx {
                if px[x] <= 0.0 {
                    continue;
                }
                for y in 0..self.ny {
                    let lhs = self.get(u, x, y) * px[x];
                    let rhs = pux.get(u, x) * pxy.get(x, y);
                    if (lhs - rhs).abs() > MARKOV_TOL {
                        return Err(Error::InvalidDist(format!(
                            "U -> X -> Y violated at ({u}, {x}, {y}): {lhs} vs {rhs}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.nu, self.nx, self.ny)
    }

    pub fn get(&self, u: usize, x: usize, y: usize) -> f64 {
        self.data[(u * self.nx + x) * self.ny + y]
    }

    pub fn u_marginal(&self) -> Vec<f64> {
        (0..self.nu).map(|u| self.data[u * self.nx * self.ny..(u + 1) * self.nx * self.ny].iter().sum()).collect()
    }

    pub fn x_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.nx];
        for u in 0..self.nu {
            for (x, o) in out.iter_mut().enumerate() {
                *o += (0..self.ny).map(|y| self.get(u, x, y)).sum::<f64>();
            }
        }
        out
    }

    fn marginal2(&self, f: impl Fn(usize, usize, usize) -> (usize, usize), rows: usize, cols: usize) -> Joint2 {
        let mut data = vec![0.0; rows * cols];
        for u in 0..self.nu {
            for x in 0..self.nx {
                for y in 0..self.ny {
                    let (a, b) = f(u, x, y);
                    data[a * cols + b] += self.get(u, x, y);
                }
            }
        }
        Joint2 { rows, cols, data }
    }

    pub fn ux_marginal(&self) -> Joint2 {
        self.marginal2(|u, x, _| (u, x), self.nu, self.nx)
    }

    pub fn uy_marginal(&self) -> Joint2 {
        self.marginal2(|u, _, y| (u, y), self.nu, self.ny)
    }

    pub fn xy_marginal(&self) -> Joint2 {
        self.marginal2(|_, x, y| (x, y), self.nx, self.ny)
    }

    /// The `(X, Y)` table conditioned on `U = u`, or `None` if `P(U = u) = 0`.
    pub fn slice(&self, u: usize) -> Option<Joint2> {
        let block = &self.data[u * self.nx * self.ny..(u + 1) * self.nx * self.ny];
        let mass: f64 = block.iter().sum();
        if mass < ZERO_CELL {
            return None;
        }
        Some(Joint2 { rows: self.nx, cols: self.ny, data: block.iter().map(|p| p / mass).collect() })
    }
}

/// A superposition input: a law for `U` and one conditional law of `X` per
/// value of `U`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxDecomposition {
    pub pu: Dist,
    pub px_given_u: Vec<Dist>,
}

impl AuxDecomposition {
    pub fn new(pu: Dist, px_given_u: Vec<Dist>) -> Result<Self> {
        if pu.len() != px_given_u.len() {
            return Err(Error::DimensionMismatch {
                context: "U alphabet vs conditional rows",
                expected: pu.len(),
                found: px_given_u.len(),
            });
        }
        let nx = px_given_u[0].len();
        if let Some(bad) = px_given_u.iter().find(|d| d.len() != nx) {
            return Err(Error::DimensionMismatch { context: "conditional row", expected: nx, found: bad.len() });
        }
        Ok(AuxDecomposition { pu, px_given_u })
    }

    /// `U` constant: a single row equal to `px`.
    pub fn trivial(px: Dist) -> Self {
        AuxDecomposition { pu: Dist::point(1, 0), px_given_u: vec![px] }
    }

    /// `U = X` under the input law `px`.
    pub fn identity(px: &Dist) -> Self {
        let n = px.len();
        AuxDecomposition { pu: px.clone(), px_given_u: (0..n).map(|i| Dist::point(n, i)).collect() }
    }

    pub fn input_size(&self) -> usize {
        self.px_given_u[0].len()
    }

    /// Induced input law `p(x) = sum_u p(u) p(x|u)`.
    pub fn marginal(&self) -> Dist {
        let mut px = vec![0.0; self.input_size()];
        for (w, row) in self.pu.probs().iter().zip(&self.px_given_u) {
            for (o, p) in px.iter_mut().zip(row.probs()) {
                *o += w * p;
            }
        }
        Dist { probs: px }
    }
}

/// `-x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    let x = check_unit("binary entropy argument must lie in [0, 1]", x)?;
    Ok(plogp(x) + plogp(1.0 - x))
}

/// Crossover parameter of two cascaded binary symmetric channels.
pub fn binary_convolve(x: f64, p: f64) -> Result<f64> {
    let x = check_unit("convolution argument must lie in [0, 1]", x)?;
    let p = check_unit("convolution parameter must lie in [0, 1]", p)?;
    Ok(x * (1.0 - p) + p * (1.0 - x))
}

pub fn entropy(d: &Dist) -> f64 {
    entropy_of(d.probs())
}

pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| plogp(p)).sum()
}

pub fn mutual_information(j: &Joint2) -> f64 {
    let pa = j.row_marginal();
    let pb = j.col_marginal();
    let mut total = 0.0;
    for a in 0..j.rows {
        for b in 0..j.cols {
            let pab = j.get(a, b);
            if pab < ZERO_CELL {
                continue;
            }
            total += pab * (pab / (pa[a] * pb[b])).log2();
        }
    }
    total.max(0.0)
}

/// `I(X;Y|U)` evaluated as `sum_u p(u) I(X;Y|U=u)`.
pub fn conditional_mi(j: &Joint3) -> f64 {
    j.u_marginal().iter().enumerate().filter_map(|(u, &w)| j.slice(u).map(|s| w * mutual_information(&s))).sum()
}

/// `p(u,x,y) = p(u) p(x|u) W(y|x)`.
pub fn assemble_joint(pu: &Dist, px_given_u: &[Dist], channel: &Dmc) -> Result<Joint3> {
    if pu.len() != px_given_u.len() {
        return Err(Error::DimensionMismatch {
            context: "U alphabet vs conditional rows",
            expected: pu.len(),
            found: px_given_u.len(),
        });
    }
    let (nx, ny) = (channel.input_size(), channel.output_size());
    let mut data = Vec::with_capacity(pu.len() * nx * ny);
    for (w, row) in pu.probs().iter().zip(px_given_u) {
        if row.len() != nx {
            return Err(Error::DimensionMismatch {
                context: "conditional row vs channel",
                expected: nx,
                found: row.len(),
            });
        }
        for (x, px) in row.probs().iter().enumerate() {
            data.extend(channel.row(x).iter().map(|t| w * px * t));
        }
    }
    Ok(Joint3 { nu: pu.len(), nx, ny, data })
}

/// Information terms of one auxiliary decomposition through one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxInfo {
    /// `I(U;Y)`
    pub u_y: f64,
    /// `I(X;Y|U)`
    pub x_y_given_u: f64,
    /// `I(X;Y)`
    pub x_y: f64,
}

/// Evaluates `I(U;Y)`, `I(X;Y|U)` and `I(X;Y)` via the chain rule
/// `I(X;Y) = I(U;Y) + I(X;Y|U)`, which holds because `U -> X -> Y`.
pub fn aux_info(aux: &AuxDecomposition, channel: &Dmc) -> AuxInfo {
    let x_y = channel.mi_of(aux.marginal().probs());
    let x_y_given_u: f64 = aux
        .pu
        .probs()
        .iter()
        .zip(&aux.px_given_u)
        .filter(|(w, _)| **w > 0.0)
        .map(|(w, row)| w * channel.mi_of(row.probs()))
        .sum();
    AuxInfo { u_y: (x_y - x_y_given_u).max(0.0), x_y_given_u, x_y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{bec, bsc};

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.1).unwrap() - 0.468_995_593_589_281_2).abs() < 1e-15);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.01).is_err());
    }

    #[test]
    fn convolution_values() {
        assert_eq!(binary_convolve(0.37, 0.0).unwrap(), 0.37);
        assert!((binary_convolve(0.37, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((binary_convolve(0.3, 0.1).unwrap() - 0.34).abs() < 1e-15);
        assert!(binary_convolve(0.3, 1.2).is_err());
    }

    #[test]
    fn dist_validation() {
        assert!(Dist::new(vec![0.5, 0.6]).is_err());
        assert!(Dist::new(vec![-0.1, 1.1]).is_err());
        assert!(Dist::new(vec![]).is_err());
        assert!(Dist::new(vec![0.25; 4]).is_ok());
        let d = Dist::normalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(d.probs(), &[0.25, 0.75]);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, "[0.25,0.75]");
        assert!(serde_json::from_str::<Dist>("[0.2,0.2]").is_err());
    }

    #[test]
    fn entropy_values() {
        assert!((entropy(&Dist::uniform(4)) - 2.0).abs() < 1e-15);
        assert_eq!(entropy(&Dist::point(3, 1)), 0.0);
        let d = Dist::new(vec![0.1, 0.9]).unwrap();
        assert!((entropy(&d) - binary_entropy(0.1).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn mutual_information_values() {
        let product = Joint2::new(vec![vec![0.06, 0.14], vec![0.24, 0.56]]).unwrap();
        assert!(mutual_information(&product).abs() < 1e-15);
        let ident = Joint2::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!((mutual_information(&ident) - 1.0).abs() < 1e-15);
        let through = Joint2::from_input(&Dist::uniform(2), &bsc(0.1).unwrap()).unwrap();
        assert!((mutual_information(&through) - 0.531_004_406_410_718_8).abs() < 1e-12);
    }

    #[test]
    fn conditional_mi_edge_cases() {
        let ch = bsc(0.1).unwrap();
        let px = Dist::binary(0.3).unwrap();
        // U independent of (X, Y)
        let pu = Dist::new(vec![0.4, 0.6]).unwrap();
        let j = assemble_joint(&pu, &[px.clone(), px.clone()], &ch).unwrap();
        let direct = mutual_information(&Joint2::from_input(&px, &ch).unwrap());
        assert!((conditional_mi(&j) - direct).abs() < 1e-12);
        // U = X
        let j = assemble_joint(&px, &[Dist::point(2, 0), Dist::point(2, 1)], &ch).unwrap();
        assert!(conditional_mi(&j).abs() < 1e-15);
    }

    #[test]
    fn assemble_joint_point_mass_collapses() {
        let ch = bec(0.5).unwrap();
        let px = Dist::binary(0.2).unwrap();
        let j = assemble_joint(&Dist::point(1, 0), std::slice::from_ref(&px), &ch).unwrap();
        let flat = Joint2::from_input(&px, &ch).unwrap();
        assert_eq!(j.dims(), (1, 2, 3));
        for x in 0..2 {
            for y in 0..3 {
                assert_eq!(j.get(0, x, y), flat.get(x, y));
            }
        }
    }

    #[test]
    fn assemble_joint_rejects_mismatch() {
        let ch = bec(0.5).unwrap();
        let err = assemble_joint(&Dist::uniform(2), &[Dist::uniform(3), Dist::uniform(3)], &ch);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
        let err = assemble_joint(&Dist::uniform(3), &[Dist::uniform(2), Dist::uniform(2)], &ch);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn joint3_rejects_non_markov() {
        // Y copies U while X is independent of U.
        let t = vec![vec![vec![0.25, 0.0], vec![0.25, 0.0]], vec![vec![0.0, 0.25], vec![0.0, 0.25]]];
        assert!(Joint3::new(t).is_err());
        let ok = vec![vec![vec![0.25, 0.0], vec![0.0, 0.25]], vec![vec![0.25, 0.0], vec![0.0, 0.25]]];
        assert!(Joint3::new(ok).is_ok());
    }

    #[test]
    fn aux_info_matches_joint_route() {
        let ch = bsc(0.1101).unwrap();
        let rows = vec![Dist::binary(0.95).unwrap(), Dist::binary(0.05).unwrap()];
        let pu = Dist::uniform(2);
        let aux = AuxDecomposition::new(pu.clone(), rows.clone()).unwrap();
        let info = aux_info(&aux, &ch);
        let j = assemble_joint(&pu, &rows, &ch).unwrap();
        assert!((info.u_y - mutual_information(&j.uy_marginal())).abs() < 1e-12);
        assert!((info.x_y_given_u - conditional_mi(&j)).abs() < 1e-12);
        assert!((info.x_y - mutual_information(&j.xy_marginal())).abs() < 1e-12);
    }
}
