//! Discrete memoryless channels: builders, cascading, c-symmetry detection
//! and the cyclic-shift symmetrization of an auxiliary/input pair.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::probcore::{self, aux_info, AuxDecomposition, AuxInfo, Dist, Joint2, SUM_TOL};

/// Largest output alphabet searched exhaustively for a c-symmetry generator.
pub const MAX_SYMMETRY_OUTPUTS: usize = 8;

/// Entrywise tolerance of the c-symmetry condition.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A finite channel `p(y|x)` stored as a row-stochastic matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DmcFile", into = "DmcFile")]
pub struct Dmc {
    rows: Vec<Vec<f64>>,
    output_labels: Vec<String>,
    #[serde(skip)]
    row_entropy: Vec<f64>,
}

/// On-disk layout of a channel.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DmcFile {
    pub input_size: usize,
    pub output_labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl TryFrom<DmcFile> for Dmc {
    type Error = Error;

    fn try_from(f: DmcFile) -> Result<Self> {
        if f.input_size != f.rows.len() {
            return Err(Error::InvalidChannel(format!("input_size {} but {} rows", f.input_size, f.rows.len())));
        }
        Dmc::new(f.rows, f.output_labels)
    }
}

impl From<Dmc> for DmcFile {
    fn from(c: Dmc) -> Self {
        DmcFile { input_size: c.rows.len(), output_labels: c.output_labels, rows: c.rows }
    }
}

impl Dmc {
    pub fn new(rows: Vec<Vec<f64>>, output_labels: Vec<String>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidChannel("no input symbols".into()));
        }
        let n = output_labels.len();
        if n == 0 {
            return Err(Error::InvalidChannel("no output symbols".into()));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidChannel(format!("row {x} has {} entries, expected {n}", row.len())));
            }
            if let Some(bad) = row.iter().find(|p| !p.is_finite() || **p < 0.0 || **p > 1.0) {
                return Err(Error::InvalidChannel(format!("row {x} has entry {bad} outside [0, 1]")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > SUM_TOL {
                return Err(Error::InvalidChannel(format!("row {x} sums to {sum}")));
            }
        }
        let row_entropy = rows.iter().map(|r| probcore::entropy_of(r)).collect();
        Ok(Dmc { rows, output_labels, row_entropy })
    }

    /// Channel with outputs labelled `"0"`, `"1"`, ...
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        Dmc::new(rows, (0..n).map(|i| i.to_string()).collect())
    }

    /// Like [`Dmc::new`] but rescales each row to sum to one first.
    pub fn normalized(rows: Vec<Vec<f64>>, output_labels: Vec<String>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(x, row)| {
                if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                    return Err(Error::InvalidChannel(format!("row {x} has a negative entry")));
                }
                Dist::normalized(row)
                    .map(Vec::from)
                    .map_err(|_| Error::InvalidChannel(format!("row {x} has zero mass")))
            })
            .collect::<Result<Vec<_>>>()?;
        Dmc::new(rows, output_labels)
    }

    pub fn input_size(&self) -> usize {
        self.rows.len()
    }

    pub fn output_size(&self) -> usize {
        self.output_labels.len()
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.rows[x][y]
    }

    pub fn output_labels(&self) -> &[String] {
        &self.output_labels
    }

    pub fn max_abs_diff(&self, other: &Dmc) -> f64 {
        self.rows.iter().flatten().zip(other.rows.iter().flatten()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// `I(X;Y)` for an input law given as a raw slice, computed as
    /// `H(Y) - sum_x p(x) H(Y|X=x)`. The caller guarantees the length.
    pub(crate) fn mi_of(&self, px: &[f64]) -> f64 {
        let mut h_y = 0.0;
        for y in 0..self.output_size() {
            let py: f64 = px.iter().zip(&self.rows).map(|(p, r)| p * r[y]).sum();
            if py >= probcore::ZERO_CELL {
                h_y -= py * py.log2();
            }
        }
        let h_y_given_x: f64 = px.iter().zip(&self.row_entropy).map(|(p, h)| p * h).sum();
        (h_y - h_y_given_x).max(0.0)
    }
}

/// Binary symmetric channel with crossover `p`, `0 <= p <= 1/2`.
pub fn bsc(p: f64) -> Result<Dmc> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::Domain { what: "BSC crossover must lie in [0, 1/2]", value: p });
    }
    Dmc::new(vec![vec![1.0 - p, p], vec![p, 1.0 - p]], vec!["0".into(), "1".into()])
}

/// Binary erasure channel with outputs ordered `["0", "?", "1"]`.
pub fn bec(e: f64) -> Result<Dmc> {
    if !(0.0..=1.0).contains(&e) {
        return Err(Error::Domain { what: "BEC erasure probability must lie in [0, 1]", value: e });
    }
    Dmc::new(vec![vec![1.0 - e, e, 0.0], vec![0.0, e, 1.0 - e]], vec!["0".into(), "?".into(), "1".into()])
}

/// Four-input pair separating "more capable" from "essentially more
/// capable". Receiver 1 sees inputs {0, 1} cleanly and inputs {2, 3}
/// through BSC(0.5); receiver 2 sees them through BSC(0.1) and BSC(0.4).
pub fn split_input_pair() -> (Dmc, Dmc) {
    let y1 = Dmc::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5], vec![0.5, 0.5]]);
    let y2 = Dmc::from_rows(vec![vec![0.9, 0.1], vec![0.1, 0.9], vec![0.6, 0.4], vec![0.4, 0.6]]);
    (y1.expect("valid rows"), y2.expect("valid rows"))
}

/// `X -> Y -> Z`: the matrix product of the two channels.
pub fn cascade(a: &Dmc, b: &Dmc) -> Result<Dmc> {
    if a.output_size() != b.input_size() {
        return Err(Error::DimensionMismatch {
            context: "cascade: first output vs second input",
            expected: a.output_size(),
            found: b.input_size(),
        });
    }
    let rows: Vec<Vec<f64>> = a
        .rows
        .iter()
        .map(|ra| {
            let mut out = vec![0.0; b.output_size()];
            for (w, rb) in ra.iter().zip(&b.rows) {
                for (o, v) in out.iter_mut().zip(rb) {
                    *o += w * v;
                }
            }
            out
        })
        .collect();
    Dmc::normalized(rows, b.output_labels.clone())
}

/// `I(X;Y)` of `input` sent through `c`.
pub fn channel_mi(c: &Dmc, input: &Dist) -> Result<f64> {
    if input.len() != c.input_size() {
        return Err(Error::DimensionMismatch {
            context: "input distribution vs channel",
            expected: c.input_size(),
            found: input.len(),
        });
    }
    Ok(c.mi_of(input.probs()))
}

/// Generator `pi` of the output permutations of a c-symmetric channel: the
/// shift by `j` uses `pi` applied `j` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CSymmetryWitness {
    pub generator: Vec<usize>,
}

impl CSymmetryWitness {
    /// `pi_j = pi` composed `j` times.
    pub fn shift(&self, j: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.generator.len()).collect();
        for _ in 0..j {
            perm = perm.iter().map(|&y| self.generator[y]).collect();
        }
        perm
    }

    /// Checks `P(pi_j(y) | (i + j) mod m) = P(y | i)` for every shift.
    pub fn verify(&self, c: &Dmc) -> Result<()> {
        let n = c.output_size();
        if self.generator.len() != n || !is_permutation(&self.generator) {
            return Err(Error::InvalidWitness(format!("{:?} is not a permutation of {n} outputs", self.generator)));
        }
        let m = c.input_size();
        for j in 0..m {
            let pj = self.shift(j);
            if let Some((i, y)) = symmetry_violation(c, &pj, j) {
                return Err(Error::InvalidWitness(format!("shift {j} fails at input {i}, output {y}")));
            }
        }
        Ok(())
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&y| y < perm.len() && !std::mem::replace(&mut seen[y], true))
}

fn symmetry_violation(c: &Dmc, perm: &[usize], shift: usize) -> Option<(usize, usize)> {
    let m = c.input_size();
    (0..m)
        .cartesian_product(0..c.output_size())
        .find(|&(i, y)| (c.entry((i + shift) % m, perm[y]) - c.entry(i, y)).abs() > SYMMETRY_TOL)
}

/// Searches output permutations in lexicographic order for a generator of a
/// c-symmetry family. Only single-generator families are found.
pub fn detect_c_symmetry(c: &Dmc) -> Result<Option<CSymmetryWitness>> {
    let n = c.output_size();
    if n > MAX_SYMMETRY_OUTPUTS {
        return Err(Error::AlphabetTooLarge(n));
    }
    Ok((0..n)
        .permutations(n)
        .find(|perm| symmetry_violation(c, perm, 1).is_none())
        .map(|generator| CSymmetryWitness { generator }))
}

/// Joint law of `(U~, X')` with `U~ = (W', U')`, built by averaging the
/// original `(U, X)` law over all cyclic shifts of the input alphabet.
///
/// Row index of `U~` is `j * |U| + u` for shift `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrizedJoint {
    shifts: usize,
    aux_size: usize,
    joint: Joint2,
}

impl SymmetrizedJoint {
    pub fn shifts(&self) -> usize {
        self.shifts
    }

    pub fn aux_size(&self) -> usize {
        self.aux_size
    }

    pub fn joint(&self) -> &Joint2 {
        &self.joint
    }

    pub fn x_marginal(&self) -> Vec<f64> {
        self.joint.col_marginal()
    }

    /// `(U~, X')` as an auxiliary decomposition.
    pub fn aux(&self) -> AuxDecomposition {
        self.joint.to_aux()
    }

    /// The `(U', X')` law conditioned on `W' = j`.
    pub fn shift_slice(&self, j: usize) -> Joint2 {
        let m = self.shifts as f64;
        let rows =
            (0..self.aux_size).map(|u| self.joint.row(j * self.aux_size + u).iter().map(|p| p * m).collect()).collect();
        Joint2::new(rows).expect("shift slice of a valid symmetrized joint")
    }
}

/// Builds the shift-averaged law
/// `P(W'=j, U'=u, X'=i) = P(U=u, X=(i+j) mod m) / m`.
///
/// Both receivers' channels must be c-symmetric, witnessed by the given
/// generators; the witnesses are re-verified here.
pub fn symmetrize(
    joint: &Joint2,
    first: (&Dmc, &CSymmetryWitness),
    second: (&Dmc, &CSymmetryWitness),
) -> Result<SymmetrizedJoint> {
    let m = joint.cols();
    for (c, w) in [first, second] {
        if c.input_size() != m {
            return Err(Error::DimensionMismatch {
                context: "joint X alphabet vs channel",
                expected: m,
                found: c.input_size(),
            });
        }
        w.verify(c)?;
    }
    let nu = joint.rows();
    let scale = 1.0 / m as f64;
    let mut rows = Vec::with_capacity(m * nu);
    for j in 0..m {
        for u in 0..nu {
            rows.push((0..m).map(|i| scale * joint.get(u, (i + j) % m)).collect());
        }
    }
    Ok(SymmetrizedJoint { shifts: m, aux_size: nu, joint: Joint2::new(rows)? })
}

/// Information terms of one shift slice `W' = j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftInfo {
    pub shift: usize,
    pub info: AuxInfo,
}

/// Compares the information terms of an original `(U, X)` law with its
/// symmetrization through one receiver's channel.
#[derive(Debug, Clone, PartialEq)]
pub struct SufficiencyReport {
    pub original: AuxInfo,
    pub symmetrized: AuxInfo,
    pub per_shift: Vec<ShiftInfo>,
}

impl SufficiencyReport {
    pub fn new(original: &Joint2, sym: &SymmetrizedJoint, channel: &Dmc) -> Self {
        let per_shift = (0..sym.shifts())
            .map(|j| ShiftInfo { shift: j, info: aux_info(&sym.shift_slice(j).to_aux(), channel) })
            .collect();
        SufficiencyReport {
            original: aux_info(&original.to_aux(), channel),
            symmetrized: aux_info(&sym.aux(), channel),
            per_shift,
        }
    }

    /// Largest amount by which any required relation fails: the three
    /// "symmetrized is no smaller" inequalities, the conditional-information
    /// equality, and the three per-shift equalities. Nonpositive means all hold.
    pub fn max_violation(&self) -> f64 {
        let (o, s) = (&self.original, &self.symmetrized);
        let mut worst =
            [o.u_y - s.u_y, o.x_y_given_u - s.x_y_given_u, o.x_y - s.x_y, (o.x_y_given_u - s.x_y_given_u).abs()]
                .into_iter()
                .fold(f64::NEG_INFINITY, f64::max);
        for sh in &self.per_shift {
            worst = worst
                .max((sh.info.x_y - o.x_y).abs())
                .max((sh.info.u_y - o.u_y).abs())
                .max((sh.info.x_y_given_u - o.x_y_given_u).abs());
        }
        worst
    }
}
