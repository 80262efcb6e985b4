//! Brute-force reference computations, written straight from the
//! definitions and sharing no code with the library.

#![allow(dead_code)]

pub fn h2(x: f64) -> f64 {
    let t = |v: f64| if v <= 0.0 { 0.0 } else { -v * v.log2() };
    t(x) + t(1.0 - x)
}

pub fn bsc(p: f64) -> Vec<Vec<f64>> {
    vec![vec![1.0 - p, p], vec![p, 1.0 - p]]
}

pub fn bec(e: f64) -> Vec<Vec<f64>> {
    vec![vec![1.0 - e, e, 0.0], vec![0.0, e, 1.0 - e]]
}

/// `I(A;B)` of a joint table `t[a][b]`.
pub fn mi(t: &[Vec<f64>]) -> f64 {
    let pa: Vec<f64> = t.iter().map(|r| r.iter().sum()).collect();
    let pb: Vec<f64> = (0..t[0].len()).map(|b| t.iter().map(|r| r[b]).sum()).collect();
    let mut s = 0.0;
    for (a, row) in t.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v > 0.0 {
                s += v * (v / (pa[a] * pb[b])).log2();
            }
        }
    }
    s
}

/// `p(u, x, y) = p(u) p(x|u) W(y|x)`.
pub fn triple(pu: &[f64], px_u: &[Vec<f64>], w: &[Vec<f64>]) -> Vec<Vec<Vec<f64>>> {
    pu.iter()
        .zip(px_u)
        .map(|(&p, row)| row.iter().zip(w).map(|(&q, wr)| wr.iter().map(|&r| p * q * r).collect()).collect())
        .collect()
}

pub fn i_uy(t: &[Vec<Vec<f64>>]) -> f64 {
    let uy: Vec<Vec<f64>> =
        t.iter().map(|xs| (0..xs[0].len()).map(|y| xs.iter().map(|r| r[y]).sum()).collect()).collect();
    mi(&uy)
}

pub fn i_xy(t: &[Vec<Vec<f64>>]) -> f64 {
    let nx = t[0].len();
    let ny = t[0][0].len();
    let xy: Vec<Vec<f64>> = (0..nx).map(|x| (0..ny).map(|y| t.iter().map(|s| s[x][y]).sum()).collect()).collect();
    mi(&xy)
}

/// `I(X;Y|U) = sum_u p(u) I(X;Y|U=u)`.
pub fn i_xy_given_u(t: &[Vec<Vec<f64>>]) -> f64 {
    t.iter()
        .map(|s| {
            let m: f64 = s.iter().flatten().sum();
            if m <= 0.0 {
                return 0.0;
            }
            let cond: Vec<Vec<f64>> = s.iter().map(|r| r.iter().map(|v| v / m).collect()).collect();
            m * mi(&cond)
        })
        .sum()
}

/// `I(X;Y)` for input law `px` through `w`.
pub fn channel_mi(px: &[f64], w: &[Vec<f64>]) -> f64 {
    let t: Vec<Vec<f64>> = px.iter().zip(w).map(|(&p, r)| r.iter().map(|v| p * v).collect()).collect();
    mi(&t)
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter().map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect()).collect()
}

/// Crossover of two cascaded binary symmetric channels.
pub fn conv(x: f64, p: f64) -> f64 {
    x * (1.0 - p) + (1.0 - x) * p
}

/// `D(x) = I(X;BSC(p)) - I(X;BEC(e))` with `P(X=1) = x`, by brute force.
pub fn d_brute(p: f64, e: f64, x: f64) -> f64 {
    channel_mi(&[1.0 - x, x], &bsc(p)) - channel_mi(&[1.0 - x, x], &bec(e))
}
