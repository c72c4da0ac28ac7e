//! Scalar AWGN instances of the channel and their discretization.
//!
//! Receivers see
//!
//! ```text
//! Y0 = g_rn_bs·XR + g_ue2_bs·X2 + N0
//! Y1 = g_bs_ue1·X0 + g_ue2_ue1·X2 + g_rn_ue1·XR + N1
//! YR = g_bs_rn·X0 + g_ue2_rn·X2 + NR
//! ```
//!
//! Full-duplex nodes cancel their own transmission perfectly. Inputs are
//! mapped to finite constellations with the given average power and each
//! output is binned into equal-probability quantiles of its marginal
//! Gaussian approximation.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::channel::{Alphabets, ChannelLaw, ChannelSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LinkGains {
    pub bs_ue1: f64,
    pub bs_rn: f64,
    pub ue2_rn: f64,
    pub ue2_ue1: f64,
    pub rn_bs: f64,
    pub rn_ue1: f64,
    pub ue2_bs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Powers {
    pub bs: f64,
    pub ue2: f64,
    pub rn: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseVariances {
    pub bs: f64,
    pub ue1: f64,
    pub rn: f64,
}

impl Default for NoiseVariances {
    fn default() -> Self {
        Self {
            bs: 1.0,
            ue1: 1.0,
            rn: 1.0,
        }
    }
}

/// A Gaussian scenario; powers are linear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianItwrc {
    pub gains: LinkGains,
    pub powers: Powers,
    #[serde(default)]
    pub noise: NoiseVariances,
}

/// How constellation points are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Equally spaced (PAM).
    Uniform,
    /// Midpoint quantiles of a standard normal.
    #[default]
    GaussQuantile,
}

impl GaussianItwrc {
    pub fn validate(&self) -> Result<()> {
        let p = self.powers;
        let n = self.noise;
        let g = self.gains;
        let gains = [g.bs_ue1, g.bs_rn, g.ue2_rn, g.ue2_ue1, g.rn_bs, g.rn_ue1, g.ue2_bs];
        if gains.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("gains must be finite".into()));
        }
        if [p.bs, p.ue2, p.rn].iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::InvalidParameter("powers must be finite and >= 0".into()));
        }
        if [n.bs, n.ue1, n.rn].iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidParameter("noise variances must be > 0".into()));
        }
        Ok(())
    }
}

/// `0.5·log2(1 + gain²·power/noise)` bits per real channel use.
pub fn awgn_point_to_point_rate(gain: f64, power: f64, noise: f64) -> Result<f64> {
    if !(noise > 0.0) {
        return Err(Error::InvalidParameter(format!("noise variance {noise} must be > 0")));
    }
    if !(power >= 0.0) {
        return Err(Error::InvalidParameter(format!("power {power} must be >= 0")));
    }
    Ok(0.5 * (1.0 + gain * gain * power / noise).log2())
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// `n` points with average power `power` under the uniform law.
pub fn constellation(n: usize, power: f64, placement: Placement) -> Vec<f64> {
    let raw: Vec<f64> = match placement {
        Placement::Uniform => (0..n).map(|k| 2.0 * k as f64 - (n as f64 - 1.0)).collect(),
        Placement::GaussQuantile => {
            let z = std_normal();
            (0..n).map(|k| z.inverse_cdf((k as f64 + 0.5) / n as f64)).collect()
        }
    };
    let mean_sq = raw.iter().map(|x| x * x).sum::<f64>() / n as f64;
    let scale = if mean_sq > 0.0 { (power / mean_sq).sqrt() } else { 0.0 };
    raw.iter().map(|x| x * scale).collect()
}

/// Interior bin edges: equal-probability quantiles of N(0, var) over
/// [−clip·σ, clip·σ]; the outer bins extend to ±∞.
pub fn bin_edges(var: f64, n_out: usize, clip: f64) -> Vec<f64> {
    let z = std_normal();
    let (lo, hi) = (z.cdf(-clip), z.cdf(clip));
    let sigma = var.sqrt();
    (1..n_out)
        .map(|k| sigma * z.inverse_cdf(lo + (hi - lo) * k as f64 / n_out as f64))
        .collect()
}

/// P(bin | mean) under Gaussian noise of variance `noise`.
fn bin_row(mean: f64, noise: f64, edges: &[f64]) -> Vec<f64> {
    let z = std_normal();
    let s = noise.sqrt();
    let below = |e: f64| z.cdf((e - mean) / s);
    let mut row = Vec::with_capacity(edges.len() + 1);
    let mut prev = 0.0;
    for &e in edges {
        let c = below(e);
        row.push((c - prev).max(0.0));
        prev = c;
    }
    row.push((1.0 - prev).max(0.0));
    let sum: f64 = row.iter().sum();
    if sum > 0.0 {
        row.iter_mut().for_each(|x| *x /= sum);
    } else {
        // mean far outside the clipped range: all mass in the nearest bin
        let k = if mean < 0.0 { 0 } else { row.len() - 1 };
        row.iter_mut().enumerate().for_each(|(i, x)| *x = if i == k { 1.0 } else { 0.0 });
    }
    row
}

fn check_levels(n_in: usize, n_out: usize, clip: f64) -> Result<()> {
    if n_in < 2 || n_out < 2 {
        return Err(Error::InvalidParameter("need at least two input and two output levels".into()));
    }
    if !(clip > 0.0 && clip.is_finite()) {
        return Err(Error::InvalidParameter(format!("clip {clip} must be > 0")));
    }
    Ok(())
}

/// Discretizes the scenario; all three inputs use `n_in` points and all
/// outputs `n_out` bins. The result has conditionally independent outputs.
pub fn quantize_to_dm(g: &GaussianItwrc, n_in: usize, n_out: usize, clip: f64, placement: Placement) -> Result<ChannelSpec> {
    g.validate()?;
    check_levels(n_in, n_out, clip)?;
    let p = g.powers;
    let k = g.gains;
    let x0 = constellation(n_in, p.bs, placement);
    let x2 = constellation(n_in, p.ue2, placement);
    let xr = constellation(n_in, p.rn, placement);
    // (coefficients on x0, x2, xR), noise variance
    let links = [
        ([0.0, k.ue2_bs, k.rn_bs], g.noise.bs),
        ([k.bs_ue1, k.ue2_ue1, k.rn_ue1], g.noise.ue1),
        ([k.bs_rn, k.ue2_rn, 0.0], g.noise.rn),
    ];
    let tensors: Vec<Vec<f64>> = links
        .iter()
        .map(|(c, noise)| {
            let var = noise + c[0] * c[0] * p.bs + c[1] * c[1] * p.ue2 + c[2] * c[2] * p.rn;
            let edges = bin_edges(var, n_out, clip);
            let mut t = Vec::with_capacity(n_in * n_in * n_in * n_out);
            for a in &x0 {
                for b in &x2 {
                    for r in &xr {
                        t.extend(bin_row(c[0] * a + c[1] * b + c[2] * r, *noise, &edges));
                    }
                }
            }
            t
        })
        .collect();
    let [y0, y1, yr]: [Vec<f64>; 3] = tensors.try_into().expect("three links");
    let spec = ChannelSpec {
        alphabets: Alphabets {
            x0: n_in,
            x2: n_in,
            xr: n_in,
            y0: n_out,
            y1: n_out,
            yr: n_out,
        },
        transition: ChannelLaw::Independent { y0, y1, yr },
    };
    spec.validate()?;
    Ok(spec)
}

/// Transition matrix `W[x][y]` of one quantized scalar link.
pub fn quantized_link(gain: f64, power: f64, noise: f64, n_in: usize, n_out: usize, clip: f64, placement: Placement) -> Result<Vec<Vec<f64>>> {
    check_levels(n_in, n_out, clip)?;
    if !(noise > 0.0) || !(power >= 0.0) {
        return Err(Error::InvalidParameter("power must be >= 0 and noise > 0".into()));
    }
    let edges = bin_edges(noise + gain * gain * power, n_out, clip);
    Ok(constellation(n_in, power, placement)
        .into_iter()
        .map(|x| bin_row(gain * x, noise, &edges))
        .collect())
}

/// I(X; Y) in bits for input law `px` and transition matrix `w`.
pub fn link_mutual_information(px: &[f64], w: &[Vec<f64>]) -> f64 {
    let n_out = w.first().map_or(0, Vec::len);
    let py: Vec<f64> = (0..n_out).map(|y| px.iter().zip(w).map(|(p, row)| p * row[y]).sum()).collect();
    let mut i = 0.0;
    for (p, row) in px.iter().zip(w) {
        for (y, &q) in row.iter().enumerate() {
            if *p > 0.0 && q > 0.0 {
                i += p * q * (q / py[y]).log2();
            }
        }
    }
    i.max(0.0)
}

/// Capacity of a discrete memoryless channel by Blahut–Arimoto iteration;
/// returns (capacity in bits, optimal input law).
pub fn blahut_arimoto(w: &[Vec<f64>], tol: f64, max_iter: usize) -> (f64, Vec<f64>) {
    let n = w.len();
    let mut px = vec![1.0 / n as f64; n];
    let n_out = w.first().map_or(0, Vec::len);
    for _ in 0..max_iter {
        let py: Vec<f64> = (0..n_out).map(|y| px.iter().zip(w).map(|(p, r)| p * r[y]).sum()).collect();
        // D(W(.|x) || py) in nats
        let d: Vec<f64> = w
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&py)
                    .filter(|(q, _)| **q > 0.0)
                    .map(|(q, r)| q * (q / r).ln())
                    .sum()
            })
            .collect();
        let mut next: Vec<f64> = px.iter().zip(&d).map(|(p, d)| p * d.exp()).collect();
        let z: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= z);
        let lower = z.ln();
        let upper = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        px = next;
        if upper - lower < tol {
            break;
        }
    }
    (link_mutual_information(&px, w), px)
}
