//! Best-known frontiers by optimizing scheme inputs.
//!
//! Each weight direction `(w0, w2)` is maximized by random restarts followed
//! by cyclic coordinate ascent over the probability simplices and the
//! deterministic maps of the input. Restart `r` of direction `d` draws from
//! its own ChaCha stream keyed by `(seed, d, r)`, so raising the restart
//! count only adds candidates and results do not depend on thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{Alphabets, ChannelLaw, ChannelSpec};
use crate::error::{Error, Result};
use crate::polytope::{frontier_union, RatePolytope, RegionFrontier};
use crate::schemes::{
    evaluate, CutsetInput, DfNoRsInput, DfRsInput, PdfCfInput, SchemeInput, SchemeKind,
};

/// Alphabet sizes of auxiliaries; `None` picks the default for the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Cardinalities {
    pub u0: usize,
    pub u2: usize,
    pub u2c: usize,
    pub u2p: usize,
    pub v0: usize,
    pub v2: usize,
    /// Common/private codeword alphabets; default |X2|.
    pub x2c: Option<usize>,
    pub x2p: Option<usize>,
    /// Compression alphabet; default |YR| + 1.
    pub yhat: Option<usize>,
}

impl Default for Cardinalities {
    fn default() -> Self {
        Self {
            u0: 2,
            u2: 2,
            u2c: 2,
            u2p: 2,
            v0: 2,
            v2: 2,
            x2c: None,
            x2p: None,
            yhat: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchBudget {
    pub restarts: usize,
    pub sweeps: usize,
    /// Each simplex coordinate is tried at multiples of `1 / grid_resolution`
    /// before local refinement.
    pub grid_resolution: usize,
    /// Smallest step of the local refinement that follows each grid scan.
    pub refine_to: f64,
    pub seed: u64,
    pub cardinalities: Cardinalities,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            restarts: 8,
            sweeps: 2,
            grid_resolution: 8,
            refine_to: 1e-3,
            seed: 0,
            cardinalities: Cardinalities::default(),
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        let c = &self.cardinalities;
        if self.restarts == 0 || self.sweeps == 0 || self.grid_resolution == 0 {
            return Err(Error::InvalidParameter("restarts, sweeps and grid resolution must be >= 1".into()));
        }
        if !(self.refine_to > 0.0) {
            return Err(Error::InvalidParameter("refinement step must be > 0".into()));
        }
        let all = [c.u0, c.u2, c.u2c, c.u2p, c.v0, c.v2, c.x2c.unwrap_or(1), c.x2p.unwrap_or(1), c.yhat.unwrap_or(1)];
        if all.contains(&0) {
            return Err(Error::InvalidParameter("auxiliary cardinalities must be >= 1".into()));
        }
        Ok(())
    }
}

/// A random probability vector, uniform on the simplex.
fn dirichlet(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = v.iter().sum();
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    } else {
        v = vec![1.0 / n as f64; n];
    }
    v
}

fn table(rng: &mut impl Rng, rows: usize, width: usize) -> Vec<Vec<f64>> {
    (0..rows).map(|_| dirichlet(rng, width)).collect()
}

fn map(rng: &mut impl Rng, len: usize, range: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..range)).collect()
}

/// A channel with every transition row drawn uniformly from its simplex.
pub fn sample_channel(alphabets: Alphabets, rng: &mut impl Rng) -> ChannelSpec {
    let probs = (0..alphabets.input_states())
        .flat_map(|_| dirichlet(rng, alphabets.output_states()))
        .collect();
    ChannelSpec {
        alphabets,
        transition: ChannelLaw::Joint { probs },
    }
}

/// Draws a valid input of the given scheme.
pub fn sample_input(kind: SchemeKind, spec: &ChannelSpec, budget: &SearchBudget, rng: &mut impl Rng) -> Result<SchemeInput> {
    budget.validate()?;
    spec.validate()?;
    let a = spec.alphabets;
    let c = budget.cardinalities;
    let input = match kind {
        SchemeKind::Cutset => {
            let flat = dirichlet(rng, a.input_states());
            let mut it = flat.into_iter();
            SchemeInput::Cutset(CutsetInput {
                p_x0_x2_xr: (0..a.x0)
                    .map(|_| (0..a.x2).map(|_| it.by_ref().take(a.xr).collect()).collect())
                    .collect(),
            })
        }
        SchemeKind::DfNors => {
            let bs = dirichlet(rng, c.u0 * a.x0);
            let ue = dirichlet(rng, c.u2 * a.x2);
            SchemeInput::DfNors(DfNoRsInput {
                p_u0_x0: bs.chunks(a.x0).map(<[f64]>::to_vec).collect(),
                p_u2_x2: ue.chunks(a.x2).map(<[f64]>::to_vec).collect(),
                relay_map: (0..c.u0).map(|_| map(rng, c.u2, a.xr)).collect(),
            })
        }
        SchemeKind::DfRs => {
            let (x2c, x2p) = (c.x2c.unwrap_or(a.x2), c.x2p.unwrap_or(a.x2));
            SchemeInput::DfRs(DfRsInput {
                p_u0: dirichlet(rng, c.u0),
                p_x0_given_u0: table(rng, c.u0, a.x0),
                p_u2c: dirichlet(rng, c.u2c),
                p_x2c_given_u2c: table(rng, c.u2c, x2c),
                p_u2p: dirichlet(rng, c.u2p),
                p_x2p_given_u2p: table(rng, c.u2p, x2p),
                x2_map: (0..x2c).map(|_| map(rng, x2p, a.x2)).collect(),
                relay_map: (0..c.u0)
                    .map(|_| (0..c.u2c).map(|_| map(rng, c.u2p, a.xr)).collect())
                    .collect(),
            })
        }
        SchemeKind::Pdfcf => {
            let yhat = c.yhat.unwrap_or(a.yr + 1);
            let rows = a.yr * a.xr * c.u0 * c.u2 * c.v0 * c.v2;
            SchemeInput::Pdfcf(PdfCfInput {
                p_u0: dirichlet(rng, c.u0),
                p_v0_given_u0: table(rng, c.u0, c.v0),
                p_x0_given_v0: table(rng, c.v0, a.x0),
                p_u2: dirichlet(rng, c.u2),
                p_v2_given_u2: table(rng, c.u2, c.v2),
                p_x2_given_v2: table(rng, c.v2, a.x2),
                p_xr_given_u0_u2: (0..c.u0).map(|_| table(rng, c.u2, a.xr)).collect(),
                yhat_size: yhat,
                test_channel: table(rng, rows, yhat),
            })
        }
    };
    input.validate(spec)?;
    Ok(input)
}

/// Replaces a random compression by a constant one, which always passes
/// the compression gate; gives the optimizer a feasible starting point.
fn constant_compression(input: &mut SchemeInput) {
    if let SchemeInput::Pdfcf(i) = input {
        for row in &mut i.test_channel {
            row.iter_mut().enumerate().for_each(|(k, x)| *x = if k == 0 { 1.0 } else { 0.0 });
        }
    }
}

/// Best vertex of `region` for the weights; ties go to larger R0, then R2.
pub fn best_vertex(region: &RatePolytope, w: (f64, f64)) -> Result<Option<((f64, f64), f64)>> {
    let mut best: Option<((f64, f64), f64)> = None;
    for v in region.vertices_2d()? {
        let val = w.0 * v.0 + w.1 * v.1;
        let better = match best {
            None => true,
            Some((b, bv)) => val > bv + 1e-12 || ((val - bv).abs() <= 1e-12 && (v.0, v.1) > b),
        };
        if better {
            best = Some((v, val));
        }
    }
    Ok(best)
}

/// Objective of one input: the best weighted vertex, or for an infeasible
/// compression a negative penalty that shrinks as the gate is approached.
fn score(spec: &ChannelSpec, input: &SchemeInput, w: (f64, f64)) -> Result<(f64, (f64, f64))> {
    let e = evaluate(spec, input)?;
    if e.region.is_marked_empty() {
        let gap = e.compression.map_or(0.0, |c| c.lhs - c.rhs);
        return Ok((-1.0 - gap, (0.0, 0.0)));
    }
    Ok(match best_vertex(&e.region, w)? {
        Some((p, v)) => (v, p),
        None => (-1.0, (0.0, 0.0)),
    })
}

/// Sets coordinate `j` of a probability vector to `g`, rescaling the rest.
fn set_coordinate(v: &[f64], j: usize, g: f64) -> Vec<f64> {
    let rest: f64 = v.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, x)| x).sum();
    let n = v.len();
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            if i == j {
                g
            } else if rest > 0.0 {
                x * (1.0 - g) / rest
            } else {
                (1.0 - g) / (n - 1) as f64
            }
        })
        .collect()
}

struct Ascent<'a> {
    spec: &'a ChannelSpec,
    w: (f64, f64),
    input: SchemeInput,
    value: f64,
    point: (f64, f64),
}

impl Ascent<'_> {
    fn try_candidate(&mut self, candidate: SchemeInput) -> Result<bool> {
        let (v, p) = score(self.spec, &candidate, self.w)?;
        if v > self.value + 1e-12 {
            self.input = candidate;
            self.value = v;
            self.point = p;
            return Ok(true);
        }
        Ok(false)
    }

    fn simplex_pass(&mut self, res: usize, floor: f64) -> Result<()> {
        let n_simplices = self.input.clone().simplices().len();
        for s in 0..n_simplices {
            let width = self.input.clone().simplices()[s].read().len();
            if width < 2 {
                continue;
            }
            for j in 0..width {
                let grid = (0..=res).map(|k| k as f64 / res as f64);
                for g in grid {
                    self.try_value(s, j, g)?;
                }
                // local refinement around the incumbent
                let mut h = 0.5 / res as f64;
                while h >= floor {
                    let cur = self.input.clone().simplices()[s].read()[j];
                    if !self.try_value(s, j, (cur + h).min(1.0))? {
                        self.try_value(s, j, (cur - h).max(0.0))?;
                    }
                    h /= 2.0;
                }
            }
        }
        Ok(())
    }

    fn try_value(&mut self, s: usize, j: usize, g: f64) -> Result<bool> {
        let mut candidate = self.input.clone();
        {
            let mut views = candidate.simplices();
            let cur = views[s].read();
            if (cur[j] - g).abs() < 1e-15 {
                return Ok(false);
            }
            views[s].write(&set_coordinate(&cur, j, g));
        }
        self.try_candidate(candidate)
    }

    fn map_pass(&mut self) -> Result<()> {
        let n = self.input.clone().map_entries(self.spec).len();
        for e in 0..n {
            let range = self.input.clone().map_entries(self.spec)[e].1;
            for val in 0..range {
                let mut candidate = self.input.clone();
                {
                    let mut entries = candidate.map_entries(self.spec);
                    if *entries[e].0 == val {
                        continue;
                    }
                    *entries[e].0 = val;
                }
                self.try_candidate(candidate)?;
            }
        }
        Ok(())
    }
}

/// Outcome of optimizing one weight direction from one starting point.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOptimum {
    pub input: SchemeInput,
    pub value: f64,
    pub point: (f64, f64),
}

fn restart_rng(seed: u64, direction: usize, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((direction as u64) << 32) | restart as u64);
    rng
}

fn ascend(kind: SchemeKind, spec: &ChannelSpec, w: (f64, f64), budget: &SearchBudget, direction: usize, restart: usize) -> Result<LocalOptimum> {
    let mut rng = restart_rng(budget.seed, direction, restart);
    let mut input = sample_input(kind, spec, budget, &mut rng)?;
    if restart == 0 {
        constant_compression(&mut input);
    }
    let (value, point) = score(spec, &input, w)?;
    let mut a = Ascent {
        spec,
        w,
        input,
        value,
        point,
    };
    for _ in 0..budget.sweeps {
        let before = a.value;
        a.map_pass()?;
        a.simplex_pass(budget.grid_resolution, budget.refine_to)?;
        if a.value <= before + 1e-12 {
            break;
        }
    }
    Ok(LocalOptimum {
        input: a.input,
        value: a.value,
        point: a.point,
    })
}

fn validate_weights(w: (f64, f64)) -> Result<()> {
    if !(w.0 >= 0.0 && w.1 >= 0.0) || w.0 + w.1 <= 0.0 || !w.0.is_finite() || !w.1.is_finite() {
        return Err(Error::InvalidParameter(format!("weights {w:?} must be nonnegative and not both zero")));
    }
    Ok(())
}

/// Runs `f` on a pool capped by `ITWRC_THREADS` when that is set.
fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    match std::env::var("ITWRC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        Some(n) if n >= 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

fn run_directions(kind: SchemeKind, spec: &ChannelSpec, dirs: &[(f64, f64)], budget: &SearchBudget) -> Result<Vec<Vec<LocalOptimum>>> {
    budget.validate()?;
    spec.validate()?;
    dirs.iter().copied().try_for_each(validate_weights)?;
    let jobs: Vec<(usize, usize)> = (0..dirs.len())
        .flat_map(|d| (0..budget.restarts).map(move |r| (d, r)))
        .collect();
    let results: Vec<Result<LocalOptimum>> = with_pool(|| {
        jobs.par_iter()
            .map(|&(d, r)| ascend(kind, spec, dirs[d], budget, d, r))
            .collect()
    })?;
    let mut out: Vec<Vec<LocalOptimum>> = vec![Vec::new(); dirs.len()];
    for ((d, _), r) in jobs.into_iter().zip(results) {
        out[d].push(r?);
    }
    Ok(out)
}

fn pick_best(candidates: Vec<LocalOptimum>) -> LocalOptimum {
    candidates
        .into_iter()
        .reduce(|best, c| if c.value > best.value + 1e-12 { c } else { best })
        .expect("at least one restart")
}

/// Largest `w0·R0 + w2·R2` found for the scheme.
pub fn maximize_weighted_sum(kind: SchemeKind, spec: &ChannelSpec, weights: (f64, f64), budget: &SearchBudget) -> Result<LocalOptimum> {
    let mut per_dir = run_directions(kind, spec, &[weights], budget)?;
    Ok(pick_best(per_dir.remove(0)))
}

/// `n` weight directions spaced uniformly in angle from (1, 0) to (0, 1).
pub fn weight_directions(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| match i {
            0 => (1.0, 0.0),
            _ if i + 1 == n => (0.0, 1.0),
            _ => {
                let t = std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64;
                (t.cos(), t.sin())
            }
        })
        .collect()
}

/// A traced frontier; `frontier.points[k].source` indexes `inputs`.
#[derive(Debug, Clone, PartialEq)]
pub struct TracedFrontier {
    pub scheme: SchemeKind,
    pub frontier: RegionFrontier,
    pub inputs: Vec<SchemeInput>,
}

/// Traces the best-known frontier of a scheme. Every restart's final input
/// contributes its region's vertices; the union is closed under
/// time-sharing.
pub fn trace_frontier(kind: SchemeKind, spec: &ChannelSpec, budget: &SearchBudget, weight_count: usize) -> Result<TracedFrontier> {
    if weight_count < 2 {
        return Err(Error::InvalidParameter("at least two weight directions are needed".into()));
    }
    let optima = run_directions(kind, spec, &weight_directions(weight_count), budget)?;
    let mut regions = Vec::new();
    let mut inputs = Vec::new();
    for o in optima.into_iter().flatten() {
        let region = evaluate(spec, &o.input)?.region;
        if region.is_marked_empty() {
            continue;
        }
        regions.push(region);
        inputs.push(o.input);
    }
    if regions.is_empty() {
        // every candidate failed the compression gate: nothing is achievable
        return Ok(TracedFrontier {
            scheme: kind,
            frontier: RegionFrontier { points: Vec::new() },
            inputs,
        });
    }
    let mut frontier = frontier_union(&regions)?;
    // keep only the inputs that attain a frontier point
    let mut used: Vec<usize> = frontier.points.iter().map(|p| p.source).collect();
    used.sort_unstable();
    used.dedup();
    for p in &mut frontier.points {
        p.source = used.binary_search(&p.source).expect("source is in use");
    }
    let inputs = used.into_iter().map(|i| inputs[i].clone()).collect();
    Ok(TracedFrontier {
        scheme: kind,
        frontier,
        inputs,
    })
}
