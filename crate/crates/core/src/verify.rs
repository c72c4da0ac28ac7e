//! Mechanical cross-checks of the closed-form regions.
//!
//! Each check reports the largest deviation it measured against its
//! tolerance. Region comparisons evaluate membership on a grid; on a
//! mismatch the report names the smallest grid point where the two
//! systems disagree and the rows that exclude it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::channel::{assemble_joint, build_twrc_reduction, ChannelSpec};
use crate::error::Result;
use crate::io::polytope_json;
use crate::polytope::RatePolytope;
use crate::prob::{InfoCache, JointPmf, IDENTITY_TOL};
use crate::schemes::{
    cf_region, df_nors_region, df_rs_appendix_system, df_rs_region, pdfcf_appendix_system, pdfcf_feasible,
    pdfcf_region, CfInput, DfRsInput, PdfCfInput, SchemeInput, SchemeKind, R0, R0C, R0D, R2, R2C, R2D, R2P,
};
use crate::search::{sample_input, SearchBudget};
use crate::vars::*;

/// Tolerance for region-membership agreement.
pub const MEMBERSHIP_TOL: f64 = 1e-7;
/// Grid points per axis in membership comparisons.
pub const GRID: usize = 50;

/// Where two 2-D regions disagree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub point: (f64, f64),
    /// Name of the system that contains the point.
    pub contained_in: String,
    /// Rows of the other system violated at the point, with the excess.
    pub violated: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipComparison {
    pub max_deviation: f64,
    pub counterexample: Option<Counterexample>,
}

/// Compares membership of two (R0, R2) regions on a `grid × grid` lattice
/// covering both, padded by 5%. The deviation at a point inside one region
/// is the other region's largest row violation there.
pub fn compare_membership(a: (&str, &RatePolytope), b: (&str, &RatePolytope), grid: usize, tol: f64) -> Result<MembershipComparison> {
    let (va, vb) = (a.1.vertices_2d()?, b.1.vertices_2d()?);
    if va.is_empty() && vb.is_empty() {
        return Ok(MembershipComparison {
            max_deviation: 0.0,
            counterexample: None,
        });
    }
    let hi = |f: fn(&(f64, f64)) -> f64| va.iter().chain(&vb).map(f).fold(0.0, f64::max) * 1.05;
    let (h0, h2) = (hi(|v| v.0).max(1e-9), hi(|v| v.1).max(1e-9));
    let steps = grid.max(2) - 1;
    let mut max_dev: f64 = 0.0;
    let mut best: Option<(f64, Counterexample)> = None;
    for i in 0..=steps {
        for j in 0..=steps {
            let p = [h0 * i as f64 / steps as f64, h2 * j as f64 / steps as f64];
            for (inside, other) in [(a, b), (b, a)] {
                if !inside.1.contains(&p, 1e-12)? {
                    continue;
                }
                let dev = other.1.max_violation(&p)?.max(0.0);
                max_dev = max_dev.max(dev);
                if dev > tol {
                    let norm = p[0].hypot(p[1]);
                    if best.as_ref().map_or(true, |(n, _)| norm < *n) {
                        let violated = if other.1.is_marked_empty() {
                            vec![("empty region".to_string(), f64::INFINITY)]
                        } else {
                            other
                                .1
                                .violated_by(&p, tol)
                                .into_iter()
                                .map(|c| {
                                    let lhs: f64 = c.coefficients.iter().zip(&p).map(|(&k, x)| k as f64 * x).sum();
                                    (c.label.clone(), lhs - c.bound)
                                })
                                .collect()
                        };
                        best = Some((
                            norm,
                            Counterexample {
                                point: (p[0], p[1]),
                                contained_in: inside.0.to_string(),
                                violated,
                            },
                        ));
                    }
                }
            }
        }
    }
    Ok(MembershipComparison {
        max_deviation: max_dev,
        counterexample: best.map(|(_, c)| c),
    })
}

/// Projects the rate-splitting decoding constraints onto (R0, R2) by
/// substituting R2p = R2 − R2c and eliminating R2c.
pub fn project_df_rs_system(system: &RatePolytope) -> Result<RatePolytope> {
    system.substitute(R2P, &[(R2, 1), (R2C, -1)])?.fm_eliminate(R2C)?.reorder_as(&[R0, R2])
}

/// Projects the pDF+CF split-rate constraints onto (R0, R2).
pub fn project_pdfcf_system(system: &RatePolytope) -> Result<RatePolytope> {
    system
        .substitute(R0D, &[(R0, 1), (R0C, -1)])?
        .substitute(R2D, &[(R2, 1), (R2C, -1)])?
        .fm_eliminate(R0C)?
        .fm_eliminate(R2C)?
        .reorder_as(&[R0, R2])
}

/// One named check of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub instances: usize,
    pub passed: bool,
    /// Failing instances with counterexamples and both constraint systems.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub grid: usize,
    /// Failing instances kept in the report per check.
    pub max_failures: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 0,
            grid: GRID,
            max_failures: 3,
        }
    }
}

struct Accumulator {
    result: CheckResult,
    max_failures: usize,
}

impl Accumulator {
    fn new(name: &str, tolerance: f64, max_failures: usize) -> Self {
        Self {
            result: CheckResult {
                name: name.to_string(),
                tolerance,
                max_deviation: 0.0,
                instances: 0,
                passed: true,
                failures: Vec::new(),
            },
            max_failures,
        }
    }

    fn record(&mut self, deviation: f64, failure: impl FnOnce() -> Result<Value>) -> Result<()> {
        let r = &mut self.result;
        r.instances += 1;
        r.max_deviation = r.max_deviation.max(deviation);
        if !(deviation <= r.tolerance) {
            r.passed = false;
            if r.failures.len() < self.max_failures {
                r.failures.push(failure()?);
            }
        }
        Ok(())
    }

    fn finish(self) -> CheckResult {
        self.result
    }
}

/// Result of comparing one closed-form region with its projected system.
#[derive(Debug, Clone)]
pub struct FmOutcome {
    pub closed_form: RatePolytope,
    pub projected: RatePolytope,
    pub raw_system: RatePolytope,
    pub comparison: MembershipComparison,
}

impl FmOutcome {
    pub fn report(&self) -> Result<Value> {
        Ok(json!({
            "counterexample": self.comparison.counterexample,
            "closed_form": polytope_json(&self.closed_form)?,
            "projected": polytope_json(&self.projected)?,
            "raw_system": polytope_json(&self.raw_system)?,
        }))
    }
}

pub fn check_df_rs_fm(spec: &ChannelSpec, input: &DfRsInput, grid: usize) -> Result<FmOutcome> {
    let closed_form = df_rs_region(spec, input)?;
    let raw_system = df_rs_appendix_system(spec, input)?;
    let projected = project_df_rs_system(&raw_system)?;
    let comparison = compare_membership(("closed form", &closed_form), ("projection", &projected), grid, MEMBERSHIP_TOL)?;
    Ok(FmOutcome {
        closed_form,
        projected,
        raw_system,
        comparison,
    })
}

pub fn check_pdfcf_fm(spec: &ChannelSpec, input: &PdfCfInput, grid: usize) -> Result<FmOutcome> {
    let closed_form = pdfcf_region(spec, input)?.region;
    let raw_system = pdfcf_appendix_system(spec, input)?;
    let projected = project_pdfcf_system(&raw_system)?;
    let comparison = compare_membership(("closed form", &closed_form), ("projection", &projected), grid, MEMBERSHIP_TOL)?;
    Ok(FmOutcome {
        closed_form,
        projected,
        raw_system,
        comparison,
    })
}

/// Mixes the test channel toward a constant compression until the
/// compression gate passes. A constant compression always passes.
pub fn make_feasible(spec: &ChannelSpec, mut input: PdfCfInput) -> Result<PdfCfInput> {
    let original = input.test_channel.clone();
    let mut lambda = 1.0;
    for _ in 0..12 {
        if pdfcf_feasible(spec, &input)?.feasible {
            return Ok(input);
        }
        lambda /= 2.0;
        for (row, orig) in input.test_channel.iter_mut().zip(&original) {
            for (k, (x, o)) in row.iter_mut().zip(orig).enumerate() {
                *x = lambda * o + if k == 0 { 1.0 - lambda } else { 0.0 };
            }
        }
    }
    for row in &mut input.test_channel {
        row.iter_mut().enumerate().for_each(|(k, x)| *x = if k == 0 { 1.0 } else { 0.0 });
    }
    Ok(input)
}

fn random_input_law(spec: &ChannelSpec, rng: &mut ChaCha8Rng, budget: &SearchBudget) -> Result<JointPmf> {
    match sample_input(SchemeKind::Cutset, spec, budget, rng)? {
        SchemeInput::Cutset(c) => c.law(spec),
        _ => unreachable!("cut-set sampling yields a cut-set input"),
    }
}

/// Cut-set identities of the reduced two-way relay channel: conditioned on
/// the relay input, the end receivers add nothing to the relay's view.
pub fn twrc_identity_deviation(reduced: &ChannelSpec, law: &JointPmf) -> Result<f64> {
    let joint = assemble_joint(reduced, law)?;
    let c = InfoCache::new(&joint);
    let ul = (c.cmi(&[X2], &[YR, Y0], &[XR, X0])? - c.cmi(&[X2], &[YR], &[XR, X0])?).abs();
    let dl = (c.cmi(&[X0], &[YR, Y1], &[XR, X2])? - c.cmi(&[X0], &[YR], &[XR, X2])?).abs();
    Ok(ul.max(dl))
}

/// Largest vertex distance between the pDF+CF region with singleton
/// auxiliaries and the directly coded pure-CF region.
pub fn pure_cf_deviation(spec: &ChannelSpec, cf: &CfInput) -> Result<f64> {
    let direct = cf_region(spec, cf)?;
    let embedded = pdfcf_region(spec, &PdfCfInput::from_cf(cf))?;
    if direct.check.feasible != embedded.check.feasible {
        return Ok(f64::INFINITY);
    }
    let (a, b) = (direct.region.vertices_2d()?, embedded.region.vertices_2d()?);
    if a.len() != b.len() {
        return Ok(f64::INFINITY);
    }
    Ok(a.iter()
        .zip(&b)
        .map(|(p, q)| (p.0 - q.0).abs().max((p.1 - q.1).abs()))
        .fold(0.0, f64::max))
}

fn random_cf(spec: &ChannelSpec, rng: &mut ChaCha8Rng, budget: &SearchBudget) -> Result<CfInput> {
    let a = spec.alphabets;
    let SchemeInput::Pdfcf(p) = sample_input(SchemeKind::Pdfcf, spec, budget, rng)? else {
        unreachable!("pdfcf sampling yields a pdfcf input")
    };
    // keep only the rows with all auxiliaries at symbol 0
    let c = budget.cardinalities;
    let stride = c.u0 * c.u2 * c.v0 * c.v2;
    Ok(CfInput {
        p_x0: p.p_x0_given_v0[0].clone(),
        p_x2: p.p_x2_given_v2[0].clone(),
        p_xr: p.p_xr_given_u0_u2[0][0].clone(),
        yhat_size: p.yhat_size,
        test_channel: (0..a.yr * a.xr).map(|i| p.test_channel[i * stride].clone()).collect(),
    })
}

/// Runs every check on `spec` with randomly drawn inputs. Auxiliary
/// cardinalities come from `budget`.
pub fn run_verification(spec: &ChannelSpec, config: &VerifyConfig, budget: &SearchBudget) -> Result<VerifyReport> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.samples;
    let mut checks = Vec::new();

    let mut acc = Accumulator::new("df_rs_fourier_motzkin", MEMBERSHIP_TOL, config.max_failures);
    for _ in 0..n {
        let SchemeInput::DfRs(input) = sample_input(SchemeKind::DfRs, spec, budget, &mut rng)? else {
            unreachable!()
        };
        let o = check_df_rs_fm(spec, &input, config.grid)?;
        acc.record(o.comparison.max_deviation, || {
            let mut v = o.report()?;
            v["input"] = serde_json::to_value(&input)?;
            Ok(v)
        })?;
    }
    checks.push(acc.finish());

    let pdfcf_budget = SearchBudget {
        cardinalities: crate::search::Cardinalities {
            yhat: Some(budget.cardinalities.yhat.unwrap_or(2)),
            ..budget.cardinalities
        },
        ..*budget
    };
    let mut acc = Accumulator::new("pdfcf_fourier_motzkin", MEMBERSHIP_TOL, config.max_failures);
    for _ in 0..n {
        let SchemeInput::Pdfcf(input) = sample_input(SchemeKind::Pdfcf, spec, &pdfcf_budget, &mut rng)? else {
            unreachable!()
        };
        let input = make_feasible(spec, input)?;
        let o = check_pdfcf_fm(spec, &input, config.grid)?;
        acc.record(o.comparison.max_deviation, || {
            let mut v = o.report()?;
            v["input"] = serde_json::to_value(&input)?;
            Ok(v)
        })?;
    }
    checks.push(acc.finish());

    let reduced = build_twrc_reduction(spec)?;
    let mut acc = Accumulator::new("twrc_reduction_cutset_identities", IDENTITY_TOL, config.max_failures);
    for _ in 0..n {
        let law = random_input_law(spec, &mut rng, budget)?;
        let d = twrc_identity_deviation(&reduced, &law)?;
        acc.record(d, || Ok(json!({ "input_law": law.probs() })))?;
    }
    checks.push(acc.finish());

    let mut acc = Accumulator::new("pure_cf_reduction", IDENTITY_TOL, config.max_failures);
    for _ in 0..n {
        let cf = random_cf(spec, &mut rng, &pdfcf_budget)?;
        let d = pure_cf_deviation(spec, &cf)?;
        acc.record(d, || Ok(json!({ "input": cf })))?;
    }
    checks.push(acc.finish());

    let silent = spec.with_constant_relay_output();
    let mut acc = Accumulator::new("constant_relay_output_collapses_df", IDENTITY_TOL, config.max_failures);
    for _ in 0..n {
        for kind in [SchemeKind::DfNors, SchemeKind::DfRs] {
            let region = match sample_input(kind, &silent, budget, &mut rng)? {
                SchemeInput::DfNors(i) => df_nors_region(&silent, &i)?,
                SchemeInput::DfRs(i) => df_rs_region(&silent, &i)?,
                _ => unreachable!(),
            };
            let d = region
                .vertices_2d()?
                .iter()
                .map(|v| v.0.max(v.1))
                .fold(0.0, f64::max);
            acc.record(d, || Ok(json!({ "scheme": kind, "region": polytope_json(&region)? })))?;
        }
    }
    checks.push(acc.finish());

    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
