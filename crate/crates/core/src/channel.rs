//! The three-end-node channel law p(y0, y1, yR | x0, x2, xR).
//!
//! X0 is sent by the base station, X2 by the transmitting user, XR by the
//! relay. Y0 is received at the base station, Y1 at the receiving user and
//! YR at the relay. Transition tensors are row-major in the order
//! (x0, x2, xR, y0, y1, yR).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::{JointPmf, NORMALIZATION_TOL};
use crate::vars::{X0, X2, XR, Y0, Y1, YR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabets {
    pub x0: usize,
    pub x2: usize,
    pub xr: usize,
    pub y0: usize,
    pub y1: usize,
    pub yr: usize,
}

impl Alphabets {
    pub const BINARY: Alphabets = Alphabets {
        x0: 2,
        x2: 2,
        xr: 2,
        y0: 2,
        y1: 2,
        yr: 2,
    };

    pub fn input_states(&self) -> usize {
        self.x0 * self.x2 * self.xr
    }

    pub fn output_states(&self) -> usize {
        self.y0 * self.y1 * self.yr
    }
}

/// Transition law. `Joint` stores p(y0, y1, yR | x) as one row per input
/// triple; `Independent` stores one row-major tensor per output, each over
/// (x0, x2, xR, y), and means the outputs are conditionally independent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelLaw {
    Joint { probs: Vec<f64> },
    Independent { y0: Vec<f64>, y1: Vec<f64>, yr: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub alphabets: Alphabets,
    pub transition: ChannelLaw,
}

/// Which receiver an output belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Y0,
    Y1,
    YR,
}

impl Output {
    pub fn label(self) -> &'static str {
        match self {
            Output::Y0 => Y0,
            Output::Y1 => Y1,
            Output::YR => YR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Input triple (x0, x2, xR) of the offending row.
    pub input: (usize, usize, usize),
    /// Which tensor the row belongs to (`joint`, `y0`, `y1`, `yr`).
    pub component: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Structural problems (wrong tensor length, empty alphabet).
    pub shape_errors: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.shape_errors.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.shape_errors {
            writeln!(f, "shape: {e}")?;
        }
        for v in &self.violations {
            writeln!(
                f,
                "{} row (x0={}, x2={}, xR={}): {}",
                v.component, v.input.0, v.input.1, v.input.2, v.message
            )?;
        }
        Ok(())
    }
}

/// Row-major encoding of a tuple of symbols into one composite symbol.
///
/// `composite_symbol(&[(a, |A|), (b, |B|)]) == a * |B| + b`.
pub fn composite_symbol(parts: &[(usize, usize)]) -> usize {
    parts.iter().fold(0, |acc, &(v, size)| {
        debug_assert!(v < size);
        acc * size + v
    })
}

/// Inverse of [`composite_symbol`].
pub fn split_symbol(mut symbol: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (o, &s) in out.iter_mut().zip(sizes).rev() {
        *o = symbol % s;
        symbol /= s;
    }
    out
}

fn check_tensor(
    report: &mut ValidationReport,
    tensor: &[f64],
    a: &Alphabets,
    width: usize,
    component: &'static str,
) {
    let rows = a.input_states();
    if tensor.len() != rows * width {
        report.shape_errors.push(format!(
            "{component} tensor has {} entries, expected {}",
            tensor.len(),
            rows * width
        ));
        return;
    }
    for (r, row) in tensor.chunks(width).enumerate() {
        let idx = split_symbol(r, &[a.x0, a.x2, a.xr]);
        let input = (idx[0], idx[1], idx[2]);
        for (j, &p) in row.iter().enumerate() {
            if !(p >= 0.0) || !p.is_finite() {
                report.violations.push(Violation {
                    input,
                    component,
                    message: format!("entry {j} is {p}"),
                });
            }
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > NORMALIZATION_TOL {
            report.violations.push(Violation {
                input,
                component,
                message: format!("row sums to {s}"),
            });
        }
    }
}

/// Reports every violated invariant of a channel spec.
pub fn validate_channel(spec: &ChannelSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let a = &spec.alphabets;
    for (name, s) in [
        ("x0", a.x0),
        ("x2", a.x2),
        ("xr", a.xr),
        ("y0", a.y0),
        ("y1", a.y1),
        ("yr", a.yr),
    ] {
        if s == 0 {
            report.shape_errors.push(format!("alphabet {name} is empty"));
        }
    }
    if !report.shape_errors.is_empty() {
        return report;
    }
    match &spec.transition {
        ChannelLaw::Joint { probs } => check_tensor(&mut report, probs, a, a.output_states(), "joint"),
        ChannelLaw::Independent { y0, y1, yr } => {
            check_tensor(&mut report, y0, a, a.y0, "y0");
            check_tensor(&mut report, y1, a, a.y1, "y1");
            check_tensor(&mut report, yr, a, a.yr, "yr");
        }
    }
    report
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        let report = validate_channel(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidChannel(report.to_string().trim_end().to_string()))
        }
    }

    /// Builds a noiseless channel from a symbol map (x0, x2, xR) -> (y0, y1, yR).
    pub fn deterministic(alphabets: Alphabets, f: impl Fn(usize, usize, usize) -> (usize, usize, usize)) -> Self {
        let a = alphabets;
        let width = a.output_states();
        let mut probs = vec![0.0; a.input_states() * width];
        for x0 in 0..a.x0 {
            for x2 in 0..a.x2 {
                for xr in 0..a.xr {
                    let (y0, y1, yr) = f(x0, x2, xr);
                    let row = composite_symbol(&[(x0, a.x0), (x2, a.x2), (xr, a.xr)]);
                    let col = composite_symbol(&[(y0, a.y0), (y1, a.y1), (yr, a.yr)]);
                    probs[row * width + col] = 1.0;
                }
            }
        }
        Self {
            alphabets,
            transition: ChannelLaw::Joint { probs },
        }
    }

    /// Binary noiseless orthogonal links: Y1 = X0, Y0 = X2 and the relay sees
    /// (X0, X2) as one 4-ary symbol. XR is ignored.
    pub fn noiseless_orthogonal() -> Self {
        Self::deterministic(
            Alphabets {
                yr: 4,
                ..Alphabets::BINARY
            },
            |x0, x2, _| (x2, x0, composite_symbol(&[(x0, 2), (x2, 2)])),
        )
    }

    /// Like [`noiseless_orthogonal`](Self::noiseless_orthogonal) but the
    /// receiving user also observes X2: Y1 = (X0, X2).
    pub fn noiseless_full_view() -> Self {
        Self::deterministic(
            Alphabets {
                y1: 4,
                yr: 4,
                ..Alphabets::BINARY
            },
            |x0, x2, _| {
                let both = composite_symbol(&[(x0, 2), (x2, 2)]);
                (x2, both, both)
            },
        )
    }

    /// Every output is uniform and independent of the inputs.
    pub fn useless(alphabets: Alphabets) -> Self {
        let a = alphabets;
        let rows = a.input_states();
        Self {
            alphabets,
            transition: ChannelLaw::Independent {
                y0: vec![1.0 / a.y0 as f64; rows * a.y0],
                y1: vec![1.0 / a.y1 as f64; rows * a.y1],
                yr: vec![1.0 / a.yr as f64; rows * a.yr],
            },
        }
    }

    /// Row p(y0, y1, yR | x0, x2, xR) flattened over the output product.
    pub fn row(&self, x0: usize, x2: usize, xr: usize) -> Vec<f64> {
        let a = &self.alphabets;
        let r = composite_symbol(&[(x0, a.x0), (x2, a.x2), (xr, a.xr)]);
        match &self.transition {
            ChannelLaw::Joint { probs } => {
                let w = a.output_states();
                probs[r * w..(r + 1) * w].to_vec()
            }
            ChannelLaw::Independent { y0, y1, yr } => {
                let p0 = &y0[r * a.y0..(r + 1) * a.y0];
                let p1 = &y1[r * a.y1..(r + 1) * a.y1];
                let pr = &yr[r * a.yr..(r + 1) * a.yr];
                let mut out = Vec::with_capacity(a.output_states());
                for &u in p0 {
                    for &v in p1 {
                        for &w in pr {
                            out.push(u * v * w);
                        }
                    }
                }
                out
            }
        }
    }

    /// Dense tensor over (x0, x2, xR, y0, y1, yR).
    pub fn joint_tensor(&self) -> Vec<f64> {
        let a = &self.alphabets;
        let mut out = Vec::with_capacity(a.input_states() * a.output_states());
        for x0 in 0..a.x0 {
            for x2 in 0..a.x2 {
                for xr in 0..a.xr {
                    out.extend(self.row(x0, x2, xr));
                }
            }
        }
        out
    }

    /// Tensor over (x0, x2, xR, y) for a single output.
    pub fn output_tensor(&self, output: Output) -> Vec<f64> {
        let a = &self.alphabets;
        match (&self.transition, output) {
            (ChannelLaw::Independent { y0, .. }, Output::Y0) => y0.clone(),
            (ChannelLaw::Independent { y1, .. }, Output::Y1) => y1.clone(),
            (ChannelLaw::Independent { yr, .. }, Output::YR) => yr.clone(),
            (ChannelLaw::Joint { probs }, _) => {
                let w = a.output_states();
                let (size, pick): (usize, Box<dyn Fn(&[usize]) -> usize>) = match output {
                    Output::Y0 => (a.y0, Box::new(|v: &[usize]| v[0])),
                    Output::Y1 => (a.y1, Box::new(|v: &[usize]| v[1])),
                    Output::YR => (a.yr, Box::new(|v: &[usize]| v[2])),
                };
                let mut out = vec![0.0; a.input_states() * size];
                for (r, row) in probs.chunks(w).enumerate() {
                    for (c, &p) in row.iter().enumerate() {
                        let y = pick(&split_symbol(c, &[a.y0, a.y1, a.yr]));
                        out[r * size + y] += p;
                    }
                }
                out
            }
        }
    }

    /// Replaces the relay observation by a constant symbol.
    pub fn with_constant_relay_output(&self) -> Self {
        let a = self.alphabets;
        let mut yr = vec![0.0; a.input_states() * a.yr];
        for r in 0..a.input_states() {
            yr[r * a.yr] = 1.0;
        }
        let y0 = self.output_tensor(Output::Y0);
        let y1 = self.output_tensor(Output::Y1);
        let transition = match &self.transition {
            ChannelLaw::Independent { .. } => ChannelLaw::Independent { y0, y1, yr },
            ChannelLaw::Joint { probs } => {
                // keep the (y0, y1) dependence, collapse yR
                let w = a.output_states();
                let mut out = vec![0.0; probs.len()];
                for (r, row) in probs.chunks(w).enumerate() {
                    for (c, &p) in row.iter().enumerate() {
                        let y = split_symbol(c, &[a.y0, a.y1, a.yr]);
                        let c0 = composite_symbol(&[(y[0], a.y0), (y[1], a.y1), (0, a.yr)]);
                        out[r * w + c0] += p;
                    }
                }
                ChannelLaw::Joint { probs: out }
            }
        };
        Self {
            alphabets: a,
            transition,
        }
    }
}

fn check_input_law(spec: &ChannelSpec, input_law: &JointPmf) -> Result<()> {
    let a = &spec.alphabets;
    for (label, size) in [(X0, a.x0), (X2, a.x2), (XR, a.xr)] {
        let got = input_law
            .size_of(label)
            .map_err(|_| Error::MissingVariable(label.to_string()))?;
        if got != size {
            return Err(Error::AlphabetMismatch(format!(
                "{label} has {got} symbols in the input law but {size} in the channel"
            )));
        }
    }
    for label in [Y0, Y1, YR] {
        if input_law.contains_variable(label) {
            return Err(Error::InvalidInput(format!("input law already contains output {label}")));
        }
    }
    Ok(())
}

/// Joint law of the input/auxiliary variables and all three outputs.
pub fn assemble_joint(spec: &ChannelSpec, input_law: &JointPmf) -> Result<JointPmf> {
    assemble_outputs(spec, input_law, &[Output::Y0, Output::Y1, Output::YR])
}

/// Like [`assemble_joint`] but only appends the requested outputs, in the
/// order given. Keeps the state space small when only some receivers matter.
pub fn assemble_outputs(spec: &ChannelSpec, input_law: &JointPmf, outputs: &[Output]) -> Result<JointPmf> {
    check_input_law(spec, input_law)?;
    let a = &spec.alphabets;
    let parents = [X0, X2, XR];
    match &spec.transition {
        ChannelLaw::Joint { probs } => {
            let full = input_law.extend(&[(Y0, a.y0), (Y1, a.y1), (YR, a.yr)], &parents, probs)?;
            if outputs == [Output::Y0, Output::Y1, Output::YR] {
                return Ok(full);
            }
            let mut keep: Vec<&str> = input_law.variables().iter().map(String::as_str).collect();
            keep.extend(outputs.iter().map(|o| o.label()));
            reorder(&full.marginalize(&keep)?, &keep)
        }
        ChannelLaw::Independent { .. } => {
            let mut joint = input_law.clone();
            for &o in outputs {
                let size = match o {
                    Output::Y0 => a.y0,
                    Output::Y1 => a.y1,
                    Output::YR => a.yr,
                };
                joint = joint.extend(&[(o.label(), size)], &parents, &spec.output_tensor(o))?;
            }
            Ok(joint)
        }
    }
}

fn reorder(pmf: &JointPmf, order: &[&str]) -> Result<JointPmf> {
    if pmf.variables().iter().map(String::as_str).eq(order.iter().copied()) {
        return Ok(pmf.clone());
    }
    // rebuild by appending each variable as a deterministic copy
    let sizes: Vec<usize> = order.iter().map(|l| pmf.size_of(l)).collect::<Result<_>>()?;
    let n = pmf.probs().len();
    let mut probs = vec![0.0; n];
    let idx: Vec<usize> = order.iter().map(|l| pmf.index_of(l)).collect::<Result<_>>()?;
    for (s, &p) in pmf.probs().iter().enumerate() {
        let digits = split_symbol(s, pmf.sizes());
        let parts: Vec<(usize, usize)> = idx.iter().map(|&i| (digits[i], pmf.sizes()[i])).collect();
        probs[composite_symbol(&parts)] += p;
    }
    JointPmf::new(order.to_vec(), sizes, probs)
}

/// Channel with no direct base-station/user links: the relay observation is
/// kept and both end receivers see a noiseless copy of XR, so
/// X2 - (XR, YR) - Y0 and X0 - (XR, YR) - Y1 hold under every input law.
pub fn build_twrc_reduction(base: &ChannelSpec) -> Result<ChannelSpec> {
    base.validate()?;
    let a = base.alphabets;
    let alphabets = Alphabets {
        y0: a.xr,
        y1: a.xr,
        ..a
    };
    let rows = a.input_states();
    let mut copy = vec![0.0; rows * a.xr];
    for r in 0..rows {
        let xr = r % a.xr;
        copy[r * a.xr + xr] = 1.0;
    }
    Ok(ChannelSpec {
        alphabets,
        transition: ChannelLaw::Independent {
            y0: copy.clone(),
            y1: copy,
            yr: base.output_tensor(Output::YR),
        },
    })
}
