//! Factorized input distributions for each scheme.
//!
//! Conditional tables are nested lists whose innermost list is a probability
//! row; the outer indices are the conditioning symbols in the order given by
//! the field name. Deterministic maps are nested lists of output symbols.

use serde::{Deserialize, Serialize};

use crate::channel::{assemble_joint, ChannelSpec, Output};
use crate::error::{Error, Result};
use crate::prob::{JointPmf, NORMALIZATION_TOL};
use crate::vars::*;

fn check_row(row: &[f64], what: &str) -> Result<()> {
    if row.is_empty() {
        return Err(Error::InvalidInput(format!("{what}: empty row")));
    }
    if let Some(p) = row.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
        return Err(Error::InvalidInput(format!("{what}: entry {p}")));
    }
    let s: f64 = row.iter().sum();
    if (s - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InvalidInput(format!("{what}: row sums to {s}")));
    }
    Ok(())
}

fn check_table(table: &[Vec<f64>], rows: usize, width: usize, what: &str) -> Result<()> {
    if table.len() != rows {
        return Err(Error::AlphabetMismatch(format!(
            "{what}: {} rows, expected {rows}",
            table.len()
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != width {
            return Err(Error::AlphabetMismatch(format!(
                "{what}: row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        check_row(row, what)?;
    }
    Ok(())
}

fn check_map(map: &[usize], len: usize, range: usize, what: &str) -> Result<()> {
    if map.len() != len {
        return Err(Error::AlphabetMismatch(format!(
            "{what}: {} entries, expected {len}",
            map.len()
        )));
    }
    if let Some(v) = map.iter().find(|&&v| v >= range) {
        return Err(Error::InvalidInput(format!("{what}: value {v} outside 0..{range}")));
    }
    Ok(())
}

fn check_size(got: usize, want: usize, what: &str) -> Result<()> {
    if got != want {
        return Err(Error::AlphabetMismatch(format!(
            "{what}: {got} symbols, channel has {want}"
        )));
    }
    Ok(())
}

fn flat(table: &[Vec<f64>]) -> Vec<f64> {
    table.iter().flatten().copied().collect()
}

/// Joint law p(x0, x2, xR) for the cut-set bound; indexed `[x0][x2][xR]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutsetInput {
    pub p_x0_x2_xr: Vec<Vec<Vec<f64>>>,
}

impl CutsetInput {
    pub fn uniform(spec: &ChannelSpec) -> Self {
        let a = spec.alphabets;
        let p = 1.0 / a.input_states() as f64;
        Self {
            p_x0_x2_xr: vec![vec![vec![p; a.xr]; a.x2]; a.x0],
        }
    }

    pub fn validate(&self, spec: &ChannelSpec) -> Result<()> {
        let a = spec.alphabets;
        check_size(self.p_x0_x2_xr.len(), a.x0, "cutset X0")?;
        for m in &self.p_x0_x2_xr {
            check_size(m.len(), a.x2, "cutset X2")?;
            for r in m {
                check_size(r.len(), a.xr, "cutset XR")?;
            }
        }
        check_row(&self.flat(), "p(x0,x2,xR)")
    }

    fn flat(&self) -> Vec<f64> {
        self.p_x0_x2_xr.iter().flatten().flatten().copied().collect()
    }

    pub fn law(&self, spec: &ChannelSpec) -> Result<JointPmf> {
        self.validate(spec)?;
        let a = spec.alphabets;
        JointPmf::new(vec![X0, X2, XR], vec![a.x0, a.x2, a.xr], self.flat())
    }

    pub fn from_law(law: &JointPmf) -> Result<Self> {
        let m = law.marginalize(&[X0, X2, XR])?;
        let idx = [m.index_of(X0)?, m.index_of(X2)?, m.index_of(XR)?];
        let (n0, n2, nr) = (m.sizes()[idx[0]], m.sizes()[idx[1]], m.sizes()[idx[2]]);
        let mut t = vec![vec![vec![0.0; nr]; n2]; n0];
        for (s, &p) in m.probs().iter().enumerate() {
            let d = crate::channel::split_symbol(s, m.sizes());
            t[d[idx[0]]][d[idx[1]]][d[idx[2]]] += p;
        }
        Ok(Self { p_x0_x2_xr: t })
    }
}

/// DF without rate splitting: p(u0, x0) p(u2, x2) and xR = f(u0, u2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfNoRsInput {
    /// Joint table `[u0][x0]`.
    pub p_u0_x0: Vec<Vec<f64>>,
    /// Joint table `[u2][x2]`.
    pub p_u2_x2: Vec<Vec<f64>>,
    /// `relay_map[u0][u2] = xR`.
    pub relay_map: Vec<Vec<usize>>,
}

impl DfNoRsInput {
    pub fn u0_size(&self) -> usize {
        self.p_u0_x0.len()
    }

    pub fn u2_size(&self) -> usize {
        self.p_u2_x2.len()
    }

    /// Constant auxiliaries, uniform inputs and a constant relay symbol.
    pub fn constant_auxiliaries(spec: &ChannelSpec) -> Self {
        let a = spec.alphabets;
        Self {
            p_u0_x0: vec![vec![1.0 / a.x0 as f64; a.x0]],
            p_u2_x2: vec![vec![1.0 / a.x2 as f64; a.x2]],
            relay_map: vec![vec![0]],
        }
    }

    pub fn validate(&self, spec: &ChannelSpec) -> Result<()> {
        let a = spec.alphabets;
        let (nu0, nu2) = (self.u0_size(), self.u2_size());
        for r in &self.p_u0_x0 {
            check_size(r.len(), a.x0, "p(u0,x0) X0")?;
        }
        for r in &self.p_u2_x2 {
            check_size(r.len(), a.x2, "p(u2,x2) X2")?;
        }
        check_row(&flat(&self.p_u0_x0), "p(u0,x0)")?;
        check_row(&flat(&self.p_u2_x2), "p(u2,x2)")?;
        check_size(self.relay_map.len(), nu0, "relay map U0")?;
        for r in &self.relay_map {
            check_map(r, nu2, a.xr, "relay map")?;
        }
        Ok(())
    }

    /// Joint over (U0, X0, U2, X2, XR, Y0, Y1, YR).
    pub fn joint(&self, spec: &ChannelSpec) -> Result<JointPmf> {
        self.validate(spec)?;
        let a = spec.alphabets;
        let bs = JointPmf::new(vec![U0, X0], vec![self.u0_size(), a.x0], flat(&self.p_u0_x0))?;
        let ue = JointPmf::new(vec![U2, X2], vec![self.u2_size(), a.x2], flat(&self.p_u2_x2))?;
        let map: Vec<usize> = self.relay_map.iter().flatten().copied().collect();
        let law = bs.product(&ue)?.extend_deterministic((XR, a.xr), &[U0, U2], &map)?;
        assemble_joint(spec, &law)
    }
}

/// DF with rate splitting at the transmitting user: independent common and
/// private layers (U2c, X2c) and (U2p, X2p) combined by x2 = g(x2c, x2p),
/// and relay codeword xR = f(u0, u2c, u2p).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfRsInput {
    pub p_u0: Vec<f64>,
    /// `[u0][x0]`
    pub p_x0_given_u0: Vec<Vec<f64>>,
    pub p_u2c: Vec<f64>,
    /// `[u2c][x2c]`
    pub p_x2c_given_u2c: Vec<Vec<f64>>,
    pub p_u2p: Vec<f64>,
    /// `[u2p][x2p]`
    pub p_x2p_given_u2p: Vec<Vec<f64>>,
    /// `x2_map[x2c][x2p] = x2`
    pub x2_map: Vec<Vec<usize>>,
    /// `relay_map[u0][u2c][u2p] = xR`
    pub relay_map: Vec<Vec<Vec<usize>>>,
}

impl DfRsInput {
    pub fn sizes(&self) -> DfRsSizes {
        DfRsSizes {
            u0: self.p_u0.len(),
            u2c: self.p_u2c.len(),
            u2p: self.p_u2p.len(),
            x2c: self.p_x2c_given_u2c.first().map_or(0, Vec::len),
            x2p: self.p_x2p_given_u2p.first().map_or(0, Vec::len),
        }
    }

    pub fn validate(&self, spec: &ChannelSpec) -> Result<()> {
        let a = spec.alphabets;
        let s = self.sizes();
        check_row(&self.p_u0, "p(u0)")?;
        check_row(&self.p_u2c, "p(u2c)")?;
        check_row(&self.p_u2p, "p(u2p)")?;
        check_table(&self.p_x0_given_u0, s.u0, a.x0, "p(x0|u0)")?;
        check_table(&self.p_x2c_given_u2c, s.u2c, s.x2c, "p(x2c|u2c)")?;
        check_table(&self.p_x2p_given_u2p, s.u2p, s.x2p, "p(x2p|u2p)")?;
        check_size(self.x2_map.len(), s.x2c, "x2 map X2c")?;
        for r in &self.x2_map {
            check_map(r, s.x2p, a.x2, "x2 map")?;
        }
        check_size(self.relay_map.len(), s.u0, "relay map U0")?;
        for m in &self.relay_map {
            check_size(m.len(), s.u2c, "relay map U2c")?;
            for r in m {
                check_map(r, s.u2p, a.xr, "relay map")?;
            }
        }
        Ok(())
    }

    /// Joint over (U0, X0, U2c, X2c, U2p, X2p, X2, XR, Y0, Y1, YR).
    pub fn joint(&self, spec: &ChannelSpec) -> Result<JointPmf> {
        self.validate(spec)?;
        let a = spec.alphabets;
        let s = self.sizes();
        let bs = JointPmf::new(vec![U0], vec![s.u0], self.p_u0.clone())?
            .extend(&[(X0, a.x0)], &[U0], &flat(&self.p_x0_given_u0))?;
        let common = JointPmf::new(vec![U2C], vec![s.u2c], self.p_u2c.clone())?
            .extend(&[(X2C, s.x2c)], &[U2C], &flat(&self.p_x2c_given_u2c))?;
        let private = JointPmf::new(vec![U2P], vec![s.u2p], self.p_u2p.clone())?
            .extend(&[(X2P, s.x2p)], &[U2P], &flat(&self.p_x2p_given_u2p))?;
        let g: Vec<usize> = self.x2_map.iter().flatten().copied().collect();
        let f: Vec<usize> = self.relay_map.iter().flatten().flatten().copied().collect();
        let law = bs
            .product(&common)?
            .product(&private)?
            .extend_deterministic((X2, a.x2), &[X2C, X2P], &g)?
            .extend_deterministic((XR, a.xr), &[U0, U2C, U2P], &f)?;
        assemble_joint(spec, &law)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DfRsSizes {
    pub u0: usize,
    pub u2c: usize,
    pub u2p: usize,
    pub x2c: usize,
    pub x2p: usize,
}

/// Partial DF + CF: superposition layers U -> V -> X at both transmitters,
/// relay input p(xR | u0, u2) and compression test channel
/// p(ŷR | yR, xR, u0, u2, v0, v2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdfCfInput {
    pub p_u0: Vec<f64>,
    /// `[u0][v0]`
    pub p_v0_given_u0: Vec<Vec<f64>>,
    /// `[v0][x0]`
    pub p_x0_given_v0: Vec<Vec<f64>>,
    pub p_u2: Vec<f64>,
    /// `[u2][v2]`
    pub p_v2_given_u2: Vec<Vec<f64>>,
    /// `[v2][x2]`
    pub p_x2_given_v2: Vec<Vec<f64>>,
    /// `[u0][u2][xR]`
    pub p_xr_given_u0_u2: Vec<Vec<Vec<f64>>>,
    pub yhat_size: usize,
    /// One row over ŷR per conditioning tuple, rows in row-major order of
    /// (yR, xR, u0, u2, v0, v2).
    pub test_channel: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdfCfSizes {
    pub u0: usize,
    pub v0: usize,
    pub u2: usize,
    pub v2: usize,
}

impl PdfCfInput {
    pub fn sizes(&self) -> PdfCfSizes {
        PdfCfSizes {
            u0: self.p_u0.len(),
            v0: self.p_v0_given_u0.first().map_or(0, Vec::len),
            u2: self.p_u2.len(),
            v2: self.p_v2_given_u2.first().map_or(0, Vec::len),
        }
    }

    pub fn test_channel_rows(&self, spec: &ChannelSpec) -> usize {
        let s = self.sizes();
        spec.alphabets.yr * spec.alphabets.xr * s.u0 * s.u2 * s.v0 * s.v2
    }

    pub fn validate(&self, spec: &ChannelSpec) -> Result<()> {
        let a = spec.alphabets;
        let s = self.sizes();
        check_row(&self.p_u0, "p(u0)")?;
        check_row(&self.p_u2, "p(u2)")?;
        check_table(&self.p_v0_given_u0, s.u0, s.v0, "p(v0|u0)")?;
        check_table(&self.p_x0_given_v0, s.v0, a.x0, "p(x0|v0)")?;
        check_table(&self.p_v2_given_u2, s.u2, s.v2, "p(v2|u2)")?;
        check_table(&self.p_x2_given_v2, s.v2, a.x2, "p(x2|v2)")?;
        check_size(self.p_xr_given_u0_u2.len(), s.u0, "p(xR|u0,u2) U0")?;
        for m in &self.p_xr_given_u0_u2 {
            check_table(m, s.u2, a.xr, "p(xR|u0,u2)")?;
        }
        if self.yhat_size == 0 {
            return Err(Error::InvalidInput("compression alphabet is empty".into()));
        }
        check_table(&self.test_channel, self.test_channel_rows(spec), self.yhat_size, "test channel")
    }

    /// Joint over (U0, V0, X0, U2, V2, X2, XR, Y0, Y1, YR, YhatR).
    pub fn joint(&self, spec: &ChannelSpec) -> Result<JointPmf> {
        self.validate(spec)?;
        let a = spec.alphabets;
        let s = self.sizes();
        let bs = JointPmf::new(vec![U0], vec![s.u0], self.p_u0.clone())?
            .extend(&[(V0, s.v0)], &[U0], &flat(&self.p_v0_given_u0))?
            .extend(&[(X0, a.x0)], &[V0], &flat(&self.p_x0_given_v0))?;
        let ue = JointPmf::new(vec![U2], vec![s.u2], self.p_u2.clone())?
            .extend(&[(V2, s.v2)], &[U2], &flat(&self.p_v2_given_u2))?
            .extend(&[(X2, a.x2)], &[V2], &flat(&self.p_x2_given_v2))?;
        let xr: Vec<f64> = self.p_xr_given_u0_u2.iter().flatten().flatten().copied().collect();
        let law = bs.product(&ue)?.extend(&[(XR, a.xr)], &[U0, U2], &xr)?;
        let joint = assemble_joint(spec, &law)?;
        joint.extend(
            &[(YHAT, self.yhat_size)],
            &[YR, XR, U0, U2, V0, V2],
            &flat(&self.test_channel),
        )
    }

    /// Embeds a pure compress-and-forward input with singleton auxiliaries.
    pub fn from_cf(cf: &CfInput) -> Self {
        Self {
            p_u0: vec![1.0],
            p_v0_given_u0: vec![vec![1.0]],
            p_x0_given_v0: vec![cf.p_x0.clone()],
            p_u2: vec![1.0],
            p_v2_given_u2: vec![vec![1.0]],
            p_x2_given_v2: vec![cf.p_x2.clone()],
            p_xr_given_u0_u2: vec![vec![cf.p_xr.clone()]],
            yhat_size: cf.yhat_size,
            test_channel: cf.test_channel.clone(),
        }
    }
}

/// Pure compress-and-forward: independent inputs and p(ŷR | yR, xR).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfInput {
    pub p_x0: Vec<f64>,
    pub p_x2: Vec<f64>,
    pub p_xr: Vec<f64>,
    pub yhat_size: usize,
    /// Rows in row-major order of (yR, xR).
    pub test_channel: Vec<Vec<f64>>,
}

impl CfInput {
    pub fn validate(&self, spec: &ChannelSpec) -> Result<()> {
        let a = spec.alphabets;
        check_size(self.p_x0.len(), a.x0, "p(x0)")?;
        check_size(self.p_x2.len(), a.x2, "p(x2)")?;
        check_size(self.p_xr.len(), a.xr, "p(xR)")?;
        check_row(&self.p_x0, "p(x0)")?;
        check_row(&self.p_x2, "p(x2)")?;
        check_row(&self.p_xr, "p(xR)")?;
        if self.yhat_size == 0 {
            return Err(Error::InvalidInput("compression alphabet is empty".into()));
        }
        check_table(&self.test_channel, a.yr * a.xr, self.yhat_size, "test channel")
    }

    /// Joint over (X0, X2, XR, Y0, Y1, YR, YhatR).
    pub fn joint(&self, spec: &ChannelSpec) -> Result<JointPmf> {
        self.validate(spec)?;
        let a = spec.alphabets;
        let law = JointPmf::new(vec![X0], vec![a.x0], self.p_x0.clone())?
            .product(&JointPmf::new(vec![X2], vec![a.x2], self.p_x2.clone())?)?
            .product(&JointPmf::new(vec![XR], vec![a.xr], self.p_xr.clone())?)?;
        let joint = crate::channel::assemble_outputs(spec, &law, &[Output::Y0, Output::Y1, Output::YR])?;
        joint.extend(&[(YHAT, self.yhat_size)], &[YR, XR], &flat(&self.test_channel))
    }
}

/// A scheme input of any kind, tagged by scheme name in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum SchemeInput {
    Cutset(CutsetInput),
    DfNors(DfNoRsInput),
    DfRs(DfRsInput),
    Pdfcf(PdfCfInput),
    Cf(CfInput),
}

/// Mutable views of the free parameters of an input, used by the optimizer.
pub enum SimplexMut<'a> {
    Row(&'a mut Vec<f64>),
    Table(&'a mut Vec<Vec<f64>>),
    Tensor(&'a mut Vec<Vec<Vec<f64>>>),
}

impl SimplexMut<'_> {
    pub fn read(&self) -> Vec<f64> {
        match self {
            SimplexMut::Row(r) => r.to_vec(),
            SimplexMut::Table(t) => flat(t),
            SimplexMut::Tensor(t) => t.iter().flatten().flatten().copied().collect(),
        }
    }

    pub fn write(&mut self, values: &[f64]) {
        let mut it = values.iter().copied();
        match self {
            SimplexMut::Row(r) => r.iter_mut().for_each(|x| *x = it.next().unwrap()),
            SimplexMut::Table(t) => t.iter_mut().flatten().for_each(|x| *x = it.next().unwrap()),
            SimplexMut::Tensor(t) => t
                .iter_mut()
                .flatten()
                .flatten()
                .for_each(|x| *x = it.next().unwrap()),
        }
    }
}

fn rows<'a>(t: &'a mut [Vec<f64>]) -> impl Iterator<Item = SimplexMut<'a>> {
    t.iter_mut().map(SimplexMut::Row)
}

impl SchemeInput {
    pub fn scheme_name(&self) -> &'static str {
        match self {
            SchemeInput::Cutset(_) => "cutset",
            SchemeInput::DfNors(_) => "df_nors",
            SchemeInput::DfRs(_) => "df_rs",
            SchemeInput::Pdfcf(_) => "pdfcf",
            SchemeInput::Cf(_) => "cf",
        }
    }

    pub fn validate(&self, spec: &ChannelSpec) -> Result<()> {
        match self {
            SchemeInput::Cutset(i) => i.validate(spec),
            SchemeInput::DfNors(i) => i.validate(spec),
            SchemeInput::DfRs(i) => i.validate(spec),
            SchemeInput::Pdfcf(i) => i.validate(spec),
            SchemeInput::Cf(i) => i.validate(spec),
        }
    }

    /// Every probability simplex among the parameters.
    pub fn simplices(&mut self) -> Vec<SimplexMut<'_>> {
        match self {
            SchemeInput::Cutset(i) => vec![SimplexMut::Tensor(&mut i.p_x0_x2_xr)],
            SchemeInput::DfNors(i) => vec![SimplexMut::Table(&mut i.p_u0_x0), SimplexMut::Table(&mut i.p_u2_x2)],
            SchemeInput::DfRs(i) => {
                let mut v = vec![SimplexMut::Row(&mut i.p_u0)];
                v.extend(rows(&mut i.p_x0_given_u0));
                v.push(SimplexMut::Row(&mut i.p_u2c));
                v.extend(rows(&mut i.p_x2c_given_u2c));
                v.push(SimplexMut::Row(&mut i.p_u2p));
                v.extend(rows(&mut i.p_x2p_given_u2p));
                v
            }
            SchemeInput::Pdfcf(i) => {
                let mut v = vec![SimplexMut::Row(&mut i.p_u0)];
                v.extend(rows(&mut i.p_v0_given_u0));
                v.extend(rows(&mut i.p_x0_given_v0));
                v.push(SimplexMut::Row(&mut i.p_u2));
                v.extend(rows(&mut i.p_v2_given_u2));
                v.extend(rows(&mut i.p_x2_given_v2));
                v.extend(i.p_xr_given_u0_u2.iter_mut().flat_map(|m| rows(m)));
                v.extend(rows(&mut i.test_channel));
                v
            }
            SchemeInput::Cf(i) => {
                let mut v = vec![
                    SimplexMut::Row(&mut i.p_x0),
                    SimplexMut::Row(&mut i.p_x2),
                    SimplexMut::Row(&mut i.p_xr),
                ];
                v.extend(rows(&mut i.test_channel));
                v
            }
        }
    }

    /// Every deterministic-map entry with the size of its range.
    pub fn map_entries(&mut self, spec: &ChannelSpec) -> Vec<(&mut usize, usize)> {
        let a = spec.alphabets;
        match self {
            SchemeInput::DfNors(i) => i.relay_map.iter_mut().flatten().map(|x| (x, a.xr)).collect(),
            SchemeInput::DfRs(i) => {
                let mut v: Vec<(&mut usize, usize)> = i.x2_map.iter_mut().flatten().map(|x| (x, a.x2)).collect();
                v.extend(i.relay_map.iter_mut().flatten().flatten().map(|x| (x, a.xr)));
                v
            }
            _ => Vec::new(),
        }
    }
}
