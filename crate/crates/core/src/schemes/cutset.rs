use super::{inputs::CutsetInput, Mi, RowBuilder, R0, R2};
use crate::channel::{assemble_joint, ChannelSpec};
use crate::error::{Error, Result};
use crate::polytope::RatePolytope;
use crate::prob::{InfoCache, JointPmf};
use crate::vars::*;

fn terms() -> [Mi; 4] {
    [
        Mi::new(&[X0], &[YR, Y1], &[XR, X2]),
        Mi::new(&[X0, XR], &[Y1], &[X2]),
        Mi::new(&[X2], &[YR, Y0], &[XR, X0]),
        Mi::new(&[X2, XR], &[Y0], &[X0]),
    ]
}

fn joint_for(spec: &ChannelSpec, input_law: &JointPmf) -> Result<JointPmf> {
    let mut vars: Vec<&str> = input_law.variables().iter().map(String::as_str).collect();
    vars.sort_unstable();
    if vars != [X0, X2, XR] {
        return Err(Error::AlphabetMismatch(format!(
            "cut-set input law must be over exactly X0, X2, XR; got {vars:?}"
        )));
    }
    assemble_joint(spec, input_law)
}

/// Downlink and uplink cut-set bounds `(R_DL, R_UL)` for one input law
/// p(x0, x2, xR).
pub fn cutset_rectangle(spec: &ChannelSpec, input_law: &JointPmf) -> Result<(f64, f64)> {
    let joint = joint_for(spec, input_law)?;
    let cache = InfoCache::new(&joint);
    let v = terms().map(|t| t.eval(&cache));
    let [a, b, c, d] = v;
    Ok((a?.min(b?), c?.min(d?)))
}

/// The rectangle `[0, R_DL] × [0, R_UL]` with one row per cut.
pub fn cutset_region(spec: &ChannelSpec, input: &CutsetInput) -> Result<RatePolytope> {
    let law = input.law(spec)?;
    let joint = joint_for(spec, &law)?;
    let [dl_mac, dl_bc, ul_mac, ul_bc] = terms();
    let mut b = RowBuilder::new(&[R0, R2], &joint);
    b.row(&[(R0, 1)], &[&dl_mac])?;
    b.row(&[(R0, 1)], &[&dl_bc])?;
    b.row(&[(R2, 1)], &[&ul_mac])?;
    b.row(&[(R2, 1)], &[&ul_bc])?;
    Ok(b.finish())
}
