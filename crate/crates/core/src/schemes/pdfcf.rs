use serde::Serialize;

use super::{
    inputs::{CfInput, PdfCfInput},
    Mi, RowBuilder, R0, R0C, R0D, R2, R2C, R2D,
};
use crate::channel::ChannelSpec;
use crate::error::Result;
use crate::polytope::RatePolytope;
use crate::prob::{InfoCache, JointPmf, CLAMP_TOL};
use crate::vars::*;

/// Wyner–Ziv compression gate: the compression index must be decodable at
/// both receivers given what they already know.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompressionCheck {
    pub feasible: bool,
    /// max of the two side-information compression rates.
    pub lhs: f64,
    /// min of the two relay-to-receiver rates.
    pub rhs: f64,
    pub lhs_terms: [f64; 2],
    pub rhs_terms: [f64; 2],
    /// Rate of the compression codebook, I(ŶR; YR | XR, V0, V2).
    pub r_hat3: f64,
    /// Rate of the bin index, equal to `rhs`.
    pub r3: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdfCfEvaluation {
    pub region: RatePolytope,
    pub check: CompressionCheck,
}

/// Information terms of the hybrid region: `d*` are the compressed (direct)
/// parts, `r*` relay decoding, `s2` the base station, `t*` UE1.
struct Terms {
    d0: Mi,
    d2: Mi,
    r0: Mi,
    t0: Mi,
    r2: Mi,
    s2: Mi,
    t2: Mi,
    r02: Mi,
    t02: Mi,
}

fn terms() -> Terms {
    Terms {
        d0: Mi::new(&[X0], &[Y1, YHAT], &[U0, U2, V0, V2, XR]),
        d2: Mi::new(&[X2], &[Y0, YHAT], &[U0, U2, V0, V2, X0, XR]),
        r0: Mi::new(&[V0], &[YR], &[XR, U0, U2, V2]),
        t0: Mi::new(&[U0, V0], &[Y1], &[U2, V2]),
        r2: Mi::new(&[V2], &[YR], &[XR, U0, U2, V0]),
        s2: Mi::new(&[U2, V2], &[Y0], &[U0, V0, X0]),
        t2: Mi::new(&[U2, V2], &[Y1], &[U0, V0]),
        r02: Mi::new(&[V0, V2], &[YR], &[XR, U0, U2]),
        t02: Mi::new(&[U0, U2, V0, V2], &[Y1], &[]),
    }
}

fn check(cache: &InfoCache<'_>, aux: &[&'static str]) -> Result<CompressionCheck> {
    let keep = |v: &[&'static str]| -> Vec<&'static str> {
        v.iter().copied().filter(|x| !x.starts_with(['U', 'V']) || aux.contains(x)).collect()
    };
    let l0 = cache.cmi(&[YHAT], &[YR], &keep(&[Y0, X0, XR, V0, V2]))?;
    let l1 = cache.cmi(&[YHAT], &[YR], &keep(&[Y1, XR, V0, V2]))?;
    let q0 = cache.cmi(&[XR], &[Y0], &keep(&[U0, U2, V0, V2, X0]))?;
    let q1 = cache.cmi(&[XR], &[Y1], &keep(&[U0, U2, V0, V2]))?;
    let r_hat3 = cache.cmi(&[YHAT], &[YR], &keep(&[XR, V0, V2]))?;
    let (lhs, rhs) = (l0.max(l1), q0.min(q1));
    Ok(CompressionCheck {
        feasible: lhs <= rhs + CLAMP_TOL,
        lhs,
        rhs,
        lhs_terms: [l0, l1],
        rhs_terms: [q0, q1],
        r_hat3,
        r3: rhs,
    })
}

const AUX: [&str; 4] = [U0, U2, V0, V2];

/// Evaluates only the compression gate.
pub fn pdfcf_feasible(spec: &ChannelSpec, input: &PdfCfInput) -> Result<CompressionCheck> {
    let joint = input.joint(spec)?;
    check(&InfoCache::new(&joint), &AUX)
}

fn hybrid_region(joint: &JointPmf) -> Result<PdfCfEvaluation> {
    let check = check(&InfoCache::new(joint), &AUX)?;
    if !check.feasible {
        return Ok(PdfCfEvaluation {
            region: RatePolytope::empty(&[R0, R2]),
            check,
        });
    }
    let t = terms();
    let mut b = RowBuilder::new(&[R0, R2], joint);
    b.row(&[(R0, 1)], &[&t.d0, &t.r0])?;
    b.row(&[(R0, 1)], &[&t.d0, &t.t0])?;
    b.row(&[(R2, 1)], &[&t.d2, &t.r2])?;
    b.row(&[(R2, 1)], &[&t.d2, &t.s2])?;
    b.row(&[(R2, 1)], &[&t.d2, &t.t2])?;
    b.row(&[(R0, 1), (R2, 1)], &[&t.d0, &t.d2, &t.r02])?;
    b.row(&[(R0, 1), (R2, 1)], &[&t.d0, &t.d2, &t.t02])?;
    Ok(PdfCfEvaluation {
        region: b.finish(),
        check,
    })
}

/// Partial DF + CF region over (R0, R2); the empty marker when the
/// compression gate fails.
pub fn pdfcf_region(spec: &ChannelSpec, input: &PdfCfInput) -> Result<PdfCfEvaluation> {
    hybrid_region(&input.joint(spec)?)
}

/// Raw constraint system over the decoded parts (R0c, R2c) and the
/// compressed parts (R0d, R2d). The compression gate is not applied.
pub fn pdfcf_appendix_system(spec: &ChannelSpec, input: &PdfCfInput) -> Result<RatePolytope> {
    let joint = input.joint(spec)?;
    let t = terms();
    let mut b = RowBuilder::new(&[R0C, R0D, R2C, R2D], &joint);
    b.row(&[(R0C, 1)], &[&t.r0])?;
    b.row(&[(R2C, 1)], &[&t.r2])?;
    b.row(&[(R0C, 1), (R2C, 1)], &[&t.r02])?;
    b.row(&[(R2C, 1)], &[&t.s2])?;
    b.row(&[(R0C, 1)], &[&t.t0])?;
    b.row(&[(R2C, 1)], &[&t.t2])?;
    b.row(&[(R0C, 1), (R2C, 1)], &[&t.t02])?;
    b.row(&[(R0D, 1)], &[&t.d0])?;
    b.row(&[(R2D, 1)], &[&t.d2])?;
    Ok(b.finish())
}

/// Pure compress-and-forward, coded directly without auxiliaries.
pub fn cf_region(spec: &ChannelSpec, input: &CfInput) -> Result<PdfCfEvaluation> {
    let joint = input.joint(spec)?;
    let cache = InfoCache::new(&joint);
    let check = check(&cache, &[])?;
    if !check.feasible {
        return Ok(PdfCfEvaluation {
            region: RatePolytope::empty(&[R0, R2]),
            check,
        });
    }
    let d0 = Mi::new(&[X0], &[Y1, YHAT], &[XR]);
    let d2 = Mi::new(&[X2], &[Y0, YHAT], &[X0, XR]);
    let mut b = RowBuilder::new(&[R0, R2], &joint);
    b.row(&[(R0, 1)], &[&d0])?;
    b.row(&[(R2, 1)], &[&d2])?;
    b.row(&[(R0, 1), (R2, 1)], &[&d0, &d2])?;
    Ok(PdfCfEvaluation {
        region: b.finish(),
        check,
    })
}
