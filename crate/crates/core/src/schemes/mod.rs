//! Rate regions of each relaying scheme for a fixed channel and input.
//!
//! Every `min{..}` of the closed-form regions is expanded into one
//! half-space per argument. Row labels carry the information expressions
//! they were computed from, so reports can be audited term by term.

mod cutset;
mod df;
mod inputs;
mod pdfcf;
mod terms;

pub use cutset::{cutset_rectangle, cutset_region};
pub use df::{df_nors_region, df_rs_appendix_system, df_rs_region};
pub use inputs::{
    CfInput, CutsetInput, DfNoRsInput, DfRsInput, DfRsSizes, PdfCfInput, PdfCfSizes, SchemeInput, SimplexMut,
};
pub use pdfcf::{cf_region, pdfcf_appendix_system, pdfcf_feasible, pdfcf_region, CompressionCheck, PdfCfEvaluation};
pub use terms::{Bound, Mi, TermValue};

use serde::{Deserialize, Serialize};

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};
use crate::polytope::RatePolytope;
use crate::prob::InfoCache;

pub const R0: &str = "R0";
pub const R2: &str = "R2";
pub const R2C: &str = "R2c";
pub const R2P: &str = "R2p";
pub const R0C: &str = "R0c";
pub const R0D: &str = "R0d";
pub const R2D: &str = "R2d";

/// The schemes the optimizer and CLI know about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    Cutset,
    DfNors,
    DfRs,
    Pdfcf,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 4] = [SchemeKind::Cutset, SchemeKind::DfNors, SchemeKind::DfRs, SchemeKind::Pdfcf];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Cutset => "cutset",
            SchemeKind::DfNors => "df_nors",
            SchemeKind::DfRs => "df_rs",
            SchemeKind::Pdfcf => "pdfcf",
        }
    }

    pub fn is_outer_bound(self) -> bool {
        self == SchemeKind::Cutset
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scheme '{s}'")))
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of [`evaluate`]: the (R0, R2) region plus, for compression-based
/// schemes, the compression feasibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeEvaluation {
    pub region: RatePolytope,
    pub compression: Option<CompressionCheck>,
}

/// Evaluates any scheme input to its (R0, R2) region.
pub fn evaluate(spec: &ChannelSpec, input: &SchemeInput) -> Result<SchemeEvaluation> {
    let plain = |region| SchemeEvaluation {
        region,
        compression: None,
    };
    Ok(match input {
        SchemeInput::Cutset(i) => plain(cutset_region(spec, i)?),
        SchemeInput::DfNors(i) => plain(df_nors_region(spec, i)?),
        SchemeInput::DfRs(i) => plain(df_rs_region(spec, i)?),
        SchemeInput::Pdfcf(i) => {
            let e = pdfcf_region(spec, i)?;
            SchemeEvaluation {
                region: e.region,
                compression: Some(e.check),
            }
        }
        SchemeInput::Cf(i) => {
            let e = cf_region(spec, i)?;
            SchemeEvaluation {
                region: e.region,
                compression: Some(e.check),
            }
        }
    })
}

fn lhs_text(lhs: &[(&str, i64)]) -> String {
    lhs.iter()
        .map(|&(v, c)| if c == 1 { v.to_string() } else { format!("{c}{v}") })
        .collect::<Vec<_>>()
        .join("+")
}

/// Accumulates labelled rows whose bounds are sums of information terms.
struct RowBuilder<'a> {
    poly: RatePolytope,
    cache: InfoCache<'a>,
}

impl<'a> RowBuilder<'a> {
    fn new(variables: &[&str], joint: &'a crate::prob::JointPmf) -> Self {
        Self {
            poly: RatePolytope::new(variables),
            cache: InfoCache::new(joint),
        }
    }

    fn row(&mut self, lhs: &[(&str, i64)], terms: &[&Mi]) -> Result<()> {
        let b = Bound::eval(&self.cache, terms)?;
        self.poly.add(lhs, b.value(), terms::row_label(&lhs_text(lhs), &b))
    }

    fn finish(mut self) -> RatePolytope {
        self.poly.add_nonnegativity();
        self.poly
    }
}
