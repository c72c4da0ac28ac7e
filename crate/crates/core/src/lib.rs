//! Rate regions of the three-end-node interference two-way relay channel.
//!
//! A base station (BS) sends a downlink message to one user (UE1) while
//! receiving an uplink message from another user (UE2), both helped by a
//! full-duplex relay (RN). This crate evaluates, for discrete memoryless
//! channels:
//!
//! - the cut-set outer bound,
//! - decode-and-forward (DF) regions with and without rate splitting,
//! - the partial decode-and-forward + compress-and-forward (pDF+CF) region,
//!
//! and cross-checks them against Fourier–Motzkin projections of the raw
//! decoding constraints. [`search`] traces best-known frontiers over input
//! distributions; [`gaussian`] quantizes AWGN scenarios into discrete specs.

pub mod channel;
pub mod error;
pub mod gaussian;
pub mod io;
pub mod polytope;
pub mod prob;
pub mod schemes;
pub mod search;
pub mod svg;
pub mod vars;
pub mod verify;

pub use channel::{assemble_joint, build_twrc_reduction, validate_channel, Alphabets, ChannelLaw, ChannelSpec};
pub use error::{Error, Result};
pub use polytope::{RateConstraint, RatePolytope, RegionFrontier};
pub use prob::JointPmf;
