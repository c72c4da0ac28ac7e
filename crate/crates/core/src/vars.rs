//! Variable labels used in assembled joints.

pub const X0: &str = "X0";
pub const X2: &str = "X2";
pub const XR: &str = "XR";
pub const Y0: &str = "Y0";
pub const Y1: &str = "Y1";
pub const YR: &str = "YR";

pub const U0: &str = "U0";
pub const U2: &str = "U2";
pub const U2C: &str = "U2c";
pub const U2P: &str = "U2p";
pub const X2C: &str = "X2c";
pub const X2P: &str = "X2p";
pub const V0: &str = "V0";
pub const V2: &str = "V2";
pub const YHAT: &str = "YhatR";
