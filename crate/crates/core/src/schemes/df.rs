use super::{
    inputs::{DfNoRsInput, DfRsInput},
    Mi, RowBuilder, R0, R2, R2C, R2P,
};
use crate::channel::ChannelSpec;
use crate::error::Result;
use crate::polytope::RatePolytope;
use crate::vars::*;

/// DF without rate splitting: UE1 and the relay each decode both messages.
pub fn df_nors_region(spec: &ChannelSpec, input: &DfNoRsInput) -> Result<RatePolytope> {
    let joint = input.joint(spec)?;
    let mut b = RowBuilder::new(&[R0, R2], &joint);
    b.row(&[(R0, 1)], &[&Mi::new(&[X0, XR], &[Y1], &[U2, X2])])?;
    b.row(&[(R0, 1)], &[&Mi::new(&[X0], &[YR], &[X2, U0, U2])])?;
    b.row(&[(R2, 1)], &[&Mi::new(&[X2, XR], &[Y0], &[U0, X0])])?;
    b.row(&[(R2, 1)], &[&Mi::new(&[X2], &[YR], &[X0, U0, U2])])?;
    b.row(&[(R0, 1), (R2, 1)], &[&Mi::new(&[X0, X2, XR], &[Y1], &[])])?;
    b.row(&[(R0, 1), (R2, 1)], &[&Mi::new(&[X0, X2], &[YR], &[U0, U2])])?;
    Ok(b.finish())
}

const U: [&str; 3] = [U0, U2C, U2P];

fn with_u(extra: &[&'static str]) -> Vec<&'static str> {
    U.iter().chain(extra).copied().collect()
}

/// Relay-side term I(X(S); YR | U, X(S^c)).
fn relay(s: &[&'static str], rest: &[&'static str]) -> Mi {
    Mi::new(s, &[YR], &with_u(rest))
}

/// DF with rate splitting in closed form, over (R0, R2).
pub fn df_rs_region(spec: &ChannelSpec, input: &DfRsInput) -> Result<RatePolytope> {
    let joint = input.joint(spec)?;
    let a0 = relay(&[X0], &[X2C, X2P]);
    let c0 = Mi::new(&[X0, XR], &[Y1], &[U2C, X2C]);
    let a2c2p = relay(&[X2C, X2P], &[X0]);
    let bs = Mi::new(&[X2C, X2P, XR], &[Y0], &[U0, X0]);
    let a2p = relay(&[X2P], &[X0, X2C]);
    let a2c = relay(&[X2C], &[X0, X2P]);
    let c2 = Mi::new(&[X2C, XR], &[Y1], &[U0, X0]);
    let aall = relay(&[X0, X2C, X2P], &[]);
    let a02c = relay(&[X0, X2C], &[X2P]);
    let c02 = Mi::new(&[X0, X2C, XR], &[Y1], &[]);
    let a02p = relay(&[X0, X2P], &[X2C]);

    let mut b = RowBuilder::new(&[R0, R2], &joint);
    let sum = [(R0, 1), (R2, 1)];
    b.row(&[(R0, 1)], &[&a0])?;
    b.row(&[(R0, 1)], &[&c0])?;
    b.row(&[(R2, 1)], &[&a2c2p])?;
    b.row(&[(R2, 1)], &[&bs])?;
    b.row(&[(R2, 1)], &[&a2p, &a2c])?;
    b.row(&[(R2, 1)], &[&a2p, &c2])?;
    b.row(&sum, &[&aall])?;
    b.row(&sum, &[&a2p, &a02c])?;
    b.row(&sum, &[&a2p, &c02])?;
    b.row(&sum, &[&a02p, &a2c])?;
    b.row(&sum, &[&a02p, &c2])?;
    b.row(&[(R0, 2), (R2, 1)], &[&a02p, &a02c])?;
    b.row(&[(R0, 2), (R2, 1)], &[&a02p, &c02])?;
    Ok(b.finish())
}

/// The raw decoding constraints of DF with rate splitting over
/// (R0, R2c, R2p): relay MAC, base station, and UE1.
pub fn df_rs_appendix_system(spec: &ChannelSpec, input: &DfRsInput) -> Result<RatePolytope> {
    let joint = input.joint(spec)?;
    let mut b = RowBuilder::new(&[R0, R2C, R2P], &joint);
    let parts = [(R0, X0), (R2C, X2C), (R2P, X2P)];
    for mask in 1..8u32 {
        let (inside, outside): (Vec<_>, Vec<_>) = parts.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let lhs: Vec<(&str, i64)> = inside.iter().map(|(_, p)| (p.0, 1)).collect();
        let s: Vec<&'static str> = inside.iter().map(|(_, p)| p.1).collect();
        let rest: Vec<&'static str> = outside.iter().map(|(_, p)| p.1).collect();
        b.row(&lhs, &[&relay(&s, &rest)])?;
    }
    b.row(&[(R2C, 1), (R2P, 1)], &[&Mi::new(&[U2C, U2P, X2C, X2P, XR], &[Y0], &[U0, X0])])?;
    b.row(&[(R0, 1)], &[&Mi::new(&[X0, XR], &[Y1], &[U2C, X2C])])?;
    b.row(&[(R2C, 1)], &[&Mi::new(&[X2C, XR], &[Y1], &[U0, X0])])?;
    b.row(&[(R0, 1), (R2C, 1)], &[&Mi::new(&[X0, X2C, XR], &[Y1], &[])])?;
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Alphabets;

    fn constant_rs(spec: &ChannelSpec) -> DfRsInput {
        let i = DfRsInput {
            p_u0: vec![1.0],
            p_x0_given_u0: vec![vec![0.5, 0.5]],
            p_u2c: vec![1.0],
            p_x2c_given_u2c: vec![vec![0.5, 0.5]],
            p_u2p: vec![1.0],
            p_x2p_given_u2p: vec![vec![1.0]],
            x2_map: vec![vec![0], vec![1]],
            relay_map: vec![vec![vec![0]]],
        };
        i.validate(spec).unwrap();
        i
    }

    #[test]
    fn nors_has_six_rows_plus_nonnegativity() {
        let spec = ChannelSpec::noiseless_orthogonal();
        let r = df_nors_region(&spec, &DfNoRsInput::constant_auxiliaries(&spec)).unwrap();
        assert_eq!(r.constraints().len(), 8);
        assert!(r.constraints().iter().all(|c| c.bound >= 0.0 && c.bound.is_finite()));
    }

    #[test]
    fn constant_relay_output_collapses_df_regions() {
        let spec = ChannelSpec::noiseless_orthogonal().with_constant_relay_output();
        let r = df_nors_region(&spec, &DfNoRsInput::constant_auxiliaries(&spec)).unwrap();
        assert_eq!(r.vertices_2d().unwrap(), vec![(0.0, 0.0)]);
        let r = df_rs_region(&spec, &constant_rs(&spec)).unwrap();
        assert_eq!(r.vertices_2d().unwrap(), vec![(0.0, 0.0)]);
    }

    #[test]
    fn appendix_system_shape() {
        let spec = ChannelSpec::noiseless_orthogonal();
        let s = df_rs_appendix_system(&spec, &constant_rs(&spec)).unwrap();
        assert_eq!(s.variables(), &[R0, R2C, R2P]);
        assert_eq!(s.constraints().len(), 7 + 1 + 3 + 3);
        // Singleton relay bound on R0 in the noiseless channel.
        assert!((s.constraints()[0].bound - 1.0).abs() < 1e-12);
    }

    #[test]
    fn useless_relay_zeroes_mac_rows() {
        let spec = ChannelSpec::useless(Alphabets::BINARY);
        let s = df_rs_appendix_system(&spec, &constant_rs(&spec)).unwrap();
        assert!(s.constraints()[..7].iter().all(|c| c.bound == 0.0));
    }
}
