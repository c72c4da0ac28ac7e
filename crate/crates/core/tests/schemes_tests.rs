mod common;

use common::{bsc_links, direct_cmi};
use itwrc::channel::Alphabets;
use itwrc::schemes::*;
use itwrc::search::{sample_channel, sample_input, SearchBudget};
use itwrc::verify::make_feasible;
use itwrc::{assemble_joint, ChannelSpec, JointPmf, RatePolytope};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Parses `I(A,B;C|D)` into its three label sets.
fn parse_term(t: &str) -> (Vec<String>, Vec<String>, Vec<String>) {
    let body = t.trim().strip_prefix("I(").and_then(|s| s.strip_suffix(')')).expect("term");
    let (ab, c) = body.split_once('|').unwrap_or((body, ""));
    let (a, b) = ab.split_once(';').expect("';'");
    let list = |s: &str| s.split(',').filter(|x| !x.is_empty()).map(str::to_string).collect();
    (list(a), list(b), list(c))
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Recomputes every labelled bound of `region` from `joint` with the direct
/// oracle and returns the largest disagreement and the number of rows seen.
fn two_path_deviation(region: &RatePolytope, joint: &JointPmf) -> (f64, usize) {
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    for c in region.constraints() {
        let Some((_, rhs)) = c.label.split_once(" <= ") else { continue };
        let value: f64 = rhs
            .split(" + ")
            .map(|t| {
                let (a, b, g) = parse_term(t);
                let (a, b, g) = (refs(&a), refs(&b), refs(&g));
                direct_cmi(joint, &a, &b, &g)
            })
            .sum();
        worst = worst.max((value - c.bound).abs());
        rows += 1;
    }
    (worst, rows)
}

fn binary_with_ternary_relay() -> Alphabets {
    Alphabets { yr: 3, ..Alphabets::BINARY }
}

#[test]
fn every_bound_matches_the_direct_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let budget = SearchBudget::default();
    for trial in 0..12 {
        let a = if trial % 2 == 0 { Alphabets::BINARY } else { binary_with_ternary_relay() };
        let spec = sample_channel(a, &mut rng);
        for kind in SchemeKind::ALL {
            let input = sample_input(kind, &spec, &budget, &mut rng).unwrap();
            let (regions, joint): (Vec<RatePolytope>, JointPmf) = match input {
                SchemeInput::Cutset(i) => (vec![cutset_region(&spec, &i).unwrap()], assemble_joint(&spec, &i.law(&spec).unwrap()).unwrap()),
                SchemeInput::DfNors(i) => (vec![df_nors_region(&spec, &i).unwrap()], i.joint(&spec).unwrap()),
                SchemeInput::DfRs(i) => (
                    vec![df_rs_region(&spec, &i).unwrap(), df_rs_appendix_system(&spec, &i).unwrap()],
                    i.joint(&spec).unwrap(),
                ),
                SchemeInput::Pdfcf(i) => {
                    let i = make_feasible(&spec, i).unwrap();
                    (
                        vec![pdfcf_region(&spec, &i).unwrap().region, pdfcf_appendix_system(&spec, &i).unwrap()],
                        i.joint(&spec).unwrap(),
                    )
                }
                SchemeInput::Cf(_) => unreachable!(),
            };
            for r in &regions {
                let (dev, rows) = two_path_deviation(r, &joint);
                assert!(rows > 0, "{kind}: no labelled rows");
                assert!(dev <= 1e-9, "{kind}: bound deviates from oracle by {dev:e}");
            }
        }
    }
}

#[test]
fn compression_gate_matches_direct_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let spec = sample_channel(Alphabets::BINARY, &mut rng);
    for _ in 0..10 {
        let SchemeInput::Pdfcf(i) = sample_input(SchemeKind::Pdfcf, &spec, &SearchBudget::default(), &mut rng).unwrap() else {
            unreachable!()
        };
        let c = pdfcf_feasible(&spec, &i).unwrap();
        let j = i.joint(&spec).unwrap();
        let l0 = direct_cmi(&j, &["YhatR"], &["YR"], &["Y0", "X0", "XR", "V0", "V2"]);
        let l1 = direct_cmi(&j, &["YhatR"], &["YR"], &["Y1", "XR", "V0", "V2"]);
        let q0 = direct_cmi(&j, &["XR"], &["Y0"], &["U0", "U2", "V0", "V2", "X0"]);
        let q1 = direct_cmi(&j, &["XR"], &["Y1"], &["U0", "U2", "V0", "V2"]);
        assert!((c.lhs - l0.max(l1)).abs() <= 1e-9);
        assert!((c.rhs - q0.min(q1)).abs() <= 1e-9);
        assert_eq!(c.feasible, l0.max(l1) <= q0.min(q1) + 1e-10);
    }
}

fn binary_entropy(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[test]
fn bsc_cutset_matches_closed_form() {
    // the user-to-user cut bottlenecks at one BSC use: 1 - h(0.1)
    let spec = bsc_links(0.1);
    let law = JointPmf::uniform(vec!["X0", "X2", "XR"], vec![2, 2, 2]).unwrap();
    let (dl, ul) = cutset_rectangle(&spec, &law).unwrap();
    let expected = 1.0 - binary_entropy(0.1);
    assert!((dl - expected).abs() < 1e-9, "{dl}");
    assert!((ul - expected).abs() < 1e-9, "{ul}");
}

#[test]
fn cutset_shrinks_as_links_degrade() {
    let law = JointPmf::uniform(vec!["X0", "X2", "XR"], vec![2, 2, 2]).unwrap();
    let mut prev = (f64::INFINITY, f64::INFINITY);
    for eps in [0.0, 0.05, 0.1, 0.2, 0.3, 0.5] {
        let r = cutset_rectangle(&bsc_links(eps), &law).unwrap();
        assert!(r.0 <= prev.0 + 1e-12 && r.1 <= prev.1 + 1e-12);
        prev = r;
    }
    assert!(prev.0.abs() < 1e-12 && prev.1.abs() < 1e-12);
}

#[test]
fn blind_relay_collapses_decode_forward() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let budget = SearchBudget::default();
    for _ in 0..5 {
        let spec = sample_channel(Alphabets::BINARY, &mut rng).with_constant_relay_output();
        for kind in [SchemeKind::DfNors, SchemeKind::DfRs] {
            let input = sample_input(kind, &spec, &budget, &mut rng).unwrap();
            let region = evaluate(&spec, &input).unwrap().region;
            let v = region.vertices_2d().unwrap();
            assert!(v.iter().all(|p| p.0.abs() < 1e-9 && p.1.abs() < 1e-9), "{kind}: {v:?}");
        }
    }
}

/// DF+RS with a trivial private layer next to the DF input that shares its
/// law; the split scheme then only adds the common-message row at UE1.
fn degenerate_pair(spec: &ChannelSpec, rng: &mut ChaCha8Rng) -> (DfRsInput, DfNoRsInput) {
    let budget = SearchBudget {
        cardinalities: itwrc::search::Cardinalities { u2p: 1, x2p: Some(1), ..Default::default() },
        ..Default::default()
    };
    let SchemeInput::DfRs(rs) = sample_input(SchemeKind::DfRs, spec, &budget, rng).unwrap() else { unreachable!() };
    let a = spec.alphabets;
    let mut rs = rs;
    rs.x2_map = (0..a.x2).map(|x| vec![x]).collect();
    let joint = |p: &[f64], cond: &[Vec<f64>]| -> Vec<Vec<f64>> { p.iter().zip(cond).map(|(&pu, row)| row.iter().map(|&q| pu * q).collect()).collect() };
    let nors = DfNoRsInput {
        p_u0_x0: joint(&rs.p_u0, &rs.p_x0_given_u0),
        p_u2_x2: joint(&rs.p_u2c, &rs.p_x2c_given_u2c),
        relay_map: rs.relay_map.iter().map(|by_u2c| by_u2c.iter().map(|m| m[0]).collect()).collect(),
    };
    (rs, nors)
}

#[test]
fn trivial_private_layer_is_inside_plain_decode_forward() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let spec = sample_channel(Alphabets::BINARY, &mut rng);
        let (rs, nors) = degenerate_pair(&spec, &mut rng);
        let r = df_rs_region(&spec, &rs).unwrap();
        let n = df_nors_region(&spec, &nors).unwrap();
        for v in r.vertices_2d().unwrap() {
            assert!(n.max_violation(&[v.0, v.1]).unwrap() <= 1e-9, "{v:?} outside");
        }
    }
}

#[test]
fn pure_cf_is_the_trivial_auxiliary_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let spec = sample_channel(Alphabets::BINARY, &mut rng);
    for _ in 0..10 {
        let cf = common::random_cf_input(&mut rng, &spec, 2);
        let direct = cf_region(&spec, &cf).unwrap();
        let embedded = pdfcf_region(&spec, &PdfCfInput::from_cf(&cf)).unwrap();
        assert_eq!(direct.check.feasible, embedded.check.feasible);
        assert_eq!(direct.region.vertices_2d().unwrap().len(), embedded.region.vertices_2d().unwrap().len());
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    let spec = ChannelSpec::noiseless_orthogonal();
    let mut i = DfNoRsInput::constant_auxiliaries(&spec);
    i.relay_map[0][0] = 7;
    assert!(df_nors_region(&spec, &i).is_err());
    let mut c = CutsetInput::uniform(&spec);
    c.p_x0_x2_xr[0][0][0] += 0.1;
    assert!(cutset_region(&spec, &c).is_err());
}
