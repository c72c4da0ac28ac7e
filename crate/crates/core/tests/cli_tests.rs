use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use itwrc::channel::Alphabets;
use itwrc::gaussian::{GaussianItwrc, LinkGains, NoiseVariances, Powers};
use itwrc::io::to_versioned_json;
use itwrc::schemes::{CutsetInput, DfNoRsInput, PdfCfInput, SchemeInput};
use itwrc::search::sample_channel;
use itwrc::ChannelSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

fn itwrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itwrc")).args(args).output().expect("binary runs")
}

fn put<T: serde::Serialize>(dir: &Path, name: &str, body: &T) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, to_versioned_json(body).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn evaluate_writes_region_with_the_corner_point() {
    let dir = TempDir::new().unwrap();
    let spec = ChannelSpec::noiseless_full_view();
    let ch = put(dir.path(), "ch.json", &spec);
    let input = put(dir.path(), "in.json", &SchemeInput::DfNors(DfNoRsInput::constant_auxiliaries(&spec)));
    let out = dir.path().join("out");
    let o = itwrc(&["evaluate", "--channel", s(&ch), "--scheme", "df_nors", "--input", s(&input), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(out.join("region.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["format_version"], 1);
    let verts = v["region"]["vertices"].as_array().unwrap();
    assert!(verts.iter().any(|p| (p[0].as_f64().unwrap() - 1.0).abs() < 1e-9 && (p[1].as_f64().unwrap() - 1.0).abs() < 1e-9));
    // every printed row carries its information expression
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("R0+R2 <= I(X0,X2,XR;Y1)"));

    let out2 = dir.path().join("out2");
    let o2 = itwrc(&["evaluate", "--channel", s(&ch), "--scheme", "df_nors", "--input", s(&input), "--out", s(&out2)]);
    assert!(o2.status.success());
    assert_eq!(fs::read(out.join("region.json")).unwrap(), fs::read(out2.join("region.json")).unwrap());
}

#[test]
fn evaluate_marks_infeasible_compression_empty() {
    let dir = TempDir::new().unwrap();
    let spec = ChannelSpec::noiseless_orthogonal();
    let a = spec.alphabets;
    // transparent compression on a noiseless channel fails the gate
    let cf = itwrc::schemes::CfInput {
        p_x0: vec![0.5; 2],
        p_x2: vec![0.5; 2],
        p_xr: vec![0.5; 2],
        yhat_size: a.yr,
        test_channel: (0..a.yr * a.xr).map(|i| (0..a.yr).map(|y| if y == i / a.xr { 1.0 } else { 0.0 }).collect()).collect(),
    };
    let ch = put(dir.path(), "ch.json", &spec);
    let input = put(dir.path(), "in.json", &SchemeInput::Pdfcf(PdfCfInput::from_cf(&cf)));
    let out = dir.path().join("out");
    let o = itwrc(&["evaluate", "--channel", s(&ch), "--scheme", "pdfcf", "--input", s(&input), "--out", s(&out)]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("INFEASIBLE"));
    let v: Value = serde_json::from_str(&fs::read_to_string(out.join("region.json")).unwrap()).unwrap();
    assert_eq!(v["region"]["empty"], true);
    assert_eq!(v["compression"]["feasible"], false);
}

#[test]
fn useless_channel_frontier_is_the_origin() {
    let dir = TempDir::new().unwrap();
    let ch = put(dir.path(), "ch.json", &ChannelSpec::useless(Alphabets::BINARY));
    let out = dir.path().join("out");
    let o = itwrc(&[
        "frontier", "--channel", s(&ch), "--schemes", "cutset,df_nors", "--restarts", "1", "--sweeps", "1", "--grid", "2", "--weights", "3",
        "--out", s(&out), "--svg",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for k in ["cutset", "df_nors"] {
        assert_eq!(fs::read_to_string(out.join(format!("{k}.csv"))).unwrap(), "R0_bits,R2_bits\n0,0\n");
    }
    assert!(fs::read_to_string(out.join("frontier.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn frontier_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let spec = sample_channel(Alphabets::BINARY, &mut ChaCha8Rng::seed_from_u64(1));
    let ch = put(dir.path(), "ch.json", &spec);
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = itwrc(&[
            "frontier", "--channel", s(&ch), "--schemes", "cutset,df_rs", "--seed", "7", "--restarts", "2", "--sweeps", "1", "--grid", "4",
            "--weights", "3", "--out", s(&out),
        ]);
        assert!(o.status.success());
        out
    };
    let (a, b) = (run("a"), run("b"));
    for f in ["cutset.csv", "cutset.json", "df_rs.csv", "df_rs.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn verify_exit_code_matches_report() {
    let dir = TempDir::new().unwrap();
    let spec = sample_channel(Alphabets::BINARY, &mut ChaCha8Rng::seed_from_u64(3));
    let ch = put(dir.path(), "ch.json", &spec);
    let report = dir.path().join("report.json");
    let o = itwrc(&["verify", "--channel", s(&ch), "--samples", "10", "--seed", "7", "--out", s(&report)]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let passed = v["passed"].as_bool().unwrap();
    assert_eq!(o.status.code(), Some(if passed { 0 } else { 4 }));
    for c in v["checks"].as_array().unwrap() {
        assert!(c["name"].is_string() && c["tolerance"].is_number());
        if c["passed"] == false {
            let f = &c["failures"][0];
            assert!(f["counterexample"]["violated"].as_array().is_some_and(|x| !x.is_empty()));
        }
    }
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("twrc_reduction_cutset_identities"));
}

#[test]
fn gaussian_command_writes_a_channel() {
    let dir = TempDir::new().unwrap();
    let g = GaussianItwrc {
        gains: LinkGains { bs_ue1: 1.0, bs_rn: 1.0, ue2_rn: 1.0, ue2_ue1: 0.5, rn_bs: 1.0, rn_ue1: 1.0, ue2_bs: 0.5 },
        powers: Powers { bs: 1.0, ue2: 1.0, rn: 1.0 },
        noise: NoiseVariances::default(),
    };
    let sc = put(dir.path(), "g.json", &g);
    let out = dir.path().join("spec.json");
    let o = itwrc(&["gaussian", "--scenario", s(&sc), "--levels-in", "4", "--levels-out", "8", "--clip", "4", "--out", s(&out)]);
    assert!(o.status.success());
    let spec = itwrc::io::read_channel(&out).unwrap();
    assert_eq!(spec.alphabets.yr, 8);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.json");
    let out = dir.path().join("out");
    assert_eq!(itwrc(&["verify", "--channel", s(&missing)]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"format_version\": 1, \"alphabets\": 3}").unwrap();
    assert_eq!(itwrc(&["verify", "--channel", s(&bad)]).status.code(), Some(2));

    let mut spec = ChannelSpec::noiseless_orthogonal();
    if let itwrc::ChannelLaw::Joint { probs } = &mut spec.transition {
        probs[0] = 0.5;
    }
    let ch = put(dir.path(), "ch.json", &spec);
    let o = itwrc(&["frontier", "--channel", s(&ch), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));

    let good = put(dir.path(), "good.json", &ChannelSpec::noiseless_orthogonal());
    let o = itwrc(&["frontier", "--channel", s(&good), "--schemes", "magic", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oversized_state_space_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let g = GaussianItwrc {
        gains: LinkGains { bs_ue1: 1.0, ..Default::default() },
        powers: Powers { bs: 1.0, ue2: 1.0, rn: 1.0 },
        noise: NoiseVariances::default(),
    };
    let spec = itwrc::gaussian::quantize_to_dm(&g, 32, 64, 4.0, itwrc::gaussian::Placement::Uniform).unwrap();
    let ch = put(dir.path(), "ch.json", &spec);
    let input = put(dir.path(), "in.json", &SchemeInput::Cutset(CutsetInput::uniform(&spec)));
    let out = dir.path().join("out");
    let o = itwrc(&["evaluate", "--channel", s(&ch), "--scheme", "cutset", "--input", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}
