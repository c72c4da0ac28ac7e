use itwrc::channel::Alphabets;
use itwrc::schemes::{SchemeInput, SchemeKind};
use itwrc::search::{sample_channel, sample_input, SearchBudget};
use itwrc::verify::*;
use itwrc::RatePolytope;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn df_rs_case(seed: u64) -> (itwrc::ChannelSpec, itwrc::schemes::DfRsInput) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = sample_channel(Alphabets::BINARY, &mut rng);
    let SchemeInput::DfRs(i) = sample_input(SchemeKind::DfRs, &spec, &SearchBudget::default(), &mut rng).unwrap() else {
        unreachable!()
    };
    (spec, i)
}

/// Membership of (r0, r2) in the raw split-rate system, by scanning the
/// common-layer rate on a grid of `n` steps over [0, r2].
fn split_oracle(raw: &RatePolytope, r0: f64, r2: f64, n: usize) -> f64 {
    let raw = raw.reorder_as(&["R0", "R2c", "R2p"]).unwrap();
    (0..=n)
        .map(|k| {
            let c = r2 * k as f64 / n as f64;
            raw.max_violation(&[r0, c, r2 - c]).unwrap()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn projection_matches_brute_force_split() {
    for seed in 0..5 {
        let (spec, input) = df_rs_case(seed);
        let o = check_df_rs_fm(&spec, &input, 20).unwrap();
        let v = o.projected.vertices_2d().unwrap();
        let h0 = v.iter().map(|p| p.0).fold(0.0, f64::max) * 1.1;
        let h2 = v.iter().map(|p| p.1).fold(0.0, f64::max) * 1.1;
        for i in 0..=15 {
            for j in 0..=15 {
                let (r0, r2) = (h0 * i as f64 / 15.0, h2 * j as f64 / 15.0);
                let fm = o.projected.max_violation(&[r0, r2]).unwrap();
                let grid = split_oracle(&o.raw_system, r0, r2, 2000);
                if grid <= 0.0 {
                    assert!(fm <= 1e-9, "seed {seed}: ({r0},{r2}) split-feasible, projection says {fm}");
                }
                if fm <= 0.0 {
                    // a feasible split lies within r2/4000 of a grid value
                    assert!(grid <= 2.0 * r2 / 2000.0 + 1e-9, "seed {seed}: ({r0},{r2}) grid {grid}");
                }
            }
        }
    }
}

#[test]
fn corrupted_bound_is_localized() {
    // find an instance where closed form and projection agree
    let o = (0..50)
        .map(|s| {
            let (spec, input) = df_rs_case(s);
            check_df_rs_fm(&spec, &input, GRID).unwrap()
        })
        .find(|o| o.comparison.max_deviation <= MEMBERSHIP_TOL && o.closed_form.vertices_2d().unwrap().len() > 1)
        .expect("an agreeing instance");
    // halve the binding single-rate bound on R0
    let mut corrupted = o.closed_form.clone();
    let k = corrupted
        .constraints()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.coefficients == [1, 0])
        .min_by(|a, b| a.1.bound.total_cmp(&b.1.bound))
        .map(|(k, _)| k)
        .unwrap();
    corrupted.constraints_mut()[k].bound /= 2.0;
    let label = corrupted.constraints()[k].label.clone();
    let cmp = compare_membership(("corrupted", &corrupted), ("projection", &o.projected), GRID, MEMBERSHIP_TOL).unwrap();
    assert!(cmp.max_deviation > MEMBERSHIP_TOL);
    let ce = cmp.counterexample.unwrap();
    assert_eq!(ce.contained_in, "projection");
    assert!(ce.violated.iter().any(|(l, _)| *l == label), "{label} not in {:?}", ce.violated);
}

#[test]
fn pdfcf_projection_agrees_on_feasible_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = SearchBudget {
        cardinalities: itwrc::search::Cardinalities { yhat: Some(2), ..Default::default() },
        ..Default::default()
    };
    for _ in 0..10 {
        let spec = sample_channel(Alphabets::BINARY, &mut rng);
        let SchemeInput::Pdfcf(i) = sample_input(SchemeKind::Pdfcf, &spec, &budget, &mut rng).unwrap() else { unreachable!() };
        let i = make_feasible(&spec, i).unwrap();
        let o = check_pdfcf_fm(&spec, &i, GRID).unwrap();
        assert!(o.comparison.max_deviation <= MEMBERSHIP_TOL, "{:?}", o.comparison.counterexample);
    }
}

#[test]
fn verification_report_lists_every_check() {
    let spec = sample_channel(Alphabets::BINARY, &mut ChaCha8Rng::seed_from_u64(8));
    let config = VerifyConfig { samples: 5, ..Default::default() };
    let r = run_verification(&spec, &config, &SearchBudget::default()).unwrap();
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    for n in [
        "df_rs_fourier_motzkin",
        "pdfcf_fourier_motzkin",
        "twrc_reduction_cutset_identities",
        "pure_cf_reduction",
        "constant_relay_output_collapses_df",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    assert_eq!(r.passed, r.checks.iter().all(|c| c.passed));
    for c in &r.checks[1..] {
        assert!(c.passed, "{}: {}", c.name, c.max_deviation);
    }
}
