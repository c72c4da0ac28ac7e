//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use itwrc::channel::{Alphabets, ChannelSpec};
use itwrc::polytope::RatePolytope;
use itwrc::schemes::CfInput;
use itwrc::JointPmf;
use rand::Rng;

/// I(A;B|C) in bits by direct summation of p·log(p_abc·p_c / (p_ac·p_bc))
/// over the raw tensor; shares no code with the library's entropy path.
pub fn direct_cmi(joint: &JointPmf, a: &[&str], b: &[&str], c: &[&str]) -> f64 {
    let pos = |set: &[&str]| -> Vec<usize> {
        set.iter()
            .map(|l| joint.variables().iter().position(|v| v == l).expect("label"))
            .collect()
    };
    let (ia, ib, ic) = (pos(a), pos(b), pos(c));
    let sizes = joint.sizes();
    let mut abc: HashMap<(Vec<usize>, Vec<usize>, Vec<usize>), f64> = HashMap::new();
    let mut digits = vec![0usize; sizes.len()];
    for &p in joint.probs() {
        let pick = |idx: &[usize]| idx.iter().map(|&i| digits[i]).collect::<Vec<_>>();
        *abc.entry((pick(&ia), pick(&ib), pick(&ic))).or_default() += p;
        // odometer, last index fastest
        for k in (0..sizes.len()).rev() {
            digits[k] += 1;
            if digits[k] < sizes[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    let mut ac: HashMap<(Vec<usize>, Vec<usize>), f64> = HashMap::new();
    let mut bc: HashMap<(Vec<usize>, Vec<usize>), f64> = HashMap::new();
    let mut cc: HashMap<Vec<usize>, f64> = HashMap::new();
    for ((x, y, z), &p) in &abc {
        *ac.entry((x.clone(), z.clone())).or_default() += p;
        *bc.entry((y.clone(), z.clone())).or_default() += p;
        *cc.entry(z.clone()).or_default() += p;
    }
    let mut total = 0.0;
    for ((x, y, z), &p) in &abc {
        if p > 0.0 {
            let r = p * cc[z] / (ac[&(x.clone(), z.clone())] * bc[&(y.clone(), z.clone())]);
            total += p * r.log2();
        }
    }
    total
}

pub fn random_simplex(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

/// A random joint over `n` binary variables named A..; some entries are
/// zeroed to exercise 0·log 0.
pub fn random_binary_joint(rng: &mut impl Rng, n: usize) -> JointPmf {
    let names: Vec<String> = (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect();
    let mut p = random_simplex(rng, 1 << n);
    if rng.gen_bool(0.3) {
        let k = rng.gen_range(0..p.len());
        p[k] = 0.0;
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= s);
    }
    JointPmf::new(names, vec![2; n], p).unwrap()
}

pub fn random_cf_input(rng: &mut impl Rng, spec: &ChannelSpec, yhat: usize) -> CfInput {
    let a = spec.alphabets;
    CfInput {
        p_x0: random_simplex(rng, a.x0),
        p_x2: random_simplex(rng, a.x2),
        p_xr: random_simplex(rng, a.xr),
        yhat_size: yhat,
        test_channel: (0..a.yr * a.xr).map(|_| random_simplex(rng, yhat)).collect(),
    }
}

/// Binary symmetric direct links with crossover `eps`: Y1 = X0 ⊕ Z1,
/// Y0 = X2 ⊕ Z0, YR = (X0 ⊕ ZR0, X2 ⊕ ZR2), all noises independent.
pub fn bsc_links(eps: f64) -> ChannelSpec {
    let a = Alphabets { yr: 4, ..Alphabets::BINARY };
    let flip = |x: usize, y: usize| if x == y { 1.0 - eps } else { eps };
    let mut probs = Vec::new();
    for x0 in 0..2 {
        for x2 in 0..2 {
            for _xr in 0..2 {
                for y0 in 0..2 {
                    for y1 in 0..2 {
                        for yr in 0..4 {
                            probs.push(flip(x2, y0) * flip(x0, y1) * flip(x0, yr / 2) * flip(x2, yr % 2));
                        }
                    }
                }
            }
        }
    }
    ChannelSpec {
        alphabets: a,
        transition: itwrc::ChannelLaw::Joint { probs },
    }
}

/// Projection membership by exhaustive search: the smallest violation of
/// `poly` over values of variable `k` on a grid of step `step` in `[lo, hi]`,
/// with `x` supplying the remaining coordinates in order.
pub fn grid_projection_violation(poly: &RatePolytope, k: usize, x: &[f64], lo: f64, hi: f64, step: f64) -> f64 {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n)
        .map(|i| {
            let t = lo + i as f64 * step;
            let mut full = x.to_vec();
            full.insert(k, t);
            poly.max_violation(&full).unwrap()
        })
        .fold(f64::INFINITY, f64::min)
}
