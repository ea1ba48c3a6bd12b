//! Property suites behind `xcone verify`. Trials are split into fixed shards
//! with their own random streams, so output does not depend on thread count.

use std::collections::BTreeMap;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use xcone::certify::{
    decompose_constructive, duality_fuzz, find_state_witness, find_witness_counterstate, verify_decomposition,
};
use xcone::classify::{lattice_profile, partition_class};
use xcone::criteria::{ppt_member, state_in_cone, witness_in_cone};
use xcone::random::{random_psd_x, random_witness_candidate, random_x};
use xcone::{Certificate64, Cone, ConeId, Decomposition64, Tolerance64, XMatrix64};

use crate::input::parse_document;

const SHARDS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Duality,
    Ppt,
    Lattice,
    Roundtrip,
}

pub struct SuiteOutcome {
    pub lines: Vec<String>,
    pub pass: bool,
}

fn sharded<A, F>(trials: usize, seed: u64, f: F) -> Vec<A>
where
    A: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> A + Sync,
{
    (0..SHARDS)
        .into_par_iter()
        .map(|s| {
            let n = trials / SHARDS as usize + usize::from((s as usize) < trials % SHARDS as usize);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            f(&mut rng, n)
        })
        .collect()
}

pub fn run(suite: Suite, trials: usize, seed: u64, tol: &Tolerance64) -> SuiteOutcome {
    match suite {
        Suite::Duality => duality(trials, seed, tol),
        Suite::Ppt => ppt(trials, seed, tol),
        Suite::Lattice => lattice(trials, seed, tol),
        Suite::Roundtrip => roundtrip(trials, seed, tol),
    }
}

fn duality(trials: usize, seed: u64, tol: &Tolerance64) -> SuiteOutcome {
    let pairs: Vec<_> = Cone::ALL
        .iter()
        .map(|&c| (ConeId::Primal(c), ConeId::Dual(c)))
        .collect();
    let stats = duality_fuzz(&pairs, trials, seed).expect("primal/dual pairs");
    let mut lines: Vec<String> = stats
        .iter()
        .map(|s| {
            format!(
                "{:<6} vs {:<12} min pairing {:.6e}",
                s.primal.to_string(),
                s.dual.to_string(),
                s.min_pairing
            )
        })
        .collect();
    let min = stats.iter().map(|s| s.min_pairing).fold(f64::INFINITY, f64::min);
    let pass = min >= -tol.eps;
    lines.push(format!(
        "duality: {} pairs x {trials} trials, min pairing {min:.6e} {} -{:e}",
        stats.len(),
        if pass { ">=" } else { "<" },
        tol.eps
    ));
    SuiteOutcome { lines, pass }
}

const PPT_CONES: [Cone; 4] = [Cone::A, Cone::B, Cone::C, Cone::AbcMeet];

fn ppt(trials: usize, seed: u64, tol: &Tolerance64) -> SuiteOutcome {
    let shards = sharded(trials, seed, |rng, n| {
        let mut disagreements = [0usize; 4];
        let mut psd = 0usize;
        let mut closest = f64::INFINITY;
        for _ in 0..n {
            let x: XMatrix64 = random_x(rng);
            psd += usize::from(x.is_psd(tol));
            for (k, &c) in PPT_CONES.iter().enumerate() {
                let v = state_in_cone(&x, c, tol);
                if let Some(s) = v.min_slack() {
                    closest = closest.min(s.abs());
                }
                if Some(v.member) != ppt_member(&x, c, tol) {
                    disagreements[k] += 1;
                }
            }
        }
        (disagreements, psd, closest)
    });
    let mut disagreements = [0usize; 4];
    let mut psd = 0;
    let mut closest = f64::INFINITY;
    for (d, p, c) in shards {
        for k in 0..4 {
            disagreements[k] += d[k];
        }
        psd += p;
        closest = closest.min(c);
    }
    let mut lines: Vec<String> = PPT_CONES
        .iter()
        .zip(disagreements)
        .map(|(c, d)| format!("{:<6} disagreements {d}", c.to_string()))
        .collect();
    let total: usize = disagreements.iter().sum();
    lines.push(format!(
        "ppt: {trials} matrices ({psd} PSD), smallest |slack| {closest:.3e}, disagreements {total}"
    ));
    SuiteOutcome {
        lines,
        pass: total == 0,
    }
}

fn lattice(trials: usize, seed: u64, tol: &Tolerance64) -> SuiteOutcome {
    let shards = sharded(trials, seed, |rng, n| {
        let mut violations = 0usize;
        let mut classes: BTreeMap<String, usize> = BTreeMap::new();
        for _ in 0..n {
            let x: XMatrix64 = random_psd_x(rng);
            match lattice_profile(&x, tol) {
                Ok(p) => *classes.entry(partition_class(&p).name).or_default() += 1,
                Err(_) => violations += 1,
            }
        }
        (violations, classes)
    });
    let mut violations = 0;
    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    for (v, c) in shards {
        violations += v;
        for (name, count) in c {
            *classes.entry(name).or_default() += count;
        }
    }
    let mut lines: Vec<String> = classes
        .iter()
        .map(|(name, count)| format!("{name:<24} {count}"))
        .collect();
    lines.push(format!(
        "lattice: {trials} PSD matrices, {} inclusion arrows, violations {violations}",
        Cone::ARROWS.len()
    ));
    SuiteOutcome {
        lines,
        pass: violations == 0,
    }
}

#[derive(Default)]
struct Roundtrip {
    certificates: usize,
    decompositions: usize,
    documents: usize,
    failures: usize,
    /// Pairing closest to zero among verified certificates.
    tightest: f64,
}

fn reparse<T: serde::Serialize + serde::de::DeserializeOwned>(value: &T) -> Option<T> {
    serde_json::to_string(value)
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok())
}

fn check_certificate(c: Option<Certificate64>, input: &XMatrix64, tol: &Tolerance64, acc: &mut Roundtrip) {
    acc.certificates += 1;
    match c.as_ref().and_then(reparse) {
        Some(c) if c.verify(input, tol) => acc.tightest = acc.tightest.max(c.pairing),
        _ => acc.failures += 1,
    }
}

fn check_decomposition(d: Decomposition64, x: &XMatrix64, tol: &Tolerance64, acc: &mut Roundtrip) {
    acc.decompositions += 1;
    if !reparse(&d).is_some_and(|d| verify_decomposition(&d, x, tol)) {
        acc.failures += 1;
    }
}

fn check_document(x: &XMatrix64, tol: &Tolerance64, acc: &mut Roundtrip) {
    acc.documents += 1;
    let text = json!({ "x": x }).to_string();
    let parsed = serde_json::from_str(&text)
        .ok()
        .and_then(|v| parse_document(v, String::new(), tol).ok())
        .map(|d| d.x_part());
    if parsed != Some(*x) {
        acc.failures += 1;
    }
}

fn roundtrip(trials: usize, seed: u64, tol: &Tolerance64) -> SuiteOutcome {
    let shards = sharded(trials, seed, |rng, n| {
        let mut acc = Roundtrip {
            tightest: f64::NEG_INFINITY,
            ..Default::default()
        };
        for _ in 0..n {
            let x: XMatrix64 = random_psd_x(rng);
            let w: XMatrix64 = random_witness_candidate(rng);
            check_document(&x, tol, &mut acc);
            check_document(&w, tol, &mut acc);
            for c in Cone::ALL {
                if state_in_cone(&x, c, tol).member {
                    if let Ok(d) = decompose_constructive(&x, c, tol) {
                        check_decomposition(d, &x, tol, &mut acc);
                    }
                } else {
                    check_certificate(find_state_witness(&x, c, tol).ok(), &x, tol, &mut acc);
                }
                if !witness_in_cone(&w, c, tol).member {
                    check_certificate(find_witness_counterstate(&w, c, tol).ok(), &w, tol, &mut acc);
                }
            }
        }
        acc
    });
    let mut total = Roundtrip {
        tightest: f64::NEG_INFINITY,
        ..Default::default()
    };
    for s in shards {
        total.certificates += s.certificates;
        total.decompositions += s.decompositions;
        total.documents += s.documents;
        total.failures += s.failures;
        total.tightest = total.tightest.max(s.tightest);
    }
    let lines = vec![
        format!("documents       {}", total.documents),
        format!(
            "certificates    {} (pairing closest to zero {:.3e})",
            total.certificates, total.tightest
        ),
        format!("decompositions  {}", total.decompositions),
        format!("roundtrip: {trials} trials, failures {}", total.failures),
    ];
    SuiteOutcome {
        lines,
        pass: total.failures == 0,
    }
}
