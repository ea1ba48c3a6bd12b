use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::ConeId;
use crate::extremals::{sample_member, SampleSpread};
use crate::xcore::XMatrix;
use crate::{Error, Result};

const SHARDS: u64 = 64;

/// Smallest pairing seen between sampled members of a cone and its dual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityStat {
    pub primal: ConeId,
    pub dual: ConeId,
    pub trials: usize,
    /// Minimum of `⟨w, x⟩` over unit-norm `x` and `w`.
    pub min_pairing: f64,
}

fn unit(x: XMatrix<f64>) -> XMatrix<f64> {
    let n = x.norm();
    if n > 0.0 {
        x * n.recip()
    } else {
        x
    }
}

fn shard_min(primal: ConeId, dual: ConeId, trials: usize, seed: u64, stream: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let spread = SampleSpread::default();
    (0..trials)
        .map(|_| {
            let x = unit(sample_member::<f64, _>(primal, &mut rng, &spread).matrix);
            let w = unit(sample_member::<f64, _>(dual, &mut rng, &spread).matrix);
            w.pair(&x)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Samples `trials` member pairs for each `(primal, dual)` and reports the
/// smallest pairing. Work is split into fixed shards with their own streams,
/// so results do not depend on the thread count.
pub fn duality_fuzz(pairs: &[(ConeId, ConeId)], trials: usize, seed: u64) -> Result<Vec<DualityStat>> {
    for &(p, d) in pairs {
        if p.is_dual() || d != p.dual() {
            return Err(Error::InvalidInput(format!("{d} is not the dual of primal cone {p}")));
        }
    }
    let stats = pairs
        .iter()
        .enumerate()
        .map(|(idx, &(primal, dual))| {
            let min_pairing = (0..SHARDS)
                .into_par_iter()
                .map(|shard| {
                    let start = trials as u64 * shard / SHARDS;
                    let end = trials as u64 * (shard + 1) / SHARDS;
                    shard_min(primal, dual, (end - start) as usize, seed, idx as u64 * SHARDS + shard)
                })
                .reduce(|| f64::INFINITY, f64::min);
            DualityStat {
                primal,
                dual,
                trials,
                min_pairing,
            }
        })
        .collect();
    Ok(stats)
}
