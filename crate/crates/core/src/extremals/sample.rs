use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::family::{combine, ext_families, Family, GeneratorParams, Term};
use crate::criteria::ConeId;
use crate::xcore::XMatrix;
use crate::Real;

/// Parameters of the member sampler.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSpread {
    /// Ratios are log-uniform on `[ratio_min, ratio_max]`.
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Number of generators per sample, uniform on `min_terms..=max_terms`.
    pub min_terms: usize,
    pub max_terms: usize,
    /// Probability that a term is a `Delta` generator.
    pub delta_prob: f64,
    /// Total weight is log-uniform on `[mass_min, mass_max]`.
    pub mass_min: f64,
    pub mass_max: f64,
}

impl Default for SampleSpread {
    fn default() -> Self {
        SampleSpread {
            ratio_min: 0.1,
            ratio_max: 10.0,
            min_terms: 1,
            max_terms: 8,
            delta_prob: 0.2,
            mass_min: 0.1,
            mass_max: 10.0,
        }
    }
}

/// A sampled cone member together with the generators that built it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSample<T> {
    pub matrix: XMatrix<T>,
    pub recipe: Vec<Term<T>>,
}

fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return lo;
    }
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Random parameters for `f`.
pub fn random_params<T: Real, R: Rng + ?Sized>(f: Family, rng: &mut R, spread: &SampleSpread) -> GeneratorParams<T> {
    let mut p = GeneratorParams::default();
    for s in f.ratio_slots() {
        p.ratios[s.index()] = Some(T::lit(log_uniform(rng, spread.ratio_min, spread.ratio_max)));
    }
    for s in f.phase_slots() {
        p.phases[s.index()] = Some(T::lit(rng.gen_range(0.0..std::f64::consts::TAU)));
    }
    p
}

/// One random nonnegative combination of the extreme-ray generators of
/// `cone`.
pub fn sample_member<T: Real, R: Rng + ?Sized>(cone: ConeId, rng: &mut R, spread: &SampleSpread) -> ConeSample<T> {
    let families = ext_families(cone);
    let (deltas, rest): (Vec<Family>, Vec<Family>) = families.into_iter().partition(|f| matches!(f, Family::Delta(..)));
    let count = rng.gen_range(spread.min_terms.max(1)..=spread.max_terms.max(spread.min_terms.max(1)));
    let raw: Vec<f64> = (0..count).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    let mass = log_uniform(rng, spread.mass_min, spread.mass_max);
    let recipe: Vec<Term<T>> = raw
        .iter()
        .map(|&w| {
            let pool = if rest.is_empty() || rng.gen_bool(spread.delta_prob.clamp(0.0, 1.0)) {
                &deltas
            } else {
                &rest
            };
            let family = *pool.choose(rng).expect("every cone has Delta generators");
            Term {
                weight: T::lit(mass * w / total),
                family,
                params: random_params(family, rng, spread),
            }
        })
        .collect();
    let matrix = combine(&recipe).expect("sampled parameters are valid");
    ConeSample { matrix, recipe }
}

/// `n` samples with their recipes, deterministic in `seed`.
pub fn sample_cone_with_recipes<T: Real>(
    cone: ConeId,
    n: usize,
    seed: u64,
    spread: &SampleSpread,
) -> Vec<ConeSample<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_member(cone, &mut rng, spread)).collect()
}

/// `n` members of `cone`, deterministic in `seed`.
pub fn sample_cone<T: Real>(cone: ConeId, n: usize, seed: u64, spread: &SampleSpread) -> Vec<XMatrix<T>> {
    sample_cone_with_recipes(cone, n, seed, spread)
        .into_iter()
        .map(|s| s.matrix)
        .collect()
}
