//! Extreme-ray generators of the X-restricted cones and a seeded sampler of
//! cone members built from them.

mod family;
mod sample;

pub use family::{
    combine, ext_families, extract_params, family_in_cone, generator, matches_family, Family, GeneratorParams, Side,
    Term,
};
pub use sample::{random_params, sample_cone, sample_cone_with_recipes, sample_member, ConeSample, SampleSpread};
