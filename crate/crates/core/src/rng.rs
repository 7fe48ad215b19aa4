use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic child seed for a stream identified by `(seed, stream, index)`.
pub(crate) fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn stream(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream, index))
}

pub(crate) mod streams {
    pub const ORTHANT: u64 = 1;
    pub const FACE: u64 = 2;
    pub const SANDWICH: u64 = 3;
    pub const PROBE: u64 = 4;
    pub const EVENTUAL: u64 = 5;
    pub const PERTURB: u64 = 6;
    pub const NONDEGEN: u64 = 7;
}

/// Standard normal deviate via Box-Muller.
pub(crate) fn gaussian<R: rand::Rng>(rng: &mut R) -> f64 {
    use num_traits::Float;
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen::<f64>();
    Float::sqrt(-2.0 * Float::ln(u1)) * Float::cos(core::f64::consts::TAU * u2)
}
