//! Seeded sampling of generic root sets with small integer entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RootSet;
use crate::error::RootError;
use crate::matrix::Matrix;
use crate::scalar::{rat, Rational};

/// Entries are drawn uniformly from `-SAMPLE_RANGE..=SAMPLE_RANGE`.
pub const SAMPLE_RANGE: i64 = 5;
/// Rejection-sampling budget per root set.
pub const MAX_ATTEMPTS: usize = 1000;

pub fn random_matrix(rng: &mut impl Rng, d: usize) -> Matrix<Rational> {
    Matrix::from_fn(d, |_, _| rat(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
}

/// Draw `n` random `d × d` roots until the set is generic.
pub fn sample_generic_roots(rng: &mut impl Rng, n: usize, d: usize) -> Result<RootSet<Rational>, RootError> {
    if n == 0 {
        return Err(RootError::Empty);
    }
    for _ in 0..MAX_ATTEMPTS {
        let rs = RootSet::new((0..n).map(|_| random_matrix(rng, d)).collect())?;
        if rs.is_generic() {
            return Ok(rs);
        }
    }
    Err(RootError::SamplingFailed(MAX_ATTEMPTS))
}

/// [`sample_generic_roots`] from a ChaCha8 stream seeded with `seed`.
pub fn random_generic_roots(n: usize, d: usize, seed: u64) -> Result<RootSet<Rational>, RootError> {
    sample_generic_roots(&mut ChaCha8Rng::seed_from_u64(seed), n, d)
}
