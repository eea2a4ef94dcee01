use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ops::Range;

/// Samples per Monte-Carlo work unit. Fixed so that results do not depend on
/// the number of worker threads.
pub const MC_CHUNK: usize = 1 << 14;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent stream seed from a base seed, a stream tag and an index.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index)
}

pub fn rng_for(base: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, stream, index))
}

/// Split `0..count` into consecutive ranges of at most [`MC_CHUNK`] items.
pub fn chunk_ranges(count: usize) -> Vec<Range<usize>> {
    (0..count)
        .step_by(MC_CHUNK)
        .map(|start| start..(start + MC_CHUNK).min(count))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_across_streams_and_indices() {
        let a = derive_seed(1, 2, 3);
        assert_ne!(a, derive_seed(1, 2, 4));
        assert_ne!(a, derive_seed(1, 3, 3));
        assert_eq!(a, derive_seed(1, 2, 3));
    }

    #[test]
    fn chunks_cover_range() {
        let r = chunk_ranges(MC_CHUNK * 2 + 5);
        assert_eq!(r.len(), 3);
        assert_eq!(r[2], 2 * MC_CHUNK..2 * MC_CHUNK + 5);
        assert!(chunk_ranges(0).is_empty());
    }
}
