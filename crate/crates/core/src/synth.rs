//! Seeded synthetic collections for tests and benchmarks.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::text::ConcatText;

pub type SynthRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest alphabet [`alphabet`] can produce.
pub const MAX_SIGMA: usize = 251;

/// `sigma` distinct body bytes: lowercase, uppercase and digits first, then the
/// remaining non-reserved bytes. Never yields `\n`, `\r` or `>`, so the
/// documents survive both line-delimited and FASTA output.
pub fn alphabet(sigma: usize) -> Vec<u8> {
    assert!((1..=MAX_SIGMA).contains(&sigma), "alphabet size {sigma} out of range");
    let mut out: Vec<u8> = (b'a'..=b'z').chain(b'A'..=b'Z').chain(b'0'..=b'9').collect();
    for b in 2..=255u8 {
        if !out.contains(&b) && !matches!(b, b'\n' | b'\r' | b'>') {
            out.push(b);
        }
    }
    out.truncate(sigma);
    out
}

/// Random documents over `sigma` body symbols: the document count is drawn
/// from `docs`, and the total text length, markers included, stays within
/// `max_total`. Documents may be empty.
pub fn random_docs(rng: &mut SynthRng, sigma: usize, docs: RangeInclusive<usize>, max_total: usize) -> Vec<Vec<u8>> {
    let alpha = alphabet(sigma);
    let d = rng.gen_range(docs);
    assert!(max_total > d, "max_total {max_total} cannot hold {d} documents");
    let body = rng.gen_range(0..=max_total - d - 1);
    let mut cuts: Vec<usize> = (0..d - 1).map(|_| rng.gen_range(0..=body)).collect();
    cuts.push(0);
    cuts.push(body);
    cuts.sort_unstable();
    cuts.windows(2)
        .map(|w| (0..w[1] - w[0]).map(|_| alpha[rng.gen_range(0..sigma)]).collect())
        .collect()
}

pub fn random_collection(rng: &mut SynthRng, sigma: usize, docs: RangeInclusive<usize>, max_total: usize) -> ConcatText {
    ConcatText::build(&random_docs(rng, sigma, docs, max_total)).expect("synthetic documents avoid reserved bytes")
}

/// `d` documents of near-equal length whose concatenation is exactly `n`
/// symbols long.
pub fn corpus_docs(seed: u64, n: usize, d: usize, sigma: usize) -> Vec<Vec<u8>> {
    assert!(d >= 1 && n > d, "corpus of length {n} cannot hold {d} documents");
    let mut rng = rng(seed);
    let alpha = alphabet(sigma);
    let body = n - d - 1;
    (0..d)
        .map(|j| {
            let len = body / d + usize::from(j < body % d);
            (0..len).map(|_| alpha[rng.gen_range(0..sigma)]).collect()
        })
        .collect()
}

pub fn corpus(seed: u64, n: usize, d: usize, sigma: usize) -> ConcatText {
    ConcatText::build(&corpus_docs(seed, n, d, sigma)).expect("synthetic documents avoid reserved bytes")
}
