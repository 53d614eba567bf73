use crate::meter::ScratchVec;
use crate::Result;

/// Zeros of the high part between consecutive select hints.
const SAMPLE_RATE: usize = 64;

/// Per-one bound on hint and padding overhead beyond the Elias-Fano formula.
pub const SPARSE_OVERHEAD_PER_ONE_BITS: usize = 2;
/// Constant bound on hint and padding overhead beyond the Elias-Fano formula.
pub const SPARSE_OVERHEAD_CONST_BITS: usize = 256;

/// Elias-Fano encoding of a sorted position set.
///
/// Each position is split into `low_bits` low bits, stored packed, and a
/// high part stored in unary: element `k` with high part `h` sets bit `h + k`
/// of `high`. The zeros of `high` separate buckets, and the position of every
/// 64th zero is kept so that rank can jump to its bucket directly.
#[derive(Debug, Clone)]
pub struct EliasFano {
    universe: usize,
    ones: usize,
    low_bits: u32,
    lows: ScratchVec<u64>,
    high: ScratchVec<u64>,
    high_len: usize,
    zero_hints: ScratchVec<u64>,
}

impl EliasFano {
    pub fn from_sorted(universe: usize, positions: impl ExactSizeIterator<Item = usize>) -> Result<Self> {
        let ones = positions.len();
        let low_bits = if ones == 0 || universe <= ones {
            0
        } else {
            (universe / ones).ilog2()
        };
        let high_len = if ones == 0 { 0 } else { ones + (universe >> low_bits) + 1 };

        let mut lows = ScratchVec::filled((ones * low_bits as usize).div_ceil(64), 0u64);
        let mut high = ScratchVec::filled(high_len.div_ceil(64), 0u64);
        let mask = (1u64 << low_bits) - 1;
        let mut prev = None;
        let mut count = 0;
        for (k, p) in positions.enumerate() {
            super::check_position(p, prev, universe)?;
            prev = Some(p);
            count += 1;
            write_bits(&mut lows, k * low_bits as usize, low_bits, p as u64 & mask);
            let h = (p >> low_bits) + k;
            high[h / 64] |= 1 << (h % 64);
        }
        assert_eq!(count, ones, "iterator reported a wrong length");

        let zeros = high_len - ones;
        let mut zero_hints = ScratchVec::filled(zeros.div_ceil(SAMPLE_RATE), 0u64);
        let mut seen = 0;
        for pos in 0..high_len {
            if high[pos / 64] >> (pos % 64) & 1 == 0 {
                if seen % SAMPLE_RATE == 0 {
                    zero_hints[seen / SAMPLE_RATE] = pos as u64;
                }
                seen += 1;
            }
        }

        Ok(EliasFano {
            universe,
            ones,
            low_bits,
            lows,
            high,
            high_len,
            zero_hints,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn low_bits(&self) -> u32 {
        self.low_bits
    }

    #[inline]
    fn low(&self, k: usize) -> u64 {
        read_bits(&self.lows, k * self.low_bits as usize, self.low_bits)
    }

    #[inline]
    fn high_bit(&self, pos: usize) -> bool {
        self.high[pos / 64] >> (pos % 64) & 1 == 1
    }

    // Position in `high` of the zero with 0-based index `r`.
    fn select0(&self, r: usize) -> usize {
        let start = self.zero_hints[r / SAMPLE_RATE] as usize;
        let mut remaining = r % SAMPLE_RATE;
        let mut w = start / 64;
        let mut word = !self.high[w] & (!0u64 << (start % 64));
        loop {
            let z = word.count_ones() as usize;
            if remaining < z {
                for _ in 0..remaining {
                    word &= word - 1;
                }
                return w * 64 + word.trailing_zeros() as usize;
            }
            remaining -= z;
            w += 1;
            word = !self.high[w];
        }
    }

    #[inline]
    pub fn rank1(&self, prefix: usize) -> usize {
        debug_assert!(prefix <= self.universe);
        if self.ones == 0 {
            return 0;
        }
        if prefix >= self.universe {
            return self.ones;
        }
        let bucket = prefix >> self.low_bits;
        let target = prefix as u64 & ((1u64 << self.low_bits) - 1);
        // elements in earlier buckets, and the first slot of this bucket
        let (mut count, mut pos) = if bucket == 0 {
            (0, 0)
        } else {
            let z = self.select0(bucket - 1);
            (z + 1 - bucket, z + 1)
        };
        while pos < self.high_len && self.high_bit(pos) && self.low(count) < target {
            count += 1;
            pos += 1;
        }
        count
    }

    pub fn size_in_bits(&self) -> usize {
        (self.lows.bytes() + self.high.bytes() + self.zero_hints.bytes()) * 8
    }
}

fn write_bits(words: &mut [u64], at: usize, width: u32, value: u64) {
    if width == 0 {
        return;
    }
    let (w, off) = (at / 64, at % 64);
    words[w] |= value << off;
    if off + width as usize > 64 {
        words[w + 1] |= value >> (64 - off);
    }
}

#[inline]
fn read_bits(words: &[u64], at: usize, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    let (w, off) = (at / 64, at % 64);
    let mut v = words[w] >> off;
    if off + width as usize > 64 {
        v |= words[w + 1] << (64 - off);
    }
    v & ((1u64 << width) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(n: usize, d: usize) -> f64 {
        let lg = ((n as f64) / d as f64).log2().ceil().max(0.0);
        d as f64 * (2.0 + lg)
    }

    #[test]
    fn low_bit_width() {
        let ef = EliasFano::from_sorted(1_000_000, (0..1000).map(|k| k * 1000)).unwrap();
        assert_eq!(ef.low_bits(), 9);
        let ef = EliasFano::from_sorted(8, 0..8).unwrap();
        assert_eq!(ef.low_bits(), 0);
    }

    #[test]
    fn size_within_declared_constants() {
        let n = 1_000_000;
        for d in [1usize, 10, 100, 1000, 10_000] {
            let step = n / d;
            let ef = EliasFano::from_sorted(n, (0..d).map(|k| k * step + step / 2)).unwrap();
            let limit = bound(n, d) + (SPARSE_OVERHEAD_PER_ONE_BITS * d + SPARSE_OVERHEAD_CONST_BITS) as f64;
            assert!(ef.size_in_bits() as f64 <= limit, "d={d}: {} > {limit}", ef.size_in_bits());
        }
    }

    #[test]
    fn clustered_positions() {
        // all ones packed in one bucket region, then a far outlier
        let mut pos: Vec<usize> = (100..400).collect();
        pos.push(99_999);
        let ef = EliasFano::from_sorted(100_000, pos.iter().copied()).unwrap();
        for i in (0..=100_000).step_by(37).chain([99_999, 100_000, 400, 399, 100]) {
            let expect = pos.iter().filter(|&&p| p < i).count();
            assert_eq!(ef.rank1(i), expect, "prefix {i}");
        }
    }

    #[test]
    fn bit_packing() {
        let mut words = vec![0u64; 3];
        for k in 0..10 {
            write_bits(&mut words, k * 13, 13, (k as u64 * 997) & 0x1fff);
        }
        for k in 0..10 {
            assert_eq!(read_bits(&words, k * 13, 13), (k as u64 * 997) & 0x1fff);
        }
    }
}
