use crate::meter::ScratchVec;
use crate::Result;

const BLOCK: usize = 64;
const SUPERBLOCK: usize = 512;
const REL_BITS: usize = 9;

#[derive(Debug, Clone)]
enum Absolute {
    Narrow(ScratchVec<u32>),
    Wide(ScratchVec<u64>),
}

impl Absolute {
    #[inline]
    fn get(&self, sb: usize) -> usize {
        match self {
            Absolute::Narrow(v) => v[sb] as usize,
            Absolute::Wide(v) => v[sb] as usize,
        }
    }

    fn bits(&self) -> usize {
        match self {
            Absolute::Narrow(v) => v.bytes() * 8,
            Absolute::Wide(v) => v.bytes() * 8,
        }
    }
}

/// Raw bits with a rank directory: an absolute count per 512-bit superblock
/// (32-bit while the universe fits, 64-bit otherwise) and seven 9-bit
/// in-superblock counts packed into one word per superblock.
#[derive(Debug, Clone)]
pub struct PlainBitvector {
    universe: usize,
    ones: usize,
    words: ScratchVec<u64>,
    absolute: Absolute,
    relative: ScratchVec<u64>,
}

impl PlainBitvector {
    pub fn from_sorted(universe: usize, positions: impl Iterator<Item = usize>) -> Result<Self> {
        let mut words = ScratchVec::filled(universe.div_ceil(BLOCK), 0u64);
        let mut prev = None;
        let mut ones = 0;
        for p in positions {
            super::check_position(p, prev, universe)?;
            words[p / BLOCK] |= 1 << (p % BLOCK);
            prev = Some(p);
            ones += 1;
        }

        let superblocks = universe / SUPERBLOCK + 1;
        let mut relative = ScratchVec::filled(superblocks, 0u64);
        let mut abs = Vec::with_capacity(superblocks);
        let mut total = 0usize;
        for sb in 0..superblocks {
            abs.push(total);
            let mut inner = 0u64;
            let mut packed = 0u64;
            for blk in 0..SUPERBLOCK / BLOCK {
                if blk > 0 {
                    packed |= inner << (REL_BITS * (blk - 1));
                }
                let w = sb * (SUPERBLOCK / BLOCK) + blk;
                if w < words.len() {
                    inner += words[w].count_ones() as u64;
                }
            }
            relative[sb] = packed;
            total += inner as usize;
        }
        debug_assert_eq!(total, ones);

        let absolute = if universe <= u32::MAX as usize {
            let mut v = ScratchVec::filled(superblocks, 0u32);
            for (slot, a) in v.iter_mut().zip(abs) {
                *slot = a as u32;
            }
            Absolute::Narrow(v)
        } else {
            let mut v = ScratchVec::filled(superblocks, 0u64);
            for (slot, a) in v.iter_mut().zip(abs) {
                *slot = a as u64;
            }
            Absolute::Wide(v)
        };

        Ok(PlainBitvector {
            universe,
            ones,
            words,
            absolute,
            relative,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn rank1(&self, prefix: usize) -> usize {
        debug_assert!(prefix <= self.universe);
        let sb = prefix / SUPERBLOCK;
        let blk = (prefix / BLOCK) % (SUPERBLOCK / BLOCK);
        let mut r = self.absolute.get(sb);
        if blk > 0 {
            r += ((self.relative[sb] >> (REL_BITS * (blk - 1))) & 0x1ff) as usize;
        }
        let rem = prefix % BLOCK;
        if rem != 0 {
            r += (self.words[prefix / BLOCK] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    /// Raw bit storage, rounded up to whole words.
    pub fn raw_bits(&self) -> usize {
        self.words.bytes() * 8
    }

    /// Bits spent on the rank directory.
    pub fn directory_bits(&self) -> usize {
        self.absolute.bits() + self.relative.bytes() * 8
    }

    pub fn size_in_bits(&self) -> usize {
        self.raw_bits() + self.directory_bits()
    }
}
