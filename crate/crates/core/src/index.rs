//! Integer cell types for suffix arrays and work arrays.

use std::fmt::Debug;
use std::hash::Hash;

/// Storage width of suffix array cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Width {
    W32,
    W64,
}

impl Width {
    /// 32-bit cells whenever `n < 2^31`.
    pub fn for_len(n: usize) -> Width {
        if (n as u64) < (1u64 << 31) {
            Width::W32
        } else {
            Width::W64
        }
    }

    pub fn bytes(self) -> usize {
        match self {
            Width::W32 => 4,
            Width::W64 => 8,
        }
    }

    pub fn bits(self) -> u32 {
        8 * self.bytes() as u32
    }

    pub fn from_bytes(b: u8) -> Option<Width> {
        match b {
            4 => Some(Width::W32),
            8 => Some(Width::W64),
            _ => None,
        }
    }
}

/// An unsigned cell type able to hold any position of the text.
pub trait Index: Copy + Default + Ord + Eq + Hash + Debug + Send + Sync + 'static {
    const WIDTH: Width;

    fn from_usize(v: usize) -> Self;
    fn to_usize(self) -> usize;

    fn write_le(self, out: &mut Vec<u8>);
    fn read_le(bytes: &[u8]) -> Self;

    fn fits(n: usize) -> bool;
}

impl Index for u32 {
    const WIDTH: Width = Width::W32;

    #[inline(always)]
    fn from_usize(v: usize) -> Self {
        debug_assert!(v <= u32::MAX as usize);
        v as u32
    }

    #[inline(always)]
    fn to_usize(self) -> usize {
        self as usize
    }

    fn write_le(self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Self {
        u32::from_le_bytes(bytes.try_into().expect("4 bytes"))
    }

    fn fits(n: usize) -> bool {
        (n as u64) <= u32::MAX as u64
    }
}

impl Index for u64 {
    const WIDTH: Width = Width::W64;

    #[inline(always)]
    fn from_usize(v: usize) -> Self {
        v as u64
    }

    #[inline(always)]
    fn to_usize(self) -> usize {
        self as usize
    }

    fn write_le(self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Self {
        u64::from_le_bytes(bytes.try_into().expect("8 bytes"))
    }

    fn fits(_n: usize) -> bool {
        true
    }
}
