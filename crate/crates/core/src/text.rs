//! The concatenated text of a collection.
//!
//! Documents are joined as `T_1 $ T_2 $ ... T_d $ #`, with `#` stored as byte 0
//! and every `$` as byte 1, so that plain byte order gives `# < $ < body bytes`.
//! Document bodies may therefore not contain 0x00 or 0x01.

use crate::{Error, Result};

/// Code of the global end-marker `#`.
pub const SENT_HASH: u8 = 0;
/// Code of the per-document separator `$`.
pub const SENT_DOLLAR: u8 = 1;

/// `T_1 $ ... T_d $ #` together with its document boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatText {
    bytes: Vec<u8>,
    // ends[0] = 0 and ends[j] is one past the `$` of document j, i.e. the
    // 1-based position of that `$`. Document j spans ends[j-1]..ends[j].
    ends: Vec<usize>,
    sigma: usize,
}

impl ConcatText {
    /// Concatenates `docs`, appending a `$` to each and a final `#`.
    pub fn build<D: AsRef<[u8]>>(docs: &[D]) -> Result<ConcatText> {
        if docs.is_empty() {
            return Err(Error::EmptyCollection);
        }
        let total: usize = docs.iter().map(|d| d.as_ref().len() + 1).sum::<usize>() + 1;
        let mut bytes = Vec::with_capacity(total);
        let mut ends = Vec::with_capacity(docs.len() + 1);
        ends.push(0);
        for (k, doc) in docs.iter().enumerate() {
            let doc = doc.as_ref();
            if let Some(offset) = doc.iter().position(|&b| b <= SENT_DOLLAR) {
                return Err(Error::ReservedByteInDocument {
                    doc: k + 1,
                    offset,
                    byte: doc[offset],
                });
            }
            bytes.extend_from_slice(doc);
            bytes.push(SENT_DOLLAR);
            ends.push(bytes.len());
        }
        bytes.push(SENT_HASH);
        let sigma = distinct_symbols(&bytes);
        Ok(ConcatText { bytes, ends, sigma })
    }

    /// Validates a pre-built concatenation that uses codes 0 and 1 as markers.
    pub fn from_raw(bytes: Vec<u8>) -> Result<ConcatText> {
        let n = bytes.len();
        if n < 2 {
            return Err(Error::Format(format!("raw text of {n} bytes is too short")));
        }
        if bytes[n - 1] != SENT_HASH {
            return Err(Error::Format("raw text does not end with the 0x00 end-marker".into()));
        }
        if bytes[n - 2] != SENT_DOLLAR {
            return Err(Error::Format("last document is not terminated by 0x01".into()));
        }
        let mut ends = vec![0];
        for (p, &b) in bytes[..n - 1].iter().enumerate() {
            match b {
                SENT_HASH => {
                    return Err(Error::Format(format!("end-marker 0x00 at interior offset {p}")));
                }
                SENT_DOLLAR => ends.push(p + 1),
                _ => {}
            }
        }
        let sigma = distinct_symbols(&bytes);
        Ok(ConcatText { bytes, ends, sigma })
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    /// Text length `N`, including all markers.
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false: a valid text holds at least `$#`.
    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    /// Number of documents `d`.
    pub fn num_docs(&self) -> usize {
        self.ends.len() - 1
    }

    /// Distinct byte values present, markers included.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// `[l_0, l_1, ..., l_d]` with `l_0 = 0`; document `j` occupies positions
    /// `l_{j-1}..l_j` (0-based, half open) and its `$` sits at `l_j - 1`.
    pub fn boundaries(&self) -> &[usize] {
        &self.ends
    }

    /// Length of document `j` (1-based) including its `$`.
    pub fn doc_len(&self, j: usize) -> usize {
        self.ends[j] - self.ends[j - 1]
    }

    /// 0-based position of the `$` closing document `j` (1-based).
    pub fn separator_pos(&self, j: usize) -> usize {
        self.ends[j] - 1
    }

    /// Document containing 0-based position `p`. The final `#` belongs to
    /// document `d + 1`; each `$` belongs to the document it closes.
    pub fn doc_of_position(&self, p: usize) -> Result<usize> {
        let n = self.len();
        if p >= n {
            return Err(Error::PositionOutOfRange { pos: p, len: n });
        }
        Ok(self.doc_of(p))
    }

    #[inline]
    pub(crate) fn doc_of(&self, p: usize) -> usize {
        if p + 1 == self.len() {
            return self.num_docs() + 1;
        }
        self.ends[1..].partition_point(|&e| e <= p) + 1
    }

    pub fn count_table(&self) -> CountTable {
        CountTable::from_bytes(&self.bytes)
    }
}

fn distinct_symbols(bytes: &[u8]) -> usize {
    let mut seen = [false; 256];
    for &b in bytes {
        seen[b as usize] = true;
    }
    seen.iter().filter(|&&s| s).count()
}

/// `C[c]`: number of text symbols strictly smaller than `c`, all `$` counted
/// as one symbol.
#[derive(Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: [u64; 256],
}

impl CountTable {
    pub fn from_bytes(bytes: &[u8]) -> CountTable {
        let mut hist = [0u64; 256];
        for &b in bytes {
            hist[b as usize] += 1;
        }
        let mut counts = [0u64; 256];
        let mut acc = 0;
        for c in 0..256 {
            counts[c] = acc;
            acc += hist[c];
        }
        CountTable { counts }
    }

    pub fn get(&self, code: u8) -> u64 {
        self.counts[code as usize]
    }

    pub fn as_array(&self) -> &[u64; 256] {
        &self.counts
    }
}

impl std::fmt::Debug for CountTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // only the steps, 256 entries are unreadable
        let mut m = f.debug_map();
        for c in 0..256 {
            if c == 255 || self.counts[c] != self.counts[c + 1] {
                m.entry(&c, &self.counts[c]);
            }
        }
        m.finish()
    }
}
