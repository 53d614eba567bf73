//! Index directories: `text.raw`, `sa.bin` and the `meta.json` sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dak_core::io::{decode_sa, encode_sa, AnySuffixArray};
use dak_core::sa::suffix_sort;
use dak_core::text::ConcatText;
use dak_core::Width;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TEXT_FILE: &str = "text.raw";
pub const SA_FILE: &str = "sa.bin";
pub const META_FILE: &str = "meta.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub n: u64,
    pub d: u64,
    pub sigma: u64,
    pub width: u8,
    /// SHA-256 over the boundaries `l_1..l_d` as little-endian u64s.
    pub boundaries_sha256: String,
}

impl Meta {
    pub fn describe(ct: &ConcatText) -> Meta {
        Meta {
            n: ct.len() as u64,
            d: ct.num_docs() as u64,
            sigma: ct.sigma() as u64,
            width: Width::for_len(ct.len()).bytes() as u8,
            boundaries_sha256: boundaries_digest(ct),
        }
    }
}

pub fn boundaries_digest(ct: &ConcatText) -> String {
    let mut h = Sha256::new();
    for &l in &ct.boundaries()[1..] {
        h.update((l as u64).to_le_bytes());
    }
    format!("{:x}", h.finalize())
}

/// A loaded index.
pub struct Index {
    pub dir: PathBuf,
    pub meta: Meta,
    pub text: ConcatText,
    pub sa: AnySuffixArray,
    /// The suffix array file exactly as stored.
    pub sa_bytes: Vec<u8>,
}

impl Index {
    pub fn name(&self) -> String {
        self.dir
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.dir.display().to_string())
    }

    pub fn load(dir: &Path) -> Result<Index> {
        let meta: Meta = serde_json::from_slice(
            &fs::read(dir.join(META_FILE)).with_context(|| format!("reading {}", dir.join(META_FILE).display()))?,
        )
        .context("parsing index metadata")?;
        let raw = fs::read(dir.join(TEXT_FILE)).with_context(|| format!("reading {}", dir.join(TEXT_FILE).display()))?;
        let text = ConcatText::from_raw(raw).context("validating stored text")?;
        let sa_bytes = fs::read(dir.join(SA_FILE)).with_context(|| format!("reading {}", dir.join(SA_FILE).display()))?;
        let (header, sa) = decode_sa(&sa_bytes).context("decoding suffix array")?;

        if header.n != text.len() as u64 || header.d != text.num_docs() as u64 {
            bail!(
                "suffix array header (N={}, d={}) does not match text (N={}, d={})",
                header.n,
                header.d,
                text.len(),
                text.num_docs()
            );
        }
        let expect = Meta::describe(&text);
        if meta.n != expect.n || meta.d != expect.d || meta.boundaries_sha256 != expect.boundaries_sha256 {
            bail!("metadata does not describe the stored text");
        }
        if meta.width as usize != sa.width().bytes() {
            bail!("metadata width {} does not match suffix array width {}", meta.width, sa.width().bytes());
        }
        Ok(Index {
            dir: dir.to_path_buf(),
            meta,
            text,
            sa,
            sa_bytes,
        })
    }
}

/// Sorts the suffixes of `ct` and writes the three index files into `dir`.
pub fn write_index(ct: &ConcatText, dir: &Path) -> Result<Meta> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let meta = Meta::describe(ct);
    let sa_bytes = match Width::for_len(ct.len()) {
        Width::W32 => encode_sa(&suffix_sort::<u32>(ct)?, ct.num_docs()),
        Width::W64 => encode_sa(&suffix_sort::<u64>(ct)?, ct.num_docs()),
    };
    fs::write(dir.join(TEXT_FILE), ct.as_bytes())?;
    fs::write(dir.join(SA_FILE), sa_bytes)?;
    fs::write(dir.join(META_FILE), serde_json::to_vec_pretty(&meta)?)?;
    Ok(meta)
}
