//! Index building, document array computation and benchmarking behind the
//! `dak` command-line tool.

pub mod commands;
pub mod index;
pub mod report;

use std::fmt;
use std::str::FromStr;

/// Document array construction method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// In-place LF traversal over the suffix array's own cells.
    Inplace,
    /// Scatter through the inverse suffix array.
    Isa,
    /// Separator rank over a plain bitvector.
    RankPlain,
    /// Separator rank over an Elias-Fano bitvector.
    RankSparse,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Inplace, Method::Isa, Method::RankPlain, Method::RankSparse];

    pub fn name(self) -> &'static str {
        match self {
            Method::Inplace => "inplace",
            Method::Isa => "isa",
            Method::RankPlain => "rank-plain",
            Method::RankSparse => "rank-sparse",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method '{s}' (expected inplace, isa, rank-plain or rank-sparse)"))
    }
}
