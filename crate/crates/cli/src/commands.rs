use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use dak_core::bwt::{bwt_bytes, bwt_in_place, WorkArray};
use dak_core::da::{da_inplace_with, da_via_isa, da_via_rank_with, verify_da, DocumentArray, VerifyReport};
use dak_core::exec::Exec;
use dak_core::io::{decode_da, encode_da, encode_sa, load_collection, AnySuffixArray, InputFormat};
use dak_core::meter::{self, Measurement};
use dak_core::rank::{separator_bitvector, Backend};
use dak_core::sa::SuffixArray;
use dak_core::text::ConcatText;

use crate::index::{write_index, Index, Meta};
use crate::report::{median, BenchReport};
use crate::Method;

pub fn build(input: &Path, format: InputFormat, out: &Path) -> Result<Meta> {
    let bytes = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let ct = load_collection(bytes, format).with_context(|| format!("parsing {}", input.display()))?;
    write_index(&ct, out)
}

/// One timed and metered run of `method`. The suffix array is handed back;
/// for `inplace` it is the restored array.
pub struct Run {
    pub da: DocumentArray,
    pub sa: AnySuffixArray,
    pub elapsed: Duration,
    pub workspace: Measurement,
}

pub fn run_method(ct: &ConcatText, sa: AnySuffixArray, method: Method, exec: Exec) -> Result<Run> {
    let meter = meter::global();
    meter.clear_exclusions();
    meter.exclude("text", ct.len());
    meter.exclude("sa", sa.len() * sa.width().bytes());
    meter.exclude("da", ct.len() * 4);
    let run = match sa {
        AnySuffixArray::W32(sa) => {
            let (da, sa, elapsed, workspace) = run_typed(ct, sa, method, exec)?;
            Run { da, sa: AnySuffixArray::W32(sa), elapsed, workspace }
        }
        AnySuffixArray::W64(sa) => {
            let (da, sa, elapsed, workspace) = run_typed(ct, sa, method, exec)?;
            Run { da, sa: AnySuffixArray::W64(sa), elapsed, workspace }
        }
    };
    if run.workspace.leaked_bytes != 0 {
        bail!("{method} left {} bytes of workspace charged", run.workspace.leaked_bytes);
    }
    Ok(run)
}

fn run_typed<I: dak_core::Index>(
    ct: &ConcatText,
    sa: SuffixArray<I>,
    method: Method,
    exec: Exec,
) -> Result<(DocumentArray, SuffixArray<I>, Duration, Measurement)> {
    let meter = meter::global();
    Ok(match method {
        Method::Inplace => {
            let counts = ct.count_table();
            let work = WorkArray::from_sa(sa);
            let start = Instant::now();
            let (res, m) = meter.measure(|| da_inplace_with(work, ct, &counts, exec));
            let elapsed = start.elapsed();
            let (da, work) = res?;
            (da, work.into_sa()?, elapsed, m)
        }
        Method::Isa => {
            let start = Instant::now();
            let (res, m) = meter.measure(|| da_via_isa(&sa, ct));
            (res?, sa, start.elapsed(), m)
        }
        Method::RankPlain | Method::RankSparse => {
            let backend = if method == Method::RankPlain { Backend::Plain } else { Backend::Sparse };
            let start = Instant::now();
            let (res, m) = meter.measure(|| {
                let bv = separator_bitvector(ct, backend)?;
                da_via_rank_with(&sa, &bv, exec)
            });
            (res?, sa, start.elapsed(), m)
        }
    })
}

fn verify_any(da: &DocumentArray, sa: &AnySuffixArray, ct: &ConcatText) -> Result<VerifyReport> {
    Ok(match sa {
        AnySuffixArray::W32(sa) => verify_da(da, sa, ct, Exec::default())?,
        AnySuffixArray::W64(sa) => verify_da(da, sa, ct, Exec::default())?,
    })
}

fn encode_any(sa: &AnySuffixArray, d: usize) -> Vec<u8> {
    match sa {
        AnySuffixArray::W32(sa) => encode_sa(sa, d),
        AnySuffixArray::W64(sa) => encode_sa(sa, d),
    }
}

/// Runs `method` `reps` times over one index and summarizes the runs.
/// Returns the document array of the last run with the report.
pub fn measure(index: &Index, method: Method, reps: usize, exec: Exec) -> Result<(DocumentArray, BenchReport)> {
    if reps == 0 {
        bail!("at least one repetition is required");
    }
    let ct = &index.text;
    let mut sa = index.sa.clone();
    let mut times = Vec::with_capacity(reps);
    let mut peak = 0;
    let mut last = None;
    let mut restored = true;
    for _ in 0..reps {
        let run = run_method(ct, sa, method, exec)?;
        times.push(run.elapsed.as_secs_f64());
        peak = peak.max(run.workspace.peak_bytes);
        if method == Method::Inplace {
            restored &= encode_any(&run.sa, ct.num_docs()) == index.sa_bytes;
        }
        sa = run.sa;
        last = Some(run.da);
    }
    let da = last.expect("at least one run");
    let verified = verify_any(&da, &sa, ct)?.is_ok();
    let report = BenchReport {
        dataset: index.name(),
        n: ct.len() as u64,
        d: ct.num_docs() as u64,
        sigma: ct.sigma() as u64,
        method,
        width_bytes: index.sa.width().bytes() as u8,
        seconds: median(&mut times),
        reps,
        peak_workspace_bytes: peak as u64,
        verified,
        sa_restored: (method == Method::Inplace).then_some(restored),
        excluded: meter::global().exclusions().into_iter().map(|(k, v)| (k, v as u64)).collect(),
    };
    Ok((da, report))
}

pub fn compute(index_dir: &Path, method: Method, out: &Path, exec: Exec) -> Result<BenchReport> {
    let index = Index::load(index_dir)?;
    let (da, report) = measure(&index, method, 1, exec)?;
    fs::write(out, encode_da(&da, index.text.num_docs())).with_context(|| format!("writing {}", out.display()))?;
    Ok(report)
}

pub fn bench(index_dirs: &[impl AsRef<Path>], methods: &[Method], reps: usize, exec: Exec) -> Result<Vec<BenchReport>> {
    let mut reports = Vec::new();
    for dir in index_dirs {
        let index = Index::load(dir.as_ref())?;
        for &m in methods {
            reports.push(measure(&index, m, reps, exec)?.1);
        }
    }
    Ok(reports)
}

pub fn verify(index_dir: &Path, da_path: &Path) -> Result<VerifyReport> {
    let index = Index::load(index_dir)?;
    let bytes = fs::read(da_path).with_context(|| format!("reading {}", da_path.display()))?;
    let (header, da) = decode_da(&bytes).with_context(|| format!("decoding {}", da_path.display()))?;
    let (n, d) = (index.text.len() as u64, index.text.num_docs() as u64);
    if header.n != n || header.d != d {
        bail!("document array is for N={}, d={} but the index has N={n}, d={d}", header.n, header.d);
    }
    verify_any(&da, &index.sa, &index.text)
}

pub fn dump_bwt(index_dir: &Path, out: &Path) -> Result<()> {
    let index = Index::load(index_dir)?;
    let bytes = match index.sa {
        AnySuffixArray::W32(sa) => bwt_of(sa, &index.text)?,
        AnySuffixArray::W64(sa) => bwt_of(sa, &index.text)?,
    };
    fs::write(out, bytes)?;
    Ok(())
}

fn bwt_of<I: dak_core::Index>(sa: SuffixArray<I>, ct: &ConcatText) -> Result<Vec<u8>> {
    let mut work = WorkArray::from_sa(sa);
    bwt_in_place(&mut work, ct, Exec::default())?;
    Ok(bwt_bytes(&work)?)
}
