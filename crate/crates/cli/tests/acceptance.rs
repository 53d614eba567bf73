//! Acceptance suite. Runs every criterion in sequence, prints one PASS/FAIL
//! line per criterion and exits nonzero if any fails.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use dak::report::{median, BenchReport};
use dak::Method;
use dak_core::bwt::{bwt_bytes, bwt_in_place, invert_bwt, lf_counting_in_place, lf_exact, WorkArray};
use dak_core::da::{da_inplace, da_inplace_with, da_oracle, da_via_isa, da_via_rank, DocumentArray};
use dak_core::exec::Exec;
use dak_core::meter;
use dak_core::rank::{separator_bitvector, Backend, RankBitvector};
use dak_core::sa::{inverse, naive_suffix_sort, suffix_sort, SuffixArray};
use dak_core::synth;
use dak_core::text::ConcatText;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const FUZZ_CASES: usize = 1000;
const FUZZ_SIGMAS: [usize; 4] = [2, 4, 26, 200];
const FUZZ_MAX_DOCS: usize = 64;
const FUZZ_MAX_TOTAL: usize = 5000;

const WORKSPACE_SIZES: [usize; 3] = [100_000, 1_000_000, 10_000_000];
const WORKSPACE_CAP_BYTES: usize = 4096;

const SUCCINCT_N: usize = 1_000_000;
const SUCCINCT_DOCS: [usize; 2] = [100, 10_000];
const PLAIN_DIRECTORY_RATIO: f64 = 0.25;
const SPARSE_OVERHEAD: f64 = 0.15;

const RANK_SETS: usize = 100;
const RANK_MAX_LEN: usize = 1 << 14;

const LINEAR_N: usize = 1_000_000;
const LINEAR_REPS: usize = 5;
const LINEAR_RATIO: (f64, f64) = (1.5, 3.5);

const CLI_CORPUS_BYTES: usize = 10 * 1024 * 1024;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// Brute-force document labels: count separators strictly before the start.
fn brute_da(text: &[u8], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut before = vec![0u32; n + 1];
    for p in 0..n {
        before[p + 1] = before[p] + u32::from(text[p] == 1);
    }
    sa.iter()
        .map(|&p| if p as usize == n - 1 { before[n] + 1 } else { before[p as usize] + 1 })
        .collect()
}

fn worked_collections() -> Vec<Vec<Vec<u8>>> {
    vec![
        vec![b"ab".to_vec(), b"a".to_vec()],
        vec![b"x".to_vec()],
        vec![b"a".to_vec(), b"a".to_vec()],
        vec![Vec::new()],
    ]
}

fn fuzz_collections() -> Vec<ConcatText> {
    let mut rng = synth::rng(0x5eed);
    let mut out: Vec<ConcatText> = worked_collections()
        .iter()
        .map(|docs| ConcatText::build(docs).unwrap())
        .collect();
    for k in 0..FUZZ_CASES {
        let sigma = FUZZ_SIGMAS[k % FUZZ_SIGMAS.len()];
        out.push(synth::random_collection(&mut rng, sigma, 1..=FUZZ_MAX_DOCS, FUZZ_MAX_TOTAL));
    }
    out
}

struct FuzzCase {
    ct: ConcatText,
    sa: SuffixArray<u32>,
}

fn fuzz_cases() -> Vec<FuzzCase> {
    fuzz_collections()
        .into_iter()
        .map(|ct| {
            let sa = suffix_sort::<u32>(&ct).unwrap();
            FuzzCase { ct, sa }
        })
        .collect()
}

fn c1_three_way(cases: &[FuzzCase]) -> Outcome {
    let start = Instant::now();
    for (k, FuzzCase { ct, sa }) in cases.iter().enumerate() {
        let naive = naive_suffix_sort::<u32>(ct, FUZZ_MAX_TOTAL).map_err(|e| e.to_string())?;
        ensure!(&naive == sa, "case {k}: suffix array differs from naive sort");
        let expect = DocumentArray::from_vec(brute_da(ct.as_bytes(), sa.as_slice()));
        ensure!(da_oracle(sa, ct, Exec::Sequential).unwrap() == expect, "case {k}: oracle");
        let (da, _) = da_inplace(WorkArray::from_sa(sa.clone()), ct, &ct.count_table()).map_err(|e| e.to_string())?;
        ensure!(da == expect, "case {k}: inplace");
        ensure!(da_via_isa(sa, ct).unwrap() == expect, "case {k}: isa");
        for backend in [Backend::Plain, Backend::Sparse] {
            let bv = separator_bitvector(ct, backend).unwrap();
            ensure!(da_via_rank(sa, &bv).unwrap() == expect, "case {k}: rank {backend:?}");
        }
    }
    Ok(format!("{} collections, {:.1}s", cases.len(), start.elapsed().as_secs_f64()))
}

fn c2_restoration(cases: &[FuzzCase]) -> Outcome {
    for (k, FuzzCase { ct, sa }) in cases.iter().enumerate() {
        let (_, work) = da_inplace(WorkArray::from_sa(sa.clone()), ct, &ct.count_table()).map_err(|e| e.to_string())?;
        ensure!(work.cells() == sa.as_slice(), "case {k}: work array differs from input suffix array");
    }
    Ok(format!("{} runs restored cell-for-cell", cases.len()))
}

fn c3_hand_trace() -> Outcome {
    let ct = ConcatText::build(&["ab", "a"]).unwrap();
    let sa = SuffixArray::<u32>::from_vec(vec![5, 2, 4, 3, 0, 1]).unwrap();
    ensure!(suffix_sort::<u32>(&ct).unwrap() == sa, "suffix array is not [6,3,5,4,1,2]");
    let mut work = WorkArray::from_sa(sa.clone());
    bwt_in_place(&mut work, &ct, Exec::Sequential).unwrap();
    let bwt = bwt_bytes(&work).unwrap();
    ensure!(bwt == b"\x01ba\x01\x00a", "BWT {bwt:?} is not $ba$#a");
    lf_counting_in_place(&mut work, &ct.count_table()).unwrap();
    let counting: Vec<u32> = work.cells().iter().map(|v| v + 1).collect();
    ensure!(counting == [2, 6, 4, 3, 1, 5], "counting LF {counting:?}");
    let exact: Vec<u32> = lf_exact(&sa, &inverse(&sa).unwrap(), Exec::Sequential)
        .unwrap()
        .iter()
        .map(|v| v + 1)
        .collect();
    ensure!(exact == [3, 6, 4, 2, 1, 5], "exact LF {exact:?}");
    let (da, _) = da_inplace(WorkArray::from_sa(sa), &ct, &ct.count_table()).unwrap();
    ensure!(da.as_slice() == [3, 1, 2, 2, 1, 1], "DA {:?}", da.as_slice());
    Ok("BWT $ba$#a, LF [2,6,4,3,1,5] / [3,6,4,2,1,5], DA [3,1,2,2,1,1]".into())
}

fn c4_lf_identities(cases: &[FuzzCase]) -> Outcome {
    let mut checked = 0usize;
    for (k, FuzzCase { ct, sa }) in cases.iter().enumerate() {
        let n = ct.len();
        let lf = lf_exact(sa, &inverse(sa).unwrap(), Exec::Sequential).unwrap();
        for i in 0..n {
            ensure!(
                sa.get(lf[i] as usize) == (sa.get(i) + n - 1) % n,
                "case {k}: sa[lf[{i}]] != sa[{i}] - 1"
            );
        }
        let mut work = WorkArray::from_sa(sa.clone());
        bwt_in_place(&mut work, ct, Exec::Sequential).unwrap();
        let bwt = bwt_bytes(&work).unwrap();
        lf_counting_in_place(&mut work, &ct.count_table()).unwrap();
        for i in 0..n {
            if bwt[i] >= 2 {
                ensure!(work.cells()[i] == lf[i], "case {k}: counting LF differs at {i}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} body-symbol cells agree"))
}

fn c5_workspace() -> Outcome {
    let m = meter::global();
    let mut peaks = Vec::new();
    for &n in &WORKSPACE_SIZES {
        let ct = synth::corpus(5, n, 1000, 4);
        let sa = suffix_sort::<u32>(&ct).unwrap();
        let counts = ct.count_table();
        let (res, inplace) = m.measure(|| da_inplace(WorkArray::from_sa(sa.clone()), &ct, &counts));
        res.map_err(|e| e.to_string())?;
        let (res, isa) = m.measure(|| da_via_isa(&sa, &ct));
        res.map_err(|e| e.to_string())?;
        ensure!(inplace.leaked_bytes == 0 && isa.leaked_bytes == 0, "workspace leaked at N={n}");
        ensure!(
            isa.peak_bytes >= n * 4,
            "isa peak {} < N x 4 = {} at N={n}",
            isa.peak_bytes,
            n * 4
        );
        peaks.push((n, inplace.peak_bytes, isa.peak_bytes));
    }
    let first = peaks[0].1;
    ensure!(
        peaks.iter().all(|p| p.1 == first),
        "inplace peaks differ across sizes: {peaks:?}"
    );
    ensure!(first <= WORKSPACE_CAP_BYTES, "inplace peak {first} > {WORKSPACE_CAP_BYTES}");
    let desc: Vec<String> = peaks.iter().map(|(n, a, b)| format!("N={n}: inplace {a} B, isa {b} B")).collect();
    Ok(desc.join("; "))
}

fn c6_succinct_sizes() -> Outcome {
    let n = SUCCINCT_N;
    let mut desc = Vec::new();
    for &d in &SUCCINCT_DOCS {
        let ct = synth::corpus(6, n, d, 4);
        let plain = separator_bitvector(&ct, Backend::Plain).unwrap();
        let RankBitvector::Plain(p) = &plain else { unreachable!() };
        ensure!(
            p.directory_bits() as f64 <= PLAIN_DIRECTORY_RATIO * n as f64,
            "plain directory {} bits > 0.25 N at d={d}",
            p.directory_bits()
        );
        let sparse = separator_bitvector(&ct, Backend::Sparse).unwrap();
        let lg = ((n as f64) / d as f64).log2().ceil().max(0.0);
        let limit = d as f64 * (2.0 + lg) * (1.0 + SPARSE_OVERHEAD);
        ensure!(
            sparse.size_in_bits() as f64 <= limit,
            "sparse {} bits > {limit:.0} at d={d}",
            sparse.size_in_bits()
        );
        desc.push(format!(
            "d={d}: plain dir {} bits ({:.3} N), sparse {} bits (limit {limit:.0})",
            p.directory_bits(),
            p.directory_bits() as f64 / n as f64,
            sparse.size_in_bits()
        ));
    }
    Ok(desc.join("; "))
}

fn c7_rank_exhaustive() -> Outcome {
    let mut rng = synth::rng(7);
    let mut queries = 0usize;
    for k in 0..RANK_SETS {
        let len = rng.gen_range(0..=RANK_MAX_LEN);
        let density = [0.001, 0.01, 0.1, 0.5, 0.9][k % 5];
        let bits: Vec<bool> = (0..len).map(|_| rng.gen_bool(density)).collect();
        let positions: Vec<usize> = (0..len).filter(|&i| bits[i]).collect();
        let plain = RankBitvector::from_sorted(len, positions.clone(), Backend::Plain).unwrap();
        let sparse = RankBitvector::from_sorted(len, positions, Backend::Sparse).unwrap();
        let mut acc = 0;
        for i in 0..=len {
            ensure!(plain.rank1(i).unwrap() == acc, "set {k}: plain rank1({i})");
            ensure!(sparse.rank1(i).unwrap() == acc, "set {k}: sparse rank1({i})");
            if i < len && bits[i] {
                acc += 1;
            }
            queries += 2;
        }
    }
    Ok(format!("{queries} queries over {RANK_SETS} sets"))
}

fn inplace_median(n: usize, reports: &mut Vec<BenchReport>) -> Result<f64, String> {
    let ct = synth::corpus(8, n, 100, 4);
    let mut sa = suffix_sort::<u32>(&ct).unwrap();
    let counts = ct.count_table();
    let mut times = Vec::new();
    let mut peak = 0;
    let mut verified = true;
    for _ in 0..LINEAR_REPS {
        let work = WorkArray::from_sa(sa);
        let start = Instant::now();
        let ((da, work), m) = {
            let (r, m) = meter::global().measure(|| da_inplace_with(work, &ct, &counts, Exec::Sequential));
            (r.map_err(|e| e.to_string())?, m)
        };
        times.push(start.elapsed().as_secs_f64());
        peak = m.peak_bytes;
        sa = work.into_sa().unwrap();
        verified &= da.as_slice()[0] as usize == ct.num_docs() + 1;
    }
    let secs = median(&mut times);
    reports.push(BenchReport {
        dataset: format!("synthetic-n{n}-d100-s4"),
        n: n as u64,
        d: ct.num_docs() as u64,
        sigma: ct.sigma() as u64,
        method: Method::Inplace,
        width_bytes: 4,
        seconds: secs,
        reps: LINEAR_REPS,
        peak_workspace_bytes: peak as u64,
        verified,
        sa_restored: None,
        excluded: vec![],
    });
    Ok(secs)
}

fn c8_linearity(report_dir: &Path) -> Outcome {
    let mut reports = Vec::new();
    let t1 = inplace_median(LINEAR_N, &mut reports)?;
    let t2 = inplace_median(2 * LINEAR_N, &mut reports)?;
    let ratio = t2 / t1;
    let path = report_dir.join("acceptance_linearity.jsonl");
    let mut f = fs::File::create(&path).map_err(|e| e.to_string())?;
    for r in &reports {
        writeln!(f, "{}", r.json_line()).map_err(|e| e.to_string())?;
    }
    ensure!(
        (LINEAR_RATIO.0..=LINEAR_RATIO.1).contains(&ratio),
        "time ratio {ratio:.2} outside [{}, {}] ({t1:.4}s -> {t2:.4}s)",
        LINEAR_RATIO.0,
        LINEAR_RATIO.1
    );
    Ok(format!("{t1:.4}s -> {t2:.4}s, ratio {ratio:.2}; report {}", path.display()))
}

fn c9_inversion(cases: &[FuzzCase]) -> Outcome {
    for (k, FuzzCase { ct, sa }) in cases.iter().enumerate() {
        let lf = lf_exact(sa, &inverse(sa).unwrap(), Exec::Sequential).unwrap();
        let mut work = WorkArray::from_sa(sa.clone());
        bwt_in_place(&mut work, ct, Exec::Sequential).unwrap();
        let text = invert_bwt(&bwt_bytes(&work).unwrap(), &lf, 0).map_err(|e| format!("case {k}: {e}"))?;
        ensure!(text == ct.as_bytes(), "case {k}: reconstruction differs");
    }
    Ok(format!("{} texts reconstructed", cases.len()))
}

fn dak(args: &[&str], cwd: &Path) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_dak"))
        .args(args)
        .current_dir(cwd)
        .output()
        .map_err(|e| e.to_string())
}

fn dak_ok(args: &[&str], cwd: &Path) -> Result<(), String> {
    let out = dak(args, cwd)?;
    ensure!(
        out.status.success(),
        "dak {} failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(())
}

fn round_trip(dir: &Path, input: &str, format: &str) -> Result<(), String> {
    dak_ok(&["build", "--format", format, "--in", input, "--out", "idx"], dir)?;
    let mut first: Option<Vec<u8>> = None;
    for m in Method::ALL {
        let out = format!("{m}.da");
        dak_ok(&["compute", "--index", "idx", "--method", m.name(), "--out", &out], dir)?;
        dak_ok(&["verify", "--index", "idx", "--da", &out], dir)?;
        let bytes = fs::read(dir.join(&out)).map_err(|e| e.to_string())?;
        match &first {
            None => first = Some(bytes),
            Some(f) => ensure!(f == &bytes, "{m} output differs from inplace"),
        }
    }
    let mut bytes = first.unwrap();
    let mut rng = synth::rng(10);
    let at = rng.gen_range(24..bytes.len());
    bytes[at] ^= 1 << rng.gen_range(0..8);
    fs::write(dir.join("corrupt.da"), &bytes).map_err(|e| e.to_string())?;
    let out = dak(&["verify", "--index", "idx", "--da", "corrupt.da"], dir)?;
    ensure!(!out.status.success(), "verify accepted a corrupted byte at offset {at}");
    Ok(())
}

fn c10_cli_round_trip() -> Outcome {
    let small = tempfile::tempdir().map_err(|e| e.to_string())?;
    fs::write(small.path().join("three.txt"), "ab\na\nbab\n").map_err(|e| e.to_string())?;
    round_trip(small.path(), "three.txt", "lines")?;

    let big = tempfile::tempdir().map_err(|e| e.to_string())?;
    let n = CLI_CORPUS_BYTES.to_string();
    dak_ok(&["gen", "--n", &n, "--docs", "1000", "--sigma", "26", "--out", "big.txt"], big.path())?;
    let size = fs::metadata(big.path().join("big.txt")).map_err(|e| e.to_string())?.len();
    round_trip(big.path(), "big.txt", "lines")?;
    Ok(format!("3-document fixture and {size}-byte corpus, corruption rejected"))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let report_dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let start = Instant::now();
    let cases = fuzz_cases();

    let criteria: Vec<Criterion> = vec![
        ("1 three-way oracle equivalence", Box::new(|| c1_three_way(&cases))),
        ("2 suffix array restoration", Box::new(|| c2_restoration(&cases))),
        ("3 hand-trace fixture", Box::new(c3_hand_trace)),
        ("4 LF identities", Box::new(|| c4_lf_identities(&cases))),
        ("5 workspace constancy", Box::new(c5_workspace)),
        ("6 succinct sizes", Box::new(c6_succinct_sizes)),
        ("7 rank exhaustive", Box::new(c7_rank_exhaustive)),
        ("8 linearity", Box::new(|| c8_linearity(report_dir))),
        ("9 BWT inversion", Box::new(|| c9_inversion(&cases))),
        ("10 CLI round-trip", Box::new(c10_cli_round_trip)),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("[PASS] criterion {name} ({:.2}s): {detail}", t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {name} ({:.2}s): {why}", t.elapsed().as_secs_f64());
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
