//! Command line frontend.
//!
//! Artifacts are exchanged as JSON: cell sets as `{"k", "n", "cells"}`, pair
//! functions as `{"n", "values"}`, search results as reports with optional
//! stored objects. Every command writes its result to stdout (mirrored to
//! `--out` when given) and nothing else, so identical invocations produce
//! identical bytes. Exit codes: 0 the property holds or the command
//! succeeded, 1 the property fails, 2 invalid usage or input, 3 a search
//! refused its budget.

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bitrade_core::construct::{
    b_s, lift_pair_function, linear_mds_q3, pair_g, pair_g_prime, pair_h,
    parity_extension_bitrade, PairFunction,
};
use bitrade_core::cube::{CellSet, Params};
use bitrade_core::rng::SplitMix64;
use bitrade_core::search::{
    brute_force_bitrades, complete_partial_quasigroup, embedding_search,
    enumerate_bitrades_q3, enumerate_mds, pairwise_symdiff_spectrum, split_check,
    BruteStrategy, PartialQuasigroup, SearchOptions, SearchReport,
    DEFAULT_NODE_BUDGET, DEFAULT_STORE_CAP,
};
use bitrade_core::verify::{
    bipartition, is_embedded, is_latin_bitrade, is_t_fold_mds, minimal_bitrade_check,
    Certificate, Witness,
};
use bitrade_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "bitrade",
    version,
    about = "Latin bitrades and multi-fold MDS codes in the k-ary n-dimensional hypercube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for verify, construct, and search results
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Mirror stdout to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run a certified check on a cell set read from FILE (- for stdin)
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Build a named object and print it
    Construct {
        #[command(subcommand)]
        what: ConstructWhat,
    },
    /// Exhaustive enumerations and backtracking searches
    Search {
        #[command(subcommand)]
        what: SearchWhat,
    },
    /// Packaged experiments; prints a pass/fail table
    Repro {
        #[command(subcommand)]
        what: ReproWhat,

        /// Seed for the randomized closure samples
        #[arg(long, default_value_t = 0x9e3779b97f4a7c15)]
        seed: u64,

        /// Worker threads for the enumerations
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Every line meets the set in 0 or 2 cells
    Bitrade { file: PathBuf },
    /// Every line meets the set in exactly t cells
    Mds {
        file: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// The graph induced on the set by Hamming distance 1 is bipartite
    Bipartite { file: PathBuf },
    /// The four equivalent minimality conditions for a nonempty bitrade
    Minimal { file: PathBuf },
}

#[derive(Subcommand)]
enum ConstructWhat {
    /// Extend a binary cell set to the ternary bitrade it determines
    Moebius { file: PathBuf },
    /// The bipartite bitrade of size 2^(n+1) - 2^(s+1) in Q_3^n
    Bs {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        s: u16,
    },
    /// The linear 1-fold MDS code of Q_3^n (coordinate sum divisible by 3)
    Linear {
        #[arg(long)]
        n: u16,
    },
    /// A named pair function on Q_4^n (h also needs --s)
    Pairfn {
        which: PairKind,
        #[arg(long)]
        n: u16,
        #[arg(long)]
        s: Option<u16>,
    },
    /// Lift a pair function to the 2-fold MDS code of Q_4^(n+1) it defines
    Lift { file: PathBuf },
    /// Cartesian product of two cell sets
    Product { a: PathBuf, b: PathBuf },
    /// Symmetric difference of two cell sets over the same space
    Symdiff { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum PairKind {
    G,
    GPrime,
    H,
}

#[derive(Subcommand)]
enum SearchWhat {
    /// Enumerate all latin bitrades of Q_k^n
    Bitrades {
        #[arg(long)]
        k: u16,
        #[arg(long)]
        n: u16,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Enumerate all t-fold MDS codes of Q_k^n
    Mds {
        #[arg(long)]
        k: u16,
        #[arg(long)]
        n: u16,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Histogram of pairwise symmetric difference sizes over a list of codes
    Spectrum {
        /// JSON array of cell sets, or a search report with stored objects
        file: PathBuf,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Decide whether a t-fold code splits into t disjoint 1-fold codes
    Split {
        file: PathBuf,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Find a t-fold code the bitrade is embedded in
    Embed {
        file: PathBuf,
        /// Target alphabet size (defaults to the bitrade's)
        #[arg(long)]
        k: Option<u16>,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Complete a partial quasigroup (given as its graph) to order m
    Complete {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        flags: SearchFlags,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Subsets,
    Backtracking,
}

impl Strategy {
    fn core(self) -> BruteStrategy {
        match self {
            Strategy::Auto => BruteStrategy::Auto,
            Strategy::Subsets => BruteStrategy::Subsets,
            Strategy::Backtracking => BruteStrategy::Backtracking,
        }
    }
}

#[derive(Args)]
struct SearchFlags {
    /// Refuse after this many search nodes
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,

    /// Keep up to this many found objects in the report (0 keeps none)
    #[arg(long, default_value_t = 0)]
    store_cap: usize,

    /// Worker threads
    #[arg(long, default_value_t = 1)]
    workers: usize,

    /// Re-verify every stored object against its defining check
    #[arg(long)]
    self_check: bool,
}

impl SearchFlags {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            node_budget: self.node_budget,
            store_objects: self.store_cap > 0,
            store_cap: if self.store_cap > 0 {
                self.store_cap
            } else {
                DEFAULT_STORE_CAP
            },
            workers: self.workers.max(1),
            self_check: self.self_check,
        }
    }
}

#[derive(Subcommand)]
enum ReproWhat {
    /// Ternary bitrade catalogs: 4, 16, 256, cross-checked by subset scan
    Counts,
    /// Size bounds, the b_s family, ternary code spectrum, minimality, closure
    Spectrum,
    /// Order-4 latin squares and their pairwise symmetric differences
    Latin4,
    /// Pair function lifts: 2-fold checks, embeddings, splittability
    Nonsplit,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(code) => {
            print!("{out}");
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &out) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Validation(_) => 2,
                Error::Refused(_) => 3,
            })
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<u8> {
    match &cli.command {
        Command::Verify { what } => run_verify(what, cli.format, out),
        Command::Construct { what } => run_construct(what, cli.format, out),
        Command::Search { what } => run_search(what, cli.format, out),
        Command::Repro { what, seed, workers } => run_repro(what, *seed, *workers, out),
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::validation(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::validation(format!("reading {}: {e}", path.display())))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::validation(format!("parsing {what}: {e}")))
}

fn read_cellset(path: &Path) -> Result<CellSet> {
    parse_json(&read_text(path)?, "cell set")
}

fn read_pair_function(path: &Path) -> Result<PairFunction> {
    parse_json(&read_text(path)?, "pair function")
}

fn read_codes(path: &Path) -> Result<Vec<CellSet>> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse_json(&text, "code list")?;
    match value {
        serde_json::Value::Array(_) => parse_json(&text, "code list"),
        serde_json::Value::Object(mut map) => match map.remove("objects") {
            Some(objects) => serde_json::from_value(objects)
                .map_err(|e| Error::validation(format!("parsing stored objects: {e}"))),
            None => Err(Error::validation(
                "expected an array of cell sets or a report with stored objects",
            )),
        },
        _ => Err(Error::validation(
            "expected an array of cell sets or a report with stored objects",
        )),
    }
}

fn render_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn compact_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn emit_certificate(cert: &Certificate, format: Format, out: &mut String) -> u8 {
    match format {
        Format::Json => out.push_str(&render_json(cert)),
        Format::Table => {
            let verdict = if cert.verdict { "holds" } else { "fails" };
            out.push_str(&format!("verdict  {verdict}\n"));
            out.push_str(&format!("witness  {}\n", compact_json(&cert.witness)));
        }
    }
    if cert.verdict {
        0
    } else {
        1
    }
}

fn emit_cellset(s: &CellSet, format: Format, out: &mut String) {
    match format {
        Format::Json => out.push_str(&render_json(s)),
        Format::Table => {
            let p = s.params();
            out.push_str(&format!("k     {}\nn     {}\nsize  {}\n", p.k(), p.n(), s.len()));
            for pt in s.iter_points() {
                out.push_str(&format!("{pt}\n"));
            }
        }
    }
}

fn emit_report(r: &SearchReport, format: Format, out: &mut String) {
    match format {
        Format::Json => out.push_str(&render_json(r)),
        Format::Table => {
            out.push_str(&format!(
                "objective  {}\ncount      {}\nnodes      {}\n",
                r.objective, r.count, r.nodes
            ));
            if !r.histogram.is_empty() {
                out.push_str("sizes\n");
                let width = r
                    .histogram
                    .keys()
                    .max()
                    .map(|m| m.to_string().len())
                    .unwrap_or(1);
                for (size, mult) in &r.histogram {
                    out.push_str(&format!("  {size:>width$}  {mult}\n"));
                }
            }
            if let Some(objects) = &r.objects {
                out.push_str(&format!("objects stored  {}\n", objects.len()));
            }
        }
    }
}

fn run_verify(what: &VerifyWhat, format: Format, out: &mut String) -> Result<u8> {
    match what {
        VerifyWhat::Bitrade { file } => {
            let s = read_cellset(file)?;
            Ok(emit_certificate(&is_latin_bitrade(&s), format, out))
        }
        VerifyWhat::Mds { file, t } => {
            let s = read_cellset(file)?;
            Ok(emit_certificate(&is_t_fold_mds(&s, *t)?, format, out))
        }
        VerifyWhat::Bipartite { file } => {
            let s = read_cellset(file)?;
            Ok(emit_certificate(&bipartition(&s), format, out))
        }
        VerifyWhat::Minimal { file } => {
            let s = read_cellset(file)?;
            let report = minimal_bitrade_check(&s)?;
            match format {
                Format::Json => out.push_str(&render_json(&report)),
                Format::Table => {
                    out.push_str(&format!(
                        "size_is_minimum        {}\nfaces_are_dyadic       {}\nmeets_two_hyperplanes  {}\ngraph_is_binary_cube   {}\nagree                  {}\n",
                        report.size_is_minimum,
                        report.faces_are_dyadic,
                        report.meets_two_hyperplanes,
                        report.graph_is_binary_cube,
                        report.flags_agree(),
                    ));
                    if let Some(levels) = &report.projection_levels {
                        out.push_str(&format!("projection_levels      {levels:?}\n"));
                    }
                }
            }
            Ok(if report.is_minimal() { 0 } else { 1 })
        }
    }
}

fn run_construct(what: &ConstructWhat, format: Format, out: &mut String) -> Result<u8> {
    match what {
        ConstructWhat::Moebius { file } => {
            let a = read_cellset(file)?;
            emit_cellset(&parity_extension_bitrade(&a)?, format, out);
        }
        ConstructWhat::Bs { n, s } => emit_cellset(&b_s(*n, *s)?, format, out),
        ConstructWhat::Linear { n } => emit_cellset(&linear_mds_q3(*n)?, format, out),
        ConstructWhat::Pairfn { which, n, s } => {
            let f = match which {
                PairKind::G => pair_g(*n)?,
                PairKind::GPrime => pair_g_prime(*n)?,
                PairKind::H => {
                    let s = s.ok_or_else(|| Error::validation("pairfn h needs --s"))?;
                    pair_h(*n, s)?
                }
            };
            match format {
                Format::Json => out.push_str(&render_json(&f)),
                Format::Table => {
                    let codes: Vec<String> = f.values().iter().map(|v| v.code()).collect();
                    out.push_str(&format!("n       {}\nvalues  {}\n", f.n(), codes.join(" ")));
                }
            }
        }
        ConstructWhat::Lift { file } => {
            let f = read_pair_function(file)?;
            emit_cellset(&lift_pair_function(&f)?, format, out);
        }
        ConstructWhat::Product { a, b } => {
            let a = read_cellset(a)?;
            let b = read_cellset(b)?;
            emit_cellset(&a.cartesian_product(&b)?, format, out);
        }
        ConstructWhat::Symdiff { a, b } => {
            let a = read_cellset(a)?;
            let b = read_cellset(b)?;
            emit_cellset(&a.symdiff(&b)?, format, out);
        }
    }
    Ok(0)
}

fn run_search(what: &SearchWhat, format: Format, out: &mut String) -> Result<u8> {
    match what {
        SearchWhat::Bitrades { k, n, strategy, flags } => {
            let params = Params::new(*k, *n)?;
            let report = brute_force_bitrades(params, &flags.options(), strategy.core())?;
            emit_report(&report, format, out);
            Ok(0)
        }
        SearchWhat::Mds { k, n, t, flags } => {
            let params = Params::new(*k, *n)?;
            let report = enumerate_mds(params, *t, &flags.options())?;
            emit_report(&report, format, out);
            Ok(0)
        }
        SearchWhat::Spectrum { file, t, flags } => {
            let codes = read_codes(file)?;
            let report = pairwise_symdiff_spectrum(&codes, *t, &flags.options())?;
            emit_report(&report, format, out);
            Ok(0)
        }
        SearchWhat::Split { file, t, flags } => {
            let w = read_cellset(file)?;
            let cert = split_check(&w, *t, &flags.options())?;
            Ok(emit_certificate(&cert, format, out))
        }
        SearchWhat::Embed { file, k, t, flags } => {
            let b = read_cellset(file)?;
            let target = Params::new(k.unwrap_or(b.params().k() as u16), b.params().n() as u16)?;
            let report = embedding_search(&b, target, *t, &flags.options())?;
            let found = report.count > 0;
            emit_report(&report, format, out);
            Ok(if found { 0 } else { 1 })
        }
        SearchWhat::Complete { file, m, flags } => {
            let graph = read_cellset(file)?;
            let partial = PartialQuasigroup::from_graph(&graph)?;
            match complete_partial_quasigroup(&partial, *m, &flags.options())? {
                Some(total) => {
                    emit_cellset(&total.graph()?, format, out);
                    Ok(0)
                }
                None => {
                    eprintln!("no completion at order {m}");
                    Ok(1)
                }
            }
        }
    }
}

fn check(out: &mut String, all_pass: &mut bool, pass: bool, text: &str) {
    *all_pass &= pass;
    out.push_str(if pass { "PASS  " } else { "FAIL  " });
    out.push_str(text);
    out.push('\n');
}

fn run_repro(what: &ReproWhat, seed: u64, workers: usize, out: &mut String) -> Result<u8> {
    let t0 = Instant::now();
    let mut all_pass = true;
    let opts = SearchOptions {
        workers: workers.max(1),
        ..SearchOptions::default()
    };
    let stored = SearchOptions {
        store_objects: true,
        ..opts.clone()
    };
    match what {
        ReproWhat::Counts => {
            for (n, want) in [(1u16, 4usize), (2, 16), (3, 256)] {
                let sets: BTreeSet<Vec<usize>> = enumerate_bitrades_q3(n)?
                    .map(|b| b.iter_ranks().collect())
                    .collect();
                check(
                    out,
                    &mut all_pass,
                    sets.len() == want,
                    &format!("distinct bitrades of Q_3^{n}: {} of {want} expected", sets.len()),
                );
            }
            for n in 1..=2u16 {
                let catalog: BTreeSet<Vec<usize>> = enumerate_bitrades_q3(n)?
                    .map(|b| b.iter_ranks().collect())
                    .collect();
                let report =
                    brute_force_bitrades(Params::new(3, n)?, &stored, BruteStrategy::Subsets)?;
                let scanned: BTreeSet<Vec<usize>> = report
                    .objects
                    .expect("objects stored")
                    .iter()
                    .map(|b| b.iter_ranks().collect())
                    .collect();
                check(
                    out,
                    &mut all_pass,
                    catalog == scanned,
                    &format!("Q_3^{n} catalog matches the full subset scan set-for-set"),
                );
            }
        }
        ReproWhat::Spectrum => {
            let scan = brute_force_bitrades(Params::new(4, 2)?, &opts, BruteStrategy::Subsets)?;
            let small_ok = scan
                .histogram
                .keys()
                .all(|&size| size == 0 || (size >= 4 && (size >= 8 || size == 4 || size == 6)));
            check(
                out,
                &mut all_pass,
                scan.nodes == 1 << 16 && small_ok,
                "Q_4^2 full scan: nonempty bitrades have size >= 4, and below 8 only 4 and 6",
            );

            let sizes: BTreeSet<usize> = enumerate_bitrades_q3(3)?
                .map(|b| b.len())
                .filter(|&s| (8..16).contains(&s))
                .collect();
            check(
                out,
                &mut all_pass,
                sizes == BTreeSet::from([8, 12, 14]),
                &format!("Q_3^3 catalog sizes in [8,16) are exactly {{8, 12, 14}}: got {sizes:?}"),
            );
            let realized = [(2u16, 8usize), (1, 12), (0, 14)]
                .into_iter()
                .all(|(s, size)| b_s(3, s).map(|b| b.len() == size).unwrap_or(false));
            check(
                out,
                &mut all_pass,
                realized,
                "b_s(3, 2..=0) realizes the sizes 8, 12, 14",
            );

            let mut family_ok = true;
            let mut members = 0;
            for n in 1..=6u16 {
                for s in 0..n {
                    let b = b_s(n, s)?;
                    family_ok &= b.len() == (1usize << (n + 1)) - (1 << (s + 1));
                    family_ok &= is_latin_bitrade(&b).verdict;
                    family_ok &= bipartition(&b).verdict;
                    members += 1;
                }
            }
            check(
                out,
                &mut all_pass,
                family_ok && members == 21,
                "b_s family, n <= 6: stated size, bitrade, bipartite (21 members)",
            );

            let codes = enumerate_mds(Params::new(3, 2)?, 1, &stored)?;
            let objects = codes.objects.expect("objects stored");
            let spectrum = pairwise_symdiff_spectrum(&objects, 1, &opts)?;
            let observed: BTreeSet<usize> = spectrum.histogram.keys().copied().collect();
            check(
                out,
                &mut all_pass,
                codes.count == 6 && observed == BTreeSet::from([0, 4, 6]),
                &format!(
                    "6 codes of Q_3^2; pairwise symmetric difference sizes {observed:?} = {{0, 4, 6}}"
                ),
            );

            let mut agree = true;
            let mut checked = 0;
            for n in [2u16, 3] {
                for b in enumerate_bitrades_q3(n)? {
                    if b.is_empty() {
                        continue;
                    }
                    agree &= minimal_bitrade_check(&b)?.flags_agree();
                    checked += 1;
                }
            }
            check(
                out,
                &mut all_pass,
                agree && checked == 270,
                "four minimality conditions agree on all 270 nonempty catalog bitrades",
            );

            let catalog: Vec<CellSet> = enumerate_bitrades_q3(3)?.collect();
            let flags: Vec<bool> = catalog.iter().map(|b| bipartition(b).verdict).collect();
            let mut rng = SplitMix64::new(seed);
            let draw = |rng: &mut SplitMix64| rng.below(catalog.len() as u64) as usize;
            let mut symdiff_ok = true;
            for _ in 0..1000 {
                let (i, j) = (draw(&mut rng), draw(&mut rng));
                symdiff_ok &= is_latin_bitrade(&catalog[i].symdiff(&catalog[j])?).verdict;
            }
            check(
                out,
                &mut all_pass,
                symdiff_ok,
                "1000 random symmetric differences are bitrades",
            );
            let mut product_ok = true;
            for _ in 0..1000 {
                let (i, j) = (draw(&mut rng), draw(&mut rng));
                let p = catalog[i].cartesian_product(&catalog[j])?;
                product_ok &= is_latin_bitrade(&p).verdict;
                if flags[i] && flags[j] {
                    product_ok &= bipartition(&p).verdict;
                }
            }
            check(
                out,
                &mut all_pass,
                product_ok,
                "1000 random products are bitrades, bipartite when both factors are",
            );
        }
        ReproWhat::Latin4 => {
            let report = enumerate_mds(Params::new(4, 3)?, 1, &stored)?;
            check(
                out,
                &mut all_pass,
                report.count == 576,
                &format!("1-fold MDS codes of Q_4^3: {} of 576 expected", report.count),
            );
            let codes = report.objects.expect("objects stored");
            let spectrum = pairwise_symdiff_spectrum(&codes, 1, &opts)?;
            out.push_str("pairwise symmetric difference sizes (self pairs included)\n");
            for (size, mult) in &spectrum.histogram {
                out.push_str(&format!("  {size:>2}  {mult}\n"));
            }
            check(
                out,
                &mut all_pass,
                spectrum.histogram.get(&0) == Some(&576),
                "exactly the 576 self pairs have size 0",
            );
            let offending: Vec<(usize, u64)> = spectrum
                .histogram
                .iter()
                .filter(|(&size, _)| (9..16).contains(&size))
                .map(|(&size, &mult)| (size, mult))
                .collect();
            let text = if offending.is_empty() {
                "no pairwise size strictly between 8 and 16".to_string()
            } else {
                format!("no pairwise size strictly between 8 and 16: sizes {offending:?} occur")
            };
            check(out, &mut all_pass, offending.is_empty(), &text);
        }
        ReproWhat::Nonsplit => {
            for n in [2u16, 3] {
                let fg = lift_pair_function(&pair_g(n)?)?;
                let fg_prime = lift_pair_function(&pair_g_prime(n)?)?;
                let mut lifted_ok = is_t_fold_mds(&fg, 2)?.verdict
                    && is_t_fold_mds(&fg_prime, 2)?.verdict;
                let mut embed_ok = true;
                for s in 1..=n {
                    let fh = lift_pair_function(&pair_h(n, s)?)?;
                    lifted_ok &= is_t_fold_mds(&fh, 2)?.verdict;
                    let d = fg_prime.symdiff(&fh)?;
                    embed_ok &= d.len() == (1usize << (n + 2)) - (1 << (s + 1));
                    embed_ok &= is_latin_bitrade(&d).verdict && bipartition(&d).verdict;
                    embed_ok &= is_embedded(&d, &fh, 2)?.verdict;
                }
                check(
                    out,
                    &mut all_pass,
                    lifted_ok,
                    &format!("lifts of g, g', h_s at n = {n} are 2-fold MDS codes"),
                );
                check(
                    out,
                    &mut all_pass,
                    embed_ok,
                    &format!(
                        "lift(g') symdiff lift(h_s) at n = {n}: bipartite bitrades of size 2^(n+2) - 2^(s+1), embedded"
                    ),
                );

                let cert = split_check(&fg, 2, &opts)?;
                let verified = match &cert.witness {
                    Witness::Decomposition { parts } => {
                        parts.len() == 2
                            && parts[0].is_disjoint_from(&parts[1])?
                            && parts[0].union(&parts[1])? == fg
                            && parts
                                .iter()
                                .all(|p| matches!(is_t_fold_mds(p, 1), Ok(c) if c.verdict))
                    }
                    _ => false,
                };
                check(
                    out,
                    &mut all_pass,
                    cert.verdict && verified,
                    &format!("lift of g at n = {n} splits into two disjoint 1-fold codes"),
                );
                let fh = lift_pair_function(&pair_h(n, 1)?)?;
                let cert = split_check(&fh, 2, &opts)?;
                check(
                    out,
                    &mut all_pass,
                    !cert.verdict && matches!(cert.witness, Witness::Exhaustion { .. }),
                    &format!("lift of h_1 at n = {n} admits no splitting (exhausted)"),
                );
            }
        }
    }
    eprintln!("elapsed {:.2}s", t0.elapsed().as_secs_f64());
    Ok(if all_pass { 0 } else { 1 })
}
