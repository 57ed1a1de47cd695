use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use pcoh::catalog::{resolve, CatalogEntry};
use pcoh::invariants::{report, GroupCohomology, InvariantReport};
use pcoh::resolution::{cache_path, load_resolution, save_resolution, CohomologyFragment, MinimalResolution, DEFAULT_BUDGET};
use pcoh::verify::{default_degree, run_criterion, Status, Suite, VerifyOptions};
use rayon::prelude::*;
use serde_json::json;

const CACHE_ENV: &str = "PCOH_CACHE_DIR";

#[derive(Parser)]
#[command(name = "pcoh", version, about = "Mod-p cohomology and central detection invariants of finite p-groups")]
struct Cli {
    /// Cap on the number of columns in any linear system.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fingerprint and catalog data of a group.
    Info { id: String },
    /// Betti numbers and ring generator degrees through degree N.
    Cohomology {
        id: String,
        #[arg(long)]
        degree: usize,
        /// Resolution cache directory (defaults to $PCOH_CACHE_DIR).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Every invariant of one group as a JSON report.
    Invariants {
        id: String,
        #[arg(long)]
        degree: usize,
        /// Output file; `-` or absent writes to stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Central essential cohomology and its indecomposables.
    Cess {
        id: String,
        #[arg(long)]
        degree: usize,
    },
    /// One CSV row per group, computed in parallel.
    Table {
        #[arg(required = true)]
        ids: Vec<String>,
        /// Output file; `-` or absent writes to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Degree bound for every row (default 10 up to order 32, else 8).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Runs the acceptance criteria.
    Verify {
        #[arg(long, default_value = "quick")]
        suite: Suite,
        /// Presentation file for 64#108.
        #[arg(long)]
        pcp_64_108: Option<PathBuf>,
        /// Writes the outcomes as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

struct Failure {
    kind: &'static str,
    message: String,
    extra: Option<serde_json::Value>,
}

impl Failure {
    fn new(kind: &'static str, message: impl std::fmt::Display) -> Self {
        Failure { kind, message: message.to_string(), extra: None }
    }
}

type Outcome = Result<(), Failure>;

fn catalog(id: &str) -> Result<CatalogEntry, Failure> {
    resolve(id).map_err(|e| Failure::new("catalog", e))
}

fn computation<E: std::fmt::Display>(e: E) -> Failure {
    Failure::new("computation", e)
}

fn write_output(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| Failure::new("io", format!("{}: {e}", p.display()))),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Resolution through `n`, read from and written to the cache directory when one is set.
fn resolution(entry: &CatalogEntry, n: usize, budget: usize, cache: Option<&Path>) -> Result<Arc<MinimalResolution>, Failure> {
    let group = entry.group.group.clone();
    let pres = &entry.group.presentation;
    let Some(dir) = cache else {
        return MinimalResolution::build(group, n, budget).map(Arc::new).map_err(computation);
    };
    let path = cache_path(dir, pres, n);
    if path.is_file() {
        match load_resolution(&path, pres, group.clone()) {
            Ok(Some(r)) => {
                eprintln!("cache hit: {}", path.display());
                return Ok(Arc::new(r));
            }
            Ok(None) => eprintln!("cache stale: {}", path.display()),
            Err(e) => eprintln!("cache unreadable ({e}): {}", path.display()),
        }
    }
    let r = MinimalResolution::build(group, n, budget).map_err(computation)?;
    save_resolution(&path, pres, &r).map_err(|e| Failure::new("io", e))?;
    eprintln!("cache stored: {}", path.display());
    Ok(Arc::new(r))
}

fn cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn context(entry: &CatalogEntry, n: usize, budget: usize) -> Result<GroupCohomology, Failure> {
    let res = resolution(entry, n, budget, cache_dir(None).as_deref())?;
    Ok(GroupCohomology::from_resolution(entry.id.clone(), res, budget))
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn info(id: &str) -> Outcome {
    let entry = catalog(id)?;
    let g = &entry.group.group;
    let fp = entry.fingerprint;
    let mut s = String::new();
    writeln!(s, "id: {}", entry.id).unwrap();
    writeln!(s, "prime: {}", g.prime()).unwrap();
    writeln!(s, "order: {}", fp.order).unwrap();
    writeln!(s, "pc generators: {}", entry.group.presentation.num_gens()).unwrap();
    writeln!(s, "rank: {}", fp.p_rank).unwrap();
    writeln!(s, "center rank: {}", fp.center_rank).unwrap();
    writeln!(s, "p-central: {}", fp.p_central).unwrap();
    let x = &entry.expected;
    if let Some(t) = &x.group_type {
        let t: Vec<String> = t.iter().map(|a| a.to_string()).collect();
        writeln!(s, "recorded type: [{}]", t.join(",")).unwrap();
    }
    if x.e.is_some() || x.d0.is_some() {
        writeln!(s, "recorded e: {}, e': {}, d0: {}, d1: {}", opt(x.e), opt(x.e_prime), opt(x.d0), opt(x.d1)).unwrap();
    }
    write_output(None, &s)
}

fn cohomology(id: &str, n: usize, cache: Option<PathBuf>, budget: usize) -> Outcome {
    let entry = catalog(id)?;
    let res = resolution(&entry, n, budget, cache_dir(cache).as_deref())?;
    let ring = CohomologyFragment::new(res.clone()).map_err(computation)?;
    let gens = ring.generator_degrees();
    let mut s = String::new();
    writeln!(s, "group {} (order {}), degrees 0..={n}", entry.id, res.group().order()).unwrap();
    writeln!(s, "degree\tdim\tgenerators").unwrap();
    for (k, b) in res.hilbert_fragment().iter().enumerate() {
        writeln!(s, "{k}\t{b}\t{}", gens.iter().filter(|&&d| d == k).count()).unwrap();
    }
    write_output(None, &s)
}

fn invariants(id: &str, n: usize, out: Option<PathBuf>, budget: usize) -> Outcome {
    let entry = catalog(id)?;
    let ctx = context(&entry, n, budget)?;
    let r = report(&ctx);
    let text = serde_json::to_string_pretty(&r).map_err(computation)? + "\n";
    write_output(out.as_deref(), &text)
}

fn cess(id: &str, n: usize, budget: usize) -> Outcome {
    let entry = catalog(id)?;
    let ctx = context(&entry, n, budget)?;
    let dims = ctx.cess_dims().map_err(computation)?;
    let qa = ctx.qa_cess_dims().map_err(computation)?;
    let pc = ctx.pc_primitive_dims(true).map_err(computation)?;
    let mut s = String::new();
    writeln!(s, "group {}, degrees 0..={n}", entry.id).unwrap();
    writeln!(s, "degree\tCess\tQ_A Cess\tP_C Cess").unwrap();
    for k in 0..=n {
        writeln!(s, "{k}\t{}\t{}\t{}", dims.dims[k], qa.dims[k], pc.dims[k]).unwrap();
    }
    let (nonzero, certified) = ctx.cess_nonzero().map_err(computation)?;
    let ep = ctx.e_prime().map_err(computation)?;
    let epp = ctx.e_double_prime().map_err(computation)?;
    writeln!(s, "cess nonzero: {nonzero} (certified: {certified})").unwrap();
    writeln!(s, "e': {} (certified: {}, heuristic: {})", ep.value, ep.certified, ep.heuristic).unwrap();
    writeln!(s, "e'': {} (certified: {}, heuristic: {})", epp.value, epp.certified, epp.heuristic).unwrap();
    write_output(None, &s)
}

const CSV_HEADER: [&str; 11] = ["order", "id", "type", "e", "h", "d0", "d1", "e_prime", "e_dprime", "p_central", "certified"];

fn csv_row(r: &InvariantReport) -> Vec<String> {
    let num = |x: Option<i64>| x.map_or_else(String::new, |v| v.to_string());
    let ty = r.group_type.as_ref().map_or_else(String::new, |t| {
        format!("[{}]", t.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
    });
    vec![
        r.order.to_string(),
        r.group_id.clone(),
        ty,
        num(r.e),
        num(r.h),
        num(r.d0),
        num(r.d1),
        num(r.e_prime),
        num(r.e_double_prime),
        r.p_central.to_string(),
        r.fully_certified().to_string(),
    ]
}

fn table(ids: &[String], out: Option<PathBuf>, degree: Option<usize>, budget: usize) -> Outcome {
    let reports: Vec<Result<InvariantReport, Failure>> = ids
        .par_iter()
        .map(|id| {
            let entry = catalog(id)?;
            let n = degree.unwrap_or_else(|| default_degree(entry.fingerprint.order));
            Ok(report(&context(&entry, n, budget)?))
        })
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(computation)?;
    for r in reports {
        w.write_record(csv_row(&r?)).map_err(computation)?;
    }
    let bytes = w.into_inner().map_err(computation)?;
    write_output(out.as_deref(), &String::from_utf8(bytes).map_err(computation)?)
}

fn verify(suite: Suite, pcp: Option<PathBuf>, out: Option<PathBuf>, budget: usize) -> Outcome {
    let opts = VerifyOptions { budget, presentation_64_108: pcp };
    let mut outcomes = Vec::new();
    for n in suite.criteria() {
        let o = run_criterion(n, &opts);
        for line in o.lines() {
            println!("{line}");
        }
        outcomes.push(o);
    }
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&outcomes).map_err(computation)? + "\n";
        write_output(Some(&path), &text)?;
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| o.status() == Status::Fail).map(|o| o.number).collect();
    if failed.is_empty() {
        return Ok(());
    }
    Err(Failure {
        kind: "verification",
        message: format!("{} of {} criteria failed", failed.len(), outcomes.len()),
        extra: Some(json!({ "failed": failed })),
    })
}

fn run(cli: Cli) -> Outcome {
    let budget = cli.budget;
    match cli.command {
        Command::Info { id } => info(&id),
        Command::Cohomology { id, degree, cache } => cohomology(&id, degree, cache, budget),
        Command::Invariants { id, degree, json } => invariants(&id, degree, json, budget),
        Command::Cess { id, degree } => cess(&id, degree, budget),
        Command::Table { ids, csv, degree } => table(&ids, csv, degree, budget),
        Command::Verify { suite, pcp_64_108, json } => verify(suite, pcp_64_108, json, budget),
    }
}

fn report_failure(f: Failure, code: u8) -> ExitCode {
    let mut v = json!({ "error": f.kind, "message": f.message });
    if let (Some(extra), Some(obj)) = (f.extra, v.as_object_mut()) {
        if let Some(e) = extra.as_object() {
            obj.extend(e.clone());
        }
    }
    eprintln!("{v}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_failure(Failure::new("usage", e.to_string().trim_end()), 2),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report_failure(f, 1),
    }
}
