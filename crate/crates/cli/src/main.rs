mod cache;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecketrace::drinfeld::{enumerate_classes_with, ClassList};
use hecketrace::ffield::{build_tower, build_tower_with_budget, is_prime, FFElem, FieldTower};
use hecketrace::funcfield::is_irreducible;
use hecketrace::hecke::{canonical_theta, hecke_tower, trace_table_with, HeckeContext, HeckeOptions};
use hecketrace::par::{self, Exec};
use hecketrace::poly::Poly;
use hecketrace::text::{parse_poly, render_poly, ReportRow};
use hecketrace::verify::{self, Suite, VerifyConfig};
use hecketrace::Error;
use num_rational::Ratio;

use cache::Cache;
use config::{Config, Format, Overrides};

#[derive(Parser)]
#[command(name = "hecketrace", version, about = "Traces of Hecke operators on Drinfeld cusp forms for F_q[T]")]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate rank-2 Drinfeld modules over F_{q^m} up to isomorphism
    Enumerate(EnumerateArgs),
    /// Traces of T_P^n on S_{k,l}
    Hecke(HeckeArgs),
    /// Run the seeded property suites
    Verify(VerifyArgs),
    /// Inspect or empty the class cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: u32,
    /// Characteristic P; θ is its lex-smallest root
    #[arg(long = "P", conflicts_with = "theta")]
    p: Option<String>,
    /// θ as comma-separated F_p coordinates in the field's power basis
    #[arg(long)]
    theta: Option<String>,
}

#[derive(Args)]
struct HeckeArgs {
    #[arg(long)]
    q: u32,
    /// Monic irreducible P; repeat for several
    #[arg(long = "P", required = true)]
    p: Vec<String>,
    /// Values as `2`, `1..3` (inclusive) or `1,4,5`
    #[arg(long)]
    n: String,
    #[arg(long)]
    k: String,
    #[arg(long)]
    l: String,
    /// Also compute every class term through the fiber crystal
    #[arg(long)]
    cross_check: bool,
    /// Enumerate even when a cached class list exists
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances per property
    #[arg(long)]
    instances: Option<usize>,
}

#[derive(Subcommand)]
enum CacheAction {
    List,
    Clear,
}

/// Failure with its exit status.
enum Failure {
    Usage(String),
    Budget(String),
    Theory(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(_) => Failure::Budget(e.to_string()),
            Error::TheoryViolation(_) => Failure::Theory(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Config::resolve(&cli.overrides).map_err(Failure::Usage).and_then(|cfg| {
        let exec = par::configure_workers(cfg.workers);
        match cli.command {
            Command::Enumerate(a) => enumerate(&cfg, exec, a),
            Command::Hecke(a) => hecke(&cfg, exec, a),
            Command::Verify(a) => run_verify(&cfg, exec, a),
            Command::Cache { action } => cache_cmd(&cfg, action),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, Some(m)),
                Failure::Budget(m) => (3, Some(m)),
                Failure::Theory(m) => (4, Some(m)),
                Failure::Verify => (1, None),
            };
            if let Some(m) = msg {
                eprintln!("error: {m}");
            }
            ExitCode::from(code)
        }
    }
}

fn base_field(q: u32) -> CliResult<FieldTower> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).filter(|&p| is_prime(p));
    let p = p.ok_or_else(|| Failure::Usage(format!("q = {q} is not a prime power")))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Failure::Usage(format!("q = {q} is not a prime power")));
    }
    Ok(build_tower(p, e, 1)?)
}

fn irreducible(src: &str, fq: &FieldTower) -> CliResult<Poly> {
    let p = parse_poly(src, fq)?;
    if p.degree().unwrap_or(0) == 0 || !p.is_monic() || !is_irreducible(&p)? {
        return Err(Failure::Usage(format!("{src:?} is not a monic irreducible polynomial")));
    }
    Ok(p)
}

fn out() -> std::io::StdoutLock<'static> {
    std::io::stdout().lock()
}

fn io_err(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("output error: {e}"))
}

fn classes(cfg: &Config, exec: Exec, tower: &FieldTower, theta: FFElem, use_cache: bool) -> CliResult<ClassList> {
    let cache = Cache::new(&cfg.cache_dir);
    if use_cache {
        if let Some(list) = cache.load(tower, theta)? {
            return Ok(list);
        }
    }
    let list = enumerate_classes_with(tower, theta, exec)?;
    cache.store(&list).map_err(Failure::Usage)?;
    Ok(list)
}

#[derive(serde::Serialize)]
struct CharPolyCount {
    a: String,
    b: String,
    classes: usize,
}

#[derive(serde::Serialize)]
struct EnumerationSummary {
    q: u32,
    m: u32,
    modulus: Vec<u32>,
    theta: Vec<u32>,
    characteristic: String,
    classes: usize,
    mass: String,
    mass_ok: bool,
    supersingular: usize,
    charpolys: Vec<CharPolyCount>,
}

fn enumerate(cfg: &Config, exec: Exec, a: EnumerateArgs) -> CliResult<()> {
    let fq = base_field(a.q)?;
    let size = (fq.q() as u64).checked_pow(a.m).filter(|&s| s <= cfg.budget);
    if size.is_none() {
        return Err(Failure::Budget(format!("q^m = {}^{} exceeds the budget {}", a.q, a.m, cfg.budget)));
    }
    let tower = build_tower_with_budget(fq.p(), fq.e(), a.m, cfg.field_budget)?;
    let theta = match (&a.p, &a.theta) {
        (Some(src), None) => {
            let p = irreducible(src, &fq)?;
            let d = p.degree().unwrap_or(0) as u32;
            if !a.m.is_multiple_of(d) {
                return Err(Failure::Usage(format!("deg P = {d} does not divide m = {}", a.m)));
            }
            canonical_theta(&p, &tower)?
        }
        (None, Some(src)) => {
            let coords: Vec<u32> = src
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| Failure::Usage(format!("bad θ coordinate {c:?}"))))
                .collect::<CliResult<_>>()?;
            tower.from_coeffs(&coords)?
        }
        _ => return Err(Failure::Usage("give exactly one of --P and --theta".into())),
    };
    let list = classes(cfg, exec, &tower, theta, true)?;
    let mut groups: Vec<CharPolyCount> = Vec::new();
    let mut supersingular = 0;
    for e in list.entries() {
        if list.module(e).is_supersingular(&e.charpoly) {
            supersingular += 1;
        }
        let (a, b) = (render_poly(&e.charpoly.a), render_poly(&e.charpoly.b));
        match groups.iter_mut().find(|g| g.a == a && g.b == b) {
            Some(g) => g.classes += 1,
            None => groups.push(CharPolyCount { a, b, classes: 1 }),
        }
    }
    let mass = list.mass();
    let summary = EnumerationSummary {
        q: tower.q(),
        m: tower.m(),
        modulus: tower.modulus().to_vec(),
        theta: tower.coeffs(theta),
        characteristic: render_poly(list.module(&list.entries()[0]).characteristic()),
        classes: list.len(),
        mass: mass.to_string(),
        mass_ok: mass == Ratio::from(tower.size() as i64),
        supersingular,
        charpolys: groups,
    };
    let mut w = out();
    match cfg.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &summary).map_err(io_err)?;
            writeln!(w).map_err(io_err)?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for g in &summary.charpolys {
                csv.serialize((summary.q, summary.m, &summary.characteristic, &g.a, &g.b, g.classes)).map_err(io_err)?;
            }
            csv.flush().map_err(io_err)?;
            eprintln!("{} classes, mass {}", summary.classes, summary.mass);
        }
    }
    Ok(())
}

fn parse_range<T: TryFrom<i64>>(src: &str, what: &str) -> CliResult<Vec<T>> {
    let bad = || Failure::Usage(format!("bad --{what} value {src:?}"));
    let mut out = Vec::new();
    for part in src.split(',') {
        let part = part.trim();
        let (lo, hi) = part.split_once("..").unwrap_or((part, part));
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        for v in lo..=hi {
            out.push(T::try_from(v).map_err(|_| bad())?);
        }
    }
    Ok(out)
}

fn hecke(cfg: &Config, exec: Exec, a: HeckeArgs) -> CliResult<()> {
    let fq = base_field(a.q)?;
    let ps: Vec<Poly> = a.p.iter().map(|s| irreducible(s, &fq)).collect::<CliResult<_>>()?;
    let ns = parse_range::<u32>(&a.n, "n")?;
    let ks = parse_range::<u32>(&a.k, "k")?;
    let ls = parse_range::<i64>(&a.l, "l")?;
    let opts = HeckeOptions { budget: cfg.budget, cross_check: a.cross_check, strict: false, exec };
    let mut failure = None;
    let reports = trace_table_with(&ps, &ns, &ks, &ls, &opts, |p, n| {
        let tower = hecke_tower(p, n, cfg.budget)?;
        let theta = canonical_theta(p, &tower)?;
        match classes(cfg, exec, &tower, theta, !a.no_cache) {
            Ok(list) => HeckeContext::from_classes(p, n, list),
            Err(f) => {
                failure = Some(f);
                Err(Error::InvalidArgument("class list unavailable".into()))
            }
        }
    });
    let reports = match (reports, failure) {
        (_, Some(f)) => return Err(f),
        (r, None) => r?,
    };
    let rows: Vec<ReportRow> = reports.iter().map(ReportRow::from).collect();
    let w = out();
    match cfg.format {
        Format::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, &rows).map_err(io_err)?;
            writeln!(w).map_err(io_err)?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for r in &rows {
                csv.serialize(r).map_err(io_err)?;
            }
            csv.flush().map_err(io_err)?;
        }
    }
    match rows.iter().find(|r| !r.ok) {
        Some(r) => Err(Failure::Theory(format!("Ramanujan bound violated for P = {}, n = {}, k = {}, l = {}", r.p, r.n, r.k, r.l))),
        None => Ok(()),
    }
}

fn run_verify(cfg: &Config, exec: Exec, a: VerifyArgs) -> CliResult<()> {
    let suite: Suite = a.suite.parse()?;
    let mut vc = VerifyConfig { seed: a.seed, exec, hecke_budget: cfg.budget, dlog_order: cfg.order, ..VerifyConfig::default() };
    if let Some(n) = a.instances {
        vc.instances = n;
    }
    let outcomes = verify::run(suite, &vc);
    let mut w = out();
    for o in &outcomes {
        writeln!(w, "{o}").map_err(io_err)?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    writeln!(w, "{} properties, {failed} failed", outcomes.len()).map_err(io_err)?;
    if failed > 0 {
        return Err(Failure::Verify);
    }
    Ok(())
}

fn cache_cmd(cfg: &Config, action: CacheAction) -> CliResult<()> {
    let cache = Cache::new(&cfg.cache_dir);
    let mut w = out();
    match action {
        CacheAction::List => {
            let entries = cache.list().map_err(Failure::Usage)?;
            match cfg.format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &entries).map_err(io_err)?;
                    writeln!(w).map_err(io_err)?;
                }
                Format::Csv => {
                    writeln!(w, "file,q,m,records").map_err(io_err)?;
                    for e in entries {
                        writeln!(w, "{},{},{},{}", e.file, e.q, e.m, e.records).map_err(io_err)?;
                    }
                }
            }
        }
        CacheAction::Clear => {
            let n = cache.clear().map_err(Failure::Usage)?;
            writeln!(w, "removed {n} files").map_err(io_err)?;
        }
    }
    Ok(())
}
