//! The `toda` command line: degree table, folding reports, solves,
//! certificate replay and benchmarks.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::axb::{build_axb, to_h_basis, AxB};
use crate::cert::Certificate;
use crate::envelope::{commutator, laplacian, multiply, Element, Poly};
use crate::folding::{fold_report, FoldCase};
use crate::invariants::generator_set;
use crate::rootsys::{
    build_root_system, degree_table, degree_table_check, recompute_row, table_entry, table_representatives,
    BetaKind, RootSystem, TypeTag,
};
use crate::sample;
use crate::toda::{solve_certificate, solve_conserved, verify_family, AnsatzSpace, SolveOptions, TodaError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "toda", version, about = "Exact conserved quantities of the periodic quantum Toda lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the degree table with recomputed columns.
    Table {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a folding pipeline (e7-f4 or e6-g2) and emit its report.
    Fold {
        #[arg(long = "type", default_value = "e7-f4")]
        case: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for the conserved quantity of one fundamental degree.
    Solve {
        #[arg(long = "type")]
        type_tag: String,
        #[arg(long, default_value = "long")]
        beta: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, env = "TODA_CAP", default_value_t = crate::toda::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a whole family and check it commutes, or replay a certificate.
    Verify {
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long = "type")]
        type_tag: Option<String>,
        #[arg(long, default_value = "long")]
        beta: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, env = "TODA_CAP", default_value_t = crate::toda::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time products and commutators on seeded random elements; CSV output.
    Bench {
        #[arg(long = "type", default_value = "A2")]
        type_tag: String,
        #[arg(long, default_value = "long")]
        beta: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub type_tag: Option<TypeTag>,
    pub beta_kind: BetaKind,
    pub max_degree: Option<usize>,
    pub ansatz_cap: usize,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    fn system(&self) -> Result<(RootSystem, AxB), String> {
        let tag = self.type_tag.ok_or("--type is required")?;
        let s = build_root_system(tag).map_err(|e| e.to_string())?;
        let choice = s
            .dominant(self.beta_kind)
            .map_err(|e| format!("{tag} has no {} dominant root: {e}", self.beta_kind))?;
        let b = build_axb(&s, &choice);
        Ok((s, b))
    }
}

fn parse_pair(type_tag: &str, beta: &str) -> Result<(TypeTag, BetaKind), String> {
    let tag: TypeTag = type_tag.parse().map_err(|e: crate::rootsys::RootError| e.to_string())?;
    let kind: BetaKind = beta.parse()?;
    Ok((tag, kind))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_cert(out: &Option<PathBuf>, cert: &Certificate) -> i32 {
    if let Err(e) = emit(out, &cert.to_json()) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    verdict(cert)
}

/// Exit code from certificate contents alone.
pub fn verdict(cert: &Certificate) -> i32 {
    match cert.first_failure() {
        None => EXIT_OK,
        Some(f) => {
            eprintln!("verification failed: {f}");
            EXIT_VERIFY
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    let mut cfg = RunConfig {
        command: "",
        type_tag: None,
        beta_kind: BetaKind::Long,
        max_degree: None,
        ansatz_cap: crate::toda::DEFAULT_CAP,
        out: None,
        seed: 0,
    };
    match cmd {
        Command::Table { out } => {
            cfg.command = "table";
            cfg.out = out;
            cmd_table(&cfg)
        }
        Command::Fold { case, out } => {
            let case: FoldCase = case.parse()?;
            cfg.command = "fold";
            cfg.out = out;
            cmd_fold(&cfg, case)
        }
        Command::Solve {
            type_tag,
            beta,
            degree,
            cap,
            out,
        } => {
            let (tag, kind) = parse_pair(&type_tag, &beta)?;
            cfg = RunConfig {
                command: "solve",
                type_tag: Some(tag),
                beta_kind: kind,
                max_degree: Some(degree),
                ansatz_cap: cap,
                out,
                seed: 0,
            };
            cmd_solve(&cfg)
        }
        Command::Verify {
            replay: Some(path),
            out,
            ..
        } => {
            cfg.command = "verify";
            cfg.out = out;
            cmd_replay(&cfg, &path)
        }
        Command::Verify {
            replay: None,
            type_tag,
            beta,
            degree,
            cap,
            out,
        } => {
            let type_tag = type_tag.ok_or("verify needs --replay or --type")?;
            let (tag, kind) = parse_pair(&type_tag, &beta)?;
            cfg = RunConfig {
                command: "verify",
                type_tag: Some(tag),
                beta_kind: kind,
                max_degree: degree,
                ansatz_cap: cap,
                out,
                seed: 0,
            };
            cmd_verify(&cfg)
        }
        Command::Bench {
            type_tag,
            beta,
            degree,
            seed,
            out,
        } => {
            let (tag, kind) = parse_pair(&type_tag, &beta)?;
            cfg = RunConfig {
                command: "bench",
                type_tag: Some(tag),
                beta_kind: kind,
                max_degree: Some(degree),
                ansatz_cap: crate::toda::DEFAULT_CAP,
                out,
                seed,
            };
            cmd_bench(&cfg)
        }
    }
}

/// TSV of the degree table. Each row is recomputed at a representative type.
pub fn table_tsv() -> Result<(String, bool), String> {
    let mut all_ok = true;
    let mut lines = vec!["family\tdegrees\tsum_m_long\tsum_m_short\tcheck_type\trecomputed\tmatch".to_string()];
    for (row, tag) in degree_table().iter().zip(table_representatives()) {
        let (mut want_deg, want_long, want_short) = table_entry(tag);
        want_deg.sort_unstable();
        let (deg, long, short) = recompute_row(tag).map_err(|e| e.to_string())?;
        let ok = deg == want_deg && long == want_long && short == want_short;
        all_ok &= ok;
        let degs = deg.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        lines.push(format!(
            "{}\t{}\t{}\t{}\t{tag}\t{degs}; {long}; {short}\t{}",
            row.family,
            row.degrees,
            row.sum_marks_long,
            row.sum_marks_short,
            if ok { "✓" } else { "✗" }
        ));
    }
    Ok((lines.join("\n"), all_ok))
}

pub fn cmd_table(cfg: &RunConfig) -> Result<i32, String> {
    let (tsv, ok) = table_tsv()?;
    emit(&cfg.out, &tsv)?;
    let full = degree_table_check().map(|c| c.passed()).unwrap_or(false);
    if ok && full {
        Ok(EXIT_OK)
    } else {
        eprintln!("degree table mismatch");
        Ok(EXIT_VERIFY)
    }
}

pub fn cmd_fold(cfg: &RunConfig, case: FoldCase) -> Result<i32, String> {
    let cert = fold_report(case).map_err(|e| e.to_string())?;
    Ok(emit_cert(&cfg.out, &cert))
}

fn solve_one(cfg: &RunConfig, b: &AxB, u: &Poly, name: &str) -> Result<Result<Certificate, i32>, String> {
    let opts = SolveOptions {
        cap: cfg.ansatz_cap,
        ..SolveOptions::default()
    };
    match solve_conserved(b, u, opts) {
        Ok(s) => Ok(Ok(solve_certificate(b, u, name, &s))),
        Err(e @ TodaError::DegreeTooLarge { .. }) => {
            eprintln!("{e}");
            Ok(Err(EXIT_TOO_LARGE))
        }
        Err(e) => {
            eprintln!("solve failed: {e}");
            Ok(Err(EXIT_VERIFY))
        }
    }
}

fn tag_inputs(cert: &mut Certificate, cfg: &RunConfig) {
    if let Some(t) = cfg.type_tag {
        cert.input("type", t);
    }
    cert.input("beta", cfg.beta_kind);
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<i32, String> {
    let (s, b) = cfg.system()?;
    let d = cfg.max_degree.ok_or("--degree is required")?;
    let set = generator_set(&s);
    let Some(k) = set.gens.iter().position(|g| g.degree() == d) else {
        return Err(format!("{d} is not a fundamental degree of {} ({:?})", s.tag, set.degrees()));
    };
    // Refuse before expanding a large generator.
    let n = AnsatzSpace::count(b.dim_u(), b.dim_a(), d);
    if n > cfg.ansatz_cap as u128 {
        eprintln!("{}", TodaError::DegreeTooLarge { ansatz: n, cap: cfg.ansatz_cap });
        return Ok(EXIT_TOO_LARGE);
    }
    let u = to_h_basis(&b, &set.gens[k].to_poly());
    let name = format!("Omega_{}", k + 1);
    match solve_one(cfg, &b, &u, &name)? {
        Ok(mut cert) => {
            tag_inputs(&mut cert, cfg);
            Ok(emit_cert(&cfg.out, &cert))
        }
        Err(code) => Ok(code),
    }
}

/// Solves every generator up to the degree limit and checks the family commutes.
pub fn cmd_verify(cfg: &RunConfig) -> Result<i32, String> {
    let (s, b) = cfg.system()?;
    let set = generator_set(&s);
    let limit = cfg.max_degree.unwrap_or(usize::MAX);
    let mut family = Vec::new();
    for (k, g) in set.gens.iter().enumerate().filter(|(_, g)| g.degree() <= limit) {
        let n = AnsatzSpace::count(b.dim_u(), b.dim_a(), g.degree());
        if n > cfg.ansatz_cap as u128 {
            eprintln!("{}", TodaError::DegreeTooLarge { ansatz: n, cap: cfg.ansatz_cap });
            return Ok(EXIT_TOO_LARGE);
        }
        let u = to_h_basis(&b, &g.to_poly());
        let name = format!("Omega_{}", k + 1);
        match solve_one(cfg, &b, &u, &name)? {
            Ok(c) if c.passed() => {
                let w = &c.witnesses[0];
                family.push((name, Element::from_witness(w, &b).map_err(|e| e.to_string())?));
            }
            Ok(c) => return Ok(emit_cert(&cfg.out, &c)),
            Err(code) => return Ok(code),
        }
    }
    let mut cert = verify_family(&b, &family);
    tag_inputs(&mut cert, cfg);
    Ok(emit_cert(&cfg.out, &cert))
}

fn lookup(name: &str, witnesses: &[(String, Element)], omega: &Element) -> Option<Element> {
    if name == "Omega" {
        return Some(omega.clone());
    }
    witnesses.iter().find(|(n, _)| n == name).map(|(_, e)| e.clone())
}

/// Recomputes a certificate from its inputs and stored witnesses.
pub fn replay(cert: &Certificate) -> Result<Certificate, String> {
    let mut out = Certificate::new(format!("replay of: {}", cert.claim));
    if let Some(case) = cert.inputs.get("folding") {
        let case: FoldCase = case.parse()?;
        let fresh = fold_report(case).map_err(|e| e.to_string())?;
        out.input("folding", case);
        out.check("report reproduces", fresh == *cert, "recomputed report equals the stored one");
        return Ok(out);
    }
    let (tag, kind) = match (cert.inputs.get("type"), cert.inputs.get("beta")) {
        (Some(t), Some(k)) => parse_pair(t, k)?,
        _ => return Err("certificate has no type/beta inputs to rebuild its algebra".into()),
    };
    let s = build_root_system(tag).map_err(|e| e.to_string())?;
    let b = build_axb(&s, &s.dominant(kind).map_err(|e| e.to_string())?);
    out.input("type", tag);
    out.input("beta", kind);
    let omega = laplacian(&b);
    let mut witnesses = Vec::new();
    for w in &cert.witnesses {
        let e = Element::from_witness(w, &b).map_err(|e| e.to_string())?;
        out.check(format!("{} even", w.name), e.is_even(), "");
        witnesses.push((w.name.clone(), e));
    }
    if cert.residuals.is_empty() {
        return Err("certificate has no residuals to replay".into());
    }
    for r in &cert.residuals {
        let inner = r
            .name
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| format!("residual name {} is not a commutator", r.name))?;
        let (a, c) = inner.split_once(',').ok_or_else(|| format!("residual name {}", r.name))?;
        let (Some(x), Some(y)) = (lookup(a, &witnesses, &omega), lookup(c, &witnesses, &omega)) else {
            return Err(format!("residual {} refers to an unknown witness", r.name));
        };
        let fresh = commutator(&b, &x, &y);
        let stored = Element::from_witness(r, &b).map_err(|e| e.to_string())?;
        out.check(format!("{} matches stored", r.name), fresh == stored, "");
        out.residuals.push(fresh.to_witness(r.name.clone(), &b));
    }
    Ok(out)
}

pub fn cmd_replay(cfg: &RunConfig, path: &PathBuf) -> Result<i32, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cert = Certificate::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let out = replay(&cert)?;
    Ok(emit_cert(&cfg.out, &out))
}

/// CSV rows: op, type, rank, degree, terms, seconds.
pub fn bench_rows(cfg: &RunConfig) -> Result<Vec<String>, String> {
    let (s, b) = cfg.system()?;
    let top = cfg.max_degree.unwrap_or(4);
    let mut rng = sample::rng(cfg.seed);
    let omega = laplacian(&b);
    let mut rows = vec!["op,type,rank,degree,terms,seconds".to_string()];
    for d in (2..=top).step_by(2) {
        let p = sample::element(&b, &mut rng, d, 8, true);
        let t = Instant::now();
        let prod = multiply(&b, &p, &omega);
        let dt = t.elapsed().as_secs_f64();
        rows.push(format!("multiply,{},{},{d},{},{dt:.6}", s.tag, s.rank(), prod.len()));
        let t = Instant::now();
        let c = commutator(&b, &p, &omega);
        let dt = t.elapsed().as_secs_f64();
        rows.push(format!("commutator,{},{},{d},{},{dt:.6}", s.tag, s.rank(), c.len()));
        let n = AnsatzSpace::count(b.dim_u(), b.dim_a(), d);
        rows.push(format!("ansatz,{},{},{d},{n},0", s.tag, s.rank()));
    }
    Ok(rows)
}

pub fn cmd_bench(cfg: &RunConfig) -> Result<i32, String> {
    let rows = bench_rows(cfg)?;
    emit(&cfg.out, &rows.join("\n"))?;
    Ok(EXIT_OK)
}
