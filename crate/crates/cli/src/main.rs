//! `ringsolve`: solve, reduce and certify linear systems over finite rings
//! and abelian groups; inspect ring structure; matrix algebra.
//!
//! Exit codes: 0 solvable or success, 1 unsolvable or rejected, 2 usage or
//! parse error, 3 internal error or oracle mismatch.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use ringsolve::format::{self, SystemFile};
use ringsolve::oracle;
use ringsolve::reductions;
use ringsolve::solve::{self, Certificate};
use ringsolve::structure::{self, RingOrder};
use ringsolve::{
    charpoly, determinant, gl_order, inverse, mat_pow, Elem, Error, FiniteRing, LinSystem, Matrix,
};

#[derive(Parser)]
#[command(name = "ringsolve", version, about = "Linear systems over finite rings and abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output file; stdout when absent.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Print reduction and solver traces to stderr.
    #[arg(long, global = true)]
    trace: bool,
    /// Cross-check against the brute-force oracle; a mismatch exits with 3.
    #[arg(long, global = true)]
    oracle_check: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Ring structure.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
        #[command(flatten)]
        common: Common,
    },
    /// Solve a system file and print a certificate.
    Solve {
        system: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a reduction and write the target system.
    Reduce {
        #[arg(value_enum)]
        name: ReductionName,
        /// Input system files; `and`/`or` take two, `or-general` one per prime.
        /// For `collapse` each input is `a,b=path` for outer cell (a, b).
        inputs: Vec<String>,
        /// Base idempotent for `project-local`.
        #[arg(long)]
        idempotent: Option<String>,
        /// Outer system shape for `collapse`, as `rows,cols`.
        #[arg(long)]
        outer: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Matrix algebra on a matrix file.
    Mat {
        #[command(subcommand)]
        command: MatCommand,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
        #[command(flatten)]
        common: Common,
    },
    /// Check a certificate against a system; exits 0 if valid, 1 if not.
    Verify {
        system: PathBuf,
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Size, characteristic, units, idempotents, chain and Galois data.
    Info { spec: String },
    /// Idempotent base and local summands.
    Decompose { spec: String },
    /// Canonical order of a local ring with element representations.
    Order {
        spec: String,
        /// Residue generator alpha; defaults to the canonical choice.
        #[arg(long)]
        alpha: Option<String>,
        /// Generators of the maximal ideal, comma separated.
        #[arg(long)]
        pi: Option<String>,
    },
}

#[derive(Subcommand)]
enum MatCommand {
    Inverse { matrix: PathBuf },
    Det { matrix: PathBuf },
    Charpoly { matrix: PathBuf },
    Pow {
        matrix: PathBuf,
        /// Decimal exponent of any size.
        #[arg(long)]
        exp: String,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive search over all assignments.
    Solve { system: PathBuf },
    /// Cofactor-expansion determinant and characteristic polynomial.
    Det { matrix: PathBuf },
    /// Count invertible n x n matrices by enumeration.
    Gl { spec: String, n: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReductionName {
    RingToCyclic,
    GroupToRing,
    TwosidedNumerical,
    ProjectLocal,
    NormalForm,
    Complement,
    And,
    Or,
    OrGeneral,
    Collapse,
}

/// Outcome of a command: exit code plus text and JSON renderings.
struct Report {
    code: u8,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { code: 0, text, json }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Internal(_))));
            ExitCode::from(if internal { 3 } else { 2 })
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    let (common, report) = match command {
        Command::Ring { command, common } => {
            let r = match command {
                RingCommand::Info { spec } => ring_info(&spec)?,
                RingCommand::Decompose { spec } => ring_decompose(&spec)?,
                RingCommand::Order { spec, alpha, pi } => ring_order(&spec, alpha, pi)?,
            };
            (common, r)
        }
        Command::Solve { system, common } => {
            let r = cmd_solve(&system, &common)?;
            (common, r)
        }
        Command::Reduce {
            name,
            inputs,
            idempotent,
            outer,
            common,
        } => {
            let r = cmd_reduce(name, &inputs, idempotent, outer, &common)?;
            (common, r)
        }
        Command::Mat { command, common } => {
            let r = cmd_mat(command, &common)?;
            (common, r)
        }
        Command::Oracle { command, common } => {
            let r = cmd_oracle(command)?;
            (common, r)
        }
        Command::Verify {
            system,
            certificate,
            common,
        } => {
            let r = cmd_verify(&system, &certificate)?;
            (common, r)
        }
    };
    let body = match common.format {
        Format::Text => report.text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json)?),
    };
    match &common.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(report.code)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_system(path: &Path) -> anyhow::Result<SystemFile> {
    let text = read(path)?;
    format::parse_system_in(&text, path.parent()).with_context(|| format!("parsing {}", path.display()))
}

fn load_matrix(path: &Path) -> anyhow::Result<Matrix> {
    let text = read(path)?;
    format::parse_matrix_in(&text, path.parent()).with_context(|| format!("parsing {}", path.display()))
}

fn names(r: &FiniteRing, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| r.name(x).to_string()).collect()
}

fn ring_info(spec: &str) -> anyhow::Result<Report> {
    let r = format::parse_ring_spec(spec)?;
    let mut text = String::new();
    let mut obj = serde_json::Map::new();
    let mut put = |key: &str, shown: String, value: Value| {
        text.push_str(&format!("{key} {shown}\n"));
        obj.insert(key.to_string(), value);
    };
    put("ring", r.label().to_string(), json!(r.label()));
    put("size", r.size().to_string(), json!(r.size()));
    put("characteristic", r.characteristic().to_string(), json!(r.characteristic()));
    put("commutative", r.is_commutative().to_string(), json!(r.is_commutative()));
    put("units", r.units().len().to_string(), json!(r.units().len()));
    let idem = names(&r, &r.idempotents());
    put("idempotents", idem.join(" "), json!(idem));
    if r.is_commutative() {
        let local = structure::is_local(&r)?;
        put("local", local.to_string(), json!(local));
        if local {
            let ld = structure::local_data(&r)?;
            put("residue-field", ld.q.to_string(), json!(ld.q));
            match structure::chain_data(&r)? {
                Some(cd) => {
                    put("chain", "true".into(), json!(true));
                    put("pi", r.name(cd.pi).to_string(), json!(r.name(cd.pi)));
                    put("nilpotency", cd.n.to_string(), json!(cd.n));
                }
                None => put("chain", "false".into(), json!(false)),
            }
            match structure::is_galois_ring(&r)? {
                Some(g) => {
                    let shown = format!("p={} n={} r={}", g.p, g.n, g.r);
                    put("galois", shown, json!({"p": g.p, "n": g.n, "r": g.r}));
                }
                None => put("galois", "none".into(), Value::Null),
            }
        }
    }
    Ok(Report::ok(text, Value::Object(obj)))
}

fn ring_decompose(spec: &str) -> anyhow::Result<Report> {
    let r = format::parse_ring_spec(spec)?;
    let summands = structure::decompose_local(&r)?;
    let mut text = format!("ring {}\nbase {}\n", r.label(), names(&r, &summands.iter().map(|s| s.e).collect::<Vec<_>>()).join(" "));
    let mut list = Vec::new();
    for s in &summands {
        let chain = structure::chain_data(&s.ring)?.is_some();
        let galois = structure::is_galois_ring(&s.ring)?.is_some();
        text.push_str(&format!(
            "summand e={} size={} characteristic={} chain={} galois={}\n",
            r.name(s.e),
            s.ring.size(),
            s.ring.characteristic(),
            chain,
            galois
        ));
        list.push(json!({
            "e": r.name(s.e),
            "size": s.ring.size(),
            "characteristic": s.ring.characteristic(),
            "chain": chain,
            "galois": galois,
        }));
    }
    let base: Vec<&str> = summands.iter().map(|s| r.name(s.e)).collect();
    Ok(Report::ok(
        text,
        json!({"ring": r.label(), "base": base, "summands": list}),
    ))
}

fn ring_order(spec: &str, alpha: Option<String>, pi: Option<String>) -> anyhow::Result<Report> {
    let r = format::parse_ring_spec(spec)?;
    let (default_alpha, default_pis) = structure::canonical_params(&r)?;
    let alpha = match alpha {
        Some(a) => r.parse_element(&a)?,
        None => default_alpha,
    };
    let pis = match pi {
        Some(list) => list
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| r.parse_element(t))
            .collect::<Result<Vec<_>, _>>()?,
        None => default_pis,
    };
    let order: RingOrder = structure::canonical_order(&r, alpha, &pis)?;
    let mut text = format!(
        "ring {}\nalpha {}\npi {}\n",
        r.label(),
        r.name(alpha),
        names(&r, &pis).join(" ")
    );
    let mut rows = Vec::new();
    for (k, &x) in order.elements().iter().enumerate() {
        let rep = names(&r, &order.representation(x));
        text.push_str(&format!("{k} {} = ({})\n", r.name(x), rep.join(", ")));
        rows.push(json!({"rank": k, "element": r.name(x), "representation": rep}));
    }
    Ok(Report::ok(
        text,
        json!({"ring": r.label(), "alpha": r.name(alpha), "pi": names(&r, &pis), "order": rows}),
    ))
}

fn certificate_json(cols: &[String], name: &dyn Fn(Elem) -> String, cert: &Certificate) -> Value {
    match cert {
        Certificate::Solvable(x) => {
            let sol: serde_json::Map<String, Value> =
                cols.iter().zip(x).map(|(c, &v)| (c.clone(), json!(name(v)))).collect();
            json!({"certificate": "solvable", "solution": sol})
        }
        Certificate::Unsolvable(w) => json!({
            "certificate": "unsolvable",
            "component": w.component,
            "summand": w.summand,
            "ring": w.label,
            "digest": format!("{:016x}", w.digest),
            "combination": w.combination.iter().map(|e| e.0).collect::<Vec<_>>(),
        }),
    }
}

/// Oracle verdict for a system file, or `None` when the search is too large.
fn oracle_verdict(s: &SystemFile) -> anyhow::Result<Option<bool>> {
    let rep = match s {
        SystemFile::Ring(s) => oracle::brute_force_solve(s),
        SystemFile::TwoSided(ts) => oracle::brute_force_solve_twosided(ts),
        SystemFile::Group(gs) => oracle::brute_force_solve_group(gs),
    };
    match rep {
        Ok(r) => Ok(Some(r.is_solvable())),
        Err(Error::Capacity(msg)) => {
            eprintln!("oracle skipped: {msg}");
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_solve(path: &Path, common: &Common) -> anyhow::Result<Report> {
    let sys = load_system(path)?;
    let (cert, cols, name): (Certificate, Vec<String>, Box<dyn Fn(Elem) -> String>) = match &sys {
        SystemFile::Ring(s) => {
            let solver = solve::CommutativeSolver::new(s.ring())?;
            if common.trace {
                for k in 0..solver.summand_count() {
                    let red = solver.reduced_chain_system(s, k)?;
                    eprintln!(
                        "summand {k}: {} rows x {} variables over {}",
                        red.nrows(),
                        red.ncols(),
                        red.ring().label()
                    );
                }
            }
            let r = s.ring().clone();
            (solver.solve(s)?, s.col_ids().to_vec(), Box::new(move |e| r.name(e).to_string()))
        }
        SystemFile::TwoSided(ts) => {
            if common.trace {
                let (red, _) = solve::twosided_reduced(ts)?;
                eprintln!(
                    "two-sided system reduced to {} rows x {} variables over {}",
                    red.nrows(),
                    red.ncols(),
                    red.ring().label()
                );
            }
            let r = ts.ring().clone();
            (solve::solve_twosided(ts)?, ts.col_ids().to_vec(), Box::new(move |e| r.name(e).to_string()))
        }
        SystemFile::Group(gs) => {
            let g = gs.group().clone();
            if common.trace {
                let dec = ringsolve::group_decompose_cyclic(&g)?;
                eprintln!("cyclic orders {:?}", dec.orders);
            }
            (solve::solve_group(gs)?, gs.col_ids().to_vec(), Box::new(move |e| g.name(e).to_string()))
        }
    };
    if common.oracle_check {
        if let Some(v) = oracle_verdict(&sys)? {
            if v != cert.is_solvable() {
                eprintln!("oracle mismatch: oracle says solvable = {v}");
                return Ok(Report {
                    code: 3,
                    text: format::write_certificate(&cols, &*name, &cert),
                    json: certificate_json(&cols, &*name, &cert),
                });
            }
            eprintln!("oracle agrees");
        }
    }
    Ok(Report {
        code: if cert.is_solvable() { 0 } else { 1 },
        text: format::write_certificate(&cols, &*name, &cert),
        json: certificate_json(&cols, &*name, &cert),
    })
}

fn ring_system(s: SystemFile, what: &str) -> anyhow::Result<LinSystem> {
    match s {
        SystemFile::Ring(s) => Ok(s),
        _ => bail!("{what} needs a system over a commutative ring"),
    }
}

fn cmd_reduce(
    name: ReductionName,
    inputs: &[String],
    idempotent: Option<String>,
    outer: Option<String>,
    common: &Common,
) -> anyhow::Result<Report> {
    let arity_one = |inputs: &[String]| -> anyhow::Result<SystemFile> {
        match inputs {
            [one] => load_system(Path::new(one)),
            _ => bail!("expected exactly one input system"),
        }
    };
    // (target, trace, source verdict flips, sources for the oracle check)
    let (target, trace, flips, sources): (SystemFile, Vec<String>, bool, Vec<SystemFile>) = match name {
        ReductionName::RingToCyclic => {
            let s = ring_system(arity_one(inputs)?, "ring-to-cyclic")?;
            let order = if structure::is_local(s.ring())? {
                let (a, pis) = structure::canonical_params(s.ring())?;
                structure::canonical_order(s.ring(), a, &pis)?
            } else {
                RingOrder::table_order(s.ring())
            };
            let out = reductions::ring_to_cyclic(&s, &order)?;
            (SystemFile::Ring(out.target), out.trace, false, vec![SystemFile::Ring(s)])
        }
        ReductionName::GroupToRing => {
            let SystemFile::Group(gs) = arity_one(inputs)? else {
                bail!("group-to-ring needs a group system");
            };
            let out = reductions::group_to_ring(&gs)?;
            (SystemFile::Ring(out.target), out.trace, false, vec![SystemFile::Group(gs)])
        }
        ReductionName::TwosidedNumerical => {
            let ts = match arity_one(inputs)? {
                SystemFile::TwoSided(ts) => ts,
                SystemFile::Ring(s) => {
                    let mut ts = ringsolve::TwoSidedSystem::new(s.ring(), s.row_ids().to_vec(), s.col_ids().to_vec())?;
                    for (i, j, a) in s.terms() {
                        ts.set_left(i, j, a);
                    }
                    for i in 0..s.nrows() {
                        ts.set_rhs(i, s.rhs(i));
                    }
                    ts
                }
                SystemFile::Group(_) => bail!("twosided-numerical needs a ring system"),
            };
            let num = reductions::twosided_to_numerical(&ts)?;
            let zd = reductions::numerical_to_zmod(&num.target)?;
            let mut trace = num.trace;
            trace.extend(zd.trace);
            (SystemFile::Ring(zd.target), trace, false, vec![SystemFile::TwoSided(ts)])
        }
        ReductionName::ProjectLocal => {
            let s = ring_system(arity_one(inputs)?, "project-local")?;
            let e = idempotent.ok_or_else(|| anyhow!("project-local needs --idempotent"))?;
            let e = s.ring().parse_element(&e)?;
            let out = reductions::project_to_local(&s, e)?;
            (SystemFile::Ring(out.target), out.trace, false, Vec::new())
        }
        ReductionName::NormalForm => {
            let s = ring_system(arity_one(inputs)?, "normal-form")?;
            let out = reductions::normal_form(&s)?;
            (SystemFile::Ring(out.target), out.trace, false, vec![SystemFile::Ring(s)])
        }
        ReductionName::Complement => {
            let s = ring_system(arity_one(inputs)?, "complement")?;
            let out = reductions::complement_chain(&s)?;
            (SystemFile::Ring(out.target), out.trace, true, vec![SystemFile::Ring(s)])
        }
        ReductionName::And | ReductionName::Or => {
            let [a, b] = inputs else {
                bail!("and/or take exactly two systems");
            };
            let a = ring_system(load_system(Path::new(a))?, "and/or")?;
            let b = ring_system(load_system(Path::new(b))?, "and/or")?;
            let t = if name == ReductionName::And {
                reductions::and_compose(&a, &b)?
            } else {
                reductions::or_compose(&a, &b)?
            };
            (SystemFile::Ring(t), Vec::new(), false, Vec::new())
        }
        ReductionName::OrGeneral => {
            let comps = inputs
                .iter()
                .map(|p| ring_system(load_system(Path::new(p))?, "or-general"))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let t = reductions::or_compose_general(&comps)?;
            let trace = vec!["experimental construction; verdict preservation is not guaranteed".to_string()];
            (SystemFile::Ring(t), trace, false, Vec::new())
        }
        ReductionName::Collapse => {
            let shape = outer.ok_or_else(|| anyhow!("collapse needs --outer rows,cols"))?;
            let (rows, cols) = shape
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| anyhow!("--outer must be 'rows,cols'"))?;
            let mut inner = BTreeMap::new();
            for item in inputs {
                let (cell, path) = item
                    .split_once('=')
                    .ok_or_else(|| anyhow!("collapse inputs are 'a,b=path'"))?;
                let (a, b) = cell
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                    .ok_or_else(|| anyhow!("bad cell '{cell}'"))?;
                inner.insert((a, b), ring_system(load_system(Path::new(path))?, "collapse")?);
            }
            let t = reductions::collapse_nested(rows, cols, &inner)?;
            (SystemFile::Ring(t), Vec::new(), false, Vec::new())
        }
    };
    if common.trace {
        for line in &trace {
            eprintln!("{line}");
        }
    }
    let mut code = 0;
    if common.oracle_check {
        if let [source] = sources.as_slice() {
            let before = oracle_verdict(source)?;
            let after = match &target {
                SystemFile::Ring(t) if t.ring().modulus().is_some() => Some(oracle::span_solve_zmod(t)?.is_some()),
                other => oracle_verdict(other)?,
            };
            if let (Some(b), Some(a)) = (before, after) {
                if (a != b) != flips {
                    eprintln!("oracle mismatch: source solvable = {b}, target solvable = {a}");
                    code = 3;
                } else {
                    eprintln!("oracle agrees");
                }
            }
        }
    }
    let text = format::write_system_file(&target);
    let (nrows, ncols) = match &target {
        SystemFile::Ring(t) => (t.nrows(), t.ncols()),
        SystemFile::TwoSided(t) => (t.nrows(), t.ncols()),
        SystemFile::Group(t) => (t.nrows(), t.ncols()),
    };
    let json = json!({"system": text, "rows": nrows, "variables": ncols, "trace": trace});
    Ok(Report { code, text, json })
}

fn cmd_mat(command: MatCommand, common: &Common) -> anyhow::Result<Report> {
    match command {
        MatCommand::Inverse { matrix } => {
            let a = load_matrix(&matrix)?;
            let inv = inverse(&a)?;
            let mut code = if inv.is_some() { 0 } else { 1 };
            if common.oracle_check {
                match oracle::brute_force_inverse(&a) {
                    Ok(b) if b.is_some() != inv.is_some() => {
                        eprintln!("oracle mismatch: oracle finds an inverse = {}", b.is_some());
                        code = 3;
                    }
                    Ok(_) => eprintln!("oracle agrees"),
                    Err(Error::Capacity(m)) => eprintln!("oracle skipped: {m}"),
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(match inv {
                Some(b) => {
                    let text = format::write_matrix(&b);
                    Report { code, json: json!({"invertible": true, "inverse": text}), text }
                }
                None => Report {
                    code,
                    text: "singular\n".into(),
                    json: json!({"invertible": false}),
                },
            })
        }
        MatCommand::Det { matrix } => {
            let a = load_matrix(&matrix)?;
            let d = determinant(&a)?;
            let r = a.ring();
            let mut code = 0;
            if common.oracle_check {
                match oracle::det_cofactor(&a) {
                    Ok(o) if o != d => {
                        eprintln!("oracle mismatch: cofactor determinant {}", r.name(o));
                        code = 3;
                    }
                    Ok(_) => eprintln!("oracle agrees"),
                    Err(Error::Capacity(m)) => eprintln!("oracle skipped: {m}"),
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(Report {
                code,
                text: format!("{}\n", r.name(d)),
                json: json!({"determinant": r.name(d)}),
            })
        }
        MatCommand::Charpoly { matrix } => {
            let a = load_matrix(&matrix)?;
            let chi = charpoly(&a)?;
            let mut code = 0;
            if common.oracle_check {
                match oracle::charpoly_cofactor(&a) {
                    Ok(o) if o != chi => {
                        eprintln!("oracle mismatch: cofactor polynomial {o}");
                        code = 3;
                    }
                    Ok(_) => eprintln!("oracle agrees"),
                    Err(Error::Capacity(m)) => eprintln!("oracle skipped: {m}"),
                    Err(e) => return Err(e.into()),
                }
            }
            let coeffs = names(a.ring(), chi.coeffs());
            Ok(Report {
                code,
                text: format!("{chi}\n"),
                json: json!({"charpoly": chi.to_string(), "coefficients": coeffs}),
            })
        }
        MatCommand::Pow { matrix, exp } => {
            let a = load_matrix(&matrix)?;
            let e: BigUint = exp.trim().parse().map_err(|_| anyhow!("exponent must be a decimal integer"))?;
            let p = mat_pow(&a, &e)?;
            let text = format::write_matrix(&p);
            Ok(Report::ok(text.clone(), json!({"power": text})))
        }
    }
}

fn cmd_oracle(command: OracleCommand) -> anyhow::Result<Report> {
    match command {
        OracleCommand::Solve { system } => {
            let sys = load_system(&system)?;
            let (rep, cols, name): (oracle::OracleReport, Vec<String>, Box<dyn Fn(Elem) -> String>) = match &sys {
                SystemFile::Ring(s) => {
                    let r = s.ring().clone();
                    (oracle::brute_force_solve(s)?, s.col_ids().to_vec(), Box::new(move |e| r.name(e).to_string()))
                }
                SystemFile::TwoSided(ts) => {
                    let r = ts.ring().clone();
                    (oracle::brute_force_solve_twosided(ts)?, ts.col_ids().to_vec(), Box::new(move |e| r.name(e).to_string()))
                }
                SystemFile::Group(gs) => {
                    let g = gs.group().clone();
                    (oracle::brute_force_solve_group(gs)?, gs.col_ids().to_vec(), Box::new(move |e| g.name(e).to_string()))
                }
            };
            let mut text = format!(
                "verdict {}\nchecked {}\n",
                if rep.is_solvable() { "solvable" } else { "unsolvable" },
                rep.checked
            );
            let mut sol = serde_json::Map::new();
            if let Some(x) = &rep.solution {
                for (c, &v) in cols.iter().zip(x) {
                    text.push_str(&format!("{c} = {}\n", name(v)));
                    sol.insert(c.clone(), json!(name(v)));
                }
            }
            Ok(Report {
                code: if rep.is_solvable() { 0 } else { 1 },
                text,
                json: json!({
                    "verdict": if rep.is_solvable() { "solvable" } else { "unsolvable" },
                    "checked": rep.checked,
                    "solution": if rep.is_solvable() { Value::Object(sol) } else { Value::Null },
                }),
            })
        }
        OracleCommand::Det { matrix } => {
            let a = load_matrix(&matrix)?;
            let r = a.ring();
            let d = oracle::det_cofactor(&a)?;
            let chi = oracle::charpoly_cofactor(&a)?;
            Ok(Report::ok(
                format!("determinant {}\ncharpoly {chi}\n", r.name(d)),
                json!({"determinant": r.name(d), "charpoly": chi.to_string()}),
            ))
        }
        OracleCommand::Gl { spec, n } => {
            let r = format::parse_ring_spec(&spec)?;
            let count = oracle::enumerate_gl(&r, n)?;
            let formula = if r.is_commutative() { Some(gl_order(&r, n)?) } else { None };
            let mut text = format!("enumerated {count}\n");
            if let Some(f) = &formula {
                text.push_str(&format!("formula {f}\n"));
            }
            let code = match &formula {
                Some(f) if *f != count => 3,
                _ => 0,
            };
            Ok(Report {
                code,
                text,
                json: json!({
                    "enumerated": count.to_string(),
                    "formula": formula.map(|f| f.to_string()),
                }),
            })
        }
    }
}

fn cmd_verify(system: &Path, certificate: &Path) -> anyhow::Result<Report> {
    let sys = load_system(system)?;
    let text = read(certificate)?;
    let valid = match &sys {
        SystemFile::Ring(s) => {
            let cert = format::parse_certificate(&text, s.col_ids(), &|t| s.ring().parse_element(t))?;
            verify_or_reject(solve::verify_certificate(s, &cert))?
        }
        SystemFile::TwoSided(ts) => {
            let cert = format::parse_certificate(&text, ts.col_ids(), &|t| ts.ring().parse_element(t))?;
            verify_or_reject(solve::verify_twosided_certificate(ts, &cert))?
        }
        SystemFile::Group(gs) => {
            let cert = format::parse_certificate(&text, gs.col_ids(), &|t| gs.group().parse_element(t))?;
            verify_or_reject(solve::verify_group_certificate(gs, &cert))?
        }
    };
    Ok(Report {
        code: if valid { 0 } else { 1 },
        text: format!("{}\n", if valid { "valid" } else { "invalid" }),
        json: json!({"valid": valid}),
    })
}

/// A malformed certificate is a rejection, not a usage error.
fn verify_or_reject(r: ringsolve::Result<bool>) -> anyhow::Result<bool> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::InvalidCertificate(msg)) => {
            eprintln!("rejected: {msg}");
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}
