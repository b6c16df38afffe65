//! Command-line front end. `run` parses arguments, executes one subcommand and returns the
//! process exit code: 0 on success, 1 when a verification fails, 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use fsbasis::enumerator::{character, enumerate};
use fsbasis::fock::FockSpace;
use fsbasis::intertwine::{check_bullets, kill_criterion_holds, Direction};
use fsbasis::standard_module::{periodic_tail, standard_slice, verify_tail};
use fsbasis::verifier::{verify_basis, verify_initial_table, verify_relations, DEFAULT_MAX_PBW};
use fsbasis::{Error, GradationConfig, Monomial};

#[derive(Debug, Parser)]
#[command(name = "fsbasis", version, about = "Exact computations with Feigin-Stoyanovsky type subspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Row,
    Column,
}

#[derive(Debug, Args)]
struct Common {
    /// Rank l of sl(l+1).
    #[arg(long)]
    ell: usize,
    /// Index of the grading weight omega_m.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Module index: the highest weight is Lambda_i.
    #[arg(long, default_value_t = 0)]
    i: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Colors of the grading and the weights attached to rows and columns.
    Gamma(Common),
    /// Admissible monomials of degree -n, greatest first.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: u32,
    },
    /// Weight-refined graded dimensions up to a degree.
    Character {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: u32,
    },
    /// Rank check of the admissible monomials against all PBW monomials, degrees 0..=N.
    VerifyBasis {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_PBW)]
        max_pbw: usize,
    },
    /// Same-line and rectangle relations on test states.
    VerifyRelations {
        #[command(flatten)]
        common: Common,
        /// Largest total depth n of a tested coefficient.
        #[arg(long, default_value_t = 6)]
        depth_cap: u32,
        /// Largest oscillator degree of a test state.
        #[arg(long, default_value_t = 2)]
        max_osc: u32,
    },
    /// Which x_gamma(-1) annihilate the highest weight vectors.
    VerifyInitial(Common),
    /// The weight mu and the checks on w(mu) for one admissible monomial.
    Intertwiner {
        #[command(flatten)]
        common: Common,
        /// Monomial text such as "(1,1,-2)*(1,2,-1)"; "1" is the empty monomial.
        #[arg(long)]
        monomial: String,
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
    },
    /// The periodic tail of W(Lambda_i) and its checks.
    Tail {
        #[command(flatten)]
        common: Common,
        /// Degree bound of the exhaustive periodicity check (at least f).
        #[arg(long)]
        depth_cap: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_MAX_PBW)]
        max_pbw: usize,
    },
    /// Translated basis vectors grouped by component of the full module.
    StandardSlice {
        #[command(flatten)]
        common: Common,
        /// Power n of the translation e(omega)^{(l+1) n}.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        translation: i64,
        #[arg(long, default_value_t = 4)]
        depth_cap: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_PBW)]
        max_pbw: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Gamma(c) | Command::VerifyInitial(c) => c,
            Command::Enumerate { common, .. }
            | Command::Character { common, .. }
            | Command::VerifyBasis { common, .. }
            | Command::VerifyRelations { common, .. }
            | Command::Intertwiner { common, .. }
            | Command::Tail { common, .. }
            | Command::StandardSlice { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Gamma(_) => "gamma",
            Command::Enumerate { .. } => "enumerate",
            Command::Character { .. } => "character",
            Command::VerifyBasis { .. } => "verify-basis",
            Command::VerifyRelations { .. } => "verify-relations",
            Command::VerifyInitial(_) => "verify-initial",
            Command::Intertwiner { .. } => "intertwiner",
            Command::Tail { .. } => "tail",
            Command::StandardSlice { .. } => "standard-slice",
        }
    }
}

/// What a subcommand produced, in every output format.
struct Output {
    results: Value,
    ok: bool,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn count(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

fn gamma(cfg: &GradationConfig) -> Output {
    let colors: Vec<Value> = cfg
        .colors()
        .into_iter()
        .map(|c| json!({"row": c.row, "col": c.col, "weight": cfg.color_weight(c)}))
        .collect();
    let rows: Vec<Value> = (1..=cfg.m()).map(|r| json!({"row": r, "weight": cfg.lambda(r)})).collect();
    let cols: Vec<Value> = (cfg.m()..=cfg.ell()).map(|s| json!({"col": s, "weight": cfg.lambda_prime(s)})).collect();
    let mut text = String::new();
    let mut table = Vec::new();
    for c in cfg.colors() {
        let w = cfg.color_weight(c);
        writeln!(text, "{c} {w}").unwrap();
        table.push(vec![c.row.to_string(), c.col.to_string(), w.to_string()]);
    }
    writeln!(text, "omega {}", cfg.omega()).unwrap();
    Output {
        results: json!({"colors": colors, "rows": rows, "cols": cols, "omega": cfg.omega()}),
        ok: true,
        header: vec!["row", "col", "weight"],
        rows: table,
        text,
    }
}

fn enumerate_cmd(cfg: &GradationConfig, i: usize, degree: u32) -> Output {
    let mons: Vec<Monomial> = enumerate(cfg, i, degree).collect();
    let text: String = mons.iter().map(|m| format!("{m}\n")).collect();
    Output {
        results: json!({
            "degree": degree,
            "count": count(mons.len()),
            "monomials": mons,
            "text": mons.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        }),
        ok: true,
        header: vec!["index", "monomial"],
        rows: mons.iter().enumerate().map(|(k, m)| vec![k.to_string(), m.to_string()]).collect(),
        text,
    }
}

fn character_cmd(cfg: &GradationConfig, i: usize, max_degree: u32) -> Output {
    let ch = character(cfg, i, max_degree);
    let dims = ch.dimensions(max_degree);
    let weights: Vec<Value> = ch
        .entries
        .iter()
        .map(|((n, w), c)| json!({"depth": n, "weight": w, "count": count(c)}))
        .collect();
    let mut text = String::new();
    for (n, d) in dims.iter().enumerate() {
        writeln!(text, "{n} {d}").unwrap();
    }
    Output {
        results: json!({"dimensions": dims.iter().map(count).collect::<Vec<_>>(), "weights": weights}),
        ok: true,
        header: vec!["depth", "weight", "count"],
        rows: ch.entries.iter().map(|((n, w), c)| vec![n.to_string(), w.to_string(), c.to_string()]).collect(),
        text,
    }
}

fn verify_basis_cmd(space: &mut FockSpace, i: usize, max_degree: u32, max_pbw: usize) -> Result<Output, Error> {
    let mut reports = Vec::new();
    for n in 0..=max_degree {
        reports.push(verify_basis(space, i, n, max_pbw)?);
    }
    let ok = reports.iter().all(|r| r.ok);
    let results: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "candidate_count": count(r.candidate_count),
                "candidate_rank": count(r.candidate_rank),
                "pbw_count": count(r.pbw_count),
                "pbw_rank": count(r.pbw_rank),
                "ok": r.ok,
            })
        })
        .collect();
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![r.n.to_string(), r.candidate_count.to_string(), r.candidate_rank.to_string(), r.pbw_rank.to_string(), r.ok.to_string()]
        })
        .collect();
    let text = rows.iter().map(|r| format!("n={} count={} rank={} pbw_rank={} ok={}\n", r[0], r[1], r[2], r[3], r[4])).collect();
    Ok(Output {
        results: Value::Array(results),
        ok,
        header: vec!["n", "candidate_count", "candidate_rank", "pbw_rank", "ok"],
        rows,
        text,
    })
}

fn verify_relations_cmd(space: &mut FockSpace, depth_cap: u32, max_osc: u32) -> Result<Output, Error> {
    if depth_cap < 2 {
        return Err(Error::Usage("relation depth cap must be at least 2".into()));
    }
    let r = verify_relations(space, depth_cap, max_osc);
    let rows: Vec<Vec<String>> = r
        .constants
        .iter()
        .map(|c| vec![serde_json::to_string(&c.relation).unwrap(), c.constant.clone().unwrap_or_default()])
        .collect();
    let text = format!(
        "{} checks on {} states, {} failures\n{}",
        r.checks,
        r.states,
        r.failures.len(),
        rows.iter().map(|c| format!("C {} = {}\n", c[0], c[1])).collect::<String>()
    );
    Ok(Output {
        results: json!({
            "max_n": r.max_n,
            "max_osc": r.max_osc,
            "states": count(r.states),
            "checks": count(r.checks),
            "constants": r.constants,
            "failures": r.failures,
        }),
        ok: r.ok,
        header: vec!["relation", "constant"],
        rows,
        text,
    })
}

fn verify_initial_cmd(space: &mut FockSpace) -> Output {
    let r = verify_initial_table(space);
    let rows: Vec<Vec<String>> = r
        .entries
        .iter()
        .map(|e| vec![e.i.to_string(), e.color.row.to_string(), e.color.col.to_string(), e.is_zero.to_string(), e.ok.to_string()])
        .collect();
    let text = r
        .entries
        .iter()
        .map(|e| format!("i={} {} {}\n", e.i, e.color, if e.is_zero { "0" } else { "nonzero" }))
        .collect();
    Output { results: to_value(&r.entries), ok: r.ok, header: vec!["i", "row", "col", "zero", "ok"], rows, text }
}

fn intertwiner_cmd(space: &mut FockSpace, i: usize, monomial: &str, direction: Option<DirectionArg>) -> Result<Output, Error> {
    let mon: Monomial = monomial.parse()?;
    let dir = direction.map(|d| match d {
        DirectionArg::Row => Direction::Row,
        DirectionArg::Column => Direction::Column,
    });
    let r = check_bullets(space, &mon, i, dir)?;
    let kill = kill_criterion_holds(space, &r.spec);
    let ok = r.ok() && kill;
    let s = &r.spec;
    let text = format!(
        "mu = {} ({:?})\ntarget i' = {}, landing module {}\nexponent {}\nimage proportional: {}\nraised tail admissible: {}\nmaximal: {}\nkill criterion: {}\n",
        s.mu, s.direction, s.target_i, s.landing_i, s.exponent, r.image_proportional, r.raised_tail_admissible, r.maximal, kill
    );
    let mut results = to_value(&r);
    results["text"] = Value::String(mon.to_string());
    results["kill_criterion"] = Value::Bool(kill);
    Ok(Output {
        results,
        ok,
        header: vec!["mu", "target_i", "landing_i", "image_proportional", "raised_tail_admissible", "maximal", "kill_criterion"],
        rows: vec![vec![
            s.mu.to_string(),
            s.target_i.to_string(),
            s.landing_i.to_string(),
            r.image_proportional.to_string(),
            r.raised_tail_admissible.to_string(),
            r.maximal.to_string(),
            kill.to_string(),
        ]],
        text,
    })
}

fn tail_cmd(space: &mut FockSpace, i: usize, depth_cap: Option<u32>, max_pbw: usize) -> Result<Output, Error> {
    let cfg = *space.config();
    let t = periodic_tail(&cfg, i)?;
    let cap = depth_cap.unwrap_or(5.max(t.f));
    let r = verify_tail(space, i, cap, max_pbw)?;
    let text = format!(
        "{}\nf = {}\nr = {}\nf divides l+1: {}\nproportional to e(omega)^f v_i: {}\nperiodicity failures up to degree {}: {}\n",
        t.tail, t.f, t.r, r.f_divides, r.proportional, cap, r.periodicity_failures.len()
    );
    Ok(Output {
        results: json!({
            "tail": t.tail,
            "text": t.tail.to_string(),
            "f": t.f,
            "r": t.r,
            "f_divides": r.f_divides,
            "proportional": r.proportional,
            "depth_cap": cap,
            "monomials_checked": count(r.monomials_checked),
            "periodicity_failures": r.periodicity_failures,
        }),
        ok: r.ok,
        header: vec!["tail", "f", "r", "f_divides", "proportional", "periodic"],
        rows: vec![vec![
            t.tail.to_string(),
            t.f.to_string(),
            t.r.to_string(),
            r.f_divides.to_string(),
            r.proportional.to_string(),
            r.periodicity_failures.is_empty().to_string(),
        ]],
        text,
    })
}

fn slice_cmd(space: &mut FockSpace, i: usize, translation: i64, depth: u32, cap: usize) -> Result<Output, Error> {
    let r = standard_slice(space, i, translation, depth, cap)?;
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "lattice": c.lattice,
                "oscillator_degree": c.oscillator_degree,
                "count": count(c.count),
                "rank": count(c.rank),
                "full_dim": count(&c.full_dim),
                "independent": c.independent,
                "spanning": c.spanning,
            })
        })
        .collect();
    let rows: Vec<Vec<String>> = r
        .components
        .iter()
        .map(|c| {
            vec![
                c.lattice.to_string(),
                c.oscillator_degree.to_string(),
                c.count.to_string(),
                c.rank.to_string(),
                c.full_dim.to_string(),
                c.independent.to_string(),
                c.spanning.to_string(),
            ]
        })
        .collect();
    let text = rows
        .iter()
        .map(|c| format!("{} osc {}: {} vectors, rank {}, dim {}\n", c[0], c[1], c[2], c[3], c[4]))
        .collect();
    Ok(Output {
        results: json!({
            "translation": r.translation,
            "depth": r.depth,
            "truncated": r.truncated,
            "independent": r.independent,
            "spanning": r.spanning,
            "components": components,
        }),
        ok: r.independent && !r.truncated,
        header: vec!["lattice", "oscillator_degree", "count", "rank", "full_dim", "independent", "spanning"],
        rows,
        text,
    })
}

fn execute(cmd: &Command) -> Result<Output, Error> {
    let common = cmd.common();
    let cfg = GradationConfig::new(common.ell, common.m)?;
    cfg.check_module_index(common.i)?;
    let i = common.i;
    let space = || FockSpace::new(cfg);
    match cmd {
        Command::Gamma(_) => Ok(gamma(&cfg)),
        Command::Enumerate { degree, .. } => Ok(enumerate_cmd(&cfg, i, *degree)),
        Command::Character { max_degree, .. } => Ok(character_cmd(&cfg, i, *max_degree)),
        Command::VerifyBasis { max_degree, max_pbw, .. } => verify_basis_cmd(&mut space()?, i, *max_degree, *max_pbw),
        Command::VerifyRelations { depth_cap, max_osc, .. } => verify_relations_cmd(&mut space()?, *depth_cap, *max_osc),
        Command::VerifyInitial(_) => Ok(verify_initial_cmd(&mut space()?)),
        Command::Intertwiner { monomial, direction, .. } => intertwiner_cmd(&mut space()?, i, monomial, *direction),
        Command::Tail { depth_cap, max_pbw, .. } => tail_cmd(&mut space()?, i, *depth_cap, *max_pbw),
        Command::StandardSlice { translation, depth_cap, max_pbw, .. } => {
            slice_cmd(&mut space()?, i, *translation, *depth_cap, *max_pbw)
        }
    }
}

fn render(cmd: &Command, out: &Output) -> Result<Vec<u8>, Error> {
    let common = cmd.common();
    match common.format {
        Format::Json => {
            let doc = json!({
                "config": {"ell": common.ell, "m": common.m, "i": common.i},
                "subcommand": cmd.name(),
                "results": out.results,
                "ok": out.ok,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Resource(format!("csv output: {e}"));
            w.write_record(&out.header).map_err(io)?;
            for row in &out.rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| Error::Resource(format!("csv output: {e}")))
        }
        Format::Text => Ok(out.text.clone().into_bytes()),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Construction(_) => 1,
        _ => 2,
    }
}

/// Runs the command line `argv` (program name first), writing the report to `stdout`
/// or to `--out`, and diagnostics to `stderr`.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(msg.as_bytes()) } else { stderr.write_all(msg.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|out| Ok((render(&cli.command, &out)?, out.ok)));
    match result {
        Ok((bytes, ok)) => {
            let written = match &cli.command.common().out {
                Some(path) => std::fs::write(path, &bytes),
                None => stdout.write_all(&bytes),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "cannot write report: {e}");
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            exit_code(&e)
        }
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
