//! The `pdlab` command line.
//!
//! Exit codes: 0 success, 1 identity failure or internal error, 2 usage or
//! argument error, 3 resource cap exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diagram::{PipeDream, SuperPipeDream};
use crate::enumerate::{self, Limits};
use crate::error::{Error, Result};
use crate::flow;
use crate::perm::Permutation;
use crate::poly::{self, MultiPoly};
use crate::rectify::{self, Rectification};
use crate::suite::{self, Identity, Report, RunConfig};
use crate::tableau::{a_dagger, ins, parse_matrix, rsk_prime, RevTableau};

#[derive(Parser, Debug)]
#[command(name = "pdlab", version, about = "Pipe dreams, flow operators, rectification and the identities they prove")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest n for exhaustive enumeration over S_n.
    #[arg(long, global = true, env = "PDLAB_CAP_N")]
    cap_n: Option<usize>,
    /// Largest number of entries for binary matrix enumeration.
    #[arg(long, global = true)]
    cap_matrix: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "PDLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

impl Global {
    fn limits(&self) -> Limits {
        let mut limits = self.cap_n.map(Limits::with_max_n).unwrap_or_default();
        if let Some(c) = self.cap_matrix {
            limits.max_matrix_cells = c;
        }
        limits
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate pipe dreams or super pipe dreams of a permutation.
    Enum {
        /// One-line notation, e.g. `1432`.
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t = Family::PdPlus)]
        family: Family,
        /// Number of rows for stable pipe dreams.
        #[arg(long)]
        row_bound: Option<i64>,
        /// Print only the number of diagrams.
        #[arg(long)]
        count_only: bool,
    },
    /// Compute a Schubert-type polynomial.
    Poly {
        /// One-line notation, e.g. `1432`.
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t = Kind::S)]
        kind: Kind,
        /// Number of variables kept for stable polynomials.
        #[arg(long)]
        trunc: Option<i64>,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Apply a flow operator.
    Flow {
        #[arg(long, value_enum)]
        op: FlowOp,
        /// Single column for `y+`/`y-`, required for `yprime`.
        #[arg(long, allow_hyphen_values = true)]
        col: Option<i64>,
        /// Single row for `x+`/`x-`.
        #[arg(long, allow_hyphen_values = true)]
        row: Option<i64>,
        /// Print every intermediate diagram.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Rectify a super pipe dream.
    Rect {
        #[command(flatten)]
        input: DiagramInput,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Co-rectify a super pipe dream.
    Corect {
        #[command(flatten)]
        input: DiagramInput,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// m-insert a set of rows into a pipe dream.
    Insert {
        #[command(flatten)]
        input: DiagramInput,
        /// Rows `1..=m` available for insertion.
        #[arg(long)]
        m: u32,
        /// Comma-separated rows to insert.
        #[arg(long = "I", value_delimiter = ',')]
        rows_i: Vec<u32>,
        /// Defaults to I.
        #[arg(long = "J", value_delimiter = ',')]
        rows_j: Option<Vec<u32>>,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Dual RSK of a binary matrix.
    Rsk {
        /// A file, `-`, or inline rows such as `110;011`.
        #[arg(long)]
        matrix: String,
        /// Column insertion only.
        #[arg(long, conflicts_with_all = ["pipedream", "both"])]
        classical: bool,
        /// Rectification only. Without a flag both are printed.
        #[arg(long, conflicts_with = "both")]
        pipedream: bool,
        /// Both (the default).
        #[arg(long)]
        both: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Count matrices with overline(rec(A)) != ins(A†).
    ConjectureScan {
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Run identity checks.
    Verify {
        /// An identity name or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        /// Permutations range over S_max_n.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Random diagrams for the symmetry check.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Convert a diagram between formats.
    Render {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct DiagramInput {
    /// A file, `-` for stdin, or inline JSON or text.
    #[arg(long)]
    diagram: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    #[value(name = "pd+")]
    PdPlus,
    #[value(name = "pd0+")]
    Pd0Plus,
    #[value(name = "spd+")]
    SpdPlus,
    #[value(name = "spd0+")]
    Spd0Plus,
    Stable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    #[value(name = "S")]
    S,
    #[value(name = "G")]
    G,
    #[value(name = "Sxy")]
    Sxy,
    #[value(name = "Gxy")]
    Gxy,
    #[value(name = "F")]
    F,
    #[value(name = "Gstable")]
    Gstable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlowOp {
    #[value(name = "y+")]
    YPlus,
    #[value(name = "y-")]
    YMinus,
    #[value(name = "x+")]
    XPlus,
    #[value(name = "x-")]
    XMinus,
    #[value(name = "yprime")]
    YPrime,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Wiring,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Argument(_) | Error::Precondition(_) => 2,
                Error::Resource { .. } => 3,
                Error::Internal(_) => 1,
            }
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::argument(format!("i/o: {e}"))
}

/// Reads `-` from stdin, an existing path from disk, anything else verbatim.
fn read_source(source: &str) -> Result<String> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_error)?;
        return Ok(s);
    }
    if Path::new(source).is_file() {
        return std::fs::read_to_string(source).map_err(io_error);
    }
    Ok(source.to_string())
}

fn read_diagram(input: &DiagramInput) -> Result<SuperPipeDream> {
    let text = read_source(&input.diagram)?;
    if text.trim_start().starts_with('{') {
        SuperPipeDream::from_json(&text)
    } else {
        SuperPipeDream::parse_text(&text)
    }
}

fn perm(s: &str) -> Result<Permutation> {
    s.parse()
}

fn cells(p: &PipeDream) -> serde_json::Value {
    json!(p.cells().map(|(i, j)| [i, j]).collect::<Vec<_>>())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(io_error)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = cli.global.limits();
    match &cli.command {
        Command::Enum { perm: w, family, row_bound, count_only } => {
            let w = perm(w)?;
            let diagrams: Box<dyn Iterator<Item = SuperPipeDream>> = match family {
                Family::PdPlus => Box::new(enumerate::pd_plus(&w, false, &limits)?.map(Into::into)),
                Family::Pd0Plus => Box::new(enumerate::pd_plus(&w, true, &limits)?.map(Into::into)),
                Family::SpdPlus => Box::new(enumerate::spd_plus(&w, false, &limits)?),
                Family::Spd0Plus => Box::new(enumerate::spd_plus(&w, true, &limits)?),
                Family::Stable => {
                    let rows = row_bound.ok_or_else(|| Error::argument("--family stable needs --row-bound"))?;
                    Box::new(enumerate::stable(&w, rows, false, &limits)?.map(Into::into))
                }
            };
            if *count_only {
                emit(out, &format!("{}\n", diagrams.count()))?;
            } else {
                for d in diagrams {
                    emit(out, &format!("{}\n", d.to_json()))?;
                }
            }
        }
        Command::Poly { perm: w, kind, trunc, json } => {
            let w = perm(w)?;
            let rows = trunc.unwrap_or(w.size().max(1) as i64);
            let p = match kind {
                Kind::S => poly::schubert(&w, &limits)?,
                Kind::G => poly::grothendieck(&w, &limits)?,
                Kind::Sxy => poly::double_schubert(&w, &limits)?,
                Kind::Gxy => poly::double_grothendieck(&w, &limits)?,
                Kind::F => poly::stable_truncation(&w, rows, true, &limits)?,
                Kind::Gstable => poly::stable_truncation(&w, rows, false, &limits)?,
            };
            emit(out, &render_poly(&p, *json))?;
        }
        Command::Flow { op, col, row, trace, input } => {
            let w = read_diagram(input)?;
            let steps = flow_steps(&w, *op, *col, *row)?;
            let shown = if *trace { &steps[..] } else { &steps[steps.len() - 1..] };
            for d in shown {
                emit(out, &format!("{}\n", d.to_json()))?;
            }
        }
        Command::Rect { input, json } => {
            let r = rectify::rect(&read_diagram(input)?)?;
            emit(out, &render_rectification(&r, *json, false))?;
        }
        Command::Corect { input, json } => {
            let r = rectify::corect(&read_diagram(input)?)?;
            emit(out, &render_rectification(&r, *json, true))?;
        }
        Command::Insert { input, m, rows_i, rows_j, json } => {
            let p = read_diagram(input)?;
            if !p.red.is_empty() {
                return Err(Error::argument("insert expects a pipe dream without red checkers"));
            }
            let rows_j = rows_j.clone().unwrap_or_else(|| rows_i.clone());
            let r = rectify::rect(&rectify::insertion_diagram(&p.black, rows_i, &rows_j, *m)?)?;
            emit(out, &render_rectification(&r, *json, false))?;
        }
        Command::Rsk { matrix, classical, pipedream, both: _, json } => {
            let a = parse_matrix(&read_source(matrix)?)?;
            let mut sections: Vec<(&str, RevTableau, RevTableau)> = Vec::new();
            if !pipedream {
                sections.push(("classical", ins(&a), ins(&a_dagger(&a))));
            }
            if !classical {
                let (p, q) = rsk_prime(&a)?;
                sections.push(("pipedream", p, q));
            }
            emit(out, &render_rsk(&sections, *json))?;
        }
        Command::ConjectureScan { max_m, max_n, json } => {
            let mut reports = Vec::new();
            for m in 1..=*max_m {
                for n in 1..=*max_n {
                    reports.push(suite::conjecture_scan(m, n, &limits)?);
                }
            }
            emit(out, &render_reports(&reports, *json))?;
        }
        Command::Verify { identity, max_n, samples, json } => {
            let identities: Vec<Identity> =
                if identity == "all" { Identity::ALL.to_vec() } else { vec![identity.parse()?] };
            let config = RunConfig { max_n: *max_n, seed: cli.global.seed, samples: *samples, limits };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.global.jobs.max(1))
                .build()
                .map_err(|e| Error::internal(format!("thread pool: {e}")))?;
            let reports = pool.install(|| -> Result<Vec<Report>> {
                let mut all = Vec::new();
                for id in identities {
                    all.extend(suite::run_identity(id, &config)?);
                }
                Ok(all)
            })?;
            emit(out, &render_reports(&reports, *json))?;
            if !reports.iter().all(Report::passed) {
                return Ok(1);
            }
        }
        Command::Render { input, format } => {
            let w = read_diagram(input)?;
            let text = match format {
                Format::Text => w.render_text(),
                Format::Json => format!("{}\n", w.to_json()),
                Format::Wiring => w.render_wiring(),
            };
            emit(out, &text)?;
        }
    }
    Ok(0)
}

fn flow_steps(w: &SuperPipeDream, op: FlowOp, col: Option<i64>, row: Option<i64>) -> Result<Vec<SuperPipeDream>> {
    let need = |v: Option<i64>, what: &str| v.ok_or_else(|| Error::argument(format!("this operator needs --{what}")));
    Ok(match (op, col, row) {
        (FlowOp::YPlus, None, None) => flow::y_plus_chain(w),
        (FlowOp::YPlus, Some(j), None) => vec![w.clone(), flow::y_plus_col(w, j)?],
        (FlowOp::YMinus, None, None) => vec![w.clone(), flow::y_minus(w)],
        (FlowOp::YMinus, Some(c), None) => vec![w.clone(), flow::y_minus_col(w, c)?],
        (FlowOp::XPlus, None, None) => flow::x_plus_chain(w),
        (FlowOp::XPlus, None, Some(i)) => vec![w.clone(), flow::x_plus_row(w, i)?],
        (FlowOp::XMinus, None, None) => vec![w.clone(), flow::x_minus(w)],
        (FlowOp::XMinus, None, Some(r)) => vec![w.clone(), flow::x_minus_row(w, r)?],
        (FlowOp::YPrime, c, None) => vec![w.clone(), flow::y_prime_col(w, need(c, "col")?)?],
        _ => return Err(Error::argument("--col applies to y operators, --row to x operators")),
    })
}

fn render_poly(p: &MultiPoly, json: bool) -> String {
    if json {
        format!("{}\n", p.to_json())
    } else {
        format!("{p}\n")
    }
}

fn render_rectification(r: &Rectification, json: bool, co: bool) -> String {
    let (u, v) = r.factors();
    let ut = r.u.transpose().permutation();
    let factorization = if co { format!("{v} * {ut}") } else { format!("{u}^-1 * {v}") };
    if json {
        let value = json!({
            "v": cells(&r.v),
            "u": cells(&r.u),
            "perm_v": v.to_string(),
            "perm_u": u.to_string(),
            "factorization": factorization,
            "steps": r.steps,
        });
        return format!("{value}\n");
    }
    format!(
        "steps: {}\nv: {v}\nu: {u}\nw = {factorization}\nV:\n{}U:\n{}",
        r.steps,
        SuperPipeDream::from(r.v.clone()).render_text(),
        SuperPipeDream::from(r.u.clone()).render_text(),
    )
}

fn render_rsk(sections: &[(&str, RevTableau, RevTableau)], json: bool) -> String {
    if json {
        let value: serde_json::Map<String, serde_json::Value> = sections
            .iter()
            .map(|(name, p, q)| (name.to_string(), json!([p.to_json(), q.to_json()])))
            .collect();
        return format!("{}\n", serde_json::Value::Object(value));
    }
    sections
        .iter()
        .map(|(name, p, q)| format!("{name}:\n{}--\n{}", p.render_text(), q.render_text()))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_reports(reports: &[Report], json: bool) -> String {
    if json {
        return format!("{}\n", serde_json::to_string(reports).expect("reports serialize"));
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
    s.push_str(&format!("{} checks, {failed} failed\n", reports.len()));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pdlab").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn poly_output() {
        assert_eq!(call(&["poly", "--perm", "132", "--kind", "G"]), (0, "x1 + x2 + b*x1*x2\n".into(), String::new()));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["poly", "--perm", "1x2"]).0, 2);
        assert_eq!(call(&["flow", "--op", "x+", "--col", "1", "--diagram", "{\"black\":[],\"red\":[]}"]).0, 2);
    }

    #[test]
    fn caps_exit_3() {
        assert_eq!(call(&["enum", "--perm", "12345687", "--count-only"]).0, 3);
        assert_eq!(call(&["--cap-n", "8", "enum", "--perm", "1243", "--count-only"]).1, "7\n");
    }

    #[test]
    fn rect_reports_factorization() {
        let (code, out, _) = call(&["rect", "--diagram", r#"{"black":[[1,1]],"red":[[1,1]]}"#, "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["steps"], 1);
        assert_eq!(v["factorization"], "21^-1 * 21");
    }

    #[test]
    fn insert_and_rsk() {
        let (code, out, _) = call(&["insert", "--diagram", r#"{"black":[[1,1]],"red":[]}"#, "--m", "1", "--I", "1", "--json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"perm_v\":\"312\""), "{out}");
        let (code, out, _) = call(&["rsk", "--matrix", "1", "--pipedream"]);
        assert_eq!((code, out.as_str()), (0, "pipedream:\n1\n--\n"));
    }

    #[test]
    fn verify_macdonald() {
        let (code, out, _) = call(&["verify", "--identity", "macdonald", "--max-n", "3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("7 checks, 0 failed\n"), "{out}");
    }
}
