mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use invbinom::verifier::{
    ReportDocument, Status, VerificationReport, builtin_catalog, verify_catalog,
};
use invbinom::{
    ApComplex, CutSide, GplWord, NamedConstant, PrecisionCtx, SeriesSpec, gpl_eval, li,
    named_constant, s_series,
};

#[derive(Parser, Debug)]
#[command(
    name = "invbinom",
    version,
    about = "Inverse binomial series, polylogarithms and identity checks"
)]
struct Cli {
    /// Significant digits reported.
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(u32).range(10..))]
    digits: u32,
    /// Worker threads for batch verification.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Write a structured report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a series, constant, GPL or polylogarithm.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Verify one catalog identity, or `all`.
    Verify { target: String },
    /// List catalog ids with their anchors.
    List,
    /// Evaluate a named constant.
    Const { name: String },
}

#[derive(Subcommand, Debug)]
enum EvalKind {
    /// S_k(z) = Σ zⁿ / ((2n+1)^k C(2n,n)).
    Series {
        k: u32,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// A named constant such as `zeta3` or `catalan_G`.
    Const { name: String },
    /// G(a₁,…,aₙ; z) with comma-separated letters.
    Gpl {
        #[arg(allow_hyphen_values = true)]
        letters: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Li_s(z).
    Li {
        s: u32,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
}

enum Failure {
    Usage(String),
    Eval(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Eval(_) | Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Eval(m) | Failure::Io(m) => m,
        }
    }
}

fn eval_err(e: invbinom::Error) -> Failure {
    Failure::Eval(e.to_string())
}

#[derive(Serialize)]
struct EvalDocument<'a> {
    tool_version: &'a str,
    digits: u32,
    kind: &'a str,
    args: Vec<String>,
    value: String,
}

fn write_json<T: Serialize>(path: &PathBuf, doc: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).map_err(|e| Failure::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_constant(name: &str) -> Result<NamedConstant, Failure> {
    name.parse().map_err(|_| {
        let known: Vec<&str> = NamedConstant::ALL.iter().map(|c| c.name()).collect();
        Failure::Usage(format!(
            "unknown constant `{name}`; known: {}",
            known.join(", ")
        ))
    })
}

fn cmd_eval(kind: &EvalKind, cli: &Cli) -> Result<u8, Failure> {
    let ctx = PrecisionCtx::new(cli.digits).map_err(|e| Failure::Usage(e.to_string()))?;
    let bits = ctx.bits();
    let point = |s: &str| parse::parse_complex(s, bits).map_err(Failure::Usage);
    let (name, args, value): (&str, Vec<String>, ApComplex) = match kind {
        EvalKind::Series { k, z } => {
            let spec = SeriesSpec::new(*k, point(z)?);
            (
                "series",
                vec![k.to_string(), z.clone()],
                s_series(&spec, &ctx).map_err(eval_err)?,
            )
        }
        EvalKind::Const { name } => {
            let c = parse_constant(name)?;
            (
                "const",
                vec![name.clone()],
                named_constant(c, &ctx).map_err(eval_err)?,
            )
        }
        EvalKind::Gpl { letters, z } => {
            let a = parse::parse_letters(letters, bits).map_err(Failure::Usage)?;
            let word = GplWord::new(a, point(z)?);
            (
                "gpl",
                vec![letters.clone(), z.clone()],
                gpl_eval(&word, &ctx).map_err(eval_err)?,
            )
        }
        EvalKind::Li { s, z } => {
            let v = li(*s, &point(z)?, CutSide::Auto, &ctx).map_err(eval_err)?;
            ("li", vec![s.to_string(), z.clone()], v)
        }
    };
    let text = value.chopped().to_string_digits(cli.digits as usize);
    println!("{text}");
    if let Some(path) = &cli.json {
        let doc = EvalDocument {
            tool_version: env!("CARGO_PKG_VERSION"),
            digits: cli.digits,
            kind: name,
            args,
            value: text,
        };
        write_json(path, &doc)?;
    }
    Ok(0)
}

fn print_table(reports: &[VerificationReport]) {
    let catalog = builtin_catalog();
    println!(
        "{:<14} {:<6} {:>8} {:>3} {:>3}  anchor",
        "id", "status", "digits", "k", "N"
    );
    for r in reports {
        let entry = catalog.iter().find(|e| e.id == r.id);
        let k = entry.map_or_else(String::new, |e| e.weight.to_string());
        let n = entry
            .and_then(|e| e.level)
            .map_or_else(|| "-".to_string(), |l| l.to_string());
        println!(
            "{:<14} {:<6} {:>8.2} {:>3} {:>3}  {}",
            r.id, r.status, r.digits_agreed, k, n, r.anchor
        );
        if let Some(e) = &r.error {
            println!("    error: {e}");
        }
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    println!("{passed}/{} pass", reports.len());
}

fn cmd_verify(target: &str, cli: &Cli) -> Result<u8, Failure> {
    let ctx = PrecisionCtx::new(cli.digits).map_err(|e| Failure::Usage(e.to_string()))?;
    let catalog = builtin_catalog();
    let selected: Vec<_> = if target == "all" {
        catalog.clone()
    } else {
        let found: Vec<_> = catalog.iter().filter(|e| e.id == target).cloned().collect();
        if found.is_empty() {
            return Err(Failure::Usage(format!(
                "unknown catalog id `{target}`; try `invbinom list`"
            )));
        }
        found
    };
    let jobs = cli
        .jobs
        .map(|j| j as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let reports = verify_catalog(&selected, &ctx, jobs).map_err(eval_err)?;
    print_table(&reports);
    if let Some(path) = &cli.json {
        write_json(
            path,
            &ReportDocument::new(reports.clone(), cli.digits, &catalog),
        )?;
    }
    let code = if reports.iter().any(|r| r.status == Status::Error) {
        3
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    };
    Ok(code)
}

fn cmd_list() -> Result<u8, Failure> {
    let mut out = std::io::stdout().lock();
    for e in builtin_catalog() {
        match writeln!(out, "{:<14} {}", e.id, e.anchor) {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => break,
            Err(e) => return Err(Failure::Io(e.to_string())),
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Eval { kind } => cmd_eval(kind, cli),
        Command::Const { name } => cmd_eval(&EvalKind::Const { name: name.clone() }, cli),
        Command::Verify { target } => cmd_verify(target, cli),
        Command::List => cmd_list(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("invbinom: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
