use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use residua::catalog::CatalogSpec;
use residua::dsl::{parse_ring_expr, DslError, ExprKind, RingExpr};
use residua::report::Format;
use residua::ring::ENUM_CAP;
use residua::suites::{
    info, run_search, run_suite, RunOptions, SearchTarget, Suite, SEARCH_DEFAULT_ORDER, VERIFY_DEFAULT_ORDER,
};
use residua::Exec;

#[derive(Parser)]
#[command(name = "residua", version, about = "Finite commutative rings: residue fields, split extensions, completions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize one ring
    Info {
        expr: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Run a verification suite over the catalog
    Verify {
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Search the catalog (q31, absiso, uniqueness)
    Search {
        target: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Parse an expression and print its tree
    Parse { expr: String },
}

#[derive(Args)]
struct RunArgs {
    /// Largest ring order in the catalog [verify: 64, search: 81]
    #[arg(long)]
    max_order: Option<usize>,
    /// Primes whose rings enter the catalog
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    fields: Vec<u64>,
    /// Extra ring expression, repeatable
    #[arg(long = "ring")]
    rings: Vec<String>,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run on one thread
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        }
    }
}

impl RunArgs {
    fn options(&self, default_order: usize) -> Result<RunOptions, String> {
        let max_order = self.max_order.unwrap_or(default_order);
        if max_order > ENUM_CAP {
            return Err(format!("--max-order {max_order} exceeds the enumeration cap {ENUM_CAP}"));
        }
        if let Some(p) = self.fields.iter().find(|&&p| !residua::poly::is_prime(p)) {
            return Err(format!("--fields: {p} is not prime"));
        }
        Ok(RunOptions {
            catalog: CatalogSpec { max_order, primes: self.fields.clone() },
            extra: self.rings.clone(),
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
        })
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("residua: {msg}");
    ExitCode::from(2)
}

fn show_dsl_error(text: &str, e: &DslError) -> String {
    let (start, end) = match e {
        DslError::Parse(p) => (p.offset, p.offset + 1),
        DslError::Semantic(s) => (s.span.start, s.span.end.max(s.span.start + 1)),
    };
    format!("{e}\n  {text}\n  {}{}", " ".repeat(start), "^".repeat(end - start))
}

fn tree(e: &RingExpr, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let span = format!("[{}..{}]", e.span.start, e.span.end);
    match &e.kind {
        ExprKind::ZMod(n) => out.push_str(&format!("{pad}ZMod({n}) {span}\n")),
        ExprKind::Gf(q) => out.push_str(&format!("{pad}GF({q}) {span}\n")),
        ExprKind::Sdp { q, dim, kind } => {
            out.push_str(&format!("{pad}Sdp({q}, {dim}, {}) {span}\n", kind.as_str()))
        }
        ExprKind::PolyQuot(base, p) => {
            out.push_str(&format!("{pad}PolyQuot {span}\n"));
            tree(base, depth + 1, out);
            out.push_str(&format!("{pad}  Poly({p}) [{}..{}]\n", p.span.start, p.span.end));
        }
        ExprKind::Prod(l, r) => {
            out.push_str(&format!("{pad}Prod {span}\n"));
            tree(l, depth + 1, out);
            tree(r, depth + 1, out);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Parse { expr } => match parse_ring_expr(&expr) {
            Ok(e) => {
                let mut out = format!("{e}\n");
                tree(&e, 0, &mut out);
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(err) => fail(show_dsl_error(&expr, &err)),
        },
        Command::Info { expr, format } => match info(&expr) {
            Ok(i) => {
                match format {
                    OutFormat::Text => print!("{i}"),
                    OutFormat::Json => print!("{}", i.to_json()),
                }
                ExitCode::SUCCESS
            }
            Err(msg) => fail(msg),
        },
        Command::Verify { suite, run } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(e) => return fail(format!("{e}; known suites: {}", suite_names())),
            };
            let opts = match run.options(VERIFY_DEFAULT_ORDER) {
                Ok(o) => o,
                Err(msg) => return fail(msg),
            };
            let report = match run_suite(suite, &opts) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            if let Err(e) = report.emit(run.format.into(), run.output.as_deref()) {
                return fail(e);
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Search { target, run } => {
            let target: SearchTarget = match target.parse() {
                Ok(t) => t,
                Err(e) => return fail(format!("{e}; known targets: q31, absiso, uniqueness")),
            };
            let opts = match run.options(SEARCH_DEFAULT_ORDER) {
                Ok(o) => o,
                Err(msg) => return fail(msg),
            };
            let report = match run_search(target, &opts) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            // findings are results, not errors
            match report.emit(run.format.into(), run.output.as_deref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
    }
}

fn suite_names() -> String {
    Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
}
