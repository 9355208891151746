use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cayley2dt::report::{
    self, export, render_graph, run_suite, write_report, CheckSelector, Format, SuiteConfig,
    WhichGraph,
};
use cayley2dt::{build_cayley, Error};

#[derive(Parser)]
#[command(
    name = "cayley2dt",
    version,
    about = "Build and verify Cay(G, S) on the extraspecial group of order p^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    Gamma,
    Sigma,
    Quotient,
}

#[derive(Subcommand)]
enum Command {
    /// Build Γ and write it, printing a summary to stderr.
    Build {
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Output path (stdout if omitted).
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Run the verification suite. Exits 0 iff every check passes.
    Verify {
        #[arg(short)]
        p: u64,
        /// Comma-separated check ids or groups (default: all).
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        skip_aut_search: bool,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Soft per-check timeout in seconds.
        #[arg(long, default_value_t = report::DEFAULT_TIMEOUT.as_secs())]
        timeout: u64,
    },
    /// Write Γ, Σ or the centre quotient as JSON or DOT.
    Export {
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Output path (default `<graph>_p<p>.<ext>`).
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
        }
    }
}

impl From<GraphArg> for WhichGraph {
    fn from(g: GraphArg) -> Self {
        match g {
            GraphArg::Gamma => WhichGraph::Gamma,
            GraphArg::Sigma => WhichGraph::Sigma,
            GraphArg::Quotient => WhichGraph::Quotient,
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Build { p, format, o } => {
            let config = SuiteConfig::new(p)?;
            let ctx = build_cayley(config.params)?;
            eprintln!("{}", serde_json::to_string(&ctx.summary())?);
            let text = render_graph(config.params, WhichGraph::Gamma, format.into())?;
            match o {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|source| Error::Io { path, source })?
                }
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|source| Error::Io {
                        path: "<stdout>".into(),
                        source,
                    })?,
            }
            Ok(true)
        }
        Command::Verify {
            p,
            checks,
            skip_aut_search,
            json,
            timeout,
        } => {
            let mut config = SuiteConfig::new(p)?;
            config.checks = checks
                .as_deref()
                .map(CheckSelector::parse)
                .unwrap_or_default();
            config.skip_aut_search = skip_aut_search;
            config.json_path = json;
            config.timeout = std::time::Duration::from_secs(timeout);
            let report = run_suite(&config)?;
            for c in &report.checks {
                let mark = match (c.result.informational, c.result.pass) {
                    (true, _) => "info",
                    (false, true) => "PASS",
                    (false, false) => "FAIL",
                };
                println!("{mark:>4}  {:<36} {:>10.1} ms", c.result.name, c.elapsed_ms);
            }
            println!(
                "p = {}: {}",
                report.p,
                if report.overall_pass {
                    "all checks passed"
                } else {
                    "FAILED"
                }
            );
            write_report(&config, &report)?;
            Ok(report.overall_pass)
        }
        Command::Export {
            p,
            graph,
            format,
            o,
        } => {
            let mut config = SuiteConfig::new(p)?;
            config.format = format.into();
            config.output = o;
            let path = export(&config, graph.into())?;
            eprintln!("wrote {}", path.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
