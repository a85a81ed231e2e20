use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twofold::bench::{self, BenchConfig, Kernel, Size};
use twofold::lab::{
    parse_coefficient, report_emit, run_jordan, run_quadratic, run_rump, run_summation, JordanConfig, JordanVariant,
    Kind, LabError, OutputFormat, QuadraticConfig, RumpOrder, ScenarioReport, SummationConfig,
};
use twofold::Width;

#[derive(Parser)]
#[command(name = "lab", version, about = "Accuracy experiments with twofold numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corner cases of rounding-error accumulation.
    #[command(subcommand)]
    Corner(Corner),
    /// Linear systems.
    #[command(subcommand)]
    Solve(Solve),
    /// Throughput of twofold kernels against plain ones.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Common {
    /// Number kinds to run (comma separated); all six by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    kind: Vec<Kind>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

impl Common {
    fn kinds(&self) -> Vec<Kind> {
        if self.kind.is_empty() {
            Kind::ALL.to_vec()
        } else {
            self.kind.clone()
        }
    }
}

#[derive(Subcommand)]
enum Corner {
    /// A timer adding 0.1 s per tick.
    Summation {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100.0)]
        hours: f64,
    },
    /// Roots of x^2 + 2x + c.
    Quadratic {
        #[command(flatten)]
        common: Common,
        /// Constant term, e.g. `1e-8` or `1+1e-8`.
        #[arg(long, default_value = "1e-8", allow_hyphen_values = true)]
        c: String,
    },
    /// Rump's polynomial at a=77617, b=33096.
    Rump {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = RumpOrder::Literal)]
        order: RumpOrder,
    },
}

#[derive(Subcommand)]
enum Solve {
    /// 5x5 Jordan cell with small lambda, solved by pivoted LU.
    Jordan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1e-4")]
        lambda: String,
        #[arg(long, value_enum, default_value_t = JordanVariant::Normalized)]
        variant: JordanVariant,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_enum)]
    kernel: Kernel,
    /// Bytes per input array: small, large, or a count such as 64MiB.
    #[arg(long, default_value = "small")]
    size: Size,
    #[arg(long, default_value = "64", value_parser = ["32", "64"])]
    width: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ENVIRONMENT: u8 = 3;

fn run_kinds(
    common: &Common,
    run: impl Fn(Kind) -> Result<ScenarioReport, LabError>,
) -> Result<Vec<ScenarioReport>, LabError> {
    common.kinds().into_iter().map(run).collect()
}

fn emit(text: &str) -> ExitCode {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        eprintln!("lab: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Err(e) = twofold::check_environment() {
        eprintln!("lab: {e}");
        return ExitCode::from(EXIT_ENVIRONMENT);
    }

    let (reports, format) = match cli.command {
        Command::Corner(Corner::Summation { common, hours }) => (
            run_kinds(&common, |k| run_summation(k, SummationConfig { hours })),
            common.format,
        ),
        Command::Corner(Corner::Quadratic { common, c }) => {
            let result = parse_coefficient(&c).and_then(|c| {
                run_kinds(&common, |k| {
                    run_quadratic(
                        k,
                        QuadraticConfig {
                            c,
                            ..Default::default()
                        },
                    )
                })
            });
            (result, common.format)
        }
        Command::Corner(Corner::Rump { common, order }) => (run_kinds(&common, |k| run_rump(k, order)), common.format),
        Command::Solve(Solve::Jordan {
            common,
            lambda,
            variant,
        }) => {
            let result = JordanConfig {
                variant,
                ..Default::default()
            }
            .with_lambda(&lambda)
            .and_then(|config| run_kinds(&common, |k| run_jordan(k, config)));
            (result, common.format)
        }
        Command::Bench(args) => return bench_main(args),
    };

    match reports {
        Ok(reports) => {
            let code = emit(&report_emit(&reports, format));
            if code != ExitCode::SUCCESS {
                return code;
            }
            if reports.iter().all(ScenarioReport::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e @ LabError::Parameter(_)) => {
            eprintln!("lab: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("lab: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn bench_main(args: BenchArgs) -> ExitCode {
    let width = if args.width == "32" { Width::W32 } else { Width::W64 };
    let config = BenchConfig::new(args.kernel, args.size, width, args.seed);
    match bench::run(&config) {
        Ok(records) => emit(&match args.format {
            OutputFormat::Text => bench::render_table(&records),
            OutputFormat::Records => bench::render_records(&records),
        }),
        Err(e @ bench::BenchError::Empty { .. }) => {
            eprintln!("lab: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("lab: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
