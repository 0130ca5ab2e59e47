use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ibdouble::autgroup::der_decomposition_check;
use ibdouble::chevalley::build_simple;
use ibdouble::doubles::{build_ib, build_ib_bar};
use ibdouble::liealg::DEFAULT_DERIVATION_CAP;
use ibdouble::looptrunc::{lift_to_loop, omega_compatible, semilinearity_lambda};
use ibdouble::rootsys::RootSystem;
use ibdouble::scalar::format_rational;
use ibdouble::{Error, Q};
use ibdouble_cli::report::{emit_report, Format};
use ibdouble_cli::suite::{
    diagram_summary, parse_epsilon_list, parse_suite_list, parse_type, run_suite, SuiteOptions, UsageError,
    LAMBDA_WINDOW,
};

const EXIT_FALSIFIED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "ibdouble", version, about = "Exact verification of Borel doubles and their automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites on one simple type.
    Verify {
        /// Simple type, e.g. A2, B3, G2.
        #[arg(value_name = "TYPE")]
        simple_type: String,
        /// Comma-separated rational deformation parameters.
        #[arg(long)]
        epsilon: Option<String>,
        /// Comma-separated suite names to run; all suites by default.
        #[arg(long)]
        suites: Option<String>,
        /// Largest algebra dimension for which derivations are computed.
        #[arg(long, default_value_t = DEFAULT_DERIVATION_CAP)]
        der_cap: usize,
        #[arg(long, default_value = "text")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include per-suite wall-clock timings.
        #[arg(long)]
        timings: bool,
    },
    /// Print the extended Cartan matrix and its diagram automorphisms.
    DiagramAut {
        #[arg(value_name = "TYPE")]
        simple_type: String,
    },
    /// Compute the dimension of the derivation algebra of Ib or of its quotient.
    DerDim {
        #[arg(value_name = "TYPE")]
        simple_type: String,
        /// Use the quotient by the center instead.
        #[arg(long)]
        bar: bool,
        #[arg(long, default_value_t = DEFAULT_DERIVATION_CAP)]
        der_cap: usize,
    },
    /// Print the semilinearity scalar of each loop-algebra lift.
    Lambda {
        #[arg(value_name = "TYPE")]
        simple_type: String,
        /// Truncation window N for the loop degrees.
        #[arg(long, default_value_t = LAMBDA_WINDOW)]
        window: i64,
    },
}

enum Failure {
    Usage(String),
    Falsified(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Falsified(_) => Failure::Falsified(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FALSIFIED),
        Err(Failure::Falsified(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FALSIFIED)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Verify { simple_type, epsilon, suites, der_cap, format, out, seed, timings } => {
            let format: Format = format.parse().map_err(Failure::Usage)?;
            let mut opts = SuiteOptions { der_cap, seed, timings, ..Default::default() };
            if let Some(e) = epsilon {
                opts.epsilons = parse_epsilon_list(&e)?;
            }
            if let Some(s) = suites {
                opts.suites = Some(parse_suite_list(&s)?);
            }
            let report = run_suite(&simple_type, &opts)?;
            emit_report(&report, format, out.as_deref())
                .map_err(|e| Failure::Usage(format!("cannot write report: {e}")))?;
            Ok(report.passed())
        }
        Command::DiagramAut { simple_type } => {
            let t = parse_type(&simple_type)?;
            let (ext, marks, group) = diagram_summary(t)?;
            println!("extended Cartan matrix of {t} (node 0 = lowest root)");
            for row in &ext {
                let cells: Vec<String> = row.iter().map(|a| format!("{a:>3}")).collect();
                println!("  {}", cells.join(""));
            }
            println!("marks {marks:?}");
            println!("{} automorphisms", group.len());
            for s in &group {
                println!("  {s:<20} order {}", s.order());
            }
            Ok(true)
        }
        Command::DerDim { simple_type, bar, der_cap } => {
            let g = build_simple::<Q>(&RootSystem::from_type_str(&parse_type(&simple_type)?.to_string())?)?;
            let (name, double) = if bar { ("Ib_bar", build_ib_bar(&g)?) } else { ("Ib", build_ib(&g)?) };
            let rep = der_decomposition_check(&double, der_cap)?;
            println!("dim Der({name}({simple_type})) = {} (expected {})", rep.der_dim, rep.expected_dim);
            if let Err(e) = rep.verify() {
                eprintln!("{e}");
                return Ok(false);
            }
            Ok(true)
        }
        Command::Lambda { simple_type, window } => {
            let t = parse_type(&simple_type)?;
            let g = build_simple::<Q>(&RootSystem::from_type_str(&t.to_string())?)?;
            let (_, _, group) = diagram_summary(t)?;
            let mut ok = true;
            println!("{:<20} {:<6} {:<7} omega", "automorphism", "order", "lambda");
            for s in &group {
                let lift = lift_to_loop(&g, s, window)?;
                let lambda = semilinearity_lambda(&lift)?;
                let omega = omega_compatible(&lift)?;
                ok &= omega;
                println!("{:<20} {:<6} {:<7} {omega}", s.to_string(), s.order(), format_rational(&lambda));
            }
            Ok(ok)
        }
    }
}
