use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rees_lab::harness::{
    fault_probe_instance, run_harness, run_implications, search_question_counterexample,
    HarnessConfig, Profile,
};
use rees_lab::io::{
    evaluate, render, write_atomic, HarnessReportDocument, InstanceDocument, Property,
    QuestionReportDocument, Timings, VerdictDocument,
};
use rees_lab::monoid::Verdict;
use rees_lab::rees::OrdFault;
use rees_lab::Error;

const EXIT_FAILS: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "rees-lab", version, about = "Normality checks for monomial Rees algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one property of an instance file and print a verdict document.
    Check {
        path: PathBuf,
        #[arg(long)]
        property: Property,
        /// Overrides the search bound B.
        #[arg(long)]
        bound: Option<u64>,
        /// Overrides the characteristic.
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
    /// Run the implication checks on a seed range.
    Harness {
        /// Inclusive range `a..b`.
        #[arg(long)]
        seed_range: String,
        #[arg(long, default_value = "tiny")]
        profile: Profile,
        #[arg(long)]
        out: PathBuf,
        /// Include per-instance timings (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Search for an ideal that is normal in K[S] but not in K[S][y].
    Question {
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value = "tiny")]
        profile: Profile,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u64>, Error> {
    let bad = || Error::InvalidInput(format!("seed range {s:?} is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a = a.trim().parse::<u64>().map_err(|_| bad())?;
    let b = b.trim().parse::<u64>().map_err(|_| bad())?;
    Ok(a..=b)
}

fn check(path: PathBuf, property: Property, bound: Option<u64>, characteristic: Option<u64>) -> u8 {
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            let err = Error::InvalidInput(format!("{}: {e}", path.display()));
            print!("{}", render(&VerdictDocument::invalid(property.name(), String::new(), &err)));
            return EXIT_USAGE;
        }
    };
    let doc = match InstanceDocument::parse(&text) {
        Ok(d) => d,
        Err(err) => {
            print!("{}", render(&VerdictDocument::invalid(property.name(), String::new(), &err)));
            return EXIT_USAGE;
        }
    };
    let digest = doc.digest();
    let start = Instant::now();
    let result = doc.to_model().and_then(|mut model| {
        if let Some(b) = bound {
            if b == 0 {
                return Err(Error::InvalidInput("bound must be positive".into()));
            }
            model.bounds.b = b;
        }
        if let Some(p) = characteristic {
            if p != 0 && !rees_lab::monoid::is_prime(p) {
                return Err(Error::InvalidInput(format!("characteristic {p} is neither 0 nor prime")));
            }
            model.characteristic = p;
        }
        evaluate(&model, property)
    });
    match result {
        Ok(verdict) => {
            let timings = Timings {
                elapsed_us: start.elapsed().as_micros() as u64,
            };
            print!("{}", render(&VerdictDocument::new(property.name(), &verdict, digest, Some(timings))));
            match verdict {
                Verdict::Holds => 0,
                Verdict::Fails(_) => EXIT_FAILS,
                Verdict::Unknown(_) => EXIT_UNKNOWN,
            }
        }
        Err(err) => {
            print!("{}", render(&VerdictDocument::invalid(property.name(), digest, &err)));
            EXIT_USAGE
        }
    }
}

fn harness(seed_range: String, profile: Profile, out: PathBuf, timings: bool, inject_fault: bool) -> u8 {
    let seeds = match parse_range(&seed_range) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let config = HarnessConfig {
        fault: inject_fault.then_some(OrdFault::BumpGenerators),
    };
    let mut report = match run_harness(seeds, profile, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if inject_fault {
        // Random draws rarely reach the faulted code path; the probe always does.
        report.entries.push(run_implications(&fault_probe_instance(), &config));
    }
    let doc = HarnessReportDocument::new(&report, &seed_range, timings);
    if let Err(e) = write_atomic(&out, &render(&doc)) {
        eprintln!("error: {}: {e}", out.display());
        return EXIT_IO;
    }
    eprintln!(
        "{} instances, {} surviving conflicts",
        doc.instances, doc.surviving_conflicts
    );
    if doc.surviving_conflicts > 0 {
        EXIT_FAILS
    } else {
        0
    }
}

fn question(budget: u64, profile: Profile, out: PathBuf) -> u8 {
    let report = match search_question_counterexample(budget, profile) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let doc = QuestionReportDocument::new(&report, budget);
    if let Err(e) = write_atomic(&out, &render(&doc)) {
        eprintln!("error: {}: {e}", out.display());
        return EXIT_IO;
    }
    eprintln!("{} probed, {} extension failures", doc.probed, doc.failures);
    0
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Check {
            path,
            property,
            bound,
            characteristic,
        } => check(path, property, bound, characteristic),
        Command::Harness {
            seed_range,
            profile,
            out,
            timings,
            inject_fault,
        } => harness(seed_range, profile, out, timings, inject_fault),
        Command::Question { budget, profile, out } => question(budget, profile, out),
    };
    ExitCode::from(code)
}
