// Copyright 2026 The groupfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `groupfair` command-line tool.
//!
//! Exit codes: 0 success, 1 violation or nothing found, 2 input error,
//! 3 precondition error, 4 enumeration cap refusal.

mod bench;
mod report;

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use groupfair::instances::{
    generate, parse_allocation, parse_instance, serialize_allocation, serialize_instance,
};
use groupfair::model::binary_level;
use groupfair::oracle::{
    cgmms_value_bruteforce, exists_allocation, oracle_accepts, search_counterexample, ExistenceQuery, Predicate,
    SearchConfig, DEFAULT_ENUM_CAP,
};
use groupfair::{
    cgmms_ef1_allocate_binary, cgmms_value_binary, detect_class, evaluate, solve, Algorithm,
    ClassKind, Error, Execution, Instance, Notion,
};

const CAP_ENV: &str = "GROUPFAIR_ENUM_CAP";

#[derive(Parser)]
#[command(name = "groupfair", version, about = "Fair allocation of items to grouped agents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a constructive algorithm and report on its allocation.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        algo: Algorithm,
        /// Write the step-by-step trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the allocation here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an allocation file against an instance.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        alloc: PathBuf,
        /// Notions that must hold for exit code 0.
        #[arg(long, default_value = "EF1,CGEQ1", value_delimiter = ',')]
        require: Vec<Predicate>,
    },
    /// Exhaustively look for an allocation meeting every required notion.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "EF1,CGEQ1", value_delimiter = ',')]
        require: Vec<Predicate>,
        /// Maximum assignments to enumerate (default: $GROUPFAIR_ENUM_CAP or 10^7).
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group maximin share; exact polynomial method for binary allocators,
    /// exhaustive otherwise.
    Cgmms {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also build an EF1 allocation attaining the share (binary only).
        #[arg(long)]
        construct: bool,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        class: ClassKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "0", value_parser = parse_seed)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        vmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an instance with no EF1+CGEQ1 allocation.
    Search {
        #[arg(long, default_value = "general")]
        class: ClassKind,
        #[arg(long, default_value = "2..3", value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        #[arg(long, default_value = "2..5", value_parser = parse_range)]
        m_range: RangeInclusive<usize>,
        /// Group counts (default 1..n).
        #[arg(long, value_parser = parse_range)]
        k_range: Option<RangeInclusive<usize>>,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value = "0", value_parser = parse_seed)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        vmax: u64,
        /// Worker threads; 1 runs sequentially.
        #[arg(long)]
        jobs: Option<usize>,
        /// Walk every integer instance of the family in order instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        cap: Option<u64>,
        /// Write the log here instead of stdout.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Omit per-instance elapsed times so logs are byte-comparable.
        #[arg(long)]
        no_timing: bool,
    },
    /// Time a built-in workload.
    Bench {
        #[arg(long, default_value = "poly")]
        suite: bench::Suite,
    },
}

/// Accepts `a..b`, `a..=b` (both inclusive) or a single value.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad range {s:?}, expected e.g. 2..5"))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| format!("bad seed {s:?}"))
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| match e {
        Error::Input(msg) => Failure::Io(format!("{}: {msg}", path.display())),
        other => Failure::Lib(other),
    })
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut String) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, text),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}

fn enum_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Io(format!("{CAP_ENV}={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn code(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn notion_of(p: Predicate) -> Option<Notion> {
    match p {
        Predicate::Ef => Some(Notion::Ef),
        Predicate::Ef1 => Some(Notion::Ef1),
        Predicate::Cgeq => Some(Notion::Cgeq),
        Predicate::Cgeq1 => Some(Notion::Cgeq1),
        Predicate::CgmmsAttaining => None,
    }
}

fn run(cli: Cli, stdout: &mut String) -> Outcome {
    match cli.command {
        Command::Solve {
            input,
            algo,
            trace,
            out,
        } => {
            let inst = load(&input)?;
            let (used, outcome) = solve(&inst, algo)?;
            let rep = evaluate(&inst, &outcome.allocation);
            report::header(stdout, &inst);
            stdout.push_str(&format!("class: {}\nalgorithm: {used}\n", detect_class(&inst).kind()));
            report::fairness(stdout, &rep);
            if let Some(t) = trace {
                write(&t, &outcome.trace.to_text())?;
            }
            emit(out.as_deref(), &serialize_allocation(&outcome.allocation, None), stdout)?;
            Ok(code(rep.ef1.holds && rep.cgeq1.holds))
        }
        Command::Check {
            input,
            alloc,
            require,
        } => {
            let inst = load(&input)?;
            let doc = parse_allocation(&read(&alloc)?)?;
            doc.allocation.check_against(&inst)?;
            let rep = evaluate(&inst, &doc.allocation);
            report::header(stdout, &inst);
            report::fairness(stdout, &rep);
            let mut ok = true;
            for p in &require {
                let holds = match notion_of(*p) {
                    Some(n) => rep.verdict(n).holds,
                    None => {
                        let query = ExistenceQuery::new(&inst, &[*p])?.with_cap(enum_cap(None)?);
                        let holds = oracle_accepts(&query, &doc.allocation)?;
                        stdout.push_str(&format!("CGMMS: {holds}\n"));
                        holds
                    }
                };
                ok &= holds;
            }
            Ok(code(ok))
        }
        Command::Oracle {
            input,
            require,
            cap,
            out,
        } => {
            let inst = load(&input)?;
            let query = ExistenceQuery::new(&inst, &require)?.with_cap(enum_cap(cap)?);
            let names: Vec<&str> = query.predicates.iter().map(|p| p.name()).collect();
            stdout.push_str(&format!("{}\nrequire: {}\n", report::REPORT_VERSION, names.join(",")));
            match exists_allocation(&query)? {
                Some(a) => {
                    stdout.push_str("result: found\n");
                    emit(out.as_deref(), &serialize_allocation(&a, None), stdout)?;
                    Ok(code(true))
                }
                None => {
                    stdout.push_str("result: none\n");
                    Ok(code(false))
                }
            }
        }
        Command::Cgmms {
            input,
            construct,
            cap,
            out,
        } => {
            let inst = load(&input)?;
            report::header(stdout, &inst);
            if binary_level(&inst).is_none() {
                if construct {
                    return Err(Error::Precondition {
                        algorithm: "CGMMS construction",
                        required: "binary allocator",
                    }
                    .into());
                }
                let v = cgmms_value_bruteforce(&inst, enum_cap(cap)?)?;
                stdout.push_str("method: exhaustive\n");
                report::value(stdout, "cgmms", &v);
                return Ok(code(true));
            }
            stdout.push_str("method: binary\n");
            if !construct {
                report::certificate(stdout, &cgmms_value_binary(&inst)?);
                return Ok(code(true));
            }
            let (alloc, cert) = cgmms_ef1_allocate_binary(&inst)?;
            report::certificate(stdout, &cert);
            let rep = evaluate(&inst, &alloc);
            let attained = groupfair::fairness::min_group_average(&inst, &alloc);
            report::value(stdout, "attained", &attained);
            report::fairness(stdout, &rep);
            emit(out.as_deref(), &serialize_allocation(&alloc, Some(&cert)), stdout)?;
            Ok(code(rep.ef1.holds && attained == cert.value))
        }
        Command::Gen {
            class,
            n,
            m,
            k,
            seed,
            vmax,
            out,
        } => {
            let inst = generate(class, n, m, k, vmax, seed)?;
            emit(out.as_deref(), &serialize_instance(&inst), stdout)?;
            Ok(code(true))
        }
        Command::Search {
            class,
            n_range,
            m_range,
            k_range,
            budget,
            seed,
            vmax,
            jobs,
            exhaustive,
            cap,
            log,
            no_timing,
        } => {
            let execution = match jobs {
                Some(1) => Execution::Sequential,
                Some(j) => {
                    groupfair::exec::set_threads(j)?;
                    Execution::Parallel
                }
                None => Execution::Parallel,
            };
            let cfg = SearchConfig {
                class,
                n_range,
                m_range,
                k_range,
                vmax,
                seed,
                budget,
                exhaustive,
                cap: enum_cap(cap)?,
                execution,
                timing: !no_timing,
            };
            let outcome = search_counterexample(&cfg)?;
            emit(log.as_deref(), &outcome.log_text(), stdout)?;
            match &outcome.counterexample {
                None => {
                    eprintln!("no counterexample found");
                    Ok(code(true))
                }
                Some((index, inst)) => {
                    eprintln!("counterexample at log index {index}:");
                    eprint!("{}", serialize_instance(inst));
                    Ok(code(false))
                }
            }
        }
        Command::Bench { suite } => {
            stdout.push_str(&bench::run(suite)?);
            Ok(code(true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = String::new();
    let result = run(cli, &mut stdout);
    print!("{stdout}");
    match result {
        Ok(c) => c,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) => 2,
                Error::Precondition { .. } | Error::NoGuaranteedAlgorithm => 3,
                Error::CapExceeded { .. } => 4,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..3").unwrap(), 2..=3);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0x10").unwrap(), 16);
        assert_eq!(parse_seed("42").unwrap(), 42);
        assert!(parse_seed("-1").is_err());
    }
}
