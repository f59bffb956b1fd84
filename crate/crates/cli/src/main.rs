//! `edgekernel` command-line tool: kernelize, solve, verify, generate and
//! check instances stored in the line-oriented text format.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use edgekernel::format::{parse_instance, parse_labeling, serialize_instance};
use edgekernel::harness::{equivalence_suite, random_instance, Shape, SuiteConfig};
use edgekernel::kernel::{kernelize, KernelOutcome};
use edgekernel::solver::{min_weak, DEFAULT_LIMIT};
use edgekernel::{Error, Instance, Kind, Param};

#[derive(Parser)]
#[command(name = "edgekernel", version, about = "Kernels and an exact solver for edge-coloring and strong triadic closure problems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce an instance and write the kernel.
    Kernelize {
        file: PathBuf,
        #[arg(long, default_value = "xi")]
        param: Param,
        /// Print statistics as JSON.
        #[arg(long)]
        json: bool,
        /// Include every rule application.
        #[arg(long)]
        trace: bool,
        /// Write the reduced instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum number of weak edges, and yes/no for the file's k.
    Solve {
        file: PathBuf,
        /// Largest edge count the exact solver accepts.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Check a labeling file against an instance.
    Verify { instance: PathBuf, labeling: PathBuf },
    /// Reproducible random instance.
    Gen {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = 0)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw random edge lists (list kinds only).
        #[arg(long)]
        lists: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kernelize and fail unless the size bound holds.
    CheckBounds {
        file: PathBuf,
        #[arg(long, default_value = "xi")]
        param: Param,
    },
    /// Random equivalence suite; one JSON line per trial.
    Suite {
        #[arg(long)]
        kind: Kind,
        #[arg(long, default_value = "xi")]
        param: Param,
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4])]
        c: Vec<u32>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = ShapeArg::Gnp)]
        shape: ShapeArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Gnp,
    Gadget,
}

enum Fail {
    /// Property checked by the subcommand does not hold.
    Check(String),
    /// Usage, I/O or parse problem.
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Contract(_) => Fail::Check(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

type Run = Result<(), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Fail> {
    parse_instance(&read(path)?).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Run {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn stats_text(o: &KernelOutcome, trace: bool) -> String {
    let s = &o.stats;
    let mut t = format!(
        "kind={} c={} k_in={} k_out={} n_in={} m_in={} n_out={} m_out={} deletion_set_size={} bound={} bound_holds={} decision={}\n",
        s.kind, s.c, s.k_in, s.k_out, s.n_in, s.m_in, s.n_out, s.m_out, s.deletion_set_size, s.bound, s.bound_holds, s.decision
    );
    for r in &s.rules {
        writeln!(t, "rule {} x{}", r.rule, r.count).unwrap();
    }
    if trace {
        for a in &o.trace {
            let vs: Vec<String> = a.vertices.iter().map(|v| (v + 1).to_string()).collect();
            let es: Vec<String> = a.edges.iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
            writeln!(t, "apply {} vertices=[{}] edges=[{}] dk={}", a.rule, vs.join(" "), es.join(" "), a.k_delta).unwrap();
        }
    }
    t
}

fn stats_json(o: &KernelOutcome, trace: bool) -> String {
    let mut v = serde_json::to_value(&o.stats).expect("stats serialize");
    if trace {
        v["trace"] = serde_json::to_value(&o.trace).expect("trace serializes");
    }
    v.to_string() + "\n"
}

fn run(cli: Cli) -> Run {
    match cli.cmd {
        Cmd::Kernelize {
            file,
            param,
            json,
            trace,
            out,
        } => {
            let o = kernelize(&load(&file)?, param)?;
            emit(&serialize_instance(&o.reduced), out.as_deref())?;
            let report = if json { stats_json(&o, trace) } else { stats_text(&o, trace) };
            // stdout carries the instance unless it went to a file
            if out.is_some() {
                print!("{report}");
            } else {
                eprint!("{report}");
            }
            Ok(())
        }
        Cmd::Solve { file, limit } => {
            let inst = load(&file)?;
            let sol = min_weak(&inst, limit)?;
            let yes = sol.weak as u64 <= inst.k;
            println!("{} (min_weak={})", if yes { "yes" } else { "no" }, sol.weak);
            if yes {
                Ok(())
            } else {
                Err(Fail::Check(String::new()))
            }
        }
        Cmd::Verify { instance, labeling } => {
            let inst = load(&instance)?;
            let l = parse_labeling(&read(&labeling)?, &inst.graph, inst.c)
                .map_err(|e| Fail::Usage(format!("{}: {e}", labeling.display())))?;
            let valid = inst.is_valid_labeling(&l)?;
            let weak = l.weak_count();
            let verdict = match (valid, weak as u64 <= inst.k) {
                (false, _) => "invalid",
                (true, true) => "valid",
                (true, false) => "valid, over budget",
            };
            println!("{verdict} (weak={weak}, k={})", inst.k);
            if valid && weak as u64 <= inst.k {
                Ok(())
            } else {
                Err(Fail::Check(String::new()))
            }
        }
        Cmd::Gen {
            kind,
            n,
            p,
            c,
            k,
            seed,
            lists,
            out,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Fail::Usage(format!("edge probability {p} outside [0, 1]")));
            }
            if c == 0 || c > 63 {
                return Err(Fail::Usage(format!("color count {c} outside 1..=63")));
            }
            let inst = random_instance(kind, n, p, c, k, seed, lists);
            emit(&serialize_instance(&inst), out.as_deref())
        }
        Cmd::CheckBounds { file, param } => {
            let o = kernelize(&load(&file)?, param)?;
            print!("{}", stats_text(&o, false));
            if o.stats.bound_holds {
                Ok(())
            } else {
                Err(Fail::Check(format!("size bound {} exceeded", o.stats.bound)))
            }
        }
        Cmd::Suite {
            kind,
            param,
            c,
            trials,
            n_max,
            seed,
            limit,
            shape,
        } => {
            let mut cfg = SuiteConfig::new(kind, param, c, trials, n_max);
            cfg.seed = seed;
            cfg.limit = limit;
            cfg.shape = match shape {
                ShapeArg::Gnp => Shape::Gnp,
                ShapeArg::Gadget => Shape::Gadget,
            };
            let rep = equivalence_suite(&cfg)?;
            print!("{}", rep.json_lines());
            if rep.passed() {
                Ok(())
            } else {
                Err(Fail::Check(format!("{} failing trials", rep.failures)))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("edgekernel: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("edgekernel: {msg}");
            ExitCode::from(2)
        }
    }
}
