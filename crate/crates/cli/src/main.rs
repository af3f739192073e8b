use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ddwl_core::coherent;
use ddwl_core::designs::{self, PairMode};
use ddwl_core::gf::{prime_power, Field};
use ddwl_core::isotest::{self, Budget};
use ddwl_core::suite::{self, Mode};
use ddwl_core::{Construction, FieldElement};

/// Largest `q` accepted unless `DDWL_MAX_Q` says otherwise (`q³ ≤ 1331`).
const DEFAULT_MAX_Q: u32 = 11;

#[derive(Parser)]
#[command(name = "ddwl", version, about = "Divisible design Cayley digraphs over H_3(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the adjacency matrix of Γ_i as 0/1 text.
    Build {
        q: u32,
        /// Field element index of i.
        i: u32,
        /// Drop the loop at every vertex.
        #[arg(long)]
        loopless: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and print a JSON report.
    Verify {
        q: u32,
        #[arg(long, value_enum, default_value_t = SuiteArg::Full)]
        suite: SuiteArg,
        #[arg(long)]
        no_timings: bool,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// WL closure of Γ_i.
    Wl {
        q: u32,
        i: u32,
        /// Write the structure constants here instead of inlining them.
        #[arg(long)]
        tensor_out: Option<PathBuf>,
    },
    /// Isomorphism classes among Γ_i for the generators i.
    Iso {
        q: u32,
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        max_nodes: u64,
    },
    /// Check the explicit isomorphism dev(X_0) ≅ dev(X_i).
    Design {
        q: u32,
        i: u32,
        /// Check this many random pairs instead of all of G×G.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Full,
    Fast,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<ddwl_core::Error> for Failure {
    fn from(e: ddwl_core::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn max_q() -> Result<u32, Failure> {
    match std::env::var("DDWL_MAX_Q") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("DDWL_MAX_Q={v} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_Q),
    }
}

fn construction(q: u32) -> Result<Construction, Failure> {
    let cap = max_q()?;
    let (p, l) = prime_power(q).map_err(|e| Failure::Usage(format!("q = {q}: {e}")))?;
    if q > cap {
        return Err(Failure::Usage(format!("q = {q} exceeds the cap {cap} (set DDWL_MAX_Q to raise it)")));
    }
    let field = Field::with_cap(p, l, cap).map_err(|e| Failure::Usage(format!("q = {q}: {e}")))?;
    Ok(Construction::from_field(field))
}

fn element(c: &Construction, i: u32) -> Result<FieldElement, Failure> {
    c.field().element(i).map_err(|e| Failure::Usage(format!("i = {i}: {e}")))
}

fn emit(json: &impl Serialize, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(json).expect("report serializes") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_err(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn legend(c: &Construction) -> String {
    let q = c.q();
    let spec = c.field().spec();
    format!(
        "vertices: {} elements (x, y, z) of H_3({q}), index = ix*{q}^2 + iy*{q} + iz\n\
         field: p = {}, l = {}, modulus coefficients (low to high, leading 1 omitted) = {:?}\n\
         arcs: u -> x*u for x in the connection set\n",
        c.n(),
        spec.p,
        spec.l,
        spec.modulus
    )
}

#[derive(Serialize)]
struct WlOutput<'a> {
    q: u32,
    i: u32,
    rank: usize,
    rounds: usize,
    e_row_partition: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tensor: Option<coherent::TensorExport<'a>>,
}

#[derive(Serialize)]
struct IsoOutput {
    q: u32,
    generators: Vec<u32>,
    count: isotest::ClassCount,
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Build { q, i, loopless, out } => {
            let c = construction(q)?;
            let g = c.build_cayley(element(&c, i)?, !loopless);
            match out {
                Some(path) => {
                    std::fs::write(&path, g.to_text()).map_err(|e| io_err(&path, e))?;
                    print!("{}", legend(&c));
                }
                None => {
                    print!("{}", g.to_text());
                    eprint!("{}", legend(&c));
                }
            }
            Ok(true)
        }
        Command::Verify { q, suite: mode, no_timings, seed, out } => {
            let c = construction(q)?;
            let mode = match mode {
                SuiteArg::Full => Mode::Full,
                SuiteArg::Fast => Mode::Fast,
            };
            let mut report = suite::run(&c, mode, seed);
            if no_timings {
                report.timings = None;
            }
            emit(&report, out.as_deref())?;
            let failed = report.failed();
            if !failed.is_empty() {
                eprintln!("failed checks: {}", failed.join(", "));
            }
            Ok(failed.is_empty())
        }
        Command::Wl { q, i, tensor_out } => {
            let c = construction(q)?;
            let cc = coherent::wl_close(&c.build_cayley(element(&c, i)?, true))?;
            if let Some(path) = &tensor_out {
                let text = serde_json::to_string_pretty(&cc.export()).expect("tensor serializes");
                std::fs::write(path, text + "\n").map_err(|e| io_err(path, e))?;
            }
            let output = WlOutput {
                q,
                i,
                rank: cc.rank(),
                rounds: cc.coloring().rounds(),
                e_row_partition: cc.as_sring_partition().into_iter().map(|(_, m)| m).collect(),
                tensor: tensor_out.is_none().then(|| cc.export()),
            };
            emit(&output, None)?;
            Ok(true)
        }
        Command::Iso { q, max_nodes } => {
            let c = construction(q)?;
            let generators = c.generators_i();
            let graphs: Vec<_> = generators.iter().map(|&i| c.build_cayley(i, true)).collect();
            let count = isotest::iso_class_count(&graphs, Budget { max_nodes });
            let output = IsoOutput { q, generators: generators.iter().map(|g| g.index()).collect(), count };
            emit(&output, None)?;
            Ok(true)
        }
        Command::Design { q, i, samples, seed } => {
            let c = construction(q)?;
            let mode = match samples {
                Some(pairs) => PairMode::Sampled { pairs, seed },
                None => PairMode::All,
            };
            let report = designs::verify_design_iso(&c, element(&c, i)?, mode)?;
            emit(&report, None)?;
            Ok(report.crit_holds && report.det_a_nonzero)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
