use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use sortnet::encode::{build, to_dimacs, EncodeOptions};
use sortnet::network::{first_layer, unsorted_inputs, FirstLayerStyle};
use sortnet::prover::{self, CampaignResult, Claim, Mode, ProverConfig};
use sortnet::saturation::is_saturated;
use sortnet::solver::{run_solver_on_file, SolverConfig, Verdict};
use sortnet::words::{for_each_second_layer, generate_sentences, net_of};
use sortnet::{Network, SetKind};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_INCONCLUSIVE: u8 = 30;

#[derive(Parser, Debug)]
#[command(name = "sortnet", version, about = "Search for and prove bounds on depth-optimal sorting networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SetArg {
    Gn,
    Rgn,
    Sn,
    Rsn,
    Rn,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Free,
    Layer1,
    TwoLayer,
}

#[derive(clap::Args, Debug)]
struct SolverArgs {
    /// Solver executable; defaults to SAT_SOLVER, then cadical or kissat on PATH.
    #[arg(long)]
    solver: Option<PathBuf>,
    /// Per-instance timeout in seconds.
    #[arg(long, default_value_t = 3600)]
    timeout: u64,
}

impl SolverArgs {
    fn config(&self) -> sortnet::Result<SolverConfig> {
        if self.timeout == 0 {
            return Err(sortnet::Error::InvalidArgument("timeout must be positive".into()));
        }
        let cfg = match &self.solver {
            Some(path) => SolverConfig::new(path),
            None => SolverConfig::discover()?,
        };
        Ok(cfg.with_timeout(Duration::from_secs(self.timeout)))
    }
}

#[derive(clap::Args, Debug)]
struct CampaignArgs {
    #[command(flatten)]
    solver: SolverArgs,
    /// Parallel solver processes; defaults to the number of cores.
    #[arg(long)]
    workers: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

impl CampaignArgs {
    fn config(&self) -> sortnet::Result<ProverConfig> {
        let mut cfg = ProverConfig::new(self.solver.config()?);
        if let Some(w) = self.workers {
            cfg.workers = w.max(1);
        }
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a prefix family: sentences for class sets, network JSON lines for layer sets.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        set: SetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the DIMACS formula for a depth-D sorting network.
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
        /// Network JSON file whose layers are fixed.
        #[arg(long, conflicts_with = "prefix_index")]
        prefix: Option<PathBuf>,
        /// 1-based index into the sorted representative prefixes.
        #[arg(long)]
        prefix_index: Option<usize>,
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long)]
        no_sigma1: bool,
        #[arg(long)]
        no_sigma2: bool,
        #[arg(long)]
        no_sigma3: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the solver on a DIMACS file.
    Solve {
        #[arg(long)]
        cnf: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Look for a sorting network and print it as JSON.
    Find {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::TwoLayer)]
        mode: ModeArg,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Show that no sorting network of the given depth exists; prints a JSON report.
    Prove {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
        /// Comma-separated pads tried largest first; defaults to n-4,n-6,0.
        #[arg(long, value_delimiter = ',')]
        pads: Option<Vec<usize>>,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Check that no saturated class subsumes another; writes classA,classB,subsumes rows.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the prefix count table as CSV and report differences from the reference values.
    Tables {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn sink(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn run(command: Command) -> sortnet::Result<u8> {
    match command {
        Command::Gen { n, set, out } => {
            let mut w = sink(out.as_deref())?;
            gen(n, set, &mut *w)?;
            w.flush()?;
            Ok(0)
        }
        Command::Encode { n, depth, prefix, prefix_index, pad, no_sigma1, no_sigma2, no_sigma3, out } => {
            let prefix = match (prefix, prefix_index) {
                (Some(path), _) => Some(Network::from_json(&fs::read_to_string(path)?)?),
                (None, Some(k)) => Some(indexed_prefix(n, k)?),
                (None, None) => None,
            };
            let opts = EncodeOptions { sigma1: !no_sigma1, sigma2: !no_sigma2, sigma3: !no_sigma3, pad, prefix };
            let inputs = unsorted_inputs(n, opts.prefix.as_ref())?;
            let (vm, cnf) = build(n, depth, &inputs, &opts)?;
            fs::write(&out, to_dimacs(&cnf))?;
            eprintln!("{} variables, {} clauses, {} inputs", vm.num_vars(), cnf.clauses.len(), vm.inputs().len());
            Ok(0)
        }
        Command::Solve { cnf, solver } => {
            let result = run_solver_on_file(&cnf, &solver.config()?)?;
            match result.verdict {
                Verdict::Sat => {
                    println!("s SATISFIABLE");
                    let model = result.model.unwrap_or_default();
                    let lits: Vec<String> =
                        (1..model.len()).map(|v| if model[v] { v.to_string() } else { format!("-{v}") }).collect();
                    println!("v {} 0", lits.join(" "));
                    Ok(EXIT_SAT)
                }
                Verdict::Unsat => {
                    println!("s UNSATISFIABLE");
                    Ok(EXIT_UNSAT)
                }
                Verdict::Timeout => {
                    println!("s UNKNOWN");
                    if let Some(note) = result.note {
                        eprintln!("{note}");
                    }
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Find { n, depth, mode, campaign } => {
            let mode = match mode {
                ModeArg::Free => Mode::Free,
                ModeArg::Layer1 => Mode::Layer1,
                ModeArg::TwoLayer => Mode::TwoLayer,
            };
            let (found, report) = prover::find_network(n, depth, mode, &campaign.config()?)?;
            save_report(&report, campaign.report.as_deref())?;
            match found {
                Some(net) => {
                    println!("{}", net.to_json());
                    Ok(EXIT_SAT)
                }
                None => Ok(claim_code(report.claim)),
            }
        }
        Command::Prove { n, depth, pads, campaign } => {
            let pads = pads.unwrap_or_else(|| prover::default_pads(n));
            let report = prover::prove_lower_bound(n, depth, &pads, &campaign.config()?)?;
            save_report(&report, campaign.report.as_deref())?;
            println!("{}", report.to_json());
            Ok(claim_code(report.claim))
        }
        Command::Conjecture { n, out } => {
            let rows = sortnet::saturation::conjecture_table(n)?;
            let mut w = sink(out.as_deref())?;
            writeln!(w, "class_a,class_b,subsumes")?;
            for (a, b, sub) in &rows {
                writeln!(w, "{a},{b},{sub}")?;
            }
            w.flush()?;
            let holds = rows.iter().all(|r| !r.2);
            eprintln!("{} ordered pairs, conjecture {}", rows.len(), if holds { "holds" } else { "fails" });
            Ok(if holds { 0 } else { 1 })
        }
        Command::Tables { max_n, out } => {
            let report = sortnet::tables::reproduce_tables(max_n)?;
            let mut w = sink(out.as_deref())?;
            w.write_all(report.to_csv().as_bytes())?;
            w.flush()?;
            eprint!("{}", report.diff());
            eprintln!("{} cells differ from the reference values", report.mismatches.len());
            Ok(0)
        }
    }
}

fn claim_code(claim: Claim) -> u8 {
    match claim {
        Claim::AtMost(_) => EXIT_SAT,
        Claim::GreaterThan(_) => EXIT_UNSAT,
        Claim::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn save_report(report: &CampaignResult, path: Option<&Path>) -> sortnet::Result<()> {
    match path {
        Some(p) => report.export(p),
        None => Ok(()),
    }
}

fn indexed_prefix(n: usize, k: usize) -> sortnet::Result<Network> {
    let reps = generate_sentences(n, SetKind::Rn)?;
    let s = k
        .checked_sub(1)
        .and_then(|i| reps.get(i))
        .ok_or(sortnet::Error::PrefixIndex { index: k, count: reps.len() })?;
    Ok(net_of(s))
}

fn gen(n: usize, set: SetArg, w: &mut dyn Write) -> sortnet::Result<()> {
    let kind = match set {
        SetArg::Rgn => SetKind::RGn,
        SetArg::Rsn => SetKind::RSn,
        SetArg::Rn => SetKind::Rn,
        SetArg::Gn | SetArg::Sn => {
            let f = first_layer(n, FirstLayerStyle::Adjacent);
            let saturated_only = matches!(set, SetArg::Sn);
            let mut result = Ok(());
            for_each_second_layer(n, &mut |l2| {
                if result.is_err() {
                    return;
                }
                result = (|| {
                    let net = Network::from_layers(n, vec![f.clone(), l2.clone()])?;
                    if !saturated_only || is_saturated(&net)? {
                        writeln!(w, "{}", serde_json::to_string(&net)?)?;
                    }
                    Ok(())
                })();
            });
            return result;
        }
    };
    for s in generate_sentences(n, kind)? {
        writeln!(w, "{s}")?;
    }
    Ok(())
}
