use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nomlog::algebra::{
    run_subst_suite, run_termlike_suite, AtomsAlgebra, FormulaAlgebra, SuiteConfig, SuiteReport, TermAlgebra,
};
use nomlog::gen::default_signature;
use nomlog::interp::{countermodel_search, denote_formula, is_valid, run_bridge_sweep, SweepConfig};
use nomlog::lattice::{run_lifted_nba_suite, NbaConfig};
use nomlog::lifted::{LiftedModel, LiftedProps, LiftedValues};
use nomlog::sequent::{check_derivation, parse_proof, Sequent};
use nomlog::syntax::{parse_formula, parse_formula_inferring, parse_term_inferring};
use nomlog::{OrdinaryModel, Signature};

#[derive(Parser)]
#[command(name = "nomlog", version, about = "Nominal semantics for first-order logic")]
struct Cli {
    /// Output style: prose for people, or one `key=value` record per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraKind {
    Atoms,
    Terms,
    Formulas,
    Lifted,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term, formula or sequent and print it canonically.
    Parse {
        #[arg(long, conflicts_with_all = ["term", "sequent"])]
        formula: Option<String>,
        #[arg(long, conflicts_with = "sequent")]
        term: Option<String>,
        #[arg(long)]
        sequent: Option<String>,
        /// Signature file (`fun f/2`, `pred P/1`); formers are inferred if absent.
        #[arg(long)]
        signature: Option<PathBuf>,
    },
    /// Check proof files and print the sequents they prove.
    CheckProof {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        signature: Option<PathBuf>,
    },
    /// Run the substitution-algebra axiom suite.
    CheckAxioms {
        #[arg(long, value_enum)]
        algebra: AlgebraKind,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        carrier_size: u32,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=8))]
        atom_pool: u32,
        #[arg(long)]
        signature: Option<PathBuf>,
    },
    /// Run the nominal-Boolean-algebra law suite on lifted propositions.
    CheckNba {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        carrier_size: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=6))]
        atom_pool: u32,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the lifted denotation of a formula in a model file.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Search small models for a refutation of a sequent.
    Countermodel {
        #[arg(long)]
        sequent: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=6))]
        max_size: u32,
    },
    /// Compare lifted denotations with Tarski evaluation on random inputs.
    BridgeTest {
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=4))]
        max_size: u32,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A run either completes (reporting whether every check passed) or fails
/// on its input.
type Outcome = Result<bool>;

/// `writeln!` to `out`, propagating write errors with `?`.
macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*)?
    };
}

macro_rules! out {
    ($out:expr, $($arg:tt)*) => {
        write!($out, $($arg)*)?
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("NOMLOG_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Parse {
            formula,
            term,
            sequent,
            signature,
        } => parse_cmd(out, fmt, formula, term, sequent, signature.as_deref()),
        Command::CheckProof { files, signature } => check_proof_cmd(out, fmt, &files, signature.as_deref()),
        Command::CheckAxioms {
            algebra,
            carrier_size,
            trials,
            seed,
            atom_pool,
            signature,
        } => {
            let cfg = SuiteConfig::new(trials as usize, seed, atom_pool as usize);
            let sig = match signature {
                Some(p) => load_signature(&p)?,
                None => default_signature(),
            };
            let reports = match algebra {
                AlgebraKind::Atoms => vec![run_termlike_suite(&AtomsAlgebra, "atoms", &cfg)],
                AlgebraKind::Terms => vec![run_termlike_suite(&TermAlgebra::new(sig), "terms", &cfg)],
                AlgebraKind::Formulas => vec![run_subst_suite(
                    &FormulaAlgebra::new(sig.clone()),
                    &TermAlgebra::new(sig),
                    "formulas",
                    &cfg,
                )],
                AlgebraKind::Lifted => {
                    let size = carrier_size as usize;
                    vec![
                        run_termlike_suite(&LiftedValues { size }, &format!("lifted-values-{size}"), &cfg),
                        run_subst_suite(
                            &LiftedProps { size },
                            &LiftedValues { size },
                            &format!("lifted-props-{size}"),
                            &cfg,
                        ),
                    ]
                }
            };
            print_reports(out, fmt, &reports)
        }
        Command::CheckNba {
            carrier_size,
            atom_pool,
            trials,
            seed,
        } => {
            let cfg = NbaConfig::new(trials as usize, seed, atom_pool as usize);
            let report = run_lifted_nba_suite(carrier_size as usize, &cfg);
            print_reports(out, fmt, &[report])
        }
        Command::Eval { model, formula } => eval_cmd(out, fmt, &model, &formula),
        Command::Countermodel { sequent, max_size } => {
            countermodel_cmd(out, fmt, &sequent, max_size as usize)
        }
        Command::BridgeTest {
            trials,
            max_size,
            depth,
            seed,
        } => {
            let mut cfg = SweepConfig::new(trials as usize, seed, max_size as usize);
            cfg.depth = depth as usize;
            print_reports(out, fmt, &[run_bridge_sweep(&cfg)])
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_signature(path: &Path) -> Result<Signature> {
    Signature::parse_file(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn parse_cmd(
    out: &mut dyn Write,
    fmt: Format,
    formula: Option<String>,
    term: Option<String>,
    sequent: Option<String>,
    signature: Option<&Path>,
) -> Outcome {
    let mut sig = match signature {
        Some(p) => load_signature(p)?,
        None => Signature::new(),
    };
    let (kind, canonical, fa) = if let Some(text) = formula {
        let phi = parse_formula_inferring(&text, &mut sig)?;
        ("formula", phi.to_string(), phi.fa())
    } else if let Some(text) = term {
        let t = parse_term_inferring(&text, &mut sig)?;
        ("term", t.to_string(), t.fa())
    } else if let Some(text) = sequent {
        let s = Sequent::parse(&text, &mut sig)?;
        ("sequent", s.to_string(), s.fa())
    } else {
        bail!("give one of --formula, --term or --sequent");
    };
    match fmt {
        Format::Human => {
            outln!(out, "{canonical}");
            outln!(out, "free atoms: {fa}");
        }
        Format::Machine => {
            outln!(out, "kind={kind}");
            outln!(out, "canonical={canonical}");
            outln!(out, "fa={fa}");
        }
    }
    Ok(true)
}

fn check_proof_cmd(out: &mut dyn Write, fmt: Format, files: &[PathBuf], signature: Option<&Path>) -> Outcome {
    let base = match signature {
        Some(p) => load_signature(p)?,
        None => Signature::new(),
    };
    let mut all_ok = true;
    for path in files {
        let mut sig = base.clone();
        let d = parse_proof(&read(path)?, &mut sig).with_context(|| format!("in {}", path.display()))?;
        let shown = path.display();
        match check_derivation(&d) {
            Ok(seq) => match fmt {
                Format::Human if files.len() == 1 => outln!(out, "{seq}"),
                Format::Human => outln!(out, "{shown}: {seq}"),
                Format::Machine => outln!(
                    out,
                    "file={shown} status=ok nodes={} conclusion={seq}",
                    d.node_count()
                ),
            },
            Err(e) => {
                all_ok = false;
                match fmt {
                    Format::Human => eprintln!("{shown}: rejected {e}"),
                    Format::Machine => outln!(out, "file={shown} status=rejected reason={e}"),
                }
            }
        }
    }
    Ok(all_ok)
}

fn eval_cmd(out: &mut dyn Write, fmt: Format, model: &Path, formula: &str) -> Outcome {
    let n = OrdinaryModel::parse(&read(model)?).with_context(|| format!("in {}", model.display()))?;
    let phi = parse_formula(formula, &n.signature())?;
    let m = LiftedModel::new(n);
    let denotation = denote_formula(&m, &phi)?;
    let valid = is_valid(&m, &phi)?;
    match fmt {
        Format::Human => {
            out!(out, "{denotation}");
            outln!(out, "valid: {}", if valid { "yes" } else { "no" });
        }
        Format::Machine => {
            outln!(out, "denotation={denotation:?}");
            outln!(out, "valid={valid}");
        }
    }
    Ok(true)
}

fn countermodel_cmd(out: &mut dyn Write, fmt: Format, sequent: &str, max_size: usize) -> Outcome {
    let seq = Sequent::parse(sequent, &mut Signature::new())?;
    let found = countermodel_search(&seq, max_size)?;
    match (found, fmt) {
        (None, Format::Human) => outln!(out, "no countermodel with carrier size up to {max_size}"),
        (None, Format::Machine) => outln!(out, "found=false max_size={max_size}"),
        (Some(c), Format::Human) => {
            outln!(out, "countermodel with carrier size {}:", c.model.size());
            out!(out, "{}", c.model);
            outln!(out, "valuation: {}", c.valuation);
            outln!(out, "meet of left: {:?}", c.left);
            outln!(out, "join of right: {:?}", c.right);
            outln!(
                out,
                "meet of left {} join of right",
                if c.witnesses_failure() {
                    "is not below"
                } else {
                    "is below"
                }
            );
        }
        (Some(c), Format::Machine) => {
            outln!(out, "found=true size={}", c.model.size());
            for line in c.model.to_string().lines() {
                outln!(out, "model={line}");
            }
            outln!(out, "valuation={}", c.valuation);
            outln!(out, "left={:?}", c.left);
            outln!(out, "right={:?}", c.right);
            outln!(out, "witness={}", c.witnesses_failure());
        }
    }
    Ok(true)
}

fn print_reports(out: &mut dyn Write, fmt: Format, reports: &[SuiteReport]) -> Outcome {
    for r in reports {
        match fmt {
            Format::Machine => out!(out, "{r}"),
            Format::Human => {
                outln!(out, "{}:", r.subject);
                for law in &r.laws {
                    let mark = if law.fail == 0 { "ok  " } else { "FAIL" };
                    outln!(
                        out,
                        "  {mark} {:<22} pass={:<6} skip={:<6} fail={}",
                        law.name,
                        law.pass,
                        law.skip,
                        law.fail
                    );
                    if let Some(c) = &law.counterexample {
                        outln!(out, "       smallest counterexample: {c}");
                    }
                }
            }
        }
    }
    Ok(reports.iter().all(SuiteReport::passed))
}

/// A closed stdout (as under `| head`) ends the run quietly.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>()
            .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
    })
}
