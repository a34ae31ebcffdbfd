use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use glr_fock::boson::{bf_to_boson, bf_to_fermion, BosonVector, PowerMonomial};
use glr_fock::fock::{FockState, FockVector};
use glr_fock::glhat::RSetup;
use glr_fock::model::{realization, Model};
use glr_fock::rational;
use glr_fock::verify::{block, char_cells, check, CheckOptions, Truncation, CHECKS};
use glr_fock::word::Word;

/// Fock-space realizations of affine gl_r: run relation checks, apply
/// operator words, dump matrices, convert presentations.
///
/// Operator words are whitespace-separated letters E_k, F_k, H_k, L_n,
/// P_l(n), Psi_l(k), Psi*_l(k), alpha_l(n), applied RIGHTMOST FIRST.
/// States are written `c:[λ]` per colour, colours separated by ` | `.
#[derive(Debug, Parser)]
#[command(name = "glr-fock", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Args)]
struct Config {
    /// The parts r_1,…,r_s (sorted with a warning if not weakly increasing).
    #[arg(long, global = true, value_delimiter = ',', default_value = "1")]
    partition: Vec<u32>,
    /// Bound on the total energy of basis states.
    #[arg(long, global = true, default_value_t = 4)]
    max_energy: u32,
    /// Bound on every colour charge |c_l|.
    #[arg(long, global = true, default_value_t = 1)]
    charge_window: i64,
    /// Extra width for fermion index scans.
    #[arg(long, global = true, default_value_t = 0)]
    index_pad: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Which realization supplies the operators: geo or alg.
    #[arg(long, global = true, default_value = "geo")]
    model: Model,
    /// Print the conventions this tool adopts where the source material is
    /// ambiguous.
    #[arg(long, global = true)]
    paper_notes: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Fermion,
    Boson,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run relation checks; exit 1 if any relation fails.
    Verify {
        /// Comma-separated check names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
    },
    /// Apply an operator word to a state.
    Act {
        #[arg(long)]
        word: String,
        /// A state such as `0:[2,1] | -1:[]`, or `vacuum`.
        #[arg(long, default_value = "vacuum")]
        state: String,
    },
    /// Dump an operator's matrix on a graded block, e.g. `c=0;E=0->1`.
    Matrix {
        #[arg(long)]
        op: String,
        #[arg(long)]
        block: String,
    },
    /// Graded dimensions of the total-charge-zero block.
    Char,
    /// Convert between power-sum and charged-partition presentations.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        /// A basis element or a vector literal `{(…): c, …}`.
        input: String,
    },
}

const NOTES: &[&str] = &[
    "leg: leg_μ(i,j) = μ'_j - i, with μ'_j = 0 for a column outside μ (so legs may be negative)",
    "Chevalley index: k = r_1+…+r_{l-1} + k' with 0 ≤ k' ≤ r_l - 1",
    "Cartan matrix for a colour with r_l = 1 is [0]; for r = 2 it is [[2,-2],[-2,2]]",
    "normal ordering: :ψ(i)ψ*(j): is ψ(i)ψ*(j) for j > 0 and -ψ*(j)ψ(i) for j ≤ 0, so α_l(0) = c_l",
    "P_l(n) = α_l(n)/|n| for n ≠ 0; loops are I ⊗ t^n = |n| Σ_l r_l P_l(n r_l)",
    "residue class of box (i,j) in a colour of charge c is (j - i + c) mod r_l",
    "colours are numbered from 1; the colour sign is (-1)^(c_1+…+c_{l-1})",
];

/// A usage or parse error: exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn setup_of(config: &Config) -> Result<RSetup, Usage> {
    let (setup, moved) = RSetup::sorted(config.partition.clone())?;
    if moved {
        eprintln!("warning: partition sorted to {setup}");
    }
    Ok(setup)
}

fn trunc_of(config: &Config) -> Truncation {
    Truncation::new(config.max_energy, config.charge_window, config.index_pad)
}

fn parse_state(text: &str, s: usize) -> Result<FockState, Usage> {
    let st: FockState = if text.trim() == "vacuum" { FockState::vacuum(s) } else { text.parse()? };
    if st.s() != s {
        return Err(Usage(format!("state {st} has {} colours but the partition has {s}", st.s())));
    }
    Ok(st)
}

fn print_vector(v: &FockVector, format: Format) {
    match format {
        Format::Json => println!("{}", v.to_json()),
        Format::Table => println!("{v}"),
    }
}

fn cmd_verify(config: &Config, checks: &[String]) -> Result<ExitCode, Usage> {
    let setup = setup_of(config)?;
    let names: Vec<String> = if checks.iter().any(|c| c == "all") {
        CHECKS.iter().map(|c| c.to_string()).collect()
    } else {
        checks.to_vec()
    };
    if let Some(bad) = names.iter().find(|n| !CHECKS.contains(&n.as_str())) {
        return Err(Usage(format!("unknown check {bad:?}; known checks: {}", CHECKS.join(", "))));
    }
    let trunc = trunc_of(config);
    let opts = CheckOptions { model: config.model, seed: config.seed };
    let mut all_passed = true;
    for name in &names {
        let report = check(name, &setup, &trunc, &opts)?;
        eprintln!("{name}: {:.2?}", report.elapsed);
        all_passed &= report.passed;
        match config.format {
            Format::Json => println!("{}", serde_json::to_string(&report)?),
            Format::Table => {
                let verdict = if report.passed { "PASS" } else { "FAIL" };
                println!(
                    "{verdict}  {:<18} {} [{}]  basis {}  relations {}  violations {}",
                    report.check, report.setup, report.model, report.basis_size, report.relations_checked, report.violation_count
                );
                for v in &report.violations {
                    println!("      {} on {}: {} vs {}", v.relation, v.state, v.lhs, v.rhs);
                }
                for note in &report.notes {
                    println!("      note: {note}");
                }
            }
        }
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_act(config: &Config, word: &str, state: &str) -> Result<ExitCode, Usage> {
    let setup = setup_of(config)?;
    let word: Word = word.parse()?;
    let st = parse_state(state, setup.s())?;
    let real = realization(&setup, config.model);
    let op = word.operator(real.as_ref(), config.model)?;
    print_vector(&op.apply_state(&st), config.format);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BlockSpec {
    charges: Vec<i64>,
    energy: u32,
    target_energy: u32,
}

/// Sparse `[row, col, "p/q"]` triplets in row-major order.
#[derive(Serialize)]
struct MatrixDump {
    block: BlockSpec,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Value>,
}

/// `c=0,1;E=2->3` → charges, source energy, target energy.
fn parse_block(spec: &str, s: usize) -> Result<(Vec<i64>, u32, u32), Usage> {
    let bad = || Usage(format!("cannot parse block {spec:?}; expected e.g. \"c=0;E=0->1\""));
    let (mut charges, mut energies) = (None, None);
    for field in spec.split(';').map(str::trim) {
        match field.split_once('=').ok_or_else(bad)? {
            ("c", v) => {
                let cs: Vec<i64> = v.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
                charges = Some(cs);
            }
            ("E", v) => {
                let (a, b) = v.split_once("->").unwrap_or((v, v));
                energies = Some((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
            }
            _ => return Err(bad()),
        }
    }
    let charges = charges.ok_or_else(bad)?;
    if charges.len() != s {
        return Err(Usage(format!("block has {} charges but the partition has {s} colours", charges.len())));
    }
    let (from, to) = energies.ok_or_else(bad)?;
    Ok((charges, from, to))
}

fn cmd_matrix(config: &Config, op: &str, spec: &str) -> Result<ExitCode, Usage> {
    let setup = setup_of(config)?;
    let (charges, from, to) = parse_block(spec, setup.s())?;
    let word: Word = op.parse()?;
    let real = realization(&setup, config.model);
    let op = word.operator(real.as_ref(), config.model)?;
    let rows = block(&charges, from);
    let images: Vec<FockVector> = rows.iter().map(|x| op.apply_state(x)).collect();
    let targets: BTreeSet<Vec<i64>> = images.iter().flat_map(|v| v.states().map(FockState::charges)).collect();
    let cols: Vec<FockState> = targets.iter().flat_map(|c| block(c, to)).collect();
    let mut entries = Vec::new();
    let mut stray = 0;
    for (i, v) in images.iter().enumerate() {
        for (st, c) in v.iter() {
            match cols.binary_search(st) {
                Ok(j) => entries.push((i, j, rational::fmt(c))),
                Err(_) => stray += 1,
            }
        }
    }
    if stray > 0 {
        eprintln!("warning: {stray} image terms have energy other than {to} and are not shown");
    }
    match config.format {
        Format::Json => {
            let dump = MatrixDump {
                block: BlockSpec { charges, energy: from, target_energy: to },
                rows: rows.iter().map(ToString::to_string).collect(),
                cols: cols.iter().map(ToString::to_string).collect(),
                entries: entries.iter().map(|(i, j, c)| json!([i, j, c])).collect(),
            };
            let dump = serde_json::to_string(&dump)?;
            println!("{dump}");
        }
        Format::Table => {
            println!("{} rows × {} cols, {} nonzero entries", rows.len(), cols.len(), entries.len());
            for (i, j, c) in &entries {
                println!("  ({}) -> ({}): {c}", rows[*i], cols[*j]);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_char(config: &Config) -> Result<ExitCode, Usage> {
    let setup = setup_of(config)?;
    let cells = char_cells(setup.s(), &trunc_of(config));
    match config.format {
        Format::Json => println!("{}", serde_json::to_string(&cells)?),
        Format::Table => {
            println!("{:>6}  {:<16} {:>6}", "energy", "charges", "dim");
            for c in &cells {
                let charges: Vec<String> = c.charges.iter().map(i64::to_string).collect();
                println!("{:>6}  {:<16} {:>6}", c.energy, format!("({})", charges.join(",")), c.dim);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_convert(config: &Config, to: Target, input: &str) -> Result<ExitCode, Usage> {
    let literal = input.trim_start().starts_with('{');
    match to {
        Target::Fermion => {
            let v: BosonVector =
                if literal { input.parse()? } else { BosonVector::monomial(input.parse::<PowerMonomial>()?) };
            print_vector(&bf_to_fermion(&v), config.format);
        }
        Target::Boson => {
            let v: FockVector = if literal { input.parse()? } else { FockVector::basis(input.parse()?) };
            let b = bf_to_boson(&v);
            match config.format {
                Format::Json => {
                    let terms: Vec<Value> =
                        b.iter().map(|(m, c)| json!({"monomial": m.to_string(), "coeff": rational::fmt(c)})).collect();
                    println!("{}", json!({ "terms": terms }));
                }
                Format::Table => println!("{b}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = &cli.config;
    if config.paper_notes {
        let out = NOTES.iter().map(|n| format!("note: {n}")).collect::<Vec<_>>().join("\n");
        if cli.command.is_none() {
            println!("{out}");
        } else {
            eprintln!("{out}");
        }
    }
    let result = match &cli.command {
        None if config.paper_notes => Ok(ExitCode::SUCCESS),
        None => Err(Usage("no command given; see --help".to_string())),
        Some(Command::Verify { checks }) => cmd_verify(config, checks),
        Some(Command::Act { word, state }) => cmd_act(config, word, state),
        Some(Command::Matrix { op, block }) => cmd_matrix(config, op, block),
        Some(Command::Char) => cmd_char(config),
        Some(Command::Convert { to, input }) => cmd_convert(config, *to, input),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
