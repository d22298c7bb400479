//! Command-line front end: batch invariant computation, diagram rewrites,
//! normal forms, equivalence decisions and the randomized verification
//! suites.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 suite failure.

mod suites;

use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use weldmilnor::classify::{count_sm, count_wm, equivalent_2n_sv, equivalent_sv, equivalent_vn_sv, order_vn_group};
use weldmilnor::gausscode::MoveSite;
use weldmilnor::milnor::invariant_table;
use weldmilnor::moves::{apply_vn, delete_2n, insert_2n, virtualize_crossing, VnDirection};
use weldmilnor::wtree::{generator_power, normal_form_2n_sv, normal_form_sv, normal_form_vn_sv};
use weldmilnor::GaussCode;

#[derive(Parser)]
#[command(
    name = "weldmilnor",
    about = "Milnor invariants, local moves and normal forms for welded string links",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Milnor invariant table of a diagram as TSV.
    Invariants(InvariantsArgs),
    /// Compute a normal-form representative and its exponent table.
    NormalForm(NormalFormArgs),
    /// Apply a 2n-move, V^n-move or crossing virtualization to a diagram.
    ApplyMove(ApplyMoveArgs),
    /// Decide an equivalence relation between two diagrams.
    Equiv(EquivArgs),
    /// Run a randomized verification suite.
    Verify(VerifyArgs),
    /// Evaluate the counting formulas s_m, w_m and n^{w_m}.
    Count(CountArgs),
    /// Emit a generator link W_Ii as a diagram.
    Gen(GenArgs),
}

#[derive(Args)]
struct InvariantsArgs {
    /// Diagram file in the JSON interchange format.
    file: String,
    /// Largest sequence length to tabulate.
    #[arg(long = "max-len", default_value_t = 2)]
    max_len: usize,
    /// Restrict to sequences with pairwise-distinct entries.
    #[arg(long = "non-repeated")]
    non_repeated: bool,
    /// Reduce every value into [0, n).
    #[arg(long = "mod")]
    modulus: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Relation {
    Sv,
    #[value(name = "2n-sv")]
    TwoNSv,
    #[value(name = "vn-sv")]
    VnSv,
}

#[derive(Args)]
struct NormalFormArgs {
    file: String,
    /// Which equivalence relation the representative is taken under.
    #[arg(long, value_enum)]
    relation: Relation,
    /// Modulus for the mod-n relations; ignored for sv.
    #[arg(long)]
    n: Option<u64>,
    /// Write the representative diagram to this file instead of stdout.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MoveKind {
    #[value(name = "2n")]
    TwoN,
    Vn,
    Virtualize,
}

#[derive(Args)]
struct ApplyMoveArgs {
    file: String,
    /// Move family to apply.
    #[arg(long = "move", value_enum)]
    kind: MoveKind,
    /// Site as `strand_a,pos_a,strand_b,pos_b` (strands 1-based,
    /// positions 0-based insertion points). Needed for 2n and vn.
    #[arg(long)]
    site: Option<String>,
    /// Twist count for 2n-moves / crossing count for V^n-moves.
    #[arg(long)]
    n: Option<usize>,
    /// Crossing sign of the inserted pattern.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    sign: i8,
    /// Delete instead of insert (2n), or virtualize instead of
    /// classicalize (vn).
    #[arg(long)]
    reverse: bool,
    /// Crossing id for `--move virtualize`.
    #[arg(long)]
    id: Option<u32>,
}

#[derive(Args)]
struct EquivArgs {
    file_a: String,
    file_b: String,
    #[arg(long, value_enum)]
    relation: Relation,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// isotopy | 2n | vn | prime-p | counting | normal-form | implication
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct GenArgs {
    /// Strand count of the ambient trivial link.
    #[arg(long)]
    m: usize,
    /// The sequence I, comma-joined 1-based strand numbers.
    #[arg(long)]
    seq: String,
    /// Head strand i (1-based).
    #[arg(long)]
    head: usize,
    /// Emit W_Ii^{-1} instead of W_Ii.
    #[arg(long)]
    inverse: bool,
    /// Stacked power (must be positive; combine with --inverse for
    /// negative exponents).
    #[arg(long, default_value_t = 1)]
    power: usize,
}

enum CliError {
    Usage(String),
    Input(String),
    SuiteFailure,
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(1),
            CliError::Input(_) => ExitCode::from(2),
            CliError::SuiteFailure => ExitCode::from(3),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("usage error: {}", msg),
                CliError::Input(msg) => eprintln!("input error: {}", msg),
                CliError::SuiteFailure => {}
            }
            err.exit_code()
        }
    }
}

fn load_diagram(path: &str) -> Result<GaussCode, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", path, e)))?;
    GaussCode::from_json(&text).map_err(|e| CliError::Input(e.to_string()))
}

fn parse_site(text: &str, code: &GaussCode) -> Result<MoveSite, CliError> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad site `{}`", text)))?;
    if parts.len() != 4 {
        return Err(CliError::Usage(
            "site must be strand_a,pos_a,strand_b,pos_b".into(),
        ));
    }
    let m = code.strand_count();
    if parts[0] < 1 || parts[0] > m || parts[2] < 1 || parts[2] > m {
        return Err(CliError::Usage(format!(
            "site strands must be in 1..={}",
            m
        )));
    }
    Ok(MoveSite {
        strand_a: parts[0] - 1,
        pos_a: parts[1],
        strand_b: parts[2] - 1,
        pos_b: parts[3],
    })
}

fn require_n<T: Copy>(n: Option<T>, what: &str) -> Result<T, CliError> {
    n.ok_or_else(|| CliError::Usage(format!("--n is required for {}", what)))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Invariants(args) => {
            if args.max_len < 2 {
                return Err(CliError::Usage("--max-len must be at least 2".into()));
            }
            let code = load_diagram(&args.file)?;
            let table = invariant_table(&code, args.max_len, args.non_repeated)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let table = match args.modulus {
                Some(n) if n >= 1 => table.reduce_mod(n),
                Some(_) => return Err(CliError::Usage("--mod must be at least 1".into())),
                None => table,
            };
            print!("{}", table.to_tsv());
            Ok(())
        }
        Command::NormalForm(args) => {
            let code = load_diagram(&args.file)?;
            let (rep, expo) = match args.relation {
                Relation::Sv => normal_form_sv(&code),
                Relation::TwoNSv => normal_form_2n_sv(&code, require_n(args.n, "2n-sv")?),
                Relation::VnSv => normal_form_vn_sv(&code, require_n(args.n, "vn-sv")?),
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            let json = rep.to_json();
            match args.output {
                Some(path) => fs::write(&path, format!("{}\n", json))
                    .map_err(|e| CliError::Input(format!("cannot write {}: {}", path, e)))?,
                None => println!("{}", json),
            }
            print!("{}", expo.to_tsv());
            Ok(())
        }
        Command::ApplyMove(args) => {
            let code = load_diagram(&args.file)?;
            let moved = match args.kind {
                MoveKind::TwoN => {
                    let site = parse_site(
                        args.site
                            .as_deref()
                            .ok_or_else(|| CliError::Usage("--site is required for 2n".into()))?,
                        &code,
                    )?;
                    let n = require_n(args.n, "2n")?;
                    if args.reverse {
                        delete_2n(&code, &site, n)
                    } else {
                        insert_2n(&code, &site, n, args.sign)
                    }
                }
                MoveKind::Vn => {
                    let site = parse_site(
                        args.site
                            .as_deref()
                            .ok_or_else(|| CliError::Usage("--site is required for vn".into()))?,
                        &code,
                    )?;
                    let n = require_n(args.n, "vn")?;
                    let direction = if args.reverse {
                        VnDirection::Virtualize
                    } else {
                        VnDirection::Classicalize
                    };
                    apply_vn(&code, n, direction, &site, args.sign)
                }
                MoveKind::Virtualize => {
                    let id = args
                        .id
                        .ok_or_else(|| CliError::Usage("--id is required for virtualize".into()))?;
                    virtualize_crossing(&code, id)
                }
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            println!("{}", moved.to_json());
            Ok(())
        }
        Command::Equiv(args) => {
            let a = load_diagram(&args.file_a)?;
            let b = load_diagram(&args.file_b)?;
            let verdict = match args.relation {
                Relation::Sv => equivalent_sv(&a, &b),
                Relation::TwoNSv => equivalent_2n_sv(&a, &b, require_n(args.n, "2n-sv")?),
                Relation::VnSv => equivalent_vn_sv(&a, &b, require_n(args.n, "vn-sv")?),
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            println!("{}", verdict);
            Ok(())
        }
        Command::Verify(args) => {
            let report = match args.suite.as_str() {
                "isotopy" => suites::isotopy_suite(args.seed, args.trials),
                "2n" => suites::two_n_suite(args.seed, args.trials),
                "vn" => suites::vn_suite(args.seed, args.trials),
                "prime-p" => suites::prime_p_suite(args.seed, args.trials),
                "counting" => suites::counting_suite(),
                "normal-form" => suites::normal_form_suite(args.seed, args.trials),
                "implication" => suites::implication_suite(args.seed, args.trials),
                other => {
                    return Err(CliError::Usage(format!("unknown suite `{}`", other)));
                }
            };
            print!("{}", report.text);
            if report.failures > 0 {
                return Err(CliError::SuiteFailure);
            }
            Ok(())
        }
        Command::Count(args) => {
            if args.m < 1 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            println!(
                "m={} s_m={} w_m={}",
                args.m,
                count_sm(args.m),
                count_wm(args.m)
            );
            if let Some(n) = args.n {
                if n < 1 {
                    return Err(CliError::Usage("--n must be at least 1".into()));
                }
                println!("n={} order_vn_sv={}", n, order_vn_group(args.m, n));
            }
            Ok(())
        }
        Command::Gen(args) => {
            let seq: Vec<usize> = args
                .seq
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("bad sequence `{}`", args.seq)))?;
            if args.power < 1 {
                return Err(CliError::Usage("--power must be at least 1".into()));
            }
            let exponent = if args.inverse {
                -BigInt::from(args.power)
            } else {
                BigInt::from(args.power)
            };
            let code = generator_power(args.m, &seq, args.head, &exponent)
                .map_err(|e| CliError::Input(e.to_string()))?;
            println!("{}", code.to_json());
            Ok(())
        }
    }
}
