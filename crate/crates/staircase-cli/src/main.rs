//! Smoothness analysis of monomial-ideal points on Hilbert schemes of
//! points, from the command line.
//!
//! Exit codes: `analyze` returns 0 for a smooth point, 1 for a singular one,
//! 2 on any error; `census` returns 0 when every check passes, 1 on a
//! verified counterexample, 2 on any error; `make` returns 0 or 2.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use staircase_cli::census::{self, CensusOptions, Suite};
use staircase_cli::format;
use staircase_cli::report;
use staircase_core::oracle::HomSystem;
use staircase_core::staircase::{BasisSet, BoxSpec};

#[derive(Parser)]
#[command(
    name = "staircase",
    version,
    about = "Decide smoothness of monomial-ideal points on Hilbert schemes of points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a staircase file and report dimensions, witnesses, and the
    /// oracle cross-check.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also dump the deformation system as sparse triplets.
        #[arg(long)]
        dump_system: Option<PathBuf>,
        /// List the standard bunch, grouped by variable and offset.
        #[arg(long)]
        show_bunch: bool,
    },
    /// Enumerate every staircase with up to MAX_SIZE monomials in VARS
    /// variables and verify the structure theorems on all of them.
    Census {
        vars: usize,
        max_size: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        verify: SuiteArg,
        /// Worker threads for the instance fan-out.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Seed for the randomized constructor suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write constructor outputs as staircase files.
    Make {
        #[command(subcommand)]
        kind: MakeCommand,
    },
}

#[derive(Subcommand)]
enum MakeCommand {
    /// A full box, e.g. `make box 2,3 out.stairs`.
    Box { widths: String, out: PathBuf },
    /// Replicate a staircase along a new last variable.
    Thicken {
        input: PathBuf,
        width: u32,
        out: PathBuf,
    },
    /// Divide out a pure power; VAR is 1-based.
    Truncate {
        input: PathBuf,
        var: usize,
        height: u32,
        out: PathBuf,
    },
    /// Translate along VAR (1-based) by HEIGHT and fill with the box of the
    /// given widths (comma-separated, entry VAR equal to HEIGHT).
    Addbox {
        input: PathBuf,
        var: usize,
        height: u32,
        widths: String,
        out: PathBuf,
    },
    /// Union of two boxes given as comma-separated width lists.
    Union {
        first: String,
        second: String,
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Oracle,
    #[value(name = "2var")]
    TwoVar,
    #[value(name = "3var")]
    ThreeVar,
    Boxes,
    Thicken,
    Truncate,
    Addbox,
    Union,
}

impl From<SuiteArg> for Suite {
    fn from(arg: SuiteArg) -> Self {
        match arg {
            SuiteArg::All => Suite::All,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::TwoVar => Suite::TwoVar,
            SuiteArg::ThreeVar => Suite::ThreeVar,
            SuiteArg::Boxes => Suite::Boxes,
            SuiteArg::Thicken => Suite::Thicken,
            SuiteArg::Truncate => Suite::Truncate,
            SuiteArg::Addbox => Suite::AddBox,
            SuiteArg::Union => Suite::Union,
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze {
            path,
            format,
            dump_system,
            show_bunch,
        } => cmd_analyze(&path, format, dump_system.as_deref(), show_bunch),
        Command::Census {
            vars,
            max_size,
            verify,
            jobs,
            seed,
            format,
        } => cmd_census(vars, max_size, verify, jobs, seed, format),
        Command::Make { kind } => cmd_make(kind),
    }
}

fn cmd_analyze(
    path: &std::path::Path,
    format: Format,
    dump: Option<&std::path::Path>,
    show_bunch: bool,
) -> ExitCode {
    let beta = match read_staircase(path) {
        Ok(beta) => beta,
        Err(message) => return fail(&message),
    };
    if let Some(dump_path) = dump {
        let system = HomSystem::assemble(&beta);
        if let Err(e) = fs::write(dump_path, format::write_system(&system)) {
            return fail(&format!("{}: {e}", dump_path.display()));
        }
    }
    let analysis = report::analyze(&beta);
    match format {
        Format::Text => {
            print!("{}", report::render_text(&analysis));
            if show_bunch {
                print!(
                    "{}",
                    report::render_bunch(&staircase_core::bunch::build_bunch(&beta))
                );
            }
        }
        Format::Json => println!("{}", report::render_json(&analysis)),
    }
    if analysis.smooth {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_census(
    vars: usize,
    max_size: usize,
    verify: SuiteArg,
    jobs: usize,
    seed: u64,
    format: Format,
) -> ExitCode {
    if vars == 0 || max_size == 0 {
        return fail("vars and max_size must be positive");
    }
    if jobs == 0 {
        return fail("--jobs must be positive");
    }
    let opts = CensusOptions {
        verify: verify.into(),
        jobs,
        seed,
    };
    match census::run_census(vars, max_size, &opts) {
        Ok(report) => {
            match format {
                Format::Text => print!("{}", census::render_text(&report)),
                Format::Json => println!("{}", census::render_json(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(violation) => {
            match format {
                Format::Text => print!("{}", census::render_violation_text(&violation)),
                Format::Json => println!("{}", census::render_violation_json(&violation)),
            }
            ExitCode::from(1)
        }
    }
}

/// Cap on materialized box volumes, to catch mistyped widths before they
/// exhaust memory.
const MAX_BOX_VOLUME: u128 = 1_000_000;

fn cmd_make(kind: MakeCommand) -> ExitCode {
    let built: Result<(BasisSet, PathBuf), String> = match kind {
        MakeCommand::Box { widths, out } => parse_widths(&widths)
            .and_then(|w| BoxSpec::new(w).map_err(|e| e.to_string()))
            .and_then(|spec| {
                check_volume(&spec)?;
                Ok((BasisSet::from_box(&spec), out))
            }),
        MakeCommand::Thicken { input, width, out } => read_staircase(&input).and_then(|b| {
            if width == 0 {
                Err("width must be positive".into())
            } else {
                Ok((b.thicken(width), out))
            }
        }),
        MakeCommand::Truncate {
            input,
            var,
            height,
            out,
        } => read_staircase(&input).and_then(|b| {
            let var = check_var(var, b.arity())?;
            if height == 0 {
                return Err("height must be positive".into());
            }
            b.truncate(var, height)
                .map(|t| (t, out))
                .map_err(|e| e.to_string())
        }),
        MakeCommand::Addbox {
            input,
            var,
            height,
            widths,
            out,
        } => read_staircase(&input).and_then(|b| {
            let var = check_var(var, b.arity())?;
            let widths = parse_widths(&widths)?;
            if let Ok(spec) = BoxSpec::new(widths.clone()) {
                check_volume(&spec)?;
            }
            b.add_box(var, height, &widths)
                .map(|g| (g, out))
                .map_err(|e| e.to_string())
        }),
        MakeCommand::Union { first, second, out } => {
            let build =
                |s: &str| parse_widths(s).and_then(|w| BoxSpec::new(w).map_err(|e| e.to_string()));
            build(&first).and_then(|a| {
                let b = build(&second)?;
                if a.arity() != b.arity() {
                    return Err("boxes must have the same number of widths".into());
                }
                check_volume(&a)?;
                check_volume(&b)?;
                Ok((BasisSet::two_box_union(&a, &b), out))
            })
        }
    };
    match built {
        Ok((beta, out)) => {
            if let Err(e) = fs::write(&out, format::write_staircase(&beta)) {
                return fail(&format!("{}: {e}", out.display()));
            }
            println!(
                "wrote {}: r={} n={}",
                out.display(),
                beta.arity(),
                beta.len()
            );
            ExitCode::SUCCESS
        }
        Err(message) => fail(&message),
    }
}

fn read_staircase(path: &std::path::Path) -> Result<BasisSet, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    format::parse_staircase(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_widths(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad width `{part}`"))
        })
        .collect()
}

fn check_volume(spec: &BoxSpec) -> Result<(), String> {
    if spec.volume() > MAX_BOX_VOLUME {
        return Err(format!(
            "box {spec} holds {} monomials, over the {MAX_BOX_VOLUME} limit",
            spec.volume()
        ));
    }
    Ok(())
}

fn check_var(var: usize, arity: usize) -> Result<usize, String> {
    if var == 0 || var > arity {
        Err(format!("variable index {var} out of range 1..={arity}"))
    } else {
        Ok(var - 1)
    }
}

fn fail(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}
