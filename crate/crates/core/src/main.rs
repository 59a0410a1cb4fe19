//! Command-line front end: parses a geometry manifest, dispatches to the
//! library, and prints tables or machine records. No numerics live here.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use toric_ogw::gkz;
use toric_ogw::manifest::{parse_manifest, Manifest};
use toric_ogw::mirror::MirrorMap;
use toric_ogw::opengw::OpenGw;
use toric_ogw::render;
use toric_ogw::toric::ToricCYData;

/// Exit status: hard errors (I/O, parse, unsupported computation).
const EXIT_ERROR: u8 = 1;
/// Exit status: the manifest parsed but its invariants are violated.
const EXIT_INVALID: u8 = 2;
/// Exit status: a GKZ residual survived.
const EXIT_RESIDUAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "toric-ogw",
    version,
    about = "Open Gromov-Witten invariants of toric Calabi-Yau manifolds, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Path to the geometry manifest
    manifest: PathBuf,
    /// Truncation order (overrides the manifest)
    #[arg(long)]
    order: Option<u32>,
    /// Emit tab-separated machine records instead of tables
    #[arg(long)]
    machine: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the manifest against every construction invariant
    Validate(Common),
    /// Normalized volume of the lattice polytope (solution-count prediction)
    Volume(Common),
    /// Hypergeometric correction series of the compactified geometry
    Xi {
        #[command(flatten)]
        common: Common,
        /// Restrict to one ray index (default: all rays)
        #[arg(long)]
        ray: Option<usize>,
    },
    /// Forward mirror-map components log q_a(y)
    MirrorMap(Common),
    /// Inverted mirror-map components y_a(q)
    Invert(Common),
    /// Open Gromov-Witten invariant table of the generating function
    OpenGw(Common),
    /// SYZ-map components y_a(q) from the generating-function product formula
    Syz(Common),
    /// Apply the GKZ operators to the mirror-map components and report residuals
    GkzCheck {
        #[command(flatten)]
        common: Common,
        /// Largest total degree of operator degrees to test
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Volume(c)
            | Command::MirrorMap(c)
            | Command::Invert(c)
            | Command::OpenGw(c)
            | Command::Syz(c) => c,
            Command::Xi { common, .. } | Command::GkzCheck { common, .. } => common,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();

    let text = match std::fs::read_to_string(&common.manifest) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", common.manifest.display());
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let manifest = match parse_manifest(&text) {
        Ok(m) => m,
        Err(err) => {
            eprintln!("error: {}: {err}", common.manifest.display());
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let data = manifest.to_data();
    let report = data.validate();
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }

    if let Command::Validate(_) = cli.command {
        println!("{}: {report}", manifest.display_name());
        return if report.is_ok() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_INVALID)
        };
    }
    if !report.is_ok() {
        eprintln!("error: invalid manifest\n{report}");
        return ExitCode::from(EXIT_INVALID);
    }

    let order = common.order.unwrap_or(manifest.order);
    match run(&cli.command, &manifest, &data, order) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(
    command: &Command,
    manifest: &Manifest,
    data: &ToricCYData,
    order: u32,
) -> Result<ExitCode, String> {
    let machine = command.common().machine;
    match command {
        Command::Validate(_) => unreachable!("handled before dispatch"),
        Command::Volume(_) => {
            let volume = data
                .normalized_volume(manifest.cones.as_deref())
                .map_err(|e| e.to_string())?;
            if machine {
                print!("{}", render::volume_record(volume));
            } else {
                println!(
                    "normalized volume of the polytope of {}: {volume}",
                    manifest.display_name()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Xi { ray, .. } => {
            let z = data.compactify().map_err(|e| e.to_string())?;
            let mm = MirrorMap::new(&z, order);
            let rays: Vec<usize> = match ray {
                Some(j) if *j >= mm.xi().len() => {
                    return Err(format!(
                        "ray index {j} out of range (geometry has {} rays)",
                        mm.xi().len()
                    ));
                }
                Some(j) => vec![*j],
                None => (0..mm.xi().len()).collect(),
            };
            for j in rays {
                let xi = &mm.xi()[j];
                if machine {
                    print!("{}", render::series_records("XI", Some(j), xi));
                } else {
                    println!("Xi_{j}(y), order {order}:");
                    print!("{}", render::series_table(xi));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::MirrorMap(_) => {
            let z = data.compactify().map_err(|e| e.to_string())?;
            let mm = MirrorMap::new(&z, order);
            for (a, logq) in mm.log_components().iter().enumerate() {
                let series = logq.series_part();
                if machine {
                    print!("{}", render::series_records("LOGQ", Some(a), &series));
                } else {
                    println!("log q_{}(y) = log y_{} + series:", a + 1, a + 1);
                    print!("{}", render::series_table(&series));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Invert(_) => {
            let z = data.compactify().map_err(|e| e.to_string())?;
            let mm = MirrorMap::new(&z, order);
            for (a, y_a) in mm.inverse().iter().enumerate() {
                if machine {
                    print!("{}", render::series_records("INVMAP", Some(a), y_a));
                } else {
                    println!("y_{}(q), order {order}:", a + 1);
                    print!("{}", render::series_table(y_a));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::OpenGw(_) => {
            let ogw = OpenGw::compute(data, order).map_err(|e| e.to_string())?;
            for warning in ogw.integrality_warnings() {
                eprintln!("warning: {warning}");
            }
            if machine {
                print!(
                    "{}",
                    render::series_records("GEN", None, ogw.generating_function())
                );
            } else {
                println!(
                    "open Gromov-Witten invariants of {} (order {order})",
                    manifest.display_name()
                );
                println!("  {:<12} {}", "alpha", "n(beta0+alpha)");
                for (expo, c) in ogw.invariant_table() {
                    println!(
                        "  {:<12} {}",
                        render::exponent_tuple(&expo),
                        render::rational_string(&c)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Syz(_) => {
            let ogw = OpenGw::compute(data, order).map_err(|e| e.to_string())?;
            for (a, y_a) in ogw.syz_map().iter().enumerate() {
                if machine {
                    print!("{}", render::series_records("SYZ", Some(a), y_a));
                } else {
                    println!("SYZ map component y_{}(q), order {order}:", a + 1);
                    print!("{}", render::series_table(y_a));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GkzCheck { degree_bound, .. } => {
            let z = data.compactify().map_err(|e| e.to_string())?;
            let report = gkz::check_solutions(&z, order, *degree_bound, manifest.cones.as_deref())
                .map_err(|e| e.to_string())?;
            if machine {
                print!("{}", render::residual_records(&report));
                print!("{}", render::volume_record(report.expected_solutions));
            } else {
                println!(
                    "GKZ check for {} (order {order}, degree bound {degree_bound})",
                    manifest.display_name()
                );
                println!("{report}");
                for entry in report.failures() {
                    println!(
                        "  nonzero residual: operator degree {}, component {}",
                        entry.degree,
                        entry.component + 1
                    );
                }
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_RESIDUAL)
            })
        }
    }
}
