mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CliError;

#[derive(Parser)]
#[command(name = "billiards", version, about = "Translation surfaces of rational billiard tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the polygon comes from. Exactly one source must be given.
#[derive(Args, Clone, Debug)]
pub struct PolygonSource {
    /// Triangle angles in units of π, e.g. 1/2,1/8,3/8
    #[arg(long, value_delimiter = ',')]
    triangle: Option<Vec<String>>,
    /// Polygon JSON file
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Catalog family id (1, 2, ..., 5a, 5b, 5c, ..., 10)
    #[arg(long)]
    family: Option<String>,
    /// Parameter of the catalog family
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Unfold a polygon into its translation surface.
    Unfold {
        #[command(flatten)]
        source: PolygonSource,
        /// Write the surface JSON here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the faces
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Genus, Euler characteristic and cone points of a polygon or surface file.
    Analyze {
        /// Polygon or surface JSON file
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cylinder decomposition in one direction.
    Cylinders {
        #[command(flatten)]
        source: PolygonSource,
        /// Direction in units of π
        #[arg(long, default_value = "0")]
        direction: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Periodic or non-periodic verdict for the points over a vertex.
    NonperiodicTest {
        #[command(flatten)]
        source: PolygonSource,
        /// Vertex letter (a, b, c, ...), vertex index, or class:K
        #[arg(long)]
        point: String,
        /// Direction to try first, in units of π
        #[arg(long)]
        direction: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze the cover given by a tiling file.
    CheckCover {
        /// Tiling JSON file
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Treat the base surface as a lattice surface
        #[arg(long)]
        base_lattice: bool,
        /// Treat the base surface as square-tiled
        #[arg(long)]
        square_tiled: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// List the catalog, or show one entry.
    Catalog {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded search for a tiling with an appropriate cover.
    SearchAppropriate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_copies: usize,
        /// 1 for direct tilings, 2 through an intermediate polygon
        #[arg(long, default_value = "1")]
        class: String,
        #[arg(long, default_value_t = 200_000)]
        max_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for one SVG per rejected complete tiling
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Unfold { source, out, svg } => commands::unfold_surface(&source, out.as_deref(), svg.as_deref()),
        Command::Analyze { input, out } => commands::analyze(&input, out.as_deref()),
        Command::Cylinders { source, direction, out, svg } => {
            commands::cylinders(&source, &direction, out.as_deref(), svg.as_deref())
        }
        Command::NonperiodicTest { source, point, direction, out } => {
            commands::nonperiodic_test(&source, &point, direction.as_deref(), out.as_deref())
        }
        Command::CheckCover { input, base_lattice, square_tiled, out, svg } => {
            commands::check_cover(&input, base_lattice, square_tiled, out.as_deref(), svg.as_deref())
        }
        Command::Catalog { family, n, out } => commands::catalog(family.as_deref(), n, out.as_deref()),
        Command::SearchAppropriate { family, n, max_copies, class, max_nodes, out, svg_dir } => {
            commands::search(&family, n, max_copies, &class, max_nodes, out.as_deref(), svg_dir.as_deref())
        }
    }
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("BILLIARDS_PRECISION_FLOOR") {
        match v.parse::<u32>() {
            Ok(bits) if bits > 0 => billiards_core::exact::set_precision_floor(bits),
            _ => {
                eprintln!("{}", CliError::Usage(format!("BILLIARDS_PRECISION_FLOOR must be a positive integer, got {v:?}")).json());
                return ExitCode::from(2);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.json());
            ExitCode::from(e.exit_code())
        }
    }
}
