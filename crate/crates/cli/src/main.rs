use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wickforge_cli::{self as cli, json, MeshFormat, RunConfig};
use wickforge_core::catalog::Filter;
use wickforge_core::grid::Grid;
use wickforge_core::verify::{Property, DEFAULT_TOLERANCE};
use wickforge_core::{Error, Result, SliceSpec};

/// Verify geometric properties of holomorphic surfaces and their real slices.
#[derive(Parser)]
#[command(name = "wickforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Args)]
struct Common {
    /// Replace the sample box: u0,u1,nu,v0,v1,nv
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Zero-test tolerance, relative to 1 + max |h|
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Worker threads for grid sweeps
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let grid = self.grid.as_deref().map(Grid::parse_box).transpose()?;
        let cfg = RunConfig { tolerance: self.tol, grid, jobs: self.jobs };
        cfg.validate()?;
        Ok(cfg)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => Ok(std::fs::write(path, text)?),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check properties over a grid (catalog annotations when --prop is absent)
    Verify {
        /// Catalog id or JSON file
        target: String,
        /// Comma-separated: minimal, totally_geodesic, parallel, flat
        #[arg(long)]
        prop: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Check membership in a real slice and report the induced signature
    Slice {
        target: String,
        /// Slice name such as R3_1, or a JSON slice file
        #[arg(long)]
        slice: String,
        #[command(flatten)]
        common: Common,
    },
    /// Normal form of a complex-symmetric 2x2 matrix file
    Classify {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a triangulated mesh of a real-slice surface
    Mesh {
        target: String,
        #[arg(long, value_enum, default_value = "obj")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a Wick move and check that properties carry over
    Wick {
        target: String,
        /// Move file (JSON atom list) or the id a stored move leads to
        #[arg(long = "move")]
        mv: String,
        #[arg(long)]
        prop: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Inspect the catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// One line per entry
    List {
        #[arg(long)]
        prop: Option<Property>,
        /// Signature of the entry's slice
        #[arg(long)]
        signature: Option<usize>,
        /// Only entries inside a sphere
        #[arg(long)]
        sphere: bool,
    },
    /// Print an entry as JSON
    Show { id: String },
    /// Write every entry to a directory usable as WICKFORGE_DATA
    Export { dir: PathBuf },
}

fn parse_slice(arg: &str) -> Result<SliceSpec> {
    let path = std::path::Path::new(arg);
    if path.is_file() {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    } else {
        arg.parse()
    }
}

fn run(cli: Cli) -> Result<bool> {
    let catalog = cli::load_catalog()?;
    match cli.command {
        Command::Verify { target, prop, format, common } => {
            let cfg = common.config()?;
            let props = prop.as_deref().map(Property::parse_list).transpose()?;
            let t = cli::resolve(&catalog, &target)?;
            let report = cli::verify(&t, props.as_deref(), &cfg)?;
            let text = match format {
                Format::Json => json::to_string(&report)?,
                Format::Csv => report.to_csv()?,
                Format::Obj => return Err(Error::Parse("verify writes json or csv".into())),
            };
            common.emit(&text)?;
            let s = &report.summary;
            for c in &s.checks {
                let v = &s.verdicts[&c.property];
                eprintln!(
                    "{}: {} (expected {}, max residual {:.3e}, threshold {:.3e})",
                    c.property,
                    if c.holds { "holds" } else { "fails" },
                    c.expected,
                    v.max_residual,
                    v.threshold
                );
            }
            if let Some(k) = &s.curvature {
                eprintln!("K = {}: {} (max deviation {:.3e})", k.expected, if k.verdict.holds { "holds" } else { "fails" }, k.verdict.max_residual);
            }
            eprintln!("degenerate points: {} of {}", s.degenerate_count, s.total);
            Ok(s.passed)
        }
        Command::Slice { target, slice, common } => {
            let cfg = common.config()?;
            let spec = parse_slice(&slice)?;
            let out = cli::slice(&cli::resolve(&catalog, &target)?, &spec, &cfg)?;
            common.emit(&json::to_string(&out)?)?;
            match (&out.signature, out.in_slice) {
                (Some(s), true) => eprintln!("in-slice, signature {}", s.signature.map_or("varies".into(), |k| k.to_string())),
                _ => eprintln!("not-in-slice (residual {:.3e})", out.membership.worst()),
            }
            Ok(out.passed)
        }
        Command::Classify { matrix, out } => {
            let res = cli::classify(&std::fs::read_to_string(&matrix)?)?;
            let text = json::to_string(&res)?;
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Mesh { target, format, common } => {
            let cfg = common.config()?;
            let fmt = match format {
                Format::Obj => MeshFormat::Obj,
                Format::Csv => MeshFormat::Csv,
                Format::Json => return Err(Error::Parse("mesh writes obj or csv".into())),
            };
            common.emit(&cli::mesh(&cli::resolve(&catalog, &target)?, fmt, &cfg)?)?;
            Ok(true)
        }
        Command::Wick { target, mv, prop, common } => {
            let cfg = common.config()?;
            let props = prop.as_deref().map(Property::parse_list).transpose()?.unwrap_or_default();
            let t = cli::resolve(&catalog, &target)?;
            let (atoms, to) = cli::find_move(&t, &mv)?;
            let out = cli::wick(&catalog, &t, &atoms, to.as_deref(), &props, &cfg)?;
            common.emit(&json::to_string(&out)?)?;
            for r in &out.transfer {
                eprintln!("{}: transferred (source {:.3e}, target {:.3e})", r.property, r.source.max_residual, r.target.max_residual);
            }
            Ok(true)
        }
        Command::Catalog { action } => {
            match action {
                CatalogAction::List { prop, signature, sphere } => {
                    let filter = Filter { sphere_ambient: sphere.then_some(true), property: prop, signature, surfaces_only: false };
                    for e in catalog.list(&filter) {
                        let slice = e.slice.as_ref().map_or("-".to_string(), |s| format!("R{}_{}", s.ambient_dim(), s.signature()));
                        println!("{:<28} {:<6} {}", e.id, slice, e.description);
                    }
                }
                CatalogAction::Show { id } => print!("{}", serde_json::to_string_pretty(catalog.get(&id)?)? + "\n"),
                CatalogAction::Export { dir } => catalog.write_dir(dir)?,
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e))
        }
    }
}
