use std::path::Path;

use serde_json::Value;

use wickforge_core::catalog::{Catalog, CatalogEntry, Expected, StoredMove};
use wickforge_core::grid::Grid;
use wickforge_core::verify::Ambient;
use wickforge_core::{ChartProgram, Error, Result, SliceSpec, SurfaceChart};

/// Directory of catalog JSON files replacing the built-in registry.
pub const DATA_ENV: &str = "WICKFORGE_DATA";

pub fn load_catalog() -> Result<Catalog> {
    match std::env::var_os(DATA_ENV) {
        Some(dir) if !dir.is_empty() => Catalog::load_dir(dir),
        _ => Ok(Catalog::builtin()),
    }
}

/// A surface ready to be sampled, from the catalog or a user file.
#[derive(Clone, Debug)]
pub struct Target {
    pub id: String,
    pub ambient: Ambient,
    pub chart: SurfaceChart,
    pub grid: Grid,
    pub expected: Expected,
    pub slice: Option<SliceSpec>,
    pub moves: Vec<StoredMove>,
}

impl Target {
    fn from_entry(e: &CatalogEntry) -> Result<Self> {
        Ok(Target {
            id: e.id.clone(),
            ambient: e.ambient,
            chart: e.surface()?,
            grid: e.default_grid()?,
            expected: e.expected.clone(),
            slice: e.slice.clone(),
            moves: e.moves.clone(),
        })
    }

    fn from_chart(chart: SurfaceChart) -> Self {
        Target {
            id: chart.name.clone(),
            ambient: Ambient::Flat { n: chart.ambient_dim() },
            chart,
            grid: Grid::real((-1.0, 1.0), (-1.0, 1.0)),
            expected: Expected::default(),
            slice: None,
            moves: Vec::new(),
        }
    }
}

/// `arg` is an existing JSON file (a catalog entry, a named chart
/// `{name, program, implicit}`, or a bare `{outputs}` program) or a catalog id.
pub fn resolve(catalog: &Catalog, arg: &str) -> Result<Target> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Target::from_entry(catalog.get(arg)?);
    }
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if value.get("schema").is_some() {
        Target::from_entry(&serde_json::from_value(value)?)
    } else if value.get("program").is_some() {
        Ok(Target::from_chart(serde_json::from_value(value)?))
    } else if value.get("outputs").is_some() {
        let program: ChartProgram = serde_json::from_value(value)?;
        Ok(Target::from_chart(SurfaceChart::new(stem, program)))
    } else {
        Err(Error::Parse(format!("{arg}: expected a catalog entry, a chart, or a chart program")))
    }
}
