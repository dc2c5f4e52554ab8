//! Function arguments shared by the commands: either a named family with
//! a size (and optional threshold level) or a truth-table JSON file.

use clap::Args;
use querylab_core::boolfn::{Family, TruthTable};
use std::path::PathBuf;

#[derive(Args, Debug, Clone)]
pub struct FunctionSpec {
    /// Named family: or, and, parity, majority, threshold.
    #[arg(long, conflicts_with = "table")]
    pub family: Option<String>,

    /// Variable count for a named family.
    #[arg(long, short = 'n')]
    pub n: Option<usize>,

    /// THRESHOLD level.
    #[arg(long, short = 'm')]
    pub m: Option<usize>,

    /// Truth-table JSON file ({"n": .., "bits": hex} or a family object).
    #[arg(long)]
    pub table: Option<PathBuf>,
}

pub struct LoadedFunction {
    pub table: TruthTable,
    pub family: Option<(Family, Option<usize>)>,
    pub label: String,
}

impl FunctionSpec {
    pub fn load(&self) -> Result<LoadedFunction, String> {
        if let Some(path) = &self.table {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let table: TruthTable = serde_json::from_str(&text)
                .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "table".to_string());
            return Ok(LoadedFunction {
                table,
                family: None,
                label,
            });
        }
        let Some(name) = &self.family else {
            return Err("provide --family with --n, or --table FILE".to_string());
        };
        let family: Family = name.parse().map_err(|e| format!("{e}"))?;
        let n = self.n.ok_or("missing --n for the family")?;
        let table =
            TruthTable::from_family(family, n, self.m).map_err(|e| format!("{e}"))?;
        let label = match self.m {
            Some(m) => format!("{}_{n}_m{m}", family.name()),
            None => format!("{}_{n}", family.name()),
        };
        Ok(LoadedFunction {
            table,
            family: Some((family, self.m)),
            label,
        })
    }
}
