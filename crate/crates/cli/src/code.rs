//! Where a command gets its code from.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use twobit::graph::{find_girth8_shifts, BaseMatrix, ShiftSearch};
use twobit::TannerGraph;

/// Quasi-cyclic search parameters; the defaults give the length-768 code.
#[derive(Args, Clone, Debug, Serialize)]
pub struct QcArgs {
    /// Block rows of the exponent matrix (column weight).
    #[arg(long, default_value_t = 3)]
    pub rows: usize,
    /// Block columns of the exponent matrix.
    #[arg(long, default_value_t = 12)]
    pub cols: usize,
    /// Circulant size.
    #[arg(long, default_value_t = 64)]
    pub p: usize,
    /// Seed of the randomised shift search.
    #[arg(long = "code-seed", default_value_t = 7)]
    pub code_seed: u64,
}

impl QcArgs {
    pub fn search(&self) -> Result<BaseMatrix> {
        Ok(find_girth8_shifts(
            self.rows,
            self.cols,
            self.p,
            self.code_seed,
            &ShiftSearch::default(),
        )?)
    }
}

/// An alist file, a base-matrix file, or a quasi-cyclic search.
#[derive(Args, Clone, Debug, Serialize)]
pub struct CodeArgs {
    /// Read the code from an alist file.
    #[arg(long, conflicts_with = "base")]
    pub alist: Option<PathBuf>,
    /// Read the code from an exponent-matrix file.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[command(flatten)]
    pub qc: QcArgs,
}

impl CodeArgs {
    pub fn load(&self) -> Result<TannerGraph> {
        if let Some(path) = &self.alist {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            return TannerGraph::from_alist(&text)
                .with_context(|| format!("parsing {}", path.display()));
        }
        let base = match &self.base {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                BaseMatrix::parse(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => self.qc.search()?,
        };
        Ok(base.build()?)
    }
}
