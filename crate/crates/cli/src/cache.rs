//! Optional on-disk cache of structure-tensor rows and F blocks, one JSON file
//! per monomial, enabled by `SYMSIM_CACHE_DIR`.

use std::path::{Path, PathBuf};

use symsim_core::algebra::{MonomialIndex, StructureTensor};
use symsim_core::io::{FTensorDocument, TensorDocument};
use symsim_core::schur::{FTensor, IrrepLabel};

use crate::error::{CliError, Result};

pub const CACHE_ENV: &str = "SYMSIM_CACHE_DIR";

#[derive(Clone, Debug, Default)]
pub struct TensorCache {
    dir: Option<PathBuf>,
}

impl TensorCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn file(&self, kind: &str, n: usize, i: &MonomialIndex) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{kind}-n{n}-{}-{}-{}-{}.json", i.i1, i.ix, i.iy, i.iz)))
    }

    /// Structure-tensor rows for every monomial in `rows`.
    pub fn structure_rows(&self, n: usize, rows: &[MonomialIndex]) -> Result<StructureTensor> {
        let mut tensor = StructureTensor::new(n)?;
        for i in rows {
            let path = self.file("structure", n, i);
            let cached = path
                .as_deref()
                .and_then(read::<TensorDocument>)
                .filter(|doc| doc.n == n && doc.entries.iter().all(|e| e.i == *i))
                .and_then(|doc| doc.to_tensor().ok())
                .filter(|t| t.contains_row(i));
            let row = match cached {
                Some(row) => row,
                None => {
                    let row = StructureTensor::for_rows(n, &[*i])?;
                    if let Some(path) = &path {
                        write(path, &TensorDocument::from_tensor(&row))?;
                    }
                    row
                }
            };
            tensor.merge(row)?;
        }
        Ok(tensor)
    }

    /// F blocks of every monomial in `monomials` on every irrep.
    pub fn f_blocks(&self, n: usize, monomials: &[MonomialIndex]) -> Result<FTensor> {
        let mut tensor = FTensor::new(n)?;
        for i in monomials {
            let path = self.file("f", n, i);
            let cached = path
                .as_deref()
                .and_then(read::<FTensorDocument>)
                .filter(|doc| doc.n == n && doc.blocks.len() == n / 2 + 1 && doc.blocks.iter().all(|b| b.i == *i))
                .and_then(|doc| doc.to_tensor().ok());
            let blocks = match cached {
                Some(blocks) => blocks,
                None => {
                    let blocks = FTensor::for_monomials(n, &[*i])?;
                    if let Some(path) = &path {
                        write(path, &FTensorDocument::from_tensor(&blocks))?;
                    }
                    blocks
                }
            };
            for (i, lambda1, m) in blocks.iter() {
                tensor.insert(i, IrrepLabel::new(n, lambda1)?, m.clone())?;
            }
        }
        Ok(tensor)
    }
}

/// Unreadable or stale cache files are treated as misses.
fn read<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Option<T> {
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn write<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_vec(value).expect("tensor documents serialize")).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}
