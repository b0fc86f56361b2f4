//! Input resolution against the data directory, and report output.

use std::io::Write;
use std::path::{Path, PathBuf};

use borcherds_core::borcherds::WHForm;
use borcherds_core::io;
use borcherds_core::lattice::GramLattice;
use borcherds_core::series::FracQSeries;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Domain(borcherds_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: borcherds_core::Error },
    #[error("{0}")]
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(_) | Failure::Usage(_) => 1,
            Failure::Io { .. } | Failure::Parse { .. } => 2,
        }
    }
}

impl From<borcherds_core::Error> for Failure {
    fn from(e: borcherds_core::Error) -> Self {
        Failure::Domain(e)
    }
}

/// `BORCHERDS_DATA`, else the `data/` directory of the source tree.
pub fn data_dir() -> PathBuf {
    std::env::var_os("BORCHERDS_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// A path as given, else `name` or `name.json` inside the data directory.
pub fn resolve(name: &str) -> PathBuf {
    let direct = PathBuf::from(name);
    if direct.exists() {
        return direct;
    }
    let dir = data_dir();
    let inside = dir.join(name);
    if inside.exists() {
        return inside;
    }
    let with_ext = dir.join(format!("{name}.json"));
    if with_ext.exists() {
        with_ext
    } else {
        direct
    }
}

fn read(name: &str) -> Result<(PathBuf, String), Failure> {
    let path = resolve(name);
    match std::fs::read_to_string(&path) {
        Ok(text) => Ok((path, text)),
        Err(source) => Err(Failure::Io { path, source }),
    }
}

fn parsed<T>(path: PathBuf, r: borcherds_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|source| match source {
        borcherds_core::Error::Parse { .. } => Failure::Parse { path, source },
        other => Failure::Domain(other),
    })
}

pub fn load_lattice(name: &str) -> Result<GramLattice, Failure> {
    let (path, text) = read(name)?;
    parsed(path, io::lattice_from_json(&text))
}

pub fn load_form(name: &str) -> Result<(GramLattice, WHForm), Failure> {
    let (path, text) = read(name)?;
    parsed(path, io::form_from_json(&text))
}

pub fn load_series(name: &str) -> Result<FracQSeries, Failure> {
    let (path, text) = read(name)?;
    parsed(path, io::series_from_json(&text))
}

pub fn emit(out: Option<&Path>, report: &str) -> Result<(), Failure> {
    let (path, result) = match out {
        Some(path) => (path, std::fs::write(path, report)),
        None => (Path::new("<stdout>"), std::io::stdout().lock().write_all(report.as_bytes())),
    };
    result.map_err(|source| Failure::Io { path: path.to_path_buf(), source })
}
