//! Bundled example matrices, certificates and witnesses. A data directory
//! may override any file by name; missing files fall back to the copies
//! compiled into the library.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::PartialMatrix;
use crate::nonneg::Certificate;
use crate::rect::Rect;

/// Environment variable naming a data directory that overrides the bundle.
pub const DATA_ENV: &str = "RANKFORGE_DATA";

pub const FILES: &[(&str, &str)] = &[
    ("m5x6.txt", include_str!("../data/m5x6.txt")),
    ("m12x12.txt", include_str!("../data/m12x12.txt")),
    ("example_leftover.txt", include_str!("../data/example_leftover.txt")),
    ("example_leftover_cover.json", include_str!("../data/example_leftover_cover.json")),
    ("example_types.txt", include_str!("../data/example_types.txt")),
    ("example_incompatible.txt", include_str!("../data/example_incompatible.txt")),
    ("m5x6_cert.json", include_str!("../data/m5x6_cert.json")),
    ("m12x12_cert.json", include_str!("../data/m12x12_cert.json")),
    ("m5x6_fooling.json", include_str!("../data/m5x6_fooling.json")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Clone, Debug)]
pub struct DataSet {
    /// 5×6 matrix with nonnegative rank 4 and binary rank 5.
    pub m5x6: PartialMatrix,
    /// 12×12 matrix with nonnegative rank 9 and binary rank 12.
    pub m12x12: PartialMatrix,
    pub leftover_example: PartialMatrix,
    pub leftover_cover: Vec<Rect>,
    pub types_example: PartialMatrix,
    pub incompatible_example: PartialMatrix,
    pub m5x6_cert: Certificate,
    pub m12x12_cert: Certificate,
    /// Three fooling sets of size 4 partitioning the Ones of the top four
    /// rows of `m5x6`, keyed by colour.
    pub m5x6_fooling: BTreeMap<String, Vec<(usize, usize)>>,
}

impl DataSet {
    pub fn bundled() -> Self {
        Self::load(None).expect("bundled data is valid")
    }

    /// Loads from `dir` where present, otherwise from the bundle.
    pub fn load(dir: Option<&Path>) -> Result<Self> {
        let read = |name: &str| -> Result<String> {
            if let Some(dir) = dir {
                let path = dir.join(name);
                if path.exists() {
                    return std::fs::read_to_string(&path)
                        .map_err(|e| Error::Format(format!("{}: {e}", path.display())));
                }
            }
            Ok(bundled(name).expect("file is bundled").to_string())
        };
        let matrix = |name: &str| -> Result<PartialMatrix> {
            PartialMatrix::parse(&read(name)?).map_err(|e| Error::Format(format!("{name}: {e}")))
        };
        let cert = |name: &str| -> Result<Certificate> {
            Certificate::from_json(&read(name)?).map_err(|e| Error::Format(format!("{name}: {e}")))
        };
        Ok(Self {
            m5x6: matrix("m5x6.txt")?,
            m12x12: matrix("m12x12.txt")?,
            leftover_example: matrix("example_leftover.txt")?,
            leftover_cover: serde_json::from_str(&read("example_leftover_cover.json")?)?,
            types_example: matrix("example_types.txt")?,
            incompatible_example: matrix("example_incompatible.txt")?,
            m5x6_cert: cert("m5x6_cert.json")?,
            m12x12_cert: cert("m12x12_cert.json")?,
            m5x6_fooling: serde_json::from_str(&read("m5x6_fooling.json")?)?,
        })
    }

    /// Loads from `$RANKFORGE_DATA` if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(DATA_ENV) {
            Some(dir) => Self::load(Some(Path::new(&dir))),
            None => Self::load(None),
        }
    }

    /// Bundled certificates whose target is `m`.
    pub fn certificates_for(&self, m: &PartialMatrix) -> Vec<Certificate> {
        [&self.m5x6_cert, &self.m12x12_cert].into_iter().filter(|c| c.target == *m).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_loads() {
        let d = DataSet::bundled();
        assert_eq!((d.m5x6.n_rows(), d.m5x6.n_cols()), (5, 6));
        assert_eq!(d.m12x12.count_ones(), 54);
        assert_eq!(d.m5x6_cert.target, d.m5x6);
        assert_eq!(d.m12x12_cert.size(), 9);
        assert_eq!(d.m5x6_fooling.len(), 3);
        assert_eq!(d.certificates_for(&d.m12x12).len(), 1);
    }

    #[test]
    fn directory_overrides_single_file() {
        let dir = std::env::temp_dir().join(format!("rankforge-data-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("m5x6.txt"), "10\n01\n").unwrap();
        let d = DataSet::load(Some(&dir)).unwrap();
        assert_eq!(d.m5x6, PartialMatrix::identity(2));
        assert_eq!(d.m12x12, DataSet::bundled().m12x12);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
