//! JSON file formats for states, channels and witnesses.
//!
//! Matrices are stored row-major as separate real and imaginary parts:
//! `{"dim": d, "re": [[...]], "im": [[...]]}`. Loading runs the full
//! validation of the target type.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::matcalc::{CMatrix, C64};
use crate::states::DensityMatrix;

/// Real and imaginary parts of a square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        MatrixFile {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self, dim: usize) -> Result<CMatrix> {
        let check = |part: &[Vec<f64>], name: &str| -> Result<()> {
            if part.len() != dim || part.iter().any(|r| r.len() != dim) {
                return Err(Error::Format(format!("`{name}` must be a {dim}x{dim} array")));
            }
            if part.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Format(format!("`{name}` contains a non-finite entry")));
            }
            Ok(())
        };
        check(&self.re, "re")?;
        check(&self.im, "im")?;
        Ok(CMatrix::from_fn(dim, dim, |i, j| {
            C64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    #[serde(flatten)]
    pub entries: MatrixFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        StateFile {
            dim: rho.dim(),
            entries: MatrixFile::from_matrix(rho.matrix()),
            label: rho.label().map(str::to_owned),
        }
    }

    pub fn into_state(self) -> Result<DensityMatrix> {
        let rho = DensityMatrix::new(self.entries.to_matrix(self.dim)?)?;
        Ok(match self.label {
            Some(l) => rho.with_label(l),
            None => rho,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub dim: usize,
    pub kraus: Vec<MatrixFile>,
}

impl ChannelFile {
    pub fn from_channel(ch: &KrausChannel) -> Self {
        ChannelFile {
            dim: ch.dim(),
            kraus: ch.kraus().iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    pub fn into_channel(self) -> Result<KrausChannel> {
        let ops = self
            .kraus
            .iter()
            .map(|k| k.to_matrix(self.dim))
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(ops)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateFile::from_state(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        StateFile::deserialize(d)?
            .into_state()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for KrausChannel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChannelFile::from_channel(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for KrausChannel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ChannelFile::deserialize(d)?
            .into_channel()
            .map_err(serde::de::Error::custom)
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Parses JSON text. Validation failures inside the value surface as
/// [`Error::Format`] carrying the underlying message.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    from_json(&text)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = to_json(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn read_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    read_json(path)
}

pub fn write_state(path: impl AsRef<Path>, rho: &DensityMatrix) -> Result<()> {
    write_json(path, rho)
}

pub fn read_channel(path: impl AsRef<Path>) -> Result<KrausChannel> {
    read_json(path)
}

pub fn write_channel(path: impl AsRef<Path>, ch: &KrausChannel) -> Result<()> {
    write_json(path, ch)
}
