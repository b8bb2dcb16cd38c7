//! JSON problem and solution files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "kind": "main",
//!   "eta": null,
//!   "tol": null,
//!   "matrices": { "A1": { "rows": 1, "cols": 2, "entries": [[[0, 1, 0, 0], [1, 0, 0, 0]]] } }
//! }
//! ```
//!
//! Each entry is `[w, x, y, z]` for `w + xi + yj + zk`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use qsylv_core::{EtaAxis, QMatrix, Quaternion};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Main,
    FourTerm,
    ThreeTerm,
    Pair,
    Axyb,
    Eta,
}

impl Kind {
    /// Coefficient names a problem file of this kind must contain.
    pub fn coefficient_names(self) -> &'static [&'static str] {
        match self {
            Kind::Main => &["A1", "B1", "A2", "B2", "A3", "B3", "A4", "B4", "B"],
            Kind::FourTerm => &["A1", "B1", "C3", "D3", "C4", "D4", "E1"],
            Kind::ThreeTerm => &["A11", "B11", "A22", "B22", "A33", "B33", "T1"],
            Kind::Pair => &["A11", "B11", "C1", "A22", "B22", "C2"],
            Kind::Axyb => &["A1", "B1", "C1"],
            Kind::Eta => &["A1", "A2", "A3", "A4", "B"],
        }
    }

    /// Unknown names a solution file of this kind contains.
    pub fn unknown_names(self) -> &'static [&'static str] {
        match self {
            Kind::Main => &["X1", "X2", "Y1", "Y2", "Y3"],
            Kind::FourTerm => &["X1", "X2", "X3", "X4"],
            Kind::ThreeTerm => &["Y1", "Y2", "Y3"],
            Kind::Pair => &["X"],
            Kind::Axyb => &["X", "Y"],
            Kind::Eta => &["X1", "Y1", "Y2", "Y3"],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Main => "main",
            Kind::FourTerm => "four-term",
            Kind::ThreeTerm => "three-term",
            Kind::Pair => "pair",
            Kind::Axyb => "axyb",
            Kind::Eta => "eta",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 4]>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &QMatrix) -> Self {
        let entries = (0..m.rows()).map(|r| m.row(r).iter().map(|q| q.to_array()).collect()).collect();
        MatrixJson { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn to_matrix(&self, name: &str) -> Result<QMatrix, CliError> {
        if self.entries.len() != self.rows {
            return Err(CliError::Validation(format!(
                "matrices.{name}: rows = {} but entries has {} rows",
                self.rows,
                self.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(CliError::Validation(format!(
                    "matrices.{name}.entries[{r}]: expected {} entries, found {}",
                    self.cols,
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&a| Quaternion::from_array(a)));
        }
        QMatrix::new(self.rows, self.cols, data).map_err(|e| CliError::Validation(format!("matrices.{name}: {e}")))
    }
}

/// Problem file as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    pub kind: Kind,
    #[serde(default)]
    pub eta: Option<EtaName>,
    /// Residual tolerance override for projector-form conditions.
    #[serde(default)]
    pub tol: Option<f64>,
    pub matrices: BTreeMap<String, MatrixJson>,
}

/// Solution file written by `solve` and `gen`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub version: u32,
    pub kind: Kind,
    #[serde(default)]
    pub branch: Option<String>,
    #[serde(default)]
    pub params: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub residual: Option<f64>,
    pub matrices: BTreeMap<String, MatrixJson>,
}

/// `"i"`, `"j"` or `"k"` in a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaName(pub EtaAxis);

impl Serialize for EtaName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.0.as_str())
    }
}

impl<'de> Deserialize<'de> for EtaName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        EtaAxis::from_str(&s).map(EtaName).map_err(serde::de::Error::custom)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = inline_number_arrays(&serde_json::to_string_pretty(value).expect("serializable"));
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Puts every array that holds only numbers on one line, so a quaternion
/// reads as `[w, x, y, z]`.
fn inline_number_arrays(pretty: &str) -> String {
    let mut out = String::with_capacity(pretty.len());
    let mut rest = pretty;
    while let Some(open) = rest.find('[') {
        out.push_str(&rest[..=open]);
        rest = &rest[open + 1..];
        let Some(close) = rest.find(|c| matches!(c, '[' | ']' | '{' | '"')) else { continue };
        let body = &rest[..close];
        if rest[close..].starts_with(']') && !body.trim().is_empty() {
            let items: Vec<&str> = body.split(',').map(str::trim).collect();
            out.push_str(&items.join(", "));
            rest = &rest[close..];
        }
    }
    out.push_str(rest);
    out
}

fn check_version(path: &Path, version: u32) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            message: format!("unsupported version {version} (expected {FORMAT_VERSION})"),
        });
    }
    Ok(())
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let file: ProblemFile = read_json(path)?;
        check_version(path, file.version)?;
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }
}

impl SolutionFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let file: SolutionFile = read_json(path)?;
        check_version(path, file.version)?;
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }
}

/// Looks up the named matrices in order, failing on the first missing one.
pub fn take<const N: usize>(
    matrices: &BTreeMap<String, MatrixJson>,
    names: [&str; N],
    what: &str,
) -> Result<[QMatrix; N], CliError> {
    let mut out = Vec::with_capacity(N);
    for name in names {
        let m = matrices.get(name).ok_or_else(|| CliError::Validation(format!("{what}: missing matrix {name}")))?;
        out.push(m.to_matrix(name)?);
    }
    Ok(out.try_into().expect("N matrices"))
}

pub fn to_map<'a>(named: impl IntoIterator<Item = (&'a str, &'a QMatrix)>) -> BTreeMap<String, MatrixJson> {
    named.into_iter().map(|(n, m)| (n.to_string(), MatrixJson::from_matrix(m))).collect()
}
