//! Reading group, matrix and category files, recording their digests.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use orbicalc_core::corpus::{parse_group, Corpus, GroupSpec};
use orbicalc_core::group::{FiniteGroup, GroupOptions};
use orbicalc_core::linalg::{Matrix, QMatrix};
use orbicalc_core::localize::{ArrowClass, CategoryFile, FiniteCategory};
use orbicalc_core::matrep::{MatrixRep, DEFAULT_TOLERANCE};
use orbicalc_core::{Error, Result};
use serde::Deserialize;
use serde_json::Value;

use crate::manifest::RunManifest;

fn read(path: &Path, manifest: &mut RunManifest) -> Result<Vec<u8>> {
    let bytes = fs::read(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    manifest.record_input(&path.display().to_string(), &bytes);
    Ok(bytes)
}

pub struct LoadedGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    /// Element index of each permutation generator, for permutation files.
    pub generator_elements: Vec<usize>,
}

/// A path to a group file, or the name of a corpus group.
pub fn load_group(arg: &str, manifest: &mut RunManifest) -> Result<LoadedGroup> {
    let path = Path::new(arg);
    let (path, default_name) = if path.exists() {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        (path.to_path_buf(), stem)
    } else {
        let corpus = Corpus::open_default()?;
        if !corpus.entries().iter().any(|e| e.name == arg) {
            return Err(Error::InvalidInput(format!("{arg:?} is neither a file nor a corpus group")));
        }
        (corpus.path_of(arg), arg.to_string())
    };
    let bytes = read(&path, manifest)?;
    let text = String::from_utf8(bytes).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let spec = parse_group(&text)?;
    let (group, generator_elements) = match &spec {
        GroupSpec::Permutations { degree, generators, .. } => {
            let (g, perms) = FiniteGroup::from_permutations(*degree, generators, &GroupOptions::default())?;
            let gens = generators
                .iter()
                .map(|p| perms.iter().position(|q| q == p).expect("generator is an element"))
                .collect();
            (g, gens)
        }
        GroupSpec::Table { .. } => (spec.build(&GroupOptions::default())?, Vec::new()),
    };
    let name = spec.name().map(str::to_string).unwrap_or(default_name);
    Ok(LoadedGroup { name, group: Arc::new(group), generator_elements })
}

/// Matrix entries: JSON integers, `"p/q"` strings, or decimals (which put
/// the representation in fixed-precision mode).
enum Entry {
    Exact(BigRational),
    Float(f64),
}

fn parse_entry(v: &Value) -> Result<Entry> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Entry::Exact(BigRational::from_integer(BigInt::from(i)))),
            None => n.as_f64().map(Entry::Float).ok_or_else(|| Error::InvalidInput(format!("bad number {n}"))),
        },
        Value::String(s) => parse_rational(s).map(Entry::Exact),
        other => Err(Error::InvalidInput(format!("matrix entry {other} is not a number"))),
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("{s:?} is not an integer or p/q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    /// One matrix per group element, in element order.
    #[serde(default)]
    matrices: Option<Vec<Vec<Vec<Value>>>>,
    /// One matrix per generator of a permutation group file.
    #[serde(default)]
    generators: Option<Vec<Vec<Vec<Value>>>>,
}

pub fn load_matrix_rep(path: &Path, group: &LoadedGroup, manifest: &mut RunManifest) -> Result<MatrixRep> {
    let bytes = read(path, manifest)?;
    let file: MatrixFile =
        serde_json::from_slice(&bytes).map_err(|e| Error::InvalidInput(format!("matrix file: {e}")))?;
    let (raw, per_generator) = match (file.matrices, file.generators) {
        (Some(m), None) => (m, false),
        (None, Some(g)) => (g, true),
        _ => return Err(Error::InvalidInput("matrix file needs exactly one of `matrices` or `generators`".into())),
    };
    let parsed: Vec<Vec<Vec<Entry>>> = raw
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(parse_entry).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let dim = parsed.first().map_or(0, Vec::len);
    if dim == 0 || parsed.iter().any(|m| m.len() != dim || m.iter().any(|row| row.len() != dim)) {
        return Err(Error::InvalidRepresentation("matrices must be square of one common positive size".into()));
    }
    let exact = parsed.iter().flatten().flatten().all(|e| matches!(e, Entry::Exact(_)));
    if per_generator {
        if group.generator_elements.len() != parsed.len() {
            return Err(Error::InvalidInput(format!(
                "{} generator matrices for {} generators",
                parsed.len(),
                group.generator_elements.len()
            )));
        }
        if !exact {
            return Err(Error::InvalidInput("generator matrices must be exact".into()));
        }
        let images = parsed.into_iter().map(to_exact).collect();
        return MatrixRep::from_generator_images(group.group.clone(), &group.generator_elements, images);
    }
    if exact {
        MatrixRep::exact(group.group.clone(), parsed.into_iter().map(to_exact).collect())
    } else {
        let mats = parsed
            .into_iter()
            .map(|m| {
                Matrix::from_rows(
                    m.into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|e| match e {
                                    Entry::Float(x) => x,
                                    Entry::Exact(q) => {
                                        use num_traits::ToPrimitive;
                                        q.to_f64().unwrap_or(f64::NAN)
                                    }
                                })
                                .collect()
                        })
                        .collect(),
                )
            })
            .collect();
        MatrixRep::approx(group.group.clone(), mats, DEFAULT_TOLERANCE)
    }
}

fn to_exact(m: Vec<Vec<Entry>>) -> QMatrix {
    Matrix::from_rows(
        m.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        Entry::Exact(q) => q,
                        Entry::Float(_) => unreachable!("checked exact"),
                    })
                    .collect()
            })
            .collect(),
    )
}

pub fn load_category(path: &Path, manifest: &mut RunManifest) -> Result<(FiniteCategory, ArrowClass)> {
    let bytes = read(path, manifest)?;
    let text = String::from_utf8(bytes).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    CategoryFile::parse(&text)?.build()
}
