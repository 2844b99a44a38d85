//! Group input files and the bundled corpus of small groups.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupOptions};

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "ORBICALC_CORPUS";

/// A group file: permutation generators or an explicit table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Permutations {
        #[serde(default)]
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Table {
        #[serde(default)]
        name: Option<String>,
        table: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn name(&self) -> Option<&str> {
        match self {
            GroupSpec::Permutations { name, .. } | GroupSpec::Table { name, .. } => name.as_deref(),
        }
    }

    pub fn build(&self, opts: &GroupOptions) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Permutations { degree, generators, .. } => {
                Ok(FiniteGroup::from_permutations(*degree, generators, opts)?.0)
            }
            GroupSpec::Table { table, .. } => FiniteGroup::from_table(table, opts),
        }
    }
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("group file: {e}")))
}

pub fn read_group_file(path: &Path) -> Result<(GroupSpec, FiniteGroup)> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let spec = parse_group(&text)?;
    let group = spec.build(&GroupOptions::default())?;
    Ok((spec, group))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub order: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CorpusIndex {
    version: u32,
    groups: Vec<CorpusEntry>,
}

/// The groups listed in `index.json` of a corpus directory.
#[derive(Debug, Clone)]
pub struct Corpus {
    dir: PathBuf,
    entries: Vec<CorpusEntry>,
}

/// `$ORBICALC_CORPUS` if set, else the `corpus/` directory of this repository.
pub fn default_corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"),
    }
}

impl Corpus {
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join("index.json");
        let text = fs::read_to_string(&path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let index: CorpusIndex =
            serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("corpus index: {e}")))?;
        if index.version != 1 {
            return Err(Error::InvalidInput(format!("unsupported corpus index version {}", index.version)));
        }
        Ok(Corpus { dir: dir.to_path_buf(), entries: index.groups })
    }

    pub fn open_default() -> Result<Self> {
        Corpus::open(&default_corpus_dir())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn path_of(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.json"))
    }

    /// Loads a group by name and checks its order against the index.
    pub fn group(&self, name: &str) -> Result<FiniteGroup> {
        let entry = self
            .entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("no corpus group named {name:?}")))?;
        let (_, group) = read_group_file(&self.path_of(name))?;
        if group.order() != entry.order {
            return Err(Error::InvalidInput(format!(
                "corpus group {name} has order {}, index says {}",
                group.order(),
                entry.order
            )));
        }
        Ok(group)
    }

    /// All groups of order at most `max_order`, in index order.
    pub fn groups_up_to(&self, max_order: usize) -> Result<Vec<(String, FiniteGroup)>> {
        self.entries
            .iter()
            .filter(|e| e.order <= max_order)
            .map(|e| Ok((e.name.clone(), self.group(&e.name)?)))
            .collect()
    }
}
