//! On-disk formats: group files and presentation files (JSON), description
//! jobs (JSON, bundling paths to the other two), and sentence files
//! (S-expression text, `;` comments).

use crate::formula::{self, Formula};
use crate::group::{Group, GroupError, GroupTable, PermGroup, Permutation, Presentation};
use crate::synth::{DescriptionJob, Variant};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilesError {
    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}")]
    Sentence {
        path: PathBuf,
        #[source]
        source: formula::ParseError,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("bad assignment: {0}")]
    BadAssignment(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> FilesError + '_ {
    move |source| FilesError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Atomic write: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), FilesError> {
    let tmp = path.with_extension(format!(
        "tmp.{}.{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.subsec_nanos())
            .unwrap_or(0)
    ));
    std::fs::write(&tmp, contents).map_err(io_err(&tmp))?;
    std::fs::rename(&tmp, path).map_err(io_err(path))
}

/// A group on disk: a permutation group given by generators in cycle
/// notation, or an explicit multiplication table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupFile {
    Perm {
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        degree: usize,
        /// One generator per entry, each a list of cycles.
        generators: Vec<Vec<Vec<usize>>>,
    },
    Table {
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        order: usize,
        table: Vec<Vec<usize>>,
    },
}

/// A loaded group in either representation.
#[derive(Debug, Clone)]
pub enum LoadedGroup {
    Perm(PermGroup),
    Table(GroupTable),
}

impl LoadedGroup {
    pub fn to_table(&self) -> GroupTable {
        match self {
            LoadedGroup::Perm(p) => p.to_table(),
            LoadedGroup::Table(t) => t.clone(),
        }
    }

    pub fn as_perm(&self) -> Option<&PermGroup> {
        match self {
            LoadedGroup::Perm(p) => Some(p),
            LoadedGroup::Table(_) => None,
        }
    }
}

impl Group for LoadedGroup {
    fn order(&self) -> usize {
        match self {
            LoadedGroup::Perm(p) => p.order(),
            LoadedGroup::Table(t) => t.order(),
        }
    }

    fn identity(&self) -> usize {
        match self {
            LoadedGroup::Perm(p) => p.identity(),
            LoadedGroup::Table(t) => t.identity(),
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            LoadedGroup::Perm(p) => p.mul(a, b),
            LoadedGroup::Table(t) => t.mul(a, b),
        }
    }

    fn inverse(&self, a: usize) -> usize {
        match self {
            LoadedGroup::Perm(p) => p.inverse(a),
            LoadedGroup::Table(t) => t.inverse(a),
        }
    }
}

impl GroupFile {
    pub fn from_perm_group(name: Option<String>, g: &PermGroup) -> GroupFile {
        GroupFile::Perm {
            name,
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::cycles).collect(),
        }
    }

    pub fn from_table(name: Option<String>, t: &GroupTable) -> GroupFile {
        GroupFile::Table {
            name,
            order: t.order(),
            table: t.rows(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            GroupFile::Perm { name, .. } | GroupFile::Table { name, .. } => name.as_deref(),
        }
    }

    pub fn realize(&self) -> Result<LoadedGroup, FilesError> {
        self.realize_seeded(None)
    }

    /// `seed` drives the sampled associativity validation of tables larger
    /// than the exhaustive threshold.
    pub fn realize_seeded(&self, seed: Option<u64>) -> Result<LoadedGroup, FilesError> {
        match self {
            GroupFile::Perm {
                degree, generators, ..
            } => {
                let gens = generators
                    .iter()
                    .map(|cycles| Permutation::from_cycles(*degree, cycles))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(LoadedGroup::Perm(PermGroup::new(*degree, gens)?))
            }
            GroupFile::Table { table, .. } => Ok(LoadedGroup::Table(match seed {
                Some(seed) => GroupTable::from_rows_with_seed(table.clone(), seed)?,
                None => GroupTable::from_rows(table.clone())?,
            })),
        }
    }
}

pub fn read_group(path: &Path) -> Result<(GroupFile, LoadedGroup), FilesError> {
    read_group_seeded(path, None)
}

pub fn read_group_seeded(
    path: &Path,
    seed: Option<u64>,
) -> Result<(GroupFile, LoadedGroup), FilesError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let file: GroupFile = serde_json::from_str(&text).map_err(|source| FilesError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    let group = file.realize_seeded(seed)?;
    Ok((file, group))
}

pub fn write_group(path: &Path, file: &GroupFile) -> Result<(), FilesError> {
    let mut text = serde_json::to_string_pretty(file).map_err(|source| FilesError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// A presentation on disk; `name`/`note` are free-form provenance fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub generators: usize,
    pub relators: Vec<crate::group::Word>,
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<Presentation, GroupError> {
        Presentation::new(self.generators, self.relators.clone())
    }
}

pub fn read_presentation(path: &Path) -> Result<(PresentationFile, Presentation), FilesError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let file: PresentationFile =
        serde_json::from_str(&text).map_err(|source| FilesError::Json {
            path: path.to_path_buf(),
            source,
        })?;
    let p = file.to_presentation()?;
    Ok((file, p))
}

pub fn write_presentation(path: &Path, file: &PresentationFile) -> Result<(), FilesError> {
    let mut text = serde_json::to_string_pretty(file).map_err(|source| FilesError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// One generator image: an element index (table groups) or a cycle list
/// (permutation groups).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AssignmentEntry {
    Index(usize),
    Cycles(Vec<Vec<usize>>),
}

/// A description job on disk. `presentation` and `group` are paths resolved
/// relative to the job file's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub presentation: String,
    pub group: String,
    pub assignment: Vec<AssignmentEntry>,
    pub v: u32,
    pub variant: Variant,
    #[serde(default)]
    pub allow_nonsimple: bool,
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or_else(|| Path::new(".")).join(p)
    }
}

/// Resolve an assignment entry to an element index of `g`.
pub fn resolve_assignment(entry: &AssignmentEntry, g: &LoadedGroup) -> Result<usize, FilesError> {
    match (entry, g) {
        (AssignmentEntry::Index(i), _) => {
            if *i < g.order() {
                Ok(*i)
            } else {
                Err(FilesError::BadAssignment(format!(
                    "element index {i} out of range"
                )))
            }
        }
        (AssignmentEntry::Cycles(cycles), LoadedGroup::Perm(p)) => {
            let perm = Permutation::from_cycles(p.degree(), cycles)?;
            p.element_index(&perm).ok_or_else(|| {
                FilesError::BadAssignment(format!("permutation {perm} is not in the group"))
            })
        }
        (AssignmentEntry::Cycles(_), LoadedGroup::Table(_)) => Err(FilesError::BadAssignment(
            "cycle notation needs a permutation group, but the target is a table".into(),
        )),
    }
}

pub fn read_job(path: &Path) -> Result<(JobFile, DescriptionJob<LoadedGroup>), FilesError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let file: JobFile = serde_json::from_str(&text).map_err(|source| FilesError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    let (_, presentation) = read_presentation(&resolve(path, &file.presentation))?;
    let (_, group) = read_group(&resolve(path, &file.group))?;
    let assignment = file
        .assignment
        .iter()
        .map(|e| resolve_assignment(e, &group))
        .collect::<Result<Vec<_>, _>>()?;
    let job = DescriptionJob {
        presentation,
        target: group,
        assignment,
        v: file.v,
        variant: file.variant,
        allow_nonsimple: file.allow_nonsimple,
    };
    Ok((file, job))
}

/// Read a sentence file: UTF-8 S-expression, `;` comments, one formula.
pub fn read_sentence(path: &Path) -> Result<Formula, FilesError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    formula::parse(&text).map_err(|source| FilesError::Sentence {
        path: path.to_path_buf(),
        source,
    })
}

/// Write a formula with optional leading comment lines.
pub fn write_sentence(path: &Path, f: &Formula, comments: &[String]) -> Result<(), FilesError> {
    let mut text = String::new();
    for line in comments {
        text.push_str("; ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&f.render());
    text.push('\n');
    write_atomic(path, text.as_bytes())
}
