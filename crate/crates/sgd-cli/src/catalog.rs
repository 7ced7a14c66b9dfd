//! The small-group catalog: named, reproducible constructions used as the
//! reference class for uniqueness sweeps and for the verification suites.

use serde::{Deserialize, Serialize};
use sgd_core::files::{self, GroupFile};
use sgd_core::group::{
    alternating, cyclic, dihedral, direct_product_perm, psl, quaternion_table, symmetric,
    wreath_c2_sym, Group, GroupError, GroupTable, PermGroup,
};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("duplicate catalog name `{0}`")]
    DuplicateName(String),
    #[error("{name}: order {actual} does not match the construction's expected order {expected}")]
    OrderMismatch {
        name: String,
        expected: usize,
        actual: usize,
    },
    #[error("{name}: {source}")]
    Construction { name: String, source: GroupError },
    #[error(transparent)]
    Files(#[from] files::FilesError),
}

/// A reproducible construction recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    /// Direct product of constructions, realized on the disjoint union of
    /// the factors' domains.
    Product(Vec<Construction>),
    /// (n, q)
    Psl(usize, usize),
    /// C2 ≀ Sm on 2m points.
    WreathC2Sym(usize),
    FromFile(PathBuf),
}

impl Construction {
    /// Known order, when the construction determines it.
    pub fn expected_order(&self) -> Option<usize> {
        match self {
            Construction::Cyclic(n) => Some(*n),
            Construction::Dihedral(n) => Some(2 * n),
            Construction::Symmetric(n) => Some(factorial(*n)),
            Construction::Alternating(n) => Some(factorial(*n) / 2),
            Construction::Quaternion => Some(8),
            Construction::Product(parts) => parts
                .iter()
                .map(Construction::expected_order)
                .product::<Option<usize>>(),
            Construction::Psl(n, q) => Some(sgd_core::group::psl_order(*n, *q)),
            Construction::WreathC2Sym(m) => Some((1 << m) * factorial(*m)),
            Construction::FromFile(_) => None,
        }
    }

    fn realize(&self) -> Result<Realized, GroupError> {
        match self {
            Construction::Cyclic(n) => Ok(Realized::perm(cyclic(*n)?)),
            Construction::Dihedral(n) => Ok(Realized::perm(dihedral(*n)?)),
            Construction::Symmetric(n) => Ok(Realized::perm(symmetric(*n)?)),
            Construction::Alternating(n) => Ok(Realized::perm(alternating(*n)?)),
            // Q8 has no faithful action on fewer than 8 points; use the
            // regular action. The table is derived lazily from the perm
            // group so both realizations share one element numbering.
            Construction::Quaternion => Ok(Realized::perm(
                sgd_core::aut::regular_representation(&quaternion_table()).image,
            )),
            Construction::Product(parts) => {
                let mut acc: Option<PermGroup> = None;
                for part in parts {
                    let realized = part.realize()?;
                    let perm = realized.perm.ok_or_else(|| {
                        GroupError::InvalidInput(
                            "product factors must be permutation groups".into(),
                        )
                    })?;
                    acc = Some(match acc {
                        None => perm,
                        Some(a) => direct_product_perm(&a, &perm)?,
                    });
                }
                let perm = acc.ok_or_else(|| GroupError::InvalidInput("empty product".into()))?;
                Ok(Realized::perm(perm))
            }
            Construction::Psl(n, q) => Ok(Realized::perm(psl(*n, *q)?.group)),
            Construction::WreathC2Sym(m) => Ok(Realized::perm(wreath_c2_sym(*m)?)),
            Construction::FromFile(path) => {
                let (_, loaded) =
                    files::read_group(path).map_err(|e| GroupError::InvalidInput(e.to_string()))?;
                Ok(match loaded {
                    files::LoadedGroup::Perm(p) => Realized::perm(p),
                    files::LoadedGroup::Table(t) => Realized {
                        perm: None,
                        table: OnceLock::from(t),
                    },
                })
            }
        }
    }
}

fn factorial(n: usize) -> usize {
    (2..=n).product::<usize>().max(1)
}

#[derive(Debug)]
struct Realized {
    perm: Option<PermGroup>,
    table: OnceLock<GroupTable>,
}

impl Realized {
    fn perm(p: PermGroup) -> Realized {
        Realized {
            perm: Some(p),
            table: OnceLock::new(),
        }
    }
}

/// A named catalog member. The multiplication table is materialized lazily
/// and cached.
#[derive(Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub construction: Construction,
    pub provenance: String,
    realized: Realized,
}

impl CatalogEntry {
    pub fn order(&self) -> usize {
        match &self.realized.perm {
            Some(p) => p.order(),
            None => self.table().order(),
        }
    }

    /// The permutation realization, when the construction has a natural one.
    pub fn perm(&self) -> Option<&PermGroup> {
        self.realized.perm.as_ref()
    }

    pub fn table(&self) -> &GroupTable {
        self.realized.table.get_or_init(|| {
            self.realized
                .perm
                .as_ref()
                .expect("entry has a permutation group or a pre-set table")
                .to_table()
        })
    }

    /// File-system-friendly name: lowercase alphanumerics, `_` elsewhere.
    pub fn file_stem(&self) -> String {
        let mut out = String::with_capacity(self.name.len());
        let mut last_sep = true;
        for c in self.name.chars() {
            if c.is_ascii_alphanumeric() {
                out.push(c.to_ascii_lowercase());
                last_sep = false;
            } else if !last_sep {
                out.push('_');
                last_sep = true;
            }
        }
        out.trim_end_matches('_').to_string()
    }

    pub fn to_group_file(&self) -> GroupFile {
        match &self.realized.perm {
            Some(p) => GroupFile::from_perm_group(Some(self.name.clone()), p),
            None => GroupFile::from_table(Some(self.name.clone()), self.table()),
        }
    }
}

/// Catalog build configuration: an ordered list of named constructions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogConfig {
    pub entries: Vec<ConfigEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEntry {
    pub name: String,
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// The default catalog: cyclic and dihedral groups up to degree 12,
/// symmetric and alternating up to degree 6, the quaternion group, small
/// abelian and mixed products, PSL(2,5) and PSL(2,7), and C2 ≀ Sm for
/// m ≤ 4.
pub fn default_config() -> CatalogConfig {
    let mut entries = Vec::new();
    let mut push = |name: String, construction: Construction, note: &str| {
        entries.push(ConfigEntry {
            name,
            construction,
            note: note.to_string(),
        });
    };
    for n in 1..=12 {
        push(
            format!("C{n}"),
            Construction::Cyclic(n),
            "rotation action, also the regular action",
        );
    }
    for n in 3..=12 {
        push(
            format!("D{n}"),
            Construction::Dihedral(n),
            "symmetries of the n-gon",
        );
    }
    for n in 2..=6 {
        push(
            format!("S{n}"),
            Construction::Symmetric(n),
            "natural action",
        );
    }
    for n in 3..=6 {
        push(
            format!("A{n}"),
            Construction::Alternating(n),
            "natural action",
        );
    }
    push(
        "Q8".into(),
        Construction::Quaternion,
        "unit quaternions; table plus regular action",
    );
    push(
        "C2xC2".into(),
        Construction::Product(vec![Construction::Cyclic(2), Construction::Cyclic(2)]),
        "Klein four-group",
    );
    push(
        "C2xC4".into(),
        Construction::Product(vec![Construction::Cyclic(2), Construction::Cyclic(4)]),
        "",
    );
    push(
        "C2xC2xC2".into(),
        Construction::Product(vec![
            Construction::Cyclic(2),
            Construction::Cyclic(2),
            Construction::Cyclic(2),
        ]),
        "elementary abelian of rank 3",
    );
    push(
        "A4xC2".into(),
        Construction::Product(vec![Construction::Alternating(4), Construction::Cyclic(2)]),
        "",
    );
    push(
        "PSL(2,5)".into(),
        Construction::Psl(2, 5),
        "projective line action; isomorphic to A5",
    );
    push(
        "PSL(2,7)".into(),
        Construction::Psl(2, 7),
        "projective line action, order 168",
    );
    for m in 2..=4 {
        push(
            format!("C2wrS{m}"),
            Construction::WreathC2Sym(m),
            "imprimitive action on 2m points; finite analogue of C2 wr S_inf",
        );
    }
    CatalogConfig { entries }
}

/// Build a catalog from a configuration: every entry is realized, its order
/// checked against the construction, and names checked for uniqueness.
pub fn build_catalog(config: &CatalogConfig) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut seen = std::collections::HashSet::new();
    let mut catalog = Vec::with_capacity(config.entries.len());
    for entry in &config.entries {
        if !seen.insert(entry.name.clone()) {
            return Err(CatalogError::DuplicateName(entry.name.clone()));
        }
        let realized =
            entry
                .construction
                .realize()
                .map_err(|source| CatalogError::Construction {
                    name: entry.name.clone(),
                    source,
                })?;
        let built = CatalogEntry {
            name: entry.name.clone(),
            construction: entry.construction.clone(),
            provenance: entry.note.clone(),
            realized,
        };
        if let Some(expected) = built.construction.expected_order() {
            let actual = built.order();
            if actual != expected {
                return Err(CatalogError::OrderMismatch {
                    name: built.name,
                    expected,
                    actual,
                });
            }
        }
        catalog.push(built);
    }
    Ok(catalog)
}

/// The default catalog, built once per process.
pub fn default_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| build_catalog(&default_config()).expect("default catalog is valid"))
}

/// Members of the default catalog with order at most `max_order`, as named
/// tables (the form the model checker consumes).
pub fn tables_up_to(max_order: usize) -> Vec<(String, GroupTable)> {
    default_catalog()
        .iter()
        .filter(|e| e.order() <= max_order)
        .map(|e| (e.name.clone(), e.table().clone()))
        .collect()
}

/// Serialized row of `catalog list` and of the build index.
#[derive(Debug, Serialize, Deserialize)]
pub struct IndexRow {
    pub name: String,
    pub file: String,
    pub order: usize,
    pub construction: Construction,
}

/// Write one group file per entry plus an `index.json`; bytes are
/// deterministic for a fixed config.
pub fn write_catalog_dir(
    catalog: &[CatalogEntry],
    dir: &Path,
) -> Result<Vec<IndexRow>, CatalogError> {
    std::fs::create_dir_all(dir).map_err(|source| {
        CatalogError::Files(files::FilesError::Io {
            path: dir.to_path_buf(),
            source,
        })
    })?;
    let mut index = Vec::new();
    for entry in catalog {
        let file = format!("{}.json", entry.file_stem());
        files::write_group(&dir.join(&file), &entry.to_group_file())?;
        index.push(IndexRow {
            name: entry.name.clone(),
            file,
            order: entry.order(),
            construction: entry.construction.clone(),
        });
    }
    let path = dir.join("index.json");
    let mut text =
        serde_json::to_string_pretty(&index).map_err(|source| files::FilesError::Json {
            path: path.clone(),
            source,
        })?;
    text.push('\n');
    files::write_atomic(&path, text.as_bytes())?;
    Ok(index)
}
