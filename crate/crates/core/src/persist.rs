//! Table files: JSON with every entry as sorted term records, the recursion
//! edge that produced it, and a SHA-256 of the entry list. Sizes beyond
//! [`SYMBOLIC_MAX`] are stored as values at the origin only.

use std::fs;
use std::path::{Path, PathBuf};

use brauer_poly::{MultiPoly, TermRecord};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use num_bigint::BigInt;
use serde::de::DeserializeOwned;

use crate::error::{CoreError, Result};
use crate::evalmode::{origin_values, ValueTable};
use crate::linkpat::LinkPattern;
use crate::points::seeded;
use crate::psitable::{compute_table, ChainEdge, MdegTable};

const FORMAT: &str = "brauer-mdeg-table";
const VALUES_FORMAT: &str = "brauer-mdeg-values";
const VERSION: u32 = 1;

/// Largest `N` whose table is expanded symbolically.
pub const SYMBOLIC_MAX: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub parent: LinkPattern,
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub pattern: LinkPattern,
    pub chain: Option<EdgeRecord>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub sha256: String,
    pub entries: Vec<EntryRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub pattern: LinkPattern,
    pub chain: Option<EdgeRecord>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuesFile {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub sha256: String,
    pub entries: Vec<ValueRecord>,
}

/// Outcome of [`save_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaveOutcome {
    Written,
    /// The file already held the same content.
    Unchanged,
    /// The file held different or corrupt content and was replaced.
    Overwritten,
}

fn entries_hash<T: Serialize>(entries: &[T]) -> Result<String> {
    let bytes = serde_json::to_vec(entries)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

pub fn table_to_file(table: &MdegTable) -> Result<TableFile> {
    let entries: Vec<EntryRecord> = table
        .iter()
        .map(|(p, f)| EntryRecord {
            pattern: p.clone(),
            chain: table.chain_edge(p).map(|e| EdgeRecord { parent: e.parent.clone(), i: e.i }),
            terms: f.to_records(),
        })
        .collect();
    Ok(TableFile {
        format: FORMAT.into(),
        version: VERSION,
        n: table.size(),
        sha256: entries_hash(&entries)?,
        entries,
    })
}

/// Rebuilds the table, refusing a file whose stored hash does not match its
/// entries.
pub fn table_from_file(file: &TableFile) -> Result<MdegTable> {
    if file.format != FORMAT || file.version != VERSION {
        return Err(CoreError::Persist(format!("unsupported format {} v{}", file.format, file.version)));
    }
    let computed = entries_hash(&file.entries)?;
    if computed != file.sha256 {
        return Err(CoreError::HashMismatch { stored: file.sha256.clone(), computed });
    }
    let mut patterns = Vec::with_capacity(file.entries.len());
    let mut entries = Vec::with_capacity(file.entries.len());
    let mut chain = Vec::with_capacity(file.entries.len());
    for e in &file.entries {
        patterns.push(e.pattern.clone());
        entries.push(MultiPoly::from_records(file.n, &e.terms)?);
        chain.push(e.chain.as_ref().map(|c| ChainEdge { parent: c.parent.clone(), i: c.i }));
    }
    MdegTable::from_parts(file.n, patterns, entries, chain)
}

pub fn table_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("mdeg-{n}.json"))
}

pub fn load_table(path: &Path) -> Result<MdegTable> {
    let text = fs::read_to_string(path)?;
    let file: TableFile = serde_json::from_str(&text)?;
    table_from_file(&file)
}

trait Hashed: Serialize + DeserializeOwned {
    fn stored_hash(&self) -> &str;
    fn computed_hash(&self) -> Result<String>;
}

impl Hashed for TableFile {
    fn stored_hash(&self) -> &str {
        &self.sha256
    }
    fn computed_hash(&self) -> Result<String> {
        entries_hash(&self.entries)
    }
}

impl Hashed for ValuesFile {
    fn stored_hash(&self) -> &str {
        &self.sha256
    }
    fn computed_hash(&self) -> Result<String> {
        entries_hash(&self.entries)
    }
}

fn read_stored_hash<T: Hashed>(path: &Path) -> Option<String> {
    let text = fs::read_to_string(path).ok()?;
    let file: T = serde_json::from_str(&text).ok()?;
    let computed = file.computed_hash().ok()?;
    (computed == file.stored_hash()).then_some(computed)
}

fn save_file<T: Hashed>(file: &T, path: &Path, force: bool) -> Result<SaveOutcome> {
    let hash = file.stored_hash().to_string();
    let outcome = if path.exists() {
        match read_stored_hash::<T>(path) {
            Some(h) if h == hash => return Ok(SaveOutcome::Unchanged),
            Some(h) if !force => return Err(CoreError::HashMismatch { stored: h, computed: hash }),
            None if !force => {
                return Err(CoreError::Persist(format!("{} is unreadable or fails its own hash; use --force to replace it", path.display())))
            }
            _ => SaveOutcome::Overwritten,
        }
    } else {
        SaveOutcome::Written
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut text = serde_json::to_string_pretty(file)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(outcome)
}

/// Writes the table. An existing file with a different (or unreadable) hash
/// is only replaced with `force`.
pub fn save_table(table: &MdegTable, path: &Path, force: bool) -> Result<SaveOutcome> {
    save_file(&table_to_file(table)?, path, force)
}

pub fn values_to_file(table: &ValueTable) -> Result<ValuesFile> {
    let entries: Vec<ValueRecord> = table
        .patterns
        .iter()
        .zip(&table.chain)
        .zip(&table.values)
        .map(|((p, c), v)| ValueRecord {
            pattern: p.clone(),
            chain: c.as_ref().map(|e| EdgeRecord { parent: e.parent.clone(), i: e.i }),
            value: v.to_string(),
        })
        .collect();
    Ok(ValuesFile {
        format: VALUES_FORMAT.into(),
        version: VERSION,
        n: table.n,
        sha256: entries_hash(&entries)?,
        entries,
    })
}

pub fn values_from_file(file: &ValuesFile) -> Result<ValueTable> {
    if file.format != VALUES_FORMAT || file.version != VERSION {
        return Err(CoreError::Persist(format!("unsupported format {} v{}", file.format, file.version)));
    }
    let computed = file.computed_hash()?;
    if computed != file.sha256 {
        return Err(CoreError::HashMismatch { stored: file.sha256.clone(), computed });
    }
    let mut table = ValueTable { n: file.n, patterns: Vec::new(), chain: Vec::new(), values: Vec::new() };
    for e in &file.entries {
        table.patterns.push(e.pattern.clone());
        table.chain.push(e.chain.as_ref().map(|c| ChainEdge { parent: c.parent.clone(), i: c.i }));
        let v: BigInt = e.value.parse().map_err(|_| CoreError::Persist(format!("bad value {}", e.value)))?;
        table.values.push(v);
    }
    Ok(table)
}

pub fn values_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("values-{n}.json"))
}

pub fn load_values(path: &Path) -> Result<ValueTable> {
    let text = fs::read_to_string(path)?;
    values_from_file(&serde_json::from_str(&text)?)
}

pub fn save_values(table: &ValueTable, path: &Path, force: bool) -> Result<SaveOutcome> {
    save_file(&values_to_file(table)?, path, force)
}

/// Values at the origin by the evaluation-mode recursion. The result does
/// not depend on the seed, which only picks the evaluation point.
pub fn compute_values(n: usize) -> Result<ValueTable> {
    if n <= SYMBOLIC_MAX {
        let t = compute_table(n)?;
        return Ok(ValueTable {
            n,
            patterns: t.patterns().to_vec(),
            chain: t.patterns().iter().map(|p| t.chain_edge(p).cloned()).collect(),
            values: t.values_at_origin(),
        });
    }
    origin_values(n, &mut seeded(n as u64))
}

/// Tables computed on demand, optionally cached in a directory.
#[derive(Clone, Debug, Default)]
pub struct TableStore {
    dir: Option<PathBuf>,
}

impl TableStore {
    pub fn new(dir: Option<PathBuf>) -> TableStore {
        TableStore { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Loads a cached table if present (a corrupt file is an error), otherwise
    /// computes it and caches it. Only sizes up to [`SYMBOLIC_MAX`].
    pub fn get(&self, n: usize) -> Result<MdegTable> {
        if n > SYMBOLIC_MAX {
            return Err(CoreError::InvalidInput(format!(
                "N = {n} is beyond the symbolic range 2..={SYMBOLIC_MAX}; use the values table"
            )));
        }
        let Some(dir) = &self.dir else {
            return compute_table(n);
        };
        let path = table_path(dir, n);
        if path.exists() {
            return load_table(&path);
        }
        let table = compute_table(n)?;
        save_table(&table, &path, false)?;
        Ok(table)
    }

    /// `Psi_pi(0)` for every pattern: from the symbolic table up to
    /// [`SYMBOLIC_MAX`], from a cached or fresh values file beyond.
    pub fn values(&self, n: usize) -> Result<ValueTable> {
        if n <= SYMBOLIC_MAX {
            let t = self.get(n)?;
            return Ok(ValueTable {
                n,
                patterns: t.patterns().to_vec(),
                chain: t.patterns().iter().map(|p| t.chain_edge(p).cloned()).collect(),
                values: t.values_at_origin(),
            });
        }
        let Some(dir) = &self.dir else {
            return compute_values(n);
        };
        let path = values_path(dir, n);
        if path.exists() {
            return load_values(&path);
        }
        let table = compute_values(n)?;
        save_values(&table, &path, false)?;
        Ok(table)
    }
}
