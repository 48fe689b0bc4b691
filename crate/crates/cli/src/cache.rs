//! Persistence of computed structure-constant tables.
//!
//! A cache file holds one table, keyed by theory (`H` or `K`), window and
//! basis tag. The payload is the sparse list of nonzero constants in a
//! canonical order; a SHA-256 checksum over the canonical payload bytes is
//! stored in the header and re-verified on load, so reloads are bit-exact
//! or fail loudly. Writers take a lock file; `gc` drops files written by
//! other engine versions.

use anyhow::{anyhow, bail, Context};
use num_bigint::BigInt;
use schubert_core::cohomology::{cup, CohClass};
use schubert_core::ktheory::{multiply, KClass};
use schubert_core::weyl::Permutation;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CHECKSUM_ALGORITHM: &str = "sha256";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    H,
    K,
}

impl Theory {
    pub fn tag(self) -> &'static str {
        match self {
            Theory::H => "H",
            Theory::K => "K",
        }
    }

    fn basis(self) -> &'static str {
        match self {
            Theory::H => "schubert",
            Theory::K => "O",
        }
    }
}

/// One nonzero structure constant `c` in the product of `v` and `w` at `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub x: Vec<usize>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableHeader {
    pub engine_version: String,
    pub theory: String,
    pub window: usize,
    pub basis: String,
    pub timestamp_epoch_secs: u64,
    pub checksum_algorithm: String,
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub header: TableHeader,
    pub entries: Vec<TableEntry>,
}

pub type Table = BTreeMap<(Vec<usize>, Vec<usize>, Vec<usize>), BigInt>;

/// Computes the full structure-constant table of `S_n` in the given theory.
pub fn compute_table(theory: Theory, n: usize) -> anyhow::Result<Table> {
    let perms = Permutation::all(n);
    let mut table = Table::new();
    for v in &perms {
        for w in &perms {
            match theory {
                Theory::H => {
                    let prod = cup(&CohClass::schubert(v), &CohClass::schubert(w))?;
                    for (x, c) in prod.terms() {
                        table.insert(
                            (v.images().to_vec(), w.images().to_vec(), x.images().to_vec()),
                            c.clone(),
                        );
                    }
                }
                Theory::K => {
                    let prod = multiply(&KClass::o_class(v), &KClass::o_class(w))?;
                    for (x, c) in prod.terms() {
                        table.insert(
                            (v.images().to_vec(), w.images().to_vec(), x.images().to_vec()),
                            c.clone(),
                        );
                    }
                }
            }
        }
    }
    Ok(table)
}

fn entries_of(table: &Table) -> Vec<TableEntry> {
    table
        .iter()
        .map(|((v, w, x), c)| TableEntry {
            v: v.clone(),
            w: w.clone(),
            x: x.clone(),
            c: c.to_string(),
        })
        .collect()
}

fn table_of(entries: &[TableEntry]) -> anyhow::Result<Table> {
    let mut t = Table::new();
    for e in entries {
        let c: BigInt = e.c.parse().map_err(|_| anyhow!("bad integer {}", e.c))?;
        t.insert((e.v.clone(), e.w.clone(), e.x.clone()), c);
    }
    Ok(t)
}

fn checksum_of(entries: &[TableEntry]) -> anyhow::Result<String> {
    let bytes = serde_json::to_vec(entries)?;
    let mut h = Sha256::new();
    h.update(&bytes);
    Ok(hex_string(&h.finalize()))
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, theory: Theory, n: usize) -> PathBuf {
    dir.join(format!(
        "table-{}-n{}-v{}.json",
        theory.tag(),
        n,
        ENGINE_VERSION
    ))
}

struct LockFile(PathBuf);

impl LockFile {
    fn acquire(dir: &Path) -> anyhow::Result<LockFile> {
        let path = dir.join(".lock");
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(LockFile(path)),
            Err(e) => bail!("cache is locked by another writer ({e})"),
        }
    }
}

impl Drop for LockFile {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

/// Computes and persists the table; returns the number of entries written.
pub fn build(dir: &Path, theory: Theory, n: usize) -> anyhow::Result<usize> {
    fs::create_dir_all(dir).context("creating cache dir")?;
    let _lock = LockFile::acquire(dir)?;
    let table = compute_table(theory, n)?;
    let entries = entries_of(&table);
    let header = TableHeader {
        engine_version: ENGINE_VERSION.to_string(),
        theory: theory.tag().to_string(),
        window: n,
        basis: theory.basis().to_string(),
        timestamp_epoch_secs: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        checksum_algorithm: CHECKSUM_ALGORITHM.to_string(),
        checksum: checksum_of(&entries)?,
    };
    let file = TableFile { header, entries };
    let path = cache_path(dir, theory, n);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(&file)?)?;
    fs::rename(&tmp, &path)?;
    Ok(file.entries.len())
}

/// Loads and verifies a persisted table; checksum mismatches are errors.
pub fn load(dir: &Path, theory: Theory, n: usize) -> anyhow::Result<Table> {
    let path = cache_path(dir, theory, n);
    let bytes = fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
    let file: TableFile = serde_json::from_slice(&bytes)?;
    if file.header.checksum_algorithm != CHECKSUM_ALGORITHM {
        bail!("unsupported checksum algorithm {}", file.header.checksum_algorithm);
    }
    let recomputed = checksum_of(&file.entries)?;
    if recomputed != file.header.checksum {
        bail!(
            "checksum mismatch in {}: header {}, payload {}",
            path.display(),
            file.header.checksum,
            recomputed
        );
    }
    table_of(&file.entries)
}

/// Removes cache files from other engine versions; returns removed paths.
pub fn gc(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut removed = Vec::new();
    if !dir.exists() {
        return Ok(removed);
    }
    let current = format!("-v{ENGINE_VERSION}.json");
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let name = match path.file_name().and_then(|n| n.to_str()) {
            Some(n) => n.to_string(),
            None => continue,
        };
        if name.starts_with("table-") && name.ends_with(".json") && !name.ends_with(&current) {
            fs::remove_file(&path)?;
            removed.push(path);
        }
    }
    Ok(removed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        let dir = tempfile::tempdir().unwrap();
        let n = 3;
        for theory in [Theory::H, Theory::K] {
            let wrote = build(dir.path(), theory, n).unwrap();
            assert!(wrote > 0);
            let loaded = load(dir.path(), theory, n).unwrap();
            assert_eq!(loaded, compute_table(theory, n).unwrap());
        }
    }

    #[test]
    fn checksum_detects_corruption() {
        let dir = tempfile::tempdir().unwrap();
        build(dir.path(), Theory::H, 2).unwrap();
        let path = cache_path(dir.path(), Theory::H, 2);
        let text = fs::read_to_string(&path).unwrap();
        // flip one digit inside an entry payload
        let corrupted = text.replacen("\"c\": \"1\"", "\"c\": \"2\"", 1);
        assert_ne!(text, corrupted);
        fs::write(&path, corrupted).unwrap();
        let err = load(dir.path(), Theory::H, 2).unwrap_err();
        assert!(err.to_string().contains("checksum mismatch"));
    }

    #[test]
    fn gc_on_empty_dir_is_a_noop() {
        let dir = tempfile::tempdir().unwrap();
        assert!(gc(dir.path()).unwrap().is_empty());
        let missing = dir.path().join("nothing-here");
        assert!(gc(&missing).unwrap().is_empty());
    }

    #[test]
    fn gc_removes_stale_versions() {
        let dir = tempfile::tempdir().unwrap();
        build(dir.path(), Theory::H, 2).unwrap();
        let stale = dir.path().join("table-H-n2-v0.0.0.json");
        fs::write(&stale, b"{}").unwrap();
        let removed = gc(dir.path()).unwrap();
        assert_eq!(removed, vec![stale]);
        assert!(cache_path(dir.path(), Theory::H, 2).exists());
    }

    #[test]
    fn writers_take_the_lock() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir_all(dir.path()).unwrap();
        let _held = LockFile::acquire(dir.path()).unwrap();
        assert!(build(dir.path(), Theory::H, 2).is_err());
    }
}
