//! On-disk cache of character tables.
//!
//! One JSON file per group, named by its fingerprint. Entries are advisory: anything
//! that fails to load, has another format version, or does not match the group is
//! recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chartable::{character_table, CharacterTable, TableConfig};
use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use crate::group::GroupHandle;

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    fingerprint: String,
    conductor: u64,
    class_orders: Vec<u64>,
    class_sizes: Vec<u64>,
    rows: Vec<Vec<String>>,
}

/// Order, exponent, sorted class sizes and a hash of the right-multiplication table
/// by generators over the enumerated elements.
pub fn fingerprint(g: &GroupHandle) -> Result<String> {
    let cls = g.classes()?;
    let elems = g.elements()?;
    let mut hasher = Sha256::new();
    for x in &elems {
        for s in g.gens() {
            let y = g.mul(x, s);
            let idx = g.index_of(&y).expect("closed") as u64;
            hasher.update(idx.to_le_bytes());
        }
    }
    for (o, s) in cls.orders.iter().zip(&cls.sizes) {
        hasher.update(o.to_le_bytes());
        hasher.update(s.to_le_bytes());
    }
    let digest = hasher.finalize();
    let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
    let mut sizes = cls.sizes.clone();
    sizes.sort_unstable();
    let sizes: Vec<String> = sizes.iter().map(u64::to_string).collect();
    let mut size_hash = Sha256::new();
    size_hash.update(sizes.join(",").as_bytes());
    let sh: String = size_hash.finalize().iter().take(4).map(|b| format!("{b:02x}")).collect();
    Ok(format!("g{}-e{}-k{}-{sh}-{hex}", cls.order, cls.exponent, cls.len()))
}

fn path_for(dir: &Path, fp: &str) -> PathBuf {
    dir.join(format!("{fp}.json"))
}

fn load(g: &GroupHandle, path: &Path, fp: &str) -> Option<CharacterTable> {
    let text = fs::read_to_string(path).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    let cls = g.classes().ok()?;
    if entry.version != CACHE_VERSION
        || entry.fingerprint != fp
        || entry.class_orders != cls.orders
        || entry.class_sizes != cls.sizes
        || entry.conductor != cls.exponent
    {
        return None;
    }
    let rows = entry
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| Cyclotomic::parse(v, entry.conductor).ok())
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != cls.len()) || rows.iter().any(|r| r[0].as_integer().is_none()) {
        return None;
    }
    let table = CharacterTable::new(cls, entry.conductor, rows);
    table.check().ok()?;
    Some(table)
}

fn store(path: &Path, fp: &str, table: &CharacterTable) -> std::io::Result<()> {
    let entry = Entry {
        version: CACHE_VERSION,
        fingerprint: fp.to_string(),
        conductor: table.conductor,
        class_orders: table.classes.orders.clone(),
        class_sizes: table.classes.sizes.clone(),
        rows: table
            .rows
            .iter()
            .map(|r| r.iter().map(Cyclotomic::render).collect())
            .collect(),
    };
    let text = serde_json::to_string_pretty(&entry).map_err(std::io::Error::other)?;
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text)?;
    fs::rename(tmp, path)
}

/// Character table through the cache in `dir`, or computed directly when `dir` is
/// `None`. Failures to write the cache are ignored.
pub fn cached_table(g: &GroupHandle, cfg: &TableConfig, dir: Option<&Path>) -> Result<CharacterTable> {
    let Some(dir) = dir else {
        return character_table(g, cfg);
    };
    let fp = fingerprint(g)?;
    let path = path_for(dir, &fp);
    if let Some(t) = load(g, &path, &fp) {
        return Ok(t);
    }
    let table = character_table(g, cfg)?;
    let _ = store(&path, &fp, &table);
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_and_recovery() {
        let dir = tempfile::tempdir().unwrap();
        let g = catalog::group("SL2_3").unwrap();
        let cfg = TableConfig::default();
        let fresh = character_table(&g, &cfg).unwrap();
        let first = cached_table(&g, &cfg, Some(dir.path())).unwrap();
        assert_eq!(first.rows, fresh.rows);
        let fp = fingerprint(&g).unwrap();
        let path = path_for(dir.path(), &fp);
        assert!(path.exists());
        let again = cached_table(&g, &cfg, Some(dir.path())).unwrap();
        assert_eq!(again.rows, fresh.rows);

        // corrupted entries are recomputed
        let text = fs::read_to_string(&path).unwrap().replacen("E(3)", "E(3)^2+1", 1);
        fs::write(&path, text).unwrap();
        assert!(load(&g, &path, &fp).is_none());
        assert_eq!(cached_table(&g, &cfg, Some(dir.path())).unwrap().rows, fresh.rows);

        // another version is ignored
        let text = fs::read_to_string(&path).unwrap().replace("\"version\": 1", "\"version\": 99");
        fs::write(&path, text).unwrap();
        assert!(load(&g, &path, &fp).is_none());
    }

    #[test]
    fn fingerprints_separate_groups_of_equal_order() {
        let a = fingerprint(&catalog::group("SL2_3").unwrap()).unwrap();
        let b = fingerprint(&catalog::group("C3xQ8").unwrap()).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, fingerprint(&catalog::group("SL2_3").unwrap()).unwrap());
    }
}
