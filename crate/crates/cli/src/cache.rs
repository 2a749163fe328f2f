//! On-disk cache of reduced cohomology of full subcomplexes.
//!
//! One JSON file per complex, named by the SHA-256 of its canonical JSON form,
//! mapping each subset `I` (as a bitmask) to the table of `K(I)`. Writes go to
//! a temporary file in the same directory and are renamed into place.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use knset::io::ComplexSpec;
use knset::koszul::subcomplex_tables;
use knset::{CohomologyTable, SimplicialComplex, VertexSet};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Default, Serialize, Deserialize)]
struct CacheFile {
    complex: Option<ComplexSpec>,
    tables: BTreeMap<u64, CohomologyTable>,
}

pub struct SubcomplexCache {
    dir: Option<PathBuf>,
}

impl SubcomplexCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        SubcomplexCache { dir }
    }

    pub fn disabled() -> Self {
        SubcomplexCache { dir: None }
    }

    /// `--cache-dir`, then `KNSET_CACHE_DIR`, then the user cache directory.
    pub fn default_dir(flag: Option<&Path>) -> Option<PathBuf> {
        if let Some(p) = flag {
            return Some(p.to_path_buf());
        }
        if let Some(p) = std::env::var_os("KNSET_CACHE_DIR") {
            return Some(PathBuf::from(p));
        }
        if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(PathBuf::from(p).join("knset"));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("knset"))
    }

    /// Tables for every subset of `[m]`, reusing and then extending the cache.
    pub fn tables(&self, k: &SimplicialComplex) -> Vec<(VertexSet, CohomologyTable)> {
        let subsets = VertexSet::full(k.vertex_count()).subsets_by_size();
        let spec = canonical_spec(k);
        let path = self.dir.as_ref().map(|d| d.join(format!("{}.json", hash(&spec))));
        let mut file = path.as_deref().and_then(read).unwrap_or_default();
        if file.complex.as_ref().is_some_and(|c| c != &spec) {
            file = CacheFile::default();
        }
        let missing: Vec<VertexSet> = subsets
            .iter()
            .copied()
            .filter(|i| !file.tables.contains_key(&i.bits()))
            .collect();
        if !missing.is_empty() {
            for (i, t) in missing.iter().zip(subcomplex_tables(k, &missing)) {
                file.tables.insert(i.bits(), t);
            }
            if let Some(path) = &path {
                file.complex = Some(spec);
                if let Err(e) = write_atomic(path, &file) {
                    eprintln!("warning: cache not written: {e}");
                }
            }
        }
        subsets
            .into_iter()
            .map(|i| (i, file.tables[&i.bits()].clone()))
            .collect()
    }
}

fn canonical_spec(k: &SimplicialComplex) -> ComplexSpec {
    let mut spec = ComplexSpec::from_complex(k);
    spec.maximal_faces.sort();
    spec
}

fn hash(spec: &ComplexSpec) -> String {
    let bytes = serde_json::to_vec(spec).expect("complex serializes");
    hex::encode(Sha256::digest(&bytes))
}

fn read(path: &Path) -> Option<CacheFile> {
    let text = fs::read_to_string(path).ok()?;
    match serde_json::from_str(&text) {
        Ok(f) => Some(f),
        Err(e) => {
            eprintln!("warning: ignoring unreadable cache {}: {e}", path.display());
            None
        }
    }
}

fn write_atomic(path: &Path, file: &CacheFile) -> std::io::Result<()> {
    let dir = path.parent().expect("cache file has a directory");
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(&serde_json::to_vec(file).map_err(std::io::Error::other)?)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use knset::koszul::assemble_report;

    #[test]
    fn cached_tables_match_fresh_ones() {
        let dir = tempfile::tempdir().unwrap();
        let k = knset::fixtures::octahedron_boundary();
        let cache = SubcomplexCache::new(Some(dir.path().to_path_buf()));
        let first = cache.tables(&k);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        let second = cache.tables(&k);
        assert_eq!(first, second);
        let fresh = SubcomplexCache::disabled().tables(&k);
        assert_eq!(assemble_report(&first), assemble_report(&fresh));
    }

    #[test]
    fn hash_ignores_facet_order() {
        let a = SimplicialComplex::from_maximal_faces(3, &[vec![1, 2], vec![3]]).unwrap();
        let b = SimplicialComplex::from_maximal_faces(3, &[vec![3], vec![2, 1]]).unwrap();
        assert_eq!(hash(&canonical_spec(&a)), hash(&canonical_spec(&b)));
    }
}
