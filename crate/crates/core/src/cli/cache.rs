//! Content-addressed on-disk cache of localized components.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cycles::{ComponentStore, ConormalComponent};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{parse_polynomial, Polynomial, Ring};

const SCHEMA: &str = "charcycle-cache/1";

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: String,
    key: String,
    components: Vec<StoredComponent>,
    digest: String,
}

#[derive(Serialize, Deserialize)]
struct StoredComponent {
    conormal: Vec<String>,
    base: Vec<String>,
    multiplicity: u64,
}

/// Hex SHA-256 of a string.
pub fn cache_key(subproblem: &str) -> String {
    hex::encode(Sha256::digest(subproblem.as_bytes()))
}

/// One JSON file per subproblem, named by the hash of its canonical key.
pub struct DiskCache {
    dir: PathBuf,
    warnings: Mutex<Vec<String>>,
}

impl DiskCache {
    pub fn open(dir: &Path) -> Result<Arc<DiskCache>> {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("cache directory {}: {e}", dir.display())))?;
        Ok(Arc::new(DiskCache {
            dir: dir.to_path_buf(),
            warnings: Mutex::new(Vec::new()),
        }))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(key)))
    }

    /// Warnings raised so far (corrupt entries that were recomputed).
    pub fn warnings(&self) -> Vec<String> {
        self.warnings.lock().expect("warnings").clone()
    }

    fn warn(&self, msg: String) {
        log::warn!("{msg}");
        self.warnings.lock().expect("warnings").push(msg);
    }

    fn read(&self, key: &str, ring: &Arc<Ring>) -> std::result::Result<Option<Vec<(ConormalComponent, u64)>>, String> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.to_string()),
        };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if entry.schema != SCHEMA {
            return Err(format!("unknown schema {}", entry.schema));
        }
        if entry.key != key {
            return Err("key mismatch".into());
        }
        if entry.digest != digest(&entry.components) {
            return Err("checksum mismatch".into());
        }
        let base = ring.base().map_err(|e| e.to_string())?;
        let parse = |r: &Arc<Ring>, gens: &[String]| -> std::result::Result<Ideal, String> {
            let polys = gens
                .iter()
                .map(|g| parse_polynomial(r, g))
                .collect::<Result<Vec<Polynomial>>>()
                .map_err(|e| e.to_string())?;
            Ideal::new(r, polys).map_err(|e| e.to_string())
        };
        let mut out = Vec::new();
        for c in &entry.components {
            let q = parse(ring, &c.conormal)?;
            let b = parse(&base, &c.base)?;
            let comp = ConormalComponent::with_base(&q, &b).map_err(|e| e.to_string())?;
            out.push((comp, c.multiplicity));
        }
        Ok(Some(out))
    }
}

fn digest(components: &[StoredComponent]) -> String {
    cache_key(&serde_json::to_string(components).expect("serializable"))
}

fn strings(i: &Ideal) -> Vec<String> {
    i.gens().iter().map(|g| g.to_string()).collect()
}

impl ComponentStore for DiskCache {
    fn load(&self, key: &str, ring: &Arc<Ring>) -> Option<Vec<(ConormalComponent, u64)>> {
        match self.read(key, ring) {
            Ok(v) => v,
            Err(e) => {
                self.warn(format!("cache entry {} is corrupt ({e}); recomputing", self.path(key).display()));
                None
            }
        }
    }

    fn save(&self, key: &str, value: &[(ConormalComponent, u64)]) {
        let components: Vec<StoredComponent> = value
            .iter()
            .map(|(c, m)| StoredComponent {
                conormal: strings(c.prime()),
                base: strings(c.base()),
                multiplicity: *m,
            })
            .collect();
        let entry = Entry {
            schema: SCHEMA.into(),
            key: key.into(),
            digest: digest(&components),
            components,
        };
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(&entry).expect("serializable").as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        if let Err(e) = write() {
            let _ = fs::remove_file(&tmp);
            self.warn(format!("could not write cache entry {}: {e}", path.display()));
        }
    }
}
