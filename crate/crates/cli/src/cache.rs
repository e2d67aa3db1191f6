//! Content-addressed result cache. An entry is trusted only if its stored
//! key and engine version match the request exactly.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    version: String,
    output: String,
}

pub struct Cache {
    dir: PathBuf,
}

pub fn key(command: &str, config: &str) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    h.update(config.as_bytes());
    h.update([0]);
    h.update(bggcoh::VERSION.as_bytes());
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let raw = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&raw).ok()?;
        (entry.key == key && entry.version == bggcoh::VERSION).then_some(entry.output)
    }

    pub fn put(&self, key: &str, output: &str) -> std::io::Result<()> {
        let entry = Entry {
            key: key.into(),
            version: bggcoh::VERSION.into(),
            output: output.into(),
        };
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(tmp, self.path(key))
    }
}
