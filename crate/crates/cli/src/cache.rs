//! On-disk cache of EO element lists.
//!
//! One JSON-lines file per root datum, named `{datum}-{model}-v{VERSION}.jsonl`.
//! Each line stores the reduced words of `EO^J(μ)` for one quadruple plus a
//! sha256 checksum; records are rebuilt from the words, so a hit and a miss
//! produce the same data.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use coxtype::eo::eo_data_from_elements;
use coxtype::{eo_set, AffElement, EoData, Quadruple};

use crate::error::CliError;
use crate::report::model_name;

pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Line {
    version: u32,
    quadruple: String,
    words: Vec<String>,
    checksum: String,
}

fn checksum(version: u32, label: &str, words: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{version}\n{label}\n{}", words.join("\n")));
    hex::encode(h.finalize())
}

pub struct Cache {
    dir: PathBuf,
    /// Parsed files, keyed by path.
    files: Mutex<HashMap<PathBuf, HashMap<String, Vec<String>>>>,
}

impl Cache {
    pub fn new(dir: &Path) -> Result<Cache, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Cache {
            dir: dir.to_path_buf(),
            files: Mutex::new(HashMap::new()),
        })
    }

    fn path(&self, q: &Quadruple) -> PathBuf {
        self.dir
            .join(format!("{}-{}-v{VERSION}.jsonl", q.datum.name(), model_name(q)))
    }

    fn load(path: &Path) -> HashMap<String, Vec<String>> {
        let mut out = HashMap::new();
        let Ok(text) = fs::read_to_string(path) else {
            return out;
        };
        for (n, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let reason = match serde_json::from_str::<Line>(raw) {
                Err(e) => format!("unparsable ({e})"),
                Ok(l) if l.version != VERSION => format!("stale version {}", l.version),
                Ok(l) if l.checksum != checksum(l.version, &l.quadruple, &l.words) => "checksum mismatch".into(),
                Ok(l) => {
                    out.insert(l.quadruple, l.words);
                    continue;
                }
            };
            eprintln!("warning: cache {}:{}: {reason}, ignored", path.display(), n + 1);
        }
        out
    }

    fn lookup(&self, q: &Quadruple) -> Option<Vec<String>> {
        let path = self.path(q);
        let mut files = self.files.lock();
        let entries = files.entry(path.clone()).or_insert_with(|| Self::load(&path));
        entries.get(&q.label()).cloned()
    }

    fn rebuild(q: &Quadruple, words: &[String]) -> Option<EoData> {
        let elems: Vec<AffElement> = words.iter().map(|w| q.parse_word(w)).collect::<Result<_, _>>().ok()?;
        let ok = elems
            .iter()
            .all(|x| q.datum.omega_component(x) == q.tau && q.datum.is_left_minimal(q.j(), x));
        if !ok {
            return None;
        }
        eo_data_from_elements(q, &elems).ok()
    }

    fn store(&self, q: &Quadruple, eo: &EoData) -> Result<(), CliError> {
        let path = self.path(q);
        let words = eo.words();
        let label = q.label();
        let line = Line {
            version: VERSION,
            checksum: checksum(VERSION, &label, &words),
            quadruple: label.clone(),
            words: words.clone(),
        };
        let mut files = self.files.lock();
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| CliError::io(&path, e))?;
        let text = serde_json::to_string(&line).expect("lines serialize");
        writeln!(f, "{text}").map_err(|e| CliError::io(&path, e))?;
        files.entry(path).or_default().insert(label, words);
        Ok(())
    }

    /// `EO^J(μ)` from the cache, computing and storing it on a miss.
    pub fn eo(&self, q: &Quadruple) -> Result<EoData, CliError> {
        if let Some(words) = self.lookup(q) {
            match Self::rebuild(q, &words) {
                Some(eo) => return Ok(eo),
                None => eprintln!("warning: cache entry for {} does not rebuild, recomputing", q.label()),
            }
        }
        let eo = eo_set(q)?;
        self.store(q, &eo)?;
        Ok(eo)
    }
}
