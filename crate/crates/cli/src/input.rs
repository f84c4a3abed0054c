use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde_json::Value;

use scat_core::contiguity::SimplicialMap;
use scat_core::finite_space::{FiniteSpace, MonotoneMap};
use scat_core::io::{ComplexFile, CorpusFile, MapFile, SpaceFile, SpaceMapFile};
use scat_core::scomplex::Corpus;
use scat_core::SimplicialComplex;

use crate::failure::Failure;

/// Reads input files and remembers their bytes for the report digest.
#[derive(Default)]
pub struct Inputs {
    pub bytes: Vec<u8>,
    stdin_used: bool,
}

impl Inputs {
    /// Parses `path` (or standard input for `-`) as `T`.
    ///
    /// A report printed by another command is accepted too: `T` is then read
    /// from `results.<key>`, which lets commands be piped into each other.
    fn load<T: DeserializeOwned>(&mut self, path: &Path, key: &str) -> Result<T, Failure> {
        let text = if path == Path::new("-") {
            if self.stdin_used {
                return Err(Failure::Input("standard input can be read only once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?
        };
        self.bytes.extend_from_slice(text.as_bytes());
        self.bytes.push(0);
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("{} is not JSON: {e}", path.display())))?;
        let value = match value.get("results").and_then(|r| r.get(key)) {
            Some(inner) => inner.clone(),
            None => value,
        };
        serde_json::from_value(value)
            .map_err(|e| Failure::Input(format!("{} is not a valid {key} file: {e}", path.display())))
    }

    pub fn complex(&mut self, path: &Path) -> Result<Arc<SimplicialComplex>, Failure> {
        let f: ComplexFile = self.load(path, "complex")?;
        Ok(Arc::new(f.to_complex()?))
    }

    pub fn map(&mut self, path: &Path) -> Result<SimplicialMap, Failure> {
        let f: MapFile = self.load(path, "map")?;
        Ok(f.to_map()?)
    }

    pub fn space(&mut self, path: &Path) -> Result<Arc<FiniteSpace>, Failure> {
        let f: SpaceFile = self.load(path, "space")?;
        Ok(Arc::new(f.to_space()?))
    }

    pub fn space_map(&mut self, path: &Path) -> Result<MonotoneMap, Failure> {
        let f: SpaceMapFile = self.load(path, "space_map")?;
        Ok(f.to_map()?)
    }

    pub fn corpus(&mut self, path: &Path) -> Result<Corpus, Failure> {
        let f: CorpusFile = self.load(path, "corpus")?;
        Ok(f.to_corpus()?)
    }

    pub fn json<T: DeserializeOwned>(&mut self, path: &Path, key: &str) -> Result<T, Failure> {
        self.load(path, key)
    }
}
