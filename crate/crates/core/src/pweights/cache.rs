use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{PermutationWeightSet, PweightsError};
use crate::weightlattice::{AffineDominant, FiniteWeight};

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot encode cache entry: {0}")]
    Encode(#[from] serde_json::Error),
}

/// On-disk form of a [`PermutationWeightSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PweightsFile {
    pub rank: usize,
    pub labels: Vec<u32>,
    pub level: u32,
    pub horizon: u32,
    pub depths: BTreeMap<u32, Vec<Vec<i64>>>,
}

impl From<PermutationWeightSet> for PweightsFile {
    fn from(s: PermutationWeightSet) -> Self {
        let depths = s
            .depths
            .iter()
            .enumerate()
            .map(|(d, ws)| (d as u32, ws.iter().map(|w| w.coords().to_vec()).collect()))
            .collect();
        Self { rank: s.source.rank(), labels: s.source.labels().to_vec(), level: s.source.level(), horizon: s.horizon, depths }
    }
}

impl TryFrom<PweightsFile> for PermutationWeightSet {
    type Error = PweightsError;

    fn try_from(f: PweightsFile) -> Result<Self, Self::Error> {
        let source = AffineDominant::new(f.labels)?;
        if source.rank() != f.rank || source.level() != f.level {
            return Err(PweightsError::Invalid("rank or level disagrees with labels".into()));
        }
        if f.depths.keys().any(|&d| d > f.horizon) {
            return Err(PweightsError::Invalid("depth beyond horizon".into()));
        }
        let mut slices = vec![Vec::new(); f.horizon as usize + 1];
        for (d, ws) in f.depths {
            for c in ws {
                if c.len() != f.rank + 1 {
                    return Err(PweightsError::Invalid(format!("coordinates {c:?} have the wrong length")));
                }
                slices[d as usize].push(FiniteWeight::from_coords(c)?);
            }
        }
        PermutationWeightSet::new(source, slices)
    }
}

/// Directory of JSON files, one per `(N, labels)`, each holding the largest
/// horizon computed so far. Single writer; files are replaced atomically.
#[derive(Debug, Clone)]
pub struct WeightCache {
    dir: PathBuf,
}

impl WeightCache {
    pub const ENV: &'static str = "PWLIE_CACHE";

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$PWLIE_CACHE`, else `$HOME/.cache/pwlie`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os(Self::ENV).filter(|d| !d.is_empty()) {
            return Some(PathBuf::from(d));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("pwlie"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, source: &AffineDominant) -> PathBuf {
        let labels: Vec<String> = source.labels().iter().map(u32::to_string).collect();
        self.dir.join(format!("a{}_{}.json", source.rank(), labels.join("-")))
    }

    /// The cached set cut to `horizon`, or `None` when absent, too shallow,
    /// or unreadable as a valid set.
    pub fn load(&self, source: &AffineDominant, horizon: u32) -> Result<Option<PermutationWeightSet>, CacheError> {
        let path = self.path_for(source);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        match serde_json::from_str::<PermutationWeightSet>(&text) {
            Ok(set) if set.source() == source => Ok((set.horizon() >= horizon).then(|| set.truncated(horizon))),
            Ok(_) => {
                log::warn!("{} holds a different weight; recomputing", path.display());
                Ok(None)
            }
            Err(e) => {
                log::warn!("discarding corrupt cache entry {}: {e}", path.display());
                Ok(None)
            }
        }
    }

    /// Writes `set` unless an entry with at least its horizon is present.
    pub fn store(&self, set: &PermutationWeightSet) -> Result<(), CacheError> {
        if let Ok(Some(_)) = self.load(set.source(), set.horizon()) {
            return Ok(());
        }
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CacheError::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let path = self.path_for(set.source());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(set)?).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        Ok(())
    }
}
