//! On-disk cache of derivation bases. Each entry is a JSON file with a
//! format-version header; entries with another version are recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::alphabet::Alphabet;
use crate::derivation::{DerKind, ThetaDerivation};
use crate::error::{Error, Result};
use crate::serial::Json;
use crate::subspace::{johnson_image, theta_der_basis, Subspace};

pub const FORMAT_VERSION: u32 = 1;
pub const ENV_VAR: &str = "JOHNSONLAB_CACHE";

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

/// Whether a lookup was served from disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("cannot create {}: {e}", dir.display())))?;
        Ok(BasisCache { dir })
    }

    /// The directory from the flag if given, otherwise from `JOHNSONLAB_CACHE`.
    pub fn from_flag_or_env(flag: Option<&Path>) -> Result<Option<Self>> {
        match flag.map(Path::to_path_buf).or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from)) {
            Some(d) => Ok(Some(Self::new(d)?)),
            None => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn read(&self, key: &str) -> Option<Vec<Value>> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v.get("format_version")?.as_u64()? != FORMAT_VERSION as u64 || v.get("key")?.as_str()? != key {
            return None;
        }
        v.get("data")?.as_array().cloned()
    }

    fn write(&self, key: &str, data: Vec<Value>) -> Result<()> {
        let v = json!({"format_version": FORMAT_VERSION, "key": key, "data": data});
        let tmp = self.dir.join(format!("{key}.json.tmp"));
        fs::write(&tmp, v.to_string()).map_err(|e| Error::Cache(e.to_string()))?;
        fs::rename(&tmp, self.path(key)).map_err(|e| Error::Cache(e.to_string()))
    }

    fn cached_subspace(
        &self,
        key: &str,
        al: Alphabet,
        degree: i32,
        kind: DerKind,
        compute: impl FnOnce() -> Result<Subspace>,
    ) -> Result<(Subspace, CacheStatus)> {
        if let Some(data) = self.read(key) {
            let basis: Result<Vec<ThetaDerivation>> = data.iter().map(ThetaDerivation::from_json).collect();
            if let Ok(basis) = basis {
                return Ok((Subspace::from_spanning(al, degree, kind, basis)?, CacheStatus::Hit));
            }
        }
        let s = compute()?;
        self.write(key, s.basis().into_iter().map(|d| d.to_json()).collect())?;
        Ok((s, CacheStatus::Miss))
    }

    pub fn theta_der_basis(&self, al: Alphabet, m: i32, kind: DerKind) -> Result<(Subspace, CacheStatus)> {
        let key = format!("derbasis-{}-m{m}-{}", cache_tag(al), kind.name());
        self.cached_subspace(&key, al, m, kind, || theta_der_basis(al, m, kind))
    }

    pub fn johnson_image(&self, al: Alphabet, m: usize) -> Result<(Subspace, CacheStatus)> {
        let key = format!("johnson-{}-m{m}", cache_tag(al));
        self.cached_subspace(&key, al, m as i32, DerKind::Lie, || johnson_image(al, m))
    }
}

fn cache_tag(al: Alphabet) -> String {
    match al.model() {
        crate::alphabet::Model::Symplectic { genus } => format!("g{genus}"),
        crate::alphabet::Model::Boundary { punctures, base } => format!("p{punctures}b{base}"),
    }
}

/// Computes through the cache when one is configured.
pub fn theta_der_basis_cached(cache: Option<&BasisCache>, al: Alphabet, m: i32, kind: DerKind) -> Result<Subspace> {
    match cache {
        Some(c) => Ok(c.theta_der_basis(al, m, kind)?.0),
        None => theta_der_basis(al, m, kind),
    }
}

pub fn johnson_image_cached(cache: Option<&BasisCache>, al: Alphabet, m: usize) -> Result<Subspace> {
    match cache {
        Some(c) => Ok(c.johnson_image(al, m)?.0),
        None => johnson_image(al, m),
    }
}
