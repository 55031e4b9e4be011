//! Reading `--input` fixtures. Every fixture is a UTF-8 JSON document; parse
//! errors report `path:line:column`.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::error::{HarnessError, Result};
use crate::category::{CategorySpec, LogCfgSpec, TowerSpec};
use crate::models::{CurveFiberDatum, CurvePointDatum};
use crate::monoid::{FgMonoid, MonoidHom};

/// A parsed fixture file and the directory that relative paths inside it
/// are resolved against.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub path: PathBuf,
    pub value: Value,
}

impl Fixture {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::input(path.display().to_string(), e))?;
        let value = serde_json::from_str(&text).map_err(|e| located(path, &e))?;
        Ok(Fixture {
            path: path.to_path_buf(),
            value,
        })
    }

    pub fn base(&self) -> &Path {
        self.path.parent().unwrap_or_else(|| Path::new("."))
    }

    /// Deserializes the whole document. Re-parses the source text so that
    /// errors carry a line and column.
    pub fn parse<T: DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.value.clone()).map_err(|e| {
            let text = std::fs::read_to_string(&self.path).unwrap_or_default();
            match serde_json::from_str::<T>(&text) {
                Err(located_err) => located(&self.path, &located_err),
                Ok(_) => HarnessError::input(self.path.display().to_string(), e),
            }
        })
    }

    pub fn has_key(&self, key: &str) -> bool {
        self.value.get(key).is_some()
    }

    fn field<T: DeserializeOwned>(&self, key: &str) -> Result<T> {
        let v = self
            .value
            .get(key)
            .ok_or_else(|| HarnessError::input(self.path.display().to_string(), format!("missing field `{key}`")))?;
        serde_json::from_value(v.clone())
            .map_err(|e| HarnessError::input(format!("{}: field `{key}`", self.path.display()), e))
    }
}

fn located(path: &Path, e: &serde_json::Error) -> HarnessError {
    HarnessError::input(format!("{}:{}:{}", path.display(), e.line(), e.column()), e)
}

/// Input of the `monoid` subcommands.
#[derive(Clone, Debug)]
pub enum MonoidInput {
    Monoid(FgMonoid),
    Hom(MonoidHom),
    /// `{"h": ..., "f": ...}` for a pushout of `f` along `h`.
    Pushout {
        h: MonoidHom,
        f: MonoidHom,
    },
}

impl MonoidInput {
    pub fn from_fixture(fx: &Fixture) -> Result<Self> {
        if fx.has_key("h") {
            Ok(MonoidInput::Pushout {
                h: fx.field("h")?,
                f: fx.field("f")?,
            })
        } else if fx.has_key("matrix") {
            fx.parse().map(MonoidInput::Hom)
        } else {
            fx.parse().map(MonoidInput::Monoid)
        }
    }
}

/// A fibered tower, given directly or as a LogCfg to feed through `phi`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TowerInput {
    Tower(TowerSpec),
    LogCfg(LogCfgSpec),
}

impl TowerInput {
    pub fn from_fixture(fx: &Fixture) -> Result<Self> {
        if fx.has_key("x") && fx.has_key("m") {
            fx.parse().map(TowerInput::LogCfg)
        } else {
            fx.parse().map(TowerInput::Tower)
        }
    }
}

/// A fibration `F: C -> D`, for `cat cartesian`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorInput {
    pub source: crate::category::CategoryRef,
    pub target: crate::category::CategoryRef,
    pub functor: crate::category::FunctorMapSpec,
}

#[derive(Clone, Debug)]
pub enum CatInput {
    Category(CategorySpec),
    Functor(FunctorInput),
    Tower(TowerInput),
}

impl CatInput {
    pub fn from_fixture(fx: &Fixture) -> Result<Self> {
        if fx.has_key("objects") {
            fx.parse().map(CatInput::Category)
        } else if fx.has_key("functor") {
            fx.parse().map(CatInput::Functor)
        } else {
            TowerInput::from_fixture(fx).map(CatInput::Tower)
        }
    }
}

#[derive(Clone, Debug)]
pub enum CurveInput {
    Point(CurvePointDatum),
    Fiber(CurveFiberDatum),
}

impl CurveInput {
    pub fn from_fixture(fx: &Fixture) -> Result<Self> {
        if fx.has_key("nodes") {
            fx.parse().map(CurveInput::Fiber)
        } else {
            fx.parse().map(CurveInput::Point)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
        let p = dir.path().join(name);
        std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p
    }

    #[test]
    fn syntax_errors_are_located() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "bad.json", "{\n  \"ambient\": \n}");
        let err = Fixture::read(&p).unwrap_err();
        let HarnessError::Input { location, .. } = err else {
            panic!()
        };
        assert!(location.ends_with("bad.json:3:1"), "{location}");
    }

    #[test]
    fn semantic_errors_are_located() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "m.json",
            "{\"ambient\": {\"rank\": 1, \"torsion\": [1]},\n \"generators\": [[1]]}",
        );
        let fx = Fixture::read(&p).unwrap();
        let err = MonoidInput::from_fixture(&fx).unwrap_err();
        let HarnessError::Input { location, reason } = err else {
            panic!()
        };
        assert!(location.contains("m.json:"), "{location}");
        assert!(reason.contains("torsion"), "{reason}");
    }

    #[test]
    fn dispatch_on_keys() {
        let dir = tempfile::tempdir().unwrap();
        let m = r#"{"ambient": {"rank": 1, "torsion": []}, "generators": [[2], [3]]}"#;
        let p = write(&dir, "cusp.json", m);
        assert!(matches!(
            MonoidInput::from_fixture(&Fixture::read(&p).unwrap()).unwrap(),
            MonoidInput::Monoid(_)
        ));
        let h = format!(r#"{{"domain": {m}, "codomain": {m}, "matrix": [[1]]}}"#);
        let p = write(&dir, "h.json", &h);
        assert!(matches!(
            MonoidInput::from_fixture(&Fixture::read(&p).unwrap()).unwrap(),
            MonoidInput::Hom(_)
        ));
    }
}
