use std::fmt;
use std::fs;
use std::path::Path;

use circord::abelian::{BlowdownData, RotationParams};
use circord::freeprod::LexOrder;
use circord::order::{ExplicitTable, FiniteRotation, Transformed};
use circord::realization::RealizationMap;
use circord::{CircularOrderSpec, LinearOrderSpec};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::exit;

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<circord::Error> for Failure {
    fn from(e: circord::Error) -> Self {
        use circord::Error as E;
        let code = match e {
            E::Exhausted(_) | E::NotUnsat => exit::FAILED,
            _ => exit::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Parses JSON text; errors name the offending path, e.g. `theta[0].terms`.
pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Failure::usage(format!("{what}: at {path}: {}", e.into_inner()))
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    parse_json(&read(path)?, &path.display().to_string())
}

/// Order specs are tagged by `"type"`, and serde buffers tagged content,
/// which hides the path of a nested error. On failure the payload is parsed
/// again as its variant type to recover the path.
pub fn load_order(path: &Path) -> Result<CircularOrderSpec, Failure> {
    let text = read(path)?;
    let what = path.display().to_string();
    parse_json::<CircularOrderSpec>(&text, &what).map_err(|f| locate(&text, &what).unwrap_or(f))
}

fn locate(text: &str, what: &str) -> Option<Failure> {
    #[derive(Deserialize)]
    #[allow(dead_code)]
    struct Wrap {
        lin: LinearOrderSpec,
    }
    fn tracked<T: DeserializeOwned>(v: Value, what: &str) -> Option<Failure> {
        serde_path_to_error::deserialize::<_, T>(v).err().map(|e| {
            let path = e.path().to_string();
            Failure::usage(format!("{what}: at {path}: {}", e.into_inner()))
        })
    }
    let mut v: Value = serde_json::from_str(text).ok()?;
    let kind = v.as_object_mut()?.remove("type")?;
    match kind.as_str()? {
        "rotation" => tracked::<RotationParams>(v, what),
        "linear_wrap" => tracked::<Wrap>(v, what),
        "intertwined" => tracked::<BlowdownData>(v, what),
        "lex_free_product" => tracked::<LexOrder>(v, what),
        "finite_rotation" => tracked::<FiniteRotation>(v, what),
        "explicit_table" => tracked::<ExplicitTable>(v, what),
        "point_recovered" => tracked::<RealizationMap>(v, what),
        "transformed" => tracked::<Transformed>(v, what),
        _ => None,
    }
}
