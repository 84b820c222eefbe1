//! TOML spec files and the canonical spec hash.
//!
//! ```toml
//! p = 3
//! modulus = [2, 2, 1]      # monic, low degree first; omit for F_p
//! genus = 0
//!
//! [[wild]]                 # one table per Witt coordinate a_0, a_1, ...
//! num = [0, 0, 1]          # polynomial coefficients, low degree first
//! den = [1]
//!
//! [tame]                   # optional: χ = ω(N f)^{-Γ}
//! num = [0, 1]
//! den = [1]
//! gamma = 1
//! ```
//!
//! A coefficient is an integer (read mod p, embedded via F_p) or an array of
//! coordinates on the power basis of F_q.

use std::path::Path;

use hodgebound_core::arith::{FieldDesc, FieldElement};
use hodgebound_core::character::{CharacterSpec, RationalFunction, TameSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{AppError, AppResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Coords(Vec<i64>),
}

fn one() -> Vec<Coefficient> {
    vec![Coefficient::Int(1)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    #[serde(default)]
    pub num: Vec<Coefficient>,
    #[serde(default = "one")]
    pub den: Vec<Coefficient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TameFile {
    #[serde(default)]
    pub num: Vec<Coefficient>,
    #[serde(default = "one")]
    pub den: Vec<Coefficient>,
    pub gamma: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub wild: Vec<FunctionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tame: Option<TameFile>,
}

impl SpecFile {
    pub fn parse(text: &str) -> AppResult<Self> {
        toml::from_str(text).map_err(|e| AppError::Spec(e.to_string()))
    }

    pub fn load(path: &Path) -> AppResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            AppError::Spec(msg) => AppError::Spec(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn field(&self) -> AppResult<FieldDesc> {
        let field = match &self.modulus {
            None => FieldDesc::prime_field(self.p)?,
            Some(m) => FieldDesc::from_modulus(self.p, m.clone())?,
        };
        Ok(field)
    }

    /// The normalized character; fails with an input error on bad data.
    pub fn to_spec(&self) -> AppResult<CharacterSpec> {
        let k = self.field()?;
        if self.wild.is_empty() {
            return Err(AppError::Spec("at least one [[wild]] coordinate is required".into()));
        }
        let wild = self
            .wild
            .iter()
            .map(|w| function(&k, &w.num, &w.den))
            .collect::<AppResult<Vec<_>>>()?;
        let tame = match &self.tame {
            Some(t) => Some(TameSpec {
                f: function(&k, &t.num, &t.den)?,
                gamma: t.gamma,
            }),
            None => None,
        };
        Ok(CharacterSpec::new(k, wild.len(), self.genus, wild, tame)?)
    }

    /// The canonical file of a normalized spec: trimmed polynomials, Γ reduced
    /// mod q − 1, a trivial tame part dropped, coordinates written in full.
    pub fn from_spec(spec: &CharacterSpec) -> Self {
        let k = spec.field();
        let prime = k.degree() == 1;
        let coeffs = |cs: &[FieldElement]| -> Vec<Coefficient> {
            cs.iter()
                .map(|c| {
                    let v: Vec<i64> = c.coeffs().iter().map(|&x| x as i64).collect();
                    if prime {
                        Coefficient::Int(v[0])
                    } else {
                        Coefficient::Coords(v)
                    }
                })
                .collect()
        };
        SpecFile {
            p: k.p(),
            modulus: (!prime).then(|| k.modulus().to_vec()),
            genus: spec.genus(),
            wild: spec
                .wild()
                .iter()
                .map(|w| FunctionFile {
                    num: coeffs(w.num()),
                    den: coeffs(w.den()),
                })
                .collect(),
            tame: spec.tame().map(|t| TameFile {
                num: coeffs(t.f.num()),
                den: coeffs(t.f.den()),
                gamma: t.gamma,
            }),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files always serialize")
    }
}

fn element(k: &FieldDesc, c: &Coefficient) -> AppResult<FieldElement> {
    match c {
        Coefficient::Int(v) => Ok(k.from_int(*v)),
        Coefficient::Coords(v) => Ok(k.element(v)?),
    }
}

fn function(k: &FieldDesc, num: &[Coefficient], den: &[Coefficient]) -> AppResult<RationalFunction> {
    let num = num.iter().map(|c| element(k, c)).collect::<AppResult<Vec<_>>>()?;
    let den = den.iter().map(|c| element(k, c)).collect::<AppResult<Vec<_>>>()?;
    Ok(RationalFunction::new(num, den)?)
}

/// Canonical TOML of a spec; specs with the same normalized presentation
/// serialize identically.
pub fn canonical_toml(spec: &CharacterSpec) -> String {
    SpecFile::from_spec(spec).to_toml()
}

/// Hex SHA-256 of the canonical serialization.
pub fn spec_hash(spec: &CharacterSpec) -> String {
    hex::encode(Sha256::digest(canonical_toml(spec).as_bytes()))
}

pub fn load_spec(path: &Path) -> AppResult<CharacterSpec> {
    SpecFile::load(path)?.to_spec()
}
