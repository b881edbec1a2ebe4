use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::givens::{compose_givens, GivensSequence};
use crate::{CircuitError, Result};

/// Version tag written into every program.
pub const SCHEMA_VERSION: u32 = 1;

/// Serde helpers writing floats with 17 significant digits.
pub(crate) mod digits {
    use serde::{Serialize, Serializer};
    use serde_json::Number;

    fn number(x: f64) -> Result<Number, String> {
        format!("{x:.16e}").parse::<Number>().map_err(|_| format!("non-finite value {x}"))
    }

    struct Real(f64);

    pub(super) fn value<E: serde::de::Error>(n: Number) -> Result<f64, E> {
        n.as_f64().ok_or_else(|| E::custom(format!("{n} is not representable as f64")))
    }

    impl Serialize for Real {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            number(self.0).map_err(serde::ser::Error::custom)?.serialize(s)
        }
    }

    pub mod real {
        use serde::{Deserialize, Deserializer, Serialize, Serializer};
        use serde_json::Number;

        pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
            super::Real(*x).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
            super::value(Number::deserialize(d)?)
        }
    }

    pub mod optional {
        use serde::{Deserialize, Deserializer, Serialize, Serializer};
        use serde_json::Number;

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            x.map(super::Real).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Option::<Number>::deserialize(d)?.map(super::value).transpose()
        }
    }

    pub mod vector {
        use serde::{Deserialize, Deserializer, Serializer};
        use serde_json::Number;

        pub fn serialize<S: Serializer>(x: &[f64], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(x.iter().map(|&v| super::Real(v)))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Vec::<Number>::deserialize(d)?.into_iter().map(super::value).collect()
        }
    }

    pub mod rows {
        use serde::{Deserialize, Deserializer, Serialize, Serializer};
        use serde_json::Number;

        pub fn serialize<S: Serializer>(x: &Option<Vec<Vec<f64>>>, s: S) -> Result<S::Ok, S::Error> {
            x.as_ref()
                .map(|rows| rows.iter().map(|r| r.iter().map(|&v| super::Real(v)).collect::<Vec<_>>()).collect::<Vec<_>>())
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<f64>>>, D::Error> {
            Option::<Vec<Vec<Number>>>::deserialize(d)?
                .map(|rows| rows.into_iter().map(|r| r.into_iter().map(super::value).collect()).collect())
                .transpose()
        }
    }
}

/// Which basis the program prepares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Boundary,
    Bulk,
}

/// Ground or thermal preparation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Ground,
    Thermal,
}

/// A passive linear-optics transform, as a dense matrix and/or Givens list.
///
/// Acting on quadratures, the gate maps the covariance blocks as
/// Γ_qq → MᵀΓ_qqM and Γ_pp → MᵀΓ_ppM (input mode j feeds output mode i with
/// weight M_ji).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interferometer {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "digits::rows")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub givens: Option<GivensSequence>,
}

impl Interferometer {
    /// Dense V×V matrix, rebuilt from the Givens list if no matrix is stored.
    pub fn to_matrix(&self) -> Result<DMatrix<f64>> {
        match (&self.matrix, &self.givens) {
            (Some(rows), _) => {
                let v = rows.len();
                if rows.iter().any(|r| r.len() != v) {
                    return Err(CircuitError::Malformed("interferometer matrix is not square".into()));
                }
                Ok(DMatrix::from_fn(v, v, |i, j| rows[i][j]))
            }
            (None, Some(seq)) => compose_givens(seq),
            (None, None) => Err(CircuitError::Malformed("interferometer without matrix or givens".into())),
        }
    }
}

/// One gate record, tagged by `type` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Gate {
    /// Replaces a vacuum mode by a thermal state of covariance ½coth(1/T)·I.
    ThermalInit {
        mode: usize,
        #[serde(with = "digits::real")]
        temperature: f64,
    },
    /// q → e^{2α}q, p → e^{−2α}p on one mode.
    Squeeze {
        mode: usize,
        #[serde(with = "digits::real")]
        alpha: f64,
    },
    Interferometer(Interferometer),
}

/// Lattice parameters the program was emitted for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecSnapshot {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    #[serde(with = "digits::real")]
    pub m0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    /// 20·α_max·log₁₀e.
    #[serde(with = "digits::real")]
    pub max_squeeze_db: f64,
    /// Normal mode 0 (the massless zero mode) is left in vacuum.
    pub zero_mode_excluded: bool,
    pub spec: SpecSnapshot,
}

/// A Gaussian preparation program with gates in application order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitProgram {
    pub version: u32,
    pub modes: usize,
    pub target: Target,
    pub state_kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "digits::optional")]
    pub beta: Option<f64>,
    pub gates: Vec<Gate>,
    pub metadata: Metadata,
}

impl CircuitProgram {
    /// Pretty-printed JSON.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let program: Self = serde_json::from_str(text)?;
        if program.version != SCHEMA_VERSION {
            return Err(CircuitError::Malformed(format!("unsupported schema version {}", program.version)));
        }
        Ok(program)
    }
}
