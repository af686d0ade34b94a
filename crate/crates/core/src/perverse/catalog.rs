//! The finite catalog of conventions for blow-up quiver data.
//!
//! An entry fixes the equation, the stability predicate and the framing
//! components of the two projections. The `X`, `Y` components are always
//! `(d·B₁, d·B₂)` for ζ and `(B₁·d, B₂·d)` for η; the framing components range
//! over every type-consistent path of length at most 2 in the arrows and
//! their transposes.

use serde::{Deserialize, Serialize};

pub const CATALOG_VERSION: &str = "v1";

/// The shipped table; a test keeps it in sync with [`catalog_table`].
pub const CATALOG_TABLE_V1: &str = include_str!("catalog_v1.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationForm {
    /// `B₁dB₂ - B₂dB₁ = 0`.
    Literal,
    /// `B₁dB₂ - B₂dB₁ + jᵀiᵀ = 0`.
    FramedTransposePlus,
    /// `B₁dB₂ - B₂dB₁ - jᵀiᵀ = 0`.
    FramedTransposeMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityForm {
    /// Largest `(S₁, S₂)` with `S₂ ⊆ ker j` closed under the arrows; stable iff `S₁ = 0`.
    Literal,
    /// Largest `(S₁, S₂)` with `S₁ ⊆ ker iᵀ` closed under the arrows; stable iff `S₁ = 0`.
    CoFramed,
    /// As [`StabilityForm::CoFramed`], stable iff `S₁ = 0` and `S₂ = 0`.
    CoFramedStrict,
}

/// ζ framing into `(V₁, W)`: `i`-component `n₁ × r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaI {
    I,
    DJt,
}

/// ζ framing `j`-component `r × n₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaJ {
    JB1,
    JB2,
    It,
}

/// η framing into `(V₂, W)`: `i`-component `n₂ × r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaI {
    B1I,
    B2I,
    Jt,
}

/// η framing `j`-component `r × n₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaJ {
    J,
    ItD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConventionId {
    pub equation: EquationForm,
    pub stability: StabilityForm,
    pub zeta: (ZetaI, ZetaJ),
    pub eta: (EtaI, EtaJ),
}

const EQUATIONS: [EquationForm; 3] =
    [EquationForm::Literal, EquationForm::FramedTransposePlus, EquationForm::FramedTransposeMinus];
const STABILITIES: [StabilityForm; 3] = [StabilityForm::Literal, StabilityForm::CoFramed, StabilityForm::CoFramedStrict];
const ZETA_I: [ZetaI; 2] = [ZetaI::I, ZetaI::DJt];
const ZETA_J: [ZetaJ; 3] = [ZetaJ::JB1, ZetaJ::JB2, ZetaJ::It];
const ETA_I: [EtaI; 3] = [EtaI::B1I, EtaI::B2I, EtaI::Jt];
const ETA_J: [EtaJ; 2] = [EtaJ::J, EtaJ::ItD];

impl EquationForm {
    pub fn all() -> [EquationForm; 3] {
        EQUATIONS
    }

    pub fn describe(&self) -> &'static str {
        match self {
            EquationForm::Literal => "B1dB2 - B2dB1",
            EquationForm::FramedTransposePlus => "B1dB2 - B2dB1 + j^T i^T",
            EquationForm::FramedTransposeMinus => "B1dB2 - B2dB1 - j^T i^T",
        }
    }
}

impl StabilityForm {
    pub fn all() -> [StabilityForm; 3] {
        STABILITIES
    }

    pub fn describe(&self) -> &'static str {
        match self {
            StabilityForm::Literal => "S2 in ker j; S1 = 0",
            StabilityForm::CoFramed => "S1 in ker i^T; S1 = 0",
            StabilityForm::CoFramedStrict => "S1 in ker i^T; S1 = S2 = 0",
        }
    }
}

impl ConventionId {
    /// Position in [`catalog`].
    pub fn index(&self) -> usize {
        catalog().iter().position(|c| c == self).expect("catalog member")
    }

    pub fn label(&self) -> String {
        format!("C{:03}", self.index())
    }

    pub fn zeta_description(&self) -> String {
        let i = match self.zeta.0 {
            ZetaI::I => "i",
            ZetaI::DJt => "d j^T",
        };
        let j = match self.zeta.1 {
            ZetaJ::JB1 => "j B1",
            ZetaJ::JB2 => "j B2",
            ZetaJ::It => "i^T",
        };
        format!("(dB1, dB2, {i}, {j})")
    }

    pub fn eta_description(&self) -> String {
        let i = match self.eta.0 {
            EtaI::B1I => "B1 i",
            EtaI::B2I => "B2 i",
            EtaI::Jt => "j^T",
        };
        let j = match self.eta.1 {
            EtaJ::J => "j",
            EtaJ::ItD => "i^T d",
        };
        format!("(B1d, B2d, {i}, {j})")
    }

    pub fn from_label(label: &str) -> Option<Self> {
        let idx: usize = label.strip_prefix('C')?.parse().ok()?;
        catalog().get(idx).copied()
    }
}

impl std::fmt::Display for ConventionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// All entries, equation-major.
pub fn catalog() -> Vec<ConventionId> {
    let mut out = Vec::with_capacity(324);
    for equation in EQUATIONS {
        for stability in STABILITIES {
            for zi in ZETA_I {
                for zj in ZETA_J {
                    for ei in ETA_I {
                        for ej in ETA_J {
                            out.push(ConventionId { equation, stability, zeta: (zi, zj), eta: (ei, ej) });
                        }
                    }
                }
            }
        }
    }
    out
}

/// The catalog as a plain-text table.
pub fn catalog_table() -> String {
    let mut out = format!("# convention catalog {CATALOG_VERSION}\n# id | equation | stability | zeta | eta\n");
    for (k, c) in catalog().iter().enumerate() {
        out.push_str(&format!(
            "C{k:03} | {} | {} | {} | {}\n",
            c.equation.describe(),
            c.stability.describe(),
            c.zeta_description(),
            c.eta_description()
        ));
    }
    out
}
