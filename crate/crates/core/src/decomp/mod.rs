//! Clifford+T lowering of Toffoli and multi-controlled Toffoli gates.

mod lower;
mod mpmct;
mod toffoli;

pub use lower::lower_to_clifford_t;
pub use mpmct::{decompose_mpmct, mpmct_template};
pub use toffoli::{decompose_toffoli, ToffoliVariant};

use crate::ir::IrError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompError {
    #[error("MPMCT decomposition requires ≥ 4 controls, got {0}")]
    TooFewControls(usize),
    #[error("insufficient ancillas: need {needed}, have {available}")]
    InsufficientAncillas { needed: usize, available: usize },
    #[error("polarity length does not match control count")]
    PolarityLength,
    #[error("unknown Toffoli variant '{0}' (expected td1, td2 or td3)")]
    UnknownVariant(String),
    #[error(transparent)]
    Ir(#[from] IrError),
}
