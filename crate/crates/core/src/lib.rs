//! qRAM circuit families over Clifford+T: synthesis, lowering, logical
//! resource counting, surface-code cost estimation and small-instance
//! verification.

pub mod decomp;
pub mod families;
pub mod ftcost;
pub mod ir;
pub mod verify;

pub use decomp::{lower_to_clifford_t, DecompError, ToffoliVariant};
pub use families::{Family, FamilyConfig, FamilyError, MemorySpec};
pub use ftcost::{PhysicalEstimate, SurfaceCodeParams};
pub use ir::{Circuit, Gate, Qubit, ResourceCounts};
