use std::fmt;
use std::str::FromStr;

use super::FamilyError;
use crate::decomp::ToffoliVariant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    BbSerial,
    BbParallel,
    LargeDepth,
    LargeWidth,
    Hybrid,
    HybridT1Parallel,
    HybridT2Parallel,
    HybridParallel,
    SelectSwapClean,
    SelectSwapDirty,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::BbSerial,
        Family::BbParallel,
        Family::LargeDepth,
        Family::LargeWidth,
        Family::Hybrid,
        Family::HybridT1Parallel,
        Family::HybridT2Parallel,
        Family::HybridParallel,
        Family::SelectSwapClean,
        Family::SelectSwapDirty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BbSerial => "bb-serial",
            Family::BbParallel => "bb-parallel",
            Family::LargeDepth => "large-depth",
            Family::LargeWidth => "large-width",
            Family::Hybrid => "hybrid",
            Family::HybridT1Parallel => "hybrid-t1-parallel",
            Family::HybridT2Parallel => "hybrid-t2-parallel",
            Family::HybridParallel => "hybrid-parallel",
            Family::SelectSwapClean => "selectswap-clean",
            Family::SelectSwapDirty => "selectswap-dirty",
        }
    }

    pub fn is_bucket_brigade(self) -> bool {
        matches!(self, Family::BbSerial | Family::BbParallel)
    }

    pub fn is_hybrid(self) -> bool {
        matches!(
            self,
            Family::Hybrid | Family::HybridT1Parallel | Family::HybridT2Parallel | Family::HybridParallel
        )
    }

    pub fn is_selectswap(self) -> bool {
        matches!(self, Family::SelectSwapClean | Family::SelectSwapDirty)
    }

    /// Families built from multi-controlled Toffolis.
    pub fn uses_mpmct(self) -> bool {
        matches!(self, Family::LargeDepth | Family::LargeWidth) || self.is_hybrid()
    }

    /// Families whose query depends on how many ones the memory holds.
    pub fn needs_q(self) -> bool {
        self.uses_mpmct()
    }

    pub fn has_builder(self) -> bool {
        !self.is_selectswap()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family plus its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyConfig {
    pub family: Family,
    /// Address bits. For SelectSwap, `N = 2^n`.
    pub n: u32,
    pub q: Option<u32>,
    pub k: Option<u32>,
    pub lambda: Option<u64>,
    pub b: Option<u64>,
    pub toffoli_variant: ToffoliVariant,
    /// Emit the even-parity register preparation and teardown (never counted).
    pub prepare_parity: bool,
    /// Build on the zero cells and flip the output at the end.
    pub complement: bool,
    /// Allow MPMCT families below `n = 4` and hybrid splits `2 ≤ k ≤ n − 1`;
    /// such circuits may not lower.
    pub relaxed: bool,
}

impl FamilyConfig {
    pub fn new(family: Family, n: u32) -> Self {
        FamilyConfig {
            family,
            n,
            q: None,
            k: None,
            lambda: None,
            b: None,
            toffoli_variant: ToffoliVariant::default(),
            prepare_parity: false,
            complement: false,
            relaxed: false,
        }
    }

    pub fn with_q(mut self, q: u32) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_lambda(mut self, lambda: u64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_b(mut self, b: u64) -> Self {
        self.b = Some(b);
        self
    }

    pub fn q_or_err(&self) -> Result<u32, FamilyError> {
        self.q.ok_or(FamilyError::Missing { param: "q", family: self.family })
    }

    pub fn k_or_err(&self) -> Result<u32, FamilyError> {
        self.k.ok_or(FamilyError::Missing { param: "k", family: self.family })
    }

    /// Parameter checks shared by every evaluator and builder.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let n = self.n;
        if n == 0 || n > 63 {
            return Err(FamilyError::AddressWidth(n));
        }
        let f = self.family;
        if f.is_selectswap() {
            let lambda = self.lambda.ok_or(FamilyError::Missing { param: "lambda", family: f })?;
            if lambda == 0 || self.b == Some(0) {
                return Err(FamilyError::Invalid("λ and b must be at least 1".into()));
            }
            if lambda > 1u64 << n {
                return Err(FamilyError::Invalid(format!("λ = {lambda} exceeds N = {}", 1u64 << n)));
            }
            return Ok(());
        }
        if f.uses_mpmct() && n < 4 && !self.relaxed {
            return Err(FamilyError::TooSmall { family: f, n });
        }
        if let Some(q) = self.q {
            if q > n {
                return Err(FamilyError::FullnessRange { n, q });
            }
        }
        if f.is_hybrid() {
            let k = self.k_or_err()?;
            // unlowered small instances only need two controls per tier
            let (lo, gap) = if self.relaxed { (2, 1) } else { (4, 3) };
            if k < lo || k + gap > n {
                return Err(FamilyError::SplitRange { n, k });
            }
        }
        Ok(())
    }
}
