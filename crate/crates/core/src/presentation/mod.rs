//! Finite descriptions of infinite structures and enumeration of their ages.

pub mod fixtures;
pub mod lexsum;
pub mod multichain;
pub mod slow;

use std::collections::BTreeMap;

use crate::canon::CanonicalCode;
use crate::error::Result;
use crate::structure::{RelStruct, Signature};

pub use lexsum::{BlockKind, BlockSize, LexBlock, LexSumPresentation};
pub use multichain::{Comparator, MultichainPresentation, Origin, SymbolRule, Word};
pub use slow::{slow_profile_indices, slow_profile_structure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Multichain(MultichainPresentation),
    LexSum(LexSumPresentation),
}

impl Presentation {
    pub fn signature(&self) -> Signature {
        match self {
            Presentation::Multichain(p) => p.signature().clone(),
            Presentation::LexSum(_) => Signature::binary(),
        }
    }

    pub fn enumerate_age(&self, n: usize) -> BTreeMap<CanonicalCode, RelStruct> {
        match self {
            Presentation::Multichain(p) => p.enumerate_age(n),
            Presentation::LexSum(p) => p.enumerate_age(n),
        }
    }

    pub fn to_multichain(&self) -> Result<MultichainPresentation> {
        match self {
            Presentation::Multichain(p) => Ok(p.clone()),
            Presentation::LexSum(p) => p.to_multichain(),
        }
    }
}

impl From<MultichainPresentation> for Presentation {
    fn from(p: MultichainPresentation) -> Self {
        Presentation::Multichain(p)
    }
}

impl From<LexSumPresentation> for Presentation {
    fn from(p: LexSumPresentation) -> Self {
        Presentation::LexSum(p)
    }
}

/// Anything with a profile: a finite structure or a presented infinite one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Finite(RelStruct),
    Presented(Presentation),
}

impl Source {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Source::Presented(_))
    }

    pub fn signature(&self) -> Signature {
        match self {
            Source::Finite(r) => r.signature().clone(),
            Source::Presented(p) => p.signature(),
        }
    }

    /// Largest `n` with a non-empty age level, if the source is finite.
    pub fn max_size(&self) -> Option<usize> {
        match self {
            Source::Finite(r) => Some(r.domain_size()),
            Source::Presented(_) => None,
        }
    }
}

impl From<RelStruct> for Source {
    fn from(r: RelStruct) -> Self {
        Source::Finite(r)
    }
}

impl From<Presentation> for Source {
    fn from(p: Presentation) -> Self {
        Source::Presented(p)
    }
}

impl From<MultichainPresentation> for Source {
    fn from(p: MultichainPresentation) -> Self {
        Source::Presented(p.into())
    }
}

impl From<LexSumPresentation> for Source {
    fn from(p: LexSumPresentation) -> Self {
        Source::Presented(p.into())
    }
}
