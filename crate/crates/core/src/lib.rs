pub mod algebra;
pub mod canon;
pub mod decomposition;
pub mod error;
pub mod incidence;
pub mod linalg;
pub mod presentation;
pub mod profile;
pub mod series;
pub mod structure;
pub mod subsets;
pub mod tournament;

pub use algebra::{AgeBasis, AlgebraElement};
pub use canon::CanonicalCode;
pub use decomposition::{Decomposition, DecompositionBlock, Monomial};
pub use error::{Error, Result};
pub use linalg::ExactMatrix;
pub use presentation::{LexSumPresentation, MultichainPresentation, Presentation, Source};
pub use profile::ProfileSequence;
pub use series::{Denominator, GrowthClass, RationalForm, TruncatedSeries};
pub use structure::{are_isomorphic, is_autonomous, is_local_iso, RelStruct, Relation, Signature};
pub use tournament::{TournamentRegime, TournamentReport};
