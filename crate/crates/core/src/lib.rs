//! Exact computations in the tensor and shuffle algebras over `1..=d`.

pub mod double;
pub mod error;
pub mod guard;
pub mod hall;
pub mod linalg;
pub mod pwl;
pub mod scalar;
pub mod span;
pub mod tensor;
pub mod trees;
pub mod word;

pub use double::DoubleTensor;
pub use error::{Error, Result};
pub use hall::{HallBasis, HallKind, HallWord};
pub use pwl::{ScalarMode, ScalarSeries, TimeSeries};
pub use scalar::Scalar;
pub use span::{AMembership, Permutation, SpanReport};
pub use tensor::{CoproductTerms, RhoMethod, TensorElem};
pub use trees::{AreaTree, MixedTree, NodeKind};
pub use word::{Letter, Word};
