//! Verification and minimal repair of well-graded union-closed set families.
//!
//! A family of finite sets is *well-graded* when any two of its sets are
//! joined by a tight path (single-element moves, none wasted). A
//! well-graded ∪-closed family containing `∅` is a *learning space*. Such
//! families are summarized by their base, the sets that are not unions of
//! other sets, and this crate works on bases directly:
//!
//! * [`verify`]: polynomial tests for "is a base", "is the base of a
//!   learning space" and "is the base of a well-graded ∪-closed family";
//! * [`extension`]: minimal well-graded extensions of arbitrary families;
//! * [`sat`]: the 3-SAT gadget showing that keeping every input set in the
//!   base of an extension is NP-complete;
//! * [`oracle`]: brute-force reference implementations used by the tests.

pub mod closure;
pub mod endpoints;
pub mod error;
pub mod extension;
pub mod family;
pub mod fixtures;
pub mod generate;
pub mod ground;
pub mod oracle;
pub mod path;
pub mod sat;
pub mod scaling;
pub mod set;
pub mod surmise;
pub mod verify;

pub use closure::{atoms, base_of, is_union_closed, span, span_with_limit, DEFAULT_SPAN_LIMIT};
pub use error::{Error, Result};
pub use extension::{
    minimal_wg_extension, path_extension, verify_extension, Extension, PathFamily,
};
pub use family::{SetFamily, SizeParams};
pub use ground::GroundSet;
pub use path::TightPath;
pub use set::StateSet;
pub use surmise::{is_discriminative, surmise, SurmiseFunction};
pub use verify::{
    endpoints, is_base, is_learning_space_base, is_wg_base, is_wg_base_parallel, quotient,
    surmise_is_partition, Reason, VerificationReport, Witness,
};
