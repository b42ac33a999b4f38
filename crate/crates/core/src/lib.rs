//! Two-bit bit-flipping decoding of column-weight-three LDPC codes on the
//! binary symmetric channel.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: Tanner graphs, quasi-cyclic construction, girth, alist I/O.
//! * [`rules`]: the four-letter variable alphabet, check-node memory states
//!   and rule tables (the two-bit algorithms `f1`/`f2`, plain bit flipping).
//! * [`decode`]: the iterative decoders and cascades.
//! * [`channel`]: BSC sampling and exhaustive error-pattern streams.
//! * [`sim`]: Monte Carlo FER estimation and guaranteed-correction sweeps.
//! * [`failure`]: enumeration of minimal failure graphs of a rule and the
//!   convergence certificate built on top of them.
//!
//! Throughout, the all-zero codeword is assumed to be transmitted, so a
//! channel output is the same thing as its error pattern.

pub mod channel;
pub mod decode;
mod error;
pub mod failure;
pub mod graph;
pub mod rules;
pub mod sim;

pub use error::{Error, Result};
pub use graph::{Assignment, Syndrome, TannerGraph};
pub use rules::{CheckState, FlipRule, VarState};
