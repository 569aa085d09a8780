//! A numerical laboratory for the renormalization geometry of minimal circle
//! homeomorphisms.
//!
//! The crate has three layers:
//!
//! * exact continued-fraction arithmetic and Gauss-map dynamics ([`cf`]),
//!   with all certified real values carried as rational enclosures
//!   ([`enclosure`]);
//! * the piecewise-affine fiber maps and the skew product over the Gauss map
//!   ([`skew`]), its countable Markov partition, tiles and Jacobians
//!   ([`markov`]), circle maps given by lifts ([`circle`]), dynamical
//!   partitions and invariant-measure estimators ([`partition`]), and the
//!   renormalization-trail construction together with its skew-product
//!   oracle ([`trail`]);
//! * cross-ratio machinery and the distortion blow-up diagnostic ([`qs`]).
//!
//! Every experiment is exposed both as a library call, as a runnable example
//! under `examples/`, and as a subcommand of the `circle-renorm` binary
//! ([`cli`]).

pub mod cf;
pub mod circle;
pub mod cli;
pub mod enclosure;
pub mod error;
pub mod markov;
pub mod partition;
pub mod qs;
pub mod report;
pub mod skew;
pub mod trail;

pub use cf::{cf_from_real, gauss_measure, mu_in, parse_cf, GaussInterval, RotationNumber};
pub use enclosure::{Approx, Enclosure};
pub use error::{Error, Result};
pub use skew::SkewPoint;
