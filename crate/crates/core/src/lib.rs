//! Resolution product on curve systems in oriented surfaces.
//!
//! * [`torus`]: exact arithmetic on the torus, where classes are integer
//!   vectors up to sign.
//! * [`scene`]: explicit multicurve configurations as rotation systems,
//!   with crossing resolution and the region checks around it.
//! * [`dt`]: twist coordinates on pants decompositions.
//! * [`verify`]: exhaustive property suites and report output.

pub mod dt;
pub mod scene;
pub mod torus;
pub mod verify;
