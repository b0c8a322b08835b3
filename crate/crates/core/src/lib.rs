//! Two regular n-gons and the n concentric circles that pass through one
//! vertex of each.
//!
//! The crate works in both directions:
//!
//! * polygons to circles ([`pairing`]): intersect the auxiliary circles,
//!   rotate the second polygon about its own center until one distance pair
//!   matches, and emit the common distance multiset;
//! * circles to polygons ([`moments`], [`reconstruct`]): test the cyclic
//!   average conditions, recover both circumradii in closed form and place
//!   two concrete polygons realizing the radii.
//!
//! [`special`] holds the closed forms for triangles and squares and
//! [`oracle`] an independent brute-force check used by the test suites and
//! the `verify` command. [`batch`] runs the randomized sweeps, in parallel
//! when the `parallel` feature (on by default) is enabled.

pub mod batch;
pub mod error;
pub mod geom;
pub mod moments;
pub mod oracle;
pub mod pairing;
pub mod reconstruct;
pub mod special;

pub use error::{Error, Result};
pub use geom::{PlanePoint, RegularPolygonSpec, Tolerance};
pub use moments::{CircleFamily, CyclicAverages, FeasibilityReport, RadiiPair};
