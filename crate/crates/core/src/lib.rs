//! Circular-arc drawings of knot and link diagrams.
//!
//! A knot or link diagram is combinatorially a 4-regular plane multigraph
//! (its *shadow*) plus an over/under flag at every crossing. This crate
//! parses the usual diagram notations (Gauss codes, Dowker–Thistlethwaite
//! codes, an explicit half-edge JSON format), and redraws diagrams with
//! circular-arc edges in three styles:
//!
//! * plane Lombardi drawings (one arc per edge, perfect 90° angular
//!   resolution) via primal-dual circle packing, together with obstruction
//!   certificates for shadows that provably have none,
//! * plane 2-Lombardi drawings (at most two arcs per edge) via an
//!   orthogonal drawing that is smoothed into arcs,
//! * plane ε-angle Lombardi drawings (one arc per edge, opposite edges
//!   tangent, crossing angles within ε of 90°) for every biconnected
//!   shadow and every ε > 0.
//!
//! Every produced drawing can be checked by the independent [`verify`]
//! module, which consumes only the drawing geometry.

pub mod drawing;
pub mod error;
pub mod eps;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod lombardi;
pub mod notation;
pub mod ortho;
pub mod pack;
pub mod render;
pub mod verify;

pub use drawing::{Drawing, EdgeGeometry, EpsDrawing};
pub use error::Error;
pub use geom::{CircleArc, Mobius, Pt};
pub use graph::{KnotDiagram, PlaneMultigraph, PrimalDualPair};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
