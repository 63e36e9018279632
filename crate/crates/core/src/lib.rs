//! Exact rational geometry kernel.
//!
//! Given a polyhedron `P` presented as an intersection of closed halfspaces
//! `a·x >= b`, together with a linear objective `l` and a threshold `B`
//! (a rational number or infinity), this crate computes:
//!
//! * the vertices of the subcomplex of faces of `P` that are bounded and on
//!   which `l` stays below `B` everywhere, and
//! * the subcomplex itself: every face with its active constraint set,
//!   dimension, vertex list and maximum of `l`.
//!
//! All arithmetic is arbitrary-precision rational; there are no floating
//! point numbers and no fixed-width integer fallbacks anywhere in the
//! computation, so every reported value is exact.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line front end live in the companion `polyspan` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod builder;
pub mod combi;
pub mod exec;
pub mod generators;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod vertices;

pub use builder::{
    build_known_d, build_unknown_d, check_face_bounds, euler_characteristic, verify_nogap,
    BuildError, Complex, Face, FaceBoundReport, FacePredicateCache, NogapReport, TrivialReason,
};
pub use exec::{Exec, Seq};
pub use generators::{
    gen_cone, gen_fan2d, gen_hypercube, gen_moment_voronoi, gen_tight_span, ConeError,
    MetricError, MetricInput,
};
pub use geometry::{
    face_passes_threshold, is_bounded_face, minimal_face, preprocess, EllMin, Halfspace,
    NormalizedSpec, PolyhedronSpec, PreprocessError, Threshold,
};
pub use linalg::{affine_hull, flat_intersection, rat, solve_system, Flat, QMatrix, QVector, Rational};
pub use lp::{lex_max, lex_min, verify_outcome, FarkasCertificate, LpInstance, LpOutcome, Sense};
pub use oracle::{
    brute_force_complex, brute_force_face_lattice, brute_force_vertices, diff_complexes,
    Discrepancy, OracleError, DEFAULT_GUARD,
};
pub use vertices::{
    check_vertex_bound, enumerate_vertices, lex_objectives, vertices_from_cache, SubsetMinCache,
    VertexRec, VertexSet,
};
