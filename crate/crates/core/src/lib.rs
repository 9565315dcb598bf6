//! Path-complete graphs of Lyapunov inequalities: deciding path-completeness,
//! synthesizing unstable counterexamples for graphs that are not
//! path-complete, verifying conic and quadratic certificates, and bounding
//! the joint spectral radius.

pub mod automaton;
pub mod certificate;
pub mod completeness;
pub mod error;
pub mod graph;
pub mod jsr;
pub mod linalg;
pub mod matrix_set;
pub mod synth;
pub mod verify;
pub mod word;

pub use automaton::{nfa_universal, reduce_universality, Nfa};
pub use certificate::{Certificate, ConicCertificate, EllipsoidalCertificate, NodeMap};
pub use completeness::{
    brute_force_path_complete, check_path_complete, is_readable, PathCompletenessVerdict,
};
pub use error::{Error, Result};
pub use graph::{expand_labels, inequalities_to_graph, Edge, Expansion, Inequality, LabeledGraph};
pub use linalg::{Matrix, Scalar, Vector};
pub use matrix_set::MatrixSet;
pub use synth::{
    build_sigma_w, synthesize_conic, synthesize_ellipsoidal, CounterexampleBundle, Family,
};
pub use verify::{verify_certificate, Direction, InequalityCheckReport, Strictness, VerifyOptions};
pub use word::Word;
