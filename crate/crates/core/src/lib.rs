//! SPINOZA: a sign-assignment decision problem over cyclic digit strings.
//!
//! An instance is a letter sequence Ψ and magnitudes C = (c₁..cₙ). A sign
//! vector Δ turns C into integers δᵢ = ±cᵢ; those signs are spliced into a
//! digit string Θ derived from Ψ, and Δ satisfies the instance when the sum
//! of the δᵢ equals a sum of ten-digit products read cyclically from Θ.
//!
//! Checking one Δ is cheap ([`verify`]); deciding an instance here means
//! trying all 2ⁿ vectors ([`solver`]). [`bench`] measures the gap.

pub mod bench;
pub mod construct;
pub mod counters;
pub mod error;
pub mod explain;
pub mod fixtures;
pub mod generator;
pub mod instance;
pub mod reference;
pub mod rng;
pub mod solver;
pub mod verify;

pub use construct::{
    assemble_theta, build_lambda, build_theta_template, letter_ordinal, mark, Lambda, Mark, ThetaNumber, ThetaTemplate,
};
pub use counters::OpCounters;
pub use error::{Error, Result};
pub use generator::{gen_instance, label_instance, GenConfig, LabeledInstance};
pub use instance::{
    parse_instance, serialize_instance, validate_witness, Instance, LetterSequence, MagnitudeTuple, Sign, SignVector,
};
pub use solver::{enumerate_assignments, guess_check, solve, solve_with, Answer, SolveOptions, Verdict};
pub use verify::{compute_p, compute_s, digit_at, verify, y_product, VerifyReport};
