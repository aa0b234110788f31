//! The two worked instances used as golden fixtures.
//!
//! The second instance's printed letter sequence does not select the letters
//! its Θ template was built from, so [`EXAMPLE2_LETTERS`] is a 26-letter
//! sequence reconstructed so that positions 19, 12, 21, 14 and 4 hold
//! `l, k, b, u, d`. Golden checks for it start from [`EXAMPLE2_TEMPLATE`].

use crate::instance::{Instance, Sign, SignVector};

pub const EXAMPLE1_LETTERS: &str = "sbaaqpollolagkfueskdldfopgrmplozsaeds";
pub const EXAMPLE1_MAGNITUDES: [u64; 3] = [10, 14, 16];

/// Letter sequence exactly as printed for the second instance (25 letters).
pub const EXAMPLE2_PRINTED_LETTERS: &str = "awedkdcodlfguipowlsbscnmz";
pub const EXAMPLE2_LETTERS: &str = "awedkdcodlfkuupowllbbcnmza";
pub const EXAMPLE2_MAGNITUDES: [u64; 5] = [45, 12, 567, 14, 56];
pub const EXAMPLE2_TEMPLATE: &str = "1201102021040";

pub fn example1() -> Instance {
    Instance::from_parts(EXAMPLE1_LETTERS, &EXAMPLE1_MAGNITUDES).expect("valid fixture")
}

pub fn example2() -> Instance {
    Instance::from_parts(EXAMPLE2_LETTERS, &EXAMPLE2_MAGNITUDES).expect("valid fixture")
}

/// Δ = (−45, −12, 567, −14, 56).
pub fn example2_delta() -> SignVector {
    use Sign::*;
    SignVector::new(vec![Minus, Minus, Plus, Minus, Plus])
}
