//! Problem inputs and witnesses.
//!
//! An [`Instance`] pairs a cyclic [`LetterSequence`] Ψ with a
//! [`MagnitudeTuple`] C. A witness is a [`SignVector`] Δ choosing a sign for
//! every magnitude, so that δᵢ = ±cᵢ.
//!
//! Canonical text form of an instance is two LF-terminated lines: the
//! letters, then the magnitudes as comma-separated decimals. Witnesses are
//! written as comma-separated signed decimals, e.g. `-45,-12,567,-14,56`.

use std::fmt;
use std::str::FromStr;

use crate::counters::cyclic_position;
use crate::error::{Error, Mismatch, Result};

/// Letters usable in Ψ: `a..=z` without `j` and `t`, whose alphabet
/// ordinals (10 and 20) would contain a zero digit.
pub const ALLOWED_LETTERS: &[u8; 24] = b"abcdefghiklmnopqrsuvwxyz";

pub fn is_allowed_letter(b: u8) -> bool {
    b.is_ascii_lowercase() && b != b'j' && b != b't'
}

/// The cyclic letter sequence Ψ. Positions are 1-based; position 0 aliases ψ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LetterSequence {
    letters: Vec<u8>,
}

impl LetterSequence {
    pub fn new(text: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            if !ch.is_ascii() || !is_allowed_letter(ch as u8) {
                return Err(Error::ForbiddenLetter {
                    letter: ch,
                    position: i + 1,
                });
            }
            letters.push(ch as u8);
        }
        if letters.len() < 2 {
            return Err(Error::SequenceTooShort(letters.len()));
        }
        Ok(LetterSequence { letters })
    }

    /// ψ, the number of letters.
    pub fn psi(&self) -> usize {
        self.letters.len()
    }

    pub fn as_str(&self) -> &str {
        // only ASCII letters are ever stored
        std::str::from_utf8(&self.letters).expect("ascii")
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.letters
    }

    /// Ψ[a] under the cyclic convention (`a mod ψ`, 0 ↦ ψ).
    pub fn cyclic_letter(&self, a: u64) -> char {
        self.letters[cyclic_position(a, self.letters.len()) - 1] as char
    }
}

impl fmt::Display for LetterSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The magnitudes c₁..cₙ, each at least 10.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MagnitudeTuple {
    values: Vec<u64>,
}

impl MagnitudeTuple {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMagnitudes);
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v < 10) {
            return Err(Error::MagnitudeTooSmall { index: i + 1, value: v });
        }
        Ok(MagnitudeTuple { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn sum(&self) -> u128 {
        self.values.iter().map(|&v| v as u128).sum()
    }
}

impl fmt::Display for MagnitudeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub psi_seq: LetterSequence,
    pub c: MagnitudeTuple,
}

impl Instance {
    pub fn new(psi_seq: LetterSequence, c: MagnitudeTuple) -> Self {
        Instance { psi_seq, c }
    }

    /// Builds an instance from a letter string and magnitudes.
    pub fn from_parts(letters: &str, c: &[u64]) -> Result<Self> {
        Ok(Instance {
            psi_seq: LetterSequence::new(letters)?,
            c: MagnitudeTuple::new(c.to_vec())?,
        })
    }

    /// n, the number of magnitudes.
    pub fn n(&self) -> usize {
        self.c.len()
    }
}

/// Parses the two-line instance document. Whitespace around tokens is ignored.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text.lines();
    let letters = lines.next().ok_or(Error::MissingLine("letter"))?.trim();
    if letters.is_empty() {
        return Err(Error::EmptyLine("letter"));
    }
    let mags = lines.next().ok_or(Error::MissingLine("magnitude"))?.trim();
    if mags.is_empty() {
        return Err(Error::EmptyLine("magnitude"));
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::TrailingContent);
    }
    let psi_seq = LetterSequence::new(letters)?;
    let values = mags
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::BadInteger(tok.to_string()));
            }
            tok.parse::<u64>().map_err(|_| Error::BadInteger(tok.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance {
        psi_seq,
        c: MagnitudeTuple::new(values)?,
    })
}

/// Canonical form: `letters\nc1,c2,...` with no trailing newline.
pub fn serialize_instance(inst: &Instance) -> String {
    format!("{}\n{}", inst.psi_seq, inst.c)
}

impl FromStr for Instance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_instance(s)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_instance(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn apply(self, magnitude: u64) -> i128 {
        match self {
            Sign::Plus => magnitude as i128,
            Sign::Minus => -(magnitude as i128),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A sign assignment Δ. Paired with C it yields δᵢ = signᵢ · cᵢ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignVector { signs }
    }

    pub fn all_positive(n: usize) -> Self {
        SignVector {
            signs: vec![Sign::Plus; n],
        }
    }

    /// The vector at `rank` in search order: bit `n - i` of `rank` set means
    /// δᵢ is negative, so position 1 is the most significant sign.
    ///
    /// `n` must be at most 64.
    pub fn from_rank(n: usize, rank: u64) -> Self {
        debug_assert!(n <= 64);
        let signs = (0..n)
            .map(|i| {
                if (rank >> (n - 1 - i)) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        SignVector { signs }
    }

    /// Overwrites the signs in place with those of `rank`, keeping the length.
    pub(crate) fn set_rank(&mut self, rank: u64) {
        let n = self.signs.len();
        for (i, s) in self.signs.iter_mut().enumerate() {
            *s = if (rank >> (n - 1 - i)) & 1 == 1 {
                Sign::Minus
            } else {
                Sign::Plus
            };
        }
    }

    /// Inverse of [`SignVector::from_rank`]. Panics for n > 64.
    pub fn rank(&self) -> u64 {
        assert!(self.signs.len() <= 64, "rank only defined for n <= 64");
        self.signs
            .iter()
            .fold(0u64, |acc, s| (acc << 1) | s.is_negative() as u64)
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|s| s.is_negative()).count()
    }

    /// Δ as signed integers against the given magnitudes.
    pub fn deltas(&self, c: &MagnitudeTuple) -> Vec<i128> {
        self.signs.iter().zip(c.values()).map(|(s, &v)| s.apply(v)).collect()
    }

    /// Compact `+-+` rendering.
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }
}

pub fn validate_witness(inst: &Instance, delta: &SignVector) -> Result<()> {
    if inst.n() != delta.len() {
        return Err(Error::LengthMismatch {
            expected: inst.n(),
            found: delta.len(),
        });
    }
    Ok(())
}

/// Parses comma-separated signed integers into signed values without
/// checking them against any instance.
pub fn parse_signed_list(text: &str) -> Result<Vec<i128>> {
    text.trim()
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i128>().map_err(|_| Error::BadInteger(tok.to_string()))
        })
        .collect()
}

/// Parses a witness such as `-45,-12,567` and checks `|δᵢ| = cᵢ` for every index.
pub fn parse_witness(text: &str, c: &MagnitudeTuple) -> Result<SignVector> {
    let values = parse_signed_list(text)?;
    if values.len() != c.len() {
        return Err(Error::LengthMismatch {
            expected: c.len(),
            found: values.len(),
        });
    }
    let mismatches: Vec<Mismatch> = values
        .iter()
        .zip(c.values())
        .enumerate()
        .filter(|(_, (d, &m))| d.unsigned_abs() != m as u128)
        .map(|(i, (&d, &m))| Mismatch {
            index: i + 1,
            expected: m,
            found: d,
        })
        .collect();
    if !mismatches.is_empty() {
        return Err(Error::MagnitudeMismatch(mismatches));
    }
    Ok(SignVector::new(
        values
            .iter()
            .map(|&d| if d < 0 { Sign::Minus } else { Sign::Plus })
            .collect(),
    ))
}

pub fn format_witness(delta: &SignVector, c: &MagnitudeTuple) -> String {
    delta
        .deltas(c)
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
