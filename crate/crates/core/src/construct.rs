//! Construction of Λ, the Θ template, the marks δ′ and the signed Θ digit array.

use std::fmt;

use crate::counters::{cyclic_position, OpCounters};
use crate::error::{Error, Result};
use crate::instance::{is_allowed_letter, Instance, MagnitudeTuple, Sign, SignVector};

/// Alphabet ordinal μ of an allowed letter (a = 1, ..., z = 26).
pub fn letter_ordinal(letter: char) -> Result<u8> {
    if letter.is_ascii() && is_allowed_letter(letter as u8) {
        Ok(letter as u8 - b'a' + 1)
    } else {
        Err(Error::ForbiddenLetter { letter, position: 0 })
    }
}

/// Λ: the selected letters, each implicitly followed by a zero marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda {
    letters: Vec<char>,
}

impl Lambda {
    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}0")?;
        }
        Ok(())
    }
}

pub fn build_lambda(inst: &Instance) -> Lambda {
    build_lambda_counted(inst, &mut OpCounters::default())
}

/// Same as [`build_lambda`], charging one modulo operation per letter.
pub fn build_lambda_counted(inst: &Instance, counters: &mut OpCounters) -> Lambda {
    let letters = inst
        .c
        .values()
        .iter()
        .map(|&c| {
            counters.modulo += 1;
            inst.psi_seq.cyclic_letter(c)
        })
        .collect();
    Lambda { letters }
}

/// Θ₀ = μ₁0μ₂0…μₙ0. Digits are stored as values 0..=9.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaTemplate {
    digits: Vec<u8>,
    zero_slots: Vec<usize>,
}

impl ThetaTemplate {
    /// Reads a template from its digit string, splitting it at the zeros.
    ///
    /// Every zero is a placeholder, so the string must end with `0`, have no
    /// two adjacent zeros, and each segment between zeros must be an ordinal
    /// in 1..=26.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("{text:?} is not a valid Θ template"));
        if text.is_empty() || !text.ends_with('0') {
            return Err(bad());
        }
        let mut digits = Vec::with_capacity(text.len());
        let mut zero_slots = Vec::new();
        let mut segment = 0u32;
        let mut seg_len = 0usize;
        for (i, b) in text.bytes().enumerate() {
            if !b.is_ascii_digit() {
                return Err(bad());
            }
            let d = b - b'0';
            digits.push(d);
            if d == 0 {
                if seg_len == 0 || !(1..=26).contains(&segment) {
                    return Err(bad());
                }
                zero_slots.push(i);
                segment = 0;
                seg_len = 0;
            } else {
                segment = segment * 10 + d as u32;
                seg_len += 1;
                if seg_len > 2 {
                    return Err(bad());
                }
            }
        }
        Ok(ThetaTemplate { digits, zero_slots })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// 0-based positions of the n placeholder zeros.
    pub fn zero_slots(&self) -> &[usize] {
        &self.zero_slots
    }

    pub fn n(&self) -> usize {
        self.zero_slots.len()
    }

    /// The ordinals μ₁..μₙ.
    pub fn ordinals(&self) -> Vec<u8> {
        let mut start = 0;
        self.zero_slots
            .iter()
            .map(|&z| {
                let mu = self.digits[start..z].iter().fold(0u8, |acc, &d| acc * 10 + d);
                start = z + 1;
                mu
            })
            .collect()
    }
}

impl fmt::Display for ThetaTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn build_theta_template(lambda: &Lambda) -> ThetaTemplate {
    let mut digits = Vec::with_capacity(lambda.len() * 3);
    let mut zero_slots = Vec::with_capacity(lambda.len());
    for &letter in lambda.letters() {
        let mu = letter_ordinal(letter).expect("Λ only holds allowed letters");
        if mu >= 10 {
            digits.push(mu / 10);
        }
        digits.push(mu % 10);
        zero_slots.push(digits.len());
        digits.push(0);
    }
    ThetaTemplate { digits, zero_slots }
}

/// The replacement δ′ᵢ for one placeholder zero.
///
/// Positive: the leading decimal digit of δᵢ (1..=9). Negative: minus the sum
/// of the two leading decimal digits of |δᵢ| (−18..=−1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark {
    pub value: i8,
}

impl Mark {
    pub fn is_negative(self) -> bool {
        self.value < 0
    }

    /// Digits written into Θ in place of the zero (sign removed).
    pub fn magnitude(self) -> u8 {
        self.value.unsigned_abs()
    }

    /// True when the mark is two digits long, which puts a 0 into Θ
    /// whenever its magnitude is exactly 10.
    pub fn inserts_zero(self) -> bool {
        self.magnitude() >= 10 && self.magnitude().is_multiple_of(10)
    }
}

/// Two leading decimal digits of `v` (most significant first); `v >= 10`.
fn leading_two_digits(mut v: u128) -> (u8, u8) {
    while v >= 100 {
        v /= 10;
    }
    ((v / 10) as u8, (v % 10) as u8)
}

pub fn mark(delta_i: i128) -> Result<Mark> {
    let abs = delta_i.unsigned_abs();
    if abs < 10 {
        return Err(Error::MarkTooSmall(delta_i));
    }
    let (first, second) = leading_two_digits(abs);
    let value = if delta_i > 0 {
        first as i8
    } else {
        -((first + second) as i8)
    };
    Ok(Mark { value })
}

fn mark_for(sign: Sign, magnitude: u64) -> Mark {
    let (first, second) = leading_two_digits(magnitude as u128);
    let value = match sign {
        Sign::Plus => first as i8,
        Sign::Minus => -((first + second) as i8),
    };
    Mark { value }
}

/// The final Θ: a sign flag plus the digit array A[1..θ].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaNumber {
    pub negative: bool,
    digits: Vec<u8>,
}

impl ThetaNumber {
    /// Builds Θ from a sign and digit values 0..=9. `digits` must be non-empty.
    pub fn new(negative: bool, digits: Vec<u8>) -> Self {
        assert!(!digits.is_empty(), "Θ needs at least one digit");
        debug_assert!(digits.iter().all(|&d| d <= 9));
        ThetaNumber { negative, digits }
    }

    /// θ, the digit count.
    pub fn theta(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// A[k] with `k mod θ`, 0 ↦ θ.
    pub fn digit_at(&self, k: u64) -> u8 {
        self.digits[cyclic_position(k, self.digits.len()) - 1]
    }

    pub fn digit_string(&self) -> String {
        self.digits.iter().map(|&d| (b'0' + d) as char).collect()
    }

    pub fn contains_zero(&self) -> bool {
        self.digits.contains(&0)
    }
}

impl fmt::Display for ThetaNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(&self.digit_string())
    }
}

/// Everything produced while filling a template with marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub marks: Vec<Mark>,
    pub theta: ThetaNumber,
    /// 1-based indices i whose mark put a 0 digit into Θ.
    pub zero_marks: Vec<usize>,
}

impl Construction {
    pub fn negative_marks(&self) -> usize {
        self.marks.iter().filter(|m| m.is_negative()).count()
    }

    pub fn zero_warning(&self) -> bool {
        !self.zero_marks.is_empty()
    }
}

fn check_lengths(tpl: &ThetaTemplate, delta: &SignVector, c: &MagnitudeTuple) -> Result<()> {
    for found in [delta.len(), c.len()] {
        if found != tpl.n() {
            return Err(Error::LengthMismatch {
                expected: tpl.n(),
                found,
            });
        }
    }
    Ok(())
}

/// Replaces each placeholder with its mark and applies the sign rule.
pub fn assemble(tpl: &ThetaTemplate, delta: &SignVector, c: &MagnitudeTuple) -> Result<Construction> {
    check_lengths(tpl, delta, c)?;
    let marks: Vec<Mark> = delta
        .signs()
        .iter()
        .zip(c.values())
        .map(|(&s, &m)| mark_for(s, m))
        .collect();
    let mut digits = Vec::new();
    let negative = fill_template(tpl, &marks, &mut digits, &mut OpCounters::default());
    let zero_marks = marks
        .iter()
        .enumerate()
        .filter(|(_, m)| m.inserts_zero())
        .map(|(i, _)| i + 1)
        .collect();
    Ok(Construction {
        marks,
        theta: ThetaNumber::new(negative, digits),
        zero_marks,
    })
}

pub fn assemble_theta(tpl: &ThetaTemplate, delta: &SignVector, c: &MagnitudeTuple) -> Result<ThetaNumber> {
    assemble(tpl, delta, c).map(|r| r.theta)
}

/// Writes the marked digits into `out` and returns the sign flag.
///
/// Each emitted digit and each removed minus sign or bracket pair counts as
/// one string operation.
pub(crate) fn fill_template(tpl: &ThetaTemplate, marks: &[Mark], out: &mut Vec<u8>, counters: &mut OpCounters) -> bool {
    out.clear();
    let mut negatives = 0usize;
    let mut start = 0;
    for (&slot, m) in tpl.zero_slots().iter().zip(marks) {
        out.extend_from_slice(&tpl.digits()[start..slot]);
        let mag = m.magnitude();
        if mag >= 10 {
            out.push(mag / 10);
            out.push(mag % 10);
            counters.string_ops += 2;
        } else {
            out.push(mag);
            counters.string_ops += 1;
        }
        if m.is_negative() {
            negatives += 1;
            counters.string_ops += 1;
        }
        // bracket pair
        counters.string_ops += 1;
        counters.string_ops += (slot - start) as u64;
        start = slot + 1;
    }
    negatives % 2 == 1
}

/// Marks for a sign vector, used by the verifier's hot path.
pub(crate) fn marks_into(delta: &SignVector, c: &MagnitudeTuple, out: &mut Vec<Mark>) {
    out.clear();
    out.extend(delta.signs().iter().zip(c.values()).map(|(&s, &m)| mark_for(s, m)));
}

/// Bracketed intermediate form such as `12(-9)11(-3)2(5)21(-5)4(5)`.
pub fn bracketed(tpl: &ThetaTemplate, marks: &[Mark]) -> String {
    let mut s = String::new();
    for (mu, m) in tpl.ordinals().iter().zip(marks) {
        s.push_str(&format!("{mu}({})", m.value));
    }
    s
}
