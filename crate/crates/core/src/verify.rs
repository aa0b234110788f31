//! The polynomial-time checker.
//!
//! Given an instance and a sign vector, rebuild Λ, the template and Θ, then
//! compare S = Σδᵢ with P = ΣY(cᵢ). Every step charges [`OpCounters`], so a
//! verification of an n-tuple always reports exactly `11 * n` modulo
//! reductions: n for the letter lookups in Λ and 10 for each Y product.

use std::fmt;

use crate::construct::{self, Mark, ThetaNumber, ThetaTemplate};
use crate::counters::{cyclic_position, OpCounters};
use crate::error::Result;
use crate::instance::{validate_witness, Instance, MagnitudeTuple, Sign, SignVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub s_value: i128,
    pub p_value: i128,
    pub theta: ThetaNumber,
    pub satisfied: bool,
    pub counters: OpCounters,
    /// Signed Y(cᵢ) values, before the final Θ-sign negation of P.
    pub y_values: Vec<i64>,
    /// 1-based indices whose two-digit mark put a 0 into Θ.
    pub zero_marks: Vec<usize>,
}

impl VerifyReport {
    /// `key=value` lines, one field per line.
    pub fn to_record(&self) -> String {
        let y: Vec<String> = self.y_values.iter().map(|y| y.to_string()).collect();
        let zero: Vec<String> = self.zero_marks.iter().map(|i| i.to_string()).collect();
        format!(
            "satisfied={}\nS={}\nP={}\ntheta_digits={}\ntheta_negative={}\ntheta_len={}\n\
             y={}\nzero_marks={}\nmod_ops={}\nmul_ops={}\nadd_ops={}\nstring_ops={}\n",
            self.satisfied,
            self.s_value,
            self.p_value,
            self.theta.digit_string(),
            self.theta.negative,
            self.theta.theta(),
            y.join(","),
            zero.join(","),
            self.counters.modulo,
            self.counters.multiplications,
            self.counters.additions,
            self.counters.string_ops,
        )
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

/// A[k] on Θ, charging one modulo operation.
pub fn digit_at(theta: &ThetaNumber, k: u64, counters: &mut OpCounters) -> u8 {
    counters.modulo += 1;
    theta.digit_at(k)
}

/// Y(cᵢ): the product of ten consecutive cyclic digits of Θ.
///
/// The window starts at A[1] for `i == 1` and at A[cᵢ] otherwise, and the
/// product is negated when δᵢ is negative.
pub fn y_product(theta: &ThetaNumber, c_i: u64, i: usize, sign: Sign, counters: &mut OpCounters) -> i64 {
    window_product(theta.digits(), c_i, i, sign, counters)
}

fn window_product(digits: &[u8], c_i: u64, i: usize, sign: Sign, counters: &mut OpCounters) -> i64 {
    let start = if i == 1 { 1 } else { c_i };
    let len = digits.len();
    let mut product = 1i64;
    for k in 0..10u64 {
        counters.modulo += 1;
        let d = digits[cyclic_position(start + k, len) - 1];
        if k > 0 {
            counters.multiplications += 1;
        }
        product *= d as i64;
    }
    match sign {
        Sign::Plus => product,
        Sign::Minus => -product,
    }
}

/// S = δ₁ + … + δₙ.
pub fn compute_s(delta: &SignVector, c: &MagnitudeTuple) -> i128 {
    compute_s_counted(delta, c, &mut OpCounters::default())
}

fn compute_s_counted(delta: &SignVector, c: &MagnitudeTuple, counters: &mut OpCounters) -> i128 {
    counters.additions += delta.len().saturating_sub(1) as u64;
    delta.signs().iter().zip(c.values()).map(|(s, &v)| s.apply(v)).sum()
}

/// P = ΣY(cᵢ), negated once at the end when Θ is negative.
pub fn compute_p(theta: &ThetaNumber, c: &MagnitudeTuple, delta: &SignVector) -> i128 {
    let mut counters = OpCounters::default();
    let (p, _) = p_with_terms(theta.digits(), theta.negative, c, delta, &mut counters, false);
    p
}

fn p_with_terms(
    digits: &[u8],
    negative: bool,
    c: &MagnitudeTuple,
    delta: &SignVector,
    counters: &mut OpCounters,
    keep_terms: bool,
) -> (i128, Vec<i64>) {
    let mut terms = Vec::new();
    let mut sum = 0i128;
    for (idx, (&c_i, &sign)) in c.values().iter().zip(delta.signs()).enumerate() {
        let y = window_product(digits, c_i, idx + 1, sign, counters);
        if keep_terms {
            terms.push(y);
        }
        sum += y as i128;
    }
    counters.additions += c.len().saturating_sub(1) as u64;
    (if negative { -sum } else { sum }, terms)
}

/// Runs the full pipeline from the instance: Λ, template, marks, Θ, S and P.
pub fn verify(inst: &Instance, delta: &SignVector) -> Result<VerifyReport> {
    validate_witness(inst, delta)?;
    let mut counters = OpCounters::default();
    let lambda = construct::build_lambda_counted(inst, &mut counters);
    let tpl = construct::build_theta_template(&lambda);
    Ok(finish(&tpl, &inst.c, delta, counters))
}

/// Runs the pipeline from an existing Θ template, skipping Λ.
///
/// The reported modulo count is therefore `10 * n`.
pub fn verify_from_template(tpl: &ThetaTemplate, c: &MagnitudeTuple, delta: &SignVector) -> Result<VerifyReport> {
    // length checks happen inside assemble
    construct::assemble(tpl, delta, c)?;
    Ok(finish(tpl, c, delta, OpCounters::default()))
}

fn finish(tpl: &ThetaTemplate, c: &MagnitudeTuple, delta: &SignVector, mut counters: OpCounters) -> VerifyReport {
    let mut marks = Vec::with_capacity(c.len());
    construct::marks_into(delta, c, &mut marks);
    let mut digits = Vec::with_capacity(tpl.digits().len() + c.len());
    let negative = construct::fill_template(tpl, &marks, &mut digits, &mut counters);
    let zero_marks = marks
        .iter()
        .enumerate()
        .filter(|(_, m)| m.inserts_zero())
        .map(|(i, _)| i + 1)
        .collect();
    let s_value = compute_s_counted(delta, c, &mut counters);
    let (p_value, y_values) = p_with_terms(&digits, negative, c, delta, &mut counters, true);
    VerifyReport {
        s_value,
        p_value,
        theta: ThetaNumber::new(negative, digits),
        satisfied: s_value == p_value,
        counters,
        y_values,
        zero_marks,
    }
}

/// Outcome of one allocation-free check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub satisfied: bool,
    pub s_value: i128,
    pub p_value: i128,
    pub counters: OpCounters,
}

/// Reusable verifier for repeated checks against one instance.
///
/// Each [`Verifier::check`] still rebuilds Λ, the template and Θ from
/// scratch, so its counters match [`verify`] exactly; only the buffers are
/// reused.
#[derive(Debug, Clone)]
pub struct Verifier<'a> {
    inst: &'a Instance,
    ordinals: Vec<u8>,
    template: Vec<u8>,
    marks: Vec<Mark>,
    digits: Vec<u8>,
}

impl<'a> Verifier<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let n = inst.n();
        Verifier {
            inst,
            ordinals: Vec::with_capacity(n),
            template: Vec::with_capacity(3 * n),
            marks: Vec::with_capacity(n),
            digits: Vec::with_capacity(4 * n),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    /// Checks `delta`, which must have length n.
    pub fn check(&mut self, delta: &SignVector) -> Check {
        debug_assert_eq!(delta.len(), self.inst.n());
        let mut counters = OpCounters::default();
        let inst = self.inst;

        // Λ and μ
        self.ordinals.clear();
        let letters = inst.psi_seq.as_bytes();
        for &c in inst.c.values() {
            counters.modulo += 1;
            let letter = letters[cyclic_position(c, letters.len()) - 1];
            self.ordinals.push(letter - b'a' + 1);
        }

        // template μ₁0μ₂0…
        self.template.clear();
        for &mu in &self.ordinals {
            if mu >= 10 {
                self.template.push(mu / 10);
            }
            self.template.push(mu % 10);
            self.template.push(0);
        }

        // marks and Θ
        construct::marks_into(delta, &inst.c, &mut self.marks);
        self.digits.clear();
        let mut negatives = 0usize;
        let mut start = 0;
        let mut mark_iter = self.marks.iter();
        for (pos, &d) in self.template.iter().enumerate() {
            if d != 0 {
                continue;
            }
            let m = mark_iter.next().expect("one mark per placeholder");
            self.digits.extend_from_slice(&self.template[start..pos]);
            counters.string_ops += (pos - start) as u64 + 1;
            let mag = m.magnitude();
            if mag >= 10 {
                self.digits.push(mag / 10);
                self.digits.push(mag % 10);
                counters.string_ops += 2;
            } else {
                self.digits.push(mag);
                counters.string_ops += 1;
            }
            if m.is_negative() {
                negatives += 1;
                counters.string_ops += 1;
            }
            start = pos + 1;
        }
        let negative = negatives % 2 == 1;

        let s_value = compute_s_counted(delta, &inst.c, &mut counters);
        let (p_value, _) = p_with_terms(&self.digits, negative, &inst.c, delta, &mut counters, false);
        Check {
            satisfied: s_value == p_value,
            s_value,
            p_value,
            counters,
        }
    }
}
