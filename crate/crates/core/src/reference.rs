//! A deliberately naive, string-based rendition of the verification procedure.
//!
//! Nothing here shares code with [`crate::construct`] or [`crate::verify`]:
//! Λ and Θ are built as `String`s, the placeholder zeros are replaced by
//! bracketed marks, and signs and brackets are stripped with `String::replace`.
//! It serves as the ground-truth oracle for labeling and for cross-checking
//! the optimized path.

use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceOutcome {
    pub lambda: String,
    pub template: String,
    pub bracketed: String,
    pub theta: String,
    pub negative: bool,
    pub s: i128,
    pub p: i128,
}

impl ReferenceOutcome {
    pub fn satisfied(&self) -> bool {
        self.s == self.p
    }
}

fn wrap(a: u64, len: u64) -> u64 {
    let r = a % len;
    if r == 0 {
        len
    } else {
        r
    }
}

/// Evaluates one assignment given as signed integers δ₁..δₙ.
pub fn evaluate(inst: &Instance, deltas: &[i128]) -> ReferenceOutcome {
    let letters: Vec<char> = inst.psi_seq.as_str().chars().collect();
    let psi = letters.len() as u64;

    let mut lambda = String::new();
    for &c in inst.c.values() {
        lambda.push(letters[wrap(c, psi) as usize - 1]);
        lambda.push('0');
    }

    let mut template = String::new();
    for ch in lambda.chars() {
        if ch == '0' {
            template.push('0');
        } else {
            let order = "abcdefghijklmnopqrstuvwxyz".find(ch).unwrap() + 1;
            template.push_str(&order.to_string());
        }
    }

    let mut bracketed = String::new();
    let mut which = 0;
    for ch in template.chars() {
        if ch == '0' {
            let d = deltas[which];
            let text = d.to_string();
            let replacement = if d > 0 {
                text[..1].to_string()
            } else {
                let digits: Vec<u32> = text
                    .trim_start_matches('-')
                    .chars()
                    .map(|c| c.to_digit(10).unwrap())
                    .collect();
                format!("-{}", digits[0] + digits[1])
            };
            bracketed.push('(');
            bracketed.push_str(&replacement);
            bracketed.push(')');
            which += 1;
        } else {
            bracketed.push(ch);
        }
    }

    let minus_count = bracketed.matches('-').count();
    let negative = minus_count % 2 == 1;
    let theta = bracketed.replace('-', "").replace(['(', ')'], "");

    let a: Vec<i128> = theta.chars().map(|c| c.to_digit(10).unwrap() as i128).collect();
    let big_theta = a.len() as u64;
    let at = |k: u64| a[wrap(k, big_theta) as usize - 1];

    let s: i128 = deltas.iter().sum();
    let mut p: i128 = 0;
    for (i, &c) in inst.c.values().iter().enumerate() {
        let start = if i == 0 { 1 } else { c };
        let mut y: i128 = 1;
        for k in 0..10 {
            y *= at(start + k);
        }
        if deltas[i] < 0 {
            y = -y;
        }
        p += y;
    }
    if negative {
        p = -p;
    }

    ReferenceOutcome {
        lambda,
        template,
        bracketed,
        theta,
        negative,
        s,
        p,
    }
}

/// Signed deltas for the assignment with the given search-order rank.
pub fn deltas_for_rank(inst: &Instance, rank: u64) -> Vec<i128> {
    let n = inst.n();
    inst.c
        .values()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let negative = (rank >> (n - 1 - i)) & 1 == 1;
            if negative {
                -(c as i128)
            } else {
                c as i128
            }
        })
        .collect()
}

/// Ranks of every satisfying assignment, found by scanning all 2ⁿ in order.
pub fn satisfying_ranks(inst: &Instance) -> Vec<u64> {
    assert!(inst.n() <= 32, "reference scan is only meant for small n");
    (0..1u64 << inst.n())
        .filter(|&r| evaluate(inst, &deltas_for_rank(inst, r)).satisfied())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn example_one() {
        let out = evaluate(&example1(), &[10, 14, 16]);
        assert_eq!(out.lambda, "o0k0u0");
        assert_eq!(out.template, "150110210");
        assert_eq!(out.bracketed, "15(1)11(1)21(1)");
        assert_eq!(out.theta, "151111211");
        assert_eq!((out.s, out.p), (40, 40));
    }

    #[test]
    fn example_two() {
        let out = evaluate(&example2(), &[-45, -12, 567, -14, 56]);
        assert_eq!(out.template, EXAMPLE2_TEMPLATE);
        assert_eq!(out.bracketed, "12(-9)11(-3)2(5)21(-5)4(5)");
        assert_eq!(out.theta, "1291132521545");
        assert!(out.negative);
        assert_eq!((out.s, out.p), (552, -11040));
    }
}
