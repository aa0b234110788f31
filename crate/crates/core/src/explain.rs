//! Staged, human-readable trace of one verification.
//!
//! The layout follows the usual worked-example presentation: Ψ, ψ, C, Δ, Λ,
//! the Θ template, the bracketed marked form, the sign count, the final Θ,
//! θ, S, every Y(cᵢ), P and the verdict.

use std::fmt::Write as _;

use crate::construct::{self, ThetaTemplate};
use crate::error::Result;
use crate::instance::{format_witness, validate_witness, Instance, MagnitudeTuple, SignVector};
use crate::verify::{self, VerifyReport};

fn tuple(values: impl Iterator<Item = String>) -> String {
    format!("({})", values.collect::<Vec<_>>().join(", "))
}

pub fn explain(inst: &Instance, delta: &SignVector) -> Result<String> {
    validate_witness(inst, delta)?;
    let lambda = construct::build_lambda(inst);
    let tpl = construct::build_theta_template(&lambda);
    let mut out = String::new();
    let _ = writeln!(out, "Ψ = {}", inst.psi_seq);
    let _ = writeln!(out, "ψ = {}", inst.psi_seq.psi());
    let _ = writeln!(out, "C = {}", tuple(inst.c.values().iter().map(|c| c.to_string())));
    let _ = writeln!(out, "Λ = {lambda}");
    let report = verify::verify(inst, delta)?;
    stages(&mut out, &tpl, &inst.c, delta, &report)?;
    Ok(out)
}

/// Trace starting from a Θ template instead of a letter sequence.
pub fn explain_from_template(tpl: &ThetaTemplate, c: &MagnitudeTuple, delta: &SignVector) -> Result<String> {
    let report = verify::verify_from_template(tpl, c, delta)?;
    let mut out = String::new();
    let _ = writeln!(out, "C = {}", tuple(c.values().iter().map(|v| v.to_string())));
    stages(&mut out, tpl, c, delta, &report)?;
    Ok(out)
}

fn stages(
    out: &mut String,
    tpl: &ThetaTemplate,
    c: &MagnitudeTuple,
    delta: &SignVector,
    report: &VerifyReport,
) -> Result<()> {
    let construction = construct::assemble(tpl, delta, c)?;
    let negatives = construction.negative_marks();
    let deltas = delta.deltas(c);

    let _ = writeln!(out, "Δ = {}", tuple(deltas.iter().map(|d| d.to_string())));
    let _ = writeln!(out, "Θ = {tpl}");
    let _ = writeln!(out, "Θ = {}", construct::bracketed(tpl, &construction.marks));
    let _ = writeln!(
        out,
        "number of - signs = {negatives} ({}), so Θ is {}",
        if negatives % 2 == 0 { "even" } else { "odd" },
        if report.theta.negative { "negative" } else { "positive" }
    );
    let _ = writeln!(out, "Θ = {}", report.theta);
    let _ = writeln!(out, "θ = {}", report.theta.theta());
    for &i in &report.zero_marks {
        let _ = writeln!(
            out,
            "warning: mark for δ{i} = {} is {}, which puts a 0 digit into Θ",
            deltas[i - 1],
            construction.marks[i - 1].value
        );
    }
    let _ = writeln!(out, "S = {}", report.s_value);
    for (i, y) in report.y_values.iter().enumerate() {
        let start = if i == 0 { 1 } else { c.values()[i] };
        let _ = writeln!(out, "Y(c{}) = {y}  [A({start}) .. A({})]", i + 1, start + 9);
    }
    let raw: i128 = report.y_values.iter().map(|&y| y as i128).sum();
    if report.theta.negative {
        let _ = writeln!(out, "P = {raw}");
        let _ = writeln!(out, "P = {} (because Θ < 0)", report.p_value);
    } else {
        let _ = writeln!(out, "P = {} (because Θ > 0)", report.p_value);
    }
    if report.satisfied {
        let _ = writeln!(
            out,
            "S = P: Δ = {} is a satisfactory assignment",
            format_witness(delta, c)
        );
    } else {
        let _ = writeln!(
            out,
            "S != P: Δ = {} is not a satisfactory assignment",
            format_witness(delta, c)
        );
    }
    let _ = writeln!(out, "modulo operations = {}", report.counters.modulo);
    Ok(())
}
