//! Acceptance suite. Runs every criterion sequentially (timing-sensitive
//! criteria must not share the CPU) and prints one PASS/FAIL line each.
//!
//! `cargo test -p spinoza-core --test acceptance`

use std::process::ExitCode;
use std::time::Instant;

use spinoza_core::bench::{fit_growth, run_scaling, ScalingConfig};
use spinoza_core::construct::{assemble, build_lambda, build_theta_template, ThetaTemplate};
use spinoza_core::fixtures::*;
use spinoza_core::generator::{gen_instance, label_instance, write_corpus, GenConfig, LabeledInstance};
use spinoza_core::instance::{Instance, MagnitudeTuple, SignVector};
use spinoza_core::reference;
use spinoza_core::rng::XorShift64Star;
use spinoza_core::solver::{guess_check, guess_ranks, solve, Answer};
use spinoza_core::verify::{verify, verify_from_template, Verifier};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Random small instance with parameters drawn from `rng`.
fn random_instance(rng: &mut XorShift64Star, max_n: usize) -> Instance {
    let n = rng.range_inclusive(1, max_n as u64) as usize;
    let psi_len = rng.range_inclusive(2, 40) as usize;
    let c_max = [30, 99, 999, 99_999][rng.below(4) as usize];
    gen_instance(&GenConfig::new(n, psi_len, c_max, rng.next_u64())).unwrap()
}

/// A labeled corpus of small instances, biased so that satisfiable ones occur.
fn labeled_corpus(seed: u64, count: usize, max_n: usize) -> Vec<LabeledInstance> {
    let mut rng = XorShift64Star::new(seed);
    (0..count)
        .map(|_| label_instance(&random_instance(&mut rng, max_n), 20).unwrap())
        .collect()
}

fn c1_example_one() -> Outcome {
    let inst = example1();
    let lambda = build_lambda(&inst);
    let tpl = build_theta_template(&lambda);
    let report = verify(&inst, &SignVector::all_positive(3)).map_err(|e| e.to_string())?;
    let got = (
        lambda.to_string(),
        tpl.to_string(),
        report.theta.to_string(),
        report.theta.negative,
        report.theta.theta(),
        report.s_value,
        report.p_value,
        report.satisfied,
    );
    let want = (
        "o0k0u0".to_string(),
        "150110210".to_string(),
        "151111211".to_string(),
        false,
        9,
        40,
        40,
        true,
    );
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("Λ=o0k0u0 Θ₀=150110210 Θ=+151111211 θ=9 S=P=40".into())
}

fn c2_example_two() -> Outcome {
    let tpl = ThetaTemplate::parse(EXAMPLE2_TEMPLATE).map_err(|e| e.to_string())?;
    let c = MagnitudeTuple::new(EXAMPLE2_MAGNITUDES.to_vec()).unwrap();
    let r = verify_from_template(&tpl, &c, &example2_delta()).map_err(|e| e.to_string())?;
    let got = (r.theta.to_string(), r.theta.theta(), r.s_value, r.p_value, r.satisfied);
    let want = ("-1291132521545".to_string(), 13, 552, -11040, false);
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("Θ=-1291132521545 θ=13 S=552 P=-11040".into())
}

fn c3_instrumentation() -> Outcome {
    let mut rng = XorShift64Star::new(3);
    let mut max_n = 0;
    for _ in 0..100 {
        let n = rng.range_inclusive(1, 1000) as usize;
        let inst = gen_instance(&GenConfig::new(n, 36, 99_999, rng.next_u64())).unwrap();
        let delta = SignVector::new(
            (0..n)
                .map(|_| {
                    if rng.below(2) == 0 {
                        spinoza_core::Sign::Plus
                    } else {
                        spinoza_core::Sign::Minus
                    }
                })
                .collect(),
        );
        let r = verify(&inst, &delta).unwrap();
        ensure(r.counters.modulo == 11 * n as u64, || {
            format!("n={n}: {} modulo ops", r.counters.modulo)
        })?;
        max_n = max_n.max(n);
    }
    Ok(format!("100 pairs, modulo ops == 11n (largest n = {max_n})"))
}

fn c4_oracle_equivalence() -> Outcome {
    let mut rng = XorShift64Star::new(4);
    let mut disagreements = 0;
    let mut assignments = 0u64;
    let mut yes = 0;
    for _ in 0..200 {
        let inst = random_instance(&mut rng, 10);
        let n = inst.n();
        let mut verifier = Verifier::new(&inst);
        let mut fast_count = 0u64;
        let mut fast_first = None;
        for rank in 0..1u64 << n {
            let delta = SignVector::from_rank(n, rank);
            let fast = verifier.check(&delta);
            let naive = reference::evaluate(&inst, &delta.deltas(&inst.c));
            assignments += 1;
            if (fast.s_value, fast.p_value, fast.satisfied) != (naive.s, naive.p, naive.satisfied()) {
                disagreements += 1;
            }
            if fast.satisfied {
                fast_count += 1;
                fast_first.get_or_insert(rank);
            }
        }
        let label = label_instance(&inst, 20).unwrap();
        let verdict = solve(&inst, 1);
        if label.witness_count != fast_count
            || verdict.answer != label.answer
            || verdict.witness.as_ref().map(|w| w.rank()) != label.first_witness_rank
            || fast_first != label.first_witness_rank
        {
            disagreements += 1;
        }
        if label.answer == Answer::Yes {
            yes += 1;
        }
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!(
        "200 instances, {assignments} assignments, {yes} satisfiable, 0 disagreements"
    ))
}

fn c5_exhaustiveness() -> Outcome {
    let corpus = labeled_corpus(5, 200, 12);
    let mut unsat = 0;
    for l in &corpus {
        if l.answer == Answer::No {
            let v = solve(&l.instance, 1);
            ensure(
                v.answer == Answer::No && v.assignments_tried == 1u64 << l.instance.n(),
                || format!("n={} tried {}", l.instance.n(), v.assignments_tried),
            )?;
            unsat += 1;
        }
    }
    let inst = example1();
    let ranks = reference::satisfying_ranks(&inst);
    let v = solve(&inst, 1);
    ensure(!ranks.is_empty(), || "example 1 has no witness".into())?;
    ensure(
        v.answer == Answer::Yes && v.witness.as_ref().map(|w| w.rank()) == ranks.first().copied(),
        || format!("solver witness {:?} vs oracle ranks {ranks:?}", v.witness),
    )?;
    Ok(format!(
        "{unsat} unsatisfiable instances exhausted 2^n; example 1 has {} of 8 satisfying, solver returns rank {}",
        ranks.len(),
        ranks[0]
    ))
}

fn c6_scaling() -> Outcome {
    let start = Instant::now();
    let mut cfg = ScalingConfig::new(10, 20, 5, 6);
    cfg.verify_reps = 2000;
    cfg.require_unsatisfiable = Some(100);
    let records = run_scaling(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(records.iter().all(|r| r.answer == Answer::No), || {
        "a cell has no unsatisfiable instance".into()
    })?;
    ensure(records.iter().all(|r| r.verify_mod_ops == 11 * r.n as u64), || {
        "mod ops not 11n".into()
    })?;
    let summary = fit_growth(&records).map_err(|e| e.to_string())?;
    print!("{}", summary.render());
    let in_band = summary.ratios.iter().filter(|(_, r)| (1.6..=2.6).contains(r)).count();
    ensure(summary.ratios.len() == 10, || {
        format!("{} ratios", summary.ratios.len())
    })?;
    ensure(in_band >= 8, || {
        format!("only {in_band}/10 doubling ratios in [1.6, 2.6]")
    })?;
    ensure(summary.verify_relative_residual < 0.20, || {
        format!("verify fit relative residual {:.4}", summary.verify_relative_residual)
    })?;
    ensure(elapsed.as_secs() < 600, || format!("run took {elapsed:?}"))?;
    Ok(format!(
        "{in_band}/10 ratios in band, verify residual {:.4}, mod ops 11n, {:.1}s",
        summary.verify_relative_residual,
        elapsed.as_secs_f64()
    ))
}

fn c7_partition_independence() -> Outcome {
    let corpus = labeled_corpus(7, 400, 12);
    // keep every satisfiable instance plus unsatisfiable ones up to 50 total
    let mut chosen: Vec<&LabeledInstance> = corpus.iter().filter(|l| l.answer == Answer::Yes).take(25).collect();
    let yes = chosen.len();
    chosen.extend(corpus.iter().filter(|l| l.answer == Answer::No).take(50 - yes));
    ensure(chosen.len() == 50, || format!("only {} instances", chosen.len()))?;
    for l in &chosen {
        let base = solve(&l.instance, 1);
        ensure(base.answer == l.answer, || "solver disagrees with label".into())?;
        for w in [2, 4, 8] {
            let v = solve(&l.instance, w);
            ensure((v.answer, &v.witness) == (base.answer, &base.witness), || {
                format!(
                    "workers={w} gave {:?}/{:?} vs {:?}/{:?}",
                    v.answer, v.witness, base.answer, base.witness
                )
            })?;
        }
    }
    Ok(format!(
        "50 instances ({yes} satisfiable) identical for workers 1/2/4/8"
    ))
}

fn c8_reproducibility() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = GenConfig::new(6, 36, 999, 42);
    let ea = write_corpus(a.path(), &cfg, 5, true, 20).map_err(|e| e.to_string())?;
    write_corpus(b.path(), &cfg, 5, true, 20).map_err(|e| e.to_string())?;
    let mut files: Vec<_> = ea.iter().map(|e| e.file.clone()).collect();
    files.push("manifest.csv".into());
    for f in &files {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        ensure(x == y, || format!("{} differs", f.display()))?;
    }
    let d1: Vec<u64> = guess_ranks(10, 99).take(1000).collect();
    let d2: Vec<u64> = guess_ranks(10, 99).take(1000).collect();
    ensure(d1 == d2, || "guess draw sequence differs".into())?;
    let g1 = guess_check(&example1(), 99, 100);
    let g2 = guess_check(&example1(), 99, 100);
    ensure(g1 == g2 && g1.witness.is_some(), || format!("{g1:?} vs {g2:?}"))?;
    Ok(format!(
        "{} files byte-identical; 1000 guess draws identical",
        files.len()
    ))
}

struct ConstructionStats {
    checked: usize,
    zero_with_ten: usize,
    /// Θ has no zero although some negative mark has digit-sum in 11..=18.
    literal_counterexamples: usize,
    example: Option<String>,
}

fn construction_sweep() -> Result<ConstructionStats, String> {
    let mut rng = XorShift64Star::new(9);
    let mut stats = ConstructionStats {
        checked: 0,
        zero_with_ten: 0,
        literal_counterexamples: 0,
        example: None,
    };
    for _ in 0..1000 {
        let n = rng.range_inclusive(1, 30) as usize;
        let inst = gen_instance(&GenConfig::new(n, 36, 999, rng.next_u64())).unwrap();
        let delta = SignVector::from_rank(n, rng.below(1u64 << n));
        let tpl = build_theta_template(&build_lambda(&inst));
        ensure(tpl.digits().iter().filter(|&&d| d == 0).count() == n, || {
            "template zero count".into()
        })?;
        let r = assemble(&tpl, &delta, &inst.c).map_err(|e| e.to_string())?;
        ensure(r.theta.negative == (delta.negative_count() % 2 == 1), || {
            "sign parity".into()
        })?;
        let text = r.theta.digit_string();
        ensure(
            !text.contains(['-', '(', ')', '+']) && text.bytes().all(|b| b.is_ascii_digit()),
            || format!("non-digit in {text}"),
        )?;
        let has_zero = r.theta.contains_zero();
        let sum_ten = r.marks.iter().any(|m| m.value == -10);
        let sum_ge_ten = r.marks.iter().any(|m| m.value <= -10);
        ensure(has_zero == sum_ten, || {
            format!("zero={has_zero} but digit-sum-10 mark={sum_ten}")
        })?;
        ensure(r.zero_warning() == has_zero, || {
            "warning flag does not track zero".into()
        })?;
        if has_zero {
            stats.zero_with_ten += 1;
        }
        if has_zero != sum_ge_ten {
            stats.literal_counterexamples += 1;
            if stats.example.is_none() {
                let m = r
                    .marks
                    .iter()
                    .zip(delta.deltas(&inst.c))
                    .find(|(m, _)| m.value < -10)
                    .unwrap();
                stats.example = Some(format!("δ={} gives mark {} and Θ has no 0", m.1, m.0.value));
            }
        }
        stats.checked += 1;
    }
    Ok(stats)
}

fn c9_construction() -> Outcome {
    let s = construction_sweep()?;
    Ok(format!(
        "{} instances: n zeros in template, sign = parity, digits only; 0 in Θ iff a negative mark sums to exactly 10 ({} cases, all flagged)",
        s.checked, s.zero_with_ten
    ))
}

/// The criterion as worded ties a 0 in Θ to any negative mark with a digit-sum
/// of at least 10. Marks -11..=-18 are written as "11".."18" and carry no 0, so this
/// clause cannot hold for a faithful implementation of the mark rule.
fn c9_literal_zero_clause() -> Outcome {
    let s = construction_sweep()?;
    ensure(s.literal_counterexamples == 0, || {
        format!(
            "{} of {} instances violate it, e.g. {}",
            s.literal_counterexamples,
            s.checked,
            s.example.clone().unwrap_or_default()
        )
    })?;
    Ok("holds".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 golden example 1", c1_example_one),
        ("2 golden example 2 (template)", c2_example_two),
        ("3 instrumentation 11n", c3_instrumentation),
        ("4 oracle equivalence", c4_oracle_equivalence),
        ("5 exhaustiveness", c5_exhaustiveness),
        ("6 scaling", c6_scaling),
        ("7 partition independence", c7_partition_independence),
        ("8 reproducibility", c8_reproducibility),
        ("9 construction properties", c9_construction),
        ("9 literal zero clause (digit-sum >= 10)", c9_literal_zero_clause),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.2}s]", t.elapsed().as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{:.2}s]", t.elapsed().as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion check(s) failed");
        ExitCode::FAILURE
    }
}
