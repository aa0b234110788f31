//! Exhaustive search over all 2ⁿ sign vectors, plus a guess-and-check sampler.
//!
//! Search order: the vector with rank r has δᵢ negative iff bit `n - i` of r
//! is set. Rank 0 is all-positive and the last rank is all-negative, so the
//! order is lexicographic with `+` before `-` and position 1 most
//! significant.
//!
//! With several workers the rank space is cut into `2^⌈log₂ workers⌉`
//! contiguous blocks. Each worker scans whole blocks in order and publishes
//! the lowest satisfying rank it has seen into a shared atomic minimum; the
//! final witness is that minimum, which is the same vector a single worker
//! would return.

use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::counters::OpCounters;
use crate::instance::{format_witness, Instance, SignVector};
use crate::rng::XorShift64Star;
use crate::verify::Verifier;

/// Largest n whose assignment space the solver will enumerate.
pub const MAX_ENUMERABLE_N: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    /// The assignment budget ran out before the space was exhausted.
    Aborted,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Aborted => "aborted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<SignVector>,
    pub assignments_tried: u64,
    pub elapsed: Duration,
    pub total_counters: OpCounters,
}

impl Verdict {
    /// `key=value` lines; the witness is written as signed integers.
    pub fn to_record(&self, inst: &Instance) -> String {
        let witness = self
            .witness
            .as_ref()
            .map(|w| format_witness(w, &inst.c))
            .unwrap_or_else(|| "none".to_string());
        format!(
            "answer={}\nwitness={}\nassignments_tried={}\nelapsed_ns={}\nmod_ops={}\nmul_ops={}\nadd_ops={}\nstring_ops={}\n",
            self.answer,
            witness,
            self.assignments_tried,
            self.elapsed.as_nanos(),
            self.total_counters.modulo,
            self.total_counters.multiplications,
            self.total_counters.additions,
            self.total_counters.string_ops,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub workers: usize,
    /// Only the first `budget` vectors in search order are examined; if none
    /// satisfies and the space is larger, the outcome is [`Answer::Aborted`].
    pub budget: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            workers: 1,
            budget: None,
        }
    }
}

/// Iterator over all 2ⁿ sign vectors in search order.
#[derive(Debug, Clone)]
pub struct Assignments {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for Assignments {
    type Item = SignVector;

    fn next(&mut self) -> Option<SignVector> {
        if self.next >= self.end {
            return None;
        }
        let v = SignVector::from_rank(self.n, self.next);
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Assignments {}

/// Panics when `n` is 0 or above [`MAX_ENUMERABLE_N`].
pub fn enumerate_assignments(n: usize) -> Assignments {
    assert!((1..=MAX_ENUMERABLE_N).contains(&n), "n must be in 1..=63");
    Assignments {
        n,
        next: 0,
        end: 1u64 << n,
    }
}

pub fn solve(inst: &Instance, workers: usize) -> Verdict {
    solve_with(inst, SolveOptions { workers, budget: None })
}

pub fn solve_with(inst: &Instance, opts: SolveOptions) -> Verdict {
    let timer = Stopwatch::start();
    let n = inst.n();
    if n > MAX_ENUMERABLE_N {
        return Verdict {
            answer: Answer::Aborted,
            witness: None,
            assignments_tried: 0,
            elapsed: timer.elapsed(),
            total_counters: OpCounters::default(),
        };
    }
    let space = 1u64 << n;
    let limit = opts.budget.map_or(space, |b| b.min(space));
    let workers = opts.workers.max(1);

    let scan = if workers == 1 {
        scan_range(inst, 0, limit, None)
    } else {
        scan_parallel(inst, limit, workers)
    };

    let answer = match scan.best {
        Some(_) => Answer::Yes,
        None if limit == space => Answer::No,
        None => Answer::Aborted,
    };
    Verdict {
        answer,
        witness: scan.best.map(|r| SignVector::from_rank(n, r)),
        assignments_tried: scan.tried,
        elapsed: timer.elapsed(),
        total_counters: scan.counters,
    }
}

#[derive(Debug, Default)]
struct Scan {
    best: Option<u64>,
    tried: u64,
    counters: OpCounters,
}

/// Scans ranks `start..end` in order, stopping at the first satisfying rank
/// or as soon as `shared` holds a rank below the current one.
fn scan_range(inst: &Instance, start: u64, end: u64, shared: Option<&AtomicU64>) -> Scan {
    let mut verifier = Verifier::new(inst);
    let mut delta = SignVector::all_positive(inst.n());
    let mut scan = Scan::default();
    for rank in start..end {
        if let Some(cell) = shared {
            if cell.load(Ordering::Relaxed) < rank {
                break;
            }
        }
        delta.set_rank(rank);
        let check = verifier.check(&delta);
        scan.tried += 1;
        scan.counters += check.counters;
        if check.satisfied {
            scan.best = Some(rank);
            if let Some(cell) = shared {
                cell.fetch_min(rank, Ordering::Relaxed);
            }
            break;
        }
    }
    scan
}

fn scan_parallel(inst: &Instance, limit: u64, workers: usize) -> Scan {
    let n = inst.n();
    let split_bits = (usize::BITS - (workers - 1).leading_zeros()).min(n as u32);
    let blocks = 1u64 << split_bits;
    let block_len = (1u64 << n) >> split_bits;
    let best = AtomicU64::new(u64::MAX);
    let next_block = AtomicUsize::new(0);

    let partials: Vec<Scan> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers.min(blocks as usize))
            .map(|_| {
                s.spawn(|| {
                    let mut acc = Scan::default();
                    loop {
                        let b = next_block.fetch_add(1, Ordering::Relaxed) as u64;
                        if b >= blocks {
                            break;
                        }
                        let start = b * block_len;
                        let end = (start + block_len).min(limit);
                        if start >= end || best.load(Ordering::Relaxed) < start {
                            continue;
                        }
                        let part = scan_range(inst, start, end, Some(&best));
                        acc.tried += part.tried;
                        acc.counters += part.counters;
                        acc.best = match (acc.best, part.best) {
                            (Some(a), Some(b)) => Some(a.min(b)),
                            (a, b) => a.or(b),
                        };
                    }
                    acc
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    let mut total = Scan::default();
    for part in partials {
        total.tried += part.tried;
        total.counters += part.counters;
        total.best = match (total.best, part.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessOutcome {
    pub witness: Option<SignVector>,
    /// Number of draws made, including the successful one.
    pub draws: u64,
}

/// Ranks drawn uniformly with replacement from `0..2ⁿ`, seeded.
pub fn guess_ranks(n: usize, seed: u64) -> impl Iterator<Item = u64> {
    assert!((1..=64).contains(&n));
    let mut rng = XorShift64Star::new(seed);
    std::iter::repeat_with(move || if n == 64 { rng.next_u64() } else { rng.below(1u64 << n) })
}

/// Draws up to `max_tries` random sign vectors and returns the first that satisfies.
pub fn guess_check(inst: &Instance, seed: u64, max_tries: u64) -> GuessOutcome {
    let n = inst.n().min(64);
    let mut verifier = Verifier::new(inst);
    let mut delta = SignVector::all_positive(inst.n());
    for (i, rank) in guess_ranks(n, seed).take(max_tries as usize).enumerate() {
        delta.set_rank(rank);
        if verifier.check(&delta).satisfied {
            return GuessOutcome {
                witness: Some(delta),
                draws: i as u64 + 1,
            };
        }
    }
    GuessOutcome {
        witness: None,
        draws: max_tries,
    }
}

/// Monotonic timer that reads zero where no clock is available.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    pub(crate) fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed()
        }
        #[cfg(target_arch = "wasm32")]
        {
            Duration::ZERO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::verify::verify;

    #[test]
    fn enumeration_order_and_size() {
        let one: Vec<String> = enumerate_assignments(1).map(|v| v.sign_string()).collect();
        assert_eq!(one, vec!["+", "-"]);
        assert_eq!(enumerate_assignments(8).count(), 256);
        let three: Vec<_> = enumerate_assignments(3).collect();
        assert_eq!(three.len(), 8);
        assert_eq!(three[0].sign_string(), "+++");
        assert_eq!(three[7].sign_string(), "---");
        assert!(three.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn example_one_is_yes_with_all_positive_witness() {
        let inst = example1();
        let v = solve(&inst, 1);
        assert_eq!(v.answer, Answer::Yes);
        assert_eq!(format_witness(v.witness.as_ref().unwrap(), &inst.c), "10,14,16");
        assert_eq!(v.assignments_tried, 1);
        assert!(v.to_record(&inst).starts_with("answer=yes\nwitness=10,14,16\n"));
    }

    #[test]
    fn parallel_matches_sequential() {
        let inst = example2();
        let seq = solve(&inst, 1);
        for w in [2, 3, 4, 8, 64] {
            let par = solve(&inst, w);
            assert_eq!((par.answer, &par.witness), (seq.answer, &seq.witness), "workers={w}");
        }
    }

    #[test]
    fn budget_aborts_instead_of_no() {
        let inst = Instance::from_parts("ab", &[10, 11, 12, 13]).unwrap();
        let full = solve(&inst, 1);
        if full.answer == Answer::No {
            let v = solve_with(
                &inst,
                SolveOptions {
                    workers: 2,
                    budget: Some(5),
                },
            );
            assert_eq!(v.answer, Answer::Aborted);
            assert_eq!(v.assignments_tried, 5);
        }
    }

    #[test]
    fn oversized_instance_is_aborted() {
        let inst = Instance::from_parts("ab", &[10; 64]).unwrap();
        assert_eq!(solve(&inst, 1).answer, Answer::Aborted);
    }

    #[test]
    fn guess_check_is_reproducible() {
        let inst = example1();
        let a = guess_check(&inst, 9, 1000);
        let b = guess_check(&inst, 9, 1000);
        assert_eq!(a, b);
        let w = a.witness.expect("a witness exists among 8");
        assert!(verify(&inst, &w).unwrap().satisfied);
        let r1: Vec<u64> = guess_ranks(5, 3).take(20).collect();
        let r2: Vec<u64> = guess_ranks(5, 3).take(20).collect();
        assert_eq!(r1, r2);
        assert!(r1.iter().all(|&r| r < 32));
    }
}
