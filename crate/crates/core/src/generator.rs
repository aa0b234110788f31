//! Seeded instance generation and exhaustive ground-truth labeling.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::instance::{serialize_instance, Instance, LetterSequence, MagnitudeTuple, ALLOWED_LETTERS};
use crate::reference;
use crate::rng::XorShift64Star;
use crate::solver::Answer;

pub const DEFAULT_LABEL_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenConfig {
    pub n: usize,
    pub psi_len: usize,
    pub c_max: u64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(n: usize, psi_len: usize, c_max: u64, seed: u64) -> Self {
        GenConfig {
            n,
            psi_len,
            c_max,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        if self.psi_len < 2 {
            return Err(Error::InvalidConfig("psi_len must be at least 2".into()));
        }
        if self.c_max < 10 {
            return Err(Error::InvalidConfig("c_max must be at least 10".into()));
        }
        Ok(())
    }
}

/// Draws ψ letters uniformly from the 24 allowed ones, then n magnitudes
/// uniformly from `10..=c_max`, all from one [`XorShift64Star`] stream.
pub fn gen_instance(cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = XorShift64Star::new(cfg.seed);
    let letters: String = (0..cfg.psi_len)
        .map(|_| ALLOWED_LETTERS[rng.below(ALLOWED_LETTERS.len() as u64) as usize] as char)
        .collect();
    let c: Vec<u64> = (0..cfg.n).map(|_| rng.range_inclusive(10, cfg.c_max)).collect();
    Ok(Instance::new(LetterSequence::new(&letters)?, MagnitudeTuple::new(c)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledInstance {
    pub instance: Instance,
    pub answer: Answer,
    pub witness_count: u64,
    /// Search-order rank of the first satisfying assignment.
    pub first_witness_rank: Option<u64>,
}

/// Labels an instance by scanning all 2ⁿ assignments with the reference verifier.
pub fn label_instance(inst: &Instance, n_cap: usize) -> Result<LabeledInstance> {
    if inst.n() > n_cap || inst.n() > 32 {
        return Err(Error::LabelCapExceeded {
            n: inst.n(),
            cap: n_cap.min(32),
        });
    }
    let ranks = reference::satisfying_ranks(inst);
    Ok(LabeledInstance {
        instance: inst.clone(),
        answer: if ranks.is_empty() { Answer::No } else { Answer::Yes },
        witness_count: ranks.len() as u64,
        first_witness_rank: ranks.first().copied(),
    })
}

/// One manifest row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub config: GenConfig,
    pub file: PathBuf,
    /// `None` when labeling was skipped.
    pub label: Option<(Answer, u64)>,
}

pub const MANIFEST_HEADER: &str = "seed,n,psi_len,c_max,answer,witness_count,file";

impl CorpusEntry {
    pub fn manifest_line(&self) -> String {
        let (answer, count) = match self.label {
            Some((a, c)) => (a.to_string(), c.to_string()),
            None => ("unlabeled".to_string(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{}",
            self.config.seed,
            self.config.n,
            self.config.psi_len,
            self.config.c_max,
            answer,
            count,
            self.file.display()
        )
    }
}

/// Writes `count` instances with seeds `base.seed, base.seed + 1, ...` into
/// `dir`, one canonical file each, plus `manifest.csv`.
///
/// Instances are labeled when `label` is set and n is within `n_cap`.
pub fn write_corpus(dir: &Path, base: &GenConfig, count: usize, label: bool, n_cap: usize) -> Result<Vec<CorpusEntry>> {
    fs::create_dir_all(dir)?;
    let mut entries = Vec::with_capacity(count);
    for k in 0..count as u64 {
        let cfg = GenConfig {
            seed: base.seed.wrapping_add(k),
            ..*base
        };
        let inst = gen_instance(&cfg)?;
        let name = PathBuf::from(format!("instance_n{}_s{}.txt", cfg.n, cfg.seed));
        let mut text = serialize_instance(&inst);
        text.push('\n');
        fs::write(dir.join(&name), text)?;
        let label = if label {
            let l = label_instance(&inst, n_cap)?;
            Some((l.answer, l.witness_count))
        } else {
            None
        };
        entries.push(CorpusEntry {
            config: cfg,
            file: name,
            label,
        });
    }
    let mut manifest = fs::File::create(dir.join("manifest.csv"))?;
    writeln!(manifest, "{MANIFEST_HEADER}")?;
    for e in &entries {
        writeln!(manifest, "{}", e.manifest_line())?;
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1;
    use crate::instance::is_allowed_letter;

    #[test]
    fn same_seed_same_instance() {
        let cfg = GenConfig::new(3, 36, 999, 42);
        let a = gen_instance(&cfg).unwrap();
        let b = gen_instance(&cfg).unwrap();
        assert_eq!(serialize_instance(&a), serialize_instance(&b));
        assert_eq!(a.psi_seq.psi(), 36);
        assert_eq!(a.n(), 3);
    }

    #[test]
    fn ranges_hold() {
        for seed in 0..50 {
            let cfg = GenConfig::new(7, 12, 40, seed);
            let inst = gen_instance(&cfg).unwrap();
            assert!(inst.psi_seq.as_bytes().iter().all(|&b| is_allowed_letter(b)));
            assert!(inst.c.values().iter().all(|&c| (10..=40).contains(&c)));
        }
    }

    #[test]
    fn seeds_do_not_collide() {
        let mut seen = std::collections::HashSet::new();
        for seed in 0..100 {
            let inst = gen_instance(&GenConfig::new(4, 36, 999, seed)).unwrap();
            assert!(seen.insert(serialize_instance(&inst)), "collision at seed {seed}");
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(gen_instance(&GenConfig::new(0, 36, 999, 1)).is_err());
        assert!(gen_instance(&GenConfig::new(3, 1, 999, 1)).is_err());
        assert!(gen_instance(&GenConfig::new(3, 36, 9, 1)).is_err());
    }

    #[test]
    fn labels_example_one() {
        let l = label_instance(&example1(), DEFAULT_LABEL_CAP).unwrap();
        assert_eq!(l.answer, Answer::Yes);
        assert!(l.witness_count >= 1);
        assert_eq!(l.first_witness_rank, Some(0));
    }

    #[test]
    fn label_cap() {
        let inst = gen_instance(&GenConfig::new(21, 36, 999, 5)).unwrap();
        assert!(matches!(
            label_instance(&inst, 20),
            Err(Error::LabelCapExceeded { n: 21, cap: 20 })
        ));
    }
}
