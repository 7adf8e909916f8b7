//! Sweep configuration (TOML) and the instance list it expands to.

use std::collections::BTreeSet;
use std::path::PathBuf;

use crossint::search::{full_space_supported, Engine, CLASS_MAX_N};
use crossint::{BigCount, Profile, Theorem};
use serde::Deserialize;

use crate::check::{evaluate, Evaluation, Instance, Weight};
use crate::report::Format;
use crate::{usage, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    #[default]
    Prefix,
    Full,
}

impl From<EngineChoice> for Engine {
    fn from(e: EngineChoice) -> Self {
        match e {
            EngineChoice::Prefix => Engine::Prefix,
            EngineChoice::Full => Engine::Full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest ground set searched; may not exceed the binary's cap, which
    /// is the default.
    pub max_n: Option<usize>,
    /// Largest ground set for which isomorphism classes are counted.
    pub class_max_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_n: None,
            class_max_n: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A sweep over profiles `n in n_range`, `r in r_range`, `k_max >= k_1 >= ..
/// >= k_r >= 1`, for each listed theorem whose hypothesis holds. T1.6 also
/// ranges over `i*`; T3.6 uses `r = 2`, both orders of `(k, l)`, every
/// `tau <= l` and every `c` in `c_values`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub n_range: [usize; 2],
    pub r_range: [usize; 2],
    pub k_max: usize,
    pub theorems: Vec<String>,
    pub engine: EngineChoice,
    /// Extra profiles `"n:k1,k2,..[@istar]"` (1-based `istar`), checked
    /// against every listed theorem whose hypothesis they satisfy.
    pub extra_profiles: Vec<String>,
    pub c_values: Vec<u64>,
    pub caps: Caps,
    pub output: OutputConfig,
}

impl Default for SweepConfig {
    /// The acceptance sweep: `r in {2, 3}`, `2 <= n <= 10`, `k_1 <= 4`,
    /// descending bound, plus the `(10; 5, 3, 2)` worked example.
    fn default() -> Self {
        SweepConfig {
            n_range: [2, 10],
            r_range: [2, 3],
            k_max: 4,
            theorems: vec!["t17".into()],
            engine: EngineChoice::Prefix,
            extra_profiles: vec!["10:5,3,2".into()],
            c_values: vec![1, 2, 3],
            caps: Caps::default(),
            output: OutputConfig::default(),
        }
    }
}

fn descending(r: usize, kmax: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    (1..=kmax)
        .flat_map(|first| {
            descending(r - 1, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn parse_extra(s: &str) -> Result<(Profile, Option<usize>)> {
    let bad = || usage(format!("extra profile {s:?} is not of the form n:k1,k2[@istar]"));
    let (n, rest) = s.split_once(':').ok_or_else(bad)?;
    let (ks, istar) = match rest.split_once('@') {
        Some((ks, i)) => (ks, Some(i.trim().parse::<usize>().map_err(|_| bad())?)),
        None => (rest, None),
    };
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let ks = ks
        .split(',')
        .map(|k| k.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    let istar = match istar {
        Some(0) => return Err(bad()),
        Some(i) => Some(i - 1),
        None => None,
    };
    Ok((Profile::new(n, ks)?, istar))
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    fn validate(&self, max_n: usize) -> Result<Vec<Theorem>> {
        let [n_lo, n_hi] = self.n_range;
        let [r_lo, r_hi] = self.r_range;
        if n_lo > n_hi || r_lo > r_hi || self.k_max == 0 {
            return Err(usage("empty sweep range"));
        }
        if r_lo < 2 {
            return Err(usage("r_range must start at 2 or more"));
        }
        if let Some(m) = self.caps.max_n.filter(|&m| m > max_n) {
            return Err(usage(format!("caps.max_n = {m} exceeds the binary's cap {max_n}")));
        }
        if self.caps.class_max_n > CLASS_MAX_N {
            return Err(usage(format!(
                "caps.class_max_n = {} exceeds {CLASS_MAX_N}",
                self.caps.class_max_n
            )));
        }
        if self.theorems.is_empty() {
            return Err(usage("no theorems listed"));
        }
        let theorems = self
            .theorems
            .iter()
            .map(|t| t.parse::<Theorem>().map_err(Into::into))
            .collect::<Result<Vec<_>>>()?;
        if self.engine == EngineChoice::Full {
            if let Some(t) = theorems
                .iter()
                .find(|t| !matches!(t, Theorem::T13 | Theorem::T14 | Theorem::T15 | Theorem::T17))
            {
                return Err(usage(format!("the full engine does not cover {t}")));
            }
        }
        Ok(theorems)
    }

    /// Instances in deterministic order: theorem list order, then `n`, `r`,
    /// uniformities, `i*`, `tau`, `c`; extra profiles last.
    pub fn instances(&self, max_n: usize) -> Result<Vec<Instance>> {
        let theorems = self.validate(max_n)?;
        let [n_lo, n_hi] = self.n_range;
        let [r_lo, r_hi] = self.r_range;
        let cap = self.caps.max_n.unwrap_or(max_n);
        let extras = self
            .extra_profiles
            .iter()
            .map(|s| parse_extra(s))
            .collect::<Result<Vec<_>>>()?;

        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for &t in &theorems {
            let mut candidates: Vec<(Profile, Option<usize>)> = Vec::new();
            for n in n_lo..=n_hi.min(cap) {
                if t == Theorem::T36 {
                    for k in 1..=self.k_max.min(n) {
                        for l in 1..=self.k_max.min(n) {
                            candidates.push((Profile::new(n, vec![k, l])?, None));
                        }
                    }
                    continue;
                }
                for r in r_lo..=r_hi {
                    for ks in descending(r, self.k_max.min(n)) {
                        candidates.push((Profile::new(n, ks)?, None));
                    }
                }
            }
            candidates.extend(extras.iter().filter(|(p, _)| p.n <= cap).cloned());

            for (p, istar) in candidates {
                for inst in self.expand(t, p, istar) {
                    let fits = self.engine == EngineChoice::Prefix
                        || full_space_supported(&inst.profile);
                    if fits && crate::check::bound(&inst).is_ok() && seen.insert(inst.label() + t.id()) {
                        out.push(inst);
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(usage("the sweep contains no in-hypothesis profiles"));
        }
        Ok(out)
    }

    fn expand(&self, t: Theorem, p: Profile, istar: Option<usize>) -> Vec<Instance> {
        match t {
            Theorem::T16 => {
                let choices: Vec<usize> = match istar {
                    Some(i) => vec![i],
                    None => (0..p.r()).collect(),
                };
                choices
                    .into_iter()
                    .filter_map(|i| p.clone().with_istar(i).ok())
                    .map(|q| Instance::new(q, t))
                    .collect()
            }
            Theorem::T36 if p.r() == 2 => {
                let l = p.ks[1];
                let mut v = Vec::new();
                for tau in 1..=l {
                    for &c in &self.c_values {
                        let mut inst = Instance::new(p.clone(), t);
                        inst.weight = Some(Weight {
                            c: BigCount::from(c),
                            tau,
                        });
                        v.push(inst);
                    }
                }
                v
            }
            Theorem::T36 => Vec::new(),
            _ => vec![Instance::new(p, t)],
        }
    }

    /// Evaluates every instance in order.
    pub fn run(&self, max_n: usize) -> Result<Vec<Evaluation>> {
        let engine = self.engine.into();
        let class_max_n = Some(self.caps.class_max_n);
        self.instances(max_n)?
            .iter()
            .map(|inst| evaluate(inst, engine, class_max_n))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_the_acceptance_sweep() {
        let inst = SweepConfig::default().instances(20).unwrap();
        assert!(inst.iter().all(|i| i.theorem == Theorem::T17));
        assert!(inst
            .iter()
            .all(|i| i.profile.ks.len() <= 3 && i.profile.n >= i.profile.ks[0] + i.profile.ks[1]));
        assert_eq!(inst.last().unwrap().label(), "n=10 k=5,3,2");
        let labels: BTreeSet<String> = inst.iter().map(Instance::label).collect();
        assert_eq!(labels.len(), inst.len());
    }

    #[test]
    fn toml_round_trip_and_validation() {
        let c = SweepConfig::from_toml(
            r#"
            n_range = [4, 6]
            r_range = [2, 2]
            k_max = 3
            theorems = ["t16", "T3.6"]
            c_values = [2]
            extra_profiles = ["10:5,3,2@3"]
            [output]
            format = "csv"
            "#,
        )
        .unwrap();
        assert_eq!(c.output.format, Some(Format::Csv));
        let inst = c.instances(20).unwrap();
        assert!(inst.iter().any(|i| i.label() == "n=10 k=5,3,2 istar=3"));
        assert!(inst.iter().any(|i| i.label() == "n=6 k=3,2 c=2 tau=2"));

        assert!(SweepConfig::from_toml("n_range = [5, 4]").unwrap().instances(20).is_err());
        assert!(SweepConfig::from_toml("bogus = 1").is_err());
        // Only (1; 1, 1), which fails n >= k_1 + k_2.
        let c = SweepConfig::from_toml("n_range = [1, 1]\nextra_profiles = []").unwrap();
        assert!(c.instances(20).is_err());
    }
}
