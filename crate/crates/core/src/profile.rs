use std::fmt;

use serde::Serialize;

use crate::error::{hypothesis, Error, Result};

/// Ground-set size and uniformities `k_1..k_r` of a problem instance.
///
/// `istar` is a 0-based index into `ks` (rendered 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Profile {
    pub n: usize,
    pub ks: Vec<usize>,
    pub istar: Option<usize>,
}

impl Profile {
    pub fn new(n: usize, ks: Vec<usize>) -> Result<Self> {
        if ks.len() < 2 {
            return Err(Error::InvalidSet(format!(
                "need at least two families, got {}",
                ks.len()
            )));
        }
        if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::InvalidSet(format!("uniformity {k} outside [1, {n}]")));
        }
        Ok(Profile { n, ks, istar: None })
    }

    pub fn with_istar(mut self, istar: usize) -> Result<Self> {
        if istar >= self.ks.len() {
            return Err(Error::OutOfRange {
                index: istar as u64,
                limit: self.ks.len() as u64,
            });
        }
        self.istar = Some(istar);
        Ok(self)
    }

    pub fn r(&self) -> usize {
        self.ks.len()
    }

    pub fn is_descending(&self) -> bool {
        self.ks.windows(2).all(|w| w[0] >= w[1])
    }

    /// Smallest uniformity among the families other than `istar`.
    pub fn k_bar(&self, istar: usize) -> usize {
        k_bar(&self.ks, istar)
    }

    /// `k_1 >= .. >= k_r` and `n >= k_1 + k_2`.
    pub fn check_descending_hypothesis(&self) -> Result<()> {
        check_descending(self.n, &self.ks)
    }

    /// `n >= k_i + k_{i*}` for every `i != i*`.
    pub fn check_istar_hypothesis(&self, istar: usize) -> Result<()> {
        check_istar(self.n, &self.ks, istar)
    }
}

pub(crate) fn k_bar(ks: &[usize], istar: usize) -> usize {
    ks.iter()
        .enumerate()
        .filter(|&(i, _)| i != istar)
        .map(|(_, &k)| k)
        .min()
        .expect("at least two families")
}

pub(crate) fn check_descending(n: usize, ks: &[usize]) -> Result<()> {
    if ks.len() < 2 {
        return Err(hypothesis("r >= 2"));
    }
    if let Some(i) = ks.windows(2).position(|w| w[0] < w[1]) {
        return Err(hypothesis(format!(
            "k_{} >= k_{} fails ({} < {})",
            i + 1,
            i + 2,
            ks[i],
            ks[i + 1]
        )));
    }
    if ks[ks.len() - 1] == 0 {
        return Err(hypothesis("k_r >= 1"));
    }
    if n < ks[0] + ks[1] {
        return Err(hypothesis(format!(
            "n >= k_1 + k_2 fails ({} < {} + {})",
            n, ks[0], ks[1]
        )));
    }
    Ok(())
}

pub(crate) fn check_istar(n: usize, ks: &[usize], istar: usize) -> Result<()> {
    if ks.len() < 2 {
        return Err(hypothesis("r >= 2"));
    }
    if istar >= ks.len() {
        return Err(Error::OutOfRange {
            index: istar as u64,
            limit: ks.len() as u64,
        });
    }
    if ks.contains(&0) {
        return Err(hypothesis("every k_i >= 1"));
    }
    for (i, &k) in ks.iter().enumerate() {
        if i != istar && n < k + ks[istar] {
            return Err(hypothesis(format!(
                "n >= k_{} + k_{{i*}} fails ({} < {} + {})",
                i + 1,
                n,
                k,
                ks[istar]
            )));
        }
    }
    Ok(())
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k=", self.n)?;
        for (i, k) in self.ks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        if let Some(i) = self.istar {
            write!(f, " istar={}", i + 1)?;
        }
        Ok(())
    }
}
