//! One theorem checked at one profile: evaluate the closed form, run the
//! matching exact search, compare.

use std::time::{Duration, Instant};

use crossint::bounds::{
    bound_ft, bound_hilton, bound_hm, bound_sfq15, bound_thm16, bound_thm17, weighted_bound,
    BoundResult,
};
use crossint::count::choose;
use crossint::search::{
    full_space_max, full_space_supported, max_sum_l_initial, max_sum_l_initial_with_floors,
    max_sum_thm16, max_weighted_pair, Engine,
};
use crossint::{BigCount, Branch, Certificate, Profile, Theorem};
use serde::Serialize;

use crate::report::ReportRecord;
use crate::{usage, Result};

/// The `c` and `tau` of the weighted pair objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weight {
    pub c: BigCount,
    pub tau: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    /// `istar` is set for T1.6.
    pub profile: Profile,
    pub theorem: Theorem,
    /// Required for T3.6, ignored otherwise.
    pub weight: Option<Weight>,
    /// T1.4 with a star floor: the second family has at least `C(n-1, l-1)` members.
    pub star_floor: bool,
}

impl Instance {
    pub fn new(profile: Profile, theorem: Theorem) -> Self {
        Instance {
            profile,
            theorem,
            weight: None,
            star_floor: false,
        }
    }

    pub fn label(&self) -> String {
        let mut s = self.profile.to_string();
        if let (Theorem::T36, Some(w)) = (self.theorem, self.weight) {
            s.push_str(&format!(" c={} tau={}", w.c, w.tau));
        }
        if self.theorem == Theorem::T14 && self.star_floor {
            s.push_str(" star-floor");
        }
        s
    }

    fn weight(&self) -> Result<Weight> {
        self.weight
            .ok_or_else(|| usage("T3.6 needs --c and --tau"))
    }

    fn istar(&self) -> Result<usize> {
        self.profile
            .istar
            .ok_or_else(|| usage("T1.6 needs --istar"))
    }

    fn pair(&self) -> Result<(usize, usize)> {
        match self.profile.ks[..] {
            [k, l] => Ok((k, l)),
            _ => Err(usage(format!("{} takes exactly two uniformities", self.theorem))),
        }
    }

    fn uniform(&self) -> Result<usize> {
        let k = self.profile.ks[0];
        if self.profile.ks.iter().any(|&x| x != k) {
            return Err(usage(format!("{} needs equal uniformities", self.theorem)));
        }
        Ok(k)
    }
}

/// A closed-form value; `branch` and both arguments exist only for the
/// two-branch `max{., .}` bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub value: BigCount,
    pub branch: Option<Branch>,
    pub cover_star: Option<BigCount>,
    pub all_stars: Option<BigCount>,
}

impl BoundSummary {
    fn single(value: BigCount) -> Self {
        BoundSummary {
            value,
            branch: None,
            cover_star: None,
            all_stars: None,
        }
    }

    pub fn branch_name(&self) -> String {
        self.branch.map_or_else(|| "single".to_string(), |b| b.to_string())
    }

    /// `max{a, b} = v`, arguments in cover/star, all-stars order.
    pub fn max_expression(&self) -> Option<String> {
        Some(format!(
            "max{{{}, {}}} = {}",
            self.cover_star?, self.all_stars?, self.value
        ))
    }
}

impl From<BoundResult> for BoundSummary {
    fn from(b: BoundResult) -> Self {
        BoundSummary {
            value: b.value,
            branch: Some(b.branch),
            cover_star: Some(b.cover_star),
            all_stars: Some(b.all_stars),
        }
    }
}

pub fn bound(inst: &Instance) -> Result<BoundSummary> {
    let p = &inst.profile;
    let n = p.n;
    Ok(match inst.theorem {
        Theorem::T12 => BoundSummary::single(bound_hilton(n, inst.uniform()?, p.r())?),
        Theorem::T13 => {
            inst.pair()?;
            BoundSummary::single(bound_hm(n, inst.uniform()?)?)
        }
        Theorem::T14 => {
            let (k, l) = inst.pair()?;
            BoundSummary::single(bound_ft(n, k, l, inst.star_floor)?.value)
        }
        Theorem::T15 => bound_sfq15(n, inst.uniform()?, p.r())?.into(),
        Theorem::T16 => bound_thm16(n, &p.ks, inst.istar()?)?.into(),
        Theorem::T17 => bound_thm17(n, &p.ks)?.into(),
        Theorem::T36 => {
            let (k, l) = inst.pair()?;
            let w = inst.weight()?;
            weighted_bound(n, k, l, w.tau, w.c)?.into()
        }
    })
}

/// Exact optimum of the problem the theorem bounds.
pub fn search(inst: &Instance, engine: Engine) -> Result<Certificate> {
    let p = &inst.profile;
    let plain = match inst.theorem {
        Theorem::T13 | Theorem::T15 | Theorem::T17 => true,
        Theorem::T14 => !inst.star_floor,
        _ => false,
    };
    if engine == Engine::Full {
        if !plain {
            return Err(usage(format!(
                "the full engine covers only plain sum problems, not {}",
                inst.label()
            )));
        }
        return Ok(full_space_max(p)?);
    }
    Ok(match inst.theorem {
        Theorem::T12 => max_sum_l_initial_with_floors(p, &vec![0; p.r()])?,
        Theorem::T14 if inst.star_floor => {
            let (_, l) = inst.pair()?;
            max_sum_l_initial_with_floors(p, &[1, choose(p.n - 1, l - 1)])?
        }
        Theorem::T16 => max_sum_thm16(p, inst.istar()?)?,
        Theorem::T36 => {
            let (k, l) = inst.pair()?;
            let w = inst.weight()?;
            max_weighted_pair(p.n, k, l, w.c, w.tau)?
        }
        _ => max_sum_l_initial(p)?,
    })
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub instance: Instance,
    pub bound: BoundSummary,
    pub certificate: Certificate,
    /// Isomorphism classes of all optima, when the full space was enumerated.
    pub class_count: Option<usize>,
    pub elapsed: Duration,
}

impl Evaluation {
    pub fn agreement(&self) -> bool {
        self.bound.value == self.certificate.optimum
    }

    /// `elapsed_ms` is `"0"` unless `timings` is set, keeping output
    /// byte-identical across runs.
    pub fn record(&self, timings: bool) -> ReportRecord {
        let ms = if timings { self.elapsed.as_millis() } else { 0 };
        ReportRecord {
            profile: self.instance.label(),
            theorem: self.instance.theorem.id().to_string(),
            bound_value: self.bound.value.to_string(),
            branch: self.bound.branch_name(),
            search_optimum: self.certificate.optimum.to_string(),
            agreement: self.agreement(),
            extremal_class_count: self.class_count.map(|c| c.to_string()),
            elapsed_ms: ms.to_string(),
        }
    }
}

/// Bound plus search. With `class_max_n`, plain sum problems small enough
/// for the full engine also get an isomorphism class count.
pub fn evaluate(inst: &Instance, engine: Engine, class_max_n: Option<usize>) -> Result<Evaluation> {
    let start = Instant::now();
    let bound = bound(inst)?;
    let certificate = search(inst, engine)?;
    let mut class_count = certificate
        .classes_complete
        .then_some(certificate.extremal_classes.len());
    let plain = matches!(inst.theorem, Theorem::T13 | Theorem::T15 | Theorem::T17)
        || (inst.theorem == Theorem::T14 && !inst.star_floor);
    if class_count.is_none()
        && plain
        && class_max_n.is_some_and(|m| inst.profile.n <= m)
        && full_space_supported(&inst.profile)
    {
        let full = full_space_max(&inst.profile)?;
        class_count = full.classes_complete.then_some(full.extremal_classes.len());
    }
    Ok(Evaluation {
        instance: inst.clone(),
        bound,
        certificate,
        class_count,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, ks: &[usize], t: Theorem) -> Instance {
        Instance::new(Profile::new(n, ks.to_vec()).unwrap(), t)
    }

    #[test]
    fn worked_example() {
        let b = bound(&inst(10, &[5, 3, 2], Theorem::T17)).unwrap();
        assert_eq!(b.max_expression().unwrap(), "max{205, 171} = 205");
        let mut i = inst(10, &[5, 3, 2], Theorem::T16);
        i.profile = i.profile.with_istar(2).unwrap();
        let b = bound(&i).unwrap();
        assert_eq!(b.max_expression().unwrap(), "max{46, 171} = 171");
        assert!(evaluate(&i, Engine::Prefix, None).unwrap().agreement());
    }

    #[test]
    fn single_expression_theorems_agree() {
        for (n, ks, t) in [
            (6, vec![2, 2, 2], Theorem::T12),
            (7, vec![3, 3], Theorem::T13),
            (8, vec![4, 2], Theorem::T14),
            (6, vec![3, 3, 3], Theorem::T15),
        ] {
            let e = evaluate(&inst(n, &ks, t), Engine::Prefix, Some(6)).unwrap();
            assert!(e.agreement(), "{t} {:?}", e.bound);
        }
        let mut i = inst(8, &[3, 3], Theorem::T14);
        i.star_floor = true;
        assert!(evaluate(&i, Engine::Prefix, None).unwrap().agreement());
    }

    #[test]
    fn missing_parameters_are_usage_errors() {
        assert!(bound(&inst(10, &[5, 3, 2], Theorem::T16)).is_err());
        assert!(bound(&inst(8, &[3, 3], Theorem::T36)).is_err());
        assert!(bound(&inst(8, &[3, 2], Theorem::T13)).is_err());
        assert!(search(&inst(6, &[2, 2, 2], Theorem::T12), Engine::Full).is_err());
    }

    #[test]
    fn class_count_from_full_space() {
        let e = evaluate(&inst(4, &[2, 2, 2], Theorem::T17), Engine::Prefix, Some(5)).unwrap();
        assert_eq!(e.class_count, Some(2));
        let e = evaluate(&inst(4, &[2, 2, 2], Theorem::T17), Engine::Prefix, None).unwrap();
        assert_eq!(e.class_count, None);
    }
}
