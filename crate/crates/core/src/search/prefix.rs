use std::collections::HashMap;

use crate::bounds::{bound_thm16, bound_thm17, weighted_bound};
use crate::combinat::lex_initial;
use crate::count::{binom, choose, BigCount};
use crate::error::{hypothesis, Error, Result};
use crate::profile::Profile;

use super::frontier::{frontier_table, FrontierTable};
use super::{Certificate, Engine, Objective, WITNESS_CAP};

/// Ground-set cap for the prefix engine.
pub const PREFIX_MAX_N: usize = 20;

fn check_cap(n: usize) -> Result<()> {
    if n > PREFIX_MAX_N {
        return Err(Error::CapExceeded {
            what: "prefix-search ground-set size",
            value: n as u64,
            cap: PREFIX_MAX_N as u64,
        });
    }
    Ok(())
}

/// Maximum of `sum m_i` over L-initial tuples with every `m_i >= 1`.
///
/// The certificate carries the descending-profile bound when its hypothesis
/// holds.
pub fn max_sum_l_initial(p: &Profile) -> Result<Certificate> {
    let floors = vec![1; p.r()];
    let mut cert = max_sum_l_initial_with_floors(p, &floors)?;
    let bound = p
        .check_descending_hypothesis()
        .ok()
        .map(|()| bound_thm17(p.n, &p.ks))
        .transpose()?;
    cert.attach_bound(bound);
    Ok(cert)
}

/// As [`max_sum_l_initial`] with `m_{i*} >= C(n-1, k_{i*}-1)`, compared
/// against the one-large-family bound.
pub fn max_sum_thm16(p: &Profile, istar: usize) -> Result<Certificate> {
    let bound = bound_thm16(p.n, &p.ks, istar)?;
    let mut floors = vec![1; p.r()];
    floors[istar] = choose(p.n - 1, p.ks[istar] - 1);
    let mut cert = max_sum_l_initial_with_floors(p, &floors)?;
    cert.profile.istar = Some(istar);
    cert.attach_bound(Some(bound));
    Ok(cert)
}

/// Maximum of `sum m_i` over L-initial tuples with `m_i >= floors[i]`.
/// A zero floor admits the empty family.
pub fn max_sum_l_initial_with_floors(p: &Profile, floors: &[u64]) -> Result<Certificate> {
    check_cap(p.n)?;
    let r = p.r();
    if floors.len() != r {
        return Err(Error::InvalidSet(format!(
            "{} floors for {r} families",
            floors.len()
        )));
    }
    let sizes: Vec<u64> = p.ks.iter().map(|&k| choose(p.n, k)).collect();
    if let Some(i) = (0..r).find(|&i| floors[i] > sizes[i]) {
        return Err(hypothesis(format!(
            "floor {} exceeds C({}, {})",
            floors[i], p.n, p.ks[i]
        )));
    }

    // Larger universes first: their choice constrains the most.
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));

    let mut cache: HashMap<(usize, usize), FrontierTable> = HashMap::new();
    for (x, &i) in order.iter().enumerate() {
        for &j in &order[x + 1..] {
            let key = (p.ks[i], p.ks[j]);
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                e.insert(frontier_table(p.n, key.0, key.1)?);
            }
        }
    }
    let tables: Vec<Vec<Option<&FrontierTable>>> = order
        .iter()
        .enumerate()
        .map(|(x, &i)| {
            order
                .iter()
                .enumerate()
                .map(|(y, &j)| (y > x).then(|| &cache[&(p.ks[i], p.ks[j])]))
                .collect()
        })
        .collect();

    // Point stars at 1 are L-initial and feasible; their sum seeds pruning.
    let star: Vec<u64> = p.ks.iter().map(|&k| choose(p.n - 1, k - 1)).collect();
    let seed = if (0..r).all(|i| floors[i] <= star[i]) {
        star.iter().sum()
    } else {
        0
    };

    let mut dfs = Dfs {
        tables,
        floors: order.iter().map(|&i| floors[i]).collect(),
        best: seed,
        found: Vec::new(),
        current: vec![0; r],
    };
    let limits: Vec<u64> = order.iter().map(|&i| sizes[i]).collect();
    dfs.go(0, 0, &limits);
    if dfs.found.is_empty() {
        return Err(hypothesis(format!("no feasible tuple for {p}")));
    }

    let mut vectors: Vec<Vec<u64>> = dfs
        .found
        .iter()
        .map(|v| {
            let mut out = vec![0; r];
            for (x, &i) in order.iter().enumerate() {
                out[i] = v[x];
            }
            out
        })
        .collect();
    vectors.sort();
    vectors.dedup();
    let witnesses = vectors
        .iter()
        .take(WITNESS_CAP)
        .map(|v| {
            v.iter()
                .zip(&p.ks)
                .map(|(&m, &k)| lex_initial(p.n, k, m))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate {
        profile: p.clone(),
        engine: Engine::Prefix,
        objective: Objective::Sum,
        optimum: BigCount::from(dfs.best),
        optimal_tuple_count: vectors.len() as u64,
        optimal_size_vectors: vectors,
        witnesses,
        extremal_classes: Vec::new(),
        classes_complete: false,
        bound: None,
        bound_agreement: None,
        characterization: None,
    })
}

struct Dfs<'a> {
    /// `tables[x][y]` for positions `x < y` in search order.
    tables: Vec<Vec<Option<&'a FrontierTable>>>,
    floors: Vec<u64>,
    best: u64,
    found: Vec<Vec<u64>>,
    current: Vec<u64>,
}

impl Dfs<'_> {
    /// `limits[y]` bounds coordinate `y` given the coordinates already fixed.
    fn go(&mut self, pos: usize, sum: u64, limits: &[u64]) {
        let r = self.floors.len();
        let lim = limits[pos];
        if lim < self.floors[pos] {
            return;
        }
        if pos + 1 == r {
            // Every optimum takes the last coordinate at its limit.
            self.current[pos] = lim;
            self.record(sum + lim);
            return;
        }
        let mut next = limits.to_vec();
        for v in (self.floors[pos]..=lim).rev() {
            let mut bound = sum + v;
            let mut feasible = true;
            for y in pos + 1..r {
                let t = self.tables[pos][y].expect("later position");
                next[y] = limits[y].min(t.get(v));
                feasible &= next[y] >= self.floors[y];
                bound += next[y];
            }
            if !feasible || bound < self.best {
                continue;
            }
            self.current[pos] = v;
            self.go(pos + 1, sum + v, &next);
        }
    }

    fn record(&mut self, total: u64) {
        if total > self.best {
            self.best = total;
            self.found.clear();
        }
        if total == self.best {
            self.found.push(self.current.clone());
        }
    }
}

/// Maximum of `|A| + c|B|` over L-initial pairs with
/// `C(n-tau,l-tau) <= |B| <= C(n-1,l-1)`; `A` may be empty.
pub fn max_weighted_pair(
    n: usize,
    k: usize,
    l: usize,
    c: BigCount,
    tau: usize,
) -> Result<Certificate> {
    check_cap(n)?;
    // Validates n >= k + l, l >= tau >= 1 and c >= 1.
    let bound = weighted_bound(n, k, l, tau, c)?;
    let lo = binom((n - tau) as i64, (l - tau) as i64)?.to_u64()?;
    let hi = choose(n - 1, l - 1);
    if lo > hi {
        return Err(hypothesis(format!("empty window [{lo}, {hi}] for |B|")));
    }
    let t = frontier_table(n, l, k)?;
    let mut best = BigCount::ZERO;
    let mut vectors = Vec::new();
    for mb in lo..=hi {
        let ma = t.get(mb);
        let value = BigCount::from(ma).checked_add(c.checked_mul(BigCount::from(mb))?)?;
        if value > best {
            best = value;
            vectors.clear();
        }
        if value == best {
            vectors.push(vec![ma, mb]);
        }
    }
    vectors.sort();
    let witnesses = vectors
        .iter()
        .take(WITNESS_CAP)
        .map(|v| Ok(vec![lex_initial(n, k, v[0])?, lex_initial(n, l, v[1])?]))
        .collect::<Result<Vec<_>>>()?;
    let mut cert = Certificate {
        profile: Profile::new(n, vec![k, l])?,
        engine: Engine::Prefix,
        objective: Objective::Weighted { c, tau },
        optimum: best,
        optimal_tuple_count: vectors.len() as u64,
        optimal_size_vectors: vectors,
        witnesses,
        extremal_classes: Vec::new(),
        classes_complete: false,
        bound: None,
        bound_agreement: None,
        characterization: None,
    };
    cert.attach_bound(Some(bound));
    Ok(cert)
}
