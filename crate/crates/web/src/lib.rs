//! WebAssembly bindings for the browser demo. Every entry point takes plain
//! numbers or a comma-separated uniformity list and returns a JSON document;
//! failures come back as `{"error": "..."}` rather than as exceptions.

use crossint::auxgraph::{aux_stats, build_aux_graph};
use crossint::bounds::{bound_thm17, g_eval};
use crossint::search::{frontier_table, max_sum_l_initial};
use crossint::{BigCount, Profile};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest ground set the page accepts; keeps tables small enough to draw.
pub const DEMO_MAX_N: usize = 16;
/// Graphs with at most this many vertices also ship their edge list.
pub const DRAW_MAX_VERTICES: usize = 80;

type Res<T> = std::result::Result<T, String>;

fn respond(r: Res<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn parse_ks(ks: &str) -> Res<Vec<usize>> {
    ks.split(',')
        .map(|k| {
            k.trim()
                .parse::<usize>()
                .map_err(|_| format!("{ks:?} is not a comma-separated list of uniformities"))
        })
        .collect()
}

fn check_n(n: usize) -> Res<()> {
    if n > DEMO_MAX_N {
        return Err(format!("n = {n} exceeds the demo cap {DEMO_MAX_N}"));
    }
    Ok(())
}

fn err(e: crossint::Error) -> String {
    e.to_string()
}

/// `g(s)` for `1 <= s <= min(k_2..k_r)` next to the descending-profile bound
/// and the prefix-search optimum.
#[wasm_bindgen]
pub fn g_curve(n: usize, ks: &str) -> String {
    respond((|| {
        check_n(n)?;
        let ks = parse_ks(ks)?;
        let p = Profile::new(n, ks.clone()).map_err(err)?;
        let kmin = ks[1..].iter().copied().min().ok_or("need at least two families")?;
        let g = (1..=kmin)
            .map(|s| g_eval(n, &ks, s))
            .collect::<crossint::Result<Vec<BigCount>>>()
            .map_err(err)?;
        let bound = bound_thm17(n, &ks).ok();
        let cert = max_sum_l_initial(&p).map_err(err)?;
        Ok(json!({
            "profile": p.to_string(),
            "g": g,
            "bound": bound,
            "search_optimum": cert.optimum,
            "optimal_size_vectors": cert.optimal_size_vectors,
        }))
    })())
}

/// The lex-prefix frontier between `k_i`- and `k_j`-sets, and the
/// lengths `(m, f[m])` maximizing `m + f[m]` with both parts non-empty.
#[wasm_bindgen]
pub fn frontier(n: usize, k_i: usize, k_j: usize) -> String {
    respond((|| {
        check_n(n)?;
        let t = frontier_table(n, k_i, k_j).map_err(err)?;
        let best = (1..t.f.len())
            .filter(|&m| t.f[m] >= 1)
            .max_by_key(|&m| (m as u64 + t.f[m], std::cmp::Reverse(m)))
            .map(|m| json!({ "m": m, "f": t.f[m], "sum": m as u64 + t.f[m] }));
        Ok(json!({ "n": n, "k_i": k_i, "k_j": k_j, "f": t.f, "best": best }))
    })())
}

/// Statistics of the auxiliary bipartite graph; `istar` is 1-based. Small
/// graphs include `edges` as pairs of `[part, position]`, also 1-based.
#[wasm_bindgen]
pub fn aux_graph(n: usize, ks: &str, istar: usize, s: usize, seed: u64) -> String {
    respond((|| {
        check_n(n)?;
        let ks = parse_ks(ks)?;
        if istar == 0 || istar > ks.len() {
            return Err(format!("istar must be in [1, {}]", ks.len()));
        }
        let g = build_aux_graph(n, &ks, istar - 1, s).map_err(err)?;
        let stats = aux_stats(&g, seed).map_err(err)?;
        let mut out = json!({
            "part_sizes": g.part_sizes(),
            "istar": istar,
            "edges": Value::Null,
            "stats": stats,
        });
        if g.vertex_count() <= DRAW_MAX_VERTICES {
            let mut edges = Vec::new();
            for i in (0..g.r()).filter(|&i| i != g.istar) {
                for a in 0..g.parts[g.istar].len() {
                    for &b in g.neighbours(i, a) {
                        edges.push(json!([[istar, a + 1], [i + 1, b + 1]]));
                    }
                }
            }
            out["edges"] = Value::Array(edges);
        }
        Ok(out)
    })())
}
