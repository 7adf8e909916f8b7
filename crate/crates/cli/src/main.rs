use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crossint::auxgraph::{aux_stats, build_aux_graph, ClaimSweep};
use crossint::constructions::{extremal_candidates, shadow_report};
use crossint::search::{enumerate_extremal, Engine};
use crossint::{BigCount, Family, Profile, Theorem};
use crossint_cli::check::{evaluate, Evaluation, Instance, Weight};
use crossint_cli::report::{to_csv, to_json, to_table, Format, ReportRecord};
use crossint_cli::sweep::{EngineChoice, SweepConfig};
use crossint_cli::{check_n, max_n_from_env, usage, CliError, Result};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
/// Text output lists a tuple's families only up to this many members.
const TEXT_MEMBER_LIMIT: u64 = 40;

/// Bounds and exact searches for non-empty cross-intersecting families.
#[derive(Parser)]
#[command(name = "cil", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the rendered output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Fill `elapsed_ms` (otherwise "0", so output is reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    n: usize,
    /// Uniformities, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    /// The designated large family for T1.6, 1-based.
    #[arg(long)]
    istar: Option<usize>,
}

#[derive(Args)]
struct TheoremArgs {
    /// t12..t17 or t36; defaults to t16 with --istar, t36 with --c/--tau,
    /// t17 otherwise.
    #[arg(long)]
    theorem: Option<String>,
    /// Weight of the second family (T3.6).
    #[arg(long)]
    c: Option<u64>,
    /// Core size bounding |B| from below (T3.6).
    #[arg(long)]
    tau: Option<usize>,
    /// T1.4 with a star floor: the second family has at least C(n-1, l-1) members.
    #[arg(long)]
    star_floor: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a closed-form bound.
    Bound {
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        theorem: TheoremArgs,
    },
    /// Exact search, compared with the bound.
    Search {
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        theorem: TheoremArgs,
        #[arg(long, value_enum, default_value = "prefix")]
        engine: EngineChoice,
    },
    /// Run a sweep; without --config, the built-in acceptance sweep.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Disjointness shadow of a family, e.g. "n=5 {1.2, 1.3}".
    Shadow {
        family: String,
        #[arg(long)]
        l: usize,
    },
    /// Auxiliary graph statistics.
    Auxgraph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        /// 1-based.
        #[arg(long)]
        istar: usize,
        #[arg(long)]
        s: usize,
        /// Seed for sampled expansion checks on large parts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extremal configurations and the optima that realize them.
    Extremal {
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        theorem: TheoremArgs,
    },
}

struct Output {
    body: String,
    /// Printed after the body (stdout) or on stderr when the body is
    /// machine-readable.
    summary: Option<String>,
    code: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            summary: None,
            code: 0,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((o, format, out)) => match emit(o, format, out) {
            Ok(code) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn emit(o: Output, format: Format, out: Option<PathBuf>) -> Result<u8> {
    match out {
        Some(path) => {
            std::fs::write(path, &o.body)?;
            if let Some(s) = o.summary {
                println!("{s}");
            }
        }
        None => {
            print!("{}", o.body);
            if let Some(s) = o.summary {
                if format == Format::Text {
                    println!("{s}");
                } else {
                    eprintln!("{s}");
                }
            }
        }
    }
    Ok(o.code)
}

fn run(cli: Cli) -> Result<(Output, Format, Option<PathBuf>)> {
    let max_n = max_n_from_env()?;
    let format = cli.format.unwrap_or_default();
    let timings = cli.timings;
    let out = cli.out;
    let o = match cli.cmd {
        Cmd::Bound { profile, theorem } => cmd_bound(&instance(&profile, &theorem)?, format)?,
        Cmd::Search {
            profile,
            theorem,
            engine,
        } => {
            check_n(profile.n, max_n)?;
            cmd_search(&instance(&profile, &theorem)?, engine.into(), format, timings)?
        }
        Cmd::Verify { config } => {
            let cfg = match config {
                Some(path) => SweepConfig::from_toml(&std::fs::read_to_string(path)?)?,
                None => SweepConfig::default(),
            };
            let format = cli.format.or(cfg.output.format).unwrap_or_default();
            let out = out.or_else(|| cfg.output.path.clone());
            return Ok((cmd_verify(&cfg, max_n, format, timings)?, format, out));
        }
        Cmd::Shadow { family, l } => cmd_shadow(&family, l, format)?,
        Cmd::Auxgraph {
            n,
            k,
            istar,
            s,
            seed,
        } => {
            check_n(n, max_n)?;
            cmd_auxgraph(n, &k, one_based(istar)?, s, seed, format)?
        }
        Cmd::Extremal { profile, theorem } => {
            check_n(profile.n, max_n)?;
            cmd_extremal(&instance(&profile, &theorem)?, format, timings)?
        }
    };
    Ok((o, format, out))
}

fn one_based(i: usize) -> Result<usize> {
    i.checked_sub(1)
        .ok_or_else(|| usage("--istar is 1-based"))
}

fn instance(p: &ProfileArgs, t: &TheoremArgs) -> Result<Instance> {
    let theorem = match &t.theorem {
        Some(s) => s.parse::<Theorem>()?,
        None if p.istar.is_some() => Theorem::T16,
        None if t.c.is_some() || t.tau.is_some() => Theorem::T36,
        None => Theorem::T17,
    };
    let mut profile = Profile::new(p.n, p.k.clone())?;
    if theorem == Theorem::T16 {
        let istar = p.istar.ok_or_else(|| usage("T1.6 needs --istar"))?;
        profile = profile.with_istar(one_based(istar)?)?;
    }
    let mut inst = Instance::new(profile, theorem);
    inst.star_floor = t.star_floor;
    if theorem == Theorem::T36 {
        let (Some(c), Some(tau)) = (t.c, t.tau) else {
            return Err(usage("T3.6 needs --c and --tau"));
        };
        inst.weight = Some(Weight {
            c: BigCount::from(c),
            tau,
        });
    }
    Ok(inst)
}

/// Two-column `key  value` lines.
fn kv(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<w$}  {v}\n"))
        .collect()
}

fn single_row_csv(header: &[&str], row: &[String]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    w.write_record(row)?;
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn cmd_bound(inst: &Instance, format: Format) -> Result<Output> {
    let b = crossint_cli::check::bound(inst)?;
    let opt = |v: Option<BigCount>| v.map_or_else(String::new, |v| v.to_string());
    let body = match format {
        Format::Text => {
            let mut rows = vec![
                ("theorem", inst.theorem.to_string()),
                ("profile", inst.label()),
                ("value", b.value.to_string()),
                ("branch", b.branch_name()),
            ];
            if let Some(e) = b.max_expression() {
                rows.push(("bound", e));
            }
            kv(&rows)
        }
        Format::Json => to_json(
            &[],
            vec![(
                "bound",
                json!({
                    "theorem": inst.theorem.id(),
                    "profile": inst.label(),
                    "value": b.value,
                    "branch": b.branch_name(),
                    "cover_star": b.cover_star,
                    "all_stars": b.all_stars,
                }),
            )],
        )?,
        Format::Csv => single_row_csv(
            &["profile", "theorem", "bound_value", "branch", "cover_star", "all_stars"],
            &[
                inst.label(),
                inst.theorem.id().to_string(),
                b.value.to_string(),
                b.branch_name(),
                opt(b.cover_star),
                opt(b.all_stars),
            ],
        )?,
    };
    Ok(Output::ok(body))
}

fn tuple_text(t: &[Family]) -> String {
    t.iter().map(Family::to_string).collect::<Vec<_>>().join("; ")
}

fn vector_text(v: &[u64]) -> String {
    format!("({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

/// Certificate JSON without the (possibly long) canonical keys.
fn certificate_json(e: &Evaluation) -> Result<Value> {
    let mut v = serde_json::to_value(&e.certificate)?;
    if let Some(o) = v.as_object_mut() {
        o.remove("extremal_classes");
    }
    Ok(v)
}

fn records_output(
    records: Vec<ReportRecord>,
    text: String,
    extra: Vec<(&str, Value)>,
    format: Format,
) -> Result<String> {
    Ok(match format {
        Format::Text => text,
        Format::Json => to_json(&records, extra)?,
        Format::Csv => to_csv(&records)?,
    })
}

fn cmd_search(inst: &Instance, engine: Engine, format: Format, timings: bool) -> Result<Output> {
    let e = evaluate(inst, engine, None)?;
    let c = &e.certificate;
    let record = e.record(timings);
    let mut rows = vec![
        ("profile", inst.label()),
        ("theorem", inst.theorem.to_string()),
        ("engine", serde_json::to_value(c.engine)?.as_str().unwrap_or("").to_string()),
        ("optimum", c.optimum.to_string()),
        ("bound", e.bound.max_expression().unwrap_or_else(|| e.bound.value.to_string())),
        ("agreement", e.agreement().to_string()),
        (
            "optimal size vectors",
            format!(
                "{}: {}",
                c.optimal_size_vectors.len(),
                c.optimal_size_vectors
                    .iter()
                    .map(|v| vector_text(v))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        ),
        ("optimal tuples", c.optimal_tuple_count.to_string()),
    ];
    if let Some(n) = e.class_count {
        rows.push(("extremal classes", n.to_string()));
    }
    let mut text = kv(&rows);
    let members: u64 = c.witnesses.iter().flatten().map(|f| f.len() as u64).sum();
    if members <= TEXT_MEMBER_LIMIT * 8 {
        text.push_str(&format!("witnesses ({} shown)\n", c.witnesses.len()));
        for t in &c.witnesses {
            text.push_str(&format!("  {}\n", tuple_text(t)));
        }
    } else {
        text.push_str(&format!("witnesses ({}; listed in JSON output)\n", c.witnesses.len()));
    }
    let body = records_output(
        vec![record],
        text,
        vec![("certificate", certificate_json(&e)?)],
        format,
    )?;
    Ok(Output {
        body,
        summary: None,
        code: if e.agreement() { 0 } else { EXIT_DISAGREE },
    })
}

fn cmd_verify(cfg: &SweepConfig, max_n: usize, format: Format, timings: bool) -> Result<Output> {
    let evals = cfg.run(max_n)?;
    let records: Vec<ReportRecord> = evals.iter().map(|e| e.record(timings)).collect();
    let agreed = records.iter().filter(|r| r.agreement).count();
    let failed = records.len() - agreed;
    let body = records_output(records.clone(), to_table(&records), Vec::new(), format)?;
    Ok(Output {
        body,
        summary: Some(format!(
            "checked={} agreed={agreed} failed={failed}",
            records.len()
        )),
        code: if failed == 0 { 0 } else { EXIT_DISAGREE },
    })
}

fn cmd_shadow(family: &str, l: usize, format: Format) -> Result<Output> {
    let a: Family = family.parse()?;
    if a.is_empty() {
        return Err(CliError::Core(crossint::Error::EmptyFamily));
    }
    let r = shadow_report(&a, l)?;
    let comparison = match (r.equality, r.threshold) {
        (Some(true), _) => "equality",
        (Some(false), Some(t)) if BigCount::from(r.size) > t => "strict",
        (Some(false), _) => "below threshold",
        (None, _) => "no threshold",
    };
    let body = match format {
        Format::Text => kv(&[
            ("family", a.to_string()),
            ("l", l.to_string()),
            ("shadow", r.shadow.to_string()),
            ("size", r.size.to_string()),
            (
                "threshold",
                match (r.s, r.threshold) {
                    (Some(s), Some(t)) => format!("C(n-s, l) = {t} with s = {s}"),
                    _ => "none (|A| is not C(n-s, k-s))".to_string(),
                },
            ),
            ("n > k + l", r.bound_applies.to_string()),
            ("comparison", comparison.to_string()),
            ("star", r.star.to_string()),
        ]),
        Format::Json => to_json(
            &[],
            vec![(
                "shadow",
                json!({
                    "family": a,
                    "l": l,
                    "report": r,
                    "comparison": comparison,
                }),
            )],
        )?,
        Format::Csv => single_row_csv(
            &["family", "l", "size", "threshold", "comparison", "star"],
            &[
                a.to_string(),
                l.to_string(),
                r.size.to_string(),
                r.threshold.map_or_else(String::new, |t| t.to_string()),
                comparison.to_string(),
                r.star.to_string(),
            ],
        )?,
    };
    Ok(Output::ok(body))
}

/// Auxiliary graph statistics with 1-based part indices.
#[derive(Serialize)]
struct AuxReport {
    n: usize,
    ks: Vec<usize>,
    istar: usize,
    s: usize,
    part_sizes: Vec<usize>,
    edges: usize,
    h1: Vec<usize>,
    h2: Vec<usize>,
    below: Vec<usize>,
    perfect_matchings: Vec<usize>,
    matching_number: usize,
    independence_number: usize,
    centre_side_optimal: bool,
    other_side_optimal: bool,
    claim: Vec<ClaimSweep>,
}

fn cmd_auxgraph(n: usize, ks: &[usize], istar: usize, s: usize, seed: u64, format: Format) -> Result<Output> {
    let g = build_aux_graph(n, ks, istar, s)?;
    let st = aux_stats(&g, seed)?;
    let plus = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
    let rep = AuxReport {
        n,
        ks: ks.to_vec(),
        istar: istar + 1,
        s,
        part_sizes: st.part_sizes.clone(),
        edges: st.edges,
        h1: plus(&st.classification.h1),
        h2: plus(&st.classification.h2),
        below: plus(&st.classification.below),
        perfect_matchings: plus(&st.perfect_matchings),
        matching_number: st.matching_number,
        independence_number: st.independence_number,
        centre_side_optimal: st.centre_side_optimal,
        other_side_optimal: st.other_side_optimal,
        claim: st
            .claim
            .iter()
            .map(|c| ClaimSweep {
                part: c.part + 1,
                ..c.clone()
            })
            .collect(),
    };
    let list = |v: &[usize]| {
        if v.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        }
    };
    let sides = match (rep.centre_side_optimal, rep.other_side_optimal) {
        (true, true) => "both full sides",
        (true, false) => "the centre part",
        (false, true) => "the other parts",
        (false, false) => "neither full side",
    };
    let body = match format {
        Format::Text => {
            let mut rows = vec![
                ("profile", format!("n={n} k={} istar={} s={s}", list(ks).trim_matches(['{', '}']), istar + 1)),
                (
                    "part sizes",
                    rep.part_sizes.iter().map(usize::to_string).collect::<Vec<_>>().join("/"),
                ),
                ("edges", rep.edges.to_string()),
                ("H1", list(&rep.h1)),
                ("H2", list(&rep.h2)),
                ("perfect matchings", list(&rep.perfect_matchings)),
                ("matching number", rep.matching_number.to_string()),
                ("independence number", rep.independence_number.to_string()),
                ("attained by", sides.to_string()),
            ];
            if !rep.below.is_empty() {
                rows.push(("n < k_i + k_i*", list(&rep.below)));
            }
            let mut text = kv(&rows);
            for c in &rep.claim {
                text.push_str(&format!(
                    "expansion into part {}: {} ({} {} subsets, {} violations, {} non-trivial equalities)\n",
                    c.part,
                    if c.holds() { "holds" } else { "FAILS" },
                    c.subsets_checked,
                    if c.exhaustive { "exhaustive" } else { "sampled" },
                    c.violations,
                    c.nontrivial_equalities
                ));
            }
            text
        }
        Format::Json => to_json(&[], vec![("auxgraph", serde_json::to_value(&rep)?)])?,
        Format::Csv => single_row_csv(
            &["n", "ks", "istar", "s", "part_sizes", "edges", "matching_number", "independence_number"],
            &[
                n.to_string(),
                list(ks).trim_matches(['{', '}']).to_string(),
                (istar + 1).to_string(),
                s.to_string(),
                rep.part_sizes.iter().map(usize::to_string).collect::<Vec<_>>().join("/"),
                rep.edges.to_string(),
                rep.matching_number.to_string(),
                rep.independence_number.to_string(),
            ],
        )?,
    };
    Ok(Output::ok(body))
}

fn cmd_extremal(inst: &Instance, format: Format, timings: bool) -> Result<Output> {
    let candidates = extremal_candidates(&inst.profile, inst.theorem)?;
    let start = std::time::Instant::now();
    let bound = crossint_cli::check::bound(inst)?;
    let certificate = match inst.theorem {
        Theorem::T17 => enumerate_extremal(&inst.profile)?,
        _ => crossint_cli::check::search(inst, Engine::Prefix)?,
    };
    let e = Evaluation {
        instance: inst.clone(),
        bound,
        class_count: certificate
            .classes_complete
            .then_some(certificate.extremal_classes.len()),
        certificate,
        elapsed: start.elapsed(),
    };
    let c = &e.certificate;
    let optimum = c.optimum;
    let attaining = |sum: u64| BigCount::from(sum) == optimum;

    let mut rows = vec![
        ("profile", inst.label()),
        ("theorem", inst.theorem.to_string()),
        ("optimum", optimum.to_string()),
        ("bound", e.bound.value.to_string()),
        ("agreement", e.agreement().to_string()),
        (
            "characterization",
            c.characterization
                .map_or_else(|| "not checked".to_string(), |b| b.to_string()),
        ),
    ];
    if let Some(n) = e.class_count {
        rows.push(("extremal classes", n.to_string()));
    }
    let mut text = kv(&rows);
    text.push_str(&format!(
        "candidates (families listed up to {TEXT_MEMBER_LIMIT} members; all in JSON)\n"
    ));
    for t in &candidates {
        text.push_str(&format!(
            "  {}  sizes {}  sum {}  {}\n",
            t.label,
            vector_text(&t.sizes()),
            t.sum(),
            if attaining(t.sum()) { "extremal" } else { "below optimum" },
        ));
        if t.sum() <= TEXT_MEMBER_LIMIT {
            text.push_str(&format!("    {}\n", tuple_text(&t.fams)));
        }
    }
    let cand_json: Vec<Value> = candidates
        .iter()
        .map(|t| {
            json!({
                "label": t.label,
                "families": t.fams,
                "sum": t.sum(),
                "extremal": attaining(t.sum()),
            })
        })
        .collect();
    let body = records_output(
        vec![e.record(timings)],
        text,
        vec![
            ("candidates", Value::Array(cand_json)),
            ("certificate", certificate_json(&e)?),
        ],
        format,
    )?;
    let ok = e.agreement() && c.characterization != Some(false);
    Ok(Output {
        body,
        summary: None,
        code: if ok { 0 } else { EXIT_DISAGREE },
    })
}
