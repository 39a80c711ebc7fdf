//! Command-line driver: argument parsing, JSON/CSV serialization, result
//! caching, and batch orchestration over the computation library.
//!
//! Every subcommand prints one JSON envelope on standard output with the
//! fields `version`, `job`, `ring`, `results`, `oracles`, `timing_ms`; two
//! runs with the same job agree byte for byte outside `timing_ms`.  Exit
//! codes: 0 success, 1 failed battery invariant, 2 bad input, 3 internal
//! assertion (always a bug).

pub mod cache;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use gammacoh_core::abelian::{antiderivative, ga_cohomology, unipotent_twisted_cohomology};
use gammacoh_core::battery::{expected_dimension, run_cell, standard_battery, standard_rings};
use gammacoh_core::cohomology::{
    borel_h0, borel_h1, cup_matrix, duality_report, h0, h1, h1c, h2c, les_ranks, tower_scan,
    CohResult,
};
use gammacoh_core::expr::ModuleExpr;
use gammacoh_core::group::{GroupKind, GroupTable};
use gammacoh_core::induction::{
    algebraic_induce, intertwiner, smooth_induce_dimension, AlgebraicRep,
};
use gammacoh_core::linalg::QuotientShape;
use gammacoh_core::matrix::ExactMatrix;
use gammacoh_core::module::GammaModule;
use gammacoh_core::ring::RingSpec;

use cache::{cache_key, Cache};

/// Environment knob that makes dispatch fail with an internal assertion;
/// exists solely so the exit-3 contract stays testable end to end.
pub const SELFTEST_PANIC_ENV: &str = "GAMMACOH_SELFTEST_PANIC";

#[derive(Parser, Debug)]
#[command(
    name = "gammacoh",
    version,
    about = "Exact cohomology of SL2(Z) on finite-level coefficient modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute cohomology groups of one module over one ring.
    Compute {
        /// Module expression, e.g. "Sym(10,0)" or "tensor(Fun(SL2,3),Sym(2,0))".
        #[arg(long)]
        module: String,
        /// Coefficient ring: "Q" or "Z/p^e" with p a prime at least 5.
        #[arg(long, default_value = "Q")]
        ring: String,
        /// One of: all, h0, h1, h1c, h2c, b0, b1.
        #[arg(long, default_value = "all")]
        degree: String,
        /// Include explicit representative vectors in the output.
        #[arg(long)]
        include_representatives: bool,
        /// Directory for the result cache (GAMMACOH_CACHE overrides).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Compare ordinary and compactly-supported degree one and report the
    /// cup pairing matrix.
    Duality {
        #[arg(long)]
        module: String,
        #[arg(long, default_value = "Q")]
        ring: String,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Report the six-term sequence shapes and the exactness verdict.
    Les {
        #[arg(long)]
        module: String,
        #[arg(long, default_value = "Q")]
        ring: String,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Scan degree one across the tower of levels base * prime^m.
    Tower {
        /// Level prime to the chosen prime.
        #[arg(long)]
        base: u64,
        /// The tower prime (at least 5).
        #[arg(long)]
        prime: u64,
        /// Coefficients are Z/prime^exp.
        #[arg(long, default_value_t = 1)]
        exp: u32,
        /// Number of level-raising steps to take.
        #[arg(long, default_value_t = 1)]
        steps: u32,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Tabulate induced representations: the algebraic family with its
    /// intertwiners, and orbit counts for characters of the Borel subgroup.
    Induction {
        /// Largest weight gap s - r to tabulate (at most 6).
        #[arg(long, default_value_t = 6)]
        gap_max: i64,
        /// Largest level for the finite-group orbit counts (at most 8).
        #[arg(long, default_value_t = 5)]
        level_max: u64,
    },
    /// Difference-operator cohomology on functions on Z/N, with optional
    /// unipotent twist by a symmetric-power coefficient module.
    Abelian {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value = "Q")]
        ring: String,
        /// Also compute the twisted variant with this symmetric-power degree.
        #[arg(long)]
        sym: Option<u32>,
    },
    /// Run the full verification battery; nonzero exit if any check fails.
    Battery {
        /// Write battery.csv and battery.json into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Worker threads (default: one per available core).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Parse a module expression, echo its canonical form and rank.
    Validate {
        #[arg(long)]
        module: String,
        #[arg(long, default_value = "Q")]
        ring: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

// ---------------------------------------------------------------------------
// JSON building blocks
// ---------------------------------------------------------------------------

fn shape_json_in(ring: &RingSpec, q: &QuotientShape) -> Value {
    match q {
        QuotientShape::Dim(d) => json!({ "ring": "Q", "dim": d }),
        QuotientShape::Divisors(v) => json!({ "ring": ring.label(), "divisors": v }),
    }
}

fn result_json(ring: &RingSpec, r: &CohResult, include_reps: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("shape".into(), shape_json_in(ring, &r.shape));
    if include_reps {
        let reps: Vec<Value> = r
            .representatives
            .iter()
            .map(|row| Value::Array(row.iter().map(|c| json!(c.to_string())).collect()))
            .collect();
        obj.insert("representatives".into(), Value::Array(reps));
    }
    Value::Object(obj)
}

fn matrix_json(m: &ExactMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                m.dense_row(i)
                    .iter()
                    .map(|c| json!(c.to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn envelope(job: Value, ring: Value, results: Value, oracles: Value, started: Instant) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "job": job,
        "ring": ring,
        "results": results,
        "oracles": oracles,
        "timing_ms": started.elapsed().as_millis() as u64,
    })
}

/// Stable pretty rendering of an envelope (object keys are kept sorted by
/// the JSON model itself, so equal documents render byte-identically).
pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("envelopes serialize")
}

// ---------------------------------------------------------------------------
// compute / duality / les / tower
// ---------------------------------------------------------------------------

const DEGREES: [&str; 6] = ["h0", "h1", "h1c", "h2c", "b0", "b1"];

fn compute_degree(m: &GammaModule, name: &str) -> CohResult {
    match name {
        "h0" => h0(m),
        "h1" => h1(m),
        "h1c" => h1c(m),
        "h2c" => h2c(m),
        "b0" => borel_h0(m),
        "b1" => borel_h1(m),
        _ => unreachable!("degree names are validated before dispatch"),
    }
}

pub fn compute_envelope(
    module_text: &str,
    ring_text: &str,
    degree: &str,
    include_reps: bool,
    cache: &Cache,
) -> Result<Value, CliError> {
    let started = Instant::now();
    let ring = RingSpec::parse(ring_text).map_err(input)?;
    let expr = ModuleExpr::parse(module_text).map_err(input)?;
    let selected: Vec<&str> = if degree == "all" {
        DEGREES.to_vec()
    } else if DEGREES.contains(&degree) {
        vec![degree]
    } else {
        return Err(CliError::Input(format!(
            "unknown degree `{degree}`: expected all, h0, h1, h1c, h2c, b0, b1"
        )));
    };

    let key = cache_key(
        "compute",
        &[
            &expr.canonical(),
            &ring.label(),
            degree,
            &include_reps.to_string(),
        ],
    );
    let payload = match cache.get(&key) {
        Some(hit) => hit,
        None => {
            let module = expr.eval(ring).map_err(input)?;
            let mut results = Map::new();
            let mut computed_dims: Vec<(&str, usize)> = Vec::new();
            for name in &selected {
                let r = compute_degree(&module, name);
                computed_dims.push((name, r.shape.gens()));
                results.insert((*name).into(), result_json(&ring, &r, include_reps));
            }
            let mut oracles = Map::new();
            if ring == RingSpec::Q {
                if let Some((deg, dim)) = expected_dimension(&expr) {
                    let name = if deg == "0" { "h0" } else { "h1" };
                    if let Some(&(_, got)) = computed_dims.iter().find(|(n, _)| *n == name) {
                        oracles.insert(
                            name.into(),
                            json!({ "expected": dim, "computed": got, "match": dim == got }),
                        );
                    }
                }
            }
            let fresh = json!({ "results": Value::Object(results), "oracles": Value::Object(oracles) });
            cache.put(&key, &fresh);
            fresh
        }
    };

    let job = json!({
        "command": "compute",
        "module": expr.canonical(),
        "ring": ring.label(),
        "degree": degree,
        "include_representatives": include_reps,
    });
    Ok(envelope(
        job,
        json!(ring.label()),
        payload["results"].clone(),
        payload["oracles"].clone(),
        started,
    ))
}

pub fn duality_envelope(
    module_text: &str,
    ring_text: &str,
    cache: &Cache,
) -> Result<Value, CliError> {
    let started = Instant::now();
    let ring = RingSpec::parse(ring_text).map_err(input)?;
    let expr = ModuleExpr::parse(module_text).map_err(input)?;
    let key = cache_key("duality", &[&expr.canonical(), &ring.label()]);
    let payload = match cache.get(&key) {
        Some(hit) => hit,
        None => {
            let module = expr.eval(ring).map_err(input)?;
            let rep = duality_report(&module);
            let fresh = json!({
                "results": {
                    "h1": shape_json_in(&ring, &rep.shape_h1),
                    "h1c": shape_json_in(&ring, &rep.shape_h1c),
                    "shapes_agree": rep.shapes_agree,
                    "pairing_perfect": rep.pairing_perfect,
                    "degree_zero_ok": rep.degree_zero_ok,
                    "cup_matrix": matrix_json(&cup_matrix(&module)),
                },
                "oracles": {},
            });
            cache.put(&key, &fresh);
            fresh
        }
    };
    let job = json!({
        "command": "duality",
        "module": expr.canonical(),
        "ring": ring.label(),
    });
    Ok(envelope(
        job,
        json!(ring.label()),
        payload["results"].clone(),
        payload["oracles"].clone(),
        started,
    ))
}

pub fn les_envelope(module_text: &str, ring_text: &str, cache: &Cache) -> Result<Value, CliError> {
    let started = Instant::now();
    let ring = RingSpec::parse(ring_text).map_err(input)?;
    let expr = ModuleExpr::parse(module_text).map_err(input)?;
    let key = cache_key("les", &[&expr.canonical(), &ring.label()]);
    let payload = match cache.get(&key) {
        Some(hit) => hit,
        None => {
            let module = expr.eval(ring).map_err(input)?;
            let rep = les_ranks(&module);
            const NAMES: [&str; 6] = ["h0", "b0", "h1c", "h1", "b1", "h2c"];
            let sequence: Vec<Value> = NAMES
                .iter()
                .zip(rep.shapes.iter())
                .map(|(name, shape)| json!({ "group": name, "shape": shape_json_in(&ring, shape) }))
                .collect();
            let fresh = json!({
                "results": {
                    "sequence": sequence,
                    "junctions": rep.junctions,
                    "alternating_ok": rep.alternating_ok,
                    "exact": rep.exact,
                },
                "oracles": {},
            });
            cache.put(&key, &fresh);
            fresh
        }
    };
    let job = json!({
        "command": "les",
        "module": expr.canonical(),
        "ring": ring.label(),
    });
    Ok(envelope(
        job,
        json!(ring.label()),
        payload["results"].clone(),
        payload["oracles"].clone(),
        started,
    ))
}

pub fn tower_envelope(
    base: u64,
    prime: u64,
    exp: u32,
    steps: u32,
    cache: &Cache,
) -> Result<Value, CliError> {
    let started = Instant::now();
    let ring = RingSpec::parse(&format!("Z/{prime}^{exp}")).map_err(input)?;
    if base == 0 || base.is_multiple_of(prime) {
        return Err(CliError::Input(format!(
            "base level {base} must be positive and prime to {prime}"
        )));
    }
    let key = cache_key(
        "tower",
        &[
            &base.to_string(),
            &prime.to_string(),
            &exp.to_string(),
            &steps.to_string(),
        ],
    );
    let payload = match cache.get(&key) {
        Some(hit) => hit,
        None => {
            let levels = tower_scan(ring, base, steps).map_err(input)?;
            let rows: Vec<Value> = levels
                .iter()
                .map(|l| {
                    let mut obj = Map::new();
                    obj.insert("level".into(), json!(l.level));
                    obj.insert("shape".into(), shape_json_in(&ring, &l.shape));
                    if let Some(img) = &l.transition_image {
                        obj.insert("transition_image".into(), shape_json_in(&ring, img));
                    }
                    if let Some(inj) = l.transition_injective {
                        obj.insert("transition_injective".into(), json!(inj));
                    }
                    Value::Object(obj)
                })
                .collect();
            let fresh = json!({ "results": { "levels": rows }, "oracles": {} });
            cache.put(&key, &fresh);
            fresh
        }
    };
    let job = json!({
        "command": "tower",
        "base": base,
        "prime": prime,
        "exp": exp,
        "steps": steps,
    });
    Ok(envelope(
        job,
        json!(ring.label()),
        payload["results"].clone(),
        payload["oracles"].clone(),
        started,
    ))
}

// ---------------------------------------------------------------------------
// induction / abelian / validate
// ---------------------------------------------------------------------------

pub fn induction_envelope(gap_max: i64, level_max: u64) -> Result<Value, CliError> {
    let started = Instant::now();
    if !(0..=6).contains(&gap_max) {
        return Err(CliError::Input(format!(
            "gap_max must lie in 0..=6 (got {gap_max})"
        )));
    }
    if !(1..=8).contains(&level_max) {
        return Err(CliError::Input(format!(
            "level_max must lie in 1..=8 (got {level_max})"
        )));
    }

    let mut algebraic = Vec::new();
    for gap in 0..=gap_max {
        for r in [0i64, 1] {
            let s = r + gap;
            let rep = algebraic_induce(r, s).map_err(input)?;
            let target = AlgebraicRep::from_module(
                &GammaModule::sym_power(RingSpec::Q, gap as u32, r).map_err(input)?,
            );
            let invertible = intertwiner(&rep, &target).map_err(input)?.is_some();
            algebraic.push(json!({
                "r": r,
                "s": s,
                "dimension": rep.dimension,
                "dimension_ok": rep.dimension == (gap + 1) as usize,
                "intertwiner_invertible": invertible,
                "basis": rep.basis_labels,
            }));
        }
    }
    let mut reversed = Vec::new();
    for (r, s) in [(1i64, 0i64), (2, 0), (3, 1), (5, 2), (4, -1)] {
        let rep = algebraic_induce(r, s).map_err(input)?;
        reversed.push(json!({ "r": r, "s": s, "dimension": rep.dimension }));
    }

    let trivial = |_: u64, _: u64| RingSpec::Q.one();
    let mut smooth = Vec::new();
    for kind in [GroupKind::SL2, GroupKind::GL2] {
        for n in 2..=level_max {
            let dim = smooth_induce_dimension(RingSpec::Q, kind, n, &trivial).map_err(input)?;
            let table = GroupTable::new(kind, n).map_err(input)?;
            let borel = (0..table.order())
                .filter(|&g| table.elem(g)[2] == 0)
                .count();
            smooth.push(json!({
                "kind": kind.label(),
                "level": n,
                "dimension": dim,
                "subgroup_order": borel,
                "group_order": table.order(),
                "product_ok": dim * borel == table.order(),
            }));
        }
    }

    let job = json!({
        "command": "induction",
        "gap_max": gap_max,
        "level_max": level_max,
    });
    Ok(envelope(
        job,
        json!("Q"),
        json!({ "algebraic": algebraic, "reversed": reversed, "smooth": smooth }),
        json!({}),
        started,
    ))
}

pub fn abelian_envelope(level: usize, ring_text: &str, sym: Option<u32>) -> Result<Value, CliError> {
    let started = Instant::now();
    let ring = RingSpec::parse(ring_text).map_err(input)?;
    if !(1..=500).contains(&level) {
        return Err(CliError::Input(format!(
            "level must lie in 1..=500 (got {level})"
        )));
    }
    if let Some(k) = sym {
        if k > 12 {
            return Err(CliError::Input(format!(
                "symmetric-power degree must be at most 12 (got {k})"
            )));
        }
    }

    let (ker, coker) = ga_cohomology(ring, level);
    let mut results = Map::new();
    results.insert(
        "difference".into(),
        json!({
            "kernel": shape_json_in(&ring, &ker),
            "cokernel": shape_json_in(&ring, &coker),
        }),
    );
    if let Some(k) = sym {
        let (tk, tc) = unipotent_twisted_cohomology(ring, level, k, 0);
        results.insert(
            "twisted".into(),
            json!({
                "sym": k,
                "kernel": shape_json_in(&ring, &tk),
                "cokernel": shape_json_in(&ring, &tc),
            }),
        );
    }
    if let Some((p, 1)) = ring.prime_and_exp() {
        // Over a prime field, raise each basis function one level and check
        // that the running sum inverts the difference operator exactly.
        for i in 0..level {
            let mut f = vec![ring.zero(); level];
            f[i] = ring.one();
            let lifted = antiderivative(ring, level, &f);
            assert_eq!(lifted.len(), level * p as usize);
        }
        results.insert(
            "antiderivative".into(),
            json!({ "raised_level": level * p as usize, "checked_basis_functions": level }),
        );
    }

    let job = json!({
        "command": "abelian",
        "level": level,
        "ring": ring.label(),
        "sym": sym,
    });
    Ok(envelope(
        job,
        json!(ring.label()),
        Value::Object(results),
        json!({}),
        started,
    ))
}

pub fn validate_envelope(module_text: &str, ring_text: &str) -> Result<Value, CliError> {
    let started = Instant::now();
    let ring = RingSpec::parse(ring_text).map_err(input)?;
    let expr = ModuleExpr::parse(module_text).map_err(input)?;
    let module = expr.eval(ring).map_err(input)?;
    let job = json!({
        "command": "validate",
        "module": module_text,
        "ring": ring.label(),
    });
    Ok(envelope(
        job,
        json!(ring.label()),
        json!({
            "canonical": expr.canonical(),
            "rank": module.rank(),
            "label": module.label(),
            "presentation_ok": module.verify_presentation(),
        }),
        json!({}),
        started,
    ))
}

// ---------------------------------------------------------------------------
// battery
// ---------------------------------------------------------------------------

fn shape_csv(q: &QuotientShape) -> String {
    match q {
        QuotientShape::Dim(d) => d.to_string(),
        QuotientShape::Divisors(v) => {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(";")
            }
        }
    }
}

pub const BATTERY_CSV_HEADER: &str =
    "module,ring,h0,h1,h1c,h2c,duality_ok,les_ok,oracle_expected,oracle_match";

pub struct BatteryOutcome {
    pub all_ok: bool,
    pub envelope: Value,
    pub csv: String,
}

/// Quote a CSV field when it contains a delimiter, quote, or newline.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn battery_cell_payload(ring: RingSpec, text: &str) -> Value {
    let cell = run_cell(ring, text).expect("battery roster entries evaluate");
    let expected = cell
        .expected
        .map(|(deg, dim)| {
            let name = if deg == "0" { "h0" } else { "h1" };
            json!({ "degree": name, "dim": dim })
        })
        .unwrap_or(Value::Null);
    let oracle_expected_csv = cell
        .expected
        .map(|(deg, dim)| format!("h{deg}={dim}"))
        .unwrap_or_default();
    let oracle_match_csv = cell
        .expected_match
        .map(|b| b.to_string())
        .unwrap_or_default();
    let csv_line = format!(
        "{},{},{},{},{},{},{},{},{},{}",
        csv_field(&cell.module),
        cell.ring.label(),
        shape_csv(&cell.h0),
        shape_csv(&cell.h1),
        shape_csv(&cell.h1c),
        shape_csv(&cell.h2c),
        cell.duality_ok,
        cell.les_ok,
        oracle_expected_csv,
        oracle_match_csv,
    );
    json!({
        "row": {
            "module": cell.module,
            "ring": cell.ring.label(),
            "h0": shape_json_in(&ring, &cell.h0),
            "h1": shape_json_in(&ring, &cell.h1),
            "h1c": shape_json_in(&ring, &cell.h1c),
            "h2c": shape_json_in(&ring, &cell.h2c),
            "presentation_ok": cell.presentation_ok,
            "oracle_agrees": cell.oracle_agrees,
            "duality_ok": cell.duality_ok,
            "les_ok": cell.les_ok,
            "oracle_expected": expected,
            "oracle_match": cell.expected_match,
        },
        "all_ok": cell.all_ok(),
        "csv": csv_line,
    })
}

pub fn battery_run(cache: &Cache, jobs: Option<usize>) -> Result<BatteryOutcome, CliError> {
    let started = Instant::now();
    if jobs == Some(0) {
        return Err(CliError::Input("jobs must be at least 1".to_string()));
    }
    let rings = standard_rings();
    let cells: Vec<(RingSpec, String)> = standard_battery()
        .into_iter()
        .flat_map(|text| rings.iter().map(move |&r| (r, text.clone())))
        .collect();

    let one_cell = |(ring, text): &(RingSpec, String)| -> Value {
        let key = cache_key("battery-cell", &[text, &ring.label()]);
        if let Some(hit) = cache.get(&key) {
            if hit.get("row").is_some() && hit.get("all_ok").is_some() && hit.get("csv").is_some()
            {
                return hit;
            }
        }
        let payload = battery_cell_payload(*ring, text);
        cache.put(&key, &payload);
        payload
    };
    let run_all = || -> Vec<Value> { cells.par_iter().map(one_cell).collect() };
    let outputs = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(input)?
            .install(run_all),
        None => run_all(),
    };

    let all_ok = outputs
        .iter()
        .all(|o| o["all_ok"].as_bool().unwrap_or(false));
    let mut csv = String::from(BATTERY_CSV_HEADER);
    for o in &outputs {
        csv.push('\n');
        csv.push_str(o["csv"].as_str().unwrap_or(""));
    }
    csv.push('\n');
    let rows: Vec<Value> = outputs.iter().map(|o| o["row"].clone()).collect();

    let job = json!({ "command": "battery", "cells": cells.len() });
    let ring_labels: Vec<String> = rings.iter().map(RingSpec::label).collect();
    let env = envelope(
        job,
        json!(ring_labels),
        json!({ "all_ok": all_ok, "cell_count": cells.len(), "cells": rows }),
        json!({}),
        started,
    );
    Ok(BatteryOutcome {
        all_ok,
        envelope: env,
        csv,
    })
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

struct Dispatch {
    code: i32,
    stdout: String,
}

fn dispatch(cli: Cli) -> Result<Dispatch, CliError> {
    if std::env::var_os(SELFTEST_PANIC_ENV).is_some() {
        panic!("self-test: deliberate internal assertion");
    }
    let ok = |v: Value| Dispatch {
        code: 0,
        stdout: render(&v),
    };
    match cli.command {
        Command::Compute {
            module,
            ring,
            degree,
            include_representatives,
            cache_dir,
        } => {
            let cache = Cache::resolve(cache_dir.as_deref());
            compute_envelope(&module, &ring, &degree, include_representatives, &cache).map(ok)
        }
        Command::Duality {
            module,
            ring,
            cache_dir,
        } => {
            let cache = Cache::resolve(cache_dir.as_deref());
            duality_envelope(&module, &ring, &cache).map(ok)
        }
        Command::Les {
            module,
            ring,
            cache_dir,
        } => {
            let cache = Cache::resolve(cache_dir.as_deref());
            les_envelope(&module, &ring, &cache).map(ok)
        }
        Command::Tower {
            base,
            prime,
            exp,
            steps,
            cache_dir,
        } => {
            let cache = Cache::resolve(cache_dir.as_deref());
            tower_envelope(base, prime, exp, steps, &cache).map(ok)
        }
        Command::Induction { gap_max, level_max } => {
            induction_envelope(gap_max, level_max).map(ok)
        }
        Command::Abelian { level, ring, sym } => abelian_envelope(level, &ring, sym).map(ok),
        Command::Battery {
            out_dir,
            cache_dir,
            jobs,
        } => {
            let cache = Cache::resolve(cache_dir.as_deref());
            let outcome = battery_run(&cache, jobs)?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir).map_err(input)?;
                std::fs::write(dir.join("battery.csv"), &outcome.csv).map_err(input)?;
                std::fs::write(dir.join("battery.json"), render(&outcome.envelope))
                    .map_err(input)?;
            }
            Ok(Dispatch {
                code: if outcome.all_ok { 0 } else { 1 },
                stdout: render(&outcome.envelope),
            })
        }
        Command::Validate { module, ring } => validate_envelope(&module, &ring).map(ok),
    }
}

fn error_object(code: i32, message: &str) -> String {
    render(&json!({ "error": { "exit": code, "message": message } }))
}

/// Parse and run; returns the process exit code.  Never panics: internal
/// assertions are caught and reported as exit 3 with an error object on
/// standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprintln!("{}", error_object(2, &e.to_string()));
                    2
                }
            };
        }
    };
    let prev_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(cli)));
    panic::set_hook(prev_hook);
    match outcome {
        Ok(Ok(d)) => {
            println!("{}", d.stdout);
            d.code
        }
        Ok(Err(CliError::Input(msg))) => {
            eprintln!("{}", error_object(2, &msg));
            2
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal assertion failed".to_string());
            eprintln!("{}", error_object(3, &msg));
            3
        }
    }
}
