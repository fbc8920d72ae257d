//! Command-line surface: parse a problem file, run the analyze / solve /
//! verify / oracle pipelines, and emit JSON or human-readable reports.
//!
//! Exit codes: 0 success, 1 input errors, 2 hypothesis violations or
//! unsupported factors, 3 numeric failures (including closure caps).

use crate::cycles::{characteristic_poly, invariant_parts, is_balanced, project, Chain};
use crate::decompose::{decompose_chain, enumerate_right_factors, DecompositionChain};
use crate::error::Error;
use crate::monodromy::{monodromy_generators, BlockSystem, Monodromy, DEFAULT_ELEMENT_CAP};
use crate::oracle::{brute_force_balanced, ng_crosscheck, semidirect_check, SamplePlan};
use crate::polycore::{compose_all, poly_from_strings, poly_to_strings, Poly};
use crate::solver::{
    contains, render_text, sample_solutions, solve, space_to_json, SolveOptions, Verdict,
};
use serde::Deserialize;
use serde_json::{json, Value};

/// Problem description: the polynomial (directly or as outermost-first
/// factors), the cycle, and optional knobs.
#[derive(Debug, Deserialize)]
pub struct ProblemFile {
    #[serde(default)]
    pub poly: Option<Vec<String>>,
    #[serde(default)]
    pub factors: Option<Vec<Vec<String>>>,
    pub cycle: Vec<i64>,
    #[serde(default)]
    pub g: Option<Vec<String>>,
    #[serde(default)]
    pub degree_bound: Option<usize>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub element_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Default)]
pub struct Flags {
    pub format: Option<Format>,
    pub g: Option<String>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub degree_bound: Option<usize>,
    pub element_cap: Option<usize>,
}

struct Resolved {
    f: Poly,
    cycle: Chain,
    g: Option<Poly>,
    degree_bound: usize,
    plan: SamplePlan,
    element_cap: usize,
}

fn resolve(problem: &ProblemFile, flags: &Flags) -> Result<Resolved, Error> {
    let f = match (&problem.poly, &problem.factors) {
        (Some(coeffs), None) => poly_from_strings(coeffs)?,
        (None, Some(factor_strings)) => {
            if factor_strings.is_empty() {
                return Err(Error::InvalidInput("factors array is empty".into()));
            }
            let factors = factor_strings
                .iter()
                .map(|c| poly_from_strings(c))
                .collect::<Result<Vec<_>, _>>()?;
            if factors.iter().any(|p| p.deg() < 1) {
                return Err(Error::InvalidInput("factors must be nonconstant".into()));
            }
            compose_all(&factors)
        }
        (Some(_), Some(_)) => {
            return Err(Error::InvalidInput(
                "give either poly or factors, not both".into(),
            ))
        }
        (None, None) => return Err(Error::InvalidInput("problem needs poly or factors".into())),
    };
    let m = f.degree().unwrap_or(0);
    if m < 2 {
        return Err(Error::InvalidInput(
            "polynomial degree must be at least 2".into(),
        ));
    }
    if problem.cycle.len() != m {
        return Err(Error::InvalidInput(format!(
            "cycle length {} does not match deg f = {m}",
            problem.cycle.len()
        )));
    }
    let g = match (&flags.g, &problem.g) {
        (Some(s), _) => Some(parse_g(s)?),
        (None, Some(strings)) => Some(poly_from_strings(strings)?),
        (None, None) => None,
    };
    let plan = SamplePlan {
        count: flags.samples.or(problem.samples).unwrap_or(10),
        seed: flags.seed.or(problem.seed).unwrap_or(0x5EED),
        tolerance: flags.tol.or(problem.tol).unwrap_or(1e-8),
    };
    Ok(Resolved {
        f,
        cycle: Chain::new(problem.cycle.clone()),
        g,
        degree_bound: flags.degree_bound.or(problem.degree_bound).unwrap_or(12),
        plan,
        element_cap: flags
            .element_cap
            .or(problem.element_cap)
            .unwrap_or(DEFAULT_ELEMENT_CAP),
    })
}

fn parse_g(s: &str) -> Result<Poly, Error> {
    let coeffs: Vec<String> = s.split(',').map(|c| c.trim().to_string()).collect();
    poly_from_strings(&coeffs)
}

const LABELING_NOTE: &str =
    "tau_infinity = (1 2 ... m), anchored at the principal asymptotic branch over the real basepoint";

fn c64_json(v: crate::numeric::C64) -> Value {
    json!({"re": format!("{:.12e}", v.re), "im": format!("{:.12e}", v.im)})
}

fn chain_json(chain: &DecompositionChain) -> Value {
    json!(chain
        .factors
        .iter()
        .map(|fac| json!({
            "coeffs": poly_to_strings(&fac.poly),
            "class": fac.class.tag.as_str(),
            "core_degree": fac.class.core_degree,
            "pre_linear": [
                fac.class.pre_linear.0.to_coeff_string(),
                fac.class.pre_linear.1.to_coeff_string()
            ],
            "post_linear": [
                fac.class.post_linear.0.to_coeff_string(),
                fac.class.post_linear.1.to_coeff_string()
            ],
        }))
        .collect::<Vec<_>>())
}

fn monodromy_json(mono: &Monodromy, group_blocks: &[BlockSystem]) -> Value {
    json!({
        "basepoint": format!("{:.12e}", mono.labeling.t0),
        "critical_values": mono
            .loops
            .iter()
            .map(|(v, _)| c64_json(*v))
            .collect::<Vec<_>>(),
        "generators": mono
            .loops
            .iter()
            .map(|(_, p)| p.one_based_images())
            .collect::<Vec<_>>(),
        "tau_infinity_ok": mono.tau_infinity_ok,
        "block_systems": group_blocks.iter().map(|b| b.one_based()).collect::<Vec<_>>(),
    })
}

/// Run one command against a problem; returns the exit code and the report.
pub fn run(command: &str, problem: &ProblemFile, flags: &Flags) -> (i32, String) {
    let format = flags.format.unwrap_or(Format::Json);
    match run_inner(command, problem, flags, format) {
        Ok(report) => (0, report),
        Err(e) => {
            let code = match e {
                Error::HypothesisViolated(_) | Error::UnsupportedFactor(_) => 2,
                Error::NumericFailure(_)
                | Error::DegenerateGeometry(_)
                | Error::CapExceeded { .. } => 3,
                _ => 1,
            };
            let report = match format {
                Format::Json => serde_json::to_string_pretty(&json!({"error": e.to_string()}))
                    .unwrap_or_else(|_| e.to_string()),
                Format::Text => format!("error: {e}"),
            };
            (code, report)
        }
    }
}

fn run_inner(
    command: &str,
    problem: &ProblemFile,
    flags: &Flags,
    format: Format,
) -> Result<String, Error> {
    let resolved = resolve(problem, flags)?;
    match command {
        "analyze" => analyze(&resolved, format),
        "solve" => solve_cmd(&resolved, format),
        "verify" => verify_cmd(&resolved, format),
        "oracle" => oracle_cmd(&resolved, format),
        other => Err(Error::InvalidInput(format!(
            "unknown command '{other}' (expected analyze, solve, verify or oracle)"
        ))),
    }
}

fn analyze(r: &Resolved, format: Format) -> Result<String, Error> {
    let chain = decompose_chain(&r.f)?;
    let mono = monodromy_generators(&r.f)?;
    let group = mono.group(r.element_cap);
    let blocks = group.imprimitivity_blocks()?;
    let balanced = is_balanced(&r.cycle, &group);
    let m = chain.degree();

    let mut projections = Vec::new();
    for (_, h) in enumerate_right_factors(&chain) {
        let d = h.deg();
        let sys = BlockSystem::residue_classes(m, d);
        let projected = project(&r.cycle, &sys)?;
        projections.push(json!({
            "inner_degree": d,
            "h": poly_to_strings(&h),
            "projected_cycle": projected.coeffs(),
        }));
    }
    let inner_deg = chain.innermost().poly.deg();
    let parts: Vec<Value> = if chain.factors.len() > 1 {
        let sys = BlockSystem::residue_classes(m, inner_deg);
        invariant_parts(&r.cycle, &sys)?
            .iter()
            .map(|part| {
                json!({
                    "coeffs": part.coeffs(),
                    "characteristic_poly": poly_to_strings(&characteristic_poly(part)),
                })
            })
            .collect()
    } else {
        vec![]
    };

    let divisors = crate::decompose::divisor_set(&chain);
    let structure = crate::cycles::module_structure(&r.cycle, &divisors);
    let report = json!({
        "command": "analyze",
        "degree": m,
        "labeling": LABELING_NOTE,
        "chain": chain_json(&chain),
        "hypothesis_ok": chain.hypothesis_ok,
        "hypothesis_witness": chain.hypothesis_witness,
        "monodromy": monodromy_json(&mono, &blocks),
        "cycle": r.cycle.coeffs(),
        "is_cycle": r.cycle.is_cycle(),
        "balanced": balanced,
        "characteristic_poly": poly_to_strings(&characteristic_poly(&r.cycle)),
        "divisor_set": divisors,
        "module_structure": structure.summands,
        "projections": projections,
        "invariant_parts": parts,
    });
    render(report, format, |rep| {
        let mut out = String::new();
        out.push_str(&format!(
            "degree {m} polynomial, {} factor(s): ",
            chain.factors.len()
        ));
        let tags: Vec<&str> = chain.factors.iter().map(|f| f.class.tag.as_str()).collect();
        out.push_str(&tags.join(" o "));
        out.push('\n');
        out.push_str(&format!("hypothesis_ok: {}\n", chain.hypothesis_ok));
        if let Some(w) = &chain.hypothesis_witness {
            out.push_str(&format!("  witness: {w}\n"));
        }
        out.push_str(&format!("balanced: {balanced}\n"));
        out.push_str(&format!(
            "monodromy generators: {}\n",
            rep["monodromy"]["generators"]
        ));
        out
    })
}

fn solve_cmd(r: &Resolved, format: Format) -> Result<String, Error> {
    let chain = decompose_chain(&r.f)?;
    let opts = SolveOptions {
        element_cap: r.element_cap,
        ..Default::default()
    };
    let space = solve(&chain, &r.cycle, &opts)?;
    let samples = sample_solutions(&space, r.degree_bound, r.plan.count, r.plan.seed);
    let report = json!({
        "command": "solve",
        "labeling": LABELING_NOTE,
        "space": space_to_json(&space),
        "rendering": render_text(&space, 0),
        "degree_bound": r.degree_bound,
        "samples": samples.iter().map(poly_to_strings).collect::<Vec<_>>(),
    });
    render(report, format, |_| {
        let mut out = render_text(&space, 0);
        out.push_str(&format!(
            "{} sampled member(s) up to degree {}\n",
            samples.len(),
            r.degree_bound
        ));
        for s in &samples {
            out.push_str(&format!("  {s}\n"));
        }
        out
    })
}

fn verify_cmd(r: &Resolved, format: Format) -> Result<String, Error> {
    let g =
        r.g.clone()
            .ok_or_else(|| Error::InvalidInput("verify needs g (flag --g or file field)".into()))?;
    let chain = decompose_chain(&r.f)?;
    let opts = SolveOptions {
        element_cap: r.element_cap,
        ..Default::default()
    };
    let space = solve(&chain, &r.cycle, &opts)?;
    let verdict = contains(&space, &g, &r.f, &r.cycle, &r.plan)?;
    let oracle_residuals = crate::oracle::integral_residuals(&r.f, &r.cycle, &g, &r.plan)?;
    let max_res = oracle_residuals.iter().copied().fold(0.0, f64::max);
    let (kind, residual) = match &verdict {
        Verdict::MemberExact => ("member_exact", None),
        Verdict::MemberNumeric { residual } => ("member_numeric", Some(*residual)),
        Verdict::NotMember { residual } => ("not_member", *residual),
        Verdict::Inconclusive { residual } => ("inconclusive", Some(*residual)),
    };
    let report = json!({
        "command": "verify",
        "labeling": LABELING_NOTE,
        "g": poly_to_strings(&g),
        "verdict": kind,
        "verdict_residual": residual.map(|r| format!("{r:.6e}")),
        "oracle_residuals": oracle_residuals.iter().map(|x| format!("{x:.6e}")).collect::<Vec<_>>(),
        "oracle_max_residual": format!("{max_res:.6e}"),
        "precision": {"arithmetic": "f64", "escalations": 0},
    });
    render(report, format, |_| {
        format!(
            "g = {g}\nverdict: {kind}{}\noracle max residual: {max_res:.3e}\n",
            residual
                .map(|r| format!(" (residual {r:.3e})"))
                .unwrap_or_default()
        )
    })
}

fn oracle_cmd(r: &Resolved, format: Format) -> Result<String, Error> {
    let chain = decompose_chain(&r.f)?;
    let mut ng = Vec::new();
    for fac in &chain.factors {
        let dev = ng_crosscheck(&fac.poly, &r.plan)?;
        ng.push(json!({
            "factor": poly_to_strings(&fac.poly),
            "max_deviation": format!("{dev:.6e}"),
        }));
    }
    let mut semidirect = Vec::new();
    for k in 1..chain.factors.len() {
        let prefix: Vec<Poly> = chain.factors[..k].iter().map(|f| f.poly.clone()).collect();
        let ftilde = compose_all(&prefix);
        let item = match semidirect_check(&ftilde, &chain.factors[k].poly, r.element_cap) {
            Ok(rep) => json!({
                "inner_index": k,
                "status": "ok",
                "order_full": rep.order_full,
                "order_normal": rep.order_normal,
                "order_outer": rep.order_outer,
                "product_matches": rep.product_matches,
                "intersection_trivial": rep.intersection_trivial,
                "alpha_blocks_ok": rep.alpha_blocks_ok,
                "beta_blocks_ok": rep.beta_blocks_ok,
            }),
            Err(Error::HypothesisViolated(w)) => {
                json!({"inner_index": k, "status": "not_applicable", "reason": w})
            }
            Err(Error::CapExceeded { cap }) => {
                json!({"inner_index": k, "status": "cap_exceeded", "cap": cap})
            }
            Err(e) => return Err(e),
        };
        semidirect.push(item);
    }
    let mono = monodromy_generators(&r.f)?;
    let group = mono.group(r.element_cap);
    let brute = match brute_force_balanced(&r.cycle, &group) {
        Ok(v) => json!({"status": "ok", "balanced": v}),
        Err(Error::CapExceeded { cap }) => json!({"status": "cap_exceeded", "cap": cap}),
        Err(e) => return Err(e),
    };
    let span_balanced = is_balanced(&r.cycle, &group);
    let report = json!({
        "command": "oracle",
        "labeling": LABELING_NOTE,
        "newton_girard": ng,
        "semidirect": semidirect,
        "brute_force_balanced": brute,
        "span_balanced": span_balanced,
    });
    render(report, format, |rep| format!("{rep:#}\n"))
}

fn render(
    report: Value,
    format: Format,
    text: impl FnOnce(&Value) -> String,
) -> Result<String, Error> {
    match format {
        Format::Json => serde_json::to_string_pretty(&report)
            .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}"))),
        Format::Text => Ok(text(&report)),
    }
}

// ---------------------------------------------------------------------------
// argument parsing / entry point
// ---------------------------------------------------------------------------

fn usage() -> String {
    "usage: zerocycle --command {analyze|solve|verify|oracle} --input PATH \
     [--g COEFFS] [--format json|text] [--samples N] [--tol X] [--seed N] \
     [--degree-bound N] [--element-cap N]\n\
     problem files are UTF-8 JSON; coefficients are strings 'a/b' or 'a/b+c/d*i', lowest degree first"
        .to_string()
}

pub fn main_entry() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, report) = dispatch(&args);
    if !report.is_empty() {
        println!("{report}");
    }
    std::process::exit(code);
}

pub fn dispatch(args: &[String]) -> (i32, String) {
    let mut command: Option<String> = None;
    let mut input: Option<String> = None;
    let mut flags = Flags::default();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        let take = |i: &mut usize| -> Option<String> {
            *i += 1;
            args.get(*i).cloned()
        };
        match arg.as_str() {
            "--command" => command = take(&mut i),
            "--input" => input = take(&mut i),
            "--g" => flags.g = take(&mut i),
            "--format" => {
                flags.format = match take(&mut i).as_deref() {
                    Some("json") => Some(Format::Json),
                    Some("text") => Some(Format::Text),
                    _ => return (1, usage()),
                }
            }
            "--samples" => flags.samples = take(&mut i).and_then(|v| v.parse().ok()),
            "--tol" => flags.tol = take(&mut i).and_then(|v| v.parse().ok()),
            "--seed" => flags.seed = take(&mut i).and_then(|v| v.parse().ok()),
            "--degree-bound" => flags.degree_bound = take(&mut i).and_then(|v| v.parse().ok()),
            "--element-cap" => flags.element_cap = take(&mut i).and_then(|v| v.parse().ok()),
            "--help" | "-h" => return (0, usage()),
            other if command.is_none() && !other.starts_with('-') => {
                command = Some(other.to_string())
            }
            _ => return (1, usage()),
        }
        i += 1;
    }
    let Some(command) = command else {
        return (1, usage());
    };
    let Some(input) = input else {
        return (1, usage());
    };
    let content = match std::fs::read_to_string(&input) {
        Ok(c) => c,
        Err(e) => return (1, format!("error: cannot read {input}: {e}")),
    };
    let problem: ProblemFile = match serde_json::from_str(&content) {
        Ok(p) => p,
        Err(e) => return (1, format!("error: bad problem file: {e}")),
    };
    run(&command, &problem, &flags)
}
