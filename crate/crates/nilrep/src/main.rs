//! Command-line interface: load algebras and representations from JSON
//! (or the built-in fixture registry), run analyses, and emit
//! machine-readable reports.
//!
//! Exit codes: 0 for a positive result, 2 for a negative or undecided
//! mathematical verdict, 1 for input or usage errors.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use nilrep::autgrp;
use nilrep::canon::{self, CanonicalForm};
use nilrep::exactnum::{FieldSpec, Rat, Scalar};
use nilrep::fixtures;
use nilrep::glue::{self, GlueOutcome};
use nilrep::liealg::LieAlgebra;
use nilrep::linalg::Matrix;
use nilrep::moduli::{self, AValue, Verdict};
use nilrep::rep::Representation;

#[derive(Parser)]
#[command(name = "nilrep", about = "Exact invariants of nilpotent Lie algebras and their unipotent representations", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check antisymmetry, the Jacobi identity, and nilpotence of an algebra
    Validate(CommonArgs),
    /// Filtration, flag/wide status, constellation, automorphism dimension, nondegeneracy
    Analyze(CommonArgs),
    /// Certified width bounds, with seeded search for wide representations
    Width(CommonArgs),
    /// Minimal automorphism-group dimensions A(g,n) for n = 2, 3, 4
    #[command(name = "a-invariants")]
    AInvariants(CommonArgs),
    /// Canonical form of a wide representation
    Canon(CommonArgs),
    /// Isomorphism test for two wide representations (--rep A --rep B)
    Iso(CommonArgs),
    /// Glue two overlap-compatible representations (--rep A --rep B)
    Glue(CommonArgs),
    /// Dimension of the second Lie algebra cohomology with trivial coefficients
    H2(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON input file, or "fixture:NAME" for a registry entry
    #[arg(long)]
    input: String,
    /// Representation name; repeatable for commands taking two
    #[arg(long = "rep")]
    reps: Vec<String>,
    /// Seed for randomized searches
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample budget for randomized searches
    #[arg(long, default_value_t = 200)]
    budget: usize,
    /// Extension field given by a monic integer polynomial, e.g. "x^2+1"; repeatable
    #[arg(long = "extension")]
    extensions: Vec<String>,
    /// Number of parallel search seeds for width
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Emit a JSON report instead of text
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = match &cli.cmd {
        Cmd::Validate(a)
        | Cmd::Analyze(a)
        | Cmd::Width(a)
        | Cmd::AInvariants(a)
        | Cmd::Canon(a)
        | Cmd::Iso(a)
        | Cmd::Glue(a)
        | Cmd::H2(a) => a,
    };
    match run(&cli.cmd, args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Cmd, args: &CommonArgs) -> Result<u8, String> {
    let input = load_input(&args.input)?;
    let extensions = args
        .extensions
        .iter()
        .map(|s| parse_extension(s))
        .collect::<Result<Vec<_>, String>>()?;
    match cmd {
        Cmd::Validate(_) => cmd_validate(&input, args),
        Cmd::Analyze(_) => cmd_analyze(&input, args),
        Cmd::Width(_) => cmd_width(&input, args, &extensions),
        Cmd::AInvariants(_) => cmd_a_invariants(&input, args, &extensions),
        Cmd::Canon(_) => cmd_canon(&input, args),
        Cmd::Iso(_) => cmd_iso(&input, args),
        Cmd::Glue(_) => cmd_glue(&input, args),
        Cmd::H2(_) => cmd_h2(&input, args),
    }
}

// ---- input loading ----

struct Input {
    name: String,
    algebra: Arc<LieAlgebra>,
    representations: Vec<(String, Representation)>,
}

fn load_input(spec: &str) -> Result<Input, String> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        let fx = fixtures::fixture(name).ok_or_else(|| {
            format!(
                "unknown fixture '{name}'; available: {}",
                fixtures::all_fixture_names().join(", ")
            )
        })?;
        return Ok(Input {
            name: fx.name.to_string(),
            algebra: fx.algebra,
            representations: fx
                .representations
                .into_iter()
                .map(|(n, r)| (n.to_string(), r))
                .collect(),
        });
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("{spec}: invalid JSON: {e}"))?;
    parse_input(spec, &value)
}

fn parse_input(path: &str, value: &Value) -> Result<Input, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| format!("{path}: top level must be an object"))?;
    let field = match obj.get("field") {
        None => FieldSpec::rationals(),
        Some(f) => parse_field(path, f)?,
    };
    let labels: Vec<String> = match obj.get("labels") {
        Some(Value::Array(ls)) => ls
            .iter()
            .map(|l| {
                l.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| format!("{path}: labels must be strings"))
            })
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(format!("{path}: 'labels' must be an array")),
        None => {
            let dim = obj
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| format!("{path}: need 'labels' or integer 'dim'"))?;
            (1..=dim).map(|i| format!("v{i}")).collect()
        }
    };
    let dim = labels.len();
    let mut brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)> = Vec::new();
    if let Some(bs) = obj.get("brackets") {
        let bs = bs
            .as_array()
            .ok_or_else(|| format!("{path}: 'brackets' must be an array"))?;
        for (t, b) in bs.iter().enumerate() {
            let b = b
                .as_object()
                .ok_or_else(|| format!("{path}: brackets[{t}] must be an object"))?;
            let i = b
                .get("i")
                .and_then(Value::as_u64)
                .ok_or_else(|| format!("{path}: brackets[{t}].i missing"))? as usize;
            let j = b
                .get("j")
                .and_then(Value::as_u64)
                .ok_or_else(|| format!("{path}: brackets[{t}].j missing"))? as usize;
            if i >= dim || j >= dim {
                return Err(format!("{path}: brackets[{t}] index out of range"));
            }
            let coeffs = b
                .get("coeffs")
                .and_then(Value::as_object)
                .ok_or_else(|| format!("{path}: brackets[{t}].coeffs must be an object"))?;
            let mut terms = Vec::new();
            for (k, v) in coeffs {
                let k: usize = k
                    .parse()
                    .map_err(|_| format!("{path}: brackets[{t}].coeffs key '{k}' is not an index"))?;
                if k >= dim {
                    return Err(format!("{path}: brackets[{t}].coeffs index {k} out of range"));
                }
                terms.push((k, parse_scalar_value(path, &field, v)?));
            }
            terms.sort_by_key(|(k, _)| *k);
            brackets.push((i, j, terms));
        }
    }
    let gen_exprs = match obj.get("generators") {
        None => None,
        Some(Value::Array(gs)) => {
            // generator indices; remaining basis elements must carry a
            // "bracket" provenance entry
            let exprs = parse_gen_exprs(path, gs, obj, dim)?;
            Some(exprs)
        }
        Some(_) => return Err(format!("{path}: 'generators' must be an array")),
    };
    let algebra = LieAlgebra::from_sparse(field.clone(), labels, &brackets, gen_exprs)
        .map_err(|e| format!("{path}: {e}"))?;
    let mut representations = Vec::new();
    if let Some(reps) = obj.get("representations") {
        let reps = reps
            .as_object()
            .ok_or_else(|| format!("{path}: 'representations' must be an object"))?;
        for (name, r) in reps {
            representations.push((name.clone(), parse_rep(path, name, &algebra, r)?));
        }
    }
    Ok(Input { name: path.to_string(), algebra, representations })
}

fn parse_gen_exprs(
    path: &str,
    gens: &[Value],
    obj: &Map<String, Value>,
    dim: usize,
) -> Result<Vec<nilrep::liealg::GenExpr>, String> {
    use nilrep::liealg::GenExpr;
    let mut exprs: Vec<Option<GenExpr>> = vec![None; dim];
    for g in gens {
        let i = g
            .as_u64()
            .ok_or_else(|| format!("{path}: generator indices must be integers"))? as usize;
        if i >= dim {
            return Err(format!("{path}: generator index {i} out of range"));
        }
        exprs[i] = Some(GenExpr::Gen(i));
    }
    if let Some(Value::Array(bs)) = obj.get("derived") {
        for b in bs {
            let triple = b
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| format!("{path}: 'derived' entries must be [target, left, right]"))?;
            let idx: Vec<usize> = triple
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|v| v as usize)
                        .ok_or_else(|| format!("{path}: 'derived' entries must be integers"))
                })
                .collect::<Result<_, _>>()?;
            if idx.iter().any(|&i| i >= dim) {
                return Err(format!("{path}: 'derived' index out of range"));
            }
            exprs[idx[0]] = Some(GenExpr::Bracket(idx[1], idx[2]));
        }
    }
    exprs
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            e.ok_or_else(|| {
                format!("{path}: basis element {i} is neither a generator nor derived")
            })
        })
        .collect()
}

fn parse_rep(
    path: &str,
    name: &str,
    algebra: &Arc<LieAlgebra>,
    value: &Value,
) -> Result<Representation, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| format!("{path}: representation '{name}' must be an object"))?;
    let field = algebra.field().clone();
    if let Some(ms) = obj.get("matrices") {
        let ms = ms
            .as_array()
            .ok_or_else(|| format!("{path}: '{name}'.matrices must be an array"))?;
        let mats = ms
            .iter()
            .map(|m| parse_matrix(path, &field, m))
            .collect::<Result<Vec<_>, _>>()?;
        return Representation::new(algebra.clone(), mats)
            .map_err(|e| format!("{path}: representation '{name}': {e}"));
    }
    if let Some(sd) = obj.get("superdiagonals") {
        let sd = sd
            .as_array()
            .ok_or_else(|| format!("{path}: '{name}'.superdiagonals must be an array"))?;
        let rows: Vec<Vec<Scalar>> = sd
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| format!("{path}: '{name}' superdiagonal must be an array"))?
                    .iter()
                    .map(|v| parse_scalar_value(path, &field, v))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        return fixtures::rep_from_superdiagonals(algebra.clone(), &rows)
            .map_err(|e| format!("{path}: representation '{name}': {e}"));
    }
    Err(format!("{path}: representation '{name}' needs 'matrices' or 'superdiagonals'"))
}

fn parse_matrix(path: &str, field: &Arc<FieldSpec>, value: &Value) -> Result<Matrix, String> {
    let rows = value
        .as_array()
        .ok_or_else(|| format!("{path}: matrix must be an array of rows"))?;
    let parsed: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| format!("{path}: matrix row must be an array"))?
                .iter()
                .map(|v| parse_scalar_value(path, field, v))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Matrix::from_rows(field, parsed).map_err(|e| format!("{path}: {e}"))
}

fn parse_scalar_value(path: &str, field: &Arc<FieldSpec>, v: &Value) -> Result<Scalar, String> {
    match v {
        Value::String(s) => {
            Scalar::parse(field, s).map_err(|e| format!("{path}: bad scalar '{s}': {e}"))
        }
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| format!("{path}: non-integer numeric scalar {n}; use a string"))?;
            Ok(Scalar::from_i64(field, i))
        }
        _ => Err(format!("{path}: scalars must be strings or integers")),
    }
}

fn parse_field(path: &str, value: &Value) -> Result<Arc<FieldSpec>, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| format!("{path}: 'field' must be an object"))?;
    match obj.get("min_poly") {
        None => Ok(FieldSpec::rationals()),
        Some(Value::Array(cs)) => {
            let q = FieldSpec::rationals();
            let coeffs: Vec<Rat> = cs
                .iter()
                .map(|c| {
                    parse_scalar_value(path, &q, c).and_then(|s| {
                        s.as_rational()
                            .cloned()
                            .ok_or_else(|| format!("{path}: min_poly coefficients must be rational"))
                    })
                })
                .collect::<Result<_, _>>()?;
            FieldSpec::extension(coeffs).map_err(|e| format!("{path}: {e}"))
        }
        Some(_) => Err(format!("{path}: 'field.min_poly' must be an array")),
    }
}

/// Parses a monic polynomial in x with rational coefficients, e.g.
/// "x^2+1" or "x^3 - 1/2*x + 2", into low-to-high coefficients.
fn parse_extension(s: &str) -> Result<Arc<FieldSpec>, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty extension polynomial".into());
    }
    // split into signed terms
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (k, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && k > 0 && !cur.ends_with('/') {
            terms.push(cur.clone());
            cur = String::new();
        }
        if !(ch == '+' && cur.is_empty()) {
            cur.push(ch);
        }
    }
    terms.push(cur);
    let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
    for term in &terms {
        let (coeff_part, power) = match term.find('x') {
            None => (term.as_str(), 0usize),
            Some(idx) => {
                let c = term[..idx].trim_end_matches('*');
                let rest = &term[idx + 1..];
                let p = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|r| r.parse::<usize>().ok())
                        .ok_or_else(|| format!("bad exponent in '{term}'"))?
                };
                (c, p)
            }
        };
        let coeff = match coeff_part {
            "" | "+" => BigRational::from_integer(1.into()),
            "-" => BigRational::from_integer((-1).into()),
            s => s
                .parse::<BigRational>()
                .map_err(|_| format!("bad coefficient '{s}' in extension polynomial"))?,
        };
        *coeffs.entry(power).or_insert_with(BigRational::zero) += coeff;
    }
    let deg = *coeffs.keys().max().unwrap();
    let list: Vec<BigRational> = (0..=deg)
        .map(|k| coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    FieldSpec::extension(list).map_err(|e| e.to_string())
}

// ---- report helpers ----

fn scalar_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar_json(m.get(i, j))).collect()))
            .collect(),
    )
}

fn emit(args: &CommonArgs, report: &Value, text: &str) {
    if args.json {
        println!("{}", serde_json::to_string_pretty(report).unwrap());
    } else {
        println!("{text}");
    }
}

fn verdict_str(v: &Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

fn find_rep<'a>(input: &'a Input, args: &CommonArgs, which: usize) -> Result<&'a (String, Representation), String> {
    if args.reps.is_empty() {
        return input.representations.first().ok_or_else(|| {
            format!("input '{}' has no representations; pass --rep or add one", input.name)
        });
    }
    let name = args
        .reps
        .get(which)
        .ok_or_else(|| format!("this command needs {} --rep arguments", which + 1))?;
    input
        .representations
        .iter()
        .find(|(n, _)| n == name)
        .ok_or_else(|| {
            let names: Vec<&str> = input.representations.iter().map(|(n, _)| n.as_str()).collect();
            format!("no representation named '{name}' in '{}'; available: {}", input.name, names.join(", "))
        })
}

// ---- commands ----

fn cmd_validate(input: &Input, args: &CommonArgs) -> Result<u8, String> {
    let g = &input.algebra;
    let report = LieAlgebra::validate_raw(g.field(), g.structure_constants());
    let ok = report.is_valid();
    let json = json!({
        "input": input.name,
        "dim": g.dim(),
        "valid": ok,
        "nilpotent": report.nilpotent,
        "depth": report.depth,
        "antisymmetry_violations": report.antisymmetry_violations.len(),
        "jacobi_violations": report.jacobi_violations.len(),
    });
    let text = if ok {
        format!("{}: valid nilpotent Lie algebra, dim {}, depth {}", input.name, g.dim(), g.depth())
    } else {
        format!(
            "{}: INVALID ({} antisymmetry, {} Jacobi violations, nilpotent: {})",
            input.name,
            report.antisymmetry_violations.len(),
            report.jacobi_violations.len(),
            report.nilpotent
        )
    };
    emit(args, &json, &text);
    Ok(if ok { 0 } else { 2 })
}

fn cmd_analyze(input: &Input, args: &CommonArgs) -> Result<u8, String> {
    let (name, r) = find_rep(input, args, 0)?;
    let filtration: Vec<usize> = r.canonical_filtration().iter().map(|s| s.dim()).collect();
    let flag = r.is_flag();
    let wide = r.is_wide();
    let constellation = if flag {
        r.standardize()
            .ok()
            .and_then(|(std, _)| std.constellation().ok())
    } else {
        None
    };
    let aut = if flag { Some(autgrp::aut_dimension(r).map_err(|e| e.to_string())?) } else { None };
    let nondeg = if flag {
        Some(
            moduli::is_nondegenerate_budgeted(r, args.budget, args.seed, &[])
                .map_err(|e| e.to_string())?,
        )
    } else {
        None
    };
    let json = json!({
        "input": input.name,
        "representation": name,
        "dim": r.dim(),
        "nilpotent": r.is_nilpotent_rep(),
        "filtration_dims": filtration,
        "flag": flag,
        "wide": wide,
        "constellation": constellation.as_ref().map(|c| c.iter().map(|p| vector_json(p)).collect::<Vec<_>>()),
        "aut_dimension": aut,
        "nondegenerate": nondeg.as_ref().map(verdict_str),
    });
    let mut text = format!(
        "{} / {}: dim {}, filtration {:?}, flag: {}, wide: {}",
        input.name, name, r.dim(), filtration, flag, wide
    );
    if let Some(a) = aut {
        text.push_str(&format!(", dim Aut = {a}"));
    }
    if let Some(v) = &nondeg {
        text.push_str(&format!(", nondegenerate: {}", verdict_str(v)));
    }
    emit(args, &json, &text);
    Ok(0)
}

fn cmd_width(
    input: &Input,
    args: &CommonArgs,
    extensions: &[Arc<FieldSpec>],
) -> Result<u8, String> {
    let g = &input.algebra;
    let report = if args.jobs <= 1 {
        moduli::width_bounds(g, args.budget, args.seed, extensions)
    } else {
        // independent searches across consecutive seeds, merged
        // deterministically: prefer exact, then higher lower bound,
        // then lowest seed
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..args.jobs as u64)
                .map(|k| {
                    let exts = extensions.to_vec();
                    scope.spawn(move || moduli::width_bounds(g, args.budget, args.seed + k, &exts))
                })
                .collect();
            let mut reports: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
            reports.sort_by_key(|r| (!r.exact, std::cmp::Reverse(r.lower), r.seed));
            reports.into_iter().next().unwrap()
        })
    };
    let json = json!({
        "input": input.name,
        "lower": report.lower,
        "upper": report.upper,
        "exact": report.exact,
        "seed": report.seed,
        "wide3": {
            "verdict": verdict_str(&report.wide3.verdict),
            "case": report.wide3.case,
        },
        "witness": report.witness.as_ref().map(|w| {
            json!({
                "dim": w.dim(),
                "field_degree": w.algebra().field().degree(),
                "matrices": w.matrices().iter().map(matrix_json).collect::<Vec<_>>(),
            })
        }),
    });
    let text = if report.exact {
        format!("{}: width = {} (exact, seed {})", input.name, report.lower, report.seed)
    } else {
        format!(
            "{}: width in [{}, {}] (not certified, seed {})",
            input.name, report.lower, report.upper, report.seed
        )
    };
    emit(args, &json, &text);
    Ok(if report.exact { 0 } else { 2 })
}

fn avalue_json(v: &AValue) -> Value {
    match v {
        AValue::Exact(a) => json!({ "exact": a }),
        AValue::Interval(lo, hi) => json!({ "interval": [lo, hi] }),
    }
}

fn cmd_a_invariants(
    input: &Input,
    args: &CommonArgs,
    extensions: &[Arc<FieldSpec>],
) -> Result<u8, String> {
    let g = &input.algebra;
    let mut rows = Vec::new();
    let mut all_exact = true;
    let mut texts = Vec::new();
    for n in 2..=4 {
        let v = moduli::a_invariant_budgeted(g, n, args.budget, args.seed, extensions)
            .map_err(|e| e.to_string())?;
        let exact = matches!(v.value, AValue::Exact(_));
        all_exact &= exact;
        texts.push(match &v.value {
            AValue::Exact(a) => format!("A(g,{n}) = {a}"),
            AValue::Interval(lo, hi) => format!("A(g,{n}) in [{lo}, {hi}]"),
        });
        rows.push(json!({
            "n": n,
            "value": avalue_json(&v.value),
            "method": v.method,
        }));
    }
    let json = json!({ "input": input.name, "a_invariants": rows });
    emit(args, &json, &format!("{}: {}", input.name, texts.join(", ")));
    Ok(if all_exact { 0 } else { 2 })
}

fn canonical_form_json(cf: &CanonicalForm) -> Value {
    let n = cf.rep.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            entries.push(json!({
                "i": i,
                "j": j,
                "functional": vector_json(&cf.rep.entry_functional(i, j)),
            }));
        }
    }
    json!({
        "slice": cf.slice.e_basis.iter().enumerate().skip(1).map(|(i, e)| {
            json!({ "i": i, "basis": e.basis().iter().map(|v| vector_json(v)).collect::<Vec<_>>() })
        }).collect::<Vec<_>>(),
        "u": matrix_json(&cf.u),
        "t": Value::Array(cf.t.iter().map(scalar_json).collect()),
        "entries": entries,
        "matrices": cf.rep.matrices().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

fn cmd_canon(input: &Input, args: &CommonArgs) -> Result<u8, String> {
    let (name, r) = find_rep(input, args, 0)?;
    match canon::canonical_form(r) {
        Ok(cf) => {
            let json = json!({
                "input": input.name,
                "representation": name,
                "canonical_form": canonical_form_json(&cf),
            });
            let text = format!(
                "{} / {}: canonical form computed ({} entries)",
                input.name,
                name,
                r.dim() * (r.dim() - 1) / 2
            );
            emit(args, &json, &text);
            Ok(0)
        }
        Err(nilrep::Error::NotWide) => {
            emit(
                args,
                &json!({ "input": input.name, "representation": name, "error": "not wide" }),
                &format!("{} / {}: not a wide representation", input.name, name),
            );
            Ok(2)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_iso(input: &Input, args: &CommonArgs) -> Result<u8, String> {
    let (n1, r1) = find_rep(input, args, 0)?;
    let (n2, r2) = find_rep(input, args, 1)?;
    let iso = canon::iso_test_wide(r1, r2).map_err(|e| e.to_string())?;
    let json = json!({ "input": input.name, "reps": [n1, n2], "isomorphic": iso });
    emit(
        args,
        &json,
        &format!("{}: {} and {} are {}isomorphic", input.name, n1, n2, if iso { "" } else { "NOT " }),
    );
    Ok(if iso { 0 } else { 2 })
}

fn cmd_glue(input: &Input, args: &CommonArgs) -> Result<u8, String> {
    let (n1, r1) = find_rep(input, args, 0)?;
    let (n2, r2) = find_rep(input, args, 1)?;
    if !glue::overlap_compatible(r1, r2).map_err(|e| e.to_string())? {
        emit(
            args,
            &json!({ "input": input.name, "reps": [n1, n2], "compatible": false }),
            &format!("{}: {} and {} are not overlap-compatible", input.name, n1, n2),
        );
        return Ok(2);
    }
    let obstruction = glue::gluing_obstruction(r1, r2).map_err(|e| e.to_string())?;
    match glue::glue(r1, r2).map_err(|e| e.to_string())? {
        GlueOutcome::Glued { rep, corner, ext1_basis } => {
            let json = json!({
                "input": input.name,
                "reps": [n1, n2],
                "compatible": true,
                "obstruction_vanishes": true,
                "glued": {
                    "dim": rep.dim(),
                    "matrices": rep.matrices().iter().map(matrix_json).collect::<Vec<_>>(),
                    "corner": vector_json(&corner),
                    "ext1_ambiguity_dim": ext1_basis.len(),
                },
            });
            emit(
                args,
                &json,
                &format!(
                    "{}: glued {} and {} into a {}-dimensional representation (Ext^1 ambiguity dim {})",
                    input.name, n1, n2, rep.dim(), ext1_basis.len()
                ),
            );
            Ok(0)
        }
        GlueOutcome::Obstructed(_) => {
            let json = json!({
                "input": input.name,
                "reps": [n1, n2],
                "compatible": true,
                "obstruction_vanishes": false,
                "obstruction_coords": vector_json(&obstruction.coords),
                "h2_dim": obstruction.h2_basis.len(),
            });
            emit(
                args,
                &json,
                &format!("{}: no glue; nonzero obstruction class in H^2 (dim {})", input.name, obstruction.h2_basis.len()),
            );
            Ok(2)
        }
    }
}

fn cmd_h2(input: &Input, args: &CommonArgs) -> Result<u8, String> {
    let d = glue::h2_dimension(&input.algebra);
    emit(
        args,
        &json!({ "input": input.name, "dim_h2": d }),
        &format!("{}: dim H^2(g, k) = {}", input.name, d),
    );
    Ok(0)
}
