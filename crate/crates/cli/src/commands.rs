//! Subcommands as functions from a loaded tower to a JSON value.

use fieldsep::embed::{hom_set, hom_set_over_base, SplittingContext};
use fieldsep::lattice::lattice_for;
use fieldsep::separability::{
    hom_count_criterion, l1l2_check, primitive_element, report_element, report_extension, separable_closure,
};
use fieldsep::subfield::Subfield;
use fieldsep::{AlgebraError, BaseField, Element, FactorConfig, Field};
use serde_json::{json, Value};
use thiserror::Error;

use crate::corpus;
use crate::parse::{LoadError, LoadedTower, TowerSpec};

#[derive(Debug, Clone)]
pub enum Command {
    Check { element: Option<String> },
    HomCount { over: Vec<String> },
    Embeddings,
    Primitive,
    Closure,
    Subfields,
    L1L2 { left: Vec<String>, right: Vec<String> },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Load(#[from] LoadError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// 1 for a violated check, 2 for bad input, 3 for an exceeded bound.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Algebra(AlgebraError::Resource(_) | AlgebraError::Capability(_) | AlgebraError::ContextTooSmall(_)) => 3,
            CliError::Algebra(AlgebraError::Internal(_)) => 1,
            _ => 2,
        }
    }
}

/// A command result; `violated` selects exit code 1.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub violated: bool,
}

impl Output {
    fn ok(json: Value) -> Self {
        Self { json, violated: false }
    }
}

pub fn run(loaded: &LoadedTower, cmd: &Command, cfg: &FactorConfig) -> Result<Output, CliError> {
    match loaded {
        LoadedTower::Finite(spec) => run_on(spec, cmd, cfg),
        LoadedTower::Function(spec) => run_on(spec, cmd, cfg),
    }
}

fn lookup<B: BaseField>(spec: &TowerSpec<B>, names: &[String]) -> Result<Vec<Element<B>>, CliError> {
    names
        .iter()
        .map(|n| spec.element(n).ok_or_else(|| CliError::Usage(format!("unknown element `{n}`"))))
        .collect()
}

fn gens_json<B: BaseField>(l: &Subfield<B>) -> Value {
    let e = l.ambient();
    Value::from(l.generators().iter().map(|g| e.format_elem(g)).collect::<Vec<_>>())
}

fn run_on<B: BaseField>(spec: &TowerSpec<B>, cmd: &Command, cfg: &FactorConfig) -> Result<Output, CliError> {
    let e = spec.top();
    let ctx = SplittingContext::new(e, cfg)?;
    let json = match cmd {
        Command::Check { element: None } => serde_json::to_value(report_extension(e, &ctx)?).unwrap(),
        Command::Check { element: Some(name) } => {
            let a = lookup(spec, std::slice::from_ref(name))?.remove(0);
            serde_json::to_value(report_element(e, &a, &ctx)?).unwrap()
        }
        Command::HomCount { over } if over.is_empty() => {
            let h = hom_count_criterion(e, &ctx)?;
            json!({"schema": 1, "over": [], "degree": h.degree, "hom_count": h.hom_count, "separable": h.separable()})
        }
        Command::HomCount { over } => {
            let l = Subfield::generated(e, &lookup(spec, over)?);
            let count = hom_set(e, &l, &ctx)?.len();
            let degree = e.degree() / l.degree();
            json!({"schema": 1, "over": gens_json(&l), "degree": degree, "hom_count": count, "separable": count == degree})
        }
        Command::Embeddings => {
            let n = ctx.field();
            let homs = hom_set_over_base(e, &ctx)?;
            let names: Vec<String> = e.generator_names();
            let list: Vec<Value> = homs
                .iter()
                .map(|h| {
                    let mut m = serde_json::Map::new();
                    for (name, img) in names.iter().zip(h.images()) {
                        m.insert(name.clone(), Value::from(n.format_elem(img)));
                    }
                    Value::Object(m)
                })
                .collect();
            json!({"schema": 1, "splitting_field": n.describe(), "degree": e.degree(), "count": homs.len(), "embeddings": list})
        }
        Command::Primitive => {
            let g = primitive_element(e, &ctx)?;
            json!({
                "schema": 1,
                "element": e.format_elem(&g.element),
                "minimal_polynomial": g.minpoly.to_string(),
                "candidates_tried": g.candidates_tried,
            })
        }
        Command::Closure => {
            let c = separable_closure(e);
            json!({
                "schema": 1,
                "generators": gens_json(&c.subfield),
                "closure_degree": c.degree,
                "inseparable_degree": c.inseparable_degree,
            })
        }
        Command::Subfields => {
            let lattice = lattice_for(e, &ctx)?;
            lattice.validate()?;
            let nodes: Vec<Value> =
                lattice.nodes().iter().map(|l| json!({"degree": l.degree(), "generators": gens_json(l)})).collect();
            json!({"schema": 1, "completeness": lattice.completeness(), "count": nodes.len(), "nodes": nodes})
        }
        Command::L1L2 { left, right } => {
            let l1 = Subfield::generated(e, &lookup(spec, left)?);
            let l2 = Subfield::generated(e, &lookup(spec, right)?);
            let r = l1l2_check(&l1, &l2, &ctx)?;
            let separable = hom_count_criterion(e, &ctx)?.separable();
            let out = json!({
                "schema": 1,
                "left": gens_json(&l1),
                "right": gens_json(&l2),
                "containment": r.containment,
                "implication": r.implication,
                "equivalent": r.equivalent(),
                "separable": separable,
            });
            return Ok(Output { json: out, violated: separable && !r.equivalent() });
        }
    };
    Ok(Output::ok(json))
}

/// Runs the builtin corpus.
pub fn verify(cfg: &FactorConfig) -> Output {
    let results = corpus::run_all(cfg);
    let passed = results.iter().filter(|r| r.pass).count();
    let json = json!({
        "schema": 1,
        "corpus": "builtin",
        "passed": passed,
        "total": results.len(),
        "criteria": results,
    });
    Output { json, violated: passed != results.len() }
}

/// One line per criterion, then a summary line.
pub fn render_verify(value: &Value) -> String {
    let mut out = String::new();
    for c in value["criteria"].as_array().into_iter().flatten() {
        let mark = if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{mark} {:>2} {}: {}\n",
            c["id"],
            c["name"].as_str().unwrap_or_default(),
            c["detail"].as_str().unwrap_or_default()
        ));
    }
    out.push_str(&format!("{} of {} criteria pass\n", value["passed"], value["total"]));
    out
}

/// Human-readable rendering: `key: value` lines, nested by indentation.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn render(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(m) => {
            for (k, v) in m {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                out.push_str(&format!("{pad}[{i}]\n"));
                render(v, indent + 1, out);
            }
        }
        v => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}
