//! JSON encodings of the library's values.
//!
//! A scalar is the array of its power-basis coordinates as reduced
//! rational strings (`"p"` or `"p/q"`). Elements and tensors carry a
//! `{"n", "m"}` context header; terms are listed in basis order.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::algebra::{Element, Monomial};
use crate::classify::{Automorphism, EquivalenceResult, Verdict};
use crate::coalgebra::TensorElement;
use crate::scalars::{format_rational, make_context, parse_rational, Context, Scalar, ScalarError};
use crate::star::{make_star_diag, make_star_matrix, StarError, StarStructure, Value, VerificationReport};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error("file is for n = {got}, expected n = {expected}")]
    WrongN { expected: usize, got: usize },
    #[error("monomial ({r}, {s}, {l}) is out of range for n = {n}")]
    MonomialRange { r: usize, s: usize, l: usize, n: usize },
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextJson {
    pub n: usize,
    pub m: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    r: usize,
    s: usize,
    l: usize,
    coeff: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementJson {
    context: ContextJson,
    terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum StarJson {
    Diag {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        context: Option<ContextJson>,
        alpha: Vec<String>,
        beta: Vec<String>,
    },
    Matrix2 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        context: Option<ContextJson>,
        a: Vec<Vec<String>>,
    },
    Raw {
        g: ElementJson,
        x: ElementJson,
        y: ElementJson,
    },
}

fn context_json(ctx: &Context) -> ContextJson {
    ContextJson { n: ctx.n(), m: ctx.m() }
}

fn resolve_context(c: ContextJson, default: &Context) -> Result<Context, JsonError> {
    if c.n != default.n() {
        return Err(JsonError::WrongN { expected: default.n(), got: c.n });
    }
    if c.m == default.m() {
        Ok(default.clone())
    } else {
        Ok(make_context(c.n, Some(c.m))?)
    }
}

pub fn scalar_to_json(c: &Scalar) -> Json {
    json!(scalar_strings(c))
}

fn scalar_strings(c: &Scalar) -> Vec<String> {
    c.coords().iter().map(format_rational).collect()
}

fn scalar_from_strings(ctx: &Context, coords: &[String]) -> Result<Scalar, JsonError> {
    let q = coords.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Scalar::from_coords(ctx, q)?)
}

fn monomial_json(m: &Monomial) -> Json {
    json!({"r": m.r, "s": m.s, "l": m.l})
}

fn element_json(e: &Element) -> ElementJson {
    ElementJson {
        context: context_json(e.context()),
        terms: e
            .terms()
            .map(|(m, c)| TermJson {
                r: m.r,
                s: m.s,
                l: m.l,
                coeff: scalar_strings(c),
            })
            .collect(),
    }
}

pub fn element_to_json(e: &Element) -> Json {
    serde_json::to_value(element_json(e)).expect("serializable")
}

fn element_from_json(raw: ElementJson, default: &Context) -> Result<Element, JsonError> {
    let ctx = resolve_context(raw.context, default)?;
    let n = ctx.n();
    let mut terms = Vec::with_capacity(raw.terms.len());
    for t in raw.terms {
        let m = Monomial::new(t.r, t.s, t.l);
        if !m.in_range(n) {
            return Err(JsonError::MonomialRange { r: t.r, s: t.s, l: t.l, n });
        }
        terms.push((m, scalar_from_strings(&ctx, &t.coeff)?));
    }
    Ok(Element::from_terms(&ctx, terms))
}

/// Reads an Element JSON document. The file's `n` must equal the
/// context's; a different conductor is honoured.
pub fn parse_element_json(text: &str, default: &Context) -> Result<Element, JsonError> {
    element_from_json(serde_json::from_str(text)?, default)
}

pub fn tensor_to_json(t: &TensorElement) -> Json {
    let terms: Vec<Json> = t
        .terms()
        .map(|((a, b), c)| json!({"left": monomial_json(a), "right": monomial_json(b), "coeff": scalar_to_json(c)}))
        .collect();
    json!({"context": context_json(t.context()), "terms": terms})
}

pub fn star_to_json(st: &StarStructure) -> Json {
    let context = Some(context_json(st.context()));
    let raw = match st {
        StarStructure::Diagonal { alpha, beta } => StarJson::Diag {
            context,
            alpha: scalar_strings(alpha),
            beta: scalar_strings(beta),
        },
        StarStructure::Matrix2 { a } => StarJson::Matrix2 {
            context,
            a: a.iter().flatten().map(scalar_strings).collect(),
        },
        StarStructure::Raw { g, x, y } => StarJson::Raw {
            g: element_json(g),
            x: element_json(x),
            y: element_json(y),
        },
    };
    serde_json::to_value(raw).expect("serializable")
}

/// Reads and validates a StarStructure JSON document. Diagonal and matrix
/// forms must satisfy their constructor checks.
pub fn parse_star_json(text: &str, default: &Context) -> Result<StarStructure, JsonError> {
    let raw: StarJson = serde_json::from_str(text)?;
    let ctx_of = |c: Option<ContextJson>| match c {
        Some(c) => resolve_context(c, default),
        None => Ok(default.clone()),
    };
    match raw {
        StarJson::Diag { context, alpha, beta } => {
            let ctx = ctx_of(context)?;
            Ok(make_star_diag(
                scalar_from_strings(&ctx, &alpha)?,
                scalar_from_strings(&ctx, &beta)?,
            )?)
        }
        StarJson::Matrix2 { context, a } => {
            let ctx = ctx_of(context)?;
            if a.len() != 4 {
                return Err(JsonError::Shape(format!("\"a\" needs 4 entries, got {}", a.len())));
            }
            let e = a
                .iter()
                .map(|c| scalar_from_strings(&ctx, c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(make_star_matrix([
                [e[0].clone(), e[1].clone()],
                [e[2].clone(), e[3].clone()],
            ])?)
        }
        StarJson::Raw { g, x, y } => Ok(StarStructure::raw(
            element_from_json(g, default)?,
            element_from_json(x, default)?,
            element_from_json(y, default)?,
        )?),
    }
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Scalar(s) => json!({"kind": "scalar", "value": scalar_to_json(s)}),
        Value::Element(e) => json!({"kind": "element", "value": element_to_json(e)}),
        Value::Tensor(t) => json!({"kind": "tensor", "value": tensor_to_json(t)}),
        Value::Text(s) => json!({"kind": "text", "value": s}),
    }
}

pub fn report_to_json(report: &VerificationReport) -> Json {
    let checks: Vec<Json> = report
        .checks
        .iter()
        .map(|c| {
            let mut obj = json!({"name": c.name, "pass": c.pass});
            if let Some(ce) = &c.counterexample {
                obj["counterexample"] = json!({
                    "monomials": ce.monomials.iter().map(monomial_json).collect::<Vec<_>>(),
                    "lhs": value_json(&ce.lhs),
                    "rhs": value_json(&ce.rhs),
                });
            }
            obj
        })
        .collect();
    json!({ "checks": checks })
}

pub fn automorphism_to_json(phi: &Automorphism) -> Json {
    let context = context_json(phi.context());
    match phi {
        Automorphism::Diagonal { lambda1, lambda2 } => json!({
            "kind": "diagonal",
            "context": context,
            "lambda1": scalar_to_json(lambda1),
            "lambda2": scalar_to_json(lambda2),
        }),
        Automorphism::Matrix2 { lambda } => json!({
            "kind": "matrix2",
            "context": context,
            "lambda": lambda.iter().flatten().map(scalar_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn equivalence_to_json(result: &EquivalenceResult) -> Json {
    let verdict = match result.verdict {
        Verdict::Equivalent => json!(true),
        Verdict::NotEquivalent => json!(false),
        Verdict::UnknownWithinBound => json!("unknown-within-bound"),
    };
    let mut obj = json!({
        "equivalent": verdict,
        "nullspace_dimension": result.nullspace_dimension,
    });
    if let Some(w) = &result.witness {
        obj["witness"] = automorphism_to_json(w);
    }
    obj
}

pub fn skew_to_json(basis: &[Element]) -> Json {
    json!({
        "dimension": basis.len(),
        "basis": basis.iter().map(element_to_json).collect::<Vec<_>>(),
    })
}
