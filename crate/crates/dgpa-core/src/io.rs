//! Input documents, canonical serialization, and the machine-readable
//! report format used by the CLI and the C bindings.
//!
//! Algebras are JSON documents whose expressions use the element display
//! syntax; named rational parameters are substituted at parse time so one
//! fixture serves a whole family of instantiations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{DegreeOf, Element, GenId, GeneratorSet, Word};
use crate::dg::{
    AxiomCheck, AxiomReport, BracketSpec, CheckStatus, Counterexample, DGPAlgebra,
    DgPresentation, DifferentialSpec,
};
use crate::error::EngineError;
use crate::finite::{FiniteDGPA, TableVec};
use crate::lie::{DGLieAlgebra, LieVec};
use crate::parse::ExprParser;
use crate::presentation::{Presentation, TruncationParams};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GenEntry {
    pub name: String,
    pub degree: i64,
}

/// The algebra input schema.
#[derive(Clone, Debug, Serialize, Deserialize, Default, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub generators: Vec<GenEntry>,
    #[serde(default)]
    pub graded_commutative: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bracket: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

/// Finite-dimensional Lie algebra input: brackets and differential are
/// linear expressions in the basis names.
#[derive(Clone, Debug, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct LieDocument {
    pub basis: Vec<GenEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub brackets: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

/// Finite-table DGPA input for the basis-indexed envelope.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteDocument {
    pub basis: Vec<GenEntry>,
    pub unit: String,
    #[serde(default)]
    pub multiplication: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bracket: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
}

/// Module input: tables keyed by "algebra-word,module-name".
#[derive(Clone, Debug, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub basis: Vec<GenEntry>,
    #[serde(default)]
    pub action: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bracket_action: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn build_generators(entries: &[GenEntry]) -> Result<GeneratorSet, EngineError> {
    let mut gens = GeneratorSet::default();
    for e in entries {
        if !valid_name(&e.name) {
            return Err(EngineError::BadDocument(format!(
                "generator name {:?} is not an identifier",
                e.name
            )));
        }
        gens.push(&e.name, e.degree)?;
    }
    Ok(gens)
}

fn resolve_parameters(
    declared: &BTreeMap<String, String>,
    overrides: &BTreeMap<String, Scalar>,
) -> Result<BTreeMap<String, Scalar>, EngineError> {
    let mut params = BTreeMap::new();
    for (k, v) in declared {
        if !valid_name(k) {
            return Err(EngineError::BadDocument(format!(
                "parameter name {k:?} is not an identifier"
            )));
        }
        let val: Scalar = v
            .parse()
            .map_err(|e| EngineError::BadDocument(format!("parameter {k}: {e}")))?;
        params.insert(k.clone(), val);
    }
    for (k, v) in overrides {
        if !params.contains_key(k) {
            return Err(EngineError::BadDocument(format!(
                "--set {k} does not match a declared parameter"
            )));
        }
        params.insert(k.clone(), v.clone());
    }
    Ok(params)
}

fn split_pair(key: &str) -> Result<(&str, &str), EngineError> {
    key.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| EngineError::BadDocument(format!("key {key:?} must be \"a,b\"")))
}

/// Parses an algebra document into an (unverified) DGPA candidate.
pub fn algebra_from_document(
    doc: &InputDocument,
    label: &str,
    overrides: &BTreeMap<String, Scalar>,
) -> Result<DGPAlgebra, EngineError> {
    let gens = build_generators(&doc.generators)?;
    let params = resolve_parameters(&doc.parameters, overrides)?;
    let parser = ExprParser::new(&gens, &params);

    let mut relations = Vec::new();
    for text in &doc.relations {
        relations.push(parser.parse(text)?);
    }
    let presentation = Presentation::new(label, gens.clone(), relations, doc.graded_commutative)?;

    let mut diff = DifferentialSpec::new();
    for (name, expr) in &doc.differential {
        let id = gens
            .lookup(name)
            .ok_or_else(|| EngineError::BadDocument(format!("differential of unknown generator {name:?}")))?;
        diff.set(&gens, id, parser.parse(expr)?)?;
    }
    let mut bracket = BracketSpec::new();
    for (key, expr) in &doc.bracket {
        let (a, b) = split_pair(key)?;
        let ia = gens
            .lookup(a)
            .ok_or_else(|| EngineError::BadDocument(format!("bracket of unknown generator {a:?}")))?;
        let ib = gens
            .lookup(b)
            .ok_or_else(|| EngineError::BadDocument(format!("bracket of unknown generator {b:?}")))?;
        bracket.set(&gens, ia, ib, parser.parse(expr)?)?;
    }
    Ok(DGPAlgebra::new(presentation, diff, bracket))
}

pub fn parse_algebra(
    text: &str,
    label: &str,
    overrides: &BTreeMap<String, Scalar>,
) -> Result<(DGPAlgebra, InputDocument), EngineError> {
    let doc: InputDocument = serde_json::from_str(text)
        .map_err(|e| EngineError::BadDocument(e.to_string()))?;
    let alg = algebra_from_document(&doc, label, overrides)?;
    Ok((alg, doc))
}

fn linear_vec(
    gens: &GeneratorSet,
    parser: &ExprParser,
    expr: &str,
) -> Result<Vec<Scalar>, EngineError> {
    let e = parser.parse(expr)?;
    let mut v = vec![Scalar::zero(); gens.len()];
    for (w, c) in e.terms() {
        if w.len() != 1 {
            return Err(EngineError::BadDocument(format!(
                "expression {expr:?} must be linear in the basis"
            )));
        }
        v[w.letters[0].0 as usize] = c.clone();
    }
    Ok(v)
}

pub fn parse_lie(
    text: &str,
    overrides: &BTreeMap<String, Scalar>,
) -> Result<DGLieAlgebra, EngineError> {
    let doc: LieDocument =
        serde_json::from_str(text).map_err(|e| EngineError::BadDocument(e.to_string()))?;
    let gens = build_generators(&doc.basis)?;
    let params = resolve_parameters(&doc.parameters, overrides)?;
    let parser = ExprParser::new(&gens, &params);
    let mut l = DGLieAlgebra::new(gens.clone());
    for (key, expr) in &doc.brackets {
        let (a, b) = split_pair(key)?;
        let ia = gens
            .lookup(a)
            .ok_or_else(|| EngineError::BadDocument(format!("bracket of unknown basis element {a:?}")))?;
        let ib = gens
            .lookup(b)
            .ok_or_else(|| EngineError::BadDocument(format!("bracket of unknown basis element {b:?}")))?;
        let v: LieVec = linear_vec(&gens, &parser, expr)?;
        l.set_bracket(ia, ib, v)?;
    }
    for (name, expr) in &doc.differential {
        let id = gens
            .lookup(name)
            .ok_or_else(|| EngineError::BadDocument(format!("differential of unknown basis element {name:?}")))?;
        let v: LieVec = linear_vec(&gens, &parser, expr)?;
        l.set_diff(id, v)?;
    }
    Ok(l)
}

pub fn parse_finite(text: &str) -> Result<FiniteDGPA, EngineError> {
    let doc: FiniteDocument =
        serde_json::from_str(text).map_err(|e| EngineError::BadDocument(e.to_string()))?;
    let gens = build_generators(&doc.basis)?;
    let params = BTreeMap::new();
    let parser = ExprParser::new(&gens, &params);
    let unit: TableVec = linear_vec(&gens, &parser, &doc.unit)?;
    let mut a = FiniteDGPA::new(gens.clone(), unit)?;
    for (key, expr) in &doc.multiplication {
        let (x, y) = split_pair(key)?;
        let ix = gens
            .lookup(x)
            .ok_or_else(|| EngineError::BadDocument(format!("unknown basis element {x:?}")))?;
        let iy = gens
            .lookup(y)
            .ok_or_else(|| EngineError::BadDocument(format!("unknown basis element {y:?}")))?;
        a.set_mult(ix.0, iy.0, linear_vec(&gens, &parser, expr)?)?;
    }
    for (key, expr) in &doc.bracket {
        let (x, y) = split_pair(key)?;
        let ix = gens.lookup(x).ok_or_else(|| {
            EngineError::BadDocument(format!("unknown basis element {x:?}"))
        })?;
        let iy = gens.lookup(y).ok_or_else(|| {
            EngineError::BadDocument(format!("unknown basis element {y:?}"))
        })?;
        a.set_bracket(ix.0, iy.0, linear_vec(&gens, &parser, expr)?)?;
    }
    for (name, expr) in &doc.differential {
        let id = gens.lookup(name).ok_or_else(|| {
            EngineError::BadDocument(format!("unknown basis element {name:?}"))
        })?;
        a.set_diff(id.0, linear_vec(&gens, &parser, expr)?)?;
    }
    Ok(a)
}

/// Canonical serialization: generators by id, relations sorted by degree
/// and leading word, all expressions in display form. Reparsing yields the
/// same presentation.
pub fn serialize_presentation(
    p: &Presentation,
    diff: Option<&DifferentialSpec>,
    bracket: Option<&BracketSpec>,
) -> InputDocument {
    let gens = &p.gens;
    let mut relations: Vec<&Element> = p.relations.iter().collect();
    relations.sort_by(|a, b| {
        let lead = |e: &Element| -> Option<Word> {
            e.terms()
                .map(|(w, _)| w.clone())
                .max_by(|x, y| gens.cmp_words(x, y))
        };
        match (lead(a), lead(b)) {
            (Some(wa), Some(wb)) => gens
                .cmp_words(&wa, &wb)
                .then_with(|| a.display(gens).to_string().cmp(&b.display(gens).to_string())),
            _ => std::cmp::Ordering::Equal,
        }
    });
    InputDocument {
        generators: gens
            .iter()
            .map(|g| GenEntry {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect(),
        graded_commutative: p.graded_commutative,
        relations: relations
            .iter()
            .map(|r| r.display(gens).to_string())
            .collect(),
        differential: diff
            .map(|d| {
                d.images()
                    .map(|(g, img)| (gens.name(*g).to_string(), img.display(gens).to_string()))
                    .collect()
            })
            .unwrap_or_default(),
        bracket: bracket
            .map(|b| {
                b.images()
                    .map(|((x, y), img)| {
                        (
                            format!("{},{}", gens.name(*x), gens.name(*y)),
                            img.display(gens).to_string(),
                        )
                    })
                    .collect()
            })
            .unwrap_or_default(),
        parameters: BTreeMap::new(),
    }
}

pub fn serialize_dg(p: &DgPresentation) -> InputDocument {
    serialize_presentation(&p.presentation, Some(&p.diff), None)
}

pub fn serialize_lie(l: &DGLieAlgebra) -> LieDocument {
    let gens = &l.basis;
    let mut brackets = BTreeMap::new();
    for a in 0..l.dim() as u32 {
        for b in a..l.dim() as u32 {
            let v = l.bracket_basis(GenId(a), GenId(b));
            let e = l.vec_to_element(&v, 0);
            if !e.is_zero() {
                brackets.insert(
                    format!("{},{}", gens.name(GenId(a)), gens.name(GenId(b))),
                    e.display(gens).to_string(),
                );
            }
        }
    }
    let mut differential = BTreeMap::new();
    for g in 0..l.dim() as u32 {
        let e = l.vec_to_element(l.diff_basis(GenId(g)), 0);
        if !e.is_zero() {
            differential.insert(gens.name(GenId(g)).to_string(), e.display(gens).to_string());
        }
    }
    LieDocument {
        basis: gens
            .iter()
            .map(|g| GenEntry {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect(),
        brackets,
        differential,
        parameters: BTreeMap::new(),
    }
}

/// The report emitted by every subcommand. Exit status 0 iff `ok`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub window: WindowEcho,
    pub checks: Vec<AxiomCheck>,
    pub output: Value,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WindowEcho {
    pub max_degree: i64,
    pub max_length: usize,
    #[serde(skip_serializing_if = "is_zero_i64")]
    pub min_degree: i64,
}

fn is_zero_i64(v: &i64) -> bool {
    *v == 0
}

impl Report {
    pub fn new(command: &str, t: &TruncationParams, checks: Vec<AxiomCheck>, output: Value) -> Self {
        let ok = checks.iter().all(|c| c.status == CheckStatus::Pass);
        Report {
            command: command.to_string(),
            window: WindowEcho {
                max_degree: t.max_degree,
                max_length: t.max_word_length,
                min_degree: t.min_degree,
            },
            checks,
            output,
            ok,
        }
    }

    pub fn from_axiom_report(command: &str, r: AxiomReport, output: Value) -> Self {
        let window = r.window;
        Report::new(command, &window, r.checks, output)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} (window: degrees <= {}, words <= {})\n",
            self.command, self.window.max_degree, self.window.max_length
        ));
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
            };
            out.push_str(&format!("  [{status}] {}\n", c.name));
            for ce in &c.counterexamples {
                out.push_str(&format!(
                    "        on ({}): expected {}, got {}\n",
                    ce.inputs.join(", "),
                    ce.expected,
                    ce.got
                ));
            }
        }
        if !self.output.is_null() {
            out.push_str(&format!(
                "output: {}\n",
                serde_json::to_string_pretty(&self.output).unwrap()
            ));
        }
        out.push_str(if self.ok { "ok\n" } else { "FAILED\n" });
        out
    }
}

/// One named fact with pass/fail, for demo-style composite runs.
pub fn fact(name: &str, pass: bool, detail: Option<Counterexample>) -> AxiomCheck {
    AxiomCheck {
        name: name.to_string(),
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        counterexamples: detail.into_iter().collect(),
    }
}

/// Graded dimensions as an ordered JSON map.
pub fn dims_to_json(dims: &BTreeMap<i64, usize>, exactness: crate::presentation::Exactness) -> Value {
    serde_json::json!({
        "dims": dims.iter().map(|(d, n)| serde_json::json!({"degree": d, "dim": n})).collect::<Vec<_>>(),
        "exactness": exactness,
    })
}

/// A parsed element must be homogeneous to enter relation lists; reused by
/// the CLI to give position-annotated feedback.
pub fn require_homogeneous(
    gens: &GeneratorSet,
    e: &Element,
    what: &str,
) -> Result<(), EngineError> {
    match e.degree_of(gens) {
        DegreeOf::Mixed => Err(EngineError::InhomogeneousRelation {
            label: what.to_string(),
        }),
        _ => Ok(()),
    }
}
