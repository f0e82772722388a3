//! Differential and Poisson structure on a presentation.
//!
//! The differential is given on generators and extended to words by the
//! graded Leibniz rule; the bracket is given on generator pairs and extended
//! by biderivation in the right slot plus graded antisymmetry. The axiom
//! checker verifies the full set of compatibility laws on in-window basis
//! words and reports concrete counterexamples on failure.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{
    koszul_pair_sign, DegreeOf, Element, GenId, GeneratorSet, Word,
};
use crate::error::EngineError;
use crate::presentation::{NormalFormTable, Presentation, TruncationParams};
use crate::scalar::Scalar;

/// d on generators; each image is homogeneous of degree |g| + 1 or zero.
#[derive(Clone, Debug, Default)]
pub struct DifferentialSpec {
    images: BTreeMap<GenId, Element>,
}

impl DifferentialSpec {
    pub fn new() -> Self {
        DifferentialSpec::default()
    }

    pub fn set(
        &mut self,
        gens: &GeneratorSet,
        g: GenId,
        image: Element,
    ) -> Result<(), EngineError> {
        gens.check_element(&image)?;
        match image.degree_of(gens) {
            DegreeOf::Zero => {
                self.images.remove(&g);
                Ok(())
            }
            DegreeOf::Homogeneous(d) if d == gens.degree(g) + 1 => {
                self.images.insert(g, image);
                Ok(())
            }
            other => Err(EngineError::DegreeMismatch {
                what: format!("d({})", gens.name(g)),
                expected: gens.degree(g) + 1,
                got: format!("{other:?}"),
            }),
        }
    }

    pub fn image(&self, g: GenId) -> Element {
        self.images.get(&g).cloned().unwrap_or_else(Element::zero)
    }

    pub fn images(&self) -> impl Iterator<Item = (&GenId, &Element)> {
        self.images.iter()
    }

    /// Graded Leibniz extension to an arbitrary element (not normal-formed).
    pub fn apply_raw(&self, gens: &GeneratorSet, e: &Element) -> Element {
        e.map_words(|w| {
            let mut out = Element::zero();
            let mut prefix_deg = 0i64;
            for (i, id) in w.letters.iter().enumerate() {
                let img = self.image(*id);
                if !img.is_zero() {
                    let left = Element::from_term(
                        Word::from_ids(&w.letters[..i]),
                        if prefix_deg % 2 == 0 {
                            Scalar::one()
                        } else {
                            Scalar::from_int(-1)
                        },
                    );
                    let right = Element::from_term(Word::from_ids(&w.letters[i + 1..]), Scalar::one());
                    out = out.add(&left.mul(&img).mul(&right));
                }
                prefix_deg += gens.degree(*id);
            }
            out
        })
    }
}

/// {,} on ordered generator pairs (a <= b); unlisted pairs are zero and the
/// transposed values follow from graded antisymmetry.
#[derive(Clone, Debug, Default)]
pub struct BracketSpec {
    images: BTreeMap<(GenId, GenId), Element>,
}

impl BracketSpec {
    pub fn new() -> Self {
        BracketSpec::default()
    }

    pub fn set(
        &mut self,
        gens: &GeneratorSet,
        a: GenId,
        b: GenId,
        image: Element,
    ) -> Result<(), EngineError> {
        gens.check_element(&image)?;
        let (key, image) = if a <= b {
            ((a, b), image)
        } else {
            // {b,a} = -(-1)^{|a||b|} {a,b}
            let sign = koszul_pair_sign(gens.degree(a), gens.degree(b));
            ((b, a), image.scale(&-&sign))
        };
        let expected = gens.degree(a) + gens.degree(b);
        match image.degree_of(gens) {
            DegreeOf::Zero => {
                self.images.remove(&key);
                Ok(())
            }
            DegreeOf::Homogeneous(d) if d == expected => {
                self.images.insert(key, image);
                Ok(())
            }
            other => Err(EngineError::DegreeMismatch {
                what: format!("{{{},{}}}", gens.name(a), gens.name(b)),
                expected,
                got: format!("{other:?}"),
            }),
        }
    }

    /// Bracket of two single generators, antisymmetry included.
    pub fn pair(&self, gens: &GeneratorSet, a: GenId, b: GenId) -> Element {
        if a <= b {
            self.images.get(&(a, b)).cloned().unwrap_or_else(Element::zero)
        } else {
            let sign = koszul_pair_sign(gens.degree(a), gens.degree(b));
            self.images
                .get(&(b, a))
                .map(|e| e.scale(&-&sign))
                .unwrap_or_else(Element::zero)
        }
    }

    pub fn images(&self) -> impl Iterator<Item = (&(GenId, GenId), &Element)> {
        self.images.iter()
    }
}

/// A presentation with differential and bracket data: (A, ., {,}, d).
/// `verified` records the window a successful axiom check covered; a value
/// constructed but never checked is explicitly unverified.
#[derive(Clone, Debug)]
pub struct DGPAlgebra {
    pub presentation: Presentation,
    pub diff: DifferentialSpec,
    pub bracket: BracketSpec,
    pub verified: Option<TruncationParams>,
}

impl DGPAlgebra {
    pub fn new(
        presentation: Presentation,
        diff: DifferentialSpec,
        bracket: BracketSpec,
    ) -> Self {
        DGPAlgebra {
            presentation,
            diff,
            bracket,
            verified: None,
        }
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.presentation.gens
    }

    pub fn require_verified(&self) -> Result<(), EngineError> {
        if self.verified.is_some() {
            Ok(())
        } else {
            Err(EngineError::Unverified)
        }
    }

    /// d extended by Leibniz, then normal-formed.
    pub fn apply_d(
        &self,
        table: &NormalFormTable,
        e: &Element,
    ) -> Result<Element, EngineError> {
        let raw = self.diff.apply_raw(self.gens(), e);
        table.normal_form(self.gens(), &raw)
    }

    /// Runs the full axiom battery and, on success, marks the algebra
    /// verified for that window.
    pub fn verify(&mut self, t: &TruncationParams) -> Result<AxiomReport, EngineError> {
        let report = check_axioms(self, t)?;
        if report.ok() {
            self.verified = Some(*t);
        }
        Ok(report)
    }
}

/// Bracket evaluator with a memo per pair of words; one instance is shared
/// across an axiom run so Jacobi triples do not re-derive pair brackets.
pub struct BracketEval<'a> {
    alg: &'a DGPAlgebra,
    table: &'a NormalFormTable,
    memo: HashMap<(Word, Word), Element>,
}

impl<'a> BracketEval<'a> {
    pub fn new(alg: &'a DGPAlgebra, table: &'a NormalFormTable) -> Self {
        BracketEval {
            alg,
            table,
            memo: HashMap::new(),
        }
    }

    /// {e, f}, bilinear over the word brackets, normal-formed.
    pub fn bracket(&mut self, e: &Element, f: &Element) -> Result<Element, EngineError> {
        let mut out = Element::zero();
        for (wa, ca) in e.terms() {
            for (wb, cb) in f.terms() {
                let wb_elem = self.word_bracket(wa, wb)?;
                out = out.add(&wb_elem.scale(&(ca * cb)));
            }
        }
        self.table.normal_form(self.alg.gens(), &out)
    }

    fn word_bracket(&mut self, a: &Word, b: &Word) -> Result<Element, EngineError> {
        if a.is_empty() || b.is_empty() {
            return Ok(Element::zero());
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let gens = self.alg.gens();
        let result = if b.len() > 1 {
            // {a, g.rest} = {a,g}.rest + (-1)^{|a||g|} g.{a,rest}
            let g = b.letters[0];
            let rest = Word::from_ids(&b.letters[1..]);
            let first = self.word_bracket(a, &Word::single(g))?;
            let lhs = first.mul(&Element::from_term(rest.clone(), Scalar::one()));
            let sign = koszul_pair_sign(gens.word_degree(a), gens.degree(g));
            let second = self.word_bracket(a, &rest)?;
            let rhs = Element::from_term(Word::single(g), sign).mul(&second);
            lhs.add(&rhs)
        } else if a.len() > 1 {
            // flip by antisymmetry, then recurse on the right slot
            let sign = koszul_pair_sign(gens.word_degree(a), gens.word_degree(b));
            let flipped = self.word_bracket(b, a)?;
            flipped.scale(&-&sign)
        } else {
            self.alg.bracket.pair(gens, a.letters[0], b.letters[0])
        };
        let result = self.table.normal_form(gens, &result)?;
        self.memo.insert(key, result.clone());
        Ok(result)
    }
}

/// Convenience entry point building a fresh evaluator.
pub fn apply_bracket(
    alg: &DGPAlgebra,
    table: &NormalFormTable,
    e: &Element,
    f: &Element,
) -> Result<Element, EngineError> {
    BracketEval::new(alg, table).bracket(e, f)
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub status: CheckStatus,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub window: TruncationParams,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failing(&self) -> Vec<&AxiomCheck> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }
}

const MAX_COUNTEREXAMPLES: usize = 5;

/// A tuple whose computation escapes the window is skipped: every verdict
/// is a claim about the window only.
fn windowed<T>(r: Result<T, EngineError>) -> Result<Option<T>, EngineError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(EngineError::OutOfWindow(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

struct CheckCollector {
    name: &'static str,
    counterexamples: Vec<Counterexample>,
}

impl CheckCollector {
    fn new(name: &'static str) -> Self {
        CheckCollector {
            name,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, inputs: Vec<String>, expected: String, got: String) {
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample {
                inputs,
                expected,
                got,
            });
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            name: self.name.to_string(),
            status: if self.counterexamples.is_empty() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            counterexamples: self.counterexamples,
        }
    }
}

/// Verifies every DGPA axiom on the in-window normal-form basis words.
/// Failures become report entries with counterexamples, never errors.
pub fn check_axioms(
    alg: &DGPAlgebra,
    t: &TruncationParams,
) -> Result<AxiomReport, EngineError> {
    let gens = alg.gens();
    let table = alg.presentation.build_table(t)?;
    let mut eval = BracketEval::new(alg, &table);

    let basis: Vec<Word> = table.all_basis_words();
    let deg = |w: &Word| gens.word_degree(w);
    let in_window = |d: i64| d >= t.min_degree.min(0) && d <= t.max_degree;
    let len_ok = |l: usize| l <= t.max_word_length;
    let show = |e: &Element| e.display(gens).to_string();
    let show_w = |w: &Word| w.display(gens).to_string();

    let mut checks: Vec<AxiomCheck> = Vec::new();

    // graded commutativity of the product
    {
        let mut c = CheckCollector::new("graded-commutativity");
        for a in &basis {
            for b in &basis {
                if !in_window(deg(a) + deg(b)) || !len_ok(a.len() + b.len()) {
                    continue;
                }
                let ab = Element::from_term(a.concat(b), Scalar::one());
                let ba = Element::from_term(b.concat(a), koszul_pair_sign(deg(a), deg(b)));
                let Some(diff) = windowed(table.normal_form(gens, &ab.sub(&ba)))? else {
                    continue;
                };
                if !diff.is_zero() {
                    c.record(
                        vec![show_w(a), show_w(b)],
                        "a.b - (-1)^{|a||b|} b.a = 0".into(),
                        show(&diff),
                    );
                }
            }
        }
        checks.push(c.finish());
    }

    // graded antisymmetry of the bracket
    {
        let mut c = CheckCollector::new("graded-antisymmetry");
        for a in &basis {
            for b in &basis {
                if !in_window(deg(a) + deg(b)) {
                    continue;
                }
                let ea = Element::from_term(a.clone(), Scalar::one());
                let eb = Element::from_term(b.clone(), Scalar::one());
                let pair = (|| -> Result<Element, EngineError> {
                    let lhs = eval.bracket(&ea, &eb)?;
                    let rhs = eval
                        .bracket(&eb, &ea)?
                        .scale(&-&koszul_pair_sign(deg(a), deg(b)));
                    table.normal_form(gens, &lhs.sub(&rhs))
                })();
                let Some(diff) = windowed(pair)? else { continue };
                if !diff.is_zero() {
                    c.record(
                        vec![show_w(a), show_w(b)],
                        "{a,b} = -(-1)^{|a||b|} {b,a}".into(),
                        show(&diff),
                    );
                }
            }
        }
        checks.push(c.finish());
    }

    // graded Jacobi identity
    {
        let mut c = CheckCollector::new("graded-jacobi");
        for a in &basis {
            for b in &basis {
                for z in &basis {
                    if !in_window(deg(a) + deg(b) + deg(z)) {
                        continue;
                    }
                    let ea = Element::from_term(a.clone(), Scalar::one());
                    let eb = Element::from_term(b.clone(), Scalar::one());
                    let ez = Element::from_term(z.clone(), Scalar::one());
                    let triple = (|| -> Result<Element, EngineError> {
                        let bz = eval.bracket(&eb, &ez)?;
                        let lhs = eval.bracket(&ea, &bz)?;
                        let ab = eval.bracket(&ea, &eb)?;
                        let t1 = eval.bracket(&ab, &ez)?;
                        let az = eval.bracket(&ea, &ez)?;
                        let t2 = eval
                            .bracket(&eb, &az)?
                            .scale(&koszul_pair_sign(deg(a), deg(b)));
                        table.normal_form(gens, &lhs.sub(&t1).sub(&t2))
                    })();
                    let Some(diff) = windowed(triple)? else { continue };
                    if !diff.is_zero() {
                        c.record(
                            vec![show_w(a), show_w(b), show_w(z)],
                            "{a,{b,c}} = {{a,b},c} + (-1)^{|a||b|}{b,{a,c}}".into(),
                            show(&diff),
                        );
                    }
                }
            }
        }
        checks.push(c.finish());
    }

    // bracket respects the ideal: {g, r} = 0 mod I for relations r
    {
        let mut c = CheckCollector::new("bracket-ideal-consistency");
        for g in gens.iter() {
            let eg = Element::generator(g.id);
            for r in &alg.presentation.relations {
                if let DegreeOf::Homogeneous(dr) = r.degree_of(gens) {
                    if !in_window(g.degree + dr) {
                        continue;
                    }
                    let Some(br) = windowed(eval.bracket(&eg, r))? else {
                        continue;
                    };
                    if !br.is_zero() {
                        c.record(
                            vec![g.name.clone(), show(r)],
                            "{generator, relation} = 0 mod I".into(),
                            show(&br),
                        );
                    }
                }
            }
        }
        checks.push(c.finish());
    }

    // d^2 = 0
    {
        let mut c = CheckCollector::new("differential-squares-to-zero");
        for a in &basis {
            if !in_window(deg(a) + 2) {
                continue;
            }
            let e = Element::from_term(a.clone(), Scalar::one());
            let dd = (|| -> Result<Element, EngineError> {
                let d1 = alg.apply_d(&table, &e)?;
                alg.apply_d(&table, &d1)
            })();
            let Some(d2) = windowed(dd)? else { continue };
            if !d2.is_zero() {
                c.record(
                    vec![show_w(a)],
                    "d(d(a)) = 0".into(),
                    format!("d^2({}) = {}", show_w(a), show(&d2)),
                );
            }
        }
        checks.push(c.finish());
    }

    // d of every relation stays in the ideal
    {
        let mut c = CheckCollector::new("differential-preserves-ideal");
        for r in &alg.presentation.relations {
            if let DegreeOf::Homogeneous(dr) = r.degree_of(gens) {
                if !in_window(dr + 1) {
                    continue;
                }
                let Some(dr_elem) = windowed(alg.apply_d(&table, r))? else {
                    continue;
                };
                if !dr_elem.is_zero() {
                    c.record(
                        vec![show(r)],
                        "d(relation) = 0 mod I".into(),
                        show(&dr_elem),
                    );
                }
            }
        }
        checks.push(c.finish());
    }

    // graded Leibniz rule for the product
    {
        let mut c = CheckCollector::new("leibniz-product");
        for a in &basis {
            for b in &basis {
                if !in_window(deg(a) + deg(b) + 1) || !len_ok(a.len() + b.len()) {
                    continue;
                }
                let ea = Element::from_term(a.clone(), Scalar::one());
                let eb = Element::from_term(b.clone(), Scalar::one());
                let check = (|| -> Result<Element, EngineError> {
                    let prod = table.normal_form(gens, &ea.mul(&eb))?;
                    let lhs = alg.apply_d(&table, &prod)?;
                    let da = alg.apply_d(&table, &ea)?;
                    let db = alg.apply_d(&table, &eb)?;
                    let rhs = table.normal_form(
                        gens,
                        &da.mul(&eb)
                            .add(&ea.mul(&db).scale(&parity_sign(deg(a)))),
                    )?;
                    Ok(lhs.sub(&rhs))
                })();
                let Some(diff) = windowed(check)? else { continue };
                if !diff.is_zero() {
                    c.record(
                        vec![show_w(a), show_w(b)],
                        "d(a.b) = d(a).b + (-1)^{|a|} a.d(b)".into(),
                        show(&diff),
                    );
                }
            }
        }
        checks.push(c.finish());
    }

    // graded Leibniz rule for the bracket
    {
        let mut c = CheckCollector::new("leibniz-bracket");
        for a in &basis {
            for b in &basis {
                if !in_window(deg(a) + deg(b) + 1) {
                    continue;
                }
                let ea = Element::from_term(a.clone(), Scalar::one());
                let eb = Element::from_term(b.clone(), Scalar::one());
                let check = (|| -> Result<Element, EngineError> {
                    let br = eval.bracket(&ea, &eb)?;
                    let lhs = alg.apply_d(&table, &br)?;
                    let da = alg.apply_d(&table, &ea)?;
                    let db = alg.apply_d(&table, &eb)?;
                    let t1 = eval.bracket(&da, &eb)?;
                    let t2 = eval.bracket(&ea, &db)?.scale(&parity_sign(deg(a)));
                    table.normal_form(gens, &lhs.sub(&t1).sub(&t2))
                })();
                let Some(diff) = windowed(check)? else { continue };
                if !diff.is_zero() {
                    c.record(
                        vec![show_w(a), show_w(b)],
                        "d({a,b}) = {d(a),b} + (-1)^{|a|}{a,d(b)}".into(),
                        show(&diff),
                    );
                }
            }
        }
        checks.push(c.finish());
    }

    Ok(AxiomReport {
        window: *t,
        checks,
    })
}

pub(crate) fn parity_sign(degree: i64) -> Scalar {
    if degree % 2 != 0 {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// A presentation together with a differential: a presented DG algebra.
/// This is the output type of every envelope construction.
#[derive(Clone, Debug)]
pub struct DgPresentation {
    pub presentation: Presentation,
    pub diff: DifferentialSpec,
}

impl DgPresentation {
    pub fn gens(&self) -> &GeneratorSet {
        &self.presentation.gens
    }

    pub fn build_table(&self, t: &TruncationParams) -> Result<NormalFormTable, EngineError> {
        self.presentation.build_table(t)
    }

    pub fn apply_d(
        &self,
        table: &NormalFormTable,
        e: &Element,
    ) -> Result<Element, EngineError> {
        let raw = self.diff.apply_raw(self.gens(), e);
        table.normal_form(self.gens(), &raw)
    }

    /// Checks that d preserves the ideal and squares to zero on generators,
    /// within the window.
    pub fn verify_differential(&self, t: &TruncationParams) -> Result<AxiomReport, EngineError> {
        let gens = self.gens();
        let table = self.build_table(t)?;
        let in_window = |d: i64| d >= t.min_degree.min(0) && d <= t.max_degree;
        let mut checks = Vec::new();
        {
            let mut c = CheckCollector::new("differential-preserves-ideal");
            for r in &self.presentation.relations {
                if let DegreeOf::Homogeneous(dr) = r.degree_of(gens) {
                    if !in_window(dr + 1) {
                        continue;
                    }
                    let img = self.apply_d(&table, r)?;
                    if !img.is_zero() {
                        c.record(
                            vec![r.display(gens).to_string()],
                            "d(relation) = 0 mod I".into(),
                            img.display(gens).to_string(),
                        );
                    }
                }
            }
            checks.push(c.finish());
        }
        {
            let mut c = CheckCollector::new("differential-squares-to-zero");
            for g in gens.iter() {
                if !in_window(g.degree + 2) {
                    continue;
                }
                let d1 = self.apply_d(&table, &Element::generator(g.id))?;
                let d2 = self.apply_d(&table, &d1)?;
                if !d2.is_zero() {
                    c.record(
                        vec![g.name.clone()],
                        "d(d(g)) = 0 mod I".into(),
                        d2.display(gens).to_string(),
                    );
                }
            }
            checks.push(c.finish());
        }
        Ok(AxiomReport { window: *t, checks })
    }
}
