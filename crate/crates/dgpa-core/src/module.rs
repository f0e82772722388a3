//! Differential graded Poisson modules as finite tables, the module axiom
//! checker, and the transport between DGP modules over A and DG modules
//! over the envelope: m_a acts by multiplication, h_a by the bracket
//! action, and back. The round trip is the identity on tables.

use std::collections::BTreeMap;

use crate::algebra::{Element, GenId, GeneratorSet, Word};
use crate::dg::{
    AxiomCheck, AxiomReport, BracketEval, CheckStatus, Counterexample, DGPAlgebra,
};
use crate::envelope::Envelope;
use crate::error::EngineError;
use crate::presentation::{NormalFormTable, TruncationParams};
use crate::scalar::Scalar;

pub type ModVec = Vec<Scalar>;

fn zero_vec(n: usize) -> ModVec {
    vec![Scalar::zero(); n]
}

fn add_assign(a: &mut ModVec, b: &ModVec, c: &Scalar) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += &(y * c);
    }
}

fn is_zero_vec(v: &ModVec) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// A left DGP module over a windowed algebra: tables are indexed by the
/// algebra's in-window basis words and the module basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DGPModule {
    pub basis: GeneratorSet,
    pub algebra_basis: Vec<Word>,
    pub action: BTreeMap<(usize, usize), ModVec>,
    pub bracket_action: BTreeMap<(usize, usize), ModVec>,
    pub diff: Vec<ModVec>,
}

impl DGPModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn algebra_index(&self) -> BTreeMap<&Word, usize> {
        self.algebra_basis
            .iter()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect()
    }

    pub fn act_word(&self, word_idx: usize, v: &ModVec) -> ModVec {
        let mut out = zero_vec(self.dim());
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(col) = self.action.get(&(word_idx, j)) {
                add_assign(&mut out, col, c);
            }
        }
        out
    }

    pub fn bracket_word(&self, word_idx: usize, v: &ModVec) -> ModVec {
        let mut out = zero_vec(self.dim());
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(col) = self.bracket_action.get(&(word_idx, j)) {
                add_assign(&mut out, col, c);
            }
        }
        out
    }

    /// Action of a normal-form algebra element, expanded over the table.
    pub fn act_element(&self, e: &Element, v: &ModVec) -> Result<ModVec, EngineError> {
        let index = self.algebra_index();
        let mut out = zero_vec(self.dim());
        for (w, c) in e.terms() {
            let i = index.get(w).ok_or_else(|| {
                EngineError::OutOfWindow(format!("algebra word outside the module tables"))
            })?;
            let part = self.act_word(*i, v);
            add_assign(&mut out, &part, c);
        }
        Ok(out)
    }

    pub fn bracket_element(&self, e: &Element, v: &ModVec) -> Result<ModVec, EngineError> {
        let index = self.algebra_index();
        let mut out = zero_vec(self.dim());
        for (w, c) in e.terms() {
            let i = index.get(w).ok_or_else(|| {
                EngineError::OutOfWindow(format!("algebra word outside the module tables"))
            })?;
            let part = self.bracket_word(*i, v);
            add_assign(&mut out, &part, c);
        }
        Ok(out)
    }

    pub fn diff_vec(&self, v: &ModVec) -> ModVec {
        let mut out = zero_vec(self.dim());
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                add_assign(&mut out, &self.diff[j], c);
            }
        }
        out
    }
}

/// The algebra as a left module over itself, truncated at `module_max`:
/// the quotient by the span of degrees above the cut, which is a graded
/// ideal when every generator has positive degree.
pub fn regular_module(
    alg: &DGPAlgebra,
    table: &NormalFormTable,
    module_max: i64,
) -> Result<DGPModule, EngineError> {
    let gens = alg.gens();
    if gens.iter().any(|g| g.degree <= 0) {
        return Err(EngineError::BadStructure(
            "regular module truncation needs strictly positive generator degrees".into(),
        ));
    }
    if table.window.max_degree < 2 * module_max {
        return Err(EngineError::BadWindow(format!(
            "algebra table must cover degree {} for module products",
            2 * module_max
        )));
    }
    let mut algebra_basis = Vec::new();
    for d in 0..=module_max {
        algebra_basis.extend(table.basis_words(d));
    }
    let mut basis = GeneratorSet::default();
    for w in &algebra_basis {
        basis.push(&format!("[{}]", w.display(gens)), gens.word_degree(w))?;
    }
    let truncate = |e: &Element| -> ModVec {
        let mut v = zero_vec(algebra_basis.len());
        for (w, c) in e.terms() {
            if let Some(i) = algebra_basis.iter().position(|b| b == w) {
                v[i] = c.clone();
            }
            // components above the cut vanish in the quotient
        }
        v
    };

    let mut action = BTreeMap::new();
    let mut bracket_action = BTreeMap::new();
    let mut eval = BracketEval::new(alg, table);
    for (i, aw) in algebra_basis.iter().enumerate() {
        for (j, mw) in algebra_basis.iter().enumerate() {
            let a = Element::from_term(aw.clone(), Scalar::one());
            let m = Element::from_term(mw.clone(), Scalar::one());
            let prod = table.normal_form(gens, &a.mul(&m))?;
            let v = truncate(&prod);
            if !is_zero_vec(&v) {
                action.insert((i, j), v);
            }
            let br = eval.bracket(&a, &m)?;
            let v = truncate(&br);
            if !is_zero_vec(&v) {
                bracket_action.insert((i, j), v);
            }
        }
    }
    let mut diff = Vec::new();
    for mw in &algebra_basis {
        let m = Element::from_term(mw.clone(), Scalar::one());
        diff.push(truncate(&alg.apply_d(table, &m)?));
    }
    Ok(DGPModule {
        basis,
        algebra_basis,
        action,
        bracket_action,
        diff,
    })
}

struct Collector {
    name: &'static str,
    counterexamples: Vec<Counterexample>,
}

impl Collector {
    fn new(name: &'static str) -> Self {
        Collector {
            name,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, inputs: Vec<String>, expected: &str, got: String) {
        if self.counterexamples.len() < 5 {
            self.counterexamples.push(Counterexample {
                inputs,
                expected: expected.to_string(),
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

fn show_vec(m: &DGPModule, v: &ModVec) -> String {
    if is_zero_vec(v) {
        return "0".to_string();
    }
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{} {}", c, m.basis.name(GenId(i as u32))))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Verifies the left DGP module axioms on algebra-basis x module-basis
/// tuples whose total degree stays inside the module window.
pub fn check_module_axioms(
    alg: &DGPAlgebra,
    table: &NormalFormTable,
    m: &DGPModule,
    t: &TruncationParams,
) -> Result<AxiomReport, EngineError> {
    let gens = alg.gens();
    let module_max = m
        .basis
        .iter()
        .map(|g| g.degree)
        .max()
        .unwrap_or(0)
        .min(t.max_degree);
    let deg_w = |w: &Word| gens.word_degree(w);
    let unit_vecs: Vec<ModVec> = (0..m.dim())
        .map(|j| {
            let mut v = zero_vec(m.dim());
            v[j] = Scalar::one();
            v
        })
        .collect();
    let mod_deg = |j: usize| m.basis.degree(GenId(j as u32));
    let mut eval = BracketEval::new(alg, table);
    let mut checks = Vec::new();

    // (ia) {a, b m} = {a,b} m + (-1)^{|a||b|} b {a,m}
    // (ib) {a b, m} = a {b,m} + (-1)^{|a||b|} b {a,m}
    // (ic) {a,{b,m}} = {{a,b},m} + (-1)^{|a||b|} {b,{a,m}}
    let mut ia = Collector::new("module-ia-bracket-of-product-action");
    let mut ib = Collector::new("module-ib-product-bracket-action");
    let mut ic = Collector::new("module-ic-jacobi-action");
    for (i_a, wa) in m.algebra_basis.iter().enumerate() {
        for (i_b, wb) in m.algebra_basis.iter().enumerate() {
            for j in 0..m.dim() {
                if deg_w(wa) + deg_w(wb) + mod_deg(j) > module_max {
                    continue;
                }
                let sign = crate::algebra::koszul_pair_sign(deg_w(wa), deg_w(wb));
                let ea = Element::from_term(wa.clone(), Scalar::one());
                let eb = Element::from_term(wb.clone(), Scalar::one());
                let v = &unit_vecs[j];

                // (ia)
                let bm = m.act_word(i_b, v);
                let lhs = m.bracket_word(i_a, &bm);
                let ab_bracket = eval.bracket(&ea, &eb)?;
                let mut rhs = m.act_element(&ab_bracket, v)?;
                let t2 = m.act_word(i_b, &m.bracket_word(i_a, v));
                add_assign(&mut rhs, &t2, &sign);
                let mut delta = lhs.clone();
                add_assign(&mut delta, &rhs, &Scalar::from_int(-1));
                if !is_zero_vec(&delta) {
                    ia.record(
                        vec![
                            wa.display(gens).to_string(),
                            wb.display(gens).to_string(),
                            m.basis.name(GenId(j as u32)).to_string(),
                        ],
                        "{a,bm} = {a,b}m + (-1)^{|a||b|} b{a,m}",
                        show_vec(m, &delta),
                    );
                }

                // (ib)
                let prod = table.normal_form(gens, &ea.mul(&eb))?;
                let lhs = m.bracket_element(&prod, v)?;
                let mut rhs = m.act_word(i_a, &m.bracket_word(i_b, v));
                let t2 = m.act_word(i_b, &m.bracket_word(i_a, v));
                add_assign(&mut rhs, &t2, &sign);
                let mut delta = lhs.clone();
                add_assign(&mut delta, &rhs, &Scalar::from_int(-1));
                if !is_zero_vec(&delta) {
                    ib.record(
                        vec![
                            wa.display(gens).to_string(),
                            wb.display(gens).to_string(),
                            m.basis.name(GenId(j as u32)).to_string(),
                        ],
                        "{ab,m} = a{b,m} + (-1)^{|a||b|} b{a,m}",
                        show_vec(m, &delta),
                    );
                }

                // (ic)
                let lhs = m.bracket_word(i_a, &m.bracket_word(i_b, v));
                let mut rhs = m.bracket_element(&ab_bracket, v)?;
                let t2 = m.bracket_word(i_b, &m.bracket_word(i_a, v));
                add_assign(&mut rhs, &t2, &sign);
                let mut delta = lhs.clone();
                add_assign(&mut delta, &rhs, &Scalar::from_int(-1));
                if !is_zero_vec(&delta) {
                    ic.record(
                        vec![
                            wa.display(gens).to_string(),
                            wb.display(gens).to_string(),
                            m.basis.name(GenId(j as u32)).to_string(),
                        ],
                        "{a,{b,m}} = {{a,b},m} + (-1)^{|a||b|} {b,{a,m}}",
                        show_vec(m, &delta),
                    );
                }
            }
        }
    }
    checks.push(ia.finish());
    checks.push(ib.finish());
    checks.push(ic.finish());

    // (ii) and the DG Leibniz rule, plus d_M^2 = 0
    let mut ii = Collector::new("module-ii-differential-bracket");
    let mut leib = Collector::new("module-dg-leibniz");
    let mut ddm = Collector::new("module-differential-squares-to-zero");
    for (i_a, wa) in m.algebra_basis.iter().enumerate() {
        for j in 0..m.dim() {
            if deg_w(wa) + mod_deg(j) + 1 > module_max {
                continue;
            }
            let v = &unit_vecs[j];
            let da = alg.apply_d(table, &Element::from_term(wa.clone(), Scalar::one()))?;
            let psign = if deg_w(wa) % 2 != 0 {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            };

            let lhs = m.diff_vec(&m.bracket_word(i_a, v));
            let mut rhs = m.bracket_element(&da, v)?;
            let t2 = m.bracket_word(i_a, &m.diff_vec(v));
            add_assign(&mut rhs, &t2, &psign);
            let mut delta = lhs.clone();
            add_assign(&mut delta, &rhs, &Scalar::from_int(-1));
            if !is_zero_vec(&delta) {
                ii.record(
                    vec![
                        wa.display(gens).to_string(),
                        m.basis.name(GenId(j as u32)).to_string(),
                    ],
                    "d({a,m}) = {d(a),m} + (-1)^{|a|}{a,d(m)}",
                    show_vec(m, &delta),
                );
            }

            let lhs = m.diff_vec(&m.act_word(i_a, v));
            let mut rhs = m.act_element(&da, v)?;
            let t2 = m.act_word(i_a, &m.diff_vec(v));
            add_assign(&mut rhs, &t2, &psign);
            let mut delta = lhs.clone();
            add_assign(&mut delta, &rhs, &Scalar::from_int(-1));
            if !is_zero_vec(&delta) {
                leib.record(
                    vec![
                        wa.display(gens).to_string(),
                        m.basis.name(GenId(j as u32)).to_string(),
                    ],
                    "d(am) = d(a)m + (-1)^{|a|} a d(m)",
                    show_vec(m, &delta),
                );
            }
        }
    }
    for j in 0..m.dim() {
        let dd = m.diff_vec(&m.diff[j]);
        if !is_zero_vec(&dd) {
            ddm.record(
                vec![m.basis.name(GenId(j as u32)).to_string()],
                "d(d(m)) = 0",
                show_vec(m, &dd),
            );
        }
    }
    checks.push(ii.finish());
    checks.push(leib.finish());
    checks.push(ddm.finish());

    Ok(AxiomReport {
        window: *t,
        checks,
    })
}

/// A module over the envelope: one action matrix per envelope generator.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvModule {
    pub module_basis: GeneratorSet,
    /// per envelope generator, per module basis vector: the image vector
    pub gen_actions: Vec<Vec<ModVec>>,
    pub diff: Vec<ModVec>,
}

impl EnvModule {
    fn act_gen(&self, g: usize, v: &ModVec) -> ModVec {
        let n = self.module_basis.len();
        let mut out = zero_vec(n);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                add_assign(&mut out, &self.gen_actions[g][j], c);
            }
        }
        out
    }

    /// Left action of a word: rightmost letter acts first.
    fn act_word(&self, w: &Word, v: &ModVec) -> ModVec {
        let mut out = v.clone();
        for id in w.letters.iter().rev() {
            out = self.act_gen(id.0 as usize, &out);
        }
        out
    }

    pub fn act_element(&self, e: &Element, v: &ModVec) -> ModVec {
        let n = self.module_basis.len();
        let mut out = zero_vec(n);
        for (w, c) in e.terms() {
            let part = self.act_word(w, v);
            add_assign(&mut out, &part, c);
        }
        out
    }

    fn diff_vec(&self, v: &ModVec) -> ModVec {
        let n = self.module_basis.len();
        let mut out = zero_vec(n);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                add_assign(&mut out, &self.diff[j], c);
            }
        }
        out
    }
}

/// m_a acts by multiplication, h_a by the bracket action. The returned
/// report certifies that every envelope relation annihilates the module
/// and that the differential is compatible with the action.
pub fn transport_to_envelope(
    m: &DGPModule,
    env: &Envelope,
) -> Result<(EnvModule, AxiomReport), EngineError> {
    let n = env.base_count;
    let word_index = m.algebra_index();
    let mut gen_actions = Vec::with_capacity(2 * n);
    for a in 0..n {
        let w = Word::single(GenId(a as u32));
        let i = *word_index.get(&w).ok_or_else(|| {
            EngineError::BadStructure(format!("module tables lack the generator word {a}"))
        })?;
        gen_actions.push(
            (0..m.dim())
                .map(|j| {
                    let mut v = zero_vec(m.dim());
                    v[j] = Scalar::one();
                    m.act_word(i, &v)
                })
                .collect::<Vec<_>>(),
        );
    }
    for a in 0..n {
        let w = Word::single(GenId(a as u32));
        let i = *word_index.get(&w).unwrap();
        gen_actions.push(
            (0..m.dim())
                .map(|j| {
                    let mut v = zero_vec(m.dim());
                    v[j] = Scalar::one();
                    m.bracket_word(i, &v)
                })
                .collect::<Vec<_>>(),
        );
    }
    let em = EnvModule {
        module_basis: m.basis.clone(),
        gen_actions,
        diff: m.diff.clone(),
    };

    let mut rel_check = Collector::new("envelope-relations-annihilate");
    let env_gens = env.dg.gens();
    for r in &env.dg.presentation.relations {
        for j in 0..m.dim() {
            let mut v = zero_vec(m.dim());
            v[j] = Scalar::one();
            let img = em.act_element(r, &v);
            if !is_zero_vec(&img) {
                rel_check.record(
                    vec![
                        r.display(env_gens).to_string(),
                        m.basis.name(GenId(j as u32)).to_string(),
                    ],
                    "relation . m = 0",
                    show_vec(m, &img),
                );
            }
        }
    }
    let mut d_check = Collector::new("envelope-differential-compatible");
    for g in env_gens.iter() {
        let dg_img = env.dg.diff.image(g.id);
        for j in 0..m.dim() {
            let mut v = zero_vec(m.dim());
            v[j] = Scalar::one();
            let lhs = em.diff_vec(&em.act_gen(g.id.0 as usize, &v));
            let mut rhs = em.act_element(&dg_img, &v);
            let psign = if g.degree % 2 != 0 {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            };
            let t2 = em.act_gen(g.id.0 as usize, &em.diff_vec(&v));
            add_assign(&mut rhs, &t2, &psign);
            let mut delta = lhs.clone();
            add_assign(&mut delta, &rhs, &Scalar::from_int(-1));
            if !is_zero_vec(&delta) {
                d_check.record(
                    vec![g.name.clone(), m.basis.name(GenId(j as u32)).to_string()],
                    "d(g.m) = d(g).m + (-1)^{|g|} g.d(m)",
                    show_vec(m, &delta),
                );
            }
        }
    }
    let report = AxiomReport {
        window: TruncationParams::new(0, 0),
        checks: vec![rel_check.finish(), d_check.finish()],
    };
    Ok((em, report))
}

/// Recovers the DGP module: the action of a word composes the m-matrices,
/// the bracket action of a word unfolds by the product rule
/// {g w', m} = g {w', m} + (-1)^{|g||w'|} w' {g, m}.
pub fn transport_from_envelope(
    alg: &DGPAlgebra,
    env: &Envelope,
    em: &EnvModule,
    algebra_basis: &[Word],
) -> Result<DGPModule, EngineError> {
    let gens = alg.gens();
    let n = env.base_count;
    let dim = em.module_basis.len();
    let unit = |j: usize| {
        let mut v = zero_vec(dim);
        v[j] = Scalar::one();
        v
    };

    fn act_m_word(em: &EnvModule, w: &Word, v: &ModVec) -> ModVec {
        let mut out = v.clone();
        for id in w.letters.iter().rev() {
            out = em.act_gen(id.0 as usize, &out);
        }
        out
    }

    fn bracket_m_word(
        em: &EnvModule,
        gens: &GeneratorSet,
        n: usize,
        w: &Word,
        v: &ModVec,
    ) -> ModVec {
        match w.len() {
            0 => zero_vec(v.len()),
            1 => em.act_gen(n + w.letters[0].0 as usize, v),
            _ => {
                let g = w.letters[0];
                let rest = Word::from_ids(&w.letters[1..]);
                let mut out = em.act_gen(g.0 as usize, &bracket_m_word(em, gens, n, &rest, v));
                let sign = crate::algebra::koszul_pair_sign(
                    gens.degree(g),
                    gens.word_degree(&rest),
                );
                let t2 = act_m_word(em, &rest, &em.act_gen(n + g.0 as usize, v));
                add_assign(&mut out, &t2, &sign);
                out
            }
        }
    }

    let mut action = BTreeMap::new();
    let mut bracket_action = BTreeMap::new();
    for (i, w) in algebra_basis.iter().enumerate() {
        for j in 0..dim {
            let v = unit(j);
            let a = act_m_word(em, w, &v);
            if !is_zero_vec(&a) {
                action.insert((i, j), a);
            }
            let b = bracket_m_word(em, gens, n, w, &v);
            if !is_zero_vec(&b) {
                bracket_action.insert((i, j), b);
            }
        }
    }
    Ok(DGPModule {
        basis: em.module_basis.clone(),
        algebra_basis: algebra_basis.to_vec(),
        action,
        bracket_action,
        diff: em.diff.clone(),
    })
}
