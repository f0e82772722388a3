//! Replays of the worked examples and isomorphism theorems on desk-scale
//! fixtures; the CLI `demo` subcommand exits 0 only when every fact holds.

use std::collections::BTreeMap;

use crate::algebra::{Element, GenId, GeneratorSet, Word};
use crate::compare::{compare_presentations, AlgebraMap, Verdict};
use crate::constructions::{opposite, opposite_presentation, tensor_presentations, tensor_product};
use crate::dg::{AxiomCheck, Counterexample, DGPAlgebra};
use crate::envelope::{
    alpha_map, env_presented, smash_env, tensor_envelope_maps,
};
use crate::error::EngineError;
use crate::finite::{env_basis, FiniteDGPA};
use crate::io::{algebra_from_document, fact, InputDocument};
use crate::lie::{semidirect, symmetric_algebra, universal_env_lie, DGLieAlgebra};
use crate::presentation::{Presentation, TruncationParams};
use crate::scalar::Scalar;

pub const CON_DOCUMENT: &str = r#"{
    "generators": [{"name": "x1", "degree": 1}, {"name": "x2", "degree": 2}],
    "graded_commutative": true,
    "relations": ["x1.x1", "x1.x2 - x2.x1"],
    "differential": {"x1": "lambda * x2", "x2": "mu * x1.x2"},
    "bracket": {"x1,x2": "p * x1.x2"},
    "parameters": {"lambda": "0", "mu": "1", "p": "1"}
}"#;

/// The running example with the given parameter values, unverified.
pub fn con_algebra(lambda: i64, mu: i64, p: i64) -> DGPAlgebra {
    let doc: InputDocument = serde_json::from_str(CON_DOCUMENT).expect("builtin document");
    let mut overrides = BTreeMap::new();
    overrides.insert("lambda".to_string(), Scalar::from_int(lambda));
    overrides.insert("mu".to_string(), Scalar::from_int(mu));
    overrides.insert("p".to_string(), Scalar::from_int(p));
    algebra_from_document(&doc, "con", &overrides).expect("builtin document")
}

pub fn verified_con(lambda: i64, mu: i64, p: i64, t: &TruncationParams) -> Result<DGPAlgebra, EngineError> {
    let mut alg = con_algebra(lambda, mu, p);
    let report = alg.verify(t)?;
    if !report.ok() {
        let names: Vec<&String> = report.failing().iter().map(|c| &c.name).collect();
        return Err(EngineError::BadStructure(format!(
            "con({lambda},{mu},{p}) fails {names:?}"
        )));
    }
    Ok(alg)
}

/// One odd generator, no differential, no bracket.
pub fn exterior_line(t: &TruncationParams) -> Result<DGPAlgebra, EngineError> {
    let gens = GeneratorSet::new(&[("z", 1)])?;
    let pres = Presentation::new("ext", gens, vec![], true)?;
    let mut alg = DGPAlgebra::new(
        pres,
        crate::dg::DifferentialSpec::new(),
        crate::dg::BracketSpec::new(),
    );
    alg.verify(t)?;
    Ok(alg)
}

/// The eight envelope relations listed for the running example, over the
/// generator set of `env_presented` (x1, x2, y_x1, y_x2), with the given p.
pub fn con_paper_envelope_relations(p: i64) -> Vec<Element> {
    let x1 = GenId(0);
    let x2 = GenId(1);
    let y1 = GenId(2);
    let y2 = GenId(3);
    let one = Scalar::one;
    let m1 = || Scalar::from_int(-1);
    let ps = Scalar::from_int(p);
    let w = |ids: &[GenId]| Word::from_ids(ids);
    let mut rels = Vec::new();
    // x1^2, y1^2
    rels.push(Element::from_term(w(&[x1, x1]), one()));
    rels.push(Element::from_term(w(&[y1, y1]), one()));
    // [x1,x2]
    rels.push(Element::from_terms([
        (w(&[x1, x2]), one()),
        (w(&[x2, x1]), m1()),
    ]));
    // [x1,y1] = x1 y1 + y1 x1
    rels.push(Element::from_terms([
        (w(&[x1, y1]), one()),
        (w(&[y1, x1]), one()),
    ]));
    // [x2,y2]
    rels.push(Element::from_terms([
        (w(&[x2, y2]), one()),
        (w(&[y2, x2]), m1()),
    ]));
    // [y1,y2] - p(x2 y1 + x1 y2)
    rels.push(Element::from_terms([
        (w(&[y1, y2]), one()),
        (w(&[y2, y1]), m1()),
        (w(&[x2, y1]), -&ps),
        (w(&[x1, y2]), -&ps),
    ]));
    // [y1,x2] - p x1 x2
    rels.push(Element::from_terms([
        (w(&[y1, x2]), one()),
        (w(&[x2, y1]), m1()),
        (w(&[x1, x2]), -&ps),
    ]));
    // [y2,x1] + p x1 x2
    rels.push(Element::from_terms([
        (w(&[y2, x1]), one()),
        (w(&[x1, y2]), m1()),
        (w(&[x1, x2]), ps.clone()),
    ]));
    rels
}

fn counterexample(inputs: Vec<String>, expected: &str, got: String) -> Counterexample {
    Counterexample {
        inputs,
        expected: expected.to_string(),
        got,
    }
}

/// Mutual reduction of two relation lists over a shared generator set:
/// each side's relations vanish modulo the other's ideal.
pub fn relation_lists_equivalent(
    gens: &GeneratorSet,
    label: &str,
    ours: &[Element],
    theirs: &[Element],
    diff_ours: &crate::dg::DifferentialSpec,
    t: &TruncationParams,
) -> Result<(bool, Option<Counterexample>), EngineError> {
    let p_ours = Presentation::new(label, gens.clone(), ours.to_vec(), false)?;
    let p_theirs = Presentation::new(label, gens.clone(), theirs.to_vec(), false)?;
    let t_ours = p_ours.build_table(t)?;
    let t_theirs = p_theirs.build_table(t)?;
    for r in theirs {
        let nf = t_ours.normal_form(gens, r)?;
        if !nf.is_zero() {
            return Ok((
                false,
                Some(counterexample(
                    vec![r.display(gens).to_string()],
                    "paper relation reduces to 0 in the computed ideal",
                    nf.display(gens).to_string(),
                )),
            ));
        }
    }
    for r in ours {
        let nf = t_theirs.normal_form(gens, r)?;
        if !nf.is_zero() {
            return Ok((
                false,
                Some(counterexample(
                    vec![r.display(gens).to_string()],
                    "computed relation reduces to 0 modulo the paper list",
                    nf.display(gens).to_string(),
                )),
            ));
        }
    }
    let _ = diff_ours;
    Ok((true, None))
}

/// L = <x, y : [x,y] = y> in degree 0.
pub fn affine_lie() -> DGLieAlgebra {
    let basis = GeneratorSet::new(&[("x", 0), ("y", 0)]).unwrap();
    let mut l = DGLieAlgebra::new(basis);
    l.set_bracket(GenId(0), GenId(1), vec![Scalar::zero(), Scalar::one()])
        .unwrap();
    l
}

/// Abelian with degrees (1, 2).
pub fn abelian_lie_12() -> DGLieAlgebra {
    DGLieAlgebra::new(GeneratorSet::new(&[("a", 1), ("b", 2)]).unwrap())
}

/// Certifies (SL)^e = U(L x| L) along (x_a, y_b) -> x_a + y_b.
pub fn check_semi_theorem(
    l: &DGLieAlgebra,
    sl_window: &TruncationParams,
    cmp_window: &TruncationParams,
) -> Result<Verdict, EngineError> {
    let (sl, report) = symmetric_algebra(l, sl_window)?;
    if !report.ok() {
        return Err(EngineError::BadStructure("SL failed the axiom check".into()));
    }
    let sl_env = env_presented(&sl)?;
    let u = universal_env_lie(&semidirect(l)?)?;
    // first copy -> x part, second copy -> y part: the identity permutation
    let n = l.dim();
    let fwd = AlgebraMap::identity(u.gens());
    let bwd = AlgebraMap::identity(sl_env.dg.gens());
    let _ = n;
    let report = compare_presentations(&u, &sl_env.dg, &fwd, Some(&bwd), cmp_window)?;
    Ok(report.verdict)
}

pub fn run_demo(base: &TruncationParams) -> Result<Vec<AxiomCheck>, EngineError> {
    let mut facts: Vec<AxiomCheck> = Vec::new();
    let t = *base;

    // running example: axioms hold for (0,1,1)
    {
        let mut alg = con_algebra(0, 1, 1);
        let report = alg.verify(&t)?;
        facts.push(fact("con-axioms(lambda=0,mu=1,p=1)", report.ok(), None));
    }
    // d^2 = 0 fails for lambda = mu = 1, with d^2(x1) = x1x2 reported
    {
        let mut alg = con_algebra(1, 1, 1);
        let report = alg.verify(&t)?;
        let d2 = report
            .checks
            .iter()
            .find(|c| c.name == "differential-squares-to-zero");
        let detected = !report.ok()
            && d2.is_some_and(|c| {
                c.counterexamples
                    .iter()
                    .any(|ce| ce.inputs == vec!["x1".to_string()] && ce.got.contains("x1.x2"))
            });
        facts.push(fact("con-d-squared-counterexample(lambda=mu=1)", detected, None));
    }
    // envelope relations match the paper's list, both directions
    {
        let alg = verified_con(0, 1, 1, &t)?;
        let env = env_presented(&alg)?;
        let paper = con_paper_envelope_relations(1);
        let win = TruncationParams::new(6, 8);
        let (ok, ce) = relation_lists_equivalent(
            env.dg.gens(),
            "con-env",
            &env.dg.presentation.relations,
            &paper,
            &env.dg.diff,
            &win,
        )?;
        facts.push(fact("envelope-relations-match-paper-list", ok, ce));
        // d(y2) = mu (x2 y1 + x1 y2)
        let d_y2 = env.dg.diff.image(GenId(3));
        let expect = Element::from_terms([
            (Word::from_ids(&[GenId(1), GenId(2)]), Scalar::one()),
            (Word::from_ids(&[GenId(0), GenId(3)]), Scalar::one()),
        ]);
        facts.push(fact(
            "envelope-differential-d(y2)",
            d_y2 == expect,
            if d_y2 == expect {
                None
            } else {
                Some(counterexample(
                    vec!["y_x2".into()],
                    "mu (x2 y1 + x1 y2)",
                    d_y2.display(env.dg.gens()).to_string(),
                ))
            },
        ));
    }
    // A^e and A^E have the same windowed dims and alpha preserves relations
    {
        let alg = verified_con(0, 1, 1, &t)?;
        let env = env_presented(&alg)?;
        let smash = smash_env(&alg)?;
        let win = TruncationParams::new(5, 8);
        let report =
            compare_presentations(&env.dg, &smash.dg, &alpha_map(&env), None, &win)?;
        facts.push(fact(
            "theorem-same-envelope-vs-smash",
            report.verdict == Verdict::IsoUpToWindow,
            None,
        ));
    }
    // (A (x) B)^e = A^e (x) B^e for B the exterior line
    {
        let win = TruncationParams::new(4, 8);
        let a = verified_con(0, 1, 1, &t)?;
        let b = exterior_line(&t)?;
        let (ab, _) = tensor_product(&a, &b, &win)?;
        let lhs = env_presented(&ab)?;
        let rhs = tensor_presentations(&env_presented(&a)?.dg, &env_presented(&b)?.dg)?;
        let (fwd, bwd) = tensor_envelope_maps(a.gens().len(), b.gens().len());
        let report = compare_presentations(&lhs.dg, &rhs, &fwd, Some(&bwd), &win)?;
        facts.push(fact(
            "theorem-thotimes-tensor-envelope",
            report.verdict == Verdict::IsoUpToWindow,
            None,
        ));
    }
    // (A^op)^e and (A^e)^op have identical canonical relation rows
    {
        let a = verified_con(0, 1, 1, &t)?;
        let (aop, _) = opposite(&a)?;
        let lhs = env_presented(&aop)?.dg;
        let rhs = opposite_presentation(&env_presented(&a)?.dg)?;
        let win = TruncationParams::new(5, 8);
        let rows_l = crate::compare::canonical_relation_rows(&lhs, &win)?;
        let rows_r = crate::compare::canonical_relation_rows(&rhs, &win)?;
        facts.push(fact("theorem-thop-opposite-envelope", rows_l == rows_r, None));
    }
    // (SL)^e = U(L x| L) for the affine line
    {
        let l = affine_lie();
        let sl_win = TruncationParams::new(0, 4);
        let cmp_win = TruncationParams::new(0, 5);
        let verdict = check_semi_theorem(&l, &sl_win, &cmp_win)?;
        facts.push(fact(
            "theorem-semi-affine-line",
            verdict == Verdict::IsoUpToWindow,
            None,
        ));
    }
    // k^e = k
    {
        let mut k_alg = DGPAlgebra::new(
            Presentation::scalar_field("k"),
            crate::dg::DifferentialSpec::new(),
            crate::dg::BracketSpec::new(),
        );
        k_alg.verify(&t)?;
        let env = env_presented(&k_alg)?;
        let (dims, _) = env.dg.build_table(&t)?.graded_dimension();
        let dims_ok = dims.iter().all(|(d, n)| *n == usize::from(*d == 0));
        let fk = FiniteDGPA::scalar_field();
        let fenv = env_basis(&fk)?;
        let ftable = fenv.build_table(&TruncationParams::new(0, 4))?;
        let h1_zero = ftable
            .is_zero_mod_ideal(fenv.gens(), &Element::generator(GenId(1)))?;
        facts.push(fact("corollary-mono-scalar-envelope", dims_ok && h1_zero, None));
    }
    // (A (x) A^op)^e = A^e (x) (A^e)^op
    {
        let win = TruncationParams::new(4, 8);
        let a = verified_con(0, 1, 1, &t)?;
        let (aop, _) = opposite(&a)?;
        let (aae, _) = tensor_product(&a, &aop, &win)?;
        let lhs = env_presented(&aae)?;
        let ae = env_presented(&a)?.dg;
        let rhs = tensor_presentations(&ae, &opposite_presentation(&ae)?)?;
        let (fwd, bwd) = tensor_envelope_maps(a.gens().len(), a.gens().len());
        let report = compare_presentations(&lhs.dg, &rhs, &fwd, Some(&bwd), &win)?;
        facts.push(fact(
            "corollary-coop-bienveloping",
            report.verdict == Verdict::IsoUpToWindow,
            None,
        ));
    }
    Ok(facts)
}
