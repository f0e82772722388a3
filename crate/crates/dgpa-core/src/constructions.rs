//! Opposite algebras and tensor products, at two levels: for verified
//! DGPAs (bracket and differential data carried along, axioms re-checked)
//! and for presented DG algebras (used when comparing envelopes).

use crate::algebra::{koszul_pair_sign, Element, GenId, GeneratorSet, Word};
use crate::dg::{
    AxiomReport, BracketSpec, DGPAlgebra, DgPresentation, DifferentialSpec,
};
use crate::error::EngineError;
use crate::presentation::{Presentation, TruncationParams};
use crate::scalar::Scalar;

/// Shifts every generator id in the element by `offset`.
pub fn shift_element(e: &Element, offset: u32) -> Element {
    Element::from_terms(e.terms().map(|(w, c)| {
        (
            Word {
                letters: w.letters.iter().map(|id| GenId(id.0 + offset)).collect(),
            },
            c.clone(),
        )
    }))
}

/// Disjoint union of two generator sets. Name collisions are resolved by
/// prefixing every left name with `l_` and every right name with `r_`.
pub fn merge_generator_sets(
    a: &GeneratorSet,
    b: &GeneratorSet,
) -> Result<(GeneratorSet, u32), EngineError> {
    let collide = b.iter().any(|g| a.lookup(&g.name).is_some());
    let mut merged = GeneratorSet::default();
    for g in a.iter() {
        let name = if collide {
            format!("l_{}", g.name)
        } else {
            g.name.clone()
        };
        merged.push(&name, g.degree)?;
    }
    let offset = a.len() as u32;
    for g in b.iter() {
        let name = if collide {
            format!("r_{}", g.name)
        } else {
            g.name.clone()
        };
        merged.push(&name, g.degree)?;
    }
    Ok((merged, offset))
}

/// A^op: same presentation and differential, bracket negated. The result is
/// re-verified, mechanically re-proving that the opposite of a DGPA is one.
pub fn opposite(alg: &DGPAlgebra) -> Result<(DGPAlgebra, AxiomReport), EngineError> {
    alg.require_verified()?;
    let gens = alg.gens().clone();
    let mut bracket = BracketSpec::new();
    for ((a, b), img) in alg.bracket.images() {
        bracket.set(&gens, *a, *b, img.neg())?;
    }
    let mut out = DGPAlgebra::new(alg.presentation.clone(), alg.diff.clone(), bracket);
    let window = alg.verified.expect("verified");
    let report = out.verify(&window)?;
    if !report.ok() {
        return Err(EngineError::BadStructure(
            "opposite algebra failed the axiom check".into(),
        ));
    }
    Ok((out, report))
}

/// A (x) B with the product (a(x)b)(a'(x)b') = (-1)^{|a'||b|} aa' (x) bb',
/// the componentwise differential, and the bracket
/// {a(x)b, a'(x)b'} = (-1)^{|a'||b|}({a,a'}(x)bb' + aa'(x){b,b'}).
/// Cross-factor generators commute via the implied graded commutativity.
pub fn tensor_product(
    a: &DGPAlgebra,
    b: &DGPAlgebra,
    t: &TruncationParams,
) -> Result<(DGPAlgebra, AxiomReport), EngineError> {
    a.require_verified()?;
    b.require_verified()?;
    let (gens, offset) = merge_generator_sets(a.gens(), b.gens())?;
    let mut relations: Vec<Element> = a.presentation.relations.clone();
    relations.extend(
        b.presentation
            .relations
            .iter()
            .map(|r| shift_element(r, offset)),
    );
    let presentation = Presentation::new(
        &format!("{}(x){}", a.presentation.label, b.presentation.label),
        gens.clone(),
        relations,
        true,
    )?;

    let mut diff = DifferentialSpec::new();
    for (g, img) in a.diff.images() {
        diff.set(&gens, *g, img.clone())?;
    }
    for (g, img) in b.diff.images() {
        diff.set(&gens, GenId(g.0 + offset), shift_element(img, offset))?;
    }
    let mut bracket = BracketSpec::new();
    for ((x, y), img) in a.bracket.images() {
        bracket.set(&gens, *x, *y, img.clone())?;
    }
    for ((x, y), img) in b.bracket.images() {
        bracket.set(
            &gens,
            GenId(x.0 + offset),
            GenId(y.0 + offset),
            shift_element(img, offset),
        )?;
    }
    // cross-factor brackets vanish: both summands of the formula do

    let mut out = DGPAlgebra::new(presentation, diff, bracket);
    let report = out.verify(t)?;
    if !report.ok() {
        return Err(EngineError::BadStructure(
            "tensor product failed the axiom check".into(),
        ));
    }
    Ok((out, report))
}

/// Reverses a word with the full Koszul sign: the image of the word under
/// the canonical isomorphism onto the opposite algebra.
pub fn op_element(gens: &GeneratorSet, e: &Element) -> Element {
    e.map_words(|w| {
        let mut parity = false;
        for i in 0..w.letters.len() {
            for j in (i + 1)..w.letters.len() {
                if gens.degree(w.letters[i]) % 2 != 0 && gens.degree(w.letters[j]) % 2 != 0 {
                    parity = !parity;
                }
            }
        }
        let mut letters = w.letters.clone();
        letters.reverse();
        Element::from_term(
            Word { letters },
            if parity {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            },
        )
    })
}

/// The opposite of a presented DG algebra, on the same generators: each
/// relation and differential image is reversed with its Koszul sign.
pub fn opposite_presentation(p: &DgPresentation) -> Result<DgPresentation, EngineError> {
    let gens = p.gens().clone();
    let relations = p
        .presentation
        .relations
        .iter()
        .map(|r| op_element(&gens, r))
        .collect();
    let presentation = Presentation::new(
        &format!("op({})", p.presentation.label),
        gens.clone(),
        relations,
        p.presentation.graded_commutative,
    )?;
    let mut diff = DifferentialSpec::new();
    for (g, img) in p.diff.images() {
        diff.set(&gens, *g, op_element(&gens, img))?;
    }
    Ok(DgPresentation { presentation, diff })
}

/// Tensor product of presented DG algebras: disjoint generators, each
/// factor's relations, Koszul cross-commutation between the factors, and
/// the componentwise differential.
pub fn tensor_presentations(
    p: &DgPresentation,
    q: &DgPresentation,
) -> Result<DgPresentation, EngineError> {
    let (gens, offset) = merge_generator_sets(p.gens(), q.gens())?;
    let both_gc = p.presentation.graded_commutative && q.presentation.graded_commutative;

    let mut relations: Vec<Element> = Vec::new();
    if !both_gc {
        if p.presentation.graded_commutative {
            relations.extend(p.presentation.materialized_commutations());
        }
        if q.presentation.graded_commutative {
            relations.extend(
                q.presentation
                    .materialized_commutations()
                    .iter()
                    .map(|r| shift_element(r, offset)),
            );
        }
    }
    relations.extend(p.presentation.relations.iter().cloned());
    relations.extend(
        q.presentation
            .relations
            .iter()
            .map(|r| shift_element(r, offset)),
    );
    if !both_gc {
        // cross-factor Koszul commutation
        for ga in p.gens().iter() {
            for gb in q.gens().iter() {
                let a = ga.id;
                let b = GenId(gb.id.0 + offset);
                let mut rel = Element::from_term(Word::from_ids(&[a, b]), Scalar::one());
                rel.add_term(
                    Word::from_ids(&[b, a]),
                    -&koszul_pair_sign(ga.degree, gb.degree),
                );
                relations.push(rel);
            }
        }
    }

    let presentation = Presentation::new(
        &format!("{}(x){}", p.presentation.label, q.presentation.label),
        gens.clone(),
        relations,
        both_gc,
    )?;
    let mut diff = DifferentialSpec::new();
    for (g, img) in p.diff.images() {
        diff.set(&gens, *g, img.clone())?;
    }
    for (g, img) in q.diff.images() {
        diff.set(&gens, GenId(g.0 + offset), shift_element(img, offset))?;
    }
    Ok(DgPresentation { presentation, diff })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::dg::tests::con_algebra;
    use crate::dg::apply_bracket;

    fn window() -> TruncationParams {
        TruncationParams::new(6, 8)
    }

    #[test]
    fn opposite_negates_bracket_and_is_involutive() {
        let mut alg = con_algebra(0, 1, 1);
        alg.verify(&window()).unwrap();
        let (op, report) = opposite(&alg).unwrap();
        assert!(report.ok());
        let table = op.presentation.build_table(&window()).unwrap();
        let b = apply_bracket(
            &op,
            &table,
            &Element::generator(GenId(0)),
            &Element::generator(GenId(1)),
        )
        .unwrap();
        let expect = Element::from_term(
            Word::from_ids(&[GenId(0), GenId(1)]),
            Scalar::from_int(-1),
        );
        assert_eq!(b, expect);
        // op(op(A)) = A at the field level
        let (opop, _) = opposite(&op).unwrap();
        for ((x, y), img) in alg.bracket.images() {
            assert_eq!(opop.bracket.pair(alg.gens(), *x, *y), *img);
        }
        // trivial bracket: op(A) = A
        let mut trivial = con_algebra(0, 1, 0);
        trivial.verify(&window()).unwrap();
        let (opt, _) = opposite(&trivial).unwrap();
        assert!(opt.bracket.images().next().is_none());
    }

    #[test]
    fn tensor_with_scalar_field_keeps_dims() {
        let mut alg = con_algebra(0, 1, 1);
        alg.verify(&window()).unwrap();
        let mut unit = DGPAlgebra::new(
            Presentation::scalar_field("k"),
            DifferentialSpec::new(),
            BracketSpec::new(),
        );
        unit.verify(&window()).unwrap();
        let (prod, report) = tensor_product(&alg, &unit, &window()).unwrap();
        assert!(report.ok());
        let (dims_a, _) = alg.presentation.build_table(&window()).unwrap().graded_dimension();
        let (dims_p, _) = prod.presentation.build_table(&window()).unwrap().graded_dimension();
        assert_eq!(dims_a, dims_p);
    }

    #[test]
    fn cross_factor_brackets_vanish() {
        let mut a = con_algebra(0, 1, 1);
        a.verify(&window()).unwrap();
        let gens_b = GeneratorSet::new(&[("z", 1)]).unwrap();
        let pres_b = Presentation::new("ext", gens_b, vec![], true).unwrap();
        let mut b = DGPAlgebra::new(pres_b, DifferentialSpec::new(), BracketSpec::new());
        b.verify(&window()).unwrap();
        let (prod, _) = tensor_product(&a, &b, &window()).unwrap();
        let table = prod.presentation.build_table(&window()).unwrap();
        let x1 = Element::generator(GenId(0));
        let z = Element::generator(GenId(2));
        assert!(apply_bracket(&prod, &table, &x1, &z).unwrap().is_zero());
    }

    #[test]
    fn op_element_reverses_with_sign() {
        let gens = GeneratorSet::new(&[("a", 1), ("b", 1), ("c", 2)]).unwrap();
        // odd-odd pair flips the sign
        let ab = Element::from_term(Word::from_ids(&[GenId(0), GenId(1)]), Scalar::one());
        assert_eq!(
            op_element(&gens, &ab),
            Element::from_term(Word::from_ids(&[GenId(1), GenId(0)]), Scalar::from_int(-1))
        );
        // odd-even pair does not
        let ac = Element::from_term(Word::from_ids(&[GenId(0), GenId(2)]), Scalar::one());
        assert_eq!(
            op_element(&gens, &ac),
            Element::from_term(Word::from_ids(&[GenId(2), GenId(0)]), Scalar::one())
        );
        // involution
        let w = Element::from_term(
            Word::from_ids(&[GenId(0), GenId(1), GenId(2), GenId(0)]),
            Scalar::ratio(3, 2),
        );
        assert_eq!(op_element(&gens, &op_element(&gens, &w)), w);
    }

    #[test]
    fn name_collisions_are_prefixed() {
        let a = GeneratorSet::new(&[("x", 1)]).unwrap();
        let b = GeneratorSet::new(&[("x", 2)]).unwrap();
        let (merged, offset) = merge_generator_sets(&a, &b).unwrap();
        assert_eq!(offset, 1);
        assert_eq!(merged.name(GenId(0)), "l_x");
        assert_eq!(merged.name(GenId(1)), "r_x");
        let c = GeneratorSet::new(&[("y", 1)]).unwrap();
        let (merged2, _) = merge_generator_sets(&a, &c).unwrap();
        assert_eq!(merged2.name(GenId(0)), "x");
        assert_eq!(merged2.name(GenId(1)), "y");
    }
}
