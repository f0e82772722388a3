//! Universal envelopes of presented DGPAs, built two independent ways.
//!
//! The presented route adjoins one y generator per x generator and quotients
//! by I, Psi(I), the y-x straightening relations, and the y-y relations,
//! where Psi(f) = sum_a psi_a(f) y_a assembles the anti-derivations
//! psi_a(x_b) = delta_ab. The differential sends x_a to d(x_a) and y_a to
//! Psi(d(x_a)).
//!
//! The smash route generates m and h symbols and derives its relations from
//! the smash-product multiplication (1#a)(b#1) = {a,b}#1 + (-1)^{|a||b|} b#a
//! together with the quotient identifying 1#(ab) with a#b + (-1)^{|a||b|}b#a;
//! the latter gives a recursive expansion of h over products that never
//! mentions psi. The two constructions are cross-checked by the test suite.

use crate::algebra::{
    gc_normalize_element, koszul_pair_sign, Element, GenId, GeneratorSet, Word,
};
use crate::compare::{compare_presentations, AlgebraMap, IsoReport};
use crate::dg::{DGPAlgebra, DgPresentation, DifferentialSpec};
use crate::error::EngineError;
use crate::presentation::{Presentation, TruncationParams};
use crate::scalar::Scalar;

/// A presented envelope: the first `base_count` generators are the images
/// of the base generators (m-part), the next `base_count` are the adjoined
/// Hamiltonian symbols (h-part).
#[derive(Clone, Debug)]
pub struct Envelope {
    pub dg: DgPresentation,
    pub base_count: usize,
}

impl Envelope {
    pub fn x_id(&self, i: u32) -> GenId {
        GenId(i)
    }

    pub fn y_id(&self, i: u32) -> GenId {
        GenId(self.base_count as u32 + i)
    }
}

/// psi_a: the anti-derivation on the free graded-commutative algebra with
/// psi_a(x_b) = delta_ab and psi_a(uv) = u psi_a(v) + (-1)^{|u||v|} v psi_a(u).
/// The result is reduced to sorted monomials (not modulo any ideal).
pub fn psi_antiderivation(gens: &GeneratorSet, alpha: GenId, e: &Element) -> Element {
    fn psi_word(gens: &GeneratorSet, alpha: GenId, w: &Word) -> Element {
        match w.len() {
            0 => Element::zero(),
            1 => {
                if w.letters[0] == alpha {
                    Element::unit()
                } else {
                    Element::zero()
                }
            }
            _ => {
                let g = w.letters[0];
                let rest = Word::from_ids(&w.letters[1..]);
                // g * psi(rest)
                let mut out = Element::from_term(Word::single(g), Scalar::one())
                    .mul(&psi_word(gens, alpha, &rest));
                // + (-1)^{|g||rest|} delta_{alpha,g} * rest
                if g == alpha {
                    let sign =
                        koszul_pair_sign(gens.degree(g), gens.word_degree(&rest));
                    out.add_term(rest, sign);
                }
                out
            }
        }
    }
    let raw = e.map_words(|w| psi_word(gens, alpha, w));
    gc_normalize_element(gens, &raw)
}

/// Psi(f) = sum_a psi_a(f) y_a, an element over the envelope generators.
pub fn big_psi(env_gens: &GeneratorSet, base: &GeneratorSet, e: &Element) -> Element {
    let n = base.len() as u32;
    let mut out = Element::zero();
    for a in 0..n {
        let coeff = psi_antiderivation(base, GenId(a), e);
        if !coeff.is_zero() {
            let y = Element::from_term(Word::single(GenId(n + a)), Scalar::one());
            out = out.add(&coeff.mul(&y));
        }
    }
    debug_assert!(env_gens.check_element(&out).is_ok());
    out
}

fn envelope_generators(
    base: &GeneratorSet,
    second_prefix: &str,
    first_prefix: Option<&str>,
) -> Result<GeneratorSet, EngineError> {
    let mut gens = GeneratorSet::default();
    for g in base.iter() {
        match first_prefix {
            Some(p) => gens.push(&format!("{p}{}", g.name), g.degree)?,
            None => gens.push(&g.name, g.degree)?,
        };
    }
    for g in base.iter() {
        gens.push(&format!("{second_prefix}{}", g.name), g.degree)?;
    }
    Ok(gens)
}

/// The finitely presented envelope from the generators-and-relations data:
/// generators {x_a} u {y_a} subject to the commutations of R, the ideal I,
/// Psi(I), and the two straightening families.
pub fn env_presented(alg: &DGPAlgebra) -> Result<Envelope, EngineError> {
    alg.require_verified()?;
    let base = alg.gens();
    let n = base.len() as u32;
    let gens = envelope_generators(base, "y_", None)?;
    let y = |i: u32| GenId(n + i);

    let mut relations: Vec<Element> = Vec::new();
    let mut push = |e: Element| {
        if !e.is_zero() && !relations.contains(&e) {
            relations.push(e);
        }
    };

    // commutations of R on the x part
    for r in alg.presentation.materialized_commutations() {
        push(r);
    }
    // I and Psi(I)
    for r in &alg.presentation.relations {
        push(r.clone());
        push(big_psi(&gens, base, r));
    }
    // y_a x_b - (-1)^{|x_a||x_b|} x_b y_a - {x_a, x_b}, all ordered pairs
    for a in 0..n {
        for b in 0..n {
            let sign = koszul_pair_sign(base.degree(GenId(a)), base.degree(GenId(b)));
            let mut rel =
                Element::from_term(Word::from_ids(&[y(a), GenId(b)]), Scalar::one());
            rel.add_term(Word::from_ids(&[GenId(b), y(a)]), -&sign);
            let rel = rel.sub(&alg.bracket.pair(base, GenId(a), GenId(b)));
            push(rel);
        }
    }
    // y_a y_b - (-1)^{|x_a||x_b|} y_b y_a - Psi({x_a, x_b}), a <= b
    for a in 0..n {
        for b in a..n {
            let sign = koszul_pair_sign(base.degree(GenId(a)), base.degree(GenId(b)));
            let mut rel = Element::from_term(Word::from_ids(&[y(a), y(b)]), Scalar::one());
            rel.add_term(Word::from_ids(&[y(b), y(a)]), -&sign);
            let rel = rel.sub(&big_psi(&gens, base, &alg.bracket.pair(base, GenId(a), GenId(b))));
            push(rel);
        }
    }

    let presentation = Presentation::new(
        &format!("env({})", alg.presentation.label),
        gens.clone(),
        relations,
        false,
    )?;
    let mut diff = DifferentialSpec::new();
    for a in 0..n {
        let d = alg.diff.image(GenId(a));
        diff.set(&gens, GenId(a), d.clone())?;
        diff.set(&gens, y(a), big_psi(&gens, base, &d))?;
    }
    Ok(Envelope {
        dg: DgPresentation { presentation, diff },
        base_count: base.len(),
    })
}

/// The smash-product envelope A#U(A) modulo 1#(ab) = a#b + (-1)^{|a||b|}b#a,
/// presented on m and h symbols. `expand` below is the recursive expansion
/// of 1#f coming from that quotient; it is the independent counterpart of
/// Psi in the presented route.
pub fn smash_env(alg: &DGPAlgebra) -> Result<Envelope, EngineError> {
    alg.require_verified()?;
    let base = alg.gens();
    let n = base.len() as u32;
    let gens = envelope_generators(base, "h_", Some("m_"))?;
    let h = |i: u32| GenId(n + i);

    // 1#w for a word w: the empty word dies (h_1 = 2h_1), a letter is h_g,
    // and 1#(g w') = m_g (1#w') + (-1)^{|g||w'|} m_{w'} h_g.
    fn expand_word(base: &GeneratorSet, n: u32, w: &Word) -> Element {
        match w.len() {
            0 => Element::zero(),
            1 => Element::generator(GenId(n + w.letters[0].0)),
            _ => {
                let g = w.letters[0];
                let rest = Word::from_ids(&w.letters[1..]);
                let head = Element::from_term(Word::single(g), Scalar::one());
                let mut out = head.mul(&expand_word(base, n, &rest));
                let sign = koszul_pair_sign(base.degree(g), base.word_degree(&rest));
                out = out.add(
                    &Element::from_term(rest, sign)
                        .mul(&Element::generator(GenId(n + g.0))),
                );
                out
            }
        }
    }
    let expand = |e: &Element| e.map_words(|w| expand_word(base, n, w));

    let mut relations: Vec<Element> = Vec::new();
    let mut push = |e: Element| {
        if !e.is_zero() && !relations.contains(&e) {
            relations.push(e);
        }
    };

    // the m part carries A's presentation
    for r in alg.presentation.materialized_commutations() {
        push(r);
    }
    for r in &alg.presentation.relations {
        push(r.clone());
        // f = 0 in A forces 1#f = 0
        push(expand(r));
    }
    // smash multiplication: h_a m_b = m_{a,b} + (-1)^{|a||b|} m_b h_a
    for a in 0..n {
        for b in 0..n {
            let sign = koszul_pair_sign(base.degree(GenId(a)), base.degree(GenId(b)));
            let mut rel = Element::from_term(Word::from_ids(&[h(a), GenId(b)]), Scalar::one());
            rel.add_term(Word::from_ids(&[GenId(b), h(a)]), -&sign);
            let rel = rel.sub(&alg.bracket.pair(base, GenId(a), GenId(b)));
            push(rel);
        }
    }
    // U(A) on the h part: h_a h_b - (-1)^{|a||b|} h_b h_a = 1#{x_a, x_b}
    for a in 0..n {
        for b in a..n {
            let sign = koszul_pair_sign(base.degree(GenId(a)), base.degree(GenId(b)));
            let mut rel = Element::from_term(Word::from_ids(&[h(a), h(b)]), Scalar::one());
            rel.add_term(Word::from_ids(&[h(b), h(a)]), -&sign);
            let rel = rel.sub(&expand(&alg.bracket.pair(base, GenId(a), GenId(b))));
            push(rel);
        }
    }

    let presentation = Presentation::new(
        &format!("smash_env({})", alg.presentation.label),
        gens.clone(),
        relations,
        false,
    )?;
    let mut diff = DifferentialSpec::new();
    for a in 0..n {
        let d = alg.diff.image(GenId(a));
        diff.set(&gens, GenId(a), d.clone())?;
        diff.set(&gens, h(a), expand(&d))?;
    }
    Ok(Envelope {
        dg: DgPresentation { presentation, diff },
        base_count: base.len(),
    })
}

/// The generator map alpha: m_a -> a#1, h_a -> 1#a, expressed between the
/// two presented envelopes (x_a -> m_a, y_a -> h_a).
pub fn alpha_map(env: &Envelope) -> AlgebraMap {
    AlgebraMap::identity(env.dg.gens())
}

/// The canonical generator identifications between (A (x) B)^e, whose
/// generators run a-part, b-part, y_a-part, y_b-part, and A^e (x) B^e,
/// whose generators run a-part, y_a-part, b-part, y_b-part. Returns the
/// forward map and its inverse.
pub fn tensor_envelope_maps(n_a: usize, n_b: usize) -> (AlgebraMap, AlgebraMap) {
    let total = 2 * (n_a + n_b);
    let mut fwd_perm = vec![0usize; total];
    for i in 0..n_a {
        fwd_perm[i] = i;
    }
    for j in 0..n_b {
        fwd_perm[n_a + j] = 2 * n_a + j;
    }
    for k in 0..n_a {
        fwd_perm[n_a + n_b + k] = n_a + k;
    }
    for k in 0..n_b {
        fwd_perm[2 * n_a + n_b + k] = 2 * n_a + n_b + k;
    }
    let mut bwd_perm = vec![0usize; total];
    for (i, &j) in fwd_perm.iter().enumerate() {
        bwd_perm[j] = i;
    }
    let to_map = |perm: &[usize]| {
        AlgebraMap::new(
            perm.iter()
                .map(|&j| Element::generator(GenId(j as u32)))
                .collect(),
        )
    };
    (to_map(&fwd_perm), to_map(&bwd_perm))
}

/// The envelope of a DGPA map f: images x_a -> f(x_a), y_a -> Psi(f(x_a)).
/// `f` must already be verified as a DGPA map (see `verify_dgpa_map`); the
/// returned report certifies the induced map between the envelopes.
pub fn env_functor_map(
    f: &AlgebraMap,
    src: &DGPAlgebra,
    dst: &DGPAlgebra,
    src_env: &Envelope,
    dst_env: &Envelope,
    t: &TruncationParams,
) -> Result<(AlgebraMap, IsoReport), EngineError> {
    crate::compare::verify_dgpa_map(f, src, dst, t)?;
    let mut images = Vec::with_capacity(2 * src_env.base_count);
    for i in 0..src_env.base_count {
        images.push(f.image_of(GenId(i as u32)).clone());
    }
    for i in 0..src_env.base_count {
        images.push(big_psi(
            dst_env.dg.gens(),
            dst.gens(),
            f.image_of(GenId(i as u32)),
        ));
    }
    let induced = AlgebraMap::new(images);
    let report = compare_presentations(&src_env.dg, &dst_env.dg, &induced, None, t)?;
    if !report.map_ok() {
        return Err(EngineError::NotAMap(
            "induced envelope map does not preserve the relations".into(),
        ));
    }
    Ok((induced, report))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::dg::tests::con_algebra;

    fn verified_con(lambda: i64, mu: i64, p: i64) -> DGPAlgebra {
        let mut alg = con_algebra(lambda, mu, p);
        let report = alg.verify(&TruncationParams::new(6, 8)).unwrap();
        assert!(report.ok());
        alg
    }

    #[test]
    fn psi_values_on_con() {
        let alg = con_algebra(0, 1, 1);
        let gens = alg.gens();
        let x1x2 = Element::from_term(Word::from_ids(&[GenId(0), GenId(1)]), Scalar::one());
        // psi_1(x1x2) = x2, psi_2(x1x2) = x1
        assert_eq!(
            psi_antiderivation(gens, GenId(0), &x1x2),
            Element::generator(GenId(1))
        );
        assert_eq!(
            psi_antiderivation(gens, GenId(1), &x1x2),
            Element::generator(GenId(0))
        );
        // psi_1(x1^2) = x1 - x1 = 0
        let x1sq = Element::from_term(Word::from_ids(&[GenId(0), GenId(0)]), Scalar::one());
        assert!(psi_antiderivation(gens, GenId(0), &x1sq).is_zero());
    }

    #[test]
    fn big_psi_on_con() {
        let alg = verified_con(0, 1, 1);
        let env = env_presented(&alg).unwrap();
        let gens = env.dg.gens();
        let base = alg.gens();
        let x1x2 = Element::from_term(Word::from_ids(&[GenId(0), GenId(1)]), Scalar::one());
        // Psi(p x1x2) = p(x2 y1 + x1 y2)
        let img = big_psi(gens, base, &x1x2.scale(&Scalar::from_int(3)));
        let mut expect = Element::from_term(
            Word::from_ids(&[GenId(1), GenId(2)]),
            Scalar::from_int(3),
        );
        expect.add_term(Word::from_ids(&[GenId(0), GenId(3)]), Scalar::from_int(3));
        assert_eq!(img, expect);
        // Psi kills x1^2 and the commutativity relation
        let x1sq = Element::from_term(Word::from_ids(&[GenId(0), GenId(0)]), Scalar::one());
        assert!(big_psi(gens, base, &x1sq).is_zero());
        let mut comm = Element::from_term(Word::from_ids(&[GenId(0), GenId(1)]), Scalar::one());
        comm.add_term(Word::from_ids(&[GenId(1), GenId(0)]), Scalar::from_int(-1));
        assert!(big_psi(gens, base, &comm).is_zero());
    }

    #[test]
    fn envelope_differential_is_consistent() {
        let alg = verified_con(0, 1, 1);
        let env = env_presented(&alg).unwrap();
        let t = TruncationParams::new(6, 8);
        let report = env.dg.verify_differential(&t).unwrap();
        assert!(report.ok());
        // paper example: d(y2) = mu (x2 y1 + x1 y2)
        let d_y2 = env.dg.diff.image(GenId(3));
        let mut expect = Element::from_term(Word::from_ids(&[GenId(1), GenId(2)]), Scalar::one());
        expect.add_term(Word::from_ids(&[GenId(0), GenId(3)]), Scalar::one());
        assert_eq!(d_y2, expect);
    }

    #[test]
    fn smash_env_matches_presented_env_dims() {
        let alg = verified_con(0, 1, 1);
        let env = env_presented(&alg).unwrap();
        let smash = smash_env(&alg).unwrap();
        let t = TruncationParams::new(5, 8);
        let (d1, _) = env.dg.build_table(&t).unwrap().graded_dimension();
        let (d2, _) = smash.dg.build_table(&t).unwrap().graded_dimension();
        assert_eq!(d1, d2);
        // alpha: x_a -> m_a, y_a -> h_a preserves everything
        let report =
            compare_presentations(&env.dg, &smash.dg, &alpha_map(&env), None, &t).unwrap();
        assert_eq!(report.verdict, crate::compare::Verdict::IsoUpToWindow);
    }

    #[test]
    fn envelope_of_scalar_field_is_scalar() {
        let mut alg = DGPAlgebra::new(
            Presentation::scalar_field("k"),
            DifferentialSpec::new(),
            crate::dg::BracketSpec::new(),
        );
        alg.verify(&TruncationParams::new(4, 4)).unwrap();
        let env = env_presented(&alg).unwrap();
        let (dims, _) = env
            .dg
            .build_table(&TruncationParams::new(4, 4))
            .unwrap()
            .graded_dimension();
        assert_eq!(dims.values().copied().collect::<Vec<_>>(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn identity_functor_map() {
        let alg = verified_con(0, 1, 1);
        let env = env_presented(&alg).unwrap();
        let t = TruncationParams::new(5, 8);
        let id = AlgebraMap::identity(alg.gens());
        let (induced, report) = env_functor_map(&id, &alg, &alg, &env, &env, &t).unwrap();
        assert!(report.map_ok());
        // identity on generators
        for (i, img) in induced.images.iter().enumerate() {
            assert_eq!(*img, Element::generator(GenId(i as u32)));
        }
    }
}
