//! Generator maps between presentations and the isomorphism comparator.
//!
//! A comparison certifies "iso-up-to-window": the forward map preserves
//! relations and differentials, windowed graded dimensions agree, and when
//! an inverse candidate is supplied both round trips are the identity on
//! generators modulo the ideals. Everything is exact; the verdict is a
//! bounded claim about the stated window.

use serde::Serialize;

use crate::algebra::{DegreeOf, Element, GenId, GeneratorSet};
use crate::dg::{apply_bracket, DGPAlgebra, DgPresentation};
use crate::error::EngineError;
use crate::presentation::{Exactness, NormalFormTable, TruncationParams};

/// A map defined on generators: image elements live over the target set.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub images: Vec<Element>,
}

impl AlgebraMap {
    pub fn new(images: Vec<Element>) -> Self {
        AlgebraMap { images }
    }

    pub fn identity(gens: &GeneratorSet) -> Self {
        AlgebraMap {
            images: gens.iter().map(|g| Element::generator(g.id)).collect(),
        }
    }

    pub fn image_of(&self, g: GenId) -> &Element {
        &self.images[g.0 as usize]
    }

    /// Substitution homomorphism: every word maps to the product of its
    /// letter images.
    pub fn apply(&self, e: &Element) -> Element {
        e.map_words(|w| {
            let mut out = Element::unit();
            for id in &w.letters {
                out = out.mul(self.image_of(*id));
            }
            out
        })
    }

    /// Post-compose with `then` (whose source is this map's target).
    pub fn compose(&self, then: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            images: self.images.iter().map(|e| then.apply(e)).collect(),
        }
    }

    pub fn check_degree_preserving(
        &self,
        src: &GeneratorSet,
        dst: &GeneratorSet,
    ) -> Result<(), EngineError> {
        if self.images.len() != src.len() {
            return Err(EngineError::NotAMap(format!(
                "{} generator images given for {} generators",
                self.images.len(),
                src.len()
            )));
        }
        for g in src.iter() {
            match self.images[g.id.0 as usize].degree_of(dst) {
                DegreeOf::Zero => {}
                DegreeOf::Homogeneous(d) if d == g.degree => {}
                other => {
                    return Err(EngineError::NotAMap(format!(
                        "image of {} must be homogeneous of degree {}, got {:?}",
                        g.name, g.degree, other
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Verifies that `f` is a DGPA map within the window: degree-preserving,
/// relations map into the target ideal, and f commutes with d and {,} on
/// generators modulo the ideal.
pub fn verify_dgpa_map(
    f: &AlgebraMap,
    src: &DGPAlgebra,
    dst: &DGPAlgebra,
    t: &TruncationParams,
) -> Result<(), EngineError> {
    f.check_degree_preserving(src.gens(), dst.gens())?;
    let dst_table = dst.presentation.build_table(t)?;
    for r in &src.presentation.relations {
        let img = dst_table.normal_form(dst.gens(), &f.apply(r))?;
        if !img.is_zero() {
            return Err(EngineError::NotAMap(format!(
                "relation {} maps to {} != 0",
                r.display(src.gens()),
                img.display(dst.gens())
            )));
        }
    }
    for g in src.gens().iter() {
        let lhs = dst_table.normal_form(dst.gens(), &f.apply(&src.diff.image(g.id)))?;
        let rhs = dst.apply_d(&dst_table, f.image_of(g.id))?;
        if lhs != rhs {
            return Err(EngineError::NotAMap(format!(
                "f(d({0})) = {1} but d(f({0})) = {2}",
                g.name,
                lhs.display(dst.gens()),
                rhs.display(dst.gens())
            )));
        }
    }
    for ga in src.gens().iter() {
        for gb in src.gens().iter() {
            if ga.id > gb.id {
                continue;
            }
            let br = src.bracket.pair(src.gens(), ga.id, gb.id);
            let lhs = dst_table.normal_form(dst.gens(), &f.apply(&br))?;
            let rhs = apply_bracket(
                dst,
                &dst_table,
                f.image_of(ga.id),
                f.image_of(gb.id),
            )?;
            if lhs != rhs {
                return Err(EngineError::NotAMap(format!(
                    "f({{{0},{1}}}) = {2} but {{f({0}),f({1})}} = {3}",
                    ga.name,
                    gb.name,
                    lhs.display(dst.gens()),
                    rhs.display(dst.gens())
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IsoUpToWindow,
    MapOnly,
    Failed,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::IsoUpToWindow => write!(f, "iso-up-to-window"),
            Verdict::MapOnly => write!(f, "map-only"),
            Verdict::Failed => write!(f, "failed"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationStatus {
    pub subject: String,
    pub reduces_to_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimComparison {
    pub degree: i64,
    pub left: usize,
    pub right: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub window: TruncationParams,
    pub generator_map: Vec<(String, String)>,
    pub forward_relations: Vec<RelationStatus>,
    pub backward_relations: Vec<RelationStatus>,
    pub differential: Vec<RelationStatus>,
    pub backward_differential: Vec<RelationStatus>,
    pub roundtrip: Vec<RelationStatus>,
    pub dims: Vec<DimComparison>,
    pub left_exactness: Exactness,
    pub right_exactness: Exactness,
    pub verdict: Verdict,
}

impl IsoReport {
    pub fn map_ok(&self) -> bool {
        self.forward_relations.iter().all(|r| r.reduces_to_zero)
            && self.differential.iter().all(|r| r.reduces_to_zero)
    }

    pub fn all_ok(&self) -> bool {
        self.map_ok()
            && self.backward_relations.iter().all(|r| r.reduces_to_zero)
            && self
                .backward_differential
                .iter()
                .all(|r| r.reduces_to_zero)
            && self.roundtrip.iter().all(|r| r.reduces_to_zero)
            && self.dims.iter().all(|d| d.equal)
    }
}

fn relation_images(
    label: impl Fn(usize) -> String,
    elems: &[Element],
    map: &AlgebraMap,
    dst_gens: &GeneratorSet,
    dst_table: &NormalFormTable,
) -> Result<Vec<RelationStatus>, EngineError> {
    let mut out = Vec::new();
    for (i, r) in elems.iter().enumerate() {
        let img = dst_table.normal_form(dst_gens, &map.apply(r))?;
        out.push(RelationStatus {
            subject: label(i),
            reduces_to_zero: img.is_zero(),
            residue: if img.is_zero() {
                None
            } else {
                Some(img.display(dst_gens).to_string())
            },
        });
    }
    Ok(out)
}

fn differential_compat(
    src: &DgPresentation,
    dst: &DgPresentation,
    map: &AlgebraMap,
    dst_table: &NormalFormTable,
) -> Result<Vec<RelationStatus>, EngineError> {
    let mut out = Vec::new();
    for g in src.gens().iter() {
        let lhs = dst_table.normal_form(dst.gens(), &map.apply(&src.diff.image(g.id)))?;
        let rhs = dst.apply_d(dst_table, map.image_of(g.id))?;
        let diff = lhs.sub(&rhs);
        out.push(RelationStatus {
            subject: format!("d({})", g.name),
            reduces_to_zero: diff.is_zero(),
            residue: if diff.is_zero() {
                None
            } else {
                Some(diff.display(dst.gens()).to_string())
            },
        });
    }
    Ok(out)
}

/// Compares two presented DG algebras along a generator map (optionally
/// with an inverse candidate) and issues the windowed verdict.
pub fn compare_presentations(
    p: &DgPresentation,
    q: &DgPresentation,
    fwd: &AlgebraMap,
    bwd: Option<&AlgebraMap>,
    t: &TruncationParams,
) -> Result<IsoReport, EngineError> {
    fwd.check_degree_preserving(p.gens(), q.gens())?;
    if let Some(b) = bwd {
        b.check_degree_preserving(q.gens(), p.gens())?;
    }
    let p_table = p.build_table(t)?;
    let q_table = q.build_table(t)?;

    let generator_map = p
        .gens()
        .iter()
        .map(|g| {
            (
                g.name.clone(),
                fwd.image_of(g.id).display(q.gens()).to_string(),
            )
        })
        .collect();

    // forward relations include the implied commutations of a gc source:
    // the map must kill them in the target too
    let mut p_rels = p.presentation.relations.clone();
    if p.presentation.graded_commutative {
        p_rels.extend(p.presentation.materialized_commutations());
    }
    let p_rel_names: Vec<String> = p_rels
        .iter()
        .map(|r| r.display(p.gens()).to_string())
        .collect();
    let forward_relations = relation_images(
        |i| p_rel_names[i].clone(),
        &p_rels,
        fwd,
        q.gens(),
        &q_table,
    )?;
    let differential = differential_compat(p, q, fwd, &q_table)?;

    let mut backward_relations = Vec::new();
    let mut backward_differential = Vec::new();
    let mut roundtrip = Vec::new();
    if let Some(b) = bwd {
        let mut q_rels = q.presentation.relations.clone();
        if q.presentation.graded_commutative {
            q_rels.extend(q.presentation.materialized_commutations());
        }
        let q_rel_names: Vec<String> = q_rels
            .iter()
            .map(|r| r.display(q.gens()).to_string())
            .collect();
        backward_relations = relation_images(
            |i| q_rel_names[i].clone(),
            &q_rels,
            b,
            p.gens(),
            &p_table,
        )?;
        backward_differential = differential_compat(q, p, b, &p_table)?;
        for g in p.gens().iter() {
            let round = p_table.normal_form(p.gens(), &b.apply(fwd.image_of(g.id)))?;
            let diff = round.sub(&Element::generator(g.id));
            let diff = p_table.normal_form(p.gens(), &diff)?;
            roundtrip.push(RelationStatus {
                subject: format!("bwd(fwd({}))", g.name),
                reduces_to_zero: diff.is_zero(),
                residue: if diff.is_zero() {
                    None
                } else {
                    Some(diff.display(p.gens()).to_string())
                },
            });
        }
        for g in q.gens().iter() {
            let round = q_table.normal_form(q.gens(), &fwd.apply(b.image_of(g.id)))?;
            let diff = round.sub(&Element::generator(g.id));
            let diff = q_table.normal_form(q.gens(), &diff)?;
            roundtrip.push(RelationStatus {
                subject: format!("fwd(bwd({}))", g.name),
                reduces_to_zero: diff.is_zero(),
                residue: if diff.is_zero() {
                    None
                } else {
                    Some(diff.display(q.gens()).to_string())
                },
            });
        }
    }

    let (dims_p, ex_p) = p_table.graded_dimension();
    let (dims_q, ex_q) = q_table.graded_dimension();
    let dims = dims_p
        .iter()
        .map(|(d, n)| {
            let m = dims_q.get(d).copied().unwrap_or(0);
            DimComparison {
                degree: *d,
                left: *n,
                right: m,
                equal: *n == m,
            }
        })
        .collect();

    let mut report = IsoReport {
        window: *t,
        generator_map,
        forward_relations,
        backward_relations,
        differential,
        backward_differential,
        roundtrip,
        dims,
        left_exactness: ex_p,
        right_exactness: ex_q,
        verdict: Verdict::Failed,
    };
    report.verdict = if !report.map_ok() {
        Verdict::Failed
    } else if report.all_ok() {
        Verdict::IsoUpToWindow
    } else {
        Verdict::MapOnly
    };
    Ok(report)
}

/// Canonicalized in-window relation rows per degree: the unique reduced
/// echelon description of the ideal, for exact syntactic comparisons.
pub fn canonical_relation_rows(
    p: &DgPresentation,
    t: &TruncationParams,
) -> Result<Vec<(i64, Vec<String>)>, EngineError> {
    let mut table = p.build_table(t)?;
    let mut out = Vec::new();
    for d in t.min_degree..=t.max_degree {
        let rows = table.canonical_rows(d);
        out.push((
            d,
            rows.iter()
                .map(|e| e.display(p.gens()).to_string())
                .collect(),
        ));
    }
    Ok(out)
}

/// Zero image for maps out of generator-free sources.
pub fn empty_map() -> AlgebraMap {
    AlgebraMap { images: vec![] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::tests::con_algebra;
    use crate::dg::DifferentialSpec;
    use crate::presentation::Presentation;

    fn con_dg(lambda: i64, mu: i64, p: i64) -> DgPresentation {
        let alg = con_algebra(lambda, mu, p);
        DgPresentation {
            presentation: alg.presentation.clone(),
            diff: alg.diff.clone(),
        }
    }

    #[test]
    fn identity_map_is_an_iso() {
        let p = con_dg(0, 1, 1);
        let t = TruncationParams::new(6, 8);
        let id = AlgebraMap::identity(p.gens());
        let report = compare_presentations(&p, &p, &id, Some(&id), &t).unwrap();
        assert_eq!(report.verdict, Verdict::IsoUpToWindow);
    }

    #[test]
    fn degree_breaking_map_is_rejected() {
        let p = con_dg(0, 1, 1);
        let t = TruncationParams::new(6, 8);
        let bad = AlgebraMap::new(vec![
            Element::generator(GenId(1)), // x1 -> x2 breaks degrees
            Element::generator(GenId(1)),
        ]);
        assert!(matches!(
            compare_presentations(&p, &p, &bad, None, &t),
            Err(EngineError::NotAMap(_))
        ));
    }

    #[test]
    fn dgpa_map_verifier_accepts_identity_and_rejects_nonmaps() {
        let mut a = con_algebra(0, 1, 1);
        let t = TruncationParams::new(6, 8);
        a.verify(&t).unwrap();
        let id = AlgebraMap::identity(a.gens());
        verify_dgpa_map(&id, &a, &a, &t).unwrap();

        // x1 -> 2 x1, x2 -> 2 x2 fails d-compatibility: d(x2) is quadratic
        let bad = AlgebraMap::new(vec![
            Element::generator(GenId(0)).scale(&Scalar::from_int(2)),
            Element::generator(GenId(1)).scale(&Scalar::from_int(2)),
        ]);
        assert!(matches!(
            verify_dgpa_map(&bad, &a, &a, &t),
            Err(EngineError::NotAMap(_))
        ));
    }

    #[test]
    fn dim_mismatch_gives_map_only() {
        // source: exterior line; target: polynomial line (even gen).
        // x -> 0 is a valid DG map but dims differ.
        let gens_p = crate::algebra::GeneratorSet::new(&[("e", 1)]).unwrap();
        let p = DgPresentation {
            presentation: Presentation::new("ext", gens_p, vec![], true).unwrap(),
            diff: DifferentialSpec::new(),
        };
        let gens_q = crate::algebra::GeneratorSet::new(&[("u", 1)]).unwrap();
        let q = DgPresentation {
            presentation: Presentation::new("free", gens_q, vec![], false).unwrap(),
            diff: DifferentialSpec::new(),
        };
        let zero_map = AlgebraMap::new(vec![Element::zero()]);
        let t = TruncationParams::new(3, 6);
        let report = compare_presentations(&p, &q, &zero_map, None, &t).unwrap();
        assert_eq!(report.verdict, Verdict::MapOnly);
    }
}
