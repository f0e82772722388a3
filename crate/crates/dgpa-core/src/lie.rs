//! Finite-dimensional differential graded Lie algebras via structure
//! constants, and the constructions that feed the envelope machinery:
//! the semidirect product L x| L, the enveloping algebra U(L), and the
//! graded symmetric algebra SL.

use std::collections::BTreeMap;

use crate::algebra::{koszul_pair_sign, Element, GenId, GeneratorSet, Word};
use crate::dg::{BracketSpec, DGPAlgebra, DgPresentation, DifferentialSpec};
use crate::error::EngineError;
use crate::presentation::{Presentation, TruncationParams};
use crate::scalar::Scalar;

/// Coefficient vector over the Lie basis.
pub type LieVec = Vec<Scalar>;

fn zero_vec(n: usize) -> LieVec {
    vec![Scalar::zero(); n]
}

fn add_assign(a: &mut LieVec, b: &LieVec, c: &Scalar) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += &(y * c);
    }
}

fn is_zero_vec(v: &LieVec) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// (L, [,]_L, d) with all data as exact finite tables. Structure constants
/// are stored for ordered pairs a <= b; the rest follow by antisymmetry.
#[derive(Clone, Debug)]
pub struct DGLieAlgebra {
    pub basis: GeneratorSet,
    brackets: BTreeMap<(u32, u32), LieVec>,
    diff: Vec<LieVec>,
}

impl DGLieAlgebra {
    pub fn new(basis: GeneratorSet) -> Self {
        let n = basis.len();
        DGLieAlgebra {
            basis,
            brackets: BTreeMap::new(),
            diff: vec![zero_vec(n); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn set_bracket(&mut self, a: GenId, b: GenId, value: LieVec) -> Result<(), EngineError> {
        if value.len() != self.dim() {
            return Err(EngineError::BadStructure(
                "bracket vector has wrong length".into(),
            ));
        }
        let (key, value) = if a.0 <= b.0 {
            ((a.0, b.0), value)
        } else {
            let sign = koszul_pair_sign(self.basis.degree(a), self.basis.degree(b));
            let mut v = zero_vec(self.dim());
            add_assign(&mut v, &value, &-&sign);
            ((b.0, a.0), v)
        };
        if is_zero_vec(&value) {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, value);
        }
        Ok(())
    }

    pub fn set_diff(&mut self, g: GenId, value: LieVec) -> Result<(), EngineError> {
        if value.len() != self.dim() {
            return Err(EngineError::BadStructure(
                "differential vector has wrong length".into(),
            ));
        }
        self.diff[g.0 as usize] = value;
        Ok(())
    }

    /// [e_a, e_b] as a coefficient vector.
    pub fn bracket_basis(&self, a: GenId, b: GenId) -> LieVec {
        if a.0 <= b.0 {
            self.brackets
                .get(&(a.0, b.0))
                .cloned()
                .unwrap_or_else(|| zero_vec(self.dim()))
        } else {
            let sign = koszul_pair_sign(self.basis.degree(a), self.basis.degree(b));
            let mut out = zero_vec(self.dim());
            if let Some(v) = self.brackets.get(&(b.0, a.0)) {
                add_assign(&mut out, v, &-&sign);
            }
            out
        }
    }

    pub fn bracket_vec(&self, a: &LieVec, b: &LieVec) -> LieVec {
        let mut out = zero_vec(self.dim());
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let bb = self.bracket_basis(GenId(i as u32), GenId(j as u32));
                add_assign(&mut out, &bb, &(ca * cb));
            }
        }
        out
    }

    pub fn diff_basis(&self, g: GenId) -> &LieVec {
        &self.diff[g.0 as usize]
    }

    pub fn diff_vec(&self, v: &LieVec) -> LieVec {
        let mut out = zero_vec(self.dim());
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                add_assign(&mut out, &self.diff[i], c);
            }
        }
        out
    }

    fn vec_degree_ok(&self, v: &LieVec, expected: i64) -> bool {
        v.iter().enumerate().all(|(i, c)| {
            c.is_zero() || self.basis.degree(GenId(i as u32)) == expected
        })
    }

    /// Exact structural checks: degree consistency, antisymmetry on the
    /// diagonal, graded Jacobi on basis triples, d^2 = 0 and the Leibniz
    /// rule on basis pairs. Returns every violation found.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.dim() as u32;
        for (&(a, b), v) in &self.brackets {
            let expected =
                self.basis.degree(GenId(a)) + self.basis.degree(GenId(b));
            if !self.vec_degree_ok(v, expected) {
                out.push(format!(
                    "[{},{}] is not homogeneous of degree {expected}",
                    self.basis.name(GenId(a)),
                    self.basis.name(GenId(b))
                ));
            }
            if a == b && self.basis.degree(GenId(a)) % 2 == 0 && !is_zero_vec(v) {
                out.push(format!(
                    "[{0},{0}] must vanish for an even generator",
                    self.basis.name(GenId(a))
                ));
            }
        }
        for i in 0..n {
            let expected = self.basis.degree(GenId(i)) + 1;
            if !self.vec_degree_ok(&self.diff[i as usize], expected) {
                out.push(format!(
                    "d({}) is not homogeneous of degree {expected}",
                    self.basis.name(GenId(i))
                ));
            }
        }
        // graded Jacobi on basis triples
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ea = unit_vec(self.dim(), a);
                    let eb = unit_vec(self.dim(), b);
                    let ec = unit_vec(self.dim(), c);
                    let lhs = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let mut rhs = self.bracket_vec(&self.bracket_vec(&ea, &eb), &ec);
                    let sign = koszul_pair_sign(
                        self.basis.degree(GenId(a)),
                        self.basis.degree(GenId(b)),
                    );
                    let t2 = self.bracket_vec(&eb, &self.bracket_vec(&ea, &ec));
                    add_assign(&mut rhs, &t2, &sign);
                    let mut diff = lhs;
                    add_assign(&mut diff, &rhs, &Scalar::from_int(-1));
                    if !is_zero_vec(&diff) {
                        out.push(format!(
                            "Jacobi fails on ({},{},{})",
                            self.basis.name(GenId(a)),
                            self.basis.name(GenId(b)),
                            self.basis.name(GenId(c))
                        ));
                    }
                }
            }
        }
        // d^2 = 0
        for i in 0..n {
            let dd = self.diff_vec(&self.diff[i as usize]);
            if !is_zero_vec(&dd) {
                out.push(format!("d^2({}) != 0", self.basis.name(GenId(i))));
            }
        }
        // Leibniz: d[a,b] = [da,b] + (-1)^{|a|}[a,db]
        for a in 0..n {
            for b in 0..n {
                let ea = unit_vec(self.dim(), a);
                let eb = unit_vec(self.dim(), b);
                let lhs = self.diff_vec(&self.bracket_vec(&ea, &eb));
                let mut rhs = self.bracket_vec(&self.diff[a as usize], &eb);
                let sign = if self.basis.degree(GenId(a)) % 2 != 0 {
                    Scalar::from_int(-1)
                } else {
                    Scalar::one()
                };
                let t2 = self.bracket_vec(&ea, &self.diff[b as usize]);
                add_assign(&mut rhs, &t2, &sign);
                let mut diff = lhs;
                add_assign(&mut diff, &rhs, &Scalar::from_int(-1));
                if !is_zero_vec(&diff) {
                    out.push(format!(
                        "Leibniz fails on ({},{})",
                        self.basis.name(GenId(a)),
                        self.basis.name(GenId(b))
                    ));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(EngineError::BadStructure(v.join("; ")))
        }
    }

    /// Expresses a coefficient vector over a generator set whose first
    /// `dim()` generators mirror the basis, offset by `shift`.
    pub fn vec_to_element(&self, v: &LieVec, shift: u32) -> Element {
        Element::from_terms(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(
            |(i, c)| (Word::single(GenId(i as u32 + shift)), c.clone()),
        ))
    }
}

fn unit_vec(n: usize, i: u32) -> LieVec {
    let mut v = zero_vec(n);
    v[i as usize] = Scalar::one();
    v
}

/// The graded semidirect product L x| L on the doubled basis, with
/// {(x1,x2),(y1,y2)} = ([x2,y1] - (-1)^{|x||y|}[y2,x1], [x2,y2]) and the
/// componentwise differential.
pub fn semidirect(l: &DGLieAlgebra) -> Result<DGLieAlgebra, EngineError> {
    l.validate()?;
    let n = l.dim();
    let mut basis = GeneratorSet::default();
    for g in l.basis.iter() {
        basis.push(&g.name, g.degree)?;
    }
    for g in l.basis.iter() {
        basis.push(&format!("s_{}", g.name), g.degree)?;
    }
    let mut out = DGLieAlgebra::new(basis);

    // embed a first-copy/second-copy pair vector into the doubled space
    let embed = |first: &LieVec, second: &LieVec| -> LieVec {
        let mut v = zero_vec(2 * n);
        for (i, c) in first.iter().enumerate() {
            v[i] = c.clone();
        }
        for (i, c) in second.iter().enumerate() {
            v[n + i] = c.clone();
        }
        v
    };
    let part = |id: u32| -> (LieVec, LieVec) {
        // basis vector of the doubled algebra as (first, second) components
        let mut first = zero_vec(n);
        let mut second = zero_vec(n);
        if (id as usize) < n {
            first[id as usize] = Scalar::one();
        } else {
            second[id as usize - n] = Scalar::one();
        }
        (first, second)
    };

    for a in 0..(2 * n) as u32 {
        for b in a..(2 * n) as u32 {
            let (x1, x2) = part(a);
            let (y1, y2) = part(b);
            let da = out.basis.degree(GenId(a));
            let db = out.basis.degree(GenId(b));
            // first component: [x2,y1] - (-1)^{|x||y|}[y2,x1]
            let mut first = l.bracket_vec(&x2, &y1);
            let t = l.bracket_vec(&y2, &x1);
            add_assign(&mut first, &t, &-&koszul_pair_sign(da, db));
            // second component: [x2,y2]
            let second = l.bracket_vec(&x2, &y2);
            out.set_bracket(GenId(a), GenId(b), embed(&first, &second))?;
        }
    }
    for g in 0..(2 * n) as u32 {
        let (x1, x2) = part(g);
        out.set_diff(GenId(g), embed(&l.diff_vec(&x1), &l.diff_vec(&x2)))?;
    }
    Ok(out)
}

/// U(L): the quotient of the tensor algebra on the basis by
/// g h - (-1)^{|g||h|} h g - [g,h].
pub fn universal_env_lie(l: &DGLieAlgebra) -> Result<DgPresentation, EngineError> {
    l.validate()?;
    let gens = l.basis.clone();
    let n = l.dim() as u32;
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a..n {
            let da = gens.degree(GenId(a));
            let db = gens.degree(GenId(b));
            let mut rel = Element::from_term(Word::from_ids(&[GenId(a), GenId(b)]), Scalar::one());
            rel.add_term(
                Word::from_ids(&[GenId(b), GenId(a)]),
                -&koszul_pair_sign(da, db),
            );
            let br = l.vec_to_element(&l.bracket_basis(GenId(a), GenId(b)), 0);
            let rel = rel.sub(&br);
            if !rel.is_zero() {
                relations.push(rel);
            }
        }
    }
    let presentation = Presentation::new(
        &format!("U({})", l.basis.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(",")),
        gens.clone(),
        relations,
        false,
    )?;
    let mut diff = DifferentialSpec::new();
    for g in 0..n {
        let img = l.vec_to_element(l.diff_basis(GenId(g)), 0);
        diff.set(&gens, GenId(g), img)?;
    }
    Ok(DgPresentation { presentation, diff })
}

/// SL: the free graded-commutative algebra on the basis, with the bracket
/// extended from the structure constants; verified as a DGPA in the window.
pub fn symmetric_algebra(
    l: &DGLieAlgebra,
    t: &TruncationParams,
) -> Result<(DGPAlgebra, crate::dg::AxiomReport), EngineError> {
    l.validate()?;
    let gens = l.basis.clone();
    let presentation = Presentation::new(
        &format!("S({})", l.basis.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(",")),
        gens.clone(),
        vec![],
        true,
    )?;
    let mut diff = DifferentialSpec::new();
    let mut bracket = BracketSpec::new();
    let n = l.dim() as u32;
    for g in 0..n {
        diff.set(&gens, GenId(g), l.vec_to_element(l.diff_basis(GenId(g)), 0))?;
    }
    for a in 0..n {
        for b in a..n {
            bracket.set(
                &gens,
                GenId(a),
                GenId(b),
                l.vec_to_element(&l.bracket_basis(GenId(a), GenId(b)), 0),
            )?;
        }
    }
    let mut alg = DGPAlgebra::new(presentation, diff, bracket);
    let report = alg.verify(t)?;
    Ok((alg, report))
}
