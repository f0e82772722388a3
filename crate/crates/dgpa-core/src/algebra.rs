//! Graded generators, noncommutative words, and free-algebra elements.
//!
//! An [`Element`] is a finitely supported linear combination of words over a
//! fixed [`GeneratorSet`]; the set is the ring-context object and all
//! arithmetic goes through it so that ambient mismatches are caught early.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::EngineError;
use crate::scalar::Scalar;

/// Index of a generator inside its ambient [`GeneratorSet`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenId(pub u32);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub degree: i64,
}

/// The ambient list of generators; owns naming, degrees and the canonical
/// monomial order (total degree first, then letter-by-letter id comparison).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(names_degrees: &[(&str, i64)]) -> Result<Self, EngineError> {
        let mut set = GeneratorSet { gens: Vec::new() };
        for (name, degree) in names_degrees {
            set.push(name, *degree)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, name: &str, degree: i64) -> Result<GenId, EngineError> {
        if name.is_empty() {
            return Err(EngineError::BadGenerator("empty generator name".into()));
        }
        if self.gens.iter().any(|g| g.name == name) {
            return Err(EngineError::BadGenerator(format!(
                "duplicate generator name {name:?}"
            )));
        }
        let id = GenId(self.gens.len() as u32);
        self.gens.push(Generator {
            id,
            name: name.to_string(),
            degree,
        });
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id.0 as usize]
    }

    pub fn degree(&self, id: GenId) -> i64 {
        self.gens[id.0 as usize].degree
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id.0 as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.gens.iter().find(|g| g.name == name).map(|g| g.id)
    }

    pub fn contains(&self, id: GenId) -> bool {
        (id.0 as usize) < self.gens.len()
    }

    fn check_word(&self, w: &Word) -> Result<(), EngineError> {
        for id in &w.letters {
            if !self.contains(*id) {
                return Err(EngineError::AmbientMismatch);
            }
        }
        Ok(())
    }

    pub fn check_element(&self, e: &Element) -> Result<(), EngineError> {
        for w in e.terms.keys() {
            self.check_word(w)?;
        }
        Ok(())
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.letters.iter().map(|id| self.degree(*id)).sum()
    }

    /// Canonical monomial order: total degree first, ids left to right.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        self.word_degree(a)
            .cmp(&self.word_degree(b))
            .then_with(|| a.letters.cmp(&b.letters))
    }
}

/// A word in the free algebra; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    pub letters: Vec<GenId>,
}

impl Word {
    pub fn unit() -> Self {
        Word { letters: vec![] }
    }

    pub fn single(id: GenId) -> Self {
        Word { letters: vec![id] }
    }

    pub fn from_ids(ids: &[GenId]) -> Self {
        Word {
            letters: ids.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn display<'a>(&'a self, ctx: &'a GeneratorSet) -> WordDisplay<'a> {
        WordDisplay { word: self, ctx }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    ctx: &'a GeneratorSet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, id) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", self.ctx.name(*id))?;
        }
        Ok(())
    }
}

/// Degree classification of an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegreeOf {
    Zero,
    Homogeneous(i64),
    Mixed,
}

/// A finitely supported linear combination of words; no zero coefficients
/// are ever stored, so structural equality is algebra equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Element::from_term(Word::unit(), Scalar::one())
    }

    pub fn generator(id: GenId) -> Self {
        Element::from_term(Word::single(id), Scalar::one())
    }

    pub fn from_term(word: Word, coeff: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Element { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (w, c) in pairs {
            e.add_term(w, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, by: &Scalar) -> Element {
        if by.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * by))
                .collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }

    /// Free multiplication: word concatenation extended bilinearly.
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    pub fn degree_of(&self, ctx: &GeneratorSet) -> DegreeOf {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return DegreeOf::Zero,
            Some(w) => ctx.word_degree(w),
        };
        for w in it {
            if ctx.word_degree(w) != first {
                return DegreeOf::Mixed;
            }
        }
        DegreeOf::Homogeneous(first)
    }

    pub fn is_homogeneous(&self, ctx: &GeneratorSet) -> bool {
        !matches!(self.degree_of(ctx), DegreeOf::Mixed)
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self, ctx: &GeneratorSet) -> BTreeMap<i64, Element> {
        let mut parts: BTreeMap<i64, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(ctx.word_degree(w))
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        parts
    }

    /// Re-expresses each word through `f`, summing the images.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let img = f(w);
            for (iw, ic) in &img.terms {
                out.add_term(iw.clone(), ic * c);
            }
        }
        out
    }

    /// Display with terms in canonical order (degree, then letter ids).
    pub fn display<'a>(&'a self, ctx: &'a GeneratorSet) -> ElementDisplay<'a> {
        ElementDisplay { elem: self, ctx }
    }
}

pub struct ElementDisplay<'a> {
    elem: &'a Element,
    ctx: &'a GeneratorSet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Word, &Scalar)> = self.elem.terms.iter().collect();
        terms.sort_by(|a, b| self.ctx.cmp_words(a.0, b.0));
        for (i, (w, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", w.display(self.ctx))?;
            } else {
                write!(f, "{} * {}", c, w.display(self.ctx))?;
            }
        }
        Ok(())
    }
}

/// Sign accrued when reordering homogeneous symbols: (-1)^k where k counts
/// odd-degree pairs that pass each other. `perm[i]` is the new position of
/// the symbol originally at position `i`.
pub fn koszul_sign(degrees: &[i64], perm: &[usize]) -> Result<Scalar, EngineError> {
    if degrees.len() != perm.len() {
        return Err(EngineError::PermutationMismatch {
            degrees: degrees.len(),
            permutation: perm.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(EngineError::PermutationMismatch {
                degrees: degrees.len(),
                permutation: perm.len(),
            });
        }
        seen[p] = true;
    }
    let mut parity = false;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] && degrees[i] % 2 != 0 && degrees[j] % 2 != 0 {
                parity = !parity;
            }
        }
    }
    Ok(if parity {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    })
}

/// Sign (-1)^{|a||b|}; only degree parities matter.
pub fn koszul_pair_sign(deg_a: i64, deg_b: i64) -> Scalar {
    if deg_a % 2 != 0 && deg_b % 2 != 0 {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// Sorts a word into nondecreasing generator ids, tracking the Koszul sign.
/// Returns `None` when the word dies, i.e. an odd generator repeats (over Q,
/// 2x^2 = 0 forces x^2 = 0).
pub fn gc_normalize_word(ctx: &GeneratorSet, w: &Word) -> Option<(Scalar, Word)> {
    let mut letters = w.letters.clone();
    let mut parity = false;
    // insertion sort, counting odd-odd transpositions
    for i in 1..letters.len() {
        let mut j = i;
        while j > 0 && letters[j - 1] > letters[j] {
            let da = ctx.degree(letters[j - 1]);
            let db = ctx.degree(letters[j]);
            if da % 2 != 0 && db % 2 != 0 {
                parity = !parity;
            }
            letters.swap(j - 1, j);
            j -= 1;
        }
    }
    for pair in letters.windows(2) {
        if pair[0] == pair[1] && ctx.degree(pair[0]) % 2 != 0 {
            return None;
        }
    }
    let sign = if parity {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    };
    Some((sign, Word { letters }))
}

/// Applies [`gc_normalize_word`] to every term.
pub fn gc_normalize_element(ctx: &GeneratorSet, e: &Element) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.terms() {
        if let Some((sign, sorted)) = gc_normalize_word(ctx, w) {
            out.add_term(sorted, &sign * c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_con() -> GeneratorSet {
        GeneratorSet::new(&[("x1", 1), ("x2", 2)]).unwrap()
    }

    #[test]
    fn mul_is_concatenation() {
        let ctx = ctx_con();
        let x1 = Element::generator(GenId(0));
        let x2 = Element::generator(GenId(1));
        let prod = x1.mul(&x2);
        assert_eq!(prod.num_terms(), 1);
        assert_eq!(prod.display(&ctx).to_string(), "x1.x2");
    }

    #[test]
    fn add_cancels() {
        let x1x2 = Element::from_term(Word::from_ids(&[GenId(0), GenId(1)]), Scalar::one());
        let neg = x1x2.neg();
        assert!(x1x2.add(&neg).is_zero());
    }

    // hand oracle: (2/3 x1) * (3 x2 x1) = 2 x1 x2 x1
    #[test]
    fn scaled_product() {
        let a = Element::from_term(Word::single(GenId(0)), Scalar::ratio(2, 3));
        let b = Element::from_term(
            Word::from_ids(&[GenId(1), GenId(0)]),
            Scalar::from_int(3),
        );
        let p = a.mul(&b);
        assert_eq!(
            p,
            Element::from_term(
                Word::from_ids(&[GenId(0), GenId(1), GenId(0)]),
                Scalar::from_int(2)
            )
        );
    }

    #[test]
    fn mul_unital_and_associative() {
        let one = Element::unit();
        let a = Element::from_terms([
            (Word::single(GenId(0)), Scalar::from_int(2)),
            (Word::from_ids(&[GenId(1), GenId(0)]), Scalar::ratio(1, 2)),
        ]);
        assert_eq!(one.mul(&a), a);
        assert_eq!(a.mul(&one), a);
        let b = Element::generator(GenId(1));
        let c = Element::from_term(Word::single(GenId(0)), Scalar::from_int(-3));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn degree_classification() {
        let ctx = ctx_con();
        let x1 = Element::generator(GenId(0));
        assert_eq!(x1.degree_of(&ctx), DegreeOf::Homogeneous(1));
        let mixed = x1.add(&Element::generator(GenId(1)));
        assert_eq!(mixed.degree_of(&ctx), DegreeOf::Mixed);
        assert_eq!(Element::zero().degree_of(&ctx), DegreeOf::Zero);
    }

    #[test]
    fn koszul_examples() {
        // odd-odd swap
        assert_eq!(
            koszul_sign(&[1, 1], &[1, 0]).unwrap(),
            Scalar::from_int(-1)
        );
        // even factor kills the sign
        assert_eq!(koszul_sign(&[2, 3], &[1, 0]).unwrap(), Scalar::one());
        // abc -> cab: two adjacent odd swaps, each -1
        assert_eq!(koszul_sign(&[1, 1, 1], &[1, 2, 0]).unwrap(), Scalar::one());
        assert!(koszul_sign(&[1, 1], &[0]).is_err());
        assert!(koszul_sign(&[1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn gc_normalization() {
        let ctx = ctx_con();
        // x2 x1 -> +x1 x2 (odd * even, no sign)
        let (s, w) = gc_normalize_word(&ctx, &Word::from_ids(&[GenId(1), GenId(0)])).unwrap();
        assert_eq!(s, Scalar::one());
        assert_eq!(w, Word::from_ids(&[GenId(0), GenId(1)]));
        // odd square dies
        assert!(gc_normalize_word(&ctx, &Word::from_ids(&[GenId(0), GenId(0)])).is_none());
    }

    #[test]
    fn display_syntax() {
        let ctx = ctx_con();
        let e = Element::from_terms([
            (Word::unit(), Scalar::ratio(2, 3)),
            (Word::from_ids(&[GenId(0), GenId(1)]), Scalar::from_int(-1)),
            (Word::single(GenId(0)), Scalar::one()),
        ]);
        assert_eq!(e.display(&ctx).to_string(), "2/3 + x1 + -1 * x1.x2");
    }
}
