//! Exact sparse row reduction over the rationals.
//!
//! Rows are sparse vectors sorted by column. The echelon keeps one monic row
//! per pivot column, with the pivot chosen as the *largest* column of the
//! row; reducing a vector repeatedly eliminates its largest pivot-column
//! entry, which terminates and yields the unique representative supported on
//! non-pivot columns. No numerical tolerances exist anywhere.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse vector: (column, coefficient) pairs, strictly ascending columns,
/// no zero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(dense: &[Scalar]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, ncols: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); ncols];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// out += coeff * row
fn axpy(out: &mut SparseVec, coeff: &Scalar, row: &SparseVec) {
    if coeff.is_zero() {
        return;
    }
    let mut merged: SparseVec = Vec::with_capacity(out.len() + row.len());
    let mut a = out.iter().peekable();
    let mut b = row.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some((ca, _)), Some((cb, _))) if ca == cb => {
                let (col, va) = a.next().unwrap();
                let (_, vb) = b.next().unwrap();
                let v = va + &(coeff * vb);
                if !v.is_zero() {
                    merged.push((*col, v));
                }
            }
            (Some((ca, _)), Some((cb, _))) if ca < cb => {
                let (col, va) = a.next().unwrap();
                merged.push((*col, va.clone()));
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                let (col, vb) = b.next().unwrap();
                merged.push((*col, coeff * vb));
            }
            (Some(_), None) => {
                let (col, va) = a.next().unwrap();
                merged.push((*col, va.clone()));
            }
            (None, None) => break,
        }
    }
    *out = merged;
}

/// Row echelon over Q with max-column pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Eliminates every pivot column from `v`; the result is the canonical
    /// representative of `v` modulo the row space.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            // the largest column of v that is a pivot
            let hit = v
                .iter()
                .rev()
                .find(|(col, _)| self.rows.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            match hit {
                None => return v,
                Some((col, coeff)) => {
                    let row = &self.rows[&col];
                    axpy(&mut v, &-&coeff, row);
                }
            }
        }
    }

    /// Reduces and, if nonzero, inserts with its largest column as pivot.
    /// Returns the new pivot column, or None when `v` was dependent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let mut v = self.reduce(v);
        let (pivot, lead) = match v.last() {
            None => return None,
            Some((col, c)) => (*col, c.clone()),
        };
        let inv = lead.inv().expect("nonzero lead");
        for (_, c) in v.iter_mut() {
            *c *= &inv;
        }
        self.rows.insert(pivot, v);
        Some(pivot)
    }

    /// Fully inter-reduces the stored rows (reduced row echelon form), so
    /// that each row is the canonical generator for its pivot. Used when the
    /// rows themselves are compared across engines.
    pub fn inter_reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        // reduce from the smallest pivot upward; rows only reference
        // strictly smaller columns afterwards
        for &p in &pivots {
            let mut row = self.rows.remove(&p).unwrap();
            row = self.reduce_except_lead(row, p);
            self.rows.insert(p, row);
        }
    }

    fn reduce_except_lead(&self, mut v: SparseVec, lead: usize) -> SparseVec {
        loop {
            let hit = v
                .iter()
                .rev()
                .find(|(col, _)| *col != lead && self.rows.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            match hit {
                None => return v,
                Some((col, coeff)) => {
                    let row = &self.rows[&col];
                    axpy(&mut v, &-&coeff, row);
                }
            }
        }
    }
}

/// Echelon that tracks how each inserted vector decomposes over the
/// original insertions: used for kernels and for expressing a target in the
/// span of given vectors.
#[derive(Clone, Debug, Default)]
pub struct TrackedEchelon {
    // pivot col -> (row over data columns, combination over inserted vectors)
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
    kernel: Vec<SparseVec>,
}

impl TrackedEchelon {
    pub fn new() -> Self {
        TrackedEchelon::default()
    }

    /// Inserts `v`; when it is dependent on earlier insertions the reducing
    /// combination is recorded as a kernel vector.
    pub fn insert(&mut self, v: SparseVec) {
        let tag = self.inserted;
        self.inserted += 1;
        let mut data = v;
        let mut combo: SparseVec = vec![(tag, Scalar::one())];
        loop {
            let hit = data
                .iter()
                .rev()
                .find(|(col, _)| self.rows.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            match hit {
                None => break,
                Some((col, coeff)) => {
                    let (row, rc) = &self.rows[&col];
                    let neg = -&coeff;
                    axpy(&mut data, &neg, row);
                    let rc = rc.clone();
                    axpy(&mut combo, &neg, &rc);
                }
            }
        }
        match data.last() {
            None => self.kernel.push(combo),
            Some((col, lead)) => {
                let pivot = *col;
                let inv = lead.inv().expect("nonzero lead").clone();
                for (_, c) in data.iter_mut() {
                    *c *= &inv;
                }
                for (_, c) in combo.iter_mut() {
                    *c *= &inv;
                }
                self.rows.insert(pivot, (data, combo));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Combinations of the inserted vectors that vanish, as coefficient
    /// vectors indexed by insertion order.
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    /// Expresses `target` as a combination of the inserted vectors, if it
    /// lies in their span.
    pub fn solve(&self, target: SparseVec) -> Option<SparseVec> {
        let mut data = target;
        let mut combo: SparseVec = Vec::new();
        loop {
            let hit = data
                .iter()
                .rev()
                .find(|(col, _)| self.rows.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            match hit {
                None => break,
                Some((col, coeff)) => {
                    let (row, rc) = &self.rows[&col];
                    let neg = -&coeff;
                    axpy(&mut data, &neg, row);
                    let rc = rc.clone();
                    // target - sum(combo_i * v_i) is being reduced, so the
                    // solving combination accumulates +coeff * rc
                    axpy(&mut combo, &coeff, &rc);
                }
            }
        }
        if data.is_empty() {
            Some(combo)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn reduce_gives_canonical_rep() {
        let mut e = Echelon::new();
        // row: col2 = col0 (x2x1 -> x1x2 style rewrite)
        e.insert(vec![(0, s(-1)), (2, s(1))]);
        let r = e.reduce(vec![(2, s(3))]);
        assert_eq!(r, vec![(0, s(3))]);
        // dependent row vanishes
        assert!(e.clone().insert(vec![(0, s(2)), (2, s(-2))]).is_none());
    }

    #[test]
    fn rank_and_pivots() {
        let mut e = Echelon::new();
        e.insert(vec![(0, s(1)), (1, s(1))]);
        e.insert(vec![(1, s(2))]);
        e.insert(vec![(0, s(5)), (1, s(7))]);
        assert_eq!(e.rank(), 2);
        assert!(e.is_pivot(0) && e.is_pivot(1));
    }

    #[test]
    fn tracked_kernel() {
        let mut t = TrackedEchelon::new();
        t.insert(vec![(0, s(1)), (1, s(1))]);
        t.insert(vec![(0, s(2)), (1, s(2))]);
        assert_eq!(t.rank(), 1);
        assert_eq!(t.kernel().len(), 1);
        // kernel combo: v1 - 2 v0 = 0
        let k = &t.kernel()[0];
        let mut dense = vec![s(0), s(0)];
        for (i, c) in k {
            dense[*i] = c.clone();
        }
        // combo * [v0; v1] must vanish
        assert_eq!(&dense[0] * &s(1) + &dense[1] * &s(2), s(0));
        assert_eq!(&dense[0] * &s(1) + &dense[1] * &s(2), s(0));
    }

    #[test]
    fn tracked_solve() {
        let mut t = TrackedEchelon::new();
        t.insert(vec![(0, s(1)), (1, s(1))]); // v0
        t.insert(vec![(1, s(1))]); // v1
        let combo = t.solve(vec![(0, s(2)), (1, s(5))]).unwrap();
        let mut dense = vec![s(0), s(0)];
        for (i, c) in combo {
            dense[i] = c;
        }
        // 2*v0 + 3*v1
        assert_eq!(dense, vec![s(2), s(3)]);
        assert!(t.solve(vec![(2, s(1))]).is_none());
    }
}
