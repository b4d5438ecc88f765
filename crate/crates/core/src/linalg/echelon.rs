//! Incremental sparse row echelon form over a field.

use std::collections::HashMap;

use super::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c·b` for sparse vectors.
pub fn axpy<F: Field>(f: &F, a: &SparseVec<F::E>, c: &F::E, b: &SparseVec<F::E>) -> SparseVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rows with pairwise distinct leading indices, each normalised to leading
/// coefficient one. Each row remembers how it was produced from tagged input
/// vectors, so reductions can report coordinates.
pub struct Echelon<F: Field> {
    pub field: F,
    rows: Vec<SparseVec<F::E>>,
    tags: Vec<SparseVec<F::E>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, rows: Vec::new(), tags: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Leading-term reduction; zero exactly when `v` lies in the span.
    /// The second component expresses the subtracted part in tags.
    fn reduce_leading(&self, mut v: SparseVec<F::E>) -> (SparseVec<F::E>, SparseVec<F::E>) {
        let f = &self.field;
        let mut tag = Vec::new();
        while let Some((c, a)) = v.first().cloned() {
            let Some(&r) = self.pivot_row.get(&c) else { break };
            let m = f.neg(&a);
            v = axpy(f, &v, &m, &self.rows[r]);
            tag = axpy(f, &tag, &a, &self.tags[r]);
        }
        (v, tag)
    }

    /// Inserts `v` carrying the tag vector `tag`; returns whether the rank grew.
    pub fn insert_tagged(&mut self, v: SparseVec<F::E>, tag: SparseVec<F::E>) -> bool {
        let (v, sub) = self.reduce_leading(v);
        let Some((c, a)) = v.first().cloned() else { return false };
        let f = &self.field;
        let inv = f.inv(&a);
        let neg_sub: SparseVec<F::E> = sub.into_iter().map(|(i, x)| (i, f.neg(&x))).collect();
        let tag = axpy(f, &tag, &f.one(), &neg_sub);
        let row = v.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect();
        let tag = tag.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect();
        self.pivot_row.insert(c, self.rows.len());
        self.rows.push(row);
        self.tags.push(tag);
        true
    }

    /// Inserts `v` with tag `tag`; when `v` is already in the span, returns
    /// the relation `tag - (tags of the combination)` instead.
    pub fn insert_or_relation(&mut self, v: SparseVec<F::E>, tag: SparseVec<F::E>) -> Option<SparseVec<F::E>> {
        let (rest, sub) = self.reduce_leading(v.clone());
        if rest.is_empty() {
            let f = &self.field;
            let m = f.neg(&f.one());
            return Some(axpy(f, &tag, &m, &sub));
        }
        self.insert_tagged(v, tag);
        None
    }

    pub fn insert(&mut self, v: SparseVec<F::E>) -> bool {
        self.insert_tagged(v, Vec::new())
    }

    pub fn contains(&self, v: &SparseVec<F::E>) -> bool {
        self.reduce_leading(v.clone()).0.is_empty()
    }

    /// Coordinates in tags when `v` lies in the span.
    pub fn solve(&self, v: &SparseVec<F::E>) -> Option<SparseVec<F::E>> {
        let (rest, tag) = self.reduce_leading(v.clone());
        rest.is_empty().then_some(tag)
    }

    /// Eliminates every pivot coordinate of `v`; the result is supported on
    /// non-pivot coordinates and differs from `v` by an element of the span.
    pub fn reduce_full(&self, v: &SparseVec<F::E>) -> SparseVec<F::E> {
        let f = &self.field;
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v.iter().find(|(c, _)| *c >= cursor && self.pivot_row.contains_key(c)).cloned();
            let Some((c, a)) = next else { return v };
            let r = self.pivot_row[&c];
            v = axpy(f, &v, &f.neg(&a), &self.rows[r]);
            cursor = c + 1;
        }
    }
}

/// Rank of a family of sparse vectors, inserted sparsest first.
pub fn rank_of<F: Field>(field: F, mut vecs: Vec<SparseVec<F::E>>) -> usize {
    vecs.sort_by_key(|v| v.len());
    let mut ech = Echelon::new(field);
    for v in vecs {
        ech.insert(v);
    }
    ech.rank()
}
