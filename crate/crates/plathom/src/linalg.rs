//! Exact sparse linear algebra over ℚ.
//!
//! Vectors are sorted `(index, coefficient)` lists. Subspaces are kept in row
//! echelon form keyed by leading column; a row may still carry entries on
//! other pivot columns, so reduction walks the columns of the vector in
//! increasing order.

use std::collections::BTreeMap;

use num::{One, Zero};

pub type Q = crate::rational::Rational;

pub fn q(n: i64) -> Q {
    Q::integer(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Q::one())] }
    }

    /// Collects terms, summing repeated indices and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, c) in terms {
            *map.entry(i).or_insert_with(Q::zero) += c;
        }
        SparseVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn scale(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Q, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1 * c;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Q::one(), other)
    }

    /// Reindexes through `f`, summing collisions and dropping `None`s.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_terms(self.entries.iter().filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))))
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }
}

/// A linear map stored column by column: column `j` is the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, c) in v.entries() {
            acc = acc.axpy(c, &self.cols[*j]);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(other.rows, self.n_cols());
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.n_cols()), (other.rows, other.n_cols()));
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn add_matrix(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.n_cols()), (other.rows, other.n_cols()));
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        self.cols.iter().filter(|c| e.insert(c)).count()
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.n_cols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                d[*i][j] = x.clone();
            }
        }
        d
    }
}

fn add_into(acc: &mut BTreeMap<usize, Q>, i: usize, x: Q) {
    match acc.entry(i) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    vec: SparseVec,
    tag: SparseVec,
}

/// A subspace in echelon form. Each row optionally carries a tag vector that
/// is transformed alongside it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn stored_entries(&self) -> usize {
        self.rows.values().map(|r| r.vec.len()).sum()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` until no pivot column appears in it; returns the residue and
    /// the tag combination `Σ cᵣ·tagᵣ` with `v = residue + Σ cᵣ·rowᵣ`.
    pub fn reduce_tagged(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut acc: BTreeMap<usize, Q> = v.entries.iter().cloned().collect();
        let mut tag: BTreeMap<usize, Q> = BTreeMap::new();
        let mut floor = 0usize;
        loop {
            let next = acc.range(floor..).find(|(i, _)| self.rows.contains_key(i)).map(|(i, _)| *i);
            let Some(col) = next else { break };
            let c = acc.remove(&col).unwrap();
            let row = &self.rows[&col];
            for (i, x) in &row.vec.entries[1..] {
                add_into(&mut acc, *i, -(x * &c));
            }
            for (i, x) in &row.tag.entries {
                add_into(&mut tag, *i, x * &c);
            }
            floor = col + 1;
        }
        (SparseVec { entries: acc.into_iter().collect() }, SparseVec { entries: tag.into_iter().collect() })
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tagged(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_tagged(v, &SparseVec::new()).is_none()
    }

    /// Inserts `v` carrying `tag`. On dependence returns the tag combination
    /// that reproduces the reduction (`tag − Σ cᵣ·tagᵣ` is then a relation).
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: &SparseVec) -> Option<SparseVec> {
        let (res, comb) = self.reduce_tagged(v);
        let tag = tag.sub(&comb);
        let Some(lead) = res.leading() else { return Some(tag) };
        let inv = Q::one() / res.get(lead);
        self.rows.insert(lead, Row { vec: res.scale(&inv), tag: tag.scale(&inv) });
        None
    }
}

/// Kernel of a map given column by column.
pub fn kernel(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, c) in m.cols.iter().enumerate() {
        if let Some(rel) = e.insert_tagged(c, &SparseVec::unit(j)) {
            out.push(rel);
        }
    }
    out
}

/// Homology at a middle term `A --f--> B --g--> C`, with explicit classes.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    /// Cycle representatives in `B`, one per class.
    pub reps: Vec<SparseVec>,
    space: Echelon,
}

impl HomologyPresentation {
    /// `into`: images of `A` in `B` (columns of `f`); `out`: the map `g`.
    pub fn compute(into: &SparseMatrix, out: &SparseMatrix) -> Self {
        let mut space = Echelon::new();
        for c in &into.cols {
            space.insert(c);
        }
        let mut reps = Vec::new();
        for z in kernel(out) {
            let k = reps.len();
            let (res, _) = space.reduce_tagged(&z);
            if res.is_zero() {
                continue;
            }
            let lead = res.leading().unwrap();
            let inv = Q::one() / res.get(lead);
            let rep = res.scale(&inv);
            space.rows.insert(lead, Row { vec: rep.clone(), tag: SparseVec::unit(k) });
            reps.push(rep);
        }
        HomologyPresentation { reps, space }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class coordinates of a cycle; panics if `z` is not a cycle.
    pub fn project(&self, z: &SparseVec) -> SparseVec {
        let (res, tag) = self.space.reduce_tagged(z);
        assert!(res.is_zero(), "projected vector is not a cycle");
        tag
    }

    /// Class coordinates, or `None` when `z` is not in the cycle space.
    pub fn try_project(&self, z: &SparseVec) -> Option<SparseVec> {
        let (res, tag) = self.space.reduce_tagged(z);
        res.is_zero().then_some(tag)
    }
}

/// Dense row reduction, kept independent of the sparse code for cross-checks.
pub fn dense_rank(mut a: Vec<Vec<Q>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                for k in c..cols {
                    let d = &f * &a[rank][k];
                    a[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_terms(terms.iter().map(|&(i, c)| (i, q(c))))
    }

    #[test]
    fn axpy_cancels() {
        let a = v(&[(0, 1), (2, 3)]);
        let b = v(&[(2, 1), (5, 1)]);
        assert_eq!(a.axpy(&q(-3), &b), v(&[(0, 1), (5, -3)]));
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 3), (2, 1)])));
    }

    #[test]
    fn kernel_of_small_map() {
        // (x, y, z) ↦ x + y - z.
        let m = SparseMatrix { rows: 1, cols: vec![v(&[(0, 1)]), v(&[(0, 1)]), v(&[(0, -1)])] };
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for z in &k {
            assert!(m.apply(z).is_zero());
        }
    }

    #[test]
    fn homology_of_zero_differential() {
        let into = SparseMatrix::zero(3, 0);
        let out = SparseMatrix::zero(0, 3);
        assert_eq!(HomologyPresentation::compute(&into, &out).dim(), 3);
    }

    #[test]
    fn projection_inverts_inclusion() {
        // A = span(e0+e1) → B = ℚ³ → C = ℚ via (x,y,z) ↦ x − y.
        let into = SparseMatrix { rows: 3, cols: vec![v(&[(0, 1), (1, 1)])] };
        let out = SparseMatrix { rows: 1, cols: vec![v(&[(0, 1)]), v(&[(0, -1)]), SparseVec::new()] };
        let h = HomologyPresentation::compute(&into, &out);
        assert_eq!(h.dim(), 1);
        for (k, r) in h.reps.iter().enumerate() {
            assert!(out.apply(r).is_zero());
            assert_eq!(h.project(r), SparseVec::unit(k));
        }
        assert!(h.project(&v(&[(0, 1), (1, 1)])).is_zero());
    }
}
