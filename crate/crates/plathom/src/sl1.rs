//! The `𝔰𝔩₁` complex of a closed singular braid and its `H₁^±` homology.
//!
//! `C₁` is the tensor product of one small factor per vertex over the edge
//! ring. Bivalent factors are two-periodic, four-valent factors are the
//! Koszul square on `L_v` and `Q_v`.

use std::collections::{BTreeMap, HashMap};

use crate::chain::monomials;
use crate::cycles::{Cycle, Monomial};
use crate::diagram::{SingularGraph, VertexKind};
use crate::homology::Dims;
use crate::linalg::{q, HomologyPresentation, SparseMatrix, SparseVec};

/// A polynomial as a list of monomial terms.
pub type Poly = Vec<(Monomial, i64)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// Incoming and outgoing edge of a two-valent vertex.
    Bivalent { input: usize, output: usize },
    /// Roles `i, j` (in) and `k, l` (out) of a four-valent vertex.
    FourValent { roles: [usize; 4] },
}

/// A closed singular braid given by its vertex factors over edge variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl1Graph {
    pub n_vars: usize,
    pub factors: Vec<Factor>,
}

impl Sl1Graph {
    /// `k` disjoint circles, each an edge with one bivalent vertex.
    pub fn unlink(k: usize) -> Self {
        Sl1Graph { n_vars: k, factors: (0..k).map(|e| Factor::Bivalent { input: e, output: e }).collect() }
    }

    /// Braid closure of a resolution viewed as a braid on all its tracks, with
    /// one closing vertex per track.
    pub fn braid_closure(g: &SingularGraph) -> Self {
        let top = g.n_levels();
        let mut factors: Vec<Factor> =
            g.four_valent().map(|v| Factor::FourValent { roles: g.roles(v) }).collect();
        for t in 1..=g.width() {
            factors.push(Factor::Bivalent { input: g.edge_at(top, t), output: g.edge_at(0, t) });
        }
        Sl1Graph { n_vars: g.edges().len(), factors }
    }

    /// `b(S − Z)`: the edges of `Z` are deleted, vertices met by `Z` become
    /// bivalent and each cup/cap pair becomes one closing vertex.
    pub fn complement(g: &SingularGraph, z: &Cycle) -> Self {
        let off = |e: Option<usize>| e.filter(|&e| !z.contains_edge(g, e));
        let mut factors = Vec::new();
        for v in g.four_valent() {
            let vx = &g.vertices()[v];
            if z.touches(g, v) {
                let input = vx.ins.iter().copied().find_map(off).expect("one free input");
                let output = vx.outs.iter().copied().find_map(off).expect("one free output");
                factors.push(Factor::Bivalent { input, output });
            } else {
                factors.push(Factor::FourValent { roles: g.roles(v) });
            }
        }
        for i in 0..g.n_pairs() {
            let cap = &g.vertices()[g.cap(i)];
            let cup = &g.vertices()[g.cup(i)];
            let input = cap.ins.iter().copied().find_map(off).expect("free cap edge");
            let output = cup.outs.iter().copied().find_map(off).expect("free cup edge");
            debug_assert_eq!(cup.kind, VertexKind::Cup);
            factors.push(Factor::Bivalent { input, output });
        }
        Sl1Graph { n_vars: g.edges().len(), factors }
    }

    /// Variables that occur at some vertex.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.n_vars];
        for f in &self.factors {
            match f {
                Factor::Bivalent { input, output } => {
                    used[*input] = true;
                    used[*output] = true;
                }
                Factor::FourValent { roles } => roles.iter().for_each(|&e| used[e] = true),
            }
        }
        (0..self.n_vars).filter(|&e| used[e]).collect()
    }

    pub fn n_four_valent(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, Factor::FourValent { .. })).count()
    }
}

/// `(q, h)` of each piece of a factor.
fn pieces(f: &Factor) -> &'static [(i64, i64)] {
    match f {
        Factor::Bivalent { .. } => &[(0, -2), (0, 0)],
        Factor::FourValent { .. } => &[(-1, -4), (-1, -2), (1, -2), (1, 0)],
    }
}

fn parity(h: i64) -> usize {
    (h / 2).rem_euclid(2) as usize
}

/// One side of the factor differential: `(from piece, to piece, polynomial)`.
fn factor_maps(f: &Factor, n: usize, plus: bool, two: i64) -> Vec<(usize, usize, Poly)> {
    let lin = |terms: &[(usize, i64)]| -> Poly { terms.iter().map(|&(e, c)| (Monomial::var(n, e), c)).collect() };
    match *f {
        Factor::Bivalent { input, output } => {
            if plus {
                vec![(0, 1, lin(&[(input, 1), (output, -1)]))]
            } else {
                vec![(1, 0, lin(&[(input, 1), (output, 1)]))]
            }
        }
        Factor::FourValent { roles: [i, j, k, l] } => {
            let big_l = lin(&[(i, 1), (j, 1), (k, -1), (l, -1)]);
            let neg_l = lin(&[(i, -1), (j, -1), (k, 1), (l, 1)]);
            let big_lp = lin(&[(i, 1), (j, 1), (k, 1), (l, 1)]);
            let neg_lp = lin(&[(i, -1), (j, -1), (k, -1), (l, -1)]);
            let quad: Poly = vec![(Monomial::from_edges(n, &[i, j]), 1), (Monomial::from_edges(n, &[k, l]), -1)];
            let constant: Poly = vec![(Monomial::one(n), two)];
            if plus {
                vec![(0, 1, big_l), (0, 2, quad.clone()), (1, 3, quad), (2, 3, neg_l)]
            } else {
                vec![(1, 0, big_lp), (2, 0, constant.clone()), (3, 1, constant), (3, 2, neg_lp)]
            }
        }
    }
}

/// Graded pieces of `C₁` with both halves of the differential.
pub struct Sl1Complex {
    graph: Sl1Graph,
    vars: Vec<usize>,
    /// Coefficient of the constant arrows of the four-valent square.
    two: i64,
    cache: HashMap<(i64, i64), Piece>,
}

#[derive(Clone)]
struct Piece {
    basis: Vec<(Vec<usize>, Monomial)>,
    index: HashMap<(Vec<usize>, Monomial), usize>,
}

impl Sl1Complex {
    /// The complex with the constant arrows set to `−2`, the value that makes
    /// the factor potential `Σ_in U² − Σ_out U²`.
    pub fn new(graph: Sl1Graph) -> Self {
        Self::with_constant(graph, -2)
    }

    pub fn with_constant(graph: Sl1Graph, two: i64) -> Self {
        let vars = graph.used_vars();
        Sl1Complex { graph, vars, two, cache: HashMap::new() }
    }

    fn states(&self) -> Vec<(Vec<usize>, i64, i64)> {
        let mut out = vec![(Vec::new(), 0, 0)];
        for f in &self.graph.factors {
            let mut next = Vec::new();
            for (s, qq, h) in &out {
                for (p, &(dq, dh)) in pieces(f).iter().enumerate() {
                    let mut s2 = s.clone();
                    s2.push(p);
                    next.push((s2, qq + dq, h + dh));
                }
            }
            out = next;
        }
        out
    }

    fn piece(&mut self, qq: i64, h: i64) -> Piece {
        if let Some(p) = self.cache.get(&(qq, h)) {
            return p.clone();
        }
        let mut basis = Vec::new();
        for (s, sq, sh) in self.states() {
            if sh != h || sq < qq || (sq - qq) % 2 != 0 {
                continue;
            }
            for m in monomials(self.graph.n_vars, &self.vars, ((sq - qq) / 2) as usize) {
                basis.push((s.clone(), m));
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let p = Piece { basis, index };
        self.cache.insert((qq, h), p.clone());
        p
    }

    pub fn dim(&mut self, qq: i64, h: i64) -> usize {
        self.piece(qq, h).basis.len()
    }

    /// `d₀₊` (`plus`) or `d₀₋` out of bigrading `(q, h)`.
    pub fn differential(&mut self, qq: i64, h: i64, plus: bool) -> SparseMatrix {
        let n = self.graph.n_vars;
        let src = self.piece(qq, h);
        let dst = self.piece(qq - 2, if plus { h + 2 } else { h - 2 });
        let maps: Vec<Vec<(usize, usize, Poly)>> =
            self.graph.factors.iter().map(|f| factor_maps(f, n, plus, self.two)).collect();
        let cols = src
            .basis
            .iter()
            .map(|(state, m)| {
                let mut terms = Vec::new();
                let mut sign_parity = 0;
                for (fi, f) in self.graph.factors.iter().enumerate() {
                    let p = state[fi];
                    for (from, to, poly) in &maps[fi] {
                        if *from != p {
                            continue;
                        }
                        let mut s2 = state.clone();
                        s2[fi] = *to;
                        let sign = if sign_parity % 2 == 0 { 1 } else { -1 };
                        for (mono, c) in poly {
                            let key = (s2.clone(), m.mul(mono));
                            terms.push((dst.index[&key], q(sign * c)));
                        }
                    }
                    sign_parity += parity(pieces(f)[p].1);
                }
                SparseVec::from_terms(terms)
            })
            .collect();
        SparseMatrix { rows: dst.basis.len(), cols }
    }

    /// Range of horizontal gradings.
    pub fn h_range(&self) -> (i64, i64) {
        let lo = self.graph.factors.iter().map(|f| pieces(f).iter().map(|p| p.1).min().unwrap()).sum();
        (lo, 0)
    }

    /// Highest quantum grading of a generator.
    pub fn q_top(&self) -> i64 {
        self.graph.factors.iter().map(|f| pieces(f).iter().map(|p| p.0).max().unwrap()).sum()
    }

    /// `(d₀₊ + d₀₋)² = 0` out of every bigrading with `q ≥ q_lo`.
    pub fn d2_vanishes(&mut self, q_lo: i64) -> bool {
        let (hlo, hhi) = self.h_range();
        for qq in q_lo..=self.q_top() {
            for h in (hlo..=hhi).step_by(2) {
                let pp = self.differential(qq, h, true);
                let mm = self.differential(qq, h, false);
                let pp2 = self.differential(qq - 2, h + 2, true).compose(&pp);
                let mm2 = self.differential(qq - 2, h - 2, false).compose(&mm);
                let mix = self
                    .differential(qq - 2, h + 2, false)
                    .compose(&pp)
                    .add_matrix(&self.differential(qq - 2, h - 2, true).compose(&mm));
                if !pp2.is_zero() || !mm2.is_zero() || !mix.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Error when the quantum window does not contain all of `H₁^±`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("sl1 window too small: nonzero homology at q={q}")]
pub struct Sl1WindowError {
    pub q: i64,
}

/// `H₁^± = H(H(C₁, d₀₊), d₀₋*)`, keyed by `(q, h)`.
pub fn sl1_pm_homology(c: &mut Sl1Complex, margin: i64) -> Result<Dims<(i64, i64)>, Sl1WindowError> {
    let (hlo, hhi) = c.h_range();
    let q_hi = c.q_top();
    let q_lo = -2 - margin;
    // H(C, d₀₊) with presentations on [q_lo − 2, q_hi].
    let mut first: BTreeMap<(i64, i64), HomologyPresentation> = BTreeMap::new();
    for qq in q_lo - 2..=q_hi {
        for h in (hlo..=hhi).step_by(2) {
            let into = c.differential(qq + 2, h - 2, true);
            let out = c.differential(qq, h, true);
            first.insert((qq, h), HomologyPresentation::compute(&into, &out));
        }
    }
    let induced = |c: &mut Sl1Complex, qq: i64, h: i64| -> SparseMatrix {
        let Some(src) = first.get(&(qq, h)) else { return SparseMatrix::zero(0, 0) };
        let rows = first.get(&(qq - 2, h - 2)).map_or(0, |p| p.dim());
        if rows == 0 {
            return SparseMatrix::zero(0, src.dim());
        }
        let d = c.differential(qq, h, false);
        let dst = &first[&(qq - 2, h - 2)];
        SparseMatrix { rows, cols: src.reps.iter().map(|r| dst.project(&d.apply(r))).collect() }
    };
    let mut out = Dims::new();
    for qq in q_lo..=q_hi {
        for h in (hlo..=hhi).step_by(2) {
            let n = first[&(qq, h)].dim();
            if n == 0 {
                continue;
            }
            let out_rank = induced(c, qq, h).rank();
            let in_rank = if qq + 2 <= q_hi { induced(c, qq + 2, h + 2).rank() } else { 0 };
            let d = n - out_rank - in_rank;
            if d > 0 {
                if qq <= q_lo + 1 {
                    return Err(Sl1WindowError { q: qq });
                }
                out.insert((qq, h), d);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::PlatWord;

    #[test]
    fn unknot_and_unlinks() {
        for k in 1..=3 {
            let mut c = Sl1Complex::new(Sl1Graph::unlink(k));
            assert!(c.d2_vanishes(-6));
            let h = sl1_pm_homology(&mut c, 4).unwrap();
            assert_eq!(h, Dims::from([((0, -2 * k as i64), 1)]), "k={k}");
        }
    }

    #[test]
    fn four_valent_closure_is_acyclic() {
        let g = PlatWord::parse("n=1; word=[+1]").unwrap().resolve(&[true]).unwrap();
        let mut c = Sl1Complex::new(Sl1Graph::braid_closure(&g));
        assert!(c.d2_vanishes(-4));
        assert!(sl1_pm_homology(&mut c, 4).unwrap().is_empty());
    }

    #[test]
    fn constant_sign_is_forced() {
        let g = PlatWord::parse("n=1; word=[+1]").unwrap().resolve(&[true]).unwrap();
        assert!(!Sl1Complex::with_constant(Sl1Graph::braid_closure(&g), 2).d2_vanishes(-4));
    }
}
