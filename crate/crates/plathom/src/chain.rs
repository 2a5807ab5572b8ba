//! Graded pieces of `M(S)`, `𝓜(S) = M(S)/L·M(S)` and `C₁±₁(S) = 𝓜(S) ⊗ K(S)`,
//! the Koszul differential `d₀` and the edge maps `d±`.
//!
//! A generator of `M(S)` is a cycle together with a monomial in the variables
//! off the cycle, taken modulo the binomial rewrites `U_iU_j ↔ U_kU_l` at the
//! vertices the cycle avoids.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num::{One, Zero};

use crate::cycles::{apply_u, enumerate_cycles, grade_cycle, Action, Cycle, CycleGrading, Monomial};
use crate::diagram::SingularGraph;
use crate::linalg::{q, Echelon, SparseMatrix, SparseVec, Q};

/// A generator `m·x_Z` of `M(S)` with `m` in canonical form.
pub type Gen = (usize, Monomial);

/// A linear form `Σ cₑ Uₑ`.
pub type Linear = Vec<(usize, i64)>;

/// One graded piece `M(S)_q`.
#[derive(Debug, Clone)]
pub struct MPiece {
    pub q: i64,
    pub basis: Vec<Gen>,
    pub index: HashMap<Gen, usize>,
}

/// One graded piece of `𝓜(S)`: a basis of `M(S)_q` modulo `L·M(S)_{q+2}`.
#[derive(Debug, Clone)]
pub struct QuotPiece {
    pub m: MPiece,
    relations: Echelon,
    /// Indices into `m.basis` that survive as quotient basis vectors.
    pub basis: Vec<usize>,
    pos_of: HashMap<usize, usize>,
}

impl QuotPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Quotient coordinates of a vector given over `m.basis`.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.relations.reduce(v);
        r.map_indices(|i| Some(self.pos_of[&i]))
    }

    pub fn generator(&self, a: usize) -> &Gen {
        &self.m.basis[self.basis[a]]
    }
}

/// A closed resolution with its cycles and memoized module operations.
pub struct Resolution {
    pub graph: SingularGraph,
    pub cycles: Vec<Cycle>,
    pub grading: Vec<CycleGrading>,
    index: HashMap<Cycle, usize>,
    on_cycle: Vec<Vec<bool>>,
    vertex_free: Vec<Vec<[usize; 4]>>,
    pushes: RefCell<HashMap<(usize, usize), Option<(Monomial, usize)>>>,
    acts: RefCell<HashMap<Gen, Option<Gen>>>,
    canon: RefCell<HashMap<Gen, Monomial>>,
    m_pieces: RefCell<BTreeMap<i64, Arc<MPiece>>>,
    q_pieces: RefCell<BTreeMap<i64, Arc<QuotPiece>>>,
}

impl Resolution {
    pub fn new(graph: SingularGraph) -> Self {
        let cycles = enumerate_cycles(&graph);
        let grading = cycles.iter().map(|z| grade_cycle(&graph, z)).collect();
        let index = cycles.iter().cloned().enumerate().map(|(i, z)| (z, i)).collect();
        let n_e = graph.edges().len();
        let on_cycle = cycles
            .iter()
            .map(|z| (0..n_e).map(|e| z.contains_edge(&graph, e)).collect())
            .collect();
        let vertex_free = cycles
            .iter()
            .map(|z| graph.four_valent().filter(|&v| !z.touches(&graph, v)).map(|v| graph.roles(v)).collect())
            .collect();
        Resolution {
            graph,
            cycles,
            grading,
            index,
            on_cycle,
            vertex_free,
            pushes: RefCell::default(),
            acts: RefCell::default(),
            canon: RefCell::default(),
            m_pieces: RefCell::default(),
            q_pieces: RefCell::default(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.graph.edges().len()
    }

    pub fn n_pairs(&self) -> usize {
        self.graph.n_pairs()
    }

    pub fn cycle_id(&self, z: &Cycle) -> usize {
        self.index[z]
    }

    pub fn find_cycle(&self, z: &Cycle) -> Option<usize> {
        self.index.get(z).copied()
    }

    pub fn cycle_q(&self, z: usize) -> i64 {
        self.grading[z].q()
    }

    pub fn on_cycle(&self, z: usize, e: usize) -> bool {
        self.on_cycle[z][e]
    }

    /// Memoized disk push of `U_e` on `x_Z`, for `e` on `Z`.
    pub fn push(&self, z: usize, e: usize) -> Option<(Monomial, usize)> {
        if let Some(r) = self.pushes.borrow().get(&(z, e)) {
            return r.clone();
        }
        let r = match apply_u(&self.graph, &self.cycles[z], e) {
            Action::Pushed { coefficient, target } => Some((coefficient, self.index[&target])),
            Action::Zero => None,
            Action::Unchanged => unreachable!("pushing an edge off the cycle"),
        };
        self.pushes.borrow_mut().insert((z, e), r.clone());
        r
    }

    /// `m·x_Z` for an arbitrary monomial `m`: variables on the cycle push it.
    pub fn act(&self, z: usize, m: &Monomial) -> Option<Gen> {
        let key = (z, m.clone());
        if let Some(r) = self.acts.borrow().get(&key) {
            return r.clone();
        }
        let r = match m.support().find(|&e| self.on_cycle[z][e]) {
            None => Some((z, self.canonical(z, m))),
            Some(e) => {
                let rest = m.div(&Monomial::var(self.n_vars(), e));
                match self.push(z, e) {
                    None => None,
                    Some((c, z2)) => self.act(z2, &rest.mul(&c)),
                }
            }
        };
        self.acts.borrow_mut().insert(key, r.clone());
        r
    }

    /// Lexicographically smallest member of the congruence class of `m` in `R_Z`.
    pub fn canonical(&self, z: usize, m: &Monomial) -> Monomial {
        let key = (z, m.clone());
        if let Some(r) = self.canon.borrow().get(&key) {
            return r.clone();
        }
        let class = self.congruence_class(z, m);
        let best = class.iter().next().unwrap().clone();
        let mut cache = self.canon.borrow_mut();
        for x in class {
            cache.insert((z, x), best.clone());
        }
        best
    }

    /// Breadth-first closure of `m` under the binomial rewrites of `Q_Z`.
    pub fn congruence_class(&self, z: usize, m: &Monomial) -> BTreeSet<Monomial> {
        debug_assert!(m.support().all(|e| !self.on_cycle[z][e]));
        let n = self.n_vars();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(m.clone());
        queue.push_back(m.clone());
        while let Some(x) = queue.pop_front() {
            for &[i, j, k, l] in &self.vertex_free[z] {
                for (from, to) in [([i, j], [k, l]), ([k, l], [i, j])] {
                    let f = Monomial::from_edges(n, &from);
                    if f.divides(&x) {
                        let y = x.div(&f).mul(&Monomial::from_edges(n, &to));
                        if seen.insert(y.clone()) {
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        seen
    }

    /// Canonical class representatives of degree `d` in `R_Z`.
    pub fn congruence_classes(&self, z: usize, d: usize) -> Vec<Monomial> {
        let free: Vec<usize> = (0..self.n_vars()).filter(|&e| !self.on_cycle[z][e]).collect();
        let mut out = BTreeSet::new();
        for m in monomials(self.n_vars(), &free, d) {
            out.insert(self.canonical(z, &m));
        }
        out.into_iter().collect()
    }

    /// A linear form applied to `m·x_Z`, as terms of `M(S)`.
    pub fn apply_linear(&self, lin: &Linear, g: &Gen) -> Vec<(Gen, Q)> {
        let mut out = Vec::new();
        for &(e, c) in lin {
            if let Some(r) = self.act(g.0, &g.1.times_var(e)) {
                out.push((r, q(c)));
            }
        }
        out
    }

    pub fn m_piece(&self, qq: i64) -> Arc<MPiece> {
        if let Some(p) = self.m_pieces.borrow().get(&qq) {
            return p.clone();
        }
        let mut basis = Vec::new();
        for z in 0..self.cycles.len() {
            let top = self.cycle_q(z);
            if top < qq || (top - qq) % 2 != 0 {
                continue;
            }
            for m in self.congruence_classes(z, ((top - qq) / 2) as usize) {
                basis.push((z, m));
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let p = Arc::new(MPiece { q: qq, basis, index });
        self.m_pieces.borrow_mut().insert(qq, p.clone());
        p
    }

    /// Terms of `M(S)_q` as a vector over the piece basis.
    pub fn m_vector(&self, piece: &MPiece, terms: &[(Gen, Q)]) -> SparseVec {
        SparseVec::from_terms(terms.iter().map(|(g, c)| {
            let i = *piece.index.get(g).unwrap_or_else(|| {
                panic!("generator {g:?} missing from M_{}: grading not preserved", piece.q)
            });
            (i, c.clone())
        }))
    }

    /// Linear relations `L_v` at every four-valent vertex.
    pub fn vertex_linears(&self) -> Vec<Linear> {
        self.graph
            .four_valent()
            .map(|v| {
                let [i, j, k, l] = self.graph.roles(v);
                vec![(i, 1), (j, 1), (k, -1), (l, -1)]
            })
            .collect()
    }

    /// Closing-off forms `(L_wᵢ, L′_wᵢ)` for each cup/cap pair.
    pub fn closing_linears(&self) -> Vec<(Linear, Linear)> {
        let g = &self.graph;
        (0..g.n_pairs())
            .map(|i| {
                let cap = &g.vertices()[g.cap(i)];
                let cup = &g.vertices()[g.cup(i)];
                let (a, b) = (cap.ins[0].unwrap(), cap.ins[1].unwrap());
                let (c, d) = (cup.outs[0].unwrap(), cup.outs[1].unwrap());
                (vec![(a, 1), (b, 1), (c, -1), (d, -1)], vec![(a, 1), (b, 1), (c, 1), (d, 1)])
            })
            .collect()
    }

    pub fn quot_piece(&self, qq: i64) -> Arc<QuotPiece> {
        if let Some(p) = self.q_pieces.borrow().get(&qq) {
            return p.clone();
        }
        let m = self.m_piece(qq);
        let above = self.m_piece(qq + 2);
        let mut relations = Echelon::new();
        for lin in self.vertex_linears() {
            for g in &above.basis {
                let v = self.m_vector(&m, &self.apply_linear(&lin, g));
                relations.insert(&v);
            }
        }
        let basis: Vec<usize> = (0..m.basis.len()).filter(|&i| !relations.is_pivot(i)).collect();
        let pos_of = basis.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let p = Arc::new(QuotPiece { m: (*m).clone(), relations, basis, pos_of });
        self.q_pieces.borrow_mut().insert(qq, p.clone());
        p
    }

    /// Projects terms of `M(S)_q` into `𝓜(S)_q` coordinates.
    pub fn project_terms(&self, qq: i64, terms: &[(Gen, Q)]) -> SparseVec {
        let p = self.quot_piece(qq);
        p.project(&self.m_vector(&p.m, terms))
    }

    /// Number of Koszul states, `2ⁿ`.
    pub fn koszul_states(&self) -> usize {
        1 << self.n_pairs()
    }

    /// Dimension of the chain group `C₁±₁(S)` at local grading `q`.
    pub fn chain_dim(&self, qq: i64) -> usize {
        self.quot_piece(qq).dim() * self.koszul_states()
    }

    /// Chain generator `(a, ε)` is stored at index `a·2ⁿ + ε`.
    pub fn chain_index(&self, a: usize, eps: usize) -> usize {
        a * self.koszul_states() + eps
    }

    /// Koszul differential `d₀ : C_q → C_{q−2}`, optionally restricted to one
    /// horizontal direction (`Some(true)` for `d₀₊`, `Some(false)` for `d₀₋`).
    pub fn d0(&self, qq: i64, part: Option<bool>) -> SparseMatrix {
        let src = self.quot_piece(qq);
        let n = self.n_pairs();
        let ks = self.koszul_states();
        let closing = self.closing_linears();
        let mut cols = Vec::with_capacity(src.dim() * ks);
        for a in 0..src.dim() {
            let g = src.generator(a).clone();
            // Images of L and L′ are shared across Koszul states.
            let images: Vec<(SparseVec, SparseVec)> = closing
                .iter()
                .map(|(l, lp)| {
                    (
                        self.project_terms(qq - 2, &self.apply_linear(l, &g)),
                        self.project_terms(qq - 2, &self.apply_linear(lp, &g)),
                    )
                })
                .collect();
            for eps in 0..ks {
                let mut col = SparseVec::new();
                for i in 0..n {
                    let sign = if (eps & ((1 << i) - 1)).count_ones() % 2 == 0 { q(1) } else { q(-1) };
                    let on = eps >> i & 1 == 1;
                    // εᵢ = 1 → 0 multiplies by L (horizontal +2); 0 → 1 by L′.
                    let (img, target, plus) =
                        if on { (&images[i].0, eps & !(1 << i), true) } else { (&images[i].1, eps | 1 << i, false) };
                    if part.is_some_and(|p| p != plus) {
                        continue;
                    }
                    let shifted = img.map_indices(|b| Some(b * ks + target));
                    col = col.axpy(&sign, &shifted);
                }
                cols.push(col);
            }
        }
        SparseMatrix { rows: self.chain_dim(qq - 2), cols }
    }

    /// Multiplication by a monomial on `C_q`, landing in `C_{q − 2·deg}`.
    pub fn multiply(&self, qq: i64, mono: &Monomial) -> SparseMatrix {
        let src = self.quot_piece(qq);
        let ks = self.koszul_states();
        let qt = qq - 2 * mono.degree() as i64;
        let mut cols = Vec::with_capacity(src.dim() * ks);
        for a in 0..src.dim() {
            let (z, m) = src.generator(a).clone();
            let terms: Vec<(Gen, Q)> = self.act(z, &m.mul(mono)).into_iter().map(|g| (g, Q::one())).collect();
            let img = self.project_terms(qt, &terms);
            for eps in 0..ks {
                cols.push(img.map_indices(|b| Some(b * ks + eps)));
            }
        }
        SparseMatrix { rows: self.chain_dim(qt), cols }
    }

    /// Multiplication by a linear form on `C_q`.
    pub fn multiply_linear(&self, qq: i64, lin: &Linear) -> SparseMatrix {
        let mut acc: Option<SparseMatrix> = None;
        for &(e, c) in lin {
            let m = self.multiply(qq, &Monomial::var(self.n_vars(), e));
            let scaled = SparseMatrix { rows: m.rows, cols: m.cols.iter().map(|x| x.scale(&q(c))).collect() };
            acc = Some(match acc {
                None => scaled,
                Some(a) => SparseMatrix {
                    rows: a.rows,
                    cols: a.cols.iter().zip(&scaled.cols).map(|(x, y)| x.add(y)).collect(),
                },
            });
        }
        acc.unwrap_or_else(|| SparseMatrix::zero(self.chain_dim(qq - 2), self.chain_dim(qq)))
    }
}

/// All monomials of degree `d` in the listed variables.
pub fn monomials(n_vars: usize, vars: &[usize], d: usize) -> Vec<Monomial> {
    fn go(vars: &[usize], d: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if d == 0 {
            out.push(cur.clone());
            return;
        }
        let Some((&first, rest)) = vars.split_first() else { return };
        for k in (0..=d).rev() {
            cur.0[first] += k as u8;
            go(rest, d - k, cur, out);
            cur.0[first] -= k as u8;
        }
    }
    let mut out = Vec::new();
    go(vars, d, &mut Monomial::one(n_vars), &mut out);
    out
}

/// Which direction an edge map runs across a crossing level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Singular vertex to oriented smoothing.
    Minus,
    /// Oriented smoothing to singular vertex.
    Plus,
}

/// Edge map between two resolutions that differ at one level, as a map
/// `C₁±₁(src)_q → C₁±₁(dst)_{q−1}` (local gradings). With `twist` the Koszul
/// sign `(−1)^{|ε|}` is applied to each state.
pub fn edge_map(src: &Resolution, dst: &Resolution, level: usize, kind: EdgeKind, qq: i64, twist: bool) -> SparseMatrix {
    let piece = src.quot_piece(qq);
    let ks = src.koszul_states();
    let mut cols = Vec::with_capacity(piece.dim() * ks);
    for a in 0..piece.dim() {
        let g = piece.generator(a).clone();
        let terms = match kind {
            EdgeKind::Minus => minus_terms(src, dst, level, &g),
            EdgeKind::Plus => plus_terms(src, dst, level, &g),
        };
        let img = dst.project_terms(qq - 1, &terms);
        for eps in 0..ks {
            let sign = if twist && eps.count_ones() % 2 == 1 { q(-1) } else { q(1) };
            cols.push(img.map_indices(|b| Some(b * ks + eps)).scale(&sign));
        }
    }
    SparseMatrix { rows: dst.chain_dim(qq - 1), cols }
}

/// Edge of `to` containing the lowest band of edge `e` of `from`.
fn edge_image(from: &SingularGraph, to: &SingularGraph, e: usize) -> usize {
    let x = &from.edges()[e];
    to.edge_at(x.lo, x.pos)
}

fn map_monomial(from: &SingularGraph, to: &SingularGraph, m: &Monomial) -> Monomial {
    let mut out = Monomial::one(to.edges().len());
    for e in m.support() {
        out.0[edge_image(from, to, e)] += m.0[e];
    }
    out
}

fn same_cycle(from: &Resolution, z: usize, to: &Resolution) -> usize {
    to.find_cycle(&from.cycles[z]).expect("cycle has a partner across the edge")
}

/// `d⁻` on `m·x_Z`, from the singular side to the smoothed side.
fn minus_terms(s: &Resolution, su: &Resolution, level: usize, g: &Gen) -> Vec<(Gen, Q)> {
    let (z, m) = g;
    let gs = &s.graph;
    let v = gs.vertex_at_level(level).expect("singular level");
    let [e1, _e2, e3, _e4] = gs.roles(v);
    let n = s.n_vars();
    let (zz, coef) = match s.cycles[*z].local(gs, v) {
        None | Some((0, 0)) => (*z, Monomial::one(n)),
        Some((0, 1)) => match s.push(*z, e1) {
            None => return Vec::new(),
            Some((c, z1)) => (z1, c),
        },
        Some((1, 0)) => match s.push(*z, e3) {
            None => return Vec::new(),
            Some((c, z1)) => (z1, c),
        },
        Some(_) => (*z, Monomial::var(n, e1)),
    };
    let zu = same_cycle(s, zz, su);
    let mono = map_monomial(gs, &su.graph, &coef.mul(m));
    su.act(zu, &mono).map(|r| vec![(r, Q::one())]).unwrap_or_default()
}

/// `d⁺` on `m·x_Z`, from the smoothed side to the singular side.
fn plus_terms(su: &Resolution, s: &Resolution, level: usize, g: &Gen) -> Vec<(Gen, Q)> {
    let (z, m) = g;
    let gu = &su.graph;
    let gs = &s.graph;
    let v = gs.vertex_at_level(level).expect("singular level");
    let [_e1, e2, e3, _e4] = gs.roles(v);
    let gap = gs.vertices()[v].gap;
    let e1p = gu.edge_at(level, gap);
    let e2p = gu.edge_at(level, gap + 1);
    let lift = |x: &Monomial| map_monomial(gu, gs, x);
    let n = s.n_vars();
    let zc = &su.cycles[*z];
    let (has1, has2) = (zc.contains_edge(gu, e1p), zc.contains_edge(gu, e2p));
    let mut out = Vec::new();
    let mut add = |zid: usize, mono: Monomial, c: i64| {
        if let Some(r) = s.act(zid, &mono) {
            out.push((r, q(c)));
        }
    };
    let lm = lift(m);
    if !has2 {
        let zz = same_cycle(su, *z, s);
        add(zz, lm.times_var(e3), 1);
        add(zz, lm.times_var(e2), -1);
    } else {
        if !has1 {
            add(same_cycle(su, *z, s), lm.clone(), 1);
        }
        if let Some((c, z2)) = su.push(*z, e2p) {
            let zz = same_cycle(su, z2, s);
            add(zz, lift(&c.mul(m)), -1);
        }
    }
    let _ = n;
    out
}

/// The composite `d⁺∘d⁻` (or `d⁻∘d⁺`) minus multiplication by `U₁ − U₄` at
/// one crossing, on the piece of local grading `q` of the source side.
pub fn edge_identity_defect(s: &Resolution, su: &Resolution, level: usize, qq: i64, singular_side: bool) -> SparseMatrix {
    let v = s.graph.vertex_at_level(level).unwrap();
    let [e1, _, _, e4] = s.graph.roles(v);
    if singular_side {
        let dm = edge_map(s, su, level, EdgeKind::Minus, qq, false);
        let dp = edge_map(su, s, level, EdgeKind::Plus, qq - 1, false);
        let lin = vec![(e1, 1), (e4, -1)];
        dp.compose(&dm).sub(&s.multiply_linear(qq, &lin))
    } else {
        let dp = edge_map(su, s, level, EdgeKind::Plus, qq, false);
        let dm = edge_map(s, su, level, EdgeKind::Minus, qq - 1, false);
        let gap = s.graph.vertices()[v].gap;
        let f1 = su.graph.edge_at(level, gap);
        let f2 = su.graph.edge_at(level, gap + 1);
        let lin = vec![(f1, 1), (f2, -1)];
        dm.compose(&dp).sub(&su.multiply_linear(qq, &lin))
    }
}

/// `true` when every entry of the matrix is zero.
pub fn vanishes(m: &SparseMatrix) -> bool {
    m.cols.iter().all(|c| c.entries().iter().all(|(_, x)| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::PlatWord;

    fn res(s: &str, bits: &[bool]) -> Resolution {
        Resolution::new(PlatWord::parse(s).unwrap().resolve(bits).unwrap())
    }

    #[test]
    fn classes_in_degree_zero_and_one() {
        let r = res("n=1; word=[]", &[]);
        let left = r.cycles.iter().position(|z| z.has(0, 1)).unwrap();
        assert_eq!(r.congruence_classes(left, 0).len(), 1);
        let one = r.congruence_classes(left, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0], Monomial::var(2, 1));
    }

    #[test]
    fn trivial_module_dims() {
        let r = res("n=1; word=[]", &[]);
        let dims: Vec<usize> = [1, -1, -3, -5].iter().map(|&q| r.quot_piece(q).dim()).collect();
        assert_eq!(dims, vec![1, 2, 2, 2]);
    }

    #[test]
    fn d0_squares_to_zero_on_small_resolutions() {
        for (w, bits) in [("n=1; word=[]", vec![]), ("n=1; word=[+1]", vec![true]), ("n=2; word=[+2]", vec![true])] {
            let r = res(w, &bits);
            for qq in -6..=4 {
                let a = r.d0(qq, None);
                let b = r.d0(qq - 2, None);
                assert!(vanishes(&b.compose(&a)), "{w} at q={qq}");
            }
        }
    }

    #[test]
    fn edge_identities_single_crossing() {
        let w = PlatWord::parse("n=1; word=[+1]").unwrap();
        let s = Resolution::new(w.resolve(&[true]).unwrap());
        let su = Resolution::new(w.resolve(&[false]).unwrap());
        for qq in -5..=3 {
            assert!(vanishes(&edge_identity_defect(&s, &su, 1, qq, true)), "d+d- at {qq}");
            assert!(vanishes(&edge_identity_defect(&s, &su, 1, qq, false)), "d-d+ at {qq}");
        }
    }
}
