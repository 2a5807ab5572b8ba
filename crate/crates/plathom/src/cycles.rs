//! Cycles of a closed resolution and the disk calculus that pushes them.
//!
//! A cycle is stored as its band occupancy: for every band, the set of tracks
//! its paths run along. The edge set is recovered from the occupancy.

use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::{SingularGraph, VertexKind};

/// Exponent vector over the edge variables of one graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, e: usize) -> Self {
        let mut m = Monomial::one(n_vars);
        m.0[e] = 1;
        m
    }

    pub fn from_edges(n_vars: usize, edges: &[usize]) -> Self {
        let mut m = Monomial::one(n_vars);
        for &e in edges {
            m.0[e] += 1;
        }
        m
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, e: usize) -> Monomial {
        let mut m = self.clone();
        m.0[e] += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &x) in self.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            write!(f, "U{}", i + 1)?;
            if x > 1 {
                write!(f, "^{x}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cycle {
    /// Bit `p - 1` of `occ[t]` is set when track `p` is used in band `t`.
    pub occ: Vec<u64>,
}

impl Cycle {
    pub fn has(&self, band: usize, pos: usize) -> bool {
        self.occ[band] >> (pos - 1) & 1 == 1
    }

    pub fn contains_edge(&self, g: &SingularGraph, e: usize) -> bool {
        let edge = &g.edges()[e];
        self.has(edge.lo, edge.pos)
    }

    pub fn edges(&self, g: &SingularGraph) -> Vec<usize> {
        (0..g.edges().len()).filter(|&e| self.contains_edge(g, e)).collect()
    }

    /// Whether the cycle passes through the vertex `v`.
    pub fn touches(&self, g: &SingularGraph, v: usize) -> bool {
        let x = &g.vertices()[v];
        x.ins.iter().chain(x.outs.iter()).flatten().any(|&e| self.contains_edge(g, e))
    }

    /// Local type at a four-valent vertex as `(in side, out side)`, 0 = left.
    pub fn local(&self, g: &SingularGraph, v: usize) -> Option<(usize, usize)> {
        let [i, j, k, l] = g.roles(v);
        let inn = if self.contains_edge(g, i) {
            0
        } else if self.contains_edge(g, j) {
            1
        } else {
            return None;
        };
        let out = if self.contains_edge(g, k) { 0 } else { 1 };
        debug_assert!(self.contains_edge(g, [k, l][out]));
        Some((inn, out))
    }

    /// Checks the defining conditions against the graph.
    pub fn is_valid(&self, g: &SingularGraph) -> bool {
        let m = g.n_levels();
        if self.occ.len() != m + 1 {
            return false;
        }
        let pair = |x: u64, p: usize| (x >> (p - 1) & 3).count_ones();
        for i in 0..g.n_pairs() {
            if pair(self.occ[0], 2 * i + 1) != 1 || pair(self.occ[m], 2 * i + 1) != 1 {
                return false;
            }
        }
        for t in 1..=m {
            let (below, above) = (self.occ[t - 1], self.occ[t]);
            match g.levels()[t - 1] {
                None => {
                    if below != above {
                        return false;
                    }
                }
                Some(gap) => {
                    let mask = 3u64 << (gap - 1);
                    if below & !mask != above & !mask {
                        return false;
                    }
                    let (a, b) = (pair(below, gap), pair(above, gap));
                    if a > 1 || a != b {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// All cycles, sorted by occupancy.
pub fn enumerate_cycles(g: &SingularGraph) -> Vec<Cycle> {
    let n = g.n_pairs();
    let m = g.n_levels();
    let mut out = Vec::new();
    for choice in 0..1u64 << n {
        let mut start = 0u64;
        for i in 0..n {
            let p = 2 * i + if choice >> i & 1 == 1 { 1 } else { 0 };
            start |= 1 << p;
        }
        let mut occ = vec![start];
        extend(g, &mut occ, m, &mut out);
    }
    out.sort();
    out
}

fn extend(g: &SingularGraph, occ: &mut Vec<u64>, m: usize, out: &mut Vec<Cycle>) {
    let t = occ.len();
    if t == m + 1 {
        let c = Cycle { occ: occ.clone() };
        if c.is_valid(g) {
            out.push(c);
        }
        return;
    }
    let below = occ[t - 1];
    match g.levels()[t - 1] {
        None => {
            occ.push(below);
            extend(g, occ, m, out);
            occ.pop();
        }
        Some(gap) => {
            let mask = 3u64 << (gap - 1);
            match (below & mask).count_ones() {
                0 => {
                    occ.push(below);
                    extend(g, occ, m, out);
                    occ.pop();
                }
                1 => {
                    for side in 0..2 {
                        occ.push(below & !mask | 1 << (gap - 1 + side));
                        extend(g, occ, m, out);
                        occ.pop();
                    }
                }
                _ => {}
            }
        }
    }
}

/// One visit of a cycle strand to a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Visit {
    level: usize,
    vertex: usize,
    in_pos: Option<usize>,
    out_pos: Option<usize>,
}

/// The strand of `z` through track `pos` in `band`, from its cup to its cap.
struct Strand {
    pos: Vec<usize>,
    visits: Vec<Visit>,
}

fn trace(g: &SingularGraph, z: &Cycle, band: usize, pos: usize) -> Strand {
    assert!(z.has(band, pos));
    let m = g.n_levels();
    let mut at = vec![0usize; m + 1];
    at[band] = pos;
    let mut visits = Vec::new();
    let mut p = pos;
    for l in band + 1..=m {
        if let Some(v) = g.vertex_at_level(l) {
            let gap = g.vertices()[v].gap;
            if p == gap || p == gap + 1 {
                let q = if z.has(l, gap) { gap } else { gap + 1 };
                visits.push(Visit { level: l, vertex: v, in_pos: Some(p), out_pos: Some(q) });
                p = q;
            }
        }
        at[l] = p;
    }
    visits.push(Visit { level: m + 1, vertex: g.cap((p - 1) / 2), in_pos: Some(p), out_pos: None });
    let mut p = pos;
    for l in (1..=band).rev() {
        if let Some(v) = g.vertex_at_level(l) {
            let gap = g.vertices()[v].gap;
            if p == gap || p == gap + 1 {
                let q = if z.has(l - 1, gap) { gap } else { gap + 1 };
                visits.push(Visit { level: l, vertex: v, in_pos: Some(q), out_pos: Some(p) });
                p = q;
            }
        }
        at[l - 1] = p;
    }
    visits.push(Visit { level: 0, vertex: g.cup((p - 1) / 2), in_pos: None, out_pos: Some(p) });
    visits.sort_by_key(|v| v.level);
    Strand { pos: at, visits }
}

/// A disk `D(Z, ⋆)`: bounded on the left by a stretch of `Z`, on the right by a
/// path of the graph, between the levels of `v_b` and `v_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    pub v_b: usize,
    pub v_t: usize,
    /// First band covered; bands run `lo_band..lo_band + left_pos.len()`.
    pub lo_band: usize,
    pub left_pos: Vec<usize>,
    pub right_pos: Vec<usize>,
    pub left_path: Vec<usize>,
    pub right_path: Vec<usize>,
    /// Four-valent vertices strictly inside the right boundary.
    pub right_vertices: Vec<usize>,
    pub cells: BTreeSet<(usize, usize)>,
    pub in_edges: Vec<usize>,
    pub out_edges: Vec<usize>,
}

impl Disk {
    /// The coefficient `U(D)`.
    pub fn coefficient(&self, n_vars: usize) -> Monomial {
        let mut e = self.in_edges.clone();
        e.extend(&self.out_edges);
        Monomial::from_edges(n_vars, &e)
    }

    fn bands(&self) -> std::ops::Range<usize> {
        self.lo_band..self.lo_band + self.left_pos.len()
    }

    /// Whether the right boundary meets `z` away from `v_b` and `v_t`.
    pub fn right_meets(&self, g: &SingularGraph, z: &Cycle) -> bool {
        self.bands().zip(&self.right_pos).any(|(t, &p)| z.has(t, p))
            || self.right_vertices.iter().any(|&v| z.touches(g, v))
    }

    /// `Z` with the left boundary replaced by the right boundary.
    pub fn swap(&self, z: &Cycle) -> Cycle {
        let mut occ = z.occ.clone();
        for ((t, &l), &r) in self.bands().zip(&self.left_pos).zip(&self.right_pos) {
            occ[t] &= !(1 << (l - 1));
            occ[t] |= 1 << (r - 1);
        }
        Cycle { occ }
    }
}

/// What a disk is anchored on: an edge of the cycle or a vertex it passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Edge(usize),
    Vertex(usize),
}

/// Every disk of the family `𝒟(Z, ⋆)`.
pub fn all_disks(g: &SingularGraph, z: &Cycle, anchor: Anchor) -> Vec<Disk> {
    let (band, pos, lo_limit, hi_limit, strict) = match anchor {
        Anchor::Edge(e) => {
            let edge = &g.edges()[e];
            assert!(z.contains_edge(g, e), "edge {e} is not in the cycle");
            (edge.lo, edge.pos, edge.lo, edge.hi, false)
        }
        Anchor::Vertex(v) => {
            assert!(z.touches(g, v), "vertex {v} is not on the cycle");
            let x = &g.vertices()[v];
            let pos = if z.has(x.level, x.gap) { x.gap } else { x.gap + 1 };
            (x.level, pos, x.level, x.level, true)
        }
    };
    let strand = trace(g, z, band, pos);
    let verts = g.vertices();
    let bottoms: Vec<Visit> = strand
        .visits
        .iter()
        .filter(|v| if strict { v.level < lo_limit } else { v.level <= lo_limit })
        .filter(|v| v.out_pos == Some(verts[v.vertex].gap))
        .copied()
        .collect();
    let tops: Vec<Visit> = strand
        .visits
        .iter()
        .filter(|v| if strict { v.level > hi_limit } else { v.level >= hi_limit })
        .filter(|v| v.in_pos == Some(verts[v.vertex].gap))
        .copied()
        .collect();
    let on_left = |v: usize| strand.visits.iter().any(|x| x.vertex == v);
    let mut disks = Vec::new();
    for b in &bottoms {
        for t in &tops {
            let mut stack = vec![(b.level, verts[b.vertex].gap + 1, Vec::new(), Vec::new())];
            // Depth-first over right boundaries, one level at a time.
            while let Some((level, p, path, inner)) = stack.pop() {
                let mut path: Vec<usize> = path;
                if path.len() == level - b.level {
                    path.push(p);
                }
                let next = level + 1;
                if next == t.level {
                    if p == verts[t.vertex].gap + 1 {
                        disks.push(build_disk(g, &strand, b, t, path, inner, anchor));
                    }
                    continue;
                }
                let left = strand.pos[next];
                match g.vertex_at_level(next) {
                    Some(v) if p == verts[v].gap || p == verts[v].gap + 1 => {
                        if on_left(v) {
                            continue;
                        }
                        let mut inner = inner.clone();
                        inner.push(v);
                        for q in [verts[v].gap, verts[v].gap + 1] {
                            if q > left {
                                let mut pth = path.clone();
                                pth.push(q);
                                stack.push((next, q, pth, inner.clone()));
                            }
                        }
                    }
                    _ => {
                        if p > left {
                            let mut pth = path.clone();
                            pth.push(p);
                            stack.push((next, p, pth, inner));
                        }
                    }
                }
            }
        }
    }
    disks
}

fn build_disk(
    g: &SingularGraph,
    strand: &Strand,
    b: &Visit,
    t: &Visit,
    right_pos: Vec<usize>,
    right_vertices: Vec<usize>,
    anchor: Anchor,
) -> Disk {
    let lo_band = b.level;
    let left_pos: Vec<usize> = (b.level..t.level).map(|k| strand.pos[k]).collect();
    debug_assert_eq!(left_pos.len(), right_pos.len());
    let path_of = |pos: &[usize]| {
        let mut p: Vec<usize> = Vec::new();
        for (k, &x) in pos.iter().enumerate() {
            let e = g.edge_at(lo_band + k, x);
            if p.last() != Some(&e) {
                p.push(e);
            }
        }
        p
    };
    let mut cells = BTreeSet::new();
    for (k, (&l, &r)) in left_pos.iter().zip(&right_pos).enumerate() {
        for gap in l..r {
            cells.insert((lo_band + k, gap));
        }
    }
    let (in_top, out_bottom) = match anchor {
        Anchor::Edge(e) => (g.edges()[e].lo, g.edges()[e].hi),
        Anchor::Vertex(v) => (g.vertices()[v].level, g.vertices()[v].level),
    };
    let verts = g.vertices();
    let mut in_edges = Vec::new();
    let mut out_edges = Vec::new();
    for v in &strand.visits {
        let x = &verts[v.vertex];
        if x.kind != VertexKind::FourValent {
            continue;
        }
        if v.level > b.level && v.level <= in_top && v.in_pos == Some(x.gap + 1) {
            in_edges.push(x.ins[0].unwrap());
        }
        if v.level >= out_bottom && v.level < t.level && v.out_pos == Some(x.gap + 1) {
            out_edges.push(x.outs[0].unwrap());
        }
    }
    Disk {
        v_b: b.vertex,
        v_t: t.vertex,
        lo_band,
        left_path: path_of(&left_pos),
        right_path: path_of(&right_pos),
        left_pos,
        right_pos,
        right_vertices,
        cells,
        in_edges,
        out_edges,
    }
}

/// The smallest disk of the family, asserting it lies inside every other one.
pub fn minimal_disk(g: &SingularGraph, z: &Cycle, anchor: Anchor) -> Option<Disk> {
    let disks = all_disks(g, z, anchor);
    let best = disks.iter().min_by_key(|d| (d.cells.len(), d.v_b, d.v_t))?.clone();
    for d in &disks {
        assert!(
            best.cells.is_subset(&d.cells),
            "no common minimal disk for {anchor:?} on {z:?}"
        );
    }
    Some(best)
}

/// Result of letting one variable, or `f_v`, act on a generator `x_Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Ordinary multiplication (the variable is not on the cycle).
    Unchanged,
    Zero,
    Pushed { coefficient: Monomial, target: Cycle },
}

pub fn apply_u(g: &SingularGraph, z: &Cycle, e: usize) -> Action {
    if !z.contains_edge(g, e) {
        return Action::Unchanged;
    }
    push(g, z, Anchor::Edge(e))
}

/// `f_v`: the product `U_i U_j` when `v` is off the cycle, otherwise the vertex-disk push.
pub fn apply_fv(g: &SingularGraph, z: &Cycle, v: usize) -> Action {
    if !z.touches(g, v) {
        return Action::Unchanged;
    }
    push(g, z, Anchor::Vertex(v))
}

fn push(g: &SingularGraph, z: &Cycle, anchor: Anchor) -> Action {
    match minimal_disk(g, z, anchor) {
        None => Action::Zero,
        Some(d) if d.right_meets(g, z) => Action::Zero,
        Some(d) => {
            let target = d.swap(z);
            debug_assert!(target.is_valid(g));
            Action::Pushed { coefficient: d.coefficient(g.edges().len()), target }
        }
    }
}

/// Quantum grading data of a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleGrading {
    pub t1: i64,
    pub t2: i64,
    pub e: i64,
    pub w: i64,
}

impl CycleGrading {
    /// `T₁ − T₂ + E + w`.
    pub fn q(&self) -> i64 {
        self.t1 - self.t2 + self.e + self.w
    }
}

pub fn grade_cycle(g: &SingularGraph, z: &Cycle) -> CycleGrading {
    let mut gr = CycleGrading { t1: 0, t2: 0, e: 0, w: 0 };
    for v in g.four_valent() {
        match z.local(g, v) {
            None => gr.e += 1,
            Some((0, 0)) => gr.t1 += 1,
            Some((1, 1)) => gr.t2 += 1,
            _ => {}
        }
    }
    let m = g.n_levels();
    for i in 0..g.n_pairs() {
        let (b, t) = (z.has(0, 2 * i + 1), z.has(m, 2 * i + 1));
        if b && t {
            gr.w += 1;
        } else if !b && !t {
            gr.w -= 1;
        }
    }
    gr
}

/// `m·x_Z` with every variable of `m` that lies on the cycle applied as an
/// action, so that the coefficient only carries variables off the cycle.
fn normalize(g: &SingularGraph, m: Monomial, z: Cycle) -> Option<(Monomial, Cycle)> {
    let Some(e) = m.support().find(|&e| z.contains_edge(g, e)) else { return Some((m, z)) };
    let rest = m.div(&Monomial::var(m.0.len(), e));
    match apply_u(g, &z, e) {
        Action::Zero => None,
        Action::Pushed { coefficient, target } => normalize(g, rest.mul(&coefficient), target),
        Action::Unchanged => unreachable!("variable on the cycle"),
    }
}

/// `Uᵢ` applied to a normalized term `coefficient·x_Z`, or `None` for zero.
fn act(g: &SingularGraph, term: (Monomial, Cycle), e: usize) -> Option<(Monomial, Cycle)> {
    let (m, z) = term;
    normalize(g, m.times_var(e), z)
}

/// Monomials equal modulo `UₐU_b = U_cU_d` at every four-valent vertex
/// (inputs `a, b`, outputs `c, d`).
fn binomially_equal(g: &SingularGraph, x: &Monomial, y: &Monomial) -> bool {
    if x.degree() != y.degree() {
        return false;
    }
    let n = x.0.len();
    let moves: Vec<(Monomial, Monomial)> = g
        .four_valent()
        .map(|v| {
            let vx = &g.vertices()[v];
            let ins = [vx.ins[0].unwrap(), vx.ins[1].unwrap()];
            let outs = [vx.outs[0].unwrap(), vx.outs[1].unwrap()];
            (Monomial::from_edges(n, &ins), Monomial::from_edges(n, &outs))
        })
        .collect();
    let mut seen = BTreeSet::from([x.clone()]);
    let mut todo = vec![x.clone()];
    while let Some(m) = todo.pop() {
        if &m == y {
            return true;
        }
        for (a, b) in &moves {
            for (from, to) in [(a, b), (b, a)] {
                if from.divides(&m) {
                    let next = m.div(from).mul(to);
                    if seen.insert(next.clone()) {
                        todo.push(next);
                    }
                }
            }
        }
    }
    false
}

/// Pairs `(Z, i, j)` with `UᵢUⱼx_Z ≠ UⱼUᵢx_Z`, out of all checked. Terms are
/// compared as `coefficient·x_Z` with coefficients taken modulo the quadratic
/// vertex relations.
pub fn commutativity_failures(g: &SingularGraph) -> (usize, Vec<(Cycle, usize, usize)>) {
    let n = g.edges().len();
    let mut checks = 0;
    let mut bad = Vec::new();
    for z in enumerate_cycles(g) {
        let start = (Monomial::one(n), z.clone());
        for i in 0..n {
            for j in i + 1..n {
                checks += 1;
                let ij = act(g, start.clone(), i).and_then(|t| act(g, t, j));
                let ji = act(g, start.clone(), j).and_then(|t| act(g, t, i));
                let same = match (&ij, &ji) {
                    (None, None) => true,
                    (Some((a, za)), Some((b, zb))) => za == zb && binomially_equal(g, a, b),
                    _ => false,
                };
                if !same {
                    bad.push((z.clone(), i, j));
                }
            }
        }
    }
    (checks, bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::PlatWord;

    fn graph(s: &str, bits: &[bool]) -> SingularGraph {
        PlatWord::parse(s).unwrap().resolve(bits).unwrap()
    }

    fn cycle_with(g: &SingularGraph, edges: &[usize]) -> Cycle {
        enumerate_cycles(g).into_iter().find(|z| z.edges(g) == edges).expect("cycle exists")
    }

    #[test]
    fn trivial_cycles_and_pushes() {
        let g = graph("n=1; word=[]", &[]);
        let cs = enumerate_cycles(&g);
        assert_eq!(cs.len(), 2);
        let left = cycle_with(&g, &[0]);
        let right = cycle_with(&g, &[1]);
        let d = minimal_disk(&g, &left, Anchor::Edge(0)).unwrap();
        assert_eq!(d.right_path, vec![1]);
        assert!(d.coefficient(2).is_one());
        assert_eq!(apply_u(&g, &left, 0), Action::Pushed { coefficient: Monomial::one(2), target: right.clone() });
        assert!(minimal_disk(&g, &right, Anchor::Edge(1)).is_none());
        assert_eq!(apply_u(&g, &right, 1), Action::Zero);
        assert_eq!(apply_u(&g, &right, 0), Action::Unchanged);
    }

    #[test]
    fn single_vertex_cycles() {
        let g = graph("n=1; word=[+1]", &[true]);
        let cs = enumerate_cycles(&g);
        let sets: Vec<Vec<usize>> = cs.iter().map(|z| z.edges(&g)).collect();
        assert_eq!(cs.len(), 4);
        for s in [[0, 2], [0, 3], [1, 2], [1, 3]] {
            assert!(sets.contains(&s.to_vec()));
        }
    }

    #[test]
    fn single_vertex_hand_pushes() {
        let g = graph("n=1; word=[+1]", &[true]);
        let z13 = cycle_with(&g, &[0, 2]);
        let z23 = cycle_with(&g, &[1, 2]);
        let z14 = cycle_with(&g, &[0, 3]);
        let one = Monomial::one(4);
        assert_eq!(apply_u(&g, &z13, 0), Action::Pushed { coefficient: one.clone(), target: z23.clone() });
        assert_eq!(apply_u(&g, &z23, 1), Action::Zero);
        assert_eq!(apply_u(&g, &z13, 2), Action::Pushed { coefficient: one, target: z14 });
    }

    #[test]
    fn gradings_of_small_cycles() {
        let g = graph("n=1; word=[]", &[]);
        assert_eq!(grade_cycle(&g, &cycle_with(&g, &[0])).q(), 1);
        assert_eq!(grade_cycle(&g, &cycle_with(&g, &[1])).q(), -1);
        let g = graph("n=1; word=[+1]", &[true]);
        let gr = grade_cycle(&g, &cycle_with(&g, &[0, 2]));
        assert_eq!((gr.t1, gr.q()), (1, 1 + gr.w));
    }

    #[test]
    fn edge_actions_commute() {
        for (w, bits) in [("n=1; word=[+1]", vec![true]), ("n=2; word=[+2]", vec![true]), ("n=2; word=[+2,+2,+2]", vec![true, true, true]), ("n=2; word=[+2,+1,+3,+2]", vec![true, false, true, true])] {
            let g = graph(w, &bits);
            let (checks, bad) = commutativity_failures(&g);
            assert!(checks > 0);
            assert!(bad.is_empty(), "{w}: {bad:?}");
        }
    }
}
