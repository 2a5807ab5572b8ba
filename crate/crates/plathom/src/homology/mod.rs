//! Homology over ℚ: vertex homology with its module structure, the `E₂` page
//! of the cube filtration and the total homology.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::chain::{edge_identity_defect, edge_map, vanishes, EdgeKind, Resolution};
use crate::cycles::Monomial;
use crate::diagram::{DiagramError, PlatWord, Sign, SingularGraph, VertexKind};
use crate::linalg::{q, HomologyPresentation, SparseMatrix, SparseVec};

pub mod moves;

/// Finitely supported graded dimensions; absent keys are zero.
pub type Dims<K> = BTreeMap<K, usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("window too small: nonzero homology at boundary grading {grading}")]
    WindowTooSmall { grading: i64 },
    #[error("d² ≠ 0 at grading {grading}")]
    NotAComplex { grading: i64 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Chain groups indexed by an integer grading with a differential of degree −2.
#[derive(Debug, Clone, Default)]
pub struct GradedComplex {
    pub dims: BTreeMap<i64, usize>,
    /// `maps[x] : C_x → C_{x−2}`.
    pub maps: BTreeMap<i64, SparseMatrix>,
}

impl GradedComplex {
    /// First grading at which `d∘d` is nonzero, if any.
    pub fn d2_failure(&self) -> Option<i64> {
        self.maps.iter().find_map(|(&x, d)| {
            let next = self.maps.get(&(x - 2))?;
            (!next.compose(d).is_zero()).then_some(x)
        })
    }

    /// Gradings with both an incoming and an outgoing map.
    pub fn interior(&self) -> Vec<i64> {
        self.dims
            .keys()
            .copied()
            .filter(|x| self.maps.contains_key(x) && self.maps.contains_key(&(x + 2)))
            .collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct GradedHomology {
    pub dims: Dims<i64>,
    pub presentations: BTreeMap<i64, HomologyPresentation>,
}

/// Homology at every interior grading. The two lowest and two highest
/// interior gradings must carry no homology, otherwise the window was too
/// small to be trusted.
pub fn graded_homology(c: &GradedComplex, present: bool) -> Result<GradedHomology, HomologyError> {
    if let Some(x) = c.d2_failure() {
        return Err(HomologyError::NotAComplex { grading: x });
    }
    let interior = c.interior();
    let ranks: BTreeMap<i64, usize> = if present {
        BTreeMap::new()
    } else {
        c.maps.par_iter().map(|(&x, d)| (x, d.rank())).collect()
    };
    let mut out = GradedHomology::default();
    for &x in &interior {
        let dim = if present {
            let p = HomologyPresentation::compute(&c.maps[&(x + 2)], &c.maps[&x]);
            let d = p.dim();
            out.presentations.insert(x, p);
            d
        } else {
            c.dims[&x] - ranks[&x] - ranks[&(x + 2)]
        };
        if dim > 0 {
            out.dims.insert(x, dim);
        }
    }
    let n = interior.len();
    for &x in interior.iter().take(2).chain(interior.iter().skip(n.saturating_sub(2))) {
        if out.dims.contains_key(&x) {
            return Err(HomologyError::WindowTooSmall { grading: x });
        }
    }
    Ok(out)
}

/// `H₁₊₁(S)` of one resolution, graded by the local quantum grading.
#[derive(Debug, Clone)]
pub struct VertexHomology {
    /// Circles of the unoriented smoothing.
    pub k: usize,
    pub dims: Dims<i64>,
    pub presentations: BTreeMap<i64, HomologyPresentation>,
}

impl VertexHomology {
    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dim_at(&self, qq: i64) -> usize {
        self.dims.get(&qq).copied().unwrap_or(0)
    }

    /// Class coordinates of a cycle at grading `qq`.
    pub fn project(&self, qq: i64, z: &SparseVec) -> SparseVec {
        match self.presentations.get(&qq) {
            Some(p) => p.project(z),
            None => {
                assert!(z.is_zero(), "cycle outside the computed window at q={qq}");
                SparseVec::new()
            }
        }
    }

    pub fn rep(&self, qq: i64, a: usize) -> &SparseVec {
        &self.presentations[&qq].reps[a]
    }
}

/// Local quantum window `[−k − margin, k + margin]` of a resolution.
pub fn vertex_window(k: usize, margin: i64) -> (i64, i64) {
    (-(k as i64) - margin, k as i64 + margin)
}

pub fn resolution_homology(r: &Resolution, margin: i64) -> Result<VertexHomology, HomologyError> {
    let k = r.graph.smooth().circle_count;
    let (lo, hi) = vertex_window(k, margin);
    let mut c = GradedComplex::default();
    for qq in lo - 2..=hi + 2 {
        c.dims.insert(qq, r.chain_dim(qq));
        if qq >= lo {
            c.maps.insert(qq, r.d0(qq, None));
        }
    }
    let h = graded_homology(&c, true)?;
    Ok(VertexHomology { k, dims: h.dims, presentations: h.presentations })
}

/// `U_e` induced on homology, `H_q → H_{q−2}`.
pub fn induced_u(r: &Resolution, vh: &VertexHomology, e: usize, qq: i64) -> SparseMatrix {
    let n = vh.dim_at(qq);
    let rows = vh.dim_at(qq - 2);
    if n == 0 {
        return SparseMatrix::zero(rows, 0);
    }
    let m = r.multiply(qq, &Monomial::var(r.n_vars(), e));
    let cols = (0..n).map(|a| vh.project(qq - 2, &m.apply(vh.rep(qq, a)))).collect();
    SparseMatrix { rows, cols }
}

/// Report on the `𝒜^{⊗k}` structure of a vertex homology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleReport {
    pub k: usize,
    pub total_dim: usize,
    /// Dimensions are `C(k, t)` at `k − 2t` and nothing else.
    pub binomial: bool,
    /// The top class generates freely under square-free products of the `X_c`.
    pub free: bool,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.binomial && self.free && self.total_dim == 1 << self.k
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// One representative edge per circle of the smoothing.
fn circle_edges(g: &SingularGraph) -> Vec<usize> {
    let sm = g.smooth();
    let mut reps = vec![usize::MAX; sm.circle_count];
    for (e, &c) in sm.circle_of_edge.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = e;
        }
    }
    reps
}

pub fn module_report(r: &Resolution, vh: &VertexHomology) -> ModuleReport {
    let k = vh.k;
    let top = k as i64;
    let binomial_ok = vh.dims.len() == k + 1
        && (0..=k).all(|t| vh.dim_at(top - 2 * t as i64) == binomial(k, t));
    let mut free = vh.dim_at(top) == 1;
    if free {
        let xs = circle_edges(&r.graph);
        let mut by_grade: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
        for subset in 0..1usize << k {
            let mut v = SparseVec::unit(0);
            let mut qq = top;
            for (c, &e) in xs.iter().enumerate() {
                if subset >> c & 1 == 1 {
                    v = induced_u(r, vh, e, qq).apply(&v);
                    qq -= 2;
                }
            }
            by_grade.entry(qq).or_default().push(v);
        }
        free = by_grade.iter().all(|(&qq, vs)| {
            let m = SparseMatrix { rows: vh.dim_at(qq), cols: vs.clone() };
            m.rank() == vs.len()
        });
    }
    ModuleReport { k, total_dim: vh.dim(), binomial: binomial_ok, free }
}

/// Homology-level identities of the edge actions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UActionReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl UActionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn matrix_eq(a: &SparseMatrix, b: &SparseMatrix, sign: i64) -> bool {
    a.cols.len() == b.cols.len()
        && a.cols.iter().zip(&b.cols).all(|(x, y)| x.axpy(&q(-sign), y).is_zero())
}

/// `Uᵢ = −Uⱼ` at every vertex-adjacent pair, `Uᵢ² = 0`, and along each circle
/// `(−1)^{track} U_e` is independent of the edge.
pub fn u_action_identities(r: &Resolution, vh: &VertexHomology) -> UActionReport {
    let g = &r.graph;
    let mut pairs = Vec::new();
    for v in g.vertices() {
        match v.kind {
            VertexKind::Cup => pairs.push((v.outs[0].unwrap(), v.outs[1].unwrap())),
            VertexKind::Cap => pairs.push((v.ins[0].unwrap(), v.ins[1].unwrap())),
            VertexKind::FourValent => {
                pairs.push((v.ins[0].unwrap(), v.ins[1].unwrap()));
                pairs.push((v.outs[0].unwrap(), v.outs[1].unwrap()));
            }
        }
    }
    let sm = g.smooth();
    let first = circle_edges(g);
    let mut report = UActionReport::default();
    let grades: Vec<i64> = vh.dims.keys().copied().collect();
    let mut memo: BTreeMap<(usize, i64), SparseMatrix> = BTreeMap::new();
    let mut u = |e: usize, qq: i64| memo.entry((e, qq)).or_insert_with(|| induced_u(r, vh, e, qq)).clone();
    for &qq in &grades {
        for &(i, j) in &pairs {
            report.checks += 1;
            if !matrix_eq(&u(i, qq), &u(j, qq), -1) {
                report.failures.push(format!("U{} ≠ −U{} at q={qq}", i + 1, j + 1));
            }
        }
        for e in 0..r.n_vars() {
            report.checks += 1;
            if !u(e, qq - 2).compose(&u(e, qq)).is_zero() {
                report.failures.push(format!("U{}² ≠ 0 at q={qq}", e + 1));
            }
            let f = first[sm.circle_of_edge[e]];
            let parity = (g.edges()[e].pos + g.edges()[f].pos) % 2;
            report.checks += 1;
            if !matrix_eq(&u(e, qq), &u(f, qq), if parity == 0 { 1 } else { -1 }) {
                report.failures.push(format!("U{} and U{} disagree on their circle at q={qq}", e + 1, f + 1));
            }
        }
    }
    report
}

/// `d⁺∘d⁻` and `d⁻∘d⁺` against the `U`-actions at every crossing of every
/// cube vertex, on the vertex window of the singular side.
pub fn edge_identity_report(word: &PlatWord, margin: i64) -> Result<UActionReport, HomologyError> {
    let n = word.len();
    let mut report = UActionReport::default();
    for u in 0..1usize << n {
        let mut bits: Vec<bool> = (0..n).map(|i| u >> i & 1 == 1).collect();
        for i in 0..n {
            // Each unordered pair once: visit it from the vertex with bit i clear.
            if bits[i] {
                continue;
            }
            let singular_bit = word.crossings()[i].sign == Sign::Positive;
            bits[i] = singular_bit;
            let s = Resolution::new(word.resolve(&bits)?);
            bits[i] = !singular_bit;
            let su = Resolution::new(word.resolve(&bits)?);
            bits[i] = false;
            let (lo, hi) = vertex_window(s.graph.smooth().circle_count, margin);
            for qq in lo..=hi {
                for singular_side in [true, false] {
                    report.checks += 1;
                    if !vanishes(&edge_identity_defect(&s, &su, i + 1, qq, singular_side)) {
                        let which = if singular_side { "d⁺∘d⁻" } else { "d⁻∘d⁺" };
                        report.failures.push(format!("{which} at vertex {u:0n$b}, crossing {}, q={qq}", i + 1));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The cube of resolutions of a plat word with every vertex homology.
pub struct Cube {
    pub word: PlatWord,
    pub n_plus: i64,
    pub n_minus: i64,
    pub margin: i64,
    /// Apply the Koszul sign `(−1)^{|ε|}` to the edge maps.
    pub twist: bool,
    pub vertices: Vec<Resolution>,
    pub homology: Vec<VertexHomology>,
}

impl Cube {
    pub fn new(word: &PlatWord, margin: i64) -> Result<Self, HomologyError> {
        Self::with_twist(word, margin, true)
    }

    pub fn with_twist(word: &PlatWord, margin: i64, twist: bool) -> Result<Self, HomologyError> {
        let m = word.len();
        let built: Vec<Result<(Resolution, VertexHomology), HomologyError>> = (0..1usize << m)
            .into_par_iter()
            .map(|u| {
                let bits: Vec<bool> = (0..m).map(|i| u >> i & 1 == 1).collect();
                let r = Resolution::new(word.resolve(&bits)?);
                let h = resolution_homology(&r, margin)?;
                Ok((r, h))
            })
            .collect();
        let mut vertices = Vec::new();
        let mut homology = Vec::new();
        for b in built {
            let (r, h) = b?;
            vertices.push(r);
            homology.push(h);
        }
        Ok(Cube {
            word: word.clone(),
            n_plus: word.n_plus() as i64,
            n_minus: word.n_minus() as i64,
            margin,
            twist,
            vertices,
            homology,
        })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn height(u: usize) -> i64 {
        u.count_ones() as i64
    }

    /// Shift from local to total quantum grading at vertex `u`.
    pub fn q_shift(&self, u: usize) -> i64 {
        Self::height(u) + self.n_plus - 2 * self.n_minus
    }

    /// `δ = q_local − |u| + n₊`.
    pub fn delta_shift(&self, u: usize) -> i64 {
        self.n_plus - Self::height(u)
    }

    fn kind(&self, i: usize) -> EdgeKind {
        match self.word.crossings()[i].sign {
            Sign::Positive => EdgeKind::Plus,
            Sign::Negative => EdgeKind::Minus,
        }
    }

    /// Cube edge `u → u + eᵢ` at local grading `qq` of `u`, with its sign.
    pub fn edge(&self, u: usize, i: usize, qq: i64) -> SparseMatrix {
        debug_assert_eq!(u >> i & 1, 0);
        let v = u | 1 << i;
        let m = edge_map(&self.vertices[u], &self.vertices[v], i + 1, self.kind(i), qq, self.twist);
        if (u & ((1 << i) - 1)).count_ones() % 2 == 1 {
            SparseMatrix { rows: m.rows, cols: m.cols.iter().map(|c| c.scale(&q(-1))).collect() }
        } else {
            m
        }
    }

    /// `E₁` dimensions keyed by `(u, local q)`.
    pub fn e1(&self) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        for (u, h) in self.homology.iter().enumerate() {
            for (&qq, &d) in &h.dims {
                out.insert((u, qq), d);
            }
        }
        out
    }

    /// Induced `d₁*` on `E₁` at total grading `qt`, from height `h` to `h + 1`,
    /// with the offsets of both sides.
    fn e1_differential(&self, qt: i64, h: i64) -> (SparseMatrix, usize) {
        let m = self.len();
        let layer = |h: i64| -> Vec<usize> { (0..1usize << m).filter(|&u| Self::height(u) == h).collect() };
        let src = layer(h);
        let dst = layer(h + 1);
        let mut dst_off = BTreeMap::new();
        let mut rows = 0;
        for &v in &dst {
            dst_off.insert(v, rows);
            rows += self.homology[v].dim_at(qt - self.q_shift(v));
        }
        let mut cols = Vec::new();
        for &u in &src {
            let ql = qt - self.q_shift(u);
            let vh = &self.homology[u];
            for a in 0..vh.dim_at(ql) {
                let rep = vh.rep(ql, a);
                let mut col = SparseVec::new();
                for i in 0..m {
                    if u >> i & 1 == 1 {
                        continue;
                    }
                    let v = u | 1 << i;
                    let img = self.edge(u, i, ql).apply(rep);
                    let cls = self.homology[v].project(ql - 1, &img);
                    let off = dst_off[&v];
                    col = col.add(&cls.map_indices(|b| Some(b + off)));
                }
                cols.push(col);
            }
        }
        (SparseMatrix { rows, cols }, rows)
    }

    fn total_q_range(&self) -> Option<(i64, i64)> {
        let qs: Vec<i64> = self
            .homology
            .iter()
            .enumerate()
            .flat_map(|(u, h)| h.dims.keys().map(move |&qq| qq + self.q_shift(u)))
            .collect();
        Some((*qs.iter().min()?, *qs.iter().max()?))
    }

    /// `E₂ = H(E₁, d₁*)` keyed by `(h, q)` with `h = |u| − n₋`.
    pub fn e2_page(&self) -> Result<Dims<(i64, i64)>, HomologyError> {
        let mut out = Dims::new();
        let Some((qlo, qhi)) = self.total_q_range() else { return Ok(out) };
        let m = self.len() as i64;
        for qt in qlo..=qhi {
            let maps: Vec<SparseMatrix> = (-1..=m).map(|h| self.e1_differential(qt, h).0).collect();
            for h in 0..m {
                let (a, b) = (&maps[h as usize + 1], &maps[h as usize + 2]);
                if !b.compose(a).is_zero() {
                    return Err(HomologyError::NotAComplex { grading: qt });
                }
            }
            for h in 0..=m {
                let dim = maps[h as usize + 1].n_cols();
                let d = dim - maps[h as usize + 1].rank() - maps[h as usize].rank();
                if d > 0 {
                    out.insert((h - self.n_minus, qt), d);
                }
            }
        }
        Ok(out)
    }

    /// `δ`-support of `E₁`.
    fn delta_range(&self) -> Option<(i64, i64)> {
        let ds: Vec<i64> = self
            .homology
            .iter()
            .enumerate()
            .flat_map(|(u, h)| h.dims.keys().map(move |&qq| qq + self.delta_shift(u)))
            .collect();
        Some((*ds.iter().min()?, *ds.iter().max()?))
    }

    fn delta_offsets(&self, delta: i64) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.vertices.len());
        let mut total = 0;
        for (u, r) in self.vertices.iter().enumerate() {
            offs.push(total);
            total += r.chain_dim(delta - self.delta_shift(u));
        }
        (offs, total)
    }

    /// `d₀ + d₁ : C_δ → C_{δ−2}`; with `with_edges` false only `d₀`.
    pub fn total_differential(&self, delta: i64, with_edges: bool) -> SparseMatrix {
        let (src_off, _) = self.delta_offsets(delta);
        let (dst_off, rows) = self.delta_offsets(delta - 2);
        let m = self.len();
        let blocks: Vec<Vec<SparseVec>> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(u, r)| {
                let ql = delta - self.delta_shift(u);
                let d0 = r.d0(ql, None);
                let mut cols: Vec<SparseVec> =
                    d0.cols.iter().map(|c| c.map_indices(|b| Some(b + dst_off[u]))).collect();
                if with_edges {
                    for i in 0..m {
                        if u >> i & 1 == 1 {
                            continue;
                        }
                        let v = u | 1 << i;
                        let e = self.edge(u, i, ql);
                        for (c, img) in cols.iter_mut().zip(&e.cols) {
                            *c = c.add(&img.map_indices(|b| Some(b + dst_off[v])));
                        }
                    }
                }
                cols
            })
            .collect();
        let mut cols = Vec::new();
        for (u, b) in blocks.into_iter().enumerate() {
            debug_assert_eq!(cols.len(), src_off[u]);
            cols.extend(b);
        }
        SparseMatrix { rows, cols }
    }

    /// The total complex over the padded `δ` window.
    pub fn total_complex(&self, with_edges: bool) -> GradedComplex {
        let mut c = GradedComplex::default();
        let Some((lo, hi)) = self.delta_range() else { return c };
        let (lo, hi) = (lo - self.margin, hi + self.margin);
        for d in lo - 2..=hi + 2 {
            c.dims.insert(d, self.delta_offsets(d).1);
            if d >= lo {
                c.maps.insert(d, self.total_differential(d, with_edges));
            }
        }
        c
    }

    /// `H₁₋₁` graded by `δ`.
    pub fn total_homology(&self) -> Result<Dims<i64>, HomologyError> {
        Ok(graded_homology(&self.total_complex(true), false)?.dims)
    }
}

/// `d² = 0` results for one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2Report {
    pub d0: bool,
    pub total: bool,
    /// `(d₀ + d₁)² = 0` when the edge maps carry no Koszul sign.
    pub total_untwisted: bool,
}

pub fn d2_report(word: &PlatWord, margin: i64) -> Result<D2Report, HomologyError> {
    let cube = Cube::new(word, margin)?;
    let plain = Cube::with_twist(word, margin, false)?;
    Ok(D2Report {
        d0: cube.total_complex(false).d2_failure().is_none(),
        total: cube.total_complex(true).d2_failure().is_none(),
        total_untwisted: plain.total_complex(true).d2_failure().is_none(),
    })
}

pub fn e2_page(word: &PlatWord, margin: i64) -> Result<Dims<(i64, i64)>, HomologyError> {
    Cube::new(word, margin)?.e2_page()
}

pub fn total_homology(word: &PlatWord, margin: i64) -> Result<Dims<i64>, HomologyError> {
    Cube::new(word, margin)?.total_homology()
}

/// `Σ dims` of a graded table.
pub fn total_dim<K>(d: &Dims<K>) -> usize {
    d.values().sum()
}

/// Convolution of two q-graded tables.
pub fn convolve(a: &Dims<i64>, b: &Dims<i64>) -> Dims<i64> {
    let mut out = Dims::new();
    for (&x, &m) in a {
        for (&y, &n) in b {
            *out.entry(x + y).or_insert(0) += m * n;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

/// `𝒜{s}` as a q-graded table, with `1 ∈ 𝒜` in grading 0 and `X` in −2.
pub fn frobenius(shift: i64) -> Dims<i64> {
    Dims::from([(shift - 2, 1), (shift, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> PlatWord {
        PlatWord::parse(s).unwrap()
    }

    #[test]
    fn zero_differential_keeps_everything() {
        let mut c = GradedComplex::default();
        let dim = |x: i64| if x == 0 { 3 } else { 0 };
        for x in -8..=8 {
            c.dims.insert(x, dim(x));
            if x > -8 {
                c.maps.insert(x, SparseMatrix::zero(dim(x - 2), dim(x)));
            }
        }
        let h = graded_homology(&c, true).unwrap();
        assert_eq!(h.dims, Dims::from([(0, 3)]));
    }

    #[test]
    fn narrow_window_is_rejected() {
        let mut c = GradedComplex::default();
        for x in [-2, 0, 2] {
            c.dims.insert(x, if x == 0 { 3 } else { 0 });
        }
        c.maps.insert(0, SparseMatrix::zero(0, 3));
        c.maps.insert(2, SparseMatrix::zero(3, 0));
        assert_eq!(graded_homology(&c, false).unwrap_err(), HomologyError::WindowTooSmall { grading: 0 });
    }

    #[test]
    fn trivial_resolution() {
        let r = Resolution::new(word("n=1; word=[]").resolve(&[]).unwrap());
        let vh = resolution_homology(&r, 4).unwrap();
        assert_eq!(vh.dims, Dims::from([(1, 1), (-1, 1)]));
        assert!(module_report(&r, &vh).passed());
        assert!(u_action_identities(&r, &vh).passed());
    }

    #[test]
    fn single_vertex_resolution() {
        let r = Resolution::new(word("n=1; word=[+1]").resolve(&[true]).unwrap());
        let vh = resolution_homology(&r, 4).unwrap();
        assert_eq!(vh.dim(), 4);
        assert!(module_report(&r, &vh).passed());
    }

    #[test]
    fn unknot_total_and_e2() {
        let w = word("n=1; word=[]");
        assert_eq!(total_homology(&w, 4).unwrap(), Dims::from([(1, 1), (-1, 1)]));
        assert_eq!(e2_page(&w, 4).unwrap(), Dims::from([((0, 1), 1), ((0, -1), 1)]));
    }

    #[test]
    fn convolution_with_frobenius() {
        assert_eq!(convolve(&frobenius(0), &frobenius(1)), Dims::from([(-3, 1), (-1, 2), (1, 1)]));
    }
}
