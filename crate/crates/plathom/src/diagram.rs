//! Plat words, singular resolutions and the planar data derived from them.
//!
//! After resolving every crossing nothing crosses any more, so a resolved
//! diagram is drawn on `2n` vertical tracks. Crossing `k` of the word sits at
//! level `k`; cups live at level `0` and caps at level `m + 1`. A singular
//! vertex at gap `g` is the point where tracks `g` and `g + 1` touch.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram text: {0}")]
    Malformed(String),
    #[error("crossing position {pos} out of range for {strands} strands")]
    OutOfRange { pos: usize, strands: usize },
    #[error("a plat word needs at least one pair of strands")]
    ZeroStrands,
    #[error("resolution has {got} bits, word has {want} crossings")]
    LengthMismatch { got: usize, want: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Left strand of the generator, in `1..2n`.
    pub pos: usize,
    pub sign: Sign,
}

/// A braid word on `2n` strands closed off by `n` cups and `n` caps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlatWord {
    n_pairs: usize,
    crossings: Vec<Crossing>,
}

impl PlatWord {
    pub fn new(n_pairs: usize, crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        if n_pairs == 0 {
            return Err(DiagramError::ZeroStrands);
        }
        let strands = 2 * n_pairs;
        for c in &crossings {
            if c.pos == 0 || c.pos >= strands {
                return Err(DiagramError::OutOfRange { pos: c.pos, strands });
            }
        }
        Ok(PlatWord { n_pairs, crossings })
    }

    /// Builds a word from signed generator indices, `+p` for σ_p and `-p` for σ_p⁻¹.
    pub fn from_signed(n_pairs: usize, letters: &[i64]) -> Result<Self, DiagramError> {
        let crossings = letters
            .iter()
            .map(|&l| {
                if l == 0 {
                    return Err(DiagramError::Malformed("generator index 0".into()));
                }
                let sign = if l > 0 { Sign::Positive } else { Sign::Negative };
                Ok(Crossing { pos: l.unsigned_abs() as usize, sign })
            })
            .collect::<Result<Vec<_>, _>>()?;
        PlatWord::new(n_pairs, crossings)
    }

    /// Parses `n=<int>; word=[<±p>,...]`.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let bad = |why: &str| DiagramError::Malformed(format!("{why} in {text:?}"));
        let mut n = None;
        let mut word = None;
        for part in text.trim().split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part.split_once('=').ok_or_else(|| bad("missing '='"))?;
            match key.trim() {
                "n" => {
                    let v: usize = value.trim().parse().map_err(|_| bad("bad n"))?;
                    n = Some(v);
                }
                "word" => {
                    let v = value.trim();
                    let inner = v
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(|| bad("word must be bracketed"))?;
                    let mut letters = Vec::new();
                    for tok in inner.split(',') {
                        let tok = tok.trim();
                        if tok.is_empty() {
                            continue;
                        }
                        let (sign, digits) = match tok.as_bytes()[0] {
                            b'+' => (1i64, &tok[1..]),
                            b'-' => (-1i64, &tok[1..]),
                            _ => (1i64, tok),
                        };
                        let p: i64 = digits
                            .parse()
                            .map_err(|_| bad(&format!("bad letter {tok:?}")))?;
                        if p <= 0 {
                            return Err(bad(&format!("bad letter {tok:?}")));
                        }
                        letters.push(sign * p);
                    }
                    word = Some(letters);
                }
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing n"))?;
        let word = word.ok_or_else(|| bad("missing word"))?;
        PlatWord::from_signed(n, &word)
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn strands(&self) -> usize {
        2 * self.n_pairs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn letters(&self) -> Vec<i64> {
        self.crossings
            .iter()
            .map(|c| match c.sign {
                Sign::Positive => c.pos as i64,
                Sign::Negative => -(c.pos as i64),
            })
            .collect()
    }

    /// Signs of the crossings as crossings of the oriented plat closure.
    ///
    /// Components are oriented so that each one leaves its lowest-numbered
    /// cup upward along the cup's left end. Where the two strands through a
    /// crossing run in opposite vertical directions the braid sign flips.
    pub fn link_signs(&self) -> Vec<Sign> {
        let up = self.strand_directions();
        self.crossings
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let (a, b) = up[k];
                if a == b {
                    c.sign
                } else {
                    c.sign.flip()
                }
            })
            .collect()
    }

    pub fn n_plus(&self) -> usize {
        self.link_signs().iter().filter(|s| **s == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.link_signs().iter().filter(|s| **s == Sign::Negative).count()
    }

    /// For each crossing, whether the strand entering from the lower-left and
    /// the one entering from the lower-right travel upward.
    fn strand_directions(&self) -> Vec<(bool, bool)> {
        let m = self.len();
        let w = self.strands();
        // perm[k][p] = where the strand at track p just below level k+1 goes.
        let mut dir: Vec<[Option<bool>; 2]> = vec![[None, None]; m];
        let mut seen_cup = vec![false; self.n_pairs];
        for start in 0..self.n_pairs {
            if seen_cup[start] {
                continue;
            }
            // Walk the component starting up the left end of this cup.
            let mut pos = 2 * start + 1;
            let mut going_up = true;
            loop {
                if going_up {
                    seen_cup[(pos - 1) / 2] = true;
                    for k in 0..m {
                        let c = self.crossings[k];
                        if pos == c.pos {
                            dir[k][0] = Some(true);
                            pos += 1;
                        } else if pos == c.pos + 1 {
                            dir[k][1] = Some(true);
                            pos -= 1;
                        }
                    }
                    // Cap joins 2i-1 and 2i.
                    pos = if pos % 2 == 1 { pos + 1 } else { pos - 1 };
                    going_up = false;
                } else {
                    for k in (0..m).rev() {
                        let c = self.crossings[k];
                        // Coming down, the strand at track p above the crossing
                        // entered from the other track below it.
                        if pos == c.pos {
                            dir[k][1] = Some(false);
                            pos += 1;
                        } else if pos == c.pos + 1 {
                            dir[k][0] = Some(false);
                            pos -= 1;
                        }
                    }
                    let cup = (pos - 1) / 2;
                    seen_cup[cup] = true;
                    pos = if pos % 2 == 1 { pos + 1 } else { pos - 1 };
                    if cup == start && pos == 2 * start + 1 {
                        break;
                    }
                    going_up = true;
                }
            }
        }
        debug_assert!(w >= 2);
        dir.into_iter()
            .map(|d| (d[0].expect("strand traced"), d[1].expect("strand traced")))
            .collect()
    }

    /// The resolution at cube vertex `bits`: `Some(gap)` for a singular vertex,
    /// `None` for the oriented smoothing.
    pub fn resolve_levels(&self, bits: &[bool]) -> Result<Vec<Option<usize>>, DiagramError> {
        if bits.len() != self.len() {
            return Err(DiagramError::LengthMismatch { got: bits.len(), want: self.len() });
        }
        Ok(self
            .crossings
            .iter()
            .zip(bits)
            .map(|(c, &b)| {
                let singular = match c.sign {
                    Sign::Positive => b,
                    Sign::Negative => !b,
                };
                singular.then_some(c.pos)
            })
            .collect())
    }

    pub fn resolve(&self, bits: &[bool]) -> Result<SingularGraph, DiagramError> {
        Ok(SingularGraph::new(self.n_pairs, self.resolve_levels(bits)?))
    }
}

impl fmt::Display for PlatWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; word=[", self.n_pairs)?;
        for (i, l) in self.letters().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l:+}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for PlatWord {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PlatWord::parse(s)
    }
}

/// A cube vertex `v ∈ {0,1}^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionVector {
    pub bits: Vec<bool>,
}

impl ResolutionVector {
    pub fn from_index(index: usize, len: usize) -> Self {
        ResolutionVector { bits: (0..len).map(|i| index >> i & 1 == 1).collect() }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum()
    }

    pub fn height(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn all(len: usize) -> impl Iterator<Item = ResolutionVector> {
        (0..1usize << len).map(move |i| ResolutionVector::from_index(i, len))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Cup,
    Cap,
    FourValent,
}

/// A vertex sits at a level and a gap: it touches tracks `gap` and `gap + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub level: usize,
    pub gap: usize,
    /// Left and right incoming edges (absent for cups).
    pub ins: [Option<usize>; 2],
    /// Left and right outgoing edges (absent for caps).
    pub outs: [Option<usize>; 2],
}

/// A maximal segment of one track between two touching events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub pos: usize,
    pub lo: usize,
    pub hi: usize,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    /// Bands `lo..hi` (band `t` lies between levels `t` and `t + 1`).
    pub fn bands(&self) -> std::ops::Range<usize> {
        self.lo..self.hi
    }
}

/// The closed plat resolution `p(S)` as a leveled planar graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularGraph {
    n_pairs: usize,
    levels: Vec<Option<usize>>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    edge_at: Vec<Vec<usize>>,
    vertex_at_level: Vec<Option<usize>>,
}

impl SingularGraph {
    /// `levels[k]` is the gap of the singular vertex at level `k + 1`, if any.
    pub fn new(n_pairs: usize, levels: Vec<Option<usize>>) -> Self {
        assert!(n_pairs > 0);
        let w = 2 * n_pairs;
        for g in levels.iter().flatten() {
            assert!(*g >= 1 && *g < w, "gap {g} out of range");
        }
        let m = levels.len();
        let mut vertices = Vec::new();
        for i in 0..n_pairs {
            vertices.push(Vertex {
                kind: VertexKind::Cup,
                level: 0,
                gap: 2 * i + 1,
                ins: [None, None],
                outs: [None, None],
            });
        }
        let mut vertex_at_level = vec![None; m + 2];
        for (k, g) in levels.iter().enumerate() {
            if let Some(g) = g {
                vertex_at_level[k + 1] = Some(vertices.len());
                vertices.push(Vertex {
                    kind: VertexKind::FourValent,
                    level: k + 1,
                    gap: *g,
                    ins: [None, None],
                    outs: [None, None],
                });
            }
        }
        let first_cap = vertices.len();
        for i in 0..n_pairs {
            vertices.push(Vertex {
                kind: VertexKind::Cap,
                level: m + 1,
                gap: 2 * i + 1,
                ins: [None, None],
                outs: [None, None],
            });
        }
        let cup_of = |p: usize| (p - 1) / 2;

        // Touch events per track.
        let mut raw = Vec::new();
        for p in 1..=w {
            let mut events = vec![(0usize, cup_of(p))];
            for (k, g) in levels.iter().enumerate() {
                if let Some(g) = g {
                    if p == *g || p == *g + 1 {
                        events.push((k + 1, vertex_at_level[k + 1].unwrap()));
                    }
                }
            }
            events.push((m + 1, first_cap + cup_of(p)));
            for pair in events.windows(2) {
                raw.push(Edge { pos: p, lo: pair[0].0, hi: pair[1].0, tail: pair[0].1, head: pair[1].1 });
            }
        }
        raw.sort_by_key(|e| (e.lo, e.pos));
        let mut edge_at = vec![vec![usize::MAX; w]; m + 1];
        for (id, e) in raw.iter().enumerate() {
            for t in e.bands() {
                edge_at[t][e.pos - 1] = id;
            }
            let side = |v: &Vertex| usize::from(e.pos != v.gap);
            let s = side(&vertices[e.tail]);
            vertices[e.tail].outs[s] = Some(id);
            let s = side(&vertices[e.head]);
            vertices[e.head].ins[s] = Some(id);
        }
        SingularGraph { n_pairs, levels, vertices, edges: raw, edge_at, vertex_at_level }
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn width(&self) -> usize {
        2 * self.n_pairs
    }

    /// Number of crossing levels `m`; bands are `0..=m`.
    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Option<usize>] {
        &self.levels
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_at(&self, band: usize, pos: usize) -> usize {
        self.edge_at[band][pos - 1]
    }

    /// The four-valent vertex at `level`, if that level is singular.
    pub fn vertex_at_level(&self, level: usize) -> Option<usize> {
        self.vertex_at_level.get(level).copied().flatten()
    }

    pub fn cup(&self, i: usize) -> usize {
        i
    }

    pub fn cap(&self, i: usize) -> usize {
        self.vertices.len() - self.n_pairs + i
    }

    pub fn four_valent(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].kind == VertexKind::FourValent)
    }

    pub fn n_four_valent(&self) -> usize {
        self.four_valent().count()
    }

    /// Role map `(i, j, k, l)`: left/right incoming then left/right outgoing.
    pub fn roles(&self, v: usize) -> [usize; 4] {
        let x = &self.vertices[v];
        assert_eq!(x.kind, VertexKind::FourValent);
        [x.ins[0].unwrap(), x.ins[1].unwrap(), x.outs[0].unwrap(), x.outs[1].unwrap()]
    }

    /// Replaces the singular vertex at `level` by the oriented smoothing.
    pub fn smoothed_at(&self, level: usize) -> SingularGraph {
        let mut levels = self.levels.clone();
        assert!(levels[level - 1].is_some(), "level {level} is not singular");
        levels[level - 1] = None;
        SingularGraph::new(self.n_pairs, levels)
    }

    /// Replaces the smoothing at `level` by a singular vertex at `gap`.
    pub fn singularized_at(&self, level: usize, gap: usize) -> SingularGraph {
        let mut levels = self.levels.clone();
        assert!(levels[level - 1].is_none(), "level {level} is already singular");
        levels[level - 1] = Some(gap);
        SingularGraph::new(self.n_pairs, levels)
    }

    /// Circles of the unoriented smoothing `sm(p(S))`.
    pub fn smooth(&self) -> SmoothedDiagram {
        let mut parent: Vec<usize> = (0..self.edges.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for v in &self.vertices {
            // Turnbacks: the two ins are joined, and so are the two outs.
            for pair in [v.ins, v.outs] {
                if let [Some(a), Some(b)] = pair {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let mut ids = BTreeMap::new();
        let mut circle_of_edge = Vec::with_capacity(self.edges.len());
        for e in 0..self.edges.len() {
            let r = find(&mut parent, e);
            let next = ids.len();
            circle_of_edge.push(*ids.entry(r).or_insert(next));
        }
        SmoothedDiagram {
            circle_count: ids.len(),
            circle_of_edge,
            strand_of_edge: self.edges.iter().map(|e| e.pos - 1).collect(),
        }
    }

    /// Number of connected components of the graph.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            parent[a] = b;
        }
        (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count()
    }

    /// Unit cells of the bounded complement, grouped into faces.
    pub fn cells(&self) -> CellComplex {
        let m = self.n_levels();
        let w = self.width();
        let mut faces: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut face_of = BTreeMap::new();
        let mut unbounded = Vec::new();
        for g in 1..w {
            let mut run: Vec<(usize, usize)> = Vec::new();
            let mut open = g % 2 == 0;
            for t in 0..=m {
                if t > 0 {
                    let pinched = self.vertex_at_level(t).map(|v| self.vertices[v].gap) == Some(g);
                    if pinched {
                        Self::flush(&mut faces, &mut unbounded, &mut run, open);
                        open = false;
                    }
                }
                run.push((t, g));
            }
            if g % 2 == 0 {
                open = true;
            }
            Self::flush(&mut faces, &mut unbounded, &mut run, open);
        }
        for (f, cells) in faces.iter().enumerate() {
            for c in cells {
                face_of.insert(*c, Some(f));
            }
        }
        for c in &unbounded {
            face_of.insert(*c, None);
        }
        CellComplex { faces, unbounded, face_of }
    }

    fn flush(
        faces: &mut Vec<Vec<(usize, usize)>>,
        unbounded: &mut Vec<(usize, usize)>,
        run: &mut Vec<(usize, usize)>,
        open: bool,
    ) {
        if run.is_empty() {
            return;
        }
        if open {
            unbounded.append(run);
        } else {
            faces.push(std::mem::take(run));
        }
    }
}

/// Circle decomposition of the unoriented smoothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothedDiagram {
    pub circle_count: usize,
    pub circle_of_edge: Vec<usize>,
    /// Track index minus one, so `(-1)^l` alternates across neighbouring tracks.
    pub strand_of_edge: Vec<usize>,
}

/// Cells are `(band, gap)` pairs; faces are their vertical runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub faces: Vec<Vec<(usize, usize)>>,
    pub unbounded: Vec<(usize, usize)>,
    pub face_of: BTreeMap<(usize, usize), Option<usize>>,
}

impl CellComplex {
    pub fn bounded_faces(&self) -> usize {
        self.faces.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PlatWord {
        PlatWord::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let t = w("n=1; word=[]");
        assert_eq!((t.strands(), t.len()), (2, 0));
        let tre = w("n=2; word=[+2,+2,+2]");
        assert_eq!(tre.letters(), vec![2, 2, 2]);
        assert!(matches!(PlatWord::parse("n=1; word=[+9]"), Err(DiagramError::OutOfRange { .. })));
        assert!(matches!(PlatWord::parse("n=0; word=[]"), Err(DiagramError::ZeroStrands)));
        assert!(PlatWord::parse("n=1; word=[+x]").is_err());
        assert!(PlatWord::parse("n=1").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["n=1; word=[]", "n=2; word=[+2,-1,+3]", "n=3; word=[-5,+4]"] {
            assert_eq!(w(s).to_string(), s);
            assert_eq!(w(&w(s).to_string()), w(s));
        }
    }

    #[test]
    fn resolve_counts() {
        let g = w("n=1; word=[]").resolve(&[]).unwrap();
        assert_eq!((g.vertices().len(), g.edges().len(), g.n_four_valent()), (2, 2, 0));
        let g = w("n=1; word=[+1]").resolve(&[true]).unwrap();
        assert_eq!((g.edges().len(), g.n_four_valent()), (4, 1));
        let tre = w("n=2; word=[+2,+2,+2]");
        let g = tre.resolve(&[true, true, true]).unwrap();
        assert_eq!((g.edges().len(), g.n_four_valent()), (10, 3));
    }

    #[test]
    fn single_vertex_roles() {
        let g = w("n=1; word=[+1]").resolve(&[true]).unwrap();
        let v = g.four_valent().next().unwrap();
        // Bottom pieces first, then the top pieces, each left to right.
        assert_eq!(g.roles(v), [0, 1, 2, 3]);
    }

    #[test]
    fn negative_crossing_swaps_bits() {
        let u = w("n=1; word=[-1]");
        assert_eq!(u.resolve_levels(&[false]).unwrap(), vec![Some(1)]);
        assert_eq!(u.resolve_levels(&[true]).unwrap(), vec![None]);
    }

    #[test]
    fn smoothing_circle_counts() {
        assert_eq!(w("n=1; word=[]").resolve(&[]).unwrap().smooth().circle_count, 1);
        assert_eq!(w("n=1; word=[+1]").resolve(&[true]).unwrap().smooth().circle_count, 2);
        let tre = w("n=2; word=[+2,+2,+2]").resolve(&[true; 3]).unwrap();
        assert_eq!(tre.smooth().circle_count, 3);
    }

    #[test]
    fn cell_counts_and_euler() {
        let g = w("n=1; word=[]").resolve(&[]).unwrap();
        assert_eq!(g.cells().bounded_faces(), 1);
        let g = w("n=1; word=[+1]").resolve(&[true]).unwrap();
        assert_eq!(g.cells().bounded_faces(), 2);
        let g = w("n=2; word=[+2,+2,+2]").resolve(&[true; 3]).unwrap();
        let f = g.cells().bounded_faces() + 1;
        assert_eq!(g.vertices().len() + f, g.edges().len() + 2);
    }

    #[test]
    fn link_signs_of_small_words() {
        // The one-crossing plat unknot has antiparallel strands at its crossing.
        assert_eq!(w("n=1; word=[+1]").link_signs(), vec![Sign::Negative]);
        // Trefoil σ₂³: the middle strands run in the same direction.
        let s = w("n=2; word=[+2,+2,+2]").link_signs();
        assert!(s.iter().all(|x| *x == s[0]));
        let u = w("n=2; word=[]");
        assert_eq!((u.n_plus(), u.n_minus()), (0, 0));
    }
}
