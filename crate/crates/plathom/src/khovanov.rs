//! Khovanov homology of a plat closure over ℚ, computed straight from the
//! cube of unoriented smoothings.
//!
//! Nothing here reuses the singular-graph machinery: circles, orientations and
//! ranks are all computed locally so that agreement with the `E₂` page is a
//! genuine cross-check.

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use crate::diagram::{PlatWord, Sign};

/// A segment of track `t` (0-based) in band `b`.
type Seg = (usize, usize);

struct Plat {
    tracks: usize,
    levels: usize,
    /// `(left track, positive braid letter)` per crossing, bottom to top.
    crossings: Vec<(usize, bool)>,
}

impl Plat {
    fn new(w: &PlatWord) -> Self {
        Plat {
            tracks: w.strands(),
            levels: w.len(),
            crossings: w.crossings().iter().map(|c| (c.pos - 1, c.sign == Sign::Positive)).collect(),
        }
    }

    fn seg_id(&self, s: Seg) -> usize {
        s.1 * self.tracks + s.0
    }

    fn n_segs(&self) -> usize {
        self.tracks * (self.levels + 1)
    }

    /// Whether crossing `k` is smoothed vertically in state `bit`.
    fn vertical(&self, k: usize, bit: bool) -> bool {
        self.crossings[k].1 != bit
    }

    /// Pairs of segments joined in the smoothing `state`.
    fn joins(&self, state: usize) -> Vec<(Seg, Seg)> {
        let mut out = Vec::new();
        for p in (0..self.tracks).step_by(2) {
            out.push(((p, 0), (p + 1, 0)));
            out.push(((p, self.levels), (p + 1, self.levels)));
        }
        for (k, &(p, _)) in self.crossings.iter().enumerate() {
            for t in 0..self.tracks {
                if t != p && t != p + 1 {
                    out.push(((t, k), (t, k + 1)));
                }
            }
            if self.vertical(k, state >> k & 1 == 1) {
                out.push(((p, k), (p, k + 1)));
                out.push(((p + 1, k), (p + 1, k + 1)));
            } else {
                out.push(((p, k), (p + 1, k)));
                out.push(((p, k + 1), (p + 1, k + 1)));
            }
        }
        out
    }

    /// Circle label of every segment, labels numbered by first appearance.
    fn circles(&self, state: usize) -> (usize, Vec<usize>) {
        let n = self.n_segs();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in self.joins(state) {
            let (a, b) = (self.seg_id(a), self.seg_id(b));
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = count;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Link signs from orienting each component up the left end of its lowest cup.
    fn link_signs(&self) -> Vec<bool> {
        // up[k] = (strand entering crossing k from lower-left goes up, same from lower-right)
        let mut dir: Vec<[Option<bool>; 2]> = vec![[None, None]; self.levels];
        let mut done = vec![false; self.tracks / 2];
        for cup in 0..self.tracks / 2 {
            if done[cup] {
                continue;
            }
            let (mut t, mut band, mut up) = (2 * cup, 0usize, true);
            loop {
                if up {
                    if band == self.levels {
                        t ^= 1;
                        up = false;
                        continue;
                    }
                    let (p, _) = self.crossings[band];
                    if t == p || t == p + 1 {
                        dir[band][t - p] = Some(true);
                        t = 2 * p + 1 - t;
                    }
                    band += 1;
                } else {
                    if band == 0 {
                        done[t / 2] = true;
                        t ^= 1;
                        if t == 2 * cup {
                            break;
                        }
                        up = true;
                        continue;
                    }
                    let (p, _) = self.crossings[band - 1];
                    if t == p || t == p + 1 {
                        // Arriving from above on track t means leaving below on the other one.
                        let below = 2 * p + 1 - t;
                        dir[band - 1][below - p] = Some(false);
                        t = below;
                    }
                    band -= 1;
                }
            }
        }
        self.crossings
            .iter()
            .zip(dir)
            .map(|(&(_, pos), d)| {
                let same = d[0].expect("traced") == d[1].expect("traced");
                pos == same
            })
            .collect()
    }
}

/// Bigraded and δ-graded Khovanov dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhResult {
    pub bigraded: BTreeMap<(i64, i64), usize>,
    pub delta: BTreeMap<i64, usize>,
    pub n_plus: i64,
    pub n_minus: i64,
    /// Circle count at every cube vertex.
    pub circles: Vec<usize>,
}

impl KhResult {
    pub fn total(&self) -> usize {
        self.bigraded.values().sum()
    }
}

/// Circles of one cube vertex, as a label per segment.
#[derive(Debug, Clone)]
struct Piece {
    circles: usize,
    labels: Vec<usize>,
}

type R = BigRational;

fn rank(mut a: Vec<Vec<R>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..cols {
                let x = &a[r][j] * &f;
                a[i][j] -= x;
            }
        }
        r += 1;
    }
    r
}

/// Image of one enhanced generator along the cube edge flipping crossing `k`.
fn edge_image(from: &Piece, to: &Piece, marks: usize) -> Vec<(usize, i64)> {
    // Merges and splits are read off from shared segments.
    let mut to_of_from: Vec<Vec<usize>> = vec![Vec::new(); from.circles];
    for (s, &c) in from.labels.iter().enumerate() {
        let d = to.labels[s];
        if !to_of_from[c].contains(&d) {
            to_of_from[c].push(d);
        }
    }
    let mut from_of_to: Vec<Vec<usize>> = vec![Vec::new(); to.circles];
    for (c, ds) in to_of_from.iter().enumerate() {
        for &d in ds {
            from_of_to[d].push(c);
        }
    }
    let marked = |c: usize| marks >> c & 1 == 1;
    let mut base = 0usize;
    for (c, ds) in to_of_from.iter().enumerate() {
        if ds.len() == 1 && from_of_to[ds[0]].len() == 1 && marked(c) {
            base |= 1 << ds[0];
        }
    }
    if let Some(d) = (0..to.circles).find(|&d| from_of_to[d].len() == 2) {
        // Merge.
        let (a, b) = (from_of_to[d][0], from_of_to[d][1]);
        match (marked(a), marked(b)) {
            (true, true) => vec![],
            (false, false) => vec![(base, 1)],
            _ => vec![(base | 1 << d, 1)],
        }
    } else {
        let c = (0..from.circles).find(|&c| to_of_from[c].len() == 2).expect("merge or split");
        let (x, y) = (to_of_from[c][0], to_of_from[c][1]);
        if marked(c) {
            vec![(base | 1 << x | 1 << y, 1)]
        } else {
            vec![(base | 1 << x, 1), (base | 1 << y, 1)]
        }
    }
}

pub fn kh_homology(w: &PlatWord) -> KhResult {
    let plat = Plat::new(w);
    let m = plat.levels;
    let signs = plat.link_signs();
    let n_plus = signs.iter().filter(|&&s| s).count() as i64;
    let n_minus = m as i64 - n_plus;
    let pieces: Vec<Piece> = (0..1usize << m)
        .map(|u| {
            let (circles, labels) = plat.circles(u);
            Piece { circles, labels }
        })
        .collect();
    let h_of = |u: usize| u.count_ones() as i64 - n_minus;
    let q_of = |u: usize, marks: usize| {
        n_plus - 2 * n_minus + u.count_ones() as i64 + pieces[u].circles as i64 - 2 * marks.count_ones() as i64
    };
    // Generators grouped by (h, q).
    let mut gens: BTreeMap<(i64, i64), Vec<(usize, usize)>> = BTreeMap::new();
    for (u, p) in pieces.iter().enumerate() {
        for marks in 0..1usize << p.circles {
            gens.entry((h_of(u), q_of(u, marks))).or_default().push((u, marks));
        }
    }
    let index: BTreeMap<(usize, usize), usize> =
        gens.values().flat_map(|v| v.iter().enumerate().map(|(i, &g)| (g, i))).collect();
    let differential = |h: i64, qq: i64| -> Vec<Vec<R>> {
        let empty = Vec::new();
        let src = gens.get(&(h, qq)).unwrap_or(&empty);
        let dst = gens.get(&(h + 1, qq)).unwrap_or(&empty);
        let mut mat = vec![vec![R::zero(); src.len()]; dst.len()];
        for (j, &(u, marks)) in src.iter().enumerate() {
            for k in 0..m {
                if u >> k & 1 == 1 {
                    continue;
                }
                let v = u | 1 << k;
                let sign = if (u & ((1 << k) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                for (t, c) in edge_image(&pieces[u], &pieces[v], marks) {
                    let i = index[&(v, t)];
                    mat[i][j] += R::from_integer((sign * c).into());
                }
            }
        }
        mat
    };
    let mut bigraded = BTreeMap::new();
    let qs: Vec<i64> = gens.keys().map(|&(_, q)| q).collect();
    let hs: Vec<i64> = gens.keys().map(|&(h, _)| h).collect();
    if let (Some(&qlo), Some(&qhi), Some(&hlo), Some(&hhi)) =
        (qs.iter().min(), qs.iter().max(), hs.iter().min(), hs.iter().max())
    {
        for qq in qlo..=qhi {
            let mats: BTreeMap<i64, Vec<Vec<R>>> = (hlo - 1..=hhi).map(|h| (h, differential(h, qq))).collect();
            for h in hlo..=hhi {
                let n = gens.get(&(h, qq)).map_or(0, |v| v.len());
                if n == 0 {
                    continue;
                }
                let out = rank(mats[&h].clone());
                let inc = rank(mats[&(h - 1)].clone());
                let d = n - out - inc;
                if d > 0 {
                    bigraded.insert((h, qq), d);
                }
            }
        }
    }
    let mut delta = BTreeMap::new();
    for (&(h, qq), &d) in &bigraded {
        *delta.entry(qq - 2 * h).or_insert(0) += d;
    }
    KhResult { bigraded, delta, n_plus, n_minus, circles: pieces.iter().map(|p| p.circles).collect() }
}

/// `d² = 0` on the whole oracle cube, checked by dense multiplication.
pub fn kh_d2_vanishes(w: &PlatWord) -> bool {
    let plat = Plat::new(w);
    let m = plat.levels;
    let pieces: Vec<Piece> = (0..1usize << m)
        .map(|u| {
            let (circles, labels) = plat.circles(u);
            Piece { circles, labels }
        })
        .collect();
    let apply = |u: usize, marks: usize| -> BTreeMap<(usize, usize), i64> {
        let mut out = BTreeMap::new();
        for k in 0..m {
            if u >> k & 1 == 1 {
                continue;
            }
            let v = u | 1 << k;
            let sign = if (u & ((1 << k) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            for (t, c) in edge_image(&pieces[u], &pieces[v], marks) {
                *out.entry((v, t)).or_insert(0) += sign * c;
            }
        }
        out
    };
    for u in 0..1usize << m {
        for marks in 0..1usize << pieces[u].circles {
            let mut twice: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for ((v, t), c) in apply(u, marks) {
                for (key, c2) in apply(v, t) {
                    *twice.entry(key).or_insert(0) += c * c2;
                }
            }
            if twice.values().any(|&c| c != 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kh(s: &str) -> KhResult {
        kh_homology(&PlatWord::parse(s).unwrap())
    }

    #[test]
    fn unknots() {
        let want = BTreeMap::from([((0, -1), 1), ((0, 1), 1)]);
        for w in ["n=1; word=[]", "n=1; word=[+1]", "n=1; word=[-1]", "n=2; word=[+2]", "n=2; word=[-2]"] {
            assert_eq!(kh(w).bigraded, want, "{w}");
        }
    }

    #[test]
    fn trefoil() {
        let r = kh("n=2; word=[+2,+2,+2]");
        assert_eq!(r.total(), 4);
        assert_eq!(r.delta.len(), 2);
        assert!(r.delta.values().all(|&d| d == 2));
    }

    #[test]
    fn unlink_of_two() {
        let r = kh("n=2; word=[]");
        assert_eq!(r.bigraded, BTreeMap::from([((0, -2), 1), ((0, 0), 2), ((0, 2), 1)]));
    }

    #[test]
    fn oracle_cube_squares_to_zero() {
        for w in ["n=2; word=[+2,+2,+2]", "n=2; word=[+2,-1,+3]"] {
            assert!(kh_d2_vanishes(&PlatWord::parse(w).unwrap()), "{w}");
        }
    }
}
