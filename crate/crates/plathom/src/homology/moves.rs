//! Programmatic diagram pairs for the MOY relations, the plat moves and the
//! composition product, with the dimension comparisons they predict.

use thiserror::Error;

use super::{convolve, frobenius, resolution_homology, total_homology, Dims, HomologyError};
use crate::chain::Resolution;
use crate::diagram::{DiagramError, PlatWord, SingularGraph};
use crate::sl1::{sl1_pm_homology, Sl1Complex, Sl1Graph, Sl1WindowError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("no singular vertex at level {0}")]
    NotSingular(usize),
    #[error("move does not fit at level {level}: {reason}")]
    BadSite { level: usize, reason: &'static str },
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Sl1(#[from] Sl1WindowError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// The MOY relations on closed resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Moy {
    /// Disjoint union with a trivial 2-strand unknot.
    Zero,
    /// A loop at a new vertex next to the cups (`top = false`) or the caps.
    One { top: bool },
    /// Doubling the vertex at a level.
    Two { level: usize },
    /// `Xᵢ → XᵢXᵢ₊₁Xᵢ`.
    ThreeA { level: usize },
    /// `Xᵢ → XᵢXᵢ₋₁Xᵢ`.
    ThreeB { level: usize },
}

fn singular_gap(g: &SingularGraph, level: usize) -> Result<usize, MoveError> {
    g.levels()
        .get(level.wrapping_sub(1))
        .copied()
        .flatten()
        .ok_or(MoveError::NotSingular(level))
}

/// The partner diagram `S′` of a MOY relation.
pub fn moy_partner(g: &SingularGraph, kind: Moy) -> Result<SingularGraph, MoveError> {
    let mut levels = g.levels().to_vec();
    let n = g.n_pairs();
    Ok(match kind {
        Moy::Zero => SingularGraph::new(n + 1, levels),
        Moy::One { top } => {
            let mut shifted: Vec<Option<usize>> = levels.iter().map(|l| l.map(|p| p + 2)).collect();
            if top {
                shifted.push(Some(2));
            } else {
                shifted.insert(0, Some(2));
            }
            SingularGraph::new(n + 1, shifted)
        }
        Moy::Two { level } => {
            let p = singular_gap(g, level)?;
            levels.insert(level, Some(p));
            SingularGraph::new(n, levels)
        }
        Moy::ThreeA { level } => {
            let p = singular_gap(g, level)?;
            if p + 1 >= g.width() {
                return Err(MoveError::BadSite { level, reason: "no strand to the right" });
            }
            levels.splice(level - 1..level, [Some(p), Some(p + 1), Some(p)]);
            SingularGraph::new(n, levels)
        }
        Moy::ThreeB { level } => {
            let p = singular_gap(g, level)?;
            if p < 2 {
                return Err(MoveError::BadSite { level, reason: "no strand to the left" });
            }
            levels.splice(level - 1..level, [Some(p), Some(p - 1), Some(p)]);
            SingularGraph::new(n, levels)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimsComparison {
    pub before: Dims<i64>,
    pub after: Dims<i64>,
    pub expected: Dims<i64>,
}

impl DimsComparison {
    pub fn passed(&self) -> bool {
        self.after == self.expected
    }
}

fn vertex_dims(g: &SingularGraph, margin: i64) -> Result<Dims<i64>, HomologyError> {
    Ok(resolution_homology(&Resolution::new(g.clone()), margin)?.dims)
}

/// MOY 0 and II tensor with `𝒜{1}`; MOY I and III preserve dimensions.
pub fn moy_check(g: &SingularGraph, kind: Moy, margin: i64) -> Result<DimsComparison, MoveError> {
    let partner = moy_partner(g, kind)?;
    let before = vertex_dims(g, margin)?;
    let after = vertex_dims(&partner, margin)?;
    let expected = match kind {
        Moy::Zero | Moy::Two { .. } => convolve(&before, &frobenius(1)),
        _ => before.clone(),
    };
    Ok(DimsComparison { before, after, expected })
}

/// Plat moves that preserve the link type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlatMove {
    /// Stabilize: a new pair on the left joined by `σ₂^±` above the cups.
    R1 { positive: bool },
    /// Insert `σ σ⁻¹` before position `at`.
    R2 { at: usize, letter: i64 },
    /// Replace `σᵢσⱼσᵢ` at `at` by `σⱼσᵢσⱼ`.
    R3 { at: usize },
    /// `σ_{2i−1}^±` just under cap `i` (1-based).
    TwistTop { pair: usize, positive: bool },
    /// `σ_{2i−1}^±` just over cup `i`.
    TwistBottom { pair: usize, positive: bool },
    /// `σ_{2i}σ_{2i−1}σ_{2i+1}σ_{2i}` just under caps `i`, `i+1`.
    CapSwap { pair: usize, positive: bool },
    /// The same word just over cups `i`, `i+1`.
    CupSwap { pair: usize, positive: bool },
}

fn sign(positive: bool) -> i64 {
    if positive {
        1
    } else {
        -1
    }
}

pub fn apply_move(w: &PlatWord, mv: PlatMove) -> Result<PlatWord, MoveError> {
    let mut letters = w.letters();
    let mut n = w.n_pairs();
    let bad = |reason| MoveError::BadSite { level: 0, reason };
    match mv {
        PlatMove::R1 { positive } => {
            letters = letters.iter().map(|&l| l + 2 * l.signum()).collect();
            letters.insert(0, 2 * sign(positive));
            n += 1;
        }
        PlatMove::R2 { at, letter } => {
            if at > letters.len() {
                return Err(bad("position past the end"));
            }
            letters.splice(at..at, [letter, -letter]);
        }
        PlatMove::R3 { at } => {
            let s = letters.get(at..at + 3).ok_or(bad("needs three letters"))?.to_vec();
            if s[0] != s[2] || s[0].signum() != s[1].signum() || (s[0].abs() - s[1].abs()).abs() != 1 {
                return Err(bad("not a braid relation triple"));
            }
            letters.splice(at..at + 3, [s[1], s[0], s[1]]);
        }
        PlatMove::TwistTop { pair, positive } => {
            if pair == 0 || pair > n {
                return Err(bad("no such cap"));
            }
            letters.push(sign(positive) * (2 * pair as i64 - 1));
        }
        PlatMove::TwistBottom { pair, positive } => {
            if pair == 0 || pair > n {
                return Err(bad("no such cup"));
            }
            letters.insert(0, sign(positive) * (2 * pair as i64 - 1));
        }
        PlatMove::CapSwap { pair, positive } | PlatMove::CupSwap { pair, positive } => {
            if pair == 0 || pair >= n {
                return Err(bad("needs two adjacent pairs"));
            }
            let i = pair as i64;
            let s = sign(positive);
            let swap = [2 * i * s, (2 * i - 1) * s, (2 * i + 1) * s, 2 * i * s];
            if matches!(mv, PlatMove::CapSwap { .. }) {
                letters.extend(swap);
            } else {
                letters.splice(0..0, swap);
            }
        }
    }
    Ok(PlatWord::from_signed(n, &letters)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub before: PlatWord,
    pub after: PlatWord,
    pub before_dims: Dims<i64>,
    pub after_dims: Dims<i64>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.before_dims == self.after_dims
    }
}

pub fn invariance_pair(a: &PlatWord, b: &PlatWord, margin: i64) -> Result<InvarianceReport, MoveError> {
    Ok(InvarianceReport {
        before: a.clone(),
        after: b.clone(),
        before_dims: total_homology(a, margin)?,
        after_dims: total_homology(b, margin)?,
    })
}

pub fn invariance_check(w: &PlatWord, mv: PlatMove, margin: i64) -> Result<InvarianceReport, MoveError> {
    invariance_pair(w, &apply_move(w, mv)?, margin)
}

/// `H₁₊₁(S)` against `⊕_Z H₁^±(b(S − Z)){T₁ − T₂ + w}`, by quantum grading.
pub fn composition_product_check(g: &SingularGraph, margin: i64) -> Result<DimsComparison, MoveError> {
    let r = Resolution::new(g.clone());
    let before = resolution_homology(&r, margin)?.dims;
    let mut expected = Dims::new();
    for (z, gr) in r.cycles.iter().zip(&r.grading) {
        let shift = gr.t1 - gr.t2 + gr.w;
        let mut c = Sl1Complex::new(Sl1Graph::complement(g, z));
        for ((qq, _), d) in sl1_pm_homology(&mut c, margin)? {
            *expected.entry(qq + shift).or_insert(0) += d;
        }
    }
    Ok(DimsComparison { after: before.clone(), before, expected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str, bits: &[bool]) -> SingularGraph {
        PlatWord::parse(s).unwrap().resolve(bits).unwrap()
    }

    #[test]
    fn moy_zero_on_trivial() {
        let r = moy_check(&g("n=1; word=[]", &[]), Moy::Zero, 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn moy_partners_have_expected_shape() {
        let s = g("n=2; word=[+2]", &[true]);
        assert_eq!(moy_partner(&s, Moy::Two { level: 1 }).unwrap().levels(), &[Some(2), Some(2)]);
        assert_eq!(moy_partner(&s, Moy::ThreeA { level: 1 }).unwrap().levels(), &[Some(2), Some(3), Some(2)]);
        assert_eq!(moy_partner(&s, Moy::ThreeB { level: 1 }).unwrap().levels(), &[Some(2), Some(1), Some(2)]);
        assert_eq!(moy_partner(&s, Moy::One { top: false }).unwrap().levels(), &[Some(2), Some(4)]);
        assert!(moy_partner(&s, Moy::Two { level: 2 }).is_err());
    }

    #[test]
    fn plat_moves_build_words() {
        let w = PlatWord::parse("n=2; word=[+2,+2,+2]").unwrap();
        let r3 = PlatWord::parse("n=2; word=[+1,+2,+1]").unwrap();
        assert_eq!(apply_move(&r3, PlatMove::R3 { at: 0 }).unwrap().letters(), vec![2, 1, 2]);
        assert_eq!(apply_move(&w, PlatMove::R1 { positive: true }).unwrap().to_string(), "n=3; word=[+2,+4,+4,+4]");
        assert_eq!(apply_move(&w, PlatMove::CapSwap { pair: 1, positive: true }).unwrap().letters(), vec![2, 2, 2, 2, 1, 3, 2]);
        assert!(apply_move(&w, PlatMove::R3 { at: 0 }).is_err());
    }

    #[test]
    fn composition_product_on_small_resolutions() {
        for (w, bits) in [("n=1; word=[]", vec![]), ("n=1; word=[+1]", vec![true])] {
            let r = composition_product_check(&g(w, &bits), 4).unwrap();
            assert!(r.passed(), "{w}: {r:?}");
        }
    }
}
