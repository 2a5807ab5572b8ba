use std::collections::BTreeSet;

use num::{BigRational, Zero};
use proptest::prelude::*;

use plathom::cycles::{commutativity_failures, enumerate_cycles};
use plathom::diagram::{PlatWord, SingularGraph};
use plathom::linalg::{kernel, q, HomologyPresentation, SparseMatrix, SparseVec};
use plathom::strands::{Algebra, Element};

/// Row reduction over `BigRational`, written out here so the sparse code has
/// something independent to agree with.
fn oracle_rank(cols: &[Vec<i64>], rows: usize) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        (0..rows).map(|r| cols.iter().map(|c| BigRational::from_integer(c[r].into())).collect()).collect();
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in 0..cols.len() {
                    let t = &f * &a[rank][c];
                    a[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn sparse(cols: &[Vec<i64>], rows: usize) -> SparseMatrix {
    SparseMatrix {
        rows,
        cols: cols.iter().map(|c| SparseVec::from_terms(c.iter().enumerate().map(|(i, &x)| (i, q(x))))).collect(),
    }
}

fn matrix(max: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max, 0..=max).prop_flat_map(|(rows, ncols)| {
        // Small entries with many zeros, so ranks vary.
        let entry = prop_oneof![3 => Just(0i64), 2 => -3i64..=3];
        (Just(rows), prop::collection::vec(prop::collection::vec(entry, rows), ncols))
    })
}

/// Cycles by a transfer over bands: `n` tracks per band, one per cup and cap
/// pair, unchanged across smoothed levels, and at a vertex the two tracks at
/// its gap hold at most one path on each side.
fn oracle_cycles(g: &SingularGraph) -> BTreeSet<Vec<u64>> {
    let (n, width) = (g.n_pairs(), g.width());
    let pairs_ok = |x: u64| (0..n).all(|i| (x >> (2 * i) & 3).count_ones() == 1);
    let mut layer: BTreeSet<Vec<u64>> =
        (0..1u64 << width).filter(|&x| pairs_ok(x)).map(|x| vec![x]).collect();
    for l in g.levels() {
        let mut next = BTreeSet::new();
        for path in &layer {
            let below = *path.last().unwrap();
            let aboves: Vec<u64> = match *l {
                None => vec![below],
                Some(gap) => {
                    let mask = 3u64 << (gap - 1);
                    match (below & mask).count_ones() {
                        0 => vec![below],
                        1 => vec![(below & !mask) | 1 << (gap - 1), (below & !mask) | 1 << gap],
                        _ => vec![],
                    }
                }
            };
            for a in aboves {
                let mut p = path.clone();
                p.push(a);
                next.insert(p);
            }
        }
        layer = next;
    }
    layer.into_iter().filter(|p| pairs_ok(*p.last().unwrap())).collect()
}

fn resolved_word() -> impl Strategy<Value = (PlatWord, Vec<bool>)> {
    (1usize..=2).prop_flat_map(|n| {
        let letter = (1..2 * n as i64).prop_flat_map(|p| prop_oneof![Just(p), Just(-p)]);
        prop::collection::vec(letter, 0..=4).prop_flat_map(move |letters| {
            let w = PlatWord::from_signed(n, &letters).unwrap();
            let len = w.len();
            (Just(w), prop::collection::vec(any::<bool>(), len))
        })
    })
}

fn element(alg: &Algebra) -> impl Strategy<Value = Element> {
    let gens: Vec<Element> = {
        let n2 = 2 * alg.n();
        let mut g: Vec<Element> = (1..n2).flat_map(|i| [alg.r(i), alg.l(i)]).collect();
        g.extend((1..=n2).map(|i| alg.u(i)));
        g.extend(alg.states().into_iter().map(|s| alg.idempotent(s)));
        g
    };
    prop::collection::vec(prop::sample::select(gens), 1..=3).prop_map({
        let alg = alg.clone();
        move |fs| alg.product(&fs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_rank_matches_oracle((rows, cols) in matrix(7)) {
        let m = sparse(&cols, rows);
        prop_assert_eq!(m.rank(), oracle_rank(&cols, rows));
        let ker = kernel(&m);
        prop_assert_eq!(ker.len(), cols.len() - m.rank());
        for v in &ker {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn homology_of_three_term_complexes((rows, cols) in matrix(6), mix in prop::collection::vec(-2i64..=2, 0..36)) {
        // out: C → D, into: B → C built from kernel combinations so out∘into = 0.
        let out = sparse(&cols, rows);
        let ker = kernel(&out);
        let n_into = if ker.is_empty() { 0 } else { mix.len() / ker.len().max(1) }.min(4);
        let into_cols: Vec<SparseVec> = (0..n_into)
            .map(|j| ker.iter().enumerate().fold(SparseVec::new(), |acc, (i, k)| acc.axpy(&q(mix[j * ker.len() + i]), k)))
            .collect();
        let into = SparseMatrix { rows: cols.len(), cols: into_cols };
        prop_assert!(out.compose(&into).is_zero());
        let h = HomologyPresentation::compute(&into, &out);
        prop_assert_eq!(h.dim(), cols.len() - out.rank() - into.rank());
    }

    #[test]
    fn words_round_trip((w, _) in resolved_word()) {
        prop_assert_eq!(PlatWord::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn cycles_match_transfer_oracle((w, bits) in resolved_word()) {
        let g = w.resolve(&bits).unwrap();
        let found: BTreeSet<Vec<u64>> = enumerate_cycles(&g).into_iter().map(|z| z.occ).collect();
        prop_assert_eq!(found, oracle_cycles(&g));
    }

    #[test]
    fn edge_actions_commute((w, bits) in resolved_word()) {
        let g = w.resolve(&bits).unwrap();
        let (_, bad) = commutativity_failures(&g);
        prop_assert!(bad.is_empty(), "{} at {:?}: {:?}", w, bits, bad);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_forms_are_idempotent_and_multiplicative(
        (a, b) in (element(&Algebra::a_quotient(2)), element(&Algebra::a_quotient(2)))
    ) {
        let alg = Algebra::a_quotient(2);
        let na = alg.normal_form(&a);
        prop_assert_eq!(alg.normal_form(&na), na.clone());
        let nb = alg.normal_form(&b);
        prop_assert_eq!(alg.normal_form(&alg.multiply(&a, &b)), alg.normal_form(&alg.multiply(&na, &nb)));
    }

    #[test]
    fn strands_products_associate(
        (a, b, c) in (element(&Algebra::a(2)), element(&Algebra::a(2)), element(&Algebra::a(2)))
    ) {
        let alg = Algebra::a(2);
        let left = alg.multiply(&alg.multiply(&a, &b), &c);
        let right = alg.multiply(&a, &alg.multiply(&b, &c));
        prop_assert_eq!(left, right);
    }
}
