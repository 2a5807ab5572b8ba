//! The acceptance corpus. Each check carries the number of the criterion it
//! belongs to; the tables hold the homology of every corpus word.

use std::collections::BTreeMap;

use plathom::diagram::PlatWord;
use plathom::homology::moves::{apply_move, PlatMove};
use plathom::homology::{edge_identity_report, Cube, Dims};
use plathom::khovanov::kh_homology;

use crate::commands::{
    check_algebra, commutativity_check, moy_checks, resolution_checks, sl1_graph_checks, sl1_unlink, Output, Params,
};
use crate::error::CliError;
use crate::report::{Check, Table};

pub const UNKNOT: &str = "n=1; word=[]";
pub const TREFOIL: &str = "n=2; word=[+2,+2,+2]";

fn word(s: &str) -> PlatWord {
    PlatWord::parse(s).expect("corpus word")
}

/// Move-related pairs: the base word and the move applied to it.
pub fn move_pairs() -> Vec<(PlatWord, PlatMove)> {
    let unknot = word(UNKNOT);
    let trefoil = word(TREFOIL);
    vec![
        (unknot.clone(), PlatMove::R1 { positive: true }),
        (unknot.clone(), PlatMove::R1 { positive: false }),
        (unknot.clone(), PlatMove::TwistTop { pair: 1, positive: true }),
        (unknot, PlatMove::TwistBottom { pair: 1, positive: false }),
        (trefoil.clone(), PlatMove::R2 { at: 2, letter: -2 }),
        (trefoil, PlatMove::TwistTop { pair: 2, positive: true }),
        (word("n=2; word=[+1,+2,+1]"), PlatMove::R3 { at: 0 }),
        (word("n=2; word=[+2]"), PlatMove::CapSwap { pair: 1, positive: true }),
        (word("n=2; word=[+2]"), PlatMove::CupSwap { pair: 1, positive: false }),
    ]
}

/// Resolutions checked for vertex homology, `U`-action and commutativity:
/// all of the trefoil's, the unknot diagrams', and one-vertex graphs on 2 and
/// 4 strands.
pub fn resolution_corpus() -> Vec<(PlatWord, Vec<bool>)> {
    let mut out = vec![(word(UNKNOT), vec![])];
    for s in ["n=1; word=[+1]", "n=1; word=[-1]", "n=2; word=[+2]"] {
        out.push((word(s), vec![false]));
        out.push((word(s), vec![true]));
    }
    let t = word(TREFOIL);
    for u in 0..8usize {
        out.push((t.clone(), (0..3).map(|i| u >> i & 1 == 1).collect()));
    }
    out
}

fn label(w: &PlatWord, bits: &[bool]) -> String {
    format!("{w} at {}", crate::commands::bits_string(bits))
}

struct WordResults {
    d0: bool,
    total_d2: bool,
    e2: Dims<(i64, i64)>,
    total: Dims<i64>,
}

fn word_results(w: &PlatWord, p: Params) -> Result<WordResults, CliError> {
    log::info!("cube of {w}");
    let cube = Cube::new(w, p.margin)?;
    Ok(WordResults {
        d0: cube.total_complex(false).d2_failure().is_none(),
        total_d2: cube.total_complex(true).d2_failure().is_none(),
        e2: cube.e2_page()?,
        total: cube.total_homology()?,
    })
}

fn verdict(ok: bool, witness: impl FnOnce() -> String) -> (bool, Vec<String>) {
    (ok, if ok { vec![] } else { vec![witness()] })
}

pub fn run(p: Params) -> Result<Output, CliError> {
    let mut tables = Vec::new();
    let mut checks = Vec::new();

    // Every word in the corpus, computed once.
    let mut words: Vec<PlatWord> = vec![word(UNKNOT), word("n=1; word=[+1]"), word("n=1; word=[-1]")];
    for (w, m) in move_pairs() {
        let b = apply_move(&w, m)?;
        for x in [w, b] {
            if !words.contains(&x) {
                words.push(x);
            }
        }
    }
    let mut results = BTreeMap::new();
    for w in &words {
        results.insert(w.to_string(), word_results(w, p)?);
    }

    for w in &words {
        let r = &results[&w.to_string()];
        tables.push(Table::single(format!("total homology {w}"), "delta", &r.total));
        checks.push(Check::new(format!("d0² = 0 {w}"), r.d0, 1, vec![]).criterion(1));
        checks.push(Check::new(format!("(d0 + d1)² = 0 {w}"), r.total_d2, 1, vec![]).criterion(1));
        let kh = kh_homology(w).bigraded;
        let (ok, wit) = verdict(r.e2 == kh, || format!("E2 {:?}, Kh {kh:?}", r.e2));
        checks.push(Check::new(format!("E2 equals Khovanov {w}"), ok, 1, wit).criterion(3));
    }
    let trefoil = &results[TREFOIL];
    tables.push(Table::double(format!("E2 page {TREFOIL}"), ["h", "q"], &trefoil.e2));
    let classes: usize = trefoil.e2.values().sum();
    let (ok, wit) = verdict(classes == 4, || format!("{classes} classes"));
    checks.push(Check::new("trefoil E2 has 4 classes", ok, 1, wit).criterion(3));

    log::info!("resolutions");
    for (w, bits) in resolution_corpus() {
        let g = w.resolve(&bits)?;
        let l = label(&w, &bits);
        let (_, rc) = resolution_checks(&g, &l, p)?;
        let mut rc = rc.into_iter();
        checks.push(rc.next().expect("module check").criterion(2));
        checks.push(rc.next().expect("u-action check").criterion(5));
        checks.push(commutativity_check(&g, &l));
    }

    log::info!("edge identities");
    for w in &words {
        let r = edge_identity_report(w, p.margin)?;
        checks.push(Check::new(format!("d⁺d⁻ and d⁻d⁺ are U actions {w}"), r.passed(), r.checks, r.failures).criterion(4));
    }

    log::info!("MOY relations");
    for (s, bits) in [(UNKNOT, vec![]), ("n=1; word=[+1]", vec![true]), ("n=2; word=[+2]", vec![true]), ("n=2; word=[+1]", vec![true])] {
        let w = word(s);
        checks.extend(moy_checks(&w.resolve(&bits)?, &label(&w, &bits), p)?.into_iter().map(|c| c.criterion(6)));
    }

    log::info!("invariance");
    let unknot = &results[UNKNOT].total;
    let (ok, wit) = verdict(*unknot == Dims::from([(-1, 1), (1, 1)]), || format!("{unknot:?}"));
    checks.push(Check::new("unknot total homology is δ = ±1", ok, 1, wit).criterion(7));
    for (w, m) in move_pairs() {
        let b = apply_move(&w, m)?;
        let (x, y) = (&results[&w.to_string()].total, &results[&b.to_string()].total);
        let (ok, wit) = verdict(x == y, || format!("{x:?} vs {y:?}"));
        checks.push(Check::new(format!("{m:?}: {w} ~ {b}"), ok, 1, wit).criterion(7));
    }

    log::info!("sl1");
    for k in 1..=3 {
        let (t, c) = sl1_unlink(k, p)?;
        tables.push(t);
        checks.push(c.criterion(8));
    }
    for (s, bits) in [(UNKNOT, vec![]), ("n=1; word=[+1]", vec![true]), ("n=2; word=[+2]", vec![true])] {
        let w = word(s);
        let (t, cs) = sl1_graph_checks(&w.resolve(&bits)?, &label(&w, &bits), p)?;
        tables.push(t);
        checks.extend(cs.into_iter().map(|c| c.criterion(8)));
    }

    log::info!("algebra");
    let (_, ac) = check_algebra(&[1, 2, 3], 2, p)?;
    checks.extend(ac.into_iter().map(|c| c.criterion(9)));

    Ok((tables, checks))
}
