//! The verbs. Each returns the tables and checks of its result; `main` adds
//! the metadata, caching and rendering.

use std::collections::BTreeMap;

use plathom::chain::Resolution;
use plathom::cycles::commutativity_failures;
use plathom::diagram::{PlatWord, Sign, SingularGraph};
use plathom::homology::moves::{apply_move, invariance_pair, moy_check, MoveError, Moy, PlatMove};
use plathom::homology::{
    d2_report, e2_page, module_report, resolution_homology, total_homology, u_action_identities, Dims,
};
use plathom::khovanov::kh_homology;
use plathom::sl1::{sl1_pm_homology, Sl1Complex, Sl1Graph};
use plathom::strands::{associativity, iso_check, relation_suite, Algebra};

use crate::error::CliError;
use crate::report::{Check, Table};

pub type Output = (Vec<Table>, Vec<Check>);

#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub margin: i64,
    pub degree_bound: usize,
}

/// Parse a diagram given inline or as the path of a file holding one.
pub fn read_word(arg: &str) -> Result<PlatWord, CliError> {
    let text = if arg.trim_start().starts_with("n=") {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    Ok(PlatWord::parse(text.trim())?)
}

/// `"101"` → one bit per crossing, in word order.
pub fn parse_bits(w: &PlatWord, bits: &str) -> Result<Vec<bool>, CliError> {
    let out: Vec<bool> = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::Usage(format!("bits must be 0 or 1, got {c:?}"))),
        })
        .collect::<Result<_, _>>()?;
    if out.len() != w.len() {
        return Err(CliError::Usage(format!("{} bits given for {} crossings", out.len(), w.len())));
    }
    Ok(out)
}

pub fn bits_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Every crossing singularized.
pub fn all_singular(w: &PlatWord) -> Vec<bool> {
    w.crossings().iter().map(|c| c.sign == Sign::Positive).collect()
}

/// The requested resolution, or all of them.
fn resolutions(w: &PlatWord, bits: Option<&str>) -> Result<Vec<Vec<bool>>, CliError> {
    match bits {
        Some(b) => Ok(vec![parse_bits(w, b)?]),
        None => Ok((0..1usize << w.len()).map(|u| (0..w.len()).map(|i| u >> i & 1 == 1).collect()).collect()),
    }
}

fn failures(rs: Vec<String>) -> (bool, Vec<String>) {
    (rs.is_empty(), rs)
}

pub fn total(w: &PlatWord, p: Params) -> Result<Output, CliError> {
    Ok((vec![Table::single("total homology", "delta", &total_homology(w, p.margin)?)], vec![]))
}

pub fn e2(w: &PlatWord, p: Params) -> Result<Output, CliError> {
    Ok((vec![Table::double("E2 page", ["h", "q"], &e2_page(w, p.margin)?)], vec![]))
}

pub fn kh(w: &PlatWord) -> Result<Output, CliError> {
    let k = kh_homology(w);
    Ok((
        vec![Table::double("Khovanov", ["h", "q"], &k.bigraded), Table::single("Khovanov by delta", "delta", &k.delta)],
        vec![],
    ))
}

/// `E₂ − Kh` at every bigrading where either is nonzero.
pub fn compare_dims(e2: &Dims<(i64, i64)>, kh: &Dims<(i64, i64)>) -> BTreeMap<(i64, i64), i64> {
    let mut diff = BTreeMap::new();
    for k in e2.keys().chain(kh.keys()) {
        let d = *e2.get(k).unwrap_or(&0) as i64 - *kh.get(k).unwrap_or(&0) as i64;
        diff.insert(*k, d);
    }
    diff
}

pub fn compare(w: &PlatWord, p: Params) -> Result<Output, CliError> {
    let e = e2_page(w, p.margin)?;
    let k = kh_homology(w).bigraded;
    let diff = compare_dims(&e, &k);
    let witnesses: Vec<String> =
        diff.iter().filter(|(_, &d)| d != 0).map(|((h, q), d)| format!("h={h} q={q}: E2 − Kh = {d}")).collect();
    let table = Table {
        name: "E2 − Khovanov".into(),
        axes: vec!["h".into(), "q".into()],
        entries: diff.iter().map(|(&(h, q), &d)| crate::report::Entry { at: vec![h, q], dim: d }).collect(),
    };
    let (ok, witnesses) = failures(witnesses);
    Ok((vec![table], vec![Check::new("E2 equals Khovanov", ok, diff.len(), witnesses)]))
}

/// Vertex homology, module structure and `U`-action identities of one resolution.
pub fn resolution_checks(g: &SingularGraph, label: &str, p: Params) -> Result<(Dims<i64>, Vec<Check>), CliError> {
    let r = Resolution::new(g.clone());
    let vh = resolution_homology(&r, p.margin)?;
    let m = module_report(&r, &vh);
    let u = u_action_identities(&r, &vh);
    let mw = if m.passed() {
        vec![]
    } else {
        vec![format!("k={} dim={} binomial={} free={}", m.k, m.total_dim, m.binomial, m.free)]
    };
    Ok((
        vh.dims.clone(),
        vec![
            Check::new(format!("free rank-one module {label}"), m.passed(), 1, mw),
            Check::new(format!("U-action identities {label}"), u.passed(), u.checks, u.failures),
        ],
    ))
}

pub fn resolution(w: &PlatWord, bits: &str, p: Params) -> Result<Output, CliError> {
    let b = parse_bits(w, bits)?;
    let g = w.resolve(&b)?;
    let (dims, checks) = resolution_checks(&g, &format!("at {bits}"), p)?;
    Ok((vec![Table::single(format!("H(S) at {bits}"), "q", &dims)], checks))
}

pub fn check_d2(w: &PlatWord, p: Params) -> Result<Output, CliError> {
    let r = d2_report(w, p.margin)?;
    Ok((
        vec![],
        vec![
            Check::new("d0² = 0", r.d0, 1, vec![]),
            Check::new("(d0 + d1)² = 0", r.total, 1, vec![]),
        ],
    ))
}

/// Every MOY relation that fits the resolution.
pub fn moy_checks(g: &SingularGraph, label: &str, p: Params) -> Result<Vec<Check>, CliError> {
    let mut kinds = vec![Moy::Zero, Moy::One { top: false }, Moy::One { top: true }];
    for (i, l) in g.levels().iter().enumerate() {
        if l.is_some() {
            kinds.extend([Moy::Two { level: i + 1 }, Moy::ThreeA { level: i + 1 }, Moy::ThreeB { level: i + 1 }]);
        }
    }
    let mut out = Vec::new();
    for kind in kinds {
        match moy_check(g, kind, p.margin) {
            Ok(c) => {
                let w = if c.passed() { vec![] } else { vec![format!("got {:?}, expected {:?}", c.after, c.expected)] };
                out.push(Check::new(format!("MOY {kind:?} {label}"), c.passed(), 1, w));
            }
            Err(MoveError::BadSite { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

pub fn check_moy(w: &PlatWord, bits: Option<&str>, p: Params) -> Result<Output, CliError> {
    let b = match bits {
        Some(s) => parse_bits(w, s)?,
        None => all_singular(w),
    };
    Ok((vec![], moy_checks(&w.resolve(&b)?, &format!("at {}", bits_string(&b)), p)?))
}

/// `H₁₋₁` of two presentations, as one check plus both tables.
pub fn invariance_output(a: &PlatWord, b: &PlatWord, p: Params) -> Result<Output, CliError> {
    let r = invariance_pair(a, b, p.margin)?;
    let w = if r.passed() { vec![] } else { vec![format!("{:?} vs {:?}", r.before_dims, r.after_dims)] };
    Ok((
        vec![Table::single(format!("total homology {a}"), "delta", &r.before_dims), Table::single(format!("total homology {b}"), "delta", &r.after_dims)],
        vec![Check::new(format!("invariance {a} ~ {b}"), r.passed(), 1, w)],
    ))
}

pub fn check_invariance(w: &PlatWord, moves: &[PlatMove], other: Option<&PlatWord>, p: Params) -> Result<Output, CliError> {
    let mut out: Output = (vec![], vec![]);
    let partners: Vec<PlatWord> = match other {
        Some(o) => vec![o.clone()],
        None => moves.iter().map(|&m| apply_move(w, m)).collect::<Result<_, _>>()?,
    };
    for b in partners {
        let (t, c) = invariance_output(w, &b, p)?;
        out.0.extend(t);
        out.1.extend(c);
    }
    Ok(out)
}

pub fn check_algebra(ns: &[usize], associative_up_to: usize, p: Params) -> Result<Output, CliError> {
    let d = p.degree_bound;
    let mut checks = Vec::new();
    let witness = |r: &plathom::strands::SuiteReport| -> Vec<String> {
        r.violations.iter().map(|v| format!("{}: {}", v.relation, v.witness)).collect()
    };
    for &n in ns {
        for (name, alg) in [("A", Algebra::a(n)), ("A-quotient", Algebra::a_quotient(n))] {
            let r = relation_suite(&alg, d);
            checks.push(Check::new(format!("relations {name}_{n} to degree {d}"), r.passed(), r.checks, witness(&r)));
            if n <= associative_up_to {
                let r = associativity(&alg, d);
                checks.push(Check::new(format!("associativity {name}_{n} to degree {d}"), r.passed(), r.checks, witness(&r)));
            }
        }
        if n <= associative_up_to {
            let r = iso_check(n, d);
            let mut w = witness(&r.relations);
            w.extend(witness(&r.multiplicative));
            if !r.u1_killed {
                w.push("u1 survives".into());
            }
            if r.gap_dims.0 != r.gap_dims.1 {
                w.push(format!("gap dims {:?} vs {:?}", r.gap_dims.0, r.gap_dims.1));
            }
            let count = r.relations.checks + r.multiplicative.checks + 2;
            checks.push(Check::new(format!("h isomorphism n={n} to degree {d}"), r.passed(), count, w));
        }
    }
    Ok((vec![], checks))
}

/// `H₁^±` of the `k`-component unlink: one class at `(0, −2k)`.
pub fn sl1_unlink(k: usize, p: Params) -> Result<(Table, Check), CliError> {
    let mut c = Sl1Complex::new(Sl1Graph::unlink(k));
    let h = sl1_pm_homology(&mut c, p.margin).map_err(|e| CliError::Window(e.to_string()))?;
    let expected = Dims::from([((0, -2 * k as i64), 1)]);
    let w = if h == expected { vec![] } else { vec![format!("got {h:?}")] };
    Ok((
        Table::double(format!("sl1 unlink k={k}"), ["q", "h"], &h),
        Check::new(format!("sl1 unlink k={k}"), h == expected, 1, w),
    ))
}

/// Braid closure homology (acyclic with a four-valent vertex) and the
/// composition product comparison.
pub fn sl1_graph_checks(g: &SingularGraph, label: &str, p: Params) -> Result<(Table, Vec<Check>), CliError> {
    let mut c = Sl1Complex::new(Sl1Graph::braid_closure(g));
    let h = sl1_pm_homology(&mut c, p.margin).map_err(|e| CliError::Window(e.to_string()))?;
    let mut checks = Vec::new();
    if g.n_four_valent() > 0 {
        let w = if h.is_empty() { vec![] } else { vec![format!("got {h:?}")] };
        checks.push(Check::new(format!("sl1 closure acyclic {label}"), h.is_empty(), 1, w));
    }
    let cp = plathom::homology::moves::composition_product_check(g, p.margin)?;
    let w = if cp.passed() { vec![] } else { vec![format!("H(S) {:?}, product {:?}", cp.after, cp.expected)] };
    checks.push(Check::new(format!("composition product {label}"), cp.passed(), 1, w));
    Ok((Table::double(format!("sl1 closure {label}"), ["q", "h"], &h), checks))
}

pub fn check_sl1(word: Option<&PlatWord>, bits: Option<&str>, unlink: Option<usize>, p: Params) -> Result<Output, CliError> {
    let mut out: Output = (vec![], vec![]);
    if let Some(w) = word {
        let b = match bits {
            Some(s) => parse_bits(w, s)?,
            None => all_singular(w),
        };
        let (t, c) = sl1_graph_checks(&w.resolve(&b)?, &format!("{w} at {}", bits_string(&b)), p)?;
        out.0.push(t);
        out.1.extend(c);
    }
    let ks: Vec<usize> = match (unlink, word) {
        (Some(k), _) => vec![k],
        (None, None) => vec![1, 2, 3],
        (None, Some(_)) => vec![],
    };
    for k in ks {
        let (t, c) = sl1_unlink(k, p)?;
        out.0.push(t);
        out.1.push(c);
    }
    Ok(out)
}

pub fn check_u_action(w: &PlatWord, bits: Option<&str>, p: Params) -> Result<Output, CliError> {
    let mut checks = Vec::new();
    for b in resolutions(w, bits)? {
        let r = Resolution::new(w.resolve(&b)?);
        let vh = resolution_homology(&r, p.margin)?;
        let u = u_action_identities(&r, &vh);
        checks.push(Check::new(format!("U-action identities at {}", bits_string(&b)), u.passed(), u.checks, u.failures));
    }
    Ok((vec![], checks))
}

pub fn commutativity_check(g: &SingularGraph, label: &str) -> Check {
    let (count, bad) = commutativity_failures(g);
    let w = bad.iter().map(|(z, i, j)| format!("U{} U{} on {:?}", i + 1, j + 1, z.edges(g))).collect::<Vec<_>>();
    Check::new(format!("edge actions commute {label}"), w.is_empty(), count, w)
}

pub fn check_commutativity(w: &PlatWord, bits: Option<&str>) -> Result<Output, CliError> {
    let mut checks = Vec::new();
    for b in resolutions(w, bits)? {
        checks.push(commutativity_check(&w.resolve(&b)?, &format!("at {}", bits_string(&b))));
    }
    Ok((vec![], checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Params = Params { margin: 4, degree_bound: 2 };

    #[test]
    fn words_and_bits() {
        let w = read_word("n=2; word=[+2,-1]").unwrap();
        assert_eq!(parse_bits(&w, "10").unwrap(), vec![true, false]);
        assert!(parse_bits(&w, "1").is_err());
        assert!(parse_bits(&w, "12").is_err());
        assert_eq!(all_singular(&w), vec![true, false]);
        assert!(matches!(read_word("/no/such/file"), Err(CliError::Io(_))));
        assert!(matches!(read_word("n=1; word=[+5]"), Err(CliError::Parse(_))));
    }

    #[test]
    fn unknot_total() {
        let (t, _) = total(&read_word("n=1; word=[]").unwrap(), P).unwrap();
        assert_eq!(t[0].entries.iter().map(|e| (e.at[0], e.dim)).collect::<Vec<_>>(), vec![(-1, 1), (1, 1)]);
    }

    #[test]
    fn compare_diff_is_signed() {
        let a = Dims::from([((0, 1), 2)]);
        let b = Dims::from([((0, 1), 1), ((1, 3), 1)]);
        assert_eq!(compare_dims(&a, &b), BTreeMap::from([((0, 1), 1), ((1, 3), -1)]));
    }
}
