//! Strands algebras on `2n` positions.
//!
//! A basis element is a monomial in the `u` variables times a monotone
//! bijection between two `n`-element subsets of `[2n]`. Subsets are bitmasks,
//! bit `k` standing for position `k + 1`. Concatenation weights each gap by the
//! number of strands that cross it and come back.
//!
//! Three algebras share the machinery:
//! * `Aₙ`, positions are slots and gap `i` carries `uᵢ`;
//! * `𝒜ₙ`, the quotient of `Aₙ` by `RᵢRᵢ₋₁` and `Lᵢ₋₁Lᵢ`;
//! * `ℬ̄′(2n+1, n)`, positions are the midpoints `i + ½` of a local state, the
//!   gap between midpoints `i − ½` and `i + ½` is the point `i` carrying `uᵢ`,
//!   and `u₁ = 0`.
//!
//! Every defining relation kills a single basis term, so each ideal is spanned
//! by the basis terms it contains. A term `(m, S₁ → S₃)` lies in the ideal
//! generated by `(m_g, S_a → S_b)` exactly when `m_g` times the weight of the
//! path `S₁ → S_a → S_b → S₃` divides `m`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::chain::monomials;
use crate::cycles::Monomial;
use crate::linalg::{q, Q};

pub type State = u32;

/// Local states of `ℬ′(2n+1, n)`: bit `k` is the midpoint `k + 3/2`.
pub type LocalState = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrandsError {
    #[error("local state has {found} intervals, expected {expected}")]
    SizeMismatch { found: usize, expected: usize },
}

pub fn slots(s: State) -> Vec<usize> {
    (0..32).filter(|k| s >> k & 1 == 1).map(|k| k + 1).collect()
}

pub fn state(slots: &[usize]) -> State {
    slots.iter().fold(0, |s, &i| s | 1 << (i - 1))
}

fn has(s: State, i: usize) -> bool {
    i >= 1 && i <= 32 && s >> (i - 1) & 1 == 1
}

/// All `n`-element subsets of `[2n]`.
pub fn states(n: usize) -> Vec<State> {
    (0..1u32 << (2 * n)).filter(|s| s.count_ones() as usize == n).collect()
}

/// `S_𝐱 = {i | i + ½ ∉ 𝐱}`: the complement, position by position.
pub fn state_map(x: LocalState, n: usize) -> Result<State, StrandsError> {
    let found = x.count_ones() as usize;
    if found != n {
        return Err(StrandsError::SizeMismatch { found, expected: n });
    }
    Ok(!x & ((1 << (2 * n)) - 1))
}

/// The order-preserving bijection between two subsets of equal size.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bijection {
    pub source: State,
    pub target: State,
}

impl Bijection {
    pub fn new(source: State, target: State) -> Self {
        debug_assert_eq!(source.count_ones(), target.count_ones());
        Bijection { source, target }
    }

    pub fn idempotent(s: State) -> Self {
        Bijection { source: s, target: s }
    }

    pub fn is_idempotent(&self) -> bool {
        self.source == self.target
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        slots(self.source).into_iter().zip(slots(self.target))
    }

    pub fn then(&self, next: &Bijection) -> Option<Bijection> {
        (self.target == next.source).then(|| Bijection::new(self.source, next.target))
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, s: State) -> fmt::Result {
    let parts: Vec<String> = slots(s).iter().map(|i| i.to_string()).collect();
    write!(f, "{{{}}}", parts.join(","))
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_set(f, self.source)?;
        write!(f, "→")?;
        fmt_set(f, self.target)
    }
}

/// Gap weights of a path of states, gap `g` at exponent index `g − 1 + offset`.
///
/// A strand visiting positions `p₀, …, p_k` crosses gap `g` some number of
/// times; everything beyond its net crossing comes in there-and-back pairs.
pub fn path_weight(n_vars: usize, offset: usize, path: &[State]) -> Monomial {
    let mut w = vec![0u8; n_vars];
    let positions: Vec<Vec<usize>> = path.iter().map(|&s| slots(s)).collect();
    let strands = positions.first().map_or(0, |p| p.len());
    for t in 0..strands {
        let traj: Vec<usize> = positions.iter().map(|p| p[t]).collect();
        let mut count: BTreeMap<usize, i32> = BTreeMap::new();
        for step in traj.windows(2) {
            for g in step[0].min(step[1])..step[0].max(step[1]) {
                *count.entry(g).or_insert(0) += 1;
            }
        }
        let (a, b) = (traj[0], traj[traj.len() - 1]);
        for g in a.min(b)..a.max(b) {
            *count.entry(g).or_insert(0) -= 1;
        }
        for (g, c) in count {
            debug_assert!(c >= 0 && c % 2 == 0);
            if c > 0 {
                w[g - 1 + offset] += (c / 2) as u8;
            }
        }
    }
    Monomial(w)
}

/// The concatenation weight `∏ uᵢ^{αᵢ}` of `P₁P₂` in `Aₙ`.
pub fn alpha(n: usize, p1: &Bijection, p2: &Bijection) -> Monomial {
    path_weight(2 * n, 0, &[p1.source, p1.target, p2.target])
}

/// How `uᵢ` dies next to crowded states (`{i, i+1} ⊆ S`) in `Aₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vanishing {
    /// When the source or the target of a term is crowded at `i`.
    Endpoints,
    /// As `Endpoints`, and also when a product passes through a crowded state.
    Visited,
    /// The two-sided ideal generated by `uᵢ ι_S` for crowded `S`.
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    A,
    AQuotient,
    BBar,
}

/// Finite rational combination of basis terms.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<(Bijection, Monomial), Q>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn term(p: Bijection, m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(p, m, Q::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Bijection, &Monomial, &Q)> {
        self.terms.iter().map(|((p, m), c)| (p, m, c))
    }

    pub fn add_term(&mut self, p: Bijection, m: Monomial, c: Q) {
        let key = (p, m);
        let v = self.terms.remove(&key).unwrap_or_else(Q::zero) + c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (p, m, c) in other.terms() {
            out.add_term(*p, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Element {
        let mut out = Element::zero();
        for (p, m, x) in self.terms() {
            out.add_term(*p, m.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&q(-1)))
    }
}

fn fmt_mono(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => write!(f, "u{}", i + 1)?,
            _ => write!(f, "u{}^{}", i + 1, e)?,
        }
    }
    Ok(())
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (p, m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·")?;
            fmt_mono(f, m)?;
            write!(f, "{p:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Algebra {
    n: usize,
    kind: Kind,
    rule: Vanishing,
    /// Single-term generators of the ideal that is divided out.
    killed: Vec<(Monomial, Bijection)>,
}

impl Algebra {
    pub fn a(n: usize) -> Self {
        Self::build(n, Kind::A, Vanishing::Ideal)
    }

    pub fn a_quotient(n: usize) -> Self {
        Self::build(n, Kind::AQuotient, Vanishing::Ideal)
    }

    /// `Aₙ` with an alternative vanishing rule, for comparison.
    pub fn with_rule(n: usize, rule: Vanishing) -> Self {
        Self::build(n, Kind::A, rule)
    }

    pub fn b_bar(n: usize) -> Self {
        Self::build(n, Kind::BBar, Vanishing::Ideal)
    }

    fn build(n: usize, kind: Kind, rule: Vanishing) -> Self {
        assert!(n >= 1 && n <= 8);
        let mut alg = Algebra { n, kind, rule, killed: Vec::new() };
        alg.killed = alg.ideal_generators();
        alg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n_vars(&self) -> usize {
        match self.kind {
            Kind::BBar => 2 * self.n + 1,
            _ => 2 * self.n,
        }
    }

    fn offset(&self) -> usize {
        usize::from(self.kind == Kind::BBar)
    }

    pub fn states(&self) -> Vec<State> {
        states(self.n)
    }

    fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.n_vars(), i - 1)
    }

    fn moved(s: State, from: usize, to: usize) -> State {
        s & !(1 << (from - 1)) | 1 << (to - 1)
    }

    fn ideal_generators(&self) -> Vec<(Monomial, Bijection)> {
        let n2 = 2 * self.n;
        let mut out = Vec::new();
        let one = Monomial::one(self.n_vars());
        for s in self.states() {
            let id = Bijection::idempotent(s);
            match self.kind {
                Kind::A | Kind::AQuotient => {
                    for i in 1..n2 {
                        if has(s, i) && has(s, i + 1) {
                            out.push((self.var(i), id));
                        }
                    }
                }
                Kind::BBar => {
                    // Point i sits between midpoints i − ½ and i + ½, i.e.
                    // positions i − 1 and i.
                    for i in 1..=n2 + 1 {
                        if i == 1 || (!has(s, i - 1) && !has(s, i)) {
                            out.push((self.var(i), id));
                        }
                    }
                }
            }
            if self.kind == Kind::A {
                continue;
            }
            // `R′ᵢR′ᵢ₊₁` and `L′ᵢ₊₁L′ᵢ` move one interval two steps; `RᵢRᵢ₋₁`
            // and `Lᵢ₋₁Lᵢ` move two strands one step each.
            for p in 2..n2 {
                if self.kind == Kind::BBar {
                    if has(s, p - 1) && !has(s, p) && !has(s, p + 1) {
                        out.push((one.clone(), Bijection::new(s, Self::moved(s, p - 1, p + 1))));
                    }
                    if !has(s, p - 1) && !has(s, p) && has(s, p + 1) {
                        out.push((one.clone(), Bijection::new(s, Self::moved(s, p + 1, p - 1))));
                    }
                } else {
                    if has(s, p - 1) && has(s, p) && !has(s, p + 1) {
                        out.push((one.clone(), Bijection::new(s, Self::moved(s, p - 1, p + 1))));
                    }
                    if !has(s, p - 1) && has(s, p) && has(s, p + 1) {
                        out.push((one.clone(), Bijection::new(s, Self::moved(s, p + 1, p - 1))));
                    }
                }
            }
        }
        out
    }

    pub fn weight(&self, path: &[State]) -> Monomial {
        path_weight(self.n_vars(), self.offset(), path)
    }

    fn crowded_endpoint(&self, m: &Monomial, p: &Bijection) -> bool {
        self.killed
            .iter()
            .any(|(g, b)| b.is_idempotent() && (b.source == p.source || b.source == p.target) && g.divides(m))
    }

    /// Whether `m·P` is zero in this algebra.
    pub fn kills(&self, m: &Monomial, p: &Bijection) -> bool {
        match self.rule {
            Vanishing::Ideal => self.killed.iter().any(|(g, b)| {
                g.mul(&self.weight(&[p.source, b.source, b.target, p.target])).divides(m)
            }),
            Vanishing::Endpoints | Vanishing::Visited => self.crowded_endpoint(m, p),
        }
    }

    pub fn normal_form(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (p, m, c) in e.terms() {
            if !self.kills(m, p) {
                out.add_term(*p, m.clone(), c.clone());
            }
        }
        out
    }

    pub fn mul_terms(&self, a: (&Bijection, &Monomial), b: (&Bijection, &Monomial)) -> Option<(Bijection, Monomial)> {
        let p = a.0.then(b.0)?;
        let m = a.1.mul(b.1).mul(&self.weight(&[a.0.source, a.0.target, b.0.target]));
        if self.rule == Vanishing::Visited {
            let mid = Bijection::idempotent(a.0.target);
            if self.crowded_endpoint(&m, &mid) {
                return None;
            }
        }
        (!self.kills(&m, &p)).then_some((p, m))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (p1, m1, c1) in a.terms() {
            for (p2, m2, c2) in b.terms() {
                if let Some((p, m)) = self.mul_terms((p1, m1), (p2, m2)) {
                    out.add_term(p, m, c1 * c2);
                }
            }
        }
        out
    }

    pub fn product(&self, factors: &[Element]) -> Element {
        factors.iter().fold(self.one(), |acc, f| self.multiply(&acc, f))
    }

    fn basis_term(&self, p: Bijection, m: Monomial) -> Element {
        self.normal_form(&Element::term(p, m))
    }

    pub fn idempotent(&self, s: State) -> Element {
        self.basis_term(Bijection::idempotent(s), Monomial::one(self.n_vars()))
    }

    /// `Σ_S m·ι_S`.
    pub fn scalar(&self, m: &Monomial) -> Element {
        let mut out = Element::zero();
        for s in self.states() {
            out = out.add(&self.basis_term(Bijection::idempotent(s), m.clone()));
        }
        out
    }

    pub fn one(&self) -> Element {
        self.scalar(&Monomial::one(self.n_vars()))
    }

    pub fn u(&self, i: usize) -> Element {
        self.scalar(&self.var(i))
    }

    /// `ι_i`: the idempotents whose state contains position `i`.
    pub fn iota_at(&self, i: usize) -> Element {
        let mut out = Element::zero();
        for s in self.states().into_iter().filter(|&s| has(s, i)) {
            out = out.add(&self.idempotent(s));
        }
        out
    }

    /// One strand from position `from` to the adjacent position `to`, summed over states.
    fn shift(&self, from: usize, to: usize) -> Element {
        let mut out = Element::zero();
        for s in self.states() {
            if has(s, from) && !has(s, to) {
                out = out.add(&self.basis_term(Bijection::new(s, Self::moved(s, from, to)), Monomial::one(self.n_vars())));
            }
        }
        out
    }

    /// `Rᵢ` in `Aₙ`; `R′ᵢ` in `ℬ̄′`.
    pub fn r(&self, i: usize) -> Element {
        match self.kind {
            Kind::BBar => self.shift(i - 1, i),
            _ => self.shift(i, i + 1),
        }
    }

    /// `Lᵢ` in `Aₙ`; `L′ᵢ` in `ℬ̄′`.
    pub fn l(&self, i: usize) -> Element {
        match self.kind {
            Kind::BBar => self.shift(i, i - 1),
            _ => self.shift(i + 1, i),
        }
    }

    /// `ρ_{i,j} = RᵢRᵢ₊₁⋯R_{j−1}`.
    pub fn rho(&self, i: usize, j: usize) -> Element {
        self.product(&(i..j).map(|k| self.r(k)).collect::<Vec<_>>())
    }

    /// `δ_{j,i} = L_{j−1}L_{j−2}⋯Lᵢ`.
    pub fn delta(&self, j: usize, i: usize) -> Element {
        self.product(&(i..j).rev().map(|k| self.l(k)).collect::<Vec<_>>())
    }

    /// Index range of the shift generators.
    pub fn shift_range(&self) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            Kind::BBar => 2..=2 * self.n,
            _ => 1..=2 * self.n - 1,
        }
    }

    /// Nonzero basis terms with monomial degree at most `bound`.
    pub fn basis(&self, bound: usize) -> Vec<(Bijection, Monomial)> {
        let vars: Vec<usize> = (0..self.n_vars()).collect();
        let monos: Vec<Monomial> = (0..=bound).flat_map(|d| monomials(self.n_vars(), &vars, d)).collect();
        let mut out = Vec::new();
        for &s in &self.states() {
            for &t in &self.states() {
                let p = Bijection::new(s, t);
                for m in &monos {
                    if !self.kills(m, &p) {
                        out.push((p, m.clone()));
                    }
                }
            }
        }
        out
    }

    /// Number of nonzero basis terms by monomial degree.
    pub fn dims_by_degree(&self, bound: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (_, m) in self.basis(bound) {
            *out.entry(m.degree()).or_insert(0) += 1;
        }
        out
    }
}

/// One failed identity with a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn expect(&mut self, relation: &str, lhs: &Element, rhs: &Element, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if lhs != rhs {
            self.violations.push(Violation {
                relation: relation.to_string(),
                witness: format!("{}: {lhs:?} ≠ {rhs:?}", witness()),
            });
        }
    }
}

fn all_monomials(n_vars: usize, lo: usize, hi: usize) -> Vec<Monomial> {
    let vars: Vec<usize> = (0..n_vars).collect();
    (lo..=hi).flat_map(|d| monomials(n_vars, &vars, d)).collect()
}

fn fmt_m(m: &Monomial) -> String {
    struct M<'a>(&'a Monomial);
    impl fmt::Display for M<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.is_one() {
                return write!(f, "1");
            }
            fmt_mono(f, self.0)
        }
    }
    M(m).to_string()
}

/// R1–R5 in `Aₙ` (or `𝒜ₙ`) with scalar multipliers up to `degree_bound`.
pub fn relation_suite(alg: &Algebra, degree_bound: usize) -> SuiteReport {
    let mut rep = SuiteReport::default();
    let n2 = 2 * alg.n();
    let states = alg.states();
    let mut gens: Vec<(String, Element)> = states.iter().map(|&s| (format!("ι{:?}", Bijection::idempotent(s)), alg.idempotent(s))).collect();
    for i in 1..n2 {
        gens.push((format!("R{i}"), alg.r(i)));
        gens.push((format!("L{i}"), alg.l(i)));
    }
    let one = alg.one();
    for (name, x) in &gens {
        rep.expect("Σι_S = 1", &alg.multiply(&one, x), x, || format!("1·{name}"));
        rep.expect("Σι_S = 1", &alg.multiply(x, &one), x, || format!("{name}·1"));
    }
    // R1
    for m in all_monomials(alg.n_vars(), 1, degree_bound) {
        let s = alg.scalar(&m);
        for (name, x) in &gens {
            rep.expect("R1", &alg.multiply(&s, x), &alg.multiply(x, &s), || format!("{} with {name}", fmt_m(&m)));
        }
    }
    // R2, R3
    for &a in &states {
        for &b in &states {
            let lhs = alg.multiply(&alg.idempotent(a), &alg.idempotent(b));
            let rhs = if a == b { alg.idempotent(a) } else { Element::zero() };
            rep.expect(if a == b { "R2" } else { "R3" }, &lhs, &rhs, || format!("{:?}, {:?}", Bijection::idempotent(a), Bijection::idempotent(b)));
        }
    }
    // R4
    for &s in &states {
        for i in 1..n2 {
            for (name, x, from, to) in [("R", alg.r(i), i, i + 1), ("L", alg.l(i), i + 1, i)] {
                let left = alg.multiply(&alg.idempotent(s), &x);
                let w = || format!("ι{:?}{name}{i}", Bijection::idempotent(s));
                if has(s, from) && !has(s, to) {
                    let t = Algebra::moved(s, from, to);
                    let right = alg.multiply(&x, &alg.idempotent(t));
                    let both = alg.multiply(&left, &alg.idempotent(t));
                    rep.expect("R4", &left, &right, w);
                    rep.expect("R4", &left, &both, w);
                } else {
                    rep.expect("R4", &left, &Element::zero(), w);
                }
            }
        }
    }
    // R5, with scalar multiples
    for m in all_monomials(alg.n_vars(), 0, degree_bound.saturating_sub(1)) {
        let s = alg.scalar(&m);
        for i in 1..n2 {
            let rl = alg.product(&[s.clone(), alg.r(i), alg.l(i)]);
            let lr = alg.product(&[s.clone(), alg.l(i), alg.r(i)]);
            let ui = alg.u(i);
            rep.expect("R5", &rl, &alg.product(&[s.clone(), alg.iota_at(i), ui.clone()]), || format!("{}·R{i}L{i}", fmt_m(&m)));
            rep.expect("R5", &lr, &alg.product(&[s.clone(), alg.iota_at(i + 1), ui]), || format!("{}·L{i}R{i}", fmt_m(&m)));
        }
    }
    // The vanishing forced by R4 and R5.
    for &s in &states {
        for i in 1..n2 {
            if has(s, i) && has(s, i + 1) {
                let lhs = alg.multiply(&alg.u(i), &alg.idempotent(s));
                rep.expect("uᵢι_S = 0 for {i,i+1} ⊆ S", &lhs, &Element::zero(), || format!("u{i}ι{:?}", Bijection::idempotent(s)));
            }
        }
    }
    rep
}

/// `(ab)c = a(bc)` on composable basis triples whose degrees sum to at most `degree_bound`.
pub fn associativity(alg: &Algebra, degree_bound: usize) -> SuiteReport {
    let mut rep = SuiteReport::default();
    let basis = alg.basis(degree_bound);
    let mut by_source: BTreeMap<State, Vec<&(Bijection, Monomial)>> = BTreeMap::new();
    for t in &basis {
        by_source.entry(t.0.source).or_default().push(t);
    }
    let empty = Vec::new();
    let el = |t: &(Bijection, Monomial)| Element::term(t.0, t.1.clone());
    for a in &basis {
        let da = a.1.degree();
        for b in by_source.get(&a.0.target).unwrap_or(&empty) {
            let db = da + b.1.degree();
            if db > degree_bound {
                continue;
            }
            let (ea, eb) = (el(a), el(b));
            let ab = alg.multiply(&ea, &eb);
            for c in by_source.get(&b.0.target).unwrap_or(&empty) {
                if db + c.1.degree() > degree_bound {
                    continue;
                }
                let ec = el(c);
                let lhs = alg.multiply(&ab, &ec);
                let rhs = alg.multiply(&ea, &alg.multiply(&eb, &ec));
                rep.expect("associativity", &lhs, &rhs, || {
                    format!("{}{:?} · {}{:?} · {}{:?}", fmt_m(&a.1), a.0, fmt_m(&b.1), b.0, fmt_m(&c.1), c.0)
                });
            }
        }
    }
    rep
}

/// `e = ι_{S₁}·e·ι_{S₂}` for every nonzero basis term `e: S₁ → S₂`.
pub fn idempotent_decomposition(alg: &Algebra, degree_bound: usize) -> SuiteReport {
    let mut rep = SuiteReport::default();
    for (p, m) in alg.basis(degree_bound) {
        let e = Element::term(p, m.clone());
        let sandwiched = alg.product(&[alg.idempotent(p.source), e.clone(), alg.idempotent(p.target)]);
        rep.expect("ι e ι = e", &sandwiched, &e, || format!("{}{p:?}", fmt_m(&m)));
    }
    rep
}

/// The candidate vanishing rules against the relations and associativity.
pub fn compare_vanishing_rules(n: usize, degree_bound: usize) -> Vec<(Vanishing, SuiteReport, SuiteReport)> {
    [Vanishing::Endpoints, Vanishing::Visited, Vanishing::Ideal]
        .into_iter()
        .map(|rule| {
            let alg = Algebra::with_rule(n, rule);
            (rule, relation_suite(&alg, degree_bound), associativity(&alg, degree_bound))
        })
        .collect()
}

/// `h: ℬ̄′(2n+1, n) → 𝒜ₙ` on basis terms: `I_𝐱 ↦ ι_{S_𝐱}`, `uᵢ ↦ uᵢ₋₁`.
/// `None` for terms carrying `u₁` or the rightmost point `u_{2n+1}`, which
/// have no counterpart among the gap variables.
pub fn h_term(n: usize, p: &Bijection, m: &Monomial) -> Option<(Bijection, Monomial)> {
    if m.0[0] != 0 || m.0[2 * n] != 0 {
        return None;
    }
    let s = state_map(p.source, n).ok()?;
    let t = state_map(p.target, n).ok()?;
    Some((Bijection::new(s, t), Monomial(m.0[1..=2 * n].to_vec())))
}

pub fn h(n: usize, e: &Element) -> Option<Element> {
    let mut out = Element::zero();
    for (p, m, c) in e.terms() {
        let (hp, hm) = h_term(n, p, m)?;
        out.add_term(hp, hm, c.clone());
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    /// Images of B1–B4 computed in `𝒜ₙ`.
    pub relations: SuiteReport,
    /// `u₁` annihilates `ℬ̄′`.
    pub u1_killed: bool,
    /// `h(ab) = h(a)h(b)` on basis pairs, gap variables only.
    pub multiplicative: SuiteReport,
    /// Basis counts by degree over the gap variables `u₂ … u₂ₙ ↦ u₁ … u₂ₙ₋₁`.
    pub gap_dims: (BTreeMap<usize, usize>, BTreeMap<usize, usize>),
    /// Basis counts by degree over all variables.
    pub full_dims: (BTreeMap<usize, usize>, BTreeMap<usize, usize>),
}

impl IsoReport {
    /// The relation images, `u₁`, multiplicativity, and the gap-variable dims.
    pub fn passed(&self) -> bool {
        self.relations.passed() && self.u1_killed && self.multiplicative.passed() && self.gap_dims.0 == self.gap_dims.1
    }
}

fn gap_only(alg: &Algebra, m: &Monomial) -> bool {
    match alg.kind() {
        Kind::BBar => m.0[0] == 0 && m.0[2 * alg.n()] == 0,
        _ => m.0[2 * alg.n() - 1] == 0,
    }
}

fn gap_dims(alg: &Algebra, bound: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (_, m) in alg.basis(bound).iter().filter(|(_, m)| gap_only(alg, m)) {
        *out.entry(m.degree()).or_insert(0) += 1;
    }
    out
}

pub fn iso_check(n: usize, degree_bound: usize) -> IsoReport {
    let a = Algebra::a_quotient(n);
    let b = Algebra::b_bar(n);
    let n2 = 2 * n;
    let mut rel = SuiteReport::default();
    let iota = |x: LocalState| a.idempotent(state_map(x, n).unwrap());
    let (hr, hl) = (|i: usize| a.l(i - 1), |i: usize| a.r(i - 1));
    for x in states(n) {
        for i in 2..=n2 {
            let w = || format!("x={:?}, i={i}", Bijection::idempotent(x));
            let has_left = has(x, i - 1);
            let has_right = i <= n2 && has(x, i);
            // B1
            for (name, g, defined, to) in [
                ("B1 R′", hr(i), has_left && !has_right, (i - 1, i)),
                ("B1 L′", hl(i), has_right && !has_left, (i, i - 1)),
            ] {
                let left = a.multiply(&iota(x), &g);
                if defined {
                    let y = Algebra::moved(x, to.0, to.1);
                    rel.expect(name, &left, &a.multiply(&g, &iota(y)), w);
                    rel.expect(name, &left, &a.product(&[iota(x), g.clone(), iota(y)]), w);
                } else {
                    rel.expect(name, &left, &Element::zero(), w);
                }
            }
            // B2
            let u = a.u(i - 1);
            if has_left && !has_right {
                rel.expect("B2 R′L′", &a.product(&[iota(x), hr(i), hl(i)]), &a.multiply(&u, &iota(x)), w);
            }
            if has_right && !has_left {
                rel.expect("B2 L′R′", &a.product(&[iota(x), hl(i), hr(i)]), &a.multiply(&u, &iota(x)), w);
            }
            // B4 at the interior points
            if !has_left && !has_right {
                rel.expect("B4", &a.multiply(&u, &iota(x)), &Element::zero(), w);
            }
        }
        // B3
        for i in 2..n2 {
            let w = || format!("i={i}");
            rel.expect("B3 R′R′", &a.multiply(&hr(i), &hr(i + 1)), &Element::zero(), w);
            rel.expect("B3 L′L′", &a.multiply(&hl(i + 1), &hl(i)), &Element::zero(), w);
        }
    }
    let u1_killed = b.states().iter().all(|&x| b.multiply(&b.u(1), &b.idempotent(x)).is_zero());
    let mut mult = SuiteReport::default();
    let basis: Vec<_> = b.basis(degree_bound).into_iter().filter(|(_, m)| gap_only(&b, m)).collect();
    for (p1, m1) in &basis {
        for (p2, m2) in basis.iter().filter(|(p2, _)| p2.source == p1.target) {
            if m1.degree() + m2.degree() > degree_bound {
                continue;
            }
            let (x, y) = (Element::term(*p1, m1.clone()), Element::term(*p2, m2.clone()));
            let lhs = h(n, &b.multiply(&x, &y)).unwrap_or_default();
            let rhs = a.multiply(&h(n, &x).unwrap(), &h(n, &y).unwrap());
            mult.expect("h(ab) = h(a)h(b)", &lhs, &rhs, || format!("{}{p1:?} · {}{p2:?}", fmt_m(m1), fmt_m(m2)));
        }
    }
    IsoReport {
        relations: rel,
        u1_killed,
        multiplicative: mult,
        gap_dims: (gap_dims(&b, degree_bound), gap_dims(&a, degree_bound)),
        full_dims: (b.dims_by_degree(degree_bound), a.dims_by_degree(degree_bound)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &[usize], t: &[usize]) -> Bijection {
        Bijection::new(state(s), state(t))
    }

    #[test]
    fn product_from_the_strands_figure() {
        let alg = Algebra::a(2);
        let p1 = Element::term(b(&[1, 4], &[1, 3]), Monomial::one(4));
        let p2 = Element::term(b(&[1, 3], &[2, 3]), Monomial::one(4));
        assert_eq!(alg.multiply(&p1, &p2), Element::term(b(&[1, 4], &[2, 3]), Monomial::one(4)));
        assert!(alg.multiply(&p2, &p1).is_zero());
    }

    #[test]
    fn there_and_back_weights() {
        assert_eq!(alpha(1, &b(&[1], &[2]), &b(&[2], &[1])).0, vec![1, 0]);
        assert_eq!(alpha(1, &b(&[2], &[1]), &b(&[1], &[2])).0, vec![1, 0]);
        assert_eq!(alpha(2, &b(&[1, 2], &[3, 4]), &b(&[3, 4], &[1, 2])).0, vec![1, 2, 1, 0]);
    }

    #[test]
    fn state_map_examples() {
        assert_eq!(state_map(0b01, 1), Ok(state(&[2])));
        assert_eq!(state_map(0b10, 1), Ok(state(&[1])));
        assert!(state_map(0b11, 1).is_err());
        for x in states(3) {
            assert_eq!(state_map(x, 3).unwrap().count_ones(), 3);
        }
    }

    #[test]
    fn generators() {
        let alg = Algebra::a(2);
        assert_eq!(alg.rho(2, 3), alg.r(2));
        assert_eq!(alg.delta(3, 2), alg.l(2));
        assert!(alg.multiply(&alg.idempotent(state(&[3, 4])), &alg.r(3)).is_zero());
        let sum = alg.states().iter().fold(Element::zero(), |acc, &s| acc.add(&alg.idempotent(s)));
        assert_eq!(sum, alg.one());
    }

    #[test]
    fn crowded_middle_kills() {
        // u₂ R₁ R₃ from {1,3} passes through {2,3}.
        let alg = Algebra::a(2);
        let e = alg.product(&[alg.u(2), alg.idempotent(state(&[1, 3])), alg.r(1), alg.r(3)]);
        assert!(e.is_zero());
        assert!(alg.kills(&Monomial::var(4, 1), &b(&[1, 3], &[2, 4])));
    }

    #[test]
    fn quotient_kills_double_moves() {
        let alg = Algebra::a_quotient(2);
        for i in 2..=3 {
            assert!(alg.multiply(&alg.r(i), &alg.r(i - 1)).is_zero());
            assert!(alg.multiply(&alg.l(i - 1), &alg.l(i)).is_zero());
        }
        for s in alg.states() {
            assert_eq!(alg.idempotent(s), Element::term(Bijection::idempotent(s), Monomial::one(4)));
        }
    }

    #[test]
    fn suites_for_n_one() {
        let alg = Algebra::a(1);
        assert!(relation_suite(&alg, 3).passed());
        assert!(associativity(&alg, 3).passed());
    }
}
