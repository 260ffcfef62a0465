//! Quadratic forms over special hyperfields.
//!
//! Binary isometry is `⟨a,b⟩ ≡ ⟨c,d⟩` iff `ab = cd` and `ac ∈ D⟨1,cd⟩`.
//! Higher-dimensional isometry is the closure of replacing two entries by a
//! binary-isometric pair, explored breadth first over sorted entry multisets.
//!
//! The special-group axioms checked by [`special_group_report`]:
//!
//! - SG0: binary isometry is an equivalence relation
//! - SG1: `⟨a,b⟩ ≡ ⟨b,a⟩`
//! - SG2: `⟨a,-a⟩ ≡ ⟨1,-1⟩`
//! - SG3: `⟨a,b⟩ ≡ ⟨c,d⟩` implies `ab = cd`
//! - SG4: `⟨a,b⟩ ≡ ⟨c,d⟩` implies `⟨a,-c⟩ ≡ ⟨-b,d⟩`
//! - SG5: `⟨a,b⟩ ≡ ⟨c,d⟩` implies `⟨ga,gb⟩ ≡ ⟨gc,gd⟩`
//! - SG6: ternary isometry is transitive, where `⟨a1,a2,a3⟩ ≡ ⟨b1,b2,b3⟩` iff
//!   some `x` gives `⟨a1,x⟩ ≡ ⟨b1,y⟩`, `⟨a2,a3⟩ ≡ ⟨x,z⟩`, `⟨b2,b3⟩ ≡ ⟨y,z⟩`
//!   with `y = a1·x·b1` and `z = a2·a3·x`

use crate::axioms::{Report, Tally};
use crate::budget::state_budget;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::structure::Structure;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QForm {
    pub entries: Vec<usize>,
}

impl QForm {
    pub fn new(entries: Vec<usize>) -> QForm {
        QForm { entries }
    }

    pub fn empty() -> QForm {
        QForm { entries: vec![] }
    }

    /// Parse comma-separated element names, rejecting zero entries.
    pub fn parse(s: &Structure, text: &str) -> Result<QForm> {
        let entries = s.parse_list(text)?;
        if entries.contains(&s.zero()) {
            return Err(Error::Parse("forms have nonzero entries".into()));
        }
        Ok(QForm { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn oplus(&self, other: &QForm) -> QForm {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        QForm { entries: e }
    }

    pub fn scaled(&self, s: &Structure, g: usize) -> QForm {
        QForm {
            entries: self.entries.iter().map(|&x| s.mul1(g, x)).collect(),
        }
    }

    pub fn negated(&self, s: &Structure) -> QForm {
        QForm {
            entries: self.entries.iter().map(|&x| s.neg(x)).collect(),
        }
    }

    pub fn sorted(&self) -> QForm {
        let mut e = self.entries.clone();
        e.sort_unstable();
        QForm { entries: e }
    }

    pub fn display(&self, s: &Structure) -> String {
        let parts: Vec<&str> = self.entries.iter().map(|&x| s.name_of(x)).collect();
        format!("<{}>", parts.join(","))
    }
}

/// `D(φ)`: the sum-set of the entries without 0.
pub fn value_set(s: &Structure, phi: &QForm) -> ElemSet {
    if phi.dim() == 0 {
        return ElemSet::new();
    }
    let mut d = s.fold_sum(&phi.entries);
    d.remove(s.zero());
    d
}

/// Value set built the special-group way: `D⟨a⟩ = {a}` and
/// `D⟨a, rest⟩ = ∪_{x ∈ D(rest)} D⟨a, x⟩`.
pub fn value_set_iterated(s: &Structure, phi: &QForm) -> ElemSet {
    match phi.entries.split_first() {
        None => ElemSet::new(),
        Some((&a, [])) => ElemSet::singleton(a),
        Some((&a, rest)) => {
            let mut out = ElemSet::new();
            for x in &value_set_iterated(s, &QForm::new(rest.to_vec())) {
                out.union_with(&value_set(s, &QForm::new(vec![a, x])));
            }
            out
        }
    }
}

pub fn binary_isometric(s: &Structure, a: usize, b: usize, c: usize, d: usize) -> bool {
    let cd = s.mul1(c, d);
    s.mul1(a, b) == cd && s.add(s.one(), cd).contains(s.mul1(a, c))
}

/// Entries `c` with `⟨a,b⟩ ≡ ⟨c, abc⟩`.
fn binary_partners(s: &Structure, a: usize, b: usize) -> Vec<(usize, usize)> {
    let ab = s.mul1(a, b);
    s.nonzero()
        .map(|c| (c, s.mul1(ab, c)))
        .filter(|&(c, d)| binary_isometric(s, a, b, c, d))
        .collect()
}

/// Breadth-first exploration of the isometry class of `phi` as sorted entry
/// lists. `stop` ends the search early when it returns true for a state.
fn explore<F>(s: &Structure, phi: &QForm, budget: u64, mut stop: F) -> Result<Option<Vec<usize>>>
where
    F: FnMut(&[usize]) -> bool,
{
    let start = phi.sorted().entries;
    if stop(&start) {
        return Ok(Some(start));
    }
    let n = s.size();
    let mut partners: Vec<Option<Vec<(usize, usize)>>> = vec![None; n * n];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len() {
            for j in i + 1..cur.len() {
                if j > i + 1 && cur[j] == cur[j - 1] {
                    continue;
                }
                let (a, b) = (cur[i], cur[j]);
                let ps = partners[a * n + b].get_or_insert_with(|| binary_partners(s, a, b));
                for &(c, d) in ps.iter() {
                    let mut next = cur.clone();
                    next[i] = c;
                    next[j] = d;
                    next.sort_unstable();
                    if seen.contains(&next) {
                        continue;
                    }
                    if stop(&next) {
                        return Ok(Some(next));
                    }
                    if seen.len() as u64 >= budget {
                        return Err(Error::Budget { budget });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(None)
}

/// Every sorted entry list isometric to `phi`.
pub fn isometry_class(s: &Structure, phi: &QForm) -> Result<Vec<QForm>> {
    isometry_class_within(s, phi, state_budget())
}

pub fn isometry_class_within(s: &Structure, phi: &QForm, budget: u64) -> Result<Vec<QForm>> {
    let mut all = vec![];
    explore(s, phi, budget, |st| {
        all.push(QForm::new(st.to_vec()));
        false
    })?;
    all.sort();
    Ok(all)
}

pub fn isometric(s: &Structure, phi: &QForm, psi: &QForm) -> Result<bool> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(phi.dim(), psi.dim()));
    }
    match phi.dim() {
        0 => Ok(true),
        1 => Ok(phi.entries == psi.entries),
        2 => Ok(binary_isometric(
            s,
            phi.entries[0],
            phi.entries[1],
            psi.entries[0],
            psi.entries[1],
        )),
        _ => {
            if s.mul1(product(s, phi), s.one()) != product(s, psi) {
                return Ok(false);
            }
            let target = psi.sorted().entries;
            Ok(explore(s, phi, state_budget(), |st| st == target.as_slice())?.is_some())
        }
    }
}

fn product(s: &Structure, phi: &QForm) -> usize {
    phi.entries.iter().fold(s.one(), |acc, &x| s.mul1(acc, x))
}

/// Isotropy as `0 ∈ a_1 + … + a_n` (dimension at least 2).
pub fn is_isotropic(s: &Structure, phi: &QForm) -> bool {
    phi.dim() >= 2 && s.fold_sum(&phi.entries).contains(s.zero())
}

/// Isotropy as isometry to a form containing some `x` and `-x`.
pub fn is_isotropic_bfs(s: &Structure, phi: &QForm) -> Result<bool> {
    if phi.dim() < 2 {
        return Ok(false);
    }
    Ok(explore(s, phi, state_budget(), |st| {
        has_opposite_pair(s, st).is_some()
    })?
    .is_some())
}

fn has_opposite_pair(s: &Structure, st: &[usize]) -> Option<(usize, usize)> {
    for i in 0..st.len() {
        for j in i + 1..st.len() {
            if st[j] == s.neg(st[i]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// A form `ψ` with `φ ≡ ⟨x⟩ ⊕ ψ`, if `x ∈ D(φ)`.
pub fn represent(s: &Structure, phi: &QForm, x: usize) -> Option<QForm> {
    let (&a, rest) = phi.entries.split_first()?;
    if rest.is_empty() {
        return (a == x).then(QForm::empty);
    }
    if a == x {
        return Some(QForm::new(rest.to_vec()));
    }
    let rest = QForm::new(rest.to_vec());
    let tail = s.fold_sum(&rest.entries);
    // x ∈ a + y for some nonzero y ∈ D(rest); then ⟨a,y⟩ ≡ ⟨x, axy⟩
    for y in &tail {
        if y == s.zero() || !s.add(a, y).contains(x) {
            continue;
        }
        if let Some(mut r) = represent(s, &rest, y) {
            r.entries.insert(0, s.mul1(s.mul1(a, x), y));
            return Some(r);
        }
    }
    None
}

/// For isotropic `φ = ⟨a, …⟩`, a form `ψ` with `φ ≡ ⟨a,-a⟩ ⊕ ψ`.
pub fn split_hyperbolic(s: &Structure, phi: &QForm) -> Option<QForm> {
    if !is_isotropic(s, phi) {
        return None;
    }
    let a = phi.entries[0];
    represent(s, &QForm::new(phi.entries[1..].to_vec()), s.neg(a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittDecomposition {
    pub anisotropic: QForm,
    pub hyperbolic_count: usize,
}

impl WittDecomposition {
    pub fn dim_w(&self) -> usize {
        self.anisotropic.dim()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.anisotropic.dim() == 0
    }
}

/// Strip hyperbolic planes by the constructive splitting.
pub fn witt_decompose(s: &Structure, phi: &QForm) -> WittDecomposition {
    let mut cur = phi.clone();
    let mut count = 0;
    while let Some(rest) = split_hyperbolic(s, &cur) {
        cur = rest;
        count += 1;
    }
    WittDecomposition {
        anisotropic: cur,
        hyperbolic_count: count,
    }
}

/// Strip hyperbolic planes found by isometry search.
pub fn witt_decompose_bfs(s: &Structure, phi: &QForm) -> Result<WittDecomposition> {
    let mut cur = phi.clone();
    let mut count = 0;
    while cur.dim() >= 2 {
        let Some(st) = explore(s, &cur, state_budget(), |st| {
            has_opposite_pair(s, st).is_some()
        })?
        else {
            break;
        };
        let (i, j) = has_opposite_pair(s, &st).unwrap();
        let rest: Vec<usize> = st
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, &x)| x)
            .collect();
        cur = QForm::new(rest);
        count += 1;
    }
    Ok(WittDecomposition {
        anisotropic: cur,
        hyperbolic_count: count,
    })
}

pub fn witt_equivalent(s: &Structure, phi: &QForm, psi: &QForm) -> Result<bool> {
    let a = witt_decompose(s, phi).anisotropic;
    let b = witt_decompose(s, psi).anisotropic;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    isometric(s, &a, &b)
}

/// `⟨⟨g_1,…,g_n⟩⟩`; the entry for a subset `S` is `Π_{i∈S} g_i`, subsets in
/// binary-counter order.
pub fn pfister(s: &Structure, gens: &[usize]) -> QForm {
    let entries = (0..1usize << gens.len())
        .map(|mask| {
            gens.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(s.one(), |acc, (_, &g)| s.mul1(acc, g))
        })
        .collect();
    QForm { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperfieldClass {
    pub pre_special: bool,
    pub special: bool,
    pub formally_real: bool,
    pub real_reduced: bool,
    pub rooted: bool,
}

/// `a² = 1` for every nonzero `a`, and `1 ≠ -1`.
pub fn is_pre_special(s: &Structure) -> bool {
    s.neg(s.one()) != s.one()
        && s.nonzero()
            .all(|a| *s.mul(a, a) == ElemSet::singleton(s.one()))
}

pub fn is_formally_real(s: &Structure) -> bool {
    !s.sum_of_squares().contains(s.neg(s.one()))
}

pub fn is_rooted(s: &Structure) -> bool {
    s.nonzero().all(|a| {
        s.nonzero()
            .all(|b| s.add(a, b).contains(a) && s.add(a, b).contains(b))
    })
}

pub fn classify_hyperfield(s: &Structure) -> HyperfieldClass {
    let pre_special = is_pre_special(s);
    let one = s.one();
    HyperfieldClass {
        pre_special,
        special: pre_special && special_group_report(s).passed,
        formally_real: is_formally_real(s),
        real_reduced: pre_special && *s.add(one, one) == ElemSet::singleton(one),
        rooted: is_rooted(s),
    }
}

/// Exhaustive SG0–SG6 check for a pre-special hyperfield.
pub fn special_group_report(s: &Structure) -> Report {
    let units: Vec<usize> = s.nonzero().collect();
    let g = units.len();
    let mut pos = vec![usize::MAX; s.size()];
    for (i, &u) in units.iter().enumerate() {
        pos[u] = i;
    }
    let mut t = Tally::default();
    if !units
        .iter()
        .all(|&a| units.iter().all(|&b| s.mul(a, b).len() == 1))
    {
        t.fail("single-valued", &[]);
        return t.into_report();
    }
    let pair = |a: usize, b: usize| pos[a] * g + pos[b];
    // related[pair] = pairs binary isometric to it
    let related: Vec<ElemSet> = (0..g * g)
        .map(|p| {
            let (a, b) = (units[p / g], units[p % g]);
            binary_partners(s, a, b)
                .into_iter()
                .map(|(c, d)| pair(c, d))
                .collect()
        })
        .collect();
    let iso = |a: usize, b: usize, c: usize, d: usize| related[pair(a, b)].contains(pair(c, d));
    let (one, m1) = (s.one(), s.neg(s.one()));
    for &a in &units {
        t.check(iso(a, s.neg(a), one, m1), "SG2", &[a]);
        for &b in &units {
            t.check(iso(a, b, a, b), "SG0-reflexive", &[a, b]);
            t.check(iso(a, b, b, a), "SG1", &[a, b]);
            for q in &related[pair(a, b)] {
                let (c, d) = (units[q / g], units[q % g]);
                t.check(iso(c, d, a, b), "SG0-symmetric", &[a, b, c, d]);
                t.check(
                    related[q].is_subset(&related[pair(a, b)]),
                    "SG0-transitive",
                    &[a, b, c, d],
                );
                t.check(s.mul1(a, b) == s.mul1(c, d), "SG3", &[a, b, c, d]);
                t.check(iso(a, s.neg(c), s.neg(b), d), "SG4", &[a, b, c, d]);
                for &h in &units {
                    let m = |x| s.mul1(h, x);
                    t.check(iso(m(a), m(b), m(c), m(d)), "SG5", &[a, b, c, d, h]);
                }
            }
        }
    }
    if t.is_empty() {
        let ternary = ternary_relation(s, &units, &pos, &related);
        for (ia, ra) in ternary.iter().enumerate() {
            for ib in ra {
                if !ternary[ib].is_subset(ra) {
                    let w = |i: usize| [units[i / (g * g)], units[i / g % g], units[i % g]];
                    let mut wit = w(ia).to_vec();
                    wit.extend(w(ib));
                    t.fail("SG6", &wit);
                }
            }
        }
    }
    t.into_report()
}

fn ternary_relation(
    s: &Structure,
    units: &[usize],
    pos: &[usize],
    related: &[ElemSet],
) -> Vec<ElemSet> {
    let g = units.len();
    let pair = |a: usize, b: usize| pos[a] * g + pos[b];
    let iso = |a: usize, b: usize, c: usize, d: usize| related[pair(a, b)].contains(pair(c, d));
    let mut out = vec![ElemSet::new(); g * g * g];
    for (ia, rel) in out.iter_mut().enumerate() {
        let (a1, a2, a3) = (units[ia / (g * g)], units[ia / g % g], units[ia % g]);
        for &x in units {
            let z = s.mul1(s.mul1(a2, a3), x);
            if !iso(a2, a3, x, z) {
                continue;
            }
            for &b1 in units {
                let y = s.mul1(s.mul1(a1, x), b1);
                if !iso(a1, x, b1, y) {
                    continue;
                }
                for q in &related[pair(y, z)] {
                    rel.insert(pos[b1] * g * g + q);
                }
            }
        }
    }
    out
}
