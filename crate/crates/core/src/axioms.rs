//! Exhaustive axiom verification for finite multialgebras.
//!
//! Every axiom is checked over the whole carrier. For each failing axiom the
//! report keeps the lexicographically smallest witness tuple and the number of
//! failing tuples. Work is split over the first coordinate with rayon and
//! merged by taking minima, so the report does not depend on scheduling.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::structure::{DeclaredKind, Op, Structure};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Multigroup,
    Multimonoid,
    Multiring,
    Hyperring,
    Superring,
    Superdomain,
    QuasiSuperfield,
    Superfield,
    Hyperfield,
    Full,
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::Multigroup,
        Kind::Multimonoid,
        Kind::Multiring,
        Kind::Hyperring,
        Kind::Superring,
        Kind::Superdomain,
        Kind::QuasiSuperfield,
        Kind::Superfield,
        Kind::Hyperfield,
        Kind::Full,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Multigroup => "multigroup",
            Kind::Multimonoid => "multimonoid",
            Kind::Multiring => "multiring",
            Kind::Hyperring => "hyperring",
            Kind::Superring => "superring",
            Kind::Superdomain => "superdomain",
            Kind::QuasiSuperfield => "quasi-superfield",
            Kind::Superfield => "superfield",
            Kind::Hyperfield => "hyperfield",
            Kind::Full => "full",
        }
    }
}

impl From<DeclaredKind> for Kind {
    fn from(k: DeclaredKind) -> Kind {
        match k {
            DeclaredKind::MultigroupOnly => Kind::Multigroup,
            DeclaredKind::Multiring => Kind::Multiring,
            DeclaredKind::Hyperring | DeclaredKind::Ring => Kind::Hyperring,
            DeclaredKind::Superring => Kind::Superring,
            DeclaredKind::Hyperfield => Kind::Hyperfield,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok() -> Report {
        Report {
            passed: true,
            violations: vec![],
        }
    }

    pub fn from_violations(mut violations: Vec<Violation>) -> Report {
        violations.sort_by(|a, b| a.axiom.cmp(&b.axiom));
        Report {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn violated(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.violations.extend(other.violations);
        Report::from_violations(self.violations)
    }

    /// One line per violation with element names substituted.
    pub fn describe(&self, s: &Structure) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| {
                let w: Vec<&str> = v.witness.iter().map(|&x| s.name_of(x)).collect();
                format!("{} ({}): witness ({})", v.axiom, v.count, w.join(", "))
            })
            .collect()
    }
}

/// Collects smallest witnesses per axiom.
#[derive(Default)]
pub(crate) struct Tally {
    map: BTreeMap<&'static str, (Vec<usize>, u64)>,
}

impl Tally {
    pub(crate) fn fail(&mut self, axiom: &'static str, witness: &[usize]) {
        let e = self
            .map
            .entry(axiom)
            .or_insert_with(|| (witness.to_vec(), 0));
        if witness < e.0.as_slice() {
            e.0 = witness.to_vec();
        }
        e.1 += 1;
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub(crate) fn check(&mut self, ok: bool, axiom: &'static str, witness: &[usize]) {
        if !ok {
            self.fail(axiom, witness);
        }
    }

    pub(crate) fn merge(mut self, other: Tally) -> Tally {
        for (k, (w, c)) in other.map {
            let e = self.map.entry(k).or_insert_with(|| (w.clone(), 0));
            if w < e.0 {
                e.0 = w;
            }
            e.1 += c;
        }
        self
    }

    pub(crate) fn into_report(self) -> Report {
        Report::from_violations(
            self.map
                .into_iter()
                .map(|(axiom, (witness, count))| Violation {
                    axiom: axiom.to_string(),
                    witness,
                    count,
                })
                .collect(),
        )
    }
}

/// Run `f` for every first coordinate in parallel and merge.
pub(crate) fn par_tally<F>(n: usize, f: F) -> Tally
where
    F: Fn(usize, &mut Tally) + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut t = Tally::default();
            f(a, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

#[derive(Clone, Copy, Default)]
struct Plan {
    add_group: bool,
    mul_monoid: bool,
    mul_single: bool,
    mul_unit_exact: bool,
    zero_absorbing: bool,
    weak_dist: bool,
    full_dist: bool,
    signs: bool,
    nontrivial: bool,
    domain: bool,
    inverses: bool,
}

fn plan(kind: Kind) -> Plan {
    let base = Plan::default();
    let multiring = Plan {
        add_group: true,
        mul_monoid: true,
        mul_single: true,
        mul_unit_exact: true,
        zero_absorbing: true,
        weak_dist: true,
        ..base
    };
    let superring = Plan {
        add_group: true,
        mul_monoid: true,
        zero_absorbing: true,
        weak_dist: true,
        signs: true,
        ..base
    };
    match kind {
        Kind::Multigroup => Plan {
            add_group: true,
            ..base
        },
        Kind::Multimonoid => Plan {
            mul_monoid: true,
            ..base
        },
        Kind::Multiring => multiring,
        Kind::Hyperring => Plan {
            full_dist: true,
            ..multiring
        },
        Kind::Superring => superring,
        Kind::Superdomain => Plan {
            nontrivial: true,
            domain: true,
            ..superring
        },
        Kind::QuasiSuperfield => Plan {
            nontrivial: true,
            inverses: true,
            ..superring
        },
        Kind::Superfield => Plan {
            nontrivial: true,
            domain: true,
            inverses: true,
            ..superring
        },
        Kind::Hyperfield => Plan {
            nontrivial: true,
            inverses: true,
            ..multiring
        },
        Kind::Full => Plan {
            full_dist: true,
            ..superring
        },
    }
}

/// Exhaustively verify every axiom of `kind`.
pub fn check_axioms(s: &Structure, kind: Kind) -> Result<Report> {
    let n = s.size();
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let p = plan(kind);
    let (zero, one) = (s.zero(), s.one());
    let mut global = Tally::default();
    if p.nontrivial {
        global.check(zero != one, "nontrivial", &[zero]);
    }
    if p.add_group {
        global.check(s.neg(zero) == zero, "neg-zero", &[zero]);
    }
    let tally = par_tally(n, |a, t| {
        let sa = ElemSet::singleton(a);
        if p.add_group {
            t.check(s.neg(s.neg(a)) == a, "neg-involution", &[a]);
            t.check(*s.add(a, zero) == sa, "M2", &[a]);
        }
        if p.mul_monoid {
            if p.mul_unit_exact {
                t.check(*s.mul(one, a) == sa, "mul-unit", &[a]);
            } else {
                t.check(s.mul(one, a).contains(a), "mul-unit", &[a]);
            }
        }
        if p.zero_absorbing {
            t.check(
                *s.mul(a, zero) == ElemSet::singleton(zero),
                "zero-absorbing",
                &[a],
            );
        }
        if p.inverses && a != zero {
            t.check(
                s.elements().any(|b| s.mul(a, b).contains(one)),
                "inverses",
                &[a],
            );
        }
        for b in 0..n {
            let w = [a, b];
            if p.add_group {
                t.check(s.add(a, b) == s.add(b, a), "M4", &w);
                for c in s.add(a, b) {
                    let ok = s.add(c, s.neg(b)).contains(a) && s.add(s.neg(a), c).contains(b);
                    t.check(ok, "M1", &[a, b, c]);
                }
            }
            if p.mul_monoid {
                t.check(s.mul(a, b) == s.mul(b, a), "mul-M4", &w);
            }
            if p.mul_single {
                t.check(s.mul(a, b).len() == 1, "mul-single-valued", &w);
            }
            if p.signs {
                let m = s.neg_set(s.mul(a, b));
                let ok = m == *s.mul(s.neg(a), b) && m == *s.mul(a, s.neg(b));
                t.check(ok, "sign-rule", &w);
            }
            if p.domain {
                let ok = s.mul(a, b).contains(zero) == (a == zero || b == zero);
                t.check(ok, "no-zero-divisors", &w);
            }
            if !(p.add_group || p.mul_monoid || p.weak_dist || p.full_dist) {
                continue;
            }
            let ab_add = s.add(a, b);
            let ab_mul = s.mul(a, b);
            for c in 0..n {
                let w = [a, b, c];
                let sc = ElemSet::singleton(c);
                if p.add_group {
                    let l = s.set_add(ab_add, &sc);
                    let r = s.set_add(&sa, s.add(b, c));
                    t.check(l.is_subset(&r), "M3", &w);
                }
                if p.mul_monoid {
                    let l = s.set_mul(ab_mul, &sc);
                    let r = s.set_mul(&sa, s.mul(b, c));
                    t.check(l.is_subset(&r), "mul-M3", &w);
                }
                if p.weak_dist || p.full_dist {
                    // c·(a+b) against ca + cb
                    let l = s.scale(c, ab_add);
                    let r = s.set_add(s.mul(c, a), s.mul(c, b));
                    if p.weak_dist {
                        t.check(l.is_subset(&r), "weak-distributivity", &w);
                    }
                    if p.full_dist {
                        t.check(l == r, "distributivity", &w);
                    }
                }
            }
        }
    });
    Ok(global.merge(tally).into_report())
}

/// Characteristic: smallest n ≥ 1 with 0 in the n-fold sum of 1, else 0.
///
/// The running sum-set sequence is eventually periodic; iteration stops when a
/// set repeats.
pub fn characteristic(s: &Structure) -> usize {
    let one = ElemSet::singleton(s.one());
    let mut seen = std::collections::HashSet::new();
    let mut acc = one.clone();
    let mut k = 1;
    loop {
        if acc.contains(s.zero()) {
            return k;
        }
        if !seen.insert(acc.clone()) {
            return 0;
        }
        acc = s.set_add(&acc, &one);
        k += 1;
    }
}

/// Strong inversion property check on the nonzero multiplicative part
/// (`Op::Prod`, unit 1) or on the additive multigroup (`Op::Sum`, unit 0).
///
/// Reports `sip` (each element has exactly one `b` with `a∗b = {unit}`),
/// `group` (all cells of the restricted operation are singletons) and
/// `sip-iff-group` when the two disagree. Missing closure of the nonzero part
/// is reported as `closure`.
pub fn check_sip(s: &Structure, op: Op) -> Report {
    let (carrier, unit): (Vec<usize>, usize) = match op {
        Op::Prod => (s.nonzero().collect(), s.one()),
        Op::Sum => (s.elements().collect(), s.zero()),
    };
    let inside: ElemSet = carrier.iter().copied().collect();
    let mut t = Tally::default();
    let unit_set = ElemSet::singleton(unit);
    let mut sip = true;
    let mut group = true;
    for &a in &carrier {
        if op == Op::Sum && a == unit {
            continue;
        }
        let exact: Vec<usize> = carrier
            .iter()
            .copied()
            .filter(|&b| *s.cell(op, a, b) == unit_set)
            .collect();
        if exact.len() != 1 {
            sip = false;
            t.fail("sip", &[a]);
        }
        for &b in &carrier {
            let c = s.cell(op, a, b);
            if !c.is_subset(&inside) {
                t.fail("closure", &[a, b]);
            }
            if c.len() != 1 {
                group = false;
                t.fail("group", &[a, b]);
            }
        }
    }
    if sip != group {
        t.fail("sip-iff-group", &[]);
    }
    t.into_report()
}

/// Collect the elements `b` with `1 ∈ a·b`.
pub fn inverses(s: &Structure, a: usize) -> Vec<usize> {
    s.elements()
        .filter(|&b| s.mul(a, b).contains(s.one()))
        .collect()
}

/// Smallest-index inverse of `a`.
pub fn inverse(s: &Structure, a: usize) -> Option<usize> {
    s.elements().find(|&b| s.mul(a, b).contains(s.one()))
}

/// Newton binomial containment `(D+E)^n ⊆ Σ_j C(n,j) D^j E^{n-j}` for
/// singletons `D = {d}`, `E = {e}`, where `kX` is the k-fold sum `X+…+X`.
pub fn newton_binomial_holds(s: &Structure, d: usize, e: usize, n: usize) -> bool {
    let de = s.add(d, e).clone();
    let mut lhs = ElemSet::singleton(s.one());
    for _ in 0..n {
        lhs = s.set_mul(&lhs, &de);
    }
    let pow = |x: usize, k: usize| {
        let mut r = ElemSet::singleton(s.one());
        for _ in 0..k {
            r = s.set_mul(&r, &ElemSet::singleton(x));
        }
        r
    };
    let mut rhs = ElemSet::singleton(s.zero());
    for j in 0..=n {
        let term = s.set_mul(&pow(d, j), &pow(e, n - j));
        let mut multiple = ElemSet::singleton(s.zero());
        for _ in 0..binom(n, j) {
            multiple = s.set_add(&multiple, &term);
        }
        rhs = s.set_add(&rhs, &multiple);
    }
    lhs.is_subset(&rhs)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Cancellation in full superdomains: `ab ∩ ac ≠ ∅`, `a ≠ 0` implies `b = c`.
/// Returns the smallest failing `(a, b, c)`.
pub fn cancellation_witness(s: &Structure) -> Option<(usize, usize, usize)> {
    for a in s.nonzero() {
        for b in s.elements() {
            for c in s.elements() {
                if b != c && s.mul(a, b).intersects(s.mul(a, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}
