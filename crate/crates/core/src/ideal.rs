//! Ideals, their classification, quotients by ideals and separating primes.

use crate::axioms::{check_axioms, Kind};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::structure::Structure;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ideal {
    pub members: ElemSet,
}

/// True when `i` contains 0 and is closed under `+` and multiplication by
/// arbitrary elements.
pub fn is_ideal(s: &Structure, i: &ElemSet) -> bool {
    if !i.contains(s.zero()) {
        return false;
    }
    for a in i {
        for b in i {
            if !s.add(a, b).is_subset(i) {
                return false;
            }
        }
        for x in s.elements() {
            if !s.mul(x, a).is_subset(i) {
                return false;
            }
        }
    }
    true
}

/// Least ideal containing `gens`.
pub fn ideal_generate(s: &Structure, gens: &ElemSet) -> Ideal {
    let mut cur = gens.clone();
    cur.insert(s.zero());
    loop {
        let mut next = cur.clone();
        for a in &cur {
            next.insert(s.neg(a));
            for x in s.elements() {
                next.union_with(s.mul(x, a));
            }
            for b in &cur {
                next.union_with(s.add(a, b));
            }
        }
        if next == cur {
            return Ideal { members: cur };
        }
        cur = next;
    }
}

/// Every ideal of a finite structure, sorted.
pub fn all_ideals(s: &Structure) -> Vec<Ideal> {
    let mut found: BTreeSet<Ideal> = BTreeSet::new();
    let mut stack = vec![ideal_generate(s, &ElemSet::new())];
    while let Some(i) = stack.pop() {
        if !found.insert(i.clone()) {
            continue;
        }
        for x in s.elements() {
            if !i.members.contains(x) {
                let mut g = i.members.clone();
                g.insert(x);
                let j = ideal_generate(s, &g);
                if !found.contains(&j) {
                    stack.push(j);
                }
            }
        }
    }
    found.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFlags {
    pub prime: bool,
    pub strongly_prime: bool,
    pub maximal: bool,
    /// The quotient is a quasi-superdomain: `ab = {0}` forces a factor to 0.
    pub quotient_quasi_superdomain: bool,
    /// The quotient passes the superdomain axioms.
    pub quotient_superdomain: bool,
}

/// Decide primality, strong primality and maximality exhaustively, plus the
/// quotient-side characterisations used as cross-checks.
pub fn classify_ideal(s: &Structure, i: &Ideal) -> Result<IdealFlags> {
    let m = &i.members;
    if !is_ideal(s, m) {
        return Err(Error::Precondition("not an ideal".into()));
    }
    let proper = !m.contains(s.one());
    let outside: Vec<usize> = s.elements().filter(|&x| !m.contains(x)).collect();
    let mut prime = proper;
    let mut strongly = proper;
    for &a in &outside {
        for &b in &outside {
            let ab = s.mul(a, b);
            if ab.is_subset(m) {
                prime = false;
            }
            if ab.intersects(m) {
                strongly = false;
            }
        }
    }
    let maximal = proper
        && all_ideals(s)
            .iter()
            .all(|j| !m.is_subset(&j.members) || j.members == *m || j.members.contains(s.one()));
    let (q, _) = quotient_by_ideal(s, i);
    let z = q.zero();
    let quasi = q.elements().all(|a| {
        q.elements()
            .all(|b| *q.mul(a, b) != ElemSet::singleton(z) || a == z || b == z)
    });
    let dom = check_axioms(&q, Kind::Superdomain)?.passed;
    Ok(IdealFlags {
        prime,
        strongly_prime: strongly,
        maximal,
        quotient_quasi_superdomain: quasi,
        quotient_superdomain: dom,
    })
}

/// `A/I` with cosets `x + I` compared as sets and operations
/// `x̄ + ȳ = { z̄ : z ∈ x + y }`, `x̄ · ȳ = { z̄ : z ∈ xy }`.
///
/// Class indices follow the smallest member of each coset.
pub fn quotient_by_ideal(s: &Structure, i: &Ideal) -> (Structure, Morphism) {
    let n = s.size();
    let cosets: Vec<ElemSet> = s
        .elements()
        .map(|x| s.set_add(&ElemSet::singleton(x), &i.members))
        .collect();
    let mut reps: Vec<usize> = vec![];
    let mut class = vec![0; n];
    for x in 0..n {
        match reps.iter().position(|&r| cosets[r] == cosets[x]) {
            Some(k) => class[x] = k,
            None => {
                class[x] = reps.len();
                reps.push(x);
            }
        }
    }
    let q = congruence_quotient(s, &class, &reps, format!("{}/I", s.name));
    (q, Morphism::new(class))
}

/// Quotient tables obtained by scanning every original cell and mapping
/// members through `class`.
pub(crate) fn congruence_quotient(
    s: &Structure,
    class: &[usize],
    reps: &[usize],
    name: String,
) -> Structure {
    let k = reps.len();
    let mut add = vec![ElemSet::new(); k * k];
    let mut mul = vec![ElemSet::new(); k * k];
    for a in s.elements() {
        for b in s.elements() {
            let cell = class[a] * k + class[b];
            add[cell].extend(s.add(a, b).iter().map(|c| class[c]));
            mul[cell].extend(s.mul(a, b).iter().map(|c| class[c]));
        }
    }
    Structure::from_tables(
        name,
        reps.iter().map(|&r| s.name_of(r).to_string()).collect(),
        add,
        mul,
        reps.iter().map(|&r| class[s.neg(r)]).collect(),
        class[s.zero()],
        class[s.one()],
        s.kind,
    )
    .expect("congruence quotient of a valid structure is valid")
}

/// A prime ideal containing `i` and disjoint from the multiplicative set `m`.
///
/// Ideals extending `i` and avoiding `m` are explored from the largest down;
/// the first prime one in that order is returned. `Ok(None)` only if no such
/// ideal is prime.
pub fn separating_prime(s: &Structure, i: &Ideal, m: &ElemSet) -> Result<Option<Ideal>> {
    if !m.contains(s.one()) || !s.set_mul(m, m).is_subset(m) {
        return Err(Error::Precondition("M is not multiplicative".into()));
    }
    if m.intersects(&i.members) {
        return Err(Error::Precondition("M meets I".into()));
    }
    let mut candidates: Vec<Ideal> = all_ideals(s)
        .into_iter()
        .filter(|j| i.members.is_subset(&j.members) && !j.members.intersects(m))
        .collect();
    candidates.sort_by(|a, b| b.members.len().cmp(&a.members.len()).then(a.cmp(b)));
    for j in candidates {
        if classify_ideal(s, &j)?.prime {
            return Ok(Some(j));
        }
    }
    Ok(None)
}
