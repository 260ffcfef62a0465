//! Marshall quotients by coherent multiplicative subsets.

use crate::axioms::{Report, Tally};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::congruence_quotient;
use crate::morphism::{check_morphism, Morphism};
use crate::structure::Structure;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Disjoint-set forest over carrier indices; roots are the smallest member.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Class index per element (classes numbered by smallest member) and the
    /// representatives.
    pub fn classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.parent.len();
        let mut reps = vec![];
        let mut class = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if r == x {
                class[x] = reps.len();
                reps.push(x);
            } else {
                class[x] = class[r];
            }
        }
        (class, reps)
    }
}

pub fn is_multiplicative(s: &Structure, m: &ElemSet) -> bool {
    m.contains(s.one()) && s.set_mul(m, m).is_subset(m)
}

/// Largest pair `(P, Q)` of subsets of `m` with `xP = aQ` (greatest fixpoint).
pub fn largest_balanced_pair(s: &Structure, m: &ElemSet, x: usize, a: usize) -> (ElemSet, ElemSet) {
    let mut p = m.clone();
    let mut q = m.clone();
    loop {
        let xp = s.scale(x, &p);
        let aq = s.scale(a, &q);
        let p2: ElemSet = p.iter().filter(|&u| s.mul(x, u).is_subset(&aq)).collect();
        let q2: ElemSet = q.iter().filter(|&u| s.mul(a, u).is_subset(&xp)).collect();
        if p2 == p && q2 == q {
            return (p, q);
        }
        p = p2;
        q = q2;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub contains_one: bool,
    pub multiplicative: bool,
    /// Every `x ∈ a·s` admits non-empty `P, Q ⊆ M` with `xP = aQ`.
    pub balanced: bool,
    pub coherent: bool,
    /// The sufficient condition for superdomains: `1 ∈ M`, `0 ∉ M`,
    /// `M·M ⊆ M`, nonzero squares inside `M`.
    pub squares_condition: bool,
    pub report: Report,
}

/// Exhaustive coherence check.
pub fn is_coherent(s: &Structure, m: &ElemSet) -> CoherenceReport {
    let contains_one = m.contains(s.one());
    let mut t = Tally::default();
    t.check(contains_one, "contains-one", &[s.one()]);
    let mut multiplicative = true;
    for u in m {
        for v in m {
            if let Some(w) = s.mul(u, v).iter().find(|&w| !m.contains(w)) {
                multiplicative = false;
                t.fail("multiplicative", &[u, v, w]);
            }
        }
    }
    let mut balanced = true;
    for a in s.elements() {
        let mut seen = ElemSet::new();
        for u in m {
            seen.union_with(s.mul(a, u));
        }
        for x in &seen {
            let (p, _) = largest_balanced_pair(s, m, x, a);
            if p.is_empty() {
                balanced = false;
                t.fail("balanced", &[x, a]);
            }
        }
    }
    let nz_sq = s.squares().difference(&ElemSet::singleton(s.zero()));
    let squares_condition =
        contains_one && !m.contains(s.zero()) && multiplicative && nz_sq.is_subset(m);
    CoherenceReport {
        contains_one,
        multiplicative,
        balanced,
        coherent: contains_one && multiplicative && balanced,
        squares_condition,
        report: t.into_report(),
    }
}

/// Criterion (b): `∃ s, t ∈ M` with `a·s ∩ b·t ≠ ∅`.
pub fn sim(s: &Structure, m: &ElemSet, a: usize, b: usize) -> bool {
    m.iter()
        .any(|u| m.iter().any(|v| s.mul(a, u).intersects(s.mul(b, v))))
}

/// Criterion (a): non-empty `X, Y ⊆ M` with `aX = bY`.
pub fn sim_sets(s: &Structure, m: &ElemSet, a: usize, b: usize) -> bool {
    !largest_balanced_pair(s, m, a, b).0.is_empty()
}

/// Criterion (c): `∃ s, t, p, q ∈ M` with `a(st) = b(pq)`.
pub fn sim_products(s: &Structure, m: &ElemSet, a: usize, b: usize) -> bool {
    let prods = product_sets(s, m);
    let left: BTreeSet<ElemSet> = prods
        .iter()
        .map(|x| s.set_mul(&ElemSet::singleton(a), x))
        .collect();
    prods
        .iter()
        .any(|y| left.contains(&s.set_mul(&ElemSet::singleton(b), y)))
}

fn product_sets(s: &Structure, m: &ElemSet) -> Vec<ElemSet> {
    let mut out: BTreeSet<ElemSet> = BTreeSet::new();
    for u in m {
        for v in m {
            out.insert(s.mul(u, v).clone());
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct MarshallQuotient {
    pub quotient: Structure,
    pub projection: Morphism,
    pub subset: ElemSet,
    /// Disagreements between the class criteria, transitivity repairs, and
    /// cells where the scanned tables differ from the `cs ⊆ aM + bM`
    /// characterisation.
    pub diagnostics: Vec<String>,
}

impl MarshallQuotient {
    pub fn class_of(&self, a: usize) -> usize {
        self.projection.apply(a)
    }
}

/// `A/_m M`: classes of the criterion-(b) relation, tables by congruence.
#[allow(clippy::needless_range_loop)]
pub fn marshall_quotient(s: &Structure, m: &ElemSet) -> Result<MarshallQuotient> {
    if m.contains(s.zero()) {
        return Err(Error::TrivialQuotient);
    }
    let coh = is_coherent(s, m);
    if !coh.coherent {
        return Err(Error::NotCoherent(coh.report.describe(s).join("; ")));
    }
    let n = s.size();
    let mut uf = UnionFind::new(n);
    let mut direct = vec![vec![false; n]; n];
    let mut diagnostics = vec![];
    let prods = product_sets(s, m);
    for a in 0..n {
        for b in a..n {
            let rb = sim(s, m, a, b);
            direct[a][b] = rb;
            direct[b][a] = rb;
            let ra = sim_sets(s, m, a, b);
            let rc = {
                let left: BTreeSet<ElemSet> = prods.iter().map(|x| s.scale(a, x)).collect();
                prods.iter().any(|y| left.contains(&s.scale(b, y)))
            };
            if ra != rb || rb != rc {
                diagnostics.push(format!(
                    "criteria disagree on ({}, {}): sets={ra} pairs={rb} products={rc}",
                    s.name_of(a),
                    s.name_of(b)
                ));
            }
            if rb {
                uf.union(a, b);
            }
        }
    }
    let (class, reps) = uf.classes();
    for a in 0..n {
        for b in a + 1..n {
            if class[a] == class[b] && !direct[a][b] {
                diagnostics.push(format!(
                    "relation not transitive at ({}, {})",
                    s.name_of(a),
                    s.name_of(b)
                ));
            }
        }
    }
    let quotient = congruence_quotient(s, &class, &reps, format!("{}/m", s.name));
    diagnostics.extend(lemsum_discrepancies(s, m, &class, &reps, &quotient));
    Ok(MarshallQuotient {
        quotient,
        projection: Morphism::new(class),
        subset: m.clone(),
        diagnostics,
    })
}

/// Compare scanned quotient tables with: `[c] ∈ [a]+[b]` iff `∃ s ∈ M`,
/// `cs ⊆ aM + bM`, and `[c] ∈ [a][b]` iff `∃ s ∈ M`, `cs ⊆ abM`.
fn lemsum_discrepancies(
    s: &Structure,
    m: &ElemSet,
    class: &[usize],
    reps: &[usize],
    q: &Structure,
) -> Vec<String> {
    let mut out = vec![];
    for (ia, &a) in reps.iter().enumerate() {
        for (ib, &b) in reps.iter().enumerate().skip(ia) {
            let am_bm = s.set_add(&s.scale(a, m), &s.scale(b, m));
            let abm = s.set_mul(s.mul(a, b), m);
            for (ic, &c) in reps.iter().enumerate() {
                let add_char = m.iter().any(|u| s.mul(c, u).is_subset(&am_bm));
                let mul_char = m.iter().any(|u| s.mul(c, u).is_subset(&abm));
                if add_char != q.add(ia, ib).contains(ic) {
                    out.push(format!(
                        "sum characterisation differs at [{}]+[{}] for [{}]",
                        s.name_of(a),
                        s.name_of(b),
                        s.name_of(c)
                    ));
                }
                if mul_char != q.mul(ia, ib).contains(ic) {
                    out.push(format!(
                        "product characterisation differs at [{}][{}] for [{}]",
                        s.name_of(a),
                        s.name_of(b),
                        s.name_of(c)
                    ));
                }
            }
        }
    }
    let _ = class;
    out
}

/// The unique `f̄` with `f = f̄ ∘ π`, for a morphism `f` sending `M` to 1.
pub fn induced_morphism(
    q: &MarshallQuotient,
    src: &Structure,
    tgt: &Structure,
    f: &Morphism,
) -> Result<Morphism> {
    if let Some(bad) = q.subset.iter().find(|&u| f.apply(u) != tgt.one()) {
        return Err(Error::NotConstantOnSubset(src.name_of(bad).to_string()));
    }
    let k = q.quotient.size();
    let mut values: Vec<ElemSet> = vec![ElemSet::new(); k];
    for a in src.elements() {
        values[q.class_of(a)].insert(f.apply(a));
    }
    // any class-respecting g with g∘π = f must take exactly these values
    if let Some(c) = values.iter().position(|v| v.len() != 1) {
        return Err(Error::Precondition(format!(
            "f is not constant on the class of {}",
            q.quotient.name_of(c)
        )));
    }
    let fbar = Morphism::new(values.iter().map(|v| v.first().unwrap()).collect());
    let r = check_morphism(&q.quotient, tgt, &fbar, false);
    if !r.passed {
        return Err(Error::Precondition(format!(
            "induced map is not a morphism: {}",
            r.describe(&q.quotient).join("; ")
        )));
    }
    Ok(fbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_axioms, Kind};
    use crate::catalog::{find_isomorphism, make, CatalogKey};

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn z7_square_classes() {
        let z7 = make(CatalogKey::ModRing(7)).unwrap();
        let sq = set(&[1, 2, 4]);
        assert!(sim(&z7, &sq, 3, 5));
        assert!(sim(&z7, &sq, 2, 2));
        assert!(!sim(&z7, &sq, 1, 3));
        let q = marshall_quotient(&z7, &sq).unwrap();
        assert_eq!(q.quotient.size(), 3);
        assert!(q.diagnostics.is_empty(), "{:?}", q.diagnostics);
        let one = q.quotient.one();
        assert_eq!(
            q.quotient.add(one, one).to_vec(),
            vec![one, q.quotient.neg(one)]
        );
        assert!(check_axioms(&q.quotient, Kind::Hyperfield).unwrap().passed);
    }

    #[test]
    fn quotient_by_one_is_identity() {
        let q2 = make(CatalogKey::Q2).unwrap();
        assert!(is_coherent(&q2, &set(&[1])).coherent);
        let q = marshall_quotient(&q2, &set(&[1])).unwrap();
        assert!(find_isomorphism(&q.quotient, &q2).unwrap().is_identity());
    }

    #[test]
    fn zero_in_subset_refused() {
        let q2 = make(CatalogKey::Q2).unwrap();
        assert_eq!(
            marshall_quotient(&q2, &set(&[0, 1])).unwrap_err(),
            Error::TrivialQuotient
        );
    }

    #[test]
    fn multiring_subsets_are_coherent() {
        let z6 = make(CatalogKey::ModRing(6)).unwrap();
        for m in [set(&[1]), set(&[1, 5]), set(&[1, 3]), set(&[1, 2, 4])] {
            if is_multiplicative(&z6, &m) {
                assert!(is_coherent(&z6, &m).coherent);
            }
        }
    }

    #[test]
    fn induced_through_square_classes() {
        let z7 = make(CatalogKey::ModRing(7)).unwrap();
        let k = make(CatalogKey::K).unwrap();
        let sq = set(&[1, 2, 4]);
        let q = marshall_quotient(&z7, &sq).unwrap();
        let f = Morphism::new((0..7).map(|x| usize::from(x != 0)).collect());
        assert!(check_morphism(&z7, &k, &f, false).passed);
        let fbar = induced_morphism(&q, &z7, &k, &f).unwrap();
        assert_eq!(q.projection.then(&fbar), f);
        // the square-class sign map into Q2 is not a morphism: 1 + 2 = 3
        let q2 = make(CatalogKey::Q2).unwrap();
        let sign = Morphism::new(
            (0..7)
                .map(|x| {
                    if x == 0 {
                        0
                    } else if sq.contains(x) {
                        1
                    } else {
                        2
                    }
                })
                .collect(),
        );
        let r = check_morphism(&z7, &q2, &sign, false);
        assert_eq!(r.violated("additive").unwrap().witness, vec![1, 2]);
        assert!(induced_morphism(&q, &z7, &q2, &sign).is_err());
    }

    #[test]
    fn canonical_surjection_between_quotients() {
        let z7 = make(CatalogKey::ModRing(7)).unwrap();
        let small = marshall_quotient(&z7, &set(&[1])).unwrap();
        let big = marshall_quotient(&z7, &set(&[1, 2, 4])).unwrap();
        let g = induced_morphism(&small, &z7, &big.quotient, &big.projection).unwrap();
        let img: ElemSet = g.map.iter().copied().collect();
        assert_eq!(img.len(), big.quotient.size());
    }

    #[test]
    fn projection_not_constant_on_subset() {
        let z7 = make(CatalogKey::ModRing(7)).unwrap();
        let q = marshall_quotient(&z7, &set(&[1, 2, 4])).unwrap();
        let id = Morphism::identity(7);
        assert!(matches!(
            induced_morphism(&q, &z7, &z7, &id),
            Err(Error::NotConstantOnSubset(_))
        ));
    }
}
