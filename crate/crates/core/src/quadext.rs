//! Quadratic extensions `F(ω)`, `ω² = α`, of pre-special hyperfields and
//! their square-class hyperfields `S_F(ω)`.
//!
//! `F(ω)` is built on formal pairs `a + bω` (index `a + |F|·b`):
//!
//! ```text
//! (a + bω) + (c + dω) = { u + vω : u ∈ a + c, v ∈ b + d }
//! (a + bω) · (c + dω) = { u + vω : u ∈ ac + α·bd, v ∈ ad + bc }
//! ```
//!
//! `S_F(ω)` identifies base elements `a ~ b` when `(a,0)·s` and `(b,0)·t` meet
//! for some nonzero squares `s, t` of `F(ω)`, closes the relation
//! transitively, and takes the induced tables on `F`. The Marshall quotient of
//! the whole of `F(ω)` by its nonzero squares is available as
//! [`literal_square_quotient`]; those squares are not closed under products in
//! general, so it usually refuses.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::forms::{
    binary_isometric, is_formally_real, is_pre_special, is_rooted, pfister, value_set,
};
use crate::ideal::congruence_quotient;
use crate::marshall::{marshall_quotient, MarshallQuotient, UnionFind};
use crate::morphism::{check_morphism, Morphism};
use crate::structure::{DeclaredKind, Structure};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct Extension {
    pub base: Structure,
    pub alpha: usize,
    pub structure: Structure,
}

impl Extension {
    /// Index of `a + bω`.
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a + self.base.size() * b
    }

    pub fn unpair(&self, x: usize) -> (usize, usize) {
        (x % self.base.size(), x / self.base.size())
    }

    /// `a ↦ a + 0ω`.
    pub fn embed(&self, a: usize) -> usize {
        self.pair(a, self.base.zero())
    }

    pub fn omega(&self) -> usize {
        self.pair(self.base.zero(), self.base.one())
    }

    pub fn embedding(&self) -> Morphism {
        Morphism::new(self.base.elements().map(|a| self.embed(a)).collect())
    }

    /// `(1 + α) ∖ {0}` in the base.
    pub fn one_plus_alpha(&self) -> ElemSet {
        let f = &self.base;
        let mut s = f.add(f.one(), self.alpha).clone();
        s.remove(f.zero());
        s
    }
}

fn pair_name(f: &Structure, a: usize, b: usize) -> String {
    let z = f.zero();
    let bn = if b == f.one() {
        "w".to_string()
    } else if b == f.neg(f.one()) {
        "-w".to_string()
    } else {
        format!("{}w", f.name_of(b))
    };
    match (a == z, b == z) {
        (_, true) => f.name_of(a).to_string(),
        (true, false) => bn,
        (false, false) if bn.starts_with('-') => format!("{}{}", f.name_of(a), bn),
        (false, false) => format!("{}+{}", f.name_of(a), bn),
    }
}

/// `F(ω)` with `ω² = α`, for pre-special `F` and `α ∉ {0, 1}`.
pub fn extend(f: &Structure, alpha: usize) -> Result<Extension> {
    if alpha == f.zero() || alpha == f.one() {
        return Err(Error::Reducible(format!("X^2 - {}", f.name_of(alpha))));
    }
    if !is_pre_special(f) {
        return Err(Error::Precondition(format!(
            "{} is not pre-special",
            f.name
        )));
    }
    Ok(extend_unchecked(f, alpha))
}

pub(crate) fn extend_unchecked(f: &Structure, alpha: usize) -> Extension {
    let n = f.size();
    let size = n * n;
    let pair = |a: usize, b: usize| a + n * b;
    let rows: Vec<(Vec<ElemSet>, Vec<ElemSet>)> = (0..size)
        .into_par_iter()
        .map(|x| {
            let (a, b) = (x % n, x / n);
            let mut add = Vec::with_capacity(size);
            let mut mul = Vec::with_capacity(size);
            for y in 0..size {
                let (c, d) = (y % n, y / n);
                let us = f.add(a, c);
                let vs = f.add(b, d);
                add.push(
                    us.iter()
                        .flat_map(|u| vs.iter().map(move |v| pair(u, v)))
                        .collect(),
                );
                let alpha_bd = f.set_mul(&ElemSet::singleton(alpha), f.mul(b, d));
                let us = f.set_add(f.mul(a, c), &alpha_bd);
                let vs = f.set_add(f.mul(a, d), f.mul(b, c));
                mul.push(
                    us.iter()
                        .flat_map(|u| vs.iter().map(move |v| pair(u, v)))
                        .collect(),
                );
            }
            (add, mul)
        })
        .collect();
    let (add, mul): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let structure = Structure::from_tables(
        format!("{}(sqrt {})", f.name, f.name_of(alpha)),
        (0..size).map(|x| pair_name(f, x % n, x / n)).collect(),
        add.concat(),
        mul.concat(),
        (0..size)
            .map(|x| pair(f.neg(x % n), f.neg(x / n)))
            .collect(),
        pair(f.zero(), f.zero()),
        pair(f.one(), f.zero()),
        DeclaredKind::Superring,
    )
    .expect("extension tables are total");
    Extension {
        base: f.clone(),
        alpha,
        structure,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSets {
    /// Enumerated squares of `F(ω)`, including 0.
    pub squares: ElemSet,
    /// `(1+α) + (2)F·ω` as pairs.
    pub squares_closed: ElemSet,
    /// Additive closure of the squares.
    pub sum_squares: ElemSet,
    /// `(1+α) + F·ω` as pairs.
    pub sum_squares_closed: ElemSet,
    /// `1 + α` in the base, 0 included when present.
    pub one_plus_alpha: ElemSet,
    /// `(2)F = ∪ {x + x}` in the base.
    pub two_f: ElemSet,
}

pub fn square_sets(e: &Extension) -> SquareSets {
    let f = &e.base;
    let st = &e.structure;
    let squares = st.squares();
    let sum_squares = st.additive_closure(&squares);
    let one_plus_alpha = f.add(f.one(), e.alpha).clone();
    let mut two_f = ElemSet::new();
    for x in f.elements() {
        two_f.union_with(f.add(x, x));
    }
    let boxed = |ys: &ElemSet| -> ElemSet {
        one_plus_alpha
            .iter()
            .flat_map(|x| ys.iter().map(move |y| e.pair(x, y)))
            .collect()
    };
    SquareSets {
        squares_closed: boxed(&two_f),
        sum_squares_closed: boxed(&ElemSet::full(f.size())),
        squares,
        sum_squares,
        one_plus_alpha,
        two_f,
    }
}

#[derive(Clone, Debug)]
pub struct SQuotient {
    pub structure: Structure,
    /// Base element to class.
    pub projection: Morphism,
    pub reduced: bool,
    /// `-1` lies in the sums of squares of `F(ω)`.
    pub not_formally_real: bool,
}

/// `S_F(ω)` (squares) or `S^red_F(ω)` (sums of squares) on base classes.
pub fn s_quotient(e: &Extension, reduced: bool) -> SQuotient {
    let f = &e.base;
    let st = &e.structure;
    let sq = st.squares();
    let mut m = if reduced {
        st.additive_closure(&sq)
    } else {
        sq
    };
    let not_formally_real = st
        .additive_closure(&st.squares())
        .contains(e.embed(f.neg(f.one())));
    m.remove(st.zero());
    let orbit: Vec<ElemSet> = f.elements().map(|a| st.scale(e.embed(a), &m)).collect();
    let mut uf = UnionFind::new(f.size());
    for a in f.elements() {
        for b in a + 1..f.size() {
            if orbit[a].intersects(&orbit[b]) {
                uf.union(a, b);
            }
        }
    }
    let (class, reps) = uf.classes();
    let mut structure = congruence_quotient(
        f,
        &class,
        &reps,
        format!("S({}, {})", f.name, f.name_of(e.alpha)),
    );
    structure.kind = DeclaredKind::Hyperfield;
    SQuotient {
        structure,
        projection: Morphism::new(class),
        reduced,
        not_formally_real,
    }
}

/// The Marshall quotient of all of `F(ω)` by its nonzero squares.
pub fn literal_square_quotient(e: &Extension) -> Result<MarshallQuotient> {
    let st = &e.structure;
    let mut m = st.squares();
    m.remove(st.zero());
    marshall_quotient(st, &m)
}

/// `∃ s, t ∈ (1+α)∖{0}` with `as = bt`.
pub fn class_eq_direct(e: &Extension, a: usize, b: usize) -> bool {
    let f = &e.base;
    let t = e.one_plus_alpha();
    t.iter()
        .any(|s| t.iter().any(|u| f.mul(a, s).intersects(f.mul(b, u))))
}

#[derive(Clone, Debug)]
pub struct Stage {
    /// Scalar used at this stage, as an element of the previous stage.
    pub alpha: usize,
    pub field: Structure,
    /// Previous stage to this one.
    pub projection: Morphism,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub base: Structure,
    pub alphas: Vec<usize>,
    pub stages: Vec<Stage>,
}

impl Tower {
    pub fn top(&self) -> &Structure {
        self.stages.last().map_or(&self.base, |s| &s.field)
    }

    /// Base element to its class at the top stage.
    pub fn projection(&self) -> Morphism {
        self.stages
            .iter()
            .fold(Morphism::identity(self.base.size()), |acc, st| {
                acc.then(&st.projection)
            })
    }
}

/// Build `S_{F(√α_1, …, √α_n)}` stage by stage.
pub fn iterate_tower(f: &Structure, alphas: &[usize]) -> Result<Tower> {
    if !is_pre_special(f) {
        return Err(Error::Precondition(format!(
            "{} is not pre-special",
            f.name
        )));
    }
    let mut tower = Tower {
        base: f.clone(),
        alphas: alphas.to_vec(),
        stages: vec![],
    };
    for (i, &alpha) in alphas.iter().enumerate() {
        let cur = tower.top().clone();
        let a = tower.projection().apply(alpha);
        if a == cur.zero() || a == cur.one() {
            return Err(Error::DegenerateScalar {
                stage: i + 1,
                alpha: f.name_of(alpha).to_string(),
                class: format!("[{}]", cur.name_of(a)),
            });
        }
        let e = extend(&cur, a)?;
        let q = s_quotient(&e, false);
        tower.stages.push(Stage {
            alpha: a,
            field: q.structure,
            projection: q.projection,
        });
    }
    Ok(tower)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub criterion: bool,
    pub oracle: bool,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.criterion == self.oracle
    }
}

/// `ab ∈ D⟨⟨α_1,…,α_n⟩⟩` against equality of top-stage classes.
pub fn tower_class_eq(t: &Tower, a: usize, b: usize) -> Agreement {
    let f = &t.base;
    let d = value_set(f, &pfister(f, &t.alphas));
    let p = t.projection();
    Agreement {
        criterion: f.mul(a, b).intersects(&d),
        oracle: p.apply(a) == p.apply(b),
    }
}

/// The `as = bt` form of the Pfister criterion.
pub fn tower_class_eq_witnessed(t: &Tower, a: usize, b: usize) -> bool {
    let f = &t.base;
    let d = value_set(f, &pfister(f, &t.alphas));
    d.iter()
        .any(|s| d.iter().any(|u| f.mul(a, s).intersects(f.mul(b, u))))
}

/// `-1 ∉ D⟨⟨α_1,…,α_n⟩⟩` against formal reality of the top stage.
pub fn tower_formally_real(t: &Tower) -> Agreement {
    let f = &t.base;
    let criterion = if t.alphas.is_empty() {
        is_formally_real(f)
    } else {
        !value_set(f, &pfister(f, &t.alphas)).contains(f.neg(f.one()))
    };
    Agreement {
        criterion,
        oracle: is_formally_real(t.top()),
    }
}

/// The equivalent forms of binary isometry of classes in `S_F(ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryIsoVariants {
    /// `⟨[a],[b]⟩ ≡ ⟨[c],[d]⟩` in the quotient.
    pub quotient: bool,
    /// `⟨ar,bs⟩ ≡ ⟨ct,d⟩`.
    pub ii: bool,
    /// `⟨ar,bs⟩ ≡ ⟨c,dt⟩`.
    pub iii: bool,
    /// `⟨a,br⟩ ≡ ⟨cs,dt⟩`.
    pub iv: bool,
    /// `⟨ar,b⟩ ≡ ⟨cs,dt⟩`.
    pub v: bool,
}

impl BinaryIsoVariants {
    pub fn all_equal(&self) -> bool {
        let q = self.quotient;
        self.ii == q && self.iii == q && self.iv == q && self.v == q
    }
}

/// Binary isometry of classes through witnesses `r, s, t ∈ (1+α)∖{0}`,
/// with the quotient oracle for comparison.
pub fn ext_binary_isometric(
    e: &Extension,
    q: &SQuotient,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> BinaryIsoVariants {
    let f = &e.base;
    let t = e.one_plus_alpha().to_vec();
    let m = |x: usize, y: usize| f.mul1(x, y);
    let any3 = |p: &dyn Fn(usize, usize, usize) -> bool| {
        t.iter()
            .any(|&r| t.iter().any(|&s| t.iter().any(|&u| p(r, s, u))))
    };
    let iso = |w: usize, x: usize, y: usize, z: usize| binary_isometric(f, w, x, y, z);
    let k = |x: usize| q.projection.apply(x);
    BinaryIsoVariants {
        quotient: binary_isometric(&q.structure, k(a), k(b), k(c), k(d)),
        ii: any3(&|r, s, u| iso(m(a, r), m(b, s), m(c, u), d)),
        iii: any3(&|r, s, u| iso(m(a, r), m(b, s), c, m(d, u))),
        iv: any3(&|r, s, u| iso(a, m(b, r), m(c, s), m(d, u))),
        v: any3(&|r, s, u| iso(m(a, r), b, m(c, s), m(d, u))),
    }
}

/// An isomorphism between the tops of the towers `[α, β]` and `[β, α]`.
pub fn tower_swap_iso(f: &Structure, alpha: usize, beta: usize) -> Result<Morphism> {
    let t1 = iterate_tower(f, &[alpha, beta])?;
    let t2 = iterate_tower(f, &[beta, alpha])?;
    crate::catalog::find_isomorphism(t1.top(), t2.top()).ok_or_else(|| {
        Error::NoIsomorphism(format!(
            "towers over {} by {} and {} in both orders",
            f.name,
            f.name_of(alpha),
            f.name_of(beta)
        ))
    })
}

/// For every ordering of `alphas`, the isomorphism from the top of the tower
/// in the given order to the top of the permuted tower.
pub fn tower_permutation_isos(
    f: &Structure,
    alphas: &[usize],
) -> Result<Vec<(Vec<usize>, Morphism)>> {
    let reference = iterate_tower(f, alphas)?;
    let mut out = vec![];
    for perm in permutations(alphas.len()) {
        let order: Vec<usize> = perm.iter().map(|&i| alphas[i]).collect();
        let t = iterate_tower(f, &order)?;
        let iso = crate::catalog::find_isomorphism(reference.top(), t.top())
            .ok_or_else(|| Error::NoIsomorphism(format!("tower order {perm:?} over {}", f.name)))?;
        out.push((order, iso));
    }
    Ok(out)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Outcome of each item of the square-set proposition for one `(F, α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFacts {
    /// Sums of two squares of nonzero elements lie in `(1+α) + 2[a₁b₁ + a₂b₂]ω`.
    pub a: bool,
    /// Nonzero sums of squares equal `(1+α) + F·ω`.
    pub b: bool,
    /// Nonzero squares equal `(1+α) + (2)F·ω` without 0.
    pub c: bool,
    /// Squares equal sums of squares iff `(2)F = F`.
    pub d: bool,
    /// `-1` is a sum of squares iff `-1 ∈ 1+α`.
    pub e: bool,
    /// `ω` is not a square.
    pub f: bool,
    /// `F → S_F(ω)` is full and not injective.
    pub g: bool,
    pub g_full: bool,
    pub g_non_injective: bool,
    /// When `-1 ∉ 1+α` and `F` is rooted, `1 + 1 = {1}` in `S_F(ω)`;
    /// `None` when the hypothesis fails.
    pub h: Option<bool>,
    /// Sample failures, at most a few per item.
    pub witnesses: Vec<String>,
}

impl SquareFacts {
    pub fn all_hold(&self) -> bool {
        self.a && self.b && self.c && self.d && self.e && self.f && self.g && self.h != Some(false)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        let mut v = vec![];
        for (ok, name) in [
            (self.a, "a"),
            (self.b, "b"),
            (self.c, "c"),
            (self.d, "d"),
            (self.e, "e"),
            (self.f, "f"),
            (self.g, "g"),
            (self.h != Some(false), "h"),
        ] {
            if !ok {
                v.push(name);
            }
        }
        v
    }
}

/// Check every item as a set computation.
pub fn square_facts(e: &Extension) -> SquareFacts {
    let f = &e.base;
    let st = &e.structure;
    let sets = square_sets(e);
    let z = st.zero();
    let mut witnesses = vec![];
    let without0 = |s: &ElemSet| {
        let mut s = s.clone();
        s.remove(z);
        s
    };

    // (a), n = 1 and 2, over nonzero summands
    let twice = |x: &ElemSet| f.set_add(x, x);
    let rhs = |prod_sum: &ElemSet| -> ElemSet {
        let ys = twice(prod_sum);
        sets.one_plus_alpha
            .iter()
            .flat_map(|x| ys.iter().map(move |y| e.pair(x, y)))
            .collect()
    };
    let nonzero: Vec<usize> = st.nonzero().collect();
    let mut a_ok = true;
    for &p in &nonzero {
        let (a1, b1) = e.unpair(p);
        let l = st.mul(p, p).clone();
        if !l.is_subset(&rhs(f.mul(a1, b1))) {
            a_ok = false;
            if witnesses.len() < 4 {
                witnesses.push(format!("(a) ({})^2", st.name_of(p)));
            }
        }
        for &q in nonzero.iter().filter(|&&q| q >= p) {
            let (a2, b2) = e.unpair(q);
            let l = st.set_add(st.mul(p, p), st.mul(q, q));
            let ps = f.set_add(f.mul(a1, b1), f.mul(a2, b2));
            if !l.is_subset(&rhs(&ps)) {
                a_ok = false;
                if witnesses.len() < 4 {
                    witnesses.push(format!("(a) ({})^2 + ({})^2", st.name_of(p), st.name_of(q)));
                }
            }
        }
    }

    let b = without0(&sets.sum_squares) == without0(&sets.sum_squares_closed);
    if !b {
        witnesses.push("(b) sums of squares differ from (1+α)+F·ω".into());
    }
    let c = without0(&sets.squares) == without0(&sets.squares_closed);
    if !c {
        let missing = without0(&sets.squares_closed).difference(&sets.squares);
        let extra = without0(&sets.squares).difference(&sets.squares_closed);
        witnesses.push(format!(
            "(c) closed form minus squares {}, squares minus closed form {}",
            st.fmt_set(&missing),
            st.fmt_set(&extra)
        ));
    }
    let d = (without0(&sets.squares) == without0(&sets.sum_squares))
        == (sets.two_f == ElemSet::full(f.size()));
    let m1 = e.embed(f.neg(f.one()));
    let e_item = sets.sum_squares.contains(m1) == sets.one_plus_alpha.contains(f.neg(f.one()));
    let f_item = !sets.squares.contains(e.omega());

    let q = s_quotient(e, false);
    let full = check_morphism(f, &q.structure, &q.projection, true);
    let g_full = full.passed;
    if !g_full {
        witnesses.extend(
            full.describe(f)
                .into_iter()
                .take(2)
                .map(|w| format!("(g) {w}")),
        );
    }
    let g_non_injective = !q.projection.is_injective();

    let h = (!sets.one_plus_alpha.contains(f.neg(f.one())) && is_rooted(f)).then(|| {
        let one = q.structure.one();
        *q.structure.add(one, one) == ElemSet::singleton(one)
    });
    SquareFacts {
        a: a_ok,
        b,
        c,
        d,
        e: e_item,
        f: f_item,
        g: g_full && g_non_injective,
        g_full,
        g_non_injective,
        h,
        witnesses,
    }
}

/// Admissible scalars of a pre-special `F`: nonzero and different from 1.
pub fn admissible_scalars(f: &Structure) -> Vec<usize> {
    f.nonzero().filter(|&a| a != f.one()).collect()
}
