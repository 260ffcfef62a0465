//! Polynomials over a finite superring.
//!
//! The sum and product of two polynomials are sets of polynomials defined
//! coefficientwise, so every result is a box: a list of coefficient sets whose
//! members are all polynomials with coefficients drawn from the sets.

use crate::axioms::inverses;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::structure::{DeclaredKind, Op, Structure};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly {
    /// Coefficient of `X^i` at position `i`; no trailing zeros.
    pub coeffs: Vec<usize>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn new(s: &Structure, mut coeffs: Vec<usize>) -> Poly {
        while coeffs.last() == Some(&s.zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(s: &Structure, c: usize) -> Poly {
        Poly::new(s, vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(s: &Structure, c: usize, k: usize) -> Poly {
        let mut v = vec![s.zero(); k + 1];
        v[k] = c;
        Poly::new(s, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, s: &Structure, i: usize) -> usize {
        self.coeffs.get(i).copied().unwrap_or(s.zero())
    }

    pub fn leading(&self) -> Option<usize> {
        self.coeffs.last().copied()
    }

    pub fn neg(&self, s: &Structure) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| s.neg(c)).collect(),
        }
    }

    /// Index `Σ c_i·|F|^i` among polynomials of degree `< len`.
    pub fn index(&self, s: &Structure) -> usize {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * s.size() + c)
    }

    pub fn from_index(s: &Structure, mut idx: usize, len: usize) -> Poly {
        let n = s.size();
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(idx % n);
            idx /= n;
        }
        Poly::new(s, v)
    }

    pub fn display(&self, s: &Structure, var: &str) -> String {
        if self.is_zero() {
            return s.name_of(s.zero()).to_string();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == s.zero() {
                continue;
            }
            let name = s.name_of(c);
            let (neg, body) = match name.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, name),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(body);
            } else if c == s.one() || (neg && s.neg(c) == s.one()) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }
}

/// A set of polynomials given by one coefficient set per exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxPoly {
    pub coeffs: Vec<ElemSet>,
}

impl BoxPoly {
    pub fn singleton(p: &Poly) -> BoxPoly {
        BoxPoly {
            coeffs: p.coeffs.iter().map(|&c| ElemSet::singleton(c)).collect(),
        }
    }

    fn trimmed(s: &Structure, mut coeffs: Vec<ElemSet>) -> BoxPoly {
        let z = ElemSet::singleton(s.zero());
        while coeffs.last() == Some(&z) {
            coeffs.pop();
        }
        BoxPoly { coeffs }
    }

    pub fn set(&self, s: &Structure, i: usize) -> ElemSet {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| ElemSet::singleton(s.zero()))
    }

    pub fn contains(&self, s: &Structure, t: &Poly) -> bool {
        let len = self.coeffs.len().max(t.coeffs.len());
        (0..len).all(|i| self.set(s, i).contains(t.coeff(s, i)))
    }

    /// Number of members.
    pub fn count(&self) -> u128 {
        self.coeffs.iter().map(|c| c.len() as u128).product()
    }

    /// Members in lexicographic order of coefficient indices (constant term
    /// varying slowest).
    pub fn members<'a>(&'a self, s: &'a Structure) -> impl Iterator<Item = Poly> + 'a {
        let sets: Vec<Vec<usize>> = self.coeffs.iter().map(|c| c.to_vec()).collect();
        let mut pos = vec![0usize; sets.len()];
        let mut done = sets.iter().any(|v| v.is_empty());
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let p = Poly::new(s, pos.iter().zip(&sets).map(|(&k, v)| v[k]).collect());
            done = true;
            for i in (0..sets.len()).rev() {
                pos[i] += 1;
                if pos[i] < sets[i].len() {
                    done = false;
                    break;
                }
                pos[i] = 0;
            }
            Some(p)
        })
    }

    /// Coefficientwise sum of two boxes; a box again since coefficients are
    /// independent.
    pub fn add(&self, s: &Structure, other: &BoxPoly) -> BoxPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        BoxPoly::trimmed(
            s,
            (0..len)
                .map(|i| s.set_add(&self.set(s, i), &other.set(s, i)))
                .collect(),
        )
    }

    /// `c·X^k` times every member.
    pub fn scale_shift(&self, s: &Structure, c: usize, k: usize) -> BoxPoly {
        let mut v = vec![ElemSet::singleton(s.zero()); k];
        v.extend(self.coeffs.iter().map(|x| s.scale(c, x)));
        BoxPoly::trimmed(s, v)
    }

    pub fn neg(&self, s: &Structure) -> BoxPoly {
        BoxPoly {
            coeffs: self.coeffs.iter().map(|x| s.neg_set(x)).collect(),
        }
    }

    /// Degree bounds over nonzero members, `None` if the box is `{0}`.
    pub fn degree_range(&self, s: &Structure) -> Option<(usize, usize)> {
        let z = s.zero();
        let max = (0..self.coeffs.len())
            .rev()
            .find(|&i| self.coeffs[i].iter().any(|c| c != z))?;
        // a member of degree d needs a nonzero choice at d and zeros above
        let min = (0..=max)
            .find(|&d| {
                self.coeffs[d].iter().any(|c| c != z)
                    && (d + 1..self.coeffs.len()).all(|j| self.coeffs[j].contains(z))
            })
            .unwrap_or(max);
        Some((min, max))
    }

    /// Lexicographically smallest member.
    pub fn first(&self, s: &Structure) -> Poly {
        Poly::new(s, self.coeffs.iter().map(|c| c.first().unwrap()).collect())
    }
}

/// `P + Q`.
pub fn box_add(s: &Structure, p: &Poly, q: &Poly) -> BoxPoly {
    BoxPoly::singleton(p).add(s, &BoxPoly::singleton(q))
}

/// `P · Q`: coefficient `n` is the sum-set of `a_i b_{n-i}`.
pub fn box_mul(s: &Structure, p: &Poly, q: &Poly) -> BoxPoly {
    if p.is_zero() || q.is_zero() {
        return BoxPoly { coeffs: vec![] };
    }
    let len = p.coeffs.len() + q.coeffs.len() - 1;
    let coeffs = (0..len)
        .map(|n| {
            let mut acc = ElemSet::singleton(s.zero());
            for i in 0..=n {
                if i < p.coeffs.len() && n - i < q.coeffs.len() {
                    acc = s.set_add(&acc, s.mul(p.coeffs[i], q.coeffs[n - i]));
                }
            }
            acc
        })
        .collect();
    BoxPoly::trimmed(s, coeffs)
}

/// Degree bounds satisfied by every nonzero member of `P op Q`.
pub fn degree_bounds(s: &Structure, p: &Poly, q: &Poly, op: Op) -> Result<(usize, usize)> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Precondition(
            "degree bounds need nonzero inputs".into(),
        ));
    }
    let b = match op {
        Op::Sum => box_add(s, p, q),
        Op::Prod => box_mul(s, p, q),
    };
    b.degree_range(s)
        .ok_or_else(|| Error::Precondition("result is the zero polynomial only".into()))
}

/// `f(a) = a_0 + a_1·a + … + a_n·a^n` as a set.
pub fn evaluate(s: &Structure, f: &Poly, a: usize) -> ElemSet {
    let mut acc = ElemSet::singleton(s.zero());
    let mut power = ElemSet::singleton(s.one());
    for (i, &c) in f.coeffs.iter().enumerate() {
        if i > 0 {
            power = s.set_mul(&power, &ElemSet::singleton(a));
        }
        acc = s.set_add(&acc, &s.scale(c, &power));
    }
    acc
}

pub fn roots(s: &Structure, f: &Poly) -> ElemSet {
    s.elements()
        .filter(|&a| evaluate(s, f, a).contains(s.zero()))
        .collect()
}

/// A `g` of degree `deg f - 1` with `f ∈ (X - α)·g`, searched by synthetic
/// division from the top coefficient with backtracking.
pub fn effective_root_witness(s: &Structure, f: &Poly, alpha: usize) -> Option<Poly> {
    let n = f.degree()?;
    if n == 0 {
        return None;
    }
    let m_alpha = s.neg(alpha);
    // g has coefficients g_0..g_{n-1}; f_k ∈ g_{k-1} + (-α)g_k, f_n ∈ 1·g_{n-1}
    let mut g = vec![s.zero(); n];
    fn go(s: &Structure, f: &Poly, m_alpha: usize, g: &mut Vec<usize>, k: usize) -> bool {
        // choose g_{k-1} for coefficient k, from k = n down to 1
        let n = g.len();
        if k == 0 {
            return s.mul(m_alpha, g[0]).contains(f.coeff(s, 0));
        }
        let upper = if k == n {
            ElemSet::singleton(s.zero())
        } else {
            s.mul(m_alpha, g[k]).clone()
        };
        for c in s.elements() {
            if k == n && c == s.zero() {
                continue;
            }
            if s.set_add(s.mul(s.one(), c), &upper).contains(f.coeff(s, k)) {
                g[k - 1] = c;
                if go(s, f, m_alpha, g, k - 1) {
                    return true;
                }
            }
        }
        false
    }
    if !go(s, f, m_alpha, &mut g, n) {
        return None;
    }
    let g = Poly::new(s, g);
    let x_minus = Poly::new(s, vec![m_alpha, s.one()]);
    debug_assert!(box_mul(s, &x_minus, &g).contains(s, f));
    Some(g)
}

/// `f ∈ q·g + r`, checked coefficientwise.
pub fn division_holds(s: &Structure, f: &Poly, g: &Poly, q: &Poly, r: &Poly) -> bool {
    let qg = box_mul(s, q, g);
    let rhs = qg.add(s, &BoxPoly::singleton(r));
    rhs.contains(s, f) && (r.is_zero() || r.degree() < g.degree())
}

/// Division with remainder following the inductive construction: subtract
/// `c·X^{n-m}·g` with `c ∈ a_n·b_m^{-1}` and recurse on the smallest member of
/// the difference whose degree dropped.
pub fn euclid_divide(s: &Structure, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    let m = g.degree().ok_or(Error::ZeroDivisor)?;
    let Some(n) = f.degree() else {
        return Ok((Poly::zero(), Poly::zero()));
    };
    if n < m {
        return Ok((Poly::zero(), f.clone()));
    }
    let (an, bm) = (f.leading().unwrap(), g.leading().unwrap());
    let g_box = BoxPoly::singleton(g);
    for binv in inverses(s, bm) {
        for c in s.mul(an, binv) {
            let sub = g_box.scale_shift(s, c, n - m).neg(s);
            let diff = BoxPoly::singleton(f).add(s, &sub);
            if !diff.set(s, n).contains(s.zero()) {
                continue;
            }
            let mut coeffs: Vec<ElemSet> = diff.coeffs.clone();
            coeffs.truncate(n);
            let t = BoxPoly { coeffs }.first(s);
            let (q1, r) = euclid_divide(s, &t, g)?;
            let mut qc = q1.coeffs.clone();
            qc.resize(n - m + 1, s.zero());
            qc[n - m] = c;
            let q = Poly::new(s, qc);
            if division_holds(s, f, g, &q, &r) {
                return Ok((q, r));
            }
        }
    }
    Err(Error::Precondition(format!(
        "no division step for leading coefficients ({}, {})",
        s.name_of(an),
        s.name_of(bm)
    )))
}

/// Polynomials of exact degree `d` in lexicographic index order.
fn polys_of_degree(s: &Structure, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let n = s.size();
    let lower = n.pow(d as u32);
    (0..lower * n)
        .map(move |i| Poly::from_index(s, i, d + 1))
        .filter(move |p| p.degree() == Some(d))
}

/// A factorisation `f ∈ g·h` with `deg g, deg h ≥ 1`, if one exists.
pub fn find_factorization(s: &Structure, f: &Poly) -> Result<Option<(Poly, Poly)>> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::Precondition("degree must be at least 1".into())),
        Some(n) => n,
    };
    for d in 1..=n / 2 {
        let gs: Vec<Poly> = polys_of_degree(s, d).collect();
        let found = gs.par_iter().find_map_first(|g| {
            polys_of_degree(s, n - d)
                .find(|h| box_mul(s, g, h).contains(s, f))
                .map(|h| (g.clone(), h))
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub by_factorization: bool,
    /// Root-free; only a criterion for degree 2 and 3.
    pub root_free: bool,
}

/// Irreducibility by exhaustive factorisation search, with the root test as
/// a second route.
pub fn irreducibility(s: &Structure, f: &Poly) -> Result<Irreducibility> {
    Ok(Irreducibility {
        by_factorization: find_factorization(s, f)?.is_none(),
        root_free: roots(s, f).is_empty(),
    })
}

pub fn is_irreducible(s: &Structure, f: &Poly) -> Result<bool> {
    Ok(find_factorization(s, f)?.is_none())
}

/// All remainders `r` with `deg r ≤ n` such that some member of `b` lies in
/// `q·p + r` for some `q`.
pub fn residues(s: &Structure, b: &BoxPoly, p: &Poly) -> BTreeSet<Poly> {
    let mut out = BTreeSet::new();
    let np = p.degree().expect("nonzero modulus");
    let top = b.coeffs.len();
    let qmax = top.saturating_sub(np);
    let nq = s.size().pow(qmax as u32);
    for qi in 0..nq {
        let q = Poly::from_index(s, qi, qmax);
        let qp = box_mul(s, &q, p);
        let len = top.max(qp.coeffs.len());
        let mut sets = vec![];
        let mut ok = true;
        for i in 0..len {
            let (bi, ti) = (b.set(s, i), qp.set(s, i));
            if i >= np {
                if !bi.intersects(&ti) {
                    ok = false;
                    break;
                }
            } else {
                let mut r = ElemSet::new();
                for h in &bi {
                    for t in &ti {
                        r.union_with(s.add(h, s.neg(t)));
                    }
                }
                sets.push(r);
            }
        }
        if ok {
            out.extend(BoxPoly { coeffs: sets }.members(s));
        }
    }
    out
}

/// `F[X]/⟨p⟩` with one element per polynomial of degree `< deg p`.
#[derive(Clone, Debug)]
pub struct PolyQuotient {
    pub structure: Structure,
    pub modulus: Poly,
    /// Index of the class of `X`.
    pub x: usize,
}

impl PolyQuotient {
    pub fn element(&self, base: &Structure, r: &Poly) -> usize {
        r.index(base)
    }

    /// The representative of element `i`.
    pub fn representative(&self, base: &Structure, i: usize) -> Poly {
        Poly::from_index(base, i, self.modulus.degree().unwrap())
    }

    /// `p` with coefficients moved into the quotient.
    pub fn lift(&self, base: &Structure, f: &Poly) -> Poly {
        Poly::new(
            &self.structure,
            f.coeffs
                .iter()
                .map(|&c| Poly::constant(base, c).index(base))
                .collect(),
        )
    }
}

/// Quotient superfield by an irreducible `p`: addition coefficientwise,
/// multiplication collecting every remainder of every member of the product box.
pub fn quotient_superfield(s: &Structure, p: &Poly) -> Result<PolyQuotient> {
    let np = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Precondition("modulus must have degree at least 1".into()))?;
    if !is_irreducible(s, p)? {
        return Err(Error::Reducible(p.display(s, "X")));
    }
    Ok(quotient_unchecked(s, p, np))
}

fn quotient_unchecked(s: &Structure, p: &Poly, np: usize) -> PolyQuotient {
    let size = s.size().pow(np as u32);
    let reps: Vec<Poly> = (0..size).map(|i| Poly::from_index(s, i, np)).collect();
    let idx = |q: &Poly| q.index(s);
    let rows: Vec<(Vec<ElemSet>, Vec<ElemSet>)> = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut add = Vec::with_capacity(size);
            let mut mul = Vec::with_capacity(size);
            for b in 0..size {
                add.push(
                    box_add(s, &reps[a], &reps[b])
                        .members(s)
                        .map(|t| idx(&t))
                        .collect(),
                );
                let prod = box_mul(s, &reps[a], &reps[b]);
                mul.push(residues(s, &prod, p).iter().map(idx).collect());
            }
            (add, mul)
        })
        .collect();
    let (add, mul): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let structure = Structure::from_tables(
        format!("{}[X]/({})", s.name, p.display(s, "X")),
        reps.iter().map(|r| r.display(s, "x")).collect(),
        add.concat(),
        mul.concat(),
        reps.iter().map(|r| idx(&r.neg(s))).collect(),
        idx(&Poly::zero()),
        idx(&Poly::constant(s, s.one())),
        DeclaredKind::Superring,
    )
    .expect("quotient tables are total");
    PolyQuotient {
        structure,
        modulus: p.clone(),
        x: if np >= 2 {
            idx(&Poly::monomial(s, s.one(), 1))
        } else {
            0
        },
    }
}

/// A nonzero member of `p - p` of degree below `deg p`: under literal coset
/// equality it lies in `⟨p⟩` and collapses the quotient.
pub fn literal_coset_collapse(s: &Structure, p: &Poly) -> Option<Poly> {
    let np = p.degree()?;
    let b = box_add(s, p, &p.neg(s));
    let mut coeffs = b.coeffs;
    for c in coeffs.iter_mut().skip(np) {
        if !c.contains(s.zero()) {
            return None;
        }
        *c = ElemSet::singleton(s.zero());
    }
    BoxPoly { coeffs }.members(s).find(|t| !t.is_zero())
}

/// Parse `"X^2 + a*X - 1"` or a JSON array of coefficient names
/// (`["-1", "0", "1"]`, constant term first).
pub fn parse_poly(s: &Structure, text: &str) -> Result<Poly> {
    let text = text.trim();
    if text.starts_with('[') {
        let names: Vec<String> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let coeffs = names
            .iter()
            .map(|n| s.parse_element(n))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Poly::new(s, coeffs));
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut chunks = vec![];
    let mut cur = String::new();
    for ch in compact.chars() {
        let splits = (ch == '+' || ch == '-')
            && !cur.is_empty()
            && !cur.ends_with('*')
            && !cur.ends_with('^');
        if splits {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        chunks.push(cur);
    }
    let mut coeffs: Vec<Option<usize>> = vec![];
    for chunk in chunks {
        let (negate, body) = match chunk.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, chunk.strip_prefix('+').unwrap_or(&chunk)),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let (coef, exp) = match body.find(['X', 'x']) {
            None => (s.parse_element(body)?, 0),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    s.one()
                } else {
                    s.parse_element(c)?
                };
                let rest = &body[pos + 1..];
                let e = match rest.strip_prefix('^') {
                    Some(e) => e
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {body:?}")))?,
                    None if rest.is_empty() => 1,
                    None => return Err(Error::Parse(format!("bad term {body:?}"))),
                };
                (c, e)
            }
        };
        let coef = if negate { s.neg(coef) } else { coef };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, None);
        }
        if coeffs[exp].replace(coef).is_some() {
            return Err(Error::Parse(format!("repeated exponent {exp} in {text:?}")));
        }
    }
    Ok(Poly::new(
        s,
        coeffs.into_iter().map(|c| c.unwrap_or(s.zero())).collect(),
    ))
}
