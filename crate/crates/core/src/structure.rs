//! Finite carriers with set-valued addition and multiplication.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Declared kind of a structure; used as the default kind when verifying on load.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeclaredKind {
    MultigroupOnly,
    Multiring,
    Hyperring,
    Superring,
    Hyperfield,
    Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Sum,
    Prod,
}

/// A finite multialgebra: carrier `0..size`, set-valued `+` and `·`,
/// negation, and the constants 0 and 1.
#[derive(Clone, PartialEq, Eq)]
pub struct Structure {
    pub name: String,
    names: Vec<String>,
    add: Vec<ElemSet>,
    mul: Vec<ElemSet>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    pub kind: DeclaredKind,
}

impl Structure {
    /// Build from full tables (row-major `a * size + b`).
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        name: impl Into<String>,
        names: Vec<String>,
        add: Vec<ElemSet>,
        mul: Vec<ElemSet>,
        neg: Vec<usize>,
        zero: usize,
        one: usize,
        kind: DeclaredKind,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if add.len() != n * n || mul.len() != n * n || neg.len() != n || zero >= n || one >= n {
            return Err(Error::Precondition(
                "table sizes do not match carrier".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                for (op, t) in [("add", &add), ("mul", &mul)] {
                    let cell = &t[a * n + b];
                    if cell.is_empty() {
                        return Err(Error::EmptyCell {
                            op,
                            a: names[a].clone(),
                            b: names[b].clone(),
                        });
                    }
                    if cell.iter().any(|x| x >= n) {
                        return Err(Error::Precondition("cell member outside carrier".into()));
                    }
                }
            }
            if neg[a] >= n {
                return Err(Error::Precondition("negation outside carrier".into()));
            }
        }
        Ok(Structure {
            name: name.into(),
            names,
            add,
            mul,
            neg,
            zero,
            one,
            kind,
        })
    }

    /// Build from cell functions.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fns(
        name: impl Into<String>,
        names: Vec<String>,
        add: impl Fn(usize, usize) -> ElemSet,
        mul: impl Fn(usize, usize) -> ElemSet,
        neg: impl Fn(usize) -> usize,
        zero: usize,
        one: usize,
        kind: DeclaredKind,
    ) -> Result<Self> {
        let n = names.len();
        let mut at = Vec::with_capacity(n * n);
        let mut mt = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                at.push(add(a, b));
                mt.push(mul(a, b));
            }
        }
        Self::from_tables(
            name,
            names,
            at,
            mt,
            (0..n).map(neg).collect(),
            zero,
            one,
            kind,
        )
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn add(&self, a: usize, b: usize) -> &ElemSet {
        &self.add[a * self.size() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> &ElemSet {
        &self.mul[a * self.size() + b]
    }

    pub fn cell(&self, op: Op, a: usize, b: usize) -> &ElemSet {
        match op {
            Op::Sum => self.add(a, b),
            Op::Prod => self.mul(a, b),
        }
    }

    /// The product when it is a single element (hyperfields, multirings).
    pub fn mul1(&self, a: usize, b: usize) -> usize {
        let c = self.mul(a, b);
        c.only()
            .unwrap_or_else(|| c.first().expect("cells are non-empty"))
    }

    pub fn name_of(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        let z = self.zero;
        (0..self.size()).filter(move |&a| a != z)
    }

    /// Resolve an element name; a leading `-` negates.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Some(i) = self.names.iter().position(|n| n == s) {
            return Ok(i);
        }
        if let Some(rest) = s.strip_prefix('-') {
            if let Ok(i) = self.parse_element(rest) {
                return Ok(self.neg(i));
            }
        }
        Err(Error::UnknownElement(s.to_string()))
    }

    pub fn parse_list(&self, s: &str) -> Result<Vec<usize>> {
        if s.trim().is_empty() {
            return Ok(vec![]);
        }
        s.split(',').map(|t| self.parse_element(t)).collect()
    }

    pub fn set_op(&self, op: Op, xs: &ElemSet, ys: &ElemSet) -> ElemSet {
        let mut r = ElemSet::new();
        for x in xs {
            for y in ys {
                r.union_with(self.cell(op, x, y));
            }
        }
        r
    }

    pub fn set_add(&self, xs: &ElemSet, ys: &ElemSet) -> ElemSet {
        self.set_op(Op::Sum, xs, ys)
    }

    pub fn set_mul(&self, xs: &ElemSet, ys: &ElemSet) -> ElemSet {
        self.set_op(Op::Prod, xs, ys)
    }

    /// `a · X` for a set `X`.
    pub fn scale(&self, a: usize, xs: &ElemSet) -> ElemSet {
        let mut r = ElemSet::new();
        for x in xs {
            r.union_with(self.mul(a, x));
        }
        r
    }

    pub fn neg_set(&self, xs: &ElemSet) -> ElemSet {
        xs.iter().map(|x| self.neg(x)).collect()
    }

    /// Left fold of the set-valued operation; `[]` gives {0} or {1}.
    pub fn fold(&self, op: Op, tuple: &[usize]) -> ElemSet {
        let mut acc = ElemSet::singleton(match op {
            Op::Sum => self.zero,
            Op::Prod => self.one,
        });
        for &t in tuple {
            acc = self.set_op(op, &acc, &ElemSet::singleton(t));
        }
        acc
    }

    pub fn fold_sum(&self, tuple: &[usize]) -> ElemSet {
        self.fold(Op::Sum, tuple)
    }

    /// All squares `a·a`.
    pub fn squares(&self) -> ElemSet {
        let mut r = ElemSet::new();
        for a in self.elements() {
            r.union_with(self.mul(a, a));
        }
        r
    }

    /// Closure of `seed` under addition.
    pub fn additive_closure(&self, seed: &ElemSet) -> ElemSet {
        let mut cur = seed.clone();
        loop {
            let next = cur.union(&self.set_add(&cur, &cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Closure of `seed` under multiplication.
    pub fn multiplicative_closure(&self, seed: &ElemSet) -> ElemSet {
        let mut cur = seed.clone();
        loop {
            let next = cur.union(&self.set_mul(&cur, &cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Sums of squares, including 0 when 0 is a sum of squares.
    pub fn sum_of_squares(&self) -> ElemSet {
        self.additive_closure(&self.squares())
    }

    /// True when every multiplication cell is a singleton.
    pub fn mul_single_valued(&self) -> bool {
        self.mul.iter().all(|c| c.len() == 1)
    }

    /// Relabel by a permutation: new index `perm[old]`.
    pub fn permuted(&self, perm: &[usize]) -> Structure {
        let n = self.size();
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let map = |s: &ElemSet| s.iter().map(|x| perm[x]).collect::<ElemSet>();
        Structure::from_fns(
            self.name.clone(),
            (0..n).map(|i| self.names[inv[i]].clone()).collect(),
            |a, b| map(self.add(inv[a], inv[b])),
            |a, b| map(self.mul(inv[a], inv[b])),
            |a| perm[self.neg(inv[a])],
            perm[self.zero],
            perm[self.one],
            self.kind,
        )
        .expect("relabeling preserves validity")
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.size());
        self.names = names;
    }

    pub fn fmt_set(&self, s: &ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|x| self.name_of(x)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn name_index(&self) -> HashMap<&str, usize> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure({}, {} elements)", self.name, self.size())
    }
}
