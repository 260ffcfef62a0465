//! Named structures and the isomorphism search.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::marshall;
use crate::morphism::Morphism;
use crate::structure::{DeclaredKind, Structure};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogKey {
    K,
    Q2,
    Hp(usize),
    Kaleidoscope(usize),
    Fan(usize),
    ModRing(usize),
    FieldSquareClasses(usize),
}

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl CatalogKey {
    pub fn validate(self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidKey(format!("{self}: {m}")));
        match self {
            CatalogKey::Hp(p) if !is_prime(p) => bad("parameter must be prime"),
            CatalogKey::Fan(q) if q < 2 || !q.is_power_of_two() => {
                bad("parameter must be a power of 2, at least 2")
            }
            CatalogKey::FieldSquareClasses(p) if p == 2 || !is_prime(p) => {
                bad("parameter must be an odd prime")
            }
            CatalogKey::ModRing(n) if n < 2 => bad("modulus must be at least 2"),
            CatalogKey::Fan(q) if q > 1 << 12 => bad("too many generators"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::K => write!(f, "K"),
            CatalogKey::Q2 => write!(f, "Q2"),
            CatalogKey::Hp(p) => write!(f, "H{p}"),
            CatalogKey::Kaleidoscope(n) => write!(f, "X{n}"),
            CatalogKey::Fan(q) => write!(f, "FAN{q}"),
            CatalogKey::ModRing(n) => write!(f, "Zmod{n}"),
            CatalogKey::FieldSquareClasses(p) => write!(f, "SQ{p}"),
        }
    }
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<CatalogKey> {
        let num = |rest: &str| -> Result<usize> {
            rest.parse().map_err(|_| Error::InvalidKey(s.to_string()))
        };
        let key = if s == "K" {
            CatalogKey::K
        } else if s == "Q2" {
            CatalogKey::Q2
        } else if let Some(r) = s.strip_prefix("FAN") {
            CatalogKey::Fan(num(r)?)
        } else if let Some(r) = s.strip_prefix("Zmod") {
            CatalogKey::ModRing(num(r)?)
        } else if let Some(r) = s.strip_prefix("SQ") {
            CatalogKey::FieldSquareClasses(num(r)?)
        } else if let Some(r) = s.strip_prefix('H') {
            CatalogKey::Hp(num(r)?)
        } else if let Some(r) = s.strip_prefix('X') {
            CatalogKey::Kaleidoscope(num(r)?)
        } else {
            return Err(Error::InvalidKey(s.to_string()));
        };
        key.validate()?;
        Ok(key)
    }
}

/// Construct a catalog structure.
pub fn make(key: CatalogKey) -> Result<Structure> {
    key.validate()?;
    let s = match key {
        CatalogKey::K => krasner(),
        CatalogKey::Q2 => fan(2, "Q2"),
        CatalogKey::Hp(p) => h_multifield(p),
        CatalogKey::Kaleidoscope(n) => kaleidoscope(n),
        CatalogKey::Fan(q) => fan(q, &key.to_string()),
        CatalogKey::ModRing(n) => mod_ring(n),
        CatalogKey::FieldSquareClasses(p) => {
            let z = mod_ring(p);
            let sq = z.squares().difference(&ElemSet::singleton(z.zero()));
            let mut q = marshall::marshall_quotient(&z, &sq)?.quotient;
            q.name = key.to_string();
            q.kind = DeclaredKind::Hyperfield;
            q
        }
    };
    Ok(s)
}

/// Keys of the standard catalog listing.
pub fn standard_keys() -> Vec<CatalogKey> {
    vec![
        CatalogKey::K,
        CatalogKey::Q2,
        CatalogKey::Hp(2),
        CatalogKey::Hp(3),
        CatalogKey::Hp(5),
        CatalogKey::Kaleidoscope(1),
        CatalogKey::Kaleidoscope(2),
        CatalogKey::Kaleidoscope(3),
        CatalogKey::Fan(4),
        CatalogKey::Fan(8),
        CatalogKey::Fan(16),
        CatalogKey::ModRing(4),
        CatalogKey::ModRing(5),
        CatalogKey::ModRing(6),
        CatalogKey::FieldSquareClasses(3),
        CatalogKey::FieldSquareClasses(5),
        CatalogKey::FieldSquareClasses(7),
        CatalogKey::FieldSquareClasses(11),
    ]
}

fn krasner() -> Structure {
    let names = vec!["0".to_string(), "1".to_string()];
    Structure::from_fns(
        "K",
        names,
        |a, b| match (a, b) {
            (1, 1) => ElemSet::full(2),
            _ => ElemSet::singleton(a | b),
        },
        |a, b| ElemSet::singleton(a & b),
        |a| a,
        0,
        1,
        DeclaredKind::Hyperfield,
    )
    .expect("valid tables")
}

/// Fan hyperfield on `q = 2^k` nonzero elements. Index 0 is zero, nonzero
/// elements are `1 + 2m + s` with `m` a mask over the `k-1` named generators
/// and `s` the sign bit.
fn fan(q: usize, name: &str) -> Structure {
    let n = q + 1;
    let letters = "abcdefghijklmnopqrstuvwxyz".as_bytes();
    let mut names = vec!["0".to_string()];
    for m in 0..q / 2 {
        let mut base: String = (0..)
            .take_while(|i| m >> i != 0)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| letters[i] as char)
            .collect();
        if base.is_empty() {
            base = "1".into();
        }
        names.push(base.clone());
        names.push(format!("-{base}"));
    }
    let neg = |a: usize| if a == 0 { 0 } else { 1 + ((a - 1) ^ 1) };
    Structure::from_fns(
        name,
        names,
        |a, b| {
            if a == 0 {
                ElemSet::singleton(b)
            } else if b == 0 || a == b {
                ElemSet::singleton(a)
            } else if b == neg(a) {
                ElemSet::full(n)
            } else {
                [a, b].into_iter().collect()
            }
        },
        |a, b| {
            if a == 0 || b == 0 {
                ElemSet::singleton(0)
            } else {
                ElemSet::singleton(1 + ((a - 1) ^ (b - 1)))
            }
        },
        neg,
        0,
        1,
        DeclaredKind::Hyperfield,
    )
    .expect("valid tables")
}

fn h_multifield(p: usize) -> Structure {
    Structure::from_fns(
        format!("H{p}"),
        (0..p).map(|i| i.to_string()).collect(),
        |a, b| {
            if a == 0 {
                ElemSet::singleton(b)
            } else if b == 0 {
                ElemSet::singleton(a)
            } else if a == b {
                ElemSet::full(p)
            } else {
                [a, b].into_iter().collect()
            }
        },
        |a, b| ElemSet::singleton(a * b % p),
        |a| a,
        0,
        1,
        DeclaredKind::Hyperfield,
    )
    .expect("valid tables")
}

/// Kaleidoscope `X_n`, elements ordered `0, 1, -1, 2, -2, …`.
fn kaleidoscope(n: usize) -> Structure {
    let val = |i: usize| -> i64 {
        if i == 0 {
            0
        } else if i % 2 == 1 {
            (i as i64 + 1) / 2
        } else {
            -(i as i64 / 2)
        }
    };
    let idx = |v: i64| -> usize {
        if v == 0 {
            0
        } else if v > 0 {
            (2 * v - 1) as usize
        } else {
            (-2 * v) as usize
        }
    };
    let size = 2 * n + 1;
    Structure::from_fns(
        format!("X{n}"),
        (0..size).map(|i| val(i).to_string()).collect(),
        |a, b| {
            let (x, y) = (val(a), val(b));
            if y == -x {
                (-x.abs()..=x.abs()).map(idx).collect()
            } else if y.abs() <= x.abs() {
                ElemSet::singleton(a)
            } else {
                ElemSet::singleton(b)
            }
        },
        |a, b| {
            let (x, y) = (val(a), val(b));
            if x == 0 || y == 0 {
                ElemSet::singleton(0)
            } else {
                ElemSet::singleton(idx((x * y).signum() * x.abs().max(y.abs())))
            }
        },
        |a| idx(-val(a)),
        0,
        1,
        DeclaredKind::Multiring,
    )
    .expect("valid tables")
}

fn mod_ring(n: usize) -> Structure {
    Structure::from_fns(
        format!("Zmod{n}"),
        (0..n).map(|i| i.to_string()).collect(),
        |a, b| ElemSet::singleton((a + b) % n),
        |a, b| ElemSet::singleton(a * b % n),
        |a| (n - a) % n,
        0,
        1,
        DeclaredKind::Ring,
    )
    .expect("valid tables")
}

/// Value of the tropical hyperfield on ℤ ∪ {∞}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Trop {
    Fin(i64),
    Inf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TropOp {
    Plus,
    Times,
}

/// A tropical cell: listed values plus a flag when the true set is
/// unbounded above and was truncated to the probe window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropCell {
    pub values: Vec<Trop>,
    pub unbounded_above: bool,
}

pub const TROPICAL_WINDOW: i64 = 16;
const TROPICAL_BOUND: i64 = 1_000_000;

/// One cell of the tropical hyperfield with valuation-style addition.
pub fn tropical_probe(g: Trop, h: Trop, op: TropOp) -> Result<TropCell> {
    for v in [g, h] {
        if let Trop::Fin(x) = v {
            if x.abs() > TROPICAL_BOUND {
                return Err(Error::Precondition(format!(
                    "|{x}| exceeds {TROPICAL_BOUND}"
                )));
            }
        }
    }
    let single = |v| TropCell {
        values: vec![v],
        unbounded_above: false,
    };
    Ok(match op {
        TropOp::Times => match (g, h) {
            (Trop::Fin(x), Trop::Fin(y)) => single(Trop::Fin(x + y)),
            _ => single(Trop::Inf),
        },
        TropOp::Plus if g != h => single(g.min(h)),
        TropOp::Plus => match g {
            Trop::Inf => single(Trop::Inf),
            Trop::Fin(x) => TropCell {
                values: (x..x + TROPICAL_WINDOW)
                    .map(Trop::Fin)
                    .chain([Trop::Inf])
                    .collect(),
                unbounded_above: true,
            },
        },
    })
}

/// Search for a full isomorphism `A → B` fixing 0 and 1 and commuting with
/// negation. Candidates are tried with the same index first, then in
/// ascending order, so the result is deterministic.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Option<Morphism> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let sig = |s: &Structure, x: usize| {
        (
            s.add(x, x).len(),
            s.mul(x, x).len(),
            s.add(x, s.one()).len(),
            s.add(x, s.neg(x)).len(),
            x == s.neg(x),
            s.mul(x, x).contains(s.one()),
            (0..s.size()).map(|y| s.add(x, y).len()).max(),
        )
    };
    let sa: Vec<_> = (0..n).map(|x| sig(a, x)).collect();
    let sb: Vec<_> = (0..n).map(|x| sig(b, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let fixed = [(a.zero(), b.zero()), (a.one(), b.one())];
    for &(x, y) in &fixed {
        if map[x] != usize::MAX && map[x] != y {
            return None;
        }
        if sa[x] != sb[y] {
            return None;
        }
        map[x] = y;
        used[y] = true;
    }
    for &(x, y) in &fixed {
        let (nx, ny) = (a.neg(x), b.neg(y));
        if map[nx] == usize::MAX && !used[ny] {
            map[nx] = ny;
            used[ny] = true;
        } else if map[nx] != ny {
            return None;
        }
    }
    let order: Vec<usize> = (0..n).collect();
    if extend(a, b, &sa, &sb, &order, 0, &mut map, &mut used) {
        Some(Morphism::new(map))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend<T: PartialEq>(
    a: &Structure,
    b: &Structure,
    sa: &[T],
    sb: &[T],
    order: &[usize],
    pos: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = a.size();
    let Some(i) = (pos..n).find(|&i| map[order[i]] == usize::MAX) else {
        return is_iso(a, b, map);
    };
    let x = order[i];
    let nx = a.neg(x);
    let candidates = std::iter::once(x).chain((0..n).filter(move |&y| y != x));
    for y in candidates {
        let ny = b.neg(y);
        if used[y] || sa[x] != sb[y] || (nx == x) != (ny == y) {
            continue;
        }
        if nx != x && (used[ny] || map[nx] != usize::MAX) {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if nx != x {
            map[nx] = ny;
            used[ny] = true;
        }
        if consistent(a, b, map, x)
            && (nx == x || consistent(a, b, map, nx))
            && extend(a, b, sa, sb, order, i + 1, map, used)
        {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
        if nx != x {
            map[nx] = usize::MAX;
            used[ny] = false;
        }
    }
    false
}

/// Check the cells involving `x` against already-assigned elements.
fn consistent(a: &Structure, b: &Structure, map: &[usize], x: usize) -> bool {
    let n = a.size();
    for y in 0..n {
        if map[y] == usize::MAX {
            continue;
        }
        for (ca, cb) in [
            (a.add(x, y), b.add(map[x], map[y])),
            (a.mul(x, y), b.mul(map[x], map[y])),
        ] {
            if ca.len() != cb.len() {
                return false;
            }
            for c in ca {
                if map[c] != usize::MAX && !cb.contains(map[c]) {
                    return false;
                }
            }
        }
    }
    true
}

fn is_iso(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    let img = |s: &ElemSet| s.iter().map(|c| map[c]).collect::<ElemSet>();
    (0..a.size()).all(|x| {
        map[a.neg(x)] == b.neg(map[x])
            && (0..a.size()).all(|y| {
                img(a.add(x, y)) == *b.add(map[x], map[y])
                    && img(a.mul(x, y)) == *b.mul(map[x], map[y])
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_axioms, Kind};

    #[test]
    fn krasner_table() {
        let k = make(CatalogKey::K).unwrap();
        assert_eq!(k.add(1, 1).to_vec(), vec![0, 1]);
    }

    #[test]
    fn h3_table() {
        let h = make(CatalogKey::Hp(3)).unwrap();
        assert_eq!(h.add(1, 2).to_vec(), vec![1, 2]);
        assert_eq!(h.add(1, 1).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn fan_names_and_sums() {
        let f = make(CatalogKey::Fan(8)).unwrap();
        let names: Vec<&str> = f.names().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, ["0", "1", "-1", "a", "-a", "b", "-b", "ab", "-ab"]);
        let a = f.parse_element("a").unwrap();
        let b = f.parse_element("b").unwrap();
        assert_eq!(f.add(a, a).to_vec(), vec![a]);
        assert_eq!(f.add(a, b).to_vec(), vec![a, b]);
        assert_eq!(f.add(a, f.neg(a)).len(), 9);
        assert_eq!(f.mul1(a, b), f.parse_element("ab").unwrap());
    }

    #[test]
    fn catalog_keys_round_trip() {
        for k in standard_keys() {
            assert_eq!(k.to_string().parse::<CatalogKey>().unwrap(), k);
        }
        assert!("H4".parse::<CatalogKey>().is_err());
        assert!("FAN6".parse::<CatalogKey>().is_err());
        assert!("SQ2".parse::<CatalogKey>().is_err());
    }

    #[test]
    fn tropical_cells() {
        let c = tropical_probe(Trop::Fin(3), Trop::Fin(5), TropOp::Plus).unwrap();
        assert_eq!(c.values, vec![Trop::Fin(3)]);
        let c = tropical_probe(Trop::Fin(4), Trop::Fin(4), TropOp::Plus).unwrap();
        assert!(c.unbounded_above);
        assert_eq!(c.values[0], Trop::Fin(4));
        assert!(c.values.iter().all(|&v| v >= Trop::Fin(4)));
        let c = tropical_probe(Trop::Fin(-7), Trop::Inf, TropOp::Times).unwrap();
        assert_eq!(c.values, vec![Trop::Inf]);
        assert!(tropical_probe(Trop::Fin(2_000_000), Trop::Inf, TropOp::Plus).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let q2 = make(CatalogKey::Q2).unwrap();
        let iso = find_isomorphism(&q2, &q2).unwrap();
        assert!(iso.is_identity());
        assert!(find_isomorphism(&make(CatalogKey::K).unwrap(), &q2).is_none());
        assert!(find_isomorphism(&make(CatalogKey::Kaleidoscope(1)).unwrap(), &q2).is_some());
        assert!(find_isomorphism(
            &make(CatalogKey::Hp(2)).unwrap(),
            &make(CatalogKey::K).unwrap()
        )
        .is_some());
        assert!(find_isomorphism(&make(CatalogKey::Hp(3)).unwrap(), &q2).is_none());
    }

    #[test]
    fn isomorphism_recovers_permutation() {
        let f = make(CatalogKey::Fan(8)).unwrap();
        let perm = [0, 1, 2, 5, 6, 3, 4, 7, 8];
        let g = f.permuted(&perm);
        let iso = find_isomorphism(&f, &g).unwrap();
        assert!(crate::morphism::check_morphism(&f, &g, &iso, true).passed);
    }

    #[test]
    fn square_class_hyperfields() {
        for p in [3, 5, 7, 11] {
            let s = make(CatalogKey::FieldSquareClasses(p)).unwrap();
            assert!(check_axioms(&s, Kind::Hyperfield).unwrap().passed, "SQ{p}");
        }
        let sq7 = make(CatalogKey::FieldSquareClasses(7)).unwrap();
        assert_eq!(sq7.size(), 3);
        let one = sq7.one();
        assert_eq!(sq7.add(one, one).to_vec(), vec![one, sq7.neg(one)]);
    }
}
