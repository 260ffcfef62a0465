//! Maps between finite structures and their verification.

use crate::axioms::{Report, Tally};
use crate::elemset::ElemSet;
use crate::structure::Structure;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub map: Vec<usize>,
}

impl Morphism {
    pub fn new(map: Vec<usize>) -> Morphism {
        Morphism { map }
    }

    pub fn identity(n: usize) -> Morphism {
        Morphism::new((0..n).collect())
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn image(&self, s: &ElemSet) -> ElemSet {
        s.iter().map(|x| self.map[x]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism::new(self.map.iter().map(|&x| other.map[x]).collect())
    }

    pub fn is_injective(&self) -> bool {
        let img: ElemSet = self.map.iter().copied().collect();
        img.len() == self.map.len()
    }
}

const TRIPLE_LIMIT: usize = 200_000;
const TRIPLE_SAMPLES: usize = 20_000;

/// Verify the morphism conditions: constants, negation, additive and
/// multiplicative compatibility; with `full`, setwise image equalities. Also
/// checks preservation of ternary sums, exhaustively for small carriers and on
/// a fixed-seed sample otherwise.
pub fn check_morphism(src: &Structure, tgt: &Structure, f: &Morphism, full: bool) -> Report {
    let n = src.size();
    let mut t = Tally::default();
    if f.map.len() != n || f.map.iter().any(|&y| y >= tgt.size()) {
        t.fail("well-formed", &[]);
        return t.into_report();
    }
    t.check(f.apply(src.zero()) == tgt.zero(), "zero", &[src.zero()]);
    t.check(f.apply(src.one()) == tgt.one(), "one", &[src.one()]);
    for a in 0..n {
        t.check(f.apply(src.neg(a)) == tgt.neg(f.apply(a)), "negation", &[a]);
        for b in 0..n {
            let (fa, fb) = (f.apply(a), f.apply(b));
            let ia = f.image(src.add(a, b));
            let im = f.image(src.mul(a, b));
            t.check(ia.is_subset(tgt.add(fa, fb)), "additive", &[a, b]);
            t.check(im.is_subset(tgt.mul(fa, fb)), "multiplicative", &[a, b]);
            if full {
                t.check(ia == *tgt.add(fa, fb), "full-additive", &[a, b]);
                t.check(im == *tgt.mul(fa, fb), "full-multiplicative", &[a, b]);
            }
        }
    }
    let mut triple = |a: usize, b: usize, c: usize| {
        let l = f.image(&src.fold_sum(&[a, b, c]));
        let r = tgt.fold_sum(&[f.apply(a), f.apply(b), f.apply(c)]);
        t.check(l.is_subset(&r), "ternary-sum", &[a, b, c]);
        if full {
            t.check(l == r, "full-ternary-sum", &[a, b, c]);
        }
    };
    if n * n * n <= TRIPLE_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    triple(a, b, c);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..TRIPLE_SAMPLES {
            triple(
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
        }
    }
    t.into_report()
}
