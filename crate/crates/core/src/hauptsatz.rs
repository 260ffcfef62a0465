//! Members of `Iⁿ` as signed sums of scaled `n`-fold Pfister forms, the
//! Hauptsatz check over a generated family, and a replay of its inductive
//! proof through square-class towers.

use crate::error::{Error, Result};
use crate::forms::{
    classify_hyperfield, is_isotropic, pfister, witt_decompose, witt_decompose_bfs, QForm,
    WittDecomposition,
};
use crate::morphism::Morphism;
use crate::quadext::{extend, s_quotient};
use crate::structure::Structure;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// Cap on the number of sign-free representations in exhaustive mode.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    pub negative: bool,
    pub scalar: usize,
    pub gens: Vec<usize>,
}

impl Term {
    pub fn form(&self, s: &Structure) -> QForm {
        let f = pfister(s, &self.gens).scaled(s, self.scalar);
        if self.negative {
            f.negated(s)
        } else {
            f
        }
    }

    pub fn display(&self, s: &Structure) -> String {
        let gens: Vec<&str> = self.gens.iter().map(|&g| s.name_of(g)).collect();
        let sign = if self.negative { "-" } else { "+" };
        if self.scalar == s.one() {
            format!("{sign}<<{}>>", gens.join(","))
        } else {
            format!("{sign}{}<<{}>>", s.name_of(self.scalar), gens.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InRepresentation {
    pub n: usize,
    pub terms: Vec<Term>,
}

impl InRepresentation {
    pub fn assemble(&self, s: &Structure) -> QForm {
        self.terms
            .iter()
            .fold(QForm::empty(), |acc, t| acc.oplus(&t.form(s)))
    }

    pub fn display(&self, s: &Structure) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| t.display(s)).collect();
        parts.join(" ")
    }

    /// Generators sorted inside each term, terms sorted.
    pub fn canonical(&self) -> InRepresentation {
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| {
                let mut g = t.gens.clone();
                g.sort_unstable();
                Term {
                    gens: g,
                    ..t.clone()
                }
            })
            .collect();
        terms.sort();
        InRepresentation { n: self.n, terms }
    }

    pub fn all_positive(&self) -> bool {
        self.terms.iter().all(|t| !t.negative)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenMode {
    /// Every sign pattern and generator tuple, scalars 1.
    Exhaustive,
    /// As `Exhaustive`, with every scalar as well.
    ExhaustiveScaled,
    Sampled {
        seed: u64,
        count: usize,
    },
}

/// Number of sign-free representations `mode` enumerates.
pub fn exhaustive_count(f: &Structure, n: usize, terms: usize, scaled: bool) -> u64 {
    let units = (f.size() - 1) as u64;
    let per_term = n + usize::from(scaled);
    units.saturating_pow((per_term * terms) as u32)
}

/// Lazy enumeration of representations.
pub struct InIter<'a> {
    f: &'a Structure,
    n: usize,
    terms: usize,
    units: Vec<usize>,
    mode: GenMode,
    digits: Vec<usize>,
    signs: u64,
    done: bool,
    rng: ChaCha8Rng,
    emitted: usize,
}

impl<'a> InIter<'a> {
    fn build(&self, signs: u64, digits: &[usize]) -> InRepresentation {
        let scaled = self.mode == GenMode::ExhaustiveScaled;
        let width = self.n + usize::from(scaled);
        let terms = (0..self.terms)
            .map(|j| {
                let d = &digits[j * width..(j + 1) * width];
                let (scalar, gens) = if scaled {
                    (self.units[d[0]], &d[1..])
                } else {
                    (self.f.one(), d)
                };
                Term {
                    negative: signs >> j & 1 == 1,
                    scalar,
                    gens: gens.iter().map(|&i| self.units[i]).collect(),
                }
            })
            .collect();
        InRepresentation { n: self.n, terms }
    }
}

impl Iterator for InIter<'_> {
    type Item = InRepresentation;

    fn next(&mut self) -> Option<InRepresentation> {
        if let GenMode::Sampled { count, .. } = self.mode {
            if self.emitted == count {
                return None;
            }
            self.emitted += 1;
            let k = self.units.len();
            let terms = (0..self.terms)
                .map(|_| Term {
                    negative: self.rng.gen(),
                    scalar: self.units[self.rng.gen_range(0..k)],
                    gens: (0..self.n)
                        .map(|_| self.units[self.rng.gen_range(0..k)])
                        .collect(),
                })
                .collect();
            return Some(InRepresentation { n: self.n, terms });
        }
        if self.done {
            return None;
        }
        let rep = self.build(self.signs, &self.digits);
        let k = self.units.len();
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.digits.iter_mut().for_each(|d| *d = 0);
                self.signs += 1;
                if self.signs == 1 << self.terms {
                    self.done = true;
                }
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < k {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(rep)
    }
}

/// Representations of `Iⁿ` elements with exactly `terms` terms.
pub fn gen_in_iter(f: &Structure, n: usize, terms: usize, mode: GenMode) -> Result<InIter<'_>> {
    if n == 0 || terms == 0 {
        return Err(Error::Precondition("n and terms must be at least 1".into()));
    }
    let scaled = mode == GenMode::ExhaustiveScaled;
    if !matches!(mode, GenMode::Sampled { .. })
        && exhaustive_count(f, n, terms, scaled) > EXHAUSTIVE_LIMIT
    {
        return Err(Error::Budget {
            budget: EXHAUSTIVE_LIMIT,
        });
    }
    let seed = match mode {
        GenMode::Sampled { seed, .. } => seed,
        _ => 0,
    };
    let width = n + usize::from(scaled);
    Ok(InIter {
        f,
        n,
        terms,
        units: f.nonzero().collect(),
        mode,
        digits: vec![0; width * terms],
        signs: 0,
        done: false,
        rng: ChaCha8Rng::seed_from_u64(seed),
        emitted: 0,
    })
}

pub fn gen_in(
    f: &Structure,
    n: usize,
    terms: usize,
    mode: GenMode,
) -> Result<Vec<(QForm, InRepresentation)>> {
    Ok(gen_in_iter(f, n, terms, mode)?
        .map(|r| (r.assemble(f), r))
        .collect())
}

/// Generated forms up to reordering of entries, each with its first
/// representation.
#[derive(Clone, Debug, Default)]
pub struct InFamily {
    pub forms: BTreeMap<QForm, InRepresentation>,
    pub generated: u64,
}

impl InFamily {
    pub fn insert(&mut self, f: &Structure, rep: InRepresentation) {
        self.generated += 1;
        self.forms.entry(rep.assemble(f).sorted()).or_insert(rep);
    }
}

/// Fast decomposition, redone by search if the residue is still isotropic.
fn decompose(f: &Structure, phi: &QForm) -> Result<WittDecomposition> {
    let w = witt_decompose(f, phi);
    if is_isotropic(f, &w.anisotropic) {
        witt_decompose_bfs(f, phi)
    } else {
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HauptsatzViolation {
    pub representation: String,
    pub form: String,
    pub anisotropic: String,
    pub dim_w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HauptsatzReport {
    pub base: String,
    pub n: usize,
    pub max_terms: usize,
    pub generated: u64,
    pub distinct: usize,
    pub hyperbolic: usize,
    pub min_nonzero_dim_w: Option<usize>,
    pub violations: Vec<HauptsatzViolation>,
    pub traces: usize,
    pub non_monotone_traces: Vec<String>,
    pub replays: Vec<Replay>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replay {
    pub representation: String,
    pub trace: ProofTrace,
}

impl HauptsatzReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Which representations get a proof replay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceMode {
    None,
    /// Every distinct all-positive representation with an anisotropic term.
    All,
}

/// Check `dim_W < 2ⁿ ⇒ hyperbolic` over every representation with at most
/// `terms` terms.
pub fn check_hauptsatz(
    f: &Structure,
    n: usize,
    terms: usize,
    mode: GenMode,
    traces: TraceMode,
) -> Result<HauptsatzReport> {
    let class = classify_hyperfield(f);
    if !(class.special && class.formally_real) {
        return Err(Error::Hypothesis(format!(
            "{} is not a formally real special hyperfield",
            f.name
        )));
    }
    let mut family = InFamily::default();
    let mut positive = BTreeSet::new();
    for t in 1..=terms {
        for rep in gen_in_iter(f, n, t, mode)? {
            if traces == TraceMode::All && rep.all_positive() {
                positive.insert(rep.canonical());
            }
            family.insert(f, rep);
        }
    }
    let bound = 1usize << n;
    let forms: Vec<(&QForm, &InRepresentation)> = family.forms.iter().collect();
    let decomposed: Vec<(usize, Option<HauptsatzViolation>)> = forms
        .par_iter()
        .map(|(phi, rep)| {
            let w = decompose(f, phi)?;
            let bad = (!w.is_hyperbolic() && w.dim_w() < bound).then(|| HauptsatzViolation {
                representation: rep.display(f),
                form: phi.display(f),
                anisotropic: w.anisotropic.display(f),
                dim_w: w.dim_w(),
            });
            Ok((w.dim_w(), bad))
        })
        .collect::<Result<_>>()?;
    let hyperbolic = decomposed.iter().filter(|(d, _)| *d == 0).count();
    let min_nonzero_dim_w = decomposed.iter().map(|(d, _)| *d).filter(|&d| d > 0).min();
    let violations: Vec<HauptsatzViolation> =
        decomposed.into_iter().filter_map(|(_, v)| v).collect();

    let cache = TowerCache::default();
    let positive: Vec<InRepresentation> = positive.into_iter().collect();
    let replays: Vec<Option<Replay>> = positive
        .par_iter()
        .map(|rep| {
            let Some(rep) = anisotropic_first(f, rep) else {
                return Ok(None);
            };
            Ok(Some(Replay {
                representation: rep.display(f),
                trace: trace_with(f, &rep, &cache)?,
            }))
        })
        .collect::<Result<_>>()?;
    let replays: Vec<Replay> = replays.into_iter().flatten().collect();
    let non_monotone_traces = replays
        .iter()
        .filter(|r| !r.trace.monotone)
        .map(|r| r.representation.clone())
        .collect();
    Ok(HauptsatzReport {
        base: f.name.clone(),
        n,
        max_terms: terms,
        generated: family.generated,
        distinct: family.forms.len(),
        hyperbolic,
        min_nonzero_dim_w,
        violations,
        traces: replays.len(),
        non_monotone_traces,
        replays,
    })
}

/// Move the first anisotropic term to the front.
fn anisotropic_first(f: &Structure, rep: &InRepresentation) -> Option<InRepresentation> {
    let i = rep
        .terms
        .iter()
        .position(|t| !is_isotropic(f, &t.form(f)))?;
    let mut terms = rep.terms.clone();
    let t = terms.remove(i);
    terms.insert(0, t);
    Some(InRepresentation { n: rep.n, terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofCase {
    /// The image of the form is hyperbolic.
    I,
    /// The image of the remaining terms is anisotropic.
    II,
    /// Neither; recurse on the remaining terms.
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub stage: usize,
    pub field: String,
    pub field_size: usize,
    /// `None` for the starting form over the base.
    pub case: Option<ProofCase>,
    pub dim_w: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    Hyperbolic,
    AtLeast(usize),
    /// Neither hyperbolic nor of dimension `2ⁿ` or more.
    Failed(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub steps: Vec<TraceStep>,
    pub certificate: Certificate,
    pub monotone: bool,
    pub diagnostics: Vec<String>,
}

impl ProofTrace {
    pub fn chain(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.dim_w).collect()
    }
}

type CachedTower = Arc<(Structure, Morphism)>;

/// `S_G(⟨⟨gens⟩⟩)` keyed by field name and generators.
#[derive(Default)]
pub struct TowerCache {
    map: Mutex<HashMap<(String, Vec<usize>), CachedTower>>,
}

impl TowerCache {
    fn get(&self, g: &Structure, gens: &[usize]) -> Result<CachedTower> {
        let key = (g.name.clone(), gens.to_vec());
        if let Some(v) = self.map.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(pfister_tower(g, gens)?);
        self.map.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }
}

/// Adjoin square roots of `gens` one at a time, skipping those whose class
/// is already 1.
fn pfister_tower(g: &Structure, gens: &[usize]) -> Result<(Structure, Morphism)> {
    let mut cur = g.clone();
    let mut proj = Morphism::identity(g.size());
    for &x in gens {
        let a = proj.apply(x);
        if a == cur.one() {
            continue;
        }
        let q = s_quotient(&extend(&cur, a)?, false);
        proj = proj.then(&q.projection);
        cur = q.structure;
    }
    Ok((cur, proj))
}

fn push(p: &Morphism, phi: &QForm) -> QForm {
    QForm::new(phi.entries.iter().map(|&x| p.apply(x)).collect())
}

/// Replay the induction on the number of terms.
pub fn trace_proof(f: &Structure, rep: &InRepresentation) -> Result<ProofTrace> {
    trace_with(f, rep, &TowerCache::default())
}

fn trace_with(f: &Structure, rep: &InRepresentation, cache: &TowerCache) -> Result<ProofTrace> {
    let n = rep.n;
    let bound = 1usize << n;
    let phi = rep.assemble(f);
    let d0 = decompose(f, &phi)?.dim_w();
    let mut steps = vec![TraceStep {
        stage: 0,
        field: f.name.clone(),
        field_size: f.size(),
        case: None,
        dim_w: d0,
    }];
    let certificate = |d: usize| match d {
        0 => Certificate::Hyperbolic,
        d if d >= bound => Certificate::AtLeast(bound),
        d => Certificate::Failed(d),
    };
    if d0 == 0 {
        return Ok(ProofTrace {
            steps,
            certificate: Certificate::Hyperbolic,
            monotone: true,
            diagnostics: vec![],
        });
    }
    if !rep.all_positive() {
        return Err(Error::Hypothesis("all terms must be positive".into()));
    }
    let Some(first) = rep.terms.first() else {
        return Err(Error::Hypothesis("empty representation".into()));
    };
    if is_isotropic(f, &first.form(f)) {
        return Err(Error::Hypothesis(format!(
            "first Pfister form {} is isotropic",
            first.display(f)
        )));
    }
    let mut diagnostics = vec![];
    // terms as forms over the current field, with their generators
    let mut field = f.clone();
    let mut terms: Vec<(QForm, Vec<usize>)> = rep
        .terms
        .iter()
        .map(|t| (t.form(f), t.gens.clone()))
        .collect();
    let mut stage = 0;
    while terms.len() > 1 {
        stage += 1;
        let (next, p) = &*cache.get(&field, &terms[0].1)?;
        let pushed: Vec<(QForm, Vec<usize>)> = terms
            .iter()
            .map(|(q, g)| (push(p, q), g.iter().map(|&x| p.apply(x)).collect()))
            .collect();
        let whole = pushed
            .iter()
            .fold(QForm::empty(), |acc, (q, _)| acc.oplus(q));
        let d = decompose(next, &whole)?.dim_w();
        let rest = pushed[1..]
            .iter()
            .fold(QForm::empty(), |acc, (q, _)| acc.oplus(q));
        let case = if d == 0 {
            ProofCase::I
        } else if !is_isotropic(next, &rest) {
            ProofCase::II
        } else {
            ProofCase::III
        };
        steps.push(TraceStep {
            stage,
            field: next.name.clone(),
            field_size: next.size(),
            case: Some(case),
            dim_w: d,
        });
        match case {
            ProofCase::I => {
                let prev = terms[1..]
                    .iter()
                    .fold(QForm::empty(), |acc, (q, _)| acc.oplus(q));
                let lhs = decompose(&field, &prev)?.dim_w();
                let rhs = decompose(next, &rest)?.dim_w();
                if lhs < rhs {
                    diagnostics.push(format!(
                        "stage {stage}: residual dim_W {lhs} below its image's {rhs}"
                    ));
                }
                if rhs != bound {
                    diagnostics.push(format!(
                        "stage {stage}: image residual has dim_W {rhs}, expected {bound}"
                    ));
                }
                break;
            }
            ProofCase::II => break,
            ProofCase::III => {
                let mut rest = pushed[1..].to_vec();
                let Some(i) = rest.iter().position(|(q, _)| !is_isotropic(next, q)) else {
                    diagnostics.push(format!("stage {stage}: every remaining term is isotropic"));
                    break;
                };
                let t = rest.remove(i);
                rest.insert(0, t);
                terms = rest;
                field = next.clone();
            }
        }
    }
    let chain: Vec<usize> = steps.iter().map(|s| s.dim_w).collect();
    let monotone = chain.windows(2).all(|w| w[0] >= w[1]);
    if !monotone {
        diagnostics.push(format!("dim_W chain {chain:?} increases"));
    }
    Ok(ProofTrace {
        steps,
        certificate: certificate(d0),
        monotone,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make, CatalogKey};

    #[test]
    fn pfister_expansion() {
        let q2 = make(CatalogKey::Q2).unwrap();
        let rep = InRepresentation {
            n: 2,
            terms: vec![Term {
                negative: false,
                scalar: 1,
                gens: vec![1, 1],
            }],
        };
        assert_eq!(rep.assemble(&q2).display(&q2), "<1,1,1,1>");
    }

    #[test]
    fn fan4_counts() {
        let fan = make(CatalogKey::Fan(4)).unwrap();
        let reps = gen_in(&fan, 2, 2, GenMode::Exhaustive).unwrap();
        assert_eq!(exhaustive_count(&fan, 2, 2, false), 256);
        assert_eq!(reps.len(), 256 * 4);
        assert!(reps.iter().all(|(q, _)| q.dim() == 8));
        let fan8 = make(CatalogKey::Fan(8)).unwrap();
        assert!(matches!(
            gen_in_iter(&fan8, 3, 3, GenMode::Exhaustive),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn sampling_is_seeded() {
        let fan = make(CatalogKey::Fan(8)).unwrap();
        let mode = GenMode::Sampled { seed: 7, count: 20 };
        let a: Vec<_> = gen_in_iter(&fan, 2, 3, mode).unwrap().collect();
        let b: Vec<_> = gen_in_iter(&fan, 2, 3, mode).unwrap().collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
    }

    #[test]
    fn rho_minus_rho() {
        let fan = make(CatalogKey::Fan(4)).unwrap();
        let t = Term {
            negative: false,
            scalar: 1,
            gens: vec![3, 4],
        };
        let rep = InRepresentation {
            n: 2,
            terms: vec![
                t.clone(),
                Term {
                    negative: true,
                    ..t
                },
            ],
        };
        assert!(witt_decompose(&fan, &rep.assemble(&fan)).is_hyperbolic());
        let tr = trace_proof(&fan, &rep).unwrap();
        assert_eq!(tr.certificate, Certificate::Hyperbolic);
        assert_eq!(tr.chain(), vec![0]);
    }

    #[test]
    fn small_runs_hold() {
        let q2 = make(CatalogKey::Q2).unwrap();
        let r = check_hauptsatz(&q2, 2, 3, GenMode::Exhaustive, TraceMode::All).unwrap();
        assert!(r.holds());
        assert!(r.non_monotone_traces.is_empty());
        let fan = make(CatalogKey::Fan(4)).unwrap();
        let r = check_hauptsatz(&fan, 2, 2, GenMode::Exhaustive, TraceMode::All).unwrap();
        assert!(r.holds() && r.traces > 0);
        let k = make(CatalogKey::K).unwrap();
        assert!(matches!(
            check_hauptsatz(&k, 1, 1, GenMode::Exhaustive, TraceMode::None),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn single_term_trace() {
        let fan = make(CatalogKey::Fan(4)).unwrap();
        let rep = InRepresentation {
            n: 2,
            terms: vec![Term {
                negative: false,
                scalar: 1,
                gens: vec![1, 3],
            }],
        };
        let t = trace_proof(&fan, &rep).unwrap();
        assert_eq!(t.chain(), vec![4]);
        assert_eq!(t.certificate, Certificate::AtLeast(4));
    }

    #[test]
    fn two_identical_terms() {
        let fan = make(CatalogKey::Fan(4)).unwrap();
        let t = Term {
            negative: false,
            scalar: 1,
            gens: vec![3, 3],
        };
        let rep = InRepresentation {
            n: 2,
            terms: vec![t.clone(), t],
        };
        let tr = trace_proof(&fan, &rep).unwrap();
        assert_eq!(tr.steps.len(), 2);
        assert_eq!(tr.steps[1].case, Some(ProofCase::II));
        assert!(tr.monotone);
        let neg = InRepresentation {
            n: 2,
            terms: vec![Term {
                negative: true,
                scalar: 1,
                gens: vec![3, 3],
            }],
        };
        assert!(matches!(trace_proof(&fan, &neg), Err(Error::Hypothesis(_))));
    }
}
