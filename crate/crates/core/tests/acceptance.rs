//! Acceptance run: one line per criterion, each criterion computed twice so
//! the last line can compare the JSON reports byte for byte. Reports are
//! written under the cargo target tmp dir. The process exits 0 whatever the
//! outcome; the lines carry the verdicts.

use hyperforge::catalog::standard_keys;
use hyperforge::forms::{classify_hyperfield, is_pre_special};
use hyperforge::hauptsatz::{check_hauptsatz, GenMode, TraceMode};
use hyperforge::marshall::{is_coherent, marshall_quotient, sim, sim_products, sim_sets};
use hyperforge::poly::{division_holds, euclid_divide, evaluate, quotient_superfield};
use hyperforge::quadext::*;
use hyperforge::*;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Criterion = (&'static str, u64, fn() -> Verdict);

struct Verdict {
    pass: bool,
    summary: String,
    report: Value,
}

fn el(s: &Structure, n: &str) -> usize {
    s.parse_element(n).unwrap()
}

fn axioms_pass(s: &Structure, k: Kind) -> bool {
    check_axioms(s, k).unwrap().passed
}

fn axiom_suite() -> Verdict {
    let mut failures = vec![];
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    let k = make(CatalogKey::K).unwrap();
    expect(axioms_pass(&k, Kind::Hyperfield), "K hyperfield");
    expect(characteristic(&k) == 2, "K char 2");
    expect(!is_pre_special(&k), "K not pre-special");
    let q2 = make(CatalogKey::Q2).unwrap();
    let c = classify_hyperfield(&q2);
    expect(axioms_pass(&q2, Kind::Hyperfield), "Q2 hyperfield");
    expect(c.special && c.formally_real, "Q2 formally real special");
    expect(characteristic(&q2) == 0, "Q2 char 0");
    for p in [3, 5] {
        let h = make(CatalogKey::Hp(p)).unwrap();
        expect(
            axioms_pass(&h, Kind::Hyperfield),
            &format!("H{p} hyperfield"),
        );
        expect(characteristic(&h) == 2, &format!("H{p} char 2"));
    }
    let x2 = make(CatalogKey::Kaleidoscope(2)).unwrap();
    expect(axioms_pass(&x2, Kind::Multiring), "X2 multiring");
    let r = check_axioms(&x2, Kind::Hyperring).unwrap();
    let witness = r.violated("distributivity").map(|v| v.witness.clone());
    let mut x2_witness = Value::Null;
    match witness.as_deref() {
        Some(&[a, b, n]) => {
            let lhs = x2.scale(n, x2.add(a, b));
            let rhs = x2.set_add(x2.mul(n, a), x2.mul(n, b));
            let expected: ElemSet = [x2.neg(n), x2.zero(), n].into_iter().collect();
            expect(
                a == x2.one()
                    && b == x2.neg(a)
                    && lhs == expected
                    && rhs == ElemSet::full(x2.size()),
                "X2 witness n(1-1) = {-n,0,n}",
            );
            x2_witness = json!({
                "n": x2.name_of(n),
                "n(1-1)": x2.fmt_set(&lhs),
                "n-n": x2.fmt_set(&rhs),
            });
        }
        _ => expect(false, "X2 fails distributivity"),
    }
    for q in [4, 8] {
        let f = make(CatalogKey::Fan(q)).unwrap();
        let c = classify_hyperfield(&f);
        expect(
            c.real_reduced && c.special,
            &format!("FAN{q} real reduced special"),
        );
    }
    Verdict {
        pass: failures.is_empty(),
        summary: format!("{} expectation(s) failed", failures.len()),
        report: json!({ "failures": failures, "x2_witness": x2_witness }),
    }
}

fn euclid() -> Verdict {
    let mut runs = vec![];
    let mut bad = vec![];
    for key in [
        CatalogKey::Q2,
        CatalogKey::Fan(4),
        CatalogKey::FieldSquareClasses(7),
    ] {
        let f = make(key).unwrap();
        let n = f.size();
        let mut pairs = 0u64;
        for fi in 0..n.pow(5) {
            let fp = Poly::from_index(&f, fi, 5);
            for gi in 1..n.pow(3) {
                let gp = Poly::from_index(&f, gi, 3);
                pairs += 1;
                let ok = match euclid_divide(&f, &fp, &gp) {
                    Ok((q, r)) => division_holds(&f, &fp, &gp, &q, &r),
                    Err(_) => false,
                };
                if !ok && bad.len() < 10 {
                    bad.push(format!(
                        "{}: {} / {}",
                        f.name,
                        fp.display(&f, "X"),
                        gp.display(&f, "X")
                    ));
                }
            }
        }
        runs.push(json!({ "base": f.name, "pairs": pairs }));
    }
    Verdict {
        pass: bad.is_empty(),
        summary: format!("{} failing pair(s)", bad.len()),
        report: json!({ "runs": runs, "failures": bad }),
    }
}

fn quotient_superfields() -> Verdict {
    let mut rows = vec![];
    let mut failing = vec![];
    for key in [CatalogKey::Q2, CatalogKey::Fan(4), CatalogKey::Fan(8)] {
        let f = make(key).unwrap();
        for alpha in admissible_scalars(&f) {
            let t0 = Instant::now();
            let p = Poly::new(&f, vec![f.neg(alpha), f.zero(), f.one()]);
            let q = quotient_superfield(&f, &p).unwrap();
            let r = check_axioms(&q.structure, Kind::Superfield).unwrap();
            let root = evaluate(&q.structure, &q.lift(&f, &p), q.x).contains(q.structure.zero());
            let e = extend(&f, alpha).unwrap();
            let iso = find_isomorphism(&e.structure, &q.structure).is_some();
            let fast = t0.elapsed() < Duration::from_secs(10);
            let label = format!("{} X^2-({})", f.name, f.name_of(alpha));
            if !(r.passed && root && iso && fast) {
                failing.push(label.clone());
            }
            rows.push(json!({
                "pair": label,
                "superfield": r.passed,
                "violations": r.describe(&q.structure),
                "root": root,
                "isomorphic_to_pairs": iso,
                "within_10s": fast,
            }));
        }
    }
    Verdict {
        pass: failing.is_empty(),
        summary: format!(
            "{}/{} pairs fail: {}",
            failing.len(),
            rows.len(),
            failing.join(", ")
        ),
        report: json!({ "pairs": rows }),
    }
}

fn subsets_with_one(s: &Structure) -> Vec<ElemSet> {
    let others: Vec<usize> = s.nonzero().filter(|&x| x != s.one()).collect();
    (0..1u32 << others.len())
        .map(|mask| {
            let mut m = ElemSet::singleton(s.one());
            for (i, &x) in others.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m.insert(x);
                }
            }
            m
        })
        .collect()
}

fn marshall_suite() -> Verdict {
    let mut pairs = 0;
    let mut disagreements = vec![];
    let mut cells = 0;
    let mut exceptions = vec![];
    for key in standard_keys() {
        let s = make(key).unwrap();
        let mut subsets = if s.size() <= 6 {
            subsets_with_one(&s)
        } else {
            vec![]
        };
        for mut m in [s.squares(), s.sum_of_squares()] {
            m.remove(s.zero());
            subsets.push(m);
        }
        let subsets: BTreeSet<Vec<usize>> = subsets.iter().map(|m| m.to_vec()).collect();
        for m in subsets {
            let m: ElemSet = m.into_iter().collect();
            if !is_coherent(&s, &m).coherent {
                continue;
            }
            pairs += 1;
            for a in s.elements() {
                for b in s.elements() {
                    let x = sim(&s, &m, a, b);
                    if x != sim_sets(&s, &m, a, b) || x != sim_products(&s, &m, a, b) {
                        disagreements.push(format!("{} {} ({a},{b})", s.name, s.fmt_set(&m)));
                    }
                }
            }
        }
        if axioms_pass(&s, Kind::Superdomain) {
            let mut m = s.squares();
            m.remove(s.zero());
            match marshall_quotient(&s, &m) {
                Ok(q) => {
                    let qs = &q.quotient;
                    for a in qs.elements() {
                        for b in qs.elements() {
                            cells += 1;
                            if qs.mul(a, b).len() != 1 {
                                exceptions.push(format!(
                                    "{}: [{}][{}]",
                                    s.name,
                                    qs.name_of(a),
                                    qs.name_of(b)
                                ));
                            }
                        }
                    }
                }
                Err(e) => exceptions.push(format!("{}: {e}", s.name)),
            }
        }
    }
    Verdict {
        pass: disagreements.is_empty() && exceptions.is_empty(),
        summary: format!(
            "{pairs} coherent subsets, {} disagreement(s); {cells} quotient cells, {} exception(s)",
            disagreements.len(),
            exceptions.len()
        ),
        report: json!({
            "coherent_subsets": pairs,
            "disagreements": disagreements,
            "cells": cells,
            "exceptions": exceptions,
        }),
    }
}

fn square_facts_suite() -> Verdict {
    let mut rows = vec![];
    let mut failing = vec![];
    for key in [CatalogKey::Q2, CatalogKey::Fan(4), CatalogKey::Fan(8)] {
        let f = make(key).unwrap();
        for alpha in admissible_scalars(&f) {
            let e = extend(&f, alpha).unwrap();
            let facts = square_facts(&e);
            let bad = facts.failing();
            if !bad.is_empty() {
                failing.push(format!("{} {}: {}", f.name, f.name_of(alpha), bad.join("")));
            }
            rows.push(json!({
                "base": f.name,
                "alpha": f.name_of(alpha),
                "facts": facts,
            }));
        }
    }
    Verdict {
        pass: failing.is_empty(),
        summary: format!(
            "{}/{} failing ({})",
            failing.len(),
            rows.len(),
            failing.join("; ")
        ),
        report: json!({ "cases": rows }),
    }
}

fn characterizations() -> Verdict {
    let bases: Vec<Structure> = standard_keys()
        .into_iter()
        .map(|k| make(k).unwrap())
        .filter(|s| s.size() <= 9 && classify_hyperfield(s).special)
        .collect();
    let mut towers = 0;
    let mut degenerate = 0;
    let mut checks = 0u64;
    let mut disagreements: Vec<String> = vec![];
    let mut stages_seen: BTreeSet<(String, usize)> = BTreeSet::new();
    let mut stage_inputs: Vec<(Structure, usize)> = vec![];
    for f in &bases {
        let scalars = admissible_scalars(f);
        let mut seqs: Vec<Vec<usize>> = scalars.iter().map(|&a| vec![a]).collect();
        for len in 2..=3 {
            let prev: Vec<Vec<usize>> = seqs
                .iter()
                .filter(|s| s.len() == len - 1)
                .cloned()
                .collect();
            for s in prev {
                for &a in &scalars {
                    let mut t = s.clone();
                    t.push(a);
                    seqs.push(t);
                }
            }
        }
        for seq in seqs {
            let t = match iterate_tower(f, &seq) {
                Ok(t) => t,
                Err(Error::DegenerateScalar { .. }) => {
                    degenerate += 1;
                    continue;
                }
                Err(e) => {
                    disagreements.push(format!("{} {seq:?}: {e}", f.name));
                    continue;
                }
            };
            towers += 1;
            let label = || {
                let names: Vec<&str> = seq.iter().map(|&a| f.name_of(a)).collect();
                format!("{} [{}]", f.name, names.join(","))
            };
            let fr = tower_formally_real(&t);
            checks += 1;
            if !fr.agrees() {
                disagreements.push(format!("formal reality {}", label()));
            }
            for a in f.nonzero() {
                for b in f.nonzero() {
                    checks += 1;
                    let r = tower_class_eq(&t, a, b);
                    if !r.agrees() || r.criterion != tower_class_eq_witnessed(&t, a, b) {
                        disagreements.push(format!("class equality {} ({a},{b})", label()));
                    }
                }
            }
            let mut prev = f.clone();
            for st in &t.stages {
                if stages_seen.insert((prev.name.clone(), st.alpha)) {
                    stage_inputs.push((prev.clone(), st.alpha));
                }
                prev = st.field.clone();
            }
        }
    }
    for (g, alpha) in &stage_inputs {
        let e = extend(g, *alpha).unwrap();
        let q = s_quotient(&e, false);
        let units: Vec<usize> = g.nonzero().collect();
        for &a in &units {
            for &b in &units {
                checks += 1;
                let same = q.projection.apply(a) == q.projection.apply(b);
                if class_eq_direct(&e, a, b) != same {
                    disagreements.push(format!(
                        "direct class equality {} {} ({a},{b})",
                        g.name, alpha
                    ));
                }
            }
        }
        if !classify_hyperfield(g).special {
            continue;
        }
        for &a in &units {
            for &b in &units {
                for &c in &units {
                    for &d in &units {
                        checks += 1;
                        if !ext_binary_isometric(&e, &q, a, b, c, d).all_equal() {
                            disagreements.push(format!(
                                "binary isometry {} {} ({a},{b},{c},{d})",
                                g.name, alpha
                            ));
                        }
                    }
                }
            }
        }
    }
    let bases: Vec<&str> = bases.iter().map(|s| s.name.as_str()).collect();
    Verdict {
        pass: disagreements.is_empty(),
        summary: format!(
            "{} disagreement(s) over {checks} checks, {towers} towers ({degenerate} degenerate skipped), bases {}",
            disagreements.len(),
            bases.join(",")
        ),
        report: json!({
            "bases": bases,
            "towers": towers,
            "degenerate": degenerate,
            "stage_extensions": stage_inputs.len(),
            "checks": checks,
            "disagreements": disagreements.iter().take(50).collect::<Vec<_>>(),
            "disagreement_count": disagreements.len(),
        }),
    }
}

fn commutation() -> Verdict {
    let mut rows = vec![];
    let mut failing = vec![];
    let fan8 = make(CatalogKey::Fan(8)).unwrap();
    for x in ["a", "b", "ab"] {
        for y in ["a", "b", "ab"] {
            if x == y {
                continue;
            }
            match tower_swap_iso(&fan8, el(&fan8, x), el(&fan8, y)) {
                Ok(m) => {
                    rows.push(json!({ "base": "FAN8", "order": [x, y], "isomorphism": m.map }))
                }
                Err(e) => failing.push(format!("FAN8 {x},{y}: {e}")),
            }
        }
    }
    let fan16 = make(CatalogKey::Fan(16)).unwrap();
    for triple in ["a,b,c", "ab,bc,c"] {
        let gens = fan16.parse_list(triple).unwrap();
        match tower_permutation_isos(&fan16, &gens) {
            Ok(isos) => {
                for (order, m) in isos {
                    let names: Vec<&str> = order.iter().map(|&a| fan16.name_of(a)).collect();
                    rows.push(json!({ "base": "FAN16", "order": names, "isomorphism": m.map }));
                }
            }
            Err(e) => failing.push(format!("FAN16 {triple}: {e}")),
        }
    }
    Verdict {
        pass: failing.is_empty(),
        summary: format!(
            "{} isomorphisms exhibited, {} failure(s)",
            rows.len(),
            failing.len()
        ),
        report: json!({ "isomorphisms": rows, "failures": failing }),
    }
}

fn hauptsatz_runs() -> Verdict {
    let mut rows = vec![];
    let mut violations = 0;
    let mut non_monotone = 0;
    let mut traces = 0;
    for (key, ns, terms) in [
        (CatalogKey::Q2, 1..=3, 4),
        (CatalogKey::Fan(4), 2..=2, 3),
        (CatalogKey::Fan(8), 1..=3, 2),
    ] {
        let f = make(key).unwrap();
        for n in ns {
            let r = check_hauptsatz(&f, n, terms, GenMode::Exhaustive, TraceMode::All).unwrap();
            violations += r.violations.len();
            non_monotone += r.non_monotone_traces.len();
            traces += r.traces;
            rows.push(json!({
                "base": f.name,
                "n": n,
                "terms": terms,
                "generated": r.generated,
                "distinct": r.distinct,
                "hyperbolic": r.hyperbolic,
                "min_nonzero_dim_w": r.min_nonzero_dim_w,
                "violations": r.violations,
                "traces": r.traces,
                "non_monotone": r.non_monotone_traces,
            }));
        }
    }
    Verdict {
        pass: violations == 0 && non_monotone == 0,
        summary: format!("{violations} violation(s), {traces} traces, {non_monotone} non-monotone"),
        report: json!({ "runs": rows }),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("axiom suite", 1, axiom_suite),
        ("euclid division", 30, euclid),
        ("quotient superfield", 90, quotient_superfields),
        ("marshall suite", 60, marshall_suite),
        ("square-set proposition", 60, square_facts_suite),
        ("characterization oracles", 120, characterizations),
        ("tower commutation", 60, commutation),
        ("hauptsatz", 300, hauptsatz_runs),
    ];
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).ok();
    let mut identical = vec![];
    let mut passed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let v = f();
        let elapsed = t0.elapsed();
        let again = f();
        let a = serde_json::to_string_pretty(&v.report).unwrap();
        let b = serde_json::to_string_pretty(&again.report).unwrap();
        identical.push(a == b);
        std::fs::write(dir.join(format!("criterion-{}.json", i + 1)), &a).ok();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let ok = v.pass && in_time;
        passed += usize::from(ok);
        println!(
            "criterion {} {name}: {} ({:.2}s of {budget}s) {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.summary
        );
    }
    let same = identical.iter().all(|&x| x);
    passed += usize::from(same);
    println!(
        "criterion 9 determinism: {} ({}/8 reports byte-identical across two runs)",
        if same { "PASS" } else { "FAIL" },
        identical.iter().filter(|&&x| x).count()
    );
    println!("{passed}/9 criteria pass; reports in {}", dir.display());
}
