use hyperforge::forms::{classify_hyperfield, is_formally_real};
use hyperforge::poly::{evaluate, quotient_superfield};
use hyperforge::quadext::*;
use hyperforge::*;

fn el(s: &Structure, n: &str) -> usize {
    s.parse_element(n).unwrap()
}

#[test]
fn pairs_match_the_polynomial_quotient() {
    for key in [CatalogKey::Q2, CatalogKey::Fan(4)] {
        let f = make(key).unwrap();
        for alpha in admissible_scalars(&f) {
            let e = extend(&f, alpha).unwrap();
            let p = Poly::new(&f, vec![f.neg(alpha), f.zero(), f.one()]);
            let q = quotient_superfield(&f, &p).unwrap();
            assert!(evaluate(&q.structure, &q.lift(&f, &p), q.x).contains(q.structure.zero()));
            let iso = find_isomorphism(&e.structure, &q.structure).unwrap();
            assert!(iso.is_identity(), "{} {}", f.name, f.name_of(alpha));
        }
    }
}

#[test]
fn direct_class_equality_matches_quotient() {
    for key in [CatalogKey::Q2, CatalogKey::Fan(4), CatalogKey::Fan(8)] {
        let f = make(key).unwrap();
        for alpha in admissible_scalars(&f) {
            let e = extend(&f, alpha).unwrap();
            let q = s_quotient(&e, false);
            for a in f.nonzero() {
                for b in f.nonzero() {
                    let same = q.projection.apply(a) == q.projection.apply(b);
                    assert_eq!(class_eq_direct(&e, a, b), same, "{} {a} {b}", f.name);
                }
            }
        }
    }
}

#[test]
fn formally_real_quotients_are_pre_special() {
    for key in [CatalogKey::Q2, CatalogKey::Fan(4), CatalogKey::Fan(8)] {
        let f = make(key).unwrap();
        for alpha in admissible_scalars(&f) {
            let e = extend(&f, alpha).unwrap();
            if e.one_plus_alpha().contains(f.neg(f.one())) {
                continue;
            }
            let q = s_quotient(&e, false);
            let c = classify_hyperfield(&q.structure);
            assert!(
                c.pre_special && c.formally_real,
                "{} {}",
                f.name,
                f.name_of(alpha)
            );
            assert!(!q.not_formally_real);
            let r = s_quotient(&e, true);
            assert!(find_isomorphism(&q.structure, &r.structure).is_some());
        }
    }
}

#[test]
fn binary_isometry_variants() {
    let f = make(CatalogKey::Fan(8)).unwrap();
    for alpha in ["a", "b", "ab"] {
        let e = extend(&f, el(&f, alpha)).unwrap();
        let q = s_quotient(&e, false);
        let units: Vec<usize> = f.nonzero().collect();
        for &a in &units {
            for &b in &units {
                for &c in &units {
                    for &d in &units {
                        let r = ext_binary_isometric(&e, &q, a, b, c, d);
                        assert!(r.all_equal(), "{alpha}: {a} {b} {c} {d} {r:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn towers_over_fan16() {
    let f = make(CatalogKey::Fan(16)).unwrap();
    let gens = f.parse_list("a,b,c").unwrap();
    let t = iterate_tower(&f, &gens).unwrap();
    assert_eq!(t.stages.len(), 3);
    assert!(is_formally_real(t.top()));
    for a in f.nonzero() {
        assert!(tower_class_eq(&t, a, f.one()).agrees());
        assert_eq!(
            tower_class_eq(&t, a, f.one()).criterion,
            tower_class_eq_witnessed(&t, a, f.one())
        );
    }
    let isos = tower_permutation_isos(&f, &gens).unwrap();
    assert_eq!(isos.len(), 6);
}
