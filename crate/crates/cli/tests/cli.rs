use hyperforge::json::to_json;
use hyperforge::{catalog, find_isomorphism, CatalogKey, DeclaredKind};
use hyperforge_cli::{load_structure, run, Outcome};
use std::path::PathBuf;
use std::process::Command;

fn hf(args: &str) -> Outcome {
    run(std::iter::once("hyperforge").chain(args.split_whitespace()))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn kaleidoscope_is_not_a_hyperring() {
    let out = hf("check --structure catalog:X2 --kind hyperring");
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("distributivity"), "{}", out.stdout);
    assert!(out.stdout.contains("witness (1, -1, 2)"));
}

#[test]
fn declared_kinds_pass_on_load() {
    for key in ["K", "Q2", "H3", "X2", "FAN4", "Zmod6", "SQ7"] {
        let out = hf(&format!("check --structure catalog:{key}"));
        assert_eq!(out.code, 0, "{key}: {}", out.stdout);
    }
}

#[test]
fn hauptsatz_fan4() {
    let out = hf("hauptsatz --base catalog:FAN4 --n 2 --terms 3");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("0 violations"));
}

#[test]
fn hauptsatz_rejects_k() {
    let out = hf("hauptsatz --base catalog:K --n 1 --terms 1");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("formally real special"));
}

#[test]
fn hauptsatz_budget_is_an_input_error() {
    let out = hf("hauptsatz --base catalog:FAN16 --n 3 --terms 2");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("budget"));
}

#[test]
fn extend_fan4_emits_q2() {
    let out = hf("extend --base catalog:FAN4 --alphas a --emit json");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["classes"]["a"], "1");
    assert_eq!(v["classes"]["-a"], "-1");
    let s = hyperforge::parse_structure(&out.stdout).unwrap();
    let q2 = catalog::make(CatalogKey::Q2).unwrap();
    assert!(find_isomorphism(&s, &q2).is_some());
}

#[test]
fn round_trip_through_a_file() {
    let q2 = catalog::make(CatalogKey::Fan(8)).unwrap();
    let p = scratch("fan8.json", &hyperforge::emit_structure(&q2));
    let back = load_structure(p.to_str().unwrap()).unwrap();
    assert!(find_isomorphism(&back, &q2).unwrap().is_identity());
    let out = hf(&format!("forms classify --structure {}", p.display()));
    assert_eq!(out.code, 0);
}

#[test]
fn malformed_json_exits_2() {
    let p = scratch("bad.json", "{\"name\": \"x\", \"elements\": [");
    assert_eq!(hf(&format!("check --structure {}", p.display())).code, 2);
}

#[test]
fn empty_cell_rejected() {
    let q2 = catalog::make(CatalogKey::Q2).unwrap();
    let mut j = to_json(&q2);
    j.add.remove("1|-1");
    let p = scratch("hole.json", &serde_json::to_string(&j).unwrap());
    let out = hf(&format!("check --structure {}", p.display()));
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("empty add cell"));
}

#[test]
fn load_verification_failure_exits_1() {
    let x2 = catalog::make(CatalogKey::Kaleidoscope(2)).unwrap();
    let mut j = to_json(&x2);
    j.kind = Some(DeclaredKind::Hyperring);
    let p = scratch("x2.json", &serde_json::to_string(&j).unwrap());
    let out = hf(&format!("characteristic --structure {}", p.display()));
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("witness"));
    let out = hf(&format!(
        "characteristic --no-verify --structure {}",
        p.display()
    ));
    assert_eq!(out.code, 0);
}

#[test]
fn unknown_flag_exits_2() {
    assert_eq!(hf("check --structure catalog:Q2 --bogus").code, 2);
    assert_eq!(hf("frobnicate").code, 2);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        "hauptsatz --base catalog:FAN8 --n 2 --terms 2 --sample 200 --seed 11 --trace --json",
        "tower --base catalog:FAN8 --alphas a,b --permutations --json",
        "marshall --structure catalog:Zmod5 --subset squares --json",
    ] {
        let a = hf(args);
        let b = hf(args);
        assert_eq!(a.code, 0, "{args}: {}{}", a.stdout, a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args}");
    }
}

#[test]
fn timing_is_opt_in() {
    let a = hf("characteristic --structure catalog:H3 --json");
    assert!(!a.stdout.contains("wall_time_ms"));
    let b = hf("characteristic --structure catalog:H3 --json --timing");
    assert!(b.stdout.contains("wall_time_ms"));
    let va: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(va["input_digest"], vb["input_digest"]);
    assert_eq!(va["result"]["characteristic"], 2);
}

#[test]
fn poly_verbs() {
    let out = hf("poly divide --structure catalog:Q2 --f X^2+1 --g X+1 --json");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("\"verified\": true"));
    let out = hf("poly quotient --structure catalog:Q2 --p X^2+1");
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("x_is_root: true"));
    let out = hf("poly quotient --structure catalog:Q2 --p X^2-1");
    assert_eq!(out.code, 2);
    let out = hf("poly irreducible --structure catalog:FAN4 --f X^2-a");
    assert!(out.stdout.contains("irreducible: true"), "{}", out.stdout);
}

#[test]
fn forms_verbs() {
    let out = hf("forms isometric --structure catalog:FAN4 --lhs 1,a --rhs a,1");
    assert!(out.stdout.contains("isometric: true"));
    let out = hf("forms witt --form 1,-1,1");
    assert!(out.stdout.contains("dim_w: 1"));
    assert_eq!(hf("forms isometric --lhs 1 --rhs 1,1").code, 2);
}

#[test]
fn degenerate_tower_exits_2() {
    let out = hf("tower --base catalog:Q2 --alphas -1,-1");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("stage 2"));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperforge"))
        .args(["catalog-list", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["result"]["structures"].as_array().unwrap().len() >= 10);
    let out = Command::new(env!("CARGO_BIN_EXE_hyperforge"))
        .args(["check", "--structure", "catalog:X2", "--kind", "hyperring"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
