//! Command-line front end: structure loading, verb dispatch and run reports.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperforge::forms::{self, QForm};
use hyperforge::hauptsatz::{check_hauptsatz, GenMode, TraceMode};
use hyperforge::ideal::{classify_ideal, ideal_generate, quotient_by_ideal};
use hyperforge::json::to_json;
use hyperforge::marshall::{is_coherent, marshall_quotient};
use hyperforge::poly::{self, parse_poly};
use hyperforge::quadext::{self, extend, iterate_tower, s_quotient};
use hyperforge::{
    catalog, characteristic, check_axioms, CatalogKey, ElemSet, Error, Kind, Morphism, Structure,
};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "hyperforge",
    version,
    about = "Finite hyperfields, superrings and quadratic forms"
)]
pub struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled modes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Skip axiom verification of loaded structures.
    #[arg(long, global = true)]
    pub no_verify: bool,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a structure against the axioms of a kind.
    Check {
        #[arg(long)]
        structure: String,
        /// Defaults to the declared kind.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Least n with 0 in the n-fold sum of 1, or 0 if none.
    Characteristic {
        #[arg(long)]
        structure: String,
    },
    /// Quotient by the ideal generated by a list of elements.
    Quotient {
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = Emit::Summary)]
        emit: Emit,
    },
    /// Marshall quotient by a multiplicative subset.
    Marshall {
        #[arg(long)]
        structure: String,
        /// `squares`, `sumsquares` or `explicit:<list>`.
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        #[arg(long, value_enum, default_value_t = Emit::Summary)]
        emit: Emit,
    },
    /// Polynomial division, roots, irreducibility and quotients.
    Poly {
        #[command(subcommand)]
        action: PolyAction,
    },
    /// Isometry, Witt decomposition, isotropy and value sets of forms.
    Forms {
        #[command(subcommand)]
        action: FormsAction,
    },
    /// Square-class hyperfield of one or more quadratic extensions.
    Extend {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        /// Use sums of squares.
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value_t = Emit::Summary)]
        emit: Emit,
    },
    /// Iterated square-class tower with its Pfister criteria.
    Tower {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        /// Also build every reordering of the scalars.
        #[arg(long)]
        permutations: bool,
    },
    /// Check the Hauptsatz over a generated family of forms.
    Hauptsatz {
        #[arg(long)]
        base: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        terms: usize,
        /// Replay the proof on every positive representation.
        #[arg(long)]
        trace: bool,
        /// Sample this many representations per term count instead of enumerating.
        #[arg(long)]
        sample: Option<usize>,
        /// Enumerate scalars as well.
        #[arg(long)]
        scaled: bool,
    },
    /// List the catalog structures.
    #[command(name = "catalog-list")]
    CatalogList,
}

#[derive(Subcommand, Debug)]
pub enum PolyAction {
    Divide {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    Roots {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    Irreducible {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// `F[X]/⟨p⟩`.
    Quotient {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, value_enum, default_value_t = Emit::Summary)]
        emit: Emit,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormsAction {
    Isometric {
        #[command(flatten)]
        s: FormsStructure,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    Witt {
        #[command(flatten)]
        s: FormsStructure,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    Isotropic {
        #[command(flatten)]
        s: FormsStructure,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    Values {
        #[command(flatten)]
        s: FormsStructure,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Pre-special, special, formally real, real reduced, rooted.
    Classify {
        #[command(flatten)]
        s: FormsStructure,
    },
}

#[derive(Args, Debug)]
pub struct StructureArg {
    #[arg(long)]
    pub structure: String,
}

#[derive(Args, Debug)]
pub struct FormsStructure {
    #[arg(long, default_value = "catalog:Q2")]
    pub structure: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Summary,
}

#[derive(Serialize)]
pub struct RunReport {
    pub verb: String,
    pub input_digest: String,
    pub seed: u64,
    pub result: Value,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Violation(Value, Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NotCoherent(_) | Error::NoIsomorphism(_) => {
                Failure::Violation(json!({ "error": e.to_string() }), vec![e.to_string()])
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// A verb's answer: payload, violations, and an optional raw JSON document
/// printed instead of the report.
struct Answer {
    result: Value,
    violations: Vec<String>,
    raw: Option<Value>,
}

impl Answer {
    fn ok(result: Value) -> Answer {
        Answer {
            result,
            violations: vec![],
            raw: None,
        }
    }
}

struct Ctx {
    hasher: Sha256,
    verify: bool,
}

impl Ctx {
    fn load(&mut self, reference: &str) -> Res<Structure> {
        let s = load_structure(reference)?;
        self.hasher
            .update(hyperforge::emit_structure(&s).as_bytes());
        if self.verify {
            let kind = Kind::from(s.kind);
            let report = check_axioms(&s, kind)?;
            if !report.passed {
                let v = report.describe(&s);
                return Err(Failure::Violation(
                    json!({ "structure": s.name, "kind": kind.as_str(), "load_verification": "failed" }),
                    v,
                ));
            }
        }
        Ok(s)
    }
}

/// `catalog:<name>` or a path to a structure JSON file.
pub fn load_structure(reference: &str) -> hyperforge::Result<Structure> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        return catalog::make(name.parse::<CatalogKey>()?);
    }
    let text = std::fs::read_to_string(reference)
        .map_err(|e| Error::Parse(format!("{reference}: {e}")))?;
    hyperforge::parse_structure(&text)
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut hasher = Sha256::new();
    for a in argv.iter().skip(1) {
        let a = a.to_string_lossy();
        if a != "--json" && a != "--timing" {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
    }
    let mut ctx = Ctx {
        hasher,
        verify: !cli.no_verify,
    };
    let start = Instant::now();
    let verb = verb_name(&cli.command);
    let answer = dispatch(&cli, &mut ctx);
    let wall = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let digest: String = ctx
        .hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let (result, violations, raw) = match answer {
        Ok(a) => (a.result, a.violations, a.raw),
        Err(Failure::Input(msg)) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
        Err(Failure::Violation(r, v)) => (r, v, None),
    };
    let code = if violations.is_empty() { 0 } else { 1 };
    if let Some(raw) = raw {
        if code == 0 {
            return Outcome {
                code,
                stdout: pretty(&raw),
                stderr: String::new(),
            };
        }
    }
    let report = RunReport {
        verb,
        input_digest: digest,
        seed: cli.seed,
        result,
        violations,
        wall_time_ms: wall,
    };
    let stdout = if cli.json {
        pretty(&serde_json::to_value(&report).expect("report serializes"))
    } else {
        human(&report)
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

/// Human summary rendered from the report's JSON.
fn human(r: &RunReport) -> String {
    let mut out = format!("{}\n", r.verb);
    if let Value::Object(map) = &r.result {
        for (k, v) in map {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k}: {v}\n"));
        }
    } else {
        out.push_str(&format!("  {}\n", r.result));
    }
    for v in &r.violations {
        out.push_str(&format!("  violation: {v}\n"));
    }
    out.push_str(&format!("{} violations\n", r.violations.len()));
    if let Some(ms) = r.wall_time_ms {
        out.push_str(&format!("{ms:.1} ms\n"));
    }
    out
}

fn verb_name(c: &Command) -> String {
    match c {
        Command::Check { .. } => "check".into(),
        Command::Characteristic { .. } => "characteristic".into(),
        Command::Quotient { .. } => "quotient".into(),
        Command::Marshall { .. } => "marshall".into(),
        Command::Poly { action } => format!(
            "poly {}",
            match action {
                PolyAction::Divide { .. } => "divide",
                PolyAction::Roots { .. } => "roots",
                PolyAction::Irreducible { .. } => "irreducible",
                PolyAction::Quotient { .. } => "quotient",
            }
        ),
        Command::Forms { action } => format!(
            "forms {}",
            match action {
                FormsAction::Isometric { .. } => "isometric",
                FormsAction::Witt { .. } => "witt",
                FormsAction::Isotropic { .. } => "isotropic",
                FormsAction::Values { .. } => "values",
                FormsAction::Classify { .. } => "classify",
            }
        ),
        Command::Extend { .. } => "extend".into(),
        Command::Tower { .. } => "tower".into(),
        Command::Hauptsatz { .. } => "hauptsatz".into(),
        Command::CatalogList => "catalog-list".into(),
    }
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Res<Answer> {
    match &cli.command {
        Command::Check { structure, kind } => {
            let s = ctx.load(structure)?;
            let kind = match kind {
                Some(k) => k.parse::<Kind>()?,
                None => Kind::from(s.kind),
            };
            let report = check_axioms(&s, kind)?;
            Ok(Answer {
                result: json!({
                    "structure": s.name,
                    "size": s.size(),
                    "kind": kind.as_str(),
                    "passed": report.passed,
                }),
                violations: report.describe(&s),
                raw: None,
            })
        }
        Command::Characteristic { structure } => {
            let s = ctx.load(structure)?;
            Ok(Answer::ok(
                json!({ "structure": s.name, "characteristic": characteristic(&s) }),
            ))
        }
        Command::Quotient {
            structure,
            ideal,
            emit,
        } => {
            let s = ctx.load(structure)?;
            let gens: ElemSet = s.parse_list(ideal)?.into_iter().collect();
            let i = ideal_generate(&s, &gens);
            let flags = classify_ideal(&s, &i)?;
            let (q, p) = quotient_by_ideal(&s, &i);
            let mut result = json!({
                "structure": s.name,
                "ideal": s.fmt_set(&i.members),
                "flags": flags,
                "quotient_size": q.size(),
                "classes": classes(&s, &q, &p),
            });
            with_emit(&mut result, *emit, &q, &s, &p)
        }
        Command::Marshall {
            structure,
            subset,
            emit,
        } => {
            let s = ctx.load(structure)?;
            let nonzero = |mut m: ElemSet| {
                m.remove(s.zero());
                m
            };
            let m = match subset.as_str() {
                "squares" => nonzero(s.squares()),
                "sumsquares" => nonzero(s.sum_of_squares()),
                other => match other.strip_prefix("explicit:") {
                    Some(list) => s.parse_list(list)?.into_iter().collect(),
                    None => {
                        return Err(Failure::Input(format!(
                            "subset must be squares, sumsquares or explicit:<list>, got `{other}`"
                        )))
                    }
                },
            };
            let coherence = is_coherent(&s, &m);
            let mq = marshall_quotient(&s, &m)?;
            let mut result = json!({
                "structure": s.name,
                "subset": s.fmt_set(&m),
                "coherent": coherence.coherent,
                "quotient_size": mq.quotient.size(),
                "single_valued_products": mq.quotient.mul_single_valued(),
                "classes": classes(&s, &mq.quotient, &mq.projection),
                "diagnostics": mq.diagnostics,
            });
            with_emit(&mut result, *emit, &mq.quotient, &s, &mq.projection)
        }
        Command::Poly { action } => poly_verb(action, ctx),
        Command::Forms { action } => forms_verb(action, ctx),
        Command::Extend {
            base,
            alphas,
            reduced,
            emit,
        } => {
            let f = ctx.load(base)?;
            let alphas = f.parse_list(alphas)?;
            let (top, proj, ext_size) = match alphas.as_slice() {
                [] => return Err(Failure::Input("no scalars given".into())),
                [a] => {
                    let e = extend(&f, *a)?;
                    let q = s_quotient(&e, *reduced);
                    (q.structure, q.projection, Some(e.structure.size()))
                }
                _ if *reduced => {
                    return Err(Failure::Input("--reduced takes a single scalar".into()))
                }
                many => {
                    let t = iterate_tower(&f, many)?;
                    (t.top().clone(), t.projection(), None)
                }
            };
            let class = forms::classify_hyperfield(&top);
            let mut result = json!({
                "base": f.name,
                "alphas": alphas.iter().map(|&a| f.name_of(a)).collect::<Vec<_>>(),
                "extension_size": ext_size,
                "quotient": top.name,
                "quotient_size": top.size(),
                "classification": class,
                "classes": classes(&f, &top, &proj),
            });
            with_emit(&mut result, *emit, &top, &f, &proj)
        }
        Command::Tower {
            base,
            alphas,
            permutations,
        } => {
            let f = ctx.load(base)?;
            let alphas = f.parse_list(alphas)?;
            let t = iterate_tower(&f, &alphas)?;
            let proj = t.projection();
            let pf = forms::pfister(&f, &alphas);
            let mut violations = vec![];
            let fr = quadext::tower_formally_real(&t);
            if !fr.agrees() {
                violations.push(format!(
                    "formal reality: Pfister criterion {} but top stage {}",
                    fr.criterion, fr.oracle
                ));
            }
            let mut checked = 0;
            for a in f.nonzero() {
                for b in f.nonzero() {
                    checked += 1;
                    let r = quadext::tower_class_eq(&t, a, b);
                    if !r.agrees() {
                        violations.push(format!(
                            "class equality of {} and {}: Pfister criterion {} but classes {}",
                            f.name_of(a),
                            f.name_of(b),
                            r.criterion,
                            r.oracle
                        ));
                    }
                }
            }
            let mut result = json!({
                "base": f.name,
                "alphas": alphas.iter().map(|&a| f.name_of(a)).collect::<Vec<_>>(),
                "stage_sizes": t.stages.iter().map(|s| s.field.size()).collect::<Vec<_>>(),
                "pfister": pf.display(&f),
                "pfister_values": f.fmt_set(&forms::value_set(&f, &pf)),
                "formally_real": fr.oracle,
                "class_pairs_checked": checked,
                "classes": classes(&f, t.top(), &proj),
            });
            if *permutations {
                let isos = quadext::tower_permutation_isos(&f, &alphas)?;
                result["permutations"] = isos
                    .iter()
                    .map(|(order, iso)| {
                        json!({
                            "order": order.iter().map(|&a| f.name_of(a)).collect::<Vec<_>>(),
                            "isomorphism": iso.map,
                        })
                    })
                    .collect();
            }
            Ok(Answer {
                result,
                violations,
                raw: None,
            })
        }
        Command::Hauptsatz {
            base,
            n,
            terms,
            trace,
            sample,
            scaled,
        } => {
            let f = ctx.load(base)?;
            let mode = match (sample, scaled) {
                (Some(count), _) => GenMode::Sampled {
                    seed: cli.seed,
                    count: *count,
                },
                (None, true) => GenMode::ExhaustiveScaled,
                (None, false) => GenMode::Exhaustive,
            };
            let traces = if *trace {
                TraceMode::All
            } else {
                TraceMode::None
            };
            let r = check_hauptsatz(&f, *n, *terms, mode, traces)?;
            let mut violations: Vec<String> = r
                .violations
                .iter()
                .map(|v| {
                    format!(
                        "{} assembles to {} with anisotropic part {} of dimension {}",
                        v.representation, v.form, v.anisotropic, v.dim_w
                    )
                })
                .collect();
            violations.extend(
                r.non_monotone_traces
                    .iter()
                    .map(|t| format!("{t}: dim_W chain increases")),
            );
            let mut result = json!({
                "base": r.base,
                "n": r.n,
                "max_terms": r.max_terms,
                "mode": match mode {
                    GenMode::Exhaustive => "exhaustive".to_string(),
                    GenMode::ExhaustiveScaled => "exhaustive-scaled".to_string(),
                    GenMode::Sampled { seed, count } => format!("sampled {count} seed {seed}"),
                },
                "generated": r.generated,
                "distinct_forms": r.distinct,
                "hyperbolic": r.hyperbolic,
                "min_nonzero_dim_w": r.min_nonzero_dim_w,
                "violations": r.violations,
            });
            if *trace {
                result["traces"] = json!(r.traces);
                result["replays"] = json!(r.replays);
            }
            Ok(Answer {
                result,
                violations,
                raw: None,
            })
        }
        Command::CatalogList => {
            let mut entries = vec![];
            for key in catalog::standard_keys() {
                let s = catalog::make(key)?;
                entries.push(json!({
                    "key": format!("catalog:{key}"),
                    "size": s.size(),
                    "declared": s.kind,
                }));
            }
            Ok(Answer::ok(json!({ "structures": entries })))
        }
    }
}

fn classes(src: &Structure, tgt: &Structure, p: &Morphism) -> Value {
    let map: serde_json::Map<String, Value> = src
        .elements()
        .map(|a| (src.name_of(a).to_string(), json!(tgt.name_of(p.apply(a)))))
        .collect();
    Value::Object(map)
}

fn with_emit(
    result: &mut Value,
    emit: Emit,
    q: &Structure,
    src: &Structure,
    p: &Morphism,
) -> Res<Answer> {
    let raw = (emit == Emit::Json).then(|| {
        let mut doc = serde_json::to_value(to_json(q)).expect("structure serializes");
        doc["classes"] = classes(src, q, p);
        doc
    });
    Ok(Answer {
        result: std::mem::take(result),
        violations: vec![],
        raw,
    })
}

fn poly_verb(action: &PolyAction, ctx: &mut Ctx) -> Res<Answer> {
    match action {
        PolyAction::Divide { s, f, g } => {
            let st = ctx.load(&s.structure)?;
            let (f, g) = (parse_poly(&st, f)?, parse_poly(&st, g)?);
            let (q, r) = poly::euclid_divide(&st, &f, &g)?;
            let holds = poly::division_holds(&st, &f, &g, &q, &r);
            Ok(Answer {
                result: json!({
                    "quotient": q.display(&st, "X"),
                    "remainder": r.display(&st, "X"),
                    "verified": holds,
                }),
                violations: if holds {
                    vec![]
                } else {
                    vec!["division witness fails the membership check".into()]
                },
                raw: None,
            })
        }
        PolyAction::Roots { s, f } => {
            let st = ctx.load(&s.structure)?;
            let f = parse_poly(&st, f)?;
            let roots = poly::roots(&st, &f);
            let effective: Vec<&str> = roots
                .iter()
                .filter(|&a| poly::effective_root_witness(&st, &f, a).is_some())
                .map(|a| st.name_of(a))
                .collect();
            Ok(Answer::ok(json!({
                "polynomial": f.display(&st, "X"),
                "roots": st.fmt_set(&roots),
                "effective_roots": effective,
            })))
        }
        PolyAction::Irreducible { s, f } => {
            let st = ctx.load(&s.structure)?;
            let f = parse_poly(&st, f)?;
            let irr = poly::irreducibility(&st, &f)?;
            let factor = poly::find_factorization(&st, &f)?
                .map(|(a, b)| format!("({}) ({})", a.display(&st, "X"), b.display(&st, "X")));
            Ok(Answer::ok(json!({
                "polynomial": f.display(&st, "X"),
                "irreducible": irr.by_factorization,
                "root_free": irr.root_free,
                "factorization": factor,
            })))
        }
        PolyAction::Quotient { s, p, emit } => {
            let st = ctx.load(&s.structure)?;
            let p = parse_poly(&st, p)?;
            let q = poly::quotient_superfield(&st, &p)?;
            let report = if ctx.verify {
                Some(check_axioms(&q.structure, Kind::Superfield)?)
            } else {
                None
            };
            let root =
                poly::evaluate(&q.structure, &q.lift(&st, &p), q.x).contains(q.structure.zero());
            let mut violations = report.as_ref().map_or(vec![], |r| r.describe(&q.structure));
            if !root {
                violations.push("class of X is not a root of the modulus".into());
            }
            let result = json!({
                "modulus": p.display(&st, "X"),
                "size": q.structure.size(),
                "superfield": report.map(|r| r.passed),
                "x_is_root": root,
            });
            let raw = (emit == &Emit::Json).then(|| {
                serde_json::to_value(to_json(&q.structure)).expect("structure serializes")
            });
            Ok(Answer {
                result,
                violations,
                raw,
            })
        }
    }
}

fn forms_verb(action: &FormsAction, ctx: &mut Ctx) -> Res<Answer> {
    let parse = |s: &Structure, text: &str| -> Res<QForm> { Ok(QForm::parse(s, text)?) };
    match action {
        FormsAction::Isometric { s, lhs, rhs } => {
            let st = ctx.load(&s.structure)?;
            let (a, b) = (parse(&st, lhs)?, parse(&st, rhs)?);
            let iso = forms::isometric(&st, &a, &b)?;
            Ok(Answer::ok(json!({
                "lhs": a.display(&st),
                "rhs": b.display(&st),
                "isometric": iso,
            })))
        }
        FormsAction::Witt { s, form } => {
            let st = ctx.load(&s.structure)?;
            let phi = parse(&st, form)?;
            let w = forms::witt_decompose(&st, &phi);
            Ok(Answer::ok(json!({
                "form": phi.display(&st),
                "anisotropic": w.anisotropic.display(&st),
                "hyperbolic_planes": w.hyperbolic_count,
                "dim_w": w.dim_w(),
            })))
        }
        FormsAction::Isotropic { s, form } => {
            let st = ctx.load(&s.structure)?;
            let phi = parse(&st, form)?;
            Ok(Answer::ok(json!({
                "form": phi.display(&st),
                "isotropic": forms::is_isotropic(&st, &phi),
            })))
        }
        FormsAction::Values { s, form } => {
            let st = ctx.load(&s.structure)?;
            let phi = parse(&st, form)?;
            Ok(Answer::ok(json!({
                "form": phi.display(&st),
                "values": st.fmt_set(&forms::value_set(&st, &phi)),
            })))
        }
        FormsAction::Classify { s } => {
            let st = ctx.load(&s.structure)?;
            let class = forms::classify_hyperfield(&st);
            let sg = forms::special_group_report(&st);
            Ok(Answer::ok(json!({
                "structure": st.name,
                "classification": class,
                "special_group_axioms": sg.describe(&st),
            })))
        }
    }
}
