//! Document format and command dispatch behind the `compat-linf` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on input errors (unreadable file, schema error, wrong document kind).

pub mod document;
pub mod model;

use std::path::PathBuf;

use compat_linf::cohomology::{cohomology_dims, linfty_cohomology_dims, max_coder_arity};
use compat_linf::deformation::{
    check_deformation, infinitesimal, is_extensible, obstruction, trivialize, Extension, Infinitesimal, OrderNDeformation,
};
use compat_linf::homotopy::{check_ainfty, check_higher_jacobi, check_mixed_jacobi, from_coder, sum_structure, vacuity_bound, CoderTuple};
use compat_linf::report::tuple_json;
use compat_linf::rotabaxter::{build_lifted, check_lifted, check_rota_baxter, search_rota_baxter};
use compat_linf::twoterm::{
    check_two_term, crossed_to_strict, embed, phi, psi, skeletal_to_triple, strict_to_crossed, triple_to_skeletal,
};
use compat_linf::{exactla::format_scalar, CoderRep, CompatiblePair, Report, Scalar};
use serde_json::{json, Value};

use document::{Document, Kind, LoadError};
use model::{HomotopyDoc, InputError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformAction {
    Check,
    Obstruction,
    Extend,
    Trivialize,
}

/// Forms accepted by `convert`. `strict` and `skeletal` are 2-term documents
/// with the respective property; `two-term` is any 2-term document.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    TwoTerm,
    Strict,
    Skeletal,
    Crossed,
    Triple,
    Lie2,
}

impl Form {
    pub fn parse(s: &str) -> Option<Form> {
        Some(match s {
            "two-term" => Form::TwoTerm,
            "strict" => Form::Strict,
            "skeletal" => Form::Skeletal,
            "crossed" => Form::Crossed,
            "triple" => Form::Triple,
            "lie2" => Form::Lie2,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Form::TwoTerm => "two-term",
            Form::Strict => "strict",
            Form::Skeletal => "skeletal",
            Form::Crossed => "crossed",
            Form::Triple => "triple",
            Form::Lie2 => "lie2",
        }
    }

    fn kind(self) -> Kind {
        match self {
            Form::TwoTerm | Form::Strict | Form::Skeletal => Kind::TwoTerm,
            Form::Crossed => Kind::CrossedModule,
            Form::Triple => Kind::SkeletalTriple,
            Form::Lie2 => Kind::Lie2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Cohomology,
    Deform { order: Option<usize>, action: DeformAction },
    Convert { from: Form, to: Form },
    Rota { check: Option<PathBuf>, search: bool, entries: Vec<Scalar> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub json: bool,
    pub n_max: Option<usize>,
    pub arity_cap: Option<usize>,
}

/// Result of a command: exit code, machine report, human text and, for
/// commands producing one, an output document.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
    pub document: Option<Document>,
}

impl Outcome {
    pub fn input(msg: impl Into<String>) -> Outcome {
        let msg = msg.into();
        Outcome { code: EXIT_INPUT, json: json!({"status": "error", "error": msg}), text: format!("input error: {msg}"), document: None }
    }

    pub fn load_error(e: &LoadError) -> Outcome {
        let mut o = Outcome::input(e.to_string());
        if let LoadError::Schema(es) = e {
            let list: Vec<Value> = es.iter().map(|e| json!({"pointer": e.pointer, "message": e.message})).collect();
            o.json["schema_errors"] = Value::Array(list);
        }
        o
    }

    fn from_reports(command: &str, reports: Vec<Report>) -> Outcome {
        let passed = reports.iter().all(|r| r.passed);
        let text = reports.iter().map(Report::summary).collect::<Vec<_>>().join("\n");
        Outcome {
            code: if passed { EXIT_PASS } else { EXIT_FAIL },
            json: json!({
                "command": command,
                "status": status(passed),
                "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
            }),
            text,
            document: None,
        }
    }

    /// The string printed on stdout.
    pub fn render(&self, json_mode: bool) -> String {
        if json_mode {
            let mut v = self.json.clone();
            if let Some(d) = &self.document {
                v["document"] = d.to_value();
            }
            serde_json::to_string_pretty(&v).expect("serializable")
        } else {
            let mut s = self.text.clone();
            if let Some(d) = &self.document {
                if !s.is_empty() {
                    s.push('\n');
                }
                s.push_str(d.to_string().trim_end());
            }
            s
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

impl From<InputError> for Outcome {
    fn from(e: InputError) -> Self {
        Outcome::input(e.0)
    }
}

impl From<compat_linf::Error> for Outcome {
    fn from(e: compat_linf::Error) -> Self {
        Outcome::input(e.to_string())
    }
}

type Run = std::result::Result<Outcome, Outcome>;

pub fn run(command: &Command, doc: &Document, flags: &Flags) -> Outcome {
    let r = match command {
        Command::Check => run_check(doc, flags),
        Command::Cohomology => run_cohomology(doc, flags),
        Command::Deform { order, action } => run_deform(doc, flags, *order, *action),
        Command::Convert { from, to } => run_convert(doc, *from, *to),
        Command::Rota { check, search, entries } => run_rota(doc, check.as_deref(), *search, entries),
    };
    r.unwrap_or_else(|e| e)
}

fn homotopy_reports(p: &CompatiblePair, n_max: Option<usize>) -> Run {
    let n = n_max.unwrap_or_else(|| vacuity_bound(p.space(), p.max_arity()).unwrap_or(p.max_arity() + 1).max(1));
    let first = check_higher_jacobi(&p.first, n)?.with_note("first structure");
    let second = check_higher_jacobi(&p.second, n)?.with_note("second structure");
    let mixed = check_mixed_jacobi(p, n);
    Ok(Outcome::from_reports("check", vec![first, second, mixed]))
}

fn run_check(doc: &Document, flags: &Flags) -> Run {
    let reports = match doc.kind {
        Kind::LinftyPair => {
            let h = model::read_homotopy(doc)?;
            if !h.terms.is_empty() {
                return Err(Outcome::input("deformation terms present; use `deform --action check`"));
            }
            return homotopy_reports(&h.pair, flags.n_max);
        }
        Kind::AinftyPair => {
            let h = model::read_homotopy(doc)?;
            let p = &h.pair;
            let n = flags.n_max.unwrap_or((2 * p.max_arity()).saturating_sub(1).max(1));
            vec![
                check_ainfty(&p.first, n)?.with_note("first structure"),
                check_ainfty(&p.second, n)?.with_note("second structure"),
                check_ainfty(&sum_structure(p)?, n)?.with_note("sum of the two structures"),
            ]
        }
        Kind::LiePair => {
            let (g, rep) = model::read_lie_pair(doc)?;
            vec![g.validate()?, rep.validate(&g)]
        }
        Kind::TwoTerm => vec![check_two_term(&model::read_two_term(doc)?)],
        Kind::CrossedModule => vec![model::read_crossed(doc)?.validate()],
        Kind::SkeletalTriple => {
            let t = model::read_triple(doc)?;
            let (g, rep) = (t.g.validate()?, t.rep.validate(&t.g));
            if !(g.passed && rep.passed) {
                vec![g, rep]
            } else {
                vec![g, rep, t.validate()?]
            }
        }
        Kind::Lie2 => vec![model::read_lie2(doc)?.validate()],
        Kind::RotaBaxter => {
            let (g, rep) = model::read_lie_pair(doc)?;
            if doc.space("V").is_none() {
                return Err(Outcome::input("a rota-baxter document needs a space \"V\""));
            }
            let (gr, rr) = (g.validate()?, rep.validate(&g));
            if !(gr.passed && rr.passed) {
                vec![gr, rr]
            } else {
                vec![gr, rr, check_lifted(&build_lifted(&g, &rep)?)?]
            }
        }
        Kind::RbCandidate => return Err(Outcome::input("an rb-candidate is checked with `rota --check` against a rota-baxter document")),
    };
    Ok(Outcome::from_reports("check", reports))
}

fn cohomology_outcome(dims: Vec<usize>, first_level: usize, truncation: String) -> Outcome {
    let text = format!(
        "H = [{}] (levels {}..={}, truncation {truncation})",
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
        first_level,
        first_level + dims.len().saturating_sub(1)
    );
    Outcome {
        code: EXIT_PASS,
        json: json!({"command": "cohomology", "status": "pass", "H": dims, "first_level": first_level, "truncation": truncation}),
        text,
        document: None,
    }
}

fn default_cap(p: &CompatiblePair, n_max: usize, flag: Option<usize>) -> Result<usize, Outcome> {
    if let Some(c) = flag {
        return Ok(c);
    }
    let v = p.space().desuspend();
    let top = (0..=n_max as i64).map(|d| max_coder_arity(&v, d)).collect::<Option<Vec<_>>>();
    match top {
        Some(t) => Ok(t.into_iter().max().unwrap_or(1).max(1)),
        None => Err(Outcome::input("this degree window has cochains of unbounded arity; pass --arity-cap")),
    }
}

fn linfty_cohomology(p: &CompatiblePair, flags: &Flags) -> Run {
    let check = homotopy_reports(p, None)?;
    if check.code != EXIT_PASS {
        return Ok(check);
    }
    let n_max = flags.n_max.unwrap_or(3);
    let cap = default_cap(p, n_max, flags.arity_cap)?;
    let h = linfty_cohomology_dims(p, n_max, cap)?;
    let t = h.truncation();
    Ok(cohomology_outcome(h.dims, 1, t))
}

fn run_cohomology(doc: &Document, flags: &Flags) -> Run {
    match doc.kind {
        Kind::LiePair => {
            let (g, rep) = model::read_lie_pair(doc)?;
            let checks = vec![g.validate()?, rep.validate(&g)];
            if checks.iter().any(|r| !r.passed) {
                return Ok(Outcome::from_reports("cohomology", checks));
            }
            Ok(cohomology_outcome(cohomology_dims(&g, &rep, flags.n_max.unwrap_or(3))?, 0, "exact".into()))
        }
        Kind::LinftyPair => {
            let h = model::read_homotopy(doc)?;
            linfty_cohomology(&h.pair, flags)
        }
        Kind::TwoTerm => {
            let s = model::read_two_term(doc)?;
            let r = check_two_term(&s);
            if !r.passed {
                return Ok(Outcome::from_reports("cohomology", vec![r]));
            }
            linfty_cohomology(&embed(&s)?, flags)
        }
        k => Err(Outcome::input(format!("cohomology is defined for lie-pair, linfty-pair and two-term documents, not {k}"))),
    }
}

// ---------------------------------------------------------------------------
// deformations

fn coder_json(c: &CoderRep) -> Value {
    let comps: Vec<Value> = c
        .components()
        .iter()
        .map(|(k, m)| {
            let entries: Vec<Value> = m
                .entries()
                .iter()
                .map(|(i, o)| {
                    let out: serde_json::Map<String, Value> =
                        o.iter().map(|(b, x)| (format!("{},{}", b.degree, b.index), Value::String(format_scalar(x)))).collect();
                    json!({"in": tuple_json(i), "out": out})
                })
                .collect();
            json!({"arity": k, "entries": entries})
        })
        .collect();
    json!({"degree": c.degree(), "components": comps})
}

fn tuple_value(t: &CoderTuple) -> Value {
    Value::Array(t.slots.iter().map(coder_json).collect())
}

fn deformation_document(space_name: &str, d: &OrderNDeformation) -> Result<Document, Outcome> {
    let terms = d
        .terms
        .iter()
        .map(|t| CompatiblePair::new(from_coder(&t.slots[0])?, from_coder(&t.slots[1])?))
        .collect::<Result<Vec<_>, compat_linf::Error>>()?;
    Ok(model::write_homotopy(Kind::LinftyPair, space_name, &HomotopyDoc { pair: d.base.clone(), terms })?)
}

fn run_deform(doc: &Document, flags: &Flags, order: Option<usize>, action: DeformAction) -> Run {
    if doc.kind != Kind::LinftyPair {
        return Err(Outcome::input(format!("deform needs a linfty-pair document, got {}", doc.kind)));
    }
    let h = model::read_homotopy(doc)?;
    let mut terms = h.coder_terms()?;
    let order = order.unwrap_or(terms.len());
    if terms.len() > order {
        return Err(Outcome::input(format!("the document has terms up to t^{}, more than --order {order}", terms.len())));
    }
    let base = homotopy_reports(&h.pair, flags.n_max)?;
    if base.code != EXIT_PASS {
        return Ok(base);
    }
    let v = h.pair.space().desuspend();
    terms.resize(order, CoderTuple::zero(&v, 1, 2));
    let d = OrderNDeformation::new(h.pair.clone(), terms, flags.arity_cap)?;
    let eqs = check_deformation(&d)?;
    if action == DeformAction::Check || !eqs.passed {
        let mut reports = vec![eqs];
        if let Infinitesimal::Term { cocycle, .. } = infinitesimal(&d)? {
            reports.push(cocycle.with_note("infinitesimal"));
        }
        let mut o = Outcome::from_reports("deform", reports);
        o.json["order"] = json!(order);
        return Ok(o);
    }
    let space_name = doc.spaces[0].0.clone();
    match action {
        DeformAction::Check => unreachable!(),
        DeformAction::Obstruction => {
            let ob = obstruction(&d)?;
            let zero = ob.truncated(d.arity_cap).is_zero();
            let text = format!("obstruction at order {}: {}", order + 1, if zero { "zero" } else { "nonzero" });
            Ok(Outcome {
                code: EXIT_PASS,
                json: json!({"command": "deform", "status": "pass", "order": order, "obstruction_zero": zero, "obstruction": tuple_value(&ob)}),
                text,
                document: None,
            })
        }
        DeformAction::Extend => {
            let r = is_extensible(&d)?;
            let trunc = if r.exact { "exact".to_string() } else { format!("arity<={}", r.arity_cap) };
            match r.outcome {
                Extension::Extensible { witness } => {
                    let ext = compat_linf::deformation::extend(&d, &witness)?;
                    let check = check_deformation(&ext)?;
                    Ok(Outcome {
                        code: if check.passed { EXIT_PASS } else { EXIT_FAIL },
                        json: json!({"command": "deform", "status": status(check.passed), "extensible": true, "truncation": trunc,
                                     "witness": tuple_value(&witness), "reports": [check.to_json()]}),
                        text: format!("extensible to order {} (truncation {trunc})\n{}", order + 1, check.summary()),
                        document: Some(deformation_document(&space_name, &ext)?),
                    })
                }
                Extension::Obstructed { obstruction } => Ok(Outcome {
                    code: EXIT_FAIL,
                    json: json!({"command": "deform", "status": "fail", "extensible": false, "truncation": trunc,
                                 "obstruction": tuple_value(&obstruction)}),
                    text: format!("not extensible: the obstruction class is nonzero (truncation {trunc})"),
                    document: None,
                }),
            }
        }
        DeformAction::Trivialize => {
            let t = trivialize(&d, order.max(1))?;
            let text = match t.stuck_at {
                Some(p) => format!("not trivial: the term of order {p} has a nonzero class"),
                None => format!("trivial: {} gauge step(s)", t.steps.len()),
            };
            Ok(Outcome {
                code: if t.trivial { EXIT_PASS } else { EXIT_FAIL },
                json: json!({"command": "deform", "status": status(t.trivial), "trivial": t.trivial, "stuck_at": t.stuck_at,
                             "steps": t.steps.iter().map(|(p, c)| json!({"order": p, "phi": coder_json(c)})).collect::<Vec<_>>()}),
                text,
                document: Some(deformation_document(&space_name, &t.result)?),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// conversions

fn converted(reports: Vec<Report>, out: Document, label: &str) -> Outcome {
    let mut o = Outcome::from_reports("convert", reports);
    o.text = format!("{label}\n{}", o.text);
    o.json["to"] = json!(out.kind.name());
    o.document = Some(out);
    o
}

fn run_convert(doc: &Document, from: Form, to: Form) -> Run {
    if doc.kind != from.kind() {
        return Err(Outcome::input(format!("--from {} expects a {} document, got {}", from.name(), from.kind(), doc.kind)));
    }
    let label = format!("{} -> {}", from.name(), to.name());
    let fail = |reports: Vec<Report>| Ok(Outcome::from_reports("convert", reports));
    match (from, to) {
        (Form::Strict | Form::Skeletal | Form::TwoTerm, Form::Crossed | Form::Triple | Form::Lie2) => {
            let s = model::read_two_term(doc)?;
            let r = check_two_term(&s);
            if !r.passed {
                return fail(vec![r]);
            }
            let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Outcome { code: EXIT_FAIL, ..Outcome::input(format!("the structure is not {what}")) }) };
            match (from, to) {
                (Form::Strict, _) => need(s.is_strict(), "strict")?,
                (Form::Skeletal, _) => need(s.is_skeletal(), "skeletal")?,
                _ => {}
            }
            let out = match to {
                Form::Crossed => {
                    need(s.is_strict(), "strict")?;
                    let c = strict_to_crossed(&s)?;
                    return Ok(converted(vec![r, c.validate()], model::write_crossed(&c), &label));
                }
                Form::Triple => {
                    need(s.is_skeletal(), "skeletal")?;
                    let t = skeletal_to_triple(&s)?;
                    return Ok(converted(vec![r, t.validate()?], model::write_triple(&t), &label));
                }
                _ => phi(&s)?,
            };
            Ok(converted(vec![r, out.validate()], model::write_lie2(&out), &label))
        }
        (Form::Crossed, Form::Strict | Form::TwoTerm) => {
            let c = model::read_crossed(doc)?;
            let r = c.validate();
            if !r.passed {
                return fail(vec![r]);
            }
            let s = crossed_to_strict(&c)?;
            Ok(converted(vec![r, check_two_term(&s)], model::write_two_term(&s), &label))
        }
        (Form::Triple, Form::Skeletal | Form::TwoTerm) => {
            let t = model::read_triple(doc)?;
            let checks = vec![t.g.validate()?, t.rep.validate(&t.g)];
            if checks.iter().any(|r| !r.passed) {
                return fail(checks);
            }
            let r = t.validate()?;
            if !r.passed {
                return fail(vec![r]);
            }
            let s = triple_to_skeletal(&t)?;
            Ok(converted(vec![r, check_two_term(&s)], model::write_two_term(&s), &label))
        }
        (Form::Lie2, Form::TwoTerm | Form::Strict | Form::Skeletal) => {
            let d = model::read_lie2(doc)?;
            let r = d.validate();
            if !r.passed {
                return fail(vec![r]);
            }
            let s = psi(&d)?;
            let mut reports = vec![r, check_two_term(&s)];
            let ok = match to {
                Form::Strict => s.is_strict(),
                Form::Skeletal => s.is_skeletal(),
                _ => true,
            };
            let mut o = converted(std::mem::take(&mut reports), model::write_two_term(&s), &label);
            if !ok {
                o.code = EXIT_FAIL;
                o.json["status"] = json!("fail");
                o.text.push_str(&format!("\nthe resulting 2-term structure is not {}", to.name()));
            }
            Ok(o)
        }
        _ => Err(Outcome::input(format!("no conversion from {} to {}", from.name(), to.name()))),
    }
}

// ---------------------------------------------------------------------------
// Rota-Baxter operators

fn run_rota(doc: &Document, check: Option<&std::path::Path>, search: bool, entries: &[Scalar]) -> Run {
    if doc.kind != Kind::RotaBaxter {
        return Err(Outcome::input(format!("rota needs a rota-baxter document, got {}", doc.kind)));
    }
    if doc.space("V").is_none() {
        return Err(Outcome::input("a rota-baxter document needs a space \"V\""));
    }
    let (g, rep) = model::read_lie_pair(doc)?;
    let checks = vec![g.validate()?, rep.validate(&g)];
    if checks.iter().any(|r| !r.passed) {
        return Ok(Outcome::from_reports("rota", checks));
    }
    let lp = build_lifted(&g, &rep)?;
    match (check, search) {
        (Some(path), false) => {
            let cd = Document::load(path).map_err(|e| Outcome::load_error(&e))?;
            let c = model::read_candidate(&cd)?;
            if c.r.in_dims() != [lp.dim_v()] || c.r.out_dim() != lp.dim_g() {
                return Err(Outcome::input("the candidate's spaces do not match the rota-baxter document"));
            }
            let r = check_rota_baxter(&lp, &c)?;
            let ok = r.is_rota_baxter() && r.agree();
            let mut o = Outcome::from_reports("rota", vec![r.derived.clone(), r.defining.clone()]);
            o.code = if ok { EXIT_PASS } else { EXIT_FAIL };
            o.json["status"] = json!(status(ok));
            o.json["rota_baxter"] = json!(r.is_rota_baxter());
            o.json["agree"] = json!(r.agree());
            Ok(o)
        }
        (None, true) => {
            if entries.is_empty() {
                return Err(Outcome::input("--entries must list at least one scalar"));
            }
            let found = search_rota_baxter(&lp, entries)?;
            let agree = found.iter().filter(|(_, r)| r.agree()).count();
            let rb: Vec<_> = found.iter().filter(|(_, r)| r.is_rota_baxter()).collect();
            let ok = agree == found.len();
            let ops: Vec<Value> = rb.iter().map(|(c, _)| model::write_candidate(lp.dim_g(), lp.dim_v(), c).to_value()).collect();
            Ok(Outcome {
                code: if ok { EXIT_PASS } else { EXIT_FAIL },
                json: json!({"command": "rota", "status": status(ok), "candidates": found.len(), "rota_baxter": rb.len(),
                             "agree": agree, "operators": ops}),
                text: format!("{} candidates, {} Rota-Baxter, verdicts agree on {agree}", found.len(), rb.len()),
                document: None,
            })
        }
        _ => Err(Outcome::input("rota needs exactly one of --check <file> or --search")),
    }
}
