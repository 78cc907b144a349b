use std::fmt::Write as _;
use std::sync::Arc;

use prolam_core::automata::{transition_monoid, Dfa, DfaJson};
use prolam_core::definability::def_set;
use prolam_core::model::{Model, Value};
use prolam_core::profinite::{
    apply_omega, check_natural, check_parametric, compose, iota, omega_approximant, separate, word_omega, Approximant,
    ApproximantJson, Evidence, Levels, Sampling, Separation,
};
use prolam_core::reglang::{intersect_across, RegLanguage, RegLanguageJson};
use prolam_core::syntax::{church_term, normalize, parse_closed, parse_type, print, Term, Type};
use serde_json::{json, Value as Json};

use crate::args::{Command, Config, DfaCommand, LangCommand, LangOp, ProCommand};
use crate::error::{CliError, CliResult};
use crate::input;

/// What a command prints, in both output formats.
pub struct Report {
    pub text: String,
    pub json: Json,
}

impl Report {
    fn new(text: impl Into<String>, json: Json) -> Report {
        Report {
            text: text.into(),
            json,
        }
    }
}

pub fn run(cfg: &Config, command: &Command) -> CliResult<Report> {
    match command {
        Command::Check { term } => check(term),
        Command::Normalize { term } => normalize_cmd(term),
        Command::Interp { term } => interp(cfg, term),
        Command::Def => def(cfg),
        Command::Lang(c) => lang(cfg, c),
        Command::Pro(c) => pro(cfg, c),
        Command::Dfa(c) => dfa(cfg, c),
    }
}

fn closed_term(arg: &str) -> CliResult<(Term, Type)> {
    Ok(parse_closed(input::text(arg)?.trim())?)
}

fn required_type(cfg: &Config) -> CliResult<Type> {
    let src = cfg
        .ty
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --type <TYPE>".into()))?;
    Ok(parse_type(&input::text(src)?)?)
}

fn model(cfg: &Config) -> Model {
    Model::with_cap(cfg.q, cfg.cap)
}

/// Decimal index, shortened for text output.
fn short_index(s: &str) -> String {
    if s.len() <= 24 {
        s.to_string()
    } else {
        format!("{}..{} ({} digits)", &s[..8], &s[s.len() - 8..], s.len())
    }
}

/// At most 16 indices, then a count of the rest.
fn listing(indices: &[String]) -> String {
    let mut parts: Vec<String> = indices
        .iter()
        .take(16)
        .map(|s| format!("#{}", short_index(s)))
        .collect();
    if indices.len() > 16 {
        parts.push(format!("... ({} more)", indices.len() - 16));
    }
    parts.join(" ")
}

fn check(term: &str) -> CliResult<Report> {
    let (t, ty) = closed_term(term)?;
    Ok(Report::new(
        format!("{} : {ty}", print(&t)),
        json!({ "term": print(&t), "type": ty.to_string() }),
    ))
}

fn normalize_cmd(term: &str) -> CliResult<Report> {
    let (t, ty) = closed_term(term)?;
    let nf = normalize(&t)?;
    Ok(Report::new(
        print(&nf),
        json!({ "term": print(&t), "type": ty.to_string(), "normal_form": print(&nf), "tree": nf.to_json() }),
    ))
}

/// Rows `a1 .. an | result` for a first-order function, first argument
/// outermost.
fn first_order_rows(v: &Value, q: u32, arity: usize, prefix: &mut Vec<u32>, out: &mut String) {
    if prefix.len() == arity {
        let args: Vec<String> = prefix.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{} | {}", args.join(" "), v.as_base().expect("base result"));
        return;
    }
    for x in 0..q {
        prefix.push(x);
        first_order_rows(v.at(x as usize), q, arity, prefix, out);
        prefix.pop();
    }
}

fn interp(cfg: &Config, term: &str) -> CliResult<Report> {
    let (t, ty) = closed_term(term)?;
    let m = model(cfg);
    let e = m.interpret_closed(&t)?;
    let index = e.index().to_string();
    let mut text = format!("{} : {ty} over q={} is #{}\n", print(&t), cfg.q, short_index(&index));
    let (args, result) = ty.uncurry();
    if args.iter().all(|a| **a == Type::Base) && *result == Type::Base {
        first_order_rows(e.value(), cfg.q, args.len(), &mut Vec::new(), &mut text);
    } else if let Some(entries) = e.table() {
        if entries.len() <= 64 {
            for (i, entry) in entries.iter().enumerate() {
                let _ = writeln!(text, "#{i} | #{}", short_index(&entry.index().to_string()));
            }
        } else {
            let _ = writeln!(text, "({} table entries)", entries.len());
        }
    }
    Ok(Report::new(
        text.trim_end(),
        json!({
            "term": print(&t),
            "type": ty.to_string(),
            "q": cfg.q,
            "index": index,
            "table": e.table_json(),
        }),
    ))
}

fn def(cfg: &Config) -> CliResult<Report> {
    let ty = required_type(cfg)?;
    let d = def_set(&model(cfg), &ty, cfg.budget)?;
    let j = d.to_json();
    let mut text = format!(
        "Def({ty}) over [{}]: {} element{}, {}\n",
        cfg.q,
        d.len(),
        if d.len() == 1 { "" } else { "s" },
        d.exactness()
    );
    for e in &j.elements {
        let _ = writeln!(text, "  #{}  {}", short_index(&e.index), e.witness);
    }
    Ok(Report::new(
        text.trim_end(),
        serde_json::to_value(&j).expect("serializable"),
    ))
}

fn language(cfg: &Config, arg: &str) -> CliResult<RegLanguage> {
    let j: RegLanguageJson = input::json(arg)?;
    Ok(j.decode(cfg.cap)?)
}

fn language_report(l: &RegLanguage) -> CliResult<Report> {
    let j = l.to_json()?;
    let text = format!(
        "language at {} over [{}] accepting {} point{}: {}",
        j.r#type,
        j.q,
        j.accepting.len(),
        if j.accepting.len() == 1 { "" } else { "s" },
        listing(&j.accepting)
    );
    Ok(Report::new(
        text.trim_end(),
        serde_json::to_value(&j).expect("serializable"),
    ))
}

fn lang(cfg: &Config, c: &LangCommand) -> CliResult<Report> {
    match c {
        LangCommand::Member { lang, term } => {
            let l = language(cfg, lang)?;
            let (t, _) = closed_term(term)?;
            let member = l.member(&t)?;
            Ok(Report::new(
                if member { "member" } else { "not a member" },
                json!({ "term": print(&t), "member": member }),
            ))
        }
        LangCommand::Op { op, lang, other } => {
            let a = language(cfg, lang)?;
            let result = match (op, other) {
                (LangOp::Complement, None) => a.complement(),
                (LangOp::Complement, Some(_)) => return Err(CliError::Usage("complement takes one language".into())),
                (_, None) => return Err(CliError::Usage("union and intersection take two languages".into())),
                (LangOp::Union, Some(b)) => a.union(&language(cfg, b)?)?,
                (LangOp::Intersection, Some(b)) => a.intersection(&language(cfg, b)?)?,
            };
            language_report(&result)
        }
        LangCommand::Embed { lang } => {
            let a = language(cfg, lang)?;
            language_report(&a.embed(Arc::new(model(cfg)))?)
        }
        LangCommand::Intersect { left, right } => {
            let i = intersect_across(&language(cfg, left)?, &language(cfg, right)?)?;
            language_report(&i)
        }
    }
}

fn approximant(cfg: &Config, arg: &str) -> CliResult<Approximant> {
    let (origin, src) = input::source(arg)?;
    if input::looks_like_json(&src) {
        let j: ApproximantJson = input::parse_json(&origin, &src)?;
        Ok(j.decode(&Levels::new(j.k, cfg.cap), cfg.budget)?)
    } else {
        let (t, _) = parse_closed(src.trim())?;
        Ok(iota(&t, &Levels::new(cfg.k, cfg.cap))?)
    }
}

fn approximant_report(theta: &Approximant) -> Report {
    let j = theta.to_json();
    let mut text = format!("approximant at {}, k={}\n", j.r#type, j.k);
    for (q, (v, e)) in theta.components().iter().zip(theta.evidence()).enumerate() {
        let index = v.index(q as u32 + 1).to_string();
        let evidence = match e {
            Evidence::Witness(w) => print(w),
            Evidence::Deferred => "(deferred)".to_string(),
        };
        let _ = writeln!(text, "  q={}: #{}  {evidence}", q + 1, short_index(&index));
    }
    Report::new(text.trim_end(), serde_json::to_value(&j).expect("serializable"))
}

fn pro(cfg: &Config, c: &ProCommand) -> CliResult<Report> {
    match c {
        ProCommand::Iota { term } => {
            let (t, _) = closed_term(term)?;
            Ok(approximant_report(&iota(&t, &Levels::new(cfg.k, cfg.cap))?))
        }
        ProCommand::CheckNatural { approx } => {
            let theta = approximant(cfg, approx)?;
            let c = check_natural(&theta)?;
            Ok(match &c.counterexample {
                None => Report::new(
                    format!("natural ({} partial surjections checked)", c.checked),
                    json!({ "natural": true, "checked": c.checked }),
                ),
                Some(f) => Report::new(
                    format!("not natural: fails at q={} -> q'={} along {}", f.q, f.q_prime, f.f),
                    json!({
                        "natural": false,
                        "checked": c.checked,
                        "counterexample": { "q": f.q, "q_prime": f.q_prime, "f": f.f.to_json() },
                    }),
                ),
            })
        }
        ProCommand::CheckParametric { approx } => {
            let theta = approximant(cfg, approx)?;
            let sampling = Sampling {
                samples: cfg.samples,
                seed: cfg.seed,
            };
            let c = check_parametric(&theta, sampling)?;
            let mode = if c.exhaustive {
                "exhaustive".to_string()
            } else {
                format!("sampled, seed {}", cfg.seed)
            };
            Ok(match &c.counterexample {
                None => Report::new(
                    format!("parametric ({} relations checked, {mode})", c.checked),
                    json!({ "parametric": true, "checked": c.checked, "exhaustive": c.exhaustive }),
                ),
                Some(f) => {
                    let pairs: Vec<String> = f.relation.pairs().map(|(a, b)| format!("({a},{b})")).collect();
                    Report::new(
                        format!(
                            "not parametric: fails at q={}, q'={} for R = {{{}}}",
                            f.q,
                            f.q_prime,
                            pairs.join(", ")
                        ),
                        json!({
                            "parametric": false,
                            "checked": c.checked,
                            "exhaustive": c.exhaustive,
                            "counterexample": { "q": f.q, "q_prime": f.q_prime, "relation": f.relation.to_json() },
                        }),
                    )
                }
            })
        }
        ProCommand::Compose { approx, second } => {
            let (a, b) = (approximant(cfg, approx)?, approximant(cfg, second)?);
            Ok(approximant_report(&compose(&a, &b)?))
        }
        ProCommand::Omega { approx } => match approx {
            Some(a) => Ok(approximant_report(&apply_omega(&approximant(cfg, a)?)?)),
            None => {
                let ty = required_type(cfg)?;
                Ok(approximant_report(&omega_approximant(
                    &ty,
                    &Levels::new(cfg.k, cfg.cap),
                )?))
            }
        },
        ProCommand::WordOmega { approx } => Ok(approximant_report(&word_omega(&approximant(cfg, approx)?)?)),
        ProCommand::Separate { left, right } => {
            let (m, _) = closed_term(left)?;
            let (n, _) = closed_term(right)?;
            Ok(match separate(&m, &n, cfg.max_q, cfg.cap)? {
                Separation::Separated { q } => {
                    Report::new(format!("separated at q={q}"), json!({ "separated": true, "q": q }))
                }
                Separation::NotSeparated { max_q } => Report::new(
                    format!("not separated up to q={max_q}"),
                    json!({ "separated": false, "max_q": max_q }),
                ),
            })
        }
    }
}

fn automaton(arg: &str) -> CliResult<Dfa> {
    let j: DfaJson = input::json(arg)?;
    Ok(j.decode()?)
}

fn dfa(cfg: &Config, c: &DfaCommand) -> CliResult<Report> {
    match c {
        DfaCommand::Run { dfa, word } => {
            let d = automaton(dfa)?;
            let w = d.alphabet().parse_word(&input::text(word)?)?;
            let s = d.run(&w)?;
            let accepted = d.is_final(s);
            Ok(Report::new(
                format!("state {s}, {}", if accepted { "accepted" } else { "rejected" }),
                json!({ "word": d.alphabet().render(&w), "state": s, "accepted": accepted }),
            ))
        }
        DfaCommand::Accepts { dfa, word, term } => {
            let d = automaton(dfa)?;
            let n = d.alphabet().len();
            let t = match (word, term) {
                (Some(w), None) => church_term(&d.alphabet().parse_word(&input::text(w)?)?, n)?,
                (None, Some(t)) => closed_term(t)?.0,
                _ => return Err(CliError::Usage("give either a word or --term, not both".into())),
            };
            let accepted = d.language(cfg.cap).member(&t)?;
            Ok(Report::new(
                if accepted { "accepted" } else { "rejected" },
                json!({ "term": print(&t), "accepted": accepted }),
            ))
        }
        DfaCommand::ToReg { dfa } => {
            let d = automaton(dfa)?;
            let l = d.language(cfg.cap);
            let letters: Vec<String> = d.alphabet().letters().iter().map(|a| format!("δ_{a}")).collect();
            let finals: Vec<String> = d.accepting().iter().map(u32::to_string).collect();
            let mut text = format!(
                "{{ M : ⟦M⟧({})({}) ∈ {{{}}} }} at {} over [{}]",
                letters.join(", "),
                d.initial(),
                finals.join(", "),
                l.ty(),
                d.q()
            );
            let materialized = l.to_json().ok();
            if let Some(j) = &materialized {
                let _ = write!(text, "\n{} accepted points", j.accepting.len());
            }
            Ok(Report::new(
                text,
                json!({
                    "type": l.ty().to_string(),
                    "q": d.q(),
                    "letters": d.to_json().delta,
                    "q0": d.initial(),
                    "accept": d.accepting(),
                    "language": materialized,
                }),
            ))
        }
        DfaCommand::Monoid { dfa } => {
            let d = automaton(dfa)?;
            let m = transition_monoid(&d);
            let mut text = format!("transition monoid of size {} on [{}]\n", m.len(), m.q());
            for (i, e) in m.elements().iter().enumerate() {
                let mut names: Vec<String> = Vec::new();
                if i == m.unit() {
                    names.push("unit".into());
                }
                for (l, &g) in d.alphabet().letters().iter().zip(m.generators()) {
                    if g == i {
                        names.push(format!("h({l})"));
                    }
                }
                let tag = if names.is_empty() {
                    String::new()
                } else {
                    format!("  {}", names.join(", "))
                };
                let _ = writeln!(text, "  m{i} = {e:?}{tag}");
            }
            Ok(Report::new(
                text.trim_end(),
                serde_json::to_value(m.to_json()).expect("serializable"),
            ))
        }
    }
}
