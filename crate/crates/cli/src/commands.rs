use crate::input::{self, Usage};
use crate::{Cli, Command, FormulaArg, GeneralSource, Status};
use serde_json::{json, Value};
use std::fmt::Write;
use std::fs;
use std::path::Path;
use teamkit::formula::{render, Signature};
use teamkit::genframes::{
    builtin_names, distributivity_witness, eval_gteam, find_m5_n5, general_frame_to_dot, is_distributive,
    run_counterexamples, GeneralFrame, GENFRAME_CAP,
};
use teamkit::grid::Exec;
use teamkit::kripke::io::model_to_dot;
use teamkit::kripke::{enumerate_models, validate_model, MAX_ENUM_WORLDS};
use teamkit::modalbridge::{
    bi_relation_to_dot, check_preservation, full_powerset_model, render_modal, translate_bold_tau, translate_tau,
    BRIDGE_CAP,
};
use teamkit::normalform::{check_derivation, match_axiom, parse_derivation, semantic_equiv, to_dnf};
use teamkit::suite::{criterion_ids, run_criterion};
use teamkit::team::{eval_team, CoverSemantics, ExtentAlgebra, TEAM_CAP};
use teamkit::universal::{build_universal, check_dejongh_theorem, check_jankov_characterization, DeJonghTable};

type Outcome = Result<(String, Status), Usage>;

/// A report in both renderings.
struct Report {
    text: String,
    json: Value,
    pass: bool,
}

impl Report {
    fn finish(self, as_json: bool) -> (String, Status) {
        let out = if as_json {
            format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json value"))
        } else {
            self.text
        };
        (out, if self.pass { Status::Pass } else { Status::Fail })
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let r = match &cli.command {
        Command::Parse(f) => parse(f)?,
        Command::Eval { model, team, formula } => eval(model, team, formula, cli.cap.unwrap_or(TEAM_CAP))?,
        Command::EvalGeneral { source, team, formula } => {
            eval_general(source, team, formula, cli.cap.unwrap_or(GENFRAME_CAP))?
        }
        Command::Dnf { formula, check } => dnf(formula, check.then(|| cli.cap.unwrap_or(3)))?,
        Command::Universal { n, depth, dot } => universal(*n, *depth, dot.as_deref())?,
        Command::Dejongh { n, depth, node } => dejongh(*n, *depth, *node)?,
        Command::Jankov { frame, target } => jankov(frame, target)?,
        Command::FrameCheck { model, dot } => frame_check(model, dot.as_deref())?,
        Command::GeneralFrameCheck { source, dot } => general_frame_check(source, dot.as_deref())?,
        Command::Distributive { source } => distributive(source)?,
        Command::Counterexamples => counterexamples(),
        Command::Translate(f) => translate(f)?,
        Command::PreserveCheck { model, depth, dot } => {
            preserve_check(model, *depth, dot.as_deref(), cli.cap.unwrap_or(BRIDGE_CAP))?
        }
        Command::AxiomsCheck(f) => axioms_check(f, cli.cap.unwrap_or(3))?,
        Command::DeriveCheck { path } => derive_check(path)?,
        Command::Suite {
            criteria,
            sequential,
            timings,
        } => suite(criteria, *sequential, *timings)?,
    };
    Ok(r.finish(cli.json))
}

fn write_file(path: &Path, body: &str) -> Result<(), Usage> {
    fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn parse(f: &FormulaArg) -> Result<Report, Usage> {
    let (f, sig) = input::formula(&f.formula)?;
    let text = render(&f, &sig);
    Ok(Report {
        text: format!(
            "{text}\ndepth: {}\nsize: {}\nstandard: {}\nlocal-disjunction-free: {}\n",
            f.depth(),
            f.size(),
            f.is_standard(),
            f.is_local_or_free()
        ),
        json: json!({
            "formula": text,
            "atoms": sig.names(),
            "depth": f.depth(),
            "size": f.size(),
            "standard": f.is_standard(),
            "local_disjunction_free": f.is_local_or_free(),
        }),
        pass: true,
    })
}

fn eval(model: &Path, team: &str, f: &FormulaArg, cap: usize) -> Result<Report, Usage> {
    let m = input::model(model, cap)?;
    let f = input::formula_in(&f.formula, m.signature())?;
    let t = input::team(team, m.len())?;
    let holds = eval_team(&m, t, &f).map_err(|e| e.to_string())?;
    Ok(Report {
        text: format!("{holds}\n"),
        json: json!({ "team": t.to_string(), "holds": holds }),
        pass: true,
    })
}

fn eval_general(source: &GeneralSource, team: &str, f: &FormulaArg, cap: usize) -> Result<Report, Usage> {
    let gm = input::general_model(source.model.as_deref(), source.builtin.as_deref())?;
    let n = gm.kripke().len();
    if n > cap {
        return Err(format!("model has {n} worlds, above the cap {cap} (see --cap)"));
    }
    let f = input::formula_in(&f.formula, gm.signature())?;
    let t = input::team(team, n)?;
    let holds = eval_gteam(&gm, t, &f).map_err(|e| e.to_string())?;
    Ok(Report {
        text: format!("{holds}\n"),
        json: json!({ "team": t.to_string(), "holds": holds }),
        pass: true,
    })
}

fn dnf(f: &FormulaArg, check: Option<usize>) -> Result<Report, Usage> {
    let (f, sig) = input::formula(&f.formula)?;
    let d = to_dnf(&f).map_err(|e| e.to_string())?;
    let members: Vec<String> = d.iter().map(|m| render(m, &sig)).collect();
    let mut text: String = members.iter().map(|m| format!("{m}\n")).collect();
    let mut json = json!({ "members": members });
    let mut pass = true;
    if let Some(cap) = check {
        if cap > MAX_ENUM_WORLDS {
            return Err(format!("--cap {cap} is above the enumeration limit {MAX_ENUM_WORLDS}"));
        }
        let r = semantic_equiv(&f, &d.to_formula(), cap).map_err(|e| e.to_string())?;
        pass = r.equivalent();
        let _ = writeln!(
            text,
            "equivalent on {} models with at most {cap} worlds: {pass}",
            r.models_checked
        );
        json["equivalent"] = json!(pass);
        json["models_checked"] = json!(r.models_checked);
    }
    Ok(Report { text, json, pass })
}

fn universal(n: usize, depth: usize, dot: Option<&Path>) -> Result<Report, Usage> {
    let u = build_universal(n, depth).map_err(|e| e.to_string())?;
    let sizes = u.layer_sizes();
    let mut text = format!("U({n}) to depth {depth}: {} nodes\n", u.len());
    for (k, s) in sizes.iter().enumerate() {
        let _ = writeln!(text, "layer {}: {s}", k + 1);
    }
    if let Some(p) = dot {
        write_file(p, &u.to_dot())?;
    }
    Ok(Report {
        text,
        json: json!({ "atoms": n, "depth": depth, "nodes": u.len(), "layers": sizes }),
        pass: true,
    })
}

fn dejongh(n: usize, depth: usize, node: Option<usize>) -> Result<Report, Usage> {
    let u = build_universal(n, depth).map_err(|e| e.to_string())?;
    let sig = Signature::standard(n);
    let nodes: Vec<usize> = match node {
        Some(w) if w >= u.len() => return Err(format!("node {w} out of range 0..{}", u.len())),
        Some(w) => vec![w],
        None => (0..u.len()).collect(),
    };
    let mut table = DeJonghTable::new(u.arena());
    let mut text = String::new();
    let mut pairs = Vec::new();
    for w in nodes {
        let p = table.pair(w);
        let (phi, psi) = (render(&p.phi, &sig), render(&p.psi, &sig));
        let _ = writeln!(text, "w{w}\n  phi: {phi}\n  psi: {psi}");
        pairs.push(json!({ "node": w, "phi": phi, "psi": psi }));
    }
    let rep = check_dejongh_theorem(&u);
    let _ = writeln!(
        text,
        "theorem: {} pairs checked, {} violations",
        rep.pairs_checked,
        rep.violations.len()
    );
    Ok(Report {
        text,
        json: json!({
            "pairs": pairs,
            "pairs_checked": rep.pairs_checked,
            "violations": rep.violations.len(),
        }),
        pass: rep.holds(),
    })
}

fn jankov(frame: &Path, target: &Path) -> Result<Report, Usage> {
    let load = |p: &Path| -> Result<_, Usage> {
        let m = input::model_file(p)?.to_model().map_err(|e| format!("{}: {e}", p.display()))?;
        Ok(m.frame().clone())
    };
    let (f, g) = (load(frame)?, load(target)?);
    let chi = teamkit::universal::jankov_formula(&f).map_err(|e| e.to_string())?;
    let r = check_jankov_characterization(&f, &g).map_err(|e| e.to_string())?;
    let formula = render(&chi.formula, &chi.signature);
    Ok(Report {
        text: format!(
            "chi: {formula}\nrefuted in target: {}\nimage of a generated subframe: {}\nagree: {}\n",
            r.g_refutes(),
            r.is_image(),
            r.consistent()
        ),
        json: json!({
            "chi": formula,
            "refuted": r.g_refutes(),
            "image": r.is_image(),
            "agree": r.consistent(),
        }),
        pass: r.consistent(),
    })
}

fn frame_check(model: &Path, dot: Option<&Path>) -> Result<Report, Usage> {
    let file = input::model_file(model)?;
    let violations: Vec<String> = match file.to_raw() {
        Ok(raw) => validate_model(&raw).violations.iter().map(|v| v.to_string()).collect(),
        Err(e) => vec![e.to_string()],
    };
    let pass = violations.is_empty();
    if let (true, Some(p)) = (pass, dot) {
        let m = file.to_model().map_err(|e| e.to_string())?;
        write_file(p, &model_to_dot(&m))?;
    }
    let text = if pass {
        "valid\n".to_string()
    } else {
        violations.iter().map(|v| format!("violation: {v}\n")).collect()
    };
    Ok(Report {
        text,
        json: json!({ "valid": pass, "violations": violations }),
        pass,
    })
}

fn general_frame_check(source: &GeneralSource, dot: Option<&Path>) -> Result<Report, Usage> {
    let frame: Result<GeneralFrame, String> = match (&source.model, &source.builtin) {
        (Some(p), None) => input::general_unchecked(p)?,
        (None, Some(_)) => Ok(input::general_model(None, source.builtin.as_deref())?.frame().clone()),
        _ => return Err("give exactly one of --model and --builtin".into()),
    };
    let g = match frame {
        Ok(g) => g,
        Err(e) => {
            return Ok(Report {
                text: format!("invalid join table: {e}\n"),
                json: json!({ "valid": false, "join_table": e }),
                pass: false,
            })
        }
    };
    let rep = g.validate();
    let show = |c: &Option<teamkit::genframes::ConditionFailure>| match c {
        None => "holds".to_string(),
        Some(f) => format!("fails: {f:?}"),
    };
    let mut text = String::new();
    for (name, c) in [("a", &rep.a), ("b", &rep.b), ("c", &rep.c)] {
        let _ = writeln!(text, "condition ({name}): {}", show(c));
    }
    let _ = writeln!(text, "distributive: {}", is_distributive(g.join_table()));
    if let Some(p) = dot {
        write_file(p, &general_frame_to_dot(&g))?;
    }
    Ok(Report {
        text,
        json: json!({
            "valid": rep.valid(),
            "a": show(&rep.a),
            "b": show(&rep.b),
            "c": show(&rep.c),
            "distributive": is_distributive(g.join_table()),
        }),
        pass: rep.valid(),
    })
}

fn distributive(source: &GeneralSource) -> Result<Report, Usage> {
    if source.model.is_none() && source.builtin.is_none() {
        return Err(format!("give --model or --builtin (one of {})", builtin_names().join(", ")));
    }
    let gm = input::general_model(source.model.as_deref(), source.builtin.as_deref())?;
    let j = gm.frame().join_table();
    let dist = is_distributive(j);
    let sub = find_m5_n5(j);
    let mut text = format!("distributive: {dist}\n");
    if let Some(w) = distributivity_witness(j) {
        let _ = writeln!(text, "failure: t = {}, r = {}, s = {}", w.t, w.r, w.s);
    }
    match sub {
        Some(s) => {
            let _ = writeln!(text, "sublattice: {:?} on teams {:?}", s.kind, s.elements());
        }
        None => text.push_str("sublattice: none\n"),
    }
    Ok(Report {
        text,
        json: json!({
            "distributive": dist,
            "sublattice": sub.map(|s| json!({ "kind": format!("{:?}", s.kind), "teams": s.elements() })),
        }),
        pass: dist == sub.is_none(),
    })
}

fn counterexamples() -> Report {
    let r = run_counterexamples();
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &r.checks {
        let _ = writeln!(text, "[{}] {}: {}", if c.ok() { "ok" } else { "MISMATCH" }, c.model, c.claim);
        rows.push(json!({ "model": c.model, "claim": c.claim, "expected": c.expected, "actual": c.actual }));
    }
    let pass = r.passed();
    let _ = writeln!(text, "{} steps, {}", r.checks.len(), if pass { "all reproduced" } else { "mismatches found" });
    Report {
        text,
        json: json!({ "checks": rows, "passed": pass }),
        pass,
    }
}

fn translate(f: &FormulaArg) -> Result<Report, Usage> {
    let (f, sig) = input::formula(&f.formula)?;
    let tau = translate_tau(&f).ok().map(|t| render_modal(&t, &sig));
    let bold = render_modal(&translate_bold_tau(&f), &sig);
    Ok(Report {
        text: format!(
            "tau: {}\nbold tau: {bold}\n",
            tau.as_deref().unwrap_or("undefined (local disjunction)")
        ),
        json: json!({ "tau": tau, "bold_tau": bold }),
        pass: true,
    })
}

fn preserve_check(model: &Path, depth: usize, dot: Option<&Path>, cap: usize) -> Result<Report, Usage> {
    let m = input::model(model, cap)?;
    let r = check_preservation(&m, depth).map_err(|e| e.to_string())?;
    if let Some(p) = dot {
        let full = full_powerset_model(&m).map_err(|e| e.to_string())?;
        write_file(p, &bi_relation_to_dot(full.base()))?;
    }
    let mut text = format!(
        "depth {depth}: {} tau classes, {} bold classes, {} comparisons\nempty team and zero: {}\n",
        r.tau_classes, r.bold_classes, r.comparisons, r.empty_team_bot
    );
    let mut bad = Vec::new();
    for x in &r.mismatches {
        let f = render(&x.formula, m.signature());
        let _ = writeln!(text, "mismatch ({:?}): {f} at {} (team side {})", x.translation, x.team, x.team_holds);
        bad.push(json!({ "translation": format!("{:?}", x.translation), "formula": f, "team": x.team.to_string() }));
    }
    let _ = writeln!(text, "{}", if r.passed() { "preserved" } else { "not preserved" });
    Ok(Report {
        text,
        json: json!({
            "depth": depth,
            "tau_classes": r.tau_classes,
            "bold_classes": r.bold_classes,
            "empty_team_bot": r.empty_team_bot,
            "mismatches": bad,
            "passed": r.passed(),
        }),
        pass: r.passed(),
    })
}

fn axioms_check(f: &FormulaArg, cap: usize) -> Result<Report, Usage> {
    if cap > MAX_ENUM_WORLDS {
        return Err(format!("--cap {cap} is above the enumeration limit {MAX_ENUM_WORLDS}"));
    }
    let (f, sig) = input::formula(&f.formula)?;
    let matches = match_axiom(&f);
    let meta = ["phi", "psi", "chi", "alpha"];
    let mut text = String::new();
    let mut rows = Vec::new();
    for m in &matches {
        let binds: Vec<String> = meta
            .iter()
            .zip(&m.bindings)
            .filter_map(|(name, b)| b.as_ref().map(|b| format!("{name} := {}", render(b, &sig))))
            .collect();
        let _ = writeln!(text, "axiom {}: {}", m.id, binds.join(", "));
        rows.push(json!({ "axiom": m.id.label(), "bindings": binds }));
    }
    if matches.is_empty() {
        text.push_str("not an axiom instance\n");
    }
    let models = enumerate_models(cap, &Signature::standard(sig.len()), false).map_err(|e| e.to_string())?;
    let valid = models
        .iter()
        .all(|m| CoverSemantics::new(m).map(|c| c.extent(&f).is_full()).unwrap_or(false));
    let _ = writeln!(text, "valid on all {} models with at most {cap} worlds: {valid}", models.len());
    Ok(Report {
        text,
        json: json!({ "matches": rows, "valid": valid, "models_checked": models.len() }),
        pass: !matches.is_empty() && valid,
    })
}

fn derive_check(path: &Path) -> Result<Report, Usage> {
    let d = parse_derivation(&input::read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let c = check_derivation(&d.derivation, &d.premises);
    let text = match &c.first_bad {
        None => format!("valid: {} steps\n", c.steps),
        Some(b) => format!("invalid at step {}: {}\n", b.step, b.reason),
    };
    Ok(Report {
        text,
        json: json!({
            "valid": c.valid(),
            "steps": c.steps,
            "first_bad": c.first_bad.as_ref().map(|b| json!({ "step": b.step, "reason": b.reason })),
        }),
        pass: c.valid(),
    })
}

fn suite(criteria: &[u8], sequential: bool, timings: bool) -> Result<Report, Usage> {
    let known: Vec<u8> = criterion_ids().collect();
    let ids = if criteria.is_empty() { known.clone() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|i| !known.contains(i)) {
        return Err(format!("unknown criterion {bad}; known: 1..={}", known.len()));
    }
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for id in ids {
        let r = run_criterion(id, exec).expect("known criterion");
        pass &= r.passed();
        let mut row = json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed(),
            "detail": r.detail,
            "limit_seconds": r.limit.as_secs(),
        });
        if timings {
            let _ = writeln!(text, "{r}");
            row["seconds"] = json!(r.elapsed.as_secs_f64());
        } else {
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(text, "[{verdict}] criterion {:>2} {}: {}", r.id, r.name, r.detail);
        }
        rows.push(row);
    }
    Ok(Report {
        text,
        json: json!({ "criteria": rows, "passed": pass }),
        pass,
    })
}
