use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use pointedq::braiding::{classify, detect_cartan, twist_to_symmetric, ComponentVerdict, InfiniteReason, Verdict};
use pointedq::freealg::{nichols_dims, NicholsConfig};
use pointedq::uqd::{
    build_rewrite_system, check_isomorphism, coproduct, datum_isomorphisms, filtration_degree, gk_dimension,
    gr_comparison, validate_datum, IsomConfig, IsomorphismSearch, PBWTensor, RewriteConfig, RewriteSystem,
    WINDOW_RADIUS,
};
use pointedq::{CartanMatrix, GenericDatum, Limits, ParamNames, RootData};

use crate::input::{braiding_json, cartan_json, parse_input, Input};
use crate::{Cli, CliError, Command, Report};

fn read(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_input(&text)
}

fn read_datum(path: &Path) -> Result<GenericDatum, CliError> {
    match read(path)? {
        Input::Datum(d) => Ok(d),
        _ => Err(CliError::Input(format!("{}: expected a generic datum", path.display()))),
    }
}

fn read_braiding(path: &Path) -> Result<(ParamNames, pointedq::BraidingMatrix), CliError> {
    match read(path)? {
        Input::Braiding { names, q } => Ok((names, q)),
        Input::Datum(d) => Ok((d.names().clone(), d.braiding()?)),
        Input::Cartan { .. } => Err(CliError::Input(format!("{}: expected a braiding", path.display()))),
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(t) = cli.term_limit {
        l.term_limit = usize::try_from(t).unwrap_or(usize::MAX);
    }
    l
}

fn rewrite_config(cli: &Cli) -> RewriteConfig {
    RewriteConfig {
        extended_types: cli.extended_types,
        limits: limits(cli),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn ok(json: Value, human: String) -> Report {
    Report {
        json,
        human,
        exit_code: 0,
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    if cli.jobs > 1 {
        // a second global pool in the same process is refused; keep the first
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build_global();
    }
    match &cli.command {
        Command::Analyze { file } => analyze(file),
        Command::Roots { file } => roots(file),
        Command::Nichols { file, degree } => nichols(cli, file, *degree),
        Command::Validate { file } => validate(file),
        Command::Nf { file, expr } => normal_form(cli, file, expr),
        Command::Delta { file, expr } => delta(cli, file, expr),
        Command::Pbw { file, degree } => pbw(cli, file, *degree),
        Command::Isom { first, second, bound } => isom(cli, first, second, *bound),
        Command::Gk { file } => gk(file),
    }
}

fn analyze(file: &Path) -> Result<Report, CliError> {
    let (names, q) = read_braiding(file)?;
    let c = classify(&q)?;
    let components: Vec<Vec<usize>> = c.components.blocks().iter().map(|b| one_based(b)).collect();
    let cartan = match &c.cartan {
        Ok(a) => json!({"matrix": cartan_json(a)}),
        Err(e) => json!({"error": e.to_string()}),
    };
    let finite_type = match &c.finite_type {
        Some(Ok(ft)) => json!(ft.to_string()),
        Some(Err(e)) => json!({"error": e.to_string()}),
        None => Value::Null,
    };
    let dj = match &c.dj {
        Some(Ok(p)) => json!({
            "components": p.components.iter().map(|k| json!({
                "vertices": one_based(&k.vertices),
                "d": k.d,
                "qI": k.q_i.fmt_with(&names),
            })).collect::<Vec<_>>(),
            "d": p.d,
        }),
        Some(Err(e)) => json!({"error": e.to_string()}),
        None => Value::Null,
    };
    let per_component: Vec<Value> = c
        .per_component
        .iter()
        .zip(c.components.blocks())
        .map(|(v, b)| {
            let vs = one_based(b);
            match v {
                ComponentVerdict::Finite { type_name, gk } => json!({"vertices": vs, "verdict": "finite", "type": type_name, "gk": gk}),
                ComponentVerdict::Infinite(e) => json!({"vertices": vs, "verdict": "infinite", "reason": e.to_string()}),
                ComponentVerdict::Unknown => json!({"vertices": vs, "verdict": "unknown"}),
            }
        })
        .collect();
    let (gk, reason) = match &c.verdict {
        Verdict::FiniteGK { gk } => (json!(gk), Value::Null),
        Verdict::InfiniteGK(InfiniteReason::NotCartan(e)) => (Value::Null, json!(e.to_string())),
        Verdict::InfiniteGK(InfiniteReason::NotFinite(e)) => (Value::Null, json!(e.to_string())),
        Verdict::Unknown { reason } => (Value::Null, json!(reason)),
    };
    let report = json!({
        "braiding": braiding_json(&q, &names),
        "generic": c.generic,
        "positive": c.positive,
        "components": components,
        "cartan": cartan,
        "d": c.d,
        "finite_type": finite_type,
        "dj": dj,
        "per_component": per_component,
        "verdict": c.verdict.label(),
        "gk": gk,
        "reason": reason,
    });
    let mut h = String::new();
    let _ = writeln!(h, "verdict: {}", c.verdict.label());
    if let Verdict::FiniteGK { gk } = c.verdict {
        let _ = writeln!(h, "GK dimension: {}", gk);
    }
    if let Some(r) = reason.as_str() {
        let _ = writeln!(h, "reason: {}", r);
    }
    let _ = writeln!(h, "generic: {}, positive: {}", c.generic, c.positive);
    let _ = writeln!(h, "components: {:?}", components);
    match &c.cartan {
        Ok(a) => {
            let _ = writeln!(h, "Cartan matrix: {:?}", a.rows());
        }
        Err(e) => {
            let _ = writeln!(h, "Cartan type: no ({})", e);
        }
    }
    if let Some(d) = &c.d {
        let _ = writeln!(h, "symmetrizer: {:?}", d);
    }
    if let Some(Ok(ft)) = &c.finite_type {
        let _ = writeln!(h, "finite type: {}", ft);
    }
    match &c.dj {
        Some(Ok(p)) => {
            for k in &p.components {
                let _ = writeln!(h, "DJ component {:?}: q_I = {}", one_based(&k.vertices), k.q_i.fmt_with(&names));
            }
        }
        Some(Err(e)) => {
            let _ = writeln!(h, "DJ type: no ({})", e);
        }
        None => {}
    }
    Ok(ok(report, h))
}

fn roots(file: &Path) -> Result<Report, CliError> {
    let a: CartanMatrix = match read(file)? {
        Input::Cartan { a } => a,
        Input::Datum(d) => d.cartan().clone(),
        Input::Braiding { q, .. } => detect_cartan(&q).map_err(|e| CliError::Input(e.to_string()))?,
    };
    let rd = RootData::new(&a)?;
    let roots: Vec<Value> = rd
        .beta()
        .iter()
        .zip(rd.heights())
        .enumerate()
        .map(|(j, (b, ht))| json!({"index": j + 1, "root": b, "height": ht}))
        .collect();
    let report = json!({
        "cartan": cartan_json(&a),
        "type": rd.finite_type().to_string(),
        "d": rd.d(),
        "w0": one_based(rd.w0_word()),
        "num_positive_roots": rd.num_positive_roots(),
        "roots": roots,
    });
    let mut h = String::new();
    let _ = writeln!(h, "type {}, {} positive roots", rd.finite_type(), rd.num_positive_roots());
    let _ = writeln!(h, "longest word: {:?}", one_based(rd.w0_word()));
    for (j, (b, ht)) in rd.beta().iter().zip(rd.heights()).enumerate() {
        let _ = writeln!(h, "beta{} = {:?} (height {})", j + 1, b, ht);
    }
    Ok(ok(report, h))
}

fn nichols(cli: &Cli, file: &Path, degree: usize) -> Result<Report, CliError> {
    let (names, q) = read_braiding(file)?;
    let (sym, twisted) = if q.is_symmetric() {
        (q.clone(), false)
    } else {
        (twist_to_symmetric(&q)?.symmetric, true)
    };
    let cfg = NicholsConfig {
        max_degree: degree,
        limits: limits(cli),
        parallel: cli.jobs > 1,
        ..Default::default()
    };
    let dims = nichols_dims(&sym, &cfg)?;
    let by: Vec<Value> = dims
        .by_multidegree
        .iter()
        .map(|(m, d)| json!({"multidegree": m, "dim": d}))
        .collect();
    let report = json!({
        "braiding": braiding_json(&q, &names),
        "twisted": twisted,
        "max_degree": degree,
        "dims": dims.dims,
        "by_multidegree": by,
    });
    let mut h = String::new();
    if twisted {
        let _ = writeln!(h, "twisted to the symmetric braiding {:?}", sym.fmt_rows(&names));
    }
    let _ = writeln!(h, "graded dimensions 0..={}: {:?}", degree, dims.dims);
    for (m, d) in &dims.by_multidegree {
        let _ = writeln!(h, "  {:?}: {}", m, d);
    }
    Ok(ok(report, h))
}

fn validate(file: &Path) -> Result<Report, CliError> {
    let d = read_datum(file)?;
    let rep = validate_datum(&d);
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| json!({"code": v.code, "vertices": one_based(&v.vertices), "detail": v.detail}))
        .collect();
    let valid = rep.is_valid();
    let report = json!({"valid": valid, "positive": rep.positive, "violations": violations});
    let mut h = String::new();
    if valid {
        let _ = writeln!(h, "valid generic datum{}", if rep.positive { " (positive)" } else { "" });
    } else {
        let _ = writeln!(h, "invalid generic datum:");
        for v in &rep.violations {
            let _ = writeln!(h, "  {}: {}", v.code, v.detail);
        }
    }
    Ok(Report {
        json: report,
        human: h,
        exit_code: if valid { 0 } else { 1 },
    })
}

fn system(cli: &Cli, d: &GenericDatum) -> Result<RewriteSystem, CliError> {
    Ok(build_rewrite_system(d, &rewrite_config(cli))?)
}

fn normal_form(cli: &Cli, file: &Path, expr: &str) -> Result<Report, CliError> {
    let d = read_datum(file)?;
    let sys = system(cli, &d)?;
    let x = sys.normal_form(expr)?;
    let nf = sys.render(&x);
    let deg = filtration_degree(&sys, &x);
    let report = json!({"expr": expr, "normal_form": nf, "filtration_degree": deg});
    Ok(ok(report, nf))
}

fn render_tensor(sys: &RewriteSystem, t: &PBWTensor) -> (String, Vec<Value>) {
    let names = sys.datum().names();
    let side = |m| match sys.render_monomial(m) {
        s if s.is_empty() => "1".to_owned(),
        s => s,
    };
    let mut terms: Vec<_> = t
        .terms()
        .map(|((l, r), c)| {
            let (fl, fr) = (sys.monomial_filtration(l), sys.monomial_filtration(r));
            ((-(fl + fr), -fl), c, side(l), side(r))
        })
        .collect();
    terms.sort_by_key(|t| t.0);
    let text = pointedq::scalars::fmt_linear_combination(
        terms.iter().map(|(_, c, l, r)| (*c, format!("{} ⊗ {}", l, r))),
        names,
    );
    let json_terms = terms
        .iter()
        .map(|(_, c, l, r)| json!({"coeff": c.fmt_with(names), "left": l, "right": r}))
        .collect();
    (text, json_terms)
}

fn delta(cli: &Cli, file: &Path, expr: &str) -> Result<Report, CliError> {
    let d = read_datum(file)?;
    let sys = system(cli, &d)?;
    let x = sys.normal_form(expr)?;
    let t = coproduct(&sys, &x)?;
    let (text, terms) = render_tensor(&sys, &t);
    let report = json!({
        "expr": expr,
        "normal_form": sys.render(&x),
        "coproduct": text,
        "terms": terms,
    });
    Ok(ok(report, text))
}

fn pbw(cli: &Cli, file: &Path, degree: usize) -> Result<Report, CliError> {
    let d = read_datum(file)?;
    let sys = system(cli, &d)?;
    let rd = sys.root_data();
    let root_vectors: Vec<Value> = (0..sys.num_root_vectors())
        .map(|j| {
            json!({
                "label": sys.label(j),
                "root": rd.beta()[j],
                "height": rd.heights()[j],
                "bracket": sys.bracket_string(j),
            })
        })
        .collect();
    let rules: Vec<Value> = sys
        .rules()
        .iter()
        .map(|r| json!({"lhs": format!("{}*{}", sys.label(r.k), sys.label(r.l)), "rhs": sys.render(&r.rhs)}))
        .collect();
    let mut monomials = Vec::new();
    for n in 0..=degree as i64 {
        let ms: Vec<String> = sys
            .monomials_of_filtration(n)
            .iter()
            .map(|m| {
                let s = sys.render_monomial(m);
                if s.is_empty() {
                    "1".into()
                } else {
                    s
                }
            })
            .collect();
        monomials.push(json!({"degree": n, "count": ms.len(), "monomials": ms}));
    }
    let gr: Vec<Value> = gr_comparison(&sys, degree, WINDOW_RADIUS)?
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree,
                "pbw_monomials": s.pbw_monomials,
                "pbw_rank": s.pbw_rank,
                "nichols_dim": s.nichols_dim,
                "window": s.window,
                "algebra_window_dim": s.algebra_window_dim(),
                "smash_window_dim": s.smash_window_dim(),
                "matches": s.matches(),
            })
        })
        .collect();
    let consistent = gr.iter().all(|s| s["matches"] == json!(true));
    let report = json!({
        "root_vectors": root_vectors,
        "bracketing": "convex splitting along the longest word",
        "rules": rules,
        "monomials": monomials,
        "window_radius": WINDOW_RADIUS,
        "gr_comparison": gr,
    });
    let mut h = String::new();
    let _ = writeln!(h, "root vectors:");
    for j in 0..sys.num_root_vectors() {
        let _ = writeln!(h, "  {} = {}  (root {:?})", sys.label(j), sys.bracket_string(j), rd.beta()[j]);
    }
    let _ = writeln!(h, "rules:");
    for r in &rules {
        let _ = writeln!(h, "  {} -> {}", r["lhs"].as_str().unwrap_or(""), r["rhs"].as_str().unwrap_or(""));
    }
    let _ = writeln!(h, "PBW monomials by filtration degree:");
    for m in &monomials {
        let _ = writeln!(h, "  {}: {}", m["degree"], m["count"]);
    }
    let _ = writeln!(h, "gr U(D) vs Nichols algebra: {}", if consistent { "consistent" } else { "MISMATCH" });
    Ok(Report {
        json: report,
        human: h,
        exit_code: if consistent { 0 } else { 3 },
    })
}

fn isom(cli: &Cli, first: &Path, second: &Path, bound: i64) -> Result<Report, CliError> {
    if bound < 0 {
        return Err(CliError::Input("bound must be nonnegative".into()));
    }
    let d1 = read_datum(first)?;
    let d2 = read_datum(second)?;
    for (p, d) in [(first, &d1), (second, &d2)] {
        if !validate_datum(d).is_valid() {
            return Err(CliError::Input(format!("{}: not a valid generic datum", p.display())));
        }
    }
    if d1.s() != d2.s() {
        return Err(CliError::Input("both data must have the same s".into()));
    }
    let cfg = IsomConfig {
        bound,
        ..IsomConfig::default()
    };
    let names = d2.names();
    match datum_isomorphisms(&d1, &d2, &cfg) {
        IsomorphismSearch::Undecided { reason } => {
            let report = json!({"result": "undecided", "reason": reason, "bound": bound});
            Ok(ok(report, format!("undecided: {}", reason)))
        }
        IsomorphismSearch::Found(isos) => {
            let target = build_rewrite_system(&d2, &rewrite_config(cli)).ok();
            let mut list = Vec::new();
            let mut all_sound = true;
            let mut h = String::new();
            let _ = writeln!(h, "{} isomorphism(s) within bound {}", isos.len(), bound);
            for iso in &isos {
                let (sound, failed) = match &target {
                    Some(sys) => {
                        let failed = check_isomorphism(&d1, sys, iso)?;
                        (json!(failed.is_empty()), failed)
                    }
                    None => (Value::Null, Vec::new()),
                };
                all_sound &= sound != json!(false);
                let alpha: Vec<String> = iso.alpha.iter().map(|a| a.fmt_with(names)).collect();
                let _ = writeln!(
                    h,
                    "  sigma = {:?}, phi = {:?}, alpha = [{}], relations transported: {}",
                    one_based(&iso.sigma),
                    iso.phi,
                    alpha.join(", "),
                    match sound.as_bool() {
                        Some(true) => "yes",
                        Some(false) => "NO",
                        None => "unchecked",
                    }
                );
                list.push(json!({
                    "sigma": one_based(&iso.sigma),
                    "phi": iso.phi,
                    "alpha": alpha,
                    "sound": sound,
                    "failed_relations": failed,
                }));
            }
            let report = json!({"result": "found", "bound": bound, "count": isos.len(), "isomorphisms": list});
            Ok(Report {
                json: report,
                human: h,
                exit_code: if all_sound { 0 } else { 3 },
            })
        }
    }
}

fn gk(file: &Path) -> Result<Report, CliError> {
    let d = read_datum(file)?;
    let rep = validate_datum(&d);
    if !rep.is_valid() {
        let codes: Vec<&str> = rep.violations.iter().map(|v| v.code).collect();
        return Err(CliError::Input(format!("not a valid generic datum ({})", codes.join(", "))));
    }
    let g = gk_dimension(&d)?;
    let report = json!({
        "nichols": g.nichols,
        "algebra": g.algebra,
        "algebra_source": "derived",
    });
    let h = format!(
        "GKdim B(V) = {} (number of positive roots)\nGKdim U(D) = {} (derived from the PBW basis)",
        g.nichols, g.algebra
    );
    Ok(ok(report, h))
}
