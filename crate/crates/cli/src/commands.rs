use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use qkostant::filtration::{compatibility_check, tower_check, Weighting};
use qkostant::freealg::{format_expr, parse_expr, NCPolynomial, MAX_N};
use qkostant::hopf::{antipode_axioms_check, is_invariant, Variant};
use qkostant::kostant::{
    certify_freeness_with, classical_oracle_check, count_identity, hilbert_dims,
    invariant_ring_check, CertifyConfig, Mode, Side,
};
use qkostant::mutation::{pbw_confluence_check, quantum_matrices, MutationSystem, Strategy};
use qkostant::qminors::{delta_d, delta_d_prime, delta_d_t, qdet, qminor};
use qkostant::suite::seeded_random_suite;

use crate::table::render;
use crate::{
    CertifyArgs, ClassicalArgs, Cli, CoactionArg, Command, DegreeArgs, DeltaArgs, InvariantsArgs,
    ModeArg, NormalizeArgs, Outcome, PbwArgs, QdetArgs, StrategyArg, SuiteArgs, SystemArgs,
    TowerArgs, UsageError,
};

type Res = Result<Outcome, UsageError>;

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

fn check_n(n: usize) -> Result<(), UsageError> {
    if n == 0 || n > MAX_N {
        return Err(UsageError(format!("--n {n} out of range 1..={MAX_N}")));
    }
    Ok(())
}

fn check_stage(n: usize, t: usize) -> Result<(), UsageError> {
    if t == 0 || t > n {
        return Err(UsageError(format!("--stage {t} out of range 1..={n}")));
    }
    Ok(())
}

fn check_d(n: usize, d: usize) -> Result<(), UsageError> {
    if d == 0 || d > n {
        return Err(UsageError(format!("--d {d} out of range 1..={n}")));
    }
    Ok(())
}

fn report(command: &str, body: impl Serialize) -> Value {
    let mut v = serde_json::to_value(body).expect("reports serialize");
    v.as_object_mut()
        .expect("reports are objects")
        .insert("command".into(), json!(command));
    v
}

fn mark(ok: bool) -> String {
    if ok { "pass" } else { "FAIL" }.into()
}

fn system(n: usize, t: usize) -> Result<std::sync::Arc<MutationSystem>, UsageError> {
    if t == 1 {
        quantum_matrices(n).map_err(usage)
    } else {
        MutationSystem::build(n, t).map(std::sync::Arc::new).map_err(usage)
    }
}

/// Runs the command selected in `cli`.
pub fn dispatch(cli: &Cli) -> Res {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Normalize(a) => normalize(a, cli.seed),
        Command::Relations(a) => relations(a),
        Command::Qdet(a) => qdet_cmd(a),
        Command::Delta(a) => delta(a),
        Command::Invariants(a) => invariants(a),
        Command::PbwCheck(a) => pbw(a),
        Command::TowerCheck(a) => tower(a),
        Command::Hilbert(a) => hilbert(a),
        Command::KostantCertify(a) => certify(a, cli.seed),
        Command::InvariantRing(a) => invariant_ring(a),
        Command::Classical(a) => classical(a, cli.seed),
        Command::Suite(a) => suite(a, cli.seed),
    }?;
    if cli.timing {
        let ms = start.elapsed().as_millis() as u64;
        out.report
            .as_object_mut()
            .unwrap()
            .insert("elapsed_ms".into(), json!(ms));
        out.text.push_str(&format!("elapsed: {ms} ms\n"));
    }
    Ok(out)
}

fn normalize(a: &NormalizeArgs, seed: u64) -> Res {
    let SystemArgs { n, stage } = a.system;
    check_n(n)?;
    check_stage(n, stage)?;
    let p = parse_expr(&a.expr, n).map_err(|e| UsageError(format!("--expr: {e}")))?;
    let sys = system(n, stage)?;
    let (result, mutations) = match a.strategy {
        StrategyArg::Engine => (sys.normal_form(&p), None),
        s => {
            let st = match s {
                StrategyArg::Leftmost => Strategy::Leftmost,
                StrategyArg::Rightmost => Strategy::Rightmost,
                _ => Strategy::Random(seed),
            };
            let o = sys.normalize_with(&p, st);
            (o.result, Some(o.mutations))
        }
    };
    let text = format_expr(&result);
    let strategy = format!("{:?}", a.strategy).to_lowercase();
    Ok(Outcome {
        report: report(
            "normalize",
            json!({
                "n": n,
                "stage": stage,
                "input": a.expr,
                "strategy": strategy,
                "mutations": mutations,
                "result": text,
            }),
        ),
        text: format!("{text}\n"),
        pass: true,
    })
}

fn relations(a: &SystemArgs) -> Res {
    check_n(a.n)?;
    check_stage(a.n, a.stage)?;
    let sys = system(a.n, a.stage)?;
    let text = sys.relations_text();
    let lines: Vec<&str> = text.lines().collect();
    Ok(Outcome {
        report: report(
            "relations",
            json!({ "n": a.n, "stage": a.stage, "relations": lines }),
        ),
        text,
        pass: true,
    })
}

fn qdet_cmd(a: &QdetArgs) -> Res {
    check_n(a.n)?;
    let (rows, cols) = match (&a.rows, &a.cols) {
        (Some(r), Some(c)) => (r.clone(), c.clone()),
        _ => ((1..=a.n).collect(), (1..=a.n).collect()),
    };
    let p = if rows.len() == a.n && cols.len() == a.n && a.rows.is_none() {
        qdet(a.n)
    } else {
        qminor(a.n, &rows, &cols)
    }
    .map_err(|e| UsageError(format!("--rows/--cols: {e}")))?;
    let text = format_expr(&p);
    Ok(Outcome {
        report: report(
            "qdet",
            json!({ "n": a.n, "rows": rows, "cols": cols, "result": text }),
        ),
        text: format!("{text}\n"),
        pass: true,
    })
}

fn delta(a: &DeltaArgs) -> Res {
    check_n(a.n)?;
    if let Some(t) = a.stage {
        check_stage(a.n, t)?;
    }
    let ds: Vec<usize> = match a.d {
        Some(d) => {
            check_d(a.n, d)?;
            vec![d]
        }
        None => (1..=a.n).collect(),
    };
    let family = match (a.prime, a.stage) {
        (true, _) => "delta_prime",
        (false, Some(_)) => "delta_t",
        (false, None) => "delta",
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    for d in ds {
        let p = match (a.prime, a.stage) {
            (true, _) => delta_d_prime(a.n, d),
            (false, Some(t)) => delta_d_t(a.n, d, t),
            (false, None) => delta_d(a.n, d),
        }
        .map_err(usage)?;
        let e = format_expr(&p);
        text.push_str(&format!("d={d}: {e}\n"));
        entries.push(json!({ "d": d, "result": e }));
    }
    Ok(Outcome {
        report: report(
            "delta",
            json!({ "n": a.n, "family": family, "stage": a.stage, "entries": entries }),
        ),
        text,
        pass: true,
    })
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Alpha => "alpha",
        Variant::Beta => "beta",
        Variant::BetaLiteral => "beta-literal",
    }
}

fn invariants(a: &InvariantsArgs) -> Res {
    let n = a.n;
    check_n(n)?;
    let variants = match a.check {
        None => vec![Variant::Alpha, Variant::Beta],
        Some(CoactionArg::Alpha) => vec![Variant::Alpha],
        Some(CoactionArg::Beta) => vec![Variant::Beta],
        Some(CoactionArg::BetaLiteral) => vec![Variant::BetaLiteral],
    };
    let custom = match &a.expr {
        Some(e) => Some(parse_expr(e, n).map_err(|e| UsageError(format!("--expr: {e}")))?),
        None => None,
    };
    let mut rows = vec![vec!["coaction".into(), "element".into(), "invariant".into()]];
    let mut checks = Vec::new();
    let mut pass = true;
    for v in variants {
        let elements: Vec<(String, NCPolynomial)> = match &custom {
            Some(p) => vec![(format_expr(p), p.clone())],
            None => (1..=n)
                .map(|d| {
                    if v == Variant::Alpha {
                        (format!("Delta_{d}"), delta_d(n, d).unwrap())
                    } else {
                        (format!("Delta'_{d}"), delta_d_prime(n, d).unwrap())
                    }
                })
                .collect(),
        };
        for (name, p) in elements {
            let ok = is_invariant(&p, v).map_err(usage)?;
            pass &= ok;
            rows.push(vec![variant_name(v).into(), name.clone(), mark(ok)]);
            checks.push(json!({ "coaction": variant_name(v), "element": name, "invariant": ok }));
        }
    }
    let antipode = antipode_axioms_check(n).map_err(usage)?;
    pass &= antipode.passed();
    let mut text = render(&rows);
    text.push_str(&format!(
        "antipode axioms: {}\n",
        if antipode.passed() { "pass" } else { "FAIL" }
    ));
    Ok(Outcome {
        report: report(
            "invariants",
            json!({ "n": n, "checks": checks, "antipode": antipode, "pass": pass }),
        ),
        text,
        pass,
    })
}

fn pbw(a: &PbwArgs) -> Res {
    check_n(a.n)?;
    if a.max_overlap_degree < 3 {
        return Err(UsageError(format!(
            "--max-overlap-degree {} must be at least 3",
            a.max_overlap_degree
        )));
    }
    let stages: Vec<usize> = match a.stage {
        Some(t) => {
            check_stage(a.n, t)?;
            vec![t]
        }
        None => (1..=a.n).collect(),
    };
    let mut rows = vec![vec!["t".into(), "overlaps".into(), "failures".into(), "".into()]];
    let mut out = Vec::new();
    let mut pass = true;
    for t in stages {
        let sys = system(a.n, t)?;
        let r = pbw_confluence_check(&sys, a.max_overlap_degree);
        pass &= r.passed();
        rows.push(vec![
            t.to_string(),
            r.checked.to_string(),
            r.failures.len().to_string(),
            mark(r.passed()),
        ]);
        out.push(json!({ "t": t, "checked": r.checked, "failures": r.failures }));
    }
    Ok(Outcome {
        report: report(
            "pbw-check",
            json!({
                "n": a.n,
                "max_overlap_degree": a.max_overlap_degree,
                "stages": out,
                "pass": pass,
            }),
        ),
        text: render(&rows),
        pass,
    })
}

fn tower(a: &TowerArgs) -> Res {
    check_n(a.n)?;
    let r = tower_check(a.n, a.max_degree).map_err(usage)?;
    let mut rows = vec![vec![
        "t".into(),
        "compatible".into(),
        "symbol = S_t+1".into(),
        "graded dims".into(),
        "".into(),
    ]];
    for row in &r.rows {
        rows.push(vec![
            row.t.to_string(),
            row.compatible.to_string(),
            row.symbol_matches_next.to_string(),
            row.graded_dims_match.to_string(),
            mark(row.pass),
        ]);
    }
    let trace = compatibility_check(&*quantum_matrices(a.n).map_err(usage)?, &Weighting::trace(a.n));
    let mut text = render(&rows);
    if trace.compatible {
        text.push_str("trace weighting: compatible\n");
    } else {
        let (l, r) = &trace.witnesses[0];
        text.push_str(&format!("trace weighting: rejected, witness ({l}, {r})\n"));
    }
    let pass = r.pass;
    Ok(Outcome {
        report: report("tower-check", json!({ "tower": r, "trace": trace, "pass": pass })),
        text,
        pass,
    })
}

fn hilbert(a: &DegreeArgs) -> Res {
    check_n(a.n)?;
    let h = hilbert_dims(a.n, a.max_degree).map_err(usage)?;
    let counts = count_identity(a.n, a.max_degree).map_err(usage)?;
    let convolution = (0..=a.max_degree).all(|d| h.convolution(d) == h.dims_a[d]);
    let counting = counts.iter().all(|(_, l, r)| l == r);
    let line = |name: &str, v: &[u64]| {
        let mut r = vec![name.to_string()];
        r.extend(v.iter().map(u64::to_string));
        r
    };
    let degrees: Vec<u64> = (0..=a.max_degree as u64).collect();
    let text = render(&[
        line("d", &degrees),
        line("dims_A", &h.dims_a),
        line("dims_I", &h.dims_i),
        line("dims_H", &h.dims_h),
    ]);
    let pass = convolution && counting;
    let mut v = report("hilbert", &h);
    let obj = v.as_object_mut().unwrap();
    obj.insert("max_degree".into(), json!(a.max_degree));
    obj.insert("convolution_identity".into(), json!(convolution));
    obj.insert("count_identity".into(), json!(counting));
    obj.insert("pass".into(), json!(pass));
    Ok(Outcome {
        report: v,
        text,
        pass,
    })
}

fn certify(a: &CertifyArgs, seed: u64) -> Res {
    check_n(a.n)?;
    if a.max_degree < 1 {
        return Err(UsageError("--max-degree must be at least 1".into()));
    }
    let mode = match a.mode {
        Some(ModeArg::Exact) => Mode::Exact,
        Some(ModeArg::Sampled) => Mode::Sampled,
        None => CertifyConfig::default_mode(a.n),
    };
    if mode == Mode::Sampled && a.samples < 1 {
        return Err(UsageError("--samples must be at least 1".into()));
    }
    let mut cfg = CertifyConfig::new(a.n, a.max_degree, mode);
    cfg.samples = a.samples;
    cfg.seed = seed;
    cfg.slack = a.diagonal_slack;
    if a.right {
        cfg.side = Side::Right;
    }
    let c = certify_freeness_with(&cfg).map_err(usage)?;
    let mut rows = vec![vec![
        "d".into(),
        "dim_A".into(),
        "candidates".into(),
        "rank".into(),
        "".into(),
    ]];
    for r in &c.degrees {
        rows.push(vec![
            r.d.to_string(),
            r.dim_a.to_string(),
            r.candidate_count.to_string(),
            r.rank.to_string(),
            mark(r.pass),
        ]);
    }
    let side = if a.right { "right" } else { "left" };
    let mut text = format!("n={} mode={mode} side={side}\n", a.n);
    if let Some(pts) = &c.sampled_points {
        text.push_str(&format!("q0 = {}\n", pts.join(", ")));
    }
    text.push_str(&render(&rows));
    text.push_str(&format!("verdict: {}\n", c.verdict));
    let pass = c.verdict.passed();
    Ok(Outcome {
        report: report("kostant-certify", &c),
        text,
        pass,
    })
}

fn invariant_ring(a: &DegreeArgs) -> Res {
    check_n(a.n)?;
    let r = invariant_ring_check(a.n, a.max_degree).map_err(usage)?;
    let mut rows = vec![vec![
        "d".into(),
        "dims_I".into(),
        "monomials".into(),
        "rank".into(),
        "".into(),
    ]];
    for x in &r.independence {
        rows.push(vec![
            x.d.to_string(),
            x.expected.to_string(),
            x.monomials.to_string(),
            x.rank.to_string(),
            mark(x.pass),
        ]);
    }
    let mut text = render(&rows);
    text.push_str(&format!(
        "commute: {}\nalpha-invariant: {}\n",
        mark(r.non_commuting.is_empty()),
        mark(r.invariant.iter().all(|&b| b))
    ));
    let pass = r.pass;
    Ok(Outcome {
        report: report("invariant-ring", &r),
        text,
        pass,
    })
}

fn classical(a: &ClassicalArgs, seed: u64) -> Res {
    check_n(a.n)?;
    if a.max_degree < 1 {
        return Err(UsageError("--max-degree must be at least 1".into()));
    }
    let r = classical_oracle_check(a.n, a.max_degree, a.trials, a.pairs, seed).map_err(usage)?;
    let text = format!(
        "principal minor sums: {}/{} matrices match\ncommutative at q=1: {}/{} pairs\n",
        a.trials - r.delta_failures.len(),
        a.trials,
        a.pairs - r.commutativity_failures.len(),
        a.pairs
    );
    let pass = r.pass;
    Ok(Outcome {
        report: report("classical", &r),
        text,
        pass,
    })
}

fn suite(a: &SuiteArgs, seed: u64) -> Res {
    check_n(a.n)?;
    let r = seeded_random_suite(a.n, a.trials, seed).map_err(usage)?;
    let mut rows = vec![vec!["property".into(), "trials".into(), "failures".into(), "".into()]];
    for p in &r.properties {
        rows.push(vec![
            p.name.clone(),
            p.trials.to_string(),
            p.failures.len().to_string(),
            mark(p.failures.is_empty()),
        ]);
    }
    let mut text = render(&rows);
    for p in &r.properties {
        for f in &p.failures {
            text.push_str(&format!("{}: {f}\n", p.name));
        }
    }
    let pass = r.pass;
    Ok(Outcome {
        report: report("suite", &r),
        text,
        pass,
    })
}
