use crate::failure::Failure;
use crate::{Cli, Command, Method, Target};
use serde::Serialize;
use solgraph::expressibility::{express_s3, verify_faithful_capped, Violation};
use solgraph::formulas::{parse_formula_file, serialize_formula};
use solgraph::hardness::{compile_tm, gen_long_path, long_path_ends, CompileOptions, TMachine};
use solgraph::oracle::build_graph_capped;
use solgraph::relations::{parse_relations, Complexity};
use solgraph::tight::{conn_auto, conn_poly, stconn_tight, used_relations, Certificate, Decision, TightError};
use solgraph::{classify_set, Assignment, ClassificationReport, ConnMethod, Formula, SolutionGraph};
use std::path::Path;

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    oracle_cap: usize,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(cli: &Cli, command: &str, body: &T, text: impl FnOnce() -> String) {
    if cli.json {
        let report = Report {
            command,
            seed: cli.seed,
            oracle_cap: cli.oracle_cap,
            body,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", text());
    }
}

/// Runs one subcommand; `Ok(answer)` maps to exit 0 or 1.
pub fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Classify { relations } => classify(cli, relations),
        Command::Conn { formula, method, oracle } => conn(cli, formula, *method, *oracle),
        Command::Stconn { formula, s, t, oracle } => stconn(cli, formula, s, t, *oracle),
        Command::Diameter { formula, oracle } => diameter(cli, formula, *oracle),
        Command::Express { relations, target, verify } => express(cli, relations, *target, *verify),
        Command::GenLongpath { n, out } => gen_longpath(cli, *n, out),
        Command::CompileTm {
            machine,
            n,
            out,
            tiny,
            max_vars,
        } => compile(cli, machine, *n, out, *tiny, *max_vars),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_formula(path: &Path) -> Result<Formula, Failure> {
    Ok(parse_formula_file(path)?)
}

fn oracle_graph(cli: &Cli, f: &Formula) -> Result<SolutionGraph, Failure> {
    let g = build_graph_capped(f, cli.oracle_cap)?;
    if g.is_empty() {
        return Err(Failure::unsat());
    }
    Ok(g)
}

fn write_dot(cli: &Cli, f: &Formula, built: Option<&SolutionGraph>) -> Result<(), Failure> {
    let Some(path) = &cli.dot else { return Ok(()) };
    let dot = match built {
        Some(g) => g.to_dot(),
        None => build_graph_capped(f, cli.oracle_cap)?.to_dot(),
    };
    write(path, &dot)
}

fn classify(cli: &Cli, path: &Path) -> Result<bool, Failure> {
    let rels = parse_relations(&read(path)?)?;
    if rels.is_empty() {
        return Err(Failure::usage(format!("{}: no relations", path.display())));
    }
    let report = classify_set(&rels);
    #[derive(Serialize)]
    struct Body<'a> {
        summary: String,
        report: &'a ClassificationReport,
    }
    let body = Body {
        summary: report.summary(),
        report: &report,
    };
    emit(cli, "classify", &body, || {
        let mut s = String::new();
        for r in &report.relations {
            let flags = [
                ("bijunctive", r.bijunctive),
                ("horn", r.horn),
                ("dual-horn", r.dual_horn),
                ("affine", r.affine),
                ("ihsb-", r.ihsb_minus),
                ("ihsb+", r.ihsb_plus),
                ("cw-bijunctive", r.componentwise_bijunctive),
                ("cw-ihsb-", r.componentwise_ihsb_minus),
                ("cw-ihsb+", r.componentwise_ihsb_plus),
                ("or-free", r.or_free),
                ("nand-free", r.nand_free),
            ];
            let on: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
            let on = if on.is_empty() { "-".to_string() } else { on.join(" ") };
            s += &format!("{}/{}: {on}\n", r.name, r.arity);
        }
        s += &format!("verdict: {}\n", report.verdict);
        let methods: Vec<&str> = report.conn_poly_methods.iter().map(|m| m.id()).collect();
        s += &format!(
            "conn methods: {}\n",
            if methods.is_empty() { "none".into() } else { methods.join(", ") }
        );
        s += &report.summary();
        s.push('\n');
        s
    });
    Ok(true)
}

#[derive(Serialize)]
struct ConnBody {
    connected: bool,
    method: String,
    certificate: Option<Certificate>,
    components: Option<usize>,
}

fn inapplicable(f: &Formula, what: &str) -> Failure {
    let report = classify_set(&used_relations(f));
    let p = report.predicted;
    let status = match what {
        "st-connectivity" => format!("st-Conn {}", p.stconn),
        _ if p.conn == Complexity::InCoNp => "Conn in coNP (certificate or oracle only)".to_string(),
        _ => format!("Conn {}", p.conn),
    };
    Failure::usage(format!(
        "no polynomial algorithm for {what} applies to this formula: {}; {status}; rerun with --oracle",
        report.verdict
    ))
}

fn conn(cli: &Cli, path: &Path, method: Method, fallback: bool) -> Result<bool, Failure> {
    let f = load_formula(path)?;
    let poly = |m: ConnMethod| conn_poly(&f, m);
    let decision: Result<Decision, TightError> = match method {
        Method::Oracle => return conn_oracle(cli, &f),
        Method::Auto => conn_auto(&f),
        Method::Bijunctive => poly(ConnMethod::Bijunctive),
        Method::Affine => poly(ConnMethod::Affine),
        Method::IhsbMinus => poly(ConnMethod::IhsbMinus),
        Method::IhsbPlus => poly(ConnMethod::IhsbPlus),
    };
    let d = match decision {
        Ok(d) => d,
        Err(TightError::MethodInapplicable { .. }) if method == Method::Auto => {
            if fallback {
                return conn_oracle(cli, &f);
            }
            return Err(inapplicable(&f, "connectivity"));
        }
        Err(e) => return Err(e.into()),
    };
    write_dot(cli, &f, None)?;
    let body = ConnBody {
        connected: d.answer,
        method: d.method,
        certificate: d.certificate,
        components: None,
    };
    emit(cli, "conn", &body, || conn_text(&body));
    Ok(body.connected)
}

fn conn_text(b: &ConnBody) -> String {
    let mut s = format!(
        "{} (method {})",
        if b.connected { "connected" } else { "disconnected" },
        b.method
    );
    if let Some(c) = b.components {
        s += &format!("; {c} component{}", plural(c));
    }
    if let Some(Certificate::Pair(x, y)) = &b.certificate {
        s += &format!("; certificate {x} {y}");
    }
    s + "\n"
}

fn plural(k: usize) -> &'static str {
    if k == 1 {
        ""
    } else {
        "s"
    }
}

fn conn_oracle(cli: &Cli, f: &Formula) -> Result<bool, Failure> {
    let g = oracle_graph(cli, f)?;
    write_dot(cli, f, Some(&g))?;
    let comps = g.components();
    let certificate = (comps.len() > 1).then(|| {
        Certificate::Pair(
            g.solutions()[comps[0][0]].clone(),
            g.solutions()[comps[1][0]].clone(),
        )
    });
    let body = ConnBody {
        connected: g.is_connected(),
        method: "oracle".into(),
        certificate,
        components: Some(comps.len()),
    };
    emit(cli, "conn", &body, || conn_text(&body));
    Ok(body.connected)
}

fn stconn(cli: &Cli, path: &Path, s: &str, t: &str, oracle: bool) -> Result<bool, Failure> {
    let f = load_formula(path)?;
    let parse = |bits: &str| -> Result<Assignment, Failure> {
        let a = Assignment::parse(bits)?;
        if a.len() != f.n() {
            return Err(Failure::usage(format!(
                "{bits} has {} bits, the formula has {} variables",
                a.len(),
                f.n()
            )));
        }
        Ok(a)
    };
    let (s, t) = (parse(s)?, parse(t)?);
    #[derive(Serialize)]
    struct Body {
        connected: bool,
        method: String,
        distance: Option<usize>,
        path: Option<Vec<Assignment>>,
    }
    let body = if oracle {
        let g = oracle_graph(cli, &f)?;
        write_dot(cli, &f, Some(&g))?;
        let r = g.st_conn(&s, &t)?;
        Body {
            connected: r.connected,
            method: "oracle".into(),
            distance: r.path.as_ref().map(|p| p.len() - 1),
            path: r.path,
        }
    } else {
        let used = used_relations(&f);
        let class = if used.is_empty() {
            solgraph::TightClass::ComponentwiseBijunctive
        } else {
            classify_set(&used)
                .tight_branch()
                .ok_or_else(|| inapplicable(&f, "st-connectivity"))?
        };
        let d = stconn_tight(&f, class, &s, &t)?;
        write_dot(cli, &f, None)?;
        Body {
            connected: d.answer,
            method: d.method,
            distance: None,
            path: d.path,
        }
    };
    emit(cli, "stconn", &body, || {
        let mut out = format!(
            "{} (method {})\n",
            if body.connected { "connected" } else { "disconnected" },
            body.method
        );
        if let Some(p) = &body.path {
            let steps: Vec<String> = p.iter().map(|a| a.to_string()).collect();
            out += &format!("path ({} steps): {}\n", p.len() - 1, steps.join(" "));
        }
        out
    });
    Ok(body.connected)
}

fn diameter(cli: &Cli, path: &Path, oracle: bool) -> Result<bool, Failure> {
    if !oracle {
        return Err(Failure::usage(
            "the diameter is computed by the oracle only; pass --oracle",
        ));
    }
    let f = load_formula(path)?;
    let g = oracle_graph(cli, &f)?;
    write_dot(cli, &f, Some(&g))?;
    #[derive(Serialize)]
    struct Body {
        diameter: u32,
        solutions: usize,
        components: usize,
        simple_path: bool,
    }
    let body = Body {
        diameter: g.diameter()?,
        solutions: g.len(),
        components: g.component_count(),
        simple_path: g.is_simple_path(),
    };
    emit(cli, "diameter", &body, || {
        format!(
            "diameter {} ({} solution{}, {} component{}{})\n",
            body.diameter,
            body.solutions,
            plural(body.solutions),
            body.components,
            plural(body.components),
            if body.simple_path { ", a simple path" } else { "" }
        )
    });
    Ok(true)
}

fn express(cli: &Cli, path: &Path, target: Target, verify: bool) -> Result<bool, Failure> {
    let Target::S3 = target;
    let rels = parse_relations(&read(path)?)?;
    let p = express_s3(&rels)?;
    #[derive(Serialize)]
    struct Gadget {
        name: String,
        variables: usize,
        witnesses: usize,
        clauses: usize,
        verified: Option<bool>,
        violation: Option<Violation>,
    }
    #[derive(Serialize)]
    struct Body {
        source: String,
        expanding_pair: (Assignment, Assignment),
        gadgets: Vec<Gadget>,
        verified: Option<bool>,
    }
    let mut gadgets = Vec::new();
    for name in p.names() {
        let g = p.lowered(&name)?;
        let violation = if verify {
            verify_faithful_capped(&g, cli.oracle_cap)?
        } else {
            None
        };
        gadgets.push(Gadget {
            name,
            variables: g.total_vars(),
            witnesses: g.y_vars.len(),
            clauses: g.formula.clauses().len(),
            verified: verify.then_some(violation.is_none()),
            violation,
        });
    }
    let body = Body {
        source: p.source.name().to_string(),
        expanding_pair: (p.step1.a.clone(), p.step1.b.clone()),
        verified: verify.then(|| gadgets.iter().all(|g| g.violation.is_none())),
        gadgets,
    };
    emit(cli, "express", &body, || {
        let mut s = format!(
            "source relation {}; expanding pair {} {}\n",
            body.source, body.expanding_pair.0, body.expanding_pair.1
        );
        for g in &body.gadgets {
            s += &format!(
                "{}: {} variables, {} witnesses, {} clauses",
                g.name, g.variables, g.witnesses, g.clauses
            );
            match (&g.verified, &g.violation) {
                (_, Some(v)) => s += &format!(", falsified ({v})"),
                (Some(true), None) => s += ", faithful",
                _ => {}
            }
            s.push('\n');
        }
        s
    });
    Ok(body.verified.unwrap_or(true))
}

fn gen_longpath(cli: &Cli, n: usize, out: &Path) -> Result<bool, Failure> {
    let f = gen_long_path(n)?;
    let (s, t) = long_path_ends(n);
    let text = format!("# long path on {n} variables\n# s {s}\n# t {t}\n{}", serialize_formula(&f));
    write(out, &text)?;
    #[derive(Serialize)]
    struct Body<'a> {
        out: String,
        n: usize,
        clauses: usize,
        path_vertices: u64,
        s: &'a Assignment,
        t: &'a Assignment,
    }
    let body = Body {
        out: out.display().to_string(),
        n,
        clauses: f.clauses().len(),
        path_vertices: (1u64 << (n / 2 + 1)) - 1,
        s: &s,
        t: &t,
    };
    emit(cli, "gen-longpath", &body, || {
        format!(
            "wrote {}: {} variables, {} clauses, path of {} vertices from {} to {}\n",
            body.out, body.n, body.clauses, body.path_vertices, body.s, body.t
        )
    });
    Ok(true)
}

fn compile(cli: &Cli, path: &Path, n: usize, out: &Path, tiny: bool, max_vars: usize) -> Result<bool, Failure> {
    let m = TMachine::parse(&read(path)?)?;
    let opts = CompileOptions {
        clock_range: if tiny { CompileOptions::tiny().clock_range } else { None },
        max_vars,
    };
    let c = compile_tm(&m, n, &opts)?;
    write(out, &c.to_csp())?;
    #[derive(Serialize)]
    struct Body {
        out: String,
        variables: usize,
        clauses: usize,
        clock_cells: usize,
        configurations: String,
        s: Assignment,
        t: Assignment,
    }
    let body = Body {
        out: out.display().to_string(),
        variables: c.formula.n(),
        clauses: c.formula.clauses().len(),
        clock_cells: c.layout.clock_len,
        configurations: c.layout.configuration_count().to_string(),
        s: c.s.clone(),
        t: c.t.clone(),
    };
    emit(cli, "compile-tm", &body, || {
        format!(
            "wrote {}: {} variables, {} clauses, {} clock cells, {} configurations\n",
            body.out, body.variables, body.clauses, body.clock_cells, body.configurations
        )
    });
    Ok(true)
}
