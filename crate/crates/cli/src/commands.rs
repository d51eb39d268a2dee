use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use polybuckle::bounds::{
    chain_bounds, eval_l2_priors, euclidean_coefficient, next_bound_cor11,
    next_bound_cor11_single_exact, next_bound_sharp, next_bound_sphere, ChainMethod,
};
use polybuckle::eigen::solve_buckling;
use polybuckle::galerkin::Domain;
use polybuckle::polyrec::{extract_a_coefficients, phi_polynomial};
use polybuckle::verify::{run_verification, Status, VerificationReport, VerifyConfig};
use polybuckle::Spectrum;
use serde_json::json;

use crate::args::*;
use crate::output::{num, Failure, EXIT_INPUT};

/// What a successful command produced.
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    /// Set when the command ran to completion but its checks failed.
    pub failure: Option<Failure>,
}

impl Outcome {
    fn data(stdout: String) -> Self {
        Outcome {
            stdout,
            warnings: Vec::new(),
            failure: None,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn read_spectrum(path: &Path, meta: &MetaArgs) -> Result<(String, Spectrum), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: "io",
        message: format!("{}: {e}", path.display()),
        exit: EXIT_INPUT,
    })?;
    let spectrum = Spectrum::parse_file(&text)?;
    for (flag, given, header) in [("n", meta.n, spectrum.n()), ("l", meta.l, spectrum.l())] {
        if let Some(v) = given {
            if v != header {
                return Err(Failure {
                    code: "header-mismatch",
                    message: format!(
                        "--{flag} {v} disagrees with the spectrum header {flag}={header}"
                    ),
                    exit: EXIT_INPUT,
                });
            }
        }
    }
    Ok((text, spectrum))
}

fn build_domain(args: &DomainArgs) -> Result<Domain, Failure> {
    let edges = args.domain.clone().unwrap_or_else(|| vec![1.0; args.dim as usize]);
    let domain = match (args.dim, edges.as_slice()) {
        (1, [a]) => Domain::interval(*a)?,
        (2, [a]) => Domain::rectangle(*a, *a)?,
        (2, [a, b]) => Domain::rectangle(*a, *b)?,
        _ => {
            return Err(Failure::usage(format!(
                "--domain needs {} edge length(s) for --dim {}",
                args.dim, args.dim
            )))
        }
    };
    Ok(domain)
}

pub fn run(config: RunConfig) -> CmdResult {
    match config.command {
        Command::Phi(a) => phi(&a),
        Command::Coeffs(a) => coeffs(&a),
        Command::Solve(a) => solve(&a),
        Command::Bound(BoundCommand::Next(a)) => bound_next(&a),
        Command::Bound(BoundCommand::Chain(a)) => bound_chain(&a),
        Command::Verify(a) => verify(&a),
        Command::CompareL2(a) => compare_l2(&a),
    }
}

fn phi(a: &PhiArgs) -> CmdResult {
    let p = phi_polynomial(a.q, a.n)?;
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    let out = if a.json {
        to_json(&json!({
            "schema": 1,
            "q": a.q,
            "n": a.n,
            "polynomial": p.to_string(),
            "coefficients": coeffs,
        }))
    } else if a.exact {
        format!("{}\n", coeffs.join(" "))
    } else {
        format!("{p}\n")
    };
    Ok(Outcome::data(out))
}

fn coeffs(a: &CoeffsArgs) -> CmdResult {
    let c = extract_a_coefficients(a.l, a.n)?;
    let k = euclidean_coefficient(a.n, a.l)?;
    let out = if a.json {
        let mut v = serde_json::to_value(&c).expect("coefficients serialize");
        v["schema"] = json!(1);
        v["K"] = json!(k.to_string());
        to_json(&v)
    } else {
        let mut s = format!("n={} l={}\nK = {k}\n", a.n, a.l);
        if c.a.is_empty() {
            s.push_str("a: none\n");
        }
        for (j, (x, xp)) in c.a.iter().zip(&c.a_plus).enumerate() {
            let _ = writeln!(s, "a_{} = {x}  a_{}^+ = {xp}", j + 1, j + 1);
        }
        s
    };
    Ok(Outcome::data(out))
}

fn solve(a: &SolveArgs) -> CmdResult {
    let domain = build_domain(&a.domain)?;
    let sol = solve_buckling(domain, a.l, a.degree, a.count)?;
    let info = sol.forms.basis_info();
    let mut warnings = Vec::new();
    if info.conditioning_warning {
        warnings.push(format!(
            "degree {} exceeds 16; form matrices may be poorly conditioned",
            a.degree
        ));
    }
    if let Some(path) = &a.export {
        let file = fs::File::create(path).map_err(|e| Failure {
            code: "io",
            message: format!("{}: {e}", path.display()),
            exit: EXIT_INPUT,
        })?;
        sol.forms.write_binary(std::io::BufWriter::new(file))?;
    }
    let values = sol.eigenvalues();
    let out = if a.json {
        to_json(&json!({
            "schema": 1,
            "domain": domain,
            "n": domain.dim(),
            "l": a.l,
            "m": a.degree,
            "dofs": sol.forms.dofs(),
            "basis": info,
            "eigenvalues": values,
        }))
    } else if a.csv {
        let mut s = String::from("index,eigenvalue\n");
        for (i, v) in values.iter().enumerate() {
            let _ = writeln!(s, "{},{v:e}", i + 1);
        }
        s
    } else {
        let mut s = format!("# n={} l={}\n", domain.dim(), a.l);
        for v in values {
            let _ = writeln!(s, "{}", num(*v));
        }
        s
    };
    Ok(Outcome {
        stdout: out,
        warnings,
        failure: None,
    })
}

fn bound_next(a: &NextArgs) -> CmdResult {
    let (text, spectrum) = read_spectrum(&a.spectrum, &a.meta)?;
    let k = a.k.unwrap_or(spectrum.len());
    if a.exact {
        if a.method != NextMethod::Cor11 || k != 1 {
            return Err(Failure::usage(
                "--exact is available for --method cor11 with k = 1 only",
            ));
        }
        let exact = Spectrum::parse_file_exact(&text)?;
        let b = next_bound_cor11_single_exact(&exact[0], spectrum.n(), spectrum.l())?;
        return Ok(Outcome::data(format!("{b}\n")));
    }
    let (tag, value) = match a.method {
        NextMethod::Cor11 => ("cor11", next_bound_cor11(&spectrum, k)?),
        NextMethod::Sharp => ("sharp", next_bound_sharp(&spectrum, k)?),
        NextMethod::Sphere => ("sphere", next_bound_sphere(&spectrum, k)?),
    };
    let out = if a.json {
        to_json(&json!({
            "schema": 1,
            "method": tag,
            "n": spectrum.n(),
            "l": spectrum.l(),
            "k": k,
            "bound": value,
        }))
    } else {
        format!("{}\n", num(value))
    };
    Ok(Outcome::data(out))
}

fn bound_chain(a: &ChainArgs) -> CmdResult {
    let method = match a.method {
        ChainMethodArg::Cor11 => ChainMethod::Cor11,
        ChainMethodArg::Sharp => ChainMethod::Sharp,
    };
    let bounds = chain_bounds(a.lambda1, a.count, a.n, a.l, method)?;
    let out = if a.json {
        to_json(&json!({
            "schema": 1,
            "method": method,
            "n": a.n,
            "l": a.l,
            "bounds": bounds,
        }))
    } else {
        bounds.iter().map(|b| format!("{}\n", num(*b))).collect()
    };
    Ok(Outcome::data(out))
}

fn verify(a: &VerifyArgs) -> CmdResult {
    let domain = build_domain(&a.domain)?;
    let config = VerifyConfig {
        domain,
        l: a.l,
        m: a.degree,
        k_max: a.kmax,
    };
    let report = match a.jobs {
        Some(0) => return Err(Failure::usage("--jobs must be at least 1")),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::usage(e.to_string()))?
            .install(|| run_verification(&config))?,
        None => run_verification(&config)?,
    };
    let out = if a.json {
        to_json(&serde_json::to_value(&report).expect("report serializes"))
    } else {
        verification_text(&report)
    };
    let mut outcome = Outcome::data(out);
    match report.status {
        Status::Passed => {}
        Status::Inconclusive => outcome.warnings.push(
            "inconclusive: some inequality is violated by less than the estimated discretization error"
                .into(),
        ),
        Status::Failed => {
            outcome.failure = Some(Failure::verification(
                "at least one check failed beyond its tolerance",
            ))
        }
    }
    Ok(outcome)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Passed => "passed",
        Status::Inconclusive => "inconclusive",
        Status::Failed => "failed",
    }
}

fn verification_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let edges: Vec<String> = r.domain.edges().iter().map(|e| e.to_string()).collect();
    let _ = writeln!(
        s,
        "domain {} (n={}), l={}, m={}, eigenvalues computed: {}",
        edges.join("x"),
        r.n,
        r.l,
        r.m,
        r.count
    );
    for note in &r.notes {
        let _ = writeln!(s, "note: {note}");
    }

    s.push_str("\neigenvalues\n");
    for (i, v) in r.eigenvalues.iter().enumerate() {
        let _ = writeln!(s, "{:>4}  {}", i + 1, num(*v));
    }

    if !r.theorem.is_empty() {
        s.push_str("\ninequalities at x = Λ_{k+1}\n");
        let _ = writeln!(
            s,
            "{:>4}  {:<6}  {:>22}  {:>22}  {:>22}  {:>22}  status",
            "k", "method", "lhs", "rhs", "residual", "bound"
        );
        for t in &r.theorem {
            for rep in &t.reports {
                let bound = rep.bound_value.map(num).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{:>4}  {:<6}  {:>22}  {:>22}  {:>22}  {:>22}  {}",
                    t.k,
                    rep.method.tag(),
                    num(rep.lhs),
                    num(rep.rhs),
                    num(rep.residual),
                    bound,
                    if rep.satisfied { "ok" } else { "violated" }
                );
            }
        }
    }

    s.push_str("\nrayleigh quantities r_k = xᵀA_k x\n");
    let _ = writeln!(
        s,
        "{:>4}  {:>2}  {:>22}  {:>22}  {:>22}  ok",
        "i", "k", "r_k", "bound", "margin"
    );
    for row in &r.lemma {
        let _ = writeln!(
            s,
            "{:>4}  {:>2}  {:>22}  {:>22}  {:>22}  {}",
            row.i,
            row.k,
            num(row.r),
            num(row.bound),
            num(row.margin),
            if row.passed { "yes" } else { "no" }
        );
    }

    s.push_str("\nconvergence\n");
    for row in &r.convergence.rows {
        let vals: Vec<String> = row.values.iter().map(|v| num(*v)).collect();
        let _ = writeln!(s, "{:>4}  {}", row.m, vals.join("  "));
    }
    let lim: Vec<String> = r.convergence.extrapolated.iter().map(|v| num(*v)).collect();
    let _ = writeln!(s, "limit {}", lim.join("  "));
    let _ = writeln!(
        s,
        "monotone: {}",
        if r.convergence.is_monotone() { "yes" } else { "no" }
    );

    let _ = writeln!(s, "\nstatus: {}", status_word(r.status));
    s
}

fn compare_l2(a: &CompareArgs) -> CmdResult {
    let (_, spectrum) = read_spectrum(&a.spectrum, &a.meta)?;
    let k = a.k.unwrap_or(spectrum.len());
    let reports = eval_l2_priors(&spectrum, k, a.candidate, a.delta)?;
    let out = if a.json {
        to_json(&json!({
            "schema": 1,
            "n": spectrum.n(),
            "k": k,
            "candidate": a.candidate,
            "delta": a.delta,
            "reports": reports,
        }))
    } else {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(
                s,
                "{:<7}  lhs={}  rhs={}  residual={}  satisfied={}",
                r.method.tag(),
                num(r.lhs),
                num(r.rhs),
                num(r.residual),
                if r.satisfied { "yes" } else { "no" }
            );
        }
        s
    };
    Ok(Outcome::data(out))
}
