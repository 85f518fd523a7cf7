//! Subcommand bodies for the `osp12` binary. Each returns a [`Report`] (or
//! rendered text) so the binary only handles flags, output and exit codes.

use std::time::{Duration, Instant};

use osp12_core::bratteli::{
    build_bratteli, export_dot, export_json, verify_conjecture, ConjectureOptions, ConjectureStatus, Level,
};
use osp12_core::brauer::{
    check_convention, enumerate_basis, eta_samples, psi_images, verify_presentation, verify_proof_relations,
    verify_remark_quotients, verify_theorem1, x2yz2_with_coefficient,
};
use osp12_core::closure::{unital_closure, ClosureOptions, Mode};
use osp12_core::linalg::{q, spectrum_with_scale, MatrixQ, Rational};
use osp12_core::osp::{build_irrep, casimir_q, IrrepLabel, Parity};
use osp12_core::report::{Check, Report};
use osp12_core::tensor::{
    build_casimirs, build_equal_context, monomial_rank, phi_images, verify_centralizing, FIFTEEN_WORDS,
};
use serde_json::{json, Value};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub timings: bool,
    pub budget: Option<Duration>,
}

impl RunOptions {
    fn stamp(&self, c: Check, start: Instant) -> Check {
        if self.timings {
            c.with_millis(start)
        } else {
            c
        }
    }
}

/// Report plus the process exit code it implies.
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        let code = report.exit_code();
        Outcome { report, code }
    }
}

/// Exact below 125 dimensions, modular above.
pub fn default_mode(two_j: u32) -> Mode {
    if (2 * two_j as usize + 1).pow(3) <= 125 {
        Mode::Exact
    } else {
        Mode::Modular
    }
}

fn set_text(vals: &[Rational]) -> String {
    format!("{{{}}}", vals.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn strings(vals: &[Rational]) -> Value {
    json!(vals.iter().map(ToString::to_string).collect::<Vec<_>>())
}

/// Relations and Casimir scalar for every irrep with `2j ≤ max_two_j`.
pub fn cmd_rep(max_two_j: u32, opts: &RunOptions) -> Report {
    let mut r = Report::new(format!("irreducible representations, 2j <= {max_two_j}"));
    for two_j in 0..=max_two_j {
        for parity in [Parity::Plus, Parity::Minus] {
            let t = Instant::now();
            let label = IrrepLabel::new(two_j, parity);
            let c = match build_irrep(label) {
                Ok(rep) => {
                    let rel = rep.relation_results();
                    let failed: Vec<&str> = rel.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
                    let expected = label.casimir_value();
                    let cas = casimir_q(&rep).ok().and_then(|m| m.as_scalar());
                    let ok = failed.is_empty() && cas.as_ref() == Some(&expected);
                    Check::new(
                        format!("{label}"),
                        ok,
                        format!(
                            "dim {}, {}/{} relations, Q = {}",
                            rep.dim(),
                            rel.len() - failed.len(),
                            rel.len(),
                            cas.map_or("not scalar".to_string(), |v| v.to_string())
                        ),
                        json!({ "failed": failed, "casimir": expected.to_string() }),
                    )
                }
                Err(e) => Check::new(format!("{label}"), false, e.to_string(), Value::Null),
            };
            r.push(opts.stamp(c, t));
        }
    }
    r
}

/// Presentation, Ψ-images, reduction identities and ω-quotients of B₃(−1).
pub fn cmd_verify_theorem1(eta: &Rational, opts: &RunOptions) -> Report {
    let mut r = Report::new("Brauer algebra B3(-1) and the Bannai-Ito quotient");
    let mut etas = vec![eta.clone()];
    etas.extend(eta_samples().into_iter().filter(|e| e != eta && *e != q(-1, 1)));
    etas.truncate(3);

    let t = Instant::now();
    let n = enumerate_basis().len();
    r.push(opts.stamp(Check::new("basis count", n == 15, format!("{n} diagrams"), json!(n)), t));
    let t = Instant::now();
    let conv = check_convention(eta);
    r.push(opts.stamp(
        Check::new(
            "composition convention",
            conv.is_ok(),
            conv.err().unwrap_or_else(|| "top-to-bottom".into()),
            Value::Null,
        ),
        t,
    ));
    let t = Instant::now();
    let etas_text = set_text(&etas);
    for rc in verify_presentation(&etas) {
        r.push(opts.stamp(
            Check::new(format!("{} {}", rc.kind, rc.name), rc.holds, format!("eta in {etas_text}"), json!(rc.etas)),
            t,
        ));
    }

    let t = Instant::now();
    match verify_theorem1() {
        Ok(out) => {
            for c in out.checks {
                r.push(opts.stamp(c, t));
            }
        }
        Err(e) => r.push(Check::new("psi images", false, e.to_string(), Value::Null)),
    }

    let t = Instant::now();
    match psi_images() {
        Ok(psi) => {
            for (name, ok) in verify_proof_relations(&psi) {
                r.push(
                    opts.stamp(Check::new(format!("reduction {name}"), ok, "15x15 matrix equality", Value::Null), t),
                );
            }
            let alt = x2yz2_with_coefficient(&psi, -2);
            r.push(opts.stamp(
                Check::new(
                    "reduction X^2YZ^2 with -2XZ^2 in the (w+4)/3 bracket",
                    alt,
                    "diagnostic variant of the displayed identity",
                    Value::Null,
                ),
                t,
            ));
            if !verify_proof_relations(&psi)[9].1 && alt {
                r.note("X^2YZ^2 holds only with the XZ^2 coefficient inside the (w+4)/3 bracket negated");
            }
            let t = Instant::now();
            let (dims, sum_to_one) = verify_remark_quotients(&psi);
            let want = [(-4, 4), (2, 1), (8, 9), (14, 1)];
            for (d, (w0, expected)) in dims.iter().zip(want) {
                r.push(opts.stamp(
                    Check::new(
                        format!("quotient at w = {w0}"),
                        d.omega == w0 && d.dimension == expected,
                        format!("dimension {}, projector rank {}", d.dimension, d.projector_rank),
                        json!(d),
                    ),
                    t,
                ));
            }
            let total: usize = dims.iter().map(|d| d.dimension).sum();
            r.push(opts.stamp(Check::new("quotient dimensions sum", total == 15, format!("{total}"), json!(total)), t));
            r.push(opts.stamp(Check::new("omega projectors sum to 1", sum_to_one, "exact", Value::Null), t));
        }
        Err(e) => r.push(Check::new("psi images", false, e.to_string(), Value::Null)),
    }
    r
}

fn spectrum_check(name: &str, m: &MatrixQ, scale: i64, want: &[Rational], seed: u64) -> Check {
    let sp = spectrum_with_scale(m, scale, seed);
    let mut want = want.to_vec();
    want.sort();
    let ok = sp.split && sp.squarefree && sp.eigenvalues == want;
    Check::new(
        format!("spectrum {name}"),
        ok,
        format!("{} (expected {})", set_text(&sp.eigenvalues), set_text(&want)),
        json!({ "eigenvalues": strings(&sp.eigenvalues), "min_poly_degree": sp.min_poly.degree() }),
    )
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

/// The fundamental triple product and its fifteen-dimensional centralizer.
pub fn cmd_verify_corollary(opts: &RunOptions) -> Report {
    let mut r = Report::new("centralizer of [1/2]^+ (x) [1/2]^+ (x) [1/2]^+");
    let t = Instant::now();
    let half = IrrepLabel::plus(1);
    let built = build_equal_context(half).and_then(|ctx| {
        let cs = build_casimirs(&ctx)?;
        let bi = phi_images(&cs)?;
        Ok((ctx, cs, bi))
    });
    let (ctx, cs, bi) = match built {
        Ok(v) => v,
        Err(e) => {
            r.push(Check::new("context", false, e.to_string(), Value::Null));
            return r;
        }
    };
    r.push(opts.stamp(Check::new("context", true, format!("dimension {}", ctx.dim()), json!(ctx.dim())), t));

    let pair = [q(5, 8), q(-3, 8), q(1, 8)];
    let t = Instant::now();
    for (name, m) in [("Q12", &cs.q12), ("Q23", &cs.q23), ("Q13", &cs.q13)] {
        r.push(opts.stamp(spectrum_check(name, m, 8, &pair, opts.seed), t));
    }
    r.push(opts.stamp(spectrum_check("Q4", &cs.q4, 8, &[q(-5, 8), q(-1, 8), q(3, 8), q(7, 8)], opts.seed), t));
    for (name, m) in [("X", &bi.x), ("Y", &bi.y), ("Z", &bi.z)] {
        r.push(opts.stamp(spectrum_check(name, m, 1, &ints(&[-2, 2, 0]), opts.seed), t));
    }
    let t = Instant::now();
    let omega = bi.omega().cloned();
    let Some(omega) = omega else {
        r.push(Check::new("wX = wY = wZ", false, "the three images differ", Value::Null));
        return r;
    };
    r.push(opts.stamp(Check::new("wX = wY = wZ", true, "exact", Value::Null), t));
    let affine = cs.q4.scale(&q(12, 1)).add_scalar(&q(7, 2));
    r.push(opts.stamp(Check::new("w = 7/2 + 12 Q4", omega == affine, "matrix identity", Value::Null), t));
    r.push(opts.stamp(spectrum_check("w", &omega, 1, &ints(&[-4, 2, 8, 14]), opts.seed), t));
    let shifts = ints(&[-16, -10, -8, -6, 0, 2, 6]);
    for (name, m) in [("X-w", &bi.x), ("Y-w", &bi.y), ("Z-w", &bi.z)] {
        r.push(opts.stamp(spectrum_check(name, &(m - &omega), 1, &shifts, opts.seed), t));
    }

    let t = Instant::now();
    let rk = monomial_rank(&FIFTEEN_WORDS, &cs.q12, &cs.q23);
    r.push(opts.stamp(Check::new("fifteen monomials in Q12, Q23", rk == 15, format!("rank {rk}"), json!(rk)), t));
    let t = Instant::now();
    let closure_opts = ClosureOptions { budget: opts.budget, ..ClosureOptions::default() };
    match unital_closure(&[bi.x.clone(), bi.y.clone(), bi.z.clone(), omega.clone()], Mode::Exact, &closure_opts) {
        Ok(c) => r.push(opts.stamp(
            Check::new(
                "dim <X,Y,Z,w>",
                c.report.dimension == 15,
                format!("{}", c.report.dimension),
                serde_json::to_value(&c.report).expect("serializable"),
            ),
            t,
        )),
        Err(e) => r.push(Check::new("dim <X,Y,Z,w>", false, e.to_string(), Value::Null)),
    }
    let t = Instant::now();
    let comms = verify_centralizing(&bi, &ctx);
    let zero = comms.iter().filter(|c| c.zero).count();
    r.push(opts.stamp(
        Check::new(
            "centralizing commutators",
            zero == comms.len(),
            format!("{zero}/{} vanish", comms.len()),
            json!(comms),
        ),
        t,
    ));
    let t = Instant::now();
    match build_bratteli(half) {
        Ok(d) => {
            let mults: Vec<usize> = d.levels[2].iter().map(|(_, m)| *m).collect();
            let sum = d.centralizer_dimension();
            r.push(opts.stamp(
                Check::new(
                    "sum of squared multiplicities",
                    sum == 15 && mults == [1, 2, 3, 1],
                    format!("multiplicities {mults:?}, sum {sum}"),
                    json!(mults),
                ),
                t,
            ));
        }
        Err(e) => r.push(Check::new("sum of squared multiplicities", false, e.to_string(), Value::Null)),
    }
    r
}

/// The conjectured quotient on `([j]^ε)^{⊗3}`.
pub fn cmd_verify_conjecture(two_j: u32, parity: Parity, level: Level, mode: Mode, opts: &RunOptions) -> Outcome {
    let label = IrrepLabel::new(two_j, parity);
    let mut r = Report::new(format!("conjecture at {label}, level {level:?}, mode {mode:?}"));
    if two_j > 3 {
        r.note(format!("2j = {two_j} is beyond the supported range 1..3; runtime may be large"));
    }
    let mut copts = ConjectureOptions::new(level, mode);
    copts.seed = opts.seed;
    copts.timings = opts.timings;
    copts.closure.budget = opts.budget;
    match verify_conjecture(label, &copts) {
        Ok(out) => {
            r.extend(out.checks);
            for n in out.notes {
                r.note(n);
            }
            let status = match out.status {
                ConjectureStatus::Verified => "verified",
                ConjectureStatus::WeaklyVerified => "weakly verified",
                ConjectureStatus::Falsified => "falsified",
            };
            let status = if out.aborted.is_some() { "incomplete" } else { status };
            r.note(format!("status: {status}"));
            let code = if out.aborted.is_some() { 2 } else { r.exit_code() };
            if let Some(why) = out.aborted {
                r.note(format!("aborted: {why}"));
            }
            Outcome { report: r, code }
        }
        Err(e) => {
            r.push(Check::new("conjecture", false, e.to_string(), Value::Null));
            r.into()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Dot,
    Json,
}

pub fn cmd_bratteli(two_j: u32, parity: Parity, format: DiagramFormat) -> Result<String, String> {
    let d = build_bratteli(IrrepLabel::new(two_j, parity)).map_err(|e| e.to_string())?;
    Ok(match format {
        DiagramFormat::Dot => export_dot(&d),
        DiagramFormat::Json => export_json(&d),
    })
}
