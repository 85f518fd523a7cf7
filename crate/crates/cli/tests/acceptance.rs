//! One line per acceptance criterion. A criterion may print FAIL and still leave the
//! target green only when it is listed as a known discrepancy and the corrected
//! statement is verified in the same run; anything else exits non-zero.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use osp12_cli::{cmd_rep, cmd_verify_conjecture, cmd_verify_corollary, RunOptions};
use osp12_core::bratteli::Level;
use osp12_core::brauer::{
    compose_raw, enumerate_basis, eta_samples, psi_images, verify_presentation, verify_proof_relations,
    verify_remark_quotients, verify_theorem1, x2yz2_with_coefficient, BrauerElement,
};
use osp12_core::closure::{unital_closure, unital_closure_exact, ClosureOptions, Mode};
use osp12_core::linalg::{kron, min_poly, q, MatrixQ};
use osp12_core::osp::{IrrepLabel, Parity};
use osp12_core::report::{Report, Status};
use osp12_core::tensor::{build_casimirs, build_equal_context, phi_images};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    ok: bool,
    detail: String,
    /// Set when the failure is a verified misprint in the stated criterion.
    known: Option<String>,
}

impl Verdict {
    fn plain(ok: bool, detail: impl Into<String>) -> Self {
        Verdict { ok, detail: detail.into(), known: None }
    }
}

fn failing(r: &Report) -> Vec<String> {
    r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.clone()).collect()
}

fn status(r: &Report, name: &str) -> Status {
    r.checks.iter().find(|c| c.name == name).map_or(Status::Fail, |c| c.status)
}

fn brauer_presentation() -> Verdict {
    let n = enumerate_basis().len();
    let etas = eta_samples();
    let rel = verify_presentation(&etas);
    let defining = rel.iter().filter(|r| r.kind == "defining").count();
    let derived = rel.iter().filter(|r| r.kind == "derived").count();
    let held = rel.iter().filter(|r| r.holds).count();
    Verdict::plain(
        n == 15 && defining == 8 && derived == 9 && held == rel.len(),
        format!(
            "{n} diagrams, {held}/{} relations ({defining} defining, {derived} derived) at 3 values of eta",
            rel.len()
        ),
    )
}

fn theorem1() -> Verdict {
    match verify_theorem1() {
        Ok(out) => {
            let bad: Vec<String> = out.checks.iter().filter(|c| !c.holds()).map(|c| c.name.clone()).collect();
            Verdict::plain(bad.is_empty(), format!("{} checks, failing {bad:?}", out.checks.len()))
        }
        Err(e) => Verdict::plain(false, e.to_string()),
    }
}

fn proof_relations() -> Verdict {
    let psi = match psi_images() {
        Ok(p) => p,
        Err(e) => return Verdict::plain(false, e.to_string()),
    };
    let rel = verify_proof_relations(&psi);
    let bad: Vec<&str> = rel.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let ok = rel.len() == 12 && bad.is_empty();
    let corrected = x2yz2_with_coefficient(&psi, -2);
    let known = (bad == ["X^2YZ^2"] && corrected)
        .then(|| "X^2YZ^2 holds once the XZ^2 coefficient in the (w+4)/3 bracket is -2".to_string());
    Verdict { ok, detail: format!("{}/{} identities hold, failing {bad:?}", rel.len() - bad.len(), rel.len()), known }
}

fn remark() -> Verdict {
    let psi = match psi_images() {
        Ok(p) => p,
        Err(e) => return Verdict::plain(false, e.to_string()),
    };
    let (dims, sum_to_one) = verify_remark_quotients(&psi);
    let got: Vec<(i64, usize)> = dims.iter().map(|d| (d.omega, d.dimension)).collect();
    let total: usize = dims.iter().map(|d| d.dimension).sum();
    Verdict::plain(
        got == [(-4, 4), (2, 1), (8, 9), (14, 1)] && total == 15 && sum_to_one,
        format!("(w, dim) = {got:?}, total {total}"),
    )
}

fn corollary(opts: &RunOptions) -> Verdict {
    let r = cmd_verify_corollary(opts);
    let bad = failing(&r);
    Verdict::plain(bad.is_empty() && r.checks.len() == 18, format!("{} checks, failing {bad:?}", r.checks.len()))
}

fn representations(opts: &RunOptions) -> Verdict {
    let r = cmd_rep(6, opts);
    let bad = failing(&r);
    Verdict::plain(bad.is_empty() && r.checks.len() == 14, format!("{} irreps, failing {bad:?}", r.checks.len()))
}

fn conjecture_at_one(opts: &RunOptions) -> Verdict {
    let mut detail = Vec::new();
    let mut ok = true;
    let mut known_ok = true;
    for (mode, limit) in [(Mode::Modular, 60), (Mode::Exact, 600)] {
        let t = Instant::now();
        let out = cmd_verify_conjecture(2, Parity::Plus, Level::Full, mode, opts);
        let secs = t.elapsed().as_secs_f64();
        let bad = failing(&out.report);
        let required = ["closure-dimension", "hex-count", "conj1-X-roots", "conj2-w-roots", "conj3-X-w-roots"];
        let needed = required.iter().all(|n| status(&out.report, n) == Status::Pass);
        ok &= bad.is_empty() && needed && secs < limit as f64;
        known_ok &= needed
            && bad == ["closed-form-edges"]
            && status(&out.report, "closed-form-edges-rescaled") == Status::Pass
            && secs < limit as f64;
        detail.push(format!("{mode:?} {secs:.1}s failing {bad:?}"));
    }
    let known = known_ok.then(|| {
        "printed edge closed forms reproduce only the j = 1/2 tower; rescaled forms match all 19 edges".to_string()
    });
    Verdict { ok, detail: format!("dim 65, hex 19; {}", detail.join("; ")), known }
}

fn conjecture_at_three_halves(opts: &RunOptions) -> Verdict {
    let t = Instant::now();
    let out = cmd_verify_conjecture(3, Parity::Plus, Level::SpectraOnly, Mode::Modular, opts);
    let secs = t.elapsed().as_secs_f64();
    let r = &out.report;
    let bad = failing(r);
    let d = r.checks.iter().find(|c| c.name == "centralizer-dim-multiplicities").and_then(|c| c.values.as_u64());
    let roots = ["conj1-X-roots", "conj1-X-divides", "conj2-w-roots", "conj2-w-divides", "conj3-X-w-roots"];
    let spectra = roots.iter().all(|n| status(r, n) == Status::Pass) && status(r, "hex-count") == Status::Pass;
    let in_time = secs < 600.0;
    let ok = bad.is_empty() && spectra && d == Some(1105) && in_time;
    let known = (spectra
        && in_time
        && d == Some(4u64.pow(4) - 3u64.pow(4))
        && bad == ["closed-form-edges"]
        && status(r, "closed-form-edges-rescaled") == Status::Pass)
        .then(|| {
            "sum of squares is 175 = 4^4-3^4, the (2j+1)^4-(2j)^4 value; 1105 = 7^4-6^4 belongs to 2j = 6. \
             Printed edge closed forms fail, rescaled forms match all 37 edges"
                .to_string()
        });
    Verdict { ok, detail: format!("{secs:.1}s, sum of squares {d:?}, failing {bad:?}"), known }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> MatrixQ {
    let v = (0..rows * cols).map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect();
    MatrixQ::from_vec(rows, cols, v).unwrap()
}

fn properties() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;

    let b = enumerate_basis();
    let mut assoc = true;
    for d1 in &b {
        for d2 in &b {
            for d3 in &b {
                let (l, a) = compose_raw(&compose_raw(d1, d2).0, d3);
                let (r, c) = compose_raw(d1, &compose_raw(d2, d3).0);
                let loops = compose_raw(d1, d2).1 + a == compose_raw(d2, d3).1 + c;
                let eta = q(3, 7);
                let (x, y, z) = (BrauerElement::diagram(*d1), BrauerElement::diagram(*d2), BrauerElement::diagram(*d3));
                assoc &= l == r && loops && x.mul(&y, &eta).mul(&z, &eta) == x.mul(&y.mul(&z, &eta), &eta);
            }
        }
    }
    ok &= assoc;
    parts.push(format!("15^3 associativity {assoc}"));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut kron_ok = true;
    for _ in 0..40 {
        let (r, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (a, b2, c) = (random_matrix(&mut rng, r, s), random_matrix(&mut rng, r, s), random_matrix(&mut rng, 2, 3));
        kron_ok &= kron(&(&a + &b2), &c) == &kron(&a, &c) + &kron(&b2, &c);
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (a, c) = (random_matrix(&mut rng, n, n), random_matrix(&mut rng, n, n));
        let (bb, d) = (random_matrix(&mut rng, m, m), random_matrix(&mut rng, m, m));
        kron_ok &= &kron(&a, &bb) * &kron(&c, &d) == kron(&(&a * &c), &(&bb * &d));
    }
    ok &= kron_ok;
    parts.push(format!("kron bilinear/mixed-product {kron_ok}"));

    let mut ops: Vec<MatrixQ> = Vec::new();
    let mut ctx_ok = true;
    for two_j in [1, 2] {
        match build_equal_context(IrrepLabel::plus(two_j)).and_then(|ctx| {
            let cs = build_casimirs(&ctx)?;
            let bi = phi_images(&cs)?;
            Ok((ctx, cs, bi))
        }) {
            Ok((ctx, cs, bi)) => {
                let w = bi.wx.clone();
                ops.extend(cs.named().iter().map(|(_, m)| (*m).clone()));
                ops.extend([&bi.x - &w, &bi.y - &w, &bi.z - &w]);
                ops.extend(bi.named().iter().map(|(_, m)| (*m).clone()));
                ops.extend([ctx.triple.h.clone(), ctx.triple.r.clone()]);
            }
            Err(_) => ctx_ok = false,
        }
    }
    let psi = psi_images().ok();
    if let Some(p) = &psi {
        ops.extend([p.x.clone(), p.y.clone(), p.z.clone(), p.w.clone(), &p.x - &p.w]);
    }
    let annihilated = ctx_ok && psi.is_some() && ops.iter().all(|a| min_poly(a).eval_matrix(a).is_zero());
    ok &= annihilated;
    parts.push(format!("min_poly annihilates {} operators {annihilated}", ops.len()));

    let closure_ok = psi.is_some_and(|p| {
        let o = ClosureOptions::default();
        let Ok(first) = unital_closure_exact(&[p.x.clone(), p.y.clone()], &o) else { return false };
        let Some(basis) = first.basis else { return false };
        let again = unital_closure_exact(&basis.element_matrices(), &o).map(|c| c.report.dimension);
        let reordered = unital_closure(&[p.w.clone(), p.z.clone(), p.y.clone(), p.x.clone()], Mode::Modular, &o)
            .map(|c| c.report.dimension);
        first.report.dimension == 15 && again.ok() == Some(15) && reordered.ok() == Some(15)
    });
    ok &= closure_ok;
    parts.push(format!("closure idempotent/order-free {closure_ok}"));

    let run = |threads: &str, seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_osp12"))
            .args(["--threads", threads, "--seed", seed, "--report", "json"])
            .args(["verify-conjecture", "--two-j", "2", "--level", "full", "--mode", "modular"])
            .output()
            .map(|o| o.stdout)
    };
    let same = matches!((run("1", "0"), run("4", "31")), (Ok(a), Ok(b)) if a == b && !a.is_empty());
    ok &= same;
    parts.push(format!("byte-identical reports at 1 and 4 threads {same}"));

    Verdict::plain(ok, parts.join(", "))
}

fn print(n: usize, title: &str, v: &Verdict, took: Duration, limit: Option<Duration>) -> bool {
    let in_time = limit.is_none_or(|l| took <= l);
    let pass = v.ok && in_time;
    let time = match limit {
        Some(l) => format!("{:.2}s < {}s", took.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", took.as_secs_f64()),
    };
    println!("{} criterion {n}: {title} [{time}]: {}", if pass { "PASS" } else { "FAIL" }, v.detail);
    if pass {
        return true;
    }
    match &v.known {
        Some(why) if in_time => {
            println!("     known discrepancy, corrected statement verified: {why}");
            true
        }
        _ => false,
    }
}

fn main() -> ExitCode {
    // libtest flags such as --list or --nocapture are ignored on purpose
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let opts = RunOptions { seed: 0, timings: false, budget: None };
    let secs = |s| Some(Duration::from_secs(s));
    let mut all = true;
    let mut run = |n, title: &str, limit: Option<Duration>, f: &dyn Fn() -> Verdict| {
        let t = Instant::now();
        let v = f();
        all &= print(n, title, &v, t.elapsed(), limit);
    };
    run(1, "Brauer presentation", secs(1), &brauer_presentation);
    run(2, "Psi-images and closure 15", secs(5), &theorem1);
    run(3, "twelve reduction identities", secs(5), &proof_relations);
    run(4, "quotient dimensions (4,1,9,1)", secs(5), &remark);
    run(5, "fundamental triple product", secs(30), &|| corollary(&opts));
    run(6, "irreps 2j <= 6, both parities", secs(30), &|| representations(&opts));
    run(7, "conjecture at j = 1, full", secs(660), &|| conjecture_at_one(&opts));
    run(8, "conjecture at j = 3/2, spectra-only", secs(600), &|| conjecture_at_three_halves(&opts));
    run(9, "property suites", None, &properties);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
