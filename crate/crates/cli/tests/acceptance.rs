//! Acceptance run: one PASS/FAIL line per criterion, exact residuals only.
//! Set `KAPPA_SEED` to pin the randomized metric; otherwise it is drawn from the clock.

use kappa_core::calculus::calculus_consistency_suite;
use kappa_core::calculus::suite::expected_exterior_dimension;
use kappa_core::hopf::ideal::expected_dimension;
use kappa_core::hopf::{hopf_axiom_suite, ideal_theorem_suite};
use kappa_core::ncalg::confluence::{confluence_dual, confluence_group};
use kappa_core::qlie::{casimir_checks, verify_brackets_suite};
use kappa_core::{Dual, Group, Metric, Report, Status, Variant};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn need(report: &Report, name: &str) -> Result<(), String> {
    match report.get(name) {
        Some(c) if c.status == Status::Pass => Ok(()),
        Some(c) => Err(format!("{} {}: {} ({})", report.variant, name, c.status.as_str(), c.residual)),
        None => Err(format!("{} {}: missing", report.variant, name)),
    }
}

fn all_pass(report: &Report) -> Result<(), String> {
    match report.checks.iter().find(|c| c.status == Status::Fail) {
        None => Ok(()),
        Some(c) => Err(format!("{} {} on {}: {}", report.suite, c.name, report.metric, c.residual)),
    }
}

fn within(t: Duration, limit_s: u64, what: &str) -> Result<(), String> {
    if t <= Duration::from_secs(limit_s) {
        Ok(())
    } else {
        Err(format!("{what} took {:.0}s, limit {limit_s}s", t.as_secs_f64()))
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn criterion_1(random: &Metric) -> Outcome {
    let (mink, lc) = (Metric::minkowski(), Metric::light_cone());
    let sets: [(&str, Vec<(&Metric, bool)>); 5] = [
        ("poincare-general", vec![(&mink, false), (random, false)]),
        ("poincare-g00zero", vec![(&lc, false)]),
        ("weyl", vec![(&lc, true)]),
        ("dual-poincare", vec![(&mink, false), (random, false)]),
        ("dual-weyl", vec![(&lc, true)]),
    ];
    let mut worst = Duration::ZERO;
    for (set, metrics) in sets {
        let t = Instant::now();
        for (m, weyl) in metrics {
            let r = if set.starts_with("dual") {
                confluence_dual(&Dual::new(m, weyl), 4, 1).map_err(e)?
            } else {
                confluence_group(&Group::new(m, weyl), false, 4, 1).map_err(e)?
            };
            all_pass(&r)?;
        }
        let dt = t.elapsed();
        within(dt, 300, set)?;
        worst = worst.max(dt);
    }
    Ok(format!("5 relation sets confluent at degree 4, slowest set {:.0}s", worst.as_secs_f64()))
}

fn criterion_2(random: &Metric) -> Outcome {
    let (mink, lc) = (Metric::minkowski(), Metric::light_cone());
    let start = Instant::now();
    let mut slowest = Duration::ZERO;
    for (v, m) in [
        (Variant::PoincareGeneral, &mink),
        (Variant::PoincareGeneral, random),
        (Variant::PoincareG00Zero, &lc),
        (Variant::Weyl, &lc),
    ] {
        let t = Instant::now();
        let g = Group::for_variant(v, m).map_err(e)?;
        let r = hopf_axiom_suite(&g, 20, 7).map_err(e)?;
        all_pass(&r)?;
        let dt = t.elapsed();
        within(dt, 120, &format!("{} on {}", v.name(), m.name))?;
        slowest = slowest.max(dt);
    }
    Ok(format!(
        "axioms exact on generators and 20 random elements, 4 runs in {:.0}s, slowest {:.0}s",
        start.elapsed().as_secs_f64(),
        slowest.as_secs_f64()
    ))
}

fn group_cases() -> [(Variant, Metric); 3] {
    [
        (Variant::PoincareGeneral, Metric::minkowski()),
        (Variant::PoincareG00Zero, Metric::light_cone()),
        (Variant::Weyl, Metric::light_cone()),
    ]
}

fn criterion_3() -> Outcome {
    let mut dims = Vec::new();
    for (v, m) in group_cases() {
        let g = Group::for_variant(v, &m).map_err(e)?;
        let r = ideal_theorem_suite(&g, v, 4).map_err(e)?;
        for name in [
            "ad-invariance",
            "antipode-star-stable",
            "quotient-dimension",
            "quotient-dimension-stable",
        ] {
            need(&r, name)?;
        }
        all_pass(&r)?;
        dims.push(expected_dimension(v).to_string());
    }
    Ok(format!("ad-invariant and S(.)*-stable at degree 4; dimensions {} stable at 5", dims.join("/")))
}

fn criterion_4(calc: &[Report], elapsed: Duration) -> Outcome {
    let mut counts = Vec::new();
    for r in calc {
        for name in ["d-respects-relations", "leibniz", "d-squared-generators", "exterior-dimension"] {
            need(r, name)?;
        }
        all_pass(r)?;
        counts.push(expected_exterior_dimension(Variant::parse(&r.variant).map_err(e)?).to_string());
    }
    let general = expected_exterior_dimension(Variant::PoincareGeneral);
    if general != 15 * 14 / 2 + 5 {
        return Err(format!("{general} != 105 + 5"));
    }
    within(elapsed, 600, "calculus suites")?;
    Ok(format!(
        "d(relations) = 0, Leibniz on 30 pairs, d^2 = 0; exterior counts {} (110 = 105 + 5); {:.0}s",
        counts.join("/"),
        elapsed.as_secs_f64()
    ))
}

fn criterion_5(calc: &[Report]) -> Outcome {
    let r = calc
        .iter()
        .find(|r| r.variant == Variant::PoincareG00Zero.name())
        .ok_or("no g00zero calculus report")?;
    for name in [
        "reduction-commutation-stated",
        "reduction-exterior-stated",
        "reduction-cartan-maurer-stated",
        "reduction-derived",
    ] {
        need(r, name)?;
    }
    Ok("general calculus at g00 = 0 with the extra forms set to zero equals the g00 = 0 calculus".into())
}

fn criterion_6() -> Outcome {
    let lc = Metric::light_cone();
    for v in [Variant::PoincareG00Zero, Variant::Weyl] {
        let r = verify_brackets_suite(v, &lc).map_err(e)?;
        all_pass(&r)?;
        if !r.checks.iter().any(|c| c.name.starts_with("oracle ")) {
            return Err(format!("{}: no oracle checks", v.name()));
        }
    }
    let r = verify_brackets_suite(Variant::PoincareGeneral, &Metric::minkowski()).map_err(e)?;
    let mut unverifiable = 0;
    for c in &r.checks {
        if c.name.ends_with("lambda-dependent") {
            if c.status != Status::Unverifiable {
                return Err(format!("{} is {}", c.name, c.status.as_str()));
            }
            unverifiable += 1;
        } else if c.name.starts_with("bracket ") && c.status != Status::Pass {
            return Err(format!("{}: {}", c.name, c.residual));
        }
    }
    let surfaced: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| {
            if c.residual.is_empty() || c.residual == "0" {
                Err(format!("{} fails without a residual", c.name))
            } else {
                Ok(c.name.as_str())
            }
        })
        .collect::<Result<_, _>>()?;
    let mut msg = format!(
        "g00=0 and Weyl brackets exact and confirmed to order 3; general lambda-free brackets exact; {unverifiable} lambda-dependent families unverifiable"
    );
    if !surfaced.is_empty() {
        msg.push_str(&format!("; surfaced discrepancy: {}", surfaced.join(", ")));
    }
    Ok(msg)
}

fn criterion_7(random: &Metric) -> Outcome {
    let mut n = 0;
    for (v, m) in [
        (Variant::PoincareGeneral, Metric::minkowski()),
        (Variant::PoincareGeneral, random.clone()),
        (Variant::PoincareG00Zero, Metric::light_cone()),
        (Variant::Weyl, Metric::light_cone()),
    ] {
        let r = casimir_checks(v, &m).map_err(e)?;
        for k in 1..4 {
            need(&r, &format!("[M2,P[{k}]]"))?;
        }
        need(&r, "[M2,F]")?;
        let letters: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("[M2,M")).collect();
        if letters.len() < 6 {
            return Err(format!("{}: only {} Lorentz generators checked", v.name(), letters.len()));
        }
        all_pass(&r)?;
        n += r.passed();
    }
    Ok(format!("[M2, X] = 0 for P_k, F and all M, 4 variant/metric pairs, {n} checks"))
}

fn kappa(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kappa")).args(args).output().expect("spawn kappa");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).expect("write temp file");
    p.to_string_lossy().into_owned()
}

fn criterion_8(dir: &Path) -> Outcome {
    let lc = write(dir, "light-cone.json", &Metric::light_cone().to_json());
    let mink = write(dir, "minkowski.json", &Metric::minkowski().to_json());
    let bad = write(dir, "bad.json", "{\"g\": [[\"1\", \"0\"], [\"0\", \"1\"]]}");

    let (code, machine, err) = kappa(&["verify", "--variant", "poincare-g00zero", "--metric", &lc, "--suites", "qlie", "--format", "machine"]);
    if code != 0 {
        return Err(format!("all-pass run exited {code}: {err}"));
    }
    let saved = write(dir, "report.json", &machine);
    let (code, again, _) = kappa(&["report", "--format", "machine", &saved]);
    if code != 0 || again != machine {
        return Err("machine report does not round-trip byte-identically".into());
    }

    let mut doctored = Report::from_machine(&machine).map_err(e)?;
    doctored.checks[0].status = Status::Fail;
    doctored.checks[0].residual = "x[0]".into();
    let failing = write(dir, "failing.json", &doctored.to_machine());
    let (code, _, _) = kappa(&["report", "--format", "text", &failing]);
    if code != 1 {
        return Err(format!("report with a failing check exited {code}"));
    }

    let (code, _, err) = kappa(&["verify", "--variant", "poincare-general", "--metric", &bad]);
    if code != 2 || !err.contains("ConfigError") {
        return Err(format!("malformed metric exited {code}: {err}"));
    }
    let (code, _, err) = kappa(&["verify", "--variant", "weyl", "--metric", &mink]);
    if code != 2 || !err.contains("requires g00 = 0") {
        return Err(format!("weyl on Minkowski exited {code}: {err}"));
    }
    Ok("machine report round-trips byte-identically; exit codes 0/1/2; malformed metric gives ConfigError".into())
}

fn seed() -> u64 {
    std::env::var("KAPPA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or_else(|| {
        let t = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).unwrap_or_default();
        t.as_secs() % 10_000
    })
}

fn main() {
    let seed = seed();
    let random = Metric::random(seed);
    println!("random metric seed {seed}: {}", random.to_json().trim());

    let dir: PathBuf = std::env::temp_dir().join(format!("kappa-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");

    let t = Instant::now();
    let calc: Result<Vec<Report>, String> = group_cases()
        .into_iter()
        .map(|(v, m)| {
            let g = Group::for_variant(v, &m).map_err(e)?;
            calculus_consistency_suite(&g, v, 11).map_err(e)
        })
        .collect();
    let calc_time = t.elapsed();

    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion_1(&random))),
        (2, Box::new(|| criterion_2(&random))),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(calc.as_ref().map_err(Clone::clone)?, calc_time))),
        (5, Box::new(|| criterion_5(calc.as_ref().map_err(Clone::clone)?))),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(&random))),
        (8, Box::new(|| criterion_8(&dir))),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {n}: PASS  {msg}  [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL  {msg}  [{secs:.1}s]");
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    println!("{} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
