//! Acceptance checks: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Exits nonzero if any criterion
//! fails.

mod common;

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;
use serde_json::Value;

use common::props::*;
use common::{fixture, fixture_path, mp, problem, seeded, FIXTURES};
use offsetal::curve::{self, RationalParametrization};
use offsetal::numcheck::{consistency_suite, SuiteConfig, Tolerances};
use offsetal::offset::{
    membership_test, structure_report, FactorKind, OffsetProblem, StructureReport,
};
use offsetal::polycore::{MultiPoly, QPoly};

const CARDIOID: &str = "x^4 + 2*x^2*y^2 + y^4 + 8*x^2*y + 8*y^3 - 16*x^2";
const CARDIOID_F: &str = "x^8+4*x^6*y^2+6*x^4*y^4+4*x^2*y^6+y^8+16*x^6*y+48*x^4*y^3+48*x^2*y^5+16*y^7-35*x^6-9*x^4*y^2+87*x^2*y^4+61*y^6-292*x^4*y-328*x^2*y^3-36*y^5+211*x^4-234*x^2*y^2-189*y^4-40*x^2*y-232*y^3-429*x^2+131*y^2+316*y+252";
const OFFSET_F1: &str = "x^8+4*x^6*y^2+6*x^4*y^4+4*x^2*y^6+y^8+16*x^6*y+48*x^4*y^3+48*x^2*y^5+16*y^7-44*x^6-36*x^4*y^2+60*x^2*y^4+52*y^6-400*x^4*y-544*x^2*y^3-144*y^5+112*x^4-864*x^2*y^2-720*y^4+128*x^2*y-640*y^3-768*x^2+2048*y^2+4864*y+3840";
const PARABOLA_F1: &str = "x^6+x^4*y^2-10*x^4*y-8*x^2*y^3-431*x^4-256*x^2*y^2+16*y^4+280*x^2*y-1184*y^3+59328*x^2+19600*y^2+170496*y-3154176";

type Verdict = Result<String, String>;
type Criterion = fn() -> Verdict;

fn canon(s: &str) -> MultiPoly {
    mp(s).normalized()
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_offsetal"))
        .args(args)
        .output()
        .expect("run offsetal")
}

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

/// Runs `offset-eq --json` and returns the exit code and the parsed report.
fn offset_eq(name: &str, d: &str) -> Result<(i32, Value), String> {
    let out = bin(&["offset-eq", "-d", d, "-i", &fx(name), "--json"]);
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "exit {code}, unparsable output ({e}): {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok((code, v))
}

fn field(v: &Value, key: &str) -> Result<MultiPoly, String> {
    v[key]
        .as_str()
        .map(canon)
        .ok_or_else(|| format!("missing {key}"))
}

fn expect(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn pattern(v: &Value) -> Vec<u64> {
    v["exponent_pattern"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    expect(
        elapsed < budget,
        format!(
            "took {:.1} s, budget {} s",
            elapsed.as_secs_f64(),
            budget.as_secs()
        ),
    )
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let (code, v) = offset_eq("cardioid.txt", "1")?;
    let elapsed = start.elapsed();
    expect(code == 0, format!("exit {code}"))?;
    expect(
        field(&v, "F")? == canon(CARDIOID_F),
        "F differs from the degree-8 polynomial",
    )?;
    expect(field(&v, "G")? == canon("x^2 + y^2 + 4*y + 4"), "G differs")?;
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "F (24 terms) and G exact, exit 0, {:.2} s < 60 s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let (code, v) = offset_eq("cardioid_offset.txt", "1")?;
    let elapsed = start.elapsed();
    expect(code == 0, format!("exit {code}"))?;
    expect(
        pattern(&v) == [1, 2],
        format!("exponent pattern {:?}", pattern(&v)),
    )?;
    expect(
        field(&v, "f2_part")? == canon(CARDIOID),
        "f2 part is not the cardioid quartic",
    )?;
    expect(field(&v, "f1_part")? == canon(OFFSET_F1), "f1 part differs")?;
    expect(
        field(&v, "G")? == canon("x^2 + y^2 + 4*y + 4").pow(2).normalized(),
        "G differs",
    )?;
    expect(v["is_offset"] == true, "is_offset is not true")?;
    within(elapsed, Duration::from_secs(15 * 60))?;
    Ok(format!(
        "pattern [1, 2], f1 and f2 exact, G = (x^2+y^2+4y+4)^2, is_offset, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let (code, v) = offset_eq("parabola_offset.txt", "6")?;
    let elapsed = start.elapsed();
    expect(code == 0, format!("exit {code}"))?;
    expect(
        v["tracing_index"] == 2,
        format!("tracing index {}", v["tracing_index"]),
    )?;
    expect(
        pattern(&v) == [2, 4],
        format!("exponent pattern {:?}", pattern(&v)),
    )?;
    expect(
        field(&v, "f2_part")? == canon("x^2 - 4*y"),
        "f2 part is not x^2 - 4y",
    )?;
    expect(
        field(&v, "f1_part")? == canon(PARABOLA_F1),
        "f1 part differs",
    )?;
    expect(
        field(&v, "G")? == canon("x^2 + y^2 - 2*y + 1").pow(4).normalized(),
        "G differs",
    )?;
    within(elapsed, Duration::from_secs(15 * 60))?;
    Ok(format!(
        "n = 2, pattern [2, 4], f1 and f2 exact, G = (x^2+y^2-2y+1)^4, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn report(rp: &RationalParametrization) -> Result<StructureReport, String> {
    let op =
        OffsetProblem::new(rp, BigRational::from_integer(1.into())).map_err(|e| e.to_string())?;
    structure_report(&op).map_err(|e| e.to_string())
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let proper = RationalParametrization::polynomial(
        QPoly::from_ints(&[0, 1]),
        QPoly::from_ints(&[0, 0, 1]),
    );
    let doubled = RationalParametrization::polynomial(
        QPoly::from_ints(&[0, 0, 1]),
        QPoly::from_ints(&[0, 0, 0, 0, 1]),
    );
    let (a, b) = (report(&proper)?, report(&doubled)?);
    expect(
        b.f == a.f.pow(2).normalized(),
        "parabola: F(t^2, t^4) != F(t, t^2)^2",
    )?;

    let cardioid = fixture("cardioid.txt");
    let squared = curve::reparametrize(&cardioid, &QPoly::from_ints(&[0, 0, 1]), &QPoly::one())
        .map_err(|e| e.to_string())?;
    let r = report(&squared)?;
    expect(
        r.exponent_pattern == [2],
        format!("cardioid t <- s^2: pattern {:?}", r.exponent_pattern),
    )?;
    expect(
        r.f1_part == canon(CARDIOID_F),
        "cardioid t <- s^2: f1 part differs",
    )?;

    let offset = fixture("cardioid_offset.txt");
    let cubic = curve::reparametrize(&offset, &QPoly::from_ints(&[5, 3, -2, 1]), &QPoly::one())
        .map_err(|e| e.to_string())?;
    let r = report(&cubic)?;
    expect(
        r.exponent_pattern == [3, 6],
        format!("cubic: pattern {:?}", r.exponent_pattern),
    )?;
    expect(
        r.f1_part == canon(OFFSET_F1) && r.f2_part == canon(CARDIOID),
        "cubic: f1 or f2 part differs",
    )?;
    expect(
        r.f == (&canon(OFFSET_F1).pow(3) * &canon(CARDIOID).pow(6)).normalized(),
        "cubic: F != f1^3 f2^6",
    )?;
    Ok(format!(
        "exact: parabola F' = F^2; cardioid t <- s^2 pattern [2]; cubic reparametrization F = f1^3 f2^6; {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(seeded(cases))
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn fixture_checks(name: &str, d: i64) -> Result<(), String> {
    let op = problem(name, d);
    let r = structure_report(&op).map_err(|e| format!("{name}: {e}"))?;
    expect(
        (&r.f * &r.g).scale(&r.split_constant) == r.h && r.verified,
        format!("{name}: H != c F G"),
    )?;
    for f in &r.factors {
        expect(
            f.kind != FactorKind::Unclassified,
            format!("{name}: unclassified factor"),
        )?;
        expect(
            membership_test(&op, &f.poly) == f.kind.is_offset(),
            format!("{name}: duality fails on {}", f.poly),
        )?;
    }
    let checks =
        consistency_suite(&op, &r, &SuiteConfig::default()).map_err(|e| format!("{name}: {e}"))?;
    for c in checks {
        expect(c.passed, format!("{name}: {} ({})", c.name, c.detail))?;
    }
    Ok(())
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    property("Yun", 200, yun_input(), |(f, c)| {
        yun_reconstructs_and_is_coprime(&f, c)
    })?;
    property("resultant", 100, resultant_pair(), |(a, b)| {
        resultant_matches_sylvester(&a, &b)
    })?;
    property("tracing index", 100, traced_curve(), |(x, y, w, i)| {
        tracing_index_methods_agree(&x, &y, &w, &i)
    })?;
    property("Mobius", 100, mobius_input(), |(x, y, m)| {
        tracing_index_is_mobius_invariant(&x, &y, m)
    })?;
    for (name, d) in FIXTURES {
        fixture_checks(name, d)?;
    }
    let tol = Tolerances::default();
    let cfg = SuiteConfig::default();
    Ok(format!(
        "properties 200/100/100/100 cases; {} fixtures: H = cFG, duality, residual < {:e} on {} samples, G > {:e}, \
         generator counts on {} points, {} specializations; seed {}; {:.1} s",
        FIXTURES.len(),
        tol.residual_accept,
        cfg.samples,
        tol.reject_floor,
        cfg.generator_points,
        5,
        offsetal::rng::base_seed(),
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_6() -> Verdict {
    let code = |args: &[&str]| bin(args).status.code().unwrap_or(-1);
    let cardioid = fx("cardioid.txt");
    for name in ["line.txt", "circle.txt"] {
        let c = code(&["offset-eq", "-d", "1", "-i", &fx(name)]);
        expect(c == 2, format!("{name}: exit {c}"))?;
    }
    let c = code(&["offset-eq", "-d", "1.5e0", "-i", &cardioid]);
    expect(c == 2, format!("d = 1.5e0: exit {c}"))?;

    let true_f = canon(CARDIOID_F);
    for bad in ["x - 7", "1", CARDIOID_F] {
        let out = bin(&[
            "offset-eq",
            "-d",
            "1",
            "-i",
            &cardioid,
            "--json",
            "--extraneous-override",
            bad,
        ]);
        let c = out.status.code().unwrap_or(-1);
        expect(c == 3, format!("corrupted E = {bad:.12}: exit {c}"))?;
        let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let unclassified = v["factors"]
            .as_array()
            .is_some_and(|a| a.iter().any(|f| f["kind"] == "unclassified"));
        expect(unclassified, "no unclassified factor reported")?;
        let f = field(&v, "F")?;
        expect(
            f.is_constant() || f == true_f,
            format!("wrong F reported: {f}"),
        )?;
    }
    Ok(
        "line, circle, 1.5e0 exit 2; three corrupted E give unclassified and exit 3, F never wrong"
            .into(),
    )
}

fn main() {
    let criteria: [(&str, Criterion); 6] = [
        ("1 cardioid offset", criterion_1),
        ("2 offset of offset", criterion_2),
        ("3 parabola offset, tracing index 2", criterion_3),
        (
            "4 multiplicity scaling under reparametrization",
            criterion_4,
        ),
        ("5 property suites", criterion_5),
        ("6 negative controls", criterion_6),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
