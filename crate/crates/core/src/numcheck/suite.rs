//! Numeric consistency checks of a finished structure report.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::offset::{
    membership_test, verify_specialization, ClassifiedFactor, FactorKind, OffsetProblem,
    StructureReport,
};
use crate::rng;

use super::{
    normalized_residual, residual_check, vanishing_fraction, NumError, Numeric, OffsetSample,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub samples: usize,
    pub range: (f64, f64),
    pub generator_points: usize,
    /// Specialization values; empty means five seeded random ones.
    pub y0s: Vec<BigRational>,
    /// Samples with a coordinate beyond this bound are not used: near poles
    /// the rounding of the point itself dominates any residual.
    pub window: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 200,
            range: (-10.0, 10.0),
            generator_points: 20,
            y0s: Vec::new(),
            window: 100.0,
        }
    }
}

/// Seeded random parameters in `range`, sorted.
pub fn random_parameters(n: usize, range: (f64, f64)) -> Vec<f64> {
    let mut r = rng::stream("samples");
    let mut ts: Vec<f64> = (0..n).map(|_| r.gen_range(range.0..range.1)).collect();
    ts.sort_by(f64::total_cmp);
    ts
}

/// Samples for `cfg.samples` parameters whose two offset points lie in the
/// window.
fn windowed_samples(num: &Numeric, cfg: &SuiteConfig) -> (Vec<OffsetSample>, usize) {
    let inside = |s: &OffsetSample| s.point.0.abs() <= cfg.window && s.point.1.abs() <= cfg.window;
    let mut r = rng::stream("samples");
    let mut out = Vec::new();
    let mut dropped = 0;
    for _ in 0..50 {
        let want = cfg.samples - out.len() / 2;
        if want == 0 {
            break;
        }
        let ts: Vec<f64> = (0..want)
            .map(|_| r.gen_range(cfg.range.0..cfg.range.1))
            .collect();
        for pair in num.sample(&ts).samples.chunks(2) {
            if pair.iter().all(inside) {
                out.extend_from_slice(pair);
            } else {
                dropped += 1;
            }
        }
    }
    out.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.branch.cmp(&b.branch)));
    (out, dropped)
}

fn random_y0s(n: usize) -> Vec<BigRational> {
    let mut r = rng::stream("specialization");
    (0..n)
        .map(|_| {
            BigRational::new(
                BigInt::from(r.gen_range(-200..=200i64)),
                BigInt::from(r.gen_range(1..=29i64)),
            )
        })
        .collect()
}

fn offset_factors(report: &StructureReport) -> Vec<&ClassifiedFactor> {
    report
        .factors
        .iter()
        .filter(|f| f.kind.is_offset())
        .collect()
}

pub fn consistency_suite(
    op: &OffsetProblem,
    report: &StructureReport,
    cfg: &SuiteConfig,
) -> Result<Vec<Check>, NumError> {
    let num = Numeric::new(op)?;
    let (samples, dropped) = windowed_samples(&num, cfg);
    let samples = &samples;
    if samples.is_empty() {
        return Err(NumError::NoSamples);
    }
    let tol = num.tol;
    let mut out = Vec::new();

    let d = num.d;
    let worst_distance = samples
        .iter()
        .map(|s| {
            let dist = (s.point.0 - s.base_point.0).hypot(s.point.1 - s.base_point.1);
            (dist - d).abs() / d
        })
        .fold(0.0, f64::max);
    out.push(Check::new(
        "distance",
        worst_distance <= 1e-9,
        format!(
            "{} samples ({dropped} parameters outside the window), max relative distance error {worst_distance:.3e}",
            samples.len()
        ),
    ));

    let offsets = offset_factors(report);
    let on_offset = |s: &OffsetSample| {
        offsets
            .iter()
            .map(|f| normalized_residual(&f.poly, s.point))
            .fold(f64::INFINITY, f64::min)
    };
    let worst = samples.iter().map(on_offset).fold(0.0, f64::max);
    out.push(Check::new(
        "offset residual",
        worst < tol.residual_accept,
        format!(
            "max residual of the nearest offset factor {worst:.3e}; residual of F {:.3e}",
            residual_check(&report.f, samples)
        ),
    ));

    let mut duality = Vec::new();
    let mut duality_ok = true;
    for f in &report.factors {
        if f.kind == FactorKind::Unclassified {
            continue;
        }
        let exact = membership_test(op, &f.poly);
        let frac = vanishing_fraction(&f.poly, samples, tol.residual_accept);
        let numeric = frac > 0.05;
        let ok = exact == f.kind.is_offset() && numeric == exact;
        duality_ok &= ok;
        duality.push(format!(
            "{} (x{}): exact {exact}, on {:.0}% of samples",
            f.kind.label(),
            f.multiplicity_in_h,
            100.0 * frac
        ));
    }
    out.push(Check::new(
        "membership duality",
        duality_ok,
        duality.join("; "),
    ));

    if !report.g.is_constant() {
        let away = 1.0 - vanishing_fraction(&report.g, samples, tol.reject_floor);
        out.push(Check::new(
            "extraneous off the offset",
            away >= 0.9,
            format!(
                "G above {:e} on {:.1}% of samples",
                tol.reject_floor,
                100.0 * away
            ),
        ));
    }

    let mut gen_ok = true;
    let mut gen = Vec::new();
    for f in &offsets {
        let generic: Vec<&OffsetSample> = samples
            .iter()
            .filter(|s| normalized_residual(&f.poly, s.point) < tol.residual_accept)
            .filter(|s| {
                report
                    .factors
                    .iter()
                    .filter(|o| o.poly != f.poly)
                    .all(|o| normalized_residual(&o.poly, s.point) > tol.reject_floor)
            })
            .take(cfg.generator_points)
            .collect();
        let counts: Vec<usize> = generic
            .iter()
            .map(|s| num.count_generators(s.point).count)
            .collect();
        let expected = f.multiplicity_in_h as usize;
        let good = counts.iter().filter(|&&c| c == expected).count();
        let ok = generic.len() >= cfg.generator_points && good == counts.len();
        gen_ok &= ok;
        gen.push(format!(
            "multiplicity {expected}: {good}/{} points with {expected} generators",
            counts.len()
        ));
    }
    out.push(Check::new("generator counts", gen_ok, gen.join("; ")));

    let y0s = if cfg.y0s.is_empty() {
        random_y0s(5)
    } else {
        cfg.y0s.clone()
    };
    let mut spec_ok = true;
    let mut spec = Vec::new();
    for y0 in &y0s {
        let c = verify_specialization(op, y0, report)?;
        if !c.admissible {
            spec.push(format!("y0 = {y0} not admissible"));
            continue;
        }
        spec_ok &= c.consistent();
        spec.push(format!(
            "y0 = {y0}: {}",
            if c.consistent() { "ok" } else { "mismatch" }
        ));
    }
    out.push(Check::new("specialization", spec_ok, spec.join("; ")));
    Ok(out)
}
