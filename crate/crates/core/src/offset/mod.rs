//! Offset pipeline: the content-free system `(P, Q)`, the resultant
//! `H = Res_t(P, Q)`, its split into offset and extraneous factors, and the
//! multiplicity structure expected from the tracing index.

mod extraneous;
mod membership;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::curve::{self, lift, CurveError, RationalParametrization, ValidatedCurve};
use crate::polycore::{
    content_wrt_t, resultant_t, yun_squarefree, MultiPoly, PolyError, QPoly, UniPoly,
};

pub use extraneous::extraneous_candidates;
use membership::{certificate_lines, degree_certificate, vanishes_on_offset, IntegerData};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OffsetError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the offset distance must be nonzero")]
    ZeroDistance,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl OffsetError {
    /// True for failures that indicate a bug or a violated premise rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            OffsetError::Inconsistent(_)
                | OffsetError::Curve(CurveError::Inconsistent(_))
                | OffsetError::Poly(_)
        )
    }
}

/// A validated curve with an offset distance. Only `d^2` enters the
/// computation, so `d` is stored as `|d|`.
#[derive(Clone, Debug)]
pub struct OffsetProblem {
    pub curve: ValidatedCurve,
    pub d: BigRational,
    pub d_squared: BigRational,
}

impl OffsetProblem {
    pub fn new(rp: &RationalParametrization, d: BigRational) -> Result<Self, OffsetError> {
        if d.is_zero() {
            return Err(OffsetError::ZeroDistance);
        }
        let curve = curve::validate_curve(rp)?;
        let d = d.abs();
        let d_squared = &d * &d;
        Ok(OffsetProblem {
            curve,
            d,
            d_squared,
        })
    }

    pub fn tracing_index(&self) -> u32 {
        self.curve.implicit.tracing_index
    }
}

/// `P`, `Q` with their `t`-contents removed.
#[derive(Clone, Debug)]
pub struct PQSystem {
    pub p: UniPoly<MultiPoly>,
    pub q: UniPoly<MultiPoly>,
    pub removed_content_p: QPoly,
    pub removed_content_q: QPoly,
}

/// `(P~, Q~)` before content removal.
pub fn raw_pq(op: &OffsetProblem) -> (UniPoly<MultiPoly>, UniPoly<MultiPoly>) {
    let np = &op.curve.np;
    let h = &op.curve.hodograph;
    let one = MultiPoly::one();
    let dx = &lift(&np.w, &MultiPoly::x()) - &lift(&np.x, &one);
    let dy = &lift(&np.w, &MultiPoly::y()) - &lift(&np.y, &one);
    let p = &(&lift(&h.u, &one) * &dx) + &(&lift(&h.v, &one) * &dy);
    let w2 = &np.w * &np.w;
    let q = &(&(&dx * &dx) + &(&dy * &dy)) - &lift(&w2.scale(&op.d_squared), &one);
    (p, q)
}

pub fn build_pq(op: &OffsetProblem) -> Result<PQSystem, OffsetError> {
    let (pt, qt) = raw_pq(op);
    if pt.is_zero() || qt.is_zero() {
        return Err(OffsetError::Inconsistent(
            "P or Q vanishes identically".into(),
        ));
    }
    let (cp, p) = content_wrt_t(&pt)?;
    let (cq, q) = content_wrt_t(&qt)?;
    Ok(PQSystem {
        p,
        q,
        removed_content_p: cp,
        removed_content_q: cq,
    })
}

/// `H = c * h` with `h` canonical; returns `(c, h)`.
pub fn offset_resultant(pq: &PQSystem) -> Result<(BigRational, MultiPoly), OffsetError> {
    let h = resultant_t(&pq.p, &pq.q)?;
    if h.is_zero() {
        return Err(OffsetError::Inconsistent(
            "Res_t(P, Q) vanishes identically; please report this input".into(),
        ));
    }
    Ok(h.canonical())
}

/// Exact test that `g` vanishes on a branch of the offset.
pub fn membership_test(op: &OffsetProblem, g: &MultiPoly) -> bool {
    vanishes_on_offset(&IntegerData::new(op), g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKind {
    OffsetSimple,
    OffsetSpecial,
    Extraneous,
    Unclassified,
}

impl FactorKind {
    pub fn is_offset(self) -> bool {
        matches!(self, FactorKind::OffsetSimple | FactorKind::OffsetSpecial)
    }

    pub fn label(self) -> &'static str {
        match self {
            FactorKind::OffsetSimple => "offset_simple",
            FactorKind::OffsetSpecial => "offset_special",
            FactorKind::Extraneous => "extraneous",
            FactorKind::Unclassified => "unclassified",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedFactor {
    pub poly: MultiPoly,
    pub multiplicity_in_h: u32,
    pub kind: FactorKind,
}

/// Result of splitting `H = constant * F * G * (unclassified parts)`.
#[derive(Clone, Debug)]
pub struct Split {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub factors: Vec<ClassifiedFactor>,
    pub constant: BigRational,
    /// False when some part could not be classified.
    pub verified: bool,
}

pub fn classify_and_split(
    h: &MultiPoly,
    op: &OffsetProblem,
    pq: &PQSystem,
) -> Result<Split, OffsetError> {
    let e = extraneous_candidates(op, pq)?;
    classify_with_candidates(h, op, &e)
}

/// Classification against a caller-supplied candidate product `e`. A wrong
/// `e` can only cost classifications (parts end up unclassified); it cannot
/// produce a wrong `F`.
pub fn classify_with_candidates(
    h: &MultiPoly,
    op: &OffsetProblem,
    e: &MultiPoly,
) -> Result<Split, OffsetError> {
    let data = IntegerData::new(op);
    let lines = certificate_lines(&data, 2);
    let n = op.tracing_index();
    let dec = yun_squarefree(h)?;
    let offset_kind = |m: u32| {
        if m == 2 * n {
            FactorKind::OffsetSpecial
        } else {
            FactorKind::OffsetSimple
        }
    };
    let is_offset =
        |g: &MultiPoly, m: u32| vanishes_on_offset(&data, g) && degree_certificate(&lines, g, m);

    let mut factors = Vec::new();
    for (p, m) in &dec.parts {
        let m = *m;
        let ge = if e.is_constant() {
            MultiPoly::one()
        } else {
            p.gcd(e)
        };
        let go = p.exact_div(&ge).expect("gcd divides").normalized();
        let offset_ok = go.is_constant() || is_offset(&go, m);
        let extraneous_ok = ge.is_constant() || !vanishes_on_offset(&data, &ge);
        if offset_ok && extraneous_ok {
            if !go.is_constant() {
                factors.push(ClassifiedFactor {
                    poly: go,
                    multiplicity_in_h: m,
                    kind: offset_kind(m),
                });
            }
            if !ge.is_constant() {
                factors.push(ClassifiedFactor {
                    poly: ge,
                    multiplicity_in_h: m,
                    kind: FactorKind::Extraneous,
                });
            }
        } else if !ge.is_constant() && is_offset(p, m) {
            factors.push(ClassifiedFactor {
                poly: p.clone(),
                multiplicity_in_h: m,
                kind: offset_kind(m),
            });
        } else {
            factors.push(ClassifiedFactor {
                poly: p.clone(),
                multiplicity_in_h: m,
                kind: FactorKind::Unclassified,
            });
        }
    }

    let product = |pred: &dyn Fn(FactorKind) -> bool| {
        factors
            .iter()
            .filter(|f| pred(f.kind))
            .fold(MultiPoly::one(), |acc, f| {
                &acc * &f.poly.pow(f.multiplicity_in_h)
            })
    };
    let f = product(&|k| k.is_offset());
    let g = product(&|k| k == FactorKind::Extraneous);
    let u = product(&|k| k == FactorKind::Unclassified);
    let all = &(&f * &g) * &u;
    let constant = match h.exact_div(&all).and_then(|q| q.constant_value()) {
        Some(c) if !c.is_zero() => c,
        _ => {
            return Err(OffsetError::Inconsistent(
                "H is not a constant multiple of F * G".into(),
            ))
        }
    };
    let verified = factors.iter().all(|f| f.kind != FactorKind::Unclassified);
    Ok(Split {
        f,
        g,
        factors,
        constant,
        verified,
    })
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub h: MultiPoly,
    pub h_constant: BigRational,
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub factors: Vec<ClassifiedFactor>,
    pub tracing_index: u32,
    pub has_special: bool,
    pub exponent_pattern: Vec<u32>,
    pub f1_part: MultiPoly,
    pub f2_part: MultiPoly,
    pub verdict_squarefree: bool,
    pub verified: bool,
    pub removed_content_p: QPoly,
    pub removed_content_q: QPoly,
    pub split_constant: BigRational,
    pub diagnostics: Vec<String>,
    /// Offset multiplicities outside `{n, 2n}`, if observed.
    pub theorem_violation: Option<String>,
    /// Stage name to wall-clock seconds.
    pub timings: BTreeMap<String, f64>,
}

impl StructureReport {
    pub fn is_offset(&self) -> bool {
        self.has_special
    }

    pub fn special_equation(&self) -> Option<&MultiPoly> {
        self.has_special.then_some(&self.f2_part)
    }

    pub fn has_unclassified(&self) -> bool {
        !self.verified
    }
}

pub fn structure_report(op: &OffsetProblem) -> Result<StructureReport, OffsetError> {
    structure_report_with(op, None)
}

/// Full pipeline; `e_override` replaces the extraneous candidates (testing
/// hook for the classification safety net).
pub fn structure_report_with(
    op: &OffsetProblem,
    e_override: Option<&MultiPoly>,
) -> Result<StructureReport, OffsetError> {
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let pq = build_pq(op)?;
    timings.insert("build_pq".to_string(), start.elapsed().as_secs_f64());

    let (res, ti) = rayon::join(
        || {
            let t = Instant::now();
            offset_resultant(&pq).map(|r| (r, t.elapsed().as_secs_f64()))
        },
        || {
            let t = Instant::now();
            curve::tracing_index(&op.curve.rp).map(|n| (n, t.elapsed().as_secs_f64()))
        },
    );
    let ((h_constant, h), t_res) = res?;
    let (n, t_ti) = ti?;
    timings.insert("resultant".to_string(), t_res);
    timings.insert("tracing_index".to_string(), t_ti);

    let t = Instant::now();
    let split = match e_override {
        Some(e) => classify_with_candidates(&h, op, e)?,
        None => classify_and_split(&h, op, &pq)?,
    };
    timings.insert("classify".to_string(), t.elapsed().as_secs_f64());

    let mut diagnostics = Vec::new();
    let offset_mults: BTreeSet<u32> = split
        .factors
        .iter()
        .filter(|f| f.kind.is_offset())
        .map(|f| f.multiplicity_in_h)
        .collect();
    let exponent_pattern: Vec<u32> = offset_mults.iter().copied().collect();
    let has_special = offset_mults.contains(&(2 * n));
    let stray: Vec<u32> = offset_mults
        .iter()
        .copied()
        .filter(|&m| m != n && m != 2 * n)
        .collect();
    let theorem_violation = if !stray.is_empty() || !offset_mults.contains(&n) {
        Some(format!(
            "offset multiplicities {exponent_pattern:?} do not match {{n, 2n}} with n = {n}"
        ))
    } else {
        None
    };
    if let Some(v) = &theorem_violation {
        diagnostics.push(format!("theorem violation: {v}"));
    }
    for f in split
        .factors
        .iter()
        .filter(|f| f.kind == FactorKind::Unclassified)
    {
        diagnostics.push(format!(
            "unclassified squarefree part of multiplicity {}: {}",
            f.multiplicity_in_h, f.poly
        ));
    }
    let part = |m: u32| {
        split
            .factors
            .iter()
            .filter(|f| f.kind.is_offset() && f.multiplicity_in_h == m)
            .fold(MultiPoly::one(), |acc, f| &acc * &f.poly)
    };
    timings.insert("total".to_string(), start.elapsed().as_secs_f64());

    Ok(StructureReport {
        h,
        h_constant,
        f1_part: part(n),
        f2_part: part(2 * n),
        f: split.f,
        g: split.g,
        factors: split.factors,
        tracing_index: n,
        has_special,
        exponent_pattern,
        verdict_squarefree: n == 1 && !has_special,
        verified: split.verified,
        removed_content_p: pq.removed_content_p,
        removed_content_q: pq.removed_content_q,
        split_constant: split.constant,
        diagnostics,
        theorem_violation,
        timings,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsOffset {
    pub is_offset: bool,
    pub special_equation: Option<MultiPoly>,
}

pub fn is_offset_test(op: &OffsetProblem) -> Result<IsOffset, OffsetError> {
    let r = structure_report(op)?;
    Ok(IsOffset {
        is_offset: r.is_offset(),
        special_equation: r.special_equation().cloned(),
    })
}

/// Outcome of comparing `Res_t(P(x, y0, t), Q(x, y0, t))` with `H(x, y0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializationCheck {
    pub y0: BigRational,
    /// False when a leading coefficient in `t` vanishes at `y0`.
    pub admissible: bool,
    pub resultant_matches: bool,
    pub multiplicities_match: bool,
    pub notes: Vec<String>,
}

impl SpecializationCheck {
    pub fn consistent(&self) -> bool {
        self.admissible && self.resultant_matches && self.multiplicities_match
    }
}

fn specialize(p: &UniPoly<MultiPoly>, y0: &BigRational) -> UniPoly<MultiPoly> {
    UniPoly::new(p.coeffs().iter().map(|c| c.subs_y(y0)).collect())
}

pub fn verify_specialization(
    op: &OffsetProblem,
    y0: &BigRational,
    report: &StructureReport,
) -> Result<SpecializationCheck, OffsetError> {
    let pq = build_pq(op)?;
    let ps = specialize(&pq.p, y0);
    let qs = specialize(&pq.q, y0);
    let mut out = SpecializationCheck {
        y0: y0.clone(),
        admissible: true,
        resultant_matches: false,
        multiplicities_match: false,
        notes: Vec::new(),
    };
    if ps.degree() != pq.p.degree() || qs.degree() != pq.q.degree() {
        out.admissible = false;
        out.notes
            .push("leading coefficient in t vanishes at y0; choose another y0".into());
        return Ok(out);
    }
    let direct = resultant_t(&ps, &qs)?;
    let hs = report.h.subs_y(y0);
    out.resultant_matches = !direct.is_zero() && direct.normalized() == hs.normalized();
    if !out.resultant_matches {
        out.notes
            .push("specialized resultant differs from H(x, y0)".into());
    }
    if hs.is_zero() {
        out.notes.push("H vanishes identically at y0".into());
        return Ok(out);
    }
    // Each classified part should contribute roots of exactly its multiplicity.
    let dec = yun_squarefree(&hs)?;
    let mut ok = true;
    for f in &report.factors {
        let fs = f.poly.subs_y(y0);
        if fs.is_constant() {
            continue;
        }
        for (part, k) in &dec.parts {
            if *k != f.multiplicity_in_h && !part.gcd(&fs).is_constant() {
                ok = false;
                out.notes.push(format!(
                    "a root of a multiplicity-{} factor appears with multiplicity {k} at y0 (non-generic y0?)",
                    f.multiplicity_in_h
                ));
            }
        }
    }
    out.multiplicities_match = ok;
    Ok(out)
}
