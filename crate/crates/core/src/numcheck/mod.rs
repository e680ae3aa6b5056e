//! Floating-point cross-checks of the exact pipeline: sampling of offset
//! points, residuals of computed equations, numeric generator counts and
//! plot output.

mod format;
mod plot;
mod suite;

use nalgebra::{DMatrix, Schur};
use rayon::prelude::*;
use thiserror::Error;

use crate::offset::{build_pq, OffsetError, OffsetProblem};
use crate::polycore::{MultiPoly, QPoly, UniPoly};

pub use format::fmt_g;
pub(crate) use plot::write_atomic;
pub use plot::{emit_plot, PlotFormat, PlotSummary};
pub use suite::{consistency_suite, random_parameters, Check, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Normalized residual below which a point is on the zero set.
    pub residual_accept: f64,
    /// Normalized residual above which a point is clearly off the zero set.
    pub reject_floor: f64,
    /// Root clustering distance in `count_generators`.
    pub cluster: f64,
    /// Minimum distance of a sampled `t` to a real root of `W` or `w`.
    pub guard: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual_accept: 1e-6,
            reject_floor: 1e-2,
            cluster: 1e-8,
            guard: 1e-6,
        }
    }
}

#[derive(Debug, Error)]
pub enum NumError {
    #[error(transparent)]
    Offset(#[from] OffsetError),
    #[error("empty sample range")]
    EmptyRange,
    #[error("no valid samples in range")]
    NoSamples,
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Exterior,
    Interior,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Exterior => 1.0,
            Branch::Interior => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Exterior => "ext",
            Branch::Interior => "int",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OffsetSample {
    pub t: f64,
    pub branch: Branch,
    pub point: (f64, f64),
    pub base_point: (f64, f64),
    pub unit_normal: (f64, f64),
}

#[derive(Clone, Debug, Default)]
pub struct Sampled {
    /// Two samples per accepted `t`, exterior first.
    pub samples: Vec<OffsetSample>,
    pub notices: Vec<String>,
}

/// Floating-point view of an offset problem.
pub struct Numeric {
    x: Vec<f64>,
    y: Vec<f64>,
    w: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    d: f64,
    excluded: Vec<f64>,
    p: UniPoly<MultiPoly>,
    q: UniPoly<MultiPoly>,
    pub tol: Tolerances,
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc.mul_add(t, a))
}

fn companion_eigenvalues(c: &[f64]) -> Option<Vec<(f64, f64)>> {
    let n = c.len() - 1;
    let lead = c[n];
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -c[n - 1 - j] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let schur = Schur::try_new(m, f64::EPSILON, 5000)?;
    Some(
        schur
            .complex_eigenvalues()
            .iter()
            .map(|z| (z.re, z.im))
            .collect(),
    )
}

/// Coefficients of `p(t + h)`.
fn taylor_shift(c: &[f64], h: f64) -> Vec<f64> {
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            a[j] = h.mul_add(a[j + 1], a[j]);
        }
    }
    a
}

/// Complex roots of a polynomial (coefficients low to high) as `(re, im)`.
pub fn roots(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|&a| a == 0.0) {
        c.pop();
    }
    // zero roots are split off exactly
    let zeros = c.iter().take_while(|&&a| a == 0.0).count();
    let c = &c[zeros..];
    let mut out = vec![(0.0, 0.0); zeros];
    if c.len() < 2 {
        return out;
    }
    if let Some(z) = companion_eigenvalues(c) {
        out.extend(z);
        return out;
    }
    // QR can stall on symmetric root configurations; shifting breaks them
    for h in [0.1234567, -0.2718281, 0.5772156] {
        if let Some(z) = companion_eigenvalues(&taylor_shift(c, h)) {
            out.extend(z.into_iter().map(|(re, im)| (re + h, im)));
            return out;
        }
    }
    out.extend(std::iter::repeat_n((f64::NAN, f64::NAN), c.len() - 1));
    out
}

fn real_roots(p: &QPoly) -> Vec<f64> {
    if p.is_constant() {
        return Vec::new();
    }
    roots(&p.squarefree_part().to_f64_coeffs())
        .into_iter()
        .filter(|&(re, im)| im.abs() <= 1e-7 * (1.0 + re.abs()))
        .map(|(re, _)| re)
        .collect()
}

impl Numeric {
    pub fn new(op: &OffsetProblem) -> Result<Self, NumError> {
        Self::with_tolerances(op, Tolerances::default())
    }

    pub fn with_tolerances(op: &OffsetProblem, tol: Tolerances) -> Result<Self, NumError> {
        let np = &op.curve.np;
        let h = &op.curve.hodograph;
        let pq = build_pq(op)?;
        let mut excluded = real_roots(&np.w);
        excluded.extend(real_roots(&h.w));
        Ok(Numeric {
            x: np.x.to_f64_coeffs(),
            y: np.y.to_f64_coeffs(),
            w: np.w.to_f64_coeffs(),
            u: h.u.to_f64_coeffs(),
            v: h.v.to_f64_coeffs(),
            d: num_traits::ToPrimitive::to_f64(&op.d).unwrap_or(f64::NAN),
            excluded,
            p: pq.p,
            q: pq.q,
            tol,
        })
    }

    /// Real parameter values excluded from sampling.
    pub fn excluded(&self) -> &[f64] {
        &self.excluded
    }

    pub fn curve_point(&self, t: f64) -> Option<(f64, f64)> {
        if self.near_excluded(t) {
            return None;
        }
        let w = horner(&self.w, t);
        Some((horner(&self.x, t) / w, horner(&self.y, t) / w))
    }

    fn near_excluded(&self, t: f64) -> bool {
        self.excluded.iter().any(|r| (t - r).abs() < self.tol.guard)
    }

    fn sample_at(&self, t: f64) -> Option<[OffsetSample; 2]> {
        let base = self.curve_point(t)?;
        let (u, v) = (horner(&self.u, t), horner(&self.v, t));
        let s = u.hypot(v);
        if s.is_nan() || s <= 0.0 || !s.is_finite() {
            return None;
        }
        let normal = (v / s, -u / s);
        let make = |branch: Branch| {
            let k = branch.sign() * self.d;
            OffsetSample {
                t,
                branch,
                point: (base.0 + k * normal.0, base.1 + k * normal.1),
                base_point: base,
                unit_normal: normal,
            }
        };
        Some([make(Branch::Exterior), make(Branch::Interior)])
    }

    pub fn sample(&self, ts: &[f64]) -> Sampled {
        let per_t: Vec<_> = ts.par_iter().map(|&t| (t, self.sample_at(t))).collect();
        let mut out = Sampled::default();
        for (t, s) in per_t {
            match s {
                Some(pair) => out.samples.extend(pair),
                None => out.notices.push(format!(
                    "t = {t} skipped: too close to an excluded parameter"
                )),
            }
        }
        out
    }

    fn specialized(&self, p: &UniPoly<MultiPoly>, x: f64, y: f64) -> Vec<f64> {
        p.coeffs().iter().map(|c| c.eval_f64(x, y)).collect()
    }

    /// Number of distinct complex `t` with `P(x, y, t) = Q(x, y, t) = 0`.
    pub fn count_generators(&self, point: (f64, f64)) -> GeneratorCount {
        let rp = roots(&self.specialized(&self.p, point.0, point.1));
        let rq = roots(&self.specialized(&self.q, point.0, point.1));
        let close = |a: (f64, f64), b: (f64, f64), tol: f64| {
            (a.0 - b.0).hypot(a.1 - b.1) <= tol * (1.0 + a.0.hypot(a.1))
        };
        // Common roots: roots of P matched by a root of Q. Accuracy of
        // eigenvalues limits this well above the clustering distance.
        let common: Vec<(f64, f64)> = rp
            .iter()
            .copied()
            .filter(|&a| rq.iter().any(|&b| close(a, b, 1e-5)))
            .collect();
        let cluster = |tol: f64| {
            let mut reps: Vec<(f64, f64)> = Vec::new();
            for &z in &common {
                if !reps.iter().any(|&r| close(r, z, tol)) {
                    reps.push(z);
                }
            }
            reps.len()
        };
        let tight = cluster(self.tol.cluster);
        let wide = cluster(1e-5);
        GeneratorCount {
            count: wide,
            widened: tight != wide,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorCount {
    pub count: usize,
    /// True when clustering at the default tolerance was ambiguous and a
    /// wider one was used.
    pub widened: bool,
}

pub fn sample_offset(op: &OffsetProblem, ts: &[f64]) -> Result<Sampled, NumError> {
    Ok(Numeric::new(op)?.sample(ts))
}

pub fn count_generators(op: &OffsetProblem, point: (f64, f64)) -> Result<GeneratorCount, NumError> {
    Ok(Numeric::new(op)?.count_generators(point))
}

/// `|f(p)| / (1 + max |coeff f|)`.
pub fn normalized_residual(f: &MultiPoly, point: (f64, f64)) -> f64 {
    f.eval_f64(point.0, point.1).abs() / (1.0 + f.max_abs_coeff_f64())
}

/// Maximum normalized residual of `f` over the samples.
pub fn residual_check(f: &MultiPoly, samples: &[OffsetSample]) -> f64 {
    samples
        .par_iter()
        .map(|s| normalized_residual(f, s.point))
        .reduce(|| 0.0, f64::max)
}

/// Fraction of samples at which the normalized residual of `f` is below `tol`.
pub fn vanishing_fraction(f: &MultiPoly, samples: &[OffsetSample], tol: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let hits = samples
        .par_iter()
        .filter(|s| normalized_residual(f, s.point) < tol)
        .count();
    hits as f64 / samples.len() as f64
}

/// `n` evenly spaced values in `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::RationalParametrization;
    use crate::polycore::rat;

    fn parabola() -> OffsetProblem {
        let rp = RationalParametrization::polynomial(
            QPoly::from_ints(&[0, 1]),
            QPoly::from_ints(&[0, 0, 1]),
        );
        OffsetProblem::new(&rp, rat(1)).unwrap()
    }

    #[test]
    fn parabola_vertex() {
        let s = sample_offset(&parabola(), &[0.0]).unwrap().samples;
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].base_point, (0.0, 0.0));
        assert!((s[0].point.1.abs() - 1.0).abs() < 1e-15 && s[0].point.0 == 0.0);
        assert_eq!(s[0].point.1, -s[1].point.1);
    }

    #[test]
    fn root_finding() {
        let mut r = roots(&[-6.0, 11.0, -6.0, 1.0]);
        r.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (z, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((z.0 - e).abs() < 1e-10 && z.1.abs() < 1e-10);
        }
        assert_eq!(roots(&[0.0, 0.0, 1.0]), vec![(0.0, 0.0), (0.0, 0.0)]);
        assert!(roots(&[3.0]).is_empty());
        let r = roots(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 4.0]);
        assert_eq!(r.len(), 6);
        for z in r {
            assert!((z.0.hypot(z.1) - 0.25f64.powf(1.0 / 6.0)).abs() < 1e-10);
        }
        let s = taylor_shift(&[1.0, 2.0, 3.0], 1.0);
        assert_eq!(s, vec![6.0, 8.0, 3.0]);
    }

    #[test]
    fn guard_skips_poles() {
        let w = QPoly::from_ints(&[0, 1]);
        let rp = RationalParametrization::new(
            QPoly::one(),
            w.clone(),
            QPoly::from_ints(&[0, 0, 1]),
            QPoly::one(),
        )
        .unwrap();
        let op = OffsetProblem::new(&rp, rat(1)).unwrap();
        let s = sample_offset(&op, &[0.0, 1.0]).unwrap();
        assert_eq!(s.samples.len(), 2);
        assert_eq!(s.notices.len(), 1);
    }

    #[test]
    fn constant_residual() {
        let s = sample_offset(&parabola(), &[0.5]).unwrap().samples;
        assert!((residual_check(&MultiPoly::one(), &s) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn parabola_generators() {
        let op = parabola();
        let num = Numeric::new(&op).unwrap();
        let s = num.sample(&[0.3]).samples;
        assert_eq!(num.count_generators(s[0].point).count, 1);
    }
}
