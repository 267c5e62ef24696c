//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Finite intervals are integrated directly with the open G7K15 pair, so
//! integrable endpoint singularities such as `p^(d-1)` with `d < 2` are never
//! sampled at the singular point. Semi-infinite domains are mapped onto a
//! finite one first:
//!
//! * [`DecayHint::Power`]: `x = a + t / (1 - t)`, `t ∈ [0, 1)`.
//! * [`DecayHint::Exponential`] / [`DecayHint::Gaussian`]: the
//!   double-exponential map `x = a + exp(u - exp(-u))`, truncated where the
//!   transformed integrand has decayed below double precision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 10_000;

/// How the integrand decays on a semi-infinite domain; selects the
/// variable transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayHint {
    Power,
    Exponential,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite { a: f64, b: f64 },
    SemiInfinite { a: f64, decay: DecayHint },
}

pub struct QuadratureRequest<'a> {
    pub integrand: &'a dyn Fn(f64) -> f64,
    pub domain: Domain,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl<'a> QuadratureRequest<'a> {
    pub fn finite(integrand: &'a dyn Fn(f64) -> f64, a: f64, b: f64) -> Self {
        Self::new(integrand, Domain::Finite { a, b })
    }

    pub fn semi_infinite(integrand: &'a dyn Fn(f64) -> f64, a: f64, decay: DecayHint) -> Self {
        Self::new(integrand, Domain::SemiInfinite { a, decay })
    }

    pub fn new(integrand: &'a dyn Fn(f64) -> f64, domain: Domain) -> Self {
        Self {
            integrand,
            domain,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }

    pub fn tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_est: f64,
    pub subdivisions_used: usize,
    pub converged: bool,
}

/// Integrates the request, failing with [`Error::NonConvergence`] when the
/// subdivision budget runs out before the error estimate meets
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate(req: &QuadratureRequest<'_>) -> Result<QuadratureResult> {
    if !(req.rel_tol > 0.0 && req.abs_tol > 0.0) {
        return Err(Error::Domain("quadrature tolerances must be positive".into()));
    }
    let f = req.integrand;
    match req.domain {
        Domain::Finite { a, b } => {
            if !(a < b) {
                if a == b {
                    return Ok(QuadratureResult {
                        value: 0.0,
                        err_est: 0.0,
                        subdivisions_used: 0,
                        converged: true,
                    });
                }
                return Err(Error::Domain(format!("finite domain needs a < b, got [{a}, {b}]")));
            }
            adaptive(f, a, b, req)
        }
        Domain::SemiInfinite { a, decay: DecayHint::Power } => {
            let g = move |t: f64| {
                let s = 1.0 - t;
                let x = a + t / s;
                let v = f(x);
                if v == 0.0 {
                    0.0
                } else {
                    v / (s * s)
                }
            };
            adaptive(&g, 0.0, 1.0, req)
        }
        Domain::SemiInfinite { a, decay: DecayHint::Exponential | DecayHint::Gaussian } => {
            let g = move |u: f64| {
                let e = (u - (-u).exp()).exp();
                if e == 0.0 || !e.is_finite() {
                    return 0.0;
                }
                let x = a + e;
                if x == a {
                    return 0.0;
                }
                let v = f(x);
                if v == 0.0 {
                    0.0
                } else {
                    v * e * (1.0 + (-u).exp())
                }
            };
            let (lo, hi) = de_window(&g);
            adaptive(&g, lo, hi, req)
        }
    }
}

/// Finds a finite `u` window outside of which the double-exponentially
/// transformed integrand is negligible.
fn de_window(g: &dyn Fn(f64) -> f64) -> (f64, f64) {
    const LO: f64 = -8.0;
    const STEP: f64 = 0.25;
    const NEGLIGIBLE: f64 = 1e-25;
    let mut gmax = 0.0_f64;
    let mut u = LO;
    while u <= 0.0 {
        let v = g(u).abs();
        if v.is_finite() {
            gmax = gmax.max(v);
        }
        u += STEP;
    }
    let mut quiet = 0;
    let mut hi = 0.0;
    u = 0.0;
    while u < 700.0 {
        let v = g(u);
        if !v.is_finite() {
            hi = u - STEP;
            break;
        }
        let v = v.abs();
        gmax = gmax.max(v);
        if v <= NEGLIGIBLE * gmax {
            quiet += 1;
            if quiet >= 3 && u > 1.0 {
                hi = u;
                break;
            }
        } else {
            quiet = 0;
        }
        hi = u;
        u += STEP;
    }
    (LO, hi.max(1.0))
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, req: &QuadratureRequest<'_>) -> Result<QuadratureResult> {
    let first = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1usize;
    let tolerance = |value: f64| req.abs_tol.max(req.rel_tol * value.abs());

    loop {
        let (value, err) = totals(&heap);
        if !value.is_finite() || !err.is_finite() {
            return Err(Error::non_convergence(
                "quadrature (non-finite integrand values)",
                value,
                err,
            ));
        }
        if err <= tolerance(value) {
            return Ok(QuadratureResult {
                value,
                err_est: err,
                subdivisions_used: subdivisions,
                converged: true,
            });
        }
        if subdivisions >= req.max_subdivisions {
            return Err(Error::non_convergence("quadrature (subdivision budget)", value, err));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) || (worst.b - worst.a) <= 1e3 * f64::EPSILON * worst.a.abs().max(worst.b.abs()) {
            heap.push(worst);
            return Err(Error::non_convergence("quadrature (interval below resolution)", value, err));
        }
        heap.push(gk15(f, worst.a, mid));
        heap.push(gk15(f, mid, worst.b));
        subdivisions += 1;
    }
}

fn totals(heap: &BinaryHeap<Segment>) -> (f64, f64) {
    // Sorted by position so the sum does not depend on heap layout.
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut err = 0.0;
    for s in segs {
        let t = value + s.value;
        if value.abs() >= s.value.abs() {
            comp += (value - t) + s.value;
        } else {
            comp += (s.value - t) + value;
        }
        value = t;
        err += s.err;
    }
    (value + comp, err)
}

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Segment { a, b, value, err }
}

/// Integrates `f` over `[a, b]` split at the given interior points, summing
/// values and error estimates.
pub fn integrate_pieces(
    f: &dyn Fn(f64) -> f64,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadratureResult> {
    let mut value = 0.0;
    let mut err = 0.0;
    let mut used = 0;
    for w in points.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let r = integrate(&QuadratureRequest::finite(f, w[0], w[1]).tolerances(rel_tol, abs_tol))?;
        value += r.value;
        err += r.err_est;
        used += r.subdivisions_used;
    }
    Ok(QuadratureResult {
        value,
        err_est: err,
        subdivisions_used: used,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_on_unit_interval() {
        let f = |t: f64| t;
        let r = integrate(&QuadratureRequest::finite(&f, 0.0, 1.0)).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        assert!(r.converged);
    }

    #[test]
    fn exponential_tail() {
        let f = |t: f64| (-t).exp();
        for hint in [DecayHint::Power, DecayHint::Exponential] {
            let r = integrate(&QuadratureRequest::semi_infinite(&f, 0.0, hint)).unwrap();
            assert!((r.value - 1.0).abs() < 1e-12, "{hint:?}: {}", r.value);
        }
    }

    #[test]
    fn rational_radial_integrand() {
        let f = |p: f64| p * p / (p * p + 1.0);
        let r = integrate(&QuadratureRequest::finite(&f, 0.0, 10.0)).unwrap();
        let exact = 10.0 - 10f64.atan();
        assert!((r.value - exact).abs() < 1e-12);
        assert!((r.value - 8.528_872_3).abs() < 1e-7);
    }

    #[test]
    fn endpoint_singularity_is_never_sampled() {
        let f = |t: f64| 1.0 / t.sqrt();
        let r = integrate(&QuadratureRequest::finite(&f, 0.0, 1.0)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = |t: f64| (1.0 / t).sin() / t;
        let req = QuadratureRequest::finite(&f, 0.0, 1.0).max_subdivisions(20);
        assert!(matches!(integrate(&req), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn bad_domain() {
        let f = |t: f64| t;
        assert!(matches!(
            integrate(&QuadratureRequest::finite(&f, 1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert_eq!(integrate(&QuadratureRequest::finite(&f, 1.0, 1.0)).unwrap().value, 0.0);
    }
}
