//! Scale-tagged formal series and the extraction operators that strip
//! regulator-dependent terms.
//!
//! Exponents are linear forms in `(d, α, β)` with exact rational
//! coefficients, so deciding whether a term is scale-free never involves a
//! floating-point comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::dimreg::{master_mass_derivative, relative_residual, Params, FD_REL_STEP};
use crate::error::{Error, Result};
use crate::schemes::{scheme_series, SchemeSpec};

pub type Rational = Ratio<i64>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// `c0 + cd·d + ca·α + cb·β`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolicExponent {
    pub c0: Rational,
    pub cd: Rational,
    pub ca: Rational,
    pub cb: Rational,
}

impl SymbolicExponent {
    pub fn new(c0: Rational, cd: Rational, ca: Rational, cb: Rational) -> Self {
        Self { c0, cd, ca, cb }
    }

    /// Integer coefficients.
    pub fn ints(c0: i64, cd: i64, ca: i64, cb: i64) -> Self {
        Self::new(q(c0), q(cd), q(ca), q(cb))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c0: Rational) -> Self {
        Self::new(c0, q(0), q(0), q(0))
    }

    /// `d/2` as a form.
    pub fn half_d() -> Self {
        Self::new(q(0), Rational::new(1, 2), q(0), q(0))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.cd.is_zero() && self.ca.is_zero() && self.cb.is_zero()
    }

    pub fn eval(&self, d: f64, alpha: f64, beta: f64) -> f64 {
        let f = |r: Rational| r.to_f64().unwrap_or(f64::NAN);
        f(self.c0) + f(self.cd) * d + f(self.ca) * alpha + f(self.cb) * beta
    }
}

impl Add for SymbolicExponent {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.c0 + o.c0, self.cd + o.cd, self.ca + o.ca, self.cb + o.cb)
    }
}

impl Sub for SymbolicExponent {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for SymbolicExponent {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.cd, -self.ca, -self.cb)
    }
}

impl Mul<Rational> for SymbolicExponent {
    type Output = Self;
    fn mul(self, k: Rational) -> Self {
        Self::new(self.c0 * k, self.cd * k, self.ca * k, self.cb * k)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Config(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(q(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for SymbolicExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}*d + {}*alpha + {}*beta)",
            fmt_rational(&self.c0),
            fmt_rational(&self.cd),
            fmt_rational(&self.ca),
            fmt_rational(&self.cb)
        )
    }
}

impl FromStr for SymbolicExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Config(format!("exponent `{s}` must be parenthesised")))?;
        let parts: Vec<&str> = inner.split(" + ").collect();
        if parts.len() != 4 {
            return Err(Error::Config(format!("exponent `{s}` needs four parts")));
        }
        let coeff = |part: &str, var: &str| -> Result<Rational> {
            let c = part
                .strip_suffix(var)
                .and_then(|c| c.strip_suffix('*'))
                .ok_or_else(|| Error::Config(format!("expected `<q>*{var}`, got `{part}`")))?;
            parse_rational(c)
        };
        Ok(Self::new(
            parse_rational(parts[0])?,
            coeff(parts[1], "d")?,
            coeff(parts[2], "alpha")?,
            coeff(parts[3], "beta")?,
        ))
    }
}

/// Regulator scales a term may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scale {
    K,
    Delta,
    Xi,
}

impl Scale {
    pub const ALL: [Scale; 3] = [Scale::K, Scale::Delta, Scale::Xi];

    pub fn name(self) -> &'static str {
        match self {
            Scale::K => "K",
            Scale::Delta => "delta",
            Scale::Xi => "xi",
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scale::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scale `{s}`")))
    }
}

/// Power and log power of one scale inside a term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalePower {
    pub exponent: SymbolicExponent,
    pub log_power: u32,
}

impl ScalePower {
    pub fn is_trivial(&self) -> bool {
        self.exponent.is_zero() && self.log_power == 0
    }
}

pub type Signature = BTreeMap<Scale, ScalePower>;

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub scales: Signature,
}

impl Term {
    pub fn scale_free(coeff: f64) -> Self {
        Self {
            coeff,
            scales: BTreeMap::new(),
        }
    }

    /// `coeff · scale^exponent`.
    pub fn power(coeff: f64, scale: Scale, exponent: SymbolicExponent) -> Self {
        Self::scale_free(coeff).times_power(scale, exponent)
    }

    pub fn times_power(mut self, scale: Scale, exponent: SymbolicExponent) -> Self {
        let e = self.scales.entry(scale).or_default();
        e.exponent = e.exponent + exponent;
        self.prune();
        self
    }

    pub fn times_log(mut self, scale: Scale, power: u32) -> Self {
        self.scales.entry(scale).or_default().log_power += power;
        self.prune();
        self
    }

    fn prune(&mut self) {
        self.scales.retain(|_, p| !p.is_trivial());
    }

    pub fn depends_on(&self, scale: Scale) -> bool {
        self.scales.get(&scale).is_some_and(|p| !p.is_trivial())
    }

    pub fn is_scale_free(&self) -> bool {
        self.scales.values().all(ScalePower::is_trivial)
    }

    fn eval(&self, b: &Bindings, values: &ScaleValues) -> Result<f64> {
        let mut v = self.coeff;
        for (scale, p) in &self.scales {
            if p.is_trivial() {
                continue;
            }
            let x = *values
                .get(scale)
                .ok_or_else(|| Error::Domain(format!("no value given for scale {scale}")))?;
            if !(x > 0.0) {
                return Err(Error::Domain(format!("scale {scale} must be positive, got {x}")));
            }
            if !p.exponent.is_zero() {
                v *= x.powf(p.exponent.eval(b.d, b.alpha, b.beta));
            }
            if p.log_power > 0 {
                v *= x.ln().powi(p.log_power as i32);
            }
        }
        Ok(v)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.coeff)?;
        for (scale, p) in &self.scales {
            if !p.exponent.is_zero() {
                write!(f, " * {scale}^{}", p.exponent)?;
            }
            if p.log_power > 0 {
                write!(f, " * ln{scale}^{}", p.log_power)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(" * ");
        let coeff: f64 = parts
            .next()
            .unwrap_or_default()
            .parse()
            .map_err(|_| Error::Config(format!("bad coefficient in term `{s}`")))?;
        let mut term = Term::scale_free(coeff);
        for factor in parts {
            let (base, exp) = factor
                .split_once('^')
                .ok_or_else(|| Error::Config(format!("bad factor `{factor}`")))?;
            if let Some(name) = base.strip_prefix("ln") {
                let p: u32 = exp
                    .parse()
                    .map_err(|_| Error::Config(format!("bad log power `{exp}`")))?;
                term = term.times_log(name.parse()?, p);
            } else {
                term = term.times_power(base.parse()?, exp.parse()?);
            }
        }
        Ok(term)
    }
}

/// Values of `(d, α, β)` substituted into exponents when a series is
/// evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bindings {
    pub d: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Bindings {
    pub fn of(p: &Params) -> Self {
        Self {
            d: p.d,
            alpha: p.alpha,
            beta: p.beta.unwrap_or(0.0),
        }
    }
}

pub type ScaleValues = BTreeMap<Scale, f64>;

/// Convenience constructor for [`ScaleValues`].
pub fn scale_values(pairs: &[(Scale, f64)]) -> ScaleValues {
    pairs.iter().copied().collect()
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut c = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormalSeries {
    pub terms: Vec<Term>,
    pub bindings: Bindings,
    pub truncation_note: String,
}

impl FormalSeries {
    pub fn new(bindings: Bindings) -> Self {
        Self {
            terms: Vec::new(),
            bindings,
            truncation_note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.truncation_note = note.into();
        self
    }

    pub fn push(&mut self, term: Term) {
        self.terms.push(term);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn with_terms(&self, terms: Vec<Term>) -> Self {
        Self {
            terms,
            bindings: self.bindings,
            truncation_note: self.truncation_note.clone(),
        }
    }

    /// Merges like terms, drops exact zeros and sorts by signature.
    pub fn normalize(&self) -> Self {
        let mut merged: BTreeMap<Signature, f64> = BTreeMap::new();
        for t in &self.terms {
            let mut sig = t.scales.clone();
            sig.retain(|_, p| !p.is_trivial());
            *merged.entry(sig).or_insert(0.0) += t.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(scales, coeff)| Term { coeff, scales })
            .collect();
        self.with_terms(terms)
    }

    /// `[1 - ∫ds ∂_s]`: drops every term carrying `scale`, in power or log.
    pub fn extract_scale(&self, scale: Scale) -> Self {
        self.extract_multi(&[scale])
    }

    /// Product of single-scale extractions: keeps the terms free of all of
    /// `scales`.
    pub fn extract_multi(&self, scales: &[Scale]) -> Self {
        self.partition(scales).0
    }

    /// `(kept, removed)` split of [`extract_multi`](Self::extract_multi).
    pub fn partition(&self, scales: &[Scale]) -> (Self, Self) {
        let (kept, removed) = self
            .terms
            .iter()
            .cloned()
            .partition(|t| scales.iter().all(|s| !t.depends_on(*s)));
        (self.with_terms(kept), self.with_terms(removed))
    }

    /// Sum of the terms that depend on no scale at all.
    pub fn scale_free_part(&self) -> Self {
        self.extract_multi(&Scale::ALL)
    }

    /// Renames `from` to `to`, multiplying powers where both occur.
    pub fn relabel_scale(&self, from: Scale, to: Scale) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                if let Some(p) = t.scales.remove(&from) {
                    t = t.times_power(to, p.exponent).times_log(to, p.log_power);
                }
                t
            })
            .collect();
        self.with_terms(terms).normalize()
    }

    pub fn scaled(&self, a: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: a * t.coeff,
                scales: t.scales.clone(),
            })
            .collect();
        self.with_terms(terms)
    }

    /// Term-wise sum; both series must share bindings.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.bindings != other.bindings {
            return Err(Error::Domain("cannot add series with different bindings".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        let mut out = self.with_terms(terms);
        if !other.truncation_note.is_empty() && other.truncation_note != self.truncation_note {
            if !out.truncation_note.is_empty() {
                out.truncation_note.push_str("; ");
            }
            out.truncation_note.push_str(&other.truncation_note);
        }
        Ok(out)
    }

    /// Numeric value at concrete scales.
    pub fn eval_at(&self, values: &ScaleValues) -> Result<f64> {
        let vals = self
            .terms
            .iter()
            .map(|t| t.eval(&self.bindings, values))
            .collect::<Result<Vec<_>>>()?;
        Ok(compensated_sum(vals))
    }

    /// Sum of absolute term values, the scale for rounding-error bounds.
    pub fn abs_sum_at(&self, values: &ScaleValues) -> Result<f64> {
        let mut s = 0.0;
        for t in &self.terms {
            s += t.eval(&self.bindings, values)?.abs();
        }
        Ok(s)
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.bindings;
        writeln!(f, "# bindings d={:e} alpha={:e} beta={:e}", b.d, b.alpha, b.beta)?;
        writeln!(f, "# truncation {}", self.truncation_note.replace('\n', " "))?;
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for FormalSeries {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .and_then(|l| l.strip_prefix("# bindings "))
            .ok_or_else(|| Error::Config("series text must start with `# bindings`".into()))?;
        let mut vals = [f64::NAN; 3];
        for (slot, (key, part)) in vals
            .iter_mut()
            .zip(["d", "alpha", "beta"].into_iter().zip(header.split_whitespace()))
        {
            let v = part
                .strip_prefix(key)
                .and_then(|p| p.strip_prefix('='))
                .ok_or_else(|| Error::Config(format!("bad binding `{part}`")))?;
            *slot = v
                .parse()
                .map_err(|_| Error::Config(format!("bad binding value `{v}`")))?;
        }
        let note = lines
            .next()
            .and_then(|l| l.strip_prefix("# truncation"))
            .ok_or_else(|| Error::Config("missing `# truncation` line".into()))?;
        let mut out = FormalSeries::new(Bindings {
            d: vals[0],
            alpha: vals[1],
            beta: vals[2],
        })
        .with_note(note.strip_prefix(' ').unwrap_or(note));
        for line in lines.filter(|l| !l.trim().is_empty()) {
            out.push(line.parse()?);
        }
        Ok(out)
    }
}

pub const COMMUTATION_TOL: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct CommutationReport {
    /// `α · 𝔒 series(α+1)`.
    pub lhs: f64,
    /// `-∂_{m²} 𝔒 series(α)` by central differences.
    pub rhs: f64,
    pub residual: f64,
    pub pass: bool,
}

fn extracted_value(p: &Params, s: &SchemeSpec) -> Result<f64> {
    let series = scheme_series(p, s, crate::dimreg::DEFAULT_TERMS)?;
    series.extract_multi(&s.scales()).eval_at(&s.scale_values())
}

/// Checks that extraction commutes with the mass derivative: the extracted
/// series at `α+1`, times `α`, equals minus the `m²` derivative of the
/// extracted series at `α`. `h` is the relative finite-difference step
/// (the absolute step is `h·m²`).
pub fn commutes_with_mass_derivative(p: &Params, s: &SchemeSpec, h: f64) -> Result<CommutationReport> {
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::Domain(format!("relative step must lie in (0, 0.5), got {h}")));
    }
    let step = h * p.m2;
    let lhs = p.alpha * extracted_value(&p.with_alpha(p.alpha + 1.0), s)?;
    let up = extracted_value(&p.with_m2(p.m2 + step), s)?;
    let down = extracted_value(&p.with_m2(p.m2 - step), s)?;
    let rhs = -(up - down) / (2.0 * step);
    let residual = relative_residual(lhs, rhs);
    Ok(CommutationReport {
        lhs,
        rhs,
        residual,
        pass: residual <= COMMUTATION_TOL,
    })
}

/// The same check run directly on the master formula, for comparison.
pub fn master_commutation(p: &Params) -> Result<CommutationReport> {
    let lhs = p.alpha * crate::dimreg::master_one_loop(&p.with_alpha(p.alpha + 1.0))?.value;
    let rhs = master_mass_derivative(p, FD_REL_STEP * p.m2)?;
    let residual = relative_residual(lhs, rhs);
    Ok(CommutationReport {
        lhs,
        rhs,
        residual,
        pass: residual <= COMMUTATION_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b() -> Bindings {
        Bindings {
            d: 3.0,
            alpha: 1.0,
            beta: 0.0,
        }
    }

    fn series(terms: Vec<Term>) -> FormalSeries {
        let mut s = FormalSeries::new(b());
        for t in terms {
            s.push(t);
        }
        s
    }

    fn d_minus_2a() -> SymbolicExponent {
        SymbolicExponent::ints(0, 1, -2, 0)
    }

    #[test]
    fn normalize_examples() {
        let s = series(vec![Term::scale_free(2.0), Term::scale_free(3.0)]).normalize();
        assert_eq!(s.terms, vec![Term::scale_free(5.0)]);
        let half = SymbolicExponent::constant(Rational::new(1, 2));
        let s = series(vec![
            Term::power(0.0, Scale::K, SymbolicExponent::ints(1, 0, 0, 0)),
            Term::power(4.0, Scale::Delta, half),
        ])
        .normalize();
        assert_eq!(s.terms, vec![Term::power(4.0, Scale::Delta, half)]);
        assert_eq!(s.normalize(), s);
    }

    #[test]
    fn extraction_examples() {
        let s = series(vec![
            Term::scale_free(1.5),
            Term::power(2.0, Scale::K, d_minus_2a()),
            Term::scale_free(0.0).times_log(Scale::K, 1),
        ]);
        let e = s.extract_scale(Scale::K);
        assert_eq!(e.terms, vec![Term::scale_free(1.5)]);
        assert_eq!(FormalSeries::new(b()).eval_at(&ScaleValues::new()).unwrap(), 0.0);
        assert_eq!(series(vec![Term::scale_free(5.0)]).eval_at(&scale_values(&[(Scale::K, 7.0)])).unwrap(), 5.0);
    }

    #[test]
    fn scale_with_zero_exponent_is_scale_free() {
        let t = Term::power(1.0, Scale::K, d_minus_2a() - d_minus_2a());
        assert!(t.is_scale_free());
        assert!(!t.depends_on(Scale::K));
    }

    #[test]
    fn eval_rejects_missing_or_bad_scales() {
        let s = series(vec![Term::power(1.0, Scale::K, d_minus_2a())]);
        assert!(matches!(s.eval_at(&ScaleValues::new()), Err(Error::Domain(_))));
        assert!(matches!(
            s.eval_at(&scale_values(&[(Scale::K, -1.0)])),
            Err(Error::Domain(_))
        ));
        assert_eq!(s.eval_at(&scale_values(&[(Scale::K, 10.0)])).unwrap(), 10.0);
    }

    #[test]
    fn relabel_merges_powers() {
        let s = series(vec![Term::power(2.0, Scale::Delta, SymbolicExponent::ints(1, 0, 0, 0))
            .times_power(Scale::Xi, SymbolicExponent::ints(2, 0, 0, 0))]);
        let r = s.relabel_scale(Scale::Xi, Scale::Delta);
        assert_eq!(r.terms, vec![Term::power(2.0, Scale::Delta, SymbolicExponent::ints(3, 0, 0, 0))]);
    }

    #[test]
    fn text_example() {
        let t = Term::power(-0.25, Scale::K, SymbolicExponent::new(q(1), q(1), Rational::new(-3, 2), q(0)))
            .times_log(Scale::K, 2);
        assert_eq!(t.to_string(), "-2.5e-1 * K^(1 + 1*d + -3/2*alpha + 0*beta) * lnK^2");
        assert_eq!(t.to_string().parse::<Term>().unwrap(), t);
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn exponent() -> impl Strategy<Value = SymbolicExponent> {
        (rational(), rational(), rational(), rational())
            .prop_map(|(a, b, c, d)| SymbolicExponent::new(a, b, c, d))
    }

    fn term() -> impl Strategy<Value = Term> {
        (
            -10.0f64..10.0,
            proptest::option::of(exponent()),
            proptest::option::of(exponent()),
            0u32..2,
        )
            .prop_map(|(c, k, dl, log)| {
                let mut t = Term::scale_free(c);
                if let Some(e) = k {
                    t = t.times_power(Scale::K, e);
                }
                if let Some(e) = dl {
                    t = t.times_power(Scale::Delta, e);
                }
                t.times_log(Scale::Xi, log)
            })
    }

    fn any_series() -> impl Strategy<Value = FormalSeries> {
        proptest::collection::vec(term(), 0..12).prop_map(series)
    }

    fn values() -> ScaleValues {
        scale_values(&[(Scale::K, 3.5), (Scale::Delta, 0.2), (Scale::Xi, 0.7)])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn zero_test_is_symbolic(e in exponent()) {
            let zero = e.c0 == q(0) && e.cd == q(0) && e.ca == q(0) && e.cb == q(0);
            prop_assert_eq!(e.is_zero(), zero);
            prop_assert_eq!(Term::power(1.0, Scale::K, e).is_scale_free(), zero);
            prop_assert!((e - e).is_zero());
            prop_assert_eq!(e.to_string().parse::<SymbolicExponent>().unwrap(), e);
        }
    }

    proptest! {
        #[test]
        fn extraction_is_idempotent(s in any_series()) {
            let s = s.normalize();
            for scale in Scale::ALL {
                let once = s.extract_scale(scale);
                prop_assert_eq!(once.extract_scale(scale), once);
            }
        }

        #[test]
        fn extraction_partitions_terms(s in any_series()) {
            let s = s.normalize();
            let (kept, removed) = s.partition(&[Scale::K]);
            prop_assert_eq!(kept.len() + removed.len(), s.len());
            let v = values();
            let total = s.eval_at(&v).unwrap();
            let parts = kept.eval_at(&v).unwrap() + removed.eval_at(&v).unwrap();
            let scale = s.abs_sum_at(&v).unwrap();
            prop_assert!((total - parts).abs() <= 4.0 * f64::EPSILON * scale);
        }

        #[test]
        fn extraction_is_linear(s1 in any_series(), s2 in any_series(), a in -3.0f64..3.0) {
            let lhs = s1.scaled(a).plus(&s2).unwrap().normalize().extract_scale(Scale::Delta);
            let rhs = s1.extract_scale(Scale::Delta).scaled(a)
                .plus(&s2.extract_scale(Scale::Delta)).unwrap().normalize();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multi_extraction_is_order_independent(s in any_series()) {
            let s = s.normalize();
            let kd = s.extract_scale(Scale::K).extract_scale(Scale::Delta);
            let dk = s.extract_scale(Scale::Delta).extract_scale(Scale::K);
            prop_assert_eq!(&kd, &dk);
            prop_assert_eq!(&kd, &s.extract_multi(&[Scale::K, Scale::Delta]));
        }

        #[test]
        fn text_round_trip(s in any_series()) {
            let s = s.normalize().with_note("terms up to n = 3");
            let back: FormalSeries = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
