//! Exact rational-function recovery from point values, and expansion at `n = ∞`.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::dim_rational_poly;
use crate::error::{Error, Result};
use crate::exact::{int, ExactValue, Rational};
use crate::partitions::{CutoffSpec, YoungDiagram};
use crate::poly::Poly;
use crate::surface::{expected_trace, tail_majorant, Cutoff, Route, TailMajorant, Word};
use crate::weingarten::WordMomentEngine;

/// Points kept back from every fit and required to agree exactly.
pub const HELD_OUT: usize = 3;

/// `numerator / denominator` in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        if numerator.is_zero() {
            return Ok(RationalFunction {
                numerator,
                denominator: Poly::one(),
            });
        }
        let g = Poly::gcd(&numerator, &denominator);
        let (num, _) = numerator.div_rem(&g);
        let (den, _) = denominator.div_rem(&g);
        let lead = den.leading().recip();
        Ok(RationalFunction {
            numerator: num.scale(&lead),
            denominator: den.scale(&lead),
        })
    }

    pub fn polynomial(p: Poly) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// `(deg numerator, deg denominator)`, with the zero function at `(0, 0)`.
    pub fn degrees(&self) -> (usize, usize) {
        (
            self.numerator.degree().unwrap_or(0),
            self.denominator.degree().unwrap_or(0),
        )
    }

    /// `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(t);
        (!d.is_zero()).then(|| self.numerator.eval(t) / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == Poly::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[derive(Serialize)]
struct RationalFunctionWire {
    numerator: Vec<ExactValue>,
    denominator: Vec<ExactValue>,
    text: String,
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalFunctionWire {
            numerator: self.numerator.coeffs().iter().map(ExactValue::from).collect(),
            denominator: self.denominator.coeffs().iter().map(ExactValue::from).collect(),
            text: self.to_string(),
        }
        .serialize(s)
    }
}

/// Nullspace vector of `rows` with a nonzero entry somewhere in `cols`, one per free column.
fn nullspace(mut rows: Vec<Vec<Rational>>, width: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..width {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); width];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free].clone();
            }
            v
        })
        .collect()
}

/// Rational function of degree `≤ (p, q)` through every point, if one exists with no pole there.
pub fn fit_rational(points: &[(i64, Rational)], p: usize, q: usize) -> Option<RationalFunction> {
    let width = p + q + 2;
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|(n, v)| {
            let t = int(*n);
            let mut row = Vec::with_capacity(width);
            let mut power = Rational::one();
            for _ in 0..=p {
                row.push(power.clone());
                power *= &t;
            }
            let mut power = Rational::one();
            for _ in 0..=q {
                row.push(-(v * &power));
                power *= &t;
            }
            row
        })
        .collect();
    nullspace(rows, width).into_iter().find_map(|v| {
        let num = Poly::new(v[..=p].to_vec());
        let den = Poly::new(v[p + 1..].to_vec());
        if den.is_zero() {
            return None;
        }
        let f = RationalFunction::new(num, den).ok()?;
        agrees(&f, points).then_some(f)
    })
}

fn agrees(f: &RationalFunction, points: &[(i64, Rational)]) -> bool {
    points.iter().all(|(n, v)| f.eval(&int(*n)).as_ref() == Some(v))
}

/// Fit plus the evidence that it was not overfitted.
#[derive(Debug, Clone, Serialize)]
pub struct InterpolationReport {
    pub function: RationalFunction,
    pub degrees: (usize, usize),
    pub fit_points: Vec<i64>,
    pub held_out: Vec<i64>,
    pub held_out_residuals: Vec<ExactValue>,
}

/// Sweeps `(deg_num, deg_den)` by total degree, fitting on all but the last three points and
/// accepting the first candidate that reproduces those three exactly.
pub fn rational_interpolate_report(
    points: &[(i64, Rational)],
    max_num: usize,
    max_den: usize,
) -> Result<InterpolationReport> {
    let no_fit = || Error::NoConsistentDegree {
        max_num,
        max_den,
        points: points.len(),
    };
    let mut ns: Vec<i64> = points.iter().map(|(n, _)| *n).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() != points.len() {
        return Err(Error::Precondition("interpolation abscissae must be distinct".into()));
    }
    if points.len() < HELD_OUT + 1 {
        return Err(no_fit());
    }
    let (fit, held) = points.split_at(points.len() - HELD_OUT);
    for total in 0..=max_num + max_den {
        if total + 1 > fit.len() {
            break;
        }
        for p in (0..=total.min(max_num)).rev() {
            let q = total - p;
            if q > max_den {
                continue;
            }
            let Some(f) = fit_rational(fit, p, q) else {
                continue;
            };
            if agrees(&f, held) {
                let residuals = held
                    .iter()
                    .map(|(n, v)| ExactValue::from(&(f.eval(&int(*n)).expect("no pole") - v)))
                    .collect();
                return Ok(InterpolationReport {
                    degrees: f.degrees(),
                    function: f,
                    fit_points: fit.iter().map(|(n, _)| *n).collect(),
                    held_out: held.iter().map(|(n, _)| *n).collect(),
                    held_out_residuals: residuals,
                });
            }
        }
    }
    Err(no_fit())
}

pub fn rational_interpolate(points: &[(i64, Rational)], max_num: usize, max_den: usize) -> Result<RationalFunction> {
    rational_interpolate_report(points, max_num, max_den).map(|r| r.function)
}

/// `a₋₁ n + a₀ + a₁/n + … + a_{M−1}/n^{M−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentExpansion {
    order: usize,
    /// `coefficients[i]` is `a_{i−1}`.
    coefficients: Vec<Rational>,
}

impl LaurentExpansion {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `a_i` for `i ≥ −1`; `None` beyond the order.
    pub fn coeff(&self, i: i64) -> Option<&Rational> {
        usize::try_from(i + 1).ok().and_then(|k| self.coefficients.get(k))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let inv = t.recip();
        let mut power = t.clone();
        let mut acc = Rational::zero();
        for c in &self.coefficients {
            acc += c * &power;
            power *= &inv;
        }
        acc
    }

    /// Indices `i` with `a_i` equal in both, over the orders they share, and the first index that differs.
    pub fn compare(&self, other: &LaurentExpansion) -> (Vec<i64>, Option<i64>) {
        let shared = self.coefficients.len().min(other.coefficients.len());
        let mut agree = Vec::new();
        let mut first = None;
        for k in 0..shared {
            let i = k as i64 - 1;
            if self.coefficients[k] == other.coefficients[k] {
                agree.push(i);
            } else if first.is_none() {
                first = Some(i);
            }
        }
        (agree, first)
    }
}

#[derive(Serialize)]
struct LaurentTerm {
    index: i64,
    value: ExactValue,
}

impl Serialize for LaurentExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<LaurentTerm> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| LaurentTerm {
                index: k as i64 - 1,
                value: ExactValue::from(c),
            })
            .collect();
        let mut st = s.serialize_struct("LaurentExpansion", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coefficients", &terms)?;
        st.end()
    }
}

/// Truncated Laurent series in `x = 1/t`. Coefficients are known for exponents `< known_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<Rational>,
    known_to: i64,
}

impl LaurentSeries {
    pub fn zero(known_to: i64) -> Self {
        LaurentSeries {
            val: known_to,
            coeffs: Vec::new(),
            known_to,
        }
    }

    /// A polynomial in `t`, known through `x^{known_to − 1}`.
    pub fn from_poly(p: &Poly, known_to: i64) -> Self {
        let Some(d) = p.degree() else {
            return LaurentSeries::zero(known_to);
        };
        let val = -(d as i64);
        let coeffs = (val..known_to.max(val))
            .map(|e| if e <= 0 { p.coeff((-e) as usize) } else { Rational::zero() })
            .collect();
        LaurentSeries { val, coeffs, known_to }.normalized()
    }

    fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.val += lead as i64;
        if self.coeffs.is_empty() {
            self.val = self.known_to;
        }
        self
    }

    pub fn known_to(&self) -> i64 {
        self.known_to
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^e`; `None` past the known range.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e >= self.known_to {
            None
        } else if e < self.val {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(e - self.val) as usize].clone())
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let val = self.val.min(other.val);
        let known_to = self.known_to.min(other.known_to);
        let coeffs = (val..known_to.max(val))
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        LaurentSeries { val, coeffs, known_to }.normalized()
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let val = self.val + other.val;
        let known_to = (self.val + other.known_to).min(other.val + self.known_to);
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::zero(known_to);
        }
        let len = (known_to - val).max(0) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        LaurentSeries { val, coeffs, known_to }.normalized()
    }

    /// Reciprocal of a series with a known nonzero leading term.
    pub fn recip(&self) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::Precondition("reciprocal of a zero series".into()));
        }
        let len = self.coeffs.len();
        let inv0 = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        out.push(inv0.clone());
        for k in 1..len {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out.push(-(s * &inv0));
        }
        let val = -self.val;
        Ok(LaurentSeries {
            val,
            coeffs: out,
            known_to: val + len as i64,
        })
    }

    pub fn powi(&self, e: i64) -> Result<LaurentSeries> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = LaurentSeries::from_poly(&Poly::one(), base.known_to - base.val);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// `a₋₁ … a_{M−1}`; `None` when the series is not known that far.
    pub fn laurent(&self, order: usize) -> Option<LaurentExpansion> {
        let coefficients = (-1..order as i64).map(|e| self.coeff(e)).collect::<Option<Vec<_>>>()?;
        Some(LaurentExpansion { order, coefficients })
    }
}

/// Exact expansion of `f` at infinity through `a_{M−1}`.
pub fn laurent_coeffs(f: &RationalFunction, order: usize) -> Result<LaurentExpansion> {
    let (dn, dd) = f.degrees();
    if !f.numerator.is_zero() && dn > dd + 1 {
        return Err(Error::GrowthViolation { deg_num: dn, deg_den: dd });
    }
    // Numerator and denominator are exact, so any precision past the target suffices.
    let known_to = order as i64 + 2 * (dd as i64 + 2);
    let num = LaurentSeries::from_poly(&f.numerator, known_to);
    let den = LaurentSeries::from_poly(&f.denominator, known_to);
    let series = num.mul(&den.recip()?);
    Ok(series.laurent(order).expect("precision covers the requested order"))
}

/// `D·I` and `D^{−(2g−2)}` for one `[μ,ν]`, as series in `1/n`.
fn rep_series(
    mu: &YoungDiagram,
    nu: &YoungDiagram,
    g: i64,
    handles: i64,
    known_to: i64,
) -> Result<(LaurentSeries, LaurentSeries)> {
    let d = LaurentSeries::from_poly(&dim_rational_poly(mu, nu), known_to);
    // Constituents of std ⊗ [ν,μ] once n exceeds ℓ(μ)+ℓ(ν).
    let constituents = nu
        .add_box_all()
        .into_iter()
        .map(|a| (a, mu.clone()))
        .chain(mu.remove_box_all().into_iter().map(|r| (nu.clone(), r)));
    let mut inner = LaurentSeries::zero(known_to);
    for (a, b) in constituents {
        let ds = LaurentSeries::from_poly(&dim_rational_poly(&a, &b), known_to);
        inner = inner.add(&ds.powi(1 - 2 * handles)?);
    }
    let numerator = d.powi(1 - 2 * (g - handles))?.mul(&inner);
    let weight = d.powi(-(2 * g - 2))?;
    Ok((numerator, weight))
}

/// Expected trace over the cutoff family as a series in `1/n`, valid for `n` past the
/// injectivity threshold. Needs a word of the form `[a₁,b₁]⋯[a_k,b_k]` or an unbalanced word.
pub fn expected_trace_series(w: &Word, spec: CutoffSpec, order: usize) -> Result<LaurentExpansion> {
    if !w.is_commutator_balanced() {
        return Ok(LaurentExpansion {
            order,
            coefficients: vec![Rational::zero(); order + 1],
        });
    }
    let handles = w.relator_prefix_handles().ok_or_else(|| {
        Error::Precondition(format!("series route needs a word [a1,b1]...[ak,bk], got {w}"))
    })? as i64;
    let g = w.genus() as i64;
    if g < 2 {
        return Err(Error::Precondition(format!("expectations need genus >= 2, got {g}")));
    }
    let boxes = spec.box_diagrams();
    let pairs: Vec<(&YoungDiagram, &YoungDiagram)> =
        boxes.iter().flat_map(|mu| boxes.iter().map(move |nu| (mu, nu))).collect();
    let mut pad = 32i64;
    loop {
        let known_to = order as i64 + pad;
        let terms: Vec<(LaurentSeries, LaurentSeries)> = pairs
            .par_iter()
            .map(|(mu, nu)| rep_series(mu, nu, g, handles, known_to))
            .collect::<Result<_>>()?;
        let (num, den) = terms.into_iter().fold(
            (LaurentSeries::zero(known_to), LaurentSeries::zero(known_to)),
            |(a, b), (x, y)| (a.add(&x), b.add(&y)),
        );
        if let Some(e) = num.mul(&den.recip()?).laurent(order) {
            return Ok(e);
        }
        pad *= 2;
    }
}

/// `|w| + 2B³`: the smallest rank at which the pipeline samples.
pub fn validity_threshold(w: &Word, spec: CutoffSpec) -> usize {
    w.len() + 2 * spec.b.pow(3)
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub b: usize,
    pub next_b: usize,
    pub next: LaurentExpansion,
    pub agreeing_orders: Vec<i64>,
    pub first_disagreement: Option<i64>,
    pub all_shared_agree: bool,
    /// Whether the shape-level tail majorant at `B` drops below `n^{−M}` on the fitted range.
    pub tail_condition: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub threshold: usize,
    pub interpolation: InterpolationReport,
    /// Expansion at `B` computed directly as a series, compared with the fitted one.
    pub series_matches_fit: Option<bool>,
    pub stability: Option<StabilityReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    pub word: Word,
    pub b: usize,
    pub order: usize,
    pub points: Vec<(i64, ExactValue)>,
    pub fit: RationalFunction,
    pub expansion: LaurentExpansion,
    pub diagnostics: Diagnostics,
}

/// Evaluates the expected trace exactly over `ns`, fits a rational function, expands it, and
/// compares with the expansion at the next cutoff.
pub fn expansion_pipeline(
    w: &Word,
    spec: CutoffSpec,
    ns: &[usize],
    order: usize,
    engine: &WordMomentEngine,
) -> Result<ExpansionReport> {
    let threshold = validity_threshold(w, spec);
    if let Some(&bad) = ns.iter().find(|&&n| n < threshold) {
        return Err(Error::Precondition(format!(
            "n = {bad} is below the validity threshold {threshold}"
        )));
    }
    let values: Vec<Rational> = ns
        .par_iter()
        .map(|&n| expected_trace(w, n, Cutoff::omega(spec), Route::Auto, engine).map(|e| e.value))
        .collect::<Result<_>>()?;
    let points: Vec<(i64, Rational)> = ns.iter().map(|&n| n as i64).zip(values).collect();
    let budget = points.len().saturating_sub(HELD_OUT + 1);
    let interpolation = rational_interpolate_report(&points, budget, budget)?;
    let fit = interpolation.function.clone();
    let expansion = laurent_coeffs(&fit, order)?;

    let mut notes = Vec::new();
    let series_matches_fit = match expected_trace_series(w, spec, order) {
        Ok(s) => Some(s == expansion),
        Err(e) => {
            notes.push(format!("series route unavailable: {e}"));
            None
        }
    };
    let next_spec = CutoffSpec::new(spec.b + 1)?;
    let stability = match expected_trace_series(w, next_spec, order) {
        Ok(next) => {
            let (agreeing_orders, first_disagreement) = expansion.compare(&next);
            let max_n = ns.iter().copied().max().unwrap_or(0);
            let tail_condition = match tail_majorant(w, spec, max_n) {
                TailMajorant::Value { value, .. } => {
                    let target = (max_n as f64).powi(-(order as i32));
                    format!("tail majorant {value:e} vs n^-M = {target:e} at n = {max_n}")
                }
                TailMajorant::NotApplicable { reason, .. } => {
                    format!("tail majorant not applicable on the fitted range ({reason}); agreement reported unconditionally")
                }
            };
            Some(StabilityReport {
                b: spec.b,
                next_b: next_spec.b,
                all_shared_agree: first_disagreement.is_none(),
                next,
                agreeing_orders,
                first_disagreement,
                tail_condition,
            })
        }
        Err(e) => {
            notes.push(format!("stability comparison unavailable: {e}"));
            None
        }
    };

    Ok(ExpansionReport {
        word: w.clone(),
        b: spec.b,
        order,
        points: points.iter().map(|(n, v)| (*n, ExactValue::from(v))).collect(),
        fit,
        expansion,
        diagnostics: Diagnostics {
            threshold,
            interpolation,
            series_matches_fit,
            stability,
            notes,
        },
    })
}
