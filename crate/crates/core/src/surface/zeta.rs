use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::characters::weyl_dimension;
use crate::error::{Error, Result};
use crate::exact::{to_f64, ExactValue, Rational};
use crate::partitions::{weight_coords, CutoffSpec, YoungDiagram};

use super::bounds::glm_exponents;
use super::expectation::omega_representatives;

/// Which `SU(n)` irreducibles a partial sum keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cutoff {
    /// The image of the `(μ, ν)` box family with parameter `b`.
    Omega { b: usize },
    /// Every irreducible of dimension at most `d`.
    MaxDim { d: u64 },
}

impl Cutoff {
    pub fn omega(spec: CutoffSpec) -> Self {
        Cutoff::Omega { b: spec.b }
    }

    /// `(SU(n) diagram, dimension)` of every kept irreducible, deduplicated.
    pub fn irreps(&self, n: usize) -> Result<Vec<(YoungDiagram, BigInt)>> {
        match *self {
            Cutoff::Omega { b } => Ok(omega_representatives(CutoffSpec::new(b)?, n)?
                .into_iter()
                .map(|r| (r.su, r.dim))
                .collect()),
            Cutoff::MaxDim { d } => su_irreps_up_to_dim(n, d),
        }
    }
}

fn signature_from_x(x: &[usize]) -> Vec<i64> {
    let mut f = vec![0i64; x.len() + 1];
    for i in (0..x.len()).rev() {
        f[i] = f[i + 1] + x[i] as i64;
    }
    f
}

/// All `SU(n)` irreducibles of dimension `≤ d`, found by walking weight coordinates;
/// the dimension is increasing in each coordinate, so each branch stops at the first overshoot.
pub fn su_irreps_up_to_dim(n: usize, d: u64) -> Result<Vec<(YoungDiagram, BigInt)>> {
    if n < 2 {
        return Err(Error::Precondition("SU(n) irreps need n >= 2".into()));
    }
    let bound = BigInt::from(d);
    let mut out = Vec::new();
    let mut x = vec![0usize; n - 1];
    fn rec(i: usize, x: &mut Vec<usize>, bound: &BigInt, out: &mut Vec<(YoungDiagram, BigInt)>) {
        if i == x.len() {
            let f = signature_from_x(x);
            let dim = weyl_dimension(&f);
            let lambda = YoungDiagram::new(f.iter().map(|&v| v as usize).collect()).expect("suffix sums");
            out.push((lambda, dim));
            return;
        }
        loop {
            if weyl_dimension(&signature_from_x(x)) > *bound {
                break;
            }
            rec(i + 1, x, bound, out);
            x[i] += 1;
        }
        x[i] = 0;
    }
    rec(0, &mut x, &bound, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// `Σ 1/d^s` by pairwise merging, so intermediate denominators stay balanced.
fn sum_reciprocal_powers(dims: &[BigInt], s: u32) -> Rational {
    match dims.len() {
        0 => Rational::from_integer(BigInt::from(0)),
        1 => Rational::new(BigInt::one(), dims[0].pow(s)),
        len => {
            let (a, b) = dims.split_at(len / 2);
            sum_reciprocal_powers(a, s) + sum_reciprocal_powers(b, s)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaPartial {
    pub s: u32,
    pub n: usize,
    pub cutoff: Cutoff,
    pub terms: usize,
    #[serde(skip)]
    pub partial_sum: Rational,
    #[serde(rename = "partial_sum")]
    pub exact: ExactValue,
    pub partial_sum_f64: f64,
    /// Upper bound on the omitted terms; `None` when the available majorant diverges.
    pub tail_certificate: Option<f64>,
}

/// Upper bound for `Σ_{k≥1} k^{-σ}`: direct sum below `K` plus an integral tail.
pub(crate) fn riemann_zeta_upper(sigma: f64) -> f64 {
    if sigma <= 1.0 {
        return f64::INFINITY;
    }
    let k_max: u32 = if sigma < 2.5 { 1 << 16 } else { 256 };
    let mut s = 0.0;
    for k in (1..k_max).rev() {
        s += (k as f64).powf(-sigma);
    }
    let kk = k_max as f64;
    s + kk.powf(-sigma) + kk.powf(1.0 - sigma) / (sigma - 1.0)
}

/// Partial Witten zeta sum `Σ_{kept ρ} (dim ρ)^{-s}` with a dimension-bound tail certificate.
pub fn witten_zeta_partial(s: u32, n: usize, cutoff: Cutoff) -> Result<ZetaPartial> {
    if s == 0 {
        return Err(Error::Precondition("s must be a positive integer".into()));
    }
    if n < 2 {
        return Err(Error::Precondition("SU(n) needs n >= 2".into()));
    }
    if (s as usize) * n <= 2 {
        return Err(Error::Divergent { s, n });
    }
    let irreps = cutoff.irreps(n)?;
    let dims: Vec<BigInt> = irreps.iter().map(|(_, d)| d.clone()).collect();
    let partial_sum = sum_reciprocal_powers(&dims, s);
    let tail_certificate = tail_certificate(s, n, &irreps);
    Ok(ZetaPartial {
        s,
        n,
        cutoff,
        terms: irreps.len(),
        exact: ExactValue::from(&partial_sum),
        partial_sum_f64: to_f64(&partial_sum),
        partial_sum,
        tail_certificate,
    })
}

/// `Π_j ζ(s v_j) − Σ_{kept} Π_j (1+x_j)^{-s v_j}`, which dominates the omitted terms because
/// `D_λ(n) ≥ Π_j (1+x_j)^{v_j}`.
fn tail_certificate(s: u32, n: usize, kept: &[(YoungDiagram, BigInt)]) -> Option<f64> {
    let v = glm_exponents(n).v;
    let mut full = 1.0;
    for &vj in &v {
        full *= riemann_zeta_upper(s as f64 * vj);
    }
    if !full.is_finite() {
        return None;
    }
    let covered: f64 = kept
        .iter()
        .map(|(lambda, _)| {
            let x = weight_coords(lambda, n).expect("SU(n) diagram").x;
            x.iter()
                .zip(&v)
                .map(|(&xj, &vj)| (1.0 + xj as f64).powf(-(s as f64) * vj))
                .product::<f64>()
        })
        .sum();
    Some((full - covered).max(0.0))
}
