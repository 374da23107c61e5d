use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::dim_un;
use crate::error::{Error, Result};
use crate::exact::{pow, to_f64, ExactValue, Rational};
use crate::partitions::{count_ssyt, horizontally_contained, weight_coords, CutoffSpec, SkewShape, YoungDiagram};

use super::word::Word;

/// Exponents `v_j` with `D_λ(n) ≥ Π_j (1+x_j(λ))^{v_j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlmExponents {
    pub n: usize,
    /// `v[j-1]` is `v_j`, `j = 1..n-1`.
    pub v: Vec<f64>,
}

/// `v_j = j·max(1, log(n−1) − log j)` for `j ≤ n/2`, mirrored by `v_{n−j} = v_j`.
pub fn glm_exponents(n: usize) -> GlmExponents {
    let m = n.saturating_sub(1);
    let log_m = (m.max(1) as f64).ln();
    let v = (1..=m)
        .map(|j| {
            let jj = j.min(n - j) as f64;
            jj * (log_m - jj.ln()).max(1.0)
        })
        .collect();
    GlmExponents { n, v }
}

/// Full-length `λ` is first reduced to its `SU(n)` diagram, which has the same dimension.
pub fn glm_lower_bound(lambda: &YoungDiagram, n: usize) -> Result<f64> {
    let reduced;
    let lambda = if n > 0 && lambda.length() == n {
        let last = lambda.row(n - 1);
        reduced = YoungDiagram::new(lambda.rows().iter().map(|r| r - last).collect())?;
        &reduced
    } else {
        lambda
    };
    let x = weight_coords(lambda, n)?.x;
    let v = glm_exponents(n).v;
    Ok(x.iter().zip(&v).map(|(&xj, &vj)| (1.0 + xj as f64).powf(vj)).product())
}

/// Contribution of the index tuples with a given number of distinct entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitTerm {
    pub distinct: usize,
    /// Number of `S_n`-orbits of index tuples with that many distinct entries.
    pub orbits: u64,
    pub term: ExactValue,
    pub term_f64: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub word: Word,
    pub lambda: YoungDiagram,
    pub n: usize,
    pub g: usize,
    pub c: u64,
    #[serde(skip)]
    pub majorant: Rational,
    #[serde(rename = "majorant")]
    pub exact: ExactValue,
    pub majorant_f64: f64,
    pub per_orbit: Vec<OrbitTerm>,
    /// `n^{|w|} (Π_j (1+x_j))^C / D_λ(n)^{2g−1}`; needs `ℓ(λ) ≤ n−1`.
    pub simplified: Option<ExactValue>,
    pub simplified_f64: Option<f64>,
}

fn stirling2(m: usize, k: usize) -> u64 {
    let mut s = vec![vec![0u64; k + 1]; m + 1];
    s[0][0] = 1;
    for i in 1..=m {
        for j in 1..=k.min(i) {
            s[i][j] = j as u64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[m][k]
}

fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n as i64 - i as i64))
}

/// Exact single-representation majorant for `|I(w, λ)|`, summed over orbit types of index tuples.
///
/// The identity word is read as `tr(1) = Σ_i δ_ii`, one index and no letters.
pub fn single_lambda_majorant(w: &Word, lambda: &YoungDiagram, n: usize) -> Result<BoundReport> {
    if lambda.length() > n {
        return Err(Error::RankTooSmall {
            needed: lambda.length(),
            n,
        });
    }
    let g = w.genus();
    let wl = w.len();
    let indices = wl.max(1);
    let d_lambda = dim_un(lambda, n);
    let d_pow = pow(&d_lambda, -(2 * g as i64));
    let letter_exp = (4 * g * wl) as u32;
    let sst_exp = (4 * g) as u32;

    let mut per_orbit = Vec::new();
    let mut majorant = Rational::zero();
    for distinct in 1..=indices.min(n) {
        let orbits = stirling2(indices, distinct);
        let m = n - distinct;
        let mut inner = BigInt::zero();
        for mu in lambda.subdiagrams() {
            if mu.length() > m || !horizontally_contained(&mu, lambda, distinct) {
                continue;
            }
            let d_mu = dim_un(&mu, m).to_integer();
            let skew = SkewShape::new(lambda.clone(), mu.clone())?;
            let sst = BigInt::from(count_ssyt(&skew, m as i64 + 1, n as i64));
            let spread = BigInt::from(skew.size() + wl);
            inner += d_mu * spread.pow(letter_exp) * sst.pow(sst_exp);
        }
        let term = Rational::from_integer(BigInt::from(orbits) * falling(n, distinct) * inner) * &d_pow;
        majorant += &term;
        per_orbit.push(OrbitTerm {
            distinct,
            orbits,
            term_f64: to_f64(&term),
            term: ExactValue::from(&term),
        });
    }

    let c = 4 * g as u64 * ((wl * wl) as u64 + (1u64 << wl));
    let simplified = if lambda.length() < n {
        let x = weight_coords(lambda, n)?.x;
        let prod: BigInt = x.iter().map(|&xj| BigInt::from(1 + xj)).product();
        let value = Rational::from_integer(BigInt::from(n).pow(wl as u32) * prod.pow(c as u32))
            * pow(&d_lambda, -(2 * g as i64 - 1));
        Some(value)
    } else {
        None
    };
    Ok(BoundReport {
        word: w.clone(),
        lambda: lambda.clone(),
        n,
        g,
        c,
        exact: ExactValue::from(&majorant),
        majorant_f64: to_f64(&majorant),
        majorant,
        per_orbit,
        simplified_f64: simplified.as_ref().map(to_f64),
        simplified: simplified.as_ref().map(ExactValue::from),
    })
}

/// Shape-level majorant for the omitted part of the Fourier sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TailMajorant {
    Value {
        value: f64,
        log10: f64,
        c: u64,
        label: &'static str,
    },
    NotApplicable {
        c: u64,
        reason: String,
    },
}

impl TailMajorant {
    pub fn value(&self) -> Option<f64> {
        match self {
            TailMajorant::Value { value, .. } => Some(*value),
            TailMajorant::NotApplicable { .. } => None,
        }
    }

    pub fn log10(&self) -> Option<f64> {
        match self {
            TailMajorant::Value { log10, .. } => Some(*log10),
            TailMajorant::NotApplicable { .. } => None,
        }
    }
}

/// `Σ_{k≥p} k^{-σ}`, bounded by the better of two integral comparisons.
fn zeta_tail(p: usize, sigma: f64) -> f64 {
    let pf = p as f64;
    let from_p = pf.powf(-sigma) + pf.powf(1.0 - sigma) / (sigma - 1.0);
    if p >= 2 {
        from_p.min((pf - 1.0).powf(1.0 - sigma) / (sigma - 1.0))
    } else {
        from_p
    }
}

/// Exponents beyond this index are covered by a geometric bound instead of a loop.
const DIRECT_TERMS: usize = 1_000_000;

/// `n^{|w|}·[Σ_{j≤B} ζ^{(B+1)}(2v_j−C) + Σ_{B<j≤n/2} ζ^{(2)}(2v_j−C)]·Π_j ζ(2v_j−C)`.
pub fn tail_majorant(w: &Word, spec: CutoffSpec, n: usize) -> TailMajorant {
    let g = w.genus() as u64;
    let wl = w.len() as u64;
    let c = 4 * g * (wl * wl + (1u64 << wl));
    let cf = c as f64;
    let b = spec.b;
    if n < 3 || 2.0 * ((n - 1) as f64).ln() - cf <= 2.0 {
        return TailMajorant::NotApplicable {
            c,
            reason: format!("needs 2 log(n-1) - C > 2 with C = {c}"),
        };
    }
    let size_floor = 2 * b as u64 * (2 * b as u64).max(c + 1);
    if (n as u64) < size_floor {
        return TailMajorant::NotApplicable {
            c,
            reason: format!("needs n >= {size_floor}"),
        };
    }
    let v = glm_exponents(n).v;
    let half = n / 2;
    let direct = half.min(DIRECT_TERMS);
    let mut first = 0.0;
    let mut second = 0.0;
    let mut log_prod = 0.0;
    for j in 1..=direct {
        let sigma = 2.0 * v[j - 1] - cf;
        if j <= b {
            first += zeta_tail(b + 1, sigma);
        } else {
            second += zeta_tail(2, sigma);
        }
        // v_j = v_{n−j}: count both mirror indices, once for the middle when n is even.
        let copies = if 2 * j == n { 1.0 } else { 2.0 };
        log_prod += copies * (1.0 + zeta_tail(2, sigma)).ln();
    }
    if half > direct {
        // v_j ≥ j, so ζ^{(2)}(2v_j − C) ≤ 2^{1+C-2j} and the rest sums geometrically.
        let rest = 2f64.powf(cf + 1.0) * 4f64.powi(-(direct as i32).min(1000)) / 3.0;
        second += rest;
        log_prod += 2.0 * rest;
    }
    let ln_value = wl as f64 * (n as f64).ln() + (first + second).ln() + log_prod;
    TailMajorant::Value {
        value: ln_value.exp(),
        log10: ln_value / std::f64::consts::LN_10,
        c,
        label: "shape-level",
    }
}
