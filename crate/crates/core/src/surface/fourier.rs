use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{koike_expand, schur_expand_power_sums, weyl_dimension};
use crate::error::{Error, Result};
use crate::exact::{from_bigint, int, pow, ExactValue, Rational};
use crate::partitions::{signature, YoungDiagram};
use crate::weingarten::{ContractionDiagram, WordMomentEngine};

use super::word::Word;

/// An irreducible representation of `U(n)`, as a polynomial or a rational family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Rep {
    Poly { lambda: YoungDiagram },
    Rational { mu: YoungDiagram, nu: YoungDiagram },
}

impl Rep {
    pub fn poly(lambda: YoungDiagram) -> Self {
        Rep::Poly { lambda }
    }

    pub fn rational(mu: YoungDiagram, nu: YoungDiagram) -> Self {
        Rep::Rational { mu, nu }
    }

    /// The `(μ, ν)` pair; polynomial reps have `ν = ∅`.
    pub fn pair(&self) -> (YoungDiagram, YoungDiagram) {
        match self {
            Rep::Poly { lambda } => (lambda.clone(), YoungDiagram::empty()),
            Rep::Rational { mu, nu } => (mu.clone(), nu.clone()),
        }
    }
}

impl std::fmt::Display for Rep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rep::Poly { lambda } => write!(f, "{lambda}"),
            Rep::Rational { mu, nu } => write!(f, "[{mu},{nu}]"),
        }
    }
}

/// How a Fourier coefficient is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Koike and power-sum expansion, then Weingarten integration of every trace product.
    Weingarten,
    /// Closed form for `w = [a₁,b₁]⋯[a_k,b_k]` via convolution of commutator laws.
    Character,
    /// Character route when it applies, Weingarten otherwise.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourierCoefficient {
    #[serde(skip)]
    pub value: Rational,
    #[serde(rename = "value")]
    pub exact: ExactValue,
    pub rep: Rep,
    pub n: usize,
    pub word: Word,
    pub route: Route,
}

/// `∫ tr(w(x)) · conj(χ_ρ(R_g(x))) dx` over Haar `U(n)^{2g}`.
pub fn fourier_coefficient(
    w: &Word,
    rep: &Rep,
    n: usize,
    route: Route,
    engine: &WordMomentEngine,
) -> Result<FourierCoefficient> {
    let make = |value: Rational, route: Route| FourierCoefficient {
        exact: ExactValue::from(&value),
        value,
        rep: rep.clone(),
        n,
        word: w.clone(),
        route,
    };
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let (mu, nu) = rep.pair();
    if mu.length() + nu.length() > n {
        return match rep {
            // s_λ vanishes identically on U(n) once ℓ(λ) > n.
            Rep::Poly { .. } => Ok(make(Rational::zero(), route)),
            Rep::Rational { .. } => Err(Error::RankTooSmall {
                needed: mu.length() + nu.length(),
                n,
            }),
        };
    }
    if !w.is_commutator_balanced() {
        return Ok(make(Rational::zero(), route));
    }
    let resolved = match route {
        Route::Auto if w.relator_prefix_handles().is_some() => Route::Character,
        Route::Auto => Route::Weingarten,
        r => r,
    };
    let value = match resolved {
        Route::Character => character_route_coefficient(w, &mu, &nu, n)?.ok_or_else(|| {
            Error::Precondition(format!("character route needs w = [a1,b1]...[ak,bk], got '{w}'"))
        })?,
        _ => weingarten_route(w, &mu, &nu, n, engine)?,
    };
    Ok(make(value, resolved))
}

pub fn fourier_coefficient_poly(w: &Word, lambda: &YoungDiagram, n: usize) -> Result<FourierCoefficient> {
    fourier_coefficient(w, &Rep::poly(lambda.clone()), n, Route::Weingarten, &WordMomentEngine::default())
}

pub fn fourier_coefficient_rational(
    w: &Word,
    mu: &YoungDiagram,
    nu: &YoungDiagram,
    n: usize,
) -> Result<FourierCoefficient> {
    fourier_coefficient(
        w,
        &Rep::rational(mu.clone(), nu.clone()),
        n,
        Route::Weingarten,
        &WordMomentEngine::default(),
    )
}

/// `I(w,[μ,ν]) = Σ coeff ∫ tr(w) s_{ν₂}(R⁻¹) s_{ν₃}(R)` with both Schur factors in power sums.
fn weingarten_route(
    w: &Word,
    mu: &YoungDiagram,
    nu: &YoungDiagram,
    n: usize,
    engine: &WordMomentEngine,
) -> Result<Rational> {
    let g = w.genus();
    let relator = Word::relator(g);
    let relator_inv = relator.inverse();
    let expansion = koike_expand(mu, nu)?;

    let mut diagrams: HashMap<ContractionDiagram, Rational> = HashMap::new();
    for term in &expansion.terms {
        let left = schur_expand_power_sums(&term.nu2)?;
        let right = schur_expand_power_sums(&term.nu3)?;
        for (kappa, c1) in &left {
            for (kappa2, c2) in &right {
                let mut cycles = Vec::new();
                if !w.is_empty() {
                    cycles.push(w.letters().to_vec());
                }
                for &k in kappa.rows() {
                    cycles.push(relator_inv.power(k).letters().to_vec());
                }
                for &k in kappa2.rows() {
                    cycles.push(relator.power(k).letters().to_vec());
                }
                let d = ContractionDiagram::new(g, cycles)?.normalized();
                *diagrams.entry(d).or_insert_with(Rational::zero) += int(term.coeff) * c1 * c2;
            }
        }
    }
    let mut ordered: Vec<(ContractionDiagram, Rational)> =
        diagrams.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    ordered.sort_by(|a, b| a.0.cycles.cmp(&b.0.cycles));
    let parts: Vec<Rational> = ordered
        .par_iter()
        .map(|(d, c)| engine.integrate(d, n).map(|v| v * c))
        .collect::<Result<_>>()?;
    let total: Rational = parts.into_iter().sum();
    Ok(if w.is_empty() { total * int(n as i64) } else { total })
}

/// `D_ρ^{-2(g-k)} Σ_{σ ⊂ std⊗ρ*} D_σ^{-(2k-1)}` for `w = [a₁,b₁]⋯[a_k,b_k]`; `None` for other words.
pub fn character_route_coefficient(
    w: &Word,
    mu: &YoungDiagram,
    nu: &YoungDiagram,
    n: usize,
) -> Result<Option<Rational>> {
    let Some(k) = w.relator_prefix_handles() else {
        return Ok(None);
    };
    let g = w.genus() as i64;
    let f = signature(mu, nu, n)?;
    let d_rho = from_bigint(weyl_dimension(&f));
    let dual: Vec<i64> = f.iter().rev().map(|v| -v).collect();
    let mut inner = Rational::zero();
    for i in 0..n {
        if i > 0 && dual[i - 1] <= dual[i] {
            continue;
        }
        let mut h = dual.clone();
        h[i] += 1;
        let d_sigma = Rational::from_integer(weyl_dimension(&h));
        inner += pow(&d_sigma, -(2 * k as i64 - 1));
    }
    Ok(Some(pow(&d_rho, -2 * (g - k as i64)) * inner))
}
