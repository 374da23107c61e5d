use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::dim_rational;
use crate::error::{Error, Result};
use crate::exact::{from_bigint, pow, to_f64, ExactValue, Rational};
use crate::partitions::{partitions_in_box, su_diagram, CutoffSpec, YoungDiagram};
use crate::weingarten::WordMomentEngine;

use super::fourier::{fourier_coefficient, Rep, Route};
use super::word::Word;
use super::zeta::Cutoff;

/// One `SU(n)` irreducible of the cutoff family together with a `U(n)` lift `[μ,ν]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaRep {
    pub mu: YoungDiagram,
    pub nu: YoungDiagram,
    pub su: YoungDiagram,
    #[serde(serialize_with = "crate::surface::expectation::ser_bigint")]
    pub dim: BigInt,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Distinct `SU(n)` irreducibles in the image of the `(μ, ν)` box, each with its smallest lift.
pub fn omega_representatives(spec: CutoffSpec, n: usize) -> Result<Vec<OmegaRep>> {
    // Only pairs with ℓ(μ)+ℓ(ν) ≤ n exist in rank n, so rows are capped before enumerating.
    let cols = spec.b * spec.b;
    let mut pairs: Vec<(YoungDiagram, YoungDiagram)> = partitions_in_box(spec.b.min(n), cols)
        .into_iter()
        .flat_map(|mu| {
            let rest = spec.b.min(n - mu.length());
            partitions_in_box(rest, cols).into_iter().map(move |nu| (mu.clone(), nu))
        })
        .collect();
    pairs.sort_by(|a, b| {
        (a.0.size() + a.1.size())
            .cmp(&(b.0.size() + b.1.size()))
            .then_with(|| a.0.cmp(&b.0))
            .then_with(|| a.1.cmp(&b.1))
    });
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (mu, nu) in pairs {
        let su = su_diagram(&mu, &nu, n)?;
        if seen.insert(su.clone()) {
            let dim = dim_rational(&mu, &nu, n)?;
            out.push(OmegaRep { mu, nu, su, dim });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedTrace {
    pub word: Word,
    pub n: usize,
    pub g: usize,
    pub cutoff: Cutoff,
    pub route: Route,
    pub reps: usize,
    #[serde(skip)]
    pub value: Rational,
    #[serde(rename = "value")]
    pub exact: ExactValue,
    pub value_f64: f64,
    pub numerator: ExactValue,
    pub denominator: ExactValue,
    pub tail_note: String,
}

fn cutoff_reps(cutoff: Cutoff, n: usize) -> Result<Vec<OmegaRep>> {
    match cutoff {
        Cutoff::Omega { b } => omega_representatives(CutoffSpec::new(b)?, n),
        Cutoff::MaxDim { .. } => Ok(cutoff
            .irreps(n)?
            .into_iter()
            .map(|(lambda, dim)| OmegaRep {
                mu: lambda.clone(),
                nu: YoungDiagram::empty(),
                su: lambda,
                dim,
            })
            .collect()),
    }
}

/// `Σ_ρ D_ρ I(w,ρ) / Σ_ρ D_ρ^{-(2g-2)}` over the same finite family of irreducibles.
pub fn expected_trace(
    w: &Word,
    n: usize,
    cutoff: Cutoff,
    route: Route,
    engine: &WordMomentEngine,
) -> Result<ExpectedTrace> {
    let g = w.genus();
    if g < 2 {
        return Err(Error::Precondition(format!("expectations need genus >= 2, got {g}")));
    }
    if n < 2 {
        return Err(Error::Precondition(format!("expectations need n >= 2, got {n}")));
    }
    let reps = cutoff_reps(cutoff, n)?;
    let balanced = w.is_commutator_balanced();
    let terms: Vec<(Rational, Rational)> = reps
        .par_iter()
        .map(|r| {
            let d = from_bigint(r.dim.clone());
            let weight = pow(&d, -(2 * g as i64 - 2));
            if !balanced {
                return Ok((Rational::zero(), weight));
            }
            let rep = if r.nu.is_empty() {
                Rep::poly(r.mu.clone())
            } else {
                Rep::rational(r.mu.clone(), r.nu.clone())
            };
            let coeff = fourier_coefficient(w, &rep, n, route, engine)?;
            Ok((d * coeff.value, weight))
        })
        .collect::<Result<_>>()?;
    let mut numerator = Rational::zero();
    let mut denominator = Rational::zero();
    for (a, b) in terms {
        numerator += a;
        denominator += b;
    }
    let value = &numerator / &denominator;
    let tail_note = match cutoff {
        Cutoff::Omega { b } => format!(
            "omitted representations contribute O(n^({} - 2 log {b})) with non-effective constants; \
             see the shape-level tail majorant",
            w.len()
        ),
        Cutoff::MaxDim { d } => format!("representations of dimension > {d} omitted; no rate attached"),
    };
    Ok(ExpectedTrace {
        word: w.clone(),
        n,
        g,
        cutoff,
        route,
        reps: reps.len(),
        exact: ExactValue::from(&value),
        value_f64: to_f64(&value),
        numerator: ExactValue::from(&numerator),
        denominator: ExactValue::from(&denominator),
        value,
        tail_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn omega_sizes() {
        // B = 1: trivial, standard, dual, adjoint.
        assert_eq!(omega_representatives(CutoffSpec::new(1).unwrap(), 5).unwrap().len(), 4);
        // n = 2: std ≅ dual and the adjoint is the 3-dimensional irrep.
        let small = omega_representatives(CutoffSpec::new(1).unwrap(), 2).unwrap();
        let dims: Vec<i64> = small.iter().map(|r| i64::try_from(&r.dim).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 3]);
        let spec = CutoffSpec::new(2).unwrap();
        let full = omega_representatives(spec, spec.injectivity_threshold()).unwrap();
        assert_eq!(full.len(), spec.box_diagrams().len().pow(2));
    }

    #[test]
    fn identity_word_gives_n() {
        let engine = WordMomentEngine::default();
        for n in 4..=6 {
            for b in 1..=2 {
                let e = expected_trace(&Word::identity(2), n, Cutoff::Omega { b }, Route::Auto, &engine).unwrap();
                assert_eq!(e.value, int(n as i64));
            }
        }
    }

    #[test]
    fn unbalanced_words_vanish() {
        let engine = WordMomentEngine::default();
        for text in ["a", "ab", "aaB"] {
            let w = Word::parse(text, 2).unwrap();
            let e = expected_trace(&w, 5, Cutoff::Omega { b: 1 }, Route::Auto, &engine).unwrap();
            assert!(e.value.is_zero());
        }
    }

    #[test]
    fn commutator_routes_agree() {
        let engine = WordMomentEngine::default();
        let w = Word::parse("abAB", 2).unwrap();
        let a = expected_trace(&w, 6, Cutoff::Omega { b: 1 }, Route::Character, &engine).unwrap();
        let b = expected_trace(&w, 6, Cutoff::Omega { b: 1 }, Route::Weingarten, &engine).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.value, rat(31971, 93172));
    }
}
