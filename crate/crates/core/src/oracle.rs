//! Monte Carlo estimates of Haar integrals over `U(n)` and `SU(n)`.
//!
//! Samples are drawn in fixed-size blocks. Block `b` uses a ChaCha8 generator seeded with the
//! master seed on stream `b`, and block sums are merged in block order, so an estimate depends
//! only on `(seed, samples)` and not on how many worker threads ran it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::characters::{koike_expand, schur_expand_power_sums};
use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::partitions::YoungDiagram;
use crate::surface::{Rep, Word};

pub type Matrix = DMatrix<Complex64>;

/// Samples per block; also the unit of work handed to a worker.
pub const BLOCK: usize = 4096;

/// Unitarity and determinant tolerance checked on every sample.
pub const TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Group {
    U,
    SU,
}

#[derive(Debug, Clone)]
pub struct HaarSample {
    pub n: usize,
    pub group: Group,
    pub matrices: Vec<Matrix>,
}

fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// One Haar-distributed matrix: QR of a Ginibre matrix with the phases of `R`'s diagonal moved into `Q`.
pub fn sample_unitary<R: Rng + ?Sized>(n: usize, group: Group, rng: &mut R) -> Matrix {
    assert!(n >= 1, "n must be positive");
    let qr = ginibre(n, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    if group == Group::SU {
        let det = q.determinant();
        let branch = rng.random_range(0..n) as f64;
        let angle = (-det.arg() + 2.0 * std::f64::consts::PI * branch) / n as f64;
        q *= Complex64::from_polar(1.0, angle);
    }
    q
}

/// `count` independent Haar matrices.
pub fn sample_haar<R: Rng + ?Sized>(n: usize, count: usize, group: Group, rng: &mut R) -> HaarSample {
    HaarSample {
        n,
        group,
        matrices: (0..count).map(|_| sample_unitary(n, group, rng)).collect(),
    }
}

/// `max |U U* − I|` entrywise.
pub fn unitarity_defect(u: &Matrix) -> f64 {
    let n = u.nrows();
    let p = u * u.adjoint() - Matrix::identity(n, n);
    p.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl HaarSample {
    /// Panics when a matrix is not unitary, or an `SU` matrix has determinant away from 1.
    pub fn assert_valid(&self) {
        for u in &self.matrices {
            let defect = unitarity_defect(u);
            assert!(defect <= TOLERANCE, "unitarity defect {defect}");
            if self.group == Group::SU {
                let det = u.determinant();
                assert!((det - 1.0).norm() <= TOLERANCE, "determinant {det}");
            }
        }
    }
}

/// `w(x)` as a matrix; an inverse letter is the adjoint.
pub fn word_matrix(w: &Word, matrices: &[Matrix], n: usize) -> Matrix {
    let mut acc = Matrix::identity(n, n);
    for l in w.letters() {
        let m = &matrices[l.letter];
        acc = if l.exp > 0 { acc * m } else { acc * m.adjoint() };
    }
    acc
}

pub fn evaluate_word(w: &Word, sample: &HaarSample) -> Complex64 {
    if w.is_empty() {
        return Complex64::new(sample.n as f64, 0.0);
    }
    word_matrix(w, &sample.matrices, sample.n).trace()
}

/// `p[k] = tr(u^k)` for `k = 0..=max`.
pub fn power_sums(u: &Matrix, max: usize) -> Vec<Complex64> {
    let n = u.nrows();
    let mut out = vec![Complex64::new(n as f64, 0.0)];
    let mut power = Matrix::identity(n, n);
    for _ in 0..max {
        power = &power * u;
        out.push(power.trace());
    }
    out
}

/// `s_λ` as a combination of power-sum products, ready for repeated evaluation.
#[derive(Debug, Clone)]
struct SchurPoly {
    terms: Vec<(Vec<usize>, f64)>,
}

impl SchurPoly {
    fn new(lambda: &YoungDiagram) -> Result<Self> {
        let terms = schur_expand_power_sums(lambda)?
            .into_iter()
            .map(|(kappa, c)| (kappa.rows().to_vec(), to_f64(&c)))
            .collect();
        Ok(SchurPoly { terms })
    }

    fn eval(&self, p: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(kappa, c)| kappa.iter().map(|&k| p[k]).product::<Complex64>() * *c)
            .sum()
    }
}

/// Character of an irreducible `U(n)` representation, evaluated from power sums.
#[derive(Debug, Clone)]
pub struct CharacterEvaluator {
    terms: Vec<(f64, SchurPoly, SchurPoly)>,
    degree: usize,
}

impl CharacterEvaluator {
    /// Polynomial reps use `s_λ` directly; rational reps go through the gated Koike expansion.
    pub fn new(rep: &Rep) -> Result<Self> {
        let (mu, nu) = rep.pair();
        let terms = if nu.is_empty() {
            vec![(1.0, SchurPoly::new(&mu)?, SchurPoly::new(&YoungDiagram::empty())?)]
        } else {
            koike_expand(&mu, &nu)?
                .terms
                .iter()
                .map(|t| Ok((t.coeff as f64, SchurPoly::new(&t.nu2)?, SchurPoly::new(&t.nu3)?)))
                .collect::<Result<_>>()?
        };
        Ok(CharacterEvaluator {
            terms,
            degree: mu.size().max(nu.size()),
        })
    }

    /// Uses `s_ν(u⁻¹) = conj(s_ν(u))` for unitary `u`.
    pub fn eval(&self, u: &Matrix) -> Complex64 {
        let p = power_sums(u, self.degree);
        self.terms
            .iter()
            .map(|(c, left, right)| left.eval(&p) * right.eval(&p).conj() * *c)
            .sum()
    }
}

pub fn evaluate_schur(rep: &Rep, u: &Matrix) -> Result<Complex64> {
    Ok(CharacterEvaluator::new(rep)?.eval(u))
}

fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    #[serde(serialize_with = "ser_complex")]
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// Distance from `target` in standard errors; infinite for a zero-variance miss.
    pub fn z_score(&self, target: Complex64) -> f64 {
        let diff = (self.mean - target).norm();
        if diff == 0.0 {
            0.0
        } else if self.stderr == 0.0 {
            f64::INFINITY
        } else {
            diff / self.stderr
        }
    }

    pub fn within(&self, target: Complex64, k: f64) -> bool {
        self.z_score(target) <= k || (self.mean - target).norm() <= 1e-12
    }
}

/// Mean and standard error of `f` over `samples` draws from the blocked generator family.
pub fn mc_estimate<F>(samples: usize, seed: u64, f: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> Complex64 + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    let sums: Vec<(Complex64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let count = BLOCK.min(samples - b * BLOCK);
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sq = 0.0;
            for _ in 0..count {
                let z = f(&mut rng);
                sum += z;
                sq += z.norm_sqr();
            }
            (sum, sq)
        })
        .collect();
    let (sum, sq) = sums
        .into_iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(a, b), (s, q)| (a + s, b + q));
    let nf = samples as f64;
    let mean = if samples == 0 { sum } else { sum / nf };
    let var = if samples > 1 {
        ((sq - nf * mean.norm_sqr()) / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    McEstimate {
        mean,
        stderr: (var / nf.max(1.0)).sqrt(),
        samples,
        seed,
    }
}

/// Estimate of `∫ tr(w(x)) · conj(χ_ρ(R_g(x))) dx` over Haar `x ∈ G^{2g}`.
pub fn mc_integral(w: &Word, rep: &Rep, n: usize, group: Group, samples: usize, seed: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let g = w.genus();
    let chi = CharacterEvaluator::new(rep)?;
    let relator = Word::relator(g);
    Ok(mc_estimate(samples, seed, |rng| {
        let sample = sample_haar(n, 2 * g, group, rng);
        sample.assert_valid();
        let trace = evaluate_word(w, &sample);
        let r = word_matrix(&relator, &sample.matrices, n);
        trace * chi.eval(&r).conj()
    }))
}

/// Estimate of `∫ |χ_{[μ,ν]}(u)|² du` over Haar `U(n)`.
pub fn mc_orthonormality(mu: &YoungDiagram, nu: &YoungDiagram, n: usize, samples: usize, seed: u64) -> Result<McEstimate> {
    if n < mu.length() + nu.length() {
        return Err(Error::RankTooSmall {
            needed: mu.length() + nu.length(),
            n,
        });
    }
    let chi = CharacterEvaluator::new(&Rep::rational(mu.clone(), nu.clone()))?;
    Ok(mc_estimate(samples, seed, |rng| {
        let u = sample_unitary(n, Group::U, rng);
        let defect = unitarity_defect(&u);
        assert!(defect <= TOLERANCE, "unitarity defect {defect}");
        Complex64::new(chi.eval(&u).norm_sqr(), 0.0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5 {
            for group in [Group::U, Group::SU] {
                let s = sample_haar(n, 4, group, &mut rng);
                s.assert_valid();
                for u in &s.matrices {
                    for j in 0..n {
                        assert!((u.column(j).norm() - 1.0).abs() < TOLERANCE);
                    }
                }
            }
        }
    }

    #[test]
    fn u1_phase_is_uniform() {
        let est = mc_estimate(100_000, 3, |rng| sample_unitary(1, Group::U, rng)[(0, 0)]);
        assert!(est.within(c(0.0), 4.0), "{est:?}");
        // Second moment of a uniform phase vanishes too.
        let est = mc_estimate(100_000, 4, |rng| sample_unitary(1, Group::U, rng)[(0, 0)].powi(2));
        assert!(est.within(c(0.0), 4.0), "{est:?}");
    }

    #[test]
    fn su2_trace_moments() {
        // ∫ tr(u)² over SU(2) is 1; over U(2) it is 0.
        let su = mc_estimate(50_000, 5, |rng| sample_unitary(2, Group::SU, rng).trace().powi(2));
        assert!(su.within(c(1.0), 4.0), "{su:?}");
        let u = mc_estimate(50_000, 5, |rng| sample_unitary(2, Group::U, rng).trace().powi(2));
        assert!(u.within(c(0.0), 4.0), "{u:?}");
    }

    #[test]
    fn schur_evaluations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = sample_unitary(4, Group::U, &mut rng);
        let tr = u.trace();
        let s1 = evaluate_schur(&Rep::poly(yd(&[1])), &u).unwrap();
        assert!((s1 - tr).norm() < 1e-12);
        let s2 = evaluate_schur(&Rep::poly(yd(&[2])), &u).unwrap();
        let s11 = evaluate_schur(&Rep::poly(yd(&[1, 1])), &u).unwrap();
        assert!((s2 + s11 - tr * tr).norm() < 1e-8);
        // [1,1] is the adjoint: |tr u|² − 1.
        let adj = evaluate_schur(&Rep::rational(yd(&[1]), yd(&[1])), &u).unwrap();
        assert!((adj - (tr.norm_sqr() - 1.0)).norm() < 1e-10);
        let id = Matrix::identity(3, 3);
        assert!((evaluate_schur(&Rep::poly(yd(&[2, 1])), &id).unwrap() - 8.0).norm() < 1e-12);
        let s = sample_haar(3, 4, Group::U, &mut rng);
        assert_eq!(evaluate_word(&Word::identity(2), &s), c(3.0));
    }

    #[test]
    fn integral_examples() {
        let e = Word::identity(2);
        let est = mc_integral(&e, &Rep::poly(yd(&[1])), 2, Group::U, 200_000, 42).unwrap();
        assert!(est.within(c(0.25), 4.0), "{est:?}");
        let w = Word::parse("abAB", 2).unwrap();
        let est = mc_integral(&w, &Rep::poly(YoungDiagram::empty()), 3, Group::U, 50_000, 42).unwrap();
        assert!(est.within(c(1.0 / 3.0), 4.0), "{est:?}");
        let a = Word::parse("a", 2).unwrap();
        let est = mc_integral(&a, &Rep::poly(yd(&[1])), 3, Group::SU, 50_000, 42).unwrap();
        assert!(est.within(c(0.0), 4.0), "{est:?}");
    }

    #[test]
    fn orthonormality() {
        let e = YoungDiagram::empty();
        let est = mc_orthonormality(&e, &e, 3, 1000, 1).unwrap();
        assert_eq!(est.mean, c(1.0));
        assert_eq!(est.stderr, 0.0);
        for (mu, nu) in [(yd(&[1]), e.clone()), (yd(&[1]), yd(&[1]))] {
            let est = mc_orthonormality(&mu, &nu, 3, 100_000, 9).unwrap();
            assert!(est.within(c(1.0), 4.0), "{mu} {nu} {est:?}");
        }
    }

    #[test]
    fn translation_invariance() {
        // Left-multiplying every sample by a fixed unitary does not move the estimate.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let v = sample_unitary(3, Group::U, &mut rng);
        let chi = CharacterEvaluator::new(&Rep::poly(yd(&[1]))).unwrap();
        let plain = mc_estimate(60_000, 1, |rng| c(chi.eval(&sample_unitary(3, Group::U, rng)).norm_sqr()));
        let moved = mc_estimate(60_000, 1, |rng| c(chi.eval(&(&v * sample_unitary(3, Group::U, rng))).norm_sqr()));
        let se = (plain.stderr.powi(2) + moved.stderr.powi(2)).sqrt();
        assert!((plain.mean - moved.mean).norm() <= 4.0 * se);
    }

    #[test]
    fn seeded_determinism_across_workers() {
        let w = Word::parse("abAB", 2).unwrap();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mc_integral(&w, &Rep::poly(yd(&[1])), 3, Group::U, 3 * BLOCK + 17, 5).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert_eq!(one, run(1));
        assert_ne!(one.mean, run_seed(&w, 6));
    }

    fn run_seed(w: &Word, seed: u64) -> Complex64 {
        mc_integral(w, &Rep::poly(yd(&[1])), 3, Group::U, 3 * BLOCK + 17, seed).unwrap().mean
    }
}
