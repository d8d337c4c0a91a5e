use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmath::{ComplexMatrix, DensityMatrix};
use crate::scalar::{c, cr, Complex, Real};

use super::{MeasureError, Result};

/// How random inputs are drawn beyond the fixed candidate families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingStrategy {
    /// Fixed candidates only.
    AnalyticCandidates,
    RandomPure,
    /// Rank-`k` states; pairs get orthogonal supports when `2k ≤ d`.
    RandomMixedRank(usize),
    RandomOrthogonalPairs,
    /// Products built from single-qubit optima with random partners.
    ProductOf1qOptima,
}

impl fmt::Display for SamplingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AnalyticCandidates => f.write_str("analytic_candidates"),
            Self::RandomPure => f.write_str("random_pure"),
            Self::RandomMixedRank(k) => write!(f, "random_mixed_rank_{k}"),
            Self::RandomOrthogonalPairs => f.write_str("random_orthogonal_pairs"),
            Self::ProductOf1qOptima => f.write_str("product_of_1q_optima"),
        }
    }
}

impl FromStr for SamplingStrategy {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "analytic_candidates" | "analytic" => Self::AnalyticCandidates,
            "random_pure" => Self::RandomPure,
            "random_orthogonal_pairs" => Self::RandomOrthogonalPairs,
            "product_of_1q_optima" => Self::ProductOf1qOptima,
            _ => {
                let k = s
                    .strip_prefix("random_mixed_rank_")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|k| (1..=4).contains(k))
                    .ok_or_else(|| MeasureError::InvalidSampler(format!("unknown strategy `{s}`")))?;
                Self::RandomMixedRank(k)
            }
        })
    }
}

/// Seeded source of candidate inputs for the state-optimized measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSampler {
    pub strategy: SamplingStrategy,
    /// Number of random draws on top of the fixed candidates.
    pub budget: usize,
    pub seed: u64,
}

/// A labelled input state.
pub type Candidate<R> = (String, DensityMatrix<R>);
/// A labelled input pair.
pub type CandidatePair<R> = (String, DensityMatrix<R>, DensityMatrix<R>);

const BLP_STREAM: u64 = 1;
const LFS_STREAM: u64 = 2;

impl StateSampler {
    pub fn new(strategy: SamplingStrategy, budget: usize, seed: u64) -> Self {
        Self { strategy, budget, seed }
    }

    pub fn analytic() -> Self {
        Self::new(SamplingStrategy::AnalyticCandidates, 0, 0)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn random_count(&self) -> usize {
        match self.strategy {
            SamplingStrategy::AnalyticCandidates => 0,
            _ => self.budget,
        }
    }

    /// Fixed pairs followed by `budget` random pairs.
    pub fn pairs<R: Real>(&self, dim: usize) -> Result<Vec<CandidatePair<R>>> {
        let mut out = analytic_pairs(dim)?;
        let mut rng = self.rng(BLP_STREAM);
        for _ in 0..self.random_count() {
            let (a, b) = match self.strategy {
                SamplingStrategy::RandomMixedRank(k) => mixed_pair(dim, k, &mut rng)?,
                SamplingStrategy::ProductOf1qOptima => product_pair(dim, &mut rng)?,
                _ => {
                    let (u, v) = orthonormal_pair(dim, &mut rng);
                    (DensityMatrix::pure(&u)?, DensityMatrix::pure(&v)?)
                }
            };
            out.push(("random".into(), a, b));
        }
        Ok(out)
    }

    /// Fixed states followed by `budget` random states.
    pub fn states<R: Real>(&self, dim: usize) -> Result<Vec<Candidate<R>>> {
        let mut out = analytic_states(dim)?;
        let mut rng = self.rng(LFS_STREAM);
        for _ in 0..self.random_count() {
            let rho = match self.strategy {
                SamplingStrategy::RandomPure => DensityMatrix::pure(&haar_ket(dim, &mut rng))?,
                SamplingStrategy::RandomMixedRank(k) => random_mixed(dim, k.min(dim), &mut rng)?,
                SamplingStrategy::ProductOf1qOptima => {
                    let p = R::lit(rng.gen::<f64>());
                    let one = DensityMatrix::diagonal(&[R::one() - p, p])?;
                    if dim == 2 { one } else { one.tensor(&one) }
                }
                _ => random_mixed(dim, dim, &mut rng)?,
            };
            out.push(("random".into(), rho));
        }
        Ok(out)
    }
}

/// Haar-random unit vector.
pub fn haar_ket<R: Real>(dim: usize, rng: &mut impl Rng) -> Vec<Complex<R>> {
    loop {
        let v: Vec<Complex<R>> = (0..dim)
            .map(|_| c(R::lit(rng.sample(StandardNormal)), R::lit(rng.sample(StandardNormal))))
            .collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt();
        if n > R::lit(1e-8) {
            return v.into_iter().map(|z| z / cr(n)).collect();
        }
    }
}

fn orthonormal_pair<R: Real>(dim: usize, rng: &mut impl Rng) -> (Vec<Complex<R>>, Vec<Complex<R>>) {
    let u = haar_ket::<R>(dim, rng);
    loop {
        let w = haar_ket::<R>(dim, rng);
        let overlap: Complex<R> = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
        let v: Vec<_> = w.iter().zip(&u).map(|(b, a)| *b - *a * overlap).collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt();
        if n > R::lit(1e-6) {
            return (u, v.into_iter().map(|z| z / cr(n)).collect());
        }
    }
}

/// Random rank-`k` state `G G† / Tr(G G†)` from a `d × k` Ginibre matrix.
pub fn random_mixed<R: Real>(dim: usize, rank: usize, rng: &mut impl Rng) -> Result<DensityMatrix<R>> {
    let cols: Vec<Vec<Complex<R>>> = (0..rank).map(|_| haar_ket(dim, rng)).collect();
    let weights: Vec<R> = (0..rank).map(|_| R::lit(rng.gen::<f64>()) + R::lit(1e-3)).collect();
    mixture(&cols, &weights)
}

fn mixture<R: Real>(kets: &[Vec<Complex<R>>], weights: &[R]) -> Result<DensityMatrix<R>> {
    let dim = kets[0].len();
    let total: R = weights.iter().copied().sum();
    let mut m = ComplexMatrix::zeros(dim);
    for (k, w) in kets.iter().zip(weights) {
        m = &m + &ComplexMatrix::outer(k, k).scale_real(*w / total);
    }
    Ok(DensityMatrix::new(m)?)
}

fn mixed_pair<R: Real>(dim: usize, rank: usize, rng: &mut impl Rng) -> Result<(DensityMatrix<R>, DensityMatrix<R>)> {
    let rank = rank.clamp(1, dim);
    if 2 * rank > dim {
        return Ok((random_mixed(dim, rank, rng)?, random_mixed(dim, rank, rng)?));
    }
    // orthogonal supports from one orthonormal frame
    let mut frame: Vec<Vec<Complex<R>>> = Vec::new();
    while frame.len() < 2 * rank {
        let mut v = haar_ket::<R>(dim, rng);
        for u in &frame {
            let ov: Complex<R> = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in v.iter_mut().zip(u) {
                *x -= *a * ov;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt();
        if n > R::lit(1e-6) {
            frame.push(v.into_iter().map(|z| z / cr(n)).collect());
        }
    }
    let w1: Vec<R> = (0..rank).map(|_| R::lit(rng.gen::<f64>()) + R::lit(1e-3)).collect();
    let w2: Vec<R> = (0..rank).map(|_| R::lit(rng.gen::<f64>()) + R::lit(1e-3)).collect();
    Ok((mixture(&frame[..rank], &w1)?, mixture(&frame[rank..], &w2)?))
}

fn equatorial<R: Real>(phi: R, sign: R) -> Vec<Complex<R>> {
    let s = R::lit(0.5).sqrt();
    vec![cr(s), Complex::from_polar(s * sign, phi)]
}

fn product_pair<R: Real>(dim: usize, rng: &mut impl Rng) -> Result<(DensityMatrix<R>, DensityMatrix<R>)> {
    let phi = R::lit(rng.gen::<f64>() * std::f64::consts::TAU);
    let a = DensityMatrix::pure(&equatorial(phi, R::one()))?;
    let b = DensityMatrix::pure(&equatorial(phi, -R::one()))?;
    if dim == 2 {
        return Ok((a, b));
    }
    let partner = DensityMatrix::pure(&haar_ket::<R>(2, rng))?;
    Ok((a.tensor(&partner), b.tensor(&partner)))
}

fn kron_ket<R: Real>(a: &[Complex<R>], b: &[Complex<R>]) -> Vec<Complex<R>> {
    a.iter().flat_map(|x| b.iter().map(move |y| *x * *y)).collect()
}

fn pure<R: Real>(re: &[f64]) -> Result<DensityMatrix<R>> {
    let n = re.iter().map(|x| x * x).sum::<f64>().sqrt();
    let ket: Vec<Complex<R>> = re.iter().map(|x| cr(R::lit(x / n))).collect();
    Ok(DensityMatrix::pure(&ket)?)
}

/// Pairs that are optimal for some model: equatorial antipodes and Bell pairs.
pub fn analytic_pairs<R: Real>(dim: usize) -> Result<Vec<CandidatePair<R>>> {
    let mut out = Vec::new();
    match dim {
        2 => {
            out.push(("plus_minus_pair".into(), pure(&[1.0, 1.0])?, pure(&[1.0, -1.0])?));
            out.push(("basis_pair".into(), pure(&[1.0, 0.0])?, pure(&[0.0, 1.0])?));
        }
        4 => {
            let (p, m, g) = ([1.0, 1.0], [1.0, -1.0], [1.0, 0.0]);
            let kp = |a: &[f64; 2], b: &[f64; 2]| -> Vec<f64> { a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect() };
            out.push(("plus_minus_ground_pair".into(), pure(&kp(&p, &g))?, pure(&kp(&m, &g))?));
            out.push(("plus_minus_plus_pair".into(), pure(&kp(&p, &p))?, pure(&kp(&m, &p))?));
            out.push(("pm_pm_pair".into(), pure(&kp(&p, &p))?, pure(&kp(&m, &m))?));
            out.push(("pm_mp_pair".into(), pure(&kp(&p, &m))?, pure(&kp(&m, &p))?));
            out.push(("bell_phi_pair".into(), pure(&[1.0, 0.0, 0.0, 1.0])?, pure(&[1.0, 0.0, 0.0, -1.0])?));
            out.push(("bell_psi_pair".into(), pure(&[0.0, 1.0, 1.0, 0.0])?, pure(&[0.0, 1.0, -1.0, 0.0])?));
        }
        _ => return Err(MeasureError::InvalidSampler(format!("dimension {dim}"))),
    }
    Ok(out)
}

/// States used by the information-flux measures: the maximally mixed state,
/// diagonal and rank-2 `½ ± ε` families, rank-4 `¼ + ε` families and Bell states.
pub fn analytic_states<R: Real>(dim: usize) -> Result<Vec<Candidate<R>>> {
    let mut out: Vec<Candidate<R>> = vec![("max_mixed".into(), DensityMatrix::maximally_mixed(dim))];
    let diag = |p: &[f64]| DensityMatrix::diagonal(&p.iter().map(|x| R::lit(*x)).collect::<Vec<_>>());
    let ps = [0.1, 0.25, 0.4, 0.6, 0.75, 0.9];
    match dim {
        2 => {
            for eps in [0.02, 0.1, 0.25] {
                out.push(("rank2_eps".into(), diag(&[0.5 + eps, 0.5 - eps])?));
                out.push(("rank2_eps".into(), diag(&[0.5 - eps, 0.5 + eps])?));
            }
            for p in ps {
                out.push(("diag".into(), diag(&[1.0 - p, p])?));
            }
            out.push(("pure_plus".into(), pure(&[1.0, 1.0])?));
        }
        4 => {
            for eps in [0.02, 0.1, 0.25] {
                for (i, j) in [(0, 3), (1, 2), (0, 1), (0, 2)] {
                    let mut p = [0.0; 4];
                    p[i] = 0.5 + eps;
                    p[j] = 0.5 - eps;
                    out.push(("rank2_eps".into(), diag(&p)?));
                }
                // Bell-basis rank-2 mixtures
                let phi = [pure::<R>(&[1.0, 0.0, 0.0, 1.0])?, pure::<R>(&[1.0, 0.0, 0.0, -1.0])?];
                let psi = [pure::<R>(&[0.0, 1.0, 1.0, 0.0])?, pure::<R>(&[0.0, 1.0, -1.0, 0.0])?];
                for pair in [&phi, &psi] {
                    let m = &pair[0].matrix().scale_real(R::lit(0.5 + eps)) + &pair[1].matrix().scale_real(R::lit(0.5 - eps));
                    out.push(("rank2_eps_bell".into(), DensityMatrix::new(m)?));
                }
                for k in 0..4 {
                    let mut p = [0.25 - eps / 3.0; 4];
                    p[k] = 0.25 + eps;
                    out.push(("rank4_eps".into(), diag(&p)?));
                }
            }
            for p in ps {
                let one = diag(&[1.0 - p, p])?;
                out.push(("product_1q".into(), one.tensor(&one)));
            }
            let a = pure(&[1.0, 0.0, 0.0, 1.0])?;
            let b = pure(&[0.0, 1.0, 1.0, 0.0])?;
            out.push(("bell_phi".into(), a));
            out.push(("bell_psi".into(), b));
            let s = R::lit(0.5).sqrt();
            let plus = [cr(s), cr(s)];
            out.push(("product_plus".into(), DensityMatrix::pure(&kron_ket(&plus, &plus))?));
        }
        _ => return Err(MeasureError::InvalidSampler(format!("dimension {dim}"))),
    }
    Ok(out)
}
