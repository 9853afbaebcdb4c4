//! Random Hamiltonians and transformations shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use squeezelab::linalg::{block2, conj, expm, max_abs, min_hermitian_eigenvalue};
use squeezelab::{cx, BilinearHamiltonian, BtMatrix, CMat, CVec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform entries in `[-1, 1)`, enough to fill the argument of the builders below.
pub fn entries(rng: &mut impl Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Number of raw entries consumed by [`hamiltonian_from`] and [`bt_from`].
pub fn entry_count(n: usize) -> usize {
    4 * n * n
}

fn complex_square(n: usize, raw: &[f64]) -> CMat<f64> {
    CMat::<f64>::from_fn(n, n, |i, j| cx(raw[2 * (i * n + j)], raw[2 * (i * n + j) + 1]))
}

/// Hermitian `ξ` shifted so that `Hm` stays positive definite under a
/// symmetric `η` scaled by `eta_scale`.
pub fn hamiltonian_from(n: usize, raw: &[f64], eta_scale: f64, kappa: Option<CVec<f64>>) -> BilinearHamiltonian<f64> {
    let half = 2 * n * n;
    let a = complex_square(n, &raw[..half]);
    let b = complex_square(n, &raw[half..2 * half]);
    let xi = (&a + a.adjoint()) * cx::<f64>(0.5, 0.0);
    let eta = (&b + b.transpose()) * cx::<f64>(0.5 * eta_scale, 0.0);
    let shift = min_hermitian_eigenvalue(&xi).abs() + max_abs(&eta) * n as f64 + 0.2;
    let xi = xi + CMat::<f64>::identity(n, n) * cx::<f64>(shift, 0.0);
    BilinearHamiltonian::new(xi, eta, kappa).expect("constructed Hamiltonian is valid")
}

/// `exp([[A, B], [B*, A*]])` with `A` anti-Hermitian of scale `rotate` and
/// `B` symmetric of scale `squeeze`.
pub fn bt_from(n: usize, raw: &[f64], squeeze: f64, rotate: f64) -> BtMatrix<f64> {
    let half = 2 * n * n;
    let h = complex_square(n, &raw[..half]);
    let s = complex_square(n, &raw[half..2 * half]);
    let a = (&h - h.adjoint()) * cx::<f64>(0.5 * rotate, 0.0);
    let b = (&s + s.transpose()) * cx::<f64>(0.5 * squeeze, 0.0);
    BtMatrix::from_full(&expm(&block2(&a, &b, &conj(&b), &conj(&a))))
}

pub fn random_hamiltonian(rng: &mut impl Rng, n: usize) -> BilinearHamiltonian<f64> {
    let raw = entries(rng, entry_count(n));
    let eta_scale = rng.random_range(0.0..3.0);
    let kappa = if rng.random_bool(0.5) {
        Some(CVec::<f64>::from_fn(n, |_, _| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
    } else {
        None
    };
    hamiltonian_from(n, &raw, eta_scale, kappa)
}

pub fn random_bt(rng: &mut impl Rng, n: usize, squeeze: f64, rotate: f64) -> BtMatrix<f64> {
    bt_from(n, &entries(rng, entry_count(n)), squeeze, rotate)
}

pub fn random_alpha(rng: &mut impl Rng, n: usize, scale: f64) -> CVec<f64> {
    CVec::<f64>::from_fn(n, |_, _| cx(scale * rng.random_range(-1.0..1.0), scale * rng.random_range(-1.0..1.0)))
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}
