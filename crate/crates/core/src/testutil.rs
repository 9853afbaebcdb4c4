//! Deterministic sample data for unit tests.

use crate::bogoliubov::BtMatrix;
use crate::linalg::{block2, conj, expm};
use crate::model::BilinearHamiltonian;
use crate::scalar::{cx, CMat, Cx};

pub(crate) struct Lcg(u64);

impl Lcg {
    pub(crate) fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1))
    }

    /// Uniform in `[-0.5, 0.5)`.
    pub(crate) fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    }

    pub(crate) fn cx(&mut self) -> Cx<f64> {
        cx(self.next(), self.next())
    }

    pub(crate) fn cmat(&mut self, n: usize) -> CMat<f64> {
        CMat::<f64>::from_fn(n, n, |_, _| self.cx())
    }
}

/// `exp([[A, B], [B*, A*]])` with `A` anti-Hermitian and `B` symmetric.
pub(crate) fn sample_bt(n: usize, seed: u64, squeeze: f64, rotate: f64) -> BtMatrix<f64> {
    let mut g = Lcg::new(seed);
    let h = g.cmat(n);
    let a = (&h - h.adjoint()) * cx::<f64>(rotate, 0.0);
    let s = g.cmat(n);
    let b = (&s + s.transpose()) * cx::<f64>(squeeze, 0.0);
    BtMatrix::from_full(&expm(&block2(&a, &b, &conj(&b), &conj(&a))))
}

/// Hermitian `ξ` shifted to dominate a symmetric `η`.
pub(crate) fn sample_hamiltonian(n: usize, seed: u64, eta_scale: f64) -> BilinearHamiltonian<f64> {
    let mut g = Lcg::new(seed);
    let h = g.cmat(n);
    let xi = (&h + h.adjoint()) * cx::<f64>(0.5, 0.0);
    let s = g.cmat(n);
    let eta = (&s + s.transpose()) * cx::<f64>(0.5 * eta_scale, 0.0);
    let min = crate::linalg::min_hermitian_eigenvalue(&xi);
    let spread = crate::linalg::max_abs(&eta) * n as f64;
    let shift = min.abs() + spread + 0.5;
    let xi = xi + CMat::<f64>::identity(n, n) * cx::<f64>(shift, 0.0);
    BilinearHamiltonian::new(xi, eta, None).expect("sample is valid")
}

pub(crate) use crate::reference::reference_hamiltonian;
