//! Three-factor decomposition `M = M_S M_D M_T` of a transformation matrix.
//!
//! `M_S = [[S, 0], [0, S*]]` and `M_T = [[T, 0], [0, T*]]` are unitary
//! rotations and `M_D = [[D_cosh r, D_sinh r], [D_sinh r, D_cosh r]]` is a set
//! of independent one-mode squeezers. In the frame of the mixed bosons
//! `b = T a` every squeezed vacuum or squeezed coherent state has minimum
//! uncertainty.

use nalgebra::ComplexField;
use serde::Serialize;

use crate::bogoliubov::BtMatrix;
use crate::linalg::{conj, diag_real, hermitian_eigen, identity, max_abs, symmetrize, takagi_unitary_symmetric, zeros};
use crate::scalar::{cx, re, CMat, Real};
use crate::states::{covariance, QuadratureCovariance, StateDescriptor};

/// Relative spread of `cosh² r` below which modes are treated as one
/// degenerate block.
const DEGENERACY_TOL: f64 = 1e-7;

/// Tolerance of the special-case tests.
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BlochMessiahFactors<T: Real> {
    pub s_rot: CMat<T>,
    /// Squeeze magnitudes, descending.
    pub r_vals: Vec<T>,
    pub t_rot: CMat<T>,
    /// Set when two or more modes share a squeeze magnitude. The rotations
    /// are then not unique and only their product is meaningful.
    pub degenerate: bool,
}

impl<T: Real> BlochMessiahFactors<T> {
    pub fn n_modes(&self) -> usize {
        self.r_vals.len()
    }

    pub fn cosh_r(&self) -> Vec<T> {
        self.r_vals.iter().map(|r| r.cosh()).collect()
    }

    pub fn sinh_r(&self) -> Vec<T> {
        self.r_vals.iter().map(|r| r.sinh()).collect()
    }

    pub fn s_factor(&self) -> BtMatrix<T> {
        BtMatrix { u: self.s_rot.clone(), v: zeros(self.n_modes(), self.n_modes()) }
    }

    pub fn d_factor(&self) -> BtMatrix<T> {
        BtMatrix { u: diag_real(&self.cosh_r()), v: diag_real(&self.sinh_r()) }
    }

    pub fn t_factor(&self) -> BtMatrix<T> {
        BtMatrix { u: self.t_rot.clone(), v: zeros(self.n_modes(), self.n_modes()) }
    }

    /// `M_S M_D M_T`.
    pub fn reconstruct(&self) -> BtMatrix<T> {
        let sd = self.s_rot.clone() * diag_real(&self.cosh_r());
        let ss = self.s_rot.clone() * diag_real(&self.sinh_r());
        BtMatrix { u: sd * &self.t_rot, v: ss * conj(&self.t_rot) }
    }

    /// Largest entry deviation between `M_S M_D M_T` and `bt`.
    pub fn reconstruction_residual(&self, bt: &BtMatrix<T>) -> T {
        max_abs(&(self.reconstruct().full() - bt.full()))
    }
}

/// Factors `bt` as `M_S M_D M_T`.
///
/// `uu† = S₁ D_cosh²r S₁†` fixes `S₁` and `T₁ = D_{1/cosh r} S₁† u`. The
/// matrix `Z = S₁† v T₁ᵀ` is block diagonal over degenerate squeeze
/// magnitudes, and each block is `sinh r` times a unitary symmetric matrix
/// `W Wᵀ`; `W` moves into both rotations. Each row of `T` is then signed so
/// that its largest entry has a positive real part, with the matching column
/// of `S` flipped.
pub fn bloch_messiah<T: Real>(bt: &BtMatrix<T>) -> BlochMessiahFactors<T> {
    let n = bt.n_modes();
    let (u, v) = (&bt.u, &bt.v);
    let (vals, vecs) = hermitian_eigen(&(u * u.adjoint()));
    let order: Vec<usize> = (0..n).rev().collect();
    let s1 = CMat::<T>::from_fn(n, n, |i, j| vecs[(i, order[j])]);
    let cosh2: Vec<T> = order.iter().map(|&k| vals[k]).collect();

    // sinh² from vv† in the same basis avoids the cancellation in cosh² − 1
    let vv = s1.adjoint() * v * v.adjoint() * &s1;
    let sinh: Vec<T> = (0..n).map(|i| vv[(i, i)].re.max(T::zero()).sqrt()).collect();
    let cosh: Vec<T> = sinh.iter().map(|s| (T::one() + *s * *s).sqrt()).collect();
    let r_vals: Vec<T> = sinh.iter().map(|s| s.asinh()).collect();

    let inv_cosh: Vec<T> = cosh.iter().map(|c| T::one() / *c).collect();
    let t1 = diag_real(&inv_cosh) * s1.adjoint() * u;
    let z = s1.adjoint() * v * t1.transpose();

    let mut w = identity::<T>(n);
    let mut degenerate = false;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        let scale = T::one().max(cosh2[start]);
        while end < n && (cosh2[start] - cosh2[end]).abs() <= T::lit(DEGENERACY_TOL) * scale {
            end += 1;
        }
        let len = end - start;
        degenerate |= len > 1;
        let s_block = sinh[start..end].iter().fold(T::zero(), |a, b| a + *b) / T::lit(len as f64);
        if s_block > T::lit(1e-300) {
            let block = z.view((start, start), (len, len)).map(|x| x / s_block);
            let q = takagi_unitary_symmetric(&symmetrize(&block));
            w.view_mut((start, start), (len, len)).copy_from(&q);
        }
        start = end;
    }

    let mut s_rot = &s1 * &w;
    let mut t_rot = w.adjoint() * &t1;
    for i in 0..n {
        let (mut best, mut big) = (0, T::zero());
        for j in 0..n {
            let m = t_rot[(i, j)].norm_sqr();
            if m > big {
                big = m;
                best = j;
            }
        }
        if t_rot[(i, best)].re < T::zero() {
            t_rot.row_mut(i).neg_mut();
            s_rot.column_mut(i).neg_mut();
        }
    }
    BlochMessiahFactors { s_rot, r_vals, t_rot, degenerate }
}

/// The rotation `T` of the mixed bosons `b = T a` and the squeezed-vacuum
/// covariance in their quadratures.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedBosonFrame<T: Real> {
    pub t_rot: CMat<T>,
    pub cov_in_frame: QuadratureCovariance<T>,
}

impl<T: Real> MixedBosonFrame<T> {
    /// Largest deviation of the frame covariance from
    /// `¼[[D_{e^{−2r}}, iI], [−iI, D_{e^{2r}}]]`.
    pub fn minimum_uncertainty_residual(&self, r_vals: &[T]) -> T {
        let n = r_vals.len();
        let q = T::lit(0.25);
        let two = T::lit(2.0);
        let mut expect = zeros::<T>(2 * n, 2 * n);
        for (i, r) in r_vals.iter().enumerate() {
            expect[(i, i)] = re(q * (-two * *r).exp());
            expect[(n + i, n + i)] = re(q * (two * *r).exp());
            expect[(i, n + i)] = cx(0.0, 0.25);
            expect[(n + i, i)] = cx(0.0, -0.25);
        }
        max_abs(&(&self.cov_in_frame.cov - expect))
    }
}

/// Quadrature covariance of the squeezed vacuum of `bt`, re-expressed in the
/// frame `b = T a` by rotating the quadrature vector:
/// `X_b = Re T X − Im T Y`, `Y_b = Im T X + Re T Y`.
///
/// The state is squeezed in `X_b`, with variances `¼e^{−2r}` and `¼e^{2r}`.
pub fn mixed_boson_frame<T: Real>(bt: &BtMatrix<T>) -> MixedBosonFrame<T> {
    let factors = bloch_messiah(bt);
    let n = bt.n_modes();
    let cov_a = covariance(&StateDescriptor::svs(bt.clone()));
    let t = &factors.t_rot;
    let mut rot = zeros::<T>(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (t[(i, j)].re, t[(i, j)].im);
            rot[(i, j)] = re(a);
            rot[(i, n + j)] = re(-b);
            rot[(n + i, j)] = re(b);
            rot[(n + i, n + j)] = re(a);
        }
    }
    let cov = &rot * cov_a.cov * rot.transpose();
    MixedBosonFrame { t_rot: factors.t_rot, cov_in_frame: QuadratureCovariance { cov } }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialCase {
    /// `T = I`: minimum uncertainty already in the original modes.
    MilburnMus,
    /// `T` diagonal: every mode behaves like an independent one-mode squeezer.
    OneModeLike,
    /// `T = S†`, so `M` is Hermitian and the squeeze operator has no
    /// `aᵢaⱼ†` terms.
    HermitianM,
    Generic,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::MilburnMus => "milburn-mus",
            SpecialCase::OneModeLike => "one-mode-like",
            SpecialCase::HermitianM => "hermitian-m",
            SpecialCase::Generic => "generic",
        }
    }
}

/// First matching case in the order `MilburnMus`, `OneModeLike`,
/// `HermitianM`, `Generic`, each tested to [`CLASSIFY_TOL`].
pub fn classify_special_case<T: Real>(factors: &BlochMessiahFactors<T>) -> SpecialCase {
    let n = factors.n_modes();
    let tol = T::lit(CLASSIFY_TOL);
    let t = &factors.t_rot;
    let eye = identity::<T>(n);
    if max_abs(&(t - &eye)) <= tol {
        return SpecialCase::MilburnMus;
    }
    let off = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .fold(T::zero(), |acc, ij| acc.max(ComplexField::modulus(t[ij])));
    if off <= tol {
        return SpecialCase::OneModeLike;
    }
    if max_abs(&(t * &factors.s_rot - eye)) <= tol {
        return SpecialCase::HermitianM;
    }
    SpecialCase::Generic
}
