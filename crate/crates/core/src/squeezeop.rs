//! Squeeze operators of a Bogoliubov transformation.
//!
//! The unitary `U` with `U [a; a†] U† = M [a; a†]` is available in exponent
//! form `U = exp(−½ [a†ᵀ aᵀ] K ln M [a; a†])` and in normal-ordered form
//! `U = C₀ exp(−a†ᵀρa†) exp(−a†ᵀσa − aᵀσᵀa†) exp(aᵀτa)`.

use crate::bogoliubov::BtMatrix;
use crate::error::{Error, Result};
use crate::linalg::{
    block2, conj, expm, identity, inverse, k_metric, logm, max_abs, scale, sub_block, symmetrize, symmetry_residual,
};
use crate::scalar::{modulus, re, CMat, Cx, Real};

/// Normal-ordered squeeze operator. `σ = ½ ln u` is derived on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct DisentangledSo<T: Real> {
    /// `ρ = ½ u⁻¹ v`
    pub rho: CMat<T>,
    pub u_block: CMat<T>,
    /// `τ = ½ v* u⁻¹`
    pub tau: CMat<T>,
    /// `C₀ = |det u|^{-1/2}`, with its free phase fixed to zero.
    pub norm_magnitude: T,
}

impl<T: Real> DisentangledSo<T> {
    pub fn n_modes(&self) -> usize {
        self.rho.nrows()
    }

    /// `σ = ½ ln u` on the principal branch.
    pub fn sigma(&self) -> Result<CMat<T>> {
        Ok(scale(&logm(&self.u_block)?, T::lit(0.5)))
    }

    /// Product of the three disentangled factors as a transformation matrix:
    /// `[[u, 2uρ], [2τu, 4τuρ + u^{-T}]]`.
    pub fn factor_product(&self) -> Result<CMat<T>> {
        let two = re(T::lit(2.0));
        let u = &self.u_block;
        let u_inv_t = inverse(&u.transpose())?;
        let ur = u * &self.rho;
        Ok(block2(u, &(&ur * two), &(&self.tau * u * two), &(&self.tau * &ur * re(T::lit(4.0)) + u_inv_t)))
    }

    /// Spectral radius of `2ρ`; below one for every valid transformation.
    pub fn spectral_radius_2rho(&self) -> T {
        crate::linalg::eigenvalues(&scale(&self.rho, T::lit(2.0)))
            .into_iter()
            .fold(T::zero(), |acc, l| acc.max(modulus(l)))
    }
}

/// Normal-ordered form of the squeeze operator of `bt`.
pub fn disentangle<T: Real>(bt: &BtMatrix<T>) -> Result<DisentangledSo<T>> {
    let half = re(T::lit(0.5));
    let u_inv = inverse(&bt.u)?;
    let rho = symmetrize(&(&u_inv * &bt.v * half));
    let tau = symmetrize(&(conj(&bt.v) * &u_inv * half));
    let det = modulus(bt.u.determinant());
    Ok(DisentangledSo { rho, u_block: bt.u.clone(), tau, norm_magnitude: T::one() / det.sqrt() })
}

/// Exponent form of the squeeze operator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentForm<T: Real> {
    /// Principal `ln M`.
    pub log_m: CMat<T>,
    /// `−½ K ln M`, the matrix of the quadratic form in `[a†ᵀ aᵀ] · [a; a†]`.
    pub generator: CMat<T>,
}

impl<T: Real> ExponentForm<T> {
    /// Largest violation of `f₂₁ = f₁₂*`, `f₂₂ = f₁₁*`, `f₁₁ᵀ = −f₂₂`,
    /// `f₁₂ᵀ = f₁₂` for `f = −½ ln M`.
    pub fn block_residual(&self) -> T {
        let f = scale(&self.log_m, T::lit(-0.5));
        let (f11, f12, f21, f22) = (sub_block(&f, 0, 0), sub_block(&f, 0, 1), sub_block(&f, 1, 0), sub_block(&f, 1, 1));
        max_abs(&(&f21 - conj(&f12)))
            .max(max_abs(&(&f22 - conj(&f11))))
            .max(max_abs(&(f11.transpose() + &f22)))
            .max(symmetry_residual(&f12))
    }

    /// `max |e^{ln M} − M|`.
    pub fn round_trip_residual(&self, bt: &BtMatrix<T>) -> T {
        max_abs(&(expm(&self.log_m) - bt.full()))
    }

    /// `max |M† (K ln M) M − K ln M|`: the operator keeps its form when
    /// written in the new bosons.
    pub fn frame_invariance_residual(&self, bt: &BtMatrix<T>) -> T {
        let m = bt.full();
        let kl = k_metric::<T>(bt.n_modes()) * &self.log_m;
        max_abs(&(m.adjoint() * &kl * m - kl))
    }
}

/// Principal logarithm of `M` and the resulting squeeze-operator exponent.
pub fn exponent_form<T: Real>(bt: &BtMatrix<T>) -> Result<ExponentForm<T>> {
    let log_m = logm(&bt.full())?;
    let generator = scale(&(k_metric::<T>(bt.n_modes()) * &log_m), T::lit(-0.5));
    Ok(ExponentForm { log_m, generator })
}

/// The transformation whose squeeze operator is `U₁U₂`, i.e. `M₂M₁`.
pub fn compose_so<T: Real>(m1: &BtMatrix<T>, m2: &BtMatrix<T>) -> Result<BtMatrix<T>> {
    m2.compose(m1)
}

/// One-mode squeeze parameter `ζ` with `U = exp(½ζ*a² − ½ζa†²)`, after
/// rotating `u` real and positive.
pub fn one_mode_reduce<T: Real>(bt: &BtMatrix<T>) -> Result<Cx<T>> {
    if bt.n_modes() != 1 {
        return Err(Error::NotOneMode(bt.n_modes()));
    }
    let (u, v) = (bt.u[(0, 0)], bt.v[(0, 0)]);
    let mu = modulus(u);
    let v = v * (u.conj() / re(mu));
    let mv = modulus(v);
    if mv <= T::default_epsilon() * mu {
        return Ok(re(T::zero()));
    }
    Ok(v * re((mu + mv).ln() / mv))
}

/// Result of testing for the textbook two-mode squeezer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeForm<T: Real> {
    pub standard: bool,
    pub r: T,
    pub varphi: T,
}

/// Checks `u = diag(cosh r, cosh r)`, `v = antidiag(e^{iφ} sinh r)`.
pub fn is_standard_two_mode<T: Real>(bt: &BtMatrix<T>) -> Result<TwoModeForm<T>> {
    if bt.n_modes() != 2 {
        return Err(Error::NotTwoMode(bt.n_modes()));
    }
    let tol = T::tol(1e-10);
    let (u, v) = (&bt.u, &bt.v);
    let c = u[(0, 0)].re.max(T::one());
    let r = (c + (c * c - T::one()).sqrt()).ln();
    let sh = r.sinh();
    let off = v[(0, 1)];
    let varphi = if modulus(off) > tol { off.im.atan2(off.re) } else { T::zero() };
    let expect_u = identity::<T>(2) * re(c);
    let mut expect_v = CMat::<T>::zeros(2, 2);
    let corner = Cx::new(varphi.cos(), varphi.sin()) * sh;
    expect_v[(0, 1)] = corner;
    expect_v[(1, 0)] = corner;
    let standard = max_abs(&(u - expect_u)) <= tol && max_abs(&(v - expect_v)) <= tol;
    Ok(TwoModeForm { standard, r, varphi })
}
