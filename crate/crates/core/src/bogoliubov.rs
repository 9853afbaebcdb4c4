//! Complex Bogoliubov transformations and the diagonalization of quadratic
//! bosonic Hamiltonians.
//!
//! A transformation `[c; c†] = M [a; a†]` is stored through its two blocks
//! `M = [[u, v], [v*, u*]]`.

use std::cmp::Ordering;

use nalgebra::Cholesky;

use crate::error::{Error, Result};
use crate::linalg::{block2, conj, conj_vec, hermitian_eigen, k_metric, max_abs, min_hermitian_eigenvalue, sub_block};
use crate::model::BilinearHamiltonian;
use crate::scalar::{cis, modulus, re, CMat, CVec, Cx, Real};

/// Default tolerance for the block identities of a valid transformation.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BtMatrix<T: Real> {
    pub u: CMat<T>,
    pub v: CMat<T>,
}

/// Max-norm residuals of the four block identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticResiduals<T: Real> {
    /// `uu† − vv† − I`
    pub r_uud1: T,
    /// `uvᵀ − vuᵀ`
    pub r_uud2: T,
    /// `u†u − vᵀv* − I`
    pub r_udu1: T,
    /// `u†v − vᵀu*`
    pub r_udu2: T,
}

impl<T: Real> SymplecticResiduals<T> {
    pub fn max(&self) -> T {
        self.r_uud1.max(self.r_uud2).max(self.r_udu1).max(self.r_udu2)
    }

    pub fn within(&self, tol: T) -> bool {
        self.max() <= tol
    }
}

impl<T: Real> BtMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Self { u: CMat::<T>::identity(n, n), v: CMat::<T>::zeros(n, n) }
    }

    /// Wraps two blocks after checking their shapes (not their validity).
    pub fn from_blocks(u: CMat<T>, v: CMat<T>) -> Result<Self> {
        let n = u.nrows();
        if u.ncols() != n || v.shape() != (n, n) || n == 0 {
            return Err(Error::Shape(format!(
                "blocks must be equal square matrices, found {:?} and {:?}",
                u.shape(),
                v.shape()
            )));
        }
        Ok(Self { u, v })
    }

    /// Reads `u`, `v` from the top row of blocks of a `2N × 2N` matrix.
    pub fn from_full(m: &CMat<T>) -> Self {
        Self { u: sub_block(m, 0, 0), v: sub_block(m, 0, 1) }
    }

    /// Single-mode transformation with scalar blocks.
    pub fn one_mode(u: Cx<T>, v: Cx<T>) -> Self {
        Self { u: CMat::<T>::from_element(1, 1, u), v: CMat::<T>::from_element(1, 1, v) }
    }

    pub fn n_modes(&self) -> usize {
        self.u.nrows()
    }

    /// The full matrix `[[u, v], [v*, u*]]`.
    pub fn full(&self) -> CMat<T> {
        block2(&self.u, &self.v, &conj(&self.v), &conj(&self.u))
    }

    pub fn check_symplectic(&self) -> SymplecticResiduals<T> {
        let n = self.n_modes();
        let eye = CMat::<T>::identity(n, n);
        let (u, v) = (&self.u, &self.v);
        SymplecticResiduals {
            r_uud1: max_abs(&(u * u.adjoint() - v * v.adjoint() - &eye)),
            r_uud2: max_abs(&(u * v.transpose() - v * u.transpose())),
            r_udu1: max_abs(&(u.adjoint() * u - v.transpose() * conj(v) - &eye)),
            r_udu2: max_abs(&(u.adjoint() * v - v.transpose() * conj(u))),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.check_symplectic().within(T::tol(SYMPLECTIC_TOL))
    }

    /// `M⁻¹ = K M† K`, with blocks `(u†, −vᵀ)`.
    pub fn inverse(&self) -> Self {
        Self { u: self.u.adjoint(), v: -self.v.transpose() }
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n_modes() != other.n_modes() {
            return Err(Error::DimensionMismatch { expected: self.n_modes(), found: other.n_modes() });
        }
        let (u1, v1, u2, v2) = (&self.u, &self.v, &other.u, &other.v);
        Ok(Self { u: u1 * u2 + v1 * conj(v2), v: u1 * v2 + v1 * conj(u2) })
    }

    /// `D_ph · M` with `D_ph = diag(e^{iφ})` acting on both blocks.
    pub fn apply_phase(&self, phi: &[T]) -> Result<Self> {
        let n = self.n_modes();
        if phi.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: phi.len() });
        }
        let mut out = self.clone();
        for (i, &p) in phi.iter().enumerate() {
            let ph = cis(p);
            for j in 0..n {
                out.u[(i, j)] *= ph;
                out.v[(i, j)] *= ph;
            }
        }
        Ok(out)
    }

    pub fn cast<U: Real>(&self) -> BtMatrix<U> {
        let c = |z: Cx<T>| Cx::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()));
        BtMatrix { u: self.u.map(c), v: self.v.map(c) }
    }
}

pub fn check_symplectic<T: Real>(bt: &BtMatrix<T>) -> SymplecticResiduals<T> {
    bt.check_symplectic()
}

pub fn invert_bt<T: Real>(bt: &BtMatrix<T>) -> BtMatrix<T> {
    bt.inverse()
}

pub fn compose_bt<T: Real>(m1: &BtMatrix<T>, m2: &BtMatrix<T>) -> Result<BtMatrix<T>> {
    m1.compose(m2)
}

pub fn apply_phase<T: Real>(bt: &BtMatrix<T>, phi: &[T]) -> Result<BtMatrix<T>> {
    bt.apply_phase(phi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalizationResult<T: Real> {
    pub bt: BtMatrix<T>,
    /// Mode frequencies, strictly positive and sorted descending.
    pub omega: Vec<T>,
    /// Solution of `[α; α*] = ½ H⁻¹ [κ*; κ]`; the ground state has `⟨a⟩ = −α`.
    pub alpha: CVec<T>,
    /// `−¼ [κᵀ κ†] H⁻¹ [κ*; κ]`.
    pub energy_shift: T,
}

impl<T: Real> DiagonalizationResult<T> {
    pub fn n_modes(&self) -> usize {
        self.omega.len()
    }

    /// Ground-state energy `Σ Ωᵢ + shift`.
    pub fn ground_energy(&self) -> T {
        self.omega.iter().fold(self.energy_shift, |acc, &w| acc + w)
    }

    /// Energy of the excitation `Πᵢ (c†ᵢ)^{nᵢ}` over the ground state.
    pub fn level_energy(&self, n: &[usize]) -> T {
        self.omega.iter().zip(n).fold(self.energy_shift, |acc, (&w, &k)| acc + w * T::lit((2 * k + 1) as f64))
    }

    /// Eigenvalue of the new annihilation operators `c` on the displaced
    /// ground state, `−(uα + vα*)`. This is the coherent amplitude of the
    /// ground state written as a squeezed coherent state.
    pub fn coherent_amplitude(&self) -> CVec<T> {
        -(&self.bt.u * &self.alpha + &self.bt.v * conj_vec(&self.alpha))
    }

    /// `max |M† diag(Ω, Ω) M − H| / max(1, max |H|)`.
    pub fn reconstruction_residual(&self, h: &BilinearHamiltonian<T>) -> T {
        let n = self.n_modes();
        let m = self.bt.full();
        let d = CMat::<T>::from_fn(2 * n, 2 * n, |i, j| if i == j { re(self.omega[i % n]) } else { re(T::zero()) });
        let target = h.block_matrix();
        let scale = T::one().max(max_abs(&target));
        max_abs(&(m.adjoint() * d * m - target)) / scale
    }
}

/// Cholesky factor of a positive definite block matrix. nalgebra takes
/// complex square roots of negative pivots, so definiteness is decided by
/// the spectrum first.
fn cholesky_or_reject<T: Real>(hm: &CMat<T>) -> Result<Cholesky<Cx<T>, nalgebra::Dyn>> {
    let min_eigenvalue = min_hermitian_eigenvalue(hm);
    let reject = || Error::NotPositiveDefinite { min_eigenvalue: min_eigenvalue.as_f64() };
    if min_eigenvalue <= T::zero() {
        return Err(reject());
    }
    Cholesky::new(hm.clone()).ok_or_else(reject)
}

/// Diagonalizes `H = [a†ᵀ aᵀ] Hm [a; a†] + κᵀa + κ†a†` into
/// `Σ Ωᵢ (c†ᵢcᵢ + cᵢc†ᵢ) + shift`.
///
/// With `Hm = L L†`, the Hermitian matrix `G = L† K L` is similar to `K Hm`.
/// A unit eigenvector `y` with eigenvalue `Ω > 0` yields the row of `M`
/// conjugate to `w = √Ω K L^{-†} y`, which satisfies `w† K w = 1`; distinct
/// eigenvectors of `G` give K-orthogonal rows, also inside degenerate blocks.
pub fn diagonalize<T: Real>(h: &BilinearHamiltonian<T>) -> Result<DiagonalizationResult<T>> {
    let n = h.n_modes;
    let hm = h.block_matrix();
    let chol = cholesky_or_reject(&hm)?;
    let l = chol.l();
    let k = k_metric::<T>(n);
    let g = l.adjoint() * &k * &l;
    let g = (&g + g.adjoint()) * re(T::lit(0.5));
    let (lambda, y) = hermitian_eigen(&g);
    if lambda[n] <= T::zero() || lambda[n - 1] >= T::zero() {
        return Err(Error::Numerical("Bogoliubov spectrum is not split into N positive and N negative values".into()));
    }

    let l_adj = l.adjoint();
    let mut rows: Vec<(T, CVec<T>, CVec<T>)> = Vec::with_capacity(n);
    for (idx, &om) in lambda.iter().enumerate().skip(n) {
        let x = l_adj
            .solve_upper_triangular(&y.column(idx).into_owned())
            .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
        let w = &k * x * re(om.sqrt());
        let mut u_row = conj_vec(&w.rows(0, n).into_owned());
        let mut v_row = conj_vec(&w.rows(n, n).into_owned());

        // largest-magnitude entry of the u row real and positive
        let peak = u_row.iter().fold(T::zero(), |acc, z| acc.max(modulus(*z)));
        let cut = peak * (T::one() - T::lit(1e-10));
        let j = u_row.iter().position(|z| modulus(*z) >= cut).unwrap_or(0);
        let ph = u_row[j].conj() / re(modulus(u_row[j]));
        u_row *= ph;
        v_row *= ph;
        u_row[j] = re(u_row[j].re);
        rows.push((om, u_row, v_row));
    }

    let tie = T::lit(1e-10);
    rows.sort_by(|a, b| {
        let scale = T::one().max(a.0.abs()).max(b.0.abs());
        if (a.0 - b.0).abs() > tie * scale {
            return b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal);
        }
        for (za, zb) in a.1.iter().zip(b.1.iter()) {
            let (ma, mb) = (modulus(*za), modulus(*zb));
            if (ma - mb).abs() > tie {
                return mb.partial_cmp(&ma).unwrap_or(Ordering::Equal);
            }
        }
        Ordering::Equal
    });

    let u = CMat::<T>::from_fn(n, n, |i, j| rows[i].1[j]);
    let v = CMat::<T>::from_fn(n, n, |i, j| rows[i].2[j]);
    let omega: Vec<T> = rows.iter().map(|r| r.0).collect();

    let source = h.shift_source();
    let (alpha, energy_shift) = if h.has_linear_terms() {
        let sol = chol.solve(&source);
        let alpha = sol.rows(0, n).into_owned() * re(T::lit(0.5));
        let quad = source.dotc(&sol);
        (alpha, -quad.re * T::lit(0.25))
    } else {
        (CVec::<T>::zeros(n), T::zero())
    };

    Ok(DiagonalizationResult { bt: BtMatrix { u, v }, omega, alpha, energy_shift })
}
