//! Quadrature covariances and photon-number statistics in closed form.
//!
//! The squeezed kinds use the general expressions for `U D(α)|n⟩`, which
//! reduce to the vacuum-based ones at `n = 0` and lose their displacement
//! terms at `α = 0`. `C = uᵀα* − v†α` is the conjugate of `⟨a⟩`.

use super::{StateDescriptor, StateKind};
use crate::linalg::{block2, conj, conj_vec, diag_real, max_abs, scale};
use crate::scalar::{cx, re, CMat, CVec, Real};

/// Unsymmetrized second central moments `⟨ΔAᵢΔBⱼ⟩` of `(X, Y)` with
/// `X = (a + a†)/2`, `Y = (a − a†)/2i`, as `[[XX, XY], [YX, YY]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureCovariance<T: Real> {
    pub cov: CMat<T>,
}

impl<T: Real> QuadratureCovariance<T> {
    pub fn n_modes(&self) -> usize {
        self.cov.nrows() / 2
    }

    /// `⟨ΔXᵢ²⟩`
    pub fn var_x(&self, i: usize) -> T {
        self.cov[(i, i)].re
    }

    /// `⟨ΔYᵢ²⟩`
    pub fn var_y(&self, i: usize) -> T {
        let n = self.n_modes();
        self.cov[(n + i, n + i)].re
    }

    /// `⟨ΔXᵢ²⟩⟨ΔYᵢ²⟩` per mode; at least 1/16 for any state.
    pub fn uncertainty_products(&self) -> Vec<T> {
        (0..self.n_modes()).map(|i| self.var_x(i) * self.var_y(i)).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs(&(&self.cov - &other.cov))
    }
}

fn d_of<T: Real>(n: &[usize], f: impl Fn(usize) -> f64) -> CMat<T> {
    diag_real(&n.iter().map(|&k| T::lit(f(k))).collect::<Vec<T>>())
}

/// Covariance matrix of the state. Displacement never contributes.
pub fn covariance<T: Real>(s: &StateDescriptor<T>) -> QuadratureCovariance<T> {
    let q = re(T::lit(0.25));
    let i = cx::<T>(0.0, 1.0);
    if !s.kind.is_squeezed() {
        let d = d_of::<T>(&s.n, |k| (2 * k + 1) as f64);
        let eye = CMat::<T>::identity(s.n_modes(), s.n_modes());
        let cov = block2(&d, &(&eye * i), &(&eye * (-i)), &d) * q;
        return QuadratureCovariance { cov };
    }
    let (u, v) = (&s.bt.u, &s.bt.v);
    let p = u - v;
    let m = u + v;
    let (pc, mc) = (conj(&p), conj(&m));
    let d1 = d_of::<T>(&s.n, |k| (k + 1) as f64);
    let d0 = d_of::<T>(&s.n, |k| k as f64);
    let xx = p.adjoint() * &d1 * &p + p.transpose() * &d0 * &pc;
    let xy = (p.adjoint() * &d1 * &m - p.transpose() * &d0 * &mc) * i;
    let yx = (m.transpose() * &d0 * &pc - m.adjoint() * &d1 * &p) * i;
    let yy = m.adjoint() * &d1 * &m + m.transpose() * &d0 * &mc;
    QuadratureCovariance { cov: block2(&xx, &xy, &yx, &yy) * q }
}

fn c_vector<T: Real>(s: &StateDescriptor<T>) -> CVec<T> {
    s.bt.u.transpose() * conj_vec(&s.alpha) - s.bt.v.adjoint() * &s.alpha
}

/// `⟨Nᵢ⟩`.
pub fn mean_photon<T: Real>(s: &StateDescriptor<T>) -> Vec<T> {
    let modes = s.n_modes();
    if !s.kind.is_squeezed() {
        return (0..modes).map(|i| T::lit(s.n[i] as f64) + s.alpha[i].norm_sqr()).collect();
    }
    let (u, v) = (&s.bt.u, &s.bt.v);
    let dn = d_of::<T>(&s.n, |k| k as f64);
    let dn1 = d_of::<T>(&s.n, |k| (k + 1) as f64);
    let base = u.adjoint() * dn * u + v.adjoint() * dn1 * v;
    let c = c_vector(s);
    (0..modes).map(|i| base[(i, i)].re + c[i].norm_sqr()).collect()
}

/// `ΔNᵢ² = ⟨Nᵢ²⟩ − ⟨Nᵢ⟩²`.
///
/// For the excited kinds the terms `(A+B)† D_{n(n+1)} (A+B)` and
/// `2A† D_{n(n+1)} B`, with `Aᵢⱼ = |uᵢⱼ|²` and `Bᵢⱼ = |vᵢⱼ|²`, enter through
/// their i-th diagonal elements.
pub fn photon_variance<T: Real>(s: &StateDescriptor<T>) -> Vec<T> {
    let modes = s.n_modes();
    if !s.kind.is_squeezed() {
        return (0..modes)
            .map(|i| match s.kind {
                StateKind::Fock => T::zero(),
                _ => T::lit((2 * s.n[i] + 1) as f64) * s.alpha[i].norm_sqr(),
            })
            .collect();
    }
    let (u, v) = (&s.bt.u, &s.bt.v);
    let dn = d_of::<T>(&s.n, |k| k as f64);
    let dn1 = d_of::<T>(&s.n, |k| (k + 1) as f64);
    let d2n1 = d_of::<T>(&s.n, |k| (2 * k + 1) as f64);
    let dnn = d_of::<T>(&s.n, |k| (k * (k + 1)) as f64);
    let a = u.map(|z| re(z.norm_sqr()));
    let b = v.map(|z| re(z.norm_sqr()));
    let ab = &a + &b;

    let udv = u.adjoint() * &d2n1 * v;
    let p1 = u.adjoint() * &dn1 * u + v.adjoint() * &dn * v;
    let p2 = u.adjoint() * &dn * u + v.adjoint() * &dn1 * v;
    let s1 = ab.transpose() * &dnn * &ab;
    let s2 = scale(&(a.transpose() * &dnn * &b), T::lit(2.0));
    let w = u.adjoint() * &d2n1 * u + v.adjoint() * &d2n1 * v;
    let c = c_vector(s);

    (0..modes)
        .map(|i| {
            let mut x =
                (udv[(i, i)] * udv[(i, i)].conj()).re + (p1[(i, i)] * p2[(i, i)]).re - s1[(i, i)].re - s2[(i, i)].re;
            let cc = c[i] * c[i];
            x += w[(i, i)].re * c[i].norm_sqr() - T::lit(2.0) * (udv[(i, i)] * cc).re;
            x
        })
        .collect()
}
