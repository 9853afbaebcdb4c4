//! Wavefunctions of `U D(α)|n⟩` in the Fock, coherent and coordinate bases.
//!
//! Normal ordering gives
//! `U D(α)|n⟩ = P (1/√n!) ∂ₚⁿ [exp(pᵀτp + pᵀh) exp(wᵀa† − a†ᵀρa†)|0⟩]`
//! at `p = 0`, with `w = u⁻¹(p + α)`, `h = 2τα − α*` and
//! `P = |det u|^{-1/2} exp(−½α†α + αᵀτα)`. Projecting the creation-operator
//! exponential onto a basis leaves a Gaussian in `p` (and in the Fock index
//! variables `q` for the Fock basis) whose derivatives are Hermite series
//! coefficients.

use nalgebra::ComplexField;

use super::baseline::{coherent_mode, coordinate_mode, fock_mode};
use super::hermite::{HermiteSeries, MAX_DEGREE};
use super::StateDescriptor;
use crate::error::{Error, Result};
use crate::linalg::{block2, conj_vec, det_inv_sqrt_principal, identity, inverse, scale, symmetrize};
use crate::scalar::{cexp, modulus, re, CMat, CVec, Cx, Real};
use crate::squeezeop::disentangle;

/// Derivative part of the excited kinds: `∂ₚⁿ exp(pᵀτp + pᵀ(coupling·a† + shift))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationSeries<T: Real> {
    pub tau: CMat<T>,
    pub shift: CVec<T>,
    /// `u^{-T}`
    pub coupling: CMat<T>,
}

/// Creation-operator-only form `prefactor · exp(linearᵀa† − a†ᵀ·quadratic·a†)|0⟩`,
/// followed by the excitation derivatives for the excited kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState<T: Real> {
    pub prefactor: Cx<T>,
    pub quadratic: CMat<T>,
    /// `u⁻¹α`, the coefficient vector of `a†`.
    pub linear: CVec<T>,
    pub excitation: Option<ExcitationSeries<T>>,
}

impl<T: Real> ReducedState<T> {
    /// `⟨β|state⟩` evaluated from the reduced coefficients (vacuum-based kinds).
    pub fn coherent_overlap(&self, beta: &CVec<T>) -> Option<Cx<T>> {
        if self.excitation.is_some() {
            return None;
        }
        let bc = conj_vec(beta);
        let e = re(-beta.norm_squared() * T::lit(0.5)) + self.linear.dot(&bc) - bc.dot(&(&self.quadratic * &bc));
        Some(self.prefactor * cexp(e))
    }
}

struct Frame<T: Real> {
    u_inv: CMat<T>,
    rho: CMat<T>,
    tau: CMat<T>,
    prefactor: Cx<T>,
    shift: CVec<T>,
    lin_a: CVec<T>,
}

fn frame<T: Real>(s: &StateDescriptor<T>) -> Result<Frame<T>> {
    let d = disentangle(&s.bt)?;
    let u_inv = inverse(&s.bt.u)?;
    let a = &s.alpha;
    let ac = conj_vec(a);
    let e = re(-a.norm_squared() * T::lit(0.5)) + a.dot(&(&d.tau * a));
    let shift = &d.tau * a * re(T::lit(2.0)) - &ac;
    let lin_a = &u_inv * a;
    Ok(Frame { prefactor: cexp(e) * d.norm_magnitude, u_inv, rho: d.rho, tau: d.tau, shift, lin_a })
}

fn check_len<T: Real>(s: &StateDescriptor<T>, found: usize) -> Result<()> {
    if found != s.n_modes() {
        return Err(Error::DimensionMismatch { expected: s.n_modes(), found });
    }
    Ok(())
}

fn guard(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree, max: MAX_DEGREE });
    }
    Ok(())
}

/// Joint series in `[p; q]` whose coefficient `(n, m)` times `P` is `⟨m|state⟩`.
fn joint_series<T: Real>(f: &Frame<T>) -> HermiteSeries<T> {
    let half = re(T::lit(0.5));
    let c = &f.u_inv * half;
    let a = block2(&f.tau, &c.transpose(), &c, &(-&f.rho));
    let n = f.lin_a.len();
    let mut b = CVec::<T>::zeros(2 * n);
    b.rows_mut(0, n).copy_from(&f.shift);
    b.rows_mut(n, n).copy_from(&f.lin_a);
    HermiteSeries::new(a, b)
}

/// `⟨m|state⟩`. Total degree `|n| + |m|` is limited to [`MAX_DEGREE`].
pub fn wavefn_fock<T: Real>(s: &StateDescriptor<T>, m: &[usize]) -> Result<Cx<T>> {
    check_len(s, m.len())?;
    guard(s.excitation() + m.iter().sum::<usize>())?;
    if !s.kind.is_squeezed() {
        return Ok((0..s.n_modes()).fold(re(T::one()), |acc, i| acc * fock_mode(s.alpha[i], s.n[i], m[i])));
    }
    let f = frame(s)?;
    let bounds: Vec<usize> = s.n.iter().chain(m).copied().collect();
    Ok(f.prefactor * joint_series(&f).normalized_table(&bounds).get(&bounds))
}

/// All amplitudes `⟨m|state⟩` with `0 ≤ mᵢ < cutoff`, flattened row-major
/// with mode 0 most significant. No degree guard applies.
pub fn fock_amplitudes<T: Real>(s: &StateDescriptor<T>, cutoff: usize) -> Result<Vec<Cx<T>>> {
    if cutoff == 0 {
        return Err(Error::Shape("cutoff must be positive".into()));
    }
    let f = frame(s)?;
    let bounds: Vec<usize> = s.n.iter().copied().chain(std::iter::repeat_n(cutoff - 1, s.n_modes())).collect();
    let table = joint_series(&f).normalized_table(&bounds);
    let block = cutoff.pow(s.n_modes() as u32);
    let start = table.values.len() - block;
    Ok(table.values[start..].iter().map(|g| *g * f.prefactor).collect())
}

/// `⟨β|state⟩` with `|β⟩` a normalized coherent state.
pub fn wavefn_coherent<T: Real>(s: &StateDescriptor<T>, beta: &CVec<T>) -> Result<Cx<T>> {
    check_len(s, beta.len())?;
    guard(s.excitation())?;
    if !s.kind.is_squeezed() {
        return Ok((0..s.n_modes()).fold(re(T::one()), |acc, i| acc * coherent_mode(s.alpha[i], s.n[i], beta[i])));
    }
    let f = frame(s)?;
    let bc = conj_vec(beta);
    let linear = &f.shift + f.u_inv.transpose() * &bc;
    let c = re(-beta.norm_squared() * T::lit(0.5)) + f.lin_a.dot(&bc) - bc.dot(&(&f.rho * &bc));
    let g = HermiteSeries::new(f.tau.clone(), linear).normalized_table(&s.n).get(&s.n);
    Ok(f.prefactor * cexp(c) * g)
}

/// `⟨X|state⟩` for the quadratures `X = (a + a†)/2`.
///
/// The global phase follows the Fock-basis convention: the determinant
/// factor is `|det u|^{-1/2} det(I − 2ρ)^{-1/2}` with the principal root
/// taken per eigenvalue, whose modulus is `|det(u − v)|^{-1/2}`.
pub fn wavefn_coordinate<T: Real>(s: &StateDescriptor<T>, x: &[T]) -> Result<Cx<T>> {
    check_len(s, x.len())?;
    guard(s.excitation())?;
    if !s.kind.is_squeezed() {
        return Ok((0..s.n_modes()).fold(re(T::one()), |acc, i| acc * coordinate_mode(s.alpha[i], s.n[i], x[i])));
    }
    let n = s.n_modes();
    let det_uv = modulus((&s.bt.u - &s.bt.v).determinant());
    if det_uv < T::lit(1e-12) {
        return Err(Error::SingularQuadratureFrame { det_modulus: det_uv.as_f64() });
    }
    let f = frame(s)?;
    let eye = identity::<T>(n);
    let two_rho = scale(&f.rho, T::lit(2.0));
    let i2r = &eye - &two_rho;
    let r = inverse(&i2r)?;
    let b = &r * &f.u_inv;
    let sm = symmetrize(&(f.u_inv.transpose() * &b));
    let q = symmetrize(&(&r * (&eye + &two_rho)));
    let xv = CVec::<T>::from_iterator(n, x.iter().map(|&v| re(v)));
    let a = &s.alpha;
    let half = re(T::lit(0.5));
    let two = re(T::lit(2.0));

    let tau_form = &f.tau - &sm * half;
    let linear = &f.shift - &sm * a + b.transpose() * &xv * two;
    let c = -xv.dot(&(&q * &xv)) + xv.dot(&(&b * a)) * two - a.dot(&(&sm * a)) * half;
    let g = HermiteSeries::new(tau_form, linear).normalized_table(&s.n).get(&s.n);
    let gauss = ComplexField::powf(T::lit(2.0) / T::pi(), T::lit(n as f64 / 4.0));
    Ok(f.prefactor * det_inv_sqrt_principal(&i2r) * cexp(c) * g * gauss)
}

/// Creation-operator-only data of the state.
pub fn reduced_state_coefficients<T: Real>(s: &StateDescriptor<T>) -> Result<ReducedState<T>> {
    let f = frame(s)?;
    let excitation = s.kind.is_excited().then(|| ExcitationSeries {
        tau: f.tau.clone(),
        shift: f.shift.clone(),
        coupling: f.u_inv.transpose(),
    });
    Ok(ReducedState { prefactor: f.prefactor, quadratic: f.rho, linear: f.lin_a, excitation })
}
