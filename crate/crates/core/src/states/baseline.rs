//! Closed forms for the unsqueezed states `|n⟩`, `|α⟩` and `D(α)|n⟩`.
//! Each factorizes over modes.

use crate::scalar::{cexp, re, Cx, Real};

fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, j| acc * T::lit(j as f64))
}

fn binomial<T: Real>(n: usize, k: usize) -> T {
    (0..k).fold(T::one(), |acc, j| acc * T::lit((n - j) as f64) / T::lit((j + 1) as f64))
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub(crate) fn hermite_h<T: Real>(n: usize, x: T) -> T {
    let two = T::lit(2.0);
    let (mut h0, mut h1) = (T::one(), two * x);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        let h2 = two * x * h1 - two * T::lit(k as f64) * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// `⟨m|D(α)|n⟩` for one mode.
pub(crate) fn fock_mode<T: Real>(alpha: Cx<T>, n: usize, m: usize) -> Cx<T> {
    let gauss = (-alpha.norm_sqr() * T::lit(0.5)).exp();
    let mut sum = re(T::zero());
    for j in 0..=m.min(n) {
        let c = factorial::<T>(j) * binomial::<T>(m, j) * binomial::<T>(n, j);
        sum += alpha.powu((m - j) as u32) * (-alpha.conj()).powu((n - j) as u32) * c;
    }
    sum * (gauss / (factorial::<T>(m) * factorial::<T>(n)).sqrt())
}

/// `⟨β|D(α)|n⟩` for one mode.
pub(crate) fn coherent_mode<T: Real>(alpha: Cx<T>, n: usize, beta: Cx<T>) -> Cx<T> {
    let half = T::lit(0.5);
    let e = beta.conj() * alpha - re((alpha.norm_sqr() + beta.norm_sqr()) * half);
    cexp(e) * (beta.conj() - alpha.conj()).powu(n as u32) / factorial::<T>(n).sqrt()
}

/// `⟨X|D(α)|n⟩` for one mode, `X = (a + a†)/2`.
pub(crate) fn coordinate_mode<T: Real>(alpha: Cx<T>, n: usize, x: T) -> Cx<T> {
    let two = T::lit(2.0);
    let norm = (two / T::pi()).powf(T::lit(0.25));
    let d = re(x) - alpha;
    let e = -(d * d) + alpha * (alpha - alpha.conj()) * T::lit(0.5);
    let arg = two.sqrt() * x - (alpha.re * two) / two.sqrt();
    let h = hermite_h(n, arg) / (two.powi(n as i32) * factorial::<T>(n)).sqrt();
    cexp(e) * (norm * h)
}
