//! Taylor coefficients of `exp(pᵀAp + pᵀb)` over a box of multi-indices.
//!
//! With `H_k = ∂^k f(0)` the recurrence
//! `H_{k+eᵢ} = bᵢ H_k + 2 Σⱼ Aᵢⱼ kⱼ H_{k−eⱼ}` follows from
//! `∂ᵢ f = (bᵢ + 2(Ap)ᵢ) f`. Tables store `G_k = H_k / √k!`, which stays
//! bounded for the normalizable series used by the state wavefunctions.

use crate::error::{Error, Result};
use crate::scalar::{re, CMat, CVec, Cx, Real};

/// Largest total degree accepted by [`hermite_coefficient`].
pub const MAX_DEGREE: usize = 60;

/// Generating function `exp(pᵀ·tau_form·p + pᵀ·linear)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteSeries<T: Real> {
    pub tau_form: CMat<T>,
    pub linear: CVec<T>,
}

/// Values `G_k` for every `k` with `0 ≤ kⱼ ≤ bounds[j]`, row-major with the
/// first axis most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxTable<T: Real> {
    pub bounds: Vec<usize>,
    strides: Vec<usize>,
    pub values: Vec<Cx<T>>,
}

impl<T: Real> BoxTable<T> {
    pub fn index(&self, k: &[usize]) -> usize {
        k.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn get(&self, k: &[usize]) -> Cx<T> {
        self.values[self.index(k)]
    }
}

fn strides_for(bounds: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; bounds.len()];
    for j in (0..bounds.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * (bounds[j + 1] + 1);
    }
    strides
}

impl<T: Real> HermiteSeries<T> {
    pub fn new(tau_form: CMat<T>, linear: CVec<T>) -> Self {
        Self { tau_form, linear }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    /// Normalized coefficients over the box `0..=bounds`. No degree guard.
    pub fn normalized_table(&self, bounds: &[usize]) -> BoxTable<T> {
        let d = self.dim();
        assert_eq!(bounds.len(), d, "bounds must match the series dimension");
        let strides = strides_for(bounds);
        let len = bounds.iter().map(|b| b + 1).product::<usize>();
        let top = bounds.iter().copied().max().unwrap_or(0);
        let sqrt: Vec<T> = (0..=top + 1).map(|j| T::lit(j as f64).sqrt()).collect();
        let a2 = &self.tau_form * re(T::lit(2.0));
        let b = &self.linear;

        let mut values = vec![re(T::zero()); len];
        values[0] = re(T::one());
        let mut k = vec![0usize; d];
        for idx in 1..len {
            // odometer step: last axis fastest
            let mut ax = d - 1;
            loop {
                if k[ax] < bounds[ax] {
                    k[ax] += 1;
                    break;
                }
                k[ax] = 0;
                ax -= 1;
            }
            let i = k.iter().position(|&x| x > 0).expect("nonzero multi-index");
            let prev = idx - strides[i];
            let mut acc = b[i] * values[prev];
            for j in 0..d {
                let kj = if j == i { k[j] - 1 } else { k[j] };
                if kj > 0 {
                    acc += a2[(i, j)] * values[prev - strides[j]] * sqrt[kj];
                }
            }
            values[idx] = acc / sqrt[k[i]];
        }
        BoxTable { bounds: bounds.to_vec(), strides, values }
    }

    /// `∂^k f(0)`, i.e. `(Πⱼ kⱼ!)` times the Taylor coefficient of `p^k`.
    pub fn coefficient(&self, k: &[usize]) -> Result<Cx<T>> {
        if k.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: k.len() });
        }
        let degree: usize = k.iter().sum();
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree, max: MAX_DEGREE });
        }
        let g = self.normalized_table(k).get(k);
        let root_factorial = k.iter().flat_map(|&kj| 1..=kj).fold(T::one(), |acc, j| acc * T::lit(j as f64).sqrt());
        Ok(g * root_factorial)
    }
}

/// `∂ⁿ exp(pᵀ·tau_form·p + pᵀw)` at `p = 0`.
pub fn hermite_coefficient<T: Real>(tau_form: &CMat<T>, w: &CVec<T>, n: &[usize]) -> Result<Cx<T>> {
    HermiteSeries::new(tau_form.clone(), w.clone()).coefficient(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn pure_linear_series_gives_monomials() {
        let w = CVec::<f64>::from_vec(vec![cx(0.3, -0.2), cx(1.5, 0.4)]);
        let v = hermite_coefficient(&CMat::zeros(2, 2), &w, &[3, 2]).unwrap();
        let expect = w[0].powu(3) * w[1].powu(2);
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn one_mode_quadratic_term() {
        let t = cx::<f64>(0.4, 0.1);
        let v = hermite_coefficient(&CMat::from_element(1, 1, t), &CVec::zeros(1), &[2]).unwrap();
        assert!((v - t * 2.0).norm() < 1e-15);
        let odd = hermite_coefficient(&CMat::from_element(1, 1, t), &CVec::zeros(1), &[3]).unwrap();
        assert_eq!(odd, cx(0.0, 0.0));
    }

    #[test]
    fn cross_term() {
        let c = cx::<f64>(0.2, 0.7);
        let a = CMat::from_row_slice(2, 2, &[cx(0.0, 0.0), c, c, cx(0.0, 0.0)]);
        let v = hermite_coefficient(&a, &CVec::zeros(2), &[1, 1]).unwrap();
        assert!((v - c * 2.0).norm() < 1e-15);
    }

    #[test]
    fn matches_hermite_polynomials() {
        // exp(2xt − t²) generates H_n(x)
        let x = 0.37;
        let a = CMat::from_element(1, 1, cx::<f64>(-1.0, 0.0));
        let b = CVec::from_element(1, cx::<f64>(2.0 * x, 0.0));
        let (mut h0, mut h1) = (1.0, 2.0 * x);
        for n in 2..=12usize {
            let h2 = 2.0 * x * h1 - 2.0 * (n as f64 - 1.0) * h0;
            h0 = h1;
            h1 = h2;
            let v = hermite_coefficient(&a, &b, &[n]).unwrap();
            assert!((v.re - h1).abs() < 1e-9 * h1.abs().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn degree_guard() {
        let r = hermite_coefficient(&CMat::<f64>::zeros(2, 2), &CVec::zeros(2), &[31, 30]);
        assert!(matches!(r, Err(Error::DegreeTooLarge { degree: 61, max: 60 })));
        assert!(hermite_coefficient(&CMat::<f64>::zeros(2, 2), &CVec::zeros(2), &[30, 30]).is_ok());
    }
}
