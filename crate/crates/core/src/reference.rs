//! Two-mode reference Hamiltonian with exactly known results.
//!
//! `ξ = [[45, 7i], [−7i, 45]]`, `η = [[36, 16i], [16i, 36]]`. Its frequencies,
//! normal-ordered squeeze operator and three-factor decomposition have closed
//! forms. Comparisons use quantities that do not depend on the free row
//! phases of `u` and `v`, or fix those phases first with
//! [`align_diagonal_phase`].

use crate::bogoliubov::{diagonalize, BtMatrix};
use crate::decompose::bloch_messiah;
use crate::error::Result;
use crate::linalg::{max_abs, sub_block};
use crate::model::{parse_spec, BilinearHamiltonian};
use crate::scalar::{cx, CMat, Cx};
use crate::squeezeop::{disentangle, exponent_form, is_standard_two_mode};
use crate::states::{mean_photon, StateDescriptor};
use crate::verify::Check;

/// Tolerance of every golden comparison.
pub const GOLDEN_TOL: f64 = 1e-10;

pub const REFERENCE_SPEC: &str = r#"{
  "n_modes": 2,
  "xi": [[[45, 0], [0, 7]], [[0, -7], [45, 0]]],
  "eta": [[[36, 0], [0, 16]], [[0, 16], [36, 0]]],
  "meta": {
    "name": "two-mode reference",
    "description": "coupled two-mode squeezer with closed-form frequencies 30 and 12"
  }
}
"#;

pub fn reference_hamiltonian() -> BilinearHamiltonian<f64> {
    parse_spec(REFERENCE_SPEC).expect("embedded reference spec is valid")
}

fn mat(rows: [[Cx<f64>; 2]; 2]) -> CMat<f64> {
    CMat::<f64>::from_fn(2, 2, |i, j| rows[i][j])
}

fn real(rows: [[f64; 2]; 2]) -> CMat<f64> {
    CMat::<f64>::from_fn(2, 2, |i, j| cx(rows[i][j], 0.0))
}

pub fn omega() -> [f64; 2] {
    [30.0, 12.0]
}

/// `ρ = (1/22) [[7, 3i], [3i, 5]]`.
pub fn rho() -> CMat<f64> {
    mat([[cx(7.0, 0.0), cx(0.0, 3.0)], [cx(0.0, 3.0), cx(5.0, 0.0)]]) / cx(22.0, 0.0)
}

/// `τ = −(1/11) [[2, i√5], [i√5, 3]]` with `u₁₁`, `u₂₂` real and positive.
pub fn tau() -> CMat<f64> {
    let s5 = 5f64.sqrt();
    mat([[cx(2.0, 0.0), cx(0.0, s5)], [cx(0.0, s5), cx(3.0, 0.0)]]) / cx(-11.0, 0.0)
}

/// `√(3√5/11)`.
pub fn norm_magnitude() -> f64 {
    (3.0 * 5f64.sqrt() / 11.0).sqrt()
}

/// `u` with `u₁₁`, `u₂₂` real and positive.
pub fn u() -> CMat<f64> {
    let (s10, s2) = (10f64.sqrt(), 2f64.sqrt());
    mat([[cx(7.0 / (3.0 * s10), 0.0), cx(0.0, 3.0 / s10)], [cx(0.0, 5.0 / (3.0 * s2)), cx(1.0 / s2, 0.0)]])
}

pub fn v() -> CMat<f64> {
    let s10 = 10f64.sqrt();
    mat([[cx(2.0 / (3.0 * s10), 0.0), cx(0.0, 2.0 / s10)], [cx(0.0, 2.0 * 2f64.sqrt() / 3.0), cx(0.0, 0.0)]])
}

/// `(v†v)ᵢᵢ`, the mean photon numbers of the squeezed vacuum.
pub fn mean_photon_numbers() -> [f64; 2] {
    [14.0 / 15.0, 0.4]
}

/// `cosh rᵢ = √(5/3 ± 2/(3√5))`.
pub fn cosh_r() -> [f64; 2] {
    let k = 2.0 / (3.0 * 5f64.sqrt());
    [(5.0 / 3.0 + k).sqrt(), (5.0 / 3.0 - k).sqrt()]
}

/// `sinh rᵢ = √(2/3 ± 2/(3√5))`.
pub fn sinh_r() -> [f64; 2] {
    let k = 2.0 / (3.0 * 5f64.sqrt());
    [(2.0 / 3.0 + k).sqrt(), (2.0 / 3.0 - k).sqrt()]
}

/// `rᵢ = ln(cosh rᵢ + sinh rᵢ)`.
pub fn r_vals() -> [f64; 2] {
    let (c, s) = (cosh_r(), sinh_r());
    [(c[0] + s[0]).ln(), (c[1] + s[1]).ln()]
}

/// Entry moduli of the outer rotation `S`.
pub fn abs_s() -> CMat<f64> {
    let s5 = 5f64.sqrt();
    let d = 2.0 * 3f64.sqrt();
    real([[(s5 - 1.0) / d, (s5 + 1.0) / d], [(s5 + 1.0) / d, (s5 - 1.0) / d]])
}

/// Entry moduli of the inner rotation `T`.
pub fn abs_t() -> CMat<f64> {
    let s5 = 5f64.sqrt();
    let (a, b) = ((0.5 + 1.0 / s5).sqrt(), (0.5 - 1.0 / s5).sqrt());
    real([[a, b], [b, a]])
}

/// Rephases each row so that `uᵢᵢ` is real and positive.
pub fn align_diagonal_phase(bt: &BtMatrix<f64>) -> Result<BtMatrix<f64>> {
    let phi: Vec<f64> = (0..bt.n_modes()).map(|i| -bt.u[(i, i)].arg()).collect();
    bt.apply_phase(&phi)
}

fn abs(m: &CMat<f64>) -> CMat<f64> {
    m.map(|z| cx(z.norm(), 0.0))
}

fn diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Runs every stage on the reference Hamiltonian and compares with the
/// known values.
pub fn reference_checks() -> Result<Vec<Check>> {
    let h = reference_hamiltonian();
    let d = diagonalize(&h)?;
    let bt = align_diagonal_phase(&d.bt)?;
    let so = disentangle(&bt)?;
    let f = bloch_messiah(&bt);
    let ef = exponent_form(&bt)?;
    let l = &ef.log_m;
    let (l11, l12) = (sub_block(l, 0, 0), sub_block(l, 0, 1));
    // [[0, iμ₁], [iμ₁, 0]] and [[μ₂, iμ₃], [iμ₃, μ₄]]
    let pattern = [
        l11[(0, 0)].norm(),
        l11[(1, 1)].norm(),
        l11[(0, 1)].re.abs(),
        (l11[(0, 1)] - l11[(1, 0)]).norm(),
        l12[(0, 0)].im.abs(),
        l12[(1, 1)].im.abs(),
        l12[(0, 1)].re.abs(),
        (l12[(0, 1)] - l12[(1, 0)]).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let t = GOLDEN_TOL;
    Ok(vec![
        Check::new("omega", diff(&d.omega, &omega()), t),
        Check::new("rho", max_abs(&(&so.rho - rho())), t),
        Check::new("tau", max_abs(&(&so.tau - tau())), t),
        Check::new("norm_magnitude", (so.norm_magnitude - norm_magnitude()).abs(), t),
        Check::new("abs_u", max_abs(&(abs(&bt.u) - abs(&u()))), t),
        Check::new("abs_v", max_abs(&(abs(&bt.v) - abs(&v()))), t),
        Check::new("mean_photon", diff(&mean_photon(&StateDescriptor::svs(bt.clone())), &mean_photon_numbers()), t),
        Check::new("cosh_r", diff(&f.cosh_r(), &cosh_r()), t),
        Check::new("r", diff(&f.r_vals, &r_vals()), t),
        Check::new("abs_s", max_abs(&(abs(&f.s_rot) - abs_s())), t),
        Check::new("abs_t", max_abs(&(abs(&f.t_rot) - abs_t())), t),
        Check::new("log_m_round_trip", ef.round_trip_residual(&bt), t),
        Check::new("log_m_blocks", ef.block_residual(), t),
        Check::new("log_m_pattern", pattern, t),
        Check::new("not_standard_two_mode", if is_standard_two_mode(&bt)?.standard { 1.0 } else { 0.0 }, 0.0),
    ])
}
