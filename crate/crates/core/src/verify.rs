//! Closed-form versus oracle verification of a Hamiltonian.

use serde::Serialize;

use crate::bogoliubov::{diagonalize, SYMPLECTIC_TOL};
use crate::error::{Error, Result};
use crate::linalg::max_abs;
use crate::model::BilinearHamiltonian;
use crate::oracle::{
    build_closed_form_state, build_hamiltonian, ground_state, numeric_moments, operator_state, suggest_cutoff,
    TruncatedFockSpace, DENSE_DIM_LIMIT,
};
use crate::states::{covariance, mean_photon, photon_variance, StateDescriptor};

/// Default verification tolerance.
pub const DEFAULT_TOL: f64 = 1e-6;

/// One named comparison and the tolerance it was held to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `residual ≤ tolerance`; a NaN residual fails.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), passed: residual <= tolerance, residual, tolerance }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Per-mode cutoff used when none is given: 40 up to two modes, 10 for
/// three, and the largest cutoff keeping the dimension near 2000 beyond.
pub fn default_cutoff(n_modes: usize) -> usize {
    match n_modes {
        0..=2 => 40,
        3 => 10,
        n => (2000f64.powf(1.0 / n as f64).floor() as usize).max(2),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub cutoff: usize,
    pub dim: usize,
    pub tolerance: f64,
    /// Closed-form ground-state weight beyond the cutoff.
    pub tail_mass: f64,
    /// Cutoff of the moment comparisons.
    pub moment_cutoff: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Runs the oracle suite at `cutoff` levels per mode.
///
/// The closed-form ground state (squeezed vacuum, or squeezed coherent state
/// with linear terms) must have tail mass at most `tol`; otherwise this fails
/// with [`Error::TailMassTooLarge`]. The ground energy is compared relative
/// to `max(1, |E₀|)`, every other quantity absolutely.
///
/// Moments converge much more slowly in the cutoff than overlaps, so they are
/// taken from the generator-exponential construction of the ground state at
/// the first cutoff whose tail mass is below `tol · 1e-4`.
pub fn verify_hamiltonian(h: &BilinearHamiltonian<f64>, cutoff: usize, tol: f64) -> Result<VerifyReport> {
    let d = diagonalize(h)?;
    let space = TruncatedFockSpace::new(h.n_modes, cutoff)?;
    if space.dim > DENSE_DIM_LIMIT {
        return Err(Error::SpaceTooLarge { dim: space.dim, limit: DENSE_DIM_LIMIT });
    }
    let state = if h.has_linear_terms() {
        StateDescriptor::scs(d.bt.clone(), d.coherent_amplitude())?
    } else {
        StateDescriptor::svs(d.bt.clone())
    };
    let closed = build_closed_form_state(&state, &space, tol)?;
    let (ground, energy) = ground_state(&build_hamiltonian(h, &space)?);
    let moment_cutoff =
        if closed.norm_deficit() <= tol * 1e-4 { cutoff } else { suggest_cutoff(&state, cutoff, tol * 1e-4)? };
    let moment_space = TruncatedFockSpace::new(h.n_modes, moment_cutoff)?;
    let numeric = numeric_moments(&operator_state(&state, &moment_space)?, &moment_space);
    let e0 = d.ground_energy();
    let scale = max_abs(&h.block_matrix()).max(1.0);

    let checks = vec![
        Check::new("symplectic", d.bt.check_symplectic().max(), SYMPLECTIC_TOL),
        Check::new("reconstruction", d.reconstruction_residual(h) / scale, 1e-9),
        Check::new("ground_energy", (energy - e0).abs() / e0.abs().max(1.0), tol),
        Check::new("ground_overlap", 1.0 - closed.overlap(&ground), tol),
        Check::new("mean_photon", max_diff(&numeric.mean_n, &mean_photon(&state)), tol),
        Check::new("photon_variance", max_diff(&numeric.var_n, &photon_variance(&state)), tol),
        Check::new("covariance", numeric.cov.max_abs_diff(&covariance(&state)), tol),
    ];
    Ok(VerifyReport {
        cutoff,
        dim: space.dim,
        tolerance: tol,
        tail_mass: closed.norm_deficit(),
        moment_cutoff,
        passed: all_passed(&checks),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cx, CMat, CVec};
    use crate::testutil::sample_hamiltonian;

    #[test]
    fn trivial_hamiltonian_has_zero_residuals() {
        let h = BilinearHamiltonian::new(CMat::<f64>::identity(2, 2) * cx::<f64>(1.0, 0.0), CMat::zeros(2, 2), None)
            .unwrap();
        let r = verify_hamiltonian(&h, 6, DEFAULT_TOL).unwrap();
        assert!(r.passed);
        assert!(r.checks.iter().all(|c| c.residual < 1e-14), "{:?}", r.checks);
    }

    #[test]
    fn weakly_squeezed_hamiltonian_passes() {
        let h = sample_hamiltonian(2, 3, 0.2);
        let r = verify_hamiltonian(&h, 20, DEFAULT_TOL).unwrap();
        assert!(r.passed, "{:?}", r.checks);
        let kappa = CVec::<f64>::from_vec(vec![cx(0.2, 0.1), cx(-0.3, 0.0)]);
        let driven = BilinearHamiltonian::new(h.xi.clone(), h.eta.clone(), Some(kappa)).unwrap();
        let r = verify_hamiltonian(&driven, 20, DEFAULT_TOL).unwrap();
        assert!(r.passed, "{:?}", r.checks);
    }

    #[test]
    fn default_cutoffs() {
        assert_eq!(default_cutoff(1), 40);
        assert_eq!(default_cutoff(2), 40);
        assert_eq!(default_cutoff(3), 10);
        assert_eq!(default_cutoff(4), 6);
    }

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::new("x", f64::NAN, 1.0).passed);
    }
}
