//! Fock, coherent and coherent-Fock states and their squeezed versions.
//!
//! Every state is `U D(α) |n⟩`, where `U` is the squeeze operator of a
//! transformation (the identity for the three unsqueezed kinds), `D(α)` a
//! displacement and `|n⟩` a Fock state. The squeezed coherent kinds are
//! eigenstates of the new operators `c = U a U†` with eigenvalue `α`.

mod baseline;
pub mod hermite;
mod moments;
mod wavefn;

use std::fmt;
use std::str::FromStr;

use crate::bogoliubov::BtMatrix;
use crate::error::{Error, Result};
use crate::linalg::{identity, max_abs};
use crate::scalar::{CVec, Real};

pub use hermite::{hermite_coefficient, BoxTable, HermiteSeries, MAX_DEGREE};
pub use moments::{covariance, mean_photon, photon_variance, QuadratureCovariance};
pub use wavefn::{
    fock_amplitudes, reduced_state_coefficients, wavefn_coherent, wavefn_coordinate, wavefn_fock, ExcitationSeries,
    ReducedState,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    Fock,
    Coherent,
    CoherentFock,
    Svs,
    Scs,
    Sfs,
    Scfs,
}

impl StateKind {
    pub const ALL: [StateKind; 7] = [
        StateKind::Fock,
        StateKind::Coherent,
        StateKind::CoherentFock,
        StateKind::Svs,
        StateKind::Scs,
        StateKind::Sfs,
        StateKind::Scfs,
    ];

    pub fn is_squeezed(self) -> bool {
        matches!(self, StateKind::Svs | StateKind::Scs | StateKind::Sfs | StateKind::Scfs)
    }

    pub fn is_displaced(self) -> bool {
        matches!(self, StateKind::Coherent | StateKind::CoherentFock | StateKind::Scs | StateKind::Scfs)
    }

    pub fn is_excited(self) -> bool {
        matches!(self, StateKind::Fock | StateKind::CoherentFock | StateKind::Sfs | StateKind::Scfs)
    }

    pub fn name(self) -> &'static str {
        match self {
            StateKind::Fock => "fock",
            StateKind::Coherent => "coherent",
            StateKind::CoherentFock => "coherent-fock",
            StateKind::Svs => "svs",
            StateKind::Scs => "scs",
            StateKind::Sfs => "sfs",
            StateKind::Scfs => "scfs",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StateKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InconsistentState(format!("unknown state kind '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateDescriptor<T: Real> {
    pub kind: StateKind,
    pub bt: BtMatrix<T>,
    pub alpha: CVec<T>,
    pub n: Vec<usize>,
}

impl<T: Real> StateDescriptor<T> {
    /// Builds a descriptor after checking that `kind`, `bt`, `alpha` and `n`
    /// agree: unsqueezed kinds carry the identity transformation, vacuum
    /// kinds have `n = 0` and undisplaced kinds have `α = 0`.
    pub fn new(kind: StateKind, bt: BtMatrix<T>, alpha: CVec<T>, n: Vec<usize>) -> Result<Self> {
        let modes = bt.n_modes();
        if alpha.len() != modes {
            return Err(Error::DimensionMismatch { expected: modes, found: alpha.len() });
        }
        if n.len() != modes {
            return Err(Error::DimensionMismatch { expected: modes, found: n.len() });
        }
        if !kind.is_squeezed() {
            let off = max_abs(&(&bt.u - identity::<T>(modes))).max(max_abs(&bt.v));
            if off > T::zero() {
                return Err(Error::InconsistentState(format!("{kind} state requires the identity transformation")));
            }
        }
        if !kind.is_displaced() && alpha.iter().any(|z| !z.is_zero_exact()) {
            return Err(Error::InconsistentState(format!("{kind} state takes no displacement")));
        }
        if !kind.is_excited() && n.iter().any(|&k| k != 0) {
            return Err(Error::InconsistentState(format!("{kind} state takes no excitation numbers")));
        }
        Ok(Self { kind, bt, alpha, n })
    }

    pub fn fock(n: Vec<usize>) -> Self {
        let m = n.len();
        Self { kind: StateKind::Fock, bt: BtMatrix::identity(m), alpha: CVec::<T>::zeros(m), n }
    }

    pub fn coherent(alpha: CVec<T>) -> Self {
        let m = alpha.len();
        Self { kind: StateKind::Coherent, bt: BtMatrix::identity(m), alpha, n: vec![0; m] }
    }

    pub fn coherent_fock(alpha: CVec<T>, n: Vec<usize>) -> Result<Self> {
        Self::new(StateKind::CoherentFock, BtMatrix::identity(n.len()), alpha, n)
    }

    pub fn svs(bt: BtMatrix<T>) -> Self {
        let m = bt.n_modes();
        Self { kind: StateKind::Svs, bt, alpha: CVec::<T>::zeros(m), n: vec![0; m] }
    }

    pub fn scs(bt: BtMatrix<T>, alpha: CVec<T>) -> Result<Self> {
        let m = bt.n_modes();
        Self::new(StateKind::Scs, bt, alpha, vec![0; m])
    }

    pub fn sfs(bt: BtMatrix<T>, n: Vec<usize>) -> Result<Self> {
        let m = bt.n_modes();
        Self::new(StateKind::Sfs, bt, CVec::<T>::zeros(m), n)
    }

    pub fn scfs(bt: BtMatrix<T>, alpha: CVec<T>, n: Vec<usize>) -> Result<Self> {
        Self::new(StateKind::Scfs, bt, alpha, n)
    }

    pub fn n_modes(&self) -> usize {
        self.bt.n_modes()
    }

    pub fn excitation(&self) -> usize {
        self.n.iter().sum()
    }
}

trait ExactZero {
    fn is_zero_exact(&self) -> bool;
}

impl<T: Real> ExactZero for crate::scalar::Cx<T> {
    fn is_zero_exact(&self) -> bool {
        self.re == T::zero() && self.im == T::zero()
    }
}
