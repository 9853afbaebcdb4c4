//! Serializable report documents.
//!
//! Complex numbers are written as `[re, im]` pairs and matrices as arrays of
//! rows. Field order is fixed by the struct definitions, so identical input
//! gives byte-identical output.

use serde::Serialize;
use squeezelab::model::HamiltonianSpec;
use squeezelab::verify::Check;
use squeezelab::{CMat, CVec, Cx};

pub const SCHEMA_VERSION: u32 = 1;

pub type Pair = [f64; 2];
pub type Matrix = Vec<Vec<Pair>>;

pub fn pair(z: Cx<f64>) -> Pair {
    [z.re, z.im]
}

pub fn matrix(m: &CMat<f64>) -> Matrix {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect()).collect()
}

pub fn vector(v: &CVec<f64>) -> Vec<Pair> {
    v.iter().copied().map(pair).collect()
}

/// Common envelope of every report.
#[derive(Debug, Serialize)]
pub struct Report<B: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: Option<HamiltonianSpec>,
    #[serde(flatten)]
    pub body: B,
    pub passed: bool,
}

impl<B: Serialize> Report<B> {
    pub fn new(command: &'static str, input: Option<HamiltonianSpec>, body: B, passed: bool) -> Self {
        Self { schema_version: SCHEMA_VERSION, command, input, body, passed }
    }
}

#[derive(Debug, Serialize)]
pub struct Diagonalization {
    pub omega: Vec<f64>,
    pub ground_energy: f64,
    pub energy_shift: f64,
    /// Displacement removed before the transformation.
    pub alpha: Vec<Pair>,
    pub u: Matrix,
    pub v: Matrix,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct SqueezeOperator {
    pub u: Matrix,
    pub v: Matrix,
    pub rho: Matrix,
    pub tau: Matrix,
    pub norm_magnitude: f64,
    pub sigma: Option<Matrix>,
    pub log_m: Option<Matrix>,
    pub generator: Option<Matrix>,
    pub log_m_error: Option<String>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct Decomposition {
    pub s: Matrix,
    pub r: Vec<f64>,
    pub cosh_r: Vec<f64>,
    pub sinh_r: Vec<f64>,
    pub t: Matrix,
    pub degenerate: bool,
    pub special_case: &'static str,
    /// Quadrature covariance of the squeezed vacuum in the rotated frame.
    pub mixed_frame_covariance: Matrix,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct FockSample {
    pub m: Vec<usize>,
    pub amplitude: Pair,
}

#[derive(Debug, Serialize)]
pub struct CoherentSample {
    pub beta: Vec<Pair>,
    pub amplitude: Pair,
}

#[derive(Debug, Serialize)]
pub struct CoordinateSample {
    pub x: Vec<f64>,
    pub amplitude: Pair,
}

#[derive(Debug, Serialize)]
pub struct StateStatistics {
    pub kind: &'static str,
    pub n: Vec<usize>,
    pub alpha: Vec<Pair>,
    pub mean_n: Vec<f64>,
    pub var_n: Vec<f64>,
    pub covariance: Matrix,
    pub uncertainty_products: Vec<f64>,
    pub fock: Option<Vec<FockSample>>,
    /// Total weight of the listed Fock amplitudes.
    pub fock_weight: Option<f64>,
    pub coherent: Vec<CoherentSample>,
    pub coordinate: Vec<CoordinateSample>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub cutoff: usize,
    pub dim: usize,
    pub tolerance: f64,
    pub tail_mass: f64,
    pub moment_cutoff: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct GoldenComparison {
    pub omega: Vec<f64>,
    pub checks: Vec<Check>,
}
