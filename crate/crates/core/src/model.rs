//! Hamiltonian input model, validation and the JSON/TOML file surface.
//!
//! A Hamiltonian is `[a†ᵀ aᵀ] [[ξ, η], [η*, ξ*]] [a; a†] + κᵀa + κ†a†` with
//! `ξ` Hermitian, `η` symmetric and the full block matrix positive definite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    block2, conj, conj_vec, hermiticity_residual, max_abs, min_hermitian_eigenvalue, symmetry_residual,
};
use crate::scalar::{CMat, CVec, Cx, Real};

/// Relative tolerance for the Hermiticity / symmetry checks.
pub const STRUCTURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BilinearHamiltonian<T: Real> {
    pub n_modes: usize,
    pub xi: CMat<T>,
    pub eta: CMat<T>,
    pub kappa: CVec<T>,
}

impl<T: Real> BilinearHamiltonian<T> {
    /// Builds and validates a Hamiltonian. A missing `kappa` means no linear
    /// terms.
    pub fn new(xi: CMat<T>, eta: CMat<T>, kappa: Option<CVec<T>>) -> Result<Self> {
        let n = xi.nrows();
        let kappa = kappa.unwrap_or_else(|| CVec::<T>::zeros(n));
        let h = Self { n_modes: n, xi, eta, kappa };
        validate(&h).into_result()?;
        Ok(h)
    }

    /// `[[ξ, η], [η*, ξ*]]`.
    pub fn block_matrix(&self) -> CMat<T> {
        block2(&self.xi, &self.eta, &conj(&self.eta), &conj(&self.xi))
    }

    /// `[κ*; κ]`, the source vector of the linear-term shift.
    pub fn shift_source(&self) -> CVec<T> {
        let n = self.n_modes;
        let mut out = CVec::<T>::zeros(2 * n);
        out.rows_mut(0, n).copy_from(&conj_vec(&self.kappa));
        out.rows_mut(n, n).copy_from(&self.kappa);
        out
    }

    pub fn has_linear_terms(&self) -> bool {
        self.kappa.iter().any(|z| z.re != T::zero() || z.im != T::zero())
    }

    /// Converts every entry to another scalar type.
    pub fn cast<U: Real>(&self) -> BilinearHamiltonian<U> {
        let c = |z: &Cx<T>| Cx::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()));
        BilinearHamiltonian {
            n_modes: self.n_modes,
            xi: self.xi.map(|z| c(&z)),
            eta: self.eta.map(|z| c(&z)),
            kappa: self.kappa.map(|z| c(&z)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
    pub passed: bool,
}

impl ValidationReport {
    /// The first failing invariant as an error, or `Ok` if all passed.
    pub fn into_result(self) -> Result<()> {
        for c in &self.checks {
            if c.passed {
                continue;
            }
            return Err(match c.name.as_str() {
                "shape" => Error::Shape(format!("inconsistent block dimensions (residual {})", c.residual)),
                "xi_hermitian" => Error::Hermiticity { residual: c.residual, tolerance: c.tolerance },
                "eta_symmetric" => Error::Symmetry { residual: c.residual, tolerance: c.tolerance },
                _ => Error::NotPositiveDefinite { min_eigenvalue: c.residual },
            });
        }
        Ok(())
    }
}

/// Checks every invariant and reports each with its measured residual.
pub fn validate<T: Real>(h: &BilinearHamiltonian<T>) -> ValidationReport {
    let n = h.n_modes;
    let shape_ok = n > 0 && h.xi.shape() == (n, n) && h.eta.shape() == (n, n) && h.kappa.len() == n;
    let mut checks = vec![ValidationCheck {
        name: "shape".into(),
        passed: shape_ok,
        residual: if shape_ok { 0.0 } else { 1.0 },
        tolerance: 0.0,
    }];
    if !shape_ok {
        return ValidationReport { checks, passed: false };
    }

    let scale = T::one().max(max_abs(&h.xi));
    let tol = T::tol(STRUCTURE_TOL) * scale;
    let herm = hermiticity_residual(&h.xi);
    checks.push(ValidationCheck {
        name: "xi_hermitian".into(),
        passed: herm <= tol,
        residual: herm.as_f64(),
        tolerance: tol.as_f64(),
    });
    let sym = symmetry_residual(&h.eta);
    checks.push(ValidationCheck {
        name: "eta_symmetric".into(),
        passed: sym <= tol,
        residual: sym.as_f64(),
        tolerance: tol.as_f64(),
    });

    // Positive definiteness is judged on the Hermitian part so that a
    // structure violation above does not also produce a spurious eigenvalue.
    let block = h.block_matrix();
    let herm_part = (&block + block.adjoint()) * Cx::new(T::lit(0.5), T::zero());
    let min_eig = min_hermitian_eigenvalue(&herm_part);
    checks.push(ValidationCheck {
        name: "positive_definite".into(),
        passed: min_eig > T::zero(),
        residual: min_eig.as_f64(),
        tolerance: 0.0,
    });

    let passed = checks.iter().all(|c| c.passed);
    ValidationReport { checks, passed }
}

/// Optional descriptive metadata carried by a spec file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

/// Serialized form of a Hamiltonian; complex numbers are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub n_modes: usize,
    pub xi: Vec<Vec<[f64; 2]>>,
    pub eta: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecFormat {
    Json,
    Toml,
}

impl SpecFormat {
    /// JSON documents start with `{`; anything else is read as TOML.
    pub fn detect(text: &str) -> Self {
        match text.trim_start().chars().next() {
            Some('{') => SpecFormat::Json,
            _ => SpecFormat::Toml,
        }
    }
}

fn pair(z: &Cx<f64>) -> [f64; 2] {
    [z.re, z.im]
}

fn matrix_from_rows(name: &str, rows: &[Vec<[f64; 2]>], n: usize) -> Result<CMat<f64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        let widths: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(Error::Shape(format!("{name} must be {n}x{n}, found {} rows with widths {widths:?}", rows.len())));
    }
    Ok(CMat::<f64>::from_fn(n, n, |i, j| Cx::new(rows[i][j][0], rows[i][j][1])))
}

impl HamiltonianSpec {
    pub fn parse(text: &str) -> Result<Self> {
        match SpecFormat::detect(text) {
            SpecFormat::Json => serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string())),
            SpecFormat::Toml => toml::from_str(text).map_err(|e| Error::Syntax(e.to_string())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serialization cannot fail")
    }

    pub fn serialize(&self, format: SpecFormat) -> String {
        match format {
            SpecFormat::Json => self.to_json(),
            SpecFormat::Toml => self.to_toml(),
        }
    }

    pub fn from_hamiltonian(h: &BilinearHamiltonian<f64>, meta: Option<Meta>) -> Self {
        let rows = |m: &CMat<f64>| -> Vec<Vec<[f64; 2]>> {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| pair(&m[(i, j)])).collect()).collect()
        };
        Self {
            n_modes: h.n_modes,
            xi: rows(&h.xi),
            eta: rows(&h.eta),
            kappa: Some(h.kappa.iter().map(pair).collect()),
            meta,
        }
    }

    /// Decodes the matrices without checking the physical invariants.
    pub fn to_unchecked(&self) -> Result<BilinearHamiltonian<f64>> {
        let n = self.n_modes;
        if n == 0 {
            return Err(Error::Shape("n_modes must be positive".into()));
        }
        let xi = matrix_from_rows("xi", &self.xi, n)?;
        let eta = matrix_from_rows("eta", &self.eta, n)?;
        let kappa = match &self.kappa {
            None => CVec::<f64>::zeros(n),
            Some(k) if k.len() == n => CVec::<f64>::from_iterator(n, k.iter().map(|p| Cx::new(p[0], p[1]))),
            Some(k) => return Err(Error::Shape(format!("kappa must have {n} entries, found {}", k.len()))),
        };
        Ok(BilinearHamiltonian { n_modes: n, xi, eta, kappa })
    }

    pub fn to_hamiltonian(&self) -> Result<BilinearHamiltonian<f64>> {
        let h = self.to_unchecked()?;
        validate(&h).into_result()?;
        Ok(h)
    }
}

/// Parses a JSON or TOML spec document into a validated Hamiltonian.
pub fn parse_spec(text: &str) -> Result<BilinearHamiltonian<f64>> {
    HamiltonianSpec::parse(text)?.to_hamiltonian()
}
