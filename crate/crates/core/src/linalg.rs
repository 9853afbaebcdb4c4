//! Dense complex linear-algebra helpers built on nalgebra.
//!
//! Matrix functions (principal logarithm, exponential, triangular square
//! root) live here together with the small structural utilities the physics
//! modules share.

use nalgebra::{ComplexField, DMatrix, Schur, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::{cx, modulus, re, CMat, CVec, Cx, Real};

pub fn conj<T: Real>(m: &CMat<T>) -> CMat<T> {
    m.map(|z| z.conj())
}

pub fn conj_vec<T: Real>(v: &CVec<T>) -> CVec<T> {
    v.map(|z| z.conj())
}

pub fn scale<T: Real>(m: &CMat<T>, s: T) -> CMat<T> {
    m.map(|z| z * s)
}

/// Largest entry modulus.
pub fn max_abs<T: Real>(m: &CMat<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(modulus(*z)))
}

pub fn max_abs_vec<T: Real>(v: &CVec<T>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc.max(modulus(*z)))
}

/// Maximum absolute column sum.
pub fn norm1<T: Real>(m: &CMat<T>) -> T {
    (0..m.ncols())
        .map(|j| m.column(j).iter().fold(T::zero(), |acc, z| acc + modulus(*z)))
        .fold(T::zero(), |acc, x| acc.max(x))
}

pub fn identity<T: Real>(n: usize) -> CMat<T> {
    CMat::<T>::identity(n, n)
}

pub fn zeros<T: Real>(r: usize, c: usize) -> CMat<T> {
    CMat::<T>::zeros(r, c)
}

/// Assembles `[[a, b], [c, d]]` from four equally sized square blocks.
pub fn block2<T: Real>(a: &CMat<T>, b: &CMat<T>, c: &CMat<T>, d: &CMat<T>) -> CMat<T> {
    let n = a.nrows();
    let mut out = zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((0, n), (n, n)).copy_from(b);
    out.view_mut((n, 0), (n, n)).copy_from(c);
    out.view_mut((n, n), (n, n)).copy_from(d);
    out
}

/// Returns the `(r, c)` block of a `2n × 2n` matrix.
pub fn sub_block<T: Real>(m: &CMat<T>, r: usize, c: usize) -> CMat<T> {
    let n = m.nrows() / 2;
    m.view((r * n, c * n), (n, n)).into_owned()
}

/// The metric `K = diag(I, -I)`.
pub fn k_metric<T: Real>(n: usize) -> CMat<T> {
    let mut k = identity(2 * n);
    for i in n..2 * n {
        k[(i, i)] = cx(-1.0, 0.0);
    }
    k
}

pub fn diag_real<T: Real>(d: &[T]) -> CMat<T> {
    let n = d.len();
    CMat::<T>::from_fn(n, n, |i, j| if i == j { re(d[i]) } else { Cx::new(T::zero(), T::zero()) })
}

pub fn diag_complex<T: Real>(d: &[Cx<T>]) -> CMat<T> {
    let n = d.len();
    CMat::<T>::from_fn(n, n, |i, j| if i == j { d[i] } else { Cx::new(T::zero(), T::zero()) })
}

/// `(m + mᵀ) / 2`.
pub fn symmetrize<T: Real>(m: &CMat<T>) -> CMat<T> {
    scale(&(m + m.transpose()), T::lit(0.5))
}

/// `max |m − m†|`.
pub fn hermiticity_residual<T: Real>(m: &CMat<T>) -> T {
    max_abs(&(m - m.adjoint()))
}

/// `max |m − mᵀ|`.
pub fn symmetry_residual<T: Real>(m: &CMat<T>) -> T {
    max_abs(&(m - m.transpose()))
}

/// `max |m m† − I|`.
pub fn unitarity_residual<T: Real>(m: &CMat<T>) -> T {
    max_abs(&(m * m.adjoint() - identity::<T>(m.nrows())))
}

pub fn inverse<T: Real>(m: &CMat<T>) -> Result<CMat<T>> {
    m.clone().try_inverse().ok_or_else(|| Error::Numerical("singular matrix".into()))
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in ascending
/// order and eigenvectors as matching columns.
pub fn hermitian_eigen<T: Real>(m: &CMat<T>) -> (Vec<T>, CMat<T>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::<T>::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_hermitian_eigenvalue<T: Real>(m: &CMat<T>) -> T {
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(T::max_value().unwrap_or_else(|| T::lit(f64::MAX)), |acc, x| acc.min(*x))
}

/// Real symmetric eigen-decomposition, ascending.
pub fn real_symmetric_eigen<T: Real>(m: &DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::<T>::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Complex Schur form `m = q t q†` with `t` upper triangular.
pub fn schur<T: Real>(m: &CMat<T>) -> (CMat<T>, CMat<T>) {
    let (q, mut t) = Schur::new(m.clone()).unpack();
    for j in 0..t.ncols() {
        for i in (j + 1)..t.nrows() {
            t[(i, j)] = cx(0.0, 0.0);
        }
    }
    (q, t)
}

pub fn eigenvalues<T: Real>(m: &CMat<T>) -> Vec<Cx<T>> {
    let (_, t) = schur(m);
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// `Π λᵢ^{-1/2}` over the eigenvalues of `m`, each with the principal square
/// root. This is the continuous branch of `det(m)^{-1/2}` for matrices whose
/// spectrum lies in the open right half-plane.
pub fn det_inv_sqrt_principal<T: Real>(m: &CMat<T>) -> Cx<T> {
    eigenvalues(m).into_iter().fold(cx(1.0, 0.0), |acc, l| acc / ComplexField::sqrt(l))
}

/// Principal square root of an upper-triangular matrix.
fn sqrt_upper<T: Real>(t: &CMat<T>) -> CMat<T> {
    let n = t.nrows();
    let mut r = zeros::<T>(n, n);
    for j in 0..n {
        r[(j, j)] = ComplexField::sqrt(t[(j, j)]);
        for i in (0..j).rev() {
            let mut s = t[(i, j)];
            for k in (i + 1)..j {
                s -= r[(i, k)] * r[(k, j)];
            }
            r[(i, j)] = s / (r[(i, i)] + r[(j, j)]);
        }
    }
    r
}

/// Distance below which an eigenvalue counts as sitting on the branch cut.
const BRANCH_CUT_TOL: f64 = 1e-8;

/// Principal matrix logarithm via Schur form and inverse scaling and
/// squaring. Works for defective matrices.
pub fn logm<T: Real>(m: &CMat<T>) -> Result<CMat<T>> {
    let n = m.nrows();
    let (q, t) = schur(m);
    let tol = T::lit(BRANCH_CUT_TOL);
    for i in 0..n {
        let l = t[(i, i)];
        let on_axis = l.re <= T::zero() && l.im.abs() < tol;
        if on_axis || modulus(l) < tol {
            return Err(Error::BranchCut { re: l.re.as_f64(), im: l.im.as_f64() });
        }
    }

    let eye = identity::<T>(n);
    let mut r = t;
    let mut halvings = 0u32;
    while norm1(&(&r - &eye)) > T::lit(0.25) {
        r = sqrt_upper(&r);
        halvings += 1;
        if halvings > 64 {
            return Err(Error::Numerical("matrix logarithm failed to converge".into()));
        }
    }

    // log(I + X) = 2 atanh(Z), Z = (2I + X)^{-1} X
    let x = &r - &eye;
    let denom = &eye * cx::<T>(2.0, 0.0) + &x;
    let z = denom
        .solve_upper_triangular(&x)
        .ok_or_else(|| Error::Numerical("singular triangular system in logm".into()))?;
    let z2 = &z * &z;
    let mut term = z.clone();
    let mut sum = z;
    let eps = T::default_epsilon();
    for j in 1..200 {
        term = &term * &z2;
        let inc = scale(&term, T::one() / T::lit((2 * j + 1) as f64));
        sum += &inc;
        if norm1(&inc) <= eps * norm1(&sum).max(eps) {
            break;
        }
    }
    let factor = T::lit(2.0) * T::lit(2f64.powi(halvings as i32));
    let log_t = scale(&sum, factor);
    Ok(&q * log_t * q.adjoint())
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm<T: Real>(a: &CMat<T>) -> CMat<T> {
    let n = a.nrows();
    let norm = norm1(a);
    let mut squarings = 0i32;
    let mut bound = norm;
    while bound > T::lit(0.5) {
        bound *= T::lit(0.5);
        squarings += 1;
    }
    let scaled = scale(a, T::one() / T::lit(2f64.powi(squarings)));
    let eye = identity::<T>(n);
    let mut sum = eye.clone();
    let mut term = eye;
    let eps = T::default_epsilon();
    for k in 1..40 {
        term = scale(&(&term * &scaled), T::one() / T::lit(k as f64));
        sum += &term;
        if norm1(&term) <= eps {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Factors a unitary symmetric matrix as `z = w wᵀ` with `w` unitary.
///
/// Real and imaginary parts of such a matrix are commuting real symmetric
/// matrices, so one real orthogonal basis diagonalizes both.
pub fn takagi_unitary_symmetric<T: Real>(z: &CMat<T>) -> CMat<T> {
    let n = z.nrows();
    let mix = T::lit(std::f64::consts::FRAC_1_SQRT_2 * 0.987_654_321);
    let combo = DMatrix::<T>::from_fn(n, n, |i, j| {
        let s = (z[(i, j)] + z[(j, i)]) * T::lit(0.5);
        s.re + mix * s.im
    });
    let (_, o) = real_symmetric_eigen(&combo);
    let oc = o.map(re);
    let d = oc.transpose() * z * &oc;
    let roots: Vec<Cx<T>> = (0..n).map(|k| ComplexField::sqrt(d[(k, k)])).collect();
    oc * diag_complex(&roots)
}
