//! Brute-force verification in a truncated Fock space.
//!
//! Each mode keeps the levels `0..cutoff`. Operators are normal ordered
//! before truncation, so `a†a` is exact on every kept level and a Hamiltonian
//! restricted to the space is the exact projection `P H P`; its lowest
//! eigenvalue bounds the true ground energy from above. Creation operators
//! send the top level to zero, which is why every closed-form comparison is
//! gated on the tail mass beyond the cutoff.
//!
//! Operators are stored sparsely. Only exact diagonalization densifies.

use std::collections::HashMap;

use nalgebra::ComplexField;

use crate::bogoliubov::BtMatrix;
use crate::error::{Error, Result};
use crate::linalg::{conj, conj_vec, hermitian_eigen, sub_block};
use crate::model::BilinearHamiltonian;
use crate::scalar::{re, CMat, CVec, Cx, Real};
use crate::squeezeop::exponent_form;
use crate::states::{fock_amplitudes, QuadratureCovariance, StateDescriptor};

/// Largest dimension [`build_hamiltonian`] will densify.
pub const DENSE_DIM_LIMIT: usize = 20_000;

/// Default tail-mass gate for closed-form states.
pub const DEFAULT_TAIL_TOL: f64 = 1e-8;

/// Largest dimension probed when searching for a sufficient cutoff.
const SUGGESTION_DIM_LIMIT: usize = 4_000_000;

/// Product space of `n_modes` oscillators truncated to `cutoff` levels each.
/// Flat indices are row-major with mode 0 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedFockSpace {
    pub n_modes: usize,
    pub cutoff: usize,
    pub dim: usize,
}

impl TruncatedFockSpace {
    pub fn new(n_modes: usize, cutoff: usize) -> Result<Self> {
        if n_modes == 0 || cutoff == 0 {
            return Err(Error::Shape("truncated space needs at least one mode and one level".into()));
        }
        let dim = cutoff
            .checked_pow(n_modes as u32)
            .ok_or(Error::SpaceTooLarge { dim: usize::MAX, limit: DENSE_DIM_LIMIT })?;
        Ok(Self { n_modes, cutoff, dim })
    }

    fn stride(&self, mode: usize) -> usize {
        self.cutoff.pow((self.n_modes - 1 - mode) as u32)
    }

    pub fn index(&self, m: &[usize]) -> usize {
        m.iter().fold(0, |acc, &k| acc * self.cutoff + k)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut m = vec![0; self.n_modes];
        for j in (0..self.n_modes).rev() {
            m[j] = flat % self.cutoff;
            flat /= self.cutoff;
        }
        m
    }

    pub fn occupation(&self, flat: usize, mode: usize) -> usize {
        (flat / self.stride(mode)) % self.cutoff
    }

    pub fn vacuum<T: Real>(&self) -> StateVector<T> {
        self.basis(&vec![0; self.n_modes])
    }

    pub fn basis<T: Real>(&self, m: &[usize]) -> StateVector<T> {
        let mut v = CVec::<T>::zeros(self.dim);
        v[self.index(m)] = re(T::one());
        StateVector::new(v)
    }

    /// `aᵢ v`.
    pub fn lower<T: Real>(&self, mode: usize, v: &CVec<T>) -> CVec<T> {
        let stride = self.stride(mode);
        CVec::<T>::from_fn(self.dim, |k, _| {
            let occ = self.occupation(k, mode);
            if occ + 1 < self.cutoff {
                v[k + stride] * T::lit(((occ + 1) as f64).sqrt())
            } else {
                re(T::zero())
            }
        })
    }

    /// `aᵢ† v`, with the top level sent to zero.
    pub fn raise<T: Real>(&self, mode: usize, v: &CVec<T>) -> CVec<T> {
        let stride = self.stride(mode);
        CVec::<T>::from_fn(self.dim, |k, _| {
            let occ = self.occupation(k, mode);
            if occ > 0 {
                v[k - stride] * T::lit((occ as f64).sqrt())
            } else {
                re(T::zero())
            }
        })
    }

    /// `aᵢ†aᵢ v`.
    pub fn number<T: Real>(&self, mode: usize, v: &CVec<T>) -> CVec<T> {
        CVec::<T>::from_fn(self.dim, |k, _| v[k] * T::lit(self.occupation(k, mode) as f64))
    }
}

/// Amplitudes with their Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    pub amplitudes: CVec<T>,
    pub norm: T,
}

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: CVec<T>) -> Self {
        let norm = amplitudes.norm();
        Self { amplitudes, norm }
    }

    pub fn normalized(&self) -> Self {
        Self::new(self.amplitudes.map(|z| z / self.norm))
    }

    /// `1 − ‖v‖²`, the weight missing from the truncated space.
    pub fn norm_deficit(&self) -> T {
        T::one() - self.norm * self.norm
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Cx<T> {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|⟨self|other⟩| / (‖self‖ ‖other‖)`.
    pub fn overlap(&self, other: &Self) -> T {
        ComplexField::modulus(self.inner(other)) / (self.norm * other.norm)
    }
}

/// Normal-ordered operator
/// `c + Σ hᵢⱼaᵢ†aⱼ + Σ pᵢⱼaᵢ†aⱼ† + Σ qᵢⱼaᵢaⱼ + Σ fᵢaᵢ† + Σ gᵢaᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<T: Real> {
    pub constant: Cx<T>,
    pub hop: CMat<T>,
    pub pair_create: CMat<T>,
    pub pair_annihilate: CMat<T>,
    pub create: CVec<T>,
    pub annihilate: CVec<T>,
}

impl<T: Real> QuadraticForm<T> {
    pub fn zero(n: usize) -> Self {
        Self {
            constant: re(T::zero()),
            hop: CMat::<T>::zeros(n, n),
            pair_create: CMat::<T>::zeros(n, n),
            pair_annihilate: CMat::<T>::zeros(n, n),
            create: CVec::<T>::zeros(n),
            annihilate: CVec::<T>::zeros(n),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.hop.nrows()
    }

    /// The Hamiltonian, using `a ξ* a† = a†ξa + Tr ξ`.
    pub fn hamiltonian(h: &BilinearHamiltonian<T>) -> Self {
        Self {
            constant: h.xi.trace(),
            hop: &h.xi * re(T::lit(2.0)),
            pair_create: h.eta.clone(),
            pair_annihilate: conj(&h.eta),
            create: conj_vec(&h.kappa),
            annihilate: h.kappa.clone(),
        }
    }

    /// `−½ [a†ᵀ aᵀ] K ln M [a; a†]`, whose exponential is the squeeze
    /// operator of `bt`.
    pub fn squeeze_generator(bt: &BtMatrix<T>) -> Result<Self> {
        let n = bt.n_modes();
        let l = exponent_form(bt)?.log_m;
        let (l11, l12, l21, l22) = (sub_block(&l, 0, 0), sub_block(&l, 0, 1), sub_block(&l, 1, 0), sub_block(&l, 1, 1));
        let half = re(T::lit(0.5));
        Ok(Self {
            constant: l22.trace() * half,
            hop: (l11 - l22.transpose()) * (-half),
            pair_create: l12 * (-half),
            pair_annihilate: l21 * half,
            create: CVec::<T>::zeros(n),
            annihilate: CVec::<T>::zeros(n),
        })
    }

    /// `αᵀa† − α†a`, the generator of `D(α)`.
    pub fn displacement_generator(alpha: &CVec<T>) -> Self {
        let mut f = Self::zero(alpha.len());
        f.create = alpha.clone();
        f.annihilate = -conj_vec(alpha);
        f
    }

    /// `cᵢ† = Σⱼ u*ᵢⱼ aⱼ† + v*ᵢⱼ aⱼ`.
    pub fn quasi_creation(bt: &BtMatrix<T>, mode: usize) -> Self {
        let mut f = Self::zero(bt.n_modes());
        f.create = bt.u.row(mode).transpose().map(|z| z.conj());
        f.annihilate = bt.v.row(mode).transpose().map(|z| z.conj());
        f
    }

    pub fn to_operator(&self, space: &TruncatedFockSpace) -> SparseOperator<T> {
        SparseOperator::from_form(self, space)
    }
}

/// Compressed-row sparse matrix on a truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T: Real> {
    pub dim: usize,
    rows: Vec<Vec<(usize, Cx<T>)>>,
}

fn lower_basis(space: &TruncatedFockSpace, k: usize, mode: usize) -> Option<(usize, f64)> {
    let occ = space.occupation(k, mode);
    (occ > 0).then(|| (k - space.stride(mode), (occ as f64).sqrt()))
}

fn raise_basis(space: &TruncatedFockSpace, k: usize, mode: usize) -> Option<(usize, f64)> {
    let occ = space.occupation(k, mode);
    (occ + 1 < space.cutoff).then(|| (k + space.stride(mode), ((occ + 1) as f64).sqrt()))
}

impl<T: Real> SparseOperator<T> {
    pub fn from_form(f: &QuadraticForm<T>, space: &TruncatedFockSpace) -> Self {
        let n = f.n_modes();
        let zero = re(T::zero());
        let mut rows: Vec<HashMap<usize, Cx<T>>> = vec![HashMap::new(); space.dim];
        let mut push = |row: usize, col: usize, val: Cx<T>| {
            if val != zero {
                *rows[row].entry(col).or_insert(zero) += val;
            }
        };
        type Step = fn(&TruncatedFockSpace, usize, usize) -> Option<(usize, f64)>;
        let chain = |k: usize, first: (Step, usize), second: (Step, usize)| {
            let (k1, f1) = (first.0)(space, k, first.1)?;
            let (k2, f2) = (second.0)(space, k1, second.1)?;
            Some((k2, f1 * f2))
        };
        for col in 0..space.dim {
            push(col, col, f.constant);
            for i in 0..n {
                for j in 0..n {
                    if let Some((row, s)) = chain(col, (lower_basis, j), (raise_basis, i)) {
                        push(row, col, f.hop[(i, j)] * T::lit(s));
                    }
                    if let Some((row, s)) = chain(col, (raise_basis, j), (raise_basis, i)) {
                        push(row, col, f.pair_create[(i, j)] * T::lit(s));
                    }
                    if let Some((row, s)) = chain(col, (lower_basis, j), (lower_basis, i)) {
                        push(row, col, f.pair_annihilate[(i, j)] * T::lit(s));
                    }
                }
                if let Some((row, s)) = raise_basis(space, col, i) {
                    push(row, col, f.create[i] * T::lit(s));
                }
                if let Some((row, s)) = lower_basis(space, col, i) {
                    push(row, col, f.annihilate[i] * T::lit(s));
                }
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                let mut r: Vec<(usize, Cx<T>)> = r.into_iter().collect();
                r.sort_by_key(|e| e.0);
                r
            })
            .collect();
        Self { dim: space.dim, rows }
    }

    pub fn apply(&self, v: &CVec<T>) -> CVec<T> {
        CVec::<T>::from_fn(self.dim, |r, _| self.rows[r].iter().fold(re(T::zero()), |acc, (c, a)| acc + *a * v[*c]))
    }

    pub fn to_dense(&self) -> CMat<T> {
        let mut m = CMat::<T>::zeros(self.dim, self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, a) in row {
                m[(r, *c)] = *a;
            }
        }
        m
    }

    /// Largest column sum of entry moduli.
    pub fn norm1(&self) -> T {
        let mut cols = vec![T::zero(); self.dim];
        for row in &self.rows {
            for (c, a) in row {
                cols[*c] += ComplexField::modulus(*a);
            }
        }
        cols.into_iter().fold(T::zero(), |a, b| a.max(b))
    }

    /// `max |Aᵣ꜀ − s·conj(A꜀ᵣ)|` over all entries.
    fn adjoint_residual(&self, sign: T) -> T {
        let lookup: HashMap<(usize, usize), Cx<T>> =
            self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, a)| ((r, *c), *a))).collect();
        let zero = re(T::zero());
        lookup.iter().fold(T::zero(), |acc, (&(r, c), a)| {
            let t = lookup.get(&(c, r)).copied().unwrap_or(zero);
            acc.max(ComplexField::modulus(*a - t.conj() * sign))
        })
    }

    pub fn hermiticity_residual(&self) -> T {
        self.adjoint_residual(T::one())
    }

    pub fn anti_hermiticity_residual(&self) -> T {
        self.adjoint_residual(-T::one())
    }
}

/// Normal-ordered Hamiltonian restricted to `space` (sparse, no size guard).
pub fn hamiltonian_operator<T: Real>(
    h: &BilinearHamiltonian<T>,
    space: &TruncatedFockSpace,
) -> Result<SparseOperator<T>> {
    if h.n_modes != space.n_modes {
        return Err(Error::DimensionMismatch { expected: space.n_modes, found: h.n_modes });
    }
    Ok(QuadraticForm::hamiltonian(h).to_operator(space))
}

/// Dense Hamiltonian matrix on `space`.
pub fn build_hamiltonian<T: Real>(h: &BilinearHamiltonian<T>, space: &TruncatedFockSpace) -> Result<CMat<T>> {
    if space.dim > DENSE_DIM_LIMIT {
        return Err(Error::SpaceTooLarge { dim: space.dim, limit: DENSE_DIM_LIMIT });
    }
    Ok(hamiltonian_operator(h, space)?.to_dense())
}

/// Full eigendecomposition of a Hermitian matrix, ascending.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Real> {
    pub values: Vec<T>,
    pub vectors: CMat<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn new(hmat: &CMat<T>) -> Self {
        let (values, vectors) = hermitian_eigen(hmat);
        Self { values, vectors }
    }

    pub fn ground(&self) -> (StateVector<T>, T) {
        (StateVector::new(self.vectors.column(0).into_owned()), self.values[0])
    }

    /// Weight of `v` (normalized) inside the eigenspace of eigenvalues within
    /// `tol` of `energy`. Returns the weight and the eigenspace dimension.
    pub fn eigenspace_weight(&self, v: &StateVector<T>, energy: T, tol: T) -> (T, usize) {
        let mut weight = T::zero();
        let mut count = 0;
        for (k, &e) in self.values.iter().enumerate() {
            if (e - energy).abs() <= tol {
                weight += self.vectors.column(k).dotc(&v.amplitudes).norm_sqr();
                count += 1;
            }
        }
        (weight / (v.norm * v.norm), count)
    }
}

/// Lowest eigenvector and eigenvalue of a Hermitian matrix.
pub fn ground_state<T: Real>(hmat: &CMat<T>) -> (StateVector<T>, T) {
    Spectrum::new(hmat).ground()
}

fn tail_mass<T: Real>(s: &StateDescriptor<T>, cutoff: usize) -> Result<T> {
    let total = fock_amplitudes(s, cutoff)?.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
    Ok(T::one() - total)
}

/// Smallest probed cutoff above `from` whose tail mass is below `tol`, or
/// the last one probed.
pub fn suggest_cutoff<T: Real>(s: &StateDescriptor<T>, from: usize, tol: T) -> Result<usize> {
    let modes = s.n_modes() as u32;
    let mut c = from.max(1);
    loop {
        let next = (c + c.div_ceil(4)).max(c + 1);
        match next.checked_pow(modes) {
            Some(d) if d <= SUGGESTION_DIM_LIMIT => {}
            _ => return Ok(c),
        }
        c = next;
        if tail_mass(s, c)? < tol {
            return Ok(c);
        }
    }
}

/// The closed-form amplitudes `⟨m|state⟩` for every basis vector of `space`,
/// unnormalized so that [`StateVector::norm_deficit`] is the tail mass.
pub fn build_closed_form_state<T: Real>(
    s: &StateDescriptor<T>,
    space: &TruncatedFockSpace,
    tail_tol: T,
) -> Result<StateVector<T>> {
    if s.n_modes() != space.n_modes {
        return Err(Error::DimensionMismatch { expected: space.n_modes, found: s.n_modes() });
    }
    let v = StateVector::new(CVec::<T>::from_vec(fock_amplitudes(s, space.cutoff)?));
    let tail = v.norm_deficit();
    if tail > tail_tol {
        return Err(Error::TailMassTooLarge {
            tail_mass: tail.as_f64(),
            tolerance: tail_tol.as_f64(),
            cutoff: space.cutoff,
            suggested_cutoff: suggest_cutoff(s, space.cutoff, tail_tol)?,
        });
    }
    Ok(v)
}

/// `exp(gen) v` by scaled Taylor steps. `gen` must be anti-Hermitian.
pub fn apply_generator_exp<T: Real>(gen: &SparseOperator<T>, v: &StateVector<T>) -> Result<StateVector<T>> {
    let scale = gen.norm1();
    let residual = gen.anti_hermiticity_residual();
    if residual > T::lit(1e-10) * T::one().max(scale) {
        return Err(Error::NotAntiHermitian { residual: residual.as_f64() });
    }
    let steps = (scale.as_f64() / 0.5).ceil().max(1.0) as usize;
    let h = re(T::one() / T::lit(steps as f64));
    let mut x = v.amplitudes.clone();
    for _ in 0..steps {
        let mut term = x.clone();
        let mut acc = x.clone();
        for k in 1..200 {
            term = gen.apply(&term) * (h / T::lit(k as f64));
            acc += &term;
            if term.norm() <= T::default_epsilon() * acc.norm() {
                break;
            }
        }
        x = acc;
    }
    Ok(StateVector::new(x))
}

/// Applies a sequence of generator exponentials, last one first.
fn apply_exps<T: Real>(
    forms: &[QuadraticForm<T>],
    space: &TruncatedFockSpace,
    v: StateVector<T>,
) -> Result<StateVector<T>> {
    forms.iter().rev().try_fold(v, |acc, f| apply_generator_exp(&f.to_operator(space), &acc))
}

/// Squeeze generator of `D_φ M` for the first trial phase vector whose
/// principal logarithm exists. The row phases only relabel `c`, and
/// `U = U_φ R†` with `R† = exp(i Σ φᵢ aᵢ†aᵢ)`.
fn rephased_squeeze<T: Real>(bt: &BtMatrix<T>) -> Result<(QuadraticForm<T>, Vec<T>)> {
    let n = bt.n_modes();
    let mut last = None;
    for k in 0..16 {
        let phi: Vec<T> = (0..n).map(|i| T::lit(0.61 * (k * (i + 1)) as f64)).collect();
        match QuadraticForm::squeeze_generator(&bt.apply_phase(&phi)?) {
            Ok(f) => return Ok((f, phi)),
            Err(e @ Error::BranchCut { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one trial"))
}

/// `U D(α)|n⟩` built in the truncated space from the squeeze and
/// displacement generators, independent of the closed forms. When `ln M`
/// is undefined the rows of `M` are rephased first.
pub fn operator_state<T: Real>(s: &StateDescriptor<T>, space: &TruncatedFockSpace) -> Result<StateVector<T>> {
    if s.n_modes() != space.n_modes {
        return Err(Error::DimensionMismatch { expected: space.n_modes, found: s.n_modes() });
    }
    let mut v = space.basis(&s.n);
    if s.kind.is_displaced() {
        v = apply_exps(&[QuadraticForm::displacement_generator(&s.alpha)], space, v)?;
    }
    if !s.kind.is_squeezed() {
        return Ok(v);
    }
    let (gen, phi) = rephased_squeeze(&s.bt)?;
    let rotated = CVec::<T>::from_fn(space.dim, |k, _| {
        let angle = (0..space.n_modes).fold(T::zero(), |acc, i| acc + phi[i] * T::lit(space.occupation(k, i) as f64));
        v.amplitudes[k] * Cx::new(angle.cos(), angle.sin())
    });
    apply_generator_exp(&gen.to_operator(space), &StateVector::new(rotated))
}

/// `Πᵢ (cᵢ†)^{nᵢ} / √nᵢ! v`, the quasi-particle excitations of `v`.
pub fn excite<T: Real>(
    bt: &BtMatrix<T>,
    n: &[usize],
    space: &TruncatedFockSpace,
    v: &StateVector<T>,
) -> StateVector<T> {
    let mut x = v.amplitudes.clone();
    for (mode, &k) in n.iter().enumerate() {
        let op = QuadraticForm::quasi_creation(bt, mode).to_operator(space);
        for j in 1..=k {
            x = op.apply(&x) / re(T::lit(j as f64).sqrt());
        }
    }
    StateVector::new(x)
}

/// Numerical photon statistics and quadrature covariance of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericMoments<T: Real> {
    pub mean_n: Vec<T>,
    pub var_n: Vec<T>,
    pub cov: QuadratureCovariance<T>,
}

/// Moments by direct contraction; `v` is normalized first.
pub fn numeric_moments<T: Real>(v: &StateVector<T>, space: &TruncatedFockSpace) -> NumericMoments<T> {
    let psi = v.normalized().amplitudes;
    let n = space.n_modes;
    let mut mean_n = Vec::with_capacity(n);
    let mut var_n = Vec::with_capacity(n);
    let half = re(T::lit(0.5));
    let half_i = Cx::<T>::new(T::zero(), T::lit(0.5));
    let mut quads = Vec::with_capacity(2 * n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let np = space.number(i, &psi);
        let m = psi.dotc(&np).re;
        mean_n.push(m);
        var_n.push(np.norm_squared() - m * m);
        let (lo, hi) = (space.lower(i, &psi), space.raise(i, &psi));
        quads.push((&lo + &hi) * half);
        // Y = (a − a†)/2i
        ys.push((&lo - &hi) * (-half_i));
    }
    quads.extend(ys);
    let means: Vec<Cx<T>> = quads.iter().map(|q| psi.dotc(q)).collect();
    let cov = CMat::<T>::from_fn(2 * n, 2 * n, |r, c| quads[r].dotc(&quads[c]) - means[r] * means[c]);
    NumericMoments { mean_n, var_n, cov: QuadratureCovariance { cov } }
}
