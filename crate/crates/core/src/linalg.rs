//! Fixed-size (4×4) complex linear algebra for two-qubit operators.
//!
//! Everything here works on stack-allocated `[[Complex64; 4]; 4]` arrays.
//! The eigensolver is a cyclic complex Jacobi iteration, which for a
//! matrix this small is both fast and unconditionally stable.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest tolerated `max |M - M†|` for an input to [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Largest tolerated `max |UU† - I|` for an input to [`conjugate`].
pub const UNITARY_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense 4×4 complex matrix in the computational basis `|00>, |01>, |10>, |11>`.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    pub const fn zeros() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(entries: [[f64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| Complex64::new(entries[i][j], 0.0))
    }

    pub fn from_real_diagonal(diag: [f64; 4]) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: [[Complex64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| columns[j][i])
    }

    pub fn column(&self, j: usize) -> [Complex64; 4] {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn diagonal(&self) -> [Complex64; 4] {
        [self.0[0][0], self.0[1][1], self.0[2][2], self.0[3][3]]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn mul_vec(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| self.0[i][k] * v[k]).sum();
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..4)
            .map(|j| (0..4).map(|i| self.0[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `max |M - M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |UU† - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale_real(0.5)
    }

    /// Kronecker product of two 2×2 matrices, `a ⊗ b`.
    pub fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> Self {
        Self::from_fn(|i, j| a[i / 2][j / 2] * b[i % 2][j % 2])
    }
}

impl Default for ComplexMatrix4 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl fmt::Debug for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix4[")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for ComplexMatrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

/// Ways in which a matrix fails to be a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityViolation {
    NonFinite,
    NotHermitian { defect: f64 },
    TraceNotOne { trace: Complex64 },
    NotPositive { min_eigenvalue: f64 },
}

impl fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonFinite => write!(f, "non-finite entries"),
            Self::NotHermitian { defect } => write!(f, "not Hermitian (defect {defect:e})"),
            Self::TraceNotOne { trace } => write!(f, "trace {trace} != 1"),
            Self::NotPositive { min_eigenvalue } => {
                write!(f, "negative eigenvalue {min_eigenvalue:e}")
            }
        }
    }
}

/// Checks Hermiticity, unit trace and positivity, each against `tol`.
///
/// Returns an empty list for a valid state.
pub fn validate_density(m: &ComplexMatrix4, tol: f64) -> Vec<DensityViolation> {
    if !m.is_finite() {
        return vec![DensityViolation::NonFinite];
    }
    let mut out = Vec::new();
    let defect = m.hermiticity_defect();
    if defect > tol {
        out.push(DensityViolation::NotHermitian { defect });
    }
    let trace = m.trace();
    if (trace - ONE).norm() > tol {
        out.push(DensityViolation::TraceNotOne { trace });
    }
    // Positivity is judged on the Hermitian part so that a Hermiticity
    // violation does not also abort the spectral check.
    if let Ok(eig) = hermitian_eig(&m.hermitian_part()) {
        let min_eigenvalue = eig.values[0];
        if min_eigenvalue < -tol {
            out.push(DensityViolation::NotPositive { min_eigenvalue });
        }
    }
    out
}

/// A 4×4 Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4(ComplexMatrix4);

impl DensityMatrix4 {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const POSITIVITY_TOL: f64 = 1e-10;

    /// Validates `m` and wraps it.
    pub fn new(m: ComplexMatrix4) -> Result<Self> {
        let violations: Vec<_> = validate_density(&m, Self::HERMITIAN_TOL)
            .into_iter()
            .filter(|v| match v {
                DensityViolation::NotPositive { min_eigenvalue } => {
                    *min_eigenvalue < -Self::POSITIVITY_TOL
                }
                _ => true,
            })
            .collect();
        if violations.is_empty() {
            Ok(Self(m))
        } else {
            Err(Error::InvalidDensity(violations))
        }
    }

    /// Wraps a matrix known to be a state by construction.
    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix4) -> Self {
        Self(m)
    }

    /// `|ψ><ψ|` for a normalised `psi`.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        Self::new(ComplexMatrix4::from_fn(|i, j| psi[i] * psi[j].conj()))
    }

    pub fn diagonal(populations: [f64; 4]) -> Result<Self> {
        Self::new(ComplexMatrix4::from_real_diagonal(populations))
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix4::from_real_diagonal([0.25; 4]))
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix4 {
        self.0
    }

    /// `Tr[ρ A]`, real part (exact for Hermitian `A`).
    pub fn expectation(&self, a: &ComplexMatrix4) -> f64 {
        (self.0 * *a).trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn spectrum(&self) -> Result<[f64; 4]> {
        Ok(hermitian_eig(&self.0)?.values)
    }
}

impl Index<(usize, usize)> for DensityMatrix4 {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

/// Eigendecomposition of a 4×4 Hermitian matrix.
///
/// `values` are ascending and column `i` of `vectors` pairs with `values[i]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem4 {
    values: [f64; 4],
    vectors: ComplexMatrix4,
}

impl EigenSystem4 {
    /// Builds an eigensystem from parts, checking ordering and orthonormality.
    pub fn new(values: [f64; 4], vectors: ComplexMatrix4) -> Result<Self> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: "eigenvalues must be ascending".into(),
            });
        }
        let gram_defect = (vectors.adjoint() * vectors).max_abs_diff(&ComplexMatrix4::identity());
        if gram_defect > 1e-10 {
            return Err(Error::InvalidParameter {
                name: "vectors",
                reason: format!("columns not orthonormal (defect {gram_defect:e})"),
            });
        }
        Ok(Self { values, vectors })
    }

    pub fn values(&self) -> [f64; 4] {
        self.values
    }

    /// Eigenvectors as columns.
    pub fn vectors(&self) -> &ComplexMatrix4 {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> [Complex64; 4] {
        self.vectors.column(i)
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix4 {
        self.assemble(self.values)
    }

    /// `Σ_i weights[i] |v_i><v_i|` on this eigenbasis.
    pub fn assemble(&self, weights: [f64; 4]) -> ComplexMatrix4 {
        let v = &self.vectors;
        ComplexMatrix4::from_fn(|i, j| {
            (0..4)
                .map(|k| v[(i, k)] * weights[k] * v[(j, k)].conj())
                .sum()
        })
    }

    /// Matrix elements `<v_i| M |v_j>`.
    pub fn represent(&self, m: &ComplexMatrix4) -> ComplexMatrix4 {
        self.vectors.adjoint() * *m * self.vectors
    }
}

/// Cyclic Jacobi eigendecomposition of a Hermitian 4×4 matrix.
///
/// Eigenvalues come back ascending (stable with respect to Jacobi output
/// order on ties). Each eigenvector is rotated so that its
/// largest-magnitude component (the first one, on ties) is real and
/// positive, which makes the output reproducible.
pub fn hermitian_eig(m: &ComplexMatrix4) -> Result<EigenSystem4> {
    if !m.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let defect = m.hermiticity_defect();
    if !(defect <= HERMITIAN_TOL) {
        return Err(Error::NonHermitianInput { defect });
    }
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix4::identity();
    let threshold = JACOBI_OFF_TOL * a.frobenius().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= threshold {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let raw: [f64; 4] = std::array::from_fn(|i| a[(i, i)].re);
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]));

    let values = order.map(|k| raw[k]);
    let columns = order.map(|k| normalize_phase(v.column(k)));
    Ok(EigenSystem4 {
        values,
        vectors: ComplexMatrix4::from_columns(columns),
    })
}

fn off_diagonal_norm(a: &ComplexMatrix4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// The rotation is `J = D R` with `D = diag(1, e^{-iφ})` removing the phase
/// of `a[p][q]` and `R` the real Givens rotation of the resulting symmetric
/// 2×2 block. `a ← J† a J`, `v ← v J`.
fn jacobi_rotate(a: &mut ComplexMatrix4, v: &mut ComplexMatrix4, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase_conj = (apq / mag).conj();
    let theta = 0.5 * (2.0 * mag).atan2(a[(q, q)].re - a[(p, p)].re);
    let (s, c) = theta.sin_cos();

    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = phase_conj * -s;
    let j_qq = phase_conj * c;

    // columns: a ← a J
    for k in 0..4 {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
    // rows: a ← J† a
    for k in 0..4 {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

fn normalize_phase(mut col: [Complex64; 4]) -> [Complex64; 4] {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return col;
    }
    let pivot = col
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-12))
        .expect("maximum is attained");
    let rot = col[pivot].conj() / col[pivot].norm();
    for z in &mut col {
        *z *= rot;
    }
    col[pivot] = Complex64::new(col[pivot].re, 0.0);
    col
}

/// `U ρ U†`, rejecting non-unitary `U`.
pub fn conjugate(u: &ComplexMatrix4, rho: &DensityMatrix4) -> Result<DensityMatrix4> {
    let defect = u.unitarity_defect();
    if !(defect <= UNITARY_TOL) {
        return Err(Error::NonUnitaryInput { defect });
    }
    let out = (*u * *rho.matrix() * u.adjoint()).hermitian_part();
    Ok(DensityMatrix4::from_matrix_unchecked(out))
}

/// General dense matrix exponential by scaling and squaring.
///
/// `A` is scaled by `2^-s` until `‖A‖₁ ≤ 0.5`, the Taylor series is summed
/// until the next term drops below machine epsilon relative to the partial
/// sum (at most 40 terms; about 18 are needed at the threshold), and the
/// result is squared `s` times. Intended as a reference for closed forms,
/// not as a general-purpose `expm`.
pub fn matrix_exp_oracle(a: &ComplexMatrix4) -> ComplexMatrix4 {
    const SCALE_THRESHOLD: f64 = 0.5;
    const MAX_TERMS: u32 = 40;

    let norm = a.norm_one();
    let mut squarings = 0i32;
    if norm > SCALE_THRESHOLD {
        squarings = (norm / SCALE_THRESHOLD).log2().ceil() as i32;
    }
    let b = a.scale_real(2f64.powi(-squarings));

    let mut sum = ComplexMatrix4::identity();
    let mut term = ComplexMatrix4::identity();
    for k in 1..=MAX_TERMS {
        term = (term * b).scale_real(1.0 / f64::from(k));
        sum = sum + term;
        if term.max_abs() <= f64::EPSILON * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}
