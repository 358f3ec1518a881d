//! Angular-momentum operators, Floquet propagators, coherent states and the
//! parity rotation on the (2j+1)-dimensional symmetric subspace.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::linalg::SymmetricEigen;

use crate::{C64, CMatrix, CVector, Error, Result};

/// Unitarity tolerance enforced at construction time.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// System definition: twice-spin, chaoticity and kick angle.
///
/// The spin is stored as the integer `j2 = 2j` so half-integer spins are
/// represented exactly. The kick angle defaults to pi/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinParams {
    j2: u32,
    kappa0: f64,
    kick_angle: f64,
}

impl SpinParams {
    /// System with kick angle pi/2.
    pub fn new(j2: u32, kappa0: f64) -> Result<Self> {
        Self::with_kick_angle(j2, kappa0, FRAC_PI_2)
    }

    /// System with an explicit kick angle.
    pub fn with_kick_angle(j2: u32, kappa0: f64, kick_angle: f64) -> Result<Self> {
        if j2 < 1 {
            return Err(Error::InvalidSpin { j2 });
        }
        Ok(Self { j2, kappa0, kick_angle })
    }

    pub fn j2(&self) -> u32 {
        self.j2
    }

    /// Spin j = j2/2.
    pub fn j(&self) -> f64 {
        f64::from(self.j2) / 2.0
    }

    /// Hilbert-space dimension 2j+1.
    pub fn dim(&self) -> usize {
        self.j2 as usize + 1
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    pub fn kick_angle(&self) -> f64 {
        self.kick_angle
    }

    /// Same system with chaoticity kappa0 + delta.
    pub fn perturbed(&self, delta: f64) -> Self {
        Self { kappa0: self.kappa0 + delta, ..*self }
    }

    /// Jz eigenvalue of basis index `k`, i.e. m = j - k.
    pub fn m(&self, k: usize) -> f64 {
        self.j() - k as f64
    }
}

/// Diagonal Jz in its own eigenbasis, m = j, j-1, ..., -j.
pub fn build_jz(params: &SpinParams) -> CMatrix {
    let d = params.dim();
    CMatrix::from_fn(d, d, |r, c| {
        if r == c {
            C64::new(params.m(r), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

// Raising-operator element <m+1|J+|m> = sqrt(j(j+1) - m(m+1)) for the state
// one step below row r.
fn ladder_element(params: &SpinParams, r: usize) -> f64 {
    let j = params.j();
    let m = params.m(r + 1);
    (j * (j + 1.0) - m * (m + 1.0)).sqrt()
}

/// Jx = (J+ + J-)/2, real symmetric tridiagonal.
pub fn build_jx(params: &SpinParams) -> CMatrix {
    let d = params.dim();
    let mut out = CMatrix::zeros(d, d);
    for r in 0..d - 1 {
        let v = C64::new(ladder_element(params, r) / 2.0, 0.0);
        out[(r, r + 1)] = v;
        out[(r + 1, r)] = v;
    }
    out
}

/// Jy = (J+ - J-)/(2i), Hermitian tridiagonal with imaginary off-diagonals.
pub fn build_jy(params: &SpinParams) -> CMatrix {
    let d = params.dim();
    let mut out = CMatrix::zeros(d, d);
    for r in 0..d - 1 {
        let v = ladder_element(params, r) / 2.0;
        out[(r, r + 1)] = C64::new(0.0, -v);
        out[(r + 1, r)] = C64::new(0.0, v);
    }
    out
}

/// exp(-i angle Jy) by Hermitian eigendecomposition of Jy.
///
/// One code path serves every kick angle; the result is checked to be
/// unitary to [`CONSTRUCTION_TOL`].
pub fn rotation_y(params: &SpinParams, angle: f64) -> Result<CMatrix> {
    let jy = build_jy(params);
    let eig = SymmetricEigen::try_new(jy, f64::EPSILON, 0).ok_or(Error::Numeric {
        what: "Jy eigendecomposition",
        residual: f64::NAN,
    })?;
    let phases =
        CVector::from_iterator(params.dim(), eig.eigenvalues.iter().map(|&w| phase(-angle * w)));
    let v = eig.eigenvectors;
    let rot = &v * CMatrix::from_diagonal(&phases) * v.adjoint();
    let residual = unitarity_error(&rot);
    if residual > CONSTRUCTION_TOL {
        return Err(Error::Numeric { what: "rotation unitarity", residual });
    }
    Ok(rot)
}

/// One-period propagator U = exp(-i kappa0 Jz^2 / 2j) exp(-i p Jy).
pub fn floquet_operator(params: &SpinParams) -> Result<CMatrix> {
    let rot = rotation_y(params, params.kick_angle)?;
    Ok(torsion_diagonal(params) * rot)
}

/// The torsion factor exp(-i kappa0 Jz^2 / 2j) as a diagonal matrix.
pub fn torsion_diagonal(params: &SpinParams) -> CMatrix {
    let d = params.dim();
    let twice_j = f64::from(params.j2);
    CMatrix::from_diagonal(&CVector::from_iterator(
        d,
        (0..d).map(|k| {
            let m = params.m(k);
            phase(-params.kappa0 * m * m / twice_j)
        }),
    ))
}

/// Parity rotation exp(-i pi Jy); commutes with the Floquet propagator.
pub fn parity_operator(params: &SpinParams) -> Result<CMatrix> {
    rotation_y(params, PI)
}

/// Spin-coherent state |theta0, phi0> expanded in the Jz basis.
///
/// The amplitude on |j, j-k> is sqrt(C(2j,k)) cos^(2j-k)(theta0/2)
/// (e^(-i phi0) sin(theta0/2))^k; the result is normalized.
pub fn coherent_state(params: &SpinParams, theta0: f64, phi0: f64) -> CVector {
    let j2 = params.j2 as usize;
    let cos_half = (theta0 / 2.0).cos();
    let sin_factor = phase(-phi0) * (theta0 / 2.0).sin();
    let mut binom = 1.0f64;
    let mut amps = Vec::with_capacity(params.dim());
    for k in 0..=j2 {
        let amp = binom.sqrt()
            * cos_half.powi((j2 - k) as i32)
            * sin_factor.powu(k as u32);
        amps.push(amp);
        binom *= (j2 - k) as f64 / (k + 1) as f64;
    }
    let mut state = CVector::from_vec(amps);
    state /= C64::new(state.norm(), 0.0);
    state
}

/// Apply U to psi n times.
pub fn evolve(u: &CMatrix, psi: &CVector, n: u64) -> Result<CVector> {
    if u.ncols() != psi.len() {
        return Err(Error::DimensionMismatch { expected: u.ncols(), found: psi.len() });
    }
    let mut out = psi.clone();
    for _ in 0..n {
        out = u * out;
    }
    Ok(out)
}

/// U^n by repeated multiplication.
pub fn unitary_power(u: &CMatrix, n: u64) -> CMatrix {
    let mut out = CMatrix::identity(u.nrows(), u.ncols());
    for _ in 0..n {
        out = u * out;
    }
    out
}

/// e^(i t)
pub fn phase(t: f64) -> C64 {
    C64::new(t.cos(), t.sin())
}

/// Largest entrywise deviation between two matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// || U U^dagger - I ||_max
pub fn unitarity_error(u: &CMatrix) -> f64 {
    let id = CMatrix::identity(u.nrows(), u.ncols());
    max_abs_diff(&(u * u.adjoint()), &id)
}

/// || [A, B] ||_max
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    (a * b - b * a).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}
