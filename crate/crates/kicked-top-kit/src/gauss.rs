//! Gauss-sum decomposition of the torsion into a finite sum of pure
//! rotations at rational parameters, plus propagator periodicity checks.
//!
//! For integer spin and kappa0 = pi r j2 / s (coprime r, s) the torsion
//! e^(-i pi (r/s) Jz^2) equals sum_l a_l(r, s) e^(-i pi l Jz / s) with the
//! 2s coefficients a_l given by quadratic Gauss sums, so the whole Floquet
//! operator becomes a sum of at most 2s pure rotations.

use crate::spin::{floquet_operator, phase, rotation_y, SpinParams};
use crate::{C64, CMatrix, Error, Result};
use std::f64::consts::PI;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_coprime(r: u64, s: u64) -> Result<()> {
    if r == 0 || s == 0 || gcd(r, s) != 1 {
        return Err(Error::NotCoprime { r, s });
    }
    Ok(())
}

/// The chaoticity at which the (r, s) decomposition applies:
/// kappa0 = pi r j2 / s, i.e. kappa0/(2j) = pi r / s.
pub fn torsion_kappa0(j2: u32, r: u64, s: u64) -> f64 {
    PI * r as f64 * f64::from(j2) / s as f64
}

/// Gauss-sum coefficient a_l(r, s) = (1/2s) sum_m e^(-i pi m l / s) e^(-i pi r m^2 / s).
///
/// Phases are reduced modulo 2s in exact integer arithmetic, so the finite
/// sum is evaluated without large-argument trigonometry; a_l is periodic in
/// l with period 2s by construction.
pub fn gauss_coeff(l: u64, r: u64, s: u64) -> Result<C64> {
    check_coprime(r, s)?;
    let two_s = 2 * s as u128;
    let mut acc = C64::new(0.0, 0.0);
    for m in 0..2 * s {
        let exponent = (u128::from(m) * u128::from(l) + u128::from(r) * u128::from(m) * u128::from(m))
            % two_s;
        acc += phase(-PI * exponent as f64 / s as f64);
    }
    Ok(acc / (2.0 * s as f64))
}

/// Torsion written as a sum of z rotations: coefficients and the entrywise
/// reconstruction error on the Jz spectrum.
#[derive(Debug, Clone)]
pub struct GaussDecomposition {
    pub j2: u32,
    pub r: u64,
    pub s: u64,
    /// a_l for l = 0..2s-1.
    pub coefficients: Vec<C64>,
    /// max_m | sum_l a_l e^(-i pi l m / s) - e^(-i pi r m^2 / s) |
    pub reconstruction_error: f64,
}

impl GaussDecomposition {
    /// Coefficients above numerical dust; at most 2s.
    pub fn nonzero_terms(&self) -> usize {
        self.coefficients.iter().filter(|a| a.norm() > 1e-12).count()
    }

    /// The chaoticity this decomposition represents.
    pub fn kappa0(&self) -> f64 {
        torsion_kappa0(self.j2, self.r, self.s)
    }
}

/// Decompose the torsion of an integer-spin top at kappa0 = pi r j2 / s.
///
/// Half-integer spin needs a 4s-term variant and is not supported.
pub fn decompose_torsion(j2: u32, r: u64, s: u64) -> Result<GaussDecomposition> {
    if j2 % 2 != 0 || j2 == 0 {
        return Err(Error::HalfIntegerSpin { j2 });
    }
    check_coprime(r, s)?;
    let coefficients: Vec<C64> =
        (0..2 * s).map(|l| gauss_coeff(l, r, s)).collect::<Result<_>>()?;
    let two_s = 2 * i128::from(s);
    let j = i128::from(j2) / 2;
    let mut reconstruction_error = 0.0f64;
    for m in -j..=j {
        let mut acc = C64::new(0.0, 0.0);
        for (l, a) in coefficients.iter().enumerate() {
            let e = (l as i128 * m).rem_euclid(two_s);
            acc += a * phase(-PI * e as f64 / s as f64);
        }
        let e = (i128::from(r) * m * m).rem_euclid(two_s);
        let want = phase(-PI * e as f64 / s as f64);
        reconstruction_error = reconstruction_error.max((acc - want).norm());
    }
    Ok(GaussDecomposition { j2, r, s, coefficients, reconstruction_error })
}

/// Assemble sum_l a_l e^(-i pi l Jz / s) e^(-i pi Jy / 2) as a dense matrix;
/// equals the Floquet operator at kappa0 = pi r j2 / s.
pub fn reconstruct_floquet(dec: &GaussDecomposition) -> Result<CMatrix> {
    let params = SpinParams::new(dec.j2, dec.kappa0())?;
    let rot = rotation_y(&params, PI / 2.0)?;
    let d = params.dim();
    let mut sum = CMatrix::zeros(d, d);
    let two_s = 2 * i128::from(dec.s);
    for (l, a) in dec.coefficients.iter().enumerate() {
        if a.norm() <= 1e-15 {
            continue;
        }
        // diagonal z rotation with exact phase reduction on integer m
        let mut term = rot.clone();
        for row in 0..d {
            let m = i128::from(dec.j2) / 2 - row as i128;
            let e = (l as i128 * m).rem_euclid(two_s);
            let ph = a * phase(-PI * e as f64 / dec.s as f64);
            for col in 0..d {
                term[(row, col)] *= ph;
            }
        }
        sum += term;
    }
    Ok(sum)
}

/// Smallest n <= max_power with U^n proportional to the identity (global
/// phase allowed, tolerance `tol`), or None.
pub fn smallest_period(u: &CMatrix, max_power: u64, tol: f64) -> Option<u64> {
    let d = u.nrows();
    let mut p = CMatrix::identity(d, d);
    for n in 1..=max_power {
        p = u * p;
        let ph = p[(0, 0)];
        if (ph.norm() - 1.0).abs() < tol {
            let dev = (0..d)
                .flat_map(|r| (0..d).map(move |c| (r, c)))
                .map(|(r, c)| {
                    let want = if r == c { ph } else { C64::new(0.0, 0.0) };
                    (p[(r, c)] - want).norm()
                })
                .fold(0.0f64, f64::max);
            if dev < tol {
                return Some(n);
            }
        }
    }
    None
}

/// Scan for the smallest n with U^n proportional to identity, for the
/// Floquet operator at kappa0 = pi r j2 / s.
pub fn verify_periodicity(j2: u32, r: u64, s: u64, max_power: u64) -> Result<Option<u64>> {
    check_coprime(r, s)?;
    let params = SpinParams::new(j2, torsion_kappa0(j2, r, s))?;
    let u = floquet_operator(&params)?;
    Ok(smallest_period(&u, max_power, 1e-10))
}
