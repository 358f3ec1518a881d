//! Exact closed forms for the three-qubit (j = 3/2) and four-qubit (j = 2)
//! kicked tops: propagator blocks, OTOCs, averaged echoes and state
//! fidelities, all in terms of Chebyshev polynomials.
//!
//! The propagator splits into 2x2 parity blocks whose n-th powers have
//! entries alpha_n, beta_n built from T_n and U_{n-1} evaluated at
//! chi = sin(kappa0/3)/2 (three qubits) or sin(kappa0/2)/2 (four qubits).
//! Block prefactor phases are carried explicitly since echo traces mix
//! sectors.

use nalgebra::Matrix2;

use std::f64::consts::{FRAC_PI_4, PI};

use crate::spin::phase;
use crate::{C64, CVector, Error, Result};

/// First-kind Chebyshev polynomial T_n(x) = cos(n arccos x).
pub fn cheb_t(n: u64, x: f64) -> Result<f64> {
    if x.abs() > 1.0 {
        return Err(Error::ChebDomain { x });
    }
    Ok((n as f64 * x.acos()).cos())
}

/// Second-kind Chebyshev polynomial U_k(x) = sin((k+1) arccos x)/sin(arccos x).
///
/// At the endpoints the limit U_k(+-1) = (k+1)(+-1)^k is used, so
/// `cheb_u(n - 1, x)` gives the paper-form U_{n-1} including U_{n-1}(+-1) =
/// n(+-1)^(n-1).
pub fn cheb_u(k: u64, x: f64) -> Result<f64> {
    if x.abs() > 1.0 {
        return Err(Error::ChebDomain { x });
    }
    if 1.0 - x.abs() < 1e-12 {
        let sign = if x < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        return Ok(sign * (k + 1) as f64);
    }
    let theta = x.acos();
    Ok(((k + 1) as f64 * theta).sin() / theta.sin())
}

/// Which solvable system a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    ThreeQubit,
    FourQubit,
}

/// Parity sector label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

/// Closed-form entries (alpha_n, beta_n) of a parity block at step n.
///
/// Unitarity of the block is the Pell identity
/// T_n^2 + (1 - chi^2) U_{n-1}^2 = 1, i.e. |alpha_n|^2 + |beta_n|^2 = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebBlock {
    pub n: u64,
    pub alpha: C64,
    pub beta: C64,
    pub chi: f64,
    pub kind: BlockKind,
}

impl ChebBlock {
    /// | |alpha|^2 + |beta|^2 - 1 |
    pub fn pell_residual(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr() - 1.0).abs()
    }
}

// U_{n-1} with the n = 0 case (empty product) mapped to zero.
fn u_nm1(n: u64, chi: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        cheb_u(n - 1, chi).expect("|chi| <= 1/2")
    }
}

/// alpha_n, beta_n for j = 3/2: chi = sin(kappa0/3)/2, kappa = kappa0/6.
pub fn three_qubit_block(n: u64, kappa0: f64) -> ChebBlock {
    let kappa = kappa0 / 6.0;
    let chi = (kappa0 / 3.0).sin() / 2.0;
    let t = cheb_t(n, chi).expect("|chi| <= 1/2");
    let u = u_nm1(n, chi);
    ChebBlock {
        n,
        alpha: C64::new(t, 0.5 * u * (2.0 * kappa).cos()),
        beta: phase(2.0 * kappa) * (3.0f64.sqrt() / 2.0 * u),
        chi,
        kind: BlockKind::ThreeQubit,
    }
}

/// alpha_n, beta_n for j = 2: chi = sin(kappa0/2)/2, kappa = kappa0/2.
pub fn four_qubit_block(n: u64, kappa0: f64) -> ChebBlock {
    let kappa = kappa0 / 2.0;
    let chi = kappa.sin() / 2.0;
    let t = cheb_t(n, chi).expect("|chi| <= 1/2");
    let u = u_nm1(n, chi);
    ChebBlock {
        n,
        alpha: C64::new(t, 0.5 * u * kappa.cos()),
        beta: phase(kappa) * (3.0f64.sqrt() / 2.0 * u),
        chi,
        kind: BlockKind::FourQubit,
    }
}

// cos(n pi/2), sin(n pi/2) exactly.
fn quarter_turn(n: u64) -> (f64, f64) {
    match n % 4 {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}

fn sign_pow(n: u64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Full 2x2 parity-sector propagator power for j = 3/2, prefactor included:
/// U_pm^n = (+-1)^n e^(-i n (+-pi/4 + kappa)) [[alpha, -+beta*], [+-beta, alpha*]].
pub fn three_qubit_sector(n: u64, kappa0: f64, parity: Parity) -> Matrix2<C64> {
    let block = three_qubit_block(n, kappa0);
    let kappa = kappa0 / 6.0;
    let (sgn, parity_sign) = match parity {
        Parity::Plus => (1.0, 1.0),
        Parity::Minus => (-1.0, sign_pow(n)),
    };
    let pref = phase(-(n as f64) * (sgn * FRAC_PI_4 + kappa)) * parity_sign;
    Matrix2::new(
        pref * block.alpha,
        pref * (-sgn * block.beta.conj()),
        pref * (sgn * block.beta),
        pref * block.alpha.conj(),
    )
}

/// Positive-parity 2x2 propagator power for j = 2:
/// U_+^n = e^(-i n (pi + kappa)/2) [[alpha, i beta*], [i beta, alpha*]].
pub fn four_qubit_sector_plus(n: u64, kappa0: f64) -> Matrix2<C64> {
    let block = four_qubit_block(n, kappa0);
    let kappa = kappa0 / 2.0;
    let pref = phase(-(n as f64) * (PI + kappa) / 2.0);
    let i = C64::new(0.0, 1.0);
    Matrix2::new(
        pref * block.alpha,
        pref * i * block.beta.conj(),
        pref * i * block.beta,
        pref * block.alpha.conj(),
    )
}

/// Negative-parity 2x2 propagator power for j = 2; period 4 in n up to the
/// prefactor phase.
pub fn four_qubit_negative_block(n: u64, kappa0: f64) -> Matrix2<C64> {
    let kappa = kappa0 / 2.0;
    let (c, s) = quarter_turn(n);
    let pref = phase(-3.0 * n as f64 * kappa / 4.0);
    Matrix2::new(
        pref * c,
        pref * phase(3.0 * kappa / 4.0) * s,
        pref * (-phase(-3.0 * kappa / 4.0) * s),
        pref * c,
    )
}

/// Two- and four-point correlators for j = 3/2:
/// C2 = (41 - 32 |beta_n|^2)/16, C4 = (-1)^n (41 - 160 |beta_n|^2 + 128 |beta_n|^4)/16.
pub fn three_qubit_c2_c4(n: u64, kappa0: f64) -> (f64, f64) {
    let b2 = three_qubit_block(n, kappa0).beta.norm_sqr();
    let c2 = (41.0 - 32.0 * b2) / 16.0;
    let c4 = sign_pow(n) * (41.0 - 160.0 * b2 + 128.0 * b2 * b2) / 16.0;
    (c2, c4)
}

/// Infinite-temperature OTOC C(n) = C2(n) - C4(n) for j = 3/2.
pub fn three_qubit_otoc(n: u64, kappa0: f64) -> f64 {
    let (c2, c4) = three_qubit_c2_c4(n, kappa0);
    c2 - c4
}

/// Near-integrable expansion of the j = 3/2 OTOC, truncated at order
/// kappa0^4: (1/6) n^2 k^2 - (13/2592) n^4 k^4 for even n,
/// 5/8 + (1/288)(n^2-1)^2 k^4 for odd n.
pub fn three_qubit_otoc_small_kappa(n: u64, kappa0: f64) -> f64 {
    let nf = n as f64;
    let k2 = kappa0 * kappa0;
    if n % 2 == 0 {
        nf * nf * k2 / 6.0 - 13.0 / 2592.0 * nf.powi(4) * k2 * k2
    } else {
        let q = nf * nf - 1.0;
        0.625 + q * q * k2 * k2 / 288.0
    }
}

/// Infinite-temperature OTOC for j = 2, separate even/odd closed forms.
pub fn four_qubit_otoc(n: u64, kappa0: f64) -> f64 {
    let block = four_qubit_block(n, kappa0);
    let b2 = block.beta.norm_sqr();
    let nf = n as f64;
    if n % 2 == 0 {
        let rot = (block.alpha * block.alpha * phase(nf * kappa0 / 4.0)).re;
        (34.0 - 16.0 * b2 - 32.0 * rot - 2.0 * (3.0 * nf * kappa0 / 4.0).cos()) / 5.0
    } else {
        let sgn = sign_pow((n - 1) / 2);
        let im = (block.alpha * phase(nf * kappa0 / 2.0)).im;
        (25.0 - 16.0 * b2 - 16.0 * sgn * im) / 5.0
    }
}

/// Block pair at chaoticity kappa0 and kappa0 + delta, for echo formulas.
#[derive(Debug, Clone, Copy)]
pub struct EchoPair {
    pub base: ChebBlock,
    pub tilde: ChebBlock,
    pub delta: f64,
}

impl EchoPair {
    pub fn three_qubit(n: u64, kappa0: f64, delta: f64) -> Self {
        Self {
            base: three_qubit_block(n, kappa0),
            tilde: three_qubit_block(n, kappa0 + delta),
            delta,
        }
    }

    pub fn four_qubit(n: u64, kappa0: f64, delta: f64) -> Self {
        Self {
            base: four_qubit_block(n, kappa0),
            tilde: four_qubit_block(n, kappa0 + delta),
            delta,
        }
    }

    // alpha alpha~* + beta beta~* + beta* beta~ + alpha* alpha~; real by
    // construction.
    fn cross_term(&self) -> f64 {
        2.0 * ((self.base.alpha * self.tilde.alpha.conj()).re
            + (self.base.beta * self.tilde.beta.conj()).re)
    }
}

/// Haar-averaged echo for j = 3/2:
/// F3 = (1 + |alpha alpha~* + beta beta~* + beta* beta~ + alpha* alpha~|^2)/5.
pub fn three_qubit_avg_echo(n: u64, kappa0: f64, delta: f64) -> f64 {
    let pair = EchoPair::three_qubit(n, kappa0, delta);
    let a = pair.cross_term();
    (1.0 + a * a) / 5.0
}

/// Haar-averaged echo for j = 2.
///
/// The sector trace is 1 + e^(-i n delta/4) A
/// + 2 e^(-3 i n delta/8) (cos^2(n pi/2) + sin^2(n pi/2) cos(3 delta/8))
/// with A the same cross term as for three qubits; then
/// F4 = (5 + |trace|^2)/30.
pub fn four_qubit_avg_echo(n: u64, kappa0: f64, delta: f64) -> f64 {
    let pair = EchoPair::four_qubit(n, kappa0, delta);
    let a = pair.cross_term();
    let (c, s) = quarter_turn(n);
    let nf = n as f64;
    let trace = C64::new(1.0, 0.0)
        + phase(-nf * delta / 4.0) * a
        + phase(-3.0 * nf * delta / 8.0) * (2.0 * (c * c + s * s * (3.0 * delta / 8.0).cos()));
    (5.0 + trace.norm_sqr()) / 30.0
}

/// U^n |000> for j = 3/2 in the Jz basis (|000>, |W>, |Wbar>, |111>).
///
/// Matches the numerical evolution up to the global phase
/// e^(-i n kappa0/4) dropped from the qubit-picture propagator.
pub fn evolve_000(n: u64, kappa0: f64) -> CVector {
    let block = three_qubit_block(n, kappa0);
    let kappa = kappa0 / 6.0;
    let pref = phase(-(n as f64) * (3.0 * PI / 4.0 + kappa)) * 0.5;
    let i_n = match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let plus = one + i_n;
    let minus = one - i_n;
    CVector::from_vec(vec![
        pref * plus * block.alpha,
        -pref * minus * block.beta,
        pref * plus * i * block.beta,
        pref * minus * i * block.alpha,
    ])
}

/// Echo fidelity of |000> under kappa0 vs kappa0 + delta:
/// F = |alpha* alpha~ + beta* beta~|^2.
pub fn state_fidelity_000(n: u64, kappa0: f64, delta: f64) -> f64 {
    let pair = EchoPair::three_qubit(n, kappa0, delta);
    (pair.base.alpha.conj() * pair.tilde.alpha + pair.base.beta.conj() * pair.tilde.beta)
        .norm_sqr()
}

// gamma_n = (alpha_n - i sqrt(3) beta_n*)/2, delta_n = (beta_n + i sqrt(3) alpha_n*)/2
fn ppp_pair(block: &ChebBlock) -> (C64, C64) {
    let i = C64::new(0.0, 1.0);
    let r3 = 3.0f64.sqrt();
    (
        (block.alpha - i * r3 * block.beta.conj()) / 2.0,
        (block.beta + i * r3 * block.alpha.conj()) / 2.0,
    )
}

/// Echo fidelity of the |+++> coherent state (positive-parity sector only):
/// F = |gamma* gamma~ + delta* delta~|^2.
pub fn state_fidelity_ppp(n: u64, kappa0: f64, delta: f64) -> f64 {
    let pair = EchoPair::three_qubit(n, kappa0, delta);
    let (g, d) = ppp_pair(&pair.base);
    let (gt, dt) = ppp_pair(&pair.tilde);
    (g.conj() * gt + d.conj() * dt).norm_sqr()
}
