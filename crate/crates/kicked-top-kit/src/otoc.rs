//! Numerical infinite-temperature OTOC for arbitrary spin, with the
//! two-point/four-point split and quantum Lyapunov estimates.
//!
//! The observable is the collective spin A(0) = Jz and the state is
//! rho = I/(2j+1), so C(n) = -Tr(rho [A(n), A(0)]^2)/2 with
//! A(n) = U^(-n) A U^n. C2(n) = Tr[A(n)^2 A(0)^2]/(2j+1) and
//! C4(n) = Tr[A(n) A(0) A(n) A(0)]/(2j+1) satisfy C = C2 - C4.

use crate::spin::{build_jz, floquet_operator, SpinParams};
use crate::{CMatrix, Error, Result};

/// One OTOC sample: C(n) from the commutator plus its two-/four-point split.
#[derive(Debug, Clone, Copy)]
pub struct OtocPoint {
    pub n: u64,
    pub c_inf: f64,
    pub c2: f64,
    pub c4: f64,
}

/// OTOC series for n = 1..n_max.
#[derive(Debug, Clone)]
pub struct OtocSeries {
    pub params: SpinParams,
    pub values: Vec<OtocPoint>,
}

impl OtocSeries {
    /// Sample at step n, if within range.
    pub fn get(&self, n: u64) -> Option<&OtocPoint> {
        (n >= 1).then(|| self.values.get(n as usize - 1)).flatten()
    }
}

/// Heisenberg evolution A(n) = U^(-n) A U^n.
pub fn heisenberg_evolve(u: &CMatrix, a: &CMatrix, n: u64) -> Result<CMatrix> {
    if u.nrows() != a.nrows() || u.ncols() != a.ncols() {
        return Err(Error::DimensionMismatch { expected: u.nrows(), found: a.nrows() });
    }
    let mut out = a.clone();
    for _ in 0..n {
        out = u.adjoint() * out * u;
    }
    Ok(out)
}

/// Infinite-temperature OTOC series with A(0) = Jz.
pub fn otoc_infinite(params: &SpinParams, n_max: u64) -> Result<OtocSeries> {
    let u = floquet_operator(params)?;
    let a0 = build_jz(params);
    let a0_sq = &a0 * &a0;
    let d = params.dim() as f64;
    let mut a = a0.clone();
    let mut values = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        a = u.adjoint() * a * &u;
        let m = &a * &a0;
        let c2 = ((&a * &a) * &a0_sq).trace().re / d;
        let c4 = (&m * &m).trace().re / d;
        // -Tr[A(n), A0]^2 = ||M - M^dagger||_F^2 since the commutator is
        // anti-Hermitian; guarantees c_inf >= 0.
        let comm = &m - &m.adjoint();
        let c_inf = comm.iter().map(|z| z.norm_sqr()).sum::<f64>() / (2.0 * d);
        values.push(OtocPoint { n, c_inf, c2, c4 });
    }
    Ok(OtocSeries { params: *params, values })
}

/// Growth-rate estimates from the first two OTOC values.
///
/// `half` is 0.5 ln(C(2)/C(1)), the rate according to C ~ e^(2 lambda n);
/// `full` is ln(C(2)/C(1)).
#[derive(Debug, Clone, Copy)]
pub struct LyapunovEstimate {
    pub half: f64,
    pub full: f64,
}

/// Quantum Lyapunov estimators from a series with n_max >= 2.
pub fn quantum_lyapunov(series: &OtocSeries) -> Result<LyapunovEstimate> {
    let (c1, c2) = match (series.get(1), series.get(2)) {
        (Some(a), Some(b)) => (a.c_inf, b.c_inf),
        _ => {
            return Err(Error::UndefinedEstimate(
                "need C(1) and C(2) for a growth estimate".into(),
            ))
        }
    };
    if c1 <= 0.0 || c2 <= 0.0 {
        return Err(Error::UndefinedEstimate(format!(
            "non-positive OTOC values C(1) = {c1}, C(2) = {c2}"
        )));
    }
    let full = (c2 / c1).ln();
    Ok(LyapunovEstimate { half: full / 2.0, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb;
    use crate::spin::{build_jx, build_jz, max_abs_diff, unitary_power};
    use std::f64::consts::PI;

    fn params(j2: u32, kappa0: f64) -> SpinParams {
        SpinParams::new(j2, kappa0).unwrap()
    }

    #[test]
    fn heisenberg_basics() {
        let p = params(4, 0.0);
        let u = floquet_operator(&p).unwrap();
        let a = build_jz(&p);
        let same = heisenberg_evolve(&u, &a, 0).unwrap();
        assert!(max_abs_diff(&same, &a) < 1e-15);
        // with no torsion one kick maps Jz to -Jx
        let a1 = heisenberg_evolve(&u, &a, 1).unwrap();
        let jx = build_jx(&p);
        let num = (&a1 * &jx).trace().re;
        let den = (&jx * &jx).trace().re;
        assert!((num / den + 1.0).abs() < 1e-12);
        assert!(max_abs_diff(&a1, &jx.map(|z| -z)) < 1e-12);
        // the pi/2 kick has period four
        let a4 = heisenberg_evolve(&u, &a, 4).unwrap();
        assert!(max_abs_diff(&a4, &a) < 1e-12);
        // Hermiticity survives long evolutions
        let p = params(9, 3.3);
        let u = floquet_operator(&p).unwrap();
        let a40 = heisenberg_evolve(&u, &build_jz(&p), 40).unwrap();
        assert!(max_abs_diff(&a40, &a40.adjoint()) <= 1e-11);
    }

    #[test]
    fn heisenberg_dimension_mismatch() {
        let u = floquet_operator(&params(3, 1.0)).unwrap();
        let a = build_jz(&params(4, 1.0));
        assert!(matches!(
            heisenberg_evolve(&u, &a, 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn split_identity_and_positivity() {
        for (j2, kappa0) in [(3, 1.7), (4, 5.0), (9, 2.4)] {
            let series = otoc_infinite(&params(j2, kappa0), 30).unwrap();
            for pt in &series.values {
                assert!((pt.c_inf - (pt.c2 - pt.c4)).abs() <= 1e-10);
                assert!(pt.c_inf >= -1e-10);
            }
        }
    }

    #[test]
    fn correlators_are_real_traces() {
        // imaginary parts of the defining traces, via an independent
        // matrix-power route
        let p = params(5, 2.9);
        let u = floquet_operator(&p).unwrap();
        let a0 = build_jz(&p);
        let d = p.dim() as f64;
        let series = otoc_infinite(&p, 12).unwrap();
        for n in [1u64, 5, 12] {
            let un = unitary_power(&u, n);
            let an = un.adjoint() * &a0 * &un;
            let c2 = ((&an * &an) * (&a0 * &a0)).trace();
            let c4 = ((&an * &a0) * (&an * &a0)).trace();
            assert!(c2.im.abs() / d <= 1e-11);
            assert!(c4.im.abs() / d <= 1e-11);
            let pt = series.get(n).unwrap();
            assert!((pt.c2 - c2.re / d).abs() < 1e-10);
            assert!((pt.c4 - c4.re / d).abs() < 1e-10);
        }
    }

    #[test]
    fn matches_three_qubit_closed_form() {
        for kappa0 in [0.0, 0.9, 2.6, 3.0 * PI / 2.0] {
            let series = otoc_infinite(&params(3, kappa0), 20).unwrap();
            for pt in &series.values {
                let want = cheb::three_qubit_otoc(pt.n, kappa0);
                assert!((pt.c_inf - want).abs() <= 1e-9, "n={} k0={kappa0}", pt.n);
                let (c2, c4) = cheb::three_qubit_c2_c4(pt.n, kappa0);
                assert!((pt.c2 - c2).abs() <= 1e-9);
                assert!((pt.c4 - c4).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn four_qubit_values_at_two_pi() {
        let series = otoc_infinite(&params(4, 2.0 * PI), 2).unwrap();
        assert!((series.get(1).unwrap().c_inf - 1.0).abs() <= 1e-10);
        assert!((series.get(2).unwrap().c_inf - 68.0 / 5.0).abs() <= 1e-10);
    }

    #[test]
    fn collapsed_torsion_values_j_three() {
        // kappa0 = pi j for j = 3: C(1) = j(j+1)/6 and
        // C(2) = (2/15) j(j+1)(3j^2+3j-1)
        let series = otoc_infinite(&params(6, 3.0 * PI), 2).unwrap();
        assert!((series.get(1).unwrap().c_inf - 2.0).abs() <= 1e-8);
        assert!((series.get(2).unwrap().c_inf - 56.0).abs() <= 1e-8);
    }

    #[test]
    fn lyapunov_estimators() {
        let series = otoc_infinite(&params(4, 2.0 * PI), 2).unwrap();
        let est = quantum_lyapunov(&series).unwrap();
        assert!((est.half - 0.5 * (68.0f64 / 5.0).ln()).abs() <= 1e-10);
        assert!((est.full - 2.0 * est.half).abs() < 1e-14);
        // flat series has zero rate
        let flat = OtocSeries {
            params: params(3, 0.0),
            values: vec![
                OtocPoint { n: 1, c_inf: 0.625, c2: 0.0, c4: 0.0 },
                OtocPoint { n: 2, c_inf: 0.625, c2: 0.0, c4: 0.0 },
            ],
        };
        assert!(quantum_lyapunov(&flat).unwrap().full.abs() < 1e-15);
        let degenerate = OtocSeries {
            params: params(3, 0.0),
            values: vec![
                OtocPoint { n: 1, c_inf: 0.0, c2: 0.0, c4: 0.0 },
                OtocPoint { n: 2, c_inf: 1.0, c2: 0.0, c4: 0.0 },
            ],
        };
        assert!(matches!(quantum_lyapunov(&degenerate), Err(Error::UndefinedEstimate(_))));
        let short = otoc_infinite(&params(3, 1.0), 1).unwrap();
        assert!(matches!(quantum_lyapunov(&short), Err(Error::UndefinedEstimate(_))));
    }

    #[test]
    fn collapsed_torsion_growth_asymptote() {
        // At kappa0 = pi j the exact ratio is C(2)/C(1) = (12/15)(3j^2+3j-1),
        // so the half estimator approaches ln j + 0.5 ln(12/5).
        let series = otoc_infinite(&params(128, 64.0 * PI), 2).unwrap();
        let est = quantum_lyapunov(&series).unwrap();
        let j = 64.0f64;
        let exact = 0.5 * ((12.0 / 15.0) * (3.0 * j * j + 3.0 * j - 1.0)).ln();
        assert!((est.half - exact).abs() <= 1e-7);
        assert!((est.half - (j.ln() + 0.5 * (12.0f64 / 5.0).ln())).abs() <= 0.05);
    }

    #[test]
    fn small_kappa_odd_even_structure() {
        let kappa0 = 0.05;
        let series = otoc_infinite(&params(3, kappa0), 8).unwrap();
        // fitted quadratic coefficient over even n within 2% of 1/6
        let (mut num, mut den) = (0.0, 0.0);
        for pt in series.values.iter().filter(|pt| pt.n % 2 == 0) {
            let x = (pt.n as f64 * kappa0).powi(2);
            num += x * pt.c_inf;
            den += x * x;
        }
        let coeff = num / den;
        assert!((coeff - 1.0 / 6.0).abs() / (1.0 / 6.0) <= 0.02);
        for pt in series.values.iter().filter(|pt| pt.n % 2 == 1) {
            assert!((pt.c_inf - 0.625).abs() <= 1e-4);
        }
    }

    #[test]
    fn initial_growth_saturates_in_j() {
        // Fig.-5-style check at kappa0 = 3pi/2: the first-step growth
        // ln C(2) - ln C(1) at j = 5/2 sits within 15% of j = 20, while
        // j = 3/2 is still far below. (The three-point slope would not do:
        // C(3) at j = 5/2 dips to ~2.1 by interference.)
        let growth = |j2: u32| {
            let series = otoc_infinite(&params(j2, 3.0 * PI / 2.0), 2).unwrap();
            quantum_lyapunov(&series).unwrap().full
        };
        let (g5, g40) = (growth(5), growth(40));
        assert!((g5 - g40).abs() / g40 <= 0.15, "{g5} vs {g40}");
        assert!((growth(3) - g40).abs() / g40 > 0.5);
    }
}
