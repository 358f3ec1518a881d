//! Classical kicked-top map on the unit sphere: trajectories, phase
//! portraits and Benettin Lyapunov exponents.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Point (X, Y, Z) on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ClassicalState {
    /// Construct and normalize onto the sphere.
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }.normalized()
    }

    fn normalized(self) -> Self {
        let n = self.norm();
        Self { x: self.x / n, y: self.y / n, z: self.z / n }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Spherical coordinates (theta, phi) with theta = arccos Z.
    pub fn to_angles(&self) -> (f64, f64) {
        (self.z.clamp(-1.0, 1.0).acos(), self.y.atan2(self.x))
    }

    /// Uniform (area-measure) random point on the sphere.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).sqrt();
        Self { x: r * phi.cos(), y: r * phi.sin(), z }
    }
}

/// One step of the kicked-top map:
/// X' = Z cos(k X) + Y sin(k X), Y' = -Z sin(k X) + Y cos(k X), Z' = -X.
///
/// The map is norm-preserving algebraically; the result is renormalized to
/// keep 10^6-step orbits on the sphere.
pub fn map_step(s: ClassicalState, kappa0: f64) -> ClassicalState {
    let (sin_kx, cos_kx) = (kappa0 * s.x).sin_cos();
    ClassicalState {
        x: s.z * cos_kx + s.y * sin_kx,
        y: -s.z * sin_kx + s.y * cos_kx,
        z: -s.x,
    }
    .normalized()
}

/// Orbit s0, F(s0), ..., F^n(s0) (n+1 states).
pub fn trajectory(s0: ClassicalState, kappa0: f64, n: u64) -> Vec<ClassicalState> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(s0);
    let mut s = s0;
    for _ in 0..n {
        s = map_step(s, kappa0);
        out.push(s);
    }
    out
}

/// Phase portrait: (theta, phi) for every point of every orbit.
pub fn phase_portrait(
    kappa0: f64,
    initials: &[ClassicalState],
    n: u64,
) -> Vec<(f64, f64)> {
    initials
        .iter()
        .flat_map(|&s0| trajectory(s0, kappa0, n).into_iter().map(|s| s.to_angles()))
        .collect()
}

/// `count` uniform sphere points from a seeded generator.
pub fn random_states(count: usize, seed: u64) -> Vec<ClassicalState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| ClassicalState::random(&mut rng)).collect()
}

const SEPARATION: f64 = 1e-8;

// One Benettin sample: paired trajectories with per-step renormalization of
// the separation back to SEPARATION along the chord.
fn lyapunov_sample(kappa0: f64, n_iters: u64, seed: u64, stream: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut p = ClassicalState::random(&mut rng);
    let t = loop {
        let u = ClassicalState::random(&mut rng);
        let along = u.dot(&p);
        let t = ClassicalState {
            x: u.x - along * p.x,
            y: u.y - along * p.y,
            z: u.z - along * p.z,
        };
        if t.norm() > 1e-6 {
            break t.normalized();
        }
    };
    let (c, s) = (SEPARATION.cos(), SEPARATION.sin());
    let mut q = ClassicalState::new(c * p.x + s * t.x, c * p.y + s * t.y, c * p.z + s * t.z);
    let mut acc = 0.0;
    for _ in 0..n_iters {
        p = map_step(p, kappa0);
        q = map_step(q, kappa0);
        let dist = q.distance(&p);
        acc += (dist / SEPARATION).ln();
        let pull = SEPARATION / dist;
        q = ClassicalState::new(
            p.x + pull * (q.x - p.x),
            p.y + pull * (q.y - p.y),
            p.z + pull * (q.z - p.z),
        );
    }
    acc / n_iters as f64
}

/// Phase-space-averaged largest Lyapunov exponent by the two-trajectory
/// Benettin method (separation 1e-8, renormalized every step).
///
/// Samples are drawn uniformly on the sphere from `seed`, one RNG stream
/// per sample, so the estimate is bit-identical for any worker count.
pub fn lyapunov(kappa0: f64, n_iters: u64, n_samples: usize, seed: u64) -> f64 {
    let samples: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|i| lyapunov_sample(kappa0, n_iters, seed, i as u64))
        .collect();
    samples.iter().sum::<f64>() / n_samples as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fixed_point_on_the_y_axis() {
        for kappa0 in [0.0, 0.5, 2.5, 2.0 * PI, 30.0] {
            let s = map_step(ClassicalState::new(0.0, -1.0, 0.0), kappa0);
            assert!(s.x.abs() <= 1e-14 && (s.y + 1.0).abs() <= 1e-14 && s.z.abs() <= 1e-14);
        }
    }

    #[test]
    fn period_four_orbit_through_the_poles() {
        for kappa0 in [0.3, 2.5, 2.0 * PI] {
            let orbit = trajectory(ClassicalState::new(0.0, 0.0, 1.0), kappa0, 4);
            let want = [
                (0.0, 0.0, 1.0),
                (1.0, 0.0, 0.0),
                (0.0, 0.0, -1.0),
                (-1.0, 0.0, 0.0),
                (0.0, 0.0, 1.0),
            ];
            for (s, (x, y, z)) in orbit.iter().zip(want) {
                assert!(
                    (s.x - x).abs() <= 1e-14 && (s.y - y).abs() <= 1e-14 && (s.z - z).abs() <= 1e-14
                );
            }
        }
    }

    #[test]
    fn integrable_limit_is_a_quarter_rotation() {
        for s0 in random_states(20, 9) {
            let s4 = trajectory(s0, 0.0, 4)[4];
            assert!(s4.distance(&s0) <= 1e-12);
        }
    }

    #[test]
    fn norm_stays_pinned_over_long_orbits() {
        let mut s = ClassicalState::new(0.23, -0.4, 0.88);
        for _ in 0..1_000_000u64 {
            s = map_step(s, 2.5);
        }
        assert!((s.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn portrait_shape() {
        let initials = random_states(7, 4);
        let pts = phase_portrait(2.5, &initials, 100);
        assert_eq!(pts.len(), 7 * 101);
        for (theta, phi) in pts {
            assert!((0.0..=PI).contains(&theta));
            assert!((-PI..=PI).contains(&phi));
        }
    }

    #[test]
    fn lyapunov_integrable_and_chaotic() {
        assert!(lyapunov(0.0, 2000, 50, 1).abs() <= 0.01);
        let chaotic = lyapunov(2.0 * PI, 3000, 120, 1);
        assert!((chaotic - 0.84).abs() <= 0.15, "{chaotic}");
        let strong = lyapunov(30.0, 3000, 120, 1);
        let target = 30.0f64.ln() - 1.0;
        assert!((strong - target).abs() / target <= 0.15, "{strong}");
    }

    #[test]
    fn lyapunov_is_deterministic() {
        let a = lyapunov(2.5, 1500, 40, 77);
        let b = lyapunov(2.5, 1500, 40, 77);
        assert_eq!(a.to_bits(), b.to_bits());
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| lyapunov(2.5, 1500, 40, 77));
        assert_eq!(a.to_bits(), serial.to_bits());
    }

    #[test]
    fn lyapunov_grows_with_chaos() {
        let values: Vec<f64> =
            [0.5, 2.5, 6.0, 2.0 * PI].iter().map(|&k| lyapunov(k, 2000, 80, 5)).collect();
        for pair in values.windows(2) {
            assert!(pair[1] >= pair[0] - 0.05, "{values:?}");
        }
    }
}
