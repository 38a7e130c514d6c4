//! Small shared helpers: angle wrapping, rotation fitting, seeded RNG.

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Wrap an angle into (-pi, pi].
pub fn wrap_angle(t: f64) -> f64 {
    let mut t = t % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Unit complex number c minimizing sum |c*a_k - b_k|^2 over the pairs.
/// Falls back to 1 when the overlap vanishes.
pub fn best_rotation(pairs: &[(Complex64, Complex64)]) -> Complex64 {
    let s: Complex64 = pairs.iter().map(|(a, b)| b * a.conj()).sum();
    if s.norm() < 1e-300 {
        Complex64::new(1.0, 0.0)
    } else {
        s / s.norm()
    }
}

/// Deterministic RNG for sampling; every random choice in the crate flows from one seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Observed convergence order from errors at h and h/2.
pub fn observed_order(err_h: f64, err_h2: f64) -> f64 {
    (err_h / err_h2).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_stays_in_range() {
        for k in -20..20 {
            let t = 0.37 + k as f64 * PI / 3.0;
            let w = wrap_angle(t);
            assert!(w > -PI - 1e-12 && w <= PI + 1e-12);
            assert!(((t - w) / (2.0 * PI) - ((t - w) / (2.0 * PI)).round()).abs() < 1e-9);
        }
    }

    #[test]
    fn rotation_recovers_phase() {
        let c = Complex64::from_polar(1.0, 0.83);
        let pts: Vec<_> = (0..10)
            .map(|k| Complex64::from_polar(1.0 + k as f64, 0.11 * k as f64))
            .collect();
        let pairs: Vec<_> = pts.iter().map(|&a| (a, c * a)).collect();
        let got = best_rotation(&pairs);
        assert!((got - c).norm() < 1e-12);
    }
}
