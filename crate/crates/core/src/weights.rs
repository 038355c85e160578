//! Gaussian sandwich weights for interval indicators, and the weighted
//! cubic-phase integral `F(alpha,beta)` with its closed-form asymptotic.

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, OscillatoryPanels};
use std::f64::consts::PI;

/// Parameters of the sandwich weights: `delta = 1/L`, `eps1 = 24 exp(-L)`,
/// both derived from `L` on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    pub l: f64,
}

impl WeightParams {
    pub fn new(l: f64) -> Result<WeightParams> {
        if !(l > 2.0) {
            return Err(Error::domain(format!("weights need L > 2, got {l}")));
        }
        Ok(WeightParams { l })
    }

    pub fn delta(&self) -> f64 {
        1.0 / self.l
    }

    pub fn eps1(&self) -> f64 {
        24.0 * (-self.l).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The Gaussian weight `exp(-pi x^2)`.
pub fn gaussian(x: f64) -> f64 {
    (-PI * x * x).exp()
}

/// Integral of the Gaussian over `[a, b]`, accurate to ~1e-12 absolute.
/// The integrand is negligible outside `|y| <= 7`.
fn gaussian_mass(a: f64, b: f64) -> f64 {
    let lo = a.max(-7.5);
    let hi = b.min(7.5);
    if lo >= hi {
        return 0.0;
    }
    adaptive_simpson(&gaussian, lo, hi, 1e-13)
}

/// The majorant (`Sign::Plus`) and minorant (`Sign::Minus`) of the indicator
/// of `[-1/2, 1/2)`:
/// `Phi_pm(x) = L * int exp(-pi (x-mu)^2 L^2) dmu +- eps1 exp(-pi x^2)`,
/// the integral running over `mu in [-1/2 -+ sqrt(delta), 1/2 +- sqrt(delta)]`.
pub fn phi_pm(x: f64, params: WeightParams, sign: Sign) -> f64 {
    let sd = params.delta().sqrt();
    let (lo, hi, eps_sign) = match sign {
        Sign::Plus => (-0.5 - sd, 0.5 + sd, 1.0),
        Sign::Minus => (-0.5 + sd, 0.5 - sd, -1.0),
    };
    // substitute y = (x - mu) L: the mu-integral becomes a Gaussian mass
    let a = (x - hi) * params.l;
    let b = (x - lo) * params.l;
    gaussian_mass(a, b) + eps_sign * params.eps1() * gaussian(x)
}

/// Sandwich weights for a general interval `[a, b)` via the change of
/// variables `x -> (x-a)/(b-a) - 1/2`.
pub fn phi_pm_interval(x: f64, a: f64, b: f64, params: WeightParams, sign: Sign) -> Result<f64> {
    if !(a < b) {
        return Err(Error::domain(format!("need a < b, got a={a} b={b}")));
    }
    Ok(phi_pm((x - a) / (b - a) - 0.5, params, sign))
}

/// Total mass of `phi_pm` over the real line, by quadrature.
pub fn phi_pm_mass(params: WeightParams, sign: Sign) -> f64 {
    // support is effectively [-1/2 - sd - 8/L, 1/2 + sd + 8/L]
    let sd = params.delta().sqrt();
    let pad = sd + 8.0 / params.l + 1.0;
    adaptive_simpson(&|x| phi_pm(x, params, sign), -0.5 - pad, 0.5 + pad, 1e-10)
}

/// Query for the cubic-phase integral `F(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryQuery {
    pub alpha: f64,
    pub beta: f64,
}

impl AiryQuery {
    pub fn new(alpha: f64, beta: f64) -> Result<AiryQuery> {
        if !(beta > 0.0) {
            return Err(Error::domain(format!("need beta > 0, got {beta}")));
        }
        Ok(AiryQuery { alpha, beta })
    }
}

/// `F(alpha,beta) = int Gamma(x) e(-beta x^3 - alpha x) dx` by phase-bounded
/// panel quadrature on `|x| <= 8`. Absolute accuracy target 1e-8.
pub fn airy_f_numeric(q: AiryQuery) -> Result<(f64, f64)> {
    if !(q.beta > 0.0) {
        return Err(Error::domain(format!("need beta > 0, got {}", q.beta)));
    }
    let AiryQuery { alpha, beta } = q;
    // Beyond |x| ~ 3.3 the Gaussian is below 2e-15; panels there are skipped
    // wholesale, keeping the truncation error immaterial against 1e-8.
    let panels = OscillatoryPanels { hmax: 0.125 };
    let (re, im) = panels.integrate(
        gaussian,
        |x| -(beta * x * x * x + alpha * x),
        |x0, x1| {
            let m = x0.abs().max(x1.abs());
            3.0 * beta * m * m + alpha.abs()
        },
        -8.0,
        8.0,
        |x0, x1| {
            let closest = if x0 > 0.0 {
                x0
            } else if x1 < 0.0 {
                -x1
            } else {
                0.0
            };
            gaussian(closest) < 1e-15
        },
    );
    Ok((re, im))
}

/// The stationary-phase main term of `F(alpha,beta)` for `alpha < 0`:
/// `sqrt(2) exp(-pi|alpha|/(3 beta)) / (3|alpha|beta)^(1/4)
///  * cos(2 pi (1/8 - 2|alpha|^(3/2)/(3^(3/2) sqrt(beta))))`.
pub fn airy_f_asymptotic(q: AiryQuery) -> Result<f64> {
    if !(q.beta > 0.0) {
        return Err(Error::domain(format!("need beta > 0, got {}", q.beta)));
    }
    if !(q.alpha < 0.0) {
        return Err(Error::domain(format!(
            "asymptotic main term needs alpha < 0, got {}",
            q.alpha
        )));
    }
    let am = q.alpha.abs();
    let beta = q.beta;
    let amplitude = 2f64.sqrt() * (-PI * am / (3.0 * beta)).exp() / (3.0 * am * beta).powf(0.25);
    let phase = 2.0 * PI * (0.125 - 2.0 * am.powf(1.5) / (3f64.powf(1.5) * beta.sqrt()));
    Ok(amplitude * phase.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian(0.0), 1.0);
        assert!((gaussian(1.0) - (-PI).exp()).abs() < 1e-15);
        let mass = adaptive_simpson(&gaussian, -8.0, 8.0, 1e-12);
        assert!((mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn phi_examples() {
        let p = WeightParams::new(5.0).unwrap();
        assert!(phi_pm(0.0, p, Sign::Plus) >= 1.0);
        assert!(phi_pm(0.75, p, Sign::Minus) <= 0.0);
        assert!(phi_pm(10.0, p, Sign::Plus) < 1e-6);
        assert!(WeightParams::new(2.0).is_err());
    }

    #[test]
    fn phi_interval_change_of_variables() {
        let p = WeightParams::new(5.0).unwrap();
        let a = phi_pm_interval(0.5, 0.0, 1.0, p, Sign::Plus).unwrap();
        let b = phi_pm(0.0, p, Sign::Plus);
        assert!((a - b).abs() < 1e-14);
        assert!(phi_pm_interval(2.0, -1.0, 1.0, p, Sign::Minus).unwrap() <= 0.0);
        assert!(phi_pm_interval(0.0, 1.0, 1.0, p, Sign::Plus).is_err());
    }

    #[test]
    fn interval_mass() {
        // mass over [a,b) scales to (1 +- (2 sqrt(delta) + eps1))(b - a)
        let p = WeightParams::new(5.0).unwrap();
        let (a, b) = (0.0, 2.0);
        for (sign, s) in [(Sign::Plus, 1.0), (Sign::Minus, -1.0)] {
            let mass = adaptive_simpson(
                &|x| phi_pm_interval(x, a, b, p, sign).unwrap(),
                a - 5.0,
                b + 5.0,
                1e-10,
            );
            let expected = (1.0 + s * (2.0 * p.delta().sqrt() + p.eps1())) * (b - a);
            assert!(
                (mass - expected).abs() < 1e-8,
                "sign {s}: mass {mass} expected {expected}"
            );
        }
    }

    #[test]
    fn sandwich_on_grid() {
        for l in [3.0, 5.0, 10.0, 50.0] {
            let p = WeightParams::new(l).unwrap();
            for i in 0..=6000 {
                let x = -3.0 + i as f64 * 0.001;
                let chi = if (-0.5..0.5).contains(&x) { 1.0 } else { 0.0 };
                let lo = phi_pm(x, p, Sign::Minus);
                let hi = phi_pm(x, p, Sign::Plus);
                assert!(
                    lo <= chi + 1e-12 && chi <= hi + 1e-12,
                    "sandwich broken at x={x}, L={l}: {lo} <= {chi} <= {hi}"
                );
            }
        }
    }

    #[test]
    fn airy_limits() {
        // beta -> 0+ at alpha = 0: unit Gaussian mass
        let (re, im) = airy_f_numeric(AiryQuery::new(0.0, 1e-9).unwrap()).unwrap();
        assert!((re - 1.0).abs() < 1e-8 && im.abs() < 1e-8);
        // beta -> 0+ at alpha = 1: Fourier transform of the Gaussian at 1
        let (re, im) = airy_f_numeric(AiryQuery::new(1.0, 1e-9).unwrap()).unwrap();
        assert!((re - (-PI).exp()).abs() < 1e-7, "re={re}");
        assert!(im.abs() < 1e-7);
        assert!(airy_f_numeric(AiryQuery { alpha: 0.0, beta: 0.0 }).is_err());
    }

    #[test]
    fn airy_trivial_bound() {
        // |F| <= 1 on a deterministic pseudo-random sample
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let alpha = (next() - 0.5) * 60.0;
            let beta = 10f64.powf(next() * 3.0 - 1.0);
            let (re, im) = airy_f_numeric(AiryQuery::new(alpha, beta).unwrap()).unwrap();
            assert!(
                re.hypot(im) <= 1.0 + 1e-8,
                "|F({alpha},{beta})| = {} > 1",
                re.hypot(im)
            );
        }
    }

    #[test]
    fn airy_asymptotic_matches_quadrature() {
        for &alpha in &[-30.0, -100.0] {
            for &beta in &[1.0, 10.0] {
                let q = AiryQuery::new(alpha, beta).unwrap();
                let (re, im) = airy_f_numeric(q).unwrap();
                let main = airy_f_asymptotic(q).unwrap();
                let err = (re - main).hypot(im);
                assert!(
                    err <= 10.0 / alpha.abs(),
                    "alpha={alpha} beta={beta}: |F - main| = {err}"
                );
            }
        }
        assert!(airy_f_asymptotic(AiryQuery { alpha: 1.0, beta: 1.0 }).is_err());
    }

    #[test]
    fn airy_main_term_magnitude() {
        for &(alpha, beta) in &[(-5.0, 0.5), (-20.0, 2.0), (-80.0, 0.2)] {
            let main = airy_f_asymptotic(AiryQuery::new(alpha, beta).unwrap())
                .unwrap()
                .abs();
            let cap = 2f64.sqrt() / (3.0 * alpha.abs() * beta).powf(0.25);
            assert!(main <= cap + 1e-15);
        }
    }
}
