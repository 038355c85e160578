//! Small quadrature toolbox: adaptive Simpson for smooth real integrands and
//! a phase-bounded panel rule for oscillatory ones.

/// Nodes and weights of 16-point Gauss-Legendre on [-1, 1].
const GL16_X: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_W: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// 16-point Gauss-Legendre on `[a, b]`.
pub fn gauss16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..8 {
        acc += GL16_W[i] * (f(c + h * GL16_X[i]) + f(c - h * GL16_X[i]));
    }
    acc * h
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute accuracy
/// `tol` (the usual 15x Richardson criterion; max depth 48).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Adaptive Simpson over a list of breakpoints; the integrand may have kinks
/// at interior breakpoints but must be smooth inside each piece.
pub fn adaptive_simpson_pieces<F: Fn(f64) -> f64>(f: &F, pts: &[f64], tol: f64) -> f64 {
    let mut total = 0.0;
    let pieces = (pts.len() - 1).max(1);
    for w in pts.windows(2) {
        total += adaptive_simpson(f, w[0], w[1], tol / pieces as f64);
    }
    total
}

/// Integrate `amplitude(x) * e(phase(x))` over `[a, b]` by splitting into
/// panels on which the phase changes by at most pi/4 (and which are at most
/// `hmax` wide), applying 16-point Gauss-Legendre to the real and imaginary
/// parts of each panel. `phase_derivative_bound` must dominate `|phase'|`
/// pointwise; `skip_below` prunes panels whose amplitude bound is negligible.
pub struct OscillatoryPanels {
    pub hmax: f64,
}

impl OscillatoryPanels {
    pub fn integrate<A, P, D>(
        &self,
        amplitude: A,
        phase: P,
        phase_derivative_bound: D,
        a: f64,
        b: f64,
        skip_below: impl Fn(f64, f64) -> bool,
    ) -> (f64, f64)
    where
        A: Fn(f64) -> f64,
        P: Fn(f64) -> f64,
        D: Fn(f64, f64) -> f64,
    {
        let mut re = 0.0;
        let mut im = 0.0;
        let mut x = a;
        while x < b {
            let bound = phase_derivative_bound(x, (x + self.hmax).min(b));
            let mut h = if bound > 0.0 {
                (0.125 / bound).min(self.hmax)
            } else {
                self.hmax
            };
            if x + h > b {
                h = b - x;
            }
            let x1 = x + h;
            if !skip_below(x, x1) {
                re += gauss16(
                    &|t| amplitude(t) * (2.0 * std::f64::consts::PI * phase(t)).cos(),
                    x,
                    x1,
                );
                im += gauss16(
                    &|t| amplitude(t) * (2.0 * std::f64::consts::PI * phase(t)).sin(),
                    x,
                    x1,
                );
            }
            x = x1;
        }
        (re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_polynomial_exact() {
        let v = adaptive_simpson(&|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12);
        // antiderivative x^4/4 - x^2 + x evaluated at 3 and -1
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn simpson_gaussian_mass() {
        let v = adaptive_simpson(&|x: f64| (-PI * x * x).exp(), -10.0, 10.0, 1e-12);
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gauss16_cosine() {
        let v = gauss16(&|x: f64| x.cos(), 0.0, 1.0);
        assert!((v - 1f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_matches_fresnel_style_integral() {
        // integral of exp(-x^2) cos(10 x) over R has the closed form
        // sqrt(pi) exp(-25)
        let panels = OscillatoryPanels { hmax: 0.25 };
        let (re, _im) = panels.integrate(
            |x: f64| (-x * x).exp(),
            |x| 10.0 * x / (2.0 * PI),
            |_, _| 10.0 / (2.0 * PI),
            -8.0,
            8.0,
            |_, _| false,
        );
        let exact = PI.sqrt() * (-25.0f64).exp();
        assert!((re - exact).abs() < 1e-12, "re={re} exact={exact}");
    }
}
