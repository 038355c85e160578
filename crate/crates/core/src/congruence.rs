//! Counting functions for `a x^2 + b y^3 = 0 (mod q)` in boxes, the weighted
//! solution sum, the limit-region area, and the main-term/error-budget
//! comparators for both asymptotic statements.

use crate::arith::{factorize, gcd, gcd_i, mul_mod, s_pair};
use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, adaptive_simpson_pieces};
use crate::weights::gaussian;
use rayon::prelude::*;

/// Fixed value of the epsilon appearing in the error budgets.
pub const BUDGET_EPS: f64 = 0.01;

/// Product `X*Y` guard for the counting kernels.
pub const COUNT_GUARD: f64 = 1e10;

/// Parameters of the counting functions: count pairs `0 < x <= X`,
/// `|y| <= Y` with `(xy,q) = 1`, `a x^2 + b y^3 = 0 (mod q)` and, when `B`
/// is present, `|a x^2 + b y^3| <= qB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountQuery {
    pub a: u64,
    pub b: u64,
    pub q: u64,
    pub x: f64,
    pub y: f64,
    pub band: Option<f64>,
}

impl CountQuery {
    pub fn validate(&self) -> Result<()> {
        if self.a == 0 || self.b == 0 || self.q == 0 {
            return Err(Error::domain("a, b, q must be positive"));
        }
        if self.q > 1 {
            let g = gcd(
                mul_mod(self.a % self.q, self.b % self.q, self.q),
                self.q,
            );
            if g != 1 {
                return Err(Error::precondition(format!("(ab, q) must be 1, gcd = {g}")));
            }
        }
        if !(self.x > 0.0) || !(self.y > 0.0) {
            return Err(Error::domain("X and Y must be positive"));
        }
        if let Some(b) = self.band {
            if !(b >= 2.0) {
                return Err(Error::domain("band parameter B must be >= 2"));
            }
        }
        Ok(())
    }
}

/// For each residue `r` mod `q`, the y-classes `d` with `(d,q) = 1` and
/// `b d^3 = -r (mod q)`, so that the classes admissible for an x-class `c`
/// are those stored under `r = a c^2 mod q`.
struct ClassTables {
    q: u64,
    cube_map: Vec<Vec<u64>>,
}

impl ClassTables {
    fn new(b: u64, q: u64) -> ClassTables {
        let mut cube_map = vec![Vec::new(); q as usize];
        for d in 0..q {
            if q > 1 && gcd(d, q) != 1 {
                continue;
            }
            let d3 = mul_mod(mul_mod(d, d, q), d, q);
            let val = mul_mod(b % q, d3, q);
            let r = (q - val) % q;
            cube_map[r as usize].push(d);
        }
        ClassTables { q, cube_map }
    }

    fn classes_for_x(&self, a: u64, c: u64) -> &[u64] {
        let q = self.q;
        let c2 = mul_mod(c, c, q);
        let r = mul_mod(a % q, c2, q);
        &self.cube_map[r as usize]
    }
}

/// Count integers `y = d (mod q)` with `|y| <= bound`.
fn count_symmetric(d: u64, q: u64, bound: f64) -> u64 {
    let b = bound.floor() as i64;
    if b < 0 {
        return 0;
    }
    let d = d as i64;
    let q = q as i64;
    let hi = (b - d).div_euclid(q);
    let lo = -((b + d).div_euclid(q));
    (hi - lo + 1).max(0) as u64
}

/// Count integers `x = c (mod q)` with `0 < x <= bound`.
fn count_positive(c: u64, q: u64, bound: f64) -> u64 {
    let b = bound.floor() as i64;
    if b <= 0 {
        return 0;
    }
    let q = q as i64;
    let first = if c == 0 { q } else { c as i64 };
    if first > b {
        0
    } else {
        ((b - first) / q + 1) as u64
    }
}

/// `M(X,Y;a,b;q)`: exact count without the band condition, by per-residue
/// class counting.
pub fn count_m(query: &CountQuery) -> Result<u64> {
    let mut query = *query;
    query.band = None;
    query.validate()?;
    if query.x * query.y > COUNT_GUARD {
        return Err(Error::guard(format!(
            "X*Y = {} exceeds {COUNT_GUARD}",
            query.x * query.y
        )));
    }
    let CountQuery { a, b, q, x, y, .. } = query;
    let tables = ClassTables::new(b, q);
    let mut total = 0u64;
    for c in 0..q {
        if q > 1 && gcd(c, q) != 1 {
            continue;
        }
        let nx = count_positive(c, q, x);
        if nx == 0 {
            continue;
        }
        let mut ny = 0u64;
        for &d in tables.classes_for_x(a, c) {
            ny += count_symmetric(d, q, y);
        }
        total += nx * ny;
    }
    Ok(total)
}

fn cube_below(v: f64) -> i64 {
    // largest integer y with y^3 <= v
    let mut y = v.cbrt().floor() as i64;
    while (y as f64).powi(3) > v {
        y -= 1;
    }
    while ((y + 1) as f64).powi(3) <= v {
        y += 1;
    }
    y
}

/// `M(B,X,Y;a,b;q)`: the band condition `|a x^2 + b y^3| <= qB` is added,
/// filtering per x over the admissible y-interval.
pub fn count_m_b(query: &CountQuery) -> Result<u64> {
    query.validate()?;
    let Some(band) = query.band else {
        return Err(Error::domain("count_m_b needs the band parameter B"));
    };
    if query.x * query.y > COUNT_GUARD {
        return Err(Error::guard(format!(
            "X*Y = {} exceeds {COUNT_GUARD}",
            query.x * query.y
        )));
    }
    let CountQuery { a, b, q, x, y, .. } = *query;
    let tables = ClassTables::new(b, q);
    let xmax = x.floor() as u64;
    let qb = q as f64 * band;
    let ycap = y.floor() as i64;

    let total: u64 = (1..=xmax)
        .into_par_iter()
        .map(|xi| {
            if q > 1 && gcd(xi % q, q) != 1 {
                return 0u64;
            }
            let ax2 = a as f64 * xi as f64 * xi as f64;
            // b y^3 in [-qB - a x^2, qB - a x^2]
            let y_hi = cube_below((qb - ax2) / b as f64);
            let mut y_lo = -cube_below((qb + ax2) / b as f64) - 1;
            while (y_lo as f64).powi(3) * (b as f64) < -(qb + ax2) {
                y_lo += 1;
            }
            let lo = y_lo.max(-ycap);
            let hi = y_hi.min(ycap);
            if lo > hi {
                return 0;
            }
            let c = xi % q;
            let mut found = 0u64;
            for &d in tables.classes_for_x(a, c) {
                let d = d as i64;
                let qi = q as i64;
                let k_hi = (hi - d).div_euclid(qi);
                let k_lo = -((d - lo).div_euclid(qi));
                if k_hi >= k_lo {
                    found += (k_hi - k_lo + 1) as u64;
                }
            }
            found
        })
        .sum();
    Ok(total)
}

/// Naive double-loop oracle for both counting functions.
pub fn count_oracle(query: &CountQuery) -> Result<u64> {
    query.validate()?;
    let CountQuery { a, b, q, x, y, band } = *query;
    let xmax = x.floor() as i64;
    let ymax = y.floor() as i64;
    let mut total = 0u64;
    for xi in 1..=xmax {
        for yi in -ymax..=ymax {
            if gcd_i(xi * yi, q as i64) != 1 {
                continue;
            }
            let v = a as i128 * (xi as i128) * (xi as i128)
                + b as i128 * (yi as i128) * (yi as i128) * (yi as i128);
            if v.rem_euclid(q as i128) != 0 {
                continue;
            }
            if let Some(bb) = band {
                if (v.unsigned_abs() as f64) > q as f64 * bb {
                    continue;
                }
            }
            total += 1;
        }
    }
    Ok(total)
}

/// The weighted solution sum: Gaussian weights centred at `(x0, y0)` with
/// widths `X, Y`, over all integer solutions with `(xy,q) = 1`. Tails are
/// truncated at eight widths, far below any tolerance used here.
pub fn weighted_s(x0: f64, y0: f64, x: f64, y: f64, a: u64, b: u64, q: u64) -> Result<f64> {
    if !(x >= 2.0) || !(y >= 2.0) {
        return Err(Error::domain("weighted sum needs X, Y >= 2"));
    }
    if q == 0 || gcd_i((a % q.max(1)).wrapping_mul(b % q.max(1)) as i64, q as i64) != 1 {
        return Err(Error::precondition("(ab,q) = 1 and q > 0 required"));
    }
    let tables = ClassTables::new(b, q);
    let gx = class_gaussian_sums(x0, x, q);
    let gy = class_gaussian_sums(y0, y, q);
    let mut total = 0.0;
    for c in 0..q {
        if q > 1 && gcd(c, q) != 1 {
            continue;
        }
        if gx[c as usize] == 0.0 {
            continue;
        }
        let mut wy = 0.0;
        for &d in tables.classes_for_x(a, c) {
            wy += gy[d as usize];
        }
        total += gx[c as usize] * wy;
    }
    Ok(total)
}

/// For each class `c` mod `q`, the sum of `exp(-pi ((t - t0)/w)^2)` over
/// integers `t = c (mod q)` with `|t - t0| <= 8w`.
fn class_gaussian_sums(t0: f64, w: f64, q: u64) -> Vec<f64> {
    let mut out = vec![0.0f64; q as usize];
    let lo = (t0 - 8.0 * w).ceil() as i64;
    let hi = (t0 + 8.0 * w).floor() as i64;
    for t in lo..=hi {
        let cls = (t.rem_euclid(q as i64)) as usize;
        out[cls] += gaussian((t as f64 - t0) / w);
    }
    out
}

/// Box for the limit region `|s^2 + t^3| <= 1` intersected with
/// `0 < s <= smax`, `|t| <= tmax`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    pub smax: f64,
    pub tmax: f64,
}

/// Area of `{0 < s <= smax, |t| <= tmax, |s^2 + t^3| <= 1}` as a 1-D integral
/// of the admissible-t interval length.
///
/// For `s^2 > tmax^3 + 1` the strip is empty, so the integral is finite even
/// for huge boxes. The near region `s <= 4` is integrated directly with the
/// kinks as breakpoints; beyond that the substitution `z = s^(-1/3)` and a
/// cancellation-free form of the strip width keep the quadrature exact to
/// ~1e-9 regardless of the box size.
pub fn area_r(spec: RegionSpec) -> Result<f64> {
    let RegionSpec { smax, tmax } = spec;
    if !(smax > 0.0) || !(tmax > 0.0) {
        return Err(Error::domain("region bounds must be positive"));
    }
    let signed_cbrt = |v: f64| v.signum() * v.abs().cbrt();
    let length = move |s: f64| {
        let upper = signed_cbrt(1.0 - s * s).min(tmax);
        let lower = (-((1.0 + s * s).cbrt())).max(-tmax);
        (upper - lower).max(0.0)
    };
    let s_end = smax.min((tmax * tmax * tmax + 1.0).sqrt());
    let s_clip = (tmax * tmax * tmax - 1.0).max(0.0).sqrt();
    let s_mid = s_end.min(4.0);

    // Near region: breakpoints where the cube-root branches cross the box
    // edges, plus the vertical tangent of (1-s^2)^(1/3) at s = 1.
    let mut pts = vec![0.0f64];
    if tmax <= 1.0 {
        let s2 = 1.0 - tmax * tmax * tmax;
        if s2 > 0.0 && s2.sqrt() < s_mid {
            pts.push(s2.sqrt());
        }
    }
    if s_clip > 0.0 && s_clip < s_mid {
        pts.push(s_clip);
    }
    if s_mid > 1.0 {
        pts.push(1.0);
    }
    pts.push(s_mid);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let mut area = adaptive_simpson_pieces(&length, &pts, 5e-10);

    // Unclipped far region: width (1+s^2)^(1/3) - (s^2-1)^(1/3), written as
    // 2 / (a^2 + ab + b^2) to avoid cancellation.
    let far_a_end = s_clip.clamp(s_mid, s_end);
    if far_a_end > s_mid {
        let stable_width = |s: f64| {
            let hi = (1.0 + s * s).cbrt();
            let lo = (s * s - 1.0).cbrt();
            2.0 / (hi * hi + hi * lo + lo * lo)
        };
        let f = move |z: f64| {
            let s = z.powi(-3);
            stable_width(s) * 3.0 * z.powi(-4)
        };
        area += adaptive_simpson(&f, far_a_end.powf(-1.0 / 3.0), s_mid.powf(-1.0 / 3.0), 5e-10);
    }

    // Clipped far tail: width tmax - (s^2-1)^(1/3) on [s_clip, s_end]. Its
    // total mass is below tmax^(-7/2), so it only matters for moderate boxes.
    if s_end > far_a_end && tmax <= 1e3 {
        let f = move |s: f64| (tmax - (s * s - 1.0).cbrt()).max(0.0);
        area += adaptive_simpson(&f, far_a_end, s_end, 5e-10);
    }
    Ok(area)
}

/// Result of the weighted-sum main-term comparison: the three displayed
/// error terms with `eps = 0.01`, `Y0 = |y0| + Y`, `P = 2abqXY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm0Report {
    pub s: f64,
    pub main: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

pub fn thm0_check(x0: f64, y0: f64, x: f64, y: f64, a: u64, b: u64, q: u64) -> Result<Thm0Report> {
    let s_val = weighted_s(x0, y0, x, y, a, b, q)?;
    let fq = factorize(q)?;
    let fb = factorize(b)?;
    let (s_q, s1_q) = s_pair(q);
    let omega_s = factorize(s_q)?.omega();
    let eps = BUDGET_EPS;
    let y0_abs = y0.abs() + y;
    let logp = (2.0 * a as f64 * b as f64 * q as f64 * x * y).ln();
    let main = fq.phi() as f64 * x * y / (q as f64 * q as f64);
    let e1 = (2.0 + eps).powi(fq.omega() as i32) * (fq.rad() as f64).sqrt() * x / q as f64;
    let e2 = (2.0 + eps).powi(fb.omega() as i32) * (3.0 + eps).powi(fq.omega() as i32)
        / ((b as f64).powf(0.25) * (q as f64).sqrt())
        * ((a as f64).sqrt() * x * y / y0_abs
            + (a as f64).powf(0.25) * (b as f64).powf(0.25) * x.sqrt() * y / y0_abs.powf(0.25))
        * logp.powf(2.0 + eps);
    let e3 = (s_q as f64 * s1_q as f64).sqrt()
        * (q as f64).sqrt()
        * (2.0 + eps).powi((fb.omega() + fq.omega()) as i32)
        * 4f64.powi(omega_s as i32)
        * ((b as f64).sqrt() * y0_abs / x + (a as f64).sqrt() / y.sqrt())
        * logp.powf(2.0 + eps);
    Ok(Thm0Report {
        s: s_val,
        main,
        e1,
        e2,
        e3,
    })
}

/// Scaled parameters and error budget for the band-count asymptotic:
/// `sigma = sqrt(qB/a)`, `tau = (qB/b)^(1/3)`,
/// `U = min(X/sigma, (Y/tau)^(3/2))`, the main term, and the four displayed
/// error terms (`eps = 0.01`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfinalReport {
    pub sigma: f64,
    pub tau: f64,
    pub u_cap: f64,
    pub area: f64,
    pub main: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
}

pub fn tfinal_prediction(query: &CountQuery) -> Result<TfinalReport> {
    query.validate()?;
    let Some(band) = query.band else {
        return Err(Error::domain("tfinal needs the band parameter B"));
    };
    let CountQuery { a, b, q, x, y, .. } = *query;
    let (af, bf, qf) = (a as f64, b as f64, q as f64);
    if af * x * x < qf * band {
        return Err(Error::precondition(format!(
            "need a X^2 >= qB, got {} < {}",
            af * x * x,
            qf * band
        )));
    }
    if bf * y * y * y < qf * band {
        return Err(Error::precondition(format!(
            "need b Y^3 >= qB, got {} < {}",
            bf * y * y * y,
            qf * band
        )));
    }
    let sigma = (qf * band / af).sqrt();
    let tau = (qf * band / bf).cbrt();
    let u_cap = (x / sigma).min((y / tau).powf(1.5));
    let area = area_r(RegionSpec {
        smax: x / sigma,
        tmax: y / tau,
    })?;
    let fq = factorize(q)?;
    let fb = factorize(b)?;
    let (s_q, s1_q) = s_pair(q);
    let omega_s = factorize(s_q)?.omega();
    let eps = BUDGET_EPS;
    let phi_star = fq.phi() as f64 / qf;
    let main = phi_star * band.powf(5.0 / 6.0) * area
        / (af.sqrt() * bf.powf(1.0 / 3.0) * qf.powf(1.0 / 6.0));
    let f_eps = (2.0 + eps).powi(fq.omega() as i32) / af.sqrt()
        + (3.0 + eps).powi(fq.omega() as i32) / bf.powf(0.25 - eps);
    let logb = band.ln();
    let f1 = f_eps * band.sqrt() * logb.powf(3.0 + eps);
    let f2 = f_eps
        * af.powf(0.25)
        * (bf * qf * s_q as f64 * s1_q as f64).powf(0.125)
        * band.powf(0.25)
        * logb.powf(2.0 + eps)
        * u_cap.sqrt();
    let f3 = af.sqrt()
        * bf.powf(1.0 / 6.0)
        * (s_q as f64 * s1_q as f64).sqrt()
        * qf.powf(1.0 / 3.0)
        * (2.0 + eps).powi(fb.omega() as i32)
        * (2.0 + eps).powi(fq.omega() as i32)
        * 4f64.powi(omega_s as i32)
        * band.powf(-1.0 / 6.0)
        * logb.powf(3.0 + eps);
    let f4 = bf.powf(-1.0 / 12.0)
        * (s_q as f64 * s1_q as f64).powf(0.25)
        * qf.powf(1.0 / 12.0)
        * (2.0 + eps).powi((fb.omega() + fq.omega()) as i32)
        * 4f64.powi(omega_s as i32)
        * band.powf(1.0 / 3.0)
        * logb.powf(4.0 + eps)
        * u_cap.powf(2.0 / 3.0);
    Ok(TfinalReport {
        sigma,
        tau,
        u_cap,
        area,
        main,
        f1,
        f2,
        f3,
        f4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: u64, b: u64, qq: u64, x: f64, y: f64, band: Option<f64>) -> CountQuery {
        CountQuery {
            a,
            b,
            q: qq,
            x,
            y,
            band,
        }
    }

    #[test]
    fn count_m_trivial_modulus() {
        // empty congruence: 10 x-values times 21 y-values (y = 0 included)
        assert_eq!(count_m(&q(1, 1, 1, 10.0, 10.0, None)).unwrap(), 210);
    }

    #[test]
    fn count_m_oracle_examples() {
        for query in [
            q(1, 1, 7, 7.0, 7.0, None),
            q(1, 1, 5, 25.0, 25.0, None),
            q(2, 3, 25, 40.0, 30.0, None),
            q(3, 5, 16, 33.0, 21.0, None),
            q(1, 1, 12, 30.0, 22.0, None),
        ] {
            assert_eq!(
                count_m(&query).unwrap(),
                count_oracle(&query).unwrap(),
                "query {query:?}"
            );
        }
    }

    #[test]
    fn count_m_b_band_inactive_equals_count_m() {
        let base = q(1, 1, 7, 20.0, 10.0, None);
        let b = (400.0 + 1000.0) / 7.0 + 1.0;
        let banded = q(1, 1, 7, 20.0, 10.0, Some(b));
        assert_eq!(count_m(&base).unwrap(), count_m_b(&banded).unwrap());
    }

    #[test]
    fn count_m_b_oracle_examples() {
        for query in [
            q(1, 1, 3, 30.0, 10.0, Some(100.0)),
            q(2, 3, 5, 50.0, 20.0, Some(40.0)),
            q(1, 2, 9, 40.0, 15.0, Some(25.0)),
            q(1, 1, 1, 25.0, 25.0, Some(3.0)),
        ] {
            assert_eq!(
                count_m_b(&query).unwrap(),
                count_oracle(&query).unwrap(),
                "query {query:?}"
            );
        }
    }

    #[test]
    fn count_m_translation_invariance() {
        let a = count_m(&q(3, 5, 7, 50.0, 40.0, None)).unwrap();
        let b = count_m(&q(3 + 7, 5 + 7, 7, 50.0, 40.0, None)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn count_m_b_monotone() {
        let base = |x: f64, y: f64, b: f64| q(1, 1, 5, x, y, Some(b));
        let v = count_m_b(&base(50.0, 20.0, 10.0)).unwrap();
        assert!(count_m_b(&base(50.0, 20.0, 20.0)).unwrap() >= v);
        assert!(count_m_b(&base(80.0, 20.0, 10.0)).unwrap() >= v);
        assert!(count_m_b(&base(50.0, 35.0, 10.0)).unwrap() >= v);
    }

    #[test]
    fn guards_and_preconditions() {
        assert!(count_m(&q(1, 1, 5, 1e6, 1e6, None)).is_err());
        assert!(count_m(&q(5, 1, 5, 10.0, 10.0, None)).is_err());
        assert!(count_m_b(&q(1, 1, 5, 10.0, 10.0, None)).is_err());
    }

    #[test]
    fn main_term_convergence_in_box_size() {
        // a = b = 1, q prime, X = Y = cq: the normalized deviation from
        // phi(q) X Y 2 / q^2 shrinks as the box grows.
        let qq = 101u64;
        let phi = (qq - 1) as f64;
        let dev = |c: f64| {
            let x = c * qq as f64;
            let n = count_m(&q(1, 1, qq, x, x, None)).unwrap() as f64;
            (n - 2.0 * phi * x * x / (qq as f64 * qq as f64)).abs() / (x * x / qq as f64)
        };
        let (d10, d20, d40) = (dev(10.0), dev(20.0), dev(40.0));
        assert!(d10 < 10.0, "d10 = {d10}");
        assert!(d20 <= d10 + 1e-9 && d40 <= d20 + 1e-9, "{d10} {d20} {d40}");
    }

    #[test]
    fn weighted_s_factorizes_at_q1() {
        let (x, y) = (6.0, 4.5);
        let s = weighted_s(0.0, 0.0, x, y, 1, 1, 1).unwrap();
        let sx: f64 = (-100..=100).map(|t| gaussian(t as f64 / x)).sum();
        let sy: f64 = (-100..=100).map(|t| gaussian(t as f64 / y)).sum();
        assert!((s - sx * sy).abs() < 1e-9);
    }

    #[test]
    fn weighted_s_matches_direct_sum() {
        let (x, y, qq) = (50.0, 50.0, 7u64);
        let s = weighted_s(0.0, 0.0, x, y, 1, 1, qq).unwrap();
        let mut direct = 0.0;
        let r = (8.0 * x) as i64;
        for xi in -r..=r {
            for yi in -r..=r {
                if gcd_i(xi * yi, qq as i64) != 1 {
                    continue;
                }
                if (xi * xi + yi * yi * yi).rem_euclid(qq as i64) == 0 {
                    direct += gaussian(xi as f64 / x) * gaussian(yi as f64 / y);
                }
            }
        }
        assert!((s - direct).abs() < 1e-9, "s={s} direct={direct}");
    }

    #[test]
    fn area_examples() {
        let tiny = area_r(RegionSpec {
            smax: 1e-6,
            tmax: 1.0,
        })
        .unwrap();
        assert!(tiny < 3e-6);
        // smax = tmax = 1: 1 + int_0^1 (1-s^2)^(1/3) ds, midpoint-rule oracle
        let v = area_r(RegionSpec {
            smax: 1.0,
            tmax: 1.0,
        })
        .unwrap();
        let n = 200_000;
        let mut int = 0.0;
        for i in 0..n {
            let s = (i as f64 + 0.5) / n as f64;
            int += (1.0 - s * s).cbrt();
        }
        int /= n as f64;
        assert!((v - (1.0 + int)).abs() < 1e-5, "v={v} oracle={}", 1.0 + int);
        // huge box: converges to the full region area
        let a1 = area_r(RegionSpec {
            smax: 1e6,
            tmax: 1e6,
        })
        .unwrap();
        let a2 = area_r(RegionSpec {
            smax: 5e5,
            tmax: 5e5,
        })
        .unwrap();
        assert!((a1 - a2).abs() < 1e-2);
        assert!(area_r(RegionSpec {
            smax: 0.0,
            tmax: 1.0
        })
        .is_err());
    }

    #[test]
    fn area_stability_under_refinement() {
        // halving the tolerance moves the value by well under 1e-8
        let spec = RegionSpec {
            smax: 8.0,
            tmax: 4.0,
        };
        let a = area_r(spec).unwrap();
        let signed_cbrt = |v: f64| v.signum() * v.abs().cbrt();
        let length = |s: f64| {
            let upper = signed_cbrt(1.0 - s * s).min(4.0);
            let lower = (-((1.0 + s * s).cbrt())).max(-4.0);
            (upper - lower).max(0.0)
        };
        let fine = adaptive_simpson_pieces(&length, &[0.0, 1.0, 8.0], 1e-12);
        assert!((a - fine).abs() < 1e-8, "a={a} fine={fine}");
    }

    #[test]
    fn tfinal_scaling_example() {
        let r = tfinal_prediction(&q(1, 1, 1, 64.0, 16.0, Some(64.0))).unwrap();
        assert!((r.sigma - 8.0).abs() < 1e-12);
        assert!((r.tau - 4.0).abs() < 1e-12);
        assert!((r.u_cap - 8.0).abs() < 1e-12);
        let e = tfinal_prediction(&q(1, 1, 1, 4.0, 16.0, Some(64.0))).unwrap_err();
        assert!(format!("{e}").contains("X^2"));
    }

    #[test]
    fn thm0_close_to_main_term() {
        let r = thm0_check(0.0, 0.0, 100.0, 100.0, 1, 1, 11).unwrap();
        assert!(
            (r.s - r.main).abs() <= 50.0 * (r.e1 + r.e2 + r.e3),
            "S={} main={} budget={}",
            r.s,
            r.main,
            r.e1 + r.e2 + r.e3
        );
    }
}
