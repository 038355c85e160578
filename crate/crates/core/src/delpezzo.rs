//! Rational points of bounded height on the degree-2 del Pezzo surface
//! `x0^2 + x1 x2^3 + x1^3 x3 = 0`: a direct count, the exact enumeration of
//! the corresponding universal-torsor points, and every constituent of the
//! predicted leading constant.

use crate::arith::{
    factorize, gcd, is_perfect_square, isqrt, mod_inverse, mul_mod, phi_star,
    primes_up_to, Factorization,
};
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::congruence::{area_r, RegionSpec};
use crate::rational::Rational;
use rayon::prelude::*;

/// Guard for the cubic-loop direct count.
pub const DIRECT_GUARD: u64 = 300;
/// Guard for the torsor enumeration.
pub const TORSOR_GUARD: u64 = 1_000_000;

/// Exact denominator of the geometric constant: `30 * 2^10 * 3^4 * 5 * 7`.
pub const ALPHA_DENOMINATOR: u64 = 87_091_200;

/// A solution of `x0^2 + x1 x2^3 + x1^3 x3 = 0` with `x0, x1 >= 1` and
/// `(x1, x2, x3) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfacePoint {
    pub x0: i64,
    pub x1: i64,
    pub x2: i64,
    pub x3: i64,
}

impl SurfacePoint {
    pub fn validate(&self) -> Result<()> {
        if self.x0 < 1 || self.x1 < 1 {
            return Err(Error::domain("need x0, x1 >= 1"));
        }
        let lhs = self.x0 as i128 * self.x0 as i128
            + self.x1 as i128 * (self.x2 as i128).pow(3)
            + (self.x1 as i128).pow(3) * self.x3 as i128;
        if lhs != 0 {
            return Err(Error::domain(format!("not on the surface: {lhs}")));
        }
        let g = gcd(
            gcd(self.x1.unsigned_abs(), self.x2.unsigned_abs()),
            self.x3.unsigned_abs(),
        );
        if g != 1 {
            return Err(Error::domain(format!("(x1,x2,x3) = {g}")));
        }
        Ok(())
    }

    /// Smallest height box containing the point: `max(|x_i|, ceil(sqrt(x0)))`.
    pub fn min_height(&self) -> u64 {
        let b_from_x0 = {
            let r = isqrt(self.x0 as u64);
            if r * r == self.x0 as u64 {
                r
            } else {
                r + 1
            }
        };
        b_from_x0
            .max(self.x1.unsigned_abs())
            .max(self.x2.unsigned_abs())
            .max(self.x3.unsigned_abs())
    }
}

/// A torsor point: `eta1..eta8 >= 1`, `alpha2 >= 1`, satisfying the torsor
/// equation, the height conditions at level `B`, and the coprimality
/// conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorsorPoint {
    pub eta: [u64; 8],
    pub alpha: [i64; 3],
}

impl TorsorPoint {
    /// Torsor equation: `eta1^2 eta2 a1^3 + eta7 a2^2 + eta4 eta5^2 eta6^3
    /// eta8^4 a3 = 0`.
    pub fn equation_residue(&self) -> i128 {
        let e = &self.eta;
        let a = &self.alpha;
        (e[0] as i128).pow(2) * e[1] as i128 * (a[0] as i128).pow(3)
            + e[6] as i128 * (a[1] as i128).pow(2)
            + e[3] as i128
                * (e[4] as i128).pow(2)
                * (e[5] as i128).pow(3)
                * (e[7] as i128).pow(4)
                * a[2] as i128
    }

    pub fn validate(&self, b: u64) -> Result<()> {
        let e = &self.eta;
        let a = &self.alpha;
        if e.iter().any(|&x| x == 0) || a[1] < 1 {
            return Err(Error::domain("need eta_i >= 1 and alpha2 >= 1"));
        }
        if self.equation_residue() != 0 {
            return Err(Error::domain("torsor equation fails"));
        }
        let bb = b as i128;
        let m1 = monomial(e, [2, 4, 6, 5, 4, 3, 3, 2]);
        let m2 = monomial(e, [2, 3, 4, 3, 2, 1, 2, 0]);
        let m0 = monomial(e, [3, 6, 9, 7, 5, 3, 5, 1]);
        if m1 > bb as u128
            || m2 * a[0].unsigned_abs() as u128 > bb as u128
            || a[2].unsigned_abs() as i128 > bb
            || m0 * a[1] as u128 > (bb * bb) as u128
        {
            return Err(Error::domain("height conditions fail"));
        }
        let gp = |x: u128, y: u128| -> u128 {
            let (mut a, mut b) = (x, y);
            while b != 0 {
                let t = b;
                b = a % b;
                a = t;
            }
            a
        };
        let prod = |idx: &[usize]| -> u128 { idx.iter().map(|&i| e[i - 1] as u128).product() };
        let ok = gp(a[0].unsigned_abs() as u128, prod(&[2, 3, 4, 5, 6, 7, 8])) == 1
            && gp(a[1] as u128, prod(&[1, 2, 3, 4, 5, 6, 8])) == 1
            && gp(a[2].unsigned_abs() as u128, prod(&[1, 2, 3, 4, 5, 6, 7])) == 1
            && gp(e[7] as u128, prod(&[1, 2, 3, 4, 5, 7])) == 1
            && gp(e[6] as u128, prod(&[1, 2, 4, 5, 6])) == 1
            && gp(e[5] as u128, prod(&[1, 2, 3, 4])) == 1
            && gp(e[4] as u128, prod(&[1, 2, 3])) == 1
            && gp(e[3] as u128, prod(&[1, 2])) == 1
            && gp(e[2] as u128, e[0] as u128) == 1;
        if !ok {
            return Err(Error::domain("coprimality conditions fail"));
        }
        Ok(())
    }
}

fn monomial(eta: &[u64; 8], exps: [u32; 8]) -> u128 {
    let mut m = 1u128;
    for i in 0..8 {
        m *= (eta[i] as u128).pow(exps[i]);
    }
    m
}

/// The monomial transformation from torsor coordinates to surface
/// coordinates.
pub fn torsor_to_surface(p: &TorsorPoint) -> SurfacePoint {
    let e = &p.eta;
    let a = &p.alpha;
    let x0 = monomial(e, [3, 6, 9, 7, 5, 3, 5, 1]) as i128 * a[1] as i128;
    let x1 = monomial(e, [2, 4, 6, 5, 4, 3, 3, 2]) as i128;
    let x2 = monomial(e, [2, 3, 4, 3, 2, 1, 2, 0]) as i128 * a[0] as i128;
    let x3 = a[2] as i128;
    SurfacePoint {
        x0: x0 as i64,
        x1: x1 as i64,
        x2: x2 as i64,
        x3: x3 as i64,
    }
}

/// Exact count of surface solutions in the height-`B` box, by looping over
/// `(x1, x2, x3)` and testing `-(x1 x2^3 + x1^3 x3)` for a perfect square.
pub fn direct_count(b: u64) -> Result<u64> {
    Ok(direct_solutions(b)?.len() as u64)
}

/// The solution set itself (shares the cubic loop with `direct_count`).
pub fn direct_solutions(b: u64) -> Result<Vec<SurfacePoint>> {
    if b == 0 || b > DIRECT_GUARD {
        return Err(Error::guard(format!(
            "direct count limited to 1 <= B <= {DIRECT_GUARD}, got {b}"
        )));
    }
    let bi = b as i64;
    let b2 = (b * b) as u64;
    let mut out = Vec::new();
    for x1 in 1..=bi {
        for x2 in -bi..=bi {
            let base = x1 as i128 * (x2 as i128).pow(3);
            let cube = (x1 as i128).pow(3);
            for x3 in -bi..=bi {
                if gcd(gcd(x1 as u64, x2.unsigned_abs()), x3.unsigned_abs()) != 1 {
                    continue;
                }
                let rhs = -(base + cube * x3 as i128);
                if rhs < 1 {
                    continue;
                }
                let rhs = rhs as u64;
                if !is_perfect_square(rhs) {
                    continue;
                }
                let x0 = isqrt(rhs);
                if x0 >= 1 && x0 <= b2 {
                    out.push(SurfacePoint {
                        x0: x0 as i64,
                        x1,
                        x2,
                        x3,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Square roots of units modulo a prime power, via a root table mod `p` and
/// Hensel lifting (with the usual special treatment of powers of 2).
struct PrimePowerSqrt {
    p: u64,
    e: u32,
    pe: u64,
    /// root_mod_p[r] = some x with x^2 = r (mod p), or u32::MAX.
    root_mod_p: Vec<u32>,
}

impl PrimePowerSqrt {
    fn new(p: u64, e: u32) -> PrimePowerSqrt {
        let mut root_mod_p = vec![u32::MAX; p as usize];
        for x in 0..p {
            let r = mul_mod(x, x, p);
            if root_mod_p[r as usize] == u32::MAX {
                root_mod_p[r as usize] = x as u32;
            }
        }
        PrimePowerSqrt {
            p,
            e,
            pe: p.pow(e),
            root_mod_p,
        }
    }

    /// All unit solutions of `x^2 = a (mod p^e)`; empty when there are none.
    fn unit_roots(&self, a: u64) -> Vec<u64> {
        let (p, e, pe) = (self.p, self.e, self.pe);
        let a = a % pe;
        if a % p == 0 {
            return Vec::new();
        }
        if p == 2 {
            return match e {
                1 => vec![1],
                2 => {
                    if a % 4 == 1 {
                        vec![1, 3]
                    } else {
                        Vec::new()
                    }
                }
                _ => {
                    if a % 8 != 1 {
                        return Vec::new();
                    }
                    let mut x = 1u64;
                    for k in 3..e {
                        let pk = 1u64 << k;
                        if mul_mod(x, x, pk << 1) != a % (pk << 1) {
                            x += pk >> 1;
                        }
                    }
                    let half = pe >> 1;
                    let mut roots = vec![x % pe, (pe - x) % pe, (x + half) % pe, (pe - x + half) % pe];
                    roots.sort_unstable();
                    roots.dedup();
                    roots
                }
            };
        }
        let r0 = self.root_mod_p[(a % p) as usize];
        if r0 == u32::MAX {
            return Vec::new();
        }
        // Hensel: linear lift one power at a time.
        let mut x = r0 as u64;
        let mut pk = p;
        for _ in 1..e {
            let pk1 = pk * p;
            let x2 = mul_mod(x, x, pk1);
            let diff = (a % pk1 + pk1 - x2) % pk1;
            debug_assert_eq!(diff % pk, 0);
            let t = mul_mod(
                diff / pk,
                mod_inverse((2 * x % p) as i64, p).expect("unit"),
                p,
            );
            x = (x + t * pk) % pk1;
            pk = pk1;
        }
        debug_assert_eq!(mul_mod(x, x, pe), a);
        vec![x, pe - x]
    }
}

/// Precomputed data for one eta-tuple of the torsor enumeration.
struct EtaNode {
    eta: [u64; 8],
    /// modulus q = eta4 eta5^2 eta6^3 eta8^4
    q: u64,
    /// eta1^2 eta2 (coefficient of alpha1^3)
    coeff_a1: u64,
    eta7: u64,
    /// inverse of eta7 mod q
    inv7: u64,
    m2: u64,
    alpha2_cap: u64,
    /// prime-power sqrt solvers for q; each carries the inverse of the
    /// product of the preceding prime powers, for the CRT fold.
    solvers: Vec<(PrimePowerSqrt, u64)>,
    p1: u128,
    p2: u128,
    p3: u128,
}

impl EtaNode {
    fn new(eta: [u64; 8], b: u64) -> Option<EtaNode> {
        let q128 = eta[3] as u128
            * (eta[4] as u128).pow(2)
            * (eta[5] as u128).pow(3)
            * (eta[7] as u128).pow(4);
        assert!(q128 <= u64::MAX as u128, "torsor modulus overflow");
        let q = q128 as u64;
        let m0 = monomial(&eta, [3, 6, 9, 7, 5, 3, 5, 1]);
        let cap128 = (b as u128 * b as u128) / m0;
        if cap128 == 0 {
            return None;
        }
        let m2 = monomial(&eta, [2, 3, 4, 3, 2, 1, 2, 0]);
        if m2 > b as u128 {
            // no admissible alpha1 other than 0, which needs m2 = 1
            return None;
        }
        let mut qf = std::collections::BTreeMap::new();
        for (i, mult) in [(3usize, 1u32), (4, 2), (5, 3), (7, 4)] {
            for &(p, e) in factorize(eta[i]).expect("positive").factors() {
                *qf.entry(p).or_insert(0u32) += e * mult;
            }
        }
        let mut solvers = Vec::new();
        let mut preceding = 1u64;
        for (&p, &e) in &qf {
            let pe = p.pow(e);
            let inv = mod_inverse((preceding % pe) as i64, pe).expect("coprime moduli");
            solvers.push((PrimePowerSqrt::new(p, e), inv));
            preceding *= pe;
        }
        let inv7 = if q == 1 {
            0
        } else {
            mod_inverse((eta[6] % q) as i64, q).expect("eta7 coprime to q")
        };
        let prod = |idx: &[usize]| -> u128 { idx.iter().map(|&i| eta[i - 1] as u128).product() };
        Some(EtaNode {
            eta,
            q,
            coeff_a1: (eta[0] * eta[0]) as u64 * eta[1],
            eta7: eta[6],
            inv7,
            m2: m2 as u64,
            alpha2_cap: cap128.min(u64::MAX as u128) as u64,
            solvers,
            p1: prod(&[2, 3, 4, 5, 6, 7, 8]),
            p2: prod(&[1, 2, 3, 4, 5, 6, 8]),
            p3: prod(&[1, 2, 3, 4, 5, 6, 7]),
        })
    }

    /// All unit roots of `eta7 x^2 = t (mod q)`.
    fn congruence_roots(&self, t: u64) -> Vec<u64> {
        if self.q == 1 {
            return vec![0];
        }
        let a = mul_mod(t % self.q, self.inv7, self.q);
        let mut combined: Vec<u64> = vec![0];
        let mut modulus = 1u64;
        for (solver, inv_preceding) in &self.solvers {
            let local = solver.unit_roots(a % solver.pe);
            if local.is_empty() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(combined.len() * local.len());
            for &x in &combined {
                for &r in &local {
                    // x mod `modulus`, r mod pe -> unique value mod modulus*pe
                    let delta = (r + solver.pe - (x % solver.pe)) % solver.pe;
                    let k = mul_mod(delta, *inv_preceding, solver.pe);
                    next.push(x + k * modulus);
                }
            }
            modulus *= solver.pe;
            combined = next;
        }
        combined
    }

    /// Enumerate all `(alpha1, alpha2, alpha3)` for this tuple, invoking the
    /// callback on every torsor point.
    fn scan<F: FnMut(TorsorPoint)>(&self, b: u64, mut emit: F) {
        let a1_cap = (b / self.m2) as i64;
        let qb = self.q as i128 * b as i128;
        for a1 in -a1_cap..=a1_cap {
            if gcd_u128(a1.unsigned_abs() as u128, self.p1) != 1 {
                continue;
            }
            let t_full = -(self.coeff_a1 as i128) * (a1 as i128).pow(3);
            // eta7 a2^2 must lie in [t_full - qB, t_full + qB]
            let hi2 = (t_full + qb).div_euclid(self.eta7 as i128);
            if hi2 < 1 {
                continue;
            }
            let lo2 = (t_full - qb + self.eta7 as i128 - 1).div_euclid(self.eta7 as i128);
            let lo = if lo2 <= 1 { 1 } else { isqrt_i128_ceil(lo2) };
            let hi = isqrt_i128_floor(hi2).min(self.alpha2_cap as i128);
            if lo > hi {
                continue;
            }
            let t_mod = if self.q == 1 {
                0
            } else {
                (t_full.rem_euclid(self.q as i128)) as u64
            };
            let roots = self.congruence_roots(t_mod);
            for &root in &roots {
                let q = self.q.max(1) as i128;
                let mut a2 = if self.q == 1 {
                    lo
                } else {
                    lo + (root as i128 - lo).rem_euclid(q)
                };
                while a2 <= hi {
                    self.try_emit(a1, a2 as u64, b, &mut emit);
                    a2 += q;
                }
            }
        }
    }

    fn try_emit<F: FnMut(TorsorPoint)>(&self, a1: i64, a2: u64, b: u64, emit: &mut F) {
        if gcd_u128(a2 as u128, self.p2) != 1 {
            return;
        }
        let rem = (self.coeff_a1 as i128) * (a1 as i128).pow(3)
            + self.eta7 as i128 * (a2 as i128) * (a2 as i128);
        debug_assert_eq!(rem.rem_euclid(self.q as i128), 0);
        let a3 = -(rem / self.q as i128);
        if a3.unsigned_abs() > b as u128 {
            return;
        }
        if gcd_u128(a3.unsigned_abs(), self.p3) != 1 {
            return;
        }
        emit(TorsorPoint {
            eta: self.eta,
            alpha: [a1, a2 as i64, a3 as i64],
        });
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn isqrt_i128_floor(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn isqrt_i128_ceil(n: i128) -> i128 {
    let f = isqrt_i128_floor(n);
    if f * f == n {
        f
    } else {
        f + 1
    }
}

/// Enumerate the eta-tuples admissible at height `B` (first height
/// condition plus the eta-only coprimality conditions), in the fixed
/// nesting order eta3, eta2, eta4, eta5, eta6, eta1, eta7, eta8.
fn eta_tuples(b: u64) -> Vec<[u64; 8]> {
    let bf = b as u128;
    let mut out = Vec::new();
    let root = |budget: u128, e: u32| -> u64 {
        let mut r = (budget as f64).powf(1.0 / e as f64) as u64 + 1;
        while (r as u128).pow(e) > budget {
            r -= 1;
        }
        r
    };
    let mut eta = [1u64; 8];
    // eta3^6 <= B
    for e3 in 1..=root(bf, 6) {
        eta[2] = e3;
        let b3 = bf / (e3 as u128).pow(6);
        for e2 in 1..=root(b3, 4) {
            eta[1] = e2;
            let b2 = b3 / (e2 as u128).pow(4);
            for e4 in 1..=root(b2, 5) {
                if gcd(e4, e2) != 1 {
                    continue;
                }
                eta[3] = e4;
                let b4 = b2 / (e4 as u128).pow(5);
                for e5 in 1..=root(b4, 4) {
                    if gcd(e5, e2 * e3) != 1 {
                        continue;
                    }
                    eta[4] = e5;
                    let b5 = b4 / (e5 as u128).pow(4);
                    for e6 in 1..=root(b5, 3) {
                        if gcd_u128(e6 as u128, e2 as u128 * e3 as u128 * e4 as u128) != 1 {
                            continue;
                        }
                        eta[5] = e6;
                        let b6 = b5 / (e6 as u128).pow(3);
                        for e1 in 1..=root(b6, 2) {
                            if gcd_u128(
                                e1 as u128,
                                e3 as u128 * e4 as u128 * e5 as u128 * e6 as u128,
                            ) != 1
                            {
                                continue;
                            }
                            eta[0] = e1;
                            let b1 = b6 / (e1 as u128).pow(2);
                            for e7 in 1..=root(b1, 3) {
                                if gcd_u128(
                                    e7 as u128,
                                    e1 as u128
                                        * e2 as u128
                                        * e4 as u128
                                        * e5 as u128
                                        * e6 as u128,
                                ) != 1
                                {
                                    continue;
                                }
                                eta[6] = e7;
                                let b7 = b1 / (e7 as u128).pow(3);
                                for e8 in 1..=root(b7, 2) {
                                    if gcd_u128(
                                        e8 as u128,
                                        e1 as u128
                                            * e2 as u128
                                            * e3 as u128
                                            * e4 as u128
                                            * e5 as u128
                                            * e7 as u128,
                                    ) != 1
                                    {
                                        continue;
                                    }
                                    eta[7] = e8;
                                    out.push(eta);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Exact torsor count at height `B` (data-parallel over eta-tuples).
pub fn torsor_count(b: u64) -> Result<u64> {
    if b == 0 || b > TORSOR_GUARD {
        return Err(Error::guard(format!(
            "torsor enumeration limited to 1 <= B <= {TORSOR_GUARD}, got {b}"
        )));
    }
    let tuples = eta_tuples(b);
    let total = tuples
        .par_iter()
        .map(|&eta| {
            let Some(node) = EtaNode::new(eta, b) else {
                return 0u64;
            };
            let mut n = 0u64;
            node.scan(b, |_| n += 1);
            n
        })
        .sum();
    Ok(total)
}

/// All torsor points at height `B` (sequential; intended for small `B`).
pub fn torsor_points(b: u64) -> Result<Vec<TorsorPoint>> {
    if b == 0 || b > 10_000 {
        return Err(Error::guard(format!(
            "torsor point collection limited to B <= 10000, got {b}"
        )));
    }
    let mut out = Vec::new();
    for eta in eta_tuples(b) {
        if let Some(node) = EtaNode::new(eta, b) {
            node.scan(b, |p| out.push(p));
        }
    }
    Ok(out)
}

/// The closed form of the singular-series weight `gamma(eta)`: zero unless
/// the eta coprimality conditions hold, and otherwise
/// `phi*(e2..e8) phi*(e1..e6 e8) phi*(e4 e5 e6 (e3, e2 e7)) / phi*(e3..e6 e8)
///  * prod over p | e3, p coprime to e2 e4..e8 of (1 - 2/p)`.
pub fn gamma_eta(eta: &[u64; 8]) -> Rational {
    if eta.iter().any(|&e| e == 0) {
        return Rational::ZERO;
    }
    let facs: Vec<Factorization> = eta.iter().map(|&e| factorize(e).expect("positive")).collect();
    let coprime = |i: usize, js: &[usize]| -> bool {
        facs[i - 1]
            .factors()
            .iter()
            .all(|&(p, _)| js.iter().all(|&j| eta[j - 1] % p != 0))
    };
    if !(coprime(8, &[1, 2, 3, 4, 5, 7])
        && coprime(7, &[1, 2, 4, 5, 6])
        && coprime(6, &[1, 2, 3, 4])
        && coprime(5, &[1, 2, 3])
        && coprime(4, &[1, 2])
        && coprime(3, &[1]))
    {
        return Rational::ZERO;
    }
    // phi* of a product needs only the union of prime supports
    let phi_star_of = |indices: &[usize], extra: &[u64]| -> Rational {
        let mut primes: Vec<u64> = Vec::new();
        for &i in indices {
            for &(p, _) in facs[i - 1].factors() {
                primes.push(p);
            }
        }
        primes.extend_from_slice(extra);
        primes.sort_unstable();
        primes.dedup();
        let mut r = Rational::ONE;
        for p in primes {
            r = r * Rational::new(p as i128 - 1, p as i128);
        }
        r
    };
    // (eta3, eta2 eta7): primes of eta3 dividing eta2 or eta7
    let g_primes: Vec<u64> = facs[2]
        .factors()
        .iter()
        .map(|&(p, _)| p)
        .filter(|&p| eta[1] % p == 0 || eta[6] % p == 0)
        .collect();
    let num = phi_star_of(&[2, 3, 4, 5, 6, 7, 8], &[])
        * phi_star_of(&[1, 2, 3, 4, 5, 6, 8], &[])
        * phi_star_of(&[4, 5, 6], &g_primes);
    let den = phi_star_of(&[3, 4, 5, 6, 8], &[]);
    let mut extra = Rational::ONE;
    for &(p, _) in facs[2].factors() {
        if [1usize, 3, 4, 5, 6, 7].iter().all(|&j| eta[j] % p != 0) {
            extra = extra * Rational::new(p as i128 - 2, p as i128);
        }
    }
    num / den * extra
}

/// The defining triple divisor sum for `gamma(eta)`; exact rationals.
/// Feasible on small grids only.
pub fn gamma_eta_triple_sum(eta: &[u64; 8]) -> Rational {
    let e = eta;
    let coprime_ok = gcd(e[7], e[0] * e[1] * e[2] * e[3] * e[4] * e[6]) == 1
        && gcd(e[6], e[0] * e[1] * e[3] * e[4] * e[5]) == 1
        && gcd(e[5], e[0] * e[1] * e[2] * e[3]) == 1
        && gcd(e[4], e[0] * e[1] * e[2]) == 1
        && gcd(e[3], e[0] * e[1]) == 1
        && gcd(e[2], e[0]) == 1;
    if !coprime_ok {
        return Rational::ZERO;
    }
    let divisors = |n: u64| factorize(n).expect("positive").divisors();
    let mu = |n: u64| factorize(n).expect("positive").mu();
    let mut total = Rational::ZERO;
    for k3 in divisors(e[2] * e[3] * e[4] * e[5]) {
        if mu(k3) == 0 || gcd(k3, e[1] * e[6]) != 1 {
            continue;
        }
        let w = phi_star(k3 * e[3] * e[4] * e[4] * e[5] * e[5] * e[5] * e[7] * e[7] * e[7] * e[7]);
        for k1 in divisors(e[1] * e[2] * e[6]) {
            if mu(k1) == 0 || gcd(k1, k3 * e[3] * e[4] * e[5] * e[7]) != 1 {
                continue;
            }
            for k2 in divisors(e[0] * e[1] * e[2]) {
                if mu(k2) == 0 || gcd(k2, k3 * e[3] * e[4] * e[5] * e[7]) != 1 {
                    continue;
                }
                let term = Rational::new(
                    (mu(k3) * mu(k1) * mu(k2)) as i128,
                    (k3 * k1 * k2) as i128,
                );
                total = total + term * w;
            }
        }
    }
    total
}

/// Truncated local factor of the height Dirichlet series at `p` versus the
/// displayed closed form `1 + (1 - 1/p) H_p(s)`.
pub fn local_factor_check(p: u64, s: f64, cap: u32) -> Result<(f64, f64)> {
    if cap == 0 || cap > 12 {
        return Err(Error::domain("cap must be in 1..=12"));
    }
    if !(s > 0.0) {
        return Err(Error::domain("need s > 0"));
    }
    let k = [2u32, 4, 6, 5, 4, 3, 3, 2];
    // supports on which gamma can be nonzero: subsets with no conflicting pair
    let conflicts: [(usize, usize); 21] = [
        (0, 2),
        (0, 3),
        (1, 3),
        (0, 4),
        (1, 4),
        (2, 4),
        (0, 5),
        (1, 5),
        (2, 5),
        (3, 5),
        (0, 6),
        (1, 6),
        (3, 6),
        (4, 6),
        (5, 6),
        (0, 7),
        (1, 7),
        (2, 7),
        (3, 7),
        (4, 7),
        (6, 7),
    ];
    let compatible = |set: &[usize]| -> bool {
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let pair = (set[i].min(set[j]), set[i].max(set[j]));
                if conflicts.contains(&pair) {
                    return false;
                }
            }
        }
        true
    };
    let mut supports: Vec<Vec<usize>> = vec![Vec::new()];
    for mask in 1u32..(1 << 8) {
        let set: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
        if compatible(&set) {
            supports.push(set);
        }
    }
    let pf = p as f64;
    let mut truncated = 0.0;
    for support in &supports {
        let mut exps = vec![1u32; support.len()];
        loop {
            let mut eta = [1u64; 8];
            let mut weight_log = 0.0;
            for (idx, &i) in support.iter().enumerate() {
                eta[i] = p.pow(exps[idx]);
                weight_log -= (k[i] as f64 * s + 1.0) * exps[idx] as f64 * pf.ln();
            }
            truncated += gamma_eta(&eta).to_f64() * weight_log.exp();
            // advance the exponent vector
            let mut carry = true;
            for e in exps.iter_mut() {
                if *e < cap {
                    *e += 1;
                    carry = false;
                    break;
                }
                *e = 1;
            }
            if carry || support.is_empty() {
                break;
            }
        }
    }

    let x = |c: f64| pf.powf(-(c * s + 1.0));
    let y = |c: f64, d: f64| pf.powf(-(c * s + d));
    let (x2, x3, x4, x5, x6) = (x(2.0), x(3.0), x(4.0), x(5.0), x(6.0));
    let h = x2 * (1.0 - y(3.0, 2.0)) / ((1.0 - x2) * (1.0 - x3))
        + x3 * (1.0 - y(6.0, 2.0)) / ((1.0 - x3) * (1.0 - x6))
        + x3 * (1.0 - 1.0 / pf) / ((1.0 - x3) * (1.0 - x4))
        + x4 * (1.0 - 1.0 / pf) / ((1.0 - x4) * (1.0 - x5))
        + x5 * (1.0 - 1.0 / pf) / ((1.0 - x5) * (1.0 - x6))
        + x6 * (1.0 - 2.0 / pf + y(4.0, 2.0)) / ((1.0 - x6) * (1.0 - x4))
        + x4 * (1.0 - 1.0 / pf) / ((1.0 - x4) * (1.0 - x2))
        + x2 / (1.0 - x2);
    let closed = 1.0 + (1.0 - 1.0 / pf) * h;
    Ok((truncated, closed))
}

/// Truncated Euler product `prod (1-1/p)^8 (1 + 8/p + 1/p^2)` with a bound
/// on the omitted tail. The log of each factor is `-35/p^2 + O(1/p^3)` and
/// `|log f_p| <= 35/p^2` for p >= 11, so the tail of the log-sum is below
/// `36/cutoff` for the cutoffs accepted here.
pub fn g0(prime_cutoff: u64) -> Result<(f64, f64)> {
    if prime_cutoff < 2 {
        return Err(Error::domain("cutoff must be at least 2"));
    }
    let mut value = 1.0f64;
    for p in primes_up_to(prime_cutoff) {
        let pf = p as f64;
        value *= (1.0 - 1.0 / pf).powi(8) * (1.0 + 8.0 / pf + 1.0 / (pf * pf));
    }
    let tail_log = 36.0 / prime_cutoff as f64;
    let tail = value * (tail_log.exp_m1());
    Ok((value, tail))
}

/// The local density `omega_p = 1 + 8/p + 1/p^2`.
pub fn omega_p(p: u64) -> Rational {
    let p = p as i128;
    Rational::ONE + Rational::new(8, p) + Rational::new(1, p * p)
}

/// The archimedean density: `6 int v(u) du / sqrt(u)` over `u in (0,1)`,
/// where `v(u)` is the region area at `smax = u^(-9/2)`, `tmax = u^(-2)`.
/// Substituting `u = w^2` gives the smooth integrand `12 v(w^2)`.
pub fn omega_infinity() -> f64 {
    let f = |w: f64| {
        let u = (w * w).max(1e-12);
        12.0 * area_r(RegionSpec {
            smax: u.powf(-4.5),
            tmax: u.powf(-2.0),
        })
        .expect("positive bounds")
    };
    adaptive_simpson(&f, 0.0, 1.0, 2e-6)
}

/// The same density from the Leray-form parametrization
/// `2 int int int x1^(-3) dx0 dx1 dx2` over `0 <= x0, x1 <= 1`, `|x2| <= 1`,
/// `|x1^(-3)(x0^2 + x1 x2^3)| <= 1`, iterated in the opposite order to
/// [`omega_infinity`]: the `x0`-interval in closed form, then `x1`, then
/// `x2`.
///
/// The `x1`-slice behaves like `x1^(-1/2)` near 0 and the `x2`-profile like
/// `|x2|^(-3/4)`, so the substitutions `x1 = xi^2` and `x2 = +-zeta^4` make
/// both integrands bounded. The difference of square roots in the slice is
/// written as `2 x1^3 / (sqrt(upper) + sqrt(lower))` to avoid cancellation.
pub fn omega_infinity_leray() -> f64 {
    // integral over x1 of x1^(-3) * (x0-interval length), at fixed x2
    let slice = |x2: f64| -> f64 {
        let m = x2.abs().powi(3);
        let h = move |xi: f64| -> f64 {
            let x1 = xi * xi;
            if x1 == 0.0 {
                return 0.0;
            }
            let upper = if x2 <= 0.0 {
                x1 * (x1 * x1 + m)
            } else {
                x1 * (x1 * x1 - m)
            };
            if upper <= 0.0 {
                return 0.0;
            }
            let lower = if x2 <= 0.0 {
                (x1 * (m - x1 * x1)).max(0.0)
            } else {
                0.0
            };
            let len = if upper >= 1.0 {
                1.0 - lower.sqrt()
            } else if lower > 0.0 {
                // sqrt(upper) - sqrt(lower) with upper - lower = 2 x1^3
                2.0 * x1 * x1 * x1 / (upper.sqrt() + lower.sqrt())
            } else {
                upper.sqrt()
            };
            len.max(0.0) / (x1 * x1 * x1) * 2.0 * xi
        };
        if x2 > 0.0 {
            // support starts at x1 = x2^(3/2), i.e. xi = x2^(3/4)
            let edge = x2.powf(0.75);
            if edge >= 1.0 {
                return 0.0;
            }
            adaptive_simpson(&h, edge, 1.0, 2e-8)
        } else {
            adaptive_simpson(&h, 0.0, 1.0, 2e-8)
        }
    };
    let negative = adaptive_simpson(
        &|z: f64| slice(-(z * z * z * z)) * 4.0 * z * z * z,
        0.0,
        1.0,
        1e-6,
    );
    let positive = adaptive_simpson(
        &|z: f64| slice(z * z * z * z) * 4.0 * z * z * z,
        0.0,
        1.0,
        1e-6,
    );
    2.0 * (negative + positive)
}

/// All real and rational constituents of the predicted leading constant,
/// plus the comparison table rows.
#[derive(Debug, Clone, PartialEq)]
pub struct PeyreBreakdown {
    pub alpha: Rational,
    pub omega_inf: f64,
    pub g0_value: f64,
    pub g0_tail: f64,
    pub constant_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManinRow {
    pub b: u64,
    pub n_u: u64,
    pub prediction: f64,
    pub ratio: f64,
}

/// The predicted constant `c = omega_inf * G(0) / 87091200` and the counted
/// versus predicted table at the given heights.
pub fn peyre_prediction(b_list: &[u64], g0_cutoff: u64) -> Result<(PeyreBreakdown, Vec<ManinRow>)> {
    for &b in b_list {
        if b < 3 {
            return Err(Error::domain("heights must be at least 3"));
        }
    }
    let (g0_value, g0_tail) = g0(g0_cutoff)?;
    let omega_inf = omega_infinity();
    let breakdown = PeyreBreakdown {
        alpha: Rational::new(1, ALPHA_DENOMINATOR as i128),
        omega_inf,
        g0_value,
        g0_tail,
        constant_c: omega_inf * g0_value / ALPHA_DENOMINATOR as f64,
    };
    let mut rows = Vec::new();
    for &b in b_list {
        let n_u = 2 * torsor_count(b)?;
        let prediction = breakdown.constant_c * b as f64 * (b as f64).ln().powi(7);
        rows.push(ManinRow {
            b,
            n_u,
            prediction,
            ratio: n_u as f64 / prediction,
        });
    }
    Ok((breakdown, rows))
}
