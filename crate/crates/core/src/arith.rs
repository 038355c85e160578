//! Integer and multiplicative-function primitives.
//!
//! Everything here is deterministic: factorization uses trial division by a
//! fixed prime table followed by Brent's cycle-finding variant of Pollard rho
//! with a fixed parameter schedule, and primality testing is Miller-Rabin
//! with a base set that is deterministic for all 64-bit integers.

use crate::error::{Error, Result};
use crate::rational::Rational;
use once_cell::sync::Lazy;

/// Trial-division bound; primes up to this limit are sieved once and shared.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Shared read-only prime table (built on first use).
pub static PRIMES: Lazy<Vec<u32>> = Lazy::new(|| sieve(TRIAL_LIMIT as usize));

fn sieve(limit: usize) -> Vec<u32> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(80_000);
    for n in 2..=limit {
        if !composite[n] {
            primes.push(n as u32);
            let mut m = n * n;
            while m <= limit {
                composite[m] = true;
                m += n;
            }
        }
    }
    primes
}

/// Primes up to `limit` (inclusive), drawn from the shared table.
pub fn primes_up_to(limit: u64) -> impl Iterator<Item = u64> + 'static {
    assert!(limit <= TRIAL_LIMIT, "prime table limit exceeded");
    PRIMES
        .iter()
        .map(|&p| p as u64)
        .take_while(move |&p| p <= limit)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all `u64` inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho with a fixed parameter schedule.
fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    panic!("pollard rho failed on {n}");
}

/// Prime-exponent multiset of a positive integer.
///
/// Primes are strictly increasing, every exponent is at least 1, and the
/// empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
    }

    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn rad(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn mu(&self) -> i32 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// All divisors, in no particular order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = divs.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divs.extend(prev.iter().map(|d| d * pk));
            }
        }
        divs
    }
}

/// Factor a positive 64-bit integer. `n = 0` is a domain error.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize(0) is undefined"));
    }
    let mut rem = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for &p in PRIMES.iter() {
        let p = p as u64;
        if p * p > rem {
            break;
        }
        if rem % p == 0 {
            let mut e = 0;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rem > 1 {
        if is_prime(rem) || rem < TRIAL_LIMIT * TRIAL_LIMIT {
            // After trial division to 1e6 the remainder is prime unless it
            // exceeds 1e12, so only the large-remainder path can recurse.
            if is_prime(rem) {
                factors.push((rem, 1));
            } else {
                unreachable!("composite remainder {rem} below trial bound squared");
            }
        } else {
            let mut stack = vec![rem];
            let mut extra: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime(m) {
                    extra.push(m);
                } else {
                    let d = pollard_brent(m);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
            extra.sort_unstable();
            let mut i = 0;
            while i < extra.len() {
                let p = extra[i];
                let mut e = 0;
                while i < extra.len() && extra[i] == p {
                    e += 1;
                    i += 1;
                }
                factors.push((p, e));
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { factors })
}

/// (mu, phi, omega, rad, phi_star) of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultStats {
    pub mu: i32,
    pub phi: u64,
    pub omega: u32,
    pub rad: u64,
    pub phi_star: Rational,
}

pub fn multiplicative_stats(n: u64) -> Result<MultStats> {
    let f = factorize(n)?;
    Ok(MultStats {
        mu: f.mu(),
        phi: f.phi(),
        omega: f.omega(),
        rad: f.rad(),
        phi_star: Rational::new(f.phi() as i128, n as i128),
    })
}

/// `phi(n)/n` as an exact rational.
pub fn phi_star(n: u64) -> Rational {
    let f = factorize(n).expect("phi_star of 0");
    let mut r = Rational::ONE;
    for &(p, _) in f.factors() {
        r = r * Rational::new(p as i128 - 1, p as i128);
    }
    r
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::domain(format!(
            "jacobi symbol needs an odd positive modulus, got {n}"
        )));
    }
    let mut n = n;
    let mut a = (a.rem_euclid(n as i64)) as u64;
    let mut sign = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// Phase of the Gauss-sum normalizer: `0` (the value 1) for `q = 1 mod 4`,
/// `1/4` (the value i) for `q = 3 mod 4`.
pub fn eps_q_phase(q: u64) -> Result<Rational> {
    if q % 2 == 0 {
        return Err(Error::domain(format!("eps_q needs odd q, got {q}")));
    }
    if q % 4 == 1 {
        Ok(Rational::ZERO)
    } else {
        Ok(Rational::new(1, 4))
    }
}

/// `s(q)` = product of primes dividing `q` exactly to the first power,
/// `s1(q)` = product of primes whose exponent in `q` is odd.
pub fn s_pair(q: u64) -> (u64, u64) {
    let f = factorize(q).expect("s_pair of 0");
    let mut s = 1u64;
    let mut s1 = 1u64;
    for &(p, e) in f.factors() {
        if e == 1 {
            s *= p;
        }
        if e % 2 == 1 {
            s1 *= p;
        }
    }
    (s, s1)
}

/// A positive real of the form `prod p^(e/4)` with nonnegative quarter-integer
/// exponents, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarterPower {
    /// `(prime, exponent numerator over denominator 4)`, primes increasing.
    factors: Vec<(u64, u32)>,
}

impl QuarterPower {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn to_f64(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as f64).powf(e as f64 / 4.0))
            .product()
    }

    /// The exact fourth power, as an integer. Panics on overflow.
    pub fn pow4(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

/// The multiplicative weight `rho(n)` with `rho(p^a) = p^f(a)`,
/// `f(a) = 1/2, 1, 1, 5/4, a/4` for `a = 1, 2, 3, 4, >= 5`.
pub fn rho_weight(n: u64) -> QuarterPower {
    let f = factorize(n).expect("rho_weight of 0");
    let factors = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let quarters = match a {
                1 => 2,
                2 | 3 => 4,
                4 => 5,
                _ => a,
            };
            (p, quarters)
        })
        .collect();
    QuarterPower { factors }
}

/// Multiplicative inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("modulus 0"));
    }
    if m == 1 {
        return Ok(0);
    }
    let a0 = a.rem_euclid(m as i64) as u64;
    // Extended Euclid on (a0, m).
    let (mut old_r, mut r) = (a0 as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible(a, m));
    }
    Ok(old_s.rem_euclid(m as i128) as u64)
}

/// Combine congruences `x = r_i (mod m_i)` with pairwise coprime moduli.
/// Returns `(r, M)` with `M` the product of the moduli and `0 <= r < M`.
pub fn crt_combine(residues: &[(i64, u64)]) -> Result<(u64, u64)> {
    let mut r = 0u128;
    let mut m = 1u128;
    for &(ri, mi) in residues {
        if mi == 0 {
            return Err(Error::domain("CRT modulus 0"));
        }
        let g = gcd((m % mi as u128) as u64, mi);
        if g != 1 {
            return Err(Error::domain(format!(
                "CRT moduli not pairwise coprime (gcd {g})"
            )));
        }
        let ri = ri.rem_euclid(mi as i64) as u128;
        // x = r (mod m), x = ri (mod mi): x = r + m*t, t = (ri - r)/m (mod mi)
        let inv = mod_inverse((m % mi as u128) as i64, mi)? as u128;
        let diff = (ri + mi as u128 - r % mi as u128) % mi as u128;
        let t = diff * inv % mi as u128;
        r += m * t;
        m *= mi as u128;
        if m > u64::MAX as u128 {
            return Err(Error::guard("CRT modulus exceeds 64 bits"));
        }
    }
    Ok((r as u64, m as u64))
}

pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x > 0 && x.checked_mul(x).map_or(true, |v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |v| v <= n) {
        x += 1;
    }
    x
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

fn icbrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).cbrt() as u64;
    while x > 0 && x.checked_pow(3).map_or(true, |v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_pow(3).map_or(false, |v| v <= n) {
        x += 1;
    }
    x
}

/// True iff `mu(|n|)^2 = 1`, with `mu(0) = 0` so that `is_squarefree(0)` is
/// false. Strips primes up to `|n|^(1/3)`; the remaining cofactor has at most
/// two prime factors and is squarefree exactly when it is not a perfect
/// square.
pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n.unsigned_abs();
    if m == 1 {
        return true;
    }
    let bound = icbrt(m);
    for &p in PRIMES.iter() {
        let p = p as u64;
        if p > bound {
            break;
        }
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
    }
    m == 1 || !is_perfect_square(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        let f = factorize(12).unwrap();
        assert_eq!(f.factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        // independent trial-division oracle for the large example
        let n = 600851475143u64;
        let mut m = n;
        let mut oracle = Vec::new();
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                oracle.push((p, e));
            }
            p += 1;
        }
        if m > 1 {
            oracle.push((m, 1));
        }
        assert_eq!(oracle, vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]);
        assert_eq!(factorize(n).unwrap().factors(), &oracle[..]);
        assert_eq!(factorize(n).unwrap().value(), n);
    }

    #[test]
    fn factorize_zero_errors() {
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_large_semiprime() {
        // forces the Pollard path: product of two primes above the trial bound
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn stats_examples() {
        let s = multiplicative_stats(12).unwrap();
        assert_eq!(
            (s.mu, s.phi, s.omega, s.rad, s.phi_star),
            (0, 4, 2, 6, Rational::new(1, 3))
        );
        let s = multiplicative_stats(1).unwrap();
        assert_eq!(
            (s.mu, s.phi, s.omega, s.rad, s.phi_star),
            (1, 1, 0, 1, Rational::ONE)
        );
        let s = multiplicative_stats(30).unwrap();
        assert_eq!(
            (s.mu, s.phi, s.omega, s.rad, s.phi_star),
            (-1, 8, 3, 30, Rational::new(4, 15))
        );
    }

    #[test]
    fn jacobi_examples() {
        for n in [1u64, 3, 5, 9, 15, 21, 45] {
            assert_eq!(jacobi(1, n).unwrap(), 1);
        }
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        // (2/15) = (2/3)(2/5) by exhaustive squaring: squares mod 3 = {1},
        // squares mod 5 = {1,4}; 2 is a non-residue mod both, so (-1)(-1) = 1.
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert!(jacobi(2, 4).is_err());
    }

    #[test]
    fn jacobi_matches_legendre_via_euler() {
        for &p in &[3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in 0..p as i64 {
                let euler = pow_mod(a as u64, (p - 1) / 2, p);
                let expected = if euler == 0 {
                    0
                } else if euler == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi(a, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn eps_q_examples() {
        assert_eq!(eps_q_phase(5).unwrap(), Rational::ZERO);
        assert_eq!(eps_q_phase(7).unwrap(), Rational::new(1, 4));
        assert_eq!(eps_q_phase(1).unwrap(), Rational::ZERO);
        assert!(eps_q_phase(6).is_err());
    }

    #[test]
    fn s_pair_examples() {
        assert_eq!(s_pair(360), (5, 10));
        assert_eq!(s_pair(13), (13, 13));
        assert_eq!(s_pair(4), (1, 1));
    }

    #[test]
    fn rho_weight_examples() {
        assert_eq!(rho_weight(7).factors(), &[(7, 2)]);
        assert_eq!(rho_weight(16).factors(), &[(2, 5)]);
        assert_eq!(rho_weight(12).factors(), &[(2, 4), (3, 2)]);
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(27, 25).unwrap(), 13);
        assert_eq!(27u64 * 13 % 25, 1);
        assert!(mod_inverse(2, 4).is_err());
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_combine(&[(1, 3), (2, 5)]).unwrap(), (7, 15));
        assert_eq!(crt_combine(&[(0, 11)]).unwrap(), (0, 11));
        assert!(crt_combine(&[(2, 4), (2, 6)]).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(0));
        assert!(is_squarefree(-30));
        assert!(!is_squarefree(-12));
        assert!(is_squarefree(1));
    }

    #[test]
    fn squarefree_matches_factorization_up_to_20000() {
        for n in 1..20_000u64 {
            let f = factorize(n).unwrap();
            let sf = f.factors().iter().all(|&(_, e)| e == 1);
            assert_eq!(is_squarefree(n as i64), sf, "n={n}");
        }
    }

    #[test]
    fn squarefree_large_square_cofactor() {
        // cofactor p^2 with p above the cube-root bound
        let p = 10_007i64;
        assert!(!is_squarefree(p * p));
        assert!(is_squarefree(p * (p + 2)));
    }

    #[test]
    fn product_reconstruction_to_1e5() {
        for n in 1..=100_000u64 {
            assert_eq!(factorize(n).unwrap().value(), n);
        }
    }

    #[test]
    fn multiplicativity_on_coprime_sample() {
        let to_f64 = |q: &QuarterPower| q.pow4();
        for m in (7..1000u64).step_by(89) {
            for n in (11..1000u64).step_by(97) {
                if gcd(m, n) != 1 {
                    continue;
                }
                let (sm, s1m) = s_pair(m);
                let (sn, s1n) = s_pair(n);
                let (smn, s1mn) = s_pair(m * n);
                assert_eq!(smn, sm * sn);
                assert_eq!(s1mn, s1m * s1n);
                let a = multiplicative_stats(m).unwrap();
                let b = multiplicative_stats(n).unwrap();
                let c = multiplicative_stats(m * n).unwrap();
                assert_eq!(c.mu, a.mu * b.mu);
                assert_eq!(c.phi, a.phi * b.phi);
                assert_eq!(c.rad, a.rad * b.rad);
                assert_eq!(
                    to_f64(&rho_weight(m * n)),
                    to_f64(&rho_weight(m)) * to_f64(&rho_weight(n))
                );
            }
        }
    }

    #[test]
    fn jacobi_reciprocity_to_500() {
        for m in (3..=500u64).step_by(2) {
            for n in (3..=500u64).step_by(2) {
                if gcd(m, n) != 1 {
                    continue;
                }
                let lhs = jacobi(m as i64, n).unwrap() * jacobi(n as i64, m).unwrap();
                let rhs = if m % 4 == 3 && n % 4 == 3 { -1 } else { 1 };
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn rho_weight_monotone_under_divisibility() {
        // rho(m) <= rho(n) and m/rho(m) <= n/rho(n) for m | n, exactly via
        // fourth powers to avoid floating comparisons.
        for n in 1..=10_000u64 {
            let fn_ = factorize(n).unwrap();
            let rho_n4 = rho_weight(n).pow4();
            for m in fn_.divisors() {
                let rho_m4 = rho_weight(m).pow4();
                assert!(rho_m4 <= rho_n4, "rho({m}) > rho({n})");
                let lhs = (m as u128).pow(4) * rho_n4;
                let rhs = (n as u128).pow(4) * rho_m4;
                assert!(lhs <= rhs, "m/rho(m) > n/rho(n) for {m} | {n}");
            }
        }
    }

    #[test]
    fn rho_weight_submultiplicative_sample() {
        for n1 in (2..200u64).step_by(13) {
            for n2 in (2..200u64).step_by(17) {
                let lhs = rho_weight(n1 * n2).pow4();
                let rhs = rho_weight(n1).pow4() * rho_weight(n2).pow4();
                assert!(lhs <= rhs, "rho({n1}*{n2}) > rho({n1})rho({n2})");
            }
        }
    }

    #[test]
    fn wot_first_identity() {
        // sum over k | n, (k,a)=1 of mu(k)/k = phi*(n)/phi*((a,n))
        for a in 1..=200u64 {
            for n in 1..=200u64 {
                let f = factorize(n).unwrap();
                let mut lhs = Rational::ZERO;
                for k in f.divisors() {
                    if gcd(k, a) != 1 {
                        continue;
                    }
                    let mu = factorize(k).unwrap().mu();
                    if mu != 0 {
                        lhs = lhs + Rational::new(mu as i128, k as i128);
                    }
                }
                let rhs = phi_star(n) / phi_star(gcd(a, n));
                assert_eq!(lhs, rhs, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn wot_second_identity() {
        // sum over k | n, (k,a)=1 of mu(k)/(k phi*(bk))
        //   = phi*((n,ab)) / (phi*(bn) phi*((a,b,n))) * prod_{p|n, p∤ab}(1-2/p)
        for a in 1..=60u64 {
            for b in 1..=60u64 {
                for n in 1..=60u64 {
                    let f = factorize(n).unwrap();
                    let mut lhs = Rational::ZERO;
                    for k in f.divisors() {
                        if gcd(k, a) != 1 {
                            continue;
                        }
                        let mu = factorize(k).unwrap().mu();
                        if mu != 0 {
                            lhs = lhs
                                + Rational::new(mu as i128, k as i128) / phi_star(b * k);
                        }
                    }
                    let mut prod = Rational::ONE;
                    for &(p, _) in f.factors() {
                        if a * b % p != 0 {
                            prod = prod * Rational::new(p as i128 - 2, p as i128);
                        }
                    }
                    let rhs = phi_star(gcd(n, a * b))
                        / (phi_star(b * n) * phi_star(gcd(a, gcd(b, n))))
                        * prod;
                    assert_eq!(lhs, rhs, "a={a} b={b} n={n}");
                }
            }
        }
    }
}
