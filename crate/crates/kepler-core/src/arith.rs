//! Small-integer and modular arithmetic utilities.
//!
//! Everything here is exact: u64/u128 modular arithmetic for primes that fit
//! machine words (primality, factoring, square roots mod p, multiplicative
//! orders) and BigInt helpers (modular inverse, reduction of p-integral
//! rationals modulo p^k) shared by the p-adic layers and the census.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// (a * b) mod m without overflow.
#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m by binary exponentiation.
pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64 (the standard 12-witness set).
pub fn is_prime_u64(n: u64) -> bool {
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
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
fn brent_rho(n: u64, seed: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = seed;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut ys, mut q, mut g) = (2u64, 2u64, 1u64, 1u64);
        let mut y = 2u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += lim;
            }
            r <<= 1;
        }
        if g == n {
            // Backtrack one step at a time.
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
        c += 1; // cycle degenerated; retry with a new polynomial
    }
}

/// Greatest common divisor for u64.
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Factor n into (prime, multiplicity) pairs, primes ascending.
///
/// Trial division by small primes, then Brent rho on what remains — fast for
/// the n ≤ 10^7 + 1 sizes the census needs and still correct for any u64.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut wi = 0;
    while d <= 3163 && d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += wheel[wi];
        wi = (wi + 1) % wheel.len();
    }
    // Whatever survives trial division: split recursively with rho.
    let mut stack = vec![n];
    let mut rest: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            rest.push(m);
        } else {
            let f = brent_rho(m, 1);
            stack.push(f);
            stack.push(m / f);
        }
    }
    rest.sort_unstable();
    let mut i = 0;
    while i < rest.len() {
        let p = rest[i];
        let mut e = 0;
        while i < rest.len() && rest[i] == p {
            e += 1;
            i += 1;
        }
        out.push((p, e));
    }
    out.sort_unstable();
    out
}

/// Legendre symbol (a/p) for an odd prime p: 1, -1, or 0.
pub fn legendre(a: i64, p: u64) -> i32 {
    let am = a.rem_euclid(p as i64) as u64;
    if am == 0 {
        return 0;
    }
    let e = powmod(am, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli–Shanks: a square root of a mod p for odd prime p, if one exists.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a as i64, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // Write p − 1 = q · 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    // A quadratic non-residue z.
    let mut z = 2u64;
    while legendre(z as i64, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Multiplicative order of u mod p (p prime, p ∤ u): divisor reduction on p−1.
pub fn order_mod_p(u: u64, p: u64) -> u64 {
    debug_assert!(u % p != 0);
    let mut e = p - 1;
    for (q, _) in factor_u64(p - 1) {
        while e % q == 0 && powmod(u, e / q, p) == 1 {
            e /= q;
        }
    }
    e
}

/// Modular inverse of a mod m (m ≥ 2), if gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Reduce a p-integral rational num/den modulo m = p^k: num · den^{-1} mod m.
///
/// Errors if p divides the denominator (the value is not p-integral).
pub fn rational_mod(num: &BigInt, den: &BigInt, m: &BigInt) -> Result<BigInt> {
    let d = den.mod_floor(m);
    let inv = mod_inverse(&d, m).ok_or_else(|| {
        Error::InvalidInput("rational is not integral at p: denominator not invertible".into())
    })?;
    Ok((num.mod_floor(m) * inv).mod_floor(m))
}

/// All divisors of n, ascending (n from `factor_u64` sizes).
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(n) {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    divs
}

/// ν_p of a BigInt (None means the input is zero, i.e. valuation +∞).
pub fn vp_bigint(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        m = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_boundaries() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(0));
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(91));
        assert!(is_prime_u64(1_000_003));
        assert!(is_prime_u64(2_147_483_647)); // 2^31 − 1
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn factoring_round_trips() {
        for n in [1u64, 2, 12, 97, 1_000_000, 9_999_991, 600_851_475_143] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            if n >= 2 {
                assert_eq!(back, n);
                assert!(f.iter().all(|(p, _)| is_prime_u64(*p)));
            } else {
                assert!(f.is_empty());
            }
        }
    }

    #[test]
    fn sqrt_mod_p_all_residues() {
        for p in [3u64, 5, 7, 11, 13, 10007] {
            for x in 0..p.min(60) {
                let sq = mulmod(x, x, p);
                let r = sqrt_mod_p(sq, p).expect("square must have a root");
                assert_eq!(mulmod(r, r, p), sq);
            }
            // A non-residue has no root.
            let mut z = 2;
            while legendre(z as i64, p) != -1 {
                z += 1;
            }
            assert!(sqrt_mod_p(z, p).is_none());
        }
    }

    #[test]
    fn orders_divide_group_order() {
        for p in [3u64, 5, 7, 13, 101] {
            for u in 1..p.min(40) {
                let l = order_mod_p(u, p);
                assert_eq!(powmod(u, l, p), 1);
                assert_eq!((p - 1) % l, 0);
                for d in divisors_u64(l) {
                    if d < l {
                        assert_ne!(powmod(u, d, p), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn legendre_matches_euler() {
        assert_eq!(legendre(5, 3), -1);
        assert_eq!(legendre(7, 3), 1);
        assert_eq!(legendre(5, 5), 0);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(-1, 3), -1);
    }

    #[test]
    fn bigint_valuation_counts_powers() {
        assert_eq!(vp_bigint(&BigInt::from(63), 3), Some(2));
        assert_eq!(vp_bigint(&BigInt::from(-63), 3), Some(2));
        assert_eq!(vp_bigint(&BigInt::from(1), 3), Some(0));
        assert_eq!(vp_bigint(&BigInt::from(0), 3), None);
    }
}
