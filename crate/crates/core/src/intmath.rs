//! Exact integer arithmetic.
//!
//! Every square root in this crate goes through here. Nothing touches
//! floating point: the extension coefficient depends on whether
//! `m*ceil(sqrt(3N)) - sqrt(3N*m^2)` crosses 1, and that can sit below one ulp
//! for large `N`.

use num_bigint::BigUint;
use num_integer::Integer;

/// `floor(sqrt(n))` by Newton iteration from an initial guess above the root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // 2^ceil(bits/2) >= sqrt(n), so the iteration decreases monotonically.
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `ceil(sqrt(n))`.
pub fn ceil_sqrt(n: u128) -> u128 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

pub fn isqrt_big(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn ceil_sqrt_big(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1u32
    }
}

pub fn is_square(n: u128) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// `ceil(sqrt(3n))` for any `u64`.
pub fn ceil_sqrt3(n: u64) -> u64 {
    // 3 * u64::MAX fits comfortably in u128 and its root in u64.
    ceil_sqrt(3 * n as u128) as u64
}

/// The diameter lower bound `lb(N) = ceil(sqrt(3N)) - 2` for 2-Cayley digraphs of order `N >= 1`.
pub fn lower_bound_diameter(n: u64) -> u64 {
    assert!(n >= 1, "lower bound is defined for N >= 1");
    ceil_sqrt3(n) - 2
}

/// gcd of a list, with `gcd(0, x) = x`. An empty list gives 0.
pub fn gcd_many(values: &[u64]) -> u64 {
    values.iter().fold(0u64, |acc, &v| acc.gcd(&v))
}

/// `ceil(sqrt(3 * n * m^2))`, falling back to big integers when the product
/// leaves `u128`.
pub fn ceil_sqrt_3nm2(n: u64, m: u64) -> BigUint {
    let small = (3u128)
        .checked_mul(n as u128)
        .and_then(|x| x.checked_mul(m as u128))
        .and_then(|x| x.checked_mul(m as u128));
    match small {
        Some(v) => BigUint::from(ceil_sqrt(v)),
        None => {
            let v = BigUint::from(3u32) * BigUint::from(n) * BigUint::from(m) * BigUint::from(m);
            ceil_sqrt_big(&v)
        }
    }
}

/// Prime factorization by trial division, ascending primes with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True when no square of a prime divides `n`.
pub fn is_square_free(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// All `m >= 1` with `m^2 | n`, in descending order.
pub fn square_divisors_desc(n: u64) -> Vec<u64> {
    let mut ms = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(ms.len() * (e as usize / 2 + 1));
        for &m in &ms {
            let mut pk = 1u64;
            for _ in 0..=e / 2 {
                next.push(m * pk);
                pk *= p;
            }
        }
        ms = next;
    }
    ms.sort_unstable_by(|a, b| b.cmp(a));
    ms
}

/// Extended Euclid on signed values: `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Modular inverse of `a` mod `m` (`m >= 1`), if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// Solve `x = r1 (mod m1)`, `x = r2 (mod m2)` for arbitrary moduli.
/// Returns `(x, lcm)` with `0 <= x < lcm`, or `None` when inconsistent.
pub fn crt(r1: i128, m1: i128, r2: i128, m2: i128) -> Option<(i128, i128)> {
    let (g, p, _) = ext_gcd(m1, m2);
    let diff = r2 - r1;
    if diff % g != 0 {
        return None;
    }
    let lcm = m1 / g * m2;
    let step = (diff / g).rem_euclid(m2 / g) * p.rem_euclid(m2 / g) % (m2 / g);
    Some(((r1 + m1 * step).rem_euclid(lcm), lcm))
}
