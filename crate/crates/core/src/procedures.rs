//! Extension and quotient of digraphs, tight extensions, and the extension coefficient.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::digraph::{AbelianGroup2, CayleyDigraph2, Element};
use crate::error::{Error, Result};
use crate::intmath::{ceil_sqrt3, ceil_sqrt_3nm2, crt, factorize, is_square, isqrt, lower_bound_diameter, mod_inverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub order: u64,
    pub lower_bound: u64,
    pub diameter: u64,
    pub k: u64,
}

impl TightnessReport {
    pub fn new(order: u64, diameter: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::OutOfRange("order must be positive".into()));
        }
        let lower_bound = lower_bound_diameter(order);
        let k = diameter.checked_sub(lower_bound).ok_or_else(|| {
            Error::OutOfRange(format!(
                "diameter {diameter} is below the lower bound {lower_bound} for order {order}"
            ))
        })?;
        Ok(TightnessReport {
            order,
            lower_bound,
            diameter,
            k,
        })
    }

    /// BFS diameter of `d`, measured against `lb(N)`.
    pub fn of(d: &CayleyDigraph2) -> Result<Self> {
        Self::new(d.order(), d.diameter()?)
    }
}

/// `m * d` over `Z_{m*s1} + Z_{m*s2}`.
///
/// The generators are lifted from `Z_s1 + Z_s2` so that they still generate the
/// larger group; any such lift has relation lattice `m` times the original one,
/// so the result has the `m`-scaled diagrams as MDDs and diameter
/// `m*(D(d) + 2) - 2`. Where the plain residues already generate they are kept.
pub fn extend(d: &CayleyDigraph2, m: u64) -> Result<CayleyDigraph2> {
    if m == 0 {
        return Err(Error::ZeroScale);
    }
    let g = d.group();
    let (s1, s2) = (g.s1(), g.s2());
    let big = AbelianGroup2::new(
        s1.checked_mul(m).ok_or(Error::Overflow("extend"))?,
        s2.checked_mul(m).ok_or(Error::Overflow("extend"))?,
    )?;
    let (a, b) = (d.a(), d.b());
    let det = a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128;

    // k[0], k[1]: multiples of s1, s2 added to a; k[2], k[3]: same for b.
    let mut k = [(0i128, 1i128); 4];
    for (p, _) in factorize(m) {
        let pi = p as i128;
        let local = lift_mod_p(pi, (s1 as i128, s2 as i128), (a, b), det);
        for i in 0..4 {
            let (r, md) = k[i];
            k[i] = crt(r, md, local[i], pi).expect("coprime moduli");
        }
    }
    let (s1i, s2i) = (s1 as i128, s2 as i128);
    let a_hat = big.reduce(a.x as i128 + k[0].0 * s1i, a.y as i128 + k[1].0 * s2i);
    let b_hat = big.reduce(b.x as i128 + k[2].0 * s1i, b.y as i128 + k[3].0 * s2i);
    CayleyDigraph2::new(big, a_hat, b_hat)
}

/// Offsets mod `p` making `det[a_hat b_hat]` a unit mod `p`.
fn lift_mod_p(p: i128, s: (i128, i128), gens: (Element, Element), det: i128) -> [i128; 4] {
    let mut k = [0i128; 4];
    if det % p != 0 {
        return k;
    }
    let (a, b) = gens;
    let (a1, a2, b1, b2) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128);
    // A coordinate is free to move mod p exactly when p does not divide its modulus.
    // With p | s1 (hence p | s2) generation already forces det != 0 mod p.
    let inv1 = mod_inverse(s.0, p).expect("p does not divide s1 here");
    if a2 % p != 0 || b2 % p != 0 {
        if b2 % p != 0 {
            k[0] = inv1;
        } else {
            k[2] = (-inv1).rem_euclid(p);
        }
        return k;
    }
    // a2 = b2 = 0 mod p, which generation only allows when p does not divide s2.
    let inv2 = mod_inverse(s.1, p).expect("p does not divide s2 here");
    if a1 % p != 0 {
        k[3] = inv2;
    } else if b1 % p != 0 {
        k[1] = (-inv2).rem_euclid(p);
    } else {
        k[0] = inv1;
        k[3] = inv2;
    }
    k
}

/// `d / m` over `Z_{s1/m} + Z_{s2/m}`, generators reduced; requires `m | s1`.
pub fn quotient(d: &CayleyDigraph2, m: u64) -> Result<CayleyDigraph2> {
    if m == 0 {
        return Err(Error::ZeroScale);
    }
    let g = d.group();
    if g.s1() % m != 0 {
        return Err(Error::Divisibility {
            what: "s1",
            divisor: m,
            value: g.s1(),
        });
    }
    let small = AbelianGroup2::new(g.s1() / m, g.s2() / m)?;
    let a = small.reduce(d.a().x as i128, d.a().y as i128);
    let b = small.reduce(d.b().x as i128, d.b().y as i128);
    CayleyDigraph2::new(small, a, b)
}

/// `m * ceil(sqrt(3N)) = ceil(m * sqrt(3N))`, in integers.
pub fn is_tight_extension(n: u64, m: u64) -> bool {
    let lhs = BigUint::from(ceil_sqrt3(n)) * BigUint::from(m);
    lhs == ceil_sqrt_3nm2(n, m)
}

/// True exactly for `N = 3t^2`.
pub fn has_infinite_tight_extensions(n: u64) -> bool {
    n % 3 == 0 && is_square((n / 3) as u128)
}

/// Largest `m` with `m * d` tight for every tight `d` of order `N`.
///
/// Scans `m = 1, 2, ...` up to the `6t + 3` bound and checks the scan against
/// `floor(1 / (c - sqrt(3N)))`.
pub fn extension_coefficient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange("N must be positive".into()));
    }
    if has_infinite_tight_extensions(n) {
        return Err(Error::InfiniteCoefficient {
            t: isqrt((n / 3) as u128) as u64,
        });
    }
    let (t, _, _) = interval_ceil(n);
    let bound = 6 * t + 3;
    let mut m = 1;
    while m < bound + 1 && is_tight_extension(n, m + 1) {
        m += 1;
    }
    let closed = coefficient_closed_form(n);
    if m > bound || closed != m {
        return Err(Error::OutOfRange(format!(
            "coefficient scan gave {m} but the closed form gives {closed} for N = {n}"
        )));
    }
    Ok(m)
}

/// `floor((c + sqrt(3N)) / (c^2 - 3N))`, which equals `floor(1 / (c - sqrt(3N)))`.
/// `sqrt(3N)` is irrational here, so its floor can stand in for it.
pub fn coefficient_closed_form(n: u64) -> u64 {
    let three_n = 3 * n as u128;
    let c = ceil_sqrt3(n) as u128;
    let delta = c * c - three_n;
    assert!(delta > 0, "3N must not be a square");
    ((c + isqrt(three_n)) / delta) as u64
}

/// Sub-interval of `J_t = [3t^2 + 1, 3(t+1)^2]` holding `N`, and `ceil(sqrt(3N))`.
///
/// `I_{t,1} = [3t^2+1, 3t^2+2t]`, `I_{t,2} = [3t^2+2t+1, 3t^2+4t+1]`,
/// `I_{t,3} = [3t^2+4t+2, 3(t+1)^2]`, with values `3t+1`, `3t+2`, `3t+3`.
pub fn interval_ceil(n: u64) -> (u64, u8, u64) {
    assert!(n >= 1, "interval index is defined for N >= 1");
    let t = isqrt(((n - 1) / 3) as u128) as u64;
    let base = 3 * t * t;
    let i = if n <= base + 2 * t {
        1
    } else if n <= base + 4 * t + 1 {
        2
    } else {
        3
    };
    (t, i, 3 * t + i as u64)
}

/// `(N_{t,i}, E_{t,i})`: the unique maximizer of `c` on `I_{t,i}` and the maximum.
pub fn max_coefficient(t: u64, i: u8) -> Result<(u64, u64)> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    let base = 3 * t * t;
    match i {
        1 => Ok((base + 2 * t, 6 * t + 1)),
        2 => Ok((base + 4 * t + 1, 6 * t + 3)),
        3 => Ok((base + 6 * t + 2, 2 * t + 1)),
        _ => Err(Error::OutOfRange(format!("sub-interval index {i} is not 1, 2 or 3"))),
    }
}
