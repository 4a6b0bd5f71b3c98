//! Smith normal form of 2x2 integer matrices and the L-shape to digraph map.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::digraph::{AbelianGroup2, CayleyDigraph2, is_mdd_for};
use crate::error::{Error, Result};
use crate::lshape::LShape;

/// Row-major 2x2 integer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix2(pub [[i64; 2]; 2]);

impl IntMatrix2 {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2([[a, b], [c, d]])
    }

    pub const fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> i128 {
        let [[a, b], [c, d]] = self.0;
        a as i128 * d as i128 - b as i128 * c as i128
    }

    pub fn mul(&self, other: &IntMatrix2) -> Result<IntMatrix2> {
        let p = mul128(&widen(self), &widen(other));
        narrow(&p)
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// `U * M * V = diag(s1, s2)` with `U`, `V` unimodular, `s1 | s2`, `s1, s2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDecomposition {
    pub s1: u64,
    pub s2: u64,
    pub u: IntMatrix2,
    pub v: IntMatrix2,
}

/// `M_L = [[l, -w], [-y, h]]`; its columns are the tessellation vectors of `L`.
pub fn matrix_of(shape: &LShape) -> IntMatrix2 {
    let [l, h, w, y] = shape.sides();
    IntMatrix2::new(l as i64, -(w as i64), -(y as i64), h as i64)
}

type M128 = [[i128; 2]; 2];

fn widen(m: &IntMatrix2) -> M128 {
    m.0.map(|r| r.map(|x| x as i128))
}

fn narrow(m: &M128) -> Result<IntMatrix2> {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = i64::try_from(m[i][j]).map_err(|_| Error::Overflow("2x2 matrix entry"))?;
        }
    }
    Ok(IntMatrix2(out))
}

fn mul128(a: &M128, b: &M128) -> M128 {
    let mut out = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Euclidean reduction. Deterministic, so `smith_normal_form(k*M)` reuses the
/// transforms of `M`.
pub fn smith_normal_form(m: &IntMatrix2) -> Result<SnfDecomposition> {
    if m.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    let mut a = widen(m);
    let mut u: M128 = [[1, 0], [0, 1]];
    let mut v: M128 = [[1, 0], [0, 1]];

    loop {
        let mut pivot = (0, 0);
        let mut best = i128::MAX;
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let x = x.abs();
                if x != 0 && x < best {
                    best = x;
                    pivot = (i, j);
                }
            }
        }
        if pivot.0 == 1 {
            a.swap(0, 1);
            u.swap(0, 1);
        }
        if pivot.1 == 1 {
            for r in 0..2 {
                a[r].swap(0, 1);
                v[r].swap(0, 1);
            }
        }

        let q = a[1][0] / a[0][0];
        if q != 0 {
            for j in 0..2 {
                a[1][j] -= q * a[0][j];
                u[1][j] -= q * u[0][j];
            }
        }
        if a[1][0] != 0 {
            continue;
        }
        let q = a[0][1] / a[0][0];
        if q != 0 {
            for r in 0..2 {
                a[r][1] -= q * a[r][0];
                v[r][1] -= q * v[r][0];
            }
        }
        if a[0][1] != 0 {
            continue;
        }
        if a[1][1] % a[0][0] != 0 {
            for j in 0..2 {
                a[0][j] += a[1][j];
                u[0][j] += u[1][j];
            }
            continue;
        }
        break;
    }

    for c in 0..2 {
        if a[c][c] < 0 {
            for r in 0..2 {
                a[r][c] = -a[r][c];
                v[r][c] = -v[r][c];
            }
        }
    }
    let s1 = u64::try_from(a[0][0]).map_err(|_| Error::Overflow("invariant factor"))?;
    let s2 = u64::try_from(a[1][1]).map_err(|_| Error::Overflow("invariant factor"))?;
    Ok(SnfDecomposition {
        s1,
        s2,
        u: narrow(&u)?,
        v: narrow(&v)?,
    })
}

/// The unique (up to isomorphism) 2-Cayley digraph having `shape` as a minimum
/// distance diagram: `Cay(Z_s1 + Z_s2, {a, b})` with `a`, `b` the columns of `U`.
///
/// Fails when `a` or `b` reduces to zero or `a = b`, since such a shape does not
/// tessellate a 2-generated digraph with two distinct arcs.
pub fn digraph_of(shape: &LShape) -> Result<CayleyDigraph2> {
    if !shape.is_admissible() {
        return Err(Error::NotAdmissible(*shape));
    }
    let snf = smith_normal_form(&matrix_of(shape))?;
    let group = AbelianGroup2::new(snf.s1, snf.s2)?;
    let [[u11, u12], [u21, u22]] = snf.u.0;
    let a = group.reduce(u11 as i128, u21 as i128);
    let b = group.reduce(u12 as i128, u22 as i128);
    let d = CayleyDigraph2::new(group, a, b)?;
    debug_assert!(is_mdd_for(shape, &d));
    Ok(d)
}

/// Quick membership test for the lattice spanned by the columns of `M_L`:
/// `(x, z)` is in it when `N | h*x + w*z` and `N | y*x + l*z`.
pub fn in_shape_lattice(shape: &LShape, x: i128, z: i128) -> bool {
    let [l, h, w, y] = shape.sides();
    let n = shape.area() as i128;
    (h as i128 * x + w as i128 * z).is_multiple_of(&n) && (y as i128 * x + l as i128 * z).is_multiple_of(&n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmath::gcd_many;
    use crate::lshape::enumerate_lshapes;
    use proptest::prelude::*;

    fn ls(l: u64, h: u64, w: u64, y: u64) -> LShape {
        LShape::new(l, h, w, y).unwrap()
    }

    fn check(m: &IntMatrix2, s: &SnfDecomposition) {
        let prod = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, IntMatrix2::new(s.s1 as i64, 0, 0, s.s2 as i64), "{m}");
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
        assert_eq!(s.s2 % s.s1, 0);
        assert_eq!((s.s1 as i128) * (s.s2 as i128), m.det().abs());
    }

    #[test]
    fn snf_examples() {
        let m = matrix_of(&ls(8, 8, 4, 4));
        let s = smith_normal_form(&m).unwrap();
        assert_eq!((s.s1, s.s2), (4, 12));
        check(&m, &s);

        let s = smith_normal_form(&matrix_of(&ls(5, 4, 2, 2))).unwrap();
        assert_eq!((s.s1, s.s2), (1, 16));
        let s = smith_normal_form(&matrix_of(&ls(4, 4, 2, 2))).unwrap();
        assert_eq!((s.s1, s.s2), (2, 6));
        let s = smith_normal_form(&matrix_of(&ls(4, 3, 1, 1))).unwrap();
        assert_eq!((s.s1, s.s2), (1, 11));
        let s = smith_normal_form(&matrix_of(&ls(6, 6, 1, 1))).unwrap();
        assert_eq!((s.s1, s.s2), (1, 35));
        assert_eq!(smith_normal_form(&IntMatrix2::new(2, 4, 1, 2)), Err(Error::SingularMatrix));
    }

    #[test]
    fn digraph_of_examples() {
        let d = digraph_of(&ls(5, 4, 2, 2)).unwrap();
        assert_eq!(d.order(), 16);
        assert!(d.group().is_cyclic());
        assert_eq!(d.diameter().unwrap(), 5);

        let d = digraph_of(&ls(4, 4, 2, 2)).unwrap();
        assert_eq!((d.group().s1(), d.group().s2()), (2, 6));
        assert_eq!(d.diameter().unwrap(), 4);

        let d = digraph_of(&ls(8, 8, 4, 4)).unwrap();
        assert_eq!((d.group().s1(), d.group().s2()), (4, 12));
        assert_eq!(d.diameter().unwrap(), 10);
        // isomorphic to the listed Cay(Z4+Z12, {(0,1),(3,2)})
        let listed = CayleyDigraph2::from_coords(4, 12, (0, 1), (3, 2)).unwrap();
        assert!(d.same_relations(&listed));
    }

    #[test]
    fn degenerate_shapes_rejected() {
        // L(2,1,0,0): b would be -a... area 2, l=2, h=1 gives b = 0 in Z_2
        assert!(digraph_of(&ls(2, 1, 0, 0)).is_err());
        assert!(digraph_of(&ls(1, 1, 0, 0)).is_err());
    }

    #[test]
    fn cyclic_iff_gcd_one() {
        for n in 2..=200u64 {
            for s in enumerate_lshapes(n, None) {
                let snf = smith_normal_form(&matrix_of(&s)).unwrap();
                let g = gcd_many(&[s.l(), s.h(), s.w(), s.y()]);
                assert_eq!(snf.s1, g, "{s}");
                assert_eq!(snf.s1 == 1, g == 1);
            }
        }
    }

    #[test]
    fn digraph_of_is_certified_by_bfs() {
        let mut checked = 0;
        for n in 3..=500u64 {
            for s in enumerate_lshapes(n, None) {
                let Ok(d) = digraph_of(&s) else {
                    continue;
                };
                assert!(is_mdd_for(&s, &d), "{s}");
                assert_eq!(d.diameter().unwrap(), s.diameter().unwrap(), "{s} -> {d}");
                checked += 1;
            }
        }
        assert!(checked > 10_000);
    }

    #[test]
    fn lattice_membership_matches_columns() {
        let s = ls(7, 5, 3, 2);
        assert!(in_shape_lattice(&s, 7, -2));
        assert!(in_shape_lattice(&s, -3, 5));
        assert!(in_shape_lattice(&s, 4, 3));
        assert!(!in_shape_lattice(&s, 1, 0));
    }

    #[test]
    fn scaling_commutes_with_snf() {
        for s in [ls(5, 4, 2, 2), ls(7, 5, 3, 2), ls(4, 3, 1, 1)] {
            let base = smith_normal_form(&matrix_of(&s)).unwrap();
            for m in 1..6u64 {
                let big = smith_normal_form(&matrix_of(&s.scale(m).unwrap())).unwrap();
                assert_eq!((big.s1, big.s2), (m * base.s1, m * base.s2));
                assert_eq!(big.u, base.u);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn snf_invariants(a in -50i64..=50, b in -50i64..=50, c in -50i64..=50, d in -50i64..=50) {
            let m = IntMatrix2::new(a, b, c, d);
            prop_assume!(m.det() != 0);
            let s = smith_normal_form(&m).unwrap();
            check(&m, &s);
            prop_assert_eq!(s.s1, gcd_many(&[a.unsigned_abs(), b.unsigned_abs(), c.unsigned_abs(), d.unsigned_abs()]));
        }
    }
}
