//! 2-Cayley digraphs `Cay(Z_s1 + Z_s2, {a, b})` with arcs `g -> g + a` and `g -> g + b`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmath::{crt, ext_gcd, lower_bound_diameter};
use crate::lshape::LShape;
use crate::snf::{smith_normal_form, IntMatrix2};

/// Orders above this are refused by the BFS oracle unless the caller raises the cap.
pub const DEFAULT_BFS_CAP: u64 = 20_000_000;

/// `Z_s1 + Z_s2` in canonical form, `s1 | s2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup2 {
    s1: u64,
    s2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element {
    pub x: u64,
    pub y: u64,
}

impl Element {
    pub const ZERO: Element = Element { x: 0, y: 0 };
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl AbelianGroup2 {
    pub fn new(s1: u64, s2: u64) -> Result<Self> {
        if s1 == 0 || s2 == 0 {
            return Err(Error::InvalidGroup {
                s1,
                s2,
                reason: "invariant factors must be positive",
            });
        }
        if s2 % s1 != 0 {
            return Err(Error::InvalidGroup {
                s1,
                s2,
                reason: "s1 must divide s2",
            });
        }
        if s1.checked_mul(s2).is_none() {
            return Err(Error::InvalidGroup {
                s1,
                s2,
                reason: "order overflows",
            });
        }
        Ok(AbelianGroup2 { s1, s2 })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn s1(&self) -> u64 {
        self.s1
    }

    pub fn s2(&self) -> u64 {
        self.s2
    }

    pub fn order(&self) -> u64 {
        self.s1 * self.s2
    }

    pub fn is_cyclic(&self) -> bool {
        self.s1 == 1
    }

    /// Reduce arbitrary integer coordinates into canonical residues.
    pub fn reduce(&self, x: i128, y: i128) -> Element {
        Element {
            x: x.rem_euclid(self.s1 as i128) as u64,
            y: y.rem_euclid(self.s2 as i128) as u64,
        }
    }

    pub fn contains(&self, e: Element) -> bool {
        e.x < self.s1 && e.y < self.s2
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        self.reduce(a.x as i128 + b.x as i128, a.y as i128 + b.y as i128)
    }

    /// `k * e`.
    pub fn mul(&self, k: u64, e: Element) -> Element {
        Element {
            x: ((k as u128 * e.x as u128) % self.s1 as u128) as u64,
            y: ((k as u128 * e.y as u128) % self.s2 as u128) as u64,
        }
    }

    /// Additive order of `e`.
    pub fn element_order(&self, e: Element) -> u64 {
        let ox = self.s1 / e.x.gcd(&self.s1);
        let oy = self.s2 / e.y.gcd(&self.s2);
        ox.lcm(&oy)
    }

    pub fn index_of(&self, e: Element) -> usize {
        (e.x * self.s2 + e.y) as usize
    }

    pub fn element_at(&self, index: usize) -> Element {
        let i = index as u64;
        Element {
            x: i / self.s2,
            y: i % self.s2,
        }
    }
}

impl fmt::Display for AbelianGroup2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}+Z_{}", self.s1, self.s2)
    }
}

/// `Z_m + Z_n` rewritten as `Z_gcd + Z_lcm`, with the coordinate change between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCanonicalization {
    pub source: (u64, u64),
    pub group: AbelianGroup2,
    /// `(x, y) -> transform * (x, y)` reduced mod `(s1, s2)` is an isomorphism.
    pub transform: IntMatrix2,
}

impl GroupCanonicalization {
    pub fn convert(&self, x: i128, y: i128) -> Element {
        let [[a, b], [c, d]] = self.transform.0;
        self.group.reduce(
            a as i128 * x + b as i128 * y,
            c as i128 * x + d as i128 * y,
        )
    }
}

pub fn canonicalize_group(m: u64, n: u64) -> Result<GroupCanonicalization> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidGroup {
            s1: m,
            s2: n,
            reason: "cyclic factors must be positive",
        });
    }
    if n % m == 0 {
        return Ok(GroupCanonicalization {
            source: (m, n),
            group: AbelianGroup2::new(m, n)?,
            transform: IntMatrix2::identity(),
        });
    }
    let diag = IntMatrix2::new(m as i64, 0, 0, n as i64);
    let snf = smith_normal_form(&diag)?;
    Ok(GroupCanonicalization {
        source: (m, n),
        group: AbelianGroup2::new(snf.s1, snf.s2)?,
        transform: snf.u,
    })
}

/// A 2-Cayley digraph over a rank <= 2 Abelian group.
///
/// Construction checks that `a` and `b` are distinct, non-zero, and generate the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CayleyDigraph2 {
    group: AbelianGroup2,
    a: Element,
    b: Element,
}

impl fmt::Display for CayleyDigraph2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.is_cyclic() {
            write!(f, "Cay(Z_{},{{{},{}}})", self.group.s2, self.a.y, self.b.y)
        } else {
            write!(f, "Cay({},{{{},{}}})", self.group, self.a, self.b)
        }
    }
}

/// Distances from the identity, stored flat by `x * s2 + y`.
#[derive(Debug, Clone)]
pub struct DistanceMap {
    group: AbelianGroup2,
    dist: Vec<u32>,
}

impl DistanceMap {
    pub fn get(&self, e: Element) -> u32 {
        self.dist[self.group.index_of(e)]
    }

    pub fn max(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }
}

const UNSEEN: u32 = u32::MAX;

impl CayleyDigraph2 {
    pub fn new(group: AbelianGroup2, a: Element, b: Element) -> Result<Self> {
        if !group.contains(a) || !group.contains(b) {
            return Err(Error::DegenerateGenerators(format!(
                "{a} or {b} is not a reduced element of {group}"
            )));
        }
        if a == Element::ZERO || b == Element::ZERO {
            return Err(Error::DegenerateGenerators(format!(
                "generator is the identity in {group}: a={a}, b={b}"
            )));
        }
        if a == b {
            return Err(Error::DegenerateGenerators(format!(
                "generators coincide in {group}: a=b={a}"
            )));
        }
        let index = generated_index(group, a, b);
        if index != 1 {
            return Err(Error::NotGenerating {
                reached: group.order() / index,
                order: group.order(),
            });
        }
        Ok(CayleyDigraph2 { group, a, b })
    }

    /// Build from unreduced integer coordinates; negatives are allowed.
    pub fn from_coords(s1: u64, s2: u64, a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        let group = AbelianGroup2::new(s1, s2)?;
        let a = group.reduce(a.0 as i128, a.1 as i128);
        let b = group.reduce(b.0 as i128, b.1 as i128);
        Self::new(group, a, b)
    }

    /// `Cay(Z_n, {a, b})`.
    pub fn cyclic(n: u64, a: i64, b: i64) -> Result<Self> {
        Self::from_coords(1, n, (0, a), (0, b))
    }

    pub fn group(&self) -> AbelianGroup2 {
        self.group
    }

    pub fn a(&self) -> Element {
        self.a
    }

    pub fn b(&self) -> Element {
        self.b
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// `i*a + j*b` for signed `i`, `j`.
    pub fn combination(&self, i: i128, j: i128) -> Element {
        let g = self.group;
        let x = i * self.a.x as i128 + j * self.b.x as i128;
        let y = i * self.a.y as i128 + j * self.b.y as i128;
        g.reduce(x, y)
    }

    pub fn bfs_distances(&self) -> Result<DistanceMap> {
        self.bfs_distances_capped(DEFAULT_BFS_CAP)
    }

    pub fn bfs_distances_capped(&self, cap: u64) -> Result<DistanceMap> {
        let (dist, reached) = self.bfs(cap, u32::MAX)?;
        if reached != self.order() {
            return Err(Error::NotGenerating {
                reached,
                order: self.order(),
            });
        }
        Ok(DistanceMap {
            group: self.group,
            dist,
        })
    }

    /// Eccentricity of the identity, which is the diameter by vertex-transitivity.
    pub fn diameter(&self) -> Result<u64> {
        self.diameter_capped(DEFAULT_BFS_CAP)
    }

    pub fn diameter_capped(&self, cap: u64) -> Result<u64> {
        Ok(self.bfs_distances_capped(cap)?.max() as u64)
    }

    /// BFS that gives up once a vertex would sit farther than `limit`.
    /// `Ok(None)` means the diameter exceeds `limit`.
    pub fn diameter_at_most(&self, limit: u64, cap: u64) -> Result<Option<u64>> {
        let limit = limit.min(u32::MAX as u64 - 1) as u32;
        let (dist, reached) = self.bfs(cap, limit)?;
        if reached != self.order() {
            return Ok(None);
        }
        Ok(Some(dist.iter().copied().max().unwrap_or(0) as u64))
    }

    fn bfs(&self, cap: u64, limit: u32) -> Result<(Vec<u32>, u64)> {
        let n = self.order();
        if n > cap {
            return Err(Error::OrderCapExceeded { order: n, cap });
        }
        let (s1, s2) = (self.group.s1, self.group.s2);
        let mut dist = vec![UNSEEN; n as usize];
        let mut queue: Vec<u32> = Vec::with_capacity(n as usize);
        dist[0] = 0;
        queue.push(0);
        let mut head = 0;
        let gens = [self.a, self.b];
        while head < queue.len() {
            let idx = queue[head] as u64;
            head += 1;
            let d = dist[idx as usize];
            if d >= limit {
                continue;
            }
            let (x, y) = (idx / s2, idx % s2);
            for g in &gens {
                let mut nx = x + g.x;
                if nx >= s1 {
                    nx -= s1;
                }
                let mut ny = y + g.y;
                if ny >= s2 {
                    ny -= s2;
                }
                let j = (nx * s2 + ny) as usize;
                if dist[j] == UNSEEN {
                    dist[j] = d + 1;
                    queue.push(j as u32);
                }
            }
        }
        Ok((dist, queue.len() as u64))
    }

    /// Basis of the relation lattice `{(i, j) : i*a + j*b = 0}`, as the columns
    /// `(i0, -j0)` and `(0, ord(b))` with `i0 * ord(b) = N`.
    pub fn kernel_basis(&self) -> IntMatrix2 {
        let g = self.group;
        let ord_b = g.element_order(self.b);
        let i0 = g.order() / ord_b;
        let target = g.mul(i0, self.a);
        let j0 = discrete_log(g, self.b, target)
            .expect("i0 * a lies in <b> because <a, b> is the whole group");
        IntMatrix2::new(i0 as i64, 0, -(j0 as i64), ord_b as i64)
    }

    /// True when `i*a + j*b = 0`.
    pub fn is_relation(&self, i: i128, j: i128) -> bool {
        self.combination(i, j) == Element::ZERO
    }

    /// Same order and the same relation lattice: the map `a -> a'`, `b -> b'`
    /// extends to a group isomorphism, so the two digraphs are isomorphic.
    pub fn same_relations(&self, other: &CayleyDigraph2) -> bool {
        self.order() == other.order() && self.kernel_basis() == other.kernel_basis()
    }
}

impl std::str::FromStr for CayleyDigraph2 {
    type Err = Error;

    /// `"s1,s2;a1,a2;b1,b2"`, or `"N;a;b"` for a cyclic group. The group need not
    /// be canonical; `Z_m + Z_n` is rewritten as `Z_gcd + Z_lcm` with the
    /// generators carried across. Negative coordinates are reduced.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        let [group, a, b] = parts[..] else {
            return Err(Error::Parse(format!(
                "expected \"s1,s2;a1,a2;b1,b2\" or \"N;a;b\", got {s:?}"
            )));
        };
        let nums = |part: &str| -> Result<Vec<i64>> {
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("{x:?} in {s:?}: {e}")))
                })
                .collect()
        };
        let (g, a, b) = (nums(group)?, nums(a)?, nums(b)?);
        let (m, n, a, b) = match (&g[..], &a[..], &b[..]) {
            ([n], [a], [b]) => (1, *n, (0, *a), (0, *b)),
            ([m, n], [a1, a2], [b1, b2]) => (*m, *n, (*a1, *a2), (*b1, *b2)),
            _ => {
                return Err(Error::Parse(format!(
                    "group and generators of {s:?} must all have one or all have two coordinates"
                )))
            }
        };
        if m <= 0 || n <= 0 {
            return Err(Error::Parse(format!("group orders in {s:?} must be positive")));
        }
        let canon = canonicalize_group(m as u64, n as u64)?;
        let a = canon.convert(a.0 as i128, a.1 as i128);
        let b = canon.convert(b.0 as i128, b.1 as i128);
        CayleyDigraph2::new(canon.group, a, b)
    }
}

/// Index of `<a, b>` in the group: gcd of the 2x2 minors of `[a b s1e1 s2e2]`.
fn generated_index(g: AbelianGroup2, a: Element, b: Element) -> u64 {
    let (s1, s2) = (g.s1 as i128, g.s2 as i128);
    let (a1, a2, b1, b2) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128);
    let minors = [
        a1 * b2 - a2 * b1,
        a2 * s1,
        a1 * s2,
        b2 * s1,
        b1 * s2,
        s1 * s2,
    ];
    minors.iter().fold(0i128, |acc, m| acc.gcd(m)) as u64
}

/// Smallest `j >= 0` with `j * b = target`, if any.
fn discrete_log(g: AbelianGroup2, b: Element, target: Element) -> Option<u64> {
    let solve = |beta: u64, gamma: u64, s: u64| -> Option<(i128, i128)> {
        // j * beta = gamma (mod s)
        let d = beta.gcd(&s);
        if gamma % d != 0 {
            return None;
        }
        let modulus = (s / d) as i128;
        if modulus == 1 {
            return Some((0, 1));
        }
        let (_, inv, _) = ext_gcd((beta / d) as i128, modulus);
        Some((((gamma / d) as i128 * inv).rem_euclid(modulus), modulus))
    };
    let (r1, m1) = solve(b.x, target.x, g.s1)?;
    let (r2, m2) = solve(b.y, target.y, g.s2)?;
    crt(r1, m1, r2, m2).map(|(j, _)| j as u64)
}

/// Certificate: `L` is a minimum distance diagram of `d` when the
/// area is the order, `l*a = y*b`, `h*b = w*a`, and `L` is admissible.
pub fn is_mdd_for(shape: &LShape, d: &CayleyDigraph2) -> bool {
    let g = d.group();
    shape.area() == d.order()
        && shape.is_admissible()
        && g.mul(shape.l(), d.a()) == g.mul(shape.y(), d.b())
        && g.mul(shape.h(), d.b()) == g.mul(shape.w(), d.a())
}

/// Every minimum distance diagram of `d`, in lexicographic order.
///
/// Works on the relation lattice directly: the sides `(l, -y)` and `(-w, h)`
/// of an MDD form a basis of it, so each primitive lattice vector `(l, -y)`
/// fixes at most one candidate. No BFS is needed, so this runs for any order.
pub fn find_mdds(d: &CayleyDigraph2) -> Result<Vec<LShape>> {
    // Any MDD found under a bound has the true diameter, and then a search up
    // to that diameter sees all of them.
    let n = d.order();
    let mut bound = lower_bound_diameter(n).max(1);
    loop {
        if bound >= n {
            let out = find_mdds_bounded(d, None);
            if out.is_empty() {
                return Err(Error::NoDiagram(d.to_string()));
            }
            return Ok(out);
        }
        let out = find_mdds_bounded(d, Some(bound));
        if let Some(first) = out.first() {
            let diam = first.diameter()?;
            if diam <= bound {
                return Ok(out);
            }
            return Ok(find_mdds_bounded(d, Some(diam)));
        }
        bound *= 2;
    }
}

/// As [`find_mdds`], restricted to diagrams with `l - 1 <= max_diameter`
/// and `y < max_diameter + 1`; every diagram of `d` qualifies when
/// `max_diameter >= D(d)`.
pub fn find_mdds_bounded(d: &CayleyDigraph2, max_diameter: Option<u64>) -> Vec<LShape> {
    let n = d.order();
    let basis = d.kernel_basis();
    let [[i0, _], [neg_j0, ob]] = basis.0;
    let (i0, j0, ob) = (i0 as i128, -(neg_j0 as i128), ob as i128);
    let n_i = n as i128;
    let l_max = match max_diameter {
        Some(m) => (m as i128 + 1).min(n_i),
        None => n_i,
    };
    let mut out = Vec::new();
    let mut k: i128 = 1;
    while i0 * k <= l_max {
        let l = i0 * k;
        // y < h <= n + 1 - l
        let mut y_max = n_i - l;
        if let Some(m) = max_diameter {
            y_max = y_max.min(m as i128);
        }
        let mut y = (k * j0).rem_euclid(ob);
        while y <= y_max {
            // u = (l, -y) = k*(i0, -j0) + alpha2*(0, ob)
            let alpha2 = (k * j0 - y) / ob;
            if let Some(s) = complete_basis(l, y, k, alpha2, i0, j0, ob) {
                if s.area() == n && s.is_admissible() {
                    out.push(s);
                }
            }
            y += ob;
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// Given a primitive lattice vector `u = (l, -y)` with coefficients `(k, alpha2)`,
/// find the unique `v = (-w, h)` with `0 <= w < l` and `det[u v] = N`.
fn complete_basis(
    l: i128,
    y: i128,
    k: i128,
    alpha2: i128,
    i0: i128,
    j0: i128,
    ob: i128,
) -> Option<LShape> {
    let (g, x, z) = ext_gcd(k, alpha2);
    if g != 1 {
        return None;
    }
    // k*x + alpha2*z = 1, so beta = (-z, x) gives det[alpha beta] = 1.
    let (beta1, beta2) = (-z, x);
    let v0x = beta1 * i0;
    let v0y = -beta1 * j0 + beta2 * ob;
    let big_x = -v0x;
    let t = big_x.div_euclid(l);
    let w = big_x.rem_euclid(l);
    let h = v0y - t * y;
    if h <= y || h < 1 {
        return None;
    }
    LShape::new(l as u64, h as u64, w as u64, y as u64).ok()
}
