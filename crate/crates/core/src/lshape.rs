//! L-shaped tiles `L(l, h, w, y)`: an `l x h` rectangle with a `w x y` notch
//! removed from its upper-right corner.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmath::{gcd_many, lower_bound_diameter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLShape", into = "RawLShape")]
pub struct LShape {
    l: u64,
    h: u64,
    w: u64,
    y: u64,
}

#[derive(Serialize, Deserialize)]
struct RawLShape {
    l: u64,
    h: u64,
    w: u64,
    y: u64,
}

impl TryFrom<RawLShape> for LShape {
    type Error = Error;

    fn try_from(r: RawLShape) -> Result<Self> {
        LShape::new(r.l, r.h, r.w, r.y)
    }
}

impl From<LShape> for RawLShape {
    fn from(s: LShape) -> Self {
        RawLShape {
            l: s.l,
            h: s.h,
            w: s.w,
            y: s.y,
        }
    }
}

/// Translation vectors `u = (l, -y)` and `v = (-w, h)` of the plane tessellation by an L-shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TessellationVectors {
    pub u: (i64, i64),
    pub v: (i64, i64),
}

impl TessellationVectors {
    pub fn determinant(&self) -> i128 {
        self.u.0 as i128 * self.v.1 as i128 - self.u.1 as i128 * self.v.0 as i128
    }
}

impl LShape {
    /// Checks the side conventions `0 <= w < l`, `0 <= y < h`. Admissibility
    /// is a separate question, see [`LShape::is_admissible`].
    pub fn new(l: u64, h: u64, w: u64, y: u64) -> Result<Self> {
        let bad = |reason| Err(Error::InvalidLShape { l, h, w, y, reason });
        if l == 0 || h == 0 {
            return bad("sides l and h must be positive");
        }
        if w >= l {
            return bad("notch width w must be < l");
        }
        if y >= h {
            return bad("notch height y must be < h");
        }
        if l.checked_mul(h).is_none() || (l as u128 * h as u128) > i64::MAX as u128 {
            return bad("area overflows");
        }
        Ok(LShape { l, h, w, y })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn w(&self) -> u64 {
        self.w
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn sides(&self) -> [u64; 4] {
        [self.l, self.h, self.w, self.y]
    }

    /// `lh - wy`; always >= 1 under the side conventions.
    pub fn area(&self) -> u64 {
        self.l * self.h - self.w * self.y
    }

    /// `(l-y)(h-w) >= 0` and the two factors do not both vanish.
    pub fn is_admissible(&self) -> bool {
        let a = self.l as i128 - self.y as i128;
        let b = self.h as i128 - self.w as i128;
        a * b >= 0 && !(a == 0 && b == 0)
    }

    fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(*self))
        }
    }

    /// `l + h - min(w, y) - 2`.
    pub fn diameter(&self) -> Result<u64> {
        self.require_admissible()?;
        Ok(self.diameter_unchecked())
    }

    #[inline]
    pub(crate) fn diameter_unchecked(&self) -> u64 {
        self.l + self.h - self.w.min(self.y) - 2
    }

    /// Distances from the origin cell to the corner cells
    /// `p = [l-1, h-y-1]` and `q = [l-w-1, h-1]`.
    pub fn corner_distances(&self) -> Result<(u64, u64)> {
        self.require_admissible()?;
        Ok((
            (self.l - 1) + (self.h - self.y - 1),
            (self.l - self.w - 1) + (self.h - 1),
        ))
    }

    /// `diameter - lb(area)`.
    pub fn tightness(&self) -> Result<u64> {
        let d = self.diameter()?;
        let lb = lower_bound_diameter(self.area());
        debug_assert!(d >= lb);
        Ok(d - lb)
    }

    pub fn gcd(&self) -> u64 {
        gcd_many(&self.sides())
    }

    /// `mL = L(ml, mh, mw, my)`.
    pub fn scale(&self, m: u64) -> Result<LShape> {
        if m == 0 {
            return Err(Error::ZeroScale);
        }
        self.require_admissible()?;
        let mul = |x: u64| x.checked_mul(m).ok_or(Error::Overflow("L-shape scaling"));
        LShape::new(mul(self.l)?, mul(self.h)?, mul(self.w)?, mul(self.y)?)
    }

    /// `L/m`, defined when `m` divides `gcd(l, h, w, y)`.
    pub fn divide(&self, m: u64) -> Result<LShape> {
        if m == 0 {
            return Err(Error::ZeroScale);
        }
        let g = self.gcd();
        if g % m != 0 {
            return Err(Error::Divisibility {
                what: "gcd(l,h,w,y)",
                divisor: m,
                value: g,
            });
        }
        self.require_admissible()?;
        LShape::new(self.l / m, self.h / m, self.w / m, self.y / m)
    }

    pub fn tessellation_vectors(&self) -> TessellationVectors {
        TessellationVectors {
            u: (self.l as i64, -(self.y as i64)),
            v: (-(self.w as i64), self.h as i64),
        }
    }
}

impl fmt::Display for LShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{},{},{})", self.l, self.h, self.w, self.y)
    }
}

impl std::str::FromStr for LShape {
    type Err = Error;

    /// `"l,h,w,y"` or `"L(l,h,w,y)"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix("L(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let v: Vec<u64> = inner
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        match v[..] {
            [l, h, w, y] => LShape::new(l, h, w, y),
            _ => Err(Error::Parse(format!("expected four sides l,h,w,y, got {s:?}"))),
        }
    }
}

/// Every admissible L-shape of area `n`, in lexicographic order of `(l, h, w, y)`.
///
/// With `max_diameter = Some(d)` only shapes of diameter `<= d` are produced and
/// the search box shrinks to `l, h <= d + 2`, since `l - 1` and `h - 1` never
/// exceed the diameter.
pub fn enumerate_lshapes(n: u64, max_diameter: Option<u64>) -> LShapeIter {
    assert!(n >= 1, "area must be positive");
    let l_max = match max_diameter {
        Some(d) => (d + 2).min(n),
        None => n,
    };
    LShapeIter {
        n,
        max_diameter,
        l_max,
        l: 1,
        h: 0,
        h_max: 0,
        pending: Vec::new(),
        done: false,
    }
}

/// Iterator returned by [`enumerate_lshapes`].
#[derive(Debug, Clone)]
pub struct LShapeIter {
    n: u64,
    max_diameter: Option<u64>,
    l_max: u64,
    l: u64,
    h: u64,
    h_max: u64,
    // Candidates for the current (l, h), stored reversed so `pop` yields ascending order.
    pending: Vec<(u64, u64)>,
    done: bool,
}

impl LShapeIter {
    fn start_row(&mut self) {
        let n = self.n;
        let l = self.l;
        // l + h <= n + 1 holds for any L-shape of area n.
        let mut h_max = n + 1 - l;
        if let Some(d) = self.max_diameter {
            h_max = h_max.min(d + 2);
        }
        self.h = n.div_ceil(l).max(1);
        self.h_max = h_max;
    }

    fn fill_pending(&mut self) {
        let (n, l, h) = (self.n, self.l, self.h);
        let p = l * h - n;
        // min(w, y) >= floor so that the diameter bound holds
        let floor = match self.max_diameter {
            Some(d) => (l + h).saturating_sub(d + 2),
            None => 0,
        };
        self.pending.clear();
        if p == 0 {
            if floor == 0 {
                for y in 0..h {
                    self.pending.push((0, y));
                }
                for w in 1..l {
                    self.pending.push((w, 0));
                }
            }
        } else {
            let lo = floor.max(1);
            // y = p / w >= lo  =>  w <= p / lo
            let hi = (l - 1).min(p / lo);
            let mut w = lo.max(p.div_ceil(h.saturating_sub(1).max(1)));
            while w <= hi {
                if p % w == 0 {
                    let y = p / w;
                    if y < h && y >= floor {
                        self.pending.push((w, y));
                    }
                }
                w += 1;
            }
        }
        self.pending.reverse();
    }
}

impl Iterator for LShapeIter {
    type Item = LShape;

    fn next(&mut self) -> Option<LShape> {
        loop {
            if let Some((w, y)) = self.pending.pop() {
                let s = LShape {
                    l: self.l,
                    h: self.h,
                    w,
                    y,
                };
                if !s.is_admissible() {
                    continue;
                }
                if let Some(d) = self.max_diameter {
                    if s.diameter_unchecked() > d {
                        continue;
                    }
                }
                return Some(s);
            }
            if self.done {
                return None;
            }
            // advance (l, h)
            if self.h == 0 {
                if self.l > self.l_max {
                    self.done = true;
                    continue;
                }
                self.start_row();
            } else {
                self.h += 1;
            }
            if self.h > self.h_max {
                self.l += 1;
                self.h = 0;
                continue;
            }
            self.fill_pending();
        }
    }
}
