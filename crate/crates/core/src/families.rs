//! Closed-form digraph families: infinitely tight-extendable digraphs, maximal
//! coefficient double loops and their extensions, 2-extensions of known tight
//! double loops, and the symbolic quotient-extension improvements.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::{find_mdds, is_mdd_for, CayleyDigraph2};
use crate::error::{Error, Result};
use crate::lshape::LShape;
use crate::procedures::{max_coefficient, TightnessReport};
use crate::search::ImprovementRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    InfiniteTight,
    MaxCoeff1,
    MaxCoeff2,
    MaxCoeff3,
    Dl1,
    Dl2,
    Dl3,
    QeAOdd,
    QeAEven,
    QeB,
    QeC,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::InfiniteTight,
        FamilyId::MaxCoeff1,
        FamilyId::MaxCoeff2,
        FamilyId::MaxCoeff3,
        FamilyId::Dl1,
        FamilyId::Dl2,
        FamilyId::Dl3,
        FamilyId::QeAOdd,
        FamilyId::QeAEven,
        FamilyId::QeB,
        FamilyId::QeC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::InfiniteTight => "infinite-tight",
            FamilyId::MaxCoeff1 => "max-coeff1",
            FamilyId::MaxCoeff2 => "max-coeff2",
            FamilyId::MaxCoeff3 => "max-coeff3",
            FamilyId::Dl1 => "dl1",
            FamilyId::Dl2 => "dl2",
            FamilyId::Dl3 => "dl3",
            FamilyId::QeAOdd => "qe-a-odd",
            FamilyId::QeAEven => "qe-a-even",
            FamilyId::QeB => "qe-b",
            FamilyId::QeC => "qe-c",
        }
    }

    pub fn is_improvement(self) -> bool {
        matches!(
            self,
            FamilyId::QeAOdd | FamilyId::QeAEven | FamilyId::QeB | FamilyId::QeC
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = FamilyId::ALL.iter().map(|id| id.name()).collect();
                Error::Parse(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// A digraph with a certified MDD and the tightness read off that MDD.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub digraph: CayleyDigraph2,
    pub mdd: LShape,
    pub report: TightnessReport,
}

impl FamilyMember {
    /// Checks the MDD congruences; the diameter then comes from the shape.
    fn certified(digraph: CayleyDigraph2, mdd: LShape) -> Result<Self> {
        if !is_mdd_for(&mdd, &digraph) {
            return Err(Error::NoDiagram(format!("{mdd} is not an MDD of {digraph}")));
        }
        let report = TightnessReport::new(digraph.order(), mdd.diameter()?)?;
        Ok(FamilyMember {
            digraph,
            mdd,
            report,
        })
    }

    /// Takes the lexicographically first MDD found from the relation lattice.
    fn searched(digraph: CayleyDigraph2) -> Result<Self> {
        let mdd = find_mdds(&digraph)?[0];
        Self::certified(digraph, mdd)
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::OutOfRange(msg()))
    }
}

fn i(v: u64) -> i64 {
    v as i64
}

/// `Cay(Z_t + Z_3t, {(1,-1), (0,1)})` of order `3t^2` with MDD `L(2t,2t,t,t)`.
pub fn gamma_infinite(t: u64) -> Result<FamilyMember> {
    require(t >= 1, || format!("t must be at least 1, got {t}"))?;
    let d = CayleyDigraph2::from_coords(t, 3 * t, (1, -1), (0, 1))?;
    FamilyMember::certified(d, LShape::new(2 * t, 2 * t, t, t)?)
}

/// The double loop of order `N_{t,i}` whose extensions stay tight up to `E_{t,i}`.
pub fn gamma_max_coeff(t: u64, idx: u8) -> Result<FamilyMember> {
    let (n, _) = max_coefficient(t, idx)?;
    let (a, b, mdd) = match idx {
        1 => (t, 2 * t + 1, LShape::new(2 * t + 1, 2 * t, t, t)?),
        2 => (t, 2 * t + 1, LShape::new(2 * t + 1, 2 * t + 1, t, t)?),
        _ => (2 * t + 1, t, LShape::new(2 * t + 2, 2 * t + 1, t, t)?),
    };
    let d = CayleyDigraph2::cyclic(n, i(a), i(b))?;
    FamilyMember::certified(d, mdd)
}

/// `Cay(Z_m + Z_{m N_{t,i}}, {(1,t),(2,2t+1)})`, generators swapped for `i = 3`,
/// for `2 <= m <= E_{t,i}`.
pub fn extended_family(t: u64, idx: u8, m: u64) -> Result<FamilyMember> {
    let (n, e) = max_coefficient(t, idx)?;
    require((2..=e).contains(&m), || {
        format!("m = {m} is outside the tight range 2..={e} for t = {t}, i = {idx}")
    })?;
    let base = gamma_max_coeff(t, idx)?;
    let (p, q) = ((1, i(t)), (2, i(2 * t + 1)));
    let (a, b) = if idx == 3 { (q, p) } else { (p, q) };
    let d = CayleyDigraph2::from_coords(m, m * n, a, b)?;
    FamilyMember::certified(d, base.mdd.scale(m)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Member {
    pub base: FamilyMember,
    pub extension: FamilyMember,
}

/// Tight double loop `G_{i,t}` and its 2-extension over `Z_2 + Z_{2N}`.
///
/// Every base has `c(N) = 1`, so the extensions come out 1-tight.
pub fn table2_family(idx: u8, t: u64) -> Result<Table2Member> {
    require(t >= 1, || format!("t must be at least 1, got {t}"))?;
    let t_ = i(t);
    let (n, base_gens, ext_gens) = match idx {
        1 => (
            12 * t * t + 1,
            (-6 * t_ + 1, 2),
            ((3 * t_, -6 * t_ + 1), (-1, 2)),
        ),
        2 => (3 * t * t + 2 * t + 1, (-3 * t_, 1), ((1, -3 * t_), (0, 1))),
        3 => (
            3 * t * t + 4 * t + 2,
            (-3 * t_ - 2, 1),
            ((1, -3 * t_ - 2), (0, 1)),
        ),
        _ => return Err(Error::OutOfRange(format!("row {idx} is not 1, 2 or 3"))),
    };
    let base = FamilyMember::searched(CayleyDigraph2::cyclic(n, base_gens.0, base_gens.1)?)?;
    let ext = CayleyDigraph2::from_coords(2, 2 * n, ext_gens.0, ext_gens.1)?;
    let extension = FamilyMember::certified(ext, base.mdd.scale(2)?)?;
    Ok(Table2Member { base, extension })
}

/// Symbolic improvement rows. `param` is `lambda` for the odd/even rows, `e`
/// for the second row and `t` for the third.
pub fn table4_family(id: FamilyId, param: u64) -> Result<ImprovementRecord> {
    let p = i(param);
    let (original, improved, m, given_mdd) = match id {
        FamilyId::QeAOdd => {
            let e = 2 * param + 1;
            let t = 2 * e + 5;
            let orig = CayleyDigraph2::cyclic(3 * t * t + 2 * t - 5, 1, i(3 * t - 2))?;
            let imp = CayleyDigraph2::from_coords(
                2,
                6 * e * e + 32 * e + 40,
                (1, -6 * p * p - 25 * p - 24),
                (0, 1),
            )?;
            let h = LShape::new(2 * e + 6, 2 * e + 4, e + 2, e + 2)?;
            (orig, imp, 2, Some(h))
        }
        FamilyId::QeAEven => {
            require(param >= 1, || "lambda must be at least 1 for even e".into())?;
            let e = 2 * param;
            let t = 2 * e + 5;
            let orig = CayleyDigraph2::cyclic(3 * t * t + 2 * t - 5, 1, i(3 * t - 2))?;
            let imp = CayleyDigraph2::from_coords(
                4,
                12 * param * param + 32 * param + 20,
                (1, -p - 1),
                (-1, p + 2),
            )?;
            let h = LShape::new(4 * param + 6, 4 * param + 4, 2 * param + 2, 2 * param + 2)?;
            (orig, imp, 2, Some(h))
        }
        FamilyId::QeB => {
            require(param >= 1, || "e must be at least 1".into())?;
            let e = param;
            let t = 2 * e;
            let orig = CayleyDigraph2::cyclic(3 * t * t + 4 * t, 1, i(6 * e))?;
            let imp = CayleyDigraph2::from_coords(2, 6 * e * e + 4 * e, (1, i(3 * e + 1)), (0, 1))?;
            (orig, imp, 2, None)
        }
        FamilyId::QeC => {
            require(param >= 1, || "t must be at least 1".into())?;
            let t = param;
            let orig = CayleyDigraph2::cyclic(3 * t * t + 6 * t + 3, 1, i(3 * t + 5))?;
            let g = gamma_infinite(t + 1)?;
            (orig, g.digraph, 1, Some(g.mdd.divide(1)?))
        }
        other => {
            return Err(Error::OutOfRange(format!(
                "{other} is not a symbolic improvement row"
            )))
        }
    };
    if original.order() != improved.order() {
        return Err(Error::OutOfRange(format!(
            "{id} at {param}: original order {} differs from improved order {}",
            original.order(),
            improved.order()
        )));
    }
    let before = FamilyMember::searched(original)?;
    let after = match given_mdd {
        Some(h) => FamilyMember::certified(improved, h.scale(m)?)?,
        None => FamilyMember::searched(improved)?,
    };
    let intermediate = after.mdd.divide(m)?;
    Ok(ImprovementRecord {
        original: Some(original),
        original_report: before.report,
        m,
        intermediate_area: intermediate.area(),
        intermediate,
        improved,
        improved_mdd: after.mdd,
        improved_report: after.report,
    })
}

/// Largest order of a 2-Cayley digraph of diameter `k`: `floor((k+2)^2 / 3)`.
pub fn ac_bound(k: u64) -> u64 {
    (k + 2) * (k + 2) / 3
}
