//! Integer set functions on vertex subsets, their structural properties, and the
//! derived functions used by the packing pipelines.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet, MAX_SET_VERTICES};

pub type Rational = Ratio<i64>;

/// Largest ground set for explicit tables and exhaustive property checks.
pub const MAX_TABLE_GROUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverrideTarget {
    /// The whole vertex set of whatever graph the function is applied to.
    Full,
    Set(VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Override {
    pub target: OverrideTarget,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetFunc {
    /// `m` on singletons, `n` on sets with at least two vertices.
    Lmn { m: i64, n: i64 },
    /// `c` on every nonempty set.
    Constant { c: i64 },
    /// Explicit values indexed by subset bitmask over a ground set of size `ground`.
    Table { ground: usize, values: Vec<i64> },
    /// A base function with finitely many values replaced.
    Modified { base: Box<SetFunc>, overrides: Vec<Override> },
    /// Per-vertex singleton values with `larger` supplying the values on sets of size at least two.
    PerVertex { singles: Vec<i64>, larger: Box<SetFunc> },
    /// Pointwise multiple of a base function.
    Scaled { factor: i64, base: Box<SetFunc> },
    /// `base(A) - sum_{v in A} r(v)`.
    Rooted { base: Box<SetFunc>, r: Vec<i64> },
}

impl SetFunc {
    pub fn lmn(m: i64, n: i64) -> Self {
        SetFunc::Lmn { m, n }
    }

    /// `l_{k,2k-1}`, the function behind `k`-rigidity.
    pub fn k_rigid(k: i64) -> Self {
        SetFunc::Lmn { m: k, n: 2 * k - 1 }
    }

    pub fn constant(c: i64) -> Self {
        SetFunc::Constant { c }
    }

    pub fn zero() -> Self {
        SetFunc::Constant { c: 0 }
    }

    pub fn table(ground: usize, values: Vec<i64>) -> Result<Self> {
        if ground > MAX_TABLE_GROUND {
            return Err(Error::TooLarge { what: "table set function", n: ground, limit: MAX_TABLE_GROUND });
        }
        if values.len() != 1usize << ground {
            return Err(Error::InvalidSetFunc(format!(
                "table over {ground} vertices needs {} values, got {}",
                1usize << ground,
                values.len()
            )));
        }
        if values[0] != 0 {
            return Err(Error::InvalidSetFunc("value on the empty set must be 0".into()));
        }
        Ok(SetFunc::Table { ground, values })
    }

    /// Table built from a rule evaluated on every subset of `0..ground`.
    pub fn table_from(ground: usize, rule: impl Fn(VertexSet) -> i64) -> Result<Self> {
        if ground > MAX_TABLE_GROUND {
            return Err(Error::TooLarge { what: "table set function", n: ground, limit: MAX_TABLE_GROUND });
        }
        let values = (0..1u64 << ground)
            .map(|m| if m == 0 { 0 } else { rule(VertexSet::from_mask(m)) })
            .collect();
        SetFunc::table(ground, values)
    }

    /// The base function with its value on the whole vertex set replaced by `value`.
    pub fn with_full(base: SetFunc, value: i64) -> Self {
        SetFunc::Modified { base: Box::new(base), overrides: vec![Override { target: OverrideTarget::Full, value }] }
    }

    pub fn modified(base: SetFunc, overrides: Vec<Override>) -> Result<Self> {
        for o in &overrides {
            if o.target == OverrideTarget::Set(VertexSet::EMPTY) && o.value != 0 {
                return Err(Error::InvalidSetFunc("value on the empty set must be 0".into()));
            }
        }
        Ok(SetFunc::Modified { base: Box::new(base), overrides })
    }

    pub fn scaled(factor: i64, base: SetFunc) -> Self {
        match base {
            SetFunc::Lmn { m, n } => SetFunc::Lmn { m: factor * m, n: factor * n },
            SetFunc::Constant { c } => SetFunc::Constant { c: factor * c },
            other => SetFunc::Scaled { factor, base: Box::new(other) },
        }
    }

    pub fn rooted(base: SetFunc, r: Vec<i64>) -> Self {
        SetFunc::Rooted { base: Box::new(base), r }
    }

    /// The vertex count this function is tied to, if any.
    pub fn ground_size(&self) -> Option<usize> {
        match self {
            SetFunc::Lmn { .. } | SetFunc::Constant { .. } => None,
            SetFunc::Table { ground, .. } => Some(*ground),
            SetFunc::Modified { base, .. } | SetFunc::Scaled { base, .. } => base.ground_size(),
            SetFunc::PerVertex { singles, .. } => Some(singles.len()),
            SetFunc::Rooted { r, .. } => Some(r.len()),
        }
    }

    /// Checks that the function can be evaluated on a graph with `n` vertices.
    pub fn check_ground(&self, n: usize) -> Result<()> {
        match self {
            SetFunc::Lmn { .. } | SetFunc::Constant { .. } => Ok(()),
            SetFunc::Table { ground, .. } => {
                if *ground == n {
                    Ok(())
                } else {
                    Err(Error::InvalidSetFunc(format!("table is defined on {ground} vertices, graph has {n}")))
                }
            }
            SetFunc::Modified { base, overrides } => {
                for o in overrides {
                    if let OverrideTarget::Set(s) = o.target {
                        if n > MAX_SET_VERTICES || !s.is_subset(VertexSet::full(n)) {
                            return Err(Error::SetOutOfRange { set: s, n });
                        }
                    }
                }
                base.check_ground(n)
            }
            SetFunc::Scaled { base, .. } => base.check_ground(n),
            SetFunc::PerVertex { singles, larger } => {
                if singles.len() != n {
                    return Err(Error::InvalidSetFunc(format!(
                        "per-vertex values given for {} vertices, graph has {n}",
                        singles.len()
                    )));
                }
                larger.check_ground(n)
            }
            SetFunc::Rooted { base, r } => {
                if r.len() != n {
                    return Err(Error::InvalidSetFunc(format!("root vector has {} entries, graph has {n}", r.len())));
                }
                base.check_ground(n)
            }
        }
    }

    /// `f(A)` on a graph with `n` vertices.
    pub fn eval(&self, a: VertexSet, n: usize) -> i64 {
        if a.is_empty() {
            return 0;
        }
        match self {
            SetFunc::Lmn { m, n: big } => {
                if a.len() == 1 {
                    *m
                } else {
                    *big
                }
            }
            SetFunc::Constant { c } => *c,
            SetFunc::Table { values, .. } => values[a.mask() as usize],
            SetFunc::Modified { base, overrides } => {
                for o in overrides.iter().rev() {
                    let hit = match o.target {
                        OverrideTarget::Full => a == VertexSet::full(n),
                        OverrideTarget::Set(s) => a == s,
                    };
                    if hit {
                        return o.value;
                    }
                }
                base.eval(a, n)
            }
            SetFunc::PerVertex { singles, larger } => {
                if a.len() == 1 {
                    singles[a.first().unwrap()]
                } else {
                    larger.eval(a, n)
                }
            }
            SetFunc::Scaled { factor, base } => factor * base.eval(a, n),
            SetFunc::Rooted { base, r } => base.eval(a, n) - a.iter().map(|v| r[v]).sum::<i64>(),
        }
    }

    /// `f({v})`, valid at any `n`.
    pub fn single(&self, v: usize, n: usize) -> i64 {
        match self {
            SetFunc::Lmn { m, .. } => *m,
            SetFunc::Constant { c } => *c,
            SetFunc::Table { values, .. } => values[1usize << v],
            SetFunc::Modified { base, overrides } => {
                for o in overrides.iter().rev() {
                    let hit = match o.target {
                        OverrideTarget::Full => n == 1,
                        OverrideTarget::Set(s) => s.len() == 1 && s.contains(v),
                    };
                    if hit {
                        return o.value;
                    }
                }
                base.single(v, n)
            }
            SetFunc::PerVertex { singles, .. } => singles[v],
            SetFunc::Scaled { factor, base } => factor * base.single(v, n),
            SetFunc::Rooted { base, r } => base.single(v, n) - r[v],
        }
    }

    /// `f(V)` for a graph with `n` vertices, valid at any `n`.
    pub fn full(&self, n: usize) -> i64 {
        if n == 1 {
            return self.single(0, 1);
        }
        match self {
            SetFunc::Lmn { n: big, .. } => *big,
            SetFunc::Constant { c } => *c,
            SetFunc::Table { values, .. } => values[(1usize << n) - 1],
            SetFunc::Modified { base, overrides } => {
                for o in overrides.iter().rev() {
                    let hit = match o.target {
                        OverrideTarget::Full => true,
                        OverrideTarget::Set(s) => n <= MAX_SET_VERTICES && s == VertexSet::full(n),
                    };
                    if hit {
                        return o.value;
                    }
                }
                base.full(n)
            }
            SetFunc::PerVertex { larger, .. } => larger.full(n),
            SetFunc::Scaled { factor, base } => factor * base.full(n),
            SetFunc::Rooted { base, r } => base.full(n) - r.iter().sum::<i64>(),
        }
    }

    pub fn singles(&self, n: usize) -> Vec<i64> {
        (0..n).map(|v| self.single(v, n)).collect()
    }

    /// The sparsity bound `sum_{v in A} f(v) - f(A)`.
    pub fn bound(&self, a: VertexSet, n: usize) -> i64 {
        a.iter().map(|v| self.single(v, n)).sum::<i64>() - self.eval(a, n)
    }

    /// Size of a spanning tight subgraph: `sum_v f(v) - f(V)`.
    pub fn rigid_count(&self, n: usize) -> i64 {
        (0..n).map(|v| self.single(v, n)).sum::<i64>() - self.full(n)
    }

    /// Parameters `(caps, ell)` of an equivalent vertex-weighted pebble game, when the
    /// sparsity bound has the shape `sum_{v in A} caps(v) - ell` on sets of size at least two.
    pub fn pebble_params(&self, n: usize) -> Option<(Vec<i64>, i64)> {
        let (caps, ell) = self.raw_pebble_params(n)?;
        let valid = caps.iter().all(|&c| c >= 0) && ell >= 0 && {
            let mut sorted = caps.clone();
            sorted.sort_unstable();
            n < 2 || sorted[0] + sorted[1] >= ell
        };
        valid.then_some((caps, ell))
    }

    fn raw_pebble_params(&self, n: usize) -> Option<(Vec<i64>, i64)> {
        match self {
            SetFunc::Lmn { m, n: big } => Some((vec![*m; n], *big)),
            SetFunc::Constant { c } => Some((vec![*c; n], *c)),
            SetFunc::Scaled { factor, base } => {
                let (caps, ell) = base.raw_pebble_params(n)?;
                Some((caps.into_iter().map(|c| c * factor).collect(), ell * factor))
            }
            SetFunc::PerVertex { singles, larger } => {
                let ell = match **larger {
                    SetFunc::Lmn { n: big, .. } => big,
                    SetFunc::Constant { c } => c,
                    _ => return None,
                };
                (singles.len() == n).then(|| (singles.clone(), ell))
            }
            SetFunc::Rooted { base, .. } => base.raw_pebble_params(n),
            SetFunc::Table { .. } | SetFunc::Modified { .. } => None,
        }
    }

    /// Uniform `(k, ell)` parameters when every vertex has the same capacity.
    pub fn uniform_params(&self, n: usize) -> Option<(i64, i64)> {
        let (caps, ell) = self.pebble_params(n)?;
        let k = caps.first().copied().unwrap_or(0);
        caps.iter().all(|&c| c == k).then_some((k, ell))
    }
}

impl fmt::Display for SetFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetFunc::Lmn { m, n } => write!(f, "lmn:{m},{n}"),
            SetFunc::Constant { c } => write!(f, "const:{c}"),
            SetFunc::Table { ground, .. } => write!(f, "table[{ground}]"),
            SetFunc::Modified { base, overrides } => {
                write!(f, "mod:{base}")?;
                for o in overrides {
                    match o.target {
                        OverrideTarget::Full => write!(f, ":V={}", o.value)?,
                        OverrideTarget::Set(s) => write!(f, ":{s}={}", o.value)?,
                    }
                }
                Ok(())
            }
            SetFunc::PerVertex { singles, larger } => write!(f, "pervertex({singles:?};{larger})"),
            SetFunc::Scaled { factor, base } => write!(f, "{factor}*({base})"),
            SetFunc::Rooted { base, r } => write!(f, "({base})-r{r:?}"),
        }
    }
}

/// Outcome of one structural property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub holds: bool,
    /// A pair `(A, B)` on which the defining inequality fails. Single-set properties
    /// report `(A, {})`; the nonincreasing check reports `(A, B)` with `A ⊆ B`.
    pub counterexample: Option<(VertexSet, VertexSet)>,
}

impl Flag {
    fn from(counterexample: Option<(VertexSet, VertexSet)>) -> Self {
        Flag { holds: counterexample.is_none(), counterexample }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub ground: usize,
    pub supermodular: Flag,
    pub intersecting_supermodular: Flag,
    pub two_intersecting_supermodular: Flag,
    /// Least `c` in `{1, 2}` for which `f` is `c`-intersecting supermodular.
    pub least_intersecting_c: Option<u8>,
    pub nonincreasing: Flag,
    pub subadditive: Flag,
    pub weakly_subadditive: Flag,
    pub nonnegative: Flag,
}

impl PropertyReport {
    /// The hypotheses under which sparse edge sets form a matroid.
    pub fn is_matroidal(&self) -> bool {
        self.two_intersecting_supermodular.holds && self.weakly_subadditive.holds
    }
}

/// Decides every property by exhaustive enumeration over a ground set of size `n <= 16`.
pub fn property_report(f: &SetFunc, n: usize) -> Result<PropertyReport> {
    let n = f.ground_size().unwrap_or(n);
    if n > MAX_TABLE_GROUND {
        return Err(Error::TooLarge { what: "property report", n, limit: MAX_TABLE_GROUND });
    }
    f.check_ground(n)?;
    let size = 1usize << n;
    let val: Vec<i64> = (0..size as u64).map(|m| f.eval(VertexSet::from_mask(m), n)).collect();
    let single_sum: Vec<i64> = (0..size as u64)
        .map(|m| VertexSet::from_mask(m).iter().map(|v| val[1 << v]).sum())
        .collect();
    let set = |m: usize| VertexSet::from_mask(m as u64);

    let mut sup: [Option<(VertexSet, VertexSet)>; 3] = [None; 3];
    for a in 0..size {
        for b in a + 1..size {
            let inter = a & b;
            let c = (inter.count_ones() as usize).min(2);
            if val[inter] + val[a | b] < val[a] + val[b] {
                for (req, slot) in sup.iter_mut().enumerate() {
                    if c >= req && slot.is_none() {
                        *slot = Some((set(a), set(b)));
                    }
                }
            }
        }
    }

    let nonincreasing = canonical_nonincreasing(&val, size);

    let mut subadditive = None;
    'sub: for a in 0..size {
        for b in a + 1..size {
            if a & b == 0 && val[a] + val[b] < val[a | b] {
                subadditive = Some((set(a), set(b)));
                break 'sub;
            }
        }
    }
    let weakly = (0..size).find(|&a| single_sum[a] < val[a]).map(|a| (set(a), VertexSet::EMPTY));
    let nonneg = (0..size).find(|&a| val[a] < 0).map(|a| (set(a), VertexSet::EMPTY));

    let [s0, s1, s2] = sup;
    let least = if s1.is_none() {
        Some(1)
    } else if s2.is_none() {
        Some(2)
    } else {
        None
    };
    Ok(PropertyReport {
        ground: n,
        supermodular: Flag::from(s0),
        intersecting_supermodular: Flag::from(s1),
        two_intersecting_supermodular: Flag::from(s2),
        least_intersecting_c: least,
        nonincreasing: Flag::from(nonincreasing),
        subadditive: Flag::from(subadditive),
        weakly_subadditive: Flag::from(weakly),
        nonnegative: Flag::from(nonneg),
    })
}

fn canonical_nonincreasing(val: &[i64], size: usize) -> Option<(VertexSet, VertexSet)> {
    for a in 1..size {
        for b in a..size {
            if b & a == a && val[a] < val[b] {
                return Some((VertexSet::from_mask(a as u64), VertexSet::from_mask(b as u64)));
            }
        }
    }
    None
}

/// Recipes for the composite functions used by the packing and orientation pipelines.
#[derive(Clone, Debug)]
pub enum Derived<'a> {
    /// `p * f`.
    Scaled { p: i64, f: &'a SetFunc },
    /// `floor(d(v)/2) - l(v) - ell(v)` on singletons, 0 on larger sets.
    HalvedAbsorber { l: &'a SetFunc, ell: &'a SetFunc },
    /// `floor((K-1)/K d(v) - (K-2)/K rho(v)) - l(v) - ell(v)` on singletons, 0 on larger sets.
    RhoAbsorber { l: &'a SetFunc, ell: &'a SetFunc, k: Rational, rho: &'a [Rational] },
    /// The absorber plus `l` on singletons and `l(A)` on larger sets.
    RhoCombined { l: &'a SetFunc, ell: &'a SetFunc, k: Rational, rho: &'a [Rational] },
    /// `f(A) - sum_{v in A} r(v)`.
    RootedShift { f: &'a SetFunc, r: &'a [i64] },
}

fn rho_term(d: usize, k: Rational, rho: Rational) -> i64 {
    let one = Rational::from_integer(1);
    let two = Rational::from_integer(2);
    let d = Rational::from_integer(d as i64);
    ((k - one) / k * d - (k - two) / k * rho).floor().to_integer()
}

fn nonnegative_singles(singles: &[i64]) -> Result<()> {
    match singles.iter().position(|&x| x < 0) {
        Some(vertex) => Err(Error::NegativeValue { vertex, value: singles[vertex] }),
        None => Ok(()),
    }
}

/// Builds a derived function for graph `g`, rejecting negative singleton values.
pub fn derived(g: &MultiGraph, spec: Derived<'_>) -> Result<SetFunc> {
    let n = g.n();
    let deg = g.degrees();
    match spec {
        Derived::Scaled { p, f } => {
            if p < 0 {
                return Err(Error::InvalidSetFunc("scale factor must be nonnegative".into()));
            }
            Ok(SetFunc::scaled(p, f.clone()))
        }
        Derived::HalvedAbsorber { l, ell } => {
            l.check_ground(n)?;
            ell.check_ground(n)?;
            let singles: Vec<i64> =
                (0..n).map(|v| deg[v] as i64 / 2 - l.single(v, n) - ell.single(v, n)).collect();
            nonnegative_singles(&singles)?;
            Ok(SetFunc::PerVertex { singles, larger: Box::new(SetFunc::zero()) })
        }
        Derived::RhoAbsorber { l, ell, k, rho } | Derived::RhoCombined { l, ell, k, rho } => {
            l.check_ground(n)?;
            ell.check_ground(n)?;
            if k <= Rational::from_integer(0) {
                return Err(Error::InvalidSetFunc("K must be positive".into()));
            }
            if rho.len() != n {
                return Err(Error::InvalidSetFunc(format!("rho has {} entries, graph has {n}", rho.len())));
            }
            let absorber: Vec<i64> =
                (0..n).map(|v| rho_term(deg[v], k, rho[v]) - l.single(v, n) - ell.single(v, n)).collect();
            nonnegative_singles(&absorber)?;
            if matches!(spec, Derived::RhoAbsorber { .. }) {
                Ok(SetFunc::PerVertex { singles: absorber, larger: Box::new(SetFunc::zero()) })
            } else {
                let singles = (0..n).map(|v| absorber[v] + l.single(v, n)).collect();
                Ok(SetFunc::PerVertex { singles, larger: Box::new(l.clone()) })
            }
        }
        Derived::RootedShift { f, r } => {
            f.check_ground(n)?;
            if r.len() != n {
                return Err(Error::InvalidSetFunc(format!("root vector has {} entries, graph has {n}", r.len())));
            }
            if let Some(v) = r.iter().position(|&x| x < 0) {
                return Err(Error::NegativeValue { vertex: v, value: r[v] });
            }
            Ok(SetFunc::rooted(f.clone(), r.to_vec()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn eval_examples() {
        let f = SetFunc::lmn(2, 3);
        assert_eq!(f.eval(set(&[4]), 5), 2);
        assert_eq!(f.eval(set(&[0, 1]), 5), 3);
        assert_eq!(f.eval(VertexSet::EMPTY, 5), 0);
        let t = SetFunc::table_from(3, |a| a.len() as i64).unwrap();
        assert_eq!(t.eval(VertexSet::EMPTY, 3), 0);
        let m = SetFunc::with_full(SetFunc::lmn(1, 1), 0);
        assert_eq!(m.eval(set(&[0, 1, 2]), 3), 0);
        assert_eq!(m.eval(set(&[0, 1]), 3), 1);
        assert_eq!(m.full(100), 0);
    }

    #[test]
    fn table_requires_every_entry() {
        assert!(SetFunc::table(2, vec![0, 1, 1]).is_err());
        assert!(SetFunc::table(2, vec![1, 1, 1, 1]).is_err());
        assert!(SetFunc::table(2, vec![0, 1, 1, 1]).is_ok());
    }

    #[test]
    fn report_l11() {
        let r = property_report(&SetFunc::lmn(1, 1), 4).unwrap();
        assert!(r.intersecting_supermodular.holds);
        assert!(r.subadditive.holds);
        assert!(r.nonincreasing.holds);
        assert!(r.weakly_subadditive.holds);
        assert_eq!(r.least_intersecting_c, Some(1));
    }

    #[test]
    fn report_l23() {
        let f = SetFunc::lmn(2, 3);
        let r = property_report(&f, 5).unwrap();
        assert!(r.two_intersecting_supermodular.holds);
        assert!(r.weakly_subadditive.holds);
        assert!(!r.intersecting_supermodular.holds);
        assert_eq!(r.least_intersecting_c, Some(2));
        let (a, b) = r.intersecting_supermodular.counterexample.unwrap();
        assert!(!a.is_disjoint(b));
        assert!(f.eval(a.intersection(b), 5) + f.eval(a.union(b), 5) < f.eval(a, 5) + f.eval(b, 5));
    }

    #[test]
    fn report_zero() {
        let r = property_report(&SetFunc::zero(), 4).unwrap();
        for flag in [
            &r.supermodular,
            &r.intersecting_supermodular,
            &r.two_intersecting_supermodular,
            &r.nonincreasing,
            &r.subadditive,
            &r.weakly_subadditive,
            &r.nonnegative,
        ] {
            assert!(flag.holds);
        }
    }

    #[test]
    fn lmn_family_properties() {
        for m in 0..4 {
            for nn in 0..7 {
                let f = SetFunc::lmn(m, nn);
                let r = property_report(&f, 6).unwrap();
                if m >= nn {
                    assert!(r.nonincreasing.holds, "l_{m},{nn}");
                }
                if 2 * m >= nn {
                    assert!(r.weakly_subadditive.holds, "l_{m},{nn}");
                }
                replay(&f, &r, 6);
            }
        }
    }

    fn replay(f: &SetFunc, r: &PropertyReport, n: usize) {
        let e = |a: VertexSet| f.eval(a, n);
        if let Some((a, b)) = r.supermodular.counterexample {
            assert!(e(a.intersection(b)) + e(a.union(b)) < e(a) + e(b));
        }
        if let Some((a, b)) = r.two_intersecting_supermodular.counterexample {
            assert!(a.intersection(b).len() >= 2);
            assert!(e(a.intersection(b)) + e(a.union(b)) < e(a) + e(b));
        }
        if let Some((a, b)) = r.nonincreasing.counterexample {
            assert!(a.is_subset(b) && !a.is_empty() && e(a) < e(b));
        }
        if let Some((a, b)) = r.subadditive.counterexample {
            assert!(a.is_disjoint(b) && e(a) + e(b) < e(a.union(b)));
        }
        if let Some((a, _)) = r.weakly_subadditive.counterexample {
            assert!(a.iter().map(|v| f.single(v, n)).sum::<i64>() < e(a));
        }
    }

    #[test]
    fn derived_examples() {
        let k9 = MultiGraph::complete(9);
        assert_eq!(
            derived(&k9, Derived::Scaled { p: 2, f: &SetFunc::lmn(1, 1) }).unwrap(),
            SetFunc::lmn(2, 2)
        );
        let l = SetFunc::lmn(1, 1);
        let ell = SetFunc::lmn(2, 3);
        let a = derived(&k9, Derived::HalvedAbsorber { l: &l, ell: &ell }).unwrap();
        assert!((0..9).all(|v| a.single(v, 9) == 1));
        assert_eq!(a.eval(set(&[0, 1]), 9), 0);
        let c4 = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (0, 1), (2, 3)]).unwrap();
        assert_eq!(
            derived(&c4, Derived::HalvedAbsorber { l: &l, ell: &ell }),
            Err(Error::NegativeValue { vertex: 0, value: -1 })
        );
    }

    #[test]
    fn rho_combined_matches_formula() {
        let k66 = {
            let mut e = Vec::new();
            for a in 0..6 {
                for b in 6..12 {
                    e.push((a, b));
                }
            }
            MultiGraph::new(12, &e).unwrap()
        };
        let rho: Vec<Rational> =
            (0..12).map(|v| Rational::from_integer(if v < 6 { 0 } else { 6 })).collect();
        let l = SetFunc::zero();
        let ell = SetFunc::lmn(2, 3);
        let k = Rational::from_integer(2);
        let c = derived(&k66, Derived::RhoCombined { l: &l, ell: &ell, k, rho: &rho }).unwrap();
        assert!((0..12).all(|v| c.single(v, 12) == 1));
        let k3 = Rational::from_integer(3);
        let c3 = derived(&k66, Derived::RhoAbsorber { l: &l, ell: &ell, k: k3, rho: &rho });
        // On A: floor(2/3 * 6) - 2 = 2; outside A: floor(4 - 2) - 2 = 0.
        let c3 = c3.unwrap();
        assert_eq!(c3.single(0, 12), 2);
        assert_eq!(c3.single(7, 12), 0);
    }

    #[test]
    fn rooted_shift_keeps_bound() {
        let f = SetFunc::lmn(2, 3);
        let g = MultiGraph::complete(5);
        let r = vec![2, 1, 0, 0, 0];
        let s = derived(&g, Derived::RootedShift { f: &f, r: &r }).unwrap();
        for m in 1..32u64 {
            let a = VertexSet::from_mask(m);
            assert_eq!(s.bound(a, 5), f.bound(a, 5));
        }
        assert_eq!(s.full(5), 0);
    }

    #[test]
    fn pebble_params_by_kind() {
        assert_eq!(SetFunc::lmn(2, 3).uniform_params(4), Some((2, 3)));
        assert_eq!(SetFunc::constant(1).uniform_params(4), Some((1, 1)));
        assert_eq!(SetFunc::lmn(1, 3).pebble_params(4), None);
        assert_eq!(SetFunc::scaled(2, SetFunc::with_full(SetFunc::lmn(1, 1), 0)).pebble_params(3), None);
        let pv = SetFunc::PerVertex { singles: vec![1, 2, 0], larger: Box::new(SetFunc::zero()) };
        assert_eq!(pv.pebble_params(3), Some((vec![1, 2, 0], 0)));
    }
}
