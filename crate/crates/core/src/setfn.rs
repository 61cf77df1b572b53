//! Set functions on `[n]` stored as full value tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Rational};
use crate::subset::{self, Subset};

/// Largest ground set a value table may describe.
pub const MAX_GROUND: usize = 20;

/// A set function `f: 2^[n] -> Q`, indexed by subset bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFunction {
    n: usize,
    values: Vec<Rational>,
}

/// Outcome of an exhaustive property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Violated(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}

/// `f(set ∪ {element}) < f(set)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonotoneWitness {
    pub set: Subset,
    pub element: usize,
}

/// `f(s) + f(t) < f(s ∩ t) + f(s ∪ t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubmodularWitness {
    pub s: Subset,
    pub t: Subset,
}

/// Builds a set function from its value table in bitmask order.
pub fn make_setfn(n: usize, values: Vec<Rational>) -> Result<SetFunction> {
    if n == 0 {
        return Err(Error::OutOfRange("ground set size must be at least 1".into()));
    }
    if n > MAX_GROUND {
        return Err(Error::CapExceeded { n, cap: MAX_GROUND });
    }
    if values.len() != 1 << n {
        return Err(Error::LengthMismatch { expected: 1 << n, found: values.len() });
    }
    if let Some((index, value)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::NegativeValue { index, value: value.clone() });
    }
    Ok(SetFunction { n, values })
}

impl SetFunction {
    /// Tabulates `eval` over every subset of `[n]`.
    pub fn from_fn(n: usize, eval: impl FnMut(Subset) -> Rational) -> Result<SetFunction> {
        if n > MAX_GROUND {
            return Err(Error::CapExceeded { n, cap: MAX_GROUND });
        }
        make_setfn(n, (0..1usize << n).map(eval).collect())
    }

    /// Builds an `n = 3` function from values listed as
    /// f(∅), f(1), f(2), f(3), f(1,2), f(1,3), f(2,3), f(1,2,3).
    pub fn from_set_order_n3(values: [Rational; 8]) -> Result<SetFunction> {
        let [e, a, b, c, ab, ac, bc, abc] = values;
        make_setfn(3, vec![e, a, b, ab, c, ac, bc, abc])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> &Rational {
        &self.values[s]
    }

    /// `f` on a set given by 1-based elements.
    pub fn at(&self, elements: &[usize]) -> &Rational {
        &self.values[subset::from_elements(elements)]
    }

    /// Marginal contribution `f(i | S) = f(S ∪ {i}) − f(S)` (`i` 1-based).
    pub fn marginal(&self, i: usize, s: Subset) -> Rational {
        let bit = 1 << (i - 1);
        &self.values[s | bit] - &self.values[s & !bit]
    }

    /// `f(i | j)` for singletons, both 1-based.
    pub fn cond(&self, i: usize, j: usize) -> Rational {
        self.marginal(i, 1 << (j - 1))
    }

    pub fn full_set(&self) -> Subset {
        subset::full(self.n)
    }

    pub fn is_normalized(&self) -> bool {
        self.values[0].is_zero() && self.values[self.full_set()].is_one()
    }

    pub fn is_monotone_submodular(&self) -> bool {
        check_monotone(self).holds() && check_submodular(self).holds()
    }
}

impl fmt::Display for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "n={} [{}]", self.n, parts.join(", "))
    }
}

/// Checks `f(S) ≤ f(T)` for all `S ⊆ T` through single-element steps.
pub fn check_monotone(f: &SetFunction) -> Verdict<MonotoneWitness> {
    for s in 0..1usize << f.n {
        for i in 1..=f.n {
            let bit = 1 << (i - 1);
            if s & bit == 0 && f.values[s | bit] < f.values[s] {
                return Verdict::Violated(MonotoneWitness { set: s, element: i });
            }
        }
    }
    Verdict::Holds
}

/// Checks submodularity in the local form
/// `f(S+i) + f(S+j) ≥ f(S) + f(S+i+j)`, which is equivalent to the lattice form.
pub fn check_submodular(f: &SetFunction) -> Verdict<SubmodularWitness> {
    for s in 0..1usize << f.n {
        for i in 0..f.n {
            if s >> i & 1 == 1 {
                continue;
            }
            for j in i + 1..f.n {
                if s >> j & 1 == 1 {
                    continue;
                }
                let (si, sj) = (s | 1 << i, s | 1 << j);
                if &f.values[si] + &f.values[sj] < &f.values[s] + &f.values[si | sj] {
                    return Verdict::Violated(SubmodularWitness { s: si, t: sj });
                }
            }
        }
    }
    Verdict::Holds
}

/// Affine rescaling to `g(∅) = 0`, `g([n]) = 1`.
pub fn normalize(f: &SetFunction) -> Result<SetFunction> {
    let lo = &f.values[0];
    let hi = &f.values[f.full_set()];
    if hi == lo {
        return Err(Error::Degenerate("f(ground) = f(empty); cannot normalize".into()));
    }
    if hi < lo {
        return Err(Error::Degenerate("f(ground) < f(empty)".into()));
    }
    let span = hi - lo;
    let values: Vec<Rational> = f.values.iter().map(|v| &(v - lo) / &span).collect();
    if let Some((index, value)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::NegativeValue { index, value: value.clone() });
    }
    Ok(SetFunction { n: f.n, values })
}

/// Rank function of the `k`-uniform matroid, `f(S) = min(|S|, k)`.
pub fn uniform_matroid_rank(n: usize, k: usize) -> Result<SetFunction> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} must lie in [1, {n}]")));
    }
    SetFunction::from_fn(n, |s| Rational::from(subset::size(s).min(k)))
}

/// Weighted coverage `f(S) = Σ_{j ∈ ∪_{i∈S} T_i} w_j`; cover sets list 1-based items.
pub fn weighted_coverage(n: usize, weights: &[Rational], cover_sets: &[Vec<usize>]) -> Result<SetFunction> {
    if cover_sets.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: cover_sets.len() });
    }
    if let Some((index, value)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
        return Err(Error::NegativeValue { index, value: value.clone() });
    }
    let m = weights.len();
    let mut covers = Vec::with_capacity(n);
    for set in cover_sets {
        let mut items = vec![false; m];
        for &j in set {
            if j == 0 || j > m {
                return Err(Error::OutOfRange(format!("cover item {j} outside [1, {m}]")));
            }
            items[j - 1] = true;
        }
        covers.push(items);
    }
    SetFunction::from_fn(n, |s| {
        let mut covered = vec![false; m];
        for (i, items) in covers.iter().enumerate() {
            if s >> i & 1 == 1 {
                covered.iter_mut().zip(items).for_each(|(c, &t)| *c |= t);
            }
        }
        weights.iter().zip(&covered).filter(|(_, &c)| c).map(|(w, _)| w).sum()
    })
}

/// `f_y(S)`: the sum of the `k` largest `c_i y_i` over `i ∈ S`.
pub fn ksum_objective(c: &[Rational], y: &[bool], k: usize) -> Result<SetFunction> {
    let n = c.len();
    if y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: y.len() });
    }
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} must lie in [1, {n}]")));
    }
    if let Some((index, value)) = c.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::NegativeValue { index, value: value.clone() });
    }
    SetFunction::from_fn(n, |s| {
        let mut picked: Vec<&Rational> = (0..n)
            .filter(|&i| s >> i & 1 == 1 && y[i])
            .map(|i| &c[i])
            .collect();
        picked.sort_by(|a, b| b.cmp(a));
        picked.into_iter().take(k).sum()
    })
}

/// `f(S) = Σ_b f_b(S ∩ block_b)` with blocks laid out in argument order.
pub fn direct_sum(parts: &[SetFunction]) -> Result<SetFunction> {
    let n: usize = parts.iter().map(|p| p.n).sum();
    if n == 0 {
        return Err(Error::OutOfRange("direct sum of no parts".into()));
    }
    if n > MAX_GROUND {
        return Err(Error::CapExceeded { n, cap: MAX_GROUND });
    }
    SetFunction::from_fn(n, |s| {
        let mut offset = 0;
        let mut total = Rational::zero();
        for p in parts {
            total += p.value(s >> offset & p.full_set());
            offset += p.n;
        }
        total
    })
}

/// Labels of the `n = 3` subpolytopes used by the closed forms.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubpolytopeLabel {
    F3_1,
    F3_2,
    F3_3,
    G3_1,
    G3_2,
}

impl SubpolytopeLabel {
    pub const F_FAMILIES: [SubpolytopeLabel; 3] =
        [SubpolytopeLabel::F3_1, SubpolytopeLabel::F3_2, SubpolytopeLabel::F3_3];

    /// `k` for `F3_k`, `None` for the `G` families.
    pub fn f_index(self) -> Option<usize> {
        match self {
            SubpolytopeLabel::F3_1 => Some(1),
            SubpolytopeLabel::F3_2 => Some(2),
            SubpolytopeLabel::F3_3 => Some(3),
            _ => None,
        }
    }

    pub fn from_f_index(k: usize) -> Option<SubpolytopeLabel> {
        SubpolytopeLabel::F_FAMILIES.get(k.wrapping_sub(1)).copied()
    }
}

impl fmt::Display for SubpolytopeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubpolytopeLabel::F3_1 => "F3_1",
            SubpolytopeLabel::F3_2 => "F3_2",
            SubpolytopeLabel::F3_3 => "F3_3",
            SubpolytopeLabel::G3_1 => "G3_1",
            SubpolytopeLabel::G3_2 => "G3_2",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for SubpolytopeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F3_1" => Ok(SubpolytopeLabel::F3_1),
            "F3_2" => Ok(SubpolytopeLabel::F3_2),
            "F3_3" => Ok(SubpolytopeLabel::F3_3),
            "G3_1" => Ok(SubpolytopeLabel::G3_1),
            "G3_2" => Ok(SubpolytopeLabel::G3_2),
            other => Err(Error::Parse(format!("unknown subpolytope `{other}`"))),
        }
    }
}

/// Subpolytope memberships of an `n = 3` normalized function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub f_members: Vec<SubpolytopeLabel>,
    pub g_members: Vec<SubpolytopeLabel>,
    /// Smallest `k` with membership in `F3_k`.
    pub canonical_f: SubpolytopeLabel,
    /// `G3_1` when the cyclic marginal sum is at most 1, else `G3_2`.
    pub canonical_g: SubpolytopeLabel,
    /// `f(1|2) + f(2|3) + f(3|1)`.
    pub cyclic_sum: Rational,
}

/// Whether `f` satisfies the marginal inequalities defining `F3_k`.
/// Requires `n = 3`; `label` must be an `F` family.
pub fn in_f_family(f: &SetFunction, label: SubpolytopeLabel) -> bool {
    assert_eq!(f.n, 3);
    match label {
        SubpolytopeLabel::F3_1 => f.cond(3, 2) >= f.cond(3, 1) && f.cond(2, 3) >= f.cond(2, 1),
        SubpolytopeLabel::F3_2 => f.cond(3, 1) >= f.cond(3, 2) && f.cond(1, 3) >= f.cond(1, 2),
        SubpolytopeLabel::F3_3 => f.cond(2, 1) >= f.cond(2, 3) && f.cond(1, 2) >= f.cond(1, 3),
        _ => panic!("{label} is not an F family"),
    }
}

pub fn classify_subpolytope(f: &SetFunction) -> Result<Classification> {
    if f.n != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.n });
    }
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let f_members: Vec<SubpolytopeLabel> = SubpolytopeLabel::F_FAMILIES
        .into_iter()
        .filter(|&l| in_f_family(f, l))
        .collect();
    let cyclic_sum = f.cond(1, 2) + f.cond(2, 3) + f.cond(3, 1);
    let one = Rational::one();
    let mut g_members = Vec::new();
    if cyclic_sum <= one {
        g_members.push(SubpolytopeLabel::G3_1);
    }
    if cyclic_sum >= one {
        g_members.push(SubpolytopeLabel::G3_2);
    }
    let canonical_f = *f_members
        .first()
        .ok_or_else(|| Error::Defect("F3 families failed to cover the function".into()))?;
    let canonical_g = g_members[0];
    Ok(Classification { f_members, g_members, canonical_f, canonical_g, cyclic_sum })
}

/// Slack of each defining inequality of the normalized monotone submodular
/// polytope (`n = 2` or `3`); membership holds iff every slack is nonnegative.
pub fn polytope_slacks(f: &SetFunction) -> Result<Vec<Rational>> {
    let v = |els: &[usize]| f.at(els).clone();
    match f.n {
        2 => Ok(vec![
            v(&[1]) + v(&[2]) - Rational::one(),
            v(&[1]),
            v(&[2]),
            Rational::one() - v(&[1]),
            Rational::one() - v(&[2]),
        ]),
        3 => {
            let mut out = vec![
                v(&[1]) + v(&[2]) - v(&[1, 2]),
                v(&[1]) + v(&[3]) - v(&[1, 3]),
                v(&[2]) + v(&[3]) - v(&[2, 3]),
                v(&[1, 2]) + v(&[1, 3]) - v(&[1]) - Rational::one(),
                v(&[1, 2]) + v(&[2, 3]) - v(&[2]) - Rational::one(),
                v(&[1, 3]) + v(&[2, 3]) - v(&[3]) - Rational::one(),
            ];
            for (i, pair) in [(1, [1, 2]), (1, [1, 3]), (2, [1, 2]), (2, [2, 3]), (3, [1, 3]), (3, [2, 3])] {
                out.push(v(&pair) - v(&[i]));
            }
            for pair in [[1, 2], [1, 3], [2, 3]] {
                out.push(Rational::one() - v(&pair));
            }
            for i in 1..=3 {
                out.push(v(&[i]));
            }
            Ok(out)
        }
        n => Err(Error::OutOfRange(format!("polytope inequalities tabulated for n = 2, 3 only (got {n})"))),
    }
}

/// Membership in the normalized monotone submodular polytope via its
/// inequality description (`n = 2` or `3`).
pub fn in_polytope(f: &SetFunction) -> Result<bool> {
    let slacks = polytope_slacks(f)?;
    Ok(f.is_normalized() && slacks.iter().all(|s| !s.is_negative()))
}

/// Extreme points of the normalized monotone submodular polytope.
///
/// `n = 2` yields `e1, e2, e3`; `n = 3` yields `E1..E8`, or the subfamily
/// spanning `F3_k` when `family` is given.
pub fn extremal_catalog(n: usize, family: Option<SubpolytopeLabel>) -> Result<Vec<SetFunction>> {
    let r = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| q(a, b)).collect::<Vec<_>>();
    match n {
        2 => {
            if family.is_some() {
                return Err(Error::OutOfRange("subpolytope families exist for n = 3 only".into()));
            }
            [[0, 1, 0, 1], [0, 0, 1, 1], [0, 1, 1, 1]]
                .iter()
                .map(|v| make_setfn(2, v.iter().map(|&x| Rational::from(x)).collect()))
                .collect()
        }
        3 => {
            let h = (1, 2);
            let (o, z) = ((1, 1), (0, 1));
            let table: [[(i64, i64); 8]; 8] = [
                [z, o, z, z, o, o, z, o],
                [z, z, o, z, o, z, o, o],
                [z, z, z, o, z, o, o, o],
                [z, o, o, z, o, o, o, o],
                [z, o, z, o, o, o, o, o],
                [z, z, o, o, o, o, o, o],
                [z, o, o, o, o, o, o, o],
                [z, h, h, h, o, o, o, o],
            ];
            let excluded = match family {
                None => None,
                Some(SubpolytopeLabel::F3_1) => Some(5),
                Some(SubpolytopeLabel::F3_2) => Some(4),
                Some(SubpolytopeLabel::F3_3) => Some(3),
                Some(other) => {
                    return Err(Error::OutOfRange(format!("no extremal catalog for {other}")))
                }
            };
            table
                .iter()
                .enumerate()
                .filter(|(i, _)| Some(*i) != excluded)
                .map(|(_, row)| {
                    let vals: [Rational; 8] = r(row).try_into().expect("8 values");
                    SetFunction::from_set_order_n3(vals)
                })
                .collect()
        }
        _ => Err(Error::OutOfRange(format!("extremal catalog exists for n = 2, 3 only (got {n})"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn anchor_f1() -> SetFunction {
        make_setfn(3, vec![q(0, 1), q(1, 3), q(1, 2), q(3, 4), q(3, 5), q(4, 5), q(5, 6), q(1, 1)]).unwrap()
    }

    #[test]
    fn make_setfn_validates() {
        assert!(make_setfn(1, ints(&[0, 1])).is_ok());
        assert_eq!(
            make_setfn(2, ints(&[0, 1, 0])),
            Err(Error::LengthMismatch { expected: 4, found: 3 })
        );
        assert!(matches!(make_setfn(1, ints(&[0, -1])), Err(Error::NegativeValue { index: 1, .. })));
        let f = anchor_f1();
        assert_eq!(f.at(&[3]), &q(3, 5));
        assert_eq!(f.at(&[1, 2]), &q(3, 4));
    }

    #[test]
    fn monotone_checks() {
        let e8 = extremal_catalog(3, None).unwrap().pop().unwrap();
        assert!(check_monotone(&e8).holds());
        let f = make_setfn(2, ints(&[0, 1, 0, 0])).unwrap();
        assert_eq!(
            check_monotone(&f),
            Verdict::Violated(MonotoneWitness { set: 0b01, element: 2 })
        );
        assert!(check_monotone(&make_setfn(4, vec![Rational::zero(); 16]).unwrap()).holds());
    }

    #[test]
    fn submodular_checks() {
        assert!(check_submodular(&anchor_f1()).holds());
        let f = make_setfn(2, ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(check_submodular(&f), Verdict::Violated(SubmodularWitness { s: 0b01, t: 0b10 }));
        let w = [q(2, 3), q(5, 1), q(0, 1), q(1, 7)];
        let modular = SetFunction::from_fn(4, |s| (0..4).filter(|i| s >> i & 1 == 1).map(|i| w[i].clone()).sum()).unwrap();
        assert!(check_submodular(&modular).holds());
    }

    #[test]
    fn submodular_witness_violates_lattice_form() {
        let f = make_setfn(3, ints(&[0, 1, 1, 1, 1, 3, 1, 3])).unwrap();
        let SubmodularWitness { s, t } = *check_submodular(&f).witness().unwrap();
        assert!(f.value(s) + f.value(t) < f.value(s & t) + f.value(s | t));
    }

    #[test]
    fn normalize_rescales() {
        let f = make_setfn(2, ints(&[1, 2, 2, 3])).unwrap();
        assert_eq!(normalize(&f).unwrap().values(), &[q(0, 1), q(1, 2), q(1, 2), q(1, 1)]);
        assert_eq!(normalize(&anchor_f1()).unwrap(), anchor_f1());
        assert!(matches!(normalize(&make_setfn(2, ints(&[2, 2, 2, 2])).unwrap()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn constructors() {
        assert_eq!(uniform_matroid_rank(3, 1).unwrap().values(), ints(&[0, 1, 1, 1, 1, 1, 1, 1]).as_slice());
        let r = uniform_matroid_rank(4, 2).unwrap();
        assert_eq!(r.at(&[1, 3]), &q(2, 1));
        assert_eq!(r.at(&[1, 2, 3]), &q(2, 1));
        assert_eq!(uniform_matroid_rank(2, 2).unwrap().values(), ints(&[0, 1, 1, 2]).as_slice());
        assert!(uniform_matroid_rank(2, 3).is_err());
        assert!(uniform_matroid_rank(2, 0).is_err());

        let cov = weighted_coverage(2, &[q(1, 1)], &[vec![1], vec![1]]).unwrap();
        assert_eq!(cov, uniform_matroid_rank(2, 1).unwrap());
        let cov = weighted_coverage(3, &ints(&[1, 1, 1]), &[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(cov, uniform_matroid_rank(3, 3).unwrap());
        let cov = weighted_coverage(2, &[q(1, 2), q(1, 2)], &[vec![1, 2], vec![2]]).unwrap();
        assert_eq!(cov.values(), &[q(0, 1), q(1, 1), q(1, 2), q(1, 1)]);
        assert!(weighted_coverage(1, &[q(1, 1)], &[vec![2]]).is_err());

        let c = ints(&[3, 2, 1]);
        assert_eq!(ksum_objective(&c, &[true; 3], 1).unwrap().at(&[2, 3]), &q(2, 1));
        assert_eq!(ksum_objective(&c, &[true, false, true], 2).unwrap().at(&[1, 2, 3]), &q(4, 1));
        let zero = ksum_objective(&c, &[false; 3], 2).unwrap();
        assert!(zero.values().iter().all(|v| v.is_zero()));
        assert!(ksum_objective(&c, &[true; 3], 4).is_err());
    }

    #[test]
    fn direct_sums() {
        let r1 = uniform_matroid_rank(1, 1).unwrap();
        assert_eq!(direct_sum(&[r1.clone(), r1.clone()]).unwrap(), uniform_matroid_rank(2, 2).unwrap());
        let s = direct_sum(&[uniform_matroid_rank(2, 1).unwrap(), r1.clone()]).unwrap();
        assert_eq!(s.at(&[1, 2]), &q(1, 1));
        assert_eq!(s.at(&[3]), &q(1, 1));
        assert_eq!(s.at(&[1, 3]), &q(2, 1));
        let f = anchor_f1();
        assert_eq!(direct_sum(std::slice::from_ref(&f)).unwrap(), f);
    }

    #[test]
    fn catalog_entries() {
        let c2 = extremal_catalog(2, None).unwrap();
        assert_eq!(c2[2].values(), ints(&[0, 1, 1, 1]).as_slice());
        let c3 = extremal_catalog(3, None).unwrap();
        assert_eq!(c3.len(), 8);
        assert_eq!(c3[7].values(), &[q(0, 1), q(1, 2), q(1, 2), q(1, 1), q(1, 2), q(1, 1), q(1, 1), q(1, 1)]);
        for f in c2.iter().chain(&c3) {
            assert!(f.is_monotone_submodular(), "{f}");
            assert!(f.is_normalized());
            assert!(in_polytope(f).unwrap(), "{f}");
        }
        for (label, missing) in [(SubpolytopeLabel::F3_1, 5), (SubpolytopeLabel::F3_2, 4), (SubpolytopeLabel::F3_3, 3)] {
            let fam = extremal_catalog(3, Some(label)).unwrap();
            assert_eq!(fam.len(), 7);
            assert!(!fam.contains(&c3[missing]));
            for g in &fam {
                assert!(in_f_family(g, label), "{g} in {label}");
            }
            assert!(!in_f_family(&c3[missing], label));
        }
        assert!(extremal_catalog(4, None).is_err());
    }

    #[test]
    fn classification_examples() {
        let c3 = extremal_catalog(3, None).unwrap();
        let e7 = classify_subpolytope(&c3[6]).unwrap();
        assert_eq!(e7.f_members, SubpolytopeLabel::F_FAMILIES.to_vec());
        assert_eq!(e7.canonical_f, SubpolytopeLabel::F3_1);
        let e6 = classify_subpolytope(&c3[5]).unwrap();
        assert!(!e6.f_members.contains(&SubpolytopeLabel::F3_1));
        let e8 = classify_subpolytope(&c3[7]).unwrap();
        assert_eq!(e8.cyclic_sum, q(3, 2));
        assert_eq!(e8.canonical_g, SubpolytopeLabel::G3_2);
        assert_eq!(classify_subpolytope(&uniform_matroid_rank(3, 2).unwrap()), Err(Error::NotNormalized));
        assert!(classify_subpolytope(&uniform_matroid_rank(2, 1).unwrap()).is_err());
    }

    #[test]
    fn f_family_matches_pair_sum_maximum() {
        let c3 = extremal_catalog(3, None).unwrap();
        for f in &c3 {
            let a = f.at(&[2, 3]) + f.at(&[1]);
            let b = f.at(&[1, 3]) + f.at(&[2]);
            let c = f.at(&[1, 2]) + f.at(&[3]);
            assert_eq!(in_f_family(f, SubpolytopeLabel::F3_1), a >= b && a >= c);
            assert_eq!(in_f_family(f, SubpolytopeLabel::F3_2), b >= a && b >= c);
            assert_eq!(in_f_family(f, SubpolytopeLabel::F3_3), c >= a && c >= b);
        }
    }
}
