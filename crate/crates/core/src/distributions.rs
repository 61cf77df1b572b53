//! Constructions of pairwise independent distributions and diagnostics of
//! their dependence structure.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::closedform::{region_n3, RegionLabel};
use crate::error::{Error, Result};
use crate::extensions::{Distribution, MarginalVector};
use crate::lp::{self, LinearProgram, Sense, Status};
use crate::rational::Rational;
use crate::setfn::{SubpolytopeLabel, Verdict};
use crate::subset::{self, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: &Rational) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `θ(S) = Π_{i∈S} x_i Π_{i∉S} (1 − x_i)`.
pub fn product_distribution(x: &MarginalVector) -> Distribution {
    let n = x.n();
    let mut weights = vec![Rational::one()];
    for xi in x.values() {
        let not = Rational::one() - xi;
        let mut next = Vec::with_capacity(weights.len() * 2);
        next.extend(weights.iter().map(|w| w * &not));
        next.extend(weights.iter().map(|w| w * xi));
        weights = next;
    }
    Distribution::new(n, weights.into_iter().enumerate()).expect("product weights form a distribution")
}

/// Completes fixed `head` atoms with mass on the `free` sets so the whole
/// distribution has marginals `x` and pair moments `x_i x_j`.
fn complete_pairwise(x: &[Rational], head: &[(Subset, Rational)], free: &[Subset]) -> Result<Distribution> {
    let n = x.len();
    let head_moment = |t: Subset| -> Rational {
        head.iter().filter(|(s, _)| s & t == t).map(|(_, p)| p).sum()
    };
    let mut targets: Vec<(Subset, Rational)> = vec![(0, Rational::one())];
    for i in 0..n {
        targets.push((1 << i, x[i].clone()));
    }
    for (i, j) in subset::pairs(n) {
        targets.push((1 << i | 1 << j, &x[i] * &x[j]));
    }
    let mut rows = Vec::with_capacity(targets.len());
    let mut rhs = Vec::with_capacity(targets.len());
    for (t, target) in targets {
        rows.push(
            free.iter()
                .map(|s| if s & t == t { Rational::one() } else { Rational::zero() })
                .collect(),
        );
        rhs.push(target - head_moment(t));
    }
    let program = LinearProgram::new(Sense::Max, vec![Rational::zero(); free.len()], rows, rhs);
    let sol = lp::solve(&program)?;
    if sol.status != Status::Optimal {
        return Err(Error::Defect(format!(
            "pairwise completion reported {:?} for x = {:?}",
            sol.status, x
        )));
    }
    let atoms = head.iter().cloned().chain(free.iter().copied().zip(sol.primal));
    Distribution::new(n, atoms)
}

/// Pairwise independent distribution for marginals whose `n − 1` smallest
/// entries sum to at most 1.
///
/// After sorting ascending, the sets omitting the largest element carry
/// `θ(∅) = (1 − Σ_{i<n} x_i)(1 − x_n)` and `θ({i}) = x_i (1 − x_n)`; the
/// sets containing it are filled in by an exact feasibility LP. The input
/// need not be sorted; the result is mapped back to the original labels.
pub fn construct_small(x: &MarginalVector) -> Result<Distribution> {
    let n = x.n();
    let (s, perm) = x.sorted_with_permutation();
    let xs = s.values();
    let head_sum: Rational = xs[..n - 1].iter().sum();
    let one = Rational::one();
    if head_sum > one {
        return Err(Error::Precondition(format!(
            "the {} smallest marginals sum to {head_sum} > 1",
            n - 1
        )));
    }
    let last = &xs[n - 1];
    let mut head = vec![(0, (&one - &head_sum) * (&one - last))];
    for (i, xi) in xs[..n - 1].iter().enumerate() {
        head.push((1 << i, xi * &(&one - last)));
    }
    let top = 1 << (n - 1);
    let free: Vec<Subset> = (0..top).map(|t| t | top).collect();
    let d = complete_pairwise(xs, &head, &free)?;
    Ok(d.relabel(&perm))
}

/// Pairwise independent distribution for marginals whose `n − 1` largest
/// entries sum to at least `n − 2`.
///
/// After sorting ascending, the sets containing the smallest element carry
/// `θ([n]) = x₁(Σ_{i≥2} x_i − (n − 2))` and `θ([n] \ {i}) = x₁(1 − x_i)`;
/// the sets omitting it are filled in by an exact feasibility LP.
pub fn construct_large(x: &MarginalVector) -> Result<Distribution> {
    let n = x.n();
    let (s, perm) = x.sorted_with_permutation();
    let xs = s.values();
    let tail_sum: Rational = xs[1..].iter().sum();
    let floor = Rational::from(n) - Rational::from(2);
    if tail_sum < floor {
        return Err(Error::Precondition(format!(
            "the {} largest marginals sum to {tail_sum} < {floor}",
            n - 1
        )));
    }
    let full = subset::full(n);
    let x1 = &xs[0];
    let mut head = vec![(full, x1 * &(&tail_sum - &floor))];
    for (i, xi) in xs.iter().enumerate().skip(1) {
        head.push((full & !(1 << i), x1 * &(Rational::one() - xi)));
    }
    let free: Vec<Subset> = (0..1usize << n).filter(|t| t & 1 == 0).collect();
    let d = complete_pairwise(xs, &head, &free)?;
    Ok(d.relabel(&perm))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Small,
    Large,
}

/// Explicit pairwise independent distributions on four elements with
/// identical marginals `x` (`x ≤ 1/3` small, `x ≥ 2/3` large).
pub fn identical_n4(x: &Rational, regime: Regime) -> Result<Distribution> {
    let one = Rational::one();
    let three = Rational::from(3);
    let full = subset::full(4);
    match regime {
        Regime::Small => {
            if x.is_negative() || *x > Rational::new(1, 3) {
                return Err(Error::OutOfRange(format!("x = {x} outside [0, 1/3]")));
            }
            let single = x * &(&one - x);
            let mut atoms = vec![(0, (&one - &three * x) * (&one - x)), (full, x * x)];
            atoms.extend((0..4).map(|i| (1 << i, single.clone())));
            Distribution::new(4, atoms)
        }
        Regime::Large => {
            if *x < Rational::new(2, 3) || *x > one {
                return Err(Error::OutOfRange(format!("x = {x} outside [2/3, 1]")));
            }
            let single = x * &(&one - x);
            let mut atoms = vec![(0, (&one - x) * (&one - x)), (full, x * &(&three * x - Rational::from(2)))];
            atoms.extend((0..4).map(|i| (full & !(1 << i), single.clone())));
            Distribution::new(4, atoms)
        }
    }
}

/// The first failing moment found by [`check_pairwise_independent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairwiseViolation {
    Dimension { expected: usize, found: usize },
    /// `P(element ∈ S) ≠ x_element` (1-based).
    Marginal { element: usize, found: Rational, expected: Rational },
    /// `P(i, j ∈ S) ≠ x_i x_j` (1-based).
    Pair { i: usize, j: usize, found: Rational, expected: Rational },
}

/// Checks every marginal and every pair moment exactly. For Bernoulli
/// variables these equalities are equivalent to pairwise independence.
pub fn check_pairwise_independent(d: &Distribution, x: &MarginalVector) -> Verdict<PairwiseViolation> {
    if d.n() != x.n() {
        return Verdict::Violated(PairwiseViolation::Dimension { expected: x.n(), found: d.n() });
    }
    let xs = x.values();
    for i in 0..d.n() {
        let found = d.moment(1 << i);
        if found != xs[i] {
            return Verdict::Violated(PairwiseViolation::Marginal { element: i + 1, found, expected: xs[i].clone() });
        }
    }
    for (i, j) in subset::pairs(d.n()) {
        let found = d.moment(1 << i | 1 << j);
        let expected = &xs[i] * &xs[j];
        if found != expected {
            return Verdict::Violated(PairwiseViolation::Pair { i: i + 1, j: j + 1, found, expected });
        }
    }
    Verdict::Holds
}

/// Signs of `P(S ⊆ S̃) − Π_{i∈S} x_i` for every `S` with `|S| ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderSignature {
    #[serde(serialize_with = "serialize_subset_keys")]
    pub signs: BTreeMap<Subset, Sign>,
}

fn serialize_subset_keys<S: Serializer>(m: &BTreeMap<Subset, Sign>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&subset::display(*k), v)?;
    }
    map.end()
}

impl CylinderSignature {
    pub fn pairs_zero(&self) -> bool {
        self.signs.iter().filter(|(s, _)| s.count_ones() == 2).all(|(_, v)| *v == Sign::Zero)
    }

    /// Negative cylinder dependence.
    pub fn all_nonpositive(&self) -> bool {
        self.signs.values().all(|v| *v != Sign::Positive)
    }

    /// Positive cylinder dependence.
    pub fn all_nonnegative(&self) -> bool {
        self.signs.values().all(|v| *v != Sign::Negative)
    }

    pub fn sign(&self, s: Subset) -> Option<Sign> {
        self.signs.get(&s).copied()
    }
}

pub fn cylinder_signature(d: &Distribution, x: &MarginalVector) -> Result<CylinderSignature> {
    if d.n() != x.n() {
        return Err(Error::DimensionMismatch { expected: x.n(), found: d.n() });
    }
    let signs = (0..1usize << d.n())
        .filter(|s| s.count_ones() >= 2)
        .map(|s| (s, Sign::of(&(d.moment(s) - x.product_over(s)))))
        .collect();
    Ok(CylinderSignature { signs })
}

/// Sign of `Cov(c_i, c_j)` for each pair `(i, j)`, 1-based, lexicographic.
pub fn covariance_signs(d: &Distribution) -> Result<Vec<((usize, usize), Sign)>> {
    if d.n() < 2 {
        return Err(Error::OutOfRange("covariance needs at least two elements".into()));
    }
    let m = d.marginals();
    Ok(subset::pairs(d.n())
        .into_iter()
        .map(|(i, j)| {
            let cov = d.moment(1 << i | 1 << j) - &m[i] * &m[j];
            ((i + 1, j + 1), Sign::of(&cov))
        })
        .collect())
}

/// Optimal concave-closure distribution for `Σx ≤ 1`: `θ(∅) = 1 − Σx`,
/// `θ({i}) = x_i` (`n = 3`).
pub fn theta_plus_r1(x: &MarginalVector) -> Result<Distribution> {
    if x.n() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: x.n() });
    }
    let rest = Rational::one() - x.sum();
    if rest.is_negative() {
        return Err(Error::Precondition("marginals sum above 1".into()));
    }
    Distribution::new(3, [(0, rest), (0b001, x.get(1).clone()), (0b010, x.get(2).clone()), (0b100, x.get(3).clone())])
}

/// Optimal concave-closure distribution for `Σx ≥ 2`: `θ({1,2}) = 1 − x₃`,
/// `θ({1,3}) = 1 − x₂`, `θ({2,3}) = 1 − x₁`, `θ([3]) = Σx − 2`.
pub fn theta_plus_r14(x: &MarginalVector) -> Result<Distribution> {
    if x.n() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: x.n() });
    }
    let excess = x.sum() - Rational::from(2);
    if excess.is_negative() {
        return Err(Error::Precondition("marginals sum below 2".into()));
    }
    let one = Rational::one();
    Distribution::new(
        3,
        [
            (0b011, &one - x.get(3)),
            (0b101, &one - x.get(2)),
            (0b110, &one - x.get(1)),
            (0b111, excess),
        ],
    )
}

/// Optimal concave-closure distribution for `f ∈ F3_1` on the region of `x`
/// (`R1`, `R2..R5` or `R14`). It depends only on `x`, which is what makes
/// the designated dual optimal on the whole region.
pub fn region_distribution_f31(x: &MarginalVector) -> Result<(RegionLabel, Distribution)> {
    let region = region_n3(x, SubpolytopeLabel::F3_1)?;
    let one = Rational::one();
    let (x1, x2, x3) = (x.get(1), x.get(2), x.get(3));
    let sum = x.sum();
    let d = match region.index() {
        1 => theta_plus_r1(x)?,
        14 => theta_plus_r14(x)?,
        2 => Distribution::new(
            3,
            [(0b001, x1.clone()), (0b010, &one - x1 - x3), (0b100, &one - x1 - x2), (0b110, &sum - &one)],
        )?,
        3 => Distribution::new(
            3,
            [(0b001, &one - x3), (0b100, &one - x1 - x2), (0b101, x1 + x3 - &one), (0b110, x2.clone())],
        )?,
        4 => Distribution::new(
            3,
            [(0b001, &one - x2), (0b010, &one - x1 - x3), (0b011, x1 + x2 - &one), (0b110, x3.clone())],
        )?,
        5 => Distribution::new(
            3,
            [
                (0b001, Rational::from(2) - &sum),
                (0b011, x1 + x2 - &one),
                (0b101, x1 + x3 - &one),
                (0b110, &one - x1),
            ],
        )?,
        other => return Err(Error::Defect(format!("unexpected F3_1 region R{other}"))),
    };
    Ok((region, d))
}

/// Covariance sign pattern for pairs (1,2), (1,3), (2,3) of
/// [`region_distribution_f31`]. Fixed entries are weak signs (`−` means
/// nonpositive, `+` nonnegative); the varying (2,3) entry of `R2` and `R5`
/// is given by its discriminant, `x₁ − (1 − x₂)(1 − x₃)` and `1 − x₁ − x₂x₃`.
pub fn expected_covariance_pattern_f31(x: &MarginalVector) -> Result<[CovarianceExpectation; 3]> {
    use CovarianceExpectation::*;
    let region = region_n3(x, SubpolytopeLabel::F3_1)?;
    let one = Rational::one();
    let (x1, x2, x3) = (x.get(1), x.get(2), x.get(3));
    Ok(match region.index() {
        1 | 14 => [NonPositive, NonPositive, NonPositive],
        2 => [NonPositive, NonPositive, Exact(Sign::of(&(x1 - (&one - x2) * (&one - x3))))],
        3 | 4 => [NonPositive, NonPositive, NonNegative],
        5 => [NonPositive, NonPositive, Exact(Sign::of(&(&one - x1 - x2 * x3)))],
        other => return Err(Error::Defect(format!("unexpected F3_1 region R{other}"))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CovarianceExpectation {
    NonPositive,
    NonNegative,
    Exact(Sign),
}

impl CovarianceExpectation {
    pub fn admits(self, s: Sign) -> bool {
        match self {
            CovarianceExpectation::NonPositive => s != Sign::Positive,
            CovarianceExpectation::NonNegative => s != Sign::Negative,
            CovarianceExpectation::Exact(e) => e == s,
        }
    }
}
