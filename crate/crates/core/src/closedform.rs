//! Closed forms for the extensions on two and three elements, the rank-one
//! and `k`-uniform formulas, and the dual solutions behind them.
//!
//! The `n = 2` and `n = 3` forms assume a normalized function
//! (`f(∅) = 0`, `f([n]) = 1`); [`crate::setfn::normalize`] rescales others.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extensions::{Distribution, DualCertificate, MarginalVector};
use crate::rational::Rational;
use crate::setfn::{self, SetFunction, SubpolytopeLabel};

fn require_n(f: &SetFunction, n: usize) -> Result<()> {
    if f.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.n() });
    }
    Ok(())
}

fn require_x(x: &MarginalVector, n: usize) -> Result<()> {
    if x.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.n() });
    }
    Ok(())
}

fn require_normalized(f: &SetFunction, n: usize) -> Result<()> {
    require_n(f, n)?;
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

/// `f⁺` for `n = 2`:
/// `min[f(1)x₁ + f(2)x₂, f(1) + f(2) − 1 + (1 − f(2))x₁ + (1 − f(1))x₂]`.
pub fn f_plus_n2(f: &SetFunction, x: &MarginalVector) -> Result<Rational> {
    require_normalized(f, 2)?;
    require_x(x, 2)?;
    let (f1, f2) = (f.at(&[1]), f.at(&[2]));
    let (x1, x2) = (x.get(1), x.get(2));
    let one = Rational::one();
    let low = f1 * x1 + f2 * x2;
    let high = f1 + f2 - &one + (&one - f2) * x1 + (&one - f1) * x2;
    Ok(Rational::min_of(&low, &high).clone())
}

/// `f⁺⁺` for `n = 2`: `f(1)x₁ + f(2)x₂ + (1 − f(1) − f(2))x₁x₂`.
pub fn f_pp_n2(f: &SetFunction, x: &MarginalVector) -> Result<Rational> {
    require_normalized(f, 2)?;
    require_x(x, 2)?;
    let (f1, f2) = (f.at(&[1]), f.at(&[2]));
    let (x1, x2) = (x.get(1), x.get(2));
    Ok(f1 * x1 + f2 * x2 + (Rational::one() - f1 - f2) * (x1 * x2))
}

/// One tabulated dual solution for `n = 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableDual {
    /// 1..=14.
    pub index: usize,
    /// Subpolytope on which the solution is feasible; `None` means all of `F3`.
    pub family: Option<SubpolytopeLabel>,
    pub certificate: DualCertificate,
}

/// The fourteen dual solutions `λ₁..λ₁₄` of the concave-closure LP for `n = 3`.
pub fn dual_table_n3(f: &SetFunction) -> Result<Vec<TableDual>> {
    require_normalized(f, 3)?;
    let v = |e: &[usize]| f.at(e).clone();
    let c = |i, j| f.cond(i, j);
    let (f1, f2, f3) = (v(&[1]), v(&[2]), v(&[3]));
    let (f12, f13, f23) = (v(&[1, 2]), v(&[1, 3]), v(&[2, 3]));
    let one = Rational::one();
    let two = Rational::from(2);
    let rows: [[Rational; 4]; 14] = [
        [Rational::zero(), f1.clone(), f2.clone(), f3.clone()],
        [&f2 - c(2, 3), &f1 - &f2 + c(2, 3), c(2, 3), c(3, 2)],
        [&f1 - c(1, 3), c(1, 3), c(2, 3), c(3, 1)],
        [&f2 - c(2, 1), c(1, 2), c(2, 1), c(3, 2)],
        [&f23 - c(3, 1) - c(2, 1), c(2, 1) + &f13 - &f23, c(2, 1), c(3, 1)],
        [&f1 - c(1, 3), c(1, 3), &f2 - &f1 + c(1, 3), c(3, 1)],
        [&f2 - c(2, 3), c(1, 3), c(2, 3), c(3, 2)],
        [&f2 - c(2, 1), c(1, 2), c(2, 1), c(3, 1)],
        [&f13 - c(1, 2) - c(3, 2), c(1, 2), c(1, 2) + &f23 - &f13, c(3, 2)],
        [&f1 - c(1, 2), c(1, 2), c(2, 1), &f3 - &f2 + c(2, 1)],
        [&f2 - c(2, 3), c(1, 2), c(2, 3), c(3, 2)],
        [&f3 - c(3, 1), c(1, 3), c(2, 1), c(3, 1)],
        [&f12 - c(1, 3) - c(2, 3), c(1, 3), c(2, 3), c(2, 3) + &f13 - &f12],
        [&f12 + &f13 + &f23 - &two, &one - &f23, &one - &f13, &one - &f12],
    ];
    Ok(rows
        .into_iter()
        .enumerate()
        .map(|(k, [l0, l1, l2, l3])| {
            let index = k + 1;
            TableDual {
                index,
                family: family_of_dual(index),
                certificate: DualCertificate { lambda0: l0, lambda_i: vec![l1, l2, l3], lambda_ij: None },
            }
        })
        .collect())
}

/// Validity family of `λ_index`.
pub fn family_of_dual(index: usize) -> Option<SubpolytopeLabel> {
    match index {
        2..=5 => Some(SubpolytopeLabel::F3_1),
        6..=9 => Some(SubpolytopeLabel::F3_2),
        10..=13 => Some(SubpolytopeLabel::F3_3),
        _ => None,
    }
}

/// Indices of the four middle-band duals for family `F3_k`.
pub fn family_duals(label: SubpolytopeLabel) -> Result<std::ops::RangeInclusive<usize>> {
    let k = label
        .f_index()
        .ok_or_else(|| Error::OutOfRange(format!("{label} is not an F family")))?;
    Ok(4 * k - 2..=4 * k + 1)
}

/// Region `R1..R14` of `[0,1]³`; region `R_j` is where `λ_j` is optimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionLabel(u8);

impl RegionLabel {
    pub fn new(index: u8) -> Result<RegionLabel> {
        if (1..=14).contains(&index) {
            Ok(RegionLabel(index))
        } else {
            Err(Error::OutOfRange(format!("region index {index} outside 1..=14")))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Index of the dual solution that is optimal on this region.
    pub fn designated_dual(self) -> usize {
        self.index()
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.0)
    }
}

impl Serialize for RegionLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Region of `x` for family `F3_k`: `R1` if `Σx ≤ 1`, `R14` if `Σx ≥ 2`,
/// otherwise the family's band region from the signs of its two pair sums
/// (`≤ 1` or `> 1`).
pub fn region_n3(x: &MarginalVector, family: SubpolytopeLabel) -> Result<RegionLabel> {
    require_x(x, 3)?;
    let k = family
        .f_index()
        .ok_or_else(|| Error::OutOfRange(format!("{family} is not an F family")))?;
    let one = Rational::one();
    let sum = x.sum();
    if sum <= one {
        return RegionLabel::new(1);
    }
    if sum >= Rational::from(2) {
        return RegionLabel::new(14);
    }
    let (x1, x2, x3) = (x.get(1), x.get(2), x.get(3));
    let (a, b) = match k {
        1 => (x1 + x2, x1 + x3),
        2 => (x1 + x2, x2 + x3),
        _ => (x1 + x3, x2 + x3),
    };
    let offset = (a > one) as u8 * 2 + (b > one) as u8;
    RegionLabel::new(4 * k as u8 - 2 + offset)
}

/// `f⁺` for `n = 3` as the minimum of the canonical family's four band
/// duals and the two global duals `λ₁`, `λ₁₄`.
pub fn f_plus_n3(f: &SetFunction, x: &MarginalVector) -> Result<Rational> {
    require_normalized(f, 3)?;
    require_x(x, 3)?;
    if !setfn::in_polytope(f)? {
        return Err(Error::NotMonotoneSubmodular);
    }
    let class = setfn::classify_subpolytope(f)?;
    let duals = dual_table_n3(f)?;
    let band = family_duals(class.canonical_f)?;
    duals
        .iter()
        .filter(|d| band.contains(&d.index) || d.index == 1 || d.index == 14)
        .map(|d| d.certificate.objective(x))
        .min()
        .ok_or_else(|| Error::Defect("empty dual set".into()))
}

/// Feasible range `[ω̲, ω̄]` of the free parameter `ω = θ(∅)` among
/// pairwise independent distributions on three elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaBounds {
    pub low: Rational,
    pub high: Rational,
}

pub fn omega_bounds_n3(x: &MarginalVector) -> Result<OmegaBounds> {
    require_x(x, 3)?;
    let (s, _) = x.sorted_with_permutation();
    let [xi, xj, xk] = [s.get(1), s.get(2), s.get(3)];
    let one = Rational::one();
    let low = ((&one - xk) * (&one - xi - xj)).positive_part();
    let both = x.product_over(0b111) + x.complement().product_over(0b111);
    let high = Rational::min_of(&both, &((&one - xj) * (&one - xk))).clone();
    Ok(OmegaBounds { low, high })
}

/// The pairwise independent distribution with marginals `x` and `θ(∅) = ω`.
pub fn pairwise_family_n3(x: &MarginalVector, omega: &Rational) -> Result<Distribution> {
    let bounds = omega_bounds_n3(x)?;
    if *omega < bounds.low || *omega > bounds.high {
        return Err(Error::OutOfRange(format!(
            "omega = {omega} outside [{}, {}]",
            bounds.low, bounds.high
        )));
    }
    let one = Rational::one();
    let (x1, x2, x3) = (x.get(1), x.get(2), x.get(3));
    let (n1, n2, n3) = (&one - x1, &one - x2, &one - x3);
    let both = x.product_over(0b111) + &n1 * &n2 * &n3;
    Distribution::new(
        3,
        [
            (0b000, omega.clone()),
            (0b001, &n2 * &n3 - omega),
            (0b010, &n1 * &n3 - omega),
            (0b100, &n1 * &n2 - omega),
            (0b011, omega + (x1 + x2 - &one) * &n3),
            (0b101, omega + (x1 + x3 - &one) * &n2),
            (0b110, omega + (x2 + x3 - &one) * &n1),
            (0b111, both - omega),
        ],
    )
}

/// `g₁ = 1 + f(1) + f(2) + f(3)` and `g₂ = f(1,2) + f(1,3) + f(2,3)`.
pub fn g_values(f: &SetFunction) -> (Rational, Rational) {
    let g1 = Rational::one() + f.at(&[1]) + f.at(&[2]) + f.at(&[3]);
    let g2 = f.at(&[1, 2]) + f.at(&[1, 3]) + f.at(&[2, 3]);
    (g1, g2)
}

/// The `ω` attaining `f⁺⁺` for `n = 3`: `ω̄` when `g₂ > g₁`, else `ω̲`.
pub fn optimal_omega_n3(f: &SetFunction, x: &MarginalVector) -> Result<Rational> {
    require_n(f, 3)?;
    let (g1, g2) = g_values(f);
    let b = omega_bounds_n3(x)?;
    Ok(if g2 > g1 { b.high } else { b.low })
}

/// `f⁺⁺` for `n = 3`: `h(x) + max_{ω ∈ {ω̲, ω̄}} (g₂ − g₁) ω`.
pub fn f_pp_n3(f: &SetFunction, x: &MarginalVector) -> Result<Rational> {
    require_normalized(f, 3)?;
    require_x(x, 3)?;
    let (g1, g2) = g_values(f);
    let dg = &g2 - &g1;
    let xs = x.values();
    let mut h: Rational = (1..=3).map(|i| &xs[i - 1] * f.at(&[i])).sum();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let w = f.at(&[i]) + f.at(&[j]) - f.at(&[i, j]);
        h -= &xs[i - 1] * &xs[j - 1] * w;
    }
    h -= &dg * (x.product_over(0b111) + x.complement().product_over(0b111));
    let omega = optimal_omega_n3(f, x)?;
    Ok(h + dg * omega)
}

/// `f⁺⁺` of `min(|S|, 1)`: `min(1, Σx_i(1 − max x) + (max x)²)`.
pub fn f_pp_rank1(x: &MarginalVector) -> Rational {
    let m = x.max();
    let v = x.sum() * (Rational::one() - m) + m * m;
    Rational::min_of(&Rational::one(), &v).clone()
}

fn check_knp(n: usize, k: usize, p: &Rational) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} must lie in [1, {n}]")));
    }
    if !p.is_probability() {
        return Err(Error::OutOfRange(format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

/// Tight lower bounds on `E[(|S| − k)⁺]` when each element is included
/// with probability `p`: univariate `(np − k)⁺`, and under pairwise
/// independence `max((np − k)⁺, p[(np − k) + (1 − p)])`.
pub fn expected_excess_bounds(n: usize, k: usize, p: &Rational) -> Result<(Rational, Rational)> {
    check_knp(n, k, p)?;
    let d = Rational::from(n) * p - Rational::from(k);
    let uni = d.positive_part();
    let pair = p * &(&d + &(Rational::one() - p));
    let pairwise = Rational::max_of(&uni, &pair).clone();
    Ok((uni, pairwise))
}

/// `(f⁺, f⁺⁺)` of the `k`-uniform matroid rank at identical marginals `p`.
pub fn kuniform_identical(n: usize, k: usize, p: &Rational) -> Result<(Rational, Rational)> {
    let (_, pairwise) = expected_excess_bounds(n, k, p)?;
    let np = Rational::from(n) * p;
    let f_plus = Rational::min_of(&np, &Rational::from(k)).clone();
    Ok((f_plus, np - pairwise))
}

/// `α + β − 4αβ`, nonnegative when `α, β ∈ [0, 1]`, `α + β ≤ 1`.
pub fn ineq_i1(a: &Rational, b: &Rational) -> Rational {
    a + b - Rational::from(4) * a * b
}

/// `4α + 4β − 4αβ − 3`, nonnegative when `α, β ∈ [0, 1]`, `α + β ≥ 1`.
pub fn ineq_i2(a: &Rational, b: &Rational) -> Rational {
    let four = Rational::from(4);
    &four * a + &four * b - four * a * b - Rational::from(3)
}

/// `α + β − 4αβ/γ`, nonnegative when `α, β ≥ 0`, `α + β ≤ γ`, `γ > 0`.
pub fn ineq_i3(a: &Rational, b: &Rational, g: &Rational) -> Rational {
    a + b - Rational::from(4) * a * b / g
}
