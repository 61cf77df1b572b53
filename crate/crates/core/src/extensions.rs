//! Multilinear extension and the moment-constrained LP extensions.
//!
//! The concave closure `f⁺` maximizes `E[f(S)]` over all distributions on
//! subsets with marginals `x`; the upper pairwise extension `f⁺⁺` adds the
//! constraints `P(i, j ∈ S) = x_i x_j`. The convex closure `f⁻` and lower
//! pairwise extension `f⁻⁻` minimize instead.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, Sense, Status};
use crate::rational::Rational;
use crate::setfn::{SetFunction, Verdict};
use crate::subset::{self, Subset};

/// Per-element inclusion probabilities, each in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MarginalVector(Vec<Rational>);

impl MarginalVector {
    pub fn new(x: Vec<Rational>) -> Result<MarginalVector> {
        if x.is_empty() {
            return Err(Error::OutOfRange("marginal vector is empty".into()));
        }
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| !v.is_probability()) {
            return Err(Error::OutOfRange(format!("x[{}] = {v} is outside [0, 1]", i + 1)));
        }
        Ok(MarginalVector(x))
    }

    /// `n` copies of `p`.
    pub fn identical(n: usize, p: Rational) -> Result<MarginalVector> {
        MarginalVector::new(vec![p; n])
    }

    /// Indicator vector of `s`.
    pub fn indicator(n: usize, s: Subset) -> MarginalVector {
        MarginalVector(
            (0..n)
                .map(|i| if s >> i & 1 == 1 { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// `x_i`, 1-based.
    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i - 1]
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn max(&self) -> &Rational {
        self.0.iter().max().expect("nonempty")
    }

    /// `Π_{i∈S} x_i`.
    pub fn product_over(&self, s: Subset) -> Rational {
        (0..self.n()).filter(|i| s >> i & 1 == 1).map(|i| &self.0[i]).product()
    }

    pub fn complement(&self) -> MarginalVector {
        MarginalVector(self.0.iter().map(|v| Rational::one() - v).collect())
    }

    /// Ascending order together with the permutation: `sorted[k] = x[perm[k]]`
    /// (0-based indices). Ties keep their original order.
    pub fn sorted_with_permutation(&self) -> (MarginalVector, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.n()).collect();
        perm.sort_by(|&a, &b| self.0[a].cmp(&self.0[b]).then(a.cmp(&b)));
        (MarginalVector(perm.iter().map(|&i| self.0[i].clone()).collect()), perm)
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_identical(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

/// A probability distribution over subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    n: usize,
    atoms: BTreeMap<Subset, Rational>,
}

impl Distribution {
    /// Builds a distribution; zero atoms are dropped and repeated sets merged.
    pub fn new(n: usize, atoms: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Distribution> {
        if n > crate::setfn::MAX_GROUND {
            return Err(Error::CapExceeded { n, cap: crate::setfn::MAX_GROUND });
        }
        let mut map: BTreeMap<Subset, Rational> = BTreeMap::new();
        for (s, p) in atoms {
            if s >> n != 0 {
                return Err(Error::OutOfRange(format!("atom {s} is not a subset of [{n}]")));
            }
            if p.is_negative() {
                return Err(Error::NegativeValue { index: s, value: p });
            }
            *map.entry(s).or_default() += p;
        }
        map.retain(|_, p| !p.is_zero());
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::Precondition(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Distribution { n, atoms: map })
    }

    pub fn point_mass(n: usize, s: Subset) -> Distribution {
        Distribution { n, atoms: BTreeMap::from([(s, Rational::one())]) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &BTreeMap<Subset, Rational> {
        &self.atoms
    }

    pub fn prob(&self, s: Subset) -> Rational {
        self.atoms.get(&s).cloned().unwrap_or_default()
    }

    /// `P(T ⊆ S)`, the cylinder moment of `t`.
    pub fn moment(&self, t: Subset) -> Rational {
        self.atoms.iter().filter(|(s, _)| *s & t == t).map(|(_, p)| p).sum()
    }

    /// `P(i ∈ S)`, 1-based.
    pub fn marginal(&self, i: usize) -> Rational {
        self.moment(1 << (i - 1))
    }

    pub fn marginals(&self) -> Vec<Rational> {
        (1..=self.n).map(|i| self.marginal(i)).collect()
    }

    pub fn expectation(&self, f: &SetFunction) -> Rational {
        self.atoms.iter().map(|(s, p)| p * f.value(*s)).sum()
    }

    /// Relabels elements: element `i` (0-based) of `self` becomes element
    /// `map[i]` of the result.
    pub fn relabel(&self, map: &[usize]) -> Distribution {
        let atoms = self
            .atoms
            .iter()
            .map(|(s, p)| {
                let t = (0..self.n).filter(|i| s >> i & 1 == 1).fold(0, |acc, i| acc | 1 << map[i]);
                (t, p.clone())
            })
            .collect();
        Distribution { n: self.n, atoms }
    }

    /// The distribution of the complement `[n] \ S`.
    pub fn complemented(&self) -> Distribution {
        let full = subset::full(self.n);
        Distribution {
            n: self.n,
            atoms: self.atoms.iter().map(|(s, p)| (full ^ s, p.clone())).collect(),
        }
    }
}

/// Serialized as `{"n": .., "atoms": [{"set": bitmask, "p": "p/q"}, ..]}`.
impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Atom<'a> {
            set: Subset,
            p: &'a Rational,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            n: usize,
            atoms: Vec<Atom<'a>>,
        }
        Doc { n: self.n, atoms: self.atoms.iter().map(|(s, p)| Atom { set: *s, p }).collect() }
            .serialize(serializer)
    }
}

/// Dual solution `(λ₀, λ_i, λ_ij)` bounding `f⁺` (no pair terms) or `f⁺⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCertificate {
    pub lambda0: Rational,
    pub lambda_i: Vec<Rational>,
    /// Pair multipliers in lexicographic pair order; present for `f⁺⁺`.
    pub lambda_ij: Option<Vec<Rational>>,
}

impl DualCertificate {
    pub fn n(&self) -> usize {
        self.lambda_i.len()
    }

    /// `λ₀ + Σ_{i∈S} λ_i + Σ_{i<j∈S} λ_ij`.
    pub fn evaluate_at(&self, s: Subset) -> Rational {
        let mut total = self.lambda0.clone();
        for (i, l) in self.lambda_i.iter().enumerate() {
            if s >> i & 1 == 1 {
                total += l;
            }
        }
        if let Some(pairs) = &self.lambda_ij {
            for ((i, j), l) in subset::pairs(self.n()).into_iter().zip(pairs) {
                if s >> i & 1 == 1 && s >> j & 1 == 1 {
                    total += l;
                }
            }
        }
        total
    }

    /// Dual objective `λ₀ + Σ λ_i x_i + Σ λ_ij x_i x_j`.
    pub fn objective(&self, x: &MarginalVector) -> Rational {
        let xs = x.values();
        let mut total = self.lambda0.clone();
        for (l, xi) in self.lambda_i.iter().zip(xs) {
            total += l * xi;
        }
        if let Some(pairs) = &self.lambda_ij {
            for ((i, j), l) in subset::pairs(self.n()).into_iter().zip(pairs) {
                total += l * &(&xs[i] * &xs[j]);
            }
        }
        total
    }
}

/// A subset where the dual constraint fails: `bound < f(set)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualViolation {
    pub set: Subset,
    pub bound: Rational,
    pub value: Rational,
}

/// Exhaustively checks `λ₀ + Σ_{i∈S} λ_i (+ Σ λ_ij) ≥ f(S)` for all `S`.
pub fn check_dual_feasible(f: &SetFunction, cert: &DualCertificate) -> Result<Verdict<DualViolation>> {
    if cert.n() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), found: cert.n() });
    }
    if let Some(p) = &cert.lambda_ij {
        let want = f.n() * (f.n() - 1) / 2;
        if p.len() != want {
            return Err(Error::DimensionMismatch { expected: want, found: p.len() });
        }
    }
    for s in 0..1usize << f.n() {
        let bound = cert.evaluate_at(s);
        if &bound < f.value(s) {
            return Ok(Verdict::Violated(DualViolation { set: s, bound, value: f.value(s).clone() }));
        }
    }
    Ok(Verdict::Holds)
}

/// Value of an LP extension with its optimal distribution and, for the
/// maximizing extensions, the matching dual certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub value: Rational,
    pub witness: Distribution,
    pub certificate: Option<DualCertificate>,
}

/// `F(x) = Σ_S f(S) Π_{i∈S} x_i Π_{i∉S} (1 − x_i)`.
pub fn multilinear(f: &SetFunction, x: &MarginalVector) -> Result<Rational> {
    check_dims(f, x)?;
    let n = f.n();
    // Product weights built one element at a time; element i lands on bit i − 1.
    let mut weights = vec![Rational::one()];
    for xi in x.values() {
        let not = Rational::one() - xi;
        let mut next = Vec::with_capacity(weights.len() * 2);
        next.extend(weights.iter().map(|w| w * &not));
        next.extend(weights.iter().map(|w| w * xi));
        weights = next;
    }
    Ok((0..1usize << n)
        .filter(|&s| !weights[s].is_zero())
        .map(|s| &weights[s] * f.value(s))
        .sum())
}

fn check_dims(f: &SetFunction, x: &MarginalVector) -> Result<()> {
    if f.n() != x.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), found: x.n() });
    }
    Ok(())
}

/// Ground-size limits for the LP extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for `f⁺` and `f⁻`.
    pub plus: usize,
    /// Largest `n` for `f⁺⁺` and `f⁻⁻`.
    pub pairwise: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { plus: 12, pairwise: 10 }
    }
}

/// Rows: total mass, one per marginal, and (if `pairwise`) one per pair.
fn moment_program(f: &SetFunction, x: &MarginalVector, sense: Sense, pairwise: bool) -> LinearProgram {
    let n = f.n();
    let cols = 1usize << n;
    let xs = x.values();
    let indicator = |pred: &dyn Fn(Subset) -> bool| -> Vec<Rational> {
        (0..cols).map(|s| if pred(s) { Rational::one() } else { Rational::zero() }).collect()
    };
    let mut rows = vec![indicator(&|_| true)];
    let mut rhs = vec![Rational::one()];
    for i in 0..n {
        rows.push(indicator(&|s| s >> i & 1 == 1));
        rhs.push(xs[i].clone());
    }
    if pairwise {
        for (i, j) in subset::pairs(n) {
            rows.push(indicator(&|s| s >> i & 1 == 1 && s >> j & 1 == 1));
            rhs.push(&xs[i] * &xs[j]);
        }
    }
    LinearProgram::new(sense, f.values().to_vec(), rows, rhs)
}

fn solve_moment(f: &SetFunction, x: &MarginalVector, sense: Sense, pairwise: bool) -> Result<Extension> {
    let program = moment_program(f, x, sense, pairwise);
    let sol = lp::solve(&program)?;
    if sol.status != Status::Optimal {
        // Marginal-only and pairwise systems both contain the product
        // distribution, and the objective is bounded on the simplex.
        return Err(Error::Defect(format!("moment LP reported {:?}", sol.status)));
    }
    let n = f.n();
    let witness = Distribution::new(n, sol.primal.iter().cloned().enumerate())?;
    let certificate = match sense {
        Sense::Max => Some(DualCertificate {
            lambda0: sol.dual[0].clone(),
            lambda_i: sol.dual[1..=n].to_vec(),
            lambda_ij: pairwise.then(|| sol.dual[n + 1..].to_vec()),
        }),
        Sense::Min => None,
    };
    Ok(Extension { value: sol.value, witness, certificate })
}

impl Caps {
    fn guard(&self, f: &SetFunction, x: &MarginalVector, cap: usize) -> Result<()> {
        check_dims(f, x)?;
        if f.n() > cap {
            return Err(Error::CapExceeded { n: f.n(), cap });
        }
        Ok(())
    }

    pub fn concave_closure(&self, f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
        self.guard(f, x, self.plus)?;
        solve_moment(f, x, Sense::Max, false)
    }

    pub fn upper_pairwise(&self, f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
        self.guard(f, x, self.pairwise)?;
        solve_moment(f, x, Sense::Max, true)
    }

    pub fn convex_closure(&self, f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
        self.guard(f, x, self.plus)?;
        solve_moment(f, x, Sense::Min, false)
    }

    pub fn lower_pairwise(&self, f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
        self.guard(f, x, self.pairwise)?;
        solve_moment(f, x, Sense::Min, true)
    }
}

/// `f⁺(x)` under the default caps.
pub fn concave_closure(f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
    Caps::default().concave_closure(f, x)
}

/// `f⁺⁺(x)` under the default caps.
pub fn upper_pairwise(f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
    Caps::default().upper_pairwise(f, x)
}

/// `f⁻(x)` under the default caps.
pub fn convex_closure(f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
    Caps::default().convex_closure(f, x)
}

/// `f⁻⁻(x)` under the default caps.
pub fn lower_pairwise(f: &SetFunction, x: &MarginalVector) -> Result<Extension> {
    Caps::default().lower_pairwise(f, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::setfn::{make_setfn, uniform_matroid_rank};

    fn mv(v: &[(i64, i64)]) -> MarginalVector {
        MarginalVector::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    fn anchor_functions() -> (SetFunction, SetFunction) {
        let f1 = make_setfn(3, vec![q(0, 1), q(1, 3), q(1, 2), q(3, 4), q(3, 5), q(4, 5), q(5, 6), q(1, 1)]).unwrap();
        let f2 = SetFunction::from_set_order_n3([
            q(0, 1), q(1, 3), q(1, 2), q(1, 2), q(3, 4), q(4, 5), q(5, 6), q(1, 1),
        ])
        .unwrap();
        (f1, f2)
    }

    #[test]
    fn marginal_vector_validation() {
        assert!(MarginalVector::new(vec![q(3, 2)]).is_err());
        assert!(MarginalVector::new(vec![q(-1, 2)]).is_err());
        assert!(MarginalVector::new(vec![]).is_err());
        let (s, p) = mv(&[(1, 2), (1, 4), (1, 3)]).sorted_with_permutation();
        assert_eq!(p, vec![1, 2, 0]);
        assert!(s.is_sorted());
    }

    #[test]
    fn multilinear_examples() {
        let r1 = uniform_matroid_rank(3, 1).unwrap();
        assert_eq!(multilinear(&r1, &mv(&[(1, 3); 3])).unwrap(), q(19, 27));
        let r2 = uniform_matroid_rank(2, 1).unwrap();
        assert_eq!(multilinear(&r2, &mv(&[(1, 2), (1, 2)])).unwrap(), q(3, 4));
        let (f1, _) = anchor_functions();
        for s in 0..8 {
            assert_eq!(&multilinear(&f1, &MarginalVector::indicator(3, s)).unwrap(), f1.value(s));
        }
        // Asymmetric x pins the bit order.
        let f = make_setfn(2, vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(multilinear(&f, &mv(&[(1, 3), (1, 4)])).unwrap(), q(1, 4));
    }

    #[test]
    fn anchor_function_values() {
        let (f1, f2) = anchor_functions();
        let x = mv(&[(1, 2); 3]);
        assert_eq!(concave_closure(&f1, &x).unwrap().value, q(27, 40));
        assert_eq!(upper_pairwise(&f1, &x).unwrap().value, q(73, 120));
        assert_eq!(concave_closure(&f2, &x).unwrap().value, q(13, 20));
        assert_eq!(upper_pairwise(&f2, &x).unwrap().value, q(143, 240));
    }

    #[test]
    fn rank1_pairwise_value() {
        let r1 = uniform_matroid_rank(3, 1).unwrap();
        assert_eq!(upper_pairwise(&r1, &mv(&[(1, 3); 3])).unwrap().value, q(7, 9));
    }

    #[test]
    fn lower_extensions() {
        let r = uniform_matroid_rank(2, 1).unwrap();
        assert_eq!(convex_closure(&r, &mv(&[(1, 2), (1, 2)])).unwrap().value, q(1, 2));
        let modular = uniform_matroid_rank(3, 3).unwrap();
        let x = mv(&[(1, 5), (2, 3), (1, 2)]);
        let s = x.sum();
        assert_eq!(convex_closure(&modular, &x).unwrap().value, s);
        assert_eq!(concave_closure(&modular, &x).unwrap().value, s);
    }

    #[test]
    fn witnesses_and_certificates_agree() {
        let (f1, _) = anchor_functions();
        let x = mv(&[(1, 3), (1, 2), (3, 4)]);
        for ext in [concave_closure(&f1, &x).unwrap(), upper_pairwise(&f1, &x).unwrap()] {
            assert_eq!(ext.witness.marginals(), x.values());
            assert_eq!(ext.witness.expectation(&f1), ext.value);
            let cert = ext.certificate.unwrap();
            assert!(check_dual_feasible(&f1, &cert).unwrap().holds());
            assert_eq!(cert.objective(&x), ext.value);
        }
    }

    #[test]
    fn dual_feasibility_examples() {
        let (f1, _) = anchor_functions();
        let cert = DualCertificate {
            lambda0: Rational::zero(),
            lambda_i: vec![q(1, 3), q(1, 2), q(3, 5)],
            lambda_ij: None,
        };
        assert!(check_dual_feasible(&f1, &cert).unwrap().holds());
        let zero = DualCertificate { lambda0: Rational::zero(), lambda_i: vec![Rational::zero(); 3], lambda_ij: None };
        let r = uniform_matroid_rank(3, 1).unwrap();
        assert_eq!(check_dual_feasible(&r, &zero).unwrap().witness().unwrap().set, 0b001);
    }

    #[test]
    fn caps_enforced() {
        let f = uniform_matroid_rank(4, 2).unwrap();
        let x = MarginalVector::identical(4, q(1, 2)).unwrap();
        let caps = Caps { plus: 3, pairwise: 3 };
        assert_eq!(caps.concave_closure(&f, &x), Err(Error::CapExceeded { n: 4, cap: 3 }));
        assert_eq!(caps.lower_pairwise(&f, &x), Err(Error::CapExceeded { n: 4, cap: 3 }));
        assert!(concave_closure(&f, &mv(&[(1, 2)])).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(2, [(0, q(1, 2)), (3, q(1, 3))]).is_err());
        assert!(Distribution::new(2, [(4, q(1, 1))]).is_err());
        let d = Distribution::new(2, [(0, q(1, 2)), (3, q(1, 2)), (1, q(0, 1))]).unwrap();
        assert_eq!(d.atoms().len(), 2);
        assert_eq!(d.moment(3), q(1, 2));
        assert_eq!(d.complemented().prob(3), q(1, 2));
    }
}
