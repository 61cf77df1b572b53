//! Correlation-gap reports, bound verdicts and the randomized ratio scan.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closedform;
use crate::error::{Error, Result};
use crate::extensions::{self, Caps, DualCertificate, Distribution, MarginalVector};
use crate::rational::Rational;
use crate::setfn::{self, Classification, SetFunction, SubpolytopeLabel};
use crate::subset;

/// `num / den` with `0/0 = 1`. A positive numerator over zero is an error.
pub fn gap_ratio(num: &Rational, den: &Rational) -> Result<Rational> {
    if den.is_zero() {
        if num.is_zero() {
            return Ok(Rational::one());
        }
        return Err(Error::Defect(format!("ratio {num}/0 with a positive numerator")));
    }
    Ok(num / den)
}

/// Certified rational enclosure `[lo, hi]` of `e / (e − 1)` from the
/// partial sums of `Σ 1/k!` up to `terms`.
pub fn e_ratio_enclosure(terms: u32) -> (Rational, Rational) {
    let mut fact = Rational::one();
    let mut e_lo = Rational::one();
    for k in 1..=terms {
        fact = &fact / &Rational::from(k as i64);
        e_lo += &fact;
    }
    // Tail Σ_{k>N} 1/k! < 2/(N+1)!.
    let e_hi = &e_lo + &(Rational::from(2) * &fact / Rational::from(terms as i64 + 1));
    let one = Rational::one();
    // e/(e−1) is decreasing in e.
    let lo = &e_hi / &(&e_hi - &one);
    let hi = &e_lo / &(&e_lo - &one);
    (lo, hi)
}

/// Decides `value ≤ (e/(e−1)) · base` exactly, refining the enclosure of
/// `e/(e−1)` until the comparison is settled.
pub fn within_e_ratio(value: &Rational, base: &Rational) -> bool {
    if base.is_zero() {
        return !value.is_positive();
    }
    let mut terms = 8;
    loop {
        let (lo, hi) = e_ratio_enclosure(terms);
        if *value <= &lo * base {
            return true;
        }
        if *value > &hi * base {
            return false;
        }
        // A rational value cannot equal an irrational multiple of a
        // nonzero rational, so refinement always terminates.
        terms += 8;
    }
}

/// A proven bound and whether its hypotheses hold for an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub id: &'static str,
    pub description: &'static str,
    /// Ratio the bound constrains: `"plus/F"` or `"plus/pp"`.
    pub ratio: &'static str,
    pub applies: bool,
    pub bound: Rational,
}

/// `c` with `f = c · min(|S|, k)` for some `k`, if `f` has that shape.
pub fn as_scaled_uniform_rank(f: &SetFunction) -> Option<(Rational, usize)> {
    let c = f.at(&[1]).clone();
    if !c.is_positive() || !f.value(0).is_zero() {
        return None;
    }
    let top = f.value(f.full_set()) / &c;
    let k = (1..=f.n()).find(|&k| Rational::from(k) == top)?;
    let rank = setfn::uniform_matroid_rank(f.n(), k).ok()?;
    let matches = f.values().iter().zip(rank.values()).all(|(v, r)| *v == &c * r);
    matches.then_some((c, k))
}

/// Evaluates each bound's hypotheses exactly. Hypotheses on sorted
/// marginals are checked after sorting ascending.
pub fn applicable_bounds(f: &SetFunction, x: &MarginalVector) -> Vec<Hypothesis> {
    let n = x.n();
    let ms = f.n() == n && f.is_monotone_submodular();
    let (s, _) = x.sorted_with_permutation();
    let xs = s.values();
    let one = Rational::one();
    let four_thirds = Rational::new(4, 3);
    let sum = x.sum();
    let head_sum: Rational = xs[..n - 1].iter().sum();
    let tail_sum: Rational = xs[1..].iter().sum();
    let nn = Rational::from(n);

    let singles: Vec<&Rational> = (1..=f.n().min(n)).map(|i| f.at(&[i])).collect();
    let fmax = singles.iter().max().copied();
    let xmax = x.max();
    let top_weight = (0..n).any(|i| &x.values()[i] == xmax && Some(singles[i]) == fmax);
    let equal_singletons = singles.windows(2).all(|w| w[0] == w[1]);

    let identical = x.is_identical();
    let p = &x.values()[0];
    let identical_ok = identical
        && n >= 2
        && (n == 2 || *p <= Rational::one() / (&nn - &one) || *p >= (&nn - Rational::from(2)) / (&nn - &one));

    let kuniform = if identical && f.n() == n { as_scaled_uniform_rank(f) } else { None };
    let k_bound = match &kuniform {
        Some((_, k)) => {
            let k4 = Rational::from(4 * *k);
            &k4 / &(&k4 - &one)
        }
        None => four_thirds.clone(),
    };
    let rank1 = matches!(as_scaled_uniform_rank(f), Some((_, 1))) && f.n() == n;

    vec![
        Hypothesis {
            id: "correlation-gap",
            description: "monotone submodular: f+/F <= e/(e-1)",
            ratio: "plus/F",
            applies: ms,
            bound: Rational::new(1582, 1000),
        },
        Hypothesis {
            id: "rank-one",
            description: "f = c*min(|S|,1): f++ matches its closed form and f+/f++ <= 4/3",
            ratio: "plus/pp",
            applies: rank1,
            bound: four_thirds.clone(),
        },
        Hypothesis {
            id: "at-most-three",
            description: "monotone submodular with n <= 3: f+/f++ <= 4/3",
            ratio: "plus/pp",
            applies: ms && n <= 3,
            bound: four_thirds.clone(),
        },
        Hypothesis {
            id: "small-probabilities",
            description: "sum of the n-1 smallest x <= 1 and max x <= 1/4",
            ratio: "plus/pp",
            applies: ms && head_sum <= one && xs[n - 1] <= Rational::new(1, 4),
            bound: four_thirds.clone(),
        },
        Hypothesis {
            id: "large-probabilities",
            description: "sum of the n-1 largest x >= n-2 and min x >= 3/4",
            ratio: "plus/pp",
            applies: ms && tail_sum >= &nn - Rational::from(2) && xs[0] >= Rational::new(3, 4),
            bound: four_thirds.clone(),
        },
        Hypothesis {
            id: "simplex-top-weight",
            description: "sum x <= 1 and an element of largest x has the largest f(i)",
            ratio: "plus/pp",
            applies: ms && sum <= one && top_weight,
            bound: four_thirds.clone(),
        },
        Hypothesis {
            id: "simplex-equal-singletons",
            description: "sum x <= 1 and all f(i) equal",
            ratio: "plus/pp",
            applies: ms && sum <= one && equal_singletons,
            bound: four_thirds.clone(),
        },
        Hypothesis {
            id: "identical-extreme",
            description: "identical x <= 1/(n-1) or >= (n-2)/(n-1)",
            ratio: "plus/pp",
            applies: ms && identical_ok,
            bound: four_thirds.clone(),
        },
        Hypothesis {
            id: "k-uniform",
            description: "f = c*min(|S|,k) with identical x: f+/f++ <= 4k/(4k-1)",
            ratio: "plus/pp",
            applies: kuniform.is_some(),
            bound: k_bound,
        },
    ]
}

/// A bound with its verdict on a computed instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    #[serde(flatten)]
    pub hypothesis: Hypothesis,
    pub value: Rational,
    /// `None` when the hypotheses do not hold.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionEntry {
    pub family: SubpolytopeLabel,
    pub region: closedform::RegionLabel,
}

/// Closed-form values on the original scale (via normalization).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub f_plus: Rational,
    pub f_pp: Rational,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub x: MarginalVector,
    pub monotone: bool,
    pub submodular: bool,
    #[serde(rename = "F")]
    pub multilinear: Rational,
    pub f_plus: Rational,
    pub f_pp: Rational,
    pub f_minus: Rational,
    pub f_mm: Rational,
    #[serde(rename = "ratio_plus_over_F")]
    pub ratio_plus_over_f: Rational,
    pub ratio_plus_over_pp: Rational,
    #[serde(rename = "ratio_pp_over_F")]
    pub ratio_pp_over_f: Rational,
    pub regions: Option<Vec<RegionEntry>>,
    pub subpolytopes: Option<Classification>,
    pub closed_form: Option<ClosedFormCheck>,
    pub f_plus_witness: Distribution,
    pub f_plus_certificate: Option<DualCertificate>,
    pub f_pp_witness: Distribution,
    pub f_pp_certificate: Option<DualCertificate>,
    pub applicable_bounds: Vec<BoundVerdict>,
}

/// `(f⁺, f⁺⁺)` from the closed forms, rescaled to `f`'s range.
pub fn closed_forms(f: &SetFunction, x: &MarginalVector) -> Result<(Rational, Rational)> {
    let g = setfn::normalize(f)?;
    let (gp, gpp) = match f.n() {
        2 => (closedform::f_plus_n2(&g, x)?, closedform::f_pp_n2(&g, x)?),
        3 => (closedform::f_plus_n3(&g, x)?, closedform::f_pp_n3(&g, x)?),
        n => return Err(Error::OutOfRange(format!("closed forms exist for n = 2, 3 (got {n})"))),
    };
    let base = f.value(0);
    let span = f.value(f.full_set()) - base;
    Ok((base + &span * &gp, base + &span * &gpp))
}

/// Caps and the reported rational over-approximation of `e/(e − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapOptions {
    pub caps: Caps,
    pub e_bound: Rational,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions { caps: Caps::default(), e_bound: Rational::new(1582, 1000) }
    }
}

pub fn gap_report(f: &SetFunction, x: &MarginalVector) -> Result<GapReport> {
    gap_report_with(f, x, &GapOptions::default())
}

/// The correlation-gap verdict compares `f⁺ ≤ e/(e − 1)·F` exactly via a
/// certified enclosure; `e_bound` is only the displayed bound.
pub fn gap_report_with(f: &SetFunction, x: &MarginalVector, options: &GapOptions) -> Result<GapReport> {
    let caps = &options.caps;
    let plus = caps.concave_closure(f, x)?;
    let pp = caps.upper_pairwise(f, x)?;
    let minus = caps.convex_closure(f, x)?;
    let mm = caps.lower_pairwise(f, x)?;
    let multilinear = extensions::multilinear(f, x)?;
    let ratio_plus_over_f = gap_ratio(&plus.value, &multilinear)?;
    let ratio_plus_over_pp = gap_ratio(&plus.value, &pp.value)?;
    let ratio_pp_over_f = gap_ratio(&pp.value, &multilinear)?;
    let monotone = setfn::check_monotone(f).holds();
    let submodular = setfn::check_submodular(f).holds();
    let n = f.n();

    let (regions, subpolytopes) = if n == 3 {
        let regions = SubpolytopeLabel::F_FAMILIES
            .iter()
            .map(|&family| Ok(RegionEntry { family, region: closedform::region_n3(x, family)? }))
            .collect::<Result<Vec<_>>>()?;
        let class = setfn::normalize(f).ok().and_then(|g| setfn::classify_subpolytope(&g).ok());
        (Some(regions), class)
    } else {
        (None, None)
    };

    let closed_form = if (2..=3).contains(&n) && monotone && submodular && f.value(f.full_set()) > f.value(0) {
        let (cp, cpp) = closed_forms(f, x)?;
        let agrees = cp == plus.value && cpp == pp.value;
        if !agrees {
            log::warn!("closed forms {cp}, {cpp} disagree with LP values {}, {}", plus.value, pp.value);
        }
        Some(ClosedFormCheck { f_plus: cp, f_pp: cpp, agrees })
    } else {
        None
    };

    let bounds = applicable_bounds(f, x)
        .into_iter()
        .map(|h| {
            let value = if h.ratio == "plus/F" { ratio_plus_over_f.clone() } else { ratio_plus_over_pp.clone() };
            let holds = h.applies.then(|| {
                if h.id == "correlation-gap" {
                    within_e_ratio(&plus.value, &multilinear)
                } else if h.id == "rank-one" {
                    let c = f.at(&[1]);
                    value <= h.bound && pp.value == c * &closedform::f_pp_rank1(x)
                } else {
                    value <= h.bound
                }
            });
            let mut hypothesis = h;
            if hypothesis.id == "correlation-gap" {
                hypothesis.bound = options.e_bound.clone();
            }
            BoundVerdict { hypothesis, value, holds }
        })
        .collect();

    Ok(GapReport {
        n,
        x: x.clone(),
        monotone,
        submodular,
        multilinear,
        f_plus: plus.value,
        f_pp: pp.value,
        f_minus: minus.value,
        f_mm: mm.value,
        ratio_plus_over_f,
        ratio_plus_over_pp,
        ratio_pp_over_f,
        regions,
        subpolytopes,
        closed_form,
        f_plus_witness: plus.witness,
        f_plus_certificate: plus.certificate,
        f_pp_witness: pp.witness,
        f_pp_certificate: pp.certificate,
        applicable_bounds: bounds,
    })
}

/// Instance families for [`scan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Random convex combinations of the eight `n = 3` extreme points.
    ExtremalMixN3,
    /// Random weighted coverage functions on `n` elements over `m` items.
    CoverageRandom { n: usize, m: usize },
    /// `min(|S|, k)` with random marginals.
    MatroidRank { n: usize, k: usize },
    /// Fixed instances, evaluated in order.
    Corpus(Vec<(SetFunction, MarginalVector)>),
}

impl Generator {
    pub fn name(&self) -> String {
        match self {
            Generator::ExtremalMixN3 => "extremal-mix-n3".into(),
            Generator::CoverageRandom { n, m } => format!("coverage-random({n},{m})"),
            Generator::MatroidRank { n, k } => format!("matroid-rank({n},{k})"),
            Generator::Corpus(c) => format!("corpus({})", c.len()),
        }
    }

    fn ground_size(&self) -> Option<usize> {
        match self {
            Generator::ExtremalMixN3 => Some(3),
            Generator::CoverageRandom { n, .. } | Generator::MatroidRank { n, .. } => Some(*n),
            Generator::Corpus(_) => None,
        }
    }

    /// The instance at `index` for `seed`; independent of evaluation order.
    pub fn instance(&self, seed: u64, index: usize) -> Result<(SetFunction, MarginalVector)> {
        let mut rng = instance_rng(seed, index);
        match self {
            Generator::ExtremalMixN3 => {
                let f = random_extremal_mix(&mut rng)?;
                let x = random_marginals(&mut rng, 3);
                Ok((f, x))
            }
            Generator::CoverageRandom { n, m } => {
                let f = random_coverage(&mut rng, *n, *m)?;
                let x = random_marginals(&mut rng, *n);
                Ok((f, x))
            }
            Generator::MatroidRank { n, k } => {
                let f = setfn::uniform_matroid_rank(*n, *k)?;
                let x = random_marginals(&mut rng, *n);
                Ok((f, x))
            }
            Generator::Corpus(items) => items
                .get(index)
                .cloned()
                .ok_or_else(|| Error::OutOfRange(format!("corpus has no instance {index}"))),
        }
    }
}

/// Independent stream per `(seed, index)`.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Marginals on a grid `{0, 1/d, ..., 1}` with `d` drawn per instance.
pub fn random_marginals<R: Rng>(rng: &mut R, n: usize) -> MarginalVector {
    const DENOMS: [i64; 8] = [2, 3, 4, 5, 6, 8, 10, 12];
    let d = DENOMS[rng.gen_range(0..DENOMS.len())];
    let x = (0..n).map(|_| Rational::new(rng.gen_range(0..=d), d)).collect();
    MarginalVector::new(x).expect("grid points lie in [0, 1]")
}

/// Uniform-ish Dirichlet weights on a lattice: sorted integer cuts of
/// `{0..=scale}` with `parts − 1` cut points.
pub fn random_simplex_weights<R: Rng>(rng: &mut R, parts: usize, scale: i64) -> Vec<Rational> {
    let mut cuts: Vec<i64> = (0..parts - 1).map(|_| rng.gen_range(0..=scale)).collect();
    cuts.push(0);
    cuts.push(scale);
    cuts.sort_unstable();
    cuts.windows(2).map(|w| Rational::new(w[1] - w[0], scale)).collect()
}

/// A random normalized monotone submodular function on three elements.
pub fn random_extremal_mix<R: Rng>(rng: &mut R) -> Result<SetFunction> {
    let catalog = setfn::extremal_catalog(3, None)?;
    let w = random_simplex_weights(rng, catalog.len(), 60);
    SetFunction::from_fn(3, |s| catalog.iter().zip(&w).map(|(e, wi)| wi * e.value(s)).sum())
}

/// A random weighted coverage function with integer weights in `1..=5`.
pub fn random_coverage<R: Rng>(rng: &mut R, n: usize, m: usize) -> Result<SetFunction> {
    if m == 0 {
        return Err(Error::OutOfRange("coverage needs at least one item".into()));
    }
    let weights: Vec<Rational> = (0..m).map(|_| Rational::from(rng.gen_range(1..=5i64))).collect();
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut items: Vec<usize> = (1..=m).filter(|_| rng.gen_bool(0.5)).collect();
            if items.is_empty() {
                items.push(rng.gen_range(1..=m));
            }
            items
        })
        .collect();
    setfn::weighted_coverage(n, &weights, &covers)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub index: usize,
    pub ratio: Rational,
    pub f_plus: Rational,
    pub f_pp: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanFinding {
    pub index: usize,
    pub ratio: Rational,
    pub f: Vec<Rational>,
    pub x: MarginalVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub generator: String,
    pub seed: u64,
    pub bound: Rational,
    pub instances_evaluated: usize,
    pub max_ratio: Rational,
    pub argmax_index: Option<usize>,
    pub argmax_instance: Option<(Vec<Rational>, MarginalVector)>,
    /// Instances with ratio above `bound`.
    pub violations: Vec<ScanFinding>,
    #[serde(skip)]
    pub records: Vec<ScanRecord>,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub generator: Generator,
    pub count: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub bound: Rational,
    pub caps: Caps,
}

impl ScanConfig {
    pub fn new(generator: Generator, count: usize, seed: u64) -> ScanConfig {
        ScanConfig { generator, count, seed, workers: None, bound: Rational::new(4, 3), caps: Caps::default() }
    }
}

/// Evaluates `f⁺/f⁺⁺` for `(f, x)` by LP.
pub fn pairwise_gap(f: &SetFunction, x: &MarginalVector, caps: &Caps) -> Result<(Rational, Rational, Rational)> {
    let plus = caps.concave_closure(f, x)?.value;
    let pp = caps.upper_pairwise(f, x)?.value;
    let ratio = gap_ratio(&plus, &pp)?;
    Ok((ratio, plus, pp))
}

pub fn scan(generator: Generator, count: usize, seed: u64) -> Result<ScanResult> {
    scan_with(&ScanConfig::new(generator, count, seed))
}

pub fn scan_with(config: &ScanConfig) -> Result<ScanResult> {
    if let Some(n) = config.generator.ground_size() {
        if n > config.caps.pairwise {
            return Err(Error::CapExceeded { n, cap: config.caps.pairwise });
        }
    }
    let count = match &config.generator {
        Generator::Corpus(items) => items.len(),
        _ => config.count,
    };
    let evaluate = |index: usize| -> Result<(ScanRecord, SetFunction, MarginalVector)> {
        let (f, x) = config.generator.instance(config.seed, index)?;
        let (ratio, f_plus, f_pp) = pairwise_gap(&f, &x, &config.caps)?;
        Ok((ScanRecord { index, ratio, f_plus, f_pp }, f, x))
    };
    let run = || (0..count).into_par_iter().map(evaluate).collect::<Result<Vec<_>>>();
    let evaluated = match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Defect(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let mut max_ratio = Rational::zero();
    let mut argmax: Option<usize> = None;
    let mut violations = Vec::new();
    for (pos, (rec, f, x)) in evaluated.iter().enumerate() {
        if argmax.is_none() || rec.ratio > max_ratio {
            max_ratio = rec.ratio.clone();
            argmax = Some(pos);
        }
        if rec.ratio > config.bound {
            violations.push(ScanFinding { index: rec.index, ratio: rec.ratio.clone(), f: f.values().to_vec(), x: x.clone() });
        }
    }
    let argmax_instance = argmax.map(|pos| (evaluated[pos].1.values().to_vec(), evaluated[pos].2.clone()));
    Ok(ScanResult {
        generator: config.generator.name(),
        seed: config.seed,
        bound: config.bound.clone(),
        instances_evaluated: evaluated.len(),
        max_ratio,
        argmax_index: argmax.map(|pos| evaluated[pos].0.index),
        argmax_instance,
        violations,
        records: evaluated.into_iter().map(|(r, _, _)| r).collect(),
    })
}

/// One unbounded-gap example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemoCase {
    pub name: &'static str,
    pub f: Vec<Rational>,
    pub x: MarginalVector,
    pub f_plus: Rational,
    #[serde(rename = "F")]
    pub multilinear: Rational,
    pub ratio: Rational,
    pub expected_f_plus: Rational,
    #[serde(rename = "expected_F")]
    pub expected_multilinear: Rational,
}

/// Gap `f⁺/F = 1/ε` for a non-monotone submodular function
/// `(0, η, 0, 0)` at `x = (ε, 1 − ε)` and a monotone non-submodular one
/// `(0, 0, 0, η)` at `x = (ε, ε)`.
pub fn counterexample_demos(epsilon: &Rational, eta: &Rational) -> Result<Vec<DemoCase>> {
    if !epsilon.is_positive() || *epsilon > Rational::one() {
        return Err(Error::OutOfRange(format!("epsilon = {epsilon} outside (0, 1]")));
    }
    if !eta.is_positive() {
        return Err(Error::OutOfRange(format!("eta = {eta} must be positive")));
    }
    let zero = Rational::zero;
    let cases = [
        (
            "non-monotone",
            vec![zero(), eta.clone(), zero(), zero()],
            vec![epsilon.clone(), Rational::one() - epsilon],
        ),
        (
            "non-submodular",
            vec![zero(), zero(), zero(), eta.clone()],
            vec![epsilon.clone(), epsilon.clone()],
        ),
    ];
    cases
        .into_iter()
        .map(|(name, values, x)| {
            let f = setfn::make_setfn(2, values)?;
            let x = MarginalVector::new(x)?;
            let f_plus = extensions::concave_closure(&f, &x)?.value;
            let multilinear = extensions::multilinear(&f, &x)?;
            Ok(DemoCase {
                name,
                ratio: gap_ratio(&f_plus, &multilinear)?,
                f: f.values().to_vec(),
                x,
                f_plus,
                multilinear,
                expected_f_plus: eta * epsilon,
                expected_multilinear: eta * &(epsilon * epsilon),
            })
        })
        .collect()
}

/// The `n + 2`-point pairwise independent distribution for `x = 1/n`:
/// `θ(∅) = θ({i}) = 1/n − 1/n²`, `θ([n]) = 1/n²`.
pub fn rank1_witness(n: usize) -> Result<Distribution> {
    if n < 2 {
        return Err(Error::OutOfRange("needs n >= 2".into()));
    }
    let inv = Rational::new(1, n as i64);
    let sq = &inv * &inv;
    let single = &inv - &sq;
    let atoms = std::iter::once((0, single.clone()))
        .chain((0..n).map(|i| (1usize << i, single.clone())))
        .chain(std::iter::once((subset::full(n), sq)));
    Distribution::new(n, atoms)
}
