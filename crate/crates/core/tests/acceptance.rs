//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line
//! with its tolerance and time limit; the process fails if any criterion does.
//!
//! Run a subset with `cargo test -p pairgap --test acceptance -- <substring>`.

use std::time::{Duration, Instant};

use pairgap::closedform::{self, RegionLabel};
use pairgap::distributions::{self, Regime};
use pairgap::extensions::{self, MarginalVector};
use pairgap::gap::{self, Generator};
use pairgap::setfn::{self, SetFunction};
use pairgap::{q, Rational, SubpolytopeLabel};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn rng(criterion: u64, index: usize) -> ChaCha8Rng {
    gap::instance_rng(0xACCE_0000 + criterion, index)
}

fn rational_in<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    let t = Rational::new(rng.gen_range(0..=d), d);
    lo + &(&(hi - lo) * &t)
}

fn unit_vector<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> MarginalVector {
    let (zero, one) = (Rational::zero(), Rational::one());
    MarginalVector::new((0..n).map(|_| rational_in(rng, &zero, &one, max_den)).collect()).unwrap()
}

fn anchor_functions() -> (SetFunction, SetFunction) {
    let f1 = setfn::make_setfn(3, vec![q(0, 1), q(1, 3), q(1, 2), q(3, 4), q(3, 5), q(4, 5), q(5, 6), q(1, 1)]).unwrap();
    let f2 = SetFunction::from_set_order_n3([q(0, 1), q(1, 3), q(1, 2), q(1, 2), q(3, 4), q(4, 5), q(5, 6), q(1, 1)])
        .unwrap();
    (f1, f2)
}

fn distribution_dependent_anchors() -> Outcome {
    let (f1, f2) = anchor_functions();
    let x = MarginalVector::identical(3, q(1, 2)).map_err(err)?;
    let got = [
        extensions::concave_closure(&f1, &x).map_err(err)?.value,
        extensions::upper_pairwise(&f1, &x).map_err(err)?.value,
        extensions::concave_closure(&f2, &x).map_err(err)?.value,
        extensions::upper_pairwise(&f2, &x).map_err(err)?.value,
    ];
    let want = [q(27, 40), q(73, 120), q(13, 20), q(143, 240)];
    ensure!(got == want, "got {got:?}, want {want:?}");
    Ok(format!("f1: f+ = {}, f++ = {}; f2: f+ = {}, f++ = {}", got[0], got[1], got[2], got[3]))
}

/// Random monotone submodular `n = 2` function, not normalized.
fn random_n2<R: Rng>(rng: &mut R) -> SetFunction {
    let zero = Rational::zero();
    let one = Rational::one();
    let base = rational_in(rng, &zero, &one, 6);
    let span = rational_in(rng, &q(1, 8), &q(3, 1), 8);
    let a = rational_in(rng, &zero, &one, 12);
    let b = rational_in(rng, &(&one - &a), &one, 12);
    let g = [zero, a, b, one];
    SetFunction::from_fn(2, |s| &base + &(&span * &g[s])).unwrap()
}

fn n2_closed_forms() -> Outcome {
    for i in 0..1000 {
        let mut r = rng(2, i);
        let f = random_n2(&mut r);
        let x = unit_vector(&mut r, 2, 16);
        let (cp, cpp) = gap::closed_forms(&f, &x).map_err(err)?;
        let lp_plus = extensions::concave_closure(&f, &x).map_err(err)?.value;
        let lp_pp = extensions::upper_pairwise(&f, &x).map_err(err)?.value;
        ensure!(cp == lp_plus && cpp == lp_pp, "instance {i}: f = {f}, x = {x:?}: closed ({cp}, {cpp}) vs LP ({lp_plus}, {lp_pp})");
    }
    Ok("1000 instances, f+ and f++ agree exactly".into())
}

fn n3_closed_forms() -> Outcome {
    for i in 0..1000 {
        let mut r = rng(3, i);
        let f = gap::random_extremal_mix(&mut r).map_err(err)?;
        let x = unit_vector(&mut r, 3, 24);
        let cp = closedform::f_plus_n3(&f, &x).map_err(err)?;
        let cpp = closedform::f_pp_n3(&f, &x).map_err(err)?;
        let lp_plus = extensions::concave_closure(&f, &x).map_err(err)?.value;
        let lp_pp = extensions::upper_pairwise(&f, &x).map_err(err)?.value;
        ensure!(cp == lp_plus && cpp == lp_pp, "instance {i}: f = {f}, x = {x:?}: closed ({cp}, {cpp}) vs LP ({lp_plus}, {lp_pp})");
    }
    Ok("1000 extremal-mix instances, f+ and f++ agree exactly".into())
}

fn n3_gap_bound() -> Outcome {
    let result = gap::scan(Generator::ExtremalMixN3, 10_000, 37).map_err(err)?;
    ensure!(result.instances_evaluated == 10_000, "evaluated {}", result.instances_evaluated);
    ensure!(result.violations.is_empty(), "{} violations, max {}", result.violations.len(), result.max_ratio);
    ensure!(result.max_ratio <= q(4, 3), "max ratio {}", result.max_ratio);
    let f = setfn::uniform_matroid_rank(3, 1).map_err(err)?;
    let x = MarginalVector::new(vec![q(1, 2), q(1, 4), q(1, 4)]).map_err(err)?;
    let (tight, _, _) = gap::pairwise_gap(&f, &x, &Default::default()).map_err(err)?;
    ensure!(tight == q(4, 3), "corpus ratio {tight}");
    Ok(format!("max over 10^4 = {} <= 4/3; tight corpus instance = {tight}", result.max_ratio))
}

fn rank1_formula() -> Outcome {
    for n in 2..=8 {
        let f = setfn::uniform_matroid_rank(n, 1).map_err(err)?;
        for i in 0..50 {
            let mut r = rng(5, n * 100 + i);
            let x = unit_vector(&mut r, n, 12);
            let lp = extensions::upper_pairwise(&f, &x).map_err(err)?.value;
            let formula = closedform::f_pp_rank1(&x);
            ensure!(lp == formula, "n = {n}, x = {x:?}: LP {lp} vs formula {formula}");
        }
    }
    Ok("n = 2..8, 50 points each, exact".into())
}

fn kuniform() -> Outcome {
    let mut checked = 0;
    let mut tight = Vec::new();
    for n in 2..=8usize {
        for k in 1..=n {
            let f = setfn::uniform_matroid_rank(n, k).map_err(err)?;
            let k4 = Rational::from(4 * k);
            let bound = &k4 / &(&k4 - Rational::one());
            for a in 0..=8 {
                let p = q(a, 8);
                let x = MarginalVector::identical(n, p.clone()).map_err(err)?;
                let (cp, cpp) = closedform::kuniform_identical(n, k, &p).map_err(err)?;
                let (ratio, lp_plus, lp_pp) = gap::pairwise_gap(&f, &x, &Default::default()).map_err(err)?;
                ensure!(cp == lp_plus && cpp == lp_pp, "n={n} k={k} p={p}: closed ({cp}, {cpp}) vs LP ({lp_plus}, {lp_pp})");
                ensure!(ratio <= bound, "n={n} k={k} p={p}: ratio {ratio} > {bound}");
                if (n, k, a) == (4, 2, 4) || (n, k, a) == (8, 4, 4) {
                    tight.push(ratio.clone());
                }
                checked += 1;
            }
        }
    }
    ensure!(tight == vec![q(8, 7), q(16, 15)], "tight cases gave {tight:?}");
    Ok(format!("{checked} (n, k, p) cases; tight cases 8/7 and 16/15"))
}

/// `n` values on a grid in `[0, 1/4]` whose `n − 1` smallest sum to at most 1.
fn small_marginals<R: Rng>(rng: &mut R, n: usize) -> MarginalVector {
    let quarter = q(1, 4);
    let mut v: Vec<Rational> = (0..n).map(|_| rational_in(rng, &Rational::zero(), &quarter, 20)).collect();
    loop {
        let mut s = v.clone();
        s.sort();
        if s[..n - 1].iter().sum::<Rational>() <= Rational::one() {
            return MarginalVector::new(v).unwrap();
        }
        v.iter_mut().for_each(|x| *x = &*x * &q(3, 4));
    }
}

fn simplex_marginals<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let w = gap::random_simplex_weights(rng, n + 1, 60);
    w[..n].to_vec()
}

fn instance_for_class<R: Rng>(rng: &mut R, class: &str) -> (SetFunction, MarginalVector) {
    let n = rng.gen_range(3..=8);
    let m = rng.gen_range(2..=6);
    match class {
        "small-probabilities" => (gap::random_coverage(rng, n, m).unwrap(), small_marginals(rng, n)),
        "large-probabilities" => (gap::random_coverage(rng, n, m).unwrap(), small_marginals(rng, n).complement()),
        "simplex-top-weight" => {
            let f = gap::random_coverage(rng, n, m).unwrap();
            let mut x = simplex_marginals(rng, n);
            let best = (0..n).max_by_key(|&i| f.at(&[i + 1]).clone()).unwrap();
            let top = (0..n).max_by_key(|&i| x[i].clone()).unwrap();
            x.swap(best, top);
            (f, MarginalVector::new(x).unwrap())
        }
        "simplex-equal-singletons" => {
            let size = rng.gen_range(1..=m);
            let mut items: Vec<usize> = (1..=m).collect();
            let covers: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    items.shuffle(rng);
                    items[..size].to_vec()
                })
                .collect();
            let f = setfn::weighted_coverage(n, &vec![Rational::one(); m], &covers).unwrap();
            (f, MarginalVector::new(simplex_marginals(rng, n)).unwrap())
        }
        _ => {
            let f = gap::random_coverage(rng, n, m).unwrap();
            let edge = Rational::new(1, n as i64 - 1);
            let t = rational_in(rng, &Rational::zero(), &edge, 12);
            let p = if rng.gen_bool(0.5) { t } else { Rational::one() - t };
            (f, MarginalVector::identical(n, p).unwrap())
        }
    }
}

fn hypothesis_classes() -> Outcome {
    let classes = [
        "small-probabilities",
        "large-probabilities",
        "simplex-top-weight",
        "simplex-equal-singletons",
        "identical-extreme",
    ];
    let mut summary = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        let corpus: Vec<_> = (0..500).map(|i| instance_for_class(&mut rng(7, c * 1000 + i), class)).collect();
        for (i, (f, x)) in corpus.iter().enumerate() {
            ensure!(f.is_monotone_submodular(), "{class} instance {i} is not monotone submodular");
            let applies = gap::applicable_bounds(f, x).iter().any(|h| h.id == *class && h.applies);
            ensure!(applies, "{class} instance {i}: hypothesis does not hold for x = {x:?}");
        }
        let result = gap::scan(Generator::Corpus(corpus), 0, 0).map_err(err)?;
        ensure!(result.violations.is_empty() && result.max_ratio <= q(4, 3), "{class}: max ratio {}", result.max_ratio);
        summary.push(format!("{class} max {}", result.max_ratio));
    }
    Ok(format!("500 each; {}", summary.join(", ")))
}

fn constructions() -> Outcome {
    for i in 0..200 {
        let mut r = rng(8, i);
        let n = r.gen_range(2..=7);
        let x = small_marginals(&mut r, n);
        let d = distributions::construct_small(&x).map_err(err)?;
        ensure!(distributions::check_pairwise_independent(&d, &x).holds(), "small construction fails at x = {x:?}");
        let y = small_marginals(&mut r, n).complement();
        let d = distributions::construct_large(&y).map_err(err)?;
        ensure!(distributions::check_pairwise_independent(&d, &y).holds(), "large construction fails at x = {y:?}");
        let p = rational_in(&mut r, &Rational::zero(), &q(1, 3), 24);
        let d = distributions::identical_n4(&p, Regime::Small).map_err(err)?;
        let xp = MarginalVector::identical(4, p.clone()).map_err(err)?;
        ensure!(distributions::check_pairwise_independent(&d, &xp).holds(), "identical small fails at p = {p}");
        let p = rational_in(&mut r, &q(2, 3), &Rational::one(), 24);
        let d = distributions::identical_n4(&p, Regime::Large).map_err(err)?;
        let xp = MarginalVector::identical(4, p.clone()).map_err(err)?;
        ensure!(distributions::check_pairwise_independent(&d, &xp).holds(), "identical large fails at p = {p}");
    }
    Ok("200 marginals for each of the four constructions".into())
}

/// Rejection-samples `x` in `[0,1]^3` until `accept` holds.
fn sample_in_region(criterion: u64, index: usize, accept: impl Fn(&MarginalVector) -> bool) -> MarginalVector {
    let mut r = rng(criterion, index);
    loop {
        let x = unit_vector(&mut r, 3, 30);
        if accept(&x) {
            return x;
        }
    }
}

fn cylinder_signs() -> Outcome {
    let region_of = |x: &MarginalVector| closedform::region_n3(x, SubpolytopeLabel::F3_1).unwrap().index();
    for (target, offset) in [(1usize, 0usize), (14, 1000)] {
        for i in 0..100 {
            let x = sample_in_region(9, offset + i, |x| region_of(x) == target);
            let (label, d) = distributions::region_distribution_f31(&x).map_err(err)?;
            ensure!(label.index() == target, "region mismatch {label}");
            let sig = distributions::cylinder_signature(&d, &x).map_err(err)?;
            ensure!(sig.all_nonpositive(), "{label} at x = {x:?}: signature {sig:?}");
        }
    }
    let full = 0b111;
    for i in 0..100 {
        let x = unit_vector(&mut rng(9, 5000 + i), 3, 30);
        let bounds = closedform::omega_bounds_n3(&x).map_err(err)?;
        let prod = x.product_over(full);
        let hi = closedform::pairwise_family_n3(&x, &bounds.high).map_err(err)?;
        let lo = closedform::pairwise_family_n3(&x, &bounds.low).map_err(err)?;
        ensure!(distributions::check_pairwise_independent(&hi, &x).holds(), "upper family member not pairwise at {x:?}");
        ensure!(distributions::check_pairwise_independent(&lo, &x).holds(), "lower family member not pairwise at {x:?}");
        ensure!(hi.moment(full) <= prod, "x = {x:?}: triplet at upper omega {} > {prod}", hi.moment(full));
        ensure!(lo.moment(full) >= prod, "x = {x:?}: triplet at lower omega {} < {prod}", lo.moment(full));
    }
    Ok("R1 and R14 all nonpositive (100 each); omega extremes bracket the product (100)".into())
}

fn covariance_patterns() -> Outcome {
    let mut counts = [0usize; 15];
    let targets = [1usize, 2, 3, 4, 5, 14];
    for (t, &target) in targets.iter().enumerate() {
        for i in 0..60 {
            let x = sample_in_region(10, t * 1000 + i, |x| {
                closedform::region_n3(x, SubpolytopeLabel::F3_1).map(RegionLabel::index) == Ok(target)
            });
            let (label, d) = distributions::region_distribution_f31(&x).map_err(err)?;
            ensure!(d.marginals() == x.values(), "{label}: marginals differ at {x:?}");
            let expected = distributions::expected_covariance_pattern_f31(&x).map_err(err)?;
            let signs = distributions::covariance_signs(&d).map_err(err)?;
            for (k, ((i, j), s)) in signs.iter().enumerate() {
                ensure!(expected[k].admits(*s), "{label} at x = {x:?}: cov({i},{j}) sign {s}, expected {:?}", expected[k]);
            }
            counts[label.index()] += 1;
        }
    }
    Ok(format!(
        "samples per region: R1 {}, R2 {}, R3 {}, R4 {}, R5 {}, R14 {}",
        counts[1], counts[2], counts[3], counts[4], counts[5], counts[14]
    ))
}

fn unbounded_gap_demos() -> Outcome {
    for eps in [q(1, 10), q(1, 100)] {
        for case in gap::counterexample_demos(&eps, &Rational::one()).map_err(err)? {
            ensure!(case.ratio == eps.recip(), "{} at eps = {eps}: ratio {}", case.name, case.ratio);
            ensure!(case.f_plus == case.expected_f_plus && case.multilinear == case.expected_multilinear, "{} values", case.name);
        }
    }
    for n in 2..=10usize {
        let f = setfn::uniform_matroid_rank(n, 1).map_err(err)?;
        let inv = Rational::new(1, n as i64);
        let x = MarginalVector::identical(n, inv.clone()).map_err(err)?;
        let target = Rational::one() - &inv + &inv * &inv;
        let pp = extensions::upper_pairwise(&f, &x).map_err(err)?.value;
        ensure!(pp >= target, "n = {n}: f++ = {pp} < {target}");
        let w = gap::rank1_witness(n).map_err(err)?;
        ensure!(distributions::check_pairwise_independent(&w, &x).holds(), "n = {n}: witness not pairwise independent");
        ensure!(w.expectation(&f) == target, "n = {n}: witness value {}", w.expectation(&f));
        let multilinear = extensions::multilinear(&f, &x).map_err(err)?;
        let independent = Rational::one() - (Rational::one() - &inv).pow(n as i32);
        ensure!(multilinear == independent, "n = {n}: F = {multilinear}, expected {independent}");
        ensure!(&pp / &multilinear >= &target / &independent, "n = {n}: f++/F = {}", &pp / &multilinear);
    }
    Ok("f+/F = 1/eps for both counterexamples; f++ >= 1 - 1/n + 1/n^2 for n <= 10".into())
}

fn sandwich_and_vertices() -> Outcome {
    for i in 0..1000 {
        let mut r = rng(12, i);
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=5);
        let f = gap::random_coverage(&mut r, n, m).map_err(err)?;
        let x = unit_vector(&mut r, n, 12);
        let big_f = extensions::multilinear(&f, &x).map_err(err)?;
        let plus = extensions::concave_closure(&f, &x).map_err(err)?.value;
        let pp = extensions::upper_pairwise(&f, &x).map_err(err)?.value;
        let minus = extensions::convex_closure(&f, &x).map_err(err)?.value;
        let mm = extensions::lower_pairwise(&f, &x).map_err(err)?.value;
        ensure!(big_f <= pp && pp <= plus, "instance {i}: F {big_f}, f++ {pp}, f+ {plus}");
        ensure!(minus <= mm && mm <= big_f, "instance {i}: f- {minus}, f-- {mm}, F {big_f}");

        let s = r.gen_range(0..1usize << n);
        let v = MarginalVector::indicator(n, s);
        let values = [
            extensions::multilinear(&f, &v).map_err(err)?,
            extensions::concave_closure(&f, &v).map_err(err)?.value,
            extensions::upper_pairwise(&f, &v).map_err(err)?.value,
            extensions::convex_closure(&f, &v).map_err(err)?.value,
            extensions::lower_pairwise(&f, &v).map_err(err)?.value,
        ];
        ensure!(values.iter().all(|val| val == f.value(s)), "instance {i}: vertex {s} gives {values:?}, f = {}", f.value(s));
    }
    Ok("1000 instances, n <= 6".into())
}

fn main() {
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria = [
        Criterion { id: "A01", name: "two-function-anchors", limit: Duration::from_secs(1), run: distribution_dependent_anchors },
        Criterion { id: "A02", name: "n2-closed-forms", limit: Duration::from_secs(10), run: n2_closed_forms },
        Criterion { id: "A03", name: "n3-closed-forms", limit: Duration::from_secs(120), run: n3_closed_forms },
        Criterion { id: "A04", name: "n3-gap-at-most-4/3", limit: Duration::from_secs(300), run: n3_gap_bound },
        Criterion { id: "A05", name: "rank1-pairwise-formula", limit: Duration::from_secs(120), run: rank1_formula },
        Criterion { id: "A06", name: "k-uniform-identical", limit: Duration::from_secs(300), run: kuniform },
        Criterion { id: "A07", name: "hypothesis-classes", limit: Duration::from_secs(300), run: hypothesis_classes },
        Criterion { id: "A08", name: "pairwise-constructions", limit: Duration::from_secs(60), run: constructions },
        Criterion { id: "A09", name: "cylinder-signs", limit: Duration::from_secs(60), run: cylinder_signs },
        Criterion { id: "A10", name: "covariance-signs", limit: Duration::from_secs(60), run: covariance_patterns },
        Criterion { id: "A11", name: "unbounded-gap-demos", limit: Duration::from_secs(30), run: unbounded_gap_demos },
        Criterion { id: "A12", name: "sandwich-and-vertices", limit: Duration::from_secs(120), run: sandwich_and_vertices },
    ];
    let mut failed = 0;
    let mut ran = 0;
    for c in &criteria {
        if let Some(f) = &filter {
            if !c.id.contains(f.as_str()) && !c.name.contains(f.as_str()) {
                continue;
            }
        }
        ran += 1;
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= c.limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over time limit")),
            Err(reason) => ("FAIL", reason),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {} {:<24} tolerance exact  {:>8.2}s / {}s  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
