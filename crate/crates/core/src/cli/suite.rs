use std::fmt::Display;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::fuzz::FuzzSource;
use super::report::CheckReport;
use crate::beta_dist::{
    beta_by_integration, beta_exact, binom_tail_sides, negbinom_cdf_sides, negbinom_tail_limit,
    negbinom_tail_partial, regularized_beta,
};
use crate::collatz_bound::{
    orbit, partial_sum_vs_comtet1, tail_sum, GenCollatzConfig, TailSumQuery, Termination,
};
use crate::error::Result;
use crate::exact_math::{rat, rational_pow, Polynomial, Rational};
use crate::identities::{
    comtet1_sides, comtet2_sides, comtet3_sides, corollary1_sides, corollary2_sides,
    corollary2_specialization, f_recurrence_sides, family_shift_sides, g_recurrence_sides,
    geometric_base_sides, kimura_ruehr_moments, ruehr_chain, telescoping_sides, Corollary1Variant,
    Corollary2Variant, FamilyShift, SidePair,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Ruehr,
    Moments,
    Comtet,
    Corollaries,
    Polynomials,
    Beta,
    Negbinom,
    Tailsum,
    Orbit,
    All,
}

impl Suite {
    const EACH: [Suite; 9] = [
        Suite::Ruehr,
        Suite::Moments,
        Suite::Comtet,
        Suite::Corollaries,
        Suite::Polynomials,
        Suite::Beta,
        Suite::Negbinom,
        Suite::Tailsum,
        Suite::Orbit,
    ];

    /// Range used when `--max-n` is absent.
    pub fn default_max_n(self) -> u64 {
        match self {
            Suite::Ruehr => 200,
            Suite::Moments => 100,
            Suite::Comtet => 60,
            Suite::Corollaries => 40,
            Suite::Polynomials => 20,
            Suite::Beta => 20,
            Suite::Negbinom => 10,
            Suite::Tailsum => 60,
            Suite::Orbit => 1000,
            Suite::All => 0,
        }
    }

    /// Trial count used when `--trials` is absent.
    pub fn default_trials(self) -> u64 {
        match self {
            Suite::Comtet => 100,
            Suite::Beta => 3,
            Suite::Tailsum => 20,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub max_n: Option<u64>,
    pub trials: Option<u64>,
    pub seed: u64,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    /// Check name whose right-hand side is perturbed before comparison.
    /// Exercises the failure path of the exit-code contract.
    pub inject_fault: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteRun {
    /// Sorted by check name, then parameters.
    pub reports: Vec<CheckReport>,
}

impl SuiteRun {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.equal)
    }

    pub fn failures(&self) -> usize {
        self.reports.iter().filter(|r| !r.equal).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

struct Verdict {
    lhs: String,
    rhs: String,
    equal: bool,
}

trait Perturb {
    fn perturbed(&self) -> Self;
}

impl Perturb for Rational {
    fn perturbed(&self) -> Self {
        self + Rational::one()
    }
}

impl Perturb for Polynomial {
    fn perturbed(&self) -> Self {
        self + &Polynomial::one()
    }
}

impl Perturb for BigInt {
    fn perturbed(&self) -> Self {
        self + 1
    }
}

fn judge<T: Display + PartialEq + Perturb>(res: Result<SidePair<T>>, fault: bool) -> Verdict {
    match res {
        Ok(mut pair) => {
            if fault {
                pair.rhs = pair.rhs.perturbed();
            }
            Verdict { lhs: pair.lhs.to_string(), rhs: pair.rhs.to_string(), equal: pair.is_equal() }
        }
        Err(e) => failed(e),
    }
}

fn failed(e: impl Display) -> Verdict {
    Verdict { lhs: String::new(), rhs: format!("error: {e}"), equal: false }
}

type Check = Box<dyn Fn(bool) -> Verdict + Send + Sync>;

struct Task {
    name: &'static str,
    params: Vec<(String, String)>,
    run: Check,
}

macro_rules! params {
    ($($key:literal => $value:expr),* $(,)?) => {
        vec![$(($key.to_string(), $value.to_string())),*]
    };
}

fn task(
    name: &'static str,
    params: Vec<(String, String)>,
    run: impl Fn(bool) -> Verdict + Send + Sync + 'static,
) -> Task {
    Task { name, params, run: Box::new(run) }
}

struct Plan {
    max_n: u64,
    trials: u64,
    src: FuzzSource,
}

fn ruehr_tasks(plan: Plan) -> Vec<Task> {
    (0..=plan.max_n)
        .map(|n| {
            task("ruehr_chain", params!["n" => n], move |fault| match ruehr_chain(n) {
                Ok(chain) => {
                    let mut values = chain.values;
                    if fault {
                        values[3] = values[3].perturbed();
                    }
                    let equal = values.iter().all(|v| v == &values[0]);
                    Verdict { lhs: values[0].to_string(), rhs: values[3].to_string(), equal }
                }
                Err(e) => failed(e),
            })
        })
        .collect()
}

fn moment_tasks(plan: Plan) -> Vec<Task> {
    (0..=plan.max_n)
        .map(|n| {
            task("kimura_ruehr_moments", params!["n" => n], move |fault| {
                judge(Ok(kimura_ruehr_moments(n)), fault)
            })
        })
        .collect()
}

fn comtet_tasks(mut plan: Plan) -> Vec<Task> {
    let top = plan.max_n.max(1);
    (0..plan.trials)
        .map(|trial| {
            let n = plan.src.in_range(1, top);
            let k = plan.src.below(n);
            let a = plan.src.fuzz_rational(9, 9);
            let b = plan.src.fuzz_rational(9, 9);
            let params = params!["trial" => trial, "n" => n, "k" => k, "a" => a, "b" => b];
            task("comtet1", params, move |fault| judge(comtet1_sides(n, k, &a, &b), fault))
        })
        .collect()
}

fn corollary_tasks(plan: Plan) -> Vec<Task> {
    use Corollary1Variant::{Neg, Pos};
    use Corollary2Variant::{First, Second};
    let mut out = Vec::new();
    for n in 0..=plan.max_n {
        out.push(task("corollary1", params!["n" => n, "variant" => "pos"], move |f| {
            judge(Ok(corollary1_sides(n, Pos)), f)
        }));
        out.push(task("corollary1", params!["n" => n, "variant" => "neg"], move |f| {
            judge(Ok(corollary1_sides(n, Neg)), f)
        }));
        out.push(task("corollary2", params!["n" => n, "variant" => "first"], move |f| {
            judge(Ok(corollary2_sides(n, First)), f)
        }));
        out.push(task("corollary2", params!["n" => n, "variant" => "second"], move |f| {
            judge(Ok(corollary2_sides(n, Second)), f)
        }));
        out.push(task("corollary2_at_point", params!["n" => n, "x" => "2/3"], move |f| {
            judge(Ok(corollary2_specialization(n, First)), f)
        }));
        out.push(task("corollary2_at_point", params!["n" => n, "x" => "4/3"], move |f| {
            judge(Ok(corollary2_specialization(n, Second)), f)
        }));
    }
    out
}

fn polynomial_tasks(plan: Plan) -> Vec<Task> {
    let top = plan.max_n;
    let mut out = Vec::new();
    for n in 1..=top {
        for m in 1..=n {
            out.push(task("comtet2", params!["m" => m, "n" => n], move |f| {
                judge(comtet2_sides(m, n), f)
            }));
        }
    }
    for m in 1..=top.max(1) {
        for big_n in 0..=top {
            out.push(task("comtet3", params!["m" => m, "N" => big_n], move |f| {
                judge(comtet3_sides(m, big_n), f)
            }));
        }
    }
    for j in 1..=top {
        for big_n in 1..=top {
            out.push(task("f_recurrence", params!["j" => j, "N" => big_n], move |f| {
                judge(f_recurrence_sides(j, big_n), f)
            }));
            out.push(task("g_recurrence", params!["j" => j, "N" => big_n], move |f| {
                judge(g_recurrence_sides(j, big_n), f)
            }));
        }
    }
    for big_n in 0..=top {
        out.push(task("f1_equals_g1", params!["N" => big_n], move |f| {
            judge(comtet3_sides(1, big_n), f)
        }));
        out.push(task("geometric_base", params!["N" => big_n], move |f| {
            judge(geometric_base_sides(big_n), f)
        }));
    }
    let tele = top.min(10);
    for m in 1..=tele {
        for big_n in 1..=tele {
            out.push(task("telescoping", params!["m" => m, "N" => big_n], move |f| {
                judge(telescoping_sides(m, big_n), f)
            }));
        }
    }
    for n in 0..=top {
        out.push(task("family_shift", params!["n" => n, "pair" => "A->B"], move |f| {
            judge(Ok(family_shift_sides(FamilyShift::AToB, n)), f)
        }));
        out.push(task("family_shift", params!["n" => n, "pair" => "C->D"], move |f| {
            judge(Ok(family_shift_sides(FamilyShift::CToD, n)), f)
        }));
    }
    out
}

fn beta_tasks(mut plan: Plan) -> Vec<Task> {
    let top = plan.max_n.max(1);
    let mut out = Vec::new();
    for x in 1..=top {
        for y in 1..=top {
            out.push(task("beta_routes", params!["x" => x, "y" => y], move |f| {
                let pair = beta_exact(x, y)
                    .and_then(|l| Ok(SidePair::new(l, beta_by_integration(x, y)?)));
                judge(pair, f)
            }));
        }
    }
    for n in 1..=top {
        for a in 1..=n {
            for trial in 0..plan.trials {
                let p = plan.src.fuzz_unit_rational(20);
                let params = params!["n" => n, "a" => a, "trial" => trial, "p" => p];
                out.push(task("binom_tail", params, move |f| judge(binom_tail_sides(n, a, &p), f)));
            }
        }
    }
    for x in 1..=top.min(10) {
        for y in 1..=top.min(10) {
            let p = plan.src.fuzz_unit_rational(20);
            let params = params!["x" => x, "y" => y, "p" => p];
            out.push(task("beta_complement", params, move |f| {
                let q = Rational::one() - &p;
                let pair = regularized_beta(&p, x, y).and_then(|a| {
                    Ok(SidePair::new(a + regularized_beta(&q, y, x)?, Rational::one()))
                });
                judge(pair, f)
            }));
        }
    }
    out
}

fn negbinom_tasks(mut plan: Plan) -> Vec<Task> {
    let top = plan.max_n.max(1);
    let mut out = Vec::new();
    for r in 1..=top {
        for k in 0..=2 * top {
            let den = plan.src.in_range(1, 20);
            let num = plan.src.in_range(1, den);
            let p = rat(num as i64, den as i64);
            let params = params!["r" => r, "k" => k, "p" => p];
            out.push(task("negbinom_cdf", params, move |f| judge(negbinom_cdf_sides(r, k, &p), f)));
        }
    }
    for r in 1..=5u64 {
        for a in 1..=5u64 {
            let params = params!["r" => r, "a" => a, "p" => "1/2", "M" => 200];
            out.push(task("negbinom_partial", params, move |fault| {
                negbinom_partial_verdict(r, a, fault)
            }));
        }
    }
    out
}

/// Gap to the limit shrinks every ten terms and ends below 10⁻⁶ at `M = 200`.
fn negbinom_partial_verdict(r: u64, a: u64, fault: bool) -> Verdict {
    let half = rat(1, 2);
    let run = || -> Result<(Rational, bool)> {
        let mut target = negbinom_tail_limit(r, a, &half)?;
        if fault {
            target = target.perturbed();
        }
        let mut prev: Option<Rational> = None;
        let mut decreasing = true;
        for upto in (a..=200).step_by(10) {
            let gap = &target - negbinom_tail_partial(r, a, &half, upto)?;
            if prev.as_ref().is_some_and(|p| &gap >= p) {
                decreasing = false;
            }
            prev = Some(gap);
        }
        let gap = &target - negbinom_tail_partial(r, a, &half, 200)?;
        let ok = decreasing && gap >= Rational::zero() && gap < rat(1, 1_000_000);
        Ok((gap, ok))
    };
    match run() {
        Ok((gap, ok)) => Verdict { lhs: gap.to_string(), rhs: rat(1, 1_000_000).to_string(), equal: ok },
        Err(e) => failed(e),
    }
}

fn tailsum_tasks(mut plan: Plan) -> Vec<Task> {
    let top = plan.max_n.max(1);
    let mut out = Vec::new();
    for trial in 0..plan.trials {
        let k = plan.src.in_range(1, top);
        let m = plan.src.below(k);
        let d = plan.src.in_range(2, 6);
        let params = params!["trial" => trial, "k" => k, "m" => m, "d" => d];
        out.push(task("partial_sum_vs_comtet1", params, move |fault| {
            match partial_sum_vs_comtet1(k, m, d) {
                Ok((mut ours, comtet)) => {
                    if fault {
                        ours.rhs = ours.rhs.perturbed();
                    }
                    let equal = ours.is_equal() && ours == comtet;
                    Verdict { lhs: ours.lhs.to_string(), rhs: ours.rhs.to_string(), equal }
                }
                Err(e) => failed(e),
            }
        }));
    }
    let pinned = [(4u64, 2u64, rat(1, 4), rat(1, 8)), (2, 3, rat(1, 3), rat(1, 9))];
    for (k, d, eps, expected) in pinned {
        let params = params!["k" => k, "d" => d, "eps" => eps];
        out.push(task("tail_sum", params, move |fault| {
            let pair = TailSumQuery::new(k, d, eps.clone())
                .map(|q| SidePair::new(tail_sum(&q), expected.clone()));
            judge(pair, fault)
        }));
    }
    // η witness: tail < (19/20)^k exactly iff its k-th root is below 0.95.
    for k in [50u64, 100, 200, 400] {
        let params = params!["k" => k, "d" => 2, "eps" => "1/4"];
        out.push(task("eta_bound", params, move |fault| {
            match TailSumQuery::new(k, 2, rat(1, 4)) {
                Ok(q) => {
                    let mut tail = tail_sum(&q);
                    if fault {
                        tail = tail.perturbed();
                    }
                    let bound = rational_pow(&rat(19, 20), k as u32);
                    let equal = tail < bound;
                    Verdict { lhs: tail.to_string(), rhs: bound.to_string(), equal }
                }
                Err(e) => failed(e),
            }
        }));
    }
    out
}

fn orbit_tasks(plan: Plan) -> Vec<Task> {
    let cfg = GenCollatzConfig::classical();
    let expected = vec!["1".to_string(), "2".to_string()];
    (1..=plan.max_n.max(1))
        .map(|ell| {
            let cfg = cfg.clone();
            let expected = expected.clone();
            task("orbit_classical", params!["start" => ell], move |fault| {
                match orbit(&BigInt::from(ell), &cfg, 10_000) {
                    Ok(o) => {
                        let mut cycle: Vec<BigInt> = o.cycle.clone().unwrap_or_default();
                        cycle.sort();
                        if fault {
                            cycle.push(BigInt::from(0));
                        }
                        let got: Vec<String> = cycle.iter().map(ToString::to_string).collect();
                        let equal = o.terminated == Termination::CycleFound && got == expected;
                        Verdict {
                            lhs: serde_json::to_string(&got).expect("strings serialize"),
                            rhs: serde_json::to_string(&expected).expect("strings serialize"),
                            equal,
                        }
                    }
                    Err(e) => failed(e),
                }
            })
        })
        .collect()
}

fn tasks_for(suite: Suite, opts: &SuiteOptions) -> Vec<Task> {
    let plan = Plan {
        max_n: opts.max_n.unwrap_or_else(|| suite.default_max_n()),
        trials: opts.trials.unwrap_or_else(|| suite.default_trials()),
        src: FuzzSource::new(opts.seed),
    };
    match suite {
        Suite::Ruehr => ruehr_tasks(plan),
        Suite::Moments => moment_tasks(plan),
        Suite::Comtet => comtet_tasks(plan),
        Suite::Corollaries => corollary_tasks(plan),
        Suite::Polynomials => polynomial_tasks(plan),
        Suite::Beta => beta_tasks(plan),
        Suite::Negbinom => negbinom_tasks(plan),
        Suite::Tailsum => tailsum_tasks(plan),
        Suite::Orbit => orbit_tasks(plan),
        Suite::All => Suite::EACH.iter().flat_map(|&s| tasks_for(s, opts)).collect(),
    }
}

/// Runs every check of `suite`. Fuzzed parameters are drawn before any
/// check executes, and each suite restarts the generator from the seed,
/// so the output depends only on the options, never on scheduling.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> SuiteRun {
    let tasks = tasks_for(suite, opts);
    let execute = |t: &Task| {
        let fault = opts.inject_fault.as_deref() == Some(t.name);
        let start = Instant::now();
        let v = (t.run)(fault);
        CheckReport {
            check_name: t.name.to_string(),
            params: t.params.clone(),
            lhs: v.lhs,
            rhs: v.rhs,
            equal: v.equal,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    };
    let mut reports: Vec<CheckReport> = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(|| tasks.par_iter().map(execute).collect()),
        None => tasks.par_iter().map(execute).collect(),
    };
    reports.sort_by(CheckReport::sort_order);
    SuiteRun { reports }
}
