//! Verification suites behind `sturmpar verify`.

use std::f64::consts::PI;
use std::fmt;

use clap::ValueEnum;
use num_complex::Complex64;
use sturmian_parity::consts::LN_2;
use sturmian_parity::parity::{constant_word_parity, convolution_check, parity_counts, ConvolutionCheck};
use sturmian_parity::series::{
    accumulate, dirichlet_continued, dirichlet_truncated, euler_factor_identity_check, fit_slope,
    geometric_checkpoints, odd_divisor_sum, odd_divisor_sum_asymptotic, odd_harmonic, odd_harmonic_asymptotic,
    perturbation_slope_invariance, residue_estimate, zeta, FitModel, SeriesError, DEFAULT_CONTINUATION_CUTOFF,
};
use sturmian_parity::word::{balance_defect, to_ascii, Letter, QuadraticPreset, WordSpec};
use sturmian_parity::SieveConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Word,
    Convolution,
    ClosedForm,
    LemmaAo,
    LemmaI,
    Proposition1,
    Theorem1,
    Series,
    Identity,
    Perturbation,
    All,
}

impl Suite {
    const EACH: [Suite; 10] = [
        Suite::Word,
        Suite::Convolution,
        Suite::ClosedForm,
        Suite::LemmaAo,
        Suite::LemmaI,
        Suite::Proposition1,
        Suite::Theorem1,
        Suite::Series,
        Suite::Identity,
        Suite::Perturbation,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

pub struct Options {
    pub word: Option<WordSpec>,
    pub x_max: Option<u64>,
    pub n_max: Option<u64>,
    pub config: SieveConfig,
}

pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checks: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { label: label.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} [{}] {}: {}", self.suite, c.label, c.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "NOTE [{}] {n}", self.suite)?;
        }
        Ok(())
    }
}

pub fn run(suite: Suite, opts: &Options) -> Result<Vec<SuiteReport>, SeriesError> {
    if suite == Suite::All {
        return Suite::EACH.iter().map(|&s| run_one(s, opts)).collect();
    }
    Ok(vec![run_one(suite, opts)?])
}

fn run_one(suite: Suite, opts: &Options) -> Result<SuiteReport, SeriesError> {
    let mut r = SuiteReport::new(suite);
    match suite {
        Suite::Word => word(&mut r, opts)?,
        Suite::Convolution => convolution(&mut r, opts)?,
        Suite::ClosedForm => closed_form(&mut r, opts)?,
        Suite::LemmaAo => lemma_ao(&mut r, opts),
        Suite::LemmaI => lemma_i(&mut r, opts),
        Suite::Proposition1 => proposition1(&mut r, opts)?,
        Suite::Theorem1 => theorem1(&mut r, opts)?,
        Suite::Series => series(&mut r, opts)?,
        Suite::Identity => identity(&mut r, opts)?,
        Suite::Perturbation => perturbation(&mut r, opts)?,
        Suite::All => unreachable!("expanded by run"),
    }
    Ok(r)
}

fn specs_or(opts: &Options, defaults: Vec<WordSpec>) -> Vec<WordSpec> {
    match &opts.word {
        Some(w) => vec![w.clone()],
        None => defaults,
    }
}

fn powers_of_ten(from: u32, to: u32, cap: Option<u64>) -> Vec<u64> {
    (from..=to).map(|k| 10u64.pow(k)).filter(|&x| cap.is_none_or(|c| x <= c)).collect()
}

fn word(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    if opts.word.is_none() {
        let prefix = to_ascii(&WordSpec::Fibonacci.prefix(11)?);
        r.check("fibonacci prefix", prefix == "abaababaaba", prefix);

        let len = 100_000;
        let morphism = WordSpec::Fibonacci.prefix_bits(len)?;
        let mechanical = WordSpec::mechanical_preset(QuadraticPreset::Fibonacci).prefix_bits(len)?;
        let first_diff = (1..=len).find(|&n| morphism.is_b(n) != mechanical.is_b(n));
        r.check(
            "mechanical slope (3-sqrt5)/2 matches the morphism",
            first_diff.is_none(),
            match first_diff {
                None => format!("{len} letters agree"),
                Some(n) => format!("first difference at n = {n}"),
            },
        );
    }
    let defaults = vec![
        WordSpec::Fibonacci,
        WordSpec::mechanical_preset(QuadraticPreset::Silver),
        WordSpec::mechanical_preset(QuadraticPreset::Sqrt3Minus1),
    ];
    let n_max = opts.n_max.unwrap_or(10_000);
    let freq_len = opts.x_max.unwrap_or(100_000);
    for spec in specs_or(opts, defaults) {
        if spec.is_sturmian() {
            let mut worst = 0;
            for window in 1..=100 {
                worst = worst.max(balance_defect(&spec, window, n_max)?);
            }
            r.check(format!("{spec} balance"), worst <= 1, format!("max defect {worst} over windows 1..=100"));
        } else {
            r.notes.push(format!("{spec} is not Sturmian; balance not checked"));
        }
        let bits = spec.prefix_bits(freq_len)?;
        let beta = spec.beta();
        let bound = spec.discrepancy_bound().max(1.0);
        let mut count = 0u64;
        let mut worst = 0f64;
        for n in 1..=freq_len {
            count += bits.is_b(n) as u64;
            worst = worst.max((beta * n as f64 - count as f64).abs());
        }
        r.check(
            format!("{spec} frequency"),
            worst <= bound,
            format!("max |beta n - b_count(n)| = {worst:.6} for n <= {freq_len}, bound {bound}"),
        );
    }
    Ok(())
}

fn convolution(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    let n_max = opts.n_max.unwrap_or(10_000);
    let defaults = vec![
        WordSpec::Fibonacci,
        WordSpec::Constant(Letter::B),
        WordSpec::perturbed(WordSpec::Fibonacci, [2, 17, 90])?,
    ];
    for spec in specs_or(opts, defaults) {
        let outcome = convolution_check(&spec, n_max, &opts.config)?;
        let detail = match outcome {
            ConvolutionCheck::Agree { n_max } => format!("sieve equals divisor enumeration for n <= {n_max}"),
            ConvolutionCheck::Mismatch { n, sieve, direct } => {
                format!("n = {n}: sieve D = {sieve}, enumeration D = {direct}")
            }
        };
        r.check(spec.to_string(), outcome.agrees(), detail);
    }
    Ok(())
}

fn closed_form(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    let n_max = opts.n_max.unwrap_or(100_000);
    let b = WordSpec::Constant(Letter::B);
    let mut mismatch = None;
    for n in 1..=n_max {
        if constant_word_parity(n) != parity_counts(&b, n)? {
            mismatch = Some(n);
            break;
        }
    }
    r.check(
        "closed form vs enumeration",
        mismatch.is_none(),
        match mismatch {
            None => format!("agree for n <= {n_max}"),
            Some(n) => format!("differ at n = {n}"),
        },
    );
    let datum = constant_word_parity(10_000_080);
    let direct = parity_counts(&b, 10_000_080)?;
    r.check(
        "n = 10000080",
        (datum.odd, datum.even, datum.d()) == (48, 192, -144) && datum == direct,
        format!("o = {}, e = {}, D = {}", datum.odd, datum.even, datum.d()),
    );
    Ok(())
}

fn lemma_ao(r: &mut SuiteReport, opts: &Options) {
    for x in powers_of_ten(2, 6, opts.x_max) {
        let x = x as f64;
        let err = (odd_harmonic(x) - odd_harmonic_asymptotic(x)).abs();
        r.check(format!("x = {x}"), err <= 2.0 / x, format!("|A_o - asymptotic| * x = {:.6}", err * x));
    }
}

fn lemma_i(r: &mut SuiteReport, opts: &Options) {
    for x in powers_of_ten(3, 6, opts.x_max) {
        let sum = odd_divisor_sum(x);
        let ratio = (sum.hyperbola as f64 - odd_divisor_sum_asymptotic(x as f64)).abs() / (x as f64).sqrt();
        r.check(
            format!("x = {x}"),
            sum.agree() && ratio <= 5.0,
            format!(
                "I = {} (hyperbola) / {} (sieve), |I - asymptotic| / sqrt x = {ratio:.4}",
                sum.hyperbola, sum.direct
            ),
        );
    }
}

fn checkpoints_to(x_max: u64) -> Vec<u64> {
    let mut c = geometric_checkpoints(x_max);
    if c.last() != Some(&x_max) {
        c.push(x_max);
    }
    c
}

fn proposition1(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    let x_max = opts.x_max.unwrap_or(1_000_000);
    let profile = accumulate(&WordSpec::Constant(Letter::B), x_max, &checkpoints_to(x_max), &opts.config)?;
    let last = profile.last().expect("x_max is a checkpoint");
    r.check(
        "average at x_max",
        (last.avg_d() - LN_2).abs() <= 0.01,
        format!("sum D / x = {:.6} at x = {x_max}, log 2 = {LN_2:.6}", last.avg_d()),
    );
    if let Ok(fit) = fit_slope(&profile, FitModel::SumDOverX) {
        r.check("fitted slope", (fit.slope - LN_2).abs() <= 0.01, format!("slope = {:.6}", fit.slope));
    }
    let worst = profile
        .points
        .iter()
        .map(|p| (p.sum_d as f64 - LN_2 * p.x as f64).abs() / (p.x as f64).sqrt())
        .fold(0.0, f64::max);
    r.check("square-root error", worst <= 10.0, format!("max |sum D - x log 2| / sqrt x = {worst:.4}"));
    Ok(())
}

/// Reference decimal for the Fibonacci slope that the suite adjudicates.
const REFERENCE_DECIMAL: f64 = 0.264758;

/// Bound on `|M(x) - slope x| / x^0.4` over the checkpoints, chosen after measurement.
pub const THEOREM1_C_MAX: f64 = 1.0;

fn theorem1(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    let spec = opts.word.clone().unwrap_or(WordSpec::Fibonacci);
    let x_max = opts.x_max.unwrap_or(1_000_000);
    let profile = accumulate(&spec, x_max, &checkpoints_to(x_max), &opts.config)?;
    let beta = spec.beta();
    let predicted = beta * LN_2 / 2.0;
    let last = profile.last().expect("x_max is a checkpoint");
    r.check(
        "mollified slope",
        (last.mollified_over_x() - predicted).abs() <= 0.005,
        format!("M/x = {:.6} at x = {x_max}, beta log2 / 2 = {predicted:.6}", last.mollified_over_x()),
    );
    r.check(
        "unmollified average",
        (last.avg_d() - 2.0 * predicted).abs() <= 0.01,
        format!("sum D / x = {:.6}, beta log 2 = {:.6}", last.avg_d(), 2.0 * predicted),
    );
    let c = profile
        .points
        .iter()
        .filter(|p| p.x >= 1000)
        .map(|p| (p.mollified - predicted * p.x as f64).abs() / (p.x as f64).powf(0.4))
        .fold(0.0, f64::max);
    r.check("error term", c <= THEOREM1_C_MAX, format!("fitted C = {c:.4} in |M - slope x| <= C x^0.4"));
    if let Ok(fit) = fit_slope(&profile, FitModel::MollifiedOverX) {
        r.notes.push(format!(
            "least-squares slope of M: {:.6} (intercept {:.3}, max residual {:.3})",
            fit.slope, fit.intercept, fit.residual_max
        ));
    }
    if spec == WordSpec::Fibonacci {
        let to_m = (last.mollified_over_x() - REFERENCE_DECIMAL).abs();
        let to_avg = (last.avg_d() - REFERENCE_DECIMAL).abs();
        let matched = if to_avg < to_m { "sum D / x" } else { "M / x" };
        r.notes.push(format!(
            "slope adjudication: {REFERENCE_DECIMAL} is {to_m:.6} from M/x and {to_avg:.6} from sum D / x; \
             it matches {matched}, while (3 - sqrt5) log 2 / 4 = {predicted:.6} is the slope of M/x"
        ));
    }
    Ok(())
}

fn series(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    let b = WordSpec::Constant(Letter::B);
    let two = Complex64::new(2.0, 0.0);
    let zeta2 = PI * PI / 6.0;
    let t = dirichlet_truncated(&b, two, 1e-8)?;
    r.check(
        "constant word at s = 2, truncated",
        (t.value.re - zeta2).abs() <= 1e-6,
        format!("F = {:.12}, pi^2/6 = {zeta2:.12}", t.value.re),
    );
    let c = dirichlet_continued(&b, two, 100_000)?;
    r.check(
        "constant word at s = 2, continued",
        (c.value.re - zeta2).abs() <= 1e-6,
        format!("F = {:.12}, bound {:.2e}", c.value.re, c.error_bound),
    );
    let half = Complex64::new(0.5, 0.0);
    let c = dirichlet_continued(&b, half, DEFAULT_CONTINUATION_CUTOFF)?;
    let (z, _) = zeta(half)?;
    r.check(
        "constant word at s = 1/2",
        (c.value - z).norm() <= c.error_bound,
        format!("F = {:.10}, zeta(1/2) = {:.10}, bound {:.2e}", c.value.re, z.re, c.error_bound),
    );
    let defaults = vec![b, WordSpec::Fibonacci, WordSpec::mechanical_preset(QuadraticPreset::Silver)];
    for spec in specs_or(opts, defaults) {
        let res = residue_estimate(&spec, DEFAULT_CONTINUATION_CUTOFF)?;
        let beta = spec.beta();
        r.check(format!("{spec} residue"), (res - beta).abs() <= 1e-3, format!("{res:.8} vs beta {beta:.8}"));
    }
    Ok(())
}

fn identity(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    let n_max = opts.n_max.unwrap_or(100_000);
    let two = Complex64::new(2.0, 0.0);
    for spec in specs_or(opts, vec![WordSpec::Constant(Letter::B), WordSpec::Fibonacci]) {
        let id = euler_factor_identity_check(&spec, two, n_max, &opts.config)?;
        r.check(
            format!("{spec} at s = 2"),
            id.discrepancy < 1e-3,
            format!("lhs {:.10}, rhs {:.10}, discrepancy {:.3e} at N = {n_max}", id.lhs.re, id.rhs.re, id.discrepancy),
        );
    }
    Ok(())
}

fn perturbation(r: &mut SuiteReport, opts: &Options) -> Result<(), SeriesError> {
    let cases: [(WordSpec, &[u64], u64, f64); 3] = [
        (WordSpec::Fibonacci, &[], 100_000, 0.0),
        (WordSpec::Fibonacci, &[2], 100_000, 1e-3),
        (WordSpec::Constant(Letter::B), &[1], 10_000, 1e-2),
    ];
    for (base, flips, x, tol) in cases {
        let (a, b) = perturbation_slope_invariance(&base, flips, x, &opts.config)?;
        let diff = (a - b).abs();
        r.check(
            format!("{base} flips {flips:?} at x = {x}"),
            diff <= tol,
            format!("M/x {a:.6} vs {b:.6}, difference {diff:.2e}"),
        );
    }
    Ok(())
}
