//! Acceptance gate: one line per criterion, exit status 1 if any fails.
//!
//! Expected values come from oracles written here (closed forms, brute force,
//! frozen reference constants), not from the code under test.

#![allow(clippy::approx_constant)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use sturmian_parity::parity::{constant_word_parity, for_each_chunk, parity_counts, parity_sieve, ParityChunk};
use sturmian_parity::report::{write_parity_csv, write_sums_csv};
use sturmian_parity::series::{
    accumulate, dirichlet_continued, dirichlet_truncated, euler_factor_identity_check, geometric_checkpoints,
    odd_divisor_sum, odd_harmonic, residue_estimate,
};
use sturmian_parity::word::{balance_defect, to_ascii, Letter, QuadraticPreset, WordSpec};
use sturmian_parity::{ParityError, SieveConfig};

const GAMMA: f64 = 0.577_215_664_901_532_9;
const LN2: f64 = 0.693_147_180_559_945_3;
/// zeta(1/2), frozen reference value.
const ZETA_HALF: f64 = -1.460_354_508_809_586_8;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cfg(threads: usize) -> SieveConfig {
    SieveConfig::with_threads(threads)
}

fn fib_beta() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

/// Fixed point of a -> ab, b -> a, by repeated substitution.
fn fibonacci_by_substitution(len: usize) -> Vec<u8> {
    let mut w = vec![b'a'];
    while w.len() < len {
        w = w.iter().flat_map(|&c| if c == b'a' { vec![b'a', b'b'] } else { vec![b'a'] }).collect();
    }
    w.truncate(len);
    w
}

fn letters(spec: &WordSpec, len: u64) -> Vec<u8> {
    spec.prefix(len).unwrap().iter().map(|l| l.as_char() as u8).collect()
}

/// `D(n)` from the definition, with the word given as a letter slice.
fn d_brute(word: &[u8], n: usize) -> i64 {
    (1..=n).filter(|j| n.is_multiple_of(*j) && word[j - 1] == b'b').map(|j| if (n / j) % 2 == 1 { 1 } else { -1 }).sum()
}

/// `sum_{n <= x} D(n)` and `sum_{n <= x} n D(n)`, summed over `j` with `w_j = b`.
fn exact_sums(word: &[u8], x: u64) -> (i64, i128) {
    let mut sum_d = 0i64;
    let mut sum_nd = 0i128;
    for j in 1..=x {
        if word[(j - 1) as usize] != b'b' {
            continue;
        }
        let k = x / j;
        // sum_{m <= k} (-1)^(m+1) and sum_{m <= k} m (-1)^(m+1)
        sum_d += (k % 2) as i64;
        let alt = if k % 2 == 1 { (k as i128 + 1) / 2 } else { -(k as i128) / 2 };
        sum_nd += j as i128 * alt;
    }
    (sum_d, sum_nd)
}

fn c1_prefix() -> Outcome {
    let got = to_ascii(&WordSpec::Fibonacci.prefix(11).map_err(|e| e.to_string())?);
    ensure(got == "abaababaaba", format!("prefix {got}"))?;
    Ok(got)
}

fn c2_mechanical_vs_morphism() -> Outcome {
    let len = 100_000u64;
    let reference = fibonacci_by_substitution(len as usize);
    let morphism = letters(&WordSpec::Fibonacci, len);
    let mechanical = letters(&WordSpec::mechanical_preset(QuadraticPreset::Fibonacci), len);
    let explicit: WordSpec = "mechanical:alpha=fibonacci,rho=0,one=b".parse().map_err(|e| format!("{e}"))?;
    ensure(morphism == reference, "morphism prefix differs from substitution oracle")?;
    ensure(mechanical == reference, "mechanical prefix differs from substitution oracle")?;
    ensure(letters(&explicit, len) == reference, "parsed mechanical spec differs")?;
    Ok(format!("{len} letters agree"))
}

/// Largest spread of `b` counts over windows of length `len` starting at 1..=n_max.
fn balance_oracle(word: &[u8], len: usize, n_max: usize) -> u64 {
    let mut count = word[..len].iter().filter(|&&c| c == b'b').count() as i64;
    let (mut lo, mut hi) = (count, count);
    for start in 1..n_max {
        count += (word[start + len - 1] == b'b') as i64 - (word[start - 1] == b'b') as i64;
        lo = lo.min(count);
        hi = hi.max(count);
    }
    (hi - lo) as u64
}

fn c3_balance_and_frequency() -> Outcome {
    let specs = [
        (WordSpec::Fibonacci, fib_beta()),
        (WordSpec::mechanical_preset(QuadraticPreset::Silver), 2f64.sqrt() - 1.0),
        (WordSpec::mechanical_preset(QuadraticPreset::Sqrt3Minus1), 3f64.sqrt() - 1.0),
    ];
    let n_max = 10_000usize;
    let freq_len = 100_000u64;
    let mut worst_freq = 0f64;
    for (spec, beta) in &specs {
        let word = letters(spec, freq_len);
        for len in 1..=100 {
            let lib = balance_defect(spec, len as u64, n_max as u64).map_err(|e| e.to_string())?;
            let oracle = balance_oracle(&word, len, n_max);
            ensure(lib == oracle, format!("{spec} L={len}: library {lib}, oracle {oracle}"))?;
            ensure(lib <= 1, format!("{spec} L={len}: defect {lib}"))?;
        }
        let mut count = 0u64;
        for n in 1..=freq_len {
            count += (word[(n - 1) as usize] == b'b') as u64;
            let dev = (beta * n as f64 - count as f64).abs();
            worst_freq = worst_freq.max(dev);
            ensure(dev <= 1.0, format!("{spec} n={n}: |beta n - b_count| = {dev}"))?;
        }
        let lib_count = spec.b_count(freq_len).map_err(|e| e.to_string())?;
        ensure(lib_count == count, format!("{spec}: b_count {lib_count} vs {count}"))?;
    }
    Ok(format!("defect <= 1 for L <= 100; max frequency deviation {worst_freq:.4}"))
}

fn c4_convolution() -> Outcome {
    let n_max = 10_000u64;
    let specs = [
        WordSpec::Fibonacci,
        WordSpec::Constant(Letter::B),
        WordSpec::perturbed(WordSpec::Fibonacci, [2, 17, 90]).unwrap(),
    ];
    for spec in &specs {
        let table = parity_sieve(spec, n_max, &cfg(4)).map_err(|e| e.to_string())?;
        let word = letters(spec, n_max);
        for n in 1..=n_max {
            let sieve = table.d(n);
            let direct = parity_counts(spec, n).map_err(|e| e.to_string())?.d();
            ensure(sieve == direct, format!("{spec} n={n}: sieve {sieve}, parity_counts {direct}"))?;
            if n <= 3000 {
                let brute = d_brute(&word, n as usize);
                ensure(sieve == brute, format!("{spec} n={n}: sieve {sieve}, brute {brute}"))?;
            }
        }
    }
    Ok(format!("3 specs agree for n <= {n_max}"))
}

fn c5_closed_form() -> Outcome {
    let b = WordSpec::Constant(Letter::B);
    for n in 1..=100_000u64 {
        let closed = constant_word_parity(n);
        let direct = parity_counts(&b, n).map_err(|e| e.to_string())?;
        ensure(closed == direct, format!("n={n}: {closed:?} vs {direct:?}"))?;
    }
    // Brute force over every j <= n for a sample.
    for n in (1..=20_000u64).step_by(37) {
        let (mut o, mut e) = (0u32, 0u32);
        for j in (1..=n).filter(|j| n % j == 0) {
            if (n / j) % 2 == 1 {
                o += 1;
            } else {
                e += 1;
            }
        }
        let closed = constant_word_parity(n);
        ensure((closed.odd, closed.even) == (o, e), format!("n={n}: brute ({o}, {e})"))?;
    }
    let datum = constant_word_parity(10_000_080);
    let got = (datum.odd, datum.even, datum.d());
    ensure(got == (48, 192, -144), format!("n = 10000080 gives {got:?}"))?;
    Ok("n <= 100000 and n = 10000080 -> (48, 192, -144)".into())
}

fn c6_lemma_ao() -> Outcome {
    let mut worst = 0f64;
    for k in 2..=6 {
        let x = 10f64.powi(k);
        let asym = 0.5 * x.ln() + LN2 / 2.0 + GAMMA / 2.0;
        let err = (odd_harmonic(x) - asym).abs();
        worst = worst.max(err * x);
        ensure(err <= 2.0 / x, format!("x={x}: error {err:e} > 2/x"))?;
    }
    ensure((odd_harmonic(5.0) - 23.0 / 15.0).abs() < 1e-15, "x = 5")?;
    Ok(format!("max x * error = {worst:.2e}"))
}

/// `sum_{odd a <= x} #{odd b <= x / a}` without the hyperbola split.
fn odd_lattice_count(x: u64) -> u64 {
    (1..=x).step_by(2).map(|a| (x / a).div_ceil(2)).sum()
}

fn c7_lemma_i() -> Outcome {
    let mut worst = 0f64;
    for k in 3..=6 {
        let x = 10u64.pow(k);
        let sum = odd_divisor_sum(x);
        ensure(sum.hyperbola == sum.direct, format!("x={x}: routes differ {sum:?}"))?;
        let oracle = odd_lattice_count(x);
        ensure(sum.hyperbola == oracle, format!("x={x}: {} vs lattice count {oracle}", sum.hyperbola))?;
        let xf = x as f64;
        let asym = 0.25 * xf * xf.ln() + xf * (LN2 / 2.0 + GAMMA / 2.0 - 0.25);
        let ratio = (sum.hyperbola as f64 - asym).abs() / xf.sqrt();
        worst = worst.max(ratio);
        ensure(ratio <= 5.0, format!("x={x}: |I - asymptotic|/sqrt x = {ratio}"))?;
    }
    ensure(odd_divisor_sum(9).direct == 10, "x = 9")?;
    Ok(format!("routes agree; max |I - asymptotic|/sqrt x = {worst:.4}"))
}

fn c8_proposition1() -> Outcome {
    let x = 1_000_000u64;
    let b = WordSpec::Constant(Letter::B);
    let profile = accumulate(&b, x, &[x], &cfg(4)).map_err(|e| e.to_string())?;
    let p = profile.points[0];
    let (oracle, _) = exact_sums(&vec![b'b'; x as usize], x);
    ensure(p.sum_d == oracle, format!("sum_D {} vs oracle {oracle}", p.sum_d))?;
    let avg = p.sum_d as f64 / x as f64;
    ensure((avg - LN2).abs() <= 0.01, format!("average {avg}"))?;
    Ok(format!("sum D / x = {avg:.6}, log 2 = {LN2:.6}"))
}

fn c9_theorem1() -> Outcome {
    let x = 1_000_000u64;
    let fib = WordSpec::Fibonacci;
    let mut checkpoints = geometric_checkpoints(x);
    checkpoints.push(x);
    let profile = accumulate(&fib, x, &checkpoints, &cfg(4)).map_err(|e| e.to_string())?;
    let word = fibonacci_by_substitution(x as usize);
    let beta = fib_beta();
    let slope = beta * LN2 / 2.0;
    let mut c = 0f64;
    for p in &profile.points {
        let (sd, snd) = exact_sums(&word, p.x);
        ensure((p.sum_d, p.sum_nd) == (sd, snd), format!("x={}: sums differ from oracle", p.x))?;
        let m = sd as f64 - snd as f64 / p.x as f64;
        ensure((p.mollified - m).abs() <= 1e-9 * m.abs().max(1.0), format!("x={}: M {} vs {m}", p.x, p.mollified))?;
        c = c.max((p.mollified - slope * p.x as f64).abs() / (p.x as f64).powf(0.4));
    }
    let last = profile.points.last().unwrap();
    let m_over_x = last.mollified / x as f64;
    let avg = last.sum_d as f64 / x as f64;
    ensure((m_over_x - slope).abs() <= 0.005, format!("M/x = {m_over_x}, expected {slope}"))?;
    ensure((avg - beta * LN2).abs() <= 0.01, format!("sum D / x = {avg}, expected {}", beta * LN2))?;
    ensure(c <= 1.0, format!("fitted C = {c}"))?;
    let matches = if (avg - 0.264758).abs() < (m_over_x - 0.264758).abs() { "sum D / x" } else { "M/x" };
    Ok(format!("M/x = {m_over_x:.6}, sum D / x = {avg:.6}, C = {c:.4}; 0.264758 matches {matches}"))
}

fn c10_dirichlet() -> Outcome {
    let b = WordSpec::Constant(Letter::B);
    let two = Complex64::new(2.0, 0.0);
    let zeta2 = PI * PI / 6.0;
    let t = dirichlet_truncated(&b, two, 1e-8).map_err(|e| e.to_string())?;
    ensure((t.value.re - zeta2).abs() <= 1e-6, format!("truncated {}", t.value))?;
    let c = dirichlet_continued(&b, two, 100_000).map_err(|e| e.to_string())?;
    ensure((c.value.re - zeta2).abs() <= 1e-6, format!("continued {}", c.value))?;

    let h = dirichlet_continued(&b, Complex64::new(0.5, 0.0), 1_000_000).map_err(|e| e.to_string())?;
    let miss = (h.value.re - ZETA_HALF).abs();
    ensure(miss <= h.error_bound, format!("s=1/2: {} vs {ZETA_HALF}, bound {}", h.value.re, h.error_bound))?;

    let silver = WordSpec::mechanical_preset(QuadraticPreset::Silver);
    let n = 10_000_000u64;
    let silver_freq = silver.prefix_bits(n).map_err(|e| e.to_string())?.count_b() as f64 / n as f64;
    let cases = [(b, 1.0), (WordSpec::Fibonacci, fib_beta()), (silver, silver_freq)];
    let mut detail = Vec::new();
    for (spec, oracle) in &cases {
        let r = residue_estimate(spec, 1_000_000).map_err(|e| e.to_string())?;
        ensure((r - oracle).abs() <= 1e-3, format!("{spec}: residue {r}, expected {oracle}"))?;
        detail.push(format!("{r:.6}"));
    }
    Ok(format!("zeta(2) both ways; zeta(1/2) off by {miss:.1e}; residues {}", detail.join(", ")))
}

fn c11_identity() -> Outcome {
    let two = Complex64::new(2.0, 0.0);
    let zeta2 = PI * PI / 6.0;
    let mut worst = 0f64;
    for spec in [WordSpec::Constant(Letter::B), WordSpec::Fibonacci] {
        let id = euler_factor_identity_check(&spec, two, 100_000, &cfg(4)).map_err(|e| e.to_string())?;
        ensure(id.discrepancy < 1e-3, format!("{spec}: discrepancy {}", id.discrepancy))?;
        if spec == WordSpec::Constant(Letter::B) {
            ensure((id.rhs.re - 0.5 * zeta2 * zeta2).abs() < 1e-8, format!("rhs {} vs zeta(2)^2/2", id.rhs.re))?;
        }
        worst = worst.max(id.discrepancy);
    }
    Ok(format!("max discrepancy {worst:.2e}"))
}

fn parity_csv(spec: &WordSpec, x: u64, threads: usize) -> Result<Vec<u8>, String> {
    let mut records = Vec::new();
    for_each_chunk(spec, x, &cfg(threads), |c: &ParityChunk| {
        records.extend(c.records());
        Ok::<_, ParityError>(())
    })
    .map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    write_parity_csv(&mut out, records).map_err(|e| e.to_string())?;
    Ok(out)
}

fn sums_csv(spec: &WordSpec, x: u64, threads: usize) -> Result<Vec<u8>, String> {
    let mut checkpoints = geometric_checkpoints(x);
    checkpoints.push(x);
    let profile = accumulate(spec, x, &checkpoints, &cfg(threads)).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    write_sums_csv(&mut out, &profile).map_err(|e| e.to_string())?;
    Ok(out)
}

fn c12_determinism() -> Outcome {
    let specs = [
        WordSpec::Fibonacci,
        WordSpec::Constant(Letter::B),
        WordSpec::perturbed(WordSpec::Fibonacci, [2, 17, 90]).unwrap(),
    ];
    let mut bytes = 0;
    for spec in &specs {
        let one = parity_csv(spec, 10_000, 1)?;
        ensure(one == parity_csv(spec, 10_000, 8)?, format!("parity CSV for {spec} differs"))?;
        bytes += one.len();
    }
    for spec in [WordSpec::Constant(Letter::B), WordSpec::Fibonacci] {
        let one = sums_csv(&spec, 1_000_000, 1)?;
        ensure(one == sums_csv(&spec, 1_000_000, 8)?, format!("sums CSV for {spec} differs"))?;
        bytes += one.len();
    }
    Ok(format!("{bytes} bytes identical at 1 and 8 threads"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "Fibonacci prefix", limit: Duration::from_millis(1), run: c1_prefix },
        Criterion {
            id: 2,
            title: "mechanical/morphism agreement",
            limit: Duration::from_secs(1),
            run: c2_mechanical_vs_morphism,
        },
        Criterion {
            id: 3,
            title: "balance and frequency",
            limit: Duration::from_secs(5),
            run: c3_balance_and_frequency,
        },
        Criterion { id: 4, title: "convolution oracle", limit: Duration::from_secs(10), run: c4_convolution },
        Criterion { id: 5, title: "constant-word closed form", limit: Duration::from_secs(30), run: c5_closed_form },
        Criterion { id: 6, title: "odd harmonic sum", limit: Duration::from_secs(5), run: c6_lemma_ao },
        Criterion { id: 7, title: "odd divisor sum", limit: Duration::from_secs(30), run: c7_lemma_i },
        Criterion { id: 8, title: "constant-word average", limit: Duration::from_secs(10), run: c8_proposition1 },
        Criterion { id: 9, title: "mollified slope", limit: Duration::from_secs(30), run: c9_theorem1 },
        Criterion { id: 10, title: "Dirichlet series", limit: Duration::from_secs(60), run: c10_dirichlet },
        Criterion { id: 11, title: "Euler factor identity", limit: Duration::from_secs(30), run: c11_identity },
        Criterion { id: 12, title: "thread determinism", limit: Duration::MAX, run: c12_determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow, limit {:?}", c.limit)),
            Err(e) => (false, e),
        };
        failed += !ok as u32;
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {} ({:.3}s): {detail}", c.id, c.title, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() as u32 - failed, criteria.len());
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
