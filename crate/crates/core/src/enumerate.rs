//! Exact counts for the five families: closed formulas and recurrences on one
//! side, exhaustive census on the other, plus the asymptotic diagnostic for
//! the segment-simple family.

use num_bigint::BigUint;
use num_traits::{CheckedSub, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::classify;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default exhaustive-census bound (9! = 362880 permutations).
pub const DEFAULT_CENSUS_BOUND: usize = 9;

/// The triangle σ(n,i): b-simple permutations of Σₙ with length i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTriangle {
    /// `rows[n-1][i]` is σ(n,i) for `0 ≤ i ≤ n−1`.
    pub rows: Vec<Vec<BigUint>>,
}

impl SigmaTriangle {
    pub fn value(&self, n: usize, i: usize) -> BigUint {
        if n >= 1 && n <= self.rows.len() && i < self.rows[n - 1].len() {
            self.rows[n - 1][i].clone()
        } else {
            BigUint::zero()
        }
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n - 1]
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n - 1].iter().sum()
    }
}

fn sigma_by_recurrence_2(rows: &[Vec<BigUint>], n: usize, i: usize) -> BigUint {
    let get = |m: usize, j: isize| -> BigUint {
        if m < 1 || j < 0 {
            return BigUint::zero();
        }
        let j = j as usize;
        if m > rows.len() || j >= rows[m - 1].len() {
            BigUint::zero()
        } else {
            rows[m - 1][j].clone()
        }
    };
    // σ(n,i) = σ(n−1,i) + σ(n−1,i−1) + σ(n−2,i−2) + … + σ(n−i,0)
    let mut acc = get(n - 1, i as isize);
    for t in 0..i {
        acc += get(n - 1 - t, i as isize - 1 - t as isize);
    }
    acc
}

/// Builds the triangle up to `n_max` rows using the three-term recurrence and
/// re-verifies every entry against the long recurrence; a disagreement panics.
pub fn sigma_triangle(n_max: usize) -> SigmaTriangle {
    assert!(n_max >= 1);
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 2..=n_max {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let v = if n == 2 {
                sigma_by_recurrence_2(&rows, n, i)
            } else {
                // σ(n,i) = 2σ(n−1,i−1) + σ(n−1,i) − σ(n−2,i−1)
                let get = |m: usize, j: isize| -> BigUint {
                    if j < 0 || j as usize >= rows[m - 1].len() {
                        BigUint::zero()
                    } else {
                        rows[m - 1][j as usize].clone()
                    }
                };
                let plus = 2u32 * get(n - 1, i as isize - 1) + get(n - 1, i as isize);
                let minus = get(n - 2, i as isize - 1);
                plus.checked_sub(&minus)
                    .expect("three-term σ recurrence went negative")
            };
            row.push(v);
        }
        rows.push(row);
    }
    for n in 1..=n_max {
        for i in 0..n {
            let expected = if n == 1 {
                if i == 0 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            } else {
                sigma_by_recurrence_2(&rows, n, i)
            };
            assert_eq!(
                rows[n - 1][i],
                expected,
                "invariant violated: σ recurrences (2) and (3) disagree at ({n},{i})"
            );
        }
    }
    SigmaTriangle { rows }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Fibonacci with F₀ = 0, F₁ = 1.
pub fn fibonacci(m: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..m {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// `|bSₙ| = F(2n−1)`.
pub fn count_b(n: usize) -> BigUint {
    assert!(n >= 1);
    fibonacci(2 * n - 1)
}

/// Permutations that are a product of `k` cycles of equal length `l`:
/// `n! / (k! (n−kl)! l^k)`.
pub fn count_equal_cycle_products(n: usize, k: usize, l: usize) -> Result<BigUint> {
    if k < 1 || l < 1 {
        return Err(Error::DomainError("k and l must be at least 1".into()));
    }
    if k * l > n {
        return Err(Error::DomainError(format!("kl = {} exceeds n = {n}", k * l)));
    }
    let numerator = factorial(n);
    let denominator = factorial(k) * factorial(n - k * l) * BigUint::from(l as u64).pow(k as u32);
    let (q, r) = num_integer::Integer::div_rem(&numerator, &denominator);
    assert!(r.is_zero(), "cycle-product count is always an integer");
    Ok(q)
}

/// `|cSₙ| = 1 + Σ_{l=2}^n n! / (l (n−l)!)`.
pub fn count_c(n: usize) -> BigUint {
    assert!(n >= 1);
    let mut total = BigUint::one();
    for l in 2..=n {
        total += count_equal_cycle_products(n, 1, l).unwrap();
    }
    total
}

fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n)
        .filter(|&m| (2..m).take_while(|d| d * d <= m).all(|d| m % d != 0))
        .collect()
}

/// `|gSₙ| = 1 + Σ_p Σ_k n! / (k! (n−kp)! p^k)` over primes `p ≤ n`.
pub fn count_g(n: usize) -> BigUint {
    assert!(n >= 1);
    let mut total = BigUint::one();
    for p in primes_up_to(n) {
        for k in 1..=n / p {
            total += count_equal_cycle_products(n, k, p).unwrap();
        }
    }
    total
}

/// `|tSₙ| = 2^(n−2) + 4^(n−2)` for n ≥ 2, and 1 for n = 1.
pub fn count_t(n: usize) -> BigUint {
    assert!(n >= 1);
    if n == 1 {
        BigUint::one()
    } else {
        BigUint::from(2u32).pow(n as u32 - 2) + BigUint::from(4u32).pow(n as u32 - 2)
    }
}

/// Closed-form count for one class, when one exists (none for class s).
pub fn formula_count(class: char, n: usize) -> Option<BigUint> {
    match class {
        'b' => Some(count_b(n)),
        'c' => Some(count_c(n)),
        'g' => Some(count_g(n)),
        't' => Some(count_t(n)),
        _ => None,
    }
}

/// Exhaustive class counts over Σₙ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub s: u64,
    pub c: u64,
    pub g: u64,
    pub b: u64,
    pub t: u64,
    pub total: u64,
}

impl CensusReport {
    pub fn count(&self, class: char) -> u64 {
        match class {
            's' => self.s,
            'c' => self.c,
            'g' => self.g,
            'b' => self.b,
            't' => self.t,
            _ => panic!("unknown class {class}"),
        }
    }

    pub fn ratio(&self, class: char) -> f64 {
        self.count(class) as f64 / self.total as f64
    }
}

/// Streams all permutations of Σₙ in lexicographic one-line order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation)) {
    assert!(n >= 1);
    let mut p = Permutation::identity(n);
    loop {
        f(&p);
        if !next_permutation(p.word_mut()) {
            break;
        }
    }
}

/// In-place lexicographic successor; false once the word is the last one.
pub(crate) fn next_permutation(w: &mut [usize]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

fn census_block(n: usize, first: usize, acc: &mut [u64; 5]) {
    let mut word = Vec::with_capacity(n);
    word.push(first);
    word.extend((1..=n).filter(|&v| v != first));
    let mut p = Permutation::from_word_unchecked(word);
    loop {
        acc[0] += classify::is_s_simple(&p) as u64;
        acc[1] += classify::is_c_simple(&p) as u64;
        acc[2] += classify::is_g_simple(&p) as u64;
        acc[3] += classify::is_b_simple(&p) as u64;
        acc[4] += classify::is_t_simple(&p) as u64;
        if !next_permutation(&mut p.word_mut()[1..]) {
            break;
        }
    }
}

/// Census with the default bound and hardware parallelism.
pub fn census(n: usize) -> Result<CensusReport> {
    census_with(n, DEFAULT_CENSUS_BOUND, default_jobs())
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1)
}

/// Exhaustive census, partitioned over workers by the first image value.
/// The merge is plain addition, so the result is independent of `jobs`.
pub fn census_with(n: usize, bound: usize, jobs: usize) -> Result<CensusReport> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let jobs = jobs.clamp(1, n);
    let mut totals = [0u64; 5];
    if jobs == 1 {
        for v in 1..=n {
            census_block(n, v, &mut totals);
        }
    } else {
        let partials = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|worker| {
                    scope.spawn(move || {
                        let mut local = [0u64; 5];
                        let mut v = worker + 1;
                        while v <= n {
                            census_block(n, v, &mut local);
                            v += jobs;
                        }
                        local
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("census worker panicked"))
                .collect::<Vec<_>>()
        });
        for part in partials {
            for (t, p) in totals.iter_mut().zip(part) {
                *t += p;
            }
        }
    }
    Ok(CensusReport {
        n,
        s: totals[0],
        c: totals[1],
        g: totals[2],
        b: totals[3],
        t: totals[4],
        total: factorial(n).to_u64().expect("n! fits in u64 below the bound"),
    })
}

/// Census ratio of `|sSₙ|/n!` against the truncated asymptotic value
/// `(1 − 4/n + 2/(n(n−1))) / e²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticCheck {
    pub n: usize,
    pub s_count: u64,
    pub total: u64,
    pub ratio: f64,
    pub asymptote: f64,
    pub relative_gap: f64,
}

pub fn truncated_asymptote(n: usize) -> f64 {
    let nf = n as f64;
    let correction = if n >= 2 {
        1.0 - 4.0 / nf + 2.0 / (nf * (nf - 1.0))
    } else {
        1.0 - 4.0 / nf
    };
    correction / std::f64::consts::E.powi(2)
}

pub fn s_asymptotic_check(n: usize, bound: usize, jobs: usize) -> Result<AsymptoticCheck> {
    let report = census_with(n, bound, jobs)?;
    let ratio = report.ratio('s');
    let asymptote = truncated_asymptote(n);
    Ok(AsymptoticCheck {
        n,
        s_count: report.s,
        total: report.total,
        ratio,
        asymptote,
        relative_gap: (ratio - asymptote).abs() / asymptote.abs(),
    })
}
