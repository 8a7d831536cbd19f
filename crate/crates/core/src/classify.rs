//! Membership tests for the five simplicity classes and their characterized
//! intersections. Each intersection predicate evaluates both the definition
//! route and the characterization route and insists they agree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    build_tree, coxeter_normal_form, cycle_decomposition, Permutation,
};

/// Classification flags for one permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityProfile {
    pub s_simple: bool,
    pub c_simple: bool,
    pub g_simple: bool,
    pub b_simple: bool,
    pub t_simple: bool,
    /// For a non-identity g-simple permutation: the prime `p` and the number
    /// `k` of its `p`-cycles.
    pub g_witness: Option<(usize, usize)>,
}

pub fn profile(p: &Permutation) -> SimplicityProfile {
    SimplicityProfile {
        s_simple: is_s_simple(p),
        c_simple: is_c_simple(p),
        g_simple: is_g_simple(p),
        b_simple: is_b_simple(p),
        t_simple: is_t_simple(p),
        g_witness: g_witness(p),
    }
}

/// Segment-simple: no proper segment `I` (size 2..n-1) has a segment image.
pub fn is_s_simple(p: &Permutation) -> bool {
    let n = p.n();
    let w = p.word();
    for start in 0..n {
        let mut lo = w[start];
        let mut hi = w[start];
        // segments of every length from `start`, tracking the image's span
        for (end, &value) in w.iter().enumerate().skip(start + 1) {
            lo = lo.min(value);
            hi = hi.max(value);
            let len = end - start + 1;
            if len == n {
                break;
            }
            if hi - lo + 1 == len {
                return false;
            }
        }
    }
    true
}

/// Cycle-simple: at most one cycle of length ≥ 2.
pub fn is_c_simple(p: &Permutation) -> bool {
    cycle_decomposition(p, false).cycles.len() <= 1
}

fn is_prime(m: usize) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Group-simple witness: `Some((p, k))` iff the permutation is a product of
/// `k ≥ 1` cycles of one prime length `p` (plus fixed points).
pub fn g_witness(p: &Permutation) -> Option<(usize, usize)> {
    let cycles = cycle_decomposition(p, false).cycles;
    let first_len = cycles.first()?.len();
    if !is_prime(first_len) || cycles.iter().any(|c| c.len() != first_len) {
        return None;
    }
    Some((first_len, cycles.len()))
}

/// Group-simple: the subgroup generated by `p` is simple, which for a single
/// permutation means identity or a product of equal prime-length cycles.
pub fn is_g_simple(p: &Permutation) -> bool {
    p.is_identity() || g_witness(p).is_some()
}

/// Connected: every orbit is an integer interval.
pub fn is_connected_perm(p: &Permutation) -> bool {
    cycle_decomposition(p, true).cycles.iter().all(|c| {
        let min = *c.iter().min().unwrap();
        let max = c[0]; // standard form starts at the maximum
        max - min + 1 == c.len()
    })
}

/// Unimodal in standard form: strictly decreasing, then strictly increasing.
/// The cycle must start with its maximum.
pub fn is_unimodal_cycle(c: &[usize]) -> Result<bool> {
    if c.is_empty() {
        return Err(Error::EmptyInput);
    }
    if c[0] != *c.iter().max().unwrap() {
        return Err(Error::NotStandardForm);
    }
    let mut i = 1;
    while i < c.len() && c[i] < c[i - 1] {
        i += 1;
    }
    while i < c.len() && c[i] > c[i - 1] {
        i += 1;
    }
    Ok(i == c.len())
}

/// Braid-simple via the cycle characterization: connected and every cycle
/// unimodal.
pub fn is_b_simple(p: &Permutation) -> bool {
    if !is_connected_perm(p) {
        return false;
    }
    cycle_decomposition(p, false)
        .cycles
        .iter()
        .all(|c| is_unimodal_cycle(c).unwrap())
}

/// Braid-simple via the defining word condition: each Coxeter generator
/// appears at most once in the normal form.
pub fn is_b_simple_by_word(p: &Permutation) -> bool {
    let letters = coxeter_normal_form(p).letters();
    let mut seen = vec![false; p.n()];
    for g in letters {
        if seen[g] {
            return false;
        }
        seen[g] = true;
    }
    true
}

/// Tree-simple: every vertex of `T(π)` has degree 1 or 2. The one-node tree
/// (n = 1) counts as simple.
pub fn is_t_simple(p: &Permutation) -> bool {
    let n = p.n();
    if n == 1 {
        return true;
    }
    let t = build_tree(p);
    if t.children(1) > 2 {
        return false;
    }
    (2..=n).all(|v| t.children(v) <= 1)
}

/// Does the cycle contain three consecutive values `(i, i+1, i+2)` or
/// `(i+2, i+1, i)` at consecutive cyclic positions (wrapping around)?
pub fn has_three_consecutive(c: &[usize]) -> bool {
    let s = c.len();
    if s < 3 {
        return false;
    }
    for t in 0..s {
        let a = c[t];
        let b = c[(t + 1) % s];
        let d = c[(t + 2) % s];
        if b == a + 1 && d == a + 2 {
            return true;
        }
        if a >= 2 && b == a - 1 && d == a - 2 {
            return true;
        }
    }
    false
}

fn assert_routes_agree(name: &str, p: &Permutation, by_def: bool, by_char: bool) -> bool {
    assert_eq!(
        by_def, by_char,
        "invariant violated: {name} characterization disagrees with definitions on [{p}]"
    );
    by_def
}

/// `bSₙ ∩ cSₙ`: identity, or a single connected unimodal cycle. The
/// characterization route checks the normal form is one chained block
/// (`k_i + 1 = j_{i+1}` throughout).
pub fn in_b_and_c(p: &Permutation) -> bool {
    let by_def = is_b_simple(p) && is_c_simple(p);
    let by_char = p.is_identity()
        || coxeter_normal_form(p)
            .runs
            .windows(2)
            .all(|w| w[0].0 + 1 == w[1].1);
    assert_routes_agree("b∩c", p, by_def, by_char)
}

/// `bSₙ ∩ gSₙ`: identity, or `q` connected unimodal cycles of one prime
/// length `p`. The characterization route splits the normal form into maximal
/// chained blocks and requires every block to span the same prime length.
pub fn in_b_and_g(p: &Permutation) -> bool {
    let by_def = is_b_simple(p) && is_g_simple(p);
    let by_char = p.is_identity() || {
        let runs = coxeter_normal_form(p).runs;
        // square-free shape first: runs must not overlap
        if runs.windows(2).any(|w| w[1].1 <= w[0].0) {
            false
        } else {
            let mut block_lengths = Vec::new();
            let mut start = runs[0].1;
            for t in 0..runs.len() {
                let jump = t + 1 == runs.len() || runs[t + 1].1 > runs[t].0 + 1;
                if jump {
                    block_lengths.push(runs[t].0 - start + 2);
                    if t + 1 < runs.len() {
                        start = runs[t + 1].1;
                    }
                }
            }
            let q = block_lengths[0];
            is_prime(q) && block_lengths.iter().all(|&l| l == q)
        }
    };
    assert_routes_agree("b∩g", p, by_def, by_char)
}

/// `bSₙ ∩ sSₙ`: a unimodal `n`-cycle without three consecutive elements.
/// Degenerate `n ≤ 2` cases are the whole group.
pub fn in_b_and_s(p: &Permutation) -> bool {
    let by_def = is_b_simple(p) && is_s_simple(p);
    let by_char = if p.n() <= 2 {
        true
    } else {
        let cycles = cycle_decomposition(p, false).cycles;
        cycles.len() == 1
            && cycles[0].len() == p.n()
            && is_unimodal_cycle(&cycles[0]).unwrap()
            && !has_three_consecutive(&cycles[0])
    };
    assert_routes_agree("b∩s", p, by_def, by_char)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Left,
    Right,
}

/// `bSₙ ∩ tSₙ` by tree geometry: no bend on the left branch, at most one bend
/// on the right branch, and a bend at node `M` requires `M_L < M`.
fn b_and_t_characterization(p: &Permutation) -> bool {
    let n = p.n();
    if n == 1 {
        return true;
    }
    let t = build_tree(p);
    if t.children(1) > 2 || (2..=n).any(|v| t.children(v) > 1) {
        return false;
    }
    let step = |v: usize| -> Option<(usize, Dir)> {
        if let Some(l) = t.left[v] {
            Some((l, Dir::Left))
        } else {
            t.right[v].map(|r| (r, Dir::Right))
        }
    };
    // left branch: straight, remember its endpoint M_L
    let mut m_l = 0;
    if let Some(first) = t.left[1] {
        let mut v = first;
        let mut dir = Dir::Left;
        m_l = v;
        while let Some((next, d)) = step(v) {
            if d != dir {
                return false;
            }
            dir = d;
            v = next;
            m_l = v;
        }
    }
    // right branch: at most one bend, at a node larger than M_L
    if let Some(first) = t.right[1] {
        let mut v = first;
        let mut dir = Dir::Right;
        let mut bends = 0;
        while let Some((next, d)) = step(v) {
            if d != dir {
                bends += 1;
                if bends > 1 || m_l >= v {
                    return false;
                }
                dir = d;
            }
            v = next;
        }
    }
    true
}

pub fn in_b_and_t(p: &Permutation) -> bool {
    let by_def = is_b_simple(p) && is_t_simple(p);
    let by_char = b_and_t_characterization(p);
    assert_routes_agree("b∩t", p, by_def, by_char)
}

/// A member of all five classes, when one exists: the full intersection is
/// nonempty exactly for `n ≤ 2` and prime `n ≥ 5`, witnessed by the cycle
/// `(n, n−2, …, 3, 1, 2, 4, …, n−1)`.
pub fn quintuple_witness(n: usize) -> Option<Permutation> {
    let w = if n == 1 {
        Some(Permutation::identity(1))
    } else if n == 2 {
        Some(Permutation::from_word(vec![2, 1]).unwrap())
    } else if n >= 5 && is_prime(n) {
        let mut cyc: Vec<usize> = (1..=n).rev().filter(|v| v % 2 == 1).collect();
        cyc.extend((1..=n).filter(|v| v % 2 == 0));
        Some(Permutation::from_cycles(&[cyc], n).unwrap())
    } else {
        None
    };
    if let Some(p) = &w {
        let pr = profile(p);
        assert!(
            pr.s_simple && pr.c_simple && pr.g_simple && pr.b_simple && pr.t_simple,
            "invariant violated: quintuple witness for n={n} fails a predicate: {pr:?}"
        );
    }
    w
}
