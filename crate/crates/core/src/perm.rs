//! Permutation representations: one-line word, standard cycle decomposition,
//! Coxeter normal form, and the associated ordered plane tree.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` stored as its one-line word `[π(1), …, π(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Identity on `n` letters. `n` must be at least 1.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// Builds a permutation from a one-line word, checking the bijection invariant.
    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v < 1 || v > n {
                return Err(Error::NotABijection {
                    n,
                    reason: format!("value {v} outside 1..={n}"),
                });
            }
            if seen[v] {
                return Err(Error::NotABijection {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    /// Parses a whitespace- or comma-separated one-line word such as `"4 1 6 2 5 3"`.
    pub fn parse_one_line(text: &str) -> Result<Self> {
        let mut word = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                what: "one-line word",
                text: tok.to_string(),
            })?;
            word.push(v);
        }
        Self::from_word(word)
    }

    /// Parses cycle notation such as `"(4 2 1)(6 3)"`. Values absent from the
    /// cycles are fixed points; the degree is the largest value seen unless a
    /// larger `n` is given.
    pub fn parse_cycles(text: &str, n: Option<usize>) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let start = rest.find('(').ok_or(Error::Parse {
                what: "cycle notation",
                text: rest.to_string(),
            })?;
            let end = rest.find(')').ok_or(Error::Parse {
                what: "cycle notation",
                text: rest.to_string(),
            })?;
            if end < start || rest[..start].trim() != "" {
                return Err(Error::Parse {
                    what: "cycle notation",
                    text: rest.to_string(),
                });
            }
            let inner = &rest[start + 1..end];
            let mut cyc = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    what: "cycle notation",
                    text: tok.to_string(),
                })?;
                cyc.push(v);
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[end + 1..].trim_start();
        }
        let max_seen = cycles.iter().flatten().copied().max().unwrap_or(1);
        let n = n.unwrap_or(max_seen).max(max_seen);
        Self::from_cycles(&cycles, n)
    }

    /// Builds a permutation from disjoint cycles over `{1..n}`.
    pub fn from_cycles(cycles: &[Vec<usize>], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut word: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cyc in cycles {
            for (idx, &v) in cyc.iter().enumerate() {
                if v < 1 || v > n {
                    return Err(Error::NotABijection {
                        n,
                        reason: format!("cycle value {v} outside 1..={n}"),
                    });
                }
                if touched[v] {
                    return Err(Error::NotABijection {
                        n,
                        reason: format!("value {v} appears in two cycles"),
                    });
                }
                touched[v] = true;
                let next = cyc[(idx + 1) % cyc.len()];
                word[v - 1] = next;
            }
        }
        Self::from_word(word)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Image `π(i)` for `1 ≤ i ≤ n`.
    pub fn image(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Function composition: `(a∘b)(i) = a(b(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::DegreeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let word = other.word.iter().map(|&v| self.word[v - 1]).collect();
        Ok(Permutation { word })
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v - 1] = i + 1;
        }
        Permutation { word }
    }

    /// Right multiplication by the Coxeter generator `τ_i = (i, i+1)`:
    /// `p·τ_i` swaps the entries at positions `i`, `i+1` of the one-line word.
    pub fn right_tau(&self, i: usize) -> Permutation {
        assert!(i >= 1 && i < self.n(), "generator index out of range");
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        Permutation { word }
    }

    pub(crate) fn word_mut(&mut self) -> &mut Vec<usize> {
        &mut self.word
    }

    /// One-line word as text, e.g. `"4 1 6 2 5 3"`.
    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.one_line())
    }
}

/// Standard cycle decomposition: each cycle starts with its maximum, cycles
/// listed in increasing order of their maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub n: usize,
    pub cycles: Vec<Vec<usize>>,
    pub includes_fixed_points: bool,
}

/// Computes the standard representation of `p`; length-1 cycles are kept only
/// when `include_fixed` is set.
pub fn cycle_decomposition(p: &Permutation, include_fixed: bool) -> CycleDecomposition {
    let n = p.n();
    let mut seen = vec![false; n + 1];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut x = p.image(start);
        while x != start {
            seen[x] = true;
            orbit.push(x);
            x = p.image(x);
        }
        if orbit.len() == 1 && !include_fixed {
            continue;
        }
        // rotate so the maximum comes first
        let max_pos = orbit
            .iter()
            .enumerate()
            .max_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .unwrap();
        orbit.rotate_left(max_pos);
        cycles.push(orbit);
    }
    cycles.sort_by_key(|c| c[0]);
    CycleDecomposition {
        n,
        cycles,
        includes_fixed_points: include_fixed,
    }
}

impl CycleDecomposition {
    /// Multiplies the cycles back into a permutation.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(&self.cycles, self.n).expect("cycles are disjoint by construction")
    }

    /// Parses text such as `"(4 2 1)(6 3)"` into a decomposition in standard form.
    pub fn parse(text: &str, n: Option<usize>, include_fixed: bool) -> Result<Self> {
        let p = Permutation::parse_cycles(text, n)?;
        Ok(cycle_decomposition(&p, include_fixed))
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cyc in &self.cycles {
            let parts: Vec<String> = cyc.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Flattening of the standard representation with fixed points included: the
/// sequence `π̂`, itself a permutation of `{1..n}`.
pub fn standard_sequence(p: &Permutation) -> Vec<usize> {
    cycle_decomposition(p, true)
        .cycles
        .into_iter()
        .flatten()
        .collect()
}

/// A product of descending runs `D(k,j) = τ_k τ_{k-1} … τ_j` with strictly
/// increasing run maxima: the length-lexicographically minimal reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterWord {
    pub n: usize,
    pub runs: Vec<(usize, usize)>,
}

impl CoxeterWord {
    /// Total word length `Σ (k_i − j_i + 1)`.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(k, j)| k - j + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// The generator indices of the expanded word, e.g. `D(3,1)` → `[3,2,1]`.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for &(k, j) in &self.runs {
            for t in (j..=k).rev() {
                out.push(t);
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        let mut prev = 0;
        for &(k, j) in &self.runs {
            if j < 1 || j > k {
                return Err(Error::DomainError(format!("malformed run D({k},{j})")));
            }
            if k > self.n.saturating_sub(1) {
                return Err(Error::RunOutOfRange { n: self.n, k, j });
            }
            if k <= prev && prev != 0 {
                return Err(Error::DomainError(format!(
                    "run maxima must strictly increase, got {prev} then {k}"
                )));
            }
            prev = k;
        }
        Ok(())
    }

    /// Parses `"D(3,1)D(4,4)D(5,3)"`; `"e"` denotes the identity.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut runs = Vec::new();
        if trimmed != "e" {
            let mut rest = trimmed;
            while !rest.is_empty() {
                let open = rest.find('(').ok_or(Error::Parse {
                    what: "Coxeter word",
                    text: rest.to_string(),
                })?;
                let close = rest.find(')').ok_or(Error::Parse {
                    what: "Coxeter word",
                    text: rest.to_string(),
                })?;
                if rest[..open].trim() != "D" || close < open {
                    return Err(Error::Parse {
                        what: "Coxeter word",
                        text: rest.to_string(),
                    });
                }
                let inner = &rest[open + 1..close];
                let nums: Vec<&str> = inner.split(',').map(str::trim).collect();
                if nums.len() != 2 {
                    return Err(Error::Parse {
                        what: "Coxeter word",
                        text: inner.to_string(),
                    });
                }
                let k: usize = nums[0].parse().map_err(|_| Error::Parse {
                    what: "Coxeter word",
                    text: inner.to_string(),
                })?;
                let j: usize = nums[1].parse().map_err(|_| Error::Parse {
                    what: "Coxeter word",
                    text: inner.to_string(),
                })?;
                runs.push((k, j));
                rest = rest[close + 1..].trim_start();
            }
        }
        let k_max = runs.iter().map(|&(k, _)| k).max().unwrap_or(0);
        let n = n.unwrap_or(k_max + 1).max(k_max + 1);
        let w = CoxeterWord { n, runs };
        w.check()?;
        Ok(w)
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("e");
        }
        for &(k, j) in &self.runs {
            write!(f, "D({k},{j})")?;
        }
        Ok(())
    }
}

/// Evaluates a run product left to right. A single run `D(k,j)` is the cycle
/// `(k+1, k, …, j+1, j)`.
pub fn evaluate_word(w: &CoxeterWord) -> Result<Permutation> {
    w.check()?;
    let n = w.n;
    let mut word: Vec<usize> = (1..=n).collect();
    for &(k, j) in &w.runs {
        // right-multiplying by D(k,j) rotates the entries at positions j..=k+1
        word[j - 1..=k].rotate_right(1);
    }
    Ok(Permutation { word })
}

/// The length-lex minimal reduced word for `p`, computed by peeling the run
/// that moves the largest displaced value, largest value first.
pub fn coxeter_normal_form(p: &Permutation) -> CoxeterWord {
    let n = p.n();
    let mut word = p.word.clone();
    let mut runs = Vec::new();
    for m in (2..=n).rev() {
        let pos = word[..m].iter().position(|&v| v == m).unwrap() + 1;
        if pos == m {
            continue;
        }
        // strip D(m-1, pos) from the right: slide m back to position m
        word[pos - 1..m].rotate_left(1);
        runs.push((m - 1, pos));
    }
    runs.reverse();
    CoxeterWord { n, runs }
}

/// Number of inversions: pairs `i < j` with `π(i) > π(j)`.
pub fn coxeter_length(p: &Permutation) -> usize {
    let w = &p.word;
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// The ordered tree `T(π)`: built recursively from the standard sequence by
/// rooting at its minimum, the prefix going left and the suffix going right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneTree {
    pub n: usize,
    /// `left[v]` / `right[v]` are the children of node `v`; index 0 unused.
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub parent: Vec<Option<usize>>,
}

pub fn build_tree(p: &Permutation) -> PlaneTree {
    let seq = standard_sequence(p);
    let n = p.n();
    let mut tree = PlaneTree {
        n,
        left: vec![None; n + 1],
        right: vec![None; n + 1],
        parent: vec![None; n + 1],
    };
    fn build(seq: &[usize], tree: &mut PlaneTree) -> Option<usize> {
        if seq.is_empty() {
            return None;
        }
        let (mi, _) = seq.iter().enumerate().min_by_key(|(_, v)| **v).unwrap();
        let root = seq[mi];
        if let Some(l) = build(&seq[..mi], tree) {
            tree.left[root] = Some(l);
            tree.parent[l] = Some(root);
        }
        if let Some(r) = build(&seq[mi + 1..], tree) {
            tree.right[root] = Some(r);
            tree.parent[r] = Some(root);
        }
        Some(root)
    }
    let root = build(&seq, &mut tree).expect("nonempty sequence");
    assert_eq!(root, 1, "the root of T(π) is always the mark 1");
    tree
}

impl PlaneTree {
    pub fn children(&self, v: usize) -> usize {
        self.left[v].is_some() as usize + self.right[v].is_some() as usize
    }

    /// Graph degree of node `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.children(v) + self.parent[v].is_some() as usize
    }

    /// In-order traversal; reconstructs the standard sequence.
    pub fn in_order(&self) -> Vec<usize> {
        fn walk(t: &PlaneTree, v: usize, out: &mut Vec<usize>) {
            if let Some(l) = t.left[v] {
                walk(t, l, out);
            }
            out.push(v);
            if let Some(r) = t.right[v] {
                walk(t, r, out);
            }
        }
        let mut out = Vec::with_capacity(self.n);
        walk(self, 1, &mut out);
        out
    }

    /// DOT text with drawing coordinates: every edge at 45° from the vertical,
    /// edge lengths halving with depth. Display-only, carries no invariants.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tree {\n  node [shape=circle];\n");
        fn place(t: &PlaneTree, v: usize, x: f64, y: f64, len: f64, out: &mut String) {
            out.push_str(&format!("  {v} [pos=\"{x:.4},{y:.4}!\"];\n"));
            let step = len / std::f64::consts::SQRT_2;
            if let Some(l) = t.left[v] {
                out.push_str(&format!("  {v} -- {l};\n"));
                place(t, l, x - step, y - step, len / 2.0, out);
            }
            if let Some(r) = t.right[v] {
                out.push_str(&format!("  {v} -- {r};\n"));
                place(t, r, x + step, y - step, len / 2.0, out);
            }
        }
        place(self, 1, 0.0, 0.0, 1.0, &mut out);
        out.push_str("}\n");
        out
    }
}
