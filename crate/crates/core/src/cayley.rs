//! Induced Cayley subgraphs Γ(A) over the Coxeter generators: construction
//! (with direct generation of the b- and c-simple vertex sets), components,
//! geodesics, planarity verdicts, and DOT export.

use std::collections::HashMap;

use crate::classify;
use crate::error::{Error, Result};
use crate::perm::{coxeter_normal_form, CoxeterWord, Permutation};
use crate::planar::{self, KuratowskiKind, KuratowskiWitness, Planarity};

/// Default cap on the degree for graph construction.
pub const DEFAULT_GRAPH_BOUND: usize = 9;

/// The induced subgraph Γ(A): an edge `a — b` labeled `i` whenever `b = a·τᵢ`
/// and both endpoints satisfy the defining predicate.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub n: usize,
    vertices: Vec<Permutation>,
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize, usize)>,
}

impl LabeledGraph {
    /// Builds the graph over a vertex set, which is sorted and deduplicated
    /// into the canonical lexicographic order.
    pub fn from_vertex_set(n: usize, mut vertices: Vec<Permutation>) -> Self {
        vertices.sort();
        vertices.dedup();
        let index: HashMap<&Permutation, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edges = Vec::new();
        for (ai, a) in vertices.iter().enumerate() {
            for i in 1..n {
                let b = a.right_tau(i);
                if let Some(&bi) = index.get(&b) {
                    // b = a·τᵢ is equivalent to a = b·τᵢ
                    debug_assert_eq!(b.right_tau(i), *a);
                    adj[ai].push((bi, i));
                    if ai < bi {
                        edges.push((ai, bi, i));
                    }
                }
            }
        }
        edges.sort_unstable();
        LabeledGraph {
            n,
            vertices,
            adj,
            edges,
        }
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Permutation {
        &self.vertices[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(a, b, generator)` with `a < b` in vertex order.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    fn unlabeled_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b, _)| (a, b)).collect()
    }
}

/// The five families, as vertex-set selectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleClass {
    S,
    C,
    G,
    B,
    T,
}

impl SimpleClass {
    pub fn letter(self) -> char {
        match self {
            SimpleClass::S => 's',
            SimpleClass::C => 'c',
            SimpleClass::G => 'g',
            SimpleClass::B => 'b',
            SimpleClass::T => 't',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            's' => Some(SimpleClass::S),
            'c' => Some(SimpleClass::C),
            'g' => Some(SimpleClass::G),
            'b' => Some(SimpleClass::B),
            't' => Some(SimpleClass::T),
            _ => None,
        }
    }

    pub fn contains(self, p: &Permutation) -> bool {
        match self {
            SimpleClass::S => classify::is_s_simple(p),
            SimpleClass::C => classify::is_c_simple(p),
            SimpleClass::G => classify::is_g_simple(p),
            SimpleClass::B => classify::is_b_simple(p),
            SimpleClass::T => classify::is_t_simple(p),
        }
    }
}

/// Every square-free run product over Σₙ, i.e. the normal forms of exactly
/// the b-simple permutations.
pub fn b_simple_words(n: usize) -> Vec<CoxeterWord> {
    let mut out = vec![CoxeterWord { n, runs: vec![] }];
    let mut runs: Vec<(usize, usize)> = Vec::new();
    fn rec(n: usize, min_j: usize, runs: &mut Vec<(usize, usize)>, out: &mut Vec<CoxeterWord>) {
        for j in min_j..n {
            for k in j..n {
                runs.push((k, j));
                out.push(CoxeterWord {
                    n,
                    runs: runs.clone(),
                });
                rec(n, k + 1, runs, out);
                runs.pop();
            }
        }
    }
    rec(n, 1, &mut runs, &mut out);
    out
}

pub fn b_simple_permutations(n: usize) -> Vec<Permutation> {
    b_simple_words(n)
        .iter()
        .map(|w| crate::perm::evaluate_word(w).expect("generated words are in range"))
        .collect()
}

/// Identity plus every single cycle of length ≥ 2 on a subset of `[1,n]`.
pub fn c_simple_permutations(n: usize) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(n)];
    for mask in 0u64..(1 << n) {
        let support: Vec<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        if support.len() < 2 {
            continue;
        }
        let max = *support.last().unwrap();
        let mut rest: Vec<usize> = support[..support.len() - 1].to_vec();
        loop {
            let mut cycle = vec![max];
            cycle.extend_from_slice(&rest);
            out.push(Permutation::from_cycles(&[cycle], n).unwrap());
            if !crate::enumerate::next_permutation(&mut rest) {
                break;
            }
        }
    }
    out
}

/// Vertex set of one simple class, generated directly where the class allows
/// it and by filtered enumeration otherwise.
pub fn class_members(n: usize, class: SimpleClass) -> Vec<Permutation> {
    match class {
        SimpleClass::B => b_simple_permutations(n),
        SimpleClass::C => c_simple_permutations(n),
        _ => {
            let mut out = Vec::new();
            crate::enumerate::for_each_permutation(n, |p| {
                if class.contains(p) {
                    out.push(p.clone());
                }
            });
            out
        }
    }
}

pub fn build_gamma_class(n: usize, class: SimpleClass) -> Result<LabeledGraph> {
    build_gamma_class_with_bound(n, class, DEFAULT_GRAPH_BOUND)
}

pub fn build_gamma_class_with_bound(
    n: usize,
    class: SimpleClass,
    bound: usize,
) -> Result<LabeledGraph> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok(LabeledGraph::from_vertex_set(n, class_members(n, class)))
}

/// Γ over an arbitrary predicate, by filtered enumeration of Σₙ.
pub fn build_gamma(n: usize, pred: impl Fn(&Permutation) -> bool) -> Result<LabeledGraph> {
    build_gamma_with_bound(n, DEFAULT_GRAPH_BOUND, pred)
}

pub fn build_gamma_with_bound(
    n: usize,
    bound: usize,
    pred: impl Fn(&Permutation) -> bool,
) -> Result<LabeledGraph> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let mut vertices = Vec::new();
    crate::enumerate::for_each_permutation(n, |p| {
        if pred(p) {
            vertices.push(p.clone());
        }
    });
    Ok(LabeledGraph::from_vertex_set(n, vertices))
}

/// Connected components by breadth-first traversal, each sorted, listed in
/// order of their minimal vertex.
pub fn components(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for seed in 0..g.vertex_count() {
        if seen[seed] {
            continue;
        }
        let mut comp = vec![seed];
        seen[seed] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &(v, _) in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The geodesic from the identity to a b-simple permutation inside Γ(bSₙ):
/// the letter-by-letter prefixes of the normal form. Every intermediate
/// vertex is checked to be b-simple.
pub fn geodesic_to_identity(p: &Permutation) -> Result<Vec<Permutation>> {
    if !classify::is_b_simple(p) {
        return Err(Error::NotBSimple);
    }
    let letters = coxeter_normal_form(p).letters();
    let mut path = vec![Permutation::identity(p.n())];
    let mut cur = Permutation::identity(p.n());
    for i in letters {
        cur = cur.right_tau(i);
        assert!(
            classify::is_b_simple(&cur),
            "invariant violated: geodesic prefix [{cur}] is not b-simple"
        );
        path.push(cur.clone());
    }
    assert_eq!(path.last().unwrap(), p);
    Ok(path)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DotOptions {
    /// Group vertices into one cluster per connected component.
    pub components: bool,
    /// Decorate vertices by membership in the other simple classes.
    pub marks: bool,
}

/// Deterministic DOT text. With `marks`, a vertex gets `*` appended for
/// c-simple, `style=filled` for g-simple, `shape=doublecircle` for s-simple,
/// and `penwidth=2` for t-simple.
pub fn export_dot(g: &LabeledGraph, opts: DotOptions) -> String {
    let mut out = String::from("graph gamma {\n  node [shape=circle];\n");
    let node_line = |v: usize| -> String {
        let p = g.vertex(v);
        let mut attrs: Vec<String> = Vec::new();
        if opts.marks {
            let mut label = p.one_line();
            if classify::is_c_simple(p) {
                label.push('*');
            }
            attrs.push(format!("label=\"{label}\""));
            if classify::is_g_simple(p) {
                attrs.push("style=filled".into());
            }
            if classify::is_s_simple(p) {
                attrs.push("shape=doublecircle".into());
            }
            if classify::is_t_simple(p) {
                attrs.push("penwidth=2".into());
            }
        }
        if attrs.is_empty() {
            format!("  \"{}\";\n", p.one_line())
        } else {
            format!("  \"{}\" [{}];\n", p.one_line(), attrs.join(", "))
        }
    };
    if opts.components {
        for (ci, comp) in components(g).iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{ci} {{\n"));
            for &v in comp {
                out.push_str("  ");
                out.push_str(&node_line(v));
            }
            out.push_str("  }\n");
        }
    } else {
        for v in 0..g.vertex_count() {
            out.push_str(&node_line(v));
        }
    }
    for &(a, b, i) in g.edges() {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{i}\"];\n",
            g.vertex(a).one_line(),
            g.vertex(b).one_line()
        ));
    }
    out.push_str("}\n");
    out
}

/// Certified planarity verdict for the graph.
pub fn planarity(g: &LabeledGraph) -> Planarity {
    planar::check_planarity(g.vertex_count(), &g.unlabeled_edges())
}

/// A verified K₃,₃ subdivision, when the graph is non-planar. Several edge
/// deletion orders are tried in case the first minimal residue is a K₅.
pub fn k33_witness(g: &LabeledGraph) -> Option<KuratowskiWitness> {
    let edges = g.unlabeled_edges();
    for seed in 0..32 {
        match planar::check_planarity_seeded(g.vertex_count(), &edges, seed) {
            Planarity::Planar(_) => return None,
            Planarity::NonPlanar(w) => {
                if w.kind == KuratowskiKind::K33 {
                    planar::verify_kuratowski(&edges, &w).expect("witness must re-verify");
                    return Some(w);
                }
            }
        }
    }
    None
}
