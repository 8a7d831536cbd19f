//! The permutahedron subcomplex P(A), the Bruhat/weak order complexes B(A)
//! and W(A), and the filtration between P(bSₙ) and P(bSₙ₊₁) with elementary
//! collapse evidence.
//!
//! Permutahedron faces are modeled as ordered set partitions of the value
//! set: the face (B₁|…|B_k) carries the permutations whose first |B₁|
//! positions hold exactly the values B₁, and so on. Its dimension is
//! n − k, and the 1-skeleton is the Cayley graph over the τ generators.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::cayley;
use crate::error::{Error, Result};
use crate::perm::{coxeter_length, Permutation};
use crate::snf::{self, HomologyGroup, Matrix};

/// Default cap on the degree for complex construction.
pub const DEFAULT_COMPLEX_BOUND: usize = 6;

/// Safety valve for order-complex chain explosions.
pub const DEFAULT_MAX_CELLS: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub dim: usize,
    pub label: String,
    /// Sorted ids into the complex vertex list.
    pub vertices: Vec<usize>,
    /// Signed incidences with cells one dimension down.
    pub boundary: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub vertex_perms: Vec<Permutation>,
    /// Sorted by (dimension, label); ids are positions in this list.
    pub cells: Vec<Cell>,
}

impl CellComplex {
    pub fn top_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn counts_per_dim(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.top_dim() + 1];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Checks ∂² = 0 over the integers on every cell.
    pub fn verify_boundary_squared(&self) -> std::result::Result<(), String> {
        for (id, cell) in self.cells.iter().enumerate() {
            if cell.dim < 2 {
                continue;
            }
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(facet, sign) in &cell.boundary {
                for &(sub, subsign) in &self.cells[facet].boundary {
                    *acc.entry(sub).or_insert(0) += sign * subsign;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(format!("∂² ≠ 0 at cell {id} ({})", cell.label));
            }
        }
        Ok(())
    }

    /// Boundary matrices ∂_d for d = 1..=top, rows indexed by (d−1)-cells.
    pub fn boundary_matrices(&self) -> (Vec<usize>, Vec<Matrix>) {
        let top = self.top_dim();
        let mut ids_by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for (id, c) in self.cells.iter().enumerate() {
            ids_by_dim[c.dim].push(id);
        }
        let mut col_index: HashMap<usize, usize> = HashMap::new();
        for ids in &ids_by_dim {
            for (pos, &id) in ids.iter().enumerate() {
                col_index.insert(id, pos);
            }
        }
        let counts: Vec<usize> = ids_by_dim.iter().map(|v| v.len()).collect();
        let mut matrices = Vec::new();
        for d in 1..=top {
            let rows = counts[d - 1];
            let cols = counts[d];
            let mut m = vec![vec![0i128; cols]; rows];
            for (j, &cell_id) in ids_by_dim[d].iter().enumerate() {
                for &(facet, sign) in &self.cells[cell_id].boundary {
                    m[col_index[&facet]][j] += i128::from(sign);
                }
            }
            matrices.push(m);
        }
        (counts, matrices)
    }

    /// Reduced integral homology via Smith normal form.
    pub fn reduced_homology(&self) -> Result<Vec<HomologyGroup>> {
        if self.cells.is_empty() {
            return Ok(Vec::new());
        }
        let (counts, matrices) = self.boundary_matrices();
        snf::reduced_homology_of_complex(&counts, &matrices)
    }

    /// Edges of the 1-skeleton as vertex-id pairs.
    pub fn one_skeleton_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .cells
            .iter()
            .filter(|c| c.dim == 1)
            .map(|c| (c.vertices[0], c.vertices[1]))
            .collect();
        edges.sort_unstable();
        edges
    }
}

type Partition = Vec<Vec<usize>>;

fn partition_label(p: &Partition) -> String {
    let blocks: Vec<String> = p
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    blocks.join("|")
}

fn ordered_set_partitions(n: usize) -> Vec<Partition> {
    let all: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    fn rec(remaining: &[usize], acc: &mut Partition, out: &mut Vec<Partition>) {
        if remaining.is_empty() {
            out.push(acc.clone());
            return;
        }
        // choose the next block: any nonempty subset of the remaining values
        let m = remaining.len();
        for mask in 1u64..(1 << m) {
            let block: Vec<usize> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| remaining[i])
                .collect();
            let rest: Vec<usize> = (0..m)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| remaining[i])
                .collect();
            acc.push(block);
            rec(&rest, acc, out);
            acc.pop();
        }
    }
    rec(&all, &mut Vec::new(), &mut out);
    out
}

/// All one-line words lying on the face of an ordered set partition.
fn face_words(p: &Partition) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for block in p {
        let mut arrangement = block.clone();
        let mut block_orders = Vec::new();
        loop {
            block_orders.push(arrangement.clone());
            if !crate::enumerate::next_permutation(&mut arrangement) {
                break;
            }
        }
        let mut next = Vec::with_capacity(words.len() * block_orders.len());
        for w in &words {
            for ord in &block_orders {
                let mut e = w.clone();
                e.extend_from_slice(ord);
                next.push(e);
            }
        }
        words = next;
    }
    words
}

fn facets_of(p: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for (bi, block) in p.iter().enumerate() {
        if block.len() < 2 {
            continue;
        }
        let m = block.len();
        // split the block into two ordered nonempty parts
        for mask in 1u64..(1 << m) - 1 {
            let first: Vec<usize> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| block[i])
                .collect();
            let second: Vec<usize> = (0..m)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| block[i])
                .collect();
            let mut q = Vec::with_capacity(p.len() + 1);
            q.extend_from_slice(&p[..bi]);
            q.push(first);
            q.push(second);
            q.extend_from_slice(&p[bi + 1..]);
            out.push(q);
        }
    }
    out
}

/// Assigns ±1 incidence signs to (cell, facet) pairs of one cell so that
/// ∂² = 0, by propagating through the codimension-2 diamonds.
fn assign_signs(
    facet_ids: &[usize],
    cells: &[Cell],
) -> Vec<i64> {
    let m = facet_ids.len();
    if cells[facet_ids[0]].dim == 0 {
        unreachable!("dimension-1 cells are signed directly");
    }
    // ridge → the two facets containing it, with their stored signs
    let mut ridges: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    for (pos, &f) in facet_ids.iter().enumerate() {
        for &(ridge, sign) in &cells[f].boundary {
            ridges.entry(ridge).or_default().push((pos, sign));
        }
    }
    let mut coeff: Vec<i64> = vec![0; m];
    coeff[0] = 1;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for pair in ridges.values() {
            if pair.len() != 2 {
                continue;
            }
            let (x, sx) = pair[0];
            let (y, sy) = pair[1];
            let (from, to, sf, st) = if x == a {
                (x, y, sx, sy)
            } else if y == a {
                (y, x, sy, sx)
            } else {
                continue;
            };
            let forced = -coeff[from] * sf / st; // st ∈ {±1}
            if coeff[to] == 0 {
                coeff[to] = forced;
                queue.push_back(to);
            }
        }
    }
    for pair in ridges.values() {
        assert_eq!(pair.len(), 2, "every ridge lies in exactly two facets");
        let (x, sx) = pair[0];
        let (y, sy) = pair[1];
        assert!(coeff[x] != 0 && coeff[y] != 0, "facet diamond graph is connected");
        assert_eq!(
            coeff[x] * sx + coeff[y] * sy,
            0,
            "inconsistent orientation around a ridge"
        );
    }
    coeff
}

fn build_complex_from_partitions(n: usize, partitions: Vec<Partition>) -> CellComplex {
    // vertices: the singleton-block partitions in lex word order
    let mut vertex_perms: Vec<Permutation> = Vec::new();
    crate::enumerate::for_each_permutation(n, |p| vertex_perms.push(p.clone()));
    let vertex_index: HashMap<&Permutation, usize> = vertex_perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();

    // sorting by (dim, vertex list) makes every 0-cell id equal its vertex id
    let mut keyed: Vec<(usize, Vec<usize>, String, Partition)> = partitions
        .into_iter()
        .map(|p| {
            let mut verts: Vec<usize> = face_words(&p)
                .into_iter()
                .map(|w| {
                    let q = Permutation::from_word(w).expect("face word is a permutation");
                    vertex_index[&q]
                })
                .collect();
            verts.sort_unstable();
            (n - p.len(), verts, partition_label(&p), p)
        })
        .collect();
    keyed.sort();
    let id_of: HashMap<String, usize> = keyed
        .iter()
        .enumerate()
        .map(|(i, (_, _, label, _))| (label.clone(), i))
        .collect();

    let mut cells: Vec<Cell> = Vec::with_capacity(keyed.len());
    for (dim, verts, label, partition) in &keyed {
        let boundary: Vec<(usize, i64)> = if *dim == 0 {
            Vec::new()
        } else if *dim == 1 {
            // oriented away from the lex-smallest vertex
            vec![(verts[0], -1), (verts[1], 1)]
        } else {
            let facet_ids: Vec<usize> = facets_of(partition)
                .iter()
                .map(|f| id_of[&partition_label(f)])
                .collect();
            let signs = assign_signs(&facet_ids, &cells);
            facet_ids.into_iter().zip(signs).collect()
        };
        cells.push(Cell {
            dim: *dim,
            label: label.clone(),
            vertices: verts.clone(),
            boundary,
        });
    }
    let complex = CellComplex {
        vertex_perms,
        cells,
    };
    complex
        .verify_boundary_squared()
        .expect("invariant violated: ∂² = 0 on the permutahedron");
    complex
}

/// The full permutahedron complex P(Σₙ).
pub fn permutahedron_complex(n: usize) -> Result<CellComplex> {
    permutahedron_complex_with_bound(n, DEFAULT_COMPLEX_BOUND)
}

pub fn permutahedron_complex_with_bound(n: usize, bound: usize) -> Result<CellComplex> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok(build_complex_from_partitions(n, ordered_set_partitions(n)))
}

/// Keeps the cells whose whole vertex set satisfies the predicate, re-checks
/// ∂² = 0, and reindexes.
pub fn induced_subcomplex(c: &CellComplex, keep: impl Fn(&Permutation) -> bool) -> CellComplex {
    let kept_vertex: Vec<bool> = c.vertex_perms.iter().map(&keep).collect();
    let mut new_vertex_id: HashMap<usize, usize> = HashMap::new();
    let mut vertex_perms = Vec::new();
    for (i, p) in c.vertex_perms.iter().enumerate() {
        if kept_vertex[i] {
            new_vertex_id.insert(i, vertex_perms.len());
            vertex_perms.push(p.clone());
        }
    }
    let mut new_cell_id: HashMap<usize, usize> = HashMap::new();
    let mut cells = Vec::new();
    for (id, cell) in c.cells.iter().enumerate() {
        if cell.vertices.iter().all(|&v| kept_vertex[v]) {
            new_cell_id.insert(id, cells.len());
            cells.push(Cell {
                dim: cell.dim,
                label: cell.label.clone(),
                vertices: cell.vertices.iter().map(|v| new_vertex_id[v]).collect(),
                boundary: cell
                    .boundary
                    .iter()
                    .map(|&(f, s)| (new_cell_id[&f], s))
                    .collect(),
            });
        }
    }
    let out = CellComplex {
        vertex_perms,
        cells,
    };
    out.verify_boundary_squared()
        .expect("invariant violated: ∂² = 0 on an induced subcomplex");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Bruhat,
    Weak,
}

/// A graded poset on permutations, given by its cover relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub elements: Vec<Permutation>,
    /// Pairs (a, b) with b covering a: length(b) = length(a) + 1.
    pub covers: Vec<(usize, usize)>,
}

fn all_transpositions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Permutation::from_cycles(&[vec![i, j]], n).unwrap());
        }
    }
    out
}

fn covers_of(n: usize, kind: OrderKind) -> Poset {
    let mut elements = Vec::new();
    crate::enumerate::for_each_permutation(n, |p| elements.push(p.clone()));
    let index: HashMap<&Permutation, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let moves: Vec<Permutation> = match kind {
        OrderKind::Bruhat => all_transpositions(n),
        OrderKind::Weak => (1..n)
            .map(|i| Permutation::from_cycles(&[vec![i, i + 1]], n).unwrap())
            .collect(),
    };
    let mut covers = Vec::new();
    for (a, alpha) in elements.iter().enumerate() {
        let la = coxeter_length(alpha);
        for t in &moves {
            let beta = alpha.compose(t).unwrap();
            if coxeter_length(&beta) == la + 1 {
                covers.push((a, index[&beta]));
            }
        }
    }
    covers.sort_unstable();
    Poset { elements, covers }
}

pub fn bruhat_covers(n: usize) -> Result<Poset> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    Ok(covers_of(n, OrderKind::Bruhat))
}

pub fn weak_covers(n: usize) -> Result<Poset> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    Ok(covers_of(n, OrderKind::Weak))
}

impl Poset {
    /// Full order relation as reachability over covers.
    pub fn relation(&self) -> Vec<BTreeSet<usize>> {
        let mut up_adj: Vec<Vec<usize>> = vec![Vec::new(); self.elements.len()];
        for &(a, b) in &self.covers {
            up_adj[a].push(b);
        }
        let mut above: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.elements.len()];
        // process from long to short so each node's up-set is ready when used
        let mut order: Vec<usize> = (0..self.elements.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(coxeter_length(&self.elements[i])));
        for &i in &order {
            let mut set = BTreeSet::new();
            for &j in &up_adj[i] {
                set.insert(j);
                set.extend(above[j].iter().copied());
            }
            above[i] = set;
        }
        above
    }
}

/// The order complex of the induced subposet on `subset`: k-simplices are the
/// (k+1)-chains, with alternating-sign simplicial boundary.
pub fn order_complex(
    n: usize,
    subset: &[Permutation],
    kind: OrderKind,
    max_cells: usize,
) -> Result<CellComplex> {
    let poset = covers_of(n, kind);
    let above = poset.relation();
    let global_index: HashMap<&Permutation, usize> = poset
        .elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut vertex_perms: Vec<Permutation> = subset.to_vec();
    vertex_perms.sort();
    vertex_perms.dedup();
    let locals: Vec<usize> = vertex_perms.iter().map(|p| global_index[p]).collect();
    // successors within the subset, in local ids
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); locals.len()];
    for (a, &ga) in locals.iter().enumerate() {
        for (b, &gb) in locals.iter().enumerate() {
            if above[ga].contains(&gb) {
                succ[a].push(b);
            }
        }
    }
    // enumerate chains as simplices
    let mut chains: Vec<Vec<usize>> = Vec::new();
    fn extend(
        chain: &mut Vec<usize>,
        succ: &[Vec<usize>],
        chains: &mut Vec<Vec<usize>>,
        max_cells: usize,
    ) -> Result<()> {
        if chains.len() > max_cells {
            return Err(Error::BoundExceeded {
                n: chains.len(),
                bound: max_cells,
            });
        }
        chains.push(chain.clone());
        let last = *chain.last().unwrap();
        for &next in &succ[last] {
            chain.push(next);
            extend(chain, succ, chains, max_cells)?;
            chain.pop();
        }
        Ok(())
    }
    for start in 0..locals.len() {
        let mut chain = vec![start];
        extend(&mut chain, &succ, &mut chains, max_cells)?;
    }
    chains.sort_by_key(|c| (c.len(), c.clone()));
    let chain_id: HashMap<Vec<usize>, usize> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let cells: Vec<Cell> = chains
        .iter()
        .map(|chain| {
            let label = chain
                .iter()
                .map(|&v| vertex_perms[v].one_line())
                .collect::<Vec<_>>()
                .join(" < ");
            let mut vertices: Vec<usize> = chain.clone();
            vertices.sort_unstable();
            let boundary = if chain.len() == 1 {
                Vec::new()
            } else {
                chain
                    .iter()
                    .enumerate()
                    .map(|(skip, _)| {
                        let face: Vec<usize> = chain
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        let sign = if skip % 2 == 0 { 1 } else { -1 };
                        (chain_id[&face], sign)
                    })
                    .collect()
            };
            Cell {
                dim: chain.len() - 1,
                label,
                vertices,
                boundary,
            }
        })
        .collect();
    let out = CellComplex {
        vertex_perms,
        cells,
    };
    out.verify_boundary_squared()
        .expect("invariant violated: ∂² = 0 on an order complex");
    Ok(out)
}

/// One stage of the filtration between P(bSₙ) and P(bSₙ₊₁).
#[derive(Clone, Debug)]
pub struct FiltrationStage {
    /// Stage index j: F(n+1) = P(bSₙ) up to F(1) = P(bSₙ₊₁).
    pub j: usize,
    pub complex: CellComplex,
    /// Vertices entering at this stage: normal forms ending in D(n, j).
    pub new_vertices: Vec<Permutation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub from_j: usize,
    pub to_j: usize,
    pub removed_pairs: usize,
    pub remaining_extra_cells: usize,
    pub collapsed: bool,
}

/// The decreasing filtration F₁ ⊇ F₂ ⊇ … ⊇ F(n+1) together with elementary
/// collapse evidence for each consecutive pair. A failed collapse search is
/// reported as inconclusive, never asserted.
pub fn bs_filtration(n: usize) -> Result<(Vec<FiltrationStage>, Vec<CollapseReport>)> {
    bs_filtration_with_bound(n, DEFAULT_COMPLEX_BOUND)
}

pub fn bs_filtration_with_bound(
    n: usize,
    bound: usize,
) -> Result<(Vec<FiltrationStage>, Vec<CollapseReport>)> {
    if n < 1 {
        return Err(Error::EmptyInput);
    }
    if n + 1 > bound {
        return Err(Error::BoundExceeded { n: n + 1, bound });
    }
    let parent = permutahedron_complex_with_bound(n + 1, bound)?;
    // group the b-simple words of Σₙ₊₁ by their last run
    let mut base: BTreeSet<Permutation> = BTreeSet::new();
    let mut by_last_j: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for w in cayley::b_simple_words(n + 1) {
        let p = crate::perm::evaluate_word(&w).unwrap();
        match w.runs.last() {
            Some(&(k, j)) if k == n => by_last_j.entry(j).or_default().push(p),
            _ => {
                base.insert(p);
            }
        }
    }
    let mut stages: Vec<FiltrationStage> = Vec::new();
    let mut current_set: BTreeSet<Permutation> = base;
    // F(n+1) is the base; F(j) adds the vertices whose last run is D(n, j)
    let mut stage_sets: Vec<(usize, Vec<Permutation>, BTreeSet<Permutation>)> = Vec::new();
    stage_sets.push((n + 1, Vec::new(), current_set.clone()));
    for j in (1..=n).rev() {
        let new: Vec<Permutation> = by_last_j.remove(&j).unwrap_or_default();
        current_set.extend(new.iter().cloned());
        stage_sets.push((j, new, current_set.clone()));
    }
    for (j, new, set) in stage_sets.into_iter().rev() {
        let complex = induced_subcomplex(&parent, |p| set.contains(p));
        stages.push(FiltrationStage {
            j,
            complex,
            new_vertices: new,
        });
    }
    // collapse evidence per consecutive pair, in parent-cell id space
    let cell_ids_of = |stage: &FiltrationStage| -> BTreeSet<usize> {
        let kept: BTreeSet<&Permutation> = stage.complex.vertex_perms.iter().collect();
        parent
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                c.vertices
                    .iter()
                    .all(|&v| kept.contains(&parent.vertex_perms[v]))
            })
            .map(|(id, _)| id)
            .collect()
    };
    let mut reports = Vec::new();
    for pair in stages.windows(2) {
        let big = cell_ids_of(&pair[0]);
        let small = cell_ids_of(&pair[1]);
        let report = collapse_evidence(&parent, big, &small, pair[0].j, pair[1].j);
        reports.push(report);
    }
    Ok((stages, reports))
}

/// Greedy elementary-collapse search from `current` down to `target`.
fn collapse_evidence(
    parent: &CellComplex,
    mut current: BTreeSet<usize>,
    target: &BTreeSet<usize>,
    from_j: usize,
    to_j: usize,
) -> CollapseReport {
    let mut coface: Vec<Vec<usize>> = vec![Vec::new(); parent.cells.len()];
    for (id, cell) in parent.cells.iter().enumerate() {
        for &(f, _) in &cell.boundary {
            coface[f].push(id);
        }
    }
    let mut removed_pairs = 0;
    loop {
        let mut found: Option<(usize, usize)> = None;
        for &tau in current.iter() {
            if target.contains(&tau) {
                continue;
            }
            let cofs: Vec<usize> = coface[tau]
                .iter()
                .copied()
                .filter(|c| current.contains(c))
                .collect();
            if cofs.len() == 1 {
                let sigma = cofs[0];
                if !target.contains(&sigma)
                    && !coface[sigma].iter().any(|c| current.contains(c))
                {
                    found = Some((tau, sigma));
                    break;
                }
            }
        }
        match found {
            Some((tau, sigma)) => {
                current.remove(&tau);
                current.remove(&sigma);
                removed_pairs += 1;
            }
            None => break,
        }
    }
    CollapseReport {
        from_j,
        to_j,
        removed_pairs,
        remaining_extra_cells: current.difference(target).count(),
        collapsed: current == *target,
    }
}
