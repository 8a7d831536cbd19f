//! Certified planarity testing. The test itself is the quadratic
//! Demoucron–Malgrange–Pertuiset face-extension algorithm run per biconnected
//! block; a planar answer carries the face system of each block and a
//! non-planar answer carries a Kuratowski subdivision obtained by deleting
//! edges while non-planarity persists. Both certificates re-verify.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockEmbedding {
    pub vertices: Vec<usize>,
    pub edge_count: usize,
    /// Directed face cycles; every directed edge of the block appears exactly
    /// once across all faces.
    pub faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    pub blocks: Vec<BlockEmbedding>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    /// Internally disjoint paths between branch vertices, one per edge of the
    /// model graph.
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Splits the graph into biconnected blocks (edge lists), iteratively.
fn biconnected_blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let adj = adjacency(n, edges);
    let mut blocks = Vec::new();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // iterative DFS: frame = (vertex, parent, next neighbor index)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&(u, parent, idx)) = stack.last() {
            if idx < adj[u].len() {
                stack.last_mut().unwrap().2 += 1;
                let v = adj[u][idx];
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    edge_stack.push((u, v));
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else if disc[v] < disc[u] {
                    edge_stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p is a cut vertex (or root): pop one block
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            let done = e == (p, u);
                            block.push(e);
                            if done {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            blocks.push(block);
                        }
                    }
                }
            }
        }
    }
    blocks
}

/// DMP planarity for one biconnected block. Returns the directed face system
/// when planar.
fn dmp_embed(edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let m = verts.len();
    let e = edges.len();
    if e == 1 {
        return Some(vec![vec![edges[0].0, edges[0].1]]);
    }
    if m >= 3 && e > 3 * m - 6 {
        return None;
    }
    let adj = {
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(u, v) in edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        adj
    };
    // find a cycle by walking without immediate backtracking; every vertex of
    // a biconnected block with ≥2 edges has degree ≥2, so the walk closes up
    let start = *verts.iter().next().unwrap();
    let cycle = {
        let mut walk = vec![start];
        let mut position: HashMap<usize, usize> = [(start, 0)].into_iter().collect();
        let mut prev = usize::MAX;
        loop {
            let u = *walk.last().unwrap();
            let v = *adj[&u]
                .iter()
                .find(|&&v| v != prev)
                .expect("degree ≥ 2 inside a biconnected block");
            if let Some(&at) = position.get(&v) {
                break walk[at..].to_vec();
            }
            position.insert(v, walk.len());
            walk.push(v);
            prev = u;
        }
    };
    let mut embedded_v: HashSet<usize> = cycle.iter().copied().collect();
    let mut embedded_e: HashSet<(usize, usize)> = HashSet::new();
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    for w in cycle.windows(2) {
        embedded_e.insert(key(w[0], w[1]));
    }
    embedded_e.insert(key(cycle[0], *cycle.last().unwrap()));
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        // fragments relative to the embedded subgraph
        struct Fragment {
            attachments: BTreeSet<usize>,
            single_edge: Option<(usize, usize)>,
            interior: BTreeSet<usize>,
        }
        let mut fragments: Vec<Fragment> = Vec::new();
        for &(u, v) in edges {
            if embedded_v.contains(&u) && embedded_v.contains(&v) && !embedded_e.contains(&key(u, v))
            {
                fragments.push(Fragment {
                    attachments: [u, v].into_iter().collect(),
                    single_edge: Some((u, v)),
                    interior: BTreeSet::new(),
                });
            }
        }
        let mut assigned: HashSet<usize> = HashSet::new();
        for &seed in &verts {
            if embedded_v.contains(&seed) || assigned.contains(&seed) {
                continue;
            }
            let mut interior = BTreeSet::new();
            let mut attachments = BTreeSet::new();
            let mut queue = VecDeque::from([seed]);
            assigned.insert(seed);
            while let Some(x) = queue.pop_front() {
                interior.insert(x);
                for &y in &adj[&x] {
                    if embedded_v.contains(&y) {
                        attachments.insert(y);
                    } else if assigned.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            fragments.push(Fragment {
                attachments,
                single_edge: None,
                interior,
            });
        }
        if fragments.is_empty() {
            break;
        }
        // admissible faces per fragment
        let face_sets: Vec<HashSet<usize>> = faces
            .iter()
            .map(|f| f.iter().copied().collect())
            .collect();
        let mut choice: Option<(usize, usize)> = None; // (fragment, face)
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = face_sets
                .iter()
                .enumerate()
                .filter(|(_, fs)| frag.attachments.iter().all(|a| fs.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if fallback.is_none() {
                        fallback = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.or(fallback).unwrap();
        let frag = &fragments[fi];
        // a path between two attachments through the fragment
        let path: Vec<usize> = if let Some((u, v)) = frag.single_edge {
            vec![u, v]
        } else {
            let mut it = frag.attachments.iter();
            let a = *it.next().expect("biconnected block: ≥2 attachments");
            let b = *it.next().expect("biconnected block: ≥2 attachments");
            let mut prev: HashMap<usize, usize> = HashMap::new();
            let mut queue = VecDeque::from([a]);
            let mut reached = false;
            let mut visited: HashSet<usize> = [a].into_iter().collect();
            'bfs: while let Some(x) = queue.pop_front() {
                for &y in &adj[&x] {
                    // the path must run through the fragment interior
                    if x != a && y == b {
                        prev.insert(y, x);
                        reached = true;
                        break 'bfs;
                    }
                    if frag.interior.contains(&y) && visited.insert(y) {
                        prev.insert(y, x);
                        queue.push_back(y);
                    }
                }
            }
            assert!(reached, "fragment path must exist");
            let mut path = vec![b];
            let mut x = b;
            while x != a {
                x = prev[&x];
                path.push(x);
            }
            path.reverse();
            path
        };
        let (a, b) = (path[0], *path.last().unwrap());
        // split the chosen face along the path
        let face = faces.swap_remove(face_idx);
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let arc = |from: usize, to: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % len;
            }
            out
        };
        let arc_ab = arc(ia, ib); // a … b following the face direction
        let arc_ba = arc(ib, ia); // b … a
        let mut face1 = arc_ab;
        face1.extend(path[1..path.len() - 1].iter().rev()); // back along the path
        let mut face2 = arc_ba;
        face2.extend(path[1..path.len() - 1].iter()); // forward along the path
        faces.push(face1);
        faces.push(face2);
        for w in path.windows(2) {
            embedded_e.insert(key(w[0], w[1]));
        }
        for &x in &path {
            embedded_v.insert(x);
        }
    }
    // Euler check on the finished block
    assert_eq!(
        faces.iter().map(|f| f.len()).sum::<usize>(),
        2 * e,
        "face system must traverse every directed edge once"
    );
    assert_eq!(m + faces.len(), e + 2, "Euler formula violated by embedding");
    Some(faces)
}

pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    biconnected_blocks(n, edges)
        .iter()
        .all(|b| dmp_embed(b).is_some())
}

/// Full verdict with certificate. `seed` rotates the deletion order used for
/// Kuratowski extraction; 0 is the deterministic default.
pub fn check_planarity_seeded(n: usize, edges: &[(usize, usize)], seed: usize) -> Planarity {
    let blocks = biconnected_blocks(n, edges);
    let mut embeddings = Vec::new();
    for block in &blocks {
        match dmp_embed(block) {
            Some(faces) => {
                let vertices: BTreeSet<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
                embeddings.push(BlockEmbedding {
                    vertices: vertices.into_iter().collect(),
                    edge_count: block.len(),
                    faces,
                });
            }
            None => {
                return Planarity::NonPlanar(extract_kuratowski(n, edges, seed));
            }
        }
    }
    Planarity::Planar(PlanarEmbedding { blocks: embeddings })
}

pub fn check_planarity(n: usize, edges: &[(usize, usize)]) -> Planarity {
    check_planarity_seeded(n, edges, 0)
}

/// Deletes edges while the graph stays non-planar; the residue is an
/// edge-minimal non-planar graph, necessarily a K₅ or K₃,₃ subdivision.
fn extract_kuratowski(n: usize, edges: &[(usize, usize)], seed: usize) -> KuratowskiWitness {
    let mut cur: Vec<(usize, usize)> = edges.to_vec();
    if seed > 0 && !cur.is_empty() {
        let shift = seed % cur.len();
        cur.rotate_left(shift);
    }
    assert!(!is_planar(n, &cur), "extraction requires a non-planar graph");
    let mut i = 0;
    while i < cur.len() {
        let mut candidate = cur.clone();
        candidate.remove(i);
        if !is_planar(n, &candidate) {
            cur = candidate;
        } else {
            i += 1;
        }
    }
    let adj = adjacency(n, &cur);
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let is_branch = |v: usize| adj[v].len() >= 3;
    let mut paths: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &u in &branch {
        for &w in &adj[u] {
            let mut path = vec![u];
            let (mut prev, mut cur_v) = (u, w);
            while !is_branch(cur_v) {
                assert_eq!(adj[cur_v].len(), 2, "subdivision vertices have degree 2");
                path.push(cur_v);
                let next = if adj[cur_v][0] == prev {
                    adj[cur_v][1]
                } else {
                    adj[cur_v][0]
                };
                prev = cur_v;
                cur_v = next;
            }
            path.push(cur_v);
            if path[0] > *path.last().unwrap() {
                path.reverse();
            }
            paths.insert(path);
        }
    }
    let paths: Vec<Vec<usize>> = paths.into_iter().collect();
    let kind = match (branch.len(), paths.len()) {
        (5, 10) => KuratowskiKind::K5,
        (6, 9) => KuratowskiKind::K33,
        other => panic!("minimal non-planar residue is not a Kuratowski subdivision: {other:?}"),
    };
    KuratowskiWitness {
        kind,
        branch_vertices: branch,
        paths,
    }
}

/// Checks a claimed embedding: faces are closed walks over real edges, every
/// directed edge is used exactly once, and Euler's formula holds per block.
pub fn verify_embedding(
    edges: &[(usize, usize)],
    emb: &PlanarEmbedding,
) -> Result<(), String> {
    let edge_set: HashSet<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    for block in &emb.blocks {
        let mut directed: HashSet<(usize, usize)> = HashSet::new();
        for face in &block.faces {
            for i in 0..face.len() {
                let u = face[i];
                let v = face[(i + 1) % face.len()];
                if u == v {
                    return Err(format!("degenerate step at {u} in face {face:?}"));
                }
                if !edge_set.contains(&(u.min(v), u.max(v))) {
                    return Err(format!("face uses a non-edge {u}-{v}"));
                }
                if !directed.insert((u, v)) {
                    return Err(format!("directed edge {u}->{v} appears twice"));
                }
                covered.insert((u.min(v), u.max(v)));
            }
        }
        if directed.len() != 2 * block.edge_count {
            return Err(format!(
                "block covers {} directed edges, expected {}",
                directed.len(),
                2 * block.edge_count
            ));
        }
        if block.vertices.len() + block.faces.len() != block.edge_count + 2 {
            return Err(format!(
                "Euler check failed: V={} E={} F={}",
                block.vertices.len(),
                block.edge_count,
                block.faces.len()
            ));
        }
    }
    let total_block_edges: usize = emb.blocks.iter().map(|b| b.edge_count).sum();
    if total_block_edges != edge_set.len() || covered.len() != edge_set.len() {
        return Err("blocks do not cover the whole edge set".into());
    }
    Ok(())
}

/// Checks a claimed Kuratowski subdivision: paths walk real edges, are
/// internally disjoint, and their endpoint pattern is K₅ or K₃,₃.
pub fn verify_kuratowski(
    edges: &[(usize, usize)],
    w: &KuratowskiWitness,
) -> Result<(), String> {
    let edge_set: HashSet<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let branch: HashSet<usize> = w.branch_vertices.iter().copied().collect();
    let mut interior_seen: HashSet<usize> = HashSet::new();
    let mut model_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for path in &w.paths {
        if path.len() < 2 {
            return Err("path too short".into());
        }
        let (a, b) = (path[0], *path.last().unwrap());
        if !branch.contains(&a) || !branch.contains(&b) || a == b {
            return Err(format!("path endpoints {a},{b} are not two branch vertices"));
        }
        for step in path.windows(2) {
            let k = (step[0].min(step[1]), step[0].max(step[1]));
            if !edge_set.contains(&k) {
                return Err(format!("path uses a non-edge {k:?}"));
            }
        }
        for &v in &path[1..path.len() - 1] {
            if branch.contains(&v) {
                return Err(format!("interior vertex {v} is a branch vertex"));
            }
            if !interior_seen.insert(v) {
                return Err(format!("interior vertex {v} is shared by two paths"));
            }
        }
        if !model_edges.insert((a.min(b), a.max(b))) {
            return Err(format!("two paths join the same branch pair {a},{b}"));
        }
    }
    match w.kind {
        KuratowskiKind::K5 => {
            if w.branch_vertices.len() != 5 || w.paths.len() != 10 {
                return Err("K5 needs 5 branch vertices and 10 paths".into());
            }
        }
        KuratowskiKind::K33 => {
            if w.branch_vertices.len() != 6 || w.paths.len() != 9 {
                return Err("K33 needs 6 branch vertices and 9 paths".into());
            }
            // 2-color the branch graph
            let mut color: HashMap<usize, bool> = HashMap::new();
            let first = w.branch_vertices[0];
            color.insert(first, false);
            let mut queue = VecDeque::from([first]);
            while let Some(x) = queue.pop_front() {
                let cx = color[&x];
                for &(a, b) in &model_edges {
                    let other = if a == x {
                        b
                    } else if b == x {
                        a
                    } else {
                        continue;
                    };
                    match color.get(&other) {
                        Some(&c) if c == cx => return Err("branch graph is not bipartite".into()),
                        Some(_) => {}
                        None => {
                            color.insert(other, !cx);
                            queue.push_back(other);
                        }
                    }
                }
            }
            let side: usize = color.values().filter(|&&c| c).count();
            if color.len() != 6 || side != 3 {
                return Err("branch graph is not K33".into());
            }
        }
    }
    Ok(())
}
