//! Polygonal representation of cycles: reduction moves, irreducible types,
//! neighboring intervals, and the component descriptors they induce on the
//! cycle-simple and group-simple Cayley subgraphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::classify::{is_c_simple, is_g_simple};
use crate::error::{Error, Result};
use crate::perm::{cycle_decomposition, CycleDecomposition, Permutation};

/// The polygon of a cycle: its cyclic vertex sequence written from the
/// maximum, inside the ambient interval `[1, n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonalType {
    pub n: usize,
    vertices: Vec<usize>,
}

impl PolygonalType {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    fn normalize(mut vertices: Vec<usize>, n: usize) -> Self {
        let max_pos = vertices
            .iter()
            .enumerate()
            .max_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .unwrap();
        vertices.rotate_left(max_pos);
        PolygonalType { n, vertices }
    }
}

impl fmt::Display for PolygonalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for PolygonalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Builds the polygon of a cycle of length at least 3.
pub fn polygon_of_cycle(cycle: &[usize], n: usize) -> Result<PolygonalType> {
    if cycle.len() < 3 {
        return Err(Error::TooShort(cycle.len()));
    }
    let mut seen = BTreeSet::new();
    for &v in cycle {
        if v < 1 || v > n || !seen.insert(v) {
            return Err(Error::DomainError(format!(
                "cycle vertex {v} invalid in [1,{n}]"
            )));
        }
    }
    Ok(PolygonalType::normalize(cycle.to_vec(), n))
}

/// One reduction move removes the head of a side `i → j` whose open value
/// interval contains no other polygon vertex. Returns every polygon reachable
/// in one move, normalized, deduplicated and sorted; empty iff irreducible.
pub fn reduce_once(poly: &PolygonalType) -> Vec<PolygonalType> {
    let s = poly.vertices.len();
    if s < 4 {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    for t in 0..s {
        let a = poly.vertices[t];
        let b = poly.vertices[(t + 1) % s];
        let (lo, hi) = (a.min(b), a.max(b));
        let blocked = poly
            .vertices
            .iter()
            .any(|&v| v != a && v != b && lo < v && v < hi);
        if !blocked {
            let mut rest: Vec<usize> = Vec::with_capacity(s - 1);
            for (u, &v) in poly.vertices.iter().enumerate() {
                if u != (t + 1) % s {
                    rest.push(v);
                }
            }
            out.insert(PolygonalType::normalize(rest, poly.n));
        }
    }
    out.into_iter().collect()
}

/// All polygons at which maximal reduction sequences from `poly` terminate.
pub fn reduction_endpoints(poly: &PolygonalType) -> BTreeSet<PolygonalType> {
    let mut memo: HashMap<Vec<usize>, Rc<BTreeSet<PolygonalType>>> = HashMap::new();
    fn go(
        poly: &PolygonalType,
        memo: &mut HashMap<Vec<usize>, Rc<BTreeSet<PolygonalType>>>,
    ) -> Rc<BTreeSet<PolygonalType>> {
        if let Some(hit) = memo.get(&poly.vertices) {
            return hit.clone();
        }
        let moves = reduce_once(poly);
        let result = if moves.is_empty() {
            let mut set = BTreeSet::new();
            set.insert(poly.clone());
            Rc::new(set)
        } else {
            let mut set = BTreeSet::new();
            for next in &moves {
                set.extend(go(next, memo).iter().cloned());
            }
            Rc::new(set)
        };
        memo.insert(poly.vertices.clone(), result.clone());
        result
    }
    let r = go(poly, &mut memo);
    r.as_ref().clone()
}

/// Where exhaustive reduction lands: a triangle, or a unique irreducible type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionClass {
    Triangle,
    Irreducible(PolygonalType),
}

/// Reduces exhaustively. If any maximal sequence reaches a triangle the class
/// is `Triangle`; otherwise all sequences must agree on one irreducible type.
pub fn irreducible_type(poly: &PolygonalType) -> ReductionClass {
    let endpoints = reduction_endpoints(poly);
    let (triangles, bigger): (Vec<_>, Vec<_>) =
        endpoints.into_iter().partition(|e| e.size() == 3);
    if !triangles.is_empty() {
        assert!(
            bigger.is_empty(),
            "invariant violated: {poly} reduces both to a triangle and to {:?}",
            bigger
        );
        return ReductionClass::Triangle;
    }
    assert_eq!(
        bigger.len(),
        1,
        "invariant violated: {poly} reduces to several irreducible types {bigger:?}"
    );
    ReductionClass::Irreducible(bigger.into_iter().next().unwrap())
}

/// Is the polygon itself irreducible (no legal move)?
pub fn is_irreducible(poly: &PolygonalType) -> bool {
    poly.size() >= 4 && reduce_once(poly).is_empty() || poly.size() == 3
}

/// An inclusive value range, `None` when empty.
pub type ValueInterval = Option<(usize, usize)>;

/// Neighboring intervals `(I⁻(v), I⁺(v))` of each vertex, as inclusive ranges.
/// `I⁺` of the maximum ends at `n`; `I⁻` of the minimum starts at 1.
pub fn neighboring_intervals(
    poly: &PolygonalType,
) -> BTreeMap<usize, (ValueInterval, ValueInterval)> {
    let mut sorted: Vec<usize> = poly.vertices.clone();
    sorted.sort_unstable();
    let mut map = BTreeMap::new();
    for (idx, &v) in sorted.iter().enumerate() {
        let lo_minus = if idx == 0 { 1 } else { sorted[idx - 1] + 1 };
        let minus = if lo_minus < v {
            Some((lo_minus, v - 1))
        } else {
            None
        };
        let hi_plus = if idx + 1 == sorted.len() {
            poly.n
        } else {
            sorted[idx + 1] - 1
        };
        let plus = if v < hi_plus {
            Some((v + 1, hi_plus))
        } else {
            None
        };
        map.insert(v, (minus, plus));
    }
    map
}

/// Component descriptor inside Γ(cSₙ).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CsComponent {
    /// Identity, transpositions, and every cycle reducible to a triangle.
    Identity,
    /// All cycles reducible to this irreducible type.
    Type(PolygonalType),
}

/// Component descriptor of a c-simple permutation, equal for two permutations
/// exactly when they lie in the same connected component of Γ(cSₙ).
pub fn cs_component_of(p: &Permutation) -> Result<CsComponent> {
    if !is_c_simple(p) {
        return Err(Error::NotCSimple);
    }
    let cycles = cycle_decomposition(p, false).cycles;
    match cycles.first() {
        None => Ok(CsComponent::Identity),
        Some(c) if c.len() == 2 => Ok(CsComponent::Identity),
        Some(c) => {
            let poly = polygon_of_cycle(c, p.n())?;
            match irreducible_type(&poly) {
                ReductionClass::Triangle => Ok(CsComponent::Identity),
                ReductionClass::Irreducible(t) => Ok(CsComponent::Type(t)),
            }
        }
    }
}

/// Component descriptor inside Γ(gSₙ).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GComponentId {
    /// Identity, τ-products, one optional gap-2 transposition, and the four
    /// near-consecutive 3-cycle shapes.
    Identity,
    /// Transposition products whose unique wide transposition is `(j,i)`,
    /// `j ≥ i+3`, plus the four attached 3-cycle shapes.
    Cji { j: usize, i: usize },
    /// Products carrying at least two gap-≥2 transpositions, keyed by them.
    Cjis { pairs: Vec<(usize, usize)> },
    /// Isolated products of 3-cycles, keyed by their standard cycles.
    ThreeCycleSingleton { cycles: Vec<[usize; 3]> },
    /// Isolated product of `q` cycles of prime length `p ≥ 5`.
    PrimePowerSingleton { p: usize, q: usize, perm: Permutation },
}

fn classify_three_cycle(c: &[usize]) -> GComponentId {
    let (top, x, y) = (c[0], c[1], c[2]);
    if x > y {
        if x == y + 1 {
            if top == y + 2 || top == y + 3 {
                GComponentId::Identity // (i+2,i+1,i) or (i+3,i+1,i)
            } else {
                GComponentId::Cji { j: top, i: x } // (j,i,i−1)
            }
        } else if top == x + 1 {
            GComponentId::Cji { j: top, i: y } // (j,j−1,i)
        } else {
            GComponentId::ThreeCycleSingleton {
                cycles: vec![[top, x, y]],
            }
        }
    } else if y == x + 1 {
        if top == x + 2 {
            GComponentId::Identity // (i+2,i,i+1)
        } else {
            GComponentId::Cji { j: top, i: x } // (j,i,i+1)
        }
    } else if top == y + 1 {
        if y == x + 2 {
            GComponentId::Identity // (i+3,i,i+2)
        } else {
            GComponentId::Cji { j: y, i: x } // (j+1,i,j)
        }
    } else {
        GComponentId::ThreeCycleSingleton {
            cycles: vec![[top, x, y]],
        }
    }
}

/// Component descriptor of a g-simple permutation, cross-validated against the
/// breadth-first components of Γ(gSₙ) by the test suite.
pub fn gs_component_of(p: &Permutation) -> Result<GComponentId> {
    if !is_g_simple(p) {
        return Err(Error::NotGSimple);
    }
    let cycles = cycle_decomposition(p, false).cycles;
    if cycles.is_empty() {
        return Ok(GComponentId::Identity);
    }
    match cycles[0].len() {
        2 => {
            let wide: Vec<(usize, usize)> = cycles
                .iter()
                .filter(|c| c[0] - c[1] >= 2)
                .map(|c| (c[0], c[1]))
                .collect();
            Ok(match wide.len() {
                0 => GComponentId::Identity,
                1 if wide[0].0 - wide[0].1 == 2 => GComponentId::Identity,
                1 => GComponentId::Cji {
                    j: wide[0].0,
                    i: wide[0].1,
                },
                _ => GComponentId::Cjis { pairs: wide },
            })
        }
        3 => {
            if cycles.len() == 1 {
                Ok(classify_three_cycle(&cycles[0]))
            } else {
                // a product of several 3-cycles is always isolated
                Ok(GComponentId::ThreeCycleSingleton {
                    cycles: cycles.iter().map(|c| [c[0], c[1], c[2]]).collect(),
                })
            }
        }
        len => Ok(GComponentId::PrimePowerSingleton {
            p: len,
            q: cycles.len(),
            perm: p.clone(),
        }),
    }
}

/// Right-multiplies a cycle decomposition by `τ_i` through the five splice
/// cases (insert, delete, split, merge, create) and checks the outcome against
/// multiplication from scratch.
pub fn splice_multiply(dec: &CycleDecomposition, i: usize) -> CycleDecomposition {
    let n = dec.n;
    assert!(i >= 1 && i < n, "generator index out of range");
    let mut cycles: Vec<Vec<usize>> = dec
        .cycles
        .iter()
        .filter(|c| c.len() >= 2)
        .cloned()
        .collect();
    let pos_of = |cycles: &[Vec<usize>], v: usize| -> Option<(usize, usize)> {
        cycles
            .iter()
            .enumerate()
            .find_map(|(ci, c)| c.iter().position(|&x| x == v).map(|vi| (ci, vi)))
    };
    let at = pos_of(&cycles, i);
    let at1 = pos_of(&cycles, i + 1);
    match (at, at1) {
        (None, None) => cycles.push(vec![i + 1, i]),
        (Some((ci, vi)), None) => cycles[ci].insert(vi + 1, i + 1),
        (None, Some((ci, vi))) => cycles[ci].insert(vi + 1, i),
        (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
            let len = cycles[ci].len();
            if (vi + 1) % len == vj {
                cycles[ci].remove(vj); // … i, i+1 … loses i+1
            } else if (vj + 1) % len == vi {
                cycles[ci].remove(vi); // … i+1, i … loses i
            } else {
                // split around the two marks
                let mut seq = cycles.remove(ci);
                seq.rotate_left(vi);
                let cut = seq.iter().position(|&v| v == i + 1).unwrap();
                let tail = seq.split_off(cut); // [i+1, d…h]
                let mut first = vec![i + 1];
                first.extend_from_slice(&seq[1..]); // [i+1, b…c]
                let mut second = vec![i];
                second.extend_from_slice(&tail[1..]);
                cycles.push(first);
                cycles.push(second);
            }
        }
        (Some((ci, vi)), Some((cj, vj))) => {
            // merge: (k…a,i,d…h) and (m…c,i+1,b…l) become (k…a,i,b…c,i+1,d…h)
            let (with_i, with_i1) = if ci < cj {
                let c2 = cycles.remove(cj);
                let c1 = cycles.remove(ci);
                (c1, c2)
            } else {
                let c1 = cycles.remove(ci);
                let c2 = cycles.remove(cj);
                (c1, c2)
            };
            let mut a = with_i;
            a.rotate_left(vi);
            let mut b = with_i1;
            b.rotate_left(vj);
            let mut merged = vec![i];
            merged.extend_from_slice(&b[1..]);
            merged.push(i + 1);
            merged.extend_from_slice(&a[1..]);
            cycles.push(merged);
        }
    }
    let cycles: Vec<Vec<usize>> = cycles.into_iter().filter(|c| c.len() >= 2).collect();
    let product = Permutation::from_cycles(&cycles, n).expect("splice produced disjoint cycles");
    let result = cycle_decomposition(&product, dec.includes_fixed_points);
    let direct = {
        let tau = Permutation::from_cycles(&[vec![i, i + 1]], n).unwrap();
        let from_scratch = dec.to_permutation().compose(&tau).unwrap();
        cycle_decomposition(&from_scratch, dec.includes_fixed_points)
    };
    assert_eq!(
        result, direct,
        "invariant violated: case multiplication disagrees with direct multiplication"
    );
    result
}
