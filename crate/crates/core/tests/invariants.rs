//! Cross-module invariants: exhaustive small-degree checks and randomized
//! properties that back the per-module contracts.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use proptest::prelude::*;

use permsimple_core::cayley::{self, SimpleClass};
use permsimple_core::classify;
use permsimple_core::complexes;
use permsimple_core::enumerate::{self, CensusReport};
use permsimple_core::perm::{
    build_tree, coxeter_length, coxeter_normal_form, cycle_decomposition, evaluate_word,
    standard_sequence, Permutation,
};
use permsimple_core::polygon::{self, ReductionClass};

#[test]
fn normal_form_round_trip_and_length_exhaustive() {
    for n in 1..=7 {
        enumerate::for_each_permutation(n, |p| {
            let w = coxeter_normal_form(p);
            assert_eq!(&evaluate_word(&w).unwrap(), p, "round trip at [{p}]");
            assert_eq!(w.len(), coxeter_length(p), "length agreement at [{p}]");
            let mut prev = 0;
            for &(k, j) in &w.runs {
                assert!(j >= 1 && j <= k, "run shape at [{p}]");
                assert!(k > prev || prev == 0, "run maxima increase at [{p}]");
                prev = k;
            }
        });
    }
}

#[test]
fn cycle_decomposition_remultiplies_exhaustive() {
    for n in 1..=7 {
        enumerate::for_each_permutation(n, |p| {
            for include_fixed in [false, true] {
                let dec = cycle_decomposition(p, include_fixed);
                assert_eq!(&dec.to_permutation(), p);
                for c in &dec.cycles {
                    assert_eq!(c[0], *c.iter().max().unwrap(), "max-first at [{p}]");
                }
                for w in dec.cycles.windows(2) {
                    assert!(w[0][0] < w[1][0], "cycles sorted by maxima at [{p}]");
                }
            }
            let seq = standard_sequence(p);
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (1..=n).collect::<Vec<_>>(), "π̂ is a bijection");
        });
    }
}

#[test]
fn tree_structure_exhaustive() {
    for n in 1..=7 {
        enumerate::for_each_permutation(n, |p| {
            let t = build_tree(p);
            assert_eq!(t.in_order(), standard_sequence(p), "in-order rebuilds π̂");
            for v in 2..=n {
                let parent = t.parent[v].expect("non-root has a parent");
                assert!(parent < v, "marks increase along branches");
            }
            assert!(t.parent[1].is_none());
        });
    }
}

/// Brute-force oracle: the normal form word is the lexicographically least
/// among all words of minimal length, for every permutation of degree ≤ 4.
#[test]
fn normal_form_is_length_lex_minimal_brute_force() {
    for n in 2..=4 {
        // bucket every word over τ₁..τₙ₋₁ up to the maximal length by value
        let max_len = n * (n - 1) / 2;
        let mut best: HashMap<(Permutation, usize), Vec<usize>> = HashMap::new();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for len in 0..=max_len {
            for w in &words {
                let mut p = Permutation::identity(n);
                for &i in w {
                    p = p.right_tau(i);
                }
                let key = (p, len);
                match best.get(&key) {
                    Some(prev) if prev <= w => {}
                    _ => {
                        best.insert(key, w.clone());
                    }
                }
            }
            let mut next = Vec::new();
            for w in &words {
                for i in 1..n {
                    let mut e = w.clone();
                    e.push(i);
                    next.push(e);
                }
            }
            words = next;
        }
        enumerate::for_each_permutation(n, |p| {
            let len = coxeter_length(p);
            // no shorter word exists
            for shorter in 0..len {
                assert!(
                    !best.contains_key(&(p.clone(), shorter)),
                    "[{p}] has a word shorter than its inversion count"
                );
            }
            let lex_min = best[&(p.clone(), len)].clone();
            assert_eq!(
                coxeter_normal_form(p).letters(),
                lex_min,
                "normal form of [{p}] is the length-lex minimum"
            );
        });
    }
}

#[test]
fn unimodal_no_consecutive_cycles_are_s_simple() {
    // forward direction of the b∩s characterization, for every unimodal
    // n-cycle over n ≤ 8: built by choosing which values descend
    for n in 3..=8 {
        let middle: Vec<usize> = (2..n).collect();
        for mask in 0u32..(1 << middle.len()) {
            let mut desc: Vec<usize> = middle
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            desc.sort_unstable_by(|a, b| b.cmp(a));
            let mut cyc = vec![n];
            cyc.extend(&desc);
            cyc.push(1);
            let mut asc: Vec<usize> = middle
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 0)
                .map(|(_, &v)| v)
                .collect();
            asc.sort_unstable();
            cyc.extend(&asc);
            assert!(classify::is_unimodal_cycle(&cyc).unwrap());
            if !classify::has_three_consecutive(&cyc) {
                let p = Permutation::from_cycles(&[cyc.clone()], n).unwrap();
                assert!(
                    classify::is_s_simple(&p),
                    "unimodal n-cycle without three consecutive must be s-simple: {cyc:?}"
                );
            }
        }
    }
}

#[test]
fn polygon_structure_matches_interleaved_block_form() {
    // every reducible cycle over [1,8] interleaves its irreducible type with
    // blocks living inside single neighboring intervals
    let n = 8;
    for mask in 0u32..(1 << n) {
        let support: Vec<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        if support.len() < 4 {
            continue;
        }
        let max = *support.last().unwrap();
        let mut rest = support[..support.len() - 1].to_vec();
        loop {
            let mut cyc = vec![max];
            cyc.extend_from_slice(&rest);
            let poly = polygon::polygon_of_cycle(&cyc, n).unwrap();
            if let ReductionClass::Irreducible(t) = polygon::irreducible_type(&poly) {
                if t != poly {
                    check_interleaving(&poly, &t);
                }
            }
            if !next_perm(&mut rest) {
                break;
            }
        }
    }
}

fn check_interleaving(poly: &polygon::PolygonalType, t: &polygon::PolygonalType) {
    let intervals = polygon::neighboring_intervals(t);
    let anchors: BTreeSet<usize> = t.vertices().iter().copied().collect();
    let seq = poly.vertices();
    let a1 = t.vertices()[0];
    let start = seq.iter().position(|&v| v == a1).unwrap();
    let rotated: Vec<usize> = (0..seq.len()).map(|i| seq[(start + i) % seq.len()]).collect();
    // anchors must appear in the type's cyclic order
    let order_in_poly: Vec<usize> = rotated
        .iter()
        .copied()
        .filter(|v| anchors.contains(v))
        .collect();
    assert_eq!(
        order_in_poly,
        t.vertices(),
        "{poly}: anchors out of order for type {t}"
    );
    // blocks between anchors sit inside one neighboring interval of the
    // anchor they follow
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut current_anchor = rotated[0];
    for &v in &rotated[1..] {
        if anchors.contains(&v) {
            current_anchor = v;
        } else {
            blocks.entry(current_anchor).or_default().push(v);
        }
    }
    let inside = |value: usize, range: Option<(usize, usize)>| {
        range.is_some_and(|(lo, hi)| lo <= value && value <= hi)
    };
    for (&anchor, block) in &blocks {
        let (minus, plus) = intervals[&anchor];
        // every block element sits in a neighboring interval of its anchor
        // (elements of one block may use both sides: (7,2,4,1,3,6,5) puts
        // 5 ∈ I⁻(6) and 7 ∈ I⁺(6))
        for &v in block {
            assert!(
                inside(v, plus) || inside(v, minus),
                "{poly}: element {v} after {anchor} outside I⁺ ∪ I⁻ (type {t})"
            );
        }
        // separation inside a shared interval I⁺(a_i) = I⁻(a_j)
        if let Some(range) = plus {
            for (&other, oblock) in &blocks {
                if other == anchor {
                    continue;
                }
                let (ominus, _) = intervals[&other];
                if ominus == Some(range) {
                    let here_max = block.iter().filter(|&&v| inside(v, plus)).max();
                    let there_min = oblock.iter().filter(|&&v| inside(v, ominus)).min();
                    if let (Some(hi), Some(lo)) = (here_max, there_min) {
                        assert!(
                            hi < lo,
                            "{poly}: blocks sharing I⁺({anchor})=I⁻({other}) are not separated"
                        );
                    }
                }
            }
        }
    }
}

fn next_perm(w: &mut [usize]) -> bool {
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

#[test]
fn one_skeletons_match_cayley_graphs() {
    for n in 1..=5 {
        let full = complexes::permutahedron_complex(n).unwrap();
        for class in [None, Some(SimpleClass::B), Some(SimpleClass::C)] {
            let (complex, graph) = match class {
                None => (
                    complexes::induced_subcomplex(&full, |_| true),
                    cayley::build_gamma(n, |_| true).unwrap(),
                ),
                Some(cl) => (
                    complexes::induced_subcomplex(&full, |p| cl.contains(p)),
                    cayley::build_gamma_class(n, cl).unwrap(),
                ),
            };
            assert_eq!(complex.vertex_perms, graph.vertices());
            let skeleton = complex.one_skeleton_edges();
            let gedges: Vec<(usize, usize)> =
                graph.edges().iter().map(|&(a, b, _)| (a, b)).collect();
            assert_eq!(skeleton, gedges, "1-skeleton equality at n={n}, {class:?}");
        }
    }
}

#[test]
fn weak_covers_are_bruhat_covers() {
    for n in 2..=5 {
        let weak: BTreeSet<(usize, usize)> = complexes::weak_covers(n)
            .unwrap()
            .covers
            .into_iter()
            .collect();
        let bruhat: BTreeSet<(usize, usize)> = complexes::bruhat_covers(n)
            .unwrap()
            .covers
            .into_iter()
            .collect();
        assert!(weak.is_subset(&bruhat), "weak ⊆ Bruhat at n={n}");
        // both graded by length
        let poset = complexes::bruhat_covers(n).unwrap();
        for &(a, b) in &poset.covers {
            assert_eq!(
                coxeter_length(&poset.elements[b]),
                coxeter_length(&poset.elements[a]) + 1
            );
        }
    }
}

fn censuses() -> &'static Vec<CensusReport> {
    static CACHE: OnceLock<Vec<CensusReport>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (1..=9)
            .map(|n| enumerate::census_with(n, 9, enumerate::default_jobs()).unwrap())
            .collect()
    })
}

#[test]
fn rarity_ratios_strictly_decrease() {
    for class in ['c', 'g', 'b', 't'] {
        for n in 3..9 {
            let here = censuses()[n - 1].ratio(class);
            let next = censuses()[n].ratio(class);
            assert!(
                next < here,
                "ratio of class {class} must decrease from n={n} to n={}",
                n + 1
            );
        }
    }
}

#[test]
fn exponential_growth_proxy() {
    for class in ['s', 'c', 'g', 'b', 't'] {
        let at8 = censuses()[7].count(class);
        let at9 = censuses()[8].count(class);
        assert!(
            at9 >= 2 * at8,
            "class {class} count at n=9 ({at9}) is at least twice the n=8 count ({at8})"
        );
    }
}

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|w| Permutation::from_word(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn conjugation_invariance_of_c_and_g(p in perm_strategy(8), seed in any::<u64>()) {
        // deterministic conjugator derived from the seed
        let n = p.n();
        let mut word: Vec<usize> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            word.swap(i, j);
        }
        let sigma = Permutation::from_word(word).unwrap();
        let conj = sigma
            .compose(&p)
            .unwrap()
            .compose(&sigma.inverse())
            .unwrap();
        prop_assert_eq!(classify::is_c_simple(&p), classify::is_c_simple(&conj));
        prop_assert_eq!(classify::is_g_simple(&p), classify::is_g_simple(&conj));
    }

    #[test]
    fn parser_printer_inverse_pairs(p in perm_strategy(10)) {
        let one_line = p.one_line();
        prop_assert_eq!(&Permutation::parse_one_line(&one_line).unwrap(), &p);
        let cycles = cycle_decomposition(&p, false);
        let reparsed = Permutation::parse_cycles(&cycles.to_string(), Some(p.n())).unwrap();
        prop_assert_eq!(&reparsed, &p);
        let word = coxeter_normal_form(&p);
        let wtext = word.to_string();
        let wparsed = permsimple_core::CoxeterWord::parse(&wtext, Some(p.n())).unwrap();
        prop_assert_eq!(&evaluate_word(&wparsed).unwrap(), &p);
        prop_assert_eq!(wparsed.to_string(), wtext);
    }

    #[test]
    fn group_laws(p in perm_strategy(9), q in perm_strategy(9)) {
        if p.n() == q.n() {
            let pq = p.compose(&q).unwrap();
            prop_assert_eq!(pq.inverse(), q.inverse().compose(&p.inverse()).unwrap());
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn geodesics_stay_b_simple(p in perm_strategy(7)) {
        // geodesic_to_identity asserts b-simplicity of every prefix internally
        if classify::is_b_simple(&p) {
            let path = cayley::geodesic_to_identity(&p).unwrap();
            prop_assert_eq!(path.len(), coxeter_length(&p) + 1);
        }
    }

    #[test]
    fn planarity_verdicts_carry_valid_certificates(
        n in 4usize..10,
        edge_bits in proptest::collection::vec(any::<bool>(), 45),
    ) {
        use permsimple_core::planar;
        let mut edges = Vec::new();
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if edge_bits[idx % edge_bits.len()] {
                    edges.push((u, v));
                }
                idx += 1;
            }
        }
        match planar::check_planarity(n, &edges) {
            planar::Planarity::Planar(emb) => {
                prop_assert!(planar::verify_embedding(&edges, &emb).is_ok());
            }
            planar::Planarity::NonPlanar(w) => {
                prop_assert!(planar::verify_kuratowski(&edges, &w).is_ok());
            }
        }
    }
}
