//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use num_traits::ToPrimitive;

use permsimple_core::cayley::{self, SimpleClass};
use permsimple_core::classify;
use permsimple_core::complexes::{self, OrderKind};
use permsimple_core::enumerate::{self, CensusReport};
use permsimple_core::perm::cycle_decomposition;
use permsimple_core::planar::{self, Planarity};
use permsimple_core::polygon::{self, PolygonalType};

fn censuses() -> &'static Vec<CensusReport> {
    static CACHE: OnceLock<Vec<CensusReport>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (1..=9)
            .map(|n| enumerate::census_with(n, 9, enumerate::default_jobs()).unwrap())
            .collect()
    })
}

fn census(n: usize) -> &'static CensusReport {
    &censuses()[n - 1]
}

#[test]
fn criterion_1_sigma_triangle() {
    // construction itself re-verifies recurrence (3) against recurrence (2)
    let t = enumerate::sigma_triangle(30);
    let row = |n: usize| -> Vec<u64> {
        t.row(n).iter().map(|v| v.to_u64().unwrap()).collect()
    };
    assert_eq!(row(1), vec![1]);
    assert_eq!(row(2), vec![1, 1]);
    assert_eq!(row(3), vec![1, 2, 2]);
    assert_eq!(row(4), vec![1, 3, 5, 4]);
    assert_eq!(row(5), vec![1, 4, 9, 12, 8]);
    for n in 1..=30 {
        assert_eq!(t.row_sum(n), enumerate::fibonacci(2 * n - 1), "row sum at n={n}");
        if n >= 2 {
            assert_eq!(
                t.row(n)[n - 1],
                num_bigint::BigUint::from(2u32).pow(n as u32 - 2),
                "last entry at n={n}"
            );
        }
    }
    println!("[criterion 1] PASS: σ-triangle rows, recurrences to n=30, Fibonacci row sums, 2^(n-2) tails");
}

#[test]
fn criterion_2_census_table() {
    let expected = [
        (1u64, 1u64, 1u64, 1u64, 1u64),
        (2, 2, 2, 2, 2),
        (0, 6, 6, 5, 6),
        (2, 21, 18, 13, 20),
        (6, 85, 70, 34, 72),
        (46, 410, 300, 89, 272),
    ];
    for (i, &(s, c, g, b, t)) in expected.iter().enumerate() {
        let r = census(i + 1);
        assert_eq!(
            (r.s, r.c, r.g, r.b, r.t),
            (s, c, g, b, t),
            "census table row n={}",
            i + 1
        );
    }
    for n in 1..=9 {
        let r = census(n);
        for class in ['b', 'c', 'g', 't'] {
            let formula = enumerate::formula_count(class, n).unwrap();
            assert_eq!(
                formula.to_u64().unwrap(),
                r.count(class),
                "formula vs census for class {class} at n={n}"
            );
        }
    }
    println!("[criterion 2] PASS: census table n=1..6 exact; formulas agree with census for b,c,g,t up to n=9");
}

#[test]
fn criterion_3_b_simple_characterization() {
    for n in 1..=7 {
        enumerate::for_each_permutation(n, |p| {
            assert_eq!(
                classify::is_b_simple(p),
                classify::is_b_simple_by_word(p),
                "route disagreement at [{p}]"
            );
        });
    }
    println!("[criterion 3] PASS: connected+unimodal ≡ square-free normal form on Σₙ, n ≤ 7");
}

#[test]
fn criterion_4_intersections() {
    let mut bc = 0u64;
    let mut bg = 0u64;
    let mut bs = 0u64;
    let mut bt = 0u64;
    enumerate::for_each_permutation(6, |p| {
        bc += classify::in_b_and_c(p) as u64;
        bg += classify::in_b_and_g(p) as u64;
        bs += classify::in_b_and_s(p) as u64;
        bt += classify::in_b_and_t(p) as u64;
    });
    for n in 1..=8 {
        let witness = classify::quintuple_witness(n);
        let expect_nonempty = matches!(n, 1 | 2 | 5 | 7);
        assert_eq!(
            witness.is_some(),
            expect_nonempty,
            "quintuple intersection nonemptiness at n={n}"
        );
        // the witness constructor asserts all five predicates itself; also
        // confirm emptiness by exhaustion where claimed empty and feasible
        if !expect_nonempty {
            let mut found = false;
            enumerate::for_each_permutation(n, |p| {
                let pr = classify::profile(p);
                found |= pr.s_simple && pr.c_simple && pr.g_simple && pr.b_simple && pr.t_simple;
            });
            assert!(!found, "quintuple intersection should be empty at n={n}");
        }
    }
    let got = (bc, bg, bs, bt);
    let stated = (58, 39, 4, 44);
    if got != stated {
        println!(
            "[criterion 4] FAIL: intersection counts over Σ₆ computed {got:?} vs stated {stated:?}. \
             Both classifier routes agree on every element, the counts match an independent \
             brute-force recount, and the two missing b∩g members (words 1245, 2154) and the \
             two missing b∩t members (words 1254, 12543) each satisfy the stated \
             characterizations directly; the stated 39/44 appear to be miscounts. \
             Quintuple-intersection pattern over n ≤ 8 verified: nonempty exactly for n ∈ {{1,2,5,7}}."
        );
    } else {
        println!("[criterion 4] PASS: intersection counts and quintuple pattern");
    }
    assert_eq!(got, stated, "intersection counts over Σ₆");
}

#[test]
fn criterion_5_graph_connectivity() {
    for n in 1..=8 {
        let g = cayley::build_gamma_class(n, SimpleClass::B).unwrap();
        assert_eq!(cayley::components(&g).len(), 1, "Γ(bS{n}) connected");
    }
    for n in 1..=7 {
        let g = cayley::build_gamma_class(n, SimpleClass::C).unwrap();
        let comps = cayley::components(&g);
        assert_eq!(comps.len() == 1, n <= 4, "Γ(cS{n}) connectivity");
        if n == 5 {
            assert_eq!(comps.len(), 3, "Γ(cS₅) has exactly three components");
            let mut singles: Vec<String> = comps
                .iter()
                .filter(|c| c.len() == 1)
                .map(|c| cycle_decomposition(g.vertex(c[0]), false).to_string())
                .collect();
            singles.sort();
            assert_eq!(singles, vec!["(5 2 4 1 3)", "(5 3 1 4 2)"]);
        }
    }
    for n in 1..=7 {
        let g = cayley::build_gamma_class(n, SimpleClass::G).unwrap();
        let comps = cayley::components(&g);
        assert_eq!(comps.len() == 1, n <= 3, "Γ(gS{n}) connectivity");
    }
    println!("[criterion 5] PASS: Γ(bSₙ) connected to n=8; Γ(cSₙ) connected iff n ≤ 4 (cS₅: 3 components, stated singletons); Γ(gSₙ) connected iff n ≤ 3");
}

#[test]
fn criterion_6_planarity() {
    let b5 = cayley::build_gamma_class(5, SimpleClass::B).unwrap();
    let edges5: Vec<(usize, usize)> = b5.edges().iter().map(|&(a, b, _)| (a, b)).collect();
    match cayley::planarity(&b5) {
        Planarity::Planar(emb) => planar::verify_embedding(&edges5, &emb).unwrap(),
        Planarity::NonPlanar(_) => panic!("Γ(bS₅) must be planar"),
    }
    let b7 = cayley::build_gamma_class(7, SimpleClass::B).unwrap();
    let edges7: Vec<(usize, usize)> = b7.edges().iter().map(|&(a, b, _)| (a, b)).collect();
    let witness = cayley::k33_witness(&b7).expect("Γ(bS₇) must contain a K₃,₃ subdivision");
    planar::verify_kuratowski(&edges7, &witness).unwrap();
    let branch_words: Vec<String> = witness
        .branch_vertices
        .iter()
        .map(|&v| b7.vertex(v).one_line())
        .collect();
    let b6 = cayley::build_gamma_class(6, SimpleClass::B).unwrap();
    let edges6: Vec<(usize, usize)> = b6.edges().iter().map(|&(a, b, _)| (a, b)).collect();
    let verdict6 = cayley::planarity(&b6);
    let verdict6_text = match &verdict6 {
        Planarity::Planar(emb) => {
            planar::verify_embedding(&edges6, emb).unwrap();
            "planar (verified embedding)"
        }
        Planarity::NonPlanar(w) => {
            planar::verify_kuratowski(&edges6, w).unwrap();
            "non-planar (verified Kuratowski subdivision)"
        }
    };
    println!(
        "[criterion 6] PASS: Γ(bS₅) planar (certified); Γ(bS₇) non-planar with verified K₃,₃ \
         on branch vertices {branch_words:?}; Γ(bS₆) certified verdict: {verdict6_text}. \
         Note: the source statement (planar iff n ≤ 5) and its own argument (which asserts \
         Γ(bS₆) planar from a figure) disagree — the machine-checked certificate above is \
         the deciding object."
    );
}

#[test]
fn criterion_7_component_calculus() {
    // descriptor partitions equal BFS partitions, exhaustively for n ≤ 7
    for n in 1..=7 {
        let gc = cayley::build_gamma_class(n, SimpleClass::C).unwrap();
        let comps = cayley::components(&gc);
        let mut seen: HashMap<polygon::CsComponent, usize> = HashMap::new();
        for (ci, comp) in comps.iter().enumerate() {
            let descriptors: BTreeSet<polygon::CsComponent> = comp
                .iter()
                .map(|&v| polygon::cs_component_of(gc.vertex(v)).unwrap())
                .collect();
            assert_eq!(
                descriptors.len(),
                1,
                "Γ(cS{n}) component {ci} carries a single descriptor"
            );
            let d = descriptors.into_iter().next().unwrap();
            assert!(
                seen.insert(d, ci).is_none(),
                "descriptor repeated across Γ(cS{n}) components"
            );
        }
        let gg = cayley::build_gamma_class(n, SimpleClass::G).unwrap();
        let comps = cayley::components(&gg);
        let mut seen: HashMap<polygon::GComponentId, usize> = HashMap::new();
        for (ci, comp) in comps.iter().enumerate() {
            let descriptors: BTreeSet<polygon::GComponentId> = comp
                .iter()
                .map(|&v| polygon::gs_component_of(gg.vertex(v)).unwrap())
                .collect();
            assert_eq!(
                descriptors.len(),
                1,
                "Γ(gS{n}) component {ci} carries a single descriptor"
            );
            let d = descriptors.into_iter().next().unwrap();
            assert!(
                seen.insert(d, ci).is_none(),
                "descriptor repeated across Γ(gS{n}) components"
            );
        }
    }
    // reduction confluence for every cycle of length ≥ 5 with support in [1,9]
    let n = 9;
    let mut memo: HashMap<Vec<usize>, BTreeSet<Vec<usize>>> = HashMap::new();
    fn endpoints(
        poly: &PolygonalType,
        memo: &mut HashMap<Vec<usize>, BTreeSet<Vec<usize>>>,
    ) -> BTreeSet<Vec<usize>> {
        if let Some(hit) = memo.get(poly.vertices()) {
            return hit.clone();
        }
        let moves = polygon::reduce_once(poly);
        let result: BTreeSet<Vec<usize>> = if moves.is_empty() {
            [poly.vertices().to_vec()].into_iter().collect()
        } else {
            moves
                .iter()
                .flat_map(|m| endpoints(m, memo))
                .collect()
        };
        memo.insert(poly.vertices().to_vec(), result.clone());
        result
    }
    let mut checked = 0u64;
    for mask in 0u32..(1 << n) {
        let support: Vec<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        if support.len() < 5 {
            continue;
        }
        let max = *support.last().unwrap();
        let mut rest = support[..support.len() - 1].to_vec();
        loop {
            let mut cyc = vec![max];
            cyc.extend_from_slice(&rest);
            let poly = polygon::polygon_of_cycle(&cyc, n).unwrap();
            let ends = endpoints(&poly, &mut memo);
            let triangles = ends.iter().filter(|e| e.len() == 3).count();
            if triangles > 0 {
                assert_eq!(
                    triangles,
                    ends.len(),
                    "cycle {poly} reaches both triangles and an irreducible type"
                );
            } else {
                assert_eq!(ends.len(), 1, "cycle {poly} reaches two irreducible types");
            }
            checked += 1;
            if !next_perm(&mut rest) {
                break;
            }
        }
    }
    println!(
        "[criterion 7] PASS: cs/gs descriptors match BFS partitions for n ≤ 7; \
         reduction confluence on all {checked} cycles of length ≥ 5 over [1,9]"
    );
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
fn criterion_8_topology_evidence() {
    for n in 1..=5 {
        let p = complexes::permutahedron_complex(n).unwrap();
        p.verify_boundary_squared().unwrap();
        let pb = complexes::induced_subcomplex(&p, classify::is_b_simple);
        pb.verify_boundary_squared().unwrap();
        assert_eq!(pb.euler_characteristic(), 1, "χ(P(bS{n}))");
        let hom = pb.reduced_homology().unwrap();
        for (d, h) in hom.iter().enumerate() {
            assert!(h.is_trivial(), "H̃_{d}(P(bS{n})) must vanish, got {h:?}");
        }
    }
    for n in 1..=4 {
        let vertices = cayley::b_simple_permutations(n);
        for kind in [OrderKind::Bruhat, OrderKind::Weak] {
            let oc = complexes::order_complex(n, &vertices, kind, 2_000_000).unwrap();
            oc.verify_boundary_squared().unwrap();
            assert_eq!(oc.euler_characteristic(), 1, "χ of order complex at n={n}");
            let hom = oc.reduced_homology().unwrap();
            for (d, h) in hom.iter().enumerate() {
                assert!(h.is_trivial(), "H̃_{d} of {kind:?}(bS{n}) must vanish, got {h:?}");
            }
        }
    }
    // case multiplication equals direct multiplication for every (p, i), n ≤ 7
    for n in 2..=7 {
        enumerate::for_each_permutation(n, |p| {
            let dec = cycle_decomposition(p, false);
            for i in 1..n {
                polygon::splice_multiply(&dec, i);
            }
        });
    }
    println!(
        "[criterion 8] PASS: χ=1 and trivial reduced homology for P(bSₙ) n ≤ 5 and for B/W(bSₙ) n ≤ 4; \
         ∂²=0 everywhere; splice multiplication equals direct multiplication for all (π,i), n ≤ 7"
    );
}

#[test]
fn criterion_9_asymptotic_sanity() {
    // frozen from the first oracle run
    let frozen_counts: BTreeMap<usize, u64> =
        [(6, 46), (7, 338), (8, 2926), (9, 28146)].into_iter().collect();
    let mut gaps = BTreeMap::new();
    for n in 6..=9 {
        let r = census(n);
        assert_eq!(r.s, frozen_counts[&n], "frozen |sS{n}| census golden");
        let ratio = r.ratio('s');
        let asymptote = enumerate::truncated_asymptote(n);
        let gap = (ratio - asymptote).abs() / asymptote;
        gaps.insert(n, gap);
        println!(
            "  n={n}: |sS{n}|={} ratio={ratio:.6} asymptote={asymptote:.6} relative gap={gap:.6}",
            r.s
        );
    }
    // frozen after the first oracle run: every gap within 25% of the asymptote
    for (n, gap) in &gaps {
        assert!(
            *gap <= 0.25,
            "relative gap at n={n} exceeds the frozen 25% tolerance: {gap}"
        );
    }
    let monotone = (6..9).all(|n| gaps[&n] > gaps[&(n + 1)]);
    if monotone {
        println!("[criterion 9] PASS: relative gap shrinks monotonically on n = 6..9");
    } else {
        println!(
            "[criterion 9] FAIL: relative gap is not monotone on n = 6..9 (gaps: {gaps:?}). \
             The census ratio crosses the two-term truncation between n=8 and n=9, so the \
             n=9 gap grows again; the unspecified O(n⁻³) term dominates at this scale."
        );
    }
    assert!(monotone, "relative gap must shrink monotonically on 6..9");
}
