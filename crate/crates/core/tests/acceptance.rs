//! The headline claims, one test per criterion.
//!
//! Each test prints a single `ACCEPTANCE <i> <label>: PASS` line and enforces
//! its own wall-clock bound. Run with
//! `cargo test -p bitrade-core --test acceptance -- --nocapture` to see the
//! lines; a failing criterion fails its test.

use std::collections::BTreeSet;
use std::time::Instant;

use bitrade_core::construct::{
    b_s, lift_pair_function, pair_g, pair_g_prime, pair_h, quasigroup_graph,
    PairFunction,
};
use bitrade_core::cube::{CellSet, Params, Point};
use bitrade_core::rng::SplitMix64;
use bitrade_core::search::{
    brute_force_bitrades, enumerate_bitrades_q3, enumerate_mds,
    pairwise_symdiff_spectrum, split_check, BruteStrategy, SearchOptions,
};
use bitrade_core::verify::{
    bipartition, is_embedded, is_latin_bitrade, is_t_fold_mds,
    minimal_bitrade_check, Witness,
};

fn pass(index: usize, label: &str, t0: Instant, limit_s: f64) {
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        elapsed < limit_s,
        "ACCEPTANCE {index} {label}: FAIL ({elapsed:.2}s exceeds the {limit_s}s bound)"
    );
    println!("ACCEPTANCE {index} {label}: PASS ({elapsed:.2}s)");
}

fn ranks(s: &CellSet) -> Vec<usize> {
    s.iter_ranks().collect()
}

fn rank_sets(catalog: impl IntoIterator<Item = CellSet>) -> BTreeSet<Vec<usize>> {
    catalog.into_iter().map(|b| ranks(&b)).collect()
}

fn stored(opts: SearchOptions) -> SearchOptions {
    SearchOptions { store_objects: true, ..opts }
}

#[test]
fn criterion_1_ternary_catalog_counts() {
    let t0 = Instant::now();
    for (n, expect) in [(1u16, 4usize), (2, 16), (3, 256)] {
        let catalog = rank_sets(enumerate_bitrades_q3(n).unwrap());
        assert_eq!(catalog.len(), expect, "catalog size at n = {n}");
    }
    for n in [1u16, 2] {
        let params = Params::new(3, n).unwrap();
        let report =
            brute_force_bitrades(params, &stored(SearchOptions::default()), BruteStrategy::Subsets)
                .unwrap();
        let brute = rank_sets(report.objects.unwrap());
        let catalog = rank_sets(enumerate_bitrades_q3(n).unwrap());
        assert_eq!(brute, catalog, "brute force disagrees at n = {n}");
    }
    pass(1, "ternary bitrade catalogs 4/16/256, brute force agrees", t0, 5.0);
}

#[test]
fn criterion_2_small_size_spectrum() {
    let t0 = Instant::now();
    let params = Params::new(4, 2).unwrap();
    let report =
        brute_force_bitrades(params, &SearchOptions::default(), BruteStrategy::Subsets).unwrap();
    assert_eq!(report.nodes, 1 << 16);
    for &size in report.histogram.keys() {
        assert!(size == 0 || size >= 4, "nonempty bitrade of size {size} in Q_4^2");
        if (4..8).contains(&size) {
            assert!(size == 4 || size == 6, "unexpected small size {size} in Q_4^2");
        }
    }

    let catalog: Vec<CellSet> = enumerate_bitrades_q3(3).unwrap().collect();
    assert_eq!(catalog.len(), 256);
    let catalog_ranks = rank_sets(catalog.iter().cloned());
    let gap_sizes: BTreeSet<usize> = catalog
        .iter()
        .map(CellSet::len)
        .filter(|s| (8..16).contains(s))
        .collect();
    assert_eq!(gap_sizes, BTreeSet::from([8, 12, 14]));
    for (s, size) in [(2u16, 8usize), (1, 12), (0, 14)] {
        let b = b_s(3, s).unwrap();
        assert_eq!(b.len(), size);
        assert!(catalog_ranks.contains(&ranks(&b)), "b_{s} is not in the catalog");
    }
    pass(2, "size floor 4 in Q_4^2; middle sizes in Q_3^3 are 8/12/14", t0, 30.0);
}

#[test]
fn criterion_3_two_symbol_family() {
    let t0 = Instant::now();
    for n in 1..=6u16 {
        for s in 0..n {
            let b = b_s(n, s).unwrap();
            assert_eq!(b.len(), (1usize << (n + 1)) - (1 << (s + 1)), "size of b_{s}({n})");
            assert!(is_latin_bitrade(&b).verdict, "b_{s}({n}) is not a bitrade");
            assert!(bipartition(&b).verdict, "b_{s}({n}) is not bipartite");
        }
    }
    pass(3, "two-symbol family: bitrade, bipartite, size 2^(n+1)-2^(s+1)", t0, 5.0);
}

#[test]
fn criterion_4_order_four_squares_and_their_spectrum() {
    let t0 = Instant::now();
    let params = Params::new(4, 3).unwrap();
    let report = enumerate_mds(params, 1, &stored(SearchOptions::default())).unwrap();
    assert_eq!(report.count, 576);
    let codes = report.objects.unwrap();
    assert_eq!(rank_sets(codes.iter().cloned()), latin_square_oracle(&params));

    let spectrum = pairwise_symdiff_spectrum(&codes, 1, &SearchOptions::default()).unwrap();
    assert_eq!(spectrum.nodes, 576 * 577 / 2);
    assert_eq!(spectrum.nodes - 576, 165_600);
    assert_eq!(spectrum.count, spectrum.nodes, "a pair of codes whose symdiff is no bitrade");
    assert_eq!(spectrum.histogram.get(&0), Some(&576));
    let offending: Vec<(usize, u64)> = spectrum
        .histogram
        .iter()
        .filter(|(size, _)| (9..=15).contains(*size))
        .map(|(&size, &count)| (size, count))
        .collect();
    if !offending.is_empty() {
        println!(
            "ACCEPTANCE 4 576 order-4 squares; 165600 pairs, no symdiff size in 9..15: FAIL \
             (sizes {offending:?} occur; full spectrum {:?})",
            spectrum.histogram
        );
        panic!(
            "the claimed gap does not hold: pairwise symdiff sizes {offending:?} \
             lie strictly between 8 and 16 (size 14 comes from two squares at table distance 7)"
        );
    }
    pass(4, "576 order-4 squares; 165600 pairs, no symdiff size in 9..15", t0, 60.0);
}

/// Row-by-row enumeration of the order-4 latin squares, as rank sets of their
/// graphs. Independent of the search engine.
fn latin_square_oracle(params: &Params) -> BTreeSet<Vec<usize>> {
    let mut perms: Vec<[u8; 4]> = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    if (1..4).all(|i| !p[..i].contains(&p[i])) {
                        perms.push(p);
                    }
                }
            }
        }
    }
    assert_eq!(perms.len(), 24);

    fn extend(
        perms: &[[u8; 4]],
        rows: &mut Vec<[u8; 4]>,
        params: &Params,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if rows.len() == 4 {
            let mut cells = Vec::with_capacity(16);
            for (r, row) in rows.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    cells.push(params.rank_coords(&[r as u8, c as u8, v]).unwrap());
                }
            }
            cells.sort_unstable();
            out.insert(cells);
            return;
        }
        'candidate: for p in perms {
            for prev in rows.iter() {
                for c in 0..4 {
                    if prev[c] == p[c] {
                        continue 'candidate;
                    }
                }
            }
            rows.push(*p);
            extend(perms, rows, params, out);
            rows.pop();
        }
    }

    let mut squares = BTreeSet::new();
    extend(&perms, &mut Vec::new(), params, &mut squares);
    assert_eq!(squares.len(), 576);
    squares
}

#[test]
fn criterion_5_ternary_spectrum() {
    let t0 = Instant::now();
    let params = Params::new(3, 2).unwrap();
    let report = enumerate_mds(params, 1, &stored(SearchOptions::default())).unwrap();
    assert_eq!(report.count, 6);
    let spectrum =
        pairwise_symdiff_spectrum(&report.objects.unwrap(), 1, &SearchOptions::default()).unwrap();
    let sizes: BTreeSet<usize> = spectrum.histogram.keys().copied().collect();
    assert_eq!(sizes, BTreeSet::from([0, 4, 6]));
    pass(5, "symdiff sizes over the 6 codes of Q_3^2 are exactly {0,4,6}", t0, 1.0);
}

#[test]
fn criterion_6_pair_function_lifts() {
    let t0 = Instant::now();
    for n in [2u16, 3] {
        let fg = lift_pair_function(&pair_g(n).unwrap()).unwrap();
        assert!(is_t_fold_mds(&fg, 2).unwrap().verdict);
        let fg_prime = lift_pair_function(&pair_g_prime(n).unwrap()).unwrap();
        assert!(is_t_fold_mds(&fg_prime, 2).unwrap().verdict);
        for s in 1..=n {
            let fh = lift_pair_function(&pair_h(n, s).unwrap()).unwrap();
            assert!(is_t_fold_mds(&fh, 2).unwrap().verdict, "lift of h_{s} at n = {n}");
            let d = fg_prime.symdiff(&fh).unwrap();
            assert_eq!(d.len(), (1usize << (n + 2)) - (1 << (s + 1)));
            assert!(is_latin_bitrade(&d).verdict);
            assert!(bipartition(&d).verdict);
            assert!(is_embedded(&d, &fh, 2).unwrap().verdict);
        }
    }

    let tables: [(PairFunction, [[&str; 4]; 4]); 3] = [
        (
            pair_g(2).unwrap(),
            [
                ["02", "13", "02", "13"],
                ["13", "02", "13", "02"],
                ["02", "13", "02", "13"],
                ["13", "02", "13", "02"],
            ],
        ),
        (
            pair_g_prime(2).unwrap(),
            [
                ["02", "13", "02", "13"],
                ["13", "13", "02", "02"],
                ["02", "02", "13", "13"],
                ["13", "02", "13", "02"],
            ],
        ),
        (
            pair_h(2, 1).unwrap(),
            [
                ["12", "03", "02", "13"],
                ["03", "13", "12", "02"],
                ["02", "12", "03", "13"],
                ["13", "02", "13", "02"],
            ],
        ),
    ];
    for (f, table) in &tables {
        for (r, row) in table.iter().enumerate() {
            for (c, want) in row.iter().enumerate() {
                let got = f.value_at(&Point::from([r as u8, c as u8])).unwrap();
                assert_eq!(got.code(), *want, "cell ({r},{c})");
            }
        }
    }
    pass(6, "lifts are 2-fold codes; tables and symdiff embeddings check", t0, 5.0);
}

#[test]
fn criterion_7_splittability() {
    let t0 = Instant::now();
    for n in [2u16, 3] {
        let fg = lift_pair_function(&pair_g(n).unwrap()).unwrap();
        let base = Params::new(4, n).unwrap();
        let coord_sum = |p: &Point| p.coords().iter().map(|&c| c as usize).sum::<usize>();
        let m1 = quasigroup_graph(base, |p| (coord_sum(p) % 4) as u8).unwrap();
        let m2 = quasigroup_graph(base, |p| ((coord_sum(p) + 2) % 4) as u8).unwrap();
        assert!(is_t_fold_mds(&m1, 1).unwrap().verdict);
        assert!(is_t_fold_mds(&m2, 1).unwrap().verdict);
        assert!(m1.is_disjoint_from(&m2).unwrap());
        assert_eq!(ranks(&m1.union(&m2).unwrap()), ranks(&fg), "sum selector misses the lift");

        let cert = split_check(&fg, 2, &SearchOptions::default()).unwrap();
        assert!(cert.verdict, "lift of g at n = {n} did not split");
        match cert.witness {
            Witness::Decomposition { parts } => {
                assert_eq!(parts.len(), 2);
                assert!(parts[0].is_disjoint_from(&parts[1]).unwrap());
                assert_eq!(ranks(&parts[0].union(&parts[1]).unwrap()), ranks(&fg));
                for part in &parts {
                    assert!(is_t_fold_mds(part, 1).unwrap().verdict);
                }
            }
            other => panic!("unexpected witness {other:?}"),
        }

        let fh = lift_pair_function(&pair_h(n, 1).unwrap()).unwrap();
        let cert = split_check(&fh, 2, &SearchOptions::default()).unwrap();
        assert!(!cert.verdict, "lift of h_1 at n = {n} split unexpectedly");
        assert!(matches!(cert.witness, Witness::Exhaustion { .. }));
    }
    pass(7, "lifted g splits (verified two ways); lifted h_1 does not", t0, 120.0);
}

#[test]
fn criterion_8_minimality_conditions_agree() {
    let t0 = Instant::now();
    let mut checked = 0u32;
    for n in [2u16, 3] {
        for b in enumerate_bitrades_q3(n).unwrap() {
            if b.is_empty() {
                continue;
            }
            let report = minimal_bitrade_check(&b).unwrap();
            assert!(report.flags_agree(), "minimality flags disagree on {:?}", ranks(&b));
            checked += 1;
        }
    }
    assert_eq!(checked, 15 + 255);
    pass(8, "four minimality conditions agree on all 270 catalog bitrades", t0, 10.0);
}

#[test]
fn criterion_9_closure_under_symdiff_and_product() {
    let t0 = Instant::now();
    let catalog: Vec<CellSet> = enumerate_bitrades_q3(3).unwrap().collect();
    let bipartite: Vec<bool> = catalog.iter().map(|b| bipartition(b).verdict).collect();
    let mut rng = SplitMix64::new(0x9e3779b97f4a7c15);
    let draw = |rng: &mut SplitMix64| rng.below(catalog.len() as u64) as usize;
    for _ in 0..1000 {
        let (i, j) = (draw(&mut rng), draw(&mut rng));
        let d = catalog[i].symdiff(&catalog[j]).unwrap();
        assert!(is_latin_bitrade(&d).verdict, "symdiff of {i} and {j} is no bitrade");
    }
    for _ in 0..1000 {
        let (i, j) = (draw(&mut rng), draw(&mut rng));
        let p = catalog[i].cartesian_product(&catalog[j]).unwrap();
        assert!(is_latin_bitrade(&p).verdict, "product of {i} and {j} is no bitrade");
        if bipartite[i] && bipartite[j] {
            assert!(bipartition(&p).verdict, "product of {i} and {j} is not bipartite");
        }
    }
    pass(9, "symdiffs and products of 1000 random pairs stay bitrades", t0, 30.0);
}
