use fewcolour::colouring::{
    circle_colouring, cyclic_colouring_odd, extend_odd_to_even, parse_colouring,
    serialize_colouring, validate_proper, xor_colouring, ClassShape,
};
use fewcolour::hamilton::{find_hamilton_rotation, validate_cycle};
use fewcolour::rng::derive_seed;
use fewcolour::sampler::{build_union_graph, sample_colours, SampleEntry};
use fewcolour::spectral::summand_matrix;
use proptest::prelude::*;

proptest! {
    #[test]
    fn circle_classes_partition_the_edges(half in 2usize..60) {
        let n = 2 * half;
        let c = circle_colouring(n).unwrap();
        let report = validate_proper(&c);
        prop_assert!(report.is_proper());
        prop_assert_eq!(report.class_sizes.iter().sum::<usize>(), n * (n - 1) / 2);
        prop_assert!(report.class_shapes.iter().all(|&s| s == ClassShape::Perfect));
    }

    #[test]
    fn cyclic_missing_colour_is_twice_the_vertex(half in 1usize..60) {
        let n = 2 * half + 1;
        let c = cyclic_colouring_odd(n).unwrap();
        let mut missing_at = vec![None; n];
        for u in 0..n {
            let m = c.missing(u).unwrap();
            prop_assert_eq!(m as usize, 2 * u % n);
            prop_assert!(missing_at[m as usize].replace(u).is_none());
        }
        let ext = extend_odd_to_even(&c).unwrap();
        prop_assert!(validate_proper(&ext).is_proper());
        prop_assert_eq!(ext.colour_count() as usize, n);
    }

    #[test]
    fn xor_colour_depends_only_on_difference(k in 1u32..7, a in any::<u32>(), b in any::<u32>(), s in any::<u32>()) {
        let c = xor_colouring(k).unwrap();
        let n = c.n() as u32;
        let (a, b, s) = (a % n, b % n, s % n);
        prop_assume!(a != b);
        prop_assert_eq!(c.colour(a as usize, b as usize), c.colour((a ^ s) as usize, (b ^ s) as usize));
    }

    #[test]
    fn serialization_round_trips(half in 2usize..20, odd in any::<bool>()) {
        let c = if odd { cyclic_colouring_odd(2 * half + 1) } else { circle_colouring(2 * half) }.unwrap();
        prop_assert_eq!(parse_colouring(&serialize_colouring(&c)).unwrap(), c);
    }

    #[test]
    fn sampling_replays_and_clean_graphs_have_dn_over_2_edges(half in 2usize..40, d in 0usize..12, seed in any::<u64>()) {
        let n = 2 * half;
        let c = circle_colouring(n).unwrap();
        let s = sample_colours(&c, d, seed).unwrap();
        prop_assert_eq!(&s, &sample_colours(&c, d, seed).unwrap());
        if let Ok(h) = build_union_graph(&c, &s) {
            prop_assert_eq!(h.graph.edge_count(), d * n / 2);
            prop_assert_eq!(h.graph.regular_degree(), Some(d));
            let mut used: Vec<u32> = h.graph.edges().map(|(u, v)| c.colour(u, v)).collect();
            used.sort_unstable();
            used.dedup();
            if d > 0 {
                prop_assert_eq!(used, h.colours.clone());
            }
        }
    }

    #[test]
    fn rotation_finder_is_deterministic_and_sound(half in 3usize..30, seed in any::<u64>()) {
        let n = 2 * half;
        let c = circle_colouring(n).unwrap();
        let s = sample_colours(&c, 4, seed).unwrap();
        if let Ok(h) = build_union_graph(&c, &s) {
            let a = find_hamilton_rotation(&h.graph, seed, 500 * n);
            prop_assert_eq!(&a, &find_hamilton_rotation(&h.graph, seed, 500 * n));
            if let Some(order) = a.order() {
                prop_assert_eq!(validate_cycle(&h.graph, order), Ok(()));
            }
        }
    }
}

#[test]
fn generated_colourings_proper_up_to_2048() {
    for n in [2000, 2048] {
        assert!(validate_proper(&circle_colouring(n).unwrap()).is_proper());
    }
    assert!(validate_proper(&cyclic_colouring_odd(2047).unwrap()).is_proper());
    assert!(validate_proper(&xor_colouring(11).unwrap()).is_proper());
}

/// Each summand has expectation `J / n`: entry `(u, v)` is hit with
/// probability `1/n` for every pair, diagonal included.
#[test]
fn summand_mean_is_j_over_n() {
    let n = 16;
    let c = circle_colouring(n).unwrap();
    let draws = 100_000;
    let matrices: Vec<_> = (0..n as u32 - 1)
        .map(SampleEntry::Colour)
        .chain([SampleEntry::Identity])
        .map(|e| (e, summand_matrix(&c, e).unwrap()))
        .collect();
    let mut hits = vec![0u32; n * n];
    for t in 0..draws {
        let entry = sample_colours(&c, 1, derive_seed(2024, t)).unwrap().entries[0];
        let m = &matrices.iter().find(|(e, _)| *e == entry).unwrap().1;
        for i in 0..n {
            for j in 0..n {
                hits[i * n + j] += m[(i, j)] as u32;
            }
        }
    }
    let p = 1.0 / n as f64;
    let mean = draws as f64 * p;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for (k, &h) in hits.iter().enumerate() {
        assert!(
            (h as f64 - mean).abs() <= 4.0 * sigma,
            "entry ({}, {}) hit {h} times, expected {mean}",
            k / n,
            k % n
        );
    }
}

#[test]
fn five_classes_of_circle_64_success_frequency() {
    let c = circle_colouring(64).unwrap();
    let mut found = 0;
    for seed in 0..100u64 {
        let mut k = 0;
        let h = loop {
            let s = sample_colours(&c, 5, derive_seed(seed, k)).unwrap();
            if let Ok(h) = build_union_graph(&c, &s) {
                break h;
            }
            k += 1;
        };
        if let Some(order) = find_hamilton_rotation(&h.graph, seed, 500 * 64).order() {
            assert_eq!(validate_cycle(&h.graph, order), Ok(()));
            found += 1;
        }
    }
    println!("5 colour classes of circle_colouring(64): {found}/100 Hamiltonian cycles found");
    assert!(found > 0);
}
