mod common;

use std::collections::BTreeSet;

use arrmi::arrangement::{braid, parse_arrangement, Arrangement};
use arrmi::building::{full_building_set, is_building_set, minimal_building_set};
use arrmi::exactla::{int, rational, rref, span_contains, span_intersect, span_sum, QMatrix, Rational, Subspace};
use arrmi::lattice::{closure, compute_lattice};
use arrmi::multiplier::{jump_candidates, lct, lct_over, presentation, presentation_ideal, support};
use arrmi::oracle::{graded_contained, graded_equal, graded_power, hilbert, monomials_of_degree};
use proptest::prelude::*;

use common::*;

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn small_matrix(cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), 0..=4)
}

fn seeded() -> impl Strategy<Value = Arrangement> {
    (0u64..5000).prop_map(random_arrangement)
}

fn lambda_strategy() -> impl Strategy<Value = Rational> {
    (0i64..=12, 1i64..=6).prop_map(|(p, q)| rational(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_invariant_under_row_operations(
        rows in small_matrix(4),
        scale in 1i64..=5,
        add in -3i64..=3,
    ) {
        let original = int_rows(&rows);
        let mut moved = original.clone();
        if moved.len() >= 2 {
            moved.swap(0, 1);
            let r1 = moved[1].clone();
            for (x, y) in moved[0].iter_mut().zip(&r1) {
                *x = &*x * int(scale) + y * int(add);
            }
        } else if let Some(r) = moved.first_mut() {
            r.iter_mut().for_each(|x| *x *= int(scale));
        }
        let a = rref(&QMatrix::from_rows(4, &original).unwrap());
        let b = rref(&QMatrix::from_rows(4, &moved).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersection_ranks_add_up(a in small_matrix(4), b in small_matrix(4)) {
        let sa = Subspace::span(4, &int_rows(&a)).unwrap();
        let sb = Subspace::span(4, &int_rows(&b)).unwrap();
        let sum = span_sum(&sa, &sb).unwrap();
        let meet = span_intersect(&sa, &sb).unwrap();
        prop_assert_eq!(sum.rank() + meet.rank(), sa.rank() + sb.rank());
        prop_assert_eq!(span_intersect(&sb, &sa).unwrap(), meet.clone());
        prop_assert_eq!(span_intersect(&sa, &sa).unwrap(), sa.clone());
        for v in meet.basis() {
            prop_assert!(span_contains(&sa, v).unwrap() && span_contains(&sb, v).unwrap());
        }
    }

    #[test]
    fn containment_iff_sum_unchanged(a in small_matrix(3), v in prop::collection::vec(-3i64..=3, 3)) {
        let s = Subspace::span(3, &int_rows(&a)).unwrap();
        let v: Vec<Rational> = v.into_iter().map(int).collect();
        let grown = span_sum(&s, &Subspace::span(3, &[v.clone()]).unwrap()).unwrap();
        prop_assert_eq!(span_contains(&s, &v).unwrap(), grown == s);
    }

    #[test]
    fn arrangement_json_round_trips(arr in seeded()) {
        let back = parse_arrangement(&arr.to_json()).unwrap();
        prop_assert_eq!(back, arr);
    }

    #[test]
    fn lattice_is_closed_under_intersection(arr in seeded()) {
        let lat = compute_lattice(&arr);
        for a in lat.flats() {
            for b in lat.flats() {
                let union: BTreeSet<usize> = a.closed_set().iter().chain(b.closed_set()).copied().collect();
                let union: Vec<usize> = union.into_iter().collect();
                let meet = closure(&arr, &union).unwrap();
                prop_assert!(lat.find(meet.closed_set()).is_some());
                prop_assert_eq!(lat.meet(a, b), lat.meet(b, a));
                prop_assert_eq!(lat.meet(a, a), a);
            }
        }
    }

    #[test]
    fn rank_and_multiplicity_are_ordered(arr in seeded()) {
        let lat = compute_lattice(&arr);
        for w in lat.proper_flats() {
            prop_assert!(w.mult() as usize >= w.closed_set().len());
            prop_assert!(w.closed_set().len() >= w.rank() && w.rank() >= 1);
            prop_assert_eq!(w.normal_space(&arr).rank(), w.rank());
            for u in lat.proper_flats() {
                if w.is_subspace_of(u) && w != u {
                    prop_assert!(w.rank() > u.rank());
                    prop_assert!(w.mult() > u.mult());
                }
            }
        }
    }

    #[test]
    fn hyperplanes_belong_to_gmin_and_both_sets_build(arr in seeded()) {
        let lat = compute_lattice(&arr);
        let gmin = minimal_building_set(&lat);
        for i in 0..arr.len() {
            prop_assert!(gmin.flats().contains(lat.hyperplane(i)));
        }
        prop_assert!(is_building_set(&lat, gmin.flats()));
        prop_assert!(is_building_set(&lat, lat.proper_flats()));
    }

    #[test]
    fn lct_agrees_across_building_sets(arr in seeded()) {
        let lat = compute_lattice(&arr);
        prop_assert_eq!(lct_over(lat.proper_flats()).unwrap(), lct(&lat));
    }

    #[test]
    fn unit_ideal_exactly_below_lct(arr in seeded(), lambda in lambda_strategy()) {
        let lat = compute_lattice(&arr);
        let gmin = minimal_building_set(&lat);
        let pres = presentation(&gmin, &lambda).unwrap();
        prop_assert_eq!(pres.is_unit(), lambda < lct(&lat));
    }

    #[test]
    fn support_is_union_of_term_flats(arr in seeded(), lambda in lambda_strategy()) {
        let lat = compute_lattice(&arr);
        let pres = presentation(&minimal_building_set(&lat), &lambda).unwrap();
        let from_terms: BTreeSet<_> = pres.terms().iter().map(|t| t.flat.clone()).collect();
        let supp: BTreeSet<_> = support(&lat, &lambda).unwrap().into_iter().collect();
        prop_assert_eq!(supp, from_terms);
    }

    #[test]
    fn powers_decrease(arr in seeded(), e1 in 1usize..=3, step in 0usize..=2) {
        let lat = compute_lattice(&arr);
        let w = &lat.proper_flats()[lat.proper_flats().len() / 2];
        let big = graded_power(&arr, w, e1, 4).unwrap();
        let small = graded_power(&arr, w, e1 + step, 4).unwrap();
        prop_assert!(graded_contained(&small, &big, 4).unwrap());
    }
}

#[test]
fn braid_flats_are_set_partitions() {
    for n in 2..=8 {
        let lat = compute_lattice(&braid(n).unwrap());
        let expected: BTreeSet<Vec<usize>> =
            set_partitions(n).iter().map(|p| partition_closed_set(n, p)).collect();
        let got: BTreeSet<Vec<usize>> = lat.flats().iter().map(|f| f.closed_set().to_vec()).collect();
        assert_eq!(got, expected, "n = {n}");
        for p in set_partitions(n) {
            let blocks = p.iter().collect::<BTreeSet<_>>().len();
            let flat = lat.find(&partition_closed_set(n, &p)).unwrap();
            assert_eq!(flat.rank(), n - blocks);
        }
    }
}

#[test]
fn braid_gmin_is_single_block_flats() {
    for n in 3..=7 {
        let lat = compute_lattice(&braid(n).unwrap());
        let expected: BTreeSet<Vec<usize>> = set_partitions(n)
            .iter()
            .filter(|p| {
                let mut sizes = vec![0; n];
                p.iter().for_each(|&b| sizes[b] += 1);
                sizes.iter().filter(|&&s| s >= 2).count() == 1
            })
            .map(|p| partition_closed_set(n, p))
            .collect();
        let got: BTreeSet<Vec<usize>> = minimal_building_set(&lat)
            .flats()
            .iter()
            .map(|f| f.closed_set().to_vec())
            .collect();
        assert_eq!(got, expected, "n = {n}");
    }
}

#[test]
fn gmin_and_full_agree_on_corpus() {
    for arr in corpus() {
        let lat = compute_lattice(&arr);
        let gmin = minimal_building_set(&lat);
        let full = full_building_set(&lat);
        for lambda in jump_candidates(&lat, &int(2)).unwrap() {
            let a = presentation_ideal(&lat, &presentation(&gmin, &lambda).unwrap(), 4).unwrap();
            let b = presentation_ideal(&lat, &presentation(&full, &lambda).unwrap(), 4).unwrap();
            assert!(graded_equal(&a, &b, 4).unwrap(), "lambda = {lambda}");
        }
    }
}

#[test]
fn coordinate_power_hilbert_function() {
    for n in 1..=3 {
        let arr = coordinate_axes(n);
        let lat = compute_lattice(&arr);
        for w in lat.proper_flats() {
            let vars = w.closed_set();
            for e in 1..=3 {
                let ideal = graded_power(&arr, w, e, 6).unwrap();
                let counted: Vec<usize> = (0..=6)
                    .map(|d| {
                        monomials_of_degree(n, d)
                            .iter()
                            .filter(|m| vars.iter().map(|&i| m.exponents()[i] as usize).sum::<usize>() >= e)
                            .count()
                    })
                    .collect();
                assert_eq!(hilbert(&ideal), counted, "n = {n}, vars = {vars:?}, e = {e}");
            }
        }
    }
}
