//! Test-only oracles, kept independent of the library's fast paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use arrmi::arrangement::{braid_index, Arrangement};
use arrmi::building::is_decomposition;
use arrmi::exactla::{int, Rational};
use arrmi::lattice::{closure, Flat, IntersectionLattice};
use arrmi::oracle::{monomials_of_degree, GradedIdeal, Polynomial};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, prefix: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            rec(n, prefix, max.max(b), out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    rec(n, &mut prefix, 0, &mut out);
    out
}

/// Closed set of the braid flat for a partition: every pair inside a block.
pub fn partition_closed_set(n: usize, blocks: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if blocks[i] == blocks[j] {
                out.push(braid_index(n, i, j));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Bell numbers from the Bell triangle.
pub fn bell(n: usize) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// Seeded random central arrangement with `dim <= 4`, at most 6 distinct
/// hyperplanes, entries in `-2..=2`, multiplicities in `1..=3`.
pub fn random_arrangement(seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(2..=4);
    let count = rng.gen_range(2..=6);
    let mut normals: Vec<(Vec<Rational>, i64)> = Vec::new();
    let mut attempts = 0;
    while normals.len() < count && attempts < 1000 {
        attempts += 1;
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let candidate: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        let proportional = normals.iter().any(|(w, _)| {
            let canon = arrmi::exactla::canonicalize;
            canon(w) == canon(&candidate)
        });
        if proportional {
            continue;
        }
        normals.push((candidate, rng.gen_range(1..=3)));
    }
    Arrangement::new(dim, normals).expect("generated arrangement is valid")
}

pub fn corpus() -> Vec<Arrangement> {
    (0..20).map(|s| random_arrangement(1000 + s)).collect()
}

/// Every non-trivial part-set `{U_1, ..., U_k}` of flats containing `c`
/// whose intersection is `c` with codimensions adding up, that passes the
/// definitional decomposition test.
pub fn nontrivial_decompositions(lat: &IntersectionLattice, c: &Flat) -> Vec<Vec<Flat>> {
    let arr = lat.arrangement();
    let above: Vec<&Flat> = lat
        .proper_flats()
        .iter()
        .filter(|u| c.is_subspace_of(u) && *u != c)
        .collect();
    let mut found = Vec::new();
    fn rec<'a>(
        lat: &IntersectionLattice,
        arr: &Arrangement,
        c: &Flat,
        above: &[&'a Flat],
        start: usize,
        budget: usize,
        chosen: &mut Vec<&'a Flat>,
        found: &mut Vec<Vec<Flat>>,
    ) {
        if budget == 0 {
            if chosen.len() < 2 {
                return;
            }
            let union: BTreeSet<usize> = chosen.iter().flat_map(|u| u.closed_set().iter().copied()).collect();
            let union: Vec<usize> = union.into_iter().collect();
            if closure(arr, &union).unwrap().closed_set() != c.closed_set() {
                return;
            }
            let parts: Vec<Flat> = chosen.iter().map(|u| (*u).clone()).collect();
            if is_decomposition(lat, c, &parts).unwrap() {
                found.push(parts);
            }
            return;
        }
        for k in start..above.len() {
            if above[k].rank() <= budget {
                chosen.push(above[k]);
                rec(lat, arr, c, above, k + 1, budget - above[k].rank(), chosen, found);
                chosen.pop();
            }
        }
    }
    rec(lat, arr, c, &above, 0, c.rank(), &mut Vec::new(), &mut found);
    found
}

/// Irreducible by definition: only the trivial decomposition passes.
pub fn brute_force_irreducible(lat: &IntersectionLattice, c: &Flat) -> bool {
    is_decomposition(lat, c, std::slice::from_ref(c)).unwrap() && nontrivial_decompositions(lat, c).is_empty()
}

/// Pieces of the principal ideal `(f)` of a homogeneous `f`, built directly
/// from the products `f * m` over monomials `m`.
pub fn principal_ideal(f: &Polynomial, degree_bound: usize) -> Vec<arrmi::exactla::Subspace> {
    let n = f.num_vars();
    let k = f.degree().unwrap_or(0);
    (0..=degree_bound)
        .map(|d| {
            let monos = monomials_of_degree(n, d);
            if d < k {
                return arrmi::exactla::Subspace::zero(monos.len());
            }
            let rows: Vec<Vec<Rational>> = monomials_of_degree(n, d - k)
                .into_iter()
                .map(|m| {
                    let mut mono = Polynomial::zero(n);
                    mono.add_term(m, int(1));
                    let p = f.mul(&mono);
                    monos.iter().map(|mm| p.coefficient(mm)).collect()
                })
                .collect();
            arrmi::exactla::Subspace::span(monos.len(), &rows).unwrap()
        })
        .collect()
}

pub fn pieces_equal(ideal: &GradedIdeal, pieces: &[arrmi::exactla::Subspace]) -> bool {
    ideal.pieces().len() == pieces.len() && ideal.pieces().iter().zip(pieces).all(|(a, b)| a == b)
}

pub fn power(p: &Polynomial, k: usize) -> Polynomial {
    let mut out = Polynomial::constant(p.num_vars(), int(1));
    for _ in 0..k {
        out = out.mul(p);
    }
    out
}

pub fn coordinate_axes(n: usize) -> Arrangement {
    let normals: Vec<(Vec<Rational>, i64)> = (0..n)
        .map(|i| ((0..n).map(|j| int(i64::from(i == j))).collect(), 1))
        .collect();
    Arrangement::new(n, normals).unwrap()
}

/// Five planes through the origin of `Q^3`, any three independent.
pub fn generic_five_planes() -> Arrangement {
    Arrangement::from_integer_normals(
        3,
        &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1), (&[1, 2, 3], 1)],
    )
    .unwrap()
}
