use khbound_core::cube::build_cube;
use khbound_core::factory::{braid_closure, cable_diagram, torus_diagram, CableSpec};
use khbound_core::invariants::{jones_via_kauffman, plus_adequate};
use khbound_core::linalg::{Rational, SparseMatrix};
use khbound_core::{kh_table, parse_pd, Backend, ComputeConfig, Diagram, KhTable};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn table(d: &Diagram, backend: Backend) -> KhTable {
    kh_table(d, backend, &ComputeConfig::default()).unwrap()
}

/// Closed braids on 2..=4 strands with up to `max_len` letters.
fn braid(max_len: usize) -> impl Strategy<Value = Diagram> {
    (2usize..=4).prop_flat_map(move |n| {
        let letter = (1..n as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        proptest::collection::vec(letter, 1..=max_len).prop_map(move |w| braid_closure(n, &w).unwrap())
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// Rank by fraction-free (Bareiss) elimination on a dense integer matrix.
fn dense_rank(rows: usize, cols: usize, entries: &[i64]) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| (0..cols).map(|c| BigInt::from(entries[r * cols + c])).collect()).collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn sparse(rows: usize, cols: usize, entries: &[i64]) -> SparseMatrix {
    SparseMatrix::from_triplets(
        rows,
        cols,
        entries.iter().enumerate().map(|(k, &v)| (k / cols, k % cols, Rational::from_integer(v))),
    )
    .unwrap()
}

/// Integer matrices up to 50x50, mostly zeros.
fn matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=50, 1usize..=50).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![6 => Just(0i64), 1 => -3i64..=3];
        (Just(r), Just(c), proptest::collection::vec(entry, r * c))
    })
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn sparse_rank_matches_dense_oracle((r, c, e) in matrix()) {
        prop_assert_eq!(sparse(r, c, &e).rank(), dense_rank(r, c, &e));
    }

    #[test]
    fn rank_ignores_permutation_and_transpose((r, c, e) in matrix(), seed in any::<u64>()) {
        let m = sparse(r, c, &e);
        let mut rp: Vec<usize> = (0..r).collect();
        let mut cp: Vec<usize> = (0..c).collect();
        rp.rotate_left(seed as usize % r);
        cp.reverse();
        cp.rotate_left((seed >> 32) as usize % c);
        prop_assert_eq!(m.permute(&rp, &cp).rank(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn eliminating_a_pivot_drops_rank_by_one((r, c, e) in matrix()) {
        let m = sparse(r, c, &e);
        if let Some(k) = e.iter().position(|&v| v != 0) {
            let out = m.eliminate_pivot(k / c, k % c).unwrap();
            prop_assert_eq!(m.rank(), out.rank() + 1);
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn writhe_and_linking_identities(d in braid(12)) {
        let s = d.stats();
        prop_assert_eq!(d.writhe(), s.c_plus as i64 - s.c_minus as i64);
        let n = d.n_components();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    prop_assert_eq!(d.linking_number(a, b).unwrap(), d.linking_number(b, a).unwrap());
                }
            }
        }
        for k in 0..n {
            let r = d.reverse_component(k).unwrap();
            let again = r.reverse_component(k).unwrap();
            prop_assert_eq!(again.stats(), s);
            prop_assert_eq!(again.relabelled(), d.relabelled());
            if n == 2 {
                let lk = d.linking_number(0, 1).unwrap();
                prop_assert_eq!(r.writhe(), d.writhe() - 4 * lk);
            }
        }
    }

    #[test]
    fn cube_is_a_graded_complex(d in braid(9)) {
        let cube = build_cube(&d, 14).unwrap();
        prop_assert!(cube.check_d_squared().is_ok());
        prop_assert!(cube.preserves_quantum_grading());
        prop_assert_eq!(cube.euler_characteristic(), jones_via_kauffman(&d).unwrap());
        prop_assert_eq!(
            build_cube(&d.mirror(), 14).unwrap().euler_characteristic(),
            cube.euler_characteristic().invert_variable()
        );
    }

    #[test]
    fn backends_agree(d in braid(10)) {
        let (scan, naive) = (table(&d, Backend::Scan), table(&d, Backend::Naive));
        prop_assert_eq!(scan.betti(), naive.betti());
    }

    #[test]
    fn table_invariants(d in braid(10)) {
        let t = table(&d, Backend::Scan);
        let s = d.stats();
        let (i_min, i_max) = t.extreme_degrees().unwrap();
        prop_assert!(t.rank_in_degree(0) > 0);
        prop_assert!(i_max <= s.c_plus as i64);
        prop_assert!(-i_min <= s.c_minus as i64);
        prop_assert_eq!(t.euler_characteristic(), jones_via_kauffman(&d).unwrap());
        if plus_adequate(&d) {
            prop_assert_eq!(i_max, s.c_plus as i64);
        }
    }

    #[test]
    fn mirror_duality(d in braid(10)) {
        let t = table(&d, Backend::Scan);
        let m = table(&d.mirror(), Backend::Scan);
        prop_assert_eq!(m.betti(), &t.mapped_betti(|i, j| (-i, -j)));
    }

    #[test]
    fn reversal_shifts_degrees(d in braid(10)) {
        let n = d.n_components();
        let t = table(&d, Backend::Scan);
        for k in 0..n {
            let lk: i64 = (0..n).filter(|&o| o != k).map(|o| d.linking_number(k, o).unwrap()).sum();
            let r = table(&d.reverse_component(k).unwrap(), Backend::Scan);
            prop_assert_eq!(r.betti(), &t.mapped_betti(|i, j| (i - 2 * lk, j - 6 * lk)));
        }
    }

    #[test]
    fn cable_counts_match_formulas(d in braid(6).prop_filter("knot", |d| d.n_components() == 1), p in 2usize..=3, t in -3i64..=3) {
        let c = cable_diagram(&d, CableSpec::new(p, t).unwrap()).unwrap();
        let (p_, w) = (p as i64, d.writhe());
        let n = d.n_crossings() as i64;
        prop_assert_eq!(c.n_crossings() as i64, p_ * p_ * n + p_ * (p_ - 1) * (t - w).abs());
        prop_assert_eq!(c.writhe(), p_ * p_ * w + p_ * (p_ - 1) * (t - w));
        prop_assert_eq!(c.n_components(), p);
        if p == 2 {
            prop_assert_eq!(c.linking_number(0, 1).unwrap(), t);
        }
    }
}

#[test]
fn cable_of_a_kinked_unknot_is_the_torus_link() {
    let kink = parse_pd("X[1,1,2,2]").unwrap();
    let unknot = table(&Diagram::unknot(), Backend::Naive);
    for d in [kink.clone(), kink.mirror()] {
        assert_eq!(table(&d, Backend::Naive).betti(), unknot.betti());
        for t in [-2, -1, 0, 1, 2] {
            let cable = cable_diagram(&d, CableSpec::new(2, t).unwrap()).unwrap();
            let torus = torus_diagram(2, 2 * t).unwrap();
            let (a, b) = (table(&cable, Backend::Scan), table(&torus, Backend::Scan));
            assert_eq!(a.betti(), b.betti(), "{d} t={t}");
        }
    }
}

#[test]
fn torus_words_differ_only_in_length() {
    for q in [1i64, 2, 3, 5] {
        let a = torus_diagram(3, q).unwrap();
        let b = torus_diagram(3, q + 1).unwrap();
        assert_eq!(b.n_crossings() - a.n_crossings(), 2);
        assert_eq!(b.writhe() - a.writhe(), 2);
        let (na, nb) = (torus_diagram(3, -q).unwrap(), torus_diagram(3, -q - 1).unwrap());
        assert_eq!(nb.n_crossings() - na.n_crossings(), 2);
        assert_eq!(nb.writhe() - na.writhe(), -2);
    }
}
