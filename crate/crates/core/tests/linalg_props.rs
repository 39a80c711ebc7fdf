//! Property tests for the canonical-form engine: these pin the algebraic
//! contracts (kernel annihilates, rank-nullity, uniqueness under row
//! operations, certificate validity, cardinality bookkeeping over Z/p^e)
//! independently of any particular worked example.

use gammacoh_core::linalg::{
    canonical_form, image, intersect, inverse, kernel, shape_of_submodule, solve, sum_submodules,
};
use gammacoh_core::matrix::ExactMatrix;
use gammacoh_core::ring::{RingSpec, Scalar};
use proptest::prelude::*;

fn q_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(proptest::collection::vec(-6i64..=6, cols), rows)
        .prop_map(move |data| {
            let ring = RingSpec::Q;
            let rows: Vec<Vec<Scalar>> = data
                .iter()
                .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
                .collect();
            ExactMatrix::from_rows(ring, rows)
        })
}

fn zpe_matrix(ring: RingSpec, rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    let m = ring.modulus().unwrap() as i64;
    proptest::collection::vec(proptest::collection::vec(0..m, cols), rows).prop_map(move |data| {
        let rows: Vec<Vec<Scalar>> = data
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        ExactMatrix::from_rows(ring, rows)
    })
}

fn size_exponent(s: &gammacoh_core::linalg::Submodule) -> u64 {
    shape_of_submodule(s).size_exponent().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_annihilates_q(a in q_matrix(4, 3)) {
        let k = kernel(&a);
        prop_assert!(k.basis().mul(&a).is_zero());
    }

    #[test]
    fn rank_nullity_q(a in q_matrix(4, 5)) {
        let k = kernel(&a);
        let im = image(&a);
        prop_assert_eq!(k.gens() + im.gens(), a.rows());
    }

    #[test]
    fn kernel_annihilates_mod(a in zpe_matrix(RingSpec::parse("Z/5^2").unwrap(), 3, 3)) {
        let k = kernel(&a);
        prop_assert!(k.basis().mul(&a).is_zero());
    }

    #[test]
    fn cardinality_bookkeeping_mod(a in zpe_matrix(RingSpec::parse("Z/5^2").unwrap(), 3, 4)) {
        // |rowspan| * |kernel| = (p^e)^rows, in exponent form.
        let im = image(&a);
        let k = kernel(&a);
        prop_assert_eq!(size_exponent(&im) + size_exponent(&k), 2 * a.rows() as u64);
    }

    #[test]
    fn canonical_is_idempotent(a in zpe_matrix(RingSpec::parse("Z/7^2").unwrap(), 3, 4)) {
        let s = image(&a);
        let again = image(s.basis());
        prop_assert_eq!(&again, &s);
    }

    #[test]
    fn canonical_invariant_under_row_ops(
        a in zpe_matrix(RingSpec::parse("Z/5^2").unwrap(), 3, 3),
        scale in 1i64..25,
        from in 0usize..3,
        to in 0usize..3,
    ) {
        // Elementary operations preserve the row span, hence the form;
        // adding a multiple of a row, and appending a redundant row.
        let ring = a.ring();
        let mut rows: Vec<Vec<Scalar>> = (0..a.rows()).map(|i| a.dense_row(i)).collect();
        if from != to {
            let src = rows[from].clone();
            let s = ring.from_i64(scale);
            for (t, x) in rows[to].iter_mut().zip(src) {
                *t = ring.add(t, &ring.mul(&s, &x));
            }
        }
        let sum: Vec<Scalar> = (0..a.cols())
            .map(|j| ring.add(&rows[0][j], &rows[from][j]))
            .collect();
        rows.push(sum);
        let b = ExactMatrix::from_rows(ring, rows);
        prop_assert_eq!(image(&a), image(&b));
    }

    #[test]
    fn certificate_holds_mod(a in zpe_matrix(RingSpec::parse("Z/5^3").unwrap(), 3, 3)) {
        let (h, t) = canonical_form(&a);
        let pad = h.rows() - a.rows();
        let a_pad = a.vstack(&ExactMatrix::zeros(a.ring(), pad, a.cols()));
        prop_assert_eq!(t.mul(&a_pad), h);
        prop_assert!(inverse(&t).is_ok());
    }

    #[test]
    fn certificate_holds_q(a in q_matrix(4, 3)) {
        let (h, t) = canonical_form(&a);
        prop_assert_eq!(h.rows(), a.rows());
        prop_assert_eq!(t.mul(&a), h);
        prop_assert!(inverse(&t).is_ok());
    }

    #[test]
    fn solve_finds_constructed_solutions(
        a in zpe_matrix(RingSpec::parse("Z/5^2").unwrap(), 3, 4),
        x in proptest::collection::vec(0i64..25, 3),
    ) {
        let ring = a.ring();
        let xs: Vec<Scalar> = x.iter().map(|&v| ring.from_i64(v)).collect();
        let b = a.row_vec_mul(&xs);
        let sol = solve(&a, &b).expect("constructed rhs must be solvable");
        prop_assert_eq!(a.row_vec_mul(&sol), b);
    }

    #[test]
    fn sum_intersect_size_balance(
        a in zpe_matrix(RingSpec::parse("Z/5^2").unwrap(), 2, 3),
        b in zpe_matrix(RingSpec::parse("Z/5^2").unwrap(), 2, 3),
    ) {
        let u = image(&a);
        let v = image(&b);
        let i = intersect(&u, &v);
        let s = sum_submodules(&u, &v);
        for row in i.basis_rows() {
            prop_assert!(u.contains(&row) && v.contains(&row));
        }
        prop_assert_eq!(
            size_exponent(&u) + size_exponent(&v),
            size_exponent(&i) + size_exponent(&s)
        );
    }

    #[test]
    fn storage_never_changes_canonical_form(a in zpe_matrix(RingSpec::parse("Z/5^2").unwrap(), 3, 4)) {
        let (hd, td) = canonical_form(&a.clone().force_dense());
        let (hs, ts) = canonical_form(&a.clone().force_sparse());
        prop_assert_eq!(hd, hs);
        prop_assert_eq!(td, ts);
    }
}
