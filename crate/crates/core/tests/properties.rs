use proptest::prelude::*;

use lieform_core::cohomology::{
    cochain_space, coboundary, coboundary_matrix, cohomology, weight_decomposition, Cochain, Coefficients,
};
use lieform_core::constructions::{current_algebra, divided_powers, sl2, w1_2, zassenhaus};
use lieform_core::deform::{fifteen_dim, ExtensionContext};
use lieform_core::schema::{table_from_str, table_to_json};
use lieform_core::{oracle, AlgebraTable, BitMatrix, BitVector, Subspace, TableBuilder};

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    prop::collection::vec(any::<bool>(), len).prop_map(|b| BitVector::from_bools(&b))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(bits(c), r).prop_map(move |rows| BitMatrix::from_rows(c, rows).unwrap())
    })
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(bits(ambient), 0..ambient + 2)
        .prop_map(move |v| Subspace::from_spanning(ambient, v).unwrap())
}

fn graded_lie_algebras() -> Vec<AlgebraTable> {
    let s = sl2();
    let ctx = ExtensionContext::divided_powers(2, &Subspace::coordinate(4, &[0, 1]).unwrap()).unwrap();
    vec![
        s.clone(),
        w1_2(),
        zassenhaus(2).unwrap(),
        current_algebra(&s, &divided_powers(1).unwrap()).unwrap(),
        current_algebra(&s, &divided_powers(2).unwrap()).unwrap(),
        ctx.table().clone(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_plus_nullity_is_width(m in matrix(40, 40)) {
        let rank = m.rank();
        prop_assert_eq!(rank + m.nullspace().dim(), m.cols());
        prop_assert_eq!(rank, m.transpose().rank());
        for v in m.nullspace().basis() {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }
}

proptest! {
    #[test]
    fn solve_finds_solutions_exactly_when_they_exist(m in matrix(24, 24), seed in any::<u64>()) {
        let x0 = BitVector::from_u64(m.cols(), seed & ((1u64 << m.cols().min(63)) - 1));
        let b = m.mul_vec(&x0).unwrap();
        let x = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        let consistent = |c: &BitVector| m.column_space().contains(c).unwrap();
        let other = BitVector::from_u64(m.rows(), seed.rotate_left(17) & ((1u64 << m.rows().min(63)) - 1));
        prop_assert_eq!(m.solve(&other).unwrap().is_some(), consistent(&other));
    }

    #[test]
    fn modular_law(a in subspace(10), b in subspace(10), c0 in subspace(10)) {
        // make A ⊆ C
        let c = c0.sum(&a).unwrap();
        let left = a.sum(&b).unwrap().intersect(&c).unwrap();
        let right = a.sum(&b.intersect(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dimension_formula(a in subspace(12), b in subspace(12)) {
        let sum = a.sum(&b).unwrap().dim();
        let meet = a.intersect(&b).unwrap().dim();
        prop_assert_eq!(sum + meet, a.dim() + b.dim());
    }

    #[test]
    fn echelon_form_is_canonical(vs in prop::collection::vec(bits(16), 0..12), mix in any::<u64>()) {
        let s = Subspace::from_spanning(16, vs.clone()).unwrap();
        // the same span from a reordered and recombined generating set
        let mut other = vs.clone();
        other.reverse();
        for k in 1..other.len() {
            if mix >> (k % 64) & 1 == 1 {
                let prev = other[k - 1].clone();
                other[k].xor_assign(&prev);
            }
        }
        prop_assert_eq!(s, Subspace::from_spanning(16, other).unwrap());
    }

    #[test]
    fn coboundary_squares_to_zero(which in 0usize..6, adjoint in any::<bool>(), degree in 0usize..3, seed in any::<u64>()) {
        let l = &graded_lie_algebras()[which];
        let m = if adjoint { Coefficients::Adjoint } else { Coefficients::Trivial };
        let space = cochain_space(l, m, degree).unwrap();
        let mut state = seed | 1;
        let data: Vec<bool> = (0..space.dim())
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state & 1 == 1
            })
            .collect();
        let phi = Cochain::from_data(space, BitVector::from_bools(&data)).unwrap();
        let dd = coboundary(l, &coboundary(l, &phi).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn validate_matches_brute_force_under_mutation(which in 0usize..4, i in 0usize..15, j in 0usize..15, k in 0usize..15, one_sided in any::<bool>()) {
        let tables = [sl2(), w1_2(), zassenhaus(2).unwrap(), fifteen_dim(true, false)];
        let l = &tables[which];
        let n = l.dim();
        let (i, j, k) = (i % n, j % n, k % n);
        let mut b = TableBuilder::from_table(l);
        let mut v = l.product(i, j).clone();
        v.flip(k);
        if one_sided {
            b.set_ordered(i, j, v);
        } else {
            b.set(i, j, v);
        }
        let t = b.build();
        prop_assert_eq!(t.validate().is_valid(), oracle::lie_axioms_hold(&t));
    }

    #[test]
    fn json_round_trip(which in 0usize..6, i in 0usize..15, j in 0usize..15, k in 0usize..15) {
        let l = &graded_lie_algebras()[which];
        let n = l.dim();
        let mut b = TableBuilder::from_table(l).no_weights();
        let mut v = l.product(i % n, j % n).clone();
        v.flip(k % n);
        b.set(i % n, j % n, v);
        for t in [l.clone(), b.build()] {
            let text = table_to_json(&t).to_string();
            let back = table_from_str(&text).unwrap();
            prop_assert!(back == t);
        }
    }
}

#[test]
fn coboundary_matrices_compose_to_zero() {
    for l in graded_lie_algebras() {
        for m in [Coefficients::Trivial, Coefficients::Adjoint] {
            for n in 1..3 {
                let dd = coboundary_matrix(&l, m, n).unwrap().mul(&coboundary_matrix(&l, m, n - 1).unwrap()).unwrap();
                assert!(dd.is_zero(), "{} {m:?} degree {n}", l.dim());
            }
        }
    }
}

#[test]
fn weight_components_sum_to_total() {
    for l in graded_lie_algebras() {
        for m in [Coefficients::Trivial, Coefficients::Adjoint] {
            for n in 0..3 {
                let total = cohomology(&l, m, n).unwrap().report.dim_h;
                let parts: usize = weight_decomposition(&l, m, n).unwrap().values().sum();
                assert_eq!(parts, total, "{} {m:?} degree {n}", l.dim());
            }
        }
    }
}
