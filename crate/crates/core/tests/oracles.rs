use lieform_core::comm::{cyclic1, harrison2, squares_subalgebra};
use lieform_core::constructions::{divided_powers, ground_field, sl2};
use lieform_core::deform::fifteen_dim;
use lieform_core::invariants::{absolute_zero_divisors, invariant_symmetric_forms, two_envelope};
use lieform_core::oracle;
use lieform_core::AlgebraTable;

fn commutative_cases() -> Vec<(String, AlgebraTable)> {
    let mut v = vec![("K".to_string(), ground_field())];
    for n in 1..=3 {
        v.push((format!("O1({n})"), divided_powers(n).unwrap()));
    }
    v
}

#[test]
fn alternating_cyclic_dims_agree() {
    for (name, a) in commutative_cases() {
        let fast = cyclic1(&a, true).unwrap().dim;
        let slow = oracle::alternating_cyclic_dim(&a);
        println!("alternating cyclic {name}: {slow}");
        assert_eq!(fast, slow, "{name}");
    }
}

#[test]
fn harrison_dims_agree() {
    for (name, a) in commutative_cases().into_iter().take(3) {
        let fast = harrison2(&a).unwrap().dim;
        let slow = oracle::harrison2_dim(&a);
        println!("harrison2 {name}: {slow}");
        assert_eq!(fast, slow, "{name}");
    }
}

#[test]
fn squares_agree() {
    for (name, a) in commutative_cases() {
        assert_eq!(squares_subalgebra(&a).unwrap().dim(), oracle::squares_dim_by_enumeration(&a), "{name}");
    }
}

#[test]
fn sl2_scans_agree() {
    let s = sl2();
    let forms = oracle::invariant_forms_dim(&s);
    println!("invariant forms of s: {forms}");
    assert_eq!(invariant_symmetric_forms(&s).unwrap().len(), forms);
    let (count, sub) = oracle::zero_divisor_scan(&s);
    println!("zero divisors of s: {count} elements, subalgebra {sub}");
    let z = absolute_zero_divisors(&s).unwrap();
    assert_eq!((z.count, z.subalgebra.dim()), (count, sub));
    assert_eq!(two_envelope(&s).unwrap().dim(), oracle::envelope_dim_by_enumeration(&s));
}

#[test]
fn fifteen_dim_scans_agree() {
    let l = fifteen_dim(true, true);
    assert_eq!(invariant_symmetric_forms(&l).unwrap().len(), oracle::invariant_forms_dim(&l));
    let (count, sub) = oracle::zero_divisor_scan(&l);
    let z = absolute_zero_divisors(&l).unwrap();
    assert_eq!((z.count, z.subalgebra.dim()), (count, sub));
}

#[test]
fn derivation_dims_agree() {
    for (name, a) in commutative_cases() {
        let fast = lieform_core::comm::derivations_comm(&a).unwrap().len();
        assert_eq!(fast, oracle::derivations_dim(&a), "{name}");
    }
}

#[test]
fn xi_dims_agree() {
    use lieform_core::comm::xi_space;
    use lieform_core::constructions::special_derivation;
    use lieform_core::Subspace;
    let a = divided_powers(2).unwrap();
    let d = special_derivation(2).unwrap();
    let d_masks: Vec<u64> = (0..4).map(|m| d.image_of_basis(m).to_u64()).collect();
    for idx in [vec![], vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3]] {
        let u = Subspace::coordinate(4, &idx).unwrap();
        let u_masks: Vec<u64> = idx.iter().map(|&i| 1 << i).collect();
        let slow = oracle::xi_dim_by_enumeration(&a, &d_masks, &u_masks, 0);
        println!("xi dim for U = {idx:?}: {slow}");
        assert_eq!(xi_space(&a, &d, &u).unwrap().dim(), slow, "{idx:?}");
    }
}

#[test]
fn commuting_lambda_dims() {
    use lieform_core::constructions::special_derivation;
    let a = divided_powers(2).unwrap();
    let d = special_derivation(2).unwrap();
    let d_masks: Vec<u64> = (0..4).map(|m| d.image_of_basis(m).to_u64()).collect();
    let dims: Vec<usize> = [vec![], vec![1u64, 2], vec![1, 2, 4]]
        .iter()
        .map(|u| oracle::commuting_lambda_dim(&a, &d_masks, u))
        .collect();
    assert_eq!(dims, vec![0, 1, 2]);
}
