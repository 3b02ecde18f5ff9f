use dtorus::builders::z3_sequence;
use dtorus::cohomology::{lift_commutator_form, z3_family};
use dtorus::scalar::rat;
use dtorus::symmetry::Lattice;

#[test]
fn z3_sequence_exact_at_bound_four() {
    let lattice = Lattice::scaled(3, 2);
    let theta = lift_commutator_form(&z3_family(&rat(1, 2), &rat(1, 2)), &lattice).unwrap();
    let seq = z3_sequence(&theta, &lattice, 4).unwrap();
    let r = seq.verify();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.kernel_dim, r.domain_dim - 24);
}
