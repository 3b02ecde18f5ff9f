use dtorus::builders::{dual_w_at, finite_fibration, kac_paljutkin_at, w_subalgebra};
use dtorus::cohomology::flip_family;
use dtorus::hopf::mutation::mutation_test;
use dtorus::hopf::{
    verify_morphism, Element, HopfAlgebra, HopfMap, HopfPresentation, Label, Sector, VerifyMode,
};
use dtorus::scalar::{rat, CycloScalar};
use dtorus::symmetry::Lattice;

fn flip_data(n: i64) -> (dtorus::cohomology::CocycleFamily, Lattice) {
    (flip_family(&rat(1, n)), Lattice::scaled(2, n))
}

fn relabel(
    source: &HopfPresentation<CycloScalar>,
    image: impl Fn(&Label) -> Element<CycloScalar>,
) -> Vec<Element<CycloScalar>> {
    (0..source.dim()).map(|i| image(source.label(i))).collect()
}

fn sector(l: &Label) -> usize {
    usize::from(l.sector == Sector::Minus)
}

#[test]
fn flip_fibration_is_kac_paljutkin() {
    for n in 2..=4 {
        let (theta, lattice) = flip_data(n);
        let f = finite_fibration(&theta, &lattice).unwrap();
        let t = kac_paljutkin_at(n, -2).unwrap();
        let images = relabel(&t, |l| {
            let (a, b) = (l.index[0], l.index[1]);
            let u = f
                .basis(&Label::new("U", Sector::Group(sector(l)), vec![a, b]))
                .unwrap();
            if sector(l) == 1 {
                u.scale(&CycloScalar::root_of_unity(n as u32, a * b))
            } else {
                u
            }
        });
        let map = HopfMap::new(&t, &f, images);
        let r = verify_morphism(&map, VerifyMode::Full);
        assert!(r.passed(), "N={n}: {:?}", r.failures().next());
    }
}

#[test]
fn flip_w_subalgebra_is_dual_w() {
    for n in 2..=4 {
        let (theta, lattice) = flip_data(n);
        let w = w_subalgebra(&theta, &lattice).unwrap();
        let d = dual_w_at(n, -2).unwrap();
        let images = relabel(&d, |l| {
            w.basis(&Label::new("w", Sector::Group(sector(l)), l.index.clone()))
                .unwrap()
        });
        let map = HopfMap::new(&d, &w, images);
        let r = verify_morphism(&map, VerifyMode::Full);
        assert!(r.passed(), "N={n}: {:?}", r.failures().next());
    }
}

#[test]
fn mutations_of_fibrations_are_detected() {
    for n in [2, 3] {
        let (theta, lattice) = flip_data(n);
        for h in [
            finite_fibration(&theta, &lattice).unwrap(),
            w_subalgebra(&theta, &lattice).unwrap(),
        ] {
            let out = mutation_test(&h, 20, 9);
            assert_eq!(out.len(), 20);
            assert!(
                out.iter().all(|m| m.detected),
                "{:?}",
                out.iter().find(|m| !m.detected)
            );
        }
    }
}
