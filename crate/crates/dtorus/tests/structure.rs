use dtorus::builders::{dual_w, finite_fibration, kac_paljutkin, z3_example};
use dtorus::hopf::{HopfAlgebra, Label, Sector};
use dtorus::structure::{center_dim, sector_split, wedderburn, Algebra};

fn blocks(a: &Algebra<dtorus::scalar::CycloScalar>) -> Vec<(usize, usize)> {
    let r = wedderburn(a, 1e-8, 11).unwrap();
    assert!(r.passed());
    r.multiset()
}

#[test]
fn kac_paljutkin_blocks() {
    for n in 2..=5 {
        let a = Algebra::from(&kac_paljutkin(n).unwrap());
        assert_eq!(blocks(&a), vec![(n as usize, 1), (1, (n * n) as usize)]);
    }
}

#[test]
fn dual_w_blocks() {
    for n in 2..=5usize {
        let a = Algebra::from(&dual_w(n as i64).unwrap());
        assert_eq!(blocks(&a), vec![(2, n * (n - 1) / 2), (1, 2 * n)]);
    }
}

#[test]
fn z3_fibrations() {
    for (a, b) in [(1, 0), (0, 1), (1, 1)] {
        let (theta, lattice) = z3_example(2, a, b).unwrap();
        let h = finite_fibration(&theta, &lattice).unwrap();
        assert_eq!(h.dim(), 24);
        assert_eq!(blocks(&Algebra::from(&h)), vec![(2, 4), (1, 8)]);
    }
    for a in 0..3 {
        for b in 0..3 {
            if a == 0 && b == 0 {
                continue;
            }
            let (theta, lattice) = z3_example(3, a, b).unwrap();
            let h = finite_fibration(&theta, &lattice).unwrap();
            assert_eq!(h.dim(), 81);
            let alg = Algebra::from(&h);
            assert_eq!(blocks(&alg), vec![(3, 6), (1, 27)], "(a, b) = ({a}, {b})");
            let p = |g| {
                h.basis(&Label::new("U", Sector::Group(g), vec![0, 0, 0]))
                    .unwrap()
            };
            let parts = sector_split(&alg, &[p(0), p(1), p(2)]).unwrap();
            assert!(parts.iter().all(|s| s.algebra.dim() == 27));
            assert_eq!(center_dim(&parts[1].algebra), 3);
        }
    }
}
