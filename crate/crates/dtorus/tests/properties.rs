use dtorus::builders::{dual_w, finite_fibration, kac_paljutkin, z3_example};
use dtorus::duality::{build_pairing, w_t_rule};
use dtorus::hopf::{
    antipode, comul, counit, mul, mul2, star, Element, HopfAlgebra, HopfPresentation,
};
use dtorus::scalar::CycloScalar;
use dtorus::structure::{wedderburn, Algebra};
use proptest::prelude::*;

fn element(
    h: &HopfPresentation<CycloScalar>,
    coeffs: &[(usize, i64, i64)],
) -> Element<CycloScalar> {
    let d = h.dim();
    Element::from_terms(coeffs.iter().map(|&(i, c, k)| {
        (
            i % d,
            CycloScalar::from_integer(c) * CycloScalar::root_of_unity(4, k),
        )
    }))
}

fn coeffs() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..64, -3i64..=3, 0i64..4), 1..5)
}

fn algebras() -> Vec<HopfPresentation<CycloScalar>> {
    vec![
        kac_paljutkin(2).unwrap(),
        kac_paljutkin(3).unwrap(),
        dual_w(2).unwrap(),
        dual_w(3).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_multiplicative(which in 0usize..4, a in coeffs(), b in coeffs()) {
        let h = &algebras()[which];
        let (a, b) = (element(h, &a), element(h, &b));
        let ab = mul(h, &a, &b).unwrap();
        prop_assert_eq!(comul(h, &ab).unwrap(), mul2(h, &comul(h, &a).unwrap(), &comul(h, &b).unwrap()).unwrap());
        prop_assert_eq!(counit(h, &ab), counit(h, &a) * counit(h, &b));
    }

    #[test]
    fn antipode_and_star_reverse_products(which in 0usize..4, a in coeffs(), b in coeffs()) {
        let h = &algebras()[which];
        let (a, b) = (element(h, &a), element(h, &b));
        let ab = mul(h, &a, &b).unwrap();
        let s = |x: &Element<CycloScalar>| antipode(h, x).unwrap();
        let st = |x: &Element<CycloScalar>| star(h, x).unwrap();
        prop_assert_eq!(s(&ab), mul(h, &s(&b), &s(&a)).unwrap());
        prop_assert_eq!(st(&ab), mul(h, &st(&b), &st(&a)).unwrap());
        prop_assert_eq!(st(&st(&a)), a);
    }

    #[test]
    fn pairing_is_multiplicative_on_random_elements(n in 2i64..=3, a in coeffs(), x in coeffs(), y in coeffs()) {
        let (w, t) = (dual_w(n).unwrap(), kac_paljutkin(n).unwrap());
        let p = build_pairing(&w, &t, w_t_rule(n)).unwrap();
        let (a, x, y) = (element(&w, &a), element(&t, &x), element(&t, &y));
        let d = comul(&w, &a).unwrap();
        let mut rhs = CycloScalar::from_integer(0);
        for ((i, j), c) in d.iter() {
            rhs = rhs + c.clone() * p.value(&Element::basis(*i), &x) * p.value(&Element::basis(*j), &y);
        }
        prop_assert_eq!(p.value(&a, &mul(&t, &x, &y).unwrap()), rhs);
    }
}

#[test]
fn wedderburn_is_seed_independent() {
    let (theta, lattice) = z3_example(2, 1, 1).unwrap();
    let a = Algebra::from(&finite_fibration(&theta, &lattice).unwrap());
    let reports: Vec<_> = [5, 17, 29]
        .iter()
        .map(|&s| wedderburn(&a, 1e-8, s).unwrap())
        .collect();
    assert!(reports
        .iter()
        .all(|r| r.passed() && r.multiset() == reports[0].multiset()));
}
