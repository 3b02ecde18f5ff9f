//! Hopf isomorphisms between eight-dimensional presentations of Kac-Paljutkin type.
//!
//! Both sides are presented by group-likes `x, y` and an element `z` with
//! `zx = yz`, `zy = xz`, `z² = ½(1 + x + y - xy)`, `Δz = J(z ⊗ z)`, `ε(z) = 1`,
//! where `J = ½(1⊗1 + 1⊗x + y⊗1 - y⊗x)`. Candidate generators are located
//! numerically, rounded into `Q(zeta_8)` and every claim is then checked exactly.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hopf::{
    comul, counit, mul2, star, tensor, verify_morphism, AxiomCheck, AxiomReport, Element,
    HopfAlgebra, HopfMap, HopfPresentation, Tensor2, VerifyMode, Witness,
};
use crate::linalg::{nullspace, rank, solve};
use crate::scalar::{rat, CycloScalar};

type C = Complex64;

fn cplx(h: &HopfPresentation<CycloScalar>) -> HopfPresentation<C> {
    h.to_complex()
}

fn sparse(v: &DVector<C>) -> Element<C> {
    Element::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 1e-12)
            .map(|(i, c)| (i, *c)),
    )
}

/// Nearest `a + b√2` with `a, b ∈ ¼Z` and `|a|, |b| ≤ 2`.
fn round_real(x: f64) -> Option<(i64, i64)> {
    let s2 = std::f64::consts::SQRT_2;
    let mut best = None;
    let mut err = 1e-8;
    for b in -8..=8 {
        let a = ((x - b as f64 * s2 / 4.0) * 4.0).round() as i64;
        let e = (x - (a as f64 + b as f64 * s2) / 4.0).abs();
        if a.abs() <= 8 && e < err {
            err = e;
            best = Some((a, b));
        }
    }
    best
}

/// Exact element of `Q(zeta_8)` closest to `c`, if one with small denominators is near.
pub fn recognize(c: C) -> Option<CycloScalar> {
    // c = a0 + a1ζ + a2ζ² + a3ζ³ with ζ = (1 + i)/√2
    let (p, s) = round_real(c.re)?;
    let (p2, s2) = round_real(c.im)?;
    let z = |k| CycloScalar::root_of_unity(8, k);
    let q = |n: i64| CycloScalar::from_rational(rat(n, 4));
    let out = q(p) + q(s + s2) * z(1) + q(p2) * z(2) + q(s2 - s) * z(3);
    Some(out)
}

fn recognize_element(v: &Element<C>, d: usize) -> Option<Element<CycloScalar>> {
    let mut out = Element::zero();
    for (i, c) in v.to_dense(d).into_iter().enumerate() {
        out.add_term(i, recognize(c)?);
    }
    Some(out)
}

fn is_group_like(h: &HopfPresentation<CycloScalar>, g: &Element<CycloScalar>) -> bool {
    counit(h, g).is_one() && h.coproduct(g) == tensor(g, g)
}

/// Every group-like element, found as joint eigenvectors of the maps
/// `a -> (id ⊗ φ)Δa` and confirmed exactly.
pub fn group_likes(h: &HopfPresentation<CycloScalar>, seed: u64) -> Vec<Element<CycloScalar>> {
    let d = h.dim();
    let hc = cplx(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut l = DMatrix::<C>::zeros(d, d);
    for i in 0..d {
        for ((j, k), c) in hc.coproduct(&Element::basis(i)).iter() {
            l[(*j, i)] += c * weights[*k];
        }
    }
    let eig = nalgebra::Schur::new(l.clone()).unpack().1.diagonal();
    let mut out: Vec<Element<CycloScalar>> = Vec::new();
    for lambda in eig.iter() {
        let shifted = &l - DMatrix::<C>::identity(d, d) * *lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let k = (0..d)
            .min_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]))
            .unwrap();
        let v: DVector<C> = v_t.row(k).transpose().map(|c| c.conj());
        let eps = counit(&hc, &sparse(&v));
        if eps.norm() < 1e-9 {
            continue;
        }
        let g = sparse(&(v / eps));
        if let Some(g) = recognize_element(&g, d) {
            if is_group_like(h, &g) && !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.sort_by_key(|g| g.iter().map(|(i, _)| *i).collect::<Vec<_>>());
    out
}

/// `J = ½(1⊗1 + 1⊗x + y⊗1 - y⊗x)`.
fn twist<S: crate::scalar::Scalar>(one: &Element<S>, x: &Element<S>, y: &Element<S>) -> Tensor2<S> {
    let half = S::from_i64(2).recip().expect("2 is invertible");
    let mut j = tensor(one, one);
    j.add_scaled(&tensor(one, x), &S::one());
    j.add_scaled(&tensor(y, one), &S::one());
    j.add_scaled(&tensor(y, x), &-S::one());
    j.scale(&half)
}

/// Candidates for `z` given `x, y`, by complex Newton from random starts inside
/// the exact solution space of `zx = yz`, `zy = xz`.
fn z_candidates(
    h: &HopfPresentation<CycloScalar>,
    x: &Element<CycloScalar>,
    y: &Element<CycloScalar>,
    rng: &mut ChaCha8Rng,
) -> Vec<Element<CycloScalar>> {
    let d = h.dim();
    let mut rows = Vec::new();
    for (a, b) in [(x, y), (y, x)] {
        // coefficients of (b_j a - b b_j) in basis b_k, as rows over j
        let cols: Vec<Vec<CycloScalar>> = (0..d)
            .map(|j| {
                h.product(&Element::basis(j), a)
                    .minus(&h.product(b, &Element::basis(j)))
                    .to_dense(d)
            })
            .collect();
        rows.extend((0..d).map(|k| (0..d).map(|j| cols[j][k].clone()).collect::<Vec<_>>()));
    }
    let space: Vec<Vec<CycloScalar>> = nullspace(&rows, d);
    if space.is_empty() {
        return Vec::new();
    }
    let hc = cplx(h);
    let emb = |e: &Element<CycloScalar>| e.map_scalars(|c| c.embed_complex());
    let (one, xc, yc) = (hc.unit.clone(), emb(x), emb(y));
    let target = one
        .plus(&xc)
        .plus(&yc)
        .minus(&hc.product(&xc, &yc))
        .scale(&C::new(0.5, 0.0));
    let j = twist(&one, &xc, &yc);
    let basis: Vec<Element<C>> = space
        .iter()
        .map(|v| Element::from_dense(&v.iter().map(CycloScalar::embed_complex).collect::<Vec<_>>()))
        .collect();
    let m = basis.len();
    let flat = |e: &Element<C>, t: &Tensor2<C>, s: C| -> DVector<C> {
        let mut v = e.to_dense(d);
        let mut tt = vec![C::zero(); d * d];
        for ((a, b), c) in t.iter() {
            tt[a * d + b] = *c;
        }
        v.extend(tt);
        v.push(s);
        DVector::from_vec(v)
    };
    let residual = |z: &Element<C>| -> DVector<C> {
        let zz = hc.product(z, z).minus(&target);
        let dz = comul(&hc, z)
            .unwrap()
            .minus(&mul2(&hc, &j, &tensor(z, z)).unwrap());
        flat(&zz, &dz, counit(&hc, z) - C::one())
    };
    let mut found: Vec<Element<CycloScalar>> = Vec::new();
    for _ in 0..40 {
        let mut c: Vec<C> = (0..m)
            .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let point = |c: &[C]| {
            basis
                .iter()
                .zip(c)
                .fold(Element::zero(), |acc: Element<C>, (b, k)| {
                    acc.plus(&b.scale(k))
                })
        };
        for _ in 0..60 {
            let z = point(&c);
            let r = residual(&z);
            if r.norm() < 1e-13 {
                break;
            }
            let mut jac = DMatrix::<C>::zeros(r.len(), m);
            for (k, v) in basis.iter().enumerate() {
                let sq = hc.product(&z, v).plus(&hc.product(v, &z));
                let dv = comul(&hc, v)
                    .unwrap()
                    .minus(&mul2(&hc, &j, &tensor(&z, v).plus(&tensor(v, &z))).unwrap());
                jac.set_column(k, &flat(&sq, &dv, counit(&hc, v)));
            }
            let Ok(step) = jac.svd(true, true).solve(&(-r), 1e-12) else {
                break;
            };
            for (ck, sk) in c.iter_mut().zip(step.iter()) {
                *ck += sk;
            }
        }
        let z = point(&c);
        if residual(&z).norm() > 1e-10 {
            continue;
        }
        if let Some(exact) = recognize_element(&z, d) {
            if !found.contains(&exact) {
                found.push(exact);
            }
        }
    }
    found
}

/// `(x, y, z)` satisfying the presentation exactly.
#[derive(Debug, Clone)]
pub struct Generators {
    pub x: Element<CycloScalar>,
    pub y: Element<CycloScalar>,
    pub z: Element<CycloScalar>,
}

impl Generators {
    /// The eight words `1, x, y, xy, z, xz, yz, xyz`.
    pub fn words(&self, h: &HopfPresentation<CycloScalar>) -> Vec<Element<CycloScalar>> {
        let one = h.unit.clone();
        let xy = h.product(&self.x, &self.y);
        let pre = [one, self.x.clone(), self.y.clone(), xy];
        let mut out = pre.to_vec();
        out.extend(pre.iter().map(|p| h.product(p, &self.z)));
        out
    }

    pub fn check(&self, h: &HopfPresentation<CycloScalar>) -> bool {
        let one = h.unit.clone();
        let (x, y, z) = (&self.x, &self.y, &self.z);
        let xy = h.product(x, y);
        let half = CycloScalar::from_rational(rat(1, 2));
        let want = one.plus(x).plus(y).minus(&xy).scale(&half);
        is_group_like(h, x)
            && is_group_like(h, y)
            && h.product(x, x) == one
            && h.product(y, y) == one
            && xy == h.product(y, x)
            && h.product(z, x) == h.product(y, z)
            && h.product(z, y) == h.product(x, z)
            && h.product(z, z) == want
            && counit(h, z).is_one()
            && comul(h, z).unwrap() == mul2(h, &twist(&one, x, y), &tensor(z, z)).unwrap()
    }
}

fn all_generators(h: &HopfPresentation<CycloScalar>, seed: u64) -> Vec<Generators> {
    let g = group_likes(h, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let mut out = Vec::new();
    for x in &g {
        for y in &g {
            if x == y || *x == h.unit || *y == h.unit {
                continue;
            }
            for z in z_candidates(h, x, y, &mut rng) {
                let gens = Generators {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                };
                if gens.check(h) {
                    out.push(gens);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct IsomorphismReport {
    pub found: bool,
    pub source_group_likes: usize,
    pub target_group_likes: usize,
    pub candidates_tried: usize,
    /// Target rows by source columns, as exact scalars.
    pub matrix: Option<Vec<Vec<CycloScalar>>>,
    pub checks: AxiomReport,
}

/// Search for a *-Hopf isomorphism `source → target` between two presentations
/// of the eight-dimensional Kac-Paljutkin algebra.
pub fn find_hopf_isomorphism(
    source: &HopfPresentation<CycloScalar>,
    target: &HopfPresentation<CycloScalar>,
    seed: u64,
) -> IsomorphismReport {
    let d = source.dim();
    let (ga, gb) = (group_likes(source, seed), group_likes(target, seed));
    let mut report = IsomorphismReport {
        found: false,
        source_group_likes: ga.len(),
        target_group_likes: gb.len(),
        candidates_tried: 0,
        matrix: None,
        checks: AxiomReport::default(),
    };
    if d != 8 || target.dim() != 8 {
        return report;
    }
    let (sa, sb) = (all_generators(source, seed), all_generators(target, seed));
    for a in &sa {
        let wa = a.words(source);
        let cols: Vec<Vec<CycloScalar>> = wa.iter().map(|w| w.to_dense(d)).collect();
        // rows of B_a^T; B_a has the words as columns
        if rank(&cols) < d {
            continue;
        }
        for b in &sb {
            report.candidates_tried += 1;
            let wb = b.words(target);
            // f(b_i) = Σ_k (B_a^{-1})_{k i} wb_k
            let images: Option<Vec<Element<CycloScalar>>> = (0..d)
                .map(|i| {
                    let rows: Vec<Vec<CycloScalar>> = (0..d)
                        .map(|r| (0..d).map(|k| cols[k][r].clone()).collect())
                        .collect();
                    let e: Vec<CycloScalar> = (0..d)
                        .map(|r| {
                            if r == i {
                                CycloScalar::one()
                            } else {
                                CycloScalar::zero()
                            }
                        })
                        .collect();
                    let coeff = solve(&rows, &e)?;
                    Some(
                        wb.iter()
                            .zip(&coeff)
                            .fold(Element::zero(), |acc, (w, c)| acc.plus(&w.scale(c))),
                    )
                })
                .collect();
            let Some(images) = images else { continue };
            let map = HopfMap::new(source, target, images);
            let mut checks = verify_morphism(&map, VerifyMode::Full);
            let star_ok = (0..d).all(|i| {
                let a = Element::basis(i);
                map.apply(&star(source, &a).unwrap()) == star(target, &map.apply(&a)).unwrap()
            });
            checks.push(AxiomCheck::from_bool(
                "f(a*) = f(a)*",
                star_ok,
                d as u64,
                || Witness {
                    tuple: vec![],
                    residual: "star not preserved".into(),
                },
            ));
            let r = rank(&map.matrix());
            checks.push(AxiomCheck::from_bool("bijective", r == d, 1, || Witness {
                tuple: vec![],
                residual: format!("rank {r}"),
            }));
            if checks.passed() {
                report.found = true;
                report.matrix = Some(map.matrix());
                report.checks = checks;
                return report;
            }
            if report.checks.checks.is_empty() {
                report.checks = checks;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{dual_w, kac_paljutkin};

    #[test]
    fn recognizes_eighth_roots() {
        for k in 0..8 {
            let z = CycloScalar::root_of_unity(8, k);
            assert_eq!(recognize(z.embed_complex()), Some(z));
        }
        let half = CycloScalar::from_rational(rat(1, 2));
        assert_eq!(
            recognize(C::new(0.5, 0.5)),
            Some(half.clone() + half * CycloScalar::root_of_unity(4, 1))
        );
        assert_eq!(recognize(C::new(0.1234, 0.0)), None);
    }

    #[test]
    fn group_likes_of_a8() {
        let t = kac_paljutkin(2).unwrap();
        let w = dual_w(2).unwrap();
        assert_eq!(group_likes(&t, 1).len(), 4);
        assert_eq!(group_likes(&w, 1).len(), 4);
    }

    #[test]
    fn a8_is_self_dual() {
        let t = kac_paljutkin(2).unwrap();
        let w = dual_w(2).unwrap();
        let r = find_hopf_isomorphism(&t, &w, 3);
        assert!(r.found, "{:?}", r.checks.failures().collect::<Vec<_>>());
    }

    #[test]
    fn not_isomorphic_to_the_dihedral_group_algebra() {
        use crate::builders::group_algebra;
        use crate::symmetry::PermGroup;
        let t = kac_paljutkin(2).unwrap();
        let d8 = PermGroup::from_generators(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap();
        assert_eq!(d8.order(), 8);
        assert!(!find_hopf_isomorphism(&t, &group_algebra(&d8), 0).found);
    }
}
