//! Finite presentations: Kac-Paljutkin algebras, their duals, and the
//! fibrations of a twisted group algebra by an invariant lattice.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{z, BuildError};
use crate::cohomology::CocycleFamily;
use crate::hopf::{
    verify_morphism, AxiomReport, Element, HopfMap, HopfPresentation, Label, Sector, Tensor2,
    VerifyMode,
};
use crate::scalar::CycloScalar;
use crate::symmetry::{IndexClass, Lattice, PermGroup};

fn sign(s: usize) -> Sector {
    if s == 0 {
        Sector::Plus
    } else {
        Sector::Minus
    }
}

fn box_labels(symbol: &str, n: i64) -> Vec<Label> {
    let mut out = Vec::new();
    for s in 0..2 {
        for a in 0..n {
            for b in 0..n {
                out.push(Label::new(symbol, sign(s), vec![a, b]));
            }
        }
    }
    out
}

/// `T_q^f` at `q = zeta_N`, on the basis `x±(a,b) = P± U^a V^b`.
pub fn kac_paljutkin(n: i64) -> Result<HopfPresentation<CycloScalar>, BuildError> {
    kac_paljutkin_at(n, 1)
}

/// `T_q^f` at `q = zeta_N^k`; `k` need not be coprime to `N`.
pub fn kac_paljutkin_at(n: i64, k: i64) -> Result<HopfPresentation<CycloScalar>, BuildError> {
    if n < 2 {
        return Err(BuildError::SmallN(n));
    }
    let q = |e: i64| z(n, k * e);
    let m = |a: i64| a.rem_euclid(n);
    let idx = |s: usize, a: i64, b: i64| s * (n * n) as usize + (m(a) * n + m(b)) as usize;
    let dec = |i: usize| {
        let s = i / (n * n) as usize;
        let r = (i % (n * n) as usize) as i64;
        (s, r / n, r % n)
    };
    HopfPresentation::from_fns(
        box_labels("x", n),
        |i, j| {
            let ((s, a, b), (t, c, d)) = (dec(i), dec(j));
            match (s, t) {
                (0, 0) => Element::basis(idx(0, a + c, b + d)),
                (1, 1) => Element::single(idx(1, a + c, b + d), q(b * c)),
                _ => Element::zero(),
            }
        },
        |i| {
            let (s, a, b) = dec(i);
            if s == 0 {
                Tensor2::from_terms([
                    ((idx(0, a, b), idx(0, a, b)), q(0)),
                    ((idx(1, b, a), idx(1, a, b)), q(a * b)),
                ])
            } else {
                Tensor2::from_terms([
                    ((idx(1, a, b), idx(0, a, b)), q(0)),
                    ((idx(0, b, a), idx(1, a, b)), q(0)),
                ])
            }
        },
        |i| {
            if dec(i).0 == 0 {
                q(0)
            } else {
                CycloScalar::zero()
            }
        },
        |i| {
            let (s, a, b) = dec(i);
            if s == 0 {
                Element::basis(idx(0, -a, -b))
            } else {
                Element::basis(idx(1, -b, -a))
            }
        },
        |i| {
            let (s, a, b) = dec(i);
            if s == 0 {
                (idx(0, -a, -b), q(0))
            } else {
                (idx(1, -a, -b), q(a * b))
            }
        },
        Element::from_terms([(idx(0, 0, 0), q(0)), (idx(1, 0, 0), q(0))]),
    )
    .map_err(Into::into)
}

/// The dual `W(N)` of `T_q^f`, `q = zeta_N`, over `Q(zeta_2N)`.
pub fn dual_w(n: i64) -> Result<HopfPresentation<CycloScalar>, BuildError> {
    dual_w_at(n, 1)
}

/// Dual of `T_q^f` at `q = zeta_N^k` with `q^{1/2} = zeta_{2N}^k`.
///
/// On the minus sector the coproduct phase is
/// `q^{(2jk + ij + kl - mn)/2}` for `w-(i,j) ⊗ w-(k,l)` with `(m, n)` the
/// reduced sum; it agrees with `q^{(jk - il)/2}` whenever no index wraps.
pub fn dual_w_at(n: i64, k: i64) -> Result<HopfPresentation<CycloScalar>, BuildError> {
    if n < 2 {
        return Err(BuildError::SmallN(n));
    }
    let r = |e: i64| z(2 * n, k * e);
    let m = |a: i64| a.rem_euclid(n);
    let idx = |s: usize, a: i64, b: i64| s * (n * n) as usize + (m(a) * n + m(b)) as usize;
    let dec = |i: usize| {
        let s = i / (n * n) as usize;
        let rr = (i % (n * n) as usize) as i64;
        (s, rr / n, rr % n)
    };
    let one = CycloScalar::one;
    HopfPresentation::from_fns(
        box_labels("w", n),
        |x, y| {
            let ((s, a, b), (t, c, d)) = (dec(x), dec(y));
            let hit = match (s, t) {
                (0, 0) => a == c && b == d,
                _ => (s == 1 && t == 0 && a == c && b == d) || (t == 1 && a == d && b == c),
            };
            if !hit {
                return Element::zero();
            }
            Element::basis(idx(if s == t { 0 } else { 1 }, c, d))
        },
        |x| {
            let (s, mm, nn) = dec(x);
            let mut t = Tensor2::zero();
            for i in 0..n {
                for j in 0..n {
                    let (kk, l) = (m(mm - i), m(nn - j));
                    let c = if s == 0 {
                        one()
                    } else {
                        r(2 * j * kk + i * j + kk * l - mm * nn)
                    };
                    t.add_term((idx(s, i, j), idx(s, kk, l)), c);
                }
            }
            t
        },
        |x| {
            let (_, a, b) = dec(x);
            if a == 0 && b == 0 {
                one()
            } else {
                CycloScalar::zero()
            }
        },
        |x| {
            let (s, a, b) = dec(x);
            if s == 0 {
                Element::basis(idx(0, -a, -b))
            } else {
                let (a2, b2) = (m(-b), m(-a));
                Element::single(idx(1, a2, b2), r(a2 * b2 - a * b))
            }
        },
        |x| {
            let (s, a, b) = dec(x);
            if s == 0 {
                (x, one())
            } else {
                (idx(1, b, a), one())
            }
        },
        Element::from_terms((0..n * n).map(|v| (v as usize, one()))),
    )
    .map_err(Into::into)
}

/// Shared data of the finite quotients by an invariant lattice.
#[derive(Debug, Clone)]
pub struct Fibration {
    pub theta: CocycleFamily,
    pub lattice: Lattice,
    pub classes: Vec<IndexClass>,
    reps: Vec<Vec<i64>>,
    lookup: HashMap<IndexClass, usize>,
}

impl Fibration {
    /// Validates the cocycle, lattice invariance and integrality of `theta` on `L`.
    pub fn new(theta: &CocycleFamily, lattice: &Lattice) -> Result<Self, BuildError> {
        theta.validate()?;
        lattice.check_invariant(&theta.group)?;
        theta.check_integral(lattice)?;
        let classes = lattice.classes()?;
        let reps = classes.iter().map(|c| lattice.representative(c)).collect();
        let lookup = classes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        Ok(Fibration {
            theta: theta.clone(),
            lattice: lattice.clone(),
            classes,
            reps,
            lookup,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.theta.group
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn dim(&self) -> usize {
        self.group().order() * self.class_count()
    }

    pub fn rep(&self, c: usize) -> &[i64] {
        &self.reps[c]
    }

    pub fn class_of(&self, i: &[i64]) -> usize {
        self.lookup[&self.lattice.reduce(i).expect("nondegenerate lattice")]
    }

    pub fn act(&self, g: usize, c: usize) -> usize {
        self.class_of(&self.group().act(g, self.rep(c)))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let s: Vec<i64> = self
            .rep(a)
            .iter()
            .zip(self.rep(b))
            .map(|(x, y)| x + y)
            .collect();
        self.class_of(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<i64> = self.rep(a).iter().map(|x| -x).collect();
        self.class_of(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `exp(2 pi i theta_g(a, b))` on class representatives.
    pub fn phase(&self, g: usize, a: usize, b: usize) -> CycloScalar {
        self.theta.alpha(g, self.rep(a), self.rep(b))
    }

    pub fn index(&self, g: usize, c: usize) -> usize {
        g * self.class_count() + c
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.class_count(), i % self.class_count())
    }

    fn labels(&self, symbol: &str) -> Vec<Label> {
        let mut out = Vec::new();
        for g in 0..self.group().order() {
            for c in &self.classes {
                out.push(Label::new(symbol, Sector::Group(g), c.0.clone()));
            }
        }
        out
    }
}

/// `F^L_G` on the classes `U^{[i]}_g`.
pub fn finite_fibration(
    theta: &CocycleFamily,
    lattice: &Lattice,
) -> Result<HopfPresentation<CycloScalar>, BuildError> {
    let f = Fibration::new(theta, lattice)?;
    let g = f.group();
    let nc = f.class_count();
    HopfPresentation::from_fns(
        f.labels("U"),
        |x, y| {
            let ((a, i), (b, j)) = (f.split(x), f.split(y));
            if a != b {
                return Element::zero();
            }
            Element::single(f.index(a, f.add(i, j)), f.phase(a, i, j))
        },
        |x| {
            let (c, i) = f.split(x);
            Tensor2::from_terms((0..g.order()).map(|h| {
                let a = g.mul(c, g.inv(h));
                ((f.index(a, f.act(h, i)), f.index(h, i)), CycloScalar::one())
            }))
        },
        |x| {
            if f.split(x).0 == g.identity() {
                CycloScalar::one()
            } else {
                CycloScalar::zero()
            }
        },
        |x| {
            let (a, j) = f.split(x);
            Element::single(
                f.index(g.inv(a), f.neg(f.act(a, j))),
                f.phase(a, j, j).conj(),
            )
        },
        |x| {
            let (a, j) = f.split(x);
            (f.index(a, f.neg(j)), f.phase(a, j, j))
        },
        Element::from_terms((0..g.order()).map(|a| {
            (
                f.index(a, f.class_of(&vec![0; g.rank()])),
                CycloScalar::one(),
            )
        })),
    )
    .map(|h| {
        debug_assert_eq!(h.labels().len(), g.order() * nc);
        h
    })
    .map_err(Into::into)
}

/// The subalgebra of periodic sums `w^{[i]}_g = sum_{p in L} C^{i+p}_g`.
pub fn w_subalgebra(
    theta: &CocycleFamily,
    lattice: &Lattice,
) -> Result<HopfPresentation<CycloScalar>, BuildError> {
    let f = Fibration::new(theta, lattice)?;
    let g = f.group();
    let nc = f.class_count();
    let zero = f.class_of(&vec![0; g.rank()]);
    HopfPresentation::from_fns(
        f.labels("w"),
        |x, y| {
            let ((a, i), (b, j)) = (f.split(x), f.split(y));
            if i == f.act(b, j) {
                Element::basis(f.index(g.mul(a, b), j))
            } else {
                Element::zero()
            }
        },
        |x| {
            let (a, i) = f.split(x);
            Tensor2::from_terms((0..nc).map(|k| {
                let l = f.sub(i, k);
                ((f.index(a, k), f.index(a, l)), f.phase(a, k, l))
            }))
        },
        |x| {
            if f.split(x).1 == zero {
                CycloScalar::one()
            } else {
                CycloScalar::zero()
            }
        },
        |x| {
            let (a, k) = f.split(x);
            Element::single(f.index(g.inv(a), f.neg(f.act(a, k))), f.phase(a, k, k))
        },
        |x| {
            let (a, i) = f.split(x);
            (f.index(g.inv(a), f.act(a, i)), CycloScalar::one())
        },
        Element::from_terms((0..nc).map(|c| (f.index(g.identity(), c), CycloScalar::one()))),
    )
    .map_err(Into::into)
}

/// For the flip family `θ = 1/N` on `L = N Z²`: `x+(a,b) -> U^{(a,b)}_e`,
/// `x-(a,b) -> zeta_N^{ab} U^{(a,b)}_σ` from `T_q^f` at `q = zeta_N^{-2}`, and
/// `w±(a,b) -> w^{(a,b)}_{e/σ}` from `W` at the same `q`.
pub fn check_flip_identifications(n: i64) -> Result<BTreeMap<String, AxiomReport>, BuildError> {
    let (theta, lattice) = (
        crate::cohomology::flip_family(&crate::scalar::rat(1, n)),
        Lattice::scaled(2, n),
    );
    let (f, w) = (
        finite_fibration(&theta, &lattice)?,
        w_subalgebra(&theta, &lattice)?,
    );
    let (t, d) = (kac_paljutkin_at(n, -2)?, dual_w_at(n, -2)?);
    let sector = |l: &Label| usize::from(l.sector == Sector::Minus);
    let mut images = Vec::new();
    for l in t.labels() {
        let u = f.basis(&Label::new("U", Sector::Group(sector(l)), l.index.clone()))?;
        images.push(if sector(l) == 1 {
            u.scale(&z(n, l.index[0] * l.index[1]))
        } else {
            u
        });
    }
    let mut out = BTreeMap::new();
    out.insert(
        "kac_paljutkin -> fibration".to_string(),
        verify_morphism(&HopfMap::new(&t, &f, images), VerifyMode::Full),
    );
    let images = d
        .labels()
        .iter()
        .map(|l| w.basis(&Label::new("w", Sector::Group(sector(l)), l.index.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    out.insert(
        "dual_w -> w_subalgebra".to_string(),
        verify_morphism(&HopfMap::new(&d, &w, images), VerifyMode::Full),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{flip_family, z3_family};
    use crate::hopf::{verify_hopf, HopfAlgebra, VerifyMode};
    use crate::scalar::rat;

    #[test]
    fn kac_paljutkin_small_cases() {
        let h = kac_paljutkin(2).unwrap();
        assert_eq!(h.dim(), 8);
        let r = verify_hopf(&h, VerifyMode::Full);
        assert!(r.passed(), "{r:?}");
        assert_eq!(kac_paljutkin(3).unwrap().dim(), 18);
        assert!(kac_paljutkin(1).is_err());
        // ε(U_+ + U_-) = 1, ε(U_-) = 0
        let up = h.index(&Label::new("x", Sector::Plus, vec![1, 0])).unwrap();
        let um = h
            .index(&Label::new("x", Sector::Minus, vec![1, 0]))
            .unwrap();
        assert_eq!(h.counit_basis(up) + h.counit_basis(um), CycloScalar::one());
        assert!(h.counit_basis(um).is_zero());
    }

    #[test]
    fn dual_w_products_and_star() {
        let w = dual_w(3).unwrap();
        assert!(verify_hopf(&w, VerifyMode::Full).passed());
        let l = |s, a, b| w.index(&Label::new("w", s, vec![a, b])).unwrap();
        let p = w.product(
            &Element::basis(l(Sector::Plus, 1, 2)),
            &Element::basis(l(Sector::Plus, 1, 2)),
        );
        assert_eq!(p, Element::basis(l(Sector::Plus, 1, 2)));
        assert!(w
            .product(
                &Element::basis(l(Sector::Plus, 1, 2)),
                &Element::basis(l(Sector::Plus, 2, 1))
            )
            .is_zero());
        assert_eq!(
            w.star_basis(l(Sector::Minus, 1, 2)).unwrap(),
            (l(Sector::Minus, 2, 1), CycloScalar::one())
        );
        let d = w.comul_basis(l(Sector::Plus, 0, 0)).unwrap();
        assert_eq!(
            d.get(&(l(Sector::Plus, 0, 0), l(Sector::Plus, 0, 0))),
            CycloScalar::one()
        );
    }

    #[test]
    fn z2_fibration_is_kac_paljutkin_size() {
        let theta = flip_family(&rat(1, 3));
        let h = finite_fibration(&theta, &Lattice::scaled(2, 3)).unwrap();
        assert_eq!(h.dim(), 18);
        assert!(verify_hopf(&h, VerifyMode::Full).passed());
        let w = w_subalgebra(&theta, &Lattice::scaled(2, 3)).unwrap();
        assert!(verify_hopf(&w, VerifyMode::Full).passed());
    }

    #[test]
    fn integrality_failure_names_witness() {
        let theta = z3_family(&rat(1, 3), &rat(0, 1));
        let err = finite_fibration(&theta, &Lattice::scaled(3, 2)).unwrap_err();
        assert!(matches!(
            err,
            BuildError::Cohomology(crate::cohomology::CohomologyError::NotIntegral { .. })
        ));
    }
}
