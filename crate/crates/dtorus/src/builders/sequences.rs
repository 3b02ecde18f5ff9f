//! The sequences `DT_q^N -> DT_q -> T_q^f` and `T^L_G -> U_G -> F^L_G`.
//!
//! In both the middle algebra has a basis `x_s^e` (sector `s`, exponent
//! `e` in `Z^n`), the subalgebra is spanned by the central group-likes
//! `t^p = Σ_s x_s^p` for `p` in a lattice `L`, and the quotient sends
//! `x_s^e` to the class of `e` modulo `L`.

use num_traits::One;

use super::finite::{finite_fibration, kac_paljutkin};
use super::windows::{DtWindow, DualUWindow, LatticeGroupWindow};
use super::{z, BuildError};
use crate::cohomology::CocycleFamily;
use crate::hopf::{
    verify_exact_sequence, Element, HopfAlgebra, HopfMap, HopfPresentation, KernelReduction, Label,
    Overflow, SequenceReport,
};
use crate::scalar::CycloScalar;
use crate::symmetry::Lattice;

/// A window whose basis is indexed by a sector and an exponent vector.
pub trait SectorWindow: HopfAlgebra<CycloScalar> {
    fn sectors(&self) -> usize;
    fn key(&self, m: usize) -> (usize, Vec<i64>);
    fn key_index(&self, s: usize, e: &[i64]) -> Result<usize, Overflow>;
}

impl SectorWindow for DtWindow {
    fn sectors(&self) -> usize {
        2
    }
    fn key(&self, m: usize) -> (usize, Vec<i64>) {
        let (s, a, b) = self.parts(m);
        (s, vec![a, b])
    }
    fn key_index(&self, s: usize, e: &[i64]) -> Result<usize, Overflow> {
        self.index(s, e[0], e[1])
    }
}

impl SectorWindow for DualUWindow {
    fn sectors(&self) -> usize {
        self.group().order()
    }
    fn key(&self, m: usize) -> (usize, Vec<i64>) {
        self.parts(m)
    }
    fn key_index(&self, s: usize, e: &[i64]) -> Result<usize, Overflow> {
        self.index(s, e)
    }
}

pub struct ExactSequence<M> {
    pub sub: LatticeGroupWindow,
    pub mid: M,
    pub quo: HopfPresentation<CycloScalar>,
    pub degree_bound: i64,
    lattice: Lattice,
    i_images: Vec<Element<CycloScalar>>,
    j_images: Vec<Element<CycloScalar>>,
    generators: Vec<Element<CycloScalar>>,
}

impl<M: SectorWindow> ExactSequence<M> {
    fn assemble(
        mid: M,
        quo: HopfPresentation<CycloScalar>,
        lattice: &Lattice,
        degree_bound: i64,
        quo_label: impl Fn(usize, &[i64]) -> Label,
    ) -> Result<Self, BuildError> {
        let rank = lattice.rank();
        let spread = (0..rank)
            .map(|i| (0..rank).map(|j| lattice.column(j)[i].abs()).sum::<i64>())
            .max()
            .unwrap_or(1)
            .max(1);
        let sub = LatticeGroupWindow::new(lattice, (degree_bound / spread).max(1))?;
        let mut i_images = Vec::with_capacity(sub.dim());
        for t in 0..sub.dim() {
            let p = sub.point(t);
            let mut e = Element::zero();
            for s in 0..mid.sectors() {
                e.add_term(
                    mid.key_index(s, p).map_err(|_| BuildError::SmallWindow {
                        got: degree_bound,
                        min: spread,
                    })?,
                    CycloScalar::one(),
                );
            }
            i_images.push(e);
        }
        let mut j_images = Vec::with_capacity(mid.dim());
        for m in 0..mid.dim() {
            let (s, e) = mid.key(m);
            let k = quo.index(&quo_label(s, &e))?;
            j_images.push(Element::basis(k));
        }
        let zero = sub.index_coords(&vec![0; rank]).expect("origin");
        let generators = (0..rank)
            .map(|k| {
                let c: Vec<i64> = (0..rank).map(|j| (j == k) as i64).collect();
                Element::basis(sub.index_coords(&c).expect("unit coordinates"))
                    .minus(&Element::basis(zero))
            })
            .collect();
        Ok(ExactSequence {
            sub,
            mid,
            quo,
            degree_bound,
            lattice: lattice.clone(),
            i_images,
            j_images,
            generators,
        })
    }

    pub fn i(&self) -> HopfMap<'_, CycloScalar> {
        HopfMap::new(&self.sub, &self.mid, self.i_images.clone())
    }

    pub fn j(&self) -> HopfMap<'_, CycloScalar> {
        HopfMap::new(&self.mid, &self.quo, self.j_images.clone())
    }

    pub fn verify(&self) -> SequenceReport {
        verify_exact_sequence(&self.i(), &self.j(), self)
    }

    /// `x_s^e` with the sector and exponent of `m` shifted by `p`.
    fn shifted(&self, s: usize, e: &[i64], p: &[i64]) -> Result<usize, Overflow> {
        let v: Vec<i64> = e.iter().zip(p).map(|(a, b)| a + b).collect();
        self.mid.key_index(s, &v)
    }
}

impl<M: SectorWindow> KernelReduction<CycloScalar> for ExactSequence<M> {
    fn generators(&self) -> Vec<Element<CycloScalar>> {
        self.generators.clone()
    }

    fn in_domain(&self, m: usize) -> bool {
        self.mid
            .key(m)
            .1
            .iter()
            .all(|v| v.abs() <= self.degree_bound)
    }

    /// `x^e - x^{e0} = (t^p - 1) x^{e0}` with `p = Σ c_k l_k`, telescoped as
    /// `Σ_k (t^{c_k l_k} - 1) t^{c_1 l_1 + ... + c_{k-1} l_{k-1}}` and
    /// `t^{c l} - 1 = (t^l - 1)(1 + t^l + ... + t^{(c-1) l})` (negated and
    /// shifted for `c < 0`).
    fn reduce_basis(
        &self,
        m: usize,
    ) -> Result<(Element<CycloScalar>, Vec<Element<CycloScalar>>), Overflow> {
        let (s, e) = self.mid.key(m);
        let class = self
            .lattice
            .reduce(&e)
            .map_err(|err| Overflow(err.to_string()))?;
        let e0 = self.lattice.representative(&class);
        let p: Vec<i64> = e.iter().zip(&e0).map(|(a, b)| a - b).collect();
        let c = self
            .lattice
            .coordinates(&p)
            .ok_or_else(|| Overflow(format!("{p:?} is not a lattice vector")))?;
        let rank = self.lattice.rank();
        let mut prefix = vec![0i64; rank];
        let mut ps = Vec::with_capacity(rank);
        for (k, &ck) in c.iter().enumerate() {
            let l = self.lattice.column(k);
            let mut pk = Element::zero();
            let (range, sign): (Vec<i64>, CycloScalar) = if ck >= 0 {
                ((0..ck).collect(), CycloScalar::one())
            } else {
                ((ck..0).collect(), -CycloScalar::one())
            };
            for t in range {
                let shift: Vec<i64> = prefix.iter().zip(&l).map(|(a, b)| a + t * b).collect();
                pk.add_term(self.shifted(s, &e0, &shift)?, sign.clone());
            }
            for (a, b) in prefix.iter_mut().zip(&l) {
                *a += ck * b;
            }
            ps.push(pk);
        }
        Ok((Element::basis(self.mid.key_index(s, &e0)?), ps))
    }
}

/// `DT_q^N -> DT_q -> T_q^f` at `q = zeta_N`, checked on exponents up to `degree_bound`.
pub fn double_torus_sequence(
    n: i64,
    degree_bound: i64,
) -> Result<ExactSequence<DtWindow>, BuildError> {
    let mid = DtWindow::new(z(n, 1), degree_bound.max(n))?;
    let quo = kac_paljutkin(n)?;
    let lattice = Lattice::scaled(2, n);
    let sector = |s: usize| {
        if s == 0 {
            crate::hopf::Sector::Plus
        } else {
            crate::hopf::Sector::Minus
        }
    };
    ExactSequence::assemble(mid, quo, &lattice, degree_bound, |s, e: &[i64]| {
        Label::new("x", sector(s), e.iter().map(|v| v.rem_euclid(n)).collect())
    })
}

/// `T^L_G -> U_G -> F^L_G` for an integral cocycle family.
pub fn z3_sequence(
    theta: &CocycleFamily,
    lattice: &Lattice,
    degree_bound: i64,
) -> Result<ExactSequence<DualUWindow>, BuildError> {
    let spread = lattice.box_shape().iter().copied().max().unwrap_or(1);
    let mid = DualUWindow::new(theta, degree_bound.max(spread))?;
    let quo = finite_fibration(theta, lattice)?;
    let lat = lattice.clone();
    ExactSequence::assemble(mid, quo, lattice, degree_bound, move |s, e: &[i64]| {
        Label::new(
            "U",
            crate::hopf::Sector::Group(s),
            lat.reduce(e).expect("nondegenerate").0,
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{lift_commutator_form, z3_family};
    use crate::hopf::sequence::decompose;
    use crate::hopf::{verify_morphism, VerifyMode};
    use crate::scalar::rat;

    #[test]
    fn double_torus_sequence_is_exact() {
        for n in [2, 3] {
            let seq = double_torus_sequence(n, 4).unwrap();
            let r = seq.verify();
            assert!(r.passed(), "N = {n}: {r:?}");
            assert_eq!(r.kernel_dim, r.domain_dim - 2 * (n * n) as usize);
        }
    }

    #[test]
    fn u_to_the_n_minus_one() {
        let seq = double_torus_sequence(2, 4).unwrap();
        let v = seq.mid.monomial(2, 0).unwrap().minus(&seq.mid.unit());
        let (red, p) = decompose(&seq, 2, &v).unwrap();
        assert!(red.is_zero());
        assert_eq!(p[0], seq.mid.unit().into_owned());
        assert!(p[1].is_zero());
    }

    #[test]
    fn j_is_a_morphism_and_i_is_only_a_left_coideal() {
        let seq = double_torus_sequence(2, 3).unwrap();
        assert!(verify_morphism(&seq.j(), VerifyMode::Full).passed());
        let r = verify_morphism(&seq.i(), VerifyMode::Full);
        assert!(r.get("multiplicative").unwrap().passed());
        assert!(r.get("counit").unwrap().passed());
        assert!(!r.get("comultiplicative").unwrap().passed());
    }

    #[test]
    fn z3_sequence_n2_is_exact() {
        let lattice = Lattice::scaled(3, 2);
        let theta = lift_commutator_form(&z3_family(&rat(1, 2), &rat(0, 1)), &lattice).unwrap();
        let seq = z3_sequence(&theta, &lattice, 2).unwrap();
        let r = seq.verify();
        assert!(r.passed(), "{r:?}");
    }
}
