//! Hopf pairings between finite presentations.

use serde::Serialize;

use crate::hopf::verify::{run_check, Outcome};
use crate::hopf::{
    AxiomCheck, AxiomReport, Element, HopfAlgebra, HopfPresentation, Label, Sector, Tensor2,
    VerifyMode, Witness,
};
use crate::linalg::rank;
use crate::scalar::{CycloScalar, Scalar};

pub mod iso;

pub use iso::{find_hopf_isomorphism, group_likes, IsomorphismReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DualityError {
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },
    #[error("label {0} pairs trivially with every basis element on the other side")]
    LabelMismatch(String),
}

/// A bilinear form `⟨a, x⟩` with `a` in `left` and `x` in `right`.
#[derive(Clone)]
pub struct Pairing<'a, S> {
    pub left: &'a HopfPresentation<S>,
    pub right: &'a HopfPresentation<S>,
    /// `matrix[i][j] = ⟨b_i, c_j⟩`.
    pub matrix: Vec<Vec<S>>,
}

impl<'a, S: Scalar> Pairing<'a, S> {
    pub fn value(&self, a: &Element<S>, x: &Element<S>) -> S {
        let mut out = S::zero();
        for (i, u) in a.iter() {
            for (j, v) in x.iter() {
                let p = &self.matrix[*i][*j];
                if !p.is_zero() {
                    out = out + u.clone() * v.clone() * p.clone();
                }
            }
        }
        out
    }

    /// `⟨a ⊗ b, x ⊗ y⟩ = ⟨a, x⟩⟨b, y⟩`, with the tensor on the left.
    pub fn value_left2(&self, t: &Tensor2<S>, x: usize, y: usize) -> S {
        t.iter().fold(S::zero(), |acc, ((i, j), c)| {
            acc + c.clone() * self.matrix[*i][x].clone() * self.matrix[*j][y].clone()
        })
    }

    /// `⟨a ⊗ b, t⟩` with the tensor on the right.
    pub fn value_right2(&self, a: usize, b: usize, t: &Tensor2<S>) -> S {
        t.iter().fold(S::zero(), |acc, ((i, j), c)| {
            acc + c.clone() * self.matrix[a][*i].clone() * self.matrix[b][*j].clone()
        })
    }

    /// The same form with the two sides exchanged.
    pub fn transpose(&self) -> Pairing<'a, S> {
        let d = self.matrix.len();
        let e = self.matrix.first().map_or(0, Vec::len);
        let matrix = (0..e)
            .map(|j| (0..d).map(|i| self.matrix[i][j].clone()).collect())
            .collect();
        Pairing {
            left: self.right,
            right: self.left,
            matrix,
        }
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }
}

/// Fill the pairing matrix from a rule on labels; `None` means zero.
pub fn build_pairing<'a, S: Scalar>(
    left: &'a HopfPresentation<S>,
    right: &'a HopfPresentation<S>,
    rule: impl Fn(&Label, &Label) -> Option<S>,
) -> Result<Pairing<'a, S>, DualityError> {
    if left.dim() != right.dim() {
        return Err(DualityError::Dimension {
            left: left.dim(),
            right: right.dim(),
        });
    }
    let matrix: Vec<Vec<S>> = left
        .labels()
        .iter()
        .map(|a| {
            right
                .labels()
                .iter()
                .map(|x| rule(a, x).unwrap_or_else(S::zero))
                .collect()
        })
        .collect();
    for (i, row) in matrix.iter().enumerate() {
        if row.iter().all(|v| v.is_zero()) {
            return Err(DualityError::LabelMismatch(left.label(i).to_string()));
        }
    }
    Ok(Pairing {
        left,
        right,
        matrix,
    })
}

/// `⟨b, c⟩ = 1` when sector and index agree, whatever the symbols.
pub fn kronecker_rule<S: Scalar>(a: &Label, x: &Label) -> Option<S> {
    (a.sector == x.sector && a.index == x.index).then(S::one)
}

/// `⟨w+(m,n), x+(k,l)⟩ = δδ` and `⟨w-(m,n), x-(k,l)⟩ = q^{-mn/2} δδ`, `q^{1/2} = zeta_{2N}`.
pub fn w_t_rule(n: i64) -> impl Fn(&Label, &Label) -> Option<CycloScalar> {
    move |a, x| {
        if a.sector != x.sector || a.index != x.index {
            return None;
        }
        match a.sector {
            Sector::Minus => Some(CycloScalar::root_of_unity(
                2 * n as u32,
                -a.index[0] * a.index[1],
            )),
            _ => Some(num_traits::One::one()),
        }
    }
}

fn fail(tuple: Vec<String>, l: &impl std::fmt::Debug, r: &impl std::fmt::Debug) -> Outcome {
    Outcome::Fail(Witness {
        tuple,
        residual: format!("{l:?} != {r:?}"),
    })
}

/// All pairing identities on basis tuples, plus exact non-degeneracy.
pub fn verify_hopf_pairing<S: Scalar>(p: &Pairing<'_, S>, mode: VerifyMode) -> AxiomReport {
    let (a, b) = (p.left, p.right);
    let d = a.dim();
    let la = |i: usize| a.label(i).to_string();
    let lb = |i: usize| b.label(i).to_string();
    let mut report = AxiomReport::default();

    report.push(run_check(
        "⟨a, xy⟩ = ⟨Δa, x⊗y⟩",
        d * d * d,
        mode,
        |k| {
            let (i, x, y) = (k / (d * d), (k / d) % d, k % d);
            let l = p.value(
                &Element::basis(i),
                &b.product(&Element::basis(x), &Element::basis(y)),
            );
            let r = p.value_left2(&a.comul_basis(i).unwrap(), x, y);
            if l == r {
                Outcome::Ok
            } else {
                fail(vec![la(i), lb(x), lb(y)], &l, &r)
            }
        },
    ));
    report.push(run_check(
        "⟨ab, x⟩ = ⟨a⊗b, Δx⟩",
        d * d * d,
        mode,
        |k| {
            let (i, j, x) = (k / (d * d), (k / d) % d, k % d);
            let l = p.value(
                &a.product(&Element::basis(i), &Element::basis(j)),
                &Element::basis(x),
            );
            let r = p.value_right2(i, j, &b.comul_basis(x).unwrap());
            if l == r {
                Outcome::Ok
            } else {
                fail(vec![la(i), la(j), lb(x)], &l, &r)
            }
        },
    ));
    report.push(run_check("⟨1, x⟩ = ε(x)", d, mode, |x| {
        let l = p.value(&a.unit(), &Element::basis(x));
        let r = b.counit_basis(x);
        if l == r {
            Outcome::Ok
        } else {
            fail(vec![lb(x)], &l, &r)
        }
    }));
    report.push(run_check("⟨a, 1⟩ = ε(a)", d, mode, |i| {
        let l = p.value(&Element::basis(i), &b.unit());
        let r = a.counit_basis(i);
        if l == r {
            Outcome::Ok
        } else {
            fail(vec![la(i)], &l, &r)
        }
    }));
    let s = |h: &HopfPresentation<S>, i: usize| h.antipode_basis(i).unwrap().into_owned();
    let st = |h: &HopfPresentation<S>, e: &Element<S>| crate::hopf::star(h, e).unwrap();
    report.push(run_check("⟨Sa, x⟩ = ⟨a, Sx⟩", d * d, mode, |k| {
        let (i, x) = (k / d, k % d);
        let l = p.value(&s(a, i), &Element::basis(x));
        let r = p.value(&Element::basis(i), &s(b, x));
        if l == r {
            Outcome::Ok
        } else {
            fail(vec![la(i), lb(x)], &l, &r)
        }
    }));
    report.push(run_check(
        "⟨a*, x⟩ = conj⟨a, (Sx)*⟩",
        d * d,
        mode,
        |k| {
            let (i, x) = (k / d, k % d);
            let l = p.value(&st(a, &Element::basis(i)), &Element::basis(x));
            let r = p.value(&Element::basis(i), &st(b, &s(b, x))).conjugate();
            if l == r {
                Outcome::Ok
            } else {
                fail(vec![la(i), lb(x)], &l, &r)
            }
        },
    ));
    report.push(run_check(
        "⟨a, x*⟩ = conj⟨(Sa)*, x⟩",
        d * d,
        mode,
        |k| {
            let (i, x) = (k / d, k % d);
            let l = p.value(&Element::basis(i), &st(b, &Element::basis(x)));
            let r = p.value(&st(a, &s(a, i)), &Element::basis(x)).conjugate();
            if l == r {
                Outcome::Ok
            } else {
                fail(vec![la(i), lb(x)], &l, &r)
            }
        },
    ));
    let r = p.rank();
    report.push(AxiomCheck::from_bool("non-degenerate", r == d, 1, || {
        Witness {
            tuple: vec![],
            residual: format!("rank {r} < {d}"),
        }
    }));
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub n: i64,
    pub pairing: AxiomReport,
    pub transpose: AxiomReport,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.pairing.passed() && self.transpose.passed()
    }
}

/// `T_q^f(N)` against `W(N)`, in both orders.
pub fn kac_paljutkin_duality(n: i64) -> Result<DualityReport, crate::builders::BuildError> {
    let w = crate::builders::dual_w(n)?;
    let t = crate::builders::kac_paljutkin(n)?;
    let p = build_pairing(&w, &t, w_t_rule(n)).expect("matching label schemes");
    let pairing = verify_hopf_pairing(&p, VerifyMode::Full);
    let transpose = verify_hopf_pairing(&p.transpose(), VerifyMode::Full);
    Ok(DualityReport {
        n,
        pairing,
        transpose,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{
        dual_w, finite_fibration, function_algebra, group_algebra, kac_paljutkin, w_subalgebra,
        z3_example,
    };
    use crate::symmetry::PermGroup;
    use num_traits::One;

    #[test]
    fn kac_paljutkin_pairs_with_w() {
        for n in 2..=3 {
            let r = kac_paljutkin_duality(n).unwrap();
            assert!(r.passed(), "{:?}", r.pairing.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn minus_phase_at_n2() {
        let w = dual_w(2).unwrap();
        let t = kac_paljutkin(2).unwrap();
        let p = build_pairing(&w, &t, w_t_rule(2)).unwrap();
        let a = w
            .basis(&Label::new("w", Sector::Minus, vec![1, 1]))
            .unwrap();
        let x = t
            .basis(&Label::new("x", Sector::Minus, vec![1, 1]))
            .unwrap();
        assert_eq!(p.value(&a, &x), CycloScalar::root_of_unity(4, -1));
        assert!(p.value(&w.unit(), &t.unit()).is_one());
    }

    #[test]
    fn unrescaled_phase_breaks_multiplicativity() {
        let w = dual_w(2).unwrap();
        let t = kac_paljutkin(2).unwrap();
        let p = build_pairing(&w, &t, kronecker_rule).unwrap();
        let r = verify_hopf_pairing(&p, VerifyMode::Full);
        assert!(!r.get("⟨a, xy⟩ = ⟨Δa, x⊗y⟩").unwrap().passed());
    }

    #[test]
    fn classical_duality() {
        let g = PermGroup::flip();
        let (a, b) = (
            function_algebra::<CycloScalar>(&g),
            group_algebra::<CycloScalar>(&g),
        );
        let p = build_pairing(&a, &b, kronecker_rule).unwrap();
        assert!(verify_hopf_pairing(&p, VerifyMode::Full).passed());
    }

    #[test]
    fn fibration_pairs_with_w_subalgebra() {
        let (theta, lattice) = z3_example(2, 1, 0).unwrap();
        let (f, w) = (
            finite_fibration(&theta, &lattice).unwrap(),
            w_subalgebra(&theta, &lattice).unwrap(),
        );
        let p = build_pairing(&w, &f, kronecker_rule).unwrap();
        let r = verify_hopf_pairing(&p, VerifyMode::Full);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
