//! The elements `e₁, e₂, σ` of `𝒲` and the action of `𝒲` on `T_q^f`.
//!
//! Inside the finite dual the exponents of `e_i` live in `Z/N`, so `Δe_i`
//! is primitive only up to multiples of `N` and the naive Cartan factor
//! `q^{(e₂⊗e₁ - e₁⊗e₂)/2}` has to be corrected by the coboundary of
//! `Q = Σ q^{ij/2} w+(i,j)`: `Δσ = (σ⊗σ) q^{e₂⊗e₁} (Q⊗Q) Δ(Q)^{-1}`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{z, BuildError};
use crate::hopf::{
    comul, mul, mul2, star, tensor, AxiomCheck, AxiomReport, Element, HopfAlgebra, HopfError,
    HopfPresentation, Label, Sector, Tensor2, Witness,
};
use crate::scalar::CycloScalar;

#[derive(Debug, Clone)]
pub struct LieElements {
    pub n: i64,
    pub e1: Element<CycloScalar>,
    pub e2: Element<CycloScalar>,
    pub sigma: Element<CycloScalar>,
    /// The corrected Cartan factor in `𝒲 ⊗ 𝒲`.
    pub twist: Tensor2<CycloScalar>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LieReport {
    pub checks: AxiomReport,
    /// Whether `Δσ = (σ⊗σ) q^{(e₂⊗e₁ - e₁⊗e₂)/2}` holds with exponents read in `Z/N`.
    pub naive_twist_holds: bool,
}

impl LieReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

fn order_of(w: &HopfPresentation<CycloScalar>) -> Result<i64, BuildError> {
    let n = ((w.dim() / 2) as f64).sqrt().round() as i64;
    if n < 2 || 2 * (n * n) as usize != w.dim() {
        return Err(BuildError::SmallN(n));
    }
    Ok(n)
}

fn idx(w: &HopfPresentation<CycloScalar>, s: Sector, i: i64, j: i64) -> Result<usize, HopfError> {
    w.index(&Label::new("w", s, vec![i, j]))
}

fn integer(k: i64) -> CycloScalar {
    CycloScalar::from_integer(k)
}

impl LieElements {
    pub fn new(w: &HopfPresentation<CycloScalar>) -> Result<Self, BuildError> {
        let n = order_of(w)?;
        let r = |e: i64| z(2 * n, e);
        let (mut e1, mut e2, mut sigma) = (Element::zero(), Element::zero(), Element::zero());
        let mut qe = Tensor2::zero();
        let mut q = Element::zero();
        for i in 0..n {
            for j in 0..n {
                let p = idx(w, Sector::Plus, i, j)?;
                e1.add_term(p, integer(i));
                e2.add_term(p, integer(j));
                sigma.add_term(idx(w, Sector::Minus, i, j)?, CycloScalar::one());
                q.add_term(p, r(i * j));
                for k in 0..n {
                    for l in 0..n {
                        qe.add_term((p, idx(w, Sector::Plus, k, l)?), r(2 * j * k));
                    }
                }
            }
        }
        let dq = comul(w, &q).map_err(|o| HopfError::from(o))?;
        let dq_inv: Tensor2<CycloScalar> = dq
            .iter()
            .map(|(k, c)| (*k, c.inv().expect("root of unity")))
            .collect();
        let twist =
            mul2(w, &mul2(w, &qe, &tensor(&q, &q)).expect("finite"), &dq_inv).expect("finite");
        Ok(LieElements {
            n,
            e1,
            e2,
            sigma,
            twist,
        })
    }

    /// `q^{e₁} = Σ q^i w+(i,j)`, `q^{e₂} = Σ q^j w+(i,j)`.
    pub fn exponential(
        &self,
        w: &HopfPresentation<CycloScalar>,
        which: usize,
    ) -> Element<CycloScalar> {
        let mut out = Element::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let e = if which == 1 { i } else { j };
                out.add_term(idx(w, Sector::Plus, i, j).unwrap(), z(self.n, e));
            }
        }
        out
    }

    pub fn naive_twist(&self, w: &HopfPresentation<CycloScalar>) -> Tensor2<CycloScalar> {
        let mut t = Tensor2::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    for l in 0..self.n {
                        let key = (
                            idx(w, Sector::Plus, i, j).unwrap(),
                            idx(w, Sector::Plus, k, l).unwrap(),
                        );
                        t.add_term(key, z(2 * self.n, j * k - i * l));
                    }
                }
            }
        }
        t
    }
}

fn eq_check(
    name: &str,
    w: &HopfPresentation<CycloScalar>,
    l: &Element<CycloScalar>,
    r: &Element<CycloScalar>,
) -> AxiomCheck {
    AxiomCheck::from_bool(name, l == r, 1, || Witness {
        tuple: vec![],
        residual: crate::hopf::format_element(w, &l.minus(r)),
    })
}

fn eq_check2(
    name: &str,
    w: &HopfPresentation<CycloScalar>,
    l: &Tensor2<CycloScalar>,
    r: &Tensor2<CycloScalar>,
) -> AxiomCheck {
    AxiomCheck::from_bool(name, l == r, 1, || Witness {
        tuple: vec![],
        residual: crate::hopf::format_tensor(w, &l.minus(r)),
    })
}

/// Builds `e₁, e₂, σ` in `𝒲(N)` and checks their relations and the twist identity.
pub fn build_lie_elements(
    w: &HopfPresentation<CycloScalar>,
) -> Result<(LieElements, LieReport), BuildError> {
    let el = LieElements::new(w)?;
    let n = el.n;
    let one = w.unit().into_owned();
    let m = |a: &Element<CycloScalar>, b: &Element<CycloScalar>| mul(w, a, b).expect("finite");
    let d = |a: &Element<CycloScalar>| comul(w, a).expect("finite");
    let mut checks = AxiomReport::default();
    checks.push(eq_check("σ² = 1", w, &m(&el.sigma, &el.sigma), &one));
    checks.push(eq_check(
        "e₁σ = σe₂",
        w,
        &m(&el.e1, &el.sigma),
        &m(&el.sigma, &el.e2),
    ));
    checks.push(eq_check(
        "[e₁, e₂] = 0",
        w,
        &m(&el.e1, &el.e2),
        &m(&el.e2, &el.e1),
    ));
    checks.push(eq_check(
        "e₁ self-adjoint",
        w,
        &star(w, &el.e1).expect("finite"),
        &el.e1,
    ));
    checks.push(eq_check(
        "e₂ self-adjoint",
        w,
        &star(w, &el.e2).expect("finite"),
        &el.e2,
    ));

    let mut bad = None;
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            let p = Element::basis(idx(w, Sector::Plus, i, j)?);
            let (s_p, p_s) = (m(&el.sigma, &p), m(&p, &el.sigma));
            let (want_l, want_r) = (
                Element::basis(idx(w, Sector::Minus, i, j)?),
                Element::basis(idx(w, Sector::Minus, j, i)?),
            );
            total += 1;
            if bad.is_none() && (s_p != want_l || p_s != want_r) {
                bad = Some(Witness {
                    tuple: vec![format!("w+({i},{j})")],
                    residual: crate::hopf::format_element(w, &s_p.minus(&want_l)),
                });
            }
        }
    }
    checks.push(match bad {
        None => AxiomCheck::pass("σ w+(m,n) = w-(m,n), w+(m,n) σ = w-(n,m)", total),
        Some(wt) => AxiomCheck::fail("σ w+(m,n) = w-(m,n), w+(m,n) σ = w-(n,m)", total, wt),
    });

    let nn = integer(n);
    for (k, e) in [(1, &el.e1), (2, &el.e2)] {
        let defect = d(e).minus(&tensor(e, &one)).minus(&tensor(&one, e));
        let divisible = defect.iter().all(|(_, c)| {
            c.to_rational()
                .map(|r| (r / nn.to_rational().unwrap()).is_integer())
                .unwrap_or(false)
        });
        checks.push(AxiomCheck::from_bool(
            &format!("Δe{k} - e{k}⊗1 - 1⊗e{k} ≡ 0 mod N"),
            divisible,
            defect.len() as u64,
            || Witness {
                tuple: vec![format!("e{k}")],
                residual: crate::hopf::format_tensor(w, &defect),
            },
        ));
        let x = el.exponential(w, k);
        checks.push(eq_check2(
            &format!("q^e{k} group-like"),
            w,
            &d(&x),
            &tensor(&x, &x),
        ));
    }

    let lhs = d(&el.sigma);
    let rhs = mul2(w, &tensor(&el.sigma, &el.sigma), &el.twist).expect("finite");
    checks.push(eq_check2(
        "Δσ = (σ⊗σ) q^{e₂⊗e₁} (Q⊗Q) Δ(Q)⁻¹",
        w,
        &lhs,
        &rhs,
    ));
    let naive = mul2(w, &tensor(&el.sigma, &el.sigma), &el.naive_twist(w)).expect("finite");
    let naive_twist_holds = naive == lhs;
    Ok((
        el,
        LieReport {
            checks,
            naive_twist_holds,
        },
    ))
}

/// `⟨w+(m,n), x+(k,l)⟩ = δ`, `⟨w-(m,n), x-(k,l)⟩ = q^{-mn/2} δ`.
pub fn w_t_pairing(n: i64, wi: usize, xi: usize) -> CycloScalar {
    let nn = (n * n) as usize;
    if wi != xi {
        return CycloScalar::zero();
    }
    if wi < nn {
        CycloScalar::one()
    } else {
        let r = (wi - nn) as i64;
        z(2 * n, -(r / n) * (r % n))
    }
}

/// The table of `h ▷ a = a₍₁₎ ⟨h, a₍₂₎⟩` for `𝒲(N)` acting on `T_q^f`.
pub fn action_table(
    w: &HopfPresentation<CycloScalar>,
    t: &HopfPresentation<CycloScalar>,
) -> Result<Vec<Element<CycloScalar>>, BuildError> {
    let n = order_of(w)?;
    let mut table = Vec::with_capacity(w.dim() * t.dim());
    for h in 0..w.dim() {
        for a in 0..t.dim() {
            let mut out = Element::zero();
            for ((a1, a2), c) in t.comul_basis(a).map_err(|o| HopfError::from(o))?.iter() {
                let p = w_t_pairing(n, h, *a2);
                if !p.is_zero() {
                    out.add_term(*a1, c.clone() * p);
                }
            }
            table.push(out);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{dual_w, kac_paljutkin};
    use crate::hopf::{verify_action, ActionMap, VerifyMode};

    #[test]
    fn relations_and_twist() {
        for n in 2..=4 {
            let w = dual_w(n).unwrap();
            let (_, r) = build_lie_elements(&w).unwrap();
            assert!(
                r.passed(),
                "N = {n}: {:?}",
                r.checks.failures().collect::<Vec<_>>()
            );
            assert!(!r.naive_twist_holds);
        }
    }

    #[test]
    fn twist_coefficients_closed_form() {
        // K = Σ q^{(2jk + ij + kl - [i+k][j+l])/2} w+(i,j) ⊗ w+(k,l)
        let n = 3;
        let w = dual_w(n).unwrap();
        let el = LieElements::new(&w).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let key = (
                            idx(&w, Sector::Plus, i, j).unwrap(),
                            idx(&w, Sector::Plus, k, l).unwrap(),
                        );
                        let e = 2 * j * k + i * j + k * l - ((i + k) % n) * ((j + l) % n);
                        assert_eq!(el.twist.get(&key), z(2 * n, e));
                    }
                }
            }
        }
        assert_eq!(el.twist.len(), (n * n * n * n) as usize);
    }

    fn element(
        t: &HopfPresentation<CycloScalar>,
        s: Sector,
        a: i64,
        b: i64,
    ) -> Element<CycloScalar> {
        t.basis(&Label::new("x", s, vec![a, b])).unwrap()
    }

    #[test]
    fn action_table_on_generators() {
        let w = dual_w(2).unwrap();
        let t = kac_paljutkin(2).unwrap();
        let table = action_table(&w, &t).unwrap();
        let act = ActionMap::new(&w, &t, table);
        assert!(verify_action(&act, VerifyMode::Full).passed());
        let el = LieElements::new(&w).unwrap();
        let (up, um) = (
            element(&t, Sector::Plus, 1, 0),
            element(&t, Sector::Minus, 1, 0),
        );
        let (vp, vm) = (
            element(&t, Sector::Plus, 0, 1),
            element(&t, Sector::Minus, 0, 1),
        );
        assert_eq!(act.act(&el.e1, &up), up);
        assert_eq!(act.act(&el.e1, &um), um);
        assert!(act.act(&el.e2, &up).is_zero());
        assert!(act.act(&el.e2, &um).is_zero());
        assert_eq!(act.act(&el.sigma, &up), vm);
        assert_eq!(act.act(&el.sigma, &um), vp);
    }

    #[test]
    fn corrupted_action_fails() {
        let w = dual_w(2).unwrap();
        let t = kac_paljutkin(2).unwrap();
        let mut table = action_table(&w, &t).unwrap();
        // send σ ▷ U+ to V+ instead of V-
        let h = idx(&w, Sector::Minus, 1, 0).unwrap();
        let a = t.index(&Label::new("x", Sector::Plus, vec![1, 0])).unwrap();
        let target = t.index(&Label::new("x", Sector::Plus, vec![0, 1])).unwrap();
        let entry = &mut table[h * t.dim() + a];
        assert!(!entry.is_zero());
        *entry = Element::basis(target);
        let act = ActionMap::new(&w, &t, table);
        let r = verify_action(&act, VerifyMode::Full);
        assert!(!r.passed());
        assert!(!r.get("module algebra").unwrap().passed());
    }
}
