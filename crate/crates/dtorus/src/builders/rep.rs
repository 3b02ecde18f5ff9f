//! The representation of `DT_q` on `l²(Z²) ⊕ l²(Z²)`, truncated to `[-D, D]²`.

use num_traits::One;

use super::windows::BoxIndex;
use super::{z, BuildError};
use crate::hopf::verify::{run_check, Outcome};
use crate::hopf::{AxiomReport, Element, Overflow, VerifyMode, Witness};
use crate::scalar::CycloScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    U,
    V,
    UStar,
    VStar,
    PPlus,
    PMinus,
}

/// `U|n,m,±⟩ = |n+1,m,±⟩`, `V|n,m,+⟩ = |n,m+1,+⟩`, `V|n,m,-⟩ = q^n |n,m+1,-⟩`.
#[derive(Debug, Clone)]
pub struct RepWindow {
    pub n: i64,
    boxi: BoxIndex,
}

impl RepWindow {
    pub fn dim(&self) -> usize {
        2 * self.boxi.len()
    }

    pub fn degree(&self) -> i64 {
        self.boxi.degree
    }

    pub fn index(&self, n: i64, m: i64, minus: bool) -> Result<usize, Overflow> {
        self.boxi
            .encode(&[n, m])
            .map(|k| k + if minus { self.boxi.len() } else { 0 })
            .ok_or_else(|| Overflow(format!("|{n},{m}⟩ leaves the window")))
    }

    pub fn parts(&self, k: usize) -> (i64, i64, bool) {
        let v = self.boxi.decode(k % self.boxi.len());
        (v[0], v[1], k >= self.boxi.len())
    }

    pub fn ket(&self, n: i64, m: i64, minus: bool) -> Element<CycloScalar> {
        Element::basis(self.index(n, m, minus).unwrap())
    }

    fn q(&self, e: i64) -> CycloScalar {
        z(self.n, e)
    }

    pub fn apply_basis(&self, op: Op, k: usize) -> Result<Element<CycloScalar>, Overflow> {
        let (n, m, minus) = self.parts(k);
        let one = CycloScalar::one();
        let phase = |e: i64| if minus { self.q(e) } else { CycloScalar::one() };
        Ok(match op {
            Op::U => Element::single(self.index(n + 1, m, minus)?, one),
            Op::UStar => Element::single(self.index(n - 1, m, minus)?, one),
            Op::V => Element::single(self.index(n, m + 1, minus)?, phase(n)),
            Op::VStar => Element::single(self.index(n, m - 1, minus)?, phase(-n)),
            Op::PPlus if !minus => Element::basis(k),
            Op::PMinus if minus => Element::basis(k),
            _ => Element::zero(),
        })
    }

    pub fn apply(
        &self,
        op: Op,
        v: &Element<CycloScalar>,
    ) -> Result<Element<CycloScalar>, Overflow> {
        let mut out = Element::zero();
        for (k, c) in v.iter() {
            out.add_scaled(&self.apply_basis(op, *k)?, c);
        }
        Ok(out)
    }

    /// Apply a word, rightmost operator first.
    pub fn apply_word(
        &self,
        word: &[Op],
        v: &Element<CycloScalar>,
    ) -> Result<Element<CycloScalar>, Overflow> {
        let mut out = v.clone();
        for op in word.iter().rev() {
            out = self.apply(*op, &out)?;
        }
        Ok(out)
    }

    /// Basis vectors at distance at least one from the boundary.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| {
                let (n, m, _) = self.parts(k);
                n.abs() < self.boxi.degree && m.abs() < self.boxi.degree
            })
            .collect()
    }

    /// The relations of `DT_q` together with unitarity, on every interior vector.
    pub fn verify(&self) -> AxiomReport {
        use Op::*;
        let interior = self.interior();
        type Rel = (&'static str, Vec<(Vec<Op>, i64)>);
        // each relation: Σ coeff(q^e) * word = 0, with None meaning "identity"
        let rels: Vec<Rel> = vec![
            (
                "P+ + P- = 1",
                vec![(vec![PPlus], 0), (vec![PMinus], 0), (vec![], -1)],
            ),
            (
                "P+ U = U P+",
                vec![(vec![PPlus, U], 0), (vec![U, PPlus], -1)],
            ),
            (
                "P+ V = V P+",
                vec![(vec![PPlus, V], 0), (vec![V, PPlus], -1)],
            ),
            (
                "P+^2 = P+",
                vec![(vec![PPlus, PPlus], 0), (vec![PPlus], -1)],
            ),
            ("U* U = 1", vec![(vec![UStar, U], 0), (vec![], -1)]),
            ("U U* = 1", vec![(vec![U, UStar], 0), (vec![], -1)]),
            ("V* V = 1", vec![(vec![VStar, V], 0), (vec![], -1)]),
            ("V V* = 1", vec![(vec![V, VStar], 0), (vec![], -1)]),
        ];
        let mut report = AxiomReport::default();
        for (name, terms) in rels {
            report.push(run_check(name, interior.len(), VerifyMode::Full, |t| {
                let v = Element::basis(interior[t]);
                let mut acc = Element::zero();
                for (w, sign) in &terms {
                    let s = if *sign < 0 {
                        -CycloScalar::one()
                    } else {
                        CycloScalar::one()
                    };
                    match self.apply_word(w, &v) {
                        Ok(x) => acc.add_scaled(&x, &s),
                        Err(o) => {
                            return Outcome::Overflow(Witness {
                                tuple: vec![self.describe(interior[t])],
                                residual: o.to_string(),
                            })
                        }
                    }
                }
                self.outcome(interior[t], &acc)
            }));
        }
        report.push(run_check(
            "V U = P+ U V + q P- U V",
            interior.len(),
            VerifyMode::Full,
            |t| {
                let v = Element::basis(interior[t]);
                let run = || -> Result<Element<CycloScalar>, Overflow> {
                    let l = self.apply_word(&[V, U], &v)?;
                    let r1 = self.apply_word(&[PPlus, U, V], &v)?;
                    let r2 = self.apply_word(&[PMinus, U, V], &v)?.scale(&self.q(1));
                    Ok(l.minus(&r1).minus(&r2))
                };
                match run() {
                    Ok(r) => self.outcome(interior[t], &r),
                    Err(o) => Outcome::Overflow(Witness {
                        tuple: vec![self.describe(interior[t])],
                        residual: o.to_string(),
                    }),
                }
            },
        ));
        report.push(run_check(
            "V|n,m,-⟩ = q^n |n,m+1,-⟩",
            interior.len(),
            VerifyMode::Full,
            |t| {
                let (n, m, minus) = self.parts(interior[t]);
                let got = self.apply_basis(V, interior[t]).unwrap();
                let want = self.ket(n, m + 1, minus).scale(&if minus {
                    self.q(n)
                } else {
                    CycloScalar::one()
                });
                self.outcome(interior[t], &got.minus(&want))
            },
        ));
        report
    }

    fn describe(&self, k: usize) -> String {
        let (n, m, minus) = self.parts(k);
        format!("|{n},{m},{}⟩", if minus { "-" } else { "+" })
    }

    fn outcome(&self, k: usize, residual: &Element<CycloScalar>) -> Outcome {
        if residual.is_zero() {
            Outcome::Ok
        } else {
            let terms: Vec<String> = residual
                .iter()
                .map(|(i, c)| format!("({c:?}){}", self.describe(*i)))
                .collect();
            Outcome::Fail(Witness {
                tuple: vec![self.describe(k)],
                residual: terms.join(" + "),
            })
        }
    }
}

/// The representation at `q = zeta_N` on `[-D, D]²`.
pub fn build_rep_window(n: i64, degree: i64) -> Result<RepWindow, BuildError> {
    if n < 2 {
        return Err(BuildError::SmallN(n));
    }
    if degree < 1 {
        return Err(BuildError::SmallWindow {
            got: degree,
            min: 1,
        });
    }
    Ok(RepWindow {
        n,
        boxi: BoxIndex { rank: 2, degree },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_in_the_interior() {
        for n in 2..=4 {
            let r = build_rep_window(n, 3).unwrap().verify();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn v_on_minus_sector() {
        let w = build_rep_window(3, 2).unwrap();
        let k = w.index(1, 0, true).unwrap();
        assert_eq!(
            w.apply_basis(Op::V, k).unwrap(),
            w.ket(1, 1, true).scale(&z(3, 1))
        );
        // V U - q U V vanishes on the minus sector
        let v = w.ket(0, 0, true);
        let l = w.apply_word(&[Op::V, Op::U], &v).unwrap();
        let r = w.apply_word(&[Op::U, Op::V], &v).unwrap().scale(&z(3, 1));
        assert_eq!(l, r);
        assert!(w.apply_basis(Op::U, w.index(2, 0, false).unwrap()).is_err());
    }
}
