//! Linear maps between presentations and Hopf actions on algebras.

use super::verify::{overflow_witness, run_check, Outcome};
use super::{
    antipode, comul, counit, format_element, format_tensor, mul, AxiomReport, Element, HopfAlgebra,
    Overflow, Tensor2, VerifyMode, Witness,
};
use crate::scalar::Scalar;

/// A linear map given by the images of the source basis.
pub struct HopfMap<'a, S> {
    pub source: &'a dyn HopfAlgebra<S>,
    pub target: &'a dyn HopfAlgebra<S>,
    pub images: Vec<Element<S>>,
}

impl<'a, S: Scalar> HopfMap<'a, S> {
    pub fn new(
        source: &'a dyn HopfAlgebra<S>,
        target: &'a dyn HopfAlgebra<S>,
        images: Vec<Element<S>>,
    ) -> Self {
        assert_eq!(
            images.len(),
            source.dim(),
            "one image per source basis element"
        );
        HopfMap {
            source,
            target,
            images,
        }
    }

    pub fn identity(h: &'a dyn HopfAlgebra<S>) -> Self {
        Self::new(h, h, (0..h.dim()).map(Element::basis).collect())
    }

    pub fn apply(&self, a: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (i, c) in a.iter() {
            out.add_scaled(&self.images[*i], c);
        }
        out
    }

    pub fn apply2(&self, t: &Tensor2<S>) -> Tensor2<S> {
        let mut out = Tensor2::zero();
        for ((i, j), c) in t.iter() {
            for (x, u) in self.images[*i].iter() {
                for (y, v) in self.images[*j].iter() {
                    out.add_term((*x, *y), c.clone() * u.clone() * v.clone());
                }
            }
        }
        out
    }

    /// Dense matrix, target rows by source columns.
    pub fn matrix(&self) -> Vec<Vec<S>> {
        let mut m = vec![vec![S::zero(); self.source.dim()]; self.target.dim()];
        for (j, img) in self.images.iter().enumerate() {
            for (i, c) in img.iter() {
                m[*i][j] = c.clone();
            }
        }
        m
    }
}

fn src_labels<S: Scalar>(f: &HopfMap<'_, S>, t: &[usize]) -> Vec<String> {
    t.iter().map(|&i| f.source.label(i).to_string()).collect()
}

/// Check `f m = m (f ⊗ f)`, `f(1) = 1`, `(f ⊗ f) Δ = Δ f`, `ε f = ε`, `f S = S f`.
///
/// Source products that leave a window are outside the domain and counted as skipped.
pub fn verify_morphism<S: Scalar>(f: &HopfMap<'_, S>, mode: VerifyMode) -> AxiomReport {
    let d = f.source.dim();
    let (src, tgt) = (f.source, f.target);
    let mut report = AxiomReport::default();
    macro_rules! step {
        ($name:expr, $count:expr, $f:expr) => {{
            let c = run_check($name, $count, mode, $f);
            let failed = !c.passed();
            report.push(c);
            if failed && mode == VerifyMode::FirstFailure {
                return report;
            }
        }};
    }
    step!("counit", d, |i| {
        let l = counit(tgt, &f.images[i]);
        let r = src.counit_basis(i);
        if l == r {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                tuple: src_labels(f, &[i]),
                residual: format!("{:?}", l - r),
            })
        }
    });
    step!("unital", 1, |_| {
        let l = f.apply(&src.unit());
        let r = tgt.unit().into_owned();
        if l == r {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                tuple: vec!["1".into()],
                residual: format_element(tgt, &l.minus(&r)),
            })
        }
    });
    step!("antipode", d, |i| {
        let Ok(s) = src.antipode_basis(i) else {
            return Outcome::Skip;
        };
        let l = f.apply(&s);
        match antipode(tgt, &f.images[i]) {
            Ok(r) if l == r => Outcome::Ok,
            Ok(r) => Outcome::Fail(Witness {
                tuple: src_labels(f, &[i]),
                residual: format_element(tgt, &l.minus(&r)),
            }),
            Err(o) => overflow_witness(src_labels(f, &[i]), &o),
        }
    });
    step!("comultiplicative", d, |i| {
        let Ok(t) = src.comul_basis(i) else {
            return Outcome::Skip;
        };
        let l = f.apply2(&t);
        match comul(tgt, &f.images[i]) {
            Ok(r) if l == r => Outcome::Ok,
            Ok(r) => Outcome::Fail(Witness {
                tuple: src_labels(f, &[i]),
                residual: format_tensor(tgt, &l.minus(&r)),
            }),
            Err(o) => overflow_witness(src_labels(f, &[i]), &o),
        }
    });
    step!("multiplicative", d * d, |k| {
        let (i, j) = (k / d, k % d);
        let Ok(p) = src.mul_basis(i, j) else {
            return Outcome::Skip;
        };
        let l = f.apply(&p);
        match mul(tgt, &f.images[i], &f.images[j]) {
            Ok(r) if l == r => Outcome::Ok,
            Ok(r) => Outcome::Fail(Witness {
                tuple: src_labels(f, &[i, j]),
                residual: format_element(tgt, &l.minus(&r)),
            }),
            Err(o) => overflow_witness(src_labels(f, &[i, j]), &o),
        }
    });
    report
}

/// A left action `h ▷ a` given on basis pairs, indexed `h * dim(A) + a`.
pub struct ActionMap<'a, S> {
    pub hopf: &'a dyn HopfAlgebra<S>,
    pub algebra: &'a dyn HopfAlgebra<S>,
    pub table: Vec<Element<S>>,
}

impl<'a, S: Scalar> ActionMap<'a, S> {
    pub fn new(
        hopf: &'a dyn HopfAlgebra<S>,
        algebra: &'a dyn HopfAlgebra<S>,
        table: Vec<Element<S>>,
    ) -> Self {
        assert_eq!(table.len(), hopf.dim() * algebra.dim());
        ActionMap {
            hopf,
            algebra,
            table,
        }
    }

    pub fn from_fn(
        hopf: &'a dyn HopfAlgebra<S>,
        algebra: &'a dyn HopfAlgebra<S>,
        f: impl Fn(usize, usize) -> Element<S>,
    ) -> Self {
        let da = algebra.dim();
        let table = (0..hopf.dim() * da).map(|k| f(k / da, k % da)).collect();
        Self::new(hopf, algebra, table)
    }

    pub fn basis(&self, h: usize, a: usize) -> &Element<S> {
        &self.table[h * self.algebra.dim() + a]
    }

    pub fn act(&self, h: &Element<S>, a: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (i, x) in h.iter() {
            for (j, y) in a.iter() {
                out.add_scaled(self.basis(*i, *j), &(x.clone() * y.clone()));
            }
        }
        out
    }
}

/// Module axioms plus the module-algebra law `h ▷ (ab) = (h₁ ▷ a)(h₂ ▷ b)` and `h ▷ 1 = ε(h) 1`.
pub fn verify_action<S: Scalar>(act: &ActionMap<'_, S>, mode: VerifyMode) -> AxiomReport {
    let (hd, ad) = (act.hopf.dim(), act.algebra.dim());
    let (h, a) = (act.hopf, act.algebra);
    let lab = |hs: &[usize], as_: &[usize]| -> Vec<String> {
        hs.iter()
            .map(|&i| h.label(i).to_string())
            .chain(as_.iter().map(|&j| a.label(j).to_string()))
            .collect()
    };
    let mut report = AxiomReport::default();
    macro_rules! step {
        ($name:expr, $count:expr, $f:expr) => {{
            let c = run_check($name, $count, mode, $f);
            let failed = !c.passed();
            report.push(c);
            if failed && mode == VerifyMode::FirstFailure {
                return report;
            }
        }};
    }
    step!("unit acts trivially", ad, |j| {
        let l = act.act(&h.unit(), &Element::basis(j));
        if l == Element::basis(j) {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                tuple: lab(&[], &[j]),
                residual: format_element(a, &l.minus(&Element::basis(j))),
            })
        }
    });
    step!("unit preserved", hd, |i| {
        let l = act.act(&Element::basis(i), &a.unit());
        let r = a.unit().scale(&h.counit_basis(i));
        if l == r {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                tuple: lab(&[i], &[]),
                residual: format_element(a, &l.minus(&r)),
            })
        }
    });
    step!("module", hd * hd, |k| {
        let (g, x) = (k / hd, k % hd);
        let run = || -> Result<Option<(usize, Element<S>)>, Overflow> {
            let gx = h.mul_basis(g, x)?;
            for j in 0..ad {
                let l = act.act(&gx, &Element::basis(j));
                let r = act.act(&Element::basis(g), act.basis(x, j));
                if l != r {
                    return Ok(Some((j, l.minus(&r))));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some((j, r))) => Outcome::Fail(Witness {
                tuple: lab(&[g, x], &[j]),
                residual: format_element(a, &r),
            }),
            Err(o) => overflow_witness(lab(&[g, x], &[]), &o),
        }
    });
    step!("module algebra", hd * ad, |k| {
        let (i, x) = (k / ad, k % ad);
        let run = || -> Result<Option<(usize, Element<S>)>, Overflow> {
            let dh = h.comul_basis(i)?;
            for y in 0..ad {
                let l = act.act(&Element::basis(i), &*a.mul_basis(x, y)?);
                let mut r = Element::zero();
                for ((h1, h2), c) in dh.iter() {
                    let p = mul(a, act.basis(*h1, x), act.basis(*h2, y))?;
                    r.add_scaled(&p, c);
                }
                if l != r {
                    return Ok(Some((y, l.minus(&r))));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some((y, r))) => Outcome::Fail(Witness {
                tuple: lab(&[i], &[x, y]),
                residual: format_element(a, &r),
            }),
            Err(o) => overflow_witness(lab(&[i], &[x]), &o),
        }
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::group_algebra;
    use crate::scalar::CycloScalar;
    use crate::symmetry::PermGroup;

    #[test]
    fn identity_and_counit_action() {
        let h = group_algebra::<CycloScalar>(&PermGroup::cyclic(3));
        let id = HopfMap::identity(&h);
        assert!(verify_morphism(&id, VerifyMode::Full).passed());
        let triv = ActionMap::from_fn(&h, &h, |i, j| Element::basis(j).scale(&h.counit_basis(i)));
        assert!(verify_action(&triv, VerifyMode::Full).passed());
    }
}
