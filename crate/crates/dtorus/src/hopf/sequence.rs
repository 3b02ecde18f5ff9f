//! Exactness of `K --i--> H --j--> Q` on a degree-bounded part of `H`.

use serde::Serialize;

use super::maps::HopfMap;
use super::verify::{run_check, Outcome};
use super::{counit, format_element, mul, AxiomCheck, Element, Overflow, VerifyMode, Witness};
use crate::linalg::Echelon;
use crate::scalar::Scalar;

/// Constructive reduction of the middle algebra modulo the ideal generated
/// by `i(g) for g in generators`.
pub trait KernelReduction<S: Scalar>: Sync {
    /// Elements of the subalgebra in the kernel of its counit.
    fn generators(&self) -> Vec<Element<S>>;
    /// Middle basis elements inside the degree bound.
    fn in_domain(&self, m: usize) -> bool;
    /// `(red, p)` with `b_m - red = sum_k p_k i(g_k)`.
    fn reduce_basis(&self, m: usize) -> Result<(Element<S>, Vec<Element<S>>), Overflow>;
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub composition: AxiomCheck,
    pub generators: AxiomCheck,
    pub kernel: AxiomCheck,
    pub kernel_dim: usize,
    pub domain_dim: usize,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.composition.passed() && self.generators.passed() && self.kernel.passed()
    }
}

/// Coefficients `P_k` with `v = sum_k P_k i(g_k)` assembled from the basis reductions.
pub fn decompose<S: Scalar>(
    red: &dyn KernelReduction<S>,
    ngen: usize,
    v: &Element<S>,
) -> Result<(Element<S>, Vec<Element<S>>), Overflow> {
    let mut reduced = Element::zero();
    let mut p = vec![Element::zero(); ngen];
    for (m, c) in v.iter() {
        let (r, pm) = red.reduce_basis(*m)?;
        reduced.add_scaled(&r, c);
        for (acc, x) in p.iter_mut().zip(&pm) {
            acc.add_scaled(x, c);
        }
    }
    Ok((reduced, p))
}

/// Check `j i = ε 1` on the sub-basis and that every kernel vector of `j`
/// supported in the bounded domain lies in the ideal, with zero residual.
pub fn verify_exact_sequence<S: Scalar>(
    i: &HopfMap<'_, S>,
    j: &HopfMap<'_, S>,
    red: &dyn KernelReduction<S>,
) -> SequenceReport {
    let (sub, mid, quo) = (i.source, i.target, j.target);
    let composition = run_check("j∘i = ε·1", sub.dim(), VerifyMode::Full, |x| {
        let l = j.apply(&i.images[x]);
        let r = quo.unit().scale(&sub.counit_basis(x));
        if l == r {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                tuple: vec![sub.label(x).to_string()],
                residual: format_element(quo, &l.minus(&r)),
            })
        }
    });
    let gens = red.generators();
    let generators = run_check(
        "generators in ker ε and ker j",
        gens.len(),
        VerifyMode::Full,
        |k| {
            let g = &gens[k];
            let e = counit(sub, g);
            let jg = j.apply(&i.apply(g));
            if e.is_zero() && jg.is_zero() {
                Outcome::Ok
            } else {
                Outcome::Fail(Witness {
                    tuple: vec![format_element(sub, g)],
                    residual: format!("ε = {e:?}, j = {}", format_element(quo, &jg)),
                })
            }
        },
    );
    let mid_gens: Vec<Element<S>> = gens.iter().map(|g| i.apply(g)).collect();

    // Kernel of j restricted to the bounded domain.
    let domain: Vec<usize> = (0..mid.dim()).filter(|&m| red.in_domain(m)).collect();
    let mut ech = Echelon::new(domain.len());
    for q in 0..quo.dim() {
        let row: Vec<S> = domain.iter().map(|&m| j.images[m].get(&q)).collect();
        if row.iter().any(|c| !c.is_zero()) {
            ech.insert(row);
        }
    }
    let kernel: Vec<Element<S>> = ech
        .nullspace_sparse()
        .into_iter()
        .map(|v| Element::from_terms(v.into_iter().map(|(c, x)| (domain[c], x))))
        .collect();
    let kernel_dim = kernel.len();
    let kernel_check = run_check(
        "kernel decomposition",
        kernel.len(),
        VerifyMode::Full,
        |k| {
            let v = &kernel[k];
            let run = || -> Result<Element<S>, Overflow> {
                let (_, p) = decompose(red, mid_gens.len(), v)?;
                let mut r = v.clone();
                for (pk, gk) in p.iter().zip(&mid_gens) {
                    r = r.minus(&mul(mid, pk, gk)?);
                }
                Ok(r)
            };
            match run() {
                Ok(r) if r.is_zero() => Outcome::Ok,
                Ok(r) => Outcome::Fail(Witness {
                    tuple: vec![format_element(mid, v)],
                    residual: format_element(mid, &r),
                }),
                Err(o) => Outcome::Overflow(Witness {
                    tuple: vec![format_element(mid, v)],
                    residual: o.to_string(),
                }),
            }
        },
    );
    SequenceReport {
        composition,
        generators,
        kernel: kernel_check,
        kernel_dim,
        domain_dim: domain.len(),
    }
}
