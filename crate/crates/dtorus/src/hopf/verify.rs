//! Exhaustive axiom checks on basis tuples.

use rayon::prelude::*;
use serde::Serialize;

use super::{
    antipode, comul, counit, format_element, format_tensor, mul, mul2, star, tensor, Element,
    HopfAlgebra, Overflow, Tensor2, Tensor3,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Overflow,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<String>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub status: CheckStatus,
    pub checked: u64,
    /// Tuples outside the domain of the check (e.g. window products that leave the window).
    pub skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    pub fn pass(axiom: &str, checked: u64) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            status: CheckStatus::Pass,
            checked,
            skipped: 0,
            witness: None,
        }
    }

    pub fn fail(axiom: &str, checked: u64, witness: Witness) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            status: CheckStatus::Fail,
            checked,
            skipped: 0,
            witness: Some(witness),
        }
    }

    pub fn from_bool(
        axiom: &str,
        ok: bool,
        checked: u64,
        witness: impl FnOnce() -> Witness,
    ) -> Self {
        if ok {
            Self::pass(axiom, checked)
        } else {
            Self::fail(axiom, checked, witness())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// Smallest `k` with `S^k = id`, when found below the search bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipode_order: Option<u32>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn push(&mut self, c: AxiomCheck) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// Every axiom on every tuple.
    #[default]
    Full,
    /// Stop at the first failing tuple and skip the remaining axioms.
    FirstFailure,
}

pub(crate) enum Outcome {
    Ok,
    Skip,
    Fail(Witness),
    Overflow(Witness),
}

/// Run `f` on every tuple `0..count` and merge in index order.
pub(crate) fn run_check(
    axiom: &str,
    count: usize,
    mode: VerifyMode,
    f: impl Fn(usize) -> Outcome + Sync,
) -> AxiomCheck {
    let bad = |o: &Outcome| matches!(o, Outcome::Fail(_) | Outcome::Overflow(_));
    let outcomes: Vec<Outcome> = match mode {
        VerifyMode::Full => (0..count).into_par_iter().map(&f).collect(),
        VerifyMode::FirstFailure => {
            let first = (0..count)
                .into_par_iter()
                .map(&f)
                .enumerate()
                .find_first(|(_, o)| bad(o));
            match first {
                Some((k, o)) => {
                    let mut v: Vec<Outcome> = (0..k).map(|_| Outcome::Ok).collect();
                    v.push(o);
                    v
                }
                None => (0..count).map(|_| Outcome::Ok).collect(),
            }
        }
    };
    let mut check = AxiomCheck::pass(axiom, 0);
    for o in outcomes {
        match o {
            Outcome::Ok => check.checked += 1,
            Outcome::Skip => check.skipped += 1,
            Outcome::Fail(w) => {
                check.checked += 1;
                if check.status == CheckStatus::Pass {
                    check.status = CheckStatus::Fail;
                    check.witness = Some(w);
                }
            }
            Outcome::Overflow(w) => {
                check.checked += 1;
                if check.status == CheckStatus::Pass {
                    check.status = CheckStatus::Overflow;
                    check.witness = Some(w);
                }
            }
        }
    }
    check
}

fn labels<S: Scalar, H: HopfAlgebra<S> + ?Sized>(h: &H, t: &[usize]) -> Vec<String> {
    t.iter().map(|&i| h.label(i).to_string()).collect()
}

pub(crate) fn overflow_witness(tuple: Vec<String>, o: &Overflow) -> Outcome {
    Outcome::Overflow(Witness {
        tuple,
        residual: o.to_string(),
    })
}

/// Decode a flat tuple index into `arity` basis indices.
fn decode(mut k: usize, d: usize, arity: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = k % d;
        k /= d;
    }
    t
}

pub(crate) fn tensor3_string<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    t: &Tensor3<S>,
) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .take(6)
        .map(|((i, j, k), c)| format!("{c:?}*{}⊗{}⊗{}", h.label(*i), h.label(*j), h.label(*k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `(Δ ⊗ id) t` for `t` in `H ⊗ H`.
pub(crate) fn comul_left<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    t: &Tensor2<S>,
) -> Result<Tensor3<S>, Overflow> {
    let mut out = Tensor3::zero();
    for ((a, b), c) in t.iter() {
        for ((x, y), v) in h.comul_basis(*a)?.iter() {
            out.add_term((*x, *y, *b), c.clone() * v.clone());
        }
    }
    Ok(out)
}

pub(crate) fn comul_right<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    t: &Tensor2<S>,
) -> Result<Tensor3<S>, Overflow> {
    let mut out = Tensor3::zero();
    for ((a, b), c) in t.iter() {
        for ((x, y), v) in h.comul_basis(*b)?.iter() {
            out.add_term((*a, *x, *y), c.clone() * v.clone());
        }
    }
    Ok(out)
}

/// `(* ⊗ *) t`, antilinear.
pub(crate) fn star2<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    t: &Tensor2<S>,
) -> Result<Tensor2<S>, Overflow> {
    let mut out = Tensor2::zero();
    for ((a, b), c) in t.iter() {
        let (x, u) = h.star_basis(*a)?;
        let (y, v) = h.star_basis(*b)?;
        out.add_term((x, y), c.conjugate() * u * v);
    }
    Ok(out)
}

/// Verify every *-Hopf axiom exactly on basis tuples.
pub fn verify_hopf<S: Scalar, H: HopfAlgebra<S> + ?Sized>(h: &H, mode: VerifyMode) -> AxiomReport {
    let d = h.dim();
    let mut report = AxiomReport::default();
    let e = |i: usize| Element::<S>::basis(i);
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
    step!("unit", d, |i| {
        let u = h.unit();
        match (mul(h, &u, &e(i)), mul(h, &e(i), &u)) {
            (Ok(l), Ok(r)) if l == e(i) && r == e(i) => Outcome::Ok,
            (Ok(l), Ok(r)) => {
                let res = if l != e(i) {
                    l.minus(&e(i))
                } else {
                    r.minus(&e(i))
                };
                Outcome::Fail(Witness {
                    tuple: labels(h, &[i]),
                    residual: format_element(h, &res),
                })
            }
            (Err(o), _) | (_, Err(o)) => overflow_witness(labels(h, &[i]), &o),
        }
    });
    step!("counit", d, |i| {
        let t = match h.comul_basis(i) {
            Ok(t) => t.into_owned(),
            Err(o) => return overflow_witness(labels(h, &[i]), &o),
        };
        let mut l = Element::zero();
        let mut r = Element::zero();
        for ((a, b), c) in t.iter() {
            l.add_term(*b, c.clone() * h.counit_basis(*a));
            r.add_term(*a, c.clone() * h.counit_basis(*b));
        }
        if l == e(i) && r == e(i) {
            Outcome::Ok
        } else {
            let res = if l != e(i) {
                l.minus(&e(i))
            } else {
                r.minus(&e(i))
            };
            Outcome::Fail(Witness {
                tuple: labels(h, &[i]),
                residual: format_element(h, &res),
            })
        }
    });
    step!("unit compatibility", 1, |_| {
        let u = h.unit().into_owned();
        match comul(h, &u) {
            Ok(du) => {
                let uu = tensor(&u, &u);
                let eu = counit(h, &u);
                if du != uu {
                    Outcome::Fail(Witness {
                        tuple: vec!["1".into()],
                        residual: format_tensor(h, &du.minus(&uu)),
                    })
                } else if !(eu.clone() - S::one()).is_zero() {
                    Outcome::Fail(Witness {
                        tuple: vec!["1".into()],
                        residual: format!("ε(1) - 1 = {:?}", eu - S::one()),
                    })
                } else {
                    Outcome::Ok
                }
            }
            Err(o) => overflow_witness(vec!["1".into()], &o),
        }
    });
    step!(
        "star involution",
        d,
        |i| match star(h, &e(i)).and_then(|s| star(h, &s)) {
            Ok(ss) if ss == e(i) => Outcome::Ok,
            Ok(ss) => Outcome::Fail(Witness {
                tuple: labels(h, &[i]),
                residual: format_element(h, &ss.minus(&e(i)))
            }),
            Err(o) => overflow_witness(labels(h, &[i]), &o),
        }
    );
    step!("star comultiplication", d, |i| {
        let run = || -> Result<Option<Tensor2<S>>, Overflow> {
            let lhs = comul(h, &star(h, &e(i))?)?;
            let rhs = star2(h, &*h.comul_basis(i)?)?;
            Ok((lhs != rhs).then(|| lhs.minus(&rhs)))
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some(r)) => Outcome::Fail(Witness {
                tuple: labels(h, &[i]),
                residual: format_tensor(h, &r),
            }),
            Err(o) => overflow_witness(labels(h, &[i]), &o),
        }
    });
    step!("antipode", d, |i| {
        let run = || -> Result<Option<Element<S>>, Overflow> {
            let t = h.comul_basis(i)?;
            let target = h.unit().scale(&h.counit_basis(i));
            let mut l = Element::zero();
            let mut r = Element::zero();
            for ((a, b), c) in t.iter() {
                l.add_scaled(&mul(h, &*h.antipode_basis(*a)?, &e(*b))?, c);
                r.add_scaled(&mul(h, &e(*a), &*h.antipode_basis(*b)?)?, c);
            }
            Ok(if l != target {
                Some(l.minus(&target))
            } else if r != target {
                Some(r.minus(&target))
            } else {
                None
            })
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some(r)) => Outcome::Fail(Witness {
                tuple: labels(h, &[i]),
                residual: format_element(h, &r),
            }),
            Err(o) => overflow_witness(labels(h, &[i]), &o),
        }
    });
    step!("coassociativity", d, |i| {
        let run = || -> Result<Option<Tensor3<S>>, Overflow> {
            let t = h.comul_basis(i)?;
            let l = comul_left(h, &t)?;
            let r = comul_right(h, &t)?;
            Ok((l != r).then(|| l.minus(&r)))
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some(r)) => Outcome::Fail(Witness {
                tuple: labels(h, &[i]),
                residual: tensor3_string(h, &r),
            }),
            Err(o) => overflow_witness(labels(h, &[i]), &o),
        }
    });
    step!("counit multiplicative", d * d, |k| {
        let t = decode(k, d, 2);
        match h.mul_basis(t[0], t[1]) {
            Ok(p) => {
                let l = counit(h, &p);
                let r = h.counit_basis(t[0]) * h.counit_basis(t[1]);
                if l == r {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        tuple: labels(h, &t),
                        residual: format!("{:?}", l - r),
                    })
                }
            }
            Err(o) => overflow_witness(labels(h, &t), &o),
        }
    });
    step!("star antimultiplicative", d * d, |k| {
        let t = decode(k, d, 2);
        let run = || -> Result<Option<Element<S>>, Overflow> {
            let l = star(h, &*h.mul_basis(t[0], t[1])?)?;
            let r = mul(h, &star(h, &e(t[1]))?, &star(h, &e(t[0]))?)?;
            Ok((l != r).then(|| l.minus(&r)))
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some(r)) => Outcome::Fail(Witness {
                tuple: labels(h, &t),
                residual: format_element(h, &r),
            }),
            Err(o) => overflow_witness(labels(h, &t), &o),
        }
    });
    step!("associativity", d * d, |k| {
        let t = decode(k, d, 2);
        let run = || -> Result<Option<(usize, Element<S>)>, Overflow> {
            let ab = h.mul_basis(t[0], t[1])?;
            for c in 0..d {
                let l = mul(h, &ab, &e(c))?;
                let r = mul(h, &e(t[0]), &*h.mul_basis(t[1], c)?)?;
                if l != r {
                    return Ok(Some((c, l.minus(&r))));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some((c, r))) => Outcome::Fail(Witness {
                tuple: labels(h, &[t[0], t[1], c]),
                residual: format_element(h, &r),
            }),
            Err(o) => overflow_witness(labels(h, &t), &o),
        }
    });
    step!("comultiplication multiplicative", d * d, |k| {
        let t = decode(k, d, 2);
        let run = || -> Result<Option<Tensor2<S>>, Overflow> {
            let l = comul(h, &*h.mul_basis(t[0], t[1])?)?;
            let r = mul2(h, &*h.comul_basis(t[0])?, &*h.comul_basis(t[1])?)?;
            Ok((l != r).then(|| l.minus(&r)))
        };
        match run() {
            Ok(None) => Outcome::Ok,
            Ok(Some(r)) => Outcome::Fail(Witness {
                tuple: labels(h, &t),
                residual: format_tensor(h, &r),
            }),
            Err(o) => overflow_witness(labels(h, &t), &o),
        }
    });
    report.antipode_order = antipode_order(h, 64);
    report
}

/// Order of `S` as a linear map, searched up to `bound`.
pub fn antipode_order<S: Scalar, H: HopfAlgebra<S> + ?Sized>(h: &H, bound: u32) -> Option<u32> {
    let d = h.dim();
    let mut current: Vec<Element<S>> = (0..d).map(Element::basis).collect();
    for k in 1..=bound {
        for v in current.iter_mut() {
            *v = antipode(h, v).ok()?;
        }
        if current
            .iter()
            .enumerate()
            .all(|(i, v)| *v == Element::basis(i))
        {
            return Some(k);
        }
    }
    None
}
