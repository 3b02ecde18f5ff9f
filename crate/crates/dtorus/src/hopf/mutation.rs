//! Single-constant mutations used to confirm the verifier detects corruption.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{verify_hopf, HopfAlgebra, HopfPresentation, VerifyMode};
use crate::scalar::Scalar;

/// Location of one nonzero structure constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Site {
    Mult { i: usize, j: usize, k: usize },
    Comult { i: usize, a: usize, b: usize },
    Counit(usize),
    Antipode { i: usize, k: usize },
    Star(usize),
    Unit(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct MutationOutcome {
    pub site: Site,
    pub detected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_axiom: Option<String>,
}

pub fn sites<S: Scalar>(h: &HopfPresentation<S>) -> Vec<Site> {
    let d = h.dim();
    let mut out = Vec::new();
    for (ij, e) in h.mult.iter().enumerate() {
        out.extend(e.iter().map(|(k, _)| Site::Mult {
            i: ij / d,
            j: ij % d,
            k: *k,
        }));
    }
    for (i, t) in h.comult.iter().enumerate() {
        out.extend(t.iter().map(|((a, b), _)| Site::Comult { i, a: *a, b: *b }));
    }
    out.extend(
        h.counit
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| Site::Counit(i)),
    );
    for (i, e) in h.antipode.iter().enumerate() {
        out.extend(e.iter().map(|(k, _)| Site::Antipode { i, k: *k }));
    }
    out.extend((0..d).map(Site::Star));
    out.extend(h.unit.iter().map(|(k, _)| Site::Unit(*k)));
    out
}

/// Copy of `h` with the constant at `site` scaled by `factor`.
pub fn mutate<S: Scalar>(h: &HopfPresentation<S>, site: Site, factor: &S) -> HopfPresentation<S> {
    let mut m = h.clone();
    let d = h.dim();
    let bump = |c: &S| c.clone() * factor.clone() - c.clone();
    match site {
        Site::Mult { i, j, k } => {
            let c = m.mult[i * d + j].get(&k);
            m.mult[i * d + j].add_term(k, bump(&c));
        }
        Site::Comult { i, a, b } => {
            let c = m.comult[i].get(&(a, b));
            m.comult[i].add_term((a, b), bump(&c));
        }
        Site::Counit(i) => m.counit[i] = m.counit[i].clone() * factor.clone(),
        Site::Antipode { i, k } => {
            let c = m.antipode[i].get(&k);
            m.antipode[i].add_term(k, bump(&c));
        }
        Site::Star(i) => m.star[i].1 = m.star[i].1.clone() * factor.clone(),
        Site::Unit(k) => {
            let c = m.unit.get(&k);
            m.unit.add_term(k, bump(&c));
        }
    }
    m
}

/// Double `count` seeded nonzero constants, one at a time, and re-verify each.
pub fn mutation_test<S: Scalar>(
    h: &HopfPresentation<S>,
    count: usize,
    seed: u64,
) -> Vec<MutationOutcome> {
    let all = sites(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = sample(&mut rng, all.len(), count.min(all.len()));
    let two = S::from_i64(2);
    picks
        .into_iter()
        .map(|p| {
            let site = all[p];
            let report = verify_hopf(&mutate(h, site, &two), VerifyMode::FirstFailure);
            let failed_axiom = report.failures().next().map(|c| c.axiom.clone());
            MutationOutcome {
                site,
                detected: failed_axiom.is_some(),
                failed_axiom,
            }
        })
        .collect()
}
