//! JSON structure-constant documents for presentations over `Q(zeta_M)`.

use serde::{Deserialize, Serialize};

use super::{Element, HopfError, HopfPresentation, Label, Tensor2};
use crate::scalar::{format_rational, parse_rational, CycloScalar, ScalarError};

pub type Coeff = Vec<String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub dim: usize,
    pub labels: Vec<Label>,
    pub mult: Vec<(usize, usize, usize, Coeff)>,
    pub comult: Vec<(usize, usize, usize, Coeff)>,
    pub counit: Vec<Coeff>,
    pub antipode: Vec<(usize, usize, Coeff)>,
    pub star: Vec<(usize, usize, Coeff)>,
    pub unit: Vec<(usize, Coeff)>,
    pub field_modulus: u32,
}

fn lcm(a: u32, b: u32) -> u32 {
    a / num_integer::gcd(a, b) * b
}

impl HopfPresentation<CycloScalar> {
    /// Smallest `M` such that every constant lies in `Q(zeta_M)`.
    pub fn field_modulus(&self) -> u32 {
        let mut m = 1;
        let mut see = |c: &CycloScalar| m = lcm(m, c.modulus());
        self.mult
            .iter()
            .chain(&self.antipode)
            .chain(std::iter::once(&self.unit))
            .for_each(|e| e.iter().for_each(|(_, c)| see(c)));
        self.comult
            .iter()
            .for_each(|t| t.iter().for_each(|(_, c)| see(c)));
        self.counit.iter().for_each(&mut see);
        self.star.iter().for_each(|(_, c)| see(c));
        m
    }

    pub fn to_document(&self) -> Result<PresentationDocument, ScalarError> {
        let m = self.field_modulus();
        let enc = |c: &CycloScalar| -> Result<Coeff, ScalarError> {
            Ok(c.promote(m)?.iter().map(format_rational).collect())
        };
        let d = self.dim_();
        let mut mult = Vec::new();
        for (ij, e) in self.mult.iter().enumerate() {
            for (k, c) in e.iter() {
                mult.push((ij / d, ij % d, *k, enc(c)?));
            }
        }
        let mut comult = Vec::new();
        for (i, t) in self.comult.iter().enumerate() {
            for ((a, b), c) in t.iter() {
                comult.push((i, *a, *b, enc(c)?));
            }
        }
        let mut antipode = Vec::new();
        for (i, e) in self.antipode.iter().enumerate() {
            for (k, c) in e.iter() {
                antipode.push((i, *k, enc(c)?));
            }
        }
        Ok(PresentationDocument {
            dim: d,
            labels: self.labels.clone(),
            mult,
            comult,
            counit: self.counit.iter().map(enc).collect::<Result<_, _>>()?,
            antipode,
            star: self
                .star
                .iter()
                .enumerate()
                .map(|(i, (j, c))| Ok((i, *j, enc(c)?)))
                .collect::<Result<_, ScalarError>>()?,
            unit: self
                .unit
                .iter()
                .map(|(k, c)| Ok((*k, enc(c)?)))
                .collect::<Result<_, ScalarError>>()?,
            field_modulus: m,
        })
    }

    pub fn from_document(doc: &PresentationDocument) -> Result<Self, HopfError> {
        let m = doc.field_modulus;
        let dec = |c: &Coeff| -> Result<CycloScalar, HopfError> {
            let r = c
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| HopfError::Format(e.to_string()))?;
            CycloScalar::new(m, r).map_err(|e| HopfError::Format(e.to_string()))
        };
        let d = doc.dim;
        if doc.labels.len() != d {
            return Err(HopfError::Dimension {
                what: "labels",
                got: doc.labels.len(),
                want: d,
            });
        }
        let check = |k: usize| {
            if k < d {
                Ok(k)
            } else {
                Err(HopfError::Index(k))
            }
        };
        let mut mult = vec![Element::zero(); d * d];
        for (i, j, k, c) in &doc.mult {
            mult[check(*i)? * d + check(*j)?].add_term(check(*k)?, dec(c)?);
        }
        let mut comult = vec![Tensor2::zero(); d];
        for (i, a, b, c) in &doc.comult {
            comult[check(*i)?].add_term((*a, *b), dec(c)?);
        }
        let mut antipode = vec![Element::zero(); d];
        for (i, k, c) in &doc.antipode {
            antipode[check(*i)?].add_term(*k, dec(c)?);
        }
        let mut star = vec![None; d];
        for (i, j, c) in &doc.star {
            star[check(*i)?] = Some((*j, dec(c)?));
        }
        let star = star
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| HopfError::Format(format!("missing star of basis {i}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let counit = doc.counit.iter().map(dec).collect::<Result<Vec<_>, _>>()?;
        let mut unit = Element::zero();
        for (k, c) in &doc.unit {
            unit.add_term(*k, dec(c)?);
        }
        HopfPresentation::new(
            doc.labels.clone(),
            mult,
            comult,
            counit,
            antipode,
            star,
            unit,
        )
    }

    fn dim_(&self) -> usize {
        self.labels.len()
    }

    pub fn to_json(&self) -> Result<String, ScalarError> {
        Ok(serde_json::to_string_pretty(&self.to_document()?).expect("documents always serialize"))
    }

    pub fn from_json(s: &str) -> Result<Self, HopfError> {
        let doc: PresentationDocument =
            serde_json::from_str(s).map_err(|e| HopfError::Format(e.to_string()))?;
        Self::from_document(&doc)
    }
}
