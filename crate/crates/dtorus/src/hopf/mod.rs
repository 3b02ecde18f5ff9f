//! Finite-dimensional *-Hopf algebras as structure-constant tensors, the
//! sparse element types they act on, and the verifiers built on top.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

pub mod io;
pub mod maps;
pub mod mutation;
pub mod sequence;
pub mod verify;

pub use maps::{verify_action, verify_morphism, ActionMap, HopfMap};
pub use sequence::{verify_exact_sequence, KernelReduction, SequenceReport};
pub use verify::{verify_hopf, AxiomCheck, AxiomReport, CheckStatus, VerifyMode, Witness};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("{what} has {got} entries, expected {want}")]
    Dimension {
        what: &'static str,
        got: usize,
        want: usize,
    },
    #[error("basis index {0} out of range")]
    Index(usize),
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error("malformed presentation document: {0}")]
    Format(String),
}

/// A product or coproduct left the truncation window.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("result leaves the window at {0}")]
pub struct Overflow(pub String);

/// The grading piece a basis label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Plus,
    Minus,
    Group(usize),
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Plus => write!(f, "+"),
            Sector::Minus => write!(f, "-"),
            Sector::Group(g) => write!(f, "g{g}"),
        }
    }
}

impl std::str::FromStr for Sector {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self, HopfError> {
        match s {
            "+" => Ok(Sector::Plus),
            "-" => Ok(Sector::Minus),
            _ => s
                .strip_prefix('g')
                .and_then(|g| g.parse().ok())
                .map(Sector::Group)
                .ok_or_else(|| HopfError::Format(format!("bad sector {s:?}"))),
        }
    }
}

impl Serialize for Sector {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Sector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Structured basis label, e.g. `x+(1,0)` for `U_+` in the Kac-Paljutkin
/// basis or `U_g1(0,1,1)` for a fibration generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub symbol: String,
    pub sector: Sector,
    pub index: Vec<i64>,
}

impl Label {
    pub fn new(symbol: &str, sector: Sector, index: Vec<i64>) -> Self {
        Label {
            symbol: symbol.to_string(),
            sector,
            index,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.index.iter().map(|v| v.to_string()).collect();
        match self.sector {
            Sector::Group(_) => write!(f, "{}_{}({})", self.symbol, self.sector, idx.join(",")),
            _ => write!(f, "{}{}({})", self.symbol, self.sector, idx.join(",")),
        }
    }
}

/// Sparse linear combination with no stored zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Sparse<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

pub type Element<S> = Sparse<usize, S>;
pub type Tensor2<S> = Sparse<(usize, usize), S>;
pub type Tensor3<S> = Sparse<(usize, usize, usize), S>;

impl<K: Ord + Clone, S: Scalar> Default for Sparse<K, S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone, S: Scalar> Sparse<K, S> {
    pub fn zero() -> Self {
        Sparse {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(k: K, c: S) -> Self {
        let mut s = Self::zero();
        s.add_term(k, c);
        s
    }

    pub fn basis(k: K) -> Self {
        Self::single(k, S::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, S)>) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), c.clone() * v.clone());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.iter().map(|(k, v)| (k.clone(), c.clone() * v.clone())))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &S::one());
        s
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &-S::one());
        s
    }

    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> Sparse<K2, S> {
        Sparse::from_terms(self.iter().map(|(k, v)| (f(k), v.clone())))
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Sparse<K, T> {
        Sparse::from_terms(self.iter().map(|(k, v)| (k.clone(), f(v))))
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.iter().map(|(k, v)| (k.clone(), v.conjugate())))
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for Sparse<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<S: Scalar> Element<S> {
    /// Dense coordinate vector of length `dim`.
    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut v = vec![S::zero(); dim];
        for (k, c) in self.iter() {
            v[*k] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[S]) -> Self {
        Self::from_terms(v.iter().cloned().enumerate())
    }
}

/// The operations a (possibly windowed) *-Hopf algebra exposes on basis
/// elements; everything else is extended linearly by the free functions
/// below.
pub trait HopfAlgebra<S: Scalar>: Sync {
    fn dim(&self) -> usize;
    fn label(&self, i: usize) -> &Label;
    fn unit(&self) -> Cow<'_, Element<S>>;
    fn mul_basis(&self, i: usize, j: usize) -> Result<Cow<'_, Element<S>>, Overflow>;
    fn comul_basis(&self, i: usize) -> Result<Cow<'_, Tensor2<S>>, Overflow>;
    fn counit_basis(&self, i: usize) -> S;
    fn antipode_basis(&self, i: usize) -> Result<Cow<'_, Element<S>>, Overflow>;
    /// `(b_i)^* = c * b_j` as `(j, c)`.
    fn star_basis(&self, i: usize) -> Result<(usize, S), Overflow>;

    fn index_of(&self, label: &Label) -> Option<usize> {
        (0..self.dim()).find(|&i| self.label(i) == label)
    }
}

pub fn mul<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    a: &Element<S>,
    b: &Element<S>,
) -> Result<Element<S>, Overflow> {
    let mut out = Element::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            let p = h.mul_basis(*i, *j)?;
            if !p.is_zero() {
                out.add_scaled(&p, &(x.clone() * y.clone()));
            }
        }
    }
    Ok(out)
}

pub fn comul<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    a: &Element<S>,
) -> Result<Tensor2<S>, Overflow> {
    let mut out = Tensor2::zero();
    for (i, x) in a.iter() {
        out.add_scaled(&*h.comul_basis(*i)?, x);
    }
    Ok(out)
}

pub fn counit<S: Scalar, H: HopfAlgebra<S> + ?Sized>(h: &H, a: &Element<S>) -> S {
    a.iter().fold(S::zero(), |acc, (i, x)| {
        acc + x.clone() * h.counit_basis(*i)
    })
}

pub fn antipode<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    a: &Element<S>,
) -> Result<Element<S>, Overflow> {
    let mut out = Element::zero();
    for (i, x) in a.iter() {
        out.add_scaled(&*h.antipode_basis(*i)?, x);
    }
    Ok(out)
}

/// Antilinear involution extended from the basis.
pub fn star<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    a: &Element<S>,
) -> Result<Element<S>, Overflow> {
    let mut out = Element::zero();
    for (i, x) in a.iter() {
        let (j, c) = h.star_basis(*i)?;
        out.add_term(j, x.conjugate() * c);
    }
    Ok(out)
}

pub fn power<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    a: &Element<S>,
    k: u32,
) -> Result<Element<S>, Overflow> {
    let mut acc = h.unit().into_owned();
    for _ in 0..k {
        acc = mul(h, &acc, a)?;
    }
    Ok(acc)
}

/// Product in `H ⊗ H`.
pub fn mul2<S: Scalar, H: HopfAlgebra<S> + ?Sized>(
    h: &H,
    a: &Tensor2<S>,
    b: &Tensor2<S>,
) -> Result<Tensor2<S>, Overflow> {
    let mut out = Tensor2::zero();
    for ((a1, a2), x) in a.iter() {
        for ((b1, b2), y) in b.iter() {
            let p = h.mul_basis(*a1, *b1)?;
            if p.is_zero() {
                continue;
            }
            let q = h.mul_basis(*a2, *b2)?;
            if q.is_zero() {
                continue;
            }
            let c = x.clone() * y.clone();
            for (i, u) in p.iter() {
                for (j, v) in q.iter() {
                    out.add_term((*i, *j), c.clone() * u.clone() * v.clone());
                }
            }
        }
    }
    Ok(out)
}

pub fn tensor<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Tensor2<S> {
    let mut out = Tensor2::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add_term((*i, *j), x.clone() * y.clone());
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HopfPresentation<S> {
    pub(crate) labels: Vec<Label>,
    pub(crate) mult: Vec<Element<S>>,
    pub(crate) comult: Vec<Tensor2<S>>,
    pub(crate) counit: Vec<S>,
    pub(crate) antipode: Vec<Element<S>>,
    pub(crate) star: Vec<(usize, S)>,
    pub(crate) unit: Element<S>,
    lookup: HashMap<Label, usize>,
}

impl<S: Scalar> HopfPresentation<S> {
    /// `mult` is indexed by `i * dim + j`.
    pub fn new(
        labels: Vec<Label>,
        mult: Vec<Element<S>>,
        comult: Vec<Tensor2<S>>,
        counit: Vec<S>,
        antipode: Vec<Element<S>>,
        star: Vec<(usize, S)>,
        unit: Element<S>,
    ) -> Result<Self, HopfError> {
        let d = labels.len();
        let want = |what, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(HopfError::Dimension { what, got, want })
            }
        };
        want("mult", mult.len(), d * d)?;
        want("comult", comult.len(), d)?;
        want("counit", counit.len(), d)?;
        want("antipode", antipode.len(), d)?;
        want("star", star.len(), d)?;
        let in_range = |k: usize| {
            if k < d {
                Ok(())
            } else {
                Err(HopfError::Index(k))
            }
        };
        for e in mult.iter().chain(&antipode).chain(std::iter::once(&unit)) {
            for (k, _) in e.iter() {
                in_range(*k)?;
            }
        }
        for t in &comult {
            for ((a, b), _) in t.iter() {
                in_range(*a)?;
                in_range(*b)?;
            }
        }
        for (k, _) in &star {
            in_range(*k)?;
        }
        let lookup = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        Ok(HopfPresentation {
            labels,
            mult,
            comult,
            counit,
            antipode,
            star,
            unit,
            lookup,
        })
    }

    /// Build from closures on basis indices.
    pub fn from_fns(
        labels: Vec<Label>,
        mult: impl Fn(usize, usize) -> Element<S>,
        comult: impl Fn(usize) -> Tensor2<S>,
        counit: impl Fn(usize) -> S,
        antipode: impl Fn(usize) -> Element<S>,
        star: impl Fn(usize) -> (usize, S),
        unit: Element<S>,
    ) -> Result<Self, HopfError> {
        let d = labels.len();
        let m = (0..d * d).map(|k| mult(k / d, k % d)).collect();
        Self::new(
            labels,
            m,
            (0..d).map(comult).collect(),
            (0..d).map(counit).collect(),
            (0..d).map(antipode).collect(),
            (0..d).map(star).collect(),
            unit,
        )
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn basis(&self, label: &Label) -> Result<Element<S>, HopfError> {
        self.index(label).map(Element::basis)
    }

    pub fn index(&self, label: &Label) -> Result<usize, HopfError> {
        self.lookup
            .get(label)
            .copied()
            .ok_or_else(|| HopfError::UnknownLabel(label.to_string()))
    }

    pub fn product(&self, a: &Element<S>, b: &Element<S>) -> Element<S> {
        mul(self, a, b).expect("finite presentations never overflow")
    }

    pub fn coproduct(&self, a: &Element<S>) -> Tensor2<S> {
        comul(self, a).expect("finite presentations never overflow")
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> HopfPresentation<T> {
        HopfPresentation {
            labels: self.labels.clone(),
            mult: self.mult.iter().map(|e| e.map_scalars(&f)).collect(),
            comult: self.comult.iter().map(|e| e.map_scalars(&f)).collect(),
            counit: self.counit.iter().map(&f).collect(),
            antipode: self.antipode.iter().map(|e| e.map_scalars(&f)).collect(),
            star: self.star.iter().map(|(j, c)| (*j, f(c))).collect(),
            unit: self.unit.map_scalars(&f),
            lookup: self.lookup.clone(),
        }
    }

    pub fn to_complex(&self) -> HopfPresentation<Complex64> {
        self.map_scalars(|c| c.to_complex())
    }

    /// Left multiplication operator `x -> a x` as dense rows.
    pub fn left_matrix(&self, a: &Element<S>) -> Vec<Vec<S>> {
        let d = self.dim();
        let mut m = vec![vec![S::zero(); d]; d];
        for j in 0..d {
            for (i, c) in self.product(a, &Element::basis(j)).iter() {
                m[*i][j] = c.clone();
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.mult[i * d + j] == self.mult[j * d + i]))
    }
}

impl<S: Scalar> HopfAlgebra<S> for HopfPresentation<S> {
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }
    fn unit(&self) -> Cow<'_, Element<S>> {
        Cow::Borrowed(&self.unit)
    }
    fn mul_basis(&self, i: usize, j: usize) -> Result<Cow<'_, Element<S>>, Overflow> {
        Ok(Cow::Borrowed(&self.mult[i * self.labels.len() + j]))
    }
    fn comul_basis(&self, i: usize) -> Result<Cow<'_, Tensor2<S>>, Overflow> {
        Ok(Cow::Borrowed(&self.comult[i]))
    }
    fn counit_basis(&self, i: usize) -> S {
        self.counit[i].clone()
    }
    fn antipode_basis(&self, i: usize) -> Result<Cow<'_, Element<S>>, Overflow> {
        Ok(Cow::Borrowed(&self.antipode[i]))
    }
    fn star_basis(&self, i: usize) -> Result<(usize, S), Overflow> {
        Ok(self.star[i].clone())
    }
    fn index_of(&self, label: &Label) -> Option<usize> {
        self.lookup.get(label).copied()
    }
}

/// Render an element with the algebra's labels, e.g. `1*x+(0,0) + (1)z4^1*x-(1,0)`.
pub fn format_element<S: Scalar, H: HopfAlgebra<S> + ?Sized>(h: &H, a: &Element<S>) -> String {
    if a.is_zero() {
        return "0".into();
    }
    a.iter()
        .map(|(i, c)| format!("{c:?}*{}", h.label(*i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn format_tensor<S: Scalar, H: HopfAlgebra<S> + ?Sized>(h: &H, t: &Tensor2<S>) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .take(8)
        .map(|((i, j), c)| format!("{c:?}*{}⊗{}", h.label(*i), h.label(*j)))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloScalar;

    #[test]
    fn sparse_drops_cancelled_terms() {
        let mut e: Element<CycloScalar> = Element::basis(3);
        e.add_term(3, CycloScalar::from_integer(-1));
        assert!(e.is_zero());
        let t = tensor(
            &Element::<CycloScalar>::basis(1),
            &Element::single(2, CycloScalar::from_integer(5)),
        );
        assert_eq!(t.get(&(1, 2)), CycloScalar::from_integer(5));
    }

    #[test]
    fn label_round_trip() {
        let l = Label::new("U", Sector::Group(2), vec![0, 1, -1]);
        assert_eq!(l.to_string(), "U_g2(0,1,-1)");
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(serde_json::from_str::<Label>(&s).unwrap(), l);
        assert_eq!(
            Label::new("x", Sector::Minus, vec![1, 0]).to_string(),
            "x-(1,0)"
        );
    }
}
