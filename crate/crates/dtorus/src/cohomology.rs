//! Group cohomology with coefficients in bilinear forms on `Z^n`.
//!
//! A family `g -> theta_g` is a 1-cocycle when
//! `theta_{gh}(m,n) = theta_h(m,n) + theta_g(h(m), h(n))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, AffineSystem};
use crate::scalar::{format_rational, parse_rational, CycloScalar, Rational, ScalarError};
use crate::symmetry::{Lattice, Perm, PermGroup};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CohomologyError {
    #[error("theta_e is not zero")]
    NonzeroIdentity,
    #[error("cocycle condition fails at g{g}, h{h}, entry ({m},{n})")]
    NotCocycle {
        g: usize,
        h: usize,
        m: usize,
        n: usize,
    },
    #[error("theta_g{g}(i, j) is not an integer for i = {i:?}, j = {j:?}")]
    NotIntegral { g: usize, i: Vec<i64>, j: Vec<i64> },
    #[error("no cocycle with the requested commutator form is integral on the lattice")]
    NoIntegralLift,
    #[error("form has shape {got}, expected {want}")]
    Shape { got: usize, want: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("malformed cocycle document: {0}")]
    Format(String),
}

/// `theta(i, j) = i^T M j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    pub matrix: Vec<Vec<Rational>>,
}

impl BilinearForm {
    pub fn zero(n: usize) -> Self {
        BilinearForm {
            matrix: vec![vec![Rational::zero(); n]; n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        BilinearForm {
            matrix: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Self {
        BilinearForm {
            matrix: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&(p, q)| Rational::new(p.into(), q.into()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn eval(&self, i: &[i64], j: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (a, row) in i.iter().zip(&self.matrix) {
            if *a == 0 {
                continue;
            }
            for (b, v) in j.iter().zip(row) {
                if *b != 0 && !v.is_zero() {
                    acc += v * Rational::from_integer(BigInt::from(a * b));
                }
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        Self::from_fn(n, |i, j| self.matrix[j][i].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.dim(), |i, j| &self.matrix[i][j] + &o.matrix[i][j])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.dim(), |i, j| &self.matrix[i][j] - &o.matrix[i][j])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_fn(self.dim(), |i, j| &self.matrix[i][j] * r)
    }

    /// `(m, n) -> theta(g m, g n)`.
    pub fn precompose(&self, g: &Perm) -> Self {
        Self::from_fn(self.dim(), |i, j| self.matrix[g[i]][g[j]].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|v| v.is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        *self == self.transpose().scale(&-Rational::one())
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self, CohomologyError> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for r in rows {
            if r.len() != n {
                return Err(CohomologyError::Shape {
                    got: r.len(),
                    want: n,
                });
            }
            out.push(
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(BilinearForm { matrix: out })
    }
}

/// A map from group elements to bilinear forms, indexed like `group`.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleFamily {
    pub group: PermGroup,
    pub forms: Vec<BilinearForm>,
}

impl CocycleFamily {
    pub fn zero(group: &PermGroup) -> Self {
        CocycleFamily {
            group: group.clone(),
            forms: vec![BilinearForm::zero(group.rank()); group.order()],
        }
    }

    /// Extend a form on each generator to the whole group through
    /// `theta_{s h} = theta_h + theta_s o h`; consistency is not checked.
    pub fn from_generator_forms(group: &PermGroup, gens: &[BilinearForm]) -> Self {
        let n = group.rank();
        let mut forms: Vec<Option<BilinearForm>> = vec![None; group.order()];
        forms[0] = Some(BilinearForm::zero(n));
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in frontier {
                for (k, &s) in group.generators().iter().enumerate() {
                    let sh = group.mul(s, h);
                    if forms[sh].is_none() {
                        let th = forms[h].clone().unwrap();
                        forms[sh] = Some(th.add(&gens[k].precompose(group.element(h))));
                        next.push(sh);
                    }
                }
            }
            frontier = next;
        }
        CocycleFamily {
            group: group.clone(),
            forms: forms.into_iter().map(Option::unwrap).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn form(&self, g: usize) -> &BilinearForm {
        &self.forms[g]
    }

    pub fn theta(&self, g: usize, i: &[i64], j: &[i64]) -> Rational {
        self.forms[g].eval(i, j)
    }

    /// `exp(2 pi i theta_g(i, j))`.
    pub fn alpha(&self, g: usize, i: &[i64], j: &[i64]) -> CycloScalar {
        CycloScalar::exp_2pi_i(&self.theta(g, i, j)).expect("phase modulus within bound")
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.forms.iter().all(BilinearForm::is_antisymmetric)
    }

    pub fn validate(&self) -> Result<(), CohomologyError> {
        let n = self.rank();
        for f in &self.forms {
            if f.dim() != n {
                return Err(CohomologyError::Shape {
                    got: f.dim(),
                    want: n,
                });
            }
        }
        if !self.forms[0].is_zero() {
            return Err(CohomologyError::NonzeroIdentity);
        }
        let g = &self.group;
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = &self.forms[g.mul(a, b)];
                let rhs = self.forms[b].add(&self.forms[a].precompose(g.element(b)));
                for m in 0..n {
                    for k in 0..n {
                        if lhs.matrix[m][k] != rhs.matrix[m][k] {
                            return Err(CohomologyError::NotCocycle {
                                g: a,
                                h: b,
                                m,
                                n: k,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `theta_g(l, e_j)` and `theta_g(e_j, l)` are integers for every lattice
    /// basis vector `l`; this makes every phase well defined on `Z^n / L`.
    pub fn check_integral(&self, lattice: &Lattice) -> Result<(), CohomologyError> {
        let n = self.rank();
        for g in 0..self.group.order() {
            for c in 0..n {
                let l = lattice.column(c);
                for j in 0..n {
                    let e: Vec<i64> = (0..n).map(|k| (k == j) as i64).collect();
                    for (x, y) in [(&l, &e), (&e, &l)] {
                        if !self.theta(g, x, y).is_integer() {
                            return Err(CohomologyError::NotIntegral {
                                g,
                                i: x.clone(),
                                j: y.clone(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_document(&self) -> CocycleDocument {
        CocycleDocument {
            group: GroupSpec {
                n: self.rank(),
                generators: self
                    .group
                    .generators()
                    .iter()
                    .map(|&g| self.group.element(g).clone())
                    .collect(),
            },
            n: self.rank(),
            forms: self
                .forms
                .iter()
                .enumerate()
                .map(|(g, f)| (g.to_string(), f.to_strings()))
                .collect(),
        }
    }

    pub fn from_document(doc: &CocycleDocument) -> Result<Self, CohomologyError> {
        let group = PermGroup::from_generators(doc.group.n, &doc.group.generators)
            .map_err(|e| CohomologyError::Format(e.to_string()))?;
        let mut forms = vec![BilinearForm::zero(doc.n); group.order()];
        for (k, rows) in &doc.forms {
            let g: usize = k
                .parse()
                .map_err(|_| CohomologyError::Format(format!("bad element key {k:?}")))?;
            if g >= forms.len() {
                return Err(CohomologyError::Format(format!("element {g} out of range")));
            }
            forms[g] = BilinearForm::from_strings(rows)?;
        }
        Ok(CocycleFamily { group, forms })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub n: usize,
    pub generators: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleDocument {
    pub group: GroupSpec,
    pub n: usize,
    pub forms: BTreeMap<String, Vec<Vec<String>>>,
}

/// A k-cochain `G^k -> forms`, stored in mixed-radix order of the tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<BilinearForm>,
}

impl Cochain {
    pub fn tuple(&self, order: usize, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree];
        for k in (0..self.degree).rev() {
            t[k] = idx % order;
            idx /= order;
        }
        t
    }

    fn index(order: usize, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &g| acc * order + g)
    }

    pub fn at(&self, order: usize, t: &[usize]) -> &BilinearForm {
        &self.values[Self::index(order, t)]
    }
}

/// `(delta phi)(g_1..g_{k+1}) = phi(g_2..) + sum_i (-1)^i phi(..g_i g_{i+1}..)
///  + (-1)^{k+1} phi(g_1..g_k) o g_{k+1}`.
pub fn coboundary(group: &PermGroup, phi: &Cochain) -> Cochain {
    let ord = group.order();
    let k = phi.degree;
    let n = phi.values[0].dim();
    let count = ord.pow(k as u32 + 1);
    let out = Cochain {
        degree: k + 1,
        values: Vec::new(),
    };
    let values = (0..count)
        .map(|idx| {
            let t = out.tuple(ord, idx);
            let mut acc = phi.at(ord, &t[1..]).clone();
            for i in 1..=k {
                let mut s: Vec<usize> = t[..i - 1].to_vec();
                s.push(group.mul(t[i - 1], t[i]));
                s.extend_from_slice(&t[i + 1..]);
                let v = phi.at(ord, &s);
                acc = if i % 2 == 0 { acc.add(v) } else { acc.sub(v) };
            }
            let last = phi.at(ord, &t[..k]).precompose(group.element(t[k]));
            if (k + 1) % 2 == 0 {
                acc.add(&last)
            } else {
                acc.sub(&last)
            }
        })
        .collect::<Vec<_>>();
    debug_assert!(values.iter().all(|v| v.dim() == n));
    Cochain {
        degree: k + 1,
        values,
    }
}

/// Degree-1 cochain viewed as a family.
pub fn cochain_to_family(group: &PermGroup, c: &Cochain) -> CocycleFamily {
    assert_eq!(c.degree, 1);
    CocycleFamily {
        group: group.clone(),
        forms: c.values.clone(),
    }
}

// A family whose entries are integer linear combinations of unknowns.
type LinForm = Vec<i64>;
type LinMatrix = Vec<Vec<LinForm>>;

fn lin_add(a: &LinMatrix, b: &LinMatrix) -> LinMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
                .collect()
        })
        .collect()
}

fn lin_precompose(a: &LinMatrix, g: &Perm) -> LinMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[g[i]][g[j]].clone()).collect())
        .collect()
}

/// Every `theta_g` as a linear function of the generator entries, plus the
/// consistency equations that (cond1) imposes on them.
fn symbolic_family(group: &PermGroup) -> (Vec<LinMatrix>, Vec<LinForm>) {
    let n = group.rank();
    let nvars = group.generators().len() * n * n;
    let zero: LinMatrix = vec![vec![vec![0; nvars]; n]; n];
    let gen_forms: Vec<LinMatrix> = (0..group.generators().len())
        .map(|k| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut v = vec![0; nvars];
                            v[k * n * n + i * n + j] = 1;
                            v
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut forms: Vec<Option<LinMatrix>> = vec![None; group.order()];
    forms[0] = Some(zero);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in frontier {
            for (k, &s) in group.generators().iter().enumerate() {
                let sh = group.mul(s, h);
                if forms[sh].is_none() {
                    forms[sh] = Some(lin_add(
                        forms[h].as_ref().unwrap(),
                        &lin_precompose(&gen_forms[k], group.element(h)),
                    ));
                    next.push(sh);
                }
            }
        }
        frontier = next;
    }
    let forms: Vec<LinMatrix> = forms.into_iter().map(Option::unwrap).collect();
    let mut eqs = Vec::new();
    for g in 0..group.order() {
        for h in 0..group.order() {
            let rhs = lin_add(&forms[h], &lin_precompose(&forms[g], group.element(h)));
            let lhs = &forms[group.mul(g, h)];
            for i in 0..n {
                for j in 0..n {
                    let e: LinForm = lhs[i][j]
                        .iter()
                        .zip(&rhs[i][j])
                        .map(|(a, b)| a - b)
                        .collect();
                    if e.iter().any(|&x| x != 0) {
                        eqs.push(e);
                    }
                }
            }
        }
    }
    (forms, eqs)
}

fn instantiate(group: &PermGroup, sym: &[LinMatrix], x: &[Rational]) -> CocycleFamily {
    let forms = sym
        .iter()
        .map(|m| BilinearForm {
            matrix: m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|lf| {
                            lf.iter()
                                .zip(x)
                                .filter(|(c, _)| **c != 0)
                                .map(|(c, v)| v * Rational::from_integer(BigInt::from(*c)))
                                .sum()
                        })
                        .collect()
                })
                .collect(),
        })
        .collect();
    CocycleFamily {
        group: group.clone(),
        forms,
    }
}

/// Rational basis of all cocycle families, optionally antisymmetric ones only.
pub fn solve_cocycles(group: &PermGroup, antisymmetric: bool) -> Vec<CocycleFamily> {
    let n = group.rank();
    let (sym, mut eqs) = symbolic_family(group);
    let nvars = group.generators().len() * n * n;
    if antisymmetric {
        for m in &sym {
            for i in 0..n {
                for j in i..n {
                    let e: LinForm = m[i][j].iter().zip(&m[j][i]).map(|(a, b)| a + b).collect();
                    if e.iter().any(|&x| x != 0) {
                        eqs.push(e);
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|e| {
            e.iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect()
        })
        .collect();
    let basis = if rows.is_empty() {
        (0..nvars)
            .map(|k| {
                (0..nvars)
                    .map(|j| Rational::from_integer(((j == k) as i64).into()))
                    .collect()
            })
            .collect()
    } else {
        linalg::nullspace(&rows, nvars)
    };
    basis.iter().map(|x| instantiate(group, &sym, x)).collect()
}

/// Result of replacing every form by its antisymmetric part.
#[derive(Debug, Clone, PartialEq)]
pub struct Antisymmetrized {
    pub family: CocycleFamily,
    /// Symmetric parts `(Theta_g + Theta_g^T) / 2` that were removed.
    pub symmetric: Vec<BilinearForm>,
}

impl Antisymmetrized {
    /// `exp(-pi i theta_g(j, j))`, the factor relating the two presentations.
    pub fn rescaling_phase(&self, g: usize, j: &[i64]) -> CycloScalar {
        let half = Rational::new(BigInt::from(-1), BigInt::from(2));
        CycloScalar::exp_2pi_i(&(self.symmetric[g].eval(j, j) * half))
            .expect("phase modulus within bound")
    }
}

pub fn antisymmetrize(theta: &CocycleFamily) -> Antisymmetrized {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let family = CocycleFamily {
        group: theta.group.clone(),
        forms: theta
            .forms
            .iter()
            .map(|f| f.sub(&f.transpose()).scale(&half))
            .collect(),
    };
    let symmetric = theta
        .forms
        .iter()
        .map(|f| f.add(&f.transpose()).scale(&half))
        .collect();
    Antisymmetrized { family, symmetric }
}

/// A form `phi` with `theta_g = phi - phi o g` for all `g`, if one exists.
pub fn is_coboundary(theta: &CocycleFamily) -> Option<BilinearForm> {
    let n = theta.rank();
    let g = &theta.group;
    let mut sys = AffineSystem::<Rational>::new(n * n);
    for e in 0..g.order() {
        let p = g.element(e);
        for i in 0..n {
            for j in 0..n {
                let mut coeffs = vec![(i * n + j, Rational::one())];
                coeffs.push((p[i] * n + p[j], -Rational::one()));
                sys.equation(&coeffs, theta.forms[e].matrix[i][j].clone());
            }
        }
    }
    let (x, _) = sys.solution()?;
    Some(BilinearForm::from_fn(n, |i, j| x[i * n + j].clone()))
}

/// A cocycle `theta'` with `theta'_g - theta'_g^T = commutator_g` that is
/// integral on `lattice`.
///
/// Twisted products only see the commutator form; an antisymmetric choice
/// is often not integral, so finite quotients need such a lift.
pub fn lift_commutator_form(
    commutator: &CocycleFamily,
    lattice: &Lattice,
) -> Result<CocycleFamily, CohomologyError> {
    let group = &commutator.group;
    let n = group.rank();
    let d = lattice
        .box_shape()
        .iter()
        .copied()
        .fold(1i64, |a, b| a.lcm(&b));
    if lattice.is_degenerate() {
        return Err(CohomologyError::NoIntegralLift);
    }
    let (sym, cons) = symbolic_family(group);
    let nx = group.generators().len() * n * n;
    // Generator entries are X / d with X integral; extra integer slacks s
    // encode "combination is divisible by d".
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    let mut slack_rows: Vec<(Vec<i64>, bool)> = Vec::new();
    for e in &cons {
        slack_rows.push((e.clone(), false));
    }
    let dd = Rational::from_integer(BigInt::from(d));
    let mut comm_rhs: Vec<(Vec<i64>, Rational)> = Vec::new();
    for (g, m) in sym.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let e: LinForm = m[i][j].iter().zip(&m[j][i]).map(|(a, b)| a - b).collect();
                let target = &commutator.forms[g].matrix[i][j] * &dd;
                if !target.is_integer() {
                    return Err(CohomologyError::NoIntegralLift);
                }
                comm_rhs.push((e, target));
            }
        }
        for c in 0..n {
            let l = lattice.column(c);
            for j in 0..n {
                let mut left = vec![0i64; nx];
                let mut right = vec![0i64; nx];
                for (k, &lk) in l.iter().enumerate() {
                    if lk == 0 {
                        continue;
                    }
                    for v in 0..nx {
                        left[v] += lk * m[k][j][v];
                        right[v] += lk * m[j][k][v];
                    }
                }
                slack_rows.push((left, true));
                slack_rows.push((right, true));
            }
        }
    }
    let nslack = slack_rows.iter().filter(|(_, s)| *s).count();
    let ncols = nx + nslack;
    let mut k = 0;
    for (e, needs_slack) in &slack_rows {
        let mut row: Vec<BigInt> = e.iter().map(|&c| BigInt::from(c)).collect();
        row.resize(ncols, BigInt::zero());
        if *needs_slack {
            row[nx + k] = BigInt::from(-d);
            k += 1;
        }
        rows.push(row);
        rhs.push(BigInt::zero());
    }
    for (e, t) in comm_rhs {
        let mut row: Vec<BigInt> = e.iter().map(|&c| BigInt::from(c)).collect();
        row.resize(ncols, BigInt::zero());
        rows.push(row);
        rhs.push(t.to_integer());
    }
    let sol = linalg::solve_integer(&rows, &rhs).ok_or(CohomologyError::NoIntegralLift)?;
    let x: Vec<Rational> = sol[..nx]
        .iter()
        .map(|v| Rational::new(v.clone(), BigInt::from(d)))
        .collect();
    let fam = instantiate(group, &sym, &x);
    fam.validate()?;
    fam.check_integral(lattice)?;
    Ok(fam)
}

/// The antisymmetric cyclic family on `Z^3` with entries
/// `Theta_01 = theta, Theta_02 = -rho, Theta_12 = -(theta + rho)` on the
/// generator.
pub fn z3_family(theta: &Rational, rho: &Rational) -> CocycleFamily {
    let g = PermGroup::cyclic(3);
    let z = Rational::zero();
    let m = vec![
        vec![z.clone(), theta.clone(), -rho.clone()],
        vec![-theta.clone(), z.clone(), -(theta + rho)],
        vec![rho.clone(), theta + rho, z],
    ];
    CocycleFamily::from_generator_forms(&g, &[BilinearForm { matrix: m }])
}

/// The antisymmetric flip family with `Theta_sigma = [[0, t], [-t, 0]]`.
pub fn flip_family(t: &Rational) -> CocycleFamily {
    let g = PermGroup::flip();
    let m = vec![
        vec![Rational::zero(), t.clone()],
        vec![-t.clone(), Rational::zero()],
    ];
    CocycleFamily::from_generator_forms(&g, &[BilinearForm { matrix: m }])
}

/// Smallest positive `N` with `N * theta_g` integral for all `g`.
pub fn common_denominator(theta: &CocycleFamily) -> i64 {
    theta
        .forms
        .iter()
        .flat_map(|f| f.matrix.iter().flatten())
        .fold(1i64, |acc, v| {
            acc.lcm(&v.denom().to_i64().unwrap_or(1).abs())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn z2_space_is_one_dimensional() {
        let sols = solve_cocycles(&PermGroup::flip(), true);
        assert_eq!(sols.len(), 1);
        let f = &sols[0].forms[1];
        assert!(f.is_antisymmetric() && !f.is_zero());
    }

    #[test]
    fn z3_space_is_two_dimensional() {
        let sols = solve_cocycles(&PermGroup::cyclic(3), true);
        assert_eq!(sols.len(), 2);
        for s in &sols {
            s.validate().unwrap();
        }
        z3_family(&rat(1, 3), &rat(-2, 3)).validate().unwrap();
    }

    #[test]
    fn antisymmetrize_example() {
        let g = PermGroup::flip();
        let fam = CocycleFamily {
            group: g,
            forms: vec![
                BilinearForm::zero(2),
                BilinearForm::from_ratios(&[&[(1, 1), (2, 1)], &[(0, 1), (-1, 1)]]),
            ],
        };
        let a = antisymmetrize(&fam);
        assert_eq!(
            a.family.forms[1],
            BilinearForm::from_ratios(&[&[(0, 1), (1, 1)], &[(-1, 1), (0, 1)]])
        );
        a.family.validate().unwrap();
    }

    #[test]
    fn flip_family_is_a_coboundary() {
        let fam = flip_family(&rat(1, 5));
        let phi = is_coboundary(&fam).unwrap();
        assert_eq!(phi.sub(&phi.precompose(fam.group.element(1))), fam.forms[1]);
    }

    #[test]
    fn lift_exists_for_z3_but_not_for_odd_flip() {
        let comm = z3_family(&rat(1, 2), &rat(0, 1));
        let lift = lift_commutator_form(&comm, &Lattice::scaled(3, 2)).unwrap();
        for g in 0..3 {
            assert_eq!(lift.forms[g].sub(&lift.forms[g].transpose()), comm.forms[g]);
        }
        assert_eq!(
            lift_commutator_form(&flip_family(&rat(1, 2)), &Lattice::scaled(2, 2)),
            Err(CohomologyError::NoIntegralLift)
        );
    }
}
