//! Exact arithmetic in cyclotomic fields `Q(zeta_M)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(M)-1)` modulo the
//! cyclotomic polynomial. Mixed moduli are promoted to their lcm, subject to a
//! global bound (default 256).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg;

pub type Rational = BigRational;

static MAX_MODULUS: AtomicU32 = AtomicU32::new(256);

/// Largest cyclotomic modulus arithmetic may promote to.
pub fn max_modulus() -> u32 {
    MAX_MODULUS.load(Ordering::Relaxed)
}

pub fn set_max_modulus(m: u32) {
    MAX_MODULUS.store(m.max(1), Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic modulus {0} exceeds the configured bound {1}")]
    ModulusOverflow(u64, u32),
    #[error("coefficient vector of length {got} does not match phi({modulus}) = {want}")]
    BadLength {
        modulus: u32,
        got: usize,
        want: usize,
    },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("requested {0} bits exceeds double precision")]
    Precision(u32),
}

/// Data shared by every element of one cyclotomic field.
#[derive(Debug)]
struct FieldData {
    degree: usize,
    /// Coefficients of Phi_M, constant term first; monic of length `degree + 1`.
    phi: Vec<i64>,
}

fn cyclotomic_poly(m: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_poly(d, cache);
            num = poly_div_exact(&num, &den);
        }
    }
    cache.insert(m, num.clone());
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (t, &dc) in den.iter().enumerate() {
                rem[k + t] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn field(m: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().unwrap().get(&m) {
        return f.clone();
    }
    let mut polys = HashMap::new();
    let phi = cyclotomic_poly(m, &mut polys);
    let data = Arc::new(FieldData {
        degree: phi.len() - 1,
        phi,
    });
    cache.write().unwrap().insert(m, data.clone());
    data
}

/// Euler totient, i.e. the degree of `Q(zeta_m)`.
pub fn totient(m: u32) -> usize {
    field(m).degree
}

fn lcm(a: u32, b: u32) -> u64 {
    (a as u64 / a.gcd(&b) as u64) * b as u64
}

fn check_bound(m: u64) -> Result<u32, ScalarError> {
    let bound = max_modulus();
    if m > bound as u64 {
        Err(ScalarError::ModulusOverflow(m, bound))
    } else {
        Ok(m as u32)
    }
}

/// Reduce a polynomial of arbitrary length modulo Phi_m.
fn reduce_poly(mut p: Vec<Rational>, f: &FieldData) -> Vec<Rational> {
    let d = f.degree;
    if p.len() > d {
        for k in (d..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut p[k], Rational::zero());
            for t in 0..d {
                let pc = f.phi[t];
                if pc != 0 {
                    p[k - d + t] -= &c * Rational::from_integer(BigInt::from(pc));
                }
            }
        }
    }
    p.resize(d, Rational::zero());
    p
}

/// An exact element of `Q(zeta_M)`.
///
/// Values of the form `(p/q) zeta_m^k` with small `p, q` are kept in a compact
/// monomial form; everything else is a coefficient vector in the power basis.
#[derive(Clone)]
pub struct CycloScalar {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    /// `num/den * exp(2 pi i k/m)` with `num >= 0`, `den > 0`, `gcd(k, m) = 1`,
    /// and `m = 1` when `k = 0`. Zero is `num = 0`.
    Mono {
        num: i64,
        den: i64,
        k: u32,
        m: u32,
    },
    Poly {
        modulus: u32,
        coeffs: Vec<Rational>,
    },
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Normalized monomial, or `None` when the coefficient leaves `i64`.
fn mono(num: i128, den: i128, k: i128, m: i128) -> Result<Option<Repr>, ScalarError> {
    debug_assert!(den != 0 && m > 0);
    if num == 0 {
        return Ok(Some(Repr::Mono {
            num: 0,
            den: 1,
            k: 0,
            m: 1,
        }));
    }
    let (mut num, mut den, mut k, mut m) = (num, den, k, m);
    if den < 0 {
        num = -num;
        den = -den;
    }
    if num < 0 {
        num = -num;
        k = 2 * k + m;
        m *= 2;
    }
    let g = gcd_i128(num, den);
    num /= g;
    den /= g;
    k = k.rem_euclid(m);
    let g = gcd_i128(k, m);
    if k == 0 {
        m = 1;
    } else {
        k /= g;
        m /= g;
    }
    if mono_field(m as u32) > max_modulus() {
        return Err(ScalarError::ModulusOverflow(m as u64, max_modulus()));
    }
    if num > i64::MAX as i128 || den > i64::MAX as i128 {
        return Ok(None);
    }
    Ok(Some(Repr::Mono {
        num: num as i64,
        den: den as i64,
        k: k as u32,
        m: m as u32,
    }))
}

/// Smallest cyclotomic field containing `zeta_m`: `Q(zeta_2n) = Q(zeta_n)` for odd `n`.
fn mono_field(m: u32) -> u32 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

fn poly_root(m: u32, k: i64, c: Rational) -> Vec<Rational> {
    let f = field(m);
    let e = k.rem_euclid(m as i64) as usize;
    let mut p = vec![Rational::zero(); e + 1];
    p[e] = c;
    reduce_poly(p, &f)
}

fn promote_poly(modulus: u32, coeffs: &[Rational], m: u32) -> Vec<Rational> {
    if m == modulus {
        return coeffs.to_vec();
    }
    assert_eq!(m % modulus, 0, "promotion target must be a multiple");
    let step = (m / modulus) as usize;
    let f = field(m);
    let mut p = vec![Rational::zero(); (coeffs.len() - 1) * step + 1];
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            p[k * step] = c.clone();
        }
    }
    reduce_poly(p, &f)
}

impl CycloScalar {
    pub fn new(modulus: u32, coeffs: Vec<Rational>) -> Result<Self, ScalarError> {
        if modulus == 0 {
            return Err(ScalarError::ZeroModulus);
        }
        check_bound(modulus as u64)?;
        let want = totient(modulus);
        if coeffs.len() != want {
            return Err(ScalarError::BadLength {
                modulus,
                got: coeffs.len(),
                want,
            });
        }
        Ok(Self::from_poly(modulus, coeffs))
    }

    fn from_poly(modulus: u32, coeffs: Vec<Rational>) -> Self {
        let mut nz = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nz.next(), nz.next()) {
            (None, _) => return Self::zero(),
            (Some((j, c)), None) => {
                if let (Some(p), Some(q)) = (c.numer().to_i64(), c.denom().to_i64()) {
                    if let Ok(Some(r)) = mono(p as i128, q as i128, j as i128, modulus as i128) {
                        return CycloScalar { repr: r };
                    }
                }
            }
            _ => {}
        }
        CycloScalar {
            repr: Repr::Poly { modulus, coeffs },
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(1, vec![r])
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        CycloScalar {
            repr: mono(p as i128, q as i128, 0, 1)
                .unwrap()
                .expect("i64 ratio"),
        }
    }

    /// `zeta_m^k`, any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        Self::try_root_of_unity(m, k).expect("modulus within bound")
    }

    pub fn try_root_of_unity(m: u32, k: i64) -> Result<Self, ScalarError> {
        if m == 0 {
            return Err(ScalarError::ZeroModulus);
        }
        check_bound(m as u64)?;
        Ok(CycloScalar {
            repr: mono(1, 1, k as i128, m as i128)?.unwrap(),
        })
    }

    /// `exp(2 pi i r)` for a rational `r`, landing in `Q(zeta_denom(r))`.
    pub fn exp_2pi_i(r: &Rational) -> Result<Self, ScalarError> {
        let den = r
            .denom()
            .to_u32()
            .ok_or(ScalarError::ModulusOverflow(u64::MAX, max_modulus()))?;
        let num = (r.numer() % BigInt::from(den)).to_i64().unwrap();
        Self::try_root_of_unity(den, num)
    }

    /// Smallest modulus `M` of the stored representation.
    pub fn modulus(&self) -> u32 {
        match &self.repr {
            Repr::Mono { m, .. } => mono_field(*m),
            Repr::Poly { modulus, .. } => *modulus,
        }
    }

    /// Power-basis coordinates in `Q(zeta_modulus)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        match &self.repr {
            Repr::Mono { num, den, k, m } if m % 4 == 2 => {
                // zeta_2n^k = -zeta_n^{(k+n)/2} for odd n and odd k
                let n = m / 2;
                poly_root(n, ((k + n) / 2) as i64, -rat(*num, *den))
            }
            Repr::Mono { num, den, k, m } => poly_root(*m, *k as i64, rat(*num, *den)),
            Repr::Poly { coeffs, .. } => coeffs.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Mono { m, .. } => *m <= 2,
            Repr::Poly { coeffs, .. } => coeffs.iter().skip(1).all(|c| c.is_zero()),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match &self.repr {
            Repr::Mono { num, den, m: 1, .. } => Some(rat(*num, *den)),
            Repr::Mono { num, den, m: 2, .. } => Some(-rat(*num, *den)),
            Repr::Mono { .. } => None,
            Repr::Poly { coeffs, .. } => self.is_rational().then(|| coeffs[0].clone()),
        }
    }

    /// Coordinates in `Q(zeta_m)`; `m` must be a multiple of the modulus.
    pub fn promote(&self, m: u32) -> Result<Vec<Rational>, ScalarError> {
        check_bound(m as u64)?;
        if m % self.modulus() != 0 {
            return Err(ScalarError::ModulusOverflow(
                lcm(m, self.modulus()),
                max_modulus(),
            ));
        }
        Ok(promote_poly(self.modulus(), &self.coeffs(), m))
    }

    fn poly_at(&self, m: u32) -> Vec<Rational> {
        promote_poly(self.modulus(), &self.coeffs(), m)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if let (
            Repr::Mono {
                num: a,
                den: b,
                k,
                m,
            },
            Repr::Mono {
                num: c,
                den: d,
                k: k2,
                m: m2,
            },
        ) = (&self.repr, &rhs.repr)
        {
            if *a == 0 {
                return Ok(rhs.clone());
            }
            if *c == 0 {
                return Ok(self.clone());
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            let opposite = *m2 == 2 * *m && *k2 as u64 == (2 * *k as u64 + *m as u64) % *m2 as u64
                || *m == 2 * *m2 && *k as u64 == (2 * *k2 as u64 + *m2 as u64) % *m as u64;
            if k == k2 && m == m2 {
                if let Some(r) = mono(a * d + b * c, b * d, *k as i128, *m as i128)? {
                    return Ok(CycloScalar { repr: r });
                }
            } else if opposite {
                if let Some(r) = mono(a * d - b * c, b * d, *k as i128, *m as i128)? {
                    return Ok(CycloScalar { repr: r });
                }
            }
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        let m = check_bound(lcm(self.modulus(), rhs.modulus()))?;
        let coeffs = self
            .poly_at(m)
            .into_iter()
            .zip(rhs.poly_at(m))
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_poly(m, coeffs))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.try_add(&-rhs.clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if let (
            Repr::Mono {
                num: a,
                den: b,
                k,
                m,
            },
            Repr::Mono {
                num: c,
                den: d,
                k: k2,
                m: m2,
            },
        ) = (&self.repr, &rhs.repr)
        {
            if *a == 0 || *c == 0 {
                return Ok(Self::zero());
            }
            let l = lcm(*m, *m2) as i128;
            let e = *k as i128 * (l / *m as i128) + *k2 as i128 * (l / *m2 as i128);
            if let Some(r) = mono(*a as i128 * *c as i128, *b as i128 * *d as i128, e, l)? {
                return Ok(CycloScalar { repr: r });
            }
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let m = check_bound(lcm(self.modulus(), rhs.modulus()))?;
        let (x, y) = (self.poly_at(m), rhs.poly_at(m));
        let f = field(m);
        let d = f.degree;
        let mut p = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_poly(m, reduce_poly(p, &f)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.try_mul(&Self::from_rational(r.clone()))
            .expect("scaling keeps the modulus")
    }

    /// Multiplicative inverse; general elements are solved as a linear system over Q.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Repr::Mono { num, den, k, m } = &self.repr {
            return Ok(CycloScalar {
                repr: mono(*den as i128, *num as i128, -(*k as i128), *m as i128)?.unwrap(),
            });
        }
        let modulus = self.modulus();
        let d = totient(modulus);
        // Column k of the multiplication matrix is self * z^k.
        let mut rows = vec![vec![Rational::zero(); d]; d];
        for k in 0..d {
            let col = self
                .try_mul(&Self::root_of_unity(modulus, k as i64))?
                .poly_at(modulus);
            for (r, c) in col.into_iter().enumerate() {
                rows[r][k] = c;
            }
        }
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let x = linalg::solve(&rows, &rhs).ok_or(ScalarError::DivisionByZero)?;
        Ok(Self::from_poly(modulus, x))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.try_mul(&rhs.inv()?)
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        match &self.repr {
            Repr::Mono { num, den, k, m } => CycloScalar {
                repr: mono(*num as i128, *den as i128, -(*k as i128), *m as i128)
                    .unwrap()
                    .unwrap(),
            },
            Repr::Poly { modulus, coeffs } => {
                let m = *modulus as usize;
                let f = field(*modulus);
                let mut p = vec![Rational::zero(); m];
                for (k, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        p[(m - k) % m] += c;
                    }
                }
                Self::from_poly(*modulus, reduce_poly(p, &f))
            }
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("nonzero base for negative power")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            k >>= 1;
        }
        acc
    }

    /// If `self` is a root of unity, return `(m, k)` with `self = zeta_m^k`
    /// and `k/m` in lowest terms.
    pub fn root_of_unity_exponent(&self) -> Option<(u32, u32)> {
        match &self.repr {
            Repr::Mono {
                num: 1,
                den: 1,
                k,
                m,
            } => Some((*m, *k)),
            _ => None,
        }
    }

    /// Exact square root when `self = r^2 * zeta` for rational `r` and a root
    /// of unity `zeta`; the result may live in a field of twice the modulus.
    pub fn monomial_sqrt(&self) -> Option<Self> {
        match &self.repr {
            Repr::Mono { num, den, k, m } => {
                if *num == 0 {
                    return Some(Self::zero());
                }
                let sq = rational_sqrt(&rat(*num, *den))?;
                let root =
                    Self::try_root_of_unity(check_bound(2 * *m as u64).ok()?, *k as i64).ok()?;
                Some(root * Self::from_rational(sq))
            }
            Repr::Poly { .. } => None,
        }
    }

    /// Image under `zeta_M -> exp(2 pi i / M)`.
    pub fn embed_complex(&self) -> Complex64 {
        match &self.repr {
            Repr::Mono { num, den, k, m } => {
                let ang = 2.0 * std::f64::consts::PI * *k as f64 / *m as f64;
                Complex64::from_polar(*num as f64 / *den as f64, ang)
            }
            Repr::Poly { modulus, coeffs } => {
                let m = *modulus as f64;
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let ang = 2.0 * std::f64::consts::PI * k as f64 / m;
                    acc += Complex64::from_polar(rational_to_f64(c), ang);
                }
                acc
            }
        }
    }

    /// Embedding with an explicit precision request; double precision only.
    pub fn embed_complex_bits(&self, bits: u32) -> Result<Complex64, ScalarError> {
        if bits > 48 {
            return Err(ScalarError::Precision(bits));
        }
        Ok(self.embed_complex())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `"p/q"` form used in every JSON document.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (
                Repr::Mono {
                    num: a,
                    den: b,
                    k,
                    m,
                },
                Repr::Mono {
                    num: c,
                    den: d,
                    k: k2,
                    m: m2,
                },
            ) => a == c && (*a == 0 || (b == d && k == k2 && m == m2)),
            _ => {
                let m = lcm(self.modulus(), other.modulus()) as u32;
                self.poly_at(m) == other.poly_at(m)
            }
        }
    }
}

impl Eq for CycloScalar {}

impl Zero for CycloScalar {
    fn zero() -> Self {
        CycloScalar {
            repr: Repr::Mono {
                num: 0,
                den: 1,
                k: 0,
                m: 1,
            },
        }
    }
    fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Mono { num, .. } => *num == 0,
            Repr::Poly { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
        }
    }
}

impl One for CycloScalar {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl Neg for CycloScalar {
    type Output = Self;
    fn neg(self) -> Self {
        match self.repr {
            Repr::Mono { num, den, k, m } => CycloScalar {
                repr: mono(-(num as i128), den as i128, k as i128, m as i128)
                    .unwrap()
                    .unwrap(),
            },
            Repr::Poly { modulus, coeffs } => CycloScalar {
                repr: Repr::Poly {
                    modulus,
                    coeffs: coeffs.into_iter().map(|c| -c).collect(),
                },
            },
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $tr<&'a CycloScalar> for &'a CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &'a CycloScalar) -> CycloScalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Repr::Mono { num, den, k, m } = &self.repr {
            let c = if *den == 1 {
                format!("{num}")
            } else {
                format!("{num}/{den}")
            };
            return match (*num, *m) {
                (0, _) => write!(f, "0"),
                (_, 1) => write!(f, "{c}"),
                (_, 2) => write!(f, "-{c}"),
                _ => write!(f, "({c})z{m}^{k}"),
            };
        }
        let modulus = self.modulus();
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                _ => format!("({c})z{modulus}^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    modulus: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloRepr {
            modulus: self.modulus(),
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycloRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycloScalar::new(r.modulus, coeffs).map_err(D::Error::custom)
    }
}

/// The scalar interface the generic algebra layer is written against.
///
/// Exact types (`CycloScalar`, `Rational`) give exact zero tests. The float
/// types are provided for numeric post-processing only.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn recip(&self) -> Option<Self>;
    fn conjugate(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn to_complex(&self) -> Complex64;

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Scalar for CycloScalar {
    fn recip(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_integer(n)
    }
    fn to_complex(&self) -> Complex64 {
        self.embed_complex()
    }
}

impl Scalar for Rational {
    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(num_rational::Ratio::recip(self))
        }
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl Scalar for f64 {
    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn conjugate(&self) -> Self {
        *self
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Scalar for Complex64 {
    fn recip(&self) -> Option<Self> {
        if self.norm_sqr() == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycloScalar {
        CycloScalar::root_of_unity(m, k)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(z(4, 1) * z(4, 1), CycloScalar::from_integer(-1));
    }

    #[test]
    fn defining_relation() {
        for n in 2..=8 {
            assert_eq!(z(n, 1).pow(n as i64), CycloScalar::one());
        }
    }

    #[test]
    fn conj_is_inverse_on_roots() {
        assert_eq!(z(3, 1).conj() * z(3, 1), CycloScalar::one());
        assert_eq!(z(12, 5).conj(), z(12, -5));
    }

    #[test]
    fn embeddings() {
        assert!((z(4, 1).embed_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let w = z(3, 1).embed_complex();
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        assert!((CycloScalar::one() + z(2, 1)).embed_complex().norm() < 1e-15);
    }

    #[test]
    fn mixed_moduli_promote() {
        // zeta_4 * zeta_6 = zeta_12^5
        assert_eq!(z(4, 1) * z(6, 1), z(12, 5));
        assert_eq!((z(4, 1) * z(6, 1)).modulus(), 12);
        assert_eq!(z(6, 3), CycloScalar::from_integer(-1));
        assert_eq!(z(3, 1), z(6, 2));
    }

    #[test]
    fn inverse_of_general_element() {
        let a = z(5, 1) + CycloScalar::from_ratio(2, 3) * z(5, 3);
        let b = a.inv().unwrap();
        assert_eq!(a * b, CycloScalar::one());
        assert_eq!(CycloScalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn modulus_bound_is_enforced() {
        assert!(CycloScalar::try_root_of_unity(512, 1).is_err());
        let a = z(255, 1);
        assert!(matches!(
            a.try_mul(&z(2 * 127, 1)),
            Err(ScalarError::ModulusOverflow(..))
        ));
    }

    #[test]
    fn sqrt_of_monomials() {
        let i = z(4, 1);
        let s = i.monomial_sqrt().unwrap();
        assert_eq!(s.clone() * s, i);
        let t = CycloScalar::from_integer(-9) * z(3, 1);
        let r = t.monomial_sqrt().unwrap();
        assert_eq!(r.clone() * r, t);
        assert!(CycloScalar::from_integer(2).monomial_sqrt().is_none());
    }

    #[test]
    fn json_round_trip() {
        let a = CycloScalar::from_ratio(-3, 7) * z(8, 3) + CycloScalar::from_ratio(1, 2);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"modulus":8,"coeffs":["1/2","0/1","0/1","-3/7"]}"#);
        let b: CycloScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.modulus(), 8);
        let c = CycloScalar::from_ratio(-3, 7) * z(8, 3);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"modulus":8,"coeffs":["0/1","0/1","0/1","-3/7"]}"#
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element() -> impl Strategy<Value = CycloScalar> {
            let modulus = prop::sample::select(vec![1u32, 2, 3, 4, 6, 8, 12]);
            (modulus, prop::collection::vec((-6i64..6, 1i64..5), 1..4)).prop_map(|(m, terms)| {
                terms
                    .into_iter()
                    .enumerate()
                    .fold(CycloScalar::zero(), |acc, (k, (p, q))| {
                        acc + CycloScalar::from_ratio(p, q) * z(m, k as i64)
                    })
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in element(), b in element(), c in element()) {
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a - &b) + &b, a.clone());
            }

            #[test]
            fn inverses(a in element()) {
                prop_assume!(!a.is_zero());
                prop_assert_eq!(&a * &a.inv().unwrap(), CycloScalar::one());
            }

            #[test]
            fn embedding_is_a_homomorphism(a in element(), b in element()) {
                let (x, y) = (a.embed_complex(), b.embed_complex());
                prop_assert!(((&a * &b).embed_complex() - x * y).norm() < 1e-9);
                prop_assert!(((&a + &b).embed_complex() - (x + y)).norm() < 1e-9);
                prop_assert!((a.conj().embed_complex() - x.conj()).norm() < 1e-9);
            }

            #[test]
            fn json_round_trips(a in element()) {
                let s = serde_json::to_string(&a).unwrap();
                let b: CycloScalar = serde_json::from_str(&s).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }
}
