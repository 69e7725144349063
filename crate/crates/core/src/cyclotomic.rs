//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! An element is stored in the power basis `1, z, ..., z^{phi(m)-1}` with rational
//! coefficients, where `z` is a root of the `m`-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use malachite_base::num::arithmetic::traits::{Reciprocal, Sign};
use malachite_base::num::basic::traits::{One, Zero};
pub use malachite_q::Rational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{Character, GroupElement};
use crate::error::{Error, Result};

const MAX_ORDER: u32 = 4096;

/// The cyclotomic field of `m`-th roots of unity.
#[derive(Debug)]
pub struct CycloField {
    m: u32,
    phi: usize,
    /// Integer coefficients of `Phi_m`, lowest degree first.
    modulus: Vec<i64>,
    /// `z^k mod Phi_m` for `k < max(m, 2 phi - 1)`.
    powers: Vec<Vec<i64>>,
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] / lead;
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(m: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        let q = cyclotomic_poly(d, cache);
        p = poly_divexact(&p, &q);
    }
    cache.insert(m, p.clone());
    p
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}
impl Eq for CycloField {}

impl Hash for CycloField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
    }
}

impl CycloField {
    fn build(m: u32) -> Result<CycloField> {
        let modulus = cyclotomic_poly(m, &mut HashMap::new());
        let phi = modulus.len() - 1;
        let count = (m as usize).max(2 * phi - 1);
        let mut powers: Vec<Vec<i64>> = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by z and reduce with the monic modulus
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..phi {
                cur[i] = top
                    .checked_mul(modulus[i])
                    .and_then(|t| cur[i].checked_sub(t))
                    .ok_or_else(|| Error::InvalidInput(format!("cyclotomic field of order {m} is too large")))?;
            }
        }
        Ok(CycloField { m, phi, modulus, powers })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub(crate) fn power_of_z(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.m as u64) as usize]
    }
}

/// The interned field of order `m`.
pub fn field(m: u32) -> Result<&'static CycloField> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::InvalidInput(format!("cyclotomic order {m} out of range")));
    }
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
    let mut map = FIELDS.get_or_init(Default::default).lock().unwrap();
    if let Some(f) = map.get(&m) {
        return Ok(f);
    }
    let f: &'static CycloField = Box::leak(Box::new(CycloField::build(m)?));
    map.insert(m, f);
    Ok(f)
}

#[derive(Clone)]
pub struct CycloNum {
    field: &'static CycloField,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}
impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

fn same_field(a: &CycloNum, b: &CycloNum) {
    assert_eq!(a.field.m, b.field.m, "cyclotomic numbers from different fields");
}

impl CycloNum {
    pub fn zero(f: &'static CycloField) -> Self {
        CycloNum { field: f, coeffs: vec![Rational::ZERO; f.phi] }
    }

    pub fn one(f: &'static CycloField) -> Self {
        Self::from_rational(f, Rational::ONE)
    }

    pub fn from_rational(f: &'static CycloField, r: Rational) -> Self {
        let mut x = Self::zero(f);
        x.coeffs[0] = r;
        x
    }

    pub fn from_int(f: &'static CycloField, n: i64) -> Self {
        Self::from_rational(f, Rational::from(n))
    }

    pub fn from_ratio(f: &'static CycloField, p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(f, Rational::from_signeds(p, q)))
    }

    pub fn from_coeffs(f: &'static CycloField, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != f.phi {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients for Q(zeta_{}), got {}",
                f.phi,
                f.m,
                coeffs.len()
            )));
        }
        Ok(CycloNum { field: f, coeffs })
    }

    /// `zeta_m^k`.
    pub fn zeta(f: &'static CycloField, k: i64) -> Self {
        let k = k.rem_euclid(f.m as i64) as u64;
        let coeffs = f.power_of_z(k).iter().map(|&c| Rational::from(c)).collect();
        CycloNum { field: f, coeffs }
    }

    /// `zeta_n^k`, which needs `n | m`.
    pub fn root_of_unity(f: &'static CycloField, k: i64, n: u32) -> Result<Self> {
        if n == 0 || f.m % n != 0 {
            return Err(Error::InvalidInput(format!("Q(zeta_{}) has no primitive {n}-th root of unity", f.m)));
        }
        Ok(Self::zeta(f, k * (f.m / n) as i64))
    }

    /// The square root of -1, which needs `4 | m`.
    pub fn i(f: &'static CycloField) -> Result<Self> {
        Self::root_of_unity(f, 1, 4)
    }

    /// `a + b i` with rational parts given as numerator/denominator pairs.
    pub fn gaussian(f: &'static CycloField, re: (i64, i64), im: (i64, i64)) -> Result<Self> {
        let a = Self::from_ratio(f, re.0, re.1)?;
        let b = Self::from_ratio(f, im.0, im.1)?;
        Ok(a + b * Self::i(f)?)
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0u32)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1u32 && self.coeffs[1..].iter().all(|c| *c == 0u32)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(|c| *c == 0u32).then(|| &self.coeffs[0])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNum {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &CycloNum, b: &CycloNum) {
        same_field(a, b);
        same_field(self, a);
        if a.is_zero() || b.is_zero() {
            return;
        }
        let phi = self.field.phi;
        if phi == 1 {
            self.coeffs[0] += &a.coeffs[0] * &b.coeffs[0];
            return;
        }
        let mut prod = vec![Rational::ZERO; 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if *x == 0u32 {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if *y != 0u32 {
                    prod[i + j] += x * y;
                }
            }
        }
        for (k, p) in prod.into_iter().enumerate() {
            if p == 0u32 {
                continue;
            }
            if k < phi {
                self.coeffs[k] += p;
                continue;
            }
            for (i, &c) in self.field.powers[k].iter().enumerate() {
                match c {
                    0 => {}
                    1 => self.coeffs[i] += &p,
                    -1 => self.coeffs[i] -= &p,
                    c => self.coeffs[i] += &p * Rational::from(c),
                }
            }
        }
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<Self> {
        self.check_field(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<Self> {
        self.check_field(other)?;
        Ok(self * other)
    }

    fn check_field(&self, other: &CycloNum) -> Result<()> {
        if self.field.m != other.field.m {
            return Err(Error::InvalidInput(format!(
                "cannot combine elements of Q(zeta_{}) and Q(zeta_{})",
                self.field.m, other.field.m
            )));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.field, r.reciprocal()));
        }
        // extended Euclid: find s with s * a = 1 mod Phi_m
        let modulus: Vec<Rational> = self.field.modulus.iter().map(|&c| Rational::from(c)).collect();
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![], vec![Rational::ONE]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Phi_m is irreducible
        let c = r1[0].clone().reciprocal();
        let mut coeffs: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        coeffs.resize(self.field.phi, Rational::ZERO);
        Ok(CycloNum { field: self.field, coeffs })
    }

    pub fn div(&self, other: &CycloNum) -> Result<Self> {
        self.check_field(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under `zeta -> zeta^k`, for `k` prime to `m`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let m = self.field.m as i64;
        if gcd_i64(k.rem_euclid(m), m) != 1 {
            return Err(Error::InvalidInput(format!("{k} is not a unit modulo {m}")));
        }
        let mut out = Self::zero(self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c != 0u32 {
                let e = (i as i64 * k).rem_euclid(m);
                out += &Self::zeta(self.field, e).scale(c);
            }
        }
        Ok(out)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Image under the inclusion `Q(zeta_m) -> Q(zeta_M)` for `m | M`.
    pub fn embed(&self, target: &'static CycloField) -> Result<Self> {
        if target.m % self.field.m != 0 {
            return Err(Error::InvalidInput(format!(
                "Q(zeta_{}) does not embed in Q(zeta_{})",
                self.field.m, target.m
            )));
        }
        if target.m == self.field.m {
            return Ok(self.clone());
        }
        let step = (target.m / self.field.m) as i64;
        let mut out = Self::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c != 0u32 {
                out += &Self::zeta(target, i as i64 * step).scale(c);
            }
        }
        Ok(out)
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| *c == 0u32) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::ZERO; n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].clone().reciprocal();
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut q = vec![Rational::ZERO; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] * &inv;
        if c != 0u32 {
            for (j, y) in b.iter().enumerate() {
                rem[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

/// `f(g)` as an element of `F`; needs the group exponent to divide the field order.
pub fn char_eval(f: &Character, g: &GroupElement, field: &'static CycloField) -> Result<CycloNum> {
    let e = f.group().exponent();
    CycloNum::root_of_unity(field, f.value_exponent(g) as i64, e)
}

/// Field order used for a grading group of exponent `e`: `lcm(e, 4)`.
pub fn default_field_order(exponent: u32) -> u32 {
    crate::abelian::lcm(exponent as u64, 4) as u32
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name = if self.field.m == 4 { "i" } else { "z" };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0u32 {
                continue;
            }
            let neg = c.sign() == std::cmp::Ordering::Less;
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => name.to_string(),
                k => format!("{name}^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1u32 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $fn:ident, $assign_tr:ident, $assign_fn:ident, $body:expr) => {
        impl $assign_tr<&CycloNum> for CycloNum {
            fn $assign_fn(&mut self, rhs: &CycloNum) {
                same_field(self, rhs);
                let f: fn(&mut CycloNum, &CycloNum) = $body;
                f(self, rhs);
            }
        }
        impl $assign_tr<CycloNum> for CycloNum {
            fn $assign_fn(&mut self, rhs: CycloNum) {
                self.$assign_fn(&rhs);
            }
        }
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $fn(self, rhs: &CycloNum) -> CycloNum {
                let mut out = self.clone();
                out.$assign_fn(rhs);
                out
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $fn(mut self, rhs: CycloNum) -> CycloNum {
                self.$assign_fn(&rhs);
                self
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $fn(mut self, rhs: &CycloNum) -> CycloNum {
                self.$assign_fn(rhs);
                self
            }
        }
        impl $tr<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $fn(self, rhs: CycloNum) -> CycloNum {
                let mut out = self.clone();
                out.$assign_fn(&rhs);
                out
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a, b| {
    for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
        *x += y;
    }
});
binop!(Sub, sub, SubAssign, sub_assign, |a, b| {
    for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
        *x -= y;
    }
});
binop!(Mul, mul, MulAssign, mul_assign, |a, b| {
    let mut out = CycloNum::zero(a.field);
    out.add_mul(a, b);
    *a = out;
});

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -self.clone()
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    m: u32,
    coeffs: Vec<String>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let q: Rational = q.trim().parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
        if q == 0u32 {
            return Err(Error::DivisionByZero);
        }
        let p: Rational = p.trim().parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
        return Ok(p / q);
    }
    t.parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))
}

impl CycloNum {
    pub fn from_wire(m: u32, coeffs: &[String]) -> Result<Self> {
        let f = field(m)?;
        let cs = coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(f, cs)
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire {
            m: self.field.m,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycloWire::deserialize(d)?;
        CycloNum::from_wire(w.m, &w.coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let mut cache = HashMap::new();
        assert_eq!(cyclotomic_poly(1, &mut cache), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4, &mut cache), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6, &mut cache), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12, &mut cache), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        let p105 = cyclotomic_poly(105, &mut cache);
        assert_eq!(p105.len(), 49);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn zeta_has_exact_order() {
        for m in [1u32, 2, 3, 4, 5, 8, 12, 15] {
            let f = field(m).unwrap();
            let z = CycloNum::zeta(f, 1);
            assert!(z.pow(m as u64).is_one(), "m = {m}");
            for k in 1..m {
                assert!(!z.pow(k as u64).is_one(), "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn gaussian_arithmetic() {
        let f = field(4).unwrap();
        let i = CycloNum::i(f).unwrap();
        assert_eq!(&i * &i, CycloNum::from_int(f, -1));
        let a = CycloNum::gaussian(f, (1, 2), (3, 1)).unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(a.to_string(), "1/2 + 3i");
        assert_eq!(a.conj(), CycloNum::gaussian(f, (1, 2), (-3, 1)).unwrap());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = field(12).unwrap();
        assert_eq!(CycloNum::zero(f).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let f3 = field(3).unwrap();
        let f12 = field(12).unwrap();
        let a = CycloNum::zeta(f3, 1) + CycloNum::from_int(f3, 2);
        let b = CycloNum::zeta(f3, 2).scale(&Rational::from_signeds(-1, 3));
        let lhs = (&a * &b).embed(f12).unwrap();
        let rhs = a.embed(f12).unwrap() * b.embed(f12).unwrap();
        assert_eq!(lhs, rhs);
        assert!(CycloNum::zeta(f12, 1).embed(f3).is_err());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = CycloNum::one(field(4).unwrap());
        let b = CycloNum::one(field(3).unwrap());
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = field(8).unwrap();
        let x = CycloNum::zeta(f, 3).scale(&Rational::from_signeds(-7, 5)) + CycloNum::from_ratio(f, 1, 3).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":8,"coeffs":["1/3","0","0","-7/5"]}"#);
        let y: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<CycloNum>(r#"{"m":8,"coeffs":["1/0","0","0","0"]}"#).is_err());
        assert!(serde_json::from_str::<CycloNum>(r#"{"m":8,"coeffs":["1"]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn num(m: u32) -> impl Strategy<Value = CycloNum> {
            let f = field(m).unwrap();
            proptest::collection::vec((-20i64..20, 1i64..6), f.degree()).prop_map(move |cs| {
                CycloNum::from_coeffs(f, cs.into_iter().map(|(p, q)| Rational::from_signeds(p, q)).collect()).unwrap()
            })
        }

        fn triple() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
            prop::sample::select(vec![3u32, 4, 5, 8, 12]).prop_flat_map(|m| (num(m), num(m), num(m)))
        }

        proptest! {
            #[test]
            fn field_axioms((a, b, c) in triple()) {
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a - &b) + &b, a.clone());
                if !a.is_zero() {
                    prop_assert!((&a * &a.inverse().unwrap()).is_one());
                }
                let s = serde_json::to_string(&a).unwrap();
                prop_assert_eq!(serde_json::from_str::<CycloNum>(&s).unwrap(), a);
            }
        }
    }
}
