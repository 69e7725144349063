//! Reduction of cyclotomic matrices modulo a prime `p = 1 (mod m)`.
//!
//! Sending `zeta_m` to a primitive `m`-th root of unity in `F_p` is a ring map from the
//! `p`-integral part of `Q(zeta_m)`, so ranks can only drop under it. A full rank found
//! mod `p` is therefore a full rank over the field.

use malachite_base::num::arithmetic::traits::Sign;
use malachite_nz::natural::Natural;

use crate::cyclotomic::{CycloNum, Rational};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct ModP {
    p: u64,
    zeta_powers: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ModP {
    /// The `skip`-th largest prime below `2^31` that is `1 (mod m)`.
    pub fn for_order(m: u32, skip: usize) -> ModP {
        let m64 = m as u64;
        let mut k = ((1u64 << 31) - 2) / m64;
        let mut found = 0;
        let p = loop {
            let cand = k * m64 + 1;
            if is_prime(cand) {
                if found == skip {
                    break cand;
                }
                found += 1;
            }
            k -= 1;
        };
        let factors = prime_factors(p - 1);
        let g = (2..p)
            .find(|&g| factors.iter().all(|&q| powmod(g, (p - 1) / q, p) != 1))
            .expect("a primitive root exists");
        let w = powmod(g, (p - 1) / m64, p);
        let zeta_powers = (0..m64).map(|k| powmod(w, k, p)).collect();
        ModP { p, zeta_powers }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn natural_mod(&self, n: &Natural) -> u64 {
        u64::try_from(&(n % Natural::from(self.p))).expect("residue below p")
    }

    /// Image of `x`, or `None` if some denominator is divisible by `p`.
    pub fn reduce(&self, x: &CycloNum) -> Option<u64> {
        self.reduce_conjugate(x, 1)
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Option<MatP> {
        let data = m.entries().iter().map(|x| self.reduce(x)).collect::<Option<Vec<_>>>()?;
        Some(MatP { n: m.rows(), data })
    }
}

impl ModP {
    /// Image of `x` under `zeta -> w^k` for the fixed primitive root `w`.
    pub fn reduce_conjugate(&self, x: &CycloNum, k: u32) -> Option<u64> {
        let m = self.zeta_powers.len();
        let mut acc = 0;
        for (l, c) in x.coeffs().iter().enumerate() {
            if *c == 0u32 {
                continue;
            }
            let r = self.reduce_rational(c)?;
            acc = (acc + mulmod(r, self.zeta_powers[(l * k as usize) % m], self.p)) % self.p;
        }
        Some(acc)
    }

    fn reduce_rational(&self, c: &Rational) -> Option<u64> {
        let (num, den) = c.numerator_and_denominator_ref();
        let d = self.natural_mod(den);
        if d == 0 {
            return None;
        }
        let r = mulmod(self.natural_mod(num), invmod(d, self.p), self.p);
        Some(if c.sign() == std::cmp::Ordering::Less { (self.p - r) % self.p } else { r })
    }

    pub fn zeta_power(&self, k: usize) -> u64 {
        self.zeta_powers[k % self.zeta_powers.len()]
    }

    pub fn inv(&self, a: u64) -> u64 {
        invmod(a, self.p)
    }

    /// `n / d` with `|n|, d <= sqrt(p / 2)` congruent to `a`, if one exists.
    pub fn reconstruct(&self, a: u64) -> Option<Rational> {
        let p = self.p as i128;
        let bound = ((self.p / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (p, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 > bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() > bound {
            return None;
        }
        let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
        Some(Rational::from_signeds(n as i64, d as i64))
    }
}

/// Polynomials over `F_p`, lowest degree first, no trailing zeros.
fn ptrim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    ptrim(c)
}

fn pdivrem(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    if r.len() <= dd {
        return (Vec::new(), ptrim(r));
    }
    let inv = invmod(d[dd], p);
    let mut q = vec![0u64; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * inv % p;
        if c != 0 {
            for (j, &y) in d.iter().enumerate() {
                r[k + j] = (r[k + j] + (p - c) * y) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    (ptrim(q), ptrim(r))
}

fn pmonic(a: Vec<u64>, p: u64) -> Vec<u64> {
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = invmod(l, p);
            a.iter().map(|x| x * inv % p).collect()
        }
    }
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    pmonic(a, p)
}

/// `base^e mod f`.
fn ppowmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pdivrem(base, f, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = pdivrem(&pmul(&acc, &b, p), f, p).1;
        }
        b = pdivrem(&pmul(&b, &b, p), f, p).1;
        e >>= 1;
    }
    acc
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let c = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    ptrim(c)
}

fn split_linear(g: Vec<u64>, p: u64, shift: &mut u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push((p - g[0]) % p),
        _ => loop {
            *shift += 1;
            let h = ppowmod(&[*shift % p, 1], (p - 1) / 2, &g, p);
            let h = pgcd(&psub(&h, &[1], p), &g, p);
            if h.len() > 1 && h.len() < g.len() {
                let rest = pmonic(pdivrem(&g, &h, p).0, p);
                split_linear(h, p, shift, out);
                split_linear(rest, p, shift, out);
                return;
            }
        },
    }
}

/// Distinct roots in `F_p` of `f` (coefficients lowest first, nonzero leading term).
pub fn roots_mod_p(f: &[u64], p: u64) -> Vec<u64> {
    let f = pmonic(ptrim(f.to_vec()), p);
    if f.len() <= 1 {
        return Vec::new();
    }
    let xp = ppowmod(&[0, 1], p, &f, p);
    let g = pgcd(&psub(&xp, &[0, 1], p), &f, p);
    let mut out = Vec::new();
    let mut shift = 0;
    split_linear(g, p, &mut shift, &mut out);
    out.sort_unstable();
    out
}

/// A square matrix over `F_p`.
#[derive(Clone, Debug)]
pub struct MatP {
    n: usize,
    data: Vec<u64>,
}

impl MatP {
    fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        MatP { n, data }
    }

    fn mul(&self, other: &MatP, p: u64) -> MatP {
        let n = self.n;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        data[i * n + j] = (data[i * n + j] + a * b) % p;
                    }
                }
            }
        }
        MatP { n, data }
    }
}

struct EchelonP {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonP {
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                let c = p - c;
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = (*x + c * r) % p;
                    }
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = invmod(v[piv], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }
}

/// Dimension mod `p` of the unital algebra generated by `gens`, or `None` when some
/// entry does not reduce.
pub fn closure_rank(gens: &[Matrix], n: usize, modp: &ModP) -> Option<usize> {
    let p = modp.p;
    let gp = gens.iter().map(|g| modp.reduce_matrix(g)).collect::<Option<Vec<_>>>()?;
    let mut ech = EchelonP { p, rows: Vec::new(), pivots: Vec::new() };
    let id = MatP::identity(n);
    if n == 0 {
        return Some(0);
    }
    ech.insert(id.data.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() && ech.rows.len() < n * n {
        let b = queue[head].clone();
        head += 1;
        for g in &gp {
            let c = g.mul(&b, p);
            if ech.insert(c.data.clone()) {
                queue.push(c);
            }
        }
    }
    Some(ech.rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::field;

    #[test]
    fn prime_is_one_mod_m() {
        for m in [1u32, 4, 12, 60] {
            let mp = ModP::for_order(m, 0);
            assert_eq!((mp.prime() - 1) % m as u64, 0);
            assert!(is_prime(mp.prime()));
            assert_ne!(ModP::for_order(m, 1).prime(), mp.prime());
        }
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = field(12).unwrap();
        let mp = ModP::for_order(12, 0);
        let a = CycloNum::zeta(f, 5).scale(&Rational::from_signeds(-3, 7)) + CycloNum::from_int(f, 2);
        let b = CycloNum::zeta(f, 2) + CycloNum::from_ratio(f, 1, 5).unwrap();
        let p = mp.prime();
        let (ra, rb) = (mp.reduce(&a).unwrap(), mp.reduce(&b).unwrap());
        assert_eq!(mp.reduce(&(&a * &b)).unwrap(), ra * rb % p);
        assert_eq!(mp.reduce(&(&a + &b)).unwrap(), (ra + rb) % p);
        assert_eq!(mp.reduce(&CycloNum::zeta(f, 12)).unwrap(), 1);
        assert_eq!(mp.reduce(&CycloNum::zeta(f, 6)).unwrap(), p - 1);
    }

    #[test]
    fn closure_of_full_matrix_algebra() {
        let f = field(4).unwrap();
        let one = CycloNum::one(f);
        let zero = CycloNum::zero(f);
        let e = Matrix::from_rows(f, vec![vec![zero.clone(), one.clone()], vec![zero.clone(), zero.clone()]]).unwrap();
        let fm = e.transpose();
        let mp = ModP::for_order(4, 0);
        assert_eq!(closure_rank(&[e.clone(), fm], 2, &mp), Some(4));
        assert_eq!(closure_rank(&[e], 2, &mp), Some(2));
    }

    #[test]
    fn roots_of_split_polynomial() {
        let mp = ModP::for_order(4, 0);
        let p = mp.prime();
        // (x - 3)(x + 5)(x - 7) = x^3 - 5x^2 - 29x + 105
        let f = vec![105, p - 29, p - 5, 1];
        assert_eq!(roots_mod_p(&f, p), {
            let mut r = vec![3, 7, p - 5];
            r.sort_unstable();
            r
        });
        assert!(roots_mod_p(&[1, 0, 1], 7).is_empty());
    }

    #[test]
    fn rational_reconstruction() {
        let mp = ModP::for_order(4, 0);
        let r = Rational::from_signeds(-7, 12);
        let a = mp.reduce_rational(&r).unwrap();
        assert_eq!(mp.reconstruct(a), Some(r));
    }
}
