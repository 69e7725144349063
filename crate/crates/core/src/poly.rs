//! Univariate polynomials over a cyclotomic field, enough for splitting operators by
//! their characteristic polynomials.

use crate::cyclotomic::{CycloField, CycloNum, Rational};
use crate::abelian::gcd;
use crate::linalg::Matrix;
use crate::modp::{roots_mod_p, ModP};

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: &'static CycloField,
    c: Vec<CycloNum>,
}

impl Poly {
    pub fn new(field: &'static CycloField, mut c: Vec<CycloNum>) -> Self {
        while c.last().is_some_and(CycloNum::is_zero) {
            c.pop();
        }
        Poly { field, c }
    }

    pub fn one(field: &'static CycloField) -> Self {
        Poly::new(field, vec![CycloNum::one(field)])
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn monic(&self) -> Poly {
        match self.c.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inverse().expect("nonzero leading coefficient");
                Poly::new(self.field, self.c.iter().map(|x| x * &inv).collect())
            }
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![CycloNum::zero(self.field); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[i] -= x;
        }
        Poly::new(self.field, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(self.field, vec![]);
        }
        let mut c = vec![CycloNum::zero(self.field); self.c.len() + other.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in other.c.iter().enumerate() {
                c[i + j].add_mul(x, y);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.c.clone();
        let dd = d.degree();
        if rem.len() <= dd {
            return (Poly::new(self.field, vec![]), self.clone());
        }
        let inv = d.c[dd].inverse().expect("nonzero");
        let mut q = vec![CycloNum::zero(self.field); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &rem[k + dd] * &inv;
            if !coef.is_zero() {
                for (j, y) in d.c.iter().enumerate() {
                    let t = &coef * y;
                    rem[k + j] -= &t;
                }
            }
            q[k] = coef;
        }
        rem.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, x)| x.scale(&Rational::from(i as u64))).collect();
        Poly::new(self.field, c)
    }

    /// Yun's square-free decomposition `p = lead * prod a_i^i`; returns the nonconstant `a_i`.
    pub fn squarefree_factors(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let a = f.gcd(&d);
        let mut b = f.divrem(&a).0;
        let mut c = d.divrem(&a).0;
        loop {
            let e = c.sub(&b.derivative());
            let g = b.gcd(&e);
            if g.degree() > 0 {
                out.push(g.clone());
            }
            b = b.divrem(&g).0;
            if b.degree() == 0 {
                break;
            }
            c = e.divrem(&g).0;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn radical(&self) -> Poly {
        let f = self.monic();
        f.divrem(&f.gcd(&f.derivative())).0
    }

    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.c.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }
}

impl Poly {
    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        let mut acc = CycloNum::zero(self.field);
        for c in self.c.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Roots in the coefficient field whose coordinates have small height. Candidates come
    /// from roots modulo a split prime under every Galois embedding, lifted by rational
    /// reconstruction; each one is checked exactly, so every returned value is a root.
    pub fn roots(&self) -> Vec<CycloNum> {
        let f = self.field;
        let r = self.radical();
        match r.degree() {
            0 => return Vec::new(),
            1 => return vec![-&r.c[0]],
            _ => {}
        }
        let m = f.order();
        let ks: Vec<u32> = (1..=m).filter(|&k| gcd(k as u64, m as u64) == 1).collect();
        let phi = ks.len();
        for skip in 0..3 {
            let mp = ModP::for_order(m, skip);
            let p = mp.prime();
            let mut images = Vec::with_capacity(phi);
            for &k in &ks {
                let Some(red) = r.c.iter().map(|x| mp.reduce_conjugate(x, k)).collect::<Option<Vec<_>>>() else {
                    break;
                };
                images.push(roots_mod_p(&red, p));
            }
            if images.len() < phi {
                continue;
            }
            let combos: usize = images.iter().map(Vec::len).product();
            if combos == 0 {
                return Vec::new();
            }
            if combos > MAX_ROOT_COMBINATIONS {
                return Vec::new();
            }
            // inverse of V[a][l] = w^{k_a l}
            let vinv = invert_mod(&ks, &mp);
            let mut found: Vec<CycloNum> = Vec::new();
            let mut idx = vec![0usize; phi];
            'combos: loop {
                let vals: Vec<u64> = idx.iter().zip(&images).map(|(&i, im)| im[i]).collect();
                let mut coeffs = Vec::with_capacity(phi);
                let mut ok = true;
                for row in &vinv {
                    let c = row.iter().zip(&vals).fold(0u64, |acc, (&a, &b)| (acc + a * b % p) % p);
                    match mp.reconstruct(c) {
                        Some(q) => coeffs.push(q),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    if let Ok(y) = CycloNum::from_coeffs(f, coeffs) {
                        if r.eval(&y).is_zero() && !found.contains(&y) {
                            found.push(y);
                        }
                    }
                }
                for a in 0..phi {
                    idx[a] += 1;
                    if idx[a] < images[a].len() {
                        continue 'combos;
                    }
                    idx[a] = 0;
                }
                break;
            }
            return found;
        }
        Vec::new()
    }
}

const MAX_ROOT_COMBINATIONS: usize = 1 << 16;

fn invert_mod(ks: &[u32], mp: &ModP) -> Vec<Vec<u64>> {
    let p = mp.prime();
    let n = ks.len();
    let mut a: Vec<Vec<u64>> = ks
        .iter()
        .map(|&k| {
            let mut row: Vec<u64> = (0..n).map(|l| mp.zeta_power(k as usize * l)).collect();
            row.extend((0..n).map(|j| u64::from(j == ks.iter().position(|&x| x == k).unwrap_or(0))));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0).expect("embedding matrix is invertible mod p");
        a.swap(col, piv);
        let inv = mp.inv(a[col][col]);
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = p - a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + c * y) % p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier.
pub fn charpoly(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    let mut c = vec![CycloNum::zero(f); n + 1];
    c[n] = CycloNum::one(f);
    let mut mk = Matrix::zeros(f, n, n);
    let id = Matrix::identity(f, n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&id.scale(&c[n - k + 1]));
        let t = m.mul(&mk).trace();
        c[n - k] = -t.scale(&Rational::from_signeds(1, k as i64));
    }
    Poly::new(f, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::field;

    fn p(f: &'static CycloField, c: &[i64]) -> Poly {
        Poly::new(f, c.iter().map(|&x| CycloNum::from_int(f, x)).collect())
    }

    #[test]
    fn charpoly_of_companion() {
        let f = field(4).unwrap();
        // companion of x^2 - 3x + 2
        let m = Matrix::from_rows(
            f,
            vec![
                vec![CycloNum::zero(f), CycloNum::from_int(f, -2)],
                vec![CycloNum::one(f), CycloNum::from_int(f, 3)],
            ],
        )
        .unwrap();
        let cp = charpoly(&m);
        assert_eq!(cp, p(f, &[2, -3, 1]));
        assert!(cp.eval_matrix(&m).is_zero());
    }

    #[test]
    fn yun_separates_multiplicities() {
        let f = field(4).unwrap();
        // (x - 1)^2 (x + 2)
        let q = p(f, &[-1, 1]).mul(&p(f, &[-1, 1])).mul(&p(f, &[2, 1]));
        let fs = q.squarefree_factors();
        assert_eq!(fs, vec![p(f, &[2, 1]), p(f, &[-1, 1])]);
        assert_eq!(q.radical(), p(f, &[-1, 1]).mul(&p(f, &[2, 1])));
    }

    #[test]
    fn gcd_and_division() {
        let f = field(4).unwrap();
        let a = p(f, &[-1, 0, 1]);
        let b = p(f, &[1, 1]);
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, p(f, &[-1, 1]));
    }

    #[test]
    fn roots_over_gaussian_rationals() {
        let f = field(4).unwrap();
        let i = CycloNum::i(f).unwrap();
        let a = CycloNum::from_ratio(f, 1, 2).unwrap() + &i;
        let b = CycloNum::from_ratio(f, -3, 4).unwrap();
        let lin = |r: &CycloNum| Poly::new(f, vec![-r, CycloNum::one(f)]);
        // (x - a)^2 (x - b)(x^2 + 2)
        let q = lin(&a).mul(&lin(&a)).mul(&lin(&b)).mul(&p(f, &[2, 0, 1]));
        let mut r = q.roots();
        r.sort_by_key(|x| x.to_string());
        let mut want = vec![a, b];
        want.sort_by_key(|x| x.to_string());
        assert_eq!(r, want);
    }

    #[test]
    fn roots_in_larger_field() {
        let f = field(12).unwrap();
        let z = CycloNum::zeta(f, 1);
        let w = CycloNum::zeta(f, 5).scale(&Rational::from_signeds(2, 3));
        let q = Poly::new(f, vec![-&z, CycloNum::one(f)]).mul(&Poly::new(f, vec![-&w, CycloNum::one(f)]));
        assert_eq!(q.roots().len(), 2);
    }
}
