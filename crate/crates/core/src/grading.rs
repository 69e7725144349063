//! Commutation factors and multipliers on finite abelian groups.
//!
//! Both are bicharacters with values in the `m`-th roots of unity. They are stored as
//! an exponent matrix on the cyclic generators, `b(g_i, g_j) = zeta_m^{E[i][j]}`, and
//! extended bimultiplicatively.

use serde::{Deserialize, Serialize};

use crate::abelian::{lcm, AbelianGroup, GroupElement};
use crate::cyclotomic::{CycloField, CycloNum};
use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiCharacter {
    group: AbelianGroup,
    m: u32,
    exps: Vec<Vec<u32>>,
}

impl BiCharacter {
    /// Checks that every generator value respects the cyclic orders, then normalizes
    /// the root order to the smallest one that works.
    pub fn new(group: &AbelianGroup, m: u32, exps: &[Vec<i64>]) -> Result<Self> {
        let k = group.rank();
        if m == 0 {
            return Err(Error::InvalidInput("root order must be positive".into()));
        }
        if exps.len() != k || exps.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidInput(format!("exponent matrix must be {k} x {k}")));
        }
        let n = group.orders();
        let mut e = vec![vec![0u32; k]; k];
        for i in 0..k {
            for j in 0..k {
                let x = exps[i][j].rem_euclid(m as i64) as u64;
                for &order in [n[i], n[j]].iter() {
                    if x * order as u64 % m as u64 != 0 {
                        return Err(Error::InvalidInput(format!(
                            "value on generators ({i}, {j}) has order not dividing {order}"
                        )));
                    }
                }
                e[i][j] = x as u32;
            }
        }
        Ok(Self::normalized(group.clone(), m, e))
    }

    fn normalized(group: AbelianGroup, m: u32, exps: Vec<Vec<u32>>) -> Self {
        let g = exps.iter().flatten().fold(m as u64, |acc, &x| gcd(acc, x as u64)) as u32;
        let exps = exps.into_iter().map(|r| r.into_iter().map(|x| x / g).collect()).collect();
        BiCharacter { group, m: m / g, exps }
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        BiCharacter {
            group: group.clone(),
            m: 1,
            exps: vec![vec![0; group.rank()]; group.rank()],
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Root order after normalization.
    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    /// `b(a, c) = zeta_m^k`; returns `k mod m`.
    pub fn exponent(&self, a: &GroupElement, c: &GroupElement) -> u32 {
        let m = self.m as u64;
        let (x, y) = (a.residues(), c.residues());
        let mut k = 0u64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                k = (k + xi as u64 * yj as u64 % m * self.exps[i][j] as u64) % m;
            }
        }
        k as u32
    }

    pub fn eval(&self, a: &GroupElement, c: &GroupElement, f: &'static CycloField) -> Result<CycloNum> {
        CycloNum::root_of_unity(f, self.exponent(a, c) as i64, self.m)
    }

    /// `Some(1)` or `Some(-1)` when the value is real, else `None`.
    pub fn sign(&self, a: &GroupElement, c: &GroupElement) -> Option<i8> {
        let k = self.exponent(a, c);
        if k == 0 {
            Some(1)
        } else if 2 * k == self.m {
            Some(-1)
        } else {
            None
        }
    }

    fn rescaled(&self, m: u32) -> Vec<Vec<u64>> {
        let s = (m / self.m) as u64;
        self.exps.iter().map(|r| r.iter().map(|&x| x as u64 * s).collect()).collect()
    }

    fn combine(&self, other: &BiCharacter, f: impl Fn(usize, usize, &[Vec<u64>], &[Vec<u64>], u64) -> u64) -> Self {
        let m = lcm(self.m as u64, other.m as u64) as u32;
        let (a, b) = (self.rescaled(m), other.rescaled(m));
        let k = self.group.rank();
        let exps = (0..k)
            .map(|i| (0..k).map(|j| (f(i, j, &a, &b, m as u64) % m as u64) as u32).collect())
            .collect();
        Self::normalized(self.group.clone(), m, exps)
    }

    pub fn product(&self, other: &BiCharacter) -> Self {
        self.combine(other, |i, j, a, b, _| a[i][j] + b[i][j])
    }

    pub fn inverse(&self) -> Self {
        let m = self.m;
        let exps = self.exps.iter().map(|r| r.iter().map(|&x| (m - x) % m).collect()).collect();
        Self::normalized(self.group.clone(), m, exps)
    }

    /// `(a, c) -> b(c, a)`.
    pub fn transpose(&self) -> Self {
        let k = self.group.rank();
        let exps = (0..k).map(|i| (0..k).map(|j| self.exps[j][i]).collect()).collect();
        Self::normalized(self.group.clone(), self.m, exps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiCharacterWire {
    pub group: AbelianGroup,
    pub m: u32,
    pub exponents: Vec<Vec<i64>>,
}

impl From<&BiCharacter> for BiCharacterWire {
    fn from(b: &BiCharacter) -> Self {
        BiCharacterWire {
            group: b.group.clone(),
            m: b.m,
            exponents: b.exps.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect(),
        }
    }
}

/// A bicharacter `eps` with `eps(a, b) eps(b, a) = 1` and `eps(g, g) = +-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutationFactor(BiCharacter);

/// An arbitrary bicharacter used to twist brackets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplier(BiCharacter);

impl std::ops::Deref for CommutationFactor {
    type Target = BiCharacter;
    fn deref(&self) -> &BiCharacter {
        &self.0
    }
}

impl std::ops::Deref for Multiplier {
    type Target = BiCharacter;
    fn deref(&self) -> &BiCharacter {
        &self.0
    }
}

impl CommutationFactor {
    pub fn new(group: &AbelianGroup, m: u32, exps: &[Vec<i64>]) -> Result<Self> {
        Self::from_bicharacter(BiCharacter::new(group, m, exps).map_err(|e| match e {
            Error::InvalidInput(reason) => Error::InvalidCommutationFactor {
                alpha: "-".into(),
                beta: "-".into(),
                reason,
            },
            e => e,
        })?)
    }

    /// Validates the two axioms exhaustively over all pairs of group elements.
    pub fn from_bicharacter(b: BiCharacter) -> Result<Self> {
        let els = b.group.elements();
        for x in &els {
            for y in &els {
                if (b.exponent(x, y) + b.exponent(y, x)) % b.m != 0 {
                    return Err(Error::InvalidCommutationFactor {
                        alpha: x.to_string(),
                        beta: y.to_string(),
                        reason: "eps(a,b) eps(b,a) != 1".into(),
                    });
                }
            }
            if b.sign(x, x).is_none() {
                return Err(Error::InvalidCommutationFactor {
                    alpha: x.to_string(),
                    beta: x.to_string(),
                    reason: "eps(g,g) is not +-1".into(),
                });
            }
        }
        Ok(CommutationFactor(b))
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        CommutationFactor(BiCharacter::trivial(group))
    }

    pub fn bicharacter(&self) -> &BiCharacter {
        &self.0
    }

    /// `0` on the even part `{g : eps(g,g) = 1}`, `1` elsewhere.
    pub fn parity(&self, g: &GroupElement) -> u8 {
        u8::from(self.0.exponent(g, g) != 0)
    }

    pub fn parity_split(&self) -> ParitySplit {
        let (even, odd) = self.0.group.elements().into_iter().partition(|g| self.parity(g) == 0);
        ParitySplit { even, odd }
    }

    /// True when `eps(a, b) = (-1)^{p(a) p(b)}` for all pairs.
    pub fn is_super(&self) -> bool {
        let els = self.0.group.elements();
        els.iter().all(|a| {
            els.iter()
                .all(|b| self.0.sign(a, b) == Some(if self.parity(a) * self.parity(b) == 1 { -1 } else { 1 }))
        })
    }
}

impl Multiplier {
    pub fn new(group: &AbelianGroup, m: u32, exps: &[Vec<i64>]) -> Result<Self> {
        BiCharacter::new(group, m, exps)
            .map(Multiplier)
            .map_err(|e| Error::InvalidMultiplier(e.to_string()))
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Multiplier(BiCharacter::trivial(group))
    }

    pub fn bicharacter(&self) -> &BiCharacter {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Multiplier(self.0.inverse())
    }

    pub fn product(&self, other: &Multiplier) -> Self {
        Multiplier(self.0.product(&other.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySplit {
    pub even: Vec<GroupElement>,
    pub odd: Vec<GroupElement>,
}

/// `eps_sigma(a, b) = sigma(a, b) sigma(b, a)^{-1} eps(a, b)`.
pub fn twisted_factor(eps: &CommutationFactor, sigma: &Multiplier) -> Result<CommutationFactor> {
    if eps.group() != sigma.group() {
        return Err(Error::InvalidMultiplier("multiplier lives on a different group".into()));
    }
    let b = sigma.0.product(&sigma.0.transpose().inverse()).product(&eps.0);
    CommutationFactor::from_bicharacter(b).map_err(|e| Error::InvalidMultiplier(e.to_string()))
}

/// A multiplier turning `eps` into the super sign `(-1)^{p(a) p(b)}`.
///
/// With `eps'(a, b) = (-1)^{p(a) p(b)} eps(a, b)^{-1}`, set `sigma(g_i, g_j) = eps'(g_i, g_j)`
/// for `i < j` and `1` otherwise.
pub fn scheunert_multiplier(eps: &CommutationFactor) -> Result<Multiplier> {
    let g = eps.group();
    let k = g.rank();
    let m = lcm(eps.m as u64, 2) as u32;
    let base = eps.0.rescaled(m);
    let parity: Vec<u8> = (0..k).map(|i| eps.parity(&g.generator(i))).collect();
    let mut exps = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let sign = if parity[i] * parity[j] == 1 { m as i64 / 2 } else { 0 };
            exps[i][j] = sign - base[i][j] as i64;
        }
    }
    let sigma = Multiplier::new(g, m, &exps)?;
    let twisted = twisted_factor(eps, &sigma)?;
    if !twisted.is_super() || (0..k).any(|i| twisted.parity(&g.generator(i)) != parity[i]) {
        return Err(Error::InvalidMultiplier("constructed multiplier does not reach the super sign".into()));
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::field;

    fn klein() -> AbelianGroup {
        AbelianGroup::new(vec![2, 2]).unwrap()
    }

    fn el(g: &AbelianGroup, r: &[i64]) -> GroupElement {
        g.element(r).unwrap()
    }

    /// `(-1)^{a1 b2 - a2 b1}`
    fn sl2_factor() -> CommutationFactor {
        CommutationFactor::new(&klein(), 2, &[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn sl2_factor_values() {
        let g = klein();
        let eps = sl2_factor();
        for a in g.elements() {
            for b in g.elements() {
                let (x, y) = (a.residues(), b.residues());
                let expected = if (x[0] * y[1] + x[1] * y[0]) % 2 == 0 { 1 } else { -1 };
                assert_eq!(eps.sign(&a, &b), Some(expected));
            }
        }
        // every element is even
        assert!(eps.parity_split().odd.is_empty());
        assert!(!eps.is_super());
    }

    #[test]
    fn scheunert_for_sl2_factor() {
        let g = klein();
        let sigma = scheunert_multiplier(&sl2_factor()).unwrap();
        // sigma(a, b) = (-1)^{a1 b2}
        for a in g.elements() {
            for b in g.elements() {
                let expected = if a.residues()[0] * b.residues()[1] == 1 { -1 } else { 1 };
                assert_eq!(sigma.sign(&a, &b), Some(expected));
            }
        }
        let t = twisted_factor(&sl2_factor(), &sigma).unwrap();
        assert_eq!(t, CommutationFactor::trivial(&g));
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let e = CommutationFactor::new(&klein(), 2, &[vec![0, 1], vec![0, 0]]);
        assert!(matches!(e, Err(Error::InvalidCommutationFactor { .. })));
    }

    #[test]
    fn rejects_non_sign_diagonal() {
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        assert!(CommutationFactor::new(&z4, 4, &[vec![1]]).is_err());
        assert!(CommutationFactor::new(&z4, 4, &[vec![2]]).is_ok());
    }

    #[test]
    fn rejects_wrong_order() {
        let z3 = AbelianGroup::new(vec![3]).unwrap();
        assert!(matches!(CommutationFactor::new(&z3, 2, &[vec![1]]), Err(Error::InvalidCommutationFactor { .. })));
        assert!(matches!(Multiplier::new(&z3, 2, &[vec![1]]), Err(Error::InvalidMultiplier(_))));
    }

    #[test]
    fn normalization_makes_equal_factors_compare_equal() {
        let g = klein();
        let a = CommutationFactor::new(&g, 4, &[vec![0, 2], vec![2, 0]]).unwrap();
        assert_eq!(a, sl2_factor());
        assert_eq!(a.root_order(), 2);
    }

    #[test]
    fn super_factor_parity() {
        let g = klein();
        let eps = CommutationFactor::new(&g, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let split = eps.parity_split();
        assert_eq!(split.even, vec![el(&g, &[0, 0]), el(&g, &[1, 1])]);
        // (-1)^{a1 b1 + a2 b2} is not the super sign of its own parity
        assert!(!eps.is_super());
        let sigma = scheunert_multiplier(&eps).unwrap();
        assert!(twisted_factor(&eps, &sigma).unwrap().is_super());
    }

    #[test]
    fn eval_in_field() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        let eps = CommutationFactor::new(&g, 3, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let f = field(12).unwrap();
        let a = el(&g, &[1, 0]);
        let b = el(&g, &[0, 1]);
        let v = eps.eval(&a, &b, f).unwrap();
        assert_eq!(v, CycloNum::root_of_unity(f, 1, 3).unwrap());
        assert!((&v * &eps.eval(&b, &a, f).unwrap()).is_one());
    }

    #[test]
    fn multiplier_inverse_cancels() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let s = Multiplier::new(&g, 4, &[vec![2, 2], vec![2, 3]]).unwrap();
        assert_eq!(s.product(&s.inverse()), Multiplier::trivial(&g));
    }
}
