//! Lie colour algebras given by a homogeneous basis and structure constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{lcm, AbelianGroup, GroupElement};
use crate::cyclotomic::{default_field_order, field, CycloField, CycloNum};
use crate::error::{Error, Result};
use crate::grading::{twisted_factor, BiCharacterWire, CommutationFactor, Multiplier};
use crate::linalg::{axpy, is_zero_vector, zero_vector, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: GroupElement,
}

/// A bracket `[b_i, b_j] = sum_k c^k b_k` supplied on input.
#[derive(Clone, Debug)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, CycloNum)>,
}

#[derive(Clone, Debug)]
pub struct ColourAlgebra {
    group: AbelianGroup,
    epsilon: CommutationFactor,
    field: &'static CycloField,
    basis: Vec<BasisElement>,
    /// `table[i * n + j]` holds the coordinates of `[b_i, b_j]`.
    table: Vec<Vector>,
    /// `eps(deg b_i, deg b_j)`.
    eps_basis: Vec<CycloNum>,
}

impl PartialEq for ColourAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order()
            && self.group == other.group
            && self.epsilon == other.epsilon
            && self.basis == other.basis
            && self.table == other.table
    }
}
impl Eq for ColourAlgebra {}

fn lift_into(x: &CycloNum, f: &'static CycloField) -> Result<CycloNum> {
    x.embed(f)
}

impl ColourAlgebra {
    /// Builds and validates an algebra. A bracket given for `(i, j)` but not `(j, i)` is
    /// completed by antisymmetry; pairs never mentioned are zero.
    pub fn new(
        group: AbelianGroup,
        epsilon: CommutationFactor,
        basis: Vec<BasisElement>,
        brackets: &[Bracket],
    ) -> Result<Self> {
        Self::with_field_order(group, epsilon, basis, brackets, 1)
    }

    fn with_field_order(
        group: AbelianGroup,
        epsilon: CommutationFactor,
        basis: Vec<BasisElement>,
        brackets: &[Bracket],
        extra_order: u32,
    ) -> Result<Self> {
        if epsilon.group() != &group {
            return Err(Error::InvalidInput("commutation factor lives on a different group".into()));
        }
        for b in &basis {
            group.check(&b.degree)?;
        }
        for (k, b) in basis.iter().enumerate() {
            if basis[..k].iter().any(|c| c.name == b.name) {
                return Err(Error::InvalidInput(format!("duplicate basis name {:?}", b.name)));
            }
        }
        let order = [epsilon.root_order(), extra_order]
            .iter()
            .fold(default_field_order(group.exponent()) as u64, |acc, &x| lcm(acc, x as u64));
        let f = field(order as u32)?;
        let n = basis.len();
        let mut eps_basis = Vec::with_capacity(n * n);
        for a in &basis {
            for b in &basis {
                eps_basis.push(epsilon.eval(&a.degree, &b.degree, f)?);
            }
        }
        let mut table = vec![zero_vector(f, n); n * n];
        let mut given = vec![false; n * n];
        for br in brackets {
            if br.i >= n || br.j >= n {
                return Err(Error::InvalidInput(format!("bracket ({}, {}) out of range", br.i, br.j)));
            }
            if given[br.i * n + br.j] {
                return Err(Error::InvalidInput(format!("bracket ({}, {}) given twice", br.i, br.j)));
            }
            given[br.i * n + br.j] = true;
            let v = &mut table[br.i * n + br.j];
            for (k, c) in &br.coeffs {
                if *k >= n {
                    return Err(Error::InvalidInput(format!("basis index {k} out of range")));
                }
                v[*k] = lift_into(c, f)?;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if given[i * n + j] && !given[j * n + i] {
                    let mut v = zero_vector(f, n);
                    axpy(&mut v, &-&eps_basis[j * n + i], &table[i * n + j]);
                    table[j * n + i] = v;
                }
            }
        }
        let alg = ColourAlgebra {
            group,
            epsilon,
            field: f,
            basis,
            table,
            eps_basis,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let name = |i: usize| self.basis[i].name.clone();
        for i in 0..n {
            for j in 0..n {
                let target = self.group.add(&self.basis[i].degree, &self.basis[j].degree);
                for (k, c) in self.table[i * n + j].iter().enumerate() {
                    if !c.is_zero() && self.basis[k].degree != target {
                        return Err(Error::GradingViolation { x: name(i), y: name(j), z: name(k) });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let mut s = self.table[i * n + j].clone();
                axpy(&mut s, &self.eps_basis[i * n + j], &self.table[j * n + i]);
                if !is_zero_vector(&s) {
                    return Err(Error::AntisymmetryViolation { x: name(i), y: name(j) });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !is_zero_vector(&self.jacobi_sum(i, j, k)) {
                        return Err(Error::JacobiViolation { x: name(i), y: name(j), z: name(k) });
                    }
                }
            }
        }
        Ok(())
    }

    /// `eps(c,a) [x,[y,z]] + eps(a,b) [y,[z,x]] + eps(b,c) [z,[x,y]]` for basis `x, y, z`.
    pub fn jacobi_sum(&self, x: usize, y: usize, z: usize) -> Vector {
        let n = self.dim();
        let mut s = zero_vector(self.field, n);
        for (a, b, c, w) in [(x, y, z, self.eps(z, x)), (y, z, x, self.eps(x, y)), (z, x, y, self.eps(y, z))] {
            let inner = &self.table[b * n + c];
            for (k, coeff) in inner.iter().enumerate() {
                if !coeff.is_zero() {
                    axpy(&mut s, &(w * coeff), &self.table[a * n + k]);
                }
            }
        }
        s
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn epsilon(&self) -> &CommutationFactor {
        &self.epsilon
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.basis[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// `eps(deg b_i, deg b_j)`.
    pub fn eps(&self, i: usize, j: usize) -> &CycloNum {
        &self.eps_basis[i * self.dim() + j]
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, u: &[CycloNum], v: &[CycloNum]) -> Vector {
        let n = self.dim();
        let mut s = zero_vector(self.field, n);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    axpy(&mut s, &(ui * vj), &self.table[i * n + j]);
                }
            }
        }
        s
    }

    pub fn is_superalgebra(&self) -> bool {
        self.epsilon.is_super()
    }

    /// All nonzero brackets with `i <= j`.
    pub fn brackets(&self) -> Vec<Bracket> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let coeffs: Vec<(usize, CycloNum)> = self.table[i * n + j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !coeffs.is_empty() {
                    out.push(Bracket { i, j, coeffs });
                }
            }
        }
        out
    }

    fn all_brackets(&self) -> Vec<Bracket> {
        let n = self.dim();
        (0..n * n)
            .map(|ij| Bracket {
                i: ij / n,
                j: ij % n,
                coeffs: self.table[ij].iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect(),
            })
            .collect()
    }
}

/// Twists the bracket: `[x, y]_sigma = sigma(a, b) [x, y]` with factor `eps_sigma`.
pub fn discolour(alg: &ColourAlgebra, sigma: &Multiplier) -> Result<ColourAlgebra> {
    let eps = twisted_factor(&alg.epsilon, sigma)?;
    let order = lcm(alg.field.order() as u64, sigma.root_order() as u64) as u32;
    let f = field(order)?;
    let mut brackets = alg.all_brackets();
    for b in &mut brackets {
        let s = sigma.eval(alg.degree(b.i), alg.degree(b.j), f)?;
        for (_, c) in &mut b.coeffs {
            *c = c.embed(f)? * &s;
        }
    }
    ColourAlgebra::with_field_order(alg.group.clone(), eps, alg.basis.clone(), &brackets, order)
}

/// Inverse of [`discolour`] for the same multiplier.
pub fn recolour(alg: &ColourAlgebra, sigma: &Multiplier) -> Result<ColourAlgebra> {
    discolour(alg, &sigma.inverse())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketWire {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, CycloNum>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraWire {
    pub group: AbelianGroup,
    pub epsilon: BiCharacterWire,
    pub basis: Vec<BasisElement>,
    pub brackets: Vec<BracketWire>,
}

impl From<&ColourAlgebra> for AlgebraWire {
    fn from(a: &ColourAlgebra) -> Self {
        AlgebraWire {
            group: a.group.clone(),
            epsilon: a.epsilon.bicharacter().into(),
            basis: a.basis.clone(),
            brackets: a
                .brackets()
                .into_iter()
                .map(|b| BracketWire {
                    i: b.i,
                    j: b.j,
                    coeffs: b.coeffs.into_iter().map(|(k, c)| (k.to_string(), c)).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<AlgebraWire> for ColourAlgebra {
    type Error = Error;
    fn try_from(w: AlgebraWire) -> Result<Self> {
        let group = AbelianGroup::new(w.group.orders().to_vec())?;
        if w.epsilon.group != group {
            return Err(Error::InvalidInput("epsilon is defined on a different group".into()));
        }
        let eps = CommutationFactor::new(&group, w.epsilon.m, &w.epsilon.exponents)?;
        let brackets = w
            .brackets
            .into_iter()
            .map(|b| {
                let coeffs = b
                    .coeffs
                    .into_iter()
                    .map(|(k, c)| {
                        k.parse::<usize>()
                            .map(|k| (k, c))
                            .map_err(|_| Error::InvalidInput(format!("bad basis index {k:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Bracket { i: b.i, j: b.j, coeffs })
            })
            .collect::<Result<Vec<_>>>()?;
        ColourAlgebra::new(group, eps, w.basis, &brackets)
    }
}

impl Serialize for ColourAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColourAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = AlgebraWire::deserialize(d)?;
        ColourAlgebra::try_from(w).map_err(serde::de::Error::custom)
    }
}
