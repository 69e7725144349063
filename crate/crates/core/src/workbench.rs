//! Concrete algebras and modules: colour `sl2` over `Z2 x Z2` with its module families,
//! the `Z2 x Z2` supersymmetry model, and the classification driver for colour `sl2`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::abelian::{AbelianGroup, CompositionSeries, GroupElement, Subgroup};
use crate::colouralg::{BasisElement, Bracket, ColourAlgebra};
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::gmodule::{
    coarsen, decompose, is_graded_irreducible, is_isomorphic, parity_shift, recolour_module, restrict,
    restrict_with_basis, GradedModule,
};
use crate::grading::{BiCharacterWire, CommutationFactor, Multiplier};
use crate::linalg::{zero_vector, Matrix, Vector};
use crate::loopfunctor::{distinct_classes, iterate_lift_along, loop_module, twist_orbit, LoopModule, StepRecord};

pub fn klein() -> AbelianGroup {
    AbelianGroup::new(vec![2, 2]).expect("Z2 x Z2")
}

fn el(g: &AbelianGroup, a: i64, b: i64) -> GroupElement {
    g.element(&[a, b]).expect("element of Z2 x Z2")
}

/// `sigma(a, b) = (-1)^{a_2 b_1}`.
pub fn sigma_sl2() -> Multiplier {
    Multiplier::new(&klein(), 2, &[vec![0, 0], vec![1, 0]]).expect("valid multiplier")
}

/// `{00, 11}`.
pub fn h2() -> Subgroup {
    let g = klein();
    Subgroup::generated(&g, vec![el(&g, 1, 1)]).expect("subgroup")
}

/// `Z2 x Z2 > {00, 11} > 0`.
pub fn sl2_chain() -> CompositionSeries {
    let g = klein();
    CompositionSeries::new(vec![Subgroup::whole(&g), h2(), Subgroup::trivial(&g)]).expect("composition series")
}

fn sl2_basis(g: &AbelianGroup) -> Vec<BasisElement> {
    [("a1", 1, 0), ("a2", 0, 1), ("a3", 1, 1)]
        .into_iter()
        .map(|(n, a, b)| BasisElement {
            name: n.into(),
            degree: el(g, a, b),
        })
        .collect()
}

fn sl2_like(eps: CommutationFactor, signs: [i64; 3]) -> ColourAlgebra {
    let g = klein();
    let f = crate::cyclotomic::field(4).expect("field");
    let br = |i, j, k, s| Bracket {
        i,
        j,
        coeffs: vec![(k, CycloNum::from_int(f, s))],
    };
    let brackets = [br(0, 1, 2, signs[0]), br(1, 2, 0, signs[1]), br(2, 0, 1, signs[2])];
    ColourAlgebra::new(g.clone(), eps, sl2_basis(&g), &brackets).expect("valid algebra")
}

/// `[[a1,a2]] = a3`, `[[a2,a3]] = a1`, `[[a3,a1]] = a2` with `eps(a, b) = (-1)^{a_1 b_2 - a_2 b_1}`.
pub fn make_sl2c() -> ColourAlgebra {
    let eps = CommutationFactor::new(&klein(), 2, &[vec![0, 1], vec![-1, 0]]).expect("commutation factor");
    sl2_like(eps, [1, 1, 1])
}

/// `[a1,a2] = a3`, `[a2,a3] = -a1`, `[a3,a1] = -a2`, an ordinary Lie algebra.
pub fn make_sl2_discoloured() -> ColourAlgebra {
    sl2_like(CommutationFactor::trivial(&klein()), [1, -1, -1])
}

pub fn sl2c() -> Arc<ColourAlgebra> {
    static A: OnceLock<Arc<ColourAlgebra>> = OnceLock::new();
    A.get_or_init(|| Arc::new(make_sl2c())).clone()
}

pub fn sl2_discoloured() -> Arc<ColourAlgebra> {
    static A: OnceLock<Arc<ColourAlgebra>> = OnceLock::new();
    A.get_or_init(|| Arc::new(make_sl2_discoloured())).clone()
}

/// The `e`, `f`, `h` matrices of the irreducible `sl2`-module of highest weight `lambda`.
pub fn efh(lambda: u32) -> [Matrix; 3] {
    let f = sl2_discoloured().field();
    let n = lambda as usize + 1;
    let l = lambda as i64;
    let e = Matrix::from_fn(f, n, n, |r, c| {
        if c >= 1 && r == c - 1 {
            CycloNum::from_int(f, l - c as i64 + 1)
        } else {
            CycloNum::zero(f)
        }
    });
    let fm = Matrix::from_fn(f, n, n, |r, c| {
        if r == c + 1 {
            CycloNum::from_int(f, c as i64 + 1)
        } else {
            CycloNum::zero(f)
        }
    });
    let h = Matrix::from_fn(f, n, n, |r, c| {
        if r == c {
            CycloNum::from_int(f, l - 2 * c as i64)
        } else {
            CycloNum::zero(f)
        }
    });
    [e, fm, h]
}

/// `V_lambda` over the discoloured algebra, as an ungraded module, with
/// `a1 = (i/2)(e - f)`, `a2 = -(1/2)(e + f)`, `a3 = -(i/2) h`.
pub fn make_v_lambda(lambda: u32) -> Result<GradedModule> {
    let alg = sl2_discoloured();
    let f = alg.field();
    let [e, fm, h] = efh(lambda);
    let half_i = CycloNum::gaussian(f, (0, 1), (1, 2))?;
    let minus_half = CycloNum::from_ratio(f, -1, 2)?;
    let a1 = e.sub(&fm).scale(&half_i);
    let a2 = e.add(&fm).scale(&minus_half);
    let a3 = h.scale(&-&half_i);
    let g = alg.group().clone();
    let n = lambda as usize + 1;
    GradedModule::new(alg, &Subgroup::whole(&g), vec![g.identity(); n], vec![a1, a2, a3])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sl2Variant {
    /// `V_lambda`, ungraded.
    V,
    /// `v_j` in `00` for even `j`, `01` for odd `j`, graded by `G/{00,11}`.
    E,
    /// `E` with the two cosets swapped.
    O,
    EPlus,
    EMinus,
    OPlus,
    OMinus,
    /// The loop of `E` by `{00,11}`.
    LoopE,
    LoopO,
    /// The module over colour `sl2` obtained by recolouring with `sigma_sl2`.
    Recoloured(Box<Sl2Variant>),
    /// Recoloured `E+` with the grading forgotten, in the basis
    /// `u_j = (v_j + v_{l-j}) + i (-1)^j (v_j - v_{l-j})`.
    UngradedEPlus,
    /// Ungraded summand of recoloured `LoopE` spanned by
    /// `u_j = v_{0,j} + zeta i (-1)^j v_{1,j} + xi v_{0,l-j} - zeta xi i (-1)^j v_{1,l-j}`.
    U { zeta: i8, xi: i8 },
}

impl Sl2Variant {
    pub fn dim(&self, lambda: u32) -> usize {
        let n = lambda as usize + 1;
        match self {
            Sl2Variant::LoopE | Sl2Variant::LoopO => 2 * n,
            Sl2Variant::U { .. } => n / 2,
            Sl2Variant::Recoloured(b) => b.dim(lambda),
            _ => n,
        }
    }

    /// Whether the variant exists for this `lambda`.
    pub fn allows(&self, lambda: u32) -> bool {
        let even = lambda % 2 == 0;
        match self {
            Sl2Variant::V | Sl2Variant::E | Sl2Variant::O => true,
            Sl2Variant::EPlus | Sl2Variant::EMinus | Sl2Variant::OPlus | Sl2Variant::OMinus => even,
            Sl2Variant::UngradedEPlus => even,
            Sl2Variant::LoopE | Sl2Variant::LoopO => !even,
            Sl2Variant::U { zeta, xi } => !even && zeta.abs() == 1 && xi.abs() == 1,
            Sl2Variant::Recoloured(b) => b.is_fully_graded() && b.allows(lambda),
        }
    }

    fn is_fully_graded(&self) -> bool {
        matches!(
            self,
            Sl2Variant::EPlus
                | Sl2Variant::EMinus
                | Sl2Variant::OPlus
                | Sl2Variant::OMinus
                | Sl2Variant::LoopE
                | Sl2Variant::LoopO
        )
    }

    /// Every variant that exists for `lambda`.
    pub fn catalog(lambda: u32) -> Vec<Sl2Variant> {
        use Sl2Variant::*;
        let mut out = vec![V, E, O, EPlus, EMinus, OPlus, OMinus, LoopE, LoopO];
        let bases: Vec<Sl2Variant> = out.iter().filter(|v| v.is_fully_graded()).cloned().collect();
        out.extend(bases.into_iter().map(|b| Recoloured(Box::new(b))));
        out.push(UngradedEPlus);
        for zeta in [1, -1] {
            for xi in [1, -1] {
                out.push(U { zeta, xi });
            }
        }
        out.retain(|v| v.allows(lambda));
        out
    }
}

impl fmt::Display for Sl2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i8| if s > 0 { '+' } else { '-' };
        match self {
            Sl2Variant::V => write!(f, "V"),
            Sl2Variant::E => write!(f, "E"),
            Sl2Variant::O => write!(f, "O"),
            Sl2Variant::EPlus => write!(f, "E+"),
            Sl2Variant::EMinus => write!(f, "E-"),
            Sl2Variant::OPlus => write!(f, "O+"),
            Sl2Variant::OMinus => write!(f, "O-"),
            Sl2Variant::LoopE => write!(f, "LoopE"),
            Sl2Variant::LoopO => write!(f, "LoopO"),
            Sl2Variant::Recoloured(b) => write!(f, "sigma({b})"),
            Sl2Variant::UngradedEPlus => write!(f, "u(E+)"),
            Sl2Variant::U { zeta, xi } => write!(f, "U{}{}", sign(*zeta), sign(*xi)),
        }
    }
}

impl FromStr for Sl2Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("sigma(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Sl2Variant::Recoloured(Box::new(inner.parse()?)));
        }
        let sign = |c: char| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(Error::InvalidVariant(format!("unknown variant {s:?}"))),
        };
        Ok(match s {
            "V" => Sl2Variant::V,
            "E" => Sl2Variant::E,
            "O" => Sl2Variant::O,
            "E+" => Sl2Variant::EPlus,
            "E-" => Sl2Variant::EMinus,
            "O+" => Sl2Variant::OPlus,
            "O-" => Sl2Variant::OMinus,
            "LoopE" => Sl2Variant::LoopE,
            "LoopO" => Sl2Variant::LoopO,
            "u(E+)" => Sl2Variant::UngradedEPlus,
            _ => {
                let c: Vec<char> = s.chars().collect();
                if c.len() == 3 && c[0] == 'U' {
                    Sl2Variant::U {
                        zeta: sign(c[1])?,
                        xi: sign(c[2])?,
                    }
                } else {
                    return Err(Error::InvalidVariant(format!("unknown variant {s:?}")));
                }
            }
        })
    }
}

/// A member of one of the colour `sl2` module families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Family {
    pub lambda: u32,
    pub variant: Sl2Variant,
}

impl Sl2Family {
    pub fn build(&self) -> Result<GradedModule> {
        make_sl2_graded(self.lambda, &self.variant)
    }
}

fn e_or_o(lambda: u32, odd_first: bool) -> Result<GradedModule> {
    let v = make_v_lambda(lambda)?;
    let g = klein();
    let degrees = (0..=lambda)
        .map(|j| if (j % 2 == 1) != odd_first { el(&g, 0, 1) } else { el(&g, 0, 0) })
        .collect();
    GradedModule::new(v.algebra().clone(), &h2(), degrees, v.action().to_vec())
}

/// The homogeneous basis of `E+` in `v_j` coordinates, sector by sector in the order
/// `00, 01, 10, 11`, with the degree of each column.
pub fn e_plus_basis(lambda: u32) -> (Matrix, Vec<GroupElement>) {
    let g = klein();
    let f = sl2_discoloured().field();
    let n = lambda as usize + 1;
    let l = lambda as usize;
    let comb = |j: usize, s: i64| {
        let mut x = zero_vector(f, n);
        x[j] += &CycloNum::one(f);
        x[l - j] += &CycloNum::from_int(f, s);
        x
    };
    let mut cols: Vec<Vector> = Vec::new();
    let mut degrees = Vec::new();
    let sectors: [(i64, i64, usize, i64, bool); 4] = [(0, 0, 0, 1, true), (0, 1, 1, 1, true), (1, 0, 1, -1, false), (1, 1, 0, -1, false)];
    for (a, b, parity, s, with_middle) in sectors {
        for j in (parity..=l / 2).step_by(2) {
            if !with_middle && 2 * j == l {
                continue;
            }
            cols.push(comb(j, s));
            degrees.push(el(&g, a, b));
        }
    }
    (Matrix::from_columns(f, n, &cols), degrees)
}

fn e_plus(lambda: u32) -> Result<GradedModule> {
    let v = make_v_lambda(lambda)?;
    let (b, degrees) = e_plus_basis(lambda);
    let binv = b.inverse()?;
    let action = v.action().iter().map(|a| binv.mul(a).mul(&b)).collect();
    GradedModule::new(v.algebra().clone(), &Subgroup::trivial(&klein()), degrees, action)
}

fn invalid(lambda: u32, variant: &Sl2Variant) -> Error {
    let parity = if lambda % 2 == 0 { "even" } else { "odd" };
    Error::InvalidVariant(format!("{variant} does not exist for {parity} lambda = {lambda}"))
}

/// Builds a catalog module. Variants over the discoloured algebra unless recoloured.
pub fn make_sl2_graded(lambda: u32, variant: &Sl2Variant) -> Result<GradedModule> {
    if !variant.allows(lambda) {
        return Err(invalid(lambda, variant));
    }
    let g = klein();
    let f = sl2c().field();
    let i = CycloNum::i(f)?;
    match variant {
        Sl2Variant::V => make_v_lambda(lambda),
        Sl2Variant::E => e_or_o(lambda, false),
        Sl2Variant::O => e_or_o(lambda, true),
        Sl2Variant::EPlus => e_plus(lambda),
        Sl2Variant::EMinus => parity_shift(&e_plus(lambda)?, &el(&g, 1, 1)),
        Sl2Variant::OPlus => parity_shift(&e_plus(lambda)?, &el(&g, 0, 1)),
        Sl2Variant::OMinus => parity_shift(&e_plus(lambda)?, &el(&g, 1, 0)),
        Sl2Variant::LoopE => Ok(loop_module(&e_or_o(lambda, false)?, &Subgroup::trivial(&g))?.module),
        Sl2Variant::LoopO => Ok(loop_module(&e_or_o(lambda, true)?, &Subgroup::trivial(&g))?.module),
        Sl2Variant::Recoloured(b) => {
            let base = make_sl2_graded(lambda, b)?;
            let mut r = recolour_module(&base, &sigma_sl2())?;
            if same_as(r.algebra(), &sl2c()) {
                r = rebind(r, sl2c())?;
            }
            Ok(r)
        }
        Sl2Variant::UngradedEPlus => {
            let r = make_sl2_graded(lambda, &Sl2Variant::Recoloured(Box::new(Sl2Variant::EPlus)))?;
            let c = coarsen(&r, &Subgroup::whole(&g))?;
            let (b, _) = e_plus_basis(lambda);
            let binv = b.inverse()?;
            let l = lambda as usize;
            let n = l + 1;
            let u: Vec<Vector> = (0..n)
                .map(|j| {
                    let s = if j % 2 == 0 { i.clone() } else { -&i };
                    let mut x = zero_vector(f, n);
                    x[j] += &(CycloNum::one(f) + &s);
                    x[l - j] += &(CycloNum::one(f) - &s);
                    binv.mul_vec(&x)
                })
                .collect();
            restrict_with_basis(&c, &u)
        }
        Sl2Variant::U { zeta, xi } => {
            let r = make_sl2_graded(lambda, &Sl2Variant::Recoloured(Box::new(Sl2Variant::LoopE)))?;
            let c = coarsen(&r, &Subgroup::whole(&g))?;
            let n = lambda as usize + 1;
            let l = lambda as usize;
            let (z, x) = (CycloNum::from_int(f, *zeta as i64), CycloNum::from_int(f, *xi as i64));
            let u: Vec<Vector> = (0..n / 2)
                .map(|j| {
                    let zi = if j % 2 == 0 { &z * &i } else { -(&z * &i) };
                    let mut w = zero_vector(f, 2 * n);
                    w[j] += &CycloNum::one(f);
                    w[n + j] += &zi;
                    w[l - j] += &x;
                    w[n + l - j] -= &(&zi * &x);
                    w
                })
                .collect();
            restrict_with_basis(&c, &u)
        }
    }
}

fn same_as(a: &Arc<ColourAlgebra>, b: &Arc<ColourAlgebra>) -> bool {
    **a == **b
}

fn rebind(v: GradedModule, alg: Arc<ColourAlgebra>) -> Result<GradedModule> {
    GradedModule::new(alg, v.subgroup(), v.degrees().to_vec(), v.action().to_vec())
}

/// The `Z2 x Z2` supersymmetry algebra `H:00, Q1:01, Q2:10, Z:11` with
/// `[[Q1,Q1]] = [[Q2,Q2]] = H`, `[[Q2,Q1]] = Z` and `eps(a,b) = (-1)^{a_1 b_1 + a_2 b_2}`.
pub fn make_bd_algebra() -> ColourAlgebra {
    let g = klein();
    let eps = CommutationFactor::new(&g, 2, &[vec![1, 0], vec![0, 1]]).expect("commutation factor");
    let basis = [("H", 0, 0), ("Q1", 0, 1), ("Q2", 1, 0), ("Z", 1, 1)]
        .into_iter()
        .map(|(n, a, b)| BasisElement {
            name: n.into(),
            degree: el(&g, a, b),
        })
        .collect();
    let f = crate::cyclotomic::field(4).expect("field");
    let one = CycloNum::one(f);
    let br = |i, j, k| Bracket {
        i,
        j,
        coeffs: vec![(k, one.clone())],
    };
    ColourAlgebra::new(g, eps, basis, &[br(1, 1, 0), br(2, 2, 0), br(2, 1, 3)]).expect("valid algebra")
}

#[derive(Clone, Debug)]
pub struct BdModel {
    pub algebra: Arc<ColourAlgebra>,
    /// Two-dimensional, graded by `G/{00,11}` with `v0` in `00` and `v1` in `01`.
    pub seed: GradedModule,
    pub loop_module: LoopModule,
}

pub const BD_ASSUMPTION: &str = "commutation factor eps(a,b) = (-1)^(a1 b1 + a2 b2) on Z2 x Z2";

/// Seed: `Q1 = sigma_1`, `Q2 = sigma_2`, `H = 2`, `Z = [Q2, Q1] = -2i sigma_3`. Its loop
/// by the trivial subgroup has sectors in the order `00, 01, 11, 10`.
pub fn make_bd_model() -> Result<BdModel> {
    let alg = Arc::new(make_bd_algebra());
    let f = alg.field();
    let g = alg.group().clone();
    let i = CycloNum::i(f)?;
    let int = |x: i64| CycloNum::from_int(f, x);
    let m = |a: [CycloNum; 4]| {
        let [p, q, r, s] = a;
        Matrix::from_rows(f, vec![vec![p, q], vec![r, s]])
    };
    let h = m([int(2), int(0), int(0), int(2)])?;
    let q1 = m([int(0), int(1), int(1), int(0)])?;
    let q2 = m([int(0), -&i, i.clone(), int(0)])?;
    let z = q2.mul(&q1).sub(&q1.mul(&q2));
    let seed = GradedModule::new(alg.clone(), &h2(), vec![el(&g, 0, 0), el(&g, 0, 1)], vec![h, q1, q2, z])?;
    let loop_module = loop_module(&seed, &Subgroup::trivial(&g))?;
    Ok(BdModel {
        algebra: alg,
        seed,
        loop_module,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockShape {
    Zero,
    BlockDiagonal,
    BlockAntiDiagonal,
    Mixed,
}

/// Shape of a square matrix of even size split into four equal blocks.
pub fn block_shape(m: &Matrix) -> BlockShape {
    let n = m.rows() / 2;
    let block_zero = |r0: usize, c0: usize| (0..n).all(|r| (0..n).all(|c| m.get(r0 + r, c0 + c).is_zero()));
    let diag = block_zero(0, 0) && block_zero(n, n);
    let off = block_zero(0, n) && block_zero(n, 0);
    match (diag, off) {
        (true, true) => BlockShape::Zero,
        (false, true) => BlockShape::BlockDiagonal,
        (true, false) => BlockShape::BlockAntiDiagonal,
        (false, false) => BlockShape::Mixed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub graded_classes: usize,
    pub graded_dim: usize,
    pub equivalence_classes: usize,
    pub ungraded_classes: usize,
    pub ungraded_dim: usize,
    pub twist_orbit: usize,
}

impl Expected {
    pub fn for_lambda(lambda: u32) -> Self {
        let n = lambda as usize + 1;
        if lambda % 2 == 0 {
            Expected {
                graded_classes: 4,
                graded_dim: n,
                equivalence_classes: 1,
                ungraded_classes: 1,
                ungraded_dim: n,
                twist_orbit: 1,
            }
        } else {
            Expected {
                graded_classes: 2,
                graded_dim: 2 * n,
                equivalence_classes: 1,
                ungraded_classes: 4,
                ungraded_dim: n / 2,
                twist_orbit: 4,
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub lambda: u32,
    pub steps: Vec<StepRecord>,
    pub graded_classes: usize,
    pub graded_dims: Vec<usize>,
    pub graded_sector_dims: Vec<Vec<usize>>,
    /// Catalog modules isomorphic to each lifted class, in class order.
    pub matched: Vec<String>,
    pub equivalence_classes: usize,
    pub ungraded_classes: usize,
    pub ungraded_dims: Vec<usize>,
    pub twist_orbit: usize,
    pub expected: Expected,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub max_lambda: u32,
    pub sigma: BiCharacterWire,
    pub chain: Vec<Vec<GroupElement>>,
    pub lambdas: Vec<LambdaReport>,
    pub mismatches: usize,
    pub pass: bool,
}

impl ClassificationReport {
    /// `Err(ClassificationMismatch)` naming the first failure, if any.
    pub fn check(&self) -> Result<()> {
        match self.lambdas.iter().find(|r| !r.pass) {
            None => Ok(()),
            Some(r) => Err(Error::ClassificationMismatch(format!("lambda = {}: {}", r.lambda, r.mismatches.join("; ")))),
        }
    }
}

/// Number of orbits of `mods` under parity shifts by all of `G`.
pub fn parity_orbits(mods: &[GradedModule]) -> Result<usize> {
    let mut label: Vec<usize> = (0..mods.len()).collect();
    for a in 0..mods.len() {
        let shifts = mods[a]
            .quotient()
            .reps()
            .iter()
            .map(|h| parity_shift(&mods[a], h))
            .collect::<Result<Vec<_>>>()?;
        for b in a + 1..mods.len() {
            if label[b] != b {
                continue;
            }
            for s in &shifts {
                if is_isomorphic(s, &mods[b])? {
                    label[b] = label[a];
                    break;
                }
            }
        }
    }
    let mut roots: Vec<usize> = label.clone();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

fn recoloured(lambda: u32, base: Sl2Variant) -> Result<GradedModule> {
    make_sl2_graded(lambda, &Sl2Variant::Recoloured(Box::new(base)))
}

/// Lifts `V_lambda` along [`sl2_chain`], recolours, and checks the result against the
/// catalog together with the ungraded picture.
pub fn classify_lambda(lambda: u32) -> Result<LambdaReport> {
    let expected = Expected::for_lambda(lambda);
    let mut mismatches = Vec::new();
    let v = make_v_lambda(lambda)?;
    let lift = iterate_lift_along(&v, &sl2_chain())?;
    let sigma = sigma_sl2();
    let classes = lift
        .classes
        .iter()
        .map(|c| recolour_module(c, &sigma).and_then(|r| rebind(r, sl2c())))
        .collect::<Result<Vec<_>>>()?;
    let even = lambda % 2 == 0;
    let names: Vec<Sl2Variant> = if even {
        vec![Sl2Variant::EPlus, Sl2Variant::EMinus, Sl2Variant::OPlus, Sl2Variant::OMinus]
    } else {
        vec![Sl2Variant::LoopE, Sl2Variant::LoopO]
    };
    let catalog = names.iter().map(|b| recoloured(lambda, b.clone())).collect::<Result<Vec<_>>>()?;
    for (name, m) in names.iter().zip(&catalog) {
        if !is_graded_irreducible(m)?.is_irreducible() {
            mismatches.push(format!("sigma({name}) is not graded-irreducible"));
        }
    }

    let mut matched = Vec::new();
    let mut reached = vec![false; catalog.len()];
    for (k, c) in classes.iter().enumerate() {
        let mut hits = Vec::new();
        for (idx, m) in catalog.iter().enumerate() {
            if is_isomorphic(c, m)? {
                hits.push(format!("sigma({})", names[idx]));
                reached[idx] = true;
            }
        }
        if hits.is_empty() {
            mismatches.push(format!("class {k} matches no catalog module"));
        }
        matched.push(hits.join(" = "));
    }
    for (idx, r) in reached.iter().enumerate() {
        if !r {
            mismatches.push(format!("sigma({}) is not reached by the lift", names[idx]));
        }
    }
    for a in 0..catalog.len() {
        for b in a + 1..catalog.len() {
            if is_isomorphic(&catalog[a], &catalog[b])? {
                mismatches.push(format!("catalog modules sigma({}) and sigma({}) are isomorphic", names[a], names[b]));
            }
        }
    }
    if classes.len() != expected.graded_classes {
        mismatches.push(format!("{} graded classes, expected {}", classes.len(), expected.graded_classes));
    }
    let graded_dims: Vec<usize> = classes.iter().map(GradedModule::dim).collect();
    if graded_dims.iter().any(|&d| d != expected.graded_dim) {
        mismatches.push(format!("graded dimensions {graded_dims:?}, expected {}", expected.graded_dim));
    }
    let equivalence_classes = parity_orbits(&classes)?;
    if equivalence_classes != expected.equivalence_classes {
        mismatches.push(format!("{equivalence_classes} parity-shift classes, expected 1"));
    }

    let g = klein();
    let whole = Subgroup::whole(&g);
    let (ungraded, twist_orbit) = if even {
        let w = make_sl2_graded(lambda, &Sl2Variant::UngradedEPlus)?;
        if !is_graded_irreducible(&w)?.is_irreducible() {
            mismatches.push("u(E+) is not irreducible".into());
        }
        let coarse = catalog.iter().map(|m| coarsen(m, &whole)).collect::<Result<Vec<_>>>()?;
        if !is_isomorphic(&coarse[0], &w)? {
            mismatches.push("u(E+) differs from the ungraded sigma(E+)".into());
        }
        let orbit = twist_orbit(&w)?.len();
        (distinct_classes(coarse)?, orbit)
    } else {
        let us = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .into_iter()
            .map(|(zeta, xi)| make_sl2_graded(lambda, &Sl2Variant::U { zeta, xi }))
            .collect::<Result<Vec<_>>>()?;
        for (a, ua) in us.iter().enumerate() {
            if !is_graded_irreducible(ua)?.is_irreducible() {
                mismatches.push(format!("U number {a} is not irreducible"));
            }
            for (b, ub) in us.iter().enumerate() {
                if is_isomorphic(ua, ub)? != (a == b) {
                    mismatches.push(format!("U pair ({a}, {b}) has the wrong isomorphism verdict"));
                }
            }
        }
        let orbit = twist_orbit(&us[0])?;
        for t in &orbit {
            let mut found = false;
            for u in &us {
                if is_isomorphic(t, u)? {
                    found = true;
                    break;
                }
            }
            if !found {
                mismatches.push("a twist of U++ is not among the U modules".into());
            }
        }
        let coarse = coarsen(&catalog[0], &whole)?;
        let parts = decompose(&coarse)?;
        let pieces = parts.iter().map(|p| restrict(&coarse, p)).collect::<Result<Vec<_>>>()?;
        for p in &pieces {
            let mut found = false;
            for u in &us {
                if is_isomorphic(p, u)? {
                    found = true;
                    break;
                }
            }
            if !found {
                mismatches.push("an ungraded summand of sigma(LoopE) is not among the U modules".into());
            }
        }
        if pieces.len() != 4 {
            mismatches.push(format!("ungraded sigma(LoopE) has {} summands, expected 4", pieces.len()));
        }
        (distinct_classes(us)?, orbit.len())
    };
    let ungraded_dims: Vec<usize> = ungraded.iter().map(GradedModule::dim).collect();
    if ungraded.len() != expected.ungraded_classes {
        mismatches.push(format!("{} ungraded classes, expected {}", ungraded.len(), expected.ungraded_classes));
    }
    if ungraded_dims.iter().any(|&d| d != expected.ungraded_dim) {
        mismatches.push(format!("ungraded dimensions {ungraded_dims:?}, expected {}", expected.ungraded_dim));
    }
    if twist_orbit != expected.twist_orbit {
        mismatches.push(format!("twist orbit of size {twist_orbit}, expected {}", expected.twist_orbit));
    }
    Ok(LambdaReport {
        lambda,
        steps: lift.steps,
        graded_classes: classes.len(),
        graded_dims,
        graded_sector_dims: classes.iter().map(GradedModule::sector_dims).collect(),
        matched,
        equivalence_classes,
        ungraded_classes: ungraded.len(),
        ungraded_dims,
        twist_orbit,
        expected,
        pass: mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(feature = "parallel")]
fn classify_all(max_lambda: u32) -> Result<Vec<LambdaReport>> {
    use rayon::prelude::*;
    (0..=max_lambda).into_par_iter().map(classify_lambda).collect()
}

#[cfg(not(feature = "parallel"))]
fn classify_all(max_lambda: u32) -> Result<Vec<LambdaReport>> {
    (0..=max_lambda).map(classify_lambda).collect()
}

/// Runs [`classify_lambda`] for `0 <= lambda <= max_lambda`.
pub fn classify_sl2c(max_lambda: u32) -> Result<ClassificationReport> {
    let lambdas = classify_all(max_lambda)?;
    let mismatches = lambdas.iter().map(|r| r.mismatches.len()).sum();
    Ok(ClassificationReport {
        max_lambda,
        sigma: BiCharacterWire::from(sigma_sl2().bicharacter()),
        chain: sl2_chain().chain().iter().map(|s| s.elements().to_vec()).collect(),
        pass: mismatches == 0,
        mismatches,
        lambdas,
    })
}
