//! Modules over a Lie colour algebra graded by a quotient `G/H`.
//!
//! Action matrices use the column convention: `x . v_j = sum_i rho(x)[i][j] v_i`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{h_perp, AbelianGroup, Character, GroupElement, QuotientGroup, Subgroup};
use crate::colouralg::{discolour, AlgebraWire, ColourAlgebra};
use crate::cyclotomic::{char_eval, CycloField, CycloNum};
use crate::error::{Error, Result};
use crate::grading::Multiplier;
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Echelon, Matrix, Vector};
use crate::modp::{closure_rank, ModP};
use crate::poly::charpoly;

pub const DEFAULT_SEED: u64 = 0x5eed_c010_0a15;

#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: Arc<ColourAlgebra>,
    quotient: QuotientGroup,
    degrees: Vec<GroupElement>,
    action: Vec<Matrix>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.quotient == other.quotient
            && self.degrees == other.degrees
            && self.action == other.action
    }
}
impl Eq for GradedModule {}

pub fn same_algebra(a: &Arc<ColourAlgebra>, b: &Arc<ColourAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A graded submodule, stored in reduced row echelon form with homogeneous basis vectors
/// sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
    degrees: Vec<GroupElement>,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    /// Coordinates of `v` in the basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[CycloNum]) -> Option<Vector> {
        let r = self.reduce(v.to_vec());
        is_zero_vector(&r).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn reduce(&self, mut v: Vector) -> Vector {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycloNum]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    pub fn basis_matrix(&self, f: &'static CycloField) -> Matrix {
        Matrix::from_columns(f, self.ambient, &self.basis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible { closure_dim: usize },
    Reducible { witness: Submodule },
}

impl Verdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible { .. })
    }
}

impl GradedModule {
    /// Builds and validates a module. `degrees[i]` may be any representative of the coset
    /// of basis vector `i`.
    pub fn new(algebra: Arc<ColourAlgebra>, h: &Subgroup, degrees: Vec<GroupElement>, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, h, degrees, action)?;
        m.validate()?;
        Ok(m)
    }

    fn new_unchecked(algebra: Arc<ColourAlgebra>, h: &Subgroup, degrees: Vec<GroupElement>, action: Vec<Matrix>) -> Result<Self> {
        let g = algebra.group();
        if h.parent() != g {
            return Err(Error::InvalidInput("grading subgroup lives in a different group".into()));
        }
        for d in &degrees {
            g.check(d)?;
        }
        if action.len() != algebra.dim() {
            return Err(Error::InvalidInput(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        let n = degrees.len();
        let f = algebra.field();
        let mut act = Vec::with_capacity(action.len());
        for a in action {
            if a.rows() != n || a.cols() != n {
                return Err(Error::InvalidInput(format!("action matrices must be {n} x {n}")));
            }
            if a.field() != f {
                let entries = a.entries().iter().map(|x| x.embed(f)).collect::<Result<Vec<_>>>()?;
                act.push(Matrix::from_fn(f, n, n, |i, j| entries[i * n + j].clone()));
            } else {
                act.push(a);
            }
        }
        let quotient = QuotientGroup::new(h);
        let degrees = degrees.iter().map(|d| quotient.canonical(d)).collect();
        Ok(GradedModule {
            algebra,
            quotient,
            degrees,
            action: act,
        })
    }

    /// Checks homogeneity and `rho([x, y]) = rho(x) rho(y) - eps(a, b) rho(y) rho(x)`.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let n = self.dim();
        for (i, a) in self.action.iter().enumerate() {
            let alpha = alg.degree(i);
            for r in 0..n {
                for c in 0..n {
                    if !a.get(r, c).is_zero() && !self.quotient.same_coset(&self.degrees[r], &self.group().add(&self.degrees[c], alpha)) {
                        return Err(Error::HomogeneityViolation {
                            element: alg.basis()[i].name.clone(),
                            row: r,
                            col: c,
                        });
                    }
                }
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.act_element(alg.bracket_basis(i, j));
                let rhs = self.action[i]
                    .mul(&self.action[j])
                    .sub(&self.action[j].mul(&self.action[i]).scale(alg.eps(i, j)));
                if lhs != rhs {
                    return Err(Error::RepresentationViolation {
                        x: alg.basis()[i].name.clone(),
                        y: alg.basis()[j].name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `rho(sum_k c_k b_k)`.
    pub fn act_element(&self, coords: &[CycloNum]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.field(), n, n);
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[k].scale(c));
            }
        }
        out
    }

    pub fn algebra(&self) -> &Arc<ColourAlgebra> {
        &self.algebra
    }

    pub fn group(&self) -> &AbelianGroup {
        self.algebra.group()
    }

    pub fn field(&self) -> &'static CycloField {
        self.algebra.field()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.quotient.subgroup()
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Canonical coset representative of each basis vector.
    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Dimension of each sector, in the order of the quotient representatives.
    pub fn sector_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.quotient.order()];
        for d in &self.degrees {
            dims[self.quotient.coset_index(d)] += 1;
        }
        dims
    }

    /// Basis indices lying in each sector.
    pub fn sectors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.quotient.order()];
        for (i, d) in self.degrees.iter().enumerate() {
            out[self.quotient.coset_index(d)].push(i);
        }
        out
    }

    pub fn is_ungraded(&self) -> bool {
        self.subgroup().is_whole()
    }

    fn with_action(&self, action: Vec<Matrix>) -> GradedModule {
        GradedModule {
            algebra: self.algebra.clone(),
            quotient: self.quotient.clone(),
            degrees: self.degrees.clone(),
            action,
        }
    }
}

/// Forgets part of the grading: `H <= H'` and the result is `G/H'`-graded.
pub fn coarsen(v: &GradedModule, coarser: &Subgroup) -> Result<GradedModule> {
    if !v.subgroup().is_subgroup_of(coarser) {
        return Err(Error::InvalidSubgroupStep(format!(
            "{} is not contained in {}",
            v.subgroup(),
            coarser
        )));
    }
    let q = QuotientGroup::new(coarser);
    Ok(GradedModule {
        algebra: v.algebra.clone(),
        degrees: v.degrees.iter().map(|d| q.canonical(d)).collect(),
        quotient: q,
        action: v.action.clone(),
    })
}

/// `x . v = f(deg x) rho(x) v`.
pub fn twist(v: &GradedModule, f: &Character) -> Result<GradedModule> {
    if f.group() != v.group() {
        return Err(Error::InvalidInput("character lives on a different group".into()));
    }
    let fld = v.field();
    let action = v
        .action
        .iter()
        .enumerate()
        .map(|(i, a)| Ok(a.scale(&char_eval(f, v.algebra.degree(i), fld)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(v.with_action(action))
}

/// The shift `W_g = V_{g + h}`: a vector of degree `d` gets degree `d - h`.
pub fn parity_shift(v: &GradedModule, h: &GroupElement) -> Result<GradedModule> {
    v.group().check(h)?;
    let g = v.group();
    Ok(GradedModule {
        algebra: v.algebra.clone(),
        quotient: v.quotient.clone(),
        degrees: v.degrees.iter().map(|d| v.quotient.canonical(&g.sub(d, h))).collect(),
        action: v.action.clone(),
    })
}

pub fn direct_sum(v: &GradedModule, w: &GradedModule) -> Result<GradedModule> {
    check_compatible(v, w)?;
    let (n, m) = (v.dim(), w.dim());
    let f = v.field();
    let action = v
        .action
        .iter()
        .zip(&w.action)
        .map(|(a, b)| {
            Matrix::from_fn(f, n + m, n + m, |i, j| match (i < n, j < n) {
                (true, true) => a.get(i, j).clone(),
                (false, false) => b.get(i - n, j - n).clone(),
                _ => CycloNum::zero(f),
            })
        })
        .collect();
    let mut degrees = v.degrees.clone();
    degrees.extend(w.degrees.iter().cloned());
    Ok(GradedModule {
        algebra: v.algebra.clone(),
        quotient: v.quotient.clone(),
        degrees,
        action,
    })
}

fn check_compatible(v: &GradedModule, w: &GradedModule) -> Result<()> {
    if !same_algebra(&v.algebra, &w.algebra) {
        return Err(Error::InvalidInput("modules over different algebras".into()));
    }
    if v.subgroup() != w.subgroup() {
        return Err(Error::InvalidInput("modules graded by different quotients".into()));
    }
    Ok(())
}

/// Package the homogeneous vectors collected per sector as a submodule description.
fn assemble(v: &GradedModule, sectors: Vec<Echelon>) -> Submodule {
    let mut items: Vec<(usize, Vector, GroupElement)> = Vec::new();
    for (s, e) in sectors.into_iter().enumerate() {
        let rep = v.quotient.reps()[s].clone();
        for (row, &p) in e.rows().iter().zip(e.pivots()) {
            items.push((p, row.clone(), rep.clone()));
        }
    }
    items.sort_by_key(|(p, _, _)| *p);
    Submodule {
        ambient: v.dim(),
        pivots: items.iter().map(|(p, _, _)| *p).collect(),
        basis: items.iter().map(|(_, r, _)| r.clone()).collect(),
        degrees: items.into_iter().map(|(_, _, d)| d).collect(),
    }
}

fn split_homogeneous(v: &GradedModule, x: &[CycloNum]) -> Vec<(usize, Vector)> {
    split_by_sectors(v.field(), &v.sectors(), x)
}

fn split_by_sectors(f: &'static CycloField, sectors: &[Vec<usize>], x: &[CycloNum]) -> Vec<(usize, Vector)> {
    sectors
        .iter()
        .enumerate()
        .filter_map(|(s, idx)| {
            if idx.iter().all(|&i| x[i].is_zero()) {
                return None;
            }
            let mut comp = zero_vector(f, x.len());
            for &i in idx {
                comp[i] = x[i].clone();
            }
            Some((s, comp))
        })
        .collect()
}

/// The graded subspace spanned by the homogeneous components of `vectors`.
pub fn graded_span(v: &GradedModule, vectors: &[Vector]) -> Submodule {
    let mut sectors = vec![Echelon::new(v.field(), v.dim()); v.quotient.order()];
    for x in vectors {
        for (s, comp) in split_homogeneous(v, x) {
            sectors[s].insert(comp);
        }
    }
    assemble(v, sectors)
}

/// The smallest graded submodule containing `vectors`.
pub fn spin(v: &GradedModule, vectors: &[Vector]) -> Submodule {
    assemble(v, spin_by(v, &v.action, vectors))
}

/// Per-sector echelon bases of the smallest graded subspace containing `vectors` and
/// stable under `mats`.
fn spin_by(v: &GradedModule, mats: &[Matrix], vectors: &[Vector]) -> Vec<Echelon> {
    let mut sectors = vec![Echelon::new(v.field(), v.dim()); v.quotient.order()];
    let mut queue: Vec<Vector> = Vec::new();
    let idx = v.sectors();
    let offer = |x: &[CycloNum], sectors: &mut Vec<Echelon>, queue: &mut Vec<Vector>| {
        for (s, comp) in split_by_sectors(v.field(), &idx, x) {
            let r = sectors[s].reduce(comp);
            if !is_zero_vector(&r) {
                sectors[s].insert(r.clone());
                queue.push(r);
            }
        }
    };
    for x in vectors {
        offer(x, &mut sectors, &mut queue);
    }
    while let Some(x) = queue.pop() {
        for a in mats {
            let y = a.mul_vec(&x);
            offer(&y, &mut sectors, &mut queue);
        }
    }
    sectors
}

/// The annihilator of the graded subspace of the dual spun from `vectors` by the
/// transposed action.
fn dual_spin(v: &GradedModule, transposed: &[Matrix], vectors: &[Vector]) -> Submodule {
    let rows: Vec<Vector> = spin_by(v, transposed, vectors).iter().flat_map(|e| e.rows().to_vec()).collect();
    if rows.is_empty() {
        return graded_span(v, &(0..v.dim()).map(|i| unit_vector(v.field(), v.dim(), i)).collect::<Vec<_>>());
    }
    let m = Matrix::from_rows(v.field(), rows).expect("rows of equal length");
    graded_span(v, &m.nullspace())
}

fn check_submodule(v: &GradedModule, u: &Submodule) -> Result<()> {
    if u.ambient != v.dim() {
        return Err(Error::InvalidSubmodule("ambient dimension mismatch".into()));
    }
    for (b, d) in u.basis.iter().zip(&u.degrees) {
        if b.iter().enumerate().any(|(i, x)| !x.is_zero() && !v.quotient.same_coset(&v.degrees[i], d)) {
            return Err(Error::InvalidSubmodule("basis vector is not homogeneous".into()));
        }
        for a in &v.action {
            if !u.contains(&a.mul_vec(b)) {
                return Err(Error::InvalidSubmodule("subspace is not invariant".into()));
            }
        }
    }
    Ok(())
}

/// Builds a submodule with the given homogeneous basis, checking invariance.
pub fn submodule(v: &GradedModule, vectors: &[Vector]) -> Result<Submodule> {
    let u = graded_span(v, vectors);
    check_submodule(v, &u)?;
    Ok(u)
}

/// The module structure on `u` in its own basis.
pub fn restrict(v: &GradedModule, u: &Submodule) -> Result<GradedModule> {
    check_submodule(v, u)?;
    let f = v.field();
    let k = u.dim();
    let action = v
        .action
        .iter()
        .map(|a| {
            let cols: Vec<Vector> = u.basis.iter().map(|b| u.coordinates(&a.mul_vec(b)).expect("invariant")).collect();
            Matrix::from_columns(f, k, &cols)
        })
        .collect();
    Ok(GradedModule {
        algebra: v.algebra.clone(),
        quotient: v.quotient.clone(),
        degrees: u.degrees.clone(),
        action,
    })
}

/// The module structure on the span of `vectors`, written in exactly that basis. The
/// vectors must be homogeneous, linearly independent and span an invariant subspace.
pub fn restrict_with_basis(v: &GradedModule, vectors: &[Vector]) -> Result<GradedModule> {
    let f = v.field();
    let k = vectors.len();
    if vectors.iter().any(|x| x.len() != v.dim()) {
        return Err(Error::InvalidSubmodule("vector length differs from the module dimension".into()));
    }
    let b = Matrix::from_columns(f, v.dim(), vectors);
    if b.rank() != k {
        return Err(Error::InvalidSubmodule("basis vectors are linearly dependent".into()));
    }
    let mut degrees = Vec::with_capacity(k);
    for x in vectors {
        let comps = split_homogeneous(v, x);
        if comps.len() != 1 {
            return Err(Error::InvalidSubmodule("basis vector is not homogeneous".into()));
        }
        degrees.push(v.quotient.reps()[comps[0].0].clone());
    }
    let mut action = Vec::with_capacity(v.action.len());
    for a in &v.action {
        let cols = vectors
            .iter()
            .map(|x| b.solve(&a.mul_vec(x)).ok_or_else(|| Error::InvalidSubmodule("subspace is not invariant".into())))
            .collect::<Result<Vec<_>>>()?;
        action.push(Matrix::from_columns(f, k, &cols));
    }
    Ok(GradedModule {
        algebra: v.algebra.clone(),
        quotient: v.quotient.clone(),
        degrees,
        action,
    })
}

/// `V / U` on the standard basis vectors that are not pivots of `U`.
pub fn graded_quotient(v: &GradedModule, u: &Submodule) -> Result<GradedModule> {
    check_submodule(v, u)?;
    let f = v.field();
    let comp: Vec<usize> = (0..v.dim()).filter(|i| !u.pivots.contains(i)).collect();
    let action = v
        .action
        .iter()
        .map(|a| {
            let cols: Vec<Vector> = comp
                .iter()
                .map(|&k| {
                    let y = u.reduce(a.column(k));
                    comp.iter().map(|&i| y[i].clone()).collect()
                })
                .collect();
            Matrix::from_columns(f, comp.len(), &cols)
        })
        .collect();
    Ok(GradedModule {
        algebra: v.algebra.clone(),
        quotient: v.quotient.clone(),
        degrees: comp.iter().map(|&i| v.degrees[i].clone()).collect(),
        action,
    })
}

/// Degree-zero module maps `V -> W`, as a basis of `dim W x dim V` matrices.
pub fn intertwiners(v: &GradedModule, w: &GradedModule) -> Result<Vec<Matrix>> {
    check_compatible(v, w)?;
    let f = v.field();
    let (n, m) = (v.dim(), w.dim());
    let mut unknown = vec![usize::MAX; m * n];
    let mut count = 0;
    for r in 0..m {
        for c in 0..n {
            if v.quotient.same_coset(&w.degrees[r], &v.degrees[c]) {
                unknown[r * n + c] = count;
                count += 1;
            }
        }
    }
    let g = v.group();
    let mut system = Echelon::new(f, count);
    for (i, (av, aw)) in v.action.iter().zip(&w.action).enumerate() {
        let alpha = v.algebra.degree(i);
        for r in 0..m {
            for c in 0..n {
                if !v.quotient.same_coset(&w.degrees[r], &g.add(&v.degrees[c], alpha)) {
                    continue;
                }
                // (M av - aw M)[r][c]
                let mut row = zero_vector(f, count);
                for k in 0..n {
                    let u = unknown[r * n + k];
                    if u != usize::MAX && !av.get(k, c).is_zero() {
                        row[u] += av.get(k, c);
                    }
                }
                for k in 0..m {
                    let u = unknown[k * n + c];
                    if u != usize::MAX && !aw.get(r, k).is_zero() {
                        row[u] -= aw.get(r, k);
                    }
                }
                if !is_zero_vector(&row) {
                    system.insert(row);
                    if system.len() == count {
                        return Ok(Vec::new());
                    }
                }
            }
        }
    }
    let mut is_pivot = vec![false; count];
    for &p in system.pivots() {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..count).filter(|&u| !is_pivot[u]) {
        let mut sol = zero_vector(f, count);
        sol[free] = CycloNum::one(f);
        for (row, &p) in system.rows().iter().zip(system.pivots()) {
            sol[p] = -&row[free];
        }
        let mut mat = Matrix::zeros(f, m, n);
        for r in 0..m {
            for c in 0..n {
                let u = unknown[r * n + c];
                if u != usize::MAX {
                    mat.set(r, c, sol[u].clone());
                }
            }
        }
        out.push(mat);
    }
    Ok(out)
}

/// Degree-zero endomorphisms commuting with the action.
pub fn commutant(v: &GradedModule) -> Result<Vec<Matrix>> {
    intertwiners(v, v)
}

/// A degree-zero module isomorphism `V -> W`, if one is found.
///
/// Every basis element of the intertwiner space is tried, then `dim + 1` random integer
/// combinations. When either module is irreducible the answer is exact, since then every
/// nonzero intertwiner between equal-dimensional modules is invertible.
pub fn find_isomorphism(v: &GradedModule, w: &GradedModule, seed: u64) -> Result<Option<Matrix>> {
    check_compatible(v, w)?;
    if v.dim() != w.dim() || v.sector_dims() != w.sector_dims() {
        return Ok(None);
    }
    let hom = intertwiners(v, w)?;
    if hom.is_empty() {
        return Ok(None);
    }
    if let Some(m) = hom.iter().find(|m| m.is_invertible()) {
        return Ok(Some(m.clone()));
    }
    if hom.len() == 1 {
        return Ok(None);
    }
    let f = v.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=v.dim() {
        let mut m = Matrix::zeros(f, w.dim(), v.dim());
        for h in &hom {
            let c = CycloNum::from_int(f, rng.random_range(-(1i64 << 20)..=(1i64 << 20)));
            m = m.add(&h.scale(&c));
        }
        if m.is_invertible() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(v: &GradedModule, w: &GradedModule) -> Result<bool> {
    Ok(find_isomorphism(v, w, DEFAULT_SEED)?.is_some())
}

/// Generators of the subgroup of characters trivial on `H`.
fn perp_generators(g: &AbelianGroup, h: &Subgroup) -> Vec<Character> {
    let mut gens: Vec<Character> = Vec::new();
    let mut covered = Subgroup::trivial(g);
    for c in h_perp(g, h) {
        let e = g.element(&c.exponents().iter().map(|&x| x as i64).collect::<Vec<_>>()).expect("same shape");
        if covered.contains(&e) {
            continue;
        }
        let mut ge: Vec<GroupElement> = covered.generators().to_vec();
        ge.push(e);
        covered = Subgroup::generated(g, ge).expect("valid elements");
        gens.push(c);
    }
    gens
}

/// Action matrices together with the grading operators `T_chi : v -> chi(deg v) v`
/// for generators `chi` of the characters trivial on `H`.
pub fn closure_generators(v: &GradedModule) -> Result<Vec<Matrix>> {
    let f = v.field();
    let n = v.dim();
    let mut gens: Vec<Matrix> = v.action.iter().filter(|a| !a.is_zero()).cloned().collect();
    for chi in perp_generators(v.group(), v.subgroup()) {
        let mut t = Matrix::zeros(f, n, n);
        for (i, d) in v.degrees.iter().enumerate() {
            t.set(i, i, char_eval(&chi, d, f)?);
        }
        gens.push(t);
    }
    Ok(gens)
}

/// Exact dimension of the unital algebra generated by [`closure_generators`].
pub fn closure_dimension(v: &GradedModule) -> Result<usize> {
    let gens = closure_generators(v)?;
    let f = v.field();
    let n = v.dim();
    if n == 0 {
        return Ok(0);
    }
    let mut span = Echelon::new(f, n * n);
    let id = Matrix::identity(f, n);
    span.insert(id.entries().to_vec());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() && span.len() < n * n {
        let b = queue[head].clone();
        head += 1;
        for g in &gens {
            let c = g.mul(&b);
            if span.insert(c.entries().to_vec()) {
                queue.push(c);
            }
        }
    }
    Ok(span.len())
}

fn kernel_submodule(v: &GradedModule, m: &Matrix) -> Submodule {
    graded_span(v, &m.nullspace())
}

fn proper(u: &Submodule, n: usize) -> bool {
    u.dim() > 0 && u.dim() < n
}

/// Splits `N` along coprime factors of the characteristic polynomials of its sector blocks.
fn split_by_charpoly(v: &GradedModule, nmat: &Matrix) -> Option<Submodule> {
    let n = v.dim();
    let whole = charpoly(nmat);
    let rad = whole.radical();
    if rad.degree() <= 1 {
        return None;
    }
    let mut candidates = whole.squarefree_factors();
    for idx in v.sectors().into_iter().filter(|s| !s.is_empty()) {
        candidates.extend(charpoly(&nmat.submatrix(&idx, &idx)).squarefree_factors());
    }
    let mut parts = vec![rad];
    for t in &candidates {
        let mut next = Vec::new();
        for b in parts {
            let g = b.gcd(t);
            if g.degree() > 0 && g.degree() < b.degree() {
                next.push(b.divrem(&g).0.monic());
                next.push(g);
            } else {
                next.push(b);
            }
        }
        parts = next;
    }
    if parts.len() < 2 {
        return None;
    }
    let k = parts[0].eval_matrix(nmat).stable_kernel();
    let u = graded_span(v, &k);
    proper(&u, n).then_some(u)
}

/// Searches for a proper graded submodule: spins of homogeneous basis vectors first,
/// then kernels and spectral pieces of commutant elements.
pub fn find_witness(v: &GradedModule) -> Result<Option<Submodule>> {
    let n = v.dim();
    let f = v.field();
    for i in 0..n {
        let u = spin(v, &[unit_vector(f, n, i)]);
        if proper(&u, n) {
            return Ok(Some(u));
        }
    }
    let comm = commutant(v)?;
    if comm.len() <= 1 {
        return Ok(None);
    }
    let non_scalar: Vec<&Matrix> = comm
        .iter()
        .filter(|c| {
            let d = c.get(0, 0);
            let scalar = Matrix::identity(f, n).scale(d);
            **c != scalar
        })
        .collect();
    let mut pool: Vec<Matrix> = non_scalar.iter().map(|c| (*c).clone()).collect();
    for (a, x) in non_scalar.iter().enumerate() {
        for y in &non_scalar[a + 1..] {
            pool.push(x.mul(y));
            pool.push(x.add(y));
        }
    }
    for c in &pool {
        if !c.is_zero() && !c.is_invertible() {
            let u = kernel_submodule(v, c);
            if proper(&u, n) {
                return Ok(Some(u));
            }
        }
    }
    for c in &pool {
        for t in charpoly(c).roots() {
            let u = kernel_submodule(v, &c.sub(&Matrix::identity(f, n).scale(&t)));
            if proper(&u, n) {
                return Ok(Some(u));
            }
        }
    }
    for c in &pool {
        if let Some(u) = split_by_charpoly(v, c) {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Eigenvectors of algebra elements spun forwards, and through the dual.
fn eigen_witness(v: &GradedModule) -> Option<Submodule> {
    let n = v.dim();
    let f = v.field();
    let acts: Vec<&Matrix> = v.action.iter().filter(|a| !a.is_zero()).collect();
    let mut pool: Vec<Matrix> = acts.iter().map(|a| (*a).clone()).collect();
    for (k, x) in acts.iter().enumerate() {
        for y in &acts[k..] {
            pool.push(x.mul(y));
            pool.push(x.add(y));
        }
    }
    let transposed: Vec<Matrix> = v.action.iter().map(Matrix::transpose).collect();
    for a in &pool {
        for t in charpoly(a).roots() {
            let shifted = a.sub(&Matrix::identity(f, n).scale(&t));
            for x in shifted.nullspace() {
                let u = spin(v, &[x]);
                if proper(&u, n) {
                    return Some(u);
                }
            }
            for x in shifted.transpose().nullspace() {
                let u = dual_spin(v, &transposed, &[x]);
                if proper(&u, n) {
                    return Some(u);
                }
            }
        }
    }
    None
}

/// Graded irreducibility. A full closure found modulo a prime certifies irreducibility;
/// otherwise a proper submodule is searched for, and an exact closure computation settles
/// the rest.
pub fn is_graded_irreducible(v: &GradedModule) -> Result<Verdict> {
    let n = v.dim();
    if n == 0 {
        return Err(Error::InvalidInput("the zero module has no irreducibility verdict".into()));
    }
    let full = n * n;
    let gens = closure_generators(v)?;
    for skip in 0..2 {
        let mp = ModP::for_order(v.field().order(), skip);
        if closure_rank(&gens, n, &mp) == Some(full) {
            return Ok(Verdict::Irreducible { closure_dim: full });
        }
    }
    if let Some(w) = find_witness(v)? {
        return Ok(Verdict::Reducible { witness: w });
    }
    if let Some(w) = eigen_witness(v) {
        return Ok(Verdict::Reducible { witness: w });
    }
    let d = closure_dimension(v)?;
    if d == full {
        return Ok(Verdict::Irreducible { closure_dim: d });
    }
    Err(Error::Inconclusive(format!(
        "closure has dimension {d} < {full} but no proper submodule was found"
    )))
}

/// Splits a completely reducible module into graded-irreducible summands.
pub fn decompose(v: &GradedModule) -> Result<Vec<Submodule>> {
    let parts = decompose_vectors(v)?;
    Ok(parts.into_iter().map(|p| graded_span(v, &p)).collect())
}

fn decompose_vectors(v: &GradedModule) -> Result<Vec<Vec<Vector>>> {
    let f = v.field();
    let n = v.dim();
    let witness = match is_graded_irreducible(v)? {
        Verdict::Irreducible { .. } => return Ok(vec![(0..n).map(|i| unit_vector(f, n, i)).collect()]),
        Verdict::Reducible { witness } => witness,
    };
    let umod = restrict(v, &witness)?;
    let iota = witness.basis_matrix(f);
    let hom = intertwiners(v, &umod)?;
    let k = witness.dim();
    // solve sum_h c_h (hom_h iota) = I
    let composed: Vec<Matrix> = hom.iter().map(|h| h.mul(&iota)).collect();
    let system = Matrix::from_fn(f, k * k, hom.len(), |e, h| composed[h].entries()[e].clone());
    let target: Vector = Matrix::identity(f, k).entries().to_vec();
    let c = system
        .solve(&target)
        .ok_or_else(|| Error::NotCompletelyReducible(format!("a {k}-dimensional submodule has no graded complement")))?;
    let mut pi = Matrix::zeros(f, k, n);
    for (h, ch) in hom.iter().zip(&c) {
        pi = pi.add(&h.scale(ch));
    }
    let complement = kernel_submodule(v, &pi);
    let kmod = restrict(v, &complement)?;
    let mut out = Vec::new();
    for (sub, module) in [(&witness, &umod), (&complement, &kmod)] {
        for part in decompose_vectors(module)? {
            out.push(
                part.iter()
                    .map(|w| {
                        let mut x = zero_vector(f, n);
                        for (wi, b) in w.iter().zip(&sub.basis) {
                            axpy(&mut x, wi, b);
                        }
                        x
                    })
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// Module over `discolour(A, sigma)` with `x . v = sigma(deg x, deg v) rho(x) v`.
pub fn discolour_module(v: &GradedModule, sigma: &Multiplier) -> Result<GradedModule> {
    let alg = Arc::new(discolour(&v.algebra, sigma)?);
    let h = v.subgroup();
    for i in 0..v.algebra.dim() {
        if h.elements().iter().any(|eta| sigma.exponent(v.algebra.degree(i), eta) != 0) {
            return Err(Error::InvalidMultiplier(
                "multiplier is not constant on the cosets grading the module".into(),
            ));
        }
    }
    let f = alg.field();
    let n = v.dim();
    let action = v
        .action
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let alpha = v.algebra.degree(i);
            let scales = v.degrees.iter().map(|d| sigma.eval(alpha, d, f)).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_fn(f, n, n, |r, c| a.get(r, c).embed(f).expect("field grows") * &scales[c]))
        })
        .collect::<Result<Vec<_>>>()?;
    GradedModule::new(alg, h, v.degrees.clone(), action)
}

/// Inverse of [`discolour_module`] for the same multiplier.
pub fn recolour_module(v: &GradedModule, sigma: &Multiplier) -> Result<GradedModule> {
    discolour_module(v, &sigma.inverse())
}

/// Rewrites `v` in a new basis given by the columns of `b`, each homogeneous.
pub fn change_basis(v: &GradedModule, b: &Matrix) -> Result<GradedModule> {
    let binv = b.inverse().map_err(|_| Error::InvalidInput("basis change is singular".into()))?;
    let mut degrees = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let col = b.column(j);
        let comps = split_homogeneous(v, &col);
        if comps.len() != 1 {
            return Err(Error::InvalidInput(format!("new basis vector {j} is not homogeneous")));
        }
        degrees.push(v.quotient.reps()[comps[0].0].clone());
    }
    let action = v.action.iter().map(|a| binv.mul(a).mul(b)).collect();
    Ok(GradedModule {
        algebra: v.algebra.clone(),
        quotient: v.quotient.clone(),
        degrees,
        action,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleWire {
    pub algebra: AlgebraWire,
    #[serde(rename = "H")]
    pub h: Vec<GroupElement>,
    pub degrees: Vec<GroupElement>,
    pub action: Vec<Vec<Vec<CycloNum>>>,
}

impl From<&GradedModule> for ModuleWire {
    fn from(v: &GradedModule) -> Self {
        ModuleWire {
            algebra: AlgebraWire::from(&*v.algebra),
            h: v.subgroup().generators().to_vec(),
            degrees: v.degrees.clone(),
            action: v.action.iter().map(Matrix::row_vectors).collect(),
        }
    }
}

impl GradedModule {
    pub fn from_wire(w: ModuleWire) -> Result<Self> {
        let alg = Arc::new(ColourAlgebra::try_from(w.algebra)?);
        Self::from_wire_with_algebra(alg, w.h, w.degrees, w.action)
    }

    pub fn from_wire_with_algebra(
        alg: Arc<ColourAlgebra>,
        h: Vec<GroupElement>,
        degrees: Vec<GroupElement>,
        action: Vec<Vec<Vec<CycloNum>>>,
    ) -> Result<Self> {
        let h = Subgroup::generated(alg.group(), h)?;
        let mut mats = Vec::with_capacity(action.len());
        for rows in action {
            let fixed = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.embed(alg.field())).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            mats.push(Matrix::from_rows(alg.field(), fixed)?);
        }
        GradedModule::new(alg, &h, degrees, mats)
    }
}

impl Serialize for GradedModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GradedModule::from_wire(ModuleWire::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
