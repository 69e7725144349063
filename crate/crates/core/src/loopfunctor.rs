//! The loop construction `L(V)` refining a `G/H`-grading to a `G/K`-grading, the
//! gradable/loop dichotomy and its iteration along a composition series.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{twist_reps, CompositionSeries, GroupElement, QuotientGroup, Subgroup};
use crate::error::{Error, Result};
use crate::gmodule::{
    graded_span, is_graded_irreducible, is_isomorphic, parity_shift, restrict, twist, GradedModule, ModuleWire,
    Verdict,
};
use crate::linalg::{axpy, zero_vector, Matrix, Vector};

#[derive(Clone, Debug)]
pub struct LoopModule {
    pub module: GradedModule,
    /// `(i, g)` for each basis vector `v_i (x) g` with `g` a `G/K` representative.
    pub origin: Vec<(usize, GroupElement)>,
    pub refined_from: Subgroup,
}

fn check_step(coarse: &Subgroup, fine: &Subgroup) -> Result<usize> {
    if !fine.is_subgroup_of(coarse) {
        return Err(Error::InvalidSubgroupStep(format!("{fine} is not contained in {coarse}")));
    }
    let p = coarse.order() / fine.order();
    if p < 2 || (2..p).any(|d| p % d == 0) {
        return Err(Error::InvalidSubgroupStep(format!("{coarse} / {fine} has non-prime order {p}")));
    }
    Ok(p)
}

/// Representatives in `G/K` of the elements of `H`, in first-appearance order.
fn h_mod_k(h: &Subgroup, qk: &QuotientGroup) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = Vec::new();
    for e in h.elements() {
        let c = qk.canonical(e);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `L(V)` for any proper subgroup `K < H`, with basis `v_i (x) g` ordered by the `H/K`
/// block first, then by `i`.
pub fn loop_module(v: &GradedModule, k: &Subgroup) -> Result<LoopModule> {
    let h = v.subgroup().clone();
    if !k.is_subgroup_of(&h) || k.order() == h.order() {
        return Err(Error::InvalidSubgroupStep(format!("{k} is not a proper subgroup of {h}")));
    }
    let g = v.group();
    let qk = QuotientGroup::new(k);
    let mut origin = Vec::new();
    let mut index: HashMap<(usize, GroupElement), usize> = HashMap::new();
    for hb in h_mod_k(&h, &qk) {
        for (i, d) in v.degrees().iter().enumerate() {
            let gb = qk.canonical(&g.add(d, &hb));
            index.insert((i, gb.clone()), origin.len());
            origin.push((i, gb));
        }
    }
    let f = v.field();
    let n = origin.len();
    let alg = v.algebra();
    let action = v
        .action()
        .iter()
        .enumerate()
        .map(|(a, rho)| {
            let alpha = alg.degree(a);
            let mut m = Matrix::zeros(f, n, n);
            for (col, (i, gb)) in origin.iter().enumerate() {
                let target = qk.add(gb, alpha);
                for j in 0..v.dim() {
                    let c = rho.get(j, *i);
                    if !c.is_zero() {
                        let row = index[&(j, target.clone())];
                        m.set(row, col, c.clone());
                    }
                }
            }
            m
        })
        .collect();
    let degrees = origin.iter().map(|(_, gb)| gb.clone()).collect();
    let module = GradedModule::new(alg.clone(), k, degrees, action)?;
    Ok(LoopModule { module, origin, refined_from: h })
}

#[derive(Clone, Debug)]
pub enum BijectionOutcome {
    /// `V` admits a `G/K`-grading; `basis` holds the new homogeneous basis in `V` coordinates.
    Gradable { module: GradedModule, basis: Matrix },
    /// `L(V)` is irreducible.
    NotGradable { loop_module: LoopModule },
}

impl BijectionOutcome {
    /// The `G/K`-graded module produced by this step.
    pub fn module(&self) -> &GradedModule {
        match self {
            BijectionOutcome::Gradable { module, .. } => module,
            BijectionOutcome::NotGradable { loop_module } => &loop_module.module,
        }
    }

    pub fn is_gradable(&self) -> bool {
        matches!(self, BijectionOutcome::Gradable { .. })
    }

    pub fn iso_classes(&self) -> Result<Vec<GradedModule>> {
        iso_classes(self.module())
    }
}

/// Shrinks a submodule of `w` until it is irreducible.
fn irreducible_piece(w: &GradedModule, start: crate::gmodule::Submodule) -> Result<crate::gmodule::Submodule> {
    let f = w.field();
    let mut cur = start;
    loop {
        let r = restrict(w, &cur)?;
        match is_graded_irreducible(&r)? {
            Verdict::Irreducible { .. } => return Ok(cur),
            Verdict::Reducible { witness } => {
                let vecs: Vec<Vector> = witness
                    .basis()
                    .iter()
                    .map(|x| {
                        let mut y = zero_vector(f, w.dim());
                        for (xi, b) in x.iter().zip(cur.basis()) {
                            axpy(&mut y, xi, b);
                        }
                        y
                    })
                    .collect();
                cur = graded_span(w, &vecs);
            }
        }
    }
}

/// For a graded-irreducible `V` and a prime-index step `K < H`: either a `G/K`-grading
/// of `V` refining its `G/H`-grading, or the irreducible loop module.
pub fn bijection_f(v: &GradedModule, k: &Subgroup) -> Result<BijectionOutcome> {
    check_step(v.subgroup(), k)?;
    let lm = loop_module(v, k)?;
    let witness = match is_graded_irreducible(&lm.module)? {
        Verdict::Irreducible { .. } => return Ok(BijectionOutcome::NotGradable { loop_module: lm }),
        Verdict::Reducible { witness } => witness,
    };
    let w = irreducible_piece(&lm.module, witness)?;
    if w.dim() != v.dim() {
        return Err(Error::InvalidInput(format!(
            "an irreducible summand of the loop module has dimension {} instead of {}; the input is not graded-irreducible",
            w.dim(),
            v.dim()
        )));
    }
    let f = v.field();
    let mut cols: Vec<(usize, usize, Vector, GroupElement)> = w
        .basis()
        .iter()
        .zip(w.degrees())
        .enumerate()
        .map(|(k, (x, d))| {
            let mut y = zero_vector(f, v.dim());
            for (xi, (i, _)) in x.iter().zip(&lm.origin) {
                y[*i] += xi;
            }
            let lead = y.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX);
            (lead, k, y, d.clone())
        })
        .collect();
    cols.sort_by_key(|(lead, k, _, _)| (*lead, *k));
    let vecs: Vec<Vector> = cols.iter().map(|(_, _, y, _)| y.clone()).collect();
    let basis = Matrix::from_columns(f, v.dim(), &vecs);
    let binv = basis
        .inverse()
        .map_err(|_| Error::InvalidInput("projection of the summand is not a basis; the input is not graded-irreducible".into()))?;
    for ((_, _, _, d), y) in cols.iter().zip(&vecs) {
        for (i, c) in y.iter().enumerate() {
            if !c.is_zero() && !v.quotient().same_coset(&v.degrees()[i], d) {
                return Err(Error::InvalidInput("refined grading does not coarsen to the original".into()));
            }
        }
    }
    let action = v.action().iter().map(|a| binv.mul(a).mul(&basis)).collect();
    let degrees = cols.into_iter().map(|(_, _, _, d)| d).collect();
    let module = GradedModule::new(v.algebra().clone(), k, degrees, action)?;
    Ok(BijectionOutcome::Gradable { module, basis })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Gradable,
    Loop,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepRecord {
    pub from: Vec<GroupElement>,
    pub to: Vec<GroupElement>,
    pub outcome: StepKind,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassSummary {
    pub dim: usize,
    pub sector_dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub chain: Vec<Subgroup>,
    pub steps: Vec<StepRecord>,
    pub final_module: GradedModule,
    pub classes: Vec<GradedModule>,
}

#[derive(Serialize)]
struct LiftReportWire<'a> {
    chain: Vec<&'a [GroupElement]>,
    steps: &'a [StepRecord],
    #[serde(rename = "final")]
    final_classes: Vec<ClassSummary>,
}

impl Serialize for LiftReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LiftReportWire {
            chain: self.chain.iter().map(|c| c.elements()).collect(),
            steps: &self.steps,
            final_classes: self.class_summaries(),
        }
        .serialize(s)
    }
}

impl LiftReport {
    pub fn class_summaries(&self) -> Vec<ClassSummary> {
        self.classes
            .iter()
            .map(|c| ClassSummary {
                dim: c.dim(),
                sector_dims: c.sector_dims(),
            })
            .collect()
    }
}

/// Applies [`bijection_f`] along `chain`, starting at the grading subgroup of `v`.
pub fn iterate_lift_along(v: &GradedModule, chain: &CompositionSeries) -> Result<LiftReport> {
    let steps_chain = chain.chain();
    let start = steps_chain
        .iter()
        .position(|s| s == v.subgroup())
        .ok_or_else(|| Error::InvalidSubgroupStep(format!("the grading subgroup {} is not in the chain", v.subgroup())))?;
    if !is_graded_irreducible(v)?.is_irreducible() {
        return Err(Error::InvalidInput("lifting needs a graded-irreducible module".into()));
    }
    let mut cur = v.clone();
    let mut steps = Vec::new();
    for w in steps_chain[start..].windows(2) {
        let out = bijection_f(&cur, &w[1])?;
        steps.push(StepRecord {
            from: w[0].elements().to_vec(),
            to: w[1].elements().to_vec(),
            outcome: if out.is_gradable() { StepKind::Gradable } else { StepKind::Loop },
            dim: out.module().dim(),
        });
        cur = out.module().clone();
    }
    let classes = iso_classes(&cur)?;
    Ok(LiftReport {
        chain: steps_chain[start..].to_vec(),
        steps,
        final_module: cur,
        classes,
    })
}

/// [`iterate_lift_along`] with the default composition series of the grading group.
pub fn iterate_lift(v: &GradedModule) -> Result<LiftReport> {
    iterate_lift_along(v, &crate::abelian::jordan_holder(v.group()))
}

fn class_key(m: &GradedModule) -> (Vec<usize>, String) {
    let wire = ModuleWire::from(m);
    (m.sector_dims(), serde_json::to_string(&(wire.degrees, wire.action)).unwrap_or_default())
}

/// Groups modules into isomorphism classes; returns the smallest member of each class,
/// sorted by sector dimensions and then by serialized form.
pub fn distinct_classes(candidates: Vec<GradedModule>) -> Result<Vec<GradedModule>> {
    let mut classes: Vec<Vec<GradedModule>> = Vec::new();
    'outer: for c in candidates {
        for cls in &mut classes {
            if is_isomorphic(&cls[0], &c)? {
                cls.push(c);
                continue 'outer;
            }
        }
        classes.push(vec![c]);
    }
    let mut reps: Vec<(Vec<usize>, String, GradedModule)> = classes
        .into_iter()
        .map(|cls| {
            cls.into_iter()
                .map(|m| {
                    let (a, b) = class_key(&m);
                    (a, b, m)
                })
                .min_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)))
                .expect("nonempty class")
        })
        .collect();
    reps.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    Ok(reps.into_iter().map(|(_, _, m)| m).collect())
}

/// Isomorphism classes among the parity shifts of `w` by all of `G`.
pub fn iso_classes(w: &GradedModule) -> Result<Vec<GradedModule>> {
    let shifts = w
        .quotient()
        .reps()
        .iter()
        .map(|h| parity_shift(w, h))
        .collect::<Result<Vec<_>>>()?;
    distinct_classes(shifts)
}

/// Isomorphism classes among the twists of `v` by characters representing the
/// cosets of `H`-perp.
pub fn twist_orbit(v: &GradedModule) -> Result<Vec<GradedModule>> {
    let twists = twist_reps(v.group(), v.subgroup())
        .iter()
        .map(|f| twist(v, f))
        .collect::<Result<Vec<_>>>()?;
    distinct_classes(twists)
}
