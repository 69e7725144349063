//! Seeded spot checks on random homogeneous combinations, on top of the exhaustive
//! basis-level validation done at load time.

use colour_loop::abelian::GroupElement;
use colour_loop::colouralg::ColourAlgebra;
use colour_loop::cyclotomic::CycloNum;
use colour_loop::gmodule::GradedModule;
use colour_loop::linalg::{axpy, is_zero_vector, zero_vector, Vector};
use colour_loop::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ROUNDS: usize = 32;

/// A random element of one homogeneous component, with its degree.
fn homogeneous(a: &ColourAlgebra, rng: &mut ChaCha8Rng) -> (Vector, GroupElement) {
    let f = a.field();
    let d = a.degree(rng.random_range(0..a.dim())).clone();
    let mut v = zero_vector(f, a.dim());
    for (i, b) in a.basis().iter().enumerate() {
        if b.degree == d {
            v[i] = CycloNum::from_int(f, rng.random_range(-5..=5));
        }
    }
    (v, d)
}

fn eps(a: &ColourAlgebra, x: &GroupElement, y: &GroupElement) -> Result<CycloNum> {
    a.epsilon().eval(x, y, a.field())
}

/// Counts failures of antisymmetry and Jacobi on random homogeneous triples.
pub fn algebra(a: &ColourAlgebra, seed: u64) -> Result<usize> {
    if a.dim() == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..ROUNDS {
        let (x, dx) = homogeneous(a, &mut rng);
        let (y, dy) = homogeneous(a, &mut rng);
        let (z, dz) = homogeneous(a, &mut rng);
        let mut s = a.bracket(&x, &y);
        axpy(&mut s, &eps(a, &dx, &dy)?, &a.bracket(&y, &x));
        if !is_zero_vector(&s) {
            bad += 1;
        }
        let mut j = zero_vector(a.field(), a.dim());
        axpy(&mut j, &eps(a, &dz, &dx)?, &a.bracket(&x, &a.bracket(&y, &z)));
        axpy(&mut j, &eps(a, &dx, &dy)?, &a.bracket(&y, &a.bracket(&z, &x)));
        axpy(&mut j, &eps(a, &dy, &dz)?, &a.bracket(&z, &a.bracket(&x, &y)));
        if !is_zero_vector(&j) {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Counts failures of `rho([x,y]) = rho(x) rho(y) - eps rho(y) rho(x)`.
pub fn module(m: &GradedModule, seed: u64) -> Result<usize> {
    let a = m.algebra();
    if a.dim() == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..ROUNDS {
        let (x, dx) = homogeneous(a, &mut rng);
        let (y, dy) = homogeneous(a, &mut rng);
        let (rx, ry) = (m.act_element(&x), m.act_element(&y));
        let rhs = rx.mul(&ry).sub(&ry.mul(&rx).scale(&eps(a, &dx, &dy)?));
        if m.act_element(&a.bracket(&x, &y)) != rhs {
            bad += 1;
        }
    }
    Ok(bad)
}
