use colour_loop::abelian::Subgroup;
use colour_loop::colouralg::{discolour, recolour};
use colour_loop::cyclotomic::{CycloField, CycloNum};
use colour_loop::gmodule::{coarsen, is_graded_irreducible, GradedModule};
use colour_loop::linalg::Matrix;
use colour_loop::workbench::*;
use colour_loop::Error;

fn fld() -> &'static CycloField {
    sl2c().field()
}

fn q(p: i64, d: i64) -> CycloNum {
    CycloNum::from_ratio(fld(), p, d).unwrap()
}

fn qi(p: i64, d: i64) -> CycloNum {
    CycloNum::gaussian(fld(), (0, 1), (p, d)).unwrap()
}

/// Matrix whose column `j` is `sum c e_k` over the terms returned by `col(j)`; indices out
/// of `0..n` are dropped.
fn by_columns(n: usize, col: impl Fn(i64) -> Vec<(i64, CycloNum)>) -> Matrix {
    let mut m = Matrix::zeros(fld(), n, n);
    for j in 0..n {
        for (k, c) in col(j as i64) {
            if (0..n as i64).contains(&k) {
                *m.entry_mut(k as usize, j) += &c;
            }
        }
    }
    m
}

/// The action of module `v` written in `v_j` coordinates through the basis `b`.
fn in_v_coords(v: &GradedModule, b: &Matrix) -> Vec<Matrix> {
    let binv = b.inverse().unwrap();
    v.action().iter().map(|a| b.mul(a).mul(&binv)).collect()
}

#[test]
fn sl2c_discolours_to_the_lie_algebra() {
    let c = make_sl2c();
    let d = discolour(&c, &sigma_sl2()).unwrap();
    assert_eq!(d, make_sl2_discoloured());
    assert_eq!(recolour(&d, &sigma_sl2()).unwrap(), c);
    // [a2, a3] = -a1
    assert_eq!(d.bracket_basis(1, 2), &vec![q(-1, 1), q(0, 1), q(0, 1)]);
    assert!(d.epsilon().bicharacter().exponents().iter().flatten().all(|&e| e == 0));
}

#[test]
fn v_lambda_small_cases() {
    let v0 = make_v_lambda(0).unwrap();
    assert!(v0.action().iter().all(Matrix::is_zero));
    let v2 = make_v_lambda(2).unwrap();
    assert!(v2.action()[2].column(1).iter().all(CycloNum::is_zero));
    let v1 = make_v_lambda(1).unwrap();
    assert_eq!(v1.action()[0].column(0), vec![q(0, 1), qi(-1, 2)]);
}

#[test]
fn v_lambda_matches_generator_formulas() {
    for lambda in 0..=6i64 {
        let n = lambda as usize + 1;
        let v = make_v_lambda(lambda as u32).unwrap();
        let a1 = by_columns(n, |j| vec![(j - 1, qi(lambda - j + 1, 2)), (j + 1, qi(-(j + 1), 2))]);
        let a2 = by_columns(n, |j| vec![(j - 1, q(-(lambda - j + 1), 2)), (j + 1, q(-(j + 1), 2))]);
        let a3 = by_columns(n, |j| vec![(j, qi(-(lambda - 2 * j), 2))]);
        assert_eq!(v.action(), &[a1, a2, a3]);
    }
}

#[test]
fn e_plus_sector_dimensions() {
    let e = make_sl2_graded(2, &Sl2Variant::EPlus).unwrap();
    // reps 00, 01, 10, 11
    assert_eq!(e.sector_dims(), vec![1, 1, 0, 1]);
    let e4 = make_sl2_graded(4, &Sl2Variant::EPlus).unwrap();
    assert_eq!(e4.sector_dims(), vec![2, 1, 1, 1]);
}

#[test]
fn parity_mismatch_is_an_invalid_variant() {
    for (lambda, v) in [
        (1, Sl2Variant::EPlus),
        (2, Sl2Variant::LoopE),
        (2, Sl2Variant::U { zeta: 1, xi: 1 }),
        (3, Sl2Variant::UngradedEPlus),
        (2, Sl2Variant::Recoloured(Box::new(Sl2Variant::E))),
    ] {
        assert!(matches!(make_sl2_graded(lambda, &v), Err(Error::InvalidVariant(_))), "{v} at {lambda}");
    }
}

#[test]
fn catalog_variants_parse_and_build() {
    for lambda in 0..=5 {
        for v in Sl2Variant::catalog(lambda) {
            assert_eq!(v.to_string().parse::<Sl2Variant>().unwrap(), v);
            let m = make_sl2_graded(lambda, &v).unwrap();
            assert_eq!(m.dim(), v.dim(lambda), "{v} at {lambda}");
            assert!(is_graded_irreducible(&m).unwrap().is_irreducible(), "{v} at {lambda}");
        }
    }
}

/// `v_j + s v_{l-j}` with `v_{-1} = v_{l+1} = 0`.
fn pm(lambda: i64, j: i64, s: i64) -> Vec<(i64, CycloNum)> {
    vec![(j, q(1, 1)), (lambda - j, q(s, 1))]
}

fn scaled(c: &CycloNum, terms: Vec<(i64, CycloNum)>) -> Vec<(i64, CycloNum)> {
    terms
        .into_iter()
        .filter(|(k, _)| *k >= 0)
        .map(|(k, x)| (k, c * &x))
        .collect()
}

fn apply(m: &Matrix, terms: &[(i64, CycloNum)]) -> Vec<CycloNum> {
    let n = m.rows();
    let mut x = vec![q(0, 1); n];
    for (k, c) in terms {
        if (0..n as i64).contains(k) {
            x[*k as usize] += c;
        }
    }
    m.mul_vec(&x)
}

fn dense(n: usize, terms: &[(i64, CycloNum)]) -> Vec<CycloNum> {
    let mut x = vec![q(0, 1); n];
    for (k, c) in terms {
        if (0..n as i64).contains(k) {
            x[*k as usize] += c;
        }
    }
    x
}

#[test]
fn recoloured_e_plus_sign_pattern() {
    for lambda in [0i64, 2, 4, 6] {
        let n = lambda as usize + 1;
        let r = make_sl2_graded(lambda as u32, &Sl2Variant::Recoloured(Box::new(Sl2Variant::EPlus))).unwrap();
        let (b, _) = e_plus_basis(lambda as u32);
        let act = in_v_coords(&r, &b);
        for j in 0..=lambda {
            for s in [1i64, -1] {
                let w = pm(lambda, j, s);
                if dense(n, &w).iter().all(CycloNum::is_zero) {
                    continue;
                }
                let lo = lambda - j + 1;
                let hi = j + 1;
                let mut a1 = scaled(&qi(lo, 2), pm(lambda, j - 1, -s));
                a1.extend(scaled(&qi(-hi, 2), pm(lambda, j + 1, -s)));
                let mut a2 = scaled(&q(-s * lo, 2), pm(lambda, j - 1, s));
                a2.extend(scaled(&q(-s * hi, 2), pm(lambda, j + 1, s)));
                let a3 = scaled(&qi(-s * (lambda - 2 * j), 2), pm(lambda, j, -s));
                for (m, expect) in act.iter().zip([a1, a2, a3]) {
                    // pm(., -1, .) and pm(., l+1, .) carry the zero vectors v_{-1}, v_{l+1}
                    let expect: Vec<(i64, CycloNum)> = expect.into_iter().filter(|(k, _)| *k <= lambda).collect();
                    assert_eq!(apply(m, &w), dense(n, &expect), "lambda {lambda} j {j} sign {s}");
                }
            }
        }
    }
}

fn loop_index(n: i64, alpha: i64, j: i64) -> i64 {
    if (0..n).contains(&j) {
        alpha * n + j
    } else {
        -1
    }
}

#[test]
fn recoloured_loop_action() {
    for lambda in [1i64, 3, 5] {
        let n = lambda + 1;
        let r = make_sl2_graded(lambda as u32, &Sl2Variant::Recoloured(Box::new(Sl2Variant::LoopE))).unwrap();
        let size = 2 * n as usize;
        let col = |f: &dyn Fn(i64, i64) -> Vec<(i64, CycloNum)>| {
            by_columns(size, |c| {
                let (alpha, j) = (c / n, c % n);
                f(alpha, j)
            })
        };
        let sgn = |alpha: i64| if alpha == 0 { 1 } else { -1 };
        let a1 = col(&|alpha, j| {
            vec![
                (loop_index(n, 1 - alpha, j - 1), qi(lambda - j + 1, 2)),
                (loop_index(n, 1 - alpha, j + 1), qi(-(j + 1), 2)),
            ]
        });
        let a2 = col(&|alpha, j| {
            vec![
                (loop_index(n, alpha, j - 1), q(-sgn(alpha) * (lambda - j + 1), 2)),
                (loop_index(n, alpha, j + 1), q(-sgn(alpha) * (j + 1), 2)),
            ]
        });
        let a3 = col(&|alpha, j| vec![(loop_index(n, 1 - alpha, j), qi(-sgn(alpha) * (lambda - 2 * j), 2))]);
        assert_eq!(r.action(), &[a1, a2, a3], "lambda {lambda}");
        let degrees: Vec<String> = r.degrees().iter().map(|d| d.to_string()).collect();
        for (c, d) in degrees.iter().enumerate() {
            let (alpha, j) = (c as i64 / n, c as i64 % n);
            let expect = match (alpha, j % 2) {
                (0, 0) => "00",
                (0, _) => "01",
                (_, 0) => "11",
                _ => "10",
            };
            assert_eq!(d, expect);
        }
    }
}

#[test]
fn ungraded_e_plus_in_u_basis() {
    for lambda in [0i64, 2, 4, 6] {
        let n = lambda as usize + 1;
        let m = make_sl2_graded(lambda as u32, &Sl2Variant::UngradedEPlus).unwrap();
        let alt = |j: i64| if j % 2 == 0 { -1 } else { 1 };
        let a1 = by_columns(n, |j| vec![(j - 1, q(alt(j) * (lambda - j + 1), 2)), (j + 1, q(-alt(j) * (j + 1), 2))]);
        let a2 = by_columns(n, |j| vec![(j - 1, q(-(lambda - j + 1), 2)), (j + 1, q(-(j + 1), 2))]);
        let a3 = by_columns(n, |j| vec![(j, q(alt(j) * (lambda - 2 * j), 2))]);
        assert_eq!(m.action(), &[a1, a2, a3], "lambda {lambda}");
        assert!(is_graded_irreducible(&m).unwrap().is_irreducible());
    }
}

#[test]
fn u_modules_match_their_action_formulas() {
    for lambda in [1i64, 3, 5] {
        let top = (lambda - 1) / 2;
        let n = top as usize + 1;
        for zeta in [1i64, -1] {
            for xi in [1i64, -1] {
                let m = make_sl2_graded(lambda as u32, &Sl2Variant::U { zeta: zeta as i8, xi: xi as i8 }).unwrap();
                let par = |j: i64| if j % 2 == 0 { 1 } else { -1 };
                let a1 = by_columns(n, |j| {
                    let c = -zeta * par(j);
                    if j < top {
                        vec![(j - 1, q(c * (lambda - j + 1), 2)), (j + 1, q(-c * (j + 1), 2))]
                    } else {
                        vec![(top - 1, q(c * (lambda + 3), 4)), (top, q(-c * xi * (lambda + 1), 4))]
                    }
                });
                let a2 = by_columns(n, |j| {
                    if j < top {
                        vec![(j - 1, q(-(lambda - j + 1), 2)), (j + 1, q(-(j + 1), 2))]
                    } else {
                        vec![(top - 1, q(-(lambda + 3), 4)), (top, q(-xi * (lambda + 1), 4))]
                    }
                });
                let a3 = by_columns(n, |j| vec![(j, q(-zeta * par(j) * (lambda - 2 * j), 2))]);
                assert_eq!(m.action(), &[a1, a2, a3], "lambda {lambda} zeta {zeta} xi {xi}");
            }
        }
    }
}

#[test]
fn u_plus_minus_at_lambda_three() {
    let m = make_sl2_graded(3, &Sl2Variant::U { zeta: 1, xi: -1 }).unwrap();
    // a2 u_1 = -(1/2)(3 u_0 - 2 u_1)
    assert_eq!(m.action()[1].column(1), vec![q(-3, 2), q(1, 1)]);
}

#[test]
fn bd_model_block_pattern() {
    let bd = make_bd_model().unwrap();
    let lm = &bd.loop_module.module;
    assert_eq!(lm.dim(), 4);
    let order: Vec<String> = lm.degrees().iter().map(|d| d.to_string()).collect();
    assert_eq!(order, ["00", "01", "11", "10"]);
    let shapes: Vec<BlockShape> = lm.action().iter().map(block_shape).collect();
    assert_eq!(
        shapes,
        [BlockShape::BlockDiagonal, BlockShape::BlockDiagonal, BlockShape::BlockAntiDiagonal, BlockShape::BlockAntiDiagonal]
    );
    // {Q1, Q1} = 2 Q1^2 = 2 identity = H
    let q1 = &bd.seed.action()[1];
    assert_eq!(q1.mul(q1).add(&q1.mul(q1)), bd.seed.action()[0]);
    assert!(GradedModule::new(lm.algebra().clone(), lm.subgroup(), lm.degrees().to_vec(), lm.action().to_vec()).is_ok());
}

#[test]
fn ungraded_recoloured_parity_shifts_coincide() {
    let whole = Subgroup::whole(&klein());
    let base = coarsen(&make_sl2_graded(2, &"sigma(E+)".parse().unwrap()).unwrap(), &whole).unwrap();
    for v in ["sigma(E-)", "sigma(O+)", "sigma(O-)"] {
        let m = coarsen(&make_sl2_graded(2, &v.parse().unwrap()).unwrap(), &whole).unwrap();
        assert!(colour_loop::gmodule::is_isomorphic(&base, &m).unwrap());
    }
}

#[test]
fn classification_small_lambda() {
    let r = classify_sl2c(3).unwrap();
    for l in &r.lambdas {
        if l.lambda % 2 == 0 {
            assert!(l.pass, "{}: {:?}", l.lambda, l.mismatches);
        } else {
            assert_eq!(l.graded_classes, 1);
            assert_eq!(l.graded_dims, vec![2 * (l.lambda as usize + 1)]);
            assert_eq!(l.equivalence_classes, 1);
            assert_eq!(l.ungraded_classes, 4);
            assert_eq!(l.twist_orbit, 4);
            assert_eq!(
                l.mismatches,
                vec![
                    "catalog modules sigma(LoopE) and sigma(LoopO) are isomorphic".to_string(),
                    "1 graded classes, expected 2".to_string()
                ]
            );
        }
    }
    assert!(matches!(r.check(), Err(Error::ClassificationMismatch(_))));
}

/// `v_{0,j} -> -v_{0,l-j}`, `v_{1,j} -> v_{1,l-j}` intertwines the two loop modules.
#[test]
fn odd_loop_modules_are_isomorphic() {
    for lambda in [1usize, 3, 5] {
        let n = lambda + 1;
        for recoloured in [false, true] {
            let wrap = |v: Sl2Variant| if recoloured { Sl2Variant::Recoloured(Box::new(v)) } else { v };
            let e = make_sl2_graded(lambda as u32, &wrap(Sl2Variant::LoopE)).unwrap();
            let o = make_sl2_graded(lambda as u32, &wrap(Sl2Variant::LoopO)).unwrap();
            let mut m = Matrix::zeros(fld(), 2 * n, 2 * n);
            for j in 0..n {
                m.set(lambda - j, j, q(-1, 1));
                m.set(n + lambda - j, n + j, q(1, 1));
            }
            for c in 0..2 * n {
                let r = (0..2 * n).find(|&r| !m.get(r, c).is_zero()).unwrap();
                assert_eq!(o.degrees()[r], e.degrees()[c]);
            }
            for (x, y) in e.action().iter().zip(o.action()) {
                assert_eq!(m.mul(x), y.mul(&m), "lambda {lambda}");
            }
            assert!(colour_loop::gmodule::is_isomorphic(&e, &o).unwrap());
        }
    }
}
