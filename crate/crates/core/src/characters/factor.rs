//! The determinant side: Phi_k polynomials, the group determinant, and the
//! factorization check Theta_G = prod_i Phi_{n_i}^{chi_i} ^ {n_i}.
//!
//! Phi_k is assembled over multisets with multinomial weights instead of all
//! N^k tuples (chi_k is symmetric in its arguments), which also means the
//! memo inside the engine can key by sorted tuple. Groups of order up to 8
//! get the fully symbolic comparison; between 9 and 24 both sides are
//! compared at seeded random rational points.

use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{Cyclo, Int, Rat};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::SqMatrix;
use crate::poly::{det_poly_matrix, MAX_DET_SIZE};
use crate::Poly;

use super::kchar::KcharEngine;
use super::{CharTable, ClassFunction};

/// Evaluation-mode ceiling: a 24 x 24 exact numeric determinant per point.
pub const MAX_EVAL_ORDER: usize = 24;

/// Default number of evaluation points.
pub const DEFAULT_EVAL_POINTS: usize = 50;

/// Phi_k = (1/k!) sum over tuples of chi_k(h1..hk) x_{h1}..x_{hk}, assembled
/// sparsely: one term per multiset, coefficient chi_k(tuple) / prod(mult!).
pub fn phi_k(chi: &ClassFunction, k: usize) -> Result<Poly> {
    let n = chi.group().order();
    if k == 0 {
        return Ok(Poly::one(n));
    }
    let mut engine = KcharEngine::new_sorted(chi);
    let mut out = Poly::zero(n);
    for multiset in (0..n).combinations_with_replacement(k) {
        let value = engine.eval(&multiset)?;
        if value.is_zero() {
            continue;
        }
        let coeff =
            &value / &Cyclo::from_rat(Rat::from_integer(multiplicity_factorials(&multiset)));
        let mono = monomial_of(n, &multiset);
        out = out.try_add(&mono.scale(&coeff))?;
    }
    Ok(out)
}

fn multiplicity_factorials(sorted_multiset: &[usize]) -> Int {
    let mut acc = Int::from(1);
    let mut run = 1u64;
    for w in sorted_multiset.windows(2) {
        if w[0] == w[1] {
            run += 1;
            acc *= Int::from(run);
        } else {
            run = 1;
        }
    }
    acc
}

fn monomial_of(nvars: usize, multiset: &[usize]) -> Poly {
    let mut acc = Poly::one(nvars);
    for &g in multiset {
        acc = acc.try_mul(&Poly::var(nvars, g)).expect("same nvars");
    }
    acc
}

/// Phi_k evaluated at a point without building the polynomial; used by the
/// evaluation-mode factorization check.
pub fn phi_eval_at(chi: &ClassFunction, k: usize, point: &[Cyclo]) -> Result<Cyclo> {
    let n = chi.group().order();
    if point.len() != n {
        return Err(Error::Dimension(format!(
            "point has {} coordinates for a group of order {n}",
            point.len()
        )));
    }
    if k == 0 {
        return Ok(Cyclo::one());
    }
    let mut engine = KcharEngine::new_sorted(chi);
    let mut acc = Cyclo::zero();
    for multiset in (0..n).combinations_with_replacement(k) {
        let value = engine.eval(&multiset)?;
        if value.is_zero() {
            continue;
        }
        let mut term =
            &value / &Cyclo::from_rat(Rat::from_integer(multiplicity_factorials(&multiset)));
        for &g in &multiset {
            term = &term * &point[g];
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The matrix X_G with X[i][j] = x_{g_i * g_j^{-1}} as polynomial entries.
pub fn group_matrix(group: &FiniteGroup) -> Vec<Vec<Poly>> {
    let n = group.order();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Poly::var(n, group.mul(i, group.inv(j))))
                .collect()
        })
        .collect()
}

/// The group determinant Theta_G = det X_G (symbolic; |G| <= 8).
pub fn group_det(group: &FiniteGroup) -> Result<Poly> {
    let n = group.order();
    if n > MAX_DET_SIZE {
        return Err(Error::SizeLimit(format!(
            "symbolic group determinant capped at order {MAX_DET_SIZE} (got {n}); \
             use the evaluation-mode factorization check instead"
        )));
    }
    det_poly_matrix(&group_matrix(group))
}

#[derive(Clone, Copy, Debug)]
pub enum FactorMode {
    Auto,
    Symbolic,
    Evaluation { points: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationVerdict {
    pub group: String,
    pub mode: String,
    pub pass: bool,
    pub theta_terms: Option<usize>,
    pub product_terms: Option<usize>,
    pub points: Option<usize>,
    pub seed: Option<u64>,
    pub failure: Option<String>,
}

/// Checks Theta_G = prod_i Phi_{n_i}^{chi_i}(x)^{n_i}, symbolically for
/// |G| <= 8 and at seeded rational points for orders up to 24.
pub fn verify_factorization(
    group: &FiniteGroup,
    table: &CharTable,
    mode: FactorMode,
) -> Result<FactorizationVerdict> {
    if table.group().as_ref() != group {
        return Err(Error::InvalidParameter(
            "character table is for a different group".into(),
        ));
    }
    let n = group.order();
    let degree_sq: usize = table.rows().iter().map(|r| r.degree * r.degree).sum();
    if degree_sq != n {
        return Err(Error::validation(
            "degree squares",
            format!("sum of degree squares {degree_sq} != group order {n}"),
        ));
    }
    let mode = match mode {
        FactorMode::Auto => {
            if n <= MAX_DET_SIZE {
                FactorMode::Symbolic
            } else {
                FactorMode::Evaluation {
                    points: DEFAULT_EVAL_POINTS,
                    seed: 1,
                }
            }
        }
        m => m,
    };
    match mode {
        FactorMode::Auto => unreachable!("resolved above"),
        FactorMode::Symbolic => {
            let theta = group_det(group)?;
            let mut product = Poly::one(n);
            for row in table.rows() {
                let phi = phi_k(&row.chi, row.degree)?;
                product = product.try_mul(&phi.pow(row.degree))?;
            }
            let pass = theta == product;
            Ok(FactorizationVerdict {
                group: group.name().to_string(),
                mode: "symbolic".to_string(),
                pass,
                theta_terms: Some(theta.term_count()),
                product_terms: Some(product.term_count()),
                points: None,
                seed: None,
                failure: (!pass).then(|| {
                    let diff = theta.try_sub(&product).expect("same nvars");
                    format!("theta - product has {} terms", diff.term_count())
                }),
            })
        }
        FactorMode::Evaluation { points, seed } => {
            if n > MAX_EVAL_ORDER {
                return Err(Error::SizeLimit(format!(
                    "evaluation-mode factorization capped at order {MAX_EVAL_ORDER} (got {n})"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for idx in 0..points {
                let point: Vec<Cyclo> = (0..n)
                    .map(|_| {
                        let num = rng.gen_range(-20i64..=20);
                        let den = rng.gen_range(1i64..=4);
                        Cyclo::from_rat(Rat::new(Int::from(num), Int::from(den)))
                    })
                    .collect();
                let rows: Vec<Vec<Cyclo>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| point[group.mul(i, group.inv(j))].clone())
                            .collect()
                    })
                    .collect();
                let theta_val = SqMatrix::from_rows(rows)?.det_field();
                let mut rhs = Cyclo::one();
                for row in table.rows() {
                    let phi_val = phi_eval_at(&row.chi, row.degree, &point)?;
                    rhs = &rhs * &phi_val.pow(row.degree as u64);
                }
                if theta_val != rhs {
                    return Ok(FactorizationVerdict {
                        group: group.name().to_string(),
                        mode: "evaluation".to_string(),
                        pass: false,
                        theta_terms: None,
                        product_terms: None,
                        points: Some(points),
                        seed: Some(seed),
                        failure: Some(format!(
                            "mismatch at point {idx}: det = {theta_val}, product = {rhs}"
                        )),
                    });
                }
            }
            Ok(FactorizationVerdict {
                group: group.name().to_string(),
                mode: "evaluation".to_string(),
                pass: true,
                theta_terms: None,
                product_terms: None,
                points: Some(points),
                seed: Some(seed),
                failure: None,
            })
        }
    }
}

/// The shifted expansion Phi_n(x + u e) = u^n + Phi_1 u^{n-1} + ... + Phi_n:
/// substitute x_e -> x_e + u into Phi_n and compare each u coefficient with
/// an independently assembled Phi_j.
pub fn u_expansion_check(chi: &ClassFunction) -> Result<super::kchar::CheckVerdict> {
    let name = chi.group().name().to_string();
    let n_deg = chi
        .degree_value()
        .as_rat()
        .filter(|r| r.is_integer())
        .map(|r| r.numer().clone())
        .ok_or_else(|| Error::InvalidParameter("character degree is not an integer".into()))?;
    let n_deg = usize::try_from(&n_deg)
        .map_err(|_| Error::InvalidParameter("character degree out of range".into()))?;
    if chi.group().order() > MAX_DET_SIZE || n_deg > 2 {
        return Err(Error::SizeLimit(
            "u-expansion check is symbolic; capped at |G| <= 8 and degree <= 2".into(),
        ));
    }
    let phi_n = phi_k(chi, n_deg)?;
    let shifted = phi_n.substitute_u()?;
    let mut cases = 0u64;
    for j in 0..=n_deg {
        cases += 1;
        let got = shifted.extract_u_coeff((n_deg - j) as u8);
        let expect = phi_k(chi, j)?;
        if got != expect {
            return Ok(super::kchar::CheckVerdict {
                check: "u-expansion".into(),
                group: name,
                pass: false,
                cases,
                mode: "symbolic".into(),
                failure: Some(format!(
                    "coefficient of u^{} is {got}, expected Phi_{j} = {expect}",
                    n_deg - j
                )),
            });
        }
    }
    // no u powers beyond n may appear
    let stray = shifted
        .terms()
        .map(|(m, _)| m.uexp() as usize)
        .max()
        .unwrap_or(0);
    let pass = stray <= n_deg;
    Ok(super::kchar::CheckVerdict {
        check: "u-expansion".into(),
        group: name,
        pass,
        cases,
        mode: "symbolic".into(),
        failure: (!pass).then(|| format!("stray u^{stray} term")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{builtin_char_table, builtin_rep_s3};
    use crate::group::{make_cyclic, make_symmetric};

    #[test]
    fn phi_1_is_the_character_weighted_sum() {
        let table = builtin_char_table("Z3").unwrap();
        // second character: chi(g) = zeta_3^g
        let chi = &table.rows()[1].chi;
        let phi = phi_k(chi, 1).unwrap();
        let n = 3;
        let mut expect = Poly::zero(n);
        for g in 0..n {
            expect = expect
                .try_add(&Poly::var(n, g).scale(&Cyclo::zeta(3, g as i64).unwrap()))
                .unwrap();
        }
        assert_eq!(phi, expect);
    }

    #[test]
    fn z2_group_det() {
        let z2 = make_cyclic(2).unwrap();
        let theta = group_det(&z2).unwrap();
        let x1 = Poly::var(2, 0);
        let x2 = Poly::var(2, 1);
        assert_eq!(theta, x1.pow(2).try_sub(&x2.pow(2)).unwrap());
    }

    #[test]
    fn z3_group_det_is_the_circulant() {
        let z3 = make_cyclic(3).unwrap();
        let theta = group_det(&z3).unwrap();
        let n = 3;
        let x = |i| Poly::var(n, i);
        let mut expect = x(0).pow(3);
        expect = expect.try_add(&x(1).pow(3)).unwrap();
        expect = expect.try_add(&x(2).pow(3)).unwrap();
        let triple = x(0)
            .try_mul(&x(1))
            .unwrap()
            .try_mul(&x(2))
            .unwrap()
            .scale(&Cyclo::from_int(-3));
        expect = expect.try_add(&triple).unwrap();
        assert_eq!(theta, expect);
        // theta at the identity point is 1
        let mut pt = vec![Cyclo::zero(); 3];
        pt[0] = Cyclo::one();
        assert_eq!(theta.eval(&pt).unwrap(), Cyclo::one());
    }

    #[test]
    fn group_det_is_homogeneous_of_group_order() {
        for name in ["Z2", "Z4", "S3", "Q8"] {
            let g = crate::group::by_name(name).unwrap();
            let theta = group_det(&g).unwrap();
            assert!(theta.is_homogeneous_of_degree(g.order()), "{name}");
        }
    }

    #[test]
    fn oversize_group_det_rejected() {
        let z9 = make_cyclic(9).unwrap();
        match group_det(&z9) {
            Err(Error::SizeLimit(msg)) => assert!(msg.contains("evaluation")),
            other => panic!("expected size limit, got {other:?}"),
        }
    }

    #[test]
    fn factorization_z3_symbolic() {
        let z3 = make_cyclic(3).unwrap();
        let table = builtin_char_table("Z3").unwrap();
        let v = verify_factorization(&z3, &table, FactorMode::Auto).unwrap();
        assert!(v.pass, "{v:?}");
        assert_eq!(v.mode, "symbolic");
    }

    #[test]
    fn factorization_s3_symbolic() {
        let s3 = make_symmetric(3).unwrap();
        let table = builtin_char_table("S3").unwrap();
        let v = verify_factorization(&s3, &table, FactorMode::Symbolic).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn evaluation_mode_agrees_with_symbolic_route() {
        // S3 is small enough for both routes; they must agree
        let s3 = make_symmetric(3).unwrap();
        let table = builtin_char_table("S3").unwrap();
        let v = verify_factorization(
            &s3,
            &table,
            FactorMode::Evaluation {
                points: 10,
                seed: 7,
            },
        )
        .unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn phi_eval_matches_symbolic_phi() {
        let rep = builtin_rep_s3().unwrap();
        let chi = rep.character();
        let phi2 = phi_k(&chi, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let point: Vec<Cyclo> = (0..6)
                .map(|_| Cyclo::from_int(rng.gen_range(-4i64..=4)))
                .collect();
            assert_eq!(
                phi2.eval(&point).unwrap(),
                phi_eval_at(&chi, 2, &point).unwrap()
            );
        }
    }

    #[test]
    fn phi2_at_identity_unit_point_is_one() {
        let rep = builtin_rep_s3().unwrap();
        let chi = rep.character();
        let phi2 = phi_k(&chi, 2).unwrap();
        let mut pt = vec![Cyclo::zero(); 6];
        pt[0] = Cyclo::one();
        assert_eq!(phi2.eval(&pt).unwrap(), Cyclo::one());
    }

    #[test]
    fn u_expansion_for_s3_two_dim() {
        let rep = builtin_rep_s3().unwrap();
        let chi = rep.character();
        let v = u_expansion_check(&chi).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn u_expansion_for_linear_characters() {
        let table = builtin_char_table("Z3").unwrap();
        for row in table.rows() {
            let v = u_expansion_check(&row.chi).unwrap();
            assert!(v.pass);
        }
    }
}
