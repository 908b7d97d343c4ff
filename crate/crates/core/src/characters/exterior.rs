//! Diagonal k-characters as exterior-power traces, the Waring determinant
//! route from power sums, and the direct-sum identities (shuffle expansion
//! and Whitney formula).

use num_traits::Zero;

use crate::cyclo::{Cyclo, Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::{subsets_of_size, SqMatrix};
use crate::poly::{det_poly_matrix, MultiPoly};

use super::kchar::{all_tuples, CheckVerdict, KcharEngine, EXHAUSTIVE_TUPLE_BOUND};
use super::{ClassFunction, MatrixRep};

fn factorial_int(k: usize) -> Int {
    let mut acc = Int::from(1);
    for i in 2..=k {
        acc *= Int::from(i as u64);
    }
    acc
}

/// Trace on the k-th exterior power: the sum of principal k x k minors of
/// rho(g). k = 0 gives 1.
pub fn exterior_char(rep: &MatrixRep, k: usize, g: usize) -> Result<Cyclo> {
    if g >= rep.group().order() {
        return Err(Error::InvalidParameter(format!(
            "element index {g} out of range"
        )));
    }
    rep.mat(g).principal_minor_sum(k)
}

/// Diagonal k-character theta_k(g) = chi_k(g, ..., g) / k!.
pub fn diagonal_theta(chi: &ClassFunction, k: usize, g: usize) -> Result<Cyclo> {
    if g >= chi.group().order() {
        return Err(Error::InvalidParameter(format!(
            "element index {g} out of range"
        )));
    }
    if k == 0 {
        return Ok(Cyclo::one());
    }
    let mut engine = KcharEngine::new_sorted(chi);
    let tuple = vec![g; k];
    let v = engine.eval(&tuple)?;
    Ok(&v / &Cyclo::from_rat(Rat::from_integer(factorial_int(k))))
}

/// Per element: det(u I + rho(g)), computed honestly as a one-variable
/// polynomial determinant, must equal sum_k theta_k(g) u^{n-k} with theta
/// from the k-character recursion, and each coefficient must equal the
/// principal-minor trace.
pub fn phi2_generating_check(rep: &MatrixRep) -> Result<CheckVerdict> {
    let group = rep.group().clone();
    let name = group.name().to_string();
    let n = rep.dim();
    let chi = rep.character();
    let mut cases = 0u64;
    for g in 0..group.order() {
        // det(uI + rho(g)) via the polynomial kernel (nvars = 0, u only)
        let entries: Vec<Vec<MultiPoly<Cyclo>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut e = MultiPoly::constant(0, rep.mat(g).get(i, j).clone());
                        if i == j {
                            e = e.try_add(&MultiPoly::uvar(0)).expect("nvars 0");
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        let charpoly = det_poly_matrix(&entries)?;
        for k in 0..=n {
            cases += 1;
            let coeff_poly = charpoly.extract_u_coeff((n - k) as u8);
            let coeff = coeff_poly.eval(&[])?;
            let theta = diagonal_theta(&chi, k, g)?;
            let minors = exterior_char(rep, k, g)?;
            if coeff != theta || theta != minors {
                return Ok(CheckVerdict {
                    check: "exterior-power".into(),
                    group: name,
                    pass: false,
                    cases,
                    mode: "symbolic".into(),
                    failure: Some(format!(
                        "g{g}, k={k}: charpoly coefficient {coeff}, diagonal theta {theta}, \
                         minor trace {minors}"
                    )),
                });
            }
        }
    }
    Ok(CheckVerdict {
        check: "exterior-power".into(),
        group: name,
        pass: true,
        cases,
        mode: "symbolic".into(),
        failure: None,
    })
}

/// e_n from the power sums s_1..s_n by the almost-triangular determinant:
/// n! e_n = det [[s1, 1, 0, ...], [s2, s1, 2, ...], ..., [sn, ..., s1]].
pub fn waring_e_from_s(s: &[Cyclo]) -> Result<Cyclo> {
    let n = s.len();
    if n == 0 {
        return Ok(Cyclo::one());
    }
    if n > 8 {
        return Err(Error::SizeLimit(
            "Waring determinant capped at n <= 8".into(),
        ));
    }
    let rows: Vec<Vec<Cyclo>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j <= i {
                        s[i - j].clone()
                    } else if j == i + 1 {
                        Cyclo::from_int((i + 1) as i64)
                    } else {
                        Cyclo::zero()
                    }
                })
                .collect()
        })
        .collect();
    let det = SqMatrix::from_rows(rows)?.det_cofactor();
    Ok(&det / &Cyclo::from_rat(Rat::from_integer(factorial_int(n))))
}

/// theta_k(g) computed three ways must agree: diagonal k-character, exterior
/// minors, and the Waring determinant fed with power sums s_j = chi(g^j).
pub fn waring_consistency_check(rep: &MatrixRep) -> Result<CheckVerdict> {
    let group = rep.group().clone();
    let name = group.name().to_string();
    let chi = rep.character();
    let mut cases = 0u64;
    for g in 0..group.order() {
        for k in 0..=rep.dim() {
            cases += 1;
            let s: Vec<Cyclo> = (1..=k)
                .map(|j| chi.value(group.power(g, j)).clone())
                .collect();
            let waring = waring_e_from_s(&s)?;
            let theta = diagonal_theta(&chi, k, g)?;
            if waring != theta {
                return Ok(CheckVerdict {
                    check: "waring".into(),
                    group: name,
                    pass: false,
                    cases,
                    mode: "exhaustive".into(),
                    failure: Some(format!(
                        "g{g}, k={k}: Waring determinant {waring} != diagonal theta {theta}"
                    )),
                });
            }
        }
    }
    Ok(CheckVerdict {
        check: "waring".into(),
        group: name,
        pass: true,
        cases,
        mode: "exhaustive".into(),
        failure: None,
    })
}

/// The shuffle expansion of chi_k for a sum of trace-like functions:
/// chi_k^{1+2}(h) = sum_{m=0..k} sum_{(m,k-m)-shuffles} chi_m^1 chi_{k-m}^2,
/// checked exhaustively; the shuffle count 2^k is asserted as well.
pub fn direct_sum_kchar_check(
    chi1: &ClassFunction,
    chi2: &ClassFunction,
    k: usize,
) -> Result<CheckVerdict> {
    if chi1.group().as_ref() != chi2.group().as_ref() {
        return Err(Error::InvalidParameter(
            "direct-sum check needs characters of the same group".into(),
        ));
    }
    let group = chi1.group().clone();
    let name = group.name().to_string();
    let n = group.order();
    if (n as u64).pow(k as u32) > EXHAUSTIVE_TUPLE_BOUND {
        return Err(Error::SizeLimit(
            "direct-sum scan exceeds the exhaustive budget".into(),
        ));
    }
    let sum = chi1.add(chi2)?;
    let mut e_sum = KcharEngine::new(&sum);
    let mut e1 = KcharEngine::new(chi1);
    let mut e2 = KcharEngine::new(chi2);

    // position subsets = (m, k-m)-shuffles; count must be 2^k
    let shuffles: Vec<(Vec<usize>, Vec<usize>)> = (0..=k)
        .flat_map(|m| {
            subsets_of_size(k, m).into_iter().map(move |s| {
                let complement: Vec<usize> = (0..k).filter(|i| !s.contains(i)).collect();
                (s, complement)
            })
        })
        .collect();
    if shuffles.len() != 1usize << k {
        return Err(Error::Internal(format!(
            "shuffle enumeration produced {} terms, expected 2^{k}",
            shuffles.len()
        )));
    }

    let mut cases = 0u64;
    for tuple in all_tuples(n, k) {
        cases += 1;
        let lhs = e_sum.eval_transient(&tuple)?;
        let mut rhs = Cyclo::zero();
        for (left, right) in &shuffles {
            let part1 = if left.is_empty() {
                Cyclo::one()
            } else {
                let sel: Vec<usize> = left.iter().map(|&i| tuple[i]).collect();
                e1.eval(&sel)?
            };
            if part1.is_zero() {
                continue;
            }
            let part2 = if right.is_empty() {
                Cyclo::one()
            } else {
                let sel: Vec<usize> = right.iter().map(|&i| tuple[i]).collect();
                e2.eval(&sel)?
            };
            rhs = &rhs + &(&part1 * &part2);
        }
        if lhs != rhs {
            return Ok(CheckVerdict {
                check: "direct-sum-shuffle".into(),
                group: name,
                pass: false,
                cases,
                mode: "exhaustive".into(),
                failure: Some(format!(
                    "tuple {tuple:?}: sum chi_{k} = {lhs}, shuffle rhs = {rhs}"
                )),
            });
        }
    }
    Ok(CheckVerdict {
        check: "direct-sum-shuffle".into(),
        group: name,
        pass: true,
        cases,
        mode: "exhaustive".into(),
        failure: None,
    })
}

/// Whitney formula on diagonals: theta_k of the direct sum equals
/// sum_m theta_m^{rho1} theta_{k-m}^{rho2}. The left side runs through the
/// sum character's k-character recursion and through explicit block-diagonal
/// minors; the right side through principal minors of the summands.
pub fn whitney_check(rep1: &MatrixRep, rep2: &MatrixRep, k: usize) -> Result<CheckVerdict> {
    if rep1.group().as_ref() != rep2.group().as_ref() {
        return Err(Error::InvalidParameter(
            "Whitney check needs representations of the same group".into(),
        ));
    }
    let group = rep1.group().clone();
    let name = group.name().to_string();
    let sum_rep = MatrixRep::direct_sum(rep1, rep2)?;
    let sum_chi = sum_rep.character();
    let mut cases = 0u64;
    for g in 0..group.order() {
        cases += 1;
        let lhs_char = if k <= sum_rep.dim() {
            diagonal_theta(&sum_chi, k, g)?
        } else {
            Cyclo::zero()
        };
        let lhs_minors = if k <= sum_rep.dim() {
            exterior_char(&sum_rep, k, g)?
        } else {
            Cyclo::zero()
        };
        let mut rhs = Cyclo::zero();
        for m in 0..=k {
            if m > rep1.dim() || k - m > rep2.dim() {
                continue;
            }
            let a = exterior_char(rep1, m, g)?;
            let b = exterior_char(rep2, k - m, g)?;
            rhs = &rhs + &(&a * &b);
        }
        if lhs_char != rhs || lhs_minors != rhs {
            return Ok(CheckVerdict {
                check: "whitney".into(),
                group: name,
                pass: false,
                cases,
                mode: "exhaustive".into(),
                failure: Some(format!(
                    "g{g}, k={k}: theta (characters) {lhs_char}, theta (minors) {lhs_minors}, \
                     Whitney sum {rhs}"
                )),
            });
        }
    }
    Ok(CheckVerdict {
        check: "whitney".into(),
        group: name,
        pass: true,
        cases,
        mode: "exhaustive".into(),
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{builtin_char_table, builtin_rep_q8, builtin_rep_s3};

    #[test]
    fn theta_zero_is_one() {
        let rep = builtin_rep_s3().unwrap();
        let chi = rep.character();
        for g in 0..6 {
            assert_eq!(exterior_char(&rep, 0, g).unwrap(), Cyclo::one());
            assert_eq!(diagonal_theta(&chi, 0, g).unwrap(), Cyclo::one());
        }
    }

    #[test]
    fn theta_top_is_determinant() {
        // at a transposition of the standard 2-dim rep the determinant is -1,
        // and theta_2(g) = (chi(g)^2 - chi(g^2)) / 2 = (0 - 2) / 2 = -1
        let rep = builtin_rep_s3().unwrap();
        let chi = rep.character();
        let transposition = 1; // lex index of [0,2,1]
        assert_eq!(chi.value(transposition), &Cyclo::zero());
        let theta2 = diagonal_theta(&chi, 2, transposition).unwrap();
        assert_eq!(theta2, Cyclo::from_int(-1));
        assert_eq!(
            exterior_char(&rep, 2, transposition).unwrap(),
            Cyclo::from_int(-1)
        );
    }

    #[test]
    fn generating_function_checks() {
        for rep in [builtin_rep_s3().unwrap(), builtin_rep_q8().unwrap()] {
            let v = phi2_generating_check(&rep).unwrap();
            assert!(v.pass, "{v:?}");
        }
    }

    #[test]
    fn waring_small_cases() {
        // n = 2: (s1^2 - s2)/2
        let s1 = Cyclo::from_int(3);
        let s2 = Cyclo::from_int(5);
        let e2 = waring_e_from_s(&[s1, s2]).unwrap();
        assert_eq!(e2, Cyclo::from_rat(crate::cyclo::rat_frac(4, 2)));
        // n = 3 frozen from the symbolic 3x3 expansion:
        // (s1^3 - 3 s1 s2 + 2 s3)/6 at (1,2,3) = (1 - 6 + 6)/6 = 1/6
        let e3 =
            waring_e_from_s(&[Cyclo::from_int(1), Cyclo::from_int(2), Cyclo::from_int(3)]).unwrap();
        assert_eq!(e3, Cyclo::from_rat(crate::cyclo::rat_frac(1, 6)));
        // power sums of eigenvalues (1,1): s = (2,2), e2 = 1
        let e2 = waring_e_from_s(&[Cyclo::from_int(2), Cyclo::from_int(2)]).unwrap();
        assert_eq!(e2, Cyclo::one());
    }

    #[test]
    fn waring_consistency_for_shipped_reps() {
        for rep in [builtin_rep_s3().unwrap(), builtin_rep_q8().unwrap()] {
            let v = waring_consistency_check(&rep).unwrap();
            assert!(v.pass, "{v:?}");
        }
    }

    #[test]
    fn shuffle_k1_is_plain_addition() {
        let table = builtin_char_table("S3").unwrap();
        let a = &table.rows()[0].chi;
        let b = &table.rows()[2].chi;
        let v = direct_sum_kchar_check(a, b, 1).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn shuffle_exhaustive_small_k() {
        let table = builtin_char_table("S3").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 1..=3 {
                    let v = direct_sum_kchar_check(&table.rows()[i].chi, &table.rows()[j].chi, k)
                        .unwrap();
                    assert!(v.pass, "rows {i},{j} at k={k}: {v:?}");
                }
            }
        }
    }

    #[test]
    fn shuffle_rejects_mismatched_groups() {
        let s3 = builtin_char_table("S3").unwrap();
        let q8 = builtin_char_table("Q8").unwrap();
        assert!(direct_sum_kchar_check(&s3.rows()[0].chi, &q8.rows()[0].chi, 2).is_err());
    }

    #[test]
    fn whitney_for_s3_pairs() {
        let two = builtin_rep_s3().unwrap();
        let table = builtin_char_table("S3").unwrap();
        let triv = MatrixRep::from_linear_character(&table.rows()[0].chi).unwrap();
        let sign = MatrixRep::from_linear_character(&table.rows()[1].chi).unwrap();
        for k in 0..=3 {
            for (a, b) in [(&two, &triv), (&triv, &two), (&two, &two), (&sign, &two)] {
                let v = whitney_check(a, b, k).unwrap();
                assert!(v.pass, "k={k}: {v:?}");
            }
        }
    }
}
