//! Characters, k-characters, and group-determinant factorization.
//!
//! [`ClassFunction`] holds per-element values constant on conjugacy classes;
//! [`CharTable`] is a fully validated set of irreducible characters (row
//! count, degree squares, orthogonality — invalid tables are rejected on
//! load, so downstream checks never trust the data source). [`MatrixRep`]
//! carries explicit representation matrices and exists for the exterior-power
//! identities; everything character-theoretic runs off class functions.

mod exterior;
mod factor;
mod kchar;
mod tables;

pub use exterior::{
    diagonal_theta, direct_sum_kchar_check, exterior_char, phi2_generating_check,
    waring_consistency_check, waring_e_from_s, whitney_check,
};
pub use factor::{
    group_det, phi_eval_at, phi_k, u_expansion_check, verify_factorization, FactorMode,
    FactorizationVerdict,
};
pub use kchar::{
    explicit_formula_check, identity_reduction_check, kchar_cyclic, kchar_equivalence_check,
    kchar_recursive, kchar_symmetry_check, vanishing_check, CheckVerdict, KcharEngine,
};
pub use tables::{builtin_char_table, builtin_table_names, load_char_table, parse_char_table};

use std::sync::Arc;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::SqMatrix;

/// A trace-like function on a finite group: per-element values, constant on
/// conjugacy classes.
#[derive(Clone, PartialEq)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclo>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction({}, {:?})", self.group.name(), self.values)
    }
}

impl ClassFunction {
    /// Validates the trace-like axiom chi(gh) = chi(hg) over all pairs.
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclo>) -> Result<ClassFunction> {
        let n = group.order();
        if values.len() != n {
            return Err(Error::Dimension(format!(
                "class function needs {n} values, got {}",
                values.len()
            )));
        }
        let cf = ClassFunction { group, values };
        if let Some((g, h)) = cf.trace_like_violation() {
            return Err(Error::validation(
                "trace-like",
                format!("chi(g{g}*g{h}) != chi(g{h}*g{g})"),
            ));
        }
        Ok(cf)
    }

    /// Skips the trace-like validation; for negative controls in tests.
    pub fn new_unchecked(group: Arc<FiniteGroup>, values: Vec<Cyclo>) -> ClassFunction {
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, g: usize) -> &Cyclo {
        &self.values[g]
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn is_trace_like(&self) -> bool {
        self.trace_like_violation().is_none()
    }

    fn trace_like_violation(&self) -> Option<(usize, usize)> {
        let n = self.group.order();
        for g in 0..n {
            for h in g + 1..n {
                if self.values[self.group.mul(g, h)] != self.values[self.group.mul(h, g)] {
                    return Some((g, h));
                }
            }
        }
        None
    }

    /// Pointwise sum (the character of a direct sum).
    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.group.as_ref() != other.group.as_ref() {
            return Err(Error::InvalidParameter(
                "class functions live on different groups".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ClassFunction {
            group: self.group.clone(),
            values,
        })
    }

    /// The value at the identity (the degree, for characters).
    pub fn degree_value(&self) -> &Cyclo {
        &self.values[0]
    }
}

/// One irreducible character with its degree.
#[derive(Clone, Debug)]
pub struct CharRow {
    pub degree: usize,
    pub chi: ClassFunction,
}

/// A validated table of irreducible characters.
#[derive(Clone, Debug)]
pub struct CharTable {
    group: Arc<FiniteGroup>,
    rows: Vec<CharRow>,
}

impl CharTable {
    /// Validates everything the table promises: one row per conjugacy class,
    /// degree bookkeeping, degree at the identity, and row orthogonality
    /// (1/|G|) sum_g chi_i(g) conj(chi_j(g)) = delta_ij, exactly.
    pub fn new(group: Arc<FiniteGroup>, rows: Vec<CharRow>) -> Result<CharTable> {
        let n = group.order();
        let r = group.conjugacy_classes().classes.len();
        if rows.len() != r {
            return Err(Error::validation(
                "row count",
                format!("{} rows for {} conjugacy classes", rows.len(), r),
            ));
        }
        let degree_sq: usize = rows.iter().map(|row| row.degree * row.degree).sum();
        if degree_sq != n {
            return Err(Error::validation(
                "degree squares",
                format!("sum of degree squares is {degree_sq}, group order is {n}"),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.chi.group.as_ref() != group.as_ref() {
                return Err(Error::validation(
                    "group",
                    format!("row {i} built on another group"),
                ));
            }
            if row.degree == 0 {
                return Err(Error::validation("degree", format!("row {i} has degree 0")));
            }
            if *row.chi.degree_value() != Cyclo::from_int(row.degree as i64) {
                return Err(Error::validation(
                    "identity value",
                    format!("row {i}: chi(e) != degree {}", row.degree),
                ));
            }
        }
        let order = Cyclo::from_int(n as i64);
        for i in 0..rows.len() {
            for j in i..rows.len() {
                let mut acc = Cyclo::zero();
                for g in 0..n {
                    acc = &acc + &(rows[i].chi.value(g) * &rows[j].chi.value(g).conj());
                }
                let expect = if i == j { order.clone() } else { Cyclo::zero() };
                if acc != expect {
                    return Err(Error::validation(
                        "orthogonality",
                        format!("rows {i} and {j}: inner product {acc} (times |G|)"),
                    ));
                }
            }
        }
        Ok(CharTable { group, rows })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rows(&self) -> &[CharRow] {
        &self.rows
    }
}

/// An explicit matrix representation: one matrix per group element.
#[derive(Clone)]
pub struct MatrixRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    mats: Vec<SqMatrix<Cyclo>>,
}

impl std::fmt::Debug for MatrixRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixRep({}, dim {})", self.group.name(), self.dim)
    }
}

impl MatrixRep {
    /// Validates the homomorphism property against the Cayley table.
    pub fn new(group: Arc<FiniteGroup>, mats: Vec<SqMatrix<Cyclo>>) -> Result<MatrixRep> {
        let n = group.order();
        if mats.len() != n {
            return Err(Error::Dimension(format!(
                "representation needs {n} matrices, got {}",
                mats.len()
            )));
        }
        let dim = mats[0].dim();
        if mats.iter().any(|m| m.dim() != dim) {
            return Err(Error::Dimension(
                "representation matrices disagree on dimension".into(),
            ));
        }
        if mats[0] != SqMatrix::identity(dim) {
            return Err(Error::validation(
                "identity",
                "mats[0] is not the identity matrix",
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if mats[i].mul(&mats[j]) != mats[group.mul(i, j)] {
                    return Err(Error::validation(
                        "homomorphism",
                        format!("rho(g{i}) rho(g{j}) != rho(g{i} g{j})"),
                    ));
                }
            }
        }
        Ok(MatrixRep { group, dim, mats })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, g: usize) -> &SqMatrix<Cyclo> {
        &self.mats[g]
    }

    /// Trace character; trace-like by construction, still routed through the
    /// validating constructor.
    pub fn character(&self) -> ClassFunction {
        let values = self.mats.iter().map(SqMatrix::trace).collect();
        ClassFunction::new(self.group.clone(), values).expect("traces are trace-like")
    }

    /// 1x1 representation from a linear (degree 1) character.
    pub fn from_linear_character(chi: &ClassFunction) -> Result<MatrixRep> {
        let mats = chi
            .values
            .iter()
            .map(|v| SqMatrix::from_rows(vec![vec![v.clone()]]).expect("1x1"))
            .collect();
        MatrixRep::new(chi.group.clone(), mats)
    }

    /// Block-diagonal direct sum of two representations of the same group.
    pub fn direct_sum(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep> {
        if a.group.as_ref() != b.group.as_ref() {
            return Err(Error::InvalidParameter(
                "direct sum of representations of different groups".into(),
            ));
        }
        let dim = a.dim + b.dim;
        let mats = a
            .mats
            .iter()
            .zip(&b.mats)
            .map(|(ma, mb)| {
                let rows: Vec<Vec<Cyclo>> = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| {
                                if i < a.dim && j < a.dim {
                                    ma.get(i, j).clone()
                                } else if i >= a.dim && j >= a.dim {
                                    mb.get(i - a.dim, j - a.dim).clone()
                                } else {
                                    Cyclo::zero()
                                }
                            })
                            .collect()
                    })
                    .collect();
                SqMatrix::from_rows(rows).expect("square")
            })
            .collect();
        MatrixRep::new(a.group.clone(), mats)
    }
}

/// The standard 2-dimensional representation of S3 on the zero-sum subspace,
/// integer matrices in the basis e0-e1, e1-e2.
pub fn builtin_rep_s3() -> Result<MatrixRep> {
    let group = Arc::new(crate::group::make_symmetric(3)?);
    let perms = crate::group::permutations_lex(3);
    let mats = perms
        .iter()
        .map(|p| {
            // column t = coordinates of e_{p(t)} - e_{p(t+1)} in the f basis,
            // where e_a - e_b = f_{a+1} + ... + f_b (negated when a > b)
            let coords = |a: usize, b: usize| -> Vec<i64> {
                let mut v = vec![0i64; 2];
                if a < b {
                    for f in a..b {
                        v[f] = 1;
                    }
                } else {
                    for f in b..a {
                        v[f] = -1;
                    }
                }
                v
            };
            let c0 = coords(p[0], p[1]);
            let c1 = coords(p[1], p[2]);
            let rows = (0..2)
                .map(|i| vec![Cyclo::from_int(c0[i]), Cyclo::from_int(c1[i])])
                .collect();
            SqMatrix::from_rows(rows).expect("2x2")
        })
        .collect();
    MatrixRep::new(group, mats)
}

/// The 2-dimensional representation of Q8: i, j, k as the standard Pauli-like
/// unitaries over Q(zeta_4).
pub fn builtin_rep_q8() -> Result<MatrixRep> {
    let group = Arc::new(crate::group::make_quaternion()?);
    let i = Cyclo::zeta(4, 1)?;
    let zero = Cyclo::zero();
    let one = Cyclo::one();
    let m = |a: &Cyclo, b: &Cyclo, c: &Cyclo, d: &Cyclo| {
        SqMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
            .expect("2x2")
    };
    let m1 = m(&one, &zero, &zero, &one);
    let mi = m(&i, &zero, &zero, &i.conj());
    let mj = m(&zero, &one, &(-one.clone()), &zero);
    let mk = m(&zero, &i, &i, &zero);
    let neg = |mm: &SqMatrix<Cyclo>| {
        SqMatrix::from_rows(
            mm.rows()
                .iter()
                .map(|r| r.iter().map(|c| -c.clone()).collect())
                .collect(),
        )
        .expect("2x2")
    };
    // element order: 1, -1, i, -i, j, -j, k, -k
    let mats = vec![
        m1.clone(),
        neg(&m1),
        mi.clone(),
        neg(&mi),
        mj.clone(),
        neg(&mj),
        mk.clone(),
        neg(&mk),
    ];
    MatrixRep::new(group, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_symmetric};

    #[test]
    fn class_function_validation() {
        let s3 = Arc::new(make_symmetric(3).unwrap());
        // the 2-dim character: 2 at e, 0 at transpositions, -1 at 3-cycles
        let perms = crate::group::permutations_lex(3);
        let values: Vec<Cyclo> = perms
            .iter()
            .map(|p| {
                let fixed = p.iter().enumerate().filter(|(i, &x)| *i == x).count();
                Cyclo::from_int(fixed as i64 - 1)
            })
            .collect();
        let chi = ClassFunction::new(s3.clone(), values).unwrap();
        assert!(chi.is_trace_like());
        assert_eq!(chi.degree_value(), &Cyclo::from_int(2));

        // a non-class-constant assignment must be rejected
        let mut bad = vec![Cyclo::zero(); 6];
        bad[0] = Cyclo::from_int(1);
        bad[1] = Cyclo::from_int(5);
        assert!(ClassFunction::new(s3, bad).is_err());
    }

    #[test]
    fn builtin_reps_validate() {
        let s3 = builtin_rep_s3().unwrap();
        assert_eq!(s3.dim(), 2);
        let chi = s3.character();
        assert_eq!(chi.value(0), &Cyclo::from_int(2));

        let q8 = builtin_rep_q8().unwrap();
        assert_eq!(q8.dim(), 2);
        let chi = q8.character();
        assert_eq!(chi.value(0), &Cyclo::from_int(2));
        assert_eq!(chi.value(1), &Cyclo::from_int(-2));
        for g in 2..8 {
            assert_eq!(chi.value(g), &Cyclo::zero());
        }
    }

    #[test]
    fn direct_sum_character_adds() {
        let rep = builtin_rep_s3().unwrap();
        let sum = MatrixRep::direct_sum(&rep, &rep).unwrap();
        assert_eq!(sum.dim(), 4);
        let chi2 = rep.character();
        let chi4 = sum.character();
        for g in 0..6 {
            assert_eq!(chi4.value(g), &(chi2.value(g) + chi2.value(g)));
        }
    }

    #[test]
    fn char_table_rejects_broken_degree_sum() {
        let z2 = Arc::new(make_cyclic(2).unwrap());
        let one = ClassFunction::new(z2.clone(), vec![Cyclo::one(), Cyclo::one()]).unwrap();
        let bad = CharTable::new(
            z2,
            vec![
                CharRow {
                    degree: 1,
                    chi: one.clone(),
                },
                CharRow {
                    degree: 2,
                    chi: one,
                },
            ],
        );
        match bad {
            Err(Error::Validation { axiom, .. }) => assert_eq!(axiom, "degree squares"),
            other => panic!("expected degree-squares failure, got {other:?}"),
        }
    }

    #[test]
    fn char_table_rejects_non_orthogonal_rows() {
        let z2 = Arc::new(make_cyclic(2).unwrap());
        let one = ClassFunction::new(z2.clone(), vec![Cyclo::one(), Cyclo::one()]).unwrap();
        let bad = CharTable::new(
            z2,
            vec![
                CharRow {
                    degree: 1,
                    chi: one.clone(),
                },
                CharRow {
                    degree: 1,
                    chi: one,
                },
            ],
        );
        match bad {
            Err(Error::Validation { axiom, .. }) => assert_eq!(axiom, "orthogonality"),
            other => panic!("expected orthogonality failure, got {other:?}"),
        }
    }
}
