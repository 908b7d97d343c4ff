//! Sparse multivariate polynomials over a generic scalar.
//!
//! Variables are x_1..x_N, one per group element (index 0 is x_1, the
//! identity variable), plus one auxiliary variable u used by the shifted
//! expansion of the determinant factors. Terms live in a BTreeMap keyed by
//! [`Monomial`] under graded-lex order, so a polynomial is canonical by
//! construction and equality is map equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar};

/// Symbolic determinants are capped here; larger groups go through the
/// evaluation-mode comparison instead.
pub const MAX_DET_SIZE: usize = 8;

/// Exponent vector: one entry per x variable, plus the u exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u8>,
    uexp: u8,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            uexp: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::unit(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn u(nvars: usize) -> Self {
        let mut m = Self::unit(nvars);
        m.uexp = 1;
        m
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn uexp(&self) -> u8 {
        self.uexp
    }

    pub fn total_degree(&self) -> usize {
        self.uexp as usize + self.exps.iter().map(|&e| e as usize).sum::<usize>()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
            uexp: self
                .uexp
                .checked_add(other.uexp)
                .expect("u exponent overflow"),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.uexp.cmp(&other.uexp))
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Scalar> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable x_{i+1} (0-based element index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), C::one());
        p
    }

    /// The auxiliary variable u.
    pub fn uvar(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::u(nvars), C::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn is_zero_poly(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    fn insert_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same nvars");
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.insert_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials over {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    /// Substitute x_1 -> x_1 + u (the identity variable is index 0).
    /// Requires a u-free polynomial.
    pub fn substitute_u(&self) -> Result<Self> {
        if self.terms.keys().any(|m| m.uexp != 0) {
            return Err(Error::Precondition(
                "substitute_u expects a u-free polynomial".into(),
            ));
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let d = m.exps[0] as usize;
            if d == 0 {
                out.insert_term(m.clone(), c.clone());
                continue;
            }
            // (x_1 + u)^d expanded binomially
            let mut binom: u64 = 1;
            for j in 0..=d {
                // binom = C(d, j)
                let mut mm = m.clone();
                mm.exps[0] = (d - j) as u8;
                mm.uexp = j as u8;
                let mut coeff = c.clone();
                for _ in 0..binom - 1 {
                    coeff = coeff + c.clone();
                }
                out.insert_term(mm, coeff);
                binom = binom * (d - j) as u64 / (j + 1) as u64;
            }
        }
        Ok(out)
    }

    /// Coefficient of u^j, as a u-free polynomial.
    pub fn extract_u_coeff(&self, j: u8) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.uexp == j {
                let mut mm = m.clone();
                mm.uexp = 0;
                out.insert_term(mm, c.clone());
            }
        }
        out
    }

    /// Exact evaluation at a point (u-free polynomials only).
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        if self.terms.keys().any(|m| m.uexp != 0) {
            return Err(Error::Precondition(
                "eval expects a u-free polynomial".into(),
            ));
        }
        // precompute powers per variable up to the max exponent used
        let mut max_exp = vec![0u8; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.exps.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<C>> = (0..self.nvars)
            .map(|i| {
                let mut ps = Vec::with_capacity(max_exp[i] as usize + 1);
                ps.push(C::one());
                for e in 1..=max_exp[i] as usize {
                    let next = ps[e - 1].clone() * point[i].clone();
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    term = term * powers[i][e as usize].clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    pub fn is_homogeneous_of_degree(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }
}

impl<C: FieldScalar> MultiPoly<C> {
    pub fn scale_div_nat(&self, n: u64) -> Self {
        let inv = C::one() / C::from_nat(n);
        self.scale(&inv)
    }
}

/// Exact determinant of a square matrix of polynomials by Laplace expansion
/// with a cache of minors indexed by column subsets (2^n entries). Division
/// free, which is what makes it usable over any coefficient ring.
pub fn det_poly_matrix<C: Scalar>(m: &[Vec<MultiPoly<C>>]) -> Result<MultiPoly<C>> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix must be square".into()));
    }
    if n > MAX_DET_SIZE {
        return Err(Error::SizeLimit(format!(
            "symbolic determinant capped at {MAX_DET_SIZE} x {MAX_DET_SIZE} \
             (got {n}); use factorization verification in evaluation mode instead"
        )));
    }
    let nvars = m[0][0].nvars();
    for row in m {
        for e in row {
            if e.nvars() != nvars {
                return Err(Error::Dimension("matrix entries disagree on nvars".into()));
            }
        }
    }
    // minors[mask] = det of the submatrix on rows 0..popcount(mask) and
    // column set `mask`, built level by level
    let full = 1usize << n;
    let mut minors: Vec<Option<MultiPoly<C>>> = vec![None; full];
    minors[0] = Some(MultiPoly::one(nvars));
    for mask in 1..full {
        let k = (mask as u32).count_ones() as usize;
        let row = k - 1;
        let mut acc = MultiPoly::zero(nvars);
        // expanding along row k-1: cofactor sign is (-1)^((k-1)+t) for the
        // t-th surviving column
        let mut sign_pos = (k - 1) % 2 == 0;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = minors[mask & !(1 << j)].as_ref().expect("level order");
            let entry = &m[row][j];
            if !entry.is_zero_poly() {
                let term = entry.try_mul(sub)?;
                acc = if sign_pos {
                    acc.try_add(&term)?
                } else {
                    acc.try_sub(&term)?
                };
            }
            sign_pos = !sign_pos;
        }
        minors[mask] = Some(acc);
    }
    Ok(minors[full - 1].take().expect("full minor"))
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            match m.uexp {
                0 => {}
                1 => factors.push("u".to_string()),
                e => factors.push(format!("u^{e}")),
            }
            let c_str = format!("{c}");
            if factors.is_empty() {
                write!(f, "({c_str})")?;
            } else if c_str == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "({c_str})*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;

    type P = MultiPoly<Cyclo>;

    fn x(n: usize, i: usize) -> P {
        P::var(n, i)
    }

    #[test]
    fn product_of_sum_and_difference() {
        let a = x(2, 0).try_add(&x(2, 1)).unwrap();
        let b = x(2, 0).try_sub(&x(2, 1)).unwrap();
        let prod = a.try_mul(&b).unwrap();
        let expect = x(2, 0).pow(2).try_sub(&x(2, 1).pow(2)).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn zeroth_power_is_one() {
        let p = x(3, 0).try_add(&x(3, 2)).unwrap();
        assert_eq!(p.pow(0), P::one(3));
    }

    #[test]
    fn nvars_mismatch_rejected() {
        assert!(x(2, 0).try_add(&x(3, 0)).is_err());
        assert!(x(2, 0).try_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn two_by_two_determinant() {
        let m = vec![vec![x(2, 0), x(2, 1)], vec![x(2, 1), x(2, 0)]];
        let det = det_poly_matrix(&m).unwrap();
        let expect = x(2, 0).pow(2).try_sub(&x(2, 1).pow(2)).unwrap();
        assert_eq!(det, expect);
    }

    #[test]
    fn z3_circulant_equals_factor_product() {
        // det [[x1,x2,x3],[x3,x1,x2],[x2,x3,x1]] against the product of the
        // three linear forms with cube-root-of-unity coefficients
        let n = 3;
        let m: Vec<Vec<P>> = vec![
            vec![x(n, 0), x(n, 1), x(n, 2)],
            vec![x(n, 2), x(n, 0), x(n, 1)],
            vec![x(n, 1), x(n, 2), x(n, 0)],
        ];
        let det = det_poly_matrix(&m).unwrap();
        let eps = |k: i64| Cyclo::zeta(3, k).unwrap();
        let factor = |a: Cyclo, b: Cyclo| -> P {
            x(n, 0)
                .try_add(&x(n, 1).scale(&a))
                .unwrap()
                .try_add(&x(n, 2).scale(&b))
                .unwrap()
        };
        let product = factor(eps(0), eps(0))
            .try_mul(&factor(eps(1), eps(2)))
            .unwrap()
            .try_mul(&factor(eps(2), eps(1)))
            .unwrap();
        assert_eq!(det, product);
        // explicit expansion: x1^3 + x2^3 + x3^3 - 3 x1 x2 x3
        let mut expect = x(n, 0).pow(3);
        expect = expect.try_add(&x(n, 1).pow(3)).unwrap();
        expect = expect.try_add(&x(n, 2).pow(3)).unwrap();
        let triple = x(n, 0)
            .try_mul(&x(n, 1))
            .unwrap()
            .try_mul(&x(n, 2))
            .unwrap()
            .scale(&Cyclo::from_int(-3));
        expect = expect.try_add(&triple).unwrap();
        assert_eq!(det, expect);
    }

    #[test]
    fn determinant_of_identity_substitution() {
        // identity matrix = circulant at x1=1, x2=x3=0
        let n = 3;
        let m: Vec<Vec<P>> = vec![
            vec![x(n, 0), x(n, 1), x(n, 2)],
            vec![x(n, 2), x(n, 0), x(n, 1)],
            vec![x(n, 1), x(n, 2), x(n, 0)],
        ];
        let det = det_poly_matrix(&m).unwrap();
        let point = vec![Cyclo::one(), Cyclo::zero(), Cyclo::zero()];
        assert_eq!(det.eval(&point).unwrap(), Cyclo::one());
        // all-ones circulant is singular; cross-check the symbolic route
        // against the numeric determinant of the evaluated matrix
        let ones = vec![Cyclo::one(), Cyclo::one(), Cyclo::one()];
        assert_eq!(det.eval(&ones).unwrap(), Cyclo::zero());
        let numeric = crate::matrix::SqMatrix::from_rows(vec![
            vec![Cyclo::one(), Cyclo::one(), Cyclo::one()],
            vec![Cyclo::one(), Cyclo::one(), Cyclo::one()],
            vec![Cyclo::one(), Cyclo::one(), Cyclo::one()],
        ])
        .unwrap();
        assert_eq!(numeric.det_field(), Cyclo::zero());
    }

    #[test]
    fn oversize_determinant_rejected() {
        let n = 9;
        let m: Vec<Vec<P>> = (0..n)
            .map(|_| (0..n).map(|_| P::one(1)).collect())
            .collect();
        match det_poly_matrix(&m) {
            Err(Error::SizeLimit(msg)) => assert!(msg.contains("evaluation")),
            other => panic!("expected size limit, got {other:?}"),
        }
    }

    #[test]
    fn substitute_u_shifts_only_identity_variable() {
        let p = x(2, 0); // x_1
        let q = p.substitute_u().unwrap();
        let expect = x(2, 0).try_add(&P::uvar(2)).unwrap();
        assert_eq!(q, expect);

        let other = x(2, 1).substitute_u().unwrap();
        assert_eq!(other, x(2, 1));

        // binomial: x1^2 -> x1^2 + 2 u x1 + u^2
        let sq = x(2, 0).pow(2).substitute_u().unwrap();
        let expect = x(2, 0)
            .pow(2)
            .try_add(
                &x(2, 0)
                    .try_mul(&P::uvar(2))
                    .unwrap()
                    .scale(&Cyclo::from_int(2)),
            )
            .unwrap()
            .try_add(&P::uvar(2).pow(2))
            .unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.extract_u_coeff(1), x(2, 0).scale(&Cyclo::from_int(2)));
        assert_eq!(sq.extract_u_coeff(2), P::one(2));
    }

    #[test]
    fn eval_examples() {
        let p = x(2, 0).pow(2).try_sub(&x(2, 1).pow(2)).unwrap();
        let v = p.eval(&[Cyclo::one(), Cyclo::one()]).unwrap();
        assert_eq!(v, Cyclo::zero());
        assert!(p.eval(&[Cyclo::one()]).is_err());
    }
}
