//! Frobenius k-characters: the recursion, the signed cyclic sum over the
//! symmetric group, and the exhaustive checks built on them.
//!
//! chi_1 = chi and
//! chi_{k+1}(h0, h1, ..., hk) = chi(h0) chi_k(h1, ..., hk)
//!                              - sum_j chi_k(h1, ..., h0*hj, ..., hk).
//!
//! The engine memoizes by tuple. Exhaustive suites key the memo by the exact
//! tuple, so they assume nothing; the polynomial assembly in
//! [`super::factor`] keys by sorted tuple, an optimization that leans on the
//! symmetry of chi_k (itself verified by [`kchar_symmetry_check`]).

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::ClassFunction;

/// Tuple arguments are capped here (k! sums and N^k scans guard themselves
/// separately).
pub const MAX_K: usize = 8;

const CYCLIC_MAX_K: usize = 6;

/// Bound on exhaustive tuple scans.
pub const EXHAUSTIVE_TUPLE_BOUND: u64 = 1_000_000;

/// Plain recursive evaluation, no memoization. The reference route.
pub fn kchar_recursive(chi: &ClassFunction, tuple: &[usize]) -> Result<Cyclo> {
    if tuple.is_empty() {
        return Err(Error::InvalidParameter(
            "k-character of an empty tuple".into(),
        ));
    }
    if tuple.len() > MAX_K {
        return Err(Error::SizeLimit(format!(
            "k-character arity capped at {MAX_K}"
        )));
    }
    Ok(recurse(chi, chi.group(), tuple))
}

fn recurse(chi: &ClassFunction, group: &FiniteGroup, tuple: &[usize]) -> Cyclo {
    if tuple.len() == 1 {
        return chi.value(tuple[0]).clone();
    }
    let head = tuple[0];
    let rest = &tuple[1..];
    let mut acc = chi.value(head) * &recurse(chi, group, rest);
    let mut moved = rest.to_vec();
    for j in 0..rest.len() {
        let saved = moved[j];
        moved[j] = group.mul(head, saved);
        acc = &acc - &recurse(chi, group, &moved);
        moved[j] = saved;
    }
    acc
}

/// Memoized evaluator. `sorted` keys entries by the sorted tuple (valid for
/// symmetric chi_k); exact keys otherwise.
pub struct KcharEngine<'a> {
    chi: &'a ClassFunction,
    sorted: bool,
    memo: HashMap<([u8; MAX_K], u8), Cyclo>,
}

impl<'a> KcharEngine<'a> {
    pub fn new(chi: &'a ClassFunction) -> Self {
        KcharEngine {
            chi,
            sorted: false,
            memo: HashMap::new(),
        }
    }

    pub fn new_sorted(chi: &'a ClassFunction) -> Self {
        KcharEngine {
            chi,
            sorted: true,
            memo: HashMap::new(),
        }
    }

    fn key(&self, tuple: &[usize]) -> ([u8; MAX_K], u8) {
        let mut k = [u8::MAX; MAX_K];
        for (slot, &g) in k.iter_mut().zip(tuple) {
            *slot = g as u8;
        }
        if self.sorted {
            k[..tuple.len()].sort_unstable();
        }
        (k, tuple.len() as u8)
    }

    /// Memoized evaluation (storing every level including the top).
    pub fn eval(&mut self, tuple: &[usize]) -> Result<Cyclo> {
        self.eval_inner(tuple, true)
    }

    /// Evaluation that memoizes sub-tuples but not the top-level tuple;
    /// exhaustive scans visit each top tuple once, so storing it only
    /// inflates the cache.
    pub fn eval_transient(&mut self, tuple: &[usize]) -> Result<Cyclo> {
        self.eval_inner(tuple, false)
    }

    fn eval_inner(&mut self, tuple: &[usize], store: bool) -> Result<Cyclo> {
        if tuple.is_empty() {
            return Err(Error::InvalidParameter(
                "k-character of an empty tuple".into(),
            ));
        }
        if tuple.len() > MAX_K {
            return Err(Error::SizeLimit(format!(
                "k-character arity capped at {MAX_K}"
            )));
        }
        if tuple.len() == 1 {
            return Ok(self.chi.value(tuple[0]).clone());
        }
        let key = self.key(tuple);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let group = self.chi.group().clone();
        let head = tuple[0];
        let rest = &tuple[1..];
        let mut acc = self.chi.value(head) * &self.eval_inner(rest, true)?;
        let mut moved = rest.to_vec();
        for j in 0..rest.len() {
            let saved = moved[j];
            moved[j] = group.mul(head, saved);
            let sub = self.eval_inner(&moved, true)?;
            acc = &acc - &sub;
            moved[j] = saved;
        }
        if store {
            self.memo.insert(key, acc.clone());
        }
        Ok(acc)
    }
}

/// The signed sum over S_k: for each permutation, the product over its cycles
/// of chi evaluated at the product of tuple entries along the cycle, weighted
/// by the sign.
pub fn kchar_cyclic(chi: &ClassFunction, tuple: &[usize]) -> Result<Cyclo> {
    let k = tuple.len();
    if k == 0 {
        return Err(Error::InvalidParameter(
            "k-character of an empty tuple".into(),
        ));
    }
    if k > CYCLIC_MAX_K {
        return Err(Error::SizeLimit(format!(
            "cyclic-sum evaluation is a k! sum, capped at k <= {CYCLIC_MAX_K}"
        )));
    }
    let group = chi.group();
    let mut acc = Cyclo::zero();
    for sigma in permutations(k) {
        let mut visited = vec![false; k];
        let mut term = Cyclo::one();
        let mut cycles = 0usize;
        for start in 0..k {
            if visited[start] {
                continue;
            }
            cycles += 1;
            // product of tuple elements along the cycle of sigma through start
            let mut prod = tuple[start];
            visited[start] = true;
            let mut at = sigma[start];
            while at != start {
                visited[at] = true;
                prod = group.mul(prod, tuple[at]);
                at = sigma[at];
            }
            term = &term * chi.value(prod);
        }
        // sign of a permutation with c cycles on k points is (-1)^(k-c)
        if (k - cycles) % 2 == 1 {
            acc = &acc - &term;
        } else {
            acc = &acc + &term;
        }
    }
    Ok(acc)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    crate::group::permutations_lex(k)
}

/// Odometer over G^k.
pub fn all_tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (n as u64).pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0usize; k];
        for slot in t.iter_mut().rev() {
            *slot = (idx % n as u64) as usize;
            idx /= n as u64;
        }
        t
    })
}

/// Shared verdict shape for the pass/fail suites.
#[derive(Clone, Debug, Serialize)]
pub struct CheckVerdict {
    pub check: String,
    pub group: String,
    pub pass: bool,
    pub cases: u64,
    pub mode: String,
    pub failure: Option<String>,
}

impl CheckVerdict {
    fn pass(check: &str, group: &str, cases: u64, mode: &str) -> Self {
        CheckVerdict {
            check: check.into(),
            group: group.into(),
            pass: true,
            cases,
            mode: mode.into(),
            failure: None,
        }
    }

    fn fail(check: &str, group: &str, cases: u64, mode: &str, why: String) -> Self {
        CheckVerdict {
            check: check.into(),
            group: group.into(),
            pass: false,
            cases,
            mode: mode.into(),
            failure: Some(why),
        }
    }
}

/// chi_k is a symmetric function of its arguments: exhaustive over all
/// tuples and all k! permutations. Returns the counterexample on failure
/// (which is how the deliberately corrupted negative control reports).
pub fn kchar_symmetry_check(chi: &ClassFunction, k: usize) -> Result<CheckVerdict> {
    let n = chi.group().order();
    let space = (n as u64).pow(k as u32) * factorial(k);
    if k > 4 || space > 10 * EXHAUSTIVE_TUPLE_BOUND {
        return Err(Error::SizeLimit(format!(
            "symmetry check needs N^k * k! manageable, got {space}"
        )));
    }
    let name = chi.group().name().to_string();
    let mut engine = KcharEngine::new(chi);
    let mut cases = 0u64;
    for tuple in all_tuples(n, k) {
        let base = engine.eval(&tuple)?;
        for sigma in permutations(k) {
            let permuted: Vec<usize> = sigma.iter().map(|&i| tuple[i]).collect();
            cases += 1;
            let v = engine.eval(&permuted)?;
            if v != base {
                return Ok(CheckVerdict::fail(
                    "symmetry",
                    &name,
                    cases,
                    "exhaustive",
                    format!("chi_{k}{tuple:?} = {base} but chi_{k}{permuted:?} = {v}"),
                ));
            }
        }
    }
    Ok(CheckVerdict::pass("symmetry", &name, cases, "exhaustive"))
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Theorem-2 vanishing: chi_j = 0 for j above the degree. Exhaustive when
/// N^j fits the budget, seeded sampling otherwise.
pub fn vanishing_check(chi: &ClassFunction, j: usize, seed: u64) -> Result<CheckVerdict> {
    let degree = chi.degree_value().clone();
    let n = chi.group().order();
    let name = chi.group().name().to_string();
    if j > MAX_K {
        return Err(Error::SizeLimit(format!(
            "k-character arity capped at {MAX_K}"
        )));
    }
    let deg_rat = degree
        .as_rat()
        .filter(|r| r.is_integer())
        .ok_or_else(|| Error::InvalidParameter("character degree is not an integer".into()))?;
    if crate::cyclo::Rat::from_integer(crate::cyclo::Int::from(j as i64)) <= *deg_rat {
        return Err(Error::InvalidParameter(format!(
            "vanishing holds above the degree: need j > {deg_rat}, got {j}"
        )));
    }
    let space = (n as u64).pow(j as u32);
    let mut engine = KcharEngine::new(chi);
    if space <= EXHAUSTIVE_TUPLE_BOUND {
        for tuple in all_tuples(n, j) {
            let v = engine.eval_transient(&tuple)?;
            if !v.is_zero() {
                return Ok(CheckVerdict::fail(
                    "vanishing",
                    &name,
                    space,
                    "exhaustive",
                    format!("chi_{j}{tuple:?} = {v}, expected 0 (degree {degree})"),
                ));
            }
        }
        Ok(CheckVerdict::pass("vanishing", &name, space, "exhaustive"))
    } else {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let samples = 10_000u64;
        for _ in 0..samples {
            let tuple: Vec<usize> = (0..j).map(|_| rng.gen_range(0..n)).collect();
            let v = engine.eval_transient(&tuple)?;
            if !v.is_zero() {
                return Ok(CheckVerdict::fail(
                    "vanishing",
                    &name,
                    samples,
                    &format!("sampled(seed={seed})"),
                    format!("chi_{j}{tuple:?} = {v}, expected 0"),
                ));
            }
        }
        Ok(CheckVerdict::pass(
            "vanishing",
            &name,
            samples,
            &format!("sampled(seed={seed})"),
        ))
    }
}

/// Definition equivalence: the recursion agrees with the signed cyclic sum on
/// every tuple of arity <= k_max.
pub fn kchar_equivalence_check(chi: &ClassFunction, k_max: usize) -> Result<CheckVerdict> {
    let n = chi.group().order();
    let name = chi.group().name().to_string();
    let mut cases = 0u64;
    for k in 1..=k_max {
        if (n as u64).pow(k as u32) > EXHAUSTIVE_TUPLE_BOUND {
            return Err(Error::SizeLimit(format!(
                "equivalence scan over N^{k} tuples exceeds the exhaustive budget"
            )));
        }
        let mut engine = KcharEngine::new(chi);
        for tuple in all_tuples(n, k) {
            cases += 1;
            let a = engine.eval_transient(&tuple)?;
            let b = kchar_cyclic(chi, &tuple)?;
            if a != b {
                return Ok(CheckVerdict::fail(
                    "equivalence",
                    &name,
                    cases,
                    "exhaustive",
                    format!("recursion {a} != cyclic sum {b} at {tuple:?}"),
                ));
            }
        }
    }
    Ok(CheckVerdict::pass(
        "equivalence",
        &name,
        cases,
        "exhaustive",
    ))
}

/// chi_2 and chi_3 match their explicit closed forms on all pairs/triples:
/// chi_2(A,B) = chi(A)chi(B) - chi(AB) and the six-term chi_3 expression.
pub fn explicit_formula_check(chi: &ClassFunction) -> Result<CheckVerdict> {
    let g = chi.group().clone();
    let n = g.order();
    let name = g.name().to_string();
    let mut engine = KcharEngine::new(chi);
    let mut cases = 0u64;
    for a in 0..n {
        for b in 0..n {
            cases += 1;
            let direct = chi.value(a) * chi.value(b) - chi.value(g.mul(a, b)).clone();
            let rec = engine.eval(&[a, b])?;
            if rec != direct {
                return Ok(CheckVerdict::fail(
                    "explicit-formulas",
                    &name,
                    cases,
                    "exhaustive",
                    format!("chi_2({a},{b}): recursion {rec} != formula {direct}"),
                ));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                cases += 1;
                let direct = chi.value(a) * chi.value(b) * chi.value(c)
                    - chi.value(a) * chi.value(g.mul(b, c))
                    - chi.value(b) * chi.value(g.mul(a, c))
                    - chi.value(c) * chi.value(g.mul(a, b))
                    + chi.value(g.mul(g.mul(a, b), c)).clone()
                    + chi.value(g.mul(g.mul(a, c), b)).clone();
                let rec = engine.eval(&[a, b, c])?;
                if rec != direct {
                    return Ok(CheckVerdict::fail(
                        "explicit-formulas",
                        &name,
                        cases,
                        "exhaustive",
                        format!("chi_3({a},{b},{c}): recursion {rec} != formula {direct}"),
                    ));
                }
            }
        }
    }
    Ok(CheckVerdict::pass(
        "explicit-formulas",
        &name,
        cases,
        "exhaustive",
    ))
}

/// The identity-reduction rule chi_{j+1}(e, h1..hj) = (n - j) chi_j(h1..hj)
/// for an irreducible character of degree n, exhaustively over G^j.
/// j = 0 reads as chi_1(e) = n.
pub fn identity_reduction_check(chi: &ClassFunction, j: usize) -> Result<CheckVerdict> {
    let n = chi.group().order();
    let name = chi.group().name().to_string();
    let degree = chi.degree_value().clone();
    if j == 0 {
        // base case of the rule: chi_1(e) = chi(e) = degree
        let lhs = kchar_recursive(chi, &[0])?;
        let pass = lhs == degree;
        return Ok(CheckVerdict {
            check: "identity-reduction".into(),
            group: name,
            pass,
            cases: 1,
            mode: "exhaustive".into(),
            failure: (!pass).then(|| format!("chi_1(e) = {lhs}, degree {degree}")),
        });
    }
    if (n as u64).pow(j as u32) > EXHAUSTIVE_TUPLE_BOUND {
        return Err(Error::SizeLimit(format!(
            "identity-reduction scan over N^{j} tuples exceeds the exhaustive budget"
        )));
    }
    // (n - j) as an exact scalar; the degree is a rational integer
    let deg_int = degree
        .as_rat()
        .and_then(|r| {
            if r.is_integer() {
                Some(r.numer().clone())
            } else {
                None
            }
        })
        .ok_or_else(|| Error::InvalidParameter("character degree is not an integer".into()))?;
    let factor = Cyclo::from_rat(crate::cyclo::Rat::from_integer(deg_int - j as i64));
    let mut engine = KcharEngine::new(chi);
    let mut cases = 0u64;
    for tuple in all_tuples(n, j) {
        cases += 1;
        let mut extended = Vec::with_capacity(j + 1);
        extended.push(0usize);
        extended.extend_from_slice(&tuple);
        let lhs = engine.eval_transient(&extended)?;
        let rhs = &factor * &engine.eval(&tuple)?;
        if lhs != rhs {
            return Ok(CheckVerdict::fail(
                "identity-reduction",
                &name,
                cases,
                "exhaustive",
                format!("chi_{}(e,{tuple:?}) = {lhs}, expected {rhs}", j + 1),
            ));
        }
    }
    Ok(CheckVerdict::pass(
        "identity-reduction",
        &name,
        cases,
        "exhaustive",
    ))
}
