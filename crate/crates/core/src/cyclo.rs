//! Exact cyclotomic-field arithmetic.
//!
//! A [`Cyclo`] is an element of Q(zeta_m) stored as rational coordinates in
//! the power basis `1, zeta, ..., zeta^(phi(m)-1)` modulo the m-th cyclotomic
//! polynomial. Every public constructor and operation returns a *canonical*
//! value: coordinates reduced mod Phi_m and the conductor lowered to the
//! smallest m' | m whose field contains the value. Canonical form makes
//! equality a plain field-by-field comparison, so rationals always compare
//! equal regardless of which conductor they were computed in.
//!
//! All verification arithmetic in this crate is exact; the only floating
//! point here is [`Cyclo::embed_complex`], which exists for display.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::integer::lcm;
use num::{BigInt, BigRational};
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conductor guard: reduction tables are O(m * phi(m)) rationals, and the
/// workbench never needs roots of unity past the group-order scale.
pub const MAX_CONDUCTOR: u64 = 1024;

/// Exact unbounded rational scalar.
pub type Rat = BigRational;

/// Unbounded integer.
pub type Int = BigInt;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Euler totient, by trial-division factorization (conductors are small).
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
    ds.sort_unstable();
    ds
}

// ---------------------------------------------------------------------------
// dense univariate helpers over Rat (private); index = degree
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of a by b (b non-zero leading coefficient).
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() <= db {
        return (vec![Rat::zero()], rem);
    }
    let mut quo = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db && !(rem.len() == 1 && rem[0].is_zero()) {
        let dr = rem.len() - 1;
        let c = &rem[dr] / &lead;
        quo[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[dr - db + i] -= t;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quo);
    (quo, rem)
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g the monic gcd.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::one()];
    let mut s1 = vec![Rat::zero()];
    let mut t0 = vec![Rat::zero()];
    let mut t1 = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let qt = poly_mul(&q, &t1);
        let new_s = poly_sub(&s0, &qs);
        let new_t = poly_sub(&t0, &qt);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    // normalize to monic gcd
    let lead = r0.last().unwrap().clone();
    if !lead.is_one() {
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c /= lead.clone();
        }
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// m-th cyclotomic polynomial, dense monic coefficients (index = degree).
/// Computed as (x^m - 1) divided by the cyclotomic polynomials of the
/// proper divisors of m.
fn cyclotomic_poly(m: u64) -> Vec<Rat> {
    let mut cache: HashMap<u64, Vec<Rat>> = HashMap::new();
    for d in divisors(m) {
        let mut num = vec![Rat::zero(); d as usize + 1];
        num[0] = -Rat::one();
        num[d as usize] = Rat::one();
        let mut q = num;
        for e in divisors(d) {
            if e < d {
                let (quo, rem) = poly_divmod(&q, &cache[&e]);
                debug_assert!(rem.iter().all(Zero::is_zero));
                q = quo;
            }
        }
        cache.insert(d, q);
    }
    cache.remove(&m).unwrap()
}

// ---------------------------------------------------------------------------
// per-conductor reduction tables
// ---------------------------------------------------------------------------

struct Tower {
    phi: usize,
    /// pow[j] = coordinates of zeta^j in the power basis, j = 0..=max_pow.
    pow: Vec<Vec<Rat>>,
}

impl Tower {
    fn new(m: u64) -> Tower {
        let cp = cyclotomic_poly(m);
        let f = cp.len() - 1;
        let max_pow = (m as usize).max(2 * f).max(2);
        let mut pow: Vec<Vec<Rat>> = Vec::with_capacity(max_pow + 1);
        for j in 0..f {
            let mut v = vec![Rat::zero(); f];
            v[j] = Rat::one();
            pow.push(v);
        }
        // zeta^f = -(c_0 + c_1 zeta + ... + c_{f-1} zeta^{f-1})
        let top: Vec<Rat> = cp[..f].iter().map(|c| -c.clone()).collect();
        pow.push(top.clone());
        for _ in f + 1..=max_pow {
            let prev = pow.last().unwrap();
            let carry = prev[f - 1].clone();
            let mut next = vec![Rat::zero(); f];
            for i in 1..f {
                next[i] = prev[i - 1].clone();
            }
            if !carry.is_zero() {
                for i in 0..f {
                    next[i] += &carry * &top[i];
                }
            }
            pow.push(next);
        }
        Tower { phi: f, pow }
    }

    fn phi_poly(&self) -> Vec<Rat> {
        // reconstruct monic Phi from pow[phi]: zeta^phi = -sum c_i zeta^i
        let f = self.phi;
        let mut cp = vec![Rat::zero(); f + 1];
        for i in 0..f {
            cp[i] = -self.pow[f][i].clone();
        }
        cp[f] = Rat::one();
        cp
    }
}

fn tower(m: u64) -> Arc<Tower> {
    static TOWERS: OnceLock<Mutex<HashMap<u64, Arc<Tower>>>> = OnceLock::new();
    let cache = TOWERS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(m)
        .or_insert_with(|| Arc::new(Tower::new(m)))
        .clone()
}

// ---------------------------------------------------------------------------
// Cyclo
// ---------------------------------------------------------------------------

/// An element of the cyclotomic field Q(zeta_m), in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    m: u64,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    /// Canonicalizing constructor from dense coordinates at conductor m
    /// (any length; reduced mod Phi_m, then the conductor is minimized).
    fn make(m: u64, dense: Vec<Rat>) -> Cyclo {
        debug_assert!(m >= 1);
        if m == 1 {
            let c = dense.into_iter().next().unwrap_or_else(Rat::zero);
            return Cyclo {
                m: 1,
                coeffs: vec![c],
            };
        }
        let tw = tower(m);
        let f = tw.phi;
        let mut v = dense;
        // fold exponents past m-1 first (zeta^m = 1), so arbitrary-length
        // inputs stay inside the reduction table
        if v.len() > m as usize {
            let mut folded = vec![Rat::zero(); m as usize];
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    folded[j % m as usize] += c;
                }
            }
            v = folded;
        }
        if v.len() < f {
            v.resize(f, Rat::zero());
        }
        for j in (f..v.len()).rev() {
            if v[j].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[j], Rat::zero());
            for (i, p) in tw.pow[j].iter().enumerate() {
                if !p.is_zero() {
                    v[i] += &c * p;
                }
            }
        }
        v.truncate(f);
        Self::normalize_conductor(m, v, &tw)
    }

    fn normalize_conductor(m: u64, coeffs: Vec<Rat>, tw: &Tower) -> Cyclo {
        if coeffs[1..].iter().all(Zero::is_zero) {
            return Cyclo {
                m: 1,
                coeffs: vec![coeffs.into_iter().next().unwrap()],
            };
        }
        for d in divisors(m) {
            if d <= 2 || d == m {
                continue; // spans of conductors 1 and 2 are the rationals
            }
            if let Some(sub) = solve_in_subfield(tw, m, d, &coeffs) {
                return Cyclo { m: d, coeffs: sub };
            }
        }
        Cyclo { m, coeffs }
    }

    pub fn zero() -> Cyclo {
        Cyclo {
            m: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Cyclo {
        Cyclo {
            m: 1,
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_rat(r: Rat) -> Cyclo {
        Cyclo {
            m: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Cyclo {
        Self::from_rat(rat_int(n))
    }

    /// zeta_m^k (k may be negative; exponents are taken mod m).
    pub fn zeta(m: u64, k: i64) -> Result<Cyclo> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "zeta: conductor must be positive".into(),
            ));
        }
        if m > MAX_CONDUCTOR {
            return Err(Error::SizeLimit(format!(
                "conductor {m} exceeds the cap {MAX_CONDUCTOR}"
            )));
        }
        let k = k.rem_euclid(m as i64) as usize;
        if m == 1 {
            return Ok(Cyclo::one());
        }
        let tw = tower(m);
        Ok(Self::make(m, tw.pow[k].clone()))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.m == 1
    }

    /// The value as a rational, when the conductor is 1.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.m == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn lift_dense(&self, big_m: u64) -> Vec<Rat> {
        let stride = (big_m / self.m) as usize;
        let tw = tower(big_m);
        let f = tw.phi;
        let mut out = vec![Rat::zero(); f];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = i * stride;
            for (t, p) in tw.pow[e].iter().enumerate() {
                if !p.is_zero() {
                    out[t] += c * p;
                }
            }
        }
        out
    }

    fn binop(&self, other: &Cyclo, f: impl Fn(Vec<Rat>, Vec<Rat>) -> Vec<Rat>) -> Cyclo {
        let m = lcm(self.m, other.m);
        let a = if self.m == m {
            self.coeffs.clone()
        } else {
            self.lift_dense(m)
        };
        let b = if other.m == m {
            other.coeffs.clone()
        } else {
            other.lift_dense(m)
        };
        Cyclo::make(m, f(a, b))
    }

    /// Multiplicative inverse; error on zero.
    pub fn checked_inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(Cyclo {
                m: 1,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let tw = tower(self.m);
        let phi = tw.phi_poly();
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (g, u, _) = poly_ext_gcd(&a, &phi);
        debug_assert!(g.len() == 1 && g[0].is_one(), "Phi_m is irreducible");
        Ok(Cyclo::make(self.m, u))
    }

    /// Complex conjugate: zeta_m -> zeta_m^(-1).
    pub fn conj(&self) -> Cyclo {
        if self.m <= 2 {
            return self.clone();
        }
        let m = self.m;
        let tw = tower(m);
        let mut dense = vec![Rat::zero(); tw.phi];
        let mut extra: Vec<(usize, Rat)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (m as usize - i) % m as usize;
            extra.push((e, c.clone()));
        }
        let max_e = extra.iter().map(|(e, _)| *e).max().unwrap_or(0);
        dense.resize(dense.len().max(max_e + 1), Rat::zero());
        for (e, c) in extra {
            dense[e] += c;
        }
        Cyclo::make(m, dense)
    }

    /// Integer power by repeated multiplication (exponents stay small here).
    pub fn pow(&self, k: u64) -> Cyclo {
        let mut acc = Cyclo::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Numerical embedding zeta_m -> exp(2*pi*i/m). Display only.
    pub fn embed_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = rat_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / (self.m as f64);
            re += x * ang.cos();
            im += x * ang.sin();
        }
        (re, im)
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // good enough for display-scale magnitudes
    let nf: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

/// Try to express `target` (coordinates at conductor m) in the power basis of
/// the subfield Q(zeta_d), d | m. Exact Gaussian elimination; the columns are
/// linearly independent, so a consistent system has a unique solution.
fn solve_in_subfield(tw: &Tower, m: u64, d: u64, target: &[Rat]) -> Option<Vec<Rat>> {
    let f = tw.phi;
    // fd == f happens when the fields coincide (e.g. 3 | 6); the solve decides.
    let fd = euler_phi(d) as usize;
    let stride = (m / d) as usize;
    // augmented matrix [B | target], B is f x fd
    let mut aug: Vec<Vec<Rat>> = (0..f)
        .map(|row| {
            let mut r: Vec<Rat> = (0..fd).map(|j| tw.pow[j * stride][row].clone()).collect();
            r.push(target[row].clone());
            r
        })
        .collect();
    let mut pivot_row = 0usize;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..fd {
        let Some(p) = (pivot_row..f).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][col].recip();
        for c in col..=fd {
            aug[pivot_row][c] *= &inv;
        }
        for r in 0..f {
            if r != pivot_row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=fd {
                    let t = &aug[pivot_row][c] * &factor;
                    aug[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == f {
            break;
        }
    }
    // consistency: rows below the pivots must have zero RHS
    for r in pivot_row..f {
        if !aug[r][fd].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); fd];
    for (row, &col) in pivots.iter().enumerate() {
        sol[col] = aug[row][fd].clone();
    }
    Some(sol)
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn is_zero(&self) -> bool {
        self.m == 1 && self.coeffs[0].is_zero()
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_one(&self) -> bool {
        self.m == 1 && self.coeffs[0].is_one()
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        &self + &rhs
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if self.m == 1 && rhs.m == 1 {
            return Cyclo {
                m: 1,
                coeffs: vec![&self.coeffs[0] + &rhs.coeffs[0]],
            };
        }
        self.binop(rhs, |a, b| {
            let mut out = a;
            for (i, c) in b.into_iter().enumerate() {
                out[i] += c;
            }
            out
        })
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        &self - &rhs
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        if self.m == 1 && rhs.m == 1 {
            return Cyclo {
                m: 1,
                coeffs: vec![&self.coeffs[0] - &rhs.coeffs[0]],
            };
        }
        self.binop(rhs, |a, b| {
            let mut out = a;
            for (i, c) in b.into_iter().enumerate() {
                out[i] -= c;
            }
            out
        })
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        &self * &rhs
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.m == 1 && rhs.m == 1 {
            return Cyclo {
                m: 1,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero();
        }
        let m = lcm(self.m, rhs.m);
        let a = if self.m == m {
            self.coeffs.clone()
        } else {
            self.lift_dense(m)
        };
        let b = if rhs.m == m {
            rhs.coeffs.clone()
        } else {
            rhs.lift_dense(m)
        };
        let mut dense = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    dense[i + j] += ai * bj;
                }
            }
        }
        Cyclo::make(m, dense)
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            m: self.m,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -self.clone()
    }
}

impl Div for Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: Cyclo) -> Cyclo {
        &self / &rhs
    }
}

impl Div for &Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: &Cyclo) -> Cyclo {
        if self.m == 1 && rhs.m == 1 {
            assert!(!rhs.coeffs[0].is_zero(), "division by zero Cyclo");
            return Cyclo {
                m: 1,
                coeffs: vec![&self.coeffs[0] / &rhs.coeffs[0]],
            };
        }
        self * &rhs.checked_inv().expect("division by zero Cyclo")
    }
}

macro_rules! mixed_ref_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                self.$method(&rhs)
            }
        }
    )*};
}

mixed_ref_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl FromPrimitive for Cyclo {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Cyclo::from_int(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Cyclo::from_rat(Rat::from_integer(Int::from(n))))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "z{}", self.m)?;
                } else {
                    write!(f, "z{}^{}", self.m, i)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON encoding: {"m": int, "coeffs": [["num","den"], ...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    m: u64,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CycloRepr {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = CycloRepr::deserialize(d)?;
        if repr.m == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if repr.m > MAX_CONDUCTOR {
            return Err(D::Error::custom(format!(
                "conductor {} exceeds the cap {MAX_CONDUCTOR}",
                repr.m
            )));
        }
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for [n, dnm] in &repr.coeffs {
            let num = Int::from_str(n).map_err(D::Error::custom)?;
            let den = Int::from_str(dnm).map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(Rat::new(num, den));
        }
        Ok(Cyclo::make(repr.m, coeffs))
    }
}
