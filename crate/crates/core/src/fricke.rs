//! Exact 2x2 matrix algebra and trace identities.
//!
//! Everything here is polynomial in matrix entries, so identities are checked
//! over exact rationals: the skein relation, the Fricke identity linking the
//! three traces to the commutator trace, the cubic trace surface with its
//! S / TS modular actions, the lift of Markov triples onto that surface, and
//! the six-term 2-character expression whose vanishing on 2x2 unimodular
//! matrices reproduces the Fricke identity. The only transcendental quantity
//! is [`boundary_length`], which is display-grade floating point.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{rat_int, Rat};
use crate::error::{Error, Result};
use crate::markov::MarkovTriple;
use crate::scalar::{FieldScalar, Scalar};

/// 2x2 matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2<T: Scalar> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            b: self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            c: self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            d: self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        }
    }

    pub fn tr(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_one()
    }

    /// Adjugate: the division-free inverse of a unimodular matrix.
    pub fn adjugate(&self) -> Self {
        Mat2 {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// Inverse of a unimodular matrix (det must be 1).
    pub fn inv_unimodular(&self) -> Result<Self> {
        if !self.is_unimodular() {
            return Err(Error::Precondition("matrix is not unimodular".into()));
        }
        Ok(self.adjugate())
    }
}

impl<T: FieldScalar> Mat2<T> {
    /// General inverse; error when singular.
    pub fn inv(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let adj = self.adjugate();
        Ok(Mat2 {
            a: adj.a / det.clone(),
            b: adj.b / det.clone(),
            c: adj.c / det.clone(),
            d: adj.d / det,
        })
    }
}

fn require_unimodular<T: Scalar>(m: &Mat2<T>, who: &str) -> Result<()> {
    if !m.is_unimodular() {
        return Err(Error::Precondition(format!(
            "{who}: input must have determinant 1"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verdicts
// ---------------------------------------------------------------------------

/// One checked equality with both sides rendered exactly.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Step {
    fn eq<T: Scalar>(name: &str, lhs: &T, rhs: &T) -> Step {
        Step {
            name: name.to_string(),
            lhs: format!("{lhs}"),
            rhs: format!("{rhs}"),
            pass: lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityVerdict {
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub steps: Vec<Step>,
    pub witness: Vec<String>,
}

fn mat_witness<T: Scalar>(m: &Mat2<T>) -> String {
    format!("[[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d)
}

/// tr(XY) + tr(X Y^-1) = tr X * tr Y for unimodular X, Y.
pub fn skein_check<T: Scalar>(x: &Mat2<T>, y: &Mat2<T>) -> Result<IdentityVerdict> {
    require_unimodular(x, "skein_check")?;
    require_unimodular(y, "skein_check")?;
    let lhs = x.mul(y).tr() + x.mul(&y.adjugate()).tr();
    let rhs = x.tr() * y.tr();
    Ok(IdentityVerdict {
        identity: "skein".to_string(),
        lhs: format!("{lhs}"),
        rhs: format!("{rhs}"),
        pass: lhs == rhs,
        steps: Vec::new(),
        witness: vec![mat_witness(x), mat_witness(y)],
    })
}

/// Trace coordinates of a pair: x = tr A, y = tr B, z = tr AB, and the
/// commutator trace j_c = tr(A B A^-1 B^-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTriple<T: Scalar> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub j_c: T,
}

pub fn fricke_traces<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> TraceTriple<T> {
    let commutator = a.mul(b).mul(&a.adjugate()).mul(&b.adjugate());
    TraceTriple {
        x: a.tr(),
        y: b.tr(),
        z: a.mul(b).tr(),
        j_c: commutator.tr(),
    }
}

/// The Fricke identity
/// (tr A)^2 + (tr B)^2 + (tr AB)^2 = tr A tr B tr AB + tr(A B A^-1 B^-1) + 2,
/// with the intermediate skein steps of its derivation exposed for
/// diagnosability.
pub fn fricke_check<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> Result<IdentityVerdict> {
    require_unimodular(a, "fricke_check")?;
    require_unimodular(b, "fricke_check")?;
    let ai = a.adjugate();
    let bi = b.adjugate();
    let c = a.mul(b);
    let x = a.tr();
    let y = b.tr();
    let z = c.tr();
    let j_c = c.mul(&ai).mul(&bi).tr();

    let aba_inv = a.mul(b).mul(&ai);
    let mut steps = Vec::new();
    // tr(ABA^-1 B) + tr(ABA^-1 B^-1) = tr(B)^2
    steps.push(Step::eq(
        "skein at X=ABA^-1, Y=B",
        &(aba_inv.mul(b).tr() + aba_inv.mul(&bi).tr()),
        &(y.clone() * y.clone()),
    ));
    // tr(AB A^-1 B) + tr(A^2) = tr(AB) tr(A^-1 B)
    steps.push(Step::eq(
        "skein at X=AB, Y=A^-1 B",
        &(c.mul(&ai.mul(b)).tr() + a.mul(a).tr()),
        &(c.tr() * ai.mul(b).tr()),
    ));
    // tr(A^-1 B) = tr A tr B - tr(AB)
    steps.push(Step::eq(
        "skein at X=B, Y=A",
        &ai.mul(b).tr(),
        &(x.clone() * y.clone() - z.clone()),
    ));
    // tr(A^2) = (tr A)^2 - 2
    steps.push(Step::eq(
        "power trace tr(A^2) = (tr A)^2 - 2",
        &a.mul(a).tr(),
        &(x.clone() * x.clone() - (T::one() + T::one())),
    ));

    let lhs = x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone();
    let rhs = x * y * z + j_c + T::one() + T::one();
    let pass = lhs == rhs && steps.iter().all(|s| s.pass);
    Ok(IdentityVerdict {
        identity: "fricke".to_string(),
        lhs: format!("{lhs}"),
        rhs: format!("{rhs}"),
        pass,
        steps,
        witness: vec![mat_witness(a), mat_witness(b)],
    })
}

/// x^2 + y^2 + z^2 - xyz - (j_c + 2): zero exactly on the trace surface.
pub fn surface_eval<T: Scalar>(x: &T, y: &T, z: &T, j_c: &T) -> T {
    x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone()
        - x.clone() * y.clone() * z.clone()
        - (j_c.clone() + T::one() + T::one())
}

/// x^2 + y^2 + z^2 - xyz: the punctured-torus (j_c = -2) surface.
pub fn markov_surface_eval<T: Scalar>(x: &T, y: &T, z: &T) -> T {
    x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone()
        - x.clone() * y.clone() * z.clone()
}

/// Rescale a Markov triple by 3 onto the punctured-torus surface.
pub fn markov_lift(t: &MarkovTriple) -> TraceTriple<Rat> {
    let three = rat_int(3);
    TraceTriple {
        x: Rat::from_integer(t.x().clone()) * three.clone(),
        y: Rat::from_integer(t.y().clone()) * three.clone(),
        z: Rat::from_integer(t.z().clone()) * three,
        j_c: rat_int(-2),
    }
}

/// S: (x, y, z) -> (y, x, xy - z); an involution preserving the surface.
pub fn action_s<T: Scalar>(t: &TraceTriple<T>) -> TraceTriple<T> {
    TraceTriple {
        x: t.y.clone(),
        y: t.x.clone(),
        z: t.x.clone() * t.y.clone() - t.z.clone(),
        j_c: t.j_c.clone(),
    }
}

/// TS: (x, y, z) -> (y, z, x); a 3-cycle preserving the surface.
pub fn action_ts<T: Scalar>(t: &TraceTriple<T>) -> TraceTriple<T> {
    TraceTriple {
        x: t.y.clone(),
        y: t.z.clone(),
        z: t.x.clone(),
        j_c: t.j_c.clone(),
    }
}

/// Geodesic boundary length 2*arcosh(-j_c/2) for j_c <= -2.
pub fn boundary_length(j_c: &Rat) -> Result<f64> {
    if *j_c > rat_int(-2) {
        return Err(Error::Domain(format!(
            "boundary length requires j_c <= -2 (got {j_c})"
        )));
    }
    let num: f64 = j_c.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = j_c.denom().to_string().parse().unwrap_or(f64::NAN);
    let t = -(num / den) / 2.0;
    Ok(2.0 * t.acosh())
}

/// The six-term 2-character sum at chi = tr evaluated on A = ab, B = a^-1,
/// C = b^-1. Checks that it vanishes exactly and that its closed form equals
/// minus the surface residual of (tr a, tr b, tr ab, tr commutator), which is
/// the Fricke identity rearranged.
pub fn chi3_bridge_check<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> Result<IdentityVerdict> {
    require_unimodular(a, "chi3_bridge_check")?;
    require_unimodular(b, "chi3_bridge_check")?;
    let ai = a.adjugate();
    let bi = b.adjugate();
    let big_a = a.mul(b);
    let big_b = ai.clone();
    let big_c = bi.clone();

    let chi = |m: &Mat2<T>| m.tr();
    let chi3 = chi(&big_a) * chi(&big_b) * chi(&big_c)
        - chi(&big_a) * chi(&big_b.mul(&big_c))
        - chi(&big_b) * chi(&big_a.mul(&big_c))
        - chi(&big_c) * chi(&big_a.mul(&big_b))
        + chi(&big_a.mul(&big_b).mul(&big_c))
        + chi(&big_a.mul(&big_c).mul(&big_b));

    let t = fricke_traces(a, b);
    let neg_surface = -surface_eval(&t.x, &t.y, &t.z, &t.j_c);

    let mut steps = Vec::new();
    steps.push(Step::eq("tr(a^-1) = tr a", &ai.tr(), &a.tr()));
    steps.push(Step::eq("tr(b^-1) = tr b", &bi.tr(), &b.tr()));
    steps.push(Step::eq(
        "tr(a^-1 b^-1) = tr(ab)",
        &ai.mul(&bi).tr(),
        &a.mul(b).tr(),
    ));
    steps.push(Step::eq(
        "tr(a b a^-1) = tr b",
        &a.mul(b).mul(&ai).tr(),
        &b.tr(),
    ));
    steps.push(Step::eq(
        "chi_3 equals the rearranged Fricke identity",
        &chi3,
        &neg_surface,
    ));

    let pass = chi3.is_zero() && steps.iter().all(|s| s.pass);
    Ok(IdentityVerdict {
        identity: "chi3-bridge".to_string(),
        lhs: format!("{chi3}"),
        rhs: "0".to_string(),
        pass,
        steps,
        witness: vec![mat_witness(a), mat_witness(b)],
    })
}

/// Deterministic product of `length` generators drawn uniformly from
/// {L, L^-1, R, R^-1}, L = [[1,1],[0,1]], R = [[1,0],[1,1]].
pub fn random_sl2z_word(length: usize, seed: u64) -> Mat2<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word_with_rng(length, &mut rng)
}

pub fn random_word_with_rng(length: usize, rng: &mut impl Rng) -> Mat2<Rat> {
    let l = Mat2::new(rat_int(1), rat_int(1), rat_int(0), rat_int(1));
    let r = Mat2::new(rat_int(1), rat_int(0), rat_int(1), rat_int(1));
    let gens = [l.clone(), l.adjugate(), r.clone(), r.adjugate()];
    let mut acc: Mat2<Rat> = Mat2::identity();
    for _ in 0..length {
        let pick = rng.gen_range(0..4usize);
        acc = acc.mul(&gens[pick]);
    }
    acc
}

/// Random rational in [-10, 10] with denominator in 1..=4, for surface
/// action sampling.
pub fn random_rat(rng: &mut impl Rng) -> Rat {
    use num::BigInt;
    let num = rng.gen_range(-40i64..=40);
    let den = rng.gen_range(1i64..=4);
    Rat::new(BigInt::from(num), BigInt::from(den))
}
