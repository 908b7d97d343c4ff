//! Markov-triple arithmetic: Vieta moves, tree enumeration, uniqueness
//! scanning, and mod-p solution sets.
//!
//! Triples are stored sorted ascending as the canonical representative of
//! their permutation orbit, over unbounded integers — the maxima grow doubly
//! exponentially along tree branches.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::cyclo::Int;
use crate::error::{Error, Result};

/// A positive solution of x^2 + y^2 + z^2 = 3xyz, stored with x <= y <= z.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovTriple {
    x: Int,
    y: Int,
    z: Int,
}

impl std::fmt::Debug for MarkovTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl std::fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {}", self.x, self.y, self.z)
    }
}

impl Serialize for MarkovTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MarkovTriple", 3)?;
        st.serialize_field("x", &self.x.to_string())?;
        st.serialize_field("y", &self.y.to_string())?;
        st.serialize_field("z", &self.z.to_string())?;
        st.end()
    }
}

/// Exact predicate for the Markov equation.
pub fn is_markov(x: &Int, y: &Int, z: &Int) -> bool {
    x * x + y * y + z * z == 3 * (x * y * z)
}

impl MarkovTriple {
    /// Sorts, then validates positivity and the equation.
    pub fn new(x: Int, y: Int, z: Int) -> Result<MarkovTriple> {
        let mut v = [x, y, z];
        v.sort();
        let [x, y, z] = v;
        if x <= Int::zero() {
            return Err(Error::InvalidParameter(
                "Markov triples have positive coordinates".into(),
            ));
        }
        if !is_markov(&x, &y, &z) {
            return Err(Error::InvalidParameter(format!(
                "({x}, {y}, {z}) does not satisfy the Markov equation"
            )));
        }
        Ok(MarkovTriple { x, y, z })
    }

    pub fn new_u64(x: u64, y: u64, z: u64) -> Result<MarkovTriple> {
        Self::new(Int::from(x), Int::from(y), Int::from(z))
    }

    /// Skips validation; only for exercising failure detectors in tests.
    pub fn new_unchecked(x: Int, y: Int, z: Int) -> MarkovTriple {
        let mut v = [x, y, z];
        v.sort();
        let [x, y, z] = v;
        MarkovTriple { x, y, z }
    }

    pub fn root() -> MarkovTriple {
        MarkovTriple {
            x: Int::one(),
            y: Int::one(),
            z: Int::one(),
        }
    }

    pub fn x(&self) -> &Int {
        &self.x
    }

    pub fn y(&self) -> &Int {
        &self.y
    }

    pub fn z(&self) -> &Int {
        &self.z
    }

    /// Vieta involution at coordinate `pos` (1, 2 or 3 = x, y, z): replaces
    /// c by 3*(product of the other two) - c and re-sorts.
    pub fn vieta(&self, pos: u8) -> Result<MarkovTriple> {
        let (keep_a, keep_b, c) = match pos {
            1 => (&self.y, &self.z, &self.x),
            2 => (&self.x, &self.z, &self.y),
            3 => (&self.x, &self.y, &self.z),
            _ => {
                return Err(Error::InvalidParameter(
                    "vieta position must be 1, 2 or 3".into(),
                ))
            }
        };
        let new_c = 3 * (keep_a * keep_b) - c;
        if new_c <= Int::zero() {
            // impossible for valid triples; kept as a tripwire
            return Err(Error::Internal(format!(
                "vieta move produced non-positive coordinate {new_c}"
            )));
        }
        debug_assert!(is_markov(keep_a, keep_b, &new_c));
        Ok(MarkovTriple::new_unchecked(
            keep_a.clone(),
            keep_b.clone(),
            new_c,
        ))
    }

    /// The three Vieta neighbors.
    pub fn neighbors(&self) -> Vec<MarkovTriple> {
        (1..=3)
            .map(|p| self.vieta(p).expect("valid triple"))
            .collect()
    }
}

/// Breadth-first closure of {(1,1,1)} under Vieta moves, pruning triples
/// whose maximum exceeds `max_z`; output deduplicated by canonical form and
/// sorted by (z, y, x).
pub fn enumerate_tree(max_z: &Int) -> Vec<MarkovTriple> {
    let mut seen: HashSet<MarkovTriple> = HashSet::new();
    let mut queue: VecDeque<MarkovTriple> = VecDeque::new();
    let root = MarkovTriple::root();
    if root.z > *max_z {
        return Vec::new();
    }
    seen.insert(root.clone());
    queue.push_back(root);
    while let Some(t) = queue.pop_front() {
        for next in t.neighbors() {
            if next.z > *max_z || seen.contains(&next) {
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    let mut out: Vec<MarkovTriple> = seen.into_iter().collect();
    out.sort_by(|a, b| (&a.z, &a.y, &a.x).cmp(&(&b.z, &b.y, &b.x)));
    out
}

pub fn enumerate_tree_u64(max_z: u64) -> Vec<MarkovTriple> {
    enumerate_tree(&Int::from(max_z))
}

/// The distinct Markov numbers (all coordinates) appearing in a triple list.
pub fn markov_numbers(triples: &[MarkovTriple]) -> BTreeSet<Int> {
    let mut out = BTreeSet::new();
    for t in triples {
        out.insert(t.x.clone());
        out.insert(t.y.clone());
        out.insert(t.z.clone());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessVerdict {
    pub max_z: String,
    pub triples_scanned: usize,
    pub collision: Option<(String, String)>,
    pub pass: bool,
}

/// Finds two distinct triples sharing the same maximum, if any.
pub fn find_max_collision(triples: &[MarkovTriple]) -> Option<(&MarkovTriple, &MarkovTriple)> {
    // triples arrive sorted by (z, y, x) from enumerate_tree; be defensive
    // about order anyway
    let mut sorted: Vec<&MarkovTriple> = triples.iter().collect();
    sorted.sort_by(|a, b| a.z.cmp(&b.z));
    sorted
        .windows(2)
        .find(|w| w[0].z == w[1].z && w[0] != w[1])
        .map(|w| (w[0], w[1]))
}

/// Scans the tree up to `max_z` for two distinct triples with the same
/// maximal element (none expected; a hit would contradict the uniqueness
/// conjecture for this range).
pub fn uniqueness_scan(max_z: &Int) -> UniquenessVerdict {
    let triples = enumerate_tree(max_z);
    let collision = find_max_collision(&triples);
    UniquenessVerdict {
        max_z: max_z.to_string(),
        triples_scanned: triples.len(),
        collision: collision.map(|(a, b)| (a.to_string(), b.to_string())),
        pass: collision.is_none(),
    }
}

// ---------------------------------------------------------------------------
// mod p
// ---------------------------------------------------------------------------

/// Brute-force guard: the solution scan is p^3.
pub const MAX_PRIME: u64 = 997;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::SizeLimit(format!(
            "mod-p scans are brute force (p^3) and capped at p <= {MAX_PRIME}"
        )));
    }
    Ok(())
}

/// All residue triples != (0,0,0) with x^2+y^2+z^2 = 3xyz (mod p).
pub fn modp_solutions(p: u64) -> Result<Vec<(u64, u64, u64)>> {
    check_prime(p)?;
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let xy = (x * y) % p;
            let head = (x * x + y * y) % p;
            for z in 0..p {
                if x == 0 && y == 0 && z == 0 {
                    continue;
                }
                let lhs = (head + z * z) % p;
                let rhs = (3 * xy % p) * z % p;
                if lhs == rhs {
                    out.push((x, y, z));
                }
            }
        }
    }
    Ok(out)
}

/// Closure of {(1,1,1)} under the three Vieta moves and coordinate
/// permutations, mod p.
pub fn modp_orbit(p: u64) -> Result<HashSet<(u64, u64, u64)>> {
    check_prime(p)?;
    let mut seen: HashSet<(u64, u64, u64)> = HashSet::new();
    let mut queue: VecDeque<(u64, u64, u64)> = VecDeque::new();
    let start = (1 % p, 1 % p, 1 % p);
    seen.insert(start);
    queue.push_back(start);
    while let Some((x, y, z)) = queue.pop_front() {
        let push = |t: (u64, u64, u64), seen: &mut HashSet<_>, queue: &mut VecDeque<_>| {
            if seen.insert(t) {
                queue.push_back(t);
            }
        };
        let vx = ((3 * y % p) * z % p + p - x % p) % p;
        let vy = ((3 * x % p) * z % p + p - y % p) % p;
        let vz = ((3 * x % p) * y % p + p - z % p) % p;
        for t in [
            (vx, y, z),
            (x, vy, z),
            (x, y, vz),
            (x, z, y),
            (y, x, z),
            (y, z, x),
            (z, x, y),
            (z, y, x),
        ] {
            push(t, &mut seen, &mut queue);
        }
    }
    Ok(seen)
}

/// Mod-p comparison report. `solutions` counts everything except (0,0,0);
/// `solutions_nonzero_coords` additionally drops triples containing any zero
/// coordinate. Equality is judged against the exclude-origin-only reading,
/// and subset containment of the orbit in the solution set is the
/// theorem-level invariant.
#[derive(Clone, Debug, Serialize)]
pub struct StrongApproxReport {
    pub p: u64,
    pub solutions: usize,
    pub solutions_nonzero_coords: usize,
    pub orbit: usize,
    pub equal: bool,
    pub orbit_subset_of_solutions: bool,
    pub policy: String,
}

pub fn strong_approx_check(p: u64) -> Result<StrongApproxReport> {
    let sols = modp_solutions(p)?;
    let orbit = modp_orbit(p)?;
    let sol_set: HashSet<(u64, u64, u64)> = sols.iter().copied().collect();
    let nonzero_coords = sols
        .iter()
        .filter(|(x, y, z)| *x != 0 && *y != 0 && *z != 0)
        .count();
    let subset = orbit.iter().all(|t| sol_set.contains(t));
    let equal = subset && orbit.len() == sol_set.len();
    Ok(StrongApproxReport {
        p,
        solutions: sol_set.len(),
        solutions_nonzero_coords: nonzero_coords,
        orbit: orbit.len(),
        equal,
        orbit_subset_of_solutions: subset,
        policy: "nonzero means excluding (0,0,0) only".to_string(),
    })
}

/// All residue solutions of x^2 + y^2 + z^2 - 2xyz = 1 (mod p).
pub fn mordell_modp_solutions(p: u64) -> Result<Vec<(u64, u64, u64)>> {
    check_prime(p)?;
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let xy2 = (2 * x % p) * y % p;
            let head = (x * x + y * y) % p;
            for z in 0..p {
                let lhs = (head + z * z + p - (xy2 * z % p)) % p;
                if lhs % p == 1 % p {
                    out.push((x, y, z));
                }
            }
        }
    }
    Ok(out)
}
