//! Finite groups as explicit multiplication tables.
//!
//! Elements are indices 0..N-1 with the identity fixed at index 0. Every
//! constructor and loader funnels through the same validator, so a value of
//! type [`FiniteGroup`] always satisfies the four table axioms: identity at
//! index 0, associativity, two-sided inverses, Latin-square rows and columns.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Construction guard: determinant work imposes stricter caps downstream,
/// this is just the desk-scale bound for holding a table at all.
pub const MAX_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// Conjugacy classes, ordered by minimal member index (identity class first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates the table axioms and computes the inverse table.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let name = name.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::validation("order", "empty multiplication table"));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit(format!(
                "group order {n} exceeds the construction cap {MAX_ORDER}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::validation(
                    "shape",
                    format!("row {i} has length {} in an order-{n} table", row.len()),
                ));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::validation(
                    "range",
                    format!("row {i} contains out-of-range index {bad}"),
                ));
            }
        }
        for j in 0..n {
            if table[0][j] != j {
                return Err(Error::validation(
                    "identity",
                    format!(
                        "table[0][{j}] = {}, index 0 is not a left identity",
                        table[0][j]
                    ),
                ));
            }
            if table[j][0] != j {
                return Err(Error::validation(
                    "identity",
                    format!(
                        "table[{j}][0] = {}, index 0 is not a right identity",
                        table[j][0]
                    ),
                ));
            }
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in row {
                if seen[v] {
                    return Err(Error::validation(
                        "latin square",
                        format!("row {i} repeats entry {v}"),
                    ));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                let v = row[j];
                if seen[v] {
                    return Err(Error::validation(
                        "latin square",
                        format!("column {j} repeats entry {v}"),
                    ));
                }
                seen[v] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::validation(
                            "associativity",
                            format!("(g{i}*g{j})*g{k} != g{i}*(g{j}*g{k})"),
                        ));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i][j] == 0 && table[j][i] == 0)
                .ok_or_else(|| {
                    Error::validation("inverse", format!("element {i} has no two-sided inverse"))
                })?;
            inv[i] = j;
        }
        Ok(FiniteGroup {
            name,
            order: n,
            table,
            inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Order of a single element.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// g raised to the k-th power.
    pub fn power(&self, g: usize, k: usize) -> usize {
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, g);
        }
        x
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Orbits of conjugation, deterministically ordered by minimal member.
    pub fn conjugacy_classes(&self) -> ConjClasses {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, x), self.inv(g)))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members);
        }
        ConjClasses { classes, class_of }
    }
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

/// Cyclic group Z_n.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cyclic group needs order >= 1".into(),
        ));
    }
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteGroup::from_table(format!("Z{n}"), table)
}

/// Dihedral group of order 2n: indices 0..n are rotations r^i, n..2n are s*r^i.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "dihedral group needs n >= 2".into(),
        ));
    }
    let order = 2 * n;
    let mut table = vec![vec![0usize; order]; order];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = (i + j) % n; // r^i r^j
            table[i][n + j] = n + (j + n - i) % n; // r^i (s r^j) = s r^(j-i)
            table[n + i][j] = n + (i + j) % n; // (s r^i) r^j = s r^(i+j)
            table[n + i][n + j] = (j + n - i) % n; // (s r^i)(s r^j) = r^(j-i)
        }
    }
    FiniteGroup::from_table(format!("D{n}"), table)
}

/// Symmetric group S_n for n <= 4, permutations enumerated in lexicographic
/// order (so the identity permutation is index 0). Product means "apply the
/// right factor first": (p*q)(x) = p(q(x)).
pub fn make_symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidParameter(
            "symmetric group supported for 1 <= n <= 4".into(),
        ));
    }
    let perms = permutations_lex(n);
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let order = perms.len();
    let mut table = vec![vec![0usize; order]; order];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
            table[i][j] = index_of(&composed);
        }
    }
    FiniteGroup::from_table(format!("S{n}"), table)
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Quaternion group Q8: indices 0..8 are 1, -1, i, -i, j, -j, k, -k.
pub fn make_quaternion() -> Result<FiniteGroup> {
    // element = (sign, axis) with axis 0 = scalar 1, 1 = i, 2 = j, 3 = k
    let decode = |e: usize| -> (i32, usize) { (if e % 2 == 0 { 1 } else { -1 }, e / 2) };
    let encode = |s: i32, axis: usize| -> usize { 2 * axis + usize::from(s < 0) };
    let quat_mul = |a: usize, b: usize| -> (i32, usize) {
        // sign, axis of the product of basis quaternions
        match (a, b) {
            (0, x) => (1, x),
            (x, 0) => (1, x),
            (1, 1) => (-1, 0),
            (2, 2) => (-1, 0),
            (3, 3) => (-1, 0),
            (1, 2) => (1, 3),
            (2, 1) => (-1, 3),
            (2, 3) => (1, 1),
            (3, 2) => (-1, 1),
            (3, 1) => (1, 2),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0usize; 8]; 8];
    for e in 0..8 {
        for f in 0..8 {
            let (sa, a) = decode(e);
            let (sb, b) = decode(f);
            let (sp, p) = quat_mul(a, b);
            table[e][f] = encode(sa * sb * sp, p);
        }
    }
    FiniteGroup::from_table("Q8", table)
}

/// Direct product G x H; element (g, h) gets index g*|H| + h.
pub fn make_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let ng = g.order();
    let nh = h.order();
    let order = ng * nh;
    if order > MAX_ORDER {
        return Err(Error::SizeLimit(format!(
            "product order {order} exceeds the construction cap {MAX_ORDER}"
        )));
    }
    let mut table = vec![vec![0usize; order]; order];
    for g1 in 0..ng {
        for h1 in 0..nh {
            for g2 in 0..ng {
                for h2 in 0..nh {
                    table[g1 * nh + h1][g2 * nh + h2] = g.mul(g1, g2) * nh + h.mul(h1, h2);
                }
            }
        }
    }
    FiniteGroup::from_table(format!("{}x{}", g.name(), h.name()), table)
}

/// Resolve a group by conventional name: Zn, Dn (order 2n), Sn (n <= 4),
/// Q8, V4 / Z2xZ2.
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    let norm = name.trim();
    let upper = norm.to_ascii_uppercase();
    if upper == "Q8" {
        return make_quaternion();
    }
    if upper == "V4" || upper == "Z2XZ2" {
        return make_product(&make_cyclic(2)?, &make_cyclic(2)?);
    }
    let (kind, rest) = upper.split_at(1);
    let n: usize = rest
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("unknown group name: {norm}")))?;
    match kind {
        "Z" | "C" => make_cyclic(n),
        "D" => make_dihedral(n),
        "S" => make_symmetric(n),
        _ => Err(Error::InvalidParameter(format!(
            "unknown group name: {norm}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// JSON file format: {"name": string, "order": N, "table": [[int;N];N]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GroupFile {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
}

pub fn save_group(g: &FiniteGroup, path: impl AsRef<Path>) -> Result<()> {
    let file = GroupFile {
        name: g.name().to_string(),
        order: g.order(),
        table: g.table().to_vec(),
    };
    let json = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, json)?;
    Ok(())
}

pub fn load_group(path: impl AsRef<Path>) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)?;
    load_group_str(&text)
}

pub fn load_group_str(text: &str) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(text)?;
    if file.table.len() != file.order {
        return Err(Error::validation(
            "order",
            format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            ),
        ));
    }
    FiniteGroup::from_table(file.name, file.table)
}
