//! Root systems of the simple types, lowest roots, and extended Cartan data.
//!
//! Roots are integer vectors in the basis of simple roots. Cartan matrices use
//! the convention `a[i][j] = <alpha_j, alpha_i^vee>`: row `i` is indexed by the
//! coroot, so that `a[i][j] = -max{ n : alpha_j + n alpha_i is a root }` for
//! distinct simple roots. Simple roots follow the Bourbaki numbering.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple type such as `A2` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType(format!("{}{}", family.letter(), rank)))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True for `A1`, the only type whose algebra is `sl_2`.
    pub fn is_sl2(&self) -> bool {
        self.family == Family::A && self.rank == 1
    }

    /// Symmetrized Cartan matrix: Gram matrix of the simple roots, scaled to integers.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut b = vec![vec![0i64; n]; n];
        let edge = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            b[i - 1][j - 1] = v;
            b[j - 1][i - 1] = v;
        };
        match self.family {
            Family::A | Family::D | Family::E => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                match self.family {
                    Family::A => (1..n).for_each(|i| edge(&mut b, i, i + 1, -1)),
                    Family::D => {
                        (1..n - 1).for_each(|i| edge(&mut b, i, i + 1, -1));
                        edge(&mut b, n - 2, n, -1);
                    }
                    _ => {
                        edge(&mut b, 1, 3, -1);
                        edge(&mut b, 2, 4, -1);
                        (3..n).for_each(|i| edge(&mut b, i, i + 1, -1));
                    }
                }
            }
            Family::B => {
                for i in 0..n {
                    b[i][i] = if i + 1 == n { 2 } else { 4 };
                }
                (1..n).for_each(|i| edge(&mut b, i, i + 1, -2));
            }
            Family::C => {
                for i in 0..n {
                    b[i][i] = if i + 1 == n { 4 } else { 2 };
                }
                (1..n - 1).for_each(|i| edge(&mut b, i, i + 1, -1));
                edge(&mut b, n - 1, n, -2);
            }
            Family::F => {
                b[0][0] = 4;
                b[1][1] = 4;
                b[2][2] = 2;
                b[3][3] = 2;
                edge(&mut b, 1, 2, -2);
                edge(&mut b, 2, 3, -2);
                edge(&mut b, 3, 4, -1);
            }
            Family::G => {
                b[0][0] = 2;
                b[1][1] = 6;
                edge(&mut b, 1, 2, -3);
            }
        }
        b
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        Self::new(family, rank).map_err(|_| Error::InvalidType(s.to_string()))
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled_add(&self, n: i64, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + n * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Root system of a simple type with its extended Cartan data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    simple_type: SimpleType,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    index: HashMap<Root, usize>,
    lowest_root: Root,
    extended_cartan: Vec<Vec<i64>>,
    marks: Vec<i64>,
}

/// Generates `Φ⁺` by closing the simple roots under root strings.
pub fn generate_roots(st: SimpleType) -> RootSystem {
    let r = st.rank();
    let gram = st.gram();
    let cartan: Vec<Vec<i64>> =
        (0..r).map(|i| (0..r).map(|j| 2 * gram[i][j] / gram[i][i]).collect()).collect();

    let mut known: HashMap<Root, ()> = HashMap::new();
    let mut layer: Vec<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    let mut all = Vec::new();
    for root in &layer {
        known.insert(root.clone(), ());
    }
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let ai = Root::simple(r, i);
                let mut p = 0;
                let mut down = beta.sub(&ai);
                while known.contains_key(&down) {
                    p += 1;
                    down = down.sub(&ai);
                }
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta.0[j]).sum();
                let q = p - pairing;
                let up = beta.add(&ai);
                if q > 0 && !known.contains_key(&up) {
                    known.insert(up.clone(), ());
                    next.push(up);
                }
            }
        }
        layer = next;
    }
    sort_roots(&mut all);
    let index = all.iter().enumerate().map(|(k, a)| (a.clone(), k)).collect();

    let mut rs = RootSystem {
        simple_type: st,
        cartan,
        gram,
        positive_roots: all,
        index,
        lowest_root: Root(vec![0; r]),
        extended_cartan: Vec::new(),
        marks: Vec::new(),
    };
    rs.lowest_root = lowest_root(&rs);
    let (ext, marks) = extended_cartan_and_marks(&rs);
    rs.extended_cartan = ext;
    rs.marks = marks;
    rs
}

/// Height first, then descending lexicographic order, so that the simple roots
/// come out as `alpha_1, ..., alpha_r`.
pub fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
}

/// The unique minimal root, `-(highest root)`.
pub fn lowest_root(rs: &RootSystem) -> Root {
    let highest = rs.positive_roots.iter().max_by_key(|a| a.height()).expect("nonempty root system");
    highest.neg()
}

/// Extended Cartan matrix over the nodes `alpha_0, alpha_1, ..., alpha_r` and
/// the marks of the affine null relation (node 0 has mark 1).
pub fn extended_cartan_and_marks(rs: &RootSystem) -> (Vec<Vec<i64>>, Vec<i64>) {
    let r = rs.rank();
    let nodes = rs.extended_nodes();
    let ext: Vec<Vec<i64>> = nodes
        .iter()
        .map(|a| nodes.iter().map(|b| 2 * rs.inner(b, a) / rs.inner(a, a)).collect())
        .collect();

    let node_images = Matrix::from_fn(r, r + 1, |i, j| BigRational::from_integer(nodes[j].0[i].into()));
    let kernel = kernel_basis(&node_images);
    assert_eq!(kernel.len(), 1, "affine null relation is unique");
    let v = &kernel[0];
    let scale = BigRational::one() / &v[0];
    let marks = v
        .iter()
        .map(|x| {
            let m = x.clone() * &scale;
            assert!(m.is_integer() && m.is_positive(), "marks are positive integers");
            m.to_integer().to_i64().expect("small mark")
        })
        .collect();
    (ext, marks)
}

/// Extended Cartan matrix recomputed from root strings in the affine root
/// system `{ alpha + n delta }`, independently of the pairing formula.
pub fn extended_cartan_from_strings(rs: &RootSystem) -> Vec<Vec<i64>> {
    let r = rs.rank();
    let nodes: Vec<(Root, i64)> = std::iter::once((rs.lowest_root.clone(), 1))
        .chain((0..r).map(|i| (Root::simple(r, i), 0)))
        .collect();
    let is_affine_root = |a: &Root, d: i64| if a.is_zero() { d != 0 } else { rs.is_root(a) };
    (0..=r)
        .map(|i| {
            (0..=r)
                .map(|j| {
                    if i == j {
                        return 2;
                    }
                    let (ai, di) = &nodes[i];
                    let (aj, dj) = &nodes[j];
                    let mut n = 0;
                    while is_affine_root(&aj.scaled_add(n + 1, ai), dj + (n + 1) * di) {
                        n += 1;
                    }
                    -n
                })
                .collect()
        })
        .collect()
}

impl RootSystem {
    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank()
    }

    /// `dim g = 2|Φ⁺| + rank`.
    pub fn algebra_dim(&self) -> usize {
        2 * self.positive_roots.len() + self.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Positive roots followed by their negatives, in the same order.
    pub fn all_roots(&self) -> Vec<Root> {
        self.positive_roots.iter().cloned().chain(self.positive_roots.iter().map(Root::neg)).collect()
    }

    pub fn lowest_root(&self) -> &Root {
        &self.lowest_root
    }

    pub fn highest_root(&self) -> Root {
        self.lowest_root.neg()
    }

    pub fn extended_cartan(&self) -> &[Vec<i64>] {
        &self.extended_cartan
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Finite parts of the extended nodes: `alpha_0, alpha_1, ..., alpha_r`.
    pub fn extended_nodes(&self) -> Vec<Root> {
        let r = self.rank();
        std::iter::once(self.lowest_root.clone()).chain((0..r).map(|i| Root::simple(r, i))).collect()
    }

    /// Index of a positive root in `positive_roots`.
    pub fn positive_index(&self, a: &Root) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn is_root(&self, a: &Root) -> bool {
        self.index.contains_key(a) || self.index.contains_key(&a.neg())
    }

    /// Invariant form, scaled so that all values are integers.
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += a.0[i] * self.gram[i][j] * b.0[j];
            }
        }
        s
    }

    /// `<beta, alpha_i^vee>`.
    pub fn pairing(&self, beta: &Root, i: usize) -> i64 {
        (0..self.rank()).map(|j| self.cartan[i][j] * beta.0[j]).sum()
    }

    /// Squared length of simple root `i` in the integer-scaled form.
    pub fn simple_length(&self, i: usize) -> i64 {
        self.gram[i][i]
    }

    /// Coordinates of the coroot `alpha^vee` in the basis of simple coroots.
    pub fn coroot_coords(&self, a: &Root) -> Vec<i64> {
        let len = self.inner(a, a);
        (0..self.rank())
            .map(|i| {
                let num = a.0[i] * self.gram[i][i];
                assert_eq!(num % len, 0, "coroot coordinates are integral");
                num / len
            })
            .collect()
    }

    /// Reflection `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, beta: &Root, i: usize) -> Root {
        let mut out = beta.clone();
        out.0[i] -= self.pairing(beta, i);
        out
    }

    /// Converts a weight given by its values on the simple coroots into
    /// simple-root coordinates, when it lies in the root lattice.
    pub fn root_from_pairings(&self, values: &[BigRational]) -> Option<Root> {
        let r = self.rank();
        let a = Matrix::from_fn(r, r, |i, j| BigRational::from_integer(self.cartan[i][j].into()));
        let x = crate::linalg::solve_system(&a, values).ok()??;
        let coords: Option<Vec<i64>> =
            x.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect();
        coords.map(Root)
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }
}

impl RootSystem {
    /// Convenience constructor from a type string such as `"B3"`.
    pub fn from_type_str(s: &str) -> Result<Self> {
        Ok(generate_roots(s.parse()?))
    }
}
