//! Classical root systems written over their simple roots.
//!
//! Roots are integer vectors of coefficients over the simple roots in Bourbaki
//! numbering. The system is generated from the Cartan matrix by root-string
//! closure, ordered lexicographically, and indexed by [`RootId`]: positive
//! roots occupy ids `0..P` in ascending order and `P + i` is the negative of
//! the positive root `i`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Classical Cartan type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        }
    }

    /// Number of positive roots of the rank-`l` system.
    pub fn positive_root_count(self, l: usize) -> usize {
        match self {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Config(format!(
                "unsupported root family {other:?} (expected one of A, B, C, D)"
            ))),
        }
    }
}

/// A root `γ = Σ γ_i α_i`, stored by its simple-root coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct Root(Vec<i32>);

impl Root {
    /// Validates that `coords` is nonzero and sign-coherent, which every root of
    /// a reduced system is. Membership in a particular system is not checked.
    pub fn new(coords: Vec<i32>) -> Result<Self> {
        if coords.iter().all(|&c| c == 0) {
            return Err(Error::InvalidRoot(coords, "zero vector"));
        }
        let pos = coords.iter().all(|&c| c >= 0);
        let neg = coords.iter().all(|&c| c <= 0);
        if !pos && !neg {
            return Err(Error::InvalidRoot(coords, "mixed-sign coordinates"));
        }
        Ok(Root(coords))
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Unit vector for the simple root `α_{i+1}`.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }
}

impl TryFrom<Vec<i32>> for Root {
    type Error = Error;

    fn try_from(v: Vec<i32>) -> Result<Self> {
        Root::new(v)
    }
}

impl From<Root> for Vec<i32> {
    fn from(r: Root) -> Self {
        r.0
    }
}

impl std::ops::Neg for &Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Compares two lattice points: `a > b` iff the first nonzero entry of `a - b`
/// is positive.
pub fn lex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .find(|&d| d != 0)
        .map_or(Ordering::Equal, |d| d.cmp(&0))
}

/// Index of a root inside its [`RootSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub(crate) usize);

impl RootId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// `cartan[i][j] = <α_i, α_j^∨>`
    cartan: Vec<Vec<i32>>,
    /// Invariant form on simple roots, scaled so that short roots have length² 2.
    form: Vec<Vec<i32>>,
    roots: Vec<Root>,
    lookup: HashMap<Vec<i32>, RootId>,
    sums: Vec<Option<RootId>>,
}

fn simple_root_form(family: Family, l: usize) -> Vec<Vec<i32>> {
    let mut g = vec![vec![0; l]; l];
    match family {
        Family::A => {
            for i in 0..l {
                g[i][i] = 2;
                if i + 1 < l {
                    g[i][i + 1] = -1;
                    g[i + 1][i] = -1;
                }
            }
        }
        Family::B => {
            // α_1..α_{l-1} long, α_l short
            for i in 0..l {
                g[i][i] = if i + 1 < l { 4 } else { 2 };
                if i + 1 < l {
                    g[i][i + 1] = -2;
                    g[i + 1][i] = -2;
                }
            }
        }
        Family::C => {
            // α_1..α_{l-1} short, α_l long
            for i in 0..l {
                g[i][i] = if i + 1 < l { 2 } else { 4 };
                if i + 1 < l {
                    let off = if i + 2 == l { -2 } else { -1 };
                    g[i][i + 1] = off;
                    g[i + 1][i] = off;
                }
            }
        }
        Family::D => {
            // chain α_1..α_{l-1}, with α_l attached to α_{l-2}
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l - 2 {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
            g[l - 3][l - 1] = -1;
            g[l - 1][l - 3] = -1;
        }
    }
    g
}

impl RootSystem {
    /// Builds the root system of `family` and `rank` from its Cartan matrix.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::Config(format!(
                "rank {rank} is below the minimum {} for family {family}",
                family.min_rank()
            )));
        }
        let form = simple_root_form(family, rank);
        let cartan: Vec<Vec<i32>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / form[j][j]).collect())
            .collect();

        let positives = close_positive_roots(&cartan);
        let expected = family.positive_root_count(rank);
        if positives.len() != expected {
            return Err(Error::Config(format!(
                "closure produced {} positive roots for {family}{rank}, expected {expected}",
                positives.len()
            )));
        }

        let mut roots: Vec<Root> = positives.into_iter().map(Root).collect();
        roots.sort_by(|a, b| lex_cmp(a.coords(), b.coords()));
        let negatives: Vec<Root> = roots.iter().map(|r| -r).collect();
        roots.extend(negatives);

        let lookup: HashMap<Vec<i32>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.0.clone(), RootId(k)))
            .collect();

        let n = roots.len();
        let mut sums = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<i32> = roots[a].0.iter().zip(&roots[b].0).map(|(x, y)| x + y).collect();
                sums[a * n + b] = lookup.get(&s).copied();
            }
        }

        Ok(RootSystem {
            family,
            rank,
            cartan,
            form,
            roots,
            lookup,
            sums,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.0]
    }

    /// Every root, positive ones first.
    pub fn ids(&self) -> impl Iterator<Item = RootId> {
        (0..self.roots.len()).map(RootId)
    }

    /// Positive roots in ascending lexicographic order.
    pub fn positive_ids(&self) -> impl Iterator<Item = RootId> {
        (0..self.num_positive()).map(RootId)
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn all_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn simple_roots(&self) -> Vec<RootId> {
        (0..self.rank)
            .map(|i| self.lookup[Root::simple(self.rank, i).coords()])
            .collect()
    }

    pub fn id_of(&self, root: &Root) -> Option<RootId> {
        self.lookup.get(root.coords()).copied()
    }

    pub fn id_of_coords(&self, coords: &[i32]) -> Option<RootId> {
        self.lookup.get(coords).copied()
    }

    /// Like [`RootSystem::id_of`] but reports non-roots as errors.
    pub fn require(&self, root: &Root) -> Result<RootId> {
        if root.rank() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: root.rank(),
            });
        }
        self.id_of(root).ok_or_else(|| Error::NotARoot(root.to_string()))
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id.0 < self.num_positive()
    }

    pub fn neg(&self, id: RootId) -> RootId {
        let p = self.num_positive();
        if id.0 < p {
            RootId(id.0 + p)
        } else {
            RootId(id.0 - p)
        }
    }

    /// `|γ|`: the positive root among `±γ`.
    pub fn abs(&self, id: RootId) -> RootId {
        if self.is_positive(id) {
            id
        } else {
            self.neg(id)
        }
    }

    /// `α + β` if it is a root.
    pub fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a.0 * self.roots.len() + b.0]
    }

    /// `α - β` if it is a root.
    pub fn diff(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sum(a, self.neg(b))
    }

    pub fn cmp_ids(&self, a: RootId, b: RootId) -> Ordering {
        lex_cmp(self.roots[a.0].coords(), self.roots[b.0].coords())
    }

    /// Lexicographic comparison of two lattice points of this rank.
    pub fn lex_compare(&self, a: &Root, b: &Root) -> Result<Ordering> {
        for r in [a, b] {
            if r.rank() != self.rank {
                return Err(Error::Dimension {
                    expected: self.rank,
                    found: r.rank(),
                });
            }
        }
        Ok(lex_cmp(a.coords(), b.coords()))
    }

    pub fn abs_root(&self, root: &Root) -> Result<Root> {
        let id = self.require(root)?;
        Ok(self.root(self.abs(id)).clone())
    }

    pub fn root_sum(&self, a: &Root, b: &Root) -> Result<Option<Root>> {
        let (a, b) = (self.require(a)?, self.require(b)?);
        Ok(self.sum(a, b).map(|s| self.root(s).clone()))
    }

    /// Invariant inner product `(α, β)` in units where short roots have length² 2.
    pub fn inner(&self, a: RootId, b: RootId) -> i64 {
        let (x, y) = (self.roots[a.0].coords(), self.roots[b.0].coords());
        let mut acc = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += x[i] as i64 * self.form[i][j] as i64 * y[j] as i64;
            }
        }
        acc
    }

    pub fn norm2(&self, id: RootId) -> i64 {
        self.inner(id, id)
    }

    /// `<γ, α_i^∨>`, the eigenvalue of `H_i` on `E_γ`.
    pub fn pairing(&self, id: RootId, i: usize) -> i64 {
        self.roots[id.0]
            .coords()
            .iter()
            .zip(&self.cartan)
            .map(|(&c, row)| c as i64 * row[i] as i64)
            .sum()
    }

    /// Coefficients of the coroot `γ^∨` over the simple coroots.
    pub fn coroot(&self, id: RootId) -> Vec<i64> {
        let n = self.norm2(id);
        self.roots[id.0]
            .coords()
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let num = c as i64 * self.form[i][i] as i64;
                debug_assert_eq!(num % n, 0);
                num / n
            })
            .collect()
    }
}

/// Positive roots by root-string closure: for `β` and simple `α_i`, the string
/// `β - pα_i, ..., β + qα_i` has `p - q = <β, α_i^∨>`, so `β + α_i` is a root
/// iff `q > 0`.
fn close_positive_roots(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let l = cartan.len();
    let mut known: std::collections::HashSet<Vec<i32>> = std::collections::HashSet::new();
    let mut layer: Vec<Vec<i32>> = (0..l).map(|i| Root::simple(l, i).0).collect();
    let mut all = Vec::new();
    known.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..l {
                let is_simple_i = beta.iter().enumerate().all(|(k, &c)| c == i32::from(k == i));
                if is_simple_i {
                    continue;
                }
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = beta.iter().zip(cartan).map(|(&c, row)| c * row[i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i32]) -> Root {
        Root::new(v.to_vec()).unwrap()
    }

    #[test]
    fn a1_has_one_positive_root() {
        let rs = RootSystem::build(Family::A, 1).unwrap();
        assert_eq!(rs.positive_roots(), &[r(&[1])]);
        assert_eq!(rs.all_roots(), &[r(&[1]), r(&[-1])]);
    }

    #[test]
    fn a2_positive_roots_match_epsilon_enumeration() {
        // ε_i - ε_j, i < j <= 3, rewritten over α_1 = ε_1-ε_2, α_2 = ε_2-ε_3
        let rs = RootSystem::build(Family::A, 2).unwrap();
        let mut expected = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                let mut c = vec![0; 2];
                for k in i..j {
                    c[k] = 1;
                }
                expected.push(c);
            }
        }
        let mut got: Vec<Vec<i32>> = rs.positive_roots().iter().map(|r| r.coords().to_vec()).collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        // lex ascending: α2 < α1 < α1+α2
        assert_eq!(rs.positive_roots(), &[r(&[0, 1]), r(&[1, 0]), r(&[1, 1])]);
    }

    /// Independent generator: close the simple roots under reflections
    /// `s_i(β) = β - <β, α_i^∨> α_i` and keep the positive ones.
    fn reflection_closure(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
        let l = cartan.len();
        let mut seen: std::collections::BTreeSet<Vec<i32>> = (0..l).map(|i| Root::simple(l, i).0).collect();
        let mut frontier: Vec<Vec<i32>> = seen.iter().cloned().collect();
        while let Some(b) = frontier.pop() {
            for i in 0..l {
                let p: i32 = b.iter().zip(cartan).map(|(&c, row)| c * row[i]).sum();
                let mut s = b.clone();
                s[i] -= p;
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        seen.into_iter().filter(|v| v.iter().all(|&c| c >= 0)).collect()
    }

    #[test]
    fn closure_agrees_with_reflection_orbit() {
        for (fam, l) in [
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 4),
            (Family::C, 3),
            (Family::C, 4),
            (Family::D, 4),
            (Family::D, 5),
        ] {
            let rs = RootSystem::build(fam, l).unwrap();
            let mut got: Vec<Vec<i32>> = rs.positive_roots().iter().map(|r| r.coords().to_vec()).collect();
            got.sort();
            assert_eq!(got, reflection_closure(rs.cartan_matrix()), "{fam}{l}");
        }
    }

    #[test]
    fn b2_has_four_positive_roots() {
        let rs = RootSystem::build(Family::B, 2).unwrap();
        assert_eq!(rs.num_positive(), 4);
        assert!(rs.id_of_coords(&[1, 2]).is_some());
        assert!(rs.id_of_coords(&[2, 1]).is_none());
    }

    #[test]
    fn standard_counts() {
        for l in 1..=6 {
            assert_eq!(RootSystem::build(Family::A, l).unwrap().num_positive(), l * (l + 1) / 2);
        }
        for l in 2..=6 {
            assert_eq!(RootSystem::build(Family::B, l).unwrap().num_positive(), l * l);
            assert_eq!(RootSystem::build(Family::C, l).unwrap().num_positive(), l * l);
        }
        for l in 3..=6 {
            assert_eq!(RootSystem::build(Family::D, l).unwrap().num_positive(), l * (l - 1));
        }
    }

    #[test]
    fn rank_below_minimum_is_rejected() {
        assert!(matches!(RootSystem::build(Family::A, 0), Err(Error::Config(_))));
        assert!(matches!(RootSystem::build(Family::B, 1), Err(Error::Config(_))));
        assert!(matches!(RootSystem::build(Family::C, 1), Err(Error::Config(_))));
        assert!(matches!(RootSystem::build(Family::D, 2), Err(Error::Config(_))));
        assert!("E".parse::<Family>().is_err());
    }

    #[test]
    fn lex_compare_examples() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(rs.lex_compare(&r(&[1, 0]), &r(&[0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(rs.lex_compare(&r(&[1, 1]), &r(&[1, 0])).unwrap(), Ordering::Greater);
        assert!(matches!(
            rs.lex_compare(&r(&[1, 1, 0]), &r(&[1, 0])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn difference_in_r_decides_order() {
        for (fam, l) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let rs = RootSystem::build(fam, l).unwrap();
            for a in rs.ids() {
                for b in rs.ids() {
                    if let Some(d) = rs.diff(a, b) {
                        let greater = rs.cmp_ids(a, b) == Ordering::Greater;
                        assert_eq!(greater, rs.is_positive(d));
                    }
                }
            }
        }
    }

    #[test]
    fn abs_examples() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(rs.abs_root(&r(&[1, 0])).unwrap(), r(&[1, 0]));
        assert_eq!(rs.abs_root(&r(&[-1, -1])).unwrap(), r(&[1, 1]));
        let mut images: Vec<Root> = rs.all_roots().iter().map(|x| rs.abs_root(x).unwrap()).collect();
        images.sort_by(|a, b| lex_cmp(a.coords(), b.coords()));
        let mut twice: Vec<Root> = rs.positive_roots().iter().flat_map(|p| [p.clone(), p.clone()]).collect();
        twice.sort_by(|a, b| lex_cmp(a.coords(), b.coords()));
        assert_eq!(images, twice);
        assert!(matches!(rs.abs_root(&r(&[2, 0])), Err(Error::NotARoot(_))));
    }

    #[test]
    fn root_sum_examples() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(rs.root_sum(&r(&[1, 0]), &r(&[0, 1])).unwrap(), Some(r(&[1, 1])));
        assert_eq!(rs.root_sum(&r(&[1, 0]), &r(&[1, 0])).unwrap(), None);
        assert_eq!(rs.root_sum(&r(&[1, 0]), &r(&[-1, 0])).unwrap(), None);
    }

    #[test]
    fn root_validation() {
        assert!(Root::new(vec![0, 0]).is_err());
        assert!(Root::new(vec![1, -1]).is_err());
        assert!(Root::new(vec![0, -2]).is_ok());
    }

    #[test]
    fn structural_invariants_exhaustive() {
        for (fam, l) in [
            (Family::A, 1),
            (Family::A, 4),
            (Family::B, 4),
            (Family::C, 4),
            (Family::D, 4),
        ] {
            let rs = RootSystem::build(fam, l).unwrap();
            let p = rs.num_positive();
            for a in rs.ids() {
                let na = rs.neg(a);
                assert_eq!(rs.root(na), &-rs.root(a));
                assert_ne!(rs.is_positive(a), rs.is_positive(na));
                for b in rs.ids() {
                    assert_eq!(rs.sum(a, b), rs.sum(b, a));
                    let ab = rs.cmp_ids(a, b);
                    assert_eq!(ab.reverse(), rs.cmp_ids(b, a));
                    assert_eq!(ab == Ordering::Equal, a == b);
                    for c in rs.ids() {
                        if ab == Ordering::Less && rs.cmp_ids(b, c) == Ordering::Less {
                            assert_eq!(rs.cmp_ids(a, c), Ordering::Less);
                        }
                    }
                }
            }
            for k in 1..p {
                assert_eq!(rs.cmp_ids(RootId(k - 1), RootId(k)), Ordering::Less);
            }
            for x in rs.positive_roots() {
                assert_eq!(lex_cmp(x.coords(), &vec![0; l]), Ordering::Greater);
            }
        }
    }
}
