//! Simply-laced Dynkin diagrams and their root systems.
//!
//! Vertices are indexed from 0 internally; the labels printed to users are
//! 1-based and follow the usual picture:
//!
//! ```text
//! A_n  1 - 2 - ... - n
//! D_n  1 - 2 - ... - (n-2) < (n-1), n
//! E_6  1 - 2 - 3 - 4 - 5, with 6 hanging off 3
//! E_7  1 - 2 - 3 - 4 - 5 - 6, with 7 hanging off 3
//! ```

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::Poset;
pub use crate::vector::DimVector as RootVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    edges: Vec<(usize, usize)>,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let path = |len: usize| {
            (0..len.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>()
        };
        let edges = match family {
            Family::A if rank >= 1 => path(rank),
            Family::D if rank >= 4 => {
                let mut e = path(rank - 1);
                e.push((rank - 3, rank - 1));
                e
            }
            Family::E if rank == 6 || rank == 7 => {
                let mut e = path(rank - 1);
                e.push((2, rank - 1));
                e
            }
            _ => {
                return Err(Error::InvalidDiagram(format!(
                    "{family:?}{rank} is not a supported simply-laced type"
                )))
            }
        };
        Ok(DynkinDiagram {
            family,
            rank,
            edges,
        })
    }

    pub fn a(n: usize) -> Result<Self> {
        Self::new(Family::A, n)
    }

    pub fn d(n: usize) -> Result<Self> {
        Self::new(Family::D, n)
    }

    pub fn e(n: usize) -> Result<Self> {
        Self::new(Family::E, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Symmetric bilinear form `(x, y) = 2 sum x_i y_i - sum_{edges} (x_a y_b + x_b y_a)`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let diag: i64 = x.iter().zip(y).map(|(a, b)| 2 * a * b).sum();
        let off: i64 = self
            .edges
            .iter()
            .map(|&(a, b)| x[a] * y[b] + x[b] * y[a])
            .sum();
        diag - off
    }

    /// All positive roots, sorted by height and then lexicographically.
    pub fn positive_roots(&self) -> Vec<RootVector> {
        let n = self.rank;
        let to_i64 = |r: &RootVector| r.0.iter().map(|&x| x as i64).collect::<Vec<_>>();
        let mut roots: Vec<RootVector> = (0..n).map(|i| RootVector::unit(n, i)).collect();
        let mut seen: HashSet<RootVector> = roots.iter().cloned().collect();
        // Additive closure: for positive roots a != b in simply-laced type,
        // a + b is a root exactly when (a, b) = -1.
        let mut frontier = 0;
        while frontier < roots.len() {
            let end = roots.len();
            for i in frontier..end {
                for j in 0..end {
                    let (a, b) = (to_i64(&roots[i]), to_i64(&roots[j]));
                    if self.pairing(&a, &b) == -1 {
                        let sum = roots[i].add(&roots[j]);
                        if seen.insert(sum.clone()) {
                            roots.push(sum);
                        }
                    }
                }
            }
            frontier = end;
        }
        roots.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        roots
    }

    /// Matrix of the simple reflection `s_i` acting on root coordinates.
    fn reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0i64; n]; n];
        for (j, row) in m.iter_mut().enumerate() {
            row[j] = 1;
        }
        // s_i(x) = x - (x, alpha_i) alpha_i only changes coordinate i.
        let e_i: Vec<i64> = (0..n).map(|k| (k == i) as i64).collect();
        for j in 0..n {
            let e_j: Vec<i64> = (0..n).map(|k| (k == j) as i64).collect();
            m[i][j] -= self.pairing(&e_j, &e_i);
        }
        m
    }

    /// Order of the Coxeter element `s_1 s_2 ... s_n`.
    pub fn coxeter_number(&self) -> usize {
        let n = self.rank;
        let matmul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| {
            let mut c = vec![vec![0i64; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if a[i][k] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        c[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            c
        };
        let identity: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        let coxeter = (0..n).fold(identity.clone(), |acc, i| matmul(&acc, &self.reflection(i)));
        let mut power = coxeter.clone();
        let mut order = 1;
        while power != identity {
            power = matmul(&power, &coxeter);
            order += 1;
            assert!(order <= 4 * n + 4, "Coxeter element order did not converge");
        }
        order
    }

    /// Vertices at which every positive root has coefficient 0 or 1.
    pub fn minuscule_vertices(&self) -> BTreeSet<usize> {
        let roots = self.positive_roots();
        (0..self.rank)
            .filter(|&m| roots.iter().all(|r| r[m] <= 1))
            .collect()
    }

    pub fn is_minuscule(&self, m: usize) -> bool {
        m < self.rank && self.minuscule_vertices().contains(&m)
    }

    /// The minuscule poset for `(self, m)` built from chains and iterated
    /// order ideals, independent of any quiver.
    pub fn reference_minuscule_poset(&self, m: usize) -> Result<Poset> {
        if !self.is_minuscule(m) {
            return Err(Error::NotMinuscule {
                diagram: self.to_string(),
                vertex: m + 1,
            });
        }
        let n = self.rank;
        let k = m + 1;
        let iterate = |base: Poset, times: usize| -> Result<Poset> {
            (0..times).try_fold(base, |p, _| p.order_ideals())
        };
        match self.family {
            Family::A => Ok(Poset::chain_product(k, n + 1 - k)),
            Family::D if k == 1 => iterate(Poset::chain_product(2, 2), n - 3),
            Family::D => iterate(Poset::chain_product(2, n - 2), 1),
            Family::E if n == 6 => iterate(Poset::chain_product(2, 3), 2),
            Family::E => iterate(Poset::chain_product(2, 3), 3),
        }
    }

    /// Every supported diagram up to the given ranks, used by sweeps.
    pub fn supported(max_a: usize, max_d: usize, include_e7: bool) -> Vec<DynkinDiagram> {
        let mut out: Vec<_> = (1..=max_a).map(|n| Self::a(n).unwrap()).collect();
        out.extend((4..=max_d).map(|n| Self::d(n).unwrap()));
        out.push(Self::e(6).unwrap());
        if include_e7 {
            out.push(Self::e(7).unwrap());
        }
        out
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::Parse(format!("unknown diagram {s:?}"))),
        };
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        DynkinDiagram::new(family, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(set: BTreeSet<usize>) -> Vec<usize> {
        set.into_iter().map(|v| v + 1).collect()
    }

    #[test]
    fn diagram_shapes() {
        let e6: DynkinDiagram = "E6".parse().unwrap();
        assert!(e6.has_edge(2, 5));
        assert_eq!(e6.neighbors(2).len(), 3);
        let d5 = DynkinDiagram::d(5).unwrap();
        assert!(d5.has_edge(2, 3) && d5.has_edge(2, 4) && !d5.has_edge(3, 4));
        assert!(DynkinDiagram::e(8).is_err());
        assert!(DynkinDiagram::d(3).is_err());
        assert!(DynkinDiagram::a(0).is_err());
        assert!("X3".parse::<DynkinDiagram>().is_err());
    }

    #[test]
    fn small_root_systems() {
        let a1 = DynkinDiagram::a(1).unwrap();
        assert_eq!(a1.positive_roots(), vec![RootVector(vec![1])]);
        assert_eq!(a1.coxeter_number(), 2);
        assert_eq!(DynkinDiagram::a(4).unwrap().positive_roots().len(), 10);
        assert_eq!(DynkinDiagram::a(4).unwrap().coxeter_number(), 5);
        assert_eq!(DynkinDiagram::d(4).unwrap().positive_roots().len(), 12);
        assert_eq!(DynkinDiagram::e(6).unwrap().coxeter_number(), 12);
    }

    #[test]
    fn minuscule_vertices_match_the_standard_picture() {
        assert_eq!(
            one_based(DynkinDiagram::a(4).unwrap().minuscule_vertices()),
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            one_based(DynkinDiagram::d(5).unwrap().minuscule_vertices()),
            vec![1, 4, 5]
        );
        assert_eq!(
            one_based(DynkinDiagram::e(6).unwrap().minuscule_vertices()),
            vec![1, 5]
        );
        assert_eq!(
            one_based(DynkinDiagram::e(7).unwrap().minuscule_vertices()),
            vec![6]
        );
    }

    #[test]
    fn reference_posets() {
        let a4 = DynkinDiagram::a(4).unwrap();
        assert_eq!(a4.reference_minuscule_poset(2).unwrap().len(), 6);
        let d5 = DynkinDiagram::d(5).unwrap();
        assert_eq!(d5.reference_minuscule_poset(0).unwrap().len(), 8);
        assert_eq!(d5.reference_minuscule_poset(3).unwrap().len(), 10);
        assert!(d5.reference_minuscule_poset(1).is_err());
        let e7 = DynkinDiagram::e(7).unwrap();
        assert_eq!(e7.reference_minuscule_poset(5).unwrap().len(), 27);
    }
}
