//! Finite posets, reverse plane partitions and piecewise-linear toggles.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::arquiver::ArQuiver;
use crate::error::{Error, Result};
use crate::vector::DimVector;

const IDEAL_GUARD: usize = 1 << 24;

/// A finite poset stored through its Hasse diagram and a reachability table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    // below[x] has bit y set when y <= x
    below: Vec<Vec<u64>>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

impl Poset {
    /// Builds the poset generated by `relations`, given as `(lower, upper)`
    /// pairs. Transitive edges are dropped from the Hasse diagram.
    pub fn from_relations(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in relations {
            if a >= n || b >= n || a == b {
                return Err(Error::Internal(format!("bad relation ({a}, {b})")));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut topo = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.pop() {
            topo.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::Internal("relations contain a cycle".into()));
        }
        let w = words(n);
        let mut below = vec![vec![0u64; w]; n];
        for &v in &topo {
            below[v][v / 64] |= 1 << (v % 64);
            let row = below[v].clone();
            for &s in &succ[v] {
                for (dst, src) in below[s].iter_mut().zip(&row) {
                    *dst |= src;
                }
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for y in 0..n {
            for x in 0..n {
                if x == y || !bit(&below[y], x) {
                    continue;
                }
                let shortcut =
                    (0..n).any(|z| z != x && z != y && bit(&below[y], z) && bit(&below[z], x));
                if !shortcut {
                    upper[x].push(y);
                    lower[y].push(x);
                }
            }
        }
        Ok(Poset {
            names,
            upper,
            lower,
            below,
        })
    }

    /// The product of chains `[a] x [b]`; element `(i, j)` has index `i * b + j`.
    pub fn chain_product(a: usize, b: usize) -> Poset {
        let names = (0..a)
            .flat_map(|i| (0..b).map(move |j| format!("({},{})", i + 1, j + 1)))
            .collect();
        let mut rel = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if i + 1 < a {
                    rel.push((i * b + j, (i + 1) * b + j));
                }
                if j + 1 < b {
                    rel.push((i * b + j, i * b + j + 1));
                }
            }
        }
        Poset::from_relations(names, &rel).expect("chain products are acyclic")
    }

    pub fn antichain(k: usize) -> Poset {
        Poset::from_relations((1..=k).map(|i| i.to_string()).collect(), &[]).expect("no relations")
    }

    /// The lattice of order ideals ordered by inclusion.
    pub fn order_ideals(&self) -> Result<Poset> {
        let n = self.len();
        if n > 64 {
            return Err(Error::TooLarge(format!(
                "order ideals of a {n}-element poset"
            )));
        }
        let down_mask: Vec<u64> = (0..n)
            .map(|x| self.lower[x].iter().fold(0u64, |m, &y| m | 1 << y))
            .collect();
        let mut seen: HashSet<u64> = HashSet::from([0]);
        let mut stack = vec![0u64];
        while let Some(ideal) = stack.pop() {
            for x in 0..n {
                if ideal >> x & 1 == 0 && down_mask[x] & !ideal == 0 {
                    let next = ideal | 1 << x;
                    if seen.insert(next) {
                        if seen.len() > IDEAL_GUARD {
                            return Err(Error::TooLarge("more than 2^24 order ideals".into()));
                        }
                        stack.push(next);
                    }
                }
            }
        }
        let mut ideals: Vec<u64> = seen.into_iter().collect();
        ideals.sort_by_key(|&m| (m.count_ones(), m));
        let index: HashMap<u64, usize> = ideals.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let names = ideals
            .iter()
            .map(|&m| {
                let parts: Vec<&str> = (0..n)
                    .filter(|&x| m >> x & 1 == 1)
                    .map(|x| self.names[x].as_str())
                    .collect();
                format!("{{{}}}", parts.join("|"))
            })
            .collect();
        let mut rel = Vec::new();
        for (i, &m) in ideals.iter().enumerate() {
            for x in 0..n {
                if m >> x & 1 == 0 {
                    if let Some(&j) = index.get(&(m | 1 << x)) {
                        rel.push((i, j));
                    }
                }
            }
        }
        Poset::from_relations(names, &rel)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// True when `x <= y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        bit(&self.below[y], x)
    }

    /// Cover pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.upper[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].contains(&y)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.lower[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.upper[x].is_empty())
            .collect()
    }

    /// Number of elements strictly below `x`.
    pub fn down_size(&self, x: usize) -> usize {
        self.below[x]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            - 1
    }

    pub fn up_size(&self, x: usize) -> usize {
        (0..self.len())
            .filter(|&y| y != x && self.leq(x, y))
            .count()
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for &x in &self.linear_extension() {
            h[x] = self.lower[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// A linear extension, smallest elements first, ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut remaining: Vec<usize> = (0..n).map(|x| self.lower[x].len()).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&x| remaining[x] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            out.push(x);
            for &y in &self.upper[x] {
                remaining[y] -= 1;
                if remaining[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        out
    }

    fn profile(&self) -> Vec<(usize, usize, usize, usize, usize)> {
        let h = self.heights();
        (0..self.len())
            .map(|x| {
                (
                    h[x],
                    self.upper[x].len(),
                    self.lower[x].len(),
                    self.down_size(x),
                    self.up_size(x),
                )
            })
            .collect()
    }

    /// Exact isomorphism test. Returns `f` with `f[x]` the image in `other`.
    pub fn is_isomorphic(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.covers().len() != other.covers().len() {
            return None;
        }
        let (pa, pb) = (self.profile(), other.profile());
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        let order = self.linear_extension();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &pa, &pb, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &Poset,
        pa: &[(usize, usize, usize, usize, usize)],
        pb: &[(usize, usize, usize, usize, usize)],
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for y in 0..other.len() {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&z| {
                let fz = map[z];
                self.is_cover(z, x) == other.is_cover(fz, y)
                    && self.is_cover(x, z) == other.is_cover(y, fz)
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend_iso(other, pa, pb, order, depth + 1, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
}

/// Upper limit on the entries of a reverse plane partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(BigInt),
    Unbounded,
}

impl Bound {
    pub fn finite(n: u64) -> Bound {
        Bound::Finite(BigInt::from(n))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Unbounded => write!(f, "inf"),
        }
    }
}

/// An order-reversing filling of a poset by nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rpp {
    pub values: Vec<BigInt>,
    pub bound: Bound,
}

impl Rpp {
    pub fn zero(poset: &Poset, bound: Bound) -> Rpp {
        Rpp {
            values: vec![BigInt::zero(); poset.len()],
            bound,
        }
    }

    pub fn from_values(values: Vec<i64>, bound: Bound) -> Rpp {
        Rpp {
            values: values.into_iter().map(BigInt::from).collect(),
            bound,
        }
    }

    pub fn weight(&self) -> BigInt {
        self.values.iter().sum()
    }

    pub fn validate(&self, poset: &Poset) -> Result<()> {
        if self.values.len() != poset.len() {
            return Err(Error::NotRpp(format!(
                "{} values for a {}-element poset",
                self.values.len(),
                poset.len()
            )));
        }
        for (x, v) in self.values.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::NotRpp(format!(
                    "negative value at {}",
                    poset.name(x)
                )));
            }
            if let Bound::Finite(n) = &self.bound {
                if v > n {
                    return Err(Error::NotRpp(format!(
                        "value {v} at {} exceeds {n}",
                        poset.name(x)
                    )));
                }
            }
        }
        for (x, y) in poset.covers() {
            if self.values[x] < self.values[y] {
                return Err(Error::NotRpp(format!(
                    "{} <= {} but {} < {}",
                    poset.name(x),
                    poset.name(y),
                    self.values[x],
                    self.values[y]
                )));
            }
        }
        Ok(())
    }

    /// Toggles in place at `x`.
    pub fn toggle_mut(&mut self, poset: &Poset, x: usize) -> Result<()> {
        let top = poset
            .upper_covers(x)
            .iter()
            .map(|&y| &self.values[y])
            .max()
            .cloned()
            .unwrap_or_default();
        let bottom = match poset.lower_covers(x).iter().map(|&y| &self.values[y]).min() {
            Some(v) => v.clone(),
            None => match &self.bound {
                Bound::Finite(n) => n.clone(),
                Bound::Unbounded => return Err(Error::UnboundedToggle(x)),
            },
        };
        self.values[x] = top + bottom - &self.values[x];
        Ok(())
    }

    pub fn toggle(&self, poset: &Poset, x: usize) -> Result<Rpp> {
        let mut out = self.clone();
        out.toggle_mut(poset, x)?;
        Ok(out)
    }

    /// A random filling: maxima first, each value uniform between the
    /// largest upper-cover value and `cap`.
    pub fn random<R: Rng + ?Sized>(poset: &Poset, cap: u64, bound: Bound, rng: &mut R) -> Rpp {
        let mut vals = vec![0u64; poset.len()];
        for &x in poset.linear_extension().iter().rev() {
            let lo = poset
                .upper_covers(x)
                .iter()
                .map(|&y| vals[y])
                .max()
                .unwrap_or(0);
            vals[x] = rng.gen_range(lo..=cap);
        }
        Rpp {
            values: vals.into_iter().map(BigInt::from).collect(),
            bound,
        }
    }

    /// Text form `bound=8;010:5,110:4`, with `;` between entries when a
    /// name contains a comma.
    pub fn to_text(&self, poset: &Poset) -> String {
        let sep = if poset.names().iter().any(|n| n.contains(',')) {
            ";"
        } else {
            ","
        };
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(x, v)| format!("{}:{v}", poset.name(x)))
            .collect();
        format!("bound={};{}", self.bound, parts.join(sep))
    }

    /// Parses [`Rpp::to_text`]; elements not mentioned are zero.
    pub fn parse(poset: &Poset, s: &str) -> Result<Rpp> {
        let s = s.trim();
        let (bound, body) = match s.strip_prefix("bound=") {
            Some(rest) => {
                let (b, body) = rest.split_once(';').unwrap_or((rest, ""));
                let bound = if b.trim() == "inf" {
                    Bound::Unbounded
                } else {
                    Bound::Finite(
                        b.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad bound {b:?}")))?,
                    )
                };
                (bound, body)
            }
            None => (Bound::Unbounded, s),
        };
        let mut rpp = Rpp::zero(poset, bound);
        let sep = if body.contains(';') { ';' } else { ',' };
        for entry in body.split(sep).map(str::trim).filter(|e| !e.is_empty()) {
            let (name, value) = entry
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("expected name:value, got {entry:?}")))?;
            let x = poset
                .index_of(name.trim())
                .ok_or_else(|| Error::Parse(format!("unknown element {name:?}")))?;
            rpp.values[x] = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value in {entry:?}")))?;
        }
        Ok(rpp)
    }
}

/// Annotations carried by each element of a minuscule poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementInfo {
    pub node: usize,
    pub dims: DimVector,
    pub dim: u64,
    pub orbit: usize,
    pub orbit_pos: usize,
}

/// The poset of indecomposables supported at a minuscule vertex, ordered by
/// paths in the AR quiver.
#[derive(Clone, Debug)]
pub struct MinusculePoset {
    pub poset: Poset,
    pub info: Vec<ElementInfo>,
    pub m: usize,
    element_of_node: Vec<Option<usize>>,
}

impl MinusculePoset {
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn element_of_node(&self, node: usize) -> Option<usize> {
        self.element_of_node[node]
    }

    pub fn element_of_dims(&self, dims: &DimVector) -> Option<usize> {
        self.info.iter().position(|e| &e.dims == dims)
    }

    pub fn dims(&self) -> Vec<u64> {
        self.info.iter().map(|e| e.dim).collect()
    }

    /// Elements of the orbit of `vertex`, listed from the projective end.
    pub fn orbit_elements(&self, vertex: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len())
            .filter(|&x| self.info[x].orbit == vertex)
            .collect();
        out.sort_by_key(|&x| self.info[x].orbit_pos);
        out
    }
}

/// Restricts the AR quiver to the nodes supported at `m`.
pub fn minuscule_poset(ar: &ArQuiver, m: usize) -> Result<MinusculePoset> {
    let diagram = ar.quiver().diagram();
    if !diagram.is_minuscule(m) {
        return Err(Error::NotMinuscule {
            diagram: diagram.to_string(),
            vertex: m + 1,
        });
    }
    let mut element_of_node = vec![None; ar.len()];
    let mut info = Vec::new();
    for node in ar.nodes() {
        if node.dims[m] == 1 {
            element_of_node[node.id] = Some(info.len());
            info.push(ElementInfo {
                node: node.id,
                dims: node.dims.clone(),
                dim: node.dims.total(),
                orbit: node.orbit,
                orbit_pos: node.slice,
            });
        }
    }
    let rel: Vec<(usize, usize)> = ar
        .arrows()
        .iter()
        .filter_map(|&(a, b)| Some((element_of_node[a]?, element_of_node[b]?)))
        .collect();
    let names = info.iter().map(|e| e.dims.to_string()).collect();
    let poset = Poset::from_relations(names, &rel)?;
    Ok(MinusculePoset {
        poset,
        info,
        m,
        element_of_node,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chain_products_and_ideals() {
        assert_eq!(Poset::chain_product(1, 1).len(), 1);
        let p33 = Poset::chain_product(3, 3);
        assert_eq!((p33.len(), p33.covers().len()), (9, 12));
        assert_eq!(Poset::antichain(2).order_ideals().unwrap().len(), 4);
        let j22 = Poset::chain_product(2, 2).order_ideals().unwrap();
        assert_eq!(j22.len(), 6);
        let e6 = Poset::chain_product(2, 3)
            .order_ideals()
            .unwrap()
            .order_ideals()
            .unwrap();
        assert_eq!(e6.len(), 16);
    }

    #[test]
    fn transitive_edges_are_dropped() {
        let p = Poset::from_relations(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(p.leq(0, 2) && !p.leq(2, 0));
        assert!(Poset::from_relations(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let p = Poset::chain_product(3, 2);
        assert_eq!(p.is_isomorphic(&p), Some((0..6).collect()));
        let q = Poset::chain_product(2, 3);
        let f = p.is_isomorphic(&q).unwrap();
        for (x, y) in p.covers() {
            assert!(q.is_cover(f[x], f[y]));
        }
        assert!(p.is_isomorphic(&Poset::chain_product(1, 6)).is_none());
    }

    #[test]
    fn single_toggles() {
        let p = Poset::chain_product(2, 2);
        // (1,1) is the minimum, (2,2) the maximum.
        let rpp = Rpp::from_values(vec![5, 4, 5, 1], Bound::finite(8));
        let t = rpp.toggle(&p, 3).unwrap();
        assert_eq!(t.values[3], BigInt::from(3));
        assert_eq!(t.toggle(&p, 3).unwrap(), rpp);
        let unbounded = Rpp::from_values(vec![5, 4, 5, 1], Bound::Unbounded);
        assert_eq!(unbounded.toggle(&p, 0), Err(Error::UnboundedToggle(0)));
        let mid = Rpp::from_values(vec![5, 4, 4, 4], Bound::finite(8))
            .toggle(&p, 1)
            .unwrap();
        assert_eq!(mid.values[1], BigInt::from(5));
    }

    #[test]
    fn rpp_text_round_trip() {
        let p = Poset::chain_product(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rpp = Rpp::random(&p, 6, Bound::finite(6), &mut rng);
        rpp.validate(&p).unwrap();
        let text = rpp.to_text(&p);
        assert!(text.starts_with("bound=6;"));
        assert_eq!(Rpp::parse(&p, &text).unwrap(), rpp);
        assert!(Rpp::from_values(vec![0, 1, 0, 0], Bound::Unbounded)
            .validate(&p)
            .is_err());
    }

    #[test]
    fn a4_example_poset() {
        let q: Quiver = "A4:1>2>3<4".parse().unwrap();
        let ar = ArQuiver::knit(&q).unwrap();
        let mp = minuscule_poset(&ar, 2).unwrap();
        let mut names: Vec<&str> = mp.poset.names().iter().map(|s| s.as_str()).collect();
        names.sort();
        assert_eq!(names, vec!["0010", "0011", "0110", "0111", "1110", "1111"]);
        assert!(mp
            .poset
            .is_isomorphic(&Poset::chain_product(3, 2))
            .is_some());
        let a1 = ArQuiver::knit(&"A1".parse().unwrap()).unwrap();
        assert_eq!(minuscule_poset(&a1, 0).unwrap().len(), 1);
    }
}
