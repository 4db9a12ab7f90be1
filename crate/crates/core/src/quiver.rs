//! Dynkin quivers and their representations over F_p.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynkin::{DynkinDiagram, RootVector};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
pub use crate::vector::DimVector;

/// A Dynkin diagram with one orientation per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    diagram: DynkinDiagram,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// `arrows` are `(source, target)` pairs of 0-based vertices.
    pub fn new(diagram: DynkinDiagram, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = diagram.rank();
        if arrows.len() != diagram.edges().len() {
            return Err(Error::InvalidQuiver(format!(
                "{} arrows given for {} edges of {diagram}",
                arrows.len(),
                diagram.edges().len()
            )));
        }
        for (i, &(s, t)) in arrows.iter().enumerate() {
            if s >= n || t >= n || !diagram.has_edge(s, t) {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {}->{} is not an edge of {diagram}",
                    s + 1,
                    t + 1
                )));
            }
            let dup = arrows[..i]
                .iter()
                .any(|&(a, b)| (a, b) == (s, t) || (a, b) == (t, s));
            if dup {
                return Err(Error::InvalidQuiver(format!(
                    "edge {}-{} oriented twice",
                    s + 1,
                    t + 1
                )));
            }
        }
        Ok(Quiver { diagram, arrows })
    }

    /// Each edge oriented from the larger label to the smaller one.
    pub fn descending(diagram: DynkinDiagram) -> Self {
        let arrows = diagram
            .edges()
            .iter()
            .map(|&(a, b)| (a.max(b), a.min(b)))
            .collect();
        Quiver { diagram, arrows }
    }

    /// All `2^|edges|` orientations, in a fixed order.
    pub fn all_orientations(diagram: &DynkinDiagram) -> Vec<Quiver> {
        let edges = diagram.edges();
        (0..1u64 << edges.len())
            .map(|mask| {
                let arrows = edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                Quiver {
                    diagram: diagram.clone(),
                    arrows,
                }
            })
            .collect()
    }

    pub fn random_orientation(diagram: &DynkinDiagram, seed: u64) -> Quiver {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arrows = diagram
            .edges()
            .iter()
            .map(|&(a, b)| if rng.gen_bool(0.5) { (b, a) } else { (a, b) })
            .collect();
        Quiver {
            diagram: diagram.clone(),
            arrows,
        }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.diagram.rank()
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.0 == v).map(|a| a.1)
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.1 == v).map(|a| a.0)
    }

    fn reachable(&self, start: usize, forward: bool) -> DimVector {
        let n = self.num_vertices();
        let mut dims = DimVector::zero(n);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if dims.0[v] == 1 {
                continue;
            }
            dims.0[v] = 1;
            if forward {
                stack.extend(self.out_neighbors(v));
            } else {
                stack.extend(self.in_neighbors(v));
            }
        }
        dims
    }

    /// Dimension vector of the projective at `i`: 1 at every `j` reachable from `i`.
    pub fn projective_dims(&self, i: usize) -> DimVector {
        self.reachable(i, true)
    }

    /// Dimension vector of the injective at `i`: 1 at every `j` with a path to `i`.
    pub fn injective_dims(&self, i: usize) -> DimVector {
        self.reachable(i, false)
    }

    /// Vertices ordered so that every arrow's target precedes its source.
    pub fn sinks_first_order(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&v| !placed[v] && self.out_neighbors(v).all(|t| placed[t]))
                .expect("quiver on a tree is acyclic");
            placed[next] = true;
            order.push(next);
        }
        order
    }
}

/// Orientation syntax: `A5:1<2<3<4<5`, `A3:1>2<3`, `D5:2>1,3>2,4>3,5>3`.
///
/// Each comma-separated segment is a chain of 1-based labels joined by `>`
/// (arrow to the right) or `<` (arrow to the left). A bare diagram name such
/// as `E6` uses the descending orientation.
impl FromStr for Quiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (diag, spec) = match s.split_once(':') {
            Some((d, rest)) => (d, Some(rest)),
            None => (s, None),
        };
        let diagram: DynkinDiagram = diag.parse()?;
        let Some(spec) = spec.filter(|r| !r.trim().is_empty()) else {
            return Ok(Quiver::descending(diagram));
        };
        let mut arrows = Vec::new();
        for segment in spec.split(',') {
            let segment = segment.trim();
            let mut labels = Vec::new();
            let mut dirs = Vec::new();
            let mut cur = String::new();
            for ch in segment.chars() {
                match ch {
                    '<' | '>' => {
                        labels.push(std::mem::take(&mut cur));
                        dirs.push(ch);
                    }
                    c if c.is_ascii_digit() => cur.push(c),
                    c if c.is_whitespace() => {}
                    c => return Err(Error::Parse(format!("unexpected {c:?} in quiver {s:?}"))),
                }
            }
            labels.push(cur);
            let labels: Vec<usize> = labels
                .iter()
                .map(|l| {
                    l.parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| Error::Parse(format!("bad vertex {l:?} in {s:?}")))
                })
                .collect::<Result<_>>()?;
            for (k, d) in dirs.iter().enumerate() {
                let (a, b) = (labels[k] - 1, labels[k + 1] - 1);
                arrows.push(if *d == '>' { (a, b) } else { (b, a) });
            }
        }
        Quiver::new(diagram, arrows)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.diagram)?;
        let parts: Vec<String> = self
            .arrows
            .iter()
            .map(|&(s, t)| format!("{}>{}", s + 1, t + 1))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A representation: one matrix per arrow, of shape `dims[t] x dims[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dims: DimVector,
    maps: Vec<Matrix>,
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism(pub Vec<Matrix>);

impl Representation {
    pub fn new(quiver: &Quiver, dims: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidQuiver("representation shape mismatch".into()));
        }
        for (&(s, t), m) in quiver.arrows().iter().zip(&maps) {
            if m.rows() != dims[t] as usize || m.cols() != dims[s] as usize {
                return Err(Error::InvalidQuiver(format!(
                    "map on arrow {}->{} has shape {}x{}",
                    s + 1,
                    t + 1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { dims, maps })
    }

    pub fn random<R: Rng + ?Sized>(quiver: &Quiver, dims: &DimVector, rng: &mut R) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::random(dims[t] as usize, dims[s] as usize, rng))
            .collect();
        Representation {
            dims: dims.clone(),
            maps,
        }
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
}

/// Basis of `Hom(v, w)` as the null space of the intertwining system
/// `theta_t f_a = g_a theta_s`.
pub fn hom_basis(quiver: &Quiver, v: &Representation, w: &Representation) -> Vec<Morphism> {
    let n = quiver.num_vertices();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for i in 0..n {
        offsets.push(offsets[i] + (w.dims[i] * v.dims[i]) as usize);
    }
    let unknowns = offsets[n];
    let equations: usize = quiver
        .arrows()
        .iter()
        .map(|&(s, t)| (w.dims[t] * v.dims[s]) as usize)
        .sum();
    let mut system = Matrix::zeros(equations, unknowns);
    let mut eq = 0;
    for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
        let (f, g) = (&v.maps[a], &w.maps[a]);
        let (vs, vt, ws, wt) = (
            v.dims[s] as usize,
            v.dims[t] as usize,
            w.dims[s] as usize,
            w.dims[t] as usize,
        );
        // unknown theta_i[r][c] lives at offsets[i] + r * v.dims[i] + c
        for r in 0..wt {
            for c in 0..vs {
                for k in 0..vt {
                    let col = offsets[t] + r * vt + k;
                    let val = linalg::add(system.get(eq, col), f.get(k, c));
                    system.set(eq, col, val);
                }
                for k in 0..ws {
                    let col = offsets[s] + k * vs + c;
                    let val = linalg::sub(system.get(eq, col), g.get(r, k));
                    system.set(eq, col, val);
                }
                eq += 1;
            }
        }
    }
    system
        .nullspace()
        .into_iter()
        .map(|x| {
            Morphism(
                (0..n)
                    .map(|i| {
                        let (rows, cols) = (w.dims[i] as usize, v.dims[i] as usize);
                        let mut m = Matrix::zeros(rows, cols);
                        for r in 0..rows {
                            for c in 0..cols {
                                m.set(r, c, x[offsets[i] + r * cols + c]);
                            }
                        }
                        m
                    })
                    .collect(),
            )
        })
        .collect()
}

/// True when `theta` satisfies every intertwining constraint.
pub fn is_morphism(
    quiver: &Quiver,
    v: &Representation,
    w: &Representation,
    theta: &Morphism,
) -> bool {
    quiver
        .arrows()
        .iter()
        .enumerate()
        .all(|(a, &(s, t))| theta.0[t].mul(&v.maps[a]) == w.maps[a].mul(&theta.0[s]))
}

const INDECOMPOSABLE_ATTEMPTS: usize = 64;

/// Samples random matrices with dimension vector `root` until the
/// endomorphism algebra is one-dimensional.
pub fn build_indecomposable(
    quiver: &Quiver,
    root: &RootVector,
    seed: u64,
) -> Result<Representation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..INDECOMPOSABLE_ATTEMPTS {
        let rep = Representation::random(quiver, root, &mut rng);
        if hom_basis(quiver, &rep, &rep).len() == 1 {
            return Ok(rep);
        }
    }
    Err(Error::SamplingBudget(root.to_string()))
}

/// Block-diagonal direct sum of `parts`, each repeated by its multiplicity.
pub fn direct_sum(quiver: &Quiver, parts: &[(&Representation, usize)]) -> Representation {
    let n = quiver.num_vertices();
    let mut dims = DimVector::zero(n);
    for (rep, k) in parts {
        dims = dims.add(&rep.dims.scaled(*k as u32));
    }
    let maps = (0..quiver.arrows().len())
        .map(|a| {
            let blocks: Vec<&Matrix> = parts
                .iter()
                .flat_map(|(rep, k)| std::iter::repeat_n(&rep.maps[a], *k))
                .collect();
            Matrix::block_diagonal(&blocks)
        })
        .collect();
    Representation { dims, maps }
}

/// One fixed representative per positive root, plus Hom-space bases
/// between them. Built eagerly so it can be shared read-only.
#[derive(Clone, Debug)]
pub struct IndecomposableFamily {
    quiver: Quiver,
    roots: Vec<RootVector>,
    reps: Vec<Representation>,
    index: HashMap<RootVector, usize>,
    homs: HashMap<(usize, usize), Vec<Morphism>>,
}

impl IndecomposableFamily {
    /// Builds representatives for `roots` and Hom bases between every pair.
    pub fn new(quiver: &Quiver, roots: &[RootVector], seed: u64) -> Result<Self> {
        let reps = roots
            .iter()
            .enumerate()
            .map(|(k, r)| {
                build_indecomposable(
                    quiver,
                    r,
                    seed.wrapping_mul(0x9E37_79B9).wrapping_add(k as u64),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let mut homs = HashMap::new();
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                homs.insert((i, j), hom_basis(quiver, &reps[i], &reps[j]));
            }
        }
        let index = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        Ok(IndecomposableFamily {
            quiver: quiver.clone(),
            roots: roots.to_vec(),
            reps,
            index,
            homs,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn index_of(&self, root: &RootVector) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn rep(&self, i: usize) -> &Representation {
        &self.reps[i]
    }

    pub fn homs(&self, from: usize, to: usize) -> &[Morphism] {
        &self.homs[&(from, to)]
    }
}

/// Isomorphism class of a direct sum of indecomposables, recorded as a
/// multiplicity per dimension vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RepClass(pub BTreeMap<DimVector, BigUint>);

impl RepClass {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets a multiplicity; zero entries are dropped.
    pub fn set(&mut self, dv: DimVector, mult: BigUint) {
        if mult == BigUint::from(0u8) {
            self.0.remove(&dv);
        } else {
            self.0.insert(dv, mult);
        }
    }

    pub fn get(&self, dv: &DimVector) -> BigUint {
        self.0.get(dv).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Total dimension `sum c_u * dim(M_u)`.
    pub fn total_dimension(&self) -> BigUint {
        self.0
            .iter()
            .map(|(dv, c)| c * BigUint::from(dv.total()))
            .sum()
    }

    pub fn dimension_vector(&self, n: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::default(); n];
        for (dv, c) in &self.0 {
            for (slot, &x) in out.iter_mut().zip(&dv.0) {
                *slot += c * BigUint::from(x);
            }
        }
        out
    }
}

/// Text form `11100:4,01100:3`; entries are separated by `;` instead when
/// some dimension vector needs the comma form.
impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.keys().any(|dv| dv.0.iter().any(|&x| x > 9)) {
            ";"
        } else {
            ","
        };
        let parts: Vec<String> = self.0.iter().map(|(dv, c)| format!("{dv}:{c}")).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl FromStr for RepClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut rep = RepClass::new();
        if s.is_empty() || s == "0" {
            return Ok(rep);
        }
        let sep = if s.contains(';') { ';' } else { ',' };
        for entry in s.split(sep).map(str::trim).filter(|e| !e.is_empty()) {
            let (dv, mult) = match entry.split_once(':') {
                Some((d, m)) => (d, m),
                None => (entry, "1"),
            };
            let dv: DimVector = dv.parse()?;
            let mult: BigUint = mult
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity in {entry:?}")))?;
            let total = rep.get(&dv) + mult;
            rep.set(dv, total);
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quiver {
        s.parse().unwrap()
    }

    #[test]
    fn orientation_parsing() {
        let quiver = q("A4:1>2>3<4");
        assert_eq!(quiver.arrows(), &[(0, 1), (1, 2), (3, 2)]);
        assert_eq!(quiver.to_string(), "A4:1>2,2>3,4>3");
        assert_eq!(q(&quiver.to_string()), quiver);
        let d5 = q("D5:2>1,3>2,4>3,5>3");
        assert_eq!(d5.arrows().len(), 4);
        assert!("A3:1>3".parse::<Quiver>().is_err());
        assert!("A3:1>2".parse::<Quiver>().is_err());
        assert!("A3:1>2,2<1,2>3".parse::<Quiver>().is_err());
        assert_eq!(q("E6").arrows().len(), 5);
    }

    #[test]
    fn projectives() {
        let quiver = q("A4:1>2>3<4");
        assert_eq!(quiver.projective_dims(3).to_string(), "0011");
        assert_eq!(quiver.projective_dims(2).to_string(), "0010");
        assert_eq!(q("A5:1<2<3<4<5").projective_dims(4).to_string(), "11111");
        assert_eq!(quiver.injective_dims(2).to_string(), "1111");
    }

    #[test]
    fn simples_at_nonadjacent_vertices_have_no_maps() {
        let quiver = q("A4:1>2>3<4");
        let s1 = build_indecomposable(&quiver, &"1000".parse().unwrap(), 1).unwrap();
        let s3 = build_indecomposable(&quiver, &"0010".parse().unwrap(), 2).unwrap();
        assert!(hom_basis(&quiver, &s1, &s3).is_empty());
        assert!(s3.maps().iter().all(|m| m.rows() * m.cols() == 0));
    }

    #[test]
    fn indecomposables_are_bricks() {
        let quiver = q("A4:1>2>3<4");
        for root in quiver.diagram().positive_roots() {
            let v = build_indecomposable(&quiver, &root, 11).unwrap();
            let w = build_indecomposable(&quiver, &root, 12).unwrap();
            let end = hom_basis(&quiver, &v, &v);
            assert_eq!(end.len(), 1);
            assert!(is_morphism(&quiver, &v, &v, &end[0]));
            let there = hom_basis(&quiver, &v, &w).len();
            assert_eq!(there, 1);
            assert_eq!(hom_basis(&quiver, &w, &v).len(), there);
        }
        let full = build_indecomposable(&quiver, &"1111".parse().unwrap(), 5).unwrap();
        assert!(full
            .maps()
            .iter()
            .all(|m| m.rows() == 1 && m.cols() == 1 && m.get(0, 0) != 0));
    }

    #[test]
    fn direct_sum_dims() {
        let quiver = q("A3:1>2<3");
        let a = build_indecomposable(&quiver, &"010".parse().unwrap(), 1).unwrap();
        let b = build_indecomposable(&quiver, &"011".parse().unwrap(), 2).unwrap();
        let s = direct_sum(&quiver, &[(&a, 1), (&b, 1)]);
        assert_eq!(s.dims().to_string(), "021");
        assert_eq!(direct_sum(&quiver, &[(&a, 1)]), a);
    }

    #[test]
    fn rep_class_text() {
        let r: RepClass = "11100:4,01100:3,00110:1".parse().unwrap();
        assert_eq!(r.get(&"11100".parse().unwrap()), BigUint::from(4u8));
        assert_eq!(r.to_string(), "00110:1,01100:3,11100:4");
        assert_eq!(r.total_dimension(), BigUint::from(12u8 + 6 + 2));
        assert!("".parse::<RepClass>().unwrap().is_zero());
        assert!("11100:x".parse::<RepClass>().is_err());
    }
}
