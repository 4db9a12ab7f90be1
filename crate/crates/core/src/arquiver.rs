//! Auslander-Reiten quivers of Dynkin quivers, built by knitting.
//!
//! Node `(i, k)` stands for `tau^{-k} P_i`. Starting from the projectives,
//! the mesh relation `tau^{-1} X = sum_{X -> E} E - X` produces each orbit
//! until it reaches an injective.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::vector::DimVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArNode {
    pub id: usize,
    pub dims: DimVector,
    /// Vertex whose projective starts this node's orbit.
    pub orbit: usize,
    /// Number of inverse translates from that projective.
    pub slice: usize,
}

#[derive(Clone, Debug)]
pub struct ArQuiver {
    quiver: Quiver,
    nodes: Vec<ArNode>,
    arrows: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
    index: HashMap<DimVector, usize>,
}

impl ArQuiver {
    pub fn knit(quiver: &Quiver) -> Result<ArQuiver> {
        let n = quiver.num_vertices();
        let roots: HashSet<DimVector> = quiver.diagram().positive_roots().into_iter().collect();
        let injectives: HashSet<DimVector> = (0..n).map(|i| quiver.injective_dims(i)).collect();
        let order = quiver.sinks_first_order();

        let mut grid: Vec<Vec<DimVector>> =
            (0..n).map(|i| vec![quiver.projective_dims(i)]).collect();
        let mut ended: Vec<bool> = (0..n).map(|i| injectives.contains(&grid[i][0])).collect();
        let mut count = n;
        let mut k = 0;
        while ended.iter().any(|e| !e) {
            for &i in &order {
                if ended[i] {
                    continue;
                }
                let mut acc: Vec<i64> = grid[i][k].0.iter().map(|&x| -(x as i64)).collect();
                let mut add = |dv: Option<&DimVector>| {
                    if let Some(dv) = dv {
                        for (a, &x) in acc.iter_mut().zip(&dv.0) {
                            *a += x as i64;
                        }
                    }
                };
                for j in quiver.in_neighbors(i) {
                    add(grid[j].get(k));
                }
                for j in quiver.out_neighbors(i) {
                    add(grid[j].get(k + 1));
                }
                if acc.iter().any(|&x| x < 0) {
                    return Err(Error::Internal(format!(
                        "negative mesh entry at orbit {}",
                        i + 1
                    )));
                }
                let dv = DimVector(acc.into_iter().map(|x| x as u32).collect());
                if !roots.contains(&dv) {
                    return Err(Error::Internal(format!("mesh produced non-root {dv}")));
                }
                ended[i] = injectives.contains(&dv);
                grid[i].push(dv);
                count += 1;
                if count > roots.len() {
                    return Err(Error::Internal("knitting did not terminate".into()));
                }
            }
            k += 1;
        }

        let mut keys: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..grid[i].len()).map(move |k| (k, i)))
            .collect();
        keys.sort();
        let id_of: HashMap<(usize, usize), usize> = keys
            .iter()
            .enumerate()
            .map(|(id, &(k, i))| ((i, k), id))
            .collect();
        let nodes: Vec<ArNode> = keys
            .iter()
            .enumerate()
            .map(|(id, &(k, i))| ArNode {
                id,
                dims: grid[i][k].clone(),
                orbit: i,
                slice: k,
            })
            .collect();
        let mut arrows = Vec::new();
        for &(j, i) in quiver.arrows() {
            for k in 0..grid[i].len().max(grid[j].len()) {
                if let (Some(&a), Some(&b)) = (id_of.get(&(i, k)), id_of.get(&(j, k))) {
                    arrows.push((a, b));
                }
                if let (Some(&a), Some(&b)) = (id_of.get(&(j, k)), id_of.get(&(i, k + 1))) {
                    arrows.push((a, b));
                }
            }
        }
        arrows.sort();
        let mut succ = vec![Vec::new(); nodes.len()];
        let mut pred = vec![Vec::new(); nodes.len()];
        for &(a, b) in &arrows {
            succ[a].push(b);
            pred[b].push(a);
        }
        let orbits = (0..n)
            .map(|i| (0..grid[i].len()).map(|k| id_of[&(i, k)]).collect())
            .collect();
        let index = nodes.iter().map(|nd| (nd.dims.clone(), nd.id)).collect();
        if nodes.len() != roots.len() {
            return Err(Error::Internal(format!(
                "{} nodes for {} roots",
                nodes.len(),
                roots.len()
            )));
        }
        Ok(ArQuiver {
            quiver: quiver.clone(),
            nodes,
            arrows,
            succ,
            pred,
            orbits,
            index,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn nodes(&self) -> &[ArNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &ArNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn successors(&self, id: usize) -> &[usize] {
        &self.succ[id]
    }

    pub fn predecessors(&self, id: usize) -> &[usize] {
        &self.pred[id]
    }

    pub fn node_of(&self, dims: &DimVector) -> Option<usize> {
        self.index.get(dims).copied()
    }

    pub fn tau(&self, id: usize) -> Option<usize> {
        let nd = &self.nodes[id];
        nd.slice.checked_sub(1).map(|k| self.orbits[nd.orbit][k])
    }

    pub fn tau_inv(&self, id: usize) -> Option<usize> {
        let nd = &self.nodes[id];
        self.orbits[nd.orbit].get(nd.slice + 1).copied()
    }

    /// The orbit of the projective at `i`, from the projective to the injective.
    pub fn tau_orbit(&self, i: usize) -> &[usize] {
        &self.orbits[i]
    }

    /// A random linear order in which every arrow's target precedes its source.
    pub fn opposite_compatible_order(&self, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut waiting: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..self.len()).filter(|&v| waiting[v] == 0).collect();
        let mut out = Vec::with_capacity(self.len());
        while !ready.is_empty() {
            ready.shuffle(&mut rng);
            let v = ready.pop().expect("nonempty");
            out.push(v);
            for &u in &self.pred[v] {
                waiting[u] -= 1;
                if waiting[u] == 0 {
                    ready.push(u);
                }
            }
        }
        out
    }

    /// Structured text listing nodes, arrows and translation pairs.
    pub fn to_text(&self) -> String {
        let mut s = format!("quiver {}\nnodes\n", self.quiver);
        for nd in &self.nodes {
            let _ = writeln!(
                s,
                "  {} {} orbit={} slice={}",
                nd.id,
                nd.dims,
                nd.orbit + 1,
                nd.slice
            );
        }
        s.push_str("arrows\n");
        for &(a, b) in &self.arrows {
            let _ = writeln!(s, "  {} -> {}", self.nodes[a].dims, self.nodes[b].dims);
        }
        s.push_str("tau\n");
        for nd in &self.nodes {
            if let Some(t) = self.tau(nd.id) {
                let _ = writeln!(s, "  {} -> {}", nd.dims, self.nodes[t].dims);
            }
        }
        s
    }

    /// One `source target` line per arrow, for external renderers.
    pub fn edge_list(&self) -> String {
        self.arrows
            .iter()
            .map(|&(a, b)| format!("{} {}\n", self.nodes[a].dims, self.nodes[b].dims))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ar(s: &str) -> ArQuiver {
        ArQuiver::knit(&s.parse().unwrap()).unwrap()
    }

    fn dims(ar: &ArQuiver, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| ar.node(i).dims.to_string()).collect()
    }

    fn tau_of(ar: &ArQuiver, dv: &str) -> String {
        let id = ar.node_of(&dv.parse().unwrap()).unwrap();
        ar.node(ar.tau(id).unwrap()).dims.to_string()
    }

    #[test]
    fn a4_example() {
        let a = ar("A4:1>2>3<4");
        assert_eq!(a.len(), 10);
        assert_eq!(tau_of(&a, "0111"), "0010");
        assert_eq!(tau_of(&a, "1111"), "0110");
        assert_eq!(tau_of(&a, "1100"), "0111");
        assert_eq!(dims(&a, a.tau_orbit(3)), vec!["0011", "0100", "1000"]);
        assert_eq!(dims(&a, a.tau_orbit(0)), vec!["1110", "0001"]);
        assert_eq!(dims(&a, a.tau_orbit(2)), vec!["0010", "0111", "1100"]);
    }

    #[test]
    fn single_vertex() {
        let a = ar("A1");
        assert_eq!(a.len(), 1);
        assert!(a.arrows().is_empty());
        assert_eq!(a.tau(0), None);
        assert_eq!(a.opposite_compatible_order(4), vec![0]);
    }

    #[test]
    fn orbit_may_end_at_another_injective() {
        let a = ar("A3:1>2<3");
        assert_eq!(dims(&a, a.tau_orbit(0)), vec!["110", "001"]);
    }

    #[test]
    fn mesh_and_orders() {
        for s in [
            "A5:1<2<3<4<5",
            "D5:2>1,3>2,4>3,5>3",
            "E6",
            "E7:1<2<3>4<5>6,7>3",
        ] {
            let a = ar(s);
            let roots = a.quiver().diagram().positive_roots().len();
            assert_eq!(a.len(), roots);
            for nd in a.nodes() {
                if let Some(t) = a.tau_inv(nd.id) {
                    let mut sum = DimVector::zero(nd.dims.len());
                    for &e in a.successors(nd.id) {
                        sum = sum.add(&a.node(e).dims);
                    }
                    let next = a.node(t).dims.add(&nd.dims);
                    assert_eq!(sum, next, "mesh at {}", nd.dims);
                }
            }
            for seed in 0..4 {
                let order = a.opposite_compatible_order(seed);
                let pos: HashMap<usize, usize> =
                    order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
                assert_eq!(pos.len(), a.len());
                assert!(a.arrows().iter().all(|&(x, y)| pos[&y] < pos[&x]));
            }
        }
    }
}
