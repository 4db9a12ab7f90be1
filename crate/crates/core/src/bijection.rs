//! The map from representations in the minuscule class to reverse plane
//! partitions, and its inverse.
//!
//! Indecomposables are visited in an order where every arrow's target comes
//! first. Visiting `M` writes `c_M` on top of the upper covers of `M` (when
//! `M` lies in the poset) and then toggles each later translate
//! `tau^{-l} M` that lies in the poset. Toggles are taken on the subposet of
//! elements visited so far, which is an order filter.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::arquiver::ArQuiver;
use crate::error::{Error, Result};
use crate::poset::{minuscule_poset, Bound, MinusculePoset, Rpp};
use crate::quiver::RepClass;

/// One visited indecomposable and the filling right after its step.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub node: usize,
    pub element: Option<usize>,
    pub toggled: Vec<usize>,
    pub values: Vec<Option<BigInt>>,
}

#[derive(Clone, Debug)]
pub struct RppBijection {
    ar: ArQuiver,
    poset: MinusculePoset,
    /// In-poset elements among the inverse translates of each node.
    toggles: Vec<Vec<usize>>,
}

struct Filling<'a> {
    poset: &'a MinusculePoset,
    values: Vec<BigInt>,
    visited: Vec<bool>,
}

impl Filling<'_> {
    fn top(&self, x: usize) -> BigInt {
        self.poset
            .poset
            .upper_covers(x)
            .iter()
            .map(|&y| {
                debug_assert!(self.visited[y]);
                &self.values[y]
            })
            .max()
            .cloned()
            .unwrap_or_default()
    }

    fn toggle(&mut self, x: usize) -> Result<()> {
        let bottom = self
            .poset
            .poset
            .lower_covers(x)
            .iter()
            .filter(|&&y| self.visited[y])
            .map(|&y| &self.values[y])
            .min()
            .cloned()
            .ok_or_else(|| {
                Error::Internal(format!(
                    "toggle at {} has no visited lower cover",
                    self.poset.poset.name(x)
                ))
            })?;
        self.values[x] = self.top(x) + bottom - &self.values[x];
        Ok(())
    }
}

impl RppBijection {
    pub fn new(ar: &ArQuiver, m: usize) -> Result<Self> {
        let poset = minuscule_poset(ar, m)?;
        let toggles = (0..ar.len())
            .map(|id| {
                let mut out = Vec::new();
                let mut cur = ar.tau_inv(id);
                while let Some(t) = cur {
                    out.extend(poset.element_of_node(t));
                    cur = ar.tau_inv(t);
                }
                out
            })
            .collect();
        Ok(RppBijection {
            ar: ar.clone(),
            poset,
            toggles,
        })
    }

    pub fn ar(&self) -> &ArQuiver {
        &self.ar
    }

    pub fn poset(&self) -> &MinusculePoset {
        &self.poset
    }

    /// Multiplicity per poset element; errors on summands outside the class.
    pub fn multiplicities(&self, rep: &RepClass) -> Result<Vec<BigUint>> {
        let mut out = vec![BigUint::zero(); self.poset.len()];
        for (dv, c) in &rep.0 {
            let x = self
                .poset
                .element_of_dims(dv)
                .ok_or_else(|| Error::OutsideCategory(dv.to_string()))?;
            out[x] = c.clone();
        }
        Ok(out)
    }

    pub fn rep_from_multiplicities(&self, mult: &[BigUint]) -> RepClass {
        let mut rep = RepClass::new();
        for (x, c) in mult.iter().enumerate() {
            rep.set(self.poset.info[x].dims.clone(), c.clone());
        }
        rep
    }

    pub fn to_rpp(&self, rep: &RepClass, order_seed: u64) -> Result<Rpp> {
        Ok(self.run_forward(rep, order_seed, false)?.0)
    }

    /// As [`RppBijection::to_rpp`], also returning the filling after each step.
    pub fn trace(&self, rep: &RepClass, order_seed: u64) -> Result<(Rpp, Vec<TraceStep>)> {
        self.run_forward(rep, order_seed, true)
    }

    fn run_forward(
        &self,
        rep: &RepClass,
        order_seed: u64,
        record: bool,
    ) -> Result<(Rpp, Vec<TraceStep>)> {
        let mult = self.multiplicities(rep)?;
        let mut f = Filling {
            poset: &self.poset,
            values: vec![BigInt::zero(); self.poset.len()],
            visited: vec![false; self.poset.len()],
        };
        let mut steps = Vec::new();
        for node in self.ar.opposite_compatible_order(order_seed) {
            let element = self.poset.element_of_node(node);
            if let Some(x) = element {
                f.values[x] = f.top(x) + BigInt::from(mult[x].clone());
                f.visited[x] = true;
            }
            for &y in &self.toggles[node] {
                f.toggle(y)?;
            }
            if record {
                steps.push(TraceStep {
                    node,
                    element,
                    toggled: self.toggles[node].clone(),
                    values: f
                        .values
                        .iter()
                        .zip(&f.visited)
                        .map(|(v, &seen)| seen.then(|| v.clone()))
                        .collect(),
                });
            }
        }
        Ok((
            Rpp {
                values: f.values,
                bound: Bound::Unbounded,
            },
            steps,
        ))
    }

    pub fn from_rpp(&self, rpp: &Rpp, order_seed: u64) -> Result<RepClass> {
        rpp.validate(&self.poset.poset)?;
        let mut f = Filling {
            poset: &self.poset,
            values: rpp.values.clone(),
            visited: vec![true; self.poset.len()],
        };
        let mut mult = vec![BigUint::zero(); self.poset.len()];
        for &node in self.ar.opposite_compatible_order(order_seed).iter().rev() {
            for &y in &self.toggles[node] {
                f.toggle(y)?;
            }
            if let Some(x) = self.poset.element_of_node(node) {
                let c = &f.values[x] - f.top(x);
                mult[x] = match c.to_biguint() {
                    Some(c) => c,
                    None => {
                        return Err(Error::NotInImage(format!(
                            "negative multiplicity {c} at {}",
                            self.poset.poset.name(x)
                        )))
                    }
                };
                f.values[x] = BigInt::zero();
                f.visited[x] = false;
            }
        }
        if f.values.iter().any(|v| v.sign() != Sign::NoSign) {
            return Err(Error::Internal(
                "inverse did not return to the zero filling".into(),
            ));
        }
        Ok(self.rep_from_multiplicities(&mult))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bij(q: &str, m: usize) -> RppBijection {
        RppBijection::new(&ArQuiver::knit(&q.parse().unwrap()).unwrap(), m).unwrap()
    }

    #[test]
    fn zero_maps_to_zero() {
        let b = bij("A3:1>2<3", 1);
        let rpp = b.to_rpp(&RepClass::new(), 0).unwrap();
        assert!(rpp.values.iter().all(Zero::is_zero));
        assert!(b.from_rpp(&rpp, 0).unwrap().is_zero());
    }

    #[test]
    fn summands_outside_the_class_are_rejected() {
        let b = bij("A3:1>2<3", 1);
        let rep: RepClass = "100:1".parse().unwrap();
        assert!(matches!(b.to_rpp(&rep, 0), Err(Error::OutsideCategory(_))));
    }

    #[test]
    fn small_round_trip() {
        let b = bij("A3:1>2<3", 1);
        let rep: RepClass = "010:1,011:2,110:1,111:3".parse().unwrap();
        for seed in 0..5 {
            let rpp = b.to_rpp(&rep, seed).unwrap();
            rpp.validate(&b.poset().poset).unwrap();
            assert_eq!(rpp.weight(), BigInt::from(1 + 4 + 2 + 9));
            assert_eq!(b.from_rpp(&rpp, seed + 10).unwrap(), rep);
        }
    }
}
