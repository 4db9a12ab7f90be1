//! Generic Jordan data of nilpotent endomorphisms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arquiver::ArQuiver;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, MODULUS};
use crate::poset::{minuscule_poset, Bound, MinusculePoset, Rpp};
use crate::quiver::{
    direct_sum, is_morphism, IndecomposableFamily, Morphism, RepClass, Representation,
};

const MAX_MULTIPLICITY: usize = 256;
const SAMPLES: usize = 3;
const ROUNDS: usize = 4;

/// One partition per quiver vertex, parts in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanData(pub Vec<Vec<usize>>);

impl JordanData {
    pub fn total(&self) -> usize {
        self.0.iter().flatten().sum()
    }
}

impl fmt::Display for JordanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|p| {
                format!(
                    "({})",
                    p.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
///
/// Powers are taken on a basis of the image only, so each step costs one
/// product with a shrinking matrix.
pub fn jordan_type(mat: &Matrix) -> Result<Vec<usize>> {
    if !mat.is_square() {
        return Err(Error::JordanData(
            "Jordan type of a non-square matrix".into(),
        ));
    }
    let n = mat.rows();
    let mut ranks = vec![n];
    let mut image = mat.clone();
    loop {
        let mut t = image.transpose();
        let pivots = t.rref_in_place();
        let r = pivots.len();
        if r == *ranks.last().expect("nonempty") && r > 0 {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
        if r == 0 {
            break;
        }
        let mut basis = Matrix::zeros(n, r);
        for (k, _) in pivots.iter().enumerate() {
            for i in 0..n {
                basis.set(i, k, t.get(k, i));
            }
        }
        image = mat.mul(&basis);
    }
    // at_least[s] = number of blocks of size > s
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for s in (0..at_least.len()).rev() {
        let exact = at_least[s] - at_least.get(s + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(s + 1, exact));
    }
    Ok(parts)
}

/// Representatives and Hom bases for one minuscule class, reused across
/// every representation that is sampled.
#[derive(Clone, Debug)]
pub struct JordanEngine {
    family: IndecomposableFamily,
    poset: MinusculePoset,
}

impl JordanEngine {
    pub fn new(ar: &ArQuiver, m: usize, seed: u64) -> Result<Self> {
        let poset = minuscule_poset(ar, m)?;
        let roots: Vec<_> = poset.info.iter().map(|e| e.dims.clone()).collect();
        let family = IndecomposableFamily::new(ar.quiver(), &roots, seed)?;
        Ok(JordanEngine { family, poset })
    }

    pub fn poset(&self) -> &MinusculePoset {
        &self.poset
    }

    fn multiplicities(&self, rep: &RepClass) -> Result<Vec<usize>> {
        let mut out = vec![0; self.poset.len()];
        for (dv, c) in &rep.0 {
            let x = self
                .poset
                .element_of_dims(dv)
                .ok_or_else(|| Error::OutsideCategory(dv.to_string()))?;
            out[x] = c
                .to_usize()
                .filter(|&c| c <= MAX_MULTIPLICITY)
                .ok_or_else(|| Error::TooLarge(format!("multiplicity {c} of {dv}")))?;
        }
        Ok(out)
    }

    /// The direct sum and a random nilpotent endomorphism of it.
    pub fn generic_nilpotent_endo(
        &self,
        rep: &RepClass,
        seed: u64,
    ) -> Result<(Representation, Morphism)> {
        let quiver = self.family.quiver();
        let n = quiver.num_vertices();
        let mult = self.multiplicities(rep)?;
        let parts: Vec<(&Representation, usize)> = mult
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(x, &c)| (self.family.rep(x), c))
            .collect();
        let v = direct_sum(quiver, &parts);

        // blocks[b] = (element, copy) in direct-sum order
        let blocks: Vec<(usize, usize)> = mult
            .iter()
            .enumerate()
            .flat_map(|(x, &c)| (0..c).map(move |k| (x, k)))
            .collect();
        let mut offsets = vec![vec![0usize; n]; blocks.len()];
        let mut running = vec![0usize; n];
        for (b, &(x, _)) in blocks.iter().enumerate() {
            offsets[b].copy_from_slice(&running);
            for (i, r) in running.iter_mut().enumerate() {
                *r += self.poset.info[x].dims[i] as usize;
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut phi: Vec<Matrix> = (0..n)
            .map(|i| Matrix::zeros(running[i], running[i]))
            .collect();
        for (s, &(xs, ks)) in blocks.iter().enumerate() {
            for (t, &(xt, kt)) in blocks.iter().enumerate() {
                if xs == xt && kt >= ks {
                    continue;
                }
                for h in self.family.homs(xs, xt) {
                    let coeff = rng.gen_range(1..MODULUS);
                    for (i, m) in h.0.iter().enumerate() {
                        phi[i].add_scaled_block(offsets[t][i], offsets[s][i], m, coeff);
                    }
                }
            }
        }
        let phi = Morphism(phi);
        if !is_morphism(quiver, &v, &v, &phi) {
            return Err(Error::Internal(
                "sampled endomorphism does not intertwine".into(),
            ));
        }
        Ok((v, phi))
    }

    fn sample(&self, rep: &RepClass, seed: u64) -> Result<JordanData> {
        let (_, phi) = self.generic_nilpotent_endo(rep, seed)?;
        let parts = phi.0.iter().map(jordan_type).collect::<Result<Vec<_>>>()?;
        Ok(JordanData(parts))
    }

    /// Generic Jordan data: several independent samples must agree.
    pub fn gen_jf(&self, rep: &RepClass, seed: u64) -> Result<JordanData> {
        let mut last = None;
        for round in 0..ROUNDS {
            let base = seed
                .wrapping_mul(0x2545_F491_4F6C_DD1D)
                .wrapping_add((round * SAMPLES) as u64);
            let first = self.sample(rep, base)?;
            let mut agree = true;
            for k in 1..SAMPLES {
                if self.sample(rep, base.wrapping_add(k as u64))? != first {
                    agree = false;
                    break;
                }
            }
            if agree {
                return Ok(first);
            }
            last = Some(first);
        }
        Err(Error::GenericityFailure(format!(
            "{rep} gave disagreeing samples, last {}",
            last.map(|j| j.to_string()).unwrap_or_default()
        )))
    }

    pub fn jordan_to_rpp(&self, jd: &JordanData) -> Result<Rpp> {
        jordan_to_rpp(jd, &self.poset)
    }
}

/// Writes each vertex's partition along its orbit, largest part at the
/// projective end.
pub fn jordan_to_rpp(jd: &JordanData, mp: &MinusculePoset) -> Result<Rpp> {
    let mut rpp = Rpp::zero(&mp.poset, Bound::Unbounded);
    for (i, parts) in jd.0.iter().enumerate() {
        let elems = mp.orbit_elements(i);
        if parts.len() > elems.len() {
            return Err(Error::JordanData(format!(
                "vertex {} has {} parts but its orbit meets the poset {} times",
                i + 1,
                parts.len(),
                elems.len()
            )));
        }
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        for (&x, &p) in elems.iter().zip(&sorted) {
            rpp.values[x] = BigInt::from(p);
        }
    }
    rpp.validate(&mp.poset)
        .map_err(|e| Error::JordanData(format!("filling is not order-reversing: {e}")))?;
    Ok(rpp)
}
