//! Truncated generating functions for reverse plane partitions.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::bijection::RppBijection;
use crate::error::{Error, Result};
use crate::poset::{Poset, Rpp};

const NODE_GUARD: u64 = 100_000_000;

/// Coefficients of `prod_u 1 / (1 - q^{d_u})` up to `q^bound`.
pub fn hook_product_series(dims: &[u64], bound: usize) -> Vec<BigUint> {
    let mut series = vec![BigUint::zero(); bound + 1];
    series[0] = BigUint::from(1u8);
    for &d in dims {
        let d = d as usize;
        if d == 0 || d > bound {
            continue;
        }
        for k in d..=bound {
            let prev = series[k - d].clone();
            series[k] += prev;
        }
    }
    series
}

/// Number of reverse plane partitions of each weight up to `bound`.
pub fn count_rpps_by_weight(poset: &Poset, bound: usize) -> Result<Vec<BigUint>> {
    let order: Vec<usize> = poset.linear_extension().into_iter().rev().collect();
    let below: Vec<u64> = (0..poset.len())
        .map(|x| poset.down_size(x) as u64)
        .collect();
    let mut counts = vec![0u64; bound + 1];
    let mut values = vec![0u64; poset.len()];
    let mut nodes = 0u64;
    enumerate(
        poset,
        &order,
        &below,
        0,
        0,
        bound as u64,
        &mut values,
        &mut counts,
        &mut nodes,
    )?;
    Ok(counts.into_iter().map(BigUint::from).collect())
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    poset: &Poset,
    order: &[usize],
    below: &[u64],
    depth: usize,
    sum: u64,
    bound: u64,
    values: &mut [u64],
    counts: &mut [u64],
    nodes: &mut u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > NODE_GUARD {
        return Err(Error::TooLarge(
            "enumeration visited more than 10^8 nodes".into(),
        ));
    }
    let Some(&x) = order.get(depth) else {
        counts[sum as usize] += 1;
        return Ok(());
    };
    let lo = poset
        .upper_covers(x)
        .iter()
        .map(|&y| values[y])
        .max()
        .unwrap_or(0);
    let mut v = lo;
    // Everything below x must be at least v.
    while sum + v * (1 + below[x]) <= bound {
        values[x] = v;
        enumerate(
            poset,
            order,
            below,
            depth + 1,
            sum + v,
            bound,
            values,
            counts,
            nodes,
        )?;
        v += 1;
    }
    values[x] = 0;
    Ok(())
}

/// Counts by weight of the images of every representation of weight at
/// most `bound`, checking that images are distinct, valid and
/// weight-preserving.
pub fn count_via_bijection(bij: &RppBijection, bound: usize) -> Result<Vec<BigUint>> {
    let mp = bij.poset();
    let dims = mp.dims();
    let mut counts = vec![0u64; bound + 1];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut mult = vec![0u64; dims.len()];
    let mut result = Ok(());
    visit_multiplicities(&dims, 0, 0, bound as u64, &mut mult, &mut |mult, weight| {
        if result.is_err() {
            return;
        }
        let big: Vec<BigUint> = mult.iter().map(|&c| BigUint::from(c)).collect();
        let rep = bij.rep_from_multiplicities(&big);
        result = (|| {
            let rpp: Rpp = bij.to_rpp(&rep, 0)?;
            rpp.validate(&mp.poset)?;
            if rpp.weight().to_u64() != Some(weight) {
                return Err(Error::Internal(format!("weight of {rep} not preserved")));
            }
            if !seen.insert(rpp.values) {
                return Err(Error::Internal(format!("image of {rep} repeats")));
            }
            counts[weight as usize] += 1;
            Ok(())
        })();
    });
    result?;
    Ok(counts.into_iter().map(BigUint::from).collect())
}

fn visit_multiplicities(
    dims: &[u64],
    k: usize,
    weight: u64,
    bound: u64,
    mult: &mut [u64],
    f: &mut dyn FnMut(&[u64], u64),
) {
    if k == dims.len() {
        f(mult, weight);
        return;
    }
    let mut c = 0;
    while weight + c * dims[k] <= bound {
        mult[k] = c;
        visit_multiplicities(dims, k + 1, weight + c * dims[k], bound, mult, f);
        c += 1;
    }
    mult[k] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenfunReport {
    pub bound: usize,
    pub product: Vec<BigUint>,
    pub enumeration: Option<Vec<BigUint>>,
    pub bijection: Option<Vec<BigUint>>,
    pub passed: bool,
}

/// Compares the product formula with direct enumeration and, when
/// requested, with the bijection count.
pub fn verify_identity(
    bij: &RppBijection,
    bound: usize,
    enumerate: bool,
    via_bijection: bool,
) -> Result<GenfunReport> {
    let mp = bij.poset();
    let product = hook_product_series(&mp.dims(), bound);
    let enumeration = enumerate
        .then(|| count_rpps_by_weight(&mp.poset, bound))
        .transpose()?;
    let bijection = via_bijection
        .then(|| count_via_bijection(bij, bound))
        .transpose()?;
    let passed = enumeration.iter().chain(&bijection).all(|c| *c == product);
    Ok(GenfunReport {
        bound,
        product,
        enumeration,
        bijection,
        passed,
    })
}
