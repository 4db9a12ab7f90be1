//! Orbit toggles, promotion and its periodicity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::{Bound, MinusculePoset, Rpp};
use crate::quiver::Quiver;

/// Vertices in promotion order: every arrow's target before its source,
/// ties broken by index. Position `k` is the vertex relabeled `k + 1`.
pub fn admissible_labeling(quiver: &Quiver) -> Vec<usize> {
    quiver.sinks_first_order()
}

fn require_finite(rpp: &Rpp) -> Result<()> {
    match rpp.bound {
        Bound::Finite(_) => Ok(()),
        Bound::Unbounded => Err(Error::UnboundedToggle(usize::MAX)),
    }
}

/// Toggles every element of the orbit of `vertex` that lies in the poset.
pub fn orbit_toggle(rpp: &Rpp, mp: &MinusculePoset, vertex: usize) -> Result<Rpp> {
    require_finite(rpp)?;
    let mut out = rpp.clone();
    for x in mp.orbit_elements(vertex) {
        out.toggle_mut(&mp.poset, x)?;
    }
    Ok(out)
}

/// One application of `T_n o ... o T_1` with `labeling[0]` toggled first.
pub fn promotion(rpp: &Rpp, mp: &MinusculePoset, labeling: &[usize]) -> Result<Rpp> {
    require_finite(rpp)?;
    let mut out = rpp.clone();
    for &v in labeling {
        for x in mp.orbit_elements(v) {
            out.toggle_mut(&mp.poset, x)?;
        }
    }
    Ok(out)
}

/// `steps + 1` fillings starting with `rpp`.
pub fn trajectory(
    rpp: &Rpp,
    mp: &MinusculePoset,
    labeling: &[usize],
    steps: usize,
) -> Result<Vec<Rpp>> {
    let mut out = vec![rpp.clone()];
    for _ in 0..steps {
        let next = promotion(out.last().expect("nonempty"), mp, labeling)?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub h: usize,
    pub bound: u64,
    pub trials: usize,
    pub failures: usize,
    /// Smallest exact period seen among the trials.
    pub min_period: Option<usize>,
    pub passed: bool,
}

/// Applies promotion `h` times to random fillings bounded by `bound` and
/// checks that each one returns to its start.
pub fn check_periodicity(
    mp: &MinusculePoset,
    quiver: &Quiver,
    bound: u64,
    trials: usize,
    seed: u64,
) -> Result<PeriodReport> {
    let h = quiver.diagram().coxeter_number();
    let labeling = admissible_labeling(quiver);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut min_period: Option<usize> = None;
    for _ in 0..trials {
        let start = Rpp::random(&mp.poset, bound, Bound::finite(bound), &mut rng);
        let mut cur = start.clone();
        let mut period = None;
        for step in 1..=h {
            cur = promotion(&cur, mp, &labeling)?;
            cur.validate(&mp.poset)?;
            if period.is_none() && cur == start {
                period = Some(step);
            }
        }
        if cur != start {
            failures += 1;
        }
        if let Some(p) = period {
            min_period = Some(min_period.map_or(p, |m| m.min(p)));
        }
    }
    Ok(PeriodReport {
        h,
        bound,
        trials,
        failures,
        min_period,
        passed: failures == 0,
    })
}
