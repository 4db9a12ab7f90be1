use std::collections::HashMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use quiver_rpp::arquiver::ArQuiver;
use quiver_rpp::bijection::RppBijection;
use quiver_rpp::dynamics::{admissible_labeling, orbit_toggle, promotion};
use quiver_rpp::dynkin::DynkinDiagram;
use quiver_rpp::genfun::{count_rpps_by_weight, count_via_bijection};
use quiver_rpp::jordan::JordanEngine;
use quiver_rpp::linalg::{self, Matrix};
use quiver_rpp::poset::{minuscule_poset, Bound, Poset, Rpp};
use quiver_rpp::quiver::{
    build_indecomposable, direct_sum, hom_basis, is_morphism, Quiver, RepClass,
};
use quiver_rpp::typea::{
    dimvec_to_rimhook, hg_extract, hg_insert, rimhook_to_dimvec, Grid, RectShape,
};
use quiver_rpp::verify::{orientation_samples, random_rep, supported_cases};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diagrams() -> Vec<DynkinDiagram> {
    DynkinDiagram::supported(6, 6, true)
}

fn any_case() -> impl Strategy<Value = (Quiver, usize)> {
    let cases = supported_cases(1);
    (0..cases.len()).prop_map(move |k| (cases[k].quiver.clone(), cases[k].m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn toggles_preserve_rpps_and_commute((q, m) in any_case(), seed in any::<u64>(), cap in 1u64..6) {
        let mp = minuscule_poset(&ArQuiver::knit(&q).unwrap(), m).unwrap();
        let p = &mp.poset;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rpp = Rpp::random(p, cap, Bound::finite(cap), &mut rng);
        for x in 0..p.len() {
            let t = rpp.toggle(p, x).unwrap();
            t.validate(p).unwrap();
            prop_assert_eq!(t.toggle(p, x).unwrap(), rpp.clone());
            for y in 0..p.len() {
                if x != y && !p.is_cover(x, y) && !p.is_cover(y, x) {
                    let xy = t.toggle(p, y).unwrap();
                    let yx = rpp.toggle(p, y).unwrap().toggle(p, x).unwrap();
                    prop_assert_eq!(xy, yx);
                }
            }
        }
    }

    #[test]
    fn orbits_contain_no_covers((q, m) in any_case()) {
        let mp = minuscule_poset(&ArQuiver::knit(&q).unwrap(), m).unwrap();
        for i in 0..q.num_vertices() {
            let orbit = mp.orbit_elements(i);
            for &x in &orbit {
                for &y in &orbit {
                    prop_assert!(!mp.poset.is_cover(x, y));
                }
            }
            for w in orbit.windows(2) {
                prop_assert!(mp.poset.leq(w[0], w[1]));
            }
        }
    }

    #[test]
    fn bijection_preserves_weight_and_inverts((q, m) in any_case(), seed in any::<u64>()) {
        let bij = RppBijection::new(&ArQuiver::knit(&q).unwrap(), m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = random_rep(&bij, 6, &mut rng);
        let rpp = bij.to_rpp(&rep, seed).unwrap();
        rpp.validate(&bij.poset().poset).unwrap();
        let weight: BigInt = bij
            .poset()
            .info
            .iter()
            .map(|e| BigInt::from(rep.get(&e.dims)) * BigInt::from(e.dim))
            .sum();
        prop_assert_eq!(rpp.weight(), weight);
        prop_assert_eq!(bij.from_rpp(&rpp, seed ^ 1).unwrap(), rep);
    }

    #[test]
    fn intermediate_fillings_are_rpps_on_visited((q, m) in any_case(), seed in any::<u64>()) {
        let bij = RppBijection::new(&ArQuiver::knit(&q).unwrap(), m).unwrap();
        let p = &bij.poset().poset;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = random_rep(&bij, 4, &mut rng);
        let (_, steps) = bij.trace(&rep, seed).unwrap();
        for step in steps {
            for (x, y) in p.covers() {
                if let (Some(a), Some(b)) = (&step.values[x], &step.values[y]) {
                    prop_assert!(a >= b);
                }
                if step.values[x].is_some() {
                    prop_assert!(step.values[y].is_some());
                }
            }
        }
    }

    #[test]
    fn inverse_rejects_non_rpps((q, m) in any_case(), seed in any::<u64>()) {
        let bij = RppBijection::new(&ArQuiver::knit(&q).unwrap(), m).unwrap();
        let p = &bij.poset().poset;
        prop_assume!(!p.covers().is_empty());
        let (x, _) = p.covers()[seed as usize % p.covers().len()];
        let mut rpp = Rpp::zero(p, Bound::Unbounded);
        for y in p.upper_covers(x) {
            rpp.values[*y] = BigInt::from(1);
        }
        prop_assert!(bij.from_rpp(&rpp, 0).is_err());
    }

    #[test]
    fn hom_spaces_are_additive(seed in any::<u64>()) {
        let q: Quiver = "D4:2>1,3>2,2>4".parse().unwrap();
        let roots = q.diagram().positive_roots();
        let pick = |k: u64| roots[(k % roots.len() as u64) as usize].clone();
        let v = build_indecomposable(&q, &pick(seed), seed).unwrap();
        let w = build_indecomposable(&q, &pick(seed / 7), seed ^ 3).unwrap();
        let u = build_indecomposable(&q, &pick(seed / 49), seed ^ 5).unwrap();
        let vw = direct_sum(&q, &[(&v, 1), (&w, 1)]);
        let sum = hom_basis(&q, &v, &u).len() + hom_basis(&q, &w, &u).len();
        let basis = hom_basis(&q, &vw, &u);
        prop_assert_eq!(basis.len(), sum);
        for theta in &basis {
            prop_assert!(is_morphism(&q, &vw, &u, theta));
        }
    }

    #[test]
    fn rim_hooks_round_trip(rows in 1usize..6, cols in 1usize..6, a in 0usize..10, b in 0usize..10) {
        let shape = RectShape::new(rows, cols).unwrap();
        let m = shape.minuscule_vertex();
        let (lo, hi) = (a.min(m), m + b % (shape.rank() - m));
        let mut dv = quiver_rpp::DimVector::zero(shape.rank());
        for j in lo..=hi {
            dv.0[j] = 1;
        }
        let hook = dimvec_to_rimhook(&dv, shape).unwrap();
        prop_assert_eq!(hook.cells.len(), hi - lo + 1);
        prop_assert_eq!(rimhook_to_dimvec(&hook, shape).unwrap(), dv);
    }

    #[test]
    fn hillman_grassl_inverts(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let shape = RectShape::new(rows, cols).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Poset::chain_product(rows, cols);
        // (i, j) is above-left of (i+1, j) and (i, j+1) in English notation
        let rpp = Rpp::random(&p, 7, Bound::Unbounded, &mut rng);
        let mut grid = Grid::zeros(shape);
        for r in 0..rows {
            for c in 0..cols {
                grid.set(r, c, rpp.values[(rows - 1 - r) * cols + (cols - 1 - c)].clone());
            }
        }
        grid.validate().unwrap();
        let hooks = hg_extract(&grid).unwrap();
        prop_assert_eq!(hg_insert(&hooks, shape).unwrap(), grid.clone());
        let total: BigInt = hooks.0.iter().map(|(dv, c)| BigInt::from(c.clone()) * BigInt::from(dv.total())).sum();
        prop_assert_eq!(total, grid.sum());
    }

    #[test]
    fn promotion_respects_the_bound((q, m) in any_case(), seed in any::<u64>(), n in 1u64..5) {
        let mp = minuscule_poset(&ArQuiver::knit(&q).unwrap(), m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rpp = Rpp::random(&mp.poset, n, Bound::finite(n), &mut rng);
        let labeling = admissible_labeling(&q);
        let next = promotion(&rpp, &mp, &labeling).unwrap();
        next.validate(&mp.poset).unwrap();
        for v in 0..q.num_vertices() {
            let once = orbit_toggle(&rpp, &mp, v).unwrap();
            prop_assert_eq!(orbit_toggle(&once, &mp, v).unwrap(), rpp.clone());
        }
    }
}

/// Every order of the vertices in which arrow targets precede sources.
fn all_admissible(q: &Quiver) -> Vec<Vec<usize>> {
    fn go(q: &Quiver, placed: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = q.num_vertices();
        if placed.len() == n {
            out.push(placed.clone());
            return;
        }
        for v in 0..n {
            if !placed.contains(&v) && q.out_neighbors(v).all(|t| placed.contains(&t)) {
                placed.push(v);
                go(q, placed, out);
                placed.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(q, &mut Vec::new(), &mut out);
    out
}

#[test]
fn promotion_does_not_depend_on_the_admissible_labeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for d in [
        DynkinDiagram::a(4).unwrap(),
        DynkinDiagram::d(5).unwrap(),
        DynkinDiagram::e(6).unwrap(),
    ] {
        for q in orientation_samples(&d, 2, 3) {
            let ar = ArQuiver::knit(&q).unwrap();
            let labelings = all_admissible(&q);
            for m in d.minuscule_vertices() {
                let mp = minuscule_poset(&ar, m).unwrap();
                for _ in 0..10 {
                    let rpp = Rpp::random(&mp.poset, 3, Bound::finite(3), &mut rng);
                    let reference = promotion(&rpp, &mp, &labelings[0]).unwrap();
                    for l in &labelings {
                        assert_eq!(
                            promotion(&rpp, &mp, l).unwrap(),
                            reference,
                            "{q} m={}",
                            m + 1
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_toggles_commute_without_joining_covers() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for case in supported_cases(2).into_iter().step_by(5) {
        let mp = minuscule_poset(&ArQuiver::knit(&case.quiver).unwrap(), case.m).unwrap();
        let n = case.quiver.num_vertices();
        let rpp = Rpp::random(&mp.poset, 4, Bound::finite(4), &mut rng);
        for i in 0..n {
            for j in 0..n {
                let joined = mp.orbit_elements(i).iter().any(|&x| {
                    mp.orbit_elements(j)
                        .iter()
                        .any(|&y| mp.poset.is_cover(x, y) || mp.poset.is_cover(y, x))
                });
                if !joined {
                    let ij = orbit_toggle(&orbit_toggle(&rpp, &mp, i).unwrap(), &mp, j).unwrap();
                    let ji = orbit_toggle(&orbit_toggle(&rpp, &mp, j).unwrap(), &mp, i).unwrap();
                    assert_eq!(ij, ji);
                }
            }
        }
    }
}

/// Solves `projectives^T a = x` over F_p and lifts the small result.
fn coxeter_translate(q: &Quiver, x: &quiver_rpp::DimVector) -> Vec<i64> {
    let n = q.num_vertices();
    let mut aug = Matrix::zeros(n, n + 1);
    for i in 0..n {
        let p = q.projective_dims(i);
        for j in 0..n {
            aug.set(j, i, p[j] as u64);
        }
    }
    for j in 0..n {
        aug.set(j, n, x[j] as u64);
    }
    aug.rref_in_place();
    let lift = |v: u64| {
        if v > linalg::MODULUS / 2 {
            v as i64 - linalg::MODULUS as i64
        } else {
            v as i64
        }
    };
    let coeffs: Vec<i64> = (0..n).map(|i| lift(aug.get(i, n))).collect();
    let mut out = vec![0i64; n];
    for (i, a) in coeffs.iter().enumerate() {
        let inj = q.injective_dims(i);
        for j in 0..n {
            out[j] -= a * inj[j] as i64;
        }
    }
    out
}

#[test]
fn translation_agrees_with_the_coxeter_transformation() {
    for d in diagrams() {
        for q in orientation_samples(&d, 2, 9) {
            let ar = ArQuiver::knit(&q).unwrap();
            for nd in ar.nodes() {
                if let Some(t) = ar.tau(nd.id) {
                    let expected: Vec<i64> = ar.node(t).dims.0.iter().map(|&v| v as i64).collect();
                    assert_eq!(
                        coxeter_translate(&q, &nd.dims),
                        expected,
                        "{q} at {}",
                        nd.dims
                    );
                }
            }
            assert_eq!(
                (0..q.num_vertices())
                    .filter(|&i| !ar.tau_orbit(i).is_empty())
                    .count(),
                d.rank()
            );
        }
    }
}

#[test]
fn series_do_not_depend_on_orientation() {
    for d in [DynkinDiagram::a(4).unwrap(), DynkinDiagram::d(4).unwrap()] {
        let mut seen: HashMap<usize, Vec<num_bigint::BigUint>> = HashMap::new();
        for q in Quiver::all_orientations(&d) {
            let ar = ArQuiver::knit(&q).unwrap();
            for m in d.minuscule_vertices() {
                let series =
                    count_rpps_by_weight(&minuscule_poset(&ar, m).unwrap().poset, 7).unwrap();
                assert_eq!(seen.entry(m).or_insert_with(|| series.clone()), &series);
            }
        }
    }
}

#[test]
fn bijection_counts_match_enumeration_at_each_weight() {
    for case in supported_cases(4) {
        let bij = RppBijection::new(&ArQuiver::knit(&case.quiver).unwrap(), case.m).unwrap();
        if bij.poset().len() > 10 {
            continue;
        }
        let enumerated = count_rpps_by_weight(&bij.poset().poset, 6).unwrap();
        assert_eq!(count_via_bijection(&bij, 6).unwrap(), enumerated, "{case}");
    }
}

#[test]
fn jordan_data_sums_to_the_dimension() {
    let q: Quiver = "D5:2>1,3>2,4>3,3>5".parse().unwrap();
    let ar = ArQuiver::knit(&q).unwrap();
    let bij = RppBijection::new(&ar, 0).unwrap();
    let engine = JordanEngine::new(&ar, 0, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..20 {
        let rep: RepClass = random_rep(&bij, 3, &mut rng);
        let jd = engine.gen_jf(&rep, k).unwrap();
        let dim: usize = bij
            .poset()
            .info
            .iter()
            .map(|e| usize::try_from(rep.get(&e.dims)).unwrap() * e.dim as usize)
            .sum();
        assert_eq!(jd.total(), dim);
        assert_eq!(
            engine.jordan_to_rpp(&jd).unwrap().weight(),
            BigInt::from(dim)
        );
        assert_eq!(engine.gen_jf(&rep, k + 100).unwrap(), jd);
    }
}
