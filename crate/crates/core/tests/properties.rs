mod common;

use entrocone::arith::Int;
use entrocone::causal_model::{build_bell_structure, build_line_structure};
use entrocone::distributions::{bc_functional, entropy_vector, witness_line, BcTables};
use entrocone::entropy_space::{all_nodes_index, classical_ci_system, elemental_shannon_system};
use entrocone::polyhedra::{
    cones_equal, remove_redundancies, remove_redundancies_verbose, Cone,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compiled_models_satisfy_shannon_and_ci(seed in any::<u64>(), n in 2usize..=4, bell in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = if bell { build_bell_structure() } else { build_line_structure(n).unwrap() };
        let sizes: Vec<usize> = (0..g.len()).map(|_| rng.random_range(1..=3)).collect();
        let model = common::random_model(&mut rng, &g, sizes);
        let ev = entropy_vector(&model.compile());
        let shannon = elemental_shannon_system(&g.node_names()).unwrap();
        for f in &shannon.inequalities {
            prop_assert!(f.evaluate(&ev).unwrap() >= -1e-9, "{}", f.render(&ev.index));
        }
        assert_eq!(all_nodes_index(&g), ev.index);
        for f in classical_ci_system(&g) {
            prop_assert!(f.evaluate(&ev).unwrap().abs() < 1e-9, "{}", f.render(&ev.index));
        }
    }

    #[test]
    fn bc_functional_ignores_outcome_relabelling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (dx, dy) = (rng.random_range(2..=3usize), rng.random_range(2..=3usize));
        let tables: [Vec<f64>; 4] = std::array::from_fn(|_| common::simplex_point(&mut rng, dx * dy));
        let mut px: Vec<usize> = (0..dx).collect();
        let mut py: Vec<usize> = (0..dy).collect();
        px.rotate_left(1);
        py.reverse();
        let relabelled: [Vec<f64>; 4] = std::array::from_fn(|k| {
            let mut t = vec![0.0; dx * dy];
            for x in 0..dx {
                for y in 0..dy {
                    t[px[x] * dy + py[y]] = tables[k][x * dy + y];
                }
            }
            t
        });
        let a = bc_functional(&BcTables::from_array(dx, dy, tables)).unwrap();
        let b = bc_functional(&BcTables::from_array(dx, dy, relabelled)).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn redundancy_removal_keeps_the_cone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.random_range(2..=5);
        let m = rng.random_range(1..=10);
        let h = common::random_hrep(&mut rng, dim, m, false);
        let (out, certs) = remove_redundancies_verbose(&h);
        prop_assert!(cones_equal(&Cone::H(h.clone()), &Cone::H(out.clone())).unwrap());
        prop_assert_eq!(&out, &remove_redundancies(&h));
        for c in certs {
            // the certificate reconstructs the dropped row exactly
            let mut sum = vec![BigRational::zero(); dim];
            for (i, w) in &c.weights {
                prop_assert!(*w > BigRational::zero());
                for k in 0..dim {
                    sum[k] += w * BigRational::from_integer(out.inequalities[*i][k].to_big());
                }
            }
            for (j, w) in &c.eq_weights {
                for k in 0..dim {
                    sum[k] += w * BigRational::from_integer(out.equalities[*j][k].to_big());
                }
            }
            for k in 0..dim {
                prop_assert_eq!(&sum[k], &BigRational::from_integer(c.row[k].to_big()));
            }
        }
    }
}

#[test]
fn deterministic_witnesses_are_dyadic() {
    for n in 1..=6 {
        for i in 1..=n {
            for j in i..=n {
                let ev = entropy_vector(&witness_line(i, j, n).unwrap().observed_joint());
                for &x in &ev.values {
                    assert!((x - x.round()).abs() < 1e-10);
                }
                let snapped = ev.snap(1e-10).unwrap();
                assert!(snapped.iter().all(|x| *x >= Int::ZERO));
            }
        }
    }
}
