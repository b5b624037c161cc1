use super::*;
use crate::arith::{int_vec, Int};
use crate::causal_model::build_bell_structure;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

#[test]
fn entropy_of_small_distributions() {
    let p = JointDistribution::new(vec!["X".into()], vec![3], vec![0.5, 0.25, 0.25]).unwrap();
    assert!(close(p.entropy(), 1.5));
    let q = JointDistribution::new(vec!["X".into()], vec![2], vec![1.0, 0.0]).unwrap();
    assert_eq!(q.entropy(), 0.0);
}

#[test]
fn joint_validation() {
    let bad = JointDistribution::new(vec!["X".into()], vec![2], vec![0.6, 0.6]);
    assert!(matches!(bad, Err(Error::InvalidModel(_))));
    let short = JointDistribution::new(vec!["X".into()], vec![3], vec![0.5, 0.5]);
    assert!(short.is_err());
    let neg = JointDistribution::new(vec!["X".into()], vec![2], vec![1.5, -0.5]);
    assert!(neg.is_err());
}

#[test]
fn marginal_of_correlated_pair() {
    let p = JointDistribution::new(
        vec!["X".into(), "Y".into()],
        vec![2, 2],
        vec![0.5, 0.0, 0.0, 0.5],
    )
    .unwrap();
    let m = p.marginal(&["Y"]).unwrap();
    assert_eq!(m.probs(), &[0.5, 0.5]);
    let v = entropy_vector(&p);
    assert_eq!(v.snap(1e-9).unwrap(), int_vec(&[1, 1, 1]));
    assert!(p.marginal(&["Q"]).is_err());
}

#[test]
fn cpt_shape_errors() {
    let g = build_line_structure(2).unwrap();
    let ok = CausalModel::deterministic(g.clone(), vec![2, 2, 2], |_, pv| pv[0]);
    assert!(ok.is_ok());
    let mut cpts: Vec<Cpt> = (0..3).map(|v| ok.as_ref().unwrap().cpt(v).clone()).collect();
    cpts[0].rows.pop();
    assert!(matches!(
        CausalModel::new(g.clone(), vec![2, 2, 2], cpts),
        Err(Error::InvalidModel(_))
    ));
    let mut cpts: Vec<Cpt> = (0..3).map(|v| ok.as_ref().unwrap().cpt(v).clone()).collect();
    cpts[2].rows[0] = vec![0.7, 0.7];
    assert!(CausalModel::new(g, vec![2, 2, 2], cpts).is_err());
}

#[test]
fn compiled_model_marginalises_to_observed() {
    let m = witness_line(1, 2, 2).unwrap();
    let joint = m.compile();
    assert_eq!(joint.names().len(), 3);
    let total: f64 = joint.probs().iter().sum();
    assert!(close(total, 1.0));
    let obs = m.observed_joint();
    assert_eq!(obs.names(), &["X1".to_string(), "X2".to_string()]);
    // X1 = X2 = C1
    assert_eq!(obs.probs(), &[0.5, 0.0, 0.0, 0.5]);
}

/// Entropy of a witness on a set: one bit per hidden node touched by the
/// set within the witness window, recomputed from the definition.
fn witness_entropy_oracle(i: usize, j: usize, n: usize, set: &[usize]) -> i64 {
    if n == 1 {
        return 1;
    }
    if i == j {
        return set.contains(&i) as i64;
    }
    // the hidden Ck with i <= k < j are fair bits; Xk reveals a parity of
    // its neighbours, so a set of positions in [i, j] has entropy equal to
    // the rank of those parities over GF(2)
    let inside: Vec<usize> = set.iter().copied().filter(|&k| k >= i && k <= j).collect();
    let mut rows: Vec<u64> = inside
        .iter()
        .map(|&k| {
            let mut r = 0u64;
            if k > i {
                r |= 1 << (k - 1);
            }
            if k < j {
                r |= 1 << k;
            }
            r
        })
        .collect();
    let mut rank = 0;
    for bit in 0..64 {
        if let Some(p) = rows.iter().position(|&r| r & (1 << bit) != 0) {
            let pivot = rows.remove(p);
            for r in rows.iter_mut() {
                if *r & (1 << bit) != 0 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

#[test]
fn witness_entropies_match_parity_rank() {
    for n in 1..=5 {
        for i in 1..=n {
            for j in i..=n {
                let v = entropy_vector(&witness_line(i, j, n).unwrap().observed_joint());
                let snapped = v.snap(1e-9).unwrap();
                for (k, &s) in v.index.subsets().iter().enumerate() {
                    let set: Vec<usize> = (0..n).filter(|b| s & (1 << b) != 0).map(|b| b + 1).collect();
                    let want = witness_entropy_oracle(i, j, n, &set);
                    assert_eq!(snapped[k], Int::from(want), "D({i},{j}) on P{n}, set {set:?}");
                }
            }
        }
    }
}

#[test]
fn witness_argument_errors() {
    assert!(witness_line(0, 1, 3).is_err());
    assert!(witness_line(2, 1, 3).is_err());
    assert!(witness_line(1, 4, 3).is_err());
}

fn xor_setting_model() -> CausalModel {
    // X = A xor C2, Y = C2 xor C3, Z = B xor C3
    CausalModel::deterministic(build_setting_line(), vec![2; 7], |_, pv| pv.iter().fold(0, |a, b| a ^ b))
        .unwrap()
}

#[test]
fn post_selection_of_xor_model() {
    let m = xor_setting_model();
    let p = post_select_joint(&m).unwrap();
    let support: Vec<Vec<usize>> = (0..p.probs().len())
        .filter(|&f| p.probs()[f] > 0.0)
        .map(|f| p.outcome(f))
        .collect();
    assert_eq!(support.len(), 4);
    for o in &support {
        assert!(close(p.prob(o), 0.25));
        assert_eq!(o[0] ^ o[1], 1);
        assert_eq!(o[3] ^ o[4], 1);
        assert_eq!(o[0] ^ o[2] ^ o[3], 0);
    }
}

#[test]
fn post_selection_marginals_match_conditionals() {
    let g = build_setting_line();
    let m = CausalModel::from_rule(g, vec![2, 3, 2, 2, 2, 3, 2], |v, pv| {
        let d = [2, 3, 2, 2, 2, 3, 2][v];
        let seed = pv.iter().fold(v + 1, |a, &b| a * 7 + b + 1);
        let raw: Vec<f64> = (0..d).map(|k| ((seed * 31 + k * 17) % 11 + 1) as f64).collect();
        let s: f64 = raw.iter().sum();
        raw.iter().map(|x| x / s).collect()
    })
    .unwrap();
    let p = post_select_joint(&m).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            let cond = setting_conditional(&m, a, b).unwrap();
            let marg = p.marginal_positions(&[a, 2, 3 + b]);
            for (x, y) in cond.probs().iter().zip(marg.probs()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn post_selection_needs_binary_settings() {
    let m = CausalModel::deterministic(build_setting_line(), vec![3, 2, 2, 2, 2, 2, 2], |_, _| 0).unwrap();
    assert!(post_select_joint(&m).is_err());
    let wrong = witness_line(1, 2, 3).unwrap();
    assert!(post_select_joint(&wrong).is_err());
}

#[test]
fn split_witness_gives_marginal_ray() {
    let m = witness_line(2, 3, 3).unwrap();
    let p = split_p3_witness(&m, SplitMode::Copy, SplitMode::Keep0).unwrap();
    let v = entropy_vector(&p).snap(1e-9).unwrap();
    let index = CoordinateIndex::restricted(p.names().to_vec(), |s| s & 0b11 != 0b11 && s & 0b11000 != 0b11000)
        .unwrap();
    let full = CoordinateIndex::full(p.names().to_vec());
    let restricted: Vec<i64> = index
        .subsets()
        .iter()
        .map(|&s| v[full.position(s).unwrap()].to_i64().unwrap())
        .collect();
    assert_eq!(restricted, vec![0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1]);
}

#[test]
fn split_modes_parse() {
    assert_eq!("copy".parse::<SplitMode>().unwrap(), SplitMode::Copy);
    assert_eq!("keep1".parse::<SplitMode>().unwrap(), SplitMode::Keep1);
    assert!("both".parse::<SplitMode>().is_err());
}

fn uniform_independent() -> Vec<f64> {
    vec![0.25; 4]
}

#[test]
fn bc_functional_reaches_three_bits() {
    let t = BcTables::from_array(
        2,
        2,
        [
            vec![0.5, 0.0, 0.0, 0.5],
            uniform_independent(),
            uniform_independent(),
            uniform_independent(),
        ],
    );
    assert!(close(bc_functional(&t).unwrap(), 3.0));
}

#[test]
fn bc_functional_errors() {
    let mut t = BcTables::from_array(2, 2, [vec![0.25; 4], vec![0.25; 4], vec![0.25; 4], vec![0.5; 2]]);
    assert!(bc_functional(&t).is_err());
    t.tables.remove("11");
    assert!(matches!(bc_functional(&t), Err(Error::Format { .. })));

    // setting B = 1 never occurs
    let m = CausalModel::from_rule(build_bell_structure(), vec![2; 5], |v, pv| {
        if v == 3 {
            vec![1.0, 0.0]
        } else if pv.is_empty() {
            vec![0.5, 0.5]
        } else {
            vec![1.0, 0.0]
        }
    })
    .unwrap();
    assert_eq!(m.structure().nodes()[3].id, "B");
    assert!(BcTables::from_bell_model(&m).is_err());
}

#[test]
fn bc_tables_from_classical_model_are_nonnegative() {
    let m = CausalModel::deterministic(build_bell_structure(), vec![2; 5], |_, pv| pv.iter().fold(0, |a, b| a ^ b))
        .unwrap();
    let t = BcTables::from_bell_model(&m).unwrap();
    for flips in 0..8 {
        let val = bc_functional_variant(&t, flips & 1 != 0, flips & 2 != 0, flips & 4 != 0).unwrap();
        assert!(val >= -1e-12);
    }
}

#[test]
fn model_file_roundtrip() {
    let m = witness_line(1, 3, 3).unwrap();
    let file = ModelFile::from_model(&m, StructureRef::Named("pn:3".into()));
    let text = serde_json::to_string(&file).unwrap();
    let back = ModelFile::parse(&text).unwrap().build().unwrap();
    assert_eq!(back.observed_joint(), m.observed_joint());

    let mut broken = file.clone();
    broken.cpts.remove("X2");
    match broken.build() {
        Err(Error::Format { field, .. }) => assert_eq!(field, "cpts.X2"),
        other => panic!("unexpected {other:?}"),
    }
}
