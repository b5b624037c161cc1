#![allow(dead_code)]

use entrocone::arith::{Int, IntVec};
use entrocone::causal_model::CausalStructure;
use entrocone::distributions::{CausalModel, Cpt};
use entrocone::polyhedra::HRep;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn simplex_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}

/// Model with every CPT row drawn uniformly from the simplex.
pub fn random_model(rng: &mut ChaCha8Rng, g: &CausalStructure, sizes: Vec<usize>) -> CausalModel {
    let cpts = (0..g.len())
        .map(|v| {
            let rows: usize = g.parents(v).iter().map(|&p| sizes[p]).product();
            Cpt {
                rows: (0..rows).map(|_| simplex_point(rng, sizes[v])).collect(),
            }
        })
        .collect();
    CausalModel::new(g.clone(), sizes, cpts).expect("sampled model is valid")
}

pub fn random_hrep(rng: &mut ChaCha8Rng, dim: usize, m: usize, with_equality: bool) -> HRep {
    let row = |rng: &mut ChaCha8Rng| -> IntVec {
        loop {
            let r: IntVec = (0..dim).map(|_| Int::from(rng.random_range(-3i64..=3))).collect();
            if r.iter().any(|x| !x.is_zero()) {
                return r;
            }
        }
    };
    let ineqs = (0..m).map(|_| row(rng)).collect();
    let eqs = if with_equality { vec![row(rng)] } else { Vec::new() };
    HRep::new(dim, eqs, ineqs).expect("random rows have the right length")
}
