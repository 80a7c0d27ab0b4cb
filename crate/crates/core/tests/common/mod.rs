#![allow(dead_code)]

use magdirac::lattice::Lattice;
use magdirac::torus::SpinCData;
use rand::Rng;

/// Random well-conditioned basis: identity plus a small perturbation, scaled.
pub fn random_lattice(rng: &mut impl Rng, n: usize) -> Lattice<f64> {
    let scale = rng.gen_range(0.7..1.6);
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| scale * (if i == j { 1.0 } else { 0.0 } + rng.gen_range(-0.3..0.3)))
                .collect()
        })
        .collect();
    Lattice::from_basis_vectors(&vectors).expect("perturbed identity is nonsingular")
}

pub fn random_data(rng: &mut impl Rng, n: usize, twist: bool, potential: bool) -> SpinCData<f64> {
    let lattice = random_lattice(rng, n);
    let delta = (0..n).map(|_| rng.gen_range(0..=1u8)).collect();
    let theta = (0..n)
        .map(|_| if twist { rng.gen_range(0.0..1.0) } else { 0.0 })
        .collect();
    let a = (0..n)
        .map(|_| {
            if potential {
                rng.gen_range(-6.0..6.0)
            } else {
                0.0
            }
        })
        .collect();
    SpinCData::new(lattice, delta, theta, a).unwrap()
}
