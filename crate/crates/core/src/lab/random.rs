//! Seeded random exact coefficients and elements.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Element, Monomial};
use crate::functions::{qcomplex, rat, LocallyConstantFunction as Lcf};
use crate::symbolic::ShiftSystem;

/// Shape of the random elements.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_power: usize,
    pub max_depth: usize,
    pub max_terms: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_power: 3,
            max_depth: 3,
            max_terms: 3,
        }
    }
}

/// A nonzero combination of one to three cylinder indicators of a common
/// length in `1..=max_depth`, with small rational complex coefficients.
pub fn random_function<R: Rng>(sys: &Arc<ShiftSystem>, rng: &mut R, max_depth: usize) -> Lcf {
    loop {
        let depth = rng.gen_range(1..=max_depth.max(1));
        let words = sys.words(depth);
        let mut f = Lcf::zero(sys.clone());
        for _ in 0..rng.gen_range(1..=3) {
            let w = &words[rng.gen_range(0..words.len())];
            let re = rat(rng.gen_range(-4..=4), rng.gen_range(1..=4));
            let im = if rng.gen_bool(0.5) {
                rat(rng.gen_range(-4..=4), rng.gen_range(1..=4))
            } else {
                rat(0, 1)
            };
            let ind = Lcf::indicator(sys.clone(), w).expect("words are admissible");
            f = &f + &ind.scale(&qcomplex(re, im));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_monomial<R: Rng>(sys: &Arc<ShiftSystem>, rng: &mut R, shape: RandomShape) -> Monomial {
    let f = random_function(sys, rng, shape.max_depth);
    let k = rng.gen_range(0..=shape.max_power);
    let l = rng.gen_range(0..=shape.max_power);
    let g = random_function(sys, rng, shape.max_depth);
    Monomial::new(f, k, l, g)
}

pub fn random_element<R: Rng>(sys: &Arc<ShiftSystem>, rng: &mut R, shape: RandomShape) -> Element {
    let n = rng.gen_range(1..=shape.max_terms.max(1));
    let terms = (0..n).map(|_| random_monomial(sys, rng, shape)).collect();
    Element::new(sys.clone(), terms)
}
