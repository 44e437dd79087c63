//! Randomized containment suites for the universally quantified statements.
//!
//! Inputs are drawn sequentially from a seeded [`Sampler`]; only evaluation
//! fans out, so reports are identical in both execution modes.

use std::fmt;

use crate::curve::CurveRing;
use crate::exec::Exec;
use crate::obstruction::{
    build_condition2_witness, mu_lower, psi_apply, Decomposition, OperatorPairs,
};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::sample::Sampler;
use crate::weyl::WeylOp;

/// Degree and order cap for sampled operators and polynomials.
pub const SAMPLE_CAP: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub samples: usize,
    pub passed: usize,
    /// Index of the first failing sample.
    pub first_failure: Option<usize>,
}

impl SuiteReport {
    fn from_results(results: &[bool]) -> Self {
        SuiteReport {
            samples: results.len(),
            passed: results.iter().filter(|&&ok| ok).count(),
            first_failure: results.iter().position(|&ok| !ok),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.passed, self.samples)
    }
}

/// `D(g) ∈ I` for random `D = λ + f·D′ ∈ D_A` and `g = f·h ∈ I`.
pub fn ideal_preservation_suite(
    curve: &CurveRing,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> SuiteReport {
    let mut s = Sampler::new(seed);
    let cases: Vec<(WeylOp, Poly)> = (0..samples)
        .map(|_| {
            (
                s.da_element(curve, SAMPLE_CAP, SAMPLE_CAP),
                s.ideal_power_element(curve, 1, SAMPLE_CAP),
            )
        })
        .collect();
    let results = exec.map(&cases, |(d, g)| curve.ideal_power_member(&d.apply(g), 1));
    SuiteReport::from_results(&results)
}

/// `E(f t^m) ∈ I²` for `m ≤ bound` and `E = Ψ_D(dec)`, over random decompositions.
///
/// Even samples use the constructed witness operator; odd samples use a random
/// `D = f·D′` (λ = 0). For the witness, each sample also requires `D ≠ Ψ_D(dec)`.
pub fn psi_image_suite(
    curve: &CurveRing,
    samples: usize,
    seed: u64,
    bound: u32,
    exec: Exec,
) -> SuiteReport {
    let witness = build_condition2_witness(curve).operator;
    let mut s = Sampler::new(seed);
    let cases: Vec<(bool, WeylOp, Decomposition)> = (0..samples)
        .map(|k| {
            let is_witness = k % 2 == 0;
            let op = if is_witness {
                witness.clone()
            } else {
                s.da_element_with_lambda(curve, Rational::zero(), 4, 4)
            };
            (is_witness, op, s.decomposition(curve, 3, 4, 4))
        })
        .collect();
    let spanning = curve.ideal_spanning_set(1, bound);
    let results = exec.map(&cases, |(is_witness, op, dec)| {
        let Ok(e) = psi_apply(curve, op, dec) else {
            return false;
        };
        let contained = spanning
            .iter()
            .all(|g| curve.ideal_power_member(&e.apply(g), 2));
        contained && (!is_witness || e != *op)
    });
    SuiteReport::from_results(&results)
}

/// `μ₋(Σ D1_i ⊗ D2_i)(a ⊗ b) ∈ I²` for random operator pairs in D_A and `a, b ∈ I`.
pub fn mu_lower_suite(curve: &CurveRing, samples: usize, seed: u64, exec: Exec) -> SuiteReport {
    let mut s = Sampler::new(seed);
    let cases: Vec<(OperatorPairs, Poly, Poly)> = (0..samples)
        .map(|_| {
            (
                s.operator_pairs(curve, 2, 4, 4),
                s.ideal_power_element(curve, 1, 4),
                s.ideal_power_element(curve, 1, 4),
            )
        })
        .collect();
    let results = exec.map(&cases, |(pairs, a, b)| {
        mu_lower(curve, pairs, a, b)
            .map(|v| curve.ideal_power_member(&v, 2))
            .unwrap_or(false)
    });
    SuiteReport::from_results(&results)
}
