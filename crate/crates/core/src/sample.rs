//! Seeded random generation of polynomials, operators and decompositions.
//!
//! All randomized suites draw their inputs up front from a [`Sampler`], so a
//! given seed fixes the inputs no matter how evaluation is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::CurveRing;
use crate::obstruction::{Decomposition, OperatorPairs};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::weyl::{GeneratorWord, Symbol, WeylOp};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Numerator in [-9, 9], denominator in [1, 4].
    pub fn rational(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(-9..=9);
        let d: i64 = self.rng.gen_range(1..=4);
        Rational::new(n, d).unwrap()
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let c = self.rational();
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn index(&mut self, upper_inclusive: u32) -> u32 {
        self.rng.gen_range(0..=upper_inclusive)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Dense-ish polynomial of degree ≤ `max_deg`; each coefficient is zero with probability 1/4.
    pub fn poly(&mut self, max_deg: u32) -> Poly {
        let deg = self.index(max_deg);
        Poly::from_terms((0..=deg).filter_map(|d| {
            if self.rng.gen_ratio(1, 4) {
                None
            } else {
                Some((d, self.nonzero_rational()))
            }
        }))
    }

    pub fn nonzero_poly(&mut self, max_deg: u32) -> Poly {
        loop {
            let p = self.poly(max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// `Σ p_j ∂^j` with `deg p_j ≤ max_deg`, `j ≤ max_order`.
    pub fn operator(&mut self, max_deg: u32, max_order: u32) -> WeylOp {
        let order = self.index(max_order);
        let polys: Vec<(u32, Poly)> = (0..=order).map(|j| (j, self.poly(max_deg))).collect();
        WeylOp::from_coefficient_polys(polys.iter().map(|(j, p)| (*j, p)))
    }

    /// `λ + f·D′` with random λ and D′.
    pub fn da_element(&mut self, curve: &CurveRing, max_deg: u32, max_order: u32) -> WeylOp {
        let lambda = self.rational();
        self.da_element_with_lambda(curve, lambda, max_deg, max_order)
    }

    pub fn da_element_with_lambda(
        &mut self,
        curve: &CurveRing,
        lambda: Rational,
        max_deg: u32,
        max_order: u32,
    ) -> WeylOp {
        let dprime = self.operator(max_deg, max_order);
        &WeylOp::scalar(lambda) + &dprime.left_mul_poly(curve.f())
    }

    /// An operator outside D_A: a D_A element plus `c t^i ∂^j` with `j ≥ 1` and `i < deg f`.
    pub fn non_da_element(&mut self, curve: &CurveRing, max_deg: u32, max_order: u32) -> WeylOp {
        let base = self.da_element(curve, max_deg, max_order);
        let fdeg = curve.f().degree().unwrap();
        let i = self.index(fdeg - 1);
        let j = 1 + self.index(max_order.max(1) - 1);
        &base + &WeylOp::monomial(self.nonzero_rational(), i, j)
    }

    /// `f^power · h` with `deg h ≤ max_deg`.
    pub fn ideal_power_element(&mut self, curve: &CurveRing, power: u32, max_deg: u32) -> Poly {
        &curve.ideal_power(power) * &self.poly(max_deg)
    }

    /// `λ + f·h`.
    pub fn a_element(&mut self, curve: &CurveRing, max_deg: u32) -> Poly {
        &Poly::constant(self.rational()) + &self.ideal_power_element(curve, 1, max_deg)
    }

    /// Between 1 and `max_pairs` entries `(a_i ∈ A, D_i ∈ D_A)`.
    pub fn decomposition(
        &mut self,
        curve: &CurveRing,
        max_pairs: u32,
        max_deg: u32,
        max_order: u32,
    ) -> Decomposition {
        let n = 1 + self.index(max_pairs.max(1) - 1);
        Decomposition::new(
            (0..n)
                .map(|_| {
                    (
                        self.a_element(curve, max_deg),
                        self.da_element(curve, max_deg, max_order),
                    )
                })
                .collect(),
        )
    }

    pub fn operator_pairs(
        &mut self,
        curve: &CurveRing,
        max_pairs: u32,
        max_deg: u32,
        max_order: u32,
    ) -> OperatorPairs {
        let n = 1 + self.index(max_pairs.max(1) - 1);
        OperatorPairs::new(
            (0..n)
                .map(|_| {
                    (
                        self.da_element(curve, max_deg, max_order),
                        self.da_element(curve, max_deg, max_order),
                    )
                })
                .collect(),
        )
    }

    /// Uniform symbols, length in `[0, max_len]`, random scalar.
    pub fn word(&mut self, max_len: u32) -> GeneratorWord {
        let len = self.index(max_len);
        let symbols = (0..len)
            .map(|_| if self.coin() { Symbol::T } else { Symbol::D })
            .collect();
        GeneratorWord::new(self.nonzero_rational(), symbols)
    }
}
