//! The curve datum A = k + I ⊂ k[t] with I = f·k[t], and exact membership
//! tests for A, for the powers Iⁿ, and for D_A = k + I·D_B.
//!
//! Every test reduces to a remainder computation. For D_A, write an operator
//! in normal form as `D = Σ_j p_j(t) ∂^j`; then D ∈ k + f·D_B exactly when f
//! divides every `p_j` with `j ≥ 1` and `p_0 mod f` is a constant λ, giving
//! `D = λ + f·D′`.
//!
//! For such D, `D(a) = λa + f·D′(a)`. The second summand always lies in I, and
//! λa ∈ I for every a ∈ A only when λ = 0 (take a = 1). So "D maps A into I" is
//! decided exactly by λ = 0, with no quantifier over A left to bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::CurveError;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::weyl::WeylOp;

/// What is known about a factor's irreducibility over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Degree ≤ 3 with no rational root.
    Irreducible,
    /// A rational root was found.
    Reducible(Rational),
    /// Degree > 3 (or coefficients too large to enumerate divisors); accepted unverified.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRing {
    factors: Vec<Poly>,
    f: Poly,
    irreducibility: Vec<Irreducibility>,
}

/// `D = λ + f·D′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaDecomposition {
    pub lambda: Rational,
    pub dprime: WeylOp,
}

impl DaDecomposition {
    pub fn reconstruct(&self, f: &Poly) -> WeylOp {
        &WeylOp::scalar(self.lambda.clone()) + &self.dprime.left_mul_poly(f)
    }
}

/// Why an operator fails the D_A criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DaObstruction {
    /// f does not divide the coefficient of `∂^order`.
    Coefficient {
        order: u32,
        coefficient: Poly,
        remainder: Poly,
    },
    /// `p_0 mod f` is not constant.
    ConstantPart { remainder: Poly },
}

impl std::fmt::Display for DaObstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DaObstruction::Coefficient {
                order,
                coefficient,
                remainder,
            } => write!(
                f,
                "coefficient of d^{order} is {coefficient}, remainder mod f is {remainder}"
            ),
            DaObstruction::ConstantPart { remainder } => {
                write!(f, "order-0 part has non-constant remainder {remainder} mod f")
            }
        }
    }
}

impl CurveRing {
    /// Validates `f = f_1 ⋯ f_r`: r ≥ 2, no constant factor, pairwise coprime.
    ///
    /// Reducible or unverifiable factors are accepted and reported by
    /// [`CurveRing::warnings`]. The first factor absorbs the scaling that makes
    /// f monic.
    pub fn new(factors: Vec<Poly>) -> Result<Self, CurveError> {
        Self::build(factors, false)
    }

    /// As [`CurveRing::new`], but rejects any factor of degree ≤ 3 with a rational root.
    pub fn new_strict(factors: Vec<Poly>) -> Result<Self, CurveError> {
        Self::build(factors, true)
    }

    fn build(mut factors: Vec<Poly>, strict: bool) -> Result<Self, CurveError> {
        if factors.len() < 2 {
            return Err(CurveError::TooFewFactors(factors.len()));
        }
        for (index, p) in factors.iter().enumerate() {
            if p.is_constant() {
                return Err(CurveError::ConstantFactor {
                    index,
                    factor: p.clone(),
                });
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let g = factors[i].gcd(&factors[j]).expect("factors are nonzero");
                if !g.is_constant() {
                    return Err(CurveError::NotCoprime { i, j, gcd: g });
                }
            }
        }
        let irreducibility: Vec<_> = factors.iter().map(irreducibility).collect();
        if strict {
            for (index, status) in irreducibility.iter().enumerate() {
                if let Irreducibility::Reducible(root) = status {
                    return Err(CurveError::Reducible {
                        index,
                        factor: factors[index].clone(),
                        root: root.clone(),
                    });
                }
            }
        }
        let product = factors.iter().fold(Poly::one(), |acc, p| &acc * p);
        let lc_inv = product.leading_coeff().and_then(Rational::recip).unwrap();
        factors[0] = factors[0].scale(&lc_inv);
        let f = product.scale(&lc_inv);
        Ok(CurveRing {
            factors,
            f,
            irreducibility,
        })
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    /// The monic generator of I.
    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn irreducibility(&self) -> &[Irreducibility] {
        &self.irreducibility
    }

    /// Human-readable notes about factors whose irreducibility is not established.
    pub fn warnings(&self) -> Vec<String> {
        self.irreducibility
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Irreducibility::Irreducible => None,
                Irreducibility::Reducible(root) => Some(format!(
                    "factor {} ({}) is reducible: rational root {}",
                    i + 1,
                    self.factors[i],
                    root
                )),
                Irreducibility::Unchecked => Some(format!(
                    "factor {} ({}) has degree > 3; irreducibility not checked",
                    i + 1,
                    self.factors[i]
                )),
            })
            .collect()
    }

    /// `f^n`, the generator of Iⁿ.
    pub fn ideal_power(&self, n: u32) -> Poly {
        self.f.pow(n)
    }

    /// `p mod f^n`.
    pub fn ideal_power_remainder(&self, p: &Poly, n: u32) -> Poly {
        p.rem(&self.ideal_power(n)).expect("f is nonzero")
    }

    /// Whether `p ∈ Iⁿ`, i.e. `f^n | p`. Always true for n = 0.
    pub fn ideal_power_member(&self, p: &Poly, n: u32) -> bool {
        n == 0 || self.ideal_power_remainder(p, n).is_zero()
    }

    /// `p mod f`.
    pub fn subalgebra_remainder(&self, p: &Poly) -> Poly {
        self.ideal_power_remainder(p, 1)
    }

    /// The λ with `p − λ ∈ I` when `p ∈ A = k + I`.
    pub fn subalgebra_member(&self, p: &Poly) -> Option<Rational> {
        self.subalgebra_remainder(p).as_constant()
    }

    /// Decides D ∈ D_A, returning the decomposition or the failing coefficient.
    pub fn da_membership(&self, op: &WeylOp) -> Result<DaDecomposition, DaObstruction> {
        let mut lambda = Rational::zero();
        let mut quotients = Vec::new();
        for (order, coefficient) in op.coefficient_polys() {
            let (q, rem) = coefficient.div_rem(&self.f).expect("f is nonzero");
            if order == 0 {
                lambda = rem.as_constant().ok_or(DaObstruction::ConstantPart {
                    remainder: rem.clone(),
                })?;
            } else if !rem.is_zero() {
                return Err(DaObstruction::Coefficient {
                    order,
                    coefficient,
                    remainder: rem,
                });
            }
            // For order 0 the quotient of p_0 equals that of p_0 − λ since deg λ < deg f.
            quotients.push((order, q));
        }
        let dprime = WeylOp::from_coefficient_polys(quotients.iter().map(|(j, q)| (*j, q)));
        Ok(DaDecomposition { lambda, dprime })
    }

    /// `D = λ + f·D′` when D ∈ D_A.
    pub fn da_decompose(&self, op: &WeylOp) -> Option<DaDecomposition> {
        self.da_membership(op).ok()
    }

    pub fn is_in_da(&self, op: &WeylOp) -> bool {
        self.da_decompose(op).is_some()
    }

    /// Whether `D(A) ⊆ I`, decided exactly as λ = 0.
    pub fn maps_a_into_i(&self, op: &WeylOp) -> Result<bool, CurveError> {
        self.da_decompose(op)
            .map(|dec| dec.lambda.is_zero())
            .ok_or(CurveError::NotInDa)
    }

    /// `[1, f, f t, …, f t^max_m]`, spanning A up to t-degree `deg f + max_m`.
    pub fn a_spanning_set(&self, max_m: u32) -> Vec<Poly> {
        std::iter::once(Poly::one())
            .chain(self.ideal_spanning_set(1, max_m))
            .collect()
    }

    /// `[f^power t^m : 0 ≤ m ≤ max_m]`.
    pub fn ideal_spanning_set(&self, power: u32, max_m: u32) -> Vec<Poly> {
        let g = self.ideal_power(power);
        (0..=max_m).map(|m| g.shift(m)).collect()
    }
}

/// Rational-root test for degree ≤ 3, where a rational root is the only way to factor.
fn irreducibility(p: &Poly) -> Irreducibility {
    match p.degree() {
        Some(1) => Irreducibility::Irreducible,
        Some(2) | Some(3) => match rational_root(p) {
            Some(Ok(root)) => Irreducibility::Reducible(root),
            Some(Err(())) => Irreducibility::Unchecked,
            None => Irreducibility::Irreducible,
        },
        _ => Irreducibility::Unchecked,
    }
}

/// Magnitude above which divisor enumeration is skipped.
const DIVISOR_ENUMERATION_LIMIT: u64 = 1_000_000_000_000;

/// `Some(Ok(root))` for a rational root, `None` if there is none, `Some(Err(()))`
/// when the coefficients are too large to enumerate candidates.
fn rational_root(p: &Poly) -> Option<Result<Rational, ()>> {
    let denom_lcm = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = Rational::from_integer(denom_lcm);
    let deg = p.degree()?;
    let ints: Vec<BigInt> = (0..=deg)
        .map(|d| (&p.coeff(d) * &scale).numer().clone())
        .collect();
    if ints[0].is_zero() {
        return Some(Ok(Rational::zero()));
    }
    let limit = BigInt::from(DIVISOR_ENUMERATION_LIMIT);
    let (a0, an) = (ints[0].abs(), ints[deg as usize].abs());
    if a0 > limit || an > limit {
        return Some(Err(()));
    }
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for sign in [1i64, -1] {
                let cand = Rational::new(&num * sign, den.clone()).unwrap();
                if p.eval(&cand).is_zero() {
                    return Some(Ok(cand));
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}
