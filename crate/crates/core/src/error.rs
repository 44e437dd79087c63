use thiserror::Error;

use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("r >= 2 required, got {0} factor(s)")]
    TooFewFactors(usize),
    #[error("factor {index} is constant: {factor}")]
    ConstantFactor { index: usize, factor: Poly },
    #[error("factors not pairwise coprime: gcd(f{i}, f{j}) = {gcd}")]
    NotCoprime { i: usize, j: usize, gcd: Poly },
    #[error("factor {index} is reducible over Q: {factor} has rational root {root}")]
    Reducible {
        index: usize,
        factor: Poly,
        root: crate::Rational,
    },
    #[error("operator not in D_A")]
    NotInDa,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("decomposition entry {index}: {reason}")]
    InvalidEntry { index: usize, reason: &'static str },
    #[error("operator not in D_A")]
    NotInDa,
    #[error("operator does not map A into I")]
    DoesNotMapAIntoI,
    #[error("no raiser for constants")]
    ConstantRaiser,
    #[error("search bound exhausted at {0}")]
    BoundExhausted(u32),
}
