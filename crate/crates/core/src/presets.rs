//! The nodal cubic y² = x²(x + 1), parametrized by x ↦ t² − 1, y ↦ t(t² − 1).

use crate::curve::CurveRing;
use crate::poly::Poly;
use crate::weyl::WeylOp;

/// `[t − 1, t + 1]`, so f = t² − 1.
pub fn nodal_cubic() -> CurveRing {
    CurveRing::new(vec![Poly::from_ints(&[-1, 1]), Poly::from_ints(&[1, 1])])
        .expect("preset factors are valid")
}

/// Image of x: `t² − 1`.
pub fn nodal_cubic_x() -> Poly {
    Poly::from_ints(&[-1, 0, 1])
}

/// Image of y: `t³ − t`.
pub fn nodal_cubic_y() -> Poly {
    Poly::from_ints(&[0, -1, 0, 1])
}

/// `(t² − 1) d/dt`: maps A into I and sends t² − 1 outside I².
pub fn nodal_cubic_first_order_operator() -> WeylOp {
    WeylOp::d().left_mul_poly(&nodal_cubic_x())
}

/// `(t² − 1) d²/dt²`: sends (t² − 1)² outside I².
pub fn nodal_cubic_second_order_operator() -> WeylOp {
    WeylOp::d().pow(2).left_mul_poly(&nodal_cubic_x())
}

/// True iff `y² = x²(x + 1)` holds in k[t] and both images lie in A.
pub fn verify_embedding(curve: &CurveRing, x: &Poly, y: &Poly) -> bool {
    let relation = &(y * y) - &(&(x * x) * &(x + &Poly::one()));
    relation.is_zero()
        && curve.subalgebra_member(x).is_some()
        && curve.subalgebra_member(y).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn preset_generator() {
        assert_eq!(nodal_cubic().f(), &Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn images_lie_in_a() {
        let c = nodal_cubic();
        assert_eq!(c.subalgebra_member(&nodal_cubic_x()), Some(Rational::zero()));
        assert_eq!(c.subalgebra_member(&nodal_cubic_y()), Some(Rational::zero()));
    }

    #[test]
    fn embedding_examples() {
        let c = nodal_cubic();
        assert!(verify_embedding(&c, &nodal_cubic_x(), &nodal_cubic_y()));
        assert!(!verify_embedding(&c, &nodal_cubic_x(), &nodal_cubic_x()));
        assert!(verify_embedding(&c, &Poly::zero(), &Poly::zero()));
        // other branch of the square root
        assert!(verify_embedding(&c, &nodal_cubic_x(), &-nodal_cubic_y()));
    }
}
