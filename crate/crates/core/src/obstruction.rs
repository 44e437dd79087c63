//! The evaluation map Ψ, the maps μ₋ and μ*, the counit, and the witness
//! operators that obstruct local projectivity and a compatible comultiplication.
//!
//! Elements of `A ⊗ D_A` and `D_A ⊗_A D_A` are handled as explicit finite
//! lists of pairs. The containments used below (`D(a)·D′(I) ⊆ I²` and
//! `D₁(a)·D₂(b) ∈ I²` for `a, b ∈ I`) hold termwise for any representative, so
//! no normal form for the tensor products is needed. Whether μ₋ is well defined
//! on `D_A ⊗_A D_A` itself (which depends on the right A-action on the first
//! factor) is not decided here.

use crate::curve::CurveRing;
use crate::error::ObstructionError;
use crate::exec::Exec;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::weyl::WeylOp;

/// Representative `Σ a_i ⊗ D_i` of an element of `A ⊗ D_A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub pairs: Vec<(Poly, WeylOp)>,
}

impl Decomposition {
    pub fn new(pairs: Vec<(Poly, WeylOp)>) -> Self {
        Decomposition { pairs }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn concat(&self, other: &Decomposition) -> Decomposition {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        Decomposition { pairs }
    }

    /// Every `a_i ∈ A` and every `D_i ∈ D_A`.
    pub fn validate(&self, curve: &CurveRing) -> Result<(), ObstructionError> {
        for (index, (a, op)) in self.pairs.iter().enumerate() {
            if curve.subalgebra_member(a).is_none() {
                return Err(ObstructionError::InvalidEntry {
                    index,
                    reason: "element not in A",
                });
            }
            if !curve.is_in_da(op) {
                return Err(ObstructionError::InvalidEntry {
                    index,
                    reason: "operator not in D_A",
                });
            }
        }
        Ok(())
    }
}

/// Representative `Σ D1_i ⊗_A D2_i` of an element of `D_A ⊗_A D_A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorPairs {
    pub pairs: Vec<(WeylOp, WeylOp)>,
}

impl OperatorPairs {
    pub fn new(pairs: Vec<(WeylOp, WeylOp)>) -> Self {
        OperatorPairs { pairs }
    }

    pub fn validate(&self, curve: &CurveRing) -> Result<(), ObstructionError> {
        for (index, (d1, d2)) in self.pairs.iter().enumerate() {
            if !curve.is_in_da(d1) || !curve.is_in_da(d2) {
                return Err(ObstructionError::InvalidEntry {
                    index,
                    reason: "operator not in D_A",
                });
            }
        }
        Ok(())
    }
}

/// An operator D and element g with `g ∈ I^source_power` but `D(g) ∉ I^target_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub operator: WeylOp,
    pub witness: Poly,
    pub source_power: u32,
    pub target_power: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessChecks {
    pub operator_in_da: bool,
    pub witness_in_source: bool,
    pub image_escapes_target: bool,
}

impl WitnessChecks {
    pub fn all(&self) -> bool {
        self.operator_in_da && self.witness_in_source && self.image_escapes_target
    }
}

impl WitnessPair {
    pub fn image(&self) -> Poly {
        self.operator.apply(&self.witness)
    }

    pub fn check(&self, curve: &CurveRing) -> WitnessChecks {
        WitnessChecks {
            operator_in_da: curve.is_in_da(&self.operator),
            witness_in_source: curve.ideal_power_member(&self.witness, self.source_power),
            image_escapes_target: !curve.ideal_power_member(&self.image(), self.target_power),
        }
    }

    pub fn is_valid(&self, curve: &CurveRing) -> bool {
        self.check(curve).all()
    }
}

fn require_da(curve: &CurveRing, op: &WeylOp) -> Result<(), ObstructionError> {
    if curve.is_in_da(op) {
        Ok(())
    } else {
        Err(ObstructionError::NotInDa)
    }
}

/// `Ψ_D(Σ a_i ⊗ D_i) = Σ D(a_i)·D_i`, after checking `D ∈ D_A` and the decomposition.
pub fn psi_apply(
    curve: &CurveRing,
    op: &WeylOp,
    dec: &Decomposition,
) -> Result<WeylOp, ObstructionError> {
    require_da(curve, op)?;
    dec.validate(curve)?;
    Ok(psi_apply_unchecked(op, dec))
}

/// The formula `Σ D(a_i)·D_i` with no membership checks; defined for any entries in B and D_B.
pub fn psi_apply_unchecked(op: &WeylOp, dec: &Decomposition) -> WeylOp {
    dec.pairs.iter().fold(WeylOp::zero(), |acc, (a, di)| {
        &acc + &di.left_mul_poly(&op.apply(a))
    })
}

/// Whether `D = Σ D(a_i)·D_i` holds exactly for the given decomposition.
pub fn verify_lp_certificate(
    curve: &CurveRing,
    op: &WeylOp,
    dec: &Decomposition,
) -> Result<bool, ObstructionError> {
    Ok(psi_apply(curve, op, dec)? == *op)
}

/// `D′ = ∂^n / (c·n!)` for `g` of degree n ≥ 1 with leading coefficient c, so
/// that `D′(g) = 1` and `D′(1) = 0`.
pub fn construct_raiser(g: &Poly, kill_constants: bool) -> Result<WeylOp, ObstructionError> {
    let n = match g.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(ObstructionError::ConstantRaiser),
    };
    let factorial = (1..=n).fold(num_bigint::BigInt::from(1), |acc, k| acc * k);
    let scale = (g.leading_coeff().unwrap() * &Rational::from_integer(factorial))
        .recip()
        .unwrap();
    let raiser = WeylOp::monomial(scale, 0, n);
    debug_assert!(raiser.apply(g) == Poly::one());
    // n ≥ 1, so constants are annihilated whether or not the caller asked for it.
    debug_assert!(!kill_constants || raiser.apply(&Poly::one()).is_zero());
    Ok(raiser)
}

/// `D = f·D′` with `D′` the raiser of `g = f`; then `D(A) ⊆ I` and `D(f) = f ∉ I²`.
pub fn build_condition2_witness(curve: &CurveRing) -> WitnessPair {
    let g = curve.f().clone();
    let raiser = construct_raiser(&g, true).expect("f is nonconstant");
    WitnessPair {
        operator: raiser.left_mul_poly(curve.f()),
        witness: g,
        source_power: 1,
        target_power: 2,
    }
}

/// `D = f·D′` with `D′` the raiser of `g = f²`; then `D(f²) = f ∉ I²`.
pub fn build_condition3_witness(curve: &CurveRing) -> WitnessPair {
    let g = curve.ideal_power(2);
    let raiser = construct_raiser(&g, false).expect("f² is nonconstant");
    WitnessPair {
        operator: raiser.left_mul_poly(curve.f()),
        witness: g,
        source_power: 2,
        target_power: 2,
    }
}

/// Checks `E(f·t^m) ∈ I²` for `E = Ψ_D(dec)` and every `m ≤ sample_bound`.
///
/// Requires `D ∈ D_A` with `D(A) ⊆ I`. The bounded check mirrors an exact
/// argument: each `D(a_i) ∈ I` and each `D_i(I) ⊆ I`.
pub fn check_psi_image_containment(
    curve: &CurveRing,
    op: &WeylOp,
    dec: &Decomposition,
    sample_bound: u32,
) -> Result<bool, ObstructionError> {
    check_psi_image_containment_with(curve, op, dec, sample_bound, Exec::Sequential)
}

pub fn check_psi_image_containment_with(
    curve: &CurveRing,
    op: &WeylOp,
    dec: &Decomposition,
    sample_bound: u32,
    exec: Exec,
) -> Result<bool, ObstructionError> {
    match curve.maps_a_into_i(op) {
        Err(_) => return Err(ObstructionError::NotInDa),
        Ok(false) => return Err(ObstructionError::DoesNotMapAIntoI),
        Ok(true) => {}
    }
    let e = psi_apply(curve, op, dec)?;
    let samples = curve.ideal_spanning_set(1, sample_bound);
    let hits = exec.map(&samples, |g| curve.ideal_power_member(&e.apply(g), 2));
    Ok(hits.into_iter().all(|h| h))
}

/// Smallest `g = f^source_power · t^m` (`m ≤ bound`) with `D(g) ∉ I^target_power`.
pub fn search_noncontainment(
    curve: &CurveRing,
    op: &WeylOp,
    source_power: u32,
    target_power: u32,
    bound: u32,
) -> Option<Poly> {
    search_noncontainment_with(curve, op, source_power, target_power, bound, Exec::default())
}

pub fn search_noncontainment_with(
    curve: &CurveRing,
    op: &WeylOp,
    source_power: u32,
    target_power: u32,
    bound: u32,
    exec: Exec,
) -> Option<Poly> {
    let base = curve.ideal_power(source_power);
    exec.find_first(bound as usize + 1, |m| {
        let g = base.shift(m as u32);
        (!curve.ideal_power_member(&op.apply(&g), target_power)).then_some(g)
    })
}

/// `μ₋(Σ D1_i ⊗ D2_i)(a ⊗ b) = Σ D1_i(a)·D2_i(b)`.
pub fn mu_lower(
    curve: &CurveRing,
    pairs: &OperatorPairs,
    a: &Poly,
    b: &Poly,
) -> Result<Poly, ObstructionError> {
    pairs.validate(curve)?;
    Ok(pairs
        .pairs
        .iter()
        .fold(Poly::zero(), |acc, (d1, d2)| &acc + &(&d1.apply(a) * &d2.apply(b))))
}

/// `μ*(D)(a ⊗ b) = D(ab)`.
pub fn mu_upper(op: &WeylOp, a: &Poly, b: &Poly) -> Poly {
    op.apply(&(a * b))
}

/// `ε(D) = D(1)`.
pub fn counit(op: &WeylOp) -> Poly {
    op.apply(&Poly::one())
}

/// First `(a, b) = (f·t^i, f·t^j)` in lexicographic `(i, j)` order, `i, j ≤ bound`,
/// with `D(ab) ∉ I²`.
pub fn search_mu_upper_escape(
    curve: &CurveRing,
    op: &WeylOp,
    bound: u32,
    exec: Exec,
) -> Option<(Poly, Poly)> {
    let side = bound as usize + 1;
    exec.find_first(side * side, |k| {
        let a = curve.f().shift((k / side) as u32);
        let b = curve.f().shift((k % side) as u32);
        (!curve.ideal_power_member(&mu_upper(op, &a, &b), 2)).then_some((a, b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{
        nodal_cubic, nodal_cubic_first_order_operator, nodal_cubic_second_order_operator,
    };

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn f() -> Poly {
        Poly::from_ints(&[-1, 0, 1])
    }

    fn two_factor_curve() -> CurveRing {
        CurveRing::new(vec![Poly::t(), Poly::from_ints(&[-1, 1])]).unwrap()
    }

    #[test]
    fn psi_apply_examples() {
        let c = nodal_cubic();
        let one = Decomposition::new(vec![(Poly::one(), WeylOp::one())]);
        assert_eq!(psi_apply(&c, &WeylOp::one(), &one).unwrap(), WeylOp::one());
        let fd = nodal_cubic_first_order_operator();
        assert!(psi_apply(&c, &fd, &Decomposition::default()).unwrap().is_zero());
        let image = Poly::from_ints(&[0, -2, 0, 2]);
        // ∂ itself is not in D_A, so the bare formula is the only way to evaluate this entry.
        let raw = Decomposition::new(vec![(f(), WeylOp::d())]);
        assert_eq!(psi_apply_unchecked(&fd, &raw), WeylOp::d().left_mul_poly(&image));
        assert!(matches!(
            psi_apply(&c, &fd, &raw),
            Err(ObstructionError::InvalidEntry { index: 0, .. })
        ));
        let dec = Decomposition::new(vec![(f(), fd.clone())]);
        assert_eq!(psi_apply(&c, &fd, &dec).unwrap(), fd.left_mul_poly(&image));
    }

    #[test]
    fn psi_apply_names_bad_entry() {
        let c = nodal_cubic();
        let dec = Decomposition::new(vec![(f(), WeylOp::one()), (Poly::t(), WeylOp::one())]);
        assert_eq!(
            psi_apply(&c, &WeylOp::one(), &dec),
            Err(ObstructionError::InvalidEntry {
                index: 1,
                reason: "element not in A"
            })
        );
        let dec = Decomposition::new(vec![(f(), WeylOp::d())]);
        assert!(matches!(
            psi_apply(&c, &WeylOp::one(), &dec),
            Err(ObstructionError::InvalidEntry { index: 0, .. })
        ));
        assert_eq!(
            psi_apply(&c, &WeylOp::d(), &Decomposition::default()),
            Err(ObstructionError::NotInDa)
        );
    }

    #[test]
    fn verify_lp_certificate_examples() {
        let c = nodal_cubic();
        let one = Decomposition::new(vec![(Poly::one(), WeylOp::one())]);
        assert!(verify_lp_certificate(&c, &WeylOp::one(), &one).unwrap());
        let fd = nodal_cubic_first_order_operator();
        assert!(!verify_lp_certificate(&c, &fd, &Decomposition::default()).unwrap());
        let dec = Decomposition::new(vec![(f(), fd.clone())]);
        assert!(!verify_lp_certificate(&c, &fd, &dec).unwrap());
        assert_ne!(psi_apply_unchecked(&fd, &Decomposition::new(vec![(f(), WeylOp::d())])), fd);
    }

    #[test]
    fn raiser_examples() {
        let r = construct_raiser(&f(), true).unwrap();
        assert_eq!(r, WeylOp::monomial(q(1, 2), 0, 2));
        assert_eq!(r.apply(&f()), Poly::one());
        assert!(r.apply(&Poly::one()).is_zero());
        assert_eq!(construct_raiser(&Poly::t(), true).unwrap(), WeylOp::d());
        let r4 = construct_raiser(&f().pow(2), false).unwrap();
        assert_eq!(r4, WeylOp::monomial(q(1, 24), 0, 4));
        assert_eq!(r4.apply(&f().pow(2)), Poly::one());
        assert_eq!(
            construct_raiser(&Poly::constant(q(3, 1)), true),
            Err(ObstructionError::ConstantRaiser)
        );
        // non-monic g
        let g = Poly::from_ints(&[1, 0, 0, -4]);
        assert_eq!(construct_raiser(&g, true).unwrap().apply(&g), Poly::one());
    }

    #[test]
    fn condition2_witness_examples() {
        let c = nodal_cubic();
        let w = build_condition2_witness(&c);
        assert_eq!(w.operator, WeylOp::monomial(q(1, 2), 0, 2).left_mul_poly(&f()));
        assert_eq!(w.witness, f());
        assert_eq!(w.image(), f());
        assert!(w.is_valid(&c));
        assert_eq!(c.maps_a_into_i(&w.operator), Ok(true));

        let fixture = WitnessPair {
            operator: nodal_cubic_first_order_operator(),
            witness: f(),
            source_power: 1,
            target_power: 2,
        };
        assert_eq!(fixture.image(), Poly::from_ints(&[0, -2, 0, 2]));
        assert!(fixture.is_valid(&c));

        let c2 = two_factor_curve();
        let w2 = build_condition2_witness(&c2);
        let f2 = Poly::from_ints(&[0, -1, 1]);
        assert_eq!(w2.witness, f2);
        assert_eq!(w2.image(), f2);
        assert!(w2.is_valid(&c2));
    }

    #[test]
    fn condition3_witness_examples() {
        let c = nodal_cubic();
        let w = build_condition3_witness(&c);
        assert_eq!(w.operator, WeylOp::monomial(q(1, 24), 0, 4).left_mul_poly(&f()));
        assert_eq!(w.witness, f().pow(2));
        assert_eq!(w.image(), f());
        assert!(w.is_valid(&c));

        let fixture = WitnessPair {
            operator: nodal_cubic_second_order_operator(),
            witness: f().pow(2),
            source_power: 2,
            target_power: 2,
        };
        assert_eq!(fixture.image(), &f() * &Poly::from_ints(&[-4, 0, 12]));
        assert!(fixture.is_valid(&c));

        let c2 = two_factor_curve();
        let w2 = build_condition3_witness(&c2);
        assert_eq!(w2.image(), Poly::from_ints(&[0, -1, 1]));
        assert!(w2.is_valid(&c2));
    }

    #[test]
    fn psi_image_containment_examples() {
        let c = nodal_cubic();
        let w = build_condition2_witness(&c).operator;
        let dec = Decomposition::new(vec![(f(), nodal_cubic_first_order_operator())]);
        assert!(check_psi_image_containment(&c, &w, &dec, 8).unwrap());
        // With D_i = ∂ outside D_A the containment genuinely fails: E = f∂ and E(f) = 2t·f ∉ I².
        let raw = Decomposition::new(vec![(f(), WeylOp::d())]);
        assert!(check_psi_image_containment(&c, &w, &raw, 8).is_err());
        let e = psi_apply_unchecked(&w, &raw);
        assert!(!c.ideal_power_member(&e.apply(&f()), 2));
        assert!(check_psi_image_containment(&c, &w, &Decomposition::default(), 8).unwrap());
        let one = Decomposition::new(vec![(Poly::one(), WeylOp::one())]);
        assert!(psi_apply(&c, &w, &one).unwrap().is_zero());
        assert!(check_psi_image_containment(&c, &w, &one, 8).unwrap());
        assert_eq!(
            check_psi_image_containment(&c, &WeylOp::one(), &one, 8),
            Err(ObstructionError::DoesNotMapAIntoI)
        );
        assert_eq!(
            check_psi_image_containment(&c, &WeylOp::d(), &one, 8),
            Err(ObstructionError::NotInDa)
        );
    }

    #[test]
    fn mu_lower_examples() {
        let c = nodal_cubic();
        let one = OperatorPairs::new(vec![(WeylOp::one(), WeylOp::one())]);
        let (a, b) = (Poly::from_ints(&[2, 1]), Poly::from_ints(&[0, 0, 3]));
        assert_eq!(mu_lower(&c, &one, &a, &b).unwrap(), &a * &b);
        let fd = nodal_cubic_first_order_operator();
        let pairs = OperatorPairs::new(vec![(fd.clone(), fd)]);
        assert_eq!(
            mu_lower(&c, &pairs, &f(), &f()).unwrap(),
            Poly::from_ints(&[0, 0, 4, 0, -8, 0, 4])
        );
        assert!(mu_lower(&c, &OperatorPairs::default(), &a, &b).unwrap().is_zero());
        let bad = OperatorPairs::new(vec![(WeylOp::one(), WeylOp::d())]);
        assert!(mu_lower(&c, &bad, &a, &b).is_err());
    }

    #[test]
    fn mu_upper_examples() {
        assert_eq!(
            mu_upper(&nodal_cubic_second_order_operator(), &f(), &f()),
            &f() * &Poly::from_ints(&[-4, 0, 12])
        );
        let (a, b) = (Poly::from_ints(&[2, 1]), Poly::from_ints(&[0, 0, 3]));
        assert_eq!(mu_upper(&WeylOp::one(), &a, &b), &a * &b);
        assert_eq!(
            mu_upper(&WeylOp::d(), &Poly::t(), &Poly::t()),
            Poly::from_ints(&[0, 2])
        );
    }

    #[test]
    fn counit_examples() {
        let p = Poly::from_ints(&[3, 0, 5]);
        assert_eq!(counit(&WeylOp::from_poly(&p)), p);
        assert!(counit(&nodal_cubic_first_order_operator()).is_zero());
        let op = &WeylOp::scalar(q(3, 1)) + &nodal_cubic_first_order_operator();
        assert_eq!(counit(&op), Poly::constant(q(3, 1)));
    }

    #[test]
    fn search_noncontainment_examples() {
        let c = nodal_cubic();
        let fd = nodal_cubic_first_order_operator();
        assert_eq!(search_noncontainment(&c, &fd, 1, 2, 4), Some(f()));
        assert_eq!(
            search_noncontainment(&c, &WeylOp::from_poly(&f()), 1, 2, 4),
            None
        );
        assert_eq!(
            search_noncontainment(&c, &nodal_cubic_second_order_operator(), 2, 2, 4),
            Some(f().pow(2))
        );
    }

    #[test]
    fn search_modes_agree() {
        let c = nodal_cubic();
        let op = WeylOp::monomial(q(1, 1), 2, 2).left_mul_poly(&f());
        for (s, t) in [(1, 2), (2, 2), (2, 3)] {
            assert_eq!(
                search_noncontainment_with(&c, &op, s, t, 6, Exec::Sequential),
                search_noncontainment_with(&c, &op, s, t, 6, Exec::Parallel)
            );
        }
    }

    #[test]
    fn mu_upper_escape_found_at_f_f() {
        let c = nodal_cubic();
        let w = build_condition3_witness(&c);
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(search_mu_upper_escape(&c, &w.operator, 0, exec), Some((f(), f())));
        }
    }
}
