//! The first Weyl algebra D_B = k⟨t, ∂⟩/(∂t − t∂ − 1) in `t^i ∂^j` normal form,
//! and its action on k[t].

pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::exec::Exec;
use crate::poly::{accumulate, power_str, write_terms, Poly};
use crate::rational::Rational;

pub use rewrite::{GeneratorWord, Symbol};

/// Products with fewer term pairs than this stay on the calling thread.
const PARALLEL_MUL_THRESHOLD: usize = 256;

/// A differential operator `Σ c_ij t^i ∂^j` with every `t` to the left of every `∂`.
///
/// Keys are `(i, j)` = (t-exponent, ∂-exponent). No zero coefficients are
/// stored, so structural equality is equality in D_B.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylOp {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl WeylOp {
    pub fn zero() -> Self {
        WeylOp::default()
    }

    pub fn one() -> Self {
        WeylOp::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        WeylOp::monomial(c, 0, 0)
    }

    /// The generator `t`, i.e. `(1, 0)`.
    pub fn t() -> Self {
        WeylOp::monomial(Rational::one(), 1, 0)
    }

    /// The generator `∂`, i.e. `(0, 1)`.
    pub fn d() -> Self {
        WeylOp::monomial(Rational::one(), 0, 1)
    }

    /// `c t^i ∂^j`.
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        WeylOp { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut map, k, c);
        }
        WeylOp { terms: map }
    }

    /// The order-0 operator "multiply by `p`".
    pub fn from_poly(p: &Poly) -> Self {
        WeylOp {
            terms: p.terms().map(|(i, c)| ((i, 0), c.clone())).collect(),
        }
    }

    /// `Σ_j p_j(t) ∂^j` from the coefficient polynomials `p_j`.
    pub fn from_coefficient_polys<'a>(polys: impl IntoIterator<Item = (u32, &'a Poly)>) -> Self {
        let mut map = BTreeMap::new();
        for (j, p) in polys {
            for (i, c) in p.terms() {
                accumulate(&mut map, (i, j), c.clone());
            }
        }
        WeylOp { terms: map }
    }

    /// The normal form regrouped as `j ↦ p_j(t)` so that `self = Σ p_j ∂^j`.
    pub fn coefficient_polys(&self) -> BTreeMap<u32, Poly> {
        let mut by_order: BTreeMap<u32, Vec<(u32, Rational)>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            by_order.entry(j).or_default().push((i, c.clone()));
        }
        by_order
            .into_iter()
            .map(|(j, ts)| (j, Poly::from_terms(ts)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest ∂-exponent; `None` (−∞) for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Highest t-exponent; `None` for zero.
    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(i, j)` key order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in print order: ∂-exponent descending, then t-exponent descending.
    pub fn terms_print_order(&self) -> Vec<((u32, u32), &Rational)> {
        let mut ts: Vec<_> = self.terms().collect();
        ts.sort_by(|((i1, j1), _), ((i2, j2), _)| (j2, i2).cmp(&(j1, i1)));
        ts
    }

    pub fn scale(&self, c: &Rational) -> WeylOp {
        if c.is_zero() {
            return WeylOp::zero();
        }
        WeylOp {
            terms: self.terms.iter().map(|(&k, a)| (k, a * c)).collect(),
        }
    }

    /// `from_poly(p) · self`; no commutation is needed since `p` sits on the left.
    pub fn left_mul_poly(&self, p: &Poly) -> WeylOp {
        let mut map = BTreeMap::new();
        for (k, pc) in p.terms() {
            for (&(i, j), c) in &self.terms {
                accumulate(&mut map, (i + k, j), pc * c);
            }
        }
        WeylOp { terms: map }
    }

    /// Product in D_B, fanning out over the left operand's terms when `exec` allows.
    ///
    /// Uses `∂^b t^c = Σ_s C(b,s) c(c-1)⋯(c-s+1) t^(c-s) ∂^(b-s)` termwise. Exact
    /// accumulation makes the result independent of how the work was split.
    pub fn mul_with(&self, rhs: &WeylOp, exec: Exec) -> WeylOp {
        let lhs: Vec<_> = self.terms.iter().collect();
        let terms = exec.map_reduce(
            &lhs,
            BTreeMap::new(),
            |&(&(a, b), c1)| {
                let mut part = BTreeMap::new();
                for (&(c, d), c2) in &rhs.terms {
                    let scale = c1 * c2;
                    for (k, i, j) in commute_monomial(a, b, c, d) {
                        accumulate(&mut part, (i, j), &scale * &Rational::from_integer(k));
                    }
                }
                part
            },
            merge,
        );
        WeylOp { terms }
    }

    pub fn mul_sequential(&self, rhs: &WeylOp) -> WeylOp {
        self.mul_with(rhs, Exec::Sequential)
    }

    pub fn mul_parallel(&self, rhs: &WeylOp) -> WeylOp {
        self.mul_with(rhs, Exec::Parallel)
    }

    pub fn pow(&self, n: u32) -> WeylOp {
        (0..n).fold(WeylOp::one(), |acc, _| &acc * self)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &WeylOp) -> WeylOp {
        &(self * other) - &(other * self)
    }

    /// The action on k[t]: `Σ c_ij t^i · d^j p / dt^j`.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (j, coeff) in self.coefficient_polys() {
            let dp = p.nth_derivative(j);
            if dp.is_zero() {
                continue;
            }
            out = &out + &(&coeff * &dp);
        }
        out
    }
}

/// Expands `(t^a ∂^b)(t^c ∂^d)` into `(integer coefficient, i, j)` triples.
fn commute_monomial(a: u32, b: u32, c: u32, d: u32) -> impl Iterator<Item = (BigInt, u32, u32)> {
    // k_s = C(b, s) · c(c-1)⋯(c-s+1); k_{s+1} = k_s (b-s)(c-s) / (s+1) is exact.
    let mut k = BigInt::from(1);
    (0..=b.min(c)).map(move |s| {
        let out = (k.clone(), a + c - s, b + d - s);
        k = &k * (b - s) * (c - s) / (s + 1);
        out
    })
}

fn merge(
    mut acc: BTreeMap<(u32, u32), Rational>,
    mut other: BTreeMap<(u32, u32), Rational>,
) -> BTreeMap<(u32, u32), Rational> {
    if acc.len() < other.len() {
        std::mem::swap(&mut acc, &mut other);
    }
    for (k, c) in other {
        accumulate(&mut acc, k, c);
    }
    acc
}

/// `t^2 d^2 + 4 t d + 2`: terms by ∂-exponent descending, then t-exponent.
impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms_print_order().into_iter().map(|((i, j), c)| {
                let t = power_str("t", i);
                let d = power_str("d", j);
                let mono = match (t.is_empty(), d.is_empty()) {
                    (true, _) => d,
                    (false, true) => t,
                    (false, false) => format!("{t} {d}"),
                };
                (c, mono)
            }),
        )
    }
}

impl fmt::Debug for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylOp({self})")
    }
}

impl<'a> Mul<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn mul(self, rhs: &'a WeylOp) -> WeylOp {
        let exec = if self.num_terms() * rhs.num_terms() >= PARALLEL_MUL_THRESHOLD {
            Exec::default()
        } else {
            Exec::Sequential
        };
        self.mul_with(rhs, exec)
    }
}

impl<'a> Add<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &'a WeylOp) -> WeylOp {
        WeylOp {
            terms: merge(self.terms.clone(), rhs.terms.clone()),
        }
    }
}

impl<'a> Sub<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &'a WeylOp) -> WeylOp {
        self + &(-rhs)
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        WeylOp {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for WeylOp {
    type Output = WeylOp;
    fn mul(self, rhs: WeylOp) -> WeylOp {
        &self * &rhs
    }
}

impl Add for WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: WeylOp) -> WeylOp {
        WeylOp {
            terms: merge(self.terms, rhs.terms),
        }
    }
}

impl Sub for WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: WeylOp) -> WeylOp {
        &self - &rhs
    }
}

impl Neg for WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        -&self
    }
}
