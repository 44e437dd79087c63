//! Replayable refutation certificates.
//!
//! A certificate carries the curve, a witness pair and a list of checks. Each
//! check is fully described by its [`CheckKind`] together with the curve and
//! witness, so [`Certificate::replay`] recomputes every verdict from the
//! recorded data alone. Refutations (`⊄`) are single exact remainder
//! computations; containments over infinite sets are either structural
//! (`λ = 0`) or verified up to a recorded bound.

use std::fmt;

use crate::curve::CurveRing;
use crate::error::ObstructionError;
use crate::exec::Exec;
use crate::obstruction::{
    build_condition2_witness, build_condition3_witness, check_psi_image_containment_with,
    mu_lower, mu_upper, search_mu_upper_escape, verify_lp_certificate, Decomposition,
    OperatorPairs, WitnessPair,
};
use crate::poly::Poly;
use crate::sample::Sampler;

pub const DEFAULT_CONTAINMENT_BOUND: u32 = 8;
pub const DEFAULT_SEARCH_BOUND: u32 = 4;
pub const DEFAULT_BATTERY: usize = 24;

// Shape of the random battery entries.
const BATTERY_PAIRS: u32 = 3;
const BATTERY_DEG: u32 = 3;
const BATTERY_ORDER: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    NotLocallyProjective,
    NoBialgebroid,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::NotLocallyProjective => "NotLocallyProjective",
            Claim::NoBialgebroid => "NoBialgebroid",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "NotLocallyProjective" => Some(Claim::NotLocallyProjective),
            "NoBialgebroid" => Some(Claim::NoBialgebroid),
            _ => None,
        }
    }
}

/// How strongly a verdict covers its statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    /// A single finite computation.
    Exact,
    /// Decided for all inputs by an exact criterion.
    Structural,
    /// Checked on the spanning set truncated at this bound.
    Bounded(u32),
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Exact => f.write_str("exact"),
            Quantifier::Structural => f.write_str("exact (structural)"),
            Quantifier::Bounded(n) => write!(f, "verified to bound {n}"),
        }
    }
}

/// The statement a check evaluates; `D` and `g` are the certificate's witness pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// `D ∈ D_A`.
    OperatorInDa,
    /// `D(A) ⊆ I`.
    MapsAIntoI,
    /// `g ∈ I^power`.
    WitnessInIdealPower { power: u32 },
    /// `D(g) ∈ I^power`.
    ImageInIdealPower { power: u32 },
    /// `Ψ_D(dec)(f t^m) ∈ I²` for all `m ≤ bound`.
    PsiImageContainment {
        decomposition: Decomposition,
        bound: u32,
    },
    /// `D = Ψ_D(dec)`.
    PsiRepresentation { decomposition: Decomposition },
    /// `D(ab) ∈ I²`, for `a, b ∈ I`.
    MuUpperContainment { a: Poly, b: Poly },
    /// `μ₋(pairs)(a ⊗ b) ∈ I²`, for `a, b ∈ I`.
    MuLowerContainment {
        pairs: OperatorPairs,
        a: Poly,
        b: Poly,
    },
}

impl CheckKind {
    pub fn tag(&self) -> &'static str {
        match self {
            CheckKind::OperatorInDa => "OperatorInDa",
            CheckKind::MapsAIntoI => "MapsAIntoI",
            CheckKind::WitnessInIdealPower { .. } => "WitnessInIdealPower",
            CheckKind::ImageInIdealPower { .. } => "ImageInIdealPower",
            CheckKind::PsiImageContainment { .. } => "PsiImageContainment",
            CheckKind::PsiRepresentation { .. } => "PsiRepresentation",
            CheckKind::MuUpperContainment { .. } => "MuUpperContainment",
            CheckKind::MuLowerContainment { .. } => "MuLowerContainment",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub description: String,
    pub kind: CheckKind,
    pub verdict: bool,
    pub quantifier: Quantifier,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Claim,
    pub curve: CurveRing,
    pub witness: WitnessPair,
    pub checks: Vec<CheckRecord>,
    pub seed: u64,
    pub bound: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct RefuteOptions {
    pub seed: u64,
    /// Spanning-set bound for containment checks, or search bound for the μ* escape.
    pub bound: u32,
    pub battery: usize,
    pub exec: Exec,
}

impl RefuteOptions {
    pub fn local_projectivity(seed: u64) -> Self {
        RefuteOptions {
            seed,
            bound: DEFAULT_CONTAINMENT_BOUND,
            battery: DEFAULT_BATTERY,
            exec: Exec::default(),
        }
    }

    pub fn bialgebroid(seed: u64) -> Self {
        RefuteOptions {
            seed,
            bound: DEFAULT_SEARCH_BOUND,
            battery: DEFAULT_BATTERY,
            exec: Exec::default(),
        }
    }
}

/// Result of replaying one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub index: usize,
    pub recorded: bool,
    pub replayed: Result<bool, ObstructionError>,
}

impl CheckOutcome {
    pub fn reproduced(&self) -> bool {
        self.replayed.as_ref() == Ok(&self.recorded)
    }
}

fn require_in_ideal(curve: &CurveRing, p: &Poly, index: usize) -> Result<(), ObstructionError> {
    if curve.ideal_power_member(p, 1) {
        Ok(())
    } else {
        Err(ObstructionError::InvalidEntry {
            index,
            reason: "element not in I",
        })
    }
}

/// Evaluates one statement against the curve and witness.
pub fn evaluate_check(
    curve: &CurveRing,
    witness: &WitnessPair,
    kind: &CheckKind,
    exec: Exec,
) -> Result<bool, ObstructionError> {
    let op = &witness.operator;
    match kind {
        CheckKind::OperatorInDa => Ok(curve.is_in_da(op)),
        CheckKind::MapsAIntoI => curve.maps_a_into_i(op).map_err(|_| ObstructionError::NotInDa),
        CheckKind::WitnessInIdealPower { power } => {
            Ok(curve.ideal_power_member(&witness.witness, *power))
        }
        CheckKind::ImageInIdealPower { power } => {
            Ok(curve.ideal_power_member(&witness.image(), *power))
        }
        CheckKind::PsiImageContainment {
            decomposition,
            bound,
        } => check_psi_image_containment_with(curve, op, decomposition, *bound, exec),
        CheckKind::PsiRepresentation { decomposition } => {
            verify_lp_certificate(curve, op, decomposition)
        }
        CheckKind::MuUpperContainment { a, b } => {
            require_in_ideal(curve, a, 0)?;
            require_in_ideal(curve, b, 1)?;
            Ok(curve.ideal_power_member(&mu_upper(op, a, b), 2))
        }
        CheckKind::MuLowerContainment { pairs, a, b } => {
            require_in_ideal(curve, a, 0)?;
            require_in_ideal(curve, b, 1)?;
            Ok(curve.ideal_power_member(&mu_lower(curve, pairs, a, b)?, 2))
        }
    }
}

struct PendingCheck {
    description: String,
    kind: CheckKind,
    quantifier: Quantifier,
}

fn pending(description: impl Into<String>, kind: CheckKind, quantifier: Quantifier) -> PendingCheck {
    PendingCheck {
        description: description.into(),
        kind,
        quantifier,
    }
}

fn run_checks(
    curve: &CurveRing,
    witness: &WitnessPair,
    checks: Vec<PendingCheck>,
    exec: Exec,
) -> Vec<CheckRecord> {
    // Fan out across checks; each check then runs sequentially inside.
    let verdicts = exec.map(&checks, |c| {
        evaluate_check(curve, witness, &c.kind, Exec::Sequential)
            .expect("generated checks satisfy their preconditions")
    });
    checks
        .into_iter()
        .zip(verdicts)
        .map(|(c, verdict)| CheckRecord {
            description: c.description,
            kind: c.kind,
            verdict,
            quantifier: c.quantifier,
        })
        .collect()
}

/// Certificate that D_A is not locally projective.
///
/// Uses the witness `D = f·∂^n/(n!)` (n = deg f) with `g = f`: D lies in D_A,
/// maps A into I, and `D(f) = f ∉ I²`. Every element of the image of Ψ_D sends
/// I into I², which the recorded battery samples, so D is not in that image.
pub fn refute_local_projectivity(curve: &CurveRing, opts: &RefuteOptions) -> Certificate {
    let witness = build_condition2_witness(curve);
    let mut checks = vec![
        pending("D lies in D_A = k + I D_B", CheckKind::OperatorInDa, Quantifier::Exact),
        pending(
            "D maps A into I (lambda = 0)",
            CheckKind::MapsAIntoI,
            Quantifier::Structural,
        ),
        pending(
            "g lies in I",
            CheckKind::WitnessInIdealPower { power: 1 },
            Quantifier::Exact,
        ),
        pending(
            "D(g) lies in I",
            CheckKind::ImageInIdealPower { power: 1 },
            Quantifier::Exact,
        ),
        pending(
            "D(g) lies in I^2",
            CheckKind::ImageInIdealPower { power: 2 },
            Quantifier::Exact,
        ),
    ];
    let mut sampler = Sampler::new(opts.seed);
    for k in 0..opts.battery {
        let dec = sampler.decomposition(curve, BATTERY_PAIRS, BATTERY_DEG, BATTERY_ORDER);
        checks.push(pending(
            format!("battery {k}: Psi_D(dec) maps I into I^2"),
            CheckKind::PsiImageContainment {
                decomposition: dec.clone(),
                bound: opts.bound,
            },
            Quantifier::Bounded(opts.bound),
        ));
        checks.push(pending(
            format!("battery {k}: D = Psi_D(dec)"),
            CheckKind::PsiRepresentation { decomposition: dec },
            Quantifier::Exact,
        ));
    }
    Certificate {
        claim: Claim::NotLocallyProjective,
        curve: curve.clone(),
        checks: run_checks(curve, &witness, checks, opts.exec),
        witness,
        seed: opts.seed,
        bound: opts.bound,
    }
}

/// Certificate that no comultiplication satisfies `μ*(D) = μ₋(Δ(D))`.
///
/// Uses `D = f·∂^(2n)/(2n)!` with `g = f²`, finds the first `(a, b) ∈ I × I`
/// within the bound with `D(ab) ∉ I²`, and samples μ₋ on random pair lists to
/// show its values on `I ⊗ I` stay in I².
pub fn refute_bialgebroid(
    curve: &CurveRing,
    opts: &RefuteOptions,
) -> Result<Certificate, ObstructionError> {
    let witness = build_condition3_witness(curve);
    let (a, b) = search_mu_upper_escape(curve, &witness.operator, opts.bound, opts.exec)
        .ok_or(ObstructionError::BoundExhausted(opts.bound))?;
    let mut checks = vec![
        pending("D lies in D_A = k + I D_B", CheckKind::OperatorInDa, Quantifier::Exact),
        pending(
            "g lies in I^2",
            CheckKind::WitnessInIdealPower { power: 2 },
            Quantifier::Exact,
        ),
        pending(
            "D(g) lies in I^2",
            CheckKind::ImageInIdealPower { power: 2 },
            Quantifier::Exact,
        ),
        pending(
            format!(
                "mu*(D)(a, b) = D(ab) lies in I^2 (first hit within bound {})",
                opts.bound
            ),
            CheckKind::MuUpperContainment { a, b },
            Quantifier::Exact,
        ),
    ];
    let mut sampler = Sampler::new(opts.seed);
    for k in 0..opts.battery {
        let pairs = sampler.operator_pairs(curve, BATTERY_PAIRS, BATTERY_DEG, BATTERY_ORDER);
        let a = sampler.ideal_power_element(curve, 1, BATTERY_DEG);
        let b = sampler.ideal_power_element(curve, 1, BATTERY_DEG);
        checks.push(pending(
            format!("battery {k}: mu_(pairs)(a, b) lies in I^2"),
            CheckKind::MuLowerContainment { pairs, a, b },
            Quantifier::Exact,
        ));
    }
    Ok(Certificate {
        claim: Claim::NoBialgebroid,
        curve: curve.clone(),
        checks: run_checks(curve, &witness, checks, opts.exec),
        witness,
        seed: opts.seed,
        bound: opts.bound,
    })
}

impl Certificate {
    pub fn replay(&self) -> Vec<CheckOutcome> {
        self.replay_with(Exec::default())
    }

    pub fn replay_with(&self, exec: Exec) -> Vec<CheckOutcome> {
        let indexed: Vec<(usize, &CheckRecord)> = self.checks.iter().enumerate().collect();
        exec.map(&indexed, |&(index, rec)| CheckOutcome {
            index,
            recorded: rec.verdict,
            replayed: evaluate_check(&self.curve, &self.witness, &rec.kind, Exec::Sequential),
        })
    }

    /// The first check whose recorded verdict is not reproduced.
    pub fn first_mismatch(&self) -> Option<CheckOutcome> {
        self.replay().into_iter().find(|o| !o.reproduced())
    }

    /// Whether the recorded verdicts, taken as true, prove the claim.
    ///
    /// Does not recompute anything; combine with [`Certificate::first_mismatch`].
    pub fn establishes_claim(&self) -> Result<(), String> {
        let has = |want: &CheckKind, verdict: bool| {
            self.checks
                .iter()
                .any(|c| &c.kind == want && c.verdict == verdict)
        };
        let mut required = vec![(CheckKind::OperatorInDa, true)];
        match self.claim {
            Claim::NotLocallyProjective => {
                required.push((CheckKind::MapsAIntoI, true));
                required.push((CheckKind::WitnessInIdealPower { power: 1 }, true));
                required.push((CheckKind::ImageInIdealPower { power: 2 }, false));
            }
            Claim::NoBialgebroid => {
                let escape = self.checks.iter().any(|c| {
                    matches!(c.kind, CheckKind::MuUpperContainment { .. }) && !c.verdict
                });
                if !escape {
                    return Err("missing a failing mu* containment check".into());
                }
            }
        }
        for (kind, verdict) in required {
            if !has(&kind, verdict) {
                return Err(format!(
                    "missing required check {} with verdict {verdict}",
                    kind.tag()
                ));
            }
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "claim: {}\ncurve: f = {} (r = {})\nwitness operator D = {}\nwitness g = {}\nD(g) = {}\n",
            self.claim.name(),
            self.curve.f(),
            self.curve.r(),
            self.witness.operator,
            self.witness.witness,
            self.witness.image(),
        );
        let passed = self.checks.iter().filter(|c| c.verdict).count();
        out.push_str(&format!(
            "checks: {} recorded ({} true, {} false)\n",
            self.checks.len(),
            passed,
            self.checks.len() - passed
        ));
        for c in self.checks.iter().take(5) {
            out.push_str(&format!("  [{}] {}: {}\n", c.quantifier, c.description, c.verdict));
        }
        out
    }
}
