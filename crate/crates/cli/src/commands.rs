//! Subcommand implementations. Each returns an [`Outcome`] or a [`CliError`];
//! `main` only prints and exits.

use std::fs;
use std::path::Path;

use nodal_core::certificate::{refute_bialgebroid, refute_local_projectivity, RefuteOptions};
use nodal_core::obstruction::{build_condition2_witness, build_condition3_witness};
use nodal_core::presets::{
    nodal_cubic, nodal_cubic_first_order_operator, nodal_cubic_second_order_operator,
};
use nodal_core::suites::ideal_preservation_suite;
use nodal_core::{CurveRing, Exec, ObstructionError, Poly, WitnessPair};
use thiserror::Error;

use crate::certfile::CertificateFile;
use crate::parser::{parse_operator, parse_poly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

/// Samples drawn by the ideal-preservation suite.
pub const LEMMA1_SAMPLES: usize = 500;

pub const PRESET_NODAL_CUBIC: &str = "nodal-cubic";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn refuted(stdout: String) -> Self {
        Outcome {
            code: EXIT_REFUTED,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("search bound {0} exhausted without a witness")]
    BoundExhausted(u32),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => EXIT_IO,
            CliError::BoundExhausted(_) => EXIT_BOUND,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Clone, Debug, Default)]
pub struct CurveArgs {
    pub preset: Option<String>,
    pub factors: Vec<String>,
    pub strict_irreducible: bool,
}

pub fn resolve_curve(args: &CurveArgs) -> Result<CurveRing, CliError> {
    let factors = match (&args.preset, args.factors.is_empty()) {
        (Some(_), false) => {
            return Err(input("--preset and --factors are mutually exclusive"));
        }
        (Some(name), true) if name == PRESET_NODAL_CUBIC => nodal_cubic().factors().to_vec(),
        (Some(name), true) => {
            return Err(input(format!(
                "unknown preset {name:?} (available: {PRESET_NODAL_CUBIC})"
            )));
        }
        (None, true) => {
            return Err(input(
                "no curve given: pass --preset nodal-cubic or --factors <poly>...",
            ));
        }
        (None, false) => args
            .factors
            .iter()
            .enumerate()
            .map(|(i, src)| parse_poly(src).map_err(|e| input(format!("factor {}: {e}", i + 1))))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let curve = if args.strict_irreducible {
        CurveRing::new_strict(factors)
    } else {
        CurveRing::new(factors)
    };
    curve.map_err(|e| input(format!("invalid curve: {e}")))
}

fn curve_warnings(curve: &CurveRing) -> String {
    curve
        .warnings()
        .into_iter()
        .map(|w| format!("warning: {w}\n"))
        .collect()
}

pub fn normalize(expr: &str) -> Result<Outcome, CliError> {
    let op = parse_operator(expr).map_err(input)?;
    Ok(Outcome::ok(format!("{op}\n")))
}

pub fn apply(expr: &str, poly: &str) -> Result<Outcome, CliError> {
    let op = parse_operator(expr).map_err(input)?;
    let p = parse_poly(poly).map_err(input)?;
    Ok(Outcome::ok(format!("{}\n", op.apply(&p))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberTarget {
    A,
    Da,
    Ideal(u32),
}

pub fn member(curve: &CurveRing, target: MemberTarget, expr: &str) -> Result<Outcome, CliError> {
    let f = curve.f();
    let mut out = match target {
        MemberTarget::A => {
            let p = parse_poly(expr).map_err(input)?;
            match curve.subalgebra_member(&p) {
                Some(lambda) => {
                    let h = (&p - &Poly::constant(lambda.clone()))
                        .div_rem(f)
                        .map_err(input)?
                        .0;
                    Outcome::ok(format!(
                        "member of A = k + I\n  lambda = {lambda}\n  p = lambda + f * ({h})\n"
                    ))
                }
                None => Outcome::refuted(format!(
                    "not in A = k + I\n  p mod f = {} is not constant\n",
                    curve.subalgebra_remainder(&p)
                )),
            }
        }
        MemberTarget::Da => {
            let op = parse_operator(expr).map_err(input)?;
            match curve.da_membership(&op) {
                Ok(dec) => Outcome::ok(format!(
                    "member of D_A = k + I D_B\n  lambda = {}\n  D' = {}\n  D = lambda + f D'\n",
                    dec.lambda, dec.dprime
                )),
                Err(obs) => Outcome::refuted(format!("not in D_A = k + I D_B\n  {obs}\n")),
            }
        }
        MemberTarget::Ideal(n) => {
            let p = parse_poly(expr).map_err(input)?;
            let gen = curve.ideal_power(n);
            if curve.ideal_power_member(&p, n) {
                let q = p.div_rem(&gen).map_err(input)?.0;
                Outcome::ok(format!("member of I^{n}\n  p = f^{n} * ({q})\n"))
            } else {
                Outcome::refuted(format!(
                    "not in I^{n}\n  p mod f^{n} = {}\n",
                    curve.ideal_power_remainder(&p, n)
                ))
            }
        }
    };
    out.stderr = curve_warnings(curve);
    Ok(out)
}

fn witness_report(curve: &CurveRing, label: &str, w: &WitnessPair) -> String {
    let checks = w.check(curve);
    let image = w.image();
    let target = w.target_power;
    format!(
        "{label}\n  D = {}\n  g = {}\n  D in D_A: {}\n  g in I^{}: {}\n  D(g) = {}\n  D(g) mod f^{target} = {}\n  D(g) in I^{target}: {}\n",
        w.operator,
        w.witness,
        checks.operator_in_da,
        w.source_power,
        checks.witness_in_source,
        image,
        curve.ideal_power_remainder(&image, target),
        !checks.image_escapes_target,
    )
}

pub fn lemma(curve: &CurveRing, which: u8, seed: u64) -> Result<Outcome, CliError> {
    let mut out = match which {
        1 => {
            let report = ideal_preservation_suite(curve, LEMMA1_SAMPLES, seed, Exec::default());
            let mut s = format!("D(I) in I for D in D_A: {report} samples in I (seed {seed})\n");
            if let Some(k) = report.first_failure {
                s.push_str(&format!("first failing sample: {k}\n"));
                Outcome::refuted(s)
            } else {
                Outcome::ok(s)
            }
        }
        2 | 3 => {
            let (w, fixture) = if which == 2 {
                (build_condition2_witness(curve), nodal_cubic_first_order_operator())
            } else {
                (build_condition3_witness(curve), nodal_cubic_second_order_operator())
            };
            let mut s = witness_report(
                curve,
                &format!("constructed witness: D in D_A with D(I^{}) not in I^{}", w.source_power, w.target_power),
                &w,
            );
            let mut valid = w.is_valid(curve);
            if curve.factors() == nodal_cubic().factors() {
                let fixed = WitnessPair {
                    operator: fixture,
                    ..w.clone()
                };
                s.push_str(&witness_report(curve, "nodal cubic operator", &fixed));
                valid &= fixed.is_valid(curve);
            }
            if valid {
                Outcome::ok(s)
            } else {
                Outcome::refuted(s)
            }
        }
        _ => return Err(input(format!("lemma must be 1, 2 or 3, got {which}"))),
    };
    out.stderr = curve_warnings(curve);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefuteTarget {
    LocallyProjective,
    Bialgebroid,
}

/// Builds the certificate document without writing it.
pub fn build_certificate(
    curve: &CurveRing,
    target: RefuteTarget,
    bound: Option<u32>,
    seed: u64,
) -> Result<CertificateFile, CliError> {
    let cert = match target {
        RefuteTarget::LocallyProjective => {
            let mut opts = RefuteOptions::local_projectivity(seed);
            if let Some(b) = bound {
                opts.bound = b;
            }
            refute_local_projectivity(curve, &opts)
        }
        RefuteTarget::Bialgebroid => {
            let mut opts = RefuteOptions::bialgebroid(seed);
            if let Some(b) = bound {
                opts.bound = b;
            }
            refute_bialgebroid(curve, &opts).map_err(|e| match e {
                ObstructionError::BoundExhausted(b) => CliError::BoundExhausted(b),
                other => input(other),
            })?
        }
    };
    Ok(CertificateFile::from_certificate(&cert))
}

/// With `out`, writes the file and prints the summary; otherwise prints the
/// document on stdout and the summary on stderr.
pub fn refute(
    curve: &CurveRing,
    target: RefuteTarget,
    bound: Option<u32>,
    seed: u64,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let file = build_certificate(curve, target, bound, seed)?;
    let summary = file
        .to_certificate()
        .map(|c| c.summary())
        .map_err(input)?;
    let summary = format!("{summary}digest: {}\n", file.digest);
    let warnings = curve_warnings(curve);
    match out {
        Some(path) => {
            fs::write(path, file.to_json())
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                code: EXIT_OK,
                stdout: format!("{summary}wrote {}\n", path.display()),
                stderr: warnings,
            })
        }
        None => Ok(Outcome {
            code: EXIT_OK,
            stdout: file.to_json(),
            stderr: format!("{warnings}{summary}"),
        }),
    }
}

pub fn verify(path: &Path) -> Result<Outcome, CliError> {
    let src = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let file = CertificateFile::from_json(&src).map_err(input)?;
    let cert = file.to_certificate().map_err(input)?;
    let outcomes = cert.replay();
    if let Some(bad) = outcomes.iter().find(|o| !o.reproduced()) {
        let rec = &cert.checks[bad.index];
        let got = match &bad.replayed {
            Ok(v) => v.to_string(),
            Err(e) => format!("error ({e})"),
        };
        return Ok(Outcome::refuted(format!(
            "FAILED check {}: {}\n  recorded {}, replayed {got}\n",
            bad.index, rec.description, bad.recorded
        )));
    }
    if let Err(why) = cert.establishes_claim() {
        return Ok(Outcome::refuted(format!(
            "FAILED: checks do not establish {}: {why}\n",
            cert.claim.name()
        )));
    }
    let digest = file.compute_digest();
    if digest != file.digest {
        return Ok(Outcome::refuted(format!(
            "FAILED: digest mismatch (recorded {}, computed {digest})\n",
            file.digest
        )));
    }
    Ok(Outcome::ok(format!(
        "OK: {} checks reproduced; claim {} established\n",
        outcomes.len(),
        cert.claim.name()
    )))
}
