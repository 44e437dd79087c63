//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always appear in `cargo test` output.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use nodal_cli::certfile::CertificateFile;
use nodal_cli::parser::parse_operator;
use nodal_core::certificate::{refute_bialgebroid, refute_local_projectivity, RefuteOptions};
use nodal_core::obstruction::{build_condition2_witness, verify_lp_certificate};
use nodal_core::presets::{
    nodal_cubic, nodal_cubic_first_order_operator, nodal_cubic_second_order_operator,
    nodal_cubic_x, nodal_cubic_y, verify_embedding,
};
use nodal_core::sample::Sampler;
use nodal_core::suites::{ideal_preservation_suite, mu_lower_suite, psi_image_suite};
use nodal_core::weyl::rewrite::weyl_mul_oracle;
use nodal_core::{CheckKind, CurveRing, Exec, Poly, WeylOp};

const SEED: u64 = 2024;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn nodal(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nodal"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn second_curve() -> CurveRing {
    CurveRing::new(vec![Poly::t(), Poly::from_ints(&[-1, 1])]).unwrap()
}

fn defining_relation() -> Verdict {
    let c = WeylOp::d().commutator(&WeylOp::t());
    ensure(c == WeylOp::one(), format!("[d, t] = {c}"))?;
    let op = parse_operator("d t").map_err(|e| e.to_string())?;
    ensure(op.to_string() == "t d + 1", format!("d t -> {op}"))?;
    let (code, out) = nodal(&["normalize", "d t"]);
    ensure(code == 0 && out == "t d + 1\n", format!("normalize printed {out:?}"))?;
    Ok("[d, t] = 1; d t -> t d + 1".into())
}

fn oracle_equivalence() -> Verdict {
    let mut s = Sampler::new(SEED);
    let pairs: Vec<_> = (0..1000).map(|_| (s.word(6), s.word(6))).collect();
    let start = Instant::now();
    let mismatches = pairs
        .iter()
        .filter(|(a, b)| &a.to_op() * &b.to_op() != weyl_mul_oracle(a, b))
        .count();
    let elapsed = start.elapsed();
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("1000 products, 0 mismatches, {elapsed:.2?}"))
}

fn da_criterion() -> Verdict {
    let mut s = Sampler::new(SEED);
    for curve in [nodal_cubic(), second_curve()] {
        for k in 0..500 {
            let d = s.da_element(&curve, 6, 6);
            let dec = curve
                .da_decompose(&d)
                .ok_or_else(|| format!("member {k} not recognised"))?;
            ensure(dec.reconstruct(curve.f()) == d, format!("member {k} reconstructs wrongly"))?;
            let bad = s.non_da_element(&curve, 6, 6);
            ensure(curve.da_decompose(&bad).is_none(), format!("non-member {k} accepted"))?;
        }
    }
    Ok("2 curves x (500 roundtrips + 500 rejections)".into())
}

fn ideal_preservation() -> Verdict {
    let r = ideal_preservation_suite(&nodal_cubic(), 500, SEED, Exec::default());
    ensure(r.all_passed() && r.samples == 500, format!("{r}"))?;
    let (code, out) = nodal(&["--factors", "t-1", "t+1", "lemma", "1"]);
    ensure(code == 0 && out.contains("500/500 samples in I"), out)?;
    Ok(format!("{r} samples with D(g) in I"))
}

fn first_order_example() -> Verdict {
    let c = nodal_cubic();
    let d = nodal_cubic_first_order_operator();
    ensure(d == parse_operator("(t^2-1) d").unwrap(), "fixture differs from (t^2-1) d")?;
    ensure(c.is_in_da(&d), "not in D_A")?;
    ensure(c.maps_a_into_i(&d) == Ok(true), "does not map A into I")?;
    let image = d.apply(c.f());
    ensure(image == Poly::from_ints(&[0, -2, 0, 2]), format!("image {image}"))?;
    ensure(!c.ideal_power_member(&image, 2), "image lies in I^2")?;
    Ok(format!("(t^2-1) d sends t^2 - 1 to {image}, not in I^2"))
}

fn second_order_example() -> Verdict {
    let c = nodal_cubic();
    let d = nodal_cubic_second_order_operator();
    ensure(c.is_in_da(&d), "not in D_A")?;
    let image = d.apply(&c.ideal_power(2));
    ensure(image == Poly::from_ints(&[4, 0, -16, 0, 12]), format!("image {image}"))?;
    ensure(!c.ideal_power_member(&image, 2), "image lies in I^2")?;
    let (code, out) = nodal(&["apply", "(t^2-1) d^2", "(t^2-1)^2"]);
    ensure(code == 0 && out == "12 t^4 - 16 t^2 + 4\n", out)?;
    Ok(format!("(t^2-1) d^2 sends (t^2-1)^2 to {image}, not in I^2"))
}

fn psi_image_containment() -> Verdict {
    let mut total = 0;
    for curve in [nodal_cubic(), second_curve()] {
        let r = psi_image_suite(&curve, 160, SEED, 8, Exec::default());
        ensure(r.all_passed(), format!("f = {}: {r}", curve.f()))?;
        total += r.samples;
    }
    Ok(format!("{total} cases with E(g) in I^2 over spanning set to degree 8"))
}

fn locproj_certificate() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (name, curve, flags) in [
        ("nodal cubic", nodal_cubic(), vec!["--preset", "nodal-cubic"]),
        ("[t, t-1]", second_curve(), vec!["--factors", "t", "t-1"]),
    ] {
        let start = Instant::now();
        let cert = refute_local_projectivity(&curve, &RefuteOptions::local_projectivity(SEED));
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(1), format!("{name}: took {elapsed:?}"))?;
        let witness = build_condition2_witness(&curve).operator;
        let mut battery = 0;
        for check in &cert.checks {
            if let CheckKind::PsiRepresentation { decomposition } = &check.kind {
                battery += 1;
                ensure(
                    verify_lp_certificate(&curve, &witness, decomposition) == Ok(false),
                    format!("{name}: witness represented by a battery decomposition"),
                )?;
            }
        }
        ensure(battery > 0, format!("{name}: empty battery"))?;
        let path = dir.path().join("lp.json");
        let path = path.to_str().unwrap();
        let mut args = flags.clone();
        args.extend(["refute", "locproj", "--out", path]);
        ensure(nodal(&args).0 == 0, format!("{name}: refute failed"))?;
        let (code, out) = nodal(&["verify", path]);
        ensure(code == 0, format!("{name}: verify exited {code}: {out}"))?;
        notes.push(format!("{name} in {elapsed:.2?}"));
    }
    Ok(format!("{}; replay exit 0; battery all false", notes.join(", ")))
}

fn bialgebroid_certificate() -> Verdict {
    let c = nodal_cubic();
    let r = mu_lower_suite(&c, 300, SEED, Exec::default());
    ensure(r.all_passed() && r.samples == 300, format!("mu_ suite {r}"))?;
    let mut opts = RefuteOptions::bialgebroid(SEED);
    opts.bound = 0;
    let start = Instant::now();
    let cert = refute_bialgebroid(&c, &opts).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let escape = cert.checks.iter().find_map(|ch| match &ch.kind {
        CheckKind::MuUpperContainment { a, b } => Some((a.clone(), b.clone())),
        _ => None,
    });
    ensure(
        escape == Some((c.f().clone(), c.f().clone())),
        format!("escape pair {escape:?}"),
    )?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("bi.json");
    let path = path.to_str().unwrap();
    let args = ["--preset", "nodal-cubic", "--bound", "0", "refute", "bialgebroid", "--out", path];
    ensure(nodal(&args).0 == 0, "refute failed")?;
    let start_verify = Instant::now();
    let (code, out) = nodal(&["verify", path]);
    let verify_time = start_verify.elapsed();
    ensure(code == 0, format!("verify exited {code}: {out}"))?;
    ensure(
        elapsed < Duration::from_secs(1) && verify_time < Duration::from_secs(1),
        format!("build {elapsed:?}, verify {verify_time:?}"),
    )?;
    Ok(format!(
        "mu_ suite {r}; escape at (f, f) with bound 0; build {elapsed:.2?}, verify {verify_time:.2?}"
    ))
}

fn embedding() -> Verdict {
    ensure(
        verify_embedding(&nodal_cubic(), &nodal_cubic_x(), &nodal_cubic_y()),
        "embedding check failed",
    )?;
    Ok("x = t^2 - 1, y = t^3 - t satisfy y^2 = x^2 (x + 1) in A".into())
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for target in ["locproj", "bialgebroid"] {
        let mut docs = Vec::new();
        for name in ["a.json", "b.json"] {
            let path = dir.path().join(name);
            let p = path.to_str().unwrap();
            let args = ["--preset", "nodal-cubic", "--seed", "7", "refute", target, "--out", p];
            ensure(nodal(&args).0 == 0, "refute failed")?;
            let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
            docs.push(CertificateFile::from_json(&text).map_err(|e| e.to_string())?);
        }
        let (a, mut b) = (docs.remove(0), docs.remove(0));
        ensure(a.digest == b.digest, format!("{target}: digests differ"))?;
        b.created_unix = a.created_unix;
        ensure(a.to_json() == b.to_json(), format!("{target}: documents differ"))?;
    }
    Ok("repeated refute runs identical apart from created_unix".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("defining relation", defining_relation),
        ("closed form vs rewriting oracle", oracle_equivalence),
        ("D_A criterion consistency", da_criterion),
        ("D_A preserves I", ideal_preservation),
        ("first-order witness example", first_order_example),
        ("second-order witness example", second_order_example),
        ("Psi image maps I into I^2", psi_image_containment),
        ("local projectivity certificate", locproj_certificate),
        ("bialgebroid certificate", bialgebroid_certificate),
        ("nodal cubic embedding", embedding),
        ("certificate determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS {:>2} {name}: {note}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
