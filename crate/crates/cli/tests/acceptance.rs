//! Acceptance criteria. Runs without the test harness so that every
//! criterion prints exactly one line; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gausscomp::demo::{principal_law, worked_law};
use gausscomp::identities::run_identities;
use gausscomp_core::bilinear::{invariant_clauses, verify};
use gausscomp_core::exact::gcd;
use gausscomp_core::forms::{properly_equivalent_definite, trigroup_check};
use gausscomp_core::sample::Sampler;
use gausscomp_core::{compose, Error, Form, Int, Rat, VerifiedComposition};
use num_traits::Signed;

type Outcome = Result<String, String>;

fn form(a: i64, b: i64, c: i64) -> Form {
    Form::new(a, b, c).unwrap()
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

/// Compositions collected by criteria 1-3 for the relations checked in 5 and 6.
#[derive(Default)]
struct Collected {
    verified: Vec<VerifiedComposition>,
    suite3: Vec<VerifiedComposition>,
}

fn c1(seen: &mut Collected) -> Outcome {
    let start = Instant::now();
    let g = form(2, 2, 3);
    let target = form(1, 0, 5);
    let v = verify(&g, &g, &target, &worked_law()).map_err(|e| e.to_string())?;
    ensure(v.nu == rat(1) && v.nuprime == rat(1), || {
        format!("nu={} nu'={}", v.nu, v.nuprime)
    })?;
    ensure(v.delta_cap == rat(-5) && v.direct, || {
        format!("Delta={} direct={}", v.delta_cap, v.direct)
    })?;
    let built = compose(&g, &g).map_err(|e| e.to_string())?.result;
    ensure(built.big_f == target, || {
        format!("composed to {}", built.big_f)
    })?;
    ensure(built.law == worked_law(), || format!("law {:?}", built.law))?;
    seen.verified.extend([v, built]);
    within(start, Duration::from_secs(1))?;
    Ok("verify and compose agree exactly".into())
}

fn c2(seen: &mut Collected) -> Outcome {
    let start = Instant::now();
    let one = form(1, 0, 1);
    seen.verified.push(
        verify(&one, &one, &one, &principal_law(1)).map_err(|e| format!("sum of squares: {e}"))?,
    );
    for d in 1..=10 {
        let f = form(1, 0, d);
        let v = verify(&f, &f, &f, &principal_law(d)).map_err(|e| format!("d={d}: {e}"))?;
        seen.verified.push(v);
    }
    within(start, Duration::from_secs(1))?;
    Ok("sum of squares and (1,0,d), d=1..10".into())
}

const SUITE3_SEED: u64 = 2;
const SUITE3_PAIRS: usize = 250;

fn c3(seen: &mut Collected) -> Outcome {
    let start = Instant::now();
    let mut trial = 0;
    while seen.suite3.len() < SUITE3_PAIRS {
        let mut s = Sampler::new(SUITE3_SEED, trial);
        trial += 1;
        let Some(f) = s.form() else { continue };
        let Some(fp) = s.square_ratio_partner(&f) else {
            continue;
        };
        let v = compose(&f, &fp)
            .map_err(|e| format!("{f} {fp}: {e}"))?
            .result;
        let clauses = invariant_clauses(&v.f, &v.fprime, &v.big_f, &v.nu, &v.nuprime, &v.delta_cap);
        for name in [
            "F integer",
            "delta(F) = delta(f) delta(f')",
            "sigma(F) = min(sigma(f), sigma(f'))",
            "theta(F) = gcd(theta(f), theta(f'))",
        ] {
            let clause = clauses
                .iter()
                .find(|c| c.name == name)
                .expect("clause exists");
            ensure(clause.holds, || {
                format!("{f} x {fp} -> {}: {name}", v.big_f)
            })?;
        }
        // Same checks directly from the invariant records.
        let (i, ip, big) = (
            v.f.invariants(),
            v.fprime.invariants(),
            v.big_f.invariants(),
        );
        ensure(big.delta == &i.delta * &ip.delta, || {
            format!("{f} {fp}: delta")
        })?;
        ensure(big.sigma == i.sigma.min(ip.sigma), || {
            format!("{f} {fp}: sigma")
        })?;
        ensure(
            big.theta.magnitude() == gcd(&i.theta, &ip.theta).magnitude()
                && big.theta.sign() == i.theta.sign()
                && i.theta.sign() == ip.theta.sign(),
            || format!("{f} {fp}: theta"),
        )?;
        seen.suite3.push(v);
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{SUITE3_PAIRS} pairs from seed {SUITE3_SEED}, {trial} draws"
    ))
}

fn c4(_: &mut Collected) -> Outcome {
    let start = Instant::now();
    // Enough trials that every check sees at least 1000 non-degenerate draws.
    let report = run_identities(0, 1100);
    ensure(report.failed() == 0, || format!("{report}"))?;
    for t in [&report.det, &report.lagrange, &report.det_inv, &report.mix] {
        ensure(t.pass >= 1000, || {
            format!("only {} evaluated trials\n{report}", t.pass)
        })?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "det {} / lagrange {} / det_inv {} / mix {} passes",
        report.det.pass, report.lagrange.pass, report.det_inv.pass, report.mix.pass
    ))
}

fn c5(seen: &mut Collected) -> Outcome {
    let all = seen.verified.iter().chain(&seen.suite3);
    let mut n = 0;
    for v in all {
        let (d, dp, big_d) = (rat_of(&v.f), rat_of(&v.fprime), rat_of(&v.big_f));
        ensure(rat(4) * &v.delta_cap == big_d * &v.nu * &v.nuprime, || {
            format!("4Δ ≠ Dνν' for {} {}", v.f, v.fprime)
        })?;
        ensure(rat(16) * &v.delta_cap * &v.delta_cap == d * dp, || {
            format!("16Δ² ≠ dd' for {} {}", v.f, v.fprime)
        })?;
        n += 1;
    }
    Ok(format!("{n} compositions"))
}

fn rat_of(f: &Form) -> Rat {
    Rat::from_integer(f.disc())
}

fn c6(seen: &mut Collected) -> Outcome {
    for v in &seen.suite3 {
        let (i, ip) = (v.f.invariants(), v.fprime.invariants());
        let left = v.nu.abs() * Rat::from_integer(i.delta.clone());
        let right = v.nuprime.abs() * Rat::from_integer(ip.delta.clone());
        ensure(left.is_integer() && right.is_integer(), || {
            format!("{} {}: non-integer", v.f, v.fprime)
        })?;
        let one = gcd(&left.to_integer(), &right.to_integer());
        ensure(one == Int::from(1), || {
            format!("{} {}: gcd {one}", v.f, v.fprime)
        })?;
        let d = v.f.disc().abs() * &ip.delta * &ip.delta;
        let dp = v.fprime.disc().abs() * &i.delta * &i.delta;
        ensure(gcd(&d, &dp) == v.big_f.disc().abs(), || {
            format!("{} {}: squared gcd", v.f, v.fprime)
        })?;
    }
    Ok(format!("{} compositions", seen.suite3.len()))
}

fn c7(_: &mut Collected) -> Outcome {
    let mut pairs = Vec::new();
    let mut trial = 0;
    while pairs.len() < 100 {
        let mut s = Sampler::new(3, trial);
        trial += 1;
        if let Some(p) = s.non_square_pair() {
            pairs.push(p);
        }
    }
    for (f, fp) in &pairs {
        match compose(f, fp) {
            Err(Error::NonSquareRatio { .. }) => {}
            other => return Err(format!("{f} {fp}: {other:?}")),
        }
    }
    // The binary emits nothing on standard output for such a pair.
    let (f, fp) = &pairs[0];
    let out = bin()
        .args(["compose", &f.to_string(), &fp.to_string()])
        .output()
        .unwrap();
    ensure(
        out.status.code() == Some(3) && out.stdout.is_empty(),
        || format!("{out:?}"),
    )?;
    Ok("100 pairs rejected, no law emitted".into())
}

fn c8(_: &mut Collected) -> Outcome {
    let start = Instant::now();
    let (e, g) = (form(1, 0, 5), form(2, 2, 3));
    for (f, fp, expected) in [(&g, &g, &e), (&e, &g, &g), (&g, &e, &g), (&e, &e, &e)] {
        let big_f = compose(f, fp).map_err(|err| err.to_string())?.result.big_f;
        let ok = properly_equivalent_definite(&big_f, expected).map_err(|err| err.to_string())?;
        ensure(ok, || {
            format!("{f} x {fp} = {big_f}, expected class of {expected}")
        })?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("two-element table closes".into())
}

fn c9(_: &mut Collected) -> Outcome {
    let start = Instant::now();
    let failures = trigroup_check(&form(2, 2, 3), 30, 200).map_err(|e| e.to_string())?;
    ensure(failures.is_empty(), || {
        format!("{} failing triples", failures.len())
    })?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("empty in {:.2?}", start.elapsed()))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gausscomp"))
}

fn c10(_: &mut Collected) -> Outcome {
    let run = || {
        bin()
            .args(["identities", "--seed", "7", "--trials", "1000"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    ensure(a.status.success() && b.status.success(), || {
        format!("{a:?}")
    })?;
    ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
        "outputs differ".into()
    })?;
    ensure(a.stderr.is_empty(), || "stderr not empty".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    type Criterion = fn(&mut Collected) -> Outcome;
    let criteria: [(&str, Criterion); 10] = [
        ("worked example (2,2,3)x(2,2,3) -> (1,0,5) round trip", c1),
        ("sum of squares and X = xx' - dyy', Y = xy' + x'y laws", c2),
        ("invariant relations on seeded square-ratio pairs", c3),
        ("identity fuzz, 1000 trials each", c4),
        ("4Δ = Dνν' and 16Δ² = dd'", c5),
        ("gcd(|ν|δ, |ν'|δ') = 1 and gcd(|d|δ'², |d'|δ²) = |D|", c6),
        ("non-square discriminant ratios rejected", c7),
        ("class table of discriminant -20", c8),
        ("trigroup (2,2,3), values <= 30, search 200", c9),
        ("identities --seed 7 --trials 1000 is reproducible", c10),
    ];
    let mut seen = Collected::default();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check(&mut seen) {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
