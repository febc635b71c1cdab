//! Worked examples, each checked end to end.

use std::fmt::Write as _;

use gausscomp_core::bilinear::verify;
use gausscomp_core::forms::trigroup_check;
use gausscomp_core::{compose, BilinearLaw, Form, Int, Rat, Vec2};

/// `X = xx' - d yy'`, `Y = xy' + x'y`: composes `(1,0,d)` with itself.
pub fn principal_law(d: i64) -> BilinearLaw {
    BilinearLaw::new(
        Vec2::new(1, 0),
        Vec2::new(0, 1),
        Vec2::new(0, 1),
        Vec2::new(-d, 0),
    )
}

/// The law composing `(2,2,3)` with itself into `(1,0,5)`.
pub fn worked_law() -> BilinearLaw {
    BilinearLaw::new(
        Vec2::new(2, 0),
        Vec2::new(1, 1),
        Vec2::new(1, 1),
        Vec2::new(-2, 1),
    )
}

fn form(a: i64, b: i64, c: i64) -> Form {
    Form::new(a, b, c).expect("nonzero literal")
}

/// Runs every example, appending one line per check to `out`. Returns the
/// number of failed checks.
pub fn run_demo(out: &mut String) -> usize {
    let mut failures = 0;
    let mut check = |out: &mut String, label: String, ok: bool| {
        let _ = writeln!(out, "{} {label}", if ok { "ok  " } else { "FAIL" });
        failures += usize::from(!ok);
    };

    let one = form(1, 0, 1);
    let sum = verify(&one, &one, &one, &principal_law(1));
    check(
        out,
        "sum of two squares: (1,0,1) x (1,0,1) -> (1,0,1)".into(),
        sum.is_ok_and(|v| v.direct),
    );

    for d in 1..=10 {
        let f = form(1, 0, d);
        let ok = verify(&f, &f, &f, &principal_law(d)).is_ok_and(|v| v.direct);
        check(
            out,
            format!("X = xx' - {d}yy', Y = xy' + x'y on (1,0,{d})"),
            ok,
        );
    }

    let g = form(2, 2, 3);
    let target = form(1, 0, 5);
    let worked = verify(&g, &g, &target, &worked_law());
    let ok = worked.as_ref().is_ok_and(|v| {
        v.direct
            && v.delta_cap == Rat::from_integer(Int::from(-5))
            && v.nu == Rat::from_integer(Int::from(1))
    });
    check(out, "(2,2,3) x (2,2,3) -> (1,0,5), Delta = -5".into(), ok);
    let rebuilt =
        compose(&g, &g).is_ok_and(|r| r.result.big_f == target && r.result.law == worked_law());
    check(
        out,
        "compose((2,2,3),(2,2,3)) reproduces that law".into(),
        rebuilt,
    );

    let tri = trigroup_check(&g, 30, 200);
    check(
        out,
        "products of three values of (2,2,3) up to 30 are values".into(),
        tri.is_ok_and(|t| t.is_empty()),
    );
    failures
}
