//! Seeded fuzzing of the polynomial identities.
//!
//! Trial `t` of check `k` draws from `Sampler::new(seed, 4 t + k)`, so each
//! check can be replayed on its own and adding trials never changes earlier
//! ones.

use std::fmt;

use gausscomp_core::bilinear::mix_check;
use gausscomp_core::forms::{det_identity_check, lagrange_check};
use gausscomp_core::sample::Sampler;
use gausscomp_core::{compose, Form};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

impl Tally {
    fn record(&mut self, outcome: Option<bool>) {
        match outcome {
            Some(true) => self.pass += 1,
            Some(false) => self.fail += 1,
            None => self.skip += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub seed: u64,
    pub trials: u64,
    pub det: Tally,
    pub lagrange: Tally,
    pub det_inv: Tally,
    pub mix: Tally,
    /// `(check, trial)` of each failure, for replay.
    pub failures: Vec<(&'static str, u64)>,
}

impl IdentityReport {
    pub fn failed(&self) -> u64 {
        self.det.fail + self.lagrange.fail + self.det_inv.fail + self.mix.fail
    }

    fn tallies(&self) -> [(&'static str, &Tally); 4] {
        [
            ("det", &self.det),
            ("lagrange", &self.lagrange),
            ("det_inv", &self.det_inv),
            ("mix", &self.mix),
        ]
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed={} trials={}", self.seed, self.trials)?;
        for (name, t) in self.tallies() {
            writeln!(f, "{name}: pass={} fail={} skip={}", t.pass, t.fail, t.skip)?;
        }
        for (name, trial) in &self.failures {
            writeln!(f, "failed: {name} trial={trial}")?;
        }
        Ok(())
    }
}

/// `4(f(v,w)^2 - f(v)f(w)) = d(f) det(v,w)^2` on a random form and two vectors.
fn det_trial(s: &mut Sampler) -> Option<bool> {
    let f = s.form()?;
    let (v, w) = (s.vec2(), s.vec2());
    Some(det_identity_check(&f, &v, &w))
}

fn lagrange_trial(s: &mut Sampler) -> Option<bool> {
    let f = s.form()?;
    let (a, b, c, d) = (s.vec2(), s.vec2(), s.vec2(), s.vec2());
    Some(lagrange_check(&f, &a, &b, &c, &d))
}

/// `d(f∘A) = d(f) det(A)^2` for a random integer matrix. A substitution that
/// kills the form is skipped.
fn det_inv_trial(s: &mut Sampler) -> Option<bool> {
    let f = s.form()?;
    let m = s.matrix(-9, 9);
    let g = f.act(&m).ok()?;
    let det = m.det();
    Some(g.disc() == f.disc() * &det * &det)
}

/// The four-vector identity on a freshly composed pair.
fn mix_trial(s: &mut Sampler) -> Option<bool> {
    let f: Form = s.form()?;
    let fp = s.square_ratio_partner(&f)?;
    let Ok(report) = compose(&f, &fp) else {
        return Some(false);
    };
    let v = report.result;
    let (x, xp, y, yp) = (s.vec2(), s.vec2(), s.vec2(), s.vec2());
    Some(mix_check(
        &v.f, &v.fprime, &v.big_f, &v.law, &x, &xp, &y, &yp,
    ))
}

pub fn run_identities(seed: u64, trials: u64) -> IdentityReport {
    let mut report = IdentityReport {
        seed,
        trials,
        det: Tally::default(),
        lagrange: Tally::default(),
        det_inv: Tally::default(),
        mix: Tally::default(),
        failures: Vec::new(),
    };
    type Check = fn(&mut Sampler) -> Option<bool>;
    let checks: [(&'static str, Check); 4] = [
        ("det", det_trial),
        ("lagrange", lagrange_trial),
        ("det_inv", det_inv_trial),
        ("mix", mix_trial),
    ];
    for t in 0..trials {
        for (k, (name, check)) in checks.iter().enumerate() {
            let mut s = Sampler::new(seed, 4 * t + k as u64);
            let outcome = check(&mut s);
            if outcome == Some(false) {
                report.failures.push((name, t));
            }
            let tally = match k {
                0 => &mut report.det,
                1 => &mut report.lagrange,
                2 => &mut report.det_inv,
                _ => &mut report.mix,
            };
            tally.record(outcome);
        }
    }
    report
}
