//! Deterministic pseudo-random draws for fuzzing.
//!
//! The generator is SplitMix64. A stream is keyed by `(seed, trial)`:
//!
//! ```text
//! state_0  = mix(seed * 0x9E3779B97F4A7C15 ^ trial)      (wrapping u64 arithmetic)
//! state_k  = state_{k-1} + 0x9E3779B97F4A7C15
//! output_k = mix(state_k)
//! mix(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!          z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!          z ^ (z >> 31)
//! ```
//!
//! An integer in `[lo, hi]` is `lo + output % (hi - lo + 1)`. Small draws
//! (form coefficients, vector entries) are taken from `[-9, 9]`.
//!
//! `state_0` is injective in `trial` for a fixed seed, so distinct trials
//! start from distinct states.

use num_traits::Zero;

use crate::compose::square_ratio;
use crate::exact::{int, Mat2, Vec2};
use crate::forms::Form;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Inclusive bound on small draws.
pub const SMALL: i64 = 9;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sampler {
    state: u64,
}

impl Sampler {
    pub fn new(seed: u64, trial: u64) -> Self {
        Sampler {
            state: mix(seed.wrapping_mul(GOLDEN) ^ trial),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform-ish integer in `[lo, hi]` (plain modulo reduction).
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn small(&mut self) -> i64 {
        self.range(-SMALL, SMALL)
    }

    pub fn vec2(&mut self) -> Vec2 {
        let x = self.small();
        Vec2::new(x, self.small())
    }

    pub fn coefficients(&mut self) -> [i64; 3] {
        [self.small(), self.small(), self.small()]
    }

    /// A form with small coefficients, or `None` for a degenerate draw (zero
    /// form or zero discriminant).
    pub fn form(&mut self) -> Option<Form> {
        let [a, b, c] = self.coefficients();
        Form::new(a, b, c).ok().filter(|f| !f.disc().is_zero())
    }

    pub fn matrix(&mut self, lo: i64, hi: i64) -> Mat2 {
        let entries = [
            self.range(lo, hi),
            self.range(lo, hi),
            self.range(lo, hi),
            self.range(lo, hi),
        ];
        Mat2::from_rows(entries[0], entries[1], entries[2], entries[3])
    }

    /// A product of three elementary `det = ±1` moves.
    pub fn unimodular(&mut self) -> Mat2 {
        let mut m = Mat2::identity();
        for _ in 0..3 {
            let k = self.range(-2, 2);
            let step = match self.range(0, 3) {
                0 => Mat2::from_rows(1, k, 0, 1),
                1 => Mat2::from_rows(1, 0, k, 1),
                2 => Mat2::from_rows(0, -1, 1, 0),
                _ => Mat2::from_rows(1, 0, 0, -1),
            };
            m = &m * &step;
        }
        m
    }

    /// A form `f'` with `d(f')/d(f)` a rational square, obtained from `f` by a
    /// unimodular change of variables, a scalar multiple, or a nonsingular
    /// integer substitution; coefficients stay in `[-9, 9]`. `None` when no
    /// attempt lands in range.
    pub fn square_ratio_partner(&mut self, f: &Form) -> Option<Form> {
        for _ in 0..16 {
            let candidate = match self.range(0, 3) {
                0 => f.act(&self.unimodular()).ok(),
                1 => {
                    let k = self.range(1, 3) * if self.range(0, 1) == 0 { 1 } else { -1 };
                    f.scaled(&int(k)).ok()
                }
                2 => {
                    let m = self.matrix(-2, 2);
                    if m.det().is_zero() {
                        None
                    } else {
                        f.act(&m).ok()
                    }
                }
                _ => {
                    let k = if self.range(0, 1) == 0 { 1 } else { -1 };
                    f.act(&self.unimodular())
                        .ok()
                        .and_then(|g| g.scaled(&int(k)).ok())
                }
            };
            if let Some(g) = candidate.filter(within_small) {
                return Some(g);
            }
        }
        None
    }

    /// A pair of nondegenerate forms whose discriminant ratio is not a
    /// rational square, or `None` if this draw happened to be square.
    pub fn non_square_pair(&mut self) -> Option<(Form, Form)> {
        let f = self.form()?;
        let fp = self.form()?;
        square_ratio(&f.disc(), &fp.disc())
            .is_err()
            .then_some((f, fp))
    }
}

fn within_small(f: &Form) -> bool {
    let bound = int(SMALL);
    f.coefficients()
        .iter()
        .all(|c| c <= &bound && c >= &-bound.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // Reference SplitMix64 outputs for state 0.
        let mut s = Sampler { state: 0 };
        assert_eq!(s.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(s.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn streams_are_keyed() {
        let draw = |seed, trial| {
            let mut s = Sampler::new(seed, trial);
            (s.next_u64(), s.next_u64())
        };
        assert_ne!(draw(0, 0), draw(0, 1));
        assert_eq!(draw(0, 0), draw(0, 0));
        assert_ne!(draw(1, 0), draw(0, 0));
    }

    #[test]
    fn small_draws_stay_in_range() {
        let mut s = Sampler::new(3, 0);
        let mut seen = [false; 19];
        for _ in 0..2000 {
            let v = s.small();
            assert!((-9..=9).contains(&v));
            seen[(v + 9) as usize] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn partners_have_square_ratio() {
        let mut found = 0;
        for trial in 0..200 {
            let mut s = Sampler::new(11, trial);
            let Some(f) = s.form() else { continue };
            let Some(g) = s.square_ratio_partner(&f) else {
                continue;
            };
            assert!(within_small(&g));
            assert!(square_ratio(&f.disc(), &g.disc()).is_ok());
            found += 1;
        }
        assert!(found > 100);
    }

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut s = Sampler::new(5, 5);
        for _ in 0..100 {
            assert!(s.unimodular().is_unimodular());
        }
    }
}
