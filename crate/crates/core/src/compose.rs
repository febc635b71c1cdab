//! Constructing a direct composition of two forms.
//!
//! For `f = (a,b,c)` and `f' = (a',b',c')` with `d(f') = d(f) r^2`, both forms
//! are embedded into `A = Q[t]/(t^2 - d(f))` so that `a N(φ(x)) = f(x)` and
//! `a' N(φ'(x')) = f'(x')`. The products `φ(e_i) φ'(e_j)` generate a lattice
//! whose Hermite basis gives the coordinates `s`, the law
//! `x ∘ x' = s(φ(x) φ'(x'))`, and the form `F(z) = a a' N(s^{-1} z)`.
//! Carrying `a a'` as an integer scale avoids the square roots `√a`, `√a'`.
//!
//! The ambient discriminant is always `d(f)`, so swapping the arguments can
//! give a different (equally valid) law.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::bilinear::{verify, verify_structure, BilinearLaw, VerifiedComposition};
use crate::error::{Error, Result};
use crate::exact::{is_rational_square, Int, Mat2, Rat, Vec2};
use crate::forms::Form;
use crate::quadalg::{embedding, product_lattice, scaled_embedding};

/// Normalization steps behind a constructed law. Feeding the same record to
/// [`construct`] rebuilds the identical law.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transforms {
    /// `det = 1` substitution giving `f` a nonzero leading coefficient.
    pub f_pre: Mat2,
    pub fp_pre: Mat2,
    /// Use `conj ∘ φ` instead of `φ` (flips the sign of `ν'`).
    pub conj_f: bool,
    /// Use `conj ∘ φ'` instead of `φ'` (flips the sign of `ν`).
    pub conj_fp: bool,
    /// Basis `(m1, -m2)` instead of the Hermite basis (flips both signs).
    pub orientation_flipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComposeReport {
    pub result: VerifiedComposition,
    /// `r > 0` with `d(f') = d(f) r^2`.
    pub r: Rat,
    pub transforms: Transforms,
}

/// `r > 0` with `dp = d r^2`.
pub fn square_ratio(d: &Int, dp: &Int) -> Result<Rat> {
    if d.is_zero() || dp.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let ratio = Rat::new(dp.clone(), d.clone());
    if ratio.is_negative() {
        return Err(Error::NonSquareRatio { ratio });
    }
    is_rational_square(&ratio)?.ok_or(Error::NonSquareRatio { ratio })
}

/// A properly equivalent form with nonzero leading coefficient, and the
/// `det = 1` matrix `A` with `g = f∘A`.
pub fn normalize_rep(f: &Form) -> (Form, Mat2) {
    let candidates = [
        Mat2::identity(),
        Mat2::from_rows(0, -1, 1, 0),
        Mat2::from_rows(1, 0, 1, 1),
    ];
    for m in candidates {
        if !f.value(&m.column(0)).is_zero() {
            let g = f
                .act(&m)
                .expect("unimodular action keeps a nonzero form nonzero");
            return (g, m);
        }
    }
    unreachable!("a form vanishing at (1,0), (0,1) and (1,1) is zero")
}

/// Builds `(F, law)` for the given normalization choices without verifying.
pub fn construct(f: &Form, fp: &Form, r: &Rat, t: &Transforms) -> Result<(Form, BilinearLaw)> {
    let g = f.act(&t.f_pre)?;
    let gp = fp.act(&t.fp_pre)?;
    let d = g.disc();

    let mut phi = embedding(&g)?;
    if t.conj_f {
        phi = phi.conjugated();
    }
    let mut phip = scaled_embedding(&gp, &d, r)?;
    if t.conj_fp {
        phip = phip.conjugated();
    }

    let basis = [Vec2::e1(), Vec2::e2()];
    let mut products = Vec::with_capacity(4);
    for ei in &basis {
        for ej in &basis {
            products.push(phi.image(ei).mul(&phip.image(ej))?);
        }
    }

    let mut lattice = product_lattice(&products)?;
    if t.orientation_flipped {
        lattice = lattice.flipped();
    }
    let scale = g.a() * gp.a();
    let norm = lattice.norm_form(&scale);
    let big_f = norm
        .to_form()
        .ok_or_else(|| Error::InternalBug(format!("composed form {norm} is not integer")))?;

    let coords: Vec<Vec2> = products
        .iter()
        .map(|p| lattice.coords(p))
        .collect::<Result<_>>()?;
    let [e11, e12, e21, e22]: [Vec2; 4] = coords.try_into().expect("four products");
    let normalized_law = BilinearLaw::new(e11, e12, e21, e22);

    let undo = |m: &Mat2| {
        m.inverse_unimodular()
            .expect("normalization matrices are unimodular")
    };
    let law = normalized_law.pullback(&undo(&t.f_pre), &undo(&t.fp_pre));
    Ok((big_f, law))
}

/// A direct composition of `f` and `fp`, fully verified.
///
/// Fails with [`Error::NonSquareRatio`] exactly when `d(fp)/d(f)` is not the
/// square of a rational.
pub fn compose(f: &Form, fp: &Form) -> Result<ComposeReport> {
    let r = square_ratio(&f.disc(), &fp.disc())?;
    let mut transforms = Transforms {
        f_pre: normalize_rep(f).1,
        fp_pre: normalize_rep(fp).1,
        conj_f: false,
        conj_fp: false,
        orientation_flipped: false,
    };
    let bug = |e: Error| Error::InternalBug(format!("constructed law fails verification: {e}"));

    // Each adjustment fixes at least one sign, so three passes always suffice.
    for _ in 0..3 {
        let (big_f, law) = construct(f, fp, &r, &transforms)?;
        let structure = verify_structure(f, fp, &big_f, &law).map_err(bug)?;
        let (nu_neg, nuprime_neg) = (structure.nu.is_negative(), structure.nuprime.is_negative());
        match (nu_neg, nuprime_neg) {
            (false, false) => {
                let result = verify(f, fp, &big_f, &law).map_err(bug)?;
                return Ok(ComposeReport {
                    result,
                    r,
                    transforms,
                });
            }
            (true, true) => transforms.orientation_flipped = !transforms.orientation_flipped,
            (true, false) => transforms.conj_fp = !transforms.conj_fp,
            (false, true) => transforms.conj_f = !transforms.conj_f,
        }
    }
    Err(Error::InternalBug(format!(
        "could not make the composition of {f} and {fp} direct"
    )))
}
