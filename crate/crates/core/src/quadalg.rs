//! The algebra `A = Q[t]/(t^2 - d)` with `ε = [t]`, and lattices inside it.
//!
//! Only rational points are ever constructed, so the arithmetic is exact.
//! When `d` is a perfect square the algebra has zero divisors; nothing here
//! inverts an element, so that case needs no special handling.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{hnf_basis, int, rat_int, solve2, Int, QVec2, Rat, Vec2};
use crate::forms::{Form, RatForm};

/// `u + v ε` with `ε^2 = d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub u: Rat,
    pub v: Rat,
    d: Int,
}

impl AlgebraElement {
    pub fn new(u: Rat, v: Rat, d: &Int) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Usage("ambient d must be nonzero"));
        }
        Ok(AlgebraElement { u, v, d: d.clone() })
    }

    pub fn one(d: &Int) -> Result<Self> {
        Self::new(Rat::from_integer(int(1)), Rat::zero(), d)
    }

    pub fn epsilon(d: &Int) -> Result<Self> {
        Self::new(Rat::zero(), Rat::from_integer(int(1)), d)
    }

    pub fn ambient(&self) -> &Int {
        &self.d
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.d.clone(),
                right: other.d.clone(),
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(AlgebraElement {
            u: &self.u * &other.u + rat_int(&self.d) * &self.v * &other.v,
            v: &self.u * &other.v + &self.v * &other.u,
            d: self.d.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(AlgebraElement {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
            d: self.d.clone(),
        })
    }

    pub fn scale(&self, k: &Rat) -> Self {
        AlgebraElement {
            u: &self.u * k,
            v: &self.v * k,
            d: self.d.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        AlgebraElement {
            u: self.u.clone(),
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    /// `u ū = u^2 - d v^2`.
    pub fn norm(&self) -> Rat {
        &self.u * &self.u - rat_int(&self.d) * &self.v * &self.v
    }

    /// Coordinates in the basis `{1, ε}`.
    pub fn coordinates(&self) -> QVec2 {
        QVec2::new(self.u.clone(), self.v.clone())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.u, self.v)
    }
}

/// A rational linear map `φ : Q^2 -> A` with `lead * N(φ(x, y)) = f(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    /// Row 0 holds the `1`-coordinates of `φ(e1)`, `φ(e2)`; row 1 the `ε`-coordinates.
    pub matrix: [[Rat; 2]; 2],
    d: Int,
    pub lead: Int,
}

impl Embedding {
    pub fn ambient(&self) -> &Int {
        &self.d
    }

    pub fn image(&self, v: &Vec2) -> AlgebraElement {
        let (x, y) = (rat_int(&v.x), rat_int(&v.y));
        let m = &self.matrix;
        AlgebraElement {
            u: &m[0][0] * &x + &m[0][1] * &y,
            v: &m[1][0] * &x + &m[1][1] * &y,
            d: self.d.clone(),
        }
    }

    pub fn det(&self) -> Rat {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// `x -> conj(φ(x))`; the norm, and hence the identity with `f`, is unchanged.
    pub fn conjugated(&self) -> Embedding {
        let mut out = self.clone();
        out.matrix[1][0] = -&out.matrix[1][0];
        out.matrix[1][1] = -&out.matrix[1][1];
        out
    }

    /// Coefficients of `lead * N(φ(x, y))`.
    pub fn pulled_back_norm(&self) -> RatForm {
        let [[p, q], [r, s]] = &self.matrix;
        let d = rat_int(&self.d);
        let lead = rat_int(&self.lead);
        let two = Rat::from_integer(int(2));
        RatForm {
            a: &lead * (p * p - &d * r * r),
            b: &lead * &two * (p * q - &d * r * s),
            c: &lead * (q * q - &d * s * s),
        }
    }

    fn checked(self, f: &Form) -> Result<Embedding> {
        if self.pulled_back_norm() != f.to_rational() {
            return Err(Error::InternalBug(alloc::format!(
                "embedding does not reproduce {f}"
            )));
        }
        Ok(self)
    }
}

/// `φ(x, y) = (x + (b/2a) y) + (y/2a) ε` in the algebra with `d = d(f)`.
pub fn embedding(f: &Form) -> Result<Embedding> {
    scaled_embedding(f, &f.disc(), &Rat::from_integer(int(1)))
}

/// `φ'(x, y) = (x + (b/2a) y) + (r y/2a) ε` in the algebra with `d = d_target`,
/// valid when `d(f) = d_target * r^2`.
pub fn scaled_embedding(f: &Form, d_target: &Int, r: &Rat) -> Result<Embedding> {
    if f.a().is_zero() {
        return Err(Error::NonzeroLeadRequired);
    }
    if f.disc().is_zero() || d_target.is_zero() {
        return Err(Error::DegenerateForm);
    }
    if rat_int(&f.disc()) != rat_int(d_target) * r * r {
        return Err(Error::RatioMismatch);
    }
    let two_a = int(2) * f.a();
    Embedding {
        matrix: [
            [
                Rat::from_integer(int(1)),
                Rat::new(f.b().clone(), two_a.clone()),
            ],
            [Rat::zero(), r / rat_int(&two_a)],
        ],
        d: d_target.clone(),
        lead: f.a().clone(),
    }
    .checked(f)
}

/// A rank-2 additive subgroup of `A` with basis `(m1, m2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QLattice {
    pub m1: AlgebraElement,
    pub m2: AlgebraElement,
}

impl QLattice {
    pub fn new(m1: AlgebraElement, m2: AlgebraElement) -> Result<Self> {
        m1.check_ambient(&m2)?;
        if crate::exact::qdet2(&m1.coordinates(), &m2.coordinates()).is_zero() {
            return Err(Error::Rank { rank: 1 });
        }
        Ok(QLattice { m1, m2 })
    }

    pub fn ambient(&self) -> &Int {
        self.m1.ambient()
    }

    /// Coefficients of `z -> scale * N(z1 m1 + z2 m2)`.
    pub fn norm_form(&self, scale: &Int) -> RatForm {
        let (a, b) = (&self.m1, &self.m2);
        let d = rat_int(self.ambient());
        let s = rat_int(scale);
        let cross = Rat::from_integer(int(2)) * (&a.u * &b.u - &d * &a.v * &b.v);
        RatForm {
            a: &s * a.norm(),
            b: &s * cross,
            c: &s * b.norm(),
        }
    }

    /// The integer `z` with `u = z1 m1 + z2 m2`.
    pub fn coords(&self, u: &AlgebraElement) -> Result<Vec2> {
        self.m1.check_ambient(u)?;
        let (z1, z2) = solve2(
            &self.m1.coordinates(),
            &self.m2.coordinates(),
            &u.coordinates(),
        )
        .ok_or(Error::Rank { rank: 1 })?;
        QVec2::new(z1, z2).to_integer().ok_or(Error::NotInLattice)
    }

    /// Same lattice with basis `(m1, -m2)`.
    pub fn flipped(&self) -> QLattice {
        QLattice {
            m1: self.m1.clone(),
            m2: self.m2.scale(&Rat::from_integer(int(-1))),
        }
    }

    /// Same lattice with basis `n_j = Σ_i M_ij m_i` (columns of `M` are the new
    /// basis in old coordinates).
    pub fn with_basis_change(&self, m: &crate::exact::Mat2) -> Result<QLattice> {
        let combo = |j: usize| -> Result<AlgebraElement> {
            self.m1
                .scale(&rat_int(&m.rows[0][j]))
                .add(&self.m2.scale(&rat_int(&m.rows[1][j])))
        };
        QLattice::new(combo(0)?, combo(1)?)
    }
}

/// The lattice generated by `gens`, in Hermite normal form.
pub fn product_lattice(gens: &[AlgebraElement]) -> Result<QLattice> {
    let first = gens.first().ok_or(Error::Rank { rank: 0 })?;
    for g in gens {
        first.check_ambient(g)?;
    }
    let coords: Vec<QVec2> = gens.iter().map(AlgebraElement::coordinates).collect();
    let (b1, b2) = hnf_basis(&coords)?;
    let d = first.ambient();
    QLattice::new(
        AlgebraElement::new(b1.x, b1.y, d)?,
        AlgebraElement::new(b2.x, b2.y, d)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Mat2};

    fn el(u: (i64, i64), v: (i64, i64), d: i64) -> AlgebraElement {
        AlgebraElement::new(rat(u.0, u.1), rat(v.0, v.1), &int(d)).unwrap()
    }

    fn form(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let u = el((1, 2), (1, 4), -20);
        assert_eq!(u.mul(&u).unwrap(), el((-1, 1), (1, 4), -20));
        assert_eq!(u.mul(&AlgebraElement::one(&int(-20)).unwrap()).unwrap(), u);
        let eps = AlgebraElement::epsilon(&int(9)).unwrap();
        assert_eq!(eps.mul(&eps).unwrap(), el((9, 1), (0, 1), 9));
    }

    #[test]
    fn ambient_mismatch() {
        let err = el((1, 1), (0, 1), 5)
            .mul(&el((1, 1), (0, 1), 3))
            .unwrap_err();
        assert_eq!(
            err,
            Error::AmbientMismatch {
                left: int(5),
                right: int(3)
            }
        );
        assert!(AlgebraElement::new(rat(1, 1), rat(0, 1), &int(0)).is_err());
    }

    #[test]
    fn norm_examples() {
        let u = el((1, 2), (1, 4), -20);
        assert_eq!(u.norm(), rat(3, 2));
        assert_eq!(u.conj().conj(), u);
        let (u, v) = (el((1, 1), (1, 1), -20), el((2, 1), (-1, 1), -20));
        assert_eq!((u.norm(), v.norm()), (rat(21, 1), rat(24, 1)));
        assert_eq!(u.mul(&v).unwrap().norm(), rat(504, 1));
    }

    #[test]
    fn embedding_examples() {
        let e = embedding(&form(2, 2, 3)).unwrap();
        assert_eq!(e.matrix, [[rat(1, 1), rat(1, 2)], [rat(0, 1), rat(1, 4)]]);
        assert_eq!(e.ambient(), &int(-20));
        assert_eq!(rat_int(&e.lead) * e.image(&Vec2::e2()).norm(), rat(3, 1));

        let e = embedding(&form(1, 0, 1)).unwrap();
        assert_eq!(e.matrix, [[rat(1, 1), rat(0, 1)], [rat(0, 1), rat(1, 2)]]);
        assert_eq!(e.ambient(), &int(-4));

        assert_eq!(embedding(&form(0, 1, 0)), Err(Error::NonzeroLeadRequired));
        assert_eq!(embedding(&form(1, 2, 1)), Err(Error::DegenerateForm));
    }

    #[test]
    fn scaled_embedding_examples() {
        let e = scaled_embedding(&form(1, 0, 4), &int(-4), &rat(2, 1)).unwrap();
        assert_eq!(e.matrix, [[rat(1, 1), rat(0, 1)], [rat(0, 1), rat(1, 1)]]);
        let f = form(2, 2, 3);
        assert_eq!(
            scaled_embedding(&f, &int(-20), &rat(1, 1)).unwrap(),
            embedding(&f).unwrap()
        );
        assert_eq!(
            scaled_embedding(&form(1, 0, 5), &int(-4), &rat(1, 1)),
            Err(Error::RatioMismatch)
        );
    }

    #[test]
    fn conjugated_embedding_keeps_identity() {
        let f = form(-3, 5, 2);
        let e = embedding(&f).unwrap().conjugated();
        assert_eq!(e.pulled_back_norm(), f.to_rational());
        assert_eq!(e.det(), -embedding(&f).unwrap().det());
    }

    #[test]
    fn product_lattice_examples() {
        let d = -20;
        let l = product_lattice(&[
            el((1, 1), (0, 1), d),
            el((1, 2), (1, 4), d),
            el((-1, 1), (1, 4), d),
        ])
        .unwrap();
        assert_eq!(
            (l.m1.clone(), l.m2.clone()),
            (el((1, 2), (0, 1), d), el((0, 1), (1, 4), d))
        );

        let l = product_lattice(&[el((1, 1), (0, 1), d), el((0, 1), (1, 1), d)]).unwrap();
        assert_eq!((l.m1, l.m2), (el((1, 1), (0, 1), d), el((0, 1), (1, 1), d)));

        let d = -4;
        let l = product_lattice(&[
            el((1, 1), (0, 1), d),
            el((0, 1), (1, 2), d),
            el((-2, 1), (0, 1), d),
        ])
        .unwrap();
        assert_eq!((l.m1, l.m2), (el((1, 1), (0, 1), d), el((0, 1), (1, 2), d)));

        assert_eq!(
            product_lattice(&[el((1, 1), (1, 1), 3), el((2, 1), (2, 1), 3)]),
            Err(Error::Rank { rank: 1 })
        );
    }

    #[test]
    fn norm_form_examples() {
        let l = QLattice::new(el((1, 2), (0, 1), -20), el((0, 1), (1, 4), -20)).unwrap();
        assert_eq!(l.norm_form(&int(4)).to_form(), Some(form(1, 0, 5)));
        let d = 7;
        let l = QLattice::new(el((1, 1), (0, 1), d), el((0, 1), (1, 1), d)).unwrap();
        assert_eq!(l.norm_form(&int(1)).to_form(), Some(form(1, 0, -d)));
        let l = QLattice::new(el((1, 1), (0, 1), -4), el((0, 1), (1, 2), -4)).unwrap();
        assert_eq!(l.norm_form(&int(1)).to_form(), Some(form(1, 0, 1)));
    }

    #[test]
    fn coords_examples() {
        let l = QLattice::new(el((1, 2), (0, 1), -20), el((0, 1), (1, 4), -20)).unwrap();
        assert_eq!(l.coords(&el((1, 1), (0, 1), -20)), Ok(Vec2::new(2, 0)));
        assert_eq!(l.coords(&l.m1), Ok(Vec2::new(1, 0)));
        let l = QLattice::new(el((1, 1), (0, 1), -20), el((0, 1), (1, 1), -20)).unwrap();
        assert_eq!(l.coords(&el((1, 2), (0, 1), -20)), Err(Error::NotInLattice));
    }

    #[test]
    fn norm_form_follows_basis_change() {
        let l = QLattice::new(el((1, 2), (0, 1), -20), el((0, 1), (1, 4), -20)).unwrap();
        let m = Mat2::from_rows(2, 1, 1, 1);
        let moved = l.with_basis_change(&m).unwrap();
        let before = l.norm_form(&int(4)).to_form().unwrap();
        assert_eq!(
            moved.norm_form(&int(4)).to_form().unwrap(),
            before.act(&m).unwrap()
        );
    }

    #[test]
    fn split_algebra_products() {
        // d = 9 is a square: (3 + ε)(3 - ε) = 0.
        let (u, v) = (el((3, 1), (1, 1), 9), el((3, 1), (-1, 1), 9));
        let z = u.mul(&v).unwrap();
        assert_eq!((z.u.clone(), z.v.clone()), (rat(0, 1), rat(0, 1)));
        assert_eq!(z.norm(), u.norm() * v.norm());
    }
}
