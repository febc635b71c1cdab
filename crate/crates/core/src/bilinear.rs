//! Composition laws `∘ : Z^2 x Z^2 -> Z^2` and their verification.
//!
//! Every identity here is checked symbolically, as an equality of
//! coefficient tables, never by sampling points. Sampling would be blind on
//! isotropic vectors of indefinite forms.

use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result, Side};
use crate::exact::{det2, gcd, gcd_list, int, rat_int, Int, Mat2, Rat, Vec2};
use crate::forms::Form;

/// A bilinear map given by the images `e_ij = e_i ∘ e_j` of basis pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearLaw {
    pub e11: Vec2,
    pub e12: Vec2,
    pub e21: Vec2,
    pub e22: Vec2,
}

/// Coefficients of a polynomial that is quadratic in each of two 2-vectors.
///
/// `table[i][j]` multiplies `x^i y^(2-i) x'^j y'^(2-j)` where `(x, y)` is the
/// first vector and `(x', y')` the second.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiQuadratic {
    pub table: [[Rat; 3]; 3],
}

/// A law checked against `F(x∘x') = f(x)f'(x')` together with the derived
/// constants `ν`, `ν'` and `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerifiedComposition {
    pub f: Form,
    pub fprime: Form,
    pub big_f: Form,
    pub law: BilinearLaw,
    /// `det(x∘) = ν f(x)`.
    pub nu: Rat,
    /// `det(∘x') = ν' f'(x')`.
    pub nuprime: Rat,
    /// `Δ` with `Q(x,y) = Δ det(x,y)^2`.
    pub delta_cap: Rat,
    /// Both `ν` and `ν'` are positive.
    pub direct: bool,
}

/// One named relation between the invariants of a composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub holds: bool,
}

/// A bilinear function of two 2-vectors: `Σ m[i][j] u_i v_j`, index 0 being
/// the first coordinate.
type Bilin = [[Rat; 2]; 2];

/// Coefficients of a binary quadratic indexed by the power of the first
/// coordinate: `[y^2, xy, x^2]`.
type Quad = [Rat; 3];

#[allow(clippy::needless_range_loop)]
fn bilin_product(p: &Bilin, q: &Bilin) -> BiQuadratic {
    let mut out = BiQuadratic::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let pu = usize::from(i == 0) + usize::from(k == 0);
                    let pv = usize::from(j == 0) + usize::from(l == 0);
                    out.table[pu][pv] += &p[i][j] * &q[k][l];
                }
            }
        }
    }
    out
}

fn quad_product(p: &Quad, q: &Quad) -> BiQuadratic {
    let mut out = BiQuadratic::zero();
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            out.table[i][j] = pi * qj;
        }
    }
    out
}

fn form_quad(f: &Form) -> Quad {
    [rat_int(f.c()), rat_int(f.b()), rat_int(f.a())]
}

/// Polarization matrix `[[a, b/2], [b/2, c]]`.
fn form_bilin(f: &Form) -> Bilin {
    let half_b = Rat::new(f.b().clone(), int(2));
    [[rat_int(f.a()), half_b.clone()], [half_b, rat_int(f.c())]]
}

/// `det(u, v)` as a bilinear function.
fn det_bilin() -> Bilin {
    [[Rat::zero(), Rat::one()], [-Rat::one(), Rat::zero()]]
}

/// Quadratic `Σ x_i x_j w_ij` for integer weights.
fn diagonal_quad(w11: &Int, w12: &Int, w21: &Int, w22: &Int) -> Quad {
    [rat_int(w22), rat_int(&(w12 + w21)), rat_int(w11)]
}

impl BiQuadratic {
    pub fn zero() -> Self {
        BiQuadratic {
            table: Default::default(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(Zero::is_zero)
    }

    /// Coefficient of `x^i y^(2-i) x'^j y'^(2-j)`.
    pub fn coefficient(&self, i: usize, j: usize) -> &Rat {
        &self.table[i][j]
    }

    pub fn scale(&self, k: &Rat) -> BiQuadratic {
        let mut out = self.clone();
        out.table.iter_mut().flatten().for_each(|c| *c *= k);
        out
    }

    /// Evaluates at `(u, v)`.
    pub fn eval(&self, u: &Vec2, v: &Vec2) -> Rat {
        let mono = |w: &Vec2, i: usize| -> Int {
            num_traits::pow(w.x.clone(), i) * num_traits::pow(w.y.clone(), 2 - i)
        };
        let mut total = Rat::zero();
        for i in 0..3 {
            for j in 0..3 {
                total += &self.table[i][j] * rat_int(&(mono(u, i) * mono(v, j)));
            }
        }
        total
    }

    /// `f(u) g(v)`.
    pub fn from_forms(f: &Form, g: &Form) -> BiQuadratic {
        quad_product(&form_quad(f), &form_quad(g))
    }

    /// `det(u, v)^2`.
    pub fn det_squared() -> BiQuadratic {
        bilin_product(&det_bilin(), &det_bilin())
    }

    /// `f(u, v) g(u, v)` with polarizations.
    pub fn polar_product(f: &Form, g: &Form) -> BiQuadratic {
        bilin_product(&form_bilin(f), &form_bilin(g))
    }
}

impl Add for &BiQuadratic {
    type Output = BiQuadratic;
    fn add(self, rhs: &BiQuadratic) -> BiQuadratic {
        let mut out = self.clone();
        for (o, r) in out
            .table
            .iter_mut()
            .flatten()
            .zip(rhs.table.iter().flatten())
        {
            *o += r;
        }
        out
    }
}

impl Sub for &BiQuadratic {
    type Output = BiQuadratic;
    fn sub(self, rhs: &BiQuadratic) -> BiQuadratic {
        let mut out = self.clone();
        for (o, r) in out
            .table
            .iter_mut()
            .flatten()
            .zip(rhs.table.iter().flatten())
        {
            *o -= r;
        }
        out
    }
}

impl BilinearLaw {
    pub fn new(e11: Vec2, e12: Vec2, e21: Vec2, e22: Vec2) -> Self {
        BilinearLaw { e11, e12, e21, e22 }
    }

    /// `e_ij` for `i, j` in `{1, 2}`.
    pub fn image(&self, i: usize, j: usize) -> &Vec2 {
        match (i, j) {
            (1, 1) => &self.e11,
            (1, 2) => &self.e12,
            (2, 1) => &self.e21,
            (2, 2) => &self.e22,
            _ => panic!("basis index out of range: ({i}, {j})"),
        }
    }

    pub fn images(&self) -> [&Vec2; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    /// `x ∘ x'` by bilinearity.
    pub fn apply(&self, x: &Vec2, xp: &Vec2) -> Vec2 {
        let terms = [
            (&x.x * &xp.x, &self.e11),
            (&x.x * &xp.y, &self.e12),
            (&x.y * &xp.x, &self.e21),
            (&x.y * &xp.y, &self.e22),
        ];
        terms
            .iter()
            .fold(Vec2::default(), |acc, (k, e)| &acc + &e.scale(k))
    }

    /// Whether the four `e_ij` generate `Z^2`: the gcd of the six 2x2 minors is 1.
    pub fn spans(&self) -> bool {
        let e = self.images();
        let mut minors = Vec::with_capacity(6);
        for i in 0..4 {
            for j in i + 1..4 {
                minors.push(det2(e[i], e[j]));
            }
        }
        gcd_list(&minors).is_ok_and(|g| g.is_one())
    }

    /// The linear map `x' -> x ∘ x'`.
    pub fn left_map(&self, x: &Vec2) -> Mat2 {
        Mat2::from_columns(&self.apply(x, &Vec2::e1()), &self.apply(x, &Vec2::e2()))
    }

    /// The linear map `x -> x ∘ x'`.
    pub fn right_map(&self, xp: &Vec2) -> Mat2 {
        Mat2::from_columns(&self.apply(&Vec2::e1(), xp), &self.apply(&Vec2::e2(), xp))
    }

    /// `det(x∘)` as a quadratic `[A, B, C]` in `x`.
    pub fn det_left_symbolic(&self) -> [Int; 3] {
        [
            det2(&self.e11, &self.e12),
            det2(&self.e11, &self.e22) + det2(&self.e21, &self.e12),
            det2(&self.e21, &self.e22),
        ]
    }

    /// `det(∘x')` as a quadratic `[A, B, C]` in `x'`.
    pub fn det_right_symbolic(&self) -> [Int; 3] {
        [
            det2(&self.e11, &self.e21),
            det2(&self.e11, &self.e22) + det2(&self.e12, &self.e21),
            det2(&self.e12, &self.e22),
        ]
    }

    /// The law `(x, x') -> (P x) ∘ (P' x')`.
    pub fn pullback(&self, p: &Mat2, pp: &Mat2) -> BilinearLaw {
        let (u1, u2) = (p.column(0), p.column(1));
        let (v1, v2) = (pp.column(0), pp.column(1));
        BilinearLaw {
            e11: self.apply(&u1, &v1),
            e12: self.apply(&u1, &v2),
            e21: self.apply(&u2, &v1),
            e22: self.apply(&u2, &v2),
        }
    }

    /// The law `(x, x') -> M (x ∘ x')`.
    pub fn push_forward(&self, m: &Mat2) -> BilinearLaw {
        BilinearLaw {
            e11: m.apply(&self.e11),
            e12: m.apply(&self.e12),
            e21: m.apply(&self.e21),
            e22: m.apply(&self.e22),
        }
    }

    /// Components of `u ∘ v` as bilinear functions of `(u, v)`.
    fn component_bilins(&self) -> (Bilin, Bilin) {
        let x = |e: &Vec2| rat_int(&e.x);
        let y = |e: &Vec2| rat_int(&e.y);
        (
            [[x(&self.e11), x(&self.e12)], [x(&self.e21), x(&self.e22)]],
            [[y(&self.e11), y(&self.e12)], [y(&self.e21), y(&self.e22)]],
        )
    }

    /// `F(u ∘ v)` expanded as a bi-quadratic in `(u, v)`.
    pub fn composed_value(&self, big_f: &Form) -> BiQuadratic {
        let (px, py) = self.component_bilins();
        let a = bilin_product(&px, &px).scale(&rat_int(big_f.a()));
        let b = bilin_product(&px, &py).scale(&rat_int(big_f.b()));
        let c = bilin_product(&py, &py).scale(&rat_int(big_f.c()));
        &(&a + &b) + &c
    }

    /// `F(u∘u, v∘v)` as a bi-quadratic in `(u, v)`.
    pub fn diagonal_polar(&self, big_f: &Form) -> BiQuadratic {
        let e = self.images();
        let ux = diagonal_quad(&e[0].x, &e[1].x, &e[2].x, &e[3].x);
        let uy = diagonal_quad(&e[0].y, &e[1].y, &e[2].y, &e[3].y);
        let half_b = Rat::new(big_f.b().clone(), int(2));
        let a = quad_product(&ux, &ux).scale(&rat_int(big_f.a()));
        let b = (&quad_product(&ux, &uy) + &quad_product(&uy, &ux)).scale(&half_b);
        let c = quad_product(&uy, &uy).scale(&rat_int(big_f.c()));
        &(&a + &b) + &c
    }

    /// `F(u∘v, v∘u)` as a bi-quadratic in `(u, v)`.
    pub fn crossed_polar(&self, big_f: &Form) -> BiQuadratic {
        let (px, py) = self.component_bilins();
        let transpose = |m: &Bilin| {
            [
                [m[0][0].clone(), m[1][0].clone()],
                [m[0][1].clone(), m[1][1].clone()],
            ]
        };
        let (qx, qy) = (transpose(&px), transpose(&py));
        let half_b = Rat::new(big_f.b().clone(), int(2));
        let a = bilin_product(&px, &qx).scale(&rat_int(big_f.a()));
        let b = (&bilin_product(&px, &qy) + &bilin_product(&py, &qx)).scale(&half_b);
        let c = bilin_product(&py, &qy).scale(&rat_int(big_f.c()));
        &(&a + &b) + &c
    }
}

/// `F(x∘x') - f(x) f'(x')`; zero exactly when the law composes `f`, `f'` into `F`.
pub fn eq1_residual(f: &Form, fp: &Form, big_f: &Form, law: &BilinearLaw) -> BiQuadratic {
    &law.composed_value(big_f) - &BiQuadratic::from_forms(f, fp)
}

/// `ν` with `q = ν f` coefficientwise, if such a rational exists.
pub fn proportionality(q: &[Int; 3], f: &Form) -> Option<Rat> {
    let fc = f.coefficients();
    let pivot = fc.iter().position(|c| !c.is_zero())?;
    let nu = Rat::new(q[pivot].clone(), fc[pivot].clone());
    q.iter()
        .zip(fc.iter())
        .all(|(qi, fi)| rat_int(qi) == &nu * rat_int(fi))
        .then_some(nu)
}

/// `Q(x, y) = ½(F(x∘x, y∘y) - F(x∘y, y∘x))` as a bi-quadratic.
pub fn q_form(big_f: &Form, law: &BilinearLaw) -> BiQuadratic {
    (&law.diagonal_polar(big_f) - &law.crossed_polar(big_f)).scale(&Rat::new(int(1), int(2)))
}

/// `Δ = Q(e1, e2)`, after checking that `Q = Δ det(x,y)^2` identically.
pub fn delta_of_law(big_f: &Form, law: &BilinearLaw) -> Result<Rat> {
    let q = q_form(big_f, law);
    let delta = q.coefficient(2, 0).clone();
    let residual = &q - &BiQuadratic::det_squared().scale(&delta);
    if residual.is_zero() {
        Ok(delta)
    } else {
        Err(Error::LemmaViolation)
    }
}

/// `F(x∘y, x'∘y') + F(x∘y', x'∘y) = 2 f(x,x') f'(y,y')` at one point.
#[allow(clippy::too_many_arguments)]
pub fn mix_check(
    f: &Form,
    fp: &Form,
    big_f: &Form,
    law: &BilinearLaw,
    x: &Vec2,
    xp: &Vec2,
    y: &Vec2,
    yp: &Vec2,
) -> bool {
    let lhs = big_f.polar(&law.apply(x, y), &law.apply(xp, yp))
        + big_f.polar(&law.apply(x, yp), &law.apply(xp, y));
    lhs == Rat::from_integer(int(2)) * f.polar(x, xp) * fp.polar(y, yp)
}

/// Univariate-style product of two binary quadratics `[y^2, xy, x^2]` into a
/// binary quartic indexed by the power of `x`.
fn quartic(p: &[Int; 3], q: &[Int; 3]) -> [Int; 5] {
    let mut out: [Int; 5] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i + j] += &p[i] * &q[j];
        }
    }
    out
}

fn by_power(q: &[Int; 3]) -> [Int; 3] {
    [q[2].clone(), q[1].clone(), q[0].clone()]
}

/// `d(F) det(∘x')^2 = d(f) f'(x')^2` and `d(F) det(x∘)^2 = d(f') f(x)^2`,
/// each compared as binary quartics.
pub fn discriminant_relations_hold(f: &Form, fp: &Form, big_f: &Form, law: &BilinearLaw) -> bool {
    let side = |det: [Int; 3], d: Int, g: &Form| {
        let det = by_power(&det);
        let g = by_power(&g.coefficients());
        let lhs = quartic(&det, &det).map(|c| c * big_f.disc());
        let rhs = quartic(&g, &g).map(|c| c * &d);
        lhs == rhs
    };
    side(law.det_right_symbolic(), f.disc(), fp) && side(law.det_left_symbolic(), fp.disc(), f)
}

/// `F(x∘x, y∘y) = f(x,y)f'(x,y) + Δ det(x,y)^2` and
/// `F(x∘y, y∘x) = f(x,y)f'(x,y) - Δ det(x,y)^2` as bi-quadratic identities.
pub fn delta_formulas_hold(
    f: &Form,
    fp: &Form,
    big_f: &Form,
    law: &BilinearLaw,
    delta: &Rat,
) -> bool {
    let base = BiQuadratic::polar_product(f, fp);
    let shift = BiQuadratic::det_squared().scale(delta);
    law.diagonal_polar(big_f) == &base + &shift && law.crossed_polar(big_f) == &base - &shift
}

/// All relations between invariants that hold for any composition, each as a
/// separate named clause.
pub fn invariant_clauses(
    f: &Form,
    fp: &Form,
    big_f: &Form,
    nu: &Rat,
    nuprime: &Rat,
    delta: &Rat,
) -> Vec<Clause> {
    let (d, dp, big_d) = (
        rat_int(&f.disc()),
        rat_int(&fp.disc()),
        rat_int(&big_f.disc()),
    );
    let (inv, invp, big_inv) = (f.invariants(), fp.invariants(), big_f.invariants());
    let four = Rat::from_integer(int(4));

    let theta_ok = {
        let magnitude = big_inv.theta.abs() == gcd(&inv.theta, &invp.theta);
        let signs = inv.theta.signum() == invp.theta.signum()
            && inv.theta.signum() == big_inv.theta.signum();
        magnitude && signs
    };
    // |ν|δ(f) is the gcd of the integers det(x∘), hence itself an integer.
    let scaled_gcd_ok = {
        let left = nu.abs() * rat_int(&inv.delta);
        let right = nuprime.abs() * rat_int(&invp.delta);
        left.is_integer()
            && right.is_integer()
            && gcd(&left.to_integer(), &right.to_integer()).is_one()
    };
    let squared_gcd_ok = {
        let left = d.abs().to_integer() * &invp.delta * &invp.delta;
        let right = dp.abs().to_integer() * &inv.delta * &inv.delta;
        gcd(&left, &right) == big_d.abs().to_integer()
    };

    let clause = |name, holds| Clause { name, holds };
    alloc::vec![
        clause("d(f') = nu^2 d(F)", dp == nu * nu * &big_d),
        clause("d(f) = nu'^2 d(F)", d == nuprime * nuprime * &big_d),
        clause("4 Delta = D nu nu'", &four * delta == &big_d * nu * nuprime),
        clause(
            "16 Delta^2 = d d'",
            &four * &four * delta * delta == &d * &dp
        ),
        clause("F integer", true),
        clause(
            "delta(F) = delta(f) delta(f')",
            big_inv.delta == &inv.delta * &invp.delta
        ),
        clause(
            "sigma(F) = min(sigma(f), sigma(f'))",
            big_inv.sigma == inv.sigma.min(invp.sigma)
        ),
        clause("theta(F) = gcd(theta(f), theta(f'))", theta_ok),
        clause("gcd(|nu| delta(f), |nu'| delta(f')) = 1", scaled_gcd_ok),
        clause(
            "gcd(|d| delta(f')^2, |d'| delta(f)^2) = |D|",
            squared_gcd_ok
        ),
    ]
}

/// Checks that `law` composes `f` and `fp` into `big_f` and that every
/// invariant relation holds.
///
/// Order: the defining identity, the span condition, proportionality of
/// `det(x∘)` to `f` and of `det(∘x')` to `f'`, the constant `Δ`, and then
/// the clauses of [`invariant_clauses`]. The first failure is returned.
pub fn verify(f: &Form, fp: &Form, big_f: &Form, law: &BilinearLaw) -> Result<VerifiedComposition> {
    let verified = verify_structure(f, fp, big_f, law)?;
    let clauses = invariant_clauses(
        f,
        fp,
        big_f,
        &verified.nu,
        &verified.nuprime,
        &verified.delta_cap,
    );
    if let Some(failed) = clauses.iter().find(|c| !c.holds) {
        return Err(Error::TheoremAViolation {
            clause: failed.name,
        });
    }
    Ok(verified)
}

/// [`verify`] without the invariant clauses.
pub fn verify_structure(
    f: &Form,
    fp: &Form,
    big_f: &Form,
    law: &BilinearLaw,
) -> Result<VerifiedComposition> {
    if f.disc().is_zero() || fp.disc().is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    if !eq1_residual(f, fp, big_f, law).is_zero() {
        return Err(Error::Eq1Violation);
    }
    if !law.spans() {
        return Err(Error::SpanViolation);
    }
    let nu = proportionality(&law.det_left_symbolic(), f)
        .ok_or(Error::NotProportional { side: Side::Left })?;
    let nuprime = proportionality(&law.det_right_symbolic(), fp)
        .ok_or(Error::NotProportional { side: Side::Right })?;
    let delta_cap = delta_of_law(big_f, law)?;
    let direct = nu.is_positive() && nuprime.is_positive();
    Ok(VerifiedComposition {
        f: f.clone(),
        fprime: fp.clone(),
        big_f: big_f.clone(),
        law: law.clone(),
        nu,
        nuprime,
        delta_cap,
        direct,
    })
}
