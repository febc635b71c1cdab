//! Exact integer and rational building blocks.
//!
//! Conventions used throughout the crate:
//! - gcds are nonnegative and `gcd(0, n) = |n|`, so `gcd(0, ..., 0) = 0`;
//! - rationals are kept in lowest terms with a positive denominator
//!   (guaranteed by [`num_rational::Ratio`]);
//! - [`Mat2`] is stored row-major, and its columns are the images of the
//!   standard basis vectors.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

#[inline]
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// `num/den` in lowest terms. Panics if `den == 0`.
#[inline]
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

#[inline]
pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// Extended Euclid: returns `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::one(), Int::zero());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = core::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// gcd of a nonempty list. All-zero input gives 0.
pub fn gcd_list(values: &[Int]) -> Result<Int> {
    if values.is_empty() {
        return Err(Error::Usage("gcd of an empty sequence"));
    }
    Ok(values.iter().fold(Int::zero(), |g, v| gcd(&g, v)))
}

/// An integer 2-vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vec2 {
    pub x: Int,
    pub y: Int,
}

impl Vec2 {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        Vec2 {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn e1() -> Self {
        Vec2::new(1, 0)
    }

    pub fn e2() -> Self {
        Vec2::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &Int) -> Vec2 {
        Vec2 {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn to_rational(&self) -> QVec2 {
        QVec2 {
            x: rat_int(&self.x),
            y: rat_int(&self.y),
        }
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

/// `det` of the matrix with columns `v`, `w`.
pub fn det2(v: &Vec2, w: &Vec2) -> Int {
    &v.x * &w.y - &v.y * &w.x
}

/// A rational 2-vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QVec2 {
    pub x: Rat,
    pub y: Rat,
}

impl QVec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        QVec2 { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Integer vector if both coordinates are integers.
    pub fn to_integer(&self) -> Option<Vec2> {
        if self.x.is_integer() && self.y.is_integer() {
            Some(Vec2 {
                x: self.x.to_integer(),
                y: self.y.to_integer(),
            })
        } else {
            None
        }
    }
}

impl fmt::Display for QVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn qdet2(v: &QVec2, w: &QVec2) -> Rat {
    &v.x * &w.y - &v.y * &w.x
}

/// Solves `z1*m1 + z2*m2 = u` over the rationals; `None` if `m1, m2` are dependent.
pub fn solve2(m1: &QVec2, m2: &QVec2, u: &QVec2) -> Option<(Rat, Rat)> {
    let det = qdet2(m1, m2);
    if det.is_zero() {
        return None;
    }
    Some((qdet2(u, m2) / &det, qdet2(m1, u) / &det))
}

/// An integer 2x2 matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub rows: [[Int; 2]; 2],
}

impl Mat2 {
    pub fn from_rows(
        a: impl Into<Int>,
        b: impl Into<Int>,
        c: impl Into<Int>,
        d: impl Into<Int>,
    ) -> Self {
        Mat2 {
            rows: [[a.into(), b.into()], [c.into(), d.into()]],
        }
    }

    /// Matrix whose columns are `c1`, `c2`.
    pub fn from_columns(c1: &Vec2, c2: &Vec2) -> Self {
        Mat2 {
            rows: [[c1.x.clone(), c2.x.clone()], [c1.y.clone(), c2.y.clone()]],
        }
    }

    pub fn identity() -> Self {
        Mat2::from_rows(1, 0, 0, 1)
    }

    pub fn column(&self, j: usize) -> Vec2 {
        Vec2 {
            x: self.rows[0][j].clone(),
            y: self.rows[1][j].clone(),
        }
    }

    pub fn det(&self) -> Int {
        &self.rows[0][0] * &self.rows[1][1] - &self.rows[0][1] * &self.rows[1][0]
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2 {
            x: &self.rows[0][0] * &v.x + &self.rows[0][1] * &v.y,
            y: &self.rows[1][0] * &v.x + &self.rows[1][1] * &v.y,
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Integer inverse, available exactly when `det = ±1`.
    pub fn inverse_unimodular(&self) -> Option<Mat2> {
        let det = self.det();
        if !det.abs().is_one() {
            return None;
        }
        let [[a, b], [c, d]] = &self.rows;
        Some(Mat2 {
            rows: [[d * &det, -b * &det], [-c * &det, a * &det]],
        })
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let l = &self.rows;
        let r = &rhs.rows;
        let entry = |i: usize, j: usize| &l[i][0] * &r[0][j] + &l[i][1] * &r[1][j];
        Mat2 {
            rows: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.rows;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// Basis of the additive group generated by `generators`.
///
/// The denominators are cleared, the resulting integer 2 x n matrix is put in
/// lower-triangular column Hermite normal form
///
/// ```text
/// [ h11   0  ]
/// [ h21  h22 ]     h11 > 0, h22 > 0, 0 <= h21 < h22
/// ```
///
/// and the two columns are scaled back. Rank-deficient input is reported as
/// [`Error::Rank`].
pub fn hnf_basis(generators: &[QVec2]) -> Result<(QVec2, QVec2)> {
    let denom = generators
        .iter()
        .fold(Int::one(), |l, g| l.lcm(g.x.denom()).lcm(g.y.denom()));
    let scaled: alloc::vec::Vec<Vec2> = generators
        .iter()
        .map(|g| Vec2 {
            x: (&g.x * rat_int(&denom)).to_integer(),
            y: (&g.y * rat_int(&denom)).to_integer(),
        })
        .collect();
    let (pivot, kernel) = integer_hnf(&scaled);
    let rank = usize::from(!pivot.x.is_zero()) + usize::from(!kernel.is_zero());
    if rank < 2 {
        return Err(Error::Rank { rank });
    }
    let h21 = pivot.y.mod_floor(&kernel);
    let back = |n: &Int| Rat::new(n.clone(), denom.clone());
    Ok((
        QVec2::new(back(&pivot.x), back(&h21)),
        QVec2::new(Rat::zero(), back(&kernel)),
    ))
}

/// Returns `(p, k)`: `p` has `p.x = gcd` of all first coordinates and `k >= 0`
/// generates the intersection of the group with `{0} x Z`.
fn integer_hnf(vectors: &[Vec2]) -> (Vec2, Int) {
    let mut pivot = Vec2::default();
    let mut kernel = Int::zero();
    for v in vectors {
        let (g, s, t) = xgcd(&pivot.x, &v.x);
        if g.is_zero() {
            kernel = gcd(&gcd(&kernel, &pivot.y), &v.y);
            pivot = Vec2::default();
            continue;
        }
        // [[s, t], [v.x/g, -p.x/g]] is unimodular.
        let next = &pivot.scale(&s) + &v.scale(&t);
        let residue = &pivot.scale(&(&v.x / &g)) - &v.scale(&(&pivot.x / &g));
        debug_assert!(residue.x.is_zero());
        kernel = gcd(&kernel, &residue.y);
        pivot = next;
    }
    (pivot, kernel)
}

/// `Some(r)` with `r > 0` and `r^2 = q` when `q` is a rational square.
pub fn is_rational_square(q: &Rat) -> Result<Option<Rat>> {
    if !q.is_positive() {
        return Err(Error::Usage("is_rational_square needs a positive rational"));
    }
    let root = |n: &Int| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Ok(match (root(q.numer()), root(q.denom())) {
        (Some(n), Some(d)) => Some(Rat::new(n, d)),
        _ => None,
    })
}
