//! Integer binary quadratic forms `ax^2 + bxy + cy^2`.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{det2, gcd, gcd_list, int, rat_int, Int, Mat2, Rat, Vec2};

/// A nonzero integer binary quadratic form `(a, b, c)`.
///
/// `b` may be odd: a form is integer when its values are, so polarizations
/// are half-integers in general and are returned as [`Rat`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    a: Int,
    b: Int,
    c: Int,
}

/// A form with rational coefficients, produced before integrality is known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatForm {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

/// `δ`, `δ'`, `σ = δ'/δ`, the discriminant, and `θ = d/δ^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantRecord {
    pub delta: Int,
    pub delta_prime: Int,
    pub sigma: u8,
    pub disc: Int,
    pub theta: Int,
}

impl Form {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(Form { a, b, c })
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    pub fn coefficients(&self) -> [Int; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// `b^2 - 4ac`.
    pub fn disc(&self) -> Int {
        &self.b * &self.b - int(4) * &self.a * &self.c
    }

    pub fn value(&self, v: &Vec2) -> Int {
        &self.a * &v.x * &v.x + &self.b * &v.x * &v.y + &self.c * &v.y * &v.y
    }

    /// The symmetric bilinear function with `polar(v, v) = value(v)`.
    pub fn polar(&self, v: &Vec2, w: &Vec2) -> Rat {
        let cross = &v.x * &w.y + &v.y * &w.x;
        rat_int(&(&self.a * &v.x * &w.x + &self.c * &v.y * &w.y))
            + Rat::new(&self.b * cross, int(2))
    }

    /// Twice the polarization; always an integer.
    pub fn polar2(&self, v: &Vec2, w: &Vec2) -> Int {
        int(2) * &self.a * &v.x * &w.x
            + &self.b * (&v.x * &w.y + &v.y * &w.x)
            + int(2) * &self.c * &v.y * &w.y
    }

    pub fn invariants(&self) -> InvariantRecord {
        let delta = gcd(&gcd(&self.a, &self.b), &self.c);
        let delta_prime = gcd(&gcd(&(int(2) * &self.a), &self.b), &(int(2) * &self.c));
        let sigma = if delta_prime == delta { 1 } else { 2 };
        let disc = self.disc();
        let theta = &disc / (&delta * &delta);
        InvariantRecord {
            delta,
            delta_prime,
            sigma,
            disc,
            theta,
        }
    }

    /// The form `x -> f(Ax)`.
    ///
    /// `A` need not be invertible; a singular `A` can collapse the form to
    /// zero, which is reported as [`Error::ZeroForm`].
    pub fn act(&self, m: &Mat2) -> Result<Form> {
        let [[p, q], [r, s]] = &m.rows;
        let col1 = Vec2 {
            x: p.clone(),
            y: r.clone(),
        };
        let col2 = Vec2 {
            x: q.clone(),
            y: s.clone(),
        };
        Form::new(
            self.value(&col1),
            self.polar2(&col1, &col2),
            self.value(&col2),
        )
    }

    pub fn scaled(&self, k: &Int) -> Result<Form> {
        Form::new(&self.a * k, &self.b * k, &self.c * k)
    }

    pub fn negated(&self) -> Form {
        Form {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.disc().is_negative() && self.a.is_positive()
    }

    pub fn to_rational(&self) -> RatForm {
        RatForm {
            a: rat_int(&self.a),
            b: rat_int(&self.b),
            c: rat_int(&self.c),
        }
    }

    /// Gauss reduction of a positive definite form.
    ///
    /// Returns `(g, A)` with `det A = 1`, `g = f∘A` and `|b| <= a <= c`, with
    /// `b >= 0` whenever `|b| = a` or `a = c`. Negative definite forms are
    /// rejected; negate them first.
    pub fn reduce_definite(&self) -> Result<(Form, Mat2)> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let swap = Mat2::from_rows(0, -1, 1, 0);
        let mut g = self.clone();
        let mut acc = Mat2::identity();
        loop {
            // Bring b into (-a, a].
            let two_a = int(2) * &g.a;
            let k = (&g.a - &g.b).div_floor(&two_a);
            if !k.is_zero() {
                let step = Mat2::from_rows(Int::one(), k, Int::zero(), Int::one());
                g = g.act(&step)?;
                acc = &acc * &step;
            }
            if g.a > g.c || (g.a == g.c && g.b.is_negative()) {
                g = g.act(&swap)?;
                acc = &acc * &swap;
                continue;
            }
            debug_assert!(g.is_reduced());
            return Ok((g, acc));
        }
    }

    fn is_reduced(&self) -> bool {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        b.abs() <= *a && a <= c && (!(b.abs() == *a || a == c) || !b.is_negative())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Parses `(a,b,c)` or `a,b,c`, whitespace allowed around every token.
impl FromStr for Form {
    type Err = Error;

    fn from_str(text: &str) -> Result<Form> {
        let trimmed = text.trim();
        let inner = match (trimmed.strip_prefix('('), trimmed.ends_with(')')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => trimmed,
            _ => {
                return Err(Error::Parse {
                    token: trimmed.to_string(),
                    reason: "unbalanced parentheses",
                })
            }
        };
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                token: trimmed.to_string(),
                reason: "expected three comma-separated integers",
            });
        }
        let mut coeffs = Vec::with_capacity(3);
        for part in parts {
            let digits = part.strip_prefix('+').unwrap_or(part);
            let valid = !digits.is_empty()
                && digits
                    .strip_prefix('-')
                    .unwrap_or(digits)
                    .bytes()
                    .all(|ch| ch.is_ascii_digit())
                && digits != "-";
            let value = valid.then(|| Int::from_str(digits).ok()).flatten();
            match value {
                Some(v) => coeffs.push(v),
                None => {
                    return Err(Error::Parse {
                        token: part.to_string(),
                        reason: "not a decimal integer",
                    })
                }
            }
        }
        let c = coeffs.pop().unwrap();
        let b = coeffs.pop().unwrap();
        let a = coeffs.pop().unwrap();
        Form::new(a, b, c)
    }
}

impl RatForm {
    pub fn is_integer(&self) -> bool {
        self.a.is_integer() && self.b.is_integer() && self.c.is_integer()
    }

    /// The integer form with these coefficients; `None` if any coefficient is
    /// fractional or all vanish.
    pub fn to_form(&self) -> Option<Form> {
        if !self.is_integer() {
            return None;
        }
        Form::new(
            self.a.to_integer(),
            self.b.to_integer(),
            self.c.to_integer(),
        )
        .ok()
    }

    pub fn disc(&self) -> Rat {
        &self.b * &self.b - Rat::from_integer(int(4)) * &self.a * &self.c
    }
}

impl fmt::Display for RatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `4(f(v,w)^2 - f(v)f(w)) = d(f) det(v,w)^2`.
pub fn det_identity_check(f: &Form, v: &Vec2, w: &Vec2) -> bool {
    let p = f.polar(v, w);
    let lhs = Rat::from_integer(int(4)) * (&p * &p - rat_int(&(f.value(v) * f.value(w))));
    let det = det2(v, w);
    lhs == rat_int(&(f.disc() * &det * &det))
}

/// `4 det [[F(a,c), F(a,d)], [F(b,c), F(b,d)]] = -d(F) det(a,b) det(c,d)`.
pub fn lagrange_check(big_f: &Form, a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2) -> bool {
    let det = big_f.polar(a, c) * big_f.polar(b, d) - big_f.polar(a, d) * big_f.polar(b, c);
    let lhs = Rat::from_integer(int(4)) * det;
    lhs == rat_int(&(-big_f.disc() * det2(a, b) * det2(c, d)))
}

/// Proper equivalence of two positive definite forms via their reduced forms.
pub fn properly_equivalent_definite(f: &Form, g: &Form) -> Result<bool> {
    Ok(f.reduce_definite()?.0 == g.reduce_definite()?.0)
}

/// Position of `n` in the scan order `0, 1, -1, 2, -2, ...`.
pub fn zigzag_rank(n: &Int) -> Int {
    if n.is_positive() {
        int(2) * n - 1
    } else {
        int(-2) * n
    }
}

/// The scan order `0, 1, -1, ..., bound, -bound`.
pub fn zigzag(bound: u64) -> impl Iterator<Item = Int> {
    core::iter::once(int(0)).chain((1..=bound).flat_map(|k| {
        let k = Int::from(k);
        [k.clone(), -k]
    }))
}

/// First `(x, y)` with `|x|, |y| <= bound` and `f(x, y) = m`.
///
/// Pairs are visited lexicographically with each coordinate in the order
/// `0, 1, -1, 2, -2, ...`. For each `x` the matching `y` values are solved
/// for directly instead of scanned, which gives the same first hit.
pub fn represent_search(f: &Form, m: &Int, bound: u64) -> Option<Vec2> {
    let limit = Int::from(bound);
    for x in zigzag(bound) {
        let bx = &f.b * &x;
        let rest = &f.a * &x * &x - m;
        let mut best: Option<Int> = None;
        let mut offer = |y: Int| {
            if y.abs() <= limit
                && best
                    .as_ref()
                    .is_none_or(|b| zigzag_rank(&y) < zigzag_rank(b))
            {
                best = Some(y);
            }
        };
        if !f.c.is_zero() {
            // c y^2 + bx y + rest = 0
            let disc = &bx * &bx - int(4) * &f.c * &rest;
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc {
                    let two_c = int(2) * &f.c;
                    for num in [-&bx + &s, -&bx - &s] {
                        if num.is_multiple_of(&two_c) {
                            offer(num / &two_c);
                        }
                    }
                }
            }
        } else if !bx.is_zero() {
            let num = -&rest;
            if num.is_multiple_of(&bx) {
                offer(num / &bx);
            }
        } else if rest.is_zero() {
            offer(Int::zero());
        }
        if let Some(y) = best {
            return Some(Vec2 { x, y });
        }
    }
    None
}

/// Positive values `<= value_bound` taken by a positive definite form.
pub fn definite_values(f: &Form, value_bound: &Int) -> Result<BTreeSet<Int>> {
    if !f.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    // 4a f = (2ax + by)^2 + |d| y^2 and symmetrically in x.
    let abs_d = f.disc().abs();
    let y_max = (int(4) * &f.a * value_bound / &abs_d).sqrt();
    let x_max = (int(4) * &f.c * value_bound / &abs_d).sqrt();
    let mut values = BTreeSet::new();
    let mut x = -&x_max;
    while x <= x_max {
        let mut y = -&y_max;
        while y <= y_max {
            let v = f.value(&Vec2 {
                x: x.clone(),
                y: y.clone(),
            });
            if v.is_positive() && &v <= value_bound {
                values.insert(v);
            }
            y += 1;
        }
        x += 1;
    }
    Ok(values)
}

/// Triples of representable values `<= value_bound` whose product is not
/// found by [`represent_search`] within `search_bound`. An empty result
/// confirms that triple products stay representable at this scale.
pub fn trigroup_check(f: &Form, value_bound: u64, search_bound: u64) -> Result<Vec<[Int; 3]>> {
    let values: Vec<Int> = definite_values(f, &Int::from(value_bound))?
        .into_iter()
        .collect();
    let mut failures = Vec::new();
    for i in 0..values.len() {
        for j in i..values.len() {
            let pair = &values[i] * &values[j];
            for k in j..values.len() {
                let m = &pair * &values[k];
                if represent_search(f, &m, search_bound).is_none() {
                    failures.push([values[i].clone(), values[j].clone(), values[k].clone()]);
                }
            }
        }
    }
    Ok(failures)
}

/// `δ(f)` recomputed as the gcd of the values `f` takes on a box.
pub fn brute_force_delta(f: &Form, radius: i64) -> Int {
    let mut values = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            values.push(f.value(&Vec2::new(x, y)));
        }
    }
    gcd_list(&values).unwrap_or_else(|_| Int::zero())
}
