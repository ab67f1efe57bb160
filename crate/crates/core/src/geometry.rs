//! Points, arithmetic kernels and the orientation-based predicates every
//! other geometric component is built on.
//!
//! Coordinates are generic over [`Scalar`]. Two kernels are provided:
//! exact rationals ([`BigRational`]) where every predicate is decided
//! exactly, and `f64` where a predicate whose value falls inside a relative
//! tolerance band is reported as [`Sign::Zero`] (degenerate).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arithmetic kernel a drawing was produced with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kernel {
    Exact,
    Floating { tolerance: f64 },
}

impl Kernel {
    pub const DEFAULT_TOLERANCE: f64 = 1e-9;

    pub fn floating() -> Self {
        Kernel::Floating {
            tolerance: Self::DEFAULT_TOLERANCE,
        }
    }

    /// Tolerance applied to sign predicates; zero for the exact kernel.
    pub fn tolerance(&self) -> f64 {
        match self {
            Kernel::Exact => 0.0,
            Kernel::Floating { tolerance } => *tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Number type usable as a coordinate.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
    /// `true` when every predicate over this type is decided exactly.
    const EXACT: bool;

    /// Sign of `value`, where `scale` gives the magnitude the value should be
    /// compared against. Exact types ignore `scale` and `tolerance`; inexact
    /// types report `Zero` whenever `|value| <= tolerance * scale`.
    fn sign_within(value: &Self, scale: impl FnOnce() -> f64, tolerance: f64) -> Sign;

    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("integer coordinate")
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Text form used in reports.
    fn literal(&self) -> String {
        self.to_string()
    }

    /// The values multiplied by their smallest common denominator, for
    /// exact types; `None` for inexact ones.
    fn to_integer_grid(_values: &[&Self]) -> Option<Vec<BigInt>> {
        None
    }
}

fn exact_sign<T: Signed>(value: &T) -> Sign {
    if value.is_zero() {
        Sign::Zero
    } else if value.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn sign_within(value: &Self, _scale: impl FnOnce() -> f64, _tolerance: f64) -> Sign {
        exact_sign(value)
    }

    fn literal(&self) -> String {
        format_rational(self)
    }

    fn to_integer_grid(values: &[&Self]) -> Option<Vec<BigInt>> {
        let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        Some(values.iter().map(|v| v.numer() * (&lcm / v.denom())).collect())
    }
}

/// Integers support the ring operations exactly and are used for
/// predicates on drawings rescaled to an integer grid. Division truncates,
/// so constructions that divide (such as [`line_intersection`] or
/// [`Scalar::half`]) are not meaningful over this type.
impl Scalar for BigInt {
    const EXACT: bool = true;

    fn sign_within(value: &Self, _scale: impl FnOnce() -> f64, _tolerance: f64) -> Sign {
        exact_sign(value)
    }

    fn to_integer_grid(values: &[&Self]) -> Option<Vec<BigInt>> {
        Some(values.iter().map(|v| (*v).clone()).collect())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn sign_within(value: &Self, scale: impl FnOnce() -> f64, tolerance: f64) -> Sign {
        let band = if tolerance > 0.0 { tolerance * scale() } else { 0.0 };
        if !value.is_finite() || value.abs() <= band {
            Sign::Zero
        } else if *value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

pub type ExactPoint = Point<BigRational>;

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(S::from_int(x), S::from_int(y))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Point::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Point::new(self.x.clone() * factor.clone(), self.y.clone() * factor.clone())
    }

    pub fn neg(&self) -> Self {
        Point::new(-self.x.clone(), -self.y.clone())
    }

    /// The vector rotated a quarter turn counterclockwise.
    pub fn perp(&self) -> Self {
        Point::new(-self.y.clone(), self.x.clone())
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.approx(), self.y.approx())
    }

    fn approx_norm(&self) -> f64 {
        let (x, y) = self.approx();
        x.hypot(y)
    }
}

impl<S: fmt::Display> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point<f64> {
    /// Lossless conversion to the exact kernel.
    pub fn to_exact(&self) -> ExactPoint {
        Point::new(
            BigRational::from_float(self.x).expect("finite coordinate"),
            BigRational::from_float(self.y).expect("finite coordinate"),
        )
    }
}

impl ExactPoint {
    pub fn to_float(&self) -> Point<f64> {
        let (x, y) = self.approx();
        Point::new(x, y)
    }
}

/// Rational with the given numerator and denominator.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Orientation of `c` relative to the directed line `a -> b`: positive when
/// `a, b, c` turn counterclockwise (y axis up).
pub fn orient<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>, tolerance: f64) -> Sign {
    let ab = b.sub(a);
    let ac = c.sub(a);
    let value = ab.cross(&ac);
    S::sign_within(&value, || ab.approx_norm() * ac.approx_norm(), tolerance)
}

/// Sign of the cross product `u x v` of two direction vectors.
pub fn cross_sign<S: Scalar>(u: &Point<S>, v: &Point<S>, tolerance: f64) -> Sign {
    let value = u.cross(v);
    S::sign_within(&value, || u.approx_norm() * v.approx_norm(), tolerance)
}

/// Sign of the dot product `u . v` of two direction vectors.
pub fn dot_sign<S: Scalar>(u: &Point<S>, v: &Point<S>, tolerance: f64) -> Sign {
    let value = u.dot(v);
    S::sign_within(&value, || u.approx_norm() * v.approx_norm(), tolerance)
}

/// Whether two points coincide under the kernel's tolerance.
pub fn coincident<S: Scalar>(a: &Point<S>, b: &Point<S>, tolerance: f64) -> bool {
    let d = a.sub(b);
    if S::EXACT || tolerance <= 0.0 {
        return d.is_origin();
    }
    let magnitude = 1.0 + a.approx_norm().max(b.approx_norm());
    d.approx_norm() <= tolerance * magnitude
}

/// Upper (0) or lower (1) half of the direction circle, measured
/// counterclockwise from `reference`: half 0 holds angles in `[0, pi)`.
fn half_from<S: Scalar>(reference: &Point<S>, u: &Point<S>) -> u8 {
    match cross_sign(reference, u, 0.0) {
        Sign::Positive => 0,
        Sign::Negative => 1,
        Sign::Zero => {
            if dot_sign(reference, u, 0.0) == Sign::Positive {
                0
            } else {
                1
            }
        }
    }
}

/// Compares the counterclockwise angles of directions `u` and `v`, both
/// measured from `reference` into `[0, 2 pi)`. Decided exactly for exact
/// scalars; raw floating signs otherwise so the order stays total.
pub fn ccw_angle_cmp<S: Scalar>(reference: &Point<S>, u: &Point<S>, v: &Point<S>) -> Ordering {
    let hu = half_from(reference, u);
    let hv = half_from(reference, v);
    if hu != hv {
        return hu.cmp(&hv);
    }
    match cross_sign(u, v, 0.0) {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    }
}

/// Whether direction `u` lies strictly inside the open sector swept
/// counterclockwise from direction `from` to direction `to`.
pub fn in_ccw_sector<S: Scalar>(from: &Point<S>, to: &Point<S>, u: &Point<S>) -> bool {
    let along_from =
        cross_sign(from, u, 0.0) == Sign::Zero && dot_sign(from, u, 0.0) == Sign::Positive;
    if along_from {
        return false;
    }
    let sector_is_full =
        cross_sign(from, to, 0.0) == Sign::Zero && dot_sign(from, to, 0.0) == Sign::Positive;
    if sector_is_full {
        return true;
    }
    ccw_angle_cmp(from, u, to) == Ordering::Less
}

/// Exact intersection point of the supporting lines of `a-b` and `c-d`,
/// when they are not parallel.
pub fn line_intersection<S: Scalar>(
    a: &Point<S>,
    b: &Point<S>,
    c: &Point<S>,
    d: &Point<S>,
) -> Option<Point<S>> {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = r.cross(&s);
    if denom.is_zero() {
        return None;
    }
    let t = c.sub(a).cross(&s) / denom;
    Some(a.add(&r.scale(&t)))
}

/// Largest power of two `2^k` (any integer `k`) with `(2^k)^2 * len_sq <= bound_sq`.
pub fn power_of_two_below<S: Scalar>(len_sq: &S, bound_sq: &S) -> S {
    let two = S::from_int(2);
    let mut factor = S::one();
    // Doubling and halving are bounded by the bit width of the operands.
    while (factor.clone() * factor.clone()) * len_sq.clone() > *bound_sq {
        factor = factor.half();
    }
    loop {
        let doubled = factor.clone() * two.clone();
        if (doubled.clone() * doubled.clone()) * len_sq.clone() <= *bound_sq {
            factor = doubled;
        } else {
            break;
        }
    }
    factor
}

/// Rational literal in lowest terms, always written `num/den`.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if denom.is_zero() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}
