//! Exact rational geometry kernel.
//!
//! Every predicate here is decided on arbitrary-precision rationals; there is
//! no tolerance anywhere.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number in canonical form (positive denominator, reduced).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> Ordering {
        if self.0.is_positive() {
            Ordering::Greater
        } else if self.0.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Nearest `f64`, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer value if this rational is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn half(&self) -> Self {
        Rational(&self.0 / BigInt::from(2))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not an exact number: {:?}", self.input)
    }
}

impl core::error::Error for ParseRationalError {}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    Some(if s.starts_with('-') { -v } else { v })
}

/// Accepts integers (`"5"`, `"-3"`), decimals (`"0.25"`, `"-1.5"`) and
/// fractions (`"1/2"`, `"-6/4"`).
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError { input: raw.into() };
        let s = raw.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_int(n).ok_or_else(err)?;
            let d = parse_int(d).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational::from_big(n, d));
        }
        if let Some((int_part, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let negative = int_part.starts_with('-');
            let int_digits = int_part.strip_prefix(['+', '-']).unwrap_or(int_part);
            let whole = if int_digits.is_empty() { BigInt::zero() } else { parse_int(int_digits).ok_or_else(err)? };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac_v = BigInt::parse_bytes(frac.as_bytes(), 10).ok_or_else(err)?;
            let mut num = whole * &scale + frac_v;
            if negative {
                num = -num;
            }
            return Ok(Rational::from_big(num, scale));
        }
        parse_int(s).map(|n| Rational::from_big(n, BigInt::one())).ok_or_else(err)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Point with exact coordinates. Ordered lexicographically by `(x, y)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_int(x), Rational::from_int(y))
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new((&self.x + &other.x).half(), (&self.y + &other.y).half())
    }

    pub fn dist2(&self, other: &Point) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Axis-aligned closed rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub xmin: Rational,
    pub ymin: Rational,
    pub xmax: Rational,
    pub ymax: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyRect;

impl fmt::Display for EmptyRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("rectangle must satisfy xmin < xmax and ymin < ymax")
    }
}

impl Rect {
    pub fn new(xmin: Rational, ymin: Rational, xmax: Rational, ymax: Rational) -> Result<Self, EmptyRect> {
        if xmin < xmax && ymin < ymax {
            Ok(Rect { xmin, ymin, xmax, ymax })
        } else {
            Err(EmptyRect)
        }
    }

    pub fn from_ints(xmin: i64, ymin: i64, xmax: i64, ymax: i64) -> Result<Self, EmptyRect> {
        Rect::new(xmin.into(), ymin.into(), xmax.into(), ymax.into())
    }

    /// Closed containment.
    pub fn contains(&self, p: &Point) -> bool {
        self.xmin <= p.x && p.x <= self.xmax && self.ymin <= p.y && p.y <= self.ymax
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        self.xmin < p.x && p.x < self.xmax && self.ymin < p.y && p.y < self.ymax
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.contains(p) && !self.contains_strictly(p)
    }

    /// Corners in counter-clockwise order starting at `(xmin, ymin)`.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin.clone(), self.ymin.clone()),
            Point::new(self.xmax.clone(), self.ymin.clone()),
            Point::new(self.xmax.clone(), self.ymax.clone()),
            Point::new(self.xmin.clone(), self.ymax.clone()),
        ]
    }

    /// Sides as `(start, end)` pairs, counter-clockwise: bottom, right, top, left.
    pub fn sides(&self) -> [(Point, Point); 4] {
        let [a, b, c, d] = self.corners();
        [(a.clone(), b.clone()), (b, c.clone()), (c, d.clone()), (d, a)]
    }

    /// Bit set of the sides (bit 0 bottom, 1 right, 2 top, 3 left) that contain `p`.
    pub fn sides_touching(&self, p: &Point) -> u8 {
        if !self.contains(p) {
            return 0;
        }
        let mut bits = 0;
        if p.y == self.ymin {
            bits |= 1;
        }
        if p.x == self.xmax {
            bits |= 2;
        }
        if p.y == self.ymax {
            bits |= 4;
        }
        if p.x == self.xmin {
            bits |= 8;
        }
        bits
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    On,
}

/// `(b - a) x (c - a)`.
pub fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    let abx = &b.x - &a.x;
    let aby = &b.y - &a.y;
    let acx = &c.x - &a.x;
    let acy = &c.y - &a.y;
    abx * acy - aby * acx
}

/// Sign of the cross product `(b - a) x (c - a)`; `Left` is counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Orientation {
    match cross(a, b, c).signum() {
        Ordering::Greater => Orientation::Left,
        Ordering::Less => Orientation::Right,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Side of the directed line `a -> b` on which `p` lies.
pub fn side_of_line(p: &Point, a: &Point, b: &Point) -> Side {
    match orient(a, b, p) {
        Orientation::Left => Side::Left,
        Orientation::Right => Side::Right,
        Orientation::Collinear => Side::On,
    }
}

fn between(v: &Rational, a: &Rational, b: &Rational) -> bool {
    if a <= b {
        a <= v && v <= b
    } else {
        b <= v && v <= a
    }
}

/// Whether `p` lies on the closed segment `ab`.
pub fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Orientation::Collinear && between(&p.x, &a.x, &b.x) && between(&p.y, &a.y, &b.y)
}

/// Whether `p` lies on segment `ab` but is neither endpoint.
pub fn point_in_segment_interior(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && point_on_segment(p, a, b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    None,
    Point(Point),
    /// Collinear overlap of positive length, endpoints in lexicographic order.
    Overlap(Point, Point),
}

/// Exact intersection of the closed segments `p1p2` and `q1q2`.
///
/// Touching at an endpoint counts as a `Point`.
pub fn segment_intersection(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Intersection {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);

    if d1.is_zero() && d2.is_zero() {
        // collinear: intersect the lexicographic extents
        let (pa, pb) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let (qa, qb) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
        let lo = if pa >= qa { pa } else { qa };
        let hi = if pb <= qb { pb } else { qb };
        return match lo.cmp(hi) {
            Ordering::Less => Intersection::Overlap(lo.clone(), hi.clone()),
            Ordering::Equal => Intersection::Point(lo.clone()),
            Ordering::Greater => Intersection::None,
        };
    }

    let s1 = d1.signum();
    let s2 = d2.signum();
    let s3 = d3.signum();
    let s4 = d4.signum();
    let straddles = |a: Ordering, b: Ordering| a == Ordering::Equal || b == Ordering::Equal || a != b;
    if !straddles(s1, s2) || !straddles(s3, s4) {
        return Intersection::None;
    }
    // not collinear, so d1 != d2 whenever the lines meet
    if s1 == Ordering::Equal {
        return Intersection::Point(p1.clone());
    }
    if s2 == Ordering::Equal {
        return Intersection::Point(p2.clone());
    }
    if s3 == Ordering::Equal {
        return Intersection::Point(q1.clone());
    }
    if s4 == Ordering::Equal {
        return Intersection::Point(q2.clone());
    }
    let t = &d1 / (&d1 - &d2);
    let x = &p1.x + &t * (&p2.x - &p1.x);
    let y = &p1.y + &t * (&p2.y - &p1.y);
    Intersection::Point(Point::new(x, y))
}

/// Squared distance from `p` to the closed segment `ab`.
pub fn dist2_point_segment(p: &Point, a: &Point, b: &Point) -> Rational {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let len2 = &dx * &dx + &dy * &dy;
    let dot = (&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy;
    if dot.signum() != Ordering::Greater {
        return p.dist2(a);
    }
    if dot >= len2 {
        return p.dist2(b);
    }
    let t = dot / len2;
    let foot = Point::new(&a.x + &t * &dx, &a.y + &t * &dy);
    p.dist2(&foot)
}

/// Exact angular comparison of two non-zero direction vectors, counter-clockwise
/// from the positive x axis, angles taken in `[0, 2pi)`.
pub fn cmp_direction(ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Ordering {
    let half = |x: &Rational, y: &Rational| -> u8 {
        match y.signum() {
            Ordering::Greater => 0,
            Ordering::Equal if x.signum() == Ordering::Greater => 0,
            _ => 1,
        }
    };
    let ha = half(ax, ay);
    let hb = half(bx, by);
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = ax * by - ay * bx;
    match c.signum() {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Clip the infinite line through `a` and `b` to `rect`. Returns the two
/// boundary points ordered along the direction `a -> b`, or `None` when the
/// line misses the rectangle or only touches it at a single point.
pub fn clip_line_to_rect(a: &Point, b: &Point, rect: &Rect) -> Option<(Point, Point)> {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    // parametric Liang-Barsky on P(t) = a + t (b - a), t unbounded
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut clamp = |d: &Rational, p: &Rational, min: &Rational, max: &Rational| -> bool {
        if d.is_zero() {
            return min <= p && p <= max;
        }
        let t0 = (min - p) / d;
        let t1 = (max - p) / d;
        let (e, x) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        if lo.as_ref().is_none_or(|l| &e > l) {
            lo = Some(e);
        }
        if hi.as_ref().is_none_or(|h| &x < h) {
            hi = Some(x);
        }
        true
    };
    if !clamp(&dx, &a.x, &rect.xmin, &rect.xmax) || !clamp(&dy, &a.y, &rect.ymin, &rect.ymax) {
        return None;
    }
    let (lo, hi) = (lo?, hi?);
    if lo >= hi {
        return None;
    }
    let at = |t: &Rational| Point::new(&a.x + t * &dx, &a.y + t * &dy);
    Some((at(&lo), at(&hi)))
}

/// Greatest common divisor, exposed for the canonical-form tests.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
