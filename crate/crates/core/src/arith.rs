//! Exact integer arithmetic with an `i64` fast path.
//!
//! Cone computations only ever need integer row and ray vectors (rational
//! rows are scaled to primitive integer vectors), so a single integer type
//! that silently promotes to a bignum on overflow covers every case.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer. `Big` is only used for values outside `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(v) => *v as f64,
            Int::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let g = (*a as i128).gcd(&(*b as i128));
                Int::from_big(BigInt::from(g))
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Exact division; `other` must divide `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div(*b) {
                Some(q) => Int::Small(q),
                None => Int::from_big(BigInt::from(*a) / BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() / other.to_big()),
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl Add for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        &self - &rhs
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Small values serialize as JSON numbers, big ones as decimal strings.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Int::Small(v)),
            Repr::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map(Int::from_big)
                .map_err(serde::de::Error::custom),
        }
    }
}

pub type IntVec = Vec<Int>;

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::Small(x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    let mut small: i128 = 0;
    let mut big: Option<BigInt> = None;
    for (x, y) in a.iter().zip(b) {
        match (x, y) {
            (Int::Small(0), _) | (_, Int::Small(0)) => {}
            (Int::Small(p), Int::Small(q)) => {
                let prod = (*p as i128) * (*q as i128);
                match small.checked_add(prod) {
                    Some(s) => small = s,
                    None => {
                        *big.get_or_insert_with(BigInt::zero) += BigInt::from(small);
                        small = prod;
                    }
                }
            }
            _ => {
                *big.get_or_insert_with(BigInt::zero) += x.to_big() * y.to_big();
            }
        }
    }
    match big {
        None => match i64::try_from(small) {
            Ok(v) => Int::Small(v),
            Err(_) => Int::Big(BigInt::from(small)),
        },
        Some(b) => Int::from_big(b + BigInt::from(small)),
    }
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Int::is_zero)
}

/// Divide by the gcd of all entries. Leaves the zero vector untouched.
pub fn make_primitive(v: &mut [Int]) {
    let mut g = Int::ZERO;
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g == Int::ONE {
                return;
            }
        }
    }
    if g.is_zero() || g == Int::ONE {
        return;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact(&g);
        }
    }
}

/// Primitive and with the first nonzero entry positive. Used for
/// sign-free objects such as lineality directions and equality rows.
pub fn make_canonical_line(v: &mut [Int]) {
    make_primitive(v);
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// `a * u - b * w`, made primitive.
pub fn combine(a: &Int, u: &[Int], b: &Int, w: &[Int]) -> IntVec {
    let mut out: IntVec = u
        .iter()
        .zip(w)
        .map(|(x, y)| &(a * x) - &(b * y))
        .collect();
    make_primitive(&mut out);
    out
}

/// Scale a rational row to the primitive integer row with the same direction.
pub fn rational_row_to_int(row: &[BigRational]) -> IntVec {
    let mut lcm = BigInt::one();
    for q in row {
        if !q.is_zero() {
            lcm = lcm.lcm(q.denom());
        }
    }
    let mut out: IntVec = row
        .iter()
        .map(|q| Int::from_big((q * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect();
    make_primitive(&mut out);
    out
}

pub fn to_rational_row(row: &[Int]) -> Vec<BigRational> {
    row.iter()
        .map(|x| BigRational::from_integer(x.to_big()))
        .collect()
}

/// Rank of a set of integer rows, by fraction-free elimination.
pub fn rank(rows: &[IntVec]) -> usize {
    row_echelon(rows).len()
}

/// Fraction-free row echelon form (Bareiss-free but gcd-reduced).
/// Returns independent primitive rows with distinct pivot columns.
pub fn row_echelon(rows: &[IntVec]) -> Vec<IntVec> {
    let mut basis: Vec<(usize, IntVec)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (pivot, b) in &basis {
            if !r[*pivot].is_zero() {
                let coef = r[*pivot].clone();
                let lead = b[*pivot].clone();
                r = combine(&lead, &r, &coef, b);
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            // keep the basis reduced in the new pivot column
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let coef = b[p].clone();
                    let lead = r[p].clone();
                    let nb = combine(&lead, b, &coef, &r);
                    *b = nb;
                }
            }
            basis.push((p, r));
        }
    }
    basis.into_iter().map(|(_, r)| r).collect()
}

/// Canonical basis of the row space: reduced echelon rows sorted by pivot,
/// each primitive with positive pivot.
pub fn canonical_row_space(rows: &[IntVec]) -> Vec<IntVec> {
    let mut basis = row_echelon(rows);
    for b in basis.iter_mut() {
        let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
        if b[p].is_negative() {
            for x in b.iter_mut() {
                *x = -&*x;
            }
        }
    }
    basis.sort_by_key(|b| b.iter().position(|x| !x.is_zero()));
    basis
}

/// Integer basis of `{x : row . x = 0 for all rows}`.
pub fn null_space(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let basis = row_echelon(rows);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    let mut out = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        // x_free = L, x_pivot = -b[free] * L / b[pivot]; L = lcm of pivots.
        let mut lcm = BigInt::one();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !b[free].is_zero() {
                lcm = lcm.lcm(&b[p].to_big());
            }
        }
        let l = Int::from(lcm);
        let mut v = vec![Int::ZERO; dim];
        v[free] = l.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !b[free].is_zero() {
                v[p] = -(&(&b[free] * &l)).div_exact(&b[p]);
            }
        }
        make_canonical_line(&mut v);
        out.push(v);
    }
    out
}
