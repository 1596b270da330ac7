//! Exact integer Laurent polynomials in one variable `q`.
//!
//! Besides ring arithmetic this module provides the q-analogs used throughout
//! the crate (`[n]`, Gaussian binomials), cyclotomic polynomials, and exact
//! evaluation at primitive roots of unity by reduction modulo `Φ_d`.
//!
//! Coefficients are dense and arbitrary precision. A polynomial is stored as
//! its lowest exponent plus the coefficient run starting there, always
//! trimmed so that both ends are nonzero.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigint_serde::JsonInt;
use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntLaurentPoly {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl IntLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c.into()])
    }

    /// Builds `Σ coeffs[i] q^(offset + i)`, trimming zero ends.
    pub fn from_coeffs(offset: i64, coeffs: Vec<BigInt>) -> Self {
        Self { offset, coeffs }.normalized()
    }

    pub fn from_i64_coeffs(offset: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Sums `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn normalized(mut self) -> Self {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero();
        };
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.offset += first as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient run starting at `offset()`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.offset;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// The constant value if this is a constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 if self.offset == 0 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Value at `q = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `c * q^m`.
    pub fn scale_shift(&self, c: &BigInt, m: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            offset: self.offset + m,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn shift(&self, m: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            offset: self.offset + m,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Returns `h` with `self = g * h`, by long division over the integers.
    ///
    /// Fails with [`Error::NotDivisible`] if any step needs a non-integer
    /// quotient coefficient or the final remainder is nonzero.
    pub fn exact_div(&self, g: &IntLaurentPoly) -> Result<IntLaurentPoly> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (a, b) = (self.coeffs.len(), g.coeffs.len());
        if a < b {
            return Err(Error::NotDivisible);
        }
        let lead = g.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); a - b + 1];
        for i in (0..=a - b).rev() {
            let top = &rem[i + b - 1];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * gj;
            }
            quot[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::from_coeffs(self.offset - g.offset, quot))
    }

    /// Replaces every exponent by its residue mod `d`. Exact at any `d`-th
    /// root of unity since `ω^d = 1`.
    pub fn fold_mod(&self, d: u32) -> IntLaurentPoly {
        assert!(d >= 1);
        let d = d as i64;
        let mut out = vec![BigInt::zero(); d as usize];
        for (e, c) in self.terms() {
            out[e.rem_euclid(d) as usize] += c;
        }
        Self::from_coeffs(0, out)
    }

    /// Remainder modulo a monic polynomial `m` with zero offset.
    /// `self` must not have negative exponents.
    fn rem_monic(&self, m: &IntLaurentPoly) -> IntLaurentPoly {
        debug_assert!(m.offset == 0 && m.coeffs.last().is_some_and(|c| c.is_one()));
        debug_assert!(self.offset >= 0);
        if self.is_zero() {
            return Self::zero();
        }
        let b = m.coeffs.len();
        let mut dense = vec![BigInt::zero(); self.offset as usize];
        dense.extend(self.coeffs.iter().cloned());
        while dense.len() >= b {
            let top = dense.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = dense.len() + 1 - b;
            for (j, mj) in m.coeffs[..b - 1].iter().enumerate() {
                dense[base + j] -= &top * mj;
            }
        }
        Self::from_coeffs(0, dense)
    }

    /// Exact value at every primitive `d`-th root of unity at once.
    pub fn eval_at_root(&self, d: u32) -> Result<BigInt> {
        eval_at_primitive_root(self, RootOfUnity::new(d)?)
    }
}

impl fmt::Display for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match e {
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLaurentPoly({self})")
    }
}

impl Add<&IntLaurentPoly> for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn add(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = self.degree().unwrap().max(rhs.degree().unwrap());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for p in [self, rhs] {
            let start = (p.offset - lo) as usize;
            for (slot, c) in coeffs[start..].iter_mut().zip(&p.coeffs) {
                *slot += c;
            }
        }
        IntLaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl Neg for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn neg(self) -> IntLaurentPoly {
        IntLaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&IntLaurentPoly> for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn sub(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&IntLaurentPoly> for &IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn mul(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntLaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntLaurentPoly::from_coeffs(self.offset + rhs.offset, coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr<IntLaurentPoly> for IntLaurentPoly {
            type Output = IntLaurentPoly;
            fn $method(self, rhs: IntLaurentPoly) -> IntLaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntLaurentPoly> for IntLaurentPoly {
            type Output = IntLaurentPoly;
            fn $method(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<IntLaurentPoly> for &IntLaurentPoly {
            type Output = IntLaurentPoly;
            fn $method(self, rhs: IntLaurentPoly) -> IntLaurentPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

impl Neg for IntLaurentPoly {
    type Output = IntLaurentPoly;

    fn neg(self) -> IntLaurentPoly {
        -&self
    }
}

impl AddAssign<&IntLaurentPoly> for IntLaurentPoly {
    fn add_assign(&mut self, rhs: &IntLaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Sum for IntLaurentPoly {
    fn sum<I: Iterator<Item = IntLaurentPoly>>(iter: I) -> Self {
        iter.fold(IntLaurentPoly::zero(), |acc, p| acc + p)
    }
}

#[derive(Serialize, Deserialize)]
struct TermsRepr {
    terms: Vec<(i64, JsonInt)>,
}

impl Serialize for IntLaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TermsRepr {
            terms: self.terms().map(|(e, c)| (e, JsonInt(c.clone()))).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntLaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = TermsRepr::deserialize(deserializer)?;
        Ok(Self::from_terms(
            repr.terms.into_iter().map(|(e, c)| (e, c.0)),
        ))
    }
}

/// Order of a primitive root of unity `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    d: u32,
}

impl RootOfUnity {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(invalid("root of unity order must be at least 1"));
        }
        Ok(Self { d })
    }

    pub fn order(self) -> u32 {
        self.d
    }
}

/// `[n] = 1 + q + ... + q^(n-1)`; `[0]` is zero.
pub fn q_int(n: u32) -> IntLaurentPoly {
    IntLaurentPoly::from_coeffs(0, vec![BigInt::one(); n as usize])
}

/// Gaussian binomial coefficient. Zero unless `0 <= k <= n`.
///
/// Built as the running product `Π_{i=1..k} [n-i+1] / [i]`; every prefix of
/// that product is itself a Gaussian binomial, so each division is exact.
pub fn gauss(n: i64, k: i64) -> IntLaurentPoly {
    if n < 0 || k < 0 || k > n {
        return IntLaurentPoly::zero();
    }
    let mut acc = IntLaurentPoly::one();
    for i in 1..=k {
        acc = (&acc * &q_int((n - i + 1) as u32))
            .exact_div(&q_int(i as u32))
            .expect("partial q-binomial products divide exactly");
    }
    acc
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u32, IntLaurentPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, IntLaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `d`-th cyclotomic polynomial `Φ_d`, memoized per process.
pub fn cyclotomic(d: u32) -> IntLaurentPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&d) {
        return p.clone();
    }
    // q^d - 1 over the product of the proper-divisor factors
    let mut acc = &IntLaurentPoly::monomial(1, d as i64) - &IntLaurentPoly::one();
    for e in (1..d).filter(|e| d % e == 0) {
        acc = acc
            .exact_div(&cyclotomic(e))
            .expect("Φ_e divides q^d - 1 for e | d");
    }
    cyclotomic_cache()
        .write()
        .unwrap()
        .entry(d)
        .or_insert(acc)
        .clone()
}

/// Evaluates `f` at a primitive `d`-th root of unity.
///
/// Exponents are folded mod `d` and the result is reduced modulo `Φ_d`. A
/// constant remainder is the common value of `f` at all primitive `d`-th
/// roots; anything else yields [`Error::NonRational`].
pub fn eval_at_primitive_root(f: &IntLaurentPoly, root: RootOfUnity) -> Result<BigInt> {
    let d = root.order();
    let rem = f.fold_mod(d).rem_monic(&cyclotomic(d));
    rem.as_constant()
        .ok_or(Error::NonRational { d, remainder: rem })
}

/// `lim_{q→ω} [a]/[b]` for `ω` a primitive `d`-th root, assuming
/// `a ≡ b (mod n)` for some `n` divisible by `d`.
pub fn limit_ratio_at_root(a: u64, b: u64, d: u64) -> Ratio<u64> {
    assert!(a > 0 && b > 0 && d > 0);
    if a % d == 0 {
        // (a/d)/(b/d); d | b follows from the congruence
        Ratio::new(a / d, b / d)
    } else {
        Ratio::one()
    }
}

/// Value of `gauss(n, k)` at a primitive `d`-th root, for `d | n`:
/// `C(n/d, k/d)` when `d | k`, else 0.
pub fn gauss_at_root(n: i64, k: i64, d: u32) -> Result<BigInt> {
    if d == 0 || n < 0 || n % d as i64 != 0 {
        return Err(invalid(format!(
            "gauss_at_root needs d | n (n = {n}, d = {d})"
        )));
    }
    let d = d as i64;
    if k < 0 || k > n || k % d != 0 {
        return Ok(BigInt::zero());
    }
    Ok(binomial((n / d) as u64, (k / d) as u64))
}

/// Ordinary binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
