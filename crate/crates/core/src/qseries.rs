//! Exact truncated Laurent series in one variable `q`.
//!
//! Series are generic over the coefficient field through [`FieldElem`],
//! implemented for the rationals ([`Rat`]) and for Q(cbrt 2) ([`Cubic`]).
//! Every series carries an explicit valuation and a guaranteed truncation
//! order; operations propagate the tightest guaranteed order of the result,
//! and reading a coefficient beyond it is an error, never a silent zero.

use crate::{Error, Result};
use num::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Field of scalars a Laurent series can carry.
pub trait FieldElem:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Tag used in the JSON serialization.
    const FIELD_NAME: &'static str;

    fn from_rational(r: Rat) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rat::from_integer(n.into()))
    }

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn coeff_to_json(&self) -> Value;

    fn coeff_from_json(v: &Value) -> Result<Self>;
}

fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

fn rat_from_str(s: &str) -> Result<Rat> {
    Rat::from_str(s).map_err(|e| Error::Parse(format!("bad rational '{s}': {e}")))
}

impl FieldElem for Rat {
    const FIELD_NAME: &'static str = "Q";

    fn from_rational(r: Rat) -> Self {
        r
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn coeff_to_json(&self) -> Value {
        Value::String(rat_to_string(self))
    }

    fn coeff_from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => rat_from_str(s),
            _ => Err(Error::Parse("rational coefficient must be a string".into())),
        }
    }
}

/// Element `r + s*t + u*t^2` of Q(cbrt 2), where `t^3 = 2`.
#[derive(Clone, PartialEq, Debug)]
pub struct Cubic {
    pub r: Rat,
    pub s: Rat,
    pub u: Rat,
}

impl Cubic {
    pub fn new(r: Rat, s: Rat, u: Rat) -> Self {
        Cubic { r, s, u }
    }

    /// `n * t`, handy for the cube-root-of-two multiples in mirror maps.
    pub fn cbrt2_times(n: Rat) -> Self {
        Cubic::new(Rat::zero(), n, Rat::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero() && self.u.is_zero()
    }

    pub fn rational_part(&self) -> &Rat {
        &self.r
    }

    /// Field norm `r^3 + 2 s^3 + 4 u^3 - 6 r s u`; zero only at zero.
    fn norm(&self) -> Rat {
        let (r, s, u) = (&self.r, &self.s, &self.u);
        r * r * r + Rat::from_integer(2.into()) * s * s * s
            + Rat::from_integer(4.into()) * u * u * u
            - Rat::from_integer(6.into()) * r * s * u
    }
}

impl Zero for Cubic {
    fn zero() -> Self {
        Cubic::new(Rat::zero(), Rat::zero(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero() && self.u.is_zero()
    }
}

impl One for Cubic {
    fn one() -> Self {
        Cubic::new(Rat::one(), Rat::zero(), Rat::zero())
    }
}

impl Add for Cubic {
    type Output = Cubic;
    fn add(self, o: Cubic) -> Cubic {
        Cubic::new(self.r + o.r, self.s + o.s, self.u + o.u)
    }
}

impl Sub for Cubic {
    type Output = Cubic;
    fn sub(self, o: Cubic) -> Cubic {
        Cubic::new(self.r - o.r, self.s - o.s, self.u - o.u)
    }
}

impl Neg for Cubic {
    type Output = Cubic;
    fn neg(self) -> Cubic {
        Cubic::new(-self.r, -self.s, -self.u)
    }
}

impl Mul for Cubic {
    type Output = Cubic;
    fn mul(self, o: Cubic) -> Cubic {
        // (r1 + s1 t + u1 t^2)(r2 + s2 t + u2 t^2) with t^3 = 2
        let two = Rat::from_integer(2.into());
        let r = &self.r * &o.r + &two * (&self.s * &o.u + &self.u * &o.s);
        let s = &self.r * &o.s + &self.s * &o.r + &two * (&self.u * &o.u);
        let u = &self.r * &o.u + &self.s * &o.s + &self.u * &o.r;
        Cubic::new(r, s, u)
    }
}

impl Div for Cubic {
    type Output = Cubic;
    fn div(self, o: Cubic) -> Cubic {
        self * o.inverse().expect("division by zero in Q(cbrt2)")
    }
}

impl FieldElem for Cubic {
    const FIELD_NAME: &'static str = "Q(cbrt2)";

    fn from_rational(r: Rat) -> Self {
        Cubic::new(r, Rat::zero(), Rat::zero())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        debug_assert!(!n.is_zero());
        let two = Rat::from_integer(2.into());
        let (r, s, u) = (&self.r, &self.s, &self.u);
        // adjugate coefficients: (r^2 - 2su) + (2u^2 - rs) t + (s^2 - ru) t^2
        let ar = r * r - &two * s * u;
        let as_ = &two * u * u - r * s;
        let au = s * s - r * u;
        Some(Cubic::new(ar / &n, as_ / &n, au / &n))
    }

    fn coeff_to_json(&self) -> Value {
        json!({
            "r": rat_to_string(&self.r),
            "t": rat_to_string(&self.s),
            "t2": rat_to_string(&self.u),
        })
    }

    fn coeff_from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("cubic coefficient must be an object".into()))?;
        let get = |k: &str| -> Result<Rat> {
            match obj.get(k) {
                Some(Value::String(s)) => rat_from_str(s),
                _ => Err(Error::Parse(format!("cubic coefficient missing '{k}'"))),
            }
        };
        Ok(Cubic::new(get("r")?, get("t")?, get("t2")?))
    }
}

impl fmt::Display for Cubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*2^(1/3) + {}*2^(2/3)", self.r, self.s, self.u)
    }
}

/// Truncated Laurent series: coefficients for exponents `val ..= ord`.
///
/// A series that is zero through its guaranteed order stores no
/// coefficients and `val = ord + 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<F: FieldElem> {
    val: i64,
    ord: i64,
    coeffs: Vec<F>,
}

impl<F: FieldElem> LaurentSeries<F> {
    fn normalized(mut val: i64, mut coeffs: Vec<F>, ord: i64) -> Self {
        // drop stored coefficients beyond ord
        if val + coeffs.len() as i64 - 1 > ord {
            let keep = (ord - val + 1).max(0) as usize;
            coeffs.truncate(keep);
        }
        while let Some(first) = coeffs.first() {
            if first.is_zero() {
                coeffs.remove(0);
                val += 1;
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            val = ord + 1;
        }
        LaurentSeries { val, ord, coeffs }
    }

    pub fn from_coeffs(val: i64, coeffs: Vec<F>, ord: i64) -> Self {
        Self::normalized(val, coeffs, ord)
    }

    /// Series from sparse (exponent, coefficient) pairs.
    pub fn from_terms(terms: &[(i64, F)], ord: i64) -> Self {
        let in_range: Vec<&(i64, F)> = terms
            .iter()
            .filter(|(e, c)| *e <= ord && !c.is_zero())
            .collect();
        let val = match in_range.iter().map(|(e, _)| *e).min() {
            Some(v) => v,
            None => return Self::zero(ord),
        };
        let mut coeffs = vec![F::zero(); (ord - val + 1) as usize];
        for (e, c) in in_range {
            let slot = &mut coeffs[(e - val) as usize];
            *slot = slot.clone() + c.clone();
        }
        Self::normalized(val, coeffs, ord)
    }

    pub fn zero(ord: i64) -> Self {
        LaurentSeries {
            val: ord + 1,
            ord,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: F, ord: i64) -> Self {
        Self::monomial(c, 0, ord)
    }

    pub fn monomial(c: F, exp: i64, ord: i64) -> Self {
        Self::normalized(exp, vec![c], ord)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation: lowest exponent with a (nonzero) stated coefficient.
    pub fn val(&self) -> i64 {
        self.val
    }

    /// Guaranteed truncation order (inclusive).
    pub fn ord(&self) -> i64 {
        self.ord
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Coefficient at exponent `e`; an error beyond the guaranteed order.
    pub fn coeff(&self, e: i64) -> Result<F> {
        if e > self.ord {
            return Err(Error::BeyondTruncation {
                wanted: e,
                ord: self.ord,
            });
        }
        if e < self.val {
            return Ok(F::zero());
        }
        Ok(self.coeffs[(e - self.val) as usize].clone())
    }

    /// Nonzero (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let ord = self.ord.min(other.ord);
        let val = self.val.min(other.val).min(ord + 1);
        let mut coeffs = vec![F::zero(); (ord - val + 1).max(0) as usize];
        for (e, c) in self.terms().chain(other.terms()) {
            if e <= ord {
                let slot = &mut coeffs[(e - val) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Self::normalized(val, coeffs, ord)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            ord: self.ord,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with truncation order `min(f.val + g.ord, g.val + f.ord)`.
    pub fn mul(&self, other: &Self) -> Self {
        let ord = (self.val + other.ord).min(other.val + self.ord);
        if self.is_zero() || other.is_zero() {
            return Self::zero(ord);
        }
        let val = self.val + other.val;
        let mut coeffs = vec![F::zero(); (ord - val + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.val + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.val + j as i64;
                if e > ord {
                    break;
                }
                let slot = &mut coeffs[(e - val) as usize];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        Self::normalized(val, coeffs, ord)
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.ord);
        }
        LaurentSeries {
            val: self.val,
            ord: self.ord,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Adds the exact scalar `c` without losing truncation order.
    pub fn add_scalar(&self, c: &F) -> Self {
        self.add(&Self::constant(c.clone(), self.ord))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            val: self.val + k,
            ord: self.ord + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Relative coefficient list of the unit part `f / (lead * q^val)`,
    /// i.e. `u_0 = 1, u_1, ...` up to relative degree `ord - val`.
    fn unit_coeffs(&self) -> Result<(F, Vec<F>)> {
        let lead = self.leading_coeff().ok_or(Error::DivisionByZeroSeries)?;
        let lead_inv = lead
            .inverse()
            .ok_or_else(|| Error::InvalidBranch("leading coefficient not invertible".into()))?;
        let unit: Vec<F> = self
            .coeffs
            .iter()
            .map(|c| c.clone() * lead_inv.clone())
            .collect();
        Ok((lead.clone(), unit))
    }

    /// Multiplicative inverse; `f.mul(&f.invert()?)` is 1 up to the
    /// guaranteed order. Result order is `ord - 2 val`.
    pub fn invert(&self) -> Result<Self> {
        let (lead, unit) = self.unit_coeffs()?;
        let lead_inv = lead.inverse().expect("checked nonzero");
        let deg = unit.len() - 1;
        let mut inv = vec![F::zero(); deg + 1];
        inv[0] = F::one();
        for k in 1..=deg {
            let mut acc = F::zero();
            for j in 1..=k {
                if !unit[j].is_zero() {
                    acc = acc + unit[j].clone() * inv[k - j].clone();
                }
            }
            inv[k] = -acc;
        }
        let coeffs: Vec<F> = inv.into_iter().map(|c| c * lead_inv.clone()).collect();
        Ok(Self::normalized(-self.val, coeffs, self.ord - 2 * self.val))
    }

    /// The unique series `g` with `g^den = f^num` whose leading coefficient
    /// is `leading_root`. The caller selects the branch: the root must
    /// satisfy `leading_root^den = lead^num` exactly, and `den` must divide
    /// `num * val` so the result has an integer valuation.
    pub fn power_rational(&self, num: i64, den: i64, leading_root: F) -> Result<Self> {
        if den <= 0 {
            return Err(Error::InvalidBranch("denominator must be positive".into()));
        }
        let (lead, unit) = self.unit_coeffs()?;
        if (num * self.val) % den != 0 {
            return Err(Error::InvalidBranch(format!(
                "valuation {} * {num} not divisible by {den}",
                self.val
            )));
        }
        // verify root^den = lead^num
        let root_pow = int_pow(&leading_root, den)?;
        let lead_pow = int_pow(&lead, num)?;
        if root_pow != lead_pow {
            return Err(Error::InvalidBranch(
                "leading_root^den != lead^num".into(),
            ));
        }
        let out_val = num * self.val / den;
        let deg = unit.len() - 1;
        // J.C.P. Miller recurrence for (1 + h)^e with e = num/den.
        let mut pow = vec![F::zero(); deg + 1];
        pow[0] = F::one();
        for k in 1..=deg {
            let mut acc = F::zero();
            for j in 1..=k {
                if unit[j].is_zero() {
                    continue;
                }
                let factor = Rat::new(
                    (num * j as i64 - den * (k - j) as i64).into(),
                    den.into(),
                );
                acc = acc + F::from_rational(factor) * unit[j].clone() * pow[k - j].clone();
            }
            pow[k] = acc * F::from_rational(Rat::new(1.into(), (k as i64).into()));
        }
        let coeffs: Vec<F> = pow.into_iter().map(|c| c * leading_root.clone()).collect();
        Ok(Self::normalized(out_val, coeffs, out_val + deg as i64))
    }

    /// Changes the coefficient field (e.g. embedding Q into Q(cbrt 2)).
    pub fn map_coeffs<G: FieldElem>(&self, f: impl Fn(&F) -> G) -> LaurentSeries<G> {
        LaurentSeries::from_coeffs(self.val, self.coeffs.iter().map(f).collect(), self.ord)
    }

    /// Exact equality of all coefficients up to the common guaranteed order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let ord = self.ord.min(other.ord);
        let lo = self.val.min(other.val);
        (lo..=ord).all(|e| self.coeff(e).unwrap() == other.coeff(e).unwrap())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!({"q": e, "coeff": c.coeff_to_json()}))
            .collect();
        json!({"field": F::FIELD_NAME, "terms": terms, "ord": self.ord})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("series must be an object".into()))?;
        match obj.get("field").and_then(|f| f.as_str()) {
            Some(name) if name == F::FIELD_NAME => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected field {:?}, got {other:?}",
                    F::FIELD_NAME
                )))
            }
        }
        let ord = obj
            .get("ord")
            .and_then(|o| o.as_i64())
            .ok_or_else(|| Error::Parse("series missing integer 'ord'".into()))?;
        let mut terms = Vec::new();
        for t in obj
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("series missing 'terms' array".into()))?
        {
            let e = t
                .get("q")
                .and_then(|e| e.as_i64())
                .ok_or_else(|| Error::Parse("term missing integer 'q'".into()))?;
            let c = F::coeff_from_json(
                t.get("coeff")
                    .ok_or_else(|| Error::Parse("term missing 'coeff'".into()))?,
            )?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(&terms, ord))
    }
}

fn int_pow<F: FieldElem>(base: &F, exp: i64) -> Result<F> {
    if exp < 0 {
        let inv = base
            .inverse()
            .ok_or_else(|| Error::InvalidBranch("cannot invert zero leading data".into()))?;
        return int_pow(&inv, -exp);
    }
    let mut acc = F::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    Ok(acc)
}

impl<F: FieldElem> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O(q^{})", self.ord + 1)?;
            return Ok(());
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*q^{e}")?;
        }
        write!(f, " + O(q^{})", self.ord + 1)
    }
}
