//! From words to potential terms: the exact area and coefficient formulas,
//! sparse assembly of the potential, and the derived diagram counts.

use crate::cutglue::GenerationSet;
use crate::words::{corner_counts, CyclicWord, OrbifoldSignature, SpaceForm};
use crate::{Error, Result};
use num::{BigInt, BigRational};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact polygon area in sigma-units:
/// `3(P+Q+R) + 8 (P/a + Q/b + R/c - 1) / (1 - 1/a - 1/b - 1/c)`.
pub fn area(x: u32, y: u32, z: u32, sig: &OrbifoldSignature) -> Result<BigRational> {
    if sig.kind() == SpaceForm::Elliptic {
        return Err(Error::DegenerateArea);
    }
    let (a, b, c) = (big(sig.a as i64), big(sig.b as i64), big(sig.c as i64));
    let corners = big(x as i64) / &a + big(y as i64) / &b + big(z as i64) / &c - big(1);
    let chi = big(1) - big(1) / a - big(1) / b - big(1) / c;
    Ok(big(3 * (x + y + z) as i64) + big(8) * corners / chi)
}

/// One monomial `coeff * x^P y^Q z^R q^qpow` of the potential.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PotentialTerm {
    pub coeff: BigRational,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub qpow: i64,
}

impl PotentialTerm {
    pub fn new(coeff: BigRational, x: u32, y: u32, z: u32, qpow: i64) -> Self {
        PotentialTerm {
            coeff,
            x,
            y,
            z,
            qpow,
        }
    }

    pub fn from_integers(coeff: i64, x: u32, y: u32, z: u32, qpow: i64) -> Self {
        Self::new(big(coeff), x, y, z, qpow)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "q": self.qpow,
            "coeff": self.coeff.to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| -> Result<u32> {
            v.get(k)
                .and_then(|n| n.as_u64())
                .map(|n| n as u32)
                .ok_or_else(|| Error::Parse(format!("term missing '{k}'")))
        };
        let qpow = v
            .get("q")
            .and_then(|n| n.as_i64())
            .ok_or_else(|| Error::Parse("term missing 'q'".into()))?;
        let coeff = match v.get("coeff") {
            Some(Value::String(s)) => s
                .parse::<BigRational>()
                .map_err(|e| Error::Parse(format!("bad coefficient '{s}': {e}")))?,
            _ => return Err(Error::Parse("term missing string 'coeff'".into())),
        };
        Ok(PotentialTerm::new(coeff, get("x")?, get("y")?, get("z")?, qpow))
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &PotentialTerm) -> fmt::Result {
    let sign = if t.coeff.is_negative() { '-' } else { '+' };
    write!(f, "{sign}{}", t.coeff.abs())?;
    for (name, e) in [("x", t.x), ("y", t.y), ("z", t.z)] {
        match e {
            0 => {}
            1 => write!(f, "*{name}")?,
            _ => write!(f, "*{name}^{e}")?,
        }
    }
    write!(f, "*q^{}", t.qpow)
}

impl fmt::Display for PotentialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

/// The potential term of one boundary word:
/// `(-1)^(p+Q+R) (2p+S)/eta * q^Area x^P y^Q z^R`.
pub fn term_of_word(w: &CyclicWord, sig: &OrbifoldSignature) -> Result<PotentialTerm> {
    let d = corner_counts(w)?;
    let area = area(d.x, d.y, d.z, sig)?;
    if !area.is_integer() {
        return Err(Error::NonIntegerArea(format!("{w}: area {area}")));
    }
    if area.is_negative() {
        return Err(Error::NonIntegerArea(format!("{w}: negative area {area}")));
    }
    let qpow = i64::try_from(area.to_integer())
        .map_err(|_| Error::NonIntegerArea(format!("{w}: area overflow")))?;
    let raw = 2 * d.p + d.s as i64;
    if raw % d.eta as i64 != 0 {
        return Err(Error::SymmetryViolation(format!(
            "{w}: eta = {} does not divide 2p+S = {raw}",
            d.eta
        )));
    }
    let sign = if (d.p + d.y as i64 + d.z as i64).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    Ok(PotentialTerm::new(
        big(sign * raw / d.eta as i64),
        d.x,
        d.y,
        d.z,
        qpow,
    ))
}

/// Integer q-power (area in sigma-units) of a word's term.
pub fn qpow_of_word(w: &CyclicWord, sig: &OrbifoldSignature) -> Result<i64> {
    Ok(term_of_word(w, sig)?.qpow)
}

/// Sparse potential keyed by `(qpow, P, Q, R)`, zero coefficients dropped.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Potential {
    terms: BTreeMap<(i64, u32, u32, u32), BigRational>,
}

impl Potential {
    pub fn new() -> Self {
        Potential::default()
    }

    pub fn add_term(&mut self, t: PotentialTerm) {
        let key = (t.qpow, t.x, t.y, t.z);
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += t.coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^P y^Q z^R q^qpow` (zero when absent).
    pub fn coefficient(&self, x: u32, y: u32, z: u32, qpow: i64) -> BigRational {
        self.terms
            .get(&(qpow, x, y, z))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Terms in ascending `(qpow, P, Q, R)` order.
    pub fn terms(&self) -> impl Iterator<Item = PotentialTerm> + '_ {
        self.terms
            .iter()
            .map(|(&(qpow, x, y, z), coeff)| PotentialTerm::new(coeff.clone(), x, y, z, qpow))
    }

    /// Drops terms with q-power above `n` (area-complete truncation).
    pub fn truncate_qpow(&self, n: i64) -> Potential {
        Potential {
            terms: self
                .terms
                .iter()
                .filter(|(&(qpow, ..), _)| qpow <= n)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms().map(|t| t.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("potential must be a JSON array".into()))?;
        let mut out = Potential::new();
        for t in arr {
            out.add_term(PotentialTerm::from_json(t)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.terms() {
            write_term(f, &t)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Sums the terms of every word in the supplied generations.
pub fn assemble(gens: &[GenerationSet], sig: &OrbifoldSignature) -> Result<Potential> {
    let mut out = Potential::new();
    for gen in gens {
        for w in &gen.words {
            out.add_term(term_of_word(w, sig)?);
        }
    }
    Ok(out)
}

/// Face, edge and vertex counts of the diagram determined by
/// `(p, P, Q, R)`; all linear in the inputs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DiagramCounts {
    pub v_w: i64,
    pub v_a: i64,
    pub v_b: i64,
    pub v_c: i64,
    pub f3: i64,
    pub f5: i64,
    pub f6: i64,
    pub e_x: i64,
    pub e_m: i64,
    pub e_d: i64,
}

/// Solves the linear diagram-count system for non-elliptic signatures and
/// checks integrality, non-negativity and the Euler identity
/// `v_A + v_B + v_C - 2 v_W + f3 + f5 + f6 = 1`.
pub fn diagram_counts(
    p: i64,
    x: u32,
    y: u32,
    z: u32,
    sig: &OrbifoldSignature,
) -> Result<DiagramCounts> {
    if p < 0 {
        return Err(Error::UnrealizableCornerData(format!(
            "diagram counts need p >= 0, got {p}"
        )));
    }
    if sig.kind() == SpaceForm::Elliptic {
        return Err(Error::DegenerateArea);
    }
    let s = (x + y + z) as i64;
    let (a, b, c) = (big(sig.a as i64), big(sig.b as i64), big(sig.c as i64));
    let chi = big(1) - big(1) / &a - big(1) / &b - big(1) / &c;
    let corners = big(x as i64) / &a + big(y as i64) / &b + big(z as i64) / &c;
    // chi * v_W = corners + chi (p + S) - 1
    let v_w_rat = (corners + &chi * big(p + s) - big(1)) / &chi;
    let to_int = |r: &BigRational, what: &str| -> Result<i64> {
        if !r.is_integer() {
            return Err(Error::UnrealizableCornerData(format!("{what} = {r}")));
        }
        i64::try_from(r.to_integer())
            .map_err(|_| Error::UnrealizableCornerData(format!("{what} overflow")))
    };
    let v_w = to_int(&v_w_rat, "v_W")?;
    let v_a = to_int(&((v_w_rat.clone() + big(x as i64) - big(s + p)) / &a), "v_A")?;
    let v_b = to_int(&((v_w_rat.clone() + big(y as i64) - big(s + p)) / &b), "v_B")?;
    let v_c = to_int(&((v_w_rat + big(z as i64) - big(s + p)) / &c), "v_C")?;
    let counts = DiagramCounts {
        v_w,
        v_a,
        v_b,
        v_c,
        f3: s,
        f5: 3 * p + s,
        f6: v_w - 2 * p - s,
        e_x: 6 * p,
        e_m: 3 * (v_w - 2 * p - s) - 3 * p,
        e_d: s,
    };
    let all = [
        counts.v_w, counts.v_a, counts.v_b, counts.v_c, counts.f3, counts.f5, counts.f6,
        counts.e_x, counts.e_m, counts.e_d,
    ];
    if all.iter().any(|&n| n < 0) {
        return Err(Error::UnrealizableCornerData(format!(
            "negative count in {counts:?}"
        )));
    }
    let euler = counts.v_a + counts.v_b + counts.v_c - 2 * counts.v_w
        + counts.f3
        + counts.f5
        + counts.f6;
    if euler != 1 {
        return Err(Error::UnrealizableCornerData(format!(
            "Euler identity gives {euler}, not 1"
        )));
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutglue::{generations, StopPolicy};
    use crate::words::CyclicWord;

    fn sig(a: u32, b: u32, c: u32) -> OrbifoldSignature {
        OrbifoldSignature::new(a, b, c).unwrap()
    }

    fn w(text: &str) -> CyclicWord {
        CyclicWord::parse(text).unwrap()
    }

    #[test]
    fn area_examples() {
        let s444 = sig(4, 4, 4);
        assert_eq!(area(1, 1, 1, &s444).unwrap(), big(1));
        assert_eq!(area(2, 2, 2, &s444).unwrap(), big(34));
        // (a, 0, 0) has area 3a for any hyperbolic signature
        for s in [sig(3, 4, 5), sig(2, 3, 7), sig(5, 6, 9)] {
            assert_eq!(area(s.a, 0, 0, &s).unwrap(), big(3 * s.a as i64));
        }
        assert_eq!(area(1, 1, 1, &sig(2, 4, 4)), Err(Error::DegenerateArea));
    }

    #[test]
    fn term_examples_444() {
        let s = sig(4, 4, 4);
        let t = term_of_word(&w("abc"), &s).unwrap();
        assert_eq!((t.x, t.y, t.z, t.qpow), (1, 1, 1, 1));
        assert_eq!(t.coeff, big(-1));
        let t = term_of_word(&w("(bc)^4"), &s).unwrap();
        assert_eq!((t.x, t.y, t.z, t.qpow), (4, 0, 0, 12));
        assert_eq!(t.coeff, big(1));
        let t = term_of_word(&w("(bc)b(ab)^2a(ca)^2c(bc)"), &s).unwrap();
        assert_eq!((t.x, t.y, t.z, t.qpow), (2, 2, 2, 34));
        assert_eq!(t.coeff, big(-8));
    }

    #[test]
    fn assemble_first_five_terms_444() {
        let s = sig(4, 4, 4);
        let gens = generations(&s, StopPolicy::MaxGeneration(1), false).unwrap();
        let pot = assemble(&gens, &s).unwrap();
        assert_eq!(pot.len(), 5);
        assert_eq!(pot.coefficient(1, 1, 1, 1), big(-1));
        assert_eq!(pot.coefficient(4, 0, 0, 12), big(1));
        assert_eq!(pot.coefficient(0, 4, 0, 12), big(1));
        assert_eq!(pot.coefficient(0, 0, 4, 12), big(1));
        assert_eq!(pot.coefficient(2, 2, 2, 34), big(-8));
    }

    #[test]
    fn assemble_first_four_terms_345() {
        let s = sig(3, 4, 5);
        let gens = generations(&s, StopPolicy::MaxGeneration(0), false).unwrap();
        let pot = assemble(&gens, &s).unwrap();
        assert_eq!(pot.len(), 4);
        assert_eq!(pot.coefficient(1, 1, 1, 1), big(-1));
        assert_eq!(pot.coefficient(3, 0, 0, 9), big(1));
        assert_eq!(pot.coefficient(0, 4, 0, 12), big(1));
        assert_eq!(pot.coefficient(0, 0, 5, 15), big(-1));
    }

    #[test]
    fn qpow_is_11s_minus_32_for_444() {
        let s = sig(4, 4, 4);
        let gens = generations(&s, StopPolicy::MaxGeneration(3), false).unwrap();
        for gen in &gens[1..] {
            for word in &gen.words {
                let d = crate::words::corner_counts(word).unwrap();
                assert_eq!(
                    qpow_of_word(word, &s).unwrap(),
                    11 * d.s as i64 - 32,
                    "{word}"
                );
            }
        }
    }

    #[test]
    fn diagram_counts_examples() {
        let s = sig(4, 4, 4);
        let d = diagram_counts(1, 2, 2, 2, &s).unwrap();
        assert_eq!(d.v_w, 9);
        assert_eq!((d.f3, d.f5, d.e_x, d.e_d, d.f6, d.e_m), (6, 9, 6, 6, 1, 0));
        assert_eq!((d.v_a, d.v_b, d.v_c), (1, 1, 1));
        // (p=0, P=a, Q=R=0): f5 = a, f3 = a
        for s in [sig(3, 4, 5), sig(2, 4, 5)] {
            let d = diagram_counts(0, s.a, 0, 0, &s).unwrap();
            assert_eq!(d.f3, s.a as i64);
            assert_eq!(d.f5, s.a as i64);
        }
        assert!(diagram_counts(-1, 1, 1, 1, &s).is_err());
        assert!(diagram_counts(0, 1, 0, 0, &sig(3, 4, 5)).is_err());
    }

    #[test]
    fn area_strictly_increases_along_edges() {
        for s in [sig(4, 4, 4), sig(3, 4, 5), sig(2, 4, 5), sig(2, 3, 7)] {
            let gens = generations(&s, StopPolicy::MaxGeneration(2), false).unwrap();
            for gen in &gens {
                for word in &gen.words {
                    let parent_q = qpow_of_word(word, &s).unwrap();
                    for site in crate::cutglue::find_cut_sites(word, &s) {
                        let child = crate::cutglue::apply(word, &site, &s, false).unwrap();
                        let child_q = qpow_of_word(&child, &s).unwrap();
                        assert!(child_q > parent_q, "{s}: {word} -> {child}");
                    }
                }
            }
        }
    }

    #[test]
    fn potential_text_format() {
        let s = sig(4, 4, 4);
        let gens = generations(&s, StopPolicy::MaxGeneration(1), false).unwrap();
        let text = assemble(&gens, &s).unwrap().to_string();
        assert!(text.contains("-1*x*y*z*q^1"));
        assert!(text.contains("+1*x^4*q^12"));
        assert!(text.contains("-8*x^2*y^2*z^2*q^34"));
    }

    #[test]
    fn potential_json_roundtrip() {
        let s = sig(3, 4, 5);
        let gens = generations(&s, StopPolicy::MaxGeneration(2), false).unwrap();
        let pot = assemble(&gens, &s).unwrap();
        let back = Potential::from_json(&pot.to_json()).unwrap();
        assert_eq!(pot, back);
    }

    #[test]
    fn truncate_by_qpow() {
        let s = sig(4, 4, 4);
        let gens = generations(&s, StopPolicy::MaxQPower(56), false).unwrap();
        let pot = assemble(&gens, &s).unwrap().truncate_qpow(56);
        assert!(pot.terms().all(|t| t.qpow <= 56));
        assert_eq!(pot.coefficient(4, 4, 0, 56), big(6));
    }
}
