//! Alphabet, cyclic words and their combinatorial statistics.
//!
//! A boundary word lives over the three-letter alphabet `{alpha, beta,
//! gamma}` (ASCII `a`, `b`, `c`). Cyclic words are stored in their
//! lexicographically least rotation, so value equality coincides with
//! cyclic conjugacy. Corner counts, the generation index `p` and the
//! symmetry factor `eta` are what every downstream formula consumes.

use crate::{Error, Result};
use std::fmt;

/// One of the three edge labels.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    Alpha,
    Beta,
    Gamma,
}

pub const LETTERS: [Letter; 3] = [Letter::Alpha, Letter::Beta, Letter::Gamma];

impl Letter {
    /// Corner-successor map: tau(alpha)=beta, tau(beta)=gamma, tau(gamma)=alpha.
    pub fn tau(self) -> Letter {
        match self {
            Letter::Alpha => Letter::Beta,
            Letter::Beta => Letter::Gamma,
            Letter::Gamma => Letter::Alpha,
        }
    }

    /// Successor inside the bi-infinite run word `(gamma beta alpha)^inf`:
    /// gamma -> beta -> alpha -> gamma. Inverse of [`Letter::tau`].
    pub fn run_next(self) -> Letter {
        match self {
            Letter::Alpha => Letter::Gamma,
            Letter::Beta => Letter::Alpha,
            Letter::Gamma => Letter::Beta,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::Alpha => 'a',
            Letter::Beta => 'b',
            Letter::Gamma => 'c',
        }
    }

    pub fn from_char(ch: char) -> Result<Letter> {
        match ch {
            'a' => Ok(Letter::Alpha),
            'b' => Ok(Letter::Beta),
            'c' => Ok(Letter::Gamma),
            _ => Err(Error::Parse(format!("unknown letter '{ch}'"))),
        }
    }
}

/// The kind of space form covering `P1(a,b,c)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpaceForm {
    Spherical,
    Elliptic,
    Hyperbolic,
}

impl fmt::Display for SpaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceForm::Spherical => write!(f, "spherical"),
            SpaceForm::Elliptic => write!(f, "elliptic"),
            SpaceForm::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

/// Orders of the three orbifold points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrbifoldSignature {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl OrbifoldSignature {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        if a < 2 || b < 2 || c < 2 {
            return Err(Error::Domain(format!(
                "orbifold orders must all be >= 2, got ({a},{b},{c})"
            )));
        }
        Ok(OrbifoldSignature { a, b, c })
    }

    /// Sign of 1/a + 1/b + 1/c - 1, decided in exact integer arithmetic.
    pub fn kind(&self) -> SpaceForm {
        let (a, b, c) = (self.a as u64, self.b as u64, self.c as u64);
        let lhs = b * c + a * c + a * b;
        let rhs = a * b * c;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => SpaceForm::Spherical,
            std::cmp::Ordering::Equal => SpaceForm::Elliptic,
            std::cmp::Ordering::Less => SpaceForm::Hyperbolic,
        }
    }

    /// Group order of the rotation attached to a letter.
    pub fn order_of(&self, letter: Letter) -> u32 {
        match letter {
            Letter::Alpha => self.a,
            Letter::Beta => self.b,
            Letter::Gamma => self.c,
        }
    }

    pub fn is_sorted(&self) -> bool {
        self.a <= self.b && self.b <= self.c
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A non-empty cyclic word stored in canonical (least) rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

/// Returns the lexicographically least rotation of `seq`.
///
/// Equality of the results coincides with cyclic conjugacy of the inputs,
/// and the operation is idempotent. Words stay short, so the quadratic
/// scan is fine.
pub fn canonical(seq: &[Letter]) -> Result<CyclicWord> {
    if seq.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = seq.len();
    let mut best = 0usize;
    for cand in 1..n {
        for k in 0..n {
            let a = seq[(cand + k) % n];
            let b = seq[(best + k) % n];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    best = cand;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => continue,
            }
        }
    }
    let mut letters = Vec::with_capacity(n);
    letters.extend_from_slice(&seq[best..]);
    letters.extend_from_slice(&seq[..best]);
    Ok(CyclicWord { letters })
}

impl CyclicWord {
    pub fn from_letters(seq: &[Letter]) -> Result<Self> {
        canonical(seq)
    }

    /// Parses ASCII words like `bcbab` with exponent shorthand `(ab)^3`.
    pub fn parse(text: &str) -> Result<Self> {
        let seq = parse_letter_seq(text)?;
        canonical(&seq)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at a cyclic index.
    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i % self.letters.len()]
    }

    /// Applies a letter substitution and re-canonicalizes.
    pub fn substitute(&self, map: impl Fn(Letter) -> Letter) -> CyclicWord {
        let seq: Vec<Letter> = self.letters.iter().map(|&l| map(l)).collect();
        canonical(&seq).expect("substitution preserves non-emptiness")
    }

    /// Smallest period of the canonical sequence.
    pub fn minimal_period(&self) -> usize {
        let n = self.letters.len();
        'outer: for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            for i in d..n {
                if self.letters[i] != self.letters[i - d] {
                    continue 'outer;
                }
            }
            return d;
        }
        n
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

fn parse_letter_seq(text: &str) -> Result<Vec<Letter>> {
    let chars: Vec<char> = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    let (seq, rest) = parse_seq(&chars, 0)?;
    if rest != chars.len() {
        return Err(Error::Parse(format!(
            "unexpected '{}' at position {rest}",
            chars[rest]
        )));
    }
    Ok(seq)
}

fn parse_seq(chars: &[char], mut i: usize) -> Result<(Vec<Letter>, usize)> {
    let mut out = Vec::new();
    while i < chars.len() && chars[i] != ')' {
        let (group, j) = match chars[i] {
            '(' => {
                let (inner, j) = parse_seq(chars, i + 1)?;
                if j >= chars.len() || chars[j] != ')' {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                (inner, j + 1)
            }
            ch => (vec![Letter::from_char(ch)?], i + 1),
        };
        let (exp, j) = parse_exponent(chars, j)?;
        for _ in 0..exp {
            out.extend_from_slice(&group);
        }
        i = j;
    }
    Ok((out, i))
}

fn parse_exponent(chars: &[char], i: usize) -> Result<(u32, usize)> {
    if i >= chars.len() || chars[i] != '^' {
        return Ok((1, i));
    }
    let mut j = i + 1;
    let mut digits = String::new();
    while j < chars.len() && chars[j].is_ascii_digit() {
        digits.push(chars[j]);
        j += 1;
    }
    if digits.is_empty() {
        return Err(Error::Parse("'^' not followed by a number".into()));
    }
    let exp: u32 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent '{digits}'")))?;
    if exp == 0 {
        return Err(Error::Parse("zero exponent".into()));
    }
    Ok((exp, j))
}

/// Corner counts and derived statistics of a boundary word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CornerData {
    /// Number of x-corners (cyclic occurrences of `beta gamma`).
    pub x: u32,
    /// Number of y-corners (`gamma alpha`).
    pub y: u32,
    /// Number of z-corners (`alpha beta`).
    pub z: u32,
    /// Total corner count `S = x + y + z`.
    pub s: u32,
    /// Generation index, `length = 2S + 3p`; the minimal triangle has -1.
    pub p: i64,
    /// Maximal symmetry: largest n with `w = u^n` as a cyclic word.
    pub eta: u32,
}

/// Counts corner patterns on the cyclic closure and derives `p` and `eta`.
pub fn corner_counts(w: &CyclicWord) -> Result<CornerData> {
    let n = w.len();
    let (mut x, mut y, mut z) = (0u32, 0u32, 0u32);
    for i in 0..n {
        let u = w.letter(i);
        let v = w.letter(i + 1);
        match (u, v) {
            (Letter::Beta, Letter::Gamma) => x += 1,
            (Letter::Gamma, Letter::Alpha) => y += 1,
            (Letter::Alpha, Letter::Beta) => z += 1,
            _ => {}
        }
    }
    let s = x + y + z;
    let run_len = n as i64 - 2 * s as i64;
    if run_len.rem_euclid(3) != 0 {
        return Err(Error::NotBoundaryWord(format!(
            "{w}: length {n} minus 2*{s} corners is not divisible by 3"
        )));
    }
    let p = run_len / 3;
    if p < -1 {
        return Err(Error::NotBoundaryWord(format!("{w}: generation {p} < -1")));
    }
    let eta = (n / w.minimal_period()) as u32;
    Ok(CornerData { x, y, z, s, p, eta })
}

/// Classification of an adjacent letter pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum PairKind {
    /// `v` follows `u` in the run word: v = run_next(u).
    Run,
    /// Corner pair: v = tau(u).
    Corner,
    /// Repeated letter; never occurs in boundary words.
    Repeat,
}

fn pair_kind(u: Letter, v: Letter) -> PairKind {
    if v == u.tau() {
        PairKind::Corner
    } else if v == u.run_next() {
        PairKind::Run
    } else {
        PairKind::Repeat
    }
}

/// Checks whether `w` factors as alternating run blocks (subwords of
/// `(gamma beta alpha)^inf`) and corner blocks (positive powers of
/// `alpha beta`, `beta gamma`, `gamma alpha`) with matching junctions,
/// with the run part of total length `3p`.
///
/// The degenerate seeds are accepted: `[abc]`, and the pure corner powers
/// `[(bc)^a]`, `[(ca)^b]`, `[(ab)^c]` whose exponent equals the group
/// order of the enclosed vertex (for a = 2 this includes `[(bc)^2]`).
pub fn validate_standard(w: &CyclicWord, sig: &OrbifoldSignature) -> bool {
    let n = w.len();
    if n == 3 && w.letters() == [Letter::Alpha, Letter::Beta, Letter::Gamma] {
        return true; // the minimal xyz triangle, p = -1
    }
    let kinds: Vec<PairKind> = (0..n)
        .map(|i| pair_kind(w.letter(i), w.letter(i + 1)))
        .collect();
    if kinds.iter().any(|&k| k == PairKind::Repeat) {
        return false;
    }
    let corners: Vec<usize> = (0..n).filter(|&i| kinds[i] == PairKind::Corner).collect();
    if corners.is_empty() {
        return false; // pure run word, nontrivial in the group
    }
    // Two adjacent corner pairs only happen in [abc]-like words.
    for &i in &corners {
        if kinds[(i + 1) % n] == PairKind::Corner {
            return false;
        }
    }
    // Pure corner power (xy)^m: valid only when m is the full vertex order.
    if 2 * corners.len() == n {
        let pair = (w.letter(0), w.letter(1));
        let vertex_order = match pair {
            (Letter::Beta, Letter::Gamma) | (Letter::Gamma, Letter::Beta) => sig.a,
            (Letter::Gamma, Letter::Alpha) | (Letter::Alpha, Letter::Gamma) => sig.b,
            (Letter::Alpha, Letter::Beta) | (Letter::Beta, Letter::Alpha) => sig.c,
            _ => return false,
        };
        return corners.len() == vertex_order as usize;
    }
    // Order-2 vertices admit no corner blocks beyond the two exceptional
    // seeds, which were both handled above.
    let data = match corner_counts(w) {
        Ok(d) => d,
        Err(_) => return false,
    };
    if data.p < 0 {
        return false;
    }
    if sig.a == 2 && data.x > 0 {
        return false;
    }
    if sig.b == 2 && data.y > 0 {
        return false;
    }
    if sig.c == 2 && data.z > 0 {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> CyclicWord {
        CyclicWord::parse(text).unwrap()
    }

    fn sig(a: u32, b: u32, c: u32) -> OrbifoldSignature {
        OrbifoldSignature::new(a, b, c).unwrap()
    }

    #[test]
    fn canonical_rotations() {
        assert_eq!(w("bca").to_string(), "abc");
        assert_eq!(w("abc").to_string(), "abc");
        assert_eq!(w("cbcb").to_string(), "bcbc");
    }

    #[test]
    fn canonical_rejects_empty() {
        assert_eq!(CyclicWord::parse(""), Err(Error::EmptyWord));
    }

    #[test]
    fn parse_exponent_shorthand() {
        assert_eq!(w("(ab)^3"), w("ababab"));
        assert_eq!(w("(bc)b(ab)^2a(ca)^2c(bc)"), w("bcbababacacacbc"));
        assert!(CyclicWord::parse("(ab").is_err());
        assert!(CyclicWord::parse("abx").is_err());
        assert!(CyclicWord::parse("(ab)^0").is_err());
    }

    #[test]
    fn signature_kinds() {
        assert_eq!(sig(2, 3, 5).kind(), SpaceForm::Spherical);
        assert_eq!(sig(2, 3, 6).kind(), SpaceForm::Elliptic);
        assert_eq!(sig(2, 4, 4).kind(), SpaceForm::Elliptic);
        assert_eq!(sig(3, 3, 3).kind(), SpaceForm::Elliptic);
        assert_eq!(sig(2, 3, 7).kind(), SpaceForm::Hyperbolic);
        assert_eq!(sig(4, 4, 4).kind(), SpaceForm::Hyperbolic);
        assert!(OrbifoldSignature::new(1, 4, 4).is_err());
    }

    #[test]
    fn corner_counts_minimal_triangle() {
        let d = corner_counts(&w("abc")).unwrap();
        assert_eq!((d.x, d.y, d.z, d.s, d.p, d.eta), (1, 1, 1, 3, -1, 1));
    }

    #[test]
    fn corner_counts_seed_power() {
        let d = corner_counts(&w("(bc)^4")).unwrap();
        assert_eq!((d.x, d.y, d.z, d.s, d.p, d.eta), (4, 0, 0, 4, 0, 4));
    }

    #[test]
    fn corner_counts_first_generation_444() {
        // w_1^1 for (4,4,4), displayed with its cut subwords.
        let d = corner_counts(&w("(bc)b(ab)^2a(ca)^2c(bc)")).unwrap();
        assert_eq!((d.x, d.y, d.z, d.s, d.p, d.eta), (2, 2, 2, 6, 1, 1));
    }

    #[test]
    fn corner_counts_rejects_bad_length() {
        assert!(corner_counts(&w("a")).is_err());
        // (abc)^2 has all-corner pairs, p = -2
        assert!(corner_counts(&w("abcabc")).is_err());
    }

    #[test]
    fn corner_counts_rotation_invariant() {
        let texts = ["bcbababacacacbc", "acacbcbcbab", "abab"];
        for t in texts {
            let base = w(t);
            let seq: Vec<Letter> = base.letters().to_vec();
            let d0 = corner_counts(&base).unwrap();
            for r in 1..seq.len() {
                let mut rot = seq[r..].to_vec();
                rot.extend_from_slice(&seq[..r]);
                let d1 = corner_counts(&CyclicWord::from_letters(&rot).unwrap()).unwrap();
                assert_eq!(d0, d1);
            }
        }
    }

    #[test]
    fn validate_standard_examples() {
        let s444 = sig(4, 4, 4);
        assert!(validate_standard(&w("(bc)b(ab)^2a(ca)^2c(bc)"), &s444));
        assert!(validate_standard(&w("(ca)^4"), &s444));
        assert!(validate_standard(&w("abc"), &s444));
        assert!(!validate_standard(&w("aabc"), &s444));
        // corner power with the wrong exponent
        assert!(!validate_standard(&w("(ca)^3"), &s444));
        // pure run words are not boundary words
        assert!(!validate_standard(&w("cba"), &s444));
        assert!(!validate_standard(&w("abcabc"), &s444));
        // corner data fine but no consistent factorization
        assert!(!validate_standard(&w("acab"), &s444));
    }

    #[test]
    fn validate_standard_order_two() {
        let s245 = sig(2, 4, 5);
        assert!(validate_standard(&w("(bc)^2"), &s245));
        assert!(validate_standard(&w("abc"), &s245));
        // S^1 word for (2,4,5): no x-corners
        assert!(validate_standard(&w("a(ca)^2cb(ab)^3"), &s245));
        // an x-corner in a non-seed word is forbidden for a = 2
        assert!(!validate_standard(&w("(bc)b(ab)^2a(ca)^2c(bc)"), &s245));
    }

    #[test]
    fn eta_divides_counts() {
        for t in ["bcbc", "abab", "(bababacacac)^2", "(bc)b(ab)^2a(ca)^2c(bc)"] {
            let word = w(t);
            let d = corner_counts(&word).unwrap();
            let g = gcd(
                gcd(d.x as u64, d.y as u64),
                gcd(d.z as u64, word.len() as u64),
            );
            assert_eq!(g % d.eta as u64, 0, "eta must divide gcd(P,Q,R,len) for {t}");
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}
