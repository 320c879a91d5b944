//! Cut words, glue words, and the generation-set enumeration.
//!
//! A cut site is a maximal-run occurrence of a cut word `cut(theta, k)`:
//! a corner junction, followed by `k + 2` letters of the run pattern,
//! closed by the corner junction that breaks the pattern. Replacing the
//! cut word by the matching glue word enlarges the underlying polygon and
//! raises the generation index `p` by exactly one; iterating from the
//! seed words enumerates all boundary words.
//!
//! For signatures with an order-2 vertex the signature must be sorted
//! (`a = 2 <= b <= c`) and only four parameter families are allowed:
//! `cut(alpha, 3k)`, `cut(alpha, 3k+1)`, `cut(gamma, 3k-1)` for `k >= 1`,
//! and `cut(gamma, 3k)`. The glue words then follow separate closed forms
//! for `b >= 4` and `b = 3`.

use crate::potential;
use crate::words::{
    canonical, CyclicWord, Letter, OrbifoldSignature, SpaceForm,
};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Occurrence of a cut word inside a canonical word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CutSite {
    /// Index of the cut word's first letter in the canonical sequence.
    pub start: usize,
    /// First letter of the cut word.
    pub theta: Letter,
    /// Run-pattern parameter; the cut word has `k + 4` letters.
    pub k: u32,
    /// Letters consumed, cyclically: `k + 4`.
    pub span: usize,
}

/// Words of one generation, keyed by canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenerationSet {
    pub p: i64,
    pub words: BTreeSet<CyclicWord>,
}

/// Termination rule for [`generations`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StopPolicy {
    /// Enumerate `S^-1 ..= S^P`.
    MaxGeneration(i64),
    /// Expand only words whose term has q-power at most `N`; stop once a
    /// whole generation exceeds `N` (children strictly increase area).
    MaxQPower(i64),
}

fn allowed_for_order_two(theta: Letter, last: Letter) -> bool {
    theta != Letter::Beta && last != Letter::Gamma
}

/// The cut word `theta . w . tau(theta')` where `w` is the length-`k+2`
/// subword of the run pattern starting at `tau(theta)` and `theta'` is
/// its last letter.
pub fn cut_word(theta: Letter, k: u32, sig: &OrbifoldSignature) -> Result<Vec<Letter>> {
    let mut out = Vec::with_capacity(k as usize + 4);
    out.push(theta);
    let mut cur = theta.tau();
    for _ in 0..(k + 2) {
        out.push(cur);
        cur = cur.run_next();
    }
    let last_pattern = *out.last().expect("non-empty");
    out.push(last_pattern.tau());
    if sig.a == 2 && !allowed_for_order_two(theta, *out.last().expect("non-empty")) {
        return Err(Error::ForbiddenCut(format!(
            "cut({},{k}) is outside the four families allowed for a = 2",
            theta.to_char()
        )));
    }
    Ok(out)
}

fn push_pairs(out: &mut Vec<Letter>, x: Letter, y: Letter, times: i64) {
    for _ in 0..times {
        out.push(x);
        out.push(y);
    }
}

fn check_exponent(e: i64, what: &str) -> Result<i64> {
    if e < 0 {
        return Err(Error::Domain(format!(
            "glue word needs exponent {what} = {e} >= 0"
        )));
    }
    Ok(e)
}

/// Glue word for generic signatures (all orders at least 3): with
/// `theta_1 theta_2 ...` the run pattern from `theta`, the word is
/// `theta_1 (theta_2 theta_1)^{o(theta_3)-2} theta_2
///  (theta_3 theta_2)^{o(theta_4)-3} theta_3 ...
///  (theta_{k+3} theta_{k+2})^{o(theta_{k+4})-2} theta_{k+3}`
/// (exponents `o - 2` on the end blocks, `o - 3` inside).
fn glue_generic(theta: Letter, k: u32, sig: &OrbifoldSignature) -> Result<Vec<Letter>> {
    let blocks = k as usize + 2;
    let mut thetas = Vec::with_capacity(blocks + 2);
    let mut cur = theta;
    for _ in 0..blocks + 2 {
        thetas.push(cur);
        cur = cur.run_next();
    }
    let mut out = vec![thetas[0]];
    for i in 1..=blocks {
        let ends = i == 1 || i == blocks;
        let e = sig.order_of(thetas[i + 1]) as i64 - if ends { 2 } else { 3 };
        check_exponent(e, "o-2/o-3")?;
        push_pairs(&mut out, thetas[i], thetas[i - 1], e);
        out.push(thetas[i]);
    }
    Ok(out)
}

/// Glue words for `a = 2, b >= 4`, one closed form per parameter family.
fn glue_a2_b4(theta: Letter, k_cut: u32, sig: &OrbifoldSignature) -> Result<Vec<Letter>> {
    use Letter::{Alpha, Beta, Gamma};
    let b = sig.b as i64;
    let c = sig.c as i64;
    check_exponent(b - 4, "b-4")?;
    check_exponent(c - 4, "c-4")?;
    let mut out = Vec::new();
    match (theta, k_cut % 3) {
        (Alpha, 0) => {
            let k = (k_cut / 3) as i64;
            out.push(Alpha);
            push_pairs(&mut out, Gamma, Alpha, b - 3);
            for _ in 0..k {
                out.push(Gamma);
                out.push(Beta);
                push_pairs(&mut out, Alpha, Beta, c - 4);
                out.push(Alpha);
                push_pairs(&mut out, Gamma, Alpha, b - 4);
            }
            push_pairs(&mut out, Gamma, Alpha, 1);
            out.push(Gamma);
            out.push(Beta);
        }
        (Alpha, 1) => {
            let k = ((k_cut - 1) / 3) as i64;
            out.push(Alpha);
            push_pairs(&mut out, Gamma, Alpha, b - 3);
            out.push(Gamma);
            out.push(Beta);
            push_pairs(&mut out, Alpha, Beta, c - 4);
            for _ in 0..k {
                out.push(Alpha);
                push_pairs(&mut out, Gamma, Alpha, b - 4);
                out.push(Gamma);
                out.push(Beta);
                push_pairs(&mut out, Alpha, Beta, c - 4);
            }
            push_pairs(&mut out, Alpha, Beta, 1);
            out.push(Alpha);
        }
        (Gamma, 2) => {
            // family cut(gamma, 3k-1), k >= 1
            let k = ((k_cut + 1) / 3) as i64;
            out.push(Gamma);
            out.push(Beta);
            push_pairs(&mut out, Alpha, Beta, c - 3);
            for _ in 0..(k - 1) {
                out.push(Alpha);
                push_pairs(&mut out, Gamma, Alpha, b - 4);
                out.push(Gamma);
                out.push(Beta);
                push_pairs(&mut out, Alpha, Beta, c - 4);
            }
            out.push(Alpha);
            push_pairs(&mut out, Gamma, Alpha, b - 3);
            out.push(Gamma);
            out.push(Beta);
        }
        (Gamma, 0) => {
            let k = (k_cut / 3) as i64;
            out.push(Gamma);
            out.push(Beta);
            push_pairs(&mut out, Alpha, Beta, c - 3);
            for _ in 0..k {
                out.push(Alpha);
                push_pairs(&mut out, Gamma, Alpha, b - 4);
                out.push(Gamma);
                out.push(Beta);
                push_pairs(&mut out, Alpha, Beta, c - 4);
            }
            push_pairs(&mut out, Alpha, Beta, 1);
            out.push(Alpha);
        }
        _ => {
            return Err(Error::ForbiddenCut(format!(
                "glue({},{k_cut}) is outside the four families allowed for a = 2",
                theta.to_char()
            )))
        }
    }
    Ok(out)
}

/// Glue words for `a = 2, b = 3`. The `cut(alpha, 0)` member is the
/// `b = 3` specialization of the `b >= 4` closed form (the displayed
/// family form only applies from `k >= 1`).
fn glue_a2_b3(theta: Letter, k_cut: u32, sig: &OrbifoldSignature) -> Result<Vec<Letter>> {
    use Letter::{Alpha, Beta, Gamma};
    let c = sig.c as i64;
    let mut out = Vec::new();
    let triple = |out: &mut Vec<Letter>| {
        out.push(Alpha);
        out.push(Gamma);
        out.push(Beta);
    };
    match (theta, k_cut % 3) {
        (Alpha, 0) if k_cut == 0 => {
            // alpha (gamma alpha)^{b-2} gamma beta at b = 3
            out.push(Alpha);
            push_pairs(&mut out, Gamma, Alpha, 1);
            out.push(Gamma);
            out.push(Beta);
        }
        (Alpha, 0) => {
            let k = (k_cut / 3) as i64;
            check_exponent(c - 5, "c-5")?;
            check_exponent(c - 6, "c-6")?;
            triple(&mut out);
            push_pairs(&mut out, Alpha, Beta, c - 5);
            for _ in 0..(k - 1) {
                triple(&mut out);
                push_pairs(&mut out, Alpha, Beta, c - 6);
            }
            push_pairs(&mut out, Alpha, Beta, 1);
            triple(&mut out);
        }
        (Alpha, 1) => {
            let k = ((k_cut - 1) / 3) as i64;
            check_exponent(c - 4, "c-4")?;
            if k > 0 {
                check_exponent(c - 6, "c-6")?;
            }
            triple(&mut out);
            push_pairs(&mut out, Alpha, Beta, 1);
            for _ in 0..k {
                push_pairs(&mut out, Alpha, Beta, c - 6);
                triple(&mut out);
            }
            push_pairs(&mut out, Alpha, Beta, c - 4);
            out.push(Alpha);
        }
        (Gamma, 2) => {
            let k = ((k_cut + 1) / 3) as i64;
            check_exponent(c - 4, "c-4")?;
            if k > 1 {
                check_exponent(c - 6, "c-6")?;
            }
            out.push(Gamma);
            out.push(Beta);
            push_pairs(&mut out, Alpha, Beta, c - 4);
            for _ in 0..(k - 1) {
                triple(&mut out);
                push_pairs(&mut out, Alpha, Beta, c - 6);
            }
            push_pairs(&mut out, Alpha, Beta, 1);
            triple(&mut out);
        }
        (Gamma, 0) => {
            let k = (k_cut / 3) as i64;
            check_exponent(c - 4, "c-4")?;
            if k > 0 {
                check_exponent(c - 6, "c-6")?;
            }
            out.push(Gamma);
            out.push(Beta);
            push_pairs(&mut out, Alpha, Beta, c - 4);
            for _ in 0..k {
                triple(&mut out);
                push_pairs(&mut out, Alpha, Beta, c - 6);
            }
            push_pairs(&mut out, Alpha, Beta, 2);
            out.push(Alpha);
        }
        _ => {
            return Err(Error::ForbiddenCut(format!(
                "glue({},{k_cut}) is outside the four families allowed for a = 2",
                theta.to_char()
            )))
        }
    }
    Ok(out)
}

fn check_enumerable(sig: &OrbifoldSignature, allow_elliptic: bool) -> Result<()> {
    match sig.kind() {
        SpaceForm::Hyperbolic => {}
        SpaceForm::Elliptic if allow_elliptic => {}
        kind => {
            return Err(Error::NonHyperbolic(format!(
                "{sig} is {kind}{}",
                if kind == SpaceForm::Elliptic {
                    " (pass the experimental elliptic override to explore it)"
                } else {
                    ""
                }
            )))
        }
    }
    let min = sig.a.min(sig.b).min(sig.c);
    if min == 2 && sig.a != 2 {
        return Err(Error::Domain(format!(
            "{sig} has an order-2 vertex; sort the signature so that a = 2"
        )));
    }
    if min == 2 && !sig.is_sorted() {
        return Err(Error::Domain(format!(
            "{sig} must be sorted ascending when a = 2"
        )));
    }
    Ok(())
}

/// Glue word replacing `cut(theta, k)`; shares its first and last letter
/// with the cut word, so junctions in the host word are preserved.
pub fn glue_word(
    theta: Letter,
    k: u32,
    sig: &OrbifoldSignature,
    allow_elliptic: bool,
) -> Result<Vec<Letter>> {
    check_enumerable(sig, allow_elliptic)?;
    let out = if sig.a >= 3 {
        glue_generic(theta, k, sig)?
    } else if sig.b >= 4 {
        glue_a2_b4(theta, k, sig)?
    } else {
        glue_a2_b3(theta, k, sig)?
    };
    debug_assert_eq!(out.first(), cut_word(theta, k, sig)?.first());
    debug_assert_eq!(out.last(), cut_word(theta, k, sig)?.last());
    Ok(out)
}

/// All cyclic positions of `w` hosting a cut word. The run-pattern break
/// forces `k`, so each start position carries at most one site.
pub fn find_cut_sites(w: &CyclicWord, sig: &OrbifoldSignature) -> Vec<CutSite> {
    let n = w.len();
    let mut sites = Vec::new();
    for start in 0..n {
        let theta = w.letter(start);
        if w.letter(start + 1) != theta.tau() {
            continue;
        }
        // follow the run pattern w_1 w_2 ... from position start+1
        let mut m = 1usize;
        while m < n && w.letter(start + m + 1) == w.letter(start + m).run_next() {
            m += 1;
        }
        if m < 2 {
            continue; // pattern part shorter than a cut word allows
        }
        let span = m + 2;
        if span >= n {
            continue; // a cut site never wraps the whole word
        }
        let closing = w.letter(start + m + 1);
        if closing != w.letter(start + m).tau() {
            continue; // repeated letter; not a junction
        }
        if sig.a == 2 && !allowed_for_order_two(theta, closing) {
            continue;
        }
        sites.push(CutSite {
            start,
            theta,
            k: (m - 2) as u32,
            span,
        });
    }
    sites
}

/// Replaces the cut word at `site` by the matching glue word and
/// canonicalizes; the result's generation index is `p(w) + 1`.
pub fn apply(
    w: &CyclicWord,
    site: &CutSite,
    sig: &OrbifoldSignature,
    allow_elliptic: bool,
) -> Result<CyclicWord> {
    let cut = cut_word(site.theta, site.k, sig)?;
    if site.span != cut.len() || site.span >= w.len() {
        return Err(Error::Domain(format!("invalid cut site at {}", site.start)));
    }
    for (j, &expected) in cut.iter().enumerate() {
        if w.letter(site.start + j) != expected {
            return Err(Error::Domain(format!(
                "letters at {} do not spell cut({},{})",
                site.start,
                site.theta.to_char(),
                site.k
            )));
        }
    }
    let mut next = glue_word(site.theta, site.k, sig, allow_elliptic)?;
    for j in site.span..w.len() {
        next.push(w.letter(site.start + j));
    }
    canonical(&next)
}

/// Seed words: `S^-1 = {[abc]}` and the three vertex neighborhoods
/// `S^0 = {[(bc)^a], [(ca)^b], [(ab)^c]}`.
pub fn seed_generations() -> (CyclicWord, [fn(&OrbifoldSignature) -> CyclicWord; 3]) {
    fn power(x: Letter, y: Letter, m: u32) -> CyclicWord {
        let mut letters = Vec::with_capacity(2 * m as usize);
        for _ in 0..m {
            letters.push(x);
            letters.push(y);
        }
        canonical(&letters).expect("m >= 2")
    }
    let basic = canonical(&[Letter::Alpha, Letter::Beta, Letter::Gamma]).expect("non-empty");
    (
        basic,
        [
            |sig| power(Letter::Beta, Letter::Gamma, sig.a),
            |sig| power(Letter::Gamma, Letter::Alpha, sig.b),
            |sig| power(Letter::Alpha, Letter::Beta, sig.c),
        ],
    )
}

fn expand_once(
    gen: &GenerationSet,
    sig: &OrbifoldSignature,
    allow_elliptic: bool,
    qpow_limit: Option<i64>,
) -> Result<GenerationSet> {
    let expandable: Vec<&CyclicWord> = gen
        .words
        .iter()
        .filter(|w| match qpow_limit {
            None => true,
            Some(limit) => potential::qpow_of_word(w, sig)
                .map(|q| q <= limit)
                .unwrap_or(false),
        })
        .collect();
    let children: Vec<Vec<CyclicWord>> = expandable
        .par_iter()
        .map(|w| -> Result<Vec<CyclicWord>> {
            find_cut_sites(w, sig)
                .iter()
                .map(|site| apply(w, site, sig, allow_elliptic))
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let words: BTreeSet<CyclicWord> = children.into_iter().flatten().collect();
    Ok(GenerationSet {
        p: gen.p + 1,
        words,
    })
}

/// Enumerates the generation sets `S^-1, S^0, S^1, ...` under `stop`.
///
/// Under [`StopPolicy::MaxQPower`], words whose term exceeds the q-power
/// bound are retained in their generation for reporting but are not
/// expanded, and enumeration stops once a whole generation exceeds the
/// bound.
pub fn generations(
    sig: &OrbifoldSignature,
    stop: StopPolicy,
    allow_elliptic: bool,
) -> Result<Vec<GenerationSet>> {
    check_enumerable(sig, allow_elliptic)?;
    let qpow_limit = match stop {
        StopPolicy::MaxGeneration(_) => None,
        StopPolicy::MaxQPower(n) => {
            if sig.kind() == SpaceForm::Elliptic {
                return Err(Error::Domain(
                    "q-power bounds need the area formula, which degenerates for elliptic \
                     signatures; use a generation bound instead"
                        .into(),
                ));
            }
            Some(n)
        }
    };
    let (basic, seeds) = seed_generations();
    let mut gens = vec![GenerationSet {
        p: -1,
        words: BTreeSet::from([basic]),
    }];
    let max_p = match stop {
        StopPolicy::MaxGeneration(p) => p,
        StopPolicy::MaxQPower(_) => i64::MAX,
    };
    if max_p < 0 {
        return Ok(gens);
    }
    gens.push(GenerationSet {
        p: 0,
        words: seeds.iter().map(|f| f(sig)).collect(),
    });
    while gens.last().expect("non-empty").p < max_p {
        let prev = gens.last().expect("non-empty");
        if let Some(limit) = qpow_limit {
            let all_over = prev.words.iter().all(|w| {
                potential::qpow_of_word(w, sig)
                    .map(|q| q > limit)
                    .unwrap_or(true)
            });
            if all_over {
                break;
            }
        }
        let next = expand_once(prev, sig, allow_elliptic, qpow_limit)?;
        if next.words.is_empty() {
            break;
        }
        gens.push(next);
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{corner_counts, validate_standard};
    use Letter::{Alpha, Beta, Gamma};

    fn sig(a: u32, b: u32, c: u32) -> OrbifoldSignature {
        OrbifoldSignature::new(a, b, c).unwrap()
    }

    fn w(text: &str) -> CyclicWord {
        CyclicWord::parse(text).unwrap()
    }

    fn letters(text: &str) -> Vec<Letter> {
        text.chars().map(|ch| Letter::from_char(ch).unwrap()).collect()
    }

    /// S^1 formula word: alpha (ca)^{b-2} gamma (bc)^{a-2} beta (ab)^{c-2}.
    fn s1_word(sig: &OrbifoldSignature) -> CyclicWord {
        let mut seq = vec![Alpha];
        for _ in 0..sig.b - 2 {
            seq.extend([Gamma, Alpha]);
        }
        seq.push(Gamma);
        for _ in 0..sig.a - 2 {
            seq.extend([Beta, Gamma]);
        }
        seq.push(Beta);
        for _ in 0..sig.c - 2 {
            seq.extend([Alpha, Beta]);
        }
        canonical(&seq).unwrap()
    }

    #[test]
    fn cut_word_examples() {
        let s = sig(4, 4, 4);
        assert_eq!(cut_word(Beta, 0, &s).unwrap(), letters("bcbc"));
        assert_eq!(cut_word(Beta, 1, &s).unwrap(), letters("bcbab"));
        assert_eq!(cut_word(Alpha, 0, &s).unwrap(), letters("abab"));
        assert_eq!(cut_word(Gamma, 1, &s).unwrap(), letters("cacbc"));
    }

    #[test]
    fn cut_word_order_two_families() {
        let s = sig(2, 4, 5);
        assert!(cut_word(Beta, 0, &s).is_err());
        assert!(cut_word(Alpha, 0, &s).is_ok());
        assert!(cut_word(Alpha, 1, &s).is_ok());
        assert!(cut_word(Alpha, 2, &s).is_err()); // ends with gamma
        assert!(cut_word(Gamma, 0, &s).is_ok());
        assert!(cut_word(Gamma, 1, &s).is_err());
        assert!(cut_word(Gamma, 2, &s).is_ok());
    }

    #[test]
    fn glue_word_examples_444() {
        let s = sig(4, 4, 4);
        // beta (ab)^2 alpha (ca)^2 gamma, 11 letters
        assert_eq!(glue_word(Beta, 0, &s, false).unwrap(), letters("bababacacac"));
        // beta (ab)^2 alpha (ca) gamma (bc)^2 beta, 14 letters
        assert_eq!(
            glue_word(Beta, 1, &s, false).unwrap(),
            letters("bababacacbcbcb")
        );
        // alpha (ca)^2 gamma (bc)^2 beta, 11 letters
        assert_eq!(glue_word(Alpha, 0, &s, false).unwrap(), letters("acacacbcbcb"));
    }

    #[test]
    fn glue_replaces_cut_in_seed_to_give_s1() {
        for s in [sig(4, 4, 4), sig(3, 4, 5), sig(5, 5, 5), sig(2, 4, 5), sig(2, 3, 7)] {
            let (_, seeds) = seed_generations();
            for seed in seeds.iter().map(|f| f(&s)) {
                let sites = find_cut_sites(&seed, &s);
                for site in &sites {
                    let child = apply(&seed, site, &s, false).unwrap();
                    assert_eq!(child, s1_word(&s), "{s} seed {seed}");
                }
            }
        }
    }

    #[test]
    fn six_sites_on_first_generation_444() {
        let s = sig(4, 4, 4);
        let w11 = w("(bc)b(ab)^2a(ca)^2c(bc)");
        let sites = find_cut_sites(&w11, &s);
        assert_eq!(sites.len(), 6);
        let mut kinds: Vec<(char, u32)> = sites
            .iter()
            .map(|site| (site.theta.to_char(), site.k))
            .collect();
        kinds.sort_unstable();
        assert_eq!(
            kinds,
            vec![('a', 0), ('a', 1), ('b', 0), ('b', 1), ('c', 0), ('c', 1)]
        );
    }

    #[test]
    fn no_sites_on_minimal_triangle_or_bigon() {
        assert!(find_cut_sites(&w("abc"), &sig(4, 4, 4)).is_empty());
        assert!(find_cut_sites(&w("abc"), &sig(2, 4, 5)).is_empty());
        assert!(find_cut_sites(&w("(bc)^2"), &sig(2, 4, 5)).is_empty());
    }

    #[test]
    fn four_sites_on_seed_444() {
        let s = sig(4, 4, 4);
        let sites = find_cut_sites(&w("(bc)^4"), &s);
        assert_eq!(sites.len(), 4);
        assert!(sites.iter().all(|site| site.theta == Beta && site.k == 0));
    }

    #[test]
    fn second_generation_words_444() {
        let s = sig(4, 4, 4);
        let w11 = w("(bc)b(ab)^2a(ca)^2c(bc)");
        let mut children = BTreeSet::new();
        for site in find_cut_sites(&w11, &s) {
            children.insert(apply(&w11, &site, &s, false).unwrap());
        }
        let expected: BTreeSet<CyclicWord> = [
            // c1, c3, c5 all give the same word
            "b(ab)^2a(ca)c(bc)^2b(ab)a(ca)^2c(bc)",
            // c2, c4, c6
            "(bc)ba(ca)^2c(bc)^2ba(ca)^2c(bc)",
            "(bc)b(ab)^2ac(bc)^2b(ab)^2ac(bc)",
            "(b(ab)^2a(ca)^2c)^2",
        ]
        .iter()
        .map(|t| w(t))
        .collect();
        assert_eq!(children, expected);
    }

    #[test]
    fn duplicate_sites_collapse_to_one_word() {
        let s = sig(4, 4, 4);
        let w11 = w("(bc)b(ab)^2a(ca)^2c(bc)");
        let sites = find_cut_sites(&w11, &s);
        let same: Vec<CyclicWord> = sites
            .iter()
            .filter(|site| site.k == 1)
            .map(|site| apply(&w11, site, &s, false).unwrap())
            .collect();
        assert_eq!(same.len(), 3);
        assert!(same.windows(2).all(|ab| ab[0] == ab[1]));
    }

    #[test]
    fn generations_structural() {
        let s = sig(4, 4, 4);
        let gens = generations(&s, StopPolicy::MaxGeneration(2), false).unwrap();
        assert_eq!(gens.len(), 4);
        assert_eq!(gens[0].words.len(), 1);
        assert_eq!(gens[1].words.len(), 3);
        assert_eq!(gens[2].words.len(), 1);
        assert!(gens[2].words.contains(&w("(bc)b(ab)^2a(ca)^2c(bc)")));
        assert_eq!(gens[3].words.len(), 4);
    }

    #[test]
    fn generation_zero_345() {
        let gens = generations(&sig(3, 4, 5), StopPolicy::MaxGeneration(0), false).unwrap();
        let expected: BTreeSet<CyclicWord> =
            ["(bc)^3", "(ca)^4", "(ab)^5"].iter().map(|t| w(t)).collect();
        assert_eq!(gens[1].words, expected);
    }

    #[test]
    fn s1_invariant_under_cyclic_relabel_444() {
        let w11 = w("(bc)b(ab)^2a(ca)^2c(bc)");
        let relabeled = w11.substitute(|l| l.tau());
        assert_eq!(w11, relabeled);
    }

    #[test]
    fn generated_words_validate_and_increment_p() {
        for s in [sig(3, 4, 5), sig(2, 4, 5), sig(2, 3, 7)] {
            let gens = generations(&s, StopPolicy::MaxGeneration(3), false).unwrap();
            for gen in &gens[1..] {
                assert!(!gen.words.is_empty());
                for word in &gen.words {
                    assert!(validate_standard(word, &s), "{s}: {word}");
                    assert_eq!(corner_counts(word).unwrap().p, gen.p, "{s}: {word}");
                }
            }
        }
    }

    #[test]
    fn site_count_equals_corner_count_when_orders_at_least_three() {
        for s in [sig(4, 4, 4), sig(3, 4, 5), sig(5, 5, 5)] {
            let gens = generations(&s, StopPolicy::MaxGeneration(2), false).unwrap();
            for gen in &gens[1..] {
                for word in &gen.words {
                    let d = corner_counts(word).unwrap();
                    assert_eq!(
                        find_cut_sites(word, &s).len(),
                        d.s as usize,
                        "{s}: {word}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(matches!(
            generations(&sig(2, 3, 5), StopPolicy::MaxGeneration(1), false),
            Err(Error::NonHyperbolic(_))
        ));
        assert!(matches!(
            generations(&sig(2, 4, 4), StopPolicy::MaxGeneration(1), false),
            Err(Error::NonHyperbolic(_))
        ));
        // the override admits elliptic signatures
        assert!(generations(&sig(2, 4, 4), StopPolicy::MaxGeneration(1), true).is_ok());
        // but unsorted order-2 signatures are never enumerable
        assert!(generations(&sig(4, 2, 5), StopPolicy::MaxGeneration(1), false).is_err());
    }

    #[test]
    fn qpower_stop_policy_prunes() {
        let s = sig(4, 4, 4);
        let gens = generations(&s, StopPolicy::MaxQPower(56), false).unwrap();
        let full = generations(&s, StopPolicy::MaxGeneration(3), false).unwrap();
        // every word with qpow <= 56 must be present
        for (gen, ref_gen) in gens.iter().zip(full.iter()) {
            for word in &ref_gen.words {
                if potential::qpow_of_word(word, &s).unwrap() <= 56 {
                    assert!(gen.words.contains(word), "missing {word} at p={}", gen.p);
                }
            }
        }
        // enumeration stops at the first generation lying entirely above
        let last = gens.last().unwrap();
        assert!(last
            .words
            .iter()
            .all(|w| potential::qpow_of_word(w, &s).unwrap() > 56));
    }
}
