use orbipot::cutglue::{cut_word, generations, glue_word, StopPolicy};
use orbipot::grouporacle::{build_rep, is_trivial};
use orbipot::words::{canonical, corner_counts, CyclicWord, Letter, OrbifoldSignature};
use std::collections::BTreeSet;
use Letter::{Alpha as A, Beta as B, Gamma as C};

fn sigma(l: Letter) -> Letter { l.run_next() }

/// all standard words with given p and corner budget, trivial under oracle
fn brute(p: usize, s_max: usize, sig: &OrbifoldSignature) -> BTreeSet<CyclicWord> {
    let rep = build_rep::<f64>(sig, 1e-6).unwrap();
    let run_total = 3 * p;
    let mut found = BTreeSet::new();
    fn comps(total: usize, parts: usize) -> Vec<Vec<usize>> {
        fn rec(t: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if p == 1 { if t >= 1 { cur.push(t); out.push(cur.clone()); cur.pop(); } return; }
            for f in 1..=(t + 1 - p) { cur.push(f); rec(t - f, p - 1, cur, out); cur.pop(); }
        }
        let mut out = Vec::new();
        if parts >= 1 && total >= parts { rec(total, parts, &mut Vec::new(), &mut out); }
        out
    }
    let block_start = |t: usize| [B, C, A][t];
    for s in 1..=s_max {
        for k in 1..=s.min(run_total) {
            let e_comps = comps(s, k);
            let l_comps = comps(run_total, k);
            let mut types = vec![0usize; k];
            loop {
                for ls in &l_comps {
                    let ok = (0..k).all(|i| {
                        let xi = block_start(types[i]);
                        let xn = block_start(types[(i + 1) % k]);
                        let mut e = xi;
                        for _ in 0..((ls[i] - 1) % 3) { e = sigma(e); }
                        e == xn.tau()
                    });
                    if !ok { continue; }
                    for es in &e_comps {
                        let mut seq = Vec::new();
                        for i in 0..k {
                            let x = block_start(types[i]);
                            for _ in 0..es[i] { seq.push(x); seq.push(x.tau()); }
                            let mut cur = x;
                            for _ in 0..ls[i] { seq.push(cur); cur = sigma(cur); }
                        }
                        let w = canonical(&seq).unwrap();
                        if found.contains(&w) { continue; }
                        if let Ok(d) = corner_counts(&w) {
                            if d.p == p as i64 && d.s as usize == s && is_trivial(&w, &rep) {
                                found.insert(w);
                            }
                        }
                    }
                }
                let mut i = 0;
                while i < k { types[i] += 1; if types[i] < 3 { break; } types[i] = 0; i += 1; }
                if i == k { break; }
            }
        }
    }
    found
}

/// find all single un-glue predecessors: occurrences of glue(theta,k) replaced by cut(theta,k)
fn unglue(w: &CyclicWord, sig: &OrbifoldSignature) -> Vec<(Letter, u32, CyclicWord)> {
    let n = w.len();
    let mut out = Vec::new();
    for theta in [A, B, C] {
        for k in 0..12u32 {
            let glue = match glue_word(theta, k, sig, true) { Ok(g) => g, Err(_) => continue };
            if glue.len() >= n { continue; }
            let cut = cut_word(theta, k, sig).unwrap();
            for start in 0..n {
                if (0..glue.len()).all(|j| w.letter(start + j) == glue[j]) {
                    let mut seq = cut.clone();
                    for j in glue.len()..n {
                        seq.push(w.letter(start + j));
                    }
                    out.push((theta, k, canonical(&seq).unwrap()));
                }
            }
        }
    }
    out
}

fn main() {
    let sig = OrbifoldSignature::new(4, 4, 4).unwrap();
    let gens = generations(&sig, StopPolicy::MaxGeneration(5), false).unwrap();
    // disputed monomials: (monomial, generation, paper_coeff_magnitude_story)
    let cases: Vec<(usize, usize, (u32, u32, u32))> = vec![
        (3, 10, (2, 2, 6)),
        (3, 11, (5, 1, 5)),
        (3, 12, (4, 4, 4)),
        (4, 13, (3, 3, 7)),
        (5, 14, (2, 2, 10)),
        (5, 15, (5, 5, 5)),
    ];
    for (p, smax, m) in cases {
        let cands = brute(p, smax, &sig);
        let hits: Vec<&CyclicWord> = cands
            .iter()
            .filter(|w| {
                let d = corner_counts(w).unwrap();
                (d.x, d.y, d.z) == m
            })
            .collect();
        let mine = gens[(p + 1) as usize]
            .words
            .iter()
            .filter(|w| {
                let d = corner_counts(w).unwrap();
                (d.x, d.y, d.z) == m
            })
            .count();
        println!(
            "p={p} monomial {:?}: brute(standard&trivial)={} engine={}",
            m,
            hits.len(),
            mine
        );
        for w in &hits {
            let preds = unglue(w, &sig);
            let np = preds
                .iter()
                .filter(|(_, _, q)| gens[p].words.contains(q))
                .count();
            println!("   {w} unglue_preds_in_S{}={np}", p - 1);
        }
    }
}
