//! Planar diagram codes to Wirtinger presentations.

use std::collections::BTreeMap;

use super::{KnotError, KnotPresentation, PresentationSource, UnionFind, Word};

/// Wirtinger presentation from a PD code.
///
/// Each `[a, b, c, d]` lists edge labels counterclockwise from the incoming
/// under edge `a`; `c` is the outgoing under edge and `b`, `d` lie on the
/// over arc. The crossing sign is `+1` when the over strand runs `b → d`.
pub fn pd_presentation(pd: &[[i64; 4]]) -> Result<KnotPresentation, KnotError> {
    if pd.is_empty() {
        return KnotPresentation::new(vec!["x1".into()], vec![], vec![1], 0, PresentationSource::Wirtinger);
    }
    let mut count: BTreeMap<i64, usize> = BTreeMap::new();
    for x in pd {
        for &l in x {
            *count.entry(l).or_default() += 1;
        }
    }
    let n = count.len();
    if n != 2 * pd.len() {
        return Err(KnotError::InconsistentPd(format!(
            "{} distinct labels for {} crossings",
            n,
            pd.len()
        )));
    }
    if let Some((l, c)) = count.iter().find(|(_, &c)| c != 2) {
        return Err(KnotError::InconsistentPd(format!("label {l} appears {c} times")));
    }
    let labels: Vec<i64> = count.keys().copied().collect();
    let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let next = |l: usize| (l + 1) % n;

    let mut succ = vec![usize::MAX; n];
    let mut signs = Vec::with_capacity(pd.len());
    for x in pd {
        let [a, b, c, d] = x.map(|l| index[&l]);
        succ[a] = c;
        let s = if d == next(b) {
            succ[b] = d;
            1i8
        } else if b == next(d) {
            succ[d] = b;
            -1
        } else {
            return Err(KnotError::InconsistentPd(format!(
                "over edges {} and {} are not consecutive",
                x[1], x[3]
            )));
        };
        signs.push(s);
    }
    if succ.iter().any(|&s| s == usize::MAX) {
        return Err(KnotError::InconsistentPd("an edge has no successor".into()));
    }
    let mut seen = vec![false; n];
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            e = succ[e];
        }
    }
    if components != 1 {
        return Err(KnotError::Link(components));
    }
    for x in pd {
        let (a, c) = (index[&x[0]], index[&x[2]]);
        if c != next(a) {
            return Err(KnotError::InconsistentPd(format!(
                "under edges {} and {} are not consecutive",
                x[0], x[2]
            )));
        }
    }

    // Over edges b and d lie on one arc; under edges break arcs.
    let mut uf = UnionFind::new(n);
    for x in pd {
        uf.union(index[&x[1]], index[&x[3]]);
    }
    let arc_of: Vec<usize> = (0..n).map(|e| uf.find(e)).collect();
    let mut class: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in &arc_of {
        let k = class.len();
        class.entry(r).or_insert(k);
    }
    let gen = |e: usize| class[&arc_of[e]];

    let mut relators: Vec<Word> = pd
        .iter()
        .zip(&signs)
        .map(|(x, &s)| {
            let [a, b, c, _] = x.map(|l| index[&l]);
            Word::new([(gen(b), s), (gen(a), 1), (gen(b), -s), (gen(c), -1)])
        })
        .collect();
    relators.pop();

    let g = class.len();
    let names = (0..g).map(|k| format!("x{}", k + 1)).collect();
    KnotPresentation::new(names, relators, vec![1; g], 0, PresentationSource::Wirtinger)
}
