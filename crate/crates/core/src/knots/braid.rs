//! Closed braids to Wirtinger presentations.

use super::{KnotError, KnotPresentation, PresentationSource, UnionFind, Word};

/// Number of cycles of the braid permutation.
pub(crate) fn braid_components(word: &[i32], strands: usize) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &s in word {
        let i = s.unsigned_abs() as usize;
        perm.swap(i - 1, i);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for start in 0..strands {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = perm[c];
        }
    }
    cycles
}

/// Wirtinger presentation of the closure of a braid word.
///
/// `±i` stands for `σ_i^{±1}`. At `σ_i` the strand entering at position `i`
/// passes over; at `σ_i^{-1}` the strand entering at position `i + 1` does.
/// The under strand starts a new arc `x_new = x_over^e x_old x_over^{-e}`.
pub fn braid_presentation(word: &[i32]) -> Result<KnotPresentation, KnotError> {
    if word.iter().any(|&s| s == 0) {
        return Err(KnotError::Parse {
            pos: 0,
            msg: "braid generator index 0".into(),
        });
    }
    let strands = word.iter().map(|s| s.unsigned_abs() as usize).max().unwrap_or(0) + 1;
    let comps = braid_components(word, strands);
    if comps != 1 {
        return Err(KnotError::Link(comps));
    }

    let mut at: Vec<usize> = (0..strands).collect();
    let mut arcs = strands;
    // (over, old, new, sign)
    let mut crossings = Vec::with_capacity(word.len());
    for &s in word {
        let i = s.unsigned_abs() as usize;
        let (p, q) = (i - 1, i);
        let e: i8 = if s > 0 { 1 } else { -1 };
        let (over, under) = if e > 0 { (at[p], at[q]) } else { (at[q], at[p]) };
        let new = arcs;
        arcs += 1;
        crossings.push((over, under, new, e));
        if e > 0 {
            at[q] = over;
            at[p] = new;
        } else {
            at[p] = over;
            at[q] = new;
        }
    }

    let mut uf = UnionFind::new(arcs);
    for (pos, &arc) in at.iter().enumerate() {
        uf.union(arc, pos);
    }
    let mut class_of = vec![usize::MAX; arcs];
    let mut count = 0;
    for a in 0..arcs {
        let r = uf.find(a);
        if class_of[r] == usize::MAX {
            class_of[r] = count;
            count += 1;
        }
        class_of[a] = class_of[r];
    }

    let mut relators: Vec<Word> = crossings
        .iter()
        .map(|&(over, old, new, e)| {
            let (o, u, n) = (class_of[over], class_of[old], class_of[new]);
            Word::new([(o, e), (u, 1), (o, -e), (n, -1)])
        })
        .collect();
    relators.pop();

    let names = (0..count).map(|k| format!("x{}", k + 1)).collect();
    KnotPresentation::new(names, relators, vec![1; count], 0, PresentationSource::Wirtinger)
}
