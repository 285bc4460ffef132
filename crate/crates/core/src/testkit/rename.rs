//! Random renamings between generated contexts.

use rand::seq::SliceRandom;
use rand::Rng;

use super::generate::gen_context;
use crate::signature::Signature;
use crate::syntax::{Context, Renaming, Syntax, Term};

/// Generates a target context Δ of length up to `max_len`, then a source Γ
/// and a renaming Γ → Δ. Each source entry picks a target variable whose
/// type only mentions variables already hit, and takes that type pulled
/// back along the map. Unused target variables give weakenings, two source
/// variables sent to one target give contractions, and out-of-order picks
/// give exchanges.
pub fn gen_renaming<R: Rng + ?Sized>(sig: &Signature, max_len: usize, rng: &mut R) -> Renaming {
    let target = gen_context(sig, rng.gen_range(0..=max_len), rng);
    let n = target.len();
    let source_len = rng.gen_range(0..=max_len);
    // Target position hit by each source position.
    let mut hits: Vec<usize> = Vec::new();
    let mut source = Context::empty();
    for q in 0..source_len {
        let candidates: Vec<usize> = (0..n)
            .filter(|&p| {
                let ty = &target.entries()[p];
                (0..p).all(|j| !ty.mentions(j) || hits.contains(&(p - 1 - j)))
            })
            .collect();
        let Some(&p) = candidates.choose(rng) else {
            break;
        };
        let ty = target.entries()[p].traverse(0, &|j, k| {
            if j < k {
                return Term::Var(j);
            }
            let tpos = p - 1 - (j - k);
            let spos = hits
                .iter()
                .rposition(|&h| h == tpos)
                .expect("only hit variables are mentioned");
            Term::Var(q - 1 - spos + k)
        });
        source.push(ty);
        hits.push(p);
    }
    let m = source.len();
    let map = (0..m).map(|i| n - 1 - hits[m - 1 - i]).collect();
    Renaming::new(source, target, map).expect("generated renaming respects types")
}
