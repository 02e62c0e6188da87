#![allow(dead_code)]

use std::collections::HashMap;

use ccgrowth::numeric::stream_rng;
use ccgrowth::presentations::Presentation;
use ccgrowth::rips::{rips_presentation, RipsMode, RipsOutput, RipsScheme};
use ccgrowth::{Letter, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const HEISENBERG: &str = "gens a b\nrel [a,[a,b]]\nrel [b,[a,b]]";

pub fn heisenberg() -> Presentation {
    Presentation::parse(HEISENBERG).unwrap()
}

pub fn rips(k: u32, mode: RipsMode) -> RipsOutput {
    rips_presentation(&heisenberg(), RipsScheme::new(k, mode).unwrap()).unwrap()
}

pub fn rng(seed: u64, stream: &str) -> ChaCha8Rng {
    stream_rng(seed, stream)
}

/// Uniform freely reduced word of exactly `len` letters over `gens`.
pub fn random_reduced(rng: &mut ChaCha8Rng, gens: &[u32], len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = Letter::new(gens[rng.gen_range(0..gens.len())], rng.gen_bool(0.5));
        if out.last().is_some_and(|p| p.inverse() == l) {
            continue;
        }
        out.push(l);
    }
    Word::from_letters(out)
}

/// Reduced word with length drawn uniformly from `lo..=hi`.
pub fn random_reduced_in(rng: &mut ChaCha8Rng, gens: &[u32], lo: usize, hi: usize) -> Word {
    let len = rng.gen_range(lo..=hi);
    random_reduced(rng, gens, len)
}

/// Every rotation of every relator and of its inverse, deduplicated.
pub fn naive_members(p: &Presentation) -> Vec<(usize, Vec<Letter>)> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (ri, r) in p.relators().iter().enumerate() {
        let fwd = r.letters().to_vec();
        let inv: Vec<Letter> = fwd.iter().rev().map(|l| l.inverse()).collect();
        for base in [fwd, inv] {
            for i in 0..base.len() {
                let mut rot = base[i..].to_vec();
                rot.extend_from_slice(&base[..i]);
                if seen.insert(rot.clone(), ()).is_none() {
                    out.push((ri, rot));
                }
            }
        }
    }
    out
}

/// Longest piece per relator by comparing every ordered pair of distinct
/// members. Quadratic in the total relator length.
pub fn naive_pieces_per_relator(p: &Presentation) -> Vec<usize> {
    let members = naive_members(p);
    let mut best = vec![0usize; p.relators().len()];
    for (i, (ri, a)) in members.iter().enumerate() {
        for (j, (_, b)) in members.iter().enumerate() {
            if i == j {
                continue;
            }
            let l = a.iter().zip(b).take_while(|(x, y)| x == y).count();
            if l > best[*ri] {
                best[*ri] = l;
            }
        }
    }
    best
}

/// Longest piece that is a prefix of each member, keyed by the member word.
pub fn naive_member_pieces(p: &Presentation) -> HashMap<Vec<Letter>, usize> {
    let members = naive_members(p);
    let mut out = HashMap::new();
    for (i, (_, a)) in members.iter().enumerate() {
        let mut best = 0;
        for (j, (_, b)) in members.iter().enumerate() {
            if i != j {
                best = best.max(a.iter().zip(b).take_while(|(x, y)| x == y).count());
            }
        }
        out.insert(a.clone(), best);
    }
    out
}

/// Random presentation over `rank` generators with cyclically reduced,
/// pairwise distinct relators; `None` when the draw is degenerate.
pub fn random_presentation(rng: &mut ChaCha8Rng, rank: u32, relators: usize, max_len: usize) -> Option<Presentation> {
    let gens: Vec<u32> = (0..rank).collect();
    let names: Vec<String> = (0..rank).map(|g| format!("g{g}")).collect();
    let alphabet = ccgrowth::Alphabet::new(&names).unwrap();
    let mut rels = Vec::new();
    for _ in 0..relators {
        let len = rng.gen_range(2..=max_len);
        rels.push(random_reduced(rng, &gens, len));
    }
    Presentation::new(alphabet, rels).ok()
}
