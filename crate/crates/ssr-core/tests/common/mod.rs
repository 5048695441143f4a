#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssr_core::gadgets::{reduce, GadgetVariant, Reduction};
use ssr_core::hybrid::{build_hybrid, random_e3, template_triple, BuildOptions, HybridInstance, MatchingStrategy};
use ssr_core::superstring::{AuxTag, GString, StringSet, Symbol};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn triple() -> HybridInstance {
    build_hybrid(&template_triple(), BuildOptions::default()).unwrap()
}

/// Random 3-occurrence instance over 3, 6 or 9 variables.
pub fn random_hybrid(seed: u64) -> HybridInstance {
    let mut r = rng(seed);
    let nvars = 3 * (1 + (seed as usize) % 3);
    let strategy = if seed.is_multiple_of(2) {
        MatchingStrategy::Adjacent
    } else {
        MatchingStrategy::Shifted
    };
    build_hybrid(
        &random_e3(nvars, &mut r),
        BuildOptions {
            strategy,
            any_occurrence_count: false,
        },
    )
    .unwrap()
}

pub fn reduced(h: &HybridInstance, variant: GadgetVariant) -> Reduction {
    reduce(h, variant).unwrap()
}

pub fn letters(codes: &[u32]) -> GString {
    GString::new(codes.iter().map(|&c| Symbol::aux(c, AuxTag::C)).collect()).unwrap()
}

pub fn set(strings: &[&[u32]]) -> StringSet {
    StringSet::new(strings.iter().map(|s| letters(s)).collect()).unwrap()
}

/// Random substring-free set of at most `max_strings` strings over `alphabet` letters, lengths 1..=5.
pub fn random_set<R: rand::Rng>(r: &mut R, max_strings: usize, alphabet: u32) -> StringSet {
    let target = r.gen_range(1..=max_strings);
    let mut words: Vec<Vec<u32>> = Vec::new();
    let mut attempts = 0;
    while words.len() < target && attempts < 200 {
        attempts += 1;
        let len = r.gen_range(1..=5);
        let w: Vec<u32> = (0..len).map(|_| r.gen_range(0..alphabet)).collect();
        let inside = |a: &[u32], b: &[u32]| b.len() >= a.len() && b.windows(a.len()).any(|x| x == a);
        if words.iter().all(|o| !inside(&w, o) && !inside(o, &w)) {
            words.push(w);
        }
    }
    set(&words.iter().map(|w| w.as_slice()).collect::<Vec<_>>())
}
