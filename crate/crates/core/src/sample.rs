//! Seeded random posets and up-sets for sampled checks.

use rand::Rng;

use crate::bits::Bits;
use crate::poset::FinitePoset;

/// Random poset on `n` elements: each pair `i < j` (by index) is related
/// with probability `density`, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    // Relabel so that the index order is not a linear extension.
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let pairs: Vec<_> = pairs.into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
    FinitePoset::make(n, &pairs).expect("edges follow a linear order")
}

/// Up-closure of a random subset; each element is a seed with probability
/// `density`.
pub fn random_upset<R: Rng>(rng: &mut R, p: &FinitePoset, density: f64) -> Bits {
    let seeds = Bits::from_indices(p.len(), (0..p.len()).filter(|_| rng.gen_bool(density)));
    p.up_closure(&seeds)
}

/// A poset of size at most `max_n` with random density, and an up-set.
pub fn random_poset_with_upset<R: Rng>(rng: &mut R, max_n: usize) -> (FinitePoset, Bits) {
    let n = rng.gen_range(0..=max_n);
    let density = rng.gen_range(0.0..0.7);
    let p = random_poset(rng, n, density);
    let seed_density = rng.gen_range(0.0..0.5);
    let f = random_upset(rng, &p, seed_density);
    (p, f)
}
