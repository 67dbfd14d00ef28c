//! Formula corpora: exhaustive enumeration and seeded random generation.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tableaux_core::Formula;

/// Every formula over `atoms` with at most `degree` connectives.
pub fn enumerate(atoms: &[&str], degree: usize) -> Vec<Formula> {
    let mut by_degree: Vec<Vec<Formula>> = vec![atoms.iter().map(|a| Formula::atom(*a)).collect()];
    for d in 1..=degree {
        let mut level: Vec<Formula> = by_degree[d - 1].iter().cloned().map(Formula::not).collect();
        for i in 0..d {
            for l in &by_degree[i] {
                for r in &by_degree[d - 1 - i] {
                    level.push(Formula::and(l.clone(), r.clone()));
                    level.push(Formula::or(l.clone(), r.clone()));
                    level.push(Formula::implies(l.clone(), r.clone()));
                }
            }
        }
        by_degree.push(level);
    }
    by_degree.into_iter().flatten().collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree with `binary` binary connectives and `negations` negations,
/// taking leaf atoms from `leaves` in order.
fn shape<R: Rng>(
    rng: &mut R,
    binary: usize,
    negations: usize,
    leaves: &mut impl Iterator<Item = String>,
) -> Formula {
    if binary == 0 && negations == 0 {
        return Formula::atom(leaves.next().expect("one leaf per binary node plus one"));
    }
    if rng.random_range(0..binary + negations) < negations {
        return Formula::not(shape(rng, binary, negations - 1, leaves));
    }
    let left_binary = rng.random_range(0..binary);
    let left_neg = rng.random_range(0..=negations);
    let l = shape(rng, left_binary, left_neg, leaves);
    let r = shape(rng, binary - 1 - left_binary, negations - left_neg, leaves);
    match rng.random_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::implies(l, r),
    }
}

/// Random formula over `atoms` with degree drawn uniformly from `0..=max_degree`.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], max_degree: usize) -> Formula {
    let degree = rng.random_range(0..=max_degree);
    let binary = rng.random_range(0..=degree);
    let mut leaves = (0..=binary)
        .map(|_| atoms[rng.random_range(0..atoms.len())].to_string())
        .collect::<Vec<_>>()
        .into_iter();
    shape(rng, binary, degree - binary, &mut leaves)
}

/// Random formula mentioning every atom in `atoms`, with degree at most
/// `max_degree` (which must leave room for `atoms.len() - 1` binary nodes).
pub fn random_covering_formula<R: Rng>(rng: &mut R, atoms: &[&str], max_degree: usize) -> Formula {
    let min_binary = atoms.len() - 1;
    assert!(max_degree >= min_binary);
    let binary = rng.random_range(min_binary..=max_degree);
    let degree = rng.random_range(binary..=max_degree);
    let mut names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    while names.len() < binary + 1 {
        names.push(atoms[rng.random_range(0..atoms.len())].to_string());
    }
    names.shuffle(rng);
    shape(rng, binary, degree - binary, &mut names.into_iter())
}

pub fn random_corpus(seed: u64, atoms: &[&str], max_degree: usize, count: usize) -> Vec<Formula> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_formula(&mut rng, atoms, max_degree))
        .collect()
}
