//! Formula corpora shared by unit tests.

use crate::formula::Formula;

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

#[test]
fn corpus_sizes() {
    assert_eq!(enumerate(&["p"], 0).len(), 1);
    // degree 1 over one atom: ¬p plus the three binary combinations of p with p
    assert_eq!(enumerate(&["p"], 1).len(), 5);
    assert!(enumerate(&["p", "q"], 2).iter().all(|f| f.degree() <= 2));
}
