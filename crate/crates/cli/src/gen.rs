use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigpack::MultiGraph;

use crate::error::{CliError, CliResult};
use crate::graphfile::GraphFile;

const REGULAR_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Circulant { n: usize, offsets: Vec<usize> },
    RandomSimple { n: usize, m: usize },
    RandomRegular { n: usize, r: usize },
    /// Every edge of `base` repeated `multiplicity` times in place.
    Doubled { base: GraphFile, multiplicity: usize },
}

fn reject<T>(msg: String) -> CliResult<T> {
    Err(CliError::Usage(msg))
}

pub fn generate(family: &Family, seed: u64) -> CliResult<GraphFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, n, edges) = match family {
        &Family::Complete { n } => {
            if n == 0 {
                return reject("complete graph needs n >= 1".into());
            }
            (format!("complete({n})"), n, MultiGraph::complete(n).edges().to_vec())
        }
        &Family::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return reject("both sides must be nonempty".into());
            }
            let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
            (format!("complete_bipartite({a},{b})"), a + b, edges)
        }
        Family::Circulant { n, offsets } => {
            let n = *n;
            let mut offs = offsets.clone();
            offs.sort_unstable();
            offs.dedup();
            if let Some(&j) = offs.iter().find(|&&j| j == 0 || j > n / 2) {
                return reject(format!("circulant offset {j} must lie in 1..={}", n / 2));
            }
            let mut edges = Vec::new();
            for &j in &offs {
                let count = if 2 * j == n { j } else { n };
                edges.extend((0..count).map(|v| (v, (v + j) % n)));
            }
            let list: Vec<String> = offs.iter().map(|j| j.to_string()).collect();
            (format!("circulant({n};{})", list.join(",")), n, edges)
        }
        &Family::RandomSimple { n, m } => {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            if n == 0 || m > pairs.len() {
                return reject(format!("a simple graph on {n} vertices has at most {} edges", pairs.len()));
            }
            let mut chosen = index::sample(&mut rng, pairs.len(), m).into_vec();
            chosen.sort_unstable();
            (format!("random_simple({n},{m};seed {seed})"), n, chosen.into_iter().map(|i| pairs[i]).collect())
        }
        &Family::RandomRegular { n, r } => {
            if r >= n || (n * r) % 2 == 1 {
                return reject(format!("no simple {r}-regular graph on {n} vertices"));
            }
            (format!("random_regular({n},{r};seed {seed})"), n, random_regular(n, r, &mut rng)?)
        }
        Family::Doubled { base, multiplicity } => {
            if *multiplicity == 0 {
                return reject("multiplicity must be positive".into());
            }
            let edges = base.edges.iter().flat_map(|&[u, v]| std::iter::repeat_n((u, v), *multiplicity)).collect();
            (format!("{}x{multiplicity}", base.name), base.n, edges)
        }
    };
    let g = MultiGraph::new(n, &edges)?;
    let mut file = GraphFile::from_graph(name, &g);
    if let Family::Doubled { base, .. } = family {
        file.names = base.names.clone();
    }
    Ok(file)
}

/// Configuration model with restarts until the pairing is simple.
fn random_regular(n: usize, r: usize, rng: &mut ChaCha8Rng) -> CliResult<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    'attempt: for _ in 0..REGULAR_ATTEMPTS {
        points.shuffle(rng);
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        return Ok(edges);
    }
    Err(CliError::Usage(format!("no simple pairing found after {REGULAR_ATTEMPTS} attempts")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_families() {
        let k4 = generate(&Family::Complete { n: 4 }, 0).unwrap();
        assert_eq!(k4.edges.len(), 6);
        let c8 = generate(&Family::Circulant { n: 8, offsets: vec![1, 2] }, 0).unwrap().graph().unwrap();
        assert_eq!(c8.m(), 16);
        assert!(c8.degrees().iter().all(|&d| d == 4));
        assert!(c8.is_simple());
        let c4 = generate(&Family::Circulant { n: 4, offsets: vec![1, 2] }, 0).unwrap().graph().unwrap();
        assert!(c4.m() == 6 && c4.is_simple());
        let k33 = generate(&Family::CompleteBipartite { a: 3, b: 3 }, 0).unwrap();
        assert_eq!(k33.edges.len(), 9);
    }

    #[test]
    fn random_families_are_seeded() {
        let fam = Family::RandomRegular { n: 10, r: 4 };
        let a = generate(&fam, 7).unwrap();
        assert_eq!(a.canonical(), generate(&fam, 7).unwrap().canonical());
        let g = a.graph().unwrap();
        assert!(g.is_simple() && g.degrees().iter().all(|&d| d == 4));
        let s = generate(&Family::RandomSimple { n: 6, m: 9 }, 3).unwrap().graph().unwrap();
        assert!(s.is_simple() && s.m() == 9);
        assert!(generate(&Family::RandomRegular { n: 5, r: 3 }, 0).is_err());
        assert!(generate(&Family::RandomRegular { n: 4, r: 4 }, 0).is_err());
        assert!(generate(&Family::RandomSimple { n: 4, m: 7 }, 0).is_err());
    }

    #[test]
    fn doubling_repeats_edges() {
        let base = generate(&Family::Complete { n: 3 }, 0).unwrap();
        let d = generate(&Family::Doubled { base, multiplicity: 2 }, 0).unwrap();
        assert_eq!(d.edges, vec![[0, 1], [0, 1], [0, 2], [0, 2], [1, 2], [1, 2]]);
    }
}
