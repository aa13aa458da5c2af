use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

use super::Orientation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerMode {
    Eulerian,
    Smooth,
}

fn check_even(g: &MultiGraph) -> Result<()> {
    match g.degrees().iter().position(|d| d % 2 == 1) {
        Some(vertex) => Err(Error::OddDegree { vertex, degree: g.degree(vertex) }),
        None => Ok(()),
    }
}

/// Splits the edges into closed trails, visiting starts and incidence lists in the given order.
/// Each trail is returned as its sequence of `(edge, tail, head)` steps.
fn closed_trails(g: &MultiGraph, starts: &[usize], adj: &[Vec<(usize, usize)>]) -> Vec<Vec<(usize, usize, usize)>> {
    let mut used = vec![false; g.m()];
    let mut next = vec![0usize; g.n()];
    let mut trails = Vec::new();
    for &s in starts {
        loop {
            let mut trail = Vec::new();
            let mut at = s;
            loop {
                while next[at] < adj[at].len() && used[adj[at][next[at]].1] {
                    next[at] += 1;
                }
                let Some(&(w, e)) = adj[at].get(next[at]) else { break };
                used[e] = true;
                trail.push((e, at, w));
                at = w;
            }
            if trail.is_empty() {
                break;
            }
            trails.push(trail);
        }
    }
    trails
}

fn orient_trails(g: &MultiGraph, trails: &[Vec<(usize, usize, usize)>], flip: &[bool]) -> Orientation {
    let mut d = Orientation::forward(g.clone());
    for (trail, &f) in trails.iter().zip(flip) {
        for &(e, t, h) in trail {
            d.arcs[e] = if f { (h, t) } else { (t, h) };
        }
    }
    d
}

/// Orients every edge along closed trails, so that `d^+(v) = d^-(v)` everywhere.
pub fn eulerian_orient(g: &MultiGraph) -> Result<Orientation> {
    check_even(g)?;
    let starts: Vec<usize> = (0..g.n()).collect();
    let trails = closed_trails(g, &starts, &g.incidence());
    Ok(orient_trails(g, &trails, &vec![false; trails.len()]))
}

/// A balanced orientation from shuffled trails with random directions.
pub fn random_eulerian_orient(g: &MultiGraph, seed: u64) -> Result<Orientation> {
    check_even(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = g.incidence();
    for list in &mut adj {
        list.shuffle(&mut rng);
    }
    let mut starts: Vec<usize> = (0..g.n()).collect();
    starts.shuffle(&mut rng);
    let trails = closed_trails(g, &starts, &adj);
    let flip: Vec<bool> = trails.iter().map(|_| rng.gen_bool(0.5)).collect();
    Ok(orient_trails(g, &trails, &flip))
}

/// An orientation with `|d^+(v) - d^-(v)| <= 1` everywhere.
///
/// When `preferred` is given and has odd degree, its surplus arc points inward, so
/// `d^+(u) = floor(d(u)/2)`.
pub fn smooth_orient(g: &MultiGraph, preferred: Option<usize>) -> Result<Orientation> {
    let n = g.n();
    if let Some(u) = preferred {
        if u >= n {
            return Err(Error::Precondition(format!("preferred vertex {u} is outside 0..{n}")));
        }
    }
    let odd: Vec<usize> = (0..n).filter(|&v| g.degree(v) % 2 == 1).collect();
    let mut edges = g.edges().to_vec();
    for pair in odd.chunks(2) {
        edges.push((pair[0], pair[1]));
    }
    let aug = MultiGraph::new(n, &edges)?;
    let starts: Vec<usize> = (0..n).collect();
    let trails = closed_trails(&aug, &starts, &aug.incidence());
    let mut flip = vec![false; trails.len()];
    if let Some(u) = preferred {
        for (i, trail) in trails.iter().enumerate() {
            if trail.iter().any(|&(e, _, h)| e >= g.m() && h == u) {
                flip[i] = true;
            }
        }
    }
    let full = orient_trails(&aug, &trails, &flip);
    let d = Orientation::new(g.clone(), full.arcs[..g.m()].to_vec())?;
    if !d.is_smooth() {
        return Err(Error::Internal("smooth orientation is unbalanced".into()));
    }
    Ok(d)
}

pub fn euler_smooth_orient(g: &MultiGraph, mode: EulerMode) -> Result<Orientation> {
    match mode {
        EulerMode::Eulerian => eulerian_orient(g),
        EulerMode::Smooth => smooth_orient(g, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use crate::oracle;

    #[test]
    fn examples() {
        let c4 = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = eulerian_orient(&c4).unwrap();
        assert_eq!(d.in_degrees(), vec![1; 4]);
        assert_eq!(d.arc_strong_connectivity().finite(), Some(1));

        let k4 = MultiGraph::complete(4);
        let d = euler_smooth_orient(&k4, EulerMode::Smooth).unwrap();
        for v in 0..4 {
            let pair = (d.out_degrees()[v], d.in_degrees()[v]);
            assert!(pair == (1, 2) || pair == (2, 1));
        }
        assert!(matches!(eulerian_orient(&k4), Err(Error::OddDegree { degree: 3, .. })));
    }

    #[test]
    fn balanced_orientations_balance_every_cut() {
        for (i, g) in oracle::random_multigraphs(80, 8, 16, 13).into_iter().enumerate() {
            let d = match smooth_orient(&g, Some(i % g.n())) {
                Ok(d) => d,
                Err(e) => panic!("{e}"),
            };
            let (ins, outs) = (d.in_degrees(), d.out_degrees());
            for v in 0..g.n() {
                if g.degree(v) % 2 == 0 {
                    assert_eq!(ins[v], outs[v]);
                }
            }
            let u = i % g.n();
            assert!(outs[u] <= g.degree(u) / 2);

            let odd = (0..g.n()).any(|v| g.degree(v) % 2 == 1);
            if odd {
                continue;
            }
            for d in [eulerian_orient(&g).unwrap(), random_eulerian_orient(&g, i as u64).unwrap()] {
                for mask in 1..1u64 << g.n() {
                    let a = VertexSet::from_mask(mask);
                    assert_eq!(2 * d.in_degree_of(a), g.boundary(a));
                }
            }
        }
    }

    #[test]
    fn random_orientations_depend_on_seed() {
        let k5 = MultiGraph::complete(5);
        let a = random_eulerian_orient(&k5, 1).unwrap();
        assert!(a.is_balanced());
        let distinct = (2..10).any(|s| random_eulerian_orient(&k5, s).unwrap() != a);
        assert!(distinct);
    }
}
