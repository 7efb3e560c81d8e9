use serde::Serialize;

use crate::caps::Caps;
use crate::error::Result;
use crate::group::{Ball, GroupElem, Letter, QuotientGroup};
use crate::symbolic::perron::CsrMatrix;

/// Finite undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, Serialize)]
pub struct Graph {
    pub adjacency: Vec<Vec<u32>>,
    /// Degree in the ambient infinite graph (`|S|` for Cayley graphs).
    pub degree_bound: usize,
}

impl Graph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(v, nb)| nb.iter().all(|&w| self.adjacency[w as usize].binary_search(&(v as u32)).is_ok()))
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.len()
    }
}

/// The Cayley graph of `G` with respect to `S = Ψ(I) ∪ Ψ(I)^-1 \ {id}` on a ball.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub ball: Ball,
    pub graph: Graph,
    /// One letter per distinct element of `S`.
    pub generators: Vec<Letter>,
}

/// Distinct non-identity generator images, each represented by its first letter.
pub fn generating_letters(group: &QuotientGroup) -> Vec<Letter> {
    let id = group.identity();
    let mut seen: Vec<GroupElem> = Vec::new();
    let mut letters = Vec::new();
    for l in Letter::alphabet(group.rank()) {
        let g = group.mul_letter(&id, l);
        if g != id && !seen.contains(&g) {
            seen.push(g);
            letters.push(l);
        }
    }
    letters
}

pub fn cayley_ball(group: &QuotientGroup, radius: usize, caps: &Caps) -> Result<CayleyBall> {
    let ball = Ball::new(group, radius, caps.ball)?;
    let generators = generating_letters(group);
    let adjacency = (0..ball.len())
        .map(|i| {
            let mut nb: Vec<u32> = generators.iter().filter_map(|&l| ball.step(i, l)).map(|j| j as u32).collect();
            nb.sort_unstable();
            nb.dedup();
            nb
        })
        .collect();
    let graph = Graph { adjacency, degree_bound: generators.len() };
    Ok(CayleyBall { ball, graph, generators })
}

/// Row-stochastic matrix of a random walk, optionally with an invariant measure.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    pub p: CsrMatrix,
    pub nu: Option<Vec<f64>>,
}

impl TransitionMatrix {
    /// Simple random walk on a Cayley ball: each generator move has probability `1 / |S|`;
    /// moves leaving the ball are dropped, so boundary rows sum to less than 1.
    pub fn simple_dirichlet(cb: &CayleyBall) -> Self {
        let n = cb.ball.len();
        let k = cb.generators.len();
        let rows = (0..n).map(|i| {
            if k == 0 {
                return vec![(i as u32, 1.0)];
            }
            let mut row: Vec<(u32, f64)> = Vec::new();
            for &l in &cb.generators {
                if let Some(j) = cb.ball.step(i, l) {
                    match row.iter_mut().find(|(c, _)| *c == j as u32) {
                        Some(e) => e.1 += 1.0 / k as f64,
                        None => row.push((j as u32, 1.0 / k as f64)),
                    }
                }
            }
            row.sort_by_key(|e| e.0);
            row
        });
        // counting measure is invariant for a symmetric generating set
        TransitionMatrix { p: CsrMatrix::from_rows(n, rows), nu: Some(vec![1.0; n]) }
    }

    /// Row sums; rows of interior vertices sum to 1.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..crate::symbolic::perron::NonnegOperator::dim(&self.p)).map(|i| self.p.row_sum(i)).collect()
    }
}

/// Vertices of the ball at distance `< radius` (all their moves stay inside).
pub fn interior(cb: &CayleyBall) -> impl Iterator<Item = usize> + '_ {
    (0..cb.ball.len()).filter(|&i| cb.ball.is_exhaustive() || cb.ball.distance(i) < cb.ball.radius())
}
