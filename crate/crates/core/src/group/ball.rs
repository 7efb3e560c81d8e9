use std::collections::HashMap;

use super::{GroupElem, Letter, QuotientGroup};
use crate::error::{Error, Result};

/// Marker in the neighbor table for a product that leaves the ball.
pub const OUTSIDE: u32 = u32::MAX;

/// Word-metric ball around the identity with dense indices in BFS order.
///
/// Neighbors are visited in letter index order, so indices are reproducible.
/// The identity has index 0.
#[derive(Clone, Debug)]
pub struct Ball {
    rank: usize,
    radius: usize,
    elements: Vec<GroupElem>,
    index: HashMap<GroupElem, u32>,
    dist: Vec<u32>,
    /// `neighbors[i * 2d + letter]` is the index of `elements[i] * Ψ(letter)`, or [`OUTSIDE`].
    neighbors: Vec<u32>,
    inverse: Vec<u32>,
    /// Largest radius requested; differs from `radius` when a cap cut the ball short.
    requested: usize,
}

impl Ball {
    /// The ball of radius `radius`; errors if it has more than `cap` elements.
    pub fn new(group: &QuotientGroup, radius: usize, cap: usize) -> Result<Self> {
        let ball = Self::build(group, radius, cap)?;
        if ball.radius < radius && !ball.is_exhaustive() {
            return Err(Error::CapExceeded { what: "group ball", cap });
        }
        Ok(ball)
    }

    /// The largest complete ball of radius at most `radius` with at most `cap` elements.
    pub fn within_cap(group: &QuotientGroup, radius: usize, cap: usize) -> Result<Self> {
        Self::build(group, radius, cap)
    }

    fn build(group: &QuotientGroup, radius: usize, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::CapExceeded { what: "group ball", cap });
        }
        let rank = group.rank();
        let id = group.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut dist = vec![0u32];
        let mut layer_start = 0;
        let mut reached = 0;
        while reached < radius {
            let layer_end = elements.len();
            let mut fresh = Vec::new();
            for g in &elements[layer_start..layer_end] {
                for l in Letter::alphabet(rank) {
                    let h = group.mul_letter(g, l);
                    if !index.contains_key(&h) {
                        index.insert(h.clone(), (layer_end + fresh.len()) as u32);
                        fresh.push(h);
                    }
                }
            }
            if fresh.is_empty() {
                // finite group exhausted: every larger radius gives the same ball
                reached = radius;
                break;
            }
            if layer_end + fresh.len() > cap {
                for h in &fresh {
                    index.remove(h);
                }
                break;
            }
            reached += 1;
            dist.extend(std::iter::repeat_n(reached as u32, fresh.len()));
            elements.extend(fresh);
            layer_start = layer_end;
        }

        let letters = 2 * rank;
        let mut neighbors = vec![OUTSIDE; elements.len() * letters];
        let mut inverse = vec![OUTSIDE; elements.len()];
        for (i, g) in elements.iter().enumerate() {
            for l in Letter::alphabet(rank) {
                if let Some(&j) = index.get(&group.mul_letter(g, l)) {
                    neighbors[i * letters + l.index()] = j;
                }
            }
            inverse[i] = index[&group.inverse(g)];
        }
        Ok(Ball { rank, radius: reached, elements, index, dist, neighbors, inverse, requested: radius })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Radius actually materialized.
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn requested_radius(&self) -> usize {
        self.requested
    }

    /// True when the ball already contains the whole (finite) group.
    pub fn is_exhaustive(&self) -> bool {
        self.neighbors.iter().all(|&n| n != OUTSIDE)
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElem {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElem) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn distance(&self, i: usize) -> usize {
        self.dist[i] as usize
    }

    /// Index of `elements[i] * Ψ(l)` if it lies in the ball.
    #[inline]
    pub fn step(&self, i: usize, l: Letter) -> Option<usize> {
        let j = self.neighbors[i * 2 * self.rank + l.index()];
        (j != OUTSIDE).then_some(j as usize)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    /// Number of elements at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &d in &self.dist {
            sizes[d as usize] += 1;
        }
        sizes
    }
}
