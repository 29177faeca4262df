//! Metric balls in the Cayley graph, for families with normal forms.
//!
//! Vertices are canonical normal forms; breadth-first search from the
//! identity assigns word-length distances, and the edge list holds every
//! adjacent pair inside the ball (including pairs on the outermost
//! shell), each edge recorded once in the positive generator direction.

use std::collections::BTreeMap;

use super::descriptor::GroupDescriptor;
use super::normal_form::normal_form;
use super::word::Word;
use super::GroupError;

/// A ball of given radius in the Cayley graph of a group, on its standard
/// generators.
#[derive(Clone, Debug)]
pub struct BallGraph {
    radius: u32,
    /// Canonical normal form of each vertex; vertex 0 is the identity.
    vertices: Vec<Word>,
    /// Distance from the identity, per vertex.
    dist: Vec<u32>,
    /// `(u, v, g)` with `v = normal_form(u · g)`; both endpoints in the
    /// ball. Walking `g^-1` from `v` gives `u`, so this is the full
    /// undirected adjacency.
    edges: Vec<(usize, usize, usize)>,
    index: BTreeMap<Word, usize>,
}

impl BallGraph {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn distance(&self, v: usize) -> u32 {
        self.dist[v]
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Vertex id of a canonical normal form, if inside the ball.
    pub fn index_of(&self, nf: &Word) -> Option<usize> {
        self.index.get(nf).copied()
    }

    /// Cumulative vertex counts: entry `r` is the number of vertices at
    /// distance at most `r`.
    pub fn counts_by_radius(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.radius as usize + 1];
        for &d in &self.dist {
            counts[d as usize] += 1;
        }
        for r in 1..counts.len() {
            counts[r] += counts[r - 1];
        }
        counts
    }
}

/// Compute the ball of the given radius, failing with `BallTooLarge` once
/// more than `budget` vertices appear.
pub fn ball(g: &GroupDescriptor, radius: u32, budget: usize) -> Result<BallGraph, GroupError> {
    if !g.supports_normal_forms() {
        return Err(GroupError::UnsupportedFamily(format!(
            "metric balls need a solved word problem; none for: {}",
            g.describe()
        )));
    }
    let ngens = g.ngens();
    let identity = normal_form(g, &Word::identity())?;
    let mut vertices = vec![identity.clone()];
    let mut dist = vec![0u32];
    let mut index = BTreeMap::new();
    index.insert(identity, 0usize);

    let mut frontier = vec![0usize];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &u in &frontier {
            let base = vertices[u].clone();
            for gen in 0..ngens {
                for sign in [1i64, -1] {
                    let step = Word::letter(gen, sign);
                    let nf = normal_form(g, &base.mul(&step))?;
                    if !index.contains_key(&nf) {
                        let id = vertices.len();
                        if id >= budget {
                            return Err(GroupError::BallTooLarge { budget });
                        }
                        index.insert(nf.clone(), id);
                        vertices.push(nf);
                        dist.push(d);
                        next.push(id);
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }

    let mut edges = Vec::new();
    for (u, w) in vertices.iter().enumerate() {
        for gen in 0..ngens {
            let nf = normal_form(g, &w.mul(&Word::generator(gen)))?;
            if let Some(&v) = index.get(&nf) {
                edges.push((u, v, gen));
            }
        }
    }

    Ok(BallGraph {
        radius,
        vertices,
        dist,
        edges,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite::FiniteGroupData;

    #[test]
    fn free_abelian_ball_sizes() {
        let z2 = GroupDescriptor::free_abelian(2);
        let b = ball(&z2, 3, 100_000).unwrap();
        // |B(r)| in Z^2 is 2r^2 + 2r + 1.
        assert_eq!(b.counts_by_radius(), vec![1, 5, 13, 25]);
    }

    #[test]
    fn ascending_family_ball_sizes() {
        for (n, expect) in [
            (2u64, vec![1, 5, 17, 43, 93, 191, 375]),
            (3, vec![1, 5, 17, 47, 117, 275, 621]),
            (4, vec![1, 5, 17, 53, 141, 361, 885]),
        ] {
            let g = GroupDescriptor::baumslag_solitar(n).unwrap();
            let b = ball(&g, 6, 100_000).unwrap();
            assert_eq!(b.counts_by_radius(), expect, "BS(1,{n})");
        }
    }

    #[test]
    fn multi_prime_ball_sizes() {
        let g12 = GroupDescriptor::gamma(12).unwrap();
        let b = ball(&g12, 6, 100_000).unwrap();
        assert_eq!(b.len(), 5119);
    }

    #[test]
    fn finite_group_ball_saturates() {
        let s3 = GroupDescriptor::finite(FiniteGroupData::symmetric(3).unwrap());
        let b = ball(&s3, 4, 1000).unwrap();
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn budget_is_enforced() {
        let z2 = GroupDescriptor::free_abelian(2);
        assert!(matches!(
            ball(&z2, 5, 10),
            Err(GroupError::BallTooLarge { budget: 10 })
        ));
    }

    #[test]
    fn balls_are_symmetric_and_monotone() {
        for g in [
            GroupDescriptor::baumslag_solitar(2).unwrap(),
            GroupDescriptor::gamma(12).unwrap(),
            GroupDescriptor::free_abelian(2),
        ] {
            let b4 = ball(&g, 4, 100_000).unwrap();
            let b5 = ball(&g, 5, 100_000).unwrap();
            // Monotone: every radius-4 vertex appears at the same distance
            // in the radius-5 ball.
            for (i, w) in b4.vertices().iter().enumerate() {
                let j = b5.index_of(w).expect("monotone");
                assert_eq!(b4.distance(i), b5.distance(j));
            }
            // Symmetric: inverses stay inside, at the same distance.
            for (i, w) in b4.vertices().iter().enumerate() {
                let inv = super::normal_form(&g, &w.inverse()).unwrap();
                let j = b4.index_of(&inv).expect("symmetric");
                assert_eq!(b4.distance(i), b4.distance(j));
            }
        }
    }

    #[test]
    fn edges_cover_the_outer_shell() {
        // In Z, the two radius-2 vertices a^2 and a^-2 are connected to
        // their radius-1 neighbours; and every edge closes correctly.
        let z = GroupDescriptor::free_abelian(1);
        let b = ball(&z, 2, 1000).unwrap();
        assert_eq!(b.len(), 5);
        // Edges: a^-2 - a^-1 - 1 - a - a^2: four edges.
        assert_eq!(b.edges().len(), 4);
        for &(u, v, gen) in b.edges() {
            let nf = super::normal_form(&z, &b.vertices()[u].mul(&Word::generator(gen))).unwrap();
            assert_eq!(b.index_of(&nf), Some(v));
        }
    }
}
