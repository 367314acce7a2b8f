use std::collections::VecDeque;

use super::{Result, StableError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerEdge {
    /// Label of the simple module the edge stands for.
    pub label: String,
    pub ends: (usize, usize),
}

/// Brauer tree of a block with cyclic defect, vertices numbered from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerTree {
    pub vertices: usize,
    pub exceptional: usize,
    pub edges: Vec<BrauerEdge>,
}

impl BrauerTree {
    pub fn new(vertices: usize, exceptional: usize, edges: Vec<BrauerEdge>) -> Result<BrauerTree> {
        let t = BrauerTree { vertices, exceptional, edges };
        t.validate()?;
        Ok(t)
    }

    /// A path whose last vertex is exceptional: labels[0] is the edge farthest from it.
    pub fn path(labels: &[&str]) -> Result<BrauerTree> {
        let edges =
            labels.iter().enumerate().map(|(i, l)| BrauerEdge { label: l.to_string(), ends: (i, i + 1) }).collect();
        BrauerTree::new(labels.len() + 1, labels.len(), edges)
    }

    fn validate(&self) -> Result<()> {
        if self.exceptional >= self.vertices {
            return Err(StableError::Tree(format!("exceptional vertex {} out of range", self.exceptional)));
        }
        if self.edges.len() + 1 != self.vertices {
            return Err(StableError::Tree(format!("{} edges on {} vertices", self.edges.len(), self.vertices)));
        }
        if let Some(e) = self.edges.iter().find(|e| e.ends.0 >= self.vertices || e.ends.1 >= self.vertices) {
            return Err(StableError::Tree(format!("edge {} leaves the vertex range", e.label)));
        }
        if self.vertex_distances().iter().any(|d| d.is_none()) {
            return Err(StableError::Tree("not connected".into()));
        }
        Ok(())
    }

    fn vertex_distances(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices];
        dist[self.exceptional] = Some(0);
        let mut queue = VecDeque::from([self.exceptional]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for e in &self.edges {
                let w = match e.ends {
                    (a, b) if a == v => b,
                    (a, b) if b == v => a,
                    _ => continue,
                };
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distance of each edge from the exceptional vertex: 0 for edges incident to it.
    pub fn edge_distances(&self) -> Vec<usize> {
        let dist = self.vertex_distances();
        self.edges.iter().map(|e| dist[e.ends.0].unwrap().min(dist[e.ends.1].unwrap())).collect()
    }

    /// Labels of the edges whose distance has the parity opposite to the trivial edge.
    pub fn e_set(&self, trivial: &str) -> Result<Vec<String>> {
        let dists = self.edge_distances();
        let d = self
            .edges
            .iter()
            .position(|e| e.label == trivial)
            .map(|i| dists[i])
            .ok_or_else(|| StableError::Tree(format!("no edge labelled {trivial}")))?;
        Ok(self.edges.iter().zip(&dists).filter(|(_, &x)| x % 2 != d % 2).map(|(e, _)| e.label.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_mod_5_path() {
        let t = BrauerTree::path(&["1_1", "3_1"]).unwrap();
        assert_eq!(t.edge_distances(), vec![1, 0]);
        assert_eq!(t.e_set("1_1").unwrap(), vec!["3_1".to_string()]);
    }

    #[test]
    fn single_edge_gives_empty_set() {
        let t = BrauerTree::path(&["1_1"]).unwrap();
        assert!(t.e_set("1_1").unwrap().is_empty());
    }

    #[test]
    fn star_with_exceptional_leaf() {
        // exceptional vertex 0 hangs off the centre 1, which carries three more edges
        let e = |l: &str, a, b| BrauerEdge { label: l.into(), ends: (a, b) };
        let t = BrauerTree::new(5, 0, vec![e("x", 0, 1), e("1", 1, 2), e("y", 1, 3), e("z", 1, 4)]).unwrap();
        assert_eq!(t.e_set("1").unwrap(), vec!["x".to_string()]);
    }

    #[test]
    fn rejects_cycles_and_strays() {
        let e = |l: &str, a, b| BrauerEdge { label: l.into(), ends: (a, b) };
        assert!(BrauerTree::new(3, 0, vec![e("a", 0, 1), e("b", 1, 0)]).is_err());
        assert!(BrauerTree::new(2, 2, vec![e("a", 0, 1)]).is_err());
        assert!(BrauerTree::path(&["1"]).unwrap().e_set("2").is_err());
    }
}
