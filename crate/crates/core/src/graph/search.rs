//! Label-setting shortest paths over the grid graph.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

pub(crate) const NO_NODE: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    cost: f64,
    node: u32,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on cost, ties broken by lowest node index
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compressed adjacency with quasihyperbolic edge weights.
#[derive(Debug, Clone, Default)]
pub(crate) struct Adjacency {
    pub offsets: Vec<usize>,
    pub targets: Vec<u32>,
    pub qh: Vec<f64>,
}

impl Adjacency {
    pub fn edges(&self, u: u32) -> std::ops::Range<usize> {
        self.offsets[u as usize]..self.offsets[u as usize + 1]
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }
}

pub(crate) struct SearchResult {
    pub dist: Vec<f64>,
    pub pred: Vec<u32>,
}

/// Multi-source search; sources carry initial costs. Stops early once every
/// node in `targets` is settled (when `targets` is non-empty).
/// `weight(edge, u, v)` gives the length of edge slot `edge` from `u` to `v`.
pub(crate) fn shortest_paths(
    adj: &Adjacency,
    sources: &[(u32, f64)],
    weight: impl Fn(usize, u32, u32) -> f64,
    targets: &[u32],
) -> SearchResult {
    let n = adj.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![NO_NODE; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &(s, c) in sources {
        if c < dist[s as usize] {
            dist[s as usize] = c;
            heap.push(Entry { cost: c, node: s });
        }
    }
    let mut is_target = Vec::new();
    let mut remaining = 0usize;
    if !targets.is_empty() {
        is_target = vec![false; n];
        for &t in targets {
            if !is_target[t as usize] {
                is_target[t as usize] = true;
                remaining += 1;
            }
        }
    }
    while let Some(Entry { cost, node }) = heap.pop() {
        let u = node as usize;
        if settled[u] {
            continue;
        }
        settled[u] = true;
        if remaining > 0 && is_target[u] {
            remaining -= 1;
            if remaining == 0 {
                break;
            }
        }
        for e in adj.edges(node) {
            let v = adj.targets[e];
            let next = cost + weight(e, node, v);
            let vi = v as usize;
            if next < dist[vi] {
                dist[vi] = next;
                pred[vi] = node;
                heap.push(Entry { cost: next, node: v });
            }
        }
    }
    SearchResult { dist, pred }
}

/// Node sequence from a search root to `v`, following predecessors.
pub(crate) fn trace(pred: &[u32], v: u32) -> Vec<u32> {
    let mut out = vec![v];
    let mut cur = v;
    while pred[cur as usize] != NO_NODE {
        cur = pred[cur as usize];
        out.push(cur);
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_graph() -> Adjacency {
        // 0 - 1 - 2 with a heavy shortcut 0 - 2
        let edges = [(0u32, 1u32, 1.0), (1, 2, 1.0), (0, 2, 5.0)];
        let mut lists = vec![Vec::new(); 3];
        for &(a, b, w) in &edges {
            lists[a as usize].push((b, w));
            lists[b as usize].push((a, w));
        }
        let mut adj = Adjacency {
            offsets: vec![0],
            ..Default::default()
        };
        for l in lists {
            for (t, w) in l {
                adj.targets.push(t);
                adj.qh.push(w);
            }
            adj.offsets.push(adj.targets.len());
        }
        adj
    }

    #[test]
    fn finds_cheapest_route() {
        let adj = line_graph();
        let r = shortest_paths(&adj, &[(0, 0.0)], |e, _, _| adj.qh[e], &[]);
        assert_eq!(r.dist, vec![0.0, 1.0, 2.0]);
        assert_eq!(trace(&r.pred, 2), vec![0, 1, 2]);
        let unit = shortest_paths(&adj, &[(0, 0.0)], |_, _, _| 1.0, &[]);
        assert_eq!(unit.dist[2], 1.0);
    }

    #[test]
    fn early_exit_settles_target() {
        let adj = line_graph();
        let r = shortest_paths(&adj, &[(0, 0.5)], |e, _, _| adj.qh[e], &[1]);
        assert_eq!(r.dist[1], 1.5);
    }
}
