//! Weighted grid discretization of the quasihyperbolic density `1/δ`.
//!
//! Nodes are leaf-cell centers of a quadtree refined near the boundary. Edges
//! join side and corner neighbors (including across refinement levels) whose
//! connecting segment stays clear of the boundary, weighted by the trapezoid
//! rule `|u - v| (1/δ(u) + 1/δ(v)) / 2`.

mod index;
mod search;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, DomainSpec};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::path::{trapezoid_weight, PathPolyline};
use index::NodeIndex;
use search::{shortest_paths, trace, Adjacency, NO_NODE};

/// Cells are split while `δ(center) < REFINE_FACTOR * cell`.
pub const REFINE_FACTOR: f64 = 8.0;
const MAX_LAYERS: u32 = 24;
const NO_CELL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    /// Base cell size.
    pub h: f64,
    /// Levels of halving near the boundary.
    pub boundary_layer: u32,
    /// Include corner neighbors.
    pub diag: bool,
}

impl GridParams {
    pub fn new(h: f64, boundary_layer: u32) -> Self {
        GridParams {
            h,
            boundary_layer,
            diag: true,
        }
    }

    pub fn four_neighbor(mut self) -> Self {
        self.diag = false;
        self
    }

    pub fn finest_cell(&self) -> f64 {
        self.h / 2f64.powi(self.boundary_layer as i32)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(Error::Argument(format!("grid size h must be positive (got {})", self.h)));
        }
        if self.boundary_layer > MAX_LAYERS {
            return Err(Error::Argument(format!(
                "at most {MAX_LAYERS} boundary layers are supported (got {})",
                self.boundary_layer
            )));
        }
        Ok(())
    }
}

/// A graph vertex: the center of an admitted leaf cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub point: Point2,
    pub delta: f64,
    pub cell: f64,
    pub level: u8,
}

#[derive(Clone, Copy)]
struct Cell {
    i: i64,
    j: i64,
    level: u8,
    first_child: u32,
    node: u32,
}

/// Connection from a free query point to the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stub {
    pub point: Point2,
    pub delta: f64,
    pub node: u32,
    pub qh: f64,
    pub euclidean: f64,
}

/// Which edge length a search uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Quasihyperbolic,
    Euclidean,
}

#[derive(Debug, Clone)]
pub struct GridGraph {
    domain: Arc<Domain>,
    params: GridParams,
    nodes: Vec<Node>,
    adjacency: Adjacency,
    component: Vec<u32>,
    component_count: usize,
    index: NodeIndex,
    warnings: Vec<String>,
}

/// Builds the refined grid graph of `domain`.
pub fn build_grid(domain: &Domain, params: GridParams) -> Result<GridGraph> {
    GridGraph::build(Arc::new(domain.clone()), params)
}

impl GridGraph {
    pub fn build(domain: Arc<Domain>, params: GridParams) -> Result<GridGraph> {
        params.validate()?;
        let bb = domain.bounding_box();
        let h = params.h;
        let nx = ((bb.width() / h).ceil() as i64).max(1);
        let ny = ((bb.height() / h).ceil() as i64).max(1);
        if (nx as f64) * (ny as f64) > 4.0e8 {
            return Err(Error::Resolution(format!("base grid of {nx} x {ny} cells is too large")));
        }
        let origin = bb.min;
        let center_of = |level: u8, i: i64, j: i64| {
            let s = h / (1u64 << level) as f64;
            origin + Point2::new((i as f64 + 0.5) * s, (j as f64 + 0.5) * s)
        };

        // breadth-first refinement; roots occupy the first nx*ny slots
        let mut cells: Vec<Cell> = Vec::with_capacity((nx * ny) as usize);
        for j in 0..ny {
            for i in 0..nx {
                cells.push(Cell {
                    i,
                    j,
                    level: 0,
                    first_child: NO_CELL,
                    node: NO_NODE,
                });
            }
        }
        let mut nodes = Vec::new();
        let mut leaf_cells: Vec<u32> = Vec::new();
        let mut k = 0usize;
        while k < cells.len() {
            let Cell { i, j, level, .. } = cells[k];
            let s = h / (1u64 << level) as f64;
            let c = center_of(level, i, j);
            let delta = domain.distance_to_boundary(c);
            let inside = domain.contains(c);
            let wholly_outside = !inside && delta > s * std::f64::consts::FRAC_1_SQRT_2;
            if (level as u32) < params.boundary_layer && delta < REFINE_FACTOR * s && !wholly_outside {
                let first = cells.len() as u32;
                cells[k].first_child = first;
                for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    cells.push(Cell {
                        i: 2 * i + dx,
                        j: 2 * j + dy,
                        level: level + 1,
                        first_child: NO_CELL,
                        node: NO_NODE,
                    });
                }
            } else if inside && delta > 0.5 * s {
                cells[k].node = nodes.len() as u32;
                nodes.push(Node {
                    point: c,
                    delta,
                    cell: s,
                    level,
                });
                leaf_cells.push(k as u32);
            }
            k += 1;
        }
        if nodes.is_empty() {
            return Err(Error::Resolution(format!(
                "no grid node is admitted at h = {h} with {} boundary layers; decrease h",
                params.boundary_layer
            )));
        }
        if nodes.len() >= NO_NODE as usize {
            return Err(Error::Resolution("too many grid nodes".into()));
        }

        // leaf containing the level-`level` cell (i, j), or None when that
        // cell is outside the grid or is refined further
        let locate = |level: u8, i: i64, j: i64| -> Option<&Cell> {
            if i < 0 || j < 0 {
                return None;
            }
            let (bi, bj) = (i >> level, j >> level);
            if bi >= nx || bj >= ny {
                return None;
            }
            let mut c = &cells[(bj * nx + bi) as usize];
            for d in 1..=level {
                if c.first_child == NO_CELL {
                    return Some(c);
                }
                let bit = level - d;
                let child = (((j >> bit) & 1) * 2 + ((i >> bit) & 1)) as u32;
                c = &cells[(c.first_child + child) as usize];
            }
            (c.first_child == NO_CELL).then_some(c)
        };

        let dirs: &[(i64, i64)] = if params.diag {
            &[(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
        } else {
            &[(1, 0), (-1, 0), (0, 1), (0, -1)]
        };
        let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(nodes.len() * dirs.len() / 2);
        for &ck in &leaf_cells {
            let cell = cells[ck as usize];
            for &(di, dj) in dirs {
                let Some(nb) = locate(cell.level, cell.i + di, cell.j + dj) else {
                    continue;
                };
                if nb.node == NO_NODE || nb.node == cell.node {
                    continue;
                }
                let (a, b) = (cell.node.min(nb.node), cell.node.max(nb.node));
                pairs.push((a, b));
            }
        }
        drop(cells);
        drop(leaf_cells);
        pairs.sort_unstable();
        pairs.dedup();
        pairs.retain(|&(a, b)| {
            let (na, nb) = (&nodes[a as usize], &nodes[b as usize]);
            // the open ball B(u, δ(u)) lies in the domain, so short edges need no test
            na.point.dist(nb.point) < na.delta.max(nb.delta) || domain.segment_is_clear(na.point, nb.point)
        });

        let n = nodes.len();
        let mut degree = vec![0usize; n + 1];
        for &(a, b) in &pairs {
            degree[a as usize + 1] += 1;
            degree[b as usize + 1] += 1;
        }
        for u in 0..n {
            degree[u + 1] += degree[u];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        for &(a, b) in &pairs {
            targets[fill[a as usize]] = b;
            fill[a as usize] += 1;
            targets[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        drop(pairs);
        for u in 0..n {
            targets[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        let qh = (0..n)
            .flat_map(|u| (offsets[u]..offsets[u + 1]).map(move |e| (u, e)))
            .map(|(u, e)| {
                let (a, b) = (&nodes[u], &nodes[targets[e] as usize]);
                trapezoid_weight(a.point, a.delta, b.point, b.delta)
            })
            .collect();
        let adjacency = Adjacency { offsets, targets, qh };

        let (component, component_count) = label_components(&adjacency);
        let points: Vec<Point2> = nodes.iter().map(|nd| nd.point).collect();
        let index = NodeIndex::new(bb, h, points);
        let mut graph = GridGraph {
            domain,
            params,
            nodes,
            adjacency,
            component,
            component_count,
            index,
            warnings: Vec::new(),
        };
        graph.warnings = graph.collect_warnings();
        Ok(graph)
    }

    fn collect_warnings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.domain.warnings().to_vec();
        let finest = self.params.finest_cell();
        if let (DomainSpec::FootFingers(_), Some(layout)) = (self.domain.spec(), self.domain.foot_layout()) {
            for f in &layout.fingers {
                if f.width < 4.0 * finest {
                    out.push(format!(
                        "corridor {} has width {:.3e} < 4 finest cells ({:.3e}); refine the grid",
                        f.index, f.width, finest
                    ));
                }
            }
        }
        let mut seen: Option<(&str, u32)> = None;
        for a in self.domain.anchors() {
            let probe = if self.domain.contains(a.point) {
                a.point
            } else {
                a.point + a.inward * finest
            };
            let Some(node) = self.nearest_node_unchecked(probe) else {
                continue;
            };
            let comp = self.component[node as usize];
            match seen {
                None => seen = Some((&a.name, comp)),
                Some((name, c)) if c != comp => {
                    out.push(format!(
                        "anchors {name} and {} lie in different graph components",
                        a.name
                    ));
                    break;
                }
                _ => {}
            }
        }
        out
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn domain_arc(&self) -> Arc<Domain> {
        Arc::clone(&self.domain)
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> &Node {
        &self.nodes[id as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.targets.len() / 2
    }

    /// Neighbors of `u` with their quasihyperbolic edge weights.
    pub fn neighbors(&self, u: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.adjacency
            .edges(u)
            .map(move |e| (self.adjacency.targets[e], self.adjacency.qh[e]))
    }

    pub fn component_of(&self, u: u32) -> u32 {
        self.component[u as usize]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Node ids whose centers lie within `radius` of `p`, ascending.
    pub fn nodes_within(&self, p: Point2, radius: f64) -> Vec<u32> {
        let mut ids = self.index.within(p, radius);
        ids.sort_unstable();
        ids
    }

    fn nearest_node_unchecked(&self, p: Point2) -> Option<u32> {
        let best = std::cell::Cell::new((f64::INFINITY, NO_NODE));
        self.index.rings(
            p,
            |id| {
                let d = self.nodes[id as usize].point.dist(p);
                let (bd, bi) = best.get();
                if d < bd || (d == bd && id < bi) {
                    best.set((d, id));
                }
            },
            |ring| best.get().0 < ring,
        );
        let (_, id) = best.get();
        (id != NO_NODE).then_some(id)
    }

    /// Node closest to `p` in the Euclidean sense; ties go to the lowest id.
    pub fn nearest_node(&self, p: Point2) -> Result<u32> {
        if !self.domain.contains(p) {
            return Err(Error::OutsideDomain { x: p.x, y: p.y });
        }
        self.nearest_node_unchecked(p)
            .ok_or_else(|| Error::Resolution("graph has no nodes".into()))
    }

    /// Connects `p` to the nearest node whose segment to `p` stays inside.
    pub fn stub(&self, p: Point2) -> Result<Stub> {
        let delta = self.domain.boundary_distance(p)?;
        let points_within = |r: f64| {
            let mut c: Vec<(f64, u32)> = self
                .index
                .within(p, r)
                .into_iter()
                .map(|id| (self.nodes[id as usize].point.dist(p), id))
                .collect();
            c.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            c
        };
        let bb = self.domain.bounding_box();
        let mut r = 2.0 * self.params.finest_cell().max(delta.min(self.params.h));
        loop {
            for (d, id) in points_within(r) {
                let node = &self.nodes[id as usize];
                if d < delta || self.domain.segment_is_clear(p, node.point) {
                    return Ok(Stub {
                        point: p,
                        delta,
                        node: id,
                        qh: trapezoid_weight(p, delta, node.point, node.delta),
                        euclidean: d,
                    });
                }
            }
            if r > 2.0 * bb.diagonal() {
                return Err(Error::Resolution(format!(
                    "no grid node is visible from ({}, {}); decrease h",
                    p.x, p.y
                )));
            }
            r *= 2.0;
        }
    }

    fn stub_cost(stub: &Stub, metric: Metric) -> f64 {
        match metric {
            Metric::Quasihyperbolic => stub.qh,
            Metric::Euclidean => stub.euclidean,
        }
    }

    fn search(&self, sources: &[(u32, f64)], metric: Metric, targets: &[u32]) -> search::SearchResult {
        match metric {
            Metric::Quasihyperbolic => shortest_paths(&self.adjacency, sources, |e, _, _| self.adjacency.qh[e], targets),
            Metric::Euclidean => shortest_paths(
                &self.adjacency,
                sources,
                |_, u, v| self.nodes[u as usize].point.dist(self.nodes[v as usize].point),
                targets,
            ),
        }
    }

    fn check_reachable(&self, a: &Stub, b: &Stub) -> Result<()> {
        if self.component[a.node as usize] != self.component[b.node as usize] {
            return Err(Error::Unreachable(format!(
                "({}, {}) and ({}, {}) lie in different graph components",
                a.point.x, a.point.y, b.point.x, b.point.y
            )));
        }
        Ok(())
    }

    fn distance(&self, x: Point2, y: Point2, metric: Metric) -> Result<f64> {
        let sx = self.stub(x)?;
        let sy = self.stub(y)?;
        if x == y {
            return Ok(0.0);
        }
        self.check_reachable(&sx, &sy)?;
        let r = self.search(&[(sx.node, Self::stub_cost(&sx, metric))], metric, &[sy.node]);
        Ok(r.dist[sy.node as usize] + Self::stub_cost(&sy, metric))
    }

    fn geodesic(&self, x: Point2, y: Point2, metric: Metric) -> Result<PathPolyline> {
        let sx = self.stub(x)?;
        let sy = self.stub(y)?;
        if x == y {
            return Ok(PathPolyline::new(vec![x])?.with_graph_length(0.0));
        }
        self.check_reachable(&sx, &sy)?;
        let r = self.search(&[(sx.node, Self::stub_cost(&sx, metric))], metric, &[sy.node]);
        let total = r.dist[sy.node as usize] + Self::stub_cost(&sy, metric);
        let mut pts = vec![x];
        pts.extend(trace(&r.pred, sy.node).into_iter().map(|v| self.nodes[v as usize].point));
        pts.push(y);
        let path = PathPolyline::new(pts)?;
        Ok(match metric {
            Metric::Quasihyperbolic => path.with_graph_length(total),
            Metric::Euclidean => path,
        })
    }

    /// Approximate quasihyperbolic distance `k(x, y)`.
    pub fn qh_distance(&self, x: Point2, y: Point2) -> Result<f64> {
        self.distance(x, y, Metric::Quasihyperbolic)
    }

    /// Shortest graph path for `k`, endpoint stubs included.
    pub fn qh_geodesic(&self, x: Point2, y: Point2) -> Result<PathPolyline> {
        self.geodesic(x, y, Metric::Quasihyperbolic)
    }

    /// Approximate inner (Euclidean path) distance `λ(x, y)`.
    pub fn inner_distance(&self, x: Point2, y: Point2) -> Result<f64> {
        self.distance(x, y, Metric::Euclidean)
    }

    /// Euclidean-shortest graph path between `x` and `y`.
    pub fn inner_path(&self, x: Point2, y: Point2) -> Result<PathPolyline> {
        self.geodesic(x, y, Metric::Euclidean)
    }

    /// Single-source quasihyperbolic distances to every node.
    pub fn dist_field(&self, source: Point2) -> Result<DistField> {
        self.field(source, Metric::Quasihyperbolic)
    }

    pub fn field(&self, source: Point2, metric: Metric) -> Result<DistField> {
        let stub = self.stub(source)?;
        let r = self.search(&[(stub.node, Self::stub_cost(&stub, metric))], metric, &[]);
        Ok(DistField {
            metric,
            source: stub,
            dist: r.dist,
            pred: r.pred,
        })
    }

    /// Distances from the nearest of several node sets, e.g. the vertices
    /// of a discretized curve.
    pub fn multi_source_field(&self, sources: &[u32], metric: Metric) -> Vec<f64> {
        let s: Vec<(u32, f64)> = sources.iter().map(|&u| (u, 0.0)).collect();
        self.search(&s, metric, &[]).dist
    }

    /// Distance from the closest source node to each of `targets`, stopping
    /// once all are settled.
    pub fn multi_source_to(&self, sources: &[u32], targets: &[u32], metric: Metric) -> Vec<f64> {
        let s: Vec<(u32, f64)> = sources.iter().map(|&u| (u, 0.0)).collect();
        let r = self.search(&s, metric, targets);
        targets.iter().map(|&t| r.dist[t as usize]).collect()
    }

    /// Node sequence of the graph geodesic between two nodes and its weight.
    pub fn node_geodesic(&self, from: u32, to: u32) -> Result<(Vec<u32>, f64)> {
        if self.component[from as usize] != self.component[to as usize] {
            return Err(Error::Unreachable(format!("nodes {from} and {to} are in different components")));
        }
        let r = self.search(&[(from, 0.0)], Metric::Quasihyperbolic, &[to]);
        Ok((trace(&r.pred, to), r.dist[to as usize]))
    }
}

/// Shortest-path tree from one source point.
#[derive(Debug, Clone)]
pub struct DistField {
    metric: Metric,
    source: Stub,
    dist: Vec<f64>,
    pred: Vec<u32>,
}

impl DistField {
    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn source(&self) -> &Stub {
        &self.source
    }

    pub fn source_node(&self) -> u32 {
        self.source.node
    }

    /// Field value at a node; infinite when unreachable.
    pub fn value(&self, node: u32) -> f64 {
        self.dist[node as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.dist
    }

    /// Distance from the source point to an arbitrary point via its stub.
    pub fn distance_to(&self, g: &GridGraph, y: Point2) -> Result<f64> {
        if y == self.source.point {
            return Ok(0.0);
        }
        let sy = g.stub(y)?;
        g.check_reachable(&self.source, &sy)?;
        Ok(self.dist[sy.node as usize] + GridGraph::stub_cost(&sy, self.metric))
    }

    /// Path from the source point to `y`.
    pub fn path_to(&self, g: &GridGraph, y: Point2) -> Result<PathPolyline> {
        if y == self.source.point {
            return Ok(PathPolyline::new(vec![y])?.with_graph_length(0.0));
        }
        let sy = g.stub(y)?;
        g.check_reachable(&self.source, &sy)?;
        let total = self.dist[sy.node as usize] + GridGraph::stub_cost(&sy, self.metric);
        let mut pts = vec![self.source.point];
        pts.extend(trace(&self.pred, sy.node).into_iter().map(|v| g.nodes[v as usize].point));
        pts.push(y);
        let path = PathPolyline::new(pts)?;
        Ok(match self.metric {
            Metric::Quasihyperbolic => path.with_graph_length(total),
            Metric::Euclidean => path,
        })
    }

    /// Node ids from the source node to `node`.
    pub fn node_path_to(&self, node: u32) -> Vec<u32> {
        trace(&self.pred, node)
    }

    /// Path from the source to a node (source point first).
    pub fn path_to_node(&self, g: &GridGraph, node: u32) -> Result<PathPolyline> {
        if !self.dist[node as usize].is_finite() {
            return Err(Error::Unreachable(format!("node {node} is not reachable from the source")));
        }
        let mut pts = vec![self.source.point];
        pts.extend(trace(&self.pred, node).into_iter().map(|v| g.nodes[v as usize].point));
        let path = PathPolyline::new(pts)?;
        Ok(match self.metric {
            Metric::Quasihyperbolic => path.with_graph_length(self.dist[node as usize]),
            Metric::Euclidean => path,
        })
    }
}

fn label_components(adj: &Adjacency) -> (Vec<u32>, usize) {
    let n = adj.node_count();
    let mut label = vec![u32::MAX; n];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for s in 0..n {
        if label[s] != u32::MAX {
            continue;
        }
        label[s] = count;
        stack.push(s as u32);
        while let Some(u) = stack.pop() {
            for e in adj.edges(u) {
                let v = adj.targets[e];
                if label[v as usize] == u32::MAX {
                    label[v as usize] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (label, count as usize)
}
