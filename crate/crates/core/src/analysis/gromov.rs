//! Gromov products and sampled δ-hyperbolicity estimates.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::{DistField, GridGraph, Metric, Stub};
use crate::sampling;

/// Number of sample points shared by all configurations of one estimate.
pub const POOL_SIZE: usize = 64;

/// `(x|y)_o = ½ (k(x,o) + k(o,y) − k(x,y))`.
pub fn gromov_product(g: &GridGraph, o: Point2, x: Point2, y: Point2) -> Result<f64> {
    let field = g.dist_field(o)?;
    let kx = field.distance_to(g, x)?;
    let ky = field.distance_to(g, y)?;
    let kxy = g.qh_distance(x, y)?;
    Ok(0.5 * (kx + ky - kxy))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMethod {
    FourPoint,
    ThinTriangle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaEstimate {
    pub method: DeltaMethod,
    pub value: f64,
    pub samples: usize,
    pub seed: u64,
    /// `(x, y, z, p)` for the four-point method, the triangle `(x, y, z)` otherwise.
    pub worst_configuration: Vec<Point2>,
}

/// Seeded interior points with their stubs and pairwise distances.
pub struct PointPool {
    pub points: Vec<Point2>,
    stubs: Vec<Stub>,
    fields: Vec<DistField>,
    dist: Vec<f64>,
}

impl PointPool {
    /// Samples `n` points uniformly in the domain, keeping only those that
    /// attach to the largest graph component.
    pub fn sample(g: &GridGraph, n: usize, rng: &mut impl Rng) -> Result<PointPool> {
        let main = largest_component(g);
        let mut points = Vec::with_capacity(n);
        let mut stubs = Vec::with_capacity(n);
        let mut attempts = 0;
        while points.len() < n {
            attempts += 1;
            if attempts > 100 * n + 1000 {
                return Err(Error::Sample("too few sample points reach the main graph component".into()));
            }
            let p = sampling::interior_point(g.domain(), rng)?;
            let Ok(stub) = g.stub(p) else { continue };
            if g.component_of(stub.node) == main {
                points.push(p);
                stubs.push(stub);
            }
        }
        Self::from_stubs(g, points, stubs)
    }

    pub fn from_points(g: &GridGraph, points: Vec<Point2>) -> Result<PointPool> {
        let stubs = points.iter().map(|&p| g.stub(p)).collect::<Result<Vec<_>>>()?;
        Self::from_stubs(g, points, stubs)
    }

    fn from_stubs(g: &GridGraph, points: Vec<Point2>, stubs: Vec<Stub>) -> Result<PointPool> {
        let n = points.len();
        let mut fields = Vec::with_capacity(n);
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            let f = g.field(points[i], Metric::Quasihyperbolic)?;
            for j in i + 1..n {
                let d = if points[i] == points[j] {
                    0.0
                } else {
                    f.value(stubs[j].node) + stubs[j].qh
                };
                if !d.is_finite() {
                    return Err(Error::Unreachable(format!("pool points {i} and {j} are not connected")));
                }
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
            fields.push(f);
        }
        Ok(PointPool {
            points,
            stubs,
            fields,
            dist,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.points.len() + j]
    }

    pub fn gromov(&self, o: usize, x: usize, y: usize) -> f64 {
        0.5 * (self.distance(x, o) + self.distance(o, y) - self.distance(x, y))
    }

    /// Four-point defect `[min((x|y)_p, (y|z)_p) − (x|z)_p]⁺`.
    pub fn four_point_defect(&self, x: usize, y: usize, z: usize, p: usize) -> f64 {
        (self.gromov(p, x, y).min(self.gromov(p, y, z)) - self.gromov(p, x, z)).max(0.0)
    }

    /// Canonical geodesic between two pool points as node ids.
    fn side(&self, i: usize, j: usize) -> Vec<u32> {
        let (a, b) = (i.min(j), i.max(j));
        self.fields[a].node_path_to(self.stubs[b].node)
    }

    /// Largest distance from a vertex of one side to the union of the other two.
    pub fn triangle_thinness(&self, g: &GridGraph, x: usize, y: usize, z: usize) -> f64 {
        let sides = [self.side(x, y), self.side(y, z), self.side(z, x)];
        let mut worst = 0.0f64;
        for k in 0..3 {
            let others: Vec<u32> = sides[(k + 1) % 3].iter().chain(&sides[(k + 2) % 3]).copied().collect();
            let d = g.multi_source_to(&others, &sides[k], Metric::Quasihyperbolic);
            worst = d.into_iter().fold(worst, f64::max);
        }
        worst
    }
}

fn largest_component(g: &GridGraph) -> u32 {
    let mut counts = vec![0usize; g.component_count()];
    for u in 0..g.node_count() as u32 {
        counts[g.component_of(u) as usize] += 1;
    }
    (0..counts.len())
        .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
        .unwrap_or(0) as u32
}

fn check_sampling(g: &GridGraph, n_samples: usize) -> Result<()> {
    if g.node_count() < 4 {
        return Err(Error::Sample(format!("δ estimation needs at least 4 nodes (graph has {})", g.node_count())));
    }
    if n_samples == 0 {
        return Err(Error::Sample("n_samples must be at least 1".into()));
    }
    Ok(())
}

/// Sampled four-point δ̂. Quadruples are drawn sequentially from a seeded
/// pool, so a larger `n_samples` extends the same sequence.
pub fn estimate_delta_four_point(g: &GridGraph, n_samples: usize, seed: u64) -> Result<DeltaEstimate> {
    check_sampling(g, n_samples)?;
    let mut rng = sampling::rng(seed);
    let pool = PointPool::sample(g, POOL_SIZE, &mut rng)?;
    Ok(four_point_on_pool(&pool, n_samples, seed, &mut rng))
}

pub fn four_point_on_pool(pool: &PointPool, n_samples: usize, seed: u64, rng: &mut impl Rng) -> DeltaEstimate {
    let n = pool.len();
    let mut best = (0.0, [0usize; 4]);
    for _ in 0..n_samples {
        let q = [
            rng.random_range(0..n),
            rng.random_range(0..n),
            rng.random_range(0..n),
            rng.random_range(0..n),
        ];
        let d = pool.four_point_defect(q[0], q[1], q[2], q[3]);
        if d > best.0 {
            best = (d, q);
        }
    }
    DeltaEstimate {
        method: DeltaMethod::FourPoint,
        value: best.0,
        samples: n_samples,
        seed,
        worst_configuration: best.1.iter().map(|&i| pool.points[i]).collect(),
    }
}

/// Sampled thin-triangle δ̂ over geodesic triangles with pool vertices.
pub fn estimate_delta_thin_triangles(g: &GridGraph, n_samples: usize, seed: u64) -> Result<DeltaEstimate> {
    check_sampling(g, n_samples)?;
    let mut rng = sampling::rng(seed);
    let pool = PointPool::sample(g, POOL_SIZE, &mut rng)?;
    let n = pool.len();
    let mut best = (0.0, [0usize; 3]);
    for _ in 0..n_samples {
        let t = [rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)];
        let d = pool.triangle_thinness(g, t[0], t[1], t[2]);
        if d > best.0 {
            best = (d, t);
        }
    }
    Ok(DeltaEstimate {
        method: DeltaMethod::ThinTriangle,
        value: best.0,
        samples: n_samples,
        seed,
        worst_configuration: best.1.iter().map(|&i| pool.points[i]).collect(),
    })
}
