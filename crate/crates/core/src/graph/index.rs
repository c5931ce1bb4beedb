//! Uniform bucket index over node centers.

use crate::geometry::{BBox, Point2};

#[derive(Debug, Clone)]
pub(crate) struct NodeIndex {
    origin: Point2,
    bucket: f64,
    nx: usize,
    ny: usize,
    offsets: Vec<u32>,
    items: Vec<u32>,
    points: Vec<Point2>,
}

impl NodeIndex {
    pub fn new(bbox: BBox, bucket: f64, points: Vec<Point2>) -> Self {
        let nx = ((bbox.width() / bucket).ceil() as usize).max(1);
        let ny = ((bbox.height() / bucket).ceil() as usize).max(1);
        let mut index = NodeIndex {
            origin: bbox.min,
            bucket,
            nx,
            ny,
            offsets: vec![0; nx * ny + 1],
            items: vec![0; points.len()],
            points: Vec::new(),
        };
        let cells: Vec<usize> = points.iter().map(|&p| index.cell_of(p)).collect();
        for &c in &cells {
            index.offsets[c + 1] += 1;
        }
        for k in 0..nx * ny {
            index.offsets[k + 1] += index.offsets[k];
        }
        let mut fill = index.offsets.clone();
        for (id, &c) in cells.iter().enumerate() {
            index.items[fill[c] as usize] = id as u32;
            fill[c] += 1;
        }
        index.points = points;
        index
    }

    fn coords(&self, p: Point2) -> (i64, i64) {
        (
            ((p.x - self.origin.x) / self.bucket).floor() as i64,
            ((p.y - self.origin.y) / self.bucket).floor() as i64,
        )
    }

    fn cell_of(&self, p: Point2) -> usize {
        let (i, j) = self.coords(p);
        let i = i.clamp(0, self.nx as i64 - 1) as usize;
        let j = j.clamp(0, self.ny as i64 - 1) as usize;
        j * self.nx + i
    }

    fn bucket_items(&self, i: i64, j: i64) -> &[u32] {
        if i < 0 || j < 0 || i >= self.nx as i64 || j >= self.ny as i64 {
            return &[];
        }
        let c = j as usize * self.nx + i as usize;
        &self.items[self.offsets[c] as usize..self.offsets[c + 1] as usize]
    }

    /// Node ids whose centers lie within `radius` of `p` (unordered).
    pub fn within(&self, p: Point2, radius: f64) -> Vec<u32> {
        let (i0, j0) = self.coords(p - Point2::new(radius, radius));
        let (i1, j1) = self.coords(p + Point2::new(radius, radius));
        let mut out = Vec::new();
        for j in j0.max(0)..=j1.min(self.ny as i64 - 1) {
            for i in i0.max(0)..=i1.min(self.nx as i64 - 1) {
                out.extend(
                    self.bucket_items(i, j)
                        .iter()
                        .copied()
                        .filter(|&id| self.points[id as usize].dist(p) <= radius),
                );
            }
        }
        out
    }

    /// Visits candidate ids in rings of buckets around `p` until `accept`
    /// reports that no farther bucket can improve the answer.
    ///
    /// `accept(ring_min_distance)` is called after each ring with the smallest
    /// distance any point of the next ring can have.
    pub fn rings(&self, p: Point2, mut visit: impl FnMut(u32), mut done: impl FnMut(f64) -> bool) {
        let (ci, cj) = self.coords(p);
        let (ci, cj) = (ci.clamp(0, self.nx as i64 - 1), cj.clamp(0, self.ny as i64 - 1));
        let max_ring = self.nx.max(self.ny) as i64;
        // distance from p to the edge of its (clamped) bucket region grows by one bucket per ring
        let base = {
            let lo = self.origin + Point2::new(ci as f64 * self.bucket, cj as f64 * self.bucket);
            let hi = lo + Point2::new(self.bucket, self.bucket);
            (p.x - lo.x).min(hi.x - p.x).min(p.y - lo.y).min(hi.y - p.y).max(0.0)
        };
        for r in 0..=max_ring {
            for j in cj - r..=cj + r {
                for i in ci - r..=ci + r {
                    if (i - ci).abs() != r && (j - cj).abs() != r {
                        continue;
                    }
                    for &id in self.bucket_items(i, j) {
                        visit(id);
                    }
                }
            }
            if done(base + r as f64 * self.bucket) {
                return;
            }
        }
    }
}
