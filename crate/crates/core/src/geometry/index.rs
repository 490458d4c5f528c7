//! Nearest-obstacle queries: a bounding-volume hierarchy over bounded
//! primitives plus linear scans of unbounded and polar ones.

use alloc::vec::Vec;

use super::obstacle::{Aabb, Obstacle};
use super::Point;

const LEAF_SIZE: usize = 4;

#[derive(Debug, Clone)]
enum Node {
    Leaf {
        bbox: Aabb,
        start: usize,
        len: usize,
    },
    Inner {
        bbox: Aabb,
        left: usize,
        right: usize,
    },
}

impl Node {
    fn bbox(&self) -> &Aabb {
        match self {
            Node::Leaf { bbox, .. } | Node::Inner { bbox, .. } => bbox,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct ObstacleIndex {
    nodes: Vec<Node>,
    /// Obstacle indices in leaf order.
    order: Vec<usize>,
    unbounded: Vec<usize>,
    polar: Vec<usize>,
}

impl ObstacleIndex {
    pub(crate) fn build(obstacles: &[Obstacle]) -> Self {
        let mut bounded = Vec::new();
        let mut unbounded = Vec::new();
        let mut polar = Vec::new();
        for (i, o) in obstacles.iter().enumerate() {
            if o.is_polar() {
                polar.push(i);
            } else if let Some(b) = o.bbox() {
                bounded.push((i, b));
            } else {
                unbounded.push(i);
            }
        }
        let mut index = ObstacleIndex {
            nodes: Vec::new(),
            order: Vec::with_capacity(bounded.len()),
            unbounded,
            polar,
        };
        if !bounded.is_empty() {
            index.split(&mut bounded);
        }
        index
    }

    fn split(&mut self, items: &mut [(usize, Aabb)]) -> usize {
        let bbox = items[1..]
            .iter()
            .fold(items[0].1, |acc, (_, b)| acc.union(b));
        if items.len() <= LEAF_SIZE {
            let start = self.order.len();
            self.order.extend(items.iter().map(|(i, _)| *i));
            self.nodes.push(Node::Leaf {
                bbox,
                start,
                len: items.len(),
            });
            return self.nodes.len() - 1;
        }
        let wide = (bbox.max.re - bbox.min.re) >= (bbox.max.im - bbox.min.im);
        items.sort_by(|a, b| {
            let (ca, cb) = (a.1.center(), b.1.center());
            let (ka, kb) = if wide { (ca.re, cb.re) } else { (ca.im, cb.im) };
            ka.total_cmp(&kb)
        });
        let mid = items.len() / 2;
        let slot = self.nodes.len();
        self.nodes.push(Node::Leaf {
            bbox,
            start: 0,
            len: 0,
        });
        let (lo, hi) = items.split_at_mut(mid);
        let left = self.split(lo);
        let right = self.split(hi);
        self.nodes[slot] = Node::Inner { bbox, left, right };
        slot
    }

    /// `(distance, obstacle index)` of the nearest obstacle, polar sets
    /// included only when `strict`.
    pub(crate) fn nearest(
        &self,
        obstacles: &[Obstacle],
        z: Point,
        strict: bool,
    ) -> Option<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        let consider = |i: usize, best: &mut Option<(f64, usize)>| {
            let d = obstacles[i].distance(z);
            if best.map_or(true, |(bd, _)| d < bd) {
                *best = Some((d, i));
            }
        };
        for &i in &self.unbounded {
            consider(i, &mut best);
        }
        if strict {
            for &i in &self.polar {
                consider(i, &mut best);
            }
        }
        if self.nodes.is_empty() {
            return best;
        }
        // Median splits keep the depth near log2(n); 64 slots cover any
        // realistic obstacle count without allocating in the walk loop.
        let mut stack = [0usize; 64];
        let mut top = 1;
        while top > 0 {
            top -= 1;
            let n = stack[top];
            let node = &self.nodes[n];
            if let Some((bd, _)) = best {
                if node.bbox().distance(z) >= bd {
                    continue;
                }
            }
            match node {
                Node::Leaf { start, len, .. } => {
                    for &i in &self.order[*start..start + len] {
                        consider(i, &mut best);
                    }
                }
                Node::Inner { left, right, .. } => {
                    let dl = self.nodes[*left].bbox().distance(z);
                    let dr = self.nodes[*right].bbox().distance(z);
                    // Visit the closer child first: push it last.
                    let (near, far) = if dl <= dr {
                        (*left, *right)
                    } else {
                        (*right, *left)
                    };
                    stack[top] = far;
                    stack[top + 1] = near;
                    top += 2;
                }
            }
        }
        best
    }
}
