//! The real tree coded by a path: merge tree, persistence, trimming and profiles.

mod profile;
mod trim;

pub use profile::{
    discretization_floor, trim_profile, ScaleGrid, TrimProfile, DEFAULT_RATIO, DEFAULT_SCALES,
    FLOOR_FACTOR,
};
pub use trim::{flatten, leaf_pairs, trim_events, LeafPair, TrimEvents};
pub(crate) use trim::{leaf_pairs_seg, sweep};

use crate::error::{Error, Result};
use crate::path::{RawExtension, SampledPath};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Leaf,
    Branch,
    Root,
}

/// Vertex of the merge tree. Edges run from a node down to its parent.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeNode {
    pub id: usize,
    pub kind: NodeKind,
    pub level: f64,
    pub parent: Option<usize>,
    #[serde(skip)]
    pub children: Vec<usize>,
    /// Height of the subtree above the node: `sup` over its excursion minus its level.
    pub height: f64,
    /// First and last time mapped onto the node, clipped to `[0, 1]`.
    pub t_start: f64,
    pub t_end: f64,
}

/// Tree of `[0, 1]` quotiented by the semi-distance, with leaves at local maxima
/// and the root at the infimum. Child ids are always smaller than parent ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergeTree {
    pub nodes: Vec<TreeNode>,
    pub root: usize,
}

struct Run {
    value: f64,
    first: usize,
    last: usize,
}

fn runs(v: &[f64]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        match out.last_mut() {
            Some(r) if r.value == x => r.last = i,
            _ => out.push(Run {
                value: x,
                first: i,
                last: i,
            }),
        }
    }
    out
}

fn clip(t: f64) -> f64 {
    t.clamp(0.0, 1.0)
}

/// Build the merge tree by union-find over local maxima, merging at local minima
/// in decreasing order of level (ties in time order). Equal-level merges share a node.
pub fn build_merge_tree(path: &SampledPath) -> Result<MergeTree> {
    if path.is_constant() {
        return Err(Error::ConstantPath);
    }
    let ext = RawExtension::new(path);
    Ok(build_raw(&ext.t, &ext.v))
}

pub(crate) fn build_raw(t: &[f64], v: &[f64]) -> MergeTree {
    let rs = runs(v);
    let inf = rs[0].value;
    // Alternating extrema: maxima[j] lies between minima[j] and minima[j + 1],
    // where minima[0] and minima[last] are the end runs.
    let mut maxima: Vec<usize> = Vec::new();
    let mut minima: Vec<usize> = vec![0];
    for r in 1..rs.len() - 1 {
        let (p, c, n) = (rs[r - 1].value, rs[r].value, rs[r + 1].value);
        if p < c && c > n {
            maxima.push(r);
        } else if p > c && c < n {
            minima.push(r);
        }
    }
    minima.push(rs.len() - 1);
    debug_assert_eq!(minima.len(), maxima.len() + 1);

    let k = maxima.len();
    let mut nodes: Vec<TreeNode> = maxima
        .iter()
        .enumerate()
        .map(|(id, &r)| TreeNode {
            id,
            kind: NodeKind::Leaf,
            level: rs[r].value,
            parent: None,
            children: Vec::new(),
            height: 0.0,
            t_start: clip(t[rs[r].first]),
            t_end: clip(t[rs[r].last]),
        })
        .collect();

    // Union-find over maxima; each component is a contiguous block of maxima.
    let mut uf: Vec<usize> = (0..k).collect();
    let mut top: Vec<usize> = (0..k).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }

    let mut order: Vec<usize> = (1..minima.len() - 1).collect();
    order.sort_by(|&a, &b| {
        rs[minima[b]]
            .value
            .partial_cmp(&rs[minima[a]].value)
            .unwrap()
            .then(a.cmp(&b))
    });
    for j in order {
        let x = rs[minima[j]].value;
        let (ca, cb) = (find(&mut uf, j - 1), find(&mut uf, j));
        let (na, nb) = (top[ca], top[cb]);
        let merged = if nodes[na].kind == NodeKind::Branch && nodes[na].level == x {
            nodes[nb].parent = Some(na);
            nodes[na].children.push(nb);
            na
        } else if nodes[nb].kind == NodeKind::Branch && nodes[nb].level == x {
            nodes[na].parent = Some(nb);
            nodes[nb].children.insert(0, na);
            nb
        } else {
            let id = nodes.len();
            nodes.push(TreeNode {
                id,
                kind: NodeKind::Branch,
                level: x,
                parent: None,
                children: vec![na, nb],
                height: 0.0,
                t_start: 0.0,
                t_end: 0.0,
            });
            nodes[na].parent = Some(id);
            nodes[nb].parent = Some(id);
            id
        };
        uf[cb] = ca;
        top[ca] = merged;
    }
    let c = find(&mut uf, 0);
    let mut root = top[c];
    if nodes[root].level > inf {
        let id = nodes.len();
        nodes.push(TreeNode {
            id,
            kind: NodeKind::Root,
            level: inf,
            parent: None,
            children: vec![root],
            height: 0.0,
            t_start: 0.0,
            t_end: 1.0,
        });
        nodes[root].parent = Some(id);
        root = id;
    }
    nodes[root].kind = NodeKind::Root;

    // Maxima block of each node, then anchor times from the bounding climbs.
    let mut block: Vec<(usize, usize)> = (0..k).map(|i| (i, i)).collect();
    block.resize(nodes.len(), (usize::MAX, 0));
    for id in k..nodes.len() {
        let (mut a, mut b) = (usize::MAX, 0);
        for &c in &nodes[id].children {
            a = a.min(block[c].0);
            b = b.max(block[c].1);
        }
        block[id] = (a, b);
    }
    for id in k..nodes.len() {
        let (a, b) = block[id];
        let x = nodes[id].level;
        if id == root && x == inf {
            nodes[id].t_start = clip(t[0]);
            nodes[id].t_end = clip(t[t.len() - 1]);
            continue;
        }
        // Rising stretch before maximum a: knots minima[a].last ..= maxima[a].first.
        let (s0, s1) = (rs[minima[a]].last, rs[maxima[a]].first);
        let i = s0 + v[s0..=s1].partition_point(|&y| y < x);
        let up = if i == s0 {
            t[s0]
        } else {
            crate::path::polyline::crossing(t[i - 1], v[i - 1], t[i], v[i], x)
        };
        // Falling stretch after maximum b.
        let (f0, f1) = (rs[maxima[b]].last, rs[minima[b + 1]].first);
        let j = f0 + v[f0..=f1].partition_point(|&y| y >= x);
        let down = if j > f1 {
            t[f1]
        } else {
            crate::path::polyline::crossing(t[j - 1], v[j - 1], t[j], v[j], x)
        };
        nodes[id].t_start = clip(up);
        nodes[id].t_end = clip(down);
    }

    for id in k..nodes.len() {
        let mut h: f64 = 0.0;
        for &c in &nodes[id].children {
            h = h.max(nodes[c].height + nodes[c].level - nodes[id].level);
        }
        nodes[id].height = h;
    }
    MergeTree { nodes, root }
}

impl MergeTree {
    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Leaf)
            .count()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Leaf)
    }

    fn edge_length(&self, n: &TreeNode) -> f64 {
        n.parent.map_or(0.0, |p| n.level - self.nodes[p].level)
    }

    /// Length measure of the whole tree (the sum of edge lengths).
    pub fn total_length(&self) -> f64 {
        self.nodes.iter().map(|n| self.edge_length(n)).sum()
    }

    /// `int h^(p-1) d lambda`, exact: `h` grows with unit slope down each edge.
    pub fn height_integral(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidExponent(p));
        }
        Ok(self
            .nodes
            .iter()
            .map(|n| {
                let len = self.edge_length(n);
                ((n.height + len).powf(p) - n.height.powf(p)) / p
            })
            .sum())
    }

    /// Branch heights (one per leaf) under the elder rule, sorted in decreasing order.
    /// At each node the child holding the highest peak (earliest on ties) survives;
    /// the others die at the node's level. The survivor at the root pairs with the root.
    pub fn persistence(&self) -> Vec<f64> {
        let n = self.nodes.len();
        let mut peak = vec![(f64::NEG_INFINITY, f64::INFINITY); n];
        let mut out = Vec::with_capacity(self.leaf_count());
        for node in &self.nodes {
            if node.kind == NodeKind::Leaf {
                peak[node.id] = (node.level, node.t_start);
                continue;
            }
            let mut best = node.children[0];
            for &c in &node.children[1..] {
                let (pc, tc) = peak[c];
                let (pb, tb) = peak[best];
                if pc > pb || (pc == pb && tc < tb) {
                    best = c;
                }
            }
            for &c in &node.children {
                if c != best {
                    out.push(peak[c].0 - node.level);
                }
            }
            peak[node.id] = peak[best];
        }
        out.push(peak[self.root].0 - self.nodes[self.root].level);
        out.sort_by(|a, b| b.partial_cmp(a).unwrap());
        out
    }
}

/// Branch heights of the path's tree, sorted decreasingly.
pub fn persistence_pairs(tree: &MergeTree) -> Vec<f64> {
    tree.persistence()
}

pub fn height_integral(tree: &MergeTree, p: f64) -> Result<f64> {
    tree.height_integral(p)
}
