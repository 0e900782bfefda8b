//! Finite stars and combs with tips or teeth in a target set.
//!
//! A star is a center with paths to `k` distinct targets meeting only at the
//! center. A comb is a spine path with `k` pairwise disjoint paths from the
//! spine to distinct targets, each meeting the spine only at its first
//! vertex. Both are found with vertex-disjoint path flows.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Display;

use serde_json::json;

use crate::cuts::flow::Network;
use crate::error::{Error, Result};
use crate::graph_model::{FiniteGraph, Truncation, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarComb<V> {
    Star { center: V, paths: Vec<Vec<V>> },
    Comb { spine: Vec<V>, paths: Vec<Vec<V>> },
    /// Neither exists among the candidates tried.
    Exhausted { budget: usize },
}

impl<V: Ord + Clone + Display> StarComb<V> {
    pub fn kind(&self) -> &'static str {
        match self {
            StarComb::Star { .. } => "star",
            StarComb::Comb { .. } => "comb",
            StarComb::Exhausted { .. } => "exhausted",
        }
    }

    /// Tips of a star or teeth of a comb.
    pub fn targets(&self) -> Vec<V> {
        match self {
            StarComb::Star { paths, .. } | StarComb::Comb { paths, .. } => {
                paths.iter().map(|p| p.last().expect("paths are non-empty").clone()).collect()
            }
            StarComb::Exhausted { .. } => Vec::new(),
        }
    }

    /// Structural re-check against the graph and the target set.
    pub fn verify(&self, g: &FiniteGraph<V>, d: &BTreeSet<V>) -> std::result::Result<(), String> {
        let is_path = |p: &[V]| {
            let idx: Option<Vec<usize>> = p.iter().map(|v| g.index_of(v)).collect();
            let Some(idx) = idx else { return false };
            idx.iter().collect::<BTreeSet<_>>().len() == idx.len() && idx.windows(2).all(|w| g.has_edge(w[0], w[1]))
        };
        let (paths, anchor): (&Vec<Vec<V>>, BTreeSet<V>) = match self {
            StarComb::Exhausted { .. } => return Ok(()),
            StarComb::Star { center, paths } => (paths, [center.clone()].into()),
            StarComb::Comb { spine, paths } => {
                if spine.is_empty() || !is_path(spine) {
                    return Err("spine is not a path".into());
                }
                (paths, spine.iter().cloned().collect())
            }
        };
        let mut seen: BTreeSet<V> = BTreeSet::new();
        let mut tips = BTreeSet::new();
        for p in paths {
            if p.is_empty() || !is_path(p) {
                return Err("a path is broken".into());
            }
            let tip = p.last().expect("non-empty");
            if !d.contains(tip) || !tips.insert(tip.clone()) {
                return Err(format!("{tip} is not a fresh target"));
            }
            if !anchor.contains(&p[0]) || p[1..].iter().any(|v| anchor.contains(v)) {
                return Err(format!("path to {tip} leaves the anchor more than once"));
            }
            let own = match self {
                StarComb::Star { .. } => &p[1..],
                _ => &p[..],
            };
            for v in own {
                if !seen.insert(v.clone()) {
                    return Err(format!("paths meet at {v}"));
                }
            }
        }
        Ok(())
    }

    /// DOT rendering of the graph with the certificate drawn in bold red.
    pub fn to_dot(&self, g: &FiniteGraph<V>, name: &str) -> String {
        let mut marked: BTreeSet<(String, String)> = BTreeSet::new();
        let mut mark = |p: &[V]| {
            for w in p.windows(2) {
                let (a, b) = (w[0].to_string(), w[1].to_string());
                marked.insert((a.clone().min(b.clone()), a.max(b)));
            }
        };
        let mut special = BTreeSet::new();
        match self {
            StarComb::Star { center, paths } => {
                special.insert(center.to_string());
                paths.iter().for_each(|p| mark(p));
            }
            StarComb::Comb { spine, paths } => {
                mark(spine);
                paths.iter().for_each(|p| mark(p));
            }
            StarComb::Exhausted { .. } => {}
        }
        let tips: BTreeSet<String> = self.targets().iter().map(|v| v.to_string()).collect();
        let mut s = format!("graph \"{name}\" {{\n");
        for v in g.vertices() {
            let v = v.to_string();
            let style = if special.contains(&v) {
                " [shape=box, color=red]"
            } else if tips.contains(&v) {
                " [color=red]"
            } else {
                ""
            };
            s.push_str(&format!("  \"{v}\"{style};\n"));
        }
        for (a, b) in g.edge_labels() {
            let (a, b) = (a.to_string(), b.to_string());
            let key = (a.clone().min(b.clone()), a.clone().max(b.clone()));
            let style = if marked.contains(&key) { " [color=red, penwidth=2]" } else { "" };
            s.push_str(&format!("  \"{a}\" -- \"{b}\"{style};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let path = |p: &Vec<V>| p.iter().map(|v| v.to_string()).collect::<Vec<_>>();
        match self {
            StarComb::Star { center, paths } => json!({
                "kind": "star",
                "center": center.to_string(),
                "paths": paths.iter().map(path).collect::<Vec<_>>(),
            }),
            StarComb::Comb { spine, paths } => json!({
                "kind": "comb",
                "spine": path(spine),
                "paths": paths.iter().map(path).collect::<Vec<_>>(),
            }),
            StarComb::Exhausted { budget } => json!({ "kind": "exhausted", "budget": budget }),
        }
    }
}

const HUB_PEELS: usize = 3;

/// Split-vertex network: vertex `i` is `2i -> 2i+1`, edges join out-nodes to
/// in-nodes, and targets drain into the sink.
struct Split {
    net: Network,
    s: usize,
    t: usize,
}

fn split_network<V: Ord + Clone + Display>(g: &FiniteGraph<V>, d: &[usize], skip_in: Option<usize>) -> Split {
    let n = g.vertex_count();
    let mut net = Network::new(2 * n + 2);
    let (s, t) = (2 * n, 2 * n + 1);
    for i in 0..n {
        if Some(i) != skip_in {
            net.add_arc(2 * i, 2 * i + 1, 1);
        }
        for &j in g.neighbors(i) {
            if Some(j) != skip_in {
                net.add_arc(2 * i + 1, 2 * j, 1);
            }
        }
    }
    for &x in d {
        net.add_arc(2 * x + 1, t, 1);
    }
    Split { net, s, t }
}

/// Unit flow paths as vertex index lists.
fn flow_paths(sp: &Split, k: usize) -> Vec<Vec<usize>> {
    sp.net
        .unit_paths(sp.s, sp.t, k as u64)
        .into_iter()
        .map(|p| {
            let mut out: Vec<usize> = Vec::new();
            for x in p {
                if x >= sp.s {
                    continue;
                }
                if out.last() != Some(&(x / 2)) {
                    out.push(x / 2);
                }
            }
            out
        })
        .collect()
}

/// Cuts a path to begin at its last anchor vertex and end at the first
/// target after that.
fn trim(path: &[usize], anchor: &[bool], target: &[bool]) -> Vec<usize> {
    let start = path.iter().rposition(|&v| anchor[v]).unwrap_or(0);
    let end = (start..path.len()).find(|&i| target[path[i]]).unwrap_or(path.len() - 1);
    path[start..=end].to_vec()
}

fn bfs_parents<V: Ord + Clone + Display>(g: &FiniteGraph<V>, root: usize, removed: &[bool]) -> Vec<Option<usize>> {
    let mut parent = vec![None; g.vertex_count()];
    let mut seen = removed.to_vec();
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    parent
}

/// A path from `start` that repeatedly walks a shortest route, avoiding the
/// path so far, to the nearest target not yet on it.
fn threading_spine<V: Ord + Clone + Display>(g: &FiniteGraph<V>, start: usize, target: &[bool]) -> Vec<usize> {
    let mut on = vec![false; g.vertex_count()];
    on[start] = true;
    let mut path = vec![start];
    loop {
        let here = *path.last().expect("path starts at start");
        let mut blocked = on.clone();
        blocked[here] = false;
        let parent = bfs_parents(g, here, &blocked);
        let next = (0..g.vertex_count())
            .filter(|&v| target[v] && !on[v] && parent[v].is_some())
            .min_by_key(|&v| {
                let mut len = 0;
                let mut u = v;
                while let Some(w) = parent[u] {
                    len += 1;
                    u = w;
                }
                (len, v)
            });
        let Some(v) = next else { return path };
        let mut leg = vec![v];
        let mut u = v;
        while let Some(w) = parent[u] {
            if w != here {
                leg.push(w);
            }
            u = w;
        }
        for &x in leg.iter().rev() {
            on[x] = true;
            path.push(x);
        }
    }
}

/// Starting targets tried for threading spines.
const THREAD_STARTS: usize = 16;

fn comb_at<V: Ord + Clone + Display>(
    g: &FiniteGraph<V>,
    d: &[usize],
    target: &[bool],
    spine: &[usize],
    k: usize,
) -> Option<Vec<Vec<usize>>> {
    let mut sp = split_network(g, d, None);
    let mut anchor = vec![false; g.vertex_count()];
    for &x in spine {
        anchor[x] = true;
        sp.net.add_arc(sp.s, 2 * x, 1);
    }
    if sp.net.max_flow(sp.s, sp.t, k as u64) < k as u64 {
        return None;
    }
    Some(flow_paths(&sp, k).iter().map(|p| trim(p, &anchor, target)).collect())
}

fn star_at<V: Ord + Clone + Display>(
    g: &FiniteGraph<V>,
    d: &[usize],
    target: &[bool],
    c: usize,
    k: usize,
) -> Option<Vec<Vec<usize>>> {
    // The center is never its own tip.
    let d: Vec<usize> = d.iter().copied().filter(|&x| x != c).collect();
    let mut target = target.to_vec();
    target[c] = false;
    let mut sp = split_network(g, &d, Some(c));
    sp.net.add_arc(sp.s, 2 * c + 1, k as u64);
    if sp.net.max_flow(sp.s, sp.t, k as u64) < k as u64 {
        return None;
    }
    let mut anchor = vec![false; g.vertex_count()];
    anchor[c] = true;
    Some(flow_paths(&sp, k).iter().map(|p| trim(p, &anchor, &target)).collect())
}

/// Searches a finite graph for a comb, then a star, with `k` targets in `d`.
///
/// Spines tried: shortest paths between pairs of targets, in the graph and
/// after peeling off up to [`HUB_PEELS`] vertices of largest degree (a hub
/// adjacent to everything would otherwise shortcut every spine), and paths
/// threading targets greedily from up to [`THREAD_STARTS`] of them; longest
/// first. Centers tried: every vertex, by decreasing degree.
pub fn star_or_comb_in<V: Ord + Clone + Display>(g: &FiniteGraph<V>, d: &BTreeSet<V>, k: usize) -> Result<StarComb<V>> {
    let dix: Vec<usize> = d.iter().filter_map(|v| g.index_of(v)).collect();
    if dix.len() < k {
        return Err(Error::TargetTooSmall {
            have: dix.len(),
            need: k,
        });
    }
    let mut target = vec![false; g.vertex_count()];
    for &x in &dix {
        target[x] = true;
    }
    let label = |p: &[usize]| p.iter().map(|&i| g.label(i).clone()).collect::<Vec<V>>();
    let mut budget = 0;

    let mut spines: BTreeSet<Vec<usize>> = dix.iter().map(|&a| vec![a]).collect();
    let mut removed = vec![false; g.vertex_count()];
    for _ in 0..=HUB_PEELS {
        for &a in dix.iter().filter(|&&a| !removed[a]) {
            let parent = bfs_parents(g, a, &removed);
            for &b in dix.iter().filter(|&&b| b > a) {
                let mut path = vec![b];
                let mut u = b;
                while let Some(w) = parent[u] {
                    path.push(w);
                    u = w;
                }
                if u == a && path.len() > 1 {
                    spines.insert(path);
                }
            }
        }
        let degree = |i: usize| g.neighbors(i).iter().filter(|&&j| !removed[j]).count();
        match (0..g.vertex_count()).filter(|&i| !removed[i]).max_by_key(|&i| (degree(i), std::cmp::Reverse(i))) {
            Some(h) if degree(h) > 2 => removed[h] = true,
            _ => break,
        }
    }
    for &a in dix.iter().take(THREAD_STARTS) {
        let spine = threading_spine(g, a, &target);
        if spine.len() > 1 {
            spines.insert(spine);
        }
    }
    let mut spines: Vec<Vec<usize>> = spines.into_iter().collect();
    spines.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    for spine in &spines {
        budget += 1;
        if let Some(paths) = comb_at(g, &dix, &target, spine, k) {
            let out = StarComb::Comb {
                spine: label(spine),
                paths: paths.iter().map(|p| label(p)).collect(),
            };
            assert_eq!(out.verify(g, d), Ok(()), "comb certificate");
            return Ok(out);
        }
    }

    let mut centers: Vec<usize> = (0..g.vertex_count()).collect();
    centers.sort_by_key(|&c| (std::cmp::Reverse(g.degree(c)), c));
    for c in centers {
        budget += 1;
        if let Some(paths) = star_at(g, &dix, &target, c, k) {
            let out = StarComb::Star {
                center: g.label(c).clone(),
                paths: paths.iter().map(|p| label(p)).collect(),
            };
            assert_eq!(out.verify(g, d), Ok(()), "star certificate");
            return Ok(out);
        }
    }
    Ok(StarComb::Exhausted { budget })
}

/// [`star_or_comb_in`] on a truncation.
pub fn star_or_comb(t: &Truncation, d: &BTreeSet<VertexRef>, k: usize) -> Result<StarComb<VertexRef>> {
    star_or_comb_in(&t.graph, d, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph_model::truncate;

    fn star(n: u32) -> FiniteGraph<u32> {
        FiniteGraph::new(0..=n, (1..=n).map(|i| (0, i))).unwrap()
    }

    fn path(n: u32) -> FiniteGraph<u32> {
        FiniteGraph::new(0..n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn leaves_of_a_star() {
        let g = star(8);
        let d: BTreeSet<u32> = (1..=8).collect();
        let r = star_or_comb_in(&g, &d, 5).unwrap();
        assert_eq!(r.kind(), "star");
        let StarComb::Star { center, paths } = &r else { unreachable!() };
        assert_eq!(*center, 0);
        assert!(paths.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn every_second_vertex_of_a_path() {
        let g = path(12);
        let d: BTreeSet<u32> = (0..12).step_by(2).collect();
        let r = star_or_comb_in(&g, &d, 5).unwrap();
        assert_eq!(r.kind(), "comb");
        assert!(r.targets().iter().all(|t| t % 2 == 0));
    }

    #[test]
    fn too_few_targets() {
        let g = path(4);
        let d: BTreeSet<u32> = [0, 1].into();
        assert!(matches!(
            star_or_comb_in(&g, &d, 3),
            Err(Error::TargetTooSmall { have: 2, need: 3 })
        ));
    }

    #[test]
    fn disconnected_targets_exhaust() {
        let g = FiniteGraph::new(0u32..4, [(0, 1), (2, 3)]).unwrap();
        let d: BTreeSet<u32> = [0, 1, 2, 3].into();
        assert_eq!(star_or_comb_in(&g, &d, 3).unwrap().kind(), "exhausted");
    }

    #[test]
    fn dominated_ray_gives_a_comb() {
        let p = catalog::get("double_ray_dominator").unwrap();
        let t = truncate(&p, 12);
        let d: BTreeSet<VertexRef> = t
            .graph
            .vertices()
            .iter()
            .filter(|v| v.owner() == Some("r1"))
            .cloned()
            .collect();
        assert!(d.len() >= 6, "{d:?}");
        let r = star_or_comb(&t, &d, 6).unwrap();
        assert_eq!(r.kind(), "comb");
        assert!(r.to_dot(&t.graph, "comb").contains("penwidth"));
    }

    #[test]
    fn broken_certificates_are_caught() {
        let g = star(3);
        let d: BTreeSet<u32> = [1, 2, 3].into();
        let bad = StarComb::Star {
            center: 0,
            paths: vec![vec![0, 1], vec![0, 1]],
        };
        assert!(bad.verify(&g, &d).is_err());
        let bad = StarComb::Comb {
            spine: vec![1, 0, 2],
            paths: vec![vec![1], vec![0, 3], vec![0, 2]],
        };
        assert!(bad.verify(&g, &d).is_err());
    }
}
