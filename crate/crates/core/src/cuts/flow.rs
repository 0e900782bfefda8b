//! Dinic max-flow on small undirected capacity networks.
//!
//! Capacities are finite integers; an "infinite" capacity is represented by a
//! value larger than the total finite capacity of the network, so any flow that
//! exceeds the finite budget must have used an infinite-capacity route.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    rev: usize,
}

#[derive(Debug, Clone)]
pub struct Network {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    original: Vec<u64>,
}

impl Network {
    pub fn new(n: usize) -> Network {
        Network {
            adj: vec![Vec::new(); n],
            arcs: Vec::new(),
            original: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Directed arc `u -> v`; returns its id.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.push_pair(u, v, cap, 0)
    }

    /// Undirected edge: two opposite arcs, each the residual of the other.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.push_pair(u, v, cap, cap)
    }

    fn push_pair(&mut self, u: usize, v: usize, cap_uv: u64, cap_vu: u64) -> usize {
        let a = self.arcs.len();
        self.arcs.push(Arc { to: v, cap: cap_uv, rev: a + 1 });
        self.arcs.push(Arc { to: u, cap: cap_vu, rev: a });
        self.original.push(cap_uv);
        self.original.push(cap_vu);
        self.adj[u].push(a);
        self.adj[v].push(a + 1);
        a
    }

    /// Flow currently carried by arc `a` in its forward direction.
    pub fn flow_on(&self, a: usize) -> i64 {
        self.original[a] as i64 - self.arcs[a].cap as i64
    }

    pub fn arc_head(&self, a: usize) -> usize {
        self.arcs[a].to
    }

    pub fn arc_tail(&self, a: usize) -> usize {
        self.arcs[self.arcs[a].rev].to
    }

    /// Forward arc ids (the even ones) in insertion order.
    pub fn arc_ids(&self) -> impl Iterator<Item = usize> {
        (0..self.arcs.len()).step_by(2)
    }

    pub fn original_cap(&self, a: usize) -> u64 {
        self.original[a]
    }

    /// Restores all capacities, discarding any flow.
    pub fn reset(&mut self) {
        for (a, c) in self.arcs.iter_mut().zip(&self.original) {
            a.cap = *c;
        }
    }

    /// Sets both directions of the pair starting at `a` to zero capacity.
    pub fn disable(&mut self, a: usize) {
        self.original[a] = 0;
        self.original[a + 1] = 0;
        self.arcs[a].cap = 0;
        self.arcs[a + 1].cap = 0;
    }

    /// Maximum flow from `s` to `t`, stopping early once `limit` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        if s == t {
            return limit;
        }
        let n = self.adj.len();
        let mut total = 0u64;
        let mut level = vec![usize::MAX; n];
        let mut it = vec![0usize; n];
        while total < limit {
            level.iter_mut().for_each(|l| *l = usize::MAX);
            level[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &a in &self.adj[u] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && level[arc.to] == usize::MAX {
                        level[arc.to] = level[u] + 1;
                        q.push_back(arc.to);
                    }
                }
            }
            if level[t] == usize::MAX {
                break;
            }
            it.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.augment(s, t, limit - total, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    /// One blocking-flow augmentation along an admissible path (iterative DFS).
    fn augment(&mut self, s: usize, t: usize, want: u64, level: &[usize], it: &mut [usize]) -> u64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let push = path
                    .iter()
                    .map(|&a| self.arcs[a].cap)
                    .min()
                    .unwrap_or(want)
                    .min(want);
                for &a in &path {
                    self.arcs[a].cap -= push;
                    let r = self.arcs[a].rev;
                    self.arcs[r].cap += push;
                }
                return push;
            }
            let mut advanced = false;
            while it[u] < self.adj[u].len() {
                let a = self.adj[u][it[u]];
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] == level[u] + 1 {
                    path.push(a);
                    u = arc.to;
                    advanced = true;
                    break;
                }
                it[u] += 1;
            }
            if !advanced {
                if u == s {
                    return 0;
                }
                let a = path.pop().expect("non-source node has an incoming path arc");
                u = self.arc_tail(a);
                it[u] += 1;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }

    /// Decomposes the current flow into unit `s`-`t` paths (as node lists).
    /// Cancels opposite flows on undirected pairs first.
    pub fn unit_paths(&self, s: usize, t: usize, count: u64) -> Vec<Vec<usize>> {
        let mut flow: Vec<i64> = (0..self.arcs.len()).map(|a| self.flow_on(a)).collect();
        for a in self.arc_ids() {
            let (f, r) = (flow[a], flow[a + 1]);
            if f > 0 && r > 0 {
                let m = f.min(r);
                flow[a] -= m;
                flow[a + 1] -= m;
            }
        }
        let mut paths = Vec::new();
        for _ in 0..count {
            let mut path = vec![s];
            let mut used = Vec::new();
            let mut u = s;
            let mut visited = vec![false; self.adj.len()];
            visited[s] = true;
            while u != t {
                let next = self.adj[u]
                    .iter()
                    .copied()
                    .find(|&a| flow[a] > 0 && !visited[self.arcs[a].to]);
                match next {
                    Some(a) => {
                        used.push(a);
                        u = self.arcs[a].to;
                        visited[u] = true;
                        path.push(u);
                    }
                    None => break,
                }
            }
            if u != t {
                break;
            }
            for a in used {
                flow[a] -= 1;
            }
            paths.push(path);
        }
        paths
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_paths() {
        let mut n = Network::new(4);
        n.add_edge(0, 1, 1);
        n.add_edge(1, 3, 1);
        n.add_edge(0, 2, 1);
        n.add_edge(2, 3, 1);
        n.add_edge(1, 2, 1);
        assert_eq!(n.max_flow(0, 3, 100), 2);
        assert_eq!(n.unit_paths(0, 3, 2).len(), 2);
    }

    #[test]
    fn limit_stops_early() {
        let mut n = Network::new(2);
        n.add_edge(0, 1, 1000);
        assert_eq!(n.max_flow(0, 1, 7), 7);
    }

    #[test]
    fn residual_side_is_a_min_cut() {
        let mut n = Network::new(3);
        n.add_edge(0, 1, 5);
        n.add_edge(1, 2, 1);
        assert_eq!(n.max_flow(0, 2, 100), 1);
        let side = n.residual_reachable(0);
        assert!(side[0] && side[1] && !side[2]);
    }
}
