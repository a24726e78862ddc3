//! Integral max-flow (Dinic) and circulation feasibility with lower bounds.

use std::collections::VecDeque;

struct Arc {
    to: usize,
    cap: i64,
}

pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        debug_assert!(cap >= 0);
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let Arc { to, cap } = self.arcs[a];
                    if cap > 0 && level[to] == usize::MAX {
                        level[to] = level[u] + 1;
                        queue.push_back(to);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, i64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, u: usize, t: usize, limit: i64, level: &[usize], next: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let a = self.adj[u][next[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && level[to] == level[u] + 1 {
                let got = self.augment(to, t, limit.min(cap), level, next);
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0
    }
}

/// Feasibility of a circulation on `nodes` nodes where every arc carries a
/// flow in `[lo, hi]` (Hoffman's condition, decided by one max-flow).
pub(crate) fn circulation_feasible(nodes: usize, arcs: &[(usize, usize, i64, i64)]) -> bool {
    let (src, snk) = (nodes, nodes + 1);
    let mut net = FlowNetwork::new(nodes + 2);
    let mut excess = vec![0i64; nodes];
    for &(u, v, lo, hi) in arcs {
        if lo > hi {
            return false;
        }
        if hi > lo {
            net.add_arc(u, v, hi - lo);
        }
        excess[v] += lo;
        excess[u] -= lo;
    }
    let mut demand = 0;
    for (i, &e) in excess.iter().enumerate() {
        if e > 0 {
            net.add_arc(src, i, e);
            demand += e;
        } else if e < 0 {
            net.add_arc(i, snk, -e);
        }
    }
    net.max_flow(src, snk) == demand
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_flow_small() {
        let mut n = FlowNetwork::new(4);
        n.add_arc(0, 1, 3);
        n.add_arc(0, 2, 2);
        n.add_arc(1, 2, 1);
        n.add_arc(1, 3, 2);
        n.add_arc(2, 3, 3);
        assert_eq!(n.max_flow(0, 3), 5);
    }

    #[test]
    fn circulation() {
        // triangle cycle needing at least 2 units on one arc
        assert!(circulation_feasible(3, &[(0, 1, 2, 5), (1, 2, 0, 3), (2, 0, 0, 3)]));
        assert!(!circulation_feasible(3, &[(0, 1, 2, 5), (1, 2, 0, 1), (2, 0, 0, 3)]));
        assert!(!circulation_feasible(2, &[(0, 1, 3, 2)]));
    }
}
