//! Successive-shortest-path min-cost flow on integer costs.
//!
//! Costs may be negative; shortest paths use Bellman-Ford, which keeps the
//! implementation free of potential bookkeeping and is fast enough at the
//! instance sizes this crate targets.

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i128,
    rev: usize,
}

#[derive(Debug, Clone)]
pub struct MinCostFlow {
    adj: Vec<Vec<Arc>>,
}

/// Handle to a forward arc returned by [`MinCostFlow::add_arc`].
#[derive(Debug, Clone, Copy)]
pub struct ArcRef {
    from: usize,
    slot: usize,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i128) -> ArcRef {
        let slot = self.adj[from].len();
        let rev_slot = self.adj[to].len() + usize::from(from == to);
        self.adj[from].push(Arc {
            to,
            cap,
            cost,
            rev: rev_slot,
        });
        self.adj[to].push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
            rev: slot,
        });
        ArcRef { from, slot }
    }

    /// Flow currently on a forward arc.
    pub fn flow(&self, arc: ArcRef) -> i64 {
        let a = &self.adj[arc.from][arc.slot];
        self.adj[a.to][a.rev].cap
    }

    fn shortest_paths(&self, source: usize) -> (Vec<Option<i128>>, Vec<Option<(usize, usize)>>) {
        let n = self.adj.len();
        let mut dist: Vec<Option<i128>> = vec![None; n];
        let mut parent = vec![None; n];
        dist[source] = Some(0);
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                let Some(du) = dist[u] else { continue };
                for (slot, a) in self.adj[u].iter().enumerate() {
                    if a.cap <= 0 {
                        continue;
                    }
                    let cand = du + a.cost;
                    if dist[a.to].is_none_or(|dv| cand < dv) {
                        dist[a.to] = Some(cand);
                        parent[a.to] = Some((u, slot));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (dist, parent)
    }

    /// Augments along shortest `source -> sink` paths while their cost is
    /// negative. Returns the total cost of the flow (minimal over all flow
    /// amounts).
    pub fn minimize_cost(&mut self, source: usize, sink: usize) -> i128 {
        let mut total = 0i128;
        loop {
            let (dist, parent) = self.shortest_paths(source);
            let Some(d) = dist[sink] else { break };
            if d >= 0 {
                break;
            }
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while v != source {
                let (u, slot) = parent[v].expect("path recorded");
                bottleneck = bottleneck.min(self.adj[u][slot].cap);
                v = u;
            }
            let mut v = sink;
            while v != source {
                let (u, slot) = parent[v].expect("path recorded");
                let rev = self.adj[u][slot].rev;
                self.adj[u][slot].cap -= bottleneck;
                self.adj[v][rev].cap += bottleneck;
                v = u;
            }
            total += d * bottleneck as i128;
        }
        total
    }

    /// Node potentials certifying optimality of the current flow once
    /// `source` and `sink` are identified: every residual arc `i -> j` has
    /// `cost + p[i] - p[j] >= 0`. Normalized so that `p[source] == 0`.
    ///
    /// Returns `None` if a negative residual cycle exists (flow not optimal).
    pub fn potentials(&self, source: usize, sink: usize) -> Option<Vec<i128>> {
        let n = self.adj.len();
        let mut p = vec![0i128; n];
        for round in 0..=n {
            let mut changed = false;
            let relax = |p: &mut Vec<i128>, from: usize, to: usize, cost: i128| {
                if p[from] + cost < p[to] {
                    p[to] = p[from] + cost;
                    true
                } else {
                    false
                }
            };
            for u in 0..n {
                for a in &self.adj[u] {
                    if a.cap > 0 {
                        changed |= relax(&mut p, u, a.to, a.cost);
                    }
                }
            }
            changed |= relax(&mut p, source, sink, 0);
            changed |= relax(&mut p, sink, source, 0);
            if !changed {
                let base = p[source];
                return Some(p.into_iter().map(|x| x - base).collect());
            }
            if round == n {
                return None;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_only_profitable_paths() {
        // s -> a -> t (cost -3) and s -> b -> t (cost +2)
        let mut f = MinCostFlow::new(4);
        let sa = f.add_arc(0, 1, 1, 0);
        let at = f.add_arc(1, 3, 1, -3);
        let sb = f.add_arc(0, 2, 1, 0);
        f.add_arc(2, 3, 1, 2);
        assert_eq!(f.minimize_cost(0, 3), -3);
        assert_eq!(f.flow(sa), 1);
        assert_eq!(f.flow(at), 1);
        assert_eq!(f.flow(sb), 0);
        let p = f.potentials(0, 3).unwrap();
        assert_eq!(p[0], 0);
        assert_eq!(p[3], 0);
    }

    #[test]
    fn reroutes_through_residual_arcs() {
        // classic crossing instance: greedy path must be undone
        let mut f = MinCostFlow::new(6);
        let (s, a, b, c, d, t) = (0, 1, 2, 3, 4, 5);
        f.add_arc(s, a, 1, 0);
        f.add_arc(s, b, 1, 0);
        f.add_arc(a, c, 1, -5);
        f.add_arc(a, d, 1, -4);
        f.add_arc(b, c, 1, -4);
        f.add_arc(c, t, 1, 0);
        f.add_arc(d, t, 1, 0);
        assert_eq!(f.minimize_cost(s, t), -8);
    }
}
