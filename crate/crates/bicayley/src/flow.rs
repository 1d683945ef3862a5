//! Dinic max-flow on small integer-capacity networks.

use std::collections::VecDeque;

#[derive(Clone, Copy)]
struct Edge {
    to: usize,
    cap: usize,
    rev: usize,
}

pub(crate) struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(size: usize) -> Self {
        FlowNetwork {
            graph: vec![Vec::new(); size],
            level: vec![0; size],
            iter: vec![0; size],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: usize) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(Edge {
            to,
            cap,
            rev: rev_from,
        });
        self.graph[to].push(Edge {
            to: from,
            cap: 0,
            rev: rev_to,
        });
    }

    fn bfs(&mut self, start: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = VecDeque::new();
        self.level[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, target: usize, limit: usize) -> usize {
        if u == target {
            return limit;
        }
        while self.iter[u] < self.graph[u].len() {
            let i = self.iter[u];
            let e = self.graph[u][i];
            if e.cap > 0 && self.level[u] < self.level[e.to] {
                let pushed = self.dfs(e.to, target, limit.min(e.cap));
                if pushed > 0 {
                    self.graph[u][i].cap -= pushed;
                    self.graph[e.to][e.rev].cap += pushed;
                    return pushed;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Exact integral max-flow. Consumes residual capacities, so build a
    /// fresh network per source/sink pair.
    pub fn max_flow(&mut self, source: usize, target: usize) -> usize {
        let mut total = 0;
        loop {
            self.bfs(source);
            if self.level[target] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.dfs(source, target, usize::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }
}
