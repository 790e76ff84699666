//! Exact integer max-flow / min-cut (Dinic).
//!
//! The returned cut is the inclusion-wise maximal minimum cut: its source
//! side is every node that cannot reach the sink in the final residual
//! network.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Capacity = i128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ArcCap {
    Finite(Capacity),
    Unbounded,
}

#[derive(Clone, Debug)]
struct Arc {
    from: usize,
    to: usize,
    cap: ArcCap,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub value: Capacity,
    /// `source_side[v]` is true for nodes on the maximal source side.
    pub source_side: Vec<bool>,
    /// Flow on each arc, indexed by the id returned from `add_arc`.
    pub arc_flow: Vec<Capacity>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: Capacity) -> usize {
        self.arcs.push(Arc {
            from,
            to,
            cap: ArcCap::Finite(cap),
        });
        self.arcs.len() - 1
    }

    /// An arc whose capacity exceeds the sum of all finite capacities.
    pub fn add_unbounded_arc(&mut self, from: usize, to: usize) -> usize {
        self.arcs.push(Arc {
            from,
            to,
            cap: ArcCap::Unbounded,
        });
        self.arcs.len() - 1
    }

    fn validate(&self) -> Result<Capacity> {
        if self.source >= self.nodes || self.sink >= self.nodes {
            return Err(Error::InvalidNetwork("terminal out of range".into()));
        }
        if self.source == self.sink {
            return Err(Error::InvalidNetwork("source equals sink".into()));
        }
        let mut total: Capacity = 0;
        for (i, a) in self.arcs.iter().enumerate() {
            if a.from >= self.nodes || a.to >= self.nodes {
                return Err(Error::InvalidNetwork(format!("arc {i} has an unknown endpoint")));
            }
            if let ArcCap::Finite(c) = a.cap {
                if c < 0 {
                    return Err(Error::InvalidNetwork(format!("arc {i} has negative capacity")));
                }
                total = total
                    .checked_add(c)
                    .ok_or_else(|| Error::InvalidNetwork("capacity overflow".into()))?;
            }
        }
        total
            .checked_add(1)
            .ok_or_else(|| Error::InvalidNetwork("capacity overflow".into()))
    }

    /// Capacity of the cut whose source side is `side`.
    pub fn cut_capacity(&self, side: &[bool]) -> Result<Capacity> {
        let unbounded = self.validate()?;
        Ok(self
            .arcs
            .iter()
            .filter(|a| side[a.from] && !side[a.to])
            .map(|a| match a.cap {
                ArcCap::Finite(c) => c,
                ArcCap::Unbounded => unbounded,
            })
            .sum())
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<Capacity>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

impl Residual {
    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.adj[v] {
                let w = self.head[id];
                if self.cap[id] > 0 && self.level[w] == usize::MAX {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, budget: Capacity) -> Capacity {
        if v == t {
            return budget;
        }
        while self.next[v] < self.adj[v].len() {
            let id = self.adj[v][self.next[v]];
            let w = self.head[id];
            if self.cap[id] > 0 && self.level[w] == self.level[v] + 1 {
                let pushed = self.dfs(w, t, budget.min(self.cap[id]));
                if pushed > 0 {
                    self.cap[id] -= pushed;
                    self.cap[id ^ 1] += pushed;
                    return pushed;
                }
            }
            self.next[v] += 1;
        }
        0
    }
}

pub fn max_flow(net: &FlowNetwork) -> Result<MinCut> {
    let unbounded = net.validate()?;
    let n = net.nodes;
    let mut res = Residual {
        head: Vec::with_capacity(2 * net.arcs.len()),
        cap: Vec::with_capacity(2 * net.arcs.len()),
        adj: vec![Vec::new(); n],
        level: vec![usize::MAX; n],
        next: vec![0; n],
    };
    for a in &net.arcs {
        let c = match a.cap {
            ArcCap::Finite(c) => c,
            ArcCap::Unbounded => unbounded,
        };
        res.adj[a.from].push(res.head.len());
        res.head.push(a.to);
        res.cap.push(c);
        res.adj[a.to].push(res.head.len());
        res.head.push(a.from);
        res.cap.push(0);
    }

    let mut value: Capacity = 0;
    while res.bfs(net.source, net.sink) {
        res.next.fill(0);
        loop {
            let pushed = res.dfs(net.source, net.sink, unbounded);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }

    // Nodes that can still reach the sink through residual arcs.
    let mut reaches_sink = vec![false; n];
    reaches_sink[net.sink] = true;
    let mut queue = VecDeque::from([net.sink]);
    while let Some(w) = queue.pop_front() {
        for &id in &res.adj[w] {
            // `id` leaves w; its partner `id ^ 1` enters w from head[id].
            let v = res.head[id];
            if res.cap[id ^ 1] > 0 && !reaches_sink[v] {
                reaches_sink[v] = true;
                queue.push_back(v);
            }
        }
    }

    let arc_flow = (0..net.arcs.len()).map(|i| res.cap[2 * i + 1]).collect();
    Ok(MinCut {
        value,
        source_side: reaches_sink.iter().map(|r| !r).collect(),
        arc_flow,
    })
}
