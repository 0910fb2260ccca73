//! Simple undirected graphs on dense vertex indices, with the structural
//! queries needed to recognise bicyclic graphs.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) refers to a vertex outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("graph is a forest; its 2-core is empty")]
    EmptyCore,
}

/// A finite simple graph. Vertices are `0..n`; edges are stored with the
/// smaller endpoint first and sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

/// Result of [`Graph::classify_bicyclic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum BicyclicClass {
    NotBicyclic,
    /// Two edge-disjoint cycles of lengths `p <= q`, joined by a path of
    /// `path_len` edges (zero when they share a vertex).
    TwoCycles {
        p: usize,
        q: usize,
        path_len: usize,
    },
    Theta,
}

/// The base of a two-cycle bicyclic graph, in original vertex indices.
///
/// Each cycle is listed in cyclic order starting from its contact vertex.
/// `path` runs from the contact of `first` to the contact of `second`; it
/// has a single vertex when the cycles share one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCycleBase {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub path: Vec<usize>,
}

impl TwoCycleBase {
    pub fn path_len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        self.first.contains(&v) || self.second.contains(&v)
    }

    pub fn in_base(&self, v: usize) -> bool {
        self.on_cycle(v) || self.path.contains(&v)
    }

    /// The cycle containing `v`, unless `v` lies on both.
    pub fn cycle_containing(&self, v: usize) -> Option<&[usize]> {
        match (self.first.contains(&v), self.second.contains(&v)) {
            (true, false) => Some(&self.first),
            (false, true) => Some(&self.second),
            _ => None,
        }
    }
}

impl Graph {
    /// Builds and validates a graph from an edge list.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut seen = BTreeSet::new();
        for &(u, v) in edge_list {
            if u >= n || v >= n {
                return Err(GraphError::IndexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            edges.push(e);
        }
        Ok(Self::from_normalized(n, edges))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    fn from_normalized(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Same vertex set with the given edges removed, then others added. Panics on an
    /// invalid edit; callers validate first.
    pub(crate) fn edited(&self, remove: &[(usize, usize)], add: &[(usize, usize)]) -> Graph {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| !remove.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (a, b)))
            .collect();
        assert_eq!(
            edges.len() + remove.len(),
            self.edges.len(),
            "removed edge absent"
        );
        edges.extend(add.iter().map(|&(x, y)| (x.min(y), x.max(y))));
        Graph::new(self.n, &edges).expect("edit produced an invalid graph")
    }

    /// Applies a vertex relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        Self::from_normalized(self.n, edges)
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances; `None` marks unreachable pairs.
    pub fn shortest_distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n).map(|s| self.bfs_distances(s)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Strips degree-one vertices until none remain. Returns the core,
    /// re-indexed compactly, and the map from core index to original index.
    pub fn two_core(&self) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut deg = self.degrees();
        let mut removed = vec![false; self.n];
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        let mapping: Vec<usize> = (0..self.n).filter(|&v| !removed[v]).collect();
        if mapping.is_empty() {
            return Err(GraphError::EmptyCore);
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in mapping.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| !removed[u] && !removed[v])
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Ok((Self::from_normalized(mapping.len(), edges), mapping))
    }

    /// Biconnected components as edge sets, plus the articulation points.
    fn blocks(&self) -> (Vec<Vec<(usize, usize)>>, BTreeSet<usize>) {
        struct State<'a> {
            g: &'a Graph,
            disc: Vec<usize>,
            low: Vec<usize>,
            time: usize,
            stack: Vec<(usize, usize)>,
            blocks: Vec<Vec<(usize, usize)>>,
            cuts: BTreeSet<usize>,
        }

        fn visit(st: &mut State<'_>, u: usize, parent: Option<usize>) {
            st.time += 1;
            st.disc[u] = st.time;
            st.low[u] = st.time;
            let mut children = 0;
            for i in 0..st.g.adj[u].len() {
                let w = st.g.adj[u][i];
                if st.disc[w] == 0 {
                    children += 1;
                    st.stack.push((u.min(w), u.max(w)));
                    visit(st, w, Some(u));
                    st.low[u] = st.low[u].min(st.low[w]);
                    if st.low[w] >= st.disc[u] {
                        if parent.is_some() || children > 1 {
                            st.cuts.insert(u);
                        }
                        let target = (u.min(w), u.max(w));
                        let mut block = Vec::new();
                        while let Some(e) = st.stack.pop() {
                            block.push(e);
                            if e == target {
                                break;
                            }
                        }
                        block.sort_unstable();
                        st.blocks.push(block);
                    }
                } else if Some(w) != parent && st.disc[w] < st.disc[u] {
                    st.stack.push((u.min(w), u.max(w)));
                    st.low[u] = st.low[u].min(st.disc[w]);
                }
            }
        }

        let mut st = State {
            g: self,
            disc: vec![0; self.n],
            low: vec![0; self.n],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
            cuts: BTreeSet::new(),
        };
        for v in 0..self.n {
            if st.disc[v] == 0 {
                visit(&mut st, v, None);
            }
        }
        (st.blocks, st.cuts)
    }

    /// Articulation points. On a disconnected graph these are the vertices
    /// whose removal splits their own component.
    pub fn cut_vertices(&self) -> BTreeSet<usize> {
        self.blocks().1
    }

    /// Locates the two cycles and the joining path of a two-cycle bicyclic
    /// graph. `None` for every other graph.
    pub fn two_cycle_base(&self) -> Option<TwoCycleBase> {
        if self.n == 0 || self.m() != self.n + 1 || !self.is_connected() {
            return None;
        }
        let (core, map) = self.two_core().ok()?;
        let (blocks, cuts) = core.blocks();
        if cuts.is_empty() {
            return None;
        }
        let mut cycles: Vec<Vec<usize>> = blocks
            .iter()
            .filter(|b| b.len() >= 3)
            .map(|b| core.cycle_order(b))
            .collect();
        debug_assert_eq!(cycles.len(), 2);
        if cycles.len() != 2 {
            return None;
        }
        // contact vertex: the one with core degree above two
        for cycle in &mut cycles {
            let pos = cycle.iter().position(|&v| core.degree(v) > 2)?;
            cycle.rotate_left(pos);
            let head = cycle[0];
            let rest: Vec<usize> = cycle[1..].to_vec();
            // start walking toward the smaller neighbour for determinism
            if rest.len() > 1 && rest[0] > rest[rest.len() - 1] {
                let mut rev = rest;
                rev.reverse();
                *cycle = std::iter::once(head).chain(rev).collect();
            }
        }
        let to_orig = |c: &Vec<usize>| c.iter().map(|&v| map[v]).collect::<Vec<_>>();
        let mut first = to_orig(&cycles[0]);
        let mut second = to_orig(&cycles[1]);
        let mut first_core = cycles[0][0];
        let mut second_core = cycles[1][0];
        let key = |c: &Vec<usize>| (c.len(), *c.iter().min().unwrap());
        if key(&second) < key(&first) {
            std::mem::swap(&mut first, &mut second);
            std::mem::swap(&mut first_core, &mut second_core);
        }
        let path = core
            .shortest_path(first_core, second_core)
            .into_iter()
            .map(|v| map[v])
            .collect();
        Some(TwoCycleBase {
            first,
            second,
            path,
        })
    }

    fn cycle_order(&self, block: &[(usize, usize)]) -> Vec<usize> {
        let verts: BTreeSet<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        let in_block = |a: usize, b: usize| block.binary_search(&(a.min(b), a.max(b))).is_ok();
        let start = *verts.iter().next().unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.adj[cur]
                .iter()
                .copied()
                .find(|&w| w != prev && in_block(cur, w));
            match next {
                Some(w) if w != start => {
                    order.push(w);
                    prev = cur;
                    cur = w;
                }
                _ => break,
            }
        }
        order
    }

    fn shortest_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([from]);
        parent[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    pub fn classify_bicyclic(&self) -> BicyclicClass {
        if self.n == 0 || self.m() != self.n + 1 || !self.is_connected() {
            return BicyclicClass::NotBicyclic;
        }
        match self.two_cycle_base() {
            Some(base) => {
                let (a, b) = (base.first.len(), base.second.len());
                BicyclicClass::TwoCycles {
                    p: a.min(b),
                    q: a.max(b),
                    path_len: base.path_len(),
                }
            }
            None => BicyclicClass::Theta,
        }
    }

    /// Vertices with exactly one neighbour that are adjacent to `v`.
    pub fn pendant_neighbors(&self, v: usize) -> Vec<usize> {
        self.adj[v]
            .iter()
            .copied()
            .filter(|&w| self.degree(w) == 1)
            .collect()
    }
}

/// Glues `g2` onto `g1` by identifying `u2` with `u1`.
///
/// Vertices of `g1` keep their indices; the remaining vertices of `g2`
/// follow in their original order. Returns the merged graph and the index
/// of the merged vertex (always `u1`).
pub fn identify_vertices(g1: &Graph, u1: usize, g2: &Graph, u2: usize) -> (Graph, usize) {
    assert!(
        u1 < g1.n() && u2 < g2.n(),
        "identification vertex out of range"
    );
    let offset = g1.n();
    let map = |v: usize| match v.cmp(&u2) {
        std::cmp::Ordering::Equal => u1,
        std::cmp::Ordering::Less => offset + v,
        std::cmp::Ordering::Greater => offset + v - 1,
    };
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(a, b)| {
        let (x, y) = (map(a), map(b));
        (x.min(y), x.max(y))
    }));
    (Graph::from_normalized(g1.n() + g2.n() - 1, edges), u1)
}
