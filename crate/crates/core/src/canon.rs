//! Canonical labeling of vertex-colored graphs by individualization and
//! refinement.
//!
//! The search tree is explored completely up to two kinds of pruning: a
//! node whose refinement trace differs from the first leaf's and exceeds the
//! best leaf's cannot lead to the canonical leaf, and a child in the same
//! orbit as an explored sibling under known automorphisms fixing the path
//! leads to an isomorphic subtree. The canonical leaf minimizes the sequence
//! of traces followed by the relabeled adjacency. Automorphisms come from
//! leaves that reproduce the first or best leaf's adjacency, and the group
//! order is the product of the orbit lengths along the first path.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// An undirected graph in compressed adjacency form.
#[derive(Clone, Debug)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds the graph on `n` vertices; each edge is listed once.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut deg = alloc::vec![0usize; n + 1];
        for &(a, b) in edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut offsets = alloc::vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut fill = offsets.clone();
        let mut targets = alloc::vec![0u32; offsets[n]];
        for &(a, b) in edges {
            targets[fill[a as usize]] = b;
            fill[a as usize] += 1;
            targets[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { offsets, targets }
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// Result of [`canonize`].
#[derive(Clone, Debug)]
pub struct Canon {
    /// `order[p]` is the vertex placed at position `p`.
    pub order: Vec<u32>,
    /// `position[v]` is the position of vertex `v`; a canonical labeling.
    pub position: Vec<u32>,
    /// The graph relabeled by `position`, as sorted neighbor lists in
    /// position order, each list preceded by its length.
    pub certificate: Vec<u32>,
    pub aut_order: u128,
    /// Automorphisms found, as vertex images.
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell holding each vertex.
    cell: Vec<u32>,
    /// Indexed by cell start: one past the end of the cell.
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn new(colors: &[u64]) -> Self {
        let n = colors.len();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&v| colors[v as usize]);
        let mut pos = alloc::vec![0u32; n];
        let mut cell = alloc::vec![0u32; n];
        let mut end = alloc::vec![0u32; n];
        let mut cells = 0;
        let mut s = 0;
        while s < n {
            let mut e = s + 1;
            while e < n && colors[elems[e] as usize] == colors[elems[s] as usize] {
                e += 1;
            }
            for p in s..e {
                pos[elems[p] as usize] = p as u32;
                cell[elems[p] as usize] = s as u32;
            }
            end[s] = e as u32;
            cells += 1;
            s = e;
        }
        Partition {
            elems,
            pos,
            cell,
            end,
            cells,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        core::iter::from_fn(move || {
            if s >= self.elems.len() {
                return None;
            }
            let cur = s;
            s = self.end[s] as usize;
            Some(cur)
        })
    }

    /// First smallest cell with more than one vertex.
    fn target(&self) -> Option<usize> {
        self.starts()
            .filter(|&s| self.end[s] as usize - s > 1)
            .min_by_key(|&s| (self.end[s] as usize - s, s))
    }

    /// Splits `v` off the front of its cell and returns its new cell start.
    fn individualize(&mut self, v: u32) -> usize {
        let s = self.cell[v as usize] as usize;
        let e = self.end[s] as usize;
        let p = self.pos[v as usize] as usize;
        let first = self.elems[s];
        self.elems.swap(s, p);
        self.pos[first as usize] = p as u32;
        self.pos[v as usize] = s as u32;
        self.end[s] = (s + 1) as u32;
        self.end[s + 1] = e as u32;
        for q in s + 1..e {
            self.cell[self.elems[q] as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than the current
    /// one, starting from the splitter cells in `queue`. Appends a trace of
    /// the splits to `trace`.
    fn refine(&mut self, g: &Graph, queue: &mut VecDeque<usize>, queued: &mut [bool], trace: &mut Vec<u32>) {
        let n = self.elems.len();
        let mut count = alloc::vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if self.is_discrete() {
                queue.iter().for_each(|&c| queued[c] = false);
                queue.clear();
                break;
            }
            let we = self.end[w] as usize;
            for p in w..we {
                let v = self.elems[p] as usize;
                for &u in g.neighbors(v) {
                    if count[u as usize] == 0 {
                        touched.push(u);
                    }
                    count[u as usize] += 1;
                }
            }
            let mut cells: Vec<usize> = touched.iter().map(|&u| self.cell[u as usize] as usize).collect();
            cells.sort_unstable();
            cells.dedup();
            for &c in &cells {
                let e = self.end[c] as usize;
                if e - c == 1 {
                    continue;
                }
                let slice = &mut self.elems[c..e];
                let first = count[slice[0] as usize];
                if slice.iter().all(|&v| count[v as usize] == first) {
                    continue;
                }
                slice.sort_by_key(|&v| count[v as usize]);
                let mut fragments: Vec<(usize, usize)> = Vec::new();
                let mut s = c;
                while s < e {
                    let k = count[self.elems[s] as usize];
                    let mut f = s + 1;
                    while f < e && count[self.elems[f] as usize] == k {
                        f += 1;
                    }
                    fragments.push((s, f));
                    s = f;
                }
                trace.push(c as u32);
                trace.push(fragments.len() as u32);
                for &(s, f) in &fragments {
                    trace.push(count[self.elems[s] as usize]);
                    trace.push((f - s) as u32);
                    self.end[s] = f as u32;
                    for p in s..f {
                        let v = self.elems[p] as usize;
                        self.pos[v] = p as u32;
                        self.cell[v] = s as u32;
                    }
                }
                self.cells += fragments.len() - 1;
                let largest = fragments
                    .iter()
                    .enumerate()
                    .max_by(|a, b| (a.1 .1 - a.1 .0).cmp(&(b.1 .1 - b.1 .0)).then(b.0.cmp(&a.0)))
                    .map(|(k, _)| k)
                    .expect("at least two fragments");
                let was_queued = queued[c];
                for (k, &(s, _)) in fragments.iter().enumerate() {
                    if queued[s] || (!was_queued && k == largest) {
                        continue;
                    }
                    queued[s] = true;
                    queue.push_back(s);
                }
            }
            for &u in &touched {
                count[u as usize] = 0;
            }
            touched.clear();
        }
    }

    fn certificate(&self, g: &Graph) -> Vec<u32> {
        let mut out = Vec::with_capacity(g.targets.len() + self.elems.len());
        let mut buf = Vec::new();
        for &v in &self.elems {
            buf.clear();
            buf.extend(g.neighbors(v as usize).iter().map(|&u| self.pos[u as usize]));
            buf.sort_unstable();
            out.push(buf.len() as u32);
            out.extend_from_slice(&buf);
        }
        out
    }
}

struct Leaf {
    traces: Vec<Vec<u32>>,
    certificate: Vec<u32>,
    elems: Vec<u32>,
    pos: Vec<u32>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// The vertices individualized on the first path.
    first_path: Vec<u32>,
    generators: Vec<Vec<u32>>,
    traces: Vec<Vec<u32>>,
    path: Vec<u32>,
    /// Bumped whenever `best` is replaced.
    best_version: usize,
}

/// Comparison state of the current path against a stored leaf.
#[derive(Copy, Clone, PartialEq, Eq)]
enum Track {
    Equal,
    Less,
    Greater,
}

impl Track {
    fn step(self, mine: &[u32], theirs: Option<&Vec<u32>>) -> Track {
        match (self, theirs) {
            (Track::Equal, Some(t)) => match mine.cmp(t.as_slice()) {
                Ordering::Less => Track::Less,
                Ordering::Equal => Track::Equal,
                Ordering::Greater => Track::Greater,
            },
            (Track::Equal, None) => Track::Greater,
            (s, _) => s,
        }
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

impl<'a> Search<'a> {
    /// Union-find roots of the group generated by the known automorphisms
    /// that fix every vertex of `fixed`.
    fn orbits(&self, fixed: &[u32]) -> Vec<u32> {
        let n = self.g.order();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        for gen in &self.generators {
            if fixed.iter().any(|&v| gen[v as usize] != v) {
                continue;
            }
            for v in 0..n {
                let (a, b) = (find(&mut parent, v as u32), find(&mut parent, gen[v]));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        for v in 0..n as u32 {
            find(&mut parent, v);
        }
        parent
    }

    fn automorphism(from: &Leaf, to: &Leaf) -> Vec<u32> {
        // the vertex at position p of `from` maps to the vertex at p of `to`
        let mut gen = alloc::vec![0u32; from.elems.len()];
        for (p, &v) in from.elems.iter().enumerate() {
            gen[v as usize] = to.elems[p];
        }
        gen
    }

    fn record(&mut self, gen: Vec<u32>) {
        if gen.iter().enumerate().all(|(v, &x)| v as u32 == x) || self.generators.contains(&gen) {
            return;
        }
        self.generators.push(gen);
    }

    fn node(&mut self, part: Partition, mut vs_first: Track, mut vs_best: Track) {
        let depth = self.traces.len();
        if part.is_discrete() {
            let cert = part.certificate(self.g);
            let leaf = Leaf {
                traces: self.traces.clone(),
                certificate: cert,
                elems: part.elems,
                pos: part.pos,
            };
            if self.first.is_none() {
                self.first_path = self.path.clone();
                self.first = Some(Leaf {
                    traces: leaf.traces.clone(),
                    certificate: leaf.certificate.clone(),
                    elems: leaf.elems.clone(),
                    pos: leaf.pos.clone(),
                });
                self.best = Some(leaf);
                self.best_version += 1;
                return;
            }
            if vs_first == Track::Equal && self.first.as_ref().is_some_and(|f| f.certificate == leaf.certificate) {
                let gen = Self::automorphism(self.first.as_ref().expect("set"), &leaf);
                self.record(gen);
                return;
            }
            let ord = match vs_best {
                Track::Less => Ordering::Less,
                Track::Greater => Ordering::Greater,
                Track::Equal => leaf.certificate.cmp(&self.best.as_ref().expect("set").certificate),
            };
            match ord {
                Ordering::Equal => {
                    let gen = Self::automorphism(self.best.as_ref().expect("set"), &leaf);
                    self.record(gen);
                }
                Ordering::Less => {
                    self.best = Some(leaf);
                    self.best_version += 1;
                }
                Ordering::Greater => {}
            }
            return;
        }
        let target = part.target().expect("not discrete");
        let end = part.end[target] as usize;
        let mut cell: Vec<u32> = part.elems[target..end].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let had_first = self.first.is_some();
        let version = self.best_version;
        for &v in &cell {
            // a leaf found below this node shares its path
            if !had_first && self.first.is_some() {
                vs_first = Track::Equal;
            }
            if self.best_version != version {
                vs_best = Track::Equal;
            }
            if !explored.is_empty() {
                let orbits = self.orbits(&self.path);
                let root = orbits[v as usize];
                if explored.iter().any(|&w| orbits[w as usize] == root) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = part.clone();
            let s = child.individualize(v);
            let mut trace = alloc::vec![s as u32];
            let n = child.elems.len();
            let mut queued = alloc::vec![false; n];
            let mut queue = VecDeque::new();
            queue.push_back(s);
            queued[s] = true;
            child.refine(self.g, &mut queue, &mut queued, &mut trace);
            let f = vs_first.step(&trace, self.first.as_ref().and_then(|l| l.traces.get(depth)));
            let b = vs_best.step(&trace, self.best.as_ref().and_then(|l| l.traces.get(depth)));
            if self.first.is_some() && f != Track::Equal && b == Track::Greater {
                continue;
            }
            self.traces.push(trace);
            self.path.push(v);
            self.node(child, f, b);
            self.path.pop();
            self.traces.pop();
        }
    }
}

/// Canonical labeling of `g` with initial colors `colors`: vertices of
/// smaller color come first, and isomorphic colored graphs receive the same
/// certificate.
pub fn canonize(g: &Graph, colors: &[u64]) -> Canon {
    let n = g.order();
    assert_eq!(colors.len(), n);
    let mut part = Partition::new(colors);
    let mut queued = alloc::vec![false; n];
    let mut queue: VecDeque<usize> = part.starts().collect();
    for &s in &queue {
        queued[s] = true;
    }
    let mut root_trace = Vec::new();
    part.refine(g, &mut queue, &mut queued, &mut root_trace);
    let mut search = Search {
        g,
        first: None,
        best: None,
        first_path: Vec::new(),
        generators: Vec::new(),
        traces: Vec::new(),
        path: Vec::new(),
        best_version: 0,
    };
    search.node(part, Track::Equal, Track::Equal);
    let mut aut_order: u128 = 1;
    let first_path = search.first_path.clone();
    for k in 0..first_path.len() {
        let orbits = search.orbits(&first_path[..k]);
        let root = orbits[first_path[k] as usize];
        aut_order *= orbits.iter().filter(|&&r| r == root).count() as u128;
    }
    let best = search.best.expect("every tree has a leaf");
    Canon {
        order: best.elems,
        position: best.pos,
        certificate: best.certificate,
        aut_order,
        generators: search.generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges)
    }

    #[test]
    fn cycle_automorphisms() {
        for n in 3..9 {
            let c = canonize(&cycle(n), &alloc::vec![0; n as usize]);
            assert_eq!(c.aut_order, 2 * n as u128, "C{n}");
        }
    }

    #[test]
    fn relabeled_graphs_share_certificates() {
        // Petersen graph: outer 5-cycle, inner pentagram, spokes
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let g = Graph::from_edges(10, &edges);
        let a = canonize(&g, &[0; 10]);
        assert_eq!(a.aut_order, 120);
        let sigma = [3u32, 7, 1, 9, 0, 2, 8, 5, 4, 6];
        let moved: Vec<(u32, u32)> = edges.iter().map(|&(x, y)| (sigma[x as usize], sigma[y as usize])).collect();
        let b = canonize(&Graph::from_edges(10, &moved), &[0; 10]);
        assert_eq!(a.certificate, b.certificate);
        assert_eq!(b.aut_order, 120);
    }

    #[test]
    fn colors_are_respected() {
        let g = cycle(6);
        let mut colors = alloc::vec![0u64; 6];
        colors[0] = 1;
        let c = canonize(&g, &colors);
        assert_eq!(c.aut_order, 2);
        assert_eq!(c.order[5], 0);
    }

    #[test]
    fn non_isomorphic_graphs_differ() {
        // C6 versus two triangles
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let a = canonize(&cycle(6), &[0; 6]);
        let b = canonize(&two, &[0; 6]);
        assert_ne!(a.certificate, b.certificate);
        assert_eq!(b.aut_order, 72);
    }
}
