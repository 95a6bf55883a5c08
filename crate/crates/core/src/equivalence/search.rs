//! Canonical labelling of coordinate/codeword incidence structures by
//! individualisation and equitable refinement, with automorphism pruning.
//!
//! Vertices `0..n` are coordinates and `n..n + words.len()` are codewords of a
//! permutation-invariant spanning set. Only coordinate cells are ever
//! individualised: once every coordinate is a singleton, distinct words have
//! distinct neighbourhoods and the partition is discrete.

use std::collections::VecDeque;

const MAX_GENERATORS: usize = 256;

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) struct Incidence {
    n: usize,
    words: Vec<u64>,
    adj_start: Vec<u32>,
    adj: Vec<u32>,
}

impl Incidence {
    pub(crate) fn new(n: usize, words: Vec<u64>) -> Self {
        let nv = n + words.len();
        let mut coord_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (w, &word) in words.iter().enumerate() {
            let mut b = word;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                coord_adj[j].push((n + w) as u32);
                b &= b - 1;
            }
        }
        let mut adj_start = Vec::with_capacity(nv + 1);
        let mut adj = Vec::new();
        adj_start.push(0);
        for list in &coord_adj {
            adj.extend_from_slice(list);
            adj_start.push(adj.len() as u32);
        }
        for &word in &words {
            let mut b = word;
            while b != 0 {
                adj.push(b.trailing_zeros());
                b &= b - 1;
            }
            adj_start.push(adj.len() as u32);
        }
        Self { n, words, adj_start, adj }
    }

    fn vertices(&self) -> usize {
        self.n + self.words.len()
    }

    #[inline]
    fn neighbours(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.adj[self.adj_start[v] as usize..self.adj_start[v + 1] as usize]
    }
}

/// Ordered partition; cells are contiguous ranges of `elems`.
#[derive(Clone)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    cell: Vec<u32>,
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn initial(g: &Incidence) -> (Self, Vec<u32>) {
        let nv = g.vertices();
        let mut order: Vec<u32> = (0..g.n as u32).collect();
        let mut words: Vec<u32> = (g.n as u32..nv as u32).collect();
        words.sort_by_key(|&v| g.words[v as usize - g.n].count_ones());
        order.extend(words);
        let mut p = Partition {
            pos: vec![0; nv],
            cell: vec![0; nv],
            end: vec![0; nv],
            elems: order,
            cells: 0,
        };
        let mut starts = Vec::new();
        let colour = |v: u32| -> u32 {
            if (v as usize) < g.n {
                0
            } else {
                1 + g.words[v as usize - g.n].count_ones()
            }
        };
        let mut i = 0;
        while i < nv {
            let c = colour(p.elems[i]);
            let mut j = i;
            while j < nv && colour(p.elems[j]) == c {
                j += 1;
            }
            for idx in i..j {
                let v = p.elems[idx] as usize;
                p.pos[v] = idx as u32;
                p.cell[v] = i as u32;
            }
            p.end[i] = j as u32;
            starts.push(i as u32);
            p.cells += 1;
            i = j;
        }
        (p, starts)
    }

    fn first_open_coordinate_cell(&self, n: usize) -> Option<usize> {
        let mut i = 0;
        while i < n {
            let e = self.end[i] as usize;
            if e - i > 1 {
                return Some(i);
            }
            i = e;
        }
        None
    }

    /// Splits `v` off the front of its cell and returns the new singleton's start.
    fn individualise(&mut self, v: u32) -> u32 {
        let s = self.cell[v as usize];
        let e = self.end[s as usize];
        let pv = self.pos[v as usize];
        let other = self.elems[s as usize];
        self.elems.swap(s as usize, pv as usize);
        self.pos[other as usize] = pv;
        self.pos[v as usize] = s;
        self.end[s as usize] = s + 1;
        self.end[s as usize + 1] = e;
        for idx in s + 1..e {
            self.cell[self.elems[idx as usize] as usize] = s + 1;
        }
        self.cells += 1;
        s
    }
}

struct Refiner {
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
}

impl Refiner {
    fn new(nv: usize) -> Self {
        Self { count: vec![0; nv], touched: Vec::new(), in_queue: vec![false; nv] }
    }

    /// Refines `p` to the coarsest equitable refinement, starting from the
    /// given splitter cells. Returns an invariant hash of the splitting history.
    fn refine(&mut self, g: &Incidence, p: &mut Partition, splitters: &[u32]) -> u64 {
        let nv = p.elems.len();
        let mut trace = mix(0, p.cells as u64);
        let mut queue: VecDeque<u32> = VecDeque::with_capacity(splitters.len());
        for &s in splitters {
            if !self.in_queue[s as usize] {
                self.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        let mut touched_cells: Vec<u32> = Vec::new();
        while let Some(s) = queue.pop_front() {
            self.in_queue[s as usize] = false;
            if p.cells == nv {
                continue;
            }
            let e = p.end[s as usize];
            self.touched.clear();
            for idx in s..e {
                let u = p.elems[idx as usize];
                for &w in g.neighbours(u) {
                    if self.count[w as usize] == 0 {
                        self.touched.push(w);
                    }
                    self.count[w as usize] += 1;
                }
            }
            touched_cells.clear();
            touched_cells.extend(self.touched.iter().map(|&w| p.cell[w as usize]));
            touched_cells.sort_unstable();
            touched_cells.dedup();
            for &cs in &touched_cells {
                let ce = p.end[cs as usize];
                if ce - cs == 1 {
                    continue;
                }
                let count = &self.count;
                let slice = &mut p.elems[cs as usize..ce as usize];
                let c0 = count[slice[0] as usize];
                if slice.iter().all(|&v| count[v as usize] == c0) {
                    continue;
                }
                slice.sort_unstable_by_key(|&v| count[v as usize]);
                // Runs of equal count become new cells, in ascending count order.
                let mut runs: Vec<(u32, u32, u32)> = Vec::new();
                let mut a = cs;
                while a < ce {
                    let c = count[p.elems[a as usize] as usize];
                    let mut b = a + 1;
                    while b < ce && count[p.elems[b as usize] as usize] == c {
                        b += 1;
                    }
                    runs.push((a, b, c));
                    a = b;
                }
                trace = mix(trace, (s as u64) << 32 | cs as u64);
                for &(a, b, c) in &runs {
                    trace = mix(trace, (c as u64) << 32 | (b - a) as u64);
                }
                let largest = runs
                    .iter()
                    .enumerate()
                    .max_by(|x, y| (x.1 .1 - x.1 .0).cmp(&(y.1 .1 - y.1 .0)).then(y.0.cmp(&x.0)))
                    .map(|(i, _)| i)
                    .unwrap();
                let was_queued = self.in_queue[cs as usize];
                for (ri, &(a, b, _)) in runs.iter().enumerate() {
                    p.end[a as usize] = b;
                    for idx in a..b {
                        let v = p.elems[idx as usize] as usize;
                        p.pos[v] = idx;
                        p.cell[v] = a;
                    }
                    let enqueue = if was_queued { a != cs } else { ri != largest };
                    if enqueue && !self.in_queue[a as usize] {
                        self.in_queue[a as usize] = true;
                        queue.push_back(a);
                    }
                }
                p.cells += runs.len() - 1;
            }
            for &w in &self.touched {
                self.count[w as usize] = 0;
            }
        }
        mix(trace, p.cells as u64)
    }
}

#[derive(Clone)]
struct Leaf {
    traces: Vec<u64>,
    cert: Vec<u64>,
    lab: Vec<u32>,
    inv: Vec<u32>,
    path: Vec<u32>,
}

pub(crate) struct Labelling {
    /// `lab[j]` is the canonical position of coordinate `j`.
    pub lab: Vec<usize>,
    /// Coordinate permutations preserving the structure; `g[j]` is the image of `j`.
    pub generators: Vec<Vec<usize>>,
}

struct Search<'g> {
    g: &'g Incidence,
    refiner: Refiner,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u32>>,
}

pub(crate) fn canonical_labelling(g: &Incidence) -> Labelling {
    let mut search = Search {
        g,
        refiner: Refiner::new(g.vertices()),
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let (mut p, starts) = Partition::initial(g);
    let t = search.refiner.refine(g, &mut p, &starts);
    let mut traces = vec![t];
    let mut path = Vec::new();
    search.dfs(p, &mut traces, &mut path);
    let best = search.best.expect("search always reaches a leaf");
    Labelling {
        lab: best.lab.iter().map(|&x| x as usize).collect(),
        generators: search
            .generators
            .into_iter()
            .map(|g| g.into_iter().map(|x| x as usize).collect())
            .collect(),
    }
}

impl Search<'_> {
    fn dfs(&mut self, p: Partition, traces: &mut Vec<u64>, path: &mut Vec<u32>) -> Option<usize> {
        if let Some(best) = &self.best {
            let m = traces.len().min(best.traces.len());
            if traces[..m] < best.traces[..m] {
                return None;
            }
        }
        let n = self.g.n;
        let Some(cs) = p.first_open_coordinate_cell(n) else {
            return self.leaf(&p, traces, path);
        };
        let mut children: Vec<u32> = p.elems[cs..p.end[cs] as usize].to_vec();
        children.sort_unstable();
        let depth = path.len();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, Vec<u32>)> = None;
        for &w in &children {
            if !explored.is_empty() {
                let ngens = self.generators.len();
                if orbits.as_ref().is_none_or(|(k, _)| *k != ngens) {
                    orbits = Some((ngens, self.stabiliser_orbits(path)));
                }
                let (_, roots) = orbits.as_ref().unwrap();
                let rw = find(roots, w);
                if explored.iter().any(|&e| find(roots, e) == rw) {
                    continue;
                }
            }
            let mut q = p.clone();
            let s = q.individualise(w);
            let t = self.refiner.refine(self.g, &mut q, &[s]);
            traces.push(t);
            path.push(w);
            let jump = self.dfs(q, traces, path);
            traces.pop();
            path.pop();
            explored.push(w);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Union-find roots of the orbits of the generators fixing `path` pointwise.
    fn stabiliser_orbits(&self, path: &[u32]) -> Vec<u32> {
        let n = self.g.n;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        for gen in &self.generators {
            if path.iter().any(|&x| gen[x as usize] != x) {
                continue;
            }
            for j in 0..n as u32 {
                let a = find(&parent, j);
                let b = find(&parent, gen[j as usize]);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        parent
    }

    fn leaf(&mut self, p: &Partition, traces: &[u64], path: &[u32]) -> Option<usize> {
        let n = self.g.n;
        let lab: Vec<u32> = p.pos[..n].to_vec();
        let mut inv = vec![0u32; n];
        for (j, &l) in lab.iter().enumerate() {
            inv[l as usize] = j as u32;
        }
        let mut cert: Vec<u64> = self
            .g
            .words
            .iter()
            .map(|&w| {
                let mut out = 0u64;
                let mut b = w;
                while b != 0 {
                    let j = b.trailing_zeros() as usize;
                    out |= 1u64 << lab[j];
                    b &= b - 1;
                }
                out
            })
            .collect();
        cert.sort_unstable();
        let leaf = Leaf { traces: traces.to_vec(), cert, lab, inv, path: path.to_vec() };

        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };

        let mut jump = None;
        if leaf.cert == first.cert {
            let gamma = automorphism(first, &leaf);
            jump = divergence_if_mapped(&gamma, first, &leaf);
            self.add_generator(gamma);
        }
        let best = self.best.as_ref().unwrap();
        match (&leaf.traces, &leaf.cert).cmp(&(&best.traces, &best.cert)) {
            std::cmp::Ordering::Greater => self.best = Some(leaf),
            std::cmp::Ordering::Equal => {
                if jump.is_none() {
                    let gamma = automorphism(best, &leaf);
                    jump = divergence_if_mapped(&gamma, best, &leaf);
                    self.add_generator(gamma);
                }
            }
            std::cmp::Ordering::Less => {}
        }
        jump
    }

    fn add_generator(&mut self, gamma: Vec<u32>) {
        if self.generators.len() >= MAX_GENERATORS {
            return;
        }
        if gamma.iter().enumerate().all(|(j, &x)| j as u32 == x) {
            return;
        }
        if !self.generators.contains(&gamma) {
            self.generators.push(gamma);
        }
    }
}

/// The coordinate permutation carrying leaf `from` onto leaf `to`.
fn automorphism(from: &Leaf, to: &Leaf) -> Vec<u32> {
    from.lab.iter().map(|&l| to.inv[l as usize]).collect()
}

/// If `gamma` maps the path of `from` onto the path of `to`, the subtree at the
/// point where the paths diverge is an image of one already searched; returns
/// the depth of the node to resume from.
fn divergence_if_mapped(gamma: &[u32], from: &Leaf, to: &Leaf) -> Option<usize> {
    if from.path.len() != to.path.len() {
        return None;
    }
    if from.path.iter().zip(&to.path).any(|(&a, &b)| gamma[a as usize] != b) {
        return None;
    }
    from.path.iter().zip(&to.path).position(|(a, b)| a != b)
}

fn find(parent: &[u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        x = parent[x as usize];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_coordinates_have_symmetric_group() {
        let g = Incidence::new(6, Vec::new());
        let l = canonical_labelling(&g);
        let mut lab = l.lab.clone();
        lab.sort_unstable();
        assert_eq!(lab, (0..6).collect::<Vec<_>>());
        // generators must act transitively
        let mut seen = [false; 6];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for gen in &l.generators {
                let y = gen[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn labelling_is_a_permutation_for_single_word() {
        let g = Incidence::new(7, vec![0b0110101]);
        let l = canonical_labelling(&g);
        let mut lab = l.lab.clone();
        lab.sort_unstable();
        assert_eq!(lab, (0..7).collect::<Vec<_>>());
        for gen in &l.generators {
            let img = (0..7).fold(0u64, |acc, j| acc | (((0b0110101u64 >> j) & 1) << gen[j]));
            assert_eq!(img, 0b0110101);
        }
    }
}
