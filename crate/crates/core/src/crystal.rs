//! Abstract type A crystals: graph construction, Stembridge axiom audit,
//! characters and DOT output.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

/// A seminormal crystal of type A_{rank} given by its lowering and raising operators.
/// Weights have `rank + 1` coordinates and `f_i` moves a unit from coordinate i to i+1.
pub trait Crystal {
    type Node: Clone + Eq + Hash;
    fn rank(&self) -> usize;
    fn f(&self, x: &Self::Node, i: usize) -> Option<Self::Node>;
    fn e(&self, x: &Self::Node, i: usize) -> Option<Self::Node>;
    fn weight(&self, x: &Self::Node) -> Vec<i64>;
}

/// A finite colored digraph with node weights. Colors are `1..=rank`.
#[derive(Clone, Debug)]
pub struct CrystalGraph<N> {
    rank: usize,
    nodes: Vec<N>,
    weights: Vec<Vec<i64>>,
    edges: Vec<(usize, usize, usize)>,
}

impl<N: Clone + Eq + Hash> CrystalGraph<N> {
    pub fn from_parts(rank: usize, nodes: Vec<N>, weights: Vec<Vec<i64>>, edges: Vec<(usize, usize, usize)>) -> Self {
        CrystalGraph { rank, nodes, weights, edges }
    }

    /// Connected component of `seed`, breadth first. Edges come from `f` only;
    /// `e` is used to reach nodes above the seed.
    pub fn component<C: Crystal<Node = N>>(crystal: &C, seed: &N) -> Self {
        let mut index: HashMap<N, usize> = HashMap::new();
        let mut nodes = vec![seed.clone()];
        index.insert(seed.clone(), 0);
        let mut queue = VecDeque::from([0]);
        let mut edges = Vec::new();
        while let Some(k) = queue.pop_front() {
            let x = nodes[k].clone();
            for i in 1..=crystal.rank() {
                if let Some(y) = crystal.f(&x, i) {
                    let t = *index.entry(y.clone()).or_insert_with(|| {
                        nodes.push(y);
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    });
                    edges.push((k, t, i));
                }
                if let Some(y) = crystal.e(&x, i) {
                    index.entry(y.clone()).or_insert_with(|| {
                        nodes.push(y);
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    });
                }
            }
        }
        let weights = nodes.iter().map(|x| crystal.weight(x)).collect();
        CrystalGraph { rank: crystal.rank(), nodes, weights, edges }
    }

    /// Splits a node set into components.
    pub fn components<C: Crystal<Node = N>>(crystal: &C, nodes: impl IntoIterator<Item = N>) -> Vec<Self> {
        let mut seen: std::collections::HashSet<N> = std::collections::HashSet::new();
        let mut out = Vec::new();
        for x in nodes {
            if seen.contains(&x) {
                continue;
            }
            let g = CrystalGraph::component(crystal, &x);
            seen.extend(g.nodes.iter().cloned());
            out.push(g);
        }
        out
    }

    /// Induced subgraph on nodes satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&N) -> bool) -> Self {
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for (k, x) in self.nodes.iter().enumerate() {
            if keep(x) {
                map[k] = nodes.len();
                nodes.push(x.clone());
                weights.push(self.weights[k].clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(a, b, _)| map[*a] != usize::MAX && map[*b] != usize::MAX)
            .map(|&(a, b, i)| (map[a], map[b], i))
            .collect();
        CrystalGraph { rank: self.rank, nodes, weights, edges }
    }
}

impl<N> CrystalGraph<N> {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// `(source, target, color)` for each `f` arrow.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn remove_edge(&mut self, k: usize) -> (usize, usize, usize) {
        self.edges.remove(k)
    }

    /// Nodes with no incoming arrow (highest weights).
    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.nodes.len()];
        for &(_, b, _) in &self.edges {
            has_in[b] = true;
        }
        (0..self.nodes.len()).filter(|&k| !has_in[k]).collect()
    }

    /// Nodes with no outgoing arrow (lowest weights).
    pub fn sinks(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.nodes.len()];
        for &(a, _, _) in &self.edges {
            has_out[a] = true;
        }
        (0..self.nodes.len()).filter(|&k| !has_out[k]).collect()
    }

    /// Weight multiset as monomial exponents.
    pub fn character(&self) -> BTreeMap<Vec<i64>, i64> {
        let mut ch = BTreeMap::new();
        for w in &self.weights {
            *ch.entry(w.clone()).or_insert(0) += 1;
        }
        ch
    }

    /// Graphviz text. Colors 1, 2, 3 are blue, red, green.
    pub fn to_dot(&self, label: impl Fn(&N) -> String) -> String {
        const PALETTE: [&str; 8] = ["blue", "red", "green", "orange", "purple", "brown", "cyan", "magenta"];
        let mut s = String::from("digraph crystal {\n  node [shape=plaintext];\n");
        for (k, x) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{k} [label=\"{}\"];\n", label(x).replace('"', "\\\"")));
        }
        for &(a, b, i) in &self.edges {
            let color = PALETTE[(i - 1) % PALETTE.len()];
            s.push_str(&format!("  n{a} -> n{b} [label=\"{i}\", color={color}, fontcolor={color}];\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Checks the Stembridge axioms and seminormality on the abstract graph.
    pub fn stembridge_audit(&self) -> AuditReport {
        audit(self.rank, &self.weights, &self.edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    /// At most one arrow of each color in and out of every node.
    PartialInverse,
    /// No infinite strings.
    FiniteStrings,
    /// `φ_i − ε_i` equals `wt_i − wt_{i+1}`, and arrows change the weight by `−α_i`.
    Seminormal,
    /// `Δ_iε_j + Δ_iφ_j = a_ij`.
    P3,
    /// `Δ_iε_j, Δ_iφ_j ≤ 0`.
    P4,
    /// `Δ_iε_j = 0` forces `e_i e_j = e_j e_i` with `∇_jφ_i = 0`.
    P5,
    /// `Δ_iε_j = Δ_jε_i = −1` forces `e_i e_j² e_i = e_j e_i² e_j` with `∇_iφ_j = ∇_jφ_i = −1`.
    P6,
    /// Dual of P5 for the lowering operators.
    P5Dual,
    /// Dual of P6 for the lowering operators.
    P6Dual,
    /// Every component has exactly one node annihilated by all `e_i`.
    UniqueHighestWeight,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub node: usize,
    pub colors: (usize, usize),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    pub nodes: usize,
    pub components: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_axiom(&self) -> Option<Axiom> {
        self.violations.first().map(|v| v.axiom)
    }

    pub fn merge(mut self, other: AuditReport) -> AuditReport {
        self.nodes += other.nodes;
        self.components += other.components;
        self.violations.extend(other.violations);
        self
    }
}

struct Ops {
    f: Vec<Vec<Option<usize>>>,
    e: Vec<Vec<Option<usize>>>,
}

impl Ops {
    fn f(&self, x: Option<usize>, i: usize) -> Option<usize> {
        x.and_then(|x| self.f[i][x])
    }

    fn e(&self, x: Option<usize>, i: usize) -> Option<usize> {
        x.and_then(|x| self.e[i][x])
    }

    fn string(&self, table: &[Vec<Option<usize>>], x: usize, i: usize, limit: usize) -> Option<i64> {
        let mut k = 0;
        let mut cur = x;
        while let Some(y) = table[i][cur] {
            k += 1;
            if k > limit {
                return None;
            }
            cur = y;
        }
        Some(k as i64)
    }
}

fn audit(rank: usize, weights: &[Vec<i64>], edges: &[(usize, usize, usize)]) -> AuditReport {
    let n = weights.len();
    let mut report = AuditReport { nodes: n, ..Default::default() };
    let mut violations = Vec::new();
    let mut bad = |axiom, node, colors| violations.push(AxiomViolation { axiom, node, colors });
    let mut ops = Ops { f: vec![vec![None; n]; rank + 1], e: vec![vec![None; n]; rank + 1] };
    for &(a, b, i) in edges {
        if ops.f[i][a].is_some() || ops.e[i][b].is_some() {
            bad(Axiom::PartialInverse, a, (i, i));
            continue;
        }
        ops.f[i][a] = Some(b);
        ops.e[i][b] = Some(a);
    }

    let mut phi = vec![vec![0i64; n]; rank + 1];
    let mut eps = vec![vec![0i64; n]; rank + 1];
    let mut finite = true;
    for i in 1..=rank {
        for x in 0..n {
            match (ops.string(&ops.f, x, i, n), ops.string(&ops.e, x, i, n)) {
                (Some(p), Some(q)) => {
                    phi[i][x] = p;
                    eps[i][x] = q;
                }
                _ => {
                    finite = false;
                    bad(Axiom::FiniteStrings, x, (i, i));
                }
            }
        }
    }
    if !finite {
        report.violations = violations;
        return report;
    }

    for &(a, b, i) in edges {
        let mut expect = weights[a].clone();
        expect[i - 1] -= 1;
        expect[i] += 1;
        if weights[b] != expect {
            bad(Axiom::Seminormal, a, (i, i));
        }
    }
    for x in 0..n {
        for i in 1..=rank {
            if phi[i][x] - eps[i][x] != weights[x][i - 1] - weights[x][i] {
                bad(Axiom::Seminormal, x, (i, i));
            }
        }
    }

    for x in 0..n {
        for i in 1..=rank {
            for j in 1..=rank {
                if i == j {
                    continue;
                }
                let a_ij = if i.abs_diff(j) == 1 { -1 } else { 0 };
                if let Some(y) = ops.e[i][x] {
                    let de = eps[j][x] - eps[j][y];
                    let dp = phi[j][y] - phi[j][x];
                    if de > 0 || dp > 0 {
                        bad(Axiom::P4, x, (i, j));
                    }
                    if de + dp != a_ij {
                        bad(Axiom::P3, x, (i, j));
                    }
                }
                if let Some(y) = ops.f[i][x] {
                    let dp = phi[j][x] - phi[j][y];
                    let de = eps[j][y] - eps[j][x];
                    if de > 0 || dp > 0 {
                        bad(Axiom::P4, x, (i, j));
                    }
                    if de + dp != a_ij {
                        bad(Axiom::P3, x, (i, j));
                    }
                }
                if i > j {
                    continue;
                }
                // raising side
                if let (Some(xi), Some(xj)) = (ops.e[i][x], ops.e[j][x]) {
                    let dij = eps[j][x] - eps[j][xi];
                    let dji = eps[i][x] - eps[i][xj];
                    if dij == 0 {
                        let y1 = ops.e(Some(xi), j);
                        let y2 = ops.e(Some(xj), i);
                        match (y1, y2) {
                            (Some(y), Some(z)) if y == z => {
                                // ∇_jφ_i(y) = φ_i(y) − φ_i(f_j y) with f_j y = e_i x
                                if phi[i][y] - phi[i][xi] != 0 {
                                    bad(Axiom::P5, x, (i, j));
                                }
                            }
                            _ => bad(Axiom::P5, x, (i, j)),
                        }
                    } else if dij == -1 && dji == -1 {
                        let y1 = [i, j, j, i].iter().try_fold(x, |c, &k| ops.e(Some(c), k));
                        let y2 = [j, i, i, j].iter().try_fold(x, |c, &k| ops.e(Some(c), k));
                        match (y1, y2) {
                            (Some(y), Some(z)) if y == z => {
                                let yi = ops.f[i][y].expect("string back down");
                                let yj = ops.f[j][y].expect("string back down");
                                if phi[j][y] - phi[j][yi] != -1 || phi[i][y] - phi[i][yj] != -1 {
                                    bad(Axiom::P6, x, (i, j));
                                }
                            }
                            _ => bad(Axiom::P6, x, (i, j)),
                        }
                    }
                }
                // lowering side
                if let (Some(xi), Some(xj)) = (ops.f[i][x], ops.f[j][x]) {
                    let dij = phi[j][x] - phi[j][xi];
                    let dji = phi[i][x] - phi[i][xj];
                    if dij == 0 {
                        let y1 = ops.f(Some(xi), j);
                        let y2 = ops.f(Some(xj), i);
                        match (y1, y2) {
                            (Some(y), Some(z)) if y == z => {
                                if eps[i][y] - eps[i][xi] != 0 {
                                    bad(Axiom::P5Dual, x, (i, j));
                                }
                            }
                            _ => bad(Axiom::P5Dual, x, (i, j)),
                        }
                    } else if dij == -1 && dji == -1 {
                        let y1 = [i, j, j, i].iter().try_fold(x, |c, &k| ops.f(Some(c), k));
                        let y2 = [j, i, i, j].iter().try_fold(x, |c, &k| ops.f(Some(c), k));
                        match (y1, y2) {
                            (Some(y), Some(z)) if y == z => {
                                let yi = ops.e[i][y].expect("string back up");
                                let yj = ops.e[j][y].expect("string back up");
                                if eps[j][y] - eps[j][yi] != -1 || eps[i][y] - eps[i][yj] != -1 {
                                    bad(Axiom::P6Dual, x, (i, j));
                                }
                            }
                            _ => bad(Axiom::P6Dual, x, (i, j)),
                        }
                    }
                }
            }
        }
    }

    // components and highest weights
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = count;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    let mut highest = vec![0usize; count];
    for x in 0..n {
        if (1..=rank).all(|i| ops.e[i][x].is_none()) {
            highest[comp[x]] += 1;
        }
    }
    for (c, &h) in highest.iter().enumerate() {
        if h != 1 {
            let node = (0..n).find(|&x| comp[x] == c).unwrap_or(0);
            bad(Axiom::UniqueHighestWeight, node, (0, 0));
        }
    }
    report.components = count;
    report.violations = violations;
    report
}
