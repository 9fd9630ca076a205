//! Networks over a relation algebra, path consistency, and complete search
//! for consistent atomic refinements (the network consistency problem).


use thiserror::Error;

use crate::algebra::{AtomId, Element, RelationAlgebra};

/// A labelled complete digraph over algebra elements. Converse-consistency
/// (`label(y,x) = label(x,y)˘`) is enforced by every mutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Network {
    n: usize,
    labels: Vec<Element>,
}

impl Network {
    /// The network with `1` off the diagonal and the identity on it.
    pub fn top(ra: &RelationAlgebra, n: usize) -> Network {
        let mut labels = vec![ra.one(); n * n];
        for v in 0..n {
            labels[v * n + v] = ra.identity();
        }
        Network { n, labels }
    }

    /// All forward labels `(x, y)` with `x < y` set to `e` (backward edges
    /// get the converse), identity on the diagonal.
    pub fn filled(ra: &RelationAlgebra, n: usize, e: Element) -> Network {
        let mut net = Network::top(ra, n);
        for x in 0..n {
            for y in x + 1..n {
                net.set(ra, x, y, e);
            }
        }
        net
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn label(&self, x: usize, y: usize) -> Element {
        self.labels[x * self.n + y]
    }

    /// Sets `label(x,y)` and the converse label in one step.
    pub fn set(&mut self, ra: &RelationAlgebra, x: usize, y: usize, e: Element) {
        self.labels[x * self.n + y] = e;
        if x != y {
            self.labels[y * self.n + x] = ra.converse_el(e);
        }
    }

    pub fn converse_consistent(&self, ra: &RelationAlgebra) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| self.label(y, x) == ra.converse_el(self.label(x, y)))
        })
    }

    pub fn has_empty_label(&self) -> bool {
        self.labels.iter().any(|e| e.is_empty())
    }

    /// Vertex pairs `(x, y)` with `x <= y`, diagonal included.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |x| (x..n).map(move |y| (x, y)))
    }
}

/// Result of the path consistency procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PcResult {
    Unsolvable,
    Stable(Network),
}

impl PcResult {
    pub fn is_unsolvable(&self) -> bool {
        matches!(self, PcResult::Unsolvable)
    }

    pub fn stable(self) -> Option<Network> {
        match self {
            PcResult::Stable(n) => Some(n),
            PcResult::Unsolvable => None,
        }
    }
}

/// Path consistency: intersect the diagonal with the identity, then refine
/// `f(x,y)` by `f(x,z) ; f(z,y)` to the fixpoint. Work-queue variant; the
/// fixpoint equals the one of the naive triple loop.
pub fn path_consistency(ra: &RelationAlgebra, net: &Network) -> PcResult {
    let mut out = net.clone();
    if pc_in_place(ra, &mut out) {
        PcResult::Stable(out)
    } else {
        PcResult::Unsolvable
    }
}

/// Returns false iff some label became empty.
pub(crate) fn pc_in_place(ra: &RelationAlgebra, net: &mut Network) -> bool {
    let n = net.size();
    if n == 0 {
        return true;
    }
    for v in 0..n {
        let refined = net.label(v, v).meet(ra.identity());
        net.set(ra, v, v, refined);
    }
    if net.has_empty_label() {
        return false;
    }
    let mut queue: Vec<(usize, usize)> = Vec::new();
    let mut in_queue = vec![false; n * n];
    for x in 0..n {
        for y in x..n {
            queue.push((x, y));
            in_queue[x * n + y] = true;
        }
    }
    while let Some((x, y)) = queue.pop() {
        in_queue[x * n + y] = false;
        // re-examine every triangle touching the changed edge
        for z in 0..n {
            for (a, b, c) in [(x, z, y), (z, x, y), (z, y, x)] {
                let cur = net.label(a, b);
                let refined = cur.meet(ra.compose(net.label(a, c), net.label(c, b)));
                if refined != cur {
                    if refined.is_empty() {
                        return false;
                    }
                    net.set(ra, a, b, refined);
                    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                    if !in_queue[lo * n + hi] {
                        in_queue[lo * n + hi] = true;
                        queue.push((lo, hi));
                    }
                }
            }
        }
    }
    true
}

/// The literal triple loop, used as the fixpoint oracle in the tests.
#[cfg(test)]
pub(crate) fn path_consistency_naive(ra: &RelationAlgebra, net: &Network) -> PcResult {
    let mut out = net.clone();
    let n = out.size();
    for v in 0..n {
        let refined = out.label(v, v).meet(ra.identity());
        out.set(ra, v, v, refined);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let cur = out.label(x, y);
                    let refined = cur.meet(ra.compose(out.label(x, z), out.label(z, y)));
                    if refined != cur {
                        out.set(ra, x, y, refined);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if out.has_empty_label() {
        PcResult::Unsolvable
    } else {
        PcResult::Stable(out)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("label at ({0},{1}) is not an atom")]
    NotAtomic(usize, usize),
    #[error("search budget exhausted")]
    BudgetExceeded,
}

/// A network whose labels are single atoms, with its consistency cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtomicNetwork {
    net: Network,
    consistent: bool,
}

impl AtomicNetwork {
    pub fn from_network(ra: &RelationAlgebra, net: Network) -> Result<AtomicNetwork, NetworkError> {
        for x in 0..net.size() {
            for y in 0..net.size() {
                if !net.label(x, y).is_atom() {
                    return Err(NetworkError::NotAtomic(x, y));
                }
            }
        }
        let consistent = atomic_consistent(ra, &net);
        Ok(AtomicNetwork { net, consistent })
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn size(&self) -> usize {
        self.net.size()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn atom(&self, x: usize, y: usize) -> AtomId {
        self.net.label(x, y).as_atom().expect("atomic network")
    }

    /// True iff the identity holds only on the diagonal.
    pub fn is_reduced(&self, ra: &RelationAlgebra) -> bool {
        (0..self.size()).all(|x| {
            (0..self.size()).all(|y| {
                let diag = self.net.label(x, y).is_subset(ra.identity());
                diag == (x == y)
            })
        })
    }
}

fn atomic_consistent(ra: &RelationAlgebra, net: &Network) -> bool {
    let n = net.size();
    for x in 0..n {
        if !net.label(x, x).is_subset(ra.identity()) {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = (
                    net.label(x, z).as_atom().unwrap(),
                    net.label(z, y).as_atom().unwrap(),
                    net.label(x, y).as_atom().unwrap(),
                );
                if !ra.is_allowed(t) {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff some injective vertex map carries every pattern label to the
/// equal host label (diagonal included, so identity atoms must agree too).
pub fn embeds(pattern: &AtomicNetwork, host: &AtomicNetwork) -> bool {
    let p = pattern.size();
    let h = host.size();
    if p > h {
        return false;
    }
    let mut map = vec![usize::MAX; p];
    let mut used = vec![false; h];
    embed_rec(pattern, host, 0, &mut map, &mut used)
}

fn embed_rec(
    pattern: &AtomicNetwork,
    host: &AtomicNetwork,
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == pattern.size() {
        return true;
    }
    'cand: for c in 0..host.size() {
        if used[c] {
            continue;
        }
        if pattern.network().label(v, v) != host.network().label(c, c) {
            continue;
        }
        for w in 0..v {
            if pattern.network().label(v, w) != host.network().label(c, map[w])
                || pattern.network().label(w, v) != host.network().label(map[w], c)
            {
                continue 'cand;
            }
        }
        map[v] = c;
        used[c] = true;
        if embed_rec(pattern, host, v + 1, map, used) {
            return true;
        }
        used[c] = false;
        map[v] = usize::MAX;
    }
    false
}

/// A named list of forbidden atomic patterns. Every stored pattern must be
/// consistent and atomic.
#[derive(Clone, Debug, Default)]
pub struct PatternLibrary {
    patterns: Vec<(String, AtomicNetwork)>,
}

impl PatternLibrary {
    pub fn empty() -> PatternLibrary {
        PatternLibrary { patterns: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, pattern: AtomicNetwork) {
        assert!(pattern.is_consistent(), "forbidden patterns must be consistent");
        self.patterns.push((name.into(), pattern));
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, AtomicNetwork)> {
        self.patterns.iter()
    }

    pub fn names(&self) -> Vec<&str> {
        self.patterns.iter().map(|(n, _)| n.as_str()).collect()
    }
}

/// Search state for the refinement search shared by [`solve_ncp`] and
/// [`enumerate_solutions`].
struct Search<'a> {
    ra: &'a RelationAlgebra,
    forbidden: &'a PatternLibrary,
    order: Vec<(usize, usize)>,
    net: Network,
    budget: Option<u64>,
    nodes: u64,
}

impl<'a> Search<'a> {
    /// Visits solutions in deterministic order; `f` returns false to stop.
    fn run(&mut self, depth: usize, f: &mut dyn FnMut(&Network) -> bool) -> Result<bool, NetworkError> {
        if depth == self.order.len() {
            return Ok(f(&self.net));
        }
        let (x, y) = self.order[depth];
        let candidates = self.net.label(x, y);
        for atom in candidates.atoms() {
            if let Some(b) = self.budget {
                if self.nodes >= b {
                    return Err(NetworkError::BudgetExceeded);
                }
            }
            self.nodes += 1;
            let saved = self.net.label(x, y);
            self.net.set(self.ra, x, y, Element::atom(atom));
            if self.edge_ok(x, y) && !self.hits_forbidden(x, y, depth) {
                if !self.run(depth + 1, f)? {
                    self.net.set(self.ra, x, y, saved);
                    return Ok(false);
                }
            }
            self.net.set(self.ra, x, y, saved);
        }
        Ok(true)
    }

    /// Triangle checks for the newly fixed edge against already-atomic edges.
    fn edge_ok(&self, x: usize, y: usize) -> bool {
        let n = self.net.size();
        for z in 0..n {
            let xz = self.net.label(x, z);
            let zy = self.net.label(z, y);
            let xy = self.net.label(x, y);
            if let (Some(a), Some(b), Some(c)) = (xz.as_atom(), zy.as_atom(), xy.as_atom()) {
                if !self.ra.is_allowed((a, b, c)) {
                    return false;
                }
            }
            // prune also when the composite of fixed sides misses the label
            if self.ra.compose(xz, zy).meet(xy).is_empty() {
                return false;
            }
        }
        true
    }

    /// Checks whether a forbidden pattern embeds into the fully-atomic part
    /// of the current partial assignment. Vertices whose rows are not yet
    /// all atoms cannot take part in an embedding, so this prunes exactly
    /// the branches a leaf check would reject, only earlier.
    fn hits_forbidden(&self, x: usize, y: usize, _depth: usize) -> bool {
        if self.forbidden.is_empty() {
            return false;
        }
        let full: Vec<usize> = (0..self.net.size())
            .filter(|&v| (0..self.net.size()).all(|w| self.net.label(v, w).is_atom()))
            .collect();
        if !full.contains(&x) || !full.contains(&y) {
            return false;
        }
        let sub = induced(self.ra, &self.net, &full);
        let sub = AtomicNetwork::from_network(self.ra, sub).expect("atomic by construction");
        self.forbidden.iter().any(|(_, p)| embeds(p, &sub))
    }
}

fn induced(ra: &RelationAlgebra, net: &Network, verts: &[usize]) -> Network {
    let mut sub = Network::top(ra, verts.len());
    for (i, &v) in verts.iter().enumerate() {
        for (j, &w) in verts.iter().enumerate() {
            sub.labels[i * verts.len() + j] = net.label(v, w);
        }
    }
    sub
}

/// Class index per vertex after joining all pairs whose label lies below
/// the identity; classes are numbered in order of first occurrence.
pub fn identity_class_map(ra: &RelationAlgebra, net: &Network) -> Vec<usize> {
    let n = net.size();
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut Vec<usize>, v: usize) -> usize {
        if rep[v] != v {
            let r = find(rep, rep[v]);
            rep[v] = r;
        }
        rep[v]
    }
    for x in 0..n {
        for y in x + 1..n {
            let l = net.label(x, y);
            if l.is_subset(ra.identity()) {
                let (rx, ry) = (find(&mut rep, x), find(&mut rep, y));
                if rx != ry {
                    rep[rx.max(ry)] = rx.min(ry);
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut count = 0usize;
    for v in 0..n {
        let r = find(&mut rep, v);
        if class_of[r] == usize::MAX {
            class_of[r] = count;
            count += 1;
        }
        class_of[v] = class_of[r];
    }
    class_of
}

/// Identity contraction: vertices joined by labels below the identity are
/// merged. Returns the merged network and the representative map, or None
/// when a diagonal label has no identity atom.
fn contract_identity(ra: &RelationAlgebra, net: &Network) -> Option<(Network, Vec<usize>)> {
    let n = net.size();
    for x in 0..n {
        if net.label(x, x).is_empty() {
            return None;
        }
        for y in x + 1..n {
            let l = net.label(x, y);
            if l.is_subset(ra.identity()) && l.is_empty() {
                return None;
            }
        }
    }
    let class_of = identity_class_map(ra, net);
    let m = class_of.iter().copied().max().unwrap_or(0) + 1;
    let mut merged = Network::top(ra, m);
    for i in 0..m {
        for j in 0..m {
            let mut l = if i == j { ra.identity() } else { ra.one() };
            for v in 0..n {
                if class_of[v] != i {
                    continue;
                }
                for w in 0..n {
                    if class_of[w] == j {
                        l = l.meet(net.label(v, w));
                    }
                }
            }
            merged.labels[i * m + j] = l;
        }
    }
    if merged.has_empty_label() {
        return None;
    }
    Some((merged, class_of))
}

fn expand_solution(
    ra: &RelationAlgebra,
    original_size: usize,
    class_of: &[usize],
    sol: &Network,
) -> AtomicNetwork {
    let mut out = Network::top(ra, original_size);
    for x in 0..original_size {
        for y in 0..original_size {
            out.labels[x * original_size + y] = sol.label(class_of[x], class_of[y]);
        }
    }
    AtomicNetwork::from_network(ra, out).expect("expanded solution is atomic")
}

/// Complete backtracking search for a consistent atomic refinement avoiding
/// every forbidden pattern. Returns None only if no such refinement exists.
pub fn solve_ncp(
    ra: &RelationAlgebra,
    net: &Network,
    forbidden: &PatternLibrary,
) -> Option<AtomicNetwork> {
    let list = enumerate_solutions(ra, net, forbidden, 1, None).expect("no budget set");
    list.solutions.into_iter().next()
}

/// Visits every solution of the refinement search in deterministic order;
/// the callback returns false to stop early.
pub fn for_each_solution(
    ra: &RelationAlgebra,
    net: &Network,
    forbidden: &PatternLibrary,
    budget: Option<u64>,
    f: &mut dyn FnMut(&AtomicNetwork) -> bool,
) -> Result<(), NetworkError> {
    if net.size() == 0 {
        let empty = AtomicNetwork::from_network(ra, Network::top(ra, 0)).unwrap();
        f(&empty);
        return Ok(());
    }
    if net.has_empty_label() {
        return Ok(());
    }
    let refined = match path_consistency(ra, net) {
        PcResult::Unsolvable => return Ok(()),
        PcResult::Stable(r) => r,
    };
    let (merged, class_of) = match contract_identity(ra, &refined) {
        Some(x) => x,
        None => return Ok(()),
    };
    // static fail-first order: fewest remaining atoms, ties lexicographic
    let mut order: Vec<(usize, usize)> = merged.pairs().collect();
    order.sort_by_key(|&(x, y)| (merged.label(x, y).count(), x, y));
    let mut search = Search { ra, forbidden, order, net: merged, budget, nodes: 0 };
    search
        .run(0, &mut |sol| {
            let full = expand_solution(ra, net.size(), &class_of, sol);
            debug_assert!(full.is_consistent());
            // a completed assignment may still contain a forbidden pattern
            // through non-reduced vertices; re-check on the expansion
            if forbidden.iter().any(|(_, p)| embeds(p, &full)) {
                return true;
            }
            f(&full)
        })
        .map(|_| ())
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub solutions: Vec<AtomicNetwork>,
    pub truncated: bool,
}

/// All solutions of the refinement search, in deterministic order, truncated
/// at `limit`. A budget of search nodes may be imposed; exhausting it is an
/// error distinct from an empty result.
pub fn enumerate_solutions(
    ra: &RelationAlgebra,
    net: &Network,
    forbidden: &PatternLibrary,
    limit: usize,
    budget: Option<u64>,
) -> Result<Enumeration, NetworkError> {
    let mut solutions = Vec::new();
    let mut truncated = false;
    for_each_solution(ra, net, forbidden, budget, &mut |sol| {
        solutions.push(sol.clone());
        if solutions.len() >= limit {
            truncated = true;
            false
        } else {
            true
        }
    })?;
    Ok(Enumeration { solutions, truncated })
}

/// The evil square: the consistent atomic 5_7-network on four vertices
/// that is unsatisfiable in the pentagon model.
pub fn evil_square_5_7() -> (&'static RelationAlgebra, AtomicNetwork) {
    let ra = &crate::catalog::catalog().lookup("5_7").unwrap().algebra;
    let a = Element::atom(ra.atom_by_name("a").unwrap());
    let b = Element::atom(ra.atom_by_name("b").unwrap());
    let mut net = Network::filled(ra, 4, a);
    net.set(ra, 0, 3, b);
    net.set(ra, 1, 2, b);
    (ra, AtomicNetwork::from_network(ra, net).unwrap())
}

/// The induced a-path on 4 vertices: consistent atomic over 17_37, but
/// unsatisfiable in every representation.
pub fn a_path_4_17_37() -> (&'static RelationAlgebra, AtomicNetwork) {
    let ra = &crate::catalog::catalog().lookup("17_37").unwrap().algebra;
    let a = Element::atom(ra.atom_by_name("a").unwrap());
    let r = Element::atom(ra.atom_by_name("r").unwrap());
    let mut net = Network::filled(ra, 4, r);
    net.set(ra, 0, 1, a);
    net.set(ra, 1, 2, a);
    net.set(ra, 2, 3, a);
    net.set(ra, 0, 2, r);
    net.set(ra, 0, 3, r);
    net.set(ra, 1, 3, r);
    (ra, AtomicNetwork::from_network(ra, net).unwrap())
}

/// Canonical form of an atomic network: the lexicographically minimal label
/// matrix over all vertex permutations.
pub fn canonical_form(net: &AtomicNetwork) -> Vec<u16> {
    let n = net.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u16>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut key = Vec::with_capacity(n * n);
        for &x in p.iter() {
            for &y in p.iter() {
                key.push(net.network().label(x, y).0);
            }
        }
        match &best {
            Some(b) if *b <= key => {}
            _ => best = Some(key),
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[derive(Debug, Error)]
#[error("budget exhausted")]
pub struct BudgetExceeded;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn alg(name: &str) -> &'static RelationAlgebra {
        &catalog::catalog().lookup(name).unwrap().algebra
    }

    fn el(ra: &RelationAlgebra, names: &[&str]) -> Element {
        names
            .iter()
            .map(|n| Element::atom(ra.atom_by_name(n).unwrap()))
            .fold(Element::EMPTY, Element::union)
    }

    #[test]
    fn pc_refutes_all_a_triangle_over_5_7() {
        let ra = alg("5_7");
        let net = Network::filled(ra, 3, el(ra, &["a"]));
        assert!(path_consistency(ra, &net).is_unsolvable());
    }

    #[test]
    fn pc_keeps_evil_square() {
        let (ra, sq) = evil_square_5_7();
        assert!(sq.is_consistent());
        match path_consistency(ra, sq.network()) {
            PcResult::Stable(out) => assert_eq!(&out, sq.network()),
            PcResult::Unsolvable => panic!("evil square is consistent"),
        }
    }

    #[test]
    fn pc_single_vertex() {
        let ra = alg("5_7");
        let mut net = Network::top(ra, 1);
        net.set(ra, 0, 0, ra.one());
        match path_consistency(ra, &net) {
            PcResult::Stable(out) => assert_eq!(out.label(0, 0), ra.identity()),
            PcResult::Unsolvable => panic!(),
        }
    }

    #[test]
    fn pc_queue_equals_naive() {
        // same fixpoint on a spread of small random-ish nets
        let ra = alg("24_65");
        let one = ra.one();
        let mut labels = Vec::new();
        for bits in 1..(1u16 << ra.atom_count()) {
            labels.push(Element(bits).meet(one));
        }
        let mut idx = 0usize;
        for n in 2..=4usize {
            for seed in 0..40usize {
                let mut net = Network::top(ra, n);
                let mut s = seed;
                for x in 0..n {
                    for y in x + 1..n {
                        s = s.wrapping_mul(31).wrapping_add(idx);
                        idx += 1;
                        let e = labels[s % labels.len()];
                        net.set(ra, x, y, e);
                    }
                }
                assert_eq!(path_consistency(ra, &net), path_consistency_naive(ra, &net));
            }
        }
    }

    #[test]
    fn ncp_a_path_4_only_without_pattern() {
        let (ra, path) = a_path_4_17_37();
        assert!(path.is_consistent());
        let free = PatternLibrary::empty();
        assert!(solve_ncp(ra, path.network(), &free).is_some());
        let mut lib = PatternLibrary::empty();
        lib.push("a-path-4", a_path_4_17_37().1);
        assert!(solve_ncp(ra, path.network(), &lib).is_none());
    }

    #[test]
    fn ncp_rainbow_triangle_24_65() {
        let ra = alg("24_65");
        let mut net = Network::top(ra, 3);
        net.set(ra, 0, 1, el(ra, &["a"]));
        net.set(ra, 1, 2, el(ra, &["b"]));
        net.set(ra, 0, 2, el(ra, &["c"]));
        assert!(solve_ncp(ra, &net, &PatternLibrary::empty()).is_none());
    }

    #[test]
    fn embeds_basics() {
        let (_, sq) = evil_square_5_7();
        assert!(embeds(&sq, &sq));
        let (ra17, path) = a_path_4_17_37();
        let small = AtomicNetwork::from_network(
            ra17,
            Network::filled(ra17, 3, el(ra17, &["a"])),
        );
        // 3-vertex host cannot contain a 4-vertex pattern (if consistent at all)
        if let Ok(host) = small {
            assert!(!embeds(&path, &host));
        }
    }

    #[test]
    fn enumerate_two_vertex_1_2() {
        let ra = alg("1_2");
        let mut net = Network::top(ra, 2);
        net.set(ra, 0, 1, el(ra, &["a"]));
        let e = enumerate_solutions(ra, &net, &PatternLibrary::empty(), 100, None).unwrap();
        assert_eq!(e.solutions.len(), 1);
        assert!(!e.truncated);
    }

    #[test]
    fn enumerate_zero_label() {
        let ra = alg("1_2");
        let mut net = Network::top(ra, 2);
        net.set(ra, 0, 1, Element::EMPTY);
        let e = enumerate_solutions(ra, &net, &PatternLibrary::empty(), 100, None).unwrap();
        assert!(e.solutions.is_empty());
    }

    #[test]
    fn enumerate_relaxed_square_5_7_matches_brute_force() {
        // independent oracle: loop over every atomic labelling of the four
        // vertices (diversity atoms and identity alike) and count the
        // consistent ones; the searcher must agree
        let ra = alg("5_7");
        let net = Network::top(ra, 4);
        let e = enumerate_solutions(ra, &net, &PatternLibrary::empty(), usize::MAX, None).unwrap();
        let atoms: Vec<AtomId> = ra.atoms().collect();
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut brute = 0usize;
        let mut brute_diversity = 0usize;
        let total = atoms.len().pow(6);
        for code in 0..total {
            let mut c = code;
            let mut net2 = Network::top(ra, 4);
            for &(x, y) in &edges {
                let atom = atoms[c % atoms.len()];
                c /= atoms.len();
                net2.set(ra, x, y, Element::atom(atom));
            }
            if let Ok(an) = AtomicNetwork::from_network(ra, net2) {
                if an.is_consistent() {
                    brute += 1;
                    if an.is_reduced(ra) {
                        brute_diversity += 1;
                    }
                }
            }
        }
        assert_eq!(e.solutions.len(), brute);
        // the diversity-only count is the 2^6 brute force over {a,b} labels
        let reduced = e.solutions.iter().filter(|s| s.is_reduced(ra)).count();
        assert_eq!(reduced, brute_diversity);
        let mut two_pow: usize = 0;
        for code in 0..64usize {
            let mut net2 = Network::top(ra, 4);
            for (i, &(x, y)) in edges.iter().enumerate() {
                let name = if code >> i & 1 == 0 { "a" } else { "b" };
                net2.set(ra, x, y, el(ra, &[name]));
            }
            let an = AtomicNetwork::from_network(ra, net2).unwrap();
            if an.is_consistent() {
                two_pow += 1;
            }
        }
        assert_eq!(reduced, two_pow);
    }

    #[test]
    fn pc_sound_for_ncp_small() {
        // every atomic solution of the input survives PC refinement
        let ra = alg("5_7");
        let mut net = Network::top(ra, 4);
        net.set(ra, 0, 1, el(ra, &["a", "b"]));
        net.set(ra, 2, 3, el(ra, &["a"]));
        let before = enumerate_solutions(ra, &net, &PatternLibrary::empty(), usize::MAX, None)
            .unwrap()
            .solutions;
        let after = match path_consistency(ra, &net) {
            PcResult::Stable(r) => {
                enumerate_solutions(ra, &r, &PatternLibrary::empty(), usize::MAX, None)
                    .unwrap()
                    .solutions
            }
            PcResult::Unsolvable => Vec::new(),
        };
        assert_eq!(before.len(), after.len());
    }
}
