//! The atom structure of an algebra, the reduction from NSP to its finite
//! conservative CSP, a generic CSP solver, and verification/search of
//! conservative polymorphisms (binary symmetric, majority, minority, WNU).

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{AtomId, Element, RelationAlgebra, Triple};
use crate::catalog::CatalogEntry;
use crate::network::{AtomicNetwork, Network};

/// The finite relational structure on the atoms: one unary relation per
/// element (making it conservative), the converse graph E, and the ternary
/// cycle relation R.
#[derive(Debug, Clone)]
pub struct AtomStructure {
    pub atom_count: usize,
    /// E: pairs (a, a˘).
    pub converse_pairs: Vec<(AtomId, AtomId)>,
    /// R: the allowed triples.
    pub cycles: Vec<Triple>,
}

pub fn build_atom_structure(ra: &RelationAlgebra) -> AtomStructure {
    AtomStructure {
        atom_count: ra.atom_count(),
        converse_pairs: ra.atoms().map(|a| (a, ra.converse().of(a))).collect(),
        cycles: ra.cycles().iter(ra.atom_count()).collect(),
    }
}

/// A finite CSP instance over the atom structure: per-variable atom sets
/// plus positive table constraints.
#[derive(Debug, Clone)]
pub struct CspInstance {
    pub domains: Vec<Element>,
    pub constraints: Vec<TableConstraint>,
}

#[derive(Debug, Clone)]
pub struct TableConstraint {
    pub scope: Vec<usize>,
    pub allowed: Vec<Vec<AtomId>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("the catalog does not grant {0} a fully universal representation; the reduction would be unsound")]
pub struct NotFullyUniversal(pub String);

/// Reduces an NSP instance over a fully universal algebra to a CSP over its
/// atom structure: one variable per vertex pair x < y (the diagonal is
/// handled by identity contraction), unary constraints from the labels, and
/// one R constraint per vertex triple. Converse is implicit in the
/// orientation convention.
pub fn nsp_to_csp(entry: &CatalogEntry, net: &Network) -> Result<CspInstance, NotFullyUniversal> {
    if !entry.representability.is_fully_universal() {
        return Err(NotFullyUniversal(entry.name.clone()));
    }
    let ra = &entry.algebra;
    Ok(network_to_csp(ra, net))
}

/// The raw translation; sound whenever consistent atomic refinements are
/// what the caller wants (the network consistency problem).
pub fn network_to_csp(ra: &RelationAlgebra, net: &Network) -> CspInstance {
    let n = net.size();
    // contract identity-only labels so the diagonal disappears
    let class_of = crate::network::identity_class_map(ra, net);
    let m = class_of.iter().copied().max().map_or(0, |c| c + 1);
    // contraction is sound only when every in-class pair tolerates the
    // identity; otherwise the instance is unsatisfiable outright
    let mut unsat = false;
    for v in 0..n {
        if net.label(v, v).meet(ra.identity()).is_empty() {
            unsat = true;
        }
        for w in v + 1..n {
            if class_of[v] == class_of[w]
                && net.label(v, w).meet(ra.identity()).is_empty()
            {
                unsat = true;
            }
        }
    }
    if unsat {
        return CspInstance { domains: vec![Element::EMPTY], constraints: Vec::new() };
    }
    let mut vars: HashMap<(usize, usize), usize> = HashMap::new();
    let mut domains = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            vars.insert((i, j), domains.len());
            // meet of all labels between the two contraction classes
            let mut dom = ra.one();
            for v in 0..n {
                for w in 0..n {
                    if class_of[v] == i && class_of[w] == j {
                        dom = dom.meet(net.label(v, w));
                    }
                }
            }
            domains.push(dom);
        }
    }
    let cycles: Vec<Vec<AtomId>> = ra
        .cycles()
        .iter(ra.atom_count())
        .map(|t| vec![t.0, t.1, t.2])
        .collect();
    let mut constraints = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                constraints.push(TableConstraint {
                    scope: vec![vars[&(i, j)], vars[&(j, k)], vars[&(i, k)]],
                    allowed: cycles.clone(),
                });
            }
        }
    }
    CspInstance { domains, constraints }
}

/// Complete, deterministic backtracking with arc consistency.
pub fn solve_csp(instance: &CspInstance) -> Option<Vec<AtomId>> {
    let mut domains = instance.domains.clone();
    if !ac3(&mut domains, &instance.constraints) {
        return None;
    }
    let mut assign: Vec<Option<AtomId>> = vec![None; domains.len()];
    if backtrack(&mut domains, &instance.constraints, &mut assign) {
        Some(assign.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

fn constraint_supported(c: &TableConstraint, domains: &[Element], var: usize, val: AtomId) -> bool {
    // is there an allowed tuple consistent with the domains taking val at var
    let pos = c.scope.iter().position(|&v| v == var);
    c.allowed.iter().any(|tuple| {
        tuple.iter().enumerate().all(|(k, &a)| {
            if Some(k) == pos {
                a == val
            } else {
                domains[c.scope[k]].contains(a)
            }
        })
    })
}

fn ac3(domains: &mut [Element], constraints: &[TableConstraint]) -> bool {
    let mut dirty = true;
    while dirty {
        dirty = false;
        for c in constraints {
            for &v in &c.scope {
                let mut keep = Element::EMPTY;
                for a in domains[v].atoms() {
                    if constraint_supported(c, domains, v, a) {
                        keep = keep.union(Element::atom(a));
                    }
                }
                if keep != domains[v] {
                    domains[v] = keep;
                    if keep.is_empty() {
                        return false;
                    }
                    dirty = true;
                }
            }
        }
    }
    true
}

fn backtrack(
    domains: &mut [Element],
    constraints: &[TableConstraint],
    assign: &mut Vec<Option<AtomId>>,
) -> bool {
    // smallest live domain first, ties by index
    let var = (0..domains.len())
        .filter(|&v| assign[v].is_none())
        .min_by_key(|&v| (domains[v].count(), v));
    let var = match var {
        Some(v) => v,
        None => return true,
    };
    let candidates = domains[var];
    for a in candidates.atoms() {
        let saved: Vec<Element> = domains.to_vec();
        domains[var] = Element::atom(a);
        assign[var] = Some(a);
        if ac3(domains, constraints) && backtrack(domains, constraints, assign) {
            return true;
        }
        assign[var] = None;
        domains.copy_from_slice(&saved);
    }
    false
}

/// Rebuilds the atomic network a CSP solution denotes.
pub fn csp_solution_to_network(
    ra: &RelationAlgebra,
    net: &Network,
    solution: &[AtomId],
) -> Option<AtomicNetwork> {
    let n = net.size();
    let class_of = crate::network::identity_class_map(ra, net);
    let m = class_of.iter().copied().max().map_or(0, |c| c + 1);
    let mut out = Network::top(ra, n);
    let mut k = 0usize;
    let mut table = vec![vec![None::<AtomId>; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            table[i][j] = Some(solution[k]);
            k += 1;
        }
    }
    for x in 0..n {
        for y in x..n {
            let (i, j) = (class_of[x], class_of[y]);
            let e = if i == j {
                ra.identity()
            } else if i < j {
                Element::atom(table[i][j]?)
            } else {
                Element::atom(ra.converse().of(table[j][i]?))
            };
            out.set(ra, x, y, e);
        }
    }
    AtomicNetwork::from_network(ra, out).ok()
}

/// A total conservative operation on the atoms, given by its table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationTable {
    n: usize,
    arity: usize,
    table: Vec<AtomId>,
}

impl OperationTable {
    pub fn projection(n: usize, arity: usize, coord: usize) -> OperationTable {
        assert!(coord < arity);
        let size = n.pow(arity as u32);
        let mut table = Vec::with_capacity(size);
        for code in 0..size {
            let tuple = decode(code, n, arity);
            table.push(tuple[coord]);
        }
        OperationTable { n, arity, table }
    }

    pub fn from_fn(n: usize, arity: usize, f: impl Fn(&[AtomId]) -> AtomId) -> OperationTable {
        let size = n.pow(arity as u32);
        let mut table = Vec::with_capacity(size);
        for code in 0..size {
            table.push(f(&decode(code, n, arity)));
        }
        OperationTable { n, arity, table }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn atom_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, tuple: &[AtomId]) -> AtomId {
        self.table[encode(tuple, self.n)]
    }

    pub fn set(&mut self, tuple: &[AtomId], value: AtomId) {
        let i = encode(tuple, self.n);
        self.table[i] = value;
    }

    pub fn is_conservative(&self) -> bool {
        (0..self.table.len()).all(|code| {
            let tuple = decode(code, self.n, self.arity);
            tuple.contains(&self.table[code])
        })
    }

    pub fn is_binary_symmetric(&self) -> bool {
        self.arity == 2
            && (0..self.n as u8).all(|x| {
                (0..self.n as u8).all(|y| {
                    self.get(&[AtomId(x), AtomId(y)]) == self.get(&[AtomId(y), AtomId(x)])
                })
            })
    }

    pub fn is_wnu(&self) -> bool {
        if self.arity < 2 {
            return false;
        }
        for x in 0..self.n as u8 {
            for y in 0..self.n as u8 {
                let mut seen: Option<AtomId> = None;
                for pos in 0..self.arity {
                    let mut tuple = vec![AtomId(x); self.arity];
                    tuple[pos] = AtomId(y);
                    let v = self.get(&tuple);
                    match seen {
                        None => seen = Some(v),
                        Some(s) if s == v => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    /// Restriction to a two-element set is a majority / minority operation.
    pub fn restriction_is_majority(&self, a: AtomId, b: AtomId) -> bool {
        self.arity == 3 && self.check_pair(a, b, false)
    }

    pub fn restriction_is_minority(&self, a: AtomId, b: AtomId) -> bool {
        self.arity == 3 && self.check_pair(a, b, true)
    }

    fn check_pair(&self, a: AtomId, b: AtomId, minority: bool) -> bool {
        for (x, y) in [(a, b), (b, a)] {
            for pos in 0..3 {
                let mut tuple = [x; 3];
                tuple[pos] = y;
                let expect = if minority { y } else { x };
                if self.get(&tuple) != expect {
                    return false;
                }
            }
            if self.get(&[x, x, x]) != x {
                return false;
            }
        }
        true
    }
}

fn encode(tuple: &[AtomId], n: usize) -> usize {
    tuple.iter().fold(0usize, |acc, a| acc * n + a.idx())
}

fn decode(code: usize, n: usize, arity: usize) -> Vec<AtomId> {
    let mut tuple = vec![AtomId(0); arity];
    let mut c = code;
    for i in (0..arity).rev() {
        tuple[i] = AtomId((c % n) as u8);
        c /= n;
    }
    tuple
}

/// True iff the operation preserves every relation of the atom structure:
/// the unary element relations (equivalently, conservativity), the converse
/// graph E, and the cycle relation R.
pub fn verify_polymorphism(ra: &RelationAlgebra, op: &OperationTable) -> bool {
    assert!(op.arity() <= 3, "arity above 3 is out of scope");
    if op.atom_count() != ra.atom_count() {
        return false;
    }
    if !op.is_conservative() {
        return false;
    }
    let k = op.arity();
    let n = ra.atom_count();
    // E preservation: zip k converse pairs
    let pairs: Vec<(AtomId, AtomId)> = ra.atoms().map(|a| (a, ra.converse().of(a))).collect();
    let mut idx = vec![0usize; k];
    loop {
        let u: Vec<AtomId> = idx.iter().map(|&i| pairs[i].0).collect();
        let v: Vec<AtomId> = idx.iter().map(|&i| pairs[i].1).collect();
        if ra.converse().of(op.get(&u)) != op.get(&v) {
            return false;
        }
        if !bump(&mut idx, n) {
            break;
        }
    }
    // R preservation: zip k allowed triples
    let cycles: Vec<Triple> = ra.cycles().iter(n).collect();
    let mut idx = vec![0usize; k];
    loop {
        let t0: Vec<AtomId> = idx.iter().map(|&i| cycles[i].0).collect();
        let t1: Vec<AtomId> = idx.iter().map(|&i| cycles[i].1).collect();
        let t2: Vec<AtomId> = idx.iter().map(|&i| cycles[i].2).collect();
        if !ra.is_allowed((op.get(&t0), op.get(&t1), op.get(&t2))) {
            return false;
        }
        if !bump(&mut idx, cycles.len()) {
            break;
        }
    }
    true
}

fn bump(idx: &mut [usize], base: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < base {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Witness that one pair satisfies the conservative tractability condition.
#[derive(Debug, Clone)]
pub enum PairWitness {
    BinarySymmetric(OperationTable),
    Majority(OperationTable),
    Minority(OperationTable),
}

#[derive(Debug, Clone)]
pub enum BulatovOutcome {
    Pass(Vec<((AtomId, AtomId), PairWitness)>),
    Fail((AtomId, AtomId)),
    Budget,
}

impl BulatovOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, BulatovOutcome::Pass(_))
    }
}

/// For every 2-element atom subset, searches for a polymorphism of the atom
/// structure whose restriction to the pair is binary symmetric, majority or
/// minority. The binary search is exhaustive over conservative tables; the
/// ternary searches solve the conservative indicator problem by
/// backtracking with arc consistency, with the pair restriction as target.
pub fn bulatov_condition(ra: &RelationAlgebra, budget: u64) -> BulatovOutcome {
    let n = ra.atom_count();
    let mut witnesses = Vec::new();
    let mut spent = 0u64;
    for a in 0..n as u8 {
        for b in a + 1..n as u8 {
            let pair = (AtomId(a), AtomId(b));
            let found = pair_witness_spent(ra, pair, budget, &mut spent);
            if spent > budget {
                return BulatovOutcome::Budget;
            }
            match found {
                Some(w) => witnesses.push((pair, w)),
                None => return BulatovOutcome::Fail(pair),
            }
        }
    }
    BulatovOutcome::Pass(witnesses)
}

/// Searches a conservative polymorphism whose restriction to the pair is
/// binary symmetric, a majority, or a minority; the first kind that exists.
pub fn pair_witness(ra: &RelationAlgebra, pair: (AtomId, AtomId), budget: u64) -> Option<PairWitness> {
    let mut spent = 0u64;
    pair_witness_spent(ra, pair, budget, &mut spent)
}

fn pair_witness_spent(
    ra: &RelationAlgebra,
    pair: (AtomId, AtomId),
    budget: u64,
    spent: &mut u64,
) -> Option<PairWitness> {
    binary_symmetric_search(ra, pair, budget, spent)
        .map(PairWitness::BinarySymmetric)
        .or_else(|| ternary_search(ra, pair, false, budget, spent).map(PairWitness::Majority))
        .or_else(|| ternary_search(ra, pair, true, budget, spent).map(PairWitness::Minority))
}

/// Exhausts the 2^(n^2 - n) conservative binary tables in lexicographic
/// order of their flattened entries, returning the first polymorphism that
/// is symmetric on the pair.
fn binary_symmetric_search(
    ra: &RelationAlgebra,
    pair: (AtomId, AtomId),
    budget: u64,
    spent: &mut u64,
) -> Option<OperationTable> {
    let n = ra.atom_count();
    let free: Vec<(AtomId, AtomId)> = (0..n as u8)
        .flat_map(|x| (0..n as u8).map(move |y| (AtomId(x), AtomId(y))))
        .filter(|(x, y)| x != y)
        .collect();
    let total = 1u32 << free.len();
    for mask in 0..total {
        *spent += 1;
        if *spent > budget {
            return None;
        }
        let mut op = OperationTable::projection(n, 2, 0);
        for (i, &(x, y)) in free.iter().enumerate() {
            let v = if mask >> i & 1 == 0 { x } else { y };
            op.set(&[x, y], v);
        }
        if op.get(&[pair.0, pair.1]) != op.get(&[pair.1, pair.0]) {
            continue;
        }
        if verify_polymorphism(ra, &op) {
            return Some(op);
        }
    }
    None
}

/// Searches a conservative ternary polymorphism that is a majority
/// (or minority) on the pair, as a CSP over the table entries.
fn ternary_search(
    ra: &RelationAlgebra,
    pair: (AtomId, AtomId),
    minority: bool,
    budget: u64,
    spent: &mut u64,
) -> Option<OperationTable> {
    let n = ra.atom_count();
    let var_count = n * n * n;
    let var_of = |t: &[AtomId]| encode(t, n);
    let mut domains: Vec<Element> = (0..var_count)
        .map(|code| {
            let t = decode(code, n, 3);
            t.iter().map(|&a| Element::atom(a)).fold(Element::EMPTY, Element::union)
        })
        .collect();
    // target: majority / minority identities on the pair
    let (a, b) = pair;
    for (x, y) in [(a, b), (b, a)] {
        for pos in 0..3 {
            let mut t = [x; 3];
            t[pos] = y;
            let val = if minority { y } else { x };
            domains[var_of(&t)] = Element::atom(val);
        }
    }
    let mut constraints: Vec<TableConstraint> = Vec::new();
    let mut seen_scopes: HashMap<Vec<usize>, ()> = HashMap::new();
    let cycles: Vec<Triple> = ra.cycles().iter(n).collect();
    let cycle_rows: Vec<Vec<AtomId>> = cycles.iter().map(|t| vec![t.0, t.1, t.2]).collect();
    let mut idx = [0usize; 3];
    loop {
        *spent += 1;
        if *spent > budget {
            return None;
        }
        let (p, q, r) = (cycles[idx[0]], cycles[idx[1]], cycles[idx[2]]);
        let scope = vec![
            var_of(&[p.0, q.0, r.0]),
            var_of(&[p.1, q.1, r.1]),
            var_of(&[p.2, q.2, r.2]),
        ];
        if seen_scopes.insert(scope.clone(), ()).is_none() {
            constraints.push(TableConstraint { scope, allowed: cycle_rows.clone() });
        }
        if !bump(&mut idx, cycles.len()) {
            break;
        }
    }
    // converse constraints
    let conv_rows: Vec<Vec<AtomId>> =
        ra.atoms().map(|x| vec![x, ra.converse().of(x)]).collect();
    let atoms: Vec<AtomId> = ra.atoms().collect();
    let mut idx = [0usize; 3];
    loop {
        let u = [atoms[idx[0]], atoms[idx[1]], atoms[idx[2]]];
        let v = [
            ra.converse().of(u[0]),
            ra.converse().of(u[1]),
            ra.converse().of(u[2]),
        ];
        let scope = vec![var_of(&u), var_of(&v)];
        if seen_scopes.insert(scope.clone(), ()).is_none() {
            constraints.push(TableConstraint { scope, allowed: conv_rows.clone() });
        }
        if !bump(&mut idx, n) {
            break;
        }
    }
    let instance = CspInstance { domains, constraints };
    let solution = solve_csp(&instance)?;
    let mut op = OperationTable::projection(n, 3, 0);
    for (code, &val) in solution.iter().enumerate() {
        let t = decode(code, n, 3);
        op.set(&t, val);
    }
    debug_assert!(verify_polymorphism(ra, &op));
    Some(op)
}

/// The explicit polymorphism tables the tractability section presents,
/// keyed by the algebras they serve.
pub fn embedded_polymorphisms() -> Vec<(&'static str, &'static str, OperationTable)> {
    let cat = crate::catalog::catalog();
    let mut out = Vec::new();
    let chain_max = |names: &[&'static str], label: &'static str| {
        let mut v = Vec::new();
        for &name in names {
            let ra = &cat.lookup(name).unwrap().algebra;
            let op = OperationTable::from_fn(ra.atom_count(), 2, |t| {
                AtomId(t.iter().map(|a| a.0).max().unwrap())
            });
            v.push((name, label, op));
        }
        v
    };
    // id < a (< b (< c)) join tables; for 1_2 the join table fails to
    // preserve R (zipping (a,a,id) with (id,a,a) needs the forbidden
    // 1-cycle), so its witness is the parity minority instead
    {
        let ra = &cat.lookup("1_2").unwrap().algebra;
        let id = ra.identity_atom().unwrap();
        let a = ra.atom_by_name("a").unwrap();
        let op = OperationTable::from_fn(2, 3, move |t| {
            let odd = t.iter().filter(|&&x| x == a).count() % 2 == 1;
            if odd {
                a
            } else {
                id
            }
        });
        out.push(("1_2", "ternary parity minority", op));
    }
    out.extend(chain_max(&["2_2"], "binary max over id<a"));
    out.extend(chain_max(&["4_7", "7_7"], "binary max over id<a<b"));
    out.extend(chain_max(&["8_65", "14_65"], "binary max over id<a<b<c"));
    // a absorbs, id neutral, c beats b
    for name in ["20_65", "53_65", "61_65", "65_65"] {
        let ra = &cat.lookup(name).unwrap().algebra;
        let id = ra.identity_atom().unwrap();
        let a = ra.atom_by_name("a").unwrap();
        let c = ra.atom_by_name("c").unwrap();
        let op = OperationTable::from_fn(4, 2, |t| {
            let (x, y) = (t[0], t[1]);
            if x == a || y == a {
                a
            } else if x == id {
                y
            } else if y == id {
                x
            } else if x == c || y == c {
                c
            } else {
                x
            }
        });
        out.push((name, "binary: a absorbing, id neutral, c over b", op));
    }
    for name in ["3_3", "37_37"] {
        let ra = &cat.lookup(name).unwrap().algebra;
        out.push((name, "ternary WNU (identity-aware minority style)", wnu_3_3_style(ra)));
    }
    out.push(("3_7", "ternary WNU: b dominant, minority on {a,id}", wnu_dominant_minority("3_7", &["b"])));
    out.push((
        "7_65",
        "ternary WNU: c then b dominant, minority on {a,id}",
        wnu_dominant_minority("7_65", &["c", "b"]),
    ));
    out.push(("5_37", "ternary WNU for 5_37", wnu_5_37_style("5_37", false)));
    for name in ["6_37", "22_37"] {
        out.push((name, "ternary WNU for 6_37/22_37", wnu_5_37_style(name, true)));
    }
    out.push(("12_37", "ternary WNU for 12_37", wnu_12_37()));
    out.push(("19_65", "ternary WNU for 19_65", wnu_19_65()));
    out
}

/// Odd-one-out on a two-element set.
fn minority2(t: &[AtomId]) -> AtomId {
    if t[0] == t[1] {
        t[2]
    } else if t[0] == t[2] {
        t[1]
    } else {
        t[0]
    }
}

/// The WNU for 3_3 / 37_37: minority-style on the identity, first-of-cycle
/// on mixed identity triples, first argument on diversity triples, with the
/// all-distinct diversity triples of 37_37 collapsing to `a`.
fn wnu_3_3_style(ra: &RelationAlgebra) -> OperationTable {
    let id = ra.identity_atom().unwrap();
    let n = ra.atom_count();
    OperationTable::from_fn(n, 3, |t| {
        let ids = t.iter().filter(|&&x| x == id).count();
        match ids {
            3 => id,
            2 => *t.iter().find(|&&x| x != id).unwrap(),
            1 => {
                // f(id,x,y) = x, f(y,id,x) = x, f(x,y,id) = x
                let pos = t.iter().position(|&x| x == id).unwrap();
                t[(pos + 1) % 3]
            }
            _ => {
                let distinct =
                    t[0] != t[1] && t[1] != t[2] && t[0] != t[2];
                if distinct {
                    // only arises for 37_37: all permutations of (r, r', a)
                    ra.atom_by_name("a").expect("37_37 has the symmetric atom a")
                } else {
                    // f(x,x,y) = f(x,y,x) = f(y,x,x) = x
                    if t[0] == t[1] || t[0] == t[2] {
                        t[0]
                    } else {
                        t[1]
                    }
                }
            }
        }
    })
}

/// `h(.., d, ..) = d` for each dominant atom in order, else minority on the
/// remaining two atoms {a, id}.
fn wnu_dominant_minority(name: &str, dominant: &[&str]) -> OperationTable {
    let ra = &crate::catalog::catalog().lookup(name).unwrap().algebra;
    let doms: Vec<AtomId> = dominant.iter().map(|d| ra.atom_by_name(d).unwrap()).collect();
    OperationTable::from_fn(ra.atom_count(), 3, move |t| {
        for &d in &doms {
            if t.contains(&d) {
                return d;
            }
        }
        minority2(t)
    })
}

/// The 5_37 WNU; with `aaid_to_a` the 6_37/22_37 variant that sends the
/// {a,a,id} triples to `a` instead of the minority value.
fn wnu_5_37_style(name: &str, aaid_to_a: bool) -> OperationTable {
    let ra = &crate::catalog::catalog().lookup(name).unwrap().algebra;
    let id = ra.identity_atom().unwrap();
    let a = ra.atom_by_name("a").unwrap();
    let r = ra.atom_by_name("r").unwrap();
    let rc = ra.atom_by_name("r'").unwrap();
    OperationTable::from_fn(ra.atom_count(), 3, move |t| {
        let has = |x: AtomId| t.contains(&x);
        let within = |set: &[AtomId]| t.iter().all(|x| set.contains(x));
        if within(&[a, id]) {
            if aaid_to_a && has(a) && has(id) && t.iter().filter(|&&x| x == a).count() == 2 {
                return a;
            }
            return minority2(t);
        }
        if within(&[r, rc]) {
            return minority2(t);
        }
        if has(r) && !has(rc) {
            return r;
        }
        if has(rc) && !has(r) {
            return rc;
        }
        // exactly one r, one r', one of {a, id}: the later of r, r' wins
        let pos_r = t.iter().position(|&x| x == r).unwrap();
        let pos_rc = t.iter().position(|&x| x == rc).unwrap();
        if pos_rc < pos_r {
            r
        } else {
            rc
        }
    })
}

fn wnu_12_37() -> OperationTable {
    let ra = &crate::catalog::catalog().lookup("12_37").unwrap().algebra;
    let id = ra.identity_atom().unwrap();
    let a = ra.atom_by_name("a").unwrap();
    let r = ra.atom_by_name("r").unwrap();
    let rc = ra.atom_by_name("r'").unwrap();
    OperationTable::from_fn(ra.atom_count(), 3, move |t| {
        if t.contains(&a) {
            return a;
        }
        let within = |set: &[AtomId]| t.iter().all(|x| set.contains(x));
        if within(&[id]) {
            return id;
        }
        if within(&[r, rc]) {
            return minority2(t);
        }
        if within(&[r, id]) {
            return r;
        }
        if within(&[rc, id]) {
            return rc;
        }
        // one r, one r', one id: the later of r, r' wins
        let pos_r = t.iter().position(|&x| x == r).unwrap();
        let pos_rc = t.iter().position(|&x| x == rc).unwrap();
        if pos_rc < pos_r {
            r
        } else {
            rc
        }
    })
}

fn wnu_19_65() -> OperationTable {
    let ra = &crate::catalog::catalog().lookup("19_65").unwrap().algebra;
    let id = ra.identity_atom().unwrap();
    let a = ra.atom_by_name("a").unwrap();
    let b = ra.atom_by_name("b").unwrap();
    let c = ra.atom_by_name("c").unwrap();
    OperationTable::from_fn(ra.atom_count(), 3, move |t| {
        if t.contains(&a) {
            return a;
        }
        if t.iter().all(|&x| x == b || x == id) {
            return minority2(t);
        }
        debug_assert!(t.contains(&c));
        c
    })
}
