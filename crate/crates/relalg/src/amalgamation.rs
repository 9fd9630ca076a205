//! Amalgamation over reduced consistent atomic networks: AP(k,l,m), JEP,
//! the two-point criterion for normal representations, and the bounded
//! probe for fully universal representations.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::algebra::{AtomId, Element, RelationAlgebra};
use crate::network::{canonical_form, AtomicNetwork, Network};

/// A failed amalgamation instance: two consistent one-or-more-point
/// extensions of a shared base with no consistent completion of the union.
#[derive(Debug, Clone)]
pub struct ApWitness {
    pub base: AtomicNetwork,
    /// Extension of the base to size k; base vertices come first.
    pub ext1: AtomicNetwork,
    /// Extension of the base to size m; base vertices come first.
    pub ext2: AtomicNetwork,
    /// Unfillable pairs in union coordinates (ext1-new block, then ext2-new).
    pub missing: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub enum ApOutcome {
    Pass,
    Fail(ApWitness),
    Budget,
}

impl ApOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ApOutcome::Pass)
    }

    pub fn witness(&self) -> Option<&ApWitness> {
        match self {
            ApOutcome::Fail(w) => Some(w),
            _ => None,
        }
    }
}

/// Default budget: primitive triangle checks.
pub const DEFAULT_AP_BUDGET: u64 = 1_000_000_000;

struct Budget<'a> {
    counter: &'a AtomicU64,
    limit: u64,
}

impl Budget<'_> {
    #[inline]
    fn spend(&self, units: u64) -> bool {
        self.counter.fetch_add(units, Ordering::Relaxed) + units <= self.limit
    }
}

/// Diversity atoms of the algebra, the edge alphabet of reduced networks.
fn diversity_atoms(ra: &RelationAlgebra) -> Vec<AtomId> {
    let id = ra.identity();
    ra.atoms().filter(|a| !id.contains(*a)).collect()
}

/// All reduced consistent atomic networks with `size` vertices, one per
/// isomorphism class, sorted by canonical form.
pub fn reduced_networks_upto_iso(ra: &RelationAlgebra, size: usize) -> Vec<AtomicNetwork> {
    let mut current = vec![AtomicNetwork::from_network(ra, Network::top(ra, 0)).unwrap()];
    for n in 1..=size {
        let mut seen: Vec<Vec<u16>> = Vec::new();
        let mut next: Vec<(Vec<u16>, AtomicNetwork)> = Vec::new();
        for small in &current {
            for ext in one_point_extensions(ra, small.network(), n - 1) {
                let an = AtomicNetwork::from_network(ra, ext).unwrap();
                debug_assert!(an.is_consistent());
                let key = canonical_form(&an);
                if !seen.contains(&key) {
                    seen.push(key.clone());
                    next.push((key, an));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        current = next.into_iter().map(|(_, n)| n).collect();
    }
    current
}

/// Consistent reduced one-point extensions of `net` (which has `old` fully
/// labelled vertices); the new vertex is attached by diversity atoms.
fn one_point_extensions(ra: &RelationAlgebra, net: &Network, old: usize) -> Vec<Network> {
    let alphabet = diversity_atoms(ra);
    let mut out = Vec::new();
    let mut grown = Network::top(ra, old + 1);
    for x in 0..old {
        for y in 0..old {
            if x != y {
                let l = net.label(x, y);
                grown.set(ra, x, y, l);
            }
        }
    }
    let z = old;
    extend_rec(ra, &alphabet, &mut grown, z, 0, &mut |n| out.push(n.clone()));
    out
}

fn extend_rec(
    ra: &RelationAlgebra,
    alphabet: &[AtomId],
    net: &mut Network,
    z: usize,
    next: usize,
    emit: &mut impl FnMut(&Network),
) {
    if next == z {
        emit(net);
        return;
    }
    for &atom in alphabet {
        net.set(ra, z, next, Element::atom(atom));
        // triangles (z, next, w) for already-attached w, plus the pair itself
        let ok = (0..next).all(|w| {
            let t = (
                net.label(z, w).as_atom().unwrap(),
                net.label(w, next).as_atom().unwrap(),
                net.label(z, next).as_atom().unwrap(),
            );
            ra.is_allowed(t)
        });
        if ok {
            extend_rec(ra, alphabet, net, z, next + 1, emit);
        }
    }
    net.set(ra, z, next, ra.one());
}

/// Consistent reduced extensions of `base` to `size` vertices, base first,
/// deduplicated up to permutations of the new vertices (base fixed).
fn extensions(ra: &RelationAlgebra, base: &AtomicNetwork, size: usize) -> Vec<AtomicNetwork> {
    let l = base.size();
    if size == l {
        return vec![base.clone()];
    }
    let mut nets = vec![base.network().clone()];
    for grow in l..size {
        let mut next = Vec::new();
        for net in &nets {
            for ext in one_point_extensions(ra, net, grow) {
                next.push(ext);
            }
        }
        nets = next;
    }
    // dedup up to base-fixing permutations of the new vertices
    let mut out: Vec<AtomicNetwork> = Vec::new();
    let mut seen: Vec<Vec<u16>> = Vec::new();
    for net in nets {
        let key = base_fixed_canonical(&net, l);
        if !seen.contains(&key) {
            seen.push(key);
            out.push(AtomicNetwork::from_network(ra, net).unwrap());
        }
    }
    out
}

fn base_fixed_canonical(net: &Network, base: usize) -> Vec<u16> {
    let n = net.size();
    let new: Vec<usize> = (base..n).collect();
    let mut best: Option<Vec<u16>> = None;
    permutations(&new, &mut |perm| {
        let full: Vec<usize> = (0..base).chain(perm.iter().copied()).collect();
        let mut key = Vec::with_capacity(n * n);
        for &x in &full {
            for &y in &full {
                key.push(net.label(x, y).0);
            }
        }
        match &best {
            Some(b) if *b <= key => {}
            _ => best = Some(key),
        }
    });
    best.unwrap()
}

fn permutations(items: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut v = items.to_vec();
    fn rec(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            rec(v, k + 1, f);
            v.swap(k, i);
        }
    }
    rec(&mut v, 0, f);
}

/// Builds the union network of two extensions over a common base, with the
/// cross edges undetermined (set to 1).
fn union_network(ra: &RelationAlgebra, l: usize, e1: &AtomicNetwork, e2: &AtomicNetwork) -> Network {
    let k = e1.size();
    let m = e2.size();
    let total = k + m - l;
    let mut u = Network::top(ra, total);
    for x in 0..k {
        for y in 0..k {
            if x != y {
                let lab = e1.network().label(x, y);
                u.set(ra, x, y, lab);
            }
        }
    }
    let shift = |v: usize| if v < l { v } else { v - l + k };
    for x in 0..m {
        for y in 0..m {
            if x != y {
                let lab = e2.network().label(x, y);
                u.set(ra, shift(x), shift(y), lab);
            }
        }
    }
    u
}

fn missing_edges(l: usize, k: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in l..k {
        for y in k..k + (m - l) {
            out.push((x, y));
        }
    }
    out
}

/// Exhaustive atom assignment to the missing edges; true iff some
/// assignment keeps every triangle allowed.
fn completion_exists(
    ra: &RelationAlgebra,
    union: &mut Network,
    missing: &[(usize, usize)],
    budget: &Budget,
) -> Option<bool> {
    fn rec(
        ra: &RelationAlgebra,
        union: &mut Network,
        missing: &[(usize, usize)],
        depth: usize,
        budget: &Budget,
    ) -> Option<bool> {
        if depth == missing.len() {
            return Some(true);
        }
        let (x, y) = missing[depth];
        for atom in ra.atoms() {
            union.set(ra, x, y, Element::atom(atom));
            if !budget.spend(union.size() as u64) {
                return None;
            }
            let ok = (0..union.size()).all(|w| {
                if w == x || w == y {
                    return true;
                }
                let (xw, wy, xy) = (union.label(x, w), union.label(w, y), union.label(x, y));
                match (xw.as_atom(), wy.as_atom(), xy.as_atom()) {
                    (Some(a), Some(b), Some(c)) => ra.is_allowed((a, b, c)),
                    _ => true,
                }
            });
            // identity assignments also force equal rows
            let ok = ok
                && (atom != ra.identity_atom().unwrap_or(AtomId(u8::MAX))
                    || (0..union.size()).all(|w| {
                        w == x
                            || w == y
                            || !union.label(x, w).is_atom()
                            || !union.label(y, w).is_atom()
                            || union.label(x, w) == union.label(y, w)
                    }));
            if ok {
                match rec(ra, union, missing, depth + 1, budget) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
        }
        union.set(ra, x, y, ra.one());
        Some(false)
    }
    rec(ra, union, missing, 0, budget)
}

/// Decides AP(k, l, m) over reduced consistent atomic networks. Bases are
/// enumerated up to isomorphism, extensions concretely; FAIL carries the
/// first witness in deterministic order.
pub fn check_ap(ra: &RelationAlgebra, k: usize, l: usize, m: usize, budget: u64) -> ApOutcome {
    assert!(l <= k.min(m), "AP(k,l,m) requires l <= min(k,m)");
    assert!(k <= 7 && m <= 7, "sizes above 7 are out of scope");
    let bases = reduced_networks_upto_iso(ra, l);
    let counter = AtomicU64::new(0);
    let result = bases.par_iter().find_map_first(|base| {
        let budget = Budget { counter: &counter, limit: budget };
        let ext1s = extensions(ra, base, k);
        let ext2s = extensions(ra, base, m);
        for e1 in &ext1s {
            for e2 in &ext2s {
                let mut union = union_network(ra, l, e1, e2);
                let missing = missing_edges(l, k, m);
                match completion_exists(ra, &mut union, &missing, &budget) {
                    Some(true) => {}
                    Some(false) => {
                        return Some(ApOutcome::Fail(ApWitness {
                            base: base.clone(),
                            ext1: e1.clone(),
                            ext2: e2.clone(),
                            missing,
                        }))
                    }
                    None => return Some(ApOutcome::Budget),
                }
            }
        }
        None
    });
    result.unwrap_or(ApOutcome::Pass)
}

/// Re-validates a FAIL witness independently of the search: both sides
/// consistent and reduced, they agree on the base, and every atom
/// assignment to the missing edges breaks some triangle.
pub fn validate_witness(ra: &RelationAlgebra, w: &ApWitness) -> bool {
    let l = w.base.size();
    if !w.ext1.is_consistent() || !w.ext2.is_consistent() {
        return false;
    }
    for x in 0..l {
        for y in 0..l {
            if w.ext1.network().label(x, y) != w.base.network().label(x, y)
                || w.ext2.network().label(x, y) != w.base.network().label(x, y)
            {
                return false;
            }
        }
    }
    let counter = AtomicU64::new(0);
    let budget = Budget { counter: &counter, limit: u64::MAX };
    let mut union = union_network(ra, l, &w.ext1, &w.ext2);
    completion_exists(ra, &mut union, &w.missing, &budget) == Some(false)
}

#[derive(Debug, Clone)]
pub enum NormalRepresentation {
    Yes,
    No(ApWitness),
}

impl NormalRepresentation {
    pub fn is_yes(&self) -> bool {
        matches!(self, NormalRepresentation::Yes)
    }
}

/// Decides the existence of a normal representation via two-point
/// amalgamation: YES iff AP(k+1, k, k+1) holds for k the atom count.
/// Failures are reported from the smallest failing two-point level, which
/// keeps the witnesses at the size the failure actually needs.
pub fn has_normal_representation(ra: &RelationAlgebra, budget: u64) -> NormalRepresentation {
    let k = ra.atom_count();
    let levels: Vec<usize> = if k <= 2 { vec![2] } else { (3..=k).collect() };
    for l in levels {
        match check_ap(ra, l + 1, l, l + 1, budget) {
            ApOutcome::Pass => {}
            ApOutcome::Fail(w) => return NormalRepresentation::No(w),
            ApOutcome::Budget => panic!("two-point amalgamation exceeded its budget"),
        }
    }
    NormalRepresentation::Yes
}

#[derive(Debug, Clone)]
pub enum FullyUniversalProbe {
    Counterexample(ApWitness, usize),
    NoCounterexampleUpTo(usize),
    Budget,
}

/// Searches AP(3,2,n) failures for n = 3..=max_n. A counterexample
/// certifies that no fully universal representation exists; absence is
/// bounded evidence only.
pub fn fully_universal_probe(ra: &RelationAlgebra, max_n: usize, budget: u64) -> FullyUniversalProbe {
    assert!(max_n <= 7);
    for n in 3..=max_n {
        match check_ap(ra, 3, 2, n, budget) {
            ApOutcome::Pass => {}
            ApOutcome::Fail(w) => return FullyUniversalProbe::Counterexample(w, n),
            ApOutcome::Budget => return FullyUniversalProbe::Budget,
        }
    }
    FullyUniversalProbe::NoCounterexampleUpTo(max_n)
}

#[derive(Debug, Clone)]
pub enum JepOutcome {
    Pass,
    Fail(ApWitness),
    Budget,
}

/// JEP restricted to sizes `k <= max_k`, `m <= max_m`: AP(k, 0, m) for all
/// such pairs (checked once per unordered pair).
pub fn check_jep(ra: &RelationAlgebra, max_k: usize, max_m: usize, budget: u64) -> JepOutcome {
    assert!(max_k <= 5 && max_m <= 5);
    for k in 1..=max_k {
        for m in k..=max_m {
            match check_ap(ra, k, 0, m, budget) {
                ApOutcome::Pass => {}
                ApOutcome::Fail(w) => return JepOutcome::Fail(w),
                ApOutcome::Budget => return JepOutcome::Budget,
            }
        }
    }
    JepOutcome::Pass
}

/// A two-point amalgamation failure schema at base size 3, in the shape the
/// summary table uses: base path `(a1,a2,a3)` with `f(t,m)=a1`, `f(m,b)=a2`,
/// `f(t,b)=a3`, one extension attached by `(b1,b2,b3)`, the other by
/// `(c1,c2,c3)`.
#[derive(Debug, Clone, Copy)]
pub struct FailureSchema {
    pub base: [AtomId; 3],
    pub ext1: [AtomId; 3],
    pub ext2: [AtomId; 3],
}

impl FailureSchema {
    pub fn to_witness(&self, ra: &RelationAlgebra) -> Option<ApWitness> {
        let mut base = Network::top(ra, 3);
        base.set(ra, 0, 1, Element::atom(self.base[0]));
        base.set(ra, 1, 2, Element::atom(self.base[1]));
        base.set(ra, 0, 2, Element::atom(self.base[2]));
        let base = AtomicNetwork::from_network(ra, base).ok()?;
        let attach = |labels: [AtomId; 3]| -> Option<AtomicNetwork> {
            let mut n = Network::top(ra, 4);
            for x in 0..3 {
                for y in 0..3 {
                    if x != y {
                        let l = base.network().label(x, y);
                        n.set(ra, x, y, l);
                    }
                }
            }
            for (i, lab) in labels.iter().enumerate() {
                n.set(ra, i, 3, Element::atom(*lab));
            }
            AtomicNetwork::from_network(ra, n).ok()
        };
        let ext1 = attach(self.ext1)?;
        let ext2 = attach(self.ext2)?;
        Some(ApWitness { base, ext1, ext2, missing: vec![(3, 4)] })
    }

    /// True iff the schema is a genuine AP(4,3,4) failure of `ra`.
    pub fn validates(&self, ra: &RelationAlgebra) -> bool {
        match self.to_witness(ra) {
            Some(w) => {
                w.ext1.is_consistent() && w.ext2.is_consistent() && validate_witness(ra, &w)
            }
            None => false,
        }
    }
}

/// Compares a found witness against a schema up to algebra automorphism,
/// base permutation and swapping the two sides: both are turned into their
/// canonical completed-union forms and compared.
pub fn witness_matches_schema(
    ra: &RelationAlgebra,
    witness: &ApWitness,
    schema: &FailureSchema,
) -> bool {
    let other = match schema.to_witness(ra) {
        Some(w) => w,
        None => return false,
    };
    if witness.base.size() != 3 || witness.ext1.size() != 4 || witness.ext2.size() != 4 {
        return false;
    }
    witnesses_equivalent(ra, witness, &other)
}

/// Two witnesses denote the same configuration up to atom renaming (algebra
/// automorphism) and vertex permutation; the undetermined edges are the only
/// 1-labelled pairs, so the canonical union form captures them.
pub fn witnesses_equivalent(ra: &RelationAlgebra, a: &ApWitness, b: &ApWitness) -> bool {
    let keys_a = witness_keys(ra, a);
    let keys_b = witness_keys(ra, b);
    keys_a.iter().any(|k| keys_b.contains(k))
}

/// Canonical keys of the 5-vertex union under all atom renamings that
/// preserve the algebra (automorphisms).
fn witness_keys(ra: &RelationAlgebra, w: &ApWitness) -> Vec<Vec<u16>> {
    let union = union_network(ra, w.base.size(), &w.ext1, &w.ext2);
    let n = union.size();
    let autos = automorphisms(ra);
    let verts: Vec<usize> = (0..n).collect();
    let mut keys = Vec::new();
    for auto in &autos {
        let mut best: Option<Vec<u16>> = None;
        permutations(&verts, &mut |perm| {
            let mut key = Vec::with_capacity(n * n);
            for &x in perm {
                for &y in perm {
                    let e = union.label(x, y);
                    let mapped = e
                        .atoms()
                        .map(|a| Element::atom(auto[a.idx()]))
                        .fold(Element::EMPTY, Element::union);
                    let val = if e == ra.one() { e } else { mapped };
                    key.push(val.0);
                }
            }
            match &best {
                Some(b) if *b <= key => {}
                _ => best = Some(key),
            }
        });
        keys.push(best.unwrap());
    }
    keys.sort();
    keys.dedup();
    keys
}

/// Atom renamings of `ra` onto itself fixing the identity and preserving
/// converse and cycles.
fn automorphisms(ra: &RelationAlgebra) -> Vec<Vec<AtomId>> {
    let mut out = Vec::new();
    let n = ra.atom_count();
    let id = match ra.identity_atom() {
        Some(i) => i,
        None => return vec![(0..n as u8).map(AtomId).collect()],
    };
    let diversity: Vec<usize> = (0..n).filter(|&i| i != id.idx()).collect();
    permutations(&diversity, &mut |perm| {
        let mut p = vec![0usize; n];
        p[id.idx()] = id.idx();
        for (k, &src) in diversity.iter().enumerate() {
            p[src] = perm[k];
        }
        let pi: Vec<AtomId> = p.iter().map(|&i| AtomId(i as u8)).collect();
        let ok = ra.atoms().all(|x| pi[ra.converse().of(x).idx()] == ra.converse().of(pi[x.idx()]))
            && ra.cycles().iter(n).all(|t| {
                ra.cycles().contains((pi[t.0.idx()], pi[t.1.idx()], pi[t.2.idx()]))
            });
        if ok {
            out.push(pi);
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    fn alg(name: &str) -> &'static RelationAlgebra {
        &catalog().lookup(name).unwrap().algebra
    }

    fn atoms(ra: &RelationAlgebra, names: [&str; 3]) -> [AtomId; 3] {
        [
            ra.atom_by_name(names[0]).unwrap(),
            ra.atom_by_name(names[1]).unwrap(),
            ra.atom_by_name(names[2]).unwrap(),
        ]
    }

    #[test]
    fn ap_4_3_4_fails_for_5_7_with_table_witness() {
        let ra = alg("5_7");
        let out = check_ap(ra, 4, 3, 4, DEFAULT_AP_BUDGET);
        let w = out.witness().expect("5_7 has no normal representation");
        assert!(validate_witness(ra, w));
        let schema = FailureSchema {
            base: atoms(ra, ["a", "a", "b"]),
            ext1: atoms(ra, ["a", "b", "a"]),
            ext2: atoms(ra, ["a", "b", "b"]),
        };
        assert!(schema.validates(ra));
        assert!(witness_matches_schema(ra, w, &schema));
    }

    #[test]
    fn normal_representation_small_cases() {
        assert!(has_normal_representation(alg("7_7"), DEFAULT_AP_BUDGET).is_yes());
        assert!(has_normal_representation(alg("1_2"), DEFAULT_AP_BUDGET).is_yes());
        assert!(has_normal_representation(alg("2_2"), DEFAULT_AP_BUDGET).is_yes());
        assert!(!has_normal_representation(alg("5_7"), DEFAULT_AP_BUDGET).is_yes());
    }

    #[test]
    fn probe_39_65_and_56_65_fail_at_4() {
        for name in ["39_65", "56_65"] {
            match fully_universal_probe(alg(name), 4, DEFAULT_AP_BUDGET) {
                FullyUniversalProbe::Counterexample(w, n) => {
                    assert_eq!(n, 4, "{name}");
                    assert!(validate_witness(alg(name), &w));
                }
                other => panic!("{name}: expected counterexample, got {other:?}"),
            }
        }
    }

    #[test]
    fn probe_30_37_clean_to_5() {
        match fully_universal_probe(alg("30_37"), 5, DEFAULT_AP_BUDGET) {
            FullyUniversalProbe::NoCounterexampleUpTo(5) => {}
            other => panic!("expected no counterexample, got {other:?}"),
        }
    }

    #[test]
    fn jep_24_65_and_13_37() {
        assert!(matches!(check_jep(alg("24_65"), 4, 4, DEFAULT_AP_BUDGET), JepOutcome::Pass));
        assert!(matches!(check_jep(alg("13_37"), 4, 4, DEFAULT_AP_BUDGET), JepOutcome::Pass));
        // a flexible atom joins anything
        assert!(matches!(check_jep(alg("65_65"), 4, 4, DEFAULT_AP_BUDGET), JepOutcome::Pass));
    }

    #[test]
    fn ap_symmetry_in_k_m() {
        let ra = alg("5_7");
        let a = check_ap(ra, 4, 3, 5, DEFAULT_AP_BUDGET);
        let b = check_ap(ra, 5, 3, 4, DEFAULT_AP_BUDGET);
        assert_eq!(a.passed(), b.passed());
    }

    #[test]
    fn witness_62_65_matrix_m() {
        // the 6x6 matrix with the unfillable (4,5) entry re-validates as an
        // AP(5,4,5) failure
        let ra = alg("62_65");
        let (a, b, c) = (
            ra.atom_by_name("a").unwrap(),
            ra.atom_by_name("b").unwrap(),
            ra.atom_by_name("c").unwrap(),
        );
        let rows: [[AtomId; 6]; 6] = {
            let i = ra.identity_atom().unwrap();
            [
                [i, a, b, c, a, a],
                [a, i, a, a, b, b],
                [b, a, i, b, c, c],
                [c, a, b, i, a, b],
                [a, b, c, a, i, i], // (4,5) unset below
                [a, b, c, b, i, i],
            ]
        };
        let mut base = Network::top(ra, 4);
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    base.set(ra, x, y, Element::atom(rows[x][y]));
                }
            }
        }
        let base = AtomicNetwork::from_network(ra, base).unwrap();
        assert!(base.is_consistent());
        let attach = |col: usize| {
            let mut n = Network::top(ra, 5);
            for x in 0..4 {
                for y in 0..4 {
                    if x != y {
                        n.set(ra, x, y, Element::atom(rows[x][y]));
                    }
                }
            }
            for x in 0..4 {
                n.set(ra, x, 4, Element::atom(rows[x][col]));
            }
            AtomicNetwork::from_network(ra, n).unwrap()
        };
        let w = ApWitness {
            base,
            ext1: attach(4),
            ext2: attach(5),
            missing: vec![(4, 5)],
        };
        assert!(w.ext1.is_consistent() && w.ext2.is_consistent());
        assert!(validate_witness(ra, &w));
    }
}
