//! Brute-force verification of the hardness gadget networks and of the
//! promise-CSP reduction precondition, including the R(3,3) = 6 boundary.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{AtomId, Element, RelationAlgebra};
use crate::catalog::{catalog, CatalogEntry};
use crate::network::{for_each_solution, solve_ncp, AtomicNetwork, Network, PatternLibrary};

/// What a gadget figure asserts about the solutions of its network.
#[derive(Debug, Clone)]
pub enum ClaimKind {
    /// The listed edge pairs carry equal atoms in every solution.
    EqualOn(Vec<((usize, usize), (usize, usize))>),
    /// In every solution at least one listed edge carries the atom.
    AtLeastOneEquals { edges: Vec<(usize, usize)>, atom: AtomId },
    /// `premise` forces `conclusion` in every solution.
    Implies { premise: ((usize, usize), AtomId), conclusion: ((usize, usize), AtomId) },
    /// Some solution realizes the partial edge assignment.
    Realizable(Vec<((usize, usize), AtomId)>),
}

#[derive(Debug, Clone)]
pub struct GadgetClaim {
    pub net: Network,
    pub kind: ClaimKind,
}

#[derive(Debug, Clone)]
pub enum GadgetOutcome {
    Pass,
    /// For universal claims, the violating solution; REALIZABLE failures
    /// have no single witness.
    Counterexample(Option<AtomicNetwork>),
    Budget,
}

impl GadgetOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, GadgetOutcome::Pass)
    }
}

/// Verifies a claim by enumerating all solutions (consistent atomic
/// refinements; for the gadget algebras this coincides with satisfiability
/// since they have fully universal or normal representations).
pub fn verify_gadget(ra: &RelationAlgebra, claim: &GadgetClaim, budget: u64) -> GadgetOutcome {
    let lib = PatternLibrary::empty();
    match &claim.kind {
        ClaimKind::Realizable(fixed) => {
            let mut net = claim.net.clone();
            for &((x, y), atom) in fixed {
                let e = net.label(x, y).meet(Element::atom(atom));
                net.set(ra, x, y, e);
            }
            if net.has_empty_label() {
                return GadgetOutcome::Counterexample(None);
            }
            match solve_ncp(ra, &net, &lib) {
                Some(_) => GadgetOutcome::Pass,
                None => GadgetOutcome::Counterexample(None),
            }
        }
        universal => {
            let mut violation: Option<AtomicNetwork> = None;
            let res = for_each_solution(ra, &claim.net, &lib, Some(budget), &mut |sol| {
                let bad = match universal {
                    ClaimKind::EqualOn(pairs) => pairs.iter().any(|&((a, b), (c, d))| {
                        sol.network().label(a, b) != sol.network().label(c, d)
                    }),
                    ClaimKind::AtLeastOneEquals { edges, atom } => edges
                        .iter()
                        .all(|&(x, y)| sol.network().label(x, y) != Element::atom(*atom)),
                    ClaimKind::Implies { premise, conclusion } => {
                        let ((px, py), pa) = *premise;
                        let ((cx, cy), ca) = *conclusion;
                        sol.network().label(px, py) == Element::atom(pa)
                            && sol.network().label(cx, cy) != Element::atom(ca)
                    }
                    ClaimKind::Realizable(_) => unreachable!(),
                };
                if bad {
                    violation = Some(sol.clone());
                    false
                } else {
                    true
                }
            });
            match (res, violation) {
                (_, Some(v)) => GadgetOutcome::Counterexample(Some(v)),
                (Err(_), None) => GadgetOutcome::Budget,
                (Ok(()), None) => GadgetOutcome::Pass,
            }
        }
    }
}

struct GadgetBuilder<'a> {
    ra: &'a RelationAlgebra,
    net: Network,
}

impl<'a> GadgetBuilder<'a> {
    fn new(ra: &'a RelationAlgebra, n: usize) -> GadgetBuilder<'a> {
        GadgetBuilder { ra, net: Network::top(ra, n) }
    }

    fn el(&self, names: &[&str]) -> Element {
        let mut e = Element::EMPTY;
        for name in names {
            let a = if *name == "id" {
                self.ra.identity_atom().unwrap()
            } else {
                self.ra.atom_by_name(name).unwrap()
            };
            e = e.union(Element::atom(a));
        }
        e
    }

    fn edge(&mut self, x: usize, y: usize, names: &[&str]) -> &mut Self {
        let e = self.el(names);
        self.net.set(self.ra, x, y, e);
        self
    }

    fn atom(&self, name: &str) -> AtomId {
        self.ra.atom_by_name(name).unwrap()
    }
}

/// All gadget claims transcribed from the hardness figures, with the
/// converse-consistency of oriented edges completed automatically.
pub fn embedded_gadgets() -> Vec<(String, &'static CatalogEntry, GadgetClaim)> {
    let mut out: Vec<(String, &'static CatalogEntry, GadgetClaim)> = Vec::new();
    let cat = catalog();
    let mut push = |name: &str, entry: &'static CatalogEntry, net: &Network, kind: ClaimKind| {
        out.push((name.to_string(), entry, GadgetClaim { net: net.clone(), kind }));
    };

    // 19_37: equality of two (a + id)-edges through two linked ladders
    {
        let entry = cat.lookup("19_37").unwrap();
        let mut g = GadgetBuilder::new(&entry.algebra, 8);
        // x1=0 x2=1 z1=2 z2=3 z3=4 z4=5 y1=6 y2=7
        g.edge(0, 2, &["r", "id"])
            .edge(2, 4, &["r", "id"])
            .edge(4, 6, &["r", "id"])
            .edge(1, 3, &["r", "id"])
            .edge(3, 5, &["r", "id"])
            .edge(5, 7, &["r", "id"])
            .edge(0, 1, &["a", "id"])
            .edge(2, 3, &["a", "id"])
            .edge(4, 5, &["a", "id"])
            .edge(6, 7, &["a", "id"])
            .edge(4, 3, &["r", "id"])
            .edge(5, 2, &["r", "id"])
            .edge(2, 1, &["r", "id"])
            .edge(3, 0, &["r", "id"])
            .edge(6, 5, &["r", "id"])
            .edge(7, 4, &["r", "id"]);
        push("19_37 equality", entry, &g.net, ClaimKind::EqualOn(vec![((0, 1), (6, 7))]));
    }

    // 27_65: equality of two (c + id)-edges
    {
        let entry = cat.lookup("27_65").unwrap();
        let mut g = GadgetBuilder::new(&entry.algebra, 6);
        // x1=0 x2=1 z1=2 z2=3 y1=4 y2=5
        g.edge(0, 2, &["a", "id"])
            .edge(2, 4, &["a", "id"])
            .edge(1, 3, &["a", "id"])
            .edge(3, 5, &["a", "id"])
            .edge(0, 1, &["c", "id"])
            .edge(2, 3, &["c", "id"])
            .edge(4, 5, &["c", "id"])
            .edge(2, 1, &["b", "id"])
            .edge(3, 4, &["b", "id"]);
        push("27_65 equality", entry, &g.net, ClaimKind::EqualOn(vec![((0, 1), (4, 5))]));
    }

    // 29_65: equality of two (b + c)-edges
    {
        let entry = cat.lookup("29_65").unwrap();
        let mut g = GadgetBuilder::new(&entry.algebra, 10);
        // x1=0 x2=1 z1=2 z2=3 z3=4 z4=5 z5=6 z6=7 y1=8 y2=9
        g.edge(0, 2, &["b", "c"])
            .edge(2, 4, &["b", "c", "id"])
            .edge(4, 6, &["b", "c"])
            .edge(6, 8, &["b", "c", "id"])
            .edge(1, 3, &["b", "c"])
            .edge(3, 5, &["b", "c", "id"])
            .edge(5, 7, &["b", "c"])
            .edge(7, 9, &["b", "c", "id"])
            .edge(0, 1, &["b", "c"])
            .edge(2, 3, &["b", "c"])
            .edge(4, 5, &["b", "c"])
            .edge(6, 7, &["b", "c"])
            .edge(8, 9, &["b", "c"])
            .edge(3, 4, &["b", "c"])
            .edge(7, 8, &["b", "c"])
            .edge(2, 1, &["a"])
            .edge(6, 5, &["a"])
            .edge(0, 3, &["a"])
            .edge(4, 7, &["a"]);
        push("29_65 equality", entry, &g.net, ClaimKind::EqualOn(vec![((0, 1), (8, 9))]));
    }

    // 33_37: equality of two oriented edges, plus the no-directed-3-cycle
    // triangle behind the not-all-equal interpretation
    {
        let entry = cat.lookup("33_37").unwrap();
        let mut g = GadgetBuilder::new(&entry.algebra, 8);
        // x0=0 x1=1 u0=2 u1=3 u2=4 u3=5 y0=6 y1=7
        g.edge(0, 1, &["r", "r'"])
            .edge(0, 2, &["r"])
            .edge(2, 3, &["r", "r'"])
            .edge(6, 7, &["r", "r'"])
            .edge(2, 6, &["r"])
            .edge(7, 3, &["r"])
            .edge(3, 6, &["r", "r'"])
            .edge(3, 1, &["r"])
            .edge(2, 1, &["r", "r'"])
            .edge(4, 0, &["r"])
            .edge(4, 1, &["r", "r'"])
            .edge(1, 5, &["r"])
            .edge(4, 5, &["r", "r'"])
            .edge(6, 4, &["r"])
            .edge(5, 7, &["r"])
            .edge(5, 6, &["r", "r'"]);
        push("33_37 equality", entry, &g.net, ClaimKind::EqualOn(vec![((0, 1), (6, 7))]));

        let mut tri = GadgetBuilder::new(&entry.algebra, 3);
        tri.edge(0, 1, &["r", "r'"]).edge(1, 2, &["r", "r'"]).edge(2, 0, &["r", "r'"]);
        let r = tri.atom("r");
        let rc = tri.atom("r'");
        push(
            "33_37 triangle excludes one cyclic orientation",
            entry,
            &tri.net,
            ClaimKind::AtLeastOneEquals { edges: vec![(0, 1), (1, 2), (2, 0)], atom: rc },
        );
        push(
            "33_37 triangle excludes the other cyclic orientation",
            entry,
            &tri.net,
            ClaimKind::AtLeastOneEquals { edges: vec![(0, 1), (1, 2), (2, 0)], atom: r },
        );
        // every non-cyclic orientation pattern is realizable
        for code in 0..8u8 {
            let pat: Vec<AtomId> =
                (0..3).map(|i| if code >> i & 1 == 0 { r } else { rc }).collect();
            if pat.iter().all(|&x| x == r) || pat.iter().all(|&x| x == rc) {
                continue;
            }
            push(
                &format!("33_37 triangle realizes pattern {code}"),
                entry,
                &tri.net,
                ClaimKind::Realizable(vec![
                    ((0, 1), pat[0]),
                    ((1, 2), pat[1]),
                    ((2, 0), pat[2]),
                ]),
            );
        }
    }

    // 35_37: equality, the at-least-one-of-three gadget, and inequality
    {
        let entry = cat.lookup("35_37").unwrap();
        let mut e = GadgetBuilder::new(&entry.algebra, 4);
        // x0=0 x1=1 y0=2 y1=3; five of the six pairs carry r + r'
        e.edge(0, 2, &["r", "r'"])
            .edge(0, 1, &["r", "r'"])
            .edge(2, 3, &["r", "r'"])
            .edge(1, 2, &["r", "r'"])
            .edge(3, 1, &["r", "r'"]);
        push("35_37 equality", entry, &e.net, ClaimKind::EqualOn(vec![((0, 1), (2, 3))]));

        let mut s = GadgetBuilder::new(&entry.algebra, 7);
        // p1=0 p2=1 p3=2 p4=3 q1=4 q2=5 q3=6
        s.edge(1, 0, &["r", "id"])
            .edge(2, 1, &["r", "id"])
            .edge(3, 2, &["r", "id"])
            .edge(0, 4, &["r", "r'"])
            .edge(4, 1, &["r"])
            .edge(1, 5, &["r", "r'"])
            .edge(5, 2, &["r"])
            .edge(2, 6, &["r", "r'"])
            .edge(6, 3, &["r"])
            .edge(3, 0, &["r"]);
        let r = s.atom("r");
        push(
            "35_37 at-least-one",
            entry,
            &s.net,
            ClaimKind::AtLeastOneEquals { edges: vec![(0, 4), (1, 5), (2, 6)], atom: r },
        );

        let mut ineq = GadgetBuilder::new(&entry.algebra, 5);
        // q0=0 p0=1 q1=2 p1=3 z=4
        ineq.edge(0, 1, &["r", "r'"])
            .edge(0, 2, &["r", "r'"])
            .edge(1, 3, &["r", "r'"])
            .edge(4, 0, &["r", "r'"])
            .edge(4, 1, &["r", "r'"])
            .edge(4, 2, &["r", "r'"])
            .edge(4, 3, &["r", "r'"]);
        let rc = ineq.atom("r'");
        push(
            "35_37 inequality (r side)",
            entry,
            &ineq.net,
            ClaimKind::Implies { premise: ((0, 2), r), conclusion: ((1, 3), rc) },
        );
        push(
            "35_37 inequality (r' side)",
            entry,
            &ineq.net,
            ClaimKind::Implies { premise: ((0, 2), rc), conclusion: ((1, 3), r) },
        );
    }

    // 30_37: equality, at-least-one, and the implication gadget
    {
        let entry = cat.lookup("30_37").unwrap();
        let mut e = GadgetBuilder::new(&entry.algebra, 8);
        // x0=0 x1=1 u0=2 u1=3 u2=4 u3=5 y0=6 y1=7
        e.edge(0, 1, &["r", "r'"])
            .edge(2, 0, &["a", "r"])
            .edge(2, 3, &["r", "r'"])
            .edge(6, 7, &["r", "r'"])
            .edge(6, 2, &["a", "r"])
            .edge(7, 2, &["a"])
            .edge(3, 0, &["a"])
            .edge(1, 2, &["r"])
            .edge(3, 6, &["r"])
            .edge(0, 5, &["r"])
            .edge(4, 5, &["r", "r'"])
            .edge(7, 5, &["a", "r"])
            .edge(5, 1, &["a", "r"])
            .edge(4, 7, &["r"])
            .edge(4, 1, &["a"])
            .edge(5, 6, &["a"]);
        push("30_37 equality", entry, &e.net, ClaimKind::EqualOn(vec![((0, 1), (6, 7))]));

        let mut s = GadgetBuilder::new(&entry.algebra, 7);
        s.edge(0, 1, &["a", "id"])
            .edge(1, 2, &["a", "id"])
            .edge(2, 3, &["a", "id"])
            .edge(0, 4, &["r", "r'"])
            .edge(4, 1, &["r"])
            .edge(1, 5, &["r", "r'"])
            .edge(5, 2, &["r"])
            .edge(2, 6, &["r", "r'"])
            .edge(6, 3, &["r"])
            .edge(0, 3, &["a"]);
        let r = s.atom("r");
        push(
            "30_37 at-least-one",
            entry,
            &s.net,
            ClaimKind::AtLeastOneEquals { edges: vec![(0, 4), (1, 5), (2, 6)], atom: r },
        );

        let mut t = GadgetBuilder::new(&entry.algebra, 4);
        // p0=0 q0=1 p1=2 q1=3
        t.edge(1, 0, &["r"])
            .edge(0, 2, &["r", "r'"])
            .edge(1, 3, &["r", "r'"])
            .edge(0, 3, &["a", "r"])
            .edge(3, 2, &["a"]);
        let rc = t.atom("r'");
        push(
            "30_37 implication",
            entry,
            &t.net,
            ClaimKind::Implies { premise: ((0, 2), r), conclusion: ((1, 3), rc) },
        );
    }

    // 31_65: equality, at-least-one, and the b-or-b gadget
    {
        let entry = cat.lookup("31_65").unwrap();
        let mut e = GadgetBuilder::new(&entry.algebra, 4);
        e.edge(0, 2, &["b", "c"])
            .edge(0, 1, &["b", "c"])
            .edge(2, 3, &["b", "c"])
            .edge(1, 2, &["b", "c"])
            .edge(1, 3, &["b", "c"]);
        push("31_65 equality", entry, &e.net, ClaimKind::EqualOn(vec![((0, 1), (2, 3))]));

        let mut s = GadgetBuilder::new(&entry.algebra, 7);
        s.edge(0, 1, &["c", "id"])
            .edge(1, 2, &["c", "id"])
            .edge(2, 3, &["c", "id"])
            .edge(0, 4, &["b", "c"])
            .edge(4, 1, &["b", "c"])
            .edge(1, 5, &["b", "c"])
            .edge(5, 2, &["b", "c"])
            .edge(2, 6, &["b", "c"])
            .edge(6, 3, &["b", "c"])
            .edge(0, 3, &["c"]);
        let c = s.atom("c");
        push(
            "31_65 at-least-one",
            entry,
            &s.net,
            ClaimKind::AtLeastOneEquals { edges: vec![(0, 4), (1, 5), (2, 6)], atom: c },
        );

        let mut t = GadgetBuilder::new(&entry.algebra, 3);
        t.edge(0, 1, &["b", "c"]).edge(1, 2, &["b", "c"]).edge(0, 2, &["a"]);
        let b = t.atom("b");
        push(
            "31_65 b-or-b",
            entry,
            &t.net,
            ClaimKind::AtLeastOneEquals { edges: vec![(0, 1), (1, 2)], atom: b },
        );
    }

    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetReport {
    pub name: String,
    pub algebra: String,
    pub passed: bool,
    pub millis: u128,
}

/// Runs every embedded claim; the report lists pass/fail per figure.
pub fn gadget_suite(budget: u64) -> Vec<GadgetReport> {
    embedded_gadgets()
        .into_iter()
        .map(|(name, entry, claim)| {
            let start = Instant::now();
            let outcome = verify_gadget(&entry.algebra, &claim, budget);
            GadgetReport {
                name,
                algebra: entry.name.clone(),
                passed: outcome.passed(),
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

/// Ordered symmetric atom pairs (p, q) with (p,p,p) and (q,q,q) forbidden
/// and (p,q,q) allowed: the precondition of the PCSP hardness reduction.
pub fn pcsp_condition(ra: &RelationAlgebra) -> Vec<(AtomId, AtomId)> {
    let mut out = Vec::new();
    for p in ra.atoms() {
        if ra.converse().of(p) != p {
            continue;
        }
        for q in ra.atoms() {
            if p == q || ra.converse().of(q) != q {
                continue;
            }
            if !ra.is_allowed((p, p, p))
                && !ra.is_allowed((q, q, q))
                && ra.is_allowed((p, q, q))
            {
                out.push((p, q));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct RamseyBoundaryReport {
    /// A 2-coloring of K5 without a monochromatic triangle, edge-indexed
    /// lexicographically, if one exists (it does: pentagon/pentagram).
    pub k5_witness: Option<u16>,
    /// Whether any 2-coloring of K6 avoids monochromatic triangles (none
    /// does, witnessing R(3,3) = 6).
    pub k6_has_witness: bool,
}

fn has_mono_triangle(n: usize, coloring: u32) -> bool {
    let edge_index = |x: usize, y: usize| {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        // lexicographic index of (a, b) among pairs
        (0..a).map(|i| n - 1 - i).sum::<usize>() + (b - a - 1)
    };
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let c1 = coloring >> edge_index(x, y) & 1;
                let c2 = coloring >> edge_index(y, z) & 1;
                let c3 = coloring >> edge_index(x, z) & 1;
                if c1 == c2 && c2 == c3 {
                    return true;
                }
            }
        }
    }
    false
}

/// Brute-forces all 2-colorings of K5 (a triangle-free one exists) and K6
/// (none exists), the combinatorial content of R(3,3) = 6.
pub fn ramsey_boundary_check() -> RamseyBoundaryReport {
    let mut k5_witness = None;
    for coloring in 0..(1u32 << 10) {
        if !has_mono_triangle(5, coloring) {
            k5_witness = Some(coloring as u16);
            break;
        }
    }
    let mut k6_has_witness = false;
    for coloring in 0..(1u32 << 15) {
        if !has_mono_triangle(6, coloring) {
            k6_has_witness = true;
            break;
        }
    }
    RamseyBoundaryReport { k5_witness, k6_has_witness }
}

/// The four forbidden 51_65 patterns f1..f4 on four vertices.
pub fn forbidden_51_65() -> PatternLibrary {
    let ra = &catalog().lookup("51_65").unwrap().algebra;
    let a = ra.atom_by_name("a").unwrap();
    let b = ra.atom_by_name("b").unwrap();
    let c = ra.atom_by_name("c").unwrap();
    let make = |edges: [((usize, usize), AtomId); 6]| {
        let mut net = Network::top(ra, 4);
        for ((x, y), atom) in edges {
            net.set(ra, x, y, Element::atom(atom));
        }
        AtomicNetwork::from_network(ra, net).unwrap()
    };
    let mut lib = PatternLibrary::empty();
    lib.push(
        "f1",
        make([
            ((0, 1), a),
            ((1, 2), a),
            ((2, 3), a),
            ((3, 0), a),
            ((0, 2), c),
            ((1, 3), c),
        ]),
    );
    lib.push(
        "f2",
        make([
            ((0, 1), c),
            ((1, 2), c),
            ((2, 3), c),
            ((3, 0), c),
            ((0, 2), a),
            ((1, 3), a),
        ]),
    );
    lib.push(
        "f3",
        make([
            ((0, 1), a),
            ((1, 2), a),
            ((2, 3), a),
            ((0, 2), c),
            ((0, 3), c),
            ((1, 3), c),
        ]),
    );
    lib.push(
        "f4",
        make([
            ((0, 1), b),
            ((2, 3), b),
            ((0, 2), a),
            ((1, 3), a),
            ((0, 3), c),
            ((1, 2), c),
        ]),
    );
    lib
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 200_000_000;

    #[test]
    fn pcsp_condition_examples() {
        let cat = catalog();
        for name in ["51_65", "56_65"] {
            let ra = &cat.lookup(name).unwrap().algebra;
            let pairs = pcsp_condition(ra);
            let a = ra.atom_by_name("a").unwrap();
            let c = ra.atom_by_name("c").unwrap();
            assert!(pairs.contains(&(a, c)), "{name} must contain (a, c)");
        }
        let ra65 = &cat.lookup("65_65").unwrap().algebra;
        assert!(pcsp_condition(ra65).is_empty());
    }

    #[test]
    fn ramsey_boundary() {
        let report = ramsey_boundary_check();
        assert!(report.k5_witness.is_some());
        assert!(!report.k6_has_witness);
        // K3 in a single color has a monochromatic triangle
        assert!(has_mono_triangle(3, 0));
    }

    #[test]
    fn gadget_27_65_passes_and_weakened_fails() {
        let (_, entry, claim) = embedded_gadgets()
            .into_iter()
            .find(|(n, _, _)| n == "27_65 equality")
            .unwrap();
        let ra = &entry.algebra;
        assert!(verify_gadget(ra, &claim, BUDGET).passed());
        // relax the central (c + id) edge to 1: the equality breaks
        let mut weak = claim.clone();
        weak.net.set(ra, 2, 3, ra.one());
        match verify_gadget(ra, &weak, BUDGET) {
            GadgetOutcome::Counterexample(Some(sol)) => assert!(sol.is_consistent()),
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn forbidden_51_65_patterns_consistent() {
        let lib = forbidden_51_65();
        assert_eq!(lib.names(), vec!["f1", "f2", "f3", "f4"]);
        for (_, p) in lib.iter() {
            assert!(p.is_consistent());
        }
    }
}
