//! Finite relation algebras given by atoms, a converse involution and a set
//! of allowed triples (cycles). The composition table is derived from the
//! cycle set and the axioms are verified by brute force over atoms.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Hard cap on the number of atoms so that an [`Element`] fits in one word.
/// The census needs at most 4 atoms; products stay within 8.
pub const MAX_ATOMS: usize = 8;

/// Index of an atom, dense in `0..atom_count`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AtomId(pub u8);

impl AtomId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A triple of atoms `(x, y, z)`, read as `z <= x ; y`.
pub type Triple = (AtomId, AtomId, AtomId);

/// An element of the algebra: a set of atoms, bitmask semantics.
/// The empty set is 0, the full set is 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Element(pub u16);

impl Element {
    pub const EMPTY: Element = Element(0);

    #[inline]
    pub fn atom(a: AtomId) -> Element {
        Element(1 << a.0)
    }

    #[inline]
    pub fn full(atom_count: usize) -> Element {
        Element(((1u32 << atom_count) - 1) as u16)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, a: AtomId) -> bool {
        self.0 & (1 << a.0) != 0
    }

    #[inline]
    pub fn is_subset(self, other: Element) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Element) -> Element {
        Element(self.0 | other.0)
    }

    #[inline]
    pub fn meet(self, other: Element) -> Element {
        Element(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Element) -> Element {
        Element(self.0 & !other.0)
    }

    #[inline]
    pub fn complement(self, atom_count: usize) -> Element {
        Element(!self.0 & Element::full(atom_count).0)
    }

    #[inline]
    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_atom(self) -> bool {
        self.0.count_ones() == 1
    }

    /// The unique atom of a singleton element.
    pub fn as_atom(self) -> Option<AtomId> {
        if self.is_atom() {
            Some(AtomId(self.0.trailing_zeros() as u8))
        } else {
            None
        }
    }

    pub fn atoms(self) -> impl Iterator<Item = AtomId> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let a = rest.trailing_zeros() as u8;
                rest &= rest - 1;
                Some(AtomId(a))
            }
        })
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({:#b})", self.0)
    }
}

/// Converse as an involution on atom indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Involution {
    map: [u8; MAX_ATOMS],
    len: usize,
}

impl Involution {
    /// Builds from the images of `0..atom_count`. Fails unless the map is an
    /// involution on that range.
    pub fn new(images: &[u8]) -> Result<Involution, BuildError> {
        let len = images.len();
        if len > MAX_ATOMS {
            return Err(BuildError::TooManyAtoms(len));
        }
        let mut map = [0u8; MAX_ATOMS];
        map[..len].copy_from_slice(images);
        for a in 0..len {
            let b = map[a] as usize;
            if b >= len || map[b] as usize != a {
                return Err(BuildError::InvalidConverse);
            }
        }
        Ok(Involution { map, len })
    }

    pub fn identity(atom_count: usize) -> Involution {
        let mut map = [0u8; MAX_ATOMS];
        for (i, m) in map.iter_mut().enumerate() {
            *m = i as u8;
        }
        Involution { map, len: atom_count }
    }

    #[inline]
    pub fn of(&self, a: AtomId) -> AtomId {
        AtomId(self.map[a.idx()])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Involution({:?})", &self.map[..self.len])
    }
}

/// The orbit of `(x, y, z)` under the cycle law: the six Peircean transforms
/// of `z <= x ; y`, deduplicated, in derivation order.
pub fn cycle_orbit(conv: &Involution, t: Triple) -> Vec<Triple> {
    let (x, y, z) = t;
    let c = |a: AtomId| conv.of(a);
    let all = [
        (x, y, z),
        (c(x), z, y),
        (z, c(y), x),
        (c(z), x, c(y)),
        (y, c(z), c(x)),
        (c(y), c(x), c(z)),
    ];
    let mut out: Vec<Triple> = Vec::with_capacity(6);
    for t in all {
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// A set of atom triples, closed under the cycle law by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleSet {
    bits: [u64; 8],
}

impl CycleSet {
    pub fn empty() -> CycleSet {
        CycleSet { bits: [0; 8] }
    }

    #[inline]
    fn pos(t: Triple) -> (usize, u64) {
        let i = t.0.idx() * 64 + t.1.idx() * 8 + t.2.idx();
        (i / 64, 1u64 << (i % 64))
    }

    #[inline]
    pub fn contains(&self, t: Triple) -> bool {
        let (w, m) = Self::pos(t);
        self.bits[w] & m != 0
    }

    pub fn insert(&mut self, t: Triple) {
        let (w, m) = Self::pos(t);
        self.bits[w] |= m;
    }

    /// Inserts the whole cycle-law orbit of `t`.
    pub fn insert_orbit(&mut self, conv: &Involution, t: Triple) {
        for u in cycle_orbit(conv, t) {
            self.insert(u);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn iter(&self, atom_count: usize) -> impl Iterator<Item = Triple> + '_ {
        let n = atom_count as u8;
        (0..n).flat_map(move |x| {
            (0..n).flat_map(move |y| {
                (0..n).filter_map(move |z| {
                    let t = (AtomId(x), AtomId(y), AtomId(z));
                    if self.contains(t) {
                        Some(t)
                    } else {
                        None
                    }
                })
            })
        })
    }
}

impl fmt::Debug for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleSet({} triples)", self.len())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("converse is not an involution on the atoms or moves the identity")]
    InvalidConverse,
    #[error("too many atoms: {0} (maximum {MAX_ATOMS})")]
    TooManyAtoms(usize),
    #[error("atom index {0} out of range")]
    AtomOutOfRange(u8),
    #[error("diversity cycle mentions the identity atom")]
    IdentityInCycle,
    #[error("two-cycle product requires integral factors")]
    NotIntegral,
}

/// First violated axiom of the relation-algebra definition, with an atom
/// triple witnessing it. Axioms are numbered 1..=8 after the definition;
/// 1, 3 and 6 hold by construction of the derived table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: u8,
    pub witness: (u8, u8, u8),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "axiom {} violated at atoms ({}, {}, {})",
            self.axiom, self.witness.0, self.witness.1, self.witness.2
        )
    }
}

/// A finite relation algebra on at most [`MAX_ATOMS`] atoms.
///
/// Invalid candidates (cycle sets that fail an axiom) are still constructed,
/// with the failure recorded in `violation`; the enumerator builds and
/// discards millions of those cheaply.
#[derive(Clone)]
pub struct RelationAlgebra {
    atom_count: usize,
    /// Set of identity atoms; a single atom iff the algebra is integral-style.
    identity: Element,
    converse: Involution,
    cycles: CycleSet,
    comp: [[Element; MAX_ATOMS]; MAX_ATOMS],
    names: Vec<String>,
    name: Option<String>,
    violation: Option<AxiomViolation>,
}

impl fmt::Debug for RelationAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RelationAlgebra({}, {} atoms)",
            self.name.as_deref().unwrap_or("?"),
            self.atom_count
        )
    }
}

impl RelationAlgebra {
    /// Builds an integral-style algebra: one identity atom, and a cycle set
    /// given by its diversity triples only. Identity-involving triples are
    /// forced by the axioms and never taken as input.
    pub fn build(
        atom_count: usize,
        identity: AtomId,
        converse: Involution,
        diversity_cycles: &[Triple],
        name: Option<String>,
    ) -> Result<RelationAlgebra, BuildError> {
        if atom_count > MAX_ATOMS {
            return Err(BuildError::TooManyAtoms(atom_count));
        }
        if identity.idx() >= atom_count {
            return Err(BuildError::AtomOutOfRange(identity.0));
        }
        if converse.len() != atom_count || converse.of(identity) != identity {
            return Err(BuildError::InvalidConverse);
        }
        let mut cycles = CycleSet::empty();
        for &(x, y, z) in diversity_cycles {
            for a in [x, y, z] {
                if a.idx() >= atom_count {
                    return Err(BuildError::AtomOutOfRange(a.0));
                }
                if a == identity {
                    return Err(BuildError::IdentityInCycle);
                }
            }
            cycles.insert_orbit(&converse, (x, y, z));
        }
        // Forced identity triples: id <= x;y iff y = x˘, and e;x ∋ x / x;e ∋ x
        // exactly for e = id.
        for i in 0..atom_count {
            let x = AtomId(i as u8);
            cycles.insert((identity, x, x));
            cycles.insert((x, identity, x));
            cycles.insert((x, converse.of(x), identity));
        }
        let names = default_names(atom_count, Element::atom(identity), &converse);
        Ok(Self::from_parts(atom_count, Element::atom(identity), converse, cycles, names, name))
    }

    /// Builds from a complete cycle set (identity triples included). Used for
    /// products and for non-integral candidates with several identity atoms.
    pub fn from_cycles(
        atom_count: usize,
        identity: Element,
        converse: Involution,
        cycles: CycleSet,
        names: Vec<String>,
        name: Option<String>,
    ) -> RelationAlgebra {
        Self::from_parts(atom_count, identity, converse, cycles, names, name)
    }

    fn from_parts(
        atom_count: usize,
        identity: Element,
        converse: Involution,
        cycles: CycleSet,
        names: Vec<String>,
        name: Option<String>,
    ) -> RelationAlgebra {
        let mut comp = [[Element::EMPTY; MAX_ATOMS]; MAX_ATOMS];
        for t in cycles.iter(atom_count) {
            comp[t.0.idx()][t.1.idx()] = comp[t.0.idx()][t.1.idx()].union(Element::atom(t.2));
        }
        let mut ra = RelationAlgebra {
            atom_count,
            identity,
            converse,
            cycles,
            comp,
            names,
            name,
            violation: None,
        };
        ra.violation = ra.verify_axioms();
        ra
    }

    /// The trivial algebra (0 = 1, no atoms).
    pub fn trivial() -> RelationAlgebra {
        Self::from_parts(
            0,
            Element::EMPTY,
            Involution::identity(0),
            CycleSet::empty(),
            Vec::new(),
            Some("trivial".into()),
        )
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> {
        (0..self.atom_count as u8).map(AtomId)
    }

    /// The identity element (union of the identity atoms).
    pub fn identity(&self) -> Element {
        self.identity
    }

    /// The identity atom of an integral-style algebra.
    pub fn identity_atom(&self) -> Option<AtomId> {
        self.identity.as_atom()
    }

    pub fn one(&self) -> Element {
        Element::full(self.atom_count)
    }

    pub fn converse(&self) -> &Involution {
        &self.converse
    }

    pub fn cycles(&self) -> &CycleSet {
        &self.cycles
    }

    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<AxiomViolation> {
        self.violation
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn atom_names(&self) -> &[String] {
        &self.names
    }

    pub fn set_atom_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.atom_count);
        self.names = names;
    }

    pub fn atom_name(&self, a: AtomId) -> &str {
        &self.names[a.idx()]
    }

    pub fn atom_by_name(&self, name: &str) -> Option<AtomId> {
        self.names.iter().position(|n| n == name).map(|i| AtomId(i as u8))
    }

    /// Composition of two atoms, from the derived table.
    #[inline]
    pub fn compose_atoms(&self, x: AtomId, y: AtomId) -> Element {
        self.comp[x.idx()][y.idx()]
    }

    /// Composition of arbitrary elements, lifted atomwise by distributivity.
    pub fn compose(&self, e1: Element, e2: Element) -> Element {
        let mut out = Element::EMPTY;
        for x in e1.atoms() {
            for y in e2.atoms() {
                out = out.union(self.comp[x.idx()][y.idx()]);
            }
        }
        out
    }

    /// Converse of an element, lifted atomwise.
    pub fn converse_el(&self, e: Element) -> Element {
        let mut out = Element::EMPTY;
        for a in e.atoms() {
            out = out.union(Element::atom(self.converse.of(a)));
        }
        out
    }

    pub fn is_allowed(&self, t: Triple) -> bool {
        self.cycles.contains(t)
    }

    /// Brute-force check of the axioms on atoms. Distributivity lifts the
    /// atom-level checks to all elements; associativity is cubic in the atom
    /// count rather than in 2^atoms.
    fn verify_axioms(&self) -> Option<AxiomViolation> {
        let n = self.atom_count;
        let viol = |axiom, x: usize, y: usize, z: usize| AxiomViolation {
            axiom,
            witness: (x as u8, y as u8, z as u8),
        };
        // Axiom 2: associativity on atom triples.
        for x in 0..n {
            for y in 0..n {
                let xy = self.comp[x][y];
                for z in 0..n {
                    let lhs = self.compose(xy, Element::atom(AtomId(z as u8)));
                    let rhs = self.compose(Element::atom(AtomId(x as u8)), self.comp[y][z]);
                    if lhs != rhs {
                        return Some(viol(2, x, y, z));
                    }
                }
            }
        }
        // Axiom 4: x ; id = x, plus the dual id ; x = x from the consequences
        // of the axioms.
        for x in 0..n {
            let xe = Element::atom(AtomId(x as u8));
            if self.compose(xe, self.identity) != xe {
                return Some(viol(4, x, 0, 0));
            }
            if self.compose(self.identity, xe) != xe {
                return Some(viol(4, x, 0, 1));
            }
        }
        // Axiom 5 holds because converse is an involution; re-checked here.
        for x in 0..n {
            let a = AtomId(x as u8);
            if self.converse.of(self.converse.of(a)) != a {
                return Some(viol(5, x, 0, 0));
            }
        }
        // Axiom 7: (x ; y)˘ = y˘ ; x˘ on atoms.
        for x in 0..n {
            for y in 0..n {
                let lhs = self.converse_el(self.comp[x][y]);
                let rhs = self.comp[self.converse.of(AtomId(y as u8)).idx()]
                    [self.converse.of(AtomId(x as u8)).idx()];
                if lhs != rhs {
                    return Some(viol(7, x, y, 0));
                }
            }
        }
        // Axiom 8: x˘ ; complement(x ; y) is disjoint from y, on atom pairs.
        for x in 0..n {
            for y in 0..n {
                let xa = AtomId(x as u8);
                let ya = AtomId(y as u8);
                let compl = self.comp[x][y].complement(n);
                let lhs = self.compose(Element::atom(self.converse.of(xa)), compl);
                if !lhs.meet(Element::atom(ya)).is_empty() {
                    return Some(viol(8, x, y, 0));
                }
            }
        }
        None
    }
}

fn default_names(atom_count: usize, identity: Element, conv: &Involution) -> Vec<String> {
    let mut names = vec![String::new(); atom_count];
    let mut sym = 0usize;
    let mut asym = 0usize;
    let id_atoms: Vec<usize> = identity.atoms().map(|a| a.idx()).collect();
    for i in 0..atom_count {
        if !names[i].is_empty() {
            continue;
        }
        if id_atoms.contains(&i) {
            names[i] = if id_atoms.len() == 1 {
                "id".to_string()
            } else {
                format!("id{}", id_atoms.iter().position(|&j| j == i).unwrap())
            };
        } else if conv.of(AtomId(i as u8)).idx() == i {
            names[i] = ((b'a' + sym as u8) as char).to_string();
            sym += 1;
        } else {
            let base = ((b'r' + asym as u8) as char).to_string();
            names[i] = base.clone();
            names[conv.of(AtomId(i as u8)).idx()] = format!("{base}'");
            asym += 1;
        }
    }
    names
}

/// Structural classification of a valid algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralFlags {
    pub symmetric: bool,
    pub integral: bool,
    pub simple: bool,
    /// Diversity atoms lying below every composition of nonzero diversity
    /// elements.
    pub flexible_atoms: Element,
    /// Elements above the identity that are symmetric and transitive.
    pub equivalence_elements: Vec<Element>,
}

impl RelationAlgebra {
    pub fn structural_flags(&self) -> StructuralFlags {
        let n = self.atom_count;
        let one = self.one();
        let symmetric = self.atoms().all(|a| self.converse.of(a) == a);
        let integral = n > 0
            && self.identity.is_atom()
            && self
                .atoms()
                .all(|x| self.atoms().all(|y| !self.compose_atoms(x, y).is_empty()));
        let simple = n > 0
            && self.atoms().all(|x| {
                self.compose(self.compose(one, Element::atom(x)), one) == one
            });
        let diversity = self.identity.complement(n);
        let mut flexible = Element::EMPTY;
        for f in diversity.atoms() {
            let ok = diversity.atoms().all(|x| {
                diversity
                    .atoms()
                    .all(|y| self.compose_atoms(x, y).contains(f))
            });
            if ok && !diversity.is_empty() {
                flexible = flexible.union(Element::atom(f));
            }
        }
        let mut equivalence_elements = Vec::new();
        for bits in 0..(1u32 << n) {
            let e = Element(bits as u16);
            if !self.identity.is_subset(e) {
                continue;
            }
            if self.converse_el(e) == e && self.compose(e, e).is_subset(e) {
                equivalence_elements.push(e);
            }
        }
        StructuralFlags {
            symmetric,
            integral,
            simple,
            flexible_atoms: flexible,
            equivalence_elements,
        }
    }
}

/// Componentwise direct product. Atoms of the product are the atoms of the
/// factors with disjoint roles; cross compositions are empty.
pub fn direct_product(a: &RelationAlgebra, b: &RelationAlgebra) -> RelationAlgebra {
    let na = a.atom_count();
    let nb = b.atom_count();
    assert!(na + nb <= MAX_ATOMS, "product exceeds the atom cap");
    let shift = |t: AtomId| AtomId(t.0 + na as u8);
    let mut conv = Vec::with_capacity(na + nb);
    for x in a.atoms() {
        conv.push(a.converse().of(x).0);
    }
    for x in b.atoms() {
        conv.push(shift(b.converse().of(x)).0);
    }
    let converse = Involution::new(&conv).expect("factor converses are involutions");
    let mut cycles = CycleSet::empty();
    for t in a.cycles().iter(na) {
        cycles.insert(t);
    }
    for t in b.cycles().iter(nb) {
        cycles.insert((shift(t.0), shift(t.1), shift(t.2)));
    }
    let identity = a
        .identity()
        .atoms()
        .map(Element::atom)
        .chain(b.identity().atoms().map(|x| Element::atom(shift(x))))
        .fold(Element::EMPTY, Element::union);
    let mut names: Vec<String> = Vec::with_capacity(na + nb);
    for x in a.atoms() {
        names.push(format!("{}.1", a.atom_name(x)));
    }
    for x in b.atoms() {
        names.push(format!("{}.2", b.atom_name(x)));
    }
    let name = match (a.name(), b.name()) {
        (Some(p), Some(q)) => Some(format!("{p}x{q}")),
        _ => None,
    };
    RelationAlgebra::from_cycles(na + nb, identity, converse, cycles, names, name)
}

/// The 2-cycle product `A[B]`: `A` sits inside the classes of `B`'s
/// diversity, and every `B`-atom absorbs across classes. Atom layout of
/// the result: index 0 is the shared identity, then `A`'s diversity atoms
/// in order, then `B`'s.
pub fn two_cycle_product(
    a: &RelationAlgebra,
    b: &RelationAlgebra,
) -> Result<RelationAlgebra, BuildError> {
    if !a.structural_flags().integral || !b.structural_flags().integral {
        return Err(BuildError::NotIntegral);
    }
    let da = a.atom_count() - 1; // diversity atoms of A
    let db = b.atom_count() - 1;
    let n = 1 + da + db;
    if n > MAX_ATOMS {
        return Err(BuildError::TooManyAtoms(n));
    }
    // Atom layout: 0 = shared identity, then A's diversity, then B's.
    let ida = a.identity_atom().unwrap();
    let idb = b.identity_atom().unwrap();
    let map_a = |x: AtomId| -> AtomId {
        // skip the identity slot of A
        let i = x.idx();
        AtomId(if i < ida.idx() { i + 1 } else { i } as u8)
    };
    let map_b = |x: AtomId| -> AtomId {
        let i = x.idx();
        AtomId((1 + da + if i < idb.idx() { i } else { i - 1 }) as u8)
    };
    let mut conv = vec![0u8; n];
    for x in a.atoms() {
        if x != ida {
            conv[map_a(x).idx()] = map_a(a.converse().of(x)).0;
        }
    }
    for x in b.atoms() {
        if x != idb {
            conv[map_b(x).idx()] = map_b(b.converse().of(x)).0;
        }
    }
    let converse = Involution::new(&conv)?;
    let mut diversity_cycles: Vec<Triple> = Vec::new();
    for t in a.cycles().iter(a.atom_count()) {
        if t.0 != ida && t.1 != ida && t.2 != ida {
            diversity_cycles.push((map_a(t.0), map_a(t.1), map_a(t.2)));
        }
    }
    for t in b.cycles().iter(b.atom_count()) {
        if t.0 != idb && t.1 != idb && t.2 != idb {
            diversity_cycles.push((map_b(t.0), map_b(t.1), map_b(t.2)));
        }
    }
    for x in a.atoms().filter(|&x| x != ida) {
        for y in b.atoms().filter(|&y| y != idb) {
            diversity_cycles.push((map_a(x), map_b(y), map_b(y)));
        }
    }
    let mut names = vec![String::new(); n];
    names[0] = "id".to_string();
    for x in a.atoms().filter(|&x| x != ida) {
        names[map_a(x).idx()] = a.atom_name(x).to_string();
    }
    for x in b.atoms().filter(|&x| x != idb) {
        let base = b.atom_name(x).to_string();
        names[map_b(x).idx()] = if names.contains(&base) { format!("{base}*") } else { base };
    }
    let name = match (a.name(), b.name()) {
        (Some(p), Some(q)) => Some(format!("{p}[{q}]")),
        _ => None,
    };
    let mut ra = RelationAlgebra::build(n, AtomId(0), converse, &diversity_cycles, name)?;
    ra.set_atom_names(names);
    Ok(ra)
}
