//! The census of integral relation algebras with at most 4 atoms, embedded
//! as a data file, plus the independent re-derivation of its counts by
//! exhaustive enumeration over cycle-class subsets.

use once_cell::sync::Lazy;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    cycle_orbit, AtomId, CycleSet, Element, Involution, RelationAlgebra, Triple,
};
use crate::io;

/// Representability class of a catalog entry, ordered from nothing to a
/// flexible atom (which implies a normal representation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Representability {
    None,
    NotFullyUniversal,
    FullyUniversal,
    Normal,
    Flexible,
}

impl Representability {
    pub fn parse(s: &str) -> Option<Representability> {
        Some(match s {
            "none" => Representability::None,
            "not_fully_universal" => Representability::NotFullyUniversal,
            "fully_universal" => Representability::FullyUniversal,
            "normal" => Representability::Normal,
            "flexible" => Representability::Flexible,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Representability::None => "none",
            Representability::NotFullyUniversal => "not_fully_universal",
            Representability::FullyUniversal => "fully_universal",
            Representability::Normal => "normal",
            Representability::Flexible => "flexible",
        }
    }

    pub fn is_representable(self) -> bool {
        self != Representability::None
    }

    /// Fully universal square representation exists.
    pub fn is_fully_universal(self) -> bool {
        self >= Representability::FullyUniversal
    }

    pub fn is_normal(self) -> bool {
        self >= Representability::Normal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NspComplexity {
    /// No representation, so every instance is a no-instance.
    PTrivial,
    P,
    NpComplete,
    /// NP-hard; membership in NP open.
    NpHardOpenMembership,
}

impl NspComplexity {
    pub fn parse(s: &str) -> Option<NspComplexity> {
        Some(match s {
            "p_trivial" => NspComplexity::PTrivial,
            "p" => NspComplexity::P,
            "np_complete" => NspComplexity::NpComplete,
            "np_hard_open_membership" => NspComplexity::NpHardOpenMembership,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NspComplexity::PTrivial => "p_trivial",
            NspComplexity::P => "p",
            NspComplexity::NpComplete => "np_complete",
            NspComplexity::NpHardOpenMembership => "np_hard_open_membership",
        }
    }
}

#[derive(Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: RelationAlgebra,
    pub representability: Representability,
    pub nsp: NspComplexity,
    pub notes: String,
}

pub struct Catalog {
    /// The 2 + 10 + 102 integral entries, in table order.
    pub integral: Vec<CatalogEntry>,
    /// The unique simple non-integral algebra with at most four atoms.
    pub nonintegral: CatalogEntry,
}

impl Catalog {
    pub fn lookup(&self, name: &str) -> Option<&CatalogEntry> {
        // names like 17/37 and 17_37 both accepted
        let norm = name.replace('/', "_");
        if norm == self.nonintegral.name {
            return Some(&self.nonintegral);
        }
        self.integral.iter().find(|e| e.name == norm)
    }

    pub fn integral_with_atoms(&self, atoms: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.integral.iter().filter(move |e| e.algebra.atom_count() == atoms)
    }
}

static CATALOG: Lazy<Catalog> = Lazy::new(load_catalog);

pub fn catalog() -> &'static Catalog {
    &CATALOG
}

fn load_catalog() -> Catalog {
    let records = io::parse_algebra_records(include_str!("catalog.ra"))
        .expect("embedded catalog parses");
    let mut integral = Vec::with_capacity(records.len());
    for rec in records {
        assert!(rec.algebra.is_valid(), "catalog entry {:?} invalid", rec.algebra.name());
        let flags = rec.algebra.structural_flags();
        assert!(flags.integral, "catalog entry {:?} not integral", rec.algebra.name());
        let name = rec.algebra.name().expect("catalog entry named").to_string();
        integral.push(CatalogEntry {
            name,
            representability: rec.repr.expect("catalog entry has repr"),
            nsp: rec.nsp.expect("catalog entry has nsp"),
            notes: rec.notes.unwrap_or_default(),
            algebra: rec.algebra,
        });
    }
    Catalog { integral, nonintegral: nonintegral_entry() }
}

/// The simple non-integral relation algebra with four atoms: two identity
/// atoms `a`, `b` and a converse pair `c`, `d` between their domains. Its
/// two-element square representation lives in the representations module.
fn simple_nonintegral_algebra() -> RelationAlgebra {
    let a = AtomId(0);
    let b = AtomId(1);
    let c = AtomId(2);
    let d = AtomId(3);
    let converse = Involution::new(&[0, 1, 3, 2]).unwrap();
    let mut cycles = CycleSet::empty();
    for t in [
        (a, a, a),
        (b, b, b),
        (a, c, c),
        (c, b, c),
        (b, d, d),
        (d, a, d),
        (c, d, a),
        (d, c, b),
    ] {
        cycles.insert(t);
    }
    let mut ra = RelationAlgebra::from_cycles(
        4,
        Element::atom(a).union(Element::atom(b)),
        converse,
        cycles,
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        Some("nonint".into()),
    );
    assert!(ra.is_valid(), "non-integral algebra fails axioms: {:?}", ra.violation());
    ra.set_name("nonint");
    ra
}

fn nonintegral_entry() -> CatalogEntry {
    CatalogEntry {
        name: "nonint".into(),
        algebra: simple_nonintegral_algebra(),
        representability: Representability::Normal,
        nsp: NspComplexity::P,
        notes: "unique simple non-integral algebra with at most 4 atoms; PC solves its NSP".into(),
    }
}

/// Signature of the enumeration: all diversity atoms symmetric, or exactly
/// one asymmetric pair among them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    AllSymmetric,
    OneAsymmetricPair,
}

/// The converse involution of the signature over `atom_count` atoms with
/// identity at index 0; asymmetric pair at the two highest indices.
fn signature_converse(atom_count: usize, sig: Signature) -> Option<Involution> {
    let mut map: Vec<u8> = (0..atom_count as u8).collect();
    match sig {
        Signature::AllSymmetric => {}
        Signature::OneAsymmetricPair => {
            if atom_count < 3 {
                return None;
            }
            map.swap(atom_count - 2, atom_count - 1);
        }
    }
    Some(Involution::new(&map).unwrap())
}

/// Orbit classes of diversity triples under the cycle law, as sorted
/// lexicographically-minimal representatives.
pub fn diversity_classes(atom_count: usize, sig: Signature) -> Vec<Triple> {
    let conv = match signature_converse(atom_count, sig) {
        Some(c) => c,
        None => return Vec::new(),
    };
    let mut reps: Vec<Triple> = Vec::new();
    let mut seen: Vec<Triple> = Vec::new();
    for x in 1..atom_count as u8 {
        for y in 1..atom_count as u8 {
            for z in 1..atom_count as u8 {
                let t = (AtomId(x), AtomId(y), AtomId(z));
                if seen.contains(&t) {
                    continue;
                }
                let orbit = cycle_orbit(&conv, t);
                let rep = *orbit.iter().min().unwrap();
                seen.extend(orbit);
                reps.push(rep);
            }
        }
    }
    reps.sort();
    reps
}

/// Enumerates the valid integral algebras of the given size and signature:
/// iterates all subsets of the diversity cycle-orbit classes in
/// lexicographic subset order, builds each candidate, keeps the valid
/// integral ones, one per isomorphism class (first subset wins).
pub fn enumerate_integral(atom_count: usize, sig: Signature) -> Vec<RelationAlgebra> {
    assert!((2..=4).contains(&atom_count), "census covers 2..=4 atoms");
    let conv = match signature_converse(atom_count, sig) {
        Some(c) => c,
        None => return Vec::new(),
    };
    let classes = diversity_classes(atom_count, sig);
    let mut out: Vec<RelationAlgebra> = Vec::new();
    for mask in 0u32..(1 << classes.len()) {
        let chosen: Vec<Triple> = classes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| *t)
            .collect();
        let ra = RelationAlgebra::build(atom_count, AtomId(0), conv.clone(), &chosen, None)
            .expect("candidate construction is well-formed");
        if ra.is_valid()
            && ra.structural_flags().integral
            && !out.iter().any(|g| find_renaming(&ra, g).is_some())
        {
            out.push(ra);
        }
    }
    out
}

/// Enumerates the simple non-integral algebras with four atoms, up to
/// isomorphism. Identity atoms are self-converse idempotents annihilating
/// each other; the remaining structure is searched exhaustively.
pub fn enumerate_simple_nonintegral() -> Vec<RelationAlgebra> {
    let mut found: Vec<RelationAlgebra> = Vec::new();
    for id_count in 2..=4usize {
        let n = 4;
        let div: Vec<u8> = (id_count as u8..n as u8).collect();
        let identity = (0..id_count).fold(Element::EMPTY, |e, i| e.union(Element::atom(AtomId(i as u8))));
        // converse involutions on the diversity atoms
        let involutions: Vec<Vec<u8>> = match div.len() {
            0 => vec![vec![]],
            1 => vec![vec![div[0]]],
            2 => vec![vec![div[0], div[1]], vec![div[1], div[0]]],
            _ => unreachable!(),
        };
        for inv in involutions {
            let mut map: Vec<u8> = (0..n as u8).collect();
            for (k, &image) in inv.iter().enumerate() {
                map[id_count + k] = image;
            }
            let conv = Involution::new(&map).unwrap();
            // domain identity atom of each diversity atom
            let dom_space = id_count.pow(div.len() as u32);
            for dom_code in 0..dom_space {
                let mut dom = vec![0usize; div.len()];
                let mut c = dom_code;
                for d in dom.iter_mut() {
                    *d = c % id_count;
                    c /= id_count;
                }
                // diversity-only triple subsets, closed under the cycle law
                let mut triples: Vec<Triple> = Vec::new();
                for &x in &div {
                    for &y in &div {
                        for &z in &div {
                            triples.push((AtomId(x), AtomId(y), AtomId(z)));
                        }
                    }
                }
                for mask in 0u32..(1 << triples.len()) {
                    let mut cycles = CycleSet::empty();
                    for e in 0..id_count {
                        let ea = AtomId(e as u8);
                        cycles.insert((ea, ea, ea));
                    }
                    for (k, &x) in div.iter().enumerate() {
                        let xa = AtomId(x);
                        let de = AtomId(dom[k] as u8);
                        let ra_e = AtomId(dom[conv.of(xa).idx() - id_count] as u8);
                        cycles.insert((de, xa, xa));
                        cycles.insert((xa, ra_e, xa));
                        cycles.insert((xa, conv.of(xa), de));
                    }
                    let mut closed = true;
                    for (i, &t) in triples.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            for u in cycle_orbit(&conv, t) {
                                let j = triples.iter().position(|&v| v == u).unwrap();
                                if mask >> j & 1 == 0 {
                                    closed = false;
                                    break;
                                }
                            }
                            if !closed {
                                break;
                            }
                            cycles.insert(t);
                        }
                    }
                    if !closed {
                        continue;
                    }
                    let ra = RelationAlgebra::from_cycles(
                        n,
                        identity,
                        conv.clone(),
                        cycles,
                        default_letter_names(n),
                        None,
                    );
                    if !ra.is_valid() {
                        continue;
                    }
                    let flags = ra.structural_flags();
                    if !flags.simple || flags.integral {
                        continue;
                    }
                    if !found.iter().any(|g| isomorphic_general(g, &ra)) {
                        found.push(ra);
                    }
                }
            }
        }
    }
    found
}

fn default_letter_names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Isomorphism over arbitrary atom bijections preserving identity atoms and
/// commuting with converse.
fn isomorphic_general(a: &RelationAlgebra, b: &RelationAlgebra) -> bool {
    find_general_renaming(a, b).is_some()
}

/// First atom bijection (lexicographic) carrying `from` onto `to` that
/// preserves identity atoms, converse and cycles; for algebras whose
/// identity is not an atom.
pub fn find_general_renaming(
    from: &RelationAlgebra,
    to: &RelationAlgebra,
) -> Option<Vec<AtomId>> {
    if from.atom_count() != to.atom_count() {
        return None;
    }
    let n = from.atom_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = None;
    permute_all(&mut perm, 0, &mut |p| {
        if found.is_some() {
            return;
        }
        if renaming_works(from, to, p) {
            found = Some(p.iter().map(|&i| AtomId(i as u8)).collect());
        }
    });
    found
}

fn renaming_works(a: &RelationAlgebra, b: &RelationAlgebra, p: &[usize]) -> bool {
    let n = a.atom_count();
    let pi = |x: AtomId| AtomId(p[x.idx()] as u8);
    for x in a.atoms() {
        let id_a = a.identity().contains(x);
        let id_b = b.identity().contains(pi(x));
        if id_a != id_b {
            return false;
        }
        if pi(a.converse().of(x)) != b.converse().of(pi(x)) {
            return false;
        }
    }
    for x in 0..n as u8 {
        for y in 0..n as u8 {
            for z in 0..n as u8 {
                let t = (AtomId(x), AtomId(y), AtomId(z));
                let u = (pi(t.0), pi(t.1), pi(t.2));
                if a.cycles().contains(t) != b.cycles().contains(u) {
                    return false;
                }
            }
        }
    }
    true
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("algebra is not in the census of integral algebras with at most 4 atoms")]
pub struct NotInCatalog;

#[derive(Debug)]
pub struct CatalogMatch {
    pub entry: &'static CatalogEntry,
    /// `renaming[i]` is the entry atom corresponding to input atom `i`.
    pub renaming: Vec<AtomId>,
}

/// Finds the unique catalog entry isomorphic to `ra` under an atom renaming
/// fixing the identity and commuting with converse.
pub fn match_to_catalog(ra: &RelationAlgebra) -> Result<CatalogMatch, NotInCatalog> {
    if !ra.is_valid() {
        return Err(NotInCatalog);
    }
    let n = ra.atom_count();
    for entry in &catalog().integral {
        if entry.algebra.atom_count() != n {
            continue;
        }
        if let Some(renaming) = find_renaming(ra, &entry.algebra) {
            return Ok(CatalogMatch { entry, renaming });
        }
    }
    Err(NotInCatalog)
}

/// A renaming from `from` to `to` fixing the identity atom, commuting with
/// converse, and carrying cycles to cycles. First one in lexicographic order.
pub fn find_renaming(from: &RelationAlgebra, to: &RelationAlgebra) -> Option<Vec<AtomId>> {
    let n = from.atom_count();
    if to.atom_count() != n {
        return None;
    }
    let (fid, tid) = (from.identity_atom()?, to.identity_atom()?);
    let diversity: Vec<usize> = (0..n).filter(|&i| i != fid.idx()).collect();
    let targets: Vec<usize> = (0..n).filter(|&i| i != tid.idx()).collect();
    let mut result: Option<Vec<AtomId>> = None;
    let mut chosen = Vec::new();
    permute_targets(&targets, diversity.len(), &mut chosen, &mut |assign| {
        if result.is_some() {
            return;
        }
        let mut p = vec![0usize; n];
        p[fid.idx()] = tid.idx();
        for (k, &src) in diversity.iter().enumerate() {
            p[src] = assign[k];
        }
        if renaming_works(from, to, &p) {
            result = Some(p.iter().map(|&i| AtomId(i as u8)).collect());
        }
    });
    result
}

fn permute_targets(
    targets: &[usize],
    need: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == need {
        f(chosen);
        return;
    }
    for &t in targets {
        if chosen.contains(&t) {
            continue;
        }
        chosen.push(t);
        permute_targets(targets, need, chosen, f);
        chosen.pop();
    }
}

/// One row of the census table; pairs split symmetric/asymmetric counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub atom_count: usize,
    pub elements: u64,
    pub total: u64,
    pub simple: u64,
    pub integral: u64,
    pub sym: u64,
    pub asym: u64,
    pub representable: (u64, u64),
    pub fully_universal_square: (u64, u64),
    pub normal: (u64, u64),
    pub flexible: (u64, u64),
}

/// Recomputes the census: integral counts by enumeration, classification
/// splits from the catalog, totals from composing simple algebras into
/// direct products (multisets of non-trivial simple factors).
pub fn census() -> Vec<CensusRow> {
    let mut rows = vec![
        CensusRow {
            atom_count: 0,
            elements: 1,
            total: 1,
            simple: 1,
            integral: 1,
            sym: 1,
            asym: 0,
            representable: (1, 0),
            fully_universal_square: (1, 0),
            normal: (1, 0),
            flexible: (0, 0),
        },
        CensusRow {
            atom_count: 1,
            elements: 2,
            total: 1,
            simple: 1,
            integral: 1,
            sym: 1,
            asym: 0,
            representable: (1, 0),
            fully_universal_square: (1, 0),
            normal: (1, 0),
            flexible: (1, 0),
        },
    ];
    let mut simple_counts = vec![1u64, 1]; // atom counts 0 and 1
    for k in 2..=4usize {
        let sym = enumerate_integral(k, Signature::AllSymmetric).len() as u64;
        let asym = enumerate_integral(k, Signature::OneAsymmetricPair).len() as u64;
        let integral = sym + asym;
        let simple = integral + if k == 4 { enumerate_simple_nonintegral().len() as u64 } else { 0 };
        simple_counts.push(simple);
        let count = |f: &dyn Fn(&CatalogEntry) -> bool| -> (u64, u64) {
            let mut s = 0;
            let mut a = 0;
            for e in catalog().integral_with_atoms(k) {
                if f(e) {
                    if e.algebra.structural_flags().symmetric {
                        s += 1;
                    } else {
                        a += 1;
                    }
                }
            }
            (s, a)
        };
        rows.push(CensusRow {
            atom_count: k,
            elements: 1 << k,
            total: 0, // filled below once all simple counts are known
            simple,
            integral,
            sym,
            asym,
            representable: count(&|e| e.representability.is_representable()),
            fully_universal_square: count(&|e| e.representability.is_fully_universal()),
            normal: count(&|e| e.representability.is_normal()),
            flexible: count(&|e| e.representability == Representability::Flexible),
        });
    }
    for k in 2..=4usize {
        rows[k].total = product_closure_count(&simple_counts, k);
    }
    rows
}

/// Number of relation algebras with `k` atoms: multisets of non-trivial
/// simple relation algebras (atom counts summing to `k`), since every
/// algebra factors uniquely into simple ones.
fn product_closure_count(simple_counts: &[u64], k: usize) -> u64 {
    fn go(simple_counts: &[u64], remaining: usize, max_part: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0u64;
        for part in (1..=max_part.min(remaining)).rev() {
            // choose the multiplicity of parts of this size
            let s = simple_counts[part];
            let mut mult = 1usize;
            while mult * part <= remaining {
                total += multichoose(s, mult as u64)
                    * go(simple_counts, remaining - mult * part, part - 1);
                mult += 1;
            }
        }
        total
    }
    go(simple_counts, k, k)
}

fn multichoose(n: u64, k: u64) -> u64 {
    // C(n + k - 1, k)
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= n + i;
        den *= i + 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads_and_is_classified() {
        let cat = catalog();
        assert_eq!(cat.integral.len(), 114); // 2 + 3 + 7 + 37 + 65
        for e in &cat.integral {
            assert!(e.algebra.is_valid(), "{} invalid", e.name);
            let flags = e.algebra.structural_flags();
            assert!(flags.integral, "{} not integral", e.name);
            // the catalog FLEXIBLE class must coincide with a flexible atom
            assert_eq!(
                e.representability == Representability::Flexible,
                !flags.flexible_atoms.is_empty(),
                "flexible flag mismatch for {}",
                e.name
            );
            if e.representability == Representability::None {
                assert_eq!(e.nsp, NspComplexity::PTrivial, "{}", e.name);
            }
        }
        assert!(cat.nonintegral.algebra.is_valid());
        let nf = cat.nonintegral.algebra.structural_flags();
        assert!(nf.simple && !nf.integral);
    }

    #[test]
    fn flexible_atom_census_matches_figure() {
        // 2_2; 3_3 (r, r'); 6_7, 7_7; 10 symmetric + 5 asymmetric 4-atom ones
        let cat = catalog();
        let flex: Vec<&str> = cat
            .integral
            .iter()
            .filter(|e| !e.algebra.structural_flags().flexible_atoms.is_empty())
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(
            flex,
            vec![
                "2_2", "3_3", "6_7", "7_7", "31_37", "33_37", "35_37", "36_37", "37_37",
                "32_65", "33_65", "34_65", "55_65", "57_65", "59_65", "61_65", "63_65",
                "64_65", "65_65"
            ]
        );
        // per-atom flexible sets for the rows the figure names explicitly
        let e65 = cat.lookup("65_65").unwrap();
        let f = e65.algebra.structural_flags().flexible_atoms;
        assert_eq!(f.count(), 3);
        let e33 = cat.lookup("3_3").unwrap();
        assert_eq!(e33.algebra.structural_flags().flexible_atoms.count(), 2);
        let e77 = cat.lookup("7_7").unwrap();
        assert_eq!(e77.algebra.structural_flags().flexible_atoms.count(), 2);
    }

    #[test]
    fn equivalence_elements_51_65() {
        let cat = catalog();
        let e = cat.lookup("51_65").unwrap();
        let ra = &e.algebra;
        let b = ra.atom_by_name("b").unwrap();
        let target = Element::atom(b).union(ra.identity());
        let eqs = ra.structural_flags().equivalence_elements;
        assert!(eqs.contains(&target), "b + id must be an equivalence element");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_integral(2, Signature::AllSymmetric).len(), 2);
        assert_eq!(enumerate_integral(2, Signature::OneAsymmetricPair).len(), 0);
        assert_eq!(enumerate_integral(3, Signature::AllSymmetric).len(), 7);
        assert_eq!(enumerate_integral(3, Signature::OneAsymmetricPair).len(), 3);
    }

    #[test]
    fn enumeration_matches_catalog_bijectively_small() {
        for (k, sig) in [
            (2, Signature::AllSymmetric),
            (3, Signature::AllSymmetric),
            (3, Signature::OneAsymmetricPair),
        ] {
            let got = enumerate_integral(k, sig);
            let mut matched: Vec<String> = got
                .iter()
                .map(|ra| match_to_catalog(ra).expect("in catalog").entry.name.clone())
                .collect();
            matched.sort();
            matched.dedup();
            assert_eq!(matched.len(), got.len(), "distinct entries for {k} {sig:?}");
        }
    }

    #[test]
    fn two_cycle_products_match_figure() {
        // spot checks of the 2-cycle product table
        let cat = catalog();
        let get = |n: &str| &cat.lookup(n).unwrap().algebra;
        let cases = [
            ("2_2", "5_7", "17_65"),
            ("1_2", "1_3", "1_37"),
            ("1_2", "5_7", "15_65"),
            ("2_2", "2_2", "4_7"),
            ("1_2", "7_7", "19_65"),
            ("2_2", "7_7", "20_65"),
            ("3_7", "1_2", "3_65"),
            ("5_7", "1_2", "9_65"),
            ("1_3", "2_2", "8_37"),
        ];
        for (a, b, want) in cases {
            let prod = crate::algebra::two_cycle_product(get(a), get(b)).unwrap();
            let m = match_to_catalog(&prod).expect("product is in catalog");
            assert_eq!(m.entry.name, want, "{a}[{b}]");
        }
    }

    #[test]
    fn match_with_nontrivial_renaming() {
        // 24_65 with atoms b and c swapped still matches 24_65
        let cat = catalog();
        let e = cat.lookup("24_65").unwrap();
        let ra = &e.algebra;
        let mut cycles = Vec::new();
        let swap = |x: AtomId| match x.0 {
            2 => AtomId(3),
            3 => AtomId(2),
            o => AtomId(o),
        };
        for t in ra.cycles().iter(4) {
            if t.0 != AtomId(0) && t.1 != AtomId(0) && t.2 != AtomId(0) {
                cycles.push((swap(t.0), swap(t.1), swap(t.2)));
            }
        }
        let swapped = RelationAlgebra::build(
            4,
            AtomId(0),
            ra.converse().clone(),
            &cycles,
            None,
        )
        .unwrap();
        let m = match_to_catalog(&swapped).unwrap();
        assert_eq!(m.entry.name, "24_65");
    }

    #[test]
    fn nonintegral_enumeration_unique() {
        let found = enumerate_simple_nonintegral();
        assert_eq!(found.len(), 1);
        assert!(isomorphic_general(&found[0], &catalog().nonintegral.algebra));
        // disjoint from the integral census by the identity-atom count
        assert!(!found[0].structural_flags().integral);
    }

    #[test]
    fn census_reproduces_figure() {
        let rows = census();
        let expect = [
            (0, 1u64, 1u64, 1u64, (1u64, 0u64)),
            (1, 1, 1, 1, (1, 0)),
            (2, 3, 2, 2, (2, 0)),
            (3, 13, 10, 10, (7, 3)),
            (4, 119, 103, 102, (65, 37)),
        ];
        for (k, total, simple, integral, (sym, asym)) in expect {
            let r = &rows[k];
            assert_eq!((r.total, r.simple, r.integral), (total, simple, integral), "row {k}");
            assert_eq!((r.sym, r.asym), (sym, asym), "row {k} split");
        }
        assert_eq!(rows[3].representable, (7, 3));
        assert_eq!(rows[3].fully_universal_square, (6, 3));
        assert_eq!(rows[3].normal, (6, 3));
        assert_eq!(rows[3].flexible, (2, 1));
        assert_eq!(rows[4].representable, (45, 26));
        assert_eq!(rows[4].fully_universal_square, (37, 25));
        assert_eq!(rows[4].normal, (34, 23));
        assert_eq!(rows[4].flexible, (10, 5));
    }

    #[test]
    fn non_representable_census() {
        let cat = catalog();
        let none: Vec<&str> = cat
            .integral
            .iter()
            .filter(|e| e.representability == Representability::None)
            .map(|e| e.name.as_str())
            .collect();
        let asym: Vec<&&str> = none.iter().filter(|n| n.ends_with("_37")).collect();
        let sym: Vec<&&str> = none.iter().filter(|n| n.ends_with("_65")).collect();
        assert_eq!(asym.len(), 11);
        assert_eq!(sym.len(), 20);
    }
}
