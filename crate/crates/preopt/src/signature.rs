//! Signatures: the atoms and typed generators a diagram is built from.
//!
//! Objects are words over atoms (the free strict tensor on the atom set), so
//! associativity and unit laws hold on the nose and never appear as data.
//! Generators carry a centrality flag; central generators are the ones the
//! congruence in [`crate::diagram`] is allowed to slide past other slices.
//!
//! A signature can be extended with *holes* (typed gaps, used by
//! [`crate::optic`]) and with the barrier pseudo-slice. Hole names live in a
//! reserved namespace (`HOLE<k>`) so user generators can never shadow them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A word over the signature's atoms. The empty word is the tensor unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObjectWord(Vec<String>);

impl ObjectWord {
    pub fn empty() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn new(atoms: Vec<String>) -> Self {
        ObjectWord(atoms)
    }

    pub fn from_atoms(atoms: &[&str]) -> Self {
        ObjectWord(atoms.iter().map(|a| a.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.0
    }

    /// Concatenation: the strict tensor on objects.
    pub fn tensor(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ObjectWord(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> ObjectWord {
        ObjectWord(self.0[start..end].to_vec())
    }

    /// Replace `self[at .. at+cut]` with `with`, yielding the next level word.
    pub fn splice(&self, at: usize, cut: usize, with: &ObjectWord) -> ObjectWord {
        let mut v = Vec::with_capacity(self.0.len() - cut + with.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&with.0);
        v.extend_from_slice(&self.0[at + cut..]);
        ObjectWord(v)
    }

    pub fn segment_matches(&self, at: usize, seg: &ObjectWord) -> bool {
        at + seg.len() <= self.len() && self.0[at..at + seg.len()] == seg.0[..]
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "I")
        } else {
            write!(f, "{}", self.0.join("*"))
        }
    }
}

/// A typed generator, possibly central.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dom: ObjectWord,
    pub cod: ObjectWord,
    pub central: bool,
}

/// The in/out boundary of a hole, keyed by its slot label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HoleSpec {
    pub slot: u32,
    pub in_type: ObjectWord,
    pub out_type: ObjectWord,
}

impl HoleSpec {
    pub fn new(slot: u32, in_type: ObjectWord, out_type: ObjectWord) -> Self {
        HoleSpec { slot, in_type, out_type }
    }

    /// The reserved pseudo-generator name for this slot.
    pub fn pseudo_name(&self) -> String {
        format!("HOLE{}", self.slot)
    }
}

/// Index of a generator within its signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    atoms: Vec<String>,
    gens: Vec<Generator>,
    gen_index: HashMap<String, GenId>,
    /// Lexicographic rank of each generator's name; the normal-form order
    /// compares generators by name, and ranks make that an integer compare.
    lex_rank: Vec<u32>,
    holes: Vec<HoleSpec>,
    hole_index: HashMap<u32, usize>,
    barriers_enabled: bool,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn reserved(name: &str) -> bool {
    name == "I" || name == "hole" || name == "barrier" || name == "atoms" || name == "gen" || name.starts_with("HOLE")
}

impl Signature {
    /// Validate and intern a signature. Atom and generator names must be
    /// unique identifiers outside the reserved namespace, and every atom used
    /// in a generator boundary must be declared.
    pub fn declare(atoms: &[String], gens: &[Generator]) -> Result<Signature> {
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for a in atoms {
            if !valid_ident(a) || reserved(a) {
                return Err(Error::ReservedName(a.clone()));
            }
            if seen.insert(a, ()).is_some() {
                return Err(Error::DuplicateName(a.clone()));
            }
        }
        let mut sig = Signature {
            atoms: atoms.to_vec(),
            gens: Vec::new(),
            gen_index: HashMap::new(),
            lex_rank: Vec::new(),
            holes: Vec::new(),
            hole_index: HashMap::new(),
            barriers_enabled: false,
        };
        for g in gens {
            if !valid_ident(&g.name) || reserved(&g.name) {
                return Err(Error::ReservedName(g.name.clone()));
            }
            if seen.contains_key(g.name.as_str()) || sig.gen_index.contains_key(&g.name) {
                return Err(Error::DuplicateName(g.name.clone()));
            }
            sig.check_word(&g.dom)?;
            sig.check_word(&g.cod)?;
            sig.gen_index.insert(g.name.clone(), GenId(sig.gens.len() as u32));
            sig.gens.push(g.clone());
        }
        sig.rebuild_ranks();
        Ok(sig)
    }

    fn rebuild_ranks(&mut self) {
        let mut names: Vec<&String> = self.gens.iter().map(|g| &g.name).collect();
        names.sort();
        let rank_of: HashMap<&String, u32> =
            names.iter().enumerate().map(|(i, n)| (*n, i as u32)).collect();
        self.lex_rank = self.gens.iter().map(|g| rank_of[&g.name]).collect();
    }

    /// Every word must mention only declared atoms.
    pub fn check_word(&self, w: &ObjectWord) -> Result<()> {
        for a in w.atoms() {
            if !self.atoms.iter().any(|x| x == a) {
                return Err(Error::UndeclaredAtom(a.clone()));
            }
        }
        Ok(())
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.gen_index.get(name).copied()
    }

    pub fn lex_rank(&self, id: GenId) -> u32 {
        self.lex_rank[id.0 as usize]
    }

    pub fn holes(&self) -> &[HoleSpec] {
        &self.holes
    }

    pub fn hole(&self, slot: u32) -> Option<&HoleSpec> {
        self.hole_index.get(&slot).map(|&i| &self.holes[i])
    }

    pub fn barriers_enabled(&self) -> bool {
        self.barriers_enabled
    }

    /// Extend with typed holes and enable barriers. Idempotent for specs the
    /// signature already carries; a relabeled boundary under an existing slot
    /// is a duplicate.
    pub fn extend_with_holes(&self, specs: &[HoleSpec]) -> Result<Signature> {
        let mut out = self.clone();
        out.barriers_enabled = true;
        for s in specs {
            out.check_word(&s.in_type)?;
            out.check_word(&s.out_type)?;
            if let Some(prev) = out.hole(s.slot) {
                if prev != s {
                    return Err(Error::DuplicateName(s.pseudo_name()));
                }
                continue;
            }
            out.hole_index.insert(s.slot, out.holes.len());
            out.holes.push(s.clone());
        }
        Ok(out)
    }

    pub fn into_arc(self) -> Arc<Signature> {
        Arc::new(self)
    }

    /// Same atoms and generators, holes aside.
    pub fn same_base(&self, other: &Signature) -> bool {
        self.atoms == other.atoms && self.gens == other.gens
    }

    /// Drop the hole spec for `slot`, if present.
    pub fn without_hole(&self, slot: u32) -> Signature {
        let mut out = self.clone();
        out.holes.retain(|h| h.slot != slot);
        out.hole_index = out.holes.iter().enumerate().map(|(i, h)| (h.slot, i)).collect();
        out
    }

    /// Union of two signatures over the same atom/generator base: hole
    /// tables merge (conflicting slots are duplicates), barrier enablement
    /// is inherited from either side.
    pub fn merge(&self, other: &Signature) -> Result<Signature> {
        if !self.same_base(other) {
            return Err(Error::SignatureMismatch);
        }
        let mut out = self.clone();
        out.barriers_enabled = self.barriers_enabled || other.barriers_enabled;
        for s in &other.holes {
            if let Some(prev) = out.hole(s.slot) {
                if prev != s {
                    return Err(Error::DuplicateName(s.pseudo_name()));
                }
                continue;
            }
            out.hole_index.insert(s.slot, out.holes.len());
            out.holes.push(s.clone());
        }
        Ok(out)
    }

    /// The demo signature the law suites and docs run on: two atoms, three
    /// central generators (one width-changing) and two non-central ones.
    pub fn demo() -> Arc<Signature> {
        let a = || ObjectWord::from_atoms(&["A"]);
        let b = || ObjectWord::from_atoms(&["B"]);
        Signature::declare(
            &["A".into(), "B".into()],
            &[
                Generator { name: "s".into(), dom: a(), cod: a(), central: true },
                Generator { name: "f".into(), dom: a(), cod: a(), central: false },
                Generator { name: "c".into(), dom: b(), cod: b(), central: true },
                Generator { name: "g".into(), dom: b(), cod: b(), central: false },
                Generator {
                    name: "h".into(),
                    dom: a(),
                    cod: ObjectWord::from_atoms(&["A", "A"]),
                    central: true,
                },
            ],
        )
        .expect("demo signature is valid")
        .into_arc()
    }
}

/// Two diagrams may be combined when their signatures agree structurally;
/// pointer equality is the fast path.
pub fn same_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
