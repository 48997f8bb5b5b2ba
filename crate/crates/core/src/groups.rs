//! Finite groups small enough to enumerate: symmetric groups and their
//! subgroups, the binary vector spaces Z₂ʳ, and products of cyclic groups.
//!
//! # Multiplication convention
//!
//! Permutations compose left to right: `compose(a, b)` applies `a` first and
//! then `b`, so `compose((1,2,3), (1,2)) = (2,3)`. The Cayley edge rule is
//! `{h, s·h}` with the generator on the *left*; right translations
//! `x ↦ x·h` are therefore graph automorphisms. Textbooks differ on both
//! points, so every routine in this crate goes through [`compose`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of one of the supported groups.
///
/// The derived ordering is the canonical encoding used for deterministic
/// output: permutations by image array, words by big-endian bit string,
/// tuples by residue list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Image array over `0..n` (printed 1-based in cycle notation).
    Perm(Vec<u8>),
    /// Binary word of length `len`; coordinate 1 is the leftmost bit and is
    /// stored at bit position `len - 1`.
    Word { bits: u64, len: u8 },
    /// Residues modulo `moduli`.
    Tuple {
        residues: Vec<u32>,
        moduli: Vec<u32>,
    },
}

impl GroupElement {
    pub fn perm_from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidElement(format!(
                    "image array {images:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(GroupElement::Perm(images))
    }

    /// The transposition swapping the 1-based symbols `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j || n > 256 {
            return Err(Error::InvalidElement(format!(
                "transposition ({i},{j}) in S{n}"
            )));
        }
        let mut images: Vec<u8> = (0..n).map(|x| x as u8).collect();
        images.swap(i - 1, j - 1);
        Ok(GroupElement::Perm(images))
    }

    pub fn word(bits: u64, len: usize) -> Result<Self> {
        if len == 0 || len > 64 {
            return Err(Error::InvalidElement(format!(
                "word length {len} outside 1..=64"
            )));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::InvalidElement(format!(
                "bits {bits:#b} exceed length {len}"
            )));
        }
        Ok(GroupElement::Word {
            bits,
            len: len as u8,
        })
    }

    /// Unit vector `e_i` (1-based coordinate, leftmost = 1).
    pub fn unit_word(len: usize, i: usize) -> Result<Self> {
        if i == 0 || i > len {
            return Err(Error::InvalidElement(format!(
                "unit vector e_{i} in Z2^{len}"
            )));
        }
        Self::word(1u64 << (len - i), len)
    }

    pub fn tuple(residues: Vec<u32>, moduli: Vec<u32>) -> Result<Self> {
        if residues.len() != moduli.len() || moduli.is_empty() {
            return Err(Error::InvalidElement(
                "tuple and moduli lengths differ".into(),
            ));
        }
        if let Some((x, m)) = residues
            .iter()
            .zip(&moduli)
            .find(|(x, m)| **m < 2 || x >= m)
        {
            return Err(Error::InvalidElement(format!(
                "residue {x} invalid modulo {m}"
            )));
        }
        Ok(GroupElement::Tuple { residues, moduli })
    }

    pub fn identity_like(&self) -> Self {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm((0..p.len() as u8).collect()),
            GroupElement::Word { len, .. } => GroupElement::Word { bits: 0, len: *len },
            GroupElement::Tuple { moduli, .. } => GroupElement::Tuple {
                residues: vec![0; moduli.len()],
                moduli: moduli.clone(),
            },
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &x)| i == x as usize),
            GroupElement::Word { bits, .. } => *bits == 0,
            GroupElement::Tuple { residues, .. } => residues.iter().all(|&x| x == 0),
        }
    }

    /// Degree of a permutation, length of a word, or arity of a tuple.
    pub fn degree(&self) -> usize {
        match self {
            GroupElement::Perm(p) => p.len(),
            GroupElement::Word { len, .. } => *len as usize,
            GroupElement::Tuple { moduli, .. } => moduli.len(),
        }
    }

    pub fn is_transposition(&self) -> bool {
        match self {
            GroupElement::Perm(p) => {
                p.iter()
                    .enumerate()
                    .filter(|(i, &x)| *i != x as usize)
                    .count()
                    == 2
            }
            _ => false,
        }
    }

    /// Moved points of a permutation, 0-based; empty for other variants.
    pub fn support(&self) -> Vec<usize> {
        match self {
            GroupElement::Perm(p) => p
                .iter()
                .enumerate()
                .filter(|(i, &x)| *i != x as usize)
                .map(|(i, _)| i)
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn weight(&self) -> u32 {
        match self {
            GroupElement::Word { bits, .. } => bits.count_ones(),
            _ => 0,
        }
    }
}

/// Group product, see the module docs for the convention.
pub fn compose(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    use GroupElement::*;
    match (a, b) {
        (Perm(p), Perm(q)) if p.len() == q.len() => {
            Ok(Perm(p.iter().map(|&i| q[i as usize]).collect()))
        }
        (Word { bits: x, len: l }, Word { bits: y, len: m }) if l == m => Ok(Word {
            bits: x ^ y,
            len: *l,
        }),
        (
            Tuple {
                residues: x,
                moduli: m,
            },
            Tuple {
                residues: y,
                moduli: n,
            },
        ) if m == n => Ok(Tuple {
            residues: x
                .iter()
                .zip(y)
                .zip(m)
                .map(|((a, b), r)| (a + b) % r)
                .collect(),
            moduli: m.clone(),
        }),
        _ => Err(Error::Mismatch(format!("cannot compose {a} with {b}"))),
    }
}

pub fn inverse(a: &GroupElement) -> GroupElement {
    use GroupElement::*;
    match a {
        Perm(p) => {
            let mut inv = vec![0u8; p.len()];
            for (i, &x) in p.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            Perm(inv)
        }
        Word { .. } => a.clone(),
        Tuple { residues, moduli } => Tuple {
            residues: residues
                .iter()
                .zip(moduli)
                .map(|(x, r)| (r - x) % r)
                .collect(),
            moduli: moduli.clone(),
        },
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => {
                let mut seen = vec![false; p.len()];
                let mut any = false;
                for start in 0..p.len() {
                    if seen[start] || p[start] as usize == start {
                        continue;
                    }
                    any = true;
                    write!(f, "(")?;
                    let mut x = start;
                    let mut first = true;
                    while !seen[x] {
                        seen[x] = true;
                        if !first {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", x + 1)?;
                        first = false;
                        x = p[x] as usize;
                    }
                    write!(f, ")")?;
                }
                if !any {
                    write!(f, "()")?;
                }
                Ok(())
            }
            GroupElement::Word { bits, len } => {
                for i in (0..*len).rev() {
                    write!(f, "{}", (bits >> i) & 1)?;
                }
                Ok(())
            }
            GroupElement::Tuple { residues, .. } => {
                let parts: Vec<String> = residues.iter().map(u32::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// The ambient group of a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Symmetric(usize),
    Binary(usize),
    CyclicProduct(Vec<u32>),
    /// The subgroup of Sₙ generated by whatever generating set it is paired with.
    PermSubgroup(usize),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Symmetric(n) | GroupSpec::PermSubgroup(n) if (1..=256).contains(n) => Ok(()),
            GroupSpec::Binary(r) if (1..=64).contains(r) => Ok(()),
            GroupSpec::CyclicProduct(m) if !m.is_empty() && m.iter().all(|&r| r >= 2) => Ok(()),
            _ => Err(Error::InvalidParameter(format!("group spec {self}"))),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Symmetric(n) | GroupSpec::PermSubgroup(n) => {
                GroupElement::Perm((0..*n).map(|x| x as u8).collect())
            }
            GroupSpec::Binary(r) => GroupElement::Word {
                bits: 0,
                len: *r as u8,
            },
            GroupSpec::CyclicProduct(m) => GroupElement::Tuple {
                residues: vec![0; m.len()],
                moduli: m.clone(),
            },
        }
    }

    /// |H| when the group is fixed by the spec alone and fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupSpec::Symmetric(n) => {
                (1..=*n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
            }
            GroupSpec::Binary(r) => 1u128.checked_shl(*r as u32),
            GroupSpec::CyclicProduct(m) => m
                .iter()
                .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128)),
            GroupSpec::PermSubgroup(_) => None,
        }
    }

    pub fn contains(&self, el: &GroupElement) -> bool {
        match (self, el) {
            (GroupSpec::Symmetric(n) | GroupSpec::PermSubgroup(n), GroupElement::Perm(p)) => {
                p.len() == *n
            }
            (GroupSpec::Binary(r), GroupElement::Word { len, .. }) => *len as usize == *r,
            (GroupSpec::CyclicProduct(m), GroupElement::Tuple { moduli, .. }) => moduli == m,
            _ => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Binary(r) => write!(f, "z2:{r}"),
            GroupSpec::CyclicProduct(m) => {
                let parts: Vec<String> = m.iter().map(u32::to_string).collect();
                write!(f, "zprod:{}", parts.join(","))
            }
            GroupSpec::PermSubgroup(n) => write!(f, "perm:{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `sym:N`, `z2:R`, `zprod:A,B,...` or `perm:N`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec `{s}` lacks `kind:`")))?;
        let int = |t: &str| -> Result<usize> {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{t}` is not an integer")))
        };
        let spec = match kind.trim() {
            "sym" => GroupSpec::Symmetric(int(arg)?),
            "z2" => GroupSpec::Binary(int(arg)?),
            "perm" => GroupSpec::PermSubgroup(int(arg)?),
            "zprod" => GroupSpec::CyclicProduct(
                arg.split(',')
                    .map(|t| int(t).map(|v| v as u32))
                    .collect::<Result<_>>()?,
            ),
            other => return Err(Error::Parse(format!("unknown group kind `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses an element in the notation matching `spec`: cycle notation
/// `(1,2)(3,4)` (commas optional for single-digit symbols, `()` or `e` for the
/// identity), a bit string `0110`, or a residue list `2,3`.
pub fn parse_element(text: &str, spec: &GroupSpec) -> Result<GroupElement> {
    let text = text.trim();
    match spec {
        GroupSpec::Symmetric(n) | GroupSpec::PermSubgroup(n) => parse_cycles(text, *n),
        GroupSpec::Binary(r) => {
            if text.len() != *r || !text.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Parse(format!(
                    "`{text}` is not a bit string of length {r}"
                )));
            }
            let bits = text
                .chars()
                .fold(0u64, |acc, c| (acc << 1) | (c == '1') as u64);
            GroupElement::word(bits, *r)
        }
        GroupSpec::CyclicProduct(moduli) => {
            let residues: Vec<u32> = text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("`{t}` is not a residue")))
                })
                .collect::<Result<_>>()?;
            if residues.len() != moduli.len() {
                return Err(Error::Parse(format!(
                    "`{text}` has {} entries, expected {}",
                    residues.len(),
                    moduli.len()
                )));
            }
            GroupElement::tuple(residues, moduli.clone())
        }
    }
}

fn parse_cycles(text: &str, n: usize) -> Result<GroupElement> {
    let identity = GroupElement::Perm((0..n).map(|x| x as u8).collect());
    if text == "e" || text.is_empty() {
        return Ok(identity);
    }
    let mut acc = identity;
    let mut rest = text;
    while !rest.is_empty() {
        let body_end = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected `(` in `{text}`")));
        }
        let body = &rest[1..body_end];
        rest = rest[body_end + 1..].trim_start();
        let symbols: Vec<usize> = if body.trim().is_empty() {
            Vec::new()
        } else if body.contains(',') {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad symbol `{t}` in `{text}`")))
                })
                .collect::<Result<_>>()?
        } else if body.chars().all(|c| c.is_ascii_digit()) {
            body.chars().map(|c| c as usize - '0' as usize).collect()
        } else {
            return Err(Error::Parse(format!("bad cycle `({body})`")));
        };
        if let Some(bad) = symbols.iter().find(|&&s| s == 0 || s > n) {
            return Err(Error::InvalidElement(format!(
                "symbol {bad} outside 1..={n}"
            )));
        }
        let distinct: HashSet<_> = symbols.iter().collect();
        if distinct.len() != symbols.len() {
            return Err(Error::Parse(format!("repeated symbol in `({body})`")));
        }
        let mut images: Vec<u8> = (0..n).map(|x| x as u8).collect();
        for (k, &s) in symbols.iter().enumerate() {
            let next = symbols[(k + 1) % symbols.len()];
            images[s - 1] = (next - 1) as u8;
        }
        acc = compose(&acc, &GroupElement::Perm(images))?;
    }
    Ok(acc)
}

/// An ordered, duplicate-free list of generators inside a fixed group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
}

impl GeneratingSet {
    pub fn new(spec: GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        spec.validate()?;
        let mut seen = HashSet::new();
        for el in &elements {
            if !spec.contains(el) {
                return Err(Error::InvalidGeneratingSet(format!(
                    "{el} is not an element of {spec}"
                )));
            }
            if !seen.insert(el) {
                return Err(Error::InvalidGeneratingSet(format!(
                    "duplicate generator {el}"
                )));
            }
        }
        Ok(GeneratingSet { spec, elements })
    }

    /// Parses each generator with [`parse_element`].
    pub fn parse(spec: GroupSpec, texts: &[&str]) -> Result<Self> {
        let elements = texts
            .iter()
            .map(|t| parse_element(t, &spec))
            .collect::<Result<_>>()?;
        Self::new(spec, elements)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, el: &GroupElement) -> bool {
        self.elements.contains(el)
    }

    /// Index of the inverse-pair class {s, s⁻¹} of each generator, numbered in
    /// order of first appearance.
    pub fn pair_classes(&self) -> Vec<usize> {
        let mut classes = Vec::with_capacity(self.elements.len());
        let mut next = 0;
        for (i, s) in self.elements.iter().enumerate() {
            let inv = inverse(s);
            match self.elements[..i].iter().position(|t| *t == inv) {
                Some(j) => classes.push(classes[j]),
                None => {
                    classes.push(next);
                    next += 1;
                }
            }
        }
        classes
    }
}

/// Outcome of [`validate_generating_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub identity_free: bool,
    pub symmetric: bool,
    /// `None` when the ambient group is too large to enumerate.
    pub generates: Option<bool>,
}

impl ValidityReport {
    pub fn is_cayley_ready(&self) -> bool {
        self.identity_free && self.symmetric
    }
}

pub fn validate_generating_set(set: &GeneratingSet, closure_guard: usize) -> ValidityReport {
    let identity_free = set.elements.iter().all(|s| !s.is_identity());
    let symmetric = set.elements.iter().all(|s| set.contains(&inverse(s)));
    let generates = match set.spec.order() {
        None => Some(true),
        Some(order) if set.is_empty() => Some(order == 1),
        Some(order) if order > closure_guard as u128 => None,
        Some(order) => match closure(set, closure_guard) {
            Ok(elements) => Some(elements.len() as u128 == order),
            Err(_) => None,
        },
    };
    ValidityReport {
        identity_free,
        symmetric,
        generates,
    }
}

/// Breadth-first closure of ⟨S⟩ from the identity.
///
/// Layer `k+1` holds the new products `s·h` with `h` in layer `k`, sorted by
/// canonical encoding; the identity comes first.
pub fn closure(set: &GeneratingSet, guard: usize) -> Result<Vec<GroupElement>> {
    Ok(closure_indexed(set, guard)?.0)
}

pub(crate) fn closure_indexed(
    set: &GeneratingSet,
    guard: usize,
) -> Result<(Vec<GroupElement>, HashMap<GroupElement, usize>)> {
    if set.is_empty() {
        return Err(Error::InvalidGeneratingSet(
            "closure of an empty set".into(),
        ));
    }
    let identity = set.spec.identity();
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0);
    let mut layer_start = 0;
    while layer_start < elements.len() {
        let layer_end = elements.len();
        let mut next = Vec::new();
        for h in layer_start..layer_end {
            for s in &set.elements {
                let prod = compose(s, &elements[h])?;
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), usize::MAX);
                    next.push(prod);
                    if index.len() > guard {
                        return Err(Error::GuardExceeded {
                            what: "group closure",
                            limit: guard,
                        });
                    }
                }
            }
        }
        next.sort();
        for el in next {
            index.insert(el.clone(), elements.len());
            elements.push(el);
        }
        layer_start = layer_end;
    }
    Ok((elements, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, n: usize) -> GroupElement {
        parse_element(text, &GroupSpec::Symmetric(n)).unwrap()
    }

    fn w(text: &str) -> GroupElement {
        parse_element(text, &GroupSpec::Binary(text.len())).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            compose(&p("(123)", 3), &p("(12)", 3)).unwrap(),
            p("(23)", 3)
        );
        let g = p("(1,3)", 3);
        assert_eq!(compose(&p("()", 3), &g).unwrap(), g);
        assert_eq!(compose(&w("0110"), &w("1100")).unwrap(), w("1010"));
        assert!(compose(&p("(12)", 3), &p("(12)", 4)).is_err());
        assert!(compose(&p("(12)", 2), &w("01")).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&p("(123)", 3)), p("(132)", 3));
        assert_eq!(inverse(&p("(12)", 3)), p("(12)", 3));
        let t = GroupElement::tuple(vec![2, 3], vec![4, 5]).unwrap();
        assert_eq!(
            inverse(&t),
            GroupElement::tuple(vec![2, 2], vec![4, 5]).unwrap()
        );
    }

    #[test]
    fn validity_reports() {
        let star =
            GeneratingSet::parse(GroupSpec::Symmetric(4), &["(12)", "(13)", "(14)"]).unwrap();
        let r = validate_generating_set(&star, 1000);
        assert!(r.identity_free && r.symmetric);
        assert_eq!(r.generates, Some(true));

        let c3 = GeneratingSet::parse(GroupSpec::Symmetric(3), &["(123)"]).unwrap();
        assert!(!validate_generating_set(&c3, 1000).symmetric);

        let cube =
            GeneratingSet::parse(GroupSpec::Symmetric(6), &["(12)", "(34)", "(56)"]).unwrap();
        let r = validate_generating_set(&cube, 1000);
        assert_eq!(r.generates, Some(false));
        assert_eq!(closure(&cube, 1000).unwrap().len(), 8);

        let with_e = GeneratingSet::parse(GroupSpec::Symmetric(3), &["()", "(12)"]).unwrap();
        assert!(!validate_generating_set(&with_e, 1000).identity_free);

        let sub = GeneratingSet::parse(GroupSpec::PermSubgroup(6), &["(12)"]).unwrap();
        assert_eq!(validate_generating_set(&sub, 1000).generates, Some(true));
    }

    #[test]
    fn closure_examples() {
        let s = GeneratingSet::parse(GroupSpec::Symmetric(3), &["(12)", "(23)"]).unwrap();
        let c = closure(&s, 100).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c[0].is_identity());
        let empty = GeneratingSet::new(GroupSpec::Symmetric(3), vec![]).unwrap();
        assert!(closure(&empty, 100).is_err());
        let big = GeneratingSet::parse(GroupSpec::Symmetric(6), &["(12)", "(123456)"]).unwrap();
        assert!(matches!(
            closure(&big, 100),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn closure_is_layered_and_sorted() {
        let s = GeneratingSet::parse(GroupSpec::Binary(3), &["100", "010", "001"]).unwrap();
        let c: Vec<String> = closure(&s, 100)
            .unwrap()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(c, ["000", "001", "010", "100", "011", "101", "110", "111"]);
    }

    #[test]
    fn generating_set_rejects_duplicates_and_foreign_elements() {
        assert!(GeneratingSet::parse(GroupSpec::Symmetric(3), &["(12)", "(1,2)"]).is_err());
        let foreign = GroupElement::word(1, 3).unwrap();
        assert!(GeneratingSet::new(GroupSpec::Symmetric(3), vec![foreign]).is_err());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("(1,2,3)", 3), GroupElement::Perm(vec![1, 2, 0]));
        let word = parse_element("011111", &GroupSpec::Binary(6)).unwrap();
        assert_eq!(
            word,
            GroupElement::Word {
                bits: 0b011111,
                len: 6
            }
        );
        let comp = p("(1,2)(3,4)(5,6,7)", 7);
        assert_eq!(comp.to_string(), "(1,2)(3,4)(5,6,7)");
        assert!(parse_element("(1,9)", &GroupSpec::Symmetric(3)).is_err());
        assert!(parse_element("(1,2", &GroupSpec::Symmetric(3)).is_err());
        assert!(parse_element("012", &GroupSpec::Binary(3)).is_err());
        assert!(parse_element("4,1", &GroupSpec::CyclicProduct(vec![4, 5])).is_err());
        assert_eq!(p("e", 3).to_string(), "()");
    }

    #[test]
    fn spec_strings_roundtrip() {
        for s in ["sym:4", "z2:6", "zprod:4,5", "perm:6"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert!("zprod:1,5".parse::<GroupSpec>().is_err());
        assert!("foo:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn pair_classes_group_inverses() {
        let s = GeneratingSet::parse(
            GroupSpec::CyclicProduct(vec![8]),
            &["1", "7", "4", "2", "6"],
        )
        .unwrap();
        assert_eq!(s.pair_classes(), vec![0, 0, 1, 2, 2]);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = GroupElement> {
        Just((0..n as u8).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_map(GroupElement::Perm)
    }

    fn arb_tuple() -> impl Strategy<Value = GroupElement> {
        (0u32..4, 0u32..5, 0u32..6)
            .prop_map(|(a, b, c)| GroupElement::tuple(vec![a, b, c], vec![4, 5, 6]).unwrap())
    }

    proptest! {
        #[test]
        fn perm_group_laws(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            let ab_c = compose(&compose(&a, &b).unwrap(), &c).unwrap();
            let a_bc = compose(&a, &compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert!(compose(&a, &inverse(&a)).unwrap().is_identity());
            prop_assert_eq!(compose(&a.identity_like(), &a).unwrap(), a.clone());
            let text = a.to_string();
            prop_assert_eq!(parse_element(&text, &GroupSpec::Symmetric(6)).unwrap(), a);
        }

        #[test]
        fn tuple_group_laws(a in arb_tuple(), b in arb_tuple(), c in arb_tuple()) {
            let ab_c = compose(&compose(&a, &b).unwrap(), &c).unwrap();
            let a_bc = compose(&a, &compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert!(compose(&a, &inverse(&a)).unwrap().is_identity());
        }

        #[test]
        fn closure_is_a_subgroup(gens in proptest::collection::vec(arb_perm(5), 1..3)) {
            let mut gens = gens;
            gens.sort();
            gens.dedup();
            let set = GeneratingSet::new(GroupSpec::Symmetric(5), gens).unwrap();
            let elements = closure(&set, 10_000).unwrap();
            let members: HashSet<_> = elements.iter().cloned().collect();
            prop_assert_eq!(120 % elements.len(), 0);
            for a in &elements {
                prop_assert!(members.contains(&inverse(a)));
                for b in &elements {
                    prop_assert!(members.contains(&compose(a, b).unwrap()));
                }
            }
        }
    }
}
