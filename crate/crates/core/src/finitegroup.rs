//! Finite permutation groups: closure enumeration, conjugacy classes,
//! centralizers, double cosets, and the group-theoretic predicates behind
//! the finite-dimensionality screens.
//!
//! Groups are represented by full element enumeration (capped at 10^6
//! elements); the applications here live in groups the size of S_3, S_4,
//! A_5, so exhaustive methods are both simple and exact.  Witnesses are
//! lexicographically minimal in the element order (sorted image vectors)
//! for reproducibility.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("images {0:?} do not form a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("generator degree {found} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("element {0} does not belong to the group")]
    NotAMember(String),
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error("cannot parse cycle notation `{0}`")]
    BadCycles(String),
}

/// A permutation of `{0, ..., n-1}` stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NotAPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self * other`, applying `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// `self * g * self^{-1}`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        self.compose(g).compose(&self.inverse())
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x)
            .map(|(i, _)| i)
            .collect()
    }

    /// Parse disjoint-cycle notation with 1-based points, e.g. `(12)(34)`,
    /// `(1 2 3)` or `(10,11)`.  In a cycle without separators every digit
    /// is one point.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let text = text.trim();
        let mut images: Vec<usize> = (0..degree).collect();
        if text.is_empty() || text == "e" || text == "()" || text == "id" {
            return Ok(Perm { images });
        }
        let bad = || GroupError::BadCycles(text.to_string());
        let mut rest = text;
        let mut seen: HashSet<usize> = HashSet::new();
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(bad)?;
            if !rest[..open].trim().is_empty() {
                return Err(bad());
            }
            let close = rest.find(')').ok_or_else(bad)?;
            let body = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let points: Vec<usize> = if body.contains(|c: char| c == ',' || c.is_whitespace()) {
                body.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                    .collect::<Result<_, _>>()?
            };
            if points.len() < 2 {
                return Err(bad());
            }
            for &p in &points {
                if p == 0 || p > degree || !seen.insert(p) {
                    return Err(bad());
                }
            }
            for k in 0..points.len() {
                images[points[k] - 1] = points[(k + 1) % points.len()] - 1;
            }
        }
        Ok(Perm { images })
    }

    /// Disjoint-cycle string with 1-based points; identity prints as `e`.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            let sep = if n > 9 { " " } else { "" };
            out.push('(');
            out.push_str(
                &cycle
                    .iter()
                    .map(|x| (x + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(sep),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// A finite permutation group with fully enumerated elements.
///
/// Elements are sorted lexicographically by image vector (the identity is
/// always element 0), and each element carries one word in the generators,
/// so matrix representations can evaluate arbitrary elements.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `words[k]`: generator indices with `elements[k] = g_{w_1} * ... * g_{w_m}`.
    words: Vec<Vec<usize>>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        Self::from_generators_capped(degree, generators, ELEMENT_CAP)
    }

    pub fn from_generators_capped(
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        // breadth-first closure with shortest words
        let id = Perm::identity(degree);
        let mut words: HashMap<Perm, Vec<usize>> = HashMap::new();
        words.insert(id.clone(), Vec::new());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let next = p.compose(g);
                if !words.contains_key(&next) {
                    if words.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    let mut w = words[&p].clone();
                    w.push(k);
                    words.insert(next.clone(), w);
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<Perm> = words.keys().cloned().collect();
        elements.sort();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let words = elements.iter().map(|p| words[p].clone()).collect();
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            index,
            words,
            classes: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &Perm {
        &self.elements[k]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Word of element `k` in generator indices (product left to right).
    pub fn word(&self, k: usize) -> &[usize] {
        &self.words[k]
    }

    pub fn compose_indices(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose(&self.elements[b]);
        self.index[&p]
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Subgroup element-index closure of the given element indices.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut seen: HashSet<usize> = HashSet::new();
        seen.insert(self.identity_index());
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in seed {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
        queue.push_back(self.identity_index());
        while let Some(a) = queue.pop_front() {
            for &s in seed {
                let n = self.compose_indices(a, s);
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// `{x : xg = gx}` as sorted element indices.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        let ge = &self.elements[g];
        (0..self.order())
            .filter(|&x| self.elements[x].compose(ge) == ge.compose(&self.elements[x]))
            .collect()
    }

    /// Nonabelian simple test by normal closures of conjugacy classes.
    pub fn is_nonabelian_simple(&self) -> bool {
        if self.is_abelian() || self.order() == 1 {
            return false;
        }
        for class in self.conjugacy_classes() {
            if class.members.len() == 1 && class.members[0] == self.identity_index() {
                continue;
            }
            if self.subgroup_closure(&class.members).len() != self.order() {
                return false;
            }
        }
        true
    }

    /// If the group is the full symmetric group on its moved points,
    /// returns the number of moved points.
    pub fn symmetric_degree(&self) -> Option<usize> {
        let mut moved: HashSet<usize> = HashSet::new();
        for g in &self.elements {
            moved.extend(g.moved_points());
        }
        let m = moved.len();
        let mut fact = 1usize;
        for k in 2..=m {
            fact = fact.saturating_mul(k);
        }
        if m >= 1 && self.order() == fact {
            Some(m)
        } else {
            None
        }
    }

    /// All conjugacy classes, with representatives minimal in the element
    /// order; classes are sorted by representative and partition the group.
    /// Computed once per group and cached.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for rep in 0..self.order() {
            if assigned[rep] {
                continue;
            }
            // orbit under conjugation by generators
            let mut members = vec![rep];
            assigned[rep] = true;
            let mut queue = VecDeque::from([rep]);
            while let Some(x) = queue.pop_front() {
                for g in &self.generators {
                    let c = g.conjugate(&self.elements[x]);
                    let ci = self.index[&c];
                    if !assigned[ci] {
                        assigned[ci] = true;
                        members.push(ci);
                        queue.push_back(ci);
                    }
                }
            }
            members.sort_unstable();
            let centralizer = self.centralizer(rep);
            classes.push(ConjugacyClass {
                representative: rep,
                members,
                centralizer,
            });
        }
        classes
    }

    /// The class containing the given element.
    pub fn class_of(&self, g: usize) -> ConjugacyClass {
        self.conjugacy_classes()
            .iter()
            .find(|c| c.members.binary_search(&g).is_ok())
            .expect("every element lies in a class")
            .clone()
    }

    /// Double cosets `C_h x C_g` of `centralizer(h) \ G / centralizer(g)`,
    /// with lexicographically minimal representatives, plus the count of
    /// cosets whose representative `x` has `x g x^{-1}` not commuting
    /// with `h`.  That count is well-defined on double cosets.
    pub fn double_coset_analysis(&self, g: usize, h: usize) -> DoubleCosetReport {
        let cg = self.centralizer(g);
        let ch = self.centralizer(h);
        let mut assigned = vec![false; self.order()];
        let mut cosets = Vec::new();
        let he = &self.elements[h];
        for rep in 0..self.order() {
            if assigned[rep] {
                continue;
            }
            let mut members = Vec::new();
            for &a in &ch {
                for &b in &cg {
                    let x = self.compose_indices(self.compose_indices(a, rep), b);
                    if !assigned[x] {
                        assigned[x] = true;
                        members.push(x);
                    }
                }
            }
            members.sort_unstable();
            let xg = self.elements[rep].conjugate(&self.elements[g]);
            let noncommuting = xg.compose(he) != he.compose(&xg);
            cosets.push(DoubleCoset {
                representative: rep,
                size: members.len(),
                noncommuting,
            });
        }
        let noncommuting_count = cosets.iter().filter(|c| c.noncommuting).count();
        DoubleCosetReport {
            cosets,
            noncommuting_count,
        }
    }
}

/// A conjugacy class with its centralizer, satisfying
/// `|members| * |centralizer| = |G|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1 && self.members[0] == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCoset {
    pub representative: usize,
    pub size: usize,
    pub noncommuting: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCosetReport {
    pub cosets: Vec<DoubleCoset>,
    pub noncommuting_count: usize,
}

/// `true` iff `st = ts` for all `s` in `o1` and `t` in `o2`.
pub fn classes_commute(group: &FiniteGroup, o1: &ConjugacyClass, o2: &ConjugacyClass) -> bool {
    classes_commute_witness(group, o1, o2).is_none()
}

/// First (lexicographic) witness pair with `st != ts`, if any.
pub fn classes_commute_witness(
    group: &FiniteGroup,
    o1: &ConjugacyClass,
    o2: &ConjugacyClass,
) -> Option<(usize, usize)> {
    for &s in &o1.members {
        for &t in &o2.members {
            if group.compose_indices(s, t) != group.compose_indices(t, s) {
                return Some((s, t));
            }
        }
    }
    None
}

/// All unordered pairs of nontrivial classes (a class may pair with
/// itself) that commute elementwise; pairs are indices into the class
/// list in representative order.
pub fn commuting_class_pairs(group: &FiniteGroup) -> Vec<(usize, usize)> {
    let classes = group.conjugacy_classes();
    let mut out = Vec::new();
    for i in 0..classes.len() {
        if classes[i].is_trivial() {
            continue;
        }
        for j in i..classes.len() {
            if classes[j].is_trivial() {
                continue;
            }
            if classes_commute(group, &classes[i], &classes[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Outcome of the `(st)^2 = (ts)^2` test on a pair of classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StstOutcome {
    Pass,
    /// Lexicographically first witness: `s`, `t`, `(st)^2`, `(ts)^2`.
    Fail {
        s: usize,
        t: usize,
        st_sq: usize,
        ts_sq: usize,
    },
}

impl StstOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, StstOutcome::Pass)
    }
}

/// Check `(st)^2 = (ts)^2` for all `s` in `o1`, `t` in `o2`.
pub fn stst_condition(
    group: &FiniteGroup,
    o1: &ConjugacyClass,
    o2: &ConjugacyClass,
) -> StstOutcome {
    for &s in &o1.members {
        for &t in &o2.members {
            let st = group.compose_indices(s, t);
            let ts = group.compose_indices(t, s);
            let st_sq = group.compose_indices(st, st);
            let ts_sq = group.compose_indices(ts, ts);
            if st_sq != ts_sq {
                return StstOutcome::Fail { s, t, st_sq, ts_sq };
            }
        }
    }
    StstOutcome::Pass
}

/// Named built-in groups: `Sn`, `An`, `Dn` (dihedral, order 2n), `Cn`/`Zn`
/// (cyclic).
pub fn builtin_group(name: &str) -> Result<FiniteGroup, GroupError> {
    let err = || GroupError::UnknownBuiltin(name.to_string());
    let (family, n): (char, usize) = {
        let mut chars = name.chars();
        let f = chars.next().ok_or_else(err)?;
        let rest: String = chars.collect();
        (f, rest.parse().map_err(|_| err())?)
    };
    match family {
        'S' if n >= 1 => {
            let gens = if n == 1 {
                vec![]
            } else {
                vec![transposition(n, 0, 1), cycle(n)]
            };
            FiniteGroup::from_generators(n, gens)
        }
        'A' if n >= 3 => {
            let mut gens = Vec::new();
            // 3-cycles (1 2 3), (1 2 4), ..., (1 2 n) generate A_n
            for k in 2..n {
                let mut images: Vec<usize> = (0..n).collect();
                images[0] = 1;
                images[1] = k;
                images[k] = 0;
                gens.push(Perm::new(images).unwrap());
            }
            FiniteGroup::from_generators(n, gens)
        }
        'D' if n >= 3 => {
            let rot = cycle(n);
            let mut images: Vec<usize> = (0..n).collect();
            for i in 0..n {
                images[i] = (n - i) % n;
            }
            let flip = Perm::new(images).unwrap();
            FiniteGroup::from_generators(n, vec![rot, flip])
        }
        'C' | 'Z' if n >= 1 => FiniteGroup::from_generators(n, vec![cycle(n)]),
        _ => Err(err()),
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.swap(a, b);
    Perm::new(images).unwrap()
}

fn cycle(n: usize) -> Perm {
    Perm::new((0..n).map(|i| (i + 1) % n).collect()).unwrap()
}

/// JSON form of a group: either a builtin name or explicit generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Builtin(String),
    Explicit {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupJson {
    pub fn into_group(self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupJson::Builtin(name) => builtin_group(&name),
            GroupJson::Explicit { degree, generators } => {
                let gens = generators
                    .into_iter()
                    .map(Perm::new)
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_generators(degree, gens)
            }
        }
    }
}
