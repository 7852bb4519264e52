//! Weyl groupoid enumeration, real roots, root-system axioms and
//! finiteness certificates.
//!
//! Morphisms of the Weyl groupoid are triples (target, matrix, source);
//! they are generated by the reflections `s_i^N : N -> r_i(N)` and stored
//! deduplicated by matrix, keeping one shortest witness word.  The real
//! roots of an object `P` are the vectors `w(alpha_i)` over all morphisms
//! `w` into `P`; for a finite Weyl groupoid these are all roots.

use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::cartan::CartanScheme;

pub type RootVec = Vec<i64>;

/// A morphism `w: source -> target` together with one shortest witness
/// word.  The word lists the generator steps `(object, index)` in
/// application order, so `w = s_{i_n}^{N_{n-1}} ... s_{i_1}^{N_0}` with
/// `N_0 = source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub matrix: Vec<RootVec>,
    pub word: Vec<(usize, usize)>,
}

impl Morphism {
    /// Image of a column vector under the morphism matrix.
    pub fn apply(&self, v: &[i64]) -> RootVec {
        mat_apply(&self.matrix, v)
    }

    /// `w(alpha_i)`, the i-th column of the matrix.
    pub fn column(&self, i: usize) -> RootVec {
        self.matrix.iter().map(|row| row[i]).collect()
    }
}

pub fn mat_apply(m: &[RootVec], v: &[i64]) -> RootVec {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[RootVec], b: &[RootVec]) -> Vec<RootVec> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn identity_matrix(n: usize) -> Vec<RootVec> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Enumeration caps.  Exceeding a cap never produces a wrong verdict;
/// the result is flagged inconclusive instead.
#[derive(Debug, Clone, Copy)]
pub struct GroupoidCaps {
    pub max_objects: usize,
    pub max_roots: usize,
    pub max_morphisms: usize,
}

impl Default for GroupoidCaps {
    fn default() -> Self {
        GroupoidCaps {
            max_objects: 1024,
            max_roots: 10_000,
            max_morphisms: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapHit {
    Objects,
    Roots,
    Morphisms,
}

/// Result of the breadth-first closure over generator reflections.
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Objects reached from the start, in visit order (scheme indices).
    pub objects: Vec<usize>,
    /// All morphisms among reached objects, deduplicated by
    /// (source, target, matrix), in deterministic BFS order.
    pub morphisms: Vec<Morphism>,
    /// `positive_roots[k]` are the positive real roots of `objects[k]`,
    /// sorted lexicographically.
    pub positive_roots: Vec<Vec<RootVec>>,
    /// `None` when the closure terminated, otherwise the first cap hit.
    pub cap_hit: Option<CapHit>,
}

impl Enumeration {
    pub fn complete(&self) -> bool {
        self.cap_hit.is_none()
    }

    pub fn roots_of(&self, object: usize) -> Option<&Vec<RootVec>> {
        self.objects
            .iter()
            .position(|&o| o == object)
            .map(|k| &self.positive_roots[k])
    }
}

/// Breadth-first closure over generator reflections from `start`.
///
/// Enumerates the object closure first, then all morphisms with any
/// reached source, in word order (length, then source, then generator
/// index), which makes the output deterministic.
pub fn generate(scheme: &CartanScheme, start: usize, caps: &GroupoidCaps) -> Enumeration {
    let theta = scheme.rank();

    // Object closure.
    let mut objects = vec![start];
    let mut seen: HashSet<usize> = objects.iter().copied().collect();
    let mut cap_hit = None;
    let mut head = 0;
    while head < objects.len() {
        let n = objects[head];
        head += 1;
        for i in 0..theta {
            let t = scheme.reflect_object(n, i);
            if seen.insert(t) {
                if objects.len() >= caps.max_objects {
                    cap_hit = Some(CapHit::Objects);
                } else {
                    objects.push(t);
                }
            }
        }
    }
    let obj_pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();

    // Morphism closure from every reached object.
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut known: HashSet<(usize, usize, Vec<RootVec>)> = HashSet::new();
    let mut queue: VecDeque<Morphism> = VecDeque::new();
    let mut roots: Vec<HashSet<RootVec>> = vec![HashSet::new(); objects.len()];

    for &src in &objects {
        let id = Morphism {
            source: src,
            target: src,
            matrix: identity_matrix(theta),
            word: Vec::new(),
        };
        if known.insert((src, src, id.matrix.clone())) {
            queue.push_back(id);
        }
    }

    'bfs: while let Some(w) = queue.pop_front() {
        // Record real roots w(alpha_i) with nonnegative coordinates.
        if let Some(&k) = obj_pos.get(&w.target) {
            for i in 0..theta {
                let col = w.column(i);
                if col.iter().all(|&x| x >= 0) {
                    roots[k].insert(col);
                    if roots[k].len() > caps.max_roots {
                        cap_hit.get_or_insert(CapHit::Roots);
                        morphisms.push(w);
                        break 'bfs;
                    }
                }
            }
        }
        morphisms.push(w.clone());
        if morphisms.len() >= caps.max_morphisms {
            cap_hit.get_or_insert(CapHit::Morphisms);
            break;
        }
        for i in 0..theta {
            let p = w.target;
            let t = scheme.reflect_object(p, i);
            let s_matrix = scheme.matrix(p).reflection(i);
            let matrix = mat_mul(&s_matrix, &w.matrix);
            if known.insert((w.source, t, matrix.clone())) {
                let mut word = w.word.clone();
                word.push((p, i));
                queue.push_back(Morphism {
                    source: w.source,
                    target: t,
                    matrix,
                    word,
                });
            }
        }
    }

    let positive_roots = roots
        .into_iter()
        .map(|set| {
            let mut v: Vec<RootVec> = set.into_iter().collect();
            v.sort();
            v
        })
        .collect();

    Enumeration {
        objects,
        morphisms,
        positive_roots,
        cap_hit,
    }
}

/// A violation of one of the root-system axioms, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum RootAxiomViolation {
    /// A root that is neither nonnegative nor nonpositive, a zero root, or
    /// a set not symmetric under negation.
    #[serde(rename = "R1")]
    R1 { object: String, witness: RootVec },
    /// The multiples of `alpha_i` in the root set differ from `{alpha_i, -alpha_i}`.
    #[serde(rename = "R2")]
    R2 {
        object: String,
        i: usize,
        witness: RootVec,
    },
    /// `s_i^N(roots(N)) != roots(r_i(N))`.
    #[serde(rename = "R3")]
    R3 {
        object: String,
        i: usize,
        witness: RootVec,
    },
    /// `(r_i r_j)^{m_{ij}}(N) != N`.
    #[serde(rename = "R4")]
    R4 {
        object: String,
        i: usize,
        j: usize,
        m: usize,
        reached: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemReport {
    pub violations: Vec<RootAxiomViolation>,
    /// `m_{i,j;N} = |roots(N) cap (N0 alpha_i + N0 alpha_j)|` per object
    /// and index pair `i < j` (1-based in the report).
    pub m_values: Vec<(String, usize, usize, usize)>,
}

impl RootSystemReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn m_value(&self, object: &str, i: usize, j: usize) -> Option<usize> {
        self.m_values
            .iter()
            .find(|(o, a, b, _)| o == object && *a == i && *b == j)
            .map(|(_, _, _, m)| *m)
    }
}

/// Verify axioms (R1)-(R4) for full root sets given per scheme object.
///
/// `full_roots[n]` must list the complete set `roots(object n)`, positive
/// and negative together.  Missing object data is a violation of (R3) at
/// the referencing object.
pub fn verify_root_system(scheme: &CartanScheme, full_roots: &[Vec<RootVec>]) -> RootSystemReport {
    let theta = scheme.rank();
    let mut violations = Vec::new();
    let mut m_values = Vec::new();

    let sets: Vec<HashSet<RootVec>> = full_roots
        .iter()
        .map(|v| v.iter().cloned().collect())
        .collect();

    for n in 0..scheme.object_count() {
        let id = scheme.object_id(n).to_string();
        let set = &sets[n];

        // (R1)
        for root in set {
            let nonneg = root.iter().all(|&x| x >= 0);
            let nonpos = root.iter().all(|&x| x <= 0);
            let zero = root.iter().all(|&x| x == 0);
            let neg: RootVec = root.iter().map(|x| -x).collect();
            if zero || (!nonneg && !nonpos) || !set.contains(&neg) {
                violations.push(RootAxiomViolation::R1 {
                    object: id.clone(),
                    witness: root.clone(),
                });
            }
        }

        // (R2)
        for i in 0..theta {
            let multiples: Vec<&RootVec> = set
                .iter()
                .filter(|r| r.iter().enumerate().all(|(k, &x)| k == i || x == 0))
                .collect();
            let ok = multiples.len() == 2
                && multiples.iter().all(|r| r[i] == 1 || r[i] == -1)
                && multiples.iter().any(|r| r[i] == 1);
            if !ok {
                let witness = multiples
                    .iter()
                    .find(|r| r[i].abs() != 1)
                    .map(|r| (*r).clone())
                    .unwrap_or_else(|| {
                        let mut v = vec![0; theta];
                        v[i] = 1;
                        v
                    });
                violations.push(RootAxiomViolation::R2 {
                    object: id.clone(),
                    i: i + 1,
                    witness,
                });
            }
        }

        // (R3)
        for i in 0..theta {
            let t = scheme.reflect_object(n, i);
            let s = scheme.matrix(n).reflection(i);
            let image: HashSet<RootVec> = set.iter().map(|r| mat_apply(&s, r)).collect();
            if image != sets[t] {
                // prefer a reflected root missing from the stored target
                // set, positive ones first, as the reported witness
                let mut diff: Vec<RootVec> =
                    image.symmetric_difference(&sets[t]).cloned().collect();
                diff.sort_by_key(|r| (!image.contains(r), !r.iter().all(|&x| x >= 0), r.clone()));
                let witness = diff.first().cloned().unwrap_or_default();
                violations.push(RootAxiomViolation::R3 {
                    object: id.clone(),
                    i: i + 1,
                    witness,
                });
            }
        }

        // (R4)
        for i in 0..theta {
            for j in (i + 1)..theta {
                let m = set
                    .iter()
                    .filter(|r| {
                        r.iter().all(|&x| x >= 0)
                            && r.iter()
                                .enumerate()
                                .all(|(k, &x)| k == i || k == j || x == 0)
                    })
                    .count();
                m_values.push((id.clone(), i + 1, j + 1, m));
                let mut cur = n;
                for _ in 0..m {
                    cur = scheme.reflect_object(scheme.reflect_object(cur, j), i);
                }
                if cur != n {
                    violations.push(RootAxiomViolation::R4 {
                        object: id.clone(),
                        i: i + 1,
                        j: j + 1,
                        m,
                        reached: scheme.object_id(cur).to_string(),
                    });
                }
            }
        }
    }

    RootSystemReport {
        violations,
        m_values,
    }
}

/// One factor of the rank-2 infiniteness certificate: the product
/// `eta_1(a') eta_2(a'')` attached to an object of the 2-reflection
/// closure, which must have the semigroup shape
/// `[[a, -b], [c, -d]]` with `0 < d < b < a` and `c > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupFactor {
    pub object: String,
    pub eta1_arg: i64,
    pub eta2_arg: i64,
    pub product: [[i64; 2]; 2],
    pub shape_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank2Certificate {
    /// 1-based index pair the certificate refers to.
    pub pair: (usize, usize),
    pub factors: Vec<SemigroupFactor>,
}

fn eta1(a: i64) -> [[i64; 2]; 2] {
    [[-1, a], [0, 1]]
}

fn eta2(a: i64) -> [[i64; 2]; 2] {
    [[1, 0], [a, -1]]
}

fn mul2(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn semigroup_shape(m: [[i64; 2]; 2]) -> bool {
    let (a, b, c, d) = (m[0][0], -m[0][1], m[1][0], -m[1][1]);
    0 < d && d < b && b < a && c > 0
}

/// Infiniteness witness for the restriction of the scheme to the index
/// pair `(i, j)` (0-based), starting from `start`.
///
/// If `a^N_ij <= -2` and `a^N_ji <= -2` for every object `N` of the
/// `{r_i, r_j}`-closure, the products `eta_1(-a_ij^{r_j(N)}) eta_2(-a_ji^N)`
/// all lie in a semigroup that cannot contain the identity, so the hom-set
/// of the Weyl groupoid is infinite; the certificate lists those products.
/// Returns `None` when some closure object has `a_ij` or `a_ji` in `{0, -1}`.
pub fn rank2_infinite_witness(
    scheme: &CartanScheme,
    start: usize,
    i: usize,
    j: usize,
) -> Option<Rank2Certificate> {
    assert!(i != j && i < scheme.rank() && j < scheme.rank());
    // closure under r_i, r_j only
    let mut objects = vec![start];
    let mut seen: HashSet<usize> = objects.iter().copied().collect();
    let mut head = 0;
    while head < objects.len() {
        let n = objects[head];
        head += 1;
        for idx in [i, j] {
            let t = scheme.reflect_object(n, idx);
            if seen.insert(t) {
                objects.push(t);
            }
        }
    }
    for &n in &objects {
        if scheme.matrix(n).entry(i, j) > -2 || scheme.matrix(n).entry(j, i) > -2 {
            return None;
        }
    }
    let factors = objects
        .iter()
        .map(|&n| {
            let rj = scheme.reflect_object(n, j);
            let a1 = -scheme.matrix(rj).entry(i, j);
            let a2 = -scheme.matrix(n).entry(j, i);
            let product = mul2(eta1(a1), eta2(a2));
            SemigroupFactor {
                object: scheme.object_id(n).to_string(),
                eta1_arg: a1,
                eta2_arg: a2,
                product,
                shape_ok: semigroup_shape(product),
            }
        })
        .collect();
    Some(Rank2Certificate {
        pair: (i + 1, j + 1),
        factors,
    })
}

/// Scan all index pairs for a rank-2 infiniteness witness whose factors all
/// satisfy the semigroup shape.
pub fn rank2_witness_any_pair(scheme: &CartanScheme, start: usize) -> Option<Rank2Certificate> {
    let theta = scheme.rank();
    for i in 0..theta {
        for j in (i + 1)..theta {
            if let Some(cert) = rank2_infinite_witness(scheme, start, i, j) {
                if cert.factors.iter().all(|f| f.shape_ok) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Finite,
    InfiniteWitness,
    Inconclusive,
}

/// A morphism witnessing finiteness per the longest-element criterion:
/// `w(positive roots of source) <= 0` coordinatewise.
#[derive(Debug, Clone, Serialize)]
pub struct LongestElement {
    pub source: String,
    pub target: String,
    pub word_len: usize,
    pub word: Vec<(String, usize)>,
}

#[derive(Debug, Clone)]
pub struct FinitenessReport {
    pub verdict: Verdict,
    pub object_count: usize,
    pub morphism_count: usize,
    /// (object id, |positive real roots|) in visit order.
    pub root_counts: Vec<(String, usize)>,
    pub longest_element: Option<LongestElement>,
    pub witness: Option<Rank2Certificate>,
    pub cap_hit: Option<CapHit>,
    pub enumeration: Enumeration,
}

/// Closure-based finiteness decision with certificates.
///
/// The verdict is `Finite` exactly when the morphism closure terminates
/// under the caps; a rank-2 semigroup witness yields `InfiniteWitness`;
/// otherwise the result is `Inconclusive` (a cap note is attached), never
/// a wrong claim.
pub fn finiteness_report(
    scheme: &CartanScheme,
    start: usize,
    caps: &GroupoidCaps,
) -> FinitenessReport {
    let witness = rank2_witness_any_pair(scheme, start);
    let enumeration = generate(scheme, start, caps);
    let verdict = if witness.is_some() {
        Verdict::InfiniteWitness
    } else if enumeration.complete() {
        Verdict::Finite
    } else {
        Verdict::Inconclusive
    };
    let root_counts = enumeration
        .objects
        .iter()
        .zip(&enumeration.positive_roots)
        .map(|(&o, r)| (scheme.object_id(o).to_string(), r.len()))
        .collect();

    // Longest-element search per the positive-to-negative criterion; the
    // search is bounded by word length <= |positive roots of the source|
    // and its failure does not downgrade a closure-based verdict.
    let mut longest_element = None;
    if verdict == Verdict::Finite {
        for w in &enumeration.morphisms {
            let Some(pos) = enumeration.roots_of(w.source) else {
                continue;
            };
            if w.word.len() > pos.len() {
                continue;
            }
            if pos.iter().all(|r| w.apply(r).iter().all(|&x| x <= 0)) {
                let better = match &longest_element {
                    None => true,
                    Some(LongestElement { word_len, .. }) => w.word.len() < *word_len,
                };
                if better {
                    longest_element = Some(LongestElement {
                        source: scheme.object_id(w.source).to_string(),
                        target: scheme.object_id(w.target).to_string(),
                        word_len: w.word.len(),
                        word: w
                            .word
                            .iter()
                            .map(|(n, i)| (scheme.object_id(*n).to_string(), i + 1))
                            .collect(),
                    });
                }
            }
        }
    }

    FinitenessReport {
        verdict,
        object_count: enumeration.objects.len(),
        morphism_count: enumeration.morphisms.len(),
        root_counts,
        longest_element,
        witness,
        cap_hit: enumeration.cap_hit,
        enumeration,
    }
}

/// DOT export of the object graph: objects as nodes labeled with their
/// Cartan matrix, one undirected edge per generator reflection (the two
/// directions of an involution collapse to a single edge).
pub fn export_dot(scheme: &CartanScheme, warning: Option<&str>) -> String {
    let mut out = String::from("graph cartan_scheme {\n");
    if let Some(w) = warning {
        out.push_str(&format!("  // {w}\n"));
    }
    out.push_str("  node [shape=box];\n");
    for n in 0..scheme.object_count() {
        let m = scheme.matrix(n);
        let rows: Vec<String> = (0..m.rank())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\\n[{}]\"];\n",
            scheme.object_id(n),
            scheme.object_id(n),
            rows.join("; ")
        ));
    }
    for n in 0..scheme.object_count() {
        for i in 0..scheme.rank() {
            let t = scheme.reflect_object(n, i);
            if t >= n {
                out.push_str(&format!(
                    "  \"{}\" -- \"{}\" [label=\"s{}\"];\n",
                    scheme.object_id(n),
                    scheme.object_id(t),
                    i + 1
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;

    fn standard(m: Vec<Vec<i64>>) -> CartanScheme {
        CartanScheme::standard("o", CartanMatrix::new(m).unwrap())
    }

    fn full_roots(e: &Enumeration) -> Vec<Vec<RootVec>> {
        e.positive_roots
            .iter()
            .map(|pos| {
                let mut all = pos.clone();
                all.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect()));
                all
            })
            .collect()
    }

    #[test]
    fn a2_roots_and_morphisms() {
        let s = standard(vec![vec![2, -1], vec![-1, 2]]);
        let e = generate(&s, 0, &GroupoidCaps::default());
        assert!(e.complete());
        assert_eq!(e.morphisms.len(), 6);
        assert_eq!(
            e.positive_roots[0],
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn b2_and_g2_root_counts() {
        let b2 = standard(vec![vec![2, -2], vec![-1, 2]]);
        let e = generate(&b2, 0, &GroupoidCaps::default());
        assert_eq!(e.positive_roots[0].len(), 4);
        assert_eq!(e.morphisms.len(), 8);

        let g2 = standard(vec![vec![2, -1], vec![-3, 2]]);
        let e = generate(&g2, 0, &GroupoidCaps::default());
        assert_eq!(e.positive_roots[0].len(), 6);
        assert_eq!(e.morphisms.len(), 12);
    }

    #[test]
    fn a1_a1_roots() {
        let s = standard(vec![vec![2, 0], vec![0, 2]]);
        let e = generate(&s, 0, &GroupoidCaps::default());
        assert_eq!(e.positive_roots[0], vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(e.morphisms.len(), 4);
    }

    #[test]
    fn generate_is_deterministic() {
        let s = standard(vec![vec![2, -1], vec![-3, 2]]);
        let e1 = generate(&s, 0, &GroupoidCaps::default());
        let e2 = generate(&s, 0, &GroupoidCaps::default());
        assert_eq!(e1.positive_roots, e2.positive_roots);
        let w1: Vec<_> = e1.morphisms.iter().map(|m| m.word.clone()).collect();
        let w2: Vec<_> = e2.morphisms.iter().map(|m| m.word.clone()).collect();
        assert_eq!(w1, w2);
    }

    #[test]
    fn affine_matrix_is_inconclusive_without_witness_machinery() {
        let s = standard(vec![vec![2, -2], vec![-2, 2]]);
        let caps = GroupoidCaps {
            max_objects: 16,
            max_roots: 64,
            max_morphisms: 4096,
        };
        let e = generate(&s, 0, &caps);
        assert!(!e.complete());
    }

    #[test]
    fn root_axioms_pass_on_a2() {
        let s = standard(vec![vec![2, -1], vec![-1, 2]]);
        let e = generate(&s, 0, &GroupoidCaps::default());
        let report = verify_root_system(&s, &full_roots(&e));
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.m_value("o", 1, 2), Some(3));
    }

    #[test]
    fn missing_root_fails_r3() {
        let s = standard(vec![vec![2, -1], vec![-1, 2]]);
        // drop alpha_1 + alpha_2
        let roots = vec![vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]];
        let report = verify_root_system(&s, &roots);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, RootAxiomViolation::R3 { i: 1, witness, .. }
                if *witness == vec![1, 1])));
    }

    #[test]
    fn doubled_root_fails_r2() {
        let s = standard(vec![vec![2, -1], vec![-1, 2]]);
        let mut roots = vec![vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![-1, 0],
            vec![0, -1],
            vec![-1, -1],
        ]];
        roots[0].push(vec![2, 0]);
        roots[0].push(vec![-2, 0]);
        let report = verify_root_system(&s, &roots);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, RootAxiomViolation::R2 { i: 1, .. })));
    }

    #[test]
    fn finiteness_verdicts() {
        let a2 = standard(vec![vec![2, -1], vec![-1, 2]]);
        let r = finiteness_report(&a2, 0, &GroupoidCaps::default());
        assert_eq!(r.verdict, Verdict::Finite);
        assert_eq!(r.root_counts[0].1, 3);
        let le = r.longest_element.unwrap();
        assert_eq!(le.word_len, 3);

        let decoupled = standard(vec![vec![2, 0], vec![0, 2]]);
        let r = finiteness_report(&decoupled, 0, &GroupoidCaps::default());
        assert_eq!(r.verdict, Verdict::Finite);
        assert_eq!(r.root_counts[0].1, 2);

        let caps = GroupoidCaps {
            max_objects: 64,
            max_roots: 256,
            max_morphisms: 10_000,
        };
        let inf = standard(vec![vec![2, -2], vec![-2, 2]]);
        let r = finiteness_report(&inf, 0, &caps);
        assert_eq!(r.verdict, Verdict::InfiniteWitness);
        let cert = r.witness.unwrap();
        assert_eq!(cert.factors[0].product, [[3, -2], [2, -1]]);
        assert!(cert.factors.iter().all(|f| f.shape_ok));
    }

    #[test]
    fn witness_requires_both_entries_below_minus_one() {
        let g2 = standard(vec![vec![2, -1], vec![-3, 2]]);
        assert!(rank2_infinite_witness(&g2, 0, 0, 1).is_none());
        let decoupled = standard(vec![vec![2, 0], vec![0, 2]]);
        assert!(rank2_infinite_witness(&decoupled, 0, 0, 1).is_none());
        let ok = standard(vec![vec![2, -2], vec![-3, 2]]);
        let cert = rank2_infinite_witness(&ok, 0, 0, 1).unwrap();
        // eta_1(2) eta_2(3) = [[5, -2], [3, -1]]
        assert_eq!(cert.factors[0].product, [[5, -2], [3, -1]]);
        assert!(cert.factors[0].shape_ok);
    }

    #[test]
    fn affine_rank_three_is_inconclusive_without_witness() {
        // all off-diagonal entries -1: no rank-2 witness can fire, and the
        // closure never terminates, so the verdict stays inconclusive
        let s = standard(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let caps = GroupoidCaps {
            max_objects: 16,
            max_roots: 128,
            max_morphisms: 4096,
        };
        let r = finiteness_report(&s, 0, &caps);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.witness.is_none());
        assert!(r.cap_hit.is_some());
    }

    #[test]
    fn morphism_matrices_biject_roots() {
        // consequence of (R3): each morphism maps real roots of the source
        // onto real roots of the target
        let s = standard(vec![vec![2, -2], vec![-1, 2]]);
        let e = generate(&s, 0, &GroupoidCaps::default());
        let all = full_roots(&e);
        let set: std::collections::HashSet<_> = all[0].iter().cloned().collect();
        for w in &e.morphisms {
            let image: std::collections::HashSet<_> = all[0].iter().map(|r| w.apply(r)).collect();
            assert_eq!(image, set);
        }
    }

    #[test]
    fn hom_sets_have_equal_cardinality() {
        // two-object A2 scheme where r_1 swaps the objects
        let a2 = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let s = CartanScheme::new(
            vec!["p".into(), "q".into()],
            vec![a2.clone(), a2],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let e = generate(&s, 0, &GroupoidCaps::default());
        assert!(e.complete());
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for w in &e.morphisms {
            *counts.entry((w.source, w.target)).or_default() += 1;
        }
        let sizes: HashSet<usize> = counts.values().copied().collect();
        assert_eq!(sizes.len(), 1);
    }

    #[test]
    fn inverse_word_composes_to_identity() {
        let s = standard(vec![vec![2, -1], vec![-3, 2]]);
        let e = generate(&s, 0, &GroupoidCaps::default());
        for w in &e.morphisms {
            // the inverse word applies the same generators in reverse
            // order; the scheme is standard, so matrices are object-free
            let mut m = identity_matrix(2);
            for (obj, i) in w.word.iter() {
                m = mat_mul(&m, &s.matrix(*obj).reflection(*i));
            }
            let prod = mat_mul(&m, &w.matrix);
            assert_eq!(prod, identity_matrix(2));
        }
    }
}
