//! Braided adjoint powers, Cartan-matrix inference, tuple reflections,
//! scheme construction and the group-theoretic finiteness screens.
//!
//! The central objects are tuples of irreducible Yetter-Drinfeld modules
//! over one finite group.  The off-diagonal Cartan entries of a tuple are
//! read off from the vanishing height of braided adjoint powers,
//! `-a_ij = sup { h : (ad M_i)^h (M_j) != 0 }`, where the adjoint power is
//! computed as the image of the operator `(S_h (x) id) T_h` on
//! `M_i^(x)h (x) M_j`.  Reflections dualize the i-th entry and replace the
//! others by their top nonvanishing adjoint power; iterating reflections
//! and identifying isomorphic tuples yields a Cartan scheme whose Weyl
//! groupoid carries the real roots.

pub mod tensor;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{CartanMatrix, CartanScheme};
use crate::exactfield::{Cyclotomic, ExactMatrix, LinSolver};
use crate::finitegroup::{
    builtin_group, classes_commute_witness, stst_condition, FiniteGroup, StstOutcome,
};
use crate::weylgroupoid::{
    finiteness_report, verify_root_system, FinitenessReport, GroupoidCaps, RootSystemReport,
    RootVec, Verdict,
};
use crate::ydmodule::{induce, Fiber, GradedCharacter, YdError, YdModule};

use tensor::{compositions, SumModule, TensorSpace};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Yd(#[from] YdError),
    #[error(transparent)]
    Group(#[from] crate::finitegroup::GroupError),
    #[error("tensor space of dimension {needed} exceeds the guard of {guard}")]
    GuardExceeded { needed: usize, guard: usize },
    #[error("tuple entries live over different groups")]
    MixedGroups,
    #[error("tuple has no entries")]
    EmptyTuple,
    #[error("tuple entry {0} is not irreducible")]
    ReducibleEntry(usize),
    #[error("tuple is not {i}-finite: (ad M_{i})^h(M_{j}) stayed nonzero up to h = {h_cap}")]
    NotIFinite { i: usize, j: usize, h_cap: usize },
    #[error("reflection r_{i} produced a reducible entry at position {j}{detail}")]
    ReducibleReflection { i: usize, j: usize, detail: String },
    #[error("malformed diagonal braiding: {0}")]
    BadDiagonal(String),
    #[error("index {0} out of range for a tuple of length {1}")]
    IndexOutOfRange(usize, usize),
}

/// Engine-level caps; every shipped computation fits well inside the
/// defaults, and every cap is adjustable from the command line.
#[derive(Debug, Clone, Copy)]
pub struct EngineCaps {
    /// Adjoint powers are probed up to this height during inference.
    pub h_cap: usize,
    /// Total-degree bound for graded dimension tables.
    pub degree_bound: usize,
    /// Object cap for scheme construction.
    pub max_objects: usize,
    /// Dimension guard for tensor spaces.
    pub tensor_guard: usize,
    pub groupoid: GroupoidCaps,
}

impl Default for EngineCaps {
    fn default() -> Self {
        EngineCaps {
            h_cap: 8,
            degree_bound: 6,
            max_objects: 256,
            tensor_guard: 20_000,
            groupoid: GroupoidCaps::default(),
        }
    }
}

/// A tuple of irreducible Yetter-Drinfeld modules over a common group.
#[derive(Clone)]
pub struct YdTuple {
    group: Arc<FiniteGroup>,
    modules: Vec<Arc<YdModule>>,
}

impl YdTuple {
    pub fn new(modules: Vec<Arc<YdModule>>) -> Result<Self, EngineError> {
        let group = modules
            .first()
            .map(|m| Arc::clone(m.group()))
            .ok_or(EngineError::EmptyTuple)?;
        for (k, m) in modules.iter().enumerate() {
            if m.group().elements() != group.elements() {
                return Err(EngineError::MixedGroups);
            }
            if !m.is_irreducible() {
                return Err(EngineError::ReducibleEntry(k));
            }
        }
        Ok(YdTuple { group, modules })
    }

    pub fn theta(&self) -> usize {
        self.modules.len()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self, i: usize) -> &Arc<YdModule> {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[Arc<YdModule>] {
        &self.modules
    }

    /// Isomorphism-class key: the graded character of every entry.
    pub fn iso_key(&self) -> Vec<GradedCharacter> {
        self.modules
            .iter()
            .map(|m| m.graded_character().expect("entries are irreducible"))
            .collect()
    }

    pub fn is_isomorphic(&self, other: &YdTuple) -> bool {
        self.theta() == other.theta() && self.iso_key() == other.iso_key()
    }
}

/// Realize a diagonal braiding `c(x_i (x) x_j) = q_ij x_j (x) x_i` with
/// `q_ij = zeta_order^powers[i][j]` as a tuple of one-dimensional modules
/// over a product of cyclic groups of the given order.
pub fn diagonal_tuple(order: u64, powers: &[Vec<i64>]) -> Result<YdTuple, EngineError> {
    let theta = powers.len();
    if theta == 0 {
        return Err(EngineError::EmptyTuple);
    }
    if order == 0 {
        return Err(EngineError::BadDiagonal("order must be positive".into()));
    }
    for row in powers {
        if row.len() != theta {
            return Err(EngineError::BadDiagonal(format!(
                "q must be a {theta} x {theta} matrix"
            )));
        }
    }
    let n = order as usize;
    let degree = n * theta;
    // generator i cycles the i-th block of n points
    let mut generators = Vec::with_capacity(theta);
    for i in 0..theta {
        let mut images: Vec<usize> = (0..degree).collect();
        for p in 0..n {
            images[i * n + p] = i * n + (p + 1) % n;
        }
        generators.push(crate::finitegroup::Perm::new(images).expect("cycle"));
    }
    let group = Arc::new(FiniteGroup::from_generators(degree, generators.clone())?);
    let mut modules = Vec::with_capacity(theta);
    for j in 0..theta {
        let values = (0..theta)
            .map(|i| {
                Ok((
                    generators[i].clone(),
                    Cyclotomic::root_of_unity(order, powers[i][j])
                        .map_err(|e| EngineError::BadDiagonal(e.to_string()))?,
                ))
            })
            .collect::<Result<Vec<_>, EngineError>>()?;
        let fiber = Fiber::Character(values);
        let module =
            induce(Arc::clone(&group), &generators[j], &fiber)?.with_label(format!("x{}", j + 1));
        modules.push(Arc::new(module));
    }
    YdTuple::new(modules)
}

/// Apply a group element to a vector of a tensor block, expanding the
/// product of per-slot actions; the result is keyed by ambient tuples.
fn apply_element(
    space: &TensorSpace,
    elt: usize,
    vector: &[(usize, Cyclotomic)],
    cache: &mut HashMap<(usize, usize), ExactMatrix>,
) -> HashMap<Vec<usize>, Cyclotomic> {
    let mut out: HashMap<Vec<usize>, Cyclotomic> = HashMap::new();
    for (row, coeff) in vector {
        let tuple = &space.basis[*row];
        let mut combos: Vec<(Vec<usize>, Cyclotomic)> = vec![(Vec::new(), coeff.clone())];
        for (s, &b) in tuple.iter().enumerate() {
            let key = (Arc::as_ptr(&space.slots[s]) as usize, elt);
            let act = cache
                .entry(key)
                .or_insert_with(|| space.slots[s].action_of(elt))
                .clone();
            let mut next = Vec::new();
            for (prefix, c) in &combos {
                for (r, v) in act.col(b) {
                    let mut p2 = prefix.clone();
                    p2.push(*r);
                    next.push((p2, c.mul(v)));
                }
            }
            combos = next;
        }
        for (t, c) in combos {
            let entry = out.entry(t).or_insert_with(|| Cyclotomic::zero(1));
            *entry = entry.add(&c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn dense_to_sparse(v: &[Cyclotomic]) -> Vec<(usize, Cyclotomic)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// The braided adjoint power `(ad_c V)^n (W)` as the image of
/// `(S_n (x) id) T_n` inside `V^(x)n (x) W`, equipped with the inherited
/// grading and action.  Returns the zero module when the operator
/// vanishes; `n = 0` returns `W` itself.
pub fn ad_power(
    v: &Arc<YdModule>,
    w: &Arc<YdModule>,
    n: usize,
    guard: usize,
) -> Result<YdModule, EngineError> {
    if n == 0 {
        return Ok((**w).clone());
    }
    let group = Arc::clone(v.group());
    if v.group().elements() != w.group().elements() {
        return Err(EngineError::MixedGroups);
    }
    if v.is_zero() || w.is_zero() {
        return Ok(YdModule::zero(group));
    }
    let mut slots = vec![Arc::clone(v); n];
    slots.push(Arc::clone(w));
    let space = TensorSpace::full(slots, guard)?;

    struct Block {
        degree: usize,
        space: TensorSpace,
        rank: usize,
        solver: LinSolver,
        offset: usize,
    }

    let mut blocks: Vec<Block> = Vec::new();
    let mut offset = 0;
    for (degree, block_space) in space.degree_blocks() {
        let op = block_space.ad_operator(n);
        if op.is_zero_matrix() {
            continue;
        }
        let rki = op.rank_kernel_image();
        if rki.rank == 0 {
            continue;
        }
        let image = ExactMatrix::from_cols(
            block_space.dim(),
            rki.image.iter().map(|col| dense_to_sparse(col)).collect(),
        );
        let solver = LinSolver::new(image);
        blocks.push(Block {
            degree,
            space: block_space,
            rank: rki.rank,
            solver,
            offset,
        });
        offset += rki.rank;
    }
    let total = offset;
    if total == 0 {
        return Ok(YdModule::zero(group));
    }

    let mut degrees = Vec::with_capacity(total);
    for b in &blocks {
        degrees.extend(std::iter::repeat(b.degree).take(b.rank));
    }

    let mut cache: HashMap<(usize, usize), ExactMatrix> = HashMap::new();
    let mut actions = Vec::new();
    for gen in group.generators() {
        let h = group.index_of(gen).expect("generator in closure");
        let h_inv = group.inverse_index(h);
        let mut cols: Vec<Vec<(usize, Cyclotomic)>> = vec![Vec::new(); total];
        for b in &blocks {
            let conj = group.compose_indices(group.compose_indices(h, b.degree), h_inv);
            let target = blocks
                .iter()
                .find(|t| t.degree == conj)
                .expect("the image is stable under the group action");
            for j in 0..b.rank {
                let col = b.solver.basis().col(j).to_vec();
                let moved = apply_element(&b.space, h, &col, &mut cache);
                let sparse: Vec<(usize, Cyclotomic)> = moved
                    .into_iter()
                    .map(|(tuple, coeff)| {
                        (
                            target
                                .space
                                .position(&tuple)
                                .expect("action permutes degree blocks"),
                            coeff,
                        )
                    })
                    .collect();
                let coords = target
                    .solver
                    .solve(&sparse)
                    .expect("the image is stable under the group action");
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        cols[b.offset + j].push((target.offset + k, c));
                    }
                }
            }
        }
        actions.push(ExactMatrix::from_cols(total, cols));
    }

    let module = YdModule::new(
        group,
        degrees,
        actions,
        format!("(ad {})^{}({})", v.label(), n, w.label()),
    );
    debug_assert!(module.validate().is_ok());
    Ok(module)
}

/// Whether `(ad_c V)^n (W) = 0`, decided on the full tensor space (degree
/// blocks are only used internally).
pub fn ad_power_is_zero(
    v: &Arc<YdModule>,
    w: &Arc<YdModule>,
    n: usize,
    guard: usize,
) -> Result<bool, EngineError> {
    if n == 0 {
        return Ok(w.is_zero());
    }
    let mut slots = vec![Arc::clone(v); n];
    slots.push(Arc::clone(w));
    let space = TensorSpace::full(slots, guard)?;
    for (_, block) in space.degree_blocks() {
        if !block.ad_operator(n).is_zero_matrix() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inferred Cartan data of a tuple.
#[derive(Debug, Clone, Serialize)]
pub struct CartanInference {
    /// `a_ij`; rows for a not-i-finite pair hold `-(h_cap)` as placeholder
    /// and the pair is listed in `not_i_finite`.
    pub entries: Vec<Vec<i64>>,
    /// Pairs `(i, j)`, 0-based, with no vanishing height `<= h_cap`.
    pub not_i_finite: Vec<(usize, usize)>,
    pub h_cap: usize,
}

impl CartanInference {
    pub fn is_finite(&self) -> bool {
        self.not_i_finite.is_empty()
    }

    pub fn matrix(&self) -> Result<CartanMatrix, crate::cartan::CartanError> {
        CartanMatrix::new(self.entries.clone())
    }
}

fn cartan_entry(
    tuple: &YdTuple,
    i: usize,
    j: usize,
    caps: &EngineCaps,
) -> Result<Option<i64>, EngineError> {
    for h in 1..=caps.h_cap {
        if ad_power_is_zero(tuple.module(i), tuple.module(j), h, caps.tensor_guard)? {
            return Ok(Some(-((h - 1) as i64)));
        }
    }
    Ok(None)
}

/// Cartan matrix of a tuple from the vanishing heights of braided adjoint
/// powers; pairs that fail to vanish up to the cap are flagged, never
/// reported as a definitive supremum.
pub fn infer_cartan(tuple: &YdTuple, caps: &EngineCaps) -> Result<CartanInference, EngineError> {
    let theta = tuple.theta();
    let mut entries = vec![vec![0i64; theta]; theta];
    let mut not_i_finite = Vec::new();
    for i in 0..theta {
        entries[i][i] = 2;
        for j in 0..theta {
            if i == j {
                continue;
            }
            match cartan_entry(tuple, i, j, caps)? {
                Some(a) => entries[i][j] = a,
                None => {
                    entries[i][j] = -(caps.h_cap as i64);
                    not_i_finite.push((i, j));
                }
            }
        }
    }
    Ok(CartanInference {
        entries,
        not_i_finite,
        h_cap: caps.h_cap,
    })
}

fn reflect_with_row(
    tuple: &YdTuple,
    i: usize,
    row: &[i64],
    caps: &EngineCaps,
) -> Result<YdTuple, EngineError> {
    let theta = tuple.theta();
    let mut modules = Vec::with_capacity(theta);
    for j in 0..theta {
        let new = if j == i {
            tuple.module(i).dual()
        } else {
            ad_power(
                tuple.module(i),
                tuple.module(j),
                (-row[j]) as usize,
                caps.tensor_guard,
            )?
        };
        let report = new.irreducibility();
        if !report.irreducible {
            let detail = format!(
                ": {} support part(s), fiber inner products {:?}",
                report.parts.len(),
                report
                    .parts
                    .iter()
                    .map(|p| p.inner_product.to_string())
                    .collect::<Vec<_>>()
            );
            return Err(EngineError::ReducibleReflection { i, j, detail });
        }
        modules.push(Arc::new(new));
    }
    YdTuple::new(modules)
}

/// The reflected tuple `r_i(M)`: entry `i` is dualized and entry `j` is
/// replaced by `(ad M_i)^(-a_ij)(M_j)`.  Requires `i`-finiteness; a
/// reflected entry that fails irreducibility is reported as a structured
/// finding, which is legitimate outside the guaranteed hypotheses.
pub fn reflect_tuple(tuple: &YdTuple, i: usize, caps: &EngineCaps) -> Result<YdTuple, EngineError> {
    let theta = tuple.theta();
    if i >= theta {
        return Err(EngineError::IndexOutOfRange(i, theta));
    }
    let mut row = vec![0i64; theta];
    row[i] = 2;
    for j in 0..theta {
        if j == i {
            continue;
        }
        match cartan_entry(tuple, i, j, caps)? {
            Some(a) => row[j] = a,
            None => {
                return Err(EngineError::NotIFinite {
                    i,
                    j,
                    h_cap: caps.h_cap,
                })
            }
        }
    }
    reflect_with_row(tuple, i, &row, caps)
}

/// Structured findings produced while building a scheme.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BuildFinding {
    NotIFinite {
        object: String,
        path: Vec<usize>,
        i: usize,
        j: usize,
        h_cap: usize,
    },
    ReducibleReflection {
        object: String,
        path: Vec<usize>,
        i: usize,
        j: usize,
        detail: String,
    },
    ObjectCapExceeded {
        max_objects: usize,
    },
    /// Two morphism routes attached different module classes to one root.
    RootLabelConflict {
        object: String,
        root: RootVec,
    },
}

/// A positive real root with its attached module class.
#[derive(Debug, Clone)]
pub struct LabeledRoot {
    pub degree: RootVec,
    pub label: GradedCharacter,
    /// Always 1 for real roots.
    pub multiplicity: usize,
}

/// Result of the reflection closure of a tuple.
pub struct SchemeBuild {
    pub scheme: CartanScheme,
    pub tuples: Vec<YdTuple>,
    /// Reflection word (0-based indices) reaching each object from the root.
    pub object_paths: Vec<Vec<usize>>,
    pub inferences: Vec<CartanInference>,
    pub finiteness: Option<FinitenessReport>,
    /// Positive real roots with class labels, per scheme object.
    pub labeled_roots: Vec<Vec<LabeledRoot>>,
    pub axioms: Option<RootSystemReport>,
    pub findings: Vec<BuildFinding>,
    /// False when a finding interrupted the closure.
    pub complete: bool,
}

/// Breadth-first closure of a tuple under reflections, identifying objects
/// up to isomorphism of tuples, followed by Weyl-groupoid enumeration,
/// root labeling and (for finite closures) the root-system axiom check.
pub fn build_scheme(start: &YdTuple, caps: &EngineCaps) -> Result<SchemeBuild, EngineError> {
    let theta = start.theta();
    let mut tuples: Vec<YdTuple> = vec![start.clone()];
    let mut keys: Vec<Vec<GradedCharacter>> = vec![start.iso_key()];
    let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
    let mut inferences: Vec<CartanInference> = Vec::new();
    let mut reflections: Vec<Vec<usize>> = Vec::new();
    let mut findings: Vec<BuildFinding> = Vec::new();
    let mut complete = true;

    let mut head = 0;
    'bfs: while head < tuples.len() {
        let inference = infer_cartan(&tuples[head], caps)?;
        if let Some(&(i, j)) = inference.not_i_finite.first() {
            findings.push(BuildFinding::NotIFinite {
                object: format!("o{head}"),
                path: paths[head].clone(),
                i: i + 1,
                j: j + 1,
                h_cap: caps.h_cap,
            });
            inferences.push(inference);
            complete = false;
            break 'bfs;
        }
        let mut refl_row = vec![0usize; theta];
        for i in 0..theta {
            let reflected = match reflect_with_row(&tuples[head], i, &inference.entries[i], caps) {
                Ok(t) => t,
                Err(EngineError::ReducibleReflection { i, j, detail }) => {
                    findings.push(BuildFinding::ReducibleReflection {
                        object: format!("o{head}"),
                        path: paths[head].clone(),
                        i: i + 1,
                        j: j + 1,
                        detail,
                    });
                    inferences.push(inference);
                    complete = false;
                    break 'bfs;
                }
                Err(e) => return Err(e),
            };
            let key = reflected.iso_key();
            let existing = keys.iter().position(|k| *k == key);
            let target = match existing {
                Some(t) => t,
                None => {
                    if tuples.len() >= caps.max_objects {
                        findings.push(BuildFinding::ObjectCapExceeded {
                            max_objects: caps.max_objects,
                        });
                        inferences.push(inference);
                        complete = false;
                        break 'bfs;
                    }
                    let mut path = paths[head].clone();
                    path.push(i);
                    tuples.push(reflected);
                    keys.push(key);
                    paths.push(path);
                    tuples.len() - 1
                }
            };
            refl_row[i] = target;
        }
        inferences.push(inference);
        reflections.push(refl_row);
        head += 1;
    }

    // Partial builds keep the visited prefix; reflections of unprocessed
    // objects point to themselves so the table stays total.
    while reflections.len() < tuples.len() {
        let n = reflections.len();
        reflections.push(vec![n; theta]);
    }
    while inferences.len() < tuples.len() {
        let inference = infer_cartan(&tuples[inferences.len()], caps)?;
        inferences.push(inference);
    }

    let ids: Vec<String> = (0..tuples.len()).map(|n| format!("o{n}")).collect();
    let matrices = inferences
        .iter()
        .map(|inf| CartanMatrix::new(inf.entries.clone()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| EngineError::BadDiagonal(format!("inferred matrix invalid: {e}")))?;
    let scheme = CartanScheme::new(ids, matrices, reflections)
        .expect("object table is closed by construction");

    if !complete {
        return Ok(SchemeBuild {
            scheme,
            tuples,
            object_paths: paths,
            inferences,
            finiteness: None,
            labeled_roots: Vec::new(),
            axioms: None,
            findings,
            complete,
        });
    }

    let finiteness = finiteness_report(&scheme, 0, &caps.groupoid);

    // Attach to each positive real root w(alpha_i), w: N -> P, the
    // iso-class of the i-th entry of the source tuple; different routes to
    // one root must agree.
    let mut labels: Vec<BTreeMap<RootVec, GradedCharacter>> = vec![BTreeMap::new(); tuples.len()];
    for w in &finiteness.enumeration.morphisms {
        for i in 0..theta {
            let col = w.column(i);
            if col.iter().all(|&x| x >= 0) {
                let label = keys[w.source][i].clone();
                match labels[w.target].get(&col) {
                    None => {
                        labels[w.target].insert(col, label);
                    }
                    Some(existing) if *existing == label => {}
                    Some(_) => {
                        findings.push(BuildFinding::RootLabelConflict {
                            object: scheme.object_id(w.target).to_string(),
                            root: col,
                        });
                    }
                }
            }
        }
    }
    let labeled_roots: Vec<Vec<LabeledRoot>> = labels
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|(degree, label)| LabeledRoot {
                    degree,
                    label,
                    multiplicity: 1,
                })
                .collect()
        })
        .collect();

    let axioms = if finiteness.verdict == Verdict::Finite {
        let full: Vec<Vec<RootVec>> = finiteness
            .enumeration
            .positive_roots
            .iter()
            .map(|pos| {
                let mut all = pos.clone();
                all.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
                all
            })
            .collect();
        Some(verify_root_system(&scheme, &full))
    } else {
        None
    };

    Ok(SchemeBuild {
        scheme,
        tuples,
        object_paths: paths,
        inferences,
        finiteness: Some(finiteness),
        labeled_roots,
        axioms,
        findings,
        complete,
    })
}

/// Graded dimensions of the Nichols algebra of `V(M)` up to the given
/// total degree: for each multidegree `gamma`, the rank of the quantum
/// symmetrizer on the `gamma` block of the tensor power.
pub fn graded_dims(
    tuple: &YdTuple,
    bound: usize,
    guard: usize,
) -> Result<BTreeMap<Vec<usize>, usize>, EngineError> {
    let theta = tuple.theta();
    let sum = SumModule::direct_sum(tuple.modules())?;
    let mut out = BTreeMap::new();
    out.insert(vec![0; theta], 1);
    for n in 1..=bound {
        for gamma in compositions(n, theta) {
            let block = sum.multidegree_block(n, &gamma, guard)?;
            let mut rank = 0;
            for (_, sub) in block.degree_blocks() {
                let s = sub.symmetrizer(n);
                if !s.is_zero_matrix() {
                    rank += s.rank_kernel_image().rank;
                }
            }
            out.insert(gamma, rank);
        }
    }
    Ok(out)
}

/// One mismatch of the reflected graded-dimension comparison.
#[derive(Debug, Clone, Serialize)]
pub struct DimMismatch {
    pub degree: Vec<i64>,
    pub got: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimConsistencyReport {
    /// Reflected index, 0-based.
    pub index: usize,
    pub degree_bound: usize,
    /// Degrees compared successfully.
    pub checked: usize,
    pub mismatches: Vec<DimMismatch>,
    /// Degrees excluded by the comparison window.
    pub skipped: Vec<Vec<usize>>,
}

impl DimConsistencyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Divide a graded dimension table by the dimension series of one factor
/// along the `alpha_i` axis (power-series division; the series has
/// constant term 1).
fn deconvolve(
    dims: &BTreeMap<Vec<usize>, usize>,
    series: &[i64],
    i: usize,
    theta: usize,
    bound: usize,
) -> BTreeMap<Vec<usize>, i64> {
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for n in 0..=bound {
        for gamma in compositions(n, theta) {
            let mut value = *dims.get(&gamma).unwrap_or(&0) as i64;
            for k in 1..=gamma[i] {
                let b = series.get(k).copied().unwrap_or(0);
                if b == 0 {
                    continue;
                }
                let mut lower = gamma.clone();
                lower[i] -= k;
                value -= b * out.get(&lower).copied().unwrap_or(0);
            }
            out.insert(gamma, value);
        }
    }
    out
}

/// Multigraded consistency of the reflection at `i`: the coideal factor
/// extracted from `B(V(M))` by dividing out the series of `B(M_i)` along
/// `alpha_i` must match, after regrading by `s_i`, the factor extracted
/// from `B(V(r_i(M)))` by dividing out the series of `B(M_i^*)`.  Degrees
/// whose image under `s_i` leaves the computed window are reported as
/// skipped.
pub fn reflection_dim_consistency(
    tuple: &YdTuple,
    i: usize,
    bound: usize,
    caps: &EngineCaps,
) -> Result<DimConsistencyReport, EngineError> {
    let theta = tuple.theta();
    if i >= theta {
        return Err(EngineError::IndexOutOfRange(i, theta));
    }
    let mut row = vec![0i64; theta];
    row[i] = 2;
    for j in 0..theta {
        if j != i {
            row[j] = cartan_entry(tuple, i, j, caps)?.ok_or(EngineError::NotIFinite {
                i,
                j,
                h_cap: caps.h_cap,
            })?;
        }
    }
    let reflected = reflect_with_row(tuple, i, &row, caps)?;

    let dims_m = graded_dims(tuple, bound, caps.tensor_guard)?;
    let dims_r = graded_dims(&reflected, bound, caps.tensor_guard)?;

    let single_series = |m: &Arc<YdModule>| -> Result<Vec<i64>, EngineError> {
        let one = YdTuple::new(vec![Arc::clone(m)])?;
        let d = graded_dims(&one, bound, caps.tensor_guard)?;
        Ok((0..=bound)
            .map(|n| *d.get(&vec![n]).unwrap_or(&0) as i64)
            .collect())
    };
    let bi = single_series(tuple.module(i))?;
    let bi_star = single_series(reflected.module(i))?;

    let k_m = deconvolve(&dims_m, &bi, i, theta, bound);
    let k_r = deconvolve(&dims_r, &bi_star, i, theta, bound);

    let s_i = |delta: &[usize]| -> Vec<i64> {
        let mut out: Vec<i64> = delta.iter().map(|&x| x as i64).collect();
        let drop: i64 = (0..theta).map(|k| row[k] * delta[k] as i64).sum();
        out[i] -= drop;
        out
    };

    let mut mismatches = Vec::new();
    let mut skipped = Vec::new();
    let mut checked = 0;
    for n in 0..=bound {
        for delta in compositions(n, theta) {
            let sigma = s_i(&delta);
            let got = k_r.get(&delta).copied().unwrap_or(0);
            let expected = if sigma.iter().any(|&x| x < 0) {
                0
            } else {
                let sigma_u: Vec<usize> = sigma.iter().map(|&x| x as usize).collect();
                let total: usize = sigma_u.iter().sum();
                if total > bound {
                    skipped.push(delta);
                    continue;
                }
                k_m.get(&sigma_u).copied().unwrap_or(0)
            };
            checked += 1;
            if got != expected {
                mismatches.push(DimMismatch {
                    degree: delta.iter().map(|&x| x as i64).collect(),
                    got,
                    expected,
                });
            }
        }
    }

    Ok(DimConsistencyReport {
        index: i,
        degree_bound: bound,
        checked,
        mismatches,
        skipped,
    })
}

/// A group-theoretic obstruction to finite dimensionality.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `(st)^2 != (ts)^2` for degrees `s, t` of entries `i, j`.
    StstFails {
        i: usize,
        j: usize,
        s: String,
        t: String,
        st_squared: String,
        ts_squared: String,
    },
    /// More than one double coset with noncommuting conjugate.
    DoubleCosetCount { i: usize, j: usize, count: usize },
    /// A reducible module over a nonabelian simple group.
    NonabelianSimple,
    /// A reducible module over a symmetric group of degree >= 3.
    SymmetricGroup { moved_points: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct ScreenReport {
    /// False over abelian groups, where the screens are vacuous.
    pub applicable: bool,
    pub obstructions: Vec<Obstruction>,
    pub notes: Vec<String>,
}

impl ScreenReport {
    pub fn infinite_dimensional(&self) -> bool {
        !self.obstructions.is_empty()
    }
}

/// Necessary conditions for finite-dimensionality of the Nichols algebra
/// of `V(M)` over a nonabelian group: the `(st)^2 = (ts)^2` condition and
/// the double-coset bound for every pair of entries, plus the structural
/// obstructions for nonabelian simple and symmetric groups.  A failed
/// necessary condition certifies infinite dimension; a passing screen
/// makes no finiteness claim.
pub fn finiteness_screen(tuple: &YdTuple) -> ScreenReport {
    let group = tuple.group();
    let mut notes = Vec::new();
    if group.is_abelian() {
        return ScreenReport {
            applicable: false,
            obstructions: Vec::new(),
            notes: vec!["group is abelian; the screens are vacuous".into()],
        };
    }
    let mut obstructions = Vec::new();
    let theta = tuple.theta();
    if theta >= 2 {
        if group.is_nonabelian_simple() {
            obstructions.push(Obstruction::NonabelianSimple);
        }
        if let Some(m) = group.symmetric_degree() {
            if m >= 3 {
                obstructions.push(Obstruction::SymmetricGroup { moved_points: m });
            }
        }
    } else {
        notes.push("tuple has a single entry; pair screens do not apply".into());
    }
    for i in 0..theta {
        for j in (i + 1)..theta {
            let ci = group.class_of(*tuple.module(i).support().iter().next().unwrap());
            let cj = group.class_of(*tuple.module(j).support().iter().next().unwrap());
            match stst_condition(group, &ci, &cj) {
                StstOutcome::Pass => {}
                StstOutcome::Fail { s, t, st_sq, ts_sq } => {
                    obstructions.push(Obstruction::StstFails {
                        i: i + 1,
                        j: j + 1,
                        s: group.element(s).cycle_string(),
                        t: group.element(t).cycle_string(),
                        st_squared: group.element(st_sq).cycle_string(),
                        ts_squared: group.element(ts_sq).cycle_string(),
                    });
                }
            }
            let report = group.double_coset_analysis(ci.representative, cj.representative);
            if report.noncommuting_count > 1 {
                obstructions.push(Obstruction::DoubleCosetCount {
                    i: i + 1,
                    j: j + 1,
                    count: report.noncommuting_count,
                });
            }
            if classes_commute_witness(group, &ci, &cj).is_none() {
                notes.push(format!(
                    "supports of entries {} and {} commute elementwise",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    ScreenReport {
        applicable: true,
        obstructions,
        notes,
    }
}

/// The S_3 transposition module with its sign fiber, the running
/// nonabelian example.
pub fn s3_transposition_module() -> Result<Arc<YdModule>, EngineError> {
    let group = Arc::new(builtin_group("S3")?);
    let base = crate::finitegroup::Perm::parse_cycles("(12)", 3)?;
    let fiber = Fiber::Character(vec![(base.clone(), Cyclotomic::from_int(-1))]);
    Ok(Arc::new(
        induce(Arc::clone(&group), &base, &fiber)?.with_label("V(12)-sgn"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> EngineCaps {
        EngineCaps::default()
    }

    fn a2_order5() -> YdTuple {
        diagonal_tuple(5, &[vec![1, -1], vec![0, 1]]).unwrap()
    }

    #[test]
    fn diagonal_tuple_q_scalars() {
        let t = a2_order5();
        assert_eq!(
            t.module(0).q_scalar().unwrap(),
            Cyclotomic::root_of_unity(5, 1).unwrap()
        );
        assert_eq!(
            t.module(1).q_scalar().unwrap(),
            Cyclotomic::root_of_unity(5, 1).unwrap()
        );
    }

    #[test]
    fn infer_cartan_a2_order5() {
        let t = a2_order5();
        let inf = infer_cartan(&t, &caps()).unwrap();
        assert!(inf.is_finite());
        assert_eq!(inf.entries, vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn infer_cartan_decoupled_pair() {
        // q11 = q22 = -1, q12 q21 = 1
        let t = diagonal_tuple(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let inf = infer_cartan(&t, &caps()).unwrap();
        assert_eq!(inf.entries, vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn infer_cartan_not_i_finite() {
        // q11 = 1 and q12 q21 != 1: adjoint powers never vanish
        let t = diagonal_tuple(3, &[vec![0, 1], vec![0, 0]]).unwrap();
        let mut c = caps();
        c.h_cap = 4;
        let inf = infer_cartan(&t, &c).unwrap();
        assert!(inf.not_i_finite.contains(&(0, 1)));
    }

    #[test]
    fn infer_and_build_b2_diagonal() {
        // q11 = i, q12 q21 = -1, q22 = -1 gives the non-symmetric matrix
        // [[2,-2],[-1,2]]
        let t = diagonal_tuple(4, &[vec![1, 1], vec![1, 2]]).unwrap();
        let inf = infer_cartan(&t, &caps()).unwrap();
        assert_eq!(inf.entries, vec![vec![2, -2], vec![-1, 2]]);
        let build = build_scheme(&t, &caps()).unwrap();
        assert!(build.complete);
        let fin = build.finiteness.as_ref().unwrap();
        assert_eq!(fin.verdict, Verdict::Finite);
        for roots in &build.labeled_roots {
            assert_eq!(roots.len(), 4, "four positive roots of type B2");
        }
        assert!(build.axioms.as_ref().unwrap().passed());
    }

    #[test]
    fn infer_and_build_a3_diagonal() {
        // chain of order-5 labels: q_ii = q, adjacent products q^{-1},
        // distant products 1
        let t = diagonal_tuple(
            5,
            &[vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]],
        )
        .unwrap();
        let inf = infer_cartan(&t, &caps()).unwrap();
        assert_eq!(
            inf.entries,
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
        let build = build_scheme(&t, &caps()).unwrap();
        assert!(build.complete);
        assert_eq!(build.finiteness.as_ref().unwrap().verdict, Verdict::Finite);
        for roots in &build.labeled_roots {
            assert_eq!(roots.len(), 6, "six positive roots of type A3");
        }
        let axioms = build.axioms.as_ref().unwrap();
        assert!(axioms.passed());
        // m-values per pair: adjacent pairs see 3 roots in their cone,
        // the distant pair sees 2
        assert_eq!(axioms.m_value("o0", 1, 2), Some(3));
        assert_eq!(axioms.m_value("o0", 2, 3), Some(3));
        assert_eq!(axioms.m_value("o0", 1, 3), Some(2));
    }

    #[test]
    fn dim_consistency_b2_both_indices() {
        let t = diagonal_tuple(4, &[vec![1, 1], vec![1, 2]]).unwrap();
        for i in 0..2 {
            let report = reflection_dim_consistency(&t, i, 4, &caps()).unwrap();
            assert!(report.passed(), "index {i}: {:?}", report.mismatches);
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn rank2_witness_inside_rank_three_scheme() {
        // the (1,2) restriction has all entries -2; the third index is
        // decoupled and of finite type
        let t = diagonal_tuple(5, &[vec![1, -2, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let inf = infer_cartan(&t, &caps()).unwrap();
        assert_eq!(inf.entries[0][1], -2);
        assert_eq!(inf.entries[1][0], -2);
        assert_eq!(inf.entries[0][2], 0);
        let mut c = caps();
        c.groupoid.max_roots = 200;
        c.groupoid.max_morphisms = 4000;
        let build = build_scheme(&t, &c).unwrap();
        assert!(build.complete);
        let fin = build.finiteness.as_ref().unwrap();
        assert_eq!(fin.verdict, Verdict::InfiniteWitness);
        assert_eq!(fin.witness.as_ref().unwrap().pair, (1, 2));
    }

    #[test]
    fn infer_and_build_g2_diagonal() {
        // q11 = q (order 7), q12 q21 = q^{-3}, q22 = q^3
        let t = diagonal_tuple(7, &[vec![1, -3], vec![0, 3]]).unwrap();
        let inf = infer_cartan(&t, &caps()).unwrap();
        assert_eq!(inf.entries, vec![vec![2, -3], vec![-1, 2]]);
        let build = build_scheme(&t, &caps()).unwrap();
        assert!(build.complete);
        let fin = build.finiteness.as_ref().unwrap();
        assert_eq!(fin.verdict, Verdict::Finite);
        for roots in &build.labeled_roots {
            assert_eq!(roots.len(), 6, "six positive roots of type G2");
        }
        assert!(build.axioms.as_ref().unwrap().passed());
        assert!(build.findings.is_empty());
    }

    #[test]
    fn ad_power_zero_cases() {
        let t = diagonal_tuple(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        // q12 q21 = 1 makes the first adjoint power vanish
        assert!(ad_power_is_zero(t.module(0), t.module(1), 1, 1000).unwrap());
        let m = ad_power(t.module(0), t.module(1), 1, 1000).unwrap();
        assert!(m.is_zero());
        // n = 0 returns the module itself
        let w = ad_power(t.module(0), t.module(1), 0, 1000).unwrap();
        assert_eq!(w.dim(), 1);
    }

    #[test]
    fn ad_power_s3_transpositions() {
        let v = s3_transposition_module().unwrap();
        let m = ad_power(&v, &v, 1, 1000).unwrap();
        assert!(!m.is_zero());
        assert_eq!(m.dim(), 4);
        m.validate().unwrap();
        // supported on the 3-cycle class
        for &d in m.degrees() {
            assert_eq!(m.group().element(d).order(), 3);
        }
        // the image splits into two irreducible constituents whose
        // q-scalars are the primitive cube roots of unity: the base point
        // has order 3, so its eigenvalues must be cube roots of 1
        let report = m.irreducibility();
        assert!(!report.irreducible);
        assert_eq!(report.parts.len(), 1);
        assert_eq!(report.parts[0].inner_product, Cyclotomic::from_int(2));
        let spectrum = m.fiber_spectrum().unwrap();
        let omega = Cyclotomic::root_of_unity(3, 1).unwrap();
        assert_eq!(spectrum, vec![(omega.clone(), 1), (omega.pow(2), 1)]);
    }

    #[test]
    fn reflect_a2_is_involutive_on_iso_classes() {
        let t = a2_order5();
        let r = reflect_tuple(&t, 0, &caps()).unwrap();
        let inf = infer_cartan(&r, &caps()).unwrap();
        assert_eq!(inf.entries, vec![vec![2, -1], vec![-1, 2]]);
        let rr = reflect_tuple(&r, 0, &caps()).unwrap();
        assert!(rr.is_isomorphic(&t));
    }

    #[test]
    fn reflect_decoupled_only_dualizes() {
        let t = diagonal_tuple(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let r = reflect_tuple(&t, 0, &caps()).unwrap();
        assert!(r.module(1).is_isomorphic(t.module(1)).unwrap());
        assert_eq!(
            r.module(0).q_scalar().unwrap(),
            t.module(0).q_scalar().unwrap()
        );
    }

    #[test]
    fn graded_dims_q_minus_one() {
        let t = diagonal_tuple(2, &[vec![1]]).unwrap();
        let dims = graded_dims(&t, 3, 1000).unwrap();
        assert_eq!(dims[&vec![0]], 1);
        assert_eq!(dims[&vec![1]], 1);
        assert_eq!(dims[&vec![2]], 0);
        assert_eq!(dims[&vec![3]], 0);
    }

    #[test]
    fn graded_dims_order_three() {
        let t = diagonal_tuple(3, &[vec![1]]).unwrap();
        let dims = graded_dims(&t, 3, 1000).unwrap();
        assert_eq!(
            (
                dims[&vec![0]],
                dims[&vec![1]],
                dims[&vec![2]],
                dims[&vec![3]]
            ),
            (1, 1, 1, 0)
        );
    }

    #[test]
    fn graded_dims_decoupled_product() {
        let t = diagonal_tuple(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let dims = graded_dims(&t, 4, 1000).unwrap();
        for (gamma, d) in &dims {
            let expected = usize::from(gamma[0] <= 1) * usize::from(gamma[1] <= 1);
            assert_eq!(d, &expected, "at {gamma:?}");
        }
    }

    #[test]
    fn build_scheme_a2() {
        // Entries of reflected tuples carry inverted degrees, so the
        // closure runs over the dihedral orbit of label data: 6 objects,
        // all with the A2 Cartan matrix.
        let t = a2_order5();
        let build = build_scheme(&t, &caps()).unwrap();
        assert!(build.complete);
        assert_eq!(build.scheme.object_count(), 6);
        assert!(build.scheme.is_standard());
        assert!(build.scheme.validate().is_empty());
        let fin = build.finiteness.as_ref().unwrap();
        assert_eq!(fin.verdict, Verdict::Finite);
        for roots in &build.labeled_roots {
            let degrees: Vec<_> = roots.iter().map(|r| r.degree.clone()).collect();
            assert_eq!(degrees, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        }
        assert!(build.axioms.as_ref().unwrap().passed());
        assert!(build.findings.is_empty());
    }

    #[test]
    fn build_scheme_infinite_witness() {
        // q11 = q22 = zeta_5, q12 q21 = zeta_5^{-2}: both Cartan entries -2
        let t = diagonal_tuple(5, &[vec![1, -2], vec![0, 1]]).unwrap();
        let mut c = caps();
        c.groupoid.max_roots = 200;
        c.groupoid.max_morphisms = 5000;
        let build = build_scheme(&t, &c).unwrap();
        let fin = build.finiteness.as_ref().unwrap();
        assert_eq!(fin.verdict, Verdict::InfiniteWitness);
        let cert = fin.witness.as_ref().unwrap();
        assert_eq!(cert.factors[0].product, [[3, -2], [2, -1]]);
    }

    #[test]
    fn dim_consistency_a2() {
        let t = a2_order5();
        let report = reflection_dim_consistency(&t, 0, 4, &caps()).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
        assert!(report.checked > 0);
    }

    #[test]
    fn screen_s3_pair_obstruction() {
        let v = s3_transposition_module().unwrap();
        let t = YdTuple::new(vec![Arc::clone(&v), v]).unwrap();
        let report = finiteness_screen(&t);
        assert!(report.applicable);
        assert!(report.infinite_dimensional());
        assert!(report
            .obstructions
            .iter()
            .any(|o| matches!(o, Obstruction::StstFails { .. })));
        assert!(report
            .obstructions
            .iter()
            .any(|o| matches!(o, Obstruction::SymmetricGroup { moved_points: 3 })));
    }

    #[test]
    fn screen_abelian_is_vacuous() {
        let t = a2_order5();
        let report = finiteness_screen(&t);
        assert!(!report.applicable);
        assert!(!report.infinite_dimensional());
    }

    #[test]
    fn screen_a5_pair_is_obstructed_by_simplicity() {
        let group = Arc::new(builtin_group("A5").unwrap());
        let five_cycle = group
            .elements()
            .iter()
            .find(|p| p.order() == 5)
            .unwrap()
            .clone();
        let fiber = Fiber::Character(vec![(five_cycle.clone(), Cyclotomic::from_int(1))]);
        let v = Arc::new(induce(Arc::clone(&group), &five_cycle, &fiber).unwrap());
        assert_eq!(v.dim(), 12);
        let t = YdTuple::new(vec![Arc::clone(&v), v]).unwrap();
        let report = finiteness_screen(&t);
        assert!(report
            .obstructions
            .iter()
            .any(|o| matches!(o, Obstruction::NonabelianSimple)));
    }

    #[test]
    fn build_scheme_decoupled_pair() {
        // order-2 characters are self-dual, so the closure is one object
        let t = diagonal_tuple(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let build = build_scheme(&t, &caps()).unwrap();
        assert!(build.complete);
        assert_eq!(build.scheme.object_count(), 1);
        let fin = build.finiteness.as_ref().unwrap();
        assert_eq!(fin.verdict, Verdict::Finite);
        let degrees: Vec<_> = build.labeled_roots[0]
            .iter()
            .map(|r| r.degree.clone())
            .collect();
        assert_eq!(degrees, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn sum_of_distinct_degrees_is_reducible() {
        use super::tensor::SumModule;
        let t = diagonal_tuple(4, &[vec![1, 0], vec![0, 1]]).unwrap();
        let sum = SumModule::direct_sum(t.modules()).unwrap();
        let report = sum.module.irreducibility();
        assert!(!report.irreducible);
        assert_eq!(report.parts.len(), 2);
        for part in &report.parts {
            let piece = sum.module.class_part(&part.basis);
            assert!(piece.is_irreducible());
        }
    }
}
