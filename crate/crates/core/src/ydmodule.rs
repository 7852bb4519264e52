//! Yetter-Drinfeld modules over a finite group.
//!
//! A module here is a `G`-graded `G`-module with a homogeneous basis: each
//! basis vector carries a group element as degree, and the action of `h`
//! maps the degree-`s` component onto the degree-`hsh^{-1}` component.
//! Irreducible modules are induced from irreducible centralizer
//! representations: the basis of `kG (x)_{kG^g} M` is indexed by pairs of
//! a coset representative and a fiber basis vector, the degree of `(x, m)`
//! is `x g x^{-1}`, and the action runs through a fixed transversal of
//! lexicographically minimal coset representatives.
//!
//! Duals are left duals with action `(h . f)(v) = f(h^{-1} . v)` and
//! degree inversion on homogeneous components; this convention makes the
//! double dual isomorphic to the original module.  Isomorphism classes of
//! irreducible modules are keyed by the support class together with the
//! graded character, the exact trace of every centralizer element on the
//! fiber at the minimal class representative.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num::{BigRational, FromPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{Cyclotomic, ExactMatrix};
use crate::finitegroup::{FiniteGroup, GroupError, Perm};

#[derive(Debug, Error)]
pub enum YdError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("base point is not a member of the group")]
    BaseNotInGroup,
    #[error("fiber element {0} lies outside the centralizer of the base point")]
    FiberElementOutsideCentralizer(String),
    #[error("fiber is not a homomorphism: images of `{0}` disagree")]
    FiberNotHomomorphism(String),
    #[error("fiber values do not generate the centralizer (got {got} of {want} elements)")]
    FiberDoesNotGenerate { got: usize, want: usize },
    #[error("fiber matrix has wrong shape")]
    FiberShape,
    #[error("modules live over different groups")]
    GroupMismatch,
    #[error("module is zero")]
    ZeroModule,
    #[error("support is not a single conjugacy class")]
    MultiClassSupport,
    #[error("degree-{0} element does not act as a scalar on its fiber; the module is not irreducible or its data is corrupt")]
    ActionNotScalar(String),
    #[error("module is not irreducible")]
    NotIrreducible,
    #[error("action of generator {gen} violates the grading at basis vector {basis}")]
    GradingViolation { gen: usize, basis: usize },
}

/// A finitely generated Yetter-Drinfeld module over a finite group with a
/// homogeneous basis.
#[derive(Debug, Clone)]
pub struct YdModule {
    group: Arc<FiniteGroup>,
    /// Group element index per basis vector: the `G`-degree map.
    degrees: Vec<usize>,
    /// Action matrix per group generator, `dim x dim`.
    actions: Vec<ExactMatrix>,
    label: String,
}

impl YdModule {
    pub fn new(
        group: Arc<FiniteGroup>,
        degrees: Vec<usize>,
        actions: Vec<ExactMatrix>,
        label: impl Into<String>,
    ) -> Self {
        debug_assert_eq!(actions.len(), group.generators().len());
        YdModule {
            group,
            degrees,
            actions,
            label: label.into(),
        }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let gens = group.generators().len();
        YdModule {
            group,
            degrees: Vec::new(),
            actions: vec![ExactMatrix::zero(0, 0); gens],
            label: "0".into(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Degree (group element index) of basis vector `b`.
    pub fn degree(&self, b: usize) -> usize {
        self.degrees[b]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Set of degrees, as sorted group element indices.
    pub fn support(&self) -> BTreeSet<usize> {
        self.degrees.iter().copied().collect()
    }

    pub fn generator_action(&self, gen: usize) -> &ExactMatrix {
        &self.actions[gen]
    }

    /// Action matrix of an arbitrary group element, as the product of
    /// generator actions along the element's stored word.
    pub fn action_of(&self, elt: usize) -> ExactMatrix {
        let mut m = ExactMatrix::identity(self.dim());
        for &g in self.group.word(elt) {
            m = m.mul(&self.actions[g]);
        }
        m
    }

    /// Verify the Yetter-Drinfeld compatibility on the basis: the action
    /// of each generator maps the degree-`s` component onto the
    /// degree-`hsh^{-1}` component.
    pub fn validate(&self) -> Result<(), YdError> {
        for (gen, h) in self.group.generators().iter().enumerate() {
            for b in 0..self.dim() {
                let expected = self
                    .group
                    .index_of(&h.conjugate(self.group.element(self.degrees[b])))
                    .expect("closure");
                for (row, _) in self.actions[gen].col(b) {
                    if self.degrees[*row] != expected {
                        return Err(YdError::GradingViolation { gen, basis: b });
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis indices of the fiber `V_s`.
    pub fn fiber(&self, elt: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.degrees[b] == elt)
            .collect()
    }

    /// The scalar by which every degree-`s` element acts on its component
    /// `V_s`, verified constant across the support class.  Fails when the
    /// action is not scalar on some fiber, which signals a reducible or
    /// corrupted module.
    pub fn q_scalar(&self) -> Result<Cyclotomic, YdError> {
        if self.is_zero() {
            return Err(YdError::ZeroModule);
        }
        let mut q: Option<Cyclotomic> = None;
        for s in self.support() {
            let fiber = self.fiber(s);
            let act = self.action_of(s);
            let mut local: Option<Cyclotomic> = None;
            for &b in &fiber {
                let col: HashMap<usize, Cyclotomic> = act.col(b).iter().cloned().collect();
                for &b2 in &fiber {
                    let entry = col.get(&b2).cloned().unwrap_or_else(|| Cyclotomic::zero(1));
                    if b2 == b {
                        match &local {
                            None => local = Some(entry),
                            Some(v) if *v == entry => {}
                            Some(_) => {
                                return Err(YdError::ActionNotScalar(
                                    self.group.element(s).cycle_string(),
                                ))
                            }
                        }
                    } else if !entry.is_zero() {
                        return Err(YdError::ActionNotScalar(
                            self.group.element(s).cycle_string(),
                        ));
                    }
                }
            }
            let local = local.ok_or(YdError::ZeroModule)?;
            match &q {
                None => q = Some(local),
                Some(v) if *v == local => {}
                Some(_) => {
                    return Err(YdError::ActionNotScalar(
                        self.group.element(s).cycle_string(),
                    ))
                }
            }
        }
        q.ok_or(YdError::ZeroModule)
    }

    /// Eigenvalues, with multiplicities, of the base-point action on the
    /// fiber at the minimal class representative.  For a single-class
    /// module these are exactly the `q`-scalars of its irreducible
    /// constituents; the base point has finite order, so all eigenvalues
    /// are roots of unity of that order and the action is diagonalizable.
    pub fn fiber_spectrum(&self) -> Result<Vec<(Cyclotomic, usize)>, YdError> {
        if self.is_zero() {
            return Err(YdError::ZeroModule);
        }
        let support = self.support();
        let rep = *support.iter().next().unwrap();
        let class = self.group.class_of(rep);
        if support != class.members.iter().copied().collect::<BTreeSet<_>>() {
            return Err(YdError::MultiClassSupport);
        }
        let g = class.representative;
        let fiber = self.fiber(g);
        let act = self.action_of(g);
        // restriction of the action to the fiber coordinates
        let restricted = ExactMatrix::from_rows(
            fiber
                .iter()
                .map(|&r| fiber.iter().map(|&c| act.get(r, c)).collect())
                .collect(),
        );
        let order = self.group.element(g).order() as u64;
        let mut spectrum = Vec::new();
        let mut total = 0;
        for j in 0..order {
            let lambda = Cyclotomic::root_of_unity(order, j as i64).expect("order > 0");
            let shifted = restricted.sub(&ExactMatrix::identity(fiber.len()).scale(&lambda));
            let mult = fiber.len() - shifted.rank_kernel_image().rank;
            if mult > 0 {
                spectrum.push((lambda, mult));
                total += mult;
            }
        }
        debug_assert_eq!(total, fiber.len(), "finite-order action is diagonalizable");
        Ok(spectrum)
    }

    /// Left dual: dual basis, degree inversion, action
    /// `(h . f)(v) = f(h^{-1} . v)`.
    pub fn dual(&self) -> YdModule {
        let degrees = self
            .degrees
            .iter()
            .map(|&d| self.group.inverse_index(d))
            .collect();
        let actions = self
            .group
            .generators()
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let inv = self.group.inverse_index(
                    self.group
                        .index_of(&self.group.generators()[k])
                        .expect("generator in closure"),
                );
                self.action_of(inv).transpose()
            })
            .collect();
        YdModule {
            group: Arc::clone(&self.group),
            degrees,
            actions,
            label: format!("({})*", self.label),
        }
    }

    /// Graded character: exact traces of all centralizer elements on the
    /// fiber at the minimal representative of the support class.
    /// The support must be a single conjugacy class.
    pub fn graded_character(&self) -> Result<GradedCharacter, YdError> {
        if self.is_zero() {
            return Err(YdError::ZeroModule);
        }
        let support = self.support();
        let rep = *support.iter().next().unwrap();
        let class = self.group.class_of(rep);
        if support != class.members.iter().copied().collect::<BTreeSet<_>>() {
            return Err(YdError::MultiClassSupport);
        }
        let fiber = self.fiber(class.representative);
        let mut values = Vec::with_capacity(class.centralizer.len());
        for &z in &class.centralizer {
            let act = self.action_of(z);
            let mut tr = Cyclotomic::zero(1);
            for &b in &fiber {
                tr = tr.add(&act.get(b, b));
            }
            values.push((z, tr));
        }
        Ok(GradedCharacter {
            class_representative: class.representative,
            values,
        })
    }

    /// Irreducibility test with decomposition data on failure: the support
    /// must be one conjugacy class and the fiber character must have unit
    /// inner product over the centralizer.
    pub fn irreducibility(&self) -> IrreducibilityReport {
        if self.is_zero() {
            return IrreducibilityReport {
                irreducible: false,
                parts: Vec::new(),
            };
        }
        let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (b, &d) in self.degrees.iter().enumerate() {
            let class = self.group.class_of(d);
            by_class.entry(class.representative).or_default().push(b);
        }
        let mut parts = Vec::new();
        for (rep, basis) in by_class {
            let class = self.group.class_of(rep);
            let fiber: Vec<usize> = basis
                .iter()
                .copied()
                .filter(|&b| self.degrees[b] == rep)
                .collect();
            // <chi, chi> over the centralizer, computed with the Galois
            // conjugate in place of complex conjugation
            let mut inner = Cyclotomic::zero(1);
            for &z in &class.centralizer {
                let act = self.action_of(z);
                let mut tr = Cyclotomic::zero(1);
                for &b in &fiber {
                    tr = tr.add(&act.get(b, b));
                }
                inner = inner.add(&tr.mul(&tr.galois_conjugate()));
            }
            let card = BigRational::from_usize(class.centralizer.len()).unwrap();
            let inner = inner.scale(&card.recip());
            parts.push(SupportPart {
                class_representative: rep,
                basis,
                fiber_dim: fiber.len(),
                inner_product: inner,
            });
        }
        let irreducible = parts.len() == 1 && parts[0].inner_product == Cyclotomic::from_int(1);
        IrreducibilityReport { irreducible, parts }
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducibility().irreducible
    }

    /// Isomorphism test for irreducible modules: same support class and
    /// equal graded characters at the common base point.  Reducible input
    /// is an error; decompose first.
    pub fn is_isomorphic(&self, other: &YdModule) -> Result<bool, YdError> {
        if !Arc::ptr_eq(&self.group, &other.group)
            && self.group.elements() != other.group.elements()
        {
            return Err(YdError::GroupMismatch);
        }
        if !self.is_irreducible() || !other.is_irreducible() {
            return Err(YdError::NotIrreducible);
        }
        Ok(self.graded_character()? == other.graded_character()?)
    }

    /// The sub-YD-module spanned by the basis vectors of one support
    /// class, keeping their order.
    pub fn class_part(&self, basis: &[usize]) -> YdModule {
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let degrees = basis.iter().map(|&b| self.degrees[b]).collect();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let cols = basis
                    .iter()
                    .map(|&b| a.col(b).iter().map(|(r, v)| (pos[r], v.clone())).collect())
                    .collect();
                ExactMatrix::from_cols(basis.len(), cols)
            })
            .collect();
        YdModule {
            group: Arc::clone(&self.group),
            degrees,
            actions,
            label: format!("{}|part", self.label),
        }
    }
}

/// Iso-class key of an irreducible module: support class representative
/// and the exact trace of each centralizer element on the base fiber.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GradedCharacter {
    pub class_representative: usize,
    /// `(centralizer element index, trace)`, in element order.
    pub values: Vec<(usize, Cyclotomic)>,
}

#[derive(Debug, Clone)]
pub struct SupportPart {
    pub class_representative: usize,
    pub basis: Vec<usize>,
    pub fiber_dim: usize,
    /// `<chi, chi>` of the fiber character over the centralizer; 1 exactly
    /// when the part is irreducible.
    pub inner_product: Cyclotomic,
}

#[derive(Debug, Clone)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub parts: Vec<SupportPart>,
}

/// A centralizer representation used as induction fiber: either a
/// one-dimensional character or explicit matrices, given on a generating
/// subset of the centralizer.
#[derive(Debug, Clone)]
pub enum Fiber {
    Character(Vec<(Perm, Cyclotomic)>),
    Matrices {
        dim: usize,
        images: Vec<(Perm, ExactMatrix)>,
    },
}

impl Fiber {
    fn dim(&self) -> usize {
        match self {
            Fiber::Character(_) => 1,
            Fiber::Matrices { dim, .. } => *dim,
        }
    }

    fn images(&self) -> Result<Vec<(Perm, ExactMatrix)>, YdError> {
        match self {
            Fiber::Character(values) => Ok(values
                .iter()
                .map(|(p, v)| (p.clone(), ExactMatrix::from_rows(vec![vec![v.clone()]])))
                .collect()),
            Fiber::Matrices { dim, images } => {
                for (_, m) in images {
                    if m.rows() != *dim || m.cols() != *dim {
                        return Err(YdError::FiberShape);
                    }
                }
                Ok(images.clone())
            }
        }
    }
}

/// Build the full centralizer representation from images on a generating
/// subset by closure, verifying the homomorphism property exhaustively.
fn close_representation(
    group: &FiniteGroup,
    centralizer: &[usize],
    dim: usize,
    given: &[(usize, ExactMatrix)],
) -> Result<HashMap<usize, ExactMatrix>, YdError> {
    let mut rep: HashMap<usize, ExactMatrix> = HashMap::new();
    rep.insert(group.identity_index(), ExactMatrix::identity(dim));
    for (e, m) in given {
        if let Some(old) = rep.get(e) {
            if old != m {
                return Err(YdError::FiberNotHomomorphism(
                    group.element(*e).cycle_string(),
                ));
            }
        }
        rep.insert(*e, m.clone());
    }
    let mut queue: VecDeque<usize> = rep.keys().copied().collect();
    while let Some(a) = queue.pop_front() {
        let gens: Vec<usize> = given.iter().map(|(e, _)| *e).collect();
        for g in gens {
            let prod = group.compose_indices(a, g);
            let m = rep[&a].mul(&rep[&g]);
            match rep.get(&prod) {
                None => {
                    rep.insert(prod, m);
                    queue.push_back(prod);
                }
                Some(old) => {
                    if *old != m {
                        return Err(YdError::FiberNotHomomorphism(
                            group.element(prod).cycle_string(),
                        ));
                    }
                }
            }
        }
    }
    if rep.len() != centralizer.len() {
        return Err(YdError::FiberDoesNotGenerate {
            got: rep.len(),
            want: centralizer.len(),
        });
    }
    // The closure already verified rep(a * g) = rep(a) rep(g) for every
    // element a and generator g, which forces the homomorphism property
    // on all pairs by induction on word length.  For small centralizers
    // run the exhaustive cross-check anyway.
    if centralizer.len() <= 64 {
        for &a in centralizer {
            for &b in centralizer {
                let ab = group.compose_indices(a, b);
                if rep[&a].mul(&rep[&b]) != rep[&ab] {
                    return Err(YdError::FiberNotHomomorphism(
                        group.element(ab).cycle_string(),
                    ));
                }
            }
        }
    }
    Ok(rep)
}

/// Induce a Yetter-Drinfeld module from a centralizer representation.
///
/// The result has dimension `|class of g| * dim(fiber)`, basis indexed by
/// (coset representative, fiber basis vector) with the transversal of
/// lexicographically minimal left-coset representatives, and the degree of
/// `(x, m)` is `x g x^{-1}`.
pub fn induce(group: Arc<FiniteGroup>, base: &Perm, fiber: &Fiber) -> Result<YdModule, YdError> {
    let g = group.index_of(base).ok_or(YdError::BaseNotInGroup)?;
    let centralizer = group.centralizer(g);
    let cent_set: BTreeSet<usize> = centralizer.iter().copied().collect();

    let dim_fiber = fiber.dim();
    let mut given = Vec::new();
    for (p, m) in fiber.images()? {
        let e = group
            .index_of(&p)
            .ok_or_else(|| YdError::FiberElementOutsideCentralizer(p.cycle_string()))?;
        if !cent_set.contains(&e) {
            return Err(YdError::FiberElementOutsideCentralizer(p.cycle_string()));
        }
        given.push((e, m));
    }
    let rep = close_representation(&group, &centralizer, dim_fiber, &given)?;

    // left cosets x * C, transversal of lexicographically minimal reps;
    // scanning elements in order finds each coset at its minimal member
    let mut coset_of: HashMap<usize, usize> = HashMap::new(); // element -> coset idx
    let mut transversal: Vec<usize> = Vec::new();
    for x in 0..group.order() {
        if coset_of.contains_key(&x) {
            continue;
        }
        let idx = transversal.len();
        for &z in &centralizer {
            coset_of.insert(group.compose_indices(x, z), idx);
        }
        transversal.push(x);
    }

    // basis (coset, fiber vector) in row-major order
    let n_cosets = transversal.len();
    let dim = n_cosets * dim_fiber;
    let mut degrees = Vec::with_capacity(dim);
    for &x in &transversal {
        let deg = group
            .index_of(&group.element(x).conjugate(group.element(g)))
            .expect("closure");
        for _ in 0..dim_fiber {
            degrees.push(deg);
        }
    }

    let mut actions = Vec::new();
    for hgen in group.generators() {
        let h = group.index_of(hgen).expect("generator in closure");
        let mut cols: Vec<Vec<(usize, Cyclotomic)>> = vec![Vec::new(); dim];
        for (ci, &x) in transversal.iter().enumerate() {
            let hx = group.compose_indices(h, x);
            let target_coset = coset_of[&hx];
            let xp = transversal[target_coset];
            // z = xp^{-1} h x lies in the centralizer
            let z = group.compose_indices(group.inverse_index(xp), hx);
            debug_assert!(cent_set.contains(&z));
            let zm = &rep[&z];
            for fcol in 0..dim_fiber {
                let col_index = ci * dim_fiber + fcol;
                for (frow, v) in zm.col(fcol) {
                    cols[col_index].push((target_coset * dim_fiber + frow, v.clone()));
                }
            }
        }
        actions.push(ExactMatrix::from_cols(dim, cols));
    }

    let module = YdModule {
        group,
        degrees,
        actions,
        label: format!("M({})", base.cycle_string()),
    };
    debug_assert!(module.validate().is_ok());
    Ok(module)
}

/// Braiding `c : V (x) W -> W (x) V`, `c(v (x) w) = (deg v).w (x) v`, as a
/// matrix in the product bases (row basis `w (x) v`, column basis
/// `v (x) w`).  It is invertible.
pub fn braiding(v: &YdModule, w: &YdModule) -> Result<ExactMatrix, YdError> {
    if !Arc::ptr_eq(v.group(), w.group()) && v.group().elements() != w.group().elements() {
        return Err(YdError::GroupMismatch);
    }
    let dv = v.dim();
    let dw = w.dim();
    let mut cols: Vec<Vec<(usize, Cyclotomic)>> = vec![Vec::new(); dv * dw];
    let mut action_cache: HashMap<usize, ExactMatrix> = HashMap::new();
    for a in 0..dv {
        let s = v.degree(a);
        let act = action_cache
            .entry(s)
            .or_insert_with(|| w.action_of(s))
            .clone();
        for b in 0..dw {
            let col = a * dw + b;
            for (u, coeff) in act.col(b) {
                cols[col].push((u * dv + a, coeff.clone()));
            }
        }
    }
    Ok(ExactMatrix::from_cols(dv * dw, cols))
}

/// JSON form of a module: base point plus fiber data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleJson {
    pub base: Vec<usize>,
    pub fiber: FiberJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FiberJson {
    Character {
        values: Vec<CharacterValueJson>,
    },
    Matrices {
        dim: usize,
        images: Vec<MatrixImageJson>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterValueJson {
    pub element: Vec<usize>,
    pub value: RootOfUnityJson,
}

/// `zeta_order^power`, or a general cyclotomic literal via `coeffs`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootOfUnityJson {
    Power { order: u64, power: i64 },
    Literal(Cyclotomic),
}

impl RootOfUnityJson {
    pub fn to_cyclotomic(&self) -> Result<Cyclotomic, crate::exactfield::ExactError> {
        match self {
            RootOfUnityJson::Power { order, power } => Cyclotomic::root_of_unity(*order, *power),
            RootOfUnityJson::Literal(c) => Ok(c.clone()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixImageJson {
    pub element: Vec<usize>,
    pub matrix: Vec<Vec<Cyclotomic>>,
}

impl ModuleJson {
    pub fn into_module(self, group: Arc<FiniteGroup>) -> Result<YdModule, YdError> {
        let base = Perm::new(self.base)?;
        let fiber = match self.fiber {
            FiberJson::Character { values } => {
                let mut out = Vec::new();
                for cv in values {
                    let p = Perm::new(cv.element)?;
                    let v = cv.value.to_cyclotomic().map_err(|_| YdError::FiberShape)?;
                    out.push((p, v));
                }
                Fiber::Character(out)
            }
            FiberJson::Matrices { dim, images } => {
                let mut out = Vec::new();
                for im in images {
                    let p = Perm::new(im.element)?;
                    out.push((p, ExactMatrix::from_rows(im.matrix)));
                }
                Fiber::Matrices { dim, images: out }
            }
        };
        induce(group, &base, &fiber)
    }
}
