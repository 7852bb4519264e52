//! Independent reference implementations used to cross-check the
//! production operators.  Everything here is deliberately written along a
//! different route than the library: symmetrizers as braid lifts of whole
//! permutations instead of composed shuffle maps, root counts by plain
//! Weyl-group closure instead of groupoid enumeration, ranks by textbook
//! row reduction instead of fraction-free elimination.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use nichols_core::engine::tensor::TensorSpace;
use nichols_core::exactfield::{Cyclotomic, ExactMatrix};
use nichols_core::ydmodule::YdModule;

/// Small deterministic PRNG (xorshift); fixed seeds keep the suites
/// reproducible while still exercising random instances.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

/// All permutations of `{0..n-1}` with one reduced word each, found by
/// breadth-first search over right multiplications that increase the
/// inversion number.
pub fn reduced_words(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn inversions(p: &[usize]) -> usize {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut words: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    words.insert(identity.clone(), Vec::new());
    let mut queue = vec![identity];
    while let Some(p) = queue.pop() {
        let w = words[&p].clone();
        for k in 0..n - 1 {
            // right multiplication by s_k swaps inputs k, k+1
            let mut q = p.clone();
            q.swap(k, k + 1);
            if inversions(&q) == inversions(&p) + 1 && !words.contains_key(&q) {
                let mut w2 = w.clone();
                w2.push(k);
                words.insert(q.clone(), w2);
                queue.push(q);
            }
        }
    }
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = words.into_iter().collect();
    out.sort();
    out
}

/// Quantum symmetrizer as the brute-force sum over the braid lifts of all
/// permutations of the symmetric group: a reduced word `s_{i_1}...s_{i_k}`
/// lifts to the matrix product `C_{i_1} ... C_{i_k}` of adjacent
/// braidings.
pub fn brute_symmetrizer(space: &TensorSpace, n: usize) -> ExactMatrix {
    let mut sum = ExactMatrix::zero(space.dim(), space.dim());
    for (_, word) in reduced_words(n) {
        let ops: Vec<nichols_core::engine::tensor::BraidOp> = word
            .iter()
            .map(|&k| nichols_core::engine::tensor::BraidOp::Single(k))
            .collect();
        sum = sum.add(&space.braid_monomial(&ops));
    }
    sum
}

/// Positive-root count of a finite-type Cartan matrix by plain closure of
/// the simple roots under all reflections.
pub fn classical_positive_root_count(cartan: &[Vec<i64>]) -> usize {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let mut new_roots = Vec::new();
        for r in &roots {
            for i in 0..n {
                // s_i(r) = r - <r, alpha_i^v> alpha_i with pairing from row i
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let mut image = r.clone();
                image[i] -= pairing;
                if !roots.contains(&image) && !new_roots.contains(&image) {
                    new_roots.push(image);
                }
            }
        }
        if new_roots.is_empty() {
            break;
        }
        roots.extend(new_roots);
        assert!(roots.len() < 10_000, "matrix is not of finite type");
    }
    roots
        .iter()
        .filter(|r| r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0))
        .count()
}

/// Textbook Gaussian elimination over the cyclotomic field; no pivoting
/// strategy, no fraction-free lifting.
pub fn naive_rank(mut rows: Vec<Vec<Cyclotomic>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(row, p);
        let inv = rows[row][col].inverse().expect("nonzero pivot");
        for c in 0..cols {
            rows[row][c] = rows[row][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..cols {
                    let t = f.mul(&rows[row][c]);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows.len() {
            break;
        }
    }
    rank
}

/// Sparse free vector over the basis tuples of a tensor power, used to
/// evaluate braided adjoint actions directly from their definition.
pub type FreeVec = HashMap<Vec<usize>, Cyclotomic>;

pub fn free_unit(tuple: Vec<usize>) -> FreeVec {
    let mut v = FreeVec::new();
    v.insert(tuple, Cyclotomic::from_int(1));
    v
}

fn free_add(mut a: FreeVec, b: FreeVec) -> FreeVec {
    for (t, c) in b {
        let entry = a.entry(t).or_insert_with(|| Cyclotomic::zero(1));
        *entry = entry.add(&c);
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn free_neg(a: FreeVec) -> FreeVec {
    a.into_iter().map(|(t, c)| (t, c.neg())).collect()
}

/// Diagonal action of a group element on a free tensor vector over the
/// module `d`.
pub fn free_act(d: &Arc<YdModule>, elt: usize, v: &FreeVec) -> FreeVec {
    let act = d.action_of(elt);
    let mut out = FreeVec::new();
    for (tuple, coeff) in v {
        let mut combos: Vec<(Vec<usize>, Cyclotomic)> = vec![(Vec::new(), coeff.clone())];
        for &b in tuple {
            let mut next = Vec::new();
            for (prefix, c) in &combos {
                for (r, val) in act.col(b) {
                    let mut p = prefix.clone();
                    p.push(*r);
                    next.push((p, c.mul(val)));
                }
            }
            combos = next;
        }
        for (t, c) in combos {
            let entry = out.entry(t).or_insert_with(|| Cyclotomic::zero(1));
            *entry = entry.add(&c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `ad_c v (x) = v (x) x - (deg v . x) (x) v` for a basis vector `v` of
/// the module `d`, straight from the definition.
pub fn free_ad(d: &Arc<YdModule>, v: usize, x: &FreeVec) -> FreeVec {
    let mut left = FreeVec::new();
    for (t, c) in x {
        let mut t2 = Vec::with_capacity(t.len() + 1);
        t2.push(v);
        t2.extend_from_slice(t);
        left.insert(t2, c.clone());
    }
    let acted = free_act(d, d.degree(v), x);
    let mut right = FreeVec::new();
    for (t, c) in acted {
        let mut t2 = t.clone();
        t2.push(v);
        right.insert(t2, c);
    }
    free_add(left, free_neg(right))
}

/// Matrix application to a free vector indexed by `space` tuples.
pub fn apply_matrix(space: &TensorSpace, m: &ExactMatrix, v: &FreeVec) -> FreeVec {
    let sparse: Vec<(usize, Cyclotomic)> = v
        .iter()
        .map(|(t, c)| (space.position(t).expect("tuple in space"), c.clone()))
        .collect();
    m.apply_sparse(&sparse)
        .into_iter()
        .map(|(row, c)| (space.basis[row].clone(), c))
        .collect()
}

pub fn free_eq(a: &FreeVec, b: &FreeVec) -> bool {
    let mut diff = a.clone();
    for (t, c) in b {
        let entry = diff.entry(t.clone()).or_insert_with(|| Cyclotomic::zero(1));
        *entry = entry.sub(c);
    }
    diff.values().all(|c| c.is_zero())
}
