//! Finite-type recognition by explicit Dynkin-diagram catalog match.
//!
//! The input matrix is split into connected components and each component
//! is matched, by labeled graph isomorphism, against the Cartan matrices of
//! the families A, B, C, D, E6-E8, F4, G2 in both orientations.  Matching
//! against the catalog rather than testing positive definiteness keeps the
//! verdict correct for non-symmetrizable generalized Cartan matrices.

use serde::Serialize;

use super::CartanMatrix;

/// A classified connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynkinComponent {
    /// 1-based vertex indices of the component in the input matrix.
    pub vertices: Vec<usize>,
    /// Dynkin label such as `A3`, `B2`, `G2`, or `None` if not finite type.
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub finite_type: bool,
    pub components: Vec<DynkinComponent>,
}

impl Classification {
    pub fn labels(&self) -> Option<Vec<String>> {
        self.components
            .iter()
            .map(|c| c.label.clone())
            .collect::<Option<Vec<_>>>()
    }
}

fn type_a(n: usize) -> Vec<Vec<i64>> {
    let mut m = base(n);
    for i in 0..n.saturating_sub(1) {
        m[i][i + 1] = -1;
        m[i + 1][i] = -1;
    }
    m
}

fn type_b(n: usize) -> Vec<Vec<i64>> {
    // a_{n-1,n} = -2 towards the short end
    let mut m = type_a(n);
    m[n - 2][n - 1] = -2;
    m
}

fn type_c(n: usize) -> Vec<Vec<i64>> {
    let mut m = type_a(n);
    m[n - 1][n - 2] = -2;
    m
}

fn type_d(n: usize) -> Vec<Vec<i64>> {
    let mut m = base(n);
    for i in 0..n - 2 {
        m[i][i + 1] = -1;
        m[i + 1][i] = -1;
    }
    m[n - 3][n - 1] = -1;
    m[n - 1][n - 3] = -1;
    // undo the chain edge between n-2 and n-1 added above
    m[n - 2][n - 1] = 0;
    m[n - 1][n - 2] = 0;
    m
}

fn type_e(n: usize) -> Vec<Vec<i64>> {
    // chain 1-2-...-(n-1) with vertex n attached to vertex 3
    let mut m = base(n);
    for i in 0..n - 2 {
        m[i][i + 1] = -1;
        m[i + 1][i] = -1;
    }
    m[n - 2][n - 1] = 0;
    m[n - 1][n - 2] = 0;
    m[2][n - 1] = -1;
    m[n - 1][2] = -1;
    m
}

fn type_f4() -> Vec<Vec<i64>> {
    let mut m = type_a(4);
    m[1][2] = -2;
    m
}

fn type_g2() -> Vec<Vec<i64>> {
    vec![vec![2, -1], vec![-3, 2]]
}

fn base(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
    }
    m
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// Catalog entries of the given rank, with labels.  Both orientations of
/// the non-symmetric families are listed under the conventional label; at
/// rank 2 the families B and C coincide and the label `B2` is used.
fn catalog(rank: usize) -> Vec<(String, Vec<Vec<i64>>)> {
    let mut out = Vec::new();
    match rank {
        0 => {}
        1 => out.push(("A1".into(), type_a(1))),
        2 => {
            out.push(("A2".into(), type_a(2)));
            out.push(("B2".into(), type_b(2)));
            out.push(("B2".into(), type_c(2)));
            out.push(("G2".into(), type_g2()));
            out.push(("G2".into(), transpose(&type_g2())));
        }
        _ => {
            out.push((format!("A{rank}"), type_a(rank)));
            out.push((format!("B{rank}"), type_b(rank)));
            out.push((format!("C{rank}"), type_c(rank)));
            if rank >= 4 {
                out.push((format!("D{rank}"), type_d(rank)));
            }
            if rank == 4 {
                out.push(("F4".into(), type_f4()));
                out.push(("F4".into(), transpose(&type_f4())));
            }
            if (6..=8).contains(&rank) {
                out.push((format!("E{rank}"), type_e(rank)));
            }
        }
    }
    out
}

/// Labeled-graph isomorphism by backtracking: find a bijection `pi` with
/// `a[s][t] = m[pi(s)][pi(t)]` for all component vertices `s, t`.
fn matches_pattern(a: &CartanMatrix, verts: &[usize], m: &[Vec<i64>]) -> bool {
    let k = verts.len();
    if m.len() != k {
        return false;
    }
    let mut assign: Vec<Option<usize>> = vec![None; k]; // component pos -> pattern pos
    let mut used = vec![false; k];
    fn backtrack(
        a: &CartanMatrix,
        verts: &[usize],
        m: &[Vec<i64>],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == verts.len() {
            return true;
        }
        for cand in 0..verts.len() {
            if used[cand] {
                continue;
            }
            let mut ok = true;
            for prev in 0..depth {
                let p = assign[prev].unwrap();
                let (s, t) = (verts[prev], verts[depth]);
                if a.entry(s, t) != m[p][cand] || a.entry(t, s) != m[cand][p] {
                    ok = false;
                    break;
                }
            }
            if ok {
                assign[depth] = Some(cand);
                used[cand] = true;
                if backtrack(a, verts, m, assign, used, depth + 1) {
                    return true;
                }
                assign[depth] = None;
                used[cand] = false;
            }
        }
        false
    }
    backtrack(a, verts, m, &mut assign, &mut used, 0)
}

/// Decompose into connected components and match each against the Dynkin
/// catalog; returns the component labels or a negative verdict.
pub fn finite_type_classify(a: &CartanMatrix) -> Classification {
    let n = a.rank();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if w != v && comp[w] == usize::MAX && (a.entry(v, w) != 0 || a.entry(w, v) != 0) {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
    }
    let mut components = Vec::new();
    let mut finite = true;
    for id in 0..count {
        let verts: Vec<usize> = (0..n).filter(|&v| comp[v] == id).collect();
        let mut label = None;
        for (name, pattern) in catalog(verts.len()) {
            if matches_pattern(a, &verts, &pattern) {
                label = Some(name);
                break;
            }
        }
        if label.is_none() {
            finite = false;
        }
        components.push(DynkinComponent {
            vertices: verts.iter().map(|v| v + 1).collect(),
            label,
        });
    }
    Classification {
        finite_type: finite,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: Vec<Vec<i64>>) -> CartanMatrix {
        CartanMatrix::new(rows).unwrap()
    }

    #[test]
    fn a2_is_finite() {
        let c = finite_type_classify(&cm(vec![vec![2, -1], vec![-1, 2]]));
        assert!(c.finite_type);
        assert_eq!(c.labels().unwrap(), vec!["A2"]);
    }

    #[test]
    fn affine_a1_is_not_finite() {
        let c = finite_type_classify(&cm(vec![vec![2, -2], vec![-2, 2]]));
        assert!(!c.finite_type);
        assert_eq!(c.components[0].label, None);
    }

    #[test]
    fn g2_both_orientations() {
        let c = finite_type_classify(&cm(vec![vec![2, -1], vec![-3, 2]]));
        assert_eq!(c.labels().unwrap(), vec!["G2"]);
        let c = finite_type_classify(&cm(vec![vec![2, -3], vec![-1, 2]]));
        assert_eq!(c.labels().unwrap(), vec!["G2"]);
    }

    #[test]
    fn b2_both_orientations() {
        for m in [
            vec![vec![2, -2], vec![-1, 2]],
            vec![vec![2, -1], vec![-2, 2]],
        ] {
            let c = finite_type_classify(&cm(m));
            assert_eq!(c.labels().unwrap(), vec!["B2"]);
        }
    }

    #[test]
    fn a1_times_a1_splits() {
        let c = finite_type_classify(&cm(vec![vec![2, 0], vec![0, 2]]));
        assert_eq!(c.labels().unwrap(), vec!["A1", "A1"]);
    }

    #[test]
    fn b3_c3_distinguished() {
        let b3 = cm(vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
        assert_eq!(finite_type_classify(&b3).labels().unwrap(), vec!["B3"]);
        let c3 = cm(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        assert_eq!(finite_type_classify(&c3).labels().unwrap(), vec!["C3"]);
    }

    #[test]
    fn d4_and_e6_and_f4() {
        let d4 = cm(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]);
        assert_eq!(finite_type_classify(&d4).labels().unwrap(), vec!["D4"]);
        let f4 = cm(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]);
        assert_eq!(finite_type_classify(&f4).labels().unwrap(), vec!["F4"]);
        // E6 in its own labeling
        let e6 = cm(super::type_e(6));
        assert_eq!(finite_type_classify(&e6).labels().unwrap(), vec!["E6"]);
    }

    #[test]
    fn classification_invariant_under_permutation() {
        // B3 with rows/columns permuted by (0 2 1)
        let perm = [2usize, 0, 1];
        let b3 = [vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]];
        let mut p = vec![vec![0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                p[perm[i]][perm[j]] = b3[i][j];
            }
        }
        assert_eq!(finite_type_classify(&cm(p)).labels().unwrap(), vec!["B3"]);
    }

    #[test]
    fn tadpole_is_not_finite() {
        // triangle: not a tree, cannot be finite type
        let t = cm(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert!(!finite_type_classify(&t).finite_type);
    }
}
