//! Generalized Cartan matrices, Cartan schemes and their reflections.
//!
//! A generalized Cartan matrix satisfies
//! (M1) `a_ii = 2` and `a_jk <= 0` off the diagonal, and
//! (M2) `a_ij = 0` implies `a_ji = 0`.
//! A Cartan scheme attaches one such matrix to every object of a finite
//! set together with involutive object maps `r_i`, subject to
//! (C1) `r_i^2 = id` and (C2) `a^N_ij = a^{r_i(N)}_ij`.

mod classify;

pub use classify::{finite_type_classify, Classification, DynkinComponent};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("axiom (M1) fails at ({i},{j}): {what}")]
    M1 { i: usize, j: usize, what: String },
    #[error("axiom (M2) fails at ({i},{j}): a_ij = 0 but a_ji = {aji}")]
    M2 { i: usize, j: usize, aji: i64 },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
}

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Checks (M1) and (M2); reports the first violated axiom with indices.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(CartanError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(CartanError::M1 {
                    i,
                    j: i,
                    what: format!("a_ii = {} (must be 2)", entries[i][i]),
                });
            }
            for j in 0..n {
                if i != j && entries[i][j] > 0 {
                    return Err(CartanError::M1 {
                        i,
                        j,
                        what: format!("a_ij = {} > 0", entries[i][j]),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && entries[i][j] == 0 && entries[j][i] != 0 {
                    return Err(CartanError::M2 {
                        i,
                        j,
                        aji: entries[j][i],
                    });
                }
            }
        }
        Ok(CartanMatrix { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    /// The reflection `s_i` as an integer matrix on `Z^theta`,
    /// `s_i(alpha_j) = alpha_j - a_ij alpha_i` (columns are images of the
    /// standard basis).
    pub fn reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for k in 0..n {
            m[k][k] = 1;
        }
        for j in 0..n {
            m[i][j] = if i == j { -1 } else { -self.entries[i][j] };
        }
        m
    }
}

/// A reflection `s_i^N` of a Cartan scheme, with its `GL(theta, Z)` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionMap {
    pub object: usize,
    pub index: usize,
    pub matrix: Vec<Vec<i64>>,
}

/// A Cartan scheme as a closed finite table: objects with opaque string
/// ids, one Cartan matrix per object, and object maps `r_i`.
#[derive(Debug, Clone)]
pub struct CartanScheme {
    rank: usize,
    object_ids: Vec<String>,
    matrices: Vec<CartanMatrix>,
    /// `reflections[n][i]` is the object index of `r_{i+1}(object n)`.
    reflections: Vec<Vec<usize>>,
}

/// One reported violation from [`CartanScheme::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum SchemeViolation {
    #[serde(rename = "M1")]
    M1 {
        object: String,
        i: usize,
        j: usize,
        value: i64,
    },
    #[serde(rename = "M2")]
    M2 { object: String, i: usize, j: usize },
    #[serde(rename = "C1")]
    C1 {
        object: String,
        i: usize,
        via: String,
        back: String,
    },
    #[serde(rename = "C2")]
    C2 {
        object: String,
        reflected: String,
        i: usize,
        j: usize,
        value: i64,
        reflected_value: i64,
    },
}

impl CartanScheme {
    /// Build a scheme from raw parts.  Matrices are not re-validated here;
    /// use [`CartanScheme::validate`] for the axiom report.
    pub fn new(
        object_ids: Vec<String>,
        matrices: Vec<CartanMatrix>,
        reflections: Vec<Vec<usize>>,
    ) -> Result<Self, CartanError> {
        assert_eq!(object_ids.len(), matrices.len());
        assert_eq!(object_ids.len(), reflections.len());
        let rank = matrices.first().map(|m| m.rank()).unwrap_or(0);
        let mut seen = BTreeMap::new();
        for (k, id) in object_ids.iter().enumerate() {
            if seen.insert(id.clone(), k).is_some() {
                return Err(CartanError::DuplicateObject(id.clone()));
            }
        }
        for refl in &reflections {
            for &t in refl {
                if t >= object_ids.len() {
                    return Err(CartanError::UnknownObject(format!("#{t}")));
                }
            }
        }
        Ok(CartanScheme {
            rank,
            object_ids,
            matrices,
            reflections,
        })
    }

    /// Single-object scheme with all reflections the identity map.
    pub fn standard(id: &str, matrix: CartanMatrix) -> Self {
        let rank = matrix.rank();
        CartanScheme {
            rank,
            object_ids: vec![id.to_string()],
            matrices: vec![matrix],
            reflections: vec![vec![0; rank]],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn object_count(&self) -> usize {
        self.object_ids.len()
    }

    pub fn object_id(&self, n: usize) -> &str {
        &self.object_ids[n]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_ids.iter().position(|x| x == id)
    }

    pub fn matrix(&self, n: usize) -> &CartanMatrix {
        &self.matrices[n]
    }

    /// `r_i(N)` with a 0-based index `i`.
    pub fn reflect_object(&self, n: usize, i: usize) -> usize {
        self.reflections[n][i]
    }

    /// The reflection `s_i^N`; `i` is 0-based.  The matrix fixes `alpha_j`
    /// for every `j != i` with `a^N_ij = 0` and has determinant -1.
    pub fn reflection_matrix(&self, object: &str, i: usize) -> Result<ReflectionMap, CartanError> {
        let n = self
            .object_index(object)
            .ok_or_else(|| CartanError::UnknownObject(object.to_string()))?;
        if i >= self.rank {
            return Err(CartanError::IndexOutOfRange(i + 1, self.rank));
        }
        Ok(ReflectionMap {
            object: n,
            index: i,
            matrix: self.matrices[n].reflection(i),
        })
    }

    /// Checks (M1)(M2) per object, then (C1), then (C2); reports all
    /// violations instead of stopping at the first.
    pub fn validate(&self) -> Vec<SchemeViolation> {
        let mut out = Vec::new();
        for (n, m) in self.matrices.iter().enumerate() {
            let id = &self.object_ids[n];
            for i in 0..self.rank {
                if m.entry(i, i) != 2 {
                    out.push(SchemeViolation::M1 {
                        object: id.clone(),
                        i: i + 1,
                        j: i + 1,
                        value: m.entry(i, i),
                    });
                }
                for j in 0..self.rank {
                    if i != j && m.entry(i, j) > 0 {
                        out.push(SchemeViolation::M1 {
                            object: id.clone(),
                            i: i + 1,
                            j: j + 1,
                            value: m.entry(i, j),
                        });
                    }
                    if i != j && m.entry(i, j) == 0 && m.entry(j, i) != 0 {
                        out.push(SchemeViolation::M2 {
                            object: id.clone(),
                            i: i + 1,
                            j: j + 1,
                        });
                    }
                }
            }
        }
        for n in 0..self.object_count() {
            for i in 0..self.rank {
                let t = self.reflections[n][i];
                let back = self.reflections[t][i];
                if back != n {
                    out.push(SchemeViolation::C1 {
                        object: self.object_ids[n].clone(),
                        i: i + 1,
                        via: self.object_ids[t].clone(),
                        back: self.object_ids[back].clone(),
                    });
                }
            }
        }
        for n in 0..self.object_count() {
            for i in 0..self.rank {
                let t = self.reflections[n][i];
                for j in 0..self.rank {
                    let a = self.matrices[n].entry(i, j);
                    let b = self.matrices[t].entry(i, j);
                    if a != b {
                        out.push(SchemeViolation::C2 {
                            object: self.object_ids[n].clone(),
                            reflected: self.object_ids[t].clone(),
                            i: i + 1,
                            j: j + 1,
                            value: a,
                            reflected_value: b,
                        });
                    }
                }
            }
        }
        out
    }

    /// Whether all objects share one Cartan matrix.
    pub fn is_standard(&self) -> bool {
        self.matrices
            .windows(2)
            .all(|w| w[0].entries() == w[1].entries())
    }
}

/// JSON form of a Cartan scheme; indices `i` in `reflections` are 1-based,
/// missing reflection entries default to the identity map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeJson {
    pub rank: usize,
    pub objects: Vec<SchemeObjectJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reflections: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeObjectJson {
    pub id: String,
    pub cartan: Vec<Vec<i64>>,
}

impl SchemeJson {
    pub fn into_scheme(self) -> Result<CartanScheme, CartanError> {
        let ids: Vec<String> = self.objects.iter().map(|o| o.id.clone()).collect();
        let mut matrices = Vec::with_capacity(ids.len());
        for o in &self.objects {
            let m = CartanMatrix::new(o.cartan.clone())?;
            if m.rank() != self.rank {
                return Err(CartanError::NotSquare {
                    row: 0,
                    len: m.rank(),
                    expected: self.rank,
                });
            }
            matrices.push(m);
        }
        let mut reflections = vec![Vec::new(); ids.len()];
        for (n, id) in ids.iter().enumerate() {
            reflections[n] = vec![n; self.rank]; // default: identity
            if let Some(map) = self.reflections.get(id) {
                for (k, target) in map {
                    let i: usize = k
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1 && i <= self.rank)
                        .ok_or(CartanError::IndexOutOfRange(0, self.rank))?;
                    let t = ids
                        .iter()
                        .position(|x| x == target)
                        .ok_or_else(|| CartanError::UnknownObject(target.clone()))?;
                    reflections[n][i - 1] = t;
                }
            }
        }
        CartanScheme::new(ids, matrices, reflections)
    }

    pub fn from_scheme(scheme: &CartanScheme) -> Self {
        let objects = (0..scheme.object_count())
            .map(|n| SchemeObjectJson {
                id: scheme.object_id(n).to_string(),
                cartan: scheme.matrix(n).entries().to_vec(),
            })
            .collect();
        let mut reflections = BTreeMap::new();
        for n in 0..scheme.object_count() {
            let mut map = BTreeMap::new();
            for i in 0..scheme.rank() {
                map.insert(
                    (i + 1).to_string(),
                    scheme.object_id(scheme.reflect_object(n, i)).to_string(),
                );
            }
            reflections.insert(scheme.object_id(n).to_string(), map);
        }
        SchemeJson {
            rank: scheme.rank(),
            objects,
            reflections,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    #[test]
    fn validate_gcm_accepts_a2() {
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
    }

    #[test]
    fn validate_gcm_rejects_asymmetric_zero() {
        let err = CartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]).unwrap_err();
        assert_eq!(
            err,
            CartanError::M2 {
                i: 0,
                j: 1,
                aji: -1
            }
        );
    }

    #[test]
    fn validate_gcm_rejects_positive_off_diagonal() {
        let err = CartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]).unwrap_err();
        assert!(matches!(err, CartanError::M1 { i: 0, j: 1, .. }));
    }

    #[test]
    fn reflection_matrix_a2() {
        let s = CartanScheme::standard("o", a2());
        let r = s.reflection_matrix("o", 0).unwrap();
        // alpha_1 -> -alpha_1, alpha_2 -> alpha_2 + alpha_1
        assert_eq!(r.matrix, vec![vec![-1, 1], vec![0, 1]]);
        let det = r.matrix[0][0] * r.matrix[1][1] - r.matrix[0][1] * r.matrix[1][0];
        assert_eq!(det, -1);
    }

    #[test]
    fn reflection_matrix_decoupled_is_diagonal() {
        let m = CartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        let s = CartanScheme::standard("o", m);
        let r = s.reflection_matrix("o", 0).unwrap();
        assert_eq!(r.matrix, vec![vec![-1, 0], vec![0, 1]]);
    }

    #[test]
    fn reflection_matrix_b2() {
        let m = CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let s = CartanScheme::standard("o", m);
        let r = s.reflection_matrix("o", 0).unwrap();
        // alpha_2 -> alpha_2 + 2 alpha_1
        assert_eq!(r.matrix[0], vec![-1, 2]);
    }

    #[test]
    fn unknown_object_and_index_errors() {
        let s = CartanScheme::standard("o", a2());
        assert!(matches!(
            s.reflection_matrix("nope", 0),
            Err(CartanError::UnknownObject(_))
        ));
        assert!(matches!(
            s.reflection_matrix("o", 5),
            Err(CartanError::IndexOutOfRange(6, 2))
        ));
    }

    #[test]
    fn validate_scheme_standard_ok() {
        let s = CartanScheme::standard("o", a2());
        assert!(s.validate().is_empty());
    }

    #[test]
    fn validate_scheme_two_objects_swapped() {
        let s = CartanScheme::new(
            vec!["p".into(), "q".into()],
            vec![a2(), a2()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert!(s.validate().is_empty());
    }

    #[test]
    fn validate_scheme_c2_violation() {
        let other = CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let s = CartanScheme::new(
            vec!["p".into(), "q".into()],
            vec![a2(), other],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let violations = s.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, SchemeViolation::C2 { .. })));
    }

    #[test]
    fn reflection_composition_is_identity_across_objects() {
        // s_i^N composed with s_i^{r_i(N)} is the identity on Z^theta;
        // with (C2) the two matrices coincide and are involutions
        let b2 = CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let s = CartanScheme::new(
            vec!["p".into(), "q".into()],
            vec![b2.clone(), b2],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        for n in 0..2 {
            for i in 0..2 {
                let t = s.reflect_object(n, i);
                let a = s.reflection_matrix(s.object_id(n), i).unwrap().matrix;
                let b = s.reflection_matrix(s.object_id(t), i).unwrap().matrix;
                let prod = crate::weylgroupoid::mat_mul(&a, &b);
                assert_eq!(prod, vec![vec![1, 0], vec![0, 1]]);
                let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
                assert_eq!(det, -1);
            }
        }
    }

    #[test]
    fn missing_reflections_default_to_identity() {
        let text = r#"{"rank": 2, "objects": [{"id": "o", "cartan": [[2, -1], [-1, 2]]}]}"#;
        let json: SchemeJson = serde_json::from_str(text).unwrap();
        let s = json.into_scheme().unwrap();
        assert_eq!(s.reflect_object(0, 0), 0);
        assert_eq!(s.reflect_object(0, 1), 0);
        assert!(s.validate().is_empty());
    }

    #[test]
    fn scheme_json_round_trip() {
        let s = CartanScheme::new(
            vec!["p".into(), "q".into()],
            vec![a2(), a2()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let j = SchemeJson::from_scheme(&s);
        let text = serde_json::to_string(&j).unwrap();
        let back: SchemeJson = serde_json::from_str(&text).unwrap();
        let s2 = back.into_scheme().unwrap();
        assert_eq!(s2.object_count(), 2);
        assert_eq!(s2.reflect_object(0, 0), 1);
        assert_eq!(s2.reflect_object(0, 1), 0);
    }
}
