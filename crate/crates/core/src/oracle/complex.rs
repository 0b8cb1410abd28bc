//! Upper Koszul simplicial complexes and their reduced homology.
//!
//! Faces are bitmasks over the ambient variables (bit `k-1` is `x_k`), so the
//! ambient ring may have at most 64 variables.

use std::collections::HashMap;

use serde::Serialize;

use super::rank::SignedMatrix;
use super::FieldSpec;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Largest vertex set whose subsets are enumerated.
pub const MAX_COMPLEX_VERTICES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplexFaces {
    /// 1-based vertex labels.
    vertices: Vec<usize>,
    /// `faces[d + 1]` holds the faces of dimension `d`; `faces[0]` is `[∅]`
    /// unless the complex is void.
    faces: Vec<Vec<u64>>,
}

fn mask_to_vertices(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

impl SimplicialComplexFaces {
    /// The complex generated by `facets` (bitmasks), closed under subsets.
    pub fn from_facets(vertex_mask: u64, facets: &[u64]) -> Result<Self> {
        let nv = vertex_mask.count_ones() as usize;
        if nv > MAX_COMPLEX_VERTICES {
            return Err(Error::CapExceeded {
                what: "complex vertices",
                count: nv as u128,
                cap: MAX_COMPLEX_VERTICES as u128,
            });
        }
        let mut faces: Vec<Vec<u64>> = Vec::new();
        if !facets.is_empty() {
            // submask walk of the vertex set, in increasing order
            let mut sub = 0u64;
            loop {
                if facets.iter().any(|&f| sub & !f == 0) {
                    let level = sub.count_ones() as usize;
                    if faces.len() <= level {
                        faces.resize(level + 1, Vec::new());
                    }
                    faces[level].push(sub);
                }
                if sub == vertex_mask {
                    break;
                }
                sub = (sub.wrapping_sub(vertex_mask)) & vertex_mask;
            }
        }
        let cx = SimplicialComplexFaces {
            vertices: mask_to_vertices(vertex_mask),
            faces,
        };
        debug_assert!(cx.is_closed());
        Ok(cx)
    }

    pub fn void() -> Self {
        SimplicialComplexFaces {
            vertices: Vec::new(),
            faces: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces of dimension `d` (`d = -1` is the empty face), as sorted
    /// 1-based vertex lists.
    pub fn faces_of_dim(&self, d: isize) -> Vec<Vec<usize>> {
        usize::try_from(d + 1)
            .ok()
            .and_then(|l| self.faces.get(l))
            .map(|fs| fs.iter().map(|&f| mask_to_vertices(f)).collect())
            .unwrap_or_default()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    fn is_closed(&self) -> bool {
        self.faces.iter().flatten().all(|&f| {
            (0..64)
                .filter(|b| f >> b & 1 == 1)
                .all(|b| self.faces[(f.count_ones() - 1) as usize].contains(&(f & !(1 << b))))
        })
    }
}

/// `K^b(I)`: squarefree `σ ⊆ supp(b)` with `x^b / x^σ ∈ I`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, b: &Monomial) -> Result<SimplicialComplexFaces> {
    if b.ambient() != ideal.ambient() {
        return Err(Error::AmbientMismatch {
            left: ideal.ambient(),
            right: b.ambient(),
        });
    }
    if ideal.ambient() > 64 {
        return Err(Error::invalid(
            "upper Koszul complexes support at most 64 variables",
        ));
    }
    let be = b.exponents();
    let support = be
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (k, _)| m | 1 << k);
    // x^b / x^σ is divisible by g | b iff σ avoids every k with g_k = b_k > 0
    let facets: Vec<u64> = ideal
        .generators()
        .iter()
        .filter(|g| g.divides_unchecked(b))
        .map(|g| {
            let tight = g
                .exponents()
                .iter()
                .zip(be)
                .enumerate()
                .filter(|(_, (ge, bk))| ge == bk && **bk > 0)
                .fold(0u64, |m, (k, _)| m | 1 << k);
            support & !tight
        })
        .collect();
    if facets.is_empty() {
        return Ok(SimplicialComplexFaces::void());
    }
    SimplicialComplexFaces::from_facets(support, &facets)
}

/// Entry `k` is `dim H̃_{k-1}`; the vector is empty for the void complex.
pub fn reduced_homology_dims(cx: &SimplicialComplexFaces, field: FieldSpec) -> Vec<u64> {
    let levels = cx.faces.len();
    if levels == 0 {
        return Vec::new();
    }
    let index: Vec<HashMap<u64, usize>> = cx
        .faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // ranks[l] = rank of the boundary from level l to level l-1; ranks[0] = 0
    let mut ranks = vec![0usize; levels + 1];
    for l in 1..levels {
        let mut m = SignedMatrix::new(cx.faces[l - 1].len());
        for &f in &cx.faces[l] {
            let mut row = Vec::with_capacity(l);
            for b in (0..64).filter(|b| f >> b & 1 == 1) {
                let pos = (f & ((1u64 << b) - 1)).count_ones();
                let col = index[l - 1][&(f & !(1u64 << b))];
                row.push((col, pos % 2 == 1));
            }
            m.push_row(row);
        }
        ranks[l] = m.rank(field.characteristic());
    }
    (0..levels)
        .map(|l| (cx.faces[l].len() - ranks[l] - ranks[l + 1]) as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn homology(facets: &[&[usize]], p: u32) -> Vec<u64> {
        let masks: Vec<u64> = facets
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
            .collect();
        let all = masks.iter().fold(0, |a, m| a | m);
        let cx = SimplicialComplexFaces::from_facets(all, &masks).unwrap();
        reduced_homology_dims(&cx, FieldSpec::new(p).unwrap())
    }

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    #[test]
    fn fixed_complexes() {
        assert_eq!(homology(&[&[1], &[2]], 2), vec![0, 1]);
        assert!(trim(homology(&[&[1]], 2)).is_empty());
        assert_eq!(
            trim(homology(&[&[1, 2], &[2, 3], &[1, 3]], 2)),
            vec![0, 0, 1]
        );
        assert_eq!(
            trim(homology(&[&[1, 2], &[2, 3], &[1, 3]], 3)),
            vec![0, 0, 1]
        );
        // only the empty face
        assert_eq!(homology(&[&[]], 2), vec![1]);
        assert!(
            reduced_homology_dims(&SimplicialComplexFaces::void(), FieldSpec::default()).is_empty()
        );
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // 6-vertex RP^2: H̃_1 = H̃_2 = GF(2), acyclic over GF(3)
        let rp2: &[&[usize]] = &[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[2, 4, 5],
            &[2, 4, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ];
        assert_eq!(trim(homology(rp2, 2)), vec![0, 0, 1, 1]);
        assert!(trim(homology(rp2, 3)).is_empty());
    }

    #[test]
    fn koszul_examples() {
        let n = 3;
        let i = MonomialIdeal::new(
            n,
            vec![
                Monomial::parse("x1*x2", n).unwrap(),
                Monomial::parse("x2*x3", n).unwrap(),
            ],
        )
        .unwrap();
        let cx = upper_koszul_complex(&i, &Monomial::parse("x1*x2*x3", n).unwrap()).unwrap();
        assert_eq!(cx.faces_of_dim(-1), vec![Vec::<usize>::new()]);
        assert_eq!(cx.faces_of_dim(0), vec![vec![1], vec![3]]);
        assert!(cx.faces_of_dim(1).is_empty());

        let p = MonomialIdeal::new(1, vec![Monomial::parse("x1", 1).unwrap()]).unwrap();
        let cx = upper_koszul_complex(&p, &Monomial::parse("x1", 1).unwrap()).unwrap();
        assert_eq!(cx.num_faces(), 1);

        let cx = upper_koszul_complex(&i, &Monomial::parse("x1*x3", n).unwrap()).unwrap();
        assert!(cx.is_void());
    }
}
