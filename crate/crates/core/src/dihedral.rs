//! Geometry of the dihedral group `I_k`: positive roots, reflections,
//! polygon vertices and conjugacy structure.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// The dihedral group `I_k`, the symmetry group of the regular `k`-gon.
///
/// Roots and reflection matrices are computed once at construction from
/// exact multiples of `pi`, so repeated reflections are bit-stable.
/// Immutable after construction; safe for unrestricted concurrent reads.
#[derive(Debug, Clone)]
pub struct DihedralGroup {
    k: usize,
    roots: Vec<[f64; 2]>,
    reflections: Vec<[[f64; 2]; 2]>,
}

/// A vertex `y_{p,k} = (cos(p*pi/k), sin(p*pi/k))` of the regular `k`-gon,
/// for `0 <= p <= 2k-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub p: usize,
    pub point: [f64; 2],
}

impl DihedralGroup {
    /// Builds `I_k` with the positive roots
    /// `v_j = (sin(j*pi/k), -cos(j*pi/k))`, `0 <= j <= k-1`.
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "dihedral group order must be >= 2, got {k}"
            )));
        }
        let mut roots = Vec::with_capacity(k);
        let mut reflections = Vec::with_capacity(k);
        for j in 0..k {
            let angle = j as f64 * PI / k as f64;
            let (s, c) = angle.sin_cos();
            roots.push([s, -c]);
            let (s2, c2) = (2.0 * angle).sin_cos();
            reflections.push([[c2, s2], [s2, -c2]]);
        }
        Ok(DihedralGroup {
            k,
            roots,
            reflections,
        })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    /// The positive root `v_j`.
    ///
    /// # Panics
    /// Panics if `j >= k`; indices are rejected rather than wrapped.
    pub fn root(&self, j: usize) -> [f64; 2] {
        self.check_index(j);
        self.roots[j]
    }

    pub fn roots(&self) -> &[[f64; 2]] {
        &self.roots
    }

    /// The reflection matrix `sigma_j` (symmetric, orthogonal, det -1).
    pub fn reflection(&self, j: usize) -> &[[f64; 2]; 2] {
        self.check_index(j);
        &self.reflections[j]
    }

    /// `x sigma_j = x - 2 <x, v_j> v_j`.
    pub fn reflect(&self, j: usize, x: [f64; 2]) -> [f64; 2] {
        let m = self.reflection(j);
        [
            m[0][0] * x[0] + m[0][1] * x[1],
            m[1][0] * x[0] + m[1][1] * x[1],
        ]
    }

    /// `<x, v_j>`, which equals `r sin(j*pi/k - theta)` in polar coordinates.
    pub fn root_pairing(&self, j: usize, x: [f64; 2]) -> f64 {
        let v = self.root(j);
        x[0] * v[0] + x[1] * v[1]
    }

    /// Vertex `y_{p,k}` for `0 <= p <= 2k-1`; `y_{p+k} = -y_p`.
    pub fn vertex(&self, p: usize) -> Vertex {
        assert!(
            p < 2 * self.k,
            "vertex index {p} out of range for I_{}",
            self.k
        );
        let angle = p as f64 * PI / self.k as f64;
        let (s, c) = angle.sin_cos();
        Vertex { p, point: [c, s] }
    }

    /// Root indices grouped by conjugacy class: two classes (even/odd index)
    /// for even `k`, a single class for odd `k`.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        if self.k.is_multiple_of(2) {
            vec![
                (0..self.k).step_by(2).collect(),
                (1..self.k).step_by(2).collect(),
            ]
        } else {
            vec![(0..self.k).collect()]
        }
    }

    fn check_index(&self, j: usize) {
        assert!(
            j < self.k,
            "root index {j} out of range for I_{} (indices are not wrapped)",
            self.k
        );
    }
}
