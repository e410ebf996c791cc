//! Finite simplicial complexes with Z/2 cochain operations.
//!
//! Alongside chain-level homology this module computes cohomology classes
//! with explicit cocycle representatives, cup products via the front/back
//! face rule on ordered simplices, and the integral Bockstein.

use crate::error::{GfhError, Result};
use crate::homlin::{ChainComplex, GradedRanks, Ring, SparseMatrix};
use std::collections::{BTreeMap, BTreeSet};

/// A finite simplicial complex on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `simplices[k]` lists the k-simplices as sorted vertex tuples, in
    /// lexicographic order.
    simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Build the closure of a facet list. Vertex labels may be arbitrary;
    /// they are compacted preserving order.
    pub fn from_facets(facets: &[Vec<u32>]) -> Result<Self> {
        if facets.is_empty() {
            return Err(GfhError::InvalidInput("empty facet list".into()));
        }
        let labels: BTreeSet<u32> = facets.iter().flatten().copied().collect();
        let relabel: BTreeMap<u32, u32> =
            labels.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let dim = facets.iter().map(|f| f.len() - 1).max().unwrap();
        let mut sets: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); dim + 1];
        for f in facets {
            let mut s: Vec<u32> = f.iter().map(|v| relabel[v]).collect();
            s.sort_unstable();
            let n = s.len();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(GfhError::InvalidInput(format!("facet {f:?} repeats a vertex")));
            }
            // Insert every subset (face) of the facet.
            for mask in 1u32..(1 << n) {
                let face: Vec<u32> =
                    (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<u32>>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(SimplicialComplex { vertex_count: labels.len(), simplices })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        &self.simplices[k]
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    fn index_of(&self, k: usize, simplex: &[u32]) -> Option<usize> {
        self.simplices[k].binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    /// The simplicial chain complex over the integers.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let mut dims = BTreeMap::new();
        for (k, list) in self.simplices.iter().enumerate() {
            dims.insert(k as i64, list.len());
        }
        let mut boundaries = BTreeMap::new();
        for k in 1..=self.dim() {
            let rows = self.simplex_count(k - 1);
            let cols = self.simplex_count(k);
            let mut entries = Vec::new();
            for (j, s) in self.simplices[k].iter().enumerate() {
                for (i_omit, _) in s.iter().enumerate() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != i_omit)
                        .map(|(_, &v)| v)
                        .collect();
                    let r = self
                        .index_of(k - 1, &face)
                        .ok_or_else(|| GfhError::Internal("missing face".into()))?;
                    let sign = if i_omit % 2 == 0 { 1 } else { -1 };
                    entries.push((r, j, sign));
                }
            }
            boundaries.insert(k as i64, SparseMatrix::new(rows, cols, entries)?);
        }
        ChainComplex::new(dims, boundaries)
    }

    pub fn homology(&self, ring: Ring) -> Result<GradedRanks> {
        self.chain_complex()?.homology(ring)
    }

    /// Reduced homology: one copy of the coefficients dropped in degree 0.
    pub fn reduced_homology(&self, ring: Ring) -> Result<GradedRanks> {
        let mut h = self.homology(ring)?;
        let mut deg0 = h.get(0);
        if deg0.free == 0 {
            return Err(GfhError::Internal("empty complex has no degree-0 class".into()));
        }
        deg0.free -= 1;
        let mut out = GradedRanks::new();
        for (&k, v) in h.iter() {
            if k != 0 {
                out.insert(k, v.clone());
            }
        }
        out.insert(0, deg0);
        h = out;
        Ok(h)
    }

    /// Number of path components.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        if self.simplices.len() > 1 {
            for e in &self.simplices[1] {
                let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..self.vertex_count).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Unreduced suspension: join with two fresh apex vertices.
    pub fn suspension(&self) -> SimplicialComplex {
        let north = self.vertex_count as u32;
        let south = north + 1;
        let mut facets = Vec::new();
        // Suspend every maximal simplex (faces are generated by closure).
        for (k, list) in self.simplices.iter().enumerate() {
            for s in list {
                if !self.has_coface(k, s) {
                    let mut f1 = s.clone();
                    f1.push(north);
                    let mut f2 = s.clone();
                    f2.push(south);
                    facets.push(f1);
                    facets.push(f2);
                }
            }
        }
        SimplicialComplex::from_facets(&facets).expect("suspension of a valid complex is valid")
    }

    fn has_coface(&self, k: usize, simplex: &[u32]) -> bool {
        if k + 1 >= self.simplices.len() {
            return false;
        }
        self.simplices[k + 1].iter().any(|s| simplex.iter().all(|v| s.contains(v)))
    }

    /// Wedge at vertex 0 of both complexes.
    pub fn wedge(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.vertex_count as u32;
        let mut facets: Vec<Vec<u32>> = Vec::new();
        for (k, list) in self.simplices.iter().enumerate() {
            for s in list {
                if !self.has_coface(k, s) {
                    facets.push(s.clone());
                }
            }
        }
        for (k, list) in other.simplices.iter().enumerate() {
            for s in list {
                if !other.has_coface(k, s) {
                    facets.push(
                        s.iter().map(|&v| if v == 0 { 0 } else { v + offset - 1 }).collect(),
                    );
                }
            }
        }
        SimplicialComplex::from_facets(&facets).expect("wedge of valid complexes is valid")
    }

    // -- Z/2 cochain structure -------------------------------------------

    /// Coboundary of a mod-2 cochain in degree `k` (a bit per k-simplex).
    pub fn coboundary(&self, k: usize, cochain: &[bool]) -> Vec<bool> {
        let n = self.simplex_count(k + 1);
        let mut out = vec![false; n];
        for (j, s) in self.simplices[k + 1].iter().enumerate() {
            let mut bit = false;
            for i_omit in 0..s.len() {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != i_omit)
                    .map(|(_, &v)| v)
                    .collect();
                if cochain[self.index_of(k, &face).unwrap()] {
                    bit ^= true;
                }
            }
            out[j] = bit;
        }
        out
    }

    /// Basis of `H^k(-; Z/2)` as explicit cocycle representatives.
    pub fn cohomology_basis(&self, k: usize) -> Vec<Vec<bool>> {
        if k > self.dim() {
            return Vec::new();
        }
        let n = self.simplex_count(k);
        // Kernel of the coboundary out of degree k.
        let mut kernel = f2_kernel_basis(n, |v| {
            if k == self.dim() {
                Vec::new()
            } else {
                bools_to_bits(&self.coboundary(k, &bits_to_bools(v, n)))
            }
        });
        // Image of the coboundary into degree k.
        let mut reducer = F2Reducer::new();
        if k > 0 {
            let m = self.simplex_count(k - 1);
            for i in 0..m {
                let mut basis_vec = vec![false; m];
                basis_vec[i] = true;
                let img = self.coboundary(k - 1, &basis_vec);
                reducer.insert(bools_to_bits(&img));
            }
        }
        // Quotient representatives: kernel vectors independent of the image.
        let mut out = Vec::new();
        for v in kernel.drain(..) {
            if reducer.insert(v.clone()) {
                out.push(bits_to_bools(&v, n));
            }
        }
        out
    }

    /// Cup product of cochains via the front/back face rule.
    pub fn cup(&self, p: usize, alpha: &[bool], q: usize, beta: &[bool]) -> Vec<bool> {
        let n = self.simplex_count(p + q);
        let mut out = vec![false; n];
        for (j, s) in self.simplices.get(p + q).map_or([].iter(), |v| v.iter()).enumerate() {
            let front = &s[..=p];
            let back = &s[p..];
            let a = self.index_of(p, front).map_or(false, |i| alpha[i]);
            let b = self.index_of(q, back).map_or(false, |i| beta[i]);
            out[j] = a && b;
        }
        out
    }

    /// Integral Bockstein (first Steenrod square) of a mod-2 cocycle.
    pub fn bockstein(&self, k: usize, cocycle: &[bool]) -> Vec<bool> {
        if k + 1 > self.dim() {
            return vec![false; self.simplex_count(k + 1)];
        }
        let n = self.simplex_count(k + 1);
        let mut out = vec![false; n];
        for (j, s) in self.simplices[k + 1].iter().enumerate() {
            // Integer coboundary of the 0/1 lift.
            let mut total: i64 = 0;
            for i_omit in 0..s.len() {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != i_omit)
                    .map(|(_, &v)| v)
                    .collect();
                if cocycle[self.index_of(k, &face).unwrap()] {
                    total += if i_omit % 2 == 0 { 1 } else { -1 };
                }
            }
            debug_assert!(total.rem_euclid(2) == 0, "input must be a mod-2 cocycle");
            out[j] = (total.div_euclid(2)).rem_euclid(2) == 1;
        }
        out
    }

    /// Is this cochain a coboundary (the zero class)?
    pub fn is_coboundary(&self, k: usize, cochain: &[bool]) -> bool {
        if cochain.iter().all(|&b| !b) {
            return true;
        }
        if k == 0 {
            return false;
        }
        let m = self.simplex_count(k - 1);
        let mut reducer = F2Reducer::new();
        for i in 0..m {
            let mut basis_vec = vec![false; m];
            basis_vec[i] = true;
            reducer.insert(bools_to_bits(&self.coboundary(k - 1, &basis_vec)));
        }
        !reducer.insert(bools_to_bits(cochain))
    }
}

// -- small F2 linear algebra helpers ---------------------------------------

fn bools_to_bits(v: &[bool]) -> Vec<u64> {
    let mut out = vec![0u64; (v.len() + 63) / 64];
    for (i, &b) in v.iter().enumerate() {
        if b {
            out[i >> 6] |= 1 << (i & 63);
        }
    }
    out
}

fn bits_to_bools(v: &[u64], n: usize) -> Vec<bool> {
    (0..n).map(|i| v[i >> 6] >> (i & 63) & 1 == 1).collect()
}

/// Incremental row reducer over F2; `insert` returns false when the vector
/// already lies in the span.
struct F2Reducer {
    rows: Vec<(usize, Vec<u64>)>, // (pivot bit, vector)
}

impl F2Reducer {
    fn new() -> Self {
        F2Reducer { rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        loop {
            let Some(p) = leading_bit(&v) else { return false };
            match self.rows.iter().find(|(rp, _)| *rp == p) {
                None => {
                    self.rows.push((p, v));
                    return true;
                }
                Some((_, row)) => {
                    for (a, b) in v.iter_mut().zip(row) {
                        *a ^= b;
                    }
                }
            }
        }
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    for (w, &word) in v.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

/// Basis of the kernel of a linear map given by its action on basis vectors.
fn f2_kernel_basis<F>(n: usize, apply: F) -> Vec<Vec<u64>>
where
    F: Fn(&[u64]) -> Vec<u64>,
{
    // Gaussian elimination on the augmented (image | preimage) rows.
    let mut rows: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
    let mut kernel = Vec::new();
    for i in 0..n {
        let mut pre = vec![0u64; (n + 63) / 64];
        pre[i >> 6] |= 1 << (i & 63);
        let mut img = apply(&pre);
        loop {
            match leading_bit(&img) {
                None => {
                    kernel.push(pre);
                    break;
                }
                Some(p) => {
                    if let Some((ri, rp)) = rows.iter().find_map(|(rimg, rpre)| {
                        (leading_bit(rimg) == Some(p)).then_some((rimg.clone(), rpre.clone()))
                    }) {
                        for (a, b) in img.iter_mut().zip(&ri) {
                            *a ^= b;
                        }
                        for (a, b) in pre.iter_mut().zip(&rp) {
                            *a ^= b;
                        }
                    } else {
                        rows.push((img, pre));
                        break;
                    }
                }
            }
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlin::{DegreeRanks, GradedRanks};

    pub fn sphere_facets(n: usize) -> Vec<Vec<u32>> {
        // Boundary of the (n+1)-simplex.
        let verts: Vec<u32> = (0..=(n as u32 + 1)).collect();
        let mut out = Vec::new();
        for omit in 0..verts.len() {
            out.push(verts.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v).collect());
        }
        out
    }

    fn torus_facets() -> Vec<Vec<u32>> {
        (0..7u32).flat_map(|i| {
            vec![vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]
        })
        .collect()
    }

    pub fn rp2_facets() -> Vec<Vec<u32>> {
        vec![
            vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 5], vec![1, 4, 6], vec![1, 5, 6],
            vec![2, 3, 6], vec![2, 4, 5], vec![2, 5, 6], vec![3, 4, 5], vec![3, 4, 6],
        ]
    }

    #[test]
    fn sphere_homology() {
        for n in 1..=3usize {
            let c = SimplicialComplex::from_facets(&sphere_facets(n)).unwrap();
            let h = c.reduced_homology(Ring::Z).unwrap();
            assert_eq!(h, GradedRanks::from_free(&[(n as i64, 1)]), "S^{n}");
        }
    }

    #[test]
    fn torus_homology_and_f_vector() {
        let t = SimplicialComplex::from_facets(&torus_facets()).unwrap();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        let h = t.homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn rp2_has_two_torsion() {
        let c = SimplicialComplex::from_facets(&rp2_facets()).unwrap();
        assert_eq!(c.f_vector(), vec![6, 15, 10]);
        let hz = c.homology(Ring::Z).unwrap();
        let mut expected = GradedRanks::new();
        expected.insert(0, DegreeRanks::free(1));
        expected.insert(1, DegreeRanks { free: 0, torsion: vec![2] });
        assert_eq!(hz, expected);
        let h2 = c.homology(Ring::Z2).unwrap();
        assert_eq!(h2, GradedRanks::from_free(&[(0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn suspension_shifts_reduced_homology() {
        let t = SimplicialComplex::from_facets(&torus_facets()).unwrap();
        let st = t.suspension();
        let h = st.reduced_homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(2, 2), (3, 1)]));
    }

    #[test]
    fn wedge_adds_reduced_homology() {
        let s1 = SimplicialComplex::from_facets(&sphere_facets(1)).unwrap();
        let s2 = SimplicialComplex::from_facets(&sphere_facets(2)).unwrap();
        let w = s1.wedge(&s2).wedge(&s1);
        let h = w.reduced_homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(1, 2), (2, 1)]));
        assert_eq!(w.components(), 1);
    }

    #[test]
    fn torus_cup_pairing_is_nondegenerate() {
        let t = SimplicialComplex::from_facets(&torus_facets()).unwrap();
        let h1 = t.cohomology_basis(1);
        assert_eq!(h1.len(), 2);
        // The two generators pair nontrivially into H^2.
        let cup = t.cup(1, &h1[0], 1, &h1[1]);
        assert!(!t.is_coboundary(2, &cup));
        // Over Z/2 each generator squares to zero on the torus.
        for a in &h1 {
            let sq = t.cup(1, a, 1, a);
            assert!(t.is_coboundary(2, &sq));
        }
    }

    #[test]
    fn rp2_bockstein_and_cup_square_detect_the_generator() {
        let c = SimplicialComplex::from_facets(&rp2_facets()).unwrap();
        let h1 = c.cohomology_basis(1);
        assert_eq!(h1.len(), 1);
        let x = &h1[0];
        // Sq^1 x = x cup x != 0 on the projective plane.
        let sq_cup = c.cup(1, x, 1, x);
        assert!(!c.is_coboundary(2, &sq_cup));
        let sq_bock = c.bockstein(1, x);
        assert!(!c.is_coboundary(2, &sq_bock));
        // And the two computations agree in cohomology.
        let diff: Vec<bool> = sq_cup.iter().zip(&sq_bock).map(|(&a, &b)| a ^ b).collect();
        assert!(c.is_coboundary(2, &diff));
    }

    #[test]
    fn cocycles_returned_are_cocycles() {
        let t = SimplicialComplex::from_facets(&torus_facets()).unwrap();
        for k in 0..=2usize {
            for v in t.cohomology_basis(k) {
                if k < t.dim() {
                    assert!(t.coboundary(k, &v).iter().all(|&b| !b));
                }
            }
        }
    }
}
