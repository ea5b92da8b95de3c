use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::morphism::ModuleMorphism;
use crate::exactalg::{snf, Elem, Matrix, Ring};
use crate::error::{Error, Result};

/// A finitely presented module `R^g / (column span of relations)`.
///
/// Elements are column vectors of length `generators`. The invariant
/// factor decomposition is computed on first use and cached.
#[derive(Clone)]
pub struct FpModule {
    ring: Ring,
    generators: usize,
    relations: Matrix,
    normal: OnceLock<Arc<Normalization>>,
}

/// Cached decomposition `M ≅ ⊕ R/(d_i) ⊕ R^rank`.
///
/// `to` maps generator vectors to canonical coordinates and `from` maps
/// canonical coordinates back. Coordinates are ordered torsion first, then
/// free.
#[derive(Clone, Debug)]
pub(crate) struct Normalization {
    pub factors: Vec<Elem>,
    pub free_rank: usize,
    pub to: Matrix,
    pub from: Matrix,
}

impl Normalization {
    pub fn len(&self) -> usize {
        self.factors.len() + self.free_rank
    }

    /// Modulus of canonical coordinate `i`; zero for free coordinates.
    pub fn modulus(&self, ring: &Ring, i: usize) -> Elem {
        self.factors.get(i).cloned().unwrap_or_else(|| ring.zero())
    }
}

/// The public face of [`FpModule::normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub invariant_factors: Vec<Elem>,
    pub free_rank: usize,
    /// `M -> ⊕ R/(d_i) ⊕ R^rank`.
    pub to_canonical: ModuleMorphism,
    /// `⊕ R/(d_i) ⊕ R^rank -> M`.
    pub from_canonical: ModuleMorphism,
}

impl FpModule {
    /// `relations` must have one row per generator; its columns are the
    /// relations.
    pub fn new(ring: Ring, generators: usize, relations: Matrix) -> Result<FpModule> {
        if relations.rows() != generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(FpModule { ring, generators, relations, normal: OnceLock::new() })
    }

    pub fn zero(ring: Ring) -> FpModule {
        FpModule::free(ring, 0)
    }

    pub fn free(ring: Ring, rank: usize) -> FpModule {
        FpModule::new(ring, rank, Matrix::zeros(&ring, rank, 0)).expect("shape")
    }

    /// `R/(d)` on one generator; `R` itself when `d = 0`.
    pub fn cyclic(ring: Ring, d: Elem) -> FpModule {
        let rel = if ring.is_zero(&d) {
            Matrix::zeros(&ring, 1, 0)
        } else {
            Matrix::from_vec(1, 1, vec![d]).expect("shape")
        };
        FpModule::new(ring, 1, rel).expect("shape")
    }

    /// `⊕ R/(d_i) ⊕ R^free_rank` on `factors.len() + free_rank` generators.
    pub fn from_invariants(ring: Ring, factors: &[Elem], free_rank: usize) -> FpModule {
        let n = factors.len() + free_rank;
        let mut rel = Matrix::zeros(&ring, n, factors.len());
        for (i, d) in factors.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        FpModule::new(ring, n, rel).expect("shape")
    }

    pub fn direct_sum(ring: Ring, parts: &[&FpModule]) -> FpModule {
        let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.relations).collect();
        let rel = Matrix::block_diag(&ring, &blocks);
        FpModule::new(ring, rel.rows(), rel).expect("shape")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub(crate) fn normalization(&self) -> &Normalization {
        self.normal.get_or_init(|| Arc::new(self.compute_normalization()))
    }

    fn compute_normalization(&self) -> Normalization {
        let ring = &self.ring;
        let s = snf(ring, &self.relations);
        // Index i of the diagonal survives unless d_i is a unit.
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for i in 0..self.generators {
            if i < s.rank {
                let d = s.d.get(i, i);
                if !ring.is_unit(d) {
                    torsion.push((i, d.clone()));
                }
            } else {
                free.push(i);
            }
        }
        let kept: Vec<usize> = torsion.iter().map(|(i, _)| *i).chain(free.iter().copied()).collect();
        Normalization {
            factors: torsion.into_iter().map(|(_, d)| d).collect(),
            free_rank: free.len(),
            to: s.p.select_rows(kept.iter().copied()),
            from: s.p_inv.select_cols(kept.iter().copied()),
        }
    }

    /// Invariant factors `d_1 | d_2 | ...` (normalized non-units).
    pub fn invariant_factors(&self) -> &[Elem] {
        &self.normalization().factors
    }

    pub fn free_rank(&self) -> usize {
        self.normalization().free_rank
    }

    /// The invariant factor decomposition with explicit change-of-basis
    /// morphisms in both directions.
    pub fn normalize(&self) -> Normalized {
        let n = self.normalization();
        let canon = self.canonical();
        Normalized {
            invariant_factors: n.factors.clone(),
            free_rank: n.free_rank,
            to_canonical: ModuleMorphism::unchecked(self.clone(), canon.clone(), n.to.clone()),
            from_canonical: ModuleMorphism::unchecked(canon, self.clone(), n.from.clone()),
        }
    }

    /// `⊕ R/(d_i) ⊕ R^rank` for this module's invariants.
    pub fn canonical(&self) -> FpModule {
        let n = self.normalization();
        FpModule::from_invariants(self.ring, &n.factors, n.free_rank)
    }

    pub fn is_zero_module(&self) -> bool {
        self.normalization().len() == 0
    }

    /// `|M|`, or `None` for modules with a free part.
    pub fn order(&self) -> Option<BigUint> {
        let n = self.normalization();
        if n.free_rank > 0 {
            return None;
        }
        n.factors.iter().try_fold(BigUint::one(), |acc, d| Some(acc * self.ring.quotient_order(d)?))
    }

    /// Generator of the annihilator ideal: the largest invariant factor,
    /// zero when there is a free part, one for the zero module.
    pub fn annihilator(&self) -> Elem {
        let n = self.normalization();
        if n.free_rank > 0 {
            return self.ring.zero();
        }
        n.factors.last().cloned().unwrap_or_else(|| self.ring.one())
    }

    /// Canonical coordinates of an element: unique per class.
    pub fn coords(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        let n = self.normalization();
        let raw = n.to.mul_vec(&self.ring, x)?;
        Ok(raw
            .iter()
            .enumerate()
            .map(|(i, v)| self.ring.residue(v, &n.modulus(&self.ring, i)))
            .collect())
    }

    /// Generator vector for canonical coordinates.
    pub fn from_coords(&self, c: &[Elem]) -> Result<Vec<Elem>> {
        self.normalization().from.mul_vec(&self.ring, c)
    }

    /// Reduces an element to the representative of its class produced by
    /// round-tripping through canonical coordinates.
    pub fn reduce(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.from_coords(&self.coords(x)?)
    }

    pub fn is_zero_element(&self, x: &[Elem]) -> Result<bool> {
        Ok(self.coords(x)?.iter().all(|c| self.ring.is_zero(c)))
    }

    pub fn elements_equal(&self, x: &[Elem], y: &[Elem]) -> Result<bool> {
        Ok(self.coords(x)? == self.coords(y)?)
    }

    pub fn zero_element(&self) -> Vec<Elem> {
        vec![self.ring.zero(); self.generators]
    }

    /// The `i`-th generator as an element.
    pub fn generator(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero_element();
        v[i] = self.ring.one();
        v
    }

    pub fn add_elements(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(a, b)| self.ring.add(a, b)).collect()
    }

    pub fn scale_element(&self, r: &Elem, x: &[Elem]) -> Vec<Elem> {
        x.iter().map(|a| self.ring.mul(r, a)).collect()
    }

    /// Every element, as generator vectors, when the module is finite
    /// with at most `bound` elements.
    pub fn elements(&self, bound: u64) -> Option<Vec<Vec<Elem>>> {
        let order = self.order()?.to_u64()?;
        if order > bound {
            return None;
        }
        let n = self.normalization();
        let residues: Vec<Vec<Elem>> = n.factors.iter().map(|d| self.ring.residues(d)).collect();
        let mut out = Vec::with_capacity(order as usize);
        let mut idx = vec![0usize; residues.len()];
        loop {
            let c: Vec<Elem> = idx.iter().zip(&residues).map(|(&k, r)| r[k].clone()).collect();
            out.push(self.from_coords(&c).expect("shape"));
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Some(out);
                }
                idx[pos] += 1;
                if idx[pos] < residues[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Smallest-presentation form: generators killed by a relation with a
    /// unit coefficient are eliminated. Returns the pruned module and
    /// mutually inverse isomorphisms `self -> pruned` and `pruned -> self`.
    pub fn pruned(&self) -> (FpModule, ModuleMorphism, ModuleMorphism) {
        let ring = self.ring;
        let mut gens: Vec<usize> = (0..self.generators).collect();
        // `to` expresses original generators in the surviving ones.
        let mut to = Matrix::identity(&ring, self.generators);
        let mut rel = self.relations.clone();
        loop {
            let hit = (0..rel.cols()).find_map(|j| {
                (0..rel.rows()).find(|&i| ring.is_unit(rel.get(i, j))).map(|i| (i, j))
            });
            let Some((i, j)) = hit else { break };
            let u = ring.unit_inverse(rel.get(i, j)).expect("unit");
            let col: Vec<Elem> = rel.column(j).iter().map(|x| ring.mul(&u, x)).collect();
            // e_i = -sum_{k != i} col[k] e_k
            let keep: Vec<usize> = (0..rel.rows()).filter(|&k| k != i).collect();
            let mut sub = Matrix::zeros(&ring, keep.len(), rel.rows());
            for (r, &k) in keep.iter().enumerate() {
                sub.set(r, k, ring.one());
                sub.set(r, i, ring.neg(&col[k]));
            }
            rel = sub.mul(&ring, &rel).expect("shape");
            to = sub.mul(&ring, &to).expect("shape");
            gens.remove(i);
        }
        let nonzero: Vec<usize> = (0..rel.cols()).filter(|&j| rel.column(j).iter().any(|x| !ring.is_zero(x))).collect();
        let rel = rel.select_cols(nonzero);
        let pruned = FpModule::new(ring, gens.len(), rel).expect("shape");
        let mut from = Matrix::zeros(&ring, self.generators, gens.len());
        for (c, &g) in gens.iter().enumerate() {
            from.set(g, c, ring.one());
        }
        (
            pruned.clone(),
            ModuleMorphism::unchecked(self.clone(), pruned.clone(), to),
            ModuleMorphism::unchecked(pruned, self.clone(), from),
        )
    }

    /// Same normalized invariants.
    pub fn is_isomorphic(&self, other: &FpModule) -> bool {
        self.ring == other.ring
            && self.invariant_factors() == other.invariant_factors()
            && self.free_rank() == other.free_rank()
    }

    /// Human-readable invariants, e.g. `Z/(2) ⊕ Z/(4)`.
    pub fn describe(&self) -> String {
        let n = self.normalization();
        let base = match self.ring {
            Ring::Integers => "Z".to_string(),
            r => r.to_string(),
        };
        let mut parts: Vec<String> =
            n.factors.iter().map(|d| format!("{base}/({})", self.ring.format(d))).collect();
        match n.free_rank {
            0 => {}
            1 => parts.push(base.clone()),
            k => parts.push(format!("{base}^{k}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl PartialEq for FpModule {
    /// Equality of presentations, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators && self.relations == other.relations
    }
}

impl Eq for FpModule {}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpModule")
            .field("ring", &self.ring)
            .field("generators", &self.generators)
            .field("relations", &self.relations)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Elem {
        Elem::from(n)
    }

    #[test]
    fn normalize_examples() {
        let r = Ring::Integers;
        let m = FpModule::new(r, 2, Matrix::int(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(m.invariant_factors(), &[z(2), z(4)]);
        assert_eq!(m.free_rank(), 0);

        let m = FpModule::new(r, 2, Matrix::int(&[&[2, 4], &[6, 8]])).unwrap();
        assert_eq!(m.invariant_factors(), &[z(2), z(4)]);

        let m = FpModule::new(r, 2, Matrix::int(&[&[1], &[2]])).unwrap();
        assert!(m.invariant_factors().is_empty());
        assert_eq!(m.free_rank(), 1);
    }

    #[test]
    fn change_of_basis_composes_to_identity() {
        let r = Ring::Integers;
        let m = FpModule::new(r, 3, Matrix::int(&[&[2, 4, 0], &[6, 8, 3], &[0, 0, 3]])).unwrap();
        let n = m.normalize();
        let round = n.from_canonical.compose(&n.to_canonical).unwrap();
        assert!(round.equals(&ModuleMorphism::identity(&m)).unwrap());
        let back = n.to_canonical.compose(&n.from_canonical).unwrap();
        assert!(back.equals(&ModuleMorphism::identity(&m.canonical())).unwrap());
    }

    #[test]
    fn element_enumeration_matches_order() {
        let r = Ring::Integers;
        let m = FpModule::from_invariants(r, &[z(2), z(6)], 0);
        let els = m.elements(4096).unwrap();
        assert_eq!(els.len(), 12);
        let mut seen: Vec<Vec<Elem>> = els.iter().map(|e| m.coords(e).unwrap()).collect();
        seen.sort_by_key(|c| format!("{c:?}"));
        seen.dedup();
        assert_eq!(seen.len(), 12);
        assert!(m.elements(11).is_none());
        assert!(FpModule::free(r, 1).elements(4096).is_none());
        assert_eq!(FpModule::zero(r).elements(10).unwrap().len(), 1);
    }

    #[test]
    fn pruning_preserves_isomorphism_type() {
        let r = Ring::Integers;
        let m = FpModule::new(r, 3, Matrix::int(&[&[1, 0], &[2, 4], &[3, 0]])).unwrap();
        let (p, to, from) = m.pruned();
        assert!(p.generators() < 3);
        assert!(p.is_isomorphic(&m));
        assert!(from.compose(&to).unwrap().equals(&ModuleMorphism::identity(&m)).unwrap());
    }
}
