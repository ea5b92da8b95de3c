use serde::{Deserialize, Serialize};

use super::system::InverseSystem;
use super::tower::AdicTower;
use crate::exactalg::{Elem, Matrix, Ring};
use crate::error::{Error, Result};
use crate::fpmod::{FpModule, ModuleMorphism};

/// A coherent tuple `(x_1, ..., x_N)` with `x_n ∈ Z_n` and
/// `δ_n(x_{n+1}) = x_n`. Components are canonical residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoherentElement {
    components: Vec<Elem>,
}

impl CoherentElement {
    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Elem] {
        &self.components
    }

    /// `x_N`.
    pub fn top(&self) -> &Elem {
        self.components.last().expect("level >= 1")
    }
}

/// `J_N`: the limit of `Z_1 <- ... <- Z_N`, with its ring structure.
///
/// The carrier is the kernel of the coherence map on `⊕ Z_n`. For adic
/// towers the projection onto `Z_N` is an isomorphism, which is checked on
/// construction and used to move between coherent tuples and carrier
/// elements.
#[derive(Clone, Debug)]
pub struct TruncatedLimit {
    ring: Ring,
    generator: Elem,
    system: InverseSystem,
    inclusions: Vec<ModuleMorphism>,
    carrier: FpModule,
    embedding: ModuleMorphism,
    top_projection: ModuleMorphism,
    top_inverse: ModuleMorphism,
}

impl TruncatedLimit {
    /// Builds `J_level` from a tower, deriving the connecting maps through
    /// the stable hom construction.
    pub fn new(tower: &AdicTower, level: usize) -> Result<TruncatedLimit> {
        let system = tower.inverse_system()?;
        TruncatedLimit::from_system(tower, &system, level)
    }

    /// Builds `J_level` from an already computed inverse system of `tower`.
    pub fn from_system(tower: &AdicTower, system: &InverseSystem, level: usize) -> Result<TruncatedLimit> {
        if level == 0 || level > system.levels() || system.levels() > tower.depth() {
            return Err(Error::Level { expected: system.levels(), found: level });
        }
        let system = system.truncate(level)?;
        let ring = *tower.ring();
        let limit = system.limit()?;
        let carrier = limit.module;
        let embedding = limit.inclusion;
        let offset = system.offset(level);
        let top_gens = system.module(level).generators();
        let pick = Matrix::identity(&ring, embedding.target().generators()).select_rows(offset..offset + top_gens);
        let pick = ModuleMorphism::new(embedding.target().clone(), system.module(level).clone(), pick)?;
        let top_projection = pick.compose(&embedding)?;
        let top_inverse = top_projection
            .inverse()
            .map_err(|e| Error::NotIsomorphism(format!("J_{level} -> Z_{level}: {e}")))?;
        Ok(TruncatedLimit {
            ring,
            generator: tower.generator().clone(),
            inclusions: (1..level).map(|n| tower.inclusion(n).clone()).collect(),
            system,
            carrier,
            embedding,
            top_projection,
            top_inverse,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn level(&self) -> usize {
        self.system.levels()
    }

    pub fn system(&self) -> &InverseSystem {
        &self.system
    }

    pub fn carrier(&self) -> &FpModule {
        &self.carrier
    }

    /// `J_N -> ⊕ Z_n`.
    pub fn embedding(&self) -> &ModuleMorphism {
        &self.embedding
    }

    /// `J_N -> Z_N`, an isomorphism.
    pub fn top_projection(&self) -> &ModuleMorphism {
        &self.top_projection
    }

    fn modulus(&self, n: usize) -> Elem {
        self.ring.pow(&self.generator, n as u32)
    }

    /// Validates and reduces a tuple of residues.
    pub fn element(&self, components: Vec<Elem>) -> Result<CoherentElement> {
        if components.len() != self.level() {
            return Err(Error::Level { expected: self.level(), found: components.len() });
        }
        let reduced: Vec<Elem> =
            components.iter().enumerate().map(|(i, x)| self.ring.residue(x, &self.modulus(i + 1))).collect();
        for n in 1..self.level() {
            let image = self.system.map(n).apply(std::slice::from_ref(&reduced[n]))?;
            if !self.system.module(n).elements_equal(&image, std::slice::from_ref(&reduced[n - 1]))? {
                return Err(Error::Incoherent(n));
            }
        }
        Ok(CoherentElement { components: reduced })
    }

    pub fn is_coherent(&self, components: &[Elem]) -> Result<bool> {
        match self.element(components.to_vec()) {
            Ok(_) => Ok(true),
            Err(Error::Incoherent(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// The carrier element for a coherent tuple.
    pub fn to_carrier(&self, x: &CoherentElement) -> Result<Vec<Elem>> {
        self.check_level(x)?;
        let v = self.top_inverse.apply(std::slice::from_ref(x.top()))?;
        self.carrier.reduce(&v)
    }

    /// The coherent tuple of a carrier element.
    pub fn from_carrier(&self, v: &[Elem]) -> Result<CoherentElement> {
        let tuple = self.embedding.apply(v)?;
        let mut components = Vec::with_capacity(self.level());
        for n in 1..=self.level() {
            let k = self.system.offset(n);
            components.push(tuple[k].clone());
        }
        self.element(components)
    }

    fn check_level(&self, x: &CoherentElement) -> Result<()> {
        if x.level() != self.level() {
            return Err(Error::Level { expected: self.level(), found: x.level() });
        }
        Ok(())
    }

    pub fn zero(&self) -> CoherentElement {
        CoherentElement { components: vec![self.ring.zero(); self.level()] }
    }

    pub fn one(&self) -> CoherentElement {
        self.phi(&self.ring.one())
    }

    /// The structure map `φ_N : R -> J_N`, `r ↦ (r mod g, r mod g², ...)`.
    pub fn phi(&self, r: &Elem) -> CoherentElement {
        let components = (1..=self.level()).map(|n| self.ring.residue(r, &self.modulus(n))).collect();
        CoherentElement { components }
    }

    /// Componentwise product.
    pub fn multiply(&self, a: &CoherentElement, b: &CoherentElement) -> Result<CoherentElement> {
        self.check_level(a)?;
        self.check_level(b)?;
        let prod = a.components.iter().zip(&b.components).map(|(x, y)| self.ring.mul(x, y)).collect();
        self.element(prod)
    }

    pub fn add(&self, a: &CoherentElement, b: &CoherentElement) -> Result<CoherentElement> {
        self.check_level(a)?;
        self.check_level(b)?;
        let sum = a.components.iter().zip(&b.components).map(|(x, y)| self.ring.add(x, y)).collect();
        self.element(sum)
    }

    /// Every element of `J_N`, when there are at most `bound` of them.
    pub fn elements(&self, bound: u64) -> Option<Vec<CoherentElement>> {
        let els = self.carrier.elements(bound)?;
        els.iter().map(|v| self.from_carrier(v).ok()).collect()
    }

    /// The carrier endomorphism `x ↦ j · x`.
    pub fn multiplication_map(&self, j: &CoherentElement) -> Result<ModuleMorphism> {
        let cols = (0..self.carrier.generators())
            .map(|k| {
                let x = self.from_carrier(&self.carrier.generator(k))?;
                self.to_carrier(&self.multiply(j, &x)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(self.carrier.generators(), &cols)?;
        ModuleMorphism::new(self.carrier.clone(), self.carrier.clone(), m)
    }

    /// `u(x_1, ..., x_N) = (0, μ_1(x_1), ..., μ_{N-1}(x_{N-1}))`.
    pub fn shift(&self, x: &CoherentElement) -> Result<CoherentElement> {
        self.check_level(x)?;
        let mut components = vec![self.ring.zero()];
        for (n, mu) in self.inclusions.iter().enumerate() {
            components.push(mu.apply(std::slice::from_ref(&x.components[n]))?[0].clone());
        }
        self.element(components)
    }

    /// The shift as a carrier endomorphism; requires `N >= 2`.
    pub fn shift_endomorphism(&self) -> Result<ModuleMorphism> {
        if self.level() < 2 {
            return Err(Error::Level { expected: 2, found: self.level() });
        }
        let cols = (0..self.carrier.generators())
            .map(|k| {
                let x = self.from_carrier(&self.carrier.generator(k))?;
                self.to_carrier(&self.shift(&x)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(self.carrier.generators(), &cols)?;
        ModuleMorphism::new(self.carrier.clone(), self.carrier.clone(), m)
    }

    /// Generators of `U · J_N`: the carrier generators times `g`.
    pub fn ideal_multiple(&self) -> Matrix {
        Matrix::identity(&self.ring, self.carrier.generators()).scale(&self.ring, &self.generator)
    }

    /// Drops the top component: `J_N -> J_{N-1}` as a map of carriers.
    pub fn restriction_to(&self, lower: &TruncatedLimit) -> Result<ModuleMorphism> {
        if lower.level() + 1 != self.level() {
            return Err(Error::Level { expected: self.level() - 1, found: lower.level() });
        }
        let cols = (0..self.carrier.generators())
            .map(|k| {
                let x = self.from_carrier(&self.carrier.generator(k))?;
                let mut c = x.components.clone();
                c.pop();
                lower.to_carrier(&lower.element(c)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(lower.carrier.generators(), &cols)?;
        ModuleMorphism::new(self.carrier.clone(), lower.carrier.clone(), m)
    }

    /// `π_n : J_N -> Z_n`, `x ↦ x_n`.
    pub fn component_projection(&self, n: usize) -> Result<ModuleMorphism> {
        if n == 0 || n > self.level() {
            return Err(Error::Level { expected: self.level(), found: n });
        }
        let target = self.system.module(n);
        let cols = (0..self.carrier.generators())
            .map(|k| Ok(vec![self.from_carrier(&self.carrier.generator(k))?.components[n - 1].clone()]))
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(target.generators(), &cols)?;
        ModuleMorphism::new(self.carrier.clone(), target.clone(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ideal;
    use crate::fpmod::{cokernel, image, same_submodule};
    use num_traits::ToPrimitive;

    fn z(n: i64) -> Elem {
        Elem::from(n)
    }

    fn limit(p: i64, level: usize) -> TruncatedLimit {
        let r = Ring::Integers;
        let t = AdicTower::build(r, Ideal::new(&r, z(p)).unwrap(), level).unwrap();
        TruncatedLimit::new(&t, level).unwrap()
    }

    #[test]
    fn carrier_is_top_level() {
        let j = limit(2, 3);
        assert_eq!(j.carrier().invariant_factors(), &[z(8)]);
        assert!(j.top_projection().is_isomorphism().unwrap());
        assert!(j.is_coherent(&[z(1), z(3), z(3)]).unwrap());
        assert!(!j.is_coherent(&[z(1), z(2), z(3)]).unwrap());
        let j1 = limit(2, 1);
        assert!(j1.carrier().is_isomorphic(&FpModule::cyclic(Ring::Integers, z(2))));
    }

    #[test]
    fn ring_structure_examples() {
        let j = limit(2, 3);
        let a = j.element(vec![z(1), z(3), z(3)]).unwrap();
        let b = j.element(vec![z(1), z(1), z(5)]).unwrap();
        assert_eq!(j.multiply(&a, &b).unwrap().components(), &[z(1), z(3), z(7)]);
        assert_eq!(j.phi(&z(5)).components(), &[z(1), z(1), z(5)]);
        assert_eq!(j.one().components(), &[z(1), z(1), z(1)]);
        assert_eq!(j.multiply(&j.one(), &a).unwrap(), a);
    }

    #[test]
    fn carrier_round_trip() {
        let j = limit(3, 3);
        for x in j.elements(1000).unwrap() {
            let back = j.from_carrier(&j.to_carrier(&x).unwrap()).unwrap();
            assert_eq!(back, x);
        }
        assert_eq!(j.elements(1000).unwrap().len(), 27);
    }

    #[test]
    fn shift_examples() {
        let j = limit(2, 3);
        let x = j.element(vec![z(1), z(3), z(3)]).unwrap();
        assert_eq!(j.shift(&x).unwrap().components(), &[z(0), z(2), z(6)]);
        assert_eq!(j.shift(&j.zero()).unwrap(), j.zero());
        let u = j.shift_endomorphism().unwrap();
        let im = image(&u).unwrap();
        assert_eq!(im.module.order().unwrap().to_u64(), Some(4));
        assert!(same_submodule(j.carrier(), u.matrix(), &j.ideal_multiple()).unwrap());
        assert!(cokernel(&u).unwrap().module.is_isomorphic(&FpModule::cyclic(Ring::Integers, z(2))));
    }

    #[test]
    fn polynomial_limit() {
        let r = Ring::polynomials(2).unwrap();
        let t = AdicTower::build(r, Ideal::new(&r, r.x().unwrap()).unwrap(), 2).unwrap();
        let j = TruncatedLimit::new(&t, 2).unwrap();
        assert_eq!(j.carrier().invariant_factors(), &[r.poly(&[0, 0, 1])]);
    }
}
