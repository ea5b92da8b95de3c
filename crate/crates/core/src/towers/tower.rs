use crate::exactalg::{Elem, Ideal, Matrix, Ring};
use crate::error::{Error, Result};
use crate::fpmod::{hom_module, induced_hom, FpModule, HomModule, ModuleMorphism, Variance};

use super::system::InverseSystem;

/// The direct system `Z_1 -> Z_2 -> ... -> Z_N` with `Z_i = R/(g^i)` and
/// `μ_i` sending `1` to the class of `g`.
///
/// The colimit `Z_∞` is never built. Homs into it are read off the top
/// level once the hom system has visibly stabilized; see
/// [`AdicTower::hom_into_colimit`].
#[derive(Clone, Debug)]
pub struct AdicTower {
    ring: Ring,
    ideal: Ideal,
    modules: Vec<FpModule>,
    inclusions: Vec<ModuleMorphism>,
}

/// `Hom(Z_m, Z_∞)` represented by `Hom(Z_m, Z_N)` at the top level `N`,
/// with the index from which the hom system is constant.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub level: usize,
    pub hom: HomModule,
    pub stabilization_index: usize,
    /// `x ↦ x · ι_m`, where `ι_m : Z_m -> Z_N` is the composite inclusion.
    pub canonical: ModuleMorphism,
}

impl AdicTower {
    pub fn build(ring: Ring, ideal: Ideal, depth: usize) -> Result<AdicTower> {
        if depth == 0 {
            return Err(Error::InvalidDepth(depth));
        }
        let g = ideal.generator().clone();
        let modules: Vec<FpModule> =
            (1..=depth).map(|i| FpModule::cyclic(ring, ring.pow(&g, i as u32))).collect();
        let inclusions = modules
            .windows(2)
            .map(|w| ModuleMorphism::from_image(w[0].clone(), w[1].clone(), vec![g.clone()]))
            .collect::<Result<Vec<_>>>()?;
        Ok(AdicTower { ring, ideal, modules, inclusions })
    }

    /// A tower with hand-chosen connecting maps. The modules are still
    /// `R/(g^i)`; only the maps differ. Used for negative controls.
    pub fn with_inclusions(ring: Ring, ideal: Ideal, images: &[Elem]) -> Result<AdicTower> {
        let mut tower = AdicTower::build(ring, ideal, images.len() + 1)?;
        tower.inclusions = tower
            .modules
            .windows(2)
            .zip(images)
            .map(|(w, x)| ModuleMorphism::from_image(w[0].clone(), w[1].clone(), vec![x.clone()]))
            .collect::<Result<Vec<_>>>()?;
        Ok(tower)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn generator(&self) -> &Elem {
        self.ideal.generator()
    }

    pub fn depth(&self) -> usize {
        self.modules.len()
    }

    /// `Z_n`, for `1 <= n <= depth`.
    pub fn module(&self, n: usize) -> &FpModule {
        &self.modules[n - 1]
    }

    /// `μ_n : Z_n -> Z_{n+1}`.
    pub fn inclusion(&self, n: usize) -> &ModuleMorphism {
        &self.inclusions[n - 1]
    }

    /// `ι_{m,n} = μ_{n-1} ∘ ... ∘ μ_m : Z_m -> Z_n`, the identity when
    /// `m = n`.
    pub fn inclusion_composite(&self, m: usize, n: usize) -> Result<ModuleMorphism> {
        if m > n || n > self.depth() {
            return Err(Error::Level { expected: m, found: n });
        }
        (m..n).try_fold(ModuleMorphism::identity(self.module(m)), |acc, k| self.inclusion(k).compose(&acc))
    }

    /// The map `Z_n -> Z_m` (`m <= n`) sending `1` to `1`: reduction modulo
    /// `g^m`. Written down directly, independently of the δ construction.
    pub fn reduction(&self, n: usize, m: usize) -> Result<ModuleMorphism> {
        if m > n || n > self.depth() || m == 0 {
            return Err(Error::Level { expected: m, found: n });
        }
        ModuleMorphism::from_image(self.module(n).clone(), self.module(m).clone(), vec![self.ring.one()])
    }

    /// `κ_{m,n} : Z_m -> Hom(Z_m, Z_n)`, `x ↦ x · ι_{m,n}`, together with
    /// the hom module it lands in.
    pub fn canonical_hom_map(&self, m: usize, n: usize) -> Result<(HomModule, ModuleMorphism)> {
        let hom = hom_module(self.module(m), self.module(n))?;
        let iota = self.inclusion_composite(m, n)?;
        let image = hom.encode(&iota)?;
        let column = Matrix::from_columns(hom.module.generators(), &[image])?;
        let map = ModuleMorphism::new(self.module(m).clone(), hom.module.clone(), column)?;
        Ok((hom, map))
    }

    /// Computes `Hom(Z_m, Z_n)` for every `n <= depth`, finds the index
    /// `n_0` from which every map `(μ_n)_*` is an isomorphism, and returns
    /// the top-level hom module as the stable value.
    ///
    /// Fails when the system is not constant on at least two terms (unless
    /// `m` is the top level) or when `κ_{m,N}` is not an isomorphism.
    pub fn hom_into_colimit(&self, m: usize) -> Result<StableHom> {
        let depth = self.depth();
        if m == 0 || m > depth {
            return Err(Error::Level { expected: depth, found: m });
        }
        let source = self.module(m);
        let mut n0 = depth;
        while n0 > 1 {
            let step = induced_hom(self.inclusion(n0 - 1), source, Variance::Post)?;
            if !step.map.is_isomorphism()? {
                break;
            }
            n0 -= 1;
        }
        if n0 == depth && m != depth {
            return Err(Error::NotStabilized { m, depth });
        }
        let (hom, canonical) = self.canonical_hom_map(m, depth)?;
        if !canonical.is_isomorphism()? {
            return Err(Error::NotIsomorphism(format!(
                "Z_{m} -> Hom(Z_{m}, Z_{depth}) is not an isomorphism"
            )));
        }
        Ok(StableHom { level: m, hom, stabilization_index: n0, canonical })
    }

    /// `δ_n : Z_{n+1} -> Z_n`, the composite
    /// `Z_{n+1} ≅ Hom(Z_{n+1}, Z_∞) -> Hom(Z_n, Z_∞) ≅ Z_n`
    /// with the middle map restriction along `μ_n`.
    pub fn build_delta(&self, n: usize) -> Result<ModuleMorphism> {
        let lower = self.hom_into_colimit(n)?;
        let upper = self.hom_into_colimit(n + 1)?;
        self.delta_from(&lower, &upper)
    }

    fn delta_from(&self, lower: &StableHom, upper: &StableHom) -> Result<ModuleMorphism> {
        let n = lower.level;
        let top = self.module(self.depth());
        let restrict = induced_hom(self.inclusion(n), top, Variance::Pre)?;
        let back = lower.canonical.inverse()?;
        let delta = back.compose(&restrict.map.compose(&upper.canonical)?)?;
        if !delta.is_surjective()? {
            return Err(Error::NotIsomorphism(format!("δ_{n} is not surjective")));
        }
        Ok(delta)
    }

    /// `(IS)`: every `Z_n` with `δ_1, ..., δ_{N-1}`.
    pub fn inverse_system(&self) -> Result<InverseSystem> {
        let stable: Vec<StableHom> =
            (1..=self.depth()).map(|m| self.hom_into_colimit(m)).collect::<Result<_>>()?;
        self.inverse_system_from(&stable)
    }

    /// `(IS)` from already computed stable homs, one per level.
    pub fn inverse_system_from(&self, stable: &[StableHom]) -> Result<InverseSystem> {
        if stable.len() != self.depth() {
            return Err(Error::Level { expected: self.depth(), found: stable.len() });
        }
        let maps = stable
            .windows(2)
            .map(|w| self.delta_from(&w[0], &w[1]))
            .collect::<Result<Vec<_>>>()?;
        InverseSystem::new(self.modules.clone(), maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn tower(g: i64, depth: usize) -> AdicTower {
        let r = Ring::Integers;
        AdicTower::build(r, Ideal::new(&r, Elem::from(g)).unwrap(), depth).unwrap()
    }

    #[test]
    fn builds_integer_tower() {
        let t = tower(2, 3);
        let orders: Vec<u64> = (1..=3).map(|n| t.module(n).order().unwrap().to_u64().unwrap()).collect();
        assert_eq!(orders, vec![2, 4, 8]);
        for n in 1..3 {
            assert!(t.inclusion(n).is_injective().unwrap());
        }
        assert!(tower(6, 2).inclusion(1).is_injective().unwrap());
    }

    #[test]
    fn builds_polynomial_tower() {
        let r = Ring::polynomials(2).unwrap();
        let t = AdicTower::build(r, Ideal::new(&r, r.x().unwrap()).unwrap(), 2).unwrap();
        assert_eq!(t.module(2).invariant_factors(), &[r.poly(&[0, 0, 1])]);
        assert!(t.inclusion(1).is_injective().unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let r = Ring::Integers;
        assert!(AdicTower::build(r, Ideal::new(&r, Elem::from(2)).unwrap(), 0).is_err());
        assert!(Ideal::new(&r, Elem::from(1)).is_err());
    }

    #[test]
    fn stable_hom_levels() {
        let t = tower(2, 4);
        let s = t.hom_into_colimit(2).unwrap();
        assert_eq!(s.stabilization_index, 2);
        assert_eq!(s.hom.module.invariant_factors(), &[Elem::from(4)]);
        assert_eq!(t.hom_into_colimit(1).unwrap().stabilization_index, 1);
        let top = t.hom_into_colimit(4).unwrap();
        assert!(top.hom.module.is_isomorphic(t.module(4)));
    }

    #[test]
    fn delta_is_reduction() {
        let t = tower(2, 4);
        let d = t.build_delta(2).unwrap();
        assert!(d.equals(&t.reduction(3, 2).unwrap()).unwrap());
    }

    #[test]
    fn zero_connecting_maps_do_not_stabilize() {
        let r = Ring::Integers;
        let ideal = Ideal::new(&r, Elem::from(2)).unwrap();
        let t = AdicTower::with_inclusions(r, ideal, &[Elem::from(0), Elem::from(0)]).unwrap();
        assert!(t.hom_into_colimit(1).is_err());
    }
}
