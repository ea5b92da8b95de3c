use serde::{Deserialize, Serialize};

use crate::exactalg::Matrix;
use crate::error::{Error, Result};
use crate::fpmod::{kernel, same_submodule, FpModule, ModuleMorphism, Sub};

/// An inverse system `M_1 <- M_2 <- ... <- M_L`. Levels are 1-based;
/// `map(n)` is `M_{n+1} -> M_n`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    modules: Vec<FpModule>,
    maps: Vec<ModuleMorphism>,
}

/// Verdict of [`mittag_leffler_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum MittagLeffler {
    /// Every connecting map within the horizon is onto.
    HoldsBySurjectivity,
    /// For every testable level `k`, the images `Im(δ_{k,i})` agree for
    /// all `i >= j`. Pairs are `(k, j)`.
    Holds { stable_from: Vec<(usize, usize)> },
    /// The images below level `level` keep shrinking up to the horizon.
    NotStabilizedWithinHorizon { level: usize },
}

impl std::fmt::Display for MittagLeffler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MittagLeffler::HoldsBySurjectivity => write!(f, "holds-by-surjectivity"),
            MittagLeffler::Holds { stable_from } => {
                let pairs: Vec<String> = stable_from.iter().map(|(k, j)| format!("{k}:{j}")).collect();
                write!(f, "holds (level:stable-from {})", pairs.join(" "))
            }
            MittagLeffler::NotStabilizedWithinHorizon { level } => {
                write!(f, "not-stabilized-within-horizon at level {level}")
            }
        }
    }
}

impl MittagLeffler {
    pub fn holds(&self) -> bool {
        !matches!(self, MittagLeffler::NotStabilizedWithinHorizon { .. })
    }
}

impl InverseSystem {
    pub fn new(modules: Vec<FpModule>, maps: Vec<ModuleMorphism>) -> Result<InverseSystem> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Dimension(format!(
                "{} modules need {} maps, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (n, f) in maps.iter().enumerate() {
            if f.source() != &modules[n + 1] || f.target() != &modules[n] {
                return Err(Error::Endpoint(format!("map {} does not connect levels {} and {}", n + 1, n + 2, n + 1)));
            }
        }
        Ok(InverseSystem { modules, maps })
    }

    pub fn levels(&self) -> usize {
        self.modules.len()
    }

    pub fn module(&self, n: usize) -> &FpModule {
        &self.modules[n - 1]
    }

    pub fn map(&self, n: usize) -> &ModuleMorphism {
        &self.maps[n - 1]
    }

    pub fn maps(&self) -> &[ModuleMorphism] {
        &self.maps
    }

    /// `δ_{k,i} = δ_k ∘ ... ∘ δ_{i-1} : M_i -> M_k`; `δ_{k,k}` is the
    /// identity.
    pub fn composite(&self, k: usize, i: usize) -> Result<ModuleMorphism> {
        if k == 0 || k > i || i > self.levels() {
            return Err(Error::Level { expected: k, found: i });
        }
        (k..i).try_fold(ModuleMorphism::identity(self.module(k)), |acc, n| acc.compose(self.map(n)))
    }

    /// The first `levels` terms.
    pub fn truncate(&self, levels: usize) -> Result<InverseSystem> {
        if levels == 0 || levels > self.levels() {
            return Err(Error::Level { expected: self.levels(), found: levels });
        }
        InverseSystem::new(self.modules[..levels].to_vec(), self.maps[..levels - 1].to_vec())
    }

    /// `⊕_{n<=L} M_n`.
    pub fn product(&self) -> FpModule {
        let parts: Vec<&FpModule> = self.modules.iter().collect();
        FpModule::direct_sum(*self.modules[0].ring(), &parts)
    }

    /// Offset of level `n`'s generators inside [`InverseSystem::product`].
    pub fn offset(&self, n: usize) -> usize {
        self.modules[..n - 1].iter().map(|m| m.generators()).sum()
    }

    /// The coherence map `⊕_{n<=L} M_n -> ⊕_{n<L} M_n`,
    /// `(x_n) ↦ (x_n - δ_n(x_{n+1}))`.
    pub fn coherence_map(&self) -> Result<ModuleMorphism> {
        let ring = *self.modules[0].ring();
        let source = self.product();
        let lower: Vec<&FpModule> = self.modules[..self.levels() - 1].iter().collect();
        let target = FpModule::direct_sum(ring, &lower);
        let mut m = Matrix::zeros(&ring, target.generators(), source.generators());
        for n in 1..self.levels() {
            let (row0, col_n, col_next) = (self.offset(n), self.offset(n), self.offset(n + 1));
            let gens = self.module(n).generators();
            for a in 0..gens {
                m.set(row0 + a, col_n + a, ring.one());
            }
            let delta = self.map(n).matrix();
            for a in 0..delta.rows() {
                for b in 0..delta.cols() {
                    m.set(row0 + a, col_next + b, ring.neg(delta.get(a, b)));
                }
            }
        }
        ModuleMorphism::new(source, target, m)
    }

    /// The limit of the system, as the kernel of the coherence map with its
    /// embedding into the product.
    pub fn limit(&self) -> Result<Sub> {
        if self.levels() == 1 {
            let m = self.module(1).clone();
            return Ok(Sub { inclusion: ModuleMorphism::identity(&m), module: m });
        }
        kernel(&self.coherence_map()?)
    }
}

/// Tests the Mittag–Leffler condition on the first `horizon` levels.
///
/// A level `k` is testable when at least two images `Im(δ_{k,i})` with
/// `i > k` fall inside the horizon; stabilization means the last run of
/// equal images has length at least two.
pub fn mittag_leffler_check(system: &InverseSystem, horizon: usize) -> Result<MittagLeffler> {
    let levels = horizon.min(system.levels());
    let mut all_onto = true;
    for n in 1..levels {
        if !system.map(n).is_surjective()? {
            all_onto = false;
            break;
        }
    }
    if all_onto {
        return Ok(MittagLeffler::HoldsBySurjectivity);
    }
    let mut stable_from = Vec::new();
    for k in 1..levels.saturating_sub(1) {
        let target = system.module(k);
        let images: Vec<Matrix> = (k + 1..=levels)
            .map(|i| system.composite(k, i).map(|f| f.matrix().clone()))
            .collect::<Result<_>>()?;
        // images[t] is Im(δ_{k, k+1+t}); walk back from the horizon.
        let last = images.len() - 1;
        let mut j = last;
        while j > 0 && same_submodule(target, &images[j - 1], &images[last])? {
            j -= 1;
        }
        if j == last {
            return Ok(MittagLeffler::NotStabilizedWithinHorizon { level: k });
        }
        stable_from.push((k, k + 1 + j));
    }
    Ok(MittagLeffler::Holds { stable_from })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Elem, Ring};

    fn chain(modulus: i64, image: i64, levels: usize) -> InverseSystem {
        let r = Ring::Integers;
        let m = FpModule::cyclic(r, Elem::from(modulus));
        let f = ModuleMorphism::from_image(m.clone(), m.clone(), vec![Elem::from(image)]).unwrap();
        InverseSystem::new(vec![m; levels], vec![f; levels - 1]).unwrap()
    }

    #[test]
    fn surjective_maps_short_circuit() {
        assert_eq!(mittag_leffler_check(&chain(4, 3, 5), 10).unwrap(), MittagLeffler::HoldsBySurjectivity);
    }

    #[test]
    fn zero_maps_stabilize_at_zero() {
        let v = mittag_leffler_check(&chain(4, 0, 5), 10).unwrap();
        assert_eq!(v, MittagLeffler::Holds { stable_from: vec![(1, 2), (2, 3), (3, 4)] });
    }

    #[test]
    fn doubling_on_free_modules_never_stabilizes() {
        let v = mittag_leffler_check(&chain(0, 2, 9), 8).unwrap();
        assert_eq!(v, MittagLeffler::NotStabilizedWithinHorizon { level: 1 });
    }

    #[test]
    fn slow_stabilization_is_cut_off_by_the_horizon() {
        // Doubling on Z/4: images 2Z/4, 0, 0, ... need two steps to settle,
        // so the level just below the horizon cannot witness stability.
        let v = mittag_leffler_check(&chain(4, 2, 6), 6).unwrap();
        assert_eq!(v, MittagLeffler::NotStabilizedWithinHorizon { level: 4 });
    }

    #[test]
    fn composites() {
        let s = chain(8, 2, 4);
        assert!(s.composite(2, 2).unwrap().equals(&ModuleMorphism::identity(s.module(2))).unwrap());
        let direct = s.map(1).compose(s.map(2)).unwrap().compose(s.map(3)).unwrap();
        assert!(s.composite(1, 4).unwrap().equals(&direct).unwrap());
    }
}
