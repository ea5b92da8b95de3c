use super::functors::{kernel, submodule_contains};
use super::module::FpModule;
use super::morphism::ModuleMorphism;
use crate::error::{Error, Result};

/// Outcome of an exactness test on a chain of morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// The chain is not exact at the given interior node. Node `i` is the
    /// target of `maps[i - 1]` and the source of `maps[i]`.
    FailsAt { node: usize, reason: String },
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

/// Checks `im maps[i-1] = ker maps[i]` at every interior node.
///
/// Zero modules at the ends are written explicitly, e.g.
/// `[0 -> A, f, g, C -> 0]` for a short exact sequence.
pub fn is_exact(maps: &[ModuleMorphism]) -> Result<Exactness> {
    for (i, pair) in maps.windows(2).enumerate() {
        let (f, g) = (&pair[0], &pair[1]);
        if f.target() != g.source() {
            return Err(Error::Endpoint(format!("maps {i} and {} do not compose", i + 1)));
        }
        let node = i + 1;
        if !g.compose(f)?.is_zero()? {
            return Ok(Exactness::FailsAt { node, reason: "composite is not zero".into() });
        }
        let ker = kernel(g)?;
        let middle = f.target();
        let ker_gens = ker.inclusion.matrix();
        if !submodule_contains(middle, f.matrix(), ker_gens)? {
            return Ok(Exactness::FailsAt { node, reason: "kernel is larger than the image".into() });
        }
    }
    Ok(Exactness::Exact)
}

/// `0 -> left -> middle -> right -> 0`, checked on construction.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub inject: ModuleMorphism,
    pub surject: ModuleMorphism,
}

impl ShortExactSeq {
    pub fn new(inject: ModuleMorphism, surject: ModuleMorphism) -> Result<ShortExactSeq> {
        match short_exactness(&inject, &surject)? {
            Exactness::Exact => Ok(ShortExactSeq { inject, surject }),
            Exactness::FailsAt { node, reason } => {
                Err(Error::NotIsomorphism(format!("sequence is not exact at node {node}: {reason}")))
            }
        }
    }

    pub fn left(&self) -> &FpModule {
        self.inject.source()
    }

    pub fn middle(&self) -> &FpModule {
        self.inject.target()
    }

    pub fn right(&self) -> &FpModule {
        self.surject.target()
    }
}

/// Exactness of `0 -> A -f-> B -g-> C -> 0`; nodes are numbered 1 (A),
/// 2 (B), 3 (C).
pub fn short_exactness(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Exactness> {
    let ring = *f.ring();
    let zero = FpModule::zero(ring);
    let chain = [
        ModuleMorphism::zero(&zero, f.source()),
        f.clone(),
        g.clone(),
        ModuleMorphism::zero(g.target(), &zero),
    ];
    is_exact(&chain)
}

/// An explicit isomorphism `m -> n` when the invariants agree.
pub fn find_isomorphism(m: &FpModule, n: &FpModule) -> Option<ModuleMorphism> {
    if !m.is_isomorphic(n) {
        return None;
    }
    let to = m.normalize().to_canonical;
    let from = n.normalize().from_canonical;
    // Both canonical modules are built from identical invariants.
    let canon_m = to.target().clone();
    let from = ModuleMorphism::unchecked(canon_m, n.clone(), from.matrix().clone());
    from.compose(&to).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Elem, Ring};

    fn cyc(n: i64) -> FpModule {
        FpModule::cyclic(Ring::Integers, Elem::from(n))
    }

    fn map(s: i64, t: i64, image: i64) -> ModuleMorphism {
        ModuleMorphism::from_image(cyc(s), cyc(t), vec![Elem::from(image)]).unwrap()
    }

    #[test]
    fn exactness_examples() {
        assert!(short_exactness(&map(2, 4, 2), &map(4, 2, 1)).unwrap().is_exact());
        let id = ModuleMorphism::identity(&cyc(6));
        let zero = FpModule::zero(Ring::Integers);
        let chain = [ModuleMorphism::zero(&zero, &cyc(6)), id, ModuleMorphism::zero(&cyc(6), &zero)];
        assert!(is_exact(&chain).unwrap().is_exact());

        let bad = [ModuleMorphism::zero(&zero, &cyc(2)), map(2, 4, 0), ModuleMorphism::zero(&cyc(4), &zero)];
        match is_exact(&bad).unwrap() {
            Exactness::FailsAt { node, .. } => assert_eq!(node, 1),
            Exactness::Exact => panic!("zero map is not injective"),
        }
        assert!(is_exact(&[map(2, 4, 2), map(2, 4, 2)]).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let sum = FpModule::direct_sum(Ring::Integers, &[&cyc(2), &cyc(3)]);
        let iso = find_isomorphism(&sum, &cyc(6)).unwrap();
        assert!(iso.is_isomorphism().unwrap());
        let inv = iso.inverse().unwrap();
        assert!(inv.compose(&iso).unwrap().equals(&ModuleMorphism::identity(&sum)).unwrap());

        let other = FpModule::direct_sum(Ring::Integers, &[&cyc(2), &cyc(4)]);
        assert!(find_isomorphism(&other, &cyc(8)).is_none());
        let self_iso = find_isomorphism(&cyc(8), &cyc(8)).unwrap();
        assert!(self_iso.is_isomorphism().unwrap());
    }

    #[test]
    fn short_exact_seq_rejects_non_exact() {
        assert!(ShortExactSeq::new(map(2, 4, 2), map(4, 2, 1)).is_ok());
        assert!(ShortExactSeq::new(map(2, 8, 4), map(8, 2, 1)).is_err());
    }
}
