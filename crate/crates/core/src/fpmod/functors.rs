//! Kernels, cokernels, images, submodules, hom and tensor.

use super::module::FpModule;
use super::morphism::ModuleMorphism;
use crate::exactalg::{kernel_basis, solve_linear, Elem, Matrix, Ring};
use crate::error::{Error, Result};

/// A module together with its canonical injection into an ambient module.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: FpModule,
    pub inclusion: ModuleMorphism,
}

/// A module together with its canonical projection from an ambient module.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FpModule,
    pub projection: ModuleMorphism,
}

/// `f = inclusion ∘ corestriction`.
#[derive(Clone, Debug)]
pub struct Image {
    pub module: FpModule,
    pub inclusion: ModuleMorphism,
    pub corestriction: ModuleMorphism,
}

/// `0 -> sub -> ambient -> quotient -> 0`.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub sub: FpModule,
    pub inclusion: ModuleMorphism,
    pub quotient: FpModule,
    pub projection: ModuleMorphism,
}

/// The submodule of `m` generated by the columns of `gens`, presented on
/// those columns. The presentation is pruned.
pub fn submodule(m: &FpModule, gens: &Matrix) -> Result<Sub> {
    if gens.rows() != m.generators() {
        return Err(Error::Dimension(format!(
            "submodule generators have {} rows, module has {} generators",
            gens.rows(),
            m.generators()
        )));
    }
    let ring = *m.ring();
    let s = gens.cols();
    let syz = kernel_basis(&ring, &gens.hstack(m.relations())?);
    let rel = syz.select_rows(0..s);
    let raw = FpModule::new(ring, s, rel)?;
    let incl = ModuleMorphism::unchecked(raw.clone(), m.clone(), gens.clone());
    let (module, _, from) = raw.pruned();
    let inclusion = incl.compose(&from)?;
    Ok(Sub { module, inclusion })
}

/// `ker f`, as a submodule of the source.
pub fn kernel(f: &ModuleMorphism) -> Result<Sub> {
    let ring = *f.ring();
    let g = f.source().generators();
    let syz = kernel_basis(&ring, &f.matrix().hstack(f.target().relations())?);
    submodule(f.source(), &syz.select_rows(0..g))
}

/// `coker f = target / im f`, presented on the target generators.
pub fn cokernel(f: &ModuleMorphism) -> Result<Quotient> {
    quotient_by(f.target(), f.matrix())
}

/// `m / <gens>`.
pub fn quotient_by(m: &FpModule, gens: &Matrix) -> Result<Quotient> {
    let ring = *m.ring();
    let module = FpModule::new(ring, m.generators(), m.relations().hstack(gens)?)?;
    let projection = ModuleMorphism::unchecked(m.clone(), module.clone(), Matrix::identity(&ring, m.generators()));
    Ok(Quotient { module, projection })
}

pub fn image(f: &ModuleMorphism) -> Result<Image> {
    let sub = submodule(f.target(), f.matrix())?;
    // Source generator j maps to image generator j before pruning; recover
    // the corestriction by lifting through the (injective) inclusion.
    let mut cols = Vec::with_capacity(f.source().generators());
    for j in 0..f.source().generators() {
        let y = f.matrix().column(j);
        let x = sub
            .inclusion
            .preimage(&y)?
            .ok_or_else(|| Error::Internal("image generator not in image".into()))?;
        cols.push(x);
    }
    let m = Matrix::from_columns(sub.module.generators(), &cols)?;
    let corestriction = ModuleMorphism::new(f.source().clone(), sub.module.clone(), m)?;
    Ok(Image { module: sub.module, inclusion: sub.inclusion, corestriction })
}

/// Splits `m` along the submodule generated by `gens`.
pub fn submodule_quotient(m: &FpModule, gens: &Matrix) -> Result<SubQuotient> {
    let sub = submodule(m, gens)?;
    let q = quotient_by(m, gens)?;
    Ok(SubQuotient { sub: sub.module, inclusion: sub.inclusion, quotient: q.module, projection: q.projection })
}

/// Whether every column of `inner` lies in the submodule of `m` generated
/// by the columns of `outer`.
pub fn submodule_contains(m: &FpModule, outer: &Matrix, inner: &Matrix) -> Result<bool> {
    let ring = m.ring();
    let system = outer.hstack(m.relations())?;
    for j in 0..inner.cols() {
        if solve_linear(ring, &system, &inner.column(j))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of generated submodules by double inclusion.
pub fn same_submodule(m: &FpModule, a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(submodule_contains(m, a, b)? && submodule_contains(m, b, a)?)
}

/// One cyclic summand `R/(modulus)` of a hom module: the map sending
/// canonical source coordinate `source` to `scale` times canonical target
/// coordinate `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct HomBlock {
    source: usize,
    target: usize,
    modulus: Elem,
    scale: Elem,
}

/// `Hom_R(M, N)` as a finitely presented module, with explicit translation
/// between its elements and morphisms `M -> N`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FpModule,
    source: FpModule,
    target: FpModule,
    blocks: Vec<HomBlock>,
}

/// Builds `Hom_R(M, N)` from the invariant factor decompositions:
/// `Hom(R/(d), R/(e)) ≅ R/(gcd(d, e))`, generated by `1 ↦ e / gcd(d, e)`.
pub fn hom_module(source: &FpModule, target: &FpModule) -> Result<HomModule> {
    if source.ring() != target.ring() {
        return Err(Error::Endpoint(format!("{} vs {}", source.ring(), target.ring())));
    }
    let ring = *source.ring();
    let sn = source.normalization();
    let tn = target.normalization();
    let mut blocks = Vec::new();
    for j in 0..tn.len() {
        let e = tn.modulus(&ring, j);
        for i in 0..sn.len() {
            let d = sn.modulus(&ring, i);
            let block = if ring.is_zero(&e) {
                if !ring.is_zero(&d) {
                    continue; // torsion into free: only the zero map
                }
                HomBlock { source: i, target: j, modulus: ring.zero(), scale: ring.one() }
            } else {
                let h = ring.gcd(&d, &e);
                if ring.is_unit(&h) {
                    continue;
                }
                let scale = ring.exact_div(&e, &h).expect("gcd divides");
                HomBlock { source: i, target: j, modulus: h, scale }
            };
            blocks.push(block);
        }
    }
    blocks.sort_by_key(|b| (b.source, b.target));
    let torsion: Vec<Elem> = blocks.iter().map(|b| b.modulus.clone()).collect();
    let mut rel_cols = Vec::new();
    for (k, m) in torsion.iter().enumerate() {
        if !ring.is_zero(m) {
            let mut c = vec![ring.zero(); blocks.len()];
            c[k] = m.clone();
            rel_cols.push(c);
        }
    }
    let rel = Matrix::from_columns(blocks.len(), &rel_cols)?;
    let module = FpModule::new(ring, blocks.len(), rel)?;
    Ok(HomModule { module, source: source.clone(), target: target.clone(), blocks })
}

impl HomModule {
    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    fn ring(&self) -> Ring {
        *self.source.ring()
    }

    /// The morphism represented by an element of the hom module.
    pub fn decode(&self, element: &[Elem]) -> Result<ModuleMorphism> {
        if element.len() != self.blocks.len() {
            return Err(Error::Dimension(format!(
                "hom element has {} coordinates, module has {} generators",
                element.len(),
                self.blocks.len()
            )));
        }
        let ring = self.ring();
        let sn = self.source.normalization();
        let tn = self.target.normalization();
        let mut canon = Matrix::zeros(&ring, tn.len(), sn.len());
        for (b, c) in self.blocks.iter().zip(element) {
            let v = ring.add(canon.get(b.target, b.source), &ring.mul(c, &b.scale));
            canon.set(b.target, b.source, v);
        }
        let m = tn.from.mul(&ring, &canon)?.mul(&ring, &sn.to)?;
        Ok(ModuleMorphism::unchecked(self.source.clone(), self.target.clone(), m))
    }

    /// The hom-module element of a morphism `source -> target`, in reduced
    /// coordinates.
    pub fn encode(&self, f: &ModuleMorphism) -> Result<Vec<Elem>> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::Endpoint("morphism does not belong to this hom module".into()));
        }
        let ring = self.ring();
        let sn = self.source.normalization();
        let tn = self.target.normalization();
        let canon = tn.to.mul(&ring, f.matrix())?.mul(&ring, &sn.from)?;
        let entry = |j: usize, i: usize| ring.residue(canon.get(j, i), &tn.modulus(&ring, j));
        let mut out = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let x = entry(b.target, b.source);
            let c = ring
                .exact_div(&x, &b.scale)
                .ok_or_else(|| Error::Internal("hom entry not divisible by block scale".into()))?;
            out.push(ring.residue(&c, &b.modulus));
        }
        // Entries outside the blocks must vanish.
        for j in 0..tn.len() {
            for i in 0..sn.len() {
                let covered = self.blocks.iter().any(|b| (b.target, b.source) == (j, i));
                if !covered && !ring.is_zero(&entry(j, i)) {
                    return Err(Error::Internal(format!("hom entry ({j},{i}) should vanish")));
                }
            }
        }
        Ok(out)
    }

    /// The morphism for each generator of the hom module.
    pub fn generator_maps(&self) -> Result<Vec<ModuleMorphism>> {
        (0..self.module.generators()).map(|k| self.decode(&self.module.generator(k))).collect()
    }
}

/// Which side of `Hom` a map is applied on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `f: A -> B` induces `Hom(B, N) -> Hom(A, N)`, `φ ↦ φ ∘ f`.
    Pre,
    /// `f: A -> B` induces `Hom(N, A) -> Hom(N, B)`, `φ ↦ f ∘ φ`.
    Post,
}

#[derive(Clone, Debug)]
pub struct InducedHom {
    pub domain: HomModule,
    pub codomain: HomModule,
    pub map: ModuleMorphism,
}

pub fn induced_hom(f: &ModuleMorphism, n: &FpModule, variance: Variance) -> Result<InducedHom> {
    let (domain, codomain) = match variance {
        Variance::Pre => (hom_module(f.target(), n)?, hom_module(f.source(), n)?),
        Variance::Post => (hom_module(n, f.source())?, hom_module(n, f.target())?),
    };
    let mut cols = Vec::with_capacity(domain.module.generators());
    for phi in domain.generator_maps()? {
        let composite = match variance {
            Variance::Pre => phi.compose(f)?,
            Variance::Post => f.compose(&phi)?,
        };
        cols.push(codomain.encode(&composite)?);
    }
    let m = Matrix::from_columns(codomain.module.generators(), &cols)?;
    let map = ModuleMorphism::new(domain.module.clone(), codomain.module.clone(), m)?;
    Ok(InducedHom { domain, codomain, map })
}

/// `M ⊗_R N`, presented on pairs of generators `(a, b) ↦ a * |N gens| + b`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: FpModule,
    left: FpModule,
    right: FpModule,
}

pub fn tensor_module(left: &FpModule, right: &FpModule) -> Result<TensorModule> {
    if left.ring() != right.ring() {
        return Err(Error::Endpoint(format!("{} vs {}", left.ring(), right.ring())));
    }
    let ring = *left.ring();
    let from_left = left.relations().kron(&ring, &Matrix::identity(&ring, right.generators()));
    let from_right = Matrix::identity(&ring, left.generators()).kron(&ring, right.relations());
    let rel = from_left.hstack(&from_right)?;
    let module = FpModule::new(ring, left.generators() * right.generators(), rel)?;
    Ok(TensorModule { module, left: left.clone(), right: right.clone() })
}

impl TensorModule {
    pub fn left(&self) -> &FpModule {
        &self.left
    }

    pub fn right(&self) -> &FpModule {
        &self.right
    }

    /// `x ⊗ y` as an element of the tensor module.
    pub fn pure(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let ring = self.left.ring();
        x.iter().flat_map(|a| y.iter().map(move |b| ring.mul(a, b))).collect()
    }
}

/// `f ⊗ g : A ⊗ C -> B ⊗ D`.
pub fn tensor_morphisms(
    f: &ModuleMorphism,
    g: &ModuleMorphism,
    domain: &TensorModule,
    codomain: &TensorModule,
) -> Result<ModuleMorphism> {
    if domain.left() != f.source() || domain.right() != g.source() {
        return Err(Error::Endpoint("domain tensor does not match the sources".into()));
    }
    if codomain.left() != f.target() || codomain.right() != g.target() {
        return Err(Error::Endpoint("codomain tensor does not match the targets".into()));
    }
    let m = f.matrix().kron(f.ring(), g.matrix());
    ModuleMorphism::new(domain.module.clone(), codomain.module.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Elem {
        Elem::from(n)
    }

    fn cyc(n: i64) -> FpModule {
        FpModule::cyclic(Ring::Integers, z(n))
    }

    fn map(s: i64, t: i64, image: i64) -> ModuleMorphism {
        ModuleMorphism::from_image(cyc(s), cyc(t), vec![z(image)]).unwrap()
    }

    fn order(m: &FpModule) -> u64 {
        use num_traits::ToPrimitive;
        m.order().unwrap().to_u64().unwrap()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&map(4, 4, 2)).unwrap();
        assert_eq!(order(&k.module), 2);
        let gen = k.inclusion.apply(&k.module.generator(0)).unwrap();
        assert!(cyc(4).elements_equal(&gen, &[z(2)]).unwrap());
        assert!(kernel(&ModuleMorphism::identity(&cyc(4))).unwrap().module.is_zero_module());
        assert_eq!(order(&kernel(&map(4, 4, 0)).unwrap().module), 4);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&map(4, 4, 2)).unwrap().module.invariant_factors(), &[z(2)]);
        assert!(cokernel(&map(8, 4, 1)).unwrap().module.is_zero_module());
        let zero = ModuleMorphism::zero(&FpModule::zero(Ring::Integers), &cyc(6));
        assert!(cokernel(&zero).unwrap().module.is_isomorphic(&cyc(6)));
    }

    #[test]
    fn image_examples() {
        let im = image(&map(4, 8, 2)).unwrap();
        assert!(im.module.is_isomorphic(&cyc(4)));
        let f = map(4, 8, 2);
        assert!(im.inclusion.compose(&im.corestriction).unwrap().equals(&f).unwrap());
        assert!(image(&map(4, 8, 0)).unwrap().module.is_zero_module());
        assert!(image(&ModuleMorphism::identity(&cyc(8))).unwrap().module.is_isomorphic(&cyc(8)));
    }

    #[test]
    fn hom_examples() {
        let h = hom_module(&cyc(4), &cyc(8)).unwrap();
        assert_eq!(h.module.invariant_factors(), &[z(4)]);
        assert!(hom_module(&cyc(2), &cyc(3)).unwrap().module.is_zero_module());
        assert!(hom_module(&cyc(5), &FpModule::zero(Ring::Integers)).unwrap().module.is_zero_module());
        // decode/encode are inverse on every element
        for e in h.module.elements(64).unwrap() {
            let f = h.decode(&e).unwrap();
            assert!(h.module.elements_equal(&h.encode(&f).unwrap(), &e).unwrap());
        }
        let free = FpModule::free(Ring::Integers, 1);
        assert_eq!(hom_module(&free, &free).unwrap().module.free_rank(), 1);
        assert!(hom_module(&cyc(3), &free).unwrap().module.is_zero_module());
    }

    #[test]
    fn induced_hom_examples() {
        let mu = map(2, 4, 2);
        let ind = induced_hom(&mu, &cyc(8), Variance::Pre).unwrap();
        assert!(ind.map.is_surjective().unwrap());
        let id = induced_hom(&ModuleMorphism::identity(&cyc(4)), &cyc(8), Variance::Pre).unwrap();
        assert!(id.map.equals(&ModuleMorphism::identity(&id.domain.module)).unwrap());
        let zero = induced_hom(&map(4, 4, 0), &cyc(8), Variance::Post).unwrap();
        assert!(zero.map.is_zero().unwrap());
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_module(&cyc(4), &cyc(6)).unwrap().module.invariant_factors(), &[z(2)]);
        assert_eq!(tensor_module(&cyc(4), &cyc(8)).unwrap().module.invariant_factors(), &[z(4)]);
        let m = FpModule::from_invariants(Ring::Integers, &[z(2), z(6)], 1);
        let t = tensor_module(&m, &FpModule::free(Ring::Integers, 1)).unwrap();
        assert!(t.module.is_isomorphic(&m));
    }

    #[test]
    fn submodule_quotient_examples() {
        let sq = submodule_quotient(&cyc(8), &Matrix::int(&[&[4]])).unwrap();
        assert_eq!(order(&sq.sub), 2);
        assert_eq!(order(&sq.quotient), 4);
        let sq = submodule_quotient(&cyc(8), &Matrix::int(&[&[0]])).unwrap();
        assert!(sq.sub.is_zero_module());
        assert!(sq.quotient.is_isomorphic(&cyc(8)));
        let sq = submodule_quotient(&cyc(8), &Matrix::int(&[&[2]])).unwrap();
        assert_eq!(order(&sq.sub), 4);
        assert_eq!(order(&sq.quotient), 2);
    }

    #[test]
    fn submodule_equality_by_double_inclusion() {
        let m = cyc(8);
        assert!(same_submodule(&m, &Matrix::int(&[&[2]]), &Matrix::int(&[&[6]])).unwrap());
        assert!(!same_submodule(&m, &Matrix::int(&[&[2]]), &Matrix::int(&[&[4]])).unwrap());
        assert!(submodule_contains(&m, &Matrix::int(&[&[2]]), &Matrix::int(&[&[4]])).unwrap());
    }
}
