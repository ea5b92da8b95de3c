use super::module::FpModule;
use crate::exactalg::{solve_linear, solve_matrix, Elem, Matrix, Ring};
use crate::error::{Error, Result};

/// A homomorphism between finitely presented modules, given by the images
/// of the source generators (one column per source generator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: FpModule,
    target: FpModule,
    matrix: Matrix,
}

/// Tests whether `matrix` induces a well-defined map `source -> target`.
///
/// On success returns the certificate `C` with `matrix * R_source =
/// R_target * C`; `Ok(None)` means some relation of the source is sent
/// outside the relation span of the target.
pub fn is_well_defined(source: &FpModule, target: &FpModule, matrix: &Matrix) -> Result<Option<Matrix>> {
    check_shape(source, target, matrix)?;
    let ring = source.ring();
    let images = matrix.mul(ring, source.relations())?;
    solve_matrix(ring, target.relations(), &images)
}

fn check_shape(source: &FpModule, target: &FpModule, matrix: &Matrix) -> Result<()> {
    if source.ring() != target.ring() {
        return Err(Error::Endpoint(format!("{} vs {}", source.ring(), target.ring())));
    }
    if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix between modules on {} and {} generators",
            matrix.rows(),
            matrix.cols(),
            source.generators(),
            target.generators()
        )));
    }
    Ok(())
}

impl ModuleMorphism {
    pub fn new(source: FpModule, target: FpModule, matrix: Matrix) -> Result<ModuleMorphism> {
        check_shape(&source, &target, &matrix)?;
        let ring = *source.ring();
        let images = matrix.mul(&ring, source.relations())?;
        for j in 0..images.cols() {
            if !target.is_zero_element(&images.column(j))? {
                return Err(Error::NotWellDefined(format!(
                    "relation {j} of the source maps to a nonzero element"
                )));
            }
        }
        Ok(ModuleMorphism { source, target, matrix })
    }

    /// Skips the well-definedness check; for maps that hold by construction.
    pub(crate) fn unchecked(source: FpModule, target: FpModule, matrix: Matrix) -> ModuleMorphism {
        debug_assert_eq!(matrix.rows(), target.generators());
        debug_assert_eq!(matrix.cols(), source.generators());
        ModuleMorphism { source, target, matrix }
    }

    /// The map sending the single generator of a cyclic source to `image`.
    pub fn from_image(source: FpModule, target: FpModule, image: Vec<Elem>) -> Result<ModuleMorphism> {
        let m = Matrix::from_columns(target.generators(), &[image])?;
        ModuleMorphism::new(source, target, m)
    }

    pub fn identity(m: &FpModule) -> ModuleMorphism {
        let id = Matrix::identity(m.ring(), m.generators());
        ModuleMorphism::unchecked(m.clone(), m.clone(), id)
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> ModuleMorphism {
        let z = Matrix::zeros(source.ring(), target.generators(), source.generators());
        ModuleMorphism::unchecked(source.clone(), target.clone(), z)
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    /// Certificate that the map is well defined; see [`is_well_defined`].
    pub fn certificate(&self) -> Result<Option<Matrix>> {
        is_well_defined(&self.source, &self.target, &self.matrix)
    }

    pub fn apply(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.matrix.mul_vec(self.ring(), x)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMorphism) -> Result<ModuleMorphism> {
        if first.target != self.source {
            return Err(Error::Endpoint("target of the first map is not the source of the second".into()));
        }
        let m = self.matrix.mul(self.ring(), &first.matrix)?;
        Ok(ModuleMorphism::unchecked(first.source.clone(), self.target.clone(), m))
    }

    fn same_endpoints(&self, other: &ModuleMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Endpoint("morphisms have different endpoints".into()));
        }
        Ok(())
    }

    /// Equality modulo the target relations.
    pub fn equals(&self, other: &ModuleMorphism) -> Result<bool> {
        self.same_endpoints(other)?;
        self.sub(other)?.is_zero()
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.same_endpoints(other)?;
        let m = self.matrix.add(self.ring(), &other.matrix)?;
        Ok(ModuleMorphism::unchecked(self.source.clone(), self.target.clone(), m))
    }

    pub fn sub(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.same_endpoints(other)?;
        let m = self.matrix.sub(self.ring(), &other.matrix)?;
        Ok(ModuleMorphism::unchecked(self.source.clone(), self.target.clone(), m))
    }

    pub fn scale(&self, r: &Elem) -> ModuleMorphism {
        let m = self.matrix.scale(self.ring(), r);
        ModuleMorphism::unchecked(self.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero(&self) -> Result<bool> {
        for j in 0..self.matrix.cols() {
            if !self.target.is_zero_element(&self.matrix.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(super::kernel(self)?.module.is_zero_module())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(super::cokernel(self)?.module.is_zero_module())
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_injective()? && self.is_surjective()?)
    }

    /// Some `x` with `self(x) = y` in the target, if one exists.
    pub fn preimage(&self, y: &[Elem]) -> Result<Option<Vec<Elem>>> {
        let ring = self.ring();
        let system = self.matrix.hstack(self.target.relations())?;
        Ok(solve_linear(ring, &system, y)?.map(|mut x| {
            x.truncate(self.source.generators());
            x
        }))
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<ModuleMorphism> {
        if !self.is_injective()? {
            return Err(Error::NotIsomorphism("map has a nonzero kernel".into()));
        }
        let mut cols = Vec::with_capacity(self.target.generators());
        for j in 0..self.target.generators() {
            match self.preimage(&self.target.generator(j))? {
                Some(x) => cols.push(x),
                None => return Err(Error::NotIsomorphism(format!("generator {j} is not in the image"))),
            }
        }
        let m = Matrix::from_columns(self.source.generators(), &cols)?;
        ModuleMorphism::new(self.target.clone(), self.source.clone(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: i64) -> FpModule {
        FpModule::cyclic(Ring::Integers, Elem::from(n))
    }

    fn map(s: i64, t: i64, image: i64) -> Result<ModuleMorphism> {
        ModuleMorphism::from_image(cyc(s), cyc(t), vec![Elem::from(image)])
    }

    #[test]
    fn well_definedness_examples() {
        let m = Matrix::int(&[&[2]]);
        let cert = is_well_defined(&cyc(4), &cyc(8), &m).unwrap();
        assert_eq!(cert, Some(Matrix::int(&[&[1]])));
        assert_eq!(is_well_defined(&cyc(4), &cyc(8), &Matrix::int(&[&[1]])).unwrap(), None);
        assert!(matches!(map(4, 8, 1), Err(Error::NotWellDefined(_))));
        let id = ModuleMorphism::identity(&cyc(6));
        assert!(id.certificate().unwrap().is_some());
        assert!(is_well_defined(&cyc(4), &cyc(8), &Matrix::int(&[&[1, 1]])).is_err());
    }

    #[test]
    fn composition_and_equality() {
        let mod4 = map(8, 4, 1).unwrap();
        let mod2 = map(4, 2, 1).unwrap();
        let direct = map(8, 2, 1).unwrap();
        assert!(mod2.compose(&mod4).unwrap().equals(&direct).unwrap());

        let f = map(4, 2, 1).unwrap();
        assert!(f.compose(&ModuleMorphism::identity(&cyc(4))).unwrap().equals(&f).unwrap());
        assert!(map(4, 2, 1).unwrap().equals(&map(4, 2, 3).unwrap()).unwrap());
        assert!(!map(4, 4, 1).unwrap().equals(&map(4, 4, 3).unwrap()).unwrap());
        assert!(mod4.compose(&mod2).is_err());
    }

    #[test]
    fn inverse_of_automorphism() {
        let f = map(8, 8, 3).unwrap();
        let g = f.inverse().unwrap();
        assert!(g.compose(&f).unwrap().equals(&ModuleMorphism::identity(&cyc(8))).unwrap());
        assert!(map(8, 8, 2).unwrap().inverse().is_err());
    }
}
