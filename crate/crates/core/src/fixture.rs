//! JSON fixture formats for modules, morphisms and inverse systems.
//!
//! A module is a generator count plus a relations matrix whose columns are
//! the relations:
//!
//! ```json
//! {"ring": {"kind": "integers"}, "generators": 1,
//!  "relations": {"rows": 1, "cols": 1, "entries": [[4]]}}
//! ```
//!
//! Polynomial entries are coefficient arrays, lowest degree first.

use serde::{Deserialize, Serialize};

use crate::exactalg::{Matrix, Ring};
use crate::error::{Error, Result};
use crate::fpmod::{FpModule, ModuleMorphism};
use crate::towers::InverseSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub generators: usize,
    pub relations: Matrix,
}

impl ModuleSpec {
    pub fn of(m: &FpModule) -> ModuleSpec {
        ModuleSpec { generators: m.generators(), relations: m.relations().clone() }
    }

    pub fn build(&self, ring: Ring) -> Result<FpModule> {
        check_entries(&ring, &self.relations)?;
        if self.relations.cols() == 0 {
            return Ok(FpModule::free(ring, self.generators));
        }
        FpModule::new(ring, self.generators, self.relations.clone())
    }
}

fn check_entries(ring: &Ring, m: &Matrix) -> Result<()> {
    for row in m.to_rows() {
        for x in &row {
            if !ring.owns(x) {
                return Err(Error::Parse(format!("entry {x:?} is not an element of {ring}")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFixture {
    pub ring: Ring,
    #[serde(flatten)]
    pub module: ModuleSpec,
}

impl ModuleFixture {
    pub fn of(m: &FpModule) -> ModuleFixture {
        ModuleFixture { ring: *m.ring(), module: ModuleSpec::of(m) }
    }

    pub fn build(&self) -> Result<FpModule> {
        self.module.build(self.ring)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFixture {
    pub ring: Ring,
    pub source: ModuleSpec,
    pub target: ModuleSpec,
    pub matrix: Matrix,
}

impl MorphismFixture {
    pub fn of(f: &ModuleMorphism) -> MorphismFixture {
        MorphismFixture {
            ring: *f.ring(),
            source: ModuleSpec::of(f.source()),
            target: ModuleSpec::of(f.target()),
            matrix: f.matrix().clone(),
        }
    }

    pub fn build(&self) -> Result<ModuleMorphism> {
        check_entries(&self.ring, &self.matrix)?;
        ModuleMorphism::new(self.source.build(self.ring)?, self.target.build(self.ring)?, self.matrix.clone())
    }
}

/// `M_1 <- M_2 <- ... <- M_L`; `maps[n]` goes from `modules[n + 1]` to
/// `modules[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFixture {
    pub ring: Ring,
    pub modules: Vec<ModuleSpec>,
    pub maps: Vec<Matrix>,
}

impl SystemFixture {
    pub fn build(&self) -> Result<InverseSystem> {
        let modules = self.modules.iter().map(|m| m.build(self.ring)).collect::<Result<Vec<_>>>()?;
        if self.maps.len() + 1 != modules.len() {
            return Err(Error::Dimension(format!("{} modules need {} maps", modules.len(), modules.len().saturating_sub(1))));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(n, m)| {
                check_entries(&self.ring, m)?;
                ModuleMorphism::new(modules[n + 1].clone(), modules[n].clone(), m.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        InverseSystem::new(modules, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Elem;
    use crate::towers::{mittag_leffler_check, MittagLeffler};

    #[test]
    fn module_round_trip() {
        let m = FpModule::cyclic(Ring::Integers, Elem::from(12));
        let json = serde_json::to_string(&ModuleFixture::of(&m)).unwrap();
        assert_eq!(json, r#"{"ring":{"kind":"integers"},"generators":1,"relations":{"rows":1,"cols":1,"entries":[[12]]}}"#);
        let back: ModuleFixture = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), m);
    }

    #[test]
    fn polynomial_entries_are_checked() {
        let json = r#"{"ring":{"kind":"polynomials-over-prime-field","characteristic":2},
            "generators":1,"relations":{"rows":1,"cols":1,"entries":[[[0,0,1]]]}}"#;
        let m: ModuleFixture = serde_json::from_str(json).unwrap();
        assert_eq!(m.build().unwrap().order().unwrap(), 4u32.into());
        let bad = json.replace("[0,0,1]", "[0,0,3]");
        let m: ModuleFixture = serde_json::from_str(&bad).unwrap();
        assert!(m.build().is_err());
    }

    #[test]
    fn ill_defined_morphism_is_rejected() {
        let json = r#"{"ring":{"kind":"integers"},
            "source":{"generators":1,"relations":{"rows":1,"cols":1,"entries":[[2]]}},
            "target":{"generators":1,"relations":{"rows":1,"cols":1,"entries":[[4]]}},
            "matrix":{"rows":1,"cols":1,"entries":[[1]]}}"#;
        let f: MorphismFixture = serde_json::from_str(json).unwrap();
        assert!(f.build().is_err());
        let ok = json.replace("[[1]]}}", "[[2]]}}");
        let f: MorphismFixture = serde_json::from_str(&ok).unwrap();
        assert!(f.build().unwrap().is_injective().unwrap());
    }

    #[test]
    fn free_doubling_system() {
        let free = r#"{"generators":1,"relations":{"rows":1,"cols":0,"entries":[[]]}}"#;
        let json = format!(
            r#"{{"ring":{{"kind":"integers"}},"modules":[{free},{free},{free}],
              "maps":[{{"rows":1,"cols":1,"entries":[[2]]}},{{"rows":1,"cols":1,"entries":[[2]]}}]}}"#
        );
        let s: SystemFixture = serde_json::from_str(&json).unwrap();
        let v = mittag_leffler_check(&s.build().unwrap(), 8).unwrap();
        assert_eq!(v, MittagLeffler::NotStabilizedWithinHorizon { level: 1 });
    }
}
