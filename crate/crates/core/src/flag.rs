//! Tangent-space data of `G/T` bundled once per root system.

use crate::chevalley::{build_m_basis, chevalley_constants, killing_gram, Killing, MBasis, MStructure, StructureConstants};
use crate::error::Result;
use crate::rootsys::{Family, RootSystem};

/// Root system, structure constants, Killing form and the m-basis with its
/// bracket table. Immutable after construction.
#[derive(Debug, Clone)]
pub struct FlagManifold {
    rs: RootSystem,
    sc: StructureConstants,
    killing: Killing,
    basis: MBasis,
    mstruct: MStructure,
}

impl FlagManifold {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::from_root_system(RootSystem::build(family, rank)?))
    }

    pub fn from_root_system(rs: RootSystem) -> Self {
        let sc = chevalley_constants(&rs);
        let killing = killing_gram(&sc);
        let basis = build_m_basis(&rs);
        let mstruct = MStructure::new(&sc, &basis);
        FlagManifold {
            rs,
            sc,
            killing,
            basis,
            mstruct,
        }
    }

    pub fn roots(&self) -> &RootSystem {
        &self.rs
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn killing(&self) -> &Killing {
        &self.killing
    }

    pub fn basis(&self) -> &MBasis {
        &self.basis
    }

    pub fn m_structure(&self) -> &MStructure {
        &self.mstruct
    }

    /// `dim m = 2|R⁺|`.
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}
