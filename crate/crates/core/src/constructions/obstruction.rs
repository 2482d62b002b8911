use serde::{Deserialize, Serialize};

use super::dihedral::build_dihedral_pair;
use crate::error::{Error, Result};
use crate::f2core::{standard_symplectic, F2Matrix};
use crate::matgroups::{close, preserves_form, fixed_form_conditions, FixedFormConditions, SubgroupHandle, DEFAULT_CAP};
use crate::quadforms::BaseForm;

/// The subgroup `<(sigma, id), (tau, eta)>` of `Sp_{2m}(F2)`.
#[derive(Clone, Debug)]
pub struct ObstructionGroup {
    pub m: usize,
    pub group: SubgroupHandle,
    /// Direct sum of the pair's base form on the first `m - 2` planes and
    /// `a^2 + ab + b^2` on each of the last two planes.
    pub base: BaseForm,
}

/// Embeds a matrix on the first `small_m` hyperbolic planes into dimension
/// `2m`, acting as the identity on the remaining planes.
pub fn embed_planes(g: &F2Matrix, small_m: usize, m: usize) -> Result<F2Matrix> {
    if g.dim() != 2 * small_m || small_m > m {
        return Err(Error::DimensionMismatch { expected: 2 * small_m, got: g.dim() });
    }
    let lift = |x: u64| -> u64 {
        let lo = x & ((1 << small_m) - 1);
        let hi = x >> small_m;
        lo | (hi << m)
    };
    let cols: Vec<u64> = (0..2 * m)
        .map(|j| {
            let plane = j % m;
            if plane < small_m {
                let small_j = if j < m { j } else { small_m + plane };
                lift(g.column(small_j))
            } else {
                1 << j
            }
        })
        .collect();
    F2Matrix::from_columns(2 * m, &cols)
}

/// Swaps hyperbolic planes `a` and `b` (zero-based).
pub fn swap_planes(m: usize, a: usize, b: usize) -> Result<F2Matrix> {
    let cols: Vec<u64> = (0..2 * m)
        .map(|j| {
            let (half, plane) = (j / m, j % m);
            let target = if plane == a {
                b
            } else if plane == b {
                a
            } else {
                plane
            };
            1 << (half * m + target)
        })
        .collect();
    F2Matrix::from_columns(2 * m, &cols)
}

/// Builds the obstruction subgroup for `m >= 3`.
pub fn build_obstruction_group(m: usize) -> Result<ObstructionGroup> {
    if m < 3 {
        return Err(Error::Precondition(format!("m must be at least 3 (got {m})")));
    }
    let pair = build_dihedral_pair(m - 2)?;
    let space = standard_symplectic(m)?;
    let sigma = embed_planes(&pair.sigma, m - 2, m)?;
    let tau = embed_planes(&pair.tau, m - 2, m)?;
    let eta = swap_planes(m, m - 2, m - 1)?;
    let tau_eta = tau.mul(&eta)?;
    let group = close(&[sigma, tau_eta], &space, DEFAULT_CAP)?;
    let anisotropic = |plane: usize| (1u64 << plane) | (1u64 << (m + plane));
    let q = anisotropic(0) | anisotropic(m - 2) | anisotropic(m - 1);
    let base = BaseForm::from_basis_values(space, q)?;
    if base.arf() != 1 {
        return Err(Error::BaseFormNotArfOne);
    }
    if !group.packed_generators().iter().all(|g| preserves_form(g, &base)) {
        return Err(Error::Internal("generators leave the direct-sum form".into()));
    }
    Ok(ObstructionGroup { m, group, base })
}

/// JSON summary of the obstruction subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub schema: String,
    pub m: usize,
    pub order: usize,
    pub abelian: bool,
    pub generators: Vec<F2Matrix>,
    pub base_form_basis_values: String,
    pub preserves_base_form: bool,
    pub conditions: FixedFormConditions,
}

pub fn obstruction_report(m: usize) -> Result<ObstructionReport> {
    let og = build_obstruction_group(m)?;
    let conditions = fixed_form_conditions(&og.group, &og.base)?;
    let dim = 2 * m;
    Ok(ObstructionReport {
        schema: "symdet.obstruction-group.v1".into(),
        m,
        order: og.group.order(),
        abelian: og.group.is_abelian(),
        generators: og.group.generators(),
        base_form_basis_values: crate::f2core::F2Vector::new(dim, og.base.basis_values())?.to_string(),
        preserves_base_form: og.group.elements().iter().all(|g| preserves_form(g, &og.base)),
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::is_symplectic;

    #[test]
    fn m3_group() {
        let og = build_obstruction_group(3).unwrap();
        assert_eq!(og.group.order(), 6);
        assert!(!og.group.is_abelian());
        let c = fixed_form_conditions(&og.group, &og.base).unwrap();
        assert!(c.cond1 && c.cond2);
    }

    #[test]
    fn m4_group() {
        let r = obstruction_report(4).unwrap();
        assert_eq!(r.order, 10);
        assert!(r.preserves_base_form);
        assert!(r.conditions.both());
    }

    #[test]
    fn embedding_and_swap_are_symplectic() {
        let sp = standard_symplectic(4).unwrap();
        let small_sp = standard_symplectic(2).unwrap();
        for v in 1..16 {
            let v = crate::f2core::F2Vector::new(4, v).unwrap();
            let t = crate::matgroups::transvection(&v, &small_sp).unwrap();
            assert!(is_symplectic(&embed_planes(&t, 2, 4).unwrap(), &sp));
        }
        let eta = swap_planes(4, 2, 3).unwrap();
        assert!(is_symplectic(&eta, &sp));
        assert!(eta.mul(&eta).unwrap().is_identity());
    }

    #[test]
    fn small_m_rejected() {
        assert!(build_obstruction_group(2).is_err());
    }
}
