use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::{is_symplectic, standard_symplectic, F2Matrix, F2Vector};
use crate::gf2k::{make_field, BinaryFieldElement, FieldRepr};
use crate::matgroups::{close, has_nonzero_fixed_vector, preserves_form, PackedMat, DEFAULT_CAP};
use crate::quadforms::{adapted_symplectic_basis, standard_base_form, FormValues};

/// Largest `m` for which the pair is built.
pub const MAX_PAIR_M: usize = 6;

/// Multiplication by a norm-one generator and the field involution, written
/// in standard symplectic coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralPair {
    pub m: usize,
    pub sigma: F2Matrix,
    pub tau: F2Matrix,
    /// Columns are the standard basis `e_1..e_m, f_1..f_m` written in the
    /// polynomial basis of the field.
    pub basis_change: F2Matrix,
    pub order_sigma: u64,
    pub field: FieldRepr,
}

/// Builds `(sigma, tau)` on `F(2^{2m})` viewed as `F2^{2m}`.
///
/// The trace form `Tr(x * conj(y))` and the form `Tr(N(x))` are moved to
/// standard coordinates by an adapted symplectic basis, where the latter
/// becomes exactly the standard Arf-1 base form. The transport is checked on
/// every vector.
pub fn build_dihedral_pair(m: usize) -> Result<DihedralPair> {
    if !(1..=MAX_PAIR_M).contains(&m) {
        return Err(Error::DimensionOutOfRange(m));
    }
    let field = make_field(2 * m as u32)?;
    let gram = field.trace_form_gram()?;
    let q = |x: u64| field.norm_trace_form(BinaryFieldElement(x)).expect("even degree");
    let (t, arf) = adapted_symplectic_basis(&gram, q)?;
    if arf != 1 {
        return Err(Error::BaseFormNotArfOne);
    }
    let space = standard_symplectic(m)?;
    let base = standard_base_form(&space)?;
    if t.transpose().mul(&gram)?.mul(&t)? != *space.gram() {
        return Err(Error::Internal("basis change does not carry the trace form to J".into()));
    }
    for x in 0..1u64 << (2 * m) {
        if q(t.apply(x)) != base.value(x) {
            return Err(Error::Internal(format!("form transport fails at {x:#x}")));
        }
    }
    let s = field.norm_one_generator()?;
    let sigma_f = field.as_f2_linear(|x| field.mul(s, x))?;
    let tau_f = field.as_f2_linear(|x| field.conjugate(x).expect("even degree"))?;
    let t_inv = t.inverse()?;
    let sigma = t_inv.mul(&sigma_f)?.mul(&t)?;
    let tau = t_inv.mul(&tau_f)?.mul(&t)?;
    Ok(DihedralPair {
        m,
        sigma,
        tau,
        basis_change: t,
        order_sigma: field.order(s)?,
        field: field.repr(),
    })
}

/// Outcome of checking the five dihedral-pair conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub schema: String,
    pub m: usize,
    pub order_sigma: u64,
    pub group_order: usize,
    pub in_orthogonal_group: bool,
    pub sigma_nontrivial: bool,
    pub tau_involution: bool,
    pub tau_inverts_sigma: bool,
    pub powers_fixed_point_free: bool,
    /// For each `i`, the first `x` with `tau sigma^i x = x` and `Q0(x) = 1`.
    pub witnesses: Vec<F2Vector>,
    pub sigma: F2Matrix,
    pub tau: F2Matrix,
}

impl PairReport {
    pub fn all_pass(&self) -> bool {
        self.in_orthogonal_group
            && self.sigma_nontrivial
            && self.tau_involution
            && self.tau_inverts_sigma
            && self.powers_fixed_point_free
            && self.witnesses.len() as u64 == self.order_sigma
    }
}

/// Checks: (a) `sigma != 1`; (b) `tau^2 = 1`; (c) `tau sigma tau = sigma^-1`;
/// (d) every nontrivial power of `sigma` fixes no nonzero vector; (e) every
/// `tau sigma^i` fixes some `x` with `Q0(x) = 1`. Also checks both lie in
/// `O(Q0)` and that they generate a group of order `2 * ord(sigma)`.
pub fn verify_pair(pair: &DihedralPair) -> Result<PairReport> {
    let m = pair.m;
    let dim = 2 * m;
    let space = standard_symplectic(m)?;
    let base = standard_base_form(&space)?;
    let id = F2Matrix::identity(dim)?;
    let sigma = &pair.sigma;
    let tau = &pair.tau;
    let in_o = [sigma, tau].iter().all(|g| {
        is_symplectic(g, &space) && preserves_form(&PackedMat::from_matrix(g).expect("dim <= 12"), &base)
    });
    if !in_o {
        return Err(Error::NotSymplectic);
    }
    if sigma.is_identity() {
        return Err(Error::ConditionFailed { condition: 'a', index: 1 });
    }
    if !tau.mul(tau)?.is_identity() {
        return Err(Error::ConditionFailed { condition: 'b', index: 0 });
    }
    let sigma_inv = sigma.inverse()?;
    if tau.mul(sigma)?.mul(tau)? != sigma_inv {
        return Err(Error::ConditionFailed { condition: 'c', index: 1 });
    }
    let mut power = id.clone();
    let mut witnesses = Vec::new();
    for i in 0..pair.order_sigma as usize {
        if i > 0 && !power.is_identity() && has_nonzero_fixed_vector(&power).is_some() {
            return Err(Error::ConditionFailed { condition: 'd', index: i });
        }
        let g = tau.mul(&power)?;
        let x = (1..1u64 << dim)
            .find(|&x| g.apply(x) == x && base.value(x))
            .ok_or(Error::ConditionFailed { condition: 'e', index: i })?;
        witnesses.push(F2Vector::new(dim, x)?);
        power = power.mul(sigma)?;
    }
    if !power.is_identity() {
        return Err(Error::Internal("sigma order differs from the norm-one generator order".into()));
    }
    let group = close(&[sigma.clone(), tau.clone()], &space, DEFAULT_CAP)?;
    Ok(PairReport {
        schema: "symdet.dihedral-pair.v1".into(),
        m,
        order_sigma: pair.order_sigma,
        group_order: group.order(),
        in_orthogonal_group: in_o,
        sigma_nontrivial: true,
        tau_involution: true,
        tau_inverts_sigma: true,
        powers_fixed_point_free: true,
        witnesses,
        sigma: sigma.clone(),
        tau: tau.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::{act, all_forms};

    #[test]
    fn orders_and_group_sizes() {
        for m in 1..=5 {
            let pair = build_dihedral_pair(m).unwrap();
            assert_eq!(pair.order_sigma, (1 << m) + 1);
            let report = verify_pair(&pair).unwrap();
            assert!(report.all_pass());
            assert_eq!(report.group_order as u64, 2 * pair.order_sigma);
        }
    }

    #[test]
    fn lands_in_orthogonal_group_by_form_action() {
        for m in 1..=3 {
            let pair = build_dihedral_pair(m).unwrap();
            let space = standard_symplectic(m).unwrap();
            let base = standard_base_form(&space).unwrap();
            let q0 = all_forms(&space, &base).unwrap().into_iter().find(|f| f.v_bits() == 0).unwrap();
            assert_eq!(act(&pair.sigma, &q0, &space).unwrap(), q0);
            assert_eq!(act(&pair.tau, &q0, &space).unwrap(), q0);
        }
    }

    #[test]
    fn sigma_powers_fixed_point_free_m2() {
        let pair = build_dihedral_pair(2).unwrap();
        for i in 1..5 {
            assert!(has_nonzero_fixed_vector(&pair.sigma.pow(i)).is_none());
        }
    }

    #[test]
    fn range_checked() {
        assert!(build_dihedral_pair(0).is_err());
        assert!(build_dihedral_pair(7).is_err());
    }

    #[test]
    fn broken_pair_reports_condition() {
        let mut pair = build_dihedral_pair(2).unwrap();
        pair.tau = pair.sigma.clone();
        assert!(verify_pair(&pair).is_err());
        let mut pair = build_dihedral_pair(2).unwrap();
        pair.sigma = F2Matrix::identity(4).unwrap();
        assert_eq!(verify_pair(&pair), Err(Error::ConditionFailed { condition: 'a', index: 1 }));
    }
}
