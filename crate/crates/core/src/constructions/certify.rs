use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::{standard_symplectic, F2Matrix, F2Vector};
use crate::matgroups::{close, common_fixed_arf0, fixed_form_conditions, SubgroupHandle, DEFAULT_CAP};
use crate::quadforms::standard_base_form;

/// Global image plus local images for a plane curve of degree `n`.
#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    pub m: usize,
    pub group: SubgroupHandle,
    pub local_images: Vec<(String, SubgroupHandle)>,
    pub degree_n: usize,
    pub has_local_points_everywhere: bool,
    /// Required when `degree_n >= 5`; quartics are handled automatically.
    pub theta_noneffective: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorList {
    pub generators: Vec<F2Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalImageSpec {
    pub label: String,
    pub generators: Vec<F2Matrix>,
}

/// On-disk certificate format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub m: usize,
    pub degree_n: usize,
    pub has_local_points_everywhere: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_noneffective: Option<bool>,
    #[serde(rename = "G")]
    pub group: GeneratorList,
    pub local_images: Vec<LocalImageSpec>,
}

impl CertificateFile {
    pub fn materialize(&self) -> Result<ObstructionCertificate> {
        let space = standard_symplectic(self.m)?;
        let group = close(&self.group.generators, &space, DEFAULT_CAP)?;
        let local_images = self
            .local_images
            .iter()
            .map(|l| Ok((l.label.clone(), close(&l.generators, &space, DEFAULT_CAP)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ObstructionCertificate {
            m: self.m,
            group,
            local_images,
            degree_n: self.degree_n,
            has_local_points_everywhere: self.has_local_points_everywhere,
            theta_noneffective: self.theta_noneffective,
        })
    }
}

impl ObstructionCertificate {
    /// Certificate whose local images are all cyclic subgroups of `group`.
    pub fn with_cyclic_locals(group: SubgroupHandle, degree_n: usize, has_local_points_everywhere: bool) -> Self {
        let local_images = group
            .cyclic_subgroups()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("cyclic-{i}"), c))
            .collect();
        Self {
            m: group.m(),
            group,
            local_images,
            degree_n,
            has_local_points_everywhere,
            theta_noneffective: None,
        }
    }

    pub fn to_file(&self) -> CertificateFile {
        CertificateFile {
            m: self.m,
            degree_n: self.degree_n,
            has_local_points_everywhere: self.has_local_points_everywhere,
            theta_noneffective: self.theta_noneffective,
            group: GeneratorList { generators: self.group.generators() },
            local_images: self
                .local_images
                .iter()
                .map(|(label, h)| LocalImageSpec { label: label.clone(), generators: h.generators() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVerdict {
    pub label: String,
    pub order: usize,
    pub cyclic: bool,
    pub fixes_arf0_form: bool,
    pub witness: Option<F2Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema: String,
    pub m: usize,
    pub degree_n: usize,
    pub group_order: usize,
    pub global_obstruction: bool,
    pub every_element_fixes_arf0: bool,
    pub local_ok: bool,
    pub locals: Vec<LocalVerdict>,
    pub points_condition: bool,
    pub theta_noneffective: bool,
    pub certified: bool,
}

fn is_cyclic(h: &SubgroupHandle) -> bool {
    let n = h.order() as u64;
    h.elements().iter().any(|g| g.order(h.dim(), n) == Some(n))
}

/// Decides whether the data certifies a curve that has points everywhere
/// locally, no global point-free obstruction is lifted, and no symmetric
/// determinantal representation over the base field.
pub fn certify_counterexample(cert: &ObstructionCertificate) -> Result<Verdict> {
    let n = cert.degree_n;
    if n < 4 {
        return Err(Error::Precondition(format!("degree must be at least 4 (got {n})")));
    }
    if 2 * cert.m != (n - 1) * (n - 2) || cert.group.m() != cert.m {
        return Err(Error::DimensionMismatch { expected: (n - 1) * (n - 2), got: 2 * cert.m });
    }
    let theta = match (n, cert.theta_noneffective) {
        (4, _) => true,
        (_, Some(flag)) => flag,
        (_, None) => {
            return Err(Error::Precondition("theta_noneffective must be supplied for degree >= 5".into()))
        }
    };
    let space = standard_symplectic(cert.m)?;
    let base = standard_base_form(&space)?;
    let conditions = fixed_form_conditions(&cert.group, &base)?;
    let mut locals = Vec::new();
    for (label, h) in &cert.local_images {
        if h.m() != cert.m {
            return Err(Error::DimensionMismatch { expected: cert.m, got: h.m() });
        }
        if !h.is_subgroup_of(&cert.group) {
            return Err(Error::Precondition(format!("local image {label} is not a subgroup of G")));
        }
        let fixed = common_fixed_arf0(h.packed_generators(), cert.m, &base);
        let witness = fixed.first().map(|&v| F2Vector::new(2 * cert.m, v)).transpose()?;
        locals.push(LocalVerdict {
            label: label.clone(),
            order: h.order(),
            cyclic: is_cyclic(h),
            fixes_arf0_form: witness.is_some(),
            witness,
        });
    }
    let local_ok = locals.iter().all(|l| l.fixes_arf0_form);
    let points_condition = cert.has_local_points_everywhere || n % 2 == 1;
    let certified = conditions.cond1 && local_ok && points_condition && theta;
    Ok(Verdict {
        schema: "symdet.certificate-verdict.v1".into(),
        m: cert.m,
        degree_n: n,
        group_order: cert.group.order(),
        global_obstruction: conditions.cond1,
        every_element_fixes_arf0: conditions.cond2,
        local_ok,
        locals,
        points_condition,
        theta_noneffective: theta,
        certified,
    })
}
