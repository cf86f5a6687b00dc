//! End-to-end exact certificate for a manifold: relator check, peripheral
//! normalisation, and the Jacobian certificate on chosen peripheral classes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cusp::{CuspShape, Scalar};
use crate::deform::{sigma_derivative_matrix, CertificateRecord, JacobianCertificate, PeripheralClass};
use crate::error::Result;
use crate::exact::Matrix;
use crate::manifold::{check_relators, peripheral_parabolic_check, rho_n_of_word, Manifold};
use crate::word::Word;

/// Whether τ stays an indeterminate or takes the manifold's value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauMode {
    Formal,
    Specialize,
}

/// Certificates for one cusp.
#[derive(Clone, Debug)]
pub struct CuspCertificate {
    pub cusp: usize,
    pub shape: CuspShape,
    /// The torus model `±exp(s·h₊)` agrees with `ρ_n` of the normalised lift.
    pub model_matches: bool,
    pub classes: Vec<(Word, JacobianCertificate)>,
}

/// Everything `certify` reports for one `n`.
#[derive(Clone, Debug)]
pub struct ManifoldCertificate {
    pub manifold: String,
    pub n: usize,
    pub relators_central: bool,
    pub cusps: Vec<CuspCertificate>,
}

impl ManifoldCertificate {
    pub fn certified(&self) -> bool {
        self.relators_central
            && self
                .cusps
                .iter()
                .all(|c| c.model_matches && c.classes.iter().all(|(_, cert)| cert.certified))
    }

    pub fn record(&self) -> ManifoldRecord {
        ManifoldRecord {
            manifold: self.manifold.clone(),
            n: self.n,
            relators_central: self.relators_central,
            cusps: self
                .cusps
                .iter()
                .map(|c| CuspRecord {
                    cusp: c.cusp,
                    tau: c.shape.tau().to_string(),
                    signs: c.shape.signs().iter().map(|s| s.to_string()).collect(),
                    model_matches: c.model_matches,
                    certificates: c.classes.iter().map(|(w, cert)| cert.record(&w.to_string())).collect(),
                })
                .collect(),
            verdict: if self.certified() { "certified" } else { "failed" }.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspRecord {
    pub cusp: usize,
    pub tau: String,
    pub signs: Vec<String>,
    pub model_matches: bool,
    pub certificates: Vec<CertificateRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldRecord {
    pub manifold: String,
    pub n: usize,
    pub relators_central: bool,
    pub cusps: Vec<CuspRecord>,
    pub verdict: String,
}

/// Runs the exact pipeline on each cusp for the peripheral classes given.
pub fn certify_manifold(
    manifold: &Manifold,
    n: usize,
    tau_mode: TauMode,
    classes: &[PeripheralClass],
) -> Result<ManifoldCertificate> {
    let relators_central = check_relators(&manifold.presentation, &manifold.lift).is_ok();
    let reports = peripheral_parabolic_check(&manifold.presentation, &manifold.lift)?;
    let cusps = reports
        .iter()
        .enumerate()
        .map(|(cusp, report)| {
            let specialized = CuspShape::specialized(report.tau.clone())?
                .with_signs(report.meridian_sign, report.longitude_sign);
            let shape = match tau_mode {
                TauMode::Specialize => specialized.clone(),
                TauMode::Formal => {
                    CuspShape::formal().with_signs(report.meridian_sign, report.longitude_sign)
                }
            };
            let mut model_matches = true;
            for class in classes {
                let word = report
                    .meridian
                    .power(class.p)
                    .concat(&report.longitude.power(class.q));
                let exact = rho_n_of_word(&report.normalized, n, &word)?;
                let model: Matrix<Scalar> = specialized.rho_n(n, class.p, class.q);
                model_matches &= model == exact.map(|x| Scalar::constant(x.clone()));
            }
            let certs = classes
                .par_iter()
                .map(|&class| {
                    let word = report
                        .meridian
                        .power(class.p)
                        .concat(&report.longitude.power(class.q));
                    Ok((word, sigma_derivative_matrix(n, &shape, class)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CuspCertificate {
                cusp,
                shape,
                model_matches,
                classes: certs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ManifoldCertificate {
        manifold: manifold.name.clone(),
        n,
        relators_central,
        cusps,
    })
}
