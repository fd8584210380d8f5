use serde::Serialize;

use super::{r_components, tree_swamp_certificate, GeometryError, SwampCertificate};
use crate::group::{EnumConfig, GroupKind};
use crate::order::OrderOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurveyVerdict {
    /// One component at every radius.
    PrietoConsistent,
    /// Several components at every radius, and a tree swamp certificate.
    HuchaCertified,
    /// Several components at every radius, without a certificate.
    Evidence,
    /// Counts differ in kind between radii.
    Mixed,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyReport {
    pub order: String,
    pub r: usize,
    pub radii: Vec<usize>,
    pub counts: Vec<usize>,
    /// All counts equal.
    pub stable: bool,
    pub verdict: SurveyVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SwampCertificate>,
    pub message: String,
}

/// Component counts at width `r` over several radii. On a free group of rank
/// at least 2 with several components everywhere, a tree swamp certificate
/// is attempted with the default search radius `r + 8`.
pub fn connectivity_survey(
    o: &OrderOracle,
    r: usize,
    radii: &[usize],
    config: &EnumConfig,
) -> Result<SurveyReport, GeometryError> {
    if radii.is_empty() {
        return Err(GeometryError::InvalidArgument("no radii given".into()));
    }
    let counts = radii
        .iter()
        .map(|&radius| Ok(r_components(o, r, radius, config)?.count()))
        .collect::<Result<Vec<usize>, GeometryError>>()?;
    let stable = counts.windows(2).all(|w| w[0] == w[1]);
    let max_radius = *radii.iter().max().expect("nonempty");

    let free = matches!(o.model().kind(), GroupKind::Free(k) if *k >= 2);
    let (verdict, certificate) = if counts.iter().all(|&c| c == 1) {
        (SurveyVerdict::PrietoConsistent, None)
    } else if counts.iter().all(|&c| c >= 2) {
        match free.then(|| tree_swamp_certificate(o, r, r + 8, config)) {
            Some(Ok(cert)) => (SurveyVerdict::HuchaCertified, Some(cert)),
            Some(Err(GeometryError::WitnessNotFound { .. })) | None => (SurveyVerdict::Evidence, None),
            Some(Err(e)) => return Err(e),
        }
    } else {
        (SurveyVerdict::Mixed, None)
    };
    let message = match verdict {
        SurveyVerdict::PrietoConsistent => format!("Prieto-consistent at ({r}, {max_radius})"),
        SurveyVerdict::HuchaCertified => format!("Hucha-certified at width {r}"),
        SurveyVerdict::Evidence => format!("disconnected at width {r} up to radius {max_radius}, uncertified"),
        SurveyVerdict::Mixed => format!("inconclusive at width {r}: counts {counts:?}"),
    };
    Ok(SurveyReport {
        order: o.name().to_string(),
        r,
        radii: radii.to_vec(),
        counts,
        stable,
        verdict,
        certificate,
        message,
    })
}
