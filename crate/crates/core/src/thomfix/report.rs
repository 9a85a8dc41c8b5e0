use num_complex::Complex64;
use num_rational::Rational64;

use super::{
    ccr_validate, cocycle_check, ellipticity_check, quantities, transfer_check_with, CcrMode, CcrReport, Chart,
    CheckResult, FixedPointModel,
};
use crate::error::Result;
use crate::par::Execution;
use crate::theta::ThetaFunction;

/// Results for one component at one special point.
#[derive(Clone, Debug)]
pub struct ComponentAtSpecial {
    pub component: usize,
    pub delta: u8,
    pub delta_prime: u8,
    pub epsilon: i8,
    pub alpha: Rational64,
    pub g: Rational64,
    pub alpha_equals_g: bool,
    pub root_identity: bool,
    pub transfer: CheckResult,
    pub cocycle: CheckResult,
}

#[derive(Clone, Debug)]
pub struct SpecialReport {
    pub coords: (f64, f64),
    pub n: u64,
    pub components: Vec<ComponentAtSpecial>,
    /// Whether `eps` agrees across the components of each group.
    pub epsilon_constant: bool,
}

#[derive(Clone, Debug)]
pub struct ModelReport {
    pub ccr: Vec<CcrReport>,
    pub ellipticity: Vec<CheckResult>,
    pub special: Vec<SpecialReport>,
}

impl ModelReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.ccr.iter().all(CcrReport::pass)
            && self.ellipticity.iter().all(|e| e.pass(tol))
            && self.special.iter().all(|s| {
                s.epsilon_constant
                    && s.components.iter().all(|c| {
                        c.alpha_equals_g && c.root_identity && c.transfer.pass(tol) && c.cocycle.pass(tol)
                    })
            })
    }

    pub fn max_transfer_residual(&self) -> f64 {
        self.special.iter().flat_map(|s| &s.components).map(|c| c.transfer.max_residual).fold(0.0, f64::max)
    }
}

/// Runs every check on a model: the characteristic class restrictions and
/// ellipticity per component, and at every special point the quantities,
/// the transfer equation, the cocycle condition and the constancy of `eps`.
pub fn verify_model(
    model: &FixedPointModel,
    theta: &dyn ThetaFunction,
    zs: &[Complex64],
    mode: CcrMode,
    exec: Execution,
) -> Result<ModelReport> {
    let specs = model.special_specs(theta)?;
    let mut orders: Vec<u64> = specs.iter().map(|s| s.n).collect();
    orders.sort_unstable();
    orders.dedup();
    let ccr = model.components.iter().map(|f| ccr_validate(f, &orders, mode)).collect();
    let ellipticity =
        model.components.iter().map(|f| ellipticity_check(f, theta, zs, exec)).collect::<Result<Vec<_>>>()?;

    let mut special = Vec::new();
    for spec in &specs {
        let sp = spec.data(theta)?;
        let b = sp.a + Complex64::new(0.13, 0.07);
        let c = sp.a + Complex64::new(-0.05, 0.11);
        let mut comps = Vec::new();
        for (i, f) in model.components.iter().enumerate() {
            let (d, dp) = (spec.delta[i], spec.delta_prime[i]);
            let q = quantities(f, &sp, d, dp);
            let transfer = transfer_check_with(f, &sp, d, dp, theta, zs, exec)?;
            let charts = [Chart::Special { sp: &sp, delta: d, delta_prime: dp }, Chart::Ordinary(b), Chart::Ordinary(c)];
            let cocycle = cocycle_check(f, theta, charts, zs)?;
            comps.push(ComponentAtSpecial {
                component: i,
                delta: d,
                delta_prime: dp,
                epsilon: q.epsilon,
                alpha: q.alpha,
                g: q.g,
                alpha_equals_g: q.alpha_equals_g(),
                root_identity: q.root_identity_holds(),
                transfer,
                cocycle,
            });
        }
        let epsilon_constant = model
            .groups_for(spec)
            .iter()
            .all(|g| g.windows(2).all(|w| comps[w[0]].epsilon == comps[w[1]].epsilon));
        special.push(SpecialReport { coords: spec.coords, n: spec.n, components: comps, epsilon_constant });
    }
    Ok(ModelReport { ccr, ellipticity, special })
}
