//! Catalog of equation variants: linear Fourier symbols, advective
//! nonlinearities and the solution-dependent wavenumber cutoffs.

use std::fmt;
use std::str::FromStr;

use crate::calculus::advection;
use crate::spectral::VectorField;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// `∂ₜu + u·∇u = -Δ²u - λΔu`
    Kse,
    /// KSE with the low×low→low interaction removed, cutoff `N(u)`.
    CastratedKse,
    /// Cascade-restricted KSE: only the two projected mixed interactions.
    RestrictedKse,
    /// `∂ₜu + u·∇u = 0`
    BurgersInviscid,
    /// `∂ₜu + u·∇u = -(-Δ)^γ u`
    BurgersHyper,
    /// `∂ₜu + u·∇u = Δu + λu`
    BurgersSivashinsky,
    /// `∂ₜu + u·∇u = Δu + λ(-Δ)^{1/2}u`
    MichelsonSivashinsky,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Kse,
        ModelKind::CastratedKse,
        ModelKind::RestrictedKse,
        ModelKind::BurgersInviscid,
        ModelKind::BurgersHyper,
        ModelKind::BurgersSivashinsky,
        ModelKind::MichelsonSivashinsky,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Kse => "kse",
            ModelKind::CastratedKse => "castrated_kse",
            ModelKind::RestrictedKse => "restricted_kse",
            ModelKind::BurgersInviscid => "burgers_inviscid",
            ModelKind::BurgersHyper => "burgers_hyper",
            ModelKind::BurgersSivashinsky => "burgers_sivashinsky",
            ModelKind::MichelsonSivashinsky => "michelson_sivashinsky",
        }
    }

    /// Whether the model uses a solution-dependent cutoff in its nonlinearity.
    pub fn has_cutoff(self) -> bool {
        matches!(self, ModelKind::CastratedKse | ModelKind::RestrictedKse)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidModel(format!("unknown model `{s}`")))
    }
}

/// A PDE variant with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// Instability parameter λ ≥ 0.
    pub lambda: f64,
    /// Hyperdissipation order γ > 1 (`burgers_hyper` only).
    pub gamma: f64,
    pub c_star: f64,
    pub n_star: f64,
    /// Order of the negative Sobolev norm in `N_α`, in `[0, 2)`.
    pub alpha: f64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, lambda: f64) -> Self {
        ModelSpec {
            kind,
            lambda,
            gamma: 2.0,
            c_star: 1.0,
            n_star: 1.0,
            alpha: 0.0,
        }
    }

    pub fn with_cutoff(mut self, c_star: f64, n_star: f64) -> Self {
        self.c_star = c_star;
        self.n_star = n_star;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModel(m));
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return bad(format!("lambda must be finite and nonnegative, got {}", self.lambda));
        }
        if self.kind == ModelKind::BurgersHyper && !(self.gamma > 1.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must exceed 1, got {}", self.gamma));
        }
        if !(0.0..2.0).contains(&self.alpha) {
            return bad(format!("alpha must lie in [0, 2), got {}", self.alpha));
        }
        if !(self.c_star > 0.0 && self.n_star > 0.0) {
            return bad(format!(
                "cutoff constants must be positive, got C* = {}, N* = {}",
                self.c_star, self.n_star
            ));
        }
        if self.kind.has_cutoff() && self.c_star * self.n_star < 1.0 {
            return bad(format!(
                "cutoff constants need C*·N* >= 1, got {}",
                self.c_star * self.n_star
            ));
        }
        Ok(())
    }

    /// Growth rate `σ(ℓ)` of the linear part at wavevector `ℓ`.
    pub fn linear_symbol(&self, l1: i64, l2: i64) -> f64 {
        let k2 = (l1 * l1 + l2 * l2) as f64;
        match self.kind {
            ModelKind::Kse | ModelKind::CastratedKse | ModelKind::RestrictedKse => {
                -k2 * k2 + self.lambda * k2
            }
            ModelKind::BurgersInviscid => 0.0,
            ModelKind::BurgersHyper => {
                if k2 == 0.0 {
                    0.0
                } else {
                    -k2.powf(self.gamma)
                }
            }
            ModelKind::BurgersSivashinsky => -k2 + self.lambda,
            ModelKind::MichelsonSivashinsky => -k2 + self.lambda * k2.sqrt(),
        }
    }
}

/// Advective tendency, added to `du/dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Nonlinearity {
    pub value: VectorField,
}

/// `-(u·∇)u`.
pub fn advective_nonlinearity(u: &VectorField) -> Nonlinearity {
    Nonlinearity {
        value: &advection(u, u) * -1.0,
    }
}

/// The three interaction terms that survive in the castrated model.
struct CastratedTerms {
    /// `P_N[(u_N·∇)u^N]`
    low_high: VectorField,
    /// `P_N[(u^N·∇)u]`
    high_any: VectorField,
    /// `(I - P_N)[(u·∇)u]`
    full_high: VectorField,
}

fn castrated_terms(u: &VectorField, cutoff: f64) -> CastratedTerms {
    let low = u.project_low(cutoff);
    let high = u.project_high(cutoff);
    CastratedTerms {
        low_high: advection(&low, &high).project_low(cutoff),
        high_any: advection(&high, u).project_low(cutoff),
        full_high: advection(u, u).project_high(cutoff),
    }
}

/// `-P_N[(u_N·∇)u^N] - P_N[(u^N·∇)u] - (I-P_N)[(u·∇)u]`.
///
/// Differs from [`advective_nonlinearity`] by exactly `P_N[(u_N·∇)u_N]`.
pub fn castrated_nonlinearity(u: &VectorField, cutoff: f64) -> Nonlinearity {
    let t = castrated_terms(u, cutoff);
    let mut v = &(&t.low_high + &t.high_any) + &t.full_high;
    v = &v * -1.0;
    Nonlinearity { value: v }
}

/// `-P_N[(u_N·∇)u^N] - P_N[(u^N·∇)u]`, supported on `|ℓ| ≤ N`.
pub fn restricted_nonlinearity(u: &VectorField, cutoff: f64) -> Nonlinearity {
    let low = u.project_low(cutoff);
    let high = u.project_high(cutoff);
    let a = advection(&low, &high);
    let b = advection(&high, u);
    Nonlinearity {
        value: &(&a + &b).project_low(cutoff) * -1.0,
    }
}

/// `N_α = [C*(‖ũ‖²_{H^{-α}} + N*)]^{1/(2-α)}`, with the norm taken on the
/// mean-free fluctuation (where `H^{-α}` coincides with `Ḣ^{-α}`).
pub fn cutoff_n_alpha(u: &VectorField, alpha: f64, c_star: f64, n_star: f64) -> Result<f64> {
    if !(0.0..2.0).contains(&alpha) {
        return Err(Error::InvalidModel(format!("alpha must lie in [0, 2), got {alpha}")));
    }
    let norm = u.fluctuation().sobolev_norm(-alpha, true);
    Ok((c_star * (norm * norm + n_star)).powf(1.0 / (2.0 - alpha)))
}

/// `N(u) = C*(‖u‖_{L²} + N*)`.
pub fn cutoff_n_u(u: &VectorField, c_star: f64, n_star: f64) -> f64 {
    c_star * (u.l2_norm() + n_star)
}

/// Cutoff used by a model's nonlinearity at state `u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cutoff {
    pub value: f64,
    /// For the restricted model: `|N₁ - N₀|` of the single fixed-point update.
    pub residual: f64,
}

/// Solution-dependent cutoff of `spec` at `u`, `None` for models without one.
///
/// The restricted model closes the self-referential
/// `N = C*(‖P_N u‖ + N*)` with one update from `N₀ = N(u)`.
pub fn model_cutoff(spec: &ModelSpec, u: &VectorField) -> Option<Cutoff> {
    match spec.kind {
        ModelKind::CastratedKse => Some(Cutoff {
            value: cutoff_n_u(u, spec.c_star, spec.n_star),
            residual: 0.0,
        }),
        ModelKind::RestrictedKse => {
            let n0 = cutoff_n_u(u, spec.c_star, spec.n_star);
            let n1 = spec.c_star * (u.project_low(n0).l2_norm() + spec.n_star);
            Some(Cutoff {
                value: n1,
                residual: (n1 - n0).abs(),
            })
        }
        _ => None,
    }
}

/// The model's nonlinear tendency at `u`, with the cutoff it used.
pub fn nonlinear_tendency(spec: &ModelSpec, u: &VectorField) -> (Nonlinearity, Option<Cutoff>) {
    let cutoff = model_cutoff(spec, u);
    let nl = match (spec.kind, cutoff) {
        (ModelKind::CastratedKse, Some(c)) => castrated_nonlinearity(u, c.value),
        (ModelKind::RestrictedKse, Some(c)) => restricted_nonlinearity(u, c.value),
        _ => advective_nonlinearity(u),
    };
    (nl, cutoff)
}

/// Applies the linear symbol mode-wise.
pub fn linear_tendency(spec: &ModelSpec, u: &VectorField) -> VectorField {
    u.map(|f| f.scale_modes(|l1, l2| spec.linear_symbol(l1, l2)))
}

/// Full tendency `du/dt`.
pub fn rhs(spec: &ModelSpec, u: &VectorField) -> Result<VectorField> {
    spec.validate()?;
    let (nl, _) = nonlinear_tendency(spec, u);
    Ok(&linear_tendency(spec, u) + &nl.value)
}

/// Left-hand sides of the two sufficient conditions on `(C*, N*)` for global
/// regularity of the castrated model, given the universal constant `c0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CastrateConstraints {
    /// `c0 / (C*² N*)`, must not exceed `1/12`.
    pub dissipation_share: f64,
    /// `c0/C*² · (1 + C*⁻² + C*⁻⁶N*⁻² + C*⁻¹⁰N*⁻⁴)`, must not exceed `(λ∨1)²/2`.
    pub growth_share: f64,
    pub growth_limit: f64,
}

impl CastrateConstraints {
    pub fn evaluate(c_star: f64, n_star: f64, lambda: f64, c0: f64) -> Self {
        let c2 = c_star * c_star;
        let growth = c0 / c2
            * (1.0 + 1.0 / c2 + 1.0 / (c2.powi(3) * n_star * n_star) + 1.0 / (c2.powi(5) * n_star.powi(4)));
        CastrateConstraints {
            dissipation_share: c0 / (c2 * n_star),
            growth_share: growth,
            growth_limit: 0.5 * lambda.max(1.0).powi(2),
        }
    }

    pub fn satisfied(&self) -> bool {
        self.dissipation_share <= 1.0 / 12.0 && self.growth_share <= self.growth_limit
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::{Grid, SpectralField};

    fn sine_x(g: Grid, eps: f64) -> VectorField {
        VectorField::new(
            SpectralField::from_physical(g, &g.sample(|x, _| eps * x.sin())).unwrap(),
            SpectralField::zeros(g),
        )
        .unwrap()
    }

    #[test]
    fn symbols() {
        let kse = ModelSpec::new(ModelKind::Kse, 4.0);
        assert_eq!(kse.linear_symbol(1, 0), 3.0);
        assert_eq!(kse.linear_symbol(2, 0), 0.0);
        assert_eq!(kse.linear_symbol(0, 0), 0.0);
        let bse = ModelSpec::new(ModelKind::BurgersSivashinsky, 1.0);
        assert_eq!(bse.linear_symbol(0, 0), 1.0);
        let mse = ModelSpec::new(ModelKind::MichelsonSivashinsky, 2.0);
        assert_eq!(mse.linear_symbol(3, 4), -25.0 + 10.0);
        let hyp = ModelSpec::new(ModelKind::BurgersHyper, 0.0).with_gamma(1.5);
        assert!((hyp.linear_symbol(0, 2) + 8.0).abs() < 1e-12);
        assert_eq!(ModelSpec::new(ModelKind::BurgersInviscid, 3.0).linear_symbol(5, 5), 0.0);
    }

    #[test]
    fn kind_names_roundtrip() {
        for k in ModelKind::ALL {
            assert_eq!(k.name().parse::<ModelKind>().unwrap(), k);
        }
        assert!("ks".parse::<ModelKind>().is_err());
    }

    #[test]
    fn validation() {
        assert!(ModelSpec::new(ModelKind::Kse, -1.0).validate().is_err());
        assert!(ModelSpec::new(ModelKind::Kse, 1.0).with_alpha(2.0).validate().is_err());
        assert!(ModelSpec::new(ModelKind::BurgersHyper, 0.0).with_gamma(1.0).validate().is_err());
        assert!(ModelSpec::new(ModelKind::CastratedKse, 1.0)
            .with_cutoff(0.5, 1.0)
            .validate()
            .is_err());
        assert!(ModelSpec::new(ModelKind::CastratedKse, 1.0)
            .with_cutoff(0.5, 2.0)
            .validate()
            .is_ok());
    }

    #[test]
    fn advective_examples() {
        let g = Grid::new(16).unwrap();
        let eps = 0.2;
        let nl = advective_nonlinearity(&sine_x(g, eps));
        let expect = SpectralField::from_physical(g, &g.sample(|x, _| -0.5 * eps * eps * (2.0 * x).sin())).unwrap();
        assert!((&nl.value.u1 - &expect).max_abs_coeff() < 1e-16);
        assert!(nl.value.u2.max_abs_coeff() < 1e-16);

        let c = VectorField::constant(g, [1.5, -0.5]);
        assert!(advective_nonlinearity(&c).value.max_abs_coeff() < 1e-15);
    }

    #[test]
    fn castrated_examples() {
        let g = Grid::new(16).unwrap();
        let eps = 0.2;
        let u = sine_x(g, eps);
        assert!(castrated_nonlinearity(&u, 2.0).value.max_abs_coeff() < 1e-16);
        let one = castrated_nonlinearity(&u, 1.0).value;
        let full = advective_nonlinearity(&u).value;
        assert!((&one - &full).max_abs_coeff() < 1e-16);
    }

    #[test]
    fn restricted_vanishes_without_high_modes() {
        let g = Grid::new(16).unwrap();
        let u = sine_x(g, 1.0);
        assert!(restricted_nonlinearity(&u, 3.0).value.max_abs_coeff() < 1e-15);
    }

    #[test]
    fn cutoff_examples() {
        let g = Grid::new(16).unwrap();
        let u = sine_x(g, 1.0);
        let two_pi_sq = 2.0 * PI * PI;
        let n0 = cutoff_n_alpha(&u, 0.0, 1.0, 1.0).unwrap();
        assert!((n0 - (two_pi_sq + 1.0).sqrt()).abs() < 1e-12);
        assert!((n0 - 4.5541).abs() < 1e-4);
        let n1 = cutoff_n_alpha(&u, 1.0, 1.0, 1.0).unwrap();
        assert!((n1 - (two_pi_sq + 1.0)).abs() < 1e-11);
        assert_eq!(cutoff_n_alpha(&VectorField::zeros(g), 0.0, 1.0, 1.0).unwrap(), 1.0);
        assert!(cutoff_n_alpha(&u, 2.0, 1.0, 1.0).is_err());
        assert!(cutoff_n_alpha(&u, -0.1, 1.0, 1.0).is_err());

        let nu = cutoff_n_u(&u, 2.0, 1.0);
        assert!((nu - 2.0 * (PI * 2f64.sqrt() + 1.0)).abs() < 1e-12);
        assert!((nu - 10.8858).abs() < 1e-4);
        assert_eq!(cutoff_n_u(&VectorField::zeros(g), 2.0, 1.0), 2.0);
        let c = VectorField::constant(g, [1.0, 0.0]);
        assert!((cutoff_n_u(&c, 1.0, 1.0) - (2.0 * PI + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn linear_limit_of_kse_rhs() {
        let g = Grid::new(16).unwrap();
        let eps = 1e-7;
        let u = sine_x(g, eps);
        let r = rhs(&ModelSpec::new(ModelKind::Kse, 2.0), &u).unwrap();
        // linear part gives (λ-1)εsin x; the quadratic remainder is O(ε²)
        assert!((&r - &u).max_abs_coeff() < 1e-13);
    }

    #[test]
    fn inviscid_rhs_is_pure_advection() {
        let g = Grid::new(16).unwrap();
        let eps = 0.4;
        let r = rhs(&ModelSpec::new(ModelKind::BurgersInviscid, 0.0), &sine_x(g, eps)).unwrap();
        let expect = SpectralField::from_physical(g, &g.sample(|x, _| -0.5 * eps * eps * (2.0 * x).sin())).unwrap();
        assert!((&r.u1 - &expect).max_abs_coeff() < 1e-16);
    }

    #[test]
    fn constraint_check() {
        let ok = CastrateConstraints::evaluate(4.0, 1.0, 4.0, 1.0);
        assert!(ok.satisfied());
        assert_eq!(ok.growth_limit, 8.0);
        let bad = CastrateConstraints::evaluate(1.0, 1.0, 4.0, 1.0);
        assert!(!bad.satisfied());
    }
}
