//! Noncommutative phase-space corrections: scaling and noncommutativity
//! parameters, the α-scaling level shift, the radial integrals ρ and ρ̄, the
//! angular secular matrices Θ (space-space) and Θ̄ (momentum-momentum), and
//! the resulting per-sublevel first-order corrections and spacings.
//!
//! Conventions used throughout this module:
//!
//! * Secular matrices are indexed by j_z in **descending** order (+j … −j).
//! * Sublevel labels `"jz=+3/2"` … pair the descending-j_z label sequence
//!   with the descending-sorted eigenvalues of the corresponding matrix
//!   (rank pairing). For θ along +ẑ this is the natural eigenvector
//!   assignment of Θ; the same rule is applied uniformly to Θ̄.
//! * θ is a space-space vector in natural units of eV⁻²; θ̄ is momentum-
//!   momentum in eV². Both cross user boundaries in the **area convention**:
//!   a user-facing magnitude v becomes v/(ħc)² internally — genuine m² → eV⁻²
//!   for θ, and the same numeric rule (v treated as θ̄·(ħc)², yielding eV²)
//!   for θ̄. One conversion factor serves both; output metadata prints it.
//! * When θ and θ̄ are not parallel the two secular problems need not share
//!   eigenvectors; per-label sums then combine rank-paired eigenvalues. The
//!   validated reference configurations use a common quantization axis.

use num_complex::Complex64;

use crate::constants::PhysicalConstants;
use crate::dirac::{radial_params, Level, RadialSolution};
use crate::halfint::HalfInt;
use crate::numerics::{
    hermitian_eigen, integrate_radial, integrate_sphere, MatrixKind, SecularMatrix, RADIAL_REL_TOL,
    SPHERE_ABS_TOL,
};
use crate::special_functions::{cg_spinor_coeffs, SphericalSpinor};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Unit boundary
// ---------------------------------------------------------------------------

/// Converts a user-facing noncommutativity magnitude in the area convention
/// to natural units: v ↦ v/(ħc)². For θ this is the honest m² → eV⁻²
/// conversion; for θ̄ the same numeric rule is applied (the input plays the
/// role of θ̄·(ħc)² and the result is in eV²), so that both parameters are
/// quoted on the same scale. See the module docs.
pub fn area_to_natural(value: f64, c: &PhysicalConstants) -> f64 {
    value / c.hbar_c_sq()
}

/// Inverse of [`area_to_natural`].
pub fn natural_to_area(value: f64, c: &PhysicalConstants) -> f64 {
    value * c.hbar_c_sq()
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Noncommutativity parameters in natural units: `theta` (space-space,
/// eV⁻²), `thetabar` (momentum-momentum, eV²), and the dimensionless scaling
/// constant `alpha` of the generalized Bopp shift.
///
/// `alpha` may be supplied directly (sensitivity studies) or derived from
/// the constraint |θ||θ̄| = 4α²(1−α²) via [`NcParams::from_constraint`]; the
/// derived root is the branch continuous with α(0) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcParams {
    theta: [f64; 3],
    thetabar: [f64; 3],
    alpha: f64,
}

fn vec_mag(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl NcParams {
    /// Direct construction; `alpha` must lie in (0, 1] and the vectors must
    /// be finite. No consistency between `alpha` and the magnitudes is
    /// required here — that freedom is what sensitivity studies use.
    pub fn new(theta: [f64; 3], thetabar: [f64; 3], alpha: f64) -> Result<Self> {
        for v in theta.iter().chain(thetabar.iter()) {
            if !v.is_finite() {
                return Err(Error::Config(format!(
                    "noncommutativity vector components must be finite, got {v}"
                )));
            }
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::AlphaDomain(alpha));
        }
        Ok(NcParams {
            theta,
            thetabar,
            alpha,
        })
    }

    /// Constructs with α derived from |θ||θ̄| = 4α²(1−α²) on the α(0) = 1
    /// branch.
    pub fn from_constraint(theta: [f64; 3], thetabar: [f64; 3]) -> Result<Self> {
        let alpha = alpha_from_constraint(vec_mag(theta), vec_mag(thetabar))?;
        Self::new(theta, thetabar, alpha)
    }

    /// The commutative limit θ = θ̄ = 0, α = 1.
    pub fn commutative() -> Self {
        NcParams {
            theta: [0.0; 3],
            thetabar: [0.0; 3],
            alpha: 1.0,
        }
    }

    pub fn theta(&self) -> [f64; 3] {
        self.theta
    }

    pub fn thetabar(&self) -> [f64; 3] {
        self.thetabar
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta_mag(&self) -> f64 {
        vec_mag(self.theta)
    }

    pub fn thetabar_mag(&self) -> f64 {
        vec_mag(self.thetabar)
    }
}

/// Solves |θ||θ̄| = 4α²(1−α²) for α on the branch continuous with α(0) = 1:
/// α = √((1 + √(1 − θθ̄))/2). The product must not exceed 1, where the two
/// branches merge at α = √½ and no larger root exists.
pub fn alpha_from_constraint(theta_mag: f64, thetabar_mag: f64) -> Result<f64> {
    assert!(
        theta_mag >= 0.0 && thetabar_mag >= 0.0,
        "magnitudes are nonnegative by construction"
    );
    let prod = theta_mag * thetabar_mag;
    if !prod.is_finite() || prod > 1.0 {
        return Err(Error::ConstraintDomain(prod));
    }
    Ok(((1.0 + (1.0 - prod).sqrt()) / 2.0).sqrt())
}

// ---------------------------------------------------------------------------
// α-scaling level shift
// ---------------------------------------------------------------------------

/// Coupling power in the α-scaling level shift. `Quartic` — (Ze²)² overall —
/// is the default; it equals the exact first-order Taylor coefficient of the
/// unperturbed eigenvalue in (1−α), which the quadratic-in-coupling
/// expansion of the shifted Coulomb term produces. `Cubic` — Z²(e²)^{3/2} —
/// keeps one less factor of the charge and exists for sensitivity
/// comparison; the two differ by a factor (e²)^{−1/2} ≈ 11.7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaShiftForm {
    #[default]
    Quartic,
    Cubic,
}

impl std::fmt::Display for AlphaShiftForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlphaShiftForm::Quartic => write!(f, "quartic"),
            AlphaShiftForm::Cubic => write!(f, "cubic"),
        }
    }
}

impl std::str::FromStr for AlphaShiftForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quartic" => Ok(AlphaShiftForm::Quartic),
            "cubic" => Ok(AlphaShiftForm::Cubic),
            other => Err(Error::Config(format!(
                "unknown alpha shift form {other:?} (expected \"quartic\" or \"cubic\")"
            ))),
        }
    }
}

/// The level shift produced by the α-scaled Coulomb potential (eV):
///
/// ΔE = −2m [1 + (Ze²/(γ+n′))²]^{−3/2} · C · [(γ+n′) + (Ze²)²/γ] / (γ+n′)³ · (1−α)
///
/// with C the coupling factor chosen by `form`. Vanishes identically at
/// α = 1 and is negative for α < 1.
pub fn delta_e_alpha(
    level: &Level,
    alpha: f64,
    form: AlphaShiftForm,
    c: &PhysicalConstants,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaDomain(alpha));
    }
    let gamma = level.gamma_param(c)?;
    let np = f64::from(level.n_prime());
    let ze2 = level.z() * c.coupling_e2;
    let gn = gamma + np;
    let x = ze2 / gn;
    let coup = match form {
        AlphaShiftForm::Quartic => ze2 * ze2,
        AlphaShiftForm::Cubic => level.z() * level.z() * c.coupling_e2.powf(1.5),
    };
    let bracket = gn + ze2 * ze2 / gamma;
    Ok(
        -2.0 * c.electron_mass_ev * (1.0 + x * x).powf(-1.5) * coup * bracket / (gn * gn * gn)
            * (1.0 - alpha),
    )
}

// ---------------------------------------------------------------------------
// Radial integrals
// ---------------------------------------------------------------------------

/// Evaluation route for the radial integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialRoute {
    /// Analytically reduced expression; available for the n = 2 levels only.
    ClosedForm,
    /// Direct adaptive quadrature of the defining integral.
    Quadrature,
}

fn closed_form_level(level: &Level) -> bool {
    matches!(
        (level.n(), level.j().doubled(), level.l()),
        (2, 1, 0) | (2, 1, 1) | (2, 3, 1)
    )
}

/// The radial integral ρ = ∫₀^∞ g²(r)/r dr (eV³).
///
/// The closed forms exist for 2P₁/₂ and 2P₃/₂. For 2P₁/₂ the defining
/// integrand behaves as r^{2γ−3} with 2γ−3 < −1 near the origin, so the
/// integral itself diverges; the closed form is the analytic continuation of
/// the term-by-term Γ-function reduction (finite because the Γ(β−3)-type
/// pole is tempered by the (η−2)² deficit). The quadrature route reports
/// that divergence honestly — it does **not** reproduce the continued value
/// — which is why the production correction pipeline uses the closed form
/// for that level.
pub fn rho(sol: &RadialSolution, route: RadialRoute) -> Result<f64> {
    match route {
        RadialRoute::ClosedForm => rho_closed(sol),
        RadialRoute::Quadrature => integrate_radial(
            |r| match sol.g_f(r) {
                Ok((g, _)) => g * g / r,
                Err(_) => f64::NAN,
            },
            sol.decay_rate(),
            RADIAL_REL_TOL,
        ),
    }
}

fn rho_closed(sol: &RadialSolution) -> Result<f64> {
    let level = sol.level();
    let (lam, eta, beta) = (sol.lambda(), sol.eta(), sol.beta());
    let lp2 = {
        let p = sol.lambda_pm().0;
        p * p
    };
    match (level.n(), level.j().doubled(), level.l()) {
        (2, 1, 1) => {
            let br = beta * (eta - 2.0) * (eta - 2.0) / (eta - 1.0)
                - 2.0 * (eta - 2.0) * (beta - 3.0)
                + (eta - 1.0) / beta * (beta - 2.0) * (beta - 3.0);
            Ok(2.0 * lam.powi(3) * lp2 / (eta * (beta - 1.0) * (beta - 2.0) * (beta - 3.0)) * br)
        }
        (2, 3, 1) => Ok(4.0 * lam.powi(3) * lp2 / ((beta - 1.0) * (beta - 2.0) * (beta - 3.0))),
        _ => Err(Error::ClosedFormUnsupported {
            integral: "rho",
            level: level.label(),
        }),
    }
}

/// The radial integral ρ̄ = ∫₀^∞ r³ g(r) f(r) dr (eV⁻¹).
///
/// Closed forms exist for all three n = 2 levels; the 2S₁/₂ and 2P₁/₂
/// brackets are identical up to (η+1) ↔ (η−1). Signs follow the stored
/// radial pair (g, f) — f carries the global minus of the construction — so
/// ρ̄ < 0 for 2S₁/₂ and 2P₃/₂ and ρ̄ > 0 for 2P₁/₂.
pub fn rho_bar(sol: &RadialSolution, route: RadialRoute) -> Result<f64> {
    match route {
        RadialRoute::ClosedForm => rho_bar_closed(sol),
        RadialRoute::Quadrature => integrate_radial(
            |r| match sol.g_f(r) {
                Ok((g, f)) => r.powi(3) * g * f,
                Err(_) => f64::NAN,
            },
            sol.decay_rate(),
            RADIAL_REL_TOL,
        ),
    }
}

fn rho_bar_closed(sol: &RadialSolution) -> Result<f64> {
    let level = sol.level();
    let (eta, beta) = (sol.eta(), sol.beta());
    let m = sol.constants().electron_mass_ev;
    // shared bracket for the two j = 1/2 levels; `s` is (η+1) or (η−1)
    let bracket = |s: f64| {
        beta * beta / s - beta * beta * s + 2.0 * beta * (beta + 1.0) * s
            - (beta + 1.0) * (beta + 2.0) * s
    };
    match (level.n(), level.j().doubled(), level.l()) {
        (2, 1, 0) => Ok(bracket(eta + 1.0) / (8.0 * m * eta)),
        (2, 1, 1) => Ok(bracket(eta - 1.0) / (8.0 * m * eta)),
        (2, 3, 1) => Ok(-beta * (eta + 2.0) / (8.0 * m * eta)),
        _ => Err(Error::ClosedFormUnsupported {
            integral: "rho_bar",
            level: level.label(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Angular matrix elements (exact ladder / Clebsch-Gordan algebra)
// ---------------------------------------------------------------------------

const CZERO: Complex64 = Complex64::new(0.0, 0.0);

/// ⟨Y_{l m′} | L·v | Y_{l m}⟩: θ₃ m on the diagonal, ladder factors
/// √(l(l+1) − m(m±1))/2 one step off it, zero beyond and zero whenever
/// either harmonic does not exist.
fn l_dot_v_element(l: u32, m_bra: i32, m_ket: i32, v: [f64; 3]) -> Complex64 {
    let li = l as i32;
    if m_bra.abs() > li || m_ket.abs() > li {
        return CZERO;
    }
    let ll = f64::from(l) * (f64::from(l) + 1.0);
    let m = f64::from(m_ket);
    match m_bra - m_ket {
        0 => Complex64::new(v[2] * m, 0.0),
        1 => Complex64::new(v[0], -v[1]) * (0.5 * (ll - m * (m + 1.0)).sqrt()),
        -1 => Complex64::new(v[0], v[1]) * (0.5 * (ll - m * (m - 1.0)).sqrt()),
        _ => CZERO,
    }
}

/// ⟨Ω_{j,l,j_za} | σ·v | Ω_{j,l,j_zb}⟩ reduced by harmonic orthonormality:
/// the diagonal carries v₃ (up) − v₃ (down), the |Δj_z| = 1 elements pick up
/// v∓ = v₁ ∓ iv₂ from the spin-flip blocks, everything else vanishes.
fn sigma_dot_v_element(j: HalfInt, l: u32, jza2: i32, jzb2: i32, v: [f64; 3]) -> Result<Complex64> {
    let (cu_a, cd_a) = cg_spinor_coeffs(j, l, HalfInt::from_doubled(jza2))?;
    let (cu_b, cd_b) = cg_spinor_coeffs(j, l, HalfInt::from_doubled(jzb2))?;
    let li = l as i32;
    let exists = |m: i32| m.abs() <= li;
    let (mu_a, md_a) = ((jza2 - 1) / 2, (jza2 + 1) / 2);
    let mut e = CZERO;
    if jza2 == jzb2 {
        if exists(mu_a) {
            e += Complex64::new(v[2] * cu_a * cu_b, 0.0);
        }
        if exists(md_a) {
            e -= Complex64::new(v[2] * cd_a * cd_b, 0.0);
        }
    } else if jza2 == jzb2 + 2 && exists(mu_a) {
        // bra up-component shares m with ket down-component
        e += Complex64::new(v[0], -v[1]) * (cu_a * cd_b);
    } else if jza2 == jzb2 - 2 && exists(md_a) {
        e += Complex64::new(v[0], v[1]) * (cd_a * cu_b);
    }
    Ok(e)
}

/// The space-space secular matrix Θ(nL_j): Θ_{j_z j_z′} = ⟨Ω | L·θ | Ω′⟩,
/// built from the exact ladder algebra on the spinor components. Identically
/// zero for l = 0.
pub fn theta_matrix(level: &Level, theta: [f64; 3]) -> Result<SecularMatrix> {
    let j = level.j();
    let l = level.l();
    let j2 = j.doubled();
    let dim = (j2 + 1) as usize;
    let mut entries = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        let jza2 = j2 - 2 * a as i32;
        let (cu_a, cd_a) = cg_spinor_coeffs(j, l, HalfInt::from_doubled(jza2))?;
        let (mu_a, md_a) = ((jza2 - 1) / 2, (jza2 + 1) / 2);
        for b in 0..dim {
            let jzb2 = j2 - 2 * b as i32;
            let (cu_b, cd_b) = cg_spinor_coeffs(j, l, HalfInt::from_doubled(jzb2))?;
            let (mu_b, md_b) = ((jzb2 - 1) / 2, (jzb2 + 1) / 2);
            let e = l_dot_v_element(l, mu_a, mu_b, theta) * (cu_a * cu_b)
                + l_dot_v_element(l, md_a, md_b, theta) * (cd_a * cd_b);
            entries.push(e);
        }
    }
    Ok(SecularMatrix::new(*level, MatrixKind::Theta, entries))
}

/// The momentum-momentum secular matrix Θ̄(nL_j).
///
/// The defining expression is a two-term difference of sphere integrals of
/// i σ·(n̂×θ̄) — the (l′-bra, l-ket) sandwich minus the (l-bra, l′-ket) one.
/// Writing i σ·(n̂×θ̄) = ½[(σ·n̂)(σ·θ̄) − (σ·θ̄)(σ·n̂)] and using
/// (σ·n̂) Ω_{j,l} = −Ω_{j,l′} pointwise reduces the difference exactly to
///
///   Θ̄ = S(l′) − S(l),   S(l) = ⟨Ω_{j,l} | σ·θ̄ | Ω_{j,l}⟩,
///
/// which this routine evaluates in closed form;
/// [`thetabar_matrix_quadrature`] integrates the unreduced expression and
/// pins the reduction.
pub fn thetabar_matrix(level: &Level, thetabar: [f64; 3]) -> Result<SecularMatrix> {
    let j = level.j();
    let j2 = j.doubled();
    let (l, lp) = (level.l(), level.l_prime());
    let dim = (j2 + 1) as usize;
    let mut entries = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        let jza2 = j2 - 2 * a as i32;
        for b in 0..dim {
            let jzb2 = j2 - 2 * b as i32;
            let s_lp = sigma_dot_v_element(j, lp, jza2, jzb2, thetabar)?;
            let s_l = sigma_dot_v_element(j, l, jza2, jzb2, thetabar)?;
            entries.push(s_lp - s_l);
        }
    }
    Ok(SecularMatrix::new(*level, MatrixKind::ThetaBar, entries))
}

// ---------------------------------------------------------------------------
// Sphere-quadrature oracles for the matrices
// ---------------------------------------------------------------------------

fn ylm_or_zero(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    if m.abs() > l as i32 {
        CZERO
    } else {
        crate::special_functions::spherical_harmonic(l, m, theta, phi)
    }
}

/// Pointwise value of (L·v) Ω_{j,l,j_z} from the ladder action on each
/// spinor component's harmonic.
fn l_dot_v_on_spinor(
    l: u32,
    jz2: i32,
    cg: (f64, f64),
    v: [f64; 3],
    th: f64,
    ph: f64,
) -> [Complex64; 2] {
    let ll = f64::from(l) * (f64::from(l) + 1.0);
    let mut out = [CZERO, CZERO];
    for (slot, (c, m)) in [(cg.0, (jz2 - 1) / 2), (cg.1, (jz2 + 1) / 2)]
        .into_iter()
        .enumerate()
    {
        let mf = f64::from(m);
        let up = (ll - mf * (mf + 1.0)).max(0.0).sqrt();
        let down = (ll - mf * (mf - 1.0)).max(0.0).sqrt();
        let acc = ylm_or_zero(l, m, th, ph) * (v[2] * mf)
            + ylm_or_zero(l, m + 1, th, ph) * Complex64::new(v[0], -v[1]) * (0.5 * up)
            + ylm_or_zero(l, m - 1, th, ph) * Complex64::new(v[0], v[1]) * (0.5 * down);
        out[slot] = acc * c;
    }
    out
}

/// Sphere-quadrature evaluation of Θ(nL_j): each entry is the numeric
/// integral ∫ dΩ Ω† (L·θ) Ω′. Independent of [`theta_matrix`] except for
/// the shared harmonic evaluator; used as the oracle pinning the ladder
/// algebra.
pub fn theta_matrix_quadrature(level: &Level, theta: [f64; 3]) -> Result<SecularMatrix> {
    let j = level.j();
    let l = level.l();
    let j2 = j.doubled();
    let dim = (j2 + 1) as usize;
    let mut entries = vec![CZERO; dim * dim];
    for a in 0..dim {
        let jza = HalfInt::from_doubled(j2 - 2 * a as i32);
        let bra = SphericalSpinor::new(j, l, jza)?;
        for b in 0..dim {
            let jzb2 = j2 - 2 * b as i32;
            let cg = cg_spinor_coeffs(j, l, HalfInt::from_doubled(jzb2))?;
            entries[a * dim + b] = integrate_sphere(
                |th, ph| {
                    let w = bra.eval(th, ph);
                    let act = l_dot_v_on_spinor(l, jzb2, cg, theta, th, ph);
                    w[0].conj() * act[0] + w[1].conj() * act[1]
                },
                SPHERE_ABS_TOL,
            );
        }
    }
    Ok(SecularMatrix::new(*level, MatrixKind::Theta, entries))
}

/// Pointwise ⟨bra| i σ·(n̂×v) |ket⟩ at (ϑ, φ), n̂ the radial unit vector.
fn cross_sandwich(
    bra: &SphericalSpinor,
    ket: &SphericalSpinor,
    v: [f64; 3],
    th: f64,
    ph: f64,
) -> Complex64 {
    let (st, ct) = (th.sin(), th.cos());
    let n = [st * ph.cos(), st * ph.sin(), ct];
    let c = [
        n[1] * v[2] - n[2] * v[1],
        n[2] * v[0] - n[0] * v[2],
        n[0] * v[1] - n[1] * v[0],
    ];
    let bw = bra.eval(th, ph);
    let kw = ket.eval(th, ph);
    // σ·c = [[c₃, c₁−ic₂], [c₁+ic₂, −c₃]]
    let row0 = kw[0] * c[2] + kw[1] * Complex64::new(c[0], -c[1]);
    let row1 = kw[0] * Complex64::new(c[0], c[1]) - kw[1] * c[2];
    Complex64::i() * (bw[0].conj() * row0 + bw[1].conj() * row1)
}

/// Sphere-quadrature evaluation of Θ̄(nL_j): the unreduced two-term
/// difference, entry by entry. Used as the oracle pinning the algebraic
/// reduction in [`thetabar_matrix`].
pub fn thetabar_matrix_quadrature(level: &Level, thetabar: [f64; 3]) -> Result<SecularMatrix> {
    let j = level.j();
    let j2 = j.doubled();
    let (l, lp) = (level.l(), level.l_prime());
    let dim = (j2 + 1) as usize;
    let mut entries = vec![CZERO; dim * dim];
    for a in 0..dim {
        let jza = HalfInt::from_doubled(j2 - 2 * a as i32);
        let bra_lp = SphericalSpinor::new(j, lp, jza)?;
        let bra_l = SphericalSpinor::new(j, l, jza)?;
        for b in 0..dim {
            let jzb = HalfInt::from_doubled(j2 - 2 * b as i32);
            let ket_l = SphericalSpinor::new(j, l, jzb)?;
            let ket_lp = SphericalSpinor::new(j, lp, jzb)?;
            let term1 = integrate_sphere(
                |th, ph| cross_sandwich(&bra_lp, &ket_l, thetabar, th, ph),
                SPHERE_ABS_TOL,
            );
            let term2 = integrate_sphere(
                |th, ph| cross_sandwich(&bra_l, &ket_lp, thetabar, th, ph),
                SPHERE_ABS_TOL,
            );
            entries[a * dim + b] = term1 - term2;
        }
    }
    Ok(SecularMatrix::new(*level, MatrixKind::ThetaBar, entries))
}

// ---------------------------------------------------------------------------
// Per-sublevel corrections
// ---------------------------------------------------------------------------

/// First-order corrections for one sublevel (all eV). `total` is
/// delta_e_alpha + e_theta + e_thetabar for the owning level.
#[derive(Debug, Clone, PartialEq)]
pub struct Sublevel {
    /// Label of the form `"jz=+3/2"`, paired to eigenvalues by rank (see
    /// module docs).
    pub label: String,
    pub e_theta: f64,
    pub e_thetabar: f64,
    pub total: f64,
}

/// Per-level correction breakdown: the level-wide α shift plus one
/// [`Sublevel`] record per j_z, in descending-j_z label order.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionBreakdown {
    pub level: Level,
    pub delta_e_alpha: f64,
    pub sublevels: Vec<Sublevel>,
    /// True when the level lies outside the closed-form-validated set (the
    /// three n = 2 levels); the radial integrals then come from adaptive
    /// quadrature and carry no independent closed-form cross-check.
    pub beyond_validated: bool,
}

impl CorrectionBreakdown {
    /// Sublevel record by its label, e.g. `"jz=-1/2"`.
    pub fn sublevel(&self, label: &str) -> Option<&Sublevel> {
        self.sublevels.iter().find(|s| s.label == label)
    }
}

fn jz_label(jz: HalfInt) -> String {
    if jz.doubled() >= 0 {
        format!("jz=+{jz}")
    } else {
        format!("jz={jz}")
    }
}

/// Computes the first-order corrections of one level:
///
/// * E^θ(s) = −(Ze²/4α³) ρ Λ_s, with Λ_s the descending eigenvalues of Θ;
/// * E^θ̄(s) = (1/4α) ρ̄ Λ̄_s, with Λ̄_s the descending eigenvalues of Θ̄;
/// * total(s) = ΔE_α + E^θ(s) + E^θ̄(s).
///
/// The validated n = 2 levels use the closed-form radial integrals; other
/// levels fall back to quadrature and are flagged `beyond_validated`. Levels
/// whose Θ vanishes identically (all l = 0 levels, or θ = 0) skip ρ — which
/// keeps them away from the divergent ∫ g²/r of s-states — and likewise for
/// Θ̄ and ρ̄.
pub fn corrections(
    level: &Level,
    p: &NcParams,
    form: AlphaShiftForm,
    c: &PhysicalConstants,
) -> Result<CorrectionBreakdown> {
    let sol = radial_params(level, c)?;
    let delta = delta_e_alpha(level, p.alpha(), form, c)?;
    let j2 = level.j().doubled();
    let dim = (j2 + 1) as usize;
    let validated = closed_form_level(level);
    let route = if validated {
        RadialRoute::ClosedForm
    } else {
        RadialRoute::Quadrature
    };

    let th = theta_matrix(level, p.theta())?;
    let e_theta: Vec<f64> = if th.max_abs() == 0.0 {
        vec![0.0; dim]
    } else {
        let lam = hermitian_eigen(&th)?.values;
        let rho_v = rho(&sol, route)?;
        let pref = -level.z() * c.coupling_e2 / (4.0 * p.alpha().powi(3));
        lam.into_iter().map(|v| pref * rho_v * v).collect()
    };

    let tb = thetabar_matrix(level, p.thetabar())?;
    let e_thetabar: Vec<f64> = if tb.max_abs() == 0.0 {
        vec![0.0; dim]
    } else {
        let lam = hermitian_eigen(&tb)?.values;
        let rb = rho_bar(&sol, route)?;
        let pref = 1.0 / (4.0 * p.alpha());
        lam.into_iter().map(|v| pref * rb * v).collect()
    };

    let sublevels = (0..dim)
        .map(|k| {
            let jz = HalfInt::from_doubled(j2 - 2 * k as i32);
            Sublevel {
                label: jz_label(jz),
                e_theta: e_theta[k],
                e_thetabar: e_thetabar[k],
                total: delta + e_theta[k] + e_thetabar[k],
            }
        })
        .collect();

    Ok(CorrectionBreakdown {
        level: *level,
        delta_e_alpha: delta,
        sublevels,
        beyond_validated: !validated,
    })
}

// ---------------------------------------------------------------------------
// Sublevel spacings
// ---------------------------------------------------------------------------

/// One sublevel spacing, decomposed as
/// `value_ev = a_ev_per_area · |θ|_area / α³ + b_ev_per_area · |θ̄|_area / α`
/// with both magnitudes in the user-facing area convention (θ in m²).
#[derive(Debug, Clone, PartialEq)]
pub struct Spacing {
    /// `"2P1/2[jz=-1/2] -> 2S1/2[jz=-1/2]"` and friends; the value is
    /// E(left) − E(right).
    pub label: String,
    pub a_ev_per_area: f64,
    pub b_ev_per_area: f64,
    pub value_ev: f64,
}

/// The five n = 2 sublevel spacings, each exactly of the form
/// A·|θ|/α³ + B·|θ̄|/α (coefficients per area-convention unit).
///
/// The Dirac energies and the α shift cancel identically within every pair
/// — the 2S₁/₂ and 2P₁/₂ values share the κ²-dependent formulas bit for bit
/// — so the gaps are assembled from the per-sublevel corrections alone, and
/// A, B are read off from unit-magnitude single-sector runs at α = 1.
pub fn spacings(p: &NcParams, c: &PhysicalConstants, z: f64) -> Result<Vec<Spacing>> {
    let s12 = Level::from_label("2S1/2", z)?;
    let p12 = Level::from_label("2P1/2", z)?;
    let p32 = Level::from_label("2P3/2", z)?;

    let unit = area_to_natural(1.0, c);
    let run = |theta: [f64; 3], thetabar: [f64; 3]| -> Result<[CorrectionBreakdown; 3]> {
        let pp = NcParams::new(theta, thetabar, 1.0)?;
        Ok([
            corrections(&s12, &pp, AlphaShiftForm::Quartic, c)?,
            corrections(&p12, &pp, AlphaShiftForm::Quartic, c)?,
            corrections(&p32, &pp, AlphaShiftForm::Quartic, c)?,
        ])
    };
    let run_a = run([0.0, 0.0, unit], [0.0; 3])?;
    let run_b = run([0.0; 3], [0.0, 0.0, unit])?;

    // One gap endpoint: (level index into the runs, sublevel label).
    type Endpoint = (usize, &'static str);
    let defs: [(&str, Endpoint, Endpoint); 5] = [
        (
            "2P1/2[jz=-1/2] -> 2S1/2[jz=-1/2]",
            (1, "jz=-1/2"),
            (0, "jz=-1/2"),
        ),
        (
            "2S1/2[jz=+1/2] -> 2P1/2[jz=+1/2]",
            (0, "jz=+1/2"),
            (1, "jz=+1/2"),
        ),
        (
            "2P3/2[jz=-3/2] -> 2P3/2[jz=-1/2]",
            (2, "jz=-3/2"),
            (2, "jz=-1/2"),
        ),
        (
            "2P3/2[jz=-1/2] -> 2P3/2[jz=+1/2]",
            (2, "jz=-1/2"),
            (2, "jz=+1/2"),
        ),
        (
            "2P3/2[jz=+1/2] -> 2P3/2[jz=+3/2]",
            (2, "jz=+1/2"),
            (2, "jz=+3/2"),
        ),
    ];

    let corr = |set: &[CorrectionBreakdown; 3], which: (usize, &str)| -> f64 {
        let s = set[which.0]
            .sublevel(which.1)
            .expect("gap labels exist for every n = 2 level");
        s.e_theta + s.e_thetabar
    };

    let theta_area = natural_to_area(p.theta_mag(), c);
    let thetabar_area = natural_to_area(p.thetabar_mag(), c);
    let alpha = p.alpha();

    Ok(defs
        .into_iter()
        .map(|(label, left, right)| {
            let a = corr(&run_a, left) - corr(&run_a, right);
            let b = corr(&run_b, left) - corr(&run_b, right);
            Spacing {
                label: label.to_string(),
                a_ev_per_area: a,
                b_ev_per_area: b,
                value_ev: a * theta_area / alpha.powi(3) + b * thetabar_area / alpha,
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
