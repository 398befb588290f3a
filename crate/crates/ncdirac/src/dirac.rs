//! The commutative relativistic bound-state problem: energies E_{n,j},
//! quantum-number bookkeeping (κ, n′, l′, γ), and the normalized closed-form
//! radial functions g(r), f(r).

use crate::constants::PhysicalConstants;
use crate::halfint::HalfInt;
use crate::special_functions::{confluent_phi, gamma_fn};
use crate::{Error, Result};

/// Spectroscopic letters for orbital angular momentum (no J, per convention).
const L_LETTERS: &[u8] = b"SPDFGHIKLMNOQRTUV";

/// κ = −(j+1/2) for j = l+1/2, +(j+1/2) for j = l−1/2.
pub fn kappa_of(j: HalfInt, l: u32) -> Result<i32> {
    let j2 = j.doubled();
    let l2 = 2 * l as i32;
    if j2 <= 0 || j.is_integer() {
        return Err(Error::InvalidLevel(format!(
            "j must be a positive half-odd-integer, got {j}"
        )));
    }
    if j2 == l2 + 1 {
        Ok(-(j2 + 1) / 2)
    } else if j2 == l2 - 1 {
        Ok((j2 + 1) / 2)
    } else {
        Err(Error::InvalidLevel(format!(
            "j = {j} requires l = j ± 1/2, got l = {l}"
        )))
    }
}

/// A bound level (n, j, l) of a hydrogen-like atom with charge Z.
///
/// Z is a positive real rather than an integer so that coupling-scaling
/// property tests can dial Ze² continuously; physical runs use integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    n: u32,
    j: HalfInt,
    l: u32,
    z: f64,
}

impl Level {
    pub fn new(n: u32, j: HalfInt, l: u32, z: f64) -> Result<Self> {
        let kappa = kappa_of(j, l)?; // validates the (j, l) pairing
        let _ = kappa;
        if n == 0 {
            return Err(Error::InvalidLevel("n must be ≥ 1".into()));
        }
        if j.doubled() + 1 > 2 * n as i32 {
            return Err(Error::InvalidLevel(format!(
                "j = {j} requires n ≥ j + 1/2, got n = {n}"
            )));
        }
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::InvalidLevel(format!(
                "Z must be positive and finite, got {z}"
            )));
        }
        Ok(Level { n, j, l, z })
    }

    /// Parses a spectroscopic label like "2P3/2" or "3D5/2".
    pub fn from_label(label: &str, z: f64) -> Result<Self> {
        let s = label.trim();
        let letter_pos = s
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(|| Error::InvalidLevel(format!("no spectroscopic letter in {s:?}")))?;
        let (n_str, rest) = s.split_at(letter_pos);
        let n: u32 = n_str.parse().map_err(|_| {
            Error::InvalidLevel(format!("invalid principal quantum number in {s:?}"))
        })?;
        let letter = rest.as_bytes()[0].to_ascii_uppercase();
        let l = L_LETTERS.iter().position(|&c| c == letter).ok_or_else(|| {
            Error::InvalidLevel(format!(
                "unknown orbital letter {:?}",
                rest.chars().next().unwrap()
            ))
        })? as u32;
        let j: HalfInt = rest[1..]
            .parse()
            .map_err(|e| Error::InvalidLevel(format!("invalid j in {s:?}: {e}")))?;
        Level::new(n, j, l, z)
    }

    /// Canonical spectroscopic label, e.g. "2P3/2". Inverse of `from_label`.
    pub fn label(&self) -> String {
        let letter = L_LETTERS.get(self.l as usize).copied().unwrap_or(b'?') as char;
        format!("{}{}{}", self.n, letter, self.j)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn kappa(&self) -> i32 {
        kappa_of(self.j, self.l).expect("validated at construction")
    }

    /// Radial quantum number n′ = n − j − 1/2 ≥ 0.
    pub fn n_prime(&self) -> u32 {
        (self.n as i32 - (self.j.doubled() + 1) / 2) as u32
    }

    /// The partner orbital quantum number l′ = 2j − l.
    pub fn l_prime(&self) -> u32 {
        (self.j.doubled() - self.l as i32) as u32
    }

    /// γ = √(κ² − (Ze²)²); errors when the coupling reaches |κ|.
    pub fn gamma_param(&self, c: &PhysicalConstants) -> Result<f64> {
        let ze2 = self.z * c.coupling_e2;
        let kappa_abs = self.kappa().abs();
        if ze2 >= f64::from(kappa_abs) {
            return Err(Error::CouplingTooStrong { ze2, kappa_abs });
        }
        Ok((f64::from(kappa_abs).powi(2) - ze2 * ze2).sqrt())
    }
}

/// Exact bound-state energy:
/// E_{n,j} = m / √(1 + (Ze²/(γ + n′))²).
/// Depends on (n, j, Z) only — both l = j ± 1/2 share one formula path.
pub fn energy(level: &Level, c: &PhysicalConstants) -> Result<f64> {
    let gamma = level.gamma_param(c)?;
    let ze2 = level.z * c.coupling_e2;
    let x = ze2 / (gamma + f64::from(level.n_prime()));
    Ok(c.electron_mass_ev / (1.0 + x * x).sqrt())
}

/// Closed-form parameters of the normalized radial functions for one level.
#[derive(Debug, Clone, Copy)]
pub struct RadialSolution {
    level: Level,
    constants: PhysicalConstants,
    energy: f64,
    lambda: f64,
    lambda_plus: f64,
    lambda_minus: f64,
    eta: f64,
    beta: f64,
    gamma: f64,
    /// Shared normalization radical, without the λ± factor:
    /// (2λ)^{3/2}/(2Γ(β)) · √(Γ(n′+β)/(η(η−κ) n′!)).
    prefactor: f64,
}

impl RadialSolution {
    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// λ = √(m² − E²), in eV.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// λ± = √(1 ± E/m).
    pub fn lambda_pm(&self) -> (f64, f64) {
        (self.lambda_plus, self.lambda_minus)
    }

    /// η = (n′ + γ) m / E.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// β = 2γ + 1.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The natural decay rate 2λ of the density integrands, for quadrature.
    pub fn decay_rate(&self) -> f64 {
        2.0 * self.lambda
    }

    /// Evaluates the closed-form radial functions at r (in eV⁻¹):
    ///
    /// g,f = ±(2λ)^{3/2} λ± / (2Γ(β)) · √(Γ(n′+β)/(η(η−κ) n′!))
    ///       · (2rλ)^{γ−1} e^{−rλ} · { (η−κ) Φ(−n′, β; 2rλ) ∓ n′ Φ(1−n′, β; 2rλ) }
    ///
    /// with the upper signs for g and the lower for f. The overall sign
    /// convention is adopted as printed and fixed; it is unobservable in the
    /// spectrum but pins the sign of the g·f radial integral, so it must not
    /// be changed independently of the correction pipeline.
    pub fn g_f(&self, r: f64) -> Result<(f64, f64)> {
        if !(r > 0.0) {
            return Err(Error::InvalidLevel(format!(
                "radial functions need r > 0, got {r}"
            )));
        }
        let np = f64::from(self.level.n_prime());
        let kappa = f64::from(self.level.kappa());
        let x = 2.0 * r * self.lambda;
        let phi1 = confluent_phi(-np, self.beta, x)?;
        let phi2 = if self.level.n_prime() == 0 {
            0.0 // multiplied by n′ = 0; skip the series entirely
        } else {
            confluent_phi(1.0 - np, self.beta, x)?
        };
        let shape = x.powf(self.gamma - 1.0) * (-r * self.lambda).exp();
        let g = self.prefactor * self.lambda_plus * shape * ((self.eta - kappa) * phi1 - np * phi2);
        let f =
            -self.prefactor * self.lambda_minus * shape * ((self.eta - kappa) * phi1 + np * phi2);
        Ok((g, f))
    }
}

/// Builds the radial closed-form parameters: E, λ, λ±, η, β, γ and the
/// normalization prefactor.
pub fn radial_params(level: &Level, c: &PhysicalConstants) -> Result<RadialSolution> {
    let e = energy(level, c)?;
    let m = c.electron_mass_ev;
    let gamma = level.gamma_param(c)?;
    let lambda = ((m - e) * (m + e)).sqrt();
    let lambda_plus = (1.0 + e / m).sqrt();
    let lambda_minus = (1.0 - e / m).sqrt();
    let np = f64::from(level.n_prime());
    let eta = (np + gamma) * m / e;
    let beta = 2.0 * gamma + 1.0;
    let kappa = f64::from(level.kappa());

    // invariants that hold by construction; a violation is a logic bug
    assert!(e > 0.0 && e < m);
    assert!(beta > 2.0);
    assert!(eta > 0.0 && eta - kappa > 0.0);

    let n_prime_factorial = gamma_fn(np + 1.0)?;
    let radical = (gamma_fn(np + beta)? / (eta * (eta - kappa) * n_prime_factorial)).sqrt();
    let prefactor = (2.0 * lambda).powf(1.5) / (2.0 * gamma_fn(beta)?) * radical;

    Ok(RadialSolution {
        level: *level,
        constants: *c,
        energy: e,
        lambda,
        lambda_plus,
        lambda_minus,
        eta,
        beta,
        gamma,
        prefactor,
    })
}
