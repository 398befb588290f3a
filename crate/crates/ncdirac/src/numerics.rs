//! Numerical kernels: adaptive quadrature on `[0, ∞)`, a fixed-order sphere
//! rule, and exact/iterative eigensolvers for the small Hermitian secular
//! matrices.
//!
//! These routines double as the independent oracles of the test suite: the
//! closed-form radial integrals and the analytic secular matrices are checked
//! against [`integrate_radial`] and [`integrate_sphere`] evaluations of their
//! defining integrals.

use num_complex::Complex64;

use crate::dirac::Level;
use crate::halfint::HalfInt;
use crate::{Error, Result};

/// Default relative tolerance for [`integrate_radial`].
pub const RADIAL_REL_TOL: f64 = 1e-10;
/// Default absolute tolerance for [`integrate_sphere`].
pub const SPHERE_ABS_TOL: f64 = 1e-12;

const MAX_INTERVALS: usize = 4096;

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes
// ---------------------------------------------------------------------------

/// Legendre polynomial P_n and derivative at x, by the three-term recurrence.
fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration from Chebyshev initial guesses.
fn compute_gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    use std::f64::consts::PI;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for iter in 0..100 {
            let (p, d) = legendre_and_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
            assert!(
                iter < 99,
                "Gauss-Legendre Newton iteration failed to converge"
            );
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn gl_nodes(n: usize) -> &'static [(f64, f64)] {
    use std::sync::OnceLock;
    static GL15: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static GL16: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static GL24: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    match n {
        15 => GL15.get_or_init(|| compute_gauss_legendre(15)),
        16 => GL16.get_or_init(|| compute_gauss_legendre(16)),
        24 => GL24.get_or_init(|| compute_gauss_legendre(24)),
        _ => unreachable!("unsupported Gauss-Legendre order {n}"),
    }
}

// ---------------------------------------------------------------------------
// Radial quadrature on [0, ∞)
// ---------------------------------------------------------------------------

/// ∫₀^∞ f(r) dr by globally adaptive Gauss-Legendre quadrature on the
/// substitution r = t / (decay_scale · (1−t)), t ∈ [0, 1].
///
/// `decay_scale` is the exponential decay rate of the integrand (≈ 2λ for the
/// bound-state integrands), so the midpoint t = 1/2 lands at r = 1/decay_scale
/// and the nodes concentrate where the integrand lives. Termination: the sum
/// of per-interval error estimates must fall below `rel_tol` times
/// max(|integral|, Σ|interval contributions|); the L1 fallback keeps
/// sign-cancelling integrands (orthogonality checks) meaningful.
///
/// Errors on non-finite integrand values and on failure to converge within
/// the interval budget — in particular, integrands that are not integrable at
/// the origin keep accumulating mass under refinement and are reported as
/// non-convergent rather than silently truncated.
pub fn integrate_radial<F: Fn(f64) -> f64>(f: F, decay_scale: f64, rel_tol: f64) -> Result<f64> {
    assert!(decay_scale > 0.0, "decay_scale must be positive");
    assert!(rel_tol > 0.0, "rel_tol must be positive");

    // integrand in t, including the Jacobian dr/dt = 1/(s(1−t)²)
    let s = decay_scale;
    let eval = |t: f64| -> Result<f64> {
        let one_minus = 1.0 - t;
        let r = t / (s * one_minus);
        if !(r > 0.0) {
            // GL nodes are interior, but guard the algebra anyway
            return Ok(0.0);
        }
        if !r.is_finite() {
            // Deep refinement can round a node onto t = 1, the image of
            // r = ∞; a mapped integrand vanishes there in the limit, and a
            // divergent one still fails the error test on interior nodes.
            return Ok(0.0);
        }
        let v = f(r) / (s * one_minus * one_minus);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::QuadratureNonFinite { r })
        }
    };

    let gl = gl_nodes(15);
    let segment = |a: f64, b: f64| -> Result<f64> {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for &(x, w) in gl {
            acc += w * eval(c + h * x)?;
        }
        Ok(acc * h)
    };

    struct Interval {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }

    let make = |a: f64, b: f64| -> Result<Interval> {
        let whole = segment(a, b)?;
        let mid = 0.5 * (a + b);
        let refined = segment(a, mid)? + segment(mid, b)?;
        Ok(Interval {
            a,
            b,
            value: refined,
            err: (whole - refined).abs(),
        })
    };

    let mut intervals = Vec::with_capacity(64);
    const SEEDS: usize = 16;
    for i in 0..SEEDS {
        let a = i as f64 / SEEDS as f64;
        let b = (i + 1) as f64 / SEEDS as f64;
        intervals.push(make(a, b)?);
    }

    loop {
        let total: f64 = intervals.iter().map(|iv| iv.value).sum();
        let l1: f64 = intervals.iter().map(|iv| iv.value.abs()).sum();
        let err: f64 = intervals.iter().map(|iv| iv.err).sum();
        let scale = total.abs().max(l1);
        if err <= rel_tol * scale || (scale == 0.0 && err == 0.0) {
            return Ok(total);
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNoConvergence {
                estimate: err / scale.max(f64::MIN_POSITIVE),
                intervals: intervals.len(),
            });
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("non-empty interval list");
        let Interval { a, b, .. } = intervals.swap_remove(worst);
        let mid = 0.5 * (a + b);
        intervals.push(make(a, mid)?);
        intervals.push(make(mid, b)?);
    }
}

// ---------------------------------------------------------------------------
// Sphere quadrature
// ---------------------------------------------------------------------------

/// ∫ f(ϑ, φ) dΩ over the unit sphere by Gauss-Legendre in cosϑ crossed with
/// a uniform trapezoid rule in φ.
///
/// The integrands appearing here are finite sums of spherical-harmonic
/// products of degree ≤ 12, for which the 16×32 rule is already exact to
/// rounding; the routine always evaluates a finer 24×48 rule as well and
/// asserts the two agree within `tol` (scaled by the result magnitude when
/// that exceeds one), so an insufficient order fails loudly instead of
/// returning a plausible wrong number.
pub fn integrate_sphere<F: Fn(f64, f64) -> Complex64>(f: F, tol: f64) -> Complex64 {
    assert!(tol > 0.0, "tol must be positive");
    let rule = |n_theta: usize, n_phi: usize| -> Complex64 {
        use std::f64::consts::PI;
        let gl = gl_nodes(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, w) in gl {
            let theta = x.acos();
            let mut ring = Complex64::new(0.0, 0.0);
            for k in 0..n_phi {
                ring += f(theta, k as f64 * dphi);
            }
            acc += w * dphi * ring;
        }
        acc
    };
    let coarse = rule(16, 32);
    let fine = rule(24, 48);
    let diff = (fine - coarse).norm();
    assert!(
        diff <= tol * fine.norm().max(1.0),
        "sphere rule self-check failed: |fine - coarse| = {diff:.3e} (integrand beyond supported degree?)"
    );
    fine
}

// ---------------------------------------------------------------------------
// Secular matrices and Hermitian eigensolvers
// ---------------------------------------------------------------------------

/// Which perturbation a secular matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Space-space matrix Θ (orbital part, ⟨Ω| L·θ |Ω⟩ structure).
    Theta,
    /// Momentum-momentum matrix Θ̄ (spin-angular two-term difference).
    ThetaBar,
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixKind::Theta => write!(f, "theta"),
            MatrixKind::ThetaBar => write!(f, "thetabar"),
        }
    }
}

/// A (2j+1)×(2j+1) Hermitian secular matrix for one level, rows and columns
/// indexed by (j_z, j_z′) in descending j_z order: j, j−1, …, −j.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    level: Level,
    kind: MatrixKind,
}

impl SecularMatrix {
    /// Wraps row-major entries; panics unless the matrix is square of
    /// dimension 2j+1 and Hermitian within 1e−12 of its own scale (the
    /// constructions in this crate are Hermitian by algebra, so a violation
    /// is a bug, not data).
    pub fn new(level: Level, kind: MatrixKind, entries: Vec<Complex64>) -> Self {
        let dim = (level.j().doubled() + 1) as usize;
        assert_eq!(entries.len(), dim * dim, "entry count must be dim²");
        let m = SecularMatrix {
            dim,
            entries,
            level,
            kind,
        };
        let dev = m.hermiticity_deviation();
        let scale = m.max_abs().max(f64::MIN_POSITIVE);
        assert!(
            dev <= 1e-12 * scale,
            "secular matrix not Hermitian: deviation {dev:.3e} at scale {scale:.3e}"
        );
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.dim && col < self.dim);
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// j_z value labelling `row` (descending order).
    pub fn jz_of_row(&self, row: usize) -> HalfInt {
        assert!(row < self.dim);
        HalfInt::from_doubled(self.level.j().doubled() - 2 * row as i32)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for a in 0..self.dim {
            for b in 0..self.dim {
                dev = dev.max((self.get(a, b) - self.get(b, a).conj()).norm());
            }
        }
        dev
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

/// Eigendecomposition of a Hermitian matrix: `values` sorted descending,
/// `vectors[k]` the orthonormal eigenvector column for `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

/// Eigendecomposition of a secular matrix. Dimensions 1 and 2 are solved in
/// closed form; larger matrices by cyclic complex Jacobi sweeps, iterating
/// until the off-diagonal Frobenius norm drops below 1e−13 times the input
/// Frobenius norm.
pub fn hermitian_eigen(m: &SecularMatrix) -> Result<Eigen> {
    let dev = m.hermiticity_deviation();
    let tol = 1e-12 * m.max_abs().max(f64::MIN_POSITIVE);
    if dev > tol {
        return Err(Error::NotHermitian {
            deviation: dev,
            tol,
        });
    }
    let mut eig = match m.dim {
        1 => Eigen {
            values: vec![m.get(0, 0).re],
            vectors: vec![vec![Complex64::new(1.0, 0.0)]],
        },
        2 => eigen_2x2(m.get(0, 0).re, m.get(0, 1), m.get(1, 1).re),
        _ => jacobi_eigen(m.dim, m.entries.clone()),
    };
    sort_descending(&mut eig);
    Ok(eig)
}

fn sort_descending(eig: &mut Eigen) {
    let mut order: Vec<usize> = (0..eig.values.len()).collect();
    order.sort_by(|&a, &b| eig.values[b].total_cmp(&eig.values[a]));
    eig.values = order.iter().map(|&k| eig.values[k]).collect();
    eig.vectors = order.iter().map(|&k| eig.vectors[k].clone()).collect();
}

/// Closed-form Hermitian 2×2: [[a, c], [c̄, b]] with a, b real.
fn eigen_2x2(a: f64, c: Complex64, b: f64) -> Eigen {
    let mean = 0.5 * (a + b);
    let delta = 0.5 * (a - b);
    let rad = (delta * delta + c.norm_sqr()).sqrt();
    let hi = mean + rad;
    let lo = mean - rad;
    let vectors = if c.norm() == 0.0 {
        let e0 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e1 = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        if a >= b {
            vec![e0, e1]
        } else {
            vec![e1, e0]
        }
    } else {
        let mk = |lambda: f64| {
            let v0 = c;
            let v1 = Complex64::new(lambda - a, 0.0);
            let n = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
            vec![v0 / n, v1 / n]
        };
        vec![mk(hi), mk(lo)]
    };
    Eigen {
        values: vec![hi, lo],
        vectors,
    }
}

/// Cyclic complex Jacobi for Hermitian matrices of small dimension. Each
/// (p,q) rotation is the unitary that diagonalizes the 2×2 block exactly;
/// the full-matrix products keep the index bookkeeping trivial at these
/// dimensions (n ≤ 4).
fn jacobi_eigen(n: usize, mut a: Vec<Complex64>) -> Eigen {
    let frob = |m: &[Complex64]| -> f64 { m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() };
    let off_diag = |m: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += m[p * n + q].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let norm0 = frob(&a).max(f64::MIN_POSITIVE);

    let mut v: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let matmul = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i * n + k];
                if xik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += xik * y[k * n + j];
                }
            }
        }
        out
    };
    let dagger = |x: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = x[i * n + j].conj();
            }
        }
        out
    };

    let mut sweeps = 0;
    while off_diag(&a) > 1e-13 * norm0 {
        sweeps += 1;
        assert!(sweeps <= 100, "Jacobi failed to converge in 100 sweeps");
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[p * n + q];
                if g.norm() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // phase factor turning the block real, then a real rotation
                let phase = g / g.norm();
                let theta = 0.5 * (2.0 * g.norm()).atan2(app - aqq);
                let (sin_t, cos_t) = theta.sin_cos();
                let mut u: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
                for i in 0..n {
                    u[i * n + i] = Complex64::new(1.0, 0.0);
                }
                u[p * n + p] = Complex64::new(cos_t, 0.0);
                u[p * n + q] = Complex64::new(-sin_t, 0.0);
                u[q * n + p] = sin_t * phase.conj();
                u[q * n + q] = cos_t * phase.conj();
                a = matmul(&dagger(&u), &matmul(&a, &u));
                v = matmul(&v, &u);
            }
        }
    }

    let values: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let vectors: Vec<Vec<Complex64>> = (0..n)
        .map(|k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Eigen { values, vectors }
}
