//! Geometric multipath channel synthesis, cascaded channels, and angular
//! dictionaries. Owns every ground-truth structure the estimators are
//! benchmarked against.
//!
//! Conventions: a uniform linear array with half-wavelength spacing maps a
//! physical angle to the spatial frequency `sin(angle)` in [-1, 1). Steering
//! vectors carry `exp(-i*pi*phi*n)` phases, so spatial frequencies are
//! 2-periodic and composite (cascaded) frequencies are wrapped back into
//! [-1, 1).

use crate::error::{Error, Result};
use crate::linalg::{pinv, CMat, CVec};
use crate::random::complex_gaussian;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// System dimensions and simulation parameters shared across the pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SystemConfig {
    /// BS antenna count.
    pub m: usize,
    /// RIS element count.
    pub l: usize,
    /// User count.
    pub k: usize,
    /// Pilot length in symbols (>= k).
    pub t: usize,
    /// Training sub-frame count.
    pub b: usize,
    /// Per-user transmit power, linear, relative to unit noise power.
    pub p: f64,
    /// Noise variance (linear).
    pub noise_var: f64,
    /// Cascaded-AoA grid resolution (>= l).
    pub g_r: usize,
    /// AoD grid resolution.
    pub g_t: usize,
    /// BS-RIS path count.
    pub n_f: usize,
    /// RIS-user path count per user.
    pub n_h: usize,
    /// Log-sum smoothing parameter.
    pub varsigma: f64,
    /// Scale factor entering the joint-estimator penalty weight.
    pub d: f64,
    /// Base RNG seed.
    pub seed: u64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig {
            m: 16,
            l: 16,
            k: 4,
            t: 4,
            b: 8,
            p: 10.0,
            noise_var: 1.0,
            g_r: 64,
            g_t: 16,
            n_f: 2,
            n_h: 1,
            varsigma: 1e-9,
            d: 0.1,
            seed: 0,
        }
    }
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("m", self.m),
            ("l", self.l),
            ("k", self.k),
            ("t", self.t),
            ("b", self.b),
            ("g_r", self.g_r),
            ("g_t", self.g_t),
            ("n_f", self.n_f),
            ("n_h", self.n_h),
        ];
        for (name, value) in counts {
            if value == 0 {
                return Err(Error::Config(format!("{name} must be >= 1")));
            }
        }
        if self.t < self.k {
            return Err(Error::Config(format!(
                "pilot length t = {} must be >= user count k = {}",
                self.t, self.k
            )));
        }
        if self.p <= 0.0 {
            return Err(Error::Config("transmit power p must be > 0".into()));
        }
        if self.noise_var <= 0.0 {
            return Err(Error::Config("noise_var must be > 0".into()));
        }
        if self.g_r < self.l {
            return Err(Error::Config(format!(
                "g_r = {} must be >= l = {}",
                self.g_r, self.l
            )));
        }
        if self.varsigma <= 0.0 {
            return Err(Error::Config("varsigma must be > 0".into()));
        }
        Ok(())
    }
}

/// Wrap a spatial frequency into [-1, 1). Steering phases have period 2 in
/// the spatial frequency, so this loses nothing.
pub fn wrap_frequency(f: f64) -> f64 {
    let w = (f + 1.0).rem_euclid(2.0) - 1.0;
    if w >= 1.0 {
        -1.0
    } else {
        w
    }
}

/// Array steering vector of an `x`-element uniform linear array at spatial
/// frequency `phi`: entry `n` equals `exp(-i*pi*phi*n) / sqrt(x)`.
pub fn steering_vector(x: usize, phi: f64) -> Result<CVec> {
    if x == 0 {
        return Err(Error::invalid("steering vector needs at least one element"));
    }
    let scale = 1.0 / (x as f64).sqrt();
    Ok(CVec::from_fn(x, |n, _| {
        Complex64::from_polar(scale, -PI * phi * n as f64)
    }))
}

/// Steering-vector dictionaries over uniform spatial-frequency grids.
#[derive(Debug, Clone)]
pub struct AngularDictionary {
    /// RIS-side dictionary, `l x g_r`.
    pub a_r: CMat,
    /// BS-side dictionary, `m x g_t`.
    pub a_t: CMat,
    pub grid_r: Vec<f64>,
    pub grid_t: Vec<f64>,
}

fn steering_grid(elements: usize, resolution: usize) -> (CMat, Vec<f64>) {
    let grid: Vec<f64> = (0..resolution)
        .map(|j| -1.0 + 2.0 * j as f64 / resolution as f64)
        .collect();
    let mut mat = CMat::zeros(elements, resolution);
    for (j, &f) in grid.iter().enumerate() {
        mat.set_column(j, &steering_vector(elements, f).expect("elements >= 1"));
    }
    (mat, grid)
}

/// Build the angular dictionaries for the given configuration. Columns are
/// unit-norm steering vectors on the uniform grid `{-1 + 2j/G}`.
pub fn build_dictionary(cfg: &SystemConfig) -> AngularDictionary {
    let (a_r, grid_r) = steering_grid(cfg.l, cfg.g_r);
    let (a_t, grid_t) = steering_grid(cfg.m, cfg.g_t);
    AngularDictionary {
        a_r,
        a_t,
        grid_r,
        grid_t,
    }
}

/// One BS-RIS propagation path.
#[derive(Debug, Clone, Copy)]
pub struct BsRisPath {
    pub gain: Complex64,
    /// Angle of arrival at the RIS, radians in [0, 2*pi).
    pub aoa: f64,
    /// Angle of departure from the BS, radians in [0, 2*pi).
    pub aod: f64,
}

/// One RIS-user propagation path.
#[derive(Debug, Clone, Copy)]
pub struct RisUserPath {
    pub gain: Complex64,
    /// Angle of departure from the RIS toward the user, radians.
    pub aod: f64,
}

/// Ground-truth channels plus the path parameters that generated them.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    /// BS-to-RIS channel, `l x m`.
    pub f: CMat,
    /// RIS-to-user channels, one length-`l` vector per user.
    pub h: Vec<CVec>,
    /// Cascaded channels `g_k = diag(h_k^H) f`, one `l x m` matrix per user.
    pub g: Vec<CMat>,
    pub bs_ris_paths: Vec<BsRisPath>,
    pub ris_user_paths: Vec<Vec<RisUserPath>>,
}

impl ChannelRealization {
    /// Synthesize all channels from explicit path records. The cascaded
    /// channels are formed entrywise as `g_k[l, m] = conj(h_k[l]) * f[l, m]`.
    pub fn from_paths(
        l: usize,
        m: usize,
        bs_ris_paths: Vec<BsRisPath>,
        ris_user_paths: Vec<Vec<RisUserPath>>,
    ) -> Result<Self> {
        if l == 0 || m == 0 {
            return Err(Error::invalid("array sizes must be >= 1"));
        }
        if bs_ris_paths.is_empty() || ris_user_paths.iter().any(|p| p.is_empty()) {
            return Err(Error::invalid("every link needs at least one path"));
        }

        let n_f = bs_ris_paths.len();
        let mut f = CMat::zeros(l, m);
        let f_scale = ((l * m) as f64 / n_f as f64).sqrt();
        for path in &bs_ris_paths {
            let a_l = steering_vector(l, path.aoa.sin())?;
            let a_m = steering_vector(m, path.aod.sin())?;
            f += (a_l * a_m.adjoint()).scale(f_scale) * path.gain;
        }

        let mut h = Vec::with_capacity(ris_user_paths.len());
        for user_paths in &ris_user_paths {
            let n_h = user_paths.len();
            let h_scale = (l as f64 / n_h as f64).sqrt();
            let mut h_k = CVec::zeros(l);
            for path in user_paths {
                h_k += steering_vector(l, path.aod.sin())?.scale(h_scale) * path.gain;
            }
            h.push(h_k);
        }

        let g = h
            .iter()
            .map(|h_k| CMat::from_fn(l, m, |i, j| h_k[i].conj() * f[(i, j)]))
            .collect();

        Ok(ChannelRealization {
            f,
            h,
            g,
            bs_ris_paths,
            ris_user_paths,
        })
    }

    /// Spatial frequencies of the BS-side departure directions, one per
    /// BS-RIS path.
    pub fn aod_frequencies(&self) -> Vec<f64> {
        self.bs_ris_paths.iter().map(|p| p.aod.sin()).collect()
    }

    /// Composite RIS-side spatial frequencies of user `k`'s cascaded channel,
    /// one per (BS-RIS path, RIS-user path) pair, wrapped into [-1, 1).
    pub fn cascaded_aoa_frequencies(&self, k: usize) -> Vec<f64> {
        let mut freqs = Vec::with_capacity(self.bs_ris_paths.len() * self.ris_user_paths[k].len());
        for bp in &self.bs_ris_paths {
            for up in &self.ris_user_paths[k] {
                freqs.push(wrap_frequency(bp.aoa.sin() - up.aod.sin()));
            }
        }
        freqs
    }
}

/// Draw a full channel realization: path gains are standard complex Gaussian
/// and all angles are uniform on [0, 2*pi).
pub fn sample_channels<R: Rng + ?Sized>(cfg: &SystemConfig, rng: &mut R) -> Result<ChannelRealization> {
    cfg.validate()?;
    let bs_ris_paths = (0..cfg.n_f)
        .map(|_| BsRisPath {
            gain: complex_gaussian(rng, 1.0),
            aoa: rng.random_range(0.0..TAU),
            aod: rng.random_range(0.0..TAU),
        })
        .collect();
    let ris_user_paths = (0..cfg.k)
        .map(|_| {
            (0..cfg.n_h)
                .map(|_| RisUserPath {
                    gain: complex_gaussian(rng, 1.0),
                    aod: rng.random_range(0.0..TAU),
                })
                .collect()
        })
        .collect();
    ChannelRealization::from_paths(cfg.l, cfg.m, bs_ris_paths, ris_user_paths)
}

/// Diagonal per-element ratio between two users' cascaded channels.
#[derive(Debug, Clone)]
pub struct ScalingMatrix {
    pub diag: CVec,
}

impl ScalingMatrix {
    pub fn identity(l: usize) -> Self {
        ScalingMatrix {
            diag: CVec::from_element(l, Complex64::new(1.0, 0.0)),
        }
    }

    /// Left-multiply a matrix by this diagonal, i.e. scale row `l` by
    /// `diag[l]`.
    pub fn apply_to_rows(&self, mat: &CMat) -> CMat {
        let mut out = mat.clone();
        for i in 0..out.nrows() {
            let s = self.diag[i];
            for j in 0..out.ncols() {
                out[(i, j)] *= s;
            }
        }
        out
    }
}

/// Per-element scaling between user `k` and the reference user:
/// `diag[l] = conj(h_k[l]) / conj(h_1[l])`, which makes `g_k = alpha_k g_1`
/// hold exactly.
pub fn scaling_matrix(h_k: &CVec, h_1: &CVec) -> Result<ScalingMatrix> {
    if h_k.len() != h_1.len() {
        return Err(Error::invalid("channel vectors must have equal length"));
    }
    let mut diag = CVec::zeros(h_1.len());
    for l in 0..h_1.len() {
        if h_1[l].norm() < 1e-12 {
            return Err(Error::DegenerateChannel(format!(
                "reference channel element {l} is numerically zero"
            )));
        }
        diag[l] = h_k[l].conj() / h_1[l].conj();
    }
    Ok(ScalingMatrix { diag })
}

/// Sparse angular-domain channel matrix with its nonzero row/column index
/// sets.
#[derive(Debug, Clone)]
pub struct SparseChannelMatrix {
    pub x: CMat,
    pub row_support: Vec<usize>,
    pub col_support: Vec<usize>,
}

impl SparseChannelMatrix {
    /// Build from a dense matrix, deriving the supports from the nonzero
    /// pattern (entries above `tol` in magnitude).
    pub fn from_dense(x: CMat, tol: f64) -> Self {
        let row_support = (0..x.nrows())
            .filter(|&i| x.row(i).iter().any(|z| z.norm() > tol))
            .collect();
        let col_support = (0..x.ncols())
            .filter(|&j| x.column(j).iter().any(|z| z.norm() > tol))
            .collect();
        SparseChannelMatrix {
            x,
            row_support,
            col_support,
        }
    }
}

/// Relative residual of the best angular-domain representation of `g_k` on
/// the full grid, i.e. `min_X ||g_k - a_r X a_t^H||_F / ||g_k||_F` with the
/// minimum-norm least-squares solution. Diagnostic used by tests; for
/// rank-deficient dictionaries this reports the minimum-norm residual.
pub fn cascaded_vad_residual(g_k: &CMat, dict: &AngularDictionary) -> f64 {
    let gn = g_k.norm();
    if gn == 0.0 {
        return 0.0;
    }
    let a_t_h = dict.a_t.adjoint();
    let x = pinv(&dict.a_r, 1e-12) * g_k * pinv(&a_t_h, 1e-12);
    (g_k - &dict.a_r * x * a_t_h).norm() / gn
}
