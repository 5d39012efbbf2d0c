//! Finite-difference solver for the bosonic sector (fermions set to zero) of the cosine and
//! massive models, with velocity-Verlet time stepping.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Periodic,
    /// Endpoint values held at their initial values.
    Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    SineGordon,
    Massive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Phi00,
    Phi11,
    Both,
}

/// Initial data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "kebab-case")]
pub enum Profile {
    Zero,
    /// `2 arctan exp(alpha gamma (x - x0))` moving with velocity `v`.
    Kink {
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        v: f64,
        #[serde(default = "default_target")]
        field: Target,
    },
    /// The same kink in both fields.
    TwoFieldKink {
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        v: f64,
    },
    /// `a exp(-(x - x0)^2 / (2 w^2))` at rest.
    Gaussian {
        amplitude: f64,
        #[serde(default)]
        x0: f64,
        #[serde(default = "one")]
        width: f64,
        #[serde(default = "default_target")]
        field: Target,
    },
    /// `a cos(2 pi n (x - x_min) / L)` at rest.
    StandingWave {
        amplitude: f64,
        mode: u32,
        #[serde(default = "default_target")]
        field: Target,
    },
}

fn default_target() -> Target {
    Target::Phi00
}

fn one() -> f64 {
    1.0
}

fn default_stride() -> usize {
    50
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub alpha: f64,
    pub dx: f64,
    pub dt: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub t_end: f64,
    pub boundary: Boundary,
    pub model: Model,
    pub initial: Profile,
    /// Steps between recorded samples.
    #[serde(default = "default_stride")]
    pub output_stride: usize,
}

impl SimConfig {
    /// Cosine model on `[-20, 20]` with fixed ends, `dt = 0.4 dx`, static kink.
    pub fn new(alpha: f64, dx: f64) -> Self {
        SimConfig {
            alpha,
            dx,
            dt: 0.4 * dx,
            x_min: -20.0,
            x_max: 20.0,
            t_end: 10.0,
            boundary: Boundary::Fixed,
            model: Model::SineGordon,
            initial: Profile::Kink { x0: 0.0, v: 0.0, field: Target::Phi00 },
            output_stride: default_stride(),
        }
    }

    pub fn from_toml(src: &str) -> Result<Self> {
        let cfg: SimConfig = toml::from_str(src)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.dx > 0.0 && self.dt > 0.0) {
            return bad("dx and dt must be positive");
        }
        if self.dt / self.dx > 1.0 {
            return bad("CFL condition dt/dx <= 1 violated");
        }
        // negated so that NaN is rejected
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.x_max > self.x_min) || !(self.t_end >= 0.0) {
            return bad("empty domain");
        }
        if self.output_stride == 0 {
            return bad("output_stride must be positive");
        }
        let n = (self.x_max - self.x_min) / self.dx;
        if (n - n.round()).abs() > 1e-6 {
            return bad("dx must divide x_max - x_min");
        }
        if let Profile::Kink { v, .. } | Profile::TwoFieldKink { v, .. } = self.initial {
            if v.abs() >= 1.0 {
                return bad("kink velocity must satisfy |v| < 1");
            }
        }
        Ok(())
    }

    fn cells(&self) -> usize {
        ((self.x_max - self.x_min) / self.dx).round() as usize
    }

    /// Grid points: `n + 1` with fixed ends, `n` when periodic.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.cells();
        let count = match self.boundary {
            Boundary::Fixed => n + 1,
            Boundary::Periodic => n,
        };
        (0..count).map(|i| self.x_min + i as f64 * self.dx).collect()
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

/// Both boson fields and their time derivatives on the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldState {
    pub phi00: Vec<f64>,
    pub phi11: Vec<f64>,
    pub pi00: Vec<f64>,
    pub pi11: Vec<f64>,
    pub time: f64,
}

/// Closed-form kink of the reduced equation and its time derivative.
pub fn kink(alpha: f64, x: f64, t: f64, x0: f64, v: f64) -> (f64, f64) {
    let gamma = 1.0 / (1.0 - v * v).sqrt();
    let s = alpha * gamma * (x - x0 - v * t);
    let phi = 2.0 * s.exp().atan();
    (phi, -v * alpha * gamma * phi.sin())
}

/// Energy of the static kink, `int phi'^2 dx = 2 alpha`.
pub fn kink_energy(alpha: f64) -> f64 {
    2.0 * alpha
}

pub fn init_profile(cfg: &SimConfig) -> Result<FieldState> {
    cfg.validate()?;
    let xs = cfg.grid();
    let n = xs.len();
    let mut st = FieldState { phi00: vec![0.0; n], phi11: vec![0.0; n], pi00: vec![0.0; n], pi11: vec![0.0; n], time: 0.0 };
    let put = |st: &mut FieldState, target: Target, i: usize, f: f64, p: f64| {
        if target != Target::Phi11 {
            st.phi00[i] = f;
            st.pi00[i] = p;
        }
        if target != Target::Phi00 {
            st.phi11[i] = f;
            st.pi11[i] = p;
        }
    };
    let length = cfg.x_max - cfg.x_min;
    for (i, &x) in xs.iter().enumerate() {
        match cfg.initial {
            Profile::Zero => {}
            Profile::Kink { x0, v, field } => {
                let (f, p) = kink(cfg.alpha, x, 0.0, x0, v);
                put(&mut st, field, i, f, p);
            }
            Profile::TwoFieldKink { x0, v } => {
                let (f, p) = kink(cfg.alpha, x, 0.0, x0, v);
                put(&mut st, Target::Both, i, f, p);
            }
            Profile::Gaussian { amplitude, x0, width, field } => {
                let f = amplitude * (-(x - x0).powi(2) / (2.0 * width * width)).exp();
                put(&mut st, field, i, f, 0.0);
            }
            Profile::StandingWave { amplitude, mode, field } => {
                let f = amplitude * (2.0 * PI * f64::from(mode) * (x - cfg.x_min) / length).cos();
                put(&mut st, field, i, f, 0.0);
            }
        }
    }
    Ok(st)
}

fn laplacian(u: &[f64], i: usize, cfg: &SimConfig) -> f64 {
    let n = u.len();
    let (l, r) = match cfg.boundary {
        Boundary::Periodic => (u[(i + n - 1) % n], u[(i + 1) % n]),
        Boundary::Fixed => (u[i - 1], u[i + 1]),
    };
    (l - 2.0 * u[i] + r) / (cfg.dx * cfg.dx)
}

/// Accelerations `(phi00_tt, phi11_tt)` at every grid point.
pub fn forces(st: &FieldState, cfg: &SimConfig) -> (Vec<f64>, Vec<f64>) {
    let n = st.phi00.len();
    let mut f00 = vec![0.0; n];
    let mut f11 = vec![0.0; n];
    let a2 = cfg.alpha * cfg.alpha;
    let interior = match cfg.boundary {
        Boundary::Periodic => 0..n,
        Boundary::Fixed => 1..n.saturating_sub(1),
    };
    for i in interior {
        let (p, q) = (st.phi00[i], st.phi11[i]);
        let (v00, v11) = match cfg.model {
            Model::SineGordon => (
                0.5 * a2 * (2.0 * p).sin() * (2.0 * q).cos(),
                0.5 * a2 * (2.0 * p).cos() * (2.0 * q).sin(),
            ),
            Model::Massive => (a2 * p, a2 * q),
        };
        f00[i] = laplacian(&st.phi00, i, cfg) - v00;
        f11[i] = laplacian(&st.phi11, i, cfg) - v11;
    }
    (f00, f11)
}

fn check_finite(st: &FieldState) -> Result<()> {
    for (name, v) in [("phi00", &st.phi00), ("phi11", &st.phi11), ("pi00", &st.pi00), ("pi11", &st.pi11)] {
        if let Some(i) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::Numerical(format!("{name}[{i}] is not finite at t = {}", st.time)));
        }
    }
    Ok(())
}

/// One velocity-Verlet step.
pub fn step(st: &FieldState, cfg: &SimConfig) -> Result<FieldState> {
    let h = cfg.dt;
    let (a00, a11) = forces(st, cfg);
    let half = |p: &[f64], a: &[f64]| -> Vec<f64> { p.iter().zip(a).map(|(p, a)| p + 0.5 * h * a).collect() };
    let p00 = half(&st.pi00, &a00);
    let p11 = half(&st.pi11, &a11);
    let drift = |u: &[f64], p: &[f64]| -> Vec<f64> { u.iter().zip(p).map(|(u, p)| u + h * p).collect() };
    let mut next = FieldState {
        phi00: drift(&st.phi00, &p00),
        phi11: drift(&st.phi11, &p11),
        pi00: p00,
        pi11: p11,
        time: st.time + h,
    };
    let (b00, b11) = forces(&next, cfg);
    next.pi00 = half(&next.pi00, &b00);
    next.pi11 = half(&next.pi11, &b11);
    check_finite(&next)?;
    Ok(next)
}

/// Lattice energy whose gradient is exactly the force used by [`step`]: point terms with
/// trapezoid weights, gradient terms on links.
pub fn total_energy(st: &FieldState, cfg: &SimConfig) -> f64 {
    let n = st.phi00.len();
    let a2 = cfg.alpha * cfg.alpha;
    let mut e = 0.0;
    for i in 0..n {
        let w = match cfg.boundary {
            Boundary::Fixed if i == 0 || i == n - 1 => 0.5 * cfg.dx,
            _ => cfg.dx,
        };
        let (p, q) = (st.phi00[i], st.phi11[i]);
        let pot = match cfg.model {
            Model::SineGordon => {
                let (v00, v11) = (p.sin() * q.cos(), p.cos() * q.sin());
                0.5 * a2 * (v00 * v00 + v11 * v11)
            }
            Model::Massive => 0.5 * a2 * (p * p + q * q),
        };
        e += w * (0.5 * (st.pi00[i].powi(2) + st.pi11[i].powi(2)) + pot);
    }
    let links = match cfg.boundary {
        Boundary::Fixed => n - 1,
        Boundary::Periodic => n,
    };
    for i in 0..links {
        let j = (i + 1) % n;
        let g00 = (st.phi00[j] - st.phi00[i]) / cfg.dx;
        let g11 = (st.phi11[j] - st.phi11[i]) / cfg.dx;
        e += cfg.dx * 0.5 * (g00 * g00 + g11 * g11);
    }
    e
}

/// Sampled states and the energy series.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub energies: Vec<f64>,
    pub snapshots: Vec<FieldState>,
    pub final_state: FieldState,
}

impl Trajectory {
    /// `max |E(t) - E(0)| / |E(0)|`
    pub fn relative_energy_drift(&self) -> f64 {
        let e0 = self.energies[0];
        let scale = if e0.abs() > 0.0 { e0.abs() } else { 1.0 };
        self.energies.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max) / scale
    }
}

pub fn run(cfg: &SimConfig) -> Result<Trajectory> {
    let mut st = init_profile(cfg)?;
    let mut traj = Trajectory {
        times: vec![0.0],
        energies: vec![total_energy(&st, cfg)],
        snapshots: vec![st.clone()],
        final_state: st.clone(),
    };
    let steps = cfg.steps();
    for k in 1..=steps {
        st = step(&st, cfg)?;
        // time from the step count avoids accumulated rounding
        st.time = k as f64 * cfg.dt;
        if k % cfg.output_stride == 0 || k == steps {
            traj.times.push(st.time);
            traj.energies.push(total_energy(&st, cfg));
            traj.snapshots.push(st.clone());
        }
    }
    traj.final_state = st;
    Ok(traj)
}

/// `sqrt(sum dx (u - f(x))^2)`
pub fn l2_error(u: &[f64], cfg: &SimConfig, exact: impl Fn(f64) -> f64) -> f64 {
    cfg.grid().iter().zip(u).map(|(x, u)| (u - exact(*x)).powi(2) * cfg.dx).sum::<f64>().sqrt()
}

/// Position where an increasing profile first crosses `level`, linearly interpolated.
pub fn crossing(u: &[f64], cfg: &SimConfig, level: f64) -> Option<f64> {
    let xs = cfg.grid();
    (0..u.len() - 1).find(|&i| u[i] < level && u[i + 1] >= level).map(|i| {
        let s = (level - u[i]) / (u[i + 1] - u[i]);
        xs[i] + s * cfg.dx
    })
}

/// Period of the signal from successive upward zero crossings, linearly interpolated.
pub fn measured_period(times: &[f64], values: &[f64]) -> Option<f64> {
    let mut crossings = Vec::new();
    for i in 0..values.len().saturating_sub(1) {
        if values[i] < 0.0 && values[i + 1] >= 0.0 {
            let s = -values[i] / (values[i + 1] - values[i]);
            crossings.push(times[i] + s * (times[i + 1] - times[i]));
        }
    }
    if crossings.len() < 2 {
        return None;
    }
    Some((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
}

/// `time,energy` rows.
pub fn write_energy_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "time,energy")?;
    for (t, e) in traj.times.iter().zip(&traj.energies) {
        writeln!(f, "{t},{e}")?;
    }
    Ok(())
}

/// `x,phi00,phi11,pi00,pi11` rows for one state; also readable by gnuplot with `set datafile separator ','`.
pub fn write_snapshot_csv(path: &Path, st: &FieldState, cfg: &SimConfig) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "x,phi00,phi11,pi00,pi11")?;
    for (i, x) in cfg.grid().iter().enumerate() {
        writeln!(f, "{x},{},{},{},{}", st.phi00[i], st.phi11[i], st.pi00[i], st.pi11[i])?;
    }
    Ok(())
}
