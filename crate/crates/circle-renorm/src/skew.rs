//! The fiber maps T_rho, the skew product over the Gauss map, the even-type
//! closed-form trail, the fiber measure-pullback recursion, and orbit/density
//! statistics.
//!
//! The fiber map of [−1,1] has three branches:
//!
//! ```text
//!   -alpha                    on [-1, 0]
//!   -alpha / (rho G(rho))     on [0, rho G(rho)]
//!   frac((1 - alpha) / rho)   on (rho G(rho), 1]
//! ```
//!
//! Since `rho G(rho) = 1 - a0 rho`, every quantity needed here is an integer
//! linear form in `rho`, so the certified path works on exact rational
//! enclosures of `rho` at a chosen convergent depth.

use crate::cf::{RotationNumber, DEFAULT_DEPTH};
use crate::enclosure::{Approx, Enclosure};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Point of the rectangle R = [0,1] x [-1,1]: an exact digit stream paired
/// with a certified fiber coordinate.
#[derive(Clone, Debug)]
pub struct SkewPoint {
    pub rho: RotationNumber,
    pub alpha: Enclosure,
}

impl SkewPoint {
    pub fn new(rho: RotationNumber, alpha: Enclosure) -> Result<Self> {
        let one = BigRational::from_integer(1.into());
        if alpha.lo() < &-one.clone() || alpha.hi() > &one {
            return Err(Error::OutOfRange(format!(
                "alpha {} outside [-1,1]",
                alpha.to_approx()
            )));
        }
        Ok(SkewPoint { rho, alpha })
    }

    pub fn from_f64(rho: RotationNumber, alpha: f64) -> Result<Self> {
        let a = Enclosure::from_f64(alpha)
            .ok_or_else(|| Error::OutOfRange("alpha not finite".into()))?;
        Self::new(rho, a)
    }

    /// Generic starting point for density runs: rho from the seed's certified
    /// float prefix continued by Gauss-Kuzmin digits, alpha uniform.
    pub fn generic_from_seed(seed: u64) -> Self {
        let rho = RotationNumber::generic_from_seed(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let alpha: f64 = rng.gen_range(-1.0..1.0);
        SkewPoint {
            rho,
            alpha: Enclosure::from_f64(alpha).expect("finite alpha"),
        }
    }
}

/// Branch of the fiber map actually applied at a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiberBranch {
    /// alpha in [-1,0]: reflection, slope -1.
    Reflect,
    /// alpha in [0, rho G(rho)]: slope -1/(rho G(rho)).
    Stretch,
    /// alpha in (rho G(rho), 1]: fractional part of an affine map, slope -1/rho.
    Wrap,
    /// The input enclosure straddled 0; image hull of the two agreeing
    /// branches.
    ReflectStretchHull,
}

/// rho G(rho) = 1 - a0 rho, as an enclosure.
pub fn rho_g_rho(rho: &RotationNumber, depth: usize) -> Result<Enclosure> {
    let a0 = rho.digit(0)?;
    Ok(rho
        .value(depth)?
        .scale_int(-(a0 as i64))
        .add_rat(&BigRational::from_integer(1.into())))
}

pub fn fiber_map(rho: &RotationNumber, alpha: &Enclosure, depth: usize) -> Result<Enclosure> {
    fiber_map_with_branch(rho, alpha, depth).map(|(v, _)| v)
}

pub fn fiber_map_with_branch(
    rho: &RotationNumber,
    alpha: &Enclosure,
    depth: usize,
) -> Result<(Enclosure, FiberBranch)> {
    let one = BigRational::from_integer(1.into());
    let slack = BigRational::new(1.into(), 1_000_000_000u64.into());
    if alpha.lo() < &(-one.clone() - slack.clone()) || alpha.hi() > &(one + slack) {
        return Err(Error::OutOfRange(format!(
            "alpha {} outside [-1,1]",
            alpha.to_approx()
        )));
    }
    let rg = rho_g_rho(rho, depth)?;
    if !rg.is_strictly_positive() {
        return Err(Error::PrecisionExhausted(
            "enclosure of rho G(rho) touches 0; increase depth".into(),
        ));
    }
    let zero = BigRational::zero();
    if alpha.le_rat(&zero) {
        return Ok((alpha.neg(), FiberBranch::Reflect));
    }
    if alpha.ge_rat(&zero) {
        if alpha.hi() <= rg.lo() {
            let img = alpha.neg().div(&rg).expect("rg positive");
            return Ok((img, FiberBranch::Stretch));
        }
        if alpha.lo() >= rg.hi() {
            let v = alpha
                .one_minus()
                .div(&rho.value(depth)?)
                .ok_or_else(|| Error::PrecisionExhausted("rho enclosure touches 0".into()))?;
            let m = v.floor_exact().ok_or_else(|| {
                Error::Ambiguous(format!(
                    "alpha {} lands on a wrap-branch breakpoint at the working precision",
                    alpha.to_approx()
                ))
            })?;
            let frac = v.add_rat(&BigRational::from_integer(-m));
            return Ok((frac, FiberBranch::Wrap));
        }
        return Err(Error::Ambiguous(format!(
            "alpha {} straddles rho G(rho) = {} at the working precision",
            alpha.to_approx(),
            rg.to_approx()
        )));
    }
    // straddles 0: the two branches agree (both vanish) at the breakpoint,
    // so the hull of both images is a valid enclosure
    let neg_part = Enclosure::new(alpha.lo().clone(), zero.clone()).neg();
    let pos_part = Enclosure::new(zero, alpha.hi().clone());
    if pos_part.hi() > rg.lo() {
        return Err(Error::Ambiguous(format!(
            "alpha {} spans both 0 and rho G(rho)",
            alpha.to_approx()
        )));
    }
    let img = neg_part.hull(&pos_part.neg().div(&rg).expect("rg positive"));
    Ok((img, FiberBranch::ReflectStretchHull))
}

/// One step of the skew product T(rho, alpha) = (G(rho), T_rho(alpha)).
pub fn skew_step(p: &SkewPoint, depth: usize) -> Result<SkewPoint> {
    let alpha = fiber_map(&p.rho, &p.alpha, depth)?;
    Ok(SkewPoint { rho: p.rho.gauss_shift(), alpha })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub step: usize,
    pub rho: Approx,
    pub alpha: Approx,
    pub branch: Option<FiberBranch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkewOrbitReport {
    pub entries: Vec<OrbitEntry>,
    /// Step at which the alpha error bound exceeded the ceiling (orbit
    /// truncated there), if any.
    pub truncated_at: Option<usize>,
    pub depth_used: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct OrbitOptions {
    pub depth: usize,
    pub err_ceiling: f64,
    pub auto_refine: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { depth: DEFAULT_DEPTH, err_ceiling: 1e-6, auto_refine: true }
    }
}

/// First `n` iterates with propagated error bounds. The orbit halts early,
/// with a flag, if the alpha bound exceeds the configured ceiling; with
/// `auto_refine` the whole orbit is retried at doubled depth first.
pub fn skew_orbit(start: &SkewPoint, n: usize, opts: &OrbitOptions) -> Result<SkewOrbitReport> {
    let mut depth = opts.depth.max(2);
    loop {
        match run_orbit(start, n, depth, opts.err_ceiling) {
            Ok(rep) => {
                if rep.truncated_at.is_some() && opts.auto_refine && depth < 2048 {
                    depth *= 2;
                    continue;
                }
                return Ok(rep);
            }
            Err(Error::Ambiguous(msg)) | Err(Error::PrecisionExhausted(msg)) => {
                if opts.auto_refine && depth < 2048 {
                    depth *= 2;
                    continue;
                }
                return Err(Error::PrecisionExhausted(msg));
            }
            Err(e) => return Err(e),
        }
    }
}

fn run_orbit(start: &SkewPoint, n: usize, depth: usize, ceiling: f64) -> Result<SkewOrbitReport> {
    let mut entries = Vec::with_capacity(n + 1);
    let mut cur = start.clone();
    entries.push(OrbitEntry {
        step: 0,
        rho: cur.rho.value(depth)?.to_approx(),
        alpha: cur.alpha.to_approx(),
        branch: None,
    });
    let mut truncated_at = None;
    for step in 1..=n {
        let (alpha, branch) = fiber_map_with_branch(&cur.rho, &cur.alpha, depth)?;
        cur = SkewPoint { rho: cur.rho.gauss_shift(), alpha };
        let a = cur.alpha.to_approx();
        entries.push(OrbitEntry {
            step,
            rho: cur.rho.value(depth)?.to_approx(),
            alpha: a,
            branch: Some(branch),
        });
        if a.err > ceiling {
            truncated_at = Some(step);
            break;
        }
    }
    Ok(SkewOrbitReport { entries, truncated_at, depth_used: depth })
}

/// Closed-form trail value for even-type digits started at alpha_0 = 1/2:
/// rho_n/2 at odd levels, 1/2 + rho_n at even levels >= 2, 1/2 at level 0.
pub fn even_trail_closed_form(rho: &RotationNumber, n: usize, depth: usize) -> Result<Enclosure> {
    let report = rho.is_even_type(n.max(1));
    if let Some(first_odd) = report.first_odd {
        if first_odd < n || n == 0 {
            return Err(Error::NotEvenType(first_odd));
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    if n == 0 {
        return Ok(Enclosure::point(half));
    }
    let rho_n = rho.shifted(n).value(depth)?;
    if n % 2 == 1 {
        Ok(rho_n.scale_rat(&half))
    } else {
        Ok(rho_n.add_rat(&half))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackStep {
    pub n: usize,
    pub ell: Approx,
    pub r: Approx,
    pub tau: Approx,
    pub total: Approx,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub steps: Vec<PullbackStep>,
    pub total: Approx,
    /// Bracket [theta0 G(theta0) lambda(B), (2 - theta0 G(theta0)) lambda(B)]
    /// that must contain the limit.
    pub limit_lower: Approx,
    pub limit_upper: Approx,
}

/// Lebesgue mass of the pullback of `B = [b_lo, b_hi]` under the composition
/// T_{theta_0} o ... o T_{theta_{n-1}}, by the exact recursion
/// `l_{k+1} = r_k`, `r_{k+1} = x_k l_k + (1 - x_k) r_k` with
/// `x_k = theta_k G(theta_k)`.
pub fn fiber_pullback_measure(
    thetas: &[RotationNumber],
    b_lo: f64,
    b_hi: f64,
    n: usize,
    depth: usize,
) -> Result<PullbackReport> {
    if n > thetas.len() {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds the {} supplied fiber parameters",
            thetas.len()
        )));
    }
    if !(-1.0..=1.0).contains(&b_lo) || !(-1.0..=1.0).contains(&b_hi) || b_lo > b_hi {
        return Err(Error::OutOfRange(format!("B = [{b_lo}, {b_hi}] not inside [-1,1]")));
    }
    let lo = BigRational::from_float(b_lo).unwrap();
    let hi = BigRational::from_float(b_hi).unwrap();
    let zero = BigRational::zero();
    let ell0 = hi.clone().min(zero.clone()) - lo.clone().min(zero.clone());
    let r0 = hi.max(zero.clone()) - lo.max(zero);
    let mut ell = Enclosure::point(ell0);
    let mut r = Enclosure::point(r0);
    let mut tau = Enclosure::one();
    let mut tau_next = Enclosure::zero();
    let mut steps = Vec::with_capacity(n + 1);
    let push = |steps: &mut Vec<PullbackStep>,
                k: usize,
                ell: &Enclosure,
                r: &Enclosure,
                tau: &Enclosure| {
        steps.push(PullbackStep {
            n: k,
            ell: ell.to_approx(),
            r: r.to_approx(),
            tau: tau.to_approx(),
            total: ell.add(r).to_approx(),
        });
    };
    push(&mut steps, 0, &ell, &r, &tau);
    for (k, theta) in thetas.iter().take(n).enumerate() {
        let x = rho_g_rho(theta, depth)?;
        let new_ell = r.clone();
        let new_r = x.mul(&ell).add(&x.one_minus().mul(&r));
        let new_tau = x.mul(&tau).add(&x.one_minus().mul(&tau_next));
        ell = new_ell;
        r = new_r;
        tau = tau_next;
        tau_next = new_tau;
        push(&mut steps, k + 1, &ell, &r, &tau);
    }
    let total = ell.add(&r);
    let x0 = rho_g_rho(&thetas[0], depth)?;
    let lam_b = Enclosure::from_f64(b_hi - b_lo).unwrap();
    let lower = x0.mul(&lam_b);
    let upper = x0
        .neg()
        .add_rat(&BigRational::from_integer(2.into()))
        .mul(&lam_b);
    Ok(PullbackReport {
        steps,
        total: total.to_approx(),
        limit_lower: lower.to_approx(),
        limit_upper: upper.to_approx(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DensityMode {
    /// Plain f64 fiber iteration along the exact digit stream. The rho
    /// coordinate is re-evaluated from the digit window at every level, so it
    /// never drifts; the alpha coordinate is a pseudo-orbit, which is what a
    /// density statistic wants.
    Generic,
    /// Certified enclosures; the orbit truncates (flagged) once the alpha
    /// bound exceeds the ceiling (in units of 1e-9).
    Certified { ceiling_times_1e9: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub grid: usize,
    pub steps_requested: usize,
    pub steps_done: usize,
    pub truncated: bool,
    pub mode: String,
    /// Row-major visit counts: row = alpha cell (from -1), column = rho cell.
    pub counts: Vec<u64>,
    pub visited_cells: usize,
    pub coverage: f64,
}

/// Fraction of grid cells of R visited by the first `steps` iterates, plus
/// the visit-count histogram (an empirical invariant-density estimate).
pub fn orbit_density(
    p: &SkewPoint,
    steps: usize,
    grid: usize,
    mode: DensityMode,
) -> Result<DensityReport> {
    if grid == 0 || steps < grid {
        return Err(Error::OutOfRange("need steps >= grid size".into()));
    }
    let mut counts = vec![0u64; grid * grid];
    let record = |rho: f64, alpha: f64, counts: &mut Vec<u64>| {
        let col = ((rho * grid as f64) as usize).min(grid - 1);
        let row = (((alpha + 1.0) / 2.0 * grid as f64) as usize).min(grid - 1);
        counts[row * grid + col] += 1;
    };
    let mut done = 0;
    let mut truncated = false;
    match mode {
        DensityMode::Generic => {
            let window = 32;
            let mut alpha = p.alpha.mid_f64();
            for j in 0..steps {
                let digits = p.rho.shifted(j).digits_up_to(window);
                if digits.is_empty() {
                    truncated = true;
                    break;
                }
                let rho_j = value_f64_window(&digits);
                record(rho_j, alpha, &mut counts);
                done = j + 1;
                let rg = 1.0 - digits[0] as f64 * rho_j;
                alpha = if alpha <= 0.0 {
                    -alpha
                } else if alpha <= rg {
                    -alpha / rg
                } else {
                    let v = (1.0 - alpha) / rho_j;
                    v - v.floor()
                };
            }
        }
        DensityMode::Certified { ceiling_times_1e9 } => {
            let ceiling = ceiling_times_1e9 as f64 * 1e-9;
            let mut cur = p.clone();
            let depth = DEFAULT_DEPTH;
            for j in 0..steps {
                let rho_j = match cur.rho.value(depth) {
                    Ok(v) => v.mid_f64(),
                    Err(_) => {
                        truncated = true;
                        break;
                    }
                };
                let a = cur.alpha.to_approx();
                if a.err > ceiling {
                    truncated = true;
                    break;
                }
                record(rho_j, a.value, &mut counts);
                done = j + 1;
                match skew_step(&cur, depth) {
                    Ok(next) => cur = next,
                    Err(_) => {
                        truncated = true;
                        break;
                    }
                }
            }
        }
    }
    let visited = counts.iter().filter(|&&c| c > 0).count();
    Ok(DensityReport {
        grid,
        steps_requested: steps,
        steps_done: done,
        truncated,
        mode: match mode {
            DensityMode::Generic => "generic (float fiber, exact digit stream)".into(),
            DensityMode::Certified { .. } => "certified enclosures".into(),
        },
        counts,
        visited_cells: visited,
        coverage: visited as f64 / (grid * grid) as f64,
    })
}

/// Value of the continued fraction with the given digit window, evaluated
/// backward in f64.
pub fn value_f64_window(digits: &[u64]) -> f64 {
    let mut v = 0.0;
    for &a in digits.iter().rev() {
        v = 1.0 / (a as f64 + v);
    }
    v
}

/// Infimum over the cylinder `rho in (1/(k+1), 1/k)` of |slope| for a fiber
/// branch. Branch indices: 0 reflect, 1 stretch, 2 wrap.
pub fn branch_slope_inf(branch: usize, k: u64) -> f64 {
    match branch {
        0 => 1.0,
        // |slope| = 1/(rho G(rho)) = 1/(1 - k rho) > k + 1 on the cylinder
        1 => (k + 1) as f64,
        // |slope| = 1/rho > k on the cylinder
        2 => k as f64,
        _ => unreachable!(),
    }
}

/// Whether branch `b2` of a fiber map can follow branch `b1` (i.e. the image
/// of b1 meets the domain of b2): reflect maps into [0,1], stretch into
/// [-1,0], wrap into [0,1].
pub fn branch_pair_admissible(b1: usize, b2: usize) -> bool {
    let image_nonneg = b1 == 0 || b1 == 2;
    if image_nonneg {
        b2 == 1 || b2 == 2
    } else {
        b2 == 0
    }
}
