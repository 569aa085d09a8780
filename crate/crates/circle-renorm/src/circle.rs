//! Circle homeomorphisms as lifts: rigid rotations, Arnold-type unicritical
//! maps, the two-parameter bicritical bump family, and squared-map
//! compositions; rotation numbers with certified brackets and monotone
//! parameter tuning.

use crate::cf::{cf_from_real, CfPrefix, RotationNumber};
use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::{PI, TAU};
use std::fmt;

/// Iteration budget for rotation-number estimates.
pub const DEFAULT_ROTATION_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CriticalPoint {
    /// Position of the critical point in [0,1).
    pub position: f64,
    /// Local power-law exponent where known (cubic for the families here).
    pub exponent: f64,
}

#[derive(Clone)]
enum LiftKind {
    Rotation { theta: f64, exact: Option<RotationNumber> },
    Arnold { theta: f64, coupling: f64 },
    Bump(BumpFamily),
    Square(Box<Lift>),
}

/// A circle homeomorphism given by its lift F (strictly increasing,
/// F(x+1) = F(x)+1).
#[derive(Clone)]
pub struct Lift {
    kind: LiftKind,
    critical: Vec<CriticalPoint>,
}

impl fmt::Debug for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lift({})", self.describe())
    }
}

/// x in (0,1) required; the invariant measure is Lebesgue.
pub fn make_rotation(theta: f64) -> Result<Lift> {
    if !(0.0 < theta && theta < 1.0) {
        return Err(Error::BadMap(format!("rotation angle {theta} not in (0,1)")));
    }
    Ok(Lift { kind: LiftKind::Rotation { theta, exact: None }, critical: Vec::new() })
}

/// Rotation whose angle is carried exactly as a digit stream; trail and
/// partition code can then certify arbitrarily deep levels.
pub fn rotation_from_cf(rho: RotationNumber, depth: usize) -> Result<Lift> {
    let theta = rho.value(depth)?.mid_f64();
    Ok(Lift { kind: LiftKind::Rotation { theta, exact: Some(rho) }, critical: Vec::new() })
}

/// Arnold-type lift x + theta - (K/2pi) sin(2pi x); K = 1 is the unicritical
/// case with a cubic critical point at 0, K > 1 is rejected.
pub fn make_arnold(theta: f64, coupling: f64) -> Result<Lift> {
    if !(0.0 < theta && theta < 1.0) {
        return Err(Error::BadMap(format!("arnold angle {theta} not in (0,1)")));
    }
    if !(0.0..=1.0).contains(&coupling) {
        return Err(Error::BadMap(format!(
            "arnold coupling {coupling} outside [0,1] (non-invertible)"
        )));
    }
    let critical = if coupling >= 1.0 {
        vec![CriticalPoint { position: 0.0, exponent: 3.0 }]
    } else {
        Vec::new()
    };
    Ok(Lift { kind: LiftKind::Arnold { theta, coupling }, critical })
}

/// Specification of the bicritical bump family
/// f_{t,s}(x) = x + rho0 + s + phi(x) + phi(x - t).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BumpFamilySpec {
    pub rho0: f64,
    /// Bump support radius bound: supp(phi_0) inside [-a/2, a/2].
    pub a: f64,
    /// Bump height ||phi_0||_inf.
    pub delta: f64,
    /// Second critical point, in [a, 1-a].
    pub t: f64,
    /// Vertical parameter, |s| <= epsilon = 2.5 delta.
    pub s: f64,
}

#[derive(Clone, Debug)]
struct BumpFamily {
    spec: BumpFamilySpec,
    /// Actual support radius of phi_0, set so that the slope at 0 is exactly
    /// -1 while the sup norm is delta.
    radius: f64,
}

// Normalized odd profile s on [-1,1], assembled from two standard smooth
// bumps: its derivative is a narrow unit bump at 0 (width W1, peak exactly 1)
// minus two wide shallow bumps at +-M (width W2, height W1/(2 W2)). The
// heights balance the integrals exactly, so s vanishes identically outside
// [-(M+W2), M+W2] and |s'| attains 1 only at 0.
const PROFILE_W1: f64 = 0.45;
const PROFILE_M: f64 = 0.62;
const PROFILE_W2: f64 = 0.36;
const PROFILE_H: f64 = PROFILE_W1 / (2.0 * PROFILE_W2);
const PROFILE_SUPPORT: f64 = PROFILE_M + PROFILE_W2;

/// The standard bump exp(1 - 1/(1-v^2)) on (-1,1): smooth, peak exactly 1.
fn unit_bump(v: f64) -> f64 {
    if v.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - v * v)).exp()
    }
}

fn profile_deriv(u: f64) -> f64 {
    unit_bump(u / PROFILE_W1)
        - PROFILE_H
            * (unit_bump((u - PROFILE_M) / PROFILE_W2) + unit_bump((u + PROFILE_M) / PROFILE_W2))
}

const PROFILE_CELLS: usize = 4096;

/// Cumulative integral of `profile_deriv` on [0,1], Simpson per cell.
fn profile_table() -> &'static Vec<f64> {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = PROFILE_CELLS;
        let h = 1.0 / n as f64;
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(n + 1);
        out.push(0.0);
        for i in 0..n {
            let a = i as f64 * h;
            acc += h / 6.0
                * (profile_deriv(a) + 4.0 * profile_deriv(a + 0.5 * h) + profile_deriv(a + h));
            out.push(acc);
        }
        out
    })
}

/// s(u): odd, compactly supported inside (-1,1), s'(0) = 1, |s'| < 1 away
/// from 0, cubic top (s'''(0) < 0). Evaluated by cubic Hermite interpolation
/// of the cumulative table; the derivative values are exact.
fn profile(u: f64) -> f64 {
    let sign = if u < 0.0 { -1.0 } else { 1.0 };
    let u = u.abs();
    if u >= PROFILE_SUPPORT {
        return 0.0;
    }
    let table = profile_table();
    let x = u * PROFILE_CELLS as f64;
    let i = (x as usize).min(PROFILE_CELLS - 1);
    let t = x - i as f64;
    let h = 1.0 / PROFILE_CELLS as f64;
    let (y0, y1) = (table[i], table[i + 1]);
    let (d0, d1) = (profile_deriv(i as f64 * h), profile_deriv((i + 1) as f64 * h));
    let t2 = t * t;
    let t3 = t2 * t;
    let val = (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * h * d0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * d1;
    sign * val
}

/// Peak of the profile: attained where s' crosses zero, between the up bump
/// and the down bumps; equals (W1/2) Integral(unit_bump).
fn profile_peak() -> f64 {
    let table = profile_table();
    table.iter().cloned().fold(0.0f64, f64::max)
}

impl BumpFamily {
    fn phi0(&self, x: f64) -> f64 {
        -self.radius * profile(x / self.radius)
    }

    fn phi0_deriv(&self, x: f64) -> f64 {
        -profile_deriv(x / self.radius)
    }

    /// Z-periodic extension, evaluated at the representative nearest 0.
    fn phi(&self, x: f64) -> f64 {
        self.phi0(x - x.round())
    }

    fn phi_deriv(&self, x: f64) -> f64 {
        self.phi0_deriv(x - x.round())
    }

    fn eval(&self, x: f64) -> f64 {
        x + self.spec.rho0 + self.spec.s + self.phi(x) + self.phi(x - self.spec.t)
    }

    fn deriv(&self, x: f64) -> f64 {
        1.0 + self.phi_deriv(x) + self.phi_deriv(x - self.spec.t)
    }
}

/// Build the bicritical bump lift, verifying the profile constraints
/// numerically: support in [-a/2, a/2], sup norm delta, slope -1 exactly at 0
/// and strictly smaller in modulus elsewhere, non-flat (cubic) critical
/// points at 0 and t.
pub fn make_bump_family(spec: BumpFamilySpec) -> Result<Lift> {
    if !(0.0 < spec.rho0 && spec.rho0 < 1.0) {
        return Err(Error::BadMap("bump family needs rho0 in (0,1)".into()));
    }
    if spec.a <= 0.0 || spec.delta <= 0.0 {
        return Err(Error::BadMap("bump family needs a, delta > 0".into()));
    }
    if !(spec.a <= spec.t && spec.t <= 1.0 - spec.a) {
        return Err(Error::BadMap(format!(
            "bump family needs t in [a, 1-a], got t = {}",
            spec.t
        )));
    }
    let eps = 2.5 * spec.delta;
    if spec.s.abs() > eps {
        return Err(Error::BadMap(format!(
            "bump family needs |s| <= 2.5 delta = {eps}, got s = {}",
            spec.s
        )));
    }
    let peak = profile_peak();
    let radius = spec.delta / peak;
    if radius * PROFILE_SUPPORT > spec.a / 2.0 {
        return Err(Error::BadMap(format!(
            "delta = {} too large for support radius a/2 = {} (needs delta <= {:.6})",
            spec.delta,
            spec.a / 2.0,
            peak * spec.a / (2.0 * PROFILE_SUPPORT)
        )));
    }
    let fam = BumpFamily { spec, radius };
    // slope -1 at the critical points, strictly inside (-1,1) elsewhere
    if (fam.phi0_deriv(0.0) + 1.0).abs() > 1e-12 {
        return Err(Error::BadMap("bump profile slope at 0 is not -1".into()));
    }
    for i in 1..=400 {
        let x = radius * i as f64 / 401.0;
        for sgn in [-1.0, 1.0] {
            let d = fam.phi0_deriv(sgn * x);
            if d.abs() >= 1.0 {
                return Err(Error::BadMap("bump profile slope reaches 1 away from 0".into()));
            }
        }
    }
    // sup norm delta (within sampling tolerance)
    let sup = (0..=400)
        .map(|i| fam.phi0(radius * (i as f64 / 400.0)).abs())
        .fold(0.0f64, f64::max);
    if (sup - spec.delta).abs() > 1e-6 * spec.delta.max(1e-12) {
        return Err(Error::BadMap(format!(
            "bump sup norm {sup} does not match delta {}",
            spec.delta
        )));
    }
    // non-flat criticality: F'(x) ~ c x^2 with c /= 0 near each critical point
    let h = radius * 1e-3;
    let c2 = fam.deriv(h) / (h * h);
    if !(c2.is_finite() && c2.abs() > 1e-6) {
        return Err(Error::BadMap("bump critical point is flat".into()));
    }
    let critical = vec![
        CriticalPoint { position: 0.0, exponent: 3.0 },
        CriticalPoint { position: spec.t, exponent: 3.0 },
    ];
    Ok(Lift { kind: LiftKind::Bump(fam), critical })
}

/// g = f o f for a unicritical f; the critical points of g are c and
/// f^{-1}(c), listed in the order (f^{-1}(c), c) so that the signature's
/// counterclockwise arc from the first to the second has mu-measure rho(f).
pub fn square_map(f: &Lift) -> Result<Lift> {
    if f.critical.len() != 1 {
        return Err(Error::BadMap(format!(
            "square_map needs a unicritical map, got {} critical points",
            f.critical.len()
        )));
    }
    let c = f.critical[0].position;
    let pre = f.inverse_circle(c)?;
    let critical = vec![
        CriticalPoint { position: pre, exponent: f.critical[0].exponent },
        CriticalPoint { position: c, exponent: f.critical[0].exponent },
    ];
    Ok(Lift { kind: LiftKind::Square(Box::new(f.clone())), critical })
}

impl Lift {
    /// The lift F evaluated at x.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            LiftKind::Rotation { theta, .. } => x + theta,
            LiftKind::Arnold { theta, coupling } => {
                x + theta - coupling / TAU * (TAU * x).sin()
            }
            LiftKind::Bump(b) => b.eval(x),
            LiftKind::Square(f) => f.eval(f.eval(x)),
        }
    }

    /// F'(x), analytic.
    pub fn deriv(&self, x: f64) -> f64 {
        match &self.kind {
            LiftKind::Rotation { .. } => 1.0,
            LiftKind::Arnold { coupling, .. } => 1.0 - coupling * (TAU * x).cos(),
            LiftKind::Bump(b) => b.deriv(x),
            LiftKind::Square(f) => f.deriv(f.eval(x)) * f.deriv(x),
        }
    }

    pub fn critical_points(&self) -> &[CriticalPoint] {
        &self.critical
    }

    /// Exact digit stream, when the map is a rotation built from one.
    pub fn exact_rotation(&self) -> Option<&RotationNumber> {
        match &self.kind {
            LiftKind::Rotation { exact, .. } => exact.as_ref(),
            _ => None,
        }
    }

    /// Rotations have Lebesgue invariant measure; arcs are then measured
    /// exactly.
    pub fn has_exact_measure(&self) -> bool {
        matches!(self.kind, LiftKind::Rotation { .. })
    }

    pub fn rotation_angle(&self) -> Option<f64> {
        match &self.kind {
            LiftKind::Rotation { theta, .. } => Some(*theta),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            LiftKind::Rotation { theta, exact } => match exact {
                Some(rho) => format!("rot:{theta:.12} (exact {rho})"),
                None => format!("rot:{theta}"),
            },
            LiftKind::Arnold { theta, coupling } => format!("arnold:{theta},{coupling}"),
            LiftKind::Bump(b) => format!(
                "bump:{},{},{},{},{}",
                b.spec.rho0, b.spec.a, b.spec.delta, b.spec.t, b.spec.s
            ),
            LiftKind::Square(f) => format!("square:{}", f.describe()),
        }
    }

    /// Circle map: F(x) mod 1.
    pub fn step_circle(&self, x: f64) -> f64 {
        let y = self.eval(x);
        y - y.floor()
    }

    /// Forward circle orbit x, f(x), ..., f^{n-1}(x).
    pub fn orbit(&self, x: f64, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        let mut cur = x - x.floor();
        for _ in 0..n {
            out.push(cur);
            cur = self.step_circle(cur);
        }
        out
    }

    /// Circle inverse: the unique y in [0,1) with F(y) mod 1 = x mod 1,
    /// found by bisection of the monotone lift.
    pub fn inverse_circle(&self, x: f64) -> Result<f64> {
        let x = x - x.floor();
        // F maps [0,1) onto [F(0), F(0)+1); pick the representative of x there
        let f0 = self.eval(0.0);
        let mut target = x;
        while target < f0 {
            target += 1.0;
        }
        while target >= f0 + 1.0 {
            target -= 1.0;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Certified rotation-number estimate: the displacement of any single orbit
/// bounds rho via floor(F^m(x)-x)/m <= rho <= ceil(F^m(x)-x)/m, and the
/// bounds collapse at closest-return times.
#[derive(Clone, Debug, Serialize)]
pub struct RotationEstimate {
    pub value: f64,
    pub err: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations_used: usize,
    /// Times at which the certified bracket improved (the closest returns).
    pub closest_returns: Vec<usize>,
}

impl RotationEstimate {
    fn exact(theta: f64) -> Self {
        RotationEstimate {
            value: theta,
            err: 0.0,
            lower: theta,
            upper: theta,
            iterations_used: 0,
            closest_returns: Vec::new(),
        }
    }
}

/// How a map's rotation number compares to a target value.
#[derive(Clone, Debug)]
pub enum TargetSide {
    /// Certified rho < target.
    Below(RotationEstimate),
    /// Certified rho > target.
    Above(RotationEstimate),
    /// Certified |rho - target| < tol.
    Within(RotationEstimate),
}

/// Estimate rho(f) to within `tol`, certifying via the closest-return
/// bracketing. Errors out when the budget is exhausted first.
pub fn rotation_number(f: &Lift, tol: f64, budget: usize) -> Result<RotationEstimate> {
    match rotation_bracket(f, tol, budget, None)? {
        TargetSide::Within(est) => Ok(est),
        _ => unreachable!("no target supplied"),
    }
}

/// Run the displacement loop until either the bracket fits inside
/// (target-tol, target+tol), or it certifies a side of the target. With no
/// target, runs until the bracket width drops below tol.
pub fn rotation_number_vs_target(
    f: &Lift,
    target: f64,
    tol: f64,
    budget: usize,
) -> Result<TargetSide> {
    rotation_bracket(f, tol, budget, Some(target))
}

fn rotation_bracket(
    f: &Lift,
    tol: f64,
    budget: usize,
    target: Option<f64>,
) -> Result<TargetSide> {
    if tol <= 0.0 {
        return Err(Error::OutOfRange("tol must be positive".into()));
    }
    if let Some(theta) = f.rotation_angle() {
        let est = RotationEstimate::exact(theta);
        return Ok(match target {
            Some(t) if theta < t - tol => TargetSide::Below(est),
            Some(t) if theta > t + tol => TargetSide::Above(est),
            _ => TargetSide::Within(est),
        });
    }
    let mut y = 0.0f64; // circle position of f^m(0)
    let mut disp = 0.0f64; // accumulated displacement, Kahan-compensated
    let mut comp = 0.0f64;
    let mut lower = 0.0f64;
    let mut upper = 1.0f64;
    let mut returns = Vec::new();
    let finish = |lower: f64, upper: f64, m: usize, returns: Vec<usize>| RotationEstimate {
        value: 0.5 * (lower + upper),
        err: 0.5 * (upper - lower) + 1e-13,
        lower,
        upper,
        iterations_used: m,
        closest_returns: returns,
    };
    for m in 1..=budget {
        let fy = f.eval(y);
        let step = fy - y;
        let term = step - comp;
        let t = disp + term;
        comp = (t - disp) - term;
        disp = t;
        y = fy - fy.floor();
        let lo_cand = disp.floor() / m as f64;
        let hi_cand = disp.ceil() / m as f64;
        let mut improved = false;
        if lo_cand > lower {
            lower = lo_cand;
            improved = true;
        }
        if hi_cand < upper {
            upper = hi_cand;
            improved = true;
        }
        if improved {
            returns.push(m);
        }
        if let Some(t) = target {
            if upper < t {
                return Ok(TargetSide::Below(finish(lower, upper, m, returns)));
            }
            if lower > t {
                return Ok(TargetSide::Above(finish(lower, upper, m, returns)));
            }
            if upper - t < tol && t - lower < tol {
                return Ok(TargetSide::Within(finish(lower, upper, m, returns)));
            }
        } else if upper - lower < tol {
            return Ok(TargetSide::Within(finish(lower, upper, m, returns)));
        }
    }
    Err(Error::BudgetExhausted(format!(
        "rotation number bracket [{lower}, {upper}] still undecided after {budget} iterations"
    )))
}

/// Digits of the measured rotation number, certified against its bracket.
/// Tightens the estimate adaptively until `want_digits` digits certify (or
/// the budget gives out, in which case the best certified prefix is
/// returned; callers check the length).
pub fn measured_rotation_digits(
    f: &Lift,
    budget: usize,
    want_digits: usize,
) -> Result<(RotationEstimate, CfPrefix)> {
    if let Some(rho) = f.exact_rotation() {
        let digits = rho.digits_up_to(want_digits);
        let est = rotation_number(f, 1.0, budget)?;
        return Ok((est, CfPrefix { digits, complete: false, hit_breakpoint: false }));
    }
    let mut best: Option<(RotationEstimate, CfPrefix)> = None;
    for tol in [1e-6, 1e-9, 1e-11, 5e-13] {
        match rotation_number(f, tol, budget) {
            Ok(est) => {
                let prefix = cf_from_real(est.value, est.err.max(5e-16), want_digits + 8)?;
                let enough = prefix.digits.len() >= want_digits;
                best = Some((est, prefix));
                if enough {
                    break;
                }
            }
            Err(_) => break,
        }
    }
    best.ok_or_else(|| {
        Error::BudgetExhausted("rotation number did not certify within budget".into())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TuneResult {
    pub parameter: f64,
    pub achieved: RotationEstimate,
    pub evaluations: usize,
}

/// Bisection on a one-parameter family with nondecreasing rotation number:
/// finds `s` with |rho(family(s)) - target| < tol certified. Each probe runs
/// only until it can tell which side of the target it is on, so mode-locked
/// plateaus away from the target stay cheap.
pub fn tune_parameter(
    family: &dyn Fn(f64) -> Result<Lift>,
    lo: f64,
    hi: f64,
    target: f64,
    tol: f64,
    budget: usize,
) -> Result<TuneResult> {
    if !(lo < hi) {
        return Err(Error::OutOfRange("need lo < hi".into()));
    }
    let mut a = lo;
    let mut b = hi;
    let mut evaluations = 0;
    match rotation_number_vs_target(&family(a)?, target, tol, budget)? {
        TargetSide::Above(est) => {
            return Err(Error::BadMap(format!(
                "target {target} below the family range (rho({a}) >= {})",
                est.lower
            )))
        }
        TargetSide::Within(est) => {
            return Ok(TuneResult { parameter: a, achieved: est, evaluations: 1 })
        }
        TargetSide::Below(_) => {}
    }
    match rotation_number_vs_target(&family(b)?, target, tol, budget)? {
        TargetSide::Below(est) => {
            return Err(Error::BadMap(format!(
                "target {target} above the family range (rho({b}) <= {})",
                est.upper
            )))
        }
        TargetSide::Within(est) => {
            return Ok(TuneResult { parameter: b, achieved: est, evaluations: 2 })
        }
        TargetSide::Above(_) => {}
    }
    evaluations += 2;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        evaluations += 1;
        match rotation_number_vs_target(&family(mid)?, target, tol, budget)? {
            TargetSide::Within(est) => {
                return Ok(TuneResult { parameter: mid, achieved: est, evaluations })
            }
            TargetSide::Below(_) => a = mid,
            TargetSide::Above(_) => b = mid,
        }
        if b - a < 1e-15 {
            break;
        }
    }
    Err(Error::BudgetExhausted("parameter bisection did not converge".into()))
}

/// Finite-difference Schwarzian derivative
/// Sf = f'''/f' - (3/2)(f''/f')^2 at x, with stencil width h.
pub fn schwarzian(f: &Lift, x: f64, h: f64) -> Result<f64> {
    if h <= 0.0 {
        return Err(Error::OutOfRange("h must be positive".into()));
    }
    if matches!(f.kind, LiftKind::Rotation { .. }) {
        return Ok(0.0); // affine lift
    }
    for c in f.critical_points() {
        let d = (x - c.position).rem_euclid(1.0);
        let dist = d.min(1.0 - d);
        if dist <= 3.0 * h {
            return Err(Error::OutOfRange(format!(
                "x = {x} within 3h of the critical point at {}",
                c.position
            )));
        }
    }
    let f2h = f.eval(x + 2.0 * h);
    let f1h = f.eval(x + h);
    let f0 = f.eval(x);
    let fm1 = f.eval(x - h);
    let fm2 = f.eval(x - 2.0 * h);
    let d1 = (f1h - fm1) / (2.0 * h);
    let d2 = (f1h - 2.0 * f0 + fm1) / (h * h);
    let d3 = (f2h - 2.0 * f1h + 2.0 * fm1 - fm2) / (2.0 * h * h * h);
    if d1.abs() < 1e-12 {
        return Err(Error::OutOfRange("derivative too small for Schwarzian".into()));
    }
    Ok(d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1))
}

/// Parse the map-spec grammar: `rot:θ`, `arnold:θ,K`, `bump:ρ0,a,δ,t,s`,
/// `square:<spec>`, `cf:<cf-spec>` (exact rotation).
pub fn parse_map(spec: &str) -> Result<Lift> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("square:") {
        let inner = parse_map(rest)?;
        return square_map(&inner);
    }
    if let Some(rest) = s.strip_prefix("rot:") {
        let theta: f64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::BadMap(format!("bad rotation angle in {spec:?}")))?;
        return make_rotation(theta);
    }
    if let Some(rest) = s.strip_prefix("cf:") {
        let rho = crate::cf::parse_cf(rest)?;
        return rotation_from_cf(rho, crate::cf::DEFAULT_DEPTH);
    }
    if let Some(rest) = s.strip_prefix("arnold:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::BadMap(format!("arnold spec needs theta,K: {spec:?}")));
        }
        let theta: f64 = parts[0].trim().parse().map_err(|_| Error::BadMap(spec.into()))?;
        let k: f64 = parts[1].trim().parse().map_err(|_| Error::BadMap(spec.into()))?;
        return make_arnold(theta, k);
    }
    if let Some(rest) = s.strip_prefix("bump:") {
        let parts: Vec<f64> = rest
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::BadMap(format!("bad bump spec {spec:?}")))?;
        if parts.len() != 5 {
            return Err(Error::BadMap(format!("bump spec needs rho0,a,delta,t,s: {spec:?}")));
        }
        return make_bump_family(BumpFamilySpec {
            rho0: parts[0],
            a: parts[1],
            delta: parts[2],
            t: parts[3],
            s: parts[4],
        });
    }
    Err(Error::BadMap(format!("unknown map spec {spec:?}")))
}
