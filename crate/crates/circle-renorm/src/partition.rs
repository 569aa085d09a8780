//! Dynamical partitions of the circle, real-bounds ratio tables, arc-measure
//! estimation (exact for rotations, Denjoy-Koksma-certified otherwise),
//! signatures of bicritical maps, and pointwise conjugacy evaluation by
//! combinatorial atom matching.
//!
//! Interval convention: atoms are counterclockwise arcs, open on the left and
//! closed on the right, following the half-open convention of the partition
//! construction; endpoint membership is below numeric tolerance anyway and
//! the convention is recorded in reports.

use crate::cf::{big_convergents, mu_in, RotationNumber};
use crate::circle::{measured_rotation_digits, rotation_number, Lift, DEFAULT_ROTATION_BUDGET};
use crate::enclosure::Approx;
use crate::error::{Error, Result};
use num_traits::ToPrimitive;
use serde::Serialize;

/// Counterclockwise circle arc (lo, hi], both in [0,1).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CircleArc {
    pub lo: f64,
    pub hi: f64,
}

impl CircleArc {
    pub fn new(lo: f64, hi: f64) -> Self {
        CircleArc { lo: lo.rem_euclid(1.0), hi: hi.rem_euclid(1.0) }
    }

    /// Counterclockwise length, in (0, 1]; a degenerate arc has length 1
    /// treated as the full circle when lo == hi.
    pub fn len(&self) -> f64 {
        let d = (self.hi - self.lo).rem_euclid(1.0);
        if d == 0.0 {
            1.0
        } else {
            d
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let d = (x - self.lo).rem_euclid(1.0);
        d > 0.0 && d <= self.len()
    }
}

/// Signed counterclockwise offset from `base` to `x`, in (-1/2, 1/2].
pub fn signed_offset(x: f64, base: f64) -> f64 {
    let d = (x - base).rem_euclid(1.0);
    if d > 0.5 {
        d - 1.0
    } else {
        d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AtomKind {
    Long,
    Short,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PartitionAtom {
    pub kind: AtomKind,
    /// Iterate index: the atom is f^i(I_n) or f^i(I_{n+1}).
    pub index: usize,
    pub arc: CircleArc,
}

/// The n-th dynamical partition associated to a base point: q_{n+1} long
/// atoms f^i(I_n) and q_n short atoms f^j(I_{n+1}).
#[derive(Clone, Debug, Serialize)]
pub struct DynamicalPartition {
    pub level: usize,
    pub base: f64,
    pub qn: usize,
    pub qn1: usize,
    pub atoms: Vec<PartitionAtom>,
    #[serde(skip)]
    pub orbit: Vec<f64>,
    pub endpoint_convention: &'static str,
}

/// Return times q_0..q_{upto} as usize, failing when they exceed the budget.
pub fn return_times(digits: &[u64], upto: usize, budget: usize) -> Result<Vec<usize>> {
    if digits.len() < upto {
        return Err(Error::DigitsExhausted(digits.len()));
    }
    let table = big_convergents(&digits[..upto]);
    let mut out = Vec::with_capacity(upto + 1);
    for (i, (_, q)) in table.iter().enumerate() {
        let q = q
            .to_usize()
            .filter(|&q| q <= budget)
            .ok_or_else(|| Error::BudgetExhausted(format!("q_{i} exceeds budget {budget}")))?;
        out.push(q);
    }
    Ok(out)
}

/// I_n as the arc between base and f^{q_n}(base): on the counterclockwise
/// side for even n, the clockwise side for odd n.
fn fundamental_arc(orbit: &[f64], base: f64, qn: usize, parity_even: bool) -> CircleArc {
    let p = orbit[qn];
    if parity_even {
        CircleArc::new(base, p)
    } else {
        CircleArc::new(p, base)
    }
}

/// Build the partition from the forward orbit of `x`; needs the digit
/// sequence of the rotation number for the return times.
pub fn dynamical_partition_with(
    f: &Lift,
    x: f64,
    n: usize,
    digits: &[u64],
    budget: usize,
) -> Result<DynamicalPartition> {
    let q = return_times(digits, n + 2, budget)?;
    let (qn, qn1) = (q[n], q[n + 1]);
    let orbit = f.orbit(x, qn + qn1 + 1);
    let base = orbit[0];
    let mut atoms = Vec::with_capacity(qn + qn1);
    let even_n = n % 2 == 0;
    for i in 0..qn1 {
        let lo_pt = orbit[i];
        let hi_pt = orbit[i + qn];
        let arc = if even_n {
            CircleArc::new(lo_pt, hi_pt)
        } else {
            CircleArc::new(hi_pt, lo_pt)
        };
        atoms.push(PartitionAtom { kind: AtomKind::Long, index: i, arc });
    }
    for j in 0..qn {
        let lo_pt = orbit[j];
        let hi_pt = orbit[j + qn1];
        // I_{n+1} has the opposite parity
        let arc = if even_n {
            CircleArc::new(hi_pt, lo_pt)
        } else {
            CircleArc::new(lo_pt, hi_pt)
        };
        atoms.push(PartitionAtom { kind: AtomKind::Short, index: j, arc });
    }
    Ok(DynamicalPartition {
        level: n,
        base,
        qn,
        qn1,
        atoms,
        orbit,
        endpoint_convention: "(lo, hi] counterclockwise",
    })
}

/// Partition with the digits measured from the map itself.
pub fn dynamical_partition(f: &Lift, x: f64, n: usize) -> Result<DynamicalPartition> {
    let (_, prefix) = measured_rotation_digits(f, DEFAULT_ROTATION_BUDGET, n + 4)?;
    if prefix.digits.len() < n + 2 {
        return Err(Error::PrecisionExhausted(format!(
            "only {} rotation-number digits certified, need {}",
            prefix.digits.len(),
            n + 2
        )));
    }
    dynamical_partition_with(f, x, n, &prefix.digits, 50_000_000)
}

impl DynamicalPartition {
    /// Validate the cover: atoms sorted by left endpoint must abut cyclically.
    pub fn validate_cover(&self, tol: f64) -> Result<()> {
        if self.atoms.len() != self.qn + self.qn1 {
            return Err(Error::OutOfRange("atom count mismatch".into()));
        }
        let mut order: Vec<&PartitionAtom> = self.atoms.iter().collect();
        order.sort_by(|a, b| a.arc.lo.partial_cmp(&b.arc.lo).expect("finite"));
        let mut total = 0.0;
        for (k, atom) in order.iter().enumerate() {
            let next = order[(k + 1) % order.len()];
            let gap = (next.arc.lo - atom.arc.hi).rem_euclid(1.0);
            if gap.min(1.0 - gap) > tol {
                return Err(Error::OutOfRange(format!(
                    "gap {gap} between atoms at {}",
                    atom.arc.hi
                )));
            }
            total += atom.arc.len();
            let _ = k;
        }
        if (total - 1.0).abs() > tol * self.atoms.len() as f64 {
            return Err(Error::OutOfRange(format!("atom lengths sum to {total}")));
        }
        Ok(())
    }

    /// Atom containing the point (its address in the partition).
    pub fn locate(&self, y: f64) -> Result<PartitionAtom> {
        for atom in &self.atoms {
            if atom.arc.contains(y) {
                return Ok(*atom);
            }
        }
        Err(Error::OutOfRange(format!("point {y} not located in any atom")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RealBoundsRow {
    pub level: usize,
    pub max_adjacent_ratio: f64,
    pub min_atom_length: f64,
    pub max_atom_length: f64,
}

/// Max over adjacent atom pairs of |I|/|J| per level: the empirical
/// real-bounds constant.
pub fn real_bounds_report(
    f: &Lift,
    x: f64,
    levels: std::ops::RangeInclusive<usize>,
    digits: &[u64],
    budget: usize,
) -> Result<Vec<RealBoundsRow>> {
    let mut rows = Vec::new();
    for n in levels {
        let part = dynamical_partition_with(f, x, n, digits, budget)?;
        let mut order: Vec<&PartitionAtom> = part.atoms.iter().collect();
        order.sort_by(|a, b| a.arc.lo.partial_cmp(&b.arc.lo).expect("finite"));
        let mut max_ratio = 1.0f64;
        let mut min_len = f64::INFINITY;
        let mut max_len = 0.0f64;
        for (k, atom) in order.iter().enumerate() {
            let next = order[(k + 1) % order.len()];
            let (a, b) = (atom.arc.len(), next.arc.len());
            max_ratio = max_ratio.max(a / b).max(b / a);
            min_len = min_len.min(a);
            max_len = max_len.max(a);
        }
        rows.push(RealBoundsRow {
            level: n,
            max_adjacent_ratio: max_ratio,
            min_atom_length: min_len,
            max_atom_length: max_len,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcMeasureEstimate {
    pub value: f64,
    /// Denjoy-Koksma bound 2/q_n (0 for rotations, where mu is Lebesgue).
    pub error: f64,
    pub qn_used: usize,
}

/// mu-measure of an arc. Exact (Lebesgue) for rotations; otherwise the
/// Birkhoff average (1/q_n) sum of arc hits over q_n iterates, whose error is
/// certified by the Denjoy-Koksma inequality: var(indicator)/q_n = 2/q_n.
pub fn arc_measure(f: &Lift, arc: CircleArc, n: usize, digits: &[u64]) -> Result<ArcMeasureEstimate> {
    if f.has_exact_measure() {
        return Ok(ArcMeasureEstimate { value: arc.len(), error: 0.0, qn_used: 0 });
    }
    let q = return_times(digits, n, 50_000_000)?;
    let qn = *q.last().expect("nonempty");
    let orbit = f.orbit(0.0, qn);
    Ok(arc_measure_with_orbit(&orbit, arc, qn))
}

/// Birkhoff estimate reusing a precomputed orbit (any base point works).
pub fn arc_measure_with_orbit(orbit: &[f64], arc: CircleArc, qn: usize) -> ArcMeasureEstimate {
    let hits = orbit.iter().take(qn).filter(|&&p| arc.contains(p)).count();
    ArcMeasureEstimate {
        value: hits as f64 / qn as f64,
        error: 2.0 / qn as f64,
        qn_used: qn,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureReport {
    pub rho: Approx,
    pub alpha: Approx,
    /// Arc measured: counterclockwise from the first listed critical point to
    /// the second.
    pub convention: &'static str,
    pub qn_used: usize,
}

/// Signature (rho, alpha) of a bicritical map: its rotation number and the
/// mu-measure of the counterclockwise arc from the first to the second
/// critical point.
pub fn signature(g: &Lift, tol: f64, budget: usize) -> Result<SignatureReport> {
    let crit = g.critical_points();
    if crit.len() != 2 {
        return Err(Error::BadMap(format!(
            "signature needs exactly two critical points, got {}",
            crit.len()
        )));
    }
    let (est, prefix) = measured_rotation_digits(g, budget, 14)?;
    if est.err > tol {
        return Err(Error::BudgetExhausted(format!(
            "rotation number error {} above tol {tol}",
            est.err
        )));
    }
    let arc = CircleArc::new(crit[0].position, crit[1].position);
    // deepest return time within a sane orbit budget
    let mut level = 1;
    while level + 1 < prefix.digits.len() {
        match return_times(&prefix.digits, level + 1, 100_000) {
            Ok(_) => level += 1,
            Err(_) => break,
        }
    }
    let m = arc_measure(g, arc, level, &prefix.digits)?;
    Ok(SignatureReport {
        rho: Approx { value: est.value, err: est.err },
        alpha: Approx { value: m.value, err: m.error },
        convention: "alpha = mu(ccw arc from first to second critical point)",
        qn_used: m.qn_used,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyBracket {
    pub value: f64,
    /// Half-width of the bracketing atom (0 for exact orbit matches).
    pub err: f64,
    pub exact: bool,
    pub atom_lo: f64,
    pub atom_hi: f64,
}

/// Evaluate the conjugacy h (h o f = g o h, h(x) = z) at `y`, by matching the
/// combinatorial address of y in the f-partition of depth `depth` to the
/// corresponding atom of the g-partition. Orbit points of x map exactly to
/// orbit points of z.
pub fn conjugacy_point(
    f: &Lift,
    x: f64,
    g: &Lift,
    z: f64,
    y: f64,
    depth: usize,
    rho_match_tol: f64,
) -> Result<ConjugacyBracket> {
    let (ef, pf) = measured_rotation_digits(f, DEFAULT_ROTATION_BUDGET, depth + 4)?;
    let (eg, pg) = measured_rotation_digits(g, DEFAULT_ROTATION_BUDGET, depth + 4)?;
    if (ef.value - eg.value).abs() > rho_match_tol + ef.err + eg.err {
        return Err(Error::RotationMismatch(format!(
            "rho(f) = {} vs rho(g) = {}",
            ef.value, eg.value
        )));
    }
    let need = depth + 2;
    if pf.digits.len() < need || pg.digits.len() < need {
        return Err(Error::PrecisionExhausted(
            "not enough certified rotation digits for the requested depth".into(),
        ));
    }
    // combinatorics must agree for address matching; truncate to the shared
    // digit prefix
    let shared: Vec<u64> = pf
        .digits
        .iter()
        .zip(pg.digits.iter())
        .take_while(|(a, b)| a == b)
        .map(|(a, _)| *a)
        .collect();
    if shared.len() < need {
        return Err(Error::RotationMismatch(format!(
            "digit streams diverge at level {} < depth {}",
            shared.len(),
            depth
        )));
    }
    let part_f = dynamical_partition_with(f, x, depth, &shared, 50_000_000)?;
    // exact path: y on the forward orbit of x
    for (k, &p) in part_f.orbit.iter().enumerate() {
        let d = signed_offset(y, p).abs();
        if d < 1e-11 {
            let img = g.orbit(z, k + 1)[k];
            return Ok(ConjugacyBracket { value: img, err: 0.0, exact: true, atom_lo: img, atom_hi: img });
        }
    }
    let atom = part_f.locate(y)?;
    let part_g = dynamical_partition_with(g, z, depth, &shared, 50_000_000)?;
    let img = part_g
        .atoms
        .iter()
        .find(|a| a.kind == atom.kind && a.index == atom.index)
        .ok_or_else(|| Error::OutOfRange("matching atom missing".into()))?;
    let len = img.arc.len();
    let mid = (img.arc.lo + 0.5 * len).rem_euclid(1.0);
    Ok(ConjugacyBracket {
        value: mid,
        err: 0.5 * len,
        exact: false,
        atom_lo: img.arc.lo,
        atom_hi: img.arc.hi,
    })
}

/// Depth cap for trails on non-rotation maps: deepest level n whose estimated
/// atom measure mu(I_n) stays at least ten times the Denjoy-Koksma error of
/// the Birkhoff estimator.
pub fn dk_depth_cap(rho: &RotationNumber, digits_available: usize, qn_budget: usize) -> usize {
    let mut cap = 0;
    for n in 1..digits_available.saturating_sub(1) {
        let q = match rho.convergents(n + 1) {
            Ok(t) => t,
            Err(_) => break,
        };
        let qn1 = q.q(n + 1);
        if qn1 > qn_budget as u128 {
            break;
        }
        let mu = match mu_in(rho, n, 40) {
            Ok(m) => m.mid_f64(),
            Err(_) => break,
        };
        let dk = 2.0 / qn_budget as f64;
        if dk > mu / 10.0 {
            break;
        }
        cap = n;
    }
    cap
}

#[allow(unused_imports)]
pub use crate::circle::DEFAULT_ROTATION_BUDGET as ROTATION_BUDGET;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::parse_cf;
    use crate::circle::{make_arnold, make_rotation, rotation_from_cf, square_map, tune_parameter};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn golden() -> f64 {
        (5f64.sqrt() - 1.0) / 2.0
    }

    #[test]
    fn rotation_partition_structure() {
        let f = rotation_from_cf(parse_cf("golden").unwrap(), 60).unwrap();
        let digits = vec![1u64; 12];
        for n in 0..=6 {
            let part = dynamical_partition_with(&f, 0.0, n, &digits, 100_000).unwrap();
            part.validate_cover(1e-10).unwrap();
            // golden return times are Fibonacci numbers
            let fib = [1usize, 1, 2, 3, 5, 8, 13, 21];
            assert_eq!(part.qn, fib[n]);
            assert_eq!(part.qn1, fib[n + 1]);
        }
    }

    #[test]
    fn initial_partition_has_a0_long_atoms() {
        let f = rotation_from_cf(parse_cf("[3;(1,2)]").unwrap(), 60).unwrap();
        let digits = parse_cf("[3;(1,2)]").unwrap().try_digits(6).unwrap();
        let part = dynamical_partition_with(&f, 0.0, 0, &digits, 10_000).unwrap();
        assert_eq!(part.qn1, 3); // q_1 = a_0 long atoms
        assert_eq!(part.qn, 1); // one short atom
    }

    #[test]
    fn rotation_atoms_take_two_lengths() {
        // three-distance: at level n a rotation's partition atoms take
        // exactly the lengths beta_n and beta_{n+1}
        let f = rotation_from_cf(parse_cf("golden").unwrap(), 80).unwrap();
        let digits = vec![1u64; 12];
        let part = dynamical_partition_with(&f, 0.0, 3, &digits, 10_000).unwrap();
        let mut lens: Vec<f64> = part.atoms.iter().map(|a| a.arc.len()).collect();
        lens.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let distinct = lens
            .windows(2)
            .filter(|w| (w[1] - w[0]).abs() > 1e-9)
            .count()
            + 1;
        assert_eq!(distinct, 2, "lengths {lens:?}");
    }

    #[test]
    fn partitions_refine() {
        let f = make_arnold(0.606, 1.0).unwrap();
        let digits = {
            let (_, p) = measured_rotation_digits(&f, 2_000_000, 6).unwrap();
            p.digits
        };
        let coarse = dynamical_partition_with(&f, 0.0, 2, &digits, 100_000).unwrap();
        let fine = dynamical_partition_with(&f, 0.0, 3, &digits, 100_000).unwrap();
        coarse.validate_cover(1e-9).unwrap();
        fine.validate_cover(1e-9).unwrap();
        for atom in &fine.atoms {
            let mid = (atom.arc.lo + 0.5 * atom.arc.len()).rem_euclid(1.0);
            let parent = coarse.locate(mid).unwrap();
            // the fine atom must sit inside its parent up to endpoint tolerance
            let lo_in = parent.arc.contains(atom.arc.lo)
                || signed_offset(atom.arc.lo, parent.arc.lo).abs() < 1e-9;
            let hi_in = parent.arc.contains(atom.arc.hi)
                || signed_offset(atom.arc.hi, parent.arc.hi).abs() < 1e-9;
            assert!(lo_in && hi_in);
        }
    }

    #[test]
    fn arc_measure_exact_for_rotations() {
        let f = make_rotation(golden()).unwrap();
        let arc = CircleArc::new(0.1, 0.4);
        let m = arc_measure(&f, arc, 3, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(m.value, arc.len());
        assert_eq!(m.error, 0.0);
        let full = CircleArc::new(0.3, 0.3);
        assert_eq!(full.len(), 1.0);
    }

    #[test]
    fn denjoy_koksma_on_rotations() {
        // Birkhoff estimator against the exact length at return times
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let digits: Vec<u64> = (0..14).map(|_| rng.gen_range(1..=9)).collect();
            let rho = RotationNumber::from_digits(digits.clone()).unwrap();
            let theta = rho.value(60).unwrap().mid_f64();
            let q = return_times(&digits, 10, 10_000);
            let Ok(q) = q else { continue };
            let f = make_rotation(theta).unwrap();
            let arc = CircleArc::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            for n in 2..q.len() {
                let qn = q[n];
                let orbit = f.orbit(rng.gen_range(0.0..1.0), qn);
                let est = arc_measure_with_orbit(&orbit, arc, qn);
                assert!(
                    (est.value - arc.len()).abs() <= 2.0 / qn as f64 + 1e-12,
                    "DK violated at q_{n} = {qn}"
                );
            }
        }
    }

    #[test]
    fn real_bounds_rotation_bounded() {
        let f = rotation_from_cf(parse_cf("golden").unwrap(), 80).unwrap();
        let rows = real_bounds_report(&f, 0.0, 1..=8, &[1u64; 12], 100_000).unwrap();
        for row in &rows {
            // golden rotation: adjacent lengths are beta_n vs beta_{n+1},
            // ratio bounded by 1/golden^2 < 2.7
            assert!(row.max_adjacent_ratio < 2.7, "ratio {}", row.max_adjacent_ratio);
        }
    }

    #[test]
    fn signature_of_squared_arnold() {
        let target = 0.38; // rho(f) = alpha target
        let family = |theta: f64| make_arnold(theta, 1.0);
        let tuned = tune_parameter(&family, 0.3, 0.5, target, 1e-7, 2_000_000).unwrap();
        let f = family(tuned.parameter).unwrap();
        let g = square_map(&f).unwrap();
        let sig = signature(&g, 1e-6, 4_000_000).unwrap();
        let expected_rho = (2.0 * target).rem_euclid(1.0);
        assert!(
            (sig.rho.value - expected_rho).abs() < 1e-5,
            "rho {} vs {}",
            sig.rho.value,
            expected_rho
        );
        assert!(
            (sig.alpha.value - target).abs() < sig.alpha.err + 1e-5,
            "alpha {} +- {} vs {}",
            sig.alpha.value,
            sig.alpha.err,
            target
        );
    }

    #[test]
    fn conjugacy_identity_and_orbit_matching() {
        let f = make_arnold(0.606, 1.0).unwrap();
        // identity conjugacy: h(y) = y within the atom bracket
        let b = conjugacy_point(&f, 0.0, &f, 0.0, 0.37, 4, 1e-6).unwrap();
        assert!(signed_offset(0.37, b.value).abs() <= b.err + 1e-12);
        // orbit matching is exact
        let y = f.orbit(0.0, 4)[3];
        let b = conjugacy_point(&f, 0.0, &f, 0.0, y, 4, 1e-6).unwrap();
        assert!(b.exact);
        assert!(signed_offset(b.value, y).abs() < 1e-12);
    }

    #[test]
    fn conjugacy_between_equal_rotations_is_rotation() {
        let f = make_rotation(golden()).unwrap();
        let x = 0.0;
        let z = 0.25;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let y: f64 = rng.gen_range(0.0..1.0);
            let b = conjugacy_point(&f, x, &f, z, y, 6, 1e-9).unwrap();
            let expect = (y + z - x).rem_euclid(1.0);
            assert!(
                signed_offset(expect, b.value).abs() <= b.err + 1e-10,
                "h({y}) = {} +- {}, expected {expect}",
                b.value,
                b.err
            );
        }
    }

    #[test]
    fn conjugacy_equivariance() {
        let f = make_arnold(0.606, 1.0).unwrap();
        let g = make_arnold(0.606, 1.0).unwrap();
        let (x, z) = (0.0, 0.0);
        let y = 0.41;
        let hy = conjugacy_point(&f, x, &g, z, y, 5, 1e-9).unwrap();
        let hfy = conjugacy_point(&f, x, &g, z, f.step_circle(y), 5, 1e-9).unwrap();
        let ghy = g.step_circle(hy.value);
        assert!(
            signed_offset(ghy, hfy.value).abs() <= hy.err * 3.0 + hfy.err + 1e-9,
            "equivariance gap {}",
            signed_offset(ghy, hfy.value).abs()
        );
    }

    #[test]
    fn conjugacy_rejects_mismatched_rotation_numbers() {
        let f = make_rotation(0.3).unwrap();
        let g = make_rotation(0.31).unwrap();
        assert!(matches!(
            conjugacy_point(&f, 0.0, &g, 0.0, 0.5, 3, 1e-6),
            Err(Error::RotationMismatch(_))
        ));
    }

    #[test]
    fn dk_cap_grows_with_budget() {
        let rho = parse_cf("golden").unwrap();
        let small = dk_depth_cap(&rho, 20, 1_000);
        let big = dk_depth_cap(&rho, 20, 100_000);
        assert!(big > small);
        assert!(small >= 1);
    }
}
