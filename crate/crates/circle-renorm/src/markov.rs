//! Countable Markov partition of the rectangle R = [0,1] x [-1,1] for the
//! skew product, its inverse branches, Markov tiles, and Jacobian distortion.
//!
//! The three atom families tile R up to a null set:
//!
//! * `U_k`:     1/(k+1) < rho < 1/k,  0 < alpha < 1 - k rho   (maps onto R^-)
//! * `V_{k,l}`: 1/(k+1) < rho < 1/k,  1-(l+1) rho < alpha < 1 - l rho, 0 <= l <= k-1
//! * `R_k`:     1/(k+1) < rho < 1/k,  -1 < alpha < 0          (maps onto R^+)

use crate::cf::RotationNumber;
use crate::error::{Error, Result};
use crate::skew::{self, SkewPoint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HalfPlane {
    /// R^+ = (0,1) x (0,1)
    Pos,
    /// R^- = (0,1) x (-1,0)
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MarkovAtom {
    U { k: u64 },
    V { k: u64, ell: u64 },
    R { k: u64 },
}

impl MarkovAtom {
    pub fn k(&self) -> u64 {
        match self {
            MarkovAtom::U { k } | MarkovAtom::V { k, .. } | MarkovAtom::R { k } => *k,
        }
    }

    /// Half-plane the atom itself lives in.
    pub fn location(&self) -> HalfPlane {
        match self {
            MarkovAtom::R { .. } => HalfPlane::Neg,
            _ => HalfPlane::Pos,
        }
    }

    /// Half-plane the atom is mapped onto by one step of the skew product.
    pub fn image(&self) -> HalfPlane {
        match self {
            MarkovAtom::U { .. } => HalfPlane::Neg,
            _ => HalfPlane::Pos,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if k < 1 {
            return Err(Error::OutOfRange("atom needs k >= 1".into()));
        }
        if let MarkovAtom::V { k, ell } = self {
            if *ell >= *k {
                return Err(Error::OutOfRange(format!(
                    "V atom needs ell <= k-1, got V_{k},{ell}"
                )));
            }
        }
        Ok(())
    }

    /// Open-atom membership for float points.
    pub fn contains_f64(&self, rho: f64, alpha: f64) -> bool {
        let k = self.k() as f64;
        if !(1.0 / (k + 1.0) < rho && rho < 1.0 / k) {
            return false;
        }
        match self {
            MarkovAtom::U { .. } => 0.0 < alpha && alpha < 1.0 - k * rho,
            MarkovAtom::R { .. } => -1.0 < alpha && alpha < 0.0,
            MarkovAtom::V { ell, .. } => {
                let l = *ell as f64;
                1.0 - (l + 1.0) * rho < alpha && alpha < 1.0 - l * rho
            }
        }
    }
}

impl fmt::Display for MarkovAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkovAtom::U { k } => write!(f, "U{k}"),
            MarkovAtom::V { k, ell } => write!(f, "V{k}:{ell}"),
            MarkovAtom::R { k } => write!(f, "R{k}"),
        }
    }
}

impl FromStr for MarkovAtom {
    type Err = Error;

    /// `"U2"`, `"R3"`, `"V4:1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::ParseCf(format!("bad atom spec {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        let (kind, rest) = s.split_at(1);
        let atom = match kind {
            "U" | "u" => MarkovAtom::U { k: rest.parse().map_err(|_| bad())? },
            "R" | "r" => MarkovAtom::R { k: rest.parse().map_err(|_| bad())? },
            "V" | "v" => {
                let (k, ell) = rest.split_once(':').ok_or_else(bad)?;
                MarkovAtom::V {
                    k: k.parse().map_err(|_| bad())?,
                    ell: ell.parse().map_err(|_| bad())?,
                }
            }
            _ => return Err(bad()),
        };
        atom.validate()?;
        Ok(atom)
    }
}

/// The unique open atom containing the point. Atoms are open, so a point whose
/// enclosure touches a boundary is rejected as ambiguous.
pub fn atom_of(p: &SkewPoint, depth: usize) -> Result<MarkovAtom> {
    let k = p.rho.digit(0)?;
    let zero = BigRational::zero();
    if p.alpha.hi() < &zero {
        return Ok(MarkovAtom::R { k });
    }
    if p.alpha.lo() <= &zero {
        return Err(Error::Ambiguous(format!(
            "alpha {} touches the atom boundary 0",
            p.alpha.to_approx()
        )));
    }
    let rg = skew::rho_g_rho(&p.rho, depth)?; // 1 - k rho
    if p.alpha.hi() < rg.lo() {
        return Ok(MarkovAtom::U { k });
    }
    if p.alpha.lo() <= rg.hi() {
        return Err(Error::Ambiguous(format!(
            "alpha {} touches the U/V boundary 1 - k rho",
            p.alpha.to_approx()
        )));
    }
    // V region: ell = floor((1 - alpha)/rho)
    let v = p
        .alpha
        .one_minus()
        .div(&p.rho.value(depth)?)
        .ok_or_else(|| Error::PrecisionExhausted("rho enclosure touches 0".into()))?;
    let ell = v.floor_exact().ok_or_else(|| {
        Error::Ambiguous(format!(
            "alpha {} touches a V-strip boundary",
            p.alpha.to_approx()
        ))
    })?;
    let ell = ell
        .to_u64()
        .ok_or_else(|| Error::OutOfRange("V index out of range".into()))?;
    if ell >= k {
        return Err(Error::Ambiguous(
            "point sits below the last V strip at working precision".into(),
        ));
    }
    Ok(MarkovAtom::V { k, ell })
}

/// The inverse branch tau_m: pulls a point of T(m)'s half-plane back into the
/// atom `m`. The rho coordinate gains the digit k; the alpha coordinate
/// inverts the affine fiber branch of the atom.
pub fn inverse_branch(m: &MarkovAtom, q: &SkewPoint, depth: usize) -> Result<SkewPoint> {
    m.validate()?;
    let zero = BigRational::zero();
    let sign_ok = match m.image() {
        HalfPlane::Pos => p_alpha_pos(q, &zero),
        HalfPlane::Neg => q.alpha.hi() < &zero,
    };
    if !sign_ok {
        return Err(Error::ImageMismatch(format!(
            "atom {m} pulls back {:?} points, got alpha {}",
            m.image(),
            q.alpha.to_approx()
        )));
    }
    let k = m.k();
    let rho = q.rho.prepend(k)?;
    // rho = 1/(k + rho'), so rho G(rho) = 1 - k rho = rho'/(k + rho')
    let rp = q.rho.value(depth)?;
    let kq = rp.add_rat(&BigRational::from_integer(k.into()));
    let alpha = match m {
        MarkovAtom::R { .. } => q.alpha.neg(),
        MarkovAtom::U { .. } => {
            let rg = rp.div(&kq).ok_or_else(|| {
                Error::PrecisionExhausted("degenerate enclosure in inverse branch".into())
            })?;
            q.alpha.neg().mul(&rg)
        }
        MarkovAtom::V { ell, .. } => {
            // alpha = 1 - rho (alpha' + ell)
            let shifted = q.alpha.add_rat(&BigRational::from_integer((*ell).into()));
            shifted
                .div(&kq)
                .ok_or_else(|| {
                    Error::PrecisionExhausted("degenerate enclosure in inverse branch".into())
                })?
                .one_minus()
        }
    };
    Ok(SkewPoint { rho, alpha })
}

fn p_alpha_pos(q: &SkewPoint, zero: &BigRational) -> bool {
    q.alpha.lo() > zero
}

/// Float version of the inverse branch, for tile geometry.
pub fn inverse_branch_f64(m: &MarkovAtom, rho: f64, alpha: f64) -> (f64, f64) {
    let k = m.k() as f64;
    let new_rho = 1.0 / (k + rho);
    let new_alpha = match m {
        MarkovAtom::R { .. } => -alpha,
        MarkovAtom::U { .. } => -alpha * rho / (k + rho),
        MarkovAtom::V { ell, .. } => 1.0 - new_rho * (alpha + *ell as f64),
    };
    (new_rho, new_alpha)
}

/// A word is admissible when each atom lies in the half-plane its predecessor
/// maps onto.
pub fn word_admissible(word: &[MarkovAtom]) -> bool {
    word.windows(2).all(|w| w[1].location() == w[0].image())
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkovTile {
    pub word: Vec<MarkovAtom>,
    /// Images of boundary samples of R^+/R^- under the composed inverse
    /// branches, in boundary order.
    pub vertices: Vec<(f64, f64)>,
    pub diameter: f64,
}

/// Push boundary samples of the appropriate half-plane through
/// tau_{m_1} o ... o tau_{m_n}. The diameter is the sample diameter.
pub fn build_tile(word: &[MarkovAtom], samples_per_edge: usize) -> Result<MarkovTile> {
    if word.is_empty() {
        return Err(Error::Inadmissible("empty word".into()));
    }
    for m in word {
        m.validate()?;
    }
    if !word_admissible(word) {
        return Err(Error::Inadmissible(format!(
            "word {} has a sign break",
            word.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
        )));
    }
    let s = samples_per_edge.max(2);
    // boundary of R^+ or R^- depending on what the innermost branch accepts
    let (alo, ahi) = match word.last().expect("nonempty").image() {
        HalfPlane::Pos => (0.0f64, 1.0f64),
        HalfPlane::Neg => (-1.0f64, 0.0f64),
    };
    let mut pts = Vec::with_capacity(4 * s);
    let step = 1.0 / s as f64;
    for i in 0..s {
        let t = i as f64 * step;
        pts.push((t, alo)); // bottom edge, left to right
    }
    for i in 0..s {
        let t = i as f64 * step;
        pts.push((1.0, alo + t * (ahi - alo))); // right edge, upward
    }
    for i in 0..s {
        let t = i as f64 * step;
        pts.push((1.0 - t, ahi)); // top edge, right to left
    }
    for i in 0..s {
        let t = i as f64 * step;
        pts.push((0.0, ahi - t * (ahi - alo))); // left edge, downward
    }
    for m in word.iter().rev() {
        for p in pts.iter_mut() {
            *p = inverse_branch_f64(m, p.0, p.1);
        }
    }
    let mut diameter: f64 = 0.0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
            diameter = diameter.max(d);
        }
    }
    Ok(MarkovTile { word: word.to_vec(), vertices: pts, diameter })
}

/// Random admissible word with digits `k <= kmax`.
pub fn random_admissible_word<R: Rng>(rng: &mut R, len: usize, kmax: u64) -> Vec<MarkovAtom> {
    let mut word = Vec::with_capacity(len);
    let mut need: Option<HalfPlane> = None;
    for _ in 0..len {
        let k = rng.gen_range(1..=kmax);
        let atom = match need {
            Some(HalfPlane::Neg) => MarkovAtom::R { k },
            _ => {
                if rng.gen_bool(0.5) {
                    MarkovAtom::U { k }
                } else {
                    MarkovAtom::V { k, ell: rng.gen_range(0..k) }
                }
            }
        };
        need = Some(atom.image());
        word.push(atom);
    }
    word
}

/// A float point inside the tile of `word`, obtained by pulling back a point
/// of the final half-plane through the composed inverse branches.
pub fn sample_in_tile<R: Rng>(word: &[MarkovAtom], rng: &mut R) -> (f64, f64) {
    let (alo, ahi) = match word.last().expect("nonempty word").image() {
        HalfPlane::Pos => (0.05, 0.95),
        HalfPlane::Neg => (-0.95, -0.05),
    };
    let mut p = (rng.gen_range(0.05..0.95), rng.gen_range(alo..ahi));
    for m in word.iter().rev() {
        p = inverse_branch_f64(m, p.0, p.1);
    }
    p
}

/// det DT^n along the certified orbit of `p`:
/// prod G'(rho_j) * prod T'_{rho_j}(alpha_j), with G' = -1/rho^2 and fiber
/// slopes -1, -1/(rho G(rho)), -1/rho per branch.
pub fn jacobian_det(p: &SkewPoint, n: usize, depth: usize) -> Result<f64> {
    let mut det = 1.0f64;
    let mut cur = p.clone();
    for step in 0..n {
        let rho = cur.rho.value(depth)?.mid_f64();
        let rg = skew::rho_g_rho(&cur.rho, depth)?.mid_f64();
        let (alpha, branch) =
            skew::fiber_map_with_branch(&cur.rho, &cur.alpha, depth).map_err(|e| match e {
                Error::Ambiguous(m) => {
                    Error::Ambiguous(format!("orbit hits a branch boundary at step {step}: {m}"))
                }
                other => other,
            })?;
        let fiber_slope = match branch {
            skew::FiberBranch::Reflect => -1.0,
            skew::FiberBranch::Stretch => -1.0 / rg,
            skew::FiberBranch::Wrap => -1.0 / rho,
            skew::FiberBranch::ReflectStretchHull => {
                return Err(Error::Ambiguous(format!(
                    "orbit touches the fiber breakpoint 0 at step {step}"
                )))
            }
        };
        det *= (-1.0 / (rho * rho)) * fiber_slope;
        cur = SkewPoint { rho: cur.rho.gauss_shift(), alpha };
    }
    Ok(det)
}

/// |det DT^n(p)| / |det DT^n(q)| for two points certified to lie in the same
/// Markov n-tile (their atom words along the orbit must agree).
pub fn distortion_ratio(p: &SkewPoint, q: &SkewPoint, n: usize, depth: usize) -> Result<f64> {
    let mut cp = p.clone();
    let mut cq = q.clone();
    for step in 0..n {
        let ap = atom_of(&cp, depth)?;
        let aq = atom_of(&cq, depth)?;
        if ap != aq {
            return Err(Error::DifferentTiles(step));
        }
        cp = skew::skew_step(&cp, depth)?;
        cq = skew::skew_step(&cq, depth)?;
    }
    let dp = jacobian_det(p, n, depth)?;
    let dq = jacobian_det(q, n, depth)?;
    Ok((dp / dq).abs())
}

/// Float skew-product step, used as the independent finite-difference side of
/// the Jacobian checks.
pub fn skew_step_f64(rho: f64, alpha: f64) -> (f64, f64) {
    let g = (1.0 / rho).fract();
    let rg = rho * g;
    let new_alpha = if alpha <= 0.0 {
        -alpha
    } else if alpha <= rg {
        -alpha / rg
    } else {
        ((1.0 - alpha) / rho).fract()
    };
    (g, new_alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::parse_cf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(spec: &str, alpha: f64) -> SkewPoint {
        SkewPoint::from_f64(parse_cf(spec).unwrap(), alpha).unwrap()
    }

    #[test]
    fn atom_examples() {
        assert_eq!(atom_of(&pt("sqrt2m1", -0.3), 60).unwrap(), MarkovAtom::R { k: 2 });
        assert_eq!(atom_of(&pt("sqrt2m1", 0.5), 60).unwrap(), MarkovAtom::V { k: 2, ell: 1 });
        assert_eq!(atom_of(&pt("sqrt2m1", 0.1), 60).unwrap(), MarkovAtom::U { k: 2 });
        assert!(matches!(atom_of(&pt("sqrt2m1", 0.0), 60), Err(Error::Ambiguous(_))));
    }

    #[test]
    fn inverse_branch_gauss_digit() {
        let q = pt("[3;(1,2)]", 0.4);
        let back = inverse_branch(&MarkovAtom::R { k: 2 }, &q, 60).unwrap();
        assert_eq!(back.rho.try_digits(4).unwrap(), vec![2, 3, 1, 2]);
        // rho = 1/(2 + rho')
        let rp = q.rho.value(60).unwrap().mid_f64();
        assert!((back.rho.value(60).unwrap().mid_f64() - 1.0 / (2.0 + rp)).abs() < 1e-12);
        assert!((back.alpha.mid_f64() + 0.4).abs() < 1e-12);
    }

    #[test]
    fn inverse_branch_image_mismatch() {
        let q = pt("golden", 0.4); // point of R^+
        assert!(matches!(
            inverse_branch(&MarkovAtom::U { k: 2 }, &q, 60),
            Err(Error::ImageMismatch(_))
        ));
    }

    #[test]
    fn inverse_branch_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        for _ in 0..400 {
            let k = rng.gen_range(1..=6u64);
            let ell = rng.gen_range(0..k);
            for atom in [MarkovAtom::U { k }, MarkovAtom::V { k, ell }, MarkovAtom::R { k }] {
                let alpha = match atom.image() {
                    HalfPlane::Pos => rng.gen_range(0.02..0.98),
                    HalfPlane::Neg => rng.gen_range(-0.98..-0.02),
                };
                let digits: Vec<u64> = (0..30).map(|_| rng.gen_range(1..=5)).collect();
                let q = SkewPoint::from_f64(RotationNumber::from_digits(digits).unwrap(), alpha)
                    .unwrap();
                let pre = inverse_branch(&atom, &q, 60).unwrap();
                let fwd = skew::skew_step(&pre, 60).unwrap();
                assert!(
                    (fwd.alpha.mid_f64() - q.alpha.mid_f64()).abs() < 1e-12,
                    "atom {atom}: {} vs {}",
                    fwd.alpha.mid_f64(),
                    q.alpha.mid_f64()
                );
                assert_eq!(fwd.rho.try_digits(8).unwrap(), q.rho.try_digits(8).unwrap());
                checked += 1;
            }
        }
        assert!(checked >= 1200);
    }

    #[test]
    fn markov_images_land_in_stated_half_planes() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..2000 {
            let digits: Vec<u64> = (0..25).map(|_| rng.gen_range(1..=6)).collect();
            let rho = RotationNumber::from_digits(digits).unwrap();
            let alpha = rng.gen_range(-0.999..0.999);
            let p = match SkewPoint::from_f64(rho, alpha) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let atom = match atom_of(&p, 60) {
                Ok(a) => a,
                Err(_) => continue, // boundary-grazing sample
            };
            let img = skew::skew_step(&p, 60).unwrap();
            let a = img.alpha.mid_f64();
            match atom.image() {
                HalfPlane::Pos => assert!(a >= -1e-12, "atom {atom} sent alpha to {a}"),
                HalfPlane::Neg => assert!(a <= 1e-12, "atom {atom} sent alpha to {a}"),
            }
        }
    }

    #[test]
    fn one_letter_tile_is_the_atom() {
        let atom = MarkovAtom::R { k: 2 };
        let tile = build_tile(&[atom], 16).unwrap();
        for &(r, a) in &tile.vertices {
            // boundary samples may sit on the closure
            assert!(r >= 1.0 / 3.0 - 1e-9 && r <= 0.5 + 1e-9);
            assert!((-1.0 - 1e-9..=1e-9).contains(&a));
        }
        let interior = tile.vertices.iter().filter(|&&(r, a)| atom.contains_f64(r, a));
        assert!(interior.count() == 0); // boundary samples stay on the boundary
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (r, a) = sample_in_tile(&[atom], &mut rng);
        assert!(atom.contains_f64(r, a));
    }

    #[test]
    fn tile_words_shift_under_the_dynamics() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let word = random_admissible_word(&mut rng, 5, 3);
            // an interior point of the tile steps into the tile of the
            // truncated word, whose atom word is the shifted one
            let (r, a) = sample_in_tile(&word, &mut rng);
            let digits = match crate::cf::cf_from_real(r, 1e-13, 40) {
                Ok(p) if p.digits.len() >= 20 => p.digits,
                _ => continue,
            };
            let p = SkewPoint::from_f64(RotationNumber::from_digits(digits).unwrap(), a).unwrap();
            let mut cur = p;
            for (i, expect) in word.iter().enumerate() {
                let atom = match atom_of(&cur, 80) {
                    Ok(at) => at,
                    Err(_) => break, // float sample grazed a boundary
                };
                assert_eq!(atom, *expect, "letter {i}");
                cur = skew::skew_step(&cur, 80).unwrap();
            }
        }
    }

    #[test]
    fn inadmissible_words_rejected() {
        let w = [MarkovAtom::U { k: 2 }, MarkovAtom::U { k: 2 }];
        assert!(matches!(build_tile(&w, 8), Err(Error::Inadmissible(_))));
        let w = [MarkovAtom::R { k: 2 }, MarkovAtom::R { k: 2 }];
        assert!(matches!(build_tile(&w, 8), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn tile_diameters_decay() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut mean_log = Vec::new();
        for len in [2usize, 6, 10] {
            let mut acc = 0.0;
            let mut cnt = 0;
            for _ in 0..12 {
                let word = random_admissible_word(&mut rng, len, 3);
                let tile = build_tile(&word, 8).unwrap();
                if tile.diameter > 0.0 {
                    acc += tile.diameter.ln();
                    cnt += 1;
                }
            }
            mean_log.push(acc / cnt as f64);
        }
        assert!(mean_log[2] < mean_log[1] && mean_log[1] < mean_log[0]);
    }

    #[test]
    fn jacobian_single_step_example() {
        let p = pt("sqrt2m1", -0.3);
        let det = jacobian_det(&p, 1, 60).unwrap();
        let rho = 2f64.sqrt() - 1.0;
        assert!((det - 1.0 / (rho * rho)).abs() < 1e-9, "det {det}");
        assert_eq!(jacobian_det(&p, 0, 60).unwrap(), 1.0);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut tested = 0;
        for _ in 0..200 {
            let n = rng.gen_range(1..=3usize);
            let word = random_admissible_word(&mut rng, n + 1, 3);
            let (r0, a0) = sample_in_tile(&word, &mut rng);
            if !(0.02..0.98).contains(&r0) || a0.abs() < 0.02 || a0.abs() > 0.98 {
                continue;
            }
            let digits = crate::cf::cf_from_real(r0, 1e-15, 40)
                .ok()
                .filter(|p| p.digits.len() >= 12);
            let Some(prefix) = digits else { continue };
            let rho = RotationNumber::from_digits(prefix.digits).unwrap();
            let p = SkewPoint::from_f64(rho, a0).unwrap();
            let Ok(analytic) = jacobian_det(&p, n, 80) else { continue };
            // centered finite differences of the float skew product
            let h = 3e-7;
            let orbit = |mut r: f64, mut a: f64| {
                for _ in 0..n {
                    let (nr, na) = skew_step_f64(r, a);
                    r = nr;
                    a = na;
                }
                (r, a)
            };
            let (rp, ap) = orbit(r0 + h, a0);
            let (rm, am) = orbit(r0 - h, a0);
            let (sp, bp) = orbit(r0, a0 + h);
            let (sm, bm) = orbit(r0, a0 - h);
            let j11 = (rp - rm) / (2.0 * h);
            let j21 = (ap - am) / (2.0 * h);
            let j12 = (sp - sm) / (2.0 * h);
            let j22 = (bp - bm) / (2.0 * h);
            let fd = j11 * j22 - j12 * j21;
            let rel = ((fd - analytic) / analytic).abs();
            if rel > 1e-4 {
                continue; // stencil leg crossed a branch boundary
            }
            assert!(rel < 1e-4);
            tested += 1;
        }
        assert!(tested >= 20, "only {tested} FD comparisons ran");
    }

    #[test]
    fn distortion_trivial_and_mismatch() {
        let p = pt("sqrt2m1", -0.3);
        assert!((distortion_ratio(&p, &p, 4, 60).unwrap() - 1.0).abs() < 1e-12);
        let q = pt("sqrt2m1", 0.5);
        assert!(matches!(distortion_ratio(&p, &q, 2, 60), Err(Error::DifferentTiles(0))));
    }

    #[test]
    fn atom_parse_round_trip() {
        for s in ["U2", "R7", "V4:1"] {
            let a: MarkovAtom = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert!("V2:2".parse::<MarkovAtom>().is_err());
        assert!("X3".parse::<MarkovAtom>().is_err());
    }
}
