use super::CurveSamples;
use crate::{Complex64, Error, Result};
use serde::{Deserialize, Serialize};

/// Which of the two square roots is meant, relative to the principal one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchSign {
    Plus,
    Minus,
}

impl BranchSign {
    pub fn value(self) -> f64 {
        match self {
            BranchSign::Plus => 1.0,
            BranchSign::Minus => -1.0,
        }
    }

    pub fn from_parity(crossings: i32) -> Self {
        if crossings.rem_euclid(2) == 0 {
            BranchSign::Plus
        } else {
            BranchSign::Minus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            BranchSign::Plus => BranchSign::Minus,
            BranchSign::Minus => BranchSign::Plus,
        }
    }
}

impl From<BranchSign> for i32 {
    fn from(s: BranchSign) -> i32 {
        match s {
            BranchSign::Plus => 1,
            BranchSign::Minus => -1,
        }
    }
}

/// Knobs for square-root tracking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackOptions {
    /// A radicand with modulus at or below this is treated as a branch point.
    pub collision_tol: f64,
    /// Maximum number of bisections of one sample interval.
    pub max_depth: u32,
    /// Accepted relative change of the radicand per step.
    pub max_rel_step: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        Self { collision_tol: 1e-12, max_depth: 40, max_rel_step: 0.5 }
    }
}

/// A square root followed continuously along a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchTrace {
    /// Parameter values (the `w` samples) after refinement; empty when the trace
    /// was built from bare radicand samples.
    pub w_samples: CurveSamples,
    pub radicand_samples: CurveSamples,
    pub sqrt_samples: CurveSamples,
    /// Signed crossings of the negative real axis; `+1` for upper-to-lower.
    pub cut_crossings: i32,
    /// Monodromy of the root: `Plus` iff `cut_crossings` is even.
    pub final_sign: BranchSign,
    /// Branch the trace started on.
    pub initial_branch: BranchSign,
}

impl BranchTrace {
    /// Last tracked root.
    pub fn end_root(&self) -> Complex64 {
        *self.sqrt_samples.samples.last().expect("trace is never empty")
    }

    pub fn end_radicand(&self) -> Complex64 {
        *self.radicand_samples.samples.last().expect("trace is never empty")
    }

    /// Largest `|√r_k² − r_k| / (1 + |r_k|)` over the trace.
    pub fn max_square_residual(&self) -> f64 {
        self.sqrt_samples
            .samples
            .iter()
            .zip(&self.radicand_samples.samples)
            .map(|(a, r)| (a * a - r).norm() / (1.0 + r.norm()))
            .fold(0.0, f64::max)
    }

    /// `true` when no step jumps between the two roots.
    pub fn is_continuous(&self) -> bool {
        self.sqrt_samples.samples.windows(2).all(|p| (p[1] - p[0]).norm() < (p[1] + p[0]).norm())
    }
}

/// Principal square root with the cut on the negative real axis, approached
/// from above (`√(−x ± 0i) = i√x`).
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        }
    } else {
        z.sqrt()
    }
}

fn upper(z: Complex64) -> bool {
    z.im >= 0.0
}

/// Signed crossing of the negative real axis by the chord `a → b`.
fn chord_crossing(a: Complex64, b: Complex64) -> i32 {
    if upper(a) == upper(b) {
        return 0;
    }
    let t = -a.im / (b.im - a.im);
    let x = a.re + t * (b.re - a.re);
    if x < 0.0 {
        if upper(a) {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Follows `√r` along the polyline through the given radicand samples.
///
/// `initial_branch` picks the starting root: `Plus` is the principal root
/// (non-negative real part).
pub fn track_sqrt(radicand: &CurveSamples, initial_branch: BranchSign, opts: &TrackOptions) -> Result<BranchTrace> {
    let mut trace = track_sqrt_along(&radicand.samples, |z| z, initial_branch, opts)?;
    trace.w_samples = CurveSamples::default();
    Ok(trace)
}

/// Follows `√f(p)` as `p` moves linearly between consecutive `params`.
///
/// Intervals are bisected until the radicand changes by at most
/// `opts.max_rel_step` of its modulus per step, so each step stays inside a
/// disk that excludes the origin.
pub fn track_sqrt_along<F>(
    params: &[Complex64],
    f: F,
    initial_branch: BranchSign,
    opts: &TrackOptions,
) -> Result<BranchTrace>
where
    F: Fn(Complex64) -> Complex64,
{
    let Some(&p0) = params.first() else {
        return Err(Error::InvalidArgument("no samples to track".into()));
    };
    let r0 = f(p0);
    if r0.norm() <= opts.collision_tol {
        return Err(Error::BranchPointCollision { radicand: r0, tolerance: opts.collision_tol, parameter: 0.0 });
    }
    if r0.im == 0.0 && r0.re < 0.0 {
        return Err(Error::BranchAmbiguity(r0));
    }
    let a0 = principal_sqrt(r0) * initial_branch.value();

    let mut st = Tracker { f: &f, opts, params: vec![p0], radicands: vec![r0], roots: vec![a0], crossings: 0 };
    for (k, pair) in params.windows(2).enumerate() {
        let r_prev = *st.radicands.last().unwrap();
        st.refine(pair[0], r_prev, pair[1], 0, k)?;
    }

    let (a_end, r_end) = (*st.roots.last().unwrap(), *st.radicands.last().unwrap());
    let p_end = principal_sqrt(r_end);
    let relative = if (a_end - p_end).norm() <= (a_end + p_end).norm() { BranchSign::Plus } else { BranchSign::Minus };
    // monodromy relative to the starting branch
    let tracked = if initial_branch == BranchSign::Plus { relative } else { relative.flip() };
    let by_parity = BranchSign::from_parity(st.crossings);
    debug_assert_eq!(tracked, by_parity, "cut crossing count disagrees with the tracked root");
    if tracked != by_parity {
        return Err(Error::BranchPointCollision {
            radicand: r_end,
            tolerance: opts.collision_tol,
            parameter: (params.len() - 1) as f64,
        });
    }

    Ok(BranchTrace {
        w_samples: CurveSamples::from_samples(st.params),
        radicand_samples: CurveSamples::from_samples(st.radicands),
        sqrt_samples: CurveSamples::from_samples(st.roots),
        cut_crossings: st.crossings,
        final_sign: tracked,
        initial_branch,
    })
}

struct Tracker<'a, F> {
    f: &'a F,
    opts: &'a TrackOptions,
    params: Vec<Complex64>,
    radicands: Vec<Complex64>,
    roots: Vec<Complex64>,
    crossings: i32,
}

impl<F: Fn(Complex64) -> Complex64> Tracker<'_, F> {
    fn refine(&mut self, p0: Complex64, r0: Complex64, p1: Complex64, depth: u32, leg: usize) -> Result<()> {
        let r1 = (self.f)(p1);
        let tol = self.opts.collision_tol;
        let collision =
            |r: Complex64| Error::BranchPointCollision { radicand: r, tolerance: tol, parameter: leg as f64 };
        if r1.norm() <= self.opts.collision_tol {
            return Err(collision(r1));
        }
        let pm = (p0 + p1) * 0.5;
        let rm = (self.f)(pm);
        let k = self.opts.max_rel_step;
        let small = (r1 - r0).norm() <= k * r0.norm().min(r1.norm()) && (rm - r0).norm() <= k * r0.norm();
        if !small {
            if depth >= self.opts.max_depth || rm.norm() <= self.opts.collision_tol {
                let worst = [r0, rm, r1].into_iter().min_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
                return Err(collision(worst));
            }
            self.refine(p0, r0, pm, depth + 1, leg)?;
            return self.refine(pm, rm, p1, depth + 1, leg);
        }
        let a0 = *self.roots.last().unwrap();
        let predicted = a0 * principal_sqrt(r1 / r0);
        let b = principal_sqrt(r1);
        let a1 = if (b - predicted).norm() <= (b + predicted).norm() { b } else { -b };
        self.crossings += chord_crossing(r0, rm) + chord_crossing(rm, r1);
        self.params.push(p1);
        self.radicands.push(r1);
        self.roots.push(a1);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use std::f64::consts::PI;

    #[test]
    fn constant_radicand_has_constant_root() {
        let s = CurveSamples::from_samples(vec![c64(4.0, 0.0); 5]);
        let t = track_sqrt(&s, BranchSign::Plus, &TrackOptions::default()).unwrap();
        assert!(t.sqrt_samples.samples.iter().all(|a| *a == c64(2.0, 0.0)));
        assert_eq!(t.cut_crossings, 0);
        assert_eq!(t.final_sign, BranchSign::Plus);
    }

    #[test]
    fn unit_circle_monodromy() {
        let pts: Vec<_> = (0..=64).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 64.0)).collect();
        let t = track_sqrt(&CurveSamples::from_samples(pts), BranchSign::Plus, &TrackOptions::default()).unwrap();
        assert_eq!(t.cut_crossings, 1);
        assert_eq!(t.final_sign, BranchSign::Minus);
        assert!((t.end_root() - c64(-1.0, 0.0)).norm() < 1e-12);
        assert!(t.is_continuous());
        assert!(t.max_square_residual() < 1e-12);
    }

    #[test]
    fn clockwise_circle_counts_negative() {
        let pts: Vec<_> = (0..=64).map(|k| Complex64::from_polar(2.0, -2.0 * PI * k as f64 / 64.0)).collect();
        let t = track_sqrt(&CurveSamples::from_samples(pts), BranchSign::Plus, &TrackOptions::default()).unwrap();
        assert_eq!(t.cut_crossings, -1);
    }

    #[test]
    fn coarse_samples_are_refined() {
        // three samples on a circle of radius 1 around the origin: chords pass near 0
        let pts = vec![c64(1.0, 0.0), c64(-0.5, 0.866), c64(-0.5, -0.866), c64(1.0, 0.0)];
        let t = track_sqrt(&CurveSamples::from_samples(pts), BranchSign::Plus, &TrackOptions::default()).unwrap();
        assert!(t.sqrt_samples.len() > 4);
        assert!(t.is_continuous());
        assert_eq!(t.cut_crossings, 1);
    }

    #[test]
    fn passing_through_origin_is_a_collision() {
        let pts = vec![c64(1.0, 0.0), c64(-1.0, 0.0)];
        let err = track_sqrt(&CurveSamples::from_samples(pts), BranchSign::Plus, &TrackOptions::default());
        assert!(matches!(err, Err(Error::BranchPointCollision { .. })));
    }

    #[test]
    fn starting_on_the_cut_is_rejected() {
        let pts = vec![c64(-1.0, 0.0), c64(-1.0, 1.0)];
        let err = track_sqrt(&CurveSamples::from_samples(pts), BranchSign::Plus, &TrackOptions::default());
        assert!(matches!(err, Err(Error::BranchAmbiguity(_))));
    }

    #[test]
    fn minus_branch_start() {
        let s = CurveSamples::from_samples(vec![c64(4.0, 1.0), c64(4.0, 2.0)]);
        let t = track_sqrt(&s, BranchSign::Minus, &TrackOptions::default()).unwrap();
        assert!(t.sqrt_samples.samples[0].re < 0.0);
        assert_eq!(t.final_sign, BranchSign::Plus);
    }

    #[test]
    fn negative_zero_imaginary_part_is_on_upper_side() {
        assert_eq!(principal_sqrt(c64(-4.0, -0.0)), c64(0.0, 2.0));
    }
}
