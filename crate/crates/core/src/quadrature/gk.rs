//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use crate::{Complex64, Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 20_000 }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { abs_tol: tol * 1e-2, rel_tol: tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    // largest error first, ties broken by position so the order is total
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error).then_with(|| o.a.total_cmp(&self.a))
    }
}

/// Pieces still worth splitting, and those whose error sits at the rounding floor.
#[derive(Default)]
struct Pool {
    heap: BinaryHeap<Piece>,
    done: Vec<Piece>,
    heap_err: f64,
    done_err: f64,
}

impl Pool {
    fn settle(&mut self, p: Piece, floor: bool) {
        if floor {
            self.done_err += p.error;
            self.done.push(p);
        } else {
            self.heap_err += p.error;
            self.heap.push(p);
        }
    }

    fn pop(&mut self) -> Option<Piece> {
        let p = self.heap.pop()?;
        self.heap_err -= p.error;
        Some(p)
    }

    fn len(&self) -> usize {
        self.heap.len() + self.done.len()
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64, bool)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    let mut vals = [(Complex64::default(), Complex64::default()); 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx)?, f(c + dx)?);
        vals[j] = (f1, f2);
        kron += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).norm() * WGK[7];
    for j in 0..7 {
        asc += ((vals[j].0 - mean).norm() + (vals[j].1 - mean).norm()) * WGK[j];
    }
    let (kron, abs_sum, asc) = (kron * h, abs_sum * h.abs(), asc * h.abs());
    let diff = ((kron - gauss * h).norm()).abs();
    let mut err = diff;
    if asc != 0.0 && diff != 0.0 {
        err = asc * (200.0 * diff / asc).powf(1.5).min(1.0);
    }
    let round = 50.0 * f64::EPSILON * abs_sum;
    let mut at_roundoff = false;
    if round > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && err <= round {
        err = round;
        at_roundoff = true;
    }
    if !(kron.re.is_finite() && kron.im.is_finite()) {
        return Err(Error::QuadratureFailure { a, b, error: f64::INFINITY });
    }
    Ok((kron, err, at_roundoff))
}

/// Integrates `f` over `[a, b]`, split first at `breaks` (points outside the
/// interval are ignored).
pub fn integrate_try<F>(mut f: F, a: f64, b: f64, breaks: &[f64], opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(QuadResult { value: Complex64::default(), error: 0.0, intervals: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts = vec![lo];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|x| *x > lo && *x < hi).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    cuts.extend(inner);
    cuts.push(hi);

    let mut pool = Pool::default();
    let mut total = Complex64::default();
    for p in cuts.windows(2) {
        let (value, error, floor) = gk15(&mut f, p[0], p[1])?;
        total += value;
        pool.settle(Piece { a: p[0], b: p[1], value, error }, floor);
    }
    let min_width = (hi - lo) * 1e-14;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.norm());
        if pool.heap_err <= (tol - pool.done_err).max(0.01 * tol) {
            break;
        }
        if pool.len() + 1 > opts.max_intervals {
            let worst = pool.heap.peek().copied().unwrap();
            return Err(Error::QuadratureFailure { a: worst.a, b: worst.b, error: pool.heap_err + pool.done_err });
        }
        let Some(p) = pool.pop() else { break };
        if p.b - p.a <= min_width {
            pool.settle(p, true);
            continue;
        }
        let m = 0.5 * (p.a + p.b);
        let (v1, e1, f1) = gk15(&mut f, p.a, m)?;
        let (v2, e2, f2) = gk15(&mut f, m, p.b)?;
        total += v1 + v2 - p.value;
        pool.settle(Piece { a: p.a, b: m, value: v1, error: e1 }, f1);
        pool.settle(Piece { a: m, b: p.b, value: v2, error: e2 }, f2);
    }
    let mut pieces: Vec<Piece> = pool.heap.into_vec();
    pieces.extend(pool.done);
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: Complex64 = pieces.iter().map(|p| p.value).sum();
    let error: f64 = pieces.iter().map(|p| p.error).sum();
    Ok(QuadResult { value: value * sign, error, intervals: pieces.len() })
}

pub fn integrate<F>(mut f: F, a: f64, b: f64, breaks: &[f64], opts: &QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_try(|x| Ok(f(x)), a, b, breaks, opts)
}
