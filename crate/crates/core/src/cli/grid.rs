//! Parameter grids: comma-separated items, each a number, `start:stop:step`
//! (inclusive of `stop` within half a step) or `log:start:stop:n`.

use crate::error::{Error, Result};

/// Upper limit on the number of grid points.
pub const MAX_POINTS: usize = 1_000_000;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let fail = |reason: &str| Error::GridSpec { spec: spec.to_string(), reason: reason.to_string() };
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(fail("empty item"));
        }
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [x] => out.push(number(x).ok_or_else(|| fail("not a number"))?),
            [start, stop, step] => {
                let (a, b, h) = match (number(start), number(stop), number(step)) {
                    (Some(a), Some(b), Some(h)) => (a, b, h),
                    _ => return Err(fail("range bounds and step must be numbers")),
                };
                if h <= 0.0 {
                    return Err(fail("step must be positive"));
                }
                if b < a {
                    return Err(fail("stop lies below start"));
                }
                let n = ((b - a) / h + 0.5).floor() as usize + 1;
                if out.len() + n > MAX_POINTS {
                    return Err(fail("too many points"));
                }
                let places = decimals(start).max(decimals(step));
                out.extend((0..n).map(|k| snap(a + k as f64 * h, places)));
            }
            ["log", start, stop, n] => {
                let (a, b) = match (number(start), number(stop)) {
                    (Some(a), Some(b)) if a > 0.0 && b > 0.0 => (a, b),
                    _ => return Err(fail("log range bounds must be positive numbers")),
                };
                let n: usize = n.parse().map_err(|_| fail("point count must be a positive integer"))?;
                if n == 0 || out.len() + n > MAX_POINTS {
                    return Err(fail("point count out of range"));
                }
                if n == 1 {
                    out.push(a);
                } else {
                    let (la, lb) = (a.ln(), b.ln());
                    out.push(a);
                    out.extend((1..n - 1).map(|k| (la + (lb - la) * k as f64 / (n - 1) as f64).exp()));
                    out.push(b);
                }
            }
            _ => return Err(fail("expected `x`, `start:stop:step` or `log:start:stop:n`")),
        }
    }
    Ok(out)
}

/// Digits after the point of a plain decimal literal; `None` for exponent
/// notation.
fn decimals(s: &str) -> Option<usize> {
    let s = s.trim();
    if s.contains(['e', 'E']) {
        return None;
    }
    Some(s.split_once('.').map_or(0, |(_, frac)| frac.len()))
}

/// Rounds to the precision the grid was written in, so `0.2:4:0.02` yields
/// `1.62` rather than `1.6199999999999999`.
fn snap(x: f64, places: Option<usize>) -> f64 {
    match places {
        Some(p) if p <= 15 => format!("{x:.p$}").parse().unwrap_or(x),
        _ => x,
    }
}

fn number(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|x| x.is_finite())
}
