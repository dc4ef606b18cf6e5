//! Limited-memory BFGS with Armijo backtracking.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy)]
pub(crate) struct LbfgsOptions {
    pub memory: usize,
    pub max_iter: usize,
    /// Stop when the value improved by less than `rel_tol·|f|` over the last
    /// `window` iterations.
    pub rel_tol: f64,
    pub window: usize,
    /// Stop as soon as the value drops below this.
    pub target: f64,
    pub grad_tol: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct LbfgsOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

const MAX_HALVINGS: usize = 24;
const ROUNDOFF: f64 = 1e-15;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn minimize<F>(mut eval: F, x0: Vec<f64>, opts: &LbfgsOptions) -> LbfgsOutcome
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x = x0;
    let mut g = vec![0.0; n];
    let mut f = eval(&x, &mut g);
    let mut history = vec![f];
    let mut pairs: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut x_new = vec![0.0; n];
    let mut g_new = vec![0.0; n];

    for it in 0..opts.max_iter {
        let gn = norm(&g);
        if !f.is_finite() {
            return LbfgsOutcome { x, f, grad_norm: gn, iterations: it, converged: false };
        }
        if f < opts.target || gn < opts.grad_tol {
            return LbfgsOutcome { x, f, grad_norm: gn, iterations: it, converged: true };
        }
        if history.len() > opts.window {
            let old = history[history.len() - 1 - opts.window];
            if old - f <= opts.rel_tol * f.abs().max(1e-300) {
                return LbfgsOutcome { x, f, grad_norm: gn, iterations: it, converged: true };
            }
        }

        let mut accepted = false;
        for attempt in 0..2 {
            if attempt == 1 {
                if pairs.is_empty() {
                    break;
                }
                pairs.clear();
            }
            let d = direction(&g, &pairs);
            let slope = dot(&d, &g);
            if slope >= 0.0 {
                pairs.clear();
                continue;
            }
            if -slope < ROUNDOFF * f.abs().max(1.0) {
                // predicted decrease is below the resolution of f
                return LbfgsOutcome { x, f, grad_norm: gn, iterations: it, converged: true };
            }
            let mut step = if pairs.is_empty() { 1.0 / gn.max(1.0) } else { 1.0 };
            for _ in 0..MAX_HALVINGS {
                for i in 0..n {
                    x_new[i] = x[i] + step * d[i];
                }
                let f_new = eval(&x_new, &mut g_new);
                if f_new.is_finite() && f_new <= f + 1e-4 * step * slope {
                    let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
                    let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
                    let sy = dot(&s, &y);
                    if sy > 1e-12 * norm(&s) * norm(&y) && sy > 0.0 {
                        if pairs.len() == opts.memory {
                            pairs.pop_front();
                        }
                        pairs.push_back((s, y, 1.0 / sy));
                    }
                    std::mem::swap(&mut x, &mut x_new);
                    std::mem::swap(&mut g, &mut g_new);
                    f = f_new;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if accepted {
                break;
            }
        }
        history.push(f);
        if !accepted {
            // no descent possible at floating-point resolution
            return LbfgsOutcome { x, f, grad_norm: norm(&g), iterations: it + 1, converged: true };
        }
    }
    let gn = norm(&g);
    LbfgsOutcome { x, f, grad_norm: gn, iterations: opts.max_iter, converged: false }
}

fn direction(g: &[f64], pairs: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q: Vec<f64> = g.to_vec();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y, rho) in pairs.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    if let Some((s, y, _)) = pairs.back() {
        let gamma = dot(s, y) / dot(y, y);
        for qi in q.iter_mut() {
            *qi *= gamma;
        }
    }
    for ((s, y, rho), a) in pairs.iter().zip(alphas.iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter().map(|x| -x).collect()
}
