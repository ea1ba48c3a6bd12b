//! Lawson–Hanson active-set solver for `min ‖Ax − b‖, x ≥ 0` with a
//! 16-row dense matrix and many columns.

pub(crate) const ROWS: usize = 16;

pub(crate) type Column = [f64; ROWS];

pub(crate) struct NnlsResult {
    pub coefficients: Vec<f64>,
}

fn dot(x: &Column, y: &Column) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Least squares on the columns in `set` by Householder QR. Columns that are
/// numerically dependent on earlier ones get coefficient zero.
fn least_squares(columns: &[Column], set: &[usize], b: &Column) -> Vec<f64> {
    let p = set.len();
    let mut a: Vec<Column> = set.iter().map(|&j| columns[j]).collect();
    let mut rhs = *b;
    let mut pivots: Vec<Option<usize>> = vec![None; p];
    let mut row = 0;
    for (col, pivot) in pivots.iter_mut().enumerate() {
        if row == ROWS {
            break;
        }
        let norm = a[col][row..].iter().map(|v| v * v).sum::<f64>().sqrt();
        let full = a[col].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 1e-12 * full.max(1e-300) {
            continue;
        }
        let alpha = if a[col][row] > 0.0 { -norm } else { norm };
        let mut v = [0.0; ROWS];
        v[row..].copy_from_slice(&a[col][row..]);
        v[row] -= alpha;
        let vv = dot(&v, &v);
        if vv > 0.0 {
            for c in a.iter_mut().skip(col) {
                let f = 2.0 * dot(&v, c) / vv;
                for k in row..ROWS {
                    c[k] -= f * v[k];
                }
            }
            let f = 2.0 * dot(&v, &rhs) / vv;
            for k in row..ROWS {
                rhs[k] -= f * v[k];
            }
        }
        *pivot = Some(row);
        row += 1;
    }
    let mut x = vec![0.0; p];
    for col in (0..p).rev() {
        if let Some(r) = pivots[col] {
            let mut s = rhs[r];
            for c in col + 1..p {
                s -= a[c][r] * x[c];
            }
            x[col] = s / a[col][r];
        }
    }
    x
}

fn residual_vector(columns: &[Column], x: &[f64], b: &Column) -> Column {
    let mut r = *b;
    for (j, &xj) in x.iter().enumerate() {
        if xj != 0.0 {
            for k in 0..ROWS {
                r[k] -= xj * columns[j][k];
            }
        }
    }
    r
}

pub(crate) fn nnls(columns: &[Column], b: &Column, threshold: f64, max_iter: usize) -> NnlsResult {
    let n = columns.len();
    let mut x = vec![0.0; n];
    let mut passive: Vec<usize> = Vec::new();
    let mut in_passive = vec![false; n];
    let mut excluded = vec![false; n];
    let mut iterations = 0;
    let scale = dot(b, b).sqrt().max(f64::MIN_POSITIVE);
    loop {
        let r = residual_vector(columns, &x, b);
        if dot(&r, &r).sqrt() <= threshold * scale * 1e-3 {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if in_passive[j] || excluded[j] {
                continue;
            }
            let w = dot(&columns[j], &r);
            if w > threshold * scale && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((j, w));
            }
        }
        let Some((j, _)) = best else { break };
        if iterations >= max_iter {
            break;
        }
        iterations += 1;
        passive.push(j);
        in_passive[j] = true;
        let mut entered = true;
        loop {
            let s = least_squares(columns, &passive, b);
            if entered && s.last().is_some_and(|&v| v <= 0.0) {
                // the entering column cannot improve the fit
                passive.pop();
                in_passive[j] = false;
                excluded[j] = true;
                break;
            }
            entered = false;
            if s.iter().all(|&v| v > 0.0) {
                for (&k, &v) in passive.iter().zip(&s) {
                    x[k] = v;
                }
                excluded.iter_mut().for_each(|e| *e = false);
                break;
            }
            let mut alpha = f64::INFINITY;
            for (&k, &v) in passive.iter().zip(&s) {
                if v <= 0.0 {
                    let t = x[k] / (x[k] - v);
                    alpha = alpha.min(t);
                }
            }
            for (&k, &v) in passive.iter().zip(&s) {
                x[k] += alpha * (v - x[k]);
            }
            let mut kept = Vec::with_capacity(passive.len());
            for &k in &passive {
                if x[k] > 1e-15 * scale {
                    kept.push(k);
                } else {
                    x[k] = 0.0;
                    in_passive[k] = false;
                }
            }
            passive = kept;
            iterations += 1;
            if passive.is_empty() || iterations >= max_iter {
                break;
            }
        }
    }
    NnlsResult { coefficients: x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(cols: &[Column], res: &NnlsResult, b: &Column) -> f64 {
        let r = residual_vector(cols, &res.coefficients, b);
        dot(&r, &r).sqrt()
    }

    fn unit(k: usize) -> Column {
        let mut c = [0.0; ROWS];
        c[k] = 1.0;
        c
    }

    #[test]
    fn recovers_nonnegative_combination() {
        let mut cols: Vec<Column> = (0..ROWS).map(unit).collect();
        let mut mix = [0.0; ROWS];
        mix[0] = 0.6;
        mix[1] = 0.8;
        cols.push(mix);
        let mut b = [0.0; ROWS];
        b[0] = 3.0;
        b[1] = 4.0;
        b[5] = 1.0;
        let res = nnls(&cols, &b, 1e-10, 10_000);
        assert!(residual(&cols, &res, &b) < 1e-12);
        assert!(res.coefficients.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn negative_target_is_projected_to_zero() {
        let cols: Vec<Column> = (0..ROWS).map(unit).collect();
        let mut b = [0.0; ROWS];
        b[2] = -1.0;
        b[3] = 2.0;
        let res = nnls(&cols, &b, 1e-10, 10_000);
        assert_eq!(res.coefficients[2], 0.0);
        assert!((res.coefficients[3] - 2.0).abs() < 1e-14);
        assert!((residual(&cols, &res, &b) - 1.0).abs() < 1e-14);
    }
}
