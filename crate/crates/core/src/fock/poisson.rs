//! Poisson number statistics of coherent light.

/// `ln n!` for `n = 0..=max`.
pub fn ln_factorials(max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = 0.0f64;
    out.push(0.0);
    for k in 1..=max {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

pub fn ln_pmf(nbar: f64, n: usize, ln_fact_n: f64) -> f64 {
    if nbar == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -nbar + n as f64 * nbar.ln() - ln_fact_n
}

/// `e^{-nbar} nbar^n / n!` for `n = 0..=cutoff`.
pub fn pmf(nbar: f64, cutoff: usize) -> Vec<f64> {
    let lf = ln_factorials(cutoff);
    (0..=cutoff).map(|n| ln_pmf(nbar, n, lf[n]).exp()).collect()
}

/// Probability mass strictly above `cutoff`, summed directly rather than
/// as `1 - Σ p_n` so that tiny tails are not lost to cancellation.
pub fn tail(nbar: f64, cutoff: usize) -> f64 {
    if nbar == 0.0 {
        return 0.0;
    }
    let start = cutoff + 1;
    let lf: f64 = (1..=start).map(|k| (k as f64).ln()).sum();
    let mut term = ln_pmf(nbar, start, lf).exp();
    let mut sum = 0.0;
    let mut n = start;
    loop {
        sum += term;
        n += 1;
        term *= nbar / n as f64;
        if term == 0.0 || (n as f64 > nbar && term < sum * 1e-17) {
            break;
        }
    }
    sum
}

/// Smallest cutoff whose Poisson tail is below `tol`.
pub fn min_cutoff(nbar: f64, tol: f64) -> usize {
    let mut c = nbar.floor() as usize;
    while tail(nbar, c) >= tol {
        c += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_at_unit_mean() {
        let p = pmf(1.0, 10);
        assert!((p[0] - (-1.0f64).exp()).abs() < 1e-15);
        assert!((p[0] - 0.36787944117144233).abs() < 1e-15);
        assert!((p[3] - (-1.0f64).exp() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn tail_plus_body_is_one() {
        for &nbar in &[0.25, 1.0, 4.0, 17.0] {
            let c = 12;
            let body: f64 = pmf(nbar, c).iter().sum();
            assert!((body + tail(nbar, c) - 1.0).abs() < 1e-13, "nbar {nbar}");
        }
    }

    #[test]
    fn min_cutoff_meets_tolerance() {
        for &nbar in &[0.0, 1.0, 4.0, 16.0, 257.0] {
            let c = min_cutoff(nbar, 1e-12);
            assert!(tail(nbar, c) < 1e-12);
            if c > 0 {
                assert!(tail(nbar, c - 1) >= 1e-12);
            }
        }
    }
}
