//! Paired comparisons and rank aggregation.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::{Error, Result};

/// One-sided paired t-test of `mean(a) > mean(b)`; returns the p-value.
///
/// When the differences have zero variance the statistic is undefined and
/// the p-value is taken as 0, 1 or 0.5 for a positive, negative or zero
/// mean difference.
pub fn paired_t_test_one_sided(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "paired samples differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::invalid("a paired t-test needs at least 2 pairs"));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    if var == 0.0 {
        return Ok(if mean > 0.0 {
            0.0
        } else if mean < 0.0 {
            1.0
        } else {
            0.5
        });
    }
    let t = mean / (var.sqrt() / (n as f64).sqrt());
    let dist = StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .map_err(|e| Error::numerical(format!("t distribution: {e}")))?;
    Ok(dist.sf(t))
}

/// Borda aggregation. `scores[m][d]` is the score of method `m` on dataset
/// `d`, higher is better. On each dataset the best of `k` methods earns `k`
/// points and the worst 1; tied methods share the mean of the points of
/// the positions they span. Returns `(method index, rating)` in decreasing
/// rating order, ties kept in input order.
pub fn borda_ranking(scores: &[Vec<Option<f64>>]) -> Result<Vec<(usize, f64)>> {
    let k = scores.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let d = scores[0].len();
    if scores.iter().any(|row| row.len() != d) {
        return Err(Error::invalid("every method needs a score for every dataset"));
    }
    let mut ratings = vec![0.0; k];
    for ds in 0..d {
        let mut column = Vec::with_capacity(k);
        for (m, row) in scores.iter().enumerate() {
            match row[ds] {
                Some(v) if v.is_finite() => column.push((m, v)),
                _ => {
                    return Err(Error::invalid(format!(
                        "missing score for method {m} on dataset {ds}"
                    )))
                }
            }
        }
        column.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap());
        let mut start = 0;
        while start < k {
            let mut end = start + 1;
            while end < k && column[end].1 == column[start].1 {
                end += 1;
            }
            // positions start..end earn k - start down to k - end + 1
            let points = (k - start + k - end + 1) as f64 / 2.0;
            for &(m, _) in &column[start..end] {
                ratings[m] += points;
            }
            start = end;
        }
    }
    let mut ranked: Vec<(usize, f64)> = ratings.into_iter().enumerate().collect();
    ranked.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap().then(x.0.cmp(&y.0)));
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Upper tail of Student's t by Simpson quadrature of the density over
    /// [0, t]; the normalizing Gamma ratio is built by recurrence from
    /// Gamma(1/2) and Gamma(1).
    fn reference_sf(t: f64, nu: usize) -> f64 {
        let gamma_half = |k: usize| -> f64 {
            // Gamma(k / 2)
            let mut g = if k % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() };
            let mut x = if k % 2 == 0 { 1.0 } else { 0.5 };
            while x < k as f64 / 2.0 - 1e-12 {
                g *= x;
                x += 1.0;
            }
            g
        };
        let nu_f = nu as f64;
        let c = gamma_half(nu + 1) / (gamma_half(nu) * (nu_f * std::f64::consts::PI).sqrt());
        let f = |x: f64| c * (1.0 + x * x / nu_f).powf(-(nu_f + 1.0) / 2.0);
        let steps = 200_000;
        let h = t.abs() / steps as f64;
        let mut s = f(0.0) + f(t.abs());
        for i in 1..steps {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        let half = s * h / 3.0;
        if t >= 0.0 {
            0.5 - half
        } else {
            0.5 + half
        }
    }

    #[test]
    fn hand_computed_example() {
        let p = paired_t_test_one_sided(&[3.0, 4.0, 5.0], &[1.0, 2.0, 4.0]).unwrap();
        // t = 5 on 2 degrees of freedom: p = (1 - 5 / sqrt(27)) / 2
        let exact = 0.5 * (1.0 - 5.0 / 27f64.sqrt());
        assert!((p - exact).abs() <= 1e-12);
        assert!((p - 0.0189).abs() < 1e-4);
    }

    #[test]
    fn degenerate_variance_conventions() {
        let a: Vec<f64> = (0..20).map(|i| i as f64).collect();
        assert_eq!(paired_t_test_one_sided(&a, &a).unwrap(), 0.5);
        let shifted: Vec<f64> = a.iter().map(|v| v - 1.0).collect();
        assert_eq!(paired_t_test_one_sided(&a, &shifted).unwrap(), 0.0);
        assert_eq!(paired_t_test_one_sided(&shifted, &a).unwrap(), 1.0);
        assert_eq!(paired_t_test_one_sided(&[3.0, 4.0, 5.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
        assert!(paired_t_test_one_sided(&[1.0], &[0.0]).is_err());
        assert!(paired_t_test_one_sided(&[1.0, 2.0], &[0.0]).is_err());
    }

    #[test]
    fn agrees_with_quadrature_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..25);
            let shift = rng.gen_range(-1.0..1.0);
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let b: Vec<f64> = a.iter().map(|v| v - shift + rng.gen_range(-1.0..1.0)).collect();
            let d: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let mean = d.iter().sum::<f64>() / n as f64;
            let sd = (d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
            let t = mean / (sd / (n as f64).sqrt());
            let p = paired_t_test_one_sided(&a, &b).unwrap();
            assert!((p - reference_sf(t, n - 1)).abs() <= 1e-9, "n={n} t={t}");
        }
    }

    #[test]
    fn borda_examples() {
        let two = vec![vec![Some(0.9), Some(0.8), Some(0.7)], vec![Some(0.1), Some(0.2), Some(0.3)]];
        assert_eq!(borda_ranking(&two).unwrap(), vec![(0, 6.0), (1, 3.0)]);

        let eight: Vec<Vec<Option<f64>>> = (0..8).map(|m| vec![Some(m as f64)]).collect();
        let r = borda_ranking(&eight).unwrap();
        assert_eq!(r[0], (7, 8.0));
        assert_eq!(r[7], (0, 1.0));

        let mut tied = eight.clone();
        tied[6] = vec![Some(7.0)];
        let r = borda_ranking(&tied).unwrap();
        assert_eq!(&r[..2], &[(6, 7.5), (7, 7.5)]);
        assert_eq!(r[2], (5, 6.0));

        let missing = vec![vec![Some(1.0)], vec![None]];
        assert!(borda_ranking(&missing).is_err());
    }

    #[test]
    fn borda_totals() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let k = rng.gen_range(1..9);
            let d = rng.gen_range(1..6);
            // Coarse scores so that ties happen.
            let scores: Vec<Vec<Option<f64>>> = (0..k)
                .map(|_| (0..d).map(|_| Some(rng.gen_range(0..4) as f64)).collect())
                .collect();
            let total: f64 = borda_ranking(&scores).unwrap().iter().map(|r| r.1).sum();
            assert_eq!(total, (d * k * (k + 1)) as f64 / 2.0);
        }
    }
}
