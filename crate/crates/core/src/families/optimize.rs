use super::{
    selectswap_bounds, structural_counts, Family, FamilyConfig, FamilyError, SelectSwapMode,
};

/// λ minimizing the SelectSwap T-count bound, smallest on ties.
///
/// Every λ is a candidate; the scan stops once the `λ`-linear term alone
/// reaches the best total, after which no larger λ can win.
pub fn optimal_lambda(cells: u64, b: u64, mode: SelectSwapMode) -> Result<(u64, u64), FamilyError> {
    let mut best = (1, selectswap_bounds(cells, b, 1, mode)?.t_count);
    let slope = match mode {
        SelectSwapMode::Clean => 8 * b,
        SelectSwapMode::Dirty => 32 * b,
    };
    for lambda in 2..=cells {
        if slope.saturating_mul(lambda) >= best.1 {
            break;
        }
        let tc = selectswap_bounds(cells, b, lambda, mode)?.t_count;
        if tc < best.1 {
            best = (lambda, tc);
        }
    }
    Ok(best)
}

/// Split minimizing `N_Q · T_d` of the fully parallel hybrid, smallest on ties.
pub fn optimal_k(n: u32, q: u32) -> Result<u32, FamilyError> {
    if n < 7 {
        return Err(FamilyError::SplitRange { n, k: 4 });
    }
    let mut best: Option<(u128, u32)> = None;
    for k in 4..=n - 3 {
        let c = structural_counts(&FamilyConfig::new(Family::HybridParallel, n).with_q(q).with_k(k))?;
        let cost = c.logical_qubits as u128 * c.t_depth as u128;
        if best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, k));
        }
    }
    Ok(best.expect("non-empty range").1)
}

/// Largest `q` for which large-depth has a lower rough cost than
/// bb-parallel, or −1 if there is none.
pub fn find_crossover_q(n: u32) -> i64 {
    let nn = n as u128;
    let Some(bb) = 1u128.checked_shl(n).map(|big| 8 * big * (2 * nn - 1)) else {
        return -1;
    };
    let mut best = -1;
    for q in 0..n {
        // N_Q = 2n, T_d = 2^(q+2)(n − 2)
        let ld = 2 * nn * (1u128 << (q + 2)) * nn.saturating_sub(2);
        if ld < bb {
            best = q as i64;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_brute_force() {
        assert_eq!(optimal_lambda(1024, 1, SelectSwapMode::Clean).unwrap(), (21, 364));
        assert_eq!(optimal_lambda(1, 1, SelectSwapMode::Clean).unwrap().0, 1);
        let (l, _) = optimal_lambda(1 << 36, 1, SelectSwapMode::Clean).unwrap();
        assert!((l as f64 / 2f64.powi(35).sqrt() - 1.0).abs() < 0.01, "{l}");
    }

    #[test]
    fn crossover_points() {
        assert_eq!(find_crossover_q(36), 31);
        assert_eq!(find_crossover_q(15), 12);
    }
}
