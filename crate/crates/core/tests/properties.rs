use minimax_core::signals::{
    detect_crossings, detect_spindle, extract_extrema, CrossingKind, CrossingSign, SpindleConfig,
};
use minimax_core::*;
use proptest::prelude::*;

const TIGHT: f64 = 1e-12;
const ORACLE: f64 = 1e-10;

/// Log-uniform positive prices spanning several decades.
fn prices(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-4.0f64..4.0, 2..=max_len)
        .prop_map(|v| v.into_iter().map(f64::exp).collect())
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Up), Just(Direction::Down)]
}

fn series(v: Vec<f64>) -> PriceSeries {
    PriceSeries::new(v).unwrap()
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) -> std::result::Result<(), TestCaseError> {
    prop_assert_eq!(a.len(), b.len());
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        prop_assert!((x - y).abs() <= tol, "position {}: {} vs {}", i, x, y);
    }
    Ok(())
}

fn strict_maxima(w: &[f64]) -> Vec<usize> {
    (1..w.len().saturating_sub(1))
        .filter(|&i| w[i - 1] < w[i] && w[i] > w[i + 1])
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relative_difference_bounded_and_antisymmetric(a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
        let r = relative_difference(a, b).unwrap();
        prop_assert!(r > -2.0 && r < 2.0);
        prop_assert_eq!(r, -relative_difference(b, a).unwrap());
        let inv = relative_difference(1.0 / a, 1.0 / b).unwrap();
        prop_assert!((inv + r).abs() < TIGHT);
    }

    #[test]
    fn tunneling_and_transitions_bounded(v in prices(60), m in 1usize..12, dir in direction()) {
        let s = series(v);
        let p = IndicatorParams::new(m, dir).unwrap();
        let cap = m as f64 * 2f64.exp();
        for i in 0..s.len() {
            let w = tunneling_weights(&s, i, &p).unwrap();
            prop_assert!(w.q_next >= 0.0 && w.q_prev >= 0.0);
            prop_assert!(w.q_next + w.q_prev > 0.0);
            prop_assert!(w.q_next <= cap && w.q_prev <= cap);
            let t = transition_probabilities(w).unwrap();
            prop_assert!((0.0..=1.0).contains(&t.p_next) && (0.0..=1.0).contains(&t.p_prev));
            prop_assert!((t.p_next + t.p_prev - 1.0).abs() < TIGHT);
        }
    }

    #[test]
    fn normalized_and_positive(v in prices(400), m in 1usize..32, dir in direction()) {
        let mm = minimax(&series(v), &IndicatorParams::new(m, dir).unwrap());
        let total: f64 = mm.weights().iter().sum();
        prop_assert!((total - 1.0).abs() < TIGHT);
        prop_assert!(mm.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn log_weights_start_at_zero(v in prices(100), m in 1usize..10, dir in direction()) {
        let lw = accumulate_log_weights(&series(v.clone()), &IndicatorParams::new(m, dir).unwrap());
        prop_assert_eq!(lw.len(), v.len());
        prop_assert_eq!(lw.as_slice()[0], 0.0);
        prop_assert!(lw.as_slice().iter().all(|x| x.is_finite()));
    }

    #[test]
    fn scale_invariant(v in prices(200), m in 1usize..20, dir in direction(), log_c in -13.8f64..13.8) {
        let c = log_c.exp();
        let p = IndicatorParams::new(m, dir).unwrap();
        let base = minimax(&series(v.clone()), &p);
        let scaled = minimax(&series(v.iter().map(|x| x * c).collect()), &p);
        assert_close(base.weights(), scaled.weights(), TIGHT)?;
    }

    #[test]
    fn down_is_up_of_reciprocal(v in prices(200), m in 1usize..20) {
        let down = minimax(&series(v.clone()), &IndicatorParams::down(m).unwrap());
        let up = minimax(&series(v.iter().map(|x| 1.0 / x).collect()), &IndicatorParams::up(m).unwrap());
        assert_close(down.weights(), up.weights(), TIGHT)?;
    }

    #[test]
    fn time_reversal(v in prices(200), m in 1usize..20, dir in direction()) {
        let p = IndicatorParams::new(m, dir).unwrap();
        let fwd = minimax(&series(v.clone()), &p);
        let rev = minimax(&series(v.iter().rev().copied().collect()), &p);
        let mut back = rev.into_weights();
        back.reverse();
        assert_close(fwd.weights(), &back, TIGHT)?;
    }

    #[test]
    fn matches_linear_oracle(v in prices(200), m in 1usize..=20, dir in direction()) {
        let s = series(v);
        let p = IndicatorParams::new(m, dir).unwrap();
        if let Ok(oracle) = reference_minimax(&s, &p) {
            assert_close(minimax(&s, &p).weights(), oracle.weights(), ORACLE)?;
        }
    }

    /// On an increasing series the up weights rise over the first n − m
    /// samples; the last m lose forward neighbours and may dip.
    #[test]
    fn increasing_series_grows_before_edge(
        steps in prop::collection::vec(1e-4f64..0.5, 2..80),
        m in 1usize..12,
    ) {
        let mut v = vec![1.0];
        for s in steps {
            v.push(v[v.len() - 1] * (1.0 + s));
        }
        let n = v.len();
        let s = series(v);
        let up = minimax(&s, &IndicatorParams::up(m).unwrap());
        let down = minimax(&s, &IndicatorParams::down(m).unwrap());
        let stop = n.saturating_sub(m);
        for i in 0..stop.saturating_sub(1) {
            prop_assert!(up.weights()[i] < up.weights()[i + 1], "up at {}", i);
        }
        // Mirror image for the down curve.
        for i in m.min(n - 1)..n - 1 {
            prop_assert!(down.weights()[i] > down.weights()[i + 1], "down at {}", i);
        }
    }

    #[test]
    fn rolling_windows_equal_slices(v in prices(120), window in 2usize..30, hop in 1usize..8, m in 1usize..8) {
        prop_assume!(v.len() >= window);
        let s = series(v.clone());
        let p = IndicatorParams::up(m).unwrap();
        let cfg = RollingConfig::new(window, hop, p).unwrap();
        let r = rolling_minimax(&s, &cfg).unwrap();
        prop_assert_eq!(r.windows.len(), (v.len() - window) / hop + 1);
        for w in &r.windows {
            let slice = series(v[w.start..=w.end].to_vec());
            prop_assert_eq!(&w.minimax, &minimax(&slice, &p));
        }
    }

    #[test]
    fn stream_matches_batch(v in prices(150), window in 2usize..24, m in 1usize..10, dir in direction()) {
        let p = IndicatorParams::new(m, dir).unwrap();
        let mut st = StreamState::new(window, p).unwrap();
        for (i, &x) in v.iter().enumerate() {
            st.push(x).unwrap();
            prop_assert!(st.last_recomputed() <= 2 * m + 2);
            if i + 1 < window {
                prop_assert!(st.query().is_err());
            } else {
                let batch = minimax(&series(v[i + 1 - window..=i].to_vec()), &p);
                assert_close(st.query().unwrap().weights(), batch.weights(), ORACLE)?;
            }
        }
    }

    #[test]
    fn crossings_alternate_and_flip(v in prices(120), m in 1usize..6, period in 2usize..8) {
        prop_assume!(v.len() > period + 1);
        let s = series(v);
        let avg = signals::simple_moving_average(&s, period).unwrap();
        let price = s.slice(period - 1, avg.len()).unwrap();
        let p = IndicatorParams::up(m).unwrap();
        let (a, b) = (minimax(&price, &p), minimax(&avg, &p));
        let ab = detect_crossings(&a, &b, CrossingKind::Resistance).unwrap();
        let ba = detect_crossings(&b, &a, CrossingKind::Resistance).unwrap();
        prop_assert_eq!(ab.len(), ba.len());
        for (x, y) in ab.iter().zip(&ba) {
            prop_assert!((x.index - y.index).abs() < TIGHT);
            prop_assert_eq!(x.sign, y.sign.flipped());
        }
        for pair in ab.windows(2) {
            prop_assert!(pair[0].index < pair[1].index);
            prop_assert_ne!(pair[0].sign, pair[1].sign);
        }
        let ups = ab.iter().filter(|e| e.sign == CrossingSign::UpThrough).count() as i64;
        prop_assert!((2 * ups - ab.len() as i64).abs() <= 1);
    }

    #[test]
    fn extrema_match_neighbour_scan(v in prices(150), m in 1usize..8, dir in direction()) {
        let mm = minimax(&series(v), &IndicatorParams::new(m, dir).unwrap());
        let found: Vec<usize> = extract_extrema(&mm, 0.0).unwrap().iter().map(|e| e.index).collect();
        prop_assert_eq!(found, strict_maxima(mm.weights()));
    }

    #[test]
    fn spindles_disjoint_and_maximal(v in prices(150), m in 1usize..8, band in 0.05f64..3.0) {
        let s = series(v);
        let u = minimax(&s, &IndicatorParams::up(m).unwrap());
        let d = minimax(&s, &IndicatorParams::down(m).unwrap());
        let cfg = SpindleConfig { band, min_len: 2, min_crossings: 1 };
        let found = detect_spindle(&u, &d, &cfg).unwrap();
        let n = u.len();
        let limit = band / n as f64;
        let inside = |i: usize| (u.weights()[i] - d.weights()[i]).abs() <= limit;
        for pair in found.windows(2) {
            prop_assert!(pair[0].end_index < pair[1].start_index);
        }
        for iv in &found {
            prop_assert!(iv.start_index < iv.end_index);
            prop_assert!((0.0..=1.0).contains(&iv.score));
            prop_assert!((iv.start_index..=iv.end_index).all(inside));
            prop_assert!(iv.start_index == 0 || !inside(iv.start_index - 1));
            prop_assert!(iv.end_index + 1 == n || !inside(iv.end_index + 1));
        }
    }

    #[test]
    fn pipeline_deterministic(v in prices(100), m in 1usize..6, period in 1usize..6) {
        prop_assume!(v.len() > period + 1);
        let s = series(v);
        let a = signals::support_resistance_pipeline(&s, m, period).unwrap();
        let b = signals::support_resistance_pipeline(&s, m, period).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn shuffled_series_differs() {
    let p = IndicatorParams::up(3).unwrap();
    let v = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
    let shuffled = vec![4.0, 1.0, 7.0, 3.0, 6.0, 2.0, 5.0];
    let a = minimax(&series(v), &p);
    let b = minimax(&series(shuffled), &p);
    assert!(a
        .weights()
        .iter()
        .zip(b.weights())
        .any(|(x, y)| (x - y).abs() > 1e-3));
}
