use proptest::prelude::*;

use qcgirth::alist::{export_alist, import_alist};
use qcgirth::circulant::{circulant_girth, gcd_fullrank_check, shift_equivalent};
use qcgirth::conditions::{check_4cycles, check_6cycles, check_8cycles};
use qcgirth::decode::{bp_decode, fer_error_bars, DecoderConfig};
use qcgirth::families::bresnan::{bresnan_violations, BresnanParams};
use qcgirth::families::build_bresnan;
use qcgirth::oracle::{count_cycles_upto, enumerate_cycles_upto, girth_bfs, girth_upper_bound};
use qcgirth::sparse::gf2_rank;
use qcgirth::{BlockMatrix, CirculantSpec, SparseBinaryMatrix};

fn cell(m: u32) -> impl Strategy<Value = CirculantSpec> {
    (0..3u8, 0..m as i64, 1..m as i64).prop_map(move |(k, a, d)| match k {
        0 => CirculantSpec::zero(m).unwrap(),
        1 => CirculantSpec::weight_one(m, a).unwrap(),
        _ => CirculantSpec::weight_two(m, a, a + d).unwrap(),
    })
}

fn block_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = BlockMatrix> {
    (5..=12u32, 1..=max_r, 1..=max_c).prop_flat_map(|(m, r, c)| {
        prop::collection::vec(prop::collection::vec(cell(m), c), r)
            .prop_map(|g| BlockMatrix::from_grid(g).unwrap())
    })
}

fn sparse(max_rows: usize, max_cols: usize) -> impl Strategy<Value = SparseBinaryMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::btree_set(0..c, 0..=c), r)
            .prop_map(move |rows| SparseBinaryMatrix::from_rows(c, rows.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap())
    })
}

fn weight_two_pair() -> impl Strategy<Value = (u32, i64, i64)> {
    (3..=40u32).prop_flat_map(|m| (Just(m), 0..m as i64, 1..m as i64)).prop_map(|(m, a, d)| (m, a, a + d))
}

fn bresnan_params() -> impl Strategy<Value = BresnanParams> {
    (11..=16u32, 4..=6usize).prop_flat_map(|(m, a)| {
        let pair = (0..m as i64, 1..m as i64).prop_map(|(x, d)| (x, x + d));
        (Just(m), prop::collection::vec(pair.clone(), a), prop::collection::vec(pair, a))
            .prop_map(|(m, p1, p2)| BresnanParams::from_exponents(m, &p1, &p2).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn separation_is_shift_invariant((m, a, b) in weight_two_pair(), k in -100i64..100) {
        let p = CirculantSpec::weight_two(m, a, b).unwrap();
        prop_assert_eq!(p.separation().unwrap(), p.shifted(k).separation().unwrap());
        prop_assert!(shift_equivalent(&p, &p.shifted(k)).unwrap());
    }

    #[test]
    fn shift_equivalence_is_symmetric_and_transitive(
        (m, a, b) in weight_two_pair(), x in 0i64..40, dx in 1i64..40, y in 0i64..40, dy in 1i64..40,
    ) {
        let p = CirculantSpec::weight_two(m, a, b).unwrap();
        let ok = |e: i64, d: i64| (d % m as i64 != 0).then(|| CirculantSpec::weight_two(m, e, e + d).unwrap());
        if let (Some(q), Some(r)) = (ok(x, dx), ok(y, dy)) {
            prop_assert!(shift_equivalent(&p, &p).unwrap());
            prop_assert_eq!(shift_equivalent(&p, &q).unwrap(), shift_equivalent(&q, &p).unwrap());
            if shift_equivalent(&p, &q).unwrap() && shift_equivalent(&q, &r).unwrap() {
                prop_assert!(shift_equivalent(&p, &r).unwrap());
            }
        }
    }

    #[test]
    fn expansion_keeps_weight(spec in (3..=30u32).prop_flat_map(cell)) {
        let h = spec.expand();
        let (rw, cw) = h.row_col_weight_profile();
        prop_assert!(rw.iter().chain(&cw).all(|&w| w == spec.weight()));
    }

    #[test]
    fn circulant_girth_formula((m, a, b) in weight_two_pair()) {
        let p = CirculantSpec::weight_two(m, a, b).unwrap();
        let s = p.separation().unwrap();
        prop_assert_eq!(Some(circulant_girth(m, s).unwrap() as usize), girth_bfs(&p.expand()));
    }

    #[test]
    fn assembled_blocks_expand_in_place(bm in block_matrix(3, 4)) {
        let h = bm.expand();
        let m = bm.m() as usize;
        for (i, row) in bm.grid().iter().enumerate() {
            for (j, spec) in row.iter().enumerate() {
                let local = spec.expand();
                for r in 0..m {
                    let got: Vec<usize> = h.row(i * m + r).iter().filter(|&&c| c / m == j).map(|&c| c - j * m).collect();
                    prop_assert_eq!(got.as_slice(), local.row(r));
                }
            }
        }
    }

    #[test]
    fn alist_round_trip(h in sparse(12, 12)) {
        prop_assert_eq!(import_alist(&export_alist(&h)).unwrap(), h);
    }

    #[test]
    fn json_round_trip(bm in block_matrix(3, 4)) {
        prop_assert_eq!(BlockMatrix::from_json(&bm.to_json().unwrap()).unwrap().expand(), bm.expand());
    }

    #[test]
    fn witnesses_hold(bm in block_matrix(3, 4)) {
        for rep in [check_4cycles(&bm), check_6cycles(&bm), check_8cycles(&bm)] {
            for v in &rep.violations {
                prop_assert!(v.witness.holds(), "{:?}", v);
            }
        }
    }

    #[test]
    fn cycles_use_two_points_per_line(bm in block_matrix(2, 3)) {
        let h = bm.expand();
        for cyc in enumerate_cycles_upto(&h, 8).unwrap() {
            let mut rows = std::collections::BTreeMap::<usize, u32>::new();
            let mut cols = std::collections::BTreeMap::<usize, u32>::new();
            for &(r, c) in &cyc {
                *rows.entry(r).or_default() += 1;
                *cols.entry(c).or_default() += 1;
            }
            prop_assert!(rows.values().chain(cols.values()).all(|&k| k == 2));
            prop_assert_eq!(rows.len() * 2, cyc.len());
        }
        let counts = count_cycles_upto(&h, 8).unwrap();
        let g = girth_bfs(&h);
        match counts.keys().next() {
            Some(&len) => prop_assert_eq!(Some(len), g),
            None => prop_assert!(g.is_none_or(|g| g > 8)),
        }
    }

    #[test]
    fn bresnan_rotation_preserves_conditions(p in bresnan_params(), k in 0usize..6) {
        let q = p.rotated(k);
        prop_assert_eq!(bresnan_violations(&p).is_empty(), bresnan_violations(&q).is_empty());
        prop_assert_eq!(girth_bfs(&build_bresnan(&p).expand()), girth_bfs(&build_bresnan(&q).expand()));
    }

    #[test]
    fn error_bars_match_formula(n in 1u64..1_000_000, k in 1u64..1000) {
        prop_assume!(k <= n);
        let (p, m) = fer_error_bars(n, k).unwrap();
        let (nf, kf) = (n as f64, k as f64);
        let w = ((nf - kf) / (nf * kf)).sqrt();
        prop_assert!((p - kf / nf * w.exp()).abs() <= 1e-12 * p);
        prop_assert!((m - kf / nf * (-w).exp()).abs() <= 1e-12 * p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn converged_decode_has_zero_syndrome(p in bresnan_params(), llr in prop::collection::vec(-4.0f64..4.0, 96)) {
        let h = build_bresnan(&p).expand();
        let n = h.n_cols();
        let llr: Vec<f64> = llr.iter().cycle().take(n).enumerate().map(|(i, x)| x + 0.5 + (i % 3) as f64).collect();
        let cfg = DecoderConfig::default();
        let r = bp_decode(&h, &llr, &cfg).unwrap();
        if r.converged {
            prop_assert!(h.syndrome(&r.bits).iter().all(|&x| x == 0));
        }
        prop_assert!(r.iterations >= 1 && r.iterations <= cfg.max_iterations);
        prop_assert_eq!(r, bp_decode(&h, &llr, &cfg).unwrap());
    }

    #[test]
    fn full_rank_bresnan_has_design_rate(p in bresnan_params()) {
        let bm = build_bresnan(&p);
        if gcd_fullrank_check(p.p1()).unwrap() {
            let h = bm.expand();
            let k = h.n_cols() - gf2_rank(&h);
            prop_assert_eq!(k as f64 / h.n_cols() as f64, bm.designed_rate().unwrap());
        }
    }

    #[test]
    fn girth_respects_upper_bound(p in bresnan_params()) {
        let h = build_bresnan(&p).expand();
        let (c, s) = h.regularity().unwrap();
        let bound = girth_upper_bound(c as u64, s as u64, h.n_rows() as u64).unwrap();
        prop_assert!(girth_bfs(&h).is_none_or(|g| g as u64 <= bound));
    }
}
