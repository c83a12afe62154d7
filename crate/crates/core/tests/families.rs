use qcgirth::circulant::gcd_fullrank_check;
use qcgirth::error::Error;
use qcgirth::families::bresnan::{bresnan_count, bresnan_count_bruteforce4, bresnan_enumerate, bresnan_sample};
use qcgirth::families::reg36::class_e_violations;
use qcgirth::families::search::{local_search, Offsets};
use qcgirth::families::*;
use qcgirth::oracle::girth_bfs;
use qcgirth::sparse::gf2_rank;
use qcgirth::CirculantSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn reg36_offsets() -> Offsets {
    Offsets { delta: None, delta2: Some(4), delta3: Some(15) }
}

#[test]
fn bresnan_layout_and_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let FamilyParams::Bresnan(p) = search::draw(Family::Bresnan, 11, 5, Offsets::default(), &mut rng).unwrap() else {
        unreachable!()
    };
    let bm = build_bresnan(&p);
    assert_eq!((bm.block_rows(), bm.block_cols()), (5, 10));
    assert_eq!(bm.expand().regularity(), Some((3, 6)));
    for i in 0..5 {
        assert_eq!(bm.block(i, i), &p.p1()[i]);
        assert_eq!(bm.block(i, (i + 4) % 5), &CirculantSpec::identity(11).unwrap());
        assert_eq!(bm.block(i, 5 + i), &p.p2()[i]);
        assert_eq!(bm.block(i, 5 + (i + 1) % 5), &CirculantSpec::identity(11).unwrap());
    }
    let short: Vec<_> = p.p1()[..3].to_vec();
    assert!(BresnanParams::new(11, short.clone(), short).is_err());
}

#[test]
fn bresnan_half_separation_fails() {
    let p1 = [(0, 7), (0, 1), (0, 2), (0, 3)];
    let p2 = [(0, 4), (0, 5), (0, 6), (0, 1)];
    let p = BresnanParams::from_exponents(14, &p1, &p2).unwrap();
    assert!(!bresnan_check(&p));
}

#[test]
fn bresnan_no_solutions_up_to_twelve() {
    for m in 4..=12 {
        assert_eq!(bresnan_count(m, 4).unwrap().tuples, 0, "m = {m}");
    }
    assert_eq!(bresnan_count(13, 5).unwrap().tuples, 0);
    let err = search::random_search(Family::Bresnan, 10, 4, Offsets::default(), 1, 2000).unwrap_err();
    assert!(matches!(err, Error::BudgetExhausted(2000)));
}

#[test]
fn bresnan_count_matches_bruteforce_and_enumeration() {
    for m in [11, 12, 13, 14] {
        assert_eq!(bresnan_count(m, 4).unwrap().tuples, bresnan_count_bruteforce4(m), "m = {m}");
    }
    let c = bresnan_count(13, 4).unwrap();
    assert_eq!(c.tuples, 6_169_176);
    assert_eq!(c.shift_classes * 13u128.pow(3), c.tuples);
    let mut checked = 0;
    let n = bresnan_enumerate(13, 4, &mut |p| {
        if checked < 2000 {
            assert!(bresnan_check(p));
            checked += 1;
        }
        true
    })
    .unwrap();
    assert_eq!(n as u128, c.tuples);
}

#[test]
fn bresnan_samples_have_girth_eight() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in [13, 14] {
        for _ in 0..6 {
            let p = bresnan_sample(m, 4, &mut rng).unwrap().unwrap();
            assert!(bresnan_check(&p));
            assert!(bresnan_check(&p.rotated(1)));
            assert!(girth_bfs(&build_bresnan(&p).expand()).unwrap() >= 8);
        }
    }
    assert!(bresnan_sample(12, 4, &mut rng).unwrap().is_none());
}

#[test]
fn bresnan_check_agrees_with_girth_near_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut rejected = 0;
    for _ in 0..10 {
        let base = bresnan_sample(13, 4, &mut rng).unwrap().unwrap();
        for _ in 0..10 {
            let mut q = base.clone();
            q.mutate(&mut rng);
            let g = girth_bfs(&build_bresnan(&q).expand()).unwrap();
            assert_eq!(bresnan_check(&q), g >= 8);
            rejected += usize::from(g < 8);
        }
    }
    assert!(rejected > 50);
}

#[test]
fn full_rank_when_gcd_condition_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    while seen < 5 {
        let p = bresnan_sample(13, 4, &mut rng).unwrap().unwrap();
        if gcd_fullrank_check(p.p1()).unwrap() {
            assert_eq!(gf2_rank(&build_bresnan(&p).expand()), 13 * 4);
            seen += 1;
        }
    }
}

fn family_agrees_with_oracle(family: Family, m: u32, alpha: usize, offsets: Offsets, seeds: u64) {
    let target = family.target_girth();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..seeds {
        let (p, _) = local_search(family, m, alpha, offsets, seed, 500_000).unwrap();
        let g = girth_bfs(&p.build().expand());
        assert!(g.is_none_or(|g| g >= target), "{family:?} seed {seed}: girth {g:?}");
        if family == Family::Rate23 {
            assert_eq!(g, Some(8));
        }
        for _ in 0..4 {
            let mut q = p.clone();
            q.mutate(&mut rng);
            let real = girth_bfs(&q.build().expand()).is_none_or(|g| g >= target);
            assert_eq!(q.check().unwrap(), real, "{family:?} seed {seed}: {:?}", q.violations());
        }
    }
}

#[test]
fn rate23_agrees_with_oracle() {
    family_agrees_with_oracle(Family::Rate23, 23, 7, Offsets::default(), 3);
    family_agrees_with_oracle(Family::Rate23, 23, 5, Offsets::default(), 3);
}

#[test]
fn reg24_agrees_with_oracle() {
    for (alpha, delta) in [(8, None), (8, Some(4)), (8, Some(2)), (6, Some(2))] {
        family_agrees_with_oracle(Family::Reg24, 23, alpha, Offsets { delta, ..Offsets::default() }, 3);
    }
}

#[test]
fn reg36_agrees_with_oracle() {
    family_agrees_with_oracle(Family::Reg36, 23, 39, reg36_offsets(), 2);
}

#[test]
fn reg24_quarter_separation_fails() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h = (0..6).map(|i| if i == 0 { CirculantSpec::weight_two(24, 0, 6).unwrap() } else { CirculantSpec::weight_two(24, 0, 1 + rng.random_range(0..5)).unwrap() }).collect();
    let p = Reg24Params::new(24, h, vec![0; 6], 4).unwrap();
    assert!(reg24_violations_contains(&p, "1:"));
}

fn reg24_violations_contains(p: &Reg24Params, prefix: &str) -> bool {
    qcgirth::families::reg24::reg24_violations(p).iter().any(|v| v.starts_with(prefix))
}

#[test]
fn reg36_offset_precondition() {
    let h: Vec<_> = (0..40).map(|_| CirculantSpec::weight_two(23, 0, 1).unwrap()).collect();
    let p = Reg36Params::new(23, h, vec![0; 40], 20, 7).unwrap();
    assert!(matches!(reg36_check(&p), Err(Error::DeltaPrecondition(_))));
    assert!(class_e_violations(39, 4, 15).is_empty());
}

#[test]
fn reg36_identity_weight_one_diagonal_has_six_cycle() {
    let (p, _) = local_search(Family::Reg36, 23, 39, reg36_offsets(), 0, 500_000).unwrap();
    let FamilyParams::Reg36(p) = p else { unreachable!() };
    let zeros = Reg36Params::new(23, p.h().to_vec(), vec![0; 39], 4, 15).unwrap();
    let v = qcgirth::families::reg36::reg36_violations(&zeros).unwrap();
    assert!(v.iter().any(|l| l.starts_with("4.1")));
    assert_eq!(girth_bfs(&build_reg36(&zeros).expand()), Some(6));
}

#[test]
fn random_search_is_deterministic() {
    let a = local_search(Family::Reg24, 23, 6, Offsets::default(), 42, 100_000).unwrap();
    let b = local_search(Family::Reg24, 23, 6, Offsets::default(), 42, 100_000).unwrap();
    assert_eq!(a, b);
    let c = search::random_search(Family::Reg24, 23, 6, Offsets::default(), 42, 10_000).unwrap();
    let d = search::random_search(Family::Reg24, 23, 6, Offsets::default(), 42, 10_000).unwrap();
    assert_eq!(c, d);
}
