use insideness_core::enumeration::enumerate_jordan_curves_exact;
use insideness_core::generators::{
    build_dataset, dissimilar, gen_digs, gen_polar, gen_random_walk, gen_spiral, generate,
    CurveScreen, Family, GeneratorParams, Split, SplitCounts,
};
use insideness_core::networks::{
    build_dilated_ray_net, build_ray_net, eval_net, run_coloring, DEFAULT_Q,
};
use insideness_core::store::{parse_pbm, parse_pgm_mask, write_pbm, write_pgm_mask};
use insideness_core::{
    flood_fill_outside, is_border, neighbors4, neighbors8, ray_parity_insideness,
    validate_jordan_curve, BinaryImage, Dims, Label, PixelCoord,
};
use proptest::prelude::*;

fn off_border(img: &BinaryImage) -> bool {
    img.ones().all(|p| !is_border(p, img.dims()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn four_neighbours_are_eight_neighbours(h in 1usize..12, w in 1usize..12, r in 0usize..12, c in 0usize..12) {
        let dims = Dims::new(h, w);
        let p = PixelCoord::new(r % h, c % w);
        let n4 = neighbors4(p, dims).unwrap();
        let n8 = neighbors8(p, dims).unwrap();
        prop_assert!(n4.iter().all(|q| n8.contains(q)));
        prop_assert!(n8.len() <= 8 && n4.len() <= 4);
        let interior = r % h > 0 && c % w > 0 && r % h + 1 < h && c % w + 1 < w;
        prop_assert_eq!(is_border(p, dims).unwrap(), !interior);
    }

    #[test]
    fn polar_curves_are_valid(seed in any::<u64>(), k in prop::sample::select(vec![4usize, 9, 14, 19, 24])) {
        let c = gen_polar(seed, k, 32).unwrap();
        prop_assert!(validate_jordan_curve(c.image()).is_ok());
        prop_assert!(off_border(c.image()));
    }

    #[test]
    fn spiral_curves_are_valid(seed in any::<u64>()) {
        let c = gen_spiral(seed, 42).unwrap();
        prop_assert!(validate_jordan_curve(c.image()).is_ok());
        prop_assert!(off_border(c.image()));
    }

    #[test]
    fn walk_curves_are_valid(seed in any::<u64>(), size in 8usize..=42) {
        let c = gen_random_walk(seed, size).unwrap();
        prop_assert_eq!(c.dims(), Dims::new(size, size));
        prop_assert!(validate_jordan_curve(c.image()).is_ok());
    }

    #[test]
    fn oracles_agree_and_nets_are_exact(seed in any::<u64>(), size in 8usize..=40) {
        let params = GeneratorParams::new(Family::RandomWalk, seed)
            .with_size(size)
            .with_screen(CurveScreen::JordanOnly);
        let img = generate(&params).unwrap().into_image();
        let flood = flood_fill_outside(&img);
        prop_assert_eq!(&ray_parity_insideness(&img).unwrap(), &flood);
        prop_assert_eq!(&eval_net(&build_ray_net(size, size).unwrap(), &img).unwrap(), &flood);
        prop_assert_eq!(&eval_net(&build_dilated_ray_net(size).unwrap(), &img).unwrap(), &flood);
    }

    #[test]
    fn oracles_commute_with_transpose(seed in any::<u64>()) {
        let img = gen_random_walk(seed, 24).unwrap().into_image();
        let t = img.transpose();
        prop_assert_eq!(flood_fill_outside(&t), flood_fill_outside(&img).transpose());
        prop_assert_eq!(ray_parity_insideness(&t).unwrap(), ray_parity_insideness(&img).unwrap().transpose());
    }

    #[test]
    fn coloring_fixpoint_is_bounded(seed in any::<u64>()) {
        let img = gen_digs(seed, 42).unwrap().into_image();
        let out = run_coloring(&img, DEFAULT_Q, 42 * 42 + 1).unwrap();
        prop_assert!(out.monotone);
        prop_assert!(out.steps <= 42 * 42);
        prop_assert_eq!(out.mask, flood_fill_outside(&img));
    }

    #[test]
    fn netpbm_round_trip(h in 1usize..20, w in 1usize..20, bits in prop::collection::vec(0u8..2, 400)) {
        let img = BinaryImage::from_vec(h, w, bits[..h * w].to_vec()).unwrap();
        prop_assert_eq!(&parse_pbm(&write_pbm(&img), "p").unwrap(), &img);
        let mask = flood_fill_outside(&img);
        prop_assert_eq!(parse_pgm_mask(&write_pgm_mask(&mask), "m").unwrap(), mask);
    }
}

#[test]
fn digs_never_self_touch_over_many_seeds() {
    for seed in 0..1000 {
        let c = gen_digs(seed, 42).unwrap();
        assert!(validate_jordan_curve(c.image()).is_ok(), "seed {seed}");
    }
}

#[test]
fn dataset_splits_are_dissimilar_to_train() {
    let params = GeneratorParams::new(Family::Polar { max_vertices: 24 }, 5);
    let ds = build_dataset(
        &params,
        SplitCounts {
            train: 100,
            val: 10,
            test: 10,
        },
    )
    .unwrap();
    assert_eq!(ds.samples.len(), 120);
    let train: Vec<_> = ds.split(Split::Train).collect();
    for s in ds.samples.iter().filter(|s| s.split != Split::Train) {
        for t in &train {
            assert!(dissimilar(&s.curve, &t.curve).unwrap());
        }
    }
    for s in &ds.samples {
        assert!(validate_jordan_curve(s.curve.image()).is_ok());
        assert_eq!(s.mask, flood_fill_outside(s.curve.image()));
    }
    let again = build_dataset(
        &params,
        SplitCounts {
            train: 100,
            val: 10,
            test: 10,
        },
    )
    .unwrap();
    assert_eq!(again, ds);
}

#[test]
fn empty_train_split_leaves_others_unconstrained() {
    let params = GeneratorParams::new(Family::Spiral, 1);
    let ds = build_dataset(
        &params,
        SplitCounts {
            train: 0,
            val: 3,
            test: 2,
        },
    )
    .unwrap();
    assert_eq!(ds.samples.len(), 5);
    assert!(ds.split(Split::Train).next().is_none());
}

#[test]
fn exhaustive_curves_label_consistently() {
    for n in 5..=7 {
        for img in enumerate_jordan_curves_exact(n).unwrap() {
            let mask = flood_fill_outside(&img);
            assert!(mask.count(Label::Inside) >= 1);
            assert_eq!(mask.count(Label::Curve), img.count_ones());
            assert_eq!(ray_parity_insideness(&img).unwrap(), mask);
        }
    }
}

#[test]
fn digs_cut_between_one_and_ten_notches() {
    use insideness_core::generators::gen_digs_with_count;
    let mut seen = [false; 11];
    for seed in 0..300 {
        let (curve, k) = gen_digs_with_count(seed, 42).unwrap();
        assert!((1..=10).contains(&k), "seed {seed}: {k} digs");
        assert_eq!(curve, gen_digs(seed, 42).unwrap());
        seen[k] = true;
    }
    assert!(seen[1] && seen[5]);
}
