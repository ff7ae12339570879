use std::collections::HashSet;

use num_bigint::BigInt;
use pathforge::bijections::{construct, image, in_image, inputs, invert, Construction, FiveTuple};
use pathforge::numeric::{catalan, narayana_poly, GammaPoly};
use pathforge::paths::{enumerate, stats, Path, PathKind};

/// Forward map on every input: round trip, middle altitude, alternation and
/// injectivity. Returns the set of outputs.
fn forward_checks(c: Construction, k: usize) -> HashSet<Path> {
    let mut seen = HashSet::new();
    for t in inputs(c, k) {
        let m = construct(&t).unwrap_or_else(|e| panic!("{c} {t:?}: {e}"));
        let want_mid = match c {
            Construction::A | Construction::C => 2 * t.i + 2,
            Construction::B | Construction::D => 2 * t.i + 1,
        };
        assert_eq!(m.middle_altitude, want_mid, "{c} {t:?}");
        assert_eq!(m.path.len(), c.output_len(k));
        assert_eq!(m.path.kind(), c.kind());
        let r1 = t.p1.rise_count();
        let r2 = t.p2.rise_count();
        match c {
            Construction::C => assert_eq!(m.path.rise_count(), r1 + r2, "{t:?}"),
            Construction::D => assert_eq!(m.path.rise_count(), r1 + r2 + 1, "{t:?}"),
            _ => {}
        }
        let back: FiveTuple = invert(c, &m.path).unwrap_or_else(|e| panic!("{c} invert {}: {e}", m.path));
        assert_eq!(back, t, "{c}: invert(construct(t)) != t for output {}", m.path);
        assert!(seen.insert(m.path.clone()), "{c}: two inputs map to {}", m.path);
    }
    seen
}

fn backward_checks(c: Construction, k: usize, forward: &HashSet<Path>) {
    let mut count = 0;
    for p in image(c, k) {
        count += 1;
        let t = invert(c, &p).unwrap_or_else(|e| panic!("{c} invert {p}: {e}"));
        assert_eq!(construct(&t).unwrap().path, p, "{c}: construct(invert(P)) != P");
        assert!(forward.contains(&p));
    }
    assert_eq!(count, forward.len(), "{c} k={k}: image size");
}

#[test]
fn construction_a_is_a_bijection() {
    for k in 1..=4 {
        let fwd = forward_checks(Construction::A, k);
        let ck = catalan(k as u64);
        assert_eq!(BigInt::from(fwd.len()), catalan(2 * k as u64) - &ck * &ck, "k={k}");
        backward_checks(Construction::A, k, &fwd);
    }
}

#[test]
fn construction_b_is_a_bijection() {
    for k in 0..=4 {
        let fwd = forward_checks(Construction::B, k);
        assert_eq!(BigInt::from(fwd.len()), catalan(2 * k as u64 + 1), "k={k}");
        backward_checks(Construction::B, k, &fwd);
    }
}

#[test]
fn construction_c_is_a_bijection() {
    for k in 1..=4 {
        let fwd = forward_checks(Construction::C, k);
        backward_checks(Construction::C, k, &fwd);
    }
}

#[test]
fn construction_d_is_a_bijection() {
    for k in 1..=4 {
        let fwd = forward_checks(Construction::D, k);
        backward_checks(Construction::D, k, &fwd);
    }
}

fn weight(p: &Path) -> GammaPoly {
    GammaPoly::monomial(1, p.rise_count())
}

/// The γ-weights of the C and D images split `N_{2k}(γ) - N_k(γ)²`, and the
/// weighted input counts match them.
#[test]
fn weighted_counts_split_narayana_difference() {
    for k in 1..=4 {
        let c_inputs: GammaPoly = inputs(Construction::C, k)
            .iter()
            .map(|t| GammaPoly::monomial(1, t.p1.rise_count() + t.p2.rise_count()))
            .sum();
        let d_inputs: GammaPoly = inputs(Construction::D, k)
            .iter()
            .map(|t| GammaPoly::monomial(1, t.p1.rise_count() + t.p2.rise_count() + 1))
            .sum();
        let c_image: GammaPoly = image(Construction::C, k).map(|p| weight(&p)).sum();
        let d_image: GammaPoly = image(Construction::D, k).map(|p| weight(&p)).sum();
        assert_eq!(c_inputs, c_image, "k={k}");
        assert_eq!(d_inputs, d_image, "k={k}");

        // direct per-pair statistic sums, independent of `inputs`
        let am: Vec<Path> = enumerate(PathKind::AltMotzkin, k).collect();
        let mut by_stats = GammaPoly::zero();
        for p1 in &am {
            let s1 = stats(p1);
            for p2 in &am {
                let s2 = stats(p2);
                let rr: u64 = s1.rises.iter().zip(&s2.rises).map(|(a, b)| a * b).sum();
                let ll: u64 = s1.even_levels.iter().zip(&s2.even_levels).map(|(a, b)| a * b).sum();
                let r = p1.rise_count() + p2.rise_count();
                by_stats += &GammaPoly::monomial(rr, r);
                by_stats += &GammaPoly::monomial(ll, r + 1);
            }
        }
        assert_eq!(&c_inputs + &d_inputs, by_stats, "k={k}");

        let nk = narayana_poly(k as u64);
        assert_eq!(&c_image + &d_image, &narayana_poly(2 * k as u64) - &(&nk * &nk), "k={k}");
    }
}

#[test]
fn d_weight_at_k1() {
    let total: GammaPoly = inputs(Construction::D, 1)
        .iter()
        .map(|t| GammaPoly::monomial(1, t.p1.rise_count() + t.p2.rise_count() + 1))
        .sum();
    assert_eq!(total, GammaPoly::from_i64s(&[0, 1]));
    assert_eq!(image(Construction::C, 1).count(), 0);
}

#[test]
fn image_predicates_partition_doubled_paths() {
    for k in 1..=4 {
        for p in enumerate(PathKind::AltMotzkin, 2 * k) {
            let mid = p.altitudes()[2 * k];
            let hits = [in_image(Construction::C, &p), in_image(Construction::D, &p)];
            assert_eq!(hits.iter().filter(|&&h| h).count(), usize::from(mid != 0));
        }
        for p in enumerate(PathKind::Dyck, 2 * k) {
            assert_eq!(in_image(Construction::A, &p), p.altitudes()[2 * k] > 0);
        }
    }
}

#[test]
fn construction_a_and_b_at_k5() {
    for c in [Construction::A, Construction::B] {
        let fwd = forward_checks(c, 5);
        backward_checks(c, 5, &fwd);
    }
}
