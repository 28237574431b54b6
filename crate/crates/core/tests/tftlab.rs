mod common;

use common::q;
use mtspec::classify::{restriction_kernel, TheoryParams};
use mtspec::exact::{Multiplicative, Unit};
use mtspec::notation::Style;
use mtspec::tftlab::{
    euler_theory_value, frobenius_closed_value, frobenius_verify, invertible_4d_monomial, invertible_4d_value,
    is_vf_nullbordant, vf_invariant, Catalog, FormalSum, FrobeniusData, ManifoldClass, SurfaceBordism, TftError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sum(terms: &[(ManifoldClass, i64)]) -> FormalSum {
    let mut s = FormalSum::new();
    for (m, k) in terms {
        s.add(m.clone(), *k).unwrap();
    }
    s
}

fn catalog() -> &'static Catalog {
    Catalog::builtin()
}

#[test]
fn surface_relations() {
    let s2 = catalog().get("S2").unwrap();
    for g in 0..=10u32 {
        let s = sum(&[(ManifoldClass::surface(g), 1), (s2.clone(), -(1 - i64::from(g)))]);
        assert!(vf_invariant(2, &s).unwrap().is_zero(), "g={g}");
    }
    assert!(!is_vf_nullbordant(2, &sum(&[(s2, 1)])).unwrap());
}

#[test]
fn circle_relation() {
    let s1 = catalog().get("S1").unwrap();
    assert!(is_vf_nullbordant(1, &sum(&[(s1.clone(), 2)])).unwrap());
    assert_eq!(vf_invariant(1, &sum(&[(s1, 1)])).unwrap().values, [1]);
}

#[test]
fn every_three_manifold_sum_vanishes() {
    let threes: Vec<_> = catalog().entries().filter(|m| m.dim == 3).cloned().collect();
    assert!(threes.len() >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let terms: Vec<_> = threes.iter().map(|m| (m.clone(), rng.gen_range(-9..=9))).collect();
        assert!(vf_invariant(3, &sum(&terms)).unwrap().is_zero());
    }
    for m in &threes {
        assert!(is_vf_nullbordant(3, &sum(&[(m.clone(), 1)])).unwrap());
    }
}

#[test]
fn four_manifold_relations() {
    let s4 = catalog().get("S4").unwrap();
    for g in 0..=10u32 {
        let s = sum(&[
            (ManifoldClass::sphere_times_surface(g), 1),
            (s4.clone(), -(2 - 2 * i64::from(g))),
        ]);
        assert!(vf_invariant(4, &s).unwrap().is_zero(), "g={g}");
    }
    let cp2 = catalog().get("CP2").unwrap();
    assert_eq!(vf_invariant(4, &sum(&[(cp2, 1)])).unwrap().values, [2, 1]);
    assert_eq!(vf_invariant(4, &sum(&[(cp2_bar(), 1)])).unwrap().values, [1, -1]);
}

fn cp2_bar() -> ManifoldClass {
    ManifoldClass::with_signature_theorem("CP2bar", 3, -1).unwrap()
}

#[test]
fn parsed_sums() {
    let s = FormalSum::parse("Sigma_3 - (-2)*S2", catalog()).unwrap();
    assert!(is_vf_nullbordant(2, &s).unwrap());
    let s = FormalSum::parse("K3 + 2*S4", catalog()).unwrap();
    assert_eq!(vf_invariant(4, &s).unwrap().values, [6, -16]);
    let s = FormalSum::parse("CP2#CP2 - 2 CP2", catalog()).unwrap();
    assert_eq!(vf_invariant(4, &s).unwrap().values, [-1, 0]);
    assert!(matches!(
        vf_invariant(4, &FormalSum::parse("S2", catalog()).unwrap()),
        Err(TftError::DimensionMismatch { .. })
    ));
    assert!(matches!(
        FormalSum::parse("Klein", catalog()),
        Err(TftError::UnknownManifold(_))
    ));
}

#[test]
fn euler_matches_frobenius_at_lambda_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1);
    for _ in 0..20 {
        let mut n = 0;
        while n == 0 {
            n = rng.gen_range(-500i64..=500);
        }
        let lambda = q(n, rng.gen_range(1..=500));
        let mu = lambda.pow(2);
        for g in 0..=10u32 {
            let closed = SurfaceBordism::closed(&ManifoldClass::surface(g)).unwrap();
            assert_eq!(
                euler_theory_value(&lambda, closed),
                frobenius_closed_value(&mu, g),
                "g={g}"
            );
        }
    }
    let zeta = Unit::root_of_unity(8, 3);
    for g in 0..=10u32 {
        let closed = SurfaceBordism::closed(&ManifoldClass::surface(g)).unwrap();
        assert_eq!(
            euler_theory_value(&zeta, closed),
            frobenius_closed_value(&zeta.pow(2), g)
        );
    }
}

#[test]
fn frobenius_axioms() {
    assert!(frobenius_verify(&FrobeniusData::new(q(-7, 3))).passed);
    let bad = FrobeniusData::from_parts(q(2, 1), q(1, 1), q(2, 1));
    assert_eq!(frobenius_verify(&bad).violated().len(), 1);
    // Pair of pants then cap: μ^{1-g} on each genus.
    assert_eq!(frobenius_closed_value(&q(5, 1), 0), q(5, 1));
    assert_eq!(frobenius_closed_value(&q(5, 1), 3), q(1, 25));
}

#[test]
fn values_multiply_under_disjoint_union() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let fours: Vec<_> = catalog().with_families(3).into_iter().filter(|m| m.dim == 4).collect();
    for _ in 0..20 {
        let (l1, l2) = (
            q(rng.gen_range(1..50), rng.gen_range(1..50)),
            q(-rng.gen_range(1..50), rng.gen_range(1..50)),
        );
        let a = &fours[rng.gen_range(0..fours.len())];
        let b = &fours[rng.gen_range(0..fours.len())];
        let both = a.disjoint_union(b).unwrap();
        assert_eq!(
            invertible_4d_value(&l1, &l2, &both).unwrap(),
            invertible_4d_value(&l1, &l2, a)
                .unwrap()
                .mul(&invertible_4d_value(&l1, &l2, b).unwrap())
        );
    }
    let mu = q(7, 2);
    let f = FrobeniusData::new(mu.clone());
    for g in 0..5u32 {
        for h in 0..5u32 {
            let (a, b) = (ManifoldClass::surface(g), ManifoldClass::surface(h));
            let both = a.disjoint_union(&b).unwrap();
            assert_eq!(both.euler, a.euler + b.euler);
            assert_eq!(
                f.surface_value(&both).unwrap(),
                frobenius_closed_value(&mu, g).mul(&frobenius_closed_value(&mu, h))
            );
        }
    }
}

#[test]
fn four_dimensional_values() {
    let s4 = catalog().get("S4").unwrap();
    assert_eq!(invertible_4d_value(&q(2, 1), &q(1, 1), &s4).unwrap(), q(4, 1));
    let k3 = catalog().get("K3").unwrap();
    assert_eq!(k3.p1_number, -48);
    assert_eq!(invertible_4d_monomial(&k3).unwrap().render(Style::Unicode), "λ₁²⁴λ₂⁻⁴⁸");
    let cp2 = catalog().get("CP2").unwrap();
    assert_eq!(invertible_4d_value(&q(2, 1), &q(3, 1), &cp2).unwrap(), q(8 * 27, 1));
}

/// The kernel theories `(ζ³, ζ)` multiply the value on `M` by
/// `ζ^{3χ + p₁}`, so they agree with the base theory exactly when
/// `3χ + p₁ ≡ 0 mod 6`.
#[test]
fn kernel_theories_agree_exactly_when_the_congruence_holds() {
    let kernel = restriction_kernel(4, 4, 3).unwrap().elements.unwrap();
    let base = TheoryParams::new(vec![q(3, 2), q(-5, 7)]);
    let mut manifolds: Vec<_> = catalog().with_families(4).into_iter().filter(|m| m.dim == 4).collect();
    manifolds.push(cp2_bar());
    // Invariant tuples violating the signature theorem, so the congruence can fail.
    manifolds.push(ManifoldClass::new("fake_a", 4, 3, 1, 1, None).unwrap());
    manifolds.push(ManifoldClass::new("fake_b", 4, 2, 0, 2, None).unwrap());
    for m in &manifolds {
        let congruent = (3 * m.euler + m.p1_number).rem_euclid(6) == 0;
        let value = |p: &TheoryParams| invertible_4d_value(&p.coords[0], &p.coords[1], m).unwrap();
        let all_agree = kernel.iter().all(|k| value(&k.times(&base)) == value(&base));
        assert_eq!(all_agree, congruent, "{m}");
        for k in &kernel {
            // The ratio is the generator's image raised to 3χ + p₁.
            let ratio = value(&k.times(&base)).mul(&value(&base).inv());
            let direct = k.coords[1].pow(3 * m.euler + m.p1_number);
            assert_eq!(ratio, direct, "{m}");
        }
        if catalog().uses_signature_theorem(&m.name) || m.p1_number == 3 * m.signature {
            assert!(congruent, "{m}");
        }
    }
}

#[test]
fn constructed_four_manifolds_have_even_chi_plus_sigma() {
    let fours: Vec<_> = catalog().with_families(10).into_iter().filter(|m| m.dim == 4).collect();
    let mut built = fours.clone();
    for a in &fours {
        for b in &fours {
            built.push(a.disjoint_union(b).unwrap());
            built.push(a.connected_sum(b).unwrap());
        }
    }
    for m in &built {
        assert_eq!((m.euler + m.signature).rem_euclid(2), 0, "{m}");
    }
    assert!(ManifoldClass::new("odd", 4, 2, 1, 3, None).is_err());
}

#[test]
fn catalog_round_trips() {
    let text = catalog().render();
    let again = Catalog::parse(&text).unwrap();
    assert_eq!(again.render(), text);
    let names: Vec<_> = catalog().entries().map(|m| m.name.clone()).collect();
    assert_eq!(names, ["S1", "S2", "T2", "S3", "T3", "S1xS2", "S4", "T4", "CP2", "K3"]);
    assert!(catalog().uses_signature_theorem("K3"));
    assert!(!catalog().uses_signature_theorem("S4"));
    assert!(Catalog::parse("mtspec-catalog 2\n").is_err());
    assert!(Catalog::parse("mtspec-catalog 1\nmanifold X 2 chi=1\n").is_err());
}

#[test]
fn manifold_json_round_trips() {
    for m in catalog().with_families(2) {
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<ManifoldClass>(&json).unwrap(), m);
    }
}
