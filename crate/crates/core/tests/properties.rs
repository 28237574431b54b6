mod common;

use common::{chase, invariant_factors_by_minors, is_unimodular};
use mtspec::abelian::{
    check_exact, middle_group_candidates, smith_normal_form, units_kernel, FgAbGroup, GroupHom, IntMatrix,
};
use mtspec::charclasses::{
    graded_piece, multiply, restrict_generators, thom_module_piece, Generator, Monomial, RingElement,
};
use mtspec::classify::{mcg_extension_class, ExtensionClass};
use mtspec::exact::{Multiplicative, Unit};
use mtspec::notation::Style;
use mtspec::tftlab::{vf_invariant, Catalog, FormalSum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

/// A product of elementary row operations, a permutation and sign flips.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    (
        prop::collection::vec((0..n, 0..n, -3i64..=3), 0..12),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(move |(ops, perm, signs)| {
            let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            for (i, j, k) in ops {
                if i != j {
                    let src = m[j].clone();
                    m[i].iter_mut().zip(src).for_each(|(x, y)| *x += k * y);
                }
            }
            let mut out: Vec<Vec<i64>> = perm.iter().map(|&p| m[p].clone()).collect();
            for (row, flip) in out.iter_mut().zip(signs) {
                if flip {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
            }
            IntMatrix::from_rows(&out)
        })
}

fn finite_group() -> impl Strategy<Value = FgAbGroup> {
    prop::collection::vec(2u64..=12, 0..=3)
        .prop_filter("order at most 200", |v| v.iter().product::<u64>() <= 200)
        .prop_map(|v| FgAbGroup::new(0, v))
}

/// Scales raw entries so that every generator of order `n` lands in the
/// `n`-torsion of the target.
fn well_defined(src: &FgAbGroup, tgt: &FgAbGroup, raw: &[i64]) -> GroupHom {
    let cols: Vec<Vec<BigInt>> = (0..src.ngens())
        .map(|j| {
            let n = src.generator_order(j).cloned().unwrap_or_else(BigInt::zero);
            (0..tgt.ngens())
                .map(|i| {
                    let m = tgt.generator_order(i).cloned().unwrap_or_else(BigInt::zero);
                    let x = BigInt::from(raw[(i * 7 + j * 3) % raw.len()]);
                    if m.is_zero() {
                        x
                    } else {
                        x * (&m / m.gcd(&n))
                    }
                })
                .collect()
        })
        .collect();
    GroupHom::new(src.clone(), tgt.clone(), IntMatrix::from_columns(tgt.ngens(), &cols)).expect("well defined")
}

fn cokernel_projection(f: &GroupHom) -> GroupHom {
    let rel = f.matrix().hconcat(&f.target().relation_matrix());
    let (q, proj) = FgAbGroup::cokernel_with_projection(&rel);
    GroupHom::new(f.target().clone(), q, proj).expect("projection is well defined")
}

fn ring_element(d: u8) -> impl Strategy<Value = RingElement> {
    // Homogeneous of a random degree <= 12.
    (0u32..=12, prop::collection::vec(-5i64..=5, 8)).prop_map(move |(k, coeffs)| {
        let piece = graded_piece(d, k).unwrap();
        RingElement::from_terms(
            d,
            piece
                .basis
                .iter()
                .zip(coeffs.iter().cycle())
                .map(|(m, &c)| (*m, BigInt::from(c))),
        )
        .unwrap()
    })
}

fn nonzero_rational() -> impl Strategy<Value = Unit> {
    (-40i64..=40, 1i64..=40)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Unit::ratio(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in matrix(5)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&(&s.u * &a) * &s.v), &s.d);
        prop_assert!(is_unimodular(&s.u));
        prop_assert!(is_unimodular(&s.v));
        let diag = s.diagonal();
        for (i, x) in diag.iter().enumerate() {
            prop_assert!(!x.is_negative());
            if let Some(next) = diag.get(i + 1) {
                let divides = if x.is_zero() { next.is_zero() } else { next.is_multiple_of(x) };
                prop_assert!(divides, "{} does not divide {}", x, next);
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        prop_assert_eq!(s.invariant_factors(), invariant_factors_by_minors(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exactness_agrees_with_element_chase(
        a in finite_group(),
        b in finite_group(),
        c in finite_group(),
        raw_f in prop::collection::vec(-6i64..=6, 1..16),
        raw_g in prop::collection::vec(-6i64..=6, 1..16),
        through_cokernel in any::<bool>(),
    ) {
        let f = if a.ngens() == 0 || b.ngens() == 0 {
            GroupHom::zero(a.clone(), b.clone())
        } else {
            well_defined(&a, &b, &raw_f)
        };
        let g = if through_cokernel {
            // Exact by construction, or close to it after a further map.
            let p = cokernel_projection(&f);
            if raw_g[0] % 3 == 0 || p.target().ngens() == 0 || c.ngens() == 0 {
                p
            } else {
                p.then(&well_defined(p.target(), &c, &raw_g)).unwrap()
            }
        } else if b.ngens() == 0 || c.ngens() == 0 {
            GroupHom::zero(b.clone(), c.clone())
        } else {
            well_defined(&b, &c, &raw_g)
        };
        let fast = check_exact(&f, &g).unwrap();
        let slow = chase(&f, &g);
        prop_assert_eq!(fast.composite_zero, slow.composite_zero);
        prop_assert_eq!(fast.exact, slow.exact);
        prop_assert_eq!(fast.image.order().unwrap(), BigInt::from(slow.image_order));
        prop_assert_eq!(fast.kernel.order().unwrap(), BigInt::from(slow.kernel_order));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cokernel_ignores_unimodular_changes(
        (a, u, v) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (
            prop::collection::vec(-9i64..=9, r * c).prop_map(move |x| {
                IntMatrix::from_rows(&x.chunks(c).map(<[i64]>::to_vec).collect::<Vec<_>>())
            }),
            unimodular(r),
            unimodular(c),
        ))
    ) {
        prop_assert!(is_unimodular(&u) && is_unimodular(&v));
        let changed = &(&u * &a) * &v;
        prop_assert_eq!(FgAbGroup::cokernel(&changed), FgAbGroup::cokernel(&a));
    }

    #[test]
    fn units_kernel_order_is_the_determinant(a in (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-9i64..=9, n * n)
            .prop_map(move |x| IntMatrix::from_rows(&x.chunks(n).map(<[i64]>::to_vec).collect::<Vec<_>>()))
    })) {
        let det = a.determinant().unwrap();
        prop_assume!(!det.is_zero());
        prop_assert_eq!(units_kernel(&a).order().unwrap(), det.abs());
    }

    #[test]
    fn split_extension_is_always_a_candidate(a in finite_group(), b in finite_group(), free in 0usize..=1) {
        prop_assume!(a.torsion().last().is_none_or(|d| d <= &BigInt::from(64)));
        prop_assume!(b.torsion().last().is_none_or(|d| d <= &BigInt::from(64)));
        let a = a.direct_sum(&FgAbGroup::free(free));
        if let Ok(c) = middle_group_candidates(&a, &b) {
            prop_assert!(c.contains(&a.direct_sum(&b)));
        }
    }

    #[test]
    fn restriction_is_a_ring_homomorphism(x in ring_element(4), y in ring_element(4), to in 2u8..=3) {
        let lhs = restrict_generators(&multiply(&x, &y).unwrap(), to).unwrap();
        let rhs = multiply(&restrict_generators(&x, to).unwrap(), &restrict_generators(&y, to).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_three_to_two_is_multiplicative(x in ring_element(3), y in ring_element(3)) {
        let lhs = restrict_generators(&multiply(&x, &y).unwrap(), 2).unwrap();
        let rhs = multiply(&restrict_generators(&x, 2).unwrap(), &restrict_generators(&y, 2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        d in 2u8..=4,
        seed in prop::collection::vec(-5i64..=5, 24),
        degrees in (0u32..=12, 0u32..=12, 0u32..=12),
    ) {
        // Odd-degree generators are 2-torsion, so no signs are needed.
        for g in Generator::legal_for(d).unwrap() {
            prop_assert!(g.degree() % 2 == 0 || g.torsion_order() == Some(2));
        }
        let build = |k: u32, offset: usize| {
            let piece = graded_piece(d, k).unwrap();
            RingElement::from_terms(d, piece.basis.iter().enumerate().map(|(i, m)| (*m, BigInt::from(seed[(offset + i) % 24])))).unwrap()
        };
        let (x, y, z) = (build(degrees.0, 0), build(degrees.1, 8), build(degrees.2, 16));
        prop_assert_eq!(multiply(&x, &y).unwrap(), multiply(&y, &x).unwrap());
        prop_assert_eq!(
            multiply(&multiply(&x, &y).unwrap(), &z).unwrap(),
            multiply(&x, &multiply(&y, &z).unwrap()).unwrap()
        );
    }

    #[test]
    fn extension_classes_add(a in -50i64..=50, b in -50i64..=50) {
        let (x, y) = (ExtensionClass::new(a), ExtensionClass::new(b));
        prop_assert_eq!(mcg_extension_class(&(&x + &y)), mcg_extension_class(&x) + mcg_extension_class(&y));
    }

    #[test]
    fn vf_invariant_is_additive(
        d in 1u8..=4,
        coeffs in prop::collection::vec(-5i64..=5, 6),
        more in prop::collection::vec(-5i64..=5, 6),
    ) {
        let pool: Vec<_> = Catalog::builtin().with_families(3).into_iter().filter(|m| m.dim == d).collect();
        let sum = |cs: &[i64]| {
            let mut s = FormalSum::new();
            for (m, &k) in pool.iter().zip(cs.iter().cycle()) {
                s.add(m.clone(), k).unwrap();
            }
            s
        };
        let (x, y) = (sum(&coeffs), sum(&more));
        let total = vf_invariant(d, &x.plus(&y).unwrap()).unwrap();
        let parts: Vec<i64> = vf_invariant(d, &x).unwrap().values.iter()
            .zip(&vf_invariant(d, &y).unwrap().values)
            .map(|(a, b)| a + b)
            .collect();
        let parts: Vec<i64> = if d == 1 { parts.iter().map(|v| v.rem_euclid(2)).collect() } else { parts };
        prop_assert_eq!(total.values, parts);
    }

    #[test]
    fn unit_text_round_trips(n in -99i64..=99, den in 1i64..=99, order in 1u32..=12, power in -30i64..=30) {
        prop_assume!(n != 0);
        let u = Unit::ratio(n, den).unwrap().mul(&Unit::root_of_unity(order, power));
        let text = u.render(Style::Ascii);
        prop_assert_eq!(text.parse::<Unit>().unwrap(), u.clone(), "{}", text);
        let json = serde_json::to_string(&u).unwrap();
        prop_assert_eq!(serde_json::from_str::<Unit>(&json).unwrap(), u);
    }

    #[test]
    fn unit_group_laws(a in nonzero_rational(), b in nonzero_rational(), e in -6i64..=6, f in -6i64..=6) {
        prop_assert_eq!(a.mul(&a.inv()), Unit::one());
        prop_assert_eq!(a.pow(e).mul(&a.pow(f)), a.pow(e + f));
        prop_assert_eq!(a.mul(&b).pow(e), a.pow(e).mul(&b.pow(e)));
    }

    #[test]
    fn group_json_round_trips(g in finite_group(), free in 0usize..=3) {
        let g = g.direct_sum(&FgAbGroup::free(free));
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<FgAbGroup>(&json).unwrap(), g);
    }
}

#[test]
fn thom_pieces_match_graded_pieces() {
    for d in 1..=4 {
        for k in 0..=12 {
            let piece = graded_piece(d, k).unwrap();
            let thom = thom_module_piece(d, k).unwrap();
            assert_eq!(thom.group, piece.group, "d={d} k={k}");
        }
    }
}

#[test]
fn degree_four_pieces_match_exponent_count() {
    for k in 0..=12u32 {
        let (mut free, mut torsion) = (0, 0);
        for a in 0..=k / 3 {
            for b in 0..=k / 4 {
                for c in 0..=k / 4 {
                    if 3 * a + 4 * b + 4 * c == k {
                        if a == 0 {
                            free += 1;
                        } else {
                            torsion += 1;
                        }
                    }
                }
            }
        }
        let piece = graded_piece(4, k).unwrap();
        assert_eq!(piece.group, FgAbGroup::new(free, vec![2; torsion]), "k={k}");
        assert_eq!(piece.basis.len(), free + torsion);
        assert!(piece.basis.iter().all(|m: &Monomial| m.degree() == k));
    }
}

#[test]
fn commuting_square_on_generators() {
    let table = mtspec::spectra::CertifiedTable::builtin();
    let e4_e3 = table.dimension_map(4, 0, 4).unwrap();
    let e3_p3 = table.cover_map(3, 4).unwrap();
    let e4_p4 = table.cover_map(4, 4).unwrap();
    let p4_p3 = table.dimension_map(4, 1, 4).unwrap();
    let down_then_cover = e4_e3.hom.then(&e3_p3.hom).unwrap();
    let cover_then_down = e4_p4.hom.then(&p4_p3.hom).unwrap();
    assert_eq!(down_then_cover.matrix(), cover_then_down.matrix());

    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    // p1u -> 3 sigma -> 6 rho, and p1u -> p1u -> 6 rho.
    assert_eq!(e4_p4.image_of("p1u").unwrap(), big(&[0, 3]));
    assert_eq!(p4_p3.hom.apply(&big(&[0, 3])), big(&[6]));
    assert_eq!(e4_e3.image_of("p1u").unwrap(), big(&[1]));
    assert_eq!(e3_p3.image_of("p1u").unwrap(), big(&[6]));
    // eu -> 2 psi - sigma -> 0, and eu -> 0 -> 0.
    assert_eq!(e4_p4.image_of("eu").unwrap(), big(&[2, -1]));
    assert_eq!(p4_p3.hom.apply(&big(&[2, -1])), big(&[0]));
    assert_eq!(e4_e3.image_of("eu").unwrap(), big(&[0]));
    assert_eq!(e3_p3.hom.apply(&big(&[0])), big(&[0]));
}

#[test]
fn every_recorded_arrow_is_well_defined() {
    let table = mtspec::spectra::CertifiedTable::builtin();
    for rec in table.maps() {
        let h = table.map(rec.source, rec.target, rec.degree).unwrap();
        let rebuilt = GroupHom::new(
            h.source_entry.group.clone(),
            h.target_entry.group.clone(),
            h.hom.matrix().clone(),
        );
        assert!(
            rebuilt.is_ok(),
            "{} -> {} in degree {}",
            rec.source.token(),
            rec.target.token(),
            rec.degree
        );
    }
}
