use std::sync::OnceLock;

use hallq::gallery::example;
use hallq::hall::HallAlgebra;
use hallq::presentation::{
    ad, degrees_up_to, generate_relations, generate_relations_with, graded_dimension, DimMode, IdealSlices, NcElement,
};
use hallq::quiver::{parse, BoundQuiver};
use hallq::rep::{self, dim_hom, enumerate_indecomposables, euler_check, projective_resolution, Caps, IndecompTable};
use hallq::scalar::LaurentPoly;
use hallq::unit_form::{DimVector, UnitForm};
use proptest::prelude::*;

struct Fixture {
    bq: BoundQuiver,
    form: UnitForm,
    table: IndecompTable,
}

fn fixture(n: usize, length: usize) -> Fixture {
    let bq = example(n, length).unwrap();
    let form = UnitForm::of_bound_quiver(&bq);
    let roots = form.positive_roots(6).unwrap();
    let table = enumerate_indecomposables(&bq, 3, &roots, &Caps::default(), false).unwrap();
    Fixture { bq, form, table }
}

fn ex1() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture(1, 0))
}

fn ex3() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture(3, 0))
}

fn ex4() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture(4, 0))
}

fn fixtures() -> [&'static Fixture; 3] {
    [ex1(), ex3(), ex4()]
}

/// Multiplicity vectors of total dimension at most `max_total`.
fn multiplicities(f: &'static Fixture, max_total: i64) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..3, f.table.len()).prop_filter("total dimension", move |m| {
        let total: i64 = m.iter().zip(&f.table.entries).map(|(&k, e)| k as i64 * e.dim.total()).sum();
        total <= max_total
    })
}

fn kostant(roots: &[DimVector], d: &DimVector) -> usize {
    fn go(roots: &[DimVector], k: usize, rest: &DimVector) -> usize {
        if rest.is_zero() {
            return 1;
        }
        if k == roots.len() {
            return 0;
        }
        let mut total = 0;
        let mut r = rest.clone();
        while r.is_nonnegative() {
            total += go(roots, k + 1, &r);
            r = r.sub(&roots[k]);
        }
        total
    }
    go(roots, 0, d)
}

fn word_element(words: &[(Vec<usize>, i64)]) -> NcElement<LaurentPoly> {
    let mut x = NcElement::zero();
    for (w, k) in words {
        x = x.plus(&NcElement::word(w).scale(&LaurentPoly::v_pow(*k)));
    }
    x
}

/// Terms whose words are rearrangements of one word.
fn homogeneous() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec(0usize..3, 1..4).prop_flat_map(|w| {
        prop::collection::vec((Just(w).prop_shuffle(), -2i64..3), 1..4)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_inverts_direct_sums(m in multiplicities(ex3(), 6)) {
        let f = ex3();
        let r = f.table.assemble(&f.bq, &m);
        prop_assert_eq!(f.table.decompose(&f.bq, &r).unwrap(), m);
    }

    #[test]
    fn decomposition_is_additive(a in multiplicities(ex1(), 3), b in multiplicities(ex1(), 3)) {
        let f = ex1();
        let sum = f.table.assemble(&f.bq, &a).direct_sum(&f.table.assemble(&f.bq, &b));
        let expected: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(f.table.decompose(&f.bq, &sum).unwrap(), expected);
    }

    #[test]
    fn euler_form_is_bilinear_on_sums(a in multiplicities(ex4(), 3), b in multiplicities(ex4(), 3)) {
        let f = ex4();
        let v = f.table.assemble(&f.bq, &a);
        let w = f.table.assemble(&f.bq, &b);
        prop_assert!(euler_check(&f.bq, &f.form, &v, &w).unwrap().pass);
    }

    #[test]
    fn resolutions_are_exact(m in multiplicities(ex3(), 4)) {
        let f = ex3();
        let v = f.table.assemble(&f.bq, &m);
        let res = projective_resolution(&f.bq, &v).unwrap();
        prop_assert!(res.verify(&f.bq, &v));
        prop_assert!(res.length().unwrap() <= 2);
    }

    #[test]
    fn adjoint_adds_degrees(x in homogeneous(), y in homogeneous()) {
        let form = &ex1().form;
        let (x, y) = (word_element(&x), word_element(&y));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let z = ad(form, &x, &y).unwrap();
        let dx = x.degree(3).unwrap().unwrap();
        let dy = y.degree(3).unwrap().unwrap();
        match z.degree(3).unwrap() {
            Some(dz) => prop_assert_eq!(dz, dx.add(&dy)),
            None => prop_assert!(z.is_zero()),
        }
    }
}

#[test]
fn products_respect_the_grading() {
    let f = ex1();
    let mut h = HallAlgebra::new(&f.bq, &f.table, 6, rep::DEFAULT_ENUMERATION_CAP);
    let classes = h.classes_up_to(4);
    for m in &classes {
        for n in &classes {
            let d = h.class_dim(m).add(&h.class_dim(n));
            if d.total() > 4 {
                continue;
            }
            let p = h.basis_product(m, n, true).unwrap();
            assert!(p.terms().keys().all(|r| h.class_dim(r) == d));
            assert!(h.coefficient_parity(m, n).unwrap());
        }
    }
}

#[test]
fn untwisted_product_is_associative() {
    let f = ex1();
    let mut h = HallAlgebra::new(&f.bq, &f.table, 6, rep::DEFAULT_ENUMERATION_CAP);
    let report = h.verify_associativity(5, false).unwrap();
    assert!(report.triples > 0);
    assert!(report.pass(), "{:?}", report.failures);
}

#[test]
fn hall_numbers_match_extension_counts_on_the_other_examples() {
    for f in [&fixture(2, 4), ex4()] {
        let mut h = HallAlgebra::new(&f.bq, &f.table, 6, rep::DEFAULT_ENUMERATION_CAP);
        let classes = h.classes_up_to(4);
        for r in classes.iter().skip(1) {
            let dr = h.class_dim(r);
            for m in &classes {
                let dm = h.class_dim(m);
                if !dm.le(&dr) {
                    continue;
                }
                for n in h.classes_of_degree(&dr.sub(&dm)) {
                    assert_eq!(h.hall_number(m, &n, r).unwrap(), h.hall_number_via_ext(m, &n, r).unwrap());
                }
            }
        }
    }
}

#[test]
fn homs_with_simples_are_counted_by_nu() {
    for f in fixtures() {
        let n = f.bq.vertex_count();
        for e in &f.table.entries {
            for i in 0..n {
                let s = rep::Representation::simple(&f.bq, i, 3);
                let ai = DimVector::simple(n, i);
                assert_eq!(dim_hom(&f.bq, &e.rep, &s) as i64, f.form.nu(&e.dim, &ai).unwrap(), "Hom({}, S_{i})", e.dim);
                assert_eq!(dim_hom(&f.bq, &s, &e.rep) as i64, f.form.nu(&ai, &e.dim).unwrap(), "Hom(S_{i}, {})", e.dim);
            }
        }
    }
}

#[test]
fn table_order_is_directed_post_hoc() {
    for f in fixtures() {
        let m = f.table.len();
        for k in 0..m {
            for l in 0..m {
                let hom = dim_hom(&f.bq, &f.table.entries[k].rep, &f.table.entries[l].rep);
                let ext = rep::ext_dim(&f.bq, &f.table.entries[k].rep, &f.table.entries[l].rep, 1).unwrap();
                assert_eq!(hom, f.table.hom[k][l]);
                assert_eq!(ext, f.table.ext1[k][l]);
                if k < l {
                    assert_eq!(hom, 0);
                } else {
                    assert_eq!(ext, 0);
                }
            }
        }
    }
}

#[test]
fn discarding_zero_generators_keeps_dimensions() {
    let f = ex1();
    let roots = f.form.positive_roots(6).unwrap();
    let kept = generate_relations_with(&f.form, &roots, false).unwrap();
    let dropped = generate_relations_with(&f.form, &roots, true).unwrap();
    assert!(kept.relations().len() >= dropped.relations().len());
    let mut a = IdealSlices::generic(&kept);
    let mut b = IdealSlices::generic(&dropped);
    for d in degrees_up_to(3, 5) {
        assert_eq!(a.dimension(&d).unwrap(), b.dimension(&d).unwrap(), "{d}");
    }
}

#[test]
fn unbound_dynkin_dimensions_are_kostant_counts() {
    for text in [
        "vertex 1\nvertex 2\narrow a 1 2\n",
        "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\n",
    ] {
        let bq = parse(text).unwrap();
        let form = UnitForm::of_bound_quiver(&bq);
        let roots = form.positive_roots(4).unwrap();
        let p = generate_relations(&form, &roots).unwrap();
        for d in degrees_up_to(bq.vertex_count(), 5) {
            let expected = kostant(roots.roots(), &d);
            assert_eq!(graded_dimension(&p, &d, &DimMode::Generic).unwrap(), expected, "{d}");
        }
    }
}

#[test]
fn nested_relation_survives_at_a_sink() {
    // 1 -> 2 <- 3: the relation of degree (1,2,1) ending at the sink leaves a
    // multiple of the split sum of the two length-two modules
    let bq = parse("vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 3 2\n").unwrap();
    let form = UnitForm::of_bound_quiver(&bq);
    let roots = form.positive_roots(4).unwrap();
    let p = generate_relations(&form, &roots).unwrap();
    let table = enumerate_indecomposables(&bq, 3, &roots, &Caps::default(), false).unwrap();
    let mut h = HallAlgebra::new(&bq, &table, 5, rep::DEFAULT_ENUMERATION_CAP);
    let report = h.rho_verify(&p, 4).unwrap();
    assert!(!report.nonvanishing.is_empty());
    for x in &report.nonvanishing {
        assert_eq!(x.degree, DimVector(vec![1, 2, 1]));
        assert_eq!(x.image.matches('[').count(), 1);
    }
    let d = DimVector(vec![1, 2, 1]);
    assert_eq!(kostant(roots.roots(), &d), 5);
    assert_eq!(graded_dimension(&p, &d, &DimMode::Generic).unwrap(), 4);
}
