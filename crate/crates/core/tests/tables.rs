mod common;

use conductors::tables::{char_conductor, inner_product, ClassFunction};
use conductors::{load_dataset, CycloNum, Error};

use common::{corpus, fixture_path, group};

#[test]
fn corpus_shapes() {
    let s3 = group("S3");
    assert_eq!((s3.table.num_classes(), s3.table.irreducibles().len()), (3, 3));
    let a5 = group("A5");
    assert_eq!(a5.table.num_classes(), 5);
    assert_eq!(a5.table.irreducibles().len(), 5);
    assert_eq!(a5.table.exponent(), 30);
    assert_eq!(corpus().load_all().unwrap().len(), 10);
}

#[test]
fn missing_power_maps_name_the_class() {
    match load_dataset(fixture_path("C2_no_powermaps.json")) {
        Err(Error::Schema { path, msg }) => {
            assert!(path.contains("classes[1].powermaps"), "{path}");
            assert!(msg.contains("2a"), "{msg}");
        }
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn power_maps() {
    for ds in corpus().load_all().unwrap() {
        let t = &ds.table;
        for c in 0..t.num_classes() {
            assert_eq!(t.power_class(c, 1), c);
            assert_eq!(t.power_class(0, 7), 0);
        }
    }
    let s3 = group("S3");
    let c3 = s3.table.class_index("3a").unwrap();
    assert_eq!(s3.table.power_class(c3, 2), c3);
    let c4 = group("C4");
    let g = c4.table.class_index("4a").unwrap();
    assert_eq!(c4.table.class(c4.table.power_class(g, 2)).element_order, 2);
}

#[test]
fn p_parts_of_classes() {
    let sl = group("SL(2,3)");
    let t = &sl.table;
    let six = t.class_index("6a").unwrap();
    let (u, s) = t.p_decompose(six, 2);
    assert_eq!(t.class(u).element_order, 2);
    assert_eq!(t.class(u).size, 1);
    assert_eq!(t.class(s).element_order, 3);
    let three = t.class_index("3a").unwrap();
    assert_eq!(t.p_decompose(three, 2), (0, three));
    assert_eq!(t.p_decompose(three, 3), (three, 0));
}

#[test]
fn inner_products() {
    for ds in corpus().load_all().unwrap() {
        for i in 0..ds.table.num_classes() {
            let chi = ClassFunction::irreducible(&ds.table, i);
            assert!(inner_product(&chi, &chi).unwrap().is_one());
        }
    }
    let s3 = group("S3");
    let t = &s3.table;
    let triv = ClassFunction::irreducible(t, 0);
    let sign = ClassFunction::irreducible(t, 1);
    assert!(inner_product(&triv, &sign).unwrap().is_zero());
    let reg = ClassFunction::new(
        t.clone(),
        (0..t.num_classes())
            .map(|c| CycloNum::from_integer(if c == 0 { 6 } else { 0 }))
            .collect(),
    )
    .unwrap();
    for i in 0..3 {
        let chi = ClassFunction::irreducible(t, i);
        assert_eq!(
            inner_product(&reg, &chi).unwrap().to_i64(),
            Some(t.degree(i) as i64)
        );
    }
}

#[test]
fn character_conductors() {
    let s3 = group("S3");
    let two = (0..3).find(|&i| s3.table.degree(i) == 2).unwrap();
    assert_eq!(
        char_conductor(&ClassFunction::irreducible(&s3.table, two), None),
        1
    );

    let c4 = group("C4");
    let g = c4.table.class_index("4a").unwrap();
    let faithful = (0..4).find(|&i| c4.table.irreducible(i)[g].order() == 4).unwrap();
    let chi = ClassFunction::irreducible(&c4.table, faithful);
    assert_eq!(
        (char_conductor(&chi, None), char_conductor(&chi, Some(2))),
        (4, 4)
    );

    let a5 = group("A5");
    let three = ClassFunction::irreducible(&a5.table, 1);
    assert_eq!(a5.table.degree(1), 3);
    assert_eq!(
        (char_conductor(&three, None), char_conductor(&three, Some(5))),
        (5, 5)
    );
}

#[test]
fn irreducibles_closed_under_galois() {
    for ds in corpus().load_all().unwrap() {
        let t = &ds.table;
        let n = t.exponent();
        for k in (1..n as i64).filter(|&k| num_integer::gcd(k as u64, n) == 1) {
            let mut hit = vec![false; t.num_classes()];
            for chi in t.irreducibles() {
                let img: Vec<CycloNum> = chi.iter().map(|v| v.galois(k).unwrap()).collect();
                let j = t
                    .irreducibles()
                    .iter()
                    .position(|x| *x == img)
                    .unwrap_or_else(|| panic!("{}: Galois image under {k} is not irreducible", ds.name()));
                assert!(!hit[j]);
                hit[j] = true;
            }
        }
    }
}

#[test]
fn fusion_must_restrict_characters_to_characters() {
    let text = std::fs::read_to_string(common::fixture_path("../../../../data/A5.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Both 5-classes of D10 sent to 5a: orders and class sizes still fit.
    doc["subgroups"][0]["fusion"] = serde_json::json!([0, 1, 3, 3]);
    match conductors::parse_dataset(&doc.to_string()) {
        Err(Error::Invariant(msg)) => assert!(msg.contains("restriction"), "{msg}"),
        other => panic!(
            "expected an invariant error, got {:?}",
            other.map(|d| d.name().to_string())
        ),
    }
}
