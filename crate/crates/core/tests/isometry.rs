mod common;

use std::collections::BTreeSet;

use conductors::isometry::*;
use conductors::{CycloNum, Error};

use common::group;

fn sides() -> (BlockSide, BlockSide) {
    let a5 = group("A5");
    let d10 = group("D10");
    (
        BlockSide::from_dataset(&a5, 5, 0).unwrap(),
        BlockSide::from_dataset(&d10, 5, 0).unwrap(),
    )
}

fn compose(x: &IsometryCandidate, y: &IsometryCandidate) -> IsometryCandidate {
    let n = x.matrix.len();
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| (0..n).map(|j| x.matrix[i][j] * y.matrix[j][k]).sum())
                .collect()
        })
        .collect();
    IsometryCandidate {
        source: x.source.clone(),
        target: y.target.clone(),
        matrix,
    }
}

#[test]
fn isometry_shapes() {
    let (_, b) = sides();
    let id = IsometryCandidate::identity(&b);
    assert!(check_isometry(&id).unwrap());

    let mut flip = id.clone();
    flip.matrix[2][2] = -1;
    assert!(check_isometry(&flip).unwrap());

    let mut repeated = id.clone();
    repeated.matrix[1] = repeated.matrix[0].clone();
    assert!(!check_isometry(&repeated).unwrap());
}

#[test]
fn identity_on_d10_is_perfect() {
    let (_, b) = sides();
    let id = IsometryCandidate::identity(&b);
    let rep = check_perfection(&b, &b, &id).unwrap();
    assert!(rep.perfect() && rep.conductor_preserved && rep.l0_preserved);
    assert!(check_conductor_preservation(&b, &b, &id).unwrap().0);
    assert!(check_l0_preservation(&b, &b, &id).unwrap());
}

#[test]
fn a5_to_d10_search() {
    let (a, b) = sides();
    let found = search_perfect_isometries(&a, &b, DEFAULT_BOUND).unwrap();
    assert!(!found.is_empty());
    for f in &found {
        assert!(check_isometry(f).unwrap());
        assert!(check_perfection(&a, &b, f).unwrap().perfect());
        assert!(check_conductor_preservation(&a, &b, f).unwrap().0);
        assert!(check_l0_preservation(&a, &b, f).unwrap());
        // The two degree-3 characters go to the two 2-dimensional ones.
        let (perm, _) = f.as_signed_bijection().unwrap();
        let targets: BTreeSet<u64> = [1, 2]
            .iter()
            .map(|&i| b.table.degree(b.block.irr[perm[i]]))
            .collect();
        assert_eq!(targets, BTreeSet::from([2]));
    }
    let again = search_perfect_isometries(&a, &b, DEFAULT_BOUND).unwrap();
    assert_eq!(found, again);
}

#[test]
fn scrambled_bijection_is_rejected() {
    let (a, b) = sides();
    let id = IsometryCandidate::signed_bijection(a.block_ref(), b.block_ref(), &[0, 1, 2, 3], &[1, 1, 1, 1]);
    // χ_3 of degree 3 (conductor 5) lands on the sign character.
    assert_eq!(b.table.degree(b.block.irr[1]), 1);
    let (ok, witnesses) = check_conductor_preservation(&a, &b, &id).unwrap();
    assert!(!ok && !witnesses.is_empty());
    let rep = check_perfection(&a, &b, &id).unwrap();
    assert!(!rep.perfect());
    assert!(!rep.witnesses.is_empty());
    assert!(!(rep.integrality_ok && rep.separation_ok));
}

#[test]
fn some_rejected_bijection_fails_separation_and_l0() {
    let (a, b) = sides();
    let perfect: BTreeSet<_> = search_perfect_isometries(&a, &b, DEFAULT_BOUND)
        .unwrap()
        .into_iter()
        .map(|c| c.matrix)
        .collect();
    let cand =
        IsometryCandidate::signed_bijection(a.block_ref(), b.block_ref(), &[0, 2, 3, 1], &[1, 1, 1, 1]);
    assert!(!perfect.contains(&cand.matrix));
    let rep = check_perfection(&a, &b, &cand).unwrap();
    assert!(!rep.separation_ok);
    assert!(!check_l0_preservation(&a, &b, &cand).unwrap());
}

#[test]
fn self_search_contains_identity_and_composition_closes() {
    let (a, b) = sides();
    let selfs = search_perfect_isometries(&b, &b, DEFAULT_BOUND).unwrap();
    assert!(selfs.contains(&IsometryCandidate::identity(&b)));
    let found = search_perfect_isometries(&a, &b, DEFAULT_BOUND).unwrap();
    for x in found.iter().take(2) {
        for s in &selfs {
            assert!(found.contains(&compose(x, s)));
        }
    }
}

#[test]
fn size_mismatch_and_bound() {
    let a5 = group("A5");
    let (_, b) = sides();
    let defect_zero = BlockSide::from_dataset(&a5, 5, 1).unwrap();
    assert!(matches!(
        search_perfect_isometries(&defect_zero, &b, DEFAULT_BOUND),
        Err(Error::Precondition(_))
    ));
    let (a, b) = sides();
    match search_perfect_isometries(&a, &b, 3) {
        Err(Error::BoundExceeded { count, size, bound }) => assert_eq!((count, size, bound), (384, 4, 3)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn mu_at_identity_is_p_integral() {
    let (a, b) = sides();
    let f = &search_perfect_isometries(&a, &b, DEFAULT_BOUND).unwrap()[0];
    let mu: CycloNum = (0..a.size())
        .map(|i| &a.character(i)[0] * &f.image(&b, i)[0])
        .sum();
    let over = |d: i64| mu.try_div(&CycloNum::from_integer(d)).unwrap();
    assert!(over(60).is_p_integral(5));
    assert!(over(10).is_p_integral(5));
}

#[test]
fn certificates() {
    let (a, b) = sides();
    let f = &search_perfect_isometries(&a, &b, DEFAULT_BOUND).unwrap()[0];
    let cert = f.to_certificate().unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(&IsometryCandidate::from_certificate(&back).unwrap(), f);
    assert!(serde_json::from_str::<Certificate>(&text.replace("\"signs\"", "\"sings\"")).is_err());
}
