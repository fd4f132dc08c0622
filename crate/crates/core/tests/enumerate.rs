use std::collections::BTreeSet;

use realcurves::enumerate::{enumerate, forest_counts, forests, CLASSICAL_M_SEXTICS, MAX_FOREST_NODES};
use realcurves::golden::{diff_golden, missing_entries, parse_table, table_by_name, table_names, TypeTag};
use realcurves::rules::CheckOptions;
use realcurves::{CurveClass, Error, Surface, TypeClaim};

/// Rooted trees t(n) from the divisor recurrence
/// t(n+1) = (1/n) sum_{k=1..n} (sum_{d | k} d t(d)) t(n-k+1);
/// forests on n nodes are trees on n + 1 nodes.
fn rooted_trees(max: usize) -> Vec<u128> {
    let mut t = vec![0u128; max + 2];
    t[1] = 1;
    for n in 1..=max {
        let mut s = 0u128;
        for k in 1..=n {
            let dsum: u128 = (1..=k).filter(|d| k % d == 0).map(|d| d as u128 * t[d]).sum();
            s += dsum * t[n - k + 1];
        }
        t[n + 1] = s / n as u128;
    }
    t
}

#[test]
fn forest_counts_match_tree_recurrence() {
    let t = rooted_trees(20);
    let f = forest_counts(19);
    for n in 0..=19 {
        assert_eq!(f[n], t[n + 1], "n = {}", n);
    }
    for n in 0..=10 {
        assert_eq!(forests(n).unwrap().len() as u128, f[n]);
    }
}

#[test]
fn generated_forests_are_distinct() {
    for n in 0..=9 {
        let texts: BTreeSet<String> =
            forests(n).unwrap().iter().map(|f| realcurves::RealScheme::plane(8, f.clone()).unwrap().render()).collect();
        assert_eq!(texts.len(), forests(n).unwrap().len());
    }
    assert!(matches!(forests(MAX_FOREST_NODES + 1), Err(Error::SearchTooLarge { .. })));
}

fn admissible(surface: Surface, class: CurveClass) -> Vec<String> {
    enumerate(surface, class, None, &CheckOptions::default())
        .unwrap()
        .into_iter()
        .filter(|e| e.admissible())
        .map(|e| e.text)
        .collect()
}

#[test]
fn small_classes() {
    assert_eq!(admissible(Surface::Plane, CurveClass::Degree(2)), vec!["<0>", "<1>"]);
    let e = admissible(Surface::Ellipsoid, CurveClass::Bidegree(2, 2));
    for s in ["<0>", "<1>", "<2>"] {
        assert!(e.contains(&s.to_string()), "{}", s);
    }
    let nc: Vec<String> =
        admissible(Surface::Hyperboloid, CurveClass::Bidegree(3, 1)).into_iter().filter(|t| t.contains('(')).collect();
    assert_eq!(nc, vec!["<(-1,1)>", "<(-3,1)>", "<(1,1)>", "<(3,1)>"]);
}

#[test]
fn plane_classifications_up_to_degree_six() {
    assert_eq!(admissible(Surface::Plane, CurveClass::Degree(3)), vec!["<J + 1>", "<J>"]);
    assert_eq!(admissible(Surface::Plane, CurveClass::Degree(4)), vec!["<0>", "<1<1>>", "<1>", "<2>", "<3>", "<4>"]);
    let quintics = admissible(Surface::Plane, CurveClass::Degree(5));
    assert_eq!(quintics.len(), 8);
    assert!(quintics.contains(&"<J + 1<1>>".to_string()));
    // Gudkov's list of nonsingular sextics has 56 real schemes
    assert_eq!(admissible(Surface::Plane, CurveClass::Degree(6)).len(), 56);
}

#[test]
fn m_sextics_survive_under_every_claim_that_fits() {
    let all = enumerate(Surface::Plane, CurveClass::Degree(6), None, &CheckOptions::default()).unwrap();
    let m: Vec<&str> =
        all.iter().filter(|e| e.scheme.m_defect() == 0 && e.admissible()).map(|e| e.text.as_str()).collect();
    let mut want = CLASSICAL_M_SEXTICS.to_vec();
    want.sort();
    assert_eq!(m, want);
    for e in all.iter().filter(|e| e.scheme.m_defect() == 0 && e.admissible()) {
        // M-curves are of type I
        assert!(e.report(TypeClaim::TypeI).admissible);
    }
}

#[test]
fn enumeration_is_deterministic() {
    let opts = CheckOptions::default();
    let a = enumerate(Surface::Hyperboloid, CurveClass::Bidegree(4, 2), None, &opts).unwrap();
    let b = enumerate(Surface::Hyperboloid, CurveClass::Bidegree(4, 2), None, &opts).unwrap();
    let ta: Vec<String> = a.iter().map(|e| format!("{} {:?}", e.text, e.admissible_claims())).collect();
    let tb: Vec<String> = b.iter().map(|e| format!("{} {:?}", e.text, e.admissible_claims())).collect();
    assert_eq!(ta, tb);
    let mut sorted = ta.clone();
    sorted.sort();
    assert_eq!(ta, sorted);
}

#[test]
fn too_large_is_refused() {
    let r = enumerate(Surface::Plane, CurveClass::Degree(8), None, &CheckOptions::default());
    assert!(matches!(r, Err(Error::SearchTooLarge { .. })));
}

#[test]
fn golden_tables_parse_and_pass() {
    let opts = CheckOptions::default();
    assert_eq!(table_names().len(), 20);
    for name in table_names() {
        let t = table_by_name(name).unwrap();
        assert!(!t.entries.is_empty(), "{}", name);
        let m = missing_entries(&t, &opts);
        assert!(m.is_empty(), "{}: {:?}", name, m);
    }
}

#[test]
fn golden_diff_small() {
    let d = diff_golden(Surface::Hyperboloid, CurveClass::Bidegree(3, 1), &CheckOptions::default()).unwrap();
    assert!(d.missing.is_empty());
    assert!(diff_golden(Surface::Plane, CurveClass::Degree(6), &CheckOptions::default()).is_err());
}

#[test]
fn table_format() {
    let t = parse_table("hyperboloid 2,2\n# note\n<1>\tI\n<1>\tI\n<(1,1)>\tindef\n").unwrap();
    assert_eq!(t.entries.len(), 2);
    assert!(t.entries.iter().any(|e| e.tag == TypeTag::Indefinite));
    assert!(parse_table("hyperboloid 2,2\n<1>\tI\n<1>\tII\n").is_err());
    assert!(parse_table("sphere 2,2\n").is_err());
    assert!(parse_table("hyperboloid 2,2\n<1> I\n").is_err());
}
