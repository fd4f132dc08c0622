mod common;

use proptest::prelude::*;
use realcurves::notation::{parse, parse_oriented, parse_real, Parsed};
use realcurves::{CurveClass, Error, Surface};

const D6: CurveClass = CurveClass::Degree(6);

fn plane(text: &str, d: u32) -> Result<Parsed, Error> {
    parse(text, Surface::Plane, CurveClass::Degree(d))
}

#[test]
fn canonical_rendering() {
    let cases = [
        ("<1<5> + 5>", "<5 + 1<5>>"),
        ("<1<1> + 9>", "<9 + 1<1>>"),
        ("<1 + 1 + 1>", "<3>"),
        ("<2<1> + 1<2>>", "<2<1> + 1<2>>"),
        ("<0>", "<0>"),
        ("<1<1<1>>>", "<1<1<1>>>"),
    ];
    for (input, want) in cases {
        assert_eq!(plane(input, 6).unwrap().render(), want, "{}", input);
    }
}

#[test]
fn odd_degree_needs_j() {
    assert_eq!(plane("<J + 4>", 5).unwrap().render(), "<J + 4>");
    assert_eq!(plane("<J>", 3).unwrap().render(), "<J>");
    assert!(matches!(plane("<4>", 5), Err(Error::Parse { .. })));
    assert!(matches!(plane("<J + 4>", 6), Err(Error::Parse { .. })));
}

#[test]
fn hyperboloid_segments() {
    let c = CurveClass::Bidegree(4, 4);
    let s = parse_real("<(1,0), 2, (1,0), 1<1>>", Surface::Hyperboloid, c).unwrap();
    assert_eq!(s.h(), 2);
    assert_eq!(s.l(), 4);
    let again = parse_real(&s.render(), Surface::Hyperboloid, c).unwrap();
    assert_eq!(again, s);
    // the class sign is normalized
    let t = parse_real("<2(-1,0)>", Surface::Hyperboloid, c).unwrap();
    assert_eq!(t.homclass(), Some((1, 0)));
}

#[test]
fn oriented_signs_are_parent_relative() {
    let o = parse_oriented("<1^+<1^->>", Surface::Plane, CurveClass::Degree(4)).unwrap();
    // child marked ^- has the same bit as its parent
    assert_eq!(o.marks(), vec![true, true]);
    let p = parse_oriented("<1^-<1^+>>", Surface::Plane, CurveClass::Degree(4)).unwrap();
    assert_eq!(p.marks(), vec![false, true]);
}

#[test]
fn mixed_signs_are_rejected() {
    match plane("<1^+ + 1>", 6) {
        Err(Error::Parse { position, .. }) => assert!(position > 0),
        other => panic!("{:?}", other),
    }
}

#[test]
fn malformed_inputs_report_positions() {
    let bad = ["", "<", "<1", "1>", "<1<>>", "<+>", "<1 +>", "<1^*>", "<x>", "<1>>"];
    for t in bad {
        match parse(t, Surface::Plane, D6) {
            Err(Error::Parse { .. }) => {}
            other => panic!("{:?} gave {:?}", t, other),
        }
    }
}

#[test]
fn random_round_trip() {
    let mut r = common::rng(11);
    for _ in 0..2000 {
        let s = common::scheme(&mut r, 9);
        let text = s.render();
        let back = parse_real(&text, s.surface(), s.class()).unwrap();
        assert_eq!(back, s, "{}", text);
        if s.component_counts().2 == 0 {
            continue;
        }
        let o = common::oriented(&mut r, &s);
        let text = o.render();
        let back = parse_oriented(&text, o.surface(), o.class()).unwrap();
        assert_eq!(back, o, "{}", text);
    }
}

proptest! {
    #[test]
    fn render_is_idempotent(seed in any::<u64>(), n in 0usize..12) {
        let mut r = common::rng(seed);
        let s = common::scheme(&mut r, n);
        let t1 = s.render();
        let t2 = parse_real(&t1, s.surface(), s.class()).unwrap().render();
        prop_assert_eq!(t1, t2);
    }

    #[test]
    fn flip_twice_is_identity(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let s = common::scheme(&mut r, 8);
        let o = common::oriented(&mut r, &s);
        prop_assert_eq!(o.flip().flip(), o.clone());
        prop_assert_eq!(o.forget(), s);
    }
}
