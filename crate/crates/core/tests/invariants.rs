mod common;

use common::*;
use knotcore::diagram::Diagram;
use knotcore::invariants::*;
use knotcore::poly::{parse_scaled, LaurentPoly, Ring};

fn pa(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s, &Ring::a()).unwrap()
}

fn pz(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s, &Ring::z()).unwrap()
}

fn pza(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s, &Ring::za()).unwrap()
}

fn pt(s: &str) -> LaurentPoly {
    parse_scaled(s, &["t"], &Ring::u(), 4).unwrap()
}

fn jones_up_to_mirror(d: &Diagram, expected: &str) {
    let j = jones(d).unwrap();
    let e = pt(expected);
    assert!(j == e || j == e.mirror("u").unwrap(), "got {}", jones_text(&j));
}

#[test]
fn small_brackets() {
    assert_eq!(bracket_skein(&Diagram::unknot()).unwrap(), pa("1"));
    assert_eq!(bracket_skein(&Diagram::unlink(2)).unwrap(), pa("-A^2 - A^-2"));
    assert_eq!(bracket_skein(&Diagram::unlink(3)).unwrap(), pa("A^4 + 2 + A^-4"));
    assert_eq!(bracket_skein(&positive_curl()).unwrap(), pa("-A^3"));
    assert_eq!(bracket_skein(&negative_curl()).unwrap(), pa("-A^-3"));
    assert_eq!(bracket_statesum(&positive_curl()).unwrap(), pa("-A^3"));
    assert_eq!(bracket_skein(&named("trefoil")).unwrap(), pa("-A^5 - A^-3 + A^-7"));
}

#[test]
fn empty_diagram_is_an_error() {
    let e = Diagram::unlink(0);
    assert_eq!(bracket_skein(&e), Err(InvariantError::EmptyDiagram));
    assert_eq!(bracket_statesum(&e), Err(InvariantError::EmptyDiagram));
    assert_eq!(kauffman_l(&e), Err(InvariantError::EmptyDiagram));
    assert_eq!(conway(&e), Err(InvariantError::EmptyDiagram));
}

#[test]
fn state_sum_cap() {
    let big = braid(&format!("B2:{}", " 1".repeat(41)));
    assert!(matches!(bracket_statesum(&big), Err(InvariantError::TooManyCrossings { n: 41, .. })));
    assert!(matches!(state_table(&named("trefoil"), 2), Err(InvariantError::TooManyCrossings { n: 3, max: 2 })));
}

#[test]
fn curl_values() {
    assert_eq!(kauffman_l(&positive_curl()).unwrap(), pza("a"));
    assert_eq!(kauffman_l(&negative_curl()).unwrap(), pza("a^-1"));
    assert_eq!(f_poly(&positive_curl()).unwrap(), pa("1"));
    assert_eq!(f_poly(&negative_curl()).unwrap(), pa("1"));
    assert_eq!(kauffman_f(&positive_curl()).unwrap(), pza("1"));
    assert_eq!(conway(&positive_curl()).unwrap(), pz("1"));
}

#[test]
fn unlink_values() {
    assert_eq!(kauffman_l(&Diagram::unlink(2)).unwrap(), mu());
    assert_eq!(conway(&Diagram::unlink(2)).unwrap(), pz("0"));
    assert_eq!(jones(&Diagram::unlink(2)).unwrap(), pt("-t^(1/2) - t^(-1/2)"));
    let split = named("trefoil").disjoint_union(&named("figure_eight"));
    assert_eq!(conway(&split).unwrap(), pz("0"));
}

#[test]
fn jones_table_values() {
    assert_eq!(jones_text(&jones(&named("trefoil")).unwrap()), "-t^4 + t^3 + t");
    jones_up_to_mirror(&named("trefoil_pd"), "-t^4 + t^3 + t");
    jones_up_to_mirror(&named("figure_eight"), "t^2 - t + 1 - t^-1 + t^-2");
    jones_up_to_mirror(&named("cinquefoil"), "-t^7 + t^6 - t^5 + t^4 + t^2");
    jones_up_to_mirror(&named("seven_one"), "-t^10 + t^9 - t^8 + t^7 - t^6 + t^5 + t^3");
    jones_up_to_mirror(&named("eight_nineteen"), "-t^8 + t^5 + t^3");
    jones_up_to_mirror(&named("three_twist"), "-t^6 + t^5 - t^4 + 2t^3 - t^2 + t");
    jones_up_to_mirror(&named("stevedore"), "t^4 - t^3 + t^2 - 2t + 2 - t^-1 + t^-2");
    jones_up_to_mirror(&named("hopf"), "-t^(5/2) - t^(1/2)");
}

#[test]
fn conway_table_values() {
    let cases = [
        ("trefoil", "1 + z^2"),
        ("mirror_trefoil", "1 + z^2"),
        ("trefoil_pd", "1 + z^2"),
        ("figure_eight", "1 - z^2"),
        ("cinquefoil", "1 + 3z^2 + z^4"),
        ("three_twist", "1 + 2z^2"),
        ("stevedore", "1 - 2z^2"),
        ("six_two", "1 - z^2 - z^4"),
        ("six_three", "1 + z^2 + z^4"),
        ("seven_one", "1 + 6z^2 + 5z^4 + z^6"),
        ("eight_nineteen", "1 + 5z^2 + 5z^4 + z^6"),
        ("hopf", "z"),
    ];
    for (name, c) in cases {
        assert_eq!(conway(&named(name)).unwrap(), pz(c), "{name}");
    }
}

#[test]
fn kauffman_table_values() {
    let tref = pza("-2a^-2 - a^-4 + a^-3*z + a^-5*z + a^-2*z^2 + a^-4*z^2");
    let f = kauffman_f(&named("trefoil")).unwrap();
    let tref_m = tref.mirror("a").unwrap();
    assert!(f == tref || f == tref_m, "got {f}");
    let fig8 = pza("-a^-2 - 1 - a^2 - a^-1*z - a*z + a^-2*z^2 + 2z^2 + a^2*z^2 + a^-1*z^3 + a*z^3");
    assert_eq!(kauffman_f(&named("figure_eight")).unwrap(), fig8);
}

#[test]
fn report_relations() {
    for (name, d) in corpus() {
        let r = compute_report(&d).unwrap();
        assert_eq!(r.crossings, d.crossing_count());
        assert_eq!(r.f, &LaurentPoly::monomial(&Ring::a(), &[-3 * r.writhe], if r.writhe % 2 == 0 { 1 } else { -1 }) * &r.bracket, "{name}");
        assert_eq!(r.jones, jones_from_f(&r.f), "{name}");
        assert_eq!(r.f_kauffman, &LaurentPoly::monomial(&Ring::za(), &[0, -r.writhe], 1) * &r.l, "{name}");
        assert_eq!(specialize_l(&r.l), r.bracket, "{name}");
        assert_eq!(r.chirality.is_some(), r.components == 1, "{name}");
        let text = r.to_text();
        assert!(text.contains(&format!("jones: {}", jones_text(&r.jones))));
        let v = r.to_json();
        assert_eq!(v["writhe"], r.writhe);
        assert_eq!(LaurentPoly::from_json(&v["L"]["terms"], &Ring::za()).unwrap(), r.l);
    }
}

#[test]
fn chirality_verdicts() {
    let c = chirality_certificate(&named("trefoil")).unwrap();
    assert_eq!(c.verdict, Chirality::Chiral);
    assert_eq!(c.f_mirror, c.f.mirror("A").unwrap());
    assert_eq!(c.verdict.to_string(), "CHIRAL");
    let c = chirality_certificate(&named("figure_eight")).unwrap();
    assert_eq!(c.verdict, Chirality::Inconclusive);
    assert_eq!(c.verdict.to_string(), "INCONCLUSIVE");
}

#[test]
fn state_table_rows() {
    let d = named("trefoil");
    let rows = state_table(&d, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(sum_state_rows(&rows), bracket_statesum(&d).unwrap());
    assert_eq!(rows[0].weight, pa("A^3"));
    for r in &rows {
        assert_eq!(d.resolve_state(&r.state).unwrap(), r.loops);
    }
    let tsv = state_table_tsv(&rows);
    assert_eq!(tsv.lines().next(), Some("state\tweight\tloops"));
    assert_eq!(tsv.lines().count(), 9);
}

#[test]
fn caches_do_not_change_results() {
    let cache = SkeinCache::new(4);
    for (name, d) in corpus() {
        let fresh = SkeinCache::new(1024);
        assert_eq!(bracket_skein_with(&d, &cache).unwrap(), bracket_skein_with(&d, &fresh).unwrap(), "{name}");
        assert_eq!(kauffman_l_with(&d, &cache).unwrap(), kauffman_l_with(&d, &fresh).unwrap(), "{name}");
        assert_eq!(conway_with(&d, &cache).unwrap(), conway_with(&d, &fresh).unwrap(), "{name}");
    }
    assert!(cache.len() <= 4);
}

#[test]
fn connected_sum_multiplies() {
    let t = named("trefoil");
    let f = named("figure_eight");
    let s = t.connected_sum(2, &f, 3).unwrap();
    assert_eq!(bracket_skein(&s).unwrap(), &bracket_skein(&t).unwrap() * &bracket_skein(&f).unwrap());
    assert_eq!(conway(&s).unwrap(), &conway(&t).unwrap() * &conway(&f).unwrap());
    assert_eq!(kauffman_l(&s).unwrap(), &kauffman_l(&t).unwrap() * &kauffman_l(&f).unwrap());
}

#[test]
fn disjoint_union_multiplies_by_delta() {
    let t = named("trefoil");
    let u = t.disjoint_union(&named("figure_eight"));
    let d = pa("-A^2 - A^-2");
    assert_eq!(bracket_skein(&u).unwrap(), &(&bracket_skein(&t).unwrap() * &bracket_skein(&named("figure_eight")).unwrap()) * &d);
    assert_eq!(kauffman_l(&u).unwrap(), &(&kauffman_l(&t).unwrap() * &kauffman_l(&named("figure_eight")).unwrap()) * &mu());
}

#[test]
fn bundled_corpus_matches() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/corpus.txt");
    let table = knotcore::notation::load_table(path).unwrap();
    assert!(table.len() >= 15);
    for e in &table {
        let r = compute_report(&e.diagram).unwrap();
        let bad = r.check(&e.expected).unwrap();
        assert!(bad.is_empty(), "{}: {bad:?}", e.name);
    }
}

#[test]
fn check_reports_mismatches_and_bad_keys() {
    let r = compute_report(&named("trefoil")).unwrap();
    let mut m = std::collections::BTreeMap::new();
    m.insert("conway".to_string(), "1 - z^2".to_string());
    m.insert("writhe".to_string(), "3".to_string());
    let bad = r.check(&m).unwrap();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].key, "conway");
    assert_eq!(bad[0].got, "z^2 + 1");
    m.insert("colour".to_string(), "red".to_string());
    assert!(matches!(r.check(&m), Err(ExpectationError::UnknownKey(_))));
    let mut m = std::collections::BTreeMap::new();
    m.insert("jones".to_string(), "t^^".to_string());
    assert!(matches!(r.check(&m), Err(ExpectationError::BadPoly { .. })));
}
