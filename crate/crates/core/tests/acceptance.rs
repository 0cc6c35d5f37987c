//! Acceptance run: one PASS/FAIL line per criterion, with pinned budgets.
//! Exits nonzero if any criterion fails.

use std::panic;
use std::time::{Duration, Instant};

use knotcore::diagram::Diagram;
use knotcore::invariants::*;
use knotcore::moves::{scramble, Policy};
use knotcore::notation::{braid_closure, emit_pd, load_table, parse_braid, parse_pd, BraidWord, TableEntry};
use knotcore::poly::{LaurentPoly, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn corpus() -> Vec<TableEntry> {
    load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/corpus.txt")).expect("bundled corpus loads")
}

fn entry<'a>(c: &'a [TableEntry], name: &str) -> &'a Diagram {
    &c.iter().find(|e| e.name == name).expect("corpus entry").diagram
}

fn pa(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s, &Ring::a()).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn exact_values() -> Check {
    let curl_p = Diagram::from_tuples(&[[1, 1, 2, 2]], 0).unwrap();
    let curl_n = Diagram::from_tuples(&[[1, 2, 2, 1]], 0).unwrap();
    let cases = [
        ("<unknot>", bracket_skein(&Diagram::unknot()).unwrap(), pa("1")),
        ("<unknot u unknot>", bracket_skein(&Diagram::unlink(2)).unwrap(), pa("-A^2 - A^-2")),
        ("<positive curl>", bracket_skein(&curl_p).unwrap(), pa("-A^3")),
        ("<negative curl>", bracket_skein(&curl_n).unwrap(), pa("-A^-3")),
        ("f(curled unknot)", f_poly(&curl_p).unwrap(), pa("1")),
        ("f(negative curl)", f_poly(&curl_n).unwrap(), pa("1")),
    ];
    for (what, got, want) in &cases {
        ensure(got == want, || format!("{what} = {got}, expected {want}"))?;
    }
    let l = kauffman_l(&curl_p).unwrap();
    let a = LaurentPoly::parse("a", &Ring::za()).unwrap();
    ensure(l == a, || format!("L(positive curl) = {l}"))?;
    Ok("7 exact values".into())
}

fn conway_values(c: &[TableEntry]) -> Check {
    let z = |s: &str| LaurentPoly::parse(s, &Ring::z()).unwrap();
    for (name, want) in [("trefoil", "1 + z^2"), ("figure_eight", "1 - z^2"), ("trefoil_mirror", "1 + z^2")] {
        let got = conway(entry(c, name)).unwrap();
        ensure(got == z(want), || format!("conway({name}) = {got}, expected {want}"))?;
    }
    Ok("trefoil 1+z^2, figure-eight 1-z^2, mirror trefoil 1+z^2".into())
}

fn chirality(c: &[TableEntry]) -> Check {
    let cert = chirality_certificate(entry(c, "trefoil")).unwrap();
    ensure(cert.verdict == Chirality::Chiral, || format!("verdict {}", cert.verdict))?;
    ensure(cert.f != cert.f_mirror && cert.f_mirror == cert.f.mirror("A").unwrap(), || "f(A^-1) mismatch".into())?;
    Ok(format!("CHIRAL: f = {}, f(mirror) = {}", cert.f, cert.f_mirror))
}

fn oracle_equivalence(c: &[TableEntry]) -> Check {
    let mut n = 0;
    for e in c.iter().filter(|e| e.diagram.crossing_count() <= 12) {
        let (s, o) = (bracket_skein(&e.diagram).unwrap(), bracket_statesum(&e.diagram).unwrap());
        ensure(s == o, || format!("{}: skein {s} != state sum {o}", e.name))?;
        n += 1;
    }
    // Six steps keep each output at most twelve crossings above its
    // source, so the 2^N state sum stays cheap.
    let sources: Vec<&TableEntry> = c.iter().filter(|e| e.diagram.crossing_count() <= 4).collect();
    for i in 0..100u64 {
        let src = sources[i as usize % sources.len()];
        let d = scramble(&src.diagram, 4_000 + i, 6, Policy::Ambient).diagram;
        let (s, o) = (bracket_skein(&d).unwrap(), bracket_statesum(&d).unwrap());
        ensure(s == o, || format!("{} seed {}: skein {s} != state sum {o}", src.name, 4_000 + i))?;
    }
    Ok(format!("{n} corpus diagrams, 100 scramble outputs"))
}

fn invariance_suite(c: &[TableEntry]) -> Check {
    let knots = ["trefoil", "figure_eight", "cinquefoil", "stevedore", "eight_nineteen"];
    let mut count = 0;
    for (k, name) in knots.iter().enumerate() {
        let d = entry(c, name);
        ensure(d.crossing_count() <= 8, || format!("{name} has {} crossings", d.crossing_count()))?;
        let ambient = (f_poly(d).unwrap(), jones(d).unwrap(), conway(d).unwrap(), kauffman_f(d).unwrap());
        let regular = (bracket_skein(d).unwrap(), kauffman_l(d).unwrap());
        let framed = (regular.0.clone(), d.writhe().unwrap());
        for i in 0..500u64 {
            let seed = 1_000_000 * k as u64 + i;
            let s = scramble(d, seed, 100, Policy::Ambient).diagram;
            let got = (f_poly(&s).unwrap(), jones(&s).unwrap(), conway(&s).unwrap(), kauffman_f(&s).unwrap());
            ensure(got == ambient, || format!("{name} ambient seed {seed}"))?;
            let s = scramble(d, seed, 100, Policy::Regular).diagram;
            let got = (bracket_skein(&s).unwrap(), kauffman_l(&s).unwrap());
            ensure(got == regular, || format!("{name} regular seed {seed}"))?;
            let s = scramble(d, seed, 100, Policy::Framed).diagram;
            let got = (bracket_skein(&s).unwrap(), s.writhe().unwrap());
            ensure(got == framed, || format!("{name} framed seed {seed}"))?;
            count += 3;
        }
    }
    Ok(format!("{count} scrambles of 100 steps"))
}

fn specialization(c: &[TableEntry]) -> Check {
    let mut n = 0;
    for e in c.iter().filter(|e| e.diagram.crossing_count() <= 8) {
        let (l, b) = (kauffman_l(&e.diagram).unwrap(), bracket_skein(&e.diagram).unwrap());
        let s = specialize_l(&l);
        ensure(s == b, || format!("{}: L specializes to {s}, bracket {b}", e.name))?;
        n += 1;
    }
    Ok(format!("{n} corpus diagrams"))
}

fn structural(c: &[TableEntry]) -> Check {
    let knots: Vec<&TableEntry> =
        c.iter().filter(|e| e.diagram.component_count() == 1 && e.diagram.crossing_count() <= 6).collect();
    let mut pairs = 0;
    for a in &knots {
        for b in &knots {
            let s = a.diagram.connected_sum(1, &b.diagram, 1).unwrap();
            let want = &bracket_skein(&a.diagram).unwrap() * &bracket_skein(&b.diagram).unwrap();
            let got = bracket_statesum(&s).unwrap();
            ensure(got == want, || format!("<{}#{}> = {got}, product {want}", a.name, b.name))?;
            pairs += 1;
        }
    }
    for e in c.iter().filter(|e| e.diagram.component_count() == 1) {
        let j = jones(&e.diagram).unwrap();
        ensure(j.terms().all(|(x, _)| x[0] % 4 == 0), || format!("{}: jones {j}", e.name))?;
    }
    for e in c.iter().filter(|e| e.diagram.crossing_count() <= 12) {
        let rows = state_table(&e.diagram, 16).unwrap();
        ensure(rows.len() == 1 << e.diagram.crossing_count(), || format!("{}: {} rows", e.name, rows.len()))?;
        ensure(sum_state_rows(&rows) == bracket_skein(&e.diagram).unwrap(), || format!("{}: row sum", e.name))?;
    }
    Ok(format!("{pairs} connected sums, Jones exponents, state tables"))
}

fn performance() -> Check {
    let w = parse_braid("B4: 1 -2 3 1 -2 3 1 -2 3 1 -2 3 1 -2 3 1 -2 3 1 -2").unwrap();
    let d = braid_closure(&w);
    ensure(d.crossing_count() == 20, || "not 20 crossings".into())?;
    let t = Instant::now();
    let s = bracket_statesum(&d).unwrap();
    let t_sum = t.elapsed();
    let t = Instant::now();
    let k = bracket_skein_with(&d, &SkeinCache::new(1024)).unwrap();
    let t_skein = t.elapsed();
    ensure(s == k, || "state sum and skein disagree".into())?;
    ensure(t_sum <= Duration::from_secs(10), || format!("state sum took {t_sum:?}"))?;
    ensure(t_skein <= Duration::from_secs(1), || format!("skein took {t_skein:?}"))?;
    Ok(format!("2^20 states {:.3} s (budget 10 s), skein {:.4} s (budget 1 s)", t_sum.as_secs_f64(), t_skein.as_secs_f64()))
}

fn parser_robustness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let alphabet = b"PDX()[],O*B:-0123456789 \n";
    let prev = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut crashes = 0;
    for i in 0..100_000 {
        let len = rng.gen_range(0..32);
        let bytes: Vec<u8> = if i % 2 == 0 {
            (0..len).map(|_| rng.gen()).collect()
        } else {
            (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
        };
        let s = String::from_utf8_lossy(&bytes).into_owned();
        if panic::catch_unwind(|| {
            let _ = parse_pd(&s);
            let _ = parse_braid(&s);
        })
        .is_err()
        {
            crashes += 1;
        }
    }
    panic::set_hook(prev);
    ensure(crashes == 0, || format!("{crashes} inputs crashed a parser"))?;
    for i in 0..10_000 {
        let n = rng.gen_range(2..=5u32);
        let len = rng.gen_range(0..=12);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..n as i32);
                if rng.gen() {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let d = braid_closure(&BraidWord::new(n, letters).unwrap());
        let text = emit_pd(&d);
        let back = parse_pd(&text).map_err(|e| format!("closure {i}: {text}: {e}"))?;
        ensure(back.normal_form() == d.normal_form() && emit_pd(&back) == text, || format!("closure {i}: {text}"))?;
    }
    Ok("100000 fuzz inputs, 10000 closures round-trip".into())
}

fn main() {
    let c = corpus();
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Check>)> = vec![
        ("exact values", Duration::from_secs(1), Box::new(exact_values)),
        ("conway values", Duration::from_secs(1), Box::new(|| conway_values(&c))),
        ("chirality certificate", Duration::from_secs(1), Box::new(|| chirality(&c))),
        ("skein equals state sum", Duration::from_secs(30), Box::new(|| oracle_equivalence(&c))),
        ("invariance under scrambles", Duration::from_secs(300), Box::new(|| invariance_suite(&c))),
        ("L specializes to bracket", Duration::from_secs(30), Box::new(|| specialization(&c))),
        ("structural properties", Duration::from_secs(30), Box::new(|| structural(&c))),
        ("performance", Duration::from_secs(11), Box::new(performance)),
        ("parser robustness", Duration::from_secs(60), Box::new(parser_robustness)),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let r = r.and_then(|m| ensure(el <= *budget, || format!("took {el:?}, budget {budget:?}")).map(|_| m));
        match r {
            Ok(m) => println!("PASS {} {name}: {m} [{:.2} s / {} s]", i + 1, el.as_secs_f64(), budget.as_secs()),
            Err(m) => {
                failed += 1;
                println!("FAIL {} {name}: {m} [{:.2} s / {} s]", i + 1, el.as_secs_f64(), budget.as_secs());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
