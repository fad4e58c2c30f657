//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use quantum_square::orthorep::v_realization_unchecked;
use quantum_square::render::parse_structural_layer;
use quantum_square::{
    build_v_realization, check_incidence, fixtures, parse_logic_spec, verify_faithful, Backend,
    Compiled, PartitionLogic, StateSet,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regex::Regex;

use common::{
    bits, brute_force_states, oracle_separating, random_hypergraph, random_partition_logic,
    resolve, valuations,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn compiled(text: &str) -> Compiled {
    Compiled::from_spec_file(&parse_logic_spec(text).unwrap()).unwrap()
}

fn grammar_lines(text: &str) -> Vec<String> {
    compiled(text)
        .grammar
        .to_text()
        .lines()
        .map(str::to_string)
        .collect()
}

fn ac1() -> Outcome {
    let (logic, states) = resolve(fixtures::L12);
    let table: BTreeSet<Vec<bool>> = ["10001", "10010", "01001", "01010", "00100"]
        .iter()
        .map(|s| bits(s))
        .collect();
    let all = logic.enumerate_states();
    ensure!(all.len() == 5, "{} states enumerated", all.len());
    ensure!(
        valuations(&all) == table,
        "enumeration differs from the table"
    );
    ensure!(valuations(&states) == table, "pinned states differ");
    Ok("5 states, valuations equal the table".into())
}

fn ac2() -> Outcome {
    let (logic, states) = resolve(fixtures::TRIANGLE);
    let table: BTreeSet<Vec<bool>> = ["100100", "010101", "010010", "001001"]
        .iter()
        .map(|s| bits(s))
        .collect();
    let all = logic.enumerate_states();
    ensure!(all.len() == 4, "{} states enumerated", all.len());
    ensure!(
        valuations(&all) == table,
        "enumeration differs from the table"
    );
    ensure!(valuations(&states) == table, "pinned states differ");
    Ok("4 states, valuations equal the table".into())
}

fn ac3() -> Outcome {
    let c = compiled(fixtures::EXAMPLE_A);
    ensure!(
        c.states.len() == 3,
        "{} point-induced states",
        c.states.len()
    );
    let expected = [
        ("p", "s1"),
        ("¬p", "s2,s3"),
        ("q", "s2"),
        ("¬q", "s1,s3"),
        ("r", "s3"),
        ("¬r", "s1,s2"),
    ];
    let supports = c.supports();
    for (atom, truthy) in expected {
        let got = supports
            .get(atom)
            .map(|s| s.truthy.join(","))
            .unwrap_or_default();
        ensure!(got == truthy, "support of {atom}: {got} != {truthy}");
    }
    let rows = grammar_lines(fixtures::EXAMPLE_A);
    let golden = [
        "horizontal_sum --> p,¬p,q,¬q,r,¬r.",
        "p --> s1,br,s2,s3,n.",
        "¬p --> s2,s3,br,s1,n.",
        "q --> s2,br,s1,s3,n.",
        "¬q --> s1,s3,br,s2,n.",
        "r --> s3,br,s1,s2,n.",
        "¬r --> s1,s2,br,s3,n.",
    ];
    ensure!(rows == golden, "grammar rows differ: {rows:?}");
    Ok("3 states, 6 supports and 7 rules match".into())
}

fn ac4() -> Outcome {
    let v = grammar_lines(fixtures::L12);
    let v_golden = [
        "v_logic --> a,b,c,d,e.",
        "a --> s1,s2,br,s3,s4,s5,n.",
        "b --> s3,s4,br,s1,s2,s5,n.",
        "c --> s5,br,s1,s2,s3,s4,n.",
        "d --> s2,s4,br,s1,s3,s5,n.",
        "e --> s1,s3,br,s2,s4,s5,n.",
    ];
    ensure!(v == v_golden, "v-logic rows differ: {v:?}");
    let t = grammar_lines(fixtures::TRIANGLE);
    let t_golden = [
        "triangle_logic --> a,b,c,d,e,f.",
        "a --> s1,br,s2,s3,s4,n.",
        "b --> s2,s3,br,s1,s4,n.",
        "c --> s4,br,s1,s2,s3,n.",
        "d --> s1,s2,br,s3,s4,n.",
        "e --> s3,br,s1,s2,s4,n.",
        "f --> s2,s4,br,s1,s3,n.",
    ];
    ensure!(t == t_golden, "triangle rows differ: {t:?}");
    Ok("v-logic and triangle grammars match".into())
}

/// Incidence and oracle agreement for one instance.
fn incidence_instance(logic: &PartitionLogic, states: &StateSet) -> Result<(), String> {
    let oracle = brute_force_states(logic.atom_count(), logic.contexts());
    ensure!(
        valuations(&logic.enumerate_states()) == oracle,
        "{}: enumeration disagrees with brute force",
        logic.name()
    );
    ensure!(
        valuations(states).is_subset(&oracle),
        "{}: inadmissible state",
        logic.name()
    );
    let raw: Vec<Vec<bool>> = states.states().iter().map(|s| s.values.clone()).collect();
    ensure!(
        oracle_separating(logic.atom_count(), &raw),
        "{}: not separating",
        logic.name()
    );
    let c = Compiled::new(logic.clone(), states.clone()).map_err(|e| e.to_string())?;
    let report = check_incidence(&c.derivation, logic, states);
    ensure!(
        report.holds(),
        "{}: incidence violated: {:?}",
        logic.name(),
        report.violations
    );
    Ok(())
}

fn ac5() -> Outcome {
    for (_, text) in fixtures::ALL {
        let (logic, states) = resolve(text);
        incidence_instance(&logic, &states)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut random, mut draws) = (0, 0);
    while random < 250 {
        draws += 1;
        ensure!(draws < 100_000, "generator starved after {random} logics");
        let drawn = if draws % 2 == 0 {
            random_hypergraph(&mut rng, 8).map(|l| {
                let s = l.enumerate_states();
                (l, s)
            })
        } else {
            random_partition_logic(&mut rng, 8)
        };
        let Some((logic, states)) = drawn else {
            continue;
        };
        if states.is_empty() || !states.is_separating(&logic) {
            continue;
        }
        incidence_instance(&logic, &states)?;
        random += 1;
    }
    Ok(format!(
        "3 fixtures + {random} random logics, no violations"
    ))
}

fn ac6() -> Outcome {
    let c = compiled(fixtures::L12);
    let tiles = |c: &Compiled| c.render(&c.render_spec(Backend::SvgTiles)).unwrap();
    let svg = tiles(&c);
    let rows: Vec<&str> = svg.split("<g class=\"row\"").skip(1).collect();
    ensure!(rows.len() == 5, "{} rows", rows.len());
    let fill = Regex::new(r##"fill="(#[0-9A-F]{6})""##).unwrap();
    for (i, row) in rows.iter().enumerate() {
        let n = row.matches("<rect").count();
        ensure!(n == 6, "row {i} has {n} cells");
    }
    let row_a: Vec<&str> = fill
        .captures_iter(rows[0])
        .map(|m| m.get(1).unwrap().as_str())
        .collect();
    let palette = [
        "#008000", "#0000FF", "#000000", "#FF0000", "#FFA500", "#8F00FF",
    ];
    ensure!(row_a == palette, "row a fills {row_a:?}");

    let schema = c.render(&c.render_spec(Backend::SvgSchema)).unwrap();
    let ones = ["10001", "10010", "01001", "01010", "00100"]
        .iter()
        .map(|s| s.matches('1').count())
        .sum::<usize>();
    let colored = schema.matches("class=\"cell true").count();
    let gray = schema.matches("class=\"cell false").count();
    ensure!(colored == ones, "{colored} colored cells, expected {ones}");
    ensure!(gray == 25 - ones, "{gray} gray cells");
    ensure!(
        schema.matches("fill=\"#BFBFBF\"").count() == gray,
        "gray cells are not gray"
    );

    for (_, text) in fixtures::ALL {
        let (a, b) = (compiled(text), compiled(text));
        for backend in Backend::ALL {
            let (x, y) = (
                a.render(&a.render_spec(backend)).unwrap(),
                b.render(&b.render_spec(backend)).unwrap(),
            );
            ensure!(x == y, "{} output differs between runs", backend.as_str());
        }
    }
    Ok(format!(
        "5x6 tiles, row a as expected, {colored} colored / {gray} gray schema cells, byte-identical"
    ))
}

fn ac7() -> Outcome {
    for (text, first) in [
        (fixtures::L12, "v_logic --> a,b,c,d,e."),
        (fixtures::TRIANGLE, "triangle_logic --> a,b,c,d,e,f."),
    ] {
        let c = compiled(text);
        let src = c.render(&c.render_spec(Backend::LogicProgram)).unwrap();
        ensure!(
            src.lines().next() == Some(first),
            "program starts {:?}",
            src.lines().next()
        );
        let parsed = parse_structural_layer(&src).map_err(|e| e.to_string())?;
        ensure!(
            parsed == c.grammar.production_list(),
            "re-parsed productions differ"
        );
    }
    Ok("both programs start correctly and round-trip".into())
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

fn ac8() -> Outcome {
    let (logic, _) = resolve(fixtures::L12);
    let mut worst = 0.0f64;
    for theta in [PI / 6.0, PI / 4.0, PI / 3.0] {
        let real = build_v_realization(theta).map_err(|e| e.to_string())?;
        let report = verify_faithful(&logic, &real).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "theta {theta}: {:?}", report.lines());
        // independent deviation over unordered pairs within each context
        let mut oracle = 0.0f64;
        for context in logic.contexts() {
            for &x in context {
                let u = real.vector(&logic.atoms()[x]).unwrap();
                oracle = oracle.max((dot(u, u).sqrt() - 1.0).abs());
                for &y in context {
                    if x != y {
                        let v = real.vector(&logic.atoms()[y]).unwrap();
                        ensure!(dot(u, v) == dot(v, u), "asymmetric dot product");
                        oracle = oracle.max(dot(u, v).abs());
                    }
                }
            }
        }
        let dev = report.orthonormality.worst;
        ensure!(dev < 1e-12, "theta {theta}: deviation {dev:e}");
        ensure!(
            (dev - oracle).abs() < 1e-15,
            "theta {theta}: deviation {dev:e} vs oracle {oracle:e}"
        );
        worst = worst.max(dev);
    }

    let flat = v_realization_unchecked(0.0);
    let (a, e) = (flat.vector("a").unwrap(), flat.vector("e").unwrap());
    ensure!(
        dot(a, e).abs() <= 1e-9,
        "oracle: a and e not orthogonal at 0"
    );
    let report = verify_faithful(&logic, &flat).map_err(|e| e.to_string())?;
    ensure!(
        !report.faithfulness.passed,
        "faithfulness passed at theta = 0"
    );
    ensure!(build_v_realization(0.0).is_err(), "theta = 0 accepted");
    Ok(format!(
        "pi/6, pi/4, pi/3 pass (max deviation {worst:.1e}); theta = 0 fails faithfulness at {}",
        report.faithfulness.witness.unwrap_or_default()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 v-logic enumeration", ac1),
        ("AC2 triangle enumeration", ac2),
        ("AC3 base-set horizontal sum", ac3),
        ("AC4 v-logic and triangle grammars", ac4),
        ("AC5 incidence property suite", ac5),
        ("AC6 rendering goldens", ac6),
        ("AC7 logic-program export", ac7),
        ("AC8 orthogonal realization", ac8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, criterion) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
