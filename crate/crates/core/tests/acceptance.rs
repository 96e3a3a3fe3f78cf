//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run alone with `cargo test -p catfield --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use catfield::info::{is_uninformative, BesagVerdict, Neighbor, UnStatus};
use catfield::miner::{
    check_property, enumerate_fields, mine, random_field, random_positive_field, EnumerationBounds, MineConfig,
    PropertyId, SweepConfig, WitnessDetail,
};
use catfield::{
    builtin, event_conditional, marginal, probability, Analyzer, Event, FixtureId, JointField, Lattice,
    LatticeLimits, Rational, SiteSet,
};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check, time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn sites(field: &JointField, names: &[&str]) -> SiteSet {
    names.iter().map(|n| field.site_index(n).unwrap()).collect()
}

fn intersection_counterexample() -> Outcome {
    let fx = builtin(FixtureId::Uniform8);
    let f = &fx.field;
    let (a, b) = (fx.event("A").unwrap(), fx.event("B").unwrap());
    let (c1, c2) = (fx.event("C1").unwrap(), fx.event("C2").unwrap());
    let e = |x| format!("{x:?}");
    ensure(event_conditional(f, a, b).map_err(e)? == Some(r(1, 2)), "P(A|B) != 1/2")?;
    for c in [c1, c2] {
        ensure(
            is_uninformative(f, a, b, c).map_err(e)?.status == UnStatus::MemberEqual,
            "C1 or C2 not MemberEqual",
        )?;
    }
    let meet = c1.intersection(c2);
    let v = is_uninformative(f, a, b, &meet).map_err(e)?;
    ensure(v.status == UnStatus::Informative, "C1 ∩ C2 not informative")?;
    ensure(v.left_value == Some(r(0, 1)), "P(A|B∩C1∩C2) != 0")?;
    ensure(probability(f, &b.intersection(&meet)).map_err(e)? == r(1, 8), "P(B∩C1∩C2) != 1/8")?;
    Ok("P(A|B)=1/2, C1 and C2 member-equal, C1∩C2 informative (0 vs 1/2, mass 1/8)".into())
}

fn three_site_table() -> Outcome {
    let f = &builtin(FixtureId::Table1).field;
    let e = |x| format!("{x:?}");
    let ev = |pairs: &[(&str, &str)]| {
        Event::filter(f, |x| {
            pairs
                .iter()
                .all(|(s, l)| f.label(f.site_index(s).unwrap(), x[f.site_index(s).unwrap()]) == *l)
        })
    };
    let x1 = ev(&[("X", "1")]);
    ensure(probability(f, &x1).map_err(e)? == r(1, 2), "P(X=1) != 1/2")?;
    for y in ["0", "1"] {
        ensure(
            event_conditional(f, &x1, &ev(&[("Y", y)])).map_err(e)? == Some(r(1, 2)),
            "P(X=1|Y=y) != 1/2",
        )?;
    }
    let z0y1 = event_conditional(f, &x1, &ev(&[("Z", "0"), ("Y", "1")])).map_err(e)?;
    let z0y0 = event_conditional(f, &x1, &ev(&[("Z", "0"), ("Y", "0")])).map_err(e)?;
    ensure(z0y1 == Some(r(0, 1)), "P(X=1|Z=0,Y=1) != 0")?;
    ensure(z0y0 == Some(r(1, 2)), "P(X=1|Z=0,Y=0) != 1/2")?;
    let an = Analyzer::new(f).map_err(e)?;
    let x = f.site_index("X").unwrap();
    ensure(an.mi_membership(x, sites(f, &["Y", "Z"])).map_err(e)?.minimal, "{Y,Z} not in MI(X)")?;
    let y = an.mi_membership(x, sites(f, &["Y"])).map_err(e)?;
    ensure(!y.minimal && y.reducing_subset == Some(SiteSet::EMPTY), "{Y} not reduced by the empty set")?;
    Ok("marginal and Y-conditionals 1/2, Z=0 splits 0 vs 1/2, {Y,Z} in MI(X), {Y} reduced by {}".into())
}

fn nonpositive_neighbors() -> Outcome {
    let f = &builtin(FixtureId::Table2).field;
    let e = |x| format!("{x:?}");
    ensure(!f.is_positive(), "field reported positive")?;
    let gap = f.outcome_of_labels(&["1", "0"]).map_err(e)?;
    ensure(f.mass(gap).is_zero(), "P(X=1,Y=0) != 0")?;
    let an = Analyzer::new(f).map_err(e)?;
    for (site, other) in [("X", "Y"), ("Y", "X")] {
        let es = an.es_family(f.site_index(site).unwrap()).map_err(e)?;
        let want = sites(f, &[other]);
        ensure(es.family.sets() == [want], "ES family mismatch")?;
        ensure(es.neighbor == Neighbor::Unique(want), "neighbor mismatch")?;
    }
    Ok("P(X=1,Y=0)=0, ES(X)={{Y}}, ES(Y)={{X}}".into())
}

fn positivity_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let e = |x| format!("{x:?}");
    let fields = 250;
    let mut violations = 0;
    for _ in 0..fields {
        let f = random_positive_field(&mut rng, 4, 3, 7);
        let an = Analyzer::new(&f).map_err(e)?;
        for site in 0..f.n() {
            let besag = an.reduction_family(site).map_err(e)?;
            let es = an.es_family(site).map_err(e)?;
            let ok = match besag.verdict {
                BesagVerdict::WellDefined(s) => es.family.sets() == [s],
                BesagVerdict::Ambiguous(_) => false,
            };
            violations += usize::from(!ok);
        }
    }
    ensure(violations == 0, &format!("{violations} violations"))?;
    Ok(format!("{fields} positive fields, 0 violations"))
}

fn must_hold_sweep() -> Outcome {
    let e = |x| format!("{x:?}");
    let exhaustive = enumerate_fields(&EnumerationBounds::exhaustive(3, 2, &[0, 1, 2])).map_err(e)?;
    let random = enumerate_fields(&EnumerationBounds::random_only(4, 3, &[0, 1, 2, 3], 500, 11)).map_err(e)?;
    let cfg = SweepConfig::default();
    let mut counts = [0usize; 7];
    let mut scanned = 0;
    for f in exhaustive.chain(random) {
        scanned += 1;
        let an = Analyzer::new(&f).map_err(e)?;
        for (k, p) in PropertyId::MUST_HOLD.into_iter().enumerate() {
            counts[k] += check_property(&an, p, &cfg).map_err(e)?.len();
        }
    }
    let bad: Vec<String> = PropertyId::MUST_HOLD
        .iter()
        .zip(counts)
        .filter(|(_, c)| *c > 0)
        .map(|(p, c)| format!("{p}: {c}"))
        .collect();
    ensure(bad.is_empty(), &bad.join(", "))?;
    Ok(format!("{scanned} fields, 7 properties, 0 violations"))
}

fn refutation_mining() -> Outcome {
    let e = |x| format!("{x:?}");
    let mut found = Vec::new();
    for p in [
        PropertyId::UnIntersectionClosure,
        PropertyId::MiDownwardClosure,
        PropertyId::TwoAgents,
    ] {
        let start = Instant::now();
        let res = mine(p, &p.default_bounds(), &MineConfig::default()).map_err(e)?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(60), &format!("{p} took {elapsed:?}"))?;
        ensure(!res.witnesses.is_empty(), &format!("{p}: no witness"))?;
        for w in &res.witnesses {
            ensure(w.revalidate().map_err(e)?, &format!("{p}: witness does not revalidate"))?;
        }
        found.push(format!("{p}={}", res.witnesses.len()));
    }
    let fx = builtin(FixtureId::Uniform8);
    let u8w = WitnessDetail::UnIntersection {
        a: fx.event("A").unwrap().clone(),
        b: fx.event("B").unwrap().clone(),
        c1: fx.event("C1").unwrap().clone(),
        c2: fx.event("C2").unwrap().clone(),
    };
    ensure(
        u8w.revalidate(&fx.field, PropertyId::UnIntersectionClosure).map_err(e)?,
        "UNIFORM8 does not validate",
    )?;
    let t1 = &builtin(FixtureId::Table1).field;
    let t1w = WitnessDetail::MiDownward {
        target: t1.site_index("X").unwrap(),
        minimal: sites(t1, &["Y", "Z"]),
        subset: sites(t1, &["Y"]),
    };
    ensure(
        t1w.revalidate(t1, PropertyId::MiDownwardClosure).map_err(e)?,
        "TABLE1 does not validate",
    )?;
    Ok(format!("witnesses {}; fixtures validate", found.join(" ")))
}

fn lattice_oracle() -> Outcome {
    let e = |x| format!("{x:?}");
    let mut fields: Vec<JointField> = FixtureId::ALL.iter().map(|id| builtin(*id).field).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        fields.push(random_field(&mut rng, 10, 2..=3, &[0, 1, 2, 3]));
    }
    let mut cells = 0usize;
    for f in &fields {
        let lattice = Lattice::new(f, LatticeLimits::default()).map_err(e)?;
        for s in f.all_sites().subsets() {
            let naive = marginal(f, s).map_err(e)?;
            let fast = lattice.get(s);
            ensure(
                fast.weights() == naive.weights() && fast.total() == naive.total(),
                "lattice and naive marginals differ",
            )?;
            cells += naive.len();
        }
    }
    Ok(format!("{} fields, {cells} cells equal", fields.len()))
}

fn ambiguous_copy() -> Outcome {
    let f = &builtin(FixtureId::Copy).field;
    let e = |x| format!("{x:?}");
    let an = Analyzer::new(f).map_err(e)?;
    let x3 = f.site_index("X3").unwrap();
    let (x1, x2) = (sites(f, &["X1"]), sites(f, &["X2"]));
    let status = an.reduction_family(x3).map_err(e)?;
    ensure(status.verdict == BesagVerdict::Ambiguous(vec![x1, x2]), "reduction verdict mismatch")?;
    let si = an.si_family(x3, x1.union(x2)).map_err(e)?;
    ensure(si.sets() == [x1, x2, x1.union(x2)], "SI family mismatch")?;
    Ok("X3 ambiguous between {X1} and {X2}; SI(X3,{X1,X2}) = {{X1},{X2},{X1,X2}}".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("uniform eight-point intersection counterexample", intersection_counterexample, 1),
        ("three-site table conditionals and MI", three_site_table, 1),
        ("non-positive two-site neighbors", nonpositive_neighbors, 1),
        ("positivity gives unique neighbor", positivity_suite, 300),
        ("must-hold sweep", must_hold_sweep, 600),
        ("refutation mining", refutation_mining, 180),
        ("lattice equals naive marginals", lattice_oracle, 120),
        ("ambiguous neighbor on COPY", ambiguous_copy, 1),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => Err(format!("{msg}; over {limit}s limit")),
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        println!("criterion {} [{tag}] {name}: {msg} ({:.3}s)", k + 1, elapsed.as_secs_f64());
        failed += usize::from(outcome.is_err());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
