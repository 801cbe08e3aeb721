//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run a subset with `cargo test --test acceptance -- 1 7 11`.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypergpd::arith::{integer, pochhammer_step, rational};
use hypergpd::cli::Report;
use hypergpd::groupoid::{cardinality_explicit, realize, validate, ExplicitGroupoid, GroupoidExpr, Limits, Node, Size};
use hypergpd::hyper::{
    count_h_objects, explicit_h_objects, functorial_pochhammer, species_h, species_h_lower, species_h_upper,
    verify_theorem_cached, ExplicitCache, ExplicitStrategy, HyperParams, Interpretation, VerifyOptions,
};
use hypergpd::series::EgfSeries;
use hypergpd::species::{Builtin, Species};
use hypergpd::Rational;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- grid

/// All parameter lists of length 0..=2 with entries p/q, 1 <= p, q <= 5.
fn param_lists() -> Vec<Vec<(u64, u64)>> {
    let pairs: Vec<(u64, u64)> = (1..=5).flat_map(|p| (1..=5).map(move |q| (p, q))).collect();
    let mut out = vec![vec![]];
    out.extend(pairs.iter().map(|&x| vec![x]));
    for &x in &pairs {
        for &y in &pairs {
            out.push(vec![x, y]);
        }
    }
    out
}

fn grid() -> impl Iterator<Item = HyperParams> {
    let lists = param_lists();
    let lists2 = lists.clone();
    lists.into_iter().flat_map(move |u| {
        lists2
            .clone()
            .into_iter()
            .map(move |l| HyperParams::new(u.clone(), l).unwrap())
    })
}

fn main_theorem(interpretation: Interpretation) -> Outcome {
    // Smaller blocks: validating a few huge ones costs more than the extra splits.
    let options = VerifyOptions {
        strategy: ExplicitStrategy::Blocks,
        limits: Limits {
            max_compositions: 250_000,
            ..Limits::default()
        },
        ..Default::default()
    };
    let mut cache = ExplicitCache::default();
    let mut points = 0usize;
    let mut blocks = 0usize;
    for params in grid() {
        let report = verify_theorem_cached(&params, 4, interpretation, &options, &mut cache)
            .map_err(|e| format!("{params}: {e}"))?;
        if let Some(o) = &report.overflow {
            return Err(format!("{params}: n={} {}", o.n, o.error));
        }
        if let Some(r) = report.first_failure() {
            return Err(format!(
                "{params} n={}: explicit {} symbolic {} analytic {}",
                r.n, r.explicit, r.symbolic, r.analytic
            ));
        }
        points += report.rows.len();
        blocks += report.rows.iter().map(|r| r.blocks).sum::<usize>();
    }
    Ok(format!(
        "{points} (params, n) points, {blocks} realized blocks, {} distinct",
        cache.len()
    ))
}

// ---------------------------------------------------------------- random generators

fn random_expr(rng: &mut ChaCha8Rng, depth: usize) -> GroupoidExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => GroupoidExpr::empty(),
            1 => GroupoidExpr::unit(),
            2..=5 => GroupoidExpr::discrete(rng.gen_range(0..6)),
            _ => GroupoidExpr::cyclic(rng.gen_range(1..8)),
        };
    }
    let arity = if rng.gen_bool(0.05) { 0 } else { rng.gen_range(1..=4) };
    let children = (0..arity).map(|_| random_expr(rng, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        GroupoidExpr::union(children)
    } else {
        GroupoidExpr::product(children)
    }
}

/// Expressions of depth <= 3 within test-sized caps, small enough that the
/// validator can check associativity exhaustively.
fn criterion6_inputs() -> Vec<GroupoidExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let limits = small_caps();
    let mut out = Vec::new();
    while out.len() < 500 {
        let e = random_expr(&mut rng, 3);
        if limits.fits(&e.size()) && e.size().triples <= 2_000_000 {
            out.push(e);
        }
    }
    out
}

fn small_caps() -> Limits {
    Limits {
        max_objects: 5_000,
        max_morphisms: 20_000,
        max_compositions: 100_000,
    }
}

fn random_species(rng: &mut ChaCha8Rng, depth: usize) -> Species {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..7) {
            0..=4 => Species::builtin(Builtin::ALL[rng.gen_range(0..5)]),
            5 => species_h_upper(rng.gen_range(1..4), rng.gen_range(1..4)),
            _ => species_h_lower(rng.gen_range(1..4), rng.gen_range(1..4)),
        };
    }
    let f = random_species(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => Species::sum(&f, &random_species(rng, depth - 1)),
        1 => Species::hadamard(&f, &random_species(rng, depth - 1)),
        2 => Species::prod(&f, &random_species(rng, depth - 1)),
        _ => Species::compose(&f, &zero_free_species(rng, depth - 1)).unwrap(),
    }
}

fn zero_free_species(rng: &mut ChaCha8Rng, depth: usize) -> Species {
    loop {
        let g = random_species(rng, depth);
        if g.value(0).unwrap().is_empty_groupoid() {
            return g;
        }
    }
}

// ---------------------------------------------------------------- criteria

fn criterion3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // the symbolic identity is the criterion; small cases are also enumerated
    let limits = small_caps();
    let mut explicit = 0;
    for case in 0..200 {
        let g = random_expr(&mut rng, 3);
        let k = random_expr(&mut rng, 3);
        let n = rng.gen_range(0..=6);
        let p = functorial_pochhammer(&g, &k, n);
        let expected = pochhammer_step(&g.cardinality(), n, &k.cardinality());
        ensure(p.cardinality() == expected, || {
            format!("case {case}: g={g} k={k} n={n}: {} vs {expected}", p.cardinality())
        })?;
        if limits.fits(&p.size()) {
            let total = cardinality_explicit(&realize(&p, &limits).unwrap()).unwrap().total;
            ensure(total == expected, || {
                format!("case {case}: explicit {total} vs {expected}")
            })?;
            explicit += 1;
        }
    }
    Ok(format!("200 pairs, {explicit} also enumerated"))
}

/// `n! * (-1)^n * binom(-a/b, n)`, the `x^n/n!` coefficient of `(1 - x)^(-a/b)`.
fn binomial_oracle(a: u64, b: u64, n: usize) -> Rational {
    let r = -rational(a as i64, b as i64);
    let mut falling = Rational::one();
    for i in 0..n {
        falling *= &r - integer(i as u64);
    }
    if n % 2 == 1 {
        -falling
    } else {
        falling
    }
}

fn criterion4() -> Outcome {
    for a in 1..=6 {
        for b in 1..=6 {
            let series = species_h_upper(a, b).valuation(12).map_err(|e| e.to_string())?;
            for n in 0..=12 {
                let expected = binomial_oracle(a, b, n);
                ensure(series[n] == expected, || {
                    format!("a={a} b={b} n={n}: {} vs {expected}", series[n])
                })?;
            }
        }
    }
    Ok("36 parameter pairs to order 12".into())
}

fn criterion5() -> Outcome {
    const ORDER: usize = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let val = |s: &Species| s.valuation(ORDER).map_err(|e| e.to_string());
    for case in 0..500 {
        let f = random_species(&mut rng, 2);
        let g = zero_free_species(&mut rng, 2);
        let (vf, vg) = (val(&f)?, val(&g)?);
        let checks: Vec<(&str, Species, EgfSeries)> = if case % 2 == 0 {
            vec![
                ("sum", Species::sum(&f, &g), vf.add(&vg).unwrap()),
                ("had", Species::hadamard(&f, &g), vf.hadamard(&vg).unwrap()),
                ("prod", Species::prod(&f, &g), vf.cauchy_product(&vg).unwrap()),
                ("comp", Species::compose(&f, &g).unwrap(), vf.compose(&vg).unwrap()),
            ]
        } else {
            let h = random_species(&mut rng, 2);
            let vh = val(&h)?;
            let fh = Species::prod(&f, &h);
            let gh = Species::sum(&g, &Species::hadamard(&h, &g));
            vec![
                (
                    "prod-sum",
                    Species::prod(&fh, &Species::sum(&g, &h)),
                    vf.cauchy_product(&vh)
                        .unwrap()
                        .cauchy_product(&vg.add(&vh).unwrap())
                        .unwrap(),
                ),
                (
                    "had-prod",
                    Species::hadamard(&Species::prod(&f, &g), &h),
                    vf.cauchy_product(&vg).unwrap().hadamard(&vh).unwrap(),
                ),
                (
                    "comp-sum",
                    Species::compose(&Species::sum(&f, &h), &gh).unwrap(),
                    vf.add(&vh)
                        .unwrap()
                        .compose(&vg.add(&vh.hadamard(&vg).unwrap()).unwrap())
                        .unwrap(),
                ),
            ]
        };
        for (name, species, expected) in checks {
            let got = val(&species)?;
            ensure(got == expected, || {
                format!(
                    "case {case} {name}: {species}: {:?} vs {:?}",
                    got.coeffs(),
                    expected.coeffs()
                )
            })?;
        }
    }
    Ok("250 pairs x 4 laws, 250 triples x 3 laws, order 6".into())
}

fn criterion6(inputs: &[GroupoidExpr]) -> Outcome {
    let limits = small_caps();
    let mut objects = 0;
    for (i, e) in inputs.iter().enumerate() {
        let g = realize(e, &limits).map_err(|err| format!("#{i} {e}: {err}"))?;
        let total = cardinality_explicit(&g)
            .map_err(|err| format!("#{i} {e}: {err}"))?
            .total;
        ensure(total == e.cardinality(), || {
            format!("#{i} {e}: explicit {total} vs {}", e.cardinality())
        })?;
        objects += g.object_count();
    }
    Ok(format!("500 expressions, {objects} objects realized"))
}

/// One of four single-entry edits; returns a description.
fn mutate(g: &mut ExplicitGroupoid, rng: &mut ChaCha8Rng) -> String {
    let m = g.morphisms.len() as u32;
    match rng.gen_range(0..4) {
        0 => {
            let mut keys: Vec<_> = g.compose.keys().copied().collect();
            keys.sort_unstable();
            let key = keys[rng.gen_range(0..keys.len())];
            let old = g.compose[&key];
            let new = (old + rng.gen_range(1..m)) % m;
            g.compose.insert(key, new);
            format!("compose{key:?}: {old} -> {new}")
        }
        1 => {
            let mut keys: Vec<_> = g.compose.keys().copied().collect();
            keys.sort_unstable();
            let key = keys[rng.gen_range(0..keys.len())];
            g.compose.remove(&key);
            format!("compose{key:?} removed")
        }
        2 => {
            let i = rng.gen_range(0..m) as usize;
            let old = g.inverse[i].unwrap();
            let new = (old + rng.gen_range(1..m)) % m;
            g.inverse[i] = Some(new);
            format!("inverse[{i}]: {old} -> {new}")
        }
        _ => {
            let i = rng.gen_range(0..m) as usize;
            g.inverse[i] = None;
            format!("inverse[{i}] removed")
        }
    }
}

fn criterion9(inputs: &[GroupoidExpr]) -> Outcome {
    let limits = small_caps();
    let mut targets = Vec::new();
    for (i, e) in inputs.iter().enumerate() {
        let g = realize(e, &limits).unwrap();
        let report = validate(&g);
        ensure(report.is_valid(), || {
            format!("#{i} {e}: {:?}", report.violations.first())
        })?;
        if g.morphism_count() >= 2 && g.compose.len() <= 5_000 {
            targets.push(g);
        }
    }
    ensure(!targets.is_empty(), || "no mutation targets".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..200 {
        let mut g = targets[rng.gen_range(0..targets.len())].clone();
        let what = mutate(&mut g, &mut rng);
        ensure(!validate(&g).is_valid(), || format!("mutation {k} undetected: {what}"))?;
    }
    Ok(format!(
        "500 accepted, 200/200 mutations rejected over {} targets",
        targets.len()
    ))
}

fn criterion7() -> Outcome {
    let z = Species::builtin(Builtin::Z).valuation(8).map_err(|e| e.to_string())?;
    ensure(z[0].is_zero(), || format!("Z a_0 = {}", z[0]))?;
    for n in 1..=8 {
        ensure(z[n] == rational(1, n as i64), || format!("Z a_{n} = {}", z[n]))?;
    }
    let params = HyperParams::new(vec![(1, 1), (1, 1)], vec![(2, 1)]).unwrap();
    for interpretation in [Interpretation::Product, Interpretation::Alternative] {
        let h = species_h(&params, interpretation)
            .valuation(10)
            .map_err(|e| e.to_string())?;
        for n in 0..=10u64 {
            // (1)_n (1)_n / (2)_n as plain products
            let num: BigUint = (0..n).map(|i| BigUint::from(1 + i)).product::<BigUint>().pow(2);
            let den: BigUint = (0..n).map(|i| BigUint::from(2 + i)).product();
            let direct = Rational::new(num.into(), den.into());
            let closed = Rational::new((1..=n).product::<u64>().into(), (n + 1).into());
            ensure(direct == closed && h[n as usize] == direct, || {
                format!("{interpretation} n={n}: {} vs {direct}", h[n as usize])
            })?;
        }
    }
    Ok("Z to order 8, h(1,1;2) to order 10".into())
}

/// Set partitions of `[n]` counted by growing every partition of `[n-1]`.
fn partition_count_oracle(n: usize) -> u64 {
    let mut partitions: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for x in 0..n {
        let mut next = Vec::new();
        for p in &partitions {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        partitions = next;
    }
    partitions.len() as u64
}

fn criterion8() -> Outcome {
    let expected: [u64; 9] = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
    for (n, &b) in expected.iter().enumerate() {
        let oracle = partition_count_oracle(n);
        ensure(oracle == b, || format!("oracle n={n}: {oracle} vs {b}"))?;
    }
    let exp = EgfSeries::exp(8);
    let inner = EgfSeries::from_fn(8, |n| if n == 0 { Rational::zero() } else { Rational::one() });
    let composed = exp.compose(&inner).map_err(|e| e.to_string())?;
    for (n, &b) in expected.iter().enumerate() {
        ensure(composed[n] == integer(b), || format!("n={n}: {} vs {b}", composed[n]))?;
    }
    Ok("series composition and enumeration agree to order 8".into())
}

/// Object count of the realized value: whole when it fits, otherwise the
/// product of the object counts of its realized product blocks.
fn realized_objects(e: &GroupoidExpr, limits: &Limits, cache: &mut HashMap<GroupoidExpr, BigUint>) -> BigUint {
    if let Some(c) = cache.get(e) {
        return c.clone();
    }
    let count = if limits.fits(&e.size()) {
        BigUint::from(realize(e, limits).unwrap().object_count())
    } else {
        match e.node() {
            Node::Product(children) => children.iter().map(|c| realized_objects(c, limits, cache)).product(),
            _ => panic!("unsplittable block over the caps: {e}"),
        }
    };
    cache.insert(e.clone(), count.clone());
    count
}

/// (upper?, p, q, n)
type FactorKey = (bool, u64, u64, usize);

fn criterion10() -> Outcome {
    let limits = Limits::default();
    // literal listing against a literal realization of the whole value, when
    // small, on every fifth parameter pair (5 is coprime to the 651 lists)
    let literal = Limits {
        max_objects: 256,
        max_morphisms: 256,
        max_compositions: 1_024,
    };
    let mut realized_cache = HashMap::new();
    // factor value, realized objects, listed triples
    let mut factors: HashMap<FactorKey, (GroupoidExpr, u128, u128)> = HashMap::new();
    let (mut points, mut literal_points) = (0usize, 0usize);
    for (index, params) in grid().enumerate() {
        for n in 0..=3 {
            let keys = params
                .upper
                .iter()
                .map(|&(a, b)| (true, a, b, n))
                .chain(params.lower.iter().map(|&(c, d)| (false, c, d, n)));
            let mut parts = Vec::with_capacity(4);
            let (mut realized, mut triples) = (1u128, 1u128);
            for key @ (up, p, q, n) in keys {
                let (f, objects, listed) = factors.entry(key).or_insert_with(|| {
                    let single = if up {
                        HyperParams::new(vec![(p, q)], vec![]).unwrap()
                    } else {
                        HyperParams::new(vec![], vec![(p, q)]).unwrap()
                    };
                    let f = species_h(&single, Interpretation::Product).value(n).unwrap();
                    let objects = realized_objects(&f, &limits, &mut realized_cache).try_into().unwrap();
                    let listed = explicit_h_objects(&single, n, &limits).unwrap().len() as u128;
                    (f, objects, listed)
                });
                parts.push(f.clone());
                realized = realized.checked_mul(*objects).unwrap();
                triples = triples.checked_mul(*listed).unwrap();
            }
            ensure(triples == realized, || {
                format!("{params} n={n}: {triples} triples vs {realized} objects")
            })?;
            ensure(count_h_objects(&params, n) == BigUint::from(triples), || {
                format!("{params} n={n}: count_h_objects disagrees")
            })?;
            let size = parts.iter().fold(Size::ONE, |acc, f| acc.times(f.size()));
            if index % 5 == 0 && literal.fits(&size) {
                let value = GroupoidExpr::product(parts);
                let listed = explicit_h_objects(&params, n, &limits).unwrap().len();
                let whole = realize(&value, &literal).unwrap().object_count();
                ensure(listed == whole, || {
                    format!("{params} n={n}: {listed} listed vs {whole} realized")
                })?;
                literal_points += 1;
            }
            points += 1;
        }
    }
    // the assembled values are the species values
    for params in grid().step_by(997) {
        for n in 0..=3 {
            let built = params.factor_values(n, Interpretation::Product);
            ensure(
                GroupoidExpr::product(built) == species_h(&params, Interpretation::Product).value(n).unwrap(),
                || format!("{params} n={n}: factor assembly differs from the species value"),
            )?;
        }
    }
    Ok(format!("{points} points, {literal_points} compared whole"))
}

// ---------------------------------------------------------------- CLI

fn cli(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypergpd"));
    cmd.args(args).env_remove("GPD_MAX_OBJECTS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn check_schema(text: &str) -> Result<(), String> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let obj = v.as_object().ok_or("not an object")?;
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    ensure(
        keys == [
            "basis",
            "coefficients",
            "command",
            "order",
            "params",
            "per_n",
            "verified",
        ],
        || format!("keys {keys:?}"),
    )?;
    let strings = |v: &serde_json::Value| {
        v.as_array().is_some_and(|a| {
            a.iter()
                .all(|s| s.as_str().is_some_and(|s| s.parse::<Rational>().is_ok()))
        })
    };
    ensure(
        obj["command"].is_string() && obj["basis"].is_string() && obj["order"].is_u64(),
        || "scalar fields".into(),
    )?;
    let params = obj["params"].as_object().ok_or("params")?;
    ensure(
        params.len() == 2 && strings(&params["upper"]) && strings(&params["lower"]),
        || "params fields".into(),
    )?;
    ensure(strings(&obj["coefficients"]), || "coefficients".into())?;
    ensure(obj["verified"].is_null() || obj["verified"].is_boolean(), || {
        "verified".into()
    })?;
    match &obj["per_n"] {
        serde_json::Value::Null => {}
        serde_json::Value::Array(rows) => {
            for r in rows {
                let r = r.as_object().ok_or("row")?;
                let ok = r.len() == 5
                    && r["n"].is_u64()
                    && r["pass"].is_boolean()
                    && ["explicit", "symbolic", "analytic"]
                        .iter()
                        .all(|k| r[*k].as_str().is_some_and(|s| s.parse::<Rational>().is_ok()));
                ensure(ok, || format!("row {r:?}"))?;
            }
        }
        _ => return Err("per_n".into()),
    }
    let report: Report = serde_json::from_str(text).map_err(|e| e.to_string())?;
    ensure(format!("{}\n", report.to_json()) == text, || {
        "round trip differs".into()
    })
}

/// (args, environment, exit code, exact stdout)
type CliCase<'a> = (&'a [&'a str], &'a [(&'a str, &'a str)], i32, Option<&'a str>);

fn criterion11() -> Outcome {
    let cases: &[CliCase] = &[
        (
            &[
                "coeffs", "--upper", "1/1", "--lower", "", "--order", "3", "--basis", "egf",
            ],
            &[],
            0,
            Some("1, 1, 2, 6\n"),
        ),
        (&["coeffs", "--order", "2"], &[], 0, Some("1, 1, 1\n")),
        (&["coeffs", "--upper", "1/0"], &[], 2, None),
        (&["coeffs", "--upper", "1/2", "--order", "x"], &[], 2, None),
        (&["frobnicate"], &[], 2, None),
        (&["verify", "--upper", "1/2", "--order", "3"], &[], 0, None),
        (
            &["verify", "--upper", "3/2", "--order", "12", "--max-objects", "100"],
            &[],
            3,
            None,
        ),
        (
            &["verify", "--upper", "3/2", "--order", "12"],
            &[("GPD_MAX_OBJECTS", "100")],
            3,
            None,
        ),
        (
            &["verify", "--upper", "3/2", "--order", "4", "--max-objects", "1000"],
            &[("GPD_MAX_OBJECTS", "100")],
            0,
            None,
        ),
        (
            &[
                "verify",
                "--upper",
                "1/2,2/3",
                "--lower",
                "3/4",
                "--order",
                "3",
                "--interpretation",
                "alt",
            ],
            &[],
            0,
            None,
        ),
        (
            &["verify", "--upper", "1/2", "--order", "3", "--species", "Z"],
            &[],
            1,
            None,
        ),
        (&["card", "u(cyclic(2),cyclic(2))"], &[], 0, Some("1\n")),
        (&["card", "empty"], &[], 0, Some("0\n")),
        (&["card", "u(cyclic(2),"], &[], 2, None),
        (
            &["card", "x(discrete(1000),discrete(1000))", "--mode", "explicit"],
            &[],
            3,
            None,
        ),
        (&["species", "Z", "--order", "4"], &[], 0, Some("0, 1, 1/2, 1/3, 1/4\n")),
        (
            &["species", "comp(sets, Z)", "--order", "3"],
            &[],
            0,
            Some("1, 1, 3/2, 17/6\n"),
        ),
        (&["species", "comp(sets, one)"], &[], 2, None),
        (&["species", "comp(sets, Z)", "--order", "13"], &[], 3, None),
    ];
    for (args, env, code, stdout) in cases {
        let (got, out, err) = cli(args, env);
        ensure(got == *code, || {
            format!("{args:?}: exit {got}, expected {code}; stderr {err:?}")
        })?;
        if let Some(s) = stdout {
            ensure(out == *s, || format!("{args:?}: stdout {out:?}"))?;
        }
    }
    let (_, out, err) = cli(&["verify", "--upper", "1/2", "--order", "3", "--species", "Z"], &[]);
    ensure(err.contains("n=0") && out.contains("FAIL"), || {
        format!("mismatch report: {err:?}")
    })?;
    let (_, out, _) = cli(&["card", "x(discrete(3),cyclic(4))", "--mode", "explicit"], &[]);
    ensure(
        out.starts_with("3/4\n3 iso classes\n") && out.lines().skip(3).all(|l| l.ends_with(" 4")),
        || format!("class table {out:?}"),
    )?;

    let json_cases: &[&[&str]] = &[
        &[
            "coeffs", "--upper", "1/2,3/4", "--lower", "5/6", "--order", "5", "--format", "json",
        ],
        &[
            "coeffs", "--upper", "1/2", "--order", "4", "--basis", "ordinary", "--format", "json",
        ],
        &[
            "verify", "--upper", "1/2", "--lower", "2/3", "--order", "3", "--format", "json",
        ],
        &[
            "verify",
            "--upper",
            "1/2",
            "--order",
            "2",
            "--species",
            "Z",
            "--format",
            "json",
        ],
        &[
            "verify",
            "--upper",
            "3/2",
            "--order",
            "6",
            "--max-objects",
            "100",
            "--format",
            "json",
        ],
        &[
            "card",
            "x(discrete(3),cyclic(4))",
            "--mode",
            "explicit",
            "--format",
            "json",
        ],
        &["species", "prod(Z, sets)", "--order", "5", "--format", "json"],
    ];
    for args in json_cases {
        let (_, out, _) = cli(args, &[]);
        check_schema(&out).map_err(|e| format!("{args:?}: {e}: {out}"))?;
    }
    Ok(format!(
        "{} exit-code cases, {} JSON documents",
        cases.len() + 2,
        json_cases.len()
    ))
}

// ---------------------------------------------------------------- driver

/// (number, name, budget in seconds, check)
type Criterion<'a> = (usize, &'static str, u64, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let want = |k: usize| selected.is_empty() || selected.contains(&k);
    let inputs = if want(6) || want(9) {
        criterion6_inputs()
    } else {
        Vec::new()
    };

    let criteria: Vec<Criterion> = vec![
        (
            1,
            "main theorem, product interpretation",
            60,
            Box::new(|| main_theorem(Interpretation::Product)),
        ),
        (
            2,
            "main theorem, alternative interpretation",
            60,
            Box::new(|| main_theorem(Interpretation::Alternative)),
        ),
        (3, "functorial Pochhammer cardinality", 5, Box::new(criterion3)),
        (4, "upper species vs binomial series", 5, Box::new(criterion4)),
        (5, "valuation homomorphism", 30, Box::new(criterion5)),
        (
            6,
            "explicit vs symbolic cardinality",
            30,
            Box::new(|| criterion6(&inputs)),
        ),
        (7, "known series", 1, Box::new(criterion7)),
        (8, "Bell numbers by composition", 1, Box::new(criterion8)),
        (9, "groupoid axiom validator", 10, Box::new(|| criterion9(&inputs))),
        (10, "triple-object counts", 10, Box::new(criterion10)),
        (11, "CLI contract", 5, Box::new(criterion11)),
    ];

    let mut failed = 0;
    for (k, name, budget, run) in criteria {
        if !want(k) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {k:>2} {status}  {name} [{:.2} s / {budget} s]: {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
