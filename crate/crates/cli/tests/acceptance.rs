//! Acceptance suite: one PASS/FAIL line per criterion, with the measured
//! value next to the pinned tolerance. Bare arguments select criteria by
//! number, e.g. `cargo test --test acceptance -- 3 4`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{random_map, random_poset_named, random_simplicial_map, rng};
use rand::Rng;
use serde_json::Value;
use zipper_cli::certificate::{
    canonical_poset, sha256_hex, verify, Certificate, Payload, ZipTarget,
};
use zipper_cli::fixtures;
use zipper_cli::Subject;
use zipper_core::certify::*;
use zipper_core::cylinders::{hocolim_reconstruct, homma_factorization, mc, mc_star};
use zipper_core::homology::homology;
use zipper_core::ops::*;
use zipper_core::{find_isomorphism, MonotoneMap, Poset};

type Outcome = Result<String, String>;

fn iso(a: &Poset, b: &Poset) -> bool {
    a.len() == b.len() && find_isomorphism(a, b).is_some()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    let s = format!("{:.2}s (limit {}s)", t.as_secs_f64(), limit.as_secs());
    if t <= limit {
        Ok(s)
    } else {
        Err(format!("took {s}"))
    }
}

fn poset_of(s: Subject) -> Poset {
    s.poset()
}

/// Face posets of all complexes on at most five vertices, plus the fixtures.
fn corpus() -> Vec<(String, Poset)> {
    let mut out: Vec<(String, Poset)> = small_complexes(5)
        .iter()
        .enumerate()
        .map(|(i, k)| (format!("complex #{i}"), k.face_poset()))
        .collect();
    out.push(("I^2".into(), poset_of(fixtures::cube_fixture(2))));
    out.push(("I^3".into(), poset_of(fixtures::cube_fixture(3))));
    out.push(("prism".into(), poset_of(fixtures::prism_fixture())));
    out.push(("octahedron".into(), fixtures::octahedron().face_poset()));
    out
}

fn equivalence() -> Outcome {
    let start = Instant::now();
    let members = corpus();
    let mut zips = 0;
    let mut bad = Vec::new();
    for (name, k) in &members {
        let z = find_zipping(k, &ZipGoal::Singleton);
        let c = find_construction(&k.dual());
        if matches!(z, Search::Exhausted(_)) || matches!(c, Search::Exhausted(_)) {
            bad.push(format!("{name}: budget exhausted"));
            continue;
        }
        zips += z.is_found() as usize;
        if z.is_found() != c.is_found() {
            bad.push(format!(
                "{name}: zipping {} but dual construction {}",
                z.is_found(),
                c.is_found()
            ));
        }
    }
    ensure(bad.is_empty(), || {
        format!(
            "{} disagreements (tolerance 0): {}",
            bad.len(),
            bad.join("; ")
        )
    })?;
    let time = within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{} members, {zips} zip to a point, 0 disagreements (tolerance 0), {time}",
        members.len()
    ))
}

fn bridge() -> Outcome {
    let mut n = 0;
    let mut steps_total = 0;
    for (name, k) in corpus() {
        let Search::Found(t) = find_construction(&k.dual()) else {
            continue;
        };
        n += 1;
        let b = zipping_from_construction(&k, &t).map_err(|e| format!("{name}: {e}"))?;
        verify_zipping(&k, &b.steps, &ZipGoal::Singleton).map_err(|e| format!("{name}: {e}"))?;
        let mut cur = k.clone();
        for s in &b.steps {
            let next = elementary_zip(&cur, s)
                .map_err(|e| format!("{name}: {e}"))?
                .0;
            ensure(next.len() + 2 == cur.len(), || {
                format!(
                    "{name}: a step went from {} to {} elements",
                    cur.len(),
                    next.len()
                )
            })?;
            cur = next;
        }
        ensure(cur.len() == 1, || {
            format!("{name}: ends at {} elements", cur.len())
        })?;
        steps_total += b.steps.len();
    }
    ensure(n > 0, || "no dual-constructible members".into())?;
    Ok(format!("{n} dual-constructible members bridged, {steps_total} steps, each removing exactly 2 elements"))
}

fn steinitz() -> Outcome {
    let start = Instant::now();
    let o = fixtures::octahedron();
    let tetra = parse_boundary_tetrahedron();
    let route = find_edge_zipping(&o, &tetra)
        .found()
        .ok_or("no edge-zipping route to the tetrahedron boundary")?;
    let zs = zipping_from_edge_zipping(&o, &route).map_err(|e| e.to_string())?;
    verify_zipping(
        &o.face_poset(),
        &zs,
        &ZipGoal::Isomorphic(tetra.face_poset()),
    )
    .map_err(|e| e.to_string())?;
    let time = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{} edge contractions expand to {} verified zips, {time}",
        route.len(),
        zs.len()
    ))
}

fn parse_boundary_tetrahedron() -> FacetComplex {
    zipper_cli::parse_facets("facets: abc abd acd bcd\n").expect("fixture text parses")
}

fn dunce_hat() -> Outcome {
    let start = Instant::now();
    let k = fixtures::dunce_hat();
    let p = k.face_poset();
    let h = homology(&p);
    ensure(
        h.reduced_betti().iter().all(|&b| b == 0) && h.torsion.iter().all(|t| t.is_empty()),
        || format!("not integrally acyclic: {h:?}"),
    )?;
    let c = is_collapsible_poset(&p);
    ensure(c.is_no(), || {
        format!("collapsibility verdict {c}, expected no")
    })?;
    let hs = hochster_construction(&k);
    ensure(hs == Search::Refuted, || format!("hochster search: {hs:?}"))?;
    let ds = find_construction(&p.dual());
    ensure(ds == Search::Refuted, || {
        format!("dual construction search: {ds:?}")
    })?;
    let time = within(start, Duration::from_secs(300))?;
    Ok(format!(
        "acyclic over Z, not collapsible, both constructions refuted exhaustively, {time}"
    ))
}

fn collapse_chain() -> Outcome {
    let mut n = 0;
    let mut fails = Vec::new();
    for (name, k) in corpus().into_iter().filter(|(_, k)| k.len() <= 12) {
        if !is_collapsible_poset(&k).is_yes() {
            continue;
        }
        n += 1;
        let h = barycentric_handles(&k);
        let shell = find_shelling(&h, ShellGoal::Cone)
            .found()
            .filter(|s| verify_shelling(&h, s).is_ok());
        let cons = find_construction(&h)
            .found()
            .filter(|t| verify_construction(&h, t).is_ok());
        if shell.is_none() || cons.is_none() {
            fails.push(name);
        }
    }
    ensure(fails.is_empty(), || {
        format!(
            "{} counterexamples (tolerance 0): {}",
            fails.len(),
            fails.join(", ")
        )
    })?;
    ensure(n > 0, || "no collapsible members".into())?;
    Ok(format!("{n} collapsible members, handle posets shell and construct, 0 counterexamples (tolerance 0)"))
}

const PAIRS: usize = 200;

fn identities() -> Outcome {
    let mut r = rng(0x1d);
    let pair = |r: &mut rand_chacha::ChaCha8Rng, max: usize| {
        let (a, b) = (r.gen_range(0..=max), r.gen_range(0..=max));
        (
            random_poset_named(r, a, 0.4, "p"),
            random_poset_named(r, b, 0.4, "q"),
        )
    };
    let mut fails: Vec<String> = Vec::new();
    let mut check = |law: &str, ok: bool| {
        if !ok {
            fails.push(law.to_string());
        }
    };
    for _ in 0..PAIRS {
        let (p, q) = pair(&mut r, 4);
        check(
            "(P+Q) subdivision",
            iso(
                &barycentric(&prejoin(&p, &q)),
                &join(&barycentric(&p), &barycentric(&q)),
            ),
        );
        check(
            "CP x CQ",
            iso(&product(&cone(&p), &cone(&q)), &cone(&cojoin(&p, &q))),
        );
        check(
            "(PxQ) canonical",
            iso(
                &canonical(&product(&p, &q)),
                &product(&canonical(&p), &canonical(&q)),
            ),
        );
        check("(P*) canonical", iso(&canonical(&p.dual()), &canonical(&p)));
        let (s, t) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let names: Vec<String> = (0..s + t)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        check(
            "simplex join",
            iso(
                &join(&simplex(&names[..s]), &simplex(&names[s..])),
                &simplex(&names),
            ),
        );
        let (p, q) = pair(&mut r, 3);
        let pq = product(&p, &q);
        for x in 0..p.len() {
            for y in 0..q.len() {
                let lhs = pq.sub(&link(&pq, x * q.len() + y));
                check(
                    "link of product",
                    iso(&lhs, &join(&p.sub(&link(&p, x)), &q.sub(&link(&q, y)))),
                );
            }
        }
    }
    ensure(fails.is_empty(), || {
        format!(
            "{} failures (tolerance 0): {}",
            fails.len(),
            fails.join(", ")
        )
    })?;
    Ok(format!(
        "6 laws x {PAIRS} random pairs, 0 failures (tolerance 0)"
    ))
}

fn cylinders() -> Outcome {
    let mut r = rng(0xc7);
    let (mut maps, mut closed, mut open, mut tries) = (0, 0, 0, 0);
    while maps < 500 {
        tries += 1;
        ensure(tries < 100_000, || "could not draw enough maps".into())?;
        let (a, b) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let p = random_poset_named(&mut r, a, 0.35, "p");
        let q = random_poset_named(&mut r, b, 0.35, "q");
        let Some(f) = random_map(&mut r, &p, &q) else {
            continue;
        };
        maps += 1;
        let m = mc(&f).map_err(|e| e.to_string())?.is_poset();
        let ms = mc_star(&f).map_err(|e| e.to_string())?.is_poset();
        ensure(m == f.is_closed() && ms == f.is_open(), || {
            format!("disagreement on map {:?}", f.table())
        })?;
        closed += m as usize;
        open += ms as usize;
    }
    let src = simplex(&["a", "b", "c"]);
    let tgt = simplex(&["d", "x"]);
    let pairs = [
        ("a", "x"),
        ("b", "d"),
        ("c", "d"),
        ("ab", "dx"),
        ("ac", "dx"),
        ("bc", "d"),
        ("abc", "dx"),
    ];
    let f = MonotoneMap::from_labels(src, tgt, &pairs).map_err(|e| e.to_string())?;
    let m = mc(&f)
        .and_then(|m| m.to_poset())
        .map_err(|e| e.to_string())?;
    ensure(!m.is_conditionally_complete(), || {
        "cylinder of the triangle-to-edge map is conditionally complete".into()
    })?;
    Ok(format!("{maps} maps ({closed} closed, {open} open), exact agreement; triangle-to-edge cylinder is not conditionally complete"))
}

fn hocolim() -> Outcome {
    let mut r = rng(0x40c);
    let maps = 150;
    let mut factors = 0;
    for i in 0..maps {
        let (n, m) = (r.gen_range(1..=5), r.gen_range(1..=4));
        let f = random_simplicial_map(&mut r, n, m);
        let (h, to_src) = hocolim_reconstruct(&f).map_err(|e| format!("map {i}: {e}"))?;
        ensure(to_src.is_isomorphism() && iso(&h, f.source()), || {
            format!("map {i}: reconstruction is not an isomorphism")
        })?;
        let gs = homma_factorization(&f).map_err(|e| format!("map {i}: {e}"))?;
        let mut comp = MonotoneMap::identity(f.source());
        for g in &gs {
            let big = (0..g.target().len())
                .filter(|&y| g.fiber(y).count() > 1)
                .count();
            ensure(big <= 1, || {
                format!("map {i}: a factor has {big} non-singleton fibers")
            })?;
            comp = comp.then(g).map_err(|e| e.to_string())?;
        }
        ensure(comp.table() == f.table(), || {
            format!("map {i}: factors do not compose to the map")
        })?;
        factors += gs.len();
    }
    Ok(format!("{maps} simplicial maps (tolerance >= 100), {factors} factors, all reconstructions isomorphic"))
}

fn mirroring() -> Outcome {
    let mut n = 0;
    for k in small_complexes(4)
        .into_iter()
        .filter(|k| !k.vertices().is_empty())
    {
        let m = mirror(&k);
        let fk = k.face_poset();
        let vertices: Vec<usize> = (0..m.len()).filter(|&x| m.below(x).is_empty()).collect();
        ensure(vertices.len() == 1 << k.vertices().len(), || {
            format!("{} vertices in the mirror", vertices.len())
        })?;
        for v in vertices {
            ensure(iso(&m.sub(&link(&m, v)), &fk), || {
                format!("link of {} differs from the complex", m.label(v))
            })?;
        }
        n += 1;
    }
    Ok(format!(
        "{n} complexes on <= 4 vertices, every vertex link isomorphic to the complex"
    ))
}

/// Valid certificates of every kind over a few small subjects.
fn certificates() -> Vec<Certificate> {
    let square = canonical_poset(&poset_of(fixtures::cube_fixture(2)));
    let tri = canonical_poset(&simplex(&["a", "b", "c"]));
    let mut out = Vec::new();
    for p in [&square, &tri] {
        let s = Subject::Poset(p.clone());
        let steps = find_zipping(p, &ZipGoal::Singleton).found().unwrap();
        out.push(Certificate::new(
            &s,
            Payload::Zipping {
                target: ZipTarget::Singleton,
                steps,
            },
        ));
        let d = canonical_poset(&p.dual());
        let t = find_construction(&d).found().unwrap();
        out.push(Certificate::new(
            &Subject::Poset(d),
            Payload::Construction(t),
        ));
        out.push(Certificate::new(
            &s,
            Payload::Shelling(find_shelling(p, ShellGoal::Empty).found().unwrap()),
        ));
        let seq = find_collapse_to_point(p).found().unwrap();
        out.push(Certificate::new(
            &s,
            Payload::SimplicialCollapse(barycentric_collapse_lift(p, &seq).unwrap()),
        ));
        out.push(Certificate::new(&s, Payload::Collapse(seq)));
    }
    let o =
        zipper_cli::parse_facets(&zipper_cli::write_facets(&fixtures::octahedron(), None)).unwrap();
    let tetra = parse_boundary_tetrahedron();
    let steps = find_edge_zipping(&o, &tetra).found().unwrap();
    out.push(Certificate::new(
        &Subject::Facets(o),
        Payload::EdgeZipping {
            target: zipper_cli::write_facets(&tetra, None),
            steps,
        },
    ));
    out
}

fn leaves(v: &Value, path: &mut Vec<Value>, out: &mut Vec<Vec<Value>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                path.push(Value::String(k.clone()));
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                path.push(Value::from(i));
                leaves(x, path, out);
                path.pop();
            }
        }
        _ => out.push(path.clone()),
    }
}

fn leaf_mut<'a>(v: &'a mut Value, path: &[Value]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match k {
        Value::String(s) => &mut v[s.as_str()],
        k => &mut v[k.as_u64().unwrap() as usize],
    })
}

fn corrupt(leaf: &mut Value, r: &mut impl Rng) {
    *leaf = match leaf.take() {
        Value::Number(n) => match n.as_u64() {
            Some(x) if r.gen_bool(0.5) => Value::from(x + r.gen_range(1..4)),
            Some(x) if x > 0 => Value::from(x - 1),
            _ => Value::from(r.gen_range(1..100u64)),
        },
        Value::String(s) if s.is_empty() || r.gen_bool(0.5) => Value::String(format!("{s}x")),
        Value::String(s) => {
            let mut cs: Vec<char> = s.chars().collect();
            let i = r.gen_range(0..cs.len());
            cs[i] = if cs[i] == '0' { '1' } else { '0' };
            Value::String(cs.into_iter().collect())
        }
        Value::Bool(b) => Value::Bool(!b),
        _ => Value::from(0),
    };
}

fn accepted(text: &str) -> bool {
    Certificate::from_json(text).is_ok_and(|c| verify(&c, None).is_ok())
}

fn mutations() -> Outcome {
    let certs = certificates();
    for c in &certs {
        verify(c, None)
            .map_err(|e| format!("unmutated {} certificate rejected: {e}", c.body.kind()))?;
    }
    let mut r = rng(0xcef);
    let trials = 1000;
    let (mut caught, mut semantic_caught) = (0, 0);
    for _ in 0..trials {
        let c = &certs[r.gen_range(0..certs.len())];
        let base: Value = serde_json::from_str(&c.to_json()).unwrap();
        let mut paths = Vec::new();
        leaves(&base, &mut Vec::new(), &mut paths);
        let path = &paths[r.gen_range(0..paths.len())];
        let mut v = base.clone();
        corrupt(leaf_mut(&mut v, path), &mut r);
        caught += !accepted(&v.to_string()) as usize;
        // Same corruption with the digest recomputed: only replay can object.
        if path.first().and_then(Value::as_str) != Some("digest") {
            if let Some(m) = v.as_object_mut() {
                m.remove("digest");
            }
            let digest = sha256_hex(&v.to_string());
            v["digest"] = Value::String(digest);
            semantic_caught += !accepted(&v.to_string()) as usize;
        } else {
            semantic_caught += 1;
        }
    }
    ensure(caught == trials, || {
        format!(
            "{} of {trials} mutants accepted (tolerance 0)",
            trials - caught
        )
    })?;
    Ok(format!(
        "{caught}/{trials} single-leaf mutants rejected over {} certificates; with a recomputed digest replay alone rejects {semantic_caught}/{trials}",
        certs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("zipping <=> dual constructibility", equivalence),
        ("construction to zipping bridge", bridge),
        ("octahedron edge-zips to the tetrahedron boundary", steinitz),
        ("dunce hat", dunce_hat),
        ("collapse implies shelling of handles", collapse_chain),
        ("identity suite", identities),
        ("mapping cylinder biconditional", cylinders),
        ("hocolim reconstruction and factorization", hocolim),
        ("mirroring", mirroring),
        ("certificate integrity", mutations),
    ];
    let wanted: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
