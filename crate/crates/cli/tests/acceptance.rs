//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hovey_core::classcat::{build_catalog, Catalog, ObjectClass, SearchStatus};
use hovey_core::demos;
use hovey_core::homext::{
    bicartesian_check, ext1, horseshoe, lift_obstruction, projective_cover, pullback_extension, pushout_extension,
    Square,
};
use hovey_core::hovey::{build_hovey_triple, compute_w, verify_thickness, HoveyTriple, PairClasses};
use hovey_core::linmod::{hom_basis, kernel_of, Algebra, Mat, Module, Morphism, ShortExactSequence};
use hovey_core::Error;
use hovey_forge::{demo_spec, parse_spec, run, Command, Overrides};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn demo_algebras() -> Vec<(&'static str, Arc<Algebra>)> {
    demos::NAMES.iter().map(|&n| (n, demos::by_name(n).unwrap())).collect()
}

fn pair_classes(q: &ObjectClass, r_tilde: &ObjectClass, q_tilde: &ObjectClass, r: &ObjectClass) -> PairClasses {
    PairClasses { q: q.clone(), r_tilde: r_tilde.clone(), q_tilde: q_tilde.clone(), r: r.clone() }
}

/// Every configuration expected to certify: the stable structures of the two
/// local Frobenius demos, and both degenerate configurations on every demo.
fn certified_configs() -> Vec<(String, Catalog, PairClasses)> {
    let mut out = Vec::new();
    for (name, alg) in demo_algebras() {
        let cat = build_catalog(&alg).unwrap();
        let all = ObjectClass::all(&cat);
        let proj = ObjectClass::projectives(&cat);
        let inj = ObjectClass::injectives(&cat);
        if name != "a2" {
            out.push((format!("{name} stable"), cat.clone(), pair_classes(&all, &proj, &proj, &all)));
        }
        out.push((format!("{name} (all, inj)"), cat.clone(), pair_classes(&all, &inj, &all, &inj)));
        out.push((format!("{name} (proj, all)"), cat, pair_classes(&proj, &all, &proj, &all)));
    }
    out
}

// ---------------------------------------------------------------------------
// Brute-force Baer class count.
//
// Every extension of M by N is equivalent to one on N ⊕ M with block upper
// triangular arrow actions [[N(a), D_a], [0, M(a)]]. Valid tuples D form the
// cocycles Z; D and D' are equivalent iff D' - D = N(a) h_s - h_t M(a) for some
// family h_v: M_v -> N_v. So the number of classes is |Z| / |B|.

const ENUMERATION_LIMIT: u64 = 1 << 16;

/// Calls `f` on every vector in `F_p^n`.
fn for_each_vector(p: u32, n: usize, mut f: impl FnMut(&[u32])) {
    let mut v = vec![0u32; n];
    loop {
        f(&v);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

fn mat_from(field: hovey_core::linmod::PrimeField, rows: usize, cols: usize, xs: &[u32]) -> Mat {
    let v: Vec<i64> = xs.iter().map(|&x| x as i64).collect();
    Mat::from_vec(field, rows, cols, &v).unwrap()
}

fn baer_class_count(m: &Module, n: &Module) -> Option<(u64, u64)> {
    let alg = m.algebra();
    let f = alg.field();
    let p = f.p();
    let arrows = alg.arrows();
    let d_len: usize = arrows.iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let h_len: usize = (0..alg.vertex_count()).map(|v| n.dim(v) * m.dim(v)).sum();
    if (p as u64).pow(d_len as u32) > ENUMERATION_LIMIT || (p as u64).pow(h_len as u32) > ENUMERATION_LIMIT {
        return None;
    }
    let dims: Vec<usize> = (0..alg.vertex_count()).map(|v| n.dim(v) + m.dim(v)).collect();

    let mut cocycles = 0u64;
    for_each_vector(p, d_len, |d| {
        let mut off = 0;
        let action = arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let (nt, ms) = (n.dim(a.target), m.dim(a.source));
                let mut e = Mat::zeros(f, dims[a.target], dims[a.source]);
                e.paste(0, 0, n.action(ai));
                e.paste(0, n.dim(a.source), &mat_from(f, nt, ms, &d[off..off + nt * ms]));
                e.paste(nt, n.dim(a.source), m.action(ai));
                off += nt * ms;
                e
            })
            .collect();
        if Module::new(alg, dims.clone(), action).is_ok() {
            cocycles += 1;
        }
    });

    let mut coboundaries: HashSet<Vec<u32>> = HashSet::new();
    for_each_vector(p, h_len, |h| {
        let mut hs = Vec::new();
        let mut off = 0;
        for v in 0..alg.vertex_count() {
            let len = n.dim(v) * m.dim(v);
            hs.push(mat_from(f, n.dim(v), m.dim(v), &h[off..off + len]));
            off += len;
        }
        let mut key = Vec::new();
        for (ai, a) in arrows.iter().enumerate() {
            let b = n.action(ai).mul(&hs[a.source]).sub(&hs[a.target].mul(m.action(ai)));
            key.extend_from_slice(b.entries());
        }
        coboundaries.insert(key);
    });
    Some((cocycles, coboundaries.len() as u64))
}

fn log_p(p: u64, mut x: u64) -> Option<usize> {
    let mut k = 0;
    while x > 1 {
        if x % p != 0 {
            return None;
        }
        x /= p;
        k += 1;
    }
    Some(k)
}

fn criterion_1(squares: &mut Vec<Square>) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (name, alg) in demo_algebras() {
        let cat = build_catalog(&alg).map_err(err)?;
        for a in cat.entries().iter().filter(|e| e.module.total_dim() <= 4) {
            for b in cat.entries().iter().filter(|e| e.module.total_dim() <= 4) {
                let (z, bnd) = baer_class_count(&a.module, &b.module)
                    .ok_or_else(|| format!("{name}: oracle too large for ({}, {})", a.name, b.name))?;
                ensure(z % bnd == 0, || format!("{name}: |Z| = {z} not a multiple of |B| = {bnd}"))?;
                let oracle = log_p(alg.field().p() as u64, z / bnd)
                    .ok_or_else(|| format!("{name}: class count {} is not a power of p", z / bnd))?;
                let space = ext1(&a.module, &b.module).map_err(err)?;
                ensure(space.dimension() == oracle, || {
                    format!("{name}: dim Ext^1({}, {}) = {} but oracle gives {oracle}", a.name, b.name, space.dimension())
                })?;
                for class in space.classes() {
                    let (_, sq) = space.realize_with_pushout(&class).map_err(err)?;
                    squares.push(sq);
                }
                pairs += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{pairs} pairs match the Baer class count in {:.2}s", t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let mut objects = 0;
    for (name, cat, c) in certified_configs() {
        let w = compute_w(&c.q_tilde, &c.r_tilde, &cat).map_err(|e| format!("{name}: {e}"))?;
        for row in &w.table {
            ensure(row.coresolution.found() == row.resolution.found(), || {
                format!("{name}: descriptions disagree on {}", cat.name(row.id))
            })?;
            ensure(row.conclusive(), || format!("{name}: {} is inconclusive", cat.name(row.id)))?;
            objects += 1;
        }
    }
    Ok(format!("{objects} (configuration, object) checks agree, none inconclusive"))
}

fn certify(name: &str) -> Result<(Catalog, HoveyTriple), String> {
    let alg = demos::by_name(name).unwrap();
    let cat = build_catalog(&alg).map_err(err)?;
    let all = ObjectClass::all(&cat);
    let proj = ObjectClass::projectives(&cat);
    let t = build_hovey_triple(&pair_classes(&all, &proj, &proj, &all), &cat, 6)
        .map_err(err)?
        .map_err(|r| format!("{name} rejected: {:?}", r.report.first_failure()))?;
    Ok((cat, t))
}

/// Every member of `q_tilde ∪ r_tilde` has total dimension divisible by `m`
/// while `x` does not. In any `X ↣ R ↠ Q` or `R' ↣ Q' ↠ X` the middle has
/// dimension `dim X + dim(end)`, so no witness exists at any size.
fn modular_exclusion(cat: &Catalog, t: &HoveyTriple, x: usize, m: usize) -> Result<(), String> {
    let gens = t.classes.q_tilde.members.union(&t.classes.r_tilde.members);
    for &g in gens {
        ensure(cat.module(g).total_dim() % m == 0, || format!("{} has dimension not divisible by {m}", cat.name(g)))?;
    }
    ensure(cat.module(x).total_dim() % m != 0, || format!("{} has dimension divisible by {m}", cat.name(x)))
}

fn criterion_3() -> Outcome {
    let spec = demo_spec("lambda2", &Overrides::default()).map_err(err)?;
    let report = run(&spec, Command::BuildHovey).map_err(err)?;
    ensure(report.verdict.certified == Some(true) && report.exit_code(false) == 0, || {
        format!("cli verdict: {}", report.verdict.summary)
    })?;
    let (cat, t) = certify("lambda2")?;
    let p = cat.lookup(&Module::projective(cat.algebra(), 0)).map_err(err)?.unwrap();
    let k = cat.lookup(&Module::simple(cat.algebra(), 0)).map_err(err)?.unwrap();
    ensure(t.w.members.iter().copied().eq([p]), || format!("W = {:?}", t.w.names(&cat)))?;
    ensure(t.q.members.len() == cat.len() && t.r.members.len() == cat.len(), || "Q, R are not all".into())?;
    modular_exclusion(&cat, &t, k, 2)?;
    let row = &t.evidence.w.as_ref().unwrap().table[k];
    ensure(row.coresolution.status == SearchStatus::Obstructed, || format!("k: {:?}", row.coresolution.status))?;
    Ok("triple (all, add P, all) certified; k excluded by parity".into())
}

fn criterion_4() -> Outcome {
    let (cat, t) = certify("n3")?;
    let dims: Vec<usize> = t.w.members.iter().map(|&i| cat.module(i).total_dim()).collect();
    ensure(dims == vec![3], || format!("W dims {dims:?}"))?;
    let mut excluded = 0;
    for e in cat.entries() {
        if e.module.total_dim() < 3 {
            modular_exclusion(&cat, &t, e.id, 3)?;
            ensure(!t.w.contains(e.id), || format!("{} in W", e.name))?;
            excluded += 1;
        }
    }
    ensure(excluded == 2, || format!("{excluded} small uniserials"))?;
    Ok("triple (all, add M3, all) certified; M1, M2 excluded mod 3".into())
}

fn criterion_5() -> Outcome {
    let spec = parse_spec(
        r#"{"demo": "a2", "pair1": {"left": "all", "right": "inj"}, "pair2": {"left": "proj", "right": "all"}}"#,
        "inline",
        &Overrides::default(),
    )
    .map_err(err)?;
    let report = run(&spec, Command::BuildHovey).map_err(err)?;
    ensure(report.exit_code(true) != 0, || "exit code 0".into())?;
    let v = report.verification.as_ref().ok_or("no verification")?;
    let (name, _) = v.first_failure().ok_or("no failure")?;
    ensure(name == "08_condition2", || format!("first failure {name}"))?;
    let c = report.compatibility.as_ref().ok_or("no compatibility section")?;
    ensure(c.condition1, || "condition (1) failed".into())?;
    ensure(c.only_in_q_tilde_cap_r == ["S2"] && c.only_in_q_cap_r_tilde == ["S1"], || format!("{c:?}"))?;
    Ok("rejected at condition (2): {S2} vs {S1}".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut sequences = 0;
    for (name, cat, c) in certified_configs() {
        let w = compute_w(&c.q_tilde, &c.r_tilde, &cat).map_err(err)?;
        let r = verify_thickness(&w.class, &cat, 6).map_err(err)?;
        ensure(r.passed(), || format!("{name}: {:?} {:?}", r.retract_violations, r.violations))?;
        ensure(!r.capped && !r.undecided, || format!("{name}: capped or undecided"))?;
        ensure(r.retract_checks > 0 && r.sequences > 0, || format!("{name}: nothing enumerated"))?;
        sequences += r.sequences;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("{sequences} sequences, zero violations, {:.2}s", t.as_secs_f64()))
}

fn criterion_7() -> Outcome {
    let mut retractions = 0;
    for (name, cat, c) in certified_configs() {
        let t = build_hovey_triple(&c, &cat, 6).map_err(err)?.map_err(|r| format!("{name}: {:?}", r.report))?;
        let ids = t.evidence.identities.as_ref().unwrap();
        ensure(ids.q_cap_w == ids.q_tilde, || format!("{name}: Q ∩ W ≠ Q̃"))?;
        ensure(ids.w_cap_r == ids.r_tilde, || format!("{name}: W ∩ R ≠ R̃"))?;
        let w = t.evidence.w.as_ref().unwrap();
        for &(id, _) in &ids.retractions {
            let s = w.table[id].coresolution.witness.as_ref().ok_or("missing witness")?;
            let r = hovey_core::linmod::split_mono_retraction(s.mono())
                .ok_or_else(|| format!("{name}: no retraction for {}", cat.name(id)))?;
            ensure(s.mono().then(&r).is_identity(), || "retraction is not a left inverse".into())?;
            retractions += 1;
        }
    }
    Ok(format!("identities hold in every configuration; {retractions} explicit retractions"))
}

fn resolution_of(m: &Module) -> ShortExactSequence {
    let cover = projective_cover(m);
    let (_, incl) = kernel_of(&cover.epi);
    ShortExactSequence::new(incl, cover.epi).unwrap()
}

fn criterion_8(squares: &mut Vec<Square>) -> Outcome {
    let mut inputs = 0;
    for (_, alg) in demo_algebras() {
        let cat = build_catalog(&alg).map_err(err)?;
        for a in cat.entries() {
            for b in cat.entries() {
                let space = ext1(&a.module, &b.module).map_err(err)?;
                for class in space.classes() {
                    let bottom = space.realize(&class).map_err(err)?;
                    let d = horseshoe(&bottom, &resolution_of(&b.module), &resolution_of(&a.module)).map_err(err)?;
                    d.verify().map_err(err)?;
                    inputs += 1;
                    // transports of the bottom row feed the bicartesian suite
                    for x in cat.entries() {
                        for f in hom_basis(&x.module, &a.module).map_err(err)? {
                            squares.push(pullback_extension(&bottom, &f).map_err(err)?.1);
                        }
                        for g in hom_basis(&b.module, &x.module).map_err(err)? {
                            squares.push(pushout_extension(&bottom, &g).map_err(err)?.1);
                        }
                    }
                }
            }
        }
    }
    ensure(inputs >= 10, || format!("only {inputs} inputs"))?;

    let alg = demos::lambda2();
    let f2 = alg.field();
    let k = Module::simple(&alg, 0);
    let p = Module::projective(&alg, 0);
    let top = Morphism::new(&p, &k, vec![Mat::from_rows(f2, &[&[1, 0]])]).map_err(err)?;
    let (_, class) = lift_obstruction(&top, &Morphism::identity(&k)).map_err(err)?;
    ensure(!class.is_zero(), || "obstruction class vanished".into())?;
    let space = ext1(&k, &k).map_err(err)?;
    let bottom = space.realize(&space.basis_class(0)).map_err(err)?;
    let trivial = ShortExactSequence::new(Morphism::zero(&Module::zero(&alg), &k), Morphism::identity(&k)).map_err(err)?;
    match horseshoe(&bottom, &trivial, &trivial) {
        Err(Error::LiftObstruction { coordinates }) if coordinates.iter().any(|&c| c != 0) => {}
        other => return Err(format!("expected a lift obstruction, got {other:?}")),
    }
    Ok(format!("{inputs} diagrams verified; obstruction class {:?} reported", class.coordinates))
}

fn criterion_9(squares: &[Square]) -> Outcome {
    for (i, sq) in squares.iter().enumerate() {
        ensure(bicartesian_check(sq).map_err(err)?, || format!("square {i} is not bicartesian"))?;
    }
    ensure(!squares.is_empty(), || "no squares collected".into())?;
    Ok(format!("{} squares bicartesian", squares.len()))
}

fn criterion_10() -> Outcome {
    for (name, alg) in demo_algebras() {
        let cat = build_catalog(&alg).map_err(err)?;
        let all = ObjectClass::all(&cat);
        for (label, left, right) in
            [("(all, inj)", all.clone(), ObjectClass::injectives(&cat)), ("(proj, all)", ObjectClass::projectives(&cat), all.clone())]
        {
            let t = build_hovey_triple(&pair_classes(&left, &right, &left, &right), &cat, 6)
                .map_err(err)?
                .map_err(|r| format!("{name} {label}: {:?}", r.report.first_failure()))?;
            ensure(t.w.members == all.members, || format!("{name} {label}: W = {:?}", t.w.names(&cat)))?;
        }
    }
    Ok("W = all for both degenerate configurations on every demo".into())
}

fn main() {
    let mut squares = Vec::new();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "Ext oracle equivalence", criterion_1(&mut squares)),
        (2, "description agreement", criterion_2()),
        (3, "stable structure of F2[x]/(x^2)", criterion_3()),
        (4, "F2[x]/(x^3) triple", criterion_4()),
        (5, "condition (2) rejection on A2", criterion_5()),
        (6, "thickness suite", criterion_6()),
        (7, "identity suite", criterion_7()),
        (8, "horseshoe", criterion_8(&mut squares)),
        (9, "bicartesian checks", criterion_9(&squares)),
        (10, "degenerate configurations", criterion_10()),
    ];
    let mut failed = 0;
    for (n, title, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
