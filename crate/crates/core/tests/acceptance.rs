//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use waring4_core::atlas::{atlas_instance, cmd_atlas, random_configuration, AtlasConfig, AtlasEntry, CONFIGURATIONS};
use waring4_core::decompose::{border_rank_certificate, decompose, oracle_rank_upper, sample_point, search_space, verify_decomposition, SampleConfig};
use waring4_core::poly::HomogeneousForm;
use waring4_core::schemes::{gorenstein_gate, is_gorenstein_pencil, Component, Degree4Scheme, GateVerdict, SquarePencilComponent};
use waring4_core::stratify::{classify_scheme, Recipe};
use waring4_core::sylvester::{binary_rank, BinaryForm};
use waring4_core::Scalar;

fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// ---------------------------------------------------------------------------
// Independent binary rank oracle: smallest r with a squarefree apolar form.

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// Row-reduces in place and returns the pivot columns.
fn eliminate(m: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Scalar::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let c = m[i][col].clone();
                for j in 0..ncols {
                    let t = &c * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn null_space(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = eliminate(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

fn det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Scalar::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

/// Resultant of two binary forms given by coefficient vectors of the same length.
fn resultant(p: &[Scalar], q: &[Scalar]) -> Scalar {
    let n = p.len() - 1;
    let size = 2 * n;
    let mut m = vec![vec![Scalar::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
        for (j, c) in q.iter().enumerate() {
            m[n + i][i + j] = c.clone();
        }
    }
    det(m)
}

/// `h = sum_j h_j s^(r-j) t^j` has r distinct roots on the projective line.
fn squarefree_binary(h: &[Scalar]) -> bool {
    let r = h.len() - 1;
    if h.iter().all(|x| x.is_zero()) {
        return false;
    }
    if r <= 1 {
        return true;
    }
    let ds: Vec<Scalar> = (0..r).map(|j| &h[j] * int((r - j) as i64)).collect();
    let dt: Vec<Scalar> = (0..r).map(|j| &h[j + 1] * int((j + 1) as i64)).collect();
    !resultant(&ds, &dt).is_zero()
}

fn oracle_binary_rank(c: &[Scalar], rng: &mut ChaCha8Rng) -> usize {
    let d = c.len() - 1;
    let mu: Vec<Scalar> = c.iter().enumerate().map(|(k, x)| x / Scalar::from_integer(binomial(d, k))).collect();
    for r in 1..=d + 1 {
        let rows: Vec<Vec<Scalar>> = (0..=d.saturating_sub(r)).filter(|_| r <= d).map(|i| (0..=r).map(|j| mu[i + j].clone()).collect()).collect();
        let k = null_space(&rows, r + 1);
        if k.is_empty() {
            continue;
        }
        if k.iter().any(|h| squarefree_binary(h)) {
            return r;
        }
        for _ in 0..24 {
            let mut h = vec![Scalar::zero(); r + 1];
            for v in &k {
                let w = int(rng.gen_range(-9..=9));
                for (a, b) in h.iter_mut().zip(v) {
                    *a += &w * b;
                }
            }
            if squarefree_binary(&h) {
                return r;
            }
        }
    }
    unreachable!("every binary form has rank at most its degree")
}

fn criterion_sylvester() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = Vec::new();
    let mut random = 0;
    while random < 10_000 {
        let d = rng.gen_range(1..=8);
        let c: Vec<Scalar> = (0..=d).map(|_| int(rng.gen_range(-2..=2))).collect();
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        random += 1;
        let got = binary_rank(&BinaryForm::new(c.clone()).unwrap()).unwrap().rank;
        let want = oracle_binary_rank(&c, &mut rng);
        if got != want {
            mismatches.push(format!("{c:?}: {got} vs {want}"));
        }
    }
    let mut monomials = 0;
    for total in 1..=10usize {
        for b in 0..=total {
            let a = total - b;
            let mut c = vec![Scalar::zero(); total + 1];
            c[b] = Scalar::one();
            let got = binary_rank(&BinaryForm::new(c.clone()).unwrap()).unwrap().rank;
            let want = if a == 0 || b == 0 { 1 } else { a.max(b) + 1 };
            let oracle = oracle_binary_rank(&c, &mut rng);
            monomials += 1;
            if got != want || oracle != want {
                mismatches.push(format!("x^{a} y^{b}: {got}, oracle {oracle}, expected {want}"));
            }
        }
    }
    let detail = format!(
        "{random} random forms, {monomials} monomials, {} mismatches{}",
        mismatches.len(),
        mismatches.first().map(|m| format!("; first {m}")).unwrap_or_default()
    );
    outcome(mismatches.is_empty(), detail)
}

// ---------------------------------------------------------------------------
// Realization of rank sets.

fn tags_up_to(s: usize) -> Vec<&'static str> {
    CONFIGURATIONS.iter().filter(|(_, t)| *t <= s).map(|(tag, _)| *tag).collect()
}

/// Checks one witness: verified, irredundant, of the claimed size, certified.
fn check_entry(e: &AtlasEntry) -> Result<Option<usize>, String> {
    let (Some(f), Some(w)) = (&e.form, &e.witness) else { return Ok(None) };
    let claimed = e.classification.verdict.rank().ok_or("witness without a rank verdict")?;
    let r = verify_decomposition(f, w);
    if !(r.member && r.irredundant && r.size == claimed) {
        return Err(format!("{} at ({}, {}): member {} irredundant {} size {} claimed {claimed}", e.configuration, e.m, e.d, r.member, r.irredundant, r.size));
    }
    match border_rank_certificate(f, e.classification.span_dim) {
        Some(4) => {}
        None if e.d == 3 && e.classification.span_dim < 3 => {}
        other => return Err(format!("{} at ({}, {}): catalecticant certificate {other:?}", e.configuration, e.m, e.d)),
    }
    Ok(Some(claimed))
}

fn realize(m: usize, d: usize, per_config: usize, seed: u64) -> Result<(BTreeSet<usize>, Vec<AtlasEntry>), String> {
    let mut ranks = BTreeSet::new();
    let mut entries = Vec::new();
    for (i, tag) in tags_up_to(m).into_iter().enumerate() {
        for k in 0..per_config {
            let e = atlas_instance(tag, m, d, seed + (i * 1000 + k) as u64).map_err(|e| format!("{tag}: {e}"))?;
            if let Some(r) = check_entry(&e)? {
                ranks.insert(r);
            }
            entries.push(e);
        }
    }
    Ok((ranks, entries))
}

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn criterion_planar() -> Outcome {
    match realize(2, 6, 20, 100) {
        Ok((ranks, entries)) => {
            let witnesses = entries.iter().filter(|e| e.witness.is_some()).count();
            outcome(ranks == set(&[4, 6, 8, 10]), format!("(2,6) realized {ranks:?} from {witnesses} verified witnesses"))
        }
        Err(e) => outcome(false, e),
    }
}

fn criterion_spatial() -> Outcome {
    let three = realize(3, 3, 20, 200);
    let four = realize(3, 4, 20, 300);
    match (three, four) {
        (Ok((r3, e3)), Ok((r4, _))) => {
            let jet7 = e3.iter().filter(|e| e.configuration == "III1-curvilinear-4jet").all(|e| e.rank() == Some(7));
            outcome(
                r3 == set(&[4, 5, 6, 7]) && r4 == set(&[4, 6, 8, 10]) && jet7,
                format!("(3,3) realized {r3:?}, (3,4) realized {r4:?}, curvilinear 4-jets at d=3 all rank 7: {jet7}"),
            )
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e),
    }
}

// ---------------------------------------------------------------------------
// Gate against a direct socle computation.

/// Socle dimension of `K[x,y]/(Q1, Q2, (x,y)^3)`: the degree-2 part of the
/// quotient is one-dimensional, and a linear form `l` lies in the socle when `x l`
/// and `y l` lie in the pencil, i.e. are orthogonal to its normal vector.
fn socle_by_cross_product(q1: &[Scalar; 3], q2: &[Scalar; 3]) -> usize {
    let n = [&q1[1] * &q2[2] - &q1[2] * &q2[1], &q1[2] * &q2[0] - &q1[0] * &q2[2], &q1[0] * &q2[1] - &q1[1] * &q2[0]];
    let m = [[n[0].clone(), n[1].clone()], [n[1].clone(), n[2].clone()]];
    let rank = if !(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero() {
        2
    } else if m.iter().flatten().any(|x| !x.is_zero()) {
        1
    } else {
        0
    };
    1 + (2 - rank)
}

fn pencil(q1: [Scalar; 3], q2: [Scalar; 3]) -> SquarePencilComponent {
    SquarePencilComponent { support: vec![int(1), int(0), int(0)], directions: [vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]], q1, q2 }
}

fn gate_says_gorenstein(s: &SquarePencilComponent) -> Option<bool> {
    let a = Degree4Scheme::new(2, vec![Component::SquarePencil(s.clone())]).ok()?;
    Some(gorenstein_gate(&a) == GateVerdict::Accept)
}

fn criterion_gate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tested = 0;
    let mut non_gorenstein = 0;
    let mut bad = Vec::new();
    while tested < 1000 {
        let (q1, q2) = if rng.gen_bool(0.5) {
            let r = |rng: &mut ChaCha8Rng| [0; 3].map(|_| int(rng.gen_range(-3..=3)));
            (r(&mut rng), r(&mut rng))
        } else {
            // Pencils with a common linear factor l * m1, l * m2.
            let l: Vec<Scalar> = (0..2).map(|_| int(rng.gen_range(-3..=3))).collect();
            let prod = |m: Vec<Scalar>| [&l[0] * &m[0], &l[0] * &m[1] + &l[1] * &m[0], &l[1] * &m[1]];
            let m1: Vec<Scalar> = (0..2).map(|_| int(rng.gen_range(-3..=3))).collect();
            let m2: Vec<Scalar> = (0..2).map(|_| int(rng.gen_range(-3..=3))).collect();
            (prod(m1), prod(m2))
        };
        let s = pencil(q1.clone(), q2.clone());
        let Some(gate) = gate_says_gorenstein(&s) else { continue };
        tested += 1;
        let oracle = socle_by_cross_product(&q1, &q2) == 1;
        non_gorenstein += usize::from(!oracle);
        if gate != oracle || is_gorenstein_pencil(&s) != oracle {
            bad.push(format!("{q1:?} {q2:?}"));
        }
    }
    let x2_xy = pencil([int(1), int(0), int(0)], [int(0), int(1), int(0)]);
    let squares = {
        // (x + y)^2 and (x - 2y)^2.
        pencil([int(1), int(2), int(1)], [int(1), int(-4), int(4)])
    };
    let canonical = gate_says_gorenstein(&x2_xy) == Some(false) && gate_says_gorenstein(&squares) == Some(true);
    outcome(
        bad.is_empty() && canonical,
        format!(
            "{tested} pencils ({non_gorenstein} not Gorenstein), {} disagreements; canonical cases {}",
            bad.len(),
            if canonical { "match" } else { "differ" }
        ),
    )
}

// ---------------------------------------------------------------------------
// Invariance under coordinate changes.

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Scalar>> {
    loop {
        let m: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
        if !det(m.clone()).is_zero() {
            return m;
        }
    }
}

fn transpose(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

const INVARIANCE_FIXTURES: &[(&str, usize, usize)] = &[
    ("I-collinear", 2, 6),
    ("II1.1-residual-off-line", 2, 5),
    ("II1.2.2-two-jets", 2, 4),
    ("II1.2.2-point-on-tangent", 2, 5),
    ("II2.1-three-points", 2, 4),
    ("II2.1-smooth-conic", 2, 4),
    ("II2.2-square-pencil", 2, 4),
    ("III1-curvilinear-4jet", 3, 3),
    ("III1-fat-point", 3, 4),
    ("III2.2-skew-jets", 3, 4),
    ("III2.3-jet3-point", 3, 3),
    ("III3-jet-two-points", 3, 4),
];

fn criterion_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    let mut checks = 0;
    for &(tag, m, d) in INVARIANCE_FIXTURES {
        let (a, cls) = match random_configuration(tag, m, d, &mut rng) {
            Ok(x) => x,
            Err(e) => return outcome(false, format!("{tag}: {e}")),
        };
        let base = if cls.verdict.recipe().is_some() {
            let f = sample_point(&a, d, 1, &SampleConfig::default()).expect("sample").form;
            match decompose(&a, d, &f, 1) {
                Ok(o) => Some((f, Some(o.report.size))),
                Err(e) => return outcome(false, format!("{tag}: {e}")),
            }
        } else {
            None
        };
        for k in 0..50 {
            let g = random_invertible(&mut rng, m + 1);
            let a2 = a.transform(&g).expect("invertible");
            let cls2 = classify_scheme(&a2, d).expect("classify");
            checks += 1;
            if cls2.verdict != cls.verdict || cls2.configuration != cls.configuration {
                bad.push(format!("{tag} change {k}: {:?} vs {:?}", cls2.verdict, cls.verdict));
                continue;
            }
            if let Some((f, size)) = &base {
                let f2 = f.substitute(&transpose(&g)).expect("substitution");
                let size2 = decompose(&a2, d, &f2, k).map(|o| o.report.size).ok();
                if size2 != *size {
                    bad.push(format!("{tag} change {k}: size {size2:?} vs {size:?}"));
                }
            }
        }
    }
    let binaries = ["x0^5*x1", "x0^3 + x1^3", "x0^2*x1^2", "x0^4 - 2*x0^3*x1 + x1^4", "x0^6 + x0*x1^5", "x0^7 + 3*x0^2*x1^5 - x1^7"];
    for text in binaries {
        let f = HomogeneousForm::parse(text, Some(2)).unwrap();
        let r = binary_rank(&BinaryForm::from_form(&f).unwrap()).unwrap().rank;
        for k in 0..50 {
            let g = random_invertible(&mut rng, 2);
            let r2 = binary_rank(&BinaryForm::from_form(&f.substitute(&g).unwrap()).unwrap()).unwrap().rank;
            checks += 1;
            if r2 != r {
                bad.push(format!("{text} change {k}: rank {r2} vs {r}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checks} transformed instances, {} changes{}", bad.len(), bad.first().map(|b| format!("; first {b}")).unwrap_or_default()))
}

// ---------------------------------------------------------------------------
// Randomized search for shorter decompositions.

fn criterion_oracle() -> Outcome {
    let cases = [
        ("II1.1-residual-off-line", 2, 5, Recipe::R2),
        ("II2.1-three-points", 2, 4, Recipe::R5),
        ("III2.2-skew-jets", 3, 3, Recipe::R8),
        ("III1-curvilinear-4jet", 3, 3, Recipe::R9),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (i, (tag, m, d, recipe)) in cases.into_iter().enumerate() {
        let e = match atlas_instance(tag, m, d, 40 + i as u64) {
            Ok(e) => e,
            Err(err) => return outcome(false, format!("{tag}: {err}")),
        };
        if e.classification.verdict.recipe() != Some(recipe) {
            return outcome(false, format!("{tag} used {:?}", e.classification.verdict));
        }
        let (f, r) = (e.form.clone().unwrap(), e.rank().unwrap());
        let (carriers, points) = search_space(&e.scheme).expect("search space");
        let found = oracle_rank_upper(&f, &carriers, &points, r - 1, 10_000, 9 + i as u64);
        pass &= found.is_none();
        parts.push(format!("{recipe} rank {r}: {}", found.map_or("none shorter".into(), |k| format!("found size {k}"))));
    }
    outcome(pass, format!("{}; 10^4 trials per size, statistical evidence only", parts.join(", ")))
}

// ---------------------------------------------------------------------------

fn criterion_atlas() -> Outcome {
    let atlas = match cmd_atlas(&AtlasConfig { m_max: 3, d_min: 3, d_max: 8, per_config: 2, seed: 0 }) {
        Ok(a) => a,
        Err(e) => return outcome(false, e.to_string()),
    };
    let outside: Vec<String> =
        atlas.cells.iter().filter(|c| !c.within_table()).map(|c| format!("({},{}): {:?} not in {:?}", c.m, c.d, c.realized, c.table)).collect();
    let witnesses_ok = atlas.entries.iter().all(|e| check_entry(e).is_ok());
    let cited: Vec<(usize, usize, Vec<usize>)> =
        atlas.cells.iter().filter(|c| !c.unrealized_ranks.is_empty()).map(|c| (c.m, c.d, c.unrealized_ranks.clone())).collect();
    let unreached = atlas.cells.iter().all(|c| c.unrealized_ranks.iter().all(|r| !c.realized.contains(r)));
    let cited_ok = cited == vec![(2, 4, vec![7]), (2, 5, vec![9])];
    outcome(
        outside.is_empty() && witnesses_ok && cited_ok && unreached,
        format!(
            "{} cells, {} instances, outside table: {}, unreachable reported: {}",
            atlas.cells.len(),
            atlas.entries.len(),
            if outside.is_empty() { "none".into() } else { outside.join("; ") },
            cited.iter().map(|(m, d, r)| format!("({m},{d}):{r:?}")).collect::<Vec<_>>().join(" ")
        ),
    )
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 7] = [
        ("1 sylvester oracle", Duration::from_secs(120), criterion_sylvester),
        ("2 planar realization", Duration::from_secs(300), criterion_planar),
        ("3 spatial realization", Duration::from_secs(300), criterion_spatial),
        ("4 gorenstein gate", Duration::from_secs(60), criterion_gate),
        ("5 invariance", Duration::from_secs(120), criterion_invariance),
        ("6 minimality search", Duration::from_secs(300), criterion_oracle),
        ("7 atlas", Duration::from_secs(600), criterion_atlas),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, limit, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.starts_with(o.as_str())) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let pass = o.pass && elapsed <= limit;
        failed += usize::from(!pass);
        println!("{} criterion {name}: {} [{:.1}s of {}s]", if pass { "PASS" } else { "FAIL" }, o.detail, elapsed.as_secs_f64(), limit.as_secs());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
