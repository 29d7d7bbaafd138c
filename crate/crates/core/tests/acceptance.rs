//! One line per acceptance criterion. Each outcome is pinned: a criterion
//! that cannot be met is expected to print FAIL, and the test checks that
//! every line matches its pinned outcome.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::process::Command;

use hodgerbs::algebra::{int, integer_eigenspaces, nilpotent_exp, rat, Matrix, Scalar, Subspace};
use hodgerbs::asymptotics::{membership_scan, untwist, NilpotentOrbit};
use hodgerbs::boundary::{boundary_report, induced_form, primitive_parts, GradedPieces};
use hodgerbs::hodge::{build_reference, HodgeFiltration, HodgeNumbers};
use hodgerbs::io::docs::{
    parse, Coefficient, ConvergeDoc, DomainDoc, FiltrationSpec, NilpotentDoc, NilpotentSpec, OrbitDoc, SiegelDoc, SpaceName,
};
use hodgerbs::lie::{build_sigma, CayleyTransform, GradedSystem, IsometryAlgebra, Structure};
use hodgerbs::nilpotent::{
    canonical_parabolic, horizontality_check, jm_triple, unipotent_log, weight_filtration_g, weight_filtration_h, MonodromyElement,
    Sl2Triple,
};
use hodgerbs::par::Exec;

const CASES: [(usize, &[usize]); 5] = [(1, &[1, 1]), (1, &[2, 2]), (2, &[1, 2, 1]), (2, &[1, 1, 1]), (3, &[1, 1, 1, 1])];

type Outcome = (bool, String);

fn hn(m: usize, h: &[usize]) -> HodgeNumbers {
    HodgeNumbers::new(m, h.to_vec()).unwrap()
}

fn structure(m: usize, h: &[usize]) -> Structure {
    Structure::build(&hn(m, h)).unwrap()
}

fn c1_sl2_model() -> Outcome {
    let x0 = build_reference(&hn(1, &[1, 1])).unwrap();
    let sys = GradedSystem::build(&x0.hodge).unwrap();
    let e = sys.sl2_embedding(sys.root(&[-2]).unwrap()).unwrap();
    let i = Scalar::i();
    let (o, l) = (Scalar::zero(), Scalar::one());
    let half = Scalar::from_rational(rat(1, 2));
    let m = |rows: Vec<Vec<Scalar>>| Matrix::from_rows(rows).unwrap();
    let z = m(vec![vec![o.clone(), -&i], vec![i.clone(), o.clone()]]);
    let xp = m(vec![vec![-&i, l.clone()], vec![l.clone(), i.clone()]]).scale(&half);
    let xm = m(vec![vec![i.clone(), l.clone()], vec![l.clone(), -&i]]).scale(&half);
    let y = Matrix::from_ints(&[&[-1, 0], &[0, 1]]);
    let np = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
    let nm = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
    let inv_sqrt2 = Scalar::sqrt2().scale(&rat(1, 2));
    let c = m(vec![vec![l.clone(), -&i], vec![-&i, l]]).scale(&inv_sqrt2);
    let sigma = build_sigma(&sys).unwrap();
    let cayley = CayleyTransform::new(&sigma, 2).unwrap();
    let checks = [e.z == z, e.x_plus == xp, e.x_minus == xm, e.y == y, e.n_plus == np, e.n_minus == nm, cayley.c == c];
    (checks.iter().all(|b| *b), format!("z, x+, x-, y, n+, n-, c: {checks:?}"))
}

fn conj_span(alg: &IsometryAlgebra, s: &Subspace) -> Subspace {
    let els: Vec<Matrix> = alg.elements(s).iter().map(Matrix::conj).collect();
    alg.span(&els).unwrap()
}

fn c2_grading_laws() -> Outcome {
    let mut bad = Vec::new();
    for (m, h) in CASES {
        let sys = GradedSystem::build(&hn(m, h)).unwrap();
        let alg = &sys.algebra;
        let dims = sys.grading.dims();
        let zero = Subspace::zero(alg.dim());
        let piece = |r: i64| sys.grading.get(r).cloned().unwrap_or_else(|| zero.clone());
        for &r in dims.keys() {
            for &s in dims.keys() {
                let target = piece(r + s);
                for x in alg.elements(&piece(r)) {
                    for y in alg.elements(&piece(s)) {
                        if !target.contains(&alg.coords(&x.commutator(&y)).unwrap()) {
                            bad.push(format!("{h:?} [g^{r}, g^{s}]"));
                        }
                    }
                }
            }
            if conj_span(alg, &piece(r)) != piece(-r) {
                bad.push(format!("{h:?} conj g^{r}"));
            }
        }
        let k = sys.grading.sum_where(alg.dim(), |r| r % 2 == 0);
        let p = sys.grading.sum_where(alg.dim(), |r| r % 2 != 0);
        let split = k.dim() + p.dim() == alg.dim() && k.intersection(&p).is_zero();
        let real_forms = conj_span(alg, &k) == k && conj_span(alg, &p) == p;
        if !split || !real_forms {
            bad.push(format!("{h:?} Cartan decomposition"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "bracket, conjugation and k+p checks hold on 5 cases".into() } else { bad.join("; ") })
}

fn root_set(sys: &GradedSystem) -> BTreeSet<Vec<i64>> {
    sys.roots.iter().map(|r| r.coords.clone()).collect()
}

fn add(a: &[i64], b: &[i64], s: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

fn strongly_orth(roots: &BTreeSet<Vec<i64>>, a: &[i64], b: &[i64]) -> bool {
    let neg: Vec<i64> = b.iter().map(|x| -x).collect();
    a != b && a != neg.as_slice() && !roots.contains(&add(a, b, 1)) && !roots.contains(&add(a, b, -1))
}

fn c3_rank_and_sigma() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (m, h) in CASES {
        let hodge = hn(m, h);
        let sys = GradedSystem::build(&hodge).unwrap();
        let roots = root_set(&sys);
        // all non-compact roots, both signs; largest pairwise strongly orthogonal subset
        let cands: Vec<Vec<i64>> = sys.roots.iter().filter(|r| r.degree % 2 != 0).map(|r| r.coords.clone()).collect();
        let n = cands.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let chosen: Vec<&Vec<i64>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &cands[i]).collect();
            if chosen.len() > best && chosen.iter().enumerate().all(|(i, a)| chosen[i + 1..].iter().all(|b| strongly_orth(&roots, a, b))) {
                best = chosen.len();
            }
        }
        let sigma = build_sigma(&sys).unwrap();
        let s = hodgerbs::lie::rank_s(&hodge);
        let pairwise = sigma.roots.iter().enumerate().all(|(i, a)| sigma.roots[i + 1..].iter().all(|b| strongly_orth(&roots, a, b)));
        let odd = sigma.roots.iter().all(|c| sys.root(c).is_some_and(|r| r.degree % 2 != 0));
        let ys = sigma.y_basis();
        let commuting = ys.iter().all(|a| ys.iter().all(|b| a.commutator(b).is_zero()));
        ok &= best == s && sigma.len() == s && pairwise && odd && commuting;
        notes.push(format!("{h:?}: s={s} brute={best}"));
    }
    (ok, notes.join(", "))
}

fn c4_root_weight_theorem() -> Outcome {
    let (mut roots_checked, mut pairs_checked, mut exceptions) = (0, 0, 0);
    for (m, h) in CASES {
        let sys = GradedSystem::build(&hn(m, h)).unwrap();
        let weights: Vec<Vec<i64>> = sys.reference.weights.iter().map(|w| w.coords.clone()).collect();
        let roots = root_set(&sys);
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let reps = |a: &[i64]| -> Vec<(Vec<i64>, Vec<i64>)> {
            let mut out = Vec::new();
            for d in &weights {
                for e in &weights {
                    if add(e, d, -1) == a && d != e {
                        out.push((d.clone(), e.clone()));
                    }
                }
            }
            out
        };
        for a in &roots {
            roots_checked += 1;
            if reps(a).is_empty() {
                exceptions += 1;
            }
        }
        for a in &roots {
            for b in &roots {
                if !roots.contains(&add(a, b, 1)) {
                    continue;
                }
                pairs_checked += 1;
                for (d1, d2) in reps(a) {
                    if d1 == neg(&d2) {
                        continue;
                    }
                    for (e1, e2) in reps(b) {
                        let holds = if e1 == neg(&e2) {
                            // β = −2ε₁
                            e1 == neg(&d1) || e1 == d2
                        } else {
                            d1 == neg(&e1) || d1 == e2 || d2 == e1 || d2 == neg(&e2)
                        };
                        if !holds {
                            exceptions += 1;
                        }
                    }
                }
            }
        }
    }
    (exceptions == 0, format!("{roots_checked} roots, {pairs_checked} root pairs with α+β a root, {exceptions} exceptions"))
}

fn c5_cayley() -> Outcome {
    let mut ok = true;
    let mut pairs = 0;
    for (m, h) in CASES {
        let st = structure(m, h);
        for e in &st.sigma.embeddings {
            ok &= st.cayley.ad(&e.y) == e.z && st.cayley.ad(&e.n_plus) == e.x_plus;
        }
        let b = st.sys.algebra.basis();
        for x in b {
            for y in b {
                pairs += 1;
                ok &= st.cayley.ad(&x.commutator(y)) == st.cayley.ad(x).commutator(&st.cayley.ad(y));
            }
        }
    }
    (ok, format!("Ad(C)Y = Z and Ad(C)N = X on every Σ root; brackets on {pairs} basis pairs"))
}

fn c6_rank() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, h) in CASES {
        let sys = GradedSystem::build(&hn(m, h)).unwrap();
        let alg = &sys.algebra;
        let n = sys.dim();
        let classical = n / 2;
        let t = alg.span(&sys.cartan).unwrap();
        let v = sys.grading.get(0).unwrap();
        let abelian = sys.cartan.iter().all(|a| sys.cartan.iter().all(|b| a.commutator(b).is_zero()));
        let semisimple = sys.cartan.iter().all(|a| integer_eigenspaces(a, 8).map(|e| e.iter().map(|(_, s)| s.dim()).sum::<usize>() == n).unwrap_or(false));
        let self_centralizing = alg.centralizer(&sys.cartan) == t;
        let rank_v = t.dim();
        ok &= v.contains_subspace(&t) && abelian && semisimple && self_centralizing && rank_v == classical;
        notes.push(format!("{h:?}: {rank_v}={classical}"));
    }
    (ok, format!("maximal toral t ⊆ v is a Cartan of g_C: {}", notes.join(", ")))
}

fn kernel_image_oracle(n: &Matrix, k: i64) -> Subspace {
    let d = n.rows();
    let mut acc = Subspace::zero(d);
    for j in 0..=d as i64 {
        if j < -k || k + j + 1 < 1 {
            continue;
        }
        let ker = n.pow((k + j + 1) as u32).kernel();
        let im = n.pow(j as u32).image();
        acc = acc.sum(&ker.intersection(&im));
    }
    acc
}

fn splitting(y: &Matrix, k: i64) -> Subspace {
    let eig = integer_eigenspaces(y, 2 * y.rows() as i64 + 2).unwrap();
    eig.iter().filter(|(j, _)| *j <= k).fold(Subspace::zero(y.rows()), |acc, (_, s)| acc.sum(s))
}

fn conjugate_triple(t: &Sl2Triple) -> Sl2Triple {
    let g = nilpotent_exp(&t.n, &Scalar::one()).unwrap();
    let gi = nilpotent_exp(&t.n, &-Scalar::one()).unwrap();
    let ad = |x: &Matrix| &(&g * x) * &gi;
    Sl2Triple { n: t.n.clone(), y: ad(&t.y), n_plus: ad(&t.n_plus) }
}

fn jordan_type(n: &Matrix) -> Vec<usize> {
    let d = n.rows();
    let ranks: Vec<usize> = (0..=d + 1).map(|k| n.pow(k as u32).rank()).collect();
    let mut blocks = Vec::new();
    for size in (1..=d).rev() {
        let count = ranks[size - 1] + ranks[size + 1] - 2 * ranks[size];
        blocks.extend(std::iter::repeat_n(size, count));
    }
    blocks
}

fn test_nilpotents() -> Vec<(Structure, Matrix)> {
    let mut out = Vec::new();
    for (m, h) in CASES {
        let st = structure(m, h);
        let e = st.sigma.embeddings.clone();
        out.push((st.clone(), e[0].n_minus.clone()));
        if e.len() > 1 {
            out.push((st.clone(), &e[0].n_minus + &e[1].n_minus));
        }
        let simple = st.restricted.simple_roots(None);
        if simple.len() > 1 {
            let reg = simple.iter().fold(Matrix::zeros(st.sys.dim(), st.sys.dim()), |acc, r| {
                let neg: Vec<i64> = r.coords.iter().map(|x| -x).collect();
                &acc + &st.restricted.root(&neg).unwrap().rational_vectors[0]
            });
            out.push((st.clone(), reg));
        }
    }
    out
}

fn c7_weight_filtration() -> Outcome {
    let mut ok = true;
    let mut types = BTreeSet::new();
    let samples = test_nilpotents();
    for (st, n) in &samples {
        let alg = &st.sys.algebra;
        let a = jm_triple(alg, n, &st.sigma.y_basis()).unwrap();
        let b = jm_triple(alg, n, &[]).unwrap();
        let triples = [a.clone(), b, conjugate_triple(&a)];
        ok &= triples.iter().all(Sl2Triple::satisfies_relations);
        types.insert((n.rows(), jordan_type(n)));
        let adn = alg.ad(n);
        let range = -(2 * n.rows() as i64)..=2 * n.rows() as i64;
        let oracle: Vec<(Subspace, Subspace)> = range.clone().map(|k| (kernel_image_oracle(n, k), kernel_image_oracle(&adn, k))).collect();
        for t in &triples {
            let wh = weight_filtration_h(t, 0).unwrap();
            let wg = weight_filtration_g(alg, t).unwrap();
            let ady = alg.ad(&t.y);
            for (k, (on_h, on_g)) in range.clone().zip(&oracle) {
                ok &= wh.get(k) == *on_h && splitting(&t.y, k) == *on_h;
                ok &= wg.get(k) == *on_g && splitting(&ady, k) == *on_g;
            }
        }
    }
    let listed: Vec<String> = types.iter().map(|(d, j)| format!("{d}:{j:?}")).collect();
    (ok && samples.len() >= 6, format!("{} nilpotents, 3 triples each, on H and g; Jordan types {}", samples.len(), listed.join(" ")))
}

fn c8_parabolic() -> Outcome {
    let mut ok = true;
    let mut count = 0;
    for (st, n) in test_nilpotents() {
        let alg = &st.sys.algebra;
        let t = jm_triple(alg, &n, &st.sigma.y_basis()).unwrap();
        let p = canonical_parabolic(&st, &t).unwrap();
        // ⊕_{j≤0} g(j) straight from ad Y
        let q = splitting(&alg.ad(&t.y), 0);
        // z(a_I) + u_I from restricted roots
        let levi = alg.centralizer(&p.a_i);
        let y = &p.y_coords;
        let u = st
            .restricted
            .roots
            .iter()
            .filter(|r| r.eval(y) < int(0) && p.a_i_coords.iter().any(|c| r.eval(c) != int(0)))
            .fold(Subspace::zero(alg.dim()), |acc, r| acc.sum(&st.restricted.root_space_direct(&st.sys, &r.coords)));
        ok &= q == levi.sum(&u) && p.q == q && p.levi == levi && p.u == u;
        count += 1;
    }
    (ok, format!("q = z(a_I) + u_I on {count} nilpotents"))
}

fn c9_horizontality() -> Outcome {
    let st = structure(2, &[1, 2, 1]);
    let alg = &st.sys.algebra;
    let check = |n: &Matrix| horizontality_check(&st, &jm_triple(alg, n, &st.sigma.y_basis()).unwrap()).unwrap();
    let deg1 = st.restricted.degree_set(-1);
    let g1 = deg1.iter().find(|r| r.multiplicity == 1).unwrap();
    let minus: Vec<i64> = g1.coords.iter().map(|x| -x).collect();
    let passes = check(&st.restricted.root(&minus).unwrap().rational_vectors[0]).horizontal();
    let deg2_roots = st.restricted.degree_set(-2);
    let g_minus_two = st.sys.grading.get(-2).map_or(0, Subspace::dim);
    // every nilpotent in the span of ±N_γ over Σ, with all signs and subsets
    let e = &st.sigma.embeddings;
    let mut agree = true;
    let mut count = 0;
    for mask in 1u32..(1 << e.len()) {
        for signs in 0u32..(1 << e.len()) {
            let n = (0..e.len()).filter(|j| mask >> j & 1 == 1).fold(Matrix::zeros(4, 4), |acc, j| {
                let v = if signs >> j & 1 == 1 { &e[j].n_plus } else { &e[j].n_minus };
                &acc + v
            });
            agree &= check(&n).agree();
            count += 1;
        }
    }
    let mixed = &e[0].n_minus + &e[1].n_plus;
    let mixed_fails = !check(&mixed).horizontal();
    let fixture = !deg2_roots.is_empty();
    (
        passes && fixture && agree,
        format!(
            "degree -1 generated passes: {passes}; degree -2 fixture unavailable (no restricted root of degree -2, dim g^-2 = {g_minus_two}); \
             mixed N_-γ1 + N_γ2 fails: {mixed_fails}; criteria agree on {count} constructed ψ: {agree}"
        ),
    )
}

fn c10_elliptic() -> Outcome {
    let st = structure(1, &[1, 1]);
    let n = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
    let t = jm_triple(&st.sys.algebra, &n, &st.sigma.y_basis()).unwrap();
    let pieces = GradedPieces::new(&weight_filtration_h(&t, 1).unwrap());
    let gram = st.sys.reference.lattice.gram();
    let s1 = induced_form(gram, 1, &n, &pieces, 1).gram == Matrix::from_ints(&[&[1]]);
    let p2 = primitive_parts(&n, &pieces).iter().find(|p| p.l == 1).map(|p| p.space.dim()) == Some(1);
    let r = boundary_report(&st, &n, None, 1, Exec::Sequential).unwrap();
    let lv = &r.levels[0];
    let f11 = lv.f.get(&1) == Some(&1);
    let polarized = lv.polarized == Some(true);
    let point = lv.domain_dim == Some(0) && r.fibration.dim_d_prim == 0;
    let mq = r.fibration.dim_m_q == 0;
    let f = HodgeFiltration::new(vec![Subspace::full(2), Subspace::span(2, &[vec![Scalar::zero(), Scalar::one()]])]);
    let orbit = NilpotentOrbit::new(n, f, &st.sys.reference.lattice).unwrap();
    let ys = [rat(-1, 1), rat(-1, 2), rat(1, 2), rat(1, 1), rat(2, 1)];
    let scan = membership_scan(&orbit, &st.sys.reference.lattice, &ys, Exec::Parallel).unwrap();
    let flags: Vec<bool> = scan.samples.iter().map(|s| s.1).collect();
    let scan_ok = flags == [false, false, true, true, true];
    let all = [s1, p2, f11, polarized, point, mq, scan_ok];
    (all.iter().all(|b| *b), format!("S_1, P_2, f^1_1, polarized, D_prim point, m_Q = 0, scan {flags:?}"))
}

fn c11_rank_one() -> Outcome {
    let st = structure(2, &[1, 2, 1]);
    let n = st.sigma.embeddings[0].n_minus.clone();
    let t = jm_triple(&st.sys.algebra, &n, &st.sigma.y_basis()).unwrap();
    let horizontal = horizontality_check(&st, &t).unwrap().horizontal();
    let r = boundary_report(&st, &n, None, 2, Exec::Sequential).unwrap();
    let fib = r.fibration;
    let w = weight_filtration_h(&t, 2).unwrap();
    let id = Matrix::identity(4);
    let zs = [Scalar::i(), Scalar::gaussian(int(1), int(1)), Scalar::gaussian(rat(-3, 2), int(2)), Scalar::from_int(5), Scalar::gaussian(int(0), rat(-7, 3))];
    let trivial = zs.iter().all(|z| {
        let shift = &nilpotent_exp(&n, z).unwrap() - &id;
        (-1..=5).all(|k| w.get(k - 1).contains_subspace(&w.get(k).image_under(&shift)))
    });
    let a = serde_json::to_string(&r).unwrap();
    let b = serde_json::to_string(&boundary_report(&st, &n, None, 2, Exec::Parallel).unwrap()).unwrap();
    let ok = horizontal && n.rank() == 2 && fib.dim_z_n_m_q == fib.sum_dim_o_s_l && trivial && a == b;
    (ok, format!("dim z(N)∩m_Q = {} = Σ dim o(S_l|P) = {}; exp(zN) trivial on Gr for 5 z: {trivial}; byte-stable: {}", fib.dim_z_n_m_q, fib.sum_dim_o_s_l, a == b))
}

fn c12_untwist() -> Outcome {
    let f = HodgeFiltration::new(vec![Subspace::full(2), Subspace::span(2, &[vec![Scalar::zero(), Scalar::one()]])]);
    let zs = [Scalar::i(), Scalar::gaussian(rat(1, 3), int(2)), Scalar::gaussian(int(-2), rat(1, 2))];
    let mut ok = true;
    let mut ls = Vec::new();
    for gamma in [Matrix::from_ints(&[&[1, 1], &[0, 1]]), Matrix::from_ints(&[&[-1, -1], &[0, -1]]), Matrix::from_ints(&[&[-1, 0], &[0, -1]])] {
        let (l, n0) = unipotent_log(&gamma, Exec::Sequential).unwrap();
        ls.push(l);
        let mono = MonodromyElement { gamma, l, n0: n0.clone() };
        let phi = |z: &Scalar| -> hodgerbs::Result<HodgeFiltration> { Ok(f.transform(&nilpotent_exp(&n0, z)?)) };
        for z in &zs {
            ok &= untwist(phi, &mono, z).is_ok();
        }
    }
    (ok && ls.contains(&2), format!("Ψ(z+1) = Ψ(z) at 3 points on fixtures with l = {ls:?}"))
}

fn cli(args: &[&str], input: &str) -> (String, i32) {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(input.as_bytes()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hodgerbs")).args(args).arg("--input").arg(file.path()).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap_or(-1))
}

fn round_trips<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq>(x: &T) -> bool {
    parse::<T>(&serde_json::to_string(x).unwrap()).is_ok_and(|y| &y == x)
}

fn c13_cli() -> Outcome {
    let nil = NilpotentSpec { matrix: Some(Matrix::from_ints(&[&[0, 1], &[0, 0]])), coefficients: None };
    let coeffs = NilpotentSpec { matrix: None, coefficients: Some([("q:(2)".to_string(), Coefficient::One(rat(3, 2)))].into()) };
    let fil = FiltrationSpec { basis: vec![vec![Scalar::i(), Scalar::one()], vec![Scalar::sqrt2(), Scalar::zero()]] };
    let seq: ConvergeDoc = parse(
        r#"{"sequence":{"parabolic":{"simple_roots":[["-2"]]},"terms":[{"u":["1"],"log_a":["-1/2"],"m":[]}],"limit":[]},
            "policy":{"window":3,"growth_margin":"1","tolerance":"1/10"}}"#,
    )
    .unwrap();
    let docs = [
        round_trips(&DomainDoc { m: 2, h: vec![1, 2, 1] }),
        round_trips(&NilpotentDoc { m: 1, h: vec![1, 1], nilpotent: nil.clone(), space: Some(SpaceName::G), filtration: Some(fil.clone()) }),
        round_trips(&NilpotentDoc { m: 1, h: vec![1, 1], nilpotent: coeffs, space: None, filtration: None }),
        round_trips(&OrbitDoc { m: 1, h: vec![1, 1], nilpotent: nil, filtration: fil, y_grid: vec![rat(-1, 2), int(3)] }),
        round_trips(&seq),
        round_trips(&SiegelDoc { log_a: vec![int(3), rat(5, 7)], parabolic: None, t: int(2) }),
    ];
    let domain = r#"{"m":2,"h":[1,2,1]}"#;
    let nilp = r#"{"m":2,"h":[1,2,1],"nilpotent":{"coefficients":{"q:(2,0)":"1"}}}"#;
    let mut deterministic = true;
    for (cmd, input) in [("describe-domain", domain), ("roots", domain), ("grading", domain), ("boundary-report", nilp), ("horizontal", nilp)] {
        let a = cli(&[cmd], input);
        deterministic &= a.1 == 0 && a == cli(&[cmd], input);
    }
    let malformed = [
        (r#"{"m":2,"h":[1,2,2]}"#, "describe-domain", 2),
        (r#"{"m":1,"h":[1]}"#, "describe-domain", 2),
        (r#"{"m":1,"h":[1,1],"extra":1}"#, "roots", 2),
        (r#"{"m":1,"h":[1,1],"nilpotent":{"matrix":[[0,1]]}}"#, "boundary-report", 2),
        (r#"{"m":1,"h":[1,1],"nilpotent":{"matrix":[[1,0],[0,1]]}}"#, "boundary-report", 1),
        (r#"{"sequence":{"parabolic":{"simple_roots":[[1]]},"terms":[],"limit":[]},"policy":{"window":0,"growth_margin":1,"tolerance":0}}"#, "converge-check", 1),
    ];
    let codes: Vec<i32> = malformed.iter().map(|(input, cmd, _)| cli(&[cmd], input).1).collect();
    let codes_ok = codes.iter().zip(&malformed).all(|(c, m)| *c == m.2);
    let symmetry = cli(&["describe-domain"], malformed[0].0).0.contains("h^{p,q} must equal h^{q,p}");
    let rt = docs.iter().all(|b| *b);
    (rt && deterministic && codes_ok && symmetry, format!("round-trip {docs:?}, deterministic {deterministic}, exit codes {codes:?}"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, bool); 13] = [
        ("sl(2) model reproduction", c1_sl2_model, true),
        ("grading laws", c2_grading_laws, true),
        ("rank and Σ", c3_rank_and_sigma, true),
        ("roots as −δ + ε and the sum rule", c4_root_weight_theorem, true),
        ("Cayley identities", c5_cayley, true),
        ("rank v = rank g_C", c6_rank, true),
        ("weight filtration uniqueness and splitting", c7_weight_filtration, true),
        ("canonical parabolic double construction", c8_parabolic, true),
        // g^{-2} = 0 for h = (1,2,1), so the degree −2 fixture cannot exist.
        ("horizontality iff", c9_horizontality, false),
        ("elliptic boundary structure", c10_elliptic, true),
        ("rank-1 boundary fibration", c11_rank_one, true),
        ("untwist invariance", c12_untwist, true),
        ("CLI", c13_cli, true),
    ];
    let mut mismatches = Vec::new();
    for (i, (name, f, pinned)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let (pass, detail) = f();
        let secs = start.elapsed().as_secs_f64();
        println!("{} {:>2}. {name}: {detail} ({secs:.1}s)", if pass { "PASS" } else { "FAIL" }, i + 1);
        if pass != *pinned {
            mismatches.push(i + 1);
        }
    }
    assert!(mismatches.is_empty(), "outcomes differ from pinned values for criteria {mismatches:?}");
}
