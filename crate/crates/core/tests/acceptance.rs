//! Acceptance suite: one PASS/FAIL line per criterion, exact equality
//! throughout. Exits nonzero when any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use ncreduce::abp::{abp_eval, bounded_depth_dyck_abp, dyck_abp, hankel_rank, Abp};
use ncreduce::algebra::hadamard_bruteforce;
use ncreduce::automata::{hadamard_via_matrices, HadamardInput};
use ncreduce::circuits::{expand, Circuit, CircuitBuilder};
use ncreduce::families::{
    catalan, commutative_version, dyck_table, gen_dyck, gen_dyck_depth, gen_hierarchy, gen_id, gen_id_prime,
    gen_pal, gen_per, gen_per_star, gen_per_star_chi, permutations, ChiTable, FamilySpec,
};
use ncreduce::random::{
    random_abp, random_circuit, random_homogeneous_poly, random_iproj, random_proj, random_skew_circuit, rng,
};
use ncreduce::reductions::{
    apply_iproj, apply_proj, binary_power, compose_abp, dk_to_d2_reduction, dyck_completeness_reduction,
    dyck_depth_reduction, format_reduction, hierarchy_iproj, iproj_to_abp, pal_to_d2_reduction,
    pal_vsk_reduction, palsq_to_d2_reduction, parse_reduction, per_to_idstar_reduction,
    per_to_perstar_chi_reduction, per_to_perstar_iproj, product_of_sums, proj_to_iproj, separation_iproj,
    separation_reduction, set_multilinear_rank1_split, transfer, two_monomials, vbp_trivial_reduction,
    verify_reduction, AbpReduction, IProjMap, Image, ProjMap, Reduction, ReductionFile, SplitVerdict,
    Verdict,
};
use ncreduce::{Field, Limits, NCPoly, Scalar, TableRef, Var, VarTable, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const F: Field = Field::Rational;

fn lim() -> Limits {
    Limits::default()
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

/// Name-based equality, so polynomials over equal but distinct tables match.
fn same(expected: &NCPoly, actual: &NCPoly, ctx: &str) -> Result<(), String> {
    let v = Verdict::compare(expected, actual);
    if v.pass {
        Ok(())
    } else {
        Err(format!("{ctx}: {}", v.to_string().replace('\n', "; ")))
    }
}

/// Serializes, parses back and verifies against the given families.
fn verify_via_text(
    r: AbpReduction,
    source: &FamilySpec,
    target: &FamilySpec,
    ctx: &str,
) -> Result<(), String> {
    let text = format_reduction(&ReductionFile::abp(r));
    let back = parse_reduction(&text, F).map_err(err(ctx))?;
    let v = verify_reduction(&back.reduction, source, target, &lim()).map_err(err(ctx))?;
    if v.pass {
        Ok(())
    } else {
        Err(format!("{ctx}: {}", v.to_string().replace('\n', "; ")))
    }
}

fn table(vars: usize) -> TableRef {
    VarTable::shared((1..=vars).map(|i| format!("x{i}")))
}

fn hand_circuits() -> Vec<Circuit> {
    let t = table(3);
    let mut out = Vec::new();
    let mut build = |f: &dyn Fn(&mut CircuitBuilder) -> usize| {
        let mut b = CircuitBuilder::new(&t);
        let o = f(&mut b);
        out.push(b.finish(o).unwrap());
    };
    build(&|b| b.input(Var(0)));
    build(&|b| b.constant(Scalar::from(7)));
    build(&|b| {
        let (x, y) = (b.input(Var(0)), b.input(Var(1)));
        b.mul(x, y)
    });
    build(&|b| {
        let (x, y) = (b.input(Var(0)), b.input(Var(1)));
        let (m, n) = (b.mul(x, y), b.mul(y, x));
        b.add(m, n)
    });
    // cancels to zero
    build(&|b| {
        let (x, y) = (b.input(Var(0)), b.input(Var(1)));
        let m = b.mul(x, y);
        let neg = b.constant(Scalar::from(-1));
        let nm = b.mul(neg, m);
        b.add(m, nm)
    });
    // ((x1 + x2)^2)^3 has degree 6 via repeated squaring and a shared gate
    build(&|b| {
        let (x, y) = (b.input(Var(0)), b.input(Var(1)));
        let s = b.add(x, y);
        let sq = b.mul(s, s);
        let q = b.mul(sq, sq);
        b.mul(q, sq)
    });
    build(&|b| {
        let (x, y, z) = (b.input(Var(0)), b.input(Var(1)), b.input(Var(2)));
        let c = b.constant(Scalar::from(2));
        let s = b.add(x, c);
        let m = b.mul(s, y);
        let m = b.mul(z, m);
        b.add(m, s)
    });
    build(&|b| {
        let x = b.input(Var(0));
        let c = b.constant(F.parse("1/3").unwrap());
        let s = b.add(x, x);
        let s = b.add(s, c);
        b.mul(s, s)
    });
    out
}

fn hand_skew_circuits() -> Vec<Circuit> {
    let t = table(3);
    let mut out = Vec::new();
    let mut build = |f: &dyn Fn(&mut CircuitBuilder) -> usize| {
        let mut b = CircuitBuilder::new(&t);
        let o = f(&mut b);
        out.push(b.finish(o).unwrap());
    };
    build(&|b| b.input(Var(0)));
    build(&|b| b.constant(Scalar::from(-2)));
    build(&|b| {
        let (x, y) = (b.input(Var(0)), b.input(Var(1)));
        b.mul(x, y)
    });
    build(&|b| {
        let (x, y, z) = (b.input(Var(0)), b.input(Var(1)), b.input(Var(2)));
        let m = b.mul(x, y);
        let m = b.mul(m, z);
        let n = b.mul(z, m);
        b.add(n, x)
    });
    build(&|b| {
        let x = b.input(Var(0));
        let c = b.constant(Scalar::from(3));
        let m = b.mul(c, x);
        let m = b.mul(m, x);
        let m = b.mul(x, m);
        b.add(m, c)
    });
    // degree 5 alternating left and right factors
    build(&|b| {
        let (x, y, z) = (b.input(Var(0)), b.input(Var(1)), b.input(Var(2)));
        let m = b.mul(x, y);
        let m = b.mul(z, m);
        let m = b.mul(m, x);
        b.mul(y, m)
    });
    out
}

fn circuit_corpus(skew: bool, count: usize, max_degree: usize) -> Vec<Circuit> {
    let mut out = if skew {
        hand_skew_circuits()
    } else {
        hand_circuits()
    };
    let mut seed = 0;
    while out.len() < count {
        let vars = 1 + (seed % 3) as usize;
        let extra = 8 - vars - 1;
        let mut r = rng(1000 + seed);
        let t = table(vars);
        let c = if skew {
            random_skew_circuit(&mut r, &t, extra, max_degree, F)
        } else {
            random_circuit(&mut r, &t, extra, max_degree, F)
        };
        assert!(c.len() <= 8 && c.formal_degree() <= max_degree);
        out.push(c);
        seed += 1;
    }
    out
}

fn circuit_protocol(skew: bool) -> Outcome {
    let (count, max_degree) = if skew { (30, 5) } else { (50, 6) };
    let start = Instant::now();
    let corpus = circuit_corpus(skew, count, max_degree);
    let (mut max_dim, mut max_deg, mut terms) = (0, 0, 0);
    for (i, c) in corpus.iter().enumerate() {
        let ctx = format!("circuit #{i}");
        let expected = expand(c, c.formal_degree(), &lim()).map_err(err(&ctx))?;
        let r = if skew {
            pal_vsk_reduction(c, &lim())
        } else {
            dyck_completeness_reduction(c, &lim())
        }
        .map_err(err(&ctx))?;
        max_dim = max_dim.max(r.dim());
        max_deg = max_deg.max(c.formal_degree());
        terms += expected.len();
        let target = r.target_family(F).map_err(err(&ctx))?;
        verify_via_text(r, &FamilySpec::explicit("circuit", expected), &target, &ctx)?;
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        return Err(format!("took {secs:.1}s"));
    }
    Ok(format!(
        "{} circuits, max degree {max_deg}, {terms} terms, max dim {max_dim}, {secs:.2}s",
        corpus.len()
    ))
}

fn criterion_1() -> Outcome {
    circuit_protocol(false)
}

fn criterion_2() -> Outcome {
    circuit_protocol(true)
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    let mut seed = 0u64;
    while pairs < 100 {
        seed += 1;
        let mut r = rng(seed);
        let vars = 1 + (seed % 2) as usize;
        let t = table(vars);
        let c = random_circuit(&mut r, &t, 6 - vars - 1, 4, F);
        let depth = 1 + (seed % 4) as usize;
        let g = random_abp(&mut r, &t, depth, 2, true, F);
        if g.size() > 6 {
            continue;
        }
        let ctx = format!("seed {seed}");
        let fast = hadamard_via_matrices(HadamardInput::Circuit(&c), &g, &lim()).map_err(err(&ctx))?;
        let f = expand(&c, c.formal_degree(), &lim()).map_err(err(&ctx))?;
        let slow = hadamard_bruteforce(&f, &abp_eval(&g, &lim()).map_err(err(&ctx))?).map_err(err(&ctx))?;
        same(&slow, &fast, &ctx)?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs"))
}

fn suite_abps() -> Vec<(String, Abp)> {
    let mut out = Vec::new();
    for seed in 0..20 {
        let mut r = rng(500 + seed);
        let t = table(2);
        out.push((
            format!("random {seed}"),
            random_abp(&mut r, &t, 1 + seed as usize % 5, 3, true, F),
        ));
    }
    for (types, depth, n) in [(1, 3, 3), (2, 2, 3), (3, 3, 2)] {
        out.push((
            format!("dyck {types},{depth},{n}"),
            dyck_abp(types, depth, n, &lim()).unwrap(),
        ));
    }
    for k in 1..=3 {
        for n in k..=4 {
            out.push((
                format!("bounded {k},{n}"),
                bounded_depth_dyck_abp(k, n, &lim()).unwrap(),
            ));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    for n in 1..=6 {
        let want = 1usize << n;
        let pal = hankel_rank(&gen_pal(n, &lim()).unwrap(), n).map_err(err("pal"))?;
        let id = hankel_rank(&gen_id(n, &lim()).unwrap(), n).map_err(err("id"))?;
        if pal != want || id != want {
            return Err(format!("n={n}: pal rank {pal}, id rank {id}, want {want}"));
        }
    }
    let abps = suite_abps();
    for (name, a) in &abps {
        let f = abp_eval(a, &lim()).map_err(err(name))?;
        for cut in 0..=a.depth() {
            let rank = hankel_rank(&f, cut).map_err(err(name))?;
            if rank > a.layers()[cut] {
                return Err(format!(
                    "{name} cut {cut}: rank {rank} > width {}",
                    a.layers()[cut]
                ));
            }
        }
    }
    for k in 1..=4 {
        for n in 1..=6 {
            let a = bounded_depth_dyck_abp(k, n, &lim()).map_err(err("bounded"))?;
            let bound = (2 * n + 1) << (k + 1);
            if a.size() > bound {
                return Err(format!("bounded k={k} n={n}: {} vertices > {bound}", a.size()));
            }
        }
    }
    Ok(format!(
        "ranks 2^n for n<=6, {} ABPs within layer widths",
        abps.len()
    ))
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Balanced words over `k` pairs, variable `2b` opening and `2b + 1`
/// closing pair `b`.
fn balanced(w: &[usize]) -> bool {
    let mut stack = Vec::new();
    for &x in w {
        if x % 2 == 0 {
            stack.push(x / 2);
        } else if stack.pop() != Some(x / 2) {
            return false;
        }
    }
    stack.is_empty()
}

/// Counts balanced words of the given length by brute force over all words.
fn enumerate_balanced(k: usize, len: usize) -> u128 {
    let letters = 2 * k;
    let total = letters.pow(len as u32);
    let mut w = vec![0; len];
    let mut count = 0;
    for mut idx in 0..total {
        for slot in w.iter_mut() {
            *slot = idx % letters;
            idx /= letters;
        }
        count += balanced(&w) as u128;
    }
    count
}

/// Same count by dynamic programming over stack heights.
fn count_balanced(k: usize, len: usize) -> u128 {
    let mut ways = vec![0u128; len + 2];
    ways[0] = 1;
    for _ in 0..len {
        let mut next = vec![0u128; len + 2];
        for h in 0..=len {
            next[h + 1] += ways[h] * k as u128;
            if h > 0 {
                next[h - 1] += ways[h];
            }
        }
        ways = next;
    }
    ways[0]
}

fn criterion_5() -> Outcome {
    let mut exhaustive = 0;
    for k in 1..=3usize {
        for n in 0..=6usize {
            let formula = binomial(2 * n as u128, n as u128) / (n as u128 + 1) * (k as u128).pow(n as u32);
            if catalan(n) * (k as u128).pow(n as u32) != formula {
                return Err(format!("catalan({n}) disagrees with the binomial formula"));
            }
            let p = gen_dyck(k, 2 * n, &lim()).map_err(err("gen_dyck"))?;
            if p.len() as u128 != formula {
                return Err(format!("k={k} n={n}: {} terms, want {formula}", p.len()));
            }
            for (w, c) in p.terms() {
                let letters: Vec<usize> = w.letters().iter().map(|v| v.index()).collect();
                if !balanced(&letters) || !c.is_one() {
                    return Err(format!("k={k} n={n}: bad term"));
                }
            }
            let oracle = if (2 * k).pow(2 * n as u32) <= 20_000_000 {
                exhaustive += 1;
                enumerate_balanced(k, 2 * n)
            } else {
                count_balanced(k, 2 * n)
            };
            if oracle != formula {
                return Err(format!("k={k} n={n}: enumeration gives {oracle}, want {formula}"));
            }
        }
    }
    for n in 0..=6 {
        let a = gen_dyck_depth(n, n, &lim()).map_err(err("depth"))?;
        let b = gen_dyck(2, 2 * n, &lim()).map_err(err("dyck"))?;
        same(&b, &a, &format!("depth n={n}"))?;
    }
    Ok(format!(
        "{exhaustive} exhaustive enumerations, remainder by height DP"
    ))
}

fn check_abp(r: AbpReduction, source: FamilySpec, target: FamilySpec, ctx: &str) -> Result<(), String> {
    let v = verify_reduction(&Reduction::Abp(r), &source, &target, &lim()).map_err(err(ctx))?;
    if v.pass {
        Ok(())
    } else {
        Err(format!("{ctx}: {}", v.to_string().replace('\n', "; ")))
    }
}

fn chi_tables(n: usize) -> Vec<ChiTable> {
    let perms = permutations(n);
    let make = |f: &dyn Fn(usize) -> i64| {
        let vals: BTreeMap<Vec<usize>, Scalar> = perms
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), Scalar::from(f(i))))
            .collect();
        ChiTable::new(n, vals, perms.len()).unwrap()
    };
    vec![
        ChiTable::constant(n, Scalar::one()).unwrap(),
        make(&|i| i as i64 + 1),
        make(&|i| if i % 2 == 0 { 2 } else { -3 }),
    ]
}

fn criterion_6() -> Outcome {
    let checked = std::cell::Cell::new(0);
    let run = |r: Result<AbpReduction, ncreduce::Error>, s: FamilySpec, t: FamilySpec, ctx: String| {
        checked.set(checked.get() + 1);
        check_abp(r.map_err(err(&ctx))?, s, t, &ctx)
    };
    for n in 1..=4 {
        run(
            pal_to_d2_reduction(n),
            FamilySpec::pal(n),
            FamilySpec::dyck(2, 2 * n),
            format!("pal-d2 {n}"),
        )?;
    }
    for n in 1..=2 {
        run(
            palsq_to_d2_reduction(n),
            FamilySpec::PalSq { n },
            FamilySpec::dyck(2, 4 * n),
            format!("palsq {n}"),
        )?;
    }
    for d in [2, 4] {
        run(
            dk_to_d2_reduction(3, d),
            FamilySpec::dyck(3, d),
            FamilySpec::dyck(2, 4 * d),
            format!("dk-d2 {d}"),
        )?;
    }
    for n in 1..=4 {
        for k2 in 1..=n {
            for k1 in 1..k2 {
                run(
                    dyck_depth_reduction(k1, k2, n),
                    FamilySpec::DyckDepth { k: k1, n },
                    FamilySpec::DyckDepth { k: k2, n },
                    format!("depth {k1}<{k2} n={n}"),
                )?;
            }
        }
    }
    for n in [2, 3] {
        run(
            per_to_idstar_reduction(n, &lim()),
            FamilySpec::Per { n },
            FamilySpec::IdStar { n },
            format!("idstar {n}"),
        )?;
    }
    for n in [2, 3] {
        let per = gen_per(n, &lim()).unwrap();
        for (i, chi) in chi_tables(n).into_iter().enumerate() {
            let ctx = format!("per-chi n={n} table {i}");
            let r = per_to_perstar_chi_reduction(n, &chi, F, &lim()).map_err(err(&ctx))?;
            let g = gen_per_star_chi(n, &chi, &lim()).map_err(err(&ctx))?;
            same(&per, &r.apply(&g, &lim()).map_err(err(&ctx))?, &ctx)?;
            checked.set(checked.get() + 1);
        }
    }
    for n in 1..=2 {
        for i in 1..=3 {
            let ctx = format!("hier i={i} n={n}");
            let m = hierarchy_iproj(i, n).map_err(err(&ctx))?;
            let g = gen_hierarchy(i + 1, n, &lim()).map_err(err(&ctx))?;
            let want = gen_hierarchy(i, n, &lim()).map_err(err(&ctx))?;
            same(&want, &apply_iproj(&m, &g).map_err(err(&ctx))?, &ctx)?;
            checked.set(checked.get() + 1);
        }
    }
    for n in 1..=3 {
        let ctx = format!("vbp n={n}");
        let f = dyck_abp(1, n, n, &lim()).map_err(err(&ctx))?;
        let target = FamilySpec::pal(n);
        let r = vbp_trivial_reduction(&f, &target, &Word(vec![Var(0); 2 * n]), &lim());
        run(r, FamilySpec::dyck(1, 2 * n), target, ctx)?;
    }
    for n in 1..=4 {
        let s = FamilySpec::explicit("two-monomials", two_monomials(n));
        let t = FamilySpec::explicit("product-of-sums", product_of_sums(n));
        let r = separation_reduction(n);
        if let Ok(r) = &r {
            if r.dim() != 2 * n {
                return Err(format!("separation n={n}: dim {}", r.dim()));
            }
        }
        run(r, s, t, format!("separation {n}"))?;
    }
    Ok(format!("{} reductions verified", checked.get()))
}

fn random_maps() -> Vec<(ProjMap, NCPoly, usize)> {
    (0..60u64)
        .map(|seed| {
            let mut r = rng(9000 + seed);
            let src = VarTable::shared((0..2 + seed % 2).map(|i| format!("y{i}")));
            let dst = VarTable::shared((0..2 + seed % 3).map(|i| format!("x{i}")));
            let d = 1 + (seed % 3) as usize;
            let m = random_proj(&mut r, &src, &dst, F);
            let g = random_homogeneous_poly(&mut r, &src, d, 5, F);
            (m, g, d)
        })
        .collect()
}

fn identity_lift(table: &TableRef, d: usize) -> AbpReduction {
    iproj_to_abp(&proj_to_iproj(&ProjMap::identity(table), d), d).unwrap()
}

/// Indexed projections whose positions each map to variables only or to
/// scalars only.
fn suite_iprojs() -> Vec<(String, IProjMap, NCPoly)> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for i in 1..=3 {
            out.push((
                format!("hier {i},{n}"),
                hierarchy_iproj(i, n).unwrap(),
                gen_hierarchy(i + 1, n, &lim()).unwrap(),
            ));
        }
    }
    for n in 1..=4 {
        out.push((format!("separation {n}"), separation_iproj(n), binary_power(n)));
    }
    for n in 2..=3 {
        out.push((
            format!("perstar {n}"),
            per_to_perstar_iproj(n),
            gen_per_star(n, &lim()).unwrap(),
        ));
    }
    for seed in 0..10u64 {
        let mut r = rng(7000 + seed);
        let src = VarTable::shared(["a", "b"]);
        let dst = VarTable::shared(["u", "v", "w"]);
        let d = 3;
        let mut m = random_iproj(&mut r, &src, &dst, d, F);
        // make position 2 all-scalar, the others all-variable
        for y in src.vars() {
            let img = m.get(2, y).cloned().unwrap();
            if img.is_var() {
                m.set(2, y, Image::Scalar(Scalar::from(2)));
            }
            for pos in [1, 3] {
                if !m.get(pos, y).unwrap().is_var() {
                    m.set(pos, y, Image::Var(Var(pos as u32 - 1)));
                }
            }
        }
        let g = random_homogeneous_poly(&mut r, &src, d, 6, F);
        out.push((format!("random iproj {seed}"), m, g));
    }
    out
}

fn criterion_7() -> Outcome {
    let maps = random_maps();
    for (i, (m, g, d)) in maps.iter().enumerate() {
        let ctx = format!("map #{i}");
        let a = apply_proj(m, g).map_err(err(&ctx))?;
        let im = proj_to_iproj(m, *d);
        let b = apply_iproj(&im, g).map_err(err(&ctx))?;
        let c = iproj_to_abp(&im, *d)
            .map_err(err(&ctx))?
            .apply(g, &lim())
            .map_err(err(&ctx))?;
        same(&a, &b, &ctx)?;
        same(&a, &c, &ctx)?;
    }
    for seed in 0..10u64 {
        let mut r = rng(8000 + seed);
        let src = VarTable::shared(["a", "b"]);
        let dst = VarTable::shared(["u", "v"]);
        let m = random_iproj(&mut r, &src, &dst, 3, F);
        let g = random_homogeneous_poly(&mut r, &src, 3, 6, F);
        let ctx = format!("iproj seed {seed}");
        let a = apply_iproj(&m, &g).map_err(err(&ctx))?;
        let b = iproj_to_abp(&m, 3)
            .map_err(err(&ctx))?
            .apply(&g, &lim())
            .map_err(err(&ctx))?;
        same(&a, &b, &ctx)?;
    }

    // compositions f <= g <= h: composite applied to h equals sequential application
    let mut pairs: Vec<(String, AbpReduction, AbpReduction, NCPoly)> = Vec::new();
    for n in 3..=4 {
        for k1 in 1..n - 1 {
            for k2 in k1 + 1..n {
                for k3 in k2 + 1..=n {
                    pairs.push((
                        format!("depth {k1}<{k2}<{k3} n={n}"),
                        dyck_depth_reduction(k1, k2, n).unwrap(),
                        dyck_depth_reduction(k2, k3, n).unwrap(),
                        gen_dyck_depth(k3, n, &lim()).unwrap(),
                    ));
                }
            }
        }
    }
    for n in 1..=3 {
        let d2 = dyck_table(2).unwrap();
        let h = gen_dyck(2, 2 * n, &lim()).unwrap();
        pairs.push((
            format!("pal-d2 then lift n={n}"),
            pal_to_d2_reduction(n).unwrap(),
            identity_lift(&d2, 2 * n),
            h.clone(),
        ));
        pairs.push((
            format!("depth then pal-d2-side n={n}"),
            dyck_depth_reduction(1, n, n).unwrap(),
            identity_lift(&d2, 2 * n),
            h,
        ));
    }
    for n in 1..=2 {
        let a = iproj_to_abp(
            &hierarchy_iproj(1, n).unwrap(),
            hierarchy_iproj(1, n).unwrap().degree(),
        )
        .unwrap();
        let m2 = hierarchy_iproj(2, n).unwrap();
        let b = iproj_to_abp(&m2, m2.degree()).unwrap();
        pairs.push((
            format!("hier 1<2<3 n={n}"),
            a,
            b,
            gen_hierarchy(3, n, &lim()).unwrap(),
        ));
    }
    for n in 1..=4 {
        let m = separation_iproj(n);
        pairs.push((
            format!("separation n={n}"),
            separation_reduction(n).unwrap(),
            iproj_to_abp(&m, n).unwrap(),
            binary_power(n),
        ));
    }
    for (i, c) in hand_circuits().iter().take(4).enumerate() {
        let r = dyck_completeness_reduction(c, &lim()).unwrap();
        let target = r.target_family(F).unwrap();
        let h = target.realize(&lim()).unwrap();
        let lift = identity_lift(h.table(), target.degree());
        pairs.push((format!("circuit #{i} then lift"), r, lift, h));
    }
    for (ctx, r1, r2, h) in &pairs {
        let c = compose_abp(r1, r2).map_err(err(ctx))?;
        if c.dim() != r1.dim() * r2.dim() {
            return Err(format!("{ctx}: dim {} != {} * {}", c.dim(), r1.dim(), r2.dim()));
        }
        let seq = r1
            .apply(&r2.apply(h, &lim()).map_err(err(ctx))?, &lim())
            .map_err(err(ctx))?;
        same(&seq, &c.apply(h, &lim()).map_err(err(ctx))?, ctx)?;
    }

    let iprojs = suite_iprojs();
    for (ctx, m, g) in &iprojs {
        let lifted = transfer(m).map_err(err(ctx))?;
        let left = apply_proj(&lifted, &commutative_version(g).map_err(err(ctx))?.poly).map_err(err(ctx))?;
        let right = commutative_version(&apply_iproj(m, g).map_err(err(ctx))?)
            .map_err(err(ctx))?
            .poly;
        same(&right, &left, ctx)?;
    }
    Ok(format!(
        "{} proj + 10 iproj three-way, {} compositions, {} transfer squares",
        maps.len(),
        pairs.len(),
        iprojs.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    // ID'_n^(c) is the product over i of (x_{0,i} x_{0,n+i} + x_{1,i} x_{1,n+i}),
    // so a split exists once there are two factors and must keep i with n + i
    for n in 1..=3 {
        let f = commutative_version(&gen_id_prime(n, &lim()).unwrap()).map_err(err("idprime"))?;
        match set_multilinear_rank1_split(&f).map_err(err("idprime"))? {
            SplitVerdict::Split(s) if n >= 2 => {
                if s.iter()
                    .any(|&p| !s.contains(&(if p > n { p - n } else { p + n })))
                {
                    return Err(format!("ID'_{n} split {s:?} separates a factor"));
                }
                notes.push(format!("ID'_{n} splits at {s:?}"));
            }
            SplitVerdict::Split(s) => return Err(format!("single factor ID'_1 split at {s:?}")),
            SplitVerdict::Irreducible if n == 1 => notes.push("ID'_1 is one irreducible factor".into()),
            SplitVerdict::Irreducible => return Err(format!("no split found for ID'_{n}")),
        }
    }
    for n in [2, 3] {
        let f = commutative_version(&gen_dyck(2, 2 * n, &lim()).unwrap()).map_err(err("dyck"))?;
        if let SplitVerdict::Split(s) = set_multilinear_rank1_split(&f).map_err(err("dyck"))? {
            return Err(format!("indexed Dyck n={n} split at {s:?}"));
        }
    }
    notes.push("indexed D_2 irreducible for n=2,3".into());
    Ok(notes.join(", "))
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for (i, (m, g, _)) in random_maps().iter().enumerate() {
        let out = apply_proj(m, g).map_err(err("proj"))?;
        if out.len() > g.len() {
            return Err(format!("map #{i}: {} terms from {}", out.len(), g.len()));
        }
        checked += 1;
    }
    for (ctx, m, g) in suite_iprojs() {
        let out = apply_iproj(&m, &g).map_err(err(&ctx))?;
        if out.len() > g.len() {
            return Err(format!("{ctx}: {} terms from {}", out.len(), g.len()));
        }
        checked += 1;
    }
    for seed in 0..30u64 {
        let mut r = rng(6000 + seed);
        let src = VarTable::shared(["a", "b", "c"]);
        let dst = VarTable::shared(["u", "v"]);
        let m = random_iproj(&mut r, &src, &dst, 3, F);
        let g = random_homogeneous_poly(&mut r, &src, 3, 8, F);
        let out = apply_iproj(&m, &g).map_err(err("iproj"))?;
        if out.len() > g.len() {
            return Err(format!("iproj seed {seed}: {} terms from {}", out.len(), g.len()));
        }
        checked += 1;
    }
    for n in 1..=10 {
        let p = product_of_sums(n);
        let q = two_monomials(n);
        if p.len() != 1 << n || q.len() != 2 {
            return Err(format!("n={n}: {} and {} terms", p.len(), q.len()));
        }
        if n <= 6 {
            same(
                &p,
                &apply_iproj(&separation_iproj(n), &binary_power(n)).map_err(err("sep"))?,
                "separation",
            )?;
        }
    }
    Ok(format!(
        "{checked} applications, product of sums 2^n vs 2 for n<=10"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("dyck completeness", criterion_1),
        ("pal skew completeness", criterion_2),
        ("hadamard via matrices", criterion_3),
        ("hankel ranks", criterion_4),
        ("counting oracles", criterion_5),
        ("concrete reductions", criterion_6),
        ("reducibility algebra", criterion_7),
        ("rank-one splits", criterion_8),
        ("term-count monotonicity", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
