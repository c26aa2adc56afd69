//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime
//! against the budget. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use zkgames::alternation::{eval_alternation, PredicateAssignment};
use zkgames::alternation::StageState::{P0, V0};
use zkgames::equilibrium::{
    check_symmetry, is_equilibrium, is_solvable, pure_equilibria, sub_solutions, GamePermutation, NormalFormGame,
    Profile,
};
use zkgames::spec::{parse_spec, SpecDocument, SpecKind};
use zkgames::fuzzy::{find_fne, find_fnne, find_nne, FuzzyCell, FuzzyGame, Interpretation, LinguisticScale};
use zkgames::signaling::{
    lambda_product, rounds_for_tolerance, simulate, stage_probability, zk_limit_satisfied, zk_threshold,
    LambdaMatrix, LambdaVector, ProofOrder, RoundRecord, SignalingSession, SimulationConfig,
};

type Check = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    }};
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn threshold_exactness() -> Check {
    ensure!(zk_threshold(2).unwrap() == rat(1, 9), "h_2 != 1/9");
    ensure!(zk_threshold(3).unwrap() == rat(11, 27), "h_3 != 11/27");
    ensure!(zk_threshold(10).unwrap() == rat(57001, 59049), "h_10 != 57001/59049");
    let mut prev = zk_threshold(2).unwrap();
    for k in 3..=64 {
        let h = zk_threshold(k).unwrap();
        ensure!(h > prev, "h_{k} does not exceed h_{}", k - 1);
        prev = h;
    }
    // smallest k with 2 (2/3)^k <= 1/100, by exact integer arithmetic
    let forced = (2u32..)
        .find(|&k| {
            let lhs = BigInt::from(2) * num::pow(BigInt::from(2), k as usize) * BigInt::from(100);
            lhs <= num::pow(BigInt::from(3), k as usize)
        })
        .unwrap();
    // independent bound: k >= ln(2 / eps) / ln(3 / 2)
    let by_log = ((2.0f64 / 0.01).ln() / 1.5f64.ln()).ceil() as u32;
    ensure!(forced == by_log, "exact crossing {forced} disagrees with logarithm bound {by_log}");
    ensure!(!zk_limit_satisfied(forced - 1, 0.01).unwrap(), "limit satisfied early at k={}", forced - 1);
    ensure!(zk_limit_satisfied(forced, 0.01).unwrap(), "limit not satisfied at k={forced}");
    ensure!(rounds_for_tolerance(0.01).unwrap() == forced, "rounds_for_tolerance disagrees");
    Ok(())
}

fn epistemic_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut models = 0;
    while models < 250 {
        let n = rng.random_range(1..=6usize);
        let agents = rng.random_range(1..=3usize);
        let labels: Vec<Vec<usize>> =
            (0..agents).map(|_| (0..n).map(|_| rng.random_range(0..n)).collect()).collect();
        let model = model_from_labels(&labels);
        let ids = agent_ids(&labels);
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        let omega = model.space().full();
        let events: Vec<States> = (0..1u32 << n).map(|m| mask_to_set(n, m)).collect();
        for e in &events {
            let ev = to_event(e);
            let ck = from_event(&model.common_knowledge(&refs, &ev).unwrap());
            ensure!(ck == common::common_knowledge(&labels, e), "common knowledge of {e:?} under {labels:?}");
            for (a, id) in ids.iter().enumerate() {
                let k = model.knows(id, &ev).unwrap();
                ensure!(from_event(&k) == knows(&labels[a], e), "K_{id}({e:?}) under {labels:?}");
                ensure!(k.is_subset(&ev), "truth fails");
                ensure!(model.knows(id, &k).unwrap() == k, "positive introspection fails");
                ensure!(model.believes(id, &omega, &ev).unwrap() == k, "B^Ω != K");
            }
        }
        // monotonicity over a sample of nested pairs
        for _ in 0..16 {
            let small = mask_to_set(n, rng.random());
            let big: States = small.union(&mask_to_set(n, rng.random())).copied().collect();
            let f = to_event(&mask_to_set(n, rng.random()));
            for id in &ids {
                let (s, b) = (to_event(&small), to_event(&big));
                ensure!(model.knows(id, &s).unwrap().is_subset(&model.knows(id, &b).unwrap()), "K not monotone");
                ensure!(
                    model.believes(id, &f, &s).unwrap().is_subset(&model.believes(id, &f, &b).unwrap()),
                    "B not monotone"
                );
            }
        }
        models += 1;
    }
    Ok(())
}

fn alternation_table() -> Check {
    let mut seen = 0;
    for a in PredicateAssignment::all() {
        let v = eval_alternation(a);
        let expected = alternation(a.sx, a.ex, a.fx);
        ensure!((v.antecedent, v.lhs, v.rhs, v.whole) == expected, "mismatch at {a}");
        ensure!(v.whole, "formula false at {a}");
        seen += 1;
    }
    ensure!(seen == 8, "enumerated {seen} assignments");
    let ttf = eval_alternation(PredicateAssignment::new(true, true, false));
    ensure!(!ttf.lhs && ttf.rhs, "(T,T,F) is not right-side-only");
    ensure!(eval_alternation(PredicateAssignment::new(true, false, true)).lhs, "left side false when only Ex false");
    ensure!(eval_alternation(PredicateAssignment::new(true, false, false)).rhs, "right side false when Ex, Fx false");
    Ok(())
}

fn lambda_machinery() -> Check {
    let p = LambdaVector::proposition();
    let v = LambdaVector::verification();
    let d1d2 = lambda_product(p, v).unwrap();
    let d2d1 = lambda_product(v, p).unwrap();
    ensure!(d1d2.entries == [[(P0, V0), (P0, P0)], [(V0, V0), (V0, P0)]], "d1d2 = {d1d2}");
    ensure!(d2d1.entries == [[(V0, P0), (V0, V0)], [(P0, P0), (P0, V0)]], "d2d1 = {d2d1}");
    for m in [LambdaMatrix::d1d2(), LambdaMatrix::d2d1()] {
        ensure!(m.complement().unwrap().complement().unwrap() == m, "complement not involutive on {m}");
    }
    ensure!(d1d2.complement().unwrap() == d2d1 && d2d1.complement().unwrap() == d1d2, "complement does not swap");
    let cases = [
        ((P0, P0), ProofOrder::EvidenceFirst, 0.0),
        ((V0, V0), ProofOrder::ProofFirst, 0.0),
        ((V0, P0), ProofOrder::ProofFirst, 0.5),
        ((P0, V0), ProofOrder::EvidenceFirst, 0.5),
    ];
    for (pair, order, want) in cases {
        let got = stage_probability(pair, order).unwrap();
        ensure!(got == want, "stage probability {pair:?} {order}: {got}");
    }
    let record = RoundRecord {
        round_index: 1,
        prover_passed: true,
        stage_emitted: P0,
        assignment: PredicateAssignment::for_stage(P0),
    };
    let infer = |pu: f64, pi: f64| {
        let mut s = SignalingSession::new(0.001).unwrap().with_stage_probabilities(pu, pi).unwrap();
        s.push_round(record).unwrap();
        s.infer_stage()
    };
    let grid: Vec<f64> = (0..10).map(|i| 0.05 + 0.1 * i as f64).collect();
    let mut pairs = 0;
    for &pu in &grid {
        for &pi in &grid {
            pairs += 1;
            match (infer(pu, pi), infer(pi, pu)) {
                (Ok(a), Ok(b)) => ensure!(a.decision != b.decision, "no swap at ({pu}, {pi})"),
                (Err(_), Err(_)) => ensure!(pu == pi, "unexpected ambiguity at ({pu}, {pi})"),
                _ => return Err(format!("asymmetric result at ({pu}, {pi})")),
            }
        }
    }
    ensure!(pairs == 100, "grid has {pairs} pairs");
    Ok(())
}

fn simulation_convergence() -> Check {
    let config = SimulationConfig {
        bluff_success: 2.0 / 3.0,
        k_max: 8,
        trials: 100_000,
        seed: 7,
        ..Default::default()
    };
    let pool = |threads: usize| rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let one = pool(1).install(|| simulate(&config)).unwrap();
    let four = pool(4).install(|| simulate(&config)).unwrap();
    let again = pool(4).install(|| simulate(&config)).unwrap();
    ensure!(one == four && four == again, "results depend on thread count or run");
    ensure!(one.rows.iter().map(|r| r.k).eq(2..=8), "rows are not k = 2..8");
    for row in &one.rows {
        let expected = (2.0f64 / 3.0).powi(row.k as i32);
        let got = row.empirical_undetected.ok_or("no uninformed trials")?;
        ensure!((got - expected).abs() <= 0.01, "k={}: {got} vs {expected}", row.k);
    }
    Ok(())
}

fn set_of(game: &NormalFormGame, labels: &[&str]) -> BTreeSet<Profile> {
    labels
        .iter()
        .map(|l| {
            let parts: Vec<&str> = l.split(',').collect();
            Profile(
                parts
                    .iter()
                    .zip(game.strategies())
                    .map(|(p, s)| s.iter().position(|x| x == p).unwrap())
                    .collect(),
            )
        })
        .collect()
}

fn load_game(file: &str) -> Result<NormalFormGame, String> {
    let bytes = std::fs::read(root().join("fixtures").join(file)).map_err(|e| e.to_string())?;
    match parse_spec(&bytes, SpecKind::Game).map_err(|e| e.to_string())? {
        SpecDocument::Game(doc) => doc.to_game().map_err(|e| e.to_string()),
        _ => Err(format!("{file} is not a game")),
    }
}

fn equilibrium_suite() -> Check {
    let pd_u = vec![vec![(3, 3), (0, 5)], vec![(5, 0), (1, 1)]];
    let mp_u = vec![vec![(1, -1), (-1, 1)], vec![(-1, 1), (1, -1)]];
    let co_u = vec![vec![(1, 1), (0, 0)], vec![(0, 0), (1, 1)]];
    let named = |u: &Vec<Vec<(i64, i64)>>, s: [&str; 2]| {
        NormalFormGame::new(
            vec!["A".into(), "B".into()],
            vec![vec![s[0].into(), s[1].into()], vec![s[0].into(), s[1].into()]],
            u.iter().flatten().map(|&(a, b)| vec![rat(a, 1), rat(b, 1)]).collect(),
        )
        .unwrap()
    };
    let pd = named(&pd_u, ["C", "D"]);
    let mp = named(&mp_u, ["H", "T"]);
    let co = named(&co_u, ["L", "R"]);
    for (file, game) in [("pd.json", &pd), ("matching_pennies.json", &mp), ("coordination.json", &co)] {
        ensure!(&load_game(file)? == game, "fixture {file} does not hold the expected payoffs");
    }
    let double_loop = |u: &Vec<Vec<(i64, i64)>>| -> BTreeSet<Profile> {
        bimatrix_equilibria(u).into_iter().map(|(r, c)| Profile(vec![r, c])).collect()
    };

    ensure!(pure_equilibria(&pd) == set_of(&pd, &["D,D"]), "PD equilibria");
    ensure!(pure_equilibria(&pd) == double_loop(&pd_u), "PD disagrees with double loop");
    ensure!(pure_equilibria(&mp).is_empty() && double_loop(&mp_u).is_empty(), "matching pennies equilibria");
    ensure!(pure_equilibria(&co) == double_loop(&co_u), "coordination disagrees with double loop");

    let subs = sub_solutions(&co).map_err(|e| e.to_string())?;
    ensure!(subs.len() == 2, "coordination has {} sub-solutions", subs.len());
    let mut members: Vec<BTreeSet<Profile>> = subs.iter().map(|s| s.profiles.clone()).collect();
    members.sort();
    ensure!(members == vec![set_of(&co, &["L,L"]), set_of(&co, &["R,R"])], "coordination sub-solutions");
    for s in &subs {
        ensure!(s.profiles.len() == 1 && s.product() == s.profiles, "sub-solution is not its factor product");
    }

    ensure!(is_solvable(&pd).solvable, "PD not solvable");
    ensure!(!is_solvable(&co).solvable, "coordination solvable");

    let swap = GamePermutation::relabel_players(&pd, vec![1, 0]).map_err(|e| e.to_string())?;
    ensure!(check_symmetry(&pd, &swap).unwrap(), "PD not swap-symmetric");
    let dd = Profile(vec![1, 1]);
    ensure!(
        zkgames::equilibrium::apply_permutation(&pd, &swap, &dd).unwrap() == dd && is_equilibrium(&pd, &dd).unwrap(),
        "(D,D) is not a symmetric equilibrium"
    );

    for game in [&pd, &mp, &co] {
        for (scale, shift) in [(rat(2, 1), rat(-3, 1)), (rat(1, 7), rat(5, 2)), (rat(9, 4), BigRational::zero())] {
            let scaled = game
                .affine_transform(0, &scale, &shift)
                .and_then(|g| g.affine_transform(1, &BigRational::one(), &scale))
                .map_err(|e| e.to_string())?;
            ensure!(pure_equilibria(&scaled) == pure_equilibria(game), "rescaling changed equilibria");
            ensure!(is_solvable(&scaled) == is_solvable(game), "rescaling changed solvability");
            ensure!(sub_solutions(&scaled).unwrap() == sub_solutions(game).unwrap(), "rescaling changed sub-solutions");
        }
    }
    Ok(())
}

fn fuzzy_game(levels: usize, v: &[Vec<usize>], phi: &[Vec<usize>]) -> FuzzyGame {
    let scale = LinguisticScale::new((0..levels).map(|i| format!("L{i}"))).unwrap();
    let cells = v
        .iter()
        .zip(phi)
        .map(|(vr, pr)| vr.iter().zip(pr).map(|(&v, &phi)| FuzzyCell { v, phi }).collect())
        .collect();
    FuzzyGame::new(scale, cells).unwrap()
}

fn fuzzy_agrees(v: &[Vec<usize>], phi: &[Vec<usize>]) -> Check {
    let g = fuzzy_game(5, v, phi);
    for (interp, literal) in [(Interpretation::Literal, true), (Interpretation::Strict, false)] {
        let nne = dominant(v, literal);
        let fne = dominant(phi, literal);
        let fnne: BTreeSet<_> = nne.intersection(&fne).copied().collect();
        ensure!(find_nne(&g, interp) == nne, "NNE {interp} on {v:?}");
        ensure!(find_fne(&g, interp) == fne, "FNE {interp} on {phi:?}");
        ensure!(find_fnne(&g, interp) == fnne, "FNNE {interp}");
    }
    Ok(())
}

fn fuzzy_suite() -> Check {
    let v2 = vec![vec![3, 1], vec![2, 4]];
    let p2 = vec![vec![0, 0], vec![0, 0]];
    fuzzy_agrees(&v2, &p2)?;
    let g2 = fuzzy_game(5, &v2, &p2);
    ensure!(find_nne(&g2, Interpretation::Literal) == BTreeSet::from([(1, 0), (1, 1)]), "2×2 literal NNE");
    ensure!(find_nne(&g2, Interpretation::Strict) == BTreeSet::from([(1, 1)]), "2×2 strict NNE");
    let v3 = vec![vec![0, 1, 0], vec![1, 4, 2], vec![0, 1, 3]];
    let p3 = vec![vec![1, 0, 0], vec![0, 3, 1], vec![2, 0, 1]];
    fuzzy_agrees(&v3, &p3)?;
    ensure!(find_fnne(&fuzzy_game(5, &v3, &p3), Interpretation::Strict) == BTreeSet::from([(1, 1)]), "3×3 FNNE");

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let (r, c) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let mut grid = || -> Vec<Vec<usize>> {
            (0..r).map(|_| (0..c).map(|_| rng.random_range(0..5)).collect()).collect()
        };
        let (v, phi) = (grid(), grid());
        fuzzy_agrees(&v, &phi)?;
        let g = fuzzy_game(5, &v, &phi);
        let relabel = |x: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            x.iter().map(|row| row.iter().map(|&l| 3 * l + 1).collect()).collect()
        };
        let h = fuzzy_game(14, &relabel(&v), &relabel(&phi));
        for interp in [Interpretation::Literal, Interpretation::Strict] {
            let nne = find_nne(&g, interp);
            let fne = find_fne(&g, interp);
            let both: BTreeSet<_> = nne.intersection(&fne).copied().collect();
            ensure!(find_fnne(&g, interp) == both, "FNNE != NNE ∩ FNE");
            ensure!(find_fnne(&h, interp) == both && find_nne(&h, interp) == nne, "relabeling changed results");
        }
        for f in [find_nne, find_fne, find_fnne] {
            ensure!(f(&g, Interpretation::Strict).is_subset(&f(&g, Interpretation::Literal)), "strict ⊄ literal");
        }
    }
    Ok(())
}

fn cli_determinism() -> Check {
    let required = ["alternation-table", "simulate", "equilibria", "walkthrough"];
    for (name, args) in GOLDEN.iter().filter(|(_, a)| required.contains(&a[0])) {
        let first = zkgames(args);
        let second = zkgames(args);
        ensure!(first.status.success(), "{args:?} exited with {}", first.status);
        ensure!(first.stdout == second.stdout, "{args:?} differs between runs");
        let golden = std::fs::read(golden_path(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(first.stdout == golden, "{args:?} differs from golden {name}");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("threshold exactness", 1, threshold_exactness),
        ("epistemic oracle equivalence", 5, epistemic_oracle),
        ("alternation table", 1, alternation_table),
        ("lambda machinery", 1, lambda_machinery),
        ("simulation convergence", 10, simulation_convergence),
        ("equilibrium suite", 1, equilibrium_suite),
        ("fuzzy suite", 2, fuzzy_suite),
        ("CLI determinism", 5, cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= Duration::from_secs(budget) {
                Ok(())
            } else {
                Err(format!("over the {budget} s budget"))
            }
        });
        let ms = elapsed.as_secs_f64() * 1000.0;
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({ms:.0} ms, budget {budget} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms:.0} ms, budget {budget} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
