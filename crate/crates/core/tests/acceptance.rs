//! Acceptance criteria as a standalone binary: one PASS/FAIL line each,
//! non-zero exit status if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{parse_iset_table, read_data, word_set, Naive};
use idcodes::bounds::{check_layer_lemmas, lower_bounds, ratio_report};
use idcodes::construct3::{best_known_upper, construct_c1, construct_cl, construct_cq, construct_ct, extend_identifying};
use idcodes::graph::ladder_fixture;
use idcodes::latin::{code_to_latin, cyclic_latin, latin_to_code};
use idcodes::linear::{direct_sum_extend, sid_coset_construction, sld_repeated_column, ENUMERATION_BUDGET};
use idcodes::search::{exists_code, optimal_size, SearchProblem};
use idcodes::verify::{hamming_sid_sld_check, HammingMode};
use idcodes::{verify, Code, Exec, Graph, HammingGraph, Property};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn holds<G: Graph>(code: &Code<G>, p: Property, exec: Exec) -> Result<bool, String> {
    verify(code, p, exec).map(|r| r.holds).map_err(|e| e.to_string())
}

fn table_matches(code: &Code, file: &str) -> Outcome {
    let g = code.graph().full();
    let mut expect = parse_iset_table(&read_data(file));
    expect.sort();
    ensure(expect.len() == 64, || format!("{file}: {} rows", expect.len()))?;
    for (v, (key, set)) in expect.iter().enumerate() {
        ensure(g.vertex(v).to_one_based() == key.to_vec(), || format!("{file}: row order at {key:?}"))?;
        let got: BTreeSet<[u32; 3]> = if code.graph().contains(v) {
            code.i_set_indices(v).into_iter().map(|c| g.vertex(c).to_one_based().try_into().unwrap()).collect()
        } else {
            BTreeSet::new()
        };
        ensure(&got == set, || format!("{file}: I{key:?} = {got:?}, table has {set:?}"))?;
    }
    Ok(())
}

fn ac1() -> Outcome {
    table_matches(&construct_c1(), "table_c1_isets.txt")?;
    let cl = construct_cl();
    table_matches(&cl, "table_cl_isets.txt")?;
    ensure(cl.len() == 12, || format!("|C_L| = {}", cl.len()))?;
    for &c in cl.words() {
        ensure(cl.i_set_indices(c) == vec![c], || format!("I({c}) is not {{c}}"))?;
    }
    Ok(())
}

fn ac2() -> Outcome {
    for t in 1..=3u32 {
        let c = construct_ct(t).map_err(|e| e.to_string())?;
        let expect = 16usize.pow(t) - 4usize.pow(t - 1);
        ensure(c.len() == expect, || format!("t={t}: size {} != {expect}", c.len()))?;
        ensure(holds(&c, Property::Id, Exec::Parallel)?, || format!("t={t}: not identifying"))?;
    }
    Ok(())
}

fn ac3() -> Outcome {
    let c1 = construct_c1();
    for (r, size) in [(9, 80), (8, 63), (10, 99)] {
        let start = Instant::now();
        let e = extend_identifying(&c1, r).map_err(|e| e.to_string())?;
        ensure(e.len() == size, || format!("r={r}: size {}", e.len()))?;
        ensure(holds(&e, Property::Id, Exec::Parallel)?, || format!("r={r}: not identifying"))?;
        ensure(start.elapsed() < Duration::from_secs(5), || format!("r={r}: {:?}", start.elapsed()))?;
    }
    Ok(())
}

fn ac4() -> Outcome {
    for q in 2..=8usize {
        let sq = cyclic_latin(q);
        let c = latin_to_code(&sq).map_err(|e| e.to_string())?;
        ensure(c.len() == q * q, || format!("q={q}: size {}", c.len()))?;
        ensure(holds(&c, Property::Sld, Exec::Parallel)?, || format!("q={q}: not SLD"))?;
        ensure(lower_bounds(q as u64, 3).unwrap().sld3 == Some((q * q) as u64), || format!("q={q}: SLD bound"))?;
        ensure(code_to_latin(&c).map_err(|e| e.to_string())? == sq, || format!("q={q}: round trip"))?;
        for &w in c.words() {
            let smaller = Code::new(c.graph().clone(), c.words().iter().copied().filter(|&u| u != w)).unwrap();
            ensure(!holds(&smaller, Property::Sld, Exec::Parallel)?, || format!("q={q}: SLD without {w}"))?;
        }
    }
    Ok(())
}

fn ac5() -> Outcome {
    let start = Instant::now();
    let k3 = HammingGraph::new(3, 3).unwrap();
    let none = exists_code(&SearchProblem::hamming(k3.clone(), Property::Id, 8).with_symmetry(true), Exec::Sequential)
        .map_err(|e| e.to_string())?;
    ensure(none.is_none(), || "identifying code of size 8 in K_3^3".into())?;
    let some = exists_code(&SearchProblem::hamming(k3, Property::Id, 9).with_symmetry(true), Exec::Sequential)
        .map_err(|e| e.to_string())?;
    ensure(some.is_some_and(|c| Naive::hamming(3, 3).identifying(&word_set(&c))), || "no size 9 code".into())?;
    ensure(start.elapsed() < Duration::from_secs(600), || format!("K_3^3 took {:?}", start.elapsed()))?;
    for q in 2..=4 {
        let p = SearchProblem::hamming(HammingGraph::new(q, 2).unwrap(), Property::Dom, 1).with_symmetry(true);
        let (size, _) = optimal_size(&p, Exec::Parallel).map_err(|e| e.to_string())?;
        ensure(size == q as usize, || format!("domination of K_{q} x K_{q} is {size}"))?;
    }
    let g = ladder_fixture();
    for (prop, expect) in [(Property::Id, 3), (Property::Sid, 6), (Property::Sld, 4)] {
        let (size, _) = optimal_size(&SearchProblem::new(g.clone(), prop, 1), Exec::Parallel).map_err(|e| e.to_string())?;
        ensure(size == expect, || format!("ladder {prop} optimum {size} != {expect}"))?;
    }
    Ok(())
}

fn ac6() -> Outcome {
    for (q, k) in [(2u32, 2usize), (2, 3), (3, 2)] {
        let c = sid_coset_construction(q, k).map_err(|e| e.to_string())?;
        let n = c.graph().n();
        let expect = 3 * (q as usize).pow((n - k) as u32);
        ensure(c.len() == expect, || format!("coset ({q},{k}): size {}", c.len()))?;
        ensure(holds(&c, Property::Sid, Exec::Parallel)?, || format!("coset ({q},{k}): not SID"))?;
        let triple = c.graph().vertices().into_iter().all(|v| c.i_set_indices(v).len() == 3);
        ensure(triple, || format!("coset ({q},{k}): cover is not exactly 3"))?;
    }
    let mut c = sid_coset_construction(2, 2).unwrap();
    for step in 1..=2 {
        c = direct_sum_extend(&c).map_err(|e| e.to_string())?;
        ensure(holds(&c, Property::Sid, Exec::Parallel)?, || format!("direct sum step {step}: not SID"))?;
    }
    for (q, k, l) in [(2u32, 2usize, 0usize), (2, 2, 1), (3, 1, 0)] {
        let c = sld_repeated_column(q, k, l, ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
        let n = c.graph().n();
        ensure(c.len() == (q as usize).pow((n - k) as u32), || format!("repeat ({q},{k},{l}): size {}", c.len()))?;
        ensure(holds(&c, Property::Sld, Exec::Parallel)?, || format!("repeat ({q},{k},{l}): not SLD"))?;
        ensure(hamming_sid_sld_check(&c, HammingMode::Sld, Exec::Parallel).unwrap().holds, || "covering criterion".into())?;
        if l == 0 {
            let triple = c.graph().vertices().into_iter().filter(|&v| !c.contains(v)).all(|v| c.i_set_indices(v).len() == 3);
            ensure(triple, || format!("repeat ({q},{k},0): non-codeword cover is not 3"))?;
        }
    }
    Ok(())
}

fn ac7() -> Outcome {
    let c1 = construct_c1();
    let mut codes = vec![("C1".to_string(), c1.clone())];
    codes.extend((3..=8).map(|q| (format!("C_{q}"), construct_cq(q).unwrap())));
    codes.extend((1..=2).map(|t| (format!("C^{t}"), construct_ct(t).unwrap())));
    codes.extend((8..=10).map(|r| (format!("ext r={r}"), extend_identifying(&c1, r).unwrap())));
    for (name, c) in &codes {
        let report = check_layer_lemmas(c, Exec::Parallel).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.all_hold(), || format!("{name}:\n{report}"))?;
    }
    Ok(())
}

fn ac8() -> Outcome {
    for q in 2u64..=64 {
        let lower = (2 * q * q - 3 * q).div_ceil(2);
        ensure(lower_bounds(q, 3).unwrap().id3_new == Some(lower), || format!("q={q}: bound"))?;
        ensure(lower <= best_known_upper(q), || format!("q={q}: {lower} > {}", best_known_upper(q)))?;
    }
    for (q, k) in [(2u64, 2u32), (3, 1), (3, 2), (4, 1)] {
        let r = ratio_report(q, k).map_err(|e| e.to_string())?;
        ensure(r.karpovsky <= r.upper, || format!("({q},{k}): lower {} > upper {}", r.karpovsky, r.upper))?;
        ensure(3 * r.karpovsky >= 2 * r.upper, || format!("({q},{k}): {} < 2/3 of {}", r.karpovsky, r.upper))?;
    }
    Ok(())
}

fn ac9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1d_c0de5);
    for (q, n) in [(2u32, 4usize), (3, 3), (4, 3)] {
        let g = HammingGraph::new(q, n).unwrap();
        let naive = Naive::hamming(q, n);
        for case in 0..200 {
            let density = rng.random_range(0.05..=1.0);
            let words: Vec<usize> = (0..g.size()).filter(|_| rng.random_bool(density)).collect();
            if words.is_empty() {
                continue;
            }
            let code = Code::new(g.clone(), words).unwrap();
            let w = word_set(&code);
            let sid = [
                naive.sid_by_definition(&w),
                naive.sid_by_intersection(&w),
                naive.sid_by_subsets(&w),
                naive.hamming_condition(&w, false),
                holds(&code, Property::Sid, Exec::Parallel)?,
                hamming_sid_sld_check(&code, HammingMode::Sid, Exec::Parallel).unwrap().holds,
            ];
            let sld = [
                naive.sld_by_definition(&w),
                naive.sld_by_subsets(&w),
                naive.hamming_condition(&w, true),
                holds(&code, Property::Sld, Exec::Parallel)?,
                hamming_sid_sld_check(&code, HammingMode::Sld, Exec::Parallel).unwrap().holds,
            ];
            ensure(sid.iter().all(|&b| b == sid[0]), || format!("q={q} n={n} case {case}: SID {sid:?}"))?;
            ensure(sld.iter().all(|&b| b == sld[0]), || format!("q={q} n={n} case {case}: SLD {sld:?}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("AC1 golden I-set tables", ac1, Duration::from_secs(1)),
        ("AC2 recursive family sizes and identification", ac2, Duration::from_secs(60)),
        ("AC3 extensions to orders 8, 9, 10", ac3, Duration::from_secs(15)),
        ("AC4 Latin square bijection with SLD codes", ac4, Duration::from_secs(5)),
        ("AC5 exhaustive optima", ac5, Duration::from_secs(600)),
        ("AC6 coset and repeated-column codes", ac6, Duration::from_secs(30)),
        ("AC7 layer inequalities on constructions", ac7, Duration::from_secs(600)),
        ("AC8 bound consistency", ac8, Duration::from_secs(1)),
        ("AC9 characterization equivalence", ac9, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| ensure(took <= limit, || format!("took {took:?}, limit {limit:?}")));
        match outcome {
            Ok(()) => println!("PASS {name} ({:.2}s)", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({:.2}s): {msg}", took.as_secs_f64());
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
