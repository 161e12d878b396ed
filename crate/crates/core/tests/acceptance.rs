//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kneser_core::chromatic::{chromatic_number_exact, DEFAULT_BUDGET};
use kneser_core::defect::{cd_le_tcd_check, colorability_defect};
use kneser_core::geometry::{tverberg_support_size, validated_stretched_config, verify_colorful_property};
use kneser_core::kneser::{afl_formula, build_kneser, greedy_coloring, is_proper, Hypergraph};
use kneser_core::setsystem::{filter_s_stable, inclusion_minimal, k_subsets, SetSystem};
use kneser_core::topology::{
    betti_numbers, box_complex, deleted_join, equivariant_chi_bound, BoxQuantifier, Field, SimplicialComplex,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn afl_cells() -> Vec<(usize, usize, usize)> {
    let mut cells = Vec::new();
    for r in [2, 3] {
        for k in [2, 3] {
            for n in r * k..=r * k + 3 {
                cells.push((r, k, n));
            }
        }
    }
    cells.extend([(4, 2, 8), (4, 2, 9), (4, 2, 10)]);
    cells
}

fn exact(h: &Hypergraph) -> Result<usize, String> {
    chromatic_number_exact(h, DEFAULT_BUDGET).map_err(|e| e.to_string())
}

fn formula_grid(cells: &[(usize, usize, usize)], stable: bool) -> Outcome {
    for &(r, k, n) in cells {
        let mut family = k_subsets(n, k).unwrap();
        if stable {
            family = filter_s_stable(&family, 2).unwrap();
        }
        let h = build_kneser(&family, r).unwrap();
        let chi = exact(&h)?;
        let formula = afl_formula(r, k, n).unwrap();
        ensure(chi == formula, || format!("r={r} k={k} n={n}: chi={chi}, formula={formula}"))?;
    }
    Ok(format!("{} cells", cells.len()))
}

fn criterion_1() -> Outcome {
    formula_grid(&afl_cells(), false)
}

fn criterion_2() -> Outcome {
    let cells: Vec<_> = afl_cells().into_iter().filter(|&(r, _, _)| r <= 3).collect();
    formula_grid(&cells, true)
}

fn criterion_3() -> Outcome {
    for n in [8, 10] {
        let family = filter_s_stable(&k_subsets(n, 2).unwrap(), 3).unwrap();
        let h = build_kneser(&family, 4).unwrap();
        let chi = exact(&h)?;
        let expected = (n - 4).div_ceil(3);
        ensure(chi == expected, || format!("n={n}: chi={chi}, expected {expected}"))?;
    }
    Ok("n in {8, 10}".into())
}

fn cycle5() -> SetSystem {
    SetSystem::from_lists(5, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 1]]).unwrap()
}

fn criterion_4() -> Outcome {
    let f = cycle5();
    let cd = colorability_defect(&f, 2).unwrap().value;
    let stable = filter_s_stable(&f, 2).unwrap();
    let chi = exact(&build_kneser(&stable, 2).unwrap())?;
    ensure(cd == 1 && chi == 0, || format!("cd={cd}, chi={chi}"))?;
    Ok("cd=1, chi=0".into())
}

/// `n - max Σ|A_i|` over all `(r+1)^n` assignments.
fn defect_oracle(f: &SetSystem, r: usize) -> usize {
    let n = f.n();
    let mut best = 0;
    for code in 0..(r + 1).pow(n as u32) {
        let mut parts = vec![0u64; r];
        let mut c = code;
        for e in 0..n {
            let slot = c % (r + 1);
            c /= r + 1;
            if slot < r {
                parts[slot] |= 1 << e;
            }
        }
        if parts.iter().all(|&p| !f.has_member_within(p)) {
            best = best.max(parts.iter().map(|p| p.count_ones() as usize).sum());
        }
    }
    n - best
}

fn defect_families() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 2..=4 {
        for k in 1..=3 {
            for n in k..=10 {
                out.push((r, k, n));
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut oracle_checks = 0;
    for (r, k, n) in defect_families() {
        let f = k_subsets(n, k).unwrap();
        let w = colorability_defect(&f, r).unwrap();
        let expected = n.saturating_sub(r * (k - 1));
        ensure(w.value == expected, || format!("r={r} k={k} n={n}: cd={}, expected {expected}", w.value))?;
        ensure(w.is_valid_for(&f), || format!("r={r} k={k} n={n}: invalid witness"))?;
        if n <= 8 {
            let o = defect_oracle(&f, r);
            ensure(o == w.value, || format!("r={r} k={k} n={n}: oracle {o}, search {}", w.value))?;
            oracle_checks += 1;
        }
    }
    Ok(format!("{} families, {oracle_checks} oracle checks", defect_families().len()))
}

fn random_antichain(rng: &mut ChaCha8Rng) -> SetSystem {
    let n = rng.gen_range(3..=9);
    let count = rng.gen_range(1..=8);
    let masks: Vec<u64> = (0..count)
        .map(|_| {
            let size = rng.gen_range(2..=n.min(4));
            let mut m = 0u64;
            while (m.count_ones() as usize) < size {
                m |= 1 << rng.gen_range(0..n);
            }
            m
        })
        .collect();
    inclusion_minimal(&SetSystem::from_masks(n, masks).unwrap())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_697a);
    for trial in 0..200 {
        let f = random_antichain(&mut rng);
        for r in [2, 3] {
            let bound = colorability_defect(&f, r).unwrap().value.div_ceil(r - 1);
            let chi = exact(&build_kneser(&f, r).unwrap())?;
            ensure(bound <= chi, || format!("trial {trial}, r={r}: bound {bound} > chi {chi} for {:?}", f.to_lists()))?;
            if r == 3 {
                let stable = filter_s_stable(&f, 2).unwrap();
                let chi_s = exact(&build_kneser(&stable, 3).unwrap())?;
                ensure(bound <= chi_s, || {
                    format!("trial {trial}: bound {bound} > stable chi {chi_s} for {:?}", f.to_lists())
                })?;
            }
        }
    }
    Ok("200 antichains, no violations".into())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Colorful partitions of one support, counted by brute force over block labelings.
fn window_oracle(r: usize, d: usize) -> usize {
    let m = tverberg_support_size(r, d);
    let mut count = 0;
    for code in 0..r.pow(m as u32) {
        let labels: Vec<usize> = (0..m).map(|i| code / r.pow(i as u32) % r).collect();
        let windows_ok = (0..=d).all(|w| {
            let start = (r - 1) * w;
            let mut seen = vec![false; r];
            labels[start..start + r].iter().all(|&b| !std::mem::replace(&mut seen[b], true))
        });
        if windows_ok {
            count += 1;
        }
    }
    // Every valid labeling uses all r blocks; divide out the r! relabelings.
    count / factorial(r)
}

fn criterion_7() -> Outcome {
    let mut detail = Vec::new();
    for (r, d) in [(2, 1), (2, 2), (3, 1)] {
        let count = (r - 1) * (d + 1) + 2;
        let (config, base) = validated_stretched_config(d, count, r, &BigInt::from(2)).map_err(|e| e.to_string())?;
        let report = verify_colorful_property(&config, r).unwrap();
        ensure(report.holds, || format!("r={r} d={d}: occurring and colorful sets differ"))?;
        let per_support = window_oracle(r, d);
        ensure(per_support == factorial(r - 1).pow(d as u32), || {
            format!("r={r} d={d}: oracle per-support count {per_support}")
        })?;
        let expected = binomial(count, tverberg_support_size(r, d)) * per_support;
        ensure(report.colorful == expected && report.occurring == expected, || {
            format!("r={r} d={d}: colorful {}, occurring {}, oracle {expected}", report.colorful, report.occurring)
        })?;
        detail.push(format!("(r={r},d={d}): {expected} partitions, base {base}"));
    }
    Ok(detail.join("; "))
}

fn criterion_8() -> Outcome {
    let mut families: Vec<(usize, SetSystem)> = defect_families()
        .into_iter()
        .map(|(r, k, n)| (r, k_subsets(n, k).unwrap()))
        .collect();
    families.push((2, cycle5()));
    let mut tuples = 0;
    for (i, (r, f)) in families.iter().enumerate() {
        let report = cd_le_tcd_check(f, *r, 20, 0x7463_6400 + i as u64).map_err(|e| e.to_string())?;
        ensure(report.passed, || format!("{:?} r={r}: {report:?}", f.to_lists()))?;
        tuples += report.checked_tuples;
    }
    Ok(format!("{} families, {tuples} face tuples checked", families.len()))
}

fn criterion_9() -> Outcome {
    for (r, c) in [(2, 2), (2, 3), (3, 2)] {
        let n = (r - 1) * (c - 1) + 1;
        let h = Hypergraph::complete(n, r).unwrap();
        let b = box_complex(&h, BoxQuantifier::AtMostOnce).unwrap();
        let dj = deleted_join(&SimplicialComplex::simplex(n).unwrap(), r, 2).unwrap();
        ensure(b.f_vector() == dj.f_vector(), || {
            format!("r={r} c={c}: f-vectors {:?} vs {:?}", b.f_vector(), dj.f_vector())
        })?;
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
            let betti = betti_numbers(&b, field).betti;
            let top = betti.len() - 1;
            ensure(betti[top] > 0 && betti[..top].iter().all(|&x| x == 0), || {
                format!("r={r} c={c}: betti over {field} = {betti:?}")
            })?;
        }
        let bound = equivariant_chi_bound(&h, true).unwrap().value;
        let chi = exact(&h)?;
        ensure(bound == c && chi == c, || format!("r={r} c={c}: bound {bound}, chi {chi}"))?;
    }
    Ok("(2,2), (2,3), (3,2)".into())
}

fn criterion_10() -> Outcome {
    for (r, k, n) in afl_cells() {
        let family = k_subsets(n, k).unwrap();
        let h = build_kneser(&family, r).unwrap();
        let coloring = greedy_coloring(r, k, n).unwrap();
        let t = afl_formula(r, k, n).unwrap();
        ensure(is_proper(&h, &coloring).unwrap(), || format!("r={r} k={k} n={n}: improper"))?;
        ensure(coloring.num_colors() == t, || {
            format!("r={r} k={k} n={n}: {} colors, formula {t}", coloring.num_colors())
        })?;
        let stable_idx: Vec<usize> = family
            .sets()
            .iter()
            .enumerate()
            .filter(|(_, &s)| kneser_core::setsystem::is_s_stable(n, s, 2))
            .map(|(i, _)| i)
            .collect();
        let sub = h.induced(&stable_idx).unwrap();
        let stable_h = build_kneser(&filter_s_stable(&family, 2).unwrap(), r).unwrap();
        ensure(sub.hyperedges() == stable_h.hyperedges(), || format!("r={r} k={k} n={n}: stable mismatch"))?;
        ensure(is_proper(&sub, &coloring.restrict(&stable_idx)).unwrap(), || {
            format!("r={r} k={k} n={n}: restriction improper")
        })?;
    }
    Ok(format!("{} cells", afl_cells().len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 exact chi of KG^r(k,n) equals the closed formula", criterion_1),
        ("2 exact chi of the 2-stable subhypergraph equals the formula", criterion_2),
        ("3 exact chi of KG^4(2,n)_3-stab equals ceil((n-4)/3)", criterion_3),
        ("4 five-cycle family: cd^2 = 1 and stable chi = 0", criterion_4),
        ("5 colorability defect of k-subsets matches n - r(k-1) and the exhaustive oracle", criterion_5),
        ("6 defect bound below exact chi on random antichains", criterion_6),
        ("7 occurring Tverberg partitions are exactly the colorful ones", criterion_7),
        ("8 affine certificates reach the colorability defect", criterion_8),
        ("9 box complex of the complete hypergraph", criterion_9),
        ("10 block coloring is optimal and stays proper on stable sets", criterion_10),
    ];
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (name, run) in criteria {
        let id = name.split(' ').next().unwrap();
        if filter.as_deref().is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{detail}] ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
