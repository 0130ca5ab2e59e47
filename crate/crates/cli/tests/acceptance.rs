//! Acceptance criteria 1 to 11, one printed line per criterion.

use std::process::Command;

use ibdouble::autgroup::{component_separation_check, der_decomposition_check, gamma_lifts, sample_family_elements};
use ibdouble::chevalley::{build_simple, SimpleLieAlgebra};
use ibdouble::diagaut::{diagram_automorphism_group, ib_structure_check, recover_extended_cartan, DiagramAutomorphism};
use ibdouble::doubles::{build_g_eps, build_g_eps_plus, build_ib, build_ib_bar, eta_iso};
use ibdouble::liealg::{center, check_jacobi, derivations, derived_subalgebra, AlgebraMap};
use ibdouble::linalg::span_dim;
use ibdouble::looptrunc::{gamma_eps, lift_to_loop, semilinearity_lambda, theta_retraction};
use ibdouble::rootsys::RootSystem;
use ibdouble::scalar::q;
use ibdouble::{Error, Q};
use num_traits::One;

type Outcome = Result<String, String>;

fn simple(t: &str) -> SimpleLieAlgebra<Q> {
    build_simple(&RootSystem::from_type_str(t).expect("type")).expect("Chevalley basis")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Recomputes `M[e_i, e_j] = [M e_i, M e_j]` on every basis pair and the rank of `M`.
fn independent_isomorphism(m: &AlgebraMap<Q>) -> bool {
    let (src, tgt) = (m.source(), m.target());
    if m.matrix().rank() != src.dim() || src.dim() != tgt.dim() {
        return false;
    }
    let images: Vec<Vec<Q>> = (0..src.dim()).map(|i| m.apply(&src.basis_vector(i)).unwrap()).collect();
    (0..src.dim()).all(|i| {
        (i + 1..src.dim()).all(|j| {
            let lhs = m.apply(&src.bracket(&src.basis_vector(i), &src.basis_vector(j)).unwrap()).unwrap();
            lhs == tgt.bracket(&images[i], &images[j]).unwrap()
        })
    })
}

/// Diagram automorphisms found by trying every permutation of the nodes.
fn brute_force_automorphisms(a: &[Vec<i64>]) -> usize {
    fn rec(a: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> usize {
        let n = a.len();
        let k = perm.len();
        if k == n {
            return 1;
        }
        let mut count = 0;
        for c in 0..n {
            if used[c] {
                continue;
            }
            perm.push(c);
            let ok = (0..=k).all(|i| a[i][k] == a[perm[i]][c] && a[k][i] == a[c][perm[i]]);
            if ok {
                used[c] = true;
                count += rec(a, perm, used);
                used[c] = false;
            }
            perm.pop();
        }
        count
    }
    rec(a, &mut Vec::new(), &mut vec![false; a.len()])
}

fn eps_list() -> Vec<Q> {
    vec![q(0, 1), q(1, 1), q(1, 2), q(-2, 1)]
}

fn criterion_1() -> Outcome {
    let types = ["A1", "A2", "B2", "C3", "G2", "D4"];
    for t in types {
        let g = simple(t);
        for eps in eps_list() {
            let gp = build_g_eps_plus(&g, eps.clone()).map_err(|e| format!("{t}: {e}"))?;
            let ge = build_g_eps(&g, eps.clone()).map_err(|e| format!("{t}: {e}"))?;
            check(check_jacobi(gp.algebra()).is_ok(), || format!("{t}: g_eps_plus fails Jacobi at {eps}"))?;
            check(check_jacobi(ge.algebra()).is_ok(), || format!("{t}: g_eps fails Jacobi at {eps}"))?;
            check(gp.dim() == g.dim() + g.rank() && ge.dim() == g.dim(), || format!("{t}: wrong dimensions"))?;
        }
    }
    Ok(format!("Jacobi holds for both families at 4 values of eps on {}", types.join(" ")))
}

fn criterion_2() -> Outcome {
    let types = ["A1", "A2", "B2", "C3", "G2", "D4"];
    for t in types {
        let eta = eta_iso(&simple(t)).map_err(|e| format!("{t}: {e}"))?;
        check(eta.is_verified_isomorphism() && independent_isomorphism(&eta), || format!("{t}: eta is not an isomorphism"))?;
    }
    Ok(format!("eta verified and rechecked on {}", types.join(" ")))
}

fn criterion_3() -> Outcome {
    let types = ["A1", "A2", "B2", "G2"];
    for t in types {
        let g = simple(t);
        for eps in [q(0, 1), q(1, 1), q(3, 5)] {
            let gm = gamma_eps(&g, &eps).map_err(|e| format!("{t}: {e}"))?;
            let th = theta_retraction(&g, &eps).map_err(|e| format!("{t}: {e}"))?;
            check(independent_isomorphism(&gm), || format!("{t}: gamma at {eps} is not an isomorphism"))?;
            let round = th.compose(&gm).map_err(|e| e.to_string())?;
            check(round.matrix().is_identity(), || format!("{t}: theta o gamma != id at {eps}"))?;
        }
    }
    Ok(format!("gamma is an isomorphism and theta o gamma = id for eps in 0, 1, 3/5 on {}", types.join(" ")))
}

fn criterion_4() -> Outcome {
    let types = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"];
    for (n, t) in types.iter().enumerate() {
        let g = simple(t);
        let ib = build_ib(&g).map_err(|e| e.to_string())?;
        let s = ib_structure_check(&ib, 20, n as u64).map_err(|e| format!("{t}: {e}"))?;
        check(s.holds() && s.samples == 20 && s.samples_rejected == 20, || format!("{t}: {s:?}"))?;
        check(span_dim(&center(ib.algebra())) == g.rank(), || format!("{t}: center dimension"))?;
        check(span_dim(&derived_subalgebra(ib.algebra())) == g.dim(), || format!("{t}: derived dimension"))?;
    }
    Ok(format!("center = rank, derived = dim g, weights and nilpotency hold on {}", types.join(" ")))
}

fn criterion_5() -> Outcome {
    let marks: [(&str, &[i64]); 7] = [
        ("A2", &[1, 1, 1]),
        ("A3", &[1, 1, 1, 1]),
        ("B2", &[1, 1, 2]),
        ("B3", &[1, 1, 2, 2]),
        ("C3", &[1, 2, 2, 1]),
        ("G2", &[1, 3, 2]),
        ("D4", &[1, 1, 2, 1, 1]),
    ];
    for (t, m) in marks {
        let g = simple(t);
        let ib = build_ib(&g).map_err(|e| e.to_string())?;
        let rec = recover_extended_cartan(&ib).map_err(|e| format!("{t}: {e}"))?;
        check(rec.from_strings == rec.from_ad, || format!("{t}: the two paths disagree"))?;
        check(rec.from_strings == g.roots().extended_cartan(), || format!("{t}: differs from the root system"))?;
        let kills_marks = rec.from_strings.iter().all(|row| row.iter().zip(m).map(|(a, b)| a * b).sum::<i64>() == 0);
        let diagonal = (0..m.len()).all(|i| rec.from_strings[i][i] == 2);
        check(kills_marks && diagonal, || format!("{t}: recovered matrix is not of affine type"))?;
    }
    let a1 = build_ib(&simple("A1")).map_err(|e| e.to_string())?;
    check(matches!(recover_extended_cartan(&a1), Err(Error::NotApplicable(_))), || "A1 was not refused".into())?;
    Ok("both paths agree with the root system on A2 A3 B2 B3 C3 G2 D4; A1 refused".into())
}

const DIAGRAM_ORDERS: [(&str, usize); 10] = [
    ("A1", 2),
    ("A2", 6),
    ("A3", 8),
    ("B3", 2),
    ("C2", 2),
    ("D4", 24),
    ("D5", 8),
    ("G2", 1),
    ("F4", 1),
    ("E6", 6),
];

fn criterion_6() -> Outcome {
    for (t, order) in DIAGRAM_ORDERS {
        let rs = RootSystem::from_type_str(t).map_err(|e| e.to_string())?;
        let group = diagram_automorphism_group(rs.extended_cartan());
        check(group.len() == order, || format!("{t}: {} automorphisms, expected {order}", group.len()))?;
        let brute = brute_force_automorphisms(rs.extended_cartan());
        check(brute == order, || format!("{t}: permutation search finds {brute}"))?;
    }
    Ok("all 10 group orders match, confirmed by exhaustive permutation search".into())
}

fn criterion_7() -> Outcome {
    for (t, order) in DIAGRAM_ORDERS.iter().filter(|(t, _)| !matches!(*t, "F4" | "E6" | "D5")) {
        let ib = build_ib(&simple(t)).map_err(|e| e.to_string())?;
        let lifts = gamma_lifts(&ib).map_err(|e| format!("{t}: {e}"))?;
        check(lifts.len() == *order, || format!("{t}: {} lifts", lifts.len()))?;
        for l in &lifts {
            check(l.is_verified_isomorphism() && independent_isomorphism(l), || format!("{t}: a lift is not an automorphism"))?;
        }
        let distinct = (0..lifts.len()).all(|i| (i + 1..lifts.len()).all(|j| lifts[i].matrix() != lifts[j].matrix()));
        check(distinct, || format!("{t}: lifting is not injective"))?;
    }
    let ib = build_ib(&simple("A2")).map_err(|e| e.to_string())?;
    let group = diagram_automorphism_group(ib.source_simple().roots().extended_cartan());
    let lifts = gamma_lifts(&ib).map_err(|e| e.to_string())?;
    let cycle = DiagramAutomorphism::new(vec![1, 2, 0]).map_err(|e| e.to_string())?;
    let idx = group.iter().position(|s| *s == cycle).ok_or("A2 cycle missing")?;
    let l = &lifts[idx];
    let order3 = l.power(3).map_err(|e| e.to_string())?.is_identity() && !l.is_identity();
    check(order3, || "A2 cycle lift does not have order 3".into())?;
    Ok("lifts verified and injective on A1 A2 A3 B3 C2 D4 G2; A2 cycle lift has order 3".into())
}

fn criterion_8() -> Outcome {
    let mut rows = 0;
    for t in ["A1", "A2", "A3", "D4"] {
        let g = simple(t);
        for s in diagram_automorphism_group(g.roots().extended_cartan()) {
            let lift = lift_to_loop(&g, &s, 2).map_err(|e| format!("{t} {s}: {e}"))?;
            let lambda = semilinearity_lambda(&lift).map_err(|e| format!("{t} {s}: {e}"))?;
            check(lambda == Q::one() || lambda == -Q::one(), || format!("{t} {s}: lambda = {lambda}"))?;
            if s.order() % 2 == 1 {
                check(lambda == Q::one(), || format!("{t} {s}: odd order but lambda = {lambda}"))?;
            }
            if t == "A2" && s.order() == 3 {
                check(lambda == Q::one(), || format!("A2 cycle {s}: lambda = {lambda}"))?;
            }
            rows += 1;
        }
    }
    Ok(format!("lambda in {{1, -1}} for {rows} lifts on A1 A2 A3 D4; 1 for the A2 cycles and odd orders"))
}

fn criterion_9() -> Outcome {
    // (type, dim g, rank)
    let cases = [("A1", 3, 1), ("A2", 8, 2), ("B2", 10, 2), ("C3", 21, 3)];
    for (t, dim, r) in cases {
        let g = simple(t);
        let ib = build_ib(&g).map_err(|e| e.to_string())?;
        let rep = der_decomposition_check(&ib, 24).map_err(|e| format!("{t}: {e}"))?;
        let expected = 1 + dim + r * r;
        check(rep.der_dim == expected && rep.holds(), || format!("{t}: dim Der = {}, expected {expected}", rep.der_dim))?;
        let raw = derivations(ib.algebra(), 24).map_err(|e| e.to_string())?.len();
        check(raw == expected, || format!("{t}: raw derivation solve gives {raw}"))?;
        if t != "C3" {
            let bar = build_ib_bar(&g).map_err(|e| e.to_string())?;
            let rb = der_decomposition_check(&bar, 24).map_err(|e| format!("{t}: {e}"))?;
            check(rb.der_dim == 1 + dim && rb.holds(), || format!("{t}: dim Der(bar) = {}", rb.der_dim))?;
        }
    }
    Ok("Der(Ib) = 5, 13, 15, 31 and Der(Ib_bar) = 4, 9, 11; families independent and spanning".into())
}

fn criterion_10() -> Outcome {
    let types = ["A1", "A2", "A3", "B2", "G2"];
    for (n, t) in types.iter().enumerate() {
        let ib = build_ib(&simple(t)).map_err(|e| e.to_string())?;
        let lifts = gamma_lifts(&ib).map_err(|e| e.to_string())?;
        let samples = sample_family_elements(&ib, 5, 100 + n as u64).map_err(|e| e.to_string())?;
        check(samples.len() >= 20, || format!("{t}: only {} samples", samples.len()))?;
        let rep = component_separation_check(&ib, &lifts, &samples).map_err(|e| e.to_string())?;
        check(rep.holds(), || format!("{t}: separation fails"))?;
    }
    Ok(format!("20 family samples act trivially and p is injective on the lifts for {}", types.join(" ")))
}

fn criterion_11() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ibdouble"))
            .args(["verify", "A2", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check(a.status.code() == Some(0), || format!("exit code {:?}", a.status.code()))?;
    check(a.stdout == b.stdout, || "the two reports differ".into())?;
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    check(v["schema"] == 1 && v["status"] == "pass", || "unexpected report header".into())?;
    Ok(format!("two runs produce identical {}-byte reports", a.stdout.len()))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(msg) => println!("criterion {n:>2}: pass  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL  {msg}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
