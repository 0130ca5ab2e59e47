use ibdouble::chevalley::{build_simple, killing_form};
use ibdouble::linalg::Matrix;
use ibdouble::rootsys::RootSystem;
use ibdouble::scalar::q;
use ibdouble::Q;

const TYPES: [&str; 20] = [
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2",
    "A6",
];

/// Dimension of the simple algebra from the classification.
fn classified_dim(t: &str) -> usize {
    let l: usize = t[1..].parse().unwrap();
    match &t[..1] {
        "A" => l * (l + 2),
        "B" | "C" => l * (2 * l + 1),
        "D" => l * (2 * l - 1),
        _ => match t {
            "E6" => 78,
            "E7" => 133,
            "E8" => 248,
            "F4" => 52,
            "G2" => 14,
            _ => unreachable!(),
        },
    }
}

#[test]
fn root_counts_match_dimension_and_coxeter_number() {
    for t in TYPES {
        let rs = RootSystem::from_type_str(t).unwrap();
        let r = rs.rank();
        assert_eq!(r + 2 * rs.num_positive(), classified_dim(t), "{t}");
        let coxeter = rs.highest_root().height() as usize + 1;
        assert_eq!(2 * rs.num_positive(), r * coxeter, "{t}");
        let mark_sum: i64 = rs.marks().iter().sum();
        assert_eq!(mark_sum as usize, coxeter, "{t}");
    }
}

#[test]
fn extended_cartan_is_affine() {
    for t in TYPES {
        let rs = RootSystem::from_type_str(t).unwrap();
        let a = rs.extended_cartan();
        let n = a.len();
        let m = Matrix::from_fn(n, n, |i, j| q(a[i][j], 1));
        assert_eq!(m.rank(), n - 1, "{t}");
        for drop in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
            let sub = Matrix::from_fn(n - 1, n - 1, |i, j| q(a[keep[i]][keep[j]], 1));
            assert_eq!(sub.rank(), n - 1, "{t} without node {drop}");
        }
    }
}

#[test]
fn chevalley_constants_follow_root_strings() {
    for t in ["A2", "B2", "C3", "G2"] {
        let rs = RootSystem::from_type_str(t).unwrap();
        let g = build_simple::<Q>(&rs).unwrap();
        let alg = g.algebra();
        let pos = rs.positive_roots();
        for a in pos {
            for b in pos {
                let sum = a.add(b);
                let (ia, ib) = (g.root_vector(a).unwrap(), g.root_vector(b).unwrap());
                let br = alg.bracket_basis(ia, ib);
                if !rs.is_root(&sum) {
                    assert!(br.is_empty(), "{t}: [e_{a}, e_{b}] should vanish");
                    continue;
                }
                let mut p = 0;
                while rs.is_root(&b.scaled_add(-(p + 1), a)) {
                    p += 1;
                }
                assert_eq!(br.len(), 1);
                let (k, c) = &br[0];
                assert_eq!(*k, g.root_vector(&sum).unwrap());
                assert!(*c == q(p + 1, 1) || *c == q(-(p + 1), 1), "{t}: N = {c}, p = {p}");
            }
            let h = alg.bracket_basis(g.root_vector(a).unwrap(), g.root_vector(&a.neg()).unwrap());
            let expected = g.coroot_vector(a);
            assert_eq!(h, &expected, "{t}: [e, f] for {a}");
        }
    }
}

#[test]
fn killing_form_is_nondegenerate() {
    for t in ["A1", "A2", "B2", "G2"] {
        let g = build_simple::<Q>(&RootSystem::from_type_str(t).unwrap()).unwrap();
        let k = killing_form(g.algebra());
        assert_eq!(k.rank(), g.dim(), "{t}");
        assert_eq!(k.transpose(), k);
    }
}
