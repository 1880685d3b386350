use hypercx_core::complexes::{self, disjoint_union, wedge, HyperplaneComplexKind};
use hypercx_core::graph::Graph;
use hypercx_core::homology::{
    boundary_matrices, euler_characteristic, homology, smith_normal_form, IntegerMatrix,
};
use hypercx_core::qm::generate::{self, RandomSpec};
use hypercx_core::SimplicialComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Rank over the field with `p` elements, or over the rationals when `p == 0`
/// (by fraction-free elimination).
fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let norm = |x: i128| if p == 0 { x } else { x.rem_euclid(p as i128) };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| norm(a[r][c]) != 0) else { continue };
        a.swap(rank, pr);
        let piv = norm(a[rank][c]);
        for r in 0..rows {
            if r == rank || norm(a[r][c]) == 0 {
                continue;
            }
            let f = norm(a[r][c]);
            let pivot_row = a[rank].clone();
            for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                *x = norm(piv * *x - f * y);
            }
            if p == 0 {
                let g = a[r].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    a[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn to_i64(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    m.to_dense().iter().map(|r| r.iter().map(|x| i64::try_from(x.clone()).unwrap()).collect()).collect()
}

fn rp2() -> SimplicialComplex {
    let faces = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ];
    SimplicialComplex::from_faces(faces.iter().map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
}

#[test]
fn projective_plane_torsion_from_field_ranks() {
    let ds = boundary_matrices(&rp2(), 2).unwrap();
    let (n1, d1, d2) = (ds[1].cols(), to_i64(&ds[1]), to_i64(&ds[2]));
    let b1_q = n1 - rank_mod(&d1, 0) - rank_mod(&d2, 0);
    let b1_f2 = n1 - rank_mod(&d1, 2) - rank_mod(&d2, 2);
    // over Q nothing, over F2 one class: H1 torsion is a single Z/2^k, and F3 sees none
    assert_eq!((b1_q, b1_f2), (0, 1));
    assert_eq!(n1 - rank_mod(&d1, 3) - rank_mod(&d2, 3), 0);
    let h = homology(&rp2(), false).unwrap();
    assert_eq!(h.groups[1].torsion, vec![BigInt::from(2)]);
}

/// k-th determinantal divisor: gcd of all k x k minors.
fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<BigInt> {
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::from(1);
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let s = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                s * &m[0][j] * det(&minor)
            })
            .sum()
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    }
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_matches_determinantal_divisors(
        rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
        let s = smith_normal_form(&IntegerMatrix::from_i64(&m));
        let dd = determinantal_divisors(&m);
        prop_assert_eq!(s.rank, dd.len());
        let mut prev = BigInt::from(1);
        for (i, d) in dd.iter().enumerate() {
            prop_assert_eq!(&s.invariant_factors[i], &(d / &prev));
            prev = d.clone();
        }
        prop_assert!(s.invariant_factors.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn relabelling_and_face_order_do_not_matter(faces in proptest::collection::vec(proptest::collection::btree_set(0u8..7, 1..4), 1..8)) {
        let k = SimplicialComplex::from_faces(faces.iter().map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
        let renamed = k.relabel(|v| format!("x{}", 6 - v.parse::<u8>().unwrap()));
        let reversed = SimplicialComplex::from_faces(faces.iter().rev().map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
        let h = homology(&k, false).unwrap();
        prop_assert_eq!(&h, &homology(&renamed, false).unwrap());
        prop_assert_eq!(&h, &homology(&reversed, false).unwrap());
        prop_assert_eq!(h.euler_characteristic(), euler_characteristic(&k).unwrap());
        let ds = boundary_matrices(&k, 3).unwrap();
        for i in 1..ds.len() - 1 {
            prop_assert!(ds[i].mul(&ds[i + 1]).is_zero());
        }
    }
}

fn corpus_complexes() -> Vec<SimplicialComplex> {
    let mut out = Vec::new();
    let mut graphs = vec![generate::hamming(&[2, 3]).unwrap(), generate::triangle_chain(2).unwrap()];
    graphs.extend((0..8).map(|seed| generate::random(&RandomSpec { seed, steps: 4, max_vertices: 50, ..RandomSpec::default() }).unwrap()));
    for x in &graphs {
        for kind in [HyperplaneComplexKind::Contact, HyperplaneComplexKind::Crossing, HyperplaneComplexKind::Contiguity] {
            out.push(complexes::hyperplane_complex(x, kind).unwrap());
        }
        out.push(complexes::crossing_model(x).unwrap());
    }
    for n in 4..8 {
        out.push(complexes::join_complex(&Graph::cycle(n)).unwrap());
    }
    out.push(rp2());
    out
}

#[test]
fn euler_characteristic_matches_betti_numbers() {
    for k in corpus_complexes() {
        let h = homology(&k, false).unwrap();
        assert_eq!(h.euler_characteristic(), euler_characteristic(&k).unwrap(), "{k}");
    }
}

#[test]
fn wedges_and_unions_sum_homology() {
    let ks: Vec<SimplicialComplex> = corpus_complexes().into_iter().map(SimplicialComplex::with_least_basepoint).collect();
    for pair in ks.windows(2) {
        let w = wedge(pair).unwrap();
        let lhs = homology(&w, true).unwrap().trimmed();
        let rhs = homology(&pair[0], true).unwrap().direct_sum(&homology(&pair[1], true).unwrap()).unwrap().trimmed();
        assert_eq!(lhs, rhs);
        let u = homology(&disjoint_union(pair), false).unwrap().trimmed();
        let sum = homology(&pair[0], false).unwrap().direct_sum(&homology(&pair[1], false).unwrap()).unwrap().trimmed();
        assert_eq!(u, sum);
        assert_eq!(u.groups[0].betti, pair[0].component_count() + pair[1].component_count());
    }
}
