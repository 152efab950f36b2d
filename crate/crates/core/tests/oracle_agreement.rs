use std::sync::Arc;

use matsemi_core::finring::{mat_inverse_scan, sum_of_units_decompose, units, MatrixRingView, Pool};
use matsemi_core::maps::{is_additive, is_multiplicative};
use matsemi_core::search::{EnumerationQuery, Enumerator, FilterSet};
use matsemi_core::{RingSpec, RingTable, DEFAULT_SIZE_CAP};
use matsemi_oracle::{for_each_function, is_multiplicative as oracle_mult, multiplicative_maps, Mat2, Tables};

fn ring(spec: &str) -> Arc<RingTable> {
    spec.parse::<RingSpec>().unwrap().build(DEFAULT_SIZE_CAP).unwrap()
}

fn oracle(spec: &str) -> Tables {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["zmod", n] => Tables::zmod(n.parse().unwrap()),
        ["gauss", n] => Tables::gauss(n.parse().unwrap()),
        ["mat", "2", rest @ ..] => Tables::mat2(&oracle(&rest.join(":"))),
        _ => panic!("no oracle for {spec}"),
    }
}

const SMALL: &[&str] = &[
    "zmod:1", "zmod:2", "zmod:3", "zmod:4", "zmod:5", "zmod:6", "zmod:7", "zmod:8", "gauss:2", "gauss:3",
    "mat:2:zmod:2", "mat:2:zmod:3", "mat:2:zmod:4", "mat:2:gauss:2",
];

#[test]
fn cayley_tables_match() {
    for spec in SMALL {
        let (r, t) = (ring(spec), oracle(spec));
        assert_eq!(r.size(), t.n, "{spec}");
        for x in r.elements() {
            for y in r.elements() {
                assert_eq!(r.add(x, y), t.add(x, y), "{spec}: {x} + {y}");
                assert_eq!(r.mul(x, y), t.mul(x, y), "{spec}: {x} * {y}");
            }
        }
        assert_eq!((r.zero(), r.one()), (t.zero(), t.one()), "{spec}");
    }
}

#[test]
fn large_matrix_ring_matches_on_rows() {
    let base = Tables::gauss(3);
    let m = Mat2::new(&base);
    let r = ring("mat:2:gauss:3");
    assert_eq!(r.size() as u32, m.size());
    // Every product with a few fixed rows, and a stride through the rest.
    for x in [0, 1, 2, 100, 4000, 6560] {
        for y in r.elements() {
            assert_eq!(r.mul(x, y), m.mul(x, y));
            assert_eq!(r.add(y, x), m.add(y, x));
        }
    }
    for x in r.elements().step_by(97) {
        for y in r.elements().step_by(89) {
            assert_eq!(r.mul(x, y), m.mul(x, y));
        }
    }
}

#[test]
fn units_match() {
    for spec in SMALL {
        assert_eq!(units(&ring(spec)), oracle(spec).units(), "{spec}");
    }
}

#[test]
fn matrix_inverse_scan_matches() {
    for base in ["zmod:2", "zmod:3", "zmod:4", "gauss:2"] {
        let (b, t) = (ring(base), oracle(base));
        let q = b.size() as u32;
        for raw in 0..q.pow(4) {
            let e = [raw / (q * q * q), (raw / (q * q)) % q, (raw / q) % q, raw % q];
            let found = mat_inverse_scan(&b, 2, &e, DEFAULT_SIZE_CAP).unwrap().is_some();
            assert_eq!(found, matsemi_oracle::mat2_invertible(&t, e), "{base} {e:?}");
        }
    }
}

fn enumerated(dom: &str, cod: &str, filters: FilterSet) -> Vec<Vec<u32>> {
    let e = Enumerator::new(ring(dom), ring(cod), filters).unwrap();
    let out = e.run(u64::MAX - 1, None);
    assert!(out.complete && !out.truncated);
    out.maps
}

#[test]
fn enumeration_matches_brute_force() {
    let pairs = [
        ("zmod:1", "zmod:3"),
        ("zmod:3", "zmod:1"),
        ("zmod:2", "zmod:2"),
        ("zmod:4", "zmod:4"),
        ("zmod:6", "zmod:6"),
        ("zmod:7", "zmod:7"),
        ("zmod:8", "zmod:4"),
        ("zmod:4", "zmod:8"),
        ("zmod:5", "zmod:6"),
        ("gauss:2", "zmod:4"),
        ("gauss:3", "zmod:3"),
        ("zmod:3", "gauss:3"),
        ("gauss:2", "gauss:2"),
        ("mat:2:zmod:2", "zmod:2"),
    ];
    for (d, c) in pairs {
        let want = multiplicative_maps(&oracle(d), &oracle(c));
        assert_eq!(enumerated(d, c, FilterSet::default()), want, "{d} -> {c}");
    }
}

#[test]
fn filtered_enumeration_matches_brute_force() {
    let (dt, ct) = (oracle("mat:2:zmod:2"), oracle("zmod:2"));
    let v = MatrixRingView::of_2x2(&ring("mat:2:zmod:2")).unwrap();
    let (e11, e22) = (v.unit(0, 0), v.unit(1, 1));
    let mut corner = Vec::new();
    let mut unital = Vec::new();
    for_each_function(dt.n, ct.n, |img| {
        if oracle_mult(&dt, &ct, img) {
            if img[1] == ct.add(img[e11 as usize], img[e22 as usize]) {
                corner.push(img.to_vec());
            }
            if img[1] == 1 {
                unital.push(img.to_vec());
            }
        }
    });
    let f = |unital, corner_relation| FilterSet { unital, corner_relation, ..Default::default() };
    assert_eq!(enumerated("mat:2:zmod:2", "zmod:2", f(false, true)), corner);
    assert_eq!(enumerated("mat:2:zmod:2", "zmod:2", f(true, false)), unital);
    let both: Vec<_> = corner.iter().filter(|m| unital.contains(m)).cloned().collect();
    assert_eq!(enumerated("mat:2:zmod:2", "zmod:2", f(true, true)), both);
    // The same answer as a query.
    let mut q = EnumerationQuery::new("mat:2:zmod:2".parse().unwrap(), "zmod:2".parse().unwrap());
    q.filters.corner_relation = true;
    let e = Enumerator::from_query(&q, DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(e.run(q.limit, None).maps, corner);
}

#[test]
fn star_filter_matches_brute_force() {
    // conjugation a + bi -> a - bi at index a + 3b
    let conj = |x: u32| x % 3 + ((3 - x / 3) % 3) * 3;
    let (dt, ct) = (oracle("gauss:3"), oracle("gauss:3"));
    // Brute force over the 9^9 self-maps is too slow; restrict to bijections
    // fixing 0 and 1, which every multiplicative automorphism does.
    let mut want = Vec::new();
    let rest: Vec<u32> = (2..9).collect();
    permutations(&rest, &mut |p| {
        let mut img = vec![0, 1];
        img.extend_from_slice(p);
        if oracle_mult(&dt, &ct, &img) && (0..9).all(|x| img[conj(x) as usize] == conj(img[x as usize])) {
            want.push(img);
        }
    });
    let f = FilterSet { star: true, injective: true, unital: true, ..Default::default() };
    assert_eq!(enumerated("gauss:3", "gauss:3", f), want);
}

fn permutations(items: &[u32], f: &mut impl FnMut(&[u32])) {
    fn go(xs: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
        if k == xs.len() {
            f(xs);
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            go(xs, k + 1, f);
            xs.swap(k, i);
        }
    }
    let mut xs = items.to_vec();
    go(&mut xs, 0, f);
}

#[test]
fn decompositions_match_reachable_sums() {
    for spec in ["zmod:4", "zmod:6", "gauss:3", "mat:2:zmod:2"] {
        let (r, t) = (ring(spec), oracle(spec));
        let pool = t.units();
        for kmax in 1..=3 {
            let reach = matsemi_oracle::sums_of_pool(&t, &pool, kmax);
            for x in r.elements() {
                let found = sum_of_units_decompose(&r, x, kmax, Pool::Units).unwrap();
                assert_eq!(found.is_some(), reach.contains(&x), "{spec} {x} k={kmax}");
                if let Some(s) = found {
                    assert!(s.len() <= kmax && s.iter().all(|u| pool.contains(u)));
                    assert_eq!(s.iter().fold(t.zero(), |acc, &u| t.add(acc, u)), x);
                }
            }
        }
    }
}

#[test]
fn map_predicates_match_on_every_self_map_of_z4() {
    let (r, t) = (ring("zmod:4"), oracle("zmod:4"));
    for_each_function(4, 4, |img| {
        let m = matsemi_core::MapTable::new(r.clone(), r.clone(), img.to_vec()).unwrap();
        assert_eq!(is_multiplicative(&m).pass, oracle_mult(&t, &t, img));
        assert_eq!(is_additive(&m).pass, matsemi_oracle::is_additive(&t, &t, img));
    });
}
