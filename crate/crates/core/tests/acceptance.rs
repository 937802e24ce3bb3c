//! End-to-end checks of the whole pipeline. Runs as a plain program and
//! prints one line per criterion.

mod support;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use charcycle::cech::{
    cube_vertices, euler_characteristics, local_cohomology, local_cohomology_split, lyubeznik_table,
    origin_component, ring_cohomology, vertex_label, CubeSpec, Provenance,
};
use charcycle::conormal::{divisor_ideal, ConormalInput};
use charcycle::cycles::{lagrangian_components, localize, localize_cycle, zero_section, CharCycle, ConormalComponent, Strategy};
use charcycle::decompose::minimal_primes;
use charcycle::groebner::{is_groebner_basis, is_reduced_basis};
use charcycle::hilbert::{hilbert_series, multiplicity_along};
use charcycle::{Coeff, Ideal, Monomial, MonomialOrder, Polynomial, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracles::{coordinate_cycle, monomial_localization_cycle, standard_monomial_count};
use support::{
    cotangent, ideal, minors, multiset, poly, random_poly, random_squarefree, squarefree, vertex_of_digits,
    ORIGIN_MULTIPLICITIES,
};

fn coords(entries: &[&[usize]]) -> BTreeMap<Vec<usize>, u64> {
    entries.iter().map(|s| (s.to_vec(), 1)).collect()
}

fn conormal(ring: &std::sync::Arc<Ring>, base: &Ideal) -> CharCycle {
    let mut cc = CharCycle::zero(ring).unwrap();
    cc.add(ConormalComponent::conormal_of(ring, base).unwrap(), 1).unwrap();
    cc
}

fn first_localizations() {
    let t = Ring::split(&["x", "y", "z"], &["a", "b", "c"]).unwrap();
    let r = t.base().unwrap();
    let rx = localize_cycle(&zero_section(&t).unwrap(), &[poly(&r, "x")], Strategy::Iterative).unwrap();
    assert_eq!(coordinate_cycle(&rx).unwrap(), coords(&[&[], &[0]]));
    let my = localize_cycle(&conormal(&t, &ideal(&r, &["x"])), &[poly(&r, "y")], Strategy::Iterative).unwrap();
    assert_eq!(coordinate_cycle(&my).unwrap(), coords(&[&[0], &[0, 1]]));
}

fn pruning_examples() {
    let t = cotangent(2);
    let r = t.base().unwrap();
    let mut m = CharCycle::zero(&t).unwrap();
    for b in [["x1"].as_slice(), &["x2"], &["x1", "x2"]] {
        m.merge(&conormal(&t, &ideal(&r, b))).unwrap();
    }
    let res = local_cohomology(&m, &[poly(&r, "x2")], Provenance::Supplied).unwrap();
    assert_eq!(coordinate_cycle(&res.cohomology[0]).unwrap(), coords(&[&[1]]));
    assert!(res.cohomology[1].is_zero());

    let t = cotangent(1);
    let r = t.base().unwrap();
    let zero = zero_section(&t).unwrap();
    let vx = conormal(&t, &ideal(&r, &["x1"]));
    let mut m = zero.clone();
    m.merge(&vx).unwrap();
    let spec = CubeSpec::simple(&[poly(&r, "x1")]);
    let (h, _) = local_cohomology_split(&m, &[zero, vx.clone()], &spec).unwrap();
    assert_eq!(h, vec![vx.clone(), vx]);
    let unsplit = local_cohomology(&m, &[poly(&r, "x1")], Provenance::Supplied).unwrap();
    assert!(!unsplit.warnings.is_empty());
}

fn minors_pipeline() {
    let m = minors();
    let res = ring_cohomology(&m.cotangent, &m.gens).unwrap();
    type Row = (u32, &'static [&'static str], &'static [(&'static str, u64)]);
    let table: [Row; 8] = [
        (0b000, &["X"], &[]),
        (0b001, &["X", "A1", "D1"], &[]),
        (0b010, &["X", "A2", "D2"], &[]),
        (0b100, &["X", "A3", "D3"], &[]),
        (0b011, &["X", "A1", "A2", "B3", "C3", "D1", "D2", "F"], &[]),
        (0b101, &["X", "A1", "A3", "B2", "C2", "D1", "D3", "F"], &[]),
        (0b110, &["X", "A2", "A3", "B1", "C1", "D2", "D3", "F"], &[]),
        (
            0b111,
            &["X", "A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D2", "D3", "E", "F"],
            &[("F", 2)],
        ),
    ];
    for (alpha, labels, extra) in table {
        assert_eq!(m.labels(res.cube.vertex(alpha)), multiset(labels, extra), "{}", vertex_label(alpha));
    }
    for (alpha, c) in res.pruned.vertices() {
        let want = match alpha {
            0b011 => multiset(&["F"], &[]),
            0b111 => multiset(&["E"], &[]),
            _ => BTreeMap::new(),
        };
        assert_eq!(m.labels(c), want, "{}", vertex_label(alpha));
    }
    assert!(res.cohomology[0].is_zero() && res.cohomology[1].is_zero());
    assert_eq!(m.labels(&res.cohomology[2]), multiset(&["F"], &[]));
    assert_eq!(m.labels(&res.cohomology[3]), multiset(&["E"], &[]));
}

fn lyubeznik_numbers() {
    let m = minors();
    let table = lyubeznik_table(&m.cotangent, &m.gens).unwrap();
    let mut want = vec![vec![0u64; 5]; 5];
    want[0][3] = 1;
    want[2][4] = 1;
    want[4][4] = 1;
    assert_eq!(table.rows(), want.as_slice());

    let res = ring_cohomology(&m.cotangent, &m.gens).unwrap();
    let xs: Vec<Polynomial> = (0..6).map(|i| Polynomial::var(&m.base, i)).collect();
    let e = origin_component(&m.cotangent).unwrap();

    let start = Instant::now();
    let h3 = local_cohomology(&res.cohomology[3], &xs, Provenance::Trusted).unwrap();
    let h3_time = start.elapsed();
    assert_eq!(m.labels(&h3.cohomology[0]), multiset(&["E"], &[]));
    assert!(h3.cohomology[1..].iter().all(CharCycle::is_zero));
    assert!(h3_time < Duration::from_secs(60), "H^3 branch took {h3_time:?}");

    let spot: [(&str, u64); 10] = [
        ("14", 0),
        ("126", 3),
        ("456", 2),
        ("123456", 3),
        ("", 0),
        ("1", 0),
        ("12", 1),
        ("1456", 3),
        ("2345", 3),
        ("36", 0),
    ];
    let wanted: Vec<u32> = spot.iter().map(|(d, _)| vertex_of_digits(d)).collect();
    let start = Instant::now();
    let got = cube_vertices(&res.cohomology[2], &xs, &wanted).unwrap();
    assert!(start.elapsed() < Duration::from_secs(30 * 60));
    for (digits, mult) in spot {
        let table = ORIGIN_MULTIPLICITIES.iter().find(|(d, _)| *d == digits).unwrap().1;
        assert_eq!(mult, table, "x{digits}");
        assert_eq!(got[&vertex_of_digits(digits)].multiplicity(e.key()), mult, "x{digits}");
    }

    let h2 = local_cohomology(&res.cohomology[2], &xs, Provenance::Trusted).unwrap();
    for (digits, mult) in ORIGIN_MULTIPLICITIES {
        assert_eq!(h2.cube.vertex(vertex_of_digits(digits)).multiplicity(e.key()), mult, "x{digits}");
    }
    println!("  H^3 branch: {h3_time:.2?}");
}

fn property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = minors();

    // Euler characteristics, on every run below
    let euler = |res: &charcycle::cech::CechResult| {
        let (l, r) = euler_characteristics(&res.cube, &res.cohomology);
        assert_eq!(l, r);
    };
    let base_run = ring_cohomology(&m.cotangent, &m.gens).unwrap();
    euler(&base_run);
    let xs: Vec<Polynomial> = (0..6).map(|i| Polynomial::var(&m.base, i)).collect();
    for h in &base_run.cohomology[2..] {
        euler(&local_cohomology(h, &xs, Provenance::Trusted).unwrap());
    }

    // idempotence
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let t = cotangent(n);
        let r = t.base().unwrap();
        let k = rng.gen_range(1..=3);
        let sets = random_squarefree(&mut rng, n, k);
        let res = ring_cohomology(&t, &squarefree(&r, &sets)).unwrap();
        euler(&res);
        let cc = res.cube.vertex(rng.gen_range(0..1u32 << sets.len())).clone();
        let f = squarefree(&r, &random_squarefree(&mut rng, n, 1))[0].clone();
        let once = localize(&cc, &f).unwrap();
        assert_eq!(localize(&once, &f).unwrap(), once);
    }

    // generator order
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let gens: Vec<Polynomial> = perm.iter().map(|&i| m.gens[i].clone()).collect();
        let res = ring_cohomology(&m.cotangent, &gens).unwrap();
        euler(&res);
        assert_eq!(res.cohomology, base_run.cohomology, "{perm:?}");
    }
    for _ in 0..10 {
        let n = rng.gen_range(3..=4);
        let t = cotangent(n);
        let r = t.base().unwrap();
        let mut sets = random_squarefree(&mut rng, n, 3);
        let first = ring_cohomology(&t, &squarefree(&r, &sets)).unwrap().cohomology;
        sets.shuffle(&mut rng);
        let res = ring_cohomology(&t, &squarefree(&r, &sets)).unwrap();
        euler(&res);
        assert_eq!(res.cohomology, first, "{sets:?}");
    }

    // coordinate cubes against their closed form
    for n in 1..=4 {
        let t = cotangent(n);
        let r = t.base().unwrap();
        let zero = zero_section(&t).unwrap();
        for mask in 1u32..1 << n {
            let vars: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let fs: Vec<Polynomial> = vars.iter().map(|&v| Polynomial::var(&r, v)).collect();
            let res = local_cohomology(&zero, &fs, Provenance::Trusted).unwrap();
            euler(&res);
            for (alpha, cc) in res.cube.vertices() {
                let inv: Vec<usize> = (0..vars.len()).filter(|i| alpha >> i & 1 == 1).map(|i| vars[i]).collect();
                assert_eq!(coordinate_cycle(cc).unwrap(), monomial_localization_cycle(&inv));
            }
        }
    }

    // multiplicities along the components of divisor ideals
    let t3 = cotangent(3);
    let r3 = t3.base().unwrap();
    let mut cases: Vec<_> = ["x1", "x1*x2", "x1^2 - x2*x3", "x1*x2*x3", "x1^3 - x2^2"]
        .iter()
        .map(|f| (t3.clone(), poly(&r3, f)))
        .collect();
    cases.extend(m.gens.iter().map(|g| (m.cotangent.clone(), g.clone())));
    for (ring, f) in cases {
        let base = ring.base().unwrap();
        let input = ConormalInput::new(&ring, &Ideal::zero(&base), &f).unwrap();
        let c = divisor_ideal(&input).unwrap().ideal;
        let peeled = lagrangian_components(&c).unwrap();
        for p in minimal_primes(&c).unwrap() {
            if p.dimension == base.nvars() {
                let k = multiplicity_along(&c, &p.prime).unwrap();
                assert!(k >= 1);
                assert!(peeled.iter().any(|(q, j)| q.prime().same_ideal(&p.prime) && *j == k), "{f}: {p}");
            }
        }
    }

    // Hilbert series against counting
    let r = Ring::new(&["x", "y", "z"]).unwrap();
    for _ in 0..50 {
        let mons: Vec<Monomial> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
                if e.iter().all(|&x| x == 0) {
                    Monomial::var(3, 0)
                } else {
                    Monomial::from_exponents(&e)
                }
            })
            .collect();
        let polys = mons.iter().map(|m| Polynomial::monomial(&r, Coeff::from_integer(1.into()), *m)).collect();
        let i = Ideal::new(&r, polys).unwrap();
        let want: Vec<i64> = standard_monomial_count(3, &mons, 12).iter().map(|&c| c as i64).collect();
        assert_eq!(hilbert_series(&i).coefficients(12), want, "{i}");
    }
}

fn certified(i: &Ideal, order: &MonomialOrder) {
    let gb = i.groebner_basis(order);
    assert!(is_groebner_basis(gb.polys(), order), "{i}");
    assert!(is_reduced_basis(gb.polys(), order), "{i}");
}

fn groebner_soundness() {
    let m = minors();
    let i = Ideal::new(&m.base, m.gens.clone()).unwrap();
    for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::elimination(6, &[0, 1])] {
        certified(&i, &order);
    }
    for (_, s) in m.strata() {
        certified(&s, &MonomialOrder::GrevLex);
    }
    let res = ring_cohomology(&m.cotangent, &m.gens).unwrap();
    for (c, _) in res.cube.vertex(0b111).components() {
        certified(c.prime(), &MonomialOrder::GrevLex);
    }
    for g in &m.gens {
        let input = ConormalInput::new(&m.cotangent, &Ideal::zero(&m.base), g).unwrap();
        certified(&divisor_ideal(&input).unwrap().ideal, &MonomialOrder::GrevLex);
    }

    let r = Ring::new(&["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let k = rng.gen_range(1..=4);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(&r, &mut rng, 3, 4)).collect();
        let i = Ideal::new(&r, gens).unwrap();
        certified(&i, &MonomialOrder::GrevLex);
    }
}

fn main() {
    let criteria: [(&str, fn(), Duration); 6] = [
        ("first localizations", first_localizations, Duration::from_secs(5)),
        ("pruning examples", pruning_examples, Duration::from_secs(10)),
        ("minors pipeline", minors_pipeline, Duration::from_secs(30 * 60)),
        ("lyubeznik numbers", lyubeznik_numbers, Duration::from_secs(2 * 3600)),
        ("property suites", property_suites, Duration::from_secs(10 * 60)),
        ("groebner soundness", groebner_soundness, Duration::from_secs(5 * 60)),
    ];
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (k, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(check)).is_ok();
        let took = start.elapsed();
        let pass = ok && took <= budget;
        if !pass {
            failed += 1;
        }
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {name} ({took:.2?}, budget {budget:?})", k + 1);
    }
    if failed > 0 {
        eprintln!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
