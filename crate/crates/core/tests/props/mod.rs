use bpfkit::abelian::{AbelianGroup, GroupElement};
use bpfkit::fujita::FujitaSetting;
use bpfkit::monoid::{CapMode, EmbeddedMonoid};
use bpfkit::polyhedral::{facet_form_for_normal, RationalCone};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use proptest::{prop_assert, prop_assert_eq, prop_assume};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn config(seed: u64) -> Config {
    Config {
        cases: 200,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

#[derive(Clone, Debug)]
struct Instance {
    rank: usize,
    torsion: Vec<i64>,
    gens: Vec<(Vec<i64>, Vec<i64>)>,
}

impl Instance {
    fn group(&self) -> Arc<AbelianGroup> {
        AbelianGroup::new(self.rank, self.torsion.iter().map(|&a| BigInt::from(a)).collect()).unwrap()
    }

    fn monoid(&self, k: &Arc<AbelianGroup>) -> EmbeddedMonoid {
        EmbeddedMonoid::new(
            k,
            self.gens
                .iter()
                .map(|(f, t)| GroupElement::from_i64(k, f, t).unwrap())
                .collect(),
        )
        .unwrap()
    }
}

fn element(rank: usize, torsion: Vec<i64>, range: i64) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    let tors: Vec<_> = torsion.iter().map(|&a| 0..a).collect();
    (proptest::collection::vec(-range..=range, rank), tors)
}

fn instance(max_rank: usize, max_gens: usize, range: i64) -> impl Strategy<Value = Instance> {
    (0..=max_rank, proptest::collection::vec(2i64..=6, 0..=1)).prop_flat_map(move |(rank, torsion)| {
        let torsion = if rank == 0 && torsion.is_empty() {
            vec![4]
        } else {
            torsion
        };
        proptest::collection::vec(element(rank, torsion.clone(), range), 1..=max_gens).prop_map(move |gens| Instance {
            rank,
            torsion: torsion.clone(),
            gens,
        })
    })
}

/// An integer functional positive on every nonzero free part, found by search.
fn positive_functional(rank: usize, free: &[Vec<i64>]) -> Option<Vec<i64>> {
    let nonzero: Vec<&Vec<i64>> = free.iter().filter(|f| f.iter().any(|&x| x != 0)).collect();
    let mut candidates: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        candidates = candidates
            .into_iter()
            .flat_map(|c| {
                (-6..=6).map(move |x| {
                    let mut d = c.clone();
                    d.push(x);
                    d
                })
            })
            .collect();
    }
    candidates.into_iter().find(|phi| {
        nonzero
            .iter()
            .all(|f| f.iter().zip(phi).map(|(a, b)| a * b).sum::<i64>() > 0)
    })
}

fn order(t: &[i64], torsion: &[i64]) -> i64 {
    t.iter().zip(torsion).fold(1, |l, (&x, &a)| l.lcm(&(a / x.gcd(&a))))
}

/// Exhaustive search over coefficient boxes: `x_i <= φ(w)/φ(s_i)` for
/// generators with nonzero free part, `x_i < ord(s_i)` otherwise.
fn brute_member(inst: &Instance, phi: &[i64], w: &(Vec<i64>, Vec<i64>)) -> bool {
    let dot = |f: &[i64]| f.iter().zip(phi).map(|(a, b)| a * b).sum::<i64>();
    let pw = dot(&w.0);
    let bounds: Vec<i64> = inst
        .gens
        .iter()
        .map(|(f, t)| {
            if f.iter().all(|&x| x == 0) {
                order(t, &inst.torsion) - 1
            } else if pw < 0 {
                -1
            } else {
                pw / dot(f)
            }
        })
        .collect();
    if bounds.iter().any(|&b| b < 0) {
        return false;
    }
    let mut x = vec![0i64; inst.gens.len()];
    loop {
        let mut free = vec![0i64; inst.rank];
        let mut tor = vec![0i64; inst.torsion.len()];
        for (c, (f, t)) in x.iter().zip(&inst.gens) {
            for (a, b) in free.iter_mut().zip(f) {
                *a += c * b;
            }
            for (a, b) in tor.iter_mut().zip(t) {
                *a += c * b;
            }
        }
        let tor_ok = tor
            .iter()
            .zip(&w.1)
            .zip(&inst.torsion)
            .all(|((a, b), m)| (a - b).mod_floor(m) == 0);
        if free == w.0 && tor_ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == x.len() {
                return false;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

pub fn membership_matches_exhaustive_search() -> Result<(), String> {
    TestRunner::new(config(0xb0f1))
        .run(&(instance(2, 4, 3), any::<u64>()), |(inst, seed)| {
            let free: Vec<Vec<i64>> = inst.gens.iter().map(|g| g.0.clone()).collect();
            prop_assume!(positive_functional(inst.rank, &free).is_some());
            let phi = positive_functional(inst.rank, &free).unwrap();
            let k = inst.group();
            let s = inst.monoid(&k);
            let prod = inst.monoid(&k).with_cap_mode(CapMode::Product);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..6 {
                let w: (Vec<i64>, Vec<i64>) = (
                    (0..inst.rank).map(|_| rng.gen_range(-2..=8)).collect(),
                    inst.torsion.iter().map(|&a| rng.gen_range(0..a)).collect(),
                );
                let we = GroupElement::from_i64(&k, &w.0, &w.1).unwrap();
                let expected = brute_member(&inst, &phi, &w);
                let x = s.witness(&we).unwrap();
                prop_assert_eq!(x.is_some(), expected, "w = {:?}", w);
                if let Some(x) = x {
                    prop_assert!(x.iter().all(|c| !c.is_negative()));
                    prop_assert_eq!(s.evaluate(&x), we.clone());
                }
                prop_assert_eq!(prod.contains(&we).unwrap(), expected);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn membership_witnesses_without_pointedness() -> Result<(), String> {
    TestRunner::new(config(0xb0f2))
        .run(
            &(instance(2, 4, 2), proptest::collection::vec(0i64..4, 4)),
            |(inst, coeffs)| {
                let k = inst.group();
                let s = inst.monoid(&k);
                // every nonnegative combination is a member
                let x: Vec<BigInt> = coeffs[..inst.gens.len()].iter().map(|&c| BigInt::from(c)).collect();
                let w = s.evaluate(&x);
                let found = s.witness(&w).unwrap();
                prop_assert!(found.is_some());
                let found = found.unwrap();
                prop_assert!(found.iter().all(|c| !c.is_negative()));
                prop_assert_eq!(s.evaluate(&found), w);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn numerical_or_planar() -> impl Strategy<Value = (Instance, Instance)> {
    (0usize..=1).prop_flat_map(|torsion_len| {
        let torsion = if torsion_len == 0 { vec![] } else { vec![3] };
        let rank = 1 + torsion_len;
        let rank = rank.min(2);
        let gen = move |tors: Vec<i64>| {
            proptest::collection::vec(element(rank, tors.clone(), 3), 1..=3).prop_map(move |gens| Instance {
                rank,
                torsion: tors.clone(),
                gens,
            })
        };
        (gen(torsion.clone()), gen(torsion))
    })
}

pub fn intersection_is_sound_and_complete() -> Result<(), String> {
    TestRunner::new(config(0x1a7e))
        .run(&(numerical_or_planar(), any::<u64>()), |((a, b), seed)| {
            let k = a.group();
            let s1 = a.monoid(&k);
            let s2 = b.monoid(&k);
            let t = s1.intersect(&s2).unwrap();
            let interiors_meet = s1.cone().intersect(s2.cone()).is_full_dimensional();
            if s1.is_spanning() && s2.is_spanning() && interiors_meet {
                prop_assert!(t.is_spanning());
            }
            for g in t.generators() {
                prop_assert!(
                    s1.contains(g).unwrap() && s2.contains(g).unwrap(),
                    "generator {} not in both",
                    g
                );
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..12 {
                // candidates drawn from S1 so that membership in S2 is the filter
                let x: Vec<BigInt> = (0..s1.generators().len())
                    .map(|_| BigInt::from(rng.gen_range(0..4)))
                    .collect();
                let w = s1.evaluate(&x);
                if s2.contains(&w).unwrap() {
                    prop_assert!(
                        t.contains(&w).unwrap(),
                        "{} in S1 and S2 but not in the intersection",
                        w
                    );
                }
                let free: Vec<i64> = (0..k.rank()).map(|_| rng.gen_range(-6..=6)).collect();
                let tor: Vec<i64> = k
                    .torsion_orders()
                    .iter()
                    .map(|a| rng.gen_range(0..a.to_i64().unwrap()))
                    .collect();
                let w = GroupElement::from_i64(&k, &free, &tor).unwrap();
                prop_assert_eq!(
                    t.in_saturation(&w).unwrap(),
                    s1.in_saturation(&w).unwrap() && s2.in_saturation(&w).unwrap()
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn conductor_point_is_in_the_conductor() -> Result<(), String> {
    TestRunner::new(config(0xc0d0))
        .run(&(instance(2, 4, 3), any::<u64>()), |(inst, seed)| {
            let k = inst.group();
            let s = inst.monoid(&k);
            if !s.is_spanning() {
                prop_assert!(s.conductor_point().is_err());
                return Ok(());
            }
            let c = s.conductor_point().unwrap().point;
            for m in s.module_generators().elements {
                prop_assert!(s.contains(&c.add(&m).unwrap()).unwrap());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0;
            while checked < 50 {
                // free part in cone(S) by construction, arbitrary torsion
                let mut free = vec![BigInt::zero(); k.rank()];
                for g in s.generators() {
                    let y = BigInt::from(rng.gen_range(0..3));
                    for (a, b) in free.iter_mut().zip(g.free()) {
                        *a += &y * b;
                    }
                }
                let tor: Vec<BigInt> = k
                    .torsion_orders()
                    .iter()
                    .map(|a| BigInt::from(rng.gen_range(0..a.to_i64().unwrap())))
                    .collect();
                let w = GroupElement::new(&k, free, tor).unwrap();
                prop_assert!(s.in_saturation(&w).unwrap());
                prop_assert!(s.contains(&c.add(&w).unwrap()).unwrap(), "c + {} not in S", w);
                checked += 1;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn facet_forms_are_primitive_and_vanish_on_facets() -> Result<(), String> {
    TestRunner::new(config(0xfa7e))
        .run(
            &(
                2usize..=3,
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..=5),
            ),
            |(dim, raw)| {
                let gens: Vec<Vec<BigInt>> = raw
                    .iter()
                    .map(|v| v[..dim].iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                let sigma = RationalCone::from_generators(dim, &gens);
                let basis = sigma.span_lattice_basis();
                for facet in sigma.facets() {
                    let form = facet_form_for_normal(&sigma, &facet.normal);
                    for g in facet.cone.generators() {
                        prop_assert!(form.level(&g).is_zero());
                    }
                    for g in &gens {
                        prop_assert!(!form.level(g).is_negative());
                    }
                    // integral on span ∩ Z^n and onto Z
                    let values: Vec<BigInt> = basis
                        .iter()
                        .map(|b| form.level(b))
                        .map(|v| {
                            assert!(v.is_integer());
                            v.to_integer()
                        })
                        .collect();
                    let g = values.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
                    prop_assert_eq!(g, BigInt::from(1));
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// Non-saturated planar monoid: multiples of two ray directions plus
/// lattice points of the cone between them.
fn crafted_planar() -> impl Strategy<Value = (Vec<[i64; 2]>, [i64; 2], i64)> {
    let dirs = prop_oneof![
        Just(([1i64, 0], [0i64, 1])),
        Just(([1, 0], [1, 2])),
        Just(([0, 1], [1, 2])),
        Just(([1, 1], [-1, 2])),
        Just(([2, 1], [1, 3])),
    ];
    (
        dirs,
        1i64..=3,
        1i64..=3,
        proptest::collection::vec((-2i64..=5, -2i64..=5), 0..=3),
        (-4i64..=2, -4i64..=2),
        0i64..=2,
    )
        .prop_map(|((v1, v2), a, b, extra, kx, dim)| {
            let det = |p: [i64; 2], q: [i64; 2]| p[0] * q[1] - p[1] * q[0];
            let mut gens = vec![[a * v1[0], a * v1[1]], [b * v2[0], b * v2[1]]];
            for (x, y) in extra {
                let p = [x, y];
                // strictly between the two rays
                if det(v1, p) > 0 && det(p, v2) > 0 {
                    gens.push(p);
                }
            }
            (gens, [kx.0, kx.1], dim)
        })
}

pub fn fujita_loop_matches_exhaustive_testing() -> Result<(), String> {
    TestRunner::new(Config {
        max_global_rejects: 20_000,
        ..config(0xf0d1)
    })
    .run(&crafted_planar(), |(gens, kx, dim)| {
        let z2 = AbelianGroup::free(2);
        let s = EmbeddedMonoid::new(
            &z2,
            gens.iter()
                .map(|g| GroupElement::from_i64(&z2, g, &[]).unwrap())
                .collect(),
        )
        .unwrap();
        prop_assume!(s.is_spanning());
        let kx = GroupElement::from_i64(&z2, &kx, &[]).unwrap();
        let st = FujitaSetting::new(s.clone(), kx.clone(), dim).unwrap();
        let nu = st.nu.to_i64().unwrap();
        prop_assume!(nu <= 14);
        let (_, witness) = st.run().unwrap();

        // exhaustive: every interior lattice class with bounded levels and
        // every m from dim + 1 to ν + 2
        let forms: Vec<_> = st.facets.iter().map(|f| f.form.clone()).collect();
        let extra = st
            .facets
            .iter()
            .flat_map(|f| f.minimal_elements.iter())
            .flat_map(|g| forms.iter().map(move |u| u.level_int(g.free())))
            .max()
            .unwrap_or_default()
            .to_i64()
            .unwrap();
        let bound = nu.max(1) + extra;
        // the region lies in the parallelogram spanned by bound·v_j
        let reach: i64 = st
            .sigma
            .rays()
            .iter()
            .map(|r| r.iter().map(|c| c.abs().to_i64().unwrap()).max().unwrap())
            .sum();
        let n = bound * reach + 1;
        let mut brute_fails = false;
        'outer: for x in -n..=n {
            for y in -n..=n {
                let l = GroupElement::from_i64(&z2, &[x, y], &[]).unwrap();
                if !st.sigma.relative_interior_contains(l.free()) {
                    continue;
                }
                if forms.iter().any(|u| u.level_int(l.free()) > BigInt::from(bound)) {
                    continue;
                }
                for m in (dim + 1)..=(nu + 2) {
                    let value = kx.add(&l.scale(&BigInt::from(m))).unwrap();
                    if !s.contains(&value).unwrap() {
                        brute_fails = true;
                        break 'outer;
                    }
                }
            }
        }
        prop_assert_eq!(witness.is_none(), !brute_fails);
        if let Some(w) = witness {
            prop_assert!(!s.contains(&w.value).unwrap());
            prop_assert_eq!(w.in_cone, st.sigma.contains(w.value.free()));
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}
