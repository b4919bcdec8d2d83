//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;
mod props;

use bpfkit::abelian::GroupElement;
use bpfkit::fujita::{fujita_bpf, FujitaSetting};
use bpfkit::monoid::EmbeddedMonoid;
use common::*;
use num_bigint::BigInt;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<(), String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn tor(s: &EmbeddedMonoid, f: i64, t: i64) -> GroupElement {
    GroupElement::from_i64(s.group(), &[f], &[t]).unwrap()
}

fn int(s: &EmbeddedMonoid, n: i64) -> GroupElement {
    GroupElement::from_i64(s.group(), &[n], &[]).unwrap()
}

fn scalar(g: &GroupElement) -> i64 {
    i64::try_from(&g.free()[0]).unwrap()
}

fn membership() -> Outcome {
    let s = running_monoid();
    let w = tor(&s, 3, 1);
    let witness = s.witness(&w).map_err(|e| e.to_string())?;
    ensure!(witness == Some(ints(&[1, 3, 0])), "witness {witness:?}");
    let b = s.membership_polytope(&w).and_then(|p| p.lattice_points()).map_err(|e| e.to_string())?;
    let mut expected: Vec<Vec<BigInt>> = (0..=4).flat_map(|a| [ints(&[a, 3, 0]), ints(&[a, 0, 1])]).collect();
    expected.sort();
    ensure!(b == expected, "polytope points {b:?}");
    Ok(())
}

fn intersection() -> Outcome {
    let s1 = numerical(&[2, 5]);
    let s2 = numerical(&[3]);
    let r = s1.intersect_with_details(&s2).map_err(|e| e.to_string())?;
    let mut raw: Vec<i64> = r.raw.iter().map(scalar).collect();
    raw.sort();
    ensure!(raw == [0, 6, 9, 12, 15, 21], "raw generators {raw:?}");
    let reference = numerical(&[6, 9]);
    for n in 0..=30 {
        let got = r.monoid.contains(&int(&r.monoid, n)).map_err(|e| e.to_string())?;
        let brute = (0..=n / 6).any(|a| (n - 6 * a) % 9 == 0);
        ensure!(got == brute, "membership of {n}: {got} vs {brute}");
        ensure!(reference.contains(&int(&reference, n)).unwrap() == brute, "reference monoid disagrees at {n}");
    }
    Ok(())
}

fn conductor() -> Outcome {
    let s = running_monoid();
    let m = s.module_generators();
    let expected: Vec<GroupElement> = (0..=1).flat_map(|f| (0..4).map(move |t| (f, t))).map(|(f, t)| tor(&s, f, t)).collect();
    ensure!(m.elements == expected, "module generators {:?}", m.elements);
    let member = |f, t| s.in_conductor_ideal(&tor(&s, f, t)).map_err(|e| e.to_string());
    ensure!(member(3, 1)?, "(3,1) should lie in the conductor ideal");
    ensure!(!member(1, 0)?, "(1,0) should not lie in the conductor ideal");
    ensure!(!member(2, 0)?, "(2,0) should not lie in the conductor ideal");
    let c = s.conductor_point().map_err(|e| e.to_string())?;
    ensure!(c.point == tor(&s, 3, 0), "conductor point {}", c.point);
    Ok(())
}

fn surface_example() -> Outcome {
    let x = surface();
    let faces = x.f_faces().map_err(|e| e.to_string())?.len();
    ensure!(faces > 0, "no F-faces");
    let w = el(&x, &[-1, 1, 1, 1, 3, 2, 3, 4, 0, 3, 1, 5]);
    ensure!(x.semiample_contains(&w).map_err(|e| e.to_string())?, "w should be semiample");
    ensure!(!x.is_base_point_free(&w).map_err(|e| e.to_string())?, "w should not be base point free");
    Ok(())
}

fn check_setting(st: &FujitaSetting, alphas: &[i64], nu: i64) -> Outcome {
    ensure!(st.conductor.is_zero(), "conductor {}", st.conductor);
    ensure!(st.alphas == ints(alphas), "alphas {:?}", st.alphas);
    ensure!(st.nu == BigInt::from(nu), "nu {}", st.nu);
    Ok(())
}

fn fujita_first() -> Outcome {
    let x = fujita1();
    let kx = x.canonical_class();
    ensure!(kx == el(&x, &[-4, 1, -106]), "canonical class {kx}");
    let gens = free_set(x.bpf_generators().map_err(|e| e.to_string())?);
    ensure!(gens == big(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 49]]), "bpf generators {gens:?}");
    ensure!(x.dimension() == 6, "dimension {}", x.dimension());
    check_setting(&FujitaSetting::from_space(&x, &kx).map_err(|e| e.to_string())?, &[-90, -1, 4], 4)?;
    let r = fujita_bpf(&x, &kx).map_err(|e| e.to_string())?;
    ensure!(r.verdict, "verdict false");
    ensure!(r.trace.is_empty(), "trace has {} cells", r.trace.len());
    Ok(())
}

fn fujita_second() -> Outcome {
    let x = fujita2();
    let kx = x.canonical_class();
    ensure!(kx == el(&x, &[4, 0]), "canonical class {kx}");
    let gens = free_set(x.bpf_generators().map_err(|e| e.to_string())?);
    ensure!(gens == big(&[&[0, 1], &[1, 2]]), "bpf generators {gens:?}");
    ensure!(x.dimension() == 6, "dimension {}", x.dimension());
    check_setting(&FujitaSetting::from_space(&x, &kx).map_err(|e| e.to_string())?, &[8, -4], 8)?;
    let r = fujita_bpf(&x, &kx).map_err(|e| e.to_string())?;
    ensure!(!r.verdict, "verdict true");
    let w = r.witness.ok_or("no witness")?;
    ensure!((w.facet, w.m, w.k) == (1, 7, 1), "witness cell ({},{},{})", w.facet, w.m, w.k);
    ensure!(w.class == el(&x, &[1, 3]), "witness class {}", w.class);
    ensure!(w.value == el(&x, &[11, 21]), "witness value {}", w.value);
    ensure!(x.is_base_point_free(&el(&x, &[1, 3])).map_err(|e| e.to_string())?, "[1,3] should be base point free");
    Ok(())
}

fn property_suites() -> Outcome {
    let suites: [(&str, Check); 6] = [
        ("membership", props::membership_matches_exhaustive_search),
        ("membership-nonpointed", props::membership_witnesses_without_pointedness),
        ("intersection", props::intersection_is_sound_and_complete),
        ("conductor-point", props::conductor_point_is_in_the_conductor),
        ("facet-forms", props::facet_forms_are_primitive_and_vanish_on_facets),
        ("fujita-brute-force", props::fujita_loop_matches_exhaustive_testing),
    ];
    for (name, run) in suites {
        run().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 7] = [
        ("1 membership", membership, Duration::from_secs(1)),
        ("2 intersection", intersection, Duration::from_secs(1)),
        ("3 conductor", conductor, Duration::from_secs(1)),
        ("4 surface", surface_example, Duration::from_secs(60)),
        ("5 fujita-first", fujita_first, Duration::from_secs(30)),
        ("6 fujita-second", fujita_second, Duration::from_secs(10)),
        ("7 properties", property_suites, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed < limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.3?}"))
            }
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.3?} < {limit:?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.3?}, limit {limit:?}): {e}");
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
