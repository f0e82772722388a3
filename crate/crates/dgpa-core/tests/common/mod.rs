//! Shared helpers for the integration suites: fixture loading and a
//! seeded generator of valid differential graded Lie algebras.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dgpa_core::algebra::{GenId, GeneratorSet};
use dgpa_core::dg::DGPAlgebra;
use dgpa_core::io::parse_algebra;
use dgpa_core::lie::DGLieAlgebra;
use dgpa_core::presentation::TruncationParams;
use dgpa_core::scalar::Scalar;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture file")
}

pub fn load_con(lambda: i64, mu: i64, p: i64) -> DGPAlgebra {
    let mut overrides = BTreeMap::new();
    overrides.insert("lambda".to_string(), Scalar::from_int(lambda));
    overrides.insert("mu".to_string(), Scalar::from_int(mu));
    overrides.insert("p".to_string(), Scalar::from_int(p));
    let (alg, _) = parse_algebra(&fixture_text("con.json"), "con", &overrides).expect("con fixture");
    alg
}

pub fn verified_con(lambda: i64, mu: i64, p: i64, t: &TruncationParams) -> DGPAlgebra {
    let mut alg = load_con(lambda, mu, p);
    let report = alg.verify(t).expect("axiom run");
    assert!(
        report.ok(),
        "con({lambda},{mu},{p}) unexpectedly fails: {:?}",
        report.failing().iter().map(|c| &c.name).collect::<Vec<_>>()
    );
    alg
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-3i64..=3);
    let den = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
    if num == 0 {
        Scalar::one()
    } else {
        Scalar::ratio(num, den)
    }
}

/// A random valid DG Lie algebra: a two-step nilpotent layer V -> Z with
/// degree-matched structure constants and a differential V -> Z, Z -> 0.
/// Validity is structural (the caller may re-assert via `violations`).
pub fn random_lie(rng: &mut ChaCha8Rng, max_v: usize, max_z: usize) -> DGLieAlgebra {
    let nv = rng.gen_range(1..=max_v.max(1));
    let nz = rng.gen_range(0..=max_z);
    let mut basis = GeneratorSet::default();
    let mut v_degrees = Vec::new();
    for i in 0..nv {
        let d = rng.gen_range(1..=2i64);
        v_degrees.push(d);
        basis.push(&format!("v{i}"), d).unwrap();
    }
    let mut z_degrees = Vec::new();
    for i in 0..nz {
        // z degrees reachable as pair sums or as v-degree + 1
        let candidates: Vec<i64> = {
            let mut c = Vec::new();
            for a in 0..nv {
                for b in a..nv {
                    c.push(v_degrees[a] + v_degrees[b]);
                }
                c.push(v_degrees[a] + 1);
            }
            c
        };
        let d = candidates[rng.gen_range(0..candidates.len())];
        z_degrees.push(d);
        basis.push(&format!("z{i}"), d).unwrap();
    }
    let dim = nv + nz;
    let mut l = DGLieAlgebra::new(basis);
    // brackets V x V -> Z
    for a in 0..nv {
        for b in a..nv {
            if a == b && v_degrees[a] % 2 == 0 {
                continue;
            }
            if nz == 0 || rng.gen_bool(0.4) {
                continue;
            }
            let target = rng.gen_range(0..nz);
            if z_degrees[target] != v_degrees[a] + v_degrees[b] {
                continue;
            }
            let mut vec = vec![Scalar::zero(); dim];
            vec[nv + target] = small_scalar(rng);
            l.set_bracket(GenId(a as u32), GenId(b as u32), vec).unwrap();
        }
    }
    // differential V -> Z
    for a in 0..nv {
        if nz == 0 || rng.gen_bool(0.5) {
            continue;
        }
        let target = rng.gen_range(0..nz);
        if z_degrees[target] != v_degrees[a] + 1 {
            continue;
        }
        let mut vec = vec![Scalar::zero(); dim];
        vec[nv + target] = small_scalar(rng);
        l.set_diff(GenId(a as u32), vec).unwrap();
    }
    l
}
