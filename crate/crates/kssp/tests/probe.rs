use kssp::solver::{solve, Query, Variant};
use kssp::random::random_multigraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pair(n: usize, seed: u64) -> (u32, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    let s = rng.random_range(0..n as u32);
    let t = loop { let t = rng.random_range(0..n as u32); if t != s { break t; } };
    (s, t)
}

fn med(mut v: Vec<f64>) -> f64 { v.sort_by(f64::total_cmp); v[((0.5*v.len() as f64).ceil() as usize).max(1)-1] }

#[test]
fn probe_density_profile() {
    let n = 2000;
    for &maxw in &[10_000u32, 1_000_000] {
        let mut meds = vec![];
        for &density in &[2usize, 50] {
            let mut calls = vec![];
            let mut to = vec![];
            let mut tr = vec![];
            for seed in 1..=20u64 {
                let g = random_multigraph(n, density * n, maxw, seed).unwrap();
                let (s, t) = pair(n, seed);
                let (_, st) = solve(&g, Query { source: s, target: t, k: 2000, variant: Variant::SbO }).unwrap();
                calls.push(st.dijkstra_calls as f64);
                to.push(st.wall_time.as_secs_f64());
                let (_, sr) = solve(&g, Query { source: s, target: t, k: 2000, variant: Variant::SbR }).unwrap();
                tr.push(sr.wall_time.as_secs_f64());
            }
            println!("maxw {maxw:>7} density {density:>2}: sbo median calls={:>5.0} time={:.3}s | sbr median time={:.3}s", med(calls.clone()), med(to.clone()), med(tr.clone()));
            meds.push((med(to), med(tr)));
        }
        println!("maxw {maxw:>7}: sbo growth {:.2}x, sbr growth {:.2}x", meds[1].0/meds[0].0, meds[1].1/meds[0].1);
    }
}
