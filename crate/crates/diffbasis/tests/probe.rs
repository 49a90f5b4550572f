use diffbasis::search::{exact_delta_cyclic, SearchConfig};
use std::time::{Duration, Instant};

#[test]
fn probe_extended_cyclic() {
    let cfg = SearchConfig {
        time_budget: Some(Duration::from_secs(180)),
        ..Default::default()
    };
    for n in [66u64, 76, 80, 82, 85] {
        let t = Instant::now();
        let out = exact_delta_cyclic(n, &cfg).unwrap();
        println!(
            "n={n}: delta={:?} nodes={} wall={:?} exhaustive={}",
            out.value, out.stats.nodes, t.elapsed(), out.exhaustive
        );
    }
}
