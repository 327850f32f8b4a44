#![no_main]

use libfuzzer_sys::fuzz_target;
use sdm_sim::{run_replication, SimulationSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = SimulationSpec::from_json(text) else {
        return;
    };
    if spec.validate().is_err() {
        return;
    }
    spec.config().expect("validated spec has a config");
    // Keep executions short: only run one replication of small specs.
    if spec.dm_count <= 5
        && spec.alternative_count <= 6
        && spec.criterion_count <= 4
        && spec.max_rounds <= 5
    {
        let r = run_replication(&spec, 0).expect("validated spec runs");
        assert!(r.rounds_used >= 1 && r.rounds_used <= spec.max_rounds);
        assert_eq!(r.ranking.len(), spec.alternative_count);
    }
});
