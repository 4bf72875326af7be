//! Line-oriented `key<TAB>value` report output; the consumers are pipelines
//! and tests, not humans.

use hdc::Match;

pub fn kv(key: &str, value: impl std::fmt::Display) {
    println!("{key}\t{value}");
}

pub fn space_lines(space: hdc::SpaceConfig) {
    kv("dimension", space.dimension());
    kv("segment_width", space.segment_width());
    kv("segment_count", space.segment_count());
}

/// One `match` line per hit: `match <context> <rank> <label> <overlap>`.
pub fn match_lines(context: &str, matches: &[Match]) {
    for m in matches {
        println!("match\t{context}\t{}\t{}\t{}", m.rank, m.label, m.overlap);
    }
}
