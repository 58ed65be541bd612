use std::collections::{BTreeMap, BTreeSet};

use checkerboard::paths::{count_paths, enumerate_paths, sector_sum_bruteforce, Direction};
use num_bigint::BigUint;
use num_traits::Signed;

const DIRS: [Direction; 2] = [Direction::Right, Direction::Left];

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn closed_counts_match_enumeration() {
    for p in 1..=7 {
        for q in 1..=7 {
            for start in DIRS {
                for end in DIRS {
                    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
                    for path in enumerate_paths(p, q, start, end).unwrap() {
                        *histogram.entry(path.bends()).or_default() += 1;
                    }
                    let mut total = 0u64;
                    for r in 0..=(p + q) {
                        let expected = histogram.get(&r).copied().unwrap_or(0);
                        assert_eq!(count_paths(p, q, start, end, r), BigUint::from(expected), "{p} {q} {start:?} {end:?} R={r}");
                        total += expected;
                    }
                    let ones = |d| if start == d { 1 } else { 0 } + if end == d { 1 } else { 0 };
                    let (rp, rq) = (p as i64 - ones(Direction::Right), q as i64 - ones(Direction::Left));
                    let free = if rp < 0 || rq < 0 { 0 } else { binomial((rp + rq) as u64, rp as u64) };
                    assert_eq!(total, free);
                }
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    let listed: Vec<String> = enumerate_paths(5, 4, Direction::Right, Direction::Left)
        .unwrap()
        .map(|p| p.to_string().replace('R', "0").replace('L', "1"))
        .collect();
    let mut sorted = listed.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(listed, sorted);
}

#[test]
fn bend_coordinates() {
    for p in 1..=7u32 {
        for q in 1..=7u32 {
            for start in DIRS {
                for end in DIRS {
                    for path in enumerate_paths(p, q, start, end).unwrap() {
                        let recs = path.bend_records();
                        let mut last = BTreeMap::new();
                        for b in &recs {
                            let bound = if b.side == Direction::Right { p } else { q };
                            assert!(b.coord >= 1 && b.coord <= bound);
                            if let Some(prev) = last.insert(b.side, b.coord) {
                                assert!(b.coord > prev);
                            }
                            if b.counted {
                                assert!(b.coord < bound, "{path} {b:?}");
                            }
                        }
                        if let Some(fin) = recs.last() {
                            assert!(!fin.counted);
                            // the determined bend follows the last segment on its side
                            assert_eq!(fin.side, end.flip());
                            assert_eq!(fin.coord, if fin.side == Direction::Right { p } else { q });
                        }
                        assert!(recs.iter().filter(|b| !b.counted).count() <= 1);
                    }
                }
            }
        }
    }
}

#[test]
fn counted_coordinates_identify_paths() {
    for p in 1..=7u32 {
        for q in 1..=7u32 {
            for start in DIRS {
                for end in DIRS {
                    let mut seen: BTreeMap<u32, BTreeSet<(Vec<u32>, Vec<u32>)>> = BTreeMap::new();
                    let mut sizes: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
                    for path in enumerate_paths(p, q, start, end).unwrap() {
                        let recs = path.bend_records();
                        let pick = |d| recs.iter().filter(|b| b.counted && b.side == d).map(|b| b.coord).collect::<Vec<_>>();
                        let key = (pick(Direction::Right), pick(Direction::Left));
                        sizes.insert(path.bends(), (key.0.len(), key.1.len()));
                        assert!(seen.entry(path.bends()).or_default().insert(key), "collision in {path}");
                    }
                    // every choice of counted coordinates is realised
                    for (r, set) in &seen {
                        let (a, b) = sizes[r];
                        let expected = binomial(p as u64 - 1, a as u64) * binomial(q as u64 - 1, b as u64);
                        assert_eq!(set.len() as u64, expected, "{p} {q} {start:?} {end:?} R={r}");
                    }
                }
            }
        }
    }
}

#[test]
fn bruteforce_coefficients_are_positive() {
    for p in 1..=6 {
        for q in 1..=6 {
            for start in DIRS {
                for end in DIRS {
                    let poly = sector_sum_bruteforce(p, q, start, end).unwrap();
                    assert!(poly.terms().all(|(_, c)| c.is_positive()));
                }
            }
        }
    }
}
