//! Writes a synthetic category file whose per-category verse counts equal the
//! published ones. Verse assignment is arbitrary apart from a few pinned
//! verses; use it for count-level checks only, never as real topic labels.
//!
//! cargo run -p ayatrack --example gen_category_fixture > data/categories-synthetic.csv

use std::collections::BTreeMap;

use ayatrack::category::Category::{self, *};
use ayatrack::corpus::{VerseRef, AYAH_COUNTS};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COUNTS: [(Category, usize); 13] = [
    (HereafterUnseens, 1701),
    (StoriesOfProphets, 1581),
    (Disbelievers, 684),
    (ShariaLaw, 487),
    (Jihad, 397),
    (UniverseCreation, 388),
    (Worship, 337),
    (BeliefBelievers, 331),
    (AboutQuran, 330),
    (Muhammad, 326),
    (God, 322),
    (Sins, 98),
    (HumanBeing, 71),
];
const GENERAL: usize = 1324;

const PINNED: [(u8, u16, Category); 7] = [
    (48, 1, Muhammad),
    (4, 110, Worship),
    (33, 56, Muhammad),
    (68, 4, Muhammad),
    (65, 1, ShariaLaw),
    (9, 51, Jihad),
    (33, 53, Muhammad),
];

fn main() {
    let mut all: Vec<VerseRef> = AYAH_COUNTS
        .iter()
        .enumerate()
        .flat_map(|(s, &n)| (1..=n).map(move |a| VerseRef::new(s as u8 + 1, a)))
        .collect();
    let pinned: Vec<VerseRef> = PINNED.iter().map(|&(s, a, _)| VerseRef::new(s, a)).collect();
    all.retain(|v| !pinned.contains(v));
    all.shuffle(&mut ChaCha8Rng::seed_from_u64(2016));

    let mut remaining: BTreeMap<Category, usize> = COUNTS.into_iter().collect();
    let mut labels: BTreeMap<VerseRef, Vec<Category>> = BTreeMap::new();
    for &(s, a, c) in &PINNED {
        labels.entry(VerseRef::new(s, a)).or_default().push(c);
        *remaining.get_mut(&c).unwrap() -= 1;
    }

    let categorized = all.len() - GENERAL;
    let targets = &all[..categorized];
    let mut slot = 0;
    for (&c, &n) in &remaining {
        for _ in 0..n {
            labels.entry(targets[slot % targets.len()]).or_default().push(c);
            slot += 1;
        }
    }

    println!("# Synthetic category assignment: counts per category match the published table,");
    println!("# but which verse carries which category is arbitrary. Not real topic labels.");
    println!("sura,ayah,categories");
    for (v, cats) in labels {
        let names: Vec<&str> = cats.iter().map(|c| c.name()).collect();
        println!("{},{},{}", v.sura, v.ayah, names.join(";"));
    }
}
