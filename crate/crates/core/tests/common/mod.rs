#![allow(dead_code)]

use std::path::PathBuf;

use conductors::{load_dataset, Corpus, GroupDataset};

pub fn corpus() -> Corpus {
    Corpus::open(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")).unwrap()
}

pub fn group(name: &str) -> GroupDataset {
    corpus().load_group(name).unwrap()
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> GroupDataset {
    load_dataset(fixture_path(name)).unwrap()
}
