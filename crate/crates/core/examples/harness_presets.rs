//! Config parsing with overrides, a method comparison, and a named preset
//! written to a scratch directory.

use whiplash::harness::{self, Document};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::temp_dir().join("whiplash-example");
    std::fs::create_dir_all(&out)?;

    let mut doc = Document::parse(include_str!("../configs/whiplash_discrete.cfg"))?;
    harness::apply_overrides(&mut doc, &["max_iters=5000".to_string(), "x0=[5,-3]".to_string()])?;
    let cfg = harness::from_document(&doc)?;
    let single = harness::run_and_write(&cfg, &out)?;
    print!("{}", harness::format_table([&single.summary]));

    let methods: Vec<String> = ["whiplash", "gd", "nesterov", "heavyball", "adam"].map(String::from).to_vec();
    let cmp = harness::compare(&harness::configs_for_methods(&doc, &methods)?)?;
    println!("\n{}", cmp.table_csv());

    let run = harness::run_preset("fig7_all", &out)?;
    print!("{}", harness::format_table(run.outcomes.iter().map(|o| &o.summary)));
    for f in &run.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
